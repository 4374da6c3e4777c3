//! Certified finite and periodic orbits.
//!
//! An orbit of length `n` starting from an exact point `x0` is the zero of the
//! shooting system `g_k(z) = F(z_{k-1}) − m_k − z_k`, `k = 1..n`, with
//! `z_0 = x0` and integer deck shifts `m_k` that keep each `z_k` in the
//! fundamental domain. Its Jacobian is lower block-bidiagonal, so the interval
//! Newton step is a forward substitution. A Newton image strictly inside the
//! candidate box proves that the box contains exactly one true orbit.

mod frame;
pub mod linalg;

use thiserror::Error;

use crate::interval::{Interval, IntervalError};
use crate::maps::{Dynamics, MapDescriptor, MapError};
use frame::Frame;
use linalg::{identity, mat_mul, mat_vec, vec_add, SolveError};

/// Box radius of the first certification attempt.
pub const INITIAL_RADIUS: f64 = 1.0e-12;
/// Largest radius tried before giving up.
pub const MAX_RADIUS: f64 = 1.0e-6;
/// Growth factor between attempts.
pub const RADIUS_GROWTH: f64 = 10.0;
/// Tightening passes after a successful certificate.
pub const REFINE_PASSES: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShootingError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("no contraction: Newton image not inside the candidate box (largest radius {radius:e})")]
    NoContraction { radius: f64 },
    #[error("empty intersection at step {index}: no orbit in the candidate box")]
    EmptyIntersection { index: usize },
    #[error("singular Newton system")]
    Singular,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl From<IntervalError> for ShootingError {
    fn from(e: IntervalError) -> Self {
        ShootingError::Map(MapError::Interval(e))
    }
}

impl From<SolveError> for ShootingError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Singular => ShootingError::Singular,
            SolveError::Interval(e) => e.into(),
        }
    }
}

/// A floating-point orbit in reduced coordinates.
///
/// `points[k - 1]` approximates `F^k(x0) − winding[k - 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxOrbit<const D: usize> {
    pub x0: [f64; D],
    pub points: Vec<[f64; D]>,
    pub winding: Vec<i64>,
}

impl<const D: usize> ApproxOrbit<D> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn shift(&self, k: usize) -> i64 {
        shift_at(&self.winding, k)
    }
}

/// Deck shift `m_k` from cumulative winding.
fn shift_at(winding: &[i64], k: usize) -> i64 {
    let prev = if k == 1 { 0 } else { winding[k - 2] };
    winding[k - 1] - prev
}

/// Plain floating-point iteration of `map` from `x0`, reduced after every step.
pub fn iterate<const D: usize, M: Dynamics<D> + ?Sized>(
    map: &M,
    x0: [f64; D],
    n: usize,
) -> ApproxOrbit<D> {
    let mut points = Vec::with_capacity(n);
    let mut winding = Vec::with_capacity(n);
    let mut x = x0;
    let mut turns = 0i64;
    for _ in 0..n {
        let mut y = map.image_approx(&x);
        let m = map.wrap(&y);
        y[0] -= m as f64;
        turns += m;
        points.push(y);
        winding.push(turns);
        x = y;
    }
    ApproxOrbit {
        x0,
        points,
        winding,
    }
}

/// A certified trajectory: `boxes[k - 1] + winding[k - 1]` (first coordinate)
/// contains the true iterate `F^k(x0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitEnclosure<const D: usize> {
    pub x0: [f64; D],
    pub boxes: Vec<[Interval; D]>,
    pub winding: Vec<i64>,
}

impl<const D: usize> OrbitEnclosure<D> {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Widest box component.
    pub fn max_width(&self) -> f64 {
        self.boxes
            .iter()
            .flat_map(|b| b.iter().map(|c| c.width()))
            .fold(0.0, f64::max)
    }
}

impl OrbitEnclosure<1> {
    /// Enclosure of the lifted iterate `F^k(x0)`, `k ≥ 1`.
    pub fn lifted(&self, k: usize) -> Result<Interval, IntervalError> {
        self.boxes[k - 1][0].add_int(self.winding[k - 1])
    }
}

fn ball<const D: usize>(x: &[f64; D], r: f64) -> Result<[Interval; D], IntervalError> {
    let mut out = [Interval::ZERO; D];
    for i in 0..D {
        out[i] = Interval::ball(x[i], r)?;
    }
    Ok(out)
}

fn points<const D: usize>(x: &[f64; D]) -> [Interval; D] {
    x.map(Interval::point)
}

fn mids<const D: usize>(z: &[Interval; D]) -> [f64; D] {
    z.map(|c| c.mid())
}

/// `F(a) − m − b` with the deck shift on the first coordinate.
fn residual<const D: usize, M: Dynamics<D> + ?Sized>(
    map: &M,
    a: &[Interval; D],
    m: i64,
    b: &[f64; D],
) -> Result<[Interval; D], ShootingError> {
    let mut r = map.image(a)?;
    r[0] = r[0].sub_int(m)?;
    for i in 0..D {
        r[i] = r[i].sub(Interval::point(b[i]))?;
    }
    Ok(r)
}

enum Contraction<const D: usize> {
    Inside(Vec<[Interval; D]>),
    Outside,
    Empty(usize),
}

/// One interval Newton step on the shooting system around centers `c` with
/// boxes `z`. The correction `d = N − c` satisfies
/// `d_1 = g_1(c)`, `d_k = g_k(c) + DF(z_{k−1}) d_{k−1}`, propagated in a
/// moving frame for planar maps.
fn newton_step<const D: usize, M: Dynamics<D> + ?Sized>(
    map: &M,
    x0: &[f64; D],
    centers: &[[f64; D]],
    z: &[[Interval; D]],
    shift: impl Fn(usize) -> i64,
    strict: bool,
) -> Result<Contraction<D>, ShootingError> {
    let mut out = Vec::with_capacity(z.len());
    let mut frame = Frame::from_box(residual(map, &points(x0), shift(1), &centers[0])?);
    for k in 1..=z.len() {
        if k > 1 {
            let j = map.jacobian(&z[k - 2])?;
            let g = residual(map, &points(&centers[k - 2]), shift(k), &centers[k - 1])?;
            frame = frame.step(&j, &g)?;
        }
        let d = frame.hull()?;
        let mut n = [Interval::ZERO; D];
        for i in 0..D {
            n[i] = Interval::point(centers[k - 1][i]).add(d[i])?;
        }
        let zk = &z[k - 1];
        if strict {
            if !(0..D).all(|i| n[i].interior_subset(zk[i])) {
                if (0..D).any(|i| !n[i].overlaps(zk[i])) {
                    return Ok(Contraction::Empty(k));
                }
                return Ok(Contraction::Outside);
            }
            out.push(n);
        } else {
            let mut cut = [Interval::ZERO; D];
            for i in 0..D {
                cut[i] = match n[i].intersect(zk[i]) {
                    Some(c) => c,
                    None => return Ok(Contraction::Empty(k)),
                };
            }
            out.push(cut);
        }
    }
    Ok(Contraction::Inside(out))
}

/// Certifies the orbit of `approx.x0` near `approx` by the interval Newton
/// operator, widening the candidate boxes from `inflation` by factors of ten
/// up to [`MAX_RADIUS`], then tightens with [`REFINE_PASSES`] more passes.
pub fn certify<const D: usize, M: Dynamics<D> + ?Sized>(
    map: &M,
    approx: &ApproxOrbit<D>,
    inflation: f64,
) -> Result<OrbitEnclosure<D>, ShootingError> {
    if approx.is_empty() {
        return Err(ShootingError::InvalidInput("empty orbit".into()));
    }
    if !(inflation > 0.0 && inflation.is_finite()) {
        return Err(ShootingError::InvalidInput(format!(
            "inflation radius must be positive, got {inflation}"
        )));
    }
    let shift = |k: usize| approx.shift(k);
    let mut r = inflation;
    let mut boxes = loop {
        let z = approx
            .points
            .iter()
            .map(|p| ball(p, r))
            .collect::<Result<Vec<_>, _>>()?;
        // an empty intersection only rules out the current box
        let failure = match newton_step(map, &approx.x0, &approx.points, &z, shift, true)? {
            Contraction::Inside(b) => break b,
            Contraction::Empty(index) => ShootingError::EmptyIntersection { index },
            Contraction::Outside => ShootingError::NoContraction { radius: r },
        };
        if r * RADIUS_GROWTH > MAX_RADIUS * (1.0 + 1e-9) {
            return Err(failure);
        }
        r *= RADIUS_GROWTH;
    };
    for _ in 0..REFINE_PASSES {
        let centers: Vec<[f64; D]> = boxes.iter().map(mids).collect();
        match newton_step(map, &approx.x0, &centers, &boxes, shift, false)? {
            Contraction::Inside(b) => boxes = b,
            // cannot happen for a certified box; keep the certificate
            _ => break,
        }
    }
    Ok(OrbitEnclosure {
        x0: approx.x0,
        boxes,
        winding: approx.winding.clone(),
    })
}

/// One more Newton pass `z ← N(z) ∩ z` on a certified orbit.
pub fn tighten<const D: usize, M: Dynamics<D> + ?Sized>(
    map: &M,
    orbit: &mut OrbitEnclosure<D>,
) -> Result<(), ShootingError> {
    let centers: Vec<[f64; D]> = orbit.boxes.iter().map(mids).collect();
    let winding = &orbit.winding;
    match newton_step(map, &orbit.x0, &centers, &orbit.boxes, |k| shift_at(winding, k), false)? {
        Contraction::Inside(b) => {
            orbit.boxes = b;
            Ok(())
        }
        Contraction::Empty(index) => Err(ShootingError::EmptyIntersection { index }),
        Contraction::Outside => unreachable!("non-strict step always intersects"),
    }
}

/// A verified periodic orbit: the boxes contain exactly one orbit with
/// `F^q(x) = x + p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicCertificate<const D: usize> {
    pub q: usize,
    pub p: i64,
    pub orbit: Vec<[Interval; D]>,
}

/// Deck shifts `m_1..m_q` closing the candidate cycle.
fn cycle_shifts<const D: usize, M: Dynamics<D> + ?Sized>(map: &M, c: &[[f64; D]]) -> Vec<i64> {
    let q = c.len();
    (0..q)
        .map(|k| {
            let prev = &c[(k + q - 1) % q];
            map.shift_between(&map.image_approx(prev), &c[k])
        })
        .collect()
}

/// Newton step on the cyclic system `g_k = F(z_{k−1}) − m_k − z_k` with
/// `z_0 = z_q`. Writing `d_k = A_k d_q + B_k` by forward substitution, the
/// closing condition is `(I − A_q) d_q = B_q`.
fn cyclic_step<const D: usize, M: Dynamics<D> + ?Sized>(
    map: &M,
    centers: &[[f64; D]],
    z: &[[Interval; D]],
    shifts: &[i64],
    strict: bool,
) -> Result<Contraction<D>, ShootingError> {
    let q = centers.len();
    let mut a_seq = Vec::with_capacity(q);
    let mut b_seq = Vec::with_capacity(q);
    let mut a = identity::<D>();
    let mut b = [Interval::ZERO; D];
    for k in 1..=q {
        let prev = if k == 1 { q } else { k - 1 };
        let j = map.jacobian(&z[prev - 1])?;
        let g = residual(map, &points(&centers[prev - 1]), shifts[k - 1], &centers[k - 1])?;
        if k == 1 {
            a = j;
            b = g;
        } else {
            a = mat_mul(&j, &a)?;
            b = vec_add(&g, &mat_vec(&j, &b)?)?;
        }
        a_seq.push(a);
        b_seq.push(b);
    }
    let mut lhs = vec![vec![Interval::ZERO; D]; D];
    for i in 0..D {
        for k in 0..D {
            let delta = if i == k { Interval::ONE } else { Interval::ZERO };
            lhs[i][k] = delta.sub(a[i][k])?;
        }
    }
    let e = linalg::solve(lhs, b.to_vec())?;
    let e: [Interval; D] = std::array::from_fn(|i| e[i]);
    let mut out = Vec::with_capacity(q);
    for k in 1..=q {
        let d = vec_add(&mat_vec(&a_seq[k - 1], &e)?, &b_seq[k - 1])?;
        let mut n = [Interval::ZERO; D];
        let zk = &z[k - 1];
        for i in 0..D {
            n[i] = Interval::point(centers[k - 1][i]).add(d[i])?;
            if !n[i].overlaps(zk[i]) {
                return Ok(Contraction::Empty(k));
            }
        }
        if strict {
            if !(0..D).all(|i| n[i].interior_subset(zk[i])) {
                return Ok(Contraction::Outside);
            }
            out.push(n);
        } else {
            out.push(std::array::from_fn(|i| {
                n[i].intersect(zk[i]).expect("checked overlap")
            }));
        }
    }
    Ok(Contraction::Inside(out))
}

/// Certifies a period-`q` orbit near `candidate` (`q` consecutive points of an
/// approximate cycle, reduced to the fundamental domain).
pub fn certify_periodic<const D: usize, M: Dynamics<D> + ?Sized>(
    map: &M,
    candidate: &[[f64; D]],
) -> Result<PeriodicCertificate<D>, ShootingError> {
    if candidate.is_empty() {
        return Err(ShootingError::InvalidInput("period must be at least 1".into()));
    }
    let shifts = cycle_shifts(map, candidate);
    let mut r = INITIAL_RADIUS;
    let mut orbit = loop {
        let z = candidate
            .iter()
            .map(|p| ball(p, r))
            .collect::<Result<Vec<_>, _>>()?;
        // an empty intersection only rules out the current box
        let failure = match cyclic_step(map, candidate, &z, &shifts, true)? {
            Contraction::Inside(b) => break b,
            Contraction::Empty(index) => ShootingError::EmptyIntersection { index },
            Contraction::Outside => ShootingError::NoContraction { radius: r },
        };
        if r * RADIUS_GROWTH > MAX_RADIUS * (1.0 + 1e-9) {
            return Err(failure);
        }
        r *= RADIUS_GROWTH;
    };
    for _ in 0..REFINE_PASSES {
        let centers: Vec<[f64; D]> = orbit.iter().map(mids).collect();
        match cyclic_step(map, &centers, &orbit, &shifts, false) {
            Ok(Contraction::Inside(b)) => orbit = b,
            _ => break,
        }
    }
    Ok(PeriodicCertificate {
        q: candidate.len(),
        p: shifts.iter().sum(),
        orbit,
    })
}

/// Floating-point orbit of the lift from `x0`, in lifted coordinates.
pub fn approximate_orbit(m: &MapDescriptor, x0: f64, n: usize) -> Result<Vec<f64>, MapError> {
    let orbit = iterate(circle(m)?, [x0], n);
    Ok(orbit
        .points
        .iter()
        .zip(&orbit.winding)
        .map(|(p, &w)| p[0] + w as f64)
        .collect())
}

/// Certifies the orbit of `x0` near the lifted approximation `approx`.
pub fn newton_refine(
    m: &MapDescriptor,
    x0: f64,
    approx: &[f64],
    inflation: f64,
) -> Result<OrbitEnclosure<1>, ShootingError> {
    let winding: Vec<i64> = approx.iter().map(|x| x.floor() as i64).collect();
    let points = approx
        .iter()
        .zip(&winding)
        .map(|(x, &w)| [x - w as f64])
        .collect();
    let reduced = ApproxOrbit {
        x0: [x0],
        points,
        winding,
    };
    certify(circle(m)?, &reduced, inflation)
}

/// Certifies a period-`q` orbit of a circle map near `candidate`.
pub fn verify_periodic(
    m: &MapDescriptor,
    candidate: &[f64],
    q: usize,
) -> Result<PeriodicCertificate<1>, ShootingError> {
    if q == 0 || candidate.len() != q {
        return Err(ShootingError::InvalidInput(format!(
            "need q ≥ 1 candidate points, got q = {q} and {} points",
            candidate.len()
        )));
    }
    let reduced: Vec<[f64; 1]> = candidate.iter().map(|x| [x - x.floor()]).collect();
    certify_periodic(circle(m)?, &reduced)
}

/// Candidate cycle for [`verify_periodic`]: `q` consecutive points after a
/// transient from `start`.
pub fn periodic_candidate(
    m: &MapDescriptor,
    start: f64,
    transient: usize,
    q: usize,
) -> Result<Vec<f64>, MapError> {
    let points = cycle_candidate(circle(m)?, start, transient, q);
    Ok(points.iter().map(|p| p[0]).collect())
}

/// Newton steps on `F^q(x) − x − p` used to sharpen a candidate cycle.
const POLISH_STEPS: usize = 8;

/// `q` consecutive reduced points of an approximate cycle: `transient` plain
/// iterations from `start`, then a few floating-point Newton steps on the
/// return map, which matter for weakly attracting cycles.
pub fn cycle_candidate(map: &dyn Dynamics<1>, start: f64, transient: usize, q: usize) -> Vec<[f64; 1]> {
    let reduce = |y: [f64; 1]| [y[0] - map.wrap(&y) as f64];
    let mut x = [start];
    for _ in 0..transient {
        x = reduce(map.image_approx(&x));
    }
    for _ in 0..POLISH_STEPS {
        let mut y = x;
        let mut slope = 1.0;
        for _ in 0..q {
            let d = match map.jacobian(&[Interval::point(y[0])]) {
                Ok(j) => j[0][0].mid(),
                Err(_) => break,
            };
            slope *= d;
            y = map.image_approx(&y);
        }
        let g = (y[0] - x[0]) - (y[0] - x[0]).round();
        if g == 0.0 || !(slope - 1.0).is_normal() {
            break;
        }
        let next = reduce([x[0] - g / (slope - 1.0)]);
        if !next[0].is_finite() {
            break;
        }
        let done = (next[0] - x[0]).abs() < 4.0 * f64::EPSILON;
        x = next;
        if done {
            break;
        }
    }
    iterate(map, x, q).points
}

fn circle(m: &MapDescriptor) -> Result<&dyn Dynamics<1>, MapError> {
    match m {
        MapDescriptor::Arnold(a) => Ok(a),
        MapDescriptor::RigidRotation(r) => Ok(r),
        MapDescriptor::DelayedLogistic(_) => Err(MapError::WrongDimension {
            expected: 1,
            found: 2,
        }),
    }
}
