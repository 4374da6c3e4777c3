//! Enclosures of rotation numbers.
//!
//! Two algorithms work on a certified orbit. The linear one uses
//! `|(F^N(x) − x)/N − ρ| ≤ 1/N`. The continued-fraction one reads the
//! coefficients of `ρ` off the orbit of `0`: for integers `P` and `n ≥ 1`,
//! `F^n(0) − P > 0` forces `ρ ≥ P/n` and `F^n(0) − P < 0` forces `ρ ≤ P/n`.
//! Testing the intermediate fractions `(p_{i−1} + k p_i)/(q_{i−1} + k q_i)`
//! for `k = 2, 3, …` finds the first one on the far side of `ρ`, which is
//! `k = a_{i+1} + 1`. Every tested fraction is a rigorous one-sided bound, so
//! the enclosure `[p_i/q_i, (p_i + p_{i−1})/(q_i + q_{i−1})]` (in either
//! order) holds whether or not `ρ` is rational.

use std::time::Instant;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, IntervalError};
use crate::maps::{DelayedLogistic, Dynamics, LiftedAngle, MapDescriptor, MapError};
use crate::shooting::{
    self, certify, certify_periodic, cycle_candidate, iterate, OrbitEnclosure, PeriodicCertificate, ShootingError,
    INITIAL_RADIUS,
};

/// Floating-point steps taken from the default start of a planar map before
/// the orbit is considered to lie on the invariant curve.
pub const PLANAR_TRANSIENT: usize = 20_000;
/// Default orbit length cap for the continued-fraction method.
pub const DEFAULT_BUDGET: u64 = 4_000_000;
/// Shortest certified orbit requested from the shooting layer.
const MIN_CHUNK: u64 = 1024;
/// Periods above this are not tried by the rationality check.
const MAX_PERIOD_CHECK: u64 = 1 << 20;
/// Start point of the rationality check.
const PERIOD_CHECK_START: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RotationError {
    #[error(transparent)]
    Shooting(#[from] ShootingError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("empty coefficient list")]
    EmptyCoefficients,
    #[error("continued fraction coefficients must be positive")]
    ZeroCoefficient,
    #[error("convergent overflow: denominators exceed 64 bits")]
    Overflow,
}

impl From<MapError> for RotationError {
    fn from(e: MapError) -> Self {
        RotationError::Shooting(e.into())
    }
}

impl From<IntervalError> for RotationError {
    fn from(e: IntervalError) -> Self {
        RotationError::Shooting(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Linear,
    Cf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The requested number of iterates or stages was reached.
    Complete,
    /// `ρ = p/q` was proved.
    Rational,
    /// The iterate budget ran out before the requested stage.
    BudgetExhausted,
    /// An orbit enclosure straddled a tested fraction.
    Ambiguous,
    /// A convergent no longer fits in 64 bits.
    Overflow,
    /// A longer orbit could not be certified.
    CertificationFailed,
}

impl Status {
    /// The enclosure is valid but the run stopped early.
    pub fn is_partial(self) -> bool {
        matches!(
            self,
            Status::BudgetExhausted | Status::Ambiguous | Status::Overflow | Status::CertificationFailed
        )
    }
}

/// Proof that `ρ = p/q`.
#[derive(Debug, Clone, PartialEq)]
pub enum RationalProof {
    /// A verified period-`q` orbit.
    PeriodicOrbit(PeriodicCertificate<1>),
    /// The certified orbit of the start point satisfies `F^n(x0) = x0 + m`
    /// exactly.
    ExactReturn { n: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    pub p: i64,
    pub q: u64,
    pub proof: RationalProof,
}

/// One completed continued-fraction stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    pub i: usize,
    pub a: u64,
    pub p: u64,
    pub q: u64,
    /// `N_i = q_i + q_{i−1}`: the orbit index that fixed `a_i`.
    pub n: u64,
    /// `F^{q_i}(0) − p_i` in shifted coordinates; its sign is `(−1)^i`.
    pub b: Interval,
    pub enclosure: Interval,
}

/// Continued-fraction bookkeeping, in coordinates shifted so that
/// `ρ − shift ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CfState {
    pub shift: i64,
    /// `a_1, a_2, …`.
    pub a: Vec<u64>,
    /// `p_0, p_1, …` and `q_0, q_1, …`.
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    /// `N_0, N_1, …`.
    pub n: Vec<u64>,
    /// `b_0, b_1, …`.
    pub b: Vec<Interval>,
    /// Set when the expansion terminated at a proved rational.
    pub terminal: bool,
}

impl CfState {
    fn new(shift: i64, b0: Interval) -> Self {
        CfState {
            shift,
            a: Vec::new(),
            p: vec![0],
            q: vec![1],
            n: vec![1],
            b: vec![b0],
            terminal: false,
        }
    }

    /// Index of the last completed stage.
    pub fn stage(&self) -> usize {
        self.a.len()
    }

    fn pq(&self, i: isize) -> (u64, u64) {
        if i < 0 {
            (1, 0)
        } else {
            (self.p[i as usize], self.q[i as usize])
        }
    }

    fn push(&mut self, a: u64, b: Interval) -> Result<(), RotationError> {
        let i = self.stage() as isize;
        let (p1, q1) = self.pq(i);
        let (p0, q0) = self.pq(i - 1);
        let next = |x1: u64, x0: u64| a.checked_mul(x1).and_then(|v| v.checked_add(x0));
        let (p, q) = match (next(p1, p0), next(q1, q0)) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(RotationError::Overflow),
        };
        let n = q.checked_add(q1).ok_or(RotationError::Overflow)?;
        self.a.push(a);
        self.p.push(p);
        self.q.push(q);
        self.n.push(n);
        self.b.push(b);
        Ok(())
    }

    /// Convergent enclosure after stage `i`, shifted back to the original
    /// coordinates.
    pub fn enclosure(&self, i: usize) -> Result<Interval, RotationError> {
        let (p1, q1) = self.pq(i as isize);
        let (p0, q0) = self.pq(i as isize - 1);
        let e = fraction_hull((p1, q1), (p1 + p0, q1 + q0))?;
        Ok(e.add_int(self.shift)?)
    }

    pub fn stages(&self) -> Result<Vec<Stage>, RotationError> {
        (1..=self.stage())
            .map(|i| {
                Ok(Stage {
                    i,
                    a: self.a[i - 1],
                    p: self.p[i],
                    q: self.q[i],
                    n: self.n[i],
                    b: self.b[i],
                    enclosure: self.enclosure(i)?,
                })
            })
            .collect()
    }

    /// `|p_i q_{i−1} − p_{i−1} q_i|` for every stage; always 1.
    pub fn determinants(&self) -> Vec<u64> {
        (0..=self.stage() as isize)
            .map(|i| {
                let (p1, q1) = self.pq(i);
                let (p0, q0) = self.pq(i - 1);
                let l = p1 as u128 * q0 as u128;
                let r = p0 as u128 * q1 as u128;
                l.abs_diff(r) as u64
            })
            .collect()
    }
}

fn ratio(p: u64, q: u64) -> Result<Interval, IntervalError> {
    Interval::from_u64(p).div(Interval::from_u64(q))
}

fn fraction_hull(a: (u64, u64), b: (u64, u64)) -> Result<Interval, IntervalError> {
    Ok(ratio(a.0, a.1)?.hull(ratio(b.0, b.1)?))
}

/// Enclosure `[0; a_1, …, a_i + [0, 1]]`, the hull of `p_i/q_i` and
/// `(p_i + p_{i−1})/(q_i + q_{i−1})`.
pub fn convergent_enclosure(a: &[u64]) -> Result<Interval, RotationError> {
    if a.is_empty() {
        return Err(RotationError::EmptyCoefficients);
    }
    if a.contains(&0) {
        return Err(RotationError::ZeroCoefficient);
    }
    let mut state = CfState::new(0, Interval::ZERO);
    for &ai in a {
        state.push(ai, Interval::ZERO)?;
    }
    state.enclosure(a.len())
}

/// `[0; a_1, …, a_k]` by bottom-up interval evaluation.
pub fn continued_fraction_value(a: &[u64]) -> Result<Interval, RotationError> {
    let mut x = Interval::ZERO;
    for &ai in a.iter().rev() {
        let d = Interval::from_u64(ai).add(x)?;
        x = Interval::ONE.div(d)?;
    }
    Ok(x)
}

/// Width check for one stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthReport {
    pub stage: usize,
    pub q: u64,
    pub n: u64,
    /// Width of the enclosure after this stage, rounded up.
    pub width: f64,
    /// `4/N_i²`, rounded down.
    pub bound: f64,
    /// `2/(q_i N_i)`, rounded down.
    pub bound_qn: f64,
    /// Exact comparison of the rational width against both bounds.
    pub holds: bool,
}

/// Compares each stage's enclosure width `|A|` with `4/N_i²` and
/// `2/(q_i N_i)`.
pub fn width_diagnostic(state: &CfState) -> Result<Vec<WidthReport>, RotationError> {
    (1..=state.stage())
        .map(|i| {
            let (q, n) = (state.q[i], state.n[i]);
            let e = state.enclosure(i)?;
            let width = e.width();
            let nn = Interval::from_u64(n);
            let bound = Interval::point(4.0).div(nn.mul(nn)?)?.lo();
            let bound_qn = Interval::point(2.0)
                .div(Interval::from_u64(q).mul(nn)?)?
                .lo();
            // exact width is 1/(q_i N_i)
            let exact_ok = (n as u128) <= 4 * q as u128;
            Ok(WidthReport {
                stage: i,
                q,
                n,
                width,
                bound,
                bound_qn,
                holds: exact_ok && width <= bound && width <= bound_qn,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RotationResult {
    pub map: MapDescriptor,
    pub method: Method,
    pub enclosure: Interval,
    pub status: Status,
    /// Longest orbit prefix whose enclosure was used.
    pub iterates: u64,
    pub rational: Option<Rational>,
    pub cf: Option<CfState>,
    pub conditional: bool,
    pub note: Option<String>,
    pub seconds: f64,
}

impl RotationResult {
    pub fn radius(&self) -> f64 {
        self.enclosure.rad()
    }
}

/// Lifted orbit `X_1, X_2, …` stored as integer turns plus fractional boxes,
/// with the start `X_0` likewise.
#[derive(Debug, Clone, Default)]
struct LiftedOrbit {
    start: LiftedAngle,
    turns: Vec<i64>,
    frac: Vec<Interval>,
}

impl LiftedOrbit {
    fn len(&self) -> u64 {
        self.frac.len() as u64
    }

    /// Enclosure of `X_n − X_0 − m`.
    fn offset(&self, n: u64, m: i128) -> Result<Interval, RotationError> {
        let k = n as usize - 1;
        let int = self.turns[k] as i128 - self.start.turns as i128 - m;
        let int = i64::try_from(int).map_err(|_| RotationError::Overflow)?;
        Ok(self.frac[k].sub(self.start.frac)?.add_int(int)?)
    }
}

/// Source of certified lifted orbits of growing length.
enum Source<'a> {
    Circle {
        map: &'a dyn Dynamics<1>,
        x0: f64,
        orbit: Option<OrbitEnclosure<1>>,
    },
    Plane {
        map: &'a DelayedLogistic,
        start: [f64; 2],
        orbit: Option<OrbitEnclosure<2>>,
    },
}

impl<'a> Source<'a> {
    fn new(m: &'a MapDescriptor, x0: f64) -> Self {
        match m {
            MapDescriptor::Arnold(a) => Source::Circle {
                map: a,
                x0,
                orbit: None,
            },
            MapDescriptor::RigidRotation(r) => Source::Circle {
                map: r,
                x0,
                orbit: None,
            },
            MapDescriptor::DelayedLogistic(d) => Source::Plane {
                map: d,
                start: d.settled_start(PLANAR_TRANSIENT),
                orbit: None,
            },
        }
    }

    fn certify(&mut self, n: u64) -> Result<LiftedOrbit, RotationError> {
        match self {
            Source::Circle { map, x0, orbit } => {
                let approx = iterate(*map, [*x0], n as usize);
                *orbit = Some(certify(*map, &approx, INITIAL_RADIUS)?);
            }
            Source::Plane { map, start, orbit } => {
                let approx = iterate(*map, *start, n as usize);
                *orbit = Some(certify(*map, &approx, INITIAL_RADIUS)?);
            }
        }
        self.lifted()
    }

    fn tighten(&mut self) -> Result<LiftedOrbit, RotationError> {
        match self {
            Source::Circle { map, orbit, .. } => {
                shooting::tighten(*map, orbit.as_mut().expect("certified"))?
            }
            Source::Plane { map, orbit, .. } => {
                shooting::tighten(*map, orbit.as_mut().expect("certified"))?
            }
        }
        self.lifted()
    }

    fn lifted(&self) -> Result<LiftedOrbit, RotationError> {
        match self {
            Source::Circle { x0, orbit, .. } => {
                let orbit = orbit.as_ref().expect("certified");
                let t0 = x0.floor();
                Ok(LiftedOrbit {
                    start: LiftedAngle {
                        turns: t0 as i64,
                        frac: Interval::point(x0 - t0),
                    },
                    turns: orbit.winding.clone(),
                    frac: orbit.boxes.iter().map(|b| b[0]).collect(),
                })
            }
            Source::Plane { map, start, orbit } => {
                let orbit = orbit.as_ref().expect("certified");
                let p0 = start.map(Interval::point);
                let first = LiftedAngle {
                    turns: 0,
                    frac: map.angle(&p0)?,
                };
                let mut prev = first;
                let mut turns = Vec::with_capacity(orbit.len());
                let mut frac = Vec::with_capacity(orbit.len());
                for b in &orbit.boxes {
                    prev = map.next_angle(b, prev)?;
                    turns.push(prev.turns);
                    frac.push(prev.frac);
                }
                Ok(LiftedOrbit {
                    start: first,
                    turns,
                    frac,
                })
            }
        }
    }

    fn circle_map(&self) -> Option<&'a dyn Dynamics<1>> {
        match self {
            Source::Circle { map, .. } => Some(*map),
            Source::Plane { .. } => None,
        }
    }
}

/// `ρ` enclosure from `N` certified iterates of `x0`:
/// `[lo ρ_N − 1/N, hi ρ_N + 1/N]` with `ρ_N = (F^N(x0) − x0)/N`.
///
/// Planar maps ignore `x0` and start from a point near the invariant curve;
/// `F` is then the lifted angle around the rotation center.
pub fn rho_linear(m: &MapDescriptor, x0: f64, n: u64) -> Result<RotationResult, RotationError> {
    if n == 0 {
        return Err(RotationError::InvalidInput("N must be at least 1".into()));
    }
    if !x0.is_finite() {
        return Err(RotationError::InvalidInput("x0 must be finite".into()));
    }
    let clock = Instant::now();
    let mut source = Source::new(m, x0);
    let orbit = source.certify(n)?;
    let nn = Interval::from_u64(n);
    let displacement = orbit.offset(n, 0)?;
    let rho_n = displacement.div(nn)?;
    let inv = Interval::ONE.div(nn)?;
    let enclosure = Interval::new(rho_n.sub(inv)?.lo(), rho_n.add(inv)?.hi())?;
    Ok(RotationResult {
        map: *m,
        method: Method::Linear,
        enclosure,
        status: Status::Complete,
        iterates: n,
        rational: None,
        cf: None,
        conditional: m.is_conditional(),
        note: None,
        seconds: clock.elapsed().as_secs_f64(),
    })
}

/// Outcome of one sign test.
enum Side {
    /// `ρ` lies on the side of the tested fraction given by the sign.
    Strict(bool),
    /// `F^n(0) = P` exactly.
    Exact,
    Straddle,
}

fn classify(x: Interval) -> Side {
    if x.lo() == 0.0 && x.hi() == 0.0 {
        Side::Exact
    } else if x.is_positive() {
        Side::Strict(true)
    } else if x.is_negative() {
        Side::Strict(false)
    } else {
        Side::Straddle
    }
}

struct CfRun<'a> {
    map: &'a MapDescriptor,
    source: Source<'a>,
    orbit: LiftedOrbit,
    budget: u64,
    used: u64,
    tightened: bool,
}

enum Probe {
    Side(Side),
    OutOfBudget,
}

impl CfRun<'_> {
    /// Certifies the orbit up to index `n` if needed.
    fn ensure(&mut self, n: u64) -> Result<bool, RotationError> {
        if n > self.budget {
            return Ok(false);
        }
        if n > self.orbit.len() {
            let target = n
                .max(self.orbit.len().saturating_mul(2))
                .max(MIN_CHUNK)
                .min(self.budget);
            self.orbit = self.source.certify(target)?;
            self.tightened = false;
        }
        Ok(true)
    }

    /// Sign of `X_n − X_0 − P − shift·n`.
    fn probe(&mut self, n: u64, p: u64, shift: i64) -> Result<Probe, RotationError> {
        if !self.ensure(n)? {
            return Ok(Probe::OutOfBudget);
        }
        self.used = self.used.max(n);
        let m = p as i128 + shift as i128 * n as i128;
        let mut side = classify(self.orbit.offset(n, m)?);
        if matches!(side, Side::Straddle) && !self.tightened {
            self.orbit = self.source.tighten()?;
            self.tightened = true;
            side = classify(self.orbit.offset(n, m)?);
        }
        Ok(Probe::Side(side))
    }
}

/// Tries to prove `ρ = p/q` with a verified period-`q` orbit found by
/// iterating from a fixed start.
fn period_check(map: &dyn Dynamics<1>, q: u64) -> Option<Rational> {
    if q == 0 || q > MAX_PERIOD_CHECK {
        return None;
    }
    let transient = (10 * q).max(1000) as usize;
    let candidate = cycle_candidate(map, PERIOD_CHECK_START, transient, q as usize);
    let cert = certify_periodic(map, &candidate).ok()?;
    let g = cert.p.unsigned_abs().gcd(&q);
    Some(Rational {
        p: cert.p / g as i64,
        q: q / g,
        proof: RationalProof::PeriodicOrbit(cert),
    })
}

/// `ρ` enclosure by the continued-fraction method on the certified orbit of
/// `0` (of the settled start for planar maps), using at most `budget`
/// iterates and `max_stage` stages.
pub fn rho_cf(m: &MapDescriptor, budget: u64, max_stage: usize) -> Result<RotationResult, RotationError> {
    if budget == 0 {
        return Err(RotationError::InvalidInput("budget must be at least 1".into()));
    }
    let clock = Instant::now();
    let source = Source::new(m, 0.0);
    let mut run = CfRun {
        map: m,
        source,
        orbit: LiftedOrbit::default(),
        budget,
        used: 0,
        tightened: false,
    };
    let mut result = match run.ensure(1) {
        Ok(_) => run_cf(&mut run, max_stage)?,
        Err(e) => return Err(e),
    };
    result.seconds = clock.elapsed().as_secs_f64();
    Ok(result)
}

fn run_cf(run: &mut CfRun, max_stage: usize) -> Result<RotationResult, RotationError> {
    let m = *run.map;
    let circle = run.source.circle_map();
    let finish = |run: &CfRun,
                  status: Status,
                  enclosure: Interval,
                  rational: Option<Rational>,
                  cf: Option<CfState>,
                  note: Option<String>| RotationResult {
        map: m,
        method: Method::Cf,
        enclosure,
        status,
        iterates: run.used,
        rational,
        cf,
        conditional: m.is_conditional(),
        note,
        seconds: 0.0,
    };

    // integer part of ρ from b0 = X_1 − X_0
    run.used = 1;
    let b0 = run.orbit.offset(1, 0)?;
    let shift = b0.lo().floor();
    if b0.hi() > shift + 1.0 {
        // b0 straddles an integer: fall back to the one-step linear bound
        let enclosure = Interval::new(b0.lo() - 1.0, b0.hi() + 1.0)?;
        let enclosure = b0.sub(Interval::ONE)?.hull(b0.add(Interval::ONE)?).intersect(enclosure).unwrap_or(enclosure);
        return Ok(finish(
            run,
            Status::Ambiguous,
            enclosure,
            None,
            None,
            Some("first iterate straddles an integer".into()),
        ));
    }
    let shift = shift as i64;
    if b0.lo() == shift as f64 && b0.hi() == shift as f64 {
        let rational = Rational {
            p: shift,
            q: 1,
            proof: RationalProof::ExactReturn { n: 1 },
        };
        return Ok(finish(
            run,
            Status::Rational,
            Interval::from_int(shift),
            Some(rational),
            None,
            None,
        ));
    }
    let mut state = CfState::new(shift, b0.sub_int(shift)?);
    let mut checked_q = 0u64;

    loop {
        let i = state.stage();
        let (p1, q1) = state.pq(i as isize);
        let (p0, q0) = state.pq(i as isize - 1);

        if let Some(circle) = circle {
            if q1 != checked_q {
                checked_q = q1;
                if let Some(r) = period_check(circle, q1) {
                    let value = Interval::from_int(r.p).div(Interval::from_u64(r.q))?;
                    if value.overlaps(state.enclosure(i)?) {
                        state.terminal = true;
                        return Ok(finish(run, Status::Rational, value, Some(r), Some(state), None));
                    }
                }
            }
        }
        if i >= max_stage {
            let e = state.enclosure(i)?;
            return Ok(finish(run, Status::Complete, e, None, Some(state), None));
        }

        // stage i ends at the first fraction with ρ on the side of sign (−1)^i
        let crossing_positive = i % 2 == 0;
        let mut k: u64 = 2;
        loop {
            let (n, p) = match (
                k.checked_mul(q1).and_then(|v| v.checked_add(q0)),
                k.checked_mul(p1).and_then(|v| v.checked_add(p0)),
            ) {
                (Some(n), Some(p)) => (n, p),
                _ => {
                    let e = squeeze(&state, k - 1)?;
                    return Ok(finish(run, Status::Overflow, e, None, Some(state), None));
                }
            };
            let probe = match run.probe(n, p, shift) {
                Ok(p) => p,
                Err(RotationError::Shooting(err)) => {
                    let e = squeeze(&state, k - 1)?;
                    return Ok(finish(
                        run,
                        Status::CertificationFailed,
                        e,
                        None,
                        Some(state),
                        Some(err.to_string()),
                    ));
                }
                Err(e) => return Err(e),
            };
            match probe {
                Probe::OutOfBudget => {
                    let e = squeeze(&state, k - 1)?;
                    return Ok(finish(run, Status::BudgetExhausted, e, None, Some(state), None));
                }
                Probe::Side(Side::Exact) => {
                    let value = ratio(p, n)?.add_int(shift)?;
                    let rational = Rational {
                        p: p as i64 + shift * n as i64,
                        q: n,
                        proof: RationalProof::ExactReturn { n },
                    };
                    state.terminal = true;
                    return Ok(finish(run, Status::Rational, value, Some(rational), Some(state), None));
                }
                Probe::Side(Side::Straddle) => {
                    let e = squeeze(&state, k - 1)?;
                    return Ok(finish(
                        run,
                        Status::Ambiguous,
                        e,
                        None,
                        Some(state),
                        Some(format!("orbit index {n} straddles {p}/{n}")),
                    ));
                }
                Probe::Side(Side::Strict(positive)) => {
                    if positive == crossing_positive {
                        let b = run.orbit.offset(q1 * (k - 1) + q0, (p1 * (k - 1) + p0) as i128 + shift as i128 * (q1 * (k - 1) + q0) as i128)?;
                        if let Err(e) = state.push(k - 1, b) {
                            let squeezed = squeeze(&state, k - 1)?;
                            return Ok(finish(run, Status::Overflow, squeezed, None, Some(state), Some(e.to_string())));
                        }
                        break;
                    }
                    k += 1;
                }
            }
        }
    }
}

/// Enclosure at stage `i` knowing that `K` intermediate fractions are on the
/// near side: the hull of `p_i/q_i` and `(K p_i + p_{i−1})/(K q_i + q_{i−1})`.
fn squeeze(state: &CfState, k: u64) -> Result<Interval, RotationError> {
    let i = state.stage() as isize;
    let (p1, q1) = state.pq(i);
    let (p0, q0) = state.pq(i - 1);
    let far = (k * p1 + p0, k * q1 + q0);
    Ok(fraction_hull((p1, q1), far)?.add_int(state.shift)?)
}
