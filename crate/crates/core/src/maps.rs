//! Dynamical systems evaluated in interval arithmetic.
//!
//! Circle maps are represented by their lift `F: ℝ → ℝ`, stored as unbounded
//! real coordinates; reduction modulo one happens only where it is explicitly
//! requested. Planar maps carry an angle observable that turns an orbit into
//! a lifted sequence of turns around a rotation center.

use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, IntervalError, TWO_PI};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation needs a {expected}-dimensional map, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("ambiguous winding: angle increment {0:?} not inside (-1/2, 1/2)")]
    AmbiguousWinding(Interval),
}

/// A map on `ℝ^D` with interval image and Jacobian.
///
/// For circle maps (`D = 1`) the first coordinate is the lift and integer
/// translations of it are deck transformations; planar maps have none.
pub trait Dynamics<const D: usize>: Sync {
    fn image(&self, x: &[Interval; D]) -> Result<[Interval; D], MapError>;

    fn jacobian(&self, x: &[Interval; D]) -> Result<[[Interval; D]; D], MapError>;

    /// Plain floating-point image, no rigor.
    fn image_approx(&self, x: &[f64; D]) -> [f64; D];

    /// Integer to subtract from the first coordinate of `y` to bring it back
    /// into the fundamental domain.
    fn wrap(&self, _y: &[f64; D]) -> i64 {
        0
    }

    /// Integer `m` such that `image - m` is close to `target`.
    fn shift_between(&self, _image: &[f64; D], _target: &[f64; D]) -> i64 {
        0
    }
}

/// The Arnold family `F(x) = x + α − ε·sin(2πx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arnold {
    alpha: Interval,
    epsilon: Interval,
    two_pi_epsilon: Interval,
}

impl Arnold {
    /// Requires `2π|ε| ≤ 1`, which makes the map an orientation-preserving
    /// circle diffeomorphism.
    pub fn new(alpha: Interval, epsilon: Interval) -> Result<Self, MapError> {
        let two_pi_epsilon = TWO_PI.mul(epsilon)?;
        if two_pi_epsilon.abs().hi() > 1.0 {
            return Err(MapError::InvalidParameter(format!(
                "Arnold map needs 2π|ε| ≤ 1, got ε = {epsilon}"
            )));
        }
        Ok(Arnold {
            alpha,
            epsilon,
            two_pi_epsilon,
        })
    }

    pub fn alpha(&self) -> Interval {
        self.alpha
    }

    pub fn epsilon(&self) -> Interval {
        self.epsilon
    }

    pub fn lift(&self, x: Interval) -> Result<Interval, MapError> {
        let s = self.epsilon.mul(x.sin_2pi())?;
        Ok(x.add(self.alpha)?.sub(s)?)
    }

    pub fn lift_deriv(&self, x: Interval) -> Result<Interval, MapError> {
        let c = self.two_pi_epsilon.mul(x.cos_2pi())?;
        Ok(Interval::ONE.sub(c)?)
    }
}

impl Dynamics<1> for Arnold {
    fn image(&self, x: &[Interval; 1]) -> Result<[Interval; 1], MapError> {
        Ok([self.lift(x[0])?])
    }

    fn jacobian(&self, x: &[Interval; 1]) -> Result<[[Interval; 1]; 1], MapError> {
        Ok([[self.lift_deriv(x[0])?]])
    }

    fn image_approx(&self, x: &[f64; 1]) -> [f64; 1] {
        let t = x[0];
        [t + self.alpha.mid() - self.epsilon.mid() * (std::f64::consts::TAU * t).sin()]
    }

    fn wrap(&self, y: &[f64; 1]) -> i64 {
        y[0].floor() as i64
    }

    fn shift_between(&self, image: &[f64; 1], target: &[f64; 1]) -> i64 {
        (image[0] - target[0]).round() as i64
    }
}

/// Rigid rotation `F(x) = x + α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidRotation {
    alpha: Interval,
}

impl RigidRotation {
    pub fn new(alpha: Interval) -> Self {
        RigidRotation { alpha }
    }

    pub fn alpha(&self) -> Interval {
        self.alpha
    }
}

impl Dynamics<1> for RigidRotation {
    fn image(&self, x: &[Interval; 1]) -> Result<[Interval; 1], MapError> {
        Ok([x[0].add(self.alpha)?])
    }

    fn jacobian(&self, _x: &[Interval; 1]) -> Result<[[Interval; 1]; 1], MapError> {
        Ok([[Interval::ONE]])
    }

    fn image_approx(&self, x: &[f64; 1]) -> [f64; 1] {
        [x[0] + self.alpha.mid()]
    }

    fn wrap(&self, y: &[f64; 1]) -> i64 {
        y[0].floor() as i64
    }

    fn shift_between(&self, image: &[f64; 1], target: &[f64; 1]) -> i64 {
        (image[0] - target[0]).round() as i64
    }
}

/// A lifted angle `turns + frac`, kept split so that long orbits do not lose
/// precision to a growing integer part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftedAngle {
    pub turns: i64,
    pub frac: Interval,
}

impl Default for LiftedAngle {
    fn default() -> Self {
        LiftedAngle {
            turns: 0,
            frac: Interval::ZERO,
        }
    }
}

impl LiftedAngle {
    pub fn to_interval(self) -> Result<Interval, IntervalError> {
        self.frac.add_int(self.turns)
    }
}

/// The delayed logistic map `(x, y) ↦ (y, λy(1 − x))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayedLogistic {
    lambda: Interval,
    center: [Interval; 2],
}

/// Offset of the default starting point from the rotation center.
const START_OFFSET: f64 = 0.05;

impl DelayedLogistic {
    /// Accepts `λ ⊆ (2, 2.16]`, the range with a smooth invariant curve.
    /// `allow_outside` lifts that restriction (results stay conditional).
    pub fn new(lambda: Interval, allow_outside: bool) -> Result<Self, MapError> {
        let upper = Interval::from_decimal("2.16")?.hi();
        let in_range = lambda.lo() > 2.0 && lambda.hi() <= upper;
        if !in_range && !allow_outside {
            return Err(MapError::InvalidParameter(format!(
                "delayed logistic map needs 2 < λ ≤ 2.16, got λ = {lambda}"
            )));
        }
        if lambda.contains_zero() {
            return Err(MapError::InvalidParameter("λ must be nonzero".into()));
        }
        let c = lambda.sub(Interval::ONE)?.div(lambda)?;
        Ok(DelayedLogistic {
            lambda,
            center: [c, c],
        })
    }

    pub fn lambda(&self) -> Interval {
        self.lambda
    }

    /// The interior fixed point `((λ−1)/λ, (λ−1)/λ)`, used as rotation center.
    pub fn center(&self) -> [Interval; 2] {
        self.center
    }

    /// A point near the invariant curve: the center shifted by a small offset
    /// and iterated `transient` times in floating point.
    pub fn settled_start(&self, transient: usize) -> [f64; 2] {
        let c = self.center[0].mid();
        let mut p = [c + START_OFFSET, c];
        for _ in 0..transient {
            p = self.image_approx(&p);
        }
        p
    }

    /// Angle of `p` around the center in turns, measured clockwise so that
    /// the map rotates forward. Not lifted.
    pub fn angle(&self, p: &[Interval; 2]) -> Result<Interval, MapError> {
        let dx = p[0].sub(self.center[0])?;
        let dy = p[1].sub(self.center[1])?;
        Ok(Interval::atan2_circle(-dy, dx)?)
    }

    /// Lifted angle of `p`, continuous with `prev`.
    pub fn next_angle(&self, p: &[Interval; 2], prev: LiftedAngle) -> Result<LiftedAngle, MapError> {
        let raw = self.angle(p)?;
        let shift = (prev.frac.mid() - raw.mid()).round() as i64;
        let increment = raw.add_int(shift)?.sub(prev.frac)?;
        if !(increment.lo() > -0.5 && increment.hi() < 0.5) {
            return Err(MapError::AmbiguousWinding(increment));
        }
        Ok(LiftedAngle {
            turns: prev.turns + shift,
            frac: raw,
        })
    }
}

impl Dynamics<2> for DelayedLogistic {
    fn image(&self, p: &[Interval; 2]) -> Result<[Interval; 2], MapError> {
        let one_minus_x = Interval::ONE.sub(p[0])?;
        Ok([p[1], self.lambda.mul(p[1])?.mul(one_minus_x)?])
    }

    fn jacobian(&self, p: &[Interval; 2]) -> Result<[[Interval; 2]; 2], MapError> {
        let one_minus_x = Interval::ONE.sub(p[0])?;
        Ok([
            [Interval::ZERO, Interval::ONE],
            [-self.lambda.mul(p[1])?, self.lambda.mul(one_minus_x)?],
        ])
    }

    fn image_approx(&self, p: &[f64; 2]) -> [f64; 2] {
        [p[1], self.lambda.mid() * p[1] * (1.0 - p[0])]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Arnold,
    DelayedLogistic,
    RigidRotation,
}

/// Any of the supported maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapDescriptor {
    Arnold(Arnold),
    RigidRotation(RigidRotation),
    DelayedLogistic(DelayedLogistic),
}

impl MapDescriptor {
    pub fn arnold(alpha: Interval, epsilon: Interval) -> Result<Self, MapError> {
        Ok(MapDescriptor::Arnold(Arnold::new(alpha, epsilon)?))
    }

    pub fn rigid(alpha: Interval) -> Self {
        MapDescriptor::RigidRotation(RigidRotation::new(alpha))
    }

    pub fn delayed_logistic(lambda: Interval, allow_outside: bool) -> Result<Self, MapError> {
        Ok(MapDescriptor::DelayedLogistic(DelayedLogistic::new(
            lambda,
            allow_outside,
        )?))
    }

    pub fn kind(&self) -> MapKind {
        match self {
            MapDescriptor::Arnold(_) => MapKind::Arnold,
            MapDescriptor::RigidRotation(_) => MapKind::RigidRotation,
            MapDescriptor::DelayedLogistic(_) => MapKind::DelayedLogistic,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            MapDescriptor::DelayedLogistic(_) => 2,
            _ => 1,
        }
    }

    /// Results for the delayed logistic map assume that its invariant curve
    /// exists and that the angle dynamics on it is a circle homeomorphism.
    pub fn is_conditional(&self) -> bool {
        matches!(self, MapDescriptor::DelayedLogistic(_))
    }

    /// Named parameter intervals.
    pub fn params(&self) -> Vec<(&'static str, Interval)> {
        match self {
            MapDescriptor::Arnold(m) => vec![("alpha", m.alpha), ("epsilon", m.epsilon)],
            MapDescriptor::RigidRotation(m) => vec![("alpha", m.alpha)],
            MapDescriptor::DelayedLogistic(m) => vec![("lambda", m.lambda)],
        }
    }

    fn circle(&self) -> Result<&dyn Dynamics<1>, MapError> {
        match self {
            MapDescriptor::Arnold(m) => Ok(m),
            MapDescriptor::RigidRotation(m) => Ok(m),
            MapDescriptor::DelayedLogistic(_) => Err(MapError::WrongDimension {
                expected: 1,
                found: 2,
            }),
        }
    }

    fn planar(&self) -> Result<&DelayedLogistic, MapError> {
        match self {
            MapDescriptor::DelayedLogistic(m) => Ok(m),
            _ => Err(MapError::WrongDimension {
                expected: 2,
                found: 1,
            }),
        }
    }

    /// Enclosure of the lift `F` over `x`.
    pub fn lift_eval(&self, x: Interval) -> Result<Interval, MapError> {
        Ok(self.circle()?.image(&[x])?[0])
    }

    /// Enclosure of `F'` over `x`.
    pub fn lift_deriv(&self, x: Interval) -> Result<Interval, MapError> {
        Ok(self.circle()?.jacobian(&[x])?[0][0])
    }

    pub fn plane_eval(&self, p: [Interval; 2]) -> Result<[Interval; 2], MapError> {
        self.planar()?.image(&p)
    }

    pub fn plane_jacobian(&self, p: [Interval; 2]) -> Result<[[Interval; 2]; 2], MapError> {
        self.planar()?.jacobian(&p)
    }

    /// Lifted angle (turns) of `p` around the rotation center, on the branch
    /// whose increment from `prev_turns` lies in `(-1/2, 1/2)`.
    pub fn angle_observable(
        &self,
        p: [Interval; 2],
        prev_turns: Interval,
    ) -> Result<Interval, MapError> {
        let m = self.planar()?;
        let turns = prev_turns.mid().round() as i64;
        let prev = LiftedAngle {
            turns,
            frac: prev_turns.sub_int(turns)?,
        };
        Ok(m.next_angle(&p, prev)?.to_interval()?)
    }
}
