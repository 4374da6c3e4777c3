//! Rigorous enclosures of rotation numbers of circle maps.
//!
//! The crate is layered bottom-up:
//!
//! * [`interval`]: outward-rounded binary64 interval arithmetic.
//! * [`maps`]: the Arnold family, rigid rotations and the delayed logistic
//!   map, evaluated in interval arithmetic.
//! * [`shooting`]: certified finite orbits and periodic orbits via the
//!   interval Newton operator on the multiple-shooting system.
//! * [`rotation`]: the linear (`1/N`) and continued-fraction enclosure
//!   algorithms, with rationality certificates.
//! * [`report`]: JSON rendering of results.

pub mod interval;
pub mod maps;
pub mod report;
pub mod rotation;
pub mod shooting;

pub use interval::{Interval, IntervalError};
pub use maps::{MapDescriptor, MapError};
pub use rotation::{rho_cf, rho_linear, RotationResult, Status};
