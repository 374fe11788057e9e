//! Quantum correlations of top–antitop spin states.
//!
//! The crate builds leading-order tt̄ spin density matrices for gluon
//! fusion and quark–antiquark annihilation, measures Bell nonlocality,
//! steering, concurrence and geometric discord, degrades the states with
//! local noise channels and teleports a two-qubit input through them.
//!
//! ```
//! use ttqc::spin_density::{xstate_direct, KinematicPoint, ProductionChannel};
//! use ttqc::quantifiers::quantify_all;
//!
//! let k = KinematicPoint::from_angle(1.0, std::f64::consts::FRAC_PI_2)?;
//! let rho = xstate_direct(ProductionChannel::GluonFusion, &k)?;
//! let q = quantify_all(&rho)?;
//! assert!((q.concurrence - 1.0).abs() < 1e-12);
//! # Ok::<(), ttqc::Error>(())
//! ```

pub mod channels;
pub mod error;
pub mod qmat;
pub mod quantifiers;
pub mod spin_density;
pub mod sweep;
pub mod teleport;
pub mod tolerance;

pub use error::{Error, Result};
