//! Numerical laboratory for the linear Moore-Gibson-Thompson equation on
//! the whole space: exact characteristic roots and their asymptotic
//! expansions, the explicit Fourier-space solution kernels, a radial
//! (Hankel-type) transform engine, and decay-rate experiments for both the
//! dissipative and the conservative case.

pub mod conservative;
pub mod dissipative;
pub mod error;
pub mod fit;
pub mod kernels;
pub mod ode;
pub mod params;
pub mod radial;
pub mod roots;

pub use error::{MgtError, Result};
pub use fit::{RateReport, SlopeCriterion};
pub use kernels::{DataTriple, KernelId, KernelPart};
pub use params::MgtParams;
pub use radial::{CutoffSpec, Direction, RadialFunction, RadialGrid};
pub use roots::{ExpansionOrder, RootComponent, RootTriple, Zone};
