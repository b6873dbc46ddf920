//! Numerical toolkit for rigidly rotating solutions of the two-dimensional
//! Euler equations whose vorticity is the quadratic profile `(A|x|² + B)` on
//! the unit disc.
//!
//! Modules:
//! - [`hypergeom`]: Gamma and Gauss `₂F₁` evaluation with identity residuals.
//! - [`dispersion`]: the spectral function `ζ_n`, singular set and eigenvalues.
//! - [`kernel`]: kernel generators, range pairing and the transversality integral.
//! - [`potentials`]: closed forms of Cauchy and logarithmic disc integrals.
//! - [`flow`]: relative-frame trajectories, periods and orbit averages.
//! - [`regimes`]: classification of `(A, B)` by admissible symmetries.

pub mod dispersion;
pub mod error;
pub mod flow;
pub mod hypergeom;
pub mod kernel;
pub mod potentials;
pub mod quad;
pub mod regimes;
pub mod roots;

pub use dispersion::{EigenSearch, EigenvalueRecord, QuadraticProfile, SingularPoint, ZetaForm};
pub use error::{Error, Result};
pub use flow::{AngularField, OrbitRecord};
pub use hypergeom::{HyperEval, HyperParams, Method, QuadraticFamilyIndex};
pub use kernel::{KernelProfile, SpectralContext, TransversalityResult};
pub use regimes::Regime;
