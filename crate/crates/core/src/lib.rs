//! Computable Šerstnev probabilistic normed spaces.
//!
//! Exact algebra of step distance distribution functions, the triangle
//! functions induced by the basic t-norms, the modified Lévy metric, PN
//! spaces generated by band-constant seminorm families, and operator norms
//! between such spaces.

pub mod cli;
pub mod distfn;
pub mod error;
pub mod operator;
pub mod pnspace;
pub mod testkit;
pub mod triangle;

mod sampling;

pub use distfn::{levy_condition, levy_metric, LevyDistance, StepDF, StepQuantile};
pub use error::{Error, Result};
pub use operator::{LinearOperator, NormProfile};
pub use pnspace::{product_space, validate_pn_axioms, NormKind, NormSpec, PNSpace, SeminormFamily};
pub use triangle::{tau_inf_conv, tau_sup_conv, TNormKind};
