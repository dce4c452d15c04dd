//! Manakov top: classical energy-momentum diagram, symmetry-labelled joint
//! spectrum and quantum monodromy by elementary-cell transport.

pub mod classical;
pub mod error;
pub mod model;
pub mod monodromy;
pub mod report;
pub mod spectrum;
pub mod spin;
pub mod symmetry;
pub mod unionfind;

pub use error::{Error, Result};
pub use model::{build_limiting, build_xy, LimitingOperators, ModelOperators, ModelParams};
pub use spin::Mat;
pub use symmetry::IrrepLabel;
