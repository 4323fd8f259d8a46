//! Exact linear algebra over `F_q`.

mod constructions;
mod matrix;
mod subspace;

pub use constructions::{
    cauchy, default_cauchy, default_points, dual_multipliers, grs, grs_dual, grs_rows,
    lemma3_check, vandermonde,
};
pub use matrix::Matrix;
pub use subspace::Subspace;
