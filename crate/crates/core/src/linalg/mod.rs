//! Dense linear algebra over real and complex scalars.

pub mod logdet;
pub mod lu;
pub mod matrix;
pub mod random;
pub mod text;

pub use logdet::LogDet;
pub use lu::{condition_estimate, inverse, log_det, LuFactorization};
pub use matrix::SquareMatrix;
pub use random::{random_gaussian, Rng};
pub use text::{parse_matrix, write_matrix, AnyMatrix};
