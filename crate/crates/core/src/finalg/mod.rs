//! Finite-dimensional algebras over ℚ(i)(s): exact linear algebra, structure
//! constants, tensor products, eigenspace splitting and Gram positivity.

mod algebra;
mod eigen;
mod gram;
pub mod linalg;

pub use algebra::{
    apply_tensor, flip, outer, slice_left, slice_right, tensor_mul, AlgebraError, FinAlgebra, Functional, LinMap,
    Linearity, MulEntry,
};
pub use eigen::{char_poly, eigensplit, eigensplit_matrix, EigenError, Eigenspace};
pub use gram::{form_psd, gram_matrix, gram_psd, Definiteness, GramCertificate, GramError, Scope};
pub use linalg::{solve_affine, AffineSolution, LinearSystem, Matrix, Vector};
