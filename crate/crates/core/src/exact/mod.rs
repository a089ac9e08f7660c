//! Exact arithmetic over GF(p^e) and the linear algebra built on it.

mod echelon;
mod field;
mod mat;
mod semilinear;
mod sparse;
mod subspace;

pub use echelon::Echelon;
pub use field::{Elem, Field, CONWAY_TABLE, MAX_EXTENSION_ORDER};
pub use mat::Mat;
pub use semilinear::{semilinear_solve, SemilinearOperator};
pub use sparse::SparseMat;
pub use subspace::{kernel, orthogonal_complement, solve, Subspace};

/// `Fr^n(x)`.
pub fn frobenius(field: &Field, x: Elem, n: i64) -> Elem {
    field.frobenius(x, n)
}

/// Reduced row-echelon form, rank and pivot columns.
pub fn rref(m: &Mat) -> (Mat, usize, Vec<usize>) {
    m.rref()
}

/// Dot product.
pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.mul_add(acc, x, y))
}
