use super::echelon::Echelon;
use super::field::{Elem, Field};
use super::mat::Mat;
use crate::error::{Error, Result};

/// A subspace of `k^n`, stored as its canonical RREF basis.
///
/// Two subspaces are equal iff their RREF bases are identical, so the
/// derived `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
        }
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        Subspace {
            ambient: e.ncols(),
            basis: e.to_mat(),
        }
    }

    /// Span of the given vectors.
    pub fn span<I, V>(field: &Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Elem]>,
    {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            let v = v.as_ref();
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            if e.is_full() {
                break;
            }
            e.insert_dense(v);
        }
        Subspace::from_echelon(&e)
    }

    /// Row space of `m`.
    pub fn row_space(m: &Mat) -> Self {
        Subspace::span(m.field(), m.cols(), m.row_vecs())
    }

    /// Column space of `m`.
    pub fn column_space(m: &Mat) -> Self {
        Subspace::row_space(&m.transpose())
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|&x| x != 0)
                    .expect("basis rows are non-zero")
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        Echelon::from_dense_rows(self.field(), self.ambient, self.basis.row_vecs().into_iter())
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of k^{} and k^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.ambient && self.echelon().contains(v)
    }

    /// Coordinates of `v` with respect to the RREF basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().into_iter().map(|c| v[c]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut e = self.echelon();
        for r in other.basis.row_vecs() {
            e.insert_dense(&r);
        }
        Ok(Subspace::from_echelon(&e))
    }

    /// Intersection, computed as the kernel of the stacked annihilators.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let f = self.field();
        let a = self.echelon();
        let b = other.echelon();
        let duals: Vec<Vec<Elem>> = a.kernel_vectors().chain(b.kernel_vectors()).collect();
        Ok(kernel(&Mat::from_rows(f, self.ambient, &duals)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let e = other.echelon();
        self.basis.row_vecs().iter().all(|r| e.contains(r))
    }

    /// Entrywise `Fr^n` of the subspace (again in RREF).
    pub fn frobenius(&self, n: i64) -> Subspace {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.frobenius(n),
        }
    }

    /// Image under a linear map given by a `rows × ambient` matrix.
    pub fn image_under(&self, m: &Mat) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map does not act on this subspace".into()));
        }
        let imgs = self
            .basis
            .row_vecs()
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(m.field(), m.rows(), imgs))
    }
}

/// Right null space `{v : m v = 0}`.
pub fn kernel(m: &Mat) -> Subspace {
    let e = Echelon::from_dense_rows(m.field(), m.cols(), m.row_vecs().into_iter());
    let vecs: Vec<Vec<Elem>> = e.kernel_vectors().collect();
    Subspace::span(m.field(), m.cols(), vecs)
}

/// A solution of `m x = b` with all free variables zero.
pub fn solve(m: &Mat, b: &[Elem]) -> Result<Vec<Elem>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let mut e = Echelon::new(m.field(), n + 1);
    for r in 0..m.rows() {
        let mut row = m.row(r).to_vec();
        row.push(b[r]);
        e.insert_dense(&row);
    }
    let mut x = vec![0; n];
    for row in e.basis_rows() {
        let lead = row.iter().position(|&v| v != 0).expect("non-zero row");
        if lead == n {
            return Err(Error::NoSolution);
        }
        x[lead] = row[n];
    }
    Ok(x)
}

/// `{x : (b, x) = 0 for all b in u}` with `(b, x) = b^T gram x`.
pub fn orthogonal_complement(gram: &Mat, u: &Subspace) -> Result<Subspace> {
    if gram.rows() != gram.cols() || gram.rows() != u.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "gram {}x{} against subspace of k^{}",
            gram.rows(),
            gram.cols(),
            u.ambient()
        )));
    }
    Ok(kernel(&u.basis().mul(gram)?))
}
