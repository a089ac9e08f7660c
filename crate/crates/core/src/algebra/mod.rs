//! Finite-dimensional algebras by structure constants, with an optional
//! symmetrizing form.

mod constructors;
mod io;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot, kernel, Echelon, Elem, Field, Mat, Subspace};

pub use constructors::{
    cyclic_group_table, group_algebra, klein_four_table, matrix_algebra, symmetric_group_table,
    trivial_extension, truncated_poly,
};
pub use io::{AlgebraDoc, Coeff, FieldSpec, SCHEMA_VERSION};

/// How an algebra was produced; informational only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Kind {
    GroupCyclic { order: usize },
    GroupKlein,
    Group { name: String },
    TruncatedPoly { n: usize },
    TrivialExtensionOf { base: Option<Box<Kind>> },
    MatrixOver { n: usize, base: Option<Box<Kind>> },
}

impl Kind {
    pub fn label(&self) -> String {
        match self {
            Kind::GroupCyclic { order } => format!("C{order}"),
            Kind::GroupKlein => "C2xC2".into(),
            Kind::Group { name } => name.clone(),
            Kind::TruncatedPoly { n } => format!("k[x]/(x^{n})"),
            Kind::TrivialExtensionOf { base } => {
                format!("T({})", base.as_ref().map_or("A".into(), |b| b.label()))
            }
            Kind::MatrixOver { n, base } => {
                format!("M{n}({})", base.as_ref().map_or("A".into(), |b| b.label()))
            }
        }
    }
}

/// A validated associative unital algebra.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    names: Vec<String>,
    unit: Vec<Elem>,
    products: Vec<Vec<(usize, Elem)>>,
    form: Option<Mat>,
    kind: Option<Kind>,
    mult_matrix: OnceLock<Mat>,
}

impl Algebra {
    /// Validates and builds an algebra. `products[i * dim + j]` lists the
    /// non-zero coordinates of `b_i b_j`.
    pub fn new(
        field: &Field,
        names: Vec<String>,
        unit: Vec<Elem>,
        products: Vec<Vec<(usize, Elem)>>,
        form: Option<Mat>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch("algebra of dimension 0".into()));
        }
        if unit.len() != dim || products.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "dimension {dim} with unit of length {} and {} products",
                unit.len(),
                products.len()
            )));
        }
        let products = products
            .into_iter()
            .map(|mut v| {
                v.sort_unstable_by_key(|&(k, _)| k);
                let mut out: Vec<(usize, Elem)> = Vec::with_capacity(v.len());
                for (k, c) in v {
                    match out.last_mut() {
                        Some((lk, lc)) if *lk == k => *lc = field.add(*lc, c),
                        _ => out.push((k, c)),
                    }
                }
                out.retain(|&(_, c)| c != 0);
                out
            })
            .collect::<Vec<_>>();
        if products.iter().flatten().any(|&(k, _)| k >= dim) {
            return Err(Error::DimensionMismatch("product index out of range".into()));
        }
        let alg = Algebra {
            field: field.clone(),
            dim,
            names,
            unit,
            products,
            form: None,
            kind: None,
            mult_matrix: OnceLock::new(),
        };
        alg.check_associative()?;
        alg.check_unit()?;
        match form {
            Some(g) => alg.with_form(g),
            None => Ok(alg),
        }
    }

    /// Attaches a form after checking the three axioms.
    pub fn with_form(mut self, gram: Mat) -> Result<Self> {
        self.check_form(&gram)?;
        self.form = Some(gram);
        Ok(self)
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn without_form(mut self) -> Self {
        self.form = None;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn kind(&self) -> Option<&Kind> {
        self.kind.as_ref()
    }

    pub fn form(&self) -> Option<&Mat> {
        self.form.as_ref()
    }

    pub fn require_form(&self) -> Result<&Mat> {
        self.form.as_ref().ok_or(Error::FormRequired)
    }

    /// Non-zero coordinates of `b_i b_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Elem)] {
        &self.products[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// The `d × d²` matrix of the multiplication map, column `i·d + j` holding `b_i b_j`.
    pub fn mult_matrix(&self) -> &Mat {
        self.mult_matrix.get_or_init(|| {
            let d = self.dim;
            let mut m = Mat::zeros(&self.field, d, d * d);
            for (col, prod) in self.products.iter().enumerate() {
                for &(k, c) in prod {
                    m.set(k, col, c);
                }
            }
            m
        })
    }

    pub fn multiply(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = f.mul(x, y);
                for &(k, c) in self.basis_product(i, j) {
                    out[k] = f.mul_add(out[k], xy, c);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, s: Elem, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|&x| self.field.mul(s, x)).collect()
    }

    pub fn power(&self, a: &[Elem], mut exp: u64) -> Vec<Elem> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `a^(p^n)`.
    pub fn p_power(&self, a: &[Elem], n: u32) -> Vec<Elem> {
        let p = self.field.p() as u64;
        (0..n).fold(a.to_vec(), |x, _| self.power(&x, p))
    }

    /// `(a, b)` under the symmetrizing form.
    pub fn pair(&self, a: &[Elem], b: &[Elem]) -> Result<Elem> {
        let g = self.require_form()?;
        Ok(dot(&self.field, a, &g.mul_vec(b)?))
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[Elem]) -> Mat {
        let cols: Vec<Vec<Elem>> = (0..self.dim)
            .map(|j| self.multiply(a, &self.basis_vector(j)))
            .collect();
        Mat::from_rows(&self.field, self.dim, &cols).transpose()
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[Elem]) -> Mat {
        let cols: Vec<Vec<Elem>> = (0..self.dim)
            .map(|j| self.multiply(&self.basis_vector(j), a))
            .collect();
        Mat::from_rows(&self.field, self.dim, &cols).transpose()
    }

    /// `KA`, the span of all commutators.
    pub fn commutator_space(&self) -> Subspace {
        let d = self.dim;
        let mut e = Echelon::new(&self.field, d);
        for i in 0..d {
            for j in i + 1..d {
                let mut v = vec![0; d];
                for &(k, c) in self.basis_product(i, j) {
                    v[k] = self.field.add(v[k], c);
                }
                for &(k, c) in self.basis_product(j, i) {
                    v[k] = self.field.sub(v[k], c);
                }
                e.insert_dense(&v);
            }
        }
        Subspace::from_echelon(&e)
    }

    /// `Z(A)`, the kernel of the stacked maps `z ↦ z b_i − b_i z`.
    pub fn center(&self) -> Subspace {
        let d = self.dim;
        let f = &self.field;
        let mut rows = Vec::with_capacity(d * d);
        for i in 0..d {
            // row k of the map z ↦ z b_i − b_i z
            let mut block = vec![vec![0; d]; d];
            for z in 0..d {
                for &(k, c) in self.basis_product(z, i) {
                    block[k][z] = f.add(block[k][z], c);
                }
                for &(k, c) in self.basis_product(i, z) {
                    block[k][z] = f.sub(block[k][z], c);
                }
            }
            rows.extend(block);
        }
        kernel(&Mat::from_rows(f, d, &rows))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (i + 1..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Transports the algebra along `g`, whose rows are the new basis in old
    /// coordinates.
    pub fn change_basis(&self, g: &Mat) -> Result<Algebra> {
        let d = self.dim;
        if g.rows() != d || g.cols() != d {
            return Err(Error::DimensionMismatch("basis change of wrong size".into()));
        }
        let ginv = g.inverse()?;
        let to_new = |v: &[Elem]| -> Result<Vec<Elem>> { ginv.transpose().mul_vec(v) };
        let rows = g.row_vecs();
        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let v = to_new(&self.multiply(&rows[i], &rows[j]))?;
                products.push(v.into_iter().enumerate().filter(|&(_, c)| c != 0).collect());
            }
        }
        let unit = to_new(&self.unit)?;
        let form = match &self.form {
            Some(gram) => Some(g.mul(gram)?.mul(&g.transpose())?),
            None => None,
        };
        let names = (0..d).map(|i| format!("v{i}")).collect();
        let mut out = Algebra::new(&self.field, names, unit, products, form)?;
        out.kind = self.kind.clone();
        Ok(out)
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        let f = &self.field;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for l in 0..d {
                    let mut left = vec![0; d];
                    for &(k, c) in ij {
                        for &(t, c2) in self.basis_product(k, l) {
                            left[t] = f.mul_add(left[t], c, c2);
                        }
                    }
                    let mut right = vec![0; d];
                    for &(k, c) in self.basis_product(j, l) {
                        for &(t, c2) in self.basis_product(i, k) {
                            right[t] = f.mul_add(right[t], c, c2);
                        }
                    }
                    if left != right {
                        return Err(Error::NotAssociative([i, j, l]));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = self.basis_vector(i);
            if self.multiply(&self.unit, &b) != b || self.multiply(&b, &self.unit) != b {
                return Err(Error::NoUnit(i));
            }
        }
        Ok(())
    }

    fn check_form(&self, g: &Mat) -> Result<()> {
        let d = self.dim;
        if g.rows() != d || g.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "form of size {}x{} for dimension {d}",
                g.rows(),
                g.cols()
            )));
        }
        if *g.field() != self.field {
            return Err(Error::DimensionMismatch("form over a different field".into()));
        }
        for i in 0..d {
            for j in i + 1..d {
                if g.get(i, j) != g.get(j, i) {
                    return Err(Error::FormNotSymmetric([i, j]));
                }
            }
        }
        let rank = g.rank();
        if rank < d {
            return Err(Error::FormDegenerate { rank, dim: d });
        }
        let f = &self.field;
        let pair_with = |prod: &[(usize, Elem)], l: usize, left: bool| {
            prod.iter().fold(0, |acc, &(k, c)| {
                f.mul_add(acc, c, if left { g.get(k, l) } else { g.get(l, k) })
            })
        };
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let lhs = pair_with(self.basis_product(i, j), l, true);
                    let rhs = pair_with(self.basis_product(j, l), i, false);
                    if lhs != rhs {
                        return Err(Error::FormNotAssociative([i, j, l]));
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.products == other.products
            && self.form == other.form
    }
}
