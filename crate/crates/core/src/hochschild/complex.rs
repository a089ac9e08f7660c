//! The Hochschild chain complex `A ⊗ Ā^{⊗m}` and cochain complex
//! `Hom(Ā^{⊗m}, A)`.
//!
//! In the [`Model::Full`] model `Ā = A`; in the [`Model::Normalized`] model
//! `Ā = A/k·1`, with basis the images of all `b_i` except the first basis
//! vector `b_u` on which the unit has a non-zero coordinate. The positions of
//! those basis vectors are the *letters* `0..r`.
//!
//! A degree-`m` chain `a_0 ⊗ a_1 ⊗ … ⊗ a_m` has index `i_0·r^m + J`, where `J`
//! is the row-major index of the letter tuple. A degree-`m` cochain `f` is a
//! `d × r^m` matrix whose column `J` is `f(a_J)`.

use super::{ChainVector, Cochain};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exact::{Elem, Field, Mat, SparseMat};

pub const DEFAULT_SIZE_CAP: u64 = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Full,
    Normalized,
}

#[derive(Clone, Debug)]
pub struct BarComplex {
    alg: Algebra,
    model: Model,
    d: usize,
    letters: Vec<usize>,
    letter_of: Vec<Option<usize>>,
    r: usize,
    cdense: Vec<Elem>,
    prod_bar: Vec<Vec<(usize, Elem)>>,
    cap: u64,
}

impl BarComplex {
    pub fn new(alg: &Algebra, model: Model, cap: u64) -> Self {
        let d = alg.dim();
        let unit = alg.unit();
        let u = unit.iter().position(|&x| x != 0).expect("unit is non-zero");
        let letters: Vec<usize> = match model {
            Model::Full => (0..d).collect(),
            Model::Normalized => (0..d).filter(|&i| i != u).collect(),
        };
        let mut letter_of = vec![None; d];
        for (pos, &i) in letters.iter().enumerate() {
            letter_of[i] = Some(pos);
        }
        let r = letters.len();
        let mut cdense = vec![0; d * d * d];
        for x in 0..d {
            for y in 0..d {
                for &(k, c) in alg.basis_product(x, y) {
                    cdense[(x * d + y) * d + k] = c;
                }
            }
        }
        let mut cx = BarComplex {
            alg: alg.clone(),
            model,
            d,
            letters,
            letter_of,
            r,
            cdense,
            prod_bar: Vec::new(),
            cap,
        };
        let mut prod_bar = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                let mut v = vec![0; d];
                for &(k, c) in alg.basis_product(cx.letters[a], cx.letters[b]) {
                    v[k] = c;
                }
                let bar = cx.project(&v);
                prod_bar.push(bar.into_iter().enumerate().filter(|&(_, c)| c != 0).collect());
            }
        }
        cx.prod_bar = prod_bar;
        cx
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn dim_a(&self) -> usize {
        self.d
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn radix(&self) -> usize {
        self.r
    }

    /// `r^m`, or `None` on overflow.
    pub fn tensor_dim(&self, m: usize) -> Option<usize> {
        (self.r as u128)
            .checked_pow(m as u32)
            .filter(|&x| x <= usize::MAX as u128 / self.d.max(1) as u128)
            .map(|x| x as usize)
    }

    /// Dimension of degree-`m` chains (and of degree-`m` cochains): `d·r^m`.
    pub fn chain_dim(&self, m: usize) -> Option<usize> {
        self.tensor_dim(m).map(|t| t * self.d)
    }

    /// Size of the largest differential touched by degree `m`.
    pub fn degree_entries(&self, m: usize) -> u128 {
        let a = self.chain_dim(m).map_or(u128::MAX, |x| x as u128);
        let b = self.chain_dim(m + 1).map_or(u128::MAX, |x| x as u128);
        a.saturating_mul(b)
    }

    pub fn check_degree(&self, m: usize) -> Result<()> {
        let entries = self.degree_entries(m);
        if entries > self.cap as u128 {
            return Err(Error::SizeCapExceeded {
                entries,
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub fn check_vector(&self, m: usize) -> Result<usize> {
        match self.chain_dim(m) {
            Some(n) if n as u64 <= self.cap => Ok(n),
            other => Err(Error::SizeCapExceeded {
                entries: other.map_or(u128::MAX, |n| n as u128),
                cap: self.cap,
            }),
        }
    }

    /// Coordinates of `x ∈ A` in `Ā`.
    pub fn project(&self, x: &[Elem]) -> Vec<Elem> {
        match self.model {
            Model::Full => x.to_vec(),
            Model::Normalized => {
                let f = self.field();
                let unit = self.alg.unit();
                let u = (0..self.d).find(|&i| self.letter_of[i].is_none()).unwrap();
                let s = f.div(x[u], unit[u]).unwrap();
                self.letters
                    .iter()
                    .map(|&i| f.sub(x[i], f.mul(s, unit[i])))
                    .collect()
            }
        }
    }

    /// The element of `A` lifting letter `a`.
    pub fn letter_basis(&self, a: usize) -> usize {
        self.letters[a]
    }

    #[inline]
    fn c(&self, x: usize, y: usize, k: usize) -> Elem {
        self.cdense[(x * self.d + y) * self.d + k]
    }

    fn digits(&self, mut j: usize, m: usize) -> Vec<usize> {
        let mut out = vec![0; m];
        for slot in out.iter_mut().rev() {
            *slot = j % self.r;
            j /= self.r;
        }
        out
    }

    fn index(&self, digits: impl IntoIterator<Item = usize>) -> usize {
        digits.into_iter().fold(0, |acc, x| acc * self.r + x)
    }

    /// `b(e_T)` for the degree-`m` basis chain with index `t`, as unmerged
    /// sparse entries over degree-`(m−1)` chains.
    pub fn boundary_of_basis(&self, m: usize, t: usize) -> Vec<(usize, Elem)> {
        if m == 0 {
            return Vec::new();
        }
        let f = self.field();
        let rm1 = self.tensor_dim(m - 1).unwrap();
        let rm = rm1 * self.r;
        let (i0, jj) = (t / rm, t % rm);
        let js = self.digits(jj, m);
        let mut out = Vec::new();
        // a_0 a_1 ⊗ a_2 ⊗ … ⊗ a_m
        let tail = self.index(js[1..].iter().copied());
        for &(k, c) in self.alg.basis_product(i0, self.letters[js[0]]) {
            out.push((k * rm1 + tail, c));
        }
        // a_0 ⊗ … ⊗ a_j a_{j+1} ⊗ …
        for j in 1..m {
            let neg = j % 2 == 1;
            for &(t2, c) in &self.prod_bar[js[j - 1] * self.r + js[j]] {
                let merged = self.index(
                    js[..j - 1]
                        .iter()
                        .copied()
                        .chain(std::iter::once(t2))
                        .chain(js[j + 1..].iter().copied()),
                );
                out.push((i0 * rm1 + merged, if neg { f.neg(c) } else { c }));
            }
        }
        // (−1)^m a_m a_0 ⊗ a_1 ⊗ … ⊗ a_{m−1}
        let head = self.index(js[..m - 1].iter().copied());
        for &(k, c) in self.alg.basis_product(self.letters[js[m - 1]], i0) {
            out.push((k * rm1 + head, if m % 2 == 1 { f.neg(c) } else { c }));
        }
        out
    }

    /// Row `(k, a_1..a_{m+1})` of `δ_m`: the functional `f ↦ (δf)(a_1..a_{m+1})_k`
    /// as unmerged sparse entries over degree-`m` cochains.
    pub fn coboundary_row(&self, m: usize, row: usize) -> Vec<(usize, Elem)> {
        let f = self.field();
        let d = self.d;
        let rm = self.tensor_dim(m).unwrap();
        let rm1 = rm * self.r;
        let (k, aa) = (row / rm1, row % rm1);
        let a = self.digits(aa, m + 1);
        let mut out = Vec::new();
        // a_1 · f(a_2, …, a_{m+1})
        let tail = self.index(a[1..].iter().copied());
        let x = self.letters[a[0]];
        for l in 0..d {
            let c = self.c(x, l, k);
            if c != 0 {
                out.push((l * rm + tail, c));
            }
        }
        // (−1)^j f(…, a_j a_{j+1}, …)
        for j in 1..=m {
            let neg = j % 2 == 1;
            for &(t2, c) in &self.prod_bar[a[j - 1] * self.r + a[j]] {
                let merged = self.index(
                    a[..j - 1]
                        .iter()
                        .copied()
                        .chain(std::iter::once(t2))
                        .chain(a[j + 1..].iter().copied()),
                );
                out.push((k * rm + merged, if neg { f.neg(c) } else { c }));
            }
        }
        // (−1)^{m+1} f(a_1, …, a_m) · a_{m+1}
        let head = self.index(a[..m].iter().copied());
        let y = self.letters[a[m]];
        let neg = (m + 1) % 2 == 1;
        for l in 0..d {
            let c = self.c(l, y, k);
            if c != 0 {
                out.push((l * rm + head, if neg { f.neg(c) } else { c }));
            }
        }
        out
    }

    /// `b_m` as a sparse `dim C_{m−1} × dim C_m` matrix.
    pub fn boundary_matrix(&self, m: usize) -> Result<SparseMat> {
        if m == 0 {
            return Err(Error::DegreeMismatch("boundary is defined from degree 1".into()));
        }
        self.check_degree(m - 1)?;
        let cols = (0..self.chain_dim(m).unwrap())
            .map(|t| self.boundary_of_basis(m, t))
            .collect();
        Ok(SparseMat::from_columns(self.field(), self.chain_dim(m - 1).unwrap(), cols))
    }

    /// `δ_m` as a sparse `dim C^{m+1} × dim C^m` matrix.
    pub fn coboundary_matrix(&self, m: usize) -> Result<SparseMat> {
        self.check_degree(m)?;
        let rows = (0..self.chain_dim(m + 1).unwrap())
            .map(|row| self.coboundary_row(m, row))
            .collect();
        Ok(SparseMat::from_rows(self.field(), self.chain_dim(m).unwrap(), rows))
    }

    /// `b(x)`.
    pub fn boundary(&self, x: &ChainVector) -> Result<ChainVector> {
        let m = x.degree;
        if m == 0 {
            return Err(Error::DegreeMismatch("boundary is defined from degree 1".into()));
        }
        let f = self.field();
        let mut out = vec![0; self.check_vector(m - 1)?];
        for (t, &v) in x.coords.iter().enumerate() {
            if v != 0 {
                for (s, c) in self.boundary_of_basis(m, t) {
                    out[s] = f.mul_add(out[s], v, c);
                }
            }
        }
        Ok(ChainVector::new(m - 1, out))
    }

    /// `δf`.
    pub fn coboundary(&self, g: &Cochain) -> Result<Cochain> {
        let m = g.degree;
        let n = self.check_vector(m + 1)?;
        let f = self.field();
        let vals = g.values.data();
        let out: Vec<Elem> = (0..n)
            .map(|row| {
                self.coboundary_row(m, row)
                    .into_iter()
                    .fold(0, |acc, (i, c)| f.mul_add(acc, c, vals[i]))
            })
            .collect();
        Ok(Cochain::from_data(self, m + 1, out))
    }

    /// The cochain of the multiplication map (degree 2).
    pub fn multiplication_cochain(&self) -> Cochain {
        let r = self.r;
        let mut m = Mat::zeros(self.field(), self.d, r * r);
        for a in 0..r {
            for b in 0..r {
                for &(k, c) in self.alg.basis_product(self.letters[a], self.letters[b]) {
                    m.set(k, a * r + b, c);
                }
            }
        }
        Cochain { degree: 2, values: m }
    }
}
