//! Hochschild homology `HH_m(A, A)` and cohomology `HH^m(A, A)`, the pairing
//! between them induced by the symmetrizing form, and the cup product.

mod complex;
mod homology;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

pub use complex::{BarComplex, Model, DEFAULT_SIZE_CAP};
pub use homology::{HomologyBasis, RepOrder, Side};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exact::{Elem, Field, Mat};

/// A degree-`m` chain in `A ⊗ Ā^{⊗m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub degree: usize,
    pub coords: Vec<Elem>,
}

impl ChainVector {
    pub fn new(degree: usize, coords: Vec<Elem>) -> Self {
        ChainVector { degree, coords }
    }

    pub fn zero(cx: &BarComplex, degree: usize) -> Self {
        ChainVector::new(degree, vec![0; cx.chain_dim(degree).unwrap()])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// A degree-`m` cochain: a `d × r^m` matrix whose column `J` is the value on
/// the basis tensor with letter index `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Mat,
}

impl Cochain {
    pub fn from_data(cx: &BarComplex, degree: usize, data: Vec<Elem>) -> Self {
        let cols = cx.tensor_dim(degree).unwrap();
        Cochain {
            degree,
            values: Mat::from_data(cx.field(), cx.dim_a(), cols, data),
        }
    }

    pub fn zero(cx: &BarComplex, degree: usize) -> Self {
        let cols = cx.tensor_dim(degree).unwrap();
        Cochain {
            degree,
            values: Mat::zeros(cx.field(), cx.dim_a(), cols),
        }
    }

    /// The degree-0 cochain given by an element of `A`.
    pub fn element(cx: &BarComplex, a: &[Elem]) -> Self {
        Cochain::from_data(cx, 0, a.to_vec())
    }

    pub fn data(&self) -> &[Elem] {
        self.values.data()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add cochains of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(Cochain {
            degree: self.degree,
            values: self.values.add(&other.values)?,
        })
    }

    pub fn scale(&self, s: Elem) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.scale(s),
        }
    }
}

/// Options for a [`Hochschild`] context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub model: Model,
    pub order: RepOrder,
    pub cap: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            model: Model::Normalized,
            order: RepOrder::Forward,
            cap: DEFAULT_SIZE_CAP,
        }
    }
}

/// A bar complex together with cached (co)homology bases and pairing Gram
/// matrices.
#[derive(Debug)]
pub struct Hochschild {
    complex: BarComplex,
    order: RepOrder,
    homology: Mutex<BTreeMap<usize, Arc<HomologyBasis>>>,
    cohomology: Mutex<BTreeMap<usize, Arc<HomologyBasis>>>,
    grams: Mutex<BTreeMap<usize, Arc<Mat>>>,
}

impl Hochschild {
    pub fn new(a: &Algebra) -> Self {
        Hochschild::with_options(a, Options::default())
    }

    pub fn with_cap(a: &Algebra, cap: u64) -> Self {
        Hochschild::with_options(
            a,
            Options {
                cap,
                ..Options::default()
            },
        )
    }

    pub fn with_options(a: &Algebra, opts: Options) -> Self {
        Hochschild {
            complex: BarComplex::new(a, opts.model, opts.cap),
            order: opts.order,
            homology: Mutex::new(BTreeMap::new()),
            cohomology: Mutex::new(BTreeMap::new()),
            grams: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn complex(&self) -> &BarComplex {
        &self.complex
    }

    pub fn algebra(&self) -> &Algebra {
        self.complex.algebra()
    }

    pub fn field(&self) -> &Field {
        self.complex.field()
    }

    pub fn order(&self) -> RepOrder {
        self.order
    }

    fn cached(
        &self,
        cache: &Mutex<BTreeMap<usize, Arc<HomologyBasis>>>,
        side: Side,
        m: usize,
    ) -> Result<Arc<HomologyBasis>> {
        if let Some(b) = cache.lock().unwrap().get(&m) {
            return Ok(b.clone());
        }
        let b = Arc::new(HomologyBasis::compute(&self.complex, side, m, self.order)?);
        cache.lock().unwrap().insert(m, b.clone());
        Ok(b)
    }

    /// `HH_m(A, A)`.
    pub fn homology(&self, m: usize) -> Result<Arc<HomologyBasis>> {
        self.cached(&self.homology, Side::Homology, m)
    }

    /// `HH^m(A, A)`.
    pub fn cohomology(&self, m: usize) -> Result<Arc<HomologyBasis>> {
        self.cached(&self.cohomology, Side::Cohomology, m)
    }

    pub fn cocycle_reps(&self, m: usize) -> Result<Vec<Cochain>> {
        Ok(self.cohomology(m)?.cocycle_reps(&self.complex))
    }

    pub fn is_cocycle(&self, f: &Cochain) -> Result<bool> {
        Ok(self.complex.coboundary(f)?.is_zero())
    }

    pub fn is_cycle(&self, x: &ChainVector) -> Result<bool> {
        if x.degree == 0 {
            return Ok(true);
        }
        Ok(self.complex.boundary(x)?.is_zero())
    }

    /// Class coordinates of a cocycle in the `HH^m` basis.
    pub fn cohomology_class(&self, f: &Cochain) -> Result<Vec<Elem>> {
        Ok(self.cohomology(f.degree)?.class_coords(f.data()))
    }

    /// Class coordinates of a cycle in the `HH_m` basis.
    pub fn homology_class(&self, x: &ChainVector) -> Result<Vec<Elem>> {
        Ok(self.homology(x.degree)?.class_coords(&x.coords))
    }

    /// `(f, x)_m = Σ (f(a_1, …, a_m), a_0)`.
    pub fn pairing(&self, f: &Cochain, x: &ChainVector) -> Result<Elem> {
        pairing(&self.complex, f, x)
    }

    /// Gram matrix `G[a][b] = (f_a, x_b)` on the chosen bases of `HH^m` and
    /// `HH_m`.
    pub fn pairing_gram(&self, m: usize) -> Result<Arc<Mat>> {
        if let Some(g) = self.grams.lock().unwrap().get(&m) {
            return Ok(g.clone());
        }
        let coh = self.cohomology(m)?;
        let hom = self.homology(m)?;
        if coh.dim() != hom.dim() {
            return Err(Error::PairingDegenerate(m));
        }
        let fs = coh.cocycle_reps(&self.complex);
        let xs = hom.cycle_reps();
        let mut g = Mat::zeros(self.field(), fs.len(), xs.len());
        for (a, f) in fs.iter().enumerate() {
            for (b, x) in xs.iter().enumerate() {
                g.set(a, b, self.pairing(f, x)?);
            }
        }
        if !g.is_invertible() {
            return Err(Error::PairingDegenerate(m));
        }
        let g = Arc::new(g);
        self.grams.lock().unwrap().insert(m, g.clone());
        Ok(g)
    }

    /// Checks `(δe, x) = (e, b x)` for every degree-`(m−1)` basis cochain `e`
    /// and degree-`m` basis chain `x`, i.e. `δ_{m−1}^T P_m = P_{m−1} b_m` where
    /// `P_m` is the chain-level pairing. Returns the first failing chain index.
    pub fn verify_adjointness(&self, m: usize) -> Result<std::result::Result<(), usize>> {
        adjointness(&self.complex, m)
    }

    /// `f ⌣ g`.
    pub fn cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        cup(&self.complex, f, g)
    }

    /// The `p^n`-fold cup power of `f`. For `p` odd and odd degree the power
    /// is zero on classes and the zero cochain is returned.
    pub fn cup_power(&self, f: &Cochain, n: u32) -> Result<CupPower> {
        cup_power(&self.complex, f, n)
    }
}

/// Chain-level pairing `(f, a_0 ⊗ a_1 ⊗ … ⊗ a_m) = (f(a_1, …, a_m), a_0)`.
pub fn pairing(cx: &BarComplex, f: &Cochain, x: &ChainVector) -> Result<Elem> {
    if f.degree != x.degree {
        return Err(Error::DegreeMismatch(format!(
            "cochain of degree {} paired with chain of degree {}",
            f.degree, x.degree
        )));
    }
    let gram = cx.algebra().require_form()?;
    let fl = cx.field();
    let d = cx.dim_a();
    let rm = cx.tensor_dim(x.degree).unwrap();
    let fv = f.data();
    let mut acc = 0;
    for jj in 0..rm {
        for i0 in 0..d {
            let xv = x.coords[i0 * rm + jj];
            if xv == 0 {
                continue;
            }
            let mut s = 0;
            for k in 0..d {
                let v = fv[k * rm + jj];
                if v != 0 {
                    s = fl.mul_add(s, v, gram.get(k, i0));
                }
            }
            acc = fl.mul_add(acc, xv, s);
        }
    }
    Ok(acc)
}

fn adjointness(cx: &BarComplex, m: usize) -> Result<std::result::Result<(), usize>> {
    if m == 0 {
        return Ok(Ok(()));
    }
    cx.check_degree(m - 1)?;
    let gram = cx.algebra().require_form()?;
    let f = cx.field();
    let d = cx.dim_a();
    let rm = cx.tensor_dim(m).unwrap();
    let rm1 = cx.tensor_dim(m - 1).unwrap();
    let n_prev = cx.chain_dim(m - 1).unwrap();
    let mut lhs = vec![0; n_prev];
    let mut rhs = vec![0; n_prev];
    for t in 0..cx.chain_dim(m).unwrap() {
        let (i0, jj) = (t / rm, t % rm);
        lhs.iter_mut().for_each(|x| *x = 0);
        rhs.iter_mut().for_each(|x| *x = 0);
        for k in 0..d {
            let g = gram.get(k, i0);
            if g == 0 {
                continue;
            }
            for (e, c) in cx.coboundary_row(m - 1, k * rm + jj) {
                lhs[e] = f.mul_add(lhs[e], g, c);
            }
        }
        for (s, c) in cx.boundary_of_basis(m, t) {
            let (s0, j2) = (s / rm1, s % rm1);
            for k in 0..d {
                let g = gram.get(k, s0);
                if g != 0 {
                    let e = k * rm1 + j2;
                    rhs[e] = f.mul_add(rhs[e], g, c);
                }
            }
        }
        if lhs != rhs {
            return Ok(Err(t));
        }
    }
    Ok(Ok(()))
}

/// `(f ⌣ g)(a_1, …, a_{m+n}) = f(a_1, …, a_m) · g(a_{m+1}, …, a_{m+n})`.
pub fn cup(cx: &BarComplex, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let deg = f.degree + g.degree;
    cx.check_vector(deg)?;
    let a = cx.algebra();
    let fl = cx.field();
    let d = cx.dim_a();
    let rm = cx.tensor_dim(f.degree).unwrap();
    let rn = cx.tensor_dim(g.degree).unwrap();
    let total = rm * rn;
    let (fv, gv) = (f.data(), g.data());
    let mut out = vec![0; d * total];
    let g_cols: Vec<Vec<(usize, Elem)>> = (0..rn)
        .map(|j| (0..d).filter(|&b| gv[b * rn + j] != 0).map(|b| (b, gv[b * rn + j])).collect())
        .collect();
    for i in 0..rm {
        let fi: Vec<(usize, Elem)> = (0..d)
            .filter(|&x| fv[x * rm + i] != 0)
            .map(|x| (x, fv[x * rm + i]))
            .collect();
        if fi.is_empty() {
            continue;
        }
        for (j, gj) in g_cols.iter().enumerate() {
            let col = i * rn + j;
            for &(x, cx_) in &fi {
                for &(y, cy) in gj {
                    let s = fl.mul(cx_, cy);
                    for &(k, c) in a.basis_product(x, y) {
                        out[k * total + col] = fl.mul_add(out[k * total + col], s, c);
                    }
                }
            }
        }
    }
    Ok(Cochain::from_data(cx, deg, out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupPower {
    pub cochain: Cochain,
    /// Set when `p` is odd and the degree is odd: the power vanishes on
    /// classes and `cochain` is zero.
    pub odd_degree_odd_p: bool,
}

pub fn cup_power(cx: &BarComplex, f: &Cochain, n: u32) -> Result<CupPower> {
    let p = cx.field().p() as usize;
    let deg = f.degree * p.pow(n);
    cx.check_vector(deg)?;
    if p != 2 && f.degree % 2 == 1 && n > 0 {
        return Ok(CupPower {
            cochain: Cochain::zero(cx, deg),
            odd_degree_odd_p: true,
        });
    }
    let mut g = f.clone();
    for _ in 0..n {
        let mut h = g.clone();
        for _ in 1..p {
            h = cup(cx, &h, &g)?;
        }
        g = h;
    }
    Ok(CupPower {
        cochain: g,
        odd_degree_odd_p: false,
    })
}
