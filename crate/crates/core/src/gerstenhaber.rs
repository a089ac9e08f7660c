//! Coderivations of the tensor coalgebra `⊕_r A^{⊗r}`, the Gerstenhaber
//! bracket and the `p`-power operation `σ_p(f) = τ∘D_f^p`.
//!
//! A cochain `f` of arity `m` determines the coderivation
//! `D_f = Σ_i (−1)^{(m−1)i} id^{⊗i} ⊗ f ⊗ id^{⊗(r−m−i)}` on `A^{⊗r}`, which
//! shortens tensors by `m − 1`. Tensors of length `r` are indexed row-major,
//! so the comultiplication component splitting off the first `j` factors is
//! the identity on indices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exact::{Elem, Field, Mat, SparseMat, Subspace};
use crate::hochschild::{Cochain, Hochschild, Model, Options, DEFAULT_SIZE_CAP};

/// `τ∘[D_f, d_A] = DA_SIGN · δf` for every cochain `f`.
pub const DA_SIGN: i64 = -1;

/// The components `A^{⊗r}`, `0 ≤ r ≤ max_len`, of the tensor coalgebra.
#[derive(Clone, Debug)]
pub struct TruncatedCoalgebra {
    field: Field,
    d: usize,
    max_len: usize,
    cap: u64,
}

impl TruncatedCoalgebra {
    pub fn new(a: &Algebra, max_len: usize, cap: u64) -> Result<Self> {
        let c = TruncatedCoalgebra {
            field: a.field().clone(),
            d: a.dim(),
            max_len,
            cap,
        };
        c.component_dim(max_len)?;
        Ok(c)
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn component_dim(&self, r: usize) -> Result<usize> {
        match (self.d as u64).checked_pow(r as u32) {
            Some(n) if n <= self.cap => Ok(n as usize),
            other => Err(Error::SizeCapExceeded {
                entries: other.map_or(u128::MAX, |n| n as u128),
                cap: self.cap,
            }),
        }
    }

    /// `Δ(e_T)` component in `A^{⊗j} ⊗ A^{⊗(r−j)}` as a pair of indices.
    pub fn split(&self, r: usize, t: usize, j: usize) -> (usize, usize) {
        let right = self.d.pow((r - j) as u32);
        (t / right, t % right)
    }
}

/// A graded map of the truncated coalgebra lowering tensor length by
/// `degree`, stored per source length.
#[derive(Clone, Debug)]
pub struct Coderivation {
    field: Field,
    d: usize,
    max_len: usize,
    pub degree: i64,
    comps: Vec<Option<SparseMat>>,
}

/// A basis tensor on which the coderivation law fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoderivationWitness {
    pub length: usize,
    pub index: usize,
    pub split: usize,
}

fn sign(f: &Field, odd: bool, c: Elem) -> Elem {
    if odd {
        f.neg(c)
    } else {
        c
    }
}

impl Coderivation {
    fn target(&self, r: usize) -> Option<usize> {
        let t = r as i64 - self.degree;
        (0..=self.max_len as i64).contains(&t).then_some(t as usize)
    }

    /// The coderivation `D_f` of an arity-`m` cochain (full bar model).
    pub fn from_cochain(coalg: &TruncatedCoalgebra, f: &Cochain) -> Result<Self> {
        let d = coalg.d;
        let fl = &coalg.field;
        let m = f.degree;
        if f.values.rows() != d || f.values.cols() != coalg.component_dim(m)? {
            return Err(Error::DimensionMismatch(
                "coderivations need cochains of the full bar model".into(),
            ));
        }
        let mut out = Coderivation {
            field: fl.clone(),
            d,
            max_len: coalg.max_len,
            degree: m as i64 - 1,
            comps: Vec::new(),
        };
        let fcols: Vec<Vec<(usize, Elem)>> = (0..f.values.cols())
            .map(|j| {
                (0..d)
                    .filter_map(|k| {
                        let c = f.values.get(k, j);
                        (c != 0).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        for r in 0..=coalg.max_len {
            let Some(tgt) = out.target(r) else {
                out.comps.push(None);
                continue;
            };
            let n = coalg.component_dim(r)?;
            let mut cols = Vec::with_capacity(n);
            for t in 0..n {
                let mut col = Vec::new();
                if r >= m {
                    for i in 0..=(r - m) {
                        let tail = d.pow((r - i - m) as u32);
                        let prefix = t / (tail * d.pow(m as u32));
                        let mid = (t / tail) % d.pow(m as u32);
                        let suffix = t % tail;
                        let odd = m % 2 == 0 && i % 2 == 1;
                        for &(k, c) in &fcols[mid] {
                            col.push(((prefix * d + k) * tail + suffix, sign(fl, odd, c)));
                        }
                    }
                }
                cols.push(col);
            }
            out.comps
                .push(Some(SparseMat::from_columns(fl, coalg.component_dim(tgt)?, cols)));
        }
        Ok(out)
    }

    pub fn component(&self, r: usize) -> Option<&SparseMat> {
        self.comps.get(r).and_then(|c| c.as_ref())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(|c| c.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Coderivation) -> Coderivation {
        let degree = self.degree + other.degree;
        let comps = (0..=self.max_len)
            .map(|r| {
                let inner = other.component(r)?;
                let mid = other.target(r)?;
                let outer = self.component(mid)?;
                Some(outer.mul(inner))
            })
            .collect();
        Coderivation {
            field: self.field.clone(),
            d: self.d,
            max_len: self.max_len,
            degree,
            comps,
        }
    }

    /// `self + c·other`; components missing from either side are dropped.
    pub fn add_scaled(&self, other: &Coderivation, c: Elem) -> Result<Coderivation> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add coderivations of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.add_scaled(b, c)),
                _ => None,
            })
            .collect();
        Ok(Coderivation {
            comps,
            ..self.clone()
        })
    }

    /// The graded commutator `[self, other]`.
    pub fn commutator(&self, other: &Coderivation) -> Result<Coderivation> {
        let odd = (self.degree * other.degree).rem_euclid(2) == 1;
        let c = if odd { 1 } else { self.field.neg(1) };
        self.compose(other).add_scaled(&other.compose(self), c)
    }

    /// `self^k`.
    pub fn power(&self, k: usize) -> Coderivation {
        let mut out = self.clone();
        for _ in 1..k {
            out = out.compose(self);
        }
        out
    }

    /// `τ∘D`: the component landing in tensor length 1, as a cochain.
    pub fn tau(&self) -> Option<Cochain> {
        let r = usize::try_from(self.degree + 1).ok()?;
        let m = self.component(r)?;
        Some(Cochain {
            degree: r,
            values: m.to_dense(),
        })
    }

    /// Checks `Δ∘D = (id ⊗ D + D ⊗ id)∘Δ` on every retained component.
    pub fn is_coderivation(&self) -> std::result::Result<(), CoderivationWitness> {
        let fl = &self.field;
        let d = self.d;
        let t = self.degree;
        let transposed: Vec<Option<SparseMat>> =
            self.comps.iter().map(|c| c.as_ref().map(|m| m.transpose())).collect();
        let column = |len: usize, idx: usize| -> Option<Vec<(usize, Elem)>> {
            transposed.get(len)?.as_ref().map(|m| m.row_entries(idx))
        };
        for (r, comp) in transposed.iter().enumerate() {
            let Some(comp) = comp else { continue };
            let s = (r as i64 - t) as usize;
            for idx in 0..comp.rows() {
                let mut lhs = vec![0; d.pow(s as u32)];
                for (i, c) in comp.row(idx) {
                    lhs[i] = c;
                }
                for j in 0..=s {
                    let mut rhs = vec![0; lhs.len()];
                    // (−1)^{t j} e_{T[..j]} ⊗ D(e_{T[j..]})
                    let right_len = r.checked_sub(j);
                    let col = right_len.and_then(|len| column(len, idx % d.pow(len as u32)));
                    if let (Some(len), Some(col)) = (right_len, col) {
                        let left = idx / d.pow(len as u32);
                        let out_right = d.pow((s - j) as u32);
                        let odd = (t * j as i64).rem_euclid(2) == 1;
                        for (i, c) in col {
                            let k = left * out_right + i;
                            rhs[k] = fl.add(rhs[k], sign(fl, odd, c));
                        }
                    }
                    // D(e_{T[..j+t]}) ⊗ e_{T[j+t..]}
                    let left_len = j as i64 + t;
                    if left_len >= 0 && left_len as usize <= r {
                        let left_len = left_len as usize;
                        let tail = d.pow((r - left_len) as u32);
                        let (left, right) = (idx / tail, idx % tail);
                        if let Some(col) = column(left_len, left) {
                            for (i, c) in col {
                                let k = i * tail + right;
                                rhs[k] = fl.add(rhs[k], c);
                            }
                        }
                    }
                    if lhs != rhs {
                        return Err(CoderivationWitness {
                            length: r,
                            index: idx,
                            split: j,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Gerstenhaber structure of `HH^*(A, A)` computed in the full bar model.
#[derive(Debug)]
pub struct Gerstenhaber {
    hh: Hochschild,
    cap: u64,
}

/// Outcome of one axiom family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomTally {
    pub checked: usize,
    pub failed: usize,
}

impl AxiomTally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim: usize,
    pub ad_power: AxiomTally,
    pub homogeneity: AxiomTally,
    pub additivity: AxiomTally,
    pub stability: AxiomTally,
    pub skipped_cap: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedReport {
    pub p: u32,
    pub degrees: Vec<DegreeReport>,
}

impl RestrictedReport {
    pub fn all_pass(&self) -> bool {
        self.degrees.iter().all(|d| {
            d.ad_power.passed() && d.homogeneity.passed() && d.additivity.passed() && d.stability.passed()
        })
    }
}

/// Per-degree entries of the invariant signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaBlock {
    pub degree: usize,
    pub dim: usize,
    /// `dim(span σ_p(HH^k) + W) − dim W`, `W` the span of `p`-fold brackets.
    pub sigma_rank: usize,
}

impl Gerstenhaber {
    pub fn new(a: &Algebra) -> Self {
        Gerstenhaber::with_cap(a, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(a: &Algebra, cap: u64) -> Self {
        Gerstenhaber {
            hh: Hochschild::with_options(
                a,
                Options {
                    model: Model::Full,
                    cap,
                    ..Options::default()
                },
            ),
            cap,
        }
    }

    pub fn hochschild(&self) -> &Hochschild {
        &self.hh
    }

    pub fn algebra(&self) -> &Algebra {
        self.hh.algebra()
    }

    pub fn field(&self) -> &Field {
        self.hh.field()
    }

    pub fn p(&self) -> u32 {
        self.field().p()
    }

    pub fn coalgebra(&self, max_len: usize) -> Result<TruncatedCoalgebra> {
        TruncatedCoalgebra::new(self.algebra(), max_len, self.cap)
    }

    pub fn coderivation(&self, f: &Cochain, max_len: usize) -> Result<Coderivation> {
        Coderivation::from_cochain(&self.coalgebra(max_len)?, f)
    }

    pub fn multiplication(&self) -> Cochain {
        self.hh.complex().multiplication_cochain()
    }

    /// `d_A = D_{m_A}`, checked to square to zero.
    pub fn d_a(&self, max_len: usize) -> Result<Coderivation> {
        let d = self.coderivation(&self.multiplication(), max_len)?;
        if !d.compose(&d).is_zero() {
            return Err(Error::InvariantViolation("d_A does not square to zero".into()));
        }
        Ok(d)
    }

    /// `[f, g] = τ∘(D_f D_g − (−1)^{(|f|−1)(|g|−1)} D_g D_f)`.
    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        if f.degree + g.degree == 0 {
            return Err(Error::DegreeMismatch("bracket of two arity-0 cochains".into()));
        }
        let l = (f.degree + g.degree - 1).max(f.degree).max(g.degree);
        let coalg = self.coalgebra(l)?;
        let df = Coderivation::from_cochain(&coalg, f)?;
        let dg = Coderivation::from_cochain(&coalg, g)?;
        Ok(df.commutator(&dg)?.tau().expect("bracket component is retained"))
    }

    fn check_regime(&self, arity: usize) -> Result<()> {
        let p = self.p();
        if arity == 0 || (p != 2 && arity % 2 == 0) {
            return Err(Error::ParityViolation(format!(
                "the {p}-power operation is not defined in degree {arity}"
            )));
        }
        Ok(())
    }

    /// `σ_p(f) = τ∘D_f^p`.
    pub fn sigma_p(&self, f: &Cochain) -> Result<Cochain> {
        self.check_regime(f.degree)?;
        let p = self.p() as usize;
        let l = p * (f.degree - 1) + 1;
        let d = self.coderivation(f, l)?;
        Ok(d.power(p).tau().expect("power component is retained"))
    }

    /// `s_1(a, b), …, s_{p−1}(a, b)`, where `i·s_i` is the coefficient of
    /// `X^{i−1}` in `ad(aX + b)^{p−1}(a)`.
    pub fn jacobson_si(&self, a: &Cochain, b: &Cochain) -> Result<Vec<Cochain>> {
        let fl = self.field().clone();
        let p = self.p() as usize;
        let mut coeffs: Vec<Option<Cochain>> = vec![Some(a.clone())];
        for _ in 1..p {
            let mut next: Vec<Option<Cochain>> = vec![None; coeffs.len() + 1];
            for (e, c) in coeffs.iter().enumerate() {
                let Some(c) = c else { continue };
                for (slot, x) in [(e + 1, a), (e, b)] {
                    let br = self.bracket(x, c)?;
                    next[slot] = Some(match next[slot].take() {
                        Some(acc) => acc.add(&br)?,
                        None => br,
                    });
                }
            }
            coeffs = next;
        }
        (1..p)
            .map(|i| {
                let c = coeffs[i - 1].clone().expect("every power of X occurs");
                Ok(c.scale(fl.inv(fl.from_int(i as i64)).expect("0 < i < p")))
            })
            .collect()
    }

    fn class(&self, f: &Cochain) -> Result<Vec<Elem>> {
        if !self.hh.is_cocycle(f)? {
            return Err(Error::InvariantViolation(format!(
                "expected a cocycle of degree {}",
                f.degree
            )));
        }
        self.hh.cohomology_class(f)
    }

    fn combine(&self, k: usize, coords: &[Elem]) -> Result<Cochain> {
        let basis = self.hh.cohomology(k)?;
        Ok(Cochain::from_data(self.hh.complex(), k, basis.combine(coords)))
    }

    /// Span of the classes of left-normed `s`-fold brackets of `HH^k`
    /// classes, in the `HH^{s(k−1)+1}` class basis.
    pub fn bracket_span(&self, k: usize, s: usize) -> Result<Subspace> {
        let reps = self.hh.cocycle_reps(k)?;
        let mut layer: Vec<Cochain> = reps.clone();
        let mut deg = k;
        for _ in 1..s {
            deg += k - 1;
            let mut next = Vec::new();
            for x in &reps {
                for w in &layer {
                    next.push(self.bracket(x, w)?);
                }
            }
            let classes = next
                .iter()
                .map(|c| self.class(c))
                .collect::<Result<Vec<_>>>()?;
            let span = Subspace::span(self.field(), self.hh.cohomology(deg)?.dim(), &classes);
            layer = span
                .basis_vectors()
                .iter()
                .map(|v| self.combine(deg, v))
                .collect::<Result<Vec<_>>>()?;
        }
        let dim = self.hh.cohomology(deg)?.dim();
        let classes = layer
            .iter()
            .map(|c| self.class(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.field(), dim, &classes))
    }

    /// `dim [HH^1, HH^1]`.
    pub fn derived_dim(&self) -> Result<usize> {
        Ok(self.bracket_span(1, 2)?.dim())
    }

    pub fn sigma_block(&self, k: usize) -> Result<SigmaBlock> {
        self.check_regime(k)?;
        let p = self.p() as usize;
        let target = p * (k - 1) + 1;
        let reps = self.hh.cocycle_reps(k)?;
        let w = self.bracket_span(k, p)?;
        let sig = reps
            .iter()
            .map(|f| self.class(&self.sigma_p(f)?))
            .collect::<Result<Vec<_>>>()?;
        let s = Subspace::span(self.field(), self.hh.cohomology(target)?.dim(), &sig);
        Ok(SigmaBlock {
            degree: k,
            dim: reps.len(),
            sigma_rank: s.sum(&w)?.dim() - w.dim(),
        })
    }

    /// The restricted Lie algebra axioms on `HH^k` classes for each `k` in
    /// `degrees`, plus stability of `σ_p` under `D ↦ D + [d_A, D_E]`.
    pub fn restricted_axioms_check(&self, degrees: &[usize]) -> Result<RestrictedReport> {
        let fl = self.field().clone();
        let p = self.p() as usize;
        let mut report = RestrictedReport {
            p: self.p(),
            degrees: Vec::new(),
        };
        for &k in degrees {
            self.check_regime(k)?;
            let reps = self.hh.cocycle_reps(k)?;
            let mut rep = DegreeReport {
                degree: k,
                dim: reps.len(),
                ..DegreeReport::default()
            };
            let mut rng = ChaCha8Rng::seed_from_u64(0x6765_7273 ^ k as u64);
            let sig: Vec<Cochain> = reps.iter().map(|f| self.sigma_p(f)).collect::<Result<_>>()?;

            // ad(a^{[p]}) = (ad a)^p
            for (i, a) in reps.iter().enumerate() {
                for &j in degrees {
                    let others = match self.hh.cocycle_reps(j) {
                        Ok(o) => o,
                        Err(e) if e.is_cap() => {
                            rep.skipped_cap.push(format!("ad-power: HH^{j}"));
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    for (l, c) in others.iter().enumerate() {
                        let res = (|| -> Result<bool> {
                            let lhs = self.class(&self.bracket(&sig[i], c)?)?;
                            let mut rhs = c.clone();
                            for _ in 0..p {
                                rhs = self.bracket(a, &rhs)?;
                            }
                            Ok(lhs == self.class(&rhs)?)
                        })();
                        match res {
                            Ok(ok) => rep.ad_power.record(ok),
                            Err(e) if e.is_cap() => {
                                rep.skipped_cap.push(format!("ad-power: a_{i} on HH^{j} class {l}"))
                            }
                            Err(e) => return Err(e),
                        }
                    }
                }
            }

            // (αa)^{[p]} = α^p a^{[p]}
            for _ in 0..20 {
                if reps.is_empty() {
                    break;
                }
                let coords: Vec<Elem> = (0..reps.len()).map(|_| fl.random(&mut rng)).collect();
                let alpha = fl.random(&mut rng);
                let a = self.combine(k, &coords)?;
                let lhs = self.class(&self.sigma_p(&a.scale(alpha))?)?;
                let ap = fl.pow(alpha, p as u64);
                let rhs: Vec<Elem> = self
                    .class(&self.sigma_p(&a)?)?
                    .into_iter()
                    .map(|x| fl.mul(ap, x))
                    .collect();
                rep.homogeneity.record(lhs == rhs);
            }

            // (a + b)^{[p]} = a^{[p]} + b^{[p]} + Σ s_i(a, b)
            let mut pairs: Vec<(Cochain, Cochain)> = Vec::new();
            for i in 0..reps.len() {
                for j in i..reps.len() {
                    pairs.push((reps[i].clone(), reps[j].clone()));
                }
            }
            for _ in 0..5.min(reps.len() * reps.len()) {
                let ca: Vec<Elem> = (0..reps.len()).map(|_| fl.random(&mut rng)).collect();
                let cb: Vec<Elem> = (0..reps.len()).map(|_| fl.random(&mut rng)).collect();
                pairs.push((self.combine(k, &ca)?, self.combine(k, &cb)?));
            }
            for (a, b) in &pairs {
                let lhs = self.class(&self.sigma_p(&a.add(b)?)?)?;
                let mut rhs = self.sigma_p(a)?.add(&self.sigma_p(b)?)?;
                for s in self.jacobson_si(a, b)? {
                    rhs = rhs.add(&s)?;
                }
                rep.additivity.record(lhs == self.class(&rhs)?);
            }

            // σ_p(D_f + [d_A, D_E]) has the class of σ_p(f)
            if !reps.is_empty() {
                let l = p * (k - 1) + 1;
                let coalg = self.coalgebra(l + 1)?;
                let da = self.d_a(l + 1)?;
                let cols = coalg.component_dim(k - 1)?;
                for _ in 0..10 {
                    let coords: Vec<Elem> = (0..reps.len()).map(|_| fl.random(&mut rng)).collect();
                    let f = self.combine(k, &coords)?;
                    let e = Cochain {
                        degree: k - 1,
                        values: Mat::from_data(
                            &fl,
                            coalg.d,
                            cols,
                            (0..coalg.d * cols).map(|_| fl.random(&mut rng)).collect(),
                        ),
                    };
                    let de = Coderivation::from_cochain(&coalg, &e)?;
                    let moved = Coderivation::from_cochain(&coalg, &f)?.add_scaled(&da.commutator(&de)?, 1)?;
                    let tau = moved.power(p).tau().expect("power component is retained");
                    rep.stability.record(self.class(&tau)? == self.class(&self.sigma_p(&f)?)?);
                }
            }
            report.degrees.push(rep);
        }
        Ok(report)
    }
}

/// Gerstenhaber degrees carrying a restricted structure and recorded in
/// signatures: `1, 2` for `p = 2` and `1` for odd `p`.
pub fn signature_degrees(p: u32) -> &'static [usize] {
    if p == 2 {
        &[1, 2]
    } else {
        &[1]
    }
}
