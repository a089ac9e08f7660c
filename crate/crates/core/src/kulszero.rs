//! Degree-zero Külshammer theory: the spaces `T_n(A)`, `P_n(ZA)`, their
//! orthogonals, and the semilinear maps `ζ_n` on `Z(A)` and `κ_n` on `A/KA`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exact::{semilinear_solve, Echelon, Elem, Mat, SemilinearOperator, Subspace};

/// `A/KA` coordinates and the induced pairing with `Z(A)`.
#[derive(Clone, Debug)]
pub struct QuotientKA {
    pub ka: Subspace,
    pub center: Subspace,
    /// Non-pivot columns of `KA`; the classes of these basis vectors form the
    /// basis of `A/KA`.
    pub complement: Vec<usize>,
    /// `gram0[i][j] = (z_i, b_{complement[j]})`.
    pub gram0: Mat,
    ka_echelon: Echelon,
}

impl QuotientKA {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Coordinates in `A/KA` of the class of `x`.
    pub fn project(&self, x: &[Elem]) -> Vec<Elem> {
        let mut v = x.to_vec();
        self.ka_echelon.reduce(&mut v);
        self.complement.iter().map(|&c| v[c]).collect()
    }

    /// The representative in `A` of a coordinate vector.
    pub fn lift(&self, coords: &[Elem], dim: usize) -> Vec<Elem> {
        let mut v = vec![0; dim];
        for (&c, &x) in self.complement.iter().zip(coords) {
            v[c] = x;
        }
        v
    }

    /// Image in `A/KA` of a subspace of `A`.
    pub fn project_subspace(&self, u: &Subspace) -> Subspace {
        let f = u.field();
        Subspace::span(f, self.dim(), u.basis_vectors().iter().map(|v| self.project(v)))
    }

    /// Orthogonal in `A/KA` of a subspace of `Z(A)` (given in `A` coordinates).
    pub fn perp_of_central(&self, a: &Algebra, u: &Subspace) -> Result<Subspace> {
        let f = a.field();
        let g = a.require_form()?;
        let rows = u
            .basis_vectors()
            .iter()
            .map(|z| {
                let zg = g.transpose().mul_vec(z)?;
                Ok(self.complement.iter().map(|&c| zg[c]).collect())
            })
            .collect::<Result<Vec<Vec<Elem>>>>()?;
        Ok(crate::exact::kernel(&Mat::from_rows(f, self.dim(), &rows)))
    }
}

pub fn quotient_mod_ka(a: &Algebra) -> Result<QuotientKA> {
    let g = a.require_form()?;
    let ka = a.commutator_space();
    let center = a.center();
    let ka_echelon = Echelon::from_dense_rows(a.field(), a.dim(), ka.basis_vectors().into_iter());
    let complement = ka_echelon.free_columns();
    let zs = center.basis_vectors();
    let mut gram0 = Mat::zeros(a.field(), zs.len(), complement.len());
    for (i, z) in zs.iter().enumerate() {
        let zg = g.transpose().mul_vec(z)?;
        for (j, &c) in complement.iter().enumerate() {
            gram0.set(i, j, zg[c]);
        }
    }
    if gram0.rows() != gram0.cols() || !gram0.is_invertible() {
        return Err(Error::DegeneratePairing);
    }
    Ok(QuotientKA {
        ka,
        center,
        complement,
        gram0,
        ka_echelon,
    })
}

/// Matrix (columns `b_i^{p^n}` in `A/KA` coordinates) of the `Fr^n`-semilinear
/// map `x ↦ x^{p^n} mod KA`.
fn power_map_mod_ka(a: &Algebra, q: &QuotientKA, n: u32) -> Result<SemilinearOperator> {
    let d = a.dim();
    let cols: Vec<Vec<Elem>> = (0..d)
        .map(|i| q.project(&a.p_power(&a.basis_vector(i), n)))
        .collect();
    check_additivity(a, q, n)?;
    Ok(SemilinearOperator::new(
        Mat::from_rows(a.field(), q.dim(), &cols).transpose(),
        n as i64,
    ))
}

/// Guard for the classical fact that `(a+b)^{p^n} − a^{p^n} − b^{p^n} ∈ KA`.
fn check_additivity(a: &Algebra, q: &QuotientKA, n: u32) -> Result<()> {
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b61_7070 ^ n as u64);
    for _ in 0..8 {
        let x: Vec<Elem> = (0..a.dim()).map(|_| f.random(&mut rng)).collect();
        let y: Vec<Elem> = (0..a.dim()).map(|_| f.random(&mut rng)).collect();
        let lhs = a.p_power(&a.add(&x, &y), n);
        let rhs = a.add(&a.p_power(&x, n), &a.p_power(&y, n));
        if q.project(&a.sub(&lhs, &rhs)).iter().any(|&c| c != 0) {
            return Err(Error::InvariantViolation(format!(
                "p^{n}-power is not additive modulo KA"
            )));
        }
    }
    Ok(())
}

/// `T_n(A) = {x : x^{p^n} ∈ KA}`; `T_0 = KA`.
pub fn t_n_space(a: &Algebra, n: u32) -> Result<Subspace> {
    if n == 0 {
        return Ok(a.commutator_space());
    }
    let q = quotient_mod_ka_unchecked(a);
    Ok(power_map_mod_ka(a, &q, n)?.kernel())
}

/// `KA` coordinates without requiring a form.
fn quotient_mod_ka_unchecked(a: &Algebra) -> QuotientKA {
    let ka = a.commutator_space();
    let ka_echelon = Echelon::from_dense_rows(a.field(), a.dim(), ka.basis_vectors().into_iter());
    let complement = ka_echelon.free_columns();
    QuotientKA {
        ka,
        center: a.center(),
        gram0: Mat::zeros(a.field(), 0, 0),
        complement,
        ka_echelon,
    }
}

/// `P_n(ZA) = span{z^{p^n} : z ∈ Z(A)}`, in `A` coordinates.
pub fn p_n_space(a: &Algebra, n: u32) -> Subspace {
    let z = a.center();
    Subspace::span(
        a.field(),
        a.dim(),
        z.basis_vectors().iter().map(|v| a.p_power(v, n)),
    )
}

/// `T_n(ZA) = {z ∈ Z(A) : z^{p^n} = 0}`, in `A` coordinates.
pub fn t_n_center(a: &Algebra, n: u32) -> Subspace {
    let z = a.center();
    let zs = z.basis_vectors();
    let cols: Vec<Vec<Elem>> = zs.iter().map(|v| a.p_power(v, n)).collect();
    let m = Mat::from_rows(a.field(), a.dim(), &cols).transpose();
    let ker = SemilinearOperator::new(m, n as i64).kernel();
    Subspace::span(
        a.field(),
        a.dim(),
        ker.basis_vectors().iter().map(|c| combine(a, &zs, c)),
    )
}

fn combine(a: &Algebra, basis: &[Vec<Elem>], coords: &[Elem]) -> Vec<Elem> {
    let f = a.field();
    let mut v = vec![0; a.dim()];
    for (b, &c) in basis.iter().zip(coords) {
        if c != 0 {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.mul_add(*x, c, y);
            }
        }
    }
    v
}

/// `ζ_n` on `Z(A)` in the coordinates of the RREF center basis; twist `−n`.
pub fn zeta_n(a: &Algebra, n: u32) -> Result<SemilinearOperator> {
    let g = a.require_form()?;
    let f = a.field();
    let z = a.center();
    let zs = z.basis_vectors();
    if n == 0 {
        return Ok(SemilinearOperator::identity(f, zs.len()));
    }
    let powers: Vec<Vec<Elem>> = (0..a.dim())
        .map(|j| a.p_power(&a.basis_vector(j), n))
        .collect();
    let mut cols = Vec::with_capacity(zs.len());
    for zi in &zs {
        let zg = g.transpose().mul_vec(zi)?;
        let rhs: Vec<Elem> = powers.iter().map(|pj| crate::exact::dot(f, &zg, pj)).collect();
        let w = semilinear_solve(g, &rhs, n as i64)?;
        let coords = z.coordinates(&w).ok_or_else(|| {
            Error::InvariantViolation(format!("zeta_{n} of a central element is not central"))
        })?;
        cols.push(coords);
    }
    Ok(SemilinearOperator::new(
        Mat::from_rows(f, zs.len(), &cols).transpose(),
        -(n as i64),
    ))
}

/// `κ_n` on `A/KA` in the coordinates of [`QuotientKA`]; twist `−n`.
pub fn kappa_n(a: &Algebra, n: u32) -> Result<SemilinearOperator> {
    let q = quotient_mod_ka(a)?;
    kappa_n_with(a, &q, n)
}

pub fn kappa_n_with(a: &Algebra, q: &QuotientKA, n: u32) -> Result<SemilinearOperator> {
    let g = a.require_form()?;
    let f = a.field();
    let h = q.dim();
    if n == 0 {
        return Ok(SemilinearOperator::identity(f, h));
    }
    let zp: Vec<Vec<Elem>> = q
        .center
        .basis_vectors()
        .iter()
        .map(|z| g.transpose().mul_vec(&a.p_power(z, n)))
        .collect::<Result<_>>()?;
    for k in q.ka.basis_vectors() {
        if zp.iter().any(|zg| crate::exact::dot(f, zg, &k) != 0) {
            return Err(Error::InvariantViolation(format!(
                "kappa_{n} does not vanish on KA"
            )));
        }
    }
    let gt = q.gram0.transpose();
    let mut cols = Vec::with_capacity(h);
    for &c in &q.complement {
        let rhs: Vec<Elem> = zp.iter().map(|zg| zg[c]).collect();
        cols.push(semilinear_solve(&gt, &rhs, n as i64)?);
    }
    Ok(SemilinearOperator::new(
        Mat::from_rows(f, h, &cols).transpose(),
        -(n as i64),
    ))
}

/// Image of `ζ_n` as a subspace of `A`.
pub fn zeta_image(a: &Algebra, n: u32) -> Result<Subspace> {
    let zs = a.center().basis_vectors();
    let op = zeta_n(a, n)?;
    let img = op.image();
    Ok(Subspace::span(
        a.field(),
        a.dim(),
        img.basis_vectors().iter().map(|c| combine(a, &zs, c)),
    ))
}

/// Everything at level `n`.
#[derive(Clone, Debug)]
pub struct KulshammerReport {
    pub n: u32,
    pub t_n: Subspace,
    pub t_n_perp: Subspace,
    pub p_n: Subspace,
    pub p_n_perp_mod_ka: Subspace,
    pub t_n_center_perp_mod_ka: Subspace,
    pub zeta_n: SemilinearOperator,
    pub zeta_image: Subspace,
    pub kappa_n: SemilinearOperator,
}

pub fn report(a: &Algebra, n: u32) -> Result<KulshammerReport> {
    let g = a.require_form()?;
    let q = quotient_mod_ka(a)?;
    let t_n = t_n_space(a, n)?;
    let t_n_perp = crate::exact::orthogonal_complement(g, &t_n)?;
    let p_n = p_n_space(a, n);
    Ok(KulshammerReport {
        n,
        p_n_perp_mod_ka: q.perp_of_central(a, &p_n)?,
        t_n_center_perp_mod_ka: q.perp_of_central(a, &t_n_center(a, n))?,
        zeta_n: zeta_n(a, n)?,
        zeta_image: zeta_image(a, n)?,
        kappa_n: kappa_n_with(a, &q, n)?,
        t_n,
        t_n_perp,
        p_n,
    })
}

/// One row of the ideal chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLevel {
    pub n: u32,
    pub dim_t_perp: usize,
    pub dim_im_zeta: usize,
    pub dim_im_kappa: usize,
    pub dim_ker_kappa: usize,
}

pub fn ideal_chain(a: &Algebra, n_max: u32) -> Result<Vec<ChainLevel>> {
    let g = a.require_form()?;
    let q = quotient_mod_ka(a)?;
    let mut out: Vec<ChainLevel> = Vec::new();
    let mut prev: Option<Subspace> = None;
    for n in 1..=n_max {
        let perp = crate::exact::orthogonal_complement(g, &t_n_space(a, n)?)?;
        let im = zeta_image(a, n)?;
        if im != perp {
            return Err(Error::InvariantViolation(format!(
                "im zeta_{n} differs from T_{n}(A)^perp"
            )));
        }
        if let Some(p) = &prev {
            if !perp.is_subspace_of(p) {
                return Err(Error::InvariantViolation(format!(
                    "T_{n}(A)^perp is not contained in the previous level"
                )));
            }
        }
        let kappa = kappa_n_with(a, &q, n)?;
        let rank = kappa.rank();
        out.push(ChainLevel {
            n,
            dim_t_perp: perp.dim(),
            dim_im_zeta: im.dim(),
            dim_im_kappa: rank,
            dim_ker_kappa: q.dim() - rank,
        });
        prev = Some(perp);
    }
    Ok(out)
}

/// Smallest `n ≥ 1` with `im ζ_n = im ζ_{n+1}`.
pub fn stabilization_index(a: &Algebra) -> Result<u32> {
    let mut prev = zeta_image(a, 1)?;
    for n in 1..=(a.dim() as u32 + 1) {
        let next = zeta_image(a, n + 1)?;
        if next == prev {
            return Ok(n);
        }
        prev = next;
    }
    Err(Error::InvariantViolation(
        "image chain of zeta did not stabilise within dim A steps".into(),
    ))
}
