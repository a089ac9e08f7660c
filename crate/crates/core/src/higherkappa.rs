//! The maps `κ_n^{(m)} : HH_{p^n m} → HH_m`, adjoint to the `p^n`-th cup
//! power `HH^m → HH^{p^n m}` under the pairings of degrees `m` and `p^n m`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    orthogonal_complement, semilinear_solve, Elem, Field, Mat, SemilinearOperator, Subspace,
};
use crate::hochschild::{ChainVector, Cochain, Hochschild};

#[derive(Clone, Debug)]
pub struct HigherKappa {
    pub m: usize,
    pub n: u32,
    /// From `HH_{p^n m}` class coordinates to `HH_m` class coordinates.
    pub operator: SemilinearOperator,
    pub odd_degree_odd_p: bool,
}

impl HigherKappa {
    pub fn target_degree(&self) -> usize {
        self.m
    }

    pub fn source_degree(&self, p: u32) -> usize {
        self.m * (p as usize).pow(self.n)
    }
}

/// The `p^n`-th cup power on `HH^m` as a semilinear operator (twist `n`)
/// from `HH^m` to `HH^{p^n m}` class coordinates.
#[derive(Clone, Debug)]
pub struct PowerMap {
    pub m: usize,
    pub n: u32,
    pub operator: SemilinearOperator,
    pub odd_degree_odd_p: bool,
    /// `f_a^{p^n}` for each `HH^m` representative `f_a`.
    pub powers: Vec<Cochain>,
}

fn degree_of(f: &Field, m: usize, n: u32) -> usize {
    m * (f.p() as usize).pow(n)
}

pub fn power_map(h: &Hochschild, m: usize, n: u32) -> Result<PowerMap> {
    let f = h.field().clone();
    let big = degree_of(&f, m, n);
    let coh_m = h.cohomology(m)?;
    let coh_big = h.cohomology(big)?;
    let mut matrix = Mat::zeros(&f, coh_big.dim(), coh_m.dim());
    let mut powers = Vec::with_capacity(coh_m.dim());
    let mut flag = false;
    for (a, rep) in h.cocycle_reps(m)?.iter().enumerate() {
        let pw = h.cup_power(rep, n)?;
        flag |= pw.odd_degree_odd_p;
        if !pw.odd_degree_odd_p {
            if !h.is_cocycle(&pw.cochain)? {
                return Err(Error::InvariantViolation(format!(
                    "cup power of HH^{m} representative {a} is not a cocycle"
                )));
            }
            for (i, c) in coh_big.class_coords(pw.cochain.data()).into_iter().enumerate() {
                matrix.set(i, a, c);
            }
        }
        powers.push(pw.cochain);
    }
    let odd = f.p() != 2 && m % 2 == 1 && n > 0;
    Ok(PowerMap {
        m,
        n,
        operator: SemilinearOperator::new(matrix, n as i64),
        odd_degree_odd_p: odd || flag,
        powers,
    })
}

/// `T_n^{(m)}`: the classes in `HH^m` whose `p^n`-th cup power vanishes.
pub fn t_nm_space(h: &Hochschild, m: usize, n: u32) -> Result<Subspace> {
    Ok(power_map(h, m, n)?.operator.kernel())
}

pub fn kappa_nm(h: &Hochschild, m: usize, n: u32) -> Result<HigherKappa> {
    let pm = power_map(h, m, n)?;
    kappa_from_powers(h, &pm)
}

fn kappa_from_powers(h: &Hochschild, pm: &PowerMap) -> Result<HigherKappa> {
    let f = h.field().clone();
    let (m, n) = (pm.m, pm.n);
    let big = degree_of(&f, m, n);
    let gram = h.pairing_gram(m)?;
    let dim_m = gram.rows();
    let hom_big = h.homology(big)?;
    h.pairing_gram(big)?;
    let mut matrix = Mat::zeros(&f, dim_m, hom_big.dim());
    if !pm.odd_degree_odd_p {
        let gt = gram.transpose();
        for (j, y) in hom_big.cycle_reps().iter().enumerate() {
            let rhs = pm
                .powers
                .iter()
                .map(|pw| h.pairing(pw, y))
                .collect::<Result<Vec<Elem>>>()?;
            let w = semilinear_solve(&gt, &rhs, n as i64)?;
            for (i, c) in w.into_iter().enumerate() {
                matrix.set(i, j, c);
            }
        }
    }
    Ok(HigherKappa {
        m,
        n,
        operator: SemilinearOperator::new(matrix, -(n as i64)),
        odd_degree_odd_p: pm.odd_degree_odd_p,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub m: usize,
    pub n: u32,
    pub l: u32,
    pub odd_degree_odd_p: bool,
    pub defining_relation: bool,
    pub semilinear: bool,
    pub composition: bool,
    pub image: bool,
    pub kernel: bool,
    pub dimension: bool,
    pub dim_hh: usize,
    pub dim_t: usize,
    pub dim_image: usize,
    pub dim_kernel: usize,
    pub witnesses: Vec<String>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.defining_relation
            && self.semilinear
            && self.composition
            && self.image
            && self.kernel
            && self.dimension
    }
}

/// Checks the defining relation on full bases and, for `κ = κ_n^{(m)}`:
/// semilinearity, `κ_{n+l}^{(m)} = κ_l^{(m)} ∘ κ_n^{(p^l m)}`,
/// `im κ = (T_n^{(m)})^⊥`, `ker κ = {x^{p^n}}^⊥` and
/// `dim im κ = dim HH^m − dim T_n^{(m)}`.
pub fn verify_properties(h: &Hochschild, m: usize, n: u32, l: u32) -> Result<PropertyReport> {
    let f = h.field().clone();
    let big = degree_of(&f, m, n);
    let pm = power_map(h, m, n)?;
    let kappa = kappa_from_powers(h, &pm)?;
    let gram_m = h.pairing_gram(m)?;
    let gram_big = h.pairing_gram(big)?;
    let t = pm.operator.kernel();
    let im = kappa.operator.image();
    let ker = kappa.operator.kernel();
    let mut rep = PropertyReport {
        m,
        n,
        l,
        odd_degree_odd_p: kappa.odd_degree_odd_p,
        dim_hh: gram_m.rows(),
        dim_t: t.dim(),
        dim_image: im.dim(),
        dim_kernel: ker.dim(),
        ..PropertyReport::default()
    };

    // defining relation (f^{p^n}, y)_{p^n m} = (f, κ(y))_m^{p^n}
    let hom_m = h.homology(m)?;
    let hom_big = h.homology(big)?;
    let reps_m = h.cocycle_reps(m)?;
    let mut ok = true;
    for (j, y) in hom_big.cycle_reps().iter().enumerate() {
        let mut e = vec![0; hom_big.dim()];
        e[j] = 1;
        let ky = ChainVector::new(m, hom_m.combine(&kappa.operator.apply(&e)?));
        for (a, fa) in reps_m.iter().enumerate() {
            let lhs = h.pairing(&pm.powers[a], y)?;
            let rhs = f.frobenius(h.pairing(fa, &ky)?, n as i64);
            if lhs != rhs {
                ok = false;
                rep.witnesses
                    .push(format!("defining relation fails for f_{a}, y_{j}"));
            }
        }
    }
    rep.defining_relation = ok;

    // semilinearity against direct evaluation on combined cycles
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e11 ^ ((m as u64) << 8) ^ n as u64);
    rep.semilinear = true;
    for trial in 0..10 {
        let c: Vec<Elem> = (0..hom_big.dim()).map(|_| f.random(&mut rng)).collect();
        let lam = f.random(&mut rng);
        let y = ChainVector::new(big, hom_big.combine(&c));
        let direct = kappa_of_cycle(h, &pm, &gram_m, &y)?;
        let lc: Vec<Elem> = c.iter().map(|&x| f.mul(lam, x)).collect();
        let via_op = kappa.operator.apply(&lc)?;
        let expect: Vec<Elem> = direct
            .iter()
            .map(|&x| f.mul(f.frobenius(lam, -(n as i64)), x))
            .collect();
        if via_op != expect {
            rep.semilinear = false;
            rep.witnesses.push(format!("semilinearity fails in trial {trial}"));
            break;
        }
    }

    // composition
    let mid = degree_of(&f, m, l);
    let whole = kappa_nm(h, m, n + l)?;
    let outer = kappa_nm(h, m, l)?;
    let inner = kappa_nm(h, mid, n)?;
    let comp = outer.operator.compose(&inner.operator)?;
    rep.composition = comp.same_map(&whole.operator);
    if !rep.composition {
        rep.witnesses.push(format!(
            "kappa_{}^({m}) differs from kappa_{l}^({m}) o kappa_{n}^({mid})",
            n + l
        ));
    }

    let t_perp = orthogonal_complement(&gram_m, &t)?;
    rep.image = im == t_perp;
    if !rep.image {
        rep.witnesses.push(format!(
            "image has dim {} but T-perp has dim {}",
            im.dim(),
            t_perp.dim()
        ));
    }
    let powers = pm.operator.image();
    let p_perp = orthogonal_complement(&gram_big, &powers)?;
    rep.kernel = ker == p_perp;
    if !rep.kernel {
        rep.witnesses.push(format!(
            "kernel has dim {} but perp of powers has dim {}",
            ker.dim(),
            p_perp.dim()
        ));
    }
    rep.dimension = im.dim() + t.dim() == gram_m.rows();
    if !rep.dimension {
        rep.witnesses.push("dimension identity fails".into());
    }
    Ok(rep)
}

/// `κ_n^{(m)}(y)` in `HH_m` coordinates, computed directly from the pairing.
fn kappa_of_cycle(h: &Hochschild, pm: &PowerMap, gram_m: &Mat, y: &ChainVector) -> Result<Vec<Elem>> {
    if pm.odd_degree_odd_p {
        return Ok(vec![0; gram_m.rows()]);
    }
    let rhs = pm
        .powers
        .iter()
        .map(|pw| h.pairing(pw, y))
        .collect::<Result<Vec<Elem>>>()?;
    semilinear_solve(&gram_m.transpose(), &rhs, pm.n as i64)
}
