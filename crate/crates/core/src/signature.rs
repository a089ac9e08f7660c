//! The invariant signature: every computed dimension invariant of one
//! algebra, with a comparison that can only ever certify a difference.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, FieldSpec};
use crate::error::{Error, Result};
use crate::gerstenhaber::{signature_degrees, Gerstenhaber, DA_SIGN};
use crate::higherkappa::power_map;
use crate::hochschild::{Hochschild, DEFAULT_SIZE_CAP};
use crate::kulszero;

pub const SIGNATURE_SCHEMA_VERSION: u32 = crate::algebra::SCHEMA_VERSION;

/// A dimension, or the marker for an entry the size cap prevented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dim {
    Value(usize),
    Skipped(Skip),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Skip {
    #[serde(rename = "skipped: cap")]
    Cap,
}

impl Dim {
    pub fn value(&self) -> Option<usize> {
        match self {
            Dim::Value(v) => Some(*v),
            Dim::Skipped(_) => None,
        }
    }

    fn from_result(r: Result<usize>) -> Result<Dim> {
        match r {
            Ok(v) => Ok(Dim::Value(v)),
            Err(e) if e.is_cap() => Ok(Dim::Skipped(Skip::Cap)),
            Err(e) => Err(e),
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::Value(v) => write!(f, "{v}"),
            Dim::Skipped(_) => f.write_str("skipped: cap"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureConfig {
    pub n_max: u32,
    pub m_max: usize,
    /// The `(m, n)` pairs for which `κ_n^{(m)}` is recorded.
    pub kappa: Vec<(usize, u32)>,
    pub cap: u64,
}

impl SignatureConfig {
    pub fn default_for(p: u32) -> Self {
        let kappa = if p == 2 {
            vec![(0, 1), (0, 2), (1, 1), (2, 1)]
        } else {
            vec![(0, 1), (0, 2), (2, 1)]
        };
        SignatureConfig {
            n_max: 3,
            m_max: 3,
            kappa,
            cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KulshammerLevel {
    pub n: u32,
    pub dim_t: usize,
    pub dim_t_perp: usize,
    pub dim_p: usize,
    pub dim_im_zeta: usize,
    pub dim_im_kappa: usize,
    pub dim_ker_kappa: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HochschildLevel {
    pub m: usize,
    pub dim_homology: Dim,
    pub dim_cohomology: Dim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HigherKappaEntry {
    pub m: usize,
    pub n: u32,
    pub dim_image: Dim,
    pub dim_t: Dim,
    pub dim_kernel: Dim,
    pub odd_degree_odd_p: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaEntry {
    pub degree: usize,
    pub dim: Dim,
    pub sigma_rank: Dim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GerstenhaberBlock {
    /// `τ[D_f, d_A] = bracket_sign · δf`.
    pub bracket_sign: i64,
    pub sigma: Vec<SigmaEntry>,
    pub derived_dim: Dim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantSignature {
    pub schema_version: u32,
    pub field: FieldSpec,
    pub config: SignatureConfig,
    /// SHA-256 of the symmetrizing form's gram matrix.
    pub gram_fingerprint: String,
    pub dim_a: usize,
    pub dim_center: usize,
    pub dim_a_mod_ka: usize,
    pub kulshammer: Vec<KulshammerLevel>,
    pub stabilization_index: u32,
    pub hochschild: Vec<HochschildLevel>,
    pub higher_kappa: Vec<HigherKappaEntry>,
    pub gerstenhaber: GerstenhaberBlock,
}

pub fn gram_fingerprint(a: &Algebra) -> Result<String> {
    let g = a.require_form()?;
    let mut hasher = Sha256::new();
    for x in [a.field().p(), a.field().e(), g.rows() as u32] {
        hasher.update(x.to_le_bytes());
    }
    for &x in g.data() {
        hasher.update(x.to_le_bytes());
    }
    Ok(hex::encode(hasher.finalize()))
}

fn higher_entry(h: &Hochschild, m: usize, n: u32) -> Result<HigherKappaEntry> {
    let skipped = HigherKappaEntry {
        m,
        n,
        dim_image: Dim::Skipped(Skip::Cap),
        dim_t: Dim::Skipped(Skip::Cap),
        dim_kernel: Dim::Skipped(Skip::Cap),
        odd_degree_odd_p: false,
    };
    let run = || -> Result<HigherKappaEntry> {
        let pm = power_map(h, m, n)?;
        let k = crate::higherkappa::kappa_nm(h, m, n)?;
        let dim_hh = h.cohomology(m)?.dim();
        let (dt, di) = (pm.operator.kernel().dim(), k.operator.rank());
        if di + dt != dim_hh {
            return Err(Error::InvariantViolation(format!(
                "dim im kappa_{n}^({m}) + dim T = {} but dim HH^{m} = {dim_hh}",
                di + dt
            )));
        }
        Ok(HigherKappaEntry {
            m,
            n,
            dim_image: Dim::Value(di),
            dim_t: Dim::Value(dt),
            dim_kernel: Dim::Value(k.operator.dim_in() - di),
            odd_degree_odd_p: k.odd_degree_odd_p,
        })
    };
    match run() {
        Err(e) if e.is_cap() => Ok(skipped),
        r => r,
    }
}

pub fn compute(a: &Algebra, config: &SignatureConfig) -> Result<InvariantSignature> {
    a.require_form()?;
    let d = a.dim();
    let q = kulszero::quotient_mod_ka(a)?;
    let dim_center = a.center().dim();

    let mut kulshammer: Vec<KulshammerLevel> = Vec::with_capacity(config.n_max as usize);
    for n in 1..=config.n_max {
        let r = kulszero::report(a, n)?;
        let rank = r.kappa_n.rank();
        let level = KulshammerLevel {
            n,
            dim_t: r.t_n.dim(),
            dim_t_perp: r.t_n_perp.dim(),
            dim_p: r.p_n.dim(),
            dim_im_zeta: r.zeta_image.dim(),
            dim_im_kappa: rank,
            dim_ker_kappa: q.dim() - rank,
        };
        if level.dim_t + level.dim_t_perp != d {
            return Err(Error::InvariantViolation(format!("dim T_{n} + dim T_{n}^perp != dim A")));
        }
        if let Some(prev) = kulshammer.last() {
            if level.dim_t_perp > prev.dim_t_perp {
                return Err(Error::InvariantViolation(format!(
                    "dim T_{n}^perp exceeds the previous level"
                )));
            }
        }
        kulshammer.push(level);
    }

    let h = Hochschild::with_cap(a, config.cap);
    let mut hochschild = Vec::with_capacity(config.m_max + 1);
    for m in 0..=config.m_max {
        hochschild.push(HochschildLevel {
            m,
            dim_homology: Dim::from_result(h.homology(m).map(|b| b.dim()))?,
            dim_cohomology: Dim::from_result(h.cohomology(m).map(|b| b.dim()))?,
        });
    }

    let higher_kappa = config
        .kappa
        .iter()
        .map(|&(m, n)| higher_entry(&h, m, n))
        .collect::<Result<Vec<_>>>()?;

    let gs = Gerstenhaber::with_cap(a, config.cap);
    let mut sigma = Vec::new();
    for &k in signature_degrees(a.field().p()) {
        let entry = match gs.sigma_block(k) {
            Ok(b) => SigmaEntry {
                degree: k,
                dim: Dim::Value(b.dim),
                sigma_rank: Dim::Value(b.sigma_rank),
            },
            Err(e) if e.is_cap() => SigmaEntry {
                degree: k,
                dim: Dim::from_result(gs.hochschild().cohomology(k).map(|b| b.dim()))?,
                sigma_rank: Dim::Skipped(Skip::Cap),
            },
            Err(e) => return Err(e),
        };
        sigma.push(entry);
    }
    let derived_dim = Dim::from_result(gs.derived_dim())?;

    Ok(InvariantSignature {
        schema_version: SIGNATURE_SCHEMA_VERSION,
        field: FieldSpec::of(a.field()),
        config: config.clone(),
        gram_fingerprint: gram_fingerprint(a)?,
        dim_a: d,
        dim_center,
        dim_a_mod_ka: q.dim(),
        kulshammer,
        stabilization_index: kulszero::stabilization_index(a)?,
        hochschild,
        higher_kappa,
        gerstenhaber: GerstenhaberBlock {
            bracket_sign: DA_SIGN,
            sigma,
            derived_dim,
        },
    })
}

/// One named entry of a signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub value: Dim,
    /// Whether the entry takes part in comparisons.
    pub invariant: bool,
}

impl InvariantSignature {
    /// All entries in a fixed order. `dim_a` and `dim T_n` are reported but
    /// not compared.
    pub fn entries(&self) -> Vec<Entry> {
        let mut out = Vec::new();
        let mut push = |key: String, value: Dim, invariant: bool| {
            out.push(Entry {
                key,
                value,
                invariant,
            })
        };
        push("dim_a".into(), Dim::Value(self.dim_a), false);
        push("dim_center".into(), Dim::Value(self.dim_center), true);
        push("dim_a_mod_ka".into(), Dim::Value(self.dim_a_mod_ka), true);
        for l in &self.kulshammer {
            let n = l.n;
            push(format!("kulshammer[{n}].dim_t"), Dim::Value(l.dim_t), false);
            push(format!("kulshammer[{n}].dim_t_perp"), Dim::Value(l.dim_t_perp), true);
            push(format!("kulshammer[{n}].dim_p"), Dim::Value(l.dim_p), true);
            push(format!("kulshammer[{n}].dim_im_zeta"), Dim::Value(l.dim_im_zeta), true);
            push(format!("kulshammer[{n}].dim_im_kappa"), Dim::Value(l.dim_im_kappa), true);
            push(format!("kulshammer[{n}].dim_ker_kappa"), Dim::Value(l.dim_ker_kappa), true);
        }
        push(
            "stabilization_index".into(),
            Dim::Value(self.stabilization_index as usize),
            true,
        );
        for l in &self.hochschild {
            let m = l.m;
            push(format!("hochschild[{m}].dim_homology"), l.dim_homology, true);
            push(format!("hochschild[{m}].dim_cohomology"), l.dim_cohomology, true);
        }
        for k in &self.higher_kappa {
            let tag = format!("higher_kappa[m={},n={}]", k.m, k.n);
            push(format!("{tag}.dim_image"), k.dim_image, true);
            push(format!("{tag}.dim_t"), k.dim_t, true);
            push(format!("{tag}.dim_kernel"), k.dim_kernel, true);
        }
        for s in &self.gerstenhaber.sigma {
            let k = s.degree;
            push(format!("gerstenhaber.sigma[{k}].dim"), s.dim, true);
            push(format!("gerstenhaber.sigma[{k}].sigma_rank"), s.sigma_rank, true);
        }
        push("gerstenhaber.derived_dim".into(), self.gerstenhaber.derived_dim, true);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "field: GF({}^{})\ngram_fingerprint: {}\n",
            self.field.p, self.field.e, self.gram_fingerprint
        );
        for e in self.entries() {
            s.push_str(&format!("{}: {}\n", e.key, e.value));
        }
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse_versioned(text)
    }
}

/// Parses a versioned JSON document strictly: the `schema_version` field is
/// checked first, then unknown or missing fields are rejected.
pub fn parse_versioned<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let found = v
        .get("schema_version")
        .ok_or_else(|| Error::MalformedDocument("missing schema_version".into()))?
        .as_u64()
        .ok_or_else(|| Error::MalformedDocument("schema_version is not an integer".into()))?;
    if found != SIGNATURE_SCHEMA_VERSION as u64 {
        return Err(Error::SchemaVersionMismatch {
            found: found.min(u32::MAX as u64) as u32,
            expected: SIGNATURE_SCHEMA_VERSION,
        });
    }
    serde_json::from_value(v).map_err(|e| Error::MalformedDocument(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Distinguished,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Difference {
    pub key: String,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub schema_version: u32,
    pub verdict: Verdict,
    pub differences: Vec<Difference>,
    /// Number of entries present with a value in both signatures.
    pub compared: usize,
    /// Invariant entries not compared because one side lacks a value.
    pub not_compared: Vec<String>,
}

/// Compares the invariant entries both signatures carry a value for.
pub fn compare(a: &InvariantSignature, b: &InvariantSignature) -> Result<Comparison> {
    if a.field != b.field {
        return Err(Error::Incomparable(format!(
            "GF({}^{}) vs GF({}^{})",
            a.field.p, a.field.e, b.field.p, b.field.e
        )));
    }
    let eb = b.entries();
    let mut differences = Vec::new();
    let mut not_compared = Vec::new();
    let mut compared = 0;
    for x in a.entries().into_iter().filter(|e| e.invariant) {
        let Some(y) = eb.iter().find(|e| e.key == x.key) else {
            continue;
        };
        match (x.value.value(), y.value.value()) {
            (Some(u), Some(v)) => {
                compared += 1;
                if u != v {
                    differences.push(Difference {
                        key: x.key.clone(),
                        a: u,
                        b: v,
                    });
                }
            }
            _ => not_compared.push(x.key.clone()),
        }
    }
    Ok(Comparison {
        schema_version: SIGNATURE_SCHEMA_VERSION,
        verdict: if differences.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Distinguished
        },
        differences,
        compared,
        not_compared,
    })
}
