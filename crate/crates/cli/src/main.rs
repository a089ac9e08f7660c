use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kk_core::algebra::{matrix_algebra, trivial_extension, truncated_poly, Coeff, SCHEMA_VERSION};
use kk_core::exact::{Field, Mat, SemilinearOperator, Subspace};
use kk_core::gerstenhaber::{Gerstenhaber, DA_SIGN};
use kk_core::higherkappa::{kappa_nm, power_map, verify_properties};
use kk_core::hochschild::{Hochschild, DEFAULT_SIZE_CAP};
use kk_core::signature::{self, gram_fingerprint, InvariantSignature, SignatureConfig, Verdict};
use kk_core::{kulszero, Algebra, Error};

const EXIT_DISTINGUISHED: u8 = 10;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INTERNAL: u8 = 1;

/// Külshammer-type invariants of symmetric algebras over finite fields.
#[derive(Parser)]
#[command(name = "kk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate an algebra file.
    Check { file: PathBuf },
    /// Compute the invariant signature.
    Signature {
        file: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Compare two algebras (or saved signatures). Exits 10 when distinguished.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// The map ζ_n on the center.
    Zeta {
        file: PathBuf,
        #[arg(short = 'n')]
        n: u32,
    },
    /// The map κ_n on A/KA.
    Kappa {
        file: PathBuf,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Hochschild (co)homology in one degree.
    Hh {
        file: PathBuf,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long, conflicts_with = "cohomology")]
        homology: bool,
        #[arg(long)]
        cohomology: bool,
    },
    /// The higher map κ_n^(m) : HH_{p^n m} → HH_m.
    Kappam {
        file: PathBuf,
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: u32,
        /// Also check the structural properties with composition step L.
        #[arg(long, value_name = "L")]
        verify: Option<u32>,
    },
    /// Gerstenhaber bracket data and the p-power operation.
    Gerst {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        check_restricted: bool,
    },
    /// Write a standard algebra to a file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        p: Option<u32>,
        #[arg(long, global = true)]
        e: Option<u32>,
        #[arg(short = 'o', global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Pairs `m,n` for the higher maps.
    #[arg(long, num_args = 1.., value_parser = parse_pair)]
    kappa: Option<Vec<(usize, u32)>>,
}

#[derive(Subcommand)]
enum GenKind {
    GroupCyclic { k: usize },
    GroupKlein,
    TruncatedPoly { n: usize },
    TrivialExtension { file: PathBuf },
    Matrix { file: PathBuf, n: usize },
}

fn parse_pair(s: &str) -> Result<(usize, u32), String> {
    let (m, n) = s.split_once(',').ok_or_else(|| format!("expected m,n but got {s:?}"))?;
    Ok((
        m.trim().parse().map_err(|e| format!("{m:?}: {e}"))?,
        n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?,
    ))
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<u8, Failure>;

fn size_cap() -> Result<u64, Failure> {
    match std::env::var("KK_SIZE_CAP") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("KK_SIZE_CAP is not an integer: {s:?}"))),
        Err(_) => Ok(DEFAULT_SIZE_CAP),
    }
}

fn load(path: &Path) -> Result<Algebra, Failure> {
    Ok(Algebra::load(path)?)
}

fn write_out(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn emit(v: &Value) {
    write_out(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn report(kind: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "report": kind });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn mat_json(m: &Mat) -> Value {
    let f = m.field();
    json!(m
        .row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(|x| Coeff::from_elem(f, x)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": mat_json(s.basis()) })
}

fn operator_json(op: &SemilinearOperator) -> Value {
    json!({
        "twist": op.normalized_twist(),
        "matrix": mat_json(&op.matrix),
        "rank": op.rank(),
    })
}

fn config_for(a: &Algebra, args: &ConfigArgs) -> Result<SignatureConfig, Failure> {
    let mut c = SignatureConfig::default_for(a.field().p());
    if let Some(n) = args.n_max {
        c.n_max = n;
    }
    if let Some(m) = args.m_max {
        c.m_max = m;
    }
    if let Some(k) = &args.kappa {
        c.kappa = k.clone();
    }
    c.cap = size_cap()?;
    Ok(c)
}

fn signature_of(path: &Path, args: &ConfigArgs) -> Result<InvariantSignature, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let is_signature = serde_json::from_str::<Value>(&text)
        .ok()
        .and_then(|v| v.get("gram_fingerprint").cloned())
        .is_some();
    if is_signature {
        return Ok(InvariantSignature::from_json(&text)?);
    }
    let a = Algebra::from_json(&text)?;
    Ok(signature::compute(&a, &config_for(&a, args)?)?)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { file } => {
            let a = load(&file)?;
            let fingerprint = gram_fingerprint(&a).ok();
            emit(&report(
                "check",
                json!({
                    "field": { "p": a.field().p(), "e": a.field().e() },
                    "dim": a.dim(),
                    "kind": a.kind().map(|k| k.label()),
                    "symmetric": a.form().is_some(),
                    "commutative": a.is_commutative(),
                    "dim_center": a.center().dim(),
                    "dim_commutator_space": a.commutator_space().dim(),
                    "gram_fingerprint": fingerprint,
                }),
            ));
            Ok(0)
        }
        Command::Signature {
            file,
            config,
            json: _,
            text,
        } => {
            let a = load(&file)?;
            let sig = signature::compute(&a, &config_for(&a, &config)?)?;
            if text {
                write_out(&sig.to_text());
            } else {
                write_out(&(sig.to_json() + "\n"));
            }
            Ok(0)
        }
        Command::Compare {
            file_a,
            file_b,
            config,
        } => {
            let sa = signature_of(&file_a, &config)?;
            let sb = signature_of(&file_b, &config)?;
            let c = signature::compare(&sa, &sb)?;
            write_out(&(serde_json::to_string_pretty(&c).expect("serializable") + "\n"));
            Ok(match c.verdict {
                Verdict::Distinguished => EXIT_DISTINGUISHED,
                Verdict::Inconclusive => 0,
            })
        }
        Command::Zeta { file, n } => {
            let a = load(&file)?;
            let z = kulszero::zeta_n(&a, n)?;
            let g = a.require_form()?;
            let t_perp = kk_core::exact::orthogonal_complement(g, &kulszero::t_n_space(&a, n)?)?;
            let image = kulszero::zeta_image(&a, n)?;
            emit(&report(
                "zeta",
                json!({
                    "n": n,
                    "center": subspace_json(&a.center()),
                    "operator": operator_json(&z),
                    "image": subspace_json(&image),
                    "t_perp": subspace_json(&t_perp),
                    "image_equals_t_perp": image == t_perp,
                    "gram_fingerprint": gram_fingerprint(&a)?,
                }),
            ));
            Ok(0)
        }
        Command::Kappa { file, n } => {
            let a = load(&file)?;
            let q = kulszero::quotient_mod_ka(&a)?;
            let k = kulszero::kappa_n_with(&a, &q, n)?;
            let r = kulszero::report(&a, n)?;
            emit(&report(
                "kappa",
                json!({
                    "n": n,
                    "dim_a_mod_ka": q.dim(),
                    "complement": q.complement,
                    "operator": operator_json(&k),
                    "dim_kernel": q.dim() - k.rank(),
                    "image_equals_t_center_perp": k.image() == r.t_n_center_perp_mod_ka,
                    "kernel_equals_p_perp": k.kernel() == r.p_n_perp_mod_ka,
                    "gram_fingerprint": gram_fingerprint(&a)?,
                }),
            ));
            Ok(0)
        }
        Command::Hh {
            file,
            m,
            homology,
            cohomology,
        } => {
            let a = load(&file)?;
            let h = Hochschild::with_cap(&a, size_cap()?);
            let mut body = json!({ "degree": m });
            let side = |b: &kk_core::hochschild::HomologyBasis| {
                json!({
                    "dim": b.dim(),
                    "dim_cycles": b.dim_cycles,
                    "dim_boundaries": b.dim_boundaries,
                    "ambient": b.ambient,
                })
            };
            if !cohomology {
                body["homology"] = side(h.homology(m)?.as_ref());
            }
            if !homology {
                body["cohomology"] = side(h.cohomology(m)?.as_ref());
            }
            emit(&report("hh", body));
            Ok(0)
        }
        Command::Kappam { file, m, n, verify } => {
            let a = load(&file)?;
            let h = Hochschild::with_cap(&a, size_cap()?);
            let k = kappa_nm(&h, m, n)?;
            let t = power_map(&h, m, n)?.operator.kernel();
            let mut body = json!({
                "m": m,
                "n": n,
                "source_degree": k.source_degree(a.field().p()),
                "odd_degree_odd_p": k.odd_degree_odd_p,
                "operator": operator_json(&k.operator),
                "dim_t": t.dim(),
                "dim_kernel": k.operator.dim_in() - k.operator.rank(),
                "gram_fingerprint": gram_fingerprint(&a)?,
            });
            let mut code = 0;
            if let Some(l) = verify {
                let rep = verify_properties(&h, m, n, l)?;
                if !rep.all_pass() {
                    code = EXIT_INTERNAL;
                }
                body["properties"] = json!(rep);
            }
            emit(&report("kappam", body));
            Ok(code)
        }
        Command::Gerst {
            file,
            degree,
            check_restricted,
        } => {
            let a = load(&file)?;
            let g = Gerstenhaber::with_cap(&a, size_cap()?);
            let mut body = json!({
                "p": g.p(),
                "degree": degree,
                "bracket_sign": DA_SIGN,
                "dim": g.hochschild().cohomology(degree)?.dim(),
            });
            match g.sigma_block(degree) {
                Ok(b) => body["sigma"] = json!(b),
                Err(Error::ParityViolation(msg)) => body["sigma"] = json!({ "undefined": msg }),
                Err(e) => return Err(e.into()),
            }
            if degree == 1 {
                body["derived_dim"] = json!(g.derived_dim()?);
            }
            let mut code = 0;
            if check_restricted {
                let rep = g.restricted_axioms_check(&[degree])?;
                if !rep.all_pass() {
                    code = EXIT_INTERNAL;
                }
                body["restricted"] = json!({ "all_pass": rep.all_pass(), "report": rep });
            }
            emit(&report("gerst", body));
            Ok(code)
        }
        Command::Gen { kind, p, e, out } => {
            let field = || -> Result<Field, Failure> {
                let p = p.ok_or_else(|| Failure::Input("--p is required".into()))?;
                Ok(Field::new(p, e.unwrap_or(1))?)
            };
            let a = match kind {
                GenKind::GroupCyclic { k } => Algebra::group_cyclic(&field()?, k)?,
                GenKind::GroupKlein => Algebra::group_klein(&field()?)?,
                GenKind::TruncatedPoly { n } => truncated_poly(&field()?, n)?,
                GenKind::TrivialExtension { file } => trivial_extension(&load(&file)?)?,
                GenKind::Matrix { file, n } => matrix_algebra(&load(&file)?, n)?,
            };
            let text = a.to_json();
            match out {
                Some(path) => std::fs::write(&path, text + "\n")
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => write_out(&(text + "\n")),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(msg) => (EXIT_INPUT, msg),
                Failure::Core(e) if e.is_cap() => (EXIT_CAP, e.to_string()),
                Failure::Core(e @ Error::InvariantViolation(_)) => (EXIT_INTERNAL, e.to_string()),
                Failure::Core(e) => (EXIT_INPUT, e.to_string()),
            };
            eprintln!("kk: {msg}");
            ExitCode::from(code)
        }
    }
}
