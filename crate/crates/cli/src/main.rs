mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hiveforge_core::oblade::{count_fillings_with, enumerate_fillings_with};
use hiveforge_core::render::{render, svg_filename};
use hiveforge_core::rpoly::{kappa_sets, r_coefficients, series_r, verify_r7, R7Report};
use hiveforge_core::stretch::{horn_volume_with, stretch_polynomial_with, StretchOptions};
use hiveforge_core::tensor::{kostka_with, tensor_decompose_with};
use hiveforge_core::{
    BranchingTriple, CharacterCombo, Error, KappaSets, LieType, RenderKind, RenderSpec, SearchConfig, Series,
    StretchPolynomial, VolumeValue, Weight, Which,
};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "hiveforge", version, about = "Exact Lie group multiplicities, stretching polynomials and Horn volumes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Maximum number of fillings counted by a single search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,
    /// Result cache directory (default: ~/.hiveforge).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Args, Debug, Clone)]
struct TripleArgs {
    /// Lie type, e.g. A4 for SU(5).
    lie_type: LieType,
    lambda: Weight,
    mu: Weight,
    nu: Weight,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Littlewood-Richardson coefficient C_{λμ}^ν.
    Lr(TripleArgs),
    /// Decompose λ⊗μ into irreducibles.
    Tensor { lie_type: LieType, lambda: Weight, mu: Weight },
    /// Multiplicity of the weight δ in the irrep λ.
    Kostka { lie_type: LieType, lambda: Weight, delta: Weight },
    /// Stretching polynomial s ↦ C_{sλ,sμ}^{sν}.
    Stretch {
        #[command(flatten)]
        triple: TripleArgs,
        /// Skip the extra sample that double-checks the interpolant.
        #[arg(long)]
        no_guard: bool,
    },
    /// Horn volume J(λ, μ, ν).
    Volume(TripleArgs),
    /// Character supports K and K̂ of the R-polynomials.
    Kappa { lie_type: LieType },
    /// Character expansion of R (or R̂ with --hat).
    Rpoly {
        lie_type: LieType,
        #[arg(long)]
        hat: bool,
    },
    /// Check the SU(7) R-polynomial reference table.
    VerifyR7,
    /// Compare the truncated lattice series with the character form.
    SeriesCheck {
        /// SU(n) rank plus one.
        n: usize,
        /// Angles u_1..u_{n-1}, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Option<Vec<f64>>,
        /// Truncation orders P, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,12")]
        p: Vec<u32>,
    },
    /// Write SVG drawings of fillings or honeycombs.
    Render {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value = "oblade")]
        kind: RenderKind,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Pixels per unit length, e.g. 40 or 25/2.
        #[arg(long, default_value = "40")]
        scale: Rational64,
        /// Draw only the filling with this index.
        #[arg(long)]
        index: Option<usize>,
        /// Draw at most this many fillings.
        #[arg(long, default_value_t = 50)]
        limit: usize,
        #[arg(long)]
        highlight_zero: bool,
        #[arg(long)]
        no_labels: bool,
    },
    /// Inspect or clean the result cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Remove corrupt, outdated and temporary files.
    Gc,
    /// Count entries and bytes.
    Stats,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed result: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Budget { .. }) => 2,
            CliError::Core(Error::Parse(_)) => 64,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Ctx {
    json: bool,
    cfg: SearchConfig,
    cache: Option<Cache>,
}

impl Ctx {
    /// Read-through cache around `compute`.
    fn cached(&self, key: &str, compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(key)) {
            return Ok(v);
        }
        let v = compute()?;
        if let Some(c) = &self.cache {
            if let Err(e) = c.put(key, &v) {
                eprintln!("warning: could not write cache entry: {e}");
            }
        }
        Ok(v)
    }

    fn emit(&self, payload: &Value, text: impl FnOnce() -> Result<String>) -> Result<()> {
        if self.json {
            println!("{}", serde_json::to_string(payload)?);
        } else {
            println!("{}", text()?);
        }
        Ok(())
    }
}

fn su_n(lie_type: LieType) -> Result<usize> {
    if lie_type.series() != Series::A {
        return Err(Error::Unsupported(format!("{lie_type}: multiplicities are implemented for SU(n) only")).into());
    }
    Ok(lie_type.rank() + 1)
}

fn coords(w: &Weight) -> String {
    w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn key(lie_type: LieType, op: &str, weights: &[&Weight]) -> String {
    let mut k = format!("{lie_type}|{op}");
    for w in weights {
        k.push('|');
        k.push_str(&coords(w));
    }
    k
}

impl TripleArgs {
    fn triple(&self) -> Result<BranchingTriple> {
        let n = su_n(self.lie_type)?;
        Ok(BranchingTriple::new(n, self.lambda.clone(), self.mu.clone(), self.nu.clone())?)
    }

    fn key(&self, op: &str) -> String {
        key(self.lie_type, op, &[&self.lambda, &self.mu, &self.nu])
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTerm {
    nu: Weight,
    mult: String,
}

fn combo_text(c: &CharacterCombo) -> String {
    let terms: Vec<String> = c.coeffs.iter().map(|(k, r)| format!("{r}*chi{k}")).collect();
    terms.join(" + ")
}

fn weights_text(ws: &std::collections::BTreeSet<Weight>) -> String {
    ws.iter().map(Weight::to_string).collect::<Vec<_>>().join(" ")
}

fn default_angles(n: usize) -> Vec<f64> {
    (0..n.saturating_sub(1)).map(|j| 0.3 + 0.2 * ((j * 3) % 5) as f64 / 2.0).collect()
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        if t == 0 {
            return Err(Error::Domain("--threads must be positive".into()).into());
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let cache = if g.no_cache {
        None
    } else {
        let dir = g.cache_dir.clone().or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".hiveforge")));
        dir.map(Cache::new)
    };
    let ctx = Ctx { json: g.json, cfg: SearchConfig::with_budget(g.budget), cache };
    let cfg = ctx.cfg;

    match &cli.command {
        Command::Lr(a) => {
            let t = a.triple()?;
            let v = ctx.cached(&a.key("lr"), || Ok(json!({ "multiplicity": count_fillings_with(&t, &cfg)?.to_string() })))?;
            ctx.emit(&v, || Ok(v["multiplicity"].as_str().unwrap_or_default().to_string()))
        }
        Command::Tensor { lie_type, lambda, mu } => {
            let n = su_n(*lie_type)?;
            let v = ctx.cached(&key(*lie_type, "tensor", &[lambda, mu]), || {
                let d = tensor_decompose_with(n, lambda, mu, &cfg)?;
                let terms: Vec<TensorTerm> =
                    d.entries.iter().map(|(nu, m)| TensorTerm { nu: nu.clone(), mult: m.to_string() }).collect();
                Ok(serde_json::to_value(terms)?)
            })?;
            let terms: Vec<TensorTerm> = serde_json::from_value(v)?;
            for t in &terms {
                if ctx.json {
                    println!("{}", serde_json::to_string(t)?);
                } else {
                    println!("{} {}", t.nu, t.mult);
                }
            }
            Ok(())
        }
        Command::Kostka { lie_type, lambda, delta } => {
            let n = su_n(*lie_type)?;
            let v = ctx.cached(&key(*lie_type, "kostka", &[lambda, delta]), || {
                Ok(json!({ "kostka": kostka_with(n, lambda, delta, &cfg)?.to_string() }))
            })?;
            ctx.emit(&v, || Ok(v["kostka"].as_str().unwrap_or_default().to_string()))
        }
        Command::Stretch { triple, no_guard } => {
            let t = triple.triple()?;
            let op = if *no_guard { "stretch-unguarded" } else { "stretch" };
            let opts = StretchOptions { search: cfg, guard: !no_guard };
            let v = ctx.cached(&triple.key(op), || Ok(serde_json::to_value(stretch_polynomial_with(&t, &opts)?)?))?;
            let p: StretchPolynomial = serde_json::from_value(v.clone())?;
            ctx.emit(&v, || Ok(p.to_string()))
        }
        Command::Volume(a) => {
            let t = a.triple()?;
            let opts = StretchOptions { search: cfg, guard: true };
            let v = ctx.cached(&a.key("volume"), || Ok(serde_json::to_value(horn_volume_with(&t, &opts)?)?))?;
            let vol: VolumeValue = serde_json::from_value(v.clone())?;
            if !vol.generic {
                eprintln!("note: the stretching polynomial has less than the generic degree");
            }
            ctx.emit(&v, || Ok(vol.value.to_string()))
        }
        Command::Kappa { lie_type } => {
            let sets = kappa_sets(*lie_type)?;
            let v = serde_json::to_value(&sets)?;
            ctx.emit(&v, || {
                let s: KappaSets = serde_json::from_value(v.clone())?;
                Ok(format!(
                    "K  = {}\nK^ = {}\nR = R^: {}",
                    weights_text(&s.k),
                    weights_text(&s.k_hat),
                    if s.equal { "yes" } else { "no" }
                ))
            })
        }
        Command::Rpoly { lie_type, hat } => {
            let which = if *hat { Which::RHat } else { Which::R };
            let op = if *hat { "rpoly-hat" } else { "rpoly" };
            let v = ctx.cached(&key(*lie_type, op, &[]), || match r_coefficients(*lie_type, which, &cfg) {
                Err(Error::Budget { budget }) => {
                    eprintln!("hint: the SU(7) table can be checked with `hiveforge verify-r7`");
                    Err(Error::Budget { budget }.into())
                }
                r => Ok(serde_json::to_value(r?)?),
            })?;
            let c: CharacterCombo = serde_json::from_value(v.clone())?;
            if !c.confirmed {
                eprintln!("note: no reference table confirms these coefficients");
            }
            ctx.emit(&v, || Ok(combo_text(&c)))
        }
        Command::VerifyR7 => {
            let report = verify_r7()?;
            let v = serde_json::to_value(&report)?;
            ctx.emit(&v, || Ok(r7_text(&report)))?;
            if report.passed() {
                Ok(())
            } else {
                Err(Error::Consistency("the SU(7) table failed verification".into()).into())
            }
        }
        Command::SeriesCheck { n, u, p } => {
            let u = u.clone().unwrap_or_else(|| default_angles(*n));
            let lie = LieType::su(*n)?;
            let reference = if *n == 3 {
                1.0
            } else {
                r_coefficients(lie, Which::R, &cfg)?.evaluate_torus(&u)?
            };
            let mut rows = Vec::new();
            for &pm in p {
                let value = series_r(*n, &u, pm)?;
                rows.push(json!({ "p": pm, "value": value, "error": (value - reference).abs() }));
            }
            let errors: Vec<f64> = rows.iter().map(|r| r["error"].as_f64().unwrap_or(f64::NAN)).collect();
            let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
            let v = json!({ "n": n, "u": u, "reference": reference, "rows": rows, "monotone": monotone });
            ctx.emit(&v, || {
                let mut s = format!("reference {reference:.12}\n");
                for r in &rows {
                    s.push_str(&format!(
                        "P={:<4} {:.12}  err {:.3e}\n",
                        r["p"],
                        r["value"].as_f64().unwrap_or(f64::NAN),
                        r["error"].as_f64().unwrap_or(f64::NAN)
                    ));
                }
                s.push_str(if monotone { "error decreases monotonically" } else { "error is not monotone" });
                Ok(s)
            })
        }
        Command::Render { triple, kind, out, scale, index, limit, highlight_zero, no_labels } => {
            let t = triple.triple()?;
            let mut spec = RenderSpec::new(*kind, *scale)?;
            spec.show_labels = !no_labels;
            spec.highlight_zero_edges = *highlight_zero;
            let fillings = enumerate_fillings_with(&t, &cfg)?;
            let chosen: Vec<usize> = match index {
                Some(i) if *i >= fillings.len() => {
                    return Err(Error::Domain(format!("index {i} out of range: {} fillings", fillings.len())).into())
                }
                Some(i) => vec![*i],
                None => (0..fillings.len().min(*limit)).collect(),
            };
            std::fs::create_dir_all(out)?;
            let mut files = Vec::new();
            for i in chosen {
                let path = out.join(svg_filename(*kind, &t, i));
                std::fs::write(&path, render(&fillings[i], &spec)?)?;
                files.push(path.display().to_string());
            }
            let v = json!({ "fillings": fillings.len(), "files": files });
            ctx.emit(&v, || Ok(files.join("\n")))
        }
        Command::Cache(cmd) => {
            let Some(c) = &ctx.cache else {
                return Err(Error::Domain("the cache is disabled".into()).into());
            };
            match cmd {
                CacheCommand::Stats => {
                    let s = c.stats();
                    ctx.emit(&serde_json::to_value(s)?, || {
                        Ok(format!("entries {}\nbytes {}\nstale {}", s.entries, s.bytes, s.stale))
                    })
                }
                CacheCommand::Gc => {
                    let r = c.gc()?;
                    ctx.emit(&serde_json::to_value(r)?, || Ok(format!("kept {}\nremoved {}", r.kept, r.removed)))
                }
            }
        }
    }
}

fn r7_text(r: &R7Report) -> String {
    let mark = |b: bool| if b { "ok" } else { "FAILED" };
    format!(
        "support size {} (21 expected)\nsupport equals K(A6): {}\nconjugate pairs agree: {}\ndimensions match: {}\n\
         nonnegative: {}\nsum r*dim = {} ({})\ndenominator 3*13! = {}\n{}",
        r.support_size,
        mark(r.support_matches_kappa_set),
        mark(r.conjugate_pairs_share_coefficients),
        mark(r.dimensions_match),
        mark(r.nonnegative),
        r.normalization,
        mark(num_traits::One::is_one(&r.normalization)),
        r.denominator,
        if r.passed() { "PASS" } else { "FAIL" }
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
