//! The `nilcone` command line.
//!
//! Weights are given and printed as comma-separated Dynkin labels for every preset.
//! Results are wrapped in `{"schema":"nilcone-satake/1","result":...}` for `--output json`.
//! Failures print one JSON line `{"error":kind,"message":...}` on stderr and exit with
//! 1 (domain, configuration, usage) or 2 (resource).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcone_core::cohcat::FreeObject;
use nilcone_core::nilpotent::{self, build_irrep};
use nilcone_core::qanalog::{complete_intersection_series, QAnalogs};
use nilcone_core::{sl2, OrlovCategory, QPolynomial, Rational, RepRing, RootDatum, Weight};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "nilcone-satake/1";
pub const CACHE_ENV: &str = "NILCONE_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "nilcone", version, about = "Exact computations around the nilpotent cone")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Root datum preset: A1-sc, A1-adj, A2-sc, A2-adj, B2-sc, B2-adj, G2, A3-sc.
    #[arg(long, global = true, default_value = "A1-sc")]
    preset: String,
    /// Truncation degree for series.
    #[arg(long, global = true, default_value_t = 20)]
    truncation: u32,
    /// Largest representation dimension built explicitly.
    #[arg(long = "dim-cap", global = true, default_value_t = 400, value_parser = clap::value_parser!(u64).range(1..))]
    dim_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Write the result here instead of stdout.
    #[arg(long = "out", global = true)]
    out_path: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    Kostant,
    Slice,
    Both,
}

/// Weights are comma-separated Dynkin labels, e.g. `1,0`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots in simple-root coordinates.
    Roots,
    /// Decompose `V_lhs ⊗ V_rhs`.
    Tensor {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Restrict `V_lambda` to the Levi on the given simple roots (1-based; omit for the torus).
    Branch {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_delimiter = ',')]
        levi: Vec<usize>,
    },
    /// Lusztig's q-analog `m^lambda_mu(q)`.
    Qanalog {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Compare the explicit Brylinski-Kostant filtration of `V_lambda` with the q-analog
    /// prediction at one weight, or at every weight when `--mu` is omitted.
    BkVerify {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Graded Hom between free objects; summands are `LABELS` or `LABELS@DEGREE`.
    Hom {
        #[arg(long, required = true, allow_hyphen_values = true)]
        source: Vec<String>,
        #[arg(long, required = true, allow_hyphen_values = true)]
        target: Vec<String>,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Hilbert series of the coordinate ring of the nilpotent cone, by two routes.
    Hilbert,
    /// Poincaré series of the symmetric algebra of the principal centralizer.
    Poincare,
    /// Loewy layers of standard, costandard and projective objects for SL(2).
    Sl2Table {
        /// Labels range over the even integers in `[-range, range]`.
        #[arg(long, default_value_t = 6)]
        range: i64,
    },
    /// Dimension profile of `Hom(P, P ⋆ IC_k)` over resolution indices `lowest..=0`.
    Sl2Profile {
        #[arg(long, default_value_t = 0)]
        k: i64,
        #[arg(long, default_value_t = -6, allow_hyphen_values = true)]
        lowest: i64,
    },
}

/// Parse `argv` (including the program name), run, print, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            report("usage", first.trim_start_matches("error: "));
            return 1;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            let (kind, code) = classify(&e);
            report(kind, &format!("{e:#}"));
            code
        }
    }
}

fn classify(e: &anyhow::Error) -> (&'static str, i32) {
    match e.downcast_ref::<nilcone_core::Error>() {
        Some(nilcone_core::Error::Resource { .. }) => ("resource", 2),
        Some(nilcone_core::Error::Config(_)) => ("config", 1),
        _ => ("domain", 1),
    }
}

fn report(kind: &str, message: &str) {
    let line = json!({ "error": kind, "message": message.replace('\n', " ") });
    eprintln!("{line}");
}

/// A computed result: JSON for the envelope and a TSV rendering.
struct Output {
    json: Value,
    tsv: String,
}

fn execute(cli: &Cli) -> Result<()> {
    let cfg = &cli.config;
    let key = cache_key(cli);
    let cached = cache_dir().and_then(|dir| std::fs::read_to_string(dir.join(format!("{key}.json"))).ok());
    let out = match cached.and_then(|s| serde_json::from_str::<Value>(&s).ok()) {
        Some(v) if v.get("json").is_some() => Output {
            json: v["json"].clone(),
            tsv: v["tsv"].as_str().unwrap_or_default().to_string(),
        },
        _ => {
            let out = dispatch(cfg, &cli.command)?;
            if let Some(dir) = cache_dir() {
                // the cache is best effort; a failed write only costs a recomputation
                let _ = store(&dir, &key, &out);
            }
            out
        }
    };
    let text = match cfg.output {
        Format::Json => {
            let envelope = json!({ "schema": SCHEMA, "result": out.json });
            let mut s = serde_json::to_string_pretty(&envelope)?;
            s.push('\n');
            s
        }
        Format::Tsv => out.tsv,
    };
    match &cfg.out_path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Content address of a request: every flag that affects the result.
fn cache_key(cli: &Cli) -> String {
    let c = &cli.config;
    let request = format!(
        "{SCHEMA}\npreset={}\ntruncation={}\ndim_cap={}\n{:?}",
        c.preset, c.truncation, c.dim_cap, cli.command
    );
    let digest = Sha256::digest(request.as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn store(dir: &Path, key: &str, out: &Output) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, serde_json::to_vec(&json!({ "json": out.json, "tsv": out.tsv }))?)?;
    std::fs::rename(tmp, dir.join(format!("{key}.json")))?;
    Ok(())
}

fn dispatch(cfg: &Config, cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Sl2Table { range } => return sl2_table(*range),
        Command::Sl2Profile { k, lowest } => return sl2_profile(*k, *lowest),
        _ => {}
    }
    let d = RootDatum::preset(&cfg.preset)?;
    let cap = usize::try_from(cfg.dim_cap).unwrap_or(usize::MAX);
    match cmd {
        Command::Roots => Ok(roots(&d)),
        Command::Tensor { lhs, rhs } => tensor(d, lhs, rhs),
        Command::Branch { lambda, levi } => branch(d, lambda, levi),
        Command::Qanalog { lambda, mu } => qanalog(d, lambda, mu),
        Command::BkVerify { lambda, mu } => bk_verify(d, cap, lambda, mu.as_deref()),
        Command::Hom { source, target, route } => hom(d, cap, source, target, *route),
        Command::Hilbert => hilbert(d, cfg.truncation),
        Command::Poincare => poincare(d, cfg.truncation),
        Command::Sl2Table { .. } | Command::Sl2Profile { .. } => unreachable!(),
    }
}

fn parse_labels(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| anyhow!(nilcone_core::Error::domain(format!("'{s}' is not a list of integers")))))
        .collect()
}

fn weight(d: &RootDatum, s: &str) -> Result<Weight> {
    Ok(d.from_dynkin(&parse_labels(s)?)?)
}

fn dominant(d: &RootDatum, s: &str) -> Result<Weight> {
    let w = weight(d, s)?;
    if !d.is_dominant(&w) {
        bail!(nilcone_core::Error::domain(format!("({s}) is not dominant")));
    }
    Ok(w)
}

fn labels(d: &RootDatum, w: &Weight) -> String {
    d.dynkin(w).iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn poly_json(p: &QPolynomial) -> Value {
    json!({ "text": p.to_string(), "terms": p })
}

fn poly_tsv(p: &QPolynomial) -> String {
    let mut s = String::from("exponent\tcoefficient\n");
    for (e, c) in p.terms() {
        let _ = writeln!(s, "{e}\t{c}");
    }
    s
}

fn roots(d: &RootDatum) -> Output {
    let list: Vec<Value> = d
        .positive_roots()
        .iter()
        .map(|r| {
            json!({
                "simple_coords": r.simple_coords,
                "coroot_coords": r.coroot_coords,
                "height": r.height(),
                "dynkin": d.dynkin(&r.root),
            })
        })
        .collect();
    let mut tsv = String::from("index\tsimple_coords\tcoroot_coords\theight\n");
    for (i, r) in d.positive_roots().iter().enumerate() {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(tsv, "{i}\t{}\t{}\t{}", join(&r.simple_coords), join(&r.coroot_coords), r.height());
    }
    Output {
        json: json!({ "preset": d.name, "rank": d.rank, "positive_roots": list }),
        tsv,
    }
}

fn decomposition(d: &RootDatum, list: &[(Weight, u64)]) -> (Value, String) {
    let mut map = Map::new();
    let mut tsv = String::from("weight\tmultiplicity\n");
    for (w, m) in list {
        map.insert(labels(d, w), json!(m));
        let _ = writeln!(tsv, "{}\t{m}", labels(d, w));
    }
    (Value::Object(map), tsv)
}

fn tensor(d: RootDatum, lhs: &str, rhs: &str) -> Result<Output> {
    let ring = RepRing::new(d);
    let d = ring.datum();
    let (a, b) = (dominant(d, lhs)?, dominant(d, rhs)?);
    let list = ring.tensor_decompose(&a, &b)?;
    let ordered = list.ordered(d);
    let total: u128 = ordered.iter().map(|(w, m)| d.weyl_dimension(w) * u128::from(*m)).sum();
    let (decomp, tsv) = decomposition(d, &ordered);
    Ok(Output {
        json: json!({
            "lhs": d.dynkin(&a),
            "rhs": d.dynkin(&b),
            "decomposition": decomp,
            "dimension": total.to_string(),
        }),
        tsv,
    })
}

fn branch(d: RootDatum, lambda: &str, levi: &[usize]) -> Result<Output> {
    let ring = RepRing::new(d);
    let d = ring.datum();
    let lam = dominant(d, lambda)?;
    if let Some(&bad) = levi.iter().find(|&&i| i == 0 || i > d.rank) {
        bail!(nilcone_core::Error::domain(format!("simple-root index {bad} out of range 1..={}", d.rank)));
    }
    let subset: Vec<usize> = levi.iter().map(|i| i - 1).collect();
    let l = RepRing::new(d.levi(&subset)?);
    let list = ring.restrict_to_levi(&l, &lam)?;
    let ordered = list.ordered(l.datum());
    let (decomp, tsv) = decomposition(d, &ordered);
    Ok(Output {
        json: json!({
            "lambda": d.dynkin(&lam),
            "levi": l.datum().name,
            "decomposition": decomp,
        }),
        tsv,
    })
}

fn qanalog(d: RootDatum, lambda: &str, mu: &str) -> Result<Output> {
    let qa = QAnalogs::new(d);
    let d = qa.datum();
    let (lam, m) = (dominant(d, lambda)?, weight(d, mu)?);
    let p = qa.lusztig_q_analog(&lam, &m)?;
    Ok(Output {
        json: json!({ "lambda": d.dynkin(&lam), "mu": d.dynkin(&m), "polynomial": poly_json(&p) }),
        tsv: poly_tsv(&p),
    })
}

fn bk_verify(d: RootDatum, cap: usize, lambda: &str, mu: Option<&str>) -> Result<Output> {
    let ring = RepRing::new(d);
    let d = ring.datum().clone();
    let lam = dominant(&d, lambda)?;
    let rep = build_irrep::<Rational>(&ring, &lam, cap)?;
    let qa = QAnalogs::from_arc(ring.datum_arc());
    let weights: Vec<Weight> = match mu {
        Some(s) => vec![weight(&d, s)?],
        None => rep.weights().to_vec(),
    };
    let mut rows = Vec::new();
    let mut tsv = String::from("weight\tequal\tbrute_force\tpredicted\n");
    let mut all = true;
    for w in &weights {
        let v = nilpotent::verify_theorem_filtrations(&rep, &qa, w)?;
        all &= v.equal;
        let _ = writeln!(tsv, "{}\t{}\t{}\t{}", labels(&d, w), v.equal, v.brute_force, v.predicted);
        rows.push(json!({
            "weight": d.dynkin(w),
            "equal": v.equal,
            "brute_force": poly_json(&v.brute_force),
            "predicted": poly_json(&v.predicted),
        }));
    }
    Ok(Output {
        json: json!({ "lambda": d.dynkin(&lam), "all_equal": all, "weights": rows }),
        tsv,
    })
}

fn free_object(d: &RootDatum, items: &[String]) -> Result<FreeObject> {
    let mut obj = FreeObject::new();
    for item in items {
        let (l, deg) = match item.split_once('@') {
            Some((l, i)) => (
                l,
                i.trim()
                    .parse::<i64>()
                    .map_err(|_| anyhow!(nilcone_core::Error::domain(format!("bad internal degree in '{item}'"))))?,
            ),
            None => (item.as_str(), 0),
        };
        obj.push(dominant(d, l)?, deg);
    }
    Ok(obj)
}

fn hom(d: RootDatum, cap: usize, source: &[String], target: &[String], route: Route) -> Result<Output> {
    let cat = OrlovCategory::new(d, cap);
    let d = cat.datum();
    let (a, b) = (free_object(d, source)?, free_object(d, target)?);
    let profile = match route {
        Route::Kostant => cat.hom_profile_kostant(&a, &b)?,
        Route::Slice => cat.hom_profile_slice(&a, &b)?,
        Route::Both => {
            let k = cat.hom_profile_kostant(&a, &b)?;
            let s = cat.hom_profile_slice(&a, &b)?;
            if k != s {
                bail!(nilcone_core::Error::domain("the Kostant and slice routes disagree"));
            }
            k
        }
    };
    let mut tsv = String::from("internal\tcohomological\tdim\n");
    for (&(i, k), n) in profile.table() {
        let _ = writeln!(tsv, "{i}\t{k}\t{n}");
    }
    let mut json = serde_json::to_value(&profile)?;
    json["morphisms"] = json!(profile.morphisms());
    Ok(Output { json, tsv })
}

fn hilbert(d: RootDatum, n: u32) -> Result<Output> {
    let ring = RepRing::new(d);
    let exps = nilpotent::exponents(&ring)?;
    let qa = QAnalogs::from_arc(ring.datum_arc());
    let kostant = qa.hilbert_series_nilcone(n)?;
    let dim = ring.datum().rank + 2 * ring.datum().positive_roots().len();
    let product = complete_intersection_series(&exps, dim, n);
    if kostant != product {
        bail!(nilcone_core::Error::domain(format!("Hilbert series routes disagree through q^{n}")));
    }
    Ok(Output {
        json: json!({ "truncation": n, "exponents": exps, "series": poly_json(&kostant) }),
        tsv: poly_tsv(&kostant),
    })
}

fn poincare(d: RootDatum, n: u32) -> Result<Output> {
    let ring = RepRing::new(d);
    let exps = nilpotent::exponents(&ring)?;
    let p = nilpotent::poincare_series(&exps, n);
    Ok(Output {
        json: json!({ "truncation": n, "exponents": exps, "series": poly_json(&p) }),
        tsv: poly_tsv(&p),
    })
}

fn sl2_table(range: i64) -> Result<Output> {
    if range < 0 {
        bail!(nilcone_core::Error::domain(format!("range {range} is negative")));
    }
    let mut tables = Vec::new();
    let mut tsv = String::from("object\tlabel\tlayer\tic\tmultiplicity\n");
    let top = range - range.rem_euclid(2);
    for make in [sl2::standard_class, sl2::costandard_class, sl2::projective_class] {
        for n in (-top..=top).step_by(2) {
            let t = make(n)?;
            for (layer, ic, m) in t.rows() {
                let _ = writeln!(tsv, "{}\t{n}\t{layer}\t{ic}\t{m}", t.kind);
            }
            tables.push(t);
        }
    }
    Ok(Output {
        json: serde_json::to_value(&tables)?,
        tsv,
    })
}

fn sl2_profile(k: i64, lowest: i64) -> Result<Output> {
    let p = sl2::hom_complex_profile(k, lowest)?;
    let mut tsv = String::from("index\tdegree\tdim\n");
    for (i, dims) in &p.pieces {
        for (t, d) in dims.iter().enumerate() {
            let _ = writeln!(tsv, "{i}\t{}\t{d}", p.window.0 + t as i64);
        }
    }
    let pieces: Vec<Value> = p
        .pieces
        .iter()
        .rev()
        .map(|(&i, dims)| json!({ "index": i, "dims": dims, "euler_characteristic": p.euler_characteristic(i) }))
        .collect();
    Ok(Output {
        json: json!({
            "k": p.k,
            "window": [p.window.0, p.window.1],
            "pattern": p.pattern(),
            "exceptions": p.exceptions().into_iter().map(|(i, v)| json!({ "index": i, "dims": v })).collect::<Vec<_>>(),
            "pieces": pieces,
        }),
        tsv,
    })
}
