mod cache;

use cache::{write_atomic, Cache};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use tlcenter::braidcenter::{
    braiding_checks, center_fusion_verify, center_hom_dim, center_object, predicted_center_fusion, CenterKind,
};
use tlcenter::crystal::{conjecture_evidence, halfbraid_solutions, SearchOptions};
use tlcenter::fusiondata::{
    fusion, modular_data, modular_domain, transparent_simples, FusionRing,
};
use tlcenter::primes::{algebraic_tower, integer_tower, parse_int_poly};
use tlcenter::qarith::{braiding_units, Scalar, ScalarDomain};
use tlcenter::stability::{center_label_agree, fusion_stability, hom_dim_profile, DEFAULT_KAPPA_MAX};
use tlcenter::tlcat::{
    gram_matrix, jones_wenzl, multiplicity_profile, negligible_rank, qtrace, SphericalConvention,
};
use tlcenter::Error;

#[derive(Parser)]
#[command(name = "tlcenter", version, about = "Exact computations in the Temperley–Lieb category and its Drinfeld center")]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Config {
    /// Quantum parameter: `generic`, `root:N` or `finite:p:d:c0,c1,…`.
    #[arg(long, global = true)]
    q: Option<String>,
    /// Level; without `--q` this selects `root:2κ`.
    #[arg(long, global = true)]
    kappa: Option<u32>,
    /// Braiding unit: an index into the list of units, or an explicit scalar.
    #[arg(long, global = true)]
    a: Option<String>,
    /// Spherical structure used for traces.
    #[arg(long, global = true, value_enum, default_value_t = Sign::Negative)]
    sign: Sign,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the artifact here (atomically) and print a summary.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cache Gram and Jones–Wenzl results in this directory.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Accepted for interface compatibility; every computation here is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size guard (strands for jw/gram, unknowns for crystal-search).
    #[arg(long, global = true)]
    max_size: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Negative,
    Positive,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fusion of two simple labels, or the whole table at a level.
    Fusion {
        /// Use the generic rule even if `--kappa` is set.
        #[arg(long)]
        generic: bool,
        m: Option<usize>,
        n: Option<usize>,
    },
    /// S and T matrices, dimensions and transparent simples at level κ.
    ModularData,
    /// The Jones–Wenzl projector on `n` strands.
    Jw {
        #[arg(long)]
        n: usize,
    },
    /// Rank of the trace form on End(n).
    Gram {
        #[arg(long)]
        n: usize,
    },
    /// Braiding units and the braiding axioms for each.
    Braidings {
        #[arg(long, default_value_t = 2)]
        max: usize,
    },
    /// Center fusion of two simples such as `M(1,0)` and `W(0,1)`.
    CenterFusion {
        x: String,
        y: String,
        /// Decompose by exact hom-space computations as well.
        #[arg(long)]
        verify: bool,
    },
    /// Check the half-braiding of one center simple.
    CenterVerify { x: String },
    /// Search for half-braidings in the crystal category.
    CrystalSearch {
        /// Summands of the object, e.g. `0,0` or `3`.
        object: Option<String>,
        /// Run the evidence sweep up to this arity instead.
        #[arg(long)]
        evidence: Option<usize>,
    },
    /// Prime tower for an integer or an integer polynomial in `x`.
    PrimeTower {
        target: String,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
    /// Stabilization in κ of filtered data.
    Stability {
        #[arg(value_enum)]
        quantity: Quantity,
        /// `n` for hom dimensions, `r` for the windows.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_KAPPA_MAX)]
        kappa_max: u32,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Quantity {
    Hom,
    Fusion,
    Center,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Artifact, Failure>;

/// What a subcommand produced: the artifact in the requested format and a
/// short summary.
struct Artifact {
    body: String,
    summary: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Config {
    fn domain(&self) -> Result<ScalarDomain, Failure> {
        match (&self.q, self.kappa) {
            (Some(q), _) => Ok(ScalarDomain::from_spec(q)?),
            (None, Some(k)) => Ok(modular_domain(k)?),
            (None, None) => Ok(ScalarDomain::generic()),
        }
    }

    fn unit(&self, dom: &ScalarDomain) -> Result<Scalar, Failure> {
        let units = braiding_units(dom)?;
        match &self.a {
            None => units.first().cloned().ok_or_else(|| usage("no braiding unit in this domain")),
            Some(s) => match s.parse::<usize>() {
                Ok(i) => units
                    .get(i)
                    .cloned()
                    .ok_or_else(|| usage(format!("--a {i}: only {} braiding units", units.len()))),
                Err(_) => Ok(dom.parse(s)?),
            },
        }
    }

    fn convention(&self) -> SphericalConvention {
        match self.sign {
            Sign::Negative => SphericalConvention::Negative,
            Sign::Positive => SphericalConvention::Positive,
        }
    }

    fn guard(&self, what: &str, n: usize, default: usize) -> Result<(), Failure> {
        let max = self.max_size.unwrap_or(default);
        if n > max {
            return Err(Failure::Domain(Error::Resource(format!("{what} = {n} exceeds --max-size {max}"))));
        }
        Ok(())
    }

    fn render_json(&self, v: &Value) -> String {
        serde_json::to_string_pretty(v).expect("json") + "\n"
    }

    fn no_csv(&self, cmd: &str) -> Result<(), Failure> {
        if self.format == Format::Csv {
            return Err(usage(format!("{cmd} has no CSV form; use --format text or json")));
        }
        Ok(())
    }
}

fn parse_label(s: &str) -> Result<(CenterKind, usize, usize), Failure> {
    let t = s.trim();
    let kind = match t.chars().next().map(|c| c.to_ascii_uppercase()) {
        Some('M') => CenterKind::M,
        Some('W') => CenterKind::W,
        _ => return Err(usage(format!("label {s:?} must start with M or W"))),
    };
    let inner = t[1..].trim_start_matches('(').trim_end_matches(')');
    let nums: Vec<usize> = inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| usage(format!("bad label {s:?}; expected e.g. M(1,0)"))))
        .collect::<Result<_, _>>()?;
    match nums.as_slice() {
        [i, j] => Ok((kind, *i, *j)),
        _ => Err(usage(format!("bad label {s:?}; expected e.g. M(1,0)"))),
    }
}

fn label_str(x: (CenterKind, usize, usize)) -> String {
    format!("{}({},{})", x.0, x.1, x.2)
}

fn run_fusion(cfg: &Config, generic: bool, m: Option<usize>, n: Option<usize>) -> Out {
    let kappa = if generic { 0 } else { cfg.kappa.unwrap_or(0) };
    match (m, n) {
        (Some(m), Some(n)) => {
            let labels = fusion(m, n, kappa)?;
            let text = labels.iter().map(|l| format!("T{l}")).collect::<Vec<_>>().join(" + ");
            let text = if text.is_empty() { "0".to_string() } else { text };
            let body = match cfg.format {
                Format::Text => format!("{text}\n"),
                Format::Json => cfg.render_json(&json!({"m": m, "n": n, "kappa": kappa, "summands": labels})),
                Format::Csv => {
                    std::iter::once("label".to_string()).chain(labels.iter().map(|l| l.to_string())).collect::<Vec<_>>().join("\n")
                        + "\n"
                }
            };
            Ok(Artifact { body, summary: format!("T{m} ⊗ T{n} = {text}") })
        }
        (None, None) => {
            if kappa == 0 {
                return Err(usage("the full table needs --kappa"));
            }
            let ring = FusionRing::new(kappa)?;
            let body = match cfg.format {
                Format::Csv => ring.to_csv(),
                Format::Json => cfg.render_json(&json!({"kappa": kappa, "labels": ring.labels, "N": ring.n})),
                Format::Text => {
                    let mut s = String::new();
                    for a in 0..ring.rank() {
                        for b in a..ring.rank() {
                            let f = fusion(a, b, kappa)?;
                            let t: Vec<String> = f.iter().map(|l| format!("T{l}")).collect();
                            s.push_str(&format!("T{a} ⊗ T{b} = {}\n", if t.is_empty() { "0".into() } else { t.join(" + ") }));
                        }
                    }
                    s
                }
            };
            let summary = format!("fusion table at κ={kappa}: {} labels, associative = {}", ring.rank(), ring.is_associative());
            Ok(Artifact { body, summary })
        }
        _ => Err(usage("give both labels or neither")),
    }
}

fn run_modular(cfg: &Config) -> Out {
    let kappa = cfg.kappa.or_else(|| cfg.domain().ok().and_then(|d| d.kappa())).ok_or_else(|| usage("modular-data needs --kappa"))?;
    let dom = match &cfg.q {
        Some(_) => cfg.domain()?,
        None => modular_domain(kappa)?,
    };
    let a = cfg.unit(&dom)?;
    let md = modular_data(kappa, &dom, &a)?;
    let ring = FusionRing::new(kappa)?;
    let transparent = transparent_simples(&md)?;
    let modular = !md.determinant()?.is_zero();
    let verlinde = md.verlinde_holds(&ring);
    let summary = format!(
        "κ={kappa}, a={}: rank {}, S symmetric = {}, modular = {modular}, Verlinde = {verlinde}, transparent = {transparent:?}",
        a.render(),
        md.rank(),
        md.is_symmetric()
    );
    let body = match cfg.format {
        Format::Json => {
            let mut v = md.to_json(&ring, &transparent)?;
            v["verlinde"] = json!(verlinde);
            cfg.render_json(&v)
        }
        Format::Csv => md.s_csv(),
        Format::Text => {
            let mut s = format!("{summary}\nS =\n");
            for row in &md.s {
                s.push_str(&format!("  [{}]\n", row.iter().map(|x| x.render()).collect::<Vec<_>>().join(", ")));
            }
            s.push_str(&format!("T = [{}]\n", md.t.iter().map(|x| x.render()).collect::<Vec<_>>().join(", ")));
            s
        }
    };
    Ok(Artifact { body, summary })
}

fn run_jw(cfg: &Config, n: usize, cache: &Option<Cache>) -> Out {
    cfg.guard("n", n, 10)?;
    let dom = cfg.domain()?;
    let key = format!("jw|n={n}|sign={:?}|{:?}", cfg.convention(), cfg.format);
    let compute = || -> Result<(String, String), Failure> {
        let p = jones_wenzl(n, &dom)?;
        let tr = qtrace(&p, cfg.convention())?;
        let summary = format!("JW_{n} at {}: {} terms, qtrace = {}", dom.describe_q(), p.len(), tr.render());
        let body = match cfg.format {
            Format::Json => cfg.render_json(&json!({
                "n": n,
                "q": dom.fingerprint(),
                "terms": p.iter().map(|(d, c)| json!({"diagram": d.to_string(), "coeff": c.render()})).collect::<Vec<_>>(),
                "qtrace": tr.render(),
            })),
            Format::Csv => {
                let mut s = String::from("diagram,coeff\n");
                for (d, c) in p.iter() {
                    s.push_str(&format!("\"{d}\",\"{}\"\n", c.render()));
                }
                s
            }
            Format::Text => format!("{summary}\n{p}\n"),
        };
        Ok((body, summary))
    };
    cached(cache, &key, &dom, compute)
}

fn run_gram(cfg: &Config, n: usize, cache: &Option<Cache>) -> Out {
    cfg.guard("n", n, 8)?;
    let dom = cfg.domain()?;
    let key = format!("gram|n={n}|{:?}", cfg.format);
    let compute = || -> Result<(String, String), Failure> {
        let r = negligible_rank(n, &dom)?;
        let expected = match dom.kappa() {
            Some(k) => Some(multiplicity_profile(n, k)?.values().map(|c| c * c).sum::<u64>()),
            None => None,
        };
        let summary = format!(
            "End({n}) at {}: dim {}, Gram rank {}{}",
            dom.describe_q(),
            r.dim,
            r.rank,
            expected.map(|e| format!(", expected Σc² = {e}")).unwrap_or_default()
        );
        let body = match cfg.format {
            Format::Json => cfg.render_json(&json!({
                "n": n, "q": dom.fingerprint(), "dim": r.dim, "rank": r.rank,
                "expected": expected, "primes_used": r.primes_used,
            })),
            Format::Csv => gram_matrix(n, &dom)
                .iter()
                .map(|row| row.iter().map(|x| format!("\"{}\"", x.render())).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n")
                + "\n",
            Format::Text => format!("{summary}\n"),
        };
        Ok((body, summary))
    };
    cached(cache, &key, &dom, compute)
}

fn cached(
    cache: &Option<Cache>,
    key: &str,
    dom: &ScalarDomain,
    compute: impl FnOnce() -> Result<(String, String), Failure>,
) -> Out {
    let full_key = format!("{key}|{}", dom.fingerprint());
    if let Some(c) = cache {
        if let (Some(body), Some(summary)) = (c.get(&full_key, "body"), c.get(&full_key, "summary")) {
            return Ok(Artifact { body, summary });
        }
    }
    let (body, summary) = compute()?;
    if let Some(c) = cache {
        c.put(&full_key, "body", &body).map_err(|e| usage(format!("cache: {e}")))?;
        c.put(&full_key, "summary", &summary).map_err(|e| usage(format!("cache: {e}")))?;
    }
    Ok(Artifact { body, summary })
}

fn run_braidings(cfg: &Config, max: usize) -> Out {
    cfg.guard("max", max, 3)?;
    cfg.no_csv("braidings")?;
    let dom = cfg.domain()?;
    let units = braiding_units(&dom)?;
    let reports = units.iter().map(|a| braiding_checks(&dom, a, max)).collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.passed());
    let summary = format!("{} braiding units at {}; all axioms hold = {ok}", units.len(), dom.describe_q());
    let body = match cfg.format {
        Format::Json => cfg.render_json(&json!({"q": dom.fingerprint(), "units": reports})),
        _ => {
            let mut s = format!("{summary}\n");
            for r in &reports {
                s.push_str(&format!(
                    "a = {}: hexagon {}, Yang–Baxter {}, naturality {}, invertible {}\n",
                    r.a, r.hexagon, r.yang_baxter, r.naturality, r.invertible
                ));
            }
            s
        }
    };
    Ok(Artifact { body, summary })
}

fn run_center_fusion(cfg: &Config, x: &str, y: &str, verify: bool) -> Out {
    cfg.no_csv("center-fusion")?;
    let (x, y) = (parse_label(x)?, parse_label(y)?);
    let table = predicted_center_fusion(x, y);
    let render = |v: &[tlcenter::braidcenter::Summand]| {
        v.iter().map(|s| format!("{}{}({},{})", if s.mult > 1 { format!("{}·", s.mult) } else { String::new() }, s.kind, s.i, s.j)).collect::<Vec<_>>().join(" + ")
    };
    let mut summary = format!("{} ⊗ {} = {}", label_str(x), label_str(y), render(&table));
    let mut v = json!({
        "x": label_str(x), "y": label_str(y),
        "predicted": table.iter().map(|s| json!({"kind": s.kind.to_string(), "i": s.i, "j": s.j, "mult": s.mult})).collect::<Vec<_>>(),
    });
    if verify {
        cfg.guard("total weight", x.1 + x.2 + y.1 + y.2, 6)?;
        let dom = cfg.domain()?;
        if !dom.is_generic() {
            return Err(usage("--verify runs at generic q"));
        }
        let a = cfg.unit(&dom)?;
        let t = center_fusion_verify(x, y, &dom, &a)?;
        summary.push_str(&format!("\nverified by hom dimensions: matches = {}, underlying = {}", t.matches, t.underlying_ok));
        v["verification"] = t.to_json();
    }
    let body = match cfg.format {
        Format::Json => cfg.render_json(&v),
        _ => format!("{summary}\n"),
    };
    Ok(Artifact { body, summary })
}

fn run_center_verify(cfg: &Config, x: &str) -> Out {
    cfg.no_csv("center-verify")?;
    let x = parse_label(x)?;
    cfg.guard("i+j", x.1 + x.2, 4)?;
    let dom = cfg.domain()?;
    let a = cfg.unit(&dom)?;
    let obj = center_object(x.0, x.1, x.2, &dom, &a)?;
    let ok = obj.check()?;
    let end = center_hom_dim(&obj, &obj)?;
    let strands = if obj.n() == 1 { "strand" } else { "strands" };
    let summary = format!("{} on {} {strands}: half-braiding = {ok}, dim End = {end}", label_str(x), obj.n());
    let body = match cfg.format {
        Format::Json => cfg.render_json(&json!({
            "object": label_str(x), "q": dom.fingerprint(), "a": a.render(),
            "strands": obj.n(), "half_braiding": ok, "end_dim": end,
        })),
        _ => format!("{summary}\n"),
    };
    Ok(Artifact { body, summary })
}

fn run_crystal(cfg: &Config, object: Option<&str>, evidence: Option<usize>) -> Out {
    cfg.no_csv("crystal-search")?;
    let (v, summary) = match (object, evidence) {
        (_, Some(m)) => {
            if m > 5 {
                return Err(usage("--evidence takes m ≤ 5"));
            }
            let r = conjecture_evidence(m)?;
            let s = format!("crystal evidence up to m={m}: {} searches, {} idempotents, consistent = {}", r.items.len(), r.idempotents.len(), r.all_consistent);
            (r.to_json(), s)
        }
        (Some(o), None) => {
            let summands: Vec<usize> = o
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| usage(format!("bad object {o:?}; expected e.g. 0,0"))))
                .collect::<Result<_, _>>()?;
            let opts = SearchOptions { max_vars: cfg.max_size.unwrap_or(SearchOptions::default().max_vars) };
            let r = halfbraid_solutions(&summands, 5, opts)?;
            let s = format!("{}: {} ({} unknowns, verified = {})", r.object, r.conclusion, r.unknowns, r.verified);
            (r.to_json(), s)
        }
        (None, None) => return Err(usage("give an object such as 0,0 or --evidence M")),
    };
    let body = match cfg.format {
        Format::Json => cfg.render_json(&v),
        _ => format!("{summary}\n"),
    };
    Ok(Artifact { body, summary })
}

fn run_tower(cfg: &Config, target: &str, k_max: u32) -> Out {
    let report = match target.trim().parse::<i64>() {
        Ok(q) => integer_tower(q, k_max)?,
        Err(_) => algebraic_tower(&parse_int_poly(target)?, k_max)?,
    };
    let summary = format!(
        "tower for {}: primes {:?}{}",
        report.polynomial,
        report.primes(),
        if report.misses.is_empty() { String::new() } else { format!(", {} level(s) without a prime", report.misses.len()) }
    );
    let body = match cfg.format {
        Format::Json => cfg.render_json(&report.to_json()),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut s = format!("{summary}\n");
            for e in &report.entries {
                s.push_str(&format!("k={:<3} p={:<22} d={} root={} order={}\n", e.k, e.p, e.d, e.root_string(), e.order));
            }
            for m in &report.misses {
                s.push_str(&format!("k={:<3} none: {}\n", m.k, m.detail));
            }
            s
        }
    };
    Ok(Artifact { body, summary })
}

fn run_stability(cfg: &Config, q: Quantity, size: usize, kappa_max: u32) -> Out {
    cfg.no_csv("stability")?;
    let r = match q {
        Quantity::Hom => hom_dim_profile(size, kappa_max)?,
        Quantity::Fusion => fusion_stability(size, kappa_max)?,
        Quantity::Center => center_label_agree(size, kappa_max)?,
    };
    let summary = format!(
        "{}: {}{}",
        r.quantity,
        r.verdict,
        r.threshold.map(|t| format!(" from κ = {t}")).unwrap_or_default()
    );
    let body = match cfg.format {
        Format::Json => cfg.render_json(&r.to_json()),
        _ => r.to_text(),
    };
    Ok(Artifact { body, summary })
}

fn run(cli: &Cli) -> Out {
    let cfg = &cli.cfg;
    let cache = match &cfg.cache_dir {
        Some(d) => Some(Cache::open(d).map_err(|e| usage(format!("cache directory {}: {e}", d.display())))?),
        None => None,
    };
    match &cli.cmd {
        Cmd::Fusion { generic, m, n } => run_fusion(cfg, *generic, *m, *n),
        Cmd::ModularData => run_modular(cfg),
        Cmd::Jw { n } => run_jw(cfg, *n, &cache),
        Cmd::Gram { n } => run_gram(cfg, *n, &cache),
        Cmd::Braidings { max } => run_braidings(cfg, *max),
        Cmd::CenterFusion { x, y, verify } => run_center_fusion(cfg, x, y, *verify),
        Cmd::CenterVerify { x } => run_center_verify(cfg, x),
        Cmd::CrystalSearch { object, evidence } => run_crystal(cfg, object.as_deref(), *evidence),
        Cmd::PrimeTower { target, k_max } => run_tower(cfg, target, *k_max),
        Cmd::Stability { quantity, size, kappa_max } => run_stability(cfg, *quantity, *size, *kappa_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(art) => match &cli.cfg.out {
            Some(path) => {
                if let Err(e) = write_atomic(path, art.body.as_bytes()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(3);
                }
                println!("{}", art.summary);
                ExitCode::SUCCESS
            }
            None => {
                print!("{}", art.body);
                ExitCode::SUCCESS
            }
        },
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}\n\nRun with --help for usage.");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Resource(_)) { 4 } else { 3 })
        }
    }
}
