//! The `sporadic` command-line front end.

pub mod cache;
pub mod config;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::acceptance::{run_all, Context, G_PRECISION};
use crate::arith::{padic_valuation, primes_in, rat, Valuation};
use crate::congruence::{
    dim_cusp_forms, serre_faltings_on, twist_elimination, twist_report, verify_asd,
    verify_stienstra_beukers, verify_theorem1, verify_three_cover, CongruenceReport, GammaCheck,
    ReportRow, Status,
};
use crate::error::{usage, Error, Result};
use crate::pointcount::{expected_det, rho_det_with, Cover, TraceSource};
use crate::qseries::{derive_sj_relation, format_relation, verify_picard_fuchs, RelationSearch};
use crate::sequences::{f_values, search_hits_csv, search_integral};

pub use cache::{Cache, CacheEntry, CachedTraces, EntryKind};
pub use config::{Format, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "sporadic",
    version,
    about = "Exact checks for the sporadic sequence (17,6,72), its weight three cusp form and K3 fibration"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// key = value configuration file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cache directory (else config, $SPORADIC_CACHE_DIR, .sporadic-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Series truncation N (coefficients of w^0 .. w^(N-1))
    #[arg(long, global = true, allow_negative_numbers = true)]
    terms: Option<i64>,
    #[arg(long, global = true)]
    max_prime: Option<u64>,
    #[arg(long, global = true)]
    m_max: Option<u64>,
    #[arg(long, global = true)]
    r_max: Option<u32>,
    /// Cover exponent, 2 or 3
    #[arg(long, global = true)]
    cover: Option<u32>,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: i64 = lo.parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi.parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Subcommand)]
enum Command {
    /// F(0..=n) from the recurrence
    Sequences {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Triples (A,B,C) in a box with integral prefixes
    Search {
        #[arg(long, default_value = "0..20", value_parser = parse_range, allow_hyphen_values = true)]
        a: RangeInclusive<i64>,
        #[arg(long, default_value = "0..10", value_parser = parse_range, allow_hyphen_values = true)]
        b: RangeInclusive<i64>,
        #[arg(long, default_value = "-20..80", value_parser = parse_range, allow_hyphen_values = true)]
        c: RangeInclusive<i64>,
        #[arg(long, default_value_t = 30)]
        depth: usize,
    },
    /// Coefficients of g, t, s, P or j in w
    Series {
        #[arg(long, default_value = "g")]
        name: String,
    },
    /// Picard-Fuchs residuals in both readings
    PfCheck,
    /// Polynomial relation between s and j
    SjRelation {
        #[arg(long, default_value_t = 24)]
        deg_s: usize,
        #[arg(long, default_value_t = 1)]
        deg_j: usize,
    },
    /// Frobenius trace with per-fiber breakdown
    Trace {
        #[arg(long, conflicts_with = "q")]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// det from A_p and A_{p^2} against (-24/p) p^2
    Det {
        #[arg(long, default_value_t = 7)]
        p: u64,
    },
    /// gamma(p) from extraction, point counts and CM
    Gamma,
    /// F((p-1)/2) = gamma(p) mod p
    Theorem1,
    /// Weight three three-term congruences on g
    Asd {
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7, 11, 13])]
        p: Vec<u64>,
    },
    /// Congruence for the Apery numbers b_n
    StienstraBeukers,
    /// Trace and determinant table with sign patterns
    SerreFaltings,
    /// Witnesses eliminating quadratic twists
    Twists,
    /// F((p-1)/3) against the three-cover trace
    ThreeCover,
    /// Dimension of odd weight cusp forms
    Dim {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        genus: u64,
        #[arg(long, default_value_t = 0)]
        regular_cusps: u64,
        #[arg(long, default_value_t = 0)]
        irregular_cusps: u64,
        #[arg(long, value_delimiter = ',')]
        elliptic: Vec<u64>,
    },
    /// Every acceptance criterion, as a summary matrix
    All,
    /// Inspect or empty the cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
enum CacheAction {
    Status,
    Clear,
}

struct Env<'a> {
    cfg: RunConfig,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

fn emit_report(env: &mut Env<'_>, report: &CongruenceReport) -> Result<i32> {
    let text = match env.cfg.format() {
        Format::Text => {
            let summary = format!(
                "{} rows, {} not passing\n",
                report.rows.len(),
                report.failures().count()
            );
            report.to_text() + &summary
        }
        Format::Records => report.to_records(),
        Format::Csv => report.to_csv(),
    };
    env.out.write_all(text.as_bytes())?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn open_cache(cfg: &RunConfig) -> Result<Cache> {
    Cache::open(cfg.resolved_cache_dir())
}

fn flush_log(env: &mut Env<'_>, cache: &Cache) -> Result<()> {
    for line in cache.take_log() {
        writeln!(env.err, "cache: {line}")?;
    }
    Ok(())
}

fn cover(cfg: &RunConfig) -> Cover {
    cfg.cover.unwrap_or(Cover::Two)
}

fn execute(command: Command, env: &mut Env<'_>) -> Result<i32> {
    let cfg = env.cfg.clone();
    match command {
        Command::Sequences { n } => {
            let values = f_values(n);
            let mut text = match cfg.format() {
                Format::Csv => String::from("n,F\n"),
                _ => String::new(),
            };
            for (i, v) in values.iter().enumerate() {
                text.push_str(&match cfg.format() {
                    Format::Text => format!("{i} {v}\n"),
                    Format::Csv => format!("{i},{v}\n"),
                    Format::Records => format!("{{\"n\":{i},\"F\":\"{v}\"}}\n"),
                });
            }
            env.out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Search { a, b, c, depth } => {
            let hits = search_integral(a, b, c, depth);
            env.out.write_all(search_hits_csv(&hits).as_bytes())?;
            Ok(0)
        }
        Command::Series { name } => {
            let n = cfg.terms.unwrap_or(20);
            let cache = open_cache(&cfg)?;
            let s = cache.series(&name, n)?;
            flush_log(env, &cache)?;
            let start = s.valuation().unwrap_or(0).min(0);
            let mut text = match cfg.format() {
                Format::Csv => String::from("n,num,den\n"),
                _ => String::new(),
            };
            for e in start..n {
                let c = s.coeff(e);
                let (num, den) = (c.numer(), c.denom());
                text.push_str(&match cfg.format() {
                    Format::Text => format!("{e} {c}\n"),
                    Format::Csv => format!("{e},{num},{den}\n"),
                    Format::Records => {
                        format!("{{\"n\":{e},\"num\":\"{num}\",\"den\":\"{den}\"}}\n")
                    }
                });
            }
            env.out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::PfCheck => {
            let n = cfg.terms.unwrap_or(300);
            let check = verify_picard_fuchs(n);
            let ordinary = check
                .ordinary_residual
                .leading()
                .map_or("0".to_string(), |(e, c)| format!("{c} t^{e}"));
            writeln!(
                env.out,
                "theta reading: residual zero mod t^{}: {}\nordinary reading: leading residual {ordinary}",
                check.theta_residual.precision(),
                check.theta_vanishes()
            )?;
            Ok(if check.theta_vanishes() { 0 } else { 1 })
        }
        Command::SjRelation { deg_s, deg_j } => {
            let n = cfg.terms.unwrap_or(80);
            match derive_sj_relation(deg_s, deg_j, n)? {
                RelationSearch::Found(rel) => {
                    writeln!(
                        env.out,
                        "relation with deg_s = {}, deg_j = {}, vanishing mod w^{}:\n{}",
                        rel.deg_s(),
                        rel.deg_j(),
                        rel.verified_to,
                        format_relation(&rel.coeffs)
                    )?;
                    Ok(0)
                }
                RelationSearch::NoneInBounds => {
                    writeln!(
                        env.out,
                        "no relation with deg_s <= {deg_s}, deg_j <= {deg_j}"
                    )?;
                    Ok(1)
                }
            }
        }
        Command::Trace { p, q } => {
            let q = q.or(p).unwrap_or(7);
            let cache = open_cache(&cfg)?;
            let t = CachedTraces::new(&cache).full(q, cover(&cfg))?;
            flush_log(env, &cache)?;
            let mut text = String::new();
            match cfg.format() {
                Format::Text => {
                    text.push_str(&format!("q = {}, cover = {}\n", t.q, t.cover));
                    for f in t
                        .per_fiber
                        .iter()
                        .filter(|f| !matches!(f.kind, crate::pointcount::FiberKind::Smooth { .. }))
                    {
                        text.push_str(&format!(
                            "  {:>8}  {:<10} local trace {}\n",
                            f.param,
                            f.kind.to_string(),
                            f.local_trace
                        ));
                    }
                    let smooth: i64 = t
                        .per_fiber
                        .iter()
                        .filter(|f| matches!(f.kind, crate::pointcount::FiberKind::Smooth { .. }))
                        .map(|f| f.local_trace)
                        .sum();
                    let n_smooth = t
                        .per_fiber
                        .iter()
                        .filter(|f| matches!(f.kind, crate::pointcount::FiberKind::Smooth { .. }))
                        .count();
                    text.push_str(&format!(
                        "  {n_smooth} smooth fibers, local traces sum to {smooth}\n"
                    ));
                    text.push_str(&format!("A = {}\n", t.a));
                }
                Format::Csv => {
                    text.push_str("param,kind,local_trace\n");
                    for f in &t.per_fiber {
                        text.push_str(&format!("{},{},{}\n", f.param, f.kind, f.local_trace));
                    }
                    text.push_str(&format!("A,,{}\n", t.a));
                }
                Format::Records => {
                    for f in &t.per_fiber {
                        text.push_str(&format!(
                            "{{\"param\":\"{}\",\"kind\":\"{}\",\"local_trace\":{}}}\n",
                            f.param, f.kind, f.local_trace
                        ));
                    }
                    text.push_str(&format!("{{\"A\":{}}}\n", t.a));
                }
            }
            env.out.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Det { p } => {
            let cache = open_cache(&cfg)?;
            let traces = CachedTraces::new(&cache);
            let det = rho_det_with(&traces, p)?;
            let expected = expected_det(p)?;
            let a_p = traces.trace(p, Cover::Two)?;
            let a_p2 = traces.trace(p * p, Cover::Two)?;
            flush_log(env, &cache)?;
            let diff = BigInt::from(det - expected);
            let achieved = if diff.is_zero() {
                Valuation::Infinite
            } else {
                padic_valuation(&num_rational::BigRational::from_integer(diff), p)
            };
            let row = ReportRow::valuation(
                "det",
                p,
                None,
                None,
                Valuation::Infinite,
                achieved,
                format!("A_p = {a_p}, A_p2 = {a_p2}, det = {det}, (-24/p) p^2 = {expected}"),
            );
            emit_report(env, &CongruenceReport::new(vec![row]))
        }
        Command::Gamma => {
            let max = cfg.max_prime.unwrap_or(97);
            let n = cfg.terms_at_least(max as i64 + 1, max as i64 + 1)?;
            let cache = open_cache(&cfg)?;
            let g = cache.series("g", n)?;
            let traces = CachedTraces::new(&cache);
            let mut rows = Vec::new();
            for p in primes_in(5, max) {
                let check = GammaCheck::compute(p, &g, &traces)?;
                let agreed = check.agreed();
                let literal = match check.literal_reading() {
                    Some(true) => ", literal vanishing list: holds",
                    Some(false) => ", literal vanishing list: violated",
                    None => "",
                };
                let detail = format!(
                    "extraction {}, pointcount {}, cm {}{literal}",
                    check
                        .extraction
                        .map_or("none".to_string(), |v| v.to_string()),
                    check.pointcount,
                    check.cm
                );
                rows.push(ReportRow {
                    family: "gamma".to_string(),
                    p,
                    m: None,
                    r: None,
                    required: Valuation::Infinite,
                    achieved: if agreed.is_some() {
                        Valuation::Infinite
                    } else {
                        Valuation::Finite(0)
                    },
                    status: if agreed.is_some() {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    detail,
                });
            }
            flush_log(env, &cache)?;
            emit_report(env, &CongruenceReport::new(rows))
        }
        Command::Theorem1 => {
            let max = cfg.max_prime.unwrap_or(199);
            let n = cfg.terms_at_least(max as i64 + 1, max as i64 + 1)?;
            let cache = open_cache(&cfg)?;
            let g = cache.series("g", n)?;
            flush_log(env, &cache)?;
            emit_report(env, &verify_theorem1(max, &g)?)
        }
        Command::Asd { p } => {
            let n = cfg.terms.unwrap_or(1601);
            if p.is_empty() {
                return Err(usage("asd needs at least one prime"));
            }
            let cache = open_cache(&cfg)?;
            let g = cache.series("g", n)?;
            let traces = CachedTraces::new(&cache);
            let report = verify_asd(
                &g,
                &p,
                cfg.m_max.unwrap_or(9),
                cfg.r_max.unwrap_or(2),
                &traces,
            )?;
            flush_log(env, &cache)?;
            emit_report(env, &report)
        }
        Command::StienstraBeukers => emit_report(
            env,
            &verify_stienstra_beukers(5, cfg.max_prime.unwrap_or(100))?,
        ),
        Command::SerreFaltings => {
            let max = cfg.max_prime.unwrap_or(73);
            let n = cfg.terms_at_least(max as i64 + 1, max as i64 + 1)?;
            let cache = open_cache(&cfg)?;
            let g = cache.series("g", n)?;
            let traces = CachedTraces::new(&cache);
            let sf = serre_faltings_on(&primes_in(31, max), &g, &traces)?;
            flush_log(env, &cache)?;
            let mut report = sf.report.clone();
            report.rows.push(ReportRow::valuation(
                "sign-patterns",
                max,
                None,
                None,
                Valuation::Finite(8),
                Valuation::Finite(sf.covered as i64),
                format!(
                    "{} of 8 patterns of ((-1/p), (2/p), (3/p)) occur",
                    sf.covered
                ),
            ));
            emit_report(env, &report)
        }
        Command::Twists => {
            let max = cfg.max_prime.unwrap_or(100);
            let n = cfg.terms_at_least(max as i64 + 1, max as i64 + 1)?;
            let cache = open_cache(&cfg)?;
            let g = cache.series("g", n)?;
            let traces = CachedTraces::new(&cache);
            let witnesses = twist_elimination(&g, max, &traces)?;
            flush_log(env, &cache)?;
            emit_report(env, &twist_report(&witnesses))
        }
        Command::ThreeCover => {
            let cache = open_cache(&cfg)?;
            let traces = CachedTraces::new(&cache);
            let report = verify_three_cover(cfg.max_prime.unwrap_or(61), &traces)?;
            flush_log(env, &cache)?;
            emit_report(env, &report)
        }
        Command::Dim {
            k,
            genus,
            regular_cusps,
            irregular_cusps,
            elliptic,
        } => {
            let d = dim_cusp_forms(k, genus, regular_cusps, irregular_cusps, &elliptic)?;
            writeln!(env.out, "{d}")?;
            Ok(if d.is_integer() && d >= rat(0, 1) {
                0
            } else {
                1
            })
        }
        Command::All => {
            let cache = open_cache(&cfg)?;
            let start = Instant::now();
            let g = cache.series("g", cfg.terms.unwrap_or(G_PRECISION).max(G_PRECISION))?;
            writeln!(env.err, "series ready in {:.2?}", start.elapsed())?;
            let traces = CachedTraces::new(&cache);
            let results = run_all(&Context {
                g: &g,
                traces: &traces,
            });
            flush_log(env, &cache)?;
            let mut text = match cfg.format() {
                Format::Csv => String::from("id,title,pass,detail\n"),
                _ => String::new(),
            };
            for c in &results {
                writeln!(env.err, "criterion {:>2}: {:.2?}", c.id, c.elapsed)?;
                text.push_str(&match cfg.format() {
                    Format::Text => c.line() + "\n",
                    Format::Csv => format!("{},\"{}\",{},\"{}\"\n", c.id, c.title, c.pass, c.detail.replace('"', "'")),
                    Format::Records => {
                        serde_json::json!({"id": c.id, "title": c.title, "pass": c.pass, "detail": c.detail})
                            .to_string()
                            + "\n"
                    }
                });
            }
            let passed = results.iter().filter(|c| c.pass).count();
            if cfg.format() == Format::Text {
                text.push_str(&format!("{passed}/{} criteria pass\n", results.len()));
            }
            env.out.write_all(text.as_bytes())?;
            Ok(if passed == results.len() { 0 } else { 1 })
        }
        Command::Cache { action } => {
            let cache = open_cache(&cfg)?;
            match action {
                CacheAction::Status => {
                    let entries = cache.entries()?;
                    writeln!(env.out, "cache directory {}", cache.dir().display())?;
                    for e in &entries {
                        let kind = match e.kind {
                            EntryKind::Series => "series",
                            EntryKind::Counts => "counts",
                        };
                        let health = match &e.health {
                            Ok(s) => format!("ok, {s}"),
                            Err(reason) => format!("corrupt, {reason}"),
                        };
                        writeln!(env.out, "{kind} {} version {}: {health}", e.key, e.version)?;
                    }
                    writeln!(env.out, "{} entries", entries.len())?;
                }
                CacheAction::Clear => {
                    let removed = cache.clear()?;
                    writeln!(
                        env.out,
                        "removed {removed} entries from {}",
                        cache.dir().display()
                    )?;
                }
            }
            Ok(0)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code:
/// 0 when every check passes, 1 on a failure or anomaly, 2 on usage or
/// configuration errors.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run_parsed(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = match &e {
                Error::SeriesTooShort { needed, have } => writeln!(
                    err,
                    "error: {have} terms are not enough; the minimal sufficient value is --terms {needed}"
                ),
                _ => writeln!(err, "error: {e}"),
            };
            2
        }
    }
}

fn run_parsed(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let g = cli.global;
    let flags = RunConfig {
        terms: g.terms,
        max_prime: g.max_prime,
        m_max: g.m_max,
        r_max: g.r_max,
        cover: g.cover.map(Cover::from_exponent).transpose()?,
        cache_dir: g.cache_dir,
        format: g.format,
        workers: g.workers,
    };
    flags.validate()?;
    let file = match &g.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let cfg = flags.over(file);
    let workers = cfg
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| usage(format!("cannot start {workers} workers: {e}")))?;
    let mut env = Env { cfg, out, err };
    pool.install(|| execute(cli.command, &mut env))
}
