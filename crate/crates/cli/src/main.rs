//! `cubic`: experiment drivers for the involution group acting on the cubic
//! surfaces `x² + y² + z² + xyz = Ax + By + Cz + D`.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cubic_core::action::orbit_trace;
use cubic_core::cascade::{self, budget_for, fit_epsilon, run_cascade, CascadeOptions, Expansion, SampleSpec};
use cubic_core::cfmt::{format_c64, parse_point};
use cubic_core::explorer::{heatmap_from_file, scan, HeatField, RunConfig, SliceSpec};
use cubic_core::fatou::{bq_orbit_test, certify_monotone_escape, diagonal_escape_root, FatouStatus};
use cubic_core::fixed::{newton_fixed_points, property_p_screen, SeedStrategy};
use cubic_core::infinity::{build_gamma_ij, escape_cascade, GammaStyle};
use cubic_core::picard::verify_semiconjugacy;
use cubic_core::sampling::Domain;
use cubic_core::scalar::Precision;
use cubic_core::surface::{on_surface, surface_residual};
use cubic_core::word::{classify, cyclic_reduce, ind_attr, to_sl2};
use cubic_core::{re, ParamFamily, ParameterQuadruple, Point, Word};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cubic", version, about = "Orbit experiments on the cubic surfaces x²+y²+z²+xyz = Ax+By+Cz+D")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// markoff, picard, torus:D, dm:a, traces:a1,a2,a3,a4, kappa:k1,k2,k3,k4 or raw:A,B,C,D
    #[arg(long, default_value = "markoff")]
    params: String,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced spelling, conjugacy type, Γ(2) matrix and Ind/Attr of a word.
    ClassifyWord {
        /// Letters x, y, z composed right to left, or g-letters such as `gx gy^-1`.
        word: String,
    },
    /// CSV of the point after each letter of `word^repeat`.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1)]
        repeat: i64,
    },
    /// Monotone-escape certificate; exits 2 unless certified.
    CertifyFatou {
        #[command(flatten)]
        common: Common,
        /// Start point; defaults to the diagonal point (u, u, u) beyond the escape radius.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Finite-depth Bowditch-type orbit conditions.
    BqTest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Commutator cascade with measured sups against K/2ⁿ; exits 2 if decay fails.
    Cascade {
        #[command(flatten)]
        common: Common,
        /// Ball radius; fitted by halving from 0.5 when omitted.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 3)]
        levels: u32,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// double, dd or auto
        #[arg(long, default_value = "auto")]
        precision: String,
        #[arg(long, default_value_t = 0)]
        seed: u32,
        /// Near-return tolerance for Dubrovin–Mazzocco seeds.
        #[arg(long, default_value_t = 1e-3)]
        tau: f64,
    },
    /// Escape cascade towards the vertices at infinity.
    Escape {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "10000,2,3")]
        point: String,
        #[arg(long, default_value_t = 3)]
        levels: u32,
        /// Use Dubrovin–Mazzocco commutators with this power instead of the Markoff ones.
        #[arg(long)]
        dm_power: Option<u32>,
    },
    /// Semiconjugacy residuals at the Picard parameters; exits 1 on a breach.
    PicardVerify {
        #[arg(long, required = true)]
        word: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Multi-start fixed points of a word with their classification.
    FixedPoints {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fixed points of short hyperbolic words with trace near [−2, 2].
    PropertyP {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parameter scan to line-delimited JSON.
    Scan {
        /// Run configuration as JSON; otherwise built from the flags below.
        #[arg(long)]
        config: Option<PathBuf>,
        /// dm or torus
        #[arg(long, default_value = "dm")]
        slice: String,
        /// First coordinate range `lo,hi`.
        #[arg(long)]
        range1: Option<String>,
        /// Second coordinate range `lo,hi`.
        #[arg(long)]
        range2: Option<String>,
        /// Cells per coordinate `n1,n2`.
        #[arg(long, default_value = "64,1")]
        grid: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        levels: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        precision: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: PathBuf,
        /// Continue an interrupted scan written with the same configuration.
        #[arg(long)]
        resume: bool,
    },
    /// PPM heatmap of one field of a scan.
    Heatmap {
        #[arg(long)]
        input: PathBuf,
        /// cascade:N, fatou, fatou-words, escape or property-p
        #[arg(long, default_value = "cascade:0")]
        field: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn family(s: &str) -> Result<ParamFamily> {
    s.parse().with_context(|| format!("bad --params '{s}'"))
}

fn point(s: &str) -> Result<Point> {
    parse_point(s).with_context(|| format!("bad --point '{s}'"))
}

fn word(s: &str) -> Result<Word> {
    s.parse().with_context(|| format!("bad word '{s}'"))
}

fn emit<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn pair<T: std::str::FromStr>(s: &str) -> Result<[T; 2]> {
    let v: Vec<&str> = s.split(',').map(str::trim).collect();
    if v.len() != 2 {
        bail!("expected two comma-separated values, got '{s}'");
    }
    let get = |x: &str| x.parse::<T>().map_err(|_| anyhow::anyhow!("cannot parse '{x}'"));
    Ok([get(v[0])?, get(v[1])?])
}

#[derive(Serialize)]
struct WordReport {
    word: String,
    length: usize,
    kind: String,
    core: String,
    conjugator: String,
    g_letters: Option<String>,
    matrix: Option<[[String; 2]; 2]>,
    trace: Option<String>,
    ind: Option<String>,
    attr: Option<String>,
}

fn classify_word(s: &str) -> Result<WordReport> {
    let w = word(s)?;
    let (core, conj) = cyclic_reduce(&w);
    let m = to_sl2(&w).ok();
    let (ind, attr) = match ind_attr(&w) {
        Ok((i, a)) => (Some(format!("{i:?}")), Some(format!("{a:?}"))),
        Err(_) => (None, None),
    };
    Ok(WordReport {
        word: w.to_string(),
        length: w.len(),
        kind: format!("{:?}", classify(&w).kind),
        core: core.to_string(),
        conjugator: conj.to_string(),
        g_letters: w.to_g_string(),
        matrix: m.as_ref().map(|m| [[m.m11.to_string(), m.m12.to_string()], [m.m21.to_string(), m.m22.to_string()]]),
        trace: m.as_ref().map(|m| m.trace().to_string()),
        ind,
        attr,
    })
}

fn write_orbit(out: &Option<PathBuf>, p: &ParameterQuadruple, q: &Point, w: &Word) -> Result<()> {
    let rows = orbit_trace(p, w, q);
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CascadeOutput {
    family: String,
    seed_power: Option<u64>,
    tau: Option<f64>,
    epsilon: f64,
    #[serde(rename = "K")]
    k: f64,
    /// `K/2ⁿ` for each level.
    budget_line: Vec<f64>,
    level_sups: Vec<f64>,
    report: cascade::CascadeReport,
}

#[allow(clippy::too_many_arguments)]
fn run_cascade_cmd(
    fam: ParamFamily,
    label: &str,
    eps: Option<f64>,
    levels: u32,
    samples: usize,
    precision: Precision,
    seed: u32,
    tau: f64,
) -> Result<CascadeOutput> {
    let p = fam.params();
    let (level0, center, k, tau) = match fam {
        ParamFamily::Dm(a) => {
            let s = cascade::seed_dm(a, tau)?;
            (s.level, cascade::dm_p1(a), Some(s.k), Some(tau))
        }
        _ => (cascade::seed_markoff(&p), [re(0.0); 3], None, None),
    };
    let domain = if on_surface(&p, &center, 1e-12) { Domain::Surface } else { Domain::Ambient };
    let spec = SampleSpec { samples, domain, precision, seed };
    let epsilon = match eps {
        Some(e) => e,
        None => fit_epsilon(&level0, &p, &center, 0.5, &spec, 40)?,
    };
    let budget = budget_for(epsilon);
    let report = run_cascade(&level0, &p, &budget, &center, levels, &CascadeOptions { sample: spec, expansion: Expansion::Canonical })?;
    Ok(CascadeOutput {
        family: label.to_string(),
        seed_power: k,
        tau,
        epsilon,
        k: budget.k,
        budget_line: (0..=levels).map(|n| budget.level_bound(n)).collect(),
        level_sups: report.level_sups(),
        report,
    })
}

fn scan_config(
    slice: &str,
    range1: Option<String>,
    range2: Option<String>,
    grid: &str,
) -> Result<RunConfig> {
    let grid: [usize; 2] = pair(grid)?;
    let slice = match slice {
        "dm" => SliceSpec::Dm {
            a: range1.as_deref().map(pair).transpose()?.unwrap_or([-1.9, 1.9]),
            d_offset: range2.as_deref().map(pair).transpose()?.unwrap_or([0.0, 0.0]),
        },
        "torus" => SliceSpec::Torus {
            re: range1.as_deref().map(pair).transpose()?.unwrap_or([-4.0, 12.0]),
            im: range2.as_deref().map(pair).transpose()?.unwrap_or([-4.0, 4.0]),
        },
        other => bail!("unknown slice '{other}' (expected dm or torus)"),
    };
    Ok(RunConfig::new(slice, grid))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::ClassifyWord { word } => emit(&None, &classify_word(&word)?)?,
        Command::Orbit { common, point: q, word: w, repeat } => {
            let p = family(&common.params)?.params();
            write_orbit(&common.out, &p, &point(&q)?, &word(&w)?.pow(repeat))?;
        }
        Command::CertifyFatou { common, point: q, depth } => {
            let p = family(&common.params)?.params();
            let q = match q {
                Some(s) => point(&s)?,
                None => {
                    let u = diagonal_escape_root(&p)?;
                    eprintln!("start point (u, u, u) with u = {}", format_c64(u));
                    [u, u, u]
                }
            };
            let cert = certify_monotone_escape(&p, &q, depth);
            emit(&common.out, &cert)?;
            if cert.status != FatouStatus::Certified {
                return Ok(ExitCode::from(2));
            }
        }
        Command::BqTest { common, point: q, depth } => {
            let p = family(&common.params)?.params();
            emit(&common.out, &bq_orbit_test(&p, &point(&q)?, depth))?;
        }
        Command::Cascade { common, eps, levels, samples, precision, seed, tau } => {
            let fam = family(&common.params)?;
            let precision: Precision = precision.parse()?;
            let out = run_cascade_cmd(fam, &common.params, eps, levels, samples, precision, seed, tau)?;
            emit(&common.out, &out)?;
            if !out.report.decay_ok {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Escape { common, point: q, levels, dm_power } => {
            let mut p = family(&common.params)?.params();
            let q = point(&q)?;
            if !on_surface(&p, &q, 1e-9) {
                p.d += surface_residual(&p, &q);
                eprintln!("moved D to {} so that the start point lies on the surface", format_c64(p.d));
            }
            let style = dm_power.map_or(GammaStyle::MarkoffCommutators, GammaStyle::DmCommutators);
            emit(&common.out, &escape_cascade(&p, &build_gamma_ij(style), &q, levels)?)?;
        }
        Command::PicardVerify { word: words, samples, tol } => {
            let mut breach = false;
            for s in &words {
                let w = word(s)?;
                match verify_semiconjugacy(&w, samples) {
                    Ok(r) => {
                        let ok = r < tol;
                        breach |= !ok;
                        println!("{} {w} residual {r:.3e} over {samples} samples", if ok { "ok    " } else { "BREACH" });
                    }
                    Err(e) => {
                        breach = true;
                        println!("ERROR  {w} {e}");
                    }
                }
            }
            if breach {
                return Ok(ExitCode::from(1));
            }
        }
        Command::FixedPoints { common, word: w, seed } => {
            let p = family(&common.params)?.params();
            let strategy = SeedStrategy { seed, ..SeedStrategy::default() };
            emit(&common.out, &newton_fixed_points(&p, &word(&w)?, &strategy)?)?;
        }
        Command::PropertyP { common, maxlen, seed } => {
            let p = family(&common.params)?.params();
            let strategy = SeedStrategy { seed, ..SeedStrategy::light() };
            let flagged = property_p_screen(&p, maxlen, &strategy)?;
            eprintln!("{} flagged fixed points", flagged.len());
            emit(&common.out, &flagged)?;
        }
        Command::Scan {
            config,
            slice,
            range1,
            range2,
            grid,
            depth,
            levels,
            samples,
            precision,
            seed,
            workers,
            out,
            resume,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
                }
                None => scan_config(&slice, range1, range2, &grid)?,
            };
            if let Some(d) = depth {
                cfg.fatou_depth = d;
            }
            if let Some(l) = levels {
                cfg.cascade_levels = l;
            }
            if let Some(s) = samples {
                cfg.cascade_samples = s;
            }
            if let Some(p) = precision {
                cfg.precision = p.parse()?;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cfg.workers = workers;
            let summary = scan(&cfg, &out, resume)?;
            eprintln!(
                "config {}: {} cells, {} written, {} already present",
                summary.config_hash, summary.cells_total, summary.cells_written, summary.cells_skipped
            );
        }
        Command::Heatmap { input, field, out } => {
            let field: HeatField = field.parse()?;
            let img = heatmap_from_file(&input, field)?;
            img.write_ppm(&out)?;
            eprintln!("{}x{} pixmap written to {}", img.width, img.height, out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
