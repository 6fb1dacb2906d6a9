//! `resurgence` command-line tool.
//!
//! Exit codes: 0 success, 1 other errors, 2 parse or I/O errors,
//! 3 consistency violations, 4 resource caps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use resurgence::config::{OutputFormat, RunConfig};
use resurgence::engine::{self, Containment, SchemeContext};
use resurgence::fatpoints::{parse_scheme, MonomialFatScheme};
use resurgence::fleet::{self, FleetRow};
use resurgence::monomial::{format_ideal, parse_ideal, parse_monomial, MonomialIdeal};
use resurgence::newton::closure_of_power;
use resurgence::p2::{self, format_p2_scheme, parse_p2_scheme};
use resurgence::rational::to_pq;
use resurgence::vertices::{decompose_traced, verify_vertex_theorem};
use resurgence::{par, Error};

#[derive(Parser)]
#[command(name = "resurgence", version, about = "Resurgence and containment invariants of monomial fat point schemes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    epsilon: Option<String>,
    #[arg(long, global = true)]
    r_probe: Option<u32>,
    #[arg(long, global = true)]
    grid_cap: Option<u32>,
    #[arg(long, global = true)]
    t_check: Option<u32>,
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    format: Option<String>,
    /// Override any configuration key, e.g. `--set box_cap=1000`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full resurgence report for a scheme file.
    Report { scheme: PathBuf },
    /// Test `I^(m) ⊆ I^r`, `I^(m) ⊆ closure(I^r)` or `I^(m) ⊆ M^k I^r`.
    Contain {
        scheme: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "power")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        k: u64,
    },
    /// Minimal generators of `closure(I^t)` for an ideal file.
    Closure {
        ideal: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Minimal generators of `I^(m)`.
    Symbolic {
        scheme: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Waldschmidt constant with the upper bounds `α(I^(m))/m`.
    Waldschmidt {
        scheme: PathBuf,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
    },
    /// `ρ_int` (or `K` with `--k`) of an ideal or scheme file.
    RhoInt {
        input: PathBuf,
        #[arg(long)]
        k: bool,
    },
    /// Denkert bracket `A/(B+1) <= ρ`, `ρ̂ <= A/B`.
    Denkert {
        scheme: PathBuf,
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Exhaustive window search above `ρ̂`.
    DdWindow { scheme: PathBuf },
    /// The chain of criteria for `ρ = 1`.
    Criteria {
        scheme: PathBuf,
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Conjectured containments and Chudnovsky-type bounds.
    Conjectures {
        scheme: PathBuf,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
    },
    /// Decompose monomials of `I(mZ)` for `Z = p_1 + ... + p_N + 2 p_0`.
    Vertices {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        m: u32,
        /// Decompose this monomial instead of checking every generator.
        #[arg(long)]
        monomial: Option<String>,
    },
    /// Fat points at arbitrary positions in the plane.
    #[command(name = "points-p2")]
    PointsP2 {
        #[command(subcommand)]
        op: P2Op,
        /// Exact arithmetic over Q instead of F_p.
        #[arg(long, global = true)]
        rational: bool,
    },
    /// CSV summary over a fleet file.
    Fleet {
        fleet: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Power,
    Closure,
    Slack,
}

#[derive(Subcommand)]
enum P2Op {
    Hilbert {
        scheme: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u32,
    },
    Alpha {
        scheme: PathBuf,
        #[arg(long)]
        m: u32,
    },
    Regularity { scheme: PathBuf },
    /// Order of vanishing of `(I(mZ))_d` along the file's `line:`.
    Order {
        scheme: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u32,
    },
    /// Build the three-vertices-plus-five-collinear example.
    Ex3 {
        /// Also certify `I(25Z) ⊄ I(Z)^20` by orders along the line.
        #[arg(long)]
        certify: bool,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    /// Output was produced but a consistency flag failed.
    Inconsistent,
    /// Output was produced but a stage hit a resource cap.
    Exhausted,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Io { .. } => 2,
        Error::Consistency(_) => 3,
        Error::Resource { .. } => 4,
        _ => 1,
    }
}

fn build_config(g: &Global) -> Result<RunConfig, Failure> {
    let mut c = RunConfig::default();
    if let Some(path) = &g.config {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        c.apply_text(&text)?;
    }
    let flags = [
        ("epsilon", g.epsilon.clone()),
        ("r_probe", g.r_probe.map(|v| v.to_string())),
        ("grid_cap", g.grid_cap.map(|v| v.to_string())),
        ("t_check", g.t_check.map(|v| v.to_string())),
        ("prime", g.prime.map(|v| v.to_string())),
        ("seed", g.seed.map(|v| v.to_string())),
        ("threads", g.threads.map(|v| v.to_string())),
        ("format", g.format.clone()),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            c.set(k, &v, 0)?;
        }
    }
    for kv in &g.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        c.set(k.trim(), v.trim(), 0)?;
    }
    c.validate()?;
    Ok(c)
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn with_path<T>(path: &Path, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

fn load_scheme(path: &Path) -> Result<MonomialFatScheme, Error> {
    with_path(path, parse_scheme(&read(path)?))
}

/// An ideal file (`vars:` header) or a scheme file (`ambient:` header).
fn load_ideal(path: &Path) -> Result<MonomialIdeal, Error> {
    let text = read(path)?;
    let is_scheme = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("ambient:"));
    if is_scheme {
        with_path(path, parse_scheme(&text))?.ideal()
    } else {
        with_path(path, parse_ideal(&text))
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli, cfg: &RunConfig) -> Run {
    let settings = cfg.report_settings();
    match cli.command {
        Command::Report { scheme } => {
            let z = load_scheme(&scheme)?;
            let r = engine::resurgence_report(&z, &stem(&scheme), &settings)?;
            match cfg.format {
                OutputFormat::Json => print_json(&r),
                OutputFormat::Csv => print!("{}", fleet::csv_string(&[FleetRow::from_report(&r)])?),
            }
            if !r.consistent() {
                return Err(Failure::Inconsistent);
            }
            if r.resource_exhausted {
                return Err(Failure::Exhausted);
            }
        }
        Command::Contain { scheme, m, r, mode, k } => {
            let z = load_scheme(&scheme)?;
            let ctx = SchemeContext::new(&z, cfg.limits())?;
            let sym = ctx.symbolic_power(m)?;
            let verdict = match mode {
                Mode::Power => ctx.power_containment(&sym, m, r)?,
                Mode::Closure => ctx.closure_containment(&sym, m, r),
                Mode::Slack => match ctx.oracle.ideal_contained(&sym, r, k)? {
                    resurgence::Verdict::Contained => Containment::Contained,
                    resurgence::Verdict::Witness(monomial) => Containment::NotContained(engine::ContainmentWitness {
                        m,
                        r,
                        monomial,
                        flavor: engine::Flavor::SymbolicNotInPower,
                    }),
                },
            };
            let out = match verdict.witness() {
                None => json!({ "contained": true }),
                Some(w) => json!({ "contained": false, "witness": w.monomial.to_string() }),
            };
            println!("{out}");
        }
        Command::Closure { ideal, t } => {
            let i = load_ideal(&ideal)?;
            let c = closure_of_power(&i, t)?;
            match cfg.format {
                OutputFormat::Json => print_json(&json!({ "t": t, "generators": c.generators() })),
                OutputFormat::Csv => print!("{}", format_ideal(&c)),
            }
        }
        Command::Symbolic { scheme, m } => {
            let z = load_scheme(&scheme)?;
            let s = z.symbolic_power(m)?;
            match cfg.format {
                OutputFormat::Json => print_json(&json!({ "m": m, "alpha": s.alpha()?, "generators": s.generators() })),
                OutputFormat::Csv => print!("{}", format_ideal(&s)),
            }
        }
        Command::Waldschmidt { scheme, m_max } => {
            let z = load_scheme(&scheme)?;
            let bounds = (1..=m_max)
                .map(|m| Ok(json!({ "m": m, "alpha": z.alpha_symbolic(m)? })))
                .collect::<Result<Vec<_>, Error>>()?;
            print_json(&json!({
                "waldschmidt": to_pq(&z.waldschmidt()),
                "upper_bound": to_pq(&z.waldschmidt_upper(m_max)?),
                "alpha_symbolic": bounds,
            }));
        }
        Command::RhoInt { input, k } => {
            let i = load_ideal(&input)?;
            let s = if k {
                engine::k_search(&i, cfg.r_probe)?
            } else {
                engine::rho_int_search(&i, cfg.r_probe)?
            };
            print_json(&s);
        }
        Command::Denkert { scheme, a, s } => {
            let z = load_scheme(&scheme)?;
            print_json(&engine::denkert_estimate(&z, a, s, &cfg.epsilon, cfg.t_check)?);
        }
        Command::DdWindow { scheme } => {
            let z = load_scheme(&scheme)?;
            let rh = engine::rho_hat(&z, cfg.grid_cap)?;
            let w = engine::dd_window(&z, &rh, &cfg.epsilon)?;
            print_json(&json!({ "rho_hat": rh, "window": w }));
        }
        Command::Criteria { scheme, m_max } => {
            let z = load_scheme(&scheme)?;
            let r = engine::mt3_criteria(&z, m_max.unwrap_or(cfg.m_max))?;
            print_json(&r);
            if !r.chain_holds() {
                return Err(Failure::Inconsistent);
            }
        }
        Command::Conjectures { scheme, r_max, m_max } => {
            let z = load_scheme(&scheme)?;
            print_json(&engine::conjecture_checks(&z, r_max, m_max)?);
        }
        Command::Vertices { n, m, monomial } => match monomial {
            Some(text) => {
                let f = parse_monomial(&text, n + 1).map_err(|e| Error::Parse { line: 0, msg: e })?;
                let (factors, states) = decompose_traced(&f, n, m)?;
                print_json(&json!({ "monomial": f, "m": m, "factors": factors, "states": states }));
            }
            None => {
                let r = verify_vertex_theorem(n, m)?;
                print_json(&r);
                if !r.holds() {
                    return Err(Failure::Inconsistent);
                }
            }
        },
        Command::PointsP2 { op, rational } => {
            let field = cfg.field(rational)?;
            match op {
                P2Op::Hilbert { scheme, m, d } => {
                    let (z, _) = with_path(&scheme, parse_p2_scheme(&read(&scheme)?, field))?;
                    print_json(&p2::hilbert_info(&z, m, d)?);
                }
                P2Op::Alpha { scheme, m } => {
                    let (z, _) = with_path(&scheme, parse_p2_scheme(&read(&scheme)?, field))?;
                    print_json(&json!({ "m": m, "alpha": p2::alpha_p2(&z, m)?, "field": field }));
                }
                P2Op::Regularity { scheme } => {
                    let (z, _) = with_path(&scheme, parse_p2_scheme(&read(&scheme)?, field))?;
                    print_json(&json!({ "regularity": p2::regularity_reduced(&z)?, "field": field }));
                }
                P2Op::Order { scheme, m, d } => {
                    let (z, line) = with_path(&scheme, parse_p2_scheme(&read(&scheme)?, field))?;
                    let line = line.ok_or_else(|| Failure::Usage("scheme file has no `line:` entry".into()))?;
                    let k = p2::vanishing_order_on_line(&z, m, d, &line)?;
                    print_json(&json!({ "m": m, "d": d, "line": line, "order": k, "field": field }));
                }
                P2Op::Ex3 { certify } => {
                    let e = p2::build_ex3(cfg.seed, field)?;
                    let alphas = [1u32, 2, 4]
                        .iter()
                        .map(|&m| Ok(json!({ "m": m, "alpha": p2::alpha_p2(&e.scheme, m)? })))
                        .collect::<Result<Vec<_>, Error>>()?;
                    let cert = if certify {
                        Some(p2::line_noncontainment(&e.scheme, &e.line, 25, 20, 65)?)
                    } else {
                        None
                    };
                    print_json(&json!({
                        "seed": e.seed,
                        "attempts": e.attempts,
                        "field": field,
                        "scheme": format_p2_scheme(&e.scheme, Some(&e.line)),
                        "alpha": alphas,
                        "certificate": cert,
                    }));
                }
            }
        }
        Command::Fleet { fleet: path, out } => {
            let entries = fleet::read_fleet(&path)?;
            let rows: Vec<FleetRow> = fleet::run_fleet(&entries, &settings).into_iter().map(|r| r.0).collect();
            let csv = fleet::csv_string(&rows)?;
            match out {
                Some(p) => fs::write(&p, csv).map_err(|e| Error::io(&p, e))?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli.global) {
        Ok(c) => c,
        Err(f) => return report_failure(f),
    };
    match par::with_threads(cfg.threads, || run(cli, &cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report_failure(f),
    }
}

fn report_failure(f: Failure) -> ExitCode {
    match f {
        Failure::Lib(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Failure::Inconsistent => {
            eprintln!("error: consistency check failed");
            ExitCode::from(3)
        }
        Failure::Exhausted => {
            eprintln!("error: resource cap reached; partial output");
            ExitCode::from(4)
        }
    }
}
