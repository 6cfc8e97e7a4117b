//! `pellpad` — certified pipeline for Pell equations whose solution
//! x-coordinates are sums of two Padovan numbers.

use clap::{Args, Parser, Subcommand, ValueEnum};
use pellpad::bigreal::BigReal;
use pellpad::pell::{EqKind, Family};
use pellpad::{cert, contfrac, padovan, pell, pipeline, reduction, search};
use rug::Integer;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pellpad", version, about = "Certified Pell/Padovan bound pipeline")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Unit,
    Quad,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Unit => Family::Unit,
            FamilyArg::Quad => Family::Quad,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EqArg {
    UnitPlus,
    UnitMinus,
    QuadPlus,
    QuadMinus,
}

impl EqArg {
    fn kind(self) -> EqKind {
        match self {
            EqArg::UnitPlus => EqKind::new(Family::Unit, 1),
            EqArg::UnitMinus => EqKind::new(Family::Unit, -1),
            EqArg::QuadPlus => EqKind::new(Family::Quad, 1),
            EqArg::QuadMinus => EqKind::new(Family::Quad, -1),
        }
    }
    fn family(self) -> Family {
        self.kind().family
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Padovan sequence utilities
    Padovan {
        #[command(subcommand)]
        cmd: PadovanCmd,
    },
    /// Pell fundamentals and solution sequences
    Pell {
        #[command(subcommand)]
        cmd: PellCmd,
    },
    /// Continued-fraction expansions and quotient bounds
    Cf {
        #[command(subcommand)]
        cmd: CfCmd,
    },
    /// Individual reduction primitives
    Reduce {
        #[command(subcommand)]
        cmd: ReduceCmd,
    },
    /// Full bound pipeline with certificate output
    Pipeline {
        #[command(subcommand)]
        cmd: PipelineCmd,
    },
    /// Final searches in the reduced box
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Re-verify a written certificate
    Verify {
        /// Path to a certificate JSON file
        path: String,
    },
}

#[derive(Subcommand)]
enum PadovanCmd {
    /// Print P_n
    Value { n: usize },
    /// Canonical two-term representations of x
    Reps {
        x: String,
        #[arg(long, default_value_t = 414)]
        nmax: usize,
    },
}

#[derive(Subcommand)]
enum PellCmd {
    /// Fundamental solution for d
    Fundamental {
        #[arg(short)]
        d: String,
        #[arg(long, value_enum, default_value = "unit")]
        family: FamilyArg,
    },
    /// x_k for the fundamental of d
    Xk {
        #[arg(short)]
        d: String,
        #[arg(short)]
        k: u64,
        #[arg(long, value_enum, default_value = "unit")]
        family: FamilyArg,
    },
    /// All (d, y) with x1^2 - d y^2 = eps (or 4 eps)
    RecoverD {
        x1: String,
        #[arg(long, default_value_t = 1)]
        eps: i32,
        #[arg(long, value_enum, default_value = "unit")]
        family: FamilyArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TauArg {
    /// log(2a)/log(alpha) (unit family)
    Tau,
    /// |log a|/log(alpha) (quad family)
    TauPrime,
}

#[derive(Subcommand)]
enum CfCmd {
    /// Certified partial quotients of tau or tau'
    Expand {
        #[arg(long, value_enum, default_value = "tau")]
        tau: TauArg,
        #[arg(long, default_value_t = 24)]
        terms: usize,
    },
    /// Legendre quotient bound a(M) for tau or tau'
    Legendre {
        #[arg(long, value_enum, default_value = "tau")]
        tau: TauArg,
        #[arg(short)]
        m: String,
        #[arg(long, default_value_t = 340)]
        terms: usize,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Exponent-recovery bound 2^r H (log H)^r
    Gl {
        #[arg(short)]
        r: u32,
        #[arg(long)]
        h: String,
    },
    /// Logarithmic Weil height of p/q
    Height {
        p: String,
        q: String,
    },
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long, value_enum)]
    eq: EqArg,
    /// Sampled LLL sweeps (the default; flag accepted for explicitness)
    #[arg(long, default_value_t = false)]
    sample: bool,
    /// Sweep every lambda instead of the sampled set (hours, not CI)
    #[arg(long, default_value_t = false, conflicts_with = "sample")]
    full: bool,
    /// Output path for the certificate JSON
    #[arg(long, default_value = "cert.json")]
    out: String,
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Absolute Matveev-chain bounds only
    Absolute {
        #[arg(long, value_enum)]
        eq: EqArg,
    },
    /// Run the complete chain and write a certificate
    Certify(PipelineArgs),
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Brute-force sweep over nonsquare d <= dmax (all four equations)
    Sweep {
        #[arg(long, default_value_t = 1000)]
        dmax: u64,
        #[arg(long, default_value_t = 248)]
        kmax: u64,
        #[arg(long, default_value_t = 414)]
        nmax: usize,
    },
    /// Scan the known exceptional d for one family
    Final {
        #[arg(long, value_enum)]
        eq: EqArg,
    },
}

fn parse_int(s: &str) -> pellpad::Result<Integer> {
    if s.contains(['e', 'E', '.']) {
        // scientific anchors must denote exact integers
        return std::panic::catch_unwind(|| pipeline::int_anchor(s))
            .map_err(|_| pellpad::Error::Usage(format!("not an integer: {s}")));
    }
    s.parse()
        .map_err(|_| pellpad::Error::Usage(format!("not an integer: {s}")))
}

fn env_prec() -> u32 {
    std::env::var("PELLPAD_PRECISION_BITS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(320)
}

fn run() -> pellpad::Result<()> {
    let cli = Cli::parse();
    let prec = env_prec();
    match cli.cmd {
        Cmd::Padovan { cmd } => match cmd {
            PadovanCmd::Value { n } => println!("{}", padovan::padovan(n)),
            PadovanCmd::Reps { x, nmax } => {
                let x = parse_int(&x)?;
                let reps = padovan::representations(&x, nmax);
                println!("{}", serde_json::json!({ "x": x.to_string(), "representations": reps }));
            }
        },
        Cmd::Pell { cmd } => match cmd {
            PellCmd::Fundamental { d, family } => {
                let d = parse_int(&d)?;
                let f = pell::fundamental(&d, family.into())?;
                println!(
                    "{}",
                    serde_json::json!({
                        "d": f.d.to_string(), "x1": f.x1.to_string(),
                        "y1": f.y1.to_string(), "eps": f.eps
                    })
                );
            }
            PellCmd::Xk { d, k, family } => {
                let d = parse_int(&d)?;
                let f = pell::fundamental(&d, family.into())?;
                println!("{}", pell::solution_x(&f, k));
            }
            PellCmd::RecoverD { x1, eps, family } => {
                let x1 = parse_int(&x1)?;
                let pairs = pell::recover_d(&x1, family.into(), eps)?;
                let rows: Vec<_> = pairs
                    .iter()
                    .map(|(d, y)| serde_json::json!({ "d": d.to_string(), "y": y.to_string() }))
                    .collect();
                println!("{}", serde_json::json!(rows));
            }
        },
        Cmd::Cf { cmd } => match cmd {
            CfCmd::Expand { tau, terms } => {
                let family = match tau {
                    TauArg::Tau => Family::Unit,
                    TauArg::TauPrime => Family::Quad,
                };
                let cf = pipeline::tau_expansion(family, terms)?;
                let qs: Vec<String> = cf.quotients.iter().map(|q| q.to_string()).collect();
                println!("{}", serde_json::json!({ "source": cf.source, "quotients": qs }));
            }
            CfCmd::Legendre { tau, m, terms } => {
                let family = match tau {
                    TauArg::Tau => Family::Unit,
                    TauArg::TauPrime => Family::Quad,
                };
                let m = parse_int(&m)?;
                let cf = pipeline::tau_expansion(family, terms)?;
                let lb = contfrac::legendre_bound(&cf, &m)?;
                println!(
                    "{}",
                    serde_json::json!({
                        "n_index": lb.n_index, "a_max": lb.a_max.to_string(),
                        "a_max_index": lb.a_max_index
                    })
                );
            }
        },
        Cmd::Reduce { cmd } => match cmd {
            ReduceCmd::Gl { r, h } => {
                let hv = BigReal::from_decimal(&h, prec)?;
                let out = reduction::gl_resolve(r, &hv)?;
                println!("{}", out.to_sci_string(6));
            }
            ReduceCmd::Height { p, q } => {
                let p = parse_int(&p)?;
                let q = parse_int(&q)?;
                let h = reduction::height_rational(&p, &q, prec)?;
                println!("{}", h.to_sci_string(12));
            }
        },
        Cmd::Pipeline { cmd } => match cmd {
            PipelineCmd::Absolute { eq } => {
                let ab = pipeline::absolute_bounds(eq.family())?;
                println!("{}", serde_json::to_string_pretty(&ab).unwrap());
                search::require(ab.all_ok(), "absolute bound stage failed")?;
            }
            PipelineCmd::Certify(args) => {
                let family = args.eq.family();
                let mode = if args.full {
                    pipeline::SweepMode::Full
                } else {
                    pipeline::SweepMode::Sample
                };
                let ab = pipeline::absolute_bounds(family)?;
                let fr = pipeline::first_reduction(family, mode)?;
                let fin = pipeline::final_reduction(family, mode)?;
                let ds = fin.scan_ds.clone();
                let n_box = fin.n2_anchor.max(fin.n2_final) as usize;
                let k_box = fin.k2_anchor.max(fin.k2_computed) as u64;
                let scan = search::scan_final(family, &ds, k_box, n_box, 2)?;
                let tr = search::verify_theorems(&scan, Some(family));
                let c = cert::build_certificate(family, ab, fr, fin, Some(tr));
                let json = c.to_json()?;
                std::fs::write(&args.out, &json)
                    .map_err(|e| pellpad::Error::Usage(format!("write {}: {e}", args.out)))?;
                let checks = c.verify();
                for (label, ok) in &checks {
                    println!("{}: {}", label, if *ok { "ok" } else { "MISMATCH" });
                }
                search::require(
                    checks.iter().all(|(_, ok)| *ok),
                    "certificate contains mismatched stages",
                )?;
                println!("certificate written to {}", args.out);
            }
        },
        Cmd::Search { cmd } => match cmd {
            SearchCmd::Sweep { dmax, kmax, nmax } => {
                let m = search::small_d_sweep(dmax, kmax, nmax)?;
                for (label, dm) in &m {
                    for (d, recs) in dm {
                        let xs: Vec<&str> = recs.iter().map(|r| r.x_value.as_str()).collect();
                        println!("{label} d={d}: {}", xs.join(", "));
                    }
                }
            }
            SearchCmd::Final { eq } => {
                let family = eq.family();
                let ds = search::known_exceptional_ds(family);
                let m = search::scan_final(family, &ds, 248, 414, 2)?;
                println!("{}", serde_json::to_string_pretty(&serde_json::json!(
                    m.iter().map(|(label, dm)| {
                        (label.clone(), dm.iter().map(|(d, recs)| {
                            (d.to_string(), recs.clone())
                        }).collect::<Vec<_>>())
                    }).collect::<Vec<_>>()
                )).unwrap());
            }
        },
        Cmd::Verify { path } => {
            let body = std::fs::read_to_string(&path)
                .map_err(|e| pellpad::Error::Usage(format!("read {path}: {e}")))?;
            let c = cert::Certificate::from_json(&body)?;
            let checks = c.verify();
            for (label, ok) in &checks {
                println!("{}: {}", label, if *ok { "ok" } else { "MISMATCH" });
            }
            search::require(
                checks.iter().all(|(_, ok)| *ok),
                "certificate verification failed",
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
