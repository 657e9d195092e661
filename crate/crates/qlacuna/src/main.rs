//! Command-line front end: claim sweeps, factorization tables, selfcheck.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use qlacuna::error::{Error, Result};
use qlacuna::lacunary::LacunaryParams;
use qlacuna::sweep::{
    self, parse_range_spec, OutputFormat, ShowKind, SweepSpec, ALL_CLAIMS,
};

#[derive(Parser)]
#[command(
    name = "qlacuna",
    version,
    about = "Lacunary q-binomial sums: cyclotomic divisors and congruence certificates",
    long_about = None
)]
struct Cli {
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Output format: one JSON certificate per line, a table, or counts only.
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Jsonl)]
    output: OutputArg,

    /// Let exploratory-flagged certificates affect the exit code.
    #[arg(long, global = true)]
    strict: bool,

    /// Stop emitting after the first effective failure.
    #[arg(long, global = true)]
    fail_fast: bool,

    /// Restart point: comma-separated `name=value` pairs fixing every
    /// parameter of the claim; tuples before it are skipped.
    #[arg(long, global = true, value_name = "TUPLE")]
    resume_from: Option<String>,

    /// Include wall_time_ms in JSON certificates (off by default so that
    /// identical invocations emit byte-identical output).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Jsonl,
    Table,
    Summary,
}

impl From<OutputArg> for OutputFormat {
    fn from(a: OutputArg) -> Self {
        match a {
            OutputArg::Jsonl => OutputFormat::Jsonl,
            OutputArg::Table => OutputFormat::Table,
            OutputArg::Summary => OutputFormat::Summary,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify one claim family over parameter ranges.
    ///
    /// Range syntax: inclusive `a..b`, sets `a,b,c`, combinable as
    /// `1..4,7`. Omitted parameters use claim-specific defaults (residues
    /// run over their full range).
    Verify {
        /// Claim id, e.g. theorem1, corollary1, lucas-t, wl, andrews,
        /// thm3, s-thm, sdcq, sdc, fleck, weisman, sun-wan, ds, sd, sdt, dst.
        claim: String,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        j: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        fail: Option<String>,
        /// Shorthand for `--n 1..N`.
        #[arg(long, value_name = "N", conflicts_with = "n")]
        n_max: Option<i64>,
        /// Shorthand for `--c 1..N`.
        #[arg(long, value_name = "N", conflicts_with = "c")]
        c_max: Option<i64>,
        /// Shorthand for `--l 0..N`.
        #[arg(long, value_name = "N", conflicts_with = "l")]
        l_max: Option<i64>,
        /// Shorthand for `--h a,b,c`.
        #[arg(long, value_name = "SET", conflicts_with = "h", allow_hyphen_values = true)]
        h_set: Option<String>,
    },
    /// Render a cyclotomic factorization table.
    Show {
        /// qfactorial | qbinomial | theorem1-divisor
        kind: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        c: Option<i64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, default_value_t = 0)]
        l: i64,
        /// Also print each Phi_d expanded.
        #[arg(long)]
        expanded: bool,
    },
    /// Run the fast oracle-equivalence suites.
    Selfcheck,
}

fn parse_resume(spec: &str) -> Result<Vec<(String, i64)>> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidResumeTuple(format!("`{part}` is not name=value")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidResumeTuple(format!("bad value in `{part}`")))?;
        out.push((key.trim().to_string(), value));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<i32> {
    let stdout = std::io::stdout();
    let mut sink = stdout.lock();
    match cli.command {
        Command::Verify {
            claim,
            n,
            c,
            r,
            l,
            h,
            b,
            s,
            t,
            p,
            alpha,
            m,
            j,
            k,
            fail,
            n_max,
            c_max,
            l_max,
            h_set,
        } => {
            let mut ranges: HashMap<String, Vec<i64>> = HashMap::new();
            let pairs = [
                ("n", n.or(n_max.map(|v| format!("1..{v}")))),
                ("c", c.or(c_max.map(|v| format!("1..{v}")))),
                ("r", r),
                ("l", l.or(l_max.map(|v| format!("0..{v}")))),
                ("h", h.or(h_set)),
                ("b", b),
                ("s", s),
                ("t", t),
                ("p", p),
                ("alpha", alpha),
                ("m", m),
                ("j", j),
                ("k", k),
                ("fail", fail),
            ];
            for (name, spec) in pairs {
                if let Some(spec) = spec {
                    ranges.insert(name.to_string(), parse_range_spec(&spec)?);
                }
            }
            let spec = SweepSpec {
                claim_id: claim,
                ranges,
                output: cli.output.into(),
                parallelism: cli.jobs,
                fail_fast: cli.fail_fast,
                strict: cli.strict,
                resume_from: cli.resume_from.as_deref().map(parse_resume).transpose()?,
                with_timing: cli.timings,
            };
            sweep::run_sweep(&spec, &mut sink)
        }
        Command::Show {
            kind,
            n,
            k,
            c,
            r,
            l,
            expanded,
        } => {
            let need = |v: Option<i64>, what: &str| {
                v.ok_or_else(|| Error::InvalidParameter(format!("show {kind} needs --{what}")))
            };
            let kind = match kind.as_str() {
                "qfactorial" => {
                    let n = need(n, "n")?;
                    ShowKind::Qfactorial {
                        n: u64::try_from(n)
                            .map_err(|_| Error::InvalidParameter("n must be >= 0".into()))?,
                    }
                }
                "qbinomial" => {
                    let n = need(n, "n")?;
                    ShowKind::Qbinomial {
                        n: u64::try_from(n)
                            .map_err(|_| Error::InvalidParameter("n must be >= 0".into()))?,
                        k: need(k, "k")?,
                    }
                }
                "theorem1-divisor" => {
                    let n = need(n, "n")?;
                    let c = need(c, "c")?;
                    let params = LacunaryParams::new(
                        u32::try_from(n)
                            .map_err(|_| Error::InvalidParameter("n must be >= 1".into()))?,
                        u32::try_from(c)
                            .map_err(|_| Error::InvalidParameter("c must be >= 1".into()))?,
                        r,
                        u32::try_from(l)
                            .map_err(|_| Error::InvalidParameter("l must be >= 0".into()))?,
                        0,
                    )?;
                    ShowKind::Theorem1Divisor { params }
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown kind `{other}` (qfactorial, qbinomial, theorem1-divisor)"
                    )))
                }
            };
            sweep::show_factorization(kind, expanded, cli.output.into(), &mut sink)
        }
        Command::Selfcheck => sweep::selfcheck(&mut sink),
    }
}

fn main() {
    let cli = Cli::parse();
    let cache_file: Option<PathBuf> = std::env::var_os("QLACUNA_CACHE_DIR")
        .map(|dir| PathBuf::from(dir).join("phi_cache.qlc"));
    if let Some(path) = &cache_file {
        if path.exists() {
            if let Err(e) = qlacuna::cyclotomic::load_phi_cache(path) {
                eprintln!("qlacuna: ignoring unreadable cache {}: {e}", path.display());
            }
        }
    }
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qlacuna: {e}");
            if let Error::UnknownClaim(..) = e {
                eprintln!(
                    "valid claims: {}",
                    ALL_CLAIMS
                        .iter()
                        .map(|c| c.id())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            2
        }
    };
    if let Some(path) = &cache_file {
        if let Err(e) = qlacuna::cyclotomic::save_phi_cache(path) {
            eprintln!("qlacuna: could not save cache {}: {e}", path.display());
        }
    }
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
