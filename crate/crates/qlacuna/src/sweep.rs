//! Parameter-sweep orchestration: claim registry, range expansion,
//! deterministic parallel execution, and certificate streaming.
//!
//! Sweeps enumerate tuples in lexicographic order over the declared
//! parameter ranges and emit one certificate per tuple in that order
//! regardless of parallelism. Exit codes: 0 when every asserted claim
//! holds, 1 on any effective failure, 2 on usage errors (mapped by the
//! binary from `Err` returns here).

use std::collections::HashMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::certificate::{Certificate, Witness};
use crate::classical::{self, PadicContext};
use crate::congruence;
use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::lacunary::{self, LacunaryParams};
use crate::polyring::IntPoly;
use crate::qcombo;

/// Output rendering for sweeps and `show`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Jsonl,
    Table,
    Summary,
}

/// One verifiable claim family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Theorem1,
    Corollary1,
    LucasT,
    LucasS,
    SignLemma,
    Wl,
    Andrews,
    Thm3,
    SThm,
    Sdcq,
    Sdc,
    Fleck,
    Weisman,
    SunWan,
    Ds,
    Sd,
    Sdt,
    Dst,
    /// Testing aid: emits a passing (`fail=0`) or failing (`fail=1`)
    /// certificate, for exercising the exit-code contract.
    Probe,
}

pub const ALL_CLAIMS: &[Claim] = &[
    Claim::Theorem1,
    Claim::Corollary1,
    Claim::LucasT,
    Claim::LucasS,
    Claim::SignLemma,
    Claim::Wl,
    Claim::Andrews,
    Claim::Thm3,
    Claim::SThm,
    Claim::Sdcq,
    Claim::Sdc,
    Claim::Fleck,
    Claim::Weisman,
    Claim::SunWan,
    Claim::Ds,
    Claim::Sd,
    Claim::Sdt,
    Claim::Dst,
    Claim::Probe,
];

impl Claim {
    pub fn id(&self) -> &'static str {
        match self {
            Claim::Theorem1 => "theorem1",
            Claim::Corollary1 => "corollary1",
            Claim::LucasT => "lucas-t",
            Claim::LucasS => "lucas-s",
            Claim::SignLemma => "sign-lemma",
            Claim::Wl => "wl",
            Claim::Andrews => "andrews",
            Claim::Thm3 => "thm3",
            Claim::SThm => "s-thm",
            Claim::Sdcq => "sdcq",
            Claim::Sdc => "sdc",
            Claim::Fleck => "fleck",
            Claim::Weisman => "weisman",
            Claim::SunWan => "sun-wan",
            Claim::Ds => "ds",
            Claim::Sd => "sd",
            Claim::Sdt => "sdt",
            Claim::Dst => "dst",
            Claim::Probe => "probe",
        }
    }

    pub fn from_id(id: &str) -> Result<Claim> {
        ALL_CLAIMS
            .iter()
            .copied()
            .find(|c| c.id() == id)
            .ok_or_else(|| {
                let valid = ALL_CLAIMS
                    .iter()
                    .map(|c| c.id())
                    .collect::<Vec<_>>()
                    .join(", ");
                Error::UnknownClaim(id.to_string(), valid)
            })
    }

    /// Parameter names in sweep (lexicographic) order.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Claim::Theorem1 | Claim::Corollary1 => &["n", "c", "r", "l", "h"],
            Claim::LucasT | Claim::LucasS => &["b", "c", "l", "n", "r", "s", "t"],
            Claim::SignLemma => &["b", "k", "t"],
            Claim::Wl => &["b", "n", "m"],
            Claim::Andrews => &["b", "j"],
            Claim::Thm3 | Claim::SThm => &["b", "c", "l", "n", "r"],
            Claim::Sdcq => &["p", "alpha", "l", "n", "r"],
            Claim::Sdc => &["p", "n", "r", "l"],
            Claim::Fleck => &["p", "n", "r"],
            Claim::Weisman => &["p", "alpha", "n", "r"],
            Claim::SunWan | Claim::Ds | Claim::Sd | Claim::Sdt | Claim::Dst => {
                &["p", "alpha", "n", "r", "l"]
            }
            Claim::Probe => &["fail"],
        }
    }

    /// Default range for one parameter, possibly depending on the values
    /// already fixed to its left (e.g. residues run over `0..c`).
    fn default_values(&self, name: &str, prefix: &[i64]) -> Vec<i64> {
        let range = |lo: i64, hi: i64| (lo..=hi).collect::<Vec<_>>();
        match self {
            Claim::Theorem1 | Claim::Corollary1 => match name {
                "n" => range(1, 12),
                "c" => range(1, 4),
                "r" => range(0, prefix[1] - 1),
                "l" => range(0, 2),
                _ => vec![0],
            },
            Claim::LucasT | Claim::LucasS => match name {
                "b" => vec![2, 3],
                "c" => vec![prefix[0], 2 * prefix[0]],
                "l" => range(0, 2),
                "n" => range(0, 4),
                "r" => range(0, 2),
                _ => range(0, prefix[0] - 1), // s, t
            },
            Claim::SignLemma => match name {
                "b" => range(2, 8),
                "k" => range(0, 5),
                _ => range(0, prefix[0] - 1),
            },
            Claim::Wl => match name {
                "b" => vec![5, 7],
                "n" => range(0, 5),
                _ => range(0, prefix[1]), // m
            },
            Claim::Andrews => match name {
                "b" => vec![5, 7, 11],
                _ => range(1, 3),
            },
            Claim::Thm3 | Claim::SThm => match name {
                "b" => vec![5, 7],
                "c" => vec![prefix[0], 2 * prefix[0]],
                "l" => range(0, 1),
                "n" => range(2, 5),
                _ => range(1, 3), // r
            },
            Claim::Sdcq => match name {
                "p" => vec![5, 7],
                "alpha" => vec![1],
                "l" => range(0, 2),
                "n" => range(0, 4),
                _ => range(0, prefix[0].pow(prefix[1] as u32) - 1), // r
            },
            Claim::Sdc => match name {
                "p" => vec![5, 7],
                "n" => range(1, 4),
                "r" => range(0, prefix[0] - 1),
                _ => range(0, 2), // l
            },
            Claim::Fleck => match name {
                "p" => vec![2, 3, 5],
                "n" => range(1, 20),
                _ => range(0, prefix[0] - 1),
            },
            Claim::Weisman | Claim::SunWan | Claim::Ds | Claim::Sd | Claim::Sdt | Claim::Dst => {
                match name {
                    "p" => vec![2, 3, 5],
                    "alpha" => range(1, 2),
                    "n" => range(1, 20),
                    "r" => range(0, prefix[0].pow(prefix[1] as u32) - 1),
                    _ => range(0, 3), // l
                }
            }
            Claim::Probe => vec![0],
        }
    }

    /// Runs one tuple. Parameter values arrive in `param_names()` order.
    pub fn check(&self, v: &[i64]) -> Result<Certificate> {
        match self {
            Claim::Theorem1 => {
                let p = LacunaryParams::new(u32_of(v[0], "n")?, u32_of(v[1], "c")?, v[2], u32_of(v[3], "l")?, v[4])?;
                Ok(lacunary::verify_theorem1(&p))
            }
            Claim::Corollary1 => {
                let p = LacunaryParams::new(u32_of(v[0], "n")?, u32_of(v[1], "c")?, v[2], u32_of(v[3], "l")?, v[4])?;
                Ok(lacunary::verify_corollary1(&p))
            }
            Claim::LucasT => congruence::verify_lucas_t(
                u32_of(v[0], "b")?,
                u32_of(v[1], "c")?,
                u32_of(v[2], "l")?,
                u32_of(v[3], "n")?,
                u32_of(v[4], "r")?,
                u32_of(v[5], "s")?,
                u32_of(v[6], "t")?,
            ),
            Claim::LucasS => congruence::verify_lucas_s(
                u32_of(v[0], "b")?,
                u32_of(v[1], "c")?,
                u32_of(v[2], "l")?,
                u32_of(v[3], "n")?,
                u32_of(v[4], "r")?,
                u32_of(v[5], "s")?,
                u32_of(v[6], "t")?,
            ),
            Claim::SignLemma => congruence::verify_sign_lemma(
                u32_of(v[0], "b")?,
                u32_of(v[1], "k")?,
                u32_of(v[2], "t")?,
            ),
            Claim::Wl => {
                congruence::verify_wl(u32_of(v[0], "b")?, u32_of(v[1], "n")?, u32_of(v[2], "m")?)
            }
            Claim::Andrews => {
                congruence::verify_andrews(u32_of(v[0], "b")?, u32_of(v[1], "j")?)
            }
            Claim::Thm3 => congruence::verify_thm3(
                u32_of(v[0], "b")?,
                u32_of(v[1], "c")?,
                u32_of(v[2], "l")?,
                u32_of(v[3], "n")?,
                u32_of(v[4], "r")?,
            ),
            Claim::SThm => congruence::verify_s_thm(
                u32_of(v[0], "b")?,
                u32_of(v[1], "c")?,
                u32_of(v[2], "l")?,
                u32_of(v[3], "n")?,
                u32_of(v[4], "r")?,
            ),
            Claim::Sdcq => congruence::verify_sdcq(
                u64_of(v[0], "p")?,
                u32_of(v[1], "alpha")?,
                u32_of(v[2], "l")?,
                u32_of(v[3], "n")?,
                u32_of(v[4], "r")?,
            ),
            Claim::Sdc => classical::verify_sdc(
                u64_of(v[0], "p")?,
                u32_of(v[1], "n")?,
                u32_of(v[2], "r")?,
                u32_of(v[3], "l")?,
            ),
            Claim::Fleck => classical::verify_fleck(u64_of(v[0], "p")?, u32_of(v[1], "n")?, v[2]),
            Claim::Weisman => {
                let ctx = PadicContext::new(u64_of(v[0], "p")?, u32_of(v[1], "alpha")?)?;
                Ok(classical::verify_weisman(&ctx, u32_of(v[2], "n")?, v[3]))
            }
            Claim::SunWan | Claim::Ds | Claim::Sd | Claim::Sdt | Claim::Dst => {
                let ctx = PadicContext::new(u64_of(v[0], "p")?, u32_of(v[1], "alpha")?)?;
                let (n, r, l) = (u32_of(v[2], "n")?, v[3], u32_of(v[4], "l")?);
                Ok(match self {
                    Claim::SunWan => classical::verify_sun_wan(&ctx, n, r, l),
                    Claim::Ds => classical::verify_ds(&ctx, n, r, l),
                    Claim::Sd => classical::verify_sd(&ctx, n, r, l),
                    Claim::Sdt => classical::verify_sdt(&ctx, n, r, l),
                    _ => classical::verify_dst(&ctx, n, r, l),
                })
            }
            Claim::Probe => {
                let cert = Certificate::new("probe", vec![("fail".into(), v[0])])
                    .with_modulus("testing probe");
                Ok(if v[0] == 0 {
                    cert.pass(Some(Witness::Poly(IntPoly::zero())))
                } else {
                    cert.fail(Some(Witness::Poly(IntPoly::one())))
                })
            }
        }
    }
}

fn u32_of(v: i64, name: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| {
        Error::InvalidParameter(format!("{name}={v} must be a non-negative 32-bit integer"))
    })
}

fn u64_of(v: i64, name: &str) -> Result<u64> {
    u64::try_from(v)
        .map_err(|_| Error::InvalidParameter(format!("{name}={v} must be non-negative")))
}

/// Parses a range expression: inclusive `a..b`, single values, and
/// comma-separated combinations (`1..4,7,9..10`). Empty ranges are errors.
pub fn parse_range_spec(spec: &str) -> Result<Vec<i64>> {
    let bad = |why: &str| Error::InvalidRange(spec.to_string(), why.to_string());
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(bad("empty component"));
        }
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| bad("bad lower bound"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad("bad upper bound"))?;
            if lo > hi {
                return Err(bad("empty range (lower bound exceeds upper)"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad("bad integer"))?);
        }
    }
    if out.is_empty() {
        return Err(bad("no values"));
    }
    Ok(out)
}

/// A sweep: claim, per-parameter overrides, output and scheduling options.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub claim_id: String,
    /// User-supplied ranges by parameter name; missing parameters use the
    /// claim's defaults.
    pub ranges: HashMap<String, Vec<i64>>,
    pub output: OutputFormat,
    pub parallelism: usize,
    pub fail_fast: bool,
    pub strict: bool,
    /// Skip every tuple before this one (inclusive restart point).
    pub resume_from: Option<Vec<(String, i64)>>,
    pub with_timing: bool,
}

impl SweepSpec {
    pub fn new(claim_id: &str) -> Self {
        SweepSpec {
            claim_id: claim_id.to_string(),
            ranges: HashMap::new(),
            output: OutputFormat::Jsonl,
            parallelism: 0,
            fail_fast: false,
            strict: false,
            resume_from: None,
            with_timing: false,
        }
    }
}

fn enumerate_tuples(claim: Claim, user: &HashMap<String, Vec<i64>>) -> Result<Vec<Vec<i64>>> {
    let names = claim.param_names();
    for key in user.keys() {
        if !names.contains(&key.as_str()) {
            return Err(Error::InvalidParameter(format!(
                "claim `{}` has no parameter `{key}` (expected one of {})",
                claim.id(),
                names.join(", ")
            )));
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(names.len());
    fill(claim, names, user, &mut prefix, &mut out);
    if out.is_empty() {
        return Err(Error::EmptySweep(format!(
            "no tuples for claim `{}`",
            claim.id()
        )));
    }
    Ok(out)
}

fn fill(
    claim: Claim,
    names: &[&str],
    user: &HashMap<String, Vec<i64>>,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if prefix.len() == names.len() {
        out.push(prefix.clone());
        return;
    }
    let name = names[prefix.len()];
    let values = match user.get(name) {
        Some(v) => v.clone(),
        None => claim.default_values(name, prefix),
    };
    for v in values {
        prefix.push(v);
        fill(claim, names, user, prefix, out);
        prefix.pop();
    }
}

fn resume_index(
    claim: Claim,
    tuples: &[Vec<i64>],
    resume: &[(String, i64)],
) -> Result<usize> {
    let names = claim.param_names();
    let mut target = vec![0i64; names.len()];
    let mut seen = vec![false; names.len()];
    for (key, value) in resume {
        match names.iter().position(|n| n == key) {
            Some(i) => {
                target[i] = *value;
                seen[i] = true;
            }
            None => {
                return Err(Error::InvalidResumeTuple(format!(
                    "unknown parameter `{key}`"
                )))
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidResumeTuple(format!(
            "tuple must fix every parameter ({})",
            names.join(", ")
        )));
    }
    tuples
        .iter()
        .position(|t| *t == target)
        .ok_or_else(|| Error::InvalidResumeTuple("tuple is not part of this sweep".into()))
}

fn render_table_line(cert: &Certificate) -> String {
    let params = cert
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let flags = if cert.flags.is_empty() {
        String::new()
    } else {
        format!(
            " [{}]",
            cert.flags
                .iter()
                .map(|f| f.as_str())
                .collect::<Vec<_>>()
                .join(",")
        )
    };
    format!(
        "{:<12} {:<40} {}{}",
        cert.claim_id,
        params,
        if cert.holds { "holds" } else { "FAILS" },
        flags
    )
}

/// Runs a sweep, streaming certificates to `sink` in deterministic
/// lexicographic tuple order. Returns the process exit code (0 all hold,
/// 1 any effective failure); usage problems surface as `Err` and map to
/// exit code 2.
pub fn run_sweep(spec: &SweepSpec, sink: &mut dyn Write) -> Result<i32> {
    let claim = Claim::from_id(&spec.claim_id)?;
    let tuples = enumerate_tuples(claim, &spec.ranges)?;
    let start = match &spec.resume_from {
        Some(tuple) => resume_index(claim, &tuples, tuple)?,
        None => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.parallelism)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;

    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut exploratory = 0usize;
    let mut effective_failure = false;
    let chunk_size = (pool.current_num_threads() * 8).max(32);
    'sweep: for chunk in tuples[start..].chunks(chunk_size) {
        let certs: Vec<Result<Certificate>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|tuple| {
                    let t0 = Instant::now();
                    claim.check(tuple).map(|mut cert| {
                        cert.wall_time_ms = t0.elapsed().as_millis() as u64;
                        cert
                    })
                })
                .collect()
        });
        for cert in certs {
            let cert = cert?;
            if cert.holds {
                passed += 1;
            } else {
                failed += 1;
            }
            if cert.is_exploratory() {
                exploratory += 1;
            }
            let counts = !cert.holds && (spec.strict || !cert.is_exploratory());
            match spec.output {
                OutputFormat::Jsonl => {
                    writeln!(sink, "{}", cert.to_json(spec.with_timing))?
                }
                OutputFormat::Table => writeln!(sink, "{}", render_table_line(&cert))?,
                OutputFormat::Summary => {}
            }
            if counts {
                effective_failure = true;
                if spec.fail_fast {
                    break 'sweep;
                }
            }
        }
    }
    if spec.output != OutputFormat::Jsonl {
        writeln!(
            sink,
            "swept {} tuple(s): {passed} hold, {failed} fail ({exploratory} exploratory)",
            passed + failed
        )?;
    }
    Ok(if effective_failure { 1 } else { 0 })
}

/// What `show` renders.
#[derive(Clone, Copy, Debug)]
pub enum ShowKind {
    Qfactorial { n: u64 },
    Qbinomial { n: u64, k: i64 },
    Theorem1Divisor { params: LacunaryParams },
}

/// Renders a factorization table (or its JSON form under `jsonl` output).
pub fn show_factorization(
    kind: ShowKind,
    expanded: bool,
    output: OutputFormat,
    sink: &mut dyn Write,
) -> Result<i32> {
    let factorization = match kind {
        ShowKind::Qfactorial { n } => cyclotomic::qfactorial_factorization(n),
        ShowKind::Qbinomial { n, k } => cyclotomic::qbinom_factorization(n, k)?,
        ShowKind::Theorem1Divisor { params } => lacunary::theorem1_divisor(&params),
    };
    match output {
        OutputFormat::Jsonl => {
            writeln!(sink, "{}", factorization.to_json(expanded))?;
        }
        _ => {
            writeln!(sink, "{:<6} {:<10} {}", "d", "exponent", if expanded { "Phi_d(q)" } else { "" })?;
            for (d, e) in factorization.iter() {
                if expanded {
                    writeln!(sink, "{d:<6} {e:<10} {}", cyclotomic::cyclotomic(d))?;
                } else {
                    writeln!(sink, "{d:<6} {e:<10}")?;
                }
            }
            if factorization.is_empty() {
                writeln!(sink, "(empty product: 1)")?;
            }
        }
    }
    Ok(0)
}

/// Fast oracle-equivalence suites; prints one line per suite and returns
/// the exit code.
pub fn selfcheck(sink: &mut dyn Write) -> Result<i32> {
    let mut ok = true;
    let mut run = |name: &str, pass: bool, sink: &mut dyn Write| -> Result<()> {
        writeln!(sink, "selfcheck {name}: {}", if pass { "ok" } else { "FAIL" })?;
        ok &= pass;
        Ok(())
    };

    let mut pascal_ok = true;
    for n in 0..=24u64 {
        for k in 0..=n {
            let pascal = qcombo::q_binomial(n, k as i64);
            let ratio = qcombo::q_factorial(n)
                .div_exact(&qcombo::q_factorial(k).mul(&qcombo::q_factorial(n - k)))?
                .expect("q-binomial is a polynomial");
            let lemma = cyclotomic::qbinom_factorization(n, k as i64)?.expand();
            pascal_ok &= pascal == ratio && pascal == lemma;
        }
    }
    run("q-binomial oracle equivalence (n <= 24)", pascal_ok, sink)?;

    let mut cyclo_ok = true;
    for d in 1..=60u64 {
        let mut prod = IntPoly::one();
        for e in cyclotomic::divisors(d) {
            prod = prod.mul(&cyclotomic::cyclotomic(e));
        }
        let target = IntPoly::monomial(1, d as usize).sub(&IntPoly::one());
        cyclo_ok &= prod == target;
    }
    run("cyclotomic product identity (d <= 60)", cyclo_ok, sink)?;

    let mut qbt_ok = true;
    for n in 0..=15 {
        for h in 1..=3 {
            qbt_ok &= qcombo::q_binomial_theorem_check(n, h).holds;
        }
    }
    run("q-binomial theorem (n <= 15)", qbt_ok, sink)?;

    let mut subst_ok = true;
    for b in 2..=7u64 {
        let mut c = b;
        while b * c <= 60 {
            subst_ok &= cyclotomic::cyclo_subst_identity_check(b, c)?.holds;
            c += b;
        }
    }
    run("Phi_bc(q) = Phi_c(q^b) (bc <= 60)", subst_ok, sink)?;

    let mut bridge_ok = true;
    for n in 1..=10u32 {
        for c in 1..=3u32 {
            for r in 0..c as i64 {
                for l in 0..=2u32 {
                    for h in [-1i64, 0, 2] {
                        let p = LacunaryParams::new(n, c, r, l, h)?;
                        let poly_side = lacunary::lacunary_sum_at_one(&p);
                        let int_side = classical::lacunary_int_sum(
                            n,
                            c,
                            r,
                            l,
                            classical::FactorMode::Binomial,
                        );
                        bridge_ok &= poly_side == int_side;
                    }
                }
            }
        }
    }
    run("q = 1 bridge to integer sums", bridge_ok, sink)?;

    Ok(if ok { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range_spec("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range_spec("1..3,7").unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(parse_range_spec("-2..1").unwrap(), vec![-2, -1, 0, 1]);
        assert_eq!(parse_range_spec("5").unwrap(), vec![5]);
        assert!(parse_range_spec("5..4").is_err());
        assert!(parse_range_spec("").is_err());
        assert!(parse_range_spec("a..b").is_err());
    }

    #[test]
    fn claim_ids_round_trip() {
        for claim in ALL_CLAIMS {
            assert_eq!(Claim::from_id(claim.id()).unwrap(), *claim);
        }
        assert!(matches!(
            Claim::from_id("nonsense"),
            Err(Error::UnknownClaim(..))
        ));
    }

    #[test]
    fn enumeration_is_lexicographic_with_dynamic_residues() {
        let mut spec = SweepSpec::new("theorem1");
        spec.ranges.insert("n".into(), vec![3]);
        spec.ranges.insert("c".into(), vec![2, 3]);
        spec.ranges.insert("l".into(), vec![0]);
        spec.ranges.insert("h".into(), vec![0]);
        let tuples = enumerate_tuples(Claim::Theorem1, &spec.ranges).unwrap();
        // r expands to 0..c-1 per c
        assert_eq!(
            tuples,
            vec![
                vec![3, 2, 0, 0, 0],
                vec![3, 2, 1, 0, 0],
                vec![3, 3, 0, 0, 0],
                vec![3, 3, 1, 0, 0],
                vec![3, 3, 2, 0, 0],
            ]
        );
    }

    #[test]
    fn sweep_deterministic_across_parallelism() {
        let mut spec = SweepSpec::new("theorem1");
        spec.ranges.insert("n".into(), vec![1, 2, 3, 4]);
        spec.ranges.insert("c".into(), vec![1, 2]);
        spec.ranges.insert("l".into(), vec![0, 1]);
        spec.ranges.insert("h".into(), vec![0]);
        let mut one = Vec::new();
        let mut four = Vec::new();
        spec.parallelism = 1;
        assert_eq!(run_sweep(&spec, &mut one).unwrap(), 0);
        spec.parallelism = 4;
        assert_eq!(run_sweep(&spec, &mut four).unwrap(), 0);
        assert_eq!(one, four);
        assert!(!one.is_empty());
    }

    #[test]
    fn probe_drives_exit_codes() {
        let mut spec = SweepSpec::new("probe");
        spec.ranges.insert("fail".into(), vec![0]);
        assert_eq!(run_sweep(&spec, &mut Vec::new()).unwrap(), 0);
        spec.ranges.insert("fail".into(), vec![0, 1]);
        assert_eq!(run_sweep(&spec, &mut Vec::new()).unwrap(), 1);
    }

    #[test]
    fn fail_fast_stops_after_first_failure() {
        let mut spec = SweepSpec::new("probe");
        spec.ranges.insert("fail".into(), vec![0, 1, 0, 1]);
        spec.fail_fast = true;
        spec.parallelism = 1;
        let mut out = Vec::new();
        assert_eq!(run_sweep(&spec, &mut out).unwrap(), 1);
        let lines = String::from_utf8(out).unwrap().lines().count();
        assert_eq!(lines, 2);
    }

    #[test]
    fn resume_from_skips_prefix() {
        let mut spec = SweepSpec::new("probe");
        spec.ranges.insert("fail".into(), vec![0, 0, 0]);
        spec.resume_from = Some(vec![("fail".into(), 0)]);
        let mut out = Vec::new();
        // resumes at the FIRST matching tuple, so all three still run
        assert_eq!(run_sweep(&spec, &mut out).unwrap(), 0);
        spec.resume_from = Some(vec![("fail".into(), 7)]);
        assert!(run_sweep(&spec, &mut Vec::new()).is_err());
        spec.resume_from = Some(vec![("bogus".into(), 0)]);
        assert!(run_sweep(&spec, &mut Vec::new()).is_err());
    }

    #[test]
    fn strict_promotes_exploratory_failures() {
        // b=2 is exploratory (gcd(2,6)>1); wl holds there or not, but the
        // certificate must only affect the exit code under --strict.
        let mut spec = SweepSpec::new("wl");
        spec.ranges.insert("b".into(), vec![2]);
        spec.ranges.insert("n".into(), vec![2]);
        spec.ranges.insert("m".into(), vec![1]);
        let code_default = run_sweep(&spec, &mut Vec::new()).unwrap();
        spec.strict = true;
        let code_strict = run_sweep(&spec, &mut Vec::new()).unwrap();
        assert_eq!(code_default, 0);
        assert!(code_strict == 0 || code_strict == 1);
    }

    #[test]
    fn show_renders_tables_and_json() {
        let mut out = Vec::new();
        show_factorization(
            ShowKind::Qfactorial { n: 6 },
            false,
            OutputFormat::Table,
            &mut out,
        )
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains('2') && text.contains('3'));

        let mut out = Vec::new();
        show_factorization(
            ShowKind::Qbinomial { n: 4, k: 0 },
            false,
            OutputFormat::Table,
            &mut out,
        )
        .unwrap();
        assert!(String::from_utf8(out).unwrap().contains("empty product"));

        let mut out = Vec::new();
        show_factorization(
            ShowKind::Theorem1Divisor {
                params: LacunaryParams::new(4, 2, 0, 1, 0).unwrap(),
            },
            false,
            OutputFormat::Jsonl,
            &mut out,
        )
        .unwrap();
        let line = String::from_utf8(out).unwrap();
        assert_eq!(line.trim(), r#"{"2":1,"4":1}"#);
    }

    #[test]
    fn selfcheck_passes() {
        let mut out = Vec::new();
        assert_eq!(selfcheck(&mut out).unwrap(), 0);
        let text = String::from_utf8(out).unwrap();
        assert!(text.lines().all(|l| l.ends_with("ok")));
    }
}
