//! Integer-side congruences: the classical lacunary alternating binomial
//! sums, Legendre/Kummer valuations, and the p-power lower bounds they
//! satisfy — used standalone and as the q = 1 bridge for the q-results.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::util::{floor_div, is_prime_u64, residue};

/// A prime `p` together with an exponent `alpha >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicContext {
    pub p: u64,
    pub alpha: u32,
}

impl PadicContext {
    pub fn new(p: u64, alpha: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if alpha < 1 {
            return Err(Error::InvalidParameter("alpha must be >= 1".into()));
        }
        Ok(PadicContext { p, alpha })
    }

    fn pow_alpha(&self) -> u64 {
        self.p.pow(self.alpha)
    }

    fn pow_alpha_minus_one(&self) -> u64 {
        self.p.pow(self.alpha - 1)
    }
}

pub fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

/// Exact p-adic valuation of a nonzero integer (sign-independent).
pub fn nu_p(x: &BigInt, p: u64) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut cur = x.abs();
    loop {
        let (q, r) = (&cur / &p, &cur % &p);
        if !r.is_zero() {
            return Ok(v);
        }
        v += 1;
        cur = q;
    }
}

/// Legendre's formula: `nu_p(n!) = sum_j floor(n / p^j)`.
pub fn nu_p_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pj = p;
    while pj <= n {
        total += n / pj;
        match pj.checked_mul(p) {
            Some(next) => pj = next,
            None => break,
        }
    }
    total
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for j in 2..=n {
        acc *= j;
    }
    acc
}

/// Binomial coefficient by the multiplicative recurrence; zero outside
/// `0 <= k <= n`. (Negative upper arguments never reach this function —
/// the sum builders reflect them first.)
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `tau_p(a, b) = nu_p(binom(a+b, a))` — the number of carries when adding
/// `a` and `b` in base `p`.
pub fn tau_p(a: u64, b: u64, p: u64) -> u64 {
    let c = binomial(a + b, a as i64);
    nu_p(&c, p).expect("binomial coefficient is positive")
}

/// Which factor multiplies `binom(n,k)` in [`lacunary_int_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    /// `binom((k-r)/c, l)`, extended to negative upper index by the
    /// reflection `binom(-a, l) = (-1)^l binom(a+l-1, l)` — the q = 1
    /// shadow of the q-side convention, keeping the bridge exact.
    Binomial,
    /// `((k-r)/c)^l` as a plain integer power.
    Power,
}

/// `sum_{k == r (mod c), 0 <= k <= n} (-1)^k binom(n,k) * factor((k-r)/c, l)`.
pub fn lacunary_int_sum(n: u32, c: u32, r: i64, l: u32, mode: FactorMode) -> BigInt {
    let c64 = c as i64;
    let mut acc = BigInt::zero();
    let mut k = residue(r, c as u64) as i64;
    while k <= n as i64 {
        let m = (k - r) / c64;
        let factor = match mode {
            FactorMode::Binomial => {
                if l == 0 {
                    BigInt::from(1)
                } else if m < 0 {
                    let reflected = binomial((-m) as u64 + l as u64 - 1, l as i64);
                    if l % 2 == 1 {
                        -reflected
                    } else {
                        reflected
                    }
                } else {
                    binomial(m as u64, l as i64)
                }
            }
            FactorMode::Power => BigInt::from(m).pow(l),
        };
        if !factor.is_zero() {
            let term = binomial(n as u64, k) * factor;
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        k += c64;
    }
    acc
}

/// Checks `nu_p(sum) >= bound` (bounds below zero are vacuous and clamp to
/// zero; a zero sum has infinite valuation and satisfies every bound).
/// Success carries the quotient `sum / p^bound` as witness, failure the sum
/// itself.
pub fn verify_valuation_bound(
    claim_id: &str,
    params: Vec<(String, i64)>,
    sum: &BigInt,
    p: u64,
    bound: i64,
) -> Certificate {
    let bound = bound.max(0) as u64;
    let cert = Certificate::new(claim_id, params).with_modulus(format!("p^{bound} (p={p})"));
    if sum.is_zero() {
        return cert.pass(Some(Witness::Poly(IntPoly::zero())));
    }
    let v = nu_p(sum, p).expect("nonzero");
    if v >= bound {
        let q = sum / BigInt::from(p).pow(bound as u32);
        cert.pass(Some(Witness::Poly(IntPoly::from_coeffs(vec![q]))))
    } else {
        cert.fail(Some(Witness::Poly(IntPoly::from_coeffs(vec![sum.clone()]))))
    }
}

fn tau_term(ctx: &PadicContext, n: u32, r: i64) -> u64 {
    let m = ctx.pow_alpha_minus_one();
    tau_p(residue(r, m), residue(n as i64 - r, m), ctx.p)
}

/// `floor((n-1)/(p-1))` — the classical single-prime bound.
pub fn fleck_bound(n: u32, p: u64) -> i64 {
    floor_div(n as i64 - 1, p as i64 - 1)
}

/// `floor((n - p^{alpha-1}) / (p^{alpha-1}(p-1)))`.
pub fn weisman_bound(ctx: &PadicContext, n: u32) -> i64 {
    let pa1 = ctx.pow_alpha_minus_one() as i64;
    floor_div(n as i64 - pa1, pa1 * (ctx.p as i64 - 1))
}

/// `floor((n - p^{alpha-1} - l p^alpha) / (p^{alpha-1}(p-1)))`.
pub fn sun_wan_bound(ctx: &PadicContext, n: u32, l: u32) -> i64 {
    let pa1 = ctx.pow_alpha_minus_one() as i64;
    let pa = ctx.pow_alpha() as i64;
    floor_div(n as i64 - pa1 - l as i64 * pa, pa1 * (ctx.p as i64 - 1))
}

/// `nu_p(floor(n/p^alpha)!)`.
pub fn ds_bound(ctx: &PadicContext, n: u32) -> i64 {
    nu_p_factorial(n as u64 / ctx.pow_alpha(), ctx.p) as i64
}

/// `nu_p(floor(n/p^{alpha-1})!) - l - nu_p(l!)`.
pub fn sd_bound(ctx: &PadicContext, n: u32, l: u32) -> i64 {
    nu_p_factorial(n as u64 / ctx.pow_alpha_minus_one(), ctx.p) as i64
        - l as i64
        - nu_p_factorial(l as u64, ctx.p) as i64
}

/// The strengthened bound: [`sd_bound`] plus the carry term
/// `tau_p({r}, {n-r})` with residues taken mod `p^{alpha-1}`.
pub fn sdt_bound(ctx: &PadicContext, n: u32, r: i64, l: u32) -> i64 {
    sd_bound(ctx, n, l) + tau_term(ctx, n, r) as i64
}

/// The improved power-factor bound:
/// `max(nu_p(floor(n/p^{alpha-1})!) - l, nu_p(floor(n/p^alpha)!)) + tau_p`.
pub fn dst_bound(ctx: &PadicContext, n: u32, r: i64, l: u32) -> i64 {
    let a = nu_p_factorial(n as u64 / ctx.pow_alpha_minus_one(), ctx.p) as i64 - l as i64;
    let b = ds_bound(ctx, n);
    a.max(b) + tau_term(ctx, n, r) as i64
}

pub fn verify_fleck(p: u64, n: u32, r: i64) -> Result<Certificate> {
    let ctx = PadicContext::new(p, 1)?;
    let sum = lacunary_int_sum(n, ctx.p as u32, r, 0, FactorMode::Binomial);
    let params = vec![("p".into(), p as i64), ("n".into(), n as i64), ("r".into(), r)];
    Ok(verify_valuation_bound("fleck", params, &sum, p, fleck_bound(n, p)))
}

pub fn verify_weisman(ctx: &PadicContext, n: u32, r: i64) -> Certificate {
    let sum = lacunary_int_sum(n, ctx.pow_alpha() as u32, r, 0, FactorMode::Binomial);
    let params = vec![
        ("p".into(), ctx.p as i64),
        ("alpha".into(), ctx.alpha as i64),
        ("n".into(), n as i64),
        ("r".into(), r),
    ];
    verify_valuation_bound("weisman", params, &sum, ctx.p, weisman_bound(ctx, n))
}

fn ctx_params(ctx: &PadicContext, n: u32, r: i64, l: u32) -> Vec<(String, i64)> {
    vec![
        ("p".into(), ctx.p as i64),
        ("alpha".into(), ctx.alpha as i64),
        ("n".into(), n as i64),
        ("r".into(), r),
        ("l".into(), l as i64),
    ]
}

pub fn verify_sun_wan(ctx: &PadicContext, n: u32, r: i64, l: u32) -> Certificate {
    let sum = lacunary_int_sum(n, ctx.pow_alpha() as u32, r, l, FactorMode::Binomial);
    verify_valuation_bound(
        "sun-wan",
        ctx_params(ctx, n, r, l),
        &sum,
        ctx.p,
        sun_wan_bound(ctx, n, l),
    )
}

pub fn verify_ds(ctx: &PadicContext, n: u32, r: i64, l: u32) -> Certificate {
    let sum = lacunary_int_sum(n, ctx.pow_alpha() as u32, r, l, FactorMode::Power);
    verify_valuation_bound("ds", ctx_params(ctx, n, r, l), &sum, ctx.p, ds_bound(ctx, n))
}

pub fn verify_sd(ctx: &PadicContext, n: u32, r: i64, l: u32) -> Certificate {
    let sum = lacunary_int_sum(n, ctx.pow_alpha() as u32, r, l, FactorMode::Binomial);
    verify_valuation_bound("sd", ctx_params(ctx, n, r, l), &sum, ctx.p, sd_bound(ctx, n, l))
}

pub fn verify_sdt(ctx: &PadicContext, n: u32, r: i64, l: u32) -> Certificate {
    let sum = lacunary_int_sum(n, ctx.pow_alpha() as u32, r, l, FactorMode::Binomial);
    verify_valuation_bound(
        "sdt",
        ctx_params(ctx, n, r, l),
        &sum,
        ctx.p,
        sdt_bound(ctx, n, r, l),
    )
}

pub fn verify_dst(ctx: &PadicContext, n: u32, r: i64, l: u32) -> Certificate {
    let sum = lacunary_int_sum(n, ctx.pow_alpha() as u32, r, l, FactorMode::Power);
    verify_valuation_bound(
        "dst",
        ctx_params(ctx, n, r, l),
        &sum,
        ctx.p,
        dst_bound(ctx, n, r, l),
    )
}

/// The conjecture of Sun and Davis, now a theorem: for prime `p >= 5`,
/// `(p^l / floor(n/p)!) sum (-1)^k binom(pn, pk) ((k-r)/p)^l` is congruent
/// to the same normalized sum with `binom(n, k)` in place of
/// `binom(pn, pk)`, modulo `p^3`. Checked on the cross-multiplied integer
/// form: the difference of the two rationals must have p-adic valuation
/// at least 3.
pub fn verify_sdc(p: u64, n: u32, r: u32, l: u32) -> Result<Certificate> {
    if !is_prime_u64(p) || p < 5 {
        return Err(Error::NotPrime(p));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("sdc needs n >= 1".into()));
    }
    let params = vec![
        ("p".into(), p as i64),
        ("n".into(), n as i64),
        ("r".into(), r as i64),
        ("l".into(), l as i64),
    ];
    let big = sdc_side(p, n, r, l, true);
    let small = sdc_side(p, n, r, l, false);
    let delta = big - small;
    let fact_val = nu_p_factorial(n as u64 / p, p) as i64;
    let cert = Certificate::new("sdc", params)
        .with_modulus(format!("p^3 (p={p}) on p^{l}*(A-B)/floor(n/p)!"));
    if delta.is_zero() {
        return Ok(cert.pass(Some(Witness::Poly(IntPoly::zero()))));
    }
    let val = l as i64 + nu_p(&delta, p).expect("nonzero") as i64 - fact_val;
    if val >= 3 {
        let scaled = BigInt::from(p).pow(l) * &delta;
        let q = scaled / BigInt::from(p).pow((3 + fact_val) as u32);
        Ok(cert.pass(Some(Witness::Poly(IntPoly::from_coeffs(vec![q])))))
    } else {
        Ok(cert.fail(Some(Witness::Poly(IntPoly::from_coeffs(vec![delta])))))
    }
}

fn sdc_side(p: u64, n: u32, r: u32, l: u32, stretched: bool) -> BigInt {
    let mut acc = BigInt::zero();
    let mut k = (r % p as u32) as i64;
    while k <= n as i64 {
        let m = (k - r as i64) / p as i64;
        let factor = BigInt::from(m).pow(l);
        if !factor.is_zero() {
            let b = if stretched {
                binomial(p * n as u64, p as i64 * k)
            } else {
                binomial(n as u64, k)
            };
            let term = b * factor;
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        k += p as i64;
    }
    acc
}

/// Integer Wolstenholme–Ljunggren check: `binom(bn, bm) == binom(n, m)
/// (mod b^3)` — the q = 1 shadow of the q-congruence for prime `b >= 5`.
pub fn verify_wl_integer(b: u64, n: u32, m: u32) -> Certificate {
    let params = vec![
        ("b".into(), b as i64),
        ("n".into(), n as i64),
        ("m".into(), m as i64),
    ];
    let diff = binomial(b * n as u64, (b * m as u64) as i64) - binomial(n as u64, m as i64);
    verify_valuation_bound("wl-int", params, &diff, b, 3)
}
