//! Lacunary q-binomial sums, their guaranteed cyclotomic divisors, and
//! full divisibility verification with quotient certificates.
//!
//! The sum over one residue class is
//! `sum_{k == r (mod c)} (-1)^k q^{binom(k,2)+hk} [n,k]_q [(k-r)/c, l]_{q^c}`,
//! guaranteed divisible by `prod_{c|d} Phi_d(q)^{floor(n/d)-floor(lc/d)}`
//! times `prod_{b|c, b<c} Phi_b(q)^{floor(n/b)-floor(r/b)-floor((n-r)/b)}`.
//!
//! Verification divides the sum by each cyclotomic factor in turn and
//! certifies the final quotient with one multiply-back.

use num_bigint::BigInt;

use crate::certificate::{Certificate, Flag, Witness};
use crate::cyclotomic::{cyclotomic_arc, proper_divisors, CycloFactorization};
use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::qcombo::{q_binomial, q_int_u};
use crate::util::{binom2, floor_div, is_prime_u64, residue};

/// Parameters of the sums in this module: `n, c >= 1`, `l >= 0`, and `r, h`
/// unrestricted integers. Congruence classes for negative `r` use floored
/// reduction, so `r` behaves as its least non-negative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LacunaryParams {
    pub n: u32,
    pub c: u32,
    pub r: i64,
    pub l: u32,
    pub h: i64,
}

impl LacunaryParams {
    pub fn new(n: u32, c: u32, r: i64, l: u32, h: i64) -> Result<Self> {
        if n < 1 || c < 1 {
            return Err(Error::InvalidParameter(
                "lacunary sums need n >= 1 and c >= 1".into(),
            ));
        }
        Ok(LacunaryParams { n, c, r, l, h })
    }

    fn param_list(&self) -> Vec<(String, i64)> {
        vec![
            ("n".into(), self.n as i64),
            ("c".into(), self.c as i64),
            ("r".into(), self.r),
            ("l".into(), self.l as i64),
            ("h".into(), self.h),
        ]
    }
}

/// Which `l`-dependent factor multiplies each term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FactorKind {
    /// `[(k-r)/c, l]_{q^c}` — Theorem 1.
    Binomial,
    /// `[(k-r)/c]_{q^c}^l` — Corollary 1.
    Power,
}

/// A computed sum plus the normalizations that were applied to it.
#[derive(Clone, Debug)]
pub struct LacunarySum {
    /// The sum as an element of `Z[q]`, already multiplied by
    /// `q^laurent_shift` when negative exponents appeared.
    pub poly: IntPoly,
    /// Power of `q` multiplied through; 0 when no normalization happened.
    /// Multiplying by a power of `q` changes no cyclotomic divisibility,
    /// since `q` is a unit modulo every `Phi_d^e`.
    pub laurent_shift: u64,
    /// True when a term had negative upper index `(k-r)/c < 0` with
    /// `l >= 1` and was folded back through the reflection
    /// `[-a, l]_q = (-1)^l q^{-(la + binom(l,2))} [a+l-1, l]_q`
    /// (respectively `[-a]_q = -q^{-a} [a]_q` for the power factor).
    /// Such terms make the sum a Laurent polynomial, normalized as above.
    pub negative_upper_reflected: bool,
}

impl LacunarySum {
    fn flags(&self) -> Vec<Flag> {
        let mut flags = Vec::new();
        if self.laurent_shift > 0 {
            flags.push(Flag::LaurentNormalized);
        }
        if self.negative_upper_reflected {
            flags.push(Flag::NegativeUpperIndex);
        }
        flags
    }
}

fn sum_terms(p: &LacunaryParams, kind: FactorKind) -> LacunarySum {
    let c = p.c as i64;
    let l = p.l;
    let mut terms: Vec<(i128, bool, IntPoly)> = Vec::new();
    let mut reflected = false;
    let mut k = residue(p.r, p.c as u64) as i64;
    while k <= p.n as i64 {
        let m = (k - p.r) / c; // exact: k == r (mod c)
        // (factor, extra exponent in q, extra sign) of the l-dependent
        // piece; negative upper indices reflect to non-negative ones.
        let (factor, extra_exp, extra_neg): (IntPoly, i128, bool) = match (kind, m) {
            (_, _) if l == 0 => (IntPoly::one(), 0, false),
            (FactorKind::Binomial, m) if m < 0 => {
                reflected = true;
                let a = (-m) as u64;
                let exp = -(c as i128) * (l as i128 * a as i128 + binom2(l as u64) as i128);
                (
                    q_binomial(a + l as u64 - 1, l as i64).subst_qpow(p.c),
                    exp,
                    l % 2 == 1,
                )
            }
            (FactorKind::Binomial, m) => {
                (q_binomial(m as u64, l as i64).subst_qpow(p.c), 0, false)
            }
            (FactorKind::Power, m) if m < 0 => {
                reflected = true;
                let a = (-m) as u64;
                let exp = -(c as i128) * (l as i128 * a as i128);
                (q_int_u(a).subst_qpow(p.c).pow(l), exp, l % 2 == 1)
            }
            (FactorKind::Power, m) => (q_int_u(m as u64).subst_qpow(p.c).pow(l), 0, false),
        };
        if !factor.is_zero() {
            let base = q_binomial(p.n as u64, k);
            let term = base.mul(&factor);
            if !term.is_zero() {
                let exp = binom2(k as u64) as i128 + (p.h * k) as i128 + extra_exp;
                terms.push((exp, (k % 2 != 0) ^ extra_neg, term));
            }
        }
        k += c;
    }
    let min_exp = terms.iter().map(|(e, _, _)| *e).min().unwrap_or(0);
    let shift = (-min_exp).max(0) as u128;
    let mut acc = IntPoly::zero();
    for (exp, negate, term) in terms {
        let e = usize::try_from(exp + shift as i128).expect("exponent fits a machine word");
        let shifted = term.mul_qpow(e);
        acc = if negate {
            acc.sub(&shifted)
        } else {
            acc.add(&shifted)
        };
    }
    LacunarySum {
        poly: acc,
        laurent_shift: shift as u64,
        negative_upper_reflected: reflected,
    }
}

/// The lacunary q-binomial sum of the main divisibility theorem,
/// Laurent-normalized when `h < 0` (see [`LacunarySum`]).
pub fn lacunary_sum(p: &LacunaryParams) -> IntPoly {
    lacunary_sum_detail(p).poly
}

pub fn lacunary_sum_detail(p: &LacunaryParams) -> LacunarySum {
    sum_terms(p, FactorKind::Binomial)
}

/// The power-factor variant `sum (-1)^k q^{binom(k,2)+hk} [n,k]_q [(k-r)/c]_{q^c}^l`.
pub fn corollary1_sum(p: &LacunaryParams) -> IntPoly {
    corollary1_sum_detail(p).poly
}

pub fn corollary1_sum_detail(p: &LacunaryParams) -> LacunarySum {
    sum_terms(p, FactorKind::Power)
}

/// Divisor plus whether any exponent formula was clamped at zero.
fn divisor_with_clamp(
    p: &LacunaryParams,
    first_exponent: impl Fn(u64) -> i64,
) -> (CycloFactorization, bool) {
    let mut f = CycloFactorization::new();
    let mut clamped = false;
    let mut d = p.c as u64;
    while d <= p.n as u64 {
        let e = first_exponent(d);
        if e < 0 {
            clamped = true;
        } else {
            f.bump(d, e as u32);
        }
        d += p.c as u64;
    }
    for b in proper_divisors(p.c as u64) {
        let b_i = b as i64;
        let e = floor_div(p.n as i64, b_i) - floor_div(p.r, b_i)
            - floor_div(p.n as i64 - p.r, b_i);
        debug_assert!((0..=1).contains(&e), "carry exponent must be 0 or 1");
        f.bump(b, e.max(0) as u32);
    }
    (f, clamped)
}

/// The guaranteed divisor of [`lacunary_sum`]: exponents
/// `floor(n/d) - floor(lc/d)` over multiples `d` of `c` up to `n`, merged
/// with the carry exponents over proper divisors of `c`. Negative
/// exponents (possible when `lc > n`) clamp to zero; verification
/// certificates flag the clamp.
pub fn theorem1_divisor(p: &LacunaryParams) -> CycloFactorization {
    theorem1_divisor_detail(p).0
}

pub fn theorem1_divisor_detail(p: &LacunaryParams) -> (CycloFactorization, bool) {
    let (n, c, l) = (p.n as i64, p.c as i64, p.l as i64);
    divisor_with_clamp(p, |d| {
        floor_div(n, d as i64) - floor_div(l * c, d as i64)
    })
}

/// The Corollary 1 divisor: `Phi_c^{floor(n/c)-l}` (clamped at zero) times
/// `Phi_d^{floor(n/d)}` over larger multiples of `c`, times the same carry
/// factors over proper divisors of `c`.
pub fn corollary1_divisor(p: &LacunaryParams) -> CycloFactorization {
    corollary1_divisor_detail(p).0
}

pub fn corollary1_divisor_detail(p: &LacunaryParams) -> (CycloFactorization, bool) {
    let (n, c, l) = (p.n as i64, p.c as i64, p.l as i64);
    let (f, mut clamped) = divisor_with_clamp(p, |d| {
        if d == c as u64 {
            floor_div(n, c) - l
        } else {
            floor_div(n, d as i64)
        }
    });
    // The Phi_c factor exists even when c > n (out of the loop's reach);
    // its exponent floor(n/c) - l = -l clamps there too.
    if c > n && l > 0 {
        clamped = true;
    }
    (f, clamped)
}

/// Divides `dividend` by each cyclotomic factor of `divisor` in turn.
/// Success yields a quotient witness certified by one multiply-back
/// (`witness * divisor.expand() == dividend`); failure yields the nonzero
/// remainder at the offending factor. Zero dividends hold trivially.
pub fn verify_divides(
    claim_id: &str,
    params: Vec<(String, i64)>,
    dividend: &IntPoly,
    divisor: &CycloFactorization,
    extra_flags: &[Flag],
) -> Certificate {
    let cert = Certificate::new(claim_id, params)
        .with_flags(extra_flags)
        .with_modulus(divisor.to_string());
    if dividend.is_zero() {
        return cert.pass(Some(Witness::Poly(IntPoly::zero())));
    }
    let mut cur = dividend.clone();
    for (d, e) in divisor.iter() {
        let phi = cyclotomic_arc(d);
        for step in 1..=e {
            match cur.divrem_monic(&phi) {
                Ok((quot, rem)) if rem.is_zero() => cur = quot,
                Ok((_, rem)) => {
                    let desc = format!("{divisor} [remainder at Phi_{d}(q), step {step}/{e}]");
                    return cert.with_modulus(desc).fail(Some(Witness::Poly(rem)));
                }
                Err(_) => unreachable!("cyclotomic polynomials are monic"),
            }
        }
    }
    // Multiply-back certification of the full chain.
    assert_eq!(
        cur.mul(&divisor.expand()),
        *dividend,
        "divisibility witness failed its multiply-back certification"
    );
    cert.pass(Some(Witness::Poly(cur)))
}

/// Verifies the main divisibility theorem for one parameter tuple.
pub fn verify_theorem1(p: &LacunaryParams) -> Certificate {
    let sum = lacunary_sum_detail(p);
    let (divisor, clamped) = theorem1_divisor_detail(p);
    let mut flags = sum.flags();
    if clamped {
        flags.push(Flag::ClampedExponent);
    }
    verify_divides("theorem1", p.param_list(), &sum.poly, &divisor, &flags)
}

/// Verifies the power-factor corollary for one parameter tuple.
pub fn verify_corollary1(p: &LacunaryParams) -> Certificate {
    let sum = corollary1_sum_detail(p);
    let (divisor, clamped) = corollary1_divisor_detail(p);
    let mut flags = sum.flags();
    if clamped {
        flags.push(Flag::ClampedExponent);
    }
    verify_divides("corollary1", p.param_list(), &sum.poly, &divisor, &flags)
}

/// The prime-power specialization of the Theorem 1 divisor, indexed over
/// `d = p^j`: exponents `floor(n/p^j) - floor(l/p^{j-alpha})` for
/// `j >= alpha` and the carry exponents for `1 <= j < alpha`. Equals the
/// restriction of `theorem1_divisor(c = p^alpha)` to prime-power indices.
pub fn prime_power_divisor(
    n: u32,
    p: u64,
    alpha: u32,
    r: i64,
    l: u32,
) -> Result<CycloFactorization> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha < 1 {
        return Err(Error::InvalidParameter("alpha must be >= 1".into()));
    }
    let mut f = CycloFactorization::new();
    // First product: j >= alpha while p^j <= n (beyond that both floors
    // vanish or the exponent is negative and meaningless as a divisor).
    let mut pj = p.pow(alpha); // p^j
    let mut pj_shift = 1u64; // p^{j-alpha}
    while pj <= n as u64 {
        let e = (n as u64 / pj) as i64 - (l as u64 / pj_shift) as i64;
        if e > 0 {
            f.bump(pj, e as u32);
        }
        pj *= p;
        pj_shift *= p;
    }
    // Second product: carry exponents at p^1 .. p^{alpha-1}.
    let mut b = 1u64;
    for _ in 1..alpha {
        b *= p;
        let e = floor_div(n as i64, b as i64) - floor_div(r, b as i64)
            - floor_div(n as i64 - r, b as i64);
        debug_assert!((0..=1).contains(&e));
        f.bump(b, e.max(0) as u32);
    }
    Ok(f)
}

/// Bridge to the integer side: the sum with every `q`-power collapsed,
/// i.e. `sum (-1)^k C(n,k) * factor((k-r)/c, l)`.
pub fn lacunary_sum_at_one(p: &LacunaryParams) -> BigInt {
    lacunary_sum_detail(p).poly.eval_at_one()
}
