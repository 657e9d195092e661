//! Independent oracles for the integration suites. Everything here
//! recomputes its target along a different route than the library
//! implementation it checks.
//!
//! Each integration test binary compiles this module separately and uses
//! a different subset of it.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qlacuna::polyring::IntPoly;

/// Moebius function by trial-division factorization.
pub fn moebius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Totient by direct gcd counting — deliberately naive.
pub fn totient_oracle(d: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=d).filter(|&k| gcd(k, d) == 1).count() as u64
}

fn qpow_minus_one(e: u64) -> IntPoly {
    IntPoly::monomial(1, e as usize).sub(&IntPoly::one())
}

/// Moebius-convolution construction of the cyclotomic polynomial:
/// `Phi_d = prod_{e|d} (q^{d/e} - 1)^{mu(e)}`, evaluated as an exact
/// quotient of the positive-exponent product by the negative-exponent one.
pub fn mobius_cyclotomic(d: u64) -> IntPoly {
    if d == 1 {
        return qpow_minus_one(1);
    }
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        match moebius(e) {
            1 => num = num.mul(&qpow_minus_one(d / e)),
            -1 => den = den.mul(&qpow_minus_one(d / e)),
            _ => {}
        }
    }
    num.div_exact(&den)
        .expect("nonzero denominator")
        .expect("Moebius convolution is exact")
}

/// Integer binomial via Pascal's triangle (no multiplicative shortcut).
pub fn pascal_int_binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one()];
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row[k as usize].clone()
}

/// The Gaussian binomial with arbitrary integer upper index, straight
/// from the product formula `prod_i (1 - q^{c(m-i)}) / (1 - q^{c(i+1)})`:
/// the result is `(sign, q-exponent, polynomial)` with factors
/// `1 - q^{negative}` rewritten as `-q^{negative} (1 - q^{positive})`.
fn product_formula_binomial(m: i64, l: u32, c: u32) -> (bool, i64, IntPoly) {
    if l == 0 {
        return (false, 0, IntPoly::one());
    }
    let mut negate = false;
    let mut exponent = 0i64;
    let mut numerator = IntPoly::one();
    for i in 0..l as i64 {
        let e = c as i64 * (m - i);
        if e == 0 {
            return (false, 0, IntPoly::zero());
        }
        if e < 0 {
            negate = !negate;
            exponent += e;
        }
        numerator = numerator.mul(
            &IntPoly::one().sub(&IntPoly::monomial(1, e.unsigned_abs() as usize)),
        );
    }
    let mut denominator = IntPoly::one();
    for i in 1..=l as i64 {
        denominator = denominator.mul(
            &IntPoly::one().sub(&IntPoly::monomial(1, (c as i64 * i) as usize)),
        );
    }
    let poly = numerator
        .div_exact(&denominator)
        .expect("nonzero denominator")
        .expect("product formula divides exactly");
    (negate, exponent, poly)
}

/// Direct summation oracle for the lacunary q-binomial sum, written
/// independently of the library's incremental construction: the
/// `l`-dependent factor comes from the raw product formula, and negative
/// exponents are handled by shifting everything by a fixed large power of
/// `q` and dividing back out at the end.
pub fn direct_lacunary_sum(n: u32, c: u32, r: i64, l: u32, h: i64) -> IntPoly {
    use qlacuna::qcombo::q_binomial;
    let worst_factor = (c as i64) * (l as i64) * (r.abs() + l as i64 + 1);
    let guard = (n as i64) * (h.unsigned_abs() as i64 + 1) + worst_factor + 2;
    let mut acc = IntPoly::zero();
    let mut min_used = i64::MAX;
    for k in 0..=n as i64 {
        if (k - r).rem_euclid(c as i64) != 0 {
            continue;
        }
        let m = (k - r) / c as i64;
        let (fneg, fexp, factor) = product_formula_binomial(m, l, c);
        let base = q_binomial(n as u64, k);
        if base.is_zero() || factor.is_zero() {
            continue;
        }
        let exp = k * (k - 1) / 2 + h * k + fexp;
        min_used = min_used.min(exp);
        let mut term = base.mul(&factor).mul_qpow((exp + guard) as usize);
        if (k % 2 != 0) ^ fneg {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    if acc.is_zero() {
        return acc;
    }
    // Undo the guard shift; keep any genuinely negative minimal exponent
    // normalized to q^0 as the library does.
    let unshift = guard + min_used.min(0);
    acc.div_exact(&IntPoly::monomial(1, unshift as usize))
        .expect("nonzero")
        .expect("guard shift divides exactly")
}
