//! q-integers, q-factorials, Gaussian binomial coefficients and
//! q-Pochhammer products with q-power arguments.
//!
//! The q-binomial is built row by row from the twisted Pascal recurrence
//! `[n+1, k] = q^k [n, k] + [n, k-1]`, with full rows cached process-wide
//! (the lacunary sums sweep every k for a fixed n). Rows are immutable
//! once published; the cache contract matches the cyclotomic memo.

use std::sync::{Arc, OnceLock, RwLock};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::util::binom2;

/// `[n]_q = 1 + q + ... + q^{n-1}`; `[0]_q = 0`. Negative `n` is rejected:
/// the sums swept here never need it, and extending q-integers to negative
/// arguments would leave `Z[q]`.
pub fn q_int(n: i64) -> Result<IntPoly> {
    if n < 0 {
        return Err(Error::NegativeUpperIndex(n));
    }
    Ok(q_int_u(n as u64))
}

pub(crate) fn q_int_u(n: u64) -> IntPoly {
    IntPoly::from_coeffs(vec![num_bigint::BigInt::from(1); n as usize])
}

/// `[n]_q! = [n]_q [n-1]_q ... [1]_q`; empty product for `n = 0`.
pub fn q_factorial(n: u64) -> IntPoly {
    let mut acc = IntPoly::one();
    for j in 1..=n {
        acc = acc.mul(&q_int_u(j));
    }
    acc
}

/// `1 - q^e` (zero when `e = 0`).
pub fn one_minus_qpow(e: u64) -> IntPoly {
    IntPoly::one().sub(&IntPoly::monomial(1, e as usize))
}

fn pascal_rows() -> &'static RwLock<Vec<Arc<Vec<IntPoly>>>> {
    static ROWS: OnceLock<RwLock<Vec<Arc<Vec<IntPoly>>>>> = OnceLock::new();
    ROWS.get_or_init(|| RwLock::new(vec![Arc::new(vec![IntPoly::one()])]))
}

fn pascal_row(n: u64) -> Arc<Vec<IntPoly>> {
    let n = n as usize;
    {
        let rows = pascal_rows().read().expect("pascal cache poisoned");
        if let Some(row) = rows.get(n) {
            return Arc::clone(row);
        }
    }
    // Extend from the last published row outside the lock, then append
    // idempotently under the write lock.
    let mut rows = pascal_rows().write().expect("pascal cache poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("row 0 always present");
        let m = prev.len(); // building row `m` from row `m-1`
        let mut row = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut entry = IntPoly::zero();
            if k < m {
                entry = entry.add(&prev[k].mul_qpow(k));
            }
            if k > 0 {
                entry = entry.add(&prev[k - 1]);
            }
            row.push(entry);
        }
        rows.push(Arc::new(row));
    }
    Arc::clone(&rows[n])
}

/// The Gaussian binomial `[n, k]_q`: zero for `k < 0` or `k > n`, one for
/// `k = 0`.
pub fn q_binomial(n: u64, k: i64) -> IntPoly {
    if k < 0 || k as u64 > n {
        return IntPoly::zero();
    }
    pascal_row(n)[k as usize].clone()
}

/// `[n, k]_{q^c}`: the q-binomial with `q -> q^c`, `c >= 1`.
pub fn q_binomial_base(n: u64, k: i64, c: u32) -> IntPoly {
    assert!(c >= 1, "base exponent must be >= 1");
    q_binomial(n, k).subst_qpow(c)
}

/// `(q^h; q)_n = prod_{j=0}^{n-1} (1 - q^{h+j})`; empty product = 1.
/// `h = 0` with `n >= 1` gives 0 (the `1 - q^0` factor).
pub fn q_pochhammer_qpow(h: u64, n: u64) -> IntPoly {
    let mut acc = IntPoly::one();
    for j in 0..n {
        acc = acc.mul(&one_minus_qpow(h + j));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Checks the q-binomial theorem specialized at `x = q^h`:
/// `sum_k (-1)^k q^{binom(k,2)+hk} [n,k]_q = (q^h; q)_n`.
pub fn q_binomial_theorem_check(n: u64, h: u64) -> Certificate {
    let mut lhs = IntPoly::zero();
    for k in 0..=n {
        let exp = (binom2(k) + h * k) as usize;
        let term = q_binomial(n, k as i64).mul_qpow(exp);
        lhs = if k % 2 == 0 {
            lhs.add(&term)
        } else {
            lhs.sub(&term)
        };
    }
    let rhs = q_pochhammer_qpow(h, n);
    let cert = Certificate::new(
        "q-binomial-theorem",
        vec![("n".into(), n as i64), ("h".into(), h as i64)],
    )
    .with_modulus("exact identity in Z[q]");
    if lhs == rhs {
        cert.pass(None)
    } else {
        cert.fail(Some(Witness::Poly(lhs.sub(&rhs))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::qbinom_factorization;
    use num_bigint::BigInt;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn q_int_cases() {
        assert_eq!(q_int(0).unwrap(), IntPoly::zero());
        assert_eq!(q_int(1).unwrap(), IntPoly::one());
        assert_eq!(q_int(4).unwrap(), p(&[1, 1, 1, 1]));
        assert!(q_int(-1).is_err());
    }

    #[test]
    fn q_binomial_conventions() {
        assert_eq!(q_binomial(5, 0), IntPoly::one());
        assert_eq!(q_binomial(5, -1), IntPoly::zero());
        assert_eq!(q_binomial(5, 6), IntPoly::zero());
        assert_eq!(q_binomial(4, 2), p(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn q_binomial_base_cases() {
        assert_eq!(q_binomial_base(4, 2, 1), q_binomial(4, 2));
        assert_eq!(q_binomial_base(2, 1, 2), p(&[1, 0, 1]));
        assert_eq!(q_binomial_base(4, 2, 3), q_binomial(4, 2).subst_qpow(3));
    }

    /// Independent oracle: `[n]_q! / ([k]_q! [n-k]_q!)` by exact division.
    fn ratio_oracle(n: u64, k: u64) -> IntPoly {
        let den = q_factorial(k).mul(&q_factorial(n - k));
        q_factorial(n)
            .div_exact(&den)
            .unwrap()
            .expect("q-binomial is a polynomial")
    }

    #[test]
    fn pascal_matches_ratio_and_factorization() {
        for n in 0..=16u64 {
            for k in 0..=n {
                let pascal = q_binomial(n, k as i64);
                assert_eq!(pascal, ratio_oracle(n, k), "ratio n={n} k={k}");
                assert_eq!(
                    pascal,
                    qbinom_factorization(n, k as i64).unwrap().expand(),
                    "factorization n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn symmetry_and_eval_at_one() {
        for n in 0..=14u64 {
            let mut binom = BigInt::from(1);
            for k in 0..=n {
                assert_eq!(q_binomial(n, k as i64), q_binomial(n, (n - k) as i64));
                assert_eq!(q_binomial(n, k as i64).eval_at_one(), binom);
                binom = binom * (n - k) / (k + 1);
            }
        }
    }

    #[test]
    fn pochhammer_cases() {
        assert_eq!(q_pochhammer_qpow(3, 0), IntPoly::one());
        assert_eq!(q_pochhammer_qpow(0, 2), IntPoly::zero());
        assert_eq!(
            q_pochhammer_qpow(1, 2),
            p(&[1, -1]).mul(&p(&[1, 0, -1]))
        );
    }

    #[test]
    fn binomial_theorem_full_range() {
        assert!(q_binomial_theorem_check(0, 1).holds);
        assert!(q_binomial_theorem_check(1, 1).holds);
        for n in 0..=25 {
            for h in 1..=5 {
                assert!(q_binomial_theorem_check(n, h).holds, "n={n} h={h}");
            }
        }
    }

    #[test]
    fn rows_are_consistent_across_threads() {
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| q_binomial(24, 12)))
            .collect();
        let results: Vec<IntPoly> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
