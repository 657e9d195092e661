//! Small integer helpers shared across modules.

/// Floor division (toward minus infinity); `b > 0`.
pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// Least non-negative residue of `a` modulo `m > 0`.
pub(crate) fn residue(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// binom(k, 2) = k(k-1)/2.
pub(crate) fn binom2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Trial-division primality; plenty for the desk-scale indices swept here.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Euler totient by trial-division factorization.
pub(crate) fn totient(mut n: u64) -> u64 {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_div_negative() {
        assert_eq!(floor_div(-1, 3), -1);
        assert_eq!(floor_div(-3, 3), -1);
        assert_eq!(floor_div(5, 3), 1);
    }

    #[test]
    fn residue_negative() {
        assert_eq!(residue(-1, 3), 2);
        assert_eq!(residue(7, 3), 1);
    }

    #[test]
    fn primes_and_totients() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(105), 48);
    }
}
