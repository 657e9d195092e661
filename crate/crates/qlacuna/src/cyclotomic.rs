//! Cyclotomic polynomials, cyclotomic valuations, and closed-form
//! cyclotomic factorizations of q-factorials and q-binomials.
//!
//! `Phi_d` is built from the identity `q^d - 1 = prod_{e|d} Phi_e(q)` by
//! recursive exact division, with a process-wide memo table. The memo is
//! the one shared mutable structure in the crate: concurrent lookups are
//! cheap, duplicate computations of the same `Phi_d` may race and resolve
//! idempotently.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::util::totient;

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of n >= 1 only");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Proper divisors of `n` (every divisor below `n`), ascending.
pub fn proper_divisors(n: u64) -> Vec<u64> {
    let mut ds = divisors(n);
    ds.pop();
    ds
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `q^d - 1`.
fn qpow_minus_one(d: u64) -> IntPoly {
    IntPoly::monomial(1, d as usize).sub(&IntPoly::one())
}

/// The d-th cyclotomic polynomial, memoized. Monic of degree `phi(d)`.
pub fn cyclotomic(d: u64) -> IntPoly {
    (*cyclotomic_arc(d)).clone()
}

pub(crate) fn cyclotomic_arc(d: u64) -> Arc<IntPoly> {
    assert!(d >= 1, "cyclotomic index must be >= 1");
    if let Some(p) = phi_cache().read().expect("phi cache poisoned").get(&d) {
        return Arc::clone(p);
    }
    // q^d - 1 divided by Phi_e for every proper divisor e of d.
    let mut acc = qpow_minus_one(d);
    for e in proper_divisors(d) {
        let phi_e = cyclotomic_arc(e);
        let (quot, rem) = acc
            .divrem_monic(&phi_e)
            .expect("cyclotomic polynomials are monic");
        assert!(rem.is_zero(), "Phi_{e} must divide q^{d}-1 exactly");
        acc = quot;
    }
    let arc = Arc::new(acc);
    let mut table = phi_cache().write().expect("phi cache poisoned");
    // A racing thread may have inserted the same (identical) value.
    Arc::clone(table.entry(d).or_insert_with(|| Arc::clone(&arc)))
}

/// Largest `e` with `Phi_d^e` dividing `f` over `Z[q]`. `f = 0` is
/// rejected (the valuation would be infinite).
pub fn cyclo_valuation(f: &IntPoly, d: u64) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::CyclotomicValuationOfZero);
    }
    let phi = cyclotomic_arc(d);
    let mut e = 0u32;
    let mut cur = f.clone();
    while let Some(next) = cur.div_exact(&phi)? {
        e += 1;
        cur = next;
    }
    Ok(e)
}

/// A product `prod_d Phi_d(q)^{e_d}` kept as the map `d -> e_d` with all
/// stored exponents >= 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloFactorization {
    factors: BTreeMap<u64, u32>,
}

impl CycloFactorization {
    pub fn new() -> Self {
        CycloFactorization::default()
    }

    pub fn from_pairs(pairs: &[(u64, u32)]) -> Self {
        let mut f = CycloFactorization::new();
        for &(d, e) in pairs {
            f.bump(d, e);
        }
        f
    }

    /// Adds `e` to the exponent of `Phi_d`; zero increments are dropped.
    pub fn bump(&mut self, d: u64, e: u32) {
        assert!(d >= 1);
        if e > 0 {
            *self.factors.entry(d).or_insert(0) += e;
        }
    }

    pub fn exponent(&self, d: u64) -> u32 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&d, &e)| (d, e))
    }

    /// Pointwise sum of exponents (product of the two expansions).
    pub fn mul(&self, other: &CycloFactorization) -> CycloFactorization {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            out.bump(d, e);
        }
        out
    }

    /// Total expanded degree `sum_d e_d * phi(d)`.
    pub fn degree(&self) -> u64 {
        self.iter().map(|(d, e)| totient(d) * e as u64).sum()
    }

    /// Expands to the monic polynomial `prod_d Phi_d(q)^{e_d}`.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::one();
        for (d, e) in self.iter() {
            acc = acc.mul(&cyclotomic_arc(d).pow(e));
        }
        acc
    }

    /// Restriction to indices that are powers of the prime `p`.
    pub fn restrict_to_prime_powers(&self, p: u64) -> CycloFactorization {
        let mut out = CycloFactorization::new();
        for (d, e) in self.iter() {
            let mut m = d;
            while m % p == 0 {
                m /= p;
            }
            if m == 1 {
                out.bump(d, e);
            }
        }
        out
    }

    /// JSON object mapping decimal `d` to its exponent; optionally carries
    /// the expanded IntPoly under `"expanded"`.
    pub fn to_json(&self, include_expanded: bool) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (d, e) in self.iter() {
            obj.insert(d.to_string(), serde_json::json!(e));
        }
        if include_expanded {
            let mut outer = serde_json::Map::new();
            outer.insert("factors".into(), serde_json::Value::Object(obj));
            outer.insert("expanded".into(), self.expand().to_json());
            serde_json::Value::Object(outer)
        } else {
            serde_json::Value::Object(obj)
        }
    }
}

impl fmt::Display for CycloFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (d, e) in self.iter() {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "Phi_{d}(q)")?;
            } else {
                write!(f, "Phi_{d}(q)^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorization of the q-factorial: `[n]_q! = prod_{1<d<=n} Phi_d^{floor(n/d)}`.
pub fn qfactorial_factorization(n: u64) -> CycloFactorization {
    let mut f = CycloFactorization::new();
    for d in 2..=n {
        f.bump(d, (n / d) as u32);
    }
    f
}

/// Factorization of the q-binomial via the floor-difference exponents
/// `floor(n/d) - floor(k/d) - floor((n-k)/d)`, each 0 or 1.
pub fn qbinom_factorization(n: u64, k: i64) -> Result<CycloFactorization> {
    if k < 0 || k as u64 > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    let k = k as u64;
    let mut f = CycloFactorization::new();
    for d in 2..=n {
        let e = n / d - k / d - (n - k) / d;
        f.bump(d, e as u32);
    }
    Ok(f)
}

/// Checks the substitution identity `Phi_{bc}(q) = Phi_c(q^b)`, which holds
/// whenever `b | c`. Parameters outside that hypothesis are rejected since
/// the identity can fail there.
pub fn cyclo_subst_identity_check(b: u64, c: u64) -> Result<Certificate> {
    if b < 2 || c < 2 {
        return Err(Error::InvalidParameter(
            "cyclo_subst_identity_check needs b >= 2 and c >= 2".into(),
        ));
    }
    if c % b != 0 {
        return Err(Error::NotADivisor { b, c });
    }
    let lhs = cyclotomic(b * c);
    let rhs = cyclotomic(c).subst_qpow(b as u32);
    let cert = Certificate::new(
        "cyclo-subst",
        vec![("b".into(), b as i64), ("c".into(), c as i64)],
    )
    .with_modulus(format!("identity Phi_{}(q) = Phi_{c}(q^{b})", b * c));
    if lhs == rhs {
        Ok(cert.pass(None))
    } else {
        Ok(cert.fail(Some(Witness::Poly(lhs.sub(&rhs)))))
    }
}

const CACHE_MAGIC: &[u8; 4] = b"QLC1";

/// Persists the memo table to `path` ("QLC1" magic, then length-prefixed
/// `(d, coefficient-array)` records, little-endian lengths, decimal-string
/// coefficients). Returns the number of records written.
pub fn save_phi_cache(path: &Path) -> Result<usize> {
    let entries: Vec<(u64, Arc<IntPoly>)> = {
        let table = phi_cache().read().expect("phi cache poisoned");
        let mut v: Vec<_> = table.iter().map(|(&d, p)| (d, Arc::clone(p))).collect();
        v.sort_by_key(|&(d, _)| d);
        v
    };
    let mut buf = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&(entries.len() as u64).to_le_bytes());
    for (d, poly) in &entries {
        buf.extend_from_slice(&d.to_le_bytes());
        buf.extend_from_slice(&(poly.coeffs().len() as u64).to_le_bytes());
        for c in poly.coeffs() {
            let s = c.to_string();
            buf.extend_from_slice(&(s.len() as u64).to_le_bytes());
            buf.extend_from_slice(s.as_bytes());
        }
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(&buf)?;
    Ok(entries.len())
}

/// Loads a cache file written by [`save_phi_cache`]. Records failing the
/// structural checks (monic, degree `phi(d)`) are rejected wholesale.
/// Returns the number of records loaded.
pub fn load_phi_cache(path: &Path) -> Result<usize> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    let mut pos = 0usize;
    let take = |pos: &mut usize, n: usize| -> Result<&[u8]> {
        if *pos + n > bytes.len() {
            return Err(Error::Cache("truncated cache file".into()));
        }
        let s = &bytes[*pos..*pos + n];
        *pos += n;
        Ok(s)
    };
    if take(&mut pos, 4)? != CACHE_MAGIC {
        return Err(Error::Cache("bad magic (expected QLC1)".into()));
    }
    let count = u64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
    let mut loaded = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let d = u64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
        if d == 0 {
            return Err(Error::Cache("record with d = 0".into()));
        }
        let ncoeffs = u64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
        let mut coeffs = Vec::with_capacity(ncoeffs as usize);
        for _ in 0..ncoeffs {
            let len = u64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
            let s = std::str::from_utf8(take(&mut pos, len as usize)?)
                .map_err(|_| Error::Cache("non-UTF8 coefficient".into()))?;
            let c: BigInt = s
                .parse()
                .map_err(|_| Error::Cache(format!("bad coefficient `{s}`")))?;
            coeffs.push(c);
        }
        let poly = IntPoly::from_coeffs(coeffs);
        if !poly.is_monic() || poly.degree() != Some(totient(d) as usize) {
            return Err(Error::Cache(format!(
                "record for d={d} fails the Phi_d structural checks"
            )));
        }
        loaded.push((d, Arc::new(poly)));
    }
    let n = loaded.len();
    let mut table = phi_cache().write().expect("phi cache poisoned");
    for (d, poly) in loaded {
        table.entry(d).or_insert(poly);
    }
    Ok(n)
}
