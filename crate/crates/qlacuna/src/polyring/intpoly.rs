use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::bigint_gcd;

/// Dense univariate polynomial over arbitrary-precision integers.
///
/// `coeffs[i]` is the coefficient of `q^i`. The representation is kept
/// normalized: the last coefficient is nonzero, and the zero polynomial is
/// the empty vector. The degree of the zero polynomial is `None`, a real
/// sentinel rather than `-1`, so nothing can do arithmetic on it by
/// accident.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::from_coeffs(vec![c.into()])
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly { coeffs }
    }

    /// Builds a polynomial from `coeffs[i] = [q^i]`, trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `None` for the zero polynomial, `Some(len - 1)` otherwise.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(r) = rhs.coeffs.get(i) {
                c += r;
            }
            out.push(c);
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(r) = rhs.coeffs.get(i) {
                c -= r;
            }
            out.push(c);
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Schoolbook convolution. Quadratic, which is fine at the degrees this
    /// crate sweeps; the interface does not preclude a faster kernel later.
    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `q^e`.
    pub fn mul_qpow(&self, e: usize) -> IntPoly {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitutes `q -> q^e` (`e >= 1`).
    pub fn subst_qpow(&self, e: u32) -> IntPoly {
        assert!(e >= 1, "subst_qpow requires e >= 1");
        if e == 1 || self.is_zero() {
            return self.clone();
        }
        let e = e as usize;
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[i * e] = c.clone();
            }
        }
        IntPoly { coeffs: out }
    }

    /// Exact division over `Z[q]`: returns `Some(c)` with `b * c == a`
    /// when such `c` exists, `None` otherwise. `b == 0` is a caller error.
    ///
    /// Long division with an early abort on a non-divisible leading
    /// coefficient; by Gauss this decides divisibility over the rationals
    /// too. The quotient is certified by one multiply-back before being
    /// returned.
    pub fn div_exact(&self, b: &IntPoly) -> Result<Option<IntPoly>> {
        if b.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Some(IntPoly::zero()));
        }
        let da = self.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        if da < db {
            return Ok(None);
        }
        let lead = b.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for i in (db..=da).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (t, r) = num_integer_div_rem(&rem[i], lead);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                if !bc.is_zero() {
                    let prod = &t * bc;
                    rem[i - db + j] -= prod;
                }
            }
            quot[i - db] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        let quot = IntPoly::from_coeffs(quot);
        // Certify by multiply-back before handing the quotient out.
        if quot.mul(b) != *self {
            panic!("div_exact produced an uncertified quotient");
        }
        Ok(Some(quot))
    }

    /// Quotient and remainder modulo a monic `m` with `degree(m) >= 1`,
    /// entirely over the integers: `self = m * t + r`, `degree(r) < degree(m)`.
    pub fn divrem_monic(&self, m: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dm = match m.degree() {
            Some(d) if d >= 1 && m.is_monic() => d,
            _ => return Err(Error::NonMonicModulus(m.to_string())),
        };
        let da = match self.degree() {
            None => return Ok((IntPoly::zero(), IntPoly::zero())),
            Some(d) if d < dm => return Ok((IntPoly::zero(), self.clone())),
            Some(d) => d,
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - dm + 1];
        for i in (dm..=da).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let t = std::mem::replace(&mut rem[i], BigInt::zero());
            for (j, mc) in m.coeffs.iter().enumerate().take(dm) {
                if !mc.is_zero() {
                    let prod = &t * mc;
                    rem[i - dm + j] -= prod;
                }
            }
            quot[i - dm] = t;
        }
        rem.truncate(dm);
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Remainder of `self` modulo a monic polynomial `m`.
    pub fn reduce_mod(&self, m: &IntPoly) -> Result<IntPoly> {
        Ok(self.divrem_monic(m)?.1)
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        let mut s = BigInt::zero();
        for c in &self.coeffs {
            s += c;
        }
        s
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = bigint_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.content();
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().map(|c| c / &g).collect();
        if coeffs.last().map_or(false, |c| c.is_negative()) {
            for c in &mut coeffs {
                *c = -(c as &BigInt);
            }
        }
        IntPoly { coeffs }
    }

    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading().expect("nonzero").clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let lr = rem.leading().expect("nonzero").clone();
            rem = rem
                .mul_scalar(&lb)
                .sub(&b.mul_qpow(dr - db).mul_scalar(&lr));
        }
        rem
    }

    /// Primitive gcd over `Z[q]` via a primitive pseudo-remainder sequence.
    /// The result is primitive with positive leading coefficient (or zero).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let mut r0 = self.primitive_part();
        let mut r1 = other.primitive_part();
        if r0.degree() < r1.degree() {
            std::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_zero() {
            let r = r0.pseudo_rem(&r1).primitive_part();
            r0 = r1;
            r1 = r;
        }
        r0
    }

    /// True when gcd over the rationals is a nonzero constant.
    pub fn is_coprime_with(&self, other: &IntPoly) -> bool {
        self.gcd(other).degree() == Some(0)
    }

    /// Canonical JSON form: array of decimal coefficient strings, index =
    /// exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<IntPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("expected array of coefficient strings".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for e in arr {
            let s = e
                .as_str()
                .ok_or_else(|| Error::Json("coefficient must be a decimal string".into()))?;
            let c: BigInt = s
                .parse()
                .map_err(|_| Error::Json(format!("bad coefficient `{s}`")))?;
            coeffs.push(c);
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

impl fmt::Display for IntPoly {
    /// Canonical text form: `c0 + c1*q + c2*q^2 + ...` with zero terms
    /// omitted and unit coefficients elided on powers of `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "q")?,
                1 => write!(f, "{mag}*q")?,
                _ if mag.is_one() => write!(f, "q^{i}")?,
                _ => write!(f, "{mag}*q^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::neg(self)
    }
}
