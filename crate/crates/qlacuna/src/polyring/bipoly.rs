use std::fmt;

use crate::error::{Error, Result};

use super::IntPoly;

/// How the variable `z` is mapped under [`BiPoly::subst`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZMode {
    /// `z -> z^e`, `e >= 1`.
    ZPow(u32),
    /// `z -> z^e * q^m`, `e >= 1`. Covers substitutions like
    /// `z -> z^b q^{n*binom(b,2)}`.
    ZPowQShift { zpow: u32, qshift: u64 },
    /// `z -> q^m`; the result lives entirely in the `z^0` coefficient.
    Collapse(u64),
}

/// Polynomial in `z` with [`IntPoly`] coefficients.
///
/// `zcoeffs[j]` is the coefficient of `z^j`; the last entry is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    zcoeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { zcoeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly::constant(IntPoly::one())
    }

    /// A `z`-free polynomial.
    pub fn constant(c: IntPoly) -> Self {
        BiPoly::from_zcoeffs(vec![c])
    }

    /// `c * z^exp`.
    pub fn z_monomial(c: IntPoly, exp: usize) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        let mut zcoeffs = vec![IntPoly::zero(); exp + 1];
        zcoeffs[exp] = c;
        BiPoly { zcoeffs }
    }

    pub fn from_zcoeffs(mut zcoeffs: Vec<IntPoly>) -> Self {
        while zcoeffs.last().map_or(false, |c| c.is_zero()) {
            zcoeffs.pop();
        }
        BiPoly { zcoeffs }
    }

    pub fn zcoeffs(&self) -> &[IntPoly] {
        &self.zcoeffs
    }

    pub fn zcoeff(&self, j: usize) -> IntPoly {
        self.zcoeffs.get(j).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn zdegree(&self) -> Option<usize> {
        if self.zcoeffs.is_empty() {
            None
        } else {
            Some(self.zcoeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zcoeffs.is_empty()
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        let n = self.zcoeffs.len().max(rhs.zcoeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.zcoeffs.get(i).cloned().unwrap_or_else(IntPoly::zero);
            match rhs.zcoeffs.get(i) {
                Some(b) => out.push(a.add(b)),
                None => out.push(a),
            }
        }
        BiPoly::from_zcoeffs(out)
    }

    pub fn sub(&self, rhs: &BiPoly) -> BiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            zcoeffs: self.zcoeffs.iter().map(IntPoly::neg).collect(),
        }
    }

    /// Convolution in `z` with exact coefficient arithmetic.
    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![IntPoly::zero(); self.zcoeffs.len() + rhs.zcoeffs.len() - 1];
        for (i, a) in self.zcoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.zcoeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::from_zcoeffs(out)
    }

    /// Multiplies every `z`-coefficient by `c`.
    pub fn scale(&self, c: &IntPoly) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            zcoeffs: self.zcoeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Substitutes `q -> q^qpow` in every coefficient and maps `z`
    /// according to `zmode`.
    pub fn subst(&self, qpow: u32, zmode: ZMode) -> Result<BiPoly> {
        if qpow < 1 {
            return Err(Error::InvalidParameter("subst requires qpow >= 1".into()));
        }
        match zmode {
            ZMode::ZPow(e) => self.subst(
                qpow,
                ZMode::ZPowQShift {
                    zpow: e,
                    qshift: 0,
                },
            ),
            ZMode::ZPowQShift { zpow, qshift } => {
                if zpow < 1 {
                    return Err(Error::InvalidParameter("zpow must be >= 1".into()));
                }
                if self.is_zero() {
                    return Ok(BiPoly::zero());
                }
                let e = zpow as usize;
                let mut out = vec![IntPoly::zero(); (self.zcoeffs.len() - 1) * e + 1];
                for (j, c) in self.zcoeffs.iter().enumerate() {
                    if !c.is_zero() {
                        out[j * e] = c
                            .subst_qpow(qpow)
                            .mul_qpow(j * qshift as usize);
                    }
                }
                Ok(BiPoly::from_zcoeffs(out))
            }
            ZMode::Collapse(m) => {
                let mut acc = IntPoly::zero();
                for (j, c) in self.zcoeffs.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&c.subst_qpow(qpow).mul_qpow(j * m as usize));
                    }
                }
                Ok(BiPoly::constant(acc))
            }
        }
    }

    /// Substitutes `z := 1`, i.e. sums the `z`-coefficients.
    pub fn eval_z_one(&self) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in &self.zcoeffs {
            acc = acc.add(c);
        }
        acc
    }

    /// Canonical JSON form: array of IntPoly JSON forms, index = z-exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.zcoeffs.iter().map(IntPoly::to_json).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BiPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("expected array of IntPoly forms".into()))?;
        let mut zcoeffs = Vec::with_capacity(arr.len());
        for e in arr {
            zcoeffs.push(IntPoly::from_json(e)?);
        }
        Ok(BiPoly::from_zcoeffs(zcoeffs))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.zcoeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
