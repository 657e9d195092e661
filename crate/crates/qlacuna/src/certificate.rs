//! Verification records.
//!
//! Every verifier in this crate returns a [`Certificate`]: the claim it
//! checked, the parameters, whether it held, and an explicit witness —
//! the quotient on success of a divisibility claim, or the offending
//! remainder on failure.

use serde_json::{json, Map, Value};

use crate::polyring::{BiPoly, IntPoly};

/// Caveats attached to a certificate. A flag never changes `holds`; it
/// records a normalization or an out-of-hypothesis run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    /// A divisor exponent formula went negative and was clamped to 0.
    ClampedExponent,
    /// The sum was a Laurent polynomial (h < 0) and was multiplied by a
    /// power of q to land in Z[q]; cyclotomic divisibility is unaffected.
    LaurentNormalized,
    /// gcd(b, 6) > 1, so the (b^2-1)/24-style constant is outside the
    /// paper's integrality hypothesis; the outcome is reported, not
    /// asserted.
    ExploratoryGcd6,
    /// A term with negative upper binomial/q-integer index was omitted;
    /// the parameters are outside the range the artifact supports.
    NegativeUpperIndex,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::ClampedExponent => "clamped-exponent",
            Flag::LaurentNormalized => "laurent-normalized",
            Flag::ExploratoryGcd6 => "exploratory-gcd6",
            Flag::NegativeUpperIndex => "negative-upper-index",
        }
    }
}

/// Explicit evidence: quotient on success, remainder on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Poly(IntPoly),
    BiPoly(BiPoly),
}

impl Witness {
    fn to_json(&self) -> Value {
        match self {
            Witness::Poly(p) => p.to_json(),
            Witness::BiPoly(p) => p.to_json(),
        }
    }
}

/// Machine-checkable verification record for one claim instance.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub claim_id: String,
    /// Named parameters in declaration order.
    pub params: Vec<(String, i64)>,
    pub holds: bool,
    pub flags: Vec<Flag>,
    pub witness: Option<Witness>,
    pub modulus_desc: String,
    pub wall_time_ms: u64,
}

impl Certificate {
    pub fn new(claim_id: &str, params: Vec<(String, i64)>) -> Self {
        Certificate {
            claim_id: claim_id.to_string(),
            params,
            holds: false,
            flags: Vec::new(),
            witness: None,
            modulus_desc: String::new(),
            wall_time_ms: 0,
        }
    }

    pub fn pass(mut self, witness: Option<Witness>) -> Self {
        self.holds = true;
        self.witness = witness;
        self
    }

    pub fn fail(mut self, witness: Option<Witness>) -> Self {
        self.holds = false;
        self.witness = witness;
        self
    }

    pub fn with_modulus(mut self, desc: impl Into<String>) -> Self {
        self.modulus_desc = desc.into();
        self
    }

    pub fn with_flag(mut self, flag: Flag) -> Self {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
        self
    }

    pub fn with_flags(mut self, flags: &[Flag]) -> Self {
        for &f in flags {
            if !self.flags.contains(&f) {
                self.flags.push(f);
            }
        }
        self
    }

    /// Exploratory certificates report an outcome without asserting it;
    /// sweeps only let them affect the exit code under `--strict`.
    pub fn is_exploratory(&self) -> bool {
        self.flags.contains(&Flag::ExploratoryGcd6)
    }

    /// JSON-lines form. `with_timing` adds the wall_time_ms field, which is
    /// excluded by default so identical invocations stay byte-identical.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), json!(v));
        }
        let mut obj = Map::new();
        obj.insert("claim_id".into(), json!(self.claim_id));
        obj.insert("params".into(), Value::Object(params));
        obj.insert("holds".into(), json!(self.holds));
        obj.insert(
            "flags".into(),
            Value::Array(
                self.flags
                    .iter()
                    .map(|f| Value::String(f.as_str().into()))
                    .collect(),
            ),
        );
        obj.insert(
            "witness".into(),
            self.witness.as_ref().map_or(Value::Null, |w| w.to_json()),
        );
        obj.insert("modulus_desc".into(), json!(self.modulus_desc));
        if with_timing {
            obj.insert("wall_time_ms".into(), json!(self.wall_time_ms));
        }
        Value::Object(obj)
    }
}
