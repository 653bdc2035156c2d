use std::fmt;

use rand::{Rng, RngCore};

use super::{Semiring, SemiringError, SemiringId};

/// An element of the capped-addition structure: the special element `O` or an
/// integer in `[0, L]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CappedValue {
    O,
    Int(u32),
}

impl fmt::Display for CappedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CappedValue::O => f.write_str("O"),
            CappedValue::Int(v) => write!(f, "{v}"),
        }
    }
}

/// Integers `0..=L` plus `O`, where both operations are addition capped at `L`.
///
/// `O` is the additive identity and annihilates under multiplication; the
/// integer `0` is the multiplicative identity. Multiplication does not
/// distribute over addition once `L >= 2` (`1⊗(0⊕0) = 1` but
/// `(1⊗0)⊕(1⊗0) = 2`), so this is a pre-semiring rather than a semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capped {
    cap: u32,
}

impl Capped {
    pub fn new(cap: u32) -> Self {
        assert!(cap >= 1, "cap must be positive");
        Capped { cap }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn int(&self, v: u32) -> CappedValue {
        CappedValue::Int(v.min(self.cap))
    }

    fn capped_sum(&self, a: u32, b: u32) -> u32 {
        a.saturating_add(b).min(self.cap)
    }
}

impl Semiring for Capped {
    type Elem = CappedValue;

    fn id(&self) -> SemiringId {
        SemiringId::Capped { cap: self.cap }
    }

    fn zero(&self) -> CappedValue {
        CappedValue::O
    }

    fn one(&self) -> CappedValue {
        CappedValue::Int(0)
    }

    fn add(&self, a: &CappedValue, b: &CappedValue) -> CappedValue {
        match (a, b) {
            (CappedValue::O, x) | (x, CappedValue::O) => *x,
            (CappedValue::Int(x), CappedValue::Int(y)) => CappedValue::Int(self.capped_sum(*x, *y)),
        }
    }

    fn mul(&self, a: &CappedValue, b: &CappedValue) -> CappedValue {
        match (a, b) {
            (CappedValue::O, _) | (_, CappedValue::O) => CappedValue::O,
            (CappedValue::Int(x), CappedValue::Int(y)) => CappedValue::Int(self.capped_sum(*x, *y)),
        }
    }

    fn parse(&self, literal: &str) -> Result<CappedValue, SemiringError> {
        let t = literal.trim();
        if t == "O" {
            return Ok(CappedValue::O);
        }
        let err = |reason: String| SemiringError::MalformedLiteral {
            semiring: self.id().to_string(),
            literal: t.into(),
            reason,
        };
        let v: u32 = t
            .parse()
            .map_err(|_| err("expected `O` or a non-negative integer".into()))?;
        if v > self.cap {
            return Err(err(format!("exceeds the cap {}", self.cap)));
        }
        Ok(CappedValue::Int(v))
    }

    fn format(&self, value: &CappedValue) -> String {
        value.to_string()
    }

    fn elements(&self) -> Option<Vec<CappedValue>> {
        let mut all = vec![CappedValue::O];
        all.extend((0..=self.cap).map(CappedValue::Int));
        Some(all)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> CappedValue {
        let v = rng.random_range(0..=self.cap + 1);
        if v == self.cap + 1 {
            CappedValue::O
        } else {
            CappedValue::Int(v)
        }
    }

    fn from_weight(&self, weight: u32) -> CappedValue {
        self.int(weight)
    }
}
