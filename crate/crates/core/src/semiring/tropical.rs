use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::{Rng, RngCore};

use super::{Semiring, SemiringError, SemiringId};

/// A non-negative rational or `inf`. Ordered with every finite value below `Inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropValue {
    Fin(Ratio<i64>),
    Inf,
}

impl TropValue {
    pub fn int(v: i64) -> Self {
        TropValue::Fin(Ratio::from_integer(v))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, TropValue::Inf)
    }

    /// Tropical product: ordinary addition, absorbing at `inf`.
    pub fn plus(&self, other: &TropValue) -> TropValue {
        match (self, other) {
            (TropValue::Fin(a), TropValue::Fin(b)) => TropValue::Fin(a + b),
            _ => TropValue::Inf,
        }
    }

    pub fn parse(literal: &str) -> Result<TropValue, String> {
        let t = literal.trim();
        if t == "inf" || t == "∞" {
            return Ok(TropValue::Inf);
        }
        let value = if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num
                .trim()
                .parse()
                .map_err(|_| "bad numerator".to_string())?;
            let den: i64 = den
                .trim()
                .parse()
                .map_err(|_| "bad denominator".to_string())?;
            if den == 0 {
                return Err("zero denominator".into());
            }
            Ratio::new(num, den)
        } else if let Some((whole, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
                return Err("bad decimal".into());
            }
            let negative = whole.starts_with('-');
            let whole: i64 = if whole.is_empty() || whole == "-" {
                0
            } else {
                whole.parse().map_err(|_| "bad decimal".to_string())?
            };
            let scale = 10i64.pow(frac.len() as u32);
            let frac: i64 = frac.parse().map_err(|_| "bad decimal".to_string())?;
            let magnitude = Ratio::from_integer(whole.abs()) + Ratio::new(frac, scale);
            if negative {
                -magnitude
            } else {
                magnitude
            }
        } else {
            Ratio::from_integer(t.parse::<i64>().map_err(|_| "not a number".to_string())?)
        };
        if value.is_negative() {
            return Err("tropical values must be non-negative".into());
        }
        Ok(TropValue::Fin(value))
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Inf => f.write_str("inf"),
            TropValue::Fin(r) if r.is_integer() => write!(f, "{}", r.numer()),
            TropValue::Fin(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

pub(crate) fn sample_value(rng: &mut dyn RngCore) -> TropValue {
    match rng.random_range(0..10u32) {
        0 => TropValue::Inf,
        1 => TropValue::Fin(Ratio::new(
            rng.random_range(0..20i64),
            rng.random_range(1..4i64),
        )),
        _ => TropValue::int(rng.random_range(0..10i64)),
    }
}

/// `Trop⁺ = (ℚ₊ ∪ {inf}, min, +, inf, 0)` over exact rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tropical;

impl Semiring for Tropical {
    type Elem = TropValue;

    fn id(&self) -> SemiringId {
        SemiringId::Trop
    }

    fn zero(&self) -> TropValue {
        TropValue::Inf
    }

    fn one(&self) -> TropValue {
        TropValue::Fin(Ratio::zero())
    }

    fn add(&self, a: &TropValue, b: &TropValue) -> TropValue {
        a.min(b).clone()
    }

    fn mul(&self, a: &TropValue, b: &TropValue) -> TropValue {
        a.plus(b)
    }

    fn parse(&self, literal: &str) -> Result<TropValue, SemiringError> {
        TropValue::parse(literal).map_err(|reason| SemiringError::MalformedLiteral {
            semiring: "trop".into(),
            literal: literal.into(),
            reason,
        })
    }

    fn format(&self, value: &TropValue) -> String {
        value.to_string()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> TropValue {
        sample_value(rng)
    }

    fn from_weight(&self, weight: u32) -> TropValue {
        TropValue::int(weight as i64)
    }

    fn analytic_stability(&self) -> Option<(usize, &'static str)> {
        Some((0, "1⊕u = min(0,u) = 0 = 1"))
    }
}
