//! Commutative semirings and their element-level analysis.
//!
//! A semiring here is a runtime value: instances such as `trop_p:2` or
//! `capped:4` carry their parameters, so every operation takes `&self`.
//! Elements are plain values with exact, decidable equality.

mod analysis;
mod boolean;
mod capped;
mod trop_p;
mod tropical;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rand::RngCore;
use thiserror::Error;

pub use analysis::{
    check_axioms, element_stability, longest_chain, natural_order_leq, power_sums, scalar_repeat,
    semiring_stability, Axiom, AxiomCheck, AxiomReport, CheckMode, SemiringStability,
    StabilityResult,
};
pub use boolean::Boolean;
pub use capped::{Capped, CappedValue};
pub use trop_p::{bag_sum, bag_union, min_p, TropBag, TropP};
pub use tropical::{TropValue, Tropical};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemiringError {
    #[error("malformed {semiring} literal `{literal}`: {reason}")]
    MalformedLiteral {
        semiring: String,
        literal: String,
        reason: String,
    },
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("unknown semiring identifier `{0}`")]
    UnknownId(String),
    #[error("{op} requires an enumerable carrier, `{semiring}` is symbolic")]
    Unsupported { op: &'static str, semiring: String },
    #[error("`{0}` is not naturally ordered: the relation x ⪯ y is not antisymmetric")]
    NotNaturallyOrdered(String),
}

/// A commutative semiring with a literal codec.
pub trait Semiring: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn id(&self) -> SemiringId;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn parse(&self, literal: &str) -> Result<Self::Elem, SemiringError>;
    fn format(&self, value: &Self::Elem) -> String;

    /// Every element of the carrier, in a fixed order, when the carrier is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// A pseudorandom element, used for sampled axiom checks and generators.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Converts a non-negative integer edge weight into an element.
    fn from_weight(&self, weight: u32) -> Self::Elem;

    /// A closed-form stability claim for symbolic carriers, with its justification.
    fn analytic_stability(&self) -> Option<(usize, &'static str)> {
        None
    }

    fn is_zero(&self, value: &Self::Elem) -> bool {
        *value == self.zero()
    }

    fn sum<'a, I>(&self, values: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        values
            .into_iter()
            .fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    fn product<'a, I>(&self, values: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        values
            .into_iter()
            .fold(self.one(), |acc, v| self.mul(&acc, v))
    }

    fn pow(&self, base: &Self::Elem, exp: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, base);
        }
        acc
    }
}

/// Configuration identifier of a built-in semiring.
///
/// `bool`, `trop`, `trop_p:<p>`, `trop_p:<p>:<K>` (entries truncated to
/// `{0..K, inf}`, a finite quotient of `trop_p:<p>`) and `capped:<L>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringId {
    Bool,
    Trop,
    TropP { p: usize, bound: Option<u32> },
    Capped { cap: u32 },
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringId::Bool => f.write_str("bool"),
            SemiringId::Trop => f.write_str("trop"),
            SemiringId::TropP { p, bound: None } => write!(f, "trop_p:{p}"),
            SemiringId::TropP { p, bound: Some(k) } => write!(f, "trop_p:{p}:{k}"),
            SemiringId::Capped { cap } => write!(f, "capped:{cap}"),
        }
    }
}

impl FromStr for SemiringId {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SemiringError::UnknownId(s.to_string());
        let mut parts = s.trim().split(':');
        let head = parts.next().ok_or_else(unknown)?;
        let rest: Vec<&str> = parts.collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| unknown());
        match (head, rest.as_slice()) {
            ("bool", []) => Ok(SemiringId::Bool),
            ("trop", []) => Ok(SemiringId::Trop),
            ("trop_p", [p]) => Ok(SemiringId::TropP {
                p: num(p)? as usize,
                bound: None,
            }),
            ("trop_p", [p, k]) => Ok(SemiringId::TropP {
                p: num(p)? as usize,
                bound: Some(u32::try_from(num(k)?).map_err(|_| unknown())?),
            }),
            ("capped", [l]) => {
                let cap = u32::try_from(num(l)?).map_err(|_| unknown())?;
                if cap == 0 {
                    return Err(unknown());
                }
                Ok(SemiringId::Capped { cap })
            }
            _ => Err(unknown()),
        }
    }
}

impl SemiringId {
    pub fn instantiate(self) -> AnySemiring {
        match self {
            SemiringId::Bool => AnySemiring::Bool(Boolean),
            SemiringId::Trop => AnySemiring::Trop(Tropical),
            SemiringId::TropP { p, bound } => AnySemiring::TropP(TropP::new(p, bound)),
            SemiringId::Capped { cap } => AnySemiring::Capped(Capped::new(cap)),
        }
    }
}

/// A built-in semiring selected at runtime. Use [`with_semiring!`](crate::with_semiring)
/// to run generic code against the concrete instance.
#[derive(Debug, Clone)]
pub enum AnySemiring {
    Bool(Boolean),
    Trop(Tropical),
    TropP(TropP),
    Capped(Capped),
}

impl AnySemiring {
    pub fn id(&self) -> SemiringId {
        match self {
            AnySemiring::Bool(s) => s.id(),
            AnySemiring::Trop(s) => s.id(),
            AnySemiring::TropP(s) => s.id(),
            AnySemiring::Capped(s) => s.id(),
        }
    }
}

impl FromStr for AnySemiring {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.parse::<SemiringId>()?.instantiate())
    }
}

/// Dispatches on an [`AnySemiring`], binding the concrete instance to `$s`.
#[macro_export]
macro_rules! with_semiring {
    ($any:expr, |$s:ident| $body:expr) => {
        match $any {
            $crate::semiring::AnySemiring::Bool($s) => $body,
            $crate::semiring::AnySemiring::Trop($s) => $body,
            $crate::semiring::AnySemiring::TropP($s) => $body,
            $crate::semiring::AnySemiring::Capped($s) => $body,
        }
    };
}
