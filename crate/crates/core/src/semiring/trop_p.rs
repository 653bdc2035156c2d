use std::fmt;

use num_rational::Ratio;
use rand::{Rng, RngCore};

use super::tropical::{sample_value, TropValue};
use super::{Semiring, SemiringError, SemiringId};

/// A bag of exactly `p+1` tropical values kept in ascending order, padded with `inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropBag(Vec<TropValue>);

impl TropBag {
    pub fn entries(&self) -> &[TropValue] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TropBag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let finite: Vec<String> = self
            .0
            .iter()
            .filter(|v| !v.is_inf())
            .map(ToString::to_string)
            .collect();
        write!(f, "[{}]", finite.join(","))
    }
}

/// The smallest `p+1` elements of an arbitrary bag, ascending.
pub fn min_p(p: usize, bag: &[TropValue]) -> Vec<TropValue> {
    let mut sorted = bag.to_vec();
    sorted.sort();
    sorted.truncate(p + 1);
    sorted
}

/// Bag union `x ⊎ y`.
pub fn bag_union(x: &[TropValue], y: &[TropValue]) -> Vec<TropValue> {
    x.iter().chain(y).cloned().collect()
}

/// Pairwise-sum bag `x + y`.
pub fn bag_sum(x: &[TropValue], y: &[TropValue]) -> Vec<TropValue> {
    x.iter()
        .flat_map(|u| y.iter().map(move |v| u.plus(v)))
        .collect()
}

/// `Trop_p⁺`: bags of `p+1` values with `min_p`-truncated union and pairwise sums.
///
/// With `bound = Some(K)` every entry above `K` collapses to `inf`. Collapsing is
/// monotone and compatible with both `min` and `+` on non-negative values, so the
/// result is a finite quotient semiring with the same stability index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TropP {
    p: usize,
    bound: Option<u32>,
}

impl TropP {
    pub fn new(p: usize, bound: Option<u32>) -> Self {
        TropP { p, bound }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    fn truncate(&self, v: TropValue) -> TropValue {
        match (self.bound, &v) {
            (Some(k), TropValue::Fin(r)) if *r > Ratio::from_integer(k as i64) => TropValue::Inf,
            _ => v,
        }
    }

    fn canonical(&self, mut values: Vec<TropValue>) -> TropBag {
        values = values.into_iter().map(|v| self.truncate(v)).collect();
        let mut bag = min_p(self.p, &values);
        bag.resize(self.p + 1, TropValue::Inf);
        TropBag(bag)
    }

    /// Builds a bag from at most `p+1` entries, padding with `inf`.
    pub fn bag(&self, values: &[TropValue]) -> Result<TropBag, SemiringError> {
        if values.len() > self.p + 1 {
            return Err(SemiringError::MalformedElement(format!(
                "bag of {} entries exceeds p+1 = {}",
                values.len(),
                self.p + 1
            )));
        }
        Ok(self.canonical(values.to_vec()))
    }

    /// Builds a bag from integer entries; convenience for tests and examples.
    pub fn ints(&self, values: &[i64]) -> TropBag {
        let vals: Vec<TropValue> = values.iter().map(|&v| TropValue::int(v)).collect();
        self.bag(&vals).expect("too many entries")
    }

    fn check(&self, x: &TropBag) -> Result<(), SemiringError> {
        if x.len() != self.p + 1 {
            return Err(SemiringError::MalformedElement(format!(
                "bag has {} entries, expected p+1 = {}",
                x.len(),
                self.p + 1
            )));
        }
        Ok(())
    }

    /// `x ⊕_p y = min_p(x ⊎ y)`, rejecting bags of the wrong length.
    pub fn try_add(&self, x: &TropBag, y: &TropBag) -> Result<TropBag, SemiringError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    /// `x ⊗_p y = min_p(x + y)`, rejecting bags of the wrong length.
    pub fn try_mul(&self, x: &TropBag, y: &TropBag) -> Result<TropBag, SemiringError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }
}

fn multisets(values: &[TropValue], size: usize) -> Vec<Vec<TropValue>> {
    fn go(
        values: &[TropValue],
        start: usize,
        size: usize,
        cur: &mut Vec<TropValue>,
        out: &mut Vec<Vec<TropValue>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..values.len() {
            cur.push(values[i].clone());
            go(values, i, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, 0, size, &mut Vec::with_capacity(size), &mut out);
    out
}

impl Semiring for TropP {
    type Elem = TropBag;

    fn id(&self) -> SemiringId {
        SemiringId::TropP {
            p: self.p,
            bound: self.bound,
        }
    }

    fn zero(&self) -> TropBag {
        TropBag(vec![TropValue::Inf; self.p + 1])
    }

    fn one(&self) -> TropBag {
        self.canonical(vec![TropValue::int(0)])
    }

    fn add(&self, a: &TropBag, b: &TropBag) -> TropBag {
        self.canonical(bag_union(&a.0, &b.0))
    }

    fn mul(&self, a: &TropBag, b: &TropBag) -> TropBag {
        self.canonical(bag_sum(&a.0, &b.0))
    }

    fn parse(&self, literal: &str) -> Result<TropBag, SemiringError> {
        let err = |reason: String| SemiringError::MalformedLiteral {
            semiring: self.id().to_string(),
            literal: literal.into(),
            reason,
        };
        let inner = literal
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| err("expected `[v0,v1,...]`".into()))?;
        let values = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(TropValue::parse)
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?
        };
        self.bag(&values).map_err(|e| err(e.to_string()))
    }

    fn format(&self, value: &TropBag) -> String {
        value.to_string()
    }

    fn elements(&self) -> Option<Vec<TropBag>> {
        let k = self.bound?;
        let mut values: Vec<TropValue> = (0..=k as i64).map(TropValue::int).collect();
        values.push(TropValue::Inf);
        Some(
            multisets(&values, self.p + 1)
                .into_iter()
                .map(TropBag)
                .collect(),
        )
    }

    fn sample(&self, rng: &mut dyn RngCore) -> TropBag {
        let len = rng.random_range(0..=self.p + 1);
        let values: Vec<TropValue> = match self.bound {
            Some(k) => (0..len)
                .map(|_| {
                    let v = rng.random_range(0..=k as i64 + 1);
                    if v > k as i64 {
                        TropValue::Inf
                    } else {
                        TropValue::int(v)
                    }
                })
                .collect(),
            None => (0..len).map(|_| sample_value(rng)).collect(),
        };
        self.canonical(values)
    }

    fn from_weight(&self, weight: u32) -> TropBag {
        self.canonical(vec![TropValue::int(weight as i64)])
    }

    fn analytic_stability(&self) -> Option<(usize, &'static str)> {
        Some((self.p, "Trop_p⁺ is p-stable"))
    }
}
