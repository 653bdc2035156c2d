use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use serde::Serialize;

use super::{Semiring, SemiringError};
use crate::SeededRng;

/// Carriers up to this many triples are checked exhaustively.
const EXHAUSTIVE_TRIPLES: usize = 1 << 21;

/// Outcome of iterating `u^(q) = 1 ⊕ u ⊕ … ⊕ u^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityResult<E> {
    /// Smallest `q` with `u^(q) = u^(q+1)`, or `None` if none was found up to the cap.
    pub index: Option<usize>,
    /// `u^(0), u^(1), …`, ending at `u^(q+1)` on convergence or `u^(cap+1)` otherwise.
    pub sequence: Vec<E>,
}

/// `u^(0), …, u^(k)`.
pub fn power_sums<S: Semiring>(s: &S, u: &S::Elem, k: usize) -> Vec<S::Elem> {
    let mut out = Vec::with_capacity(k + 1);
    let mut power = s.one();
    out.push(power.clone());
    for _ in 0..k {
        power = s.mul(&power, u);
        let next = s.add(out.last().unwrap(), &power);
        out.push(next);
    }
    out
}

pub fn element_stability<S: Semiring>(s: &S, u: &S::Elem, cap: usize) -> StabilityResult<S::Elem> {
    let mut sequence = vec![s.one()];
    let mut power = s.one();
    for q in 0..=cap {
        power = s.mul(&power, u);
        let next = s.add(&sequence[q], &power);
        let stable = next == sequence[q];
        sequence.push(next);
        if stable {
            return StabilityResult {
                index: Some(q),
                sequence,
            };
        }
    }
    StabilityResult {
        index: None,
        sequence,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringStability<E> {
    /// Maximum element stability index, `None` if some element exceeded the cap.
    pub index: Option<usize>,
    /// First element attaining the maximum, or the first element that never stabilised.
    pub witness: E,
}

pub fn semiring_stability<S: Semiring>(
    s: &S,
    cap: usize,
) -> Result<SemiringStability<S::Elem>, SemiringError> {
    let elements = carrier(s, "semiring_stability")?;
    let mut best: Option<(usize, S::Elem)> = None;
    for u in elements {
        match element_stability(s, &u, cap).index {
            None => {
                return Ok(SemiringStability {
                    index: None,
                    witness: u,
                })
            }
            Some(q) => {
                if best.as_ref().is_none_or(|(b, _)| q > *b) {
                    best = Some((q, u));
                }
            }
        }
    }
    let (index, witness) = best.unwrap_or((0, s.zero()));
    Ok(SemiringStability {
        index: Some(index),
        witness,
    })
}

/// `u ⊕ u ⊕ … ⊕ u` with `m` copies; zero when `m = 0`.
pub fn scalar_repeat<S: Semiring>(s: &S, u: &S::Elem, m: usize) -> S::Elem {
    (0..m).fold(s.zero(), |acc, _| s.add(&acc, u))
}

fn carrier<S: Semiring>(s: &S, op: &'static str) -> Result<Vec<S::Elem>, SemiringError> {
    s.elements().ok_or_else(|| SemiringError::Unsupported {
        op,
        semiring: s.id().to_string(),
    })
}

/// `x ⪯ y` iff some `z` in the carrier has `x ⊕ z = y`.
pub fn natural_order_leq<S: Semiring>(
    s: &S,
    x: &S::Elem,
    y: &S::Elem,
) -> Result<bool, SemiringError> {
    let elements = carrier(s, "natural_order_leq")?;
    Ok(elements.iter().any(|z| s.add(x, z) == *y))
}

/// Number of strict steps in the longest chain of the natural order.
pub fn longest_chain<S: Semiring>(s: &S) -> Result<usize, SemiringError> {
    let elements = carrier(s, "longest_chain")?;
    let m = elements.len();
    let index: HashMap<&S::Elem, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut leq = vec![vec![false; m]; m];
    for (i, x) in elements.iter().enumerate() {
        for z in &elements {
            let y = s.add(x, z);
            let j = index[&y];
            leq[i][j] = true;
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if leq[i][j] && leq[j][i] {
                return Err(SemiringError::NotNaturallyOrdered(s.id().to_string()));
            }
        }
    }
    // Longest path in the strict-order DAG, memoised by depth-first search.
    let mut memo: Vec<Option<usize>> = vec![None; m];
    fn longest_from(v: usize, leq: &[Vec<bool>], memo: &mut [Option<usize>]) -> usize {
        if let Some(d) = memo[v] {
            return d;
        }
        let mut best = 0;
        for w in 0..leq.len() {
            if w != v && leq[v][w] {
                best = best.max(1 + longest_from(w, leq, memo));
            }
        }
        memo[v] = Some(best);
        best
    }
    Ok((0..m)
        .map(|v| longest_from(v, &leq, &mut memo))
        .max()
        .unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulCommutative,
    MulIdentity,
    ZeroAnnihilates,
    Distributive,
    LiteralRoundTrip,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::AddAssociative,
        Axiom::AddCommutative,
        Axiom::AddIdentity,
        Axiom::MulAssociative,
        Axiom::MulCommutative,
        Axiom::MulIdentity,
        Axiom::ZeroAnnihilates,
        Axiom::Distributive,
        Axiom::LiteralRoundTrip,
    ];

    fn law(self) -> &'static str {
        match self {
            Axiom::AddAssociative => "(a⊕b)⊕c = a⊕(b⊕c)",
            Axiom::AddCommutative => "a⊕b = b⊕a",
            Axiom::AddIdentity => "a⊕0 = a",
            Axiom::MulAssociative => "(a⊗b)⊗c = a⊗(b⊗c)",
            Axiom::MulCommutative => "a⊗b = b⊗a",
            Axiom::MulIdentity => "a⊗1 = a",
            Axiom::ZeroAnnihilates => "a⊗0 = 0⊗a = 0",
            Axiom::Distributive => "a⊗(b⊕c) = (a⊗b)⊕(a⊗c)",
            Axiom::LiteralRoundTrip => "parse(print(a)) = a",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.law())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub checked: usize,
    /// Offending `(a, b, c)` rendered as literals.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub semiring: String,
    pub mode: CheckMode,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).unwrap()
    }
}

fn holds<S: Semiring>(s: &S, axiom: Axiom, a: &S::Elem, b: &S::Elem, c: &S::Elem) -> bool {
    match axiom {
        Axiom::AddAssociative => s.add(&s.add(a, b), c) == s.add(a, &s.add(b, c)),
        Axiom::AddCommutative => s.add(a, b) == s.add(b, a),
        Axiom::AddIdentity => s.add(a, &s.zero()) == *a && s.add(&s.zero(), a) == *a,
        Axiom::MulAssociative => s.mul(&s.mul(a, b), c) == s.mul(a, &s.mul(b, c)),
        Axiom::MulCommutative => s.mul(a, b) == s.mul(b, a),
        Axiom::MulIdentity => s.mul(a, &s.one()) == *a && s.mul(&s.one(), a) == *a,
        Axiom::ZeroAnnihilates => {
            s.is_zero(&s.mul(a, &s.zero())) && s.is_zero(&s.mul(&s.zero(), a))
        }
        Axiom::Distributive => {
            s.mul(a, &s.add(b, c)) == s.add(&s.mul(a, b), &s.mul(a, c))
                && s.mul(&s.add(b, c), a) == s.add(&s.mul(b, a), &s.mul(c, a))
        }
        Axiom::LiteralRoundTrip => s.parse(&s.format(a)).as_ref() == Ok(a),
    }
}

/// Checks every semiring law, exhaustively for small finite carriers and by
/// seeded sampling of `budget` triples otherwise.
pub fn check_axioms<S: Semiring>(s: &S, budget: usize, seed: u64) -> AxiomReport {
    let mut checks: Vec<AxiomCheck> = Axiom::ALL
        .iter()
        .map(|&axiom| AxiomCheck {
            axiom,
            passed: true,
            checked: 0,
            counterexample: None,
        })
        .collect();
    let mut visit = |a: &S::Elem, b: &S::Elem, c: &S::Elem| {
        for check in checks.iter_mut().filter(|c| c.passed) {
            check.checked += 1;
            if !holds(s, check.axiom, a, b, c) {
                check.passed = false;
                check.counterexample = Some(format!(
                    "a={}, b={}, c={}",
                    s.format(a),
                    s.format(b),
                    s.format(c)
                ));
            }
        }
    };
    let exhaustive = s
        .elements()
        .filter(|e| e.len().saturating_pow(3) <= EXHAUSTIVE_TRIPLES);
    let mode = match exhaustive {
        Some(elements) => {
            for a in &elements {
                for b in &elements {
                    for c in &elements {
                        visit(a, b, c);
                    }
                }
            }
            CheckMode::Exhaustive
        }
        None => {
            let mut rng = SeededRng::seed_from_u64(seed);
            for _ in 0..budget {
                let (a, b, c) = (s.sample(&mut rng), s.sample(&mut rng), s.sample(&mut rng));
                visit(&a, &b, &c);
            }
            CheckMode::Sampled
        }
    };
    AxiomReport {
        semiring: s.id().to_string(),
        mode,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Capped, CappedValue, TropP, TropValue, Tropical};

    #[test]
    fn element_stability_examples() {
        assert_eq!(element_stability(&Boolean, &true, 10).index, Some(0));
        assert_eq!(
            element_stability(&Tropical, &TropValue::int(5), 10).index,
            Some(0)
        );
        let s = Capped::new(4);
        let r = element_stability(&s, &s.int(1), 10);
        assert_eq!(r.index, Some(3));
        // min(q(q+1)/2, 4)
        let expected: Vec<CappedValue> = [0, 1, 3, 4, 4].iter().map(|&v| s.int(v)).collect();
        assert_eq!(r.sequence, expected);
        assert_eq!(power_sums(&s, &s.int(1), 4), expected);
    }

    #[test]
    fn element_stability_cap() {
        let s = Capped::new(4);
        let r = element_stability(&s, &s.int(1), 2);
        assert_eq!(r.index, None);
        assert_eq!(r.sequence.len(), 4);
        assert_eq!(element_stability(&s, &s.int(1), 3).index, Some(3));
    }

    #[test]
    fn semiring_stability_examples() {
        assert_eq!(semiring_stability(&Boolean, 10).unwrap().index, Some(0));
        let capped = Capped::new(4);
        let st = semiring_stability(&capped, 10).unwrap();
        assert_eq!(st.index, Some(3));
        assert_eq!(st.witness, capped.int(1));
        let trop1 = TropP::new(1, Some(1));
        assert_eq!(semiring_stability(&trop1, 10).unwrap().index, Some(1));
        assert!(matches!(
            semiring_stability(&Tropical, 10),
            Err(SemiringError::Unsupported { .. })
        ));
    }

    #[test]
    fn scalar_repeat_examples() {
        assert!(scalar_repeat(&Boolean, &true, 3));
        let capped = Capped::new(4);
        assert_eq!(scalar_repeat(&capped, &capped.int(2), 3), capped.int(4));
        assert_eq!(scalar_repeat(&capped, &capped.int(2), 0), CappedValue::O);
        let t2 = TropP::new(2, None);
        assert_eq!(
            scalar_repeat(&t2, &t2.ints(&[3, 7, 9]), 2),
            t2.ints(&[3, 3, 7])
        );
    }

    #[test]
    fn natural_order_examples() {
        assert!(natural_order_leq(&Boolean, &false, &true).unwrap());
        let s = Capped::new(4);
        assert!(natural_order_leq(&s, &CappedValue::O, &s.int(2)).unwrap());
        assert!(!natural_order_leq(&s, &s.int(3), &s.int(1)).unwrap());
        assert!(natural_order_leq(&Tropical, &TropValue::Inf, &TropValue::int(1)).is_err());
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(longest_chain(&Boolean).unwrap(), 1);
        assert_eq!(longest_chain(&Capped::new(4)).unwrap(), 5);
        assert_eq!(longest_chain(&TropP::new(0, Some(0))).unwrap(), 1);
    }

    #[test]
    fn chain_of_trivial_semiring_is_zero() {
        // A one-element carrier: zero = one.
        #[derive(Debug)]
        struct Trivial;
        impl Semiring for Trivial {
            type Elem = ();
            fn id(&self) -> crate::semiring::SemiringId {
                crate::semiring::SemiringId::Bool
            }
            fn zero(&self) {}
            fn one(&self) {}
            fn add(&self, _: &(), _: &()) {}
            fn mul(&self, _: &(), _: &()) {}
            fn parse(&self, _: &str) -> Result<(), SemiringError> {
                Ok(())
            }
            fn format(&self, _: &()) -> String {
                "()".into()
            }
            fn elements(&self) -> Option<Vec<()>> {
                Some(vec![()])
            }
            fn sample(&self, _: &mut dyn rand::RngCore) {}
            fn from_weight(&self, _: u32) {}
        }
        assert_eq!(longest_chain(&Trivial).unwrap(), 0);
        assert_eq!(semiring_stability(&Trivial, 5).unwrap().index, Some(0));
    }

    #[test]
    fn axioms_exhaustive_bool() {
        let r = check_axioms(&Boolean, 100, 0);
        assert_eq!(r.mode, CheckMode::Exhaustive);
        assert!(r.all_passed());
        assert_eq!(r.get(Axiom::Distributive).checked, 8);
    }

    #[test]
    fn axioms_capped_fail_only_distributivity() {
        let r = check_axioms(&Capped::new(4), 100, 0);
        for check in &r.checks {
            assert_eq!(
                check.passed,
                check.axiom != Axiom::Distributive,
                "{}",
                check.axiom
            );
        }
        assert!(r.get(Axiom::Distributive).counterexample.is_some());
        assert!(check_axioms(&Capped::new(1), 100, 0).all_passed());
    }

    #[test]
    fn axioms_sampled_trop() {
        let r = check_axioms(&Tropical, 2000, 7);
        assert_eq!(r.mode, CheckMode::Sampled);
        assert!(r.all_passed());
        assert_eq!(r.get(Axiom::AddCommutative).checked, 2000);
    }
}
