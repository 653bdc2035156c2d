//! Convergence bounds for naive evaluation and their comparison with measured
//! stability indices.
//!
//! All bound arithmetic is exact: the exponential formulas overflow machine
//! integers long before `n` gets interesting.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::engine::{matrix_stability_index, naive_eval_linear, LinearSystem, Mode};
use crate::semiring::{longest_chain, semiring_stability, Semiring};

/// Default iteration cap when no bound is available.
pub const DEFAULT_CAP: usize = 1_000_000;

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

/// `n(n² − n)(p + 2) + n − 1`, and `0` for `n = 0`.
pub fn bound_linear_pn3(n: usize, p: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let n_b = big(n);
    &n_b * (&n_b * &n_b - &n_b) * big(p + 2) + n_b - 1u32
}

/// `⌈8p(lg L + 1)n⌉ + 1`, evaluated exactly.
///
/// With `c = 8pn` the value is `c + ⌈c·lg L⌉ + 1`, and `⌈c·lg L⌉` is the
/// least `m` with `2^m ≥ L^c`, i.e. the bit length of `L^c − 1`.
pub fn bound_linear_pnlogl(n: usize, p: usize, l: usize) -> BigUint {
    assert!(l >= 1, "the carrier has at least one element");
    let c = 8 * p * n;
    let power = num_traits::pow(big(l), c);
    let m = (power - 1u32).bits();
    big(c) + BigUint::from(m) + 1u32
}

/// `Σ_{i=1}^{n} (p + 2)^i`.
pub fn bound_general_exp(n: usize, p: usize) -> BigUint {
    geometric(n, p + 2)
}

/// `Σ_{i=1}^{n} (p + 1)^i`.
pub fn bound_linear_exp(n: usize, p: usize) -> BigUint {
    geometric(n, p + 1)
}

fn geometric(n: usize, base: usize) -> BigUint {
    let base = big(base);
    let mut term = BigUint::one();
    let mut total = BigUint::zero();
    for _ in 0..n {
        term *= &base;
        total += &term;
    }
    total
}

/// `n`, for 0-stable semirings.
pub fn bound_zero_stable(n: usize) -> BigUint {
    big(n)
}

/// `n × chain` for naturally ordered semirings.
pub fn bound_naturally_ordered(n: usize, chain: usize) -> BigUint {
    big(n) * big(chain)
}

/// `n·p·L`.
pub fn bound_loose_npl(n: usize, p: usize, l: usize) -> BigUint {
    big(n) * big(p) * big(l)
}

/// Semiring-level parameters feeding the bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiringFacts {
    pub semiring: String,
    /// Stability of the whole semiring; `None` when unknown or unstable within the search cap.
    pub p: Option<usize>,
    /// Carrier size.
    pub l: Option<usize>,
    /// Longest chain of the natural order; `None` when not naturally ordered or symbolic.
    pub chain: Option<usize>,
    /// True when `p` and `L` were supplied by the user rather than computed.
    pub claimed: bool,
}

impl SemiringFacts {
    /// Computes `p`, `L` and the chain length exhaustively for finite
    /// carriers; symbolic carriers get none of them.
    pub fn compute<S: Semiring>(s: &S) -> Self {
        let l = s.elements().map(|e| e.len());
        let p = l.and_then(|size| {
            semiring_stability(s, 4 * size + 16)
                .ok()
                .and_then(|st| st.index)
        });
        SemiringFacts {
            semiring: s.id().to_string(),
            p,
            l,
            chain: longest_chain(s).ok(),
            claimed: false,
        }
    }

    /// Overrides `p` and `L` with user claims; these are reported as unverified.
    pub fn with_claims(mut self, p: Option<usize>, l: Option<usize>) -> Self {
        if p.is_some() || l.is_some() {
            self.claimed = true;
        }
        self.p = p.or(self.p);
        self.l = l.or(self.l);
        self
    }
}

fn as_decimal<S: Serializer>(v: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
    /// Degenerate bounds (formulas evaluated at `p = 0`) are reported but not checked.
    pub enforced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub instance: String,
    pub semiring: String,
    pub raw_n: usize,
    pub n: usize,
    pub p: Option<usize>,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    pub chain: Option<usize>,
    pub claimed: bool,
    pub cap: usize,
    /// Power-sum index of `b`: least `k` with `A^(k) b = A^(k+1) b`.
    pub measured: Option<usize>,
    /// Least `q` with `x^(q) = x^(q+1)` in the iteration trace.
    pub trace_index: Option<usize>,
    /// Least `k` with `A^(k) = A^(k+1)`.
    pub matrix_index: Option<usize>,
    pub bounds: BTreeMap<String, BoundValue>,
    pub violations: Vec<String>,
}

impl BoundReport {
    pub fn violated(&self) -> bool {
        !self.violations.is_empty()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Every bound that applies under the given facts.
pub fn applicable_bounds(
    n: usize,
    linear: bool,
    facts: &SemiringFacts,
) -> BTreeMap<String, BoundValue> {
    let mut out = BTreeMap::new();
    let mut put = |name: &str, value: BigUint, enforced: bool| {
        out.insert(name.to_string(), BoundValue { value, enforced });
    };
    if let Some(p) = facts.p {
        put("pn3", bound_linear_pn3(n, p), true);
        put("general_exp", bound_general_exp(n, p), true);
        if linear {
            put("linear_exp", bound_linear_exp(n, p), true);
        }
        if p == 0 {
            put("zero_stable", bound_zero_stable(n), true);
        }
        if let Some(l) = facts.l {
            put("pnlogL", bound_linear_pnlogl(n, p, l), p > 0);
            put("npL", bound_loose_npl(n, p, l), p > 0);
        }
    }
    if let Some(chain) = facts.chain {
        put("naturally_ordered", bound_naturally_ordered(n, chain), true);
    }
    out
}

/// Iteration cap covering every enforced bound: the largest one plus one,
/// clamped to [`DEFAULT_CAP`]; [`DEFAULT_CAP`] when nothing is enforced.
pub fn default_cap(bounds: &BTreeMap<String, BoundValue>) -> usize {
    bounds
        .values()
        .filter(|b| b.enforced)
        .map(|b| b.value.to_usize().unwrap_or(usize::MAX).saturating_add(1))
        .max()
        .map_or(DEFAULT_CAP, |c| c.clamp(1, DEFAULT_CAP))
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub instance: String,
    /// Overrides [`default_cap`].
    pub cap: Option<usize>,
    pub mode: Mode,
    /// Skip pruning of atoms that stay zero.
    pub no_prune: bool,
    /// Skip the matrix-level index, which costs `n³` per step.
    pub skip_matrix: bool,
}

/// Measures a system and checks the measurement against every applicable bound.
pub fn analyze<S: Semiring>(
    s: &S,
    sys: &LinearSystem<S::Elem>,
    facts: &SemiringFacts,
    opts: &AnalyzeOptions,
) -> BoundReport {
    let sys = if opts.no_prune {
        sys.clone()
    } else {
        sys.prune(s)
    };
    let n = sys.n();
    let bounds = applicable_bounds(n, true, facts);
    let cap = opts.cap.unwrap_or_else(|| default_cap(&bounds)).max(1);
    let trace = naive_eval_linear(s, &sys, cap, opts.mode);
    let measured = trace.power_sum_index();
    let matrix_index = if opts.skip_matrix {
        None
    } else {
        matrix_stability_index(s, &sys.a, cap)
    };
    let mut violations = Vec::new();
    for (name, b) in bounds.iter().filter(|(_, b)| b.enforced) {
        match measured {
            Some(m) if big(m) > b.value => {
                violations.push(format!("{name}: measured {m} > {}", b.value));
            }
            Some(_) => {}
            // No convergence within `cap` steps means the index is at least `cap`.
            None if big(cap) > b.value => {
                violations.push(format!(
                    "{name}: no convergence within {cap} steps > {}",
                    b.value
                ));
            }
            None => {}
        }
    }
    BoundReport {
        instance: opts.instance.clone(),
        semiring: facts.semiring.clone(),
        raw_n: sys.raw_n,
        n,
        p: facts.p,
        l: facts.l,
        chain: facts.chain,
        claimed: facts.claimed,
        cap,
        measured,
        trace_index: trace.index,
        matrix_index,
        bounds,
        violations,
    }
}

const CSV_BOUNDS: [&str; 7] = [
    "pn3",
    "pnlogL",
    "npL",
    "general_exp",
    "linear_exp",
    "zero_stable",
    "naturally_ordered",
];

/// One summary row per report.
pub fn write_csv_summary<W: Write>(out: W, reports: &[BoundReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "instance",
        "semiring",
        "raw_n",
        "n",
        "p",
        "L",
        "chain",
        "measured",
        "trace_index",
        "matrix_index",
    ];
    header.extend(CSV_BOUNDS);
    header.push("violation");
    w.write_record(&header)?;
    let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
    for r in reports {
        let mut row = vec![
            r.instance.clone(),
            r.semiring.clone(),
            r.raw_n.to_string(),
            r.n.to_string(),
            opt(r.p),
            opt(r.l),
            opt(r.chain),
            opt(r.measured),
            opt(r.trace_index),
            opt(r.matrix_index),
        ];
        for name in CSV_BOUNDS {
            row.push(
                r.bounds
                    .get(name)
                    .map_or(String::new(), |b| b.value.to_string()),
            );
        }
        row.push(r.violated().to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Matrix;
    use crate::semiring::{Boolean, Capped, Tropical};

    #[test]
    fn pn3_values() {
        assert_eq!(bound_linear_pn3(2, 1), big(13));
        assert_eq!(bound_linear_pn3(1, 5), big(0));
        assert_eq!(bound_linear_pn3(3, 0), big(38));
    }

    #[test]
    fn pnlogl_values() {
        assert_eq!(bound_linear_pnlogl(4, 1, 2), big(65));
        assert_eq!(bound_linear_pnlogl(4, 0, 7), big(1));
        assert_eq!(bound_linear_pnlogl(3, 3, 6), big(260));
        // L = 1: lg L = 0.
        assert_eq!(bound_linear_pnlogl(2, 1, 1), big(17));
    }

    #[test]
    fn exponential_values() {
        assert_eq!(bound_general_exp(2, 1), big(12));
        assert_eq!(bound_linear_exp(2, 1), big(6));
        assert_eq!(bound_general_exp(3, 2), big(84));
        assert_eq!(bound_zero_stable(5), big(5));
        // Far beyond u64.
        assert_eq!(
            bound_general_exp(40, 8).to_string(),
            format!("{}0", "1".repeat(40))
        );
    }

    #[test]
    fn order_and_loose_values() {
        assert_eq!(bound_naturally_ordered(3, 5), big(15));
        assert_eq!(bound_naturally_ordered(3, 0), big(0));
        assert_eq!(bound_loose_npl(2, 3, 6), big(36));
        assert_eq!(bound_loose_npl(5, 0, 6), big(0));
        assert_eq!(bound_loose_npl(4, 1, 2), big(8));
    }

    #[test]
    fn facts_of_builtins() {
        let b = SemiringFacts::compute(&Boolean);
        assert_eq!((b.p, b.l, b.chain), (Some(0), Some(2), Some(1)));
        let c = SemiringFacts::compute(&Capped::new(4));
        assert_eq!((c.p, c.l, c.chain), (Some(3), Some(6), Some(5)));
        let t = SemiringFacts::compute(&Tropical);
        assert_eq!((t.p, t.l, t.chain), (None, None, None));
        assert!(applicable_bounds(3, true, &t).is_empty());
        assert_eq!(default_cap(&applicable_bounds(3, true, &t)), DEFAULT_CAP);
    }

    #[test]
    fn boolean_path_report() {
        let s = Boolean;
        let n = 4;
        let mut a = Matrix::zeros(&s, n);
        for i in 1..n {
            a.set(i, i - 1, true);
        }
        let mut b = vec![false; n];
        b[0] = true;
        let sys = LinearSystem::unnamed(a, b);
        let r = analyze(
            &s,
            &sys,
            &SemiringFacts::compute(&s),
            &AnalyzeOptions::default(),
        );
        assert_eq!(r.measured, Some(3));
        assert_eq!(r.trace_index, Some(4));
        assert!(!r.violated(), "{:?}", r.violations);
        assert_eq!(r.bounds["zero_stable"].value, big(4));
        assert!(!r.bounds["pnlogL"].enforced);
        let line = r.to_json_line();
        assert!(line.contains("\"pn3\":{\"value\":\"99\""), "{line}");
    }

    #[test]
    fn violations_are_flagged() {
        // One atom with a self-loop already exceeds pn3, which is 0 at n = 1.
        let s = Capped::new(4);
        let sys = LinearSystem::unnamed(Matrix::from_rows(&s, vec![vec![s.int(1)]]), vec![s.one()]);
        let facts = SemiringFacts::compute(&s);
        let r = analyze(&s, &sys, &facts, &AnalyzeOptions::default());
        assert_eq!(r.measured, Some(4));
        assert!(r.violations.iter().any(|v| v.starts_with("pn3")));
    }

    #[test]
    fn csv_summary_has_header_and_rows() {
        let s = Boolean;
        let sys = LinearSystem::unnamed(Matrix::zeros(&s, 1), vec![true]);
        let r = analyze(
            &s,
            &sys,
            &SemiringFacts::compute(&s),
            &AnalyzeOptions::default(),
        );
        let mut buf = Vec::new();
        write_csv_summary(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("instance,semiring,raw_n,n,p,L"));
        assert!(lines[1].ends_with(",false"));
    }
}
