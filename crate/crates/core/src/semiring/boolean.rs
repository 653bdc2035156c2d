use rand::{Rng, RngCore};

use super::{Semiring, SemiringError, SemiringId};

/// `({false, true}, ∨, ∧, false, true)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Boolean;

impl Semiring for Boolean {
    type Elem = bool;

    fn id(&self) -> SemiringId {
        SemiringId::Bool
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn parse(&self, literal: &str) -> Result<bool, SemiringError> {
        match literal.trim() {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(SemiringError::MalformedLiteral {
                semiring: "bool".into(),
                literal: other.into(),
                reason: "expected `true` or `false`".into(),
            }),
        }
    }

    fn format(&self, value: &bool) -> String {
        value.to_string()
    }

    fn elements(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }

    fn sample(&self, rng: &mut dyn RngCore) -> bool {
        rng.random_bool(0.5)
    }

    fn from_weight(&self, _weight: u32) -> bool {
        true
    }

    fn analytic_stability(&self) -> Option<(usize, &'static str)> {
        Some((0, "1⊕u = true"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let s = Boolean;
        assert_eq!(s.parse("true"), Ok(true));
        assert_eq!(s.parse(" false "), Ok(false));
        assert!(s.parse("1").is_err());
        assert_eq!(s.format(&true), "true");
    }
}
