use std::collections::HashMap;

use super::ast::{Atom, Fact, Program, Rule, Span, Term};
use super::FrontendError;
use crate::semiring::SemiringId;

/// Parses program text.
///
/// ```text
/// @semiring trop                      % optional; the CLI flag wins
/// @edb E/2                            % optional; declares a factless EDB predicate
/// T(X,Y) :- E(X,Y) + T(X,Z) * E(Z,Y).
/// E(a,b) = 3.
/// ```
///
/// Variables start with an uppercase letter or `_`; constants with a
/// lowercase letter or a digit. Fact values run up to a `.` that is followed
/// by whitespace, a comment or the end of input, so `1.5.` reads as `1.5`.
pub fn parse_program(text: &str) -> Result<Program, FrontendError> {
    let mut p = Parser::new(text);
    let program = p.program()?;
    check_program(&program)?;
    Ok(program)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            col: self.col,
        }
    }

    fn error(&self, message: impl Into<String>) -> FrontendError {
        let span = self.span();
        FrontendError::Syntax {
            line: span.line,
            col: span.col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), FrontendError> {
        self.skip_trivia();
        let matches = token
            .chars()
            .enumerate()
            .all(|(k, c)| self.peek_at(k) == Some(c));
        if !matches {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |c| format!("`{c}`"));
            return Err(self.error(format!("expected `{token}`, found {found}")));
        }
        for _ in token.chars() {
            self.bump();
        }
        Ok(())
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, FrontendError> {
        self.skip_trivia();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        if start == self.pos {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |c| format!("`{c}`"));
            return Err(self.error(format!("expected {what}, found {found}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// A run of non-whitespace characters.
    fn word(&mut self, what: &str) -> Result<(Span, String), FrontendError> {
        self.skip_trivia();
        let span = self.span();
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        Ok((span, self.chars[start..self.pos].iter().collect()))
    }

    fn program(&mut self) -> Result<Program, FrontendError> {
        let mut program = Program::default();
        loop {
            self.skip_trivia();
            match self.peek() {
                None => return Ok(program),
                Some('@') => self.directive(&mut program)?,
                Some(_) => self.statement(&mut program)?,
            }
        }
    }

    fn directive(&mut self, program: &mut Program) -> Result<(), FrontendError> {
        let span = self.span();
        self.bump();
        let name = self.ident("a directive name")?;
        match name.as_str() {
            "semiring" => {
                let (at, text) = self.word("a semiring identifier")?;
                let id = text
                    .parse::<SemiringId>()
                    .map_err(|e| FrontendError::Syntax {
                        line: at.line,
                        col: at.col,
                        message: e.to_string(),
                    })?;
                program.semiring = Some(id);
            }
            "edb" => {
                let pred = self.ident("a predicate name")?;
                self.expect("/")?;
                let (at, digits) = (self.span(), self.ident("an arity")?);
                let arity = digits.parse::<usize>().map_err(|_| FrontendError::Syntax {
                    line: at.line,
                    col: at.col,
                    message: format!("arity `{digits}` is not a number"),
                })?;
                program.edb_decls.push((pred, arity));
            }
            _ => {
                return Err(FrontendError::Syntax {
                    line: span.line,
                    col: span.col,
                    message: format!("unknown directive `@{name}`"),
                })
            }
        }
        Ok(())
    }

    fn statement(&mut self, program: &mut Program) -> Result<(), FrontendError> {
        let head = self.atom()?;
        self.skip_trivia();
        if self.peek() == Some(':') {
            self.expect(":-")?;
            let body = self.body()?;
            self.expect(".")?;
            let span = head.span;
            program.rules.push(Rule { head, body, span });
        } else if self.eat('=') {
            let value = self.literal()?;
            let span = head.span;
            program.facts.push(Fact {
                atom: head,
                value: Some(value),
                span,
            });
        } else {
            self.expect(".")?;
            let span = head.span;
            program.facts.push(Fact {
                atom: head,
                value: None,
                span,
            });
        }
        Ok(())
    }

    fn body(&mut self) -> Result<Vec<Vec<Atom>>, FrontendError> {
        let mut products = vec![self.product()?];
        while self.eat('+') {
            products.push(self.product()?);
        }
        Ok(products)
    }

    fn product(&mut self) -> Result<Vec<Atom>, FrontendError> {
        let mut atoms = vec![self.atom()?];
        while self.eat('*') {
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }

    fn atom(&mut self) -> Result<Atom, FrontendError> {
        self.skip_trivia();
        let span = self.span();
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |c| format!("`{c}`"));
            return Err(self.error(format!("expected a predicate name, found {found}")));
        }
        let pred = self.ident("a predicate name")?;
        let mut args = Vec::new();
        if self.eat('(') && !self.eat(')') {
            loop {
                args.push(self.term()?);
                if self.eat(')') {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(Atom { pred, args, span })
    }

    fn term(&mut self) -> Result<Term, FrontendError> {
        let name = self.ident("a variable or constant")?;
        let first = name.chars().next().unwrap();
        Ok(if first.is_uppercase() || first == '_' {
            Term::Var(name)
        } else {
            Term::Const(name)
        })
    }

    fn literal(&mut self) -> Result<String, FrontendError> {
        self.skip_trivia();
        let start = self.pos;
        loop {
            match self.peek() {
                None => return Err(self.error("unterminated fact: expected `.`")),
                Some('.') => {
                    let next = self.peek_at(1);
                    if next.is_none_or(|c| c.is_whitespace() || c == '%') {
                        break;
                    }
                }
                Some('\n') => return Err(self.error("unterminated fact: expected `.`")),
                _ => {}
            }
            self.bump();
        }
        let value: String = self.chars[start..self.pos].iter().collect();
        let value = value.trim().to_string();
        if value.is_empty() {
            return Err(self.error("expected a value literal after `=`"));
        }
        self.bump();
        Ok(value)
    }
}

fn semantic(span: Span, message: String) -> FrontendError {
    FrontendError::Semantic {
        line: span.line,
        col: span.col,
        message,
    }
}

fn check_program(program: &Program) -> Result<(), FrontendError> {
    let mut seen: Vec<(&str, usize, Span)> = Vec::new();
    for (name, arity) in &program.edb_decls {
        seen.push((name, *arity, Span::default()));
    }
    for rule in &program.rules {
        seen.push((&rule.head.pred, rule.head.args.len(), rule.head.span));
        for atom in rule.body.iter().flatten() {
            seen.push((&atom.pred, atom.args.len(), atom.span));
        }
    }
    for fact in &program.facts {
        seen.push((&fact.atom.pred, fact.atom.args.len(), fact.span));
    }
    let mut arities: HashMap<&str, usize> = HashMap::new();
    for (pred, arity, span) in seen {
        match arities.get(pred) {
            Some(&a) if a != arity => {
                return Err(semantic(
                    span,
                    format!("predicate `{pred}` used with arity {arity}, previously {a}"),
                ))
            }
            Some(_) => {}
            None => {
                arities.insert(pred, arity);
            }
        }
    }

    for rule in &program.rules {
        for (k, product) in rule.body.iter().enumerate() {
            for var in rule.head.vars() {
                if !product.iter().any(|a| a.vars().any(|v| v == var)) {
                    return Err(semantic(
                        rule.head.span,
                        format!(
                            "head variable `{var}` of `{}` does not occur in product {} of its body",
                            rule.head.pred,
                            k + 1
                        ),
                    ));
                }
            }
        }
    }
    for fact in &program.facts {
        if !fact.atom.is_ground() {
            return Err(semantic(
                fact.span,
                format!("fact `{}` contains a variable", fact.atom),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::classify_linearity;

    #[test]
    fn transitive_closure_rule() {
        let p = parse_program("T(X,Y) :- E(X,Y) + T(X,Z)*E(Z,Y).").unwrap();
        assert_eq!(p.rules.len(), 1);
        assert_eq!(p.rules[0].body.len(), 2);
        assert_eq!(p.rules[0].body[1].len(), 2);
        assert!(classify_linearity(&p).is_linear());
    }

    #[test]
    fn unclosed_argument_list() {
        let err = parse_program("T(X,Y) :- E(X,Y.").unwrap_err();
        match err {
            FrontendError::Syntax { line, col, .. } => assert_eq!((line, col), (1, 16)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn positions_track_lines() {
        let err = parse_program("% header\nT(X) :- E(X).\nT(X) :- ").unwrap_err();
        assert!(
            matches!(err, FrontendError::Syntax { line: 3, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn edb_only_bodies_are_linear() {
        let p = parse_program("P(X) :- Q(X)*R(X,Y) + S(X).").unwrap();
        let lin = classify_linearity(&p);
        assert!(lin.is_linear());
        assert_eq!(lin.idb_counts, vec![vec![0, 0]]);
    }

    #[test]
    fn nonlinear_detected() {
        let p = parse_program("T(X,Y) :- T(X,Z)*T(Z,Y).").unwrap();
        let lin = classify_linearity(&p);
        assert!(!lin.is_linear());
        assert_eq!(lin.first_nonlinear_rule(), Some(0));
    }

    #[test]
    fn unbound_head_variable() {
        let err = parse_program("T(X,Y) :- E(X,Y) + F(X).").unwrap_err();
        assert!(matches!(err, FrontendError::Semantic { .. }), "{err:?}");
    }

    #[test]
    fn arity_mismatch() {
        assert!(parse_program("T(X) :- E(X).\nE(a,b).").is_err());
    }

    #[test]
    fn facts_and_directives() {
        let text =
            "@semiring trop_p:2\n@edb F/1\nE(a,b) = [3,7].\nE(b,c) = 1.5. % decimal\nG(c).\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.semiring, Some(SemiringId::TropP { p: 2, bound: None }));
        assert_eq!(p.edb_decls, vec![("F".to_string(), 1)]);
        let values: Vec<Option<&str>> = p.facts.iter().map(|f| f.value.as_deref()).collect();
        assert_eq!(values, vec![Some("[3,7]"), Some("1.5"), None]);
    }

    #[test]
    fn nonground_fact_rejected() {
        assert!(parse_program("E(X,b) = 1.").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "@semiring bool\nT(X,Y) :- E(X,Y) + T(X,Z) * E(Z,Y).\nC :- E(a,b).\nE(a,b).\nE(b,c) = true.\n";
        let p = parse_program(text).unwrap();
        let printed = p.to_string();
        assert_eq!(parse_program(&printed).unwrap(), p);
        assert_eq!(printed, text);
    }
}
