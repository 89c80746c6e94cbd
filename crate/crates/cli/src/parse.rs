//! Parsers for the command-line value grammars.
//!
//! Insertions: `list := part (';' part)* | ''`, `part := int (',' int)*`,
//! e.g. `2,1;2;1`.
//!
//! Polynomials:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := rational | [rational '*'] factor ('*' factor)*
//! factor := 'a' int ['^' int] | 'Q[' int (',' int)* ']' ['^' int]
//! rational := int ['/' int]
//! ```
//!
//! `a<k>` is the special class `(k)` and `Q[...]` a general strict partition.
//! Whitespace between tokens is ignored. Errors carry a 0-based character
//! offset.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use lagquot_core::{SchubertExpression, StrictPartition, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    /// The input with a caret under the offending character.
    pub fn render(&self, input: &str) -> String {
        format!("  {input}\n  {}^", " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(input: &str) -> Self {
        Cursor {
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn unexpected(&mut self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::new(self.pos, format!("expected {wanted}, found '{c}'")),
            None => ParseError::new(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    /// Unsigned decimal integer; returns the value and its start offset.
    fn integer(&mut self) -> PResult<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok((digits.parse().expect("ascii digits"), start))
    }

    fn small(&mut self, what: &str) -> PResult<(u32, usize)> {
        let (v, at) = self.integer()?;
        let v =
            u32::try_from(v).map_err(|_| ParseError::new(at, format!("{what} is too large")))?;
        Ok((v, at))
    }
}

fn strict(n: u32, parts: Vec<(u32, usize)>) -> PResult<StrictPartition> {
    for (i, &(p, at)) in parts.iter().enumerate() {
        if p == 0 {
            return Err(ParseError::new(at, "parts must be positive"));
        }
        if p > n {
            return Err(ParseError::new(at, format!("part {p} exceeds n = {n}")));
        }
        if i > 0 && parts[i - 1].0 <= p {
            return Err(ParseError::new(at, "parts must be strictly decreasing"));
        }
    }
    Ok(
        StrictPartition::new(n, parts.into_iter().map(|(p, _)| p).collect())
            .expect("validated above"),
    )
}

/// Parses `2,1;2;1` into insertions for rank `n`.
pub fn parse_partitions(input: &str, n: u32) -> PResult<Vec<StrictPartition>> {
    let mut c = Cursor::new(input);
    let mut out = Vec::new();
    if c.at_end() {
        return Ok(out);
    }
    loop {
        let mut parts = vec![c.small("part")?];
        while c.eat(',') {
            parts.push(c.small("part")?);
        }
        out.push(strict(n, parts)?);
        if c.at_end() {
            return Ok(out);
        }
        if !c.eat(';') {
            return Err(c.unexpected("',' or ';'"));
        }
    }
}

fn exponent(c: &mut Cursor) -> PResult<usize> {
    if c.eat('^') {
        let (e, _) = c.small("exponent")?;
        Ok(e as usize)
    } else {
        Ok(1)
    }
}

fn factor(c: &mut Cursor, n: u32) -> PResult<Vec<StrictPartition>> {
    let partition = if c.eat('a') {
        let (k, at) = c.small("index")?;
        strict(n, vec![(k, at)])?
    } else if c.eat('Q') {
        c.expect('[')?;
        let mut parts = vec![c.small("part")?];
        while c.eat(',') {
            parts.push(c.small("part")?);
        }
        c.expect(']')?;
        strict(n, parts)?
    } else {
        return Err(c.unexpected("a factor 'a<k>' or 'Q[...]'"));
    };
    let times = exponent(c)?;
    Ok(vec![partition; times])
}

fn rational(c: &mut Cursor) -> PResult<BigRational> {
    let (num, _) = c.integer()?;
    if c.eat('/') {
        let (den, at) = c.integer()?;
        if den.is_zero() {
            return Err(ParseError::new(at, "zero denominator"));
        }
        Ok(BigRational::new(num, den))
    } else {
        Ok(BigRational::from_integer(num))
    }
}

fn term(c: &mut Cursor, n: u32, negative: bool) -> PResult<Term> {
    let mut coeff = BigRational::one();
    let mut factors = Vec::new();
    if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        coeff = rational(c)?;
        if !c.eat('*') {
            return Ok(Term::new(if negative { -coeff } else { coeff }, factors));
        }
    }
    factors.extend(factor(c, n)?);
    while c.eat('*') {
        factors.extend(factor(c, n)?);
    }
    Ok(Term::new(if negative { -coeff } else { coeff }, factors))
}

/// Parses a polynomial in the special classes and `Q~` factors for rank `n`.
pub fn parse_poly(input: &str, n: u32) -> PResult<SchubertExpression> {
    let mut c = Cursor::new(input);
    if c.at_end() {
        return Err(c.unexpected("a polynomial"));
    }
    let leading_minus = c.eat('-');
    let mut terms = vec![term(&mut c, n, leading_minus)?];
    loop {
        if c.at_end() {
            break;
        }
        let negative = if c.eat('+') {
            false
        } else if c.eat('-') {
            true
        } else {
            return Err(c.unexpected("'+', '-' or '*'"));
        };
        terms.push(term(&mut c, n, negative)?);
    }
    Ok(SchubertExpression::from_terms(terms))
}

/// Parses `a..b` (inclusive) for the genus range.
pub fn parse_genus_range(input: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = input
        .split_once("..")
        .ok_or_else(|| format!("expected a range like 2..5, got {input:?}"))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {a:?}"))?;
    let b: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {input:?}"));
    }
    Ok(a..=b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(n: u32, parts: &[u32]) -> StrictPartition {
        StrictPartition::new(n, parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(
            parse_partitions("2,1;2;1", 2).unwrap(),
            vec![sp(2, &[2, 1]), sp(2, &[2]), sp(2, &[1])]
        );
        assert_eq!(parse_partitions("", 2).unwrap(), vec![]);
        assert_eq!(parse_partitions(" 1 ; 1 ", 1).unwrap().len(), 2);
    }

    #[test]
    fn partition_errors_have_positions() {
        let e = parse_partitions("2,1;1,2", 2).unwrap_err();
        assert_eq!(e.position, 6);
        assert!(e.message.contains("strictly decreasing"));
        let e = parse_partitions("1;3", 2).unwrap_err();
        assert_eq!(
            (e.position, e.message.as_str()),
            (2, "part 3 exceeds n = 2")
        );
        assert_eq!(parse_partitions("1;;1", 2).unwrap_err().position, 2);
        assert_eq!(parse_partitions("1 x", 2).unwrap_err().position, 2);
        assert!(parse_partitions("0", 2)
            .unwrap_err()
            .message
            .contains("positive"));
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("a1^2 + a2", 2).unwrap();
        assert_eq!(p.to_string(), "a1^2 + a2");
        assert_eq!(p.terms().len(), 2);
        let q = parse_poly("-3/2*Q[2,1]^2*a1 - 4", 2).unwrap();
        assert_eq!(q.to_string(), "-3/2*a1*Q[2,1]^2 - 4");
        assert_eq!(parse_poly("1", 3).unwrap(), SchubertExpression::one());
        assert_eq!(parse_poly("0", 3).unwrap(), SchubertExpression::zero());
    }

    #[test]
    fn polynomial_errors_have_positions() {
        assert_eq!(parse_poly("a1 +", 2).unwrap_err().position, 4);
        assert_eq!(parse_poly("a3", 2).unwrap_err().position, 1);
        let e = parse_poly("Q[1,2]", 2).unwrap_err();
        assert_eq!(e.position, 4);
        assert_eq!(parse_poly("Q[2,1", 2).unwrap_err().position, 5);
        assert_eq!(parse_poly("2 a1", 2).unwrap_err().position, 2);
        assert!(parse_poly("1/0", 2)
            .unwrap_err()
            .message
            .contains("denominator"));
        assert_eq!(parse_poly("", 2).unwrap_err().position, 0);
        assert_eq!(ParseError::new(2, "x").render("a1 +"), "  a1 +\n    ^");
    }

    #[test]
    fn genus_ranges() {
        assert_eq!(parse_genus_range("2..5").unwrap(), 2..=5);
        assert!(parse_genus_range("5..2").is_err());
        assert!(parse_genus_range("2-5").is_err());
    }

    fn arb_poly(n: u32) -> impl Strategy<Value = SchubertExpression> {
        let factor = prop::collection::btree_set(1..=n, 1..=n as usize)
            .prop_map(move |set| StrictPartition::new(n, set.into_iter().rev().collect()).unwrap());
        let term = (-20i64..=20, 1i64..=6, prop::collection::vec(factor, 0..4))
            .prop_filter("nonzero", |(a, _, _)| *a != 0)
            .prop_map(|(a, b, f)| Term::new(BigRational::new(a.into(), b.into()), f));
        prop::collection::vec(term, 1..5).prop_map(SchubertExpression::from_terms)
    }

    proptest! {
        #[test]
        fn display_round_trips(p in arb_poly(4)) {
            prop_assert_eq!(parse_poly(&p.to_string(), 4).unwrap(), p);
        }
    }
}
