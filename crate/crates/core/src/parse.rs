//! Bracket-table text format.
//!
//! ```text
//! # comment
//! dim 4
//! [e1,e1] = e2
//! [e2,e1] = -e3 + 1/2 e4
//! [e1,e2] = 2*e4
//! ```
//!
//! The first non-comment line is `dim <n>`. Each product line is
//! `[e<i>,e<j>] = <term> (("+"|"-") <term>)*` with
//! `<term> := [<rational>] ["*"] e<k>` and rationals `[-]p[/q]`. Whitespace
//! is insignificant, `#` starts a comment, and indices are 1-based.

use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::error::{ParseError, ParseErrorKind};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLine {
    /// 1-based
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(Rational, usize)>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTableDoc {
    pub dim: usize,
    pub products: Vec<ProductLine>,
}

impl BracketTableDoc {
    pub fn to_algebra(&self, name: impl Into<String>) -> Algebra {
        let products = self.products.iter().map(|p| {
            (
                p.i - 1,
                p.j - 1,
                p.terms.iter().map(|(c, k)| (c.clone(), k - 1)).collect(),
            )
        });
        Algebra::from_products(name, self.dim, products).expect("indices validated by the parser")
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err_at(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.err_at(self.column(), ParseErrorKind::Syntax(msg.into()))
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

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.syntax(format!("expected `{want}`, found end of line"))),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let col = {
            self.skip_ws();
            self.column()
        };
        let d = self
            .digits()
            .ok_or_else(|| self.err_at(col, ParseErrorKind::Syntax(format!("expected {what}"))))?;
        d.parse()
            .map_err(|_| self.err_at(col, ParseErrorKind::Syntax(format!("{what} too large"))))
    }

    /// `e<k>`, checked against `dim`.
    fn basis(&mut self, dim: usize) -> Result<usize, ParseError> {
        self.skip_ws();
        let col = self.column();
        if self.peek() != Some('e') {
            return Err(self.syntax("expected basis element `e<k>`"));
        }
        self.pos += 1;
        // no whitespace between `e` and its index
        if !self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            return Err(self.syntax("expected index after `e`"));
        }
        let k = self.number("basis index")?;
        if k == 0 || k > dim {
            return Err(self.err_at(col, ParseErrorKind::IndexOutOfRange { index: k, dim }));
        }
        Ok(k)
    }

    /// `[<rational>] ["*"] e<k>` with the sign already consumed.
    fn term(&mut self, dim: usize, negative: bool) -> Result<(Rational, usize), ParseError> {
        let mut coef = Rational::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let col = self.column();
            let p = self.digits().unwrap();
            let text = if self.peek() == Some('/') {
                self.pos += 1;
                let q = self
                    .digits()
                    .ok_or_else(|| self.syntax("expected denominator"))?;
                format!("{p}/{q}")
            } else {
                p
            };
            coef = text.parse().map_err(|_| {
                self.err_at(
                    col,
                    ParseErrorKind::Syntax(format!("invalid rational `{text}`")),
                )
            })?;
            if self.peek() == Some('*') {
                self.pos += 1;
            }
        } else if self.peek() == Some('*') {
            return Err(self.syntax("`*` without a coefficient"));
        }
        let k = self.basis(dim)?;
        Ok((if negative { -coef } else { coef }, k))
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(idx) => &line[..idx],
        None => line,
    }
}

pub fn parse_document(text: &str) -> Result<BracketTableDoc, ParseError> {
    let mut dim: Option<usize> = None;
    let mut products = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(content, line_no);

        let Some(n) = dim else {
            if !cur.keyword("dim") {
                return Err(ParseError {
                    line: line_no,
                    column: 1,
                    kind: ParseErrorKind::MissingDim,
                });
            }
            let n = cur.number("dimension")?;
            if n == 0 {
                return Err(cur.syntax("dimension must be at least 1"));
            }
            if !cur.at_end() {
                return Err(cur.syntax("unexpected text after dimension"));
            }
            dim = Some(n);
            continue;
        };

        let start_col = {
            cur.skip_ws();
            cur.column()
        };
        cur.expect('[')?;
        let i = cur.basis(n)?;
        cur.expect(',')?;
        let j = cur.basis(n)?;
        cur.expect(']')?;
        cur.expect('=')?;

        let mut terms = Vec::new();
        let mut negative = false;
        if cur.peek() == Some('-') {
            cur.pos += 1;
            negative = true;
        }
        terms.push(cur.term(n, negative)?);
        while let Some(c) = cur.peek() {
            match c {
                '+' | '-' => {
                    cur.pos += 1;
                    terms.push(cur.term(n, c == '-')?);
                }
                other => return Err(cur.syntax(format!("expected `+` or `-`, found `{other}`"))),
            }
        }

        if let Some(&first_line) = seen.get(&(i, j)) {
            return Err(ParseError {
                line: line_no,
                column: start_col,
                kind: ParseErrorKind::DuplicateProduct { i, j, first_line },
            });
        }
        seen.insert((i, j), line_no);
        products.push(ProductLine {
            i,
            j,
            terms,
            line: line_no,
        });
    }

    let dim = dim.ok_or(ParseError {
        line: text.lines().count().max(1),
        column: 1,
        kind: ParseErrorKind::MissingDim,
    })?;
    Ok(BracketTableDoc { dim, products })
}

pub fn parse_algebra(text: &str) -> Result<Algebra, ParseError> {
    parse_algebra_named(text, "input")
}

pub fn parse_algebra_named(text: &str, name: &str) -> Result<Algebra, ParseError> {
    Ok(parse_document(text)?.to_algebra(name))
}

/// Renders the nonzero products of `a` in the bracket-table format.
pub fn to_bracket_text(a: &Algebra) -> String {
    let mut out = format!("dim {}\n", a.dim());
    for (i, j, coords) in a.nonzero_products() {
        out.push_str(&format!("[e{},e{}] = ", i + 1, j + 1));
        let mut first = true;
        for (k, c) in coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&format!("e{}", k + 1));
            first = false;
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    #[test]
    fn single_product() {
        let a = parse_algebra("dim 4\n[e1,e1] = e2").unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.gamma(0, 0, 1), &q(1, 1));
        assert_eq!(a.nonzero_products().count(), 1);
    }

    #[test]
    fn signed_rational_terms() {
        let a = parse_algebra("dim 4\n[e2,e1] = -e3 + 1/2 e4").unwrap();
        assert_eq!(a.gamma(1, 0, 2), &q(-1, 1));
        assert_eq!(a.gamma(1, 0, 3), &q(1, 2));
    }

    #[test]
    fn whitespace_comments_and_star() {
        let text = "  # header\n\n dim   3 # trailing\n[ e1 , e2 ]=2*e3-   3/4e1\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.gamma(0, 1, 2), &q(2, 1));
        assert_eq!(a.gamma(0, 1, 0), &q(-3, 4));
    }

    #[test]
    fn index_out_of_range() {
        let err = parse_algebra("dim 4\n[e5,e1] = e2").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 2);
        assert_eq!(
            err.kind,
            ParseErrorKind::IndexOutOfRange { index: 5, dim: 4 }
        );
        let err = parse_algebra("dim 2\n[e1,e1] = e0").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::IndexOutOfRange { index: 0, .. }
        ));
    }

    #[test]
    fn duplicate_product() {
        let err = parse_algebra("dim 4\n[e1,e1] = e2\n# x\n[e1,e1] = e3\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(
            err.kind,
            ParseErrorKind::DuplicateProduct {
                i: 1,
                j: 1,
                first_line: 2
            }
        );
    }

    #[test]
    fn missing_dim() {
        let err = parse_algebra("[e1,e1] = e2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingDim);
        assert_eq!(err.line, 1);
        assert_eq!(
            parse_algebra("# only a comment\n").unwrap_err().kind,
            ParseErrorKind::MissingDim
        );
    }

    #[test]
    fn syntax_errors() {
        for (text, line, column) in [
            ("dim 4\n[e1 e1] = e2", 2, 5),
            ("dim 4\n[e1,e1] = ", 2, 11),
            ("dim 4\n[e1,e1] = e2 e3", 2, 14),
            ("dim 4\n[e1,e1] = 1/ e2", 2, 14),
            ("dim 4\n[e1,e1] = *e2", 2, 11),
            ("dim x", 1, 5),
        ] {
            let err = parse_algebra(text).unwrap_err();
            assert!(
                matches!(err.kind, ParseErrorKind::Syntax(_)),
                "{text:?}: {err}"
            );
            assert_eq!((err.line, err.column), (line, column), "{text:?}: {err}");
        }
    }

    #[test]
    fn render_text() {
        let a = parse_algebra("dim 4\n[e2,e1] = -e3 + 1/2 e4\n[e1,e1]=e2").unwrap();
        assert_eq!(
            to_bracket_text(&a),
            "dim 4\n[e1,e1] = e2\n[e2,e1] = -e3 + 1/2 e4\n"
        );
    }
}
