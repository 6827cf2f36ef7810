//! Line-oriented text formats for Lie elements and presentations.
//!
//! Element expressions are `;`-separated terms `coef bracket`, where `coef`
//! is an optional signed integer or fraction (default 1) and `bracket` is a
//! generator label or `[a,b]` with `a`, `b` brackets:
//!
//! ```text
//! 3/2 [x,[x,y]] ; -1 [y,[x,y]]
//! ```
//!
//! The literal `0` is the zero element. Files allow blank lines and `#`
//! comments. An element file has one `label@degree: expression` per line; a
//! presentation file has `generator <label> <weight>`, `relation
//! <expression>` and at most one `bound <weight>` line.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::derivops::{IharaDegree, RankTwoAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::freelie::{FreeLieAlgebra, GeneratorSpec, LieElement};
use crate::lieco::GradedLiePresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Semi,
    At,
    Colon,
    Ident(String),
    Number(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    text: String,
    column: usize,
}

fn err(line: usize, column: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        token: token.to_string(),
        message: message.into(),
    }
}

fn strip_comment(s: &str) -> &str {
    s.split('#').next().unwrap_or("")
}

/// Tokens of `s`, with columns offset by `col0` (0-based) and reported 1-based.
fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i + 1;
        let single = match c {
            '[' => Some(Tok::Open),
            ']' => Some(Tok::Close),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '@' => Some(Tok::At),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if c.is_whitespace() {
            i += 1;
        } else if let Some(tok) = single {
            out.push(Spanned {
                tok,
                text: c.to_string(),
                column,
            });
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Ident(text.clone()),
                text,
                column,
            });
        } else if c.is_ascii_digit() || c == '-' || c == '+' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Number(text.clone()),
                text,
                column,
            });
        } else {
            return Err(err(line, column, &c.to_string(), "unexpected character"));
        }
    }
    Ok(out)
}

fn parse_integer(text: &str, line: usize, column: usize) -> Result<BigInt> {
    BigInt::from_str(text).map_err(|_| err(line, column, text, "malformed integer"))
}

fn parse_rational(t: &Spanned, line: usize) -> Result<Scalar> {
    let (num, den) = match t.text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.text.as_str(), "1"),
    };
    let num = parse_integer(num, line, t.column).map_err(|_| err(line, t.column, &t.text, "malformed coefficient"))?;
    let den = parse_integer(den, line, t.column).map_err(|_| err(line, t.column, &t.text, "malformed coefficient"))?;
    if den.is_zero() {
        return Err(err(line, t.column, &t.text, "zero denominator"));
    }
    Ok(Scalar::new(num, den))
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Spanned> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn unexpected(&self, t: Option<&Spanned>, what: &str) -> Error {
        match t {
            Some(t) => err(self.line, t.column, &t.text, format!("expected {what}")),
            None => err(self.line, self.end_column, "end of line", format!("expected {what}")),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.next() {
            Some(t) if t.tok == tok => Ok(()),
            t => Err(self.unexpected(t, what)),
        }
    }

    fn bracket(&mut self, alg: &FreeLieAlgebra) -> Result<LieElement> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Ident(label),
                column,
                ..
            }) => alg
                .generator_by_label(label)
                .map_err(|_| err(self.line, *column, label, "unknown generator")),
            Some(Spanned { tok: Tok::Open, .. }) => {
                let a = self.bracket(alg)?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.bracket(alg)?;
                self.expect(Tok::Close, "`]`")?;
                alg.bracket(&a, &b)
            }
            t => Err(self.unexpected(t, "a generator or `[`")),
        }
    }

    fn expression(&mut self, alg: &FreeLieAlgebra) -> Result<LieElement> {
        if let [Spanned {
            tok: Tok::Number(n), ..
        }] = &self.toks[self.pos..]
        {
            if n == "0" {
                self.pos += 1;
                return Ok(alg.zero());
            }
        }
        let mut total = alg.zero();
        loop {
            let coef = match self.peek() {
                Some(t @ Spanned {
                    tok: Tok::Number(_), ..
                }) => {
                    self.pos += 1;
                    parse_rational(t, self.line)?
                }
                _ => Scalar::one(),
            };
            let b = self.bracket(alg)?;
            total = &total + &b.scale(&coef);
            match self.next() {
                None => return Ok(total),
                Some(Spanned { tok: Tok::Semi, .. }) => {}
                t => return Err(self.unexpected(t, "`;` or end of line")),
            }
        }
    }
}

fn parse_expression_at(alg: &FreeLieAlgebra, s: &str, line: usize, col0: usize) -> Result<LieElement> {
    let toks = lex(s, line, col0)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        line,
        end_column: col0 + s.chars().count() + 1,
    };
    if toks.is_empty() {
        return Err(p.unexpected(None, "an expression"));
    }
    p.expression(alg)
}

/// Parses a single-line element expression.
pub fn parse_element(alg: &FreeLieAlgebra, s: &str) -> Result<LieElement> {
    parse_expression_at(alg, s, 1, 0)
}

/// One entry of an element file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledElement {
    pub label: String,
    pub degree: IharaDegree,
    pub element: LieElement,
}

/// Parses `label@degree: expression` lines over the algebra on `x, y`.
pub fn parse_element_file(text: &str) -> Result<Vec<LabeledElement>> {
    let alg = RankTwoAlgebra::get().algebra();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let Some((head, expr)) = body.split_once(':') else {
            return Err(err(line, 1, body.trim(), "expected `label@degree: expression`"));
        };
        let toks = lex(head, line, 0)?;
        let (label, degree) = match toks.as_slice() {
            [Spanned {
                tok: Tok::Ident(label), ..
            }, Spanned { tok: Tok::At, .. }, d @ Spanned {
                tok: Tok::Number(_), ..
            }] => {
                let m = d
                    .text
                    .parse::<u32>()
                    .ok()
                    .and_then(|m| IharaDegree::new(m).ok())
                    .ok_or_else(|| err(line, d.column, &d.text, "degree must be a positive integer"))?;
                (label.clone(), m)
            }
            [t, ..] => return Err(err(line, t.column, &t.text, "expected `label@degree`")),
            [] => return Err(err(line, 1, ":", "missing label")),
        };
        let col0 = head.chars().count() + 1;
        let element = parse_expression_at(alg, expr, line, col0)?;
        out.push(LabeledElement {
            label,
            degree,
            element,
        });
    }
    Ok(out)
}

/// Parses a presentation file. `bound_override` replaces the file's bound
/// line; one of the two must be present.
pub fn parse_presentation(text: &str, bound_override: Option<i64>) -> Result<GradedLiePresentation> {
    let mut generators: Vec<(String, i64)> = Vec::new();
    let mut relations: Vec<(usize, usize, &str)> = Vec::new();
    let mut bound: Option<i64> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let body = strip_comment(raw);
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.chars().count() - trimmed.chars().count();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + keyword.chars().count();
        match keyword {
            "generator" => {
                let toks = lex(rest, line, rest_col)?;
                match toks.as_slice() {
                    [Spanned {
                        tok: Tok::Ident(label), ..
                    }, w @ Spanned {
                        tok: Tok::Number(_), ..
                    }] => {
                        let weight = w
                            .text
                            .parse::<i64>()
                            .map_err(|_| err(line, w.column, &w.text, "weight must be an integer"))?;
                        if generators.iter().any(|(l, _)| l == label) {
                            return Err(err(line, toks[0].column, label, "duplicate generator"));
                        }
                        generators.push((label.clone(), weight));
                    }
                    [t, ..] => return Err(err(line, t.column, &t.text, "expected `generator <label> <weight>`")),
                    [] => return Err(err(line, indent + 1, keyword, "missing generator label and weight")),
                }
            }
            "relation" => relations.push((line, rest_col, rest)),
            "bound" => {
                let toks = lex(rest, line, rest_col)?;
                match toks.as_slice() {
                    [w @ Spanned {
                        tok: Tok::Number(_), ..
                    }] => {
                        if bound.is_some() {
                            return Err(err(line, indent + 1, keyword, "bound given twice"));
                        }
                        bound = Some(
                            w.text
                                .parse::<i64>()
                                .map_err(|_| err(line, w.column, &w.text, "bound must be an integer"))?,
                        );
                    }
                    _ => return Err(err(line, indent + 1, keyword, "expected `bound <weight>`")),
                }
            }
            other => return Err(err(line, indent + 1, other, "unknown keyword")),
        }
    }
    let Some(bound) = bound_override.or(bound) else {
        return Err(err(last_line.max(1), 1, "end of file", "missing `bound` line"));
    };
    let spec = GeneratorSpec::new(generators).map_err(|e| err(1, 1, "generator", e.to_string()))?;
    let alg = FreeLieAlgebra::new(spec);
    let mut rels = Vec::new();
    for (line, col0, expr) in relations {
        let r = parse_expression_at(&alg, expr, line, col0)?;
        if !r.is_homogeneous() {
            return Err(err(line, col0 + 1, expr.trim(), "relation must be nonzero and homogeneous"));
        }
        rels.push(r);
    }
    GradedLiePresentation::from_shared(alg.spec().clone(), rels, bound)
}

/// Renders a presentation in the file format read by [`parse_presentation`].
pub fn render_presentation(pres: &GradedLiePresentation) -> String {
    let spec = pres.generators();
    let mut out = String::new();
    for i in 0..spec.len() {
        out.push_str(&format!("generator {} {}\n", spec.label(i), spec.degree(i) as i64 * spec.sign().unwrap_or(1)));
    }
    for r in pres.relations() {
        out.push_str(&format!("relation {r}\n"));
    }
    out.push_str(&format!("bound {}\n", pres.weight_bound()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::frac;

    fn xy() -> FreeLieAlgebra {
        FreeLieAlgebra::new(GeneratorSpec::new([("x", -2), ("y", -2)]).unwrap())
    }

    #[test]
    fn expressions() {
        let alg = xy();
        let (x, y) = (alg.generator(0), alg.generator(1));
        let xxy = alg.bracket(&x, &alg.bracket(&x, &y).unwrap()).unwrap();
        let yxy = alg.bracket(&y, &alg.bracket(&x, &y).unwrap()).unwrap();
        let e = parse_element(&alg, "3/2 [x,[x,y]] ; -1 [y,[x,y]]").unwrap();
        assert_eq!(e, &xxy.scale(&frac(3, 2)) - &yxy);
        assert_eq!(parse_element(&alg, "[y,x]").unwrap(), alg.bracket(&y, &x).unwrap());
        assert!(parse_element(&alg, "0").unwrap().is_zero());
        assert_eq!(parse_element(&alg, &e.to_string()).unwrap(), e);
    }

    #[test]
    fn expression_errors() {
        let alg = xy();
        let Err(Error::Parse { column, token, .. }) = parse_element(&alg, "2 [x,z]") else {
            panic!()
        };
        assert_eq!((column, token.as_str()), (6, "z"));
        assert!(parse_element(&alg, "1/0 x").is_err());
        assert!(parse_element(&alg, "[x,y").is_err());
        assert!(parse_element(&alg, "").is_err());
        assert!(parse_element(&alg, "x ; ").is_err());
        assert!(parse_element(&alg, "x $").is_err());
    }

    #[test]
    fn element_files() {
        let text = "# models\nf3@3: [x,[x,y]]\n\nf5@5: [x,[x,[x,[x,y]]]]  # depth one\n";
        let v = parse_element_file(text).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1].degree.get(), 5);
        assert_eq!(v[0].element.weight(), Some(-6));
        let Err(Error::Parse { line, .. }) = parse_element_file("f3@3: x\nf5: x\n") else {
            panic!()
        };
        assert_eq!(line, 2);
        assert!(parse_element_file("f@0: x").is_err());
    }

    #[test]
    fn presentation_files() {
        let text = "generator a -1\ngenerator b -1\nrelation [a,b]\nbound -4\n";
        let p = parse_presentation(text, None).unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.weight_bound(), -4);
        assert_eq!(parse_presentation(&render_presentation(&p), None).unwrap(), p);
        assert_eq!(parse_presentation(text, Some(-6)).unwrap().weight_bound(), -6);
        let Err(Error::Parse { line, token, .. }) = parse_presentation("generator a -1\nrelatoin [a,a]\n", Some(-2))
        else {
            panic!()
        };
        assert_eq!((line, token.as_str()), (2, "relatoin"));
        assert!(parse_presentation("generator a -1\n", None).unwrap_err().is_parse());
        assert!(parse_presentation("generator a -1\ngenerator b -2\nrelation a ; b\nbound -4", None).is_err());
    }
}
