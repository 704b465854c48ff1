//! Relation text format.
//!
//! ```text
//! # comment
//! alpha*gamma - 2 sigma*gamma*rho*alpha*beta
//! gamma*delta = 3/2*beta*epsilon
//! alpha*gamma*rho = 0
//! ```
//!
//! A term is an optional scalar (optionally followed by `*`) and a path of
//! arrow identifiers joined by `*`. Terms are joined by `+` or `-`; an optional
//! `=` moves the right side over. A bare `0` contributes nothing.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, PresentationError};
use crate::field::{format_scalar, FieldDescriptor, Scalar};
use crate::quiver::{Quiver, QuiverFile};

use super::{Family, Path, PathExpr, Presentation};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Scalar),
    Ident(String),
    Star,
    Plus,
    Minus,
    Eq,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, PresentationError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '=' => {
                out.push((Tok::Eq, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i].iter().collect::<String>().parse().expect("digits");
                let mut value = Scalar::from_integer(num);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let ds = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return Err(err(line, i + 1, "expected denominator after `/`"));
                    }
                    let den: BigInt = chars[ds..i].iter().collect::<String>().parse().expect("digits");
                    if den.is_zero() {
                        return Err(err(line, ds + 1, "zero denominator"));
                    }
                    value /= Scalar::from_integer(den);
                }
                out.push((Tok::Num(value), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err(err(line, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct LineParser<'a> {
    q: &'a Quiver,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl LineParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    /// One signed term; `None` for a bare zero.
    fn term(&mut self, sign: Scalar) -> Result<Option<(Path, Scalar)>, PresentationError> {
        let mut coeff = sign;
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.bump();
            coeff *= n;
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Ident(_)) => {}
                _ if coeff.is_zero() => return Ok(None),
                _ => return Err(err(self.line, self.col(), "expected a path after the scalar")),
            }
        }
        let start_col = self.col();
        let mut arrows = Vec::new();
        loop {
            let col = self.col();
            match self.bump() {
                Some(Tok::Ident(id)) => {
                    let a = self
                        .q
                        .arrow_index(&id)
                        .ok_or_else(|| err(self.line, col, format!("unknown arrow `{id}`")))?;
                    arrows.push(a);
                }
                _ => return Err(err(self.line, col, "expected an arrow identifier")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            } else {
                break;
            }
        }
        let path = Path::from_arrows(self.q, arrows).map_err(|e| err(self.line, start_col, e.to_string()))?;
        Ok(Some((path, coeff)))
    }

    fn relation(&mut self) -> Result<Vec<(Path, Scalar)>, PresentationError> {
        let mut terms = Vec::new();
        let mut side = Scalar::one();
        let mut first = true;
        loop {
            let mut sign = side.clone();
            let mut signed = false;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    signed = true;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -sign;
                    signed = true;
                }
                Some(Tok::Eq) | None if !first => {}
                _ if first => {}
                _ => return Err(err(self.line, self.col(), "expected `+`, `-` or `=`")),
            }
            match self.peek() {
                Some(Tok::Eq) if !first && !signed => {
                    if side.is_negative() {
                        return Err(err(self.line, self.col(), "more than one `=`"));
                    }
                    self.bump();
                    side = -Scalar::one();
                    first = true;
                    continue;
                }
                None if !first && !signed => break,
                None => return Err(err(self.line, self.col(), "expected a term")),
                _ => {}
            }
            if let Some(t) = self.term(sign)? {
                terms.push(t);
            }
            first = false;
        }
        Ok(terms)
    }
}

/// Parses one relation per nonblank, non-comment line.
pub fn parse_relations(q: &Quiver, text: &str) -> Result<Vec<PathExpr>, PresentationError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks = tokenize(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser {
            q,
            toks,
            pos: 0,
            line,
            end_col: raw.chars().count() + 1,
        };
        let terms = p.relation()?;
        let expr = PathExpr::new(q, terms).map_err(|e| match e {
            PresentationError::NotParallel(r) => err(line, 1, format!("non-parallel paths in `{r}`")),
            other => other,
        })?;
        if expr.is_zero() {
            return Err(err(line, 1, "relation is identically zero"));
        }
        if expr.min_len() < 2 {
            return Err(err(line, 1, "every path in a relation must have length at least 2"));
        }
        out.push(expr);
    }
    Ok(out)
}

/// Canonical text of a relation; coefficient 1 is omitted and -1 is written
/// as a bare sign.
pub fn format_relation(q: &Quiver, r: &PathExpr) -> String {
    let mut s = String::new();
    for (k, (p, c)) in r.terms().iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !mag.is_one() {
            s.push_str(&format_scalar(&mag));
            s.push('*');
        }
        s.push_str(&p.display(q));
    }
    s
}

/// On-disk presentation: field header, quiver (optionally with f), relations
/// in the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub field: FieldDescriptor,
    pub quiver: QuiverFile,
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_hint: Option<usize>,
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<Presentation, Error> {
        let q = self.quiver.to_quiver()?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (k, line) in self.relations.iter().enumerate() {
            let mut parsed = parse_relations(&q, line).map_err(|e| match e {
                PresentationError::Parse { column, message, .. } => PresentationError::Parse {
                    line: k + 1,
                    column,
                    message,
                },
                other => other,
            })?;
            if parsed.len() != 1 {
                return Err(PresentationError::Parse {
                    line: k + 1,
                    column: 1,
                    message: "expected exactly one relation".into(),
                }
                .into());
            }
            relations.push(parsed.remove(0));
        }
        let mut p = Presentation::new(q, relations, self.field)?;
        if let Some(cycles) = self.quiver.cycles() {
            let tq = crate::quiver::TriangulationQuiver::from_cycles(p.quiver().clone(), &cycles)?;
            p = p.with_triangulation(&tq);
        }
        if let Some(h) = self.length_hint {
            p = p.with_length_hint(h);
        }
        if let Some(fam) = self.family {
            p = p.with_family(fam);
        }
        Ok(p)
    }
}
