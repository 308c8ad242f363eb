//! Parser for the set-expression language and point literals.
//!
//! ```text
//! expr   := "empty" | "all"
//!         | "finite" "{" ints "}" sfx | "cofinite" "{" ints "}" sfx
//!         | "odd" sfx | "even" sfx | "negnat0" sfx
//!         | "ge" "{" int "}" sfx | "le" "{" int "}" sfx
//!         | "mod" "{" int "|" ints "}" sfx
//!         | "atoms" "{" names "}"
//!         | "union(" expr "," expr ")" | "inter(" expr "," expr ")"
//!         | "compl(" expr ")" | "shift(" expr "," int ")" sfx
//! ints   := [ item { "," item } ]      item := int | int ".." int
//! sfx    := [ "@" name ]
//! ```
//!
//! Positions in errors are 1-based character columns.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::error::SetError;
use crate::setalg::{GroundSpec, Point, SetExpr, SymSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "column {}: expected {}, found {}",
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error(transparent)]
    Set(#[from] SetError),
}

/// Ranges in integer lists are capped at this many elements.
const MAX_RANGE: i64 = 100_000;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let tok: String = self
                    .rest()
                    .chars()
                    .take_while(|c| !c.is_whitespace())
                    .take(12)
                    .collect();
                format!("`{tok}`")
            }
        };
        SyntaxError {
            column: self.column(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{tok}`")]))
        }
    }

    fn name(&mut self) -> PResult<String> {
        self.skip_ws();
        let mut chars = self.rest().char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.error(&["name"])),
        }
        let len = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_' || c == '.'))
            .map(|(i, _)| i)
            .unwrap_or(self.rest().len());
        // A trailing "." belongs to a range operator, not the name.
        let name = self.rest()[..len].trim_end_matches('.');
        self.pos += name.len();
        Ok(name.to_string())
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let bytes = self.rest().as_bytes();
        let mut len = 0;
        if matches!(bytes.first(), Some(b'-' | b'+')) {
            len = 1;
        }
        let digits = bytes[len..].iter().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.error(&["integer"]));
        }
        len += digits;
        let v = self.rest()[..len]
            .parse()
            .map_err(|_| self.error(&["integer in range"]))?;
        self.pos += len;
        Ok(v)
    }

    fn ints(&mut self) -> PResult<Vec<i64>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.rest().starts_with('}') {
            return Ok(out);
        }
        loop {
            let start = self.pos;
            let a = self.int()?;
            if self.eat("..") {
                let b = self.int()?;
                if b < a || b - a >= MAX_RANGE {
                    self.pos = start;
                    return Err(self.error(&["a nonempty range of at most 100000 values"]));
                }
                out.extend(a..=b);
            } else {
                out.push(a);
            }
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    fn suffix(&mut self) -> PResult<Option<String>> {
        if self.eat("@") {
            Ok(Some(self.name()?))
        } else {
            Ok(None)
        }
    }

    fn braced<T>(&mut self, inner: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.expect("{")?;
        let v = inner(self)?;
        self.expect("}")?;
        Ok(v)
    }

    fn expr(&mut self) -> PResult<SetExpr> {
        const EXPECTED: &[&str] = &[
            "empty", "all", "finite", "cofinite", "odd", "even", "negnat0", "ge", "le", "mod",
            "atoms", "union", "inter", "compl", "shift",
        ];
        self.skip_ws();
        let start = self.pos;
        let word = match self.name() {
            Ok(w) => w,
            Err(_) => return Err(self.error(EXPECTED)),
        };
        let e = match word.as_str() {
            "empty" => SetExpr::Empty,
            "all" => SetExpr::All,
            "finite" => {
                let values = self.braced(Self::ints)?;
                SetExpr::Finite {
                    values,
                    channel: self.suffix()?,
                }
            }
            "cofinite" => {
                let values = self.braced(Self::ints)?;
                SetExpr::Cofinite {
                    values,
                    channel: self.suffix()?,
                }
            }
            "odd" => SetExpr::Odd {
                channel: self.suffix()?,
            },
            "even" => SetExpr::Even {
                channel: self.suffix()?,
            },
            "negnat0" => SetExpr::NegNat0 {
                channel: self.suffix()?,
            },
            "ge" | "le" => {
                let t = self.braced(Self::int)?;
                let channel = self.suffix()?;
                if word == "ge" {
                    SetExpr::Ge { t, channel }
                } else {
                    SetExpr::Le { t, channel }
                }
            }
            "mod" => {
                let (m, residues) = self.braced(|p| {
                    let m = p.int()?;
                    p.expect("|")?;
                    Ok((m, p.ints()?))
                })?;
                SetExpr::Mod {
                    m,
                    residues,
                    channel: self.suffix()?,
                }
            }
            "atoms" => {
                let names = self.braced(|p| {
                    let mut names = vec![p.name()?];
                    while p.eat(",") {
                        names.push(p.name()?);
                    }
                    Ok(names)
                })?;
                SetExpr::Atoms(names)
            }
            "union" | "inter" => {
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                if word == "union" {
                    SetExpr::Union(Box::new(a), Box::new(b))
                } else {
                    SetExpr::Inter(Box::new(a), Box::new(b))
                }
            }
            "compl" => {
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(")")?;
                SetExpr::Compl(Box::new(a))
            }
            "shift" => {
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let k = self.int()?;
                self.expect(")")?;
                SetExpr::Shift {
                    expr: Box::new(a),
                    k,
                    channel: self.suffix()?,
                }
            }
            _ => {
                self.pos = start;
                return Err(self.error(EXPECTED));
            }
        };
        Ok(e)
    }

    fn finish(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }
}

/// Parses a set expression into its syntax tree.
pub fn parse_set_expr(text: &str) -> Result<SetExpr, SyntaxError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses and evaluates a set expression over `ground`.
pub fn parse_set_expression(text: &str, ground: &Arc<GroundSpec>) -> Result<SymSet, ParseError> {
    let e = parse_set_expr(text).map_err(ParseError::Syntax)?;
    Ok(e.eval(ground)?)
}

/// Parses a point: an atom name, `<int>` on the first channel, or
/// `<int>@<channel>`.
pub fn parse_point(text: &str, ground: &Arc<GroundSpec>) -> Result<Point, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let point = if p
        .rest()
        .starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+')
    {
        let v = p.int().map_err(ParseError::Syntax)?;
        let ch = p.suffix().map_err(ParseError::Syntax)?;
        let ci = ground.resolve_channel(ch.as_deref())?;
        Point::int(&ground.channels()[ci].name, v)
    } else {
        Point::atom(p.name().map_err(ParseError::Syntax)?)
    };
    p.finish().map_err(ParseError::Syntax)?;
    ground.check_point(&point)?;
    Ok(point)
}
