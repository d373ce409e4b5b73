//! Recursive-descent parser for commands and expressions. Errors carry
//! the byte column and what was expected at that point.

use crate::ast::{AuditKind, Command, Expr, FunctorKind, Query};
use crate::lexer::{tokenize, Spanned, Tok};

#[derive(Debug, Clone)]
pub struct ParseError {
    /// Byte column within the line (0-based).
    pub col: usize,
    pub expected: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "column {}: expected {}", self.col + 1, self.expected)
    }
}

const RESERVED: &[&str] = &["inf", "semi", "quasi", "null"];

struct Parser<'a> {
    line: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
}

pub fn parse_command(line: &str) -> Result<Command, ParseError> {
    // `assert <command> == <expected>` splits textually first: the
    // expected side is raw output text and need not tokenize (it may be
    // an ordinal like w+1 or a report line).
    let stripped = line.trim_start();
    let indent = line.len() - stripped.len();
    if let Some(rest) = stripped.strip_prefix("assert") {
        if rest.starts_with(|c: char| c.is_whitespace()) {
            let body_start = indent + "assert".len();
            let body = &line[body_start..];
            let Some(rel) = body.find("==") else {
                return Err(ParseError {
                    col: line.len(),
                    expected: "'==' after the asserted command".into(),
                });
            };
            let inner_text = &body[..rel];
            if inner_text.trim_start().starts_with("assert") {
                return Err(ParseError {
                    col: body_start,
                    expected: "a non-assert command inside assert".into(),
                });
            }
            let expected = body[rel + 2..].trim().to_string();
            let inner = parse_command_at(inner_text, body_start)?;
            return Ok(Command::Assert(Box::new(inner), expected));
        }
    }
    parse_command_at(line, 0)
}

fn parse_command_at(text: &str, col_offset: usize) -> Result<Command, ParseError> {
    let shift = |e: ParseError| ParseError { col: e.col + col_offset, expected: e.expected };
    let toks = tokenize(text).map_err(|e| ParseError {
        col: e.pos + col_offset,
        expected: e.msg,
    })?;
    let mut p = Parser { line: text, toks, pos: 0 };
    let cmd = p.command().map_err(shift)?;
    p.expect_end().map_err(shift)?;
    Ok(cmd)
}

/// True when the line holds no tokens (blank or comment-only). Lines
/// with lex errors are not blank; they surface when parsed.
pub fn line_is_blank(line: &str) -> bool {
    matches!(tokenize(line), Ok(toks) if toks.is_empty())
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.line.len(), |s| s.start)
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError { col: self.here(), expected: expected.to_string() }
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("end of command"))
        }
    }

    fn nat(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Nat(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err(what)),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(what)),
        }
    }

    fn command(&mut self) -> Result<Command, ParseError> {
        let word = match self.peek() {
            Some(Tok::Ident(s)) => Some(s.clone()),
            _ => None,
        };
        match word.as_deref() {
            Some("let") => {
                self.pos += 1;
                let name = self.ident("a variable name")?;
                if RESERVED.contains(&name.as_str()) {
                    return Err(ParseError {
                        col: self.toks[self.pos - 1].start,
                        expected: format!("a variable name ({name} is reserved)"),
                    });
                }
                self.expect(Tok::Assign, "'='")?;
                let e = self.expr()?;
                Ok(Command::Let(name, e))
            }
            Some("eq") => self.binary(Query::Eq),
            Some("bisim") => self.binary(Query::Bisim),
            Some("why") => self.binary(Query::Why),
            Some("union") => self.binary(Query::Union),
            Some("inter") => self.binary(Query::Inter),
            Some("diff") => self.binary(Query::Diff),
            Some("prod") => self.binary(Query::Prod),
            Some("rankv") => self.unary(Query::RankV),
            Some("rankt") => self.unary(Query::RankT),
            Some("dim") => self.unary(Query::Dim),
            Some("classify") => self.unary(Query::Classify),
            Some("partition") => self.unary(Query::Partition),
            Some("regular") => self.unary(Query::Regular),
            Some("tc") => self.unary(Query::Tc),
            Some("transitive") => self.unary(Query::Transitive),
            Some("omegainv") => self.unary(Query::OmegaInv),
            Some("sublimits") => self.unary(Query::Sublimits),
            Some("base") => self.unary(Query::Base),
            Some("bigunion") => {
                self.pos += 1;
                let k = self.nat("an iteration count")?;
                let e = self.expr()?;
                Ok(Command::Query(Query::BigUnion(k, e)))
            }
            Some("unfold") => {
                self.pos += 1;
                let e = self.expr()?;
                let d = self.nat("an unroll depth")?;
                Ok(Command::Query(Query::Unfold(e, d)))
            }
            Some("hom") => {
                self.pos += 1;
                let e = self.expr()?;
                let n = self.nat("a prefix depth n")?;
                let k = self.nat("a model depth k")?;
                Ok(Command::Query(Query::Hom(e, n, k)))
            }
            Some("functor") => {
                self.pos += 1;
                let kind = match self.ident("inf, semi or quasi")?.as_str() {
                    "inf" => FunctorKind::Inf,
                    "semi" => FunctorKind::Semi,
                    "quasi" => FunctorKind::Quasi,
                    _ => return Err(self.err("inf, semi or quasi")),
                };
                let e = self.expr()?;
                let lmax = match self.peek() {
                    Some(Tok::Nat(n)) => {
                        let n = *n;
                        self.pos += 1;
                        Some(n)
                    }
                    _ => None,
                };
                Ok(Command::Query(Query::Functor(kind, e, lmax)))
            }
            Some("spectrum") => {
                self.pos += 1;
                let n = self.nat("a stage index")?;
                Ok(Command::Query(Query::Spectrum(n)))
            }
            Some("audit") => {
                self.pos += 1;
                let kind = match self.ident("ezf or russell")?.as_str() {
                    "ezf" => AuditKind::Ezf,
                    "russell" => AuditKind::Russell,
                    _ => return Err(self.err("ezf or russell")),
                };
                let n = self.nat("a stage index")?;
                let mut samples = Vec::new();
                while self.pos < self.toks.len() {
                    samples.push(self.expr()?);
                }
                Ok(Command::Audit(kind, n, samples))
            }
            Some("dot") => {
                self.pos += 1;
                let e = self.expr()?;
                Ok(Command::ExportDot(e))
            }
            Some("load") => {
                self.pos += 1;
                let path = self.ident("a file path")?;
                Ok(Command::Load(path))
            }
            Some("help") => {
                self.pos += 1;
                Ok(Command::Help)
            }
            _ => {
                let e = self.expr()?;
                Ok(Command::Eval(e))
            }
        }
    }

    fn unary(&mut self, f: impl Fn(Expr) -> Query) -> Result<Command, ParseError> {
        self.pos += 1;
        let e = self.expr()?;
        Ok(Command::Query(f(e)))
    }

    fn binary(&mut self, f: impl Fn(Expr, Expr) -> Query) -> Result<Command, ParseError> {
        self.pos += 1;
        let a = self.expr()?;
        let b = self.expr()?;
        Ok(Command::Query(f(a, b)))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() != Some(&Tok::RBrace) {
                    loop {
                        items.push(self.expr()?);
                        match self.peek() {
                            Some(Tok::Comma) => {
                                self.pos += 1;
                            }
                            _ => break,
                        }
                    }
                }
                self.expect(Tok::RBrace, "'}' or ','")?;
                Ok(Expr::Brace(items))
            }
            Some(Tok::Star) => {
                self.pos += 1;
                let e = self.expr()?;
                Ok(Expr::Unpack(Box::new(e)))
            }
            Some(Tok::Nat(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(Expr::Numeral(n))
            }
            Some(Tok::Ident(s)) => match s.as_str() {
                "null" => {
                    self.pos += 1;
                    Ok(Expr::Null)
                }
                "inf" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after inf")?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Inf(Box::new(e)))
                }
                "semi" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after semi")?;
                    let g = self.expr()?;
                    self.expect(Tok::Semi, "';' between generator and base")?;
                    let b = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Semi(Box::new(g), Box::new(b)))
                }
                "quasi" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after quasi")?;
                    self.expect(Tok::LBracket, "'[' starting the generator cycle")?;
                    let mut cycle = Vec::new();
                    loop {
                        cycle.push(self.expr()?);
                        match self.peek() {
                            Some(Tok::Comma) => {
                                self.pos += 1;
                            }
                            _ => break,
                        }
                    }
                    self.expect(Tok::RBracket, "']' or ','")?;
                    self.expect(Tok::Semi, "';' before the base")?;
                    let b = self.expr()?;
                    let phase = if self.peek() == Some(&Tok::Semi) {
                        self.pos += 1;
                        Some(self.nat("a phase")?)
                    } else {
                        None
                    };
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Quasi(cycle, Box::new(b), phase))
                }
                _ => {
                    let name = s.clone();
                    self.pos += 1;
                    Ok(Expr::Var(name))
                }
            },
            _ => Err(self.err("an expression")),
        }
    }
}
