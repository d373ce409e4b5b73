//! Tokenizer for the command language. Tokens carry byte offsets so
//! errors can report line and column.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Star,
    Assign,
    EqEq,
    Nat(u32),
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semi => write!(f, "';'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Assign => write!(f, "'='"),
            Tok::EqEq => write!(f, "'=='"),
            Tok::Nat(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    /// Byte offset of the token start within the input line.
    pub start: usize,
    /// Byte offset just past the token.
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct LexError {
    pub pos: usize,
    pub msg: String,
}

pub fn tokenize(input: &str) -> Result<Vec<Spanned>, LexError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        // '#' starts a comment running to the end of the line
        if b == b'#' {
            break;
        }
        let start = i;
        let tok = match b {
            b'{' => {
                i += 1;
                Tok::LBrace
            }
            b'}' => {
                i += 1;
                Tok::RBrace
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'[' => {
                i += 1;
                Tok::LBracket
            }
            b']' => {
                i += 1;
                Tok::RBracket
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b';' => {
                i += 1;
                Tok::Semi
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    Tok::EqEq
                } else {
                    i += 1;
                    Tok::Assign
                }
            }
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let text = &input[i..j];
                i = j;
                let n = text.parse::<u32>().map_err(|_| LexError {
                    pos: start,
                    msg: format!("number {text} is too large"),
                })?;
                Tok::Nat(n)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut j = i;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let text = input[i..j].to_string();
                i = j;
                Tok::Ident(text)
            }
            _ => {
                return Err(LexError {
                    pos: start,
                    msg: format!("unexpected character {:?}", b as char),
                })
            }
        };
        out.push(Spanned { tok, start, end: i });
    }
    Ok(out)
}
