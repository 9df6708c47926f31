//! Tokenizer. Identifiers may contain dots so generated names like
//! `m.C.a.b.c` stay readable; quoted atoms carry arbitrary text.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Quoted(String),
    Num(usize),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
#[error("lex error at line {line}, column {column}: {message}")]
pub struct LexError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

const SYMBOLS: &[&str] = &[
    "=>", "->", "@", "(", ")", "[", "]", "{", "}", ",", ";", ":", "|", "~", "#", "=", "<", ">",
];

pub fn lex(text: &str) -> Result<Vec<Token>, LexError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let n = bytes.len();
    while i < n {
        let c = bytes[i] as char;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && i + 1 < n && bytes[i + 1] == b'/' {
            while i < n && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let (sline, scol) = (line, col);
        if c == '"' {
            i += 1;
            col += 1;
            let s0 = i;
            while i < n && bytes[i] != b'"' {
                if bytes[i] == b'\n' {
                    return Err(LexError {
                        line,
                        column: col,
                        message: "unterminated quoted atom".into(),
                    });
                }
                i += 1;
                col += 1;
            }
            if i >= n {
                return Err(LexError {
                    line,
                    column: col,
                    message: "unterminated quoted atom".into(),
                });
            }
            let s = text[s0..i].to_string();
            i += 1;
            col += 1;
            out.push(Token {
                kind: TokenKind::Quoted(s),
                span: SourceSpan {
                    start,
                    end: i,
                    line: sline,
                    column: scol,
                },
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < n {
                let d = bytes[i] as char;
                if d.is_ascii_alphanumeric() || d == '_' || d == '.' || d == '\'' {
                    i += 1;
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                kind: TokenKind::Ident(text[start..i].to_string()),
                span: SourceSpan {
                    start,
                    end: i,
                    line: sline,
                    column: scol,
                },
            });
            continue;
        }
        if c.is_ascii_digit() {
            while i < n && (bytes[i] as char).is_ascii_digit() {
                i += 1;
                col += 1;
            }
            let v: usize = text[start..i].parse().map_err(|_| LexError {
                line: sline,
                column: scol,
                message: "number out of range".into(),
            })?;
            out.push(Token {
                kind: TokenKind::Num(v),
                span: SourceSpan {
                    start,
                    end: i,
                    line: sline,
                    column: scol,
                },
            });
            continue;
        }
        let mut matched = None;
        for s in SYMBOLS {
            if text[i..].starts_with(s) {
                matched = Some(*s);
                break;
            }
        }
        let Some(s) = matched else {
            return Err(LexError {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        };
        i += s.len();
        col += s.len();
        out.push(Token {
            kind: TokenKind::Sym(s),
            span: SourceSpan {
                start,
                end: i,
                line: sline,
                column: scol,
            },
        });
    }
    out.push(Token {
        kind: TokenKind::Eof,
        span: SourceSpan {
            start: n,
            end: n,
            line,
            column: col,
        },
    });
    Ok(out)
}
