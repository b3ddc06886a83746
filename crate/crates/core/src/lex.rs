//! Tokenizer shared by the signature, term, and diagram text formats.

use std::fmt;

/// A position in source text, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    /// `->` or `→`
    Arrow,
    /// `⊗`; the ASCII spelling `x` arrives as an identifier.
    Otimes,
    /// `^` or `†`
    Dag,
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Otimes => f.write_str("`⊗`"),
            Tok::Dag => f.write_str("`†`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokenizes `src`, skipping whitespace and `#` comments. `first_line` is the
/// line number reported for the first line of `src`.
pub fn tokenize(src: &str, first_line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut col = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if is_ident_start(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(s),
                pos,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                chars.next();
                col += 1;
            }
            let n = s
                .parse()
                .map_err(|_| ParseError::new(pos, format!("integer `{s}` out of range")))?;
            out.push(Spanned {
                tok: Tok::Int(n),
                pos,
            });
            continue;
        }
        chars.next();
        col += 1;
        let tok = match c {
            '-' => {
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    Tok::Arrow
                } else {
                    Tok::Punct('-')
                }
            }
            '→' => Tok::Arrow,
            '⊗' => Tok::Otimes,
            '^' | '†' => Tok::Dag,
            '*' | ';' | '(' | ')' | '[' | ']' | ',' | ':' | '.' | '=' | '|' => Tok::Punct(c),
            _ => return Err(ParseError::new(pos, format!("unexpected character `{c}`"))),
        };
        out.push(Spanned { tok, pos });
    }
    Ok(out)
}

/// Cursor over a token stream with one token of lookahead.
pub struct Cursor {
    toks: Vec<Spanned>,
    i: usize,
    end: Pos,
}

impl Cursor {
    pub fn new(toks: Vec<Spanned>, end: Pos) -> Self {
        Cursor { toks, i: 0, end }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|s| &s.tok)
    }

    pub fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.i + 1).map(|s| &s.tok)
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|s| s.pos).unwrap_or(self.end)
    }

    pub fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos(), message)
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(t) => format!("found {t}"),
            None => "found end of input".to_string(),
        }
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, {}", self.describe_next())))
        }
    }

    pub fn eat_tok(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_tok(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat_tok(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {t}, {}", self.describe_next())))
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{kw}`, {}", self.describe_next())))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok((s, pos))
            }
            _ => Err(self.error(format!("expected identifier, {}", self.describe_next()))),
        }
    }

    pub fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.i += 1;
                Ok(n)
            }
            _ => Err(self.error(format!("expected integer, {}", self.describe_next()))),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!(
                "unexpected trailing input, {}",
                self.describe_next()
            )))
        }
    }
}

/// Position just past the end of `src`, given the line number of its first line.
pub fn end_pos(src: &str, first_line: usize) -> Pos {
    let mut line = first_line;
    let mut col = 1;
    for c in src.chars() {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    Pos { line, col }
}

pub fn cursor(src: &str, first_line: usize) -> Result<Cursor, ParseError> {
    let toks = tokenize(src, first_line)?;
    Ok(Cursor::new(toks, end_pos(src, first_line)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = tokenize("f : A* x B -> C # trailing\n  g†", 1).unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("f".into()),
                Tok::Punct(':'),
                Tok::Ident("A".into()),
                Tok::Punct('*'),
                Tok::Ident("x".into()),
                Tok::Ident("B".into()),
                Tok::Arrow,
                Tok::Ident("C".into()),
                Tok::Ident("g".into()),
                Tok::Dag,
            ]
        );
        assert_eq!(toks[8].pos, Pos { line: 2, col: 3 });
    }

    #[test]
    fn bad_character_reports_position() {
        let err = tokenize("a\n  $", 1).unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 3 });
    }
}
