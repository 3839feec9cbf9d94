//! Hand-rolled tokenizer. Comments run from `%` to end of line. Every token
//! carries its source span.

use crate::ast::Span;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Atom(String),
    Var(String),
    Int(i64),
    /// Decimal or scientific literal; the lexeme is kept so probability
    /// annotations can be expanded to exact rationals.
    Real { value: f64, lexeme: String },
    /// `a/b` written without spaces, e.g. `1/3`.
    Rat { num: String, den: String },
    Dot,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    /// `::`
    DoubleColon,
    /// `:`
    Colon,
    /// `:-`
    ColonDash,
    /// `\+`
    Naf,
    Lt,
    Gt,
    Le,
    Ge,
    /// `=:=`
    EqColonEq,
    Plus,
    Minus,
    Star,
    Slash,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0, line: 1, col: 1 };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        if c.is_ascii_whitespace() {
            cur.bump();
            continue;
        }
        if c == b'%' {
            while let Some(c) = cur.peek() {
                if c == b'\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }

        let start = cur.pos;
        let line = cur.line;
        let col = cur.col;
        let mut span = |cur: &Cursor| Span::new(start, cur.pos, line, col);

        let kind = match c {
            b'.' => {
                cur.bump();
                TokenKind::Dot
            }
            b',' => {
                cur.bump();
                TokenKind::Comma
            }
            b'(' => {
                cur.bump();
                TokenKind::LParen
            }
            b')' => {
                cur.bump();
                TokenKind::RParen
            }
            b'[' => {
                cur.bump();
                TokenKind::LBracket
            }
            b']' => {
                cur.bump();
                TokenKind::RBracket
            }
            b'+' => {
                cur.bump();
                TokenKind::Plus
            }
            b'-' => {
                cur.bump();
                TokenKind::Minus
            }
            b'*' => {
                cur.bump();
                TokenKind::Star
            }
            b'/' => {
                cur.bump();
                TokenKind::Slash
            }
            b'<' => {
                cur.bump();
                TokenKind::Lt
            }
            b'>' => {
                cur.bump();
                if cur.peek() == Some(b'=') {
                    cur.bump();
                    TokenKind::Ge
                } else {
                    TokenKind::Gt
                }
            }
            b'=' => {
                cur.bump();
                match cur.peek() {
                    Some(b'<') => {
                        cur.bump();
                        TokenKind::Le
                    }
                    Some(b':') => {
                        cur.bump();
                        if cur.peek() == Some(b'=') {
                            cur.bump();
                            TokenKind::EqColonEq
                        } else {
                            return Err(ParseError::new("expected `=:=`", line, col));
                        }
                    }
                    _ => {
                        return Err(ParseError::new(
                            "bare `=` is not an operator; use =:= or a comparison",
                            line,
                            col,
                        ))
                    }
                }
            }
            b':' => {
                cur.bump();
                match cur.peek() {
                    Some(b':') => {
                        cur.bump();
                        TokenKind::DoubleColon
                    }
                    Some(b'-') => {
                        cur.bump();
                        TokenKind::ColonDash
                    }
                    _ => TokenKind::Colon,
                }
            }
            b'\\' => {
                cur.bump();
                if cur.peek() == Some(b'+') {
                    cur.bump();
                    TokenKind::Naf
                } else {
                    return Err(ParseError::new("expected `\\+`", line, col));
                }
            }
            b'!' => {
                return Err(ParseError::new("cut (!) is not supported", line, col));
            }
            c if c.is_ascii_digit() => lex_number(&mut cur)?,
            c if c.is_ascii_lowercase() => {
                let mut name = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        name.push(c as char);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                TokenKind::Atom(name)
            }
            c if c.is_ascii_uppercase() || c == b'_' => {
                let mut name = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        name.push(c as char);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                TokenKind::Var(name)
            }
            other => {
                return Err(ParseError::new(
                    format!("illegal character `{}`", other as char),
                    line,
                    col,
                ));
            }
        };

        tokens.push(Token { kind, span: span(&cur) });
    }

    Ok(tokens)
}

fn lex_number(cur: &mut Cursor) -> Result<TokenKind, ParseError> {
    let line = cur.line;
    let col = cur.col;
    let int = lex_digits(cur);

    // `1/3` with no spaces is a rational literal, unless the denominator
    // continues as a real (e.g. `1/3.5`, which is left to the arithmetic
    // grammar as division).
    if cur.peek() == Some(b'/') {
        if let Some(d) = cur.peek_at(1) {
            if d.is_ascii_digit() {
                let mut off = 1;
                while cur.peek_at(off).map(|c| c.is_ascii_digit()).unwrap_or(false) {
                    off += 1;
                }
                let den_is_real = cur.peek_at(off) == Some(b'.')
                    && cur.peek_at(off + 1).map(|c| c.is_ascii_digit()).unwrap_or(false);
                if !den_is_real {
                    cur.bump(); // consume '/'
                    let den = lex_digits(cur);
                    return Ok(TokenKind::Rat { num: int, den });
                }
            }
        }
    }

    let mut lexeme = int.clone();
    let mut is_real = false;

    if cur.peek() == Some(b'.') && cur.peek_at(1).map(|c| c.is_ascii_digit()).unwrap_or(false) {
        is_real = true;
        cur.bump();
        lexeme.push('.');
        lexeme.push_str(&lex_digits(cur));
    }

    if matches!(cur.peek(), Some(b'e') | Some(b'E')) {
        let sign_ok = match cur.peek_at(1) {
            Some(b'+') | Some(b'-') => cur.peek_at(2).map(|c| c.is_ascii_digit()).unwrap_or(false),
            Some(c) => c.is_ascii_digit(),
            None => false,
        };
        if sign_ok {
            is_real = true;
            lexeme.push(cur.bump().unwrap() as char);
            if matches!(cur.peek(), Some(b'+') | Some(b'-')) {
                lexeme.push(cur.bump().unwrap() as char);
            }
            lexeme.push_str(&lex_digits(cur));
        }
    }

    if is_real {
        let value: f64 = lexeme
            .parse()
            .map_err(|_| ParseError::new(format!("malformed number `{lexeme}`"), line, col))?;
        Ok(TokenKind::Real { value, lexeme })
    } else {
        let value: i64 = lexeme
            .parse()
            .map_err(|_| ParseError::new(format!("integer `{lexeme}` out of range"), line, col))?;
        Ok(TokenKind::Int(value))
    }
}

fn lex_digits(cur: &mut Cursor) -> String {
    let mut s = String::new();
    while let Some(c) = cur.peek() {
        if c.is_ascii_digit() {
            s.push(c as char);
            cur.bump();
        } else {
            break;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn card_fact_tokens() {
        assert_eq!(
            kinds("1/3 :: spades(X)."),
            vec![
                TokenKind::Rat { num: "1".into(), den: "3".into() },
                TokenKind::DoubleColon,
                TokenKind::Atom("spades".into()),
                TokenKind::LParen,
                TokenKind::Var("X".into()),
                TokenKind::RParen,
                TokenKind::Dot,
            ]
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(kinds(""), vec![]);
    }

    #[test]
    fn negation_tokens() {
        assert_eq!(kinds("\\+ h"), vec![TokenKind::Naf, TokenKind::Atom("h".into())]);
    }

    #[test]
    fn comments_are_discarded() {
        assert_eq!(
            kinds("a. % trailing words :- ::\nb."),
            vec![
                TokenKind::Atom("a".into()),
                TokenKind::Dot,
                TokenKind::Atom("b".into()),
                TokenKind::Dot,
            ]
        );
    }

    #[test]
    fn reals_and_clause_final_dot() {
        assert_eq!(
            kinds("V > 3.14."),
            vec![
                TokenKind::Var("V".into()),
                TokenKind::Gt,
                TokenKind::Real { value: 3.14, lexeme: "3.14".into() },
                TokenKind::Dot,
            ]
        );
        // `2.` is an integer followed by the clause terminator.
        assert_eq!(kinds("X > 2."), vec![
            TokenKind::Var("X".into()),
            TokenKind::Gt,
            TokenKind::Int(2),
            TokenKind::Dot,
        ]);
    }

    #[test]
    fn operators() {
        assert_eq!(
            kinds("X =:= Y + Z, A =< B, C >= D"),
            vec![
                TokenKind::Var("X".into()),
                TokenKind::EqColonEq,
                TokenKind::Var("Y".into()),
                TokenKind::Plus,
                TokenKind::Var("Z".into()),
                TokenKind::Comma,
                TokenKind::Var("A".into()),
                TokenKind::Le,
                TokenKind::Var("B".into()),
                TokenKind::Comma,
                TokenKind::Var("C".into()),
                TokenKind::Ge,
                TokenKind::Var("D".into()),
            ]
        );
    }

    #[test]
    fn atom_slash_int_is_not_a_rational() {
        assert_eq!(
            kinds("continuous(f/2, [1])"),
            vec![
                TokenKind::Atom("continuous".into()),
                TokenKind::LParen,
                TokenKind::Atom("f".into()),
                TokenKind::Slash,
                TokenKind::Int(2),
                TokenKind::Comma,
                TokenKind::LBracket,
                TokenKind::Int(1),
                TokenKind::RBracket,
                TokenKind::RParen,
            ]
        );
    }

    #[test]
    fn cut_is_rejected() {
        let err = tokenize("a :- !, b.").unwrap_err();
        assert!(err.message.contains("cut"));
    }

    #[test]
    fn illegal_character_has_location() {
        let err = tokenize("a.\n  ?").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }

    #[test]
    fn spans_cover_input() {
        let text = "pick(0,spades) :- spades(0).";
        for tok in tokenize(text).unwrap() {
            assert!(tok.span.start < tok.span.end);
            assert!(tok.span.end <= text.len());
        }
    }
}
