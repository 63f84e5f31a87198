//! Recursive-descent parser for the ASCII formula grammar:
//!
//! ```text
//! impl  := disj ('->' impl)?
//! disj  := conj ('|' conj)*
//! conj  := unary ('&' unary)*
//! unary := ('[]' | '~')* atom
//! atom  := var | '_|_' | '(' impl ')'
//! ```
//!
//! `->` associates to the right; `[]` and `~` bind tightest. The typeset
//! symbols `∧ ∨ → ¬ □ ⊥` are accepted as aliases for `& | -> ~ [] _|_`.

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unrecognized token {text:?} at byte {offset}")]
    UnknownToken { text: String, offset: usize },
    #[error("unexpected {found} at byte {offset}, expected {expected}")]
    Unexpected {
        found: String,
        offset: usize,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("trailing input at byte {offset}")]
    TrailingInput { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    And,
    Or,
    Arrow,
    Not,
    Box,
    Bottom,
    Var(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::LParen => "'('".to_owned(),
            Token::RParen => "')'".to_owned(),
            Token::And => "'&'".to_owned(),
            Token::Or => "'|'".to_owned(),
            Token::Arrow => "'->'".to_owned(),
            Token::Not => "'~'".to_owned(),
            Token::Box => "'[]'".to_owned(),
            Token::Bottom => "'_|_'".to_owned(),
            Token::Var(name) => format!("variable '{name}'"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push((Token::LParen, offset));
            }
            ')' => {
                chars.next();
                tokens.push((Token::RParen, offset));
            }
            '&' | '∧' => {
                chars.next();
                tokens.push((Token::And, offset));
            }
            '|' | '∨' => {
                chars.next();
                tokens.push((Token::Or, offset));
            }
            '→' => {
                chars.next();
                tokens.push((Token::Arrow, offset));
            }
            '~' | '¬' => {
                chars.next();
                tokens.push((Token::Not, offset));
            }
            '□' => {
                chars.next();
                tokens.push((Token::Box, offset));
            }
            '⊥' => {
                chars.next();
                tokens.push((Token::Bottom, offset));
            }
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {
                        chars.next();
                        tokens.push((Token::Arrow, offset));
                    }
                    _ => {
                        return Err(ParseError::UnknownToken {
                            text: "-".to_owned(),
                            offset,
                        })
                    }
                }
            }
            '[' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, ']')) => {
                        chars.next();
                        tokens.push((Token::Box, offset));
                    }
                    _ => {
                        return Err(ParseError::UnknownToken {
                            text: "[".to_owned(),
                            offset,
                        })
                    }
                }
            }
            '_' => {
                chars.next();
                let rest: String = [chars.next(), chars.next()]
                    .iter()
                    .flatten()
                    .map(|&(_, c)| c)
                    .collect();
                if rest == "|_" {
                    tokens.push((Token::Bottom, offset));
                } else {
                    return Err(ParseError::UnknownToken {
                        text: format!("_{rest}"),
                        offset,
                    });
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Var(name), offset));
            }
            other => {
                return Err(ParseError::UnknownToken {
                    text: other.to_string(),
                    offset,
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn advance(&mut self) -> Option<(Token, usize)> {
        let item = self.tokens.get(self.pos).cloned();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn expect_any(&mut self, expected: &'static str) -> Result<(Token, usize), ParseError> {
        self.advance().ok_or(ParseError::UnexpectedEnd { expected })
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.advance();
            let right = self.implication()?;
            Ok(left.implies(right))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.advance();
            left = left.or(self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.advance();
            left = left.and(self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Box) => {
                self.advance();
                Ok(self.unary()?.boxed())
            }
            Some(Token::Not) => {
                self.advance();
                Ok(self.unary()?.not())
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let (token, offset) = self.expect_any("a variable, '_|_', or '('")?;
        match token {
            Token::Var(name) => Ok(Formula::Var(name)),
            Token::Bottom => Ok(Formula::Bottom),
            Token::LParen => {
                let inner = self.implication()?;
                let (close, close_offset) = self.expect_any("')'")?;
                if close == Token::RParen {
                    Ok(inner)
                } else {
                    Err(ParseError::Unexpected {
                        found: close.describe(),
                        offset: close_offset,
                        expected: "')'",
                    })
                }
            }
            other => Err(ParseError::Unexpected {
                found: other.describe(),
                offset,
                expected: "a variable, '_|_', or '('",
            }),
        }
    }
}

pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let tokens = lex(input)?;
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.implication()?;
    match parser.advance() {
        None => Ok(formula),
        Some((_, offset)) => Err(ParseError::TrailingInput { offset }),
    }
}
