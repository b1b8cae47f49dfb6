//! Text form of integer polynomials in `x`: `x^5 - 2`, `3*x^2 + x - 1`,
//! `-2x^3+7`. The `*` is optional and like powers may repeat.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

pub fn format_poly(f: &IntPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let unit = mag.is_one();
        match k {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push('x');
                if k > 1 {
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    X,
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Token::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            'x' => Token::X,
            '^' => Token::Caret,
            '*' => Token::Star,
            '+' => Token::Plus,
            '-' => Token::Minus,
            _ => return Err(Error::Parse(format!("unexpected {c:?} at position {i} in {s:?}"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let err = |i: usize, what: &str| {
        let pos = toks.get(i).map_or(s.len(), |t| t.0);
        Error::Parse(format!("{what} at position {pos} in {s:?}"))
    };
    let peek = |i: usize| toks.get(i).map(|t| &t.1);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let negative = match peek(i) {
            Some(Token::Plus) => {
                i += 1;
                false
            }
            Some(Token::Minus) => {
                i += 1;
                true
            }
            _ if i == 0 => false,
            _ => return Err(err(i, "expected '+' or '-'")),
        };
        let mut coef = BigInt::one();
        let mut has_number = false;
        if let Some(Token::Num(v)) = peek(i) {
            coef = v.clone();
            has_number = true;
            i += 1;
            if peek(i) == Some(&Token::Star) {
                i += 1;
                if peek(i) != Some(&Token::X) {
                    return Err(err(i, "expected 'x' after '*'"));
                }
            }
        }
        let mut power = 0usize;
        if peek(i) == Some(&Token::X) {
            i += 1;
            power = 1;
            if peek(i) == Some(&Token::Caret) {
                i += 1;
                match peek(i) {
                    Some(Token::Num(v)) if *v <= BigInt::from(64) => {
                        power = v.to_string().parse().expect("small exponent");
                        i += 1;
                    }
                    Some(Token::Num(_)) => return Err(err(i, "exponent too large")),
                    _ => return Err(err(i, "expected exponent")),
                }
            }
        } else if !has_number {
            return Err(err(i, "expected a term"));
        }
        if negative {
            coef = -coef;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += coef;
    }
    Ok(IntPoly::new(coeffs))
}

impl std::str::FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}
