//! A tiny parser for polynomial expressions over GF(q), shared by the
//! quadratic-form and plane-pattern readers.
//!
//! Grammar: a sum of `+`-separated terms; a term is a product of factors,
//! optionally joined by `*` or whitespace. A factor is a decimal field
//! element, or an identifier (one letter followed by optional digits) with an
//! optional `^k` exponent. Identifiers that the caller recognizes as variables
//! contribute to the monomial; all others are looked up as parameters.
//! Juxtaposed letters split into single-letter identifiers, so `az` is `a*z`
//! and `cX0X2` is `c*X0*X2`.

use std::collections::BTreeMap;

use crate::error::{usage, Result};
use crate::gf::{Field, Gf};

/// Named parameter values, e.g. `c = 1`.
pub type Params = BTreeMap<String, Gf>;

/// Parsed polynomial: monomial exponent vectors with nonzero coefficients.
pub type Terms = BTreeMap<Vec<u8>, Gf>;

#[derive(Debug, PartialEq)]
enum Token {
    Num(u64),
    Ident(String),
    Plus,
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push(Token::Plus);
            i += 1;
        } else if c == '*' {
            out.push(Token::Star);
            i += 1;
        } else if c == '^' {
            out.push(Token::Caret);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().map_err(|_| usage!("bad number {text:?}"))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(usage!("unexpected character {c:?} in {s:?}"));
        }
    }
    Ok(out)
}

/// Parses `s` into a map from exponent vectors (length `nvars`) to
/// coefficients. `var` maps an identifier to a variable index.
pub fn parse_polynomial(
    f: &Field,
    s: &str,
    nvars: usize,
    var: impl Fn(&str) -> Option<usize>,
    params: &Params,
) -> Result<Terms> {
    let tokens = tokenize(s)?;
    let mut terms = Terms::new();
    if tokens.is_empty() || tokens == [Token::Num(0)] {
        return Ok(terms);
    }
    for term in tokens.split(|t| *t == Token::Plus) {
        if term.is_empty() {
            return Err(usage!("empty term in {s:?}"));
        }
        let mut coeff = Gf::ONE;
        let mut exps = vec![0u8; nvars];
        let mut it = term.iter().filter(|t| **t != Token::Star).peekable();
        while let Some(tok) = it.next() {
            let mut power = 1u32;
            if it.peek() == Some(&&Token::Caret) {
                it.next();
                match it.next() {
                    Some(Token::Num(k)) => power = *k as u32,
                    _ => return Err(usage!("exponent must be a number in {s:?}")),
                }
            }
            match tok {
                Token::Num(v) => coeff = f.mul(coeff, f.pow(f.element(*v)?, power as u64)),
                Token::Ident(name) => match var(name) {
                    Some(k) => exps[k] += power as u8,
                    None => {
                        let v = params.get(name).ok_or_else(|| usage!("unknown parameter {name:?} in {s:?}"))?;
                        coeff = f.mul(coeff, f.pow(*v, power as u64));
                    }
                },
                _ => return Err(usage!("malformed term in {s:?}")),
            }
        }
        let slot = terms.entry(exps).or_insert(Gf::ZERO);
        *slot += coeff;
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(terms)
}

/// Parses `name=value` pairs separated by commas.
pub fn parse_params(f: &Field, s: &str) -> Result<Params> {
    let mut out = Params::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| usage!("parameter {item:?} is not name=value"))?;
        let v = parse_element(f, v.trim())?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// Reads a field element written in decimal or as `0x..` hex.
pub fn parse_element(f: &Field, s: &str) -> Result<Gf> {
    let v = if let Some(hex) = s.strip_prefix("0x") { u64::from_str_radix(hex, 16) } else { s.parse() }
        .map_err(|_| usage!("bad field element {s:?}"))?;
    f.element(v)
}
