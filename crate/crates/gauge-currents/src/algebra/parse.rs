//! Canonical text form of algebra elements and coefficients.
//!
//! ```text
//! element := term ( '+' term )*
//! term    := atom ( '*' atom )*
//! atom    := rational | 'i' | 'sqrt2' | 'sqrt3' | 'sqrt6' | 'pi' ('^' int)?
//!          | 'A' '[' c ';' j ';' modes ']'
//!          | ('psi'|'T'|'K'|'S') '[' a ';' modes ']' | 'Q' | '1'
//! modes   := int | int ',' int ',' int
//! ```
//!
//! Printing is canonical (words, monomials, pi powers, and radical parts in
//! sorted order), and `parse(print(x)) == x` for canonical elements.

use super::{builders, AlgebraElement, Gen, GenKind, RelationSet, Word};
use crate::apoly::{AInd, APoly};
use crate::mode::Mode;
use crate::scalar::ExactScalar;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat(b'-') {}
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i64>()
            .map_err(|_| ParseError {
                pos: start,
                message: "expected integer".into(),
            })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
        }
        if self.pos == start {
            None
        } else {
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        }
    }
}

fn parse_modes(cur: &mut Cursor) -> Result<Mode, ParseError> {
    let n1 = cur.int()?;
    let mut m = [n1 as i16, 0, 0];
    if cur.eat(b',') {
        m[1] = cur.int()? as i16;
        cur.expect(b',')?;
        m[2] = cur.int()? as i16;
    }
    Ok(Mode(m))
}

fn parse_bracketed_index(cur: &mut Cursor, dim: usize) -> Result<(usize, Mode), ParseError> {
    cur.expect(b'[')?;
    let pos = cur.pos;
    let a = cur.int()?;
    if a < 1 || a as usize > dim {
        return err(pos, format!("index {a} outside 1..{dim}"));
    }
    cur.expect(b';')?;
    let mode = parse_modes(cur)?;
    cur.expect(b']')?;
    Ok(((a - 1) as usize, mode))
}

enum Atom {
    Scalar(ExactScalar),
    PiPow(i16),
    AVar(AInd),
    Gen(Gen),
    SGen(usize, Mode),
    Q,
}

fn parse_atom(cur: &mut Cursor, rel: &RelationSet) -> Result<Atom, ParseError> {
    let pos = cur.pos;
    match cur.peek() {
        Some(c) if c.is_ascii_digit() || c == b'-' => {
            let n = cur.int()?;
            if cur.eat(b'/') {
                let d = cur.int()?;
                if d == 0 {
                    return err(pos, "zero denominator");
                }
                Ok(Atom::Scalar(ExactScalar::rational(n as i128, d as i128)))
            } else {
                Ok(Atom::Scalar(ExactScalar::int(n as i128)))
            }
        }
        _ => {
            let Some(name) = cur.ident() else {
                return err(cur.pos, "expected atom");
            };
            match name {
                "i" => Ok(Atom::Scalar(ExactScalar::i())),
                "sqrt2" => Ok(Atom::Scalar(ExactScalar::sqrt2())),
                "sqrt3" => Ok(Atom::Scalar(ExactScalar::sqrt3())),
                "sqrt6" => Ok(Atom::Scalar(ExactScalar::sqrt6())),
                "pi" => {
                    if cur.eat(b'^') {
                        let k = cur.int()?;
                        Ok(Atom::PiPow(k as i16))
                    } else {
                        Ok(Atom::PiPow(1))
                    }
                }
                "A" => {
                    cur.expect(b'[')?;
                    let cpos = cur.pos;
                    let c = cur.int()?;
                    if c < 1 || c as usize > rel.dim() {
                        return err(cpos, format!("lie index {c} outside 1..{}", rel.dim()));
                    }
                    cur.expect(b';')?;
                    let jpos = cur.pos;
                    let j = cur.int()?;
                    if j < 1 || j as usize > rel.window.d as usize {
                        return err(jpos, format!("spatial index {j} outside 1..{}", rel.window.d));
                    }
                    cur.expect(b';')?;
                    let mode = parse_modes(cur)?;
                    cur.expect(b']')?;
                    Ok(Atom::AVar(AInd::new((c - 1) as usize, (j - 1) as usize, mode)))
                }
                "psi" => {
                    let (a, m) = parse_bracketed_index(cur, rel.dim())?;
                    Ok(Atom::Gen(Gen::psi(a, m)))
                }
                "T" => {
                    let (a, m) = parse_bracketed_index(cur, rel.dim())?;
                    Ok(Atom::Gen(Gen::t(a, m)))
                }
                "K" => {
                    let (a, m) = parse_bracketed_index(cur, rel.dim())?;
                    Ok(Atom::Gen(Gen::k(a, m)))
                }
                "S" => {
                    let (a, m) = parse_bracketed_index(cur, rel.dim())?;
                    Ok(Atom::SGen(a, m))
                }
                "Q" => Ok(Atom::Q),
                other => err(pos, format!("unknown symbol `{other}`")),
            }
        }
    }
}

/// Parses an element in the canonical grammar. `S` expands to `T + K`
/// (abstract) and `Q` to the windowed supercharge with the configured
/// realization.
pub fn parse_element(
    text: &str,
    rel: &RelationSet,
    quadratic_k: bool,
) -> Result<AlgebraElement, ParseError> {
    let mut cur = Cursor::new(text);
    let mut out = AlgebraElement::zero();
    loop {
        // term
        let mut negate = false;
        // allow leading '-' of the term (also handled by negative rationals)
        if cur.peek() == Some(b'-') {
            let save = cur.pos;
            cur.pos += 1;
            if cur.peek().map_or(false, |c| c.is_ascii_alphabetic()) {
                negate = true;
            } else {
                cur.pos = save;
            }
        }
        let mut factor = AlgebraElement::one();
        loop {
            let atom = parse_atom(&mut cur, rel)?;
            let next: AlgebraElement = match atom {
                Atom::Scalar(s) => AlgebraElement::scalar(APoly::constant(s)),
                Atom::PiPow(k) => {
                    AlgebraElement::scalar(APoly::constant(ExactScalar::pi_pow(k)))
                }
                Atom::AVar(x) => AlgebraElement::scalar(APoly::indeterminate(x)),
                Atom::Gen(g) => AlgebraElement::generator(g),
                Atom::SGen(a, m) => AlgebraElement::generator(Gen::t(a, m))
                    .add(&AlgebraElement::generator(Gen::k(a, m))),
                Atom::Q => builders::q_element(rel, quadratic_k),
            };
            factor = factor.mul(&next, rel);
            if !cur.eat(b'*') {
                break;
            }
        }
        if negate {
            factor = factor.neg();
        }
        out.add_assign(&factor);
        if cur.at_end() {
            break;
        }
        if !cur.eat(b'+') && !matches!(cur.peek(), Some(b'-')) {
            return err(cur.pos, "expected '+' or end of input");
        }
    }
    Ok(out)
}

fn push_mode(s: &mut String, m: &Mode) {
    use fmt::Write;
    write!(s, "{},{},{}", m.0[0], m.0[1], m.0[2]).unwrap();
}

fn gen_text(g: &Gen) -> String {
    let name = match g.kind() {
        GenKind::T => "T",
        GenKind::K => "K",
        GenKind::Psi => "psi",
    };
    let mut s = format!("{name}[{};", g.lie_index() + 1);
    push_mode(&mut s, &g.mode());
    s.push(']');
    s
}

fn flat_terms(word: &Word, coeff: &APoly, out: &mut Vec<String>) {
    const RADICALS: [&str; 4] = ["", "sqrt2", "sqrt3", "sqrt6"];
    for (mono, scalar) in coeff.terms() {
        for (k, knum) in scalar.terms() {
            for (b, r) in knum.terms() {
                let mut atoms: Vec<String> = Vec::new();
                let rational = *r;
                let radical = RADICALS[(b & 3) as usize];
                let imag = b & 4 != 0;
                let needs_one = radical.is_empty()
                    && !imag
                    && *k == 0
                    && mono.is_empty()
                    && word.is_empty();
                if !rational.is_one() || needs_one {
                    atoms.push(rational.to_string());
                }
                if imag {
                    atoms.push("i".into());
                }
                if !radical.is_empty() {
                    atoms.push(radical.into());
                }
                if *k == 1 {
                    atoms.push("pi".into());
                } else if *k != 0 {
                    atoms.push(format!("pi^{k}"));
                }
                for x in mono.iter() {
                    let mut s = format!(
                        "A[{};{};",
                        x.lie_index() + 1,
                        x.spatial_index() + 1
                    );
                    push_mode(&mut s, &x.mode());
                    s.push(']');
                    atoms.push(s);
                }
                for g in word.iter() {
                    atoms.push(gen_text(g));
                }
                if atoms.is_empty() {
                    atoms.push("1".into());
                }
                out.push(atoms.join("*"));
            }
        }
    }
}

/// Canonical rendering; `"0"` for the zero element.
pub fn print_element(x: &AlgebraElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (w, c) in x.sorted_terms() {
        flat_terms(w, c, &mut parts);
    }
    parts.join(" + ")
}

/// Canonical rendering of a bare polynomial coefficient.
pub fn print_apoly(p: &APoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    flat_terms(&Word::new(), p, &mut parts);
    parts.join(" + ")
}

/// Parses a polynomial (an element with no generators).
pub fn parse_apoly(text: &str, rel: &RelationSet) -> Result<APoly, ParseError> {
    let el = parse_element(text, rel, false)?;
    let mut out = APoly::zero();
    for (w, c) in el.terms() {
        if !w.is_empty() {
            return err(0, "expected a scalar expression without generators");
        }
        out = out.add(c);
    }
    Ok(out)
}

/// Parses an exact scalar (no generators, no potential components).
pub fn parse_scalar(text: &str, rel: &RelationSet) -> Result<ExactScalar, ParseError> {
    let p = parse_apoly(text, rel)?;
    p.as_constant()
        .ok_or_else(|| ParseError {
            pos: 0,
            message: "expected a constant scalar".into(),
        })
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_element(self))
    }
}

/// Canonical scalar text without element machinery (for reports).
pub fn scalar_text(s: &ExactScalar) -> String {
    print_apoly(&APoly::constant(s.clone()))
}
