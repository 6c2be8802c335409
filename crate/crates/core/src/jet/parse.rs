//! Plain-text surface syntax for PDEs and point vector fields.
//!
//! Grammar (whitespace-insensitive, `^` binds tightest, explicit `*`):
//!
//! ```text
//! pde     := expr ( '=' expr )?          -- "u_t + 3*u*u_x + eps*u_xxx = 0"
//! vector  := ( name '=' )? expr          -- "v = x*d_x + 3*t*d_t - 2*u*d_u"
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := ('-' | '+')* atom ('^' natural)?
//! atom    := number | ident | '(' expr ')'
//! number  := digits ('.' digits)?        -- decimals become exact rationals
//! ```
//!
//! Identifiers: `t`, `x`, `u`, jet coordinates `u_t`, `u_x`, `u_tx`,
//! `u_xxx`, …, parameters `eps` (or `epsilon`) and `c1`…`c4`, and the
//! direction symbols `d_t`, `d_x`, `d_u` (vector fields only, linear).
//! Division is by nonzero constants only. Errors carry 1-based line and
//! column positions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use super::pde::PdeForm;
use super::poly::{JetPoly, Var};
use super::vector::PointVectorField;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn err(line: u32, col: u32, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: u32,
    col: u32,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut cur = Cursor {
        chars: src.chars().collect(),
        i: 0,
        line: 1,
        col: 1,
    };
    while let Some(c) = cur.peek() {
        let (tl, tc) = (cur.line, cur.col);
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            let mut frac = String::new();
            let mut in_frac = false;
            while let Some(d) = cur.peek() {
                if d.is_ascii_digit() {
                    cur.bump();
                    if in_frac {
                        frac.push(d);
                    } else {
                        digits.push(d);
                    }
                } else if d == '.' && !in_frac {
                    cur.bump();
                    in_frac = true;
                } else {
                    break;
                }
            }
            if in_frac && frac.is_empty() {
                return Err(err(tl, tc, "digits expected after decimal point"));
            }
            let int: BigInt = digits.parse().expect("ascii digits");
            let value = if frac.is_empty() {
                BigRational::from_integer(int)
            } else {
                let scale = BigInt::from(10u32).pow(frac.len() as u32);
                let f: BigInt = frac.parse().expect("ascii digits");
                BigRational::new(int * &scale + f, scale)
            };
            out.push(Spanned {
                tok: Tok::Num(value),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(d) = cur.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    cur.bump();
                    name.push(d);
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(name),
                line: tl,
                col: tc,
            });
            continue;
        }
        match c {
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | '=' => {
                cur.bump();
                out.push(Spanned {
                    tok: Tok::Sym(c),
                    line: tl,
                    col: tc,
                });
            }
            other => return Err(err(tl, tc, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

/// Expression value: a scalar polynomial plus (at most linear) direction
/// parts, the coefficients of `d_t`, `d_x`, `d_u`.
#[derive(Debug, Clone)]
struct VfExpr {
    scalar: JetPoly,
    dirs: [JetPoly; 3],
}

impl VfExpr {
    fn scalar(p: JetPoly) -> Self {
        VfExpr {
            scalar: p,
            dirs: [JetPoly::zero(), JetPoly::zero(), JetPoly::zero()],
        }
    }

    fn direction(slot: usize) -> Self {
        let mut v = VfExpr::scalar(JetPoly::zero());
        v.dirs[slot] = JetPoly::one();
        v
    }

    fn has_dirs(&self) -> bool {
        self.dirs.iter().any(|d| !d.is_zero())
    }

    fn add(&self, o: &Self) -> Self {
        VfExpr {
            scalar: &self.scalar + &o.scalar,
            dirs: [
                &self.dirs[0] + &o.dirs[0],
                &self.dirs[1] + &o.dirs[1],
                &self.dirs[2] + &o.dirs[2],
            ],
        }
    }

    fn neg(&self) -> Self {
        VfExpr {
            scalar: -&self.scalar,
            dirs: [-&self.dirs[0], -&self.dirs[1], -&self.dirs[2]],
        }
    }

    fn mul(&self, o: &Self, line: u32, col: u32) -> Result<Self> {
        if self.has_dirs() && o.has_dirs() {
            return Err(err(
                line,
                col,
                "vector fields are linear in d_t, d_x, d_u; cannot multiply two direction terms",
            ));
        }
        let (s, d) = if self.has_dirs() { (o, self) } else { (self, o) };
        Ok(VfExpr {
            scalar: &s.scalar * &d.scalar,
            dirs: [
                &s.scalar * &d.dirs[0],
                &s.scalar * &d.dirs[1],
                &s.scalar * &d.dirs[2],
            ],
        })
    }
}

fn ident_to_expr(name: &str, line: u32, col: u32) -> Result<VfExpr> {
    let var = match name {
        "t" => Some(Var::T),
        "x" => Some(Var::X),
        "u" => Some(Var::u(0, 0)),
        "eps" | "epsilon" => Some(Var::Eps),
        _ => None,
    };
    if let Some(v) = var {
        return Ok(VfExpr::scalar(JetPoly::var(v)));
    }
    match name {
        "d_t" => return Ok(VfExpr::direction(0)),
        "d_x" => return Ok(VfExpr::direction(1)),
        "d_u" => return Ok(VfExpr::direction(2)),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("u_") {
        let mut t = 0u8;
        let mut x = 0u8;
        for ch in rest.chars() {
            match ch {
                't' => t += 1,
                'x' => x += 1,
                _ => {
                    return Err(err(
                        line,
                        col,
                        format!("jet index '{name}' may contain only t and x"),
                    ))
                }
            }
        }
        if rest.is_empty() {
            return Err(err(line, col, "empty jet index after 'u_'"));
        }
        return Ok(VfExpr::scalar(JetPoly::var(Var::u(t, x))));
    }
    if let Some(rest) = name.strip_prefix('c') {
        if let Ok(i) = rest.parse::<u8>() {
            if (1..=4).contains(&i) {
                return Ok(VfExpr::scalar(JetPoly::var(Var::C(i))));
            }
        }
    }
    Err(err(
        line,
        col,
        format!(
            "unknown identifier '{name}' (expected t, x, u, a jet coordinate like u_tx, eps, c1..c4, or d_t/d_x/d_u)"
        ),
    ))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn end_pos(&self) -> (u32, u32) {
        self.toks
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((1, 1))
    }

    fn eof_err(&self, what: &str) -> Error {
        let (l, c) = self.end_pos();
        err(l, c, format!("unexpected end of input; expected {what}"))
    }

    fn eat_sym(&mut self, s: char) -> bool {
        if matches!(self.peek(), Some(Spanned { tok: Tok::Sym(c), .. }) if *c == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<VfExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat_sym('-') {
                let t = self.term()?;
                acc = acc.add(&t.neg());
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<VfExpr> {
        let mut acc = self.factor()?;
        loop {
            let (line, col) = self
                .peek()
                .map(|t| (t.line, t.col))
                .unwrap_or_else(|| self.end_pos());
            if self.eat_sym('*') {
                let f = self.factor()?;
                acc = acc.mul(&f, line, col)?;
            } else if self.eat_sym('/') {
                let f = self.factor()?;
                if f.has_dirs() {
                    return Err(err(line, col, "cannot divide by a direction term"));
                }
                let c = f.scalar.as_constant().ok_or_else(|| {
                    err(line, col, "division is only defined by nonzero constants")
                })?;
                if c.is_zero() {
                    return Err(err(line, col, "division by zero"));
                }
                acc = acc.mul(&VfExpr::scalar(JetPoly::constant(c.recip())), line, col)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<VfExpr> {
        if self.eat_sym('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat_sym('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let (line, col) = self
                .peek()
                .map(|t| (t.line, t.col))
                .unwrap_or_else(|| self.end_pos());
            let Some(Spanned { tok: Tok::Num(nv), .. }) = self.peek() else {
                return Err(err(line, col, "exponent must be a nonnegative integer"));
            };
            let n = nv.clone();
            self.pos += 1;
            if !n.is_integer() {
                return Err(err(line, col, "exponent must be a nonnegative integer"));
            }
            let e = n
                .to_integer()
                .to_u32()
                .ok_or_else(|| err(line, col, "exponent must be a nonnegative integer"))?;
            if base.has_dirs() && e != 1 {
                return Err(err(line, col, "direction terms cannot be raised to powers"));
            }
            return Ok(if base.has_dirs() {
                base
            } else {
                VfExpr::scalar(base.scalar.pow(e))
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<VfExpr> {
        let Some(spanned) = self.peek().cloned() else {
            return Err(self.eof_err("a value"));
        };
        match spanned.tok {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(VfExpr::scalar(JetPoly::constant(v)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                ident_to_expr(&name, spanned.line, spanned.col)
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_sym(')') {
                    let (l, c) = self
                        .peek()
                        .map(|t| (t.line, t.col))
                        .unwrap_or_else(|| self.end_pos());
                    return Err(err(l, c, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::Sym(s) => Err(err(
                spanned.line,
                spanned.col,
                format!("unexpected '{s}'"),
            )),
        }
    }

    fn expect_consumed(&self) -> Result<()> {
        if let Some(t) = self.peek() {
            let what = match &t.tok {
                Tok::Num(_) => "number".to_string(),
                Tok::Ident(s) => format!("'{s}'"),
                Tok::Sym(c) => format!("'{c}'"),
            };
            return Err(err(t.line, t.col, format!("unexpected trailing {what}")));
        }
        Ok(())
    }
}

fn parser_for(src: &str) -> Result<Parser> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(err(1, 1, "empty expression"));
    }
    Ok(Parser { toks, pos: 0 })
}

fn require_scalar(e: VfExpr, src_kind: &str) -> Result<JetPoly> {
    if e.has_dirs() {
        return Err(err(
            1,
            1,
            format!("direction symbols d_t/d_x/d_u are not allowed in a {src_kind}"),
        ));
    }
    Ok(e.scalar)
}

/// Parses a bare polynomial expression (no `=`, no direction symbols).
pub fn parse_poly(src: &str) -> Result<JetPoly> {
    let mut p = parser_for(src)?;
    let e = p.expr()?;
    p.expect_consumed()?;
    require_scalar(e, "polynomial expression")
}

/// Parses `expr` or `expr = expr` into a solved PDE form; the leading
/// derivative is chosen automatically (highest constant-coefficient time
/// derivative).
pub fn parse_pde(src: &str) -> Result<PdeForm> {
    let mut p = parser_for(src)?;
    let lhs = p.expr()?;
    let delta = if p.eat_sym('=') {
        let rhs = p.expr()?;
        p.expect_consumed()?;
        &require_scalar(lhs, "PDE")? - &require_scalar(rhs, "PDE")?
    } else {
        p.expect_consumed()?;
        require_scalar(lhs, "PDE")?
    };
    PdeForm::from_delta(delta)
}

/// Parses a vector field, optionally prefixed `name =`. Every term must
/// carry exactly one of `d_t`, `d_x`, `d_u`.
pub fn parse_vector_field(src: &str) -> Result<PointVectorField> {
    let mut p = parser_for(src)?;
    // Optional label: any identifier directly followed by '='.
    if p.toks.len() >= 2 {
        let first_ident = matches!(p.toks[0].tok, Tok::Ident(_));
        let then_eq = matches!(p.toks[1].tok, Tok::Sym('='));
        if first_ident && then_eq {
            p.pos = 2;
        }
    }
    let e = p.expr()?;
    p.expect_consumed()?;
    if !e.scalar.is_zero() {
        return Err(err(
            1,
            1,
            format!(
                "every vector-field term needs a direction symbol; scalar remainder: {}",
                e.scalar
            ),
        ));
    }
    let [t, x, u] = e.dirs;
    PointVectorField::new(t, x, u)
}
