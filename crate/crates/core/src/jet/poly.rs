//! Sparse multivariate polynomials over the rationals for jet-space
//! calculus.
//!
//! Variables are the independent coordinates `t`, `x`, the jet coordinates
//! `u_{t^a x^b}` (with `u = u_{(0,0)}`; mixed indices are canonical, so
//! `u_tx == u_xt`), the dispersion parameter `eps`, and the four free
//! constants `c1…c4` of the general symmetry ansatz. Coefficients are
//! arbitrary-precision rationals, so equality—and in particular "is exactly
//! zero"—is decidable.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Time coordinate.
    T,
    /// Space coordinate.
    X,
    /// Jet coordinate `u` differentiated `t` times in time and `x` times in
    /// space; `U { t: 0, x: 0 }` is `u` itself.
    U { t: u8, x: u8 },
    /// The symbolic dispersion parameter `ε`.
    Eps,
    /// Free constants `c1…c4` from the symmetry ansatz.
    C(u8),
}

impl Var {
    /// The jet coordinate `u_{t^a x^b}`.
    pub fn u(t: u8, x: u8) -> Self {
        Var::U { t, x }
    }

    /// Total derivative order for jet coordinates, `None` otherwise.
    pub fn jet_order(&self) -> Option<u32> {
        match self {
            Var::U { t, x } => Some(*t as u32 + *x as u32),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::X => write!(f, "x"),
            Var::U { t: 0, x: 0 } => write!(f, "u"),
            Var::U { t, x } => {
                write!(f, "u_")?;
                for _ in 0..*t {
                    write!(f, "t")?;
                }
                for _ in 0..*x {
                    write!(f, "x")?;
                }
                Ok(())
            }
            Var::Eps => write!(f, "eps"),
            Var::C(i) => write!(f, "c{i}"),
        }
    }
}

/// A product of variable powers, kept sorted by variable with exponents
/// at least one. The empty monomial is `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// A single variable to a power.
    pub fn unit(var: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(var, exp)])
        }
    }

    /// Canonicalizes an arbitrary factor list.
    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in factors {
            m = m.mul(&Monomial::unit(v, e));
        }
        m
    }

    /// Merges two sorted factor lists, adding exponents.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Exponent of `var` in this monomial.
    pub fn exponent(&self, var: Var) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| *v == var)
            .map_or(0, |(_, e)| *e)
    }

    /// Factors in canonical order.
    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// This monomial with `var` removed entirely.
    fn without(&self, var: Var) -> Self {
        Monomial(self.0.iter().copied().filter(|(v, _)| *v != var).collect())
    }

    /// This monomial with the exponent of `var` lowered by one.
    fn lowered(&self, var: Var) -> Self {
        let mut out = Vec::with_capacity(self.0.len());
        for &(v, e) in &self.0 {
            if v == var {
                if e > 1 {
                    out.push((v, e - 1));
                }
            } else {
                out.push((v, e));
            }
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Direction of a total derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    T,
    X,
}

impl Dir {
    fn base_var(self) -> Var {
        match self {
            Dir::T => Var::T,
            Dir::X => Var::X,
        }
    }

    fn bump(self, t: u8, x: u8) -> Var {
        match self {
            Dir::T => Var::U { t: t + 1, x },
            Dir::X => Var::U { t, x: x + 1 },
        }
    }
}

/// A sparse polynomial with exact rational coefficients. Zero-coefficient
/// terms are never stored, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JetPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

/// Shorthand for an exact rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl JetPoly {
    pub fn zero() -> Self {
        JetPoly::default()
    }

    pub fn one() -> Self {
        JetPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = JetPoly::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        JetPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        JetPoly::constant(rat(num, den))
    }

    pub fn var(v: Var) -> Self {
        JetPoly::term(Monomial::unit(v, 1), BigRational::one())
    }

    /// Single-term polynomial `c · m`.
    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = JetPoly::default();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The value if this polynomial is a rational constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("len checked");
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Highest total jet order among the variables, 0 for jet-free polys.
    pub fn max_jet_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter_map(|(v, _)| v.jet_order())
            .max()
            .unwrap_or(0)
    }

    /// Distinct jet coordinates appearing in the polynomial.
    pub fn jet_vars(&self) -> Vec<(u8, u8)> {
        let mut out: Vec<(u8, u8)> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                if let Var::U { t, x } = v {
                    if !out.contains(&(*t, *x)) {
                        out.push((*t, *x));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Highest power of `eps`.
    pub fn eps_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(Var::Eps))
            .max()
            .unwrap_or(0)
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return JetPoly::zero();
        }
        let mut p = JetPoly::default();
        for (m, c) in &self.terms {
            p.terms.insert(m.clone(), c * s);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = JetPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative `∂/∂var`.
    pub fn partial(&self, var: Var) -> Self {
        let mut out = JetPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.lowered(var), c * rat(e as i64, 1));
            }
        }
        out
    }

    /// Total derivative `D_k p = ∂p/∂k + Σ_J u_{J,k} · ∂p/∂u_J`.
    pub fn total_derivative(&self, dir: Dir) -> Self {
        let mut out = self.partial(dir.base_var());
        for (t, x) in self.jet_vars() {
            let chain = self.partial(Var::u(t, x));
            if !chain.is_zero() {
                out = &out + &(&chain * &JetPoly::var(dir.bump(t, x)));
            }
        }
        out
    }

    /// Replaces every occurrence of `var` by the polynomial `rep`.
    pub fn substitute_var(&self, var: Var, rep: &JetPoly) -> Self {
        let max_exp = self
            .terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0);
        if max_exp == 0 {
            return self.clone();
        }
        // rep^0 .. rep^max_exp
        let mut powers = Vec::with_capacity(max_exp as usize + 1);
        powers.push(JetPoly::one());
        for e in 1..=max_exp {
            let next = &powers[e as usize - 1] * rep;
            powers.push(next);
        }
        let mut out = JetPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
            } else {
                let stripped = JetPoly::term(m.without(var), c.clone());
                let expanded = &stripped * &powers[e as usize];
                out = &out + &expanded;
            }
        }
        out
    }
}

impl core::ops::Add<&JetPoly> for &JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl core::ops::Sub<&JetPoly> for &JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl core::ops::Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        let mut out = JetPoly::default();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl core::ops::Mul<&JetPoly> for &JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &JetPoly) -> JetPoly {
        let mut out = JetPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write_rational(f, &abs)?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write_rational(f, &abs)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

/// Renders a polynomial to a `String` (convenience over `Display`).
pub fn poly_string(p: &JetPoly) -> String {
    format!("{p}")
}
