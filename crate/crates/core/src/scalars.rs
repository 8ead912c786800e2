//! Exact rationals and truncated polynomials in the six formal variables
//! `t, q, p, x, y, z`.
//!
//! A [`MultiPoly`] carries its own truncation window: a per-variable maximum
//! exponent. Every arithmetic operation works in the intersection of the
//! operands' windows and drops monomials that fall outside it, so truncated
//! power series and honest polynomials share one type.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The fixed variable universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    Q,
    P,
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::T, Var::Q, Var::P, Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["t", "q", "p", "x", "y", "z"][self.index()]
    }

    pub fn parse(s: &str) -> Result<Var> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{s}`")))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var::index`].
pub type Monomial = [u16; 6];

/// Per-variable maximum exponent; `None` means untruncated.
pub type Truncation = [Option<u16>; 6];

pub const UNTRUNCATED: Truncation = [None; 6];

fn meet_truncation(a: &Truncation, b: &Truncation) -> Truncation {
    let mut out = UNTRUNCATED;
    for i in 0..6 {
        out[i] = match (a[i], b[i]) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        };
    }
    out
}

fn fits(m: &Monomial, trunc: &Truncation) -> bool {
    m.iter()
        .zip(trunc.iter())
        .all(|(e, t)| t.is_none_or(|bound| *e <= bound))
}

/// Renders a monomial as `x^2*q`, or `1` for the constant monomial.
pub fn monomial_string(m: &Monomial) -> String {
    let parts: Vec<String> = Var::ALL
        .iter()
        .filter(|v| m[v.index()] > 0)
        .map(|v| match m[v.index()] {
            1 => v.name().to_string(),
            e => format!("{}^{}", v.name(), e),
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Truncated multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
    trunc: Truncation,
}

impl Default for MultiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            trunc: UNTRUNCATED,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, [0; 6])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            terms,
            trunc: UNTRUNCATED,
        }
    }

    /// `var^exp` with coefficient one.
    pub fn var_pow(var: Var, exp: u16) -> Self {
        let mut m = [0; 6];
        m[var.index()] = exp;
        Self::term(Rational::one(), m)
    }

    pub fn var(var: Var) -> Self {
        Self::var_pow(var, 1)
    }

    /// `1 + v + ... + v^i`, the integer `[i+1]` in the variable `v`.
    pub fn q_integer(var: Var, i: u16) -> Self {
        (0..=i).fold(Self::zero(), |acc, k| acc + Self::var_pow(var, k))
    }

    /// `(a; v)_n = (1 - a)(1 - a v) ... (1 - a v^{n-1})`.
    pub fn pochhammer(a: &MultiPoly, var: Var, n: usize) -> Self {
        let mut acc = Self::one();
        for k in 0..n {
            let factor = Self::one() - &(a * &Self::var_pow(var, k as u16));
            acc = &acc * &factor;
        }
        acc
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    /// Restricts the window for `var` to exponents `<= order`.
    pub fn truncated(mut self, var: Var, order: u16) -> Self {
        let i = var.index();
        self.trunc[i] = Some(self.trunc[i].map_or(order, |o| o.min(order)));
        self.retain_window();
        self
    }

    /// Restricts the window to the intersection with `trunc`.
    pub fn with_window(mut self, trunc: &Truncation) -> Self {
        self.trunc = meet_truncation(&self.trunc, trunc);
        self.retain_window();
        self
    }

    fn retain_window(&mut self) {
        let trunc = self.trunc;
        self.terms.retain(|m, _| fits(m, &trunc));
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; 6]).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coeff_of(&self, exps: &[(Var, u16)]) -> Rational {
        let mut m = [0; 6];
        for (v, e) in exps {
            m[v.index()] = *e;
        }
        self.coeff(&m)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&[0; 6])
    }

    /// Whether the polynomial is a bare rational (no variables).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 6]).cloned(),
            _ => None,
        }
    }

    /// Coefficient of `var^exp`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, var: Var, exp: u16) -> MultiPoly {
        let i = var.index();
        let mut out = MultiPoly {
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        out.trunc[i] = None;
        for (m, c) in &self.terms {
            if m[i] == exp {
                let mut m2 = *m;
                m2[i] = 0;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, var: Var) -> Option<u16> {
        self.terms.keys().map(|m| m[var.index()]).max()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                terms: BTreeMap::new(),
                trunc: self.trunc,
            };
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale_int(&self, n: i64) -> MultiPoly {
        self.scale(&int(n))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one().with_window(&self.trunc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || !fits(&m, &self.trunc) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn combine(&self, other: &MultiPoly, sign: i64) -> MultiPoly {
        let mut out = MultiPoly {
            terms: BTreeMap::new(),
            trunc: meet_truncation(&self.trunc, &other.trunc),
        };
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        for (m, c) in &other.terms {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            out.add_term(*m, c);
        }
        out
    }

    fn product(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly {
            terms: BTreeMap::new(),
            trunc: meet_truncation(&self.trunc, &other.trunc),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = [0u16; 6];
                for i in 0..6 {
                    m[i] = ma[i] + mb[i];
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Inverse up to truncation, by expanding `1/(c + h) = c^{-1} Σ (-h/c)^k`.
    ///
    /// Every non-constant monomial must involve a truncated variable, otherwise
    /// the expansion does not terminate.
    pub fn geometric_inverse(&self) -> Result<MultiPoly> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotInvertible(format!(
                "zero constant term in {self}"
            )));
        }
        let cinv = c.recip();
        let mut h = self.clone();
        h.terms.remove(&[0; 6]);
        for m in h.terms.keys() {
            let grows = Var::ALL
                .iter()
                .any(|v| m[v.index()] > 0 && self.trunc[v.index()].is_some());
            if !grows {
                return Err(Error::NotInvertible(format!(
                    "monomial {} involves no truncated variable",
                    monomial_string(m)
                )));
            }
        }
        let step = h.scale(&-cinv.clone());
        let mut power = MultiPoly::one().with_window(&self.trunc);
        let mut sum = power.clone();
        loop {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            sum += &power;
        }
        Ok(sum.scale(&cinv))
    }

    /// Inverse of a bare nonzero rational, or the truncated geometric inverse.
    pub fn inverse(&self) -> Result<MultiPoly> {
        match self.as_constant() {
            Some(c) if !c.is_zero() => Ok(MultiPoly::constant(c.recip()).with_window(&self.trunc)),
            _ => self.geometric_inverse(),
        }
    }

    /// Compares two polynomials inside the intersection of their windows.
    pub fn eq_within(&self, other: &MultiPoly) -> bool {
        let w = meet_truncation(&self.trunc, &other.trunc);
        self.clone().with_window(&w).terms == other.clone().with_window(&w).terms
    }

    /// Substitutes `var -> value` for a constant rational value.
    pub fn evaluate(&self, var: Var, value: &Rational) -> MultiPoly {
        let i = var.index();
        let mut out = MultiPoly {
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        out.trunc[i] = None;
        for (m, c) in &self.terms {
            let mut m2 = *m;
            m2[i] = 0;
            let v = num_traits::pow(value.clone(), m[i] as usize);
            out.add_term(m2, c * v);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (m, c) in &self.terms {
            map.insert(
                monomial_string(m),
                serde_json::Value::String(format!("{}/{}", c.numer(), c.denom())),
            );
        }
        serde_json::Value::Object(map)
    }

    /// Whether the rendering needs parentheses when used as a coefficient.
    pub(crate) fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if *m == [0; 6] {
                format_rational(&abs)
            } else if abs.is_one() {
                monomial_string(m)
            } else {
                format!("{}*{}", format_rational(&abs), monomial_string(m))
            };
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::from_int(n)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.combine(rhs, 1)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.combine(&rhs, 1)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.combine(rhs, -1)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.combine(&rhs, -1)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.product(rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.product(&rhs)
    }
}

impl Add<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: &MultiPoly) -> MultiPoly {
        self += rhs;
        self
    }
}

impl Sub<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: &MultiPoly) -> MultiPoly {
        self -= rhs;
        self
    }
}

impl Mul<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.product(rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.trunc = meet_truncation(&self.trunc, &rhs.trunc);
        self.retain_window();
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.trunc = meet_truncation(&self.trunc, &rhs.trunc);
        self.retain_window();
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }

    #[test]
    fn difference_of_squares() {
        let one = MultiPoly::one();
        let lhs = &(&one + &q()) * &(&one - &q());
        assert_eq!(lhs, &one - &q().pow(2));
    }

    #[test]
    fn truncated_square() {
        let f = (MultiPoly::one() + q()).truncated(Var::Q, 1);
        let sq = &f * &f;
        let expected = (MultiPoly::one() + q().scale_int(2)).truncated(Var::Q, 1);
        assert_eq!(sq, expected);
    }

    #[test]
    fn q_integer_telescopes() {
        let three = MultiPoly::q_integer(Var::Q, 2);
        let prod = &three * &(MultiPoly::one() - q());
        assert_eq!(prod, MultiPoly::one() - q().pow(3));
    }

    #[test]
    fn geometric_series() {
        let f = (MultiPoly::one() - q()).truncated(Var::Q, 3);
        let inv = f.geometric_inverse().unwrap();
        let expected = (0..=3).fold(MultiPoly::zero(), |a, k| a + MultiPoly::var_pow(Var::Q, k));
        assert_eq!(inv.terms, expected.terms);
    }

    #[test]
    fn inverse_of_one() {
        let f = MultiPoly::one().truncated(Var::Q, 5);
        assert!(f.geometric_inverse().unwrap().is_one());
    }

    #[test]
    fn two_part_partitions() {
        // 1/((1-q)(1-q^2)) counts partitions into parts of size at most two.
        let f = MultiPoly::pochhammer(&q(), Var::Q, 2).truncated(Var::Q, 4);
        let inv = f.geometric_inverse().unwrap();
        let coeffs: Vec<i64> = (0..=4)
            .map(|k| {
                let c = inv.coeff_of(&[(Var::Q, k)]);
                c.to_integer().try_into().unwrap()
            })
            .collect();
        assert_eq!(coeffs, vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn zero_constant_term_rejected() {
        let f = q().truncated(Var::Q, 3);
        assert!(matches!(
            f.geometric_inverse(),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn untruncated_variable_rejected() {
        let f = MultiPoly::one() - MultiPoly::var(Var::T);
        assert!(f.truncated(Var::Q, 2).geometric_inverse().is_err());
    }

    #[test]
    fn rendering() {
        let f = MultiPoly::one() - q().pow(2).scale(&ratio(3, 2)) + MultiPoly::var(Var::T);
        assert_eq!(f.to_string(), "1 - 3/2*q^2 + t");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        let json = f.to_json();
        assert_eq!(json["q^2"], "-3/2");
        assert_eq!(json["1"], "1/1");
    }
}
