//! The algebra **Sym** of noncommutative symmetric functions in the complete
//! (`S^I`), elementary (`Λ^I`) and ribbon (`R_I`) bases.
//!
//! Elements are sparse maps from compositions to [`MultiPoly`] coefficients.
//! The complete basis is the hub for basis changes:
//!
//! * `S^I = Σ_{Des(J) ⊆ Des(I)} R_J`, and its Möbius inverse
//!   `R_I = Σ_{Des(J) ⊆ Des(I)} (-1)^{|Des(I) \ Des(J)|} S^J`;
//! * `Λ^I = Σ_{Des(J) ⊇ Des(I)} (-1)^{n - l(J)} S^J`, an involutive change of
//!   basis (the same formula expresses `S^I` in the `Λ` basis).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::lincomb::{render_terms, LinComb};
use crate::scalars::MultiPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Complete functions `S^I`.
    S,
    /// Elementary functions `Λ^I`.
    L,
    /// Ribbon functions `R_I`.
    R,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::S => "S",
            Basis::L => "L",
            Basis::R => "R",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Basis::S => "S",
            Basis::L => "Λ",
            Basis::R => "R",
        }
    }

    /// Products of basis elements are single basis elements (concatenation).
    pub fn is_multiplicative(self) -> bool {
        matches!(self, Basis::S | Basis::L)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(Basis::S),
            "L" | "l" | "Λ" | "Lambda" | "lambda" => Ok(Basis::L),
            "R" | "r" => Ok(Basis::R),
            _ => Err(Error::Parse(format!("unknown Sym basis `{s}`"))),
        }
    }
}

fn sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn to_complete(from: Basis, i: &Composition) -> Vec<(Composition, i64)> {
    match from {
        Basis::S => vec![(*i, 1)],
        Basis::R => {
            let top = i.descent_mask().count_ones();
            i.coarsenings()
                .map(|j| (j, sign(top - j.descent_mask().count_ones())))
                .collect()
        }
        Basis::L => elementary_swap(i),
    }
}

fn from_complete(to: Basis, i: &Composition) -> Vec<(Composition, i64)> {
    match to {
        Basis::S => vec![(*i, 1)],
        Basis::R => i.coarsenings().map(|j| (j, 1)).collect(),
        Basis::L => elementary_swap(i),
    }
}

/// `S^I ↔ Λ^I`: `Σ_{Des(J) ⊇ Des(I)} (-1)^{n - l(J)} X^J`.
fn elementary_swap(i: &Composition) -> Vec<(Composition, i64)> {
    let n = i.degree();
    i.refinements()
        .map(|j| (j, sign((n - j.length()) as u32)))
        .collect()
}

/// Expansion of the single basis element `from_I` in the basis `to`.
pub fn convert_index(from: Basis, to: Basis, i: &Composition) -> Vec<(Composition, i64)> {
    if from == to {
        return vec![(*i, 1)];
    }
    let mut acc: BTreeMap<Composition, i64> = BTreeMap::new();
    for (j, a) in to_complete(from, i) {
        for (k, b) in from_complete(to, &j) {
            *acc.entry(k).or_insert(0) += a * b;
        }
    }
    acc.into_iter().filter(|(_, v)| *v != 0).collect()
}

/// Product of two basis elements: concatenation for `S` and `Λ`,
/// `R_I R_J = R_{I·J} + R_{I▷J}` for ribbons.
pub fn basis_product(basis: Basis, i: &Composition, j: &Composition) -> Vec<(Composition, i64)> {
    match basis {
        Basis::S | Basis::L => vec![(i.concat(j), 1)],
        Basis::R => match i.merge(j) {
            Some(m) => vec![(i.concat(j), 1), (m, 1)],
            None => vec![(i.concat(j), 1)],
        },
    }
}

/// Right derivation on a complete-basis index: the last part is decremented
/// and removed when it reaches zero; the empty index is killed.
fn partial_complete(i: &Composition) -> Option<Composition> {
    let mut parts = i.parts();
    let last = parts.last_mut()?;
    *last -= 1;
    if *last == 0 {
        parts.pop();
    }
    Some(Composition::new(&parts).expect("positive parts"))
}

/// `R_I ∂ = R_{i_1, ..., i_r - 1}` when `i_r > 1`, `R_1 ∂ = 1`, and `0`
/// otherwise.
pub fn partial_ribbon_index(i: &Composition) -> Option<Composition> {
    if i.degree() == 1 {
        return Some(Composition::empty());
    }
    let mut parts = i.parts();
    let last = parts.last_mut()?;
    if *last == 1 {
        return None;
    }
    *last -= 1;
    Some(Composition::new(&parts).expect("positive parts"))
}

/// A (finite) element of **Sym** in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsymElement {
    basis: Basis,
    terms: LinComb<Composition>,
}

impl NsymElement {
    pub fn zero(basis: Basis) -> Self {
        NsymElement {
            basis,
            terms: LinComb::new(),
        }
    }

    pub fn scalar(basis: Basis, c: MultiPoly) -> Self {
        NsymElement {
            basis,
            terms: LinComb::single(Composition::empty(), c),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::scalar(basis, MultiPoly::one())
    }

    pub fn basis_element(basis: Basis, i: Composition) -> Self {
        NsymElement {
            basis,
            terms: LinComb::single(i, MultiPoly::one()),
        }
    }

    pub fn from_terms(basis: Basis, terms: LinComb<Composition>) -> Self {
        NsymElement { basis, terms }
    }

    /// `S_n`.
    pub fn complete(n: usize) -> Self {
        Self::basis_element(Basis::S, Composition::row(n))
    }

    /// `Λ_n`.
    pub fn elementary(n: usize) -> Self {
        Self::basis_element(Basis::L, Composition::row(n))
    }

    pub fn ribbon(i: Composition) -> Self {
        Self::basis_element(Basis::R, i)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &LinComb<Composition> {
        &self.terms
    }

    pub fn coeff(&self, i: &Composition) -> MultiPoly {
        self.terms.coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> MultiPoly {
        self.terms.coeff(&Composition::empty())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|i| i.degree()).max()
    }

    /// Homogeneous component of degree `n`.
    pub fn component(&self, n: usize) -> NsymElement {
        let mut terms = self.terms.clone();
        terms.retain(|i| i.degree() == n);
        NsymElement {
            basis: self.basis,
            terms,
        }
    }

    /// Components of degree at most `n`.
    pub fn truncate_degree(&self, n: usize) -> NsymElement {
        let mut terms = self.terms.clone();
        terms.retain(|i| i.degree() <= n);
        NsymElement {
            basis: self.basis,
            terms,
        }
    }

    pub fn convert(&self, target: Basis) -> NsymElement {
        if target == self.basis {
            return self.clone();
        }
        let from = self.basis;
        NsymElement {
            basis: target,
            terms: self.terms.map_linear(|i| convert_index(from, target, i)),
        }
    }

    pub fn add(&self, other: &NsymElement) -> NsymElement {
        let mut terms = self.terms.clone();
        terms.add_all(&other.convert(self.basis).terms);
        NsymElement {
            basis: self.basis,
            terms,
        }
    }

    pub fn sub(&self, other: &NsymElement) -> NsymElement {
        let mut terms = self.terms.clone();
        terms.sub_all(&other.convert(self.basis).terms);
        NsymElement {
            basis: self.basis,
            terms,
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> NsymElement {
        NsymElement {
            basis: self.basis,
            terms: self.terms.scale(c),
        }
    }

    /// Product in the basis of `self`; `other` is converted first if needed.
    pub fn multiply(&self, other: &NsymElement) -> NsymElement {
        let other = other.convert(self.basis);
        let basis = self.basis;
        NsymElement {
            basis,
            terms: self
                .terms
                .bilinear(&other.terms, |i, j| basis_product(basis, i, j)),
        }
    }

    /// The anti-automorphism `ω` with `ω(S_n) = Λ_n`, returned in the basis
    /// of `self`.
    pub fn omega(&self) -> NsymElement {
        let s = self.convert(Basis::S);
        let image = NsymElement {
            basis: Basis::L,
            terms: s.terms.map_linear(|i| [(i.reverse(), 1)]),
        };
        image.convert(self.basis)
    }

    /// Right derivation `∂` with `S^{(i_1,...,i_r)} ∂ = S^{(i_1,...,i_r - 1)}`,
    /// returned in the basis of `self`.
    pub fn partial_right(&self) -> NsymElement {
        let s = self.convert(Basis::S);
        let image = NsymElement {
            basis: Basis::S,
            terms: s.terms.map_linear(|i| partial_complete(i).map(|j| (j, 1))),
        };
        image.convert(self.basis)
    }

    /// `∂` computed directly on ribbons.
    pub fn partial_right_ribbon(&self) -> NsymElement {
        let r = self.convert(Basis::R);
        NsymElement {
            basis: Basis::R,
            terms: r
                .terms
                .map_linear(|i| partial_ribbon_index(i).map(|j| (j, 1))),
        }
    }

    /// Equality up to change of basis.
    pub fn equals(&self, other: &NsymElement) -> bool {
        self.terms == other.convert(self.basis).terms
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut degrees: BTreeMap<usize, serde_json::Map<String, serde_json::Value>> =
            BTreeMap::new();
        for (i, c) in &self.terms {
            degrees
                .entry(i.degree())
                .or_default()
                .insert(i.to_string(), c.to_json());
        }
        let mut out = serde_json::Map::new();
        out.insert("basis".into(), self.basis.tag().into());
        let mut comps = serde_json::Map::new();
        for (n, m) in degrees {
            comps.insert(n.to_string(), serde_json::Value::Object(m));
        }
        out.insert("degrees".into(), serde_json::Value::Object(comps));
        serde_json::Value::Object(out)
    }
}

impl fmt::Display for NsymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.basis;
        f.write_str(&render_terms(self.terms.iter(), |i| {
            if i.is_empty() {
                "1".to_string()
            } else {
                format!("{b}{}", i.label())
            }
        }))
    }
}

/// A graded series in **Sym**, known up to degree `order` inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsymSeries {
    element: NsymElement,
    order: usize,
}

impl NsymSeries {
    pub fn new(element: NsymElement, order: usize) -> Self {
        NsymSeries {
            element: element.truncate_degree(order),
            order,
        }
    }

    pub fn element(&self) -> &NsymElement {
        &self.element
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn constant_term(&self) -> MultiPoly {
        self.element.constant_term()
    }

    pub fn multiply(&self, other: &NsymSeries) -> NsymSeries {
        let order = self.order.min(other.order);
        NsymSeries::new(
            self.element
                .truncate_degree(order)
                .multiply(&other.element.truncate_degree(order)),
            order,
        )
    }

    /// Graded inverse: `g_0 = f_0^{-1}`, `g_n = -f_0^{-1} Σ_{k=1}^n f_k g_{n-k}`.
    pub fn invert(&self) -> Result<NsymSeries> {
        let basis = self.element.basis;
        let c = self.constant_term();
        let cinv = c
            .inverse()
            .map_err(|_| Error::NotInvertible(format!("constant term {c} is not a unit")))?;
        let comps: Vec<NsymElement> = (0..=self.order)
            .map(|k| self.element.component(k))
            .collect();
        let mut inv: Vec<NsymElement> = vec![NsymElement::scalar(basis, cinv.clone())];
        let minus_cinv = -&cinv;
        for n in 1..=self.order {
            let mut acc = NsymElement::zero(basis);
            for k in 1..=n {
                if comps[k].is_zero() || inv[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&comps[k].multiply(&inv[n - k]));
            }
            inv.push(acc.scale(&minus_cinv));
        }
        let mut total = NsymElement::zero(basis);
        for g in &inv {
            total = total.add(g);
        }
        Ok(NsymSeries::new(total, self.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts).unwrap()
    }

    fn r(parts: &[usize]) -> NsymElement {
        NsymElement::ribbon(c(parts))
    }

    fn s(parts: &[usize]) -> NsymElement {
        NsymElement::basis_element(Basis::S, c(parts))
    }

    #[test]
    fn conversion_examples() {
        assert_eq!(s(&[3]).convert(Basis::R), r(&[3]));
        assert_eq!(NsymElement::elementary(3).convert(Basis::R), r(&[1, 1, 1]));
        assert_eq!(r(&[2, 1]).convert(Basis::S), s(&[2, 1]).sub(&s(&[3])));
    }

    #[test]
    fn product_examples() {
        assert_eq!(r(&[2]).multiply(&r(&[1])), r(&[2, 1]).add(&r(&[3])));
        assert_eq!(s(&[2]).multiply(&s(&[1])), s(&[2, 1]));
        assert_eq!(
            r(&[1, 1]).multiply(&r(&[1])),
            r(&[1, 1, 1]).add(&r(&[1, 2]))
        );
    }

    #[test]
    fn omega_examples() {
        for n in 0..5 {
            assert!(NsymElement::complete(n)
                .omega()
                .equals(&NsymElement::elementary(n)));
            assert!(NsymElement::elementary(n)
                .omega()
                .equals(&NsymElement::complete(n)));
        }
        assert_eq!(r(&[2, 1]).omega(), r(&[2, 1]));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(s(&[2, 3]).partial_right(), s(&[2, 2]));
        assert!(r(&[2, 1]).partial_right().is_zero());
        assert_eq!(r(&[1, 3]).partial_right(), r(&[1, 2]));
        assert!(NsymElement::one(Basis::S).partial_right().is_zero());
        // zero last part is deleted
        assert_eq!(s(&[2, 1]).partial_right(), s(&[2]));
        assert!(r(&[1])
            .partial_right_ribbon()
            .equals(&NsymElement::one(Basis::R)));
    }

    #[test]
    fn geometric_inverse_of_one_minus_lambda1() {
        let f = NsymElement::one(Basis::L).sub(&NsymElement::elementary(1));
        let inv = NsymSeries::new(f, 2).invert().unwrap();
        let expected = NsymElement::one(Basis::L)
            .add(&NsymElement::elementary(1))
            .add(&NsymElement::basis_element(Basis::L, c(&[1, 1])));
        assert_eq!(inv.element(), &expected);
    }

    #[test]
    fn sigma_lambda_duality() {
        // (Σ (-1)^n Λ_n)^{-1} = Σ S_n
        let order = 6;
        let mut f = NsymElement::zero(Basis::L);
        for n in 0..=order {
            f = f.add(
                &NsymElement::elementary(n).scale(&MultiPoly::from_int(if n % 2 == 0 {
                    1
                } else {
                    -1
                })),
            );
        }
        let inv = NsymSeries::new(f, order).invert().unwrap();
        for n in 0..=order {
            assert!(
                inv.element().component(n).equals(&NsymElement::complete(n)),
                "degree {n}"
            );
        }
    }

    #[test]
    fn invert_one_and_non_unit() {
        let one = NsymSeries::new(NsymElement::one(Basis::R), 4);
        assert_eq!(one.invert().unwrap().element(), &NsymElement::one(Basis::R));
        let bad = NsymSeries::new(r(&[1]), 3);
        assert!(matches!(bad.invert(), Err(Error::NotInvertible(_))));
        let scaled = NsymSeries::new(NsymElement::scalar(Basis::S, MultiPoly::from_int(2)), 2);
        assert_eq!(
            scaled.invert().unwrap().constant_term(),
            MultiPoly::constant(int(1) / int(2))
        );
    }

    #[test]
    fn rendering() {
        let e = r(&[2, 1]).add(&r(&[3]).scale(&MultiPoly::constant(int(3) / int(2))));
        assert_eq!(e.to_string(), "3/2·R[3] + R[2,1]");
        assert_eq!(NsymElement::elementary(2).to_string(), "Λ[2]");
        assert_eq!(NsymElement::zero(Basis::S).to_string(), "0");
        let j = e.to_json();
        assert_eq!(j["basis"], "R");
        assert_eq!(j["degrees"]["3"]["3"]["1"], "3/2");
    }
}
