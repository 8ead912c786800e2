//! Quasi-symmetric functions in the monomial (`M_I`) and fundamental (`F_I`)
//! bases, the internal products `∧`/`∨`, the concatenation product `⊙₀`, and
//! the duality pairing with **Sym**.

use std::fmt;
use std::str::FromStr;

use crate::compositions::{Composition, DescentOp};
use crate::error::{Error, Result};
use crate::lincomb::{render_terms, LinComb};
use crate::nsym::{Basis, NsymElement};
use crate::scalars::MultiPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QBasis {
    M,
    F,
}

impl QBasis {
    pub fn tag(self) -> &'static str {
        match self {
            QBasis::M => "M",
            QBasis::F => "F",
        }
    }
}

impl fmt::Display for QBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for QBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(QBasis::M),
            "F" | "f" => Ok(QBasis::F),
            _ => Err(Error::Parse(format!("unknown QSym basis `{s}`"))),
        }
    }
}

/// Which internal product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InternalMode {
    /// `Des(I) = Des(H) ∩ Des(K)`.
    Meet,
    /// `Des(I) = Des(H) ∪ Des(K)`.
    Join,
}

/// `F_I = Σ_{Des(J) ⊇ Des(I)} M_J`; `M_I` is its Möbius inverse.
pub fn convert_q_index(from: QBasis, to: QBasis, i: &Composition) -> Vec<(Composition, i64)> {
    let base = i.descent_mask().count_ones();
    match (from, to) {
        (QBasis::F, QBasis::M) => i.refinements().map(|j| (j, 1)).collect(),
        (QBasis::M, QBasis::F) => i
            .refinements()
            .map(|j| {
                let k = j.descent_mask().count_ones() - base;
                (j, if k.is_multiple_of(2) { 1 } else { -1 })
            })
            .collect(),
        _ => vec![(*i, 1)],
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsymElement {
    basis: QBasis,
    terms: LinComb<Composition>,
}

impl QsymElement {
    pub fn zero(basis: QBasis) -> Self {
        QsymElement {
            basis,
            terms: LinComb::new(),
        }
    }

    pub fn basis_element(basis: QBasis, i: Composition) -> Self {
        QsymElement {
            basis,
            terms: LinComb::single(i, MultiPoly::one()),
        }
    }

    pub fn fundamental(i: Composition) -> Self {
        Self::basis_element(QBasis::F, i)
    }

    pub fn monomial(i: Composition) -> Self {
        Self::basis_element(QBasis::M, i)
    }

    pub fn from_terms(basis: QBasis, terms: LinComb<Composition>) -> Self {
        QsymElement { basis, terms }
    }

    pub fn basis(&self) -> QBasis {
        self.basis
    }

    pub fn terms(&self) -> &LinComb<Composition> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn convert(&self, target: QBasis) -> QsymElement {
        if target == self.basis {
            return self.clone();
        }
        let from = self.basis;
        QsymElement {
            basis: target,
            terms: self.terms.map_linear(|i| convert_q_index(from, target, i)),
        }
    }

    pub fn add(&self, other: &QsymElement) -> QsymElement {
        let mut terms = self.terms.clone();
        terms.add_all(&other.convert(self.basis).terms);
        QsymElement {
            basis: self.basis,
            terms,
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> QsymElement {
        QsymElement {
            basis: self.basis,
            terms: self.terms.scale(c),
        }
    }

    pub fn equals(&self, other: &QsymElement) -> bool {
        self.terms == other.convert(self.basis).terms
    }

    /// Internal product; terms of different degrees multiply to zero. The
    /// result is returned in the basis of `self`.
    pub fn internal_product(&self, other: &QsymElement, mode: InternalMode) -> QsymElement {
        let f = self.convert(QBasis::F);
        let g = other.convert(QBasis::F);
        let op = match mode {
            InternalMode::Meet => DescentOp::Meet,
            InternalMode::Join => DescentOp::Join,
        };
        let terms = f
            .terms
            .bilinear(&g.terms, |h, k| h.descent_op(k, op).ok().map(|i| (i, 1)));
        QsymElement {
            basis: QBasis::F,
            terms,
        }
        .convert(self.basis)
    }

    /// `F_I ⊙₀ F_J = F_{I·J}`, returned in the basis of `self`.
    pub fn concat_product(&self, other: &QsymElement) -> QsymElement {
        let f = self.convert(QBasis::F);
        let g = other.convert(QBasis::F);
        let terms = f.terms.bilinear(&g.terms, |i, j| [(i.concat(j), 1)]);
        QsymElement {
            basis: QBasis::F,
            terms,
        }
        .convert(self.basis)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = serde_json::Map::new();
        for (i, c) in &self.terms {
            terms.insert(i.to_string(), c.to_json());
        }
        serde_json::json!({ "basis": self.basis.tag(), "terms": terms })
    }
}

impl fmt::Display for QsymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.basis;
        f.write_str(&render_terms(self.terms.iter(), |i| {
            format!("{b}{}", i.label())
        }))
    }
}

/// Duality pairing `⟨R_I, F_J⟩ = δ_{I,J} = ⟨S^I, M_J⟩`.
pub fn pairing(f: &NsymElement, g: &QsymElement) -> MultiPoly {
    let f = f.convert(Basis::R);
    let g = g.convert(QBasis::F);
    let mut acc = MultiPoly::zero();
    for (i, c) in f.terms() {
        if let Some(d) = g.terms().get(i) {
            acc += &(c * d);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts).unwrap()
    }

    fn f(parts: &[usize]) -> QsymElement {
        QsymElement::fundamental(c(parts))
    }

    fn m(parts: &[usize]) -> QsymElement {
        QsymElement::monomial(c(parts))
    }

    #[test]
    fn conversion_examples() {
        assert!(f(&[2]).equals(&m(&[2]).add(&m(&[1, 1]))));
        let minus = f(&[1, 1]).scale(&MultiPoly::from_int(-1));
        assert!(m(&[2]).convert(QBasis::F).equals(&f(&[2]).add(&minus)));
        assert_eq!(f(&[1, 1]).convert(QBasis::M), m(&[1, 1]));
    }

    #[test]
    fn internal_product_examples() {
        assert_eq!(
            f(&[2, 1]).internal_product(&f(&[1, 2]), InternalMode::Meet),
            f(&[3])
        );
        assert_eq!(
            f(&[2, 1]).internal_product(&f(&[1, 2]), InternalMode::Join),
            f(&[1, 1, 1])
        );
        assert_eq!(
            f(&[1, 1]).internal_product(&f(&[2]), InternalMode::Meet),
            f(&[2])
        );
        assert!(f(&[2])
            .internal_product(&f(&[1]), InternalMode::Meet)
            .is_zero());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(f(&[2]).concat_product(&f(&[1])), f(&[2, 1]));
        assert_eq!(f(&[]).concat_product(&f(&[2, 2])), f(&[2, 2]));
        assert_eq!(f(&[1]).concat_product(&f(&[1])), f(&[1, 1]));
    }

    #[test]
    fn pairing_examples() {
        let r21 = NsymElement::ribbon(c(&[2, 1]));
        assert!(pairing(&r21, &f(&[2, 1])).is_one());
        assert!(pairing(&r21, &f(&[3])).is_zero());
        let s21 = NsymElement::basis_element(Basis::S, c(&[2, 1]));
        assert!(pairing(&s21, &f(&[2, 1])).is_one());
        assert!(pairing(&s21, &m(&[2, 1])).is_one());
        assert!(pairing(&s21, &m(&[3])).is_zero());
    }
}
