//! The tensor square **Sym**(A) ⊗ **Sym**(B), the internal coproduct `γ_∧`,
//! the embedding `j` given by `Λ_n ↦ Λ_n ⊗ S_n`, and the noncommutative
//! Bessel functions `J_ν(A, B) = Σ_m (-1)^m Λ_{m-ν}(A) S_m(B)`.
//!
//! The two tensor factors commute with each other, so a product of pure
//! tensors is computed factorwise: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.

use std::fmt;

use crate::compositions::{submasks, Composition};
use crate::error::{Error, Result};
use crate::lincomb::{render_terms, LinComb};
use crate::nsym::{basis_product, convert_index, partial_ribbon_index, Basis, NsymElement};
use crate::qsym::{pairing, QsymElement};
use crate::scalars::MultiPoly;

pub type Bi = (Composition, Composition);

/// Bigraded element of **Sym**(A) ⊗ **Sym**(B), with a basis tag per side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    left: Basis,
    right: Basis,
    terms: LinComb<Bi>,
}

/// Operator applied to the B factor only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondOp {
    Omega,
    Partial,
}

impl TensorElement {
    pub fn zero(left: Basis, right: Basis) -> Self {
        TensorElement {
            left,
            right,
            terms: LinComb::new(),
        }
    }

    pub fn scalar(left: Basis, right: Basis, c: MultiPoly) -> Self {
        TensorElement {
            left,
            right,
            terms: LinComb::single((Composition::empty(), Composition::empty()), c),
        }
    }

    pub fn one(left: Basis, right: Basis) -> Self {
        Self::scalar(left, right, MultiPoly::one())
    }

    pub fn basis_element(left: Basis, right: Basis, a: Composition, b: Composition) -> Self {
        TensorElement {
            left,
            right,
            terms: LinComb::single((a, b), MultiPoly::one()),
        }
    }

    pub fn from_terms(left: Basis, right: Basis, terms: LinComb<Bi>) -> Self {
        TensorElement { left, right, terms }
    }

    /// `f ⊗ g`.
    pub fn pure(f: &NsymElement, g: &NsymElement) -> Self {
        let mut terms = LinComb::new();
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                terms.add((*a, *b), &(ca * cb));
            }
        }
        TensorElement {
            left: f.basis(),
            right: g.basis(),
            terms,
        }
    }

    pub fn bases(&self) -> (Basis, Basis) {
        (self.left, self.right)
    }

    pub fn terms(&self) -> &LinComb<Bi> {
        &self.terms
    }

    pub fn coeff(&self, a: &Composition, b: &Composition) -> MultiPoly {
        self.terms.coeff(&(*a, *b))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> MultiPoly {
        self.coeff(&Composition::empty(), &Composition::empty())
    }

    pub fn convert(&self, left: Basis, right: Basis) -> TensorElement {
        if (left, right) == (self.left, self.right) {
            return self.clone();
        }
        let (l0, r0) = (self.left, self.right);
        let terms = self.terms.map_linear(|(a, b)| {
            let la = convert_index(l0, left, a);
            let rb = convert_index(r0, right, b);
            let mut out = Vec::with_capacity(la.len() * rb.len());
            for (x, m) in &la {
                for (y, n) in &rb {
                    out.push(((*x, *y), m * n));
                }
            }
            out
        });
        TensorElement { left, right, terms }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut terms = self.terms.clone();
        terms.add_all(&other.convert(self.left, self.right).terms);
        TensorElement {
            left: self.left,
            right: self.right,
            terms,
        }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut terms = self.terms.clone();
        terms.sub_all(&other.convert(self.left, self.right).terms);
        TensorElement {
            left: self.left,
            right: self.right,
            terms,
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> TensorElement {
        TensorElement {
            left: self.left,
            right: self.right,
            terms: self.terms.scale(c),
        }
    }

    pub fn multiply(&self, other: &TensorElement) -> TensorElement {
        let other = other.convert(self.left, self.right);
        let (l, r) = (self.left, self.right);
        let terms = self.terms.bilinear(&other.terms, |(a, b), (c, d)| {
            let left = basis_product(l, a, c);
            let right = basis_product(r, b, d);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for (x, m) in &left {
                for (y, n) in &right {
                    out.push(((*x, *y), m * n));
                }
            }
            out
        });
        TensorElement {
            left: l,
            right: r,
            terms,
        }
    }

    pub fn equals(&self, other: &TensorElement) -> bool {
        self.terms == other.convert(self.left, self.right).terms
    }

    /// Terms whose bidegree satisfies the predicate.
    pub fn filter_bidegree(&self, mut keep: impl FnMut(usize, usize) -> bool) -> TensorElement {
        let mut terms = self.terms.clone();
        terms.retain(|(a, b)| keep(a.degree(), b.degree()));
        TensorElement {
            left: self.left,
            right: self.right,
            terms,
        }
    }

    pub fn bidegree_component(&self, da: usize, db: usize) -> TensorElement {
        self.filter_bidegree(|a, b| a == da && b == db)
    }

    /// Applies `ω` or `∂` to the B factor, leaving the A factor alone. The
    /// result keeps the basis tags of `self`.
    pub fn apply_second(&self, op: SecondOp) -> TensorElement {
        let (l, r) = (self.left, self.right);
        let image = match op {
            SecondOp::Omega => {
                let s = self.convert(l, Basis::S);
                TensorElement {
                    left: l,
                    right: Basis::L,
                    terms: s.terms.map_linear(|(a, b)| [((*a, b.reverse()), 1)]),
                }
            }
            SecondOp::Partial => {
                let rr = self.convert(l, Basis::R);
                TensorElement {
                    left: l,
                    right: Basis::R,
                    terms: rr
                        .terms
                        .map_linear(|(a, b)| partial_ribbon_index(b).map(|b2| ((*a, b2), 1))),
                }
            }
        };
        image.convert(l, r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                serde_json::json!({ "left": a.to_string(), "right": b.to_string(), "coeff": c.to_json() })
            })
            .collect();
        serde_json::json!({ "left_basis": self.left.tag(), "right_basis": self.right.tag(), "terms": terms })
    }
}

fn side_label(basis: Basis, i: &Composition) -> String {
    if i.is_empty() {
        "1".to_string()
    } else {
        format!("{basis}{}", i.label())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = (self.left, self.right);
        f.write_str(&render_terms(self.terms.iter(), |(a, b)| {
            format!("{}⊗{}", side_label(l, a), side_label(r, b))
        }))
    }
}

/// `γ_∧ R_I = Σ_{Des(H) ∩ Des(K) = Des(I)} R_H ⊗ R_K`, extended linearly.
pub fn gamma_meet(f: &NsymElement) -> TensorElement {
    let r = f.convert(Basis::R);
    let terms = r.terms().map_linear(|i| {
        let n = i.degree();
        let base = i.descent_mask();
        let free = Composition::column(n).descent_mask() & !base;
        let mut out = Vec::new();
        for a in submasks(free) {
            for b in submasks(free & !a) {
                out.push((
                    (
                        Composition::from_mask_unchecked(n, base | a),
                        Composition::from_mask_unchecked(n, base | b),
                    ),
                    1,
                ));
            }
        }
        out
    });
    TensorElement::from_terms(Basis::R, Basis::R, terms)
}

/// The algebra embedding `j: Λ_n ↦ Λ_n ⊗ S_n`; `Λ^I ↦ Λ^I ⊗ S^I`.
pub fn j_embed(f: &NsymElement) -> TensorElement {
    let l = f.convert(Basis::L);
    let terms = l.terms().map_linear(|i| [((*i, *i), 1)]);
    TensorElement::from_terms(Basis::L, Basis::S, terms)
}

/// `Σ_{Des(I) \ Des(J) = Des(K)} R_I ⊗ R_J`.
pub fn ribbon_image(k: &Composition) -> TensorElement {
    let n = k.degree();
    let kmask = k.descent_mask();
    let free = Composition::column(n).descent_mask() & !kmask;
    let mut terms = LinComb::new();
    for j in submasks(free) {
        for a in submasks(j) {
            terms.add(
                (
                    Composition::from_mask_unchecked(n, kmask | a),
                    Composition::from_mask_unchecked(n, j),
                ),
                &MultiPoly::one(),
            );
        }
    }
    TensorElement::from_terms(Basis::R, Basis::R, terms)
}

/// `Σ_{Des(H) ∩ Des(K) = ∅, H, K ⊨ n} R_H ⊗ R_K`, with `K` replaced by its
/// conjugate when `twisted`.
pub fn disjoint_descent_sum(n: usize, twisted: bool) -> TensorElement {
    let mut terms = LinComb::new();
    for h in Composition::all(n) {
        for k in Composition::all(n) {
            if h.descent_mask() & k.descent_mask() == 0 {
                let k = if twisted { k.conjugate() } else { k };
                terms.add((h, k), &MultiPoly::one());
            }
        }
    }
    TensorElement::from_terms(Basis::R, Basis::R, terms)
}

/// `Σ_{Des(H) ⊆ Des(K)} R_H ⊗ R_K`, the inverse of `Σ (-1)^k Λ_k ⊗ S_k`
/// in degree `(n, n)`.
pub fn contained_descent_sum(n: usize) -> TensorElement {
    let mut terms = LinComb::new();
    for h in Composition::all(n) {
        for k in Composition::all(n) {
            if h.descent_mask() & !k.descent_mask() == 0 {
                terms.add((h, k), &MultiPoly::one());
            }
        }
    }
    TensorElement::from_terms(Basis::R, Basis::R, terms)
}

/// `Σ_{I ⊨ n} S^I ⊗ R_I`.
pub fn complete_ribbon_sum(n: usize) -> TensorElement {
    let terms = Composition::all(n)
        .map(|i| ((i, i), MultiPoly::one()))
        .collect();
    TensorElement::from_terms(Basis::S, Basis::R, terms)
}

/// `⟨F, G ⊗ H⟩` for a tensor `F` and quasi-symmetric `G`, `H`.
pub fn tensor_pairing(f: &TensorElement, g: &QsymElement, h: &QsymElement) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    let (l, r) = f.bases();
    for ((a, b), c) in f.terms().iter() {
        let pa = pairing(&NsymElement::basis_element(l, *a), g);
        if pa.is_zero() {
            continue;
        }
        let pb = pairing(&NsymElement::basis_element(r, *b), h);
        acc += &(&(c * &pa) * &pb);
    }
    acc
}

/// A series in **Sym** ⊗ **Sym** graded by the B degree (the power of `z`),
/// known for B degree `<= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSeries {
    element: TensorElement,
    order: usize,
}

impl TensorSeries {
    pub fn new(element: TensorElement, order: usize) -> Self {
        TensorSeries {
            element: element.filter_bidegree(|_, b| b <= order),
            order,
        }
    }

    pub fn element(&self) -> &TensorElement {
        &self.element
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^k`: the terms of B degree `k`.
    pub fn z_coefficient(&self, k: usize) -> TensorElement {
        self.element.filter_bidegree(|_, b| b == k)
    }

    pub fn multiply(&self, other: &TensorSeries) -> TensorSeries {
        let order = self.order.min(other.order);
        TensorSeries::new(self.element.multiply(&other.element), order)
    }

    /// Graded inverse in the B degree. The B-degree-zero part must be a unit
    /// scalar.
    pub fn invert(&self) -> Result<TensorSeries> {
        let (l, r) = self.element.bases();
        let zero_part = self.z_coefficient(0);
        let c = self.element.constant_term();
        if zero_part.terms().len() != usize::from(!c.is_zero()) {
            return Err(Error::NotInvertible(
                "B-degree zero part is not a scalar".to_string(),
            ));
        }
        let cinv = c
            .inverse()
            .map_err(|_| Error::NotInvertible(format!("constant term {c} is not a unit")))?;
        let minus_cinv = -&cinv;
        let comps: Vec<TensorElement> = (0..=self.order).map(|k| self.z_coefficient(k)).collect();
        let mut inv = vec![TensorElement::scalar(l, r, cinv)];
        for m in 1..=self.order {
            let mut acc = TensorElement::zero(l, r);
            for k in 1..=m {
                if comps[k].is_zero() || inv[m - k].is_zero() {
                    continue;
                }
                acc = acc.add(&comps[k].multiply(&inv[m - k]));
            }
            inv.push(acc.scale(&minus_cinv));
        }
        let mut total = TensorElement::zero(l, r);
        for g in &inv {
            total = total.add(g);
        }
        Ok(TensorSeries::new(total, self.order))
    }
}

/// `J_ν(A, B) = Σ_{m ≥ max(0, ν)} (-1)^m Λ_{m-ν} ⊗ S_m` for `m <= order`, in
/// the `Λ ⊗ S` basis. The `m`-th term has bidegree `(m - ν, m)`.
pub fn bessel_j(nu: i64, order: usize) -> TensorSeries {
    let mut terms = LinComb::new();
    for m in 0..=order {
        let a = m as i64 - nu;
        if a < 0 {
            continue;
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        terms.add(
            (Composition::row(a as usize), Composition::row(m)),
            &MultiPoly::from_int(sign),
        );
    }
    TensorSeries::new(TensorElement::from_terms(Basis::L, Basis::S, terms), order)
}

/// `Σ_k (-1)^k Λ_k ⊗ Λ_k` (`second = L`) or `Σ_k (-1)^k Λ_k ⊗ S_k`
/// (`second = S`), up to `k = order`.
pub fn alternating_diagonal(second: Basis, order: usize) -> TensorSeries {
    let mut terms = LinComb::new();
    for k in 0..=order {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.add(
            (Composition::row(k), Composition::row(k)),
            &MultiPoly::from_int(sign),
        );
    }
    TensorSeries::new(TensorElement::from_terms(Basis::L, second, terms), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts).unwrap()
    }

    fn rr(pairs: &[(&[usize], &[usize])]) -> TensorElement {
        let mut t = TensorElement::zero(Basis::R, Basis::R);
        for (a, b) in pairs {
            t = t.add(&TensorElement::basis_element(
                Basis::R,
                Basis::R,
                c(a),
                c(b),
            ));
        }
        t
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_meet(&NsymElement::elementary(2));
        assert_eq!(g, rr(&[(&[1, 1], &[1, 1])]));
        let g = gamma_meet(&NsymElement::ribbon(c(&[2])));
        assert_eq!(g, rr(&[(&[2], &[2]), (&[2], &[1, 1]), (&[1, 1], &[2])]));
        assert_eq!(
            gamma_meet(&NsymElement::ribbon(c(&[1]))),
            rr(&[(&[1], &[1])])
        );
    }

    #[test]
    fn j_examples() {
        let j = j_embed(&NsymElement::elementary(2)).convert(Basis::R, Basis::R);
        assert_eq!(j, rr(&[(&[1, 1], &[2])]));
        assert_eq!(
            j_embed(&NsymElement::one(Basis::R)),
            TensorElement::one(Basis::L, Basis::S)
        );
        let j = j_embed(&NsymElement::ribbon(c(&[1, 1]))).convert(Basis::R, Basis::R);
        assert_eq!(j, rr(&[(&[1, 1], &[2])]));
    }

    #[test]
    fn ribbon_image_examples() {
        assert_eq!(ribbon_image(&c(&[1, 1])), rr(&[(&[1, 1], &[2])]));
        assert_eq!(
            ribbon_image(&c(&[2])),
            rr(&[(&[2], &[2]), (&[2], &[1, 1]), (&[1, 1], &[1, 1])])
        );
        assert_eq!(ribbon_image(&c(&[1])), rr(&[(&[1], &[1])]));
    }

    #[test]
    fn bessel_terms() {
        let j0 = bessel_j(0, 3);
        assert_eq!(
            j0.element().coeff(&c(&[1]), &c(&[1])),
            MultiPoly::from_int(-1)
        );
        assert!(j0.element().constant_term().is_one());
        let j1 = bessel_j(1, 3);
        assert_eq!(
            j1.element().coeff(&Composition::empty(), &c(&[1])),
            MultiPoly::from_int(-1)
        );
        assert!(j1.element().constant_term().is_zero());
        let jm1 = bessel_j(-1, 2);
        assert!(jm1
            .element()
            .coeff(&c(&[1]), &Composition::empty())
            .is_one());
    }

    #[test]
    fn inversion_low_degrees() {
        let one_minus = TensorSeries::new(
            TensorElement::one(Basis::L, Basis::L).sub(&TensorElement::basis_element(
                Basis::L,
                Basis::L,
                c(&[1]),
                c(&[1]),
            )),
            1,
        );
        let inv = one_minus.invert().unwrap();
        assert!(inv
            .element()
            .bidegree_component(1, 1)
            .equals(&rr(&[(&[1], &[1])])));

        let inv = alternating_diagonal(Basis::L, 2).invert().unwrap();
        assert!(inv.element().bidegree_component(2, 2).equals(&rr(&[
            (&[2], &[2]),
            (&[2], &[1, 1]),
            (&[1, 1], &[2])
        ])));

        let inv = bessel_j(0, 1).invert().unwrap();
        let expected = TensorElement::basis_element(Basis::S, Basis::R, c(&[1]), c(&[1]));
        assert!(inv.element().bidegree_component(1, 1).equals(&expected));
    }

    #[test]
    fn non_scalar_constant_rejected() {
        let jm1 = bessel_j(-1, 2);
        assert!(matches!(jm1.invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn apply_second_examples() {
        let ll = TensorElement::basis_element(Basis::L, Basis::L, c(&[2]), c(&[2]));
        let expected = TensorElement::basis_element(Basis::L, Basis::S, c(&[2]), c(&[2]));
        assert!(ll.apply_second(SecondOp::Omega).equals(&expected));

        let t = TensorElement::basis_element(Basis::S, Basis::R, c(&[1]), c(&[2]));
        let expected = TensorElement::basis_element(Basis::S, Basis::R, c(&[1]), c(&[1]));
        assert_eq!(t.apply_second(SecondOp::Partial), expected);

        let t = TensorElement::basis_element(Basis::R, Basis::R, c(&[3]), c(&[1, 1]));
        assert!(t.apply_second(SecondOp::Partial).is_zero());
    }

    #[test]
    fn rendering() {
        let t = rr(&[(&[2], &[1, 1])]);
        assert_eq!(t.to_string(), "R[2]⊗R[1,1]");
        assert_eq!(TensorElement::one(Basis::S, Basis::S).to_string(), "1⊗1");
    }
}
