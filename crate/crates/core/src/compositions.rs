//! Compositions, descent sets and descent statistics of permutations.
//!
//! A composition `I ⊨ n` is stored through its descent set: bit `d - 1` of the
//! mask is set when `d ∈ Des(I)`. The derived ordering (degree first, then the
//! mask as an unsigned integer) is the canonical ordering used by every table
//! and rendering in the crate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::factorial;

/// Largest supported degree; descent masks are 64-bit.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    n: u32,
    des: u64,
}

/// Lattice operation on descent sets of a fixed degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentOp {
    /// Intersection of descent sets.
    Meet,
    /// Union of descent sets.
    Join,
    /// Set difference `Des(H) \ Des(K)`.
    Diff,
}

fn full_mask(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        (1u64 << (n - 1)) - 1
    }
}

impl Composition {
    pub fn empty() -> Self {
        Composition { n: 0, des: 0 }
    }

    /// The one-part composition `(n)`.
    pub fn row(n: usize) -> Self {
        Composition {
            n: n as u32,
            des: 0,
        }
    }

    /// The composition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Composition {
            n: n as u32,
            des: full_mask(n),
        }
    }

    pub fn new(parts: &[usize]) -> Result<Self> {
        let mut n = 0usize;
        let mut des = 0u64;
        for (k, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(Error::Domain(format!("zero part in composition {parts:?}")));
            }
            if k > 0 {
                des |= 1 << (n - 1);
            }
            n += p;
            if n > MAX_DEGREE {
                return Err(Error::Bound {
                    what: "composition degree",
                    value: n,
                    cap: MAX_DEGREE,
                });
            }
        }
        Ok(Composition { n: n as u32, des })
    }

    /// The composition of `n` whose descent set is `d`.
    pub fn from_descents(d: &[usize], n: usize) -> Result<Self> {
        if n > MAX_DEGREE {
            return Err(Error::Bound {
                what: "composition degree",
                value: n,
                cap: MAX_DEGREE,
            });
        }
        let mut des = 0u64;
        for &x in d {
            if x == 0 || x >= n {
                return Err(Error::Domain(format!(
                    "descent {x} outside 1..{} for degree {n}",
                    n.saturating_sub(1)
                )));
            }
            des |= 1 << (x - 1);
        }
        Ok(Composition { n: n as u32, des })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MAX_DEGREE || mask & !full_mask(n) != 0 {
            return Err(Error::Domain(format!(
                "mask {mask:#b} invalid for degree {n}"
            )));
        }
        Ok(Composition {
            n: n as u32,
            des: mask,
        })
    }

    pub(crate) fn from_mask_unchecked(n: usize, mask: u64) -> Self {
        debug_assert!(mask & !full_mask(n) == 0);
        Composition {
            n: n as u32,
            des: mask,
        }
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn descent_mask(&self) -> u64 {
        self.des
    }

    /// Number of parts, `l(I)`; zero for the empty composition.
    pub fn length(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.des.count_ones() as usize + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..self.degree())
            .filter(|d| self.des >> (d - 1) & 1 == 1)
            .collect()
    }

    pub fn parts(&self) -> Vec<usize> {
        let mut parts = Vec::with_capacity(self.length());
        let mut last = 0;
        for d in self.descents() {
            parts.push(d - last);
            last = d;
        }
        if self.n > 0 {
            parts.push(self.degree() - last);
        }
        parts
    }

    pub fn last_part(&self) -> Option<usize> {
        self.parts().last().copied()
    }

    pub fn descent_op(&self, other: &Composition, op: DescentOp) -> Result<Composition> {
        if self.n != other.n {
            return Err(Error::Degree {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let des = match op {
            DescentOp::Meet => self.des & other.des,
            DescentOp::Join => self.des | other.des,
            DescentOp::Diff => self.des & !other.des,
        };
        Ok(Composition { n: self.n, des })
    }

    /// `Ī`: descent set complemented inside `{1, ..., n-1}`.
    pub fn complement(&self) -> Composition {
        Composition {
            n: self.n,
            des: full_mask(self.degree()) & !self.des,
        }
    }

    /// Parts read backwards.
    pub fn reverse(&self) -> Composition {
        let n = self.degree();
        let mut des = 0;
        for d in self.descents() {
            des |= 1 << (n - d - 1);
        }
        Composition { n: self.n, des }
    }

    /// Conjugate composition `I~`, with `Des(I~) = { n - d : d ∉ Des(I) }`.
    pub fn conjugate(&self) -> Composition {
        self.complement().reverse()
    }

    /// Concatenation `I·J`.
    pub fn concat(&self, other: &Composition) -> Composition {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.degree();
        Composition {
            n: self.n + other.n,
            des: self.des | (1 << (n - 1)) | (other.des << n),
        }
    }

    /// `I ▷ J`: concatenation with the last part of `I` merged into the first
    /// part of `J`. Undefined when either side is empty.
    pub fn merge(&self, other: &Composition) -> Option<Composition> {
        if self.n == 0 || other.n == 0 {
            return None;
        }
        Some(Composition {
            n: self.n + other.n,
            des: self.des | (other.des << self.degree()),
        })
    }

    /// Whether `Des(self) ⊆ Des(other)`, i.e. `other` refines `self`.
    pub fn is_coarser_than(&self, other: &Composition) -> bool {
        self.n == other.n && self.des & !other.des == 0
    }

    /// Sum of the descent positions.
    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    /// All compositions of `n` in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = Composition> {
        let count: u64 = if n == 0 { 1 } else { 1 << (n - 1) };
        (0..count).map(move |m| Composition {
            n: n as u32,
            des: m,
        })
    }

    /// Compositions whose descent set lies inside `Des(self)`, canonical order.
    pub fn coarsenings(&self) -> impl Iterator<Item = Composition> {
        let n = self.n;
        submasks(self.des).map(move |m| Composition { n, des: m })
    }

    /// Compositions whose descent set contains `Des(self)`, canonical order.
    pub fn refinements(&self) -> impl Iterator<Item = Composition> {
        let n = self.n;
        let base = self.des;
        let free = full_mask(self.degree()) & !base;
        submasks(free).map(move |m| Composition { n, des: base | m })
    }

    /// Bracketed rendering used inside basis labels, e.g. `[2,1]`.
    pub fn label(&self) -> String {
        format!("[{self}]")
    }
}

/// All submasks of `mask`, in increasing numeric order.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses comma-separated parts such as `2,1`; brackets are optional and
    /// the empty string (or `[]`) is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if s.is_empty() || s == "0" {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(&parts)
    }
}

/// Descent mask of a sequence: bit `i - 1` set when `w_i > w_{i+1}`.
pub fn descent_mask_of<T: Ord>(w: &[T]) -> u64 {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Descent composition of a word over a totally ordered alphabet.
pub fn descent_composition<T: Ord>(w: &[T]) -> Composition {
    Composition::from_mask_unchecked(w.len(), descent_mask_of(w))
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn descent_mask(&self) -> u64 {
        descent_mask_of(&self.images)
    }

    pub fn descent_composition(&self) -> Composition {
        descent_composition(&self.images)
    }

    /// Number of descents.
    pub fn des(&self) -> usize {
        self.descent_mask().count_ones() as usize
    }

    /// `coimaj(σ) = Σ_{d ∈ Des(σ⁻¹)} (n - d)`.
    pub fn coimaj(&self) -> usize {
        let n = self.len();
        self.inverse()
            .descent_composition()
            .descents()
            .iter()
            .map(|d| n - d)
            .sum()
    }

    /// All permutations of `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((1..=n).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            if next_permutation(&mut succ) {
                next = Some(succ);
            }
            Some(Permutation { images: cur })
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.images.iter().any(|&x| x > 9) {
            " "
        } else {
            ""
        };
        let s: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(sep))
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Ribbon number `β_I`, the number of permutations with descent composition
/// `I`, by inclusion–exclusion over multinomial coefficients.
pub fn ribbon_number(i: &Composition) -> BigInt {
    let n = i.degree();
    let nfact = factorial(n);
    let top = i.descent_mask().count_ones();
    let mut total = BigInt::zero();
    for j in i.coarsenings() {
        let denom = j
            .parts()
            .iter()
            .fold(BigInt::from(1), |acc, &p| acc * factorial(p));
        let term = &nfact / denom;
        if (top - j.descent_mask().count_ones()).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Hard cap for factorial-sized permutation enumerations.
pub const BRUTE_FORCE_CAP: usize = 8;

/// Ribbon number by enumerating `S_n`.
pub fn ribbon_number_brute(i: &Composition) -> Result<u64> {
    let n = i.degree();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Bound {
            what: "permutation degree",
            value: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    Ok(Permutation::all(n)
        .filter(|s| s.descent_mask() == i.descent_mask())
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts).unwrap()
    }

    #[test]
    fn from_descents_examples() {
        assert_eq!(Composition::from_descents(&[], 3).unwrap(), c(&[3]));
        assert_eq!(
            Composition::from_descents(&[1, 2], 3).unwrap(),
            c(&[1, 1, 1])
        );
        assert_eq!(Composition::from_descents(&[2], 3).unwrap(), c(&[2, 1]));
        assert!(matches!(
            Composition::from_descents(&[3], 3),
            Err(Error::Domain(_))
        ));
        assert!(Composition::from_descents(&[0], 3).is_err());
    }

    #[test]
    fn descent_ops() {
        let h = c(&[2, 1]);
        let k = c(&[1, 2]);
        assert_eq!(h.descent_op(&k, DescentOp::Meet).unwrap(), c(&[3]));
        assert_eq!(h.descent_op(&k, DescentOp::Join).unwrap(), c(&[1, 1, 1]));
        assert_eq!(h.descent_op(&h, DescentOp::Diff).unwrap(), c(&[3]));
        assert!(matches!(
            h.descent_op(&c(&[2]), DescentOp::Meet),
            Err(Error::Degree { left: 3, right: 2 })
        ));
        let e = Composition::empty();
        assert_eq!(e.descent_op(&e, DescentOp::Join).unwrap(), e);
    }

    #[test]
    fn complement_and_conjugate() {
        assert_eq!(c(&[3]).complement(), c(&[1, 1, 1]));
        assert_eq!(c(&[4]).conjugate(), c(&[1, 1, 1, 1]));
        assert_eq!(c(&[2, 1]).conjugate(), c(&[2, 1]));
        assert_eq!(c(&[1, 3]).conjugate(), c(&[1, 1, 2]));
        assert_eq!(Composition::empty().conjugate(), Composition::empty());
    }

    #[test]
    fn descent_compositions_of_sequences() {
        let p = Permutation::new(vec![1, 3, 2]).unwrap();
        assert_eq!(p.descent_composition(), c(&[2, 1]));
        assert_eq!(Permutation::identity(5).descent_composition(), c(&[5]));
        assert_eq!(descent_composition(&[2, 2, 1]), c(&[2, 1]));
    }

    #[test]
    fn ribbon_numbers() {
        assert_eq!(ribbon_number(&c(&[4])), BigInt::from(1));
        assert_eq!(ribbon_number(&c(&[1, 1, 1, 1])), BigInt::from(1));
        assert_eq!(ribbon_number(&c(&[2, 1])), BigInt::from(2));
        assert_eq!(ribbon_number_brute(&c(&[2, 1])).unwrap(), 2);
        assert!(ribbon_number_brute(&Composition::row(9)).is_err());
    }

    #[test]
    fn maj_and_coimaj() {
        assert_eq!(c(&[3]).maj(), 0);
        assert_eq!(c(&[1, 2]).maj(), 1);
        assert_eq!(Permutation::identity(4).coimaj(), 0);
        // σ = 21: σ⁻¹ = 21, Des = {1}, coimaj = 2 - 1.
        assert_eq!(Permutation::new(vec![2, 1]).unwrap().coimaj(), 1);
    }

    #[test]
    fn parsing_and_display() {
        let i: Composition = "2,1".parse().unwrap();
        assert_eq!(i, c(&[2, 1]));
        assert_eq!(i.to_string(), "2,1");
        assert_eq!(i.label(), "[2,1]");
        assert_eq!("[]".parse::<Composition>().unwrap(), Composition::empty());
        assert!("2,0".parse::<Composition>().is_err());
        assert!("2,x".parse::<Composition>().is_err());
    }

    #[test]
    fn canonical_order() {
        let order: Vec<String> = Composition::all(3).map(|i| i.to_string()).collect();
        assert_eq!(order, vec!["3", "1,2", "2,1", "1,1,1"]);
    }

    #[test]
    fn concat_and_merge() {
        assert_eq!(c(&[2]).concat(&c(&[1, 3])), c(&[2, 1, 3]));
        assert_eq!(c(&[2]).merge(&c(&[1, 3])).unwrap(), c(&[3, 3]));
        assert_eq!(Composition::empty().concat(&c(&[2])), c(&[2]));
        assert!(Composition::empty().merge(&c(&[2])).is_none());
    }

    #[test]
    fn permutations_enumerated_in_order() {
        let all: Vec<String> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(all, vec!["123", "132", "213", "231", "312", "321"]);
        assert_eq!(Permutation::all(0).count(), 1);
        assert!(Permutation::new(vec![1, 1]).is_err());
    }
}
