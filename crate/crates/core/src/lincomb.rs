//! Sparse linear combinations with [`MultiPoly`] coefficients.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use crate::scalars::MultiPoly;

/// Finite sum `Σ c_k · k` over an ordered key type. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, MultiPoly>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: MultiPoly) -> Self {
        let mut out = Self::new();
        out.add(key, &coeff);
        out
    }

    pub fn add(&mut self, key: K, coeff: &MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `n · coeff` for a small integer multiplier.
    pub fn add_scaled(&mut self, key: K, coeff: &MultiPoly, n: i64) {
        match n {
            0 => {}
            1 => self.add(key, coeff),
            _ => self.add(key, &coeff.scale_int(n)),
        }
    }

    pub fn add_all(&mut self, other: &LinComb<K>) {
        for (k, c) in &other.terms {
            self.add(k.clone(), c);
        }
    }

    pub fn sub_all(&mut self, other: &LinComb<K>) {
        for (k, c) in &other.terms {
            self.add(k.clone(), &-c);
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.add(k.clone(), &(v * c));
        }
        out
    }

    pub fn coeff(&self, key: &K) -> MultiPoly {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn get(&self, key: &K) -> Option<&MultiPoly> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, MultiPoly> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn retain(&mut self, mut f: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| f(k));
    }

    /// Linear map on keys: `key ↦ Σ (key', n)` with integer multiplicities.
    pub fn map_linear<K2: Ord + Clone, I>(&self, mut f: impl FnMut(&K) -> I) -> LinComb<K2>
    where
        I: IntoIterator<Item = (K2, i64)>,
    {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            for (k2, n) in f(k) {
                out.add_scaled(k2, c, n);
            }
        }
        out
    }

    /// Bilinear extension of `f` on pairs of keys.
    pub fn bilinear<K2: Ord + Clone, K3: Ord + Clone, I>(
        &self,
        other: &LinComb<K2>,
        mut f: impl FnMut(&K, &K2) -> I,
    ) -> LinComb<K3>
    where
        I: IntoIterator<Item = (K3, i64)>,
    {
        let mut out = LinComb::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = ca * cb;
                for (k, n) in f(a, b) {
                    out.add_scaled(k, &prod, n);
                }
            }
        }
        out
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&MultiPoly) -> MultiPoly) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.terms {
            out.add(k.clone(), &f(c));
        }
        out
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, MultiPoly);
    type IntoIter = btree_map::IntoIter<K, MultiPoly>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a MultiPoly);
    type IntoIter = btree_map::Iter<'a, K, MultiPoly>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, MultiPoly)> for LinComb<K> {
    fn from_iter<T: IntoIterator<Item = (K, MultiPoly)>>(iter: T) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.add(k, &c);
        }
        out
    }
}

/// Renders `c·label` terms joined by ` + `, parenthesising compound
/// coefficients.
pub(crate) fn render_terms<'a, K: Ord + 'a>(
    terms: impl Iterator<Item = (&'a K, &'a MultiPoly)>,
    label: impl Fn(&K) -> String,
) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        let l = label(k);
        let (neg, body) = if c.is_one() {
            (false, l)
        } else if (-c).is_one() {
            (true, l)
        } else if c.is_compound() {
            (false, format!("({c})·{l}"))
        } else {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, format!("{rest}·{l}")),
                None => (false, format!("{s}·{l}")),
            }
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
