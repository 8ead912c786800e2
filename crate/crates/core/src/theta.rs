//! θ-specializations: noncommutative symmetric functions realized in the
//! free algebra on a finite alphabet `{0, ..., m-1}` carrying an arbitrary
//! binary relation θ.
//!
//! `Λ_n(A;θ)` sums the length-`n` words whose adjacent letters are all
//! θ-related, `S_n(A;θ) = Λ_n(A;θ̄)`, and `R_I(A;θ)` sums the words whose
//! θ-adjacency set is exactly `Des(I)`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::scalars::{factorial, MultiPoly, Rational, Var};

pub type Word = Vec<u8>;

/// Largest alphabet handled by the word algebra.
pub const MAX_LETTERS: usize = 255;

/// A binary relation on `{0, ..., m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    m: usize,
    rel: Vec<bool>,
}

impl Relation {
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if m > MAX_LETTERS {
            return Err(Error::Bound {
                what: "alphabet size",
                value: m,
                cap: MAX_LETTERS,
            });
        }
        let mut rel = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                rel.push(f(a, b));
            }
        }
        Ok(Relation { m, rel })
    }

    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self> {
        let m = matrix.len();
        if matrix.iter().any(|row| row.len() != m) {
            return Err(Error::Domain("relation matrix is not square".to_string()));
        }
        Self::from_fn(m, |a, b| matrix[a][b])
    }

    /// `a θ b ⇔ a > b`.
    pub fn gt(m: usize) -> Self {
        Self::from_fn(m, |a, b| a > b).expect("size checked by caller")
    }

    pub fn geq(m: usize) -> Self {
        Self::from_fn(m, |a, b| a >= b).expect("size checked by caller")
    }

    pub fn eq(m: usize) -> Self {
        Self::from_fn(m, |a, b| a == b).expect("size checked by caller")
    }

    /// Each pair related independently with probability 1/2.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let rel = (0..m * m).map(|_| rng.gen_bool(0.5)).collect();
        Relation { m, rel }
    }

    /// [`Relation::random`] driven by a ChaCha stream with the given seed.
    pub fn seeded(m: usize, seed: u64) -> Self {
        Self::random(m, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn related(&self, a: u8, b: u8) -> bool {
        self.rel[a as usize * self.m + b as usize]
    }

    /// `θ̄ = (A × A) \ θ`.
    pub fn complement(&self) -> Relation {
        Relation {
            m: self.m,
            rel: self.rel.iter().map(|r| !r).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<bool>> = (0..self.m)
            .map(|a| self.rel[a * self.m..(a + 1) * self.m].to_vec())
            .collect();
        serde_json::json!(rows)
    }

    /// Parses a square matrix of booleans (or 0/1).
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("relation must be a square array of booleans".to_string());
        let rows = v.as_array().ok_or_else(bad)?;
        let mut matrix = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(bad)?;
            let parsed = row
                .iter()
                .map(|x| match x {
                    serde_json::Value::Bool(b) => Ok(*b),
                    serde_json::Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
                    serde_json::Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<bool>>>()?;
            matrix.push(parsed);
        }
        Self::from_matrix(&matrix)
    }
}

/// Bitmask of positions `i` (bit `i - 1`) with `w_i θ w_{i+1}`.
pub fn theta_adjacency_mask(w: &[u8], th: &Relation) -> u64 {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| th.related(p[0], p[1]))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

pub fn theta_adj(w: &[u8], th: &Relation) -> usize {
    theta_adjacency_mask(w, th).count_ones() as usize
}

/// Sum of the θ-adjacent positions.
pub fn theta_maj_of(w: &[u8], th: &Relation) -> usize {
    let mask = theta_adjacency_mask(w, th);
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum()
}

/// All words of length `n` over `{0, ..., m-1}`, in lexicographic order.
pub fn all_words(m: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = if m == 0 && n > 0 { 0 } else { m.pow(n as u32) };
    (0..total).map(move |mut k| {
        let mut w = vec![0u8; n];
        for slot in w.iter_mut().rev() {
            *slot = (k % m) as u8;
            k /= m;
        }
        w
    })
}

/// Words with a constraint between consecutive letters, by extension.
fn chained_words(m: usize, n: usize, ok: impl Fn(u8, u8) -> bool) -> Vec<Word> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut words: Vec<Word> = (0..m as u8).map(|a| vec![a]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for w in &words {
            let last = *w.last().expect("nonempty");
            for b in 0..m as u8 {
                if ok(last, b) {
                    let mut w2 = w.clone();
                    w2.push(b);
                    next.push(w2);
                }
            }
        }
        words = next;
    }
    words
}

/// Element of the free algebra `K⟨A⟩` with polynomial coefficients,
/// optionally truncated at a maximal word length.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Word, MultiPoly>,
    max_len: Option<usize>,
}

impl WordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, MultiPoly::one())
    }

    pub fn term(w: Word, c: MultiPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Self {
        let mut out = Self::zero();
        for w in words {
            out.add_term(w, &MultiPoly::one());
        }
        out
    }

    /// Restricts to words of length `<= max_len`.
    pub fn with_max_len(mut self, max_len: usize) -> Self {
        let bound = self.max_len.map_or(max_len, |l| l.min(max_len));
        self.max_len = Some(bound);
        self.terms.retain(|w, _| w.len() <= bound);
        self
    }

    pub fn max_len(&self) -> Option<usize> {
        self.max_len
    }

    pub fn add_term(&mut self, w: Word, c: &MultiPoly) {
        if c.is_zero() || self.max_len.is_some_and(|l| w.len() > l) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> MultiPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn joint_len(&self, other: &WordPoly) -> Option<usize> {
        match (self.max_len, other.max_len) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        out.max_len = self.joint_len(other);
        if let Some(l) = out.max_len {
            out.terms.retain(|w, _| w.len() <= l);
        }
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &WordPoly) -> WordPoly {
        self.add(&other.scale(&MultiPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &MultiPoly) -> WordPoly {
        let mut out = WordPoly {
            terms: BTreeMap::new(),
            max_len: self.max_len,
        };
        for (w, d) in &self.terms {
            out.add_term(w.clone(), &(d * c));
        }
        out
    }

    /// Concatenation product.
    pub fn multiply(&self, other: &WordPoly) -> WordPoly {
        let mut out = WordPoly {
            terms: BTreeMap::new(),
            max_len: self.joint_len(other),
        };
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if out.max_len.is_some_and(|l| u.len() + v.len() > l) {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// Terms of word length exactly `n`.
    pub fn component(&self, n: usize) -> WordPoly {
        let mut out = self.clone();
        out.terms.retain(|w, _| w.len() == n);
        out
    }

    pub fn constant_term(&self) -> MultiPoly {
        self.coeff(&[])
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&MultiPoly) -> MultiPoly) -> WordPoly {
        let mut out = WordPoly {
            terms: BTreeMap::new(),
            max_len: self.max_len,
        };
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    /// Inverse up to the length bound, which must be set. The constant term
    /// must be invertible.
    pub fn invert(&self) -> Result<WordPoly> {
        let max = self.max_len.ok_or_else(|| {
            Error::NotInvertible("word series needs a length bound to be inverted".to_string())
        })?;
        let c = self.constant_term();
        let cinv = c
            .inverse()
            .map_err(|_| Error::NotInvertible(format!("constant term {c} is not a unit")))?;
        let minus_cinv = -&cinv;
        let comps: Vec<WordPoly> = (0..=max).map(|k| self.component(k)).collect();
        let mut inv = vec![WordPoly::term(Vec::new(), cinv).with_max_len(max)];
        for l in 1..=max {
            let mut acc = WordPoly::zero().with_max_len(max);
            for k in 1..=l {
                if comps[k].is_zero() || inv[l - k].is_zero() {
                    continue;
                }
                acc = acc.add(&comps[k].multiply(&inv[l - k]));
            }
            inv.push(acc.scale(&minus_cinv));
        }
        Ok(inv
            .iter()
            .fold(WordPoly::zero().with_max_len(max), |acc, g| acc.add(g)))
    }

    /// Coefficientwise comparison inside the coefficients' truncation windows.
    pub fn eq_within(&self, other: &WordPoly) -> bool {
        let zero = MultiPoly::zero();
        let keys: std::collections::BTreeSet<&Word> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|w| {
            let a = self.terms.get(w).unwrap_or(&zero);
            let b = other.terms.get(w).unwrap_or(&zero);
            a.eq_within(b)
        })
    }

    /// Terms in (length, lexicographic) order.
    pub fn sorted_terms(&self) -> Vec<(&Word, &MultiPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (w, c) in self.sorted_terms() {
            map.insert(render_word(w), c.to_json());
        }
        serde_json::Value::Object(map)
    }
}

/// Letters as digits, dot-separated once any letter exceeds 9; `ε` for the
/// empty word.
pub fn render_word(w: &[u8]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    let parts: Vec<String> = w.iter().map(|a| a.to_string()).collect();
    if w.iter().all(|&a| a < 10) {
        parts.concat()
    } else {
        parts.join(".")
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in terms.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{}", render_word(w))?;
            } else if !c.is_compound() {
                write!(f, "{c}·{}", render_word(w))?;
            } else {
                write!(f, "({c})·{}", render_word(w))?;
            }
        }
        Ok(())
    }
}

/// Which θ-basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaKind {
    Lambda,
    Complete,
    Ribbon(Composition),
}

/// `Λ_n(A;θ)`, `S_n(A;θ)` or `R_I(A;θ)` over the alphabet of `th`.
pub fn theta_basis(kind: &ThetaKind, n: usize, th: &Relation) -> Result<WordPoly> {
    let m = th.size();
    Ok(match kind {
        ThetaKind::Lambda => WordPoly::from_words(chained_words(m, n, |a, b| th.related(a, b))),
        ThetaKind::Complete => WordPoly::from_words(chained_words(m, n, |a, b| !th.related(a, b))),
        ThetaKind::Ribbon(i) => {
            if i.degree() != n {
                return Err(Error::Degree {
                    left: i.degree(),
                    right: n,
                });
            }
            let target = i.descent_mask();
            WordPoly::from_words(all_words(m, n).filter(|w| theta_adjacency_mask(w, th) == target))
        }
    })
}

fn sign(k: usize) -> MultiPoly {
    MultiPoly::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// `Σ_{k=0}^{n} (-1)^k Λ_k(A;θ) Λ_{n-k}(A;θ̄)`.
pub fn koszul_convolution(n: usize, th: &Relation) -> WordPoly {
    let bar = th.complement();
    let m = th.size();
    let mut acc = WordPoly::zero();
    for k in 0..=n {
        let left = WordPoly::from_words(chained_words(m, k, |a, b| th.related(a, b)));
        let right = WordPoly::from_words(chained_words(m, n - k, |a, b| bar.related(a, b)));
        acc = acc.add(&left.multiply(&right).scale(&sign(k)));
    }
    acc
}

/// Whether the alternating convolution vanishes.
pub fn koszul_check(n: usize, th: &Relation) -> bool {
    koszul_convolution(n, th).is_zero()
}

fn t_minus_one_pow(k: usize) -> MultiPoly {
    (MultiPoly::var(Var::T) - MultiPoly::one()).pow(k as u32)
}

/// `F = Σ_{w ∈ X⁺, |w| <= n} (t-1)^{|w|-1} w`, with `X` the θ-chained words.
pub fn eulerian_generator(n: usize, th: &Relation) -> WordPoly {
    let mut f = WordPoly::zero().with_max_len(n);
    for l in 1..=n {
        let lambda = WordPoly::from_words(chained_words(th.size(), l, |a, b| th.related(a, b)));
        f = f.add(&lambda.scale(&t_minus_one_pow(l - 1)));
    }
    f
}

/// `Σ_{w ∈ A^n} t^{θadj(w)} w` by enumeration.
pub fn theta_eulerian_enumerated(n: usize, th: &Relation) -> WordPoly {
    let mut out = WordPoly::zero();
    for w in all_words(th.size(), n) {
        let k = theta_adj(&w, th) as u16;
        out.add_term(w, &MultiPoly::var_pow(Var::T, k));
    }
    out
}

/// Length-`n` part of `(1 - F)^{-1}`.
pub fn theta_eulerian_closed(n: usize, th: &Relation) -> Result<WordPoly> {
    let f = eulerian_generator(n, th);
    Ok(WordPoly::one()
        .with_max_len(n)
        .sub(&f)
        .invert()?
        .component(n))
}

fn ensure_equal(what: &str, a: &WordPoly, b: &WordPoly) -> Result<()> {
    if a.eq_within(b) {
        Ok(())
    } else {
        Err(Error::mismatch(what, a.to_string(), b.to_string()))
    }
}

/// θ-Eulerian polynomial of length `n`, computed by enumeration and by the
/// inversion formula; errors if they differ.
pub fn theta_eulerian(n: usize, th: &Relation) -> Result<WordPoly> {
    let lhs = theta_eulerian_enumerated(n, th);
    let rhs = theta_eulerian_closed(n, th)?;
    ensure_equal("θ-Eulerian polynomial", &lhs, &rhs)?;
    Ok(lhs)
}

/// `w ∂_c = u` if `w = uc`, and `0` otherwise.
pub fn word_partial(f: &WordPoly, c: u8) -> WordPoly {
    let mut out = WordPoly::zero();
    out.max_len = f.max_len;
    for (w, coeff) in f.terms() {
        if w.last() == Some(&c) {
            out.add_term(w[..w.len() - 1].to_vec(), coeff);
        }
    }
    out
}

/// `D_C = Σ_{c ∈ C} ∂_c · c`: keeps the words ending in a letter of `C`.
pub fn d_operator(f: &WordPoly, letters: &[u8]) -> WordPoly {
    let mut out = WordPoly::zero();
    out.max_len = f.max_len;
    for (w, coeff) in f.terms() {
        if w.last().is_some_and(|a| letters.contains(a)) {
            out.add_term(w.clone(), coeff);
        }
    }
    out
}

/// `Σ_{w ∈ A^{n-1} C} t^{θadj(w)} w` by enumeration.
pub fn ending_eulerian_enumerated(n: usize, th: &Relation, letters: &[u8]) -> WordPoly {
    d_operator(&theta_eulerian_enumerated(n, th), letters)
}

/// Length-`n` part of `(1 - F)^{-1} (F D_C)`.
pub fn ending_eulerian_closed(n: usize, th: &Relation, letters: &[u8]) -> Result<WordPoly> {
    let f = eulerian_generator(n, th);
    let inv = WordPoly::one().with_max_len(n).sub(&f).invert()?;
    Ok(inv.multiply(&d_operator(&f, letters)).component(n))
}

/// Enumeration and closed form for words ending in `letters`.
pub fn ending_eulerian(n: usize, th: &Relation, letters: &[u8]) -> Result<WordPoly> {
    let lhs = ending_eulerian_enumerated(n, th, letters);
    let rhs = ending_eulerian_closed(n, th, letters)?;
    ensure_equal("θ-Eulerian polynomial of words ending in C", &lhs, &rhs)?;
    Ok(lhs)
}

/// Order of the factors `σ_{zq^k}` in the infinite product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductOrder {
    /// `σ_z σ_{zq} σ_{zq²} ⋯`: yields the co-major weighting `Σ (n - i)`.
    Increasing,
    /// `⋯ σ_{zq²} σ_{zq} σ_z`: yields `θmaj`.
    Decreasing,
}

/// `Σ_{i ∈ θAdj(w)} (n - i)`.
pub fn theta_comaj_of(w: &[u8], th: &Relation) -> usize {
    let mask = theta_adjacency_mask(w, th);
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| w.len() - i - 1)
        .sum()
}

fn q_weighted_words(
    n: usize,
    th: &Relation,
    qtrunc: u16,
    stat: fn(&[u8], &Relation) -> usize,
) -> WordPoly {
    let mut out = WordPoly::zero();
    for w in all_words(th.size(), n) {
        let k = stat(&w, th) as u16;
        out.add_term(w, &MultiPoly::var_pow(Var::Q, k).truncated(Var::Q, qtrunc));
    }
    out
}

/// `Σ_{w ∈ A^n} q^{θmaj(w)} w` by enumeration.
pub fn theta_maj_enumerated(n: usize, th: &Relation, qtrunc: u16) -> WordPoly {
    q_weighted_words(n, th, qtrunc, theta_maj_of)
}

/// `Σ_{w ∈ A^n} q^{θcomaj(w)} w` by enumeration.
pub fn theta_comaj_enumerated(n: usize, th: &Relation, qtrunc: u16) -> WordPoly {
    q_weighted_words(n, th, qtrunc, theta_comaj_of)
}

/// `Σ_{I ⊨ n} q^{maj(I)} R_I(A;θ)`.
pub fn theta_maj_by_ribbons(n: usize, th: &Relation, qtrunc: u16) -> Result<WordPoly> {
    let mut out = WordPoly::zero();
    for i in Composition::all(n) {
        let r = theta_basis(&ThetaKind::Ribbon(i), n, th)?;
        let q = MultiPoly::var_pow(Var::Q, i.maj() as u16).truncated(Var::Q, qtrunc);
        out = out.add(&r.scale(&q));
    }
    Ok(out)
}

/// `(q;q)_n` times the `z^n` part of the product of `σ_{zq^k}(A;θ)` for
/// `k = 0..=qtrunc+1`, multiplied in the given order.
pub fn theta_maj_product(n: usize, th: &Relation, qtrunc: u16, order: ProductOrder) -> WordPoly {
    let m = th.size();
    let bar = th.complement();
    let complete: Vec<WordPoly> = (0..=n)
        .map(|l| WordPoly::from_words(chained_words(m, l, |a, b| bar.related(a, b))))
        .collect();
    let window = MultiPoly::one().truncated(Var::Q, qtrunc);
    let factor = |k: usize| {
        let mut f = WordPoly::zero().with_max_len(n);
        for (l, s) in complete.iter().enumerate() {
            let e = k * l;
            if e > qtrunc as usize {
                break;
            }
            f = f.add(&s.scale(&MultiPoly::var_pow(Var::Q, e as u16)));
        }
        f
    };
    let mut ks: Vec<usize> = (0..=qtrunc as usize + 1).collect();
    if order == ProductOrder::Decreasing {
        ks.reverse();
    }
    let mut prod = WordPoly::term(Vec::new(), window).with_max_len(n);
    for k in ks {
        prod = prod.multiply(&factor(k));
    }
    let q = MultiPoly::var(Var::Q);
    let poch = MultiPoly::pochhammer(&q, Var::Q, n).truncated(Var::Q, qtrunc);
    prod.component(n).scale(&poch)
}

/// θ-major index generating polynomial, checked against the ribbon
/// expansion and against the `(q;q)_n`-scaled product in decreasing order.
pub fn theta_maj(n: usize, th: &Relation, qtrunc: u16) -> Result<WordPoly> {
    let lhs = theta_maj_enumerated(n, th, qtrunc);
    let ribbons = theta_maj_by_ribbons(n, th, qtrunc)?;
    ensure_equal("θ-maj ribbon expansion", &lhs, &ribbons)?;
    let product = theta_maj_product(n, th, qtrunc, ProductOrder::Decreasing);
    ensure_equal("θ-maj product formula", &lhs, &product)?;
    Ok(lhs)
}

/// The increasing-order product counts `θcomaj` instead; errors if not.
pub fn theta_comaj(n: usize, th: &Relation, qtrunc: u16) -> Result<WordPoly> {
    let lhs = theta_comaj_enumerated(n, th, qtrunc);
    let product = theta_maj_product(n, th, qtrunc, ProductOrder::Increasing);
    ensure_equal("θ-comaj product formula", &lhs, &product)?;
    Ok(lhs)
}

/// The product alphabet `A × B`; the letter `(a, b)` has id `a·|B| + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiAlphabet {
    pub a: usize,
    pub b: usize,
}

impl BiAlphabet {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a * b > MAX_LETTERS {
            return Err(Error::Bound {
                what: "product alphabet size",
                value: a * b,
                cap: MAX_LETTERS,
            });
        }
        Ok(BiAlphabet { a, b })
    }

    pub fn size(&self) -> usize {
        self.a * self.b
    }

    pub fn letter(&self, a: usize, b: usize) -> u8 {
        (a * self.b + b) as u8
    }

    pub fn split(&self, x: u8) -> (u8, u8) {
        ((x as usize / self.b) as u8, (x as usize % self.b) as u8)
    }

    /// `(a, b) θ (a', b') ⇔ a > a' and b ≤ b'`.
    pub fn relation(&self) -> Relation {
        Relation::from_fn(self.size(), |x, y| {
            let (a, b) = self.split(x as u8);
            let (a2, b2) = self.split(y as u8);
            a > a2 && b <= b2
        })
        .expect("size checked at construction")
    }

    /// Top row `u` and bottom row `v` of a biword.
    pub fn rows(&self, w: &[u8]) -> (Word, Word) {
        w.iter().map(|&x| self.split(x)).unzip()
    }

    /// Two-row rendering `u/v`.
    pub fn render(&self, w: &[u8]) -> String {
        let (u, v) = self.rows(w);
        format!("{}/{}", render_word(&u), render_word(&v))
    }

    /// `Λ_k(A;>)` zipped with `S_k(B;>)`: strictly decreasing top rows over
    /// weakly increasing bottom rows.
    pub fn zipped_lambda(&self, k: usize) -> WordPoly {
        let tops = chained_words(self.a, k, |x, y| x > y);
        let bottoms = chained_words(self.b, k, |x, y| x <= y);
        let mut out = WordPoly::zero();
        for u in &tops {
            for v in &bottoms {
                let w = u
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| self.letter(a as usize, b as usize))
                    .collect();
                out.add_term(w, &MultiPoly::one());
            }
        }
        out
    }
}

/// Double θ-Eulerian polynomial of length `n`, by biword enumeration and by
/// `(1 - Σ_k (t-1)^{k-1} Λ_k(A;>) S_k(B;>))^{-1}`; also checks
/// `θAdj([u,v]) = Des(u) \ Des(v)` on every biword.
pub fn double_eulerian(n: usize, alphabet: &BiAlphabet) -> Result<WordPoly> {
    let th = alphabet.relation();
    let lhs = theta_eulerian_enumerated(n, &th);
    for w in all_words(alphabet.size(), n) {
        let (u, v) = alphabet.rows(&w);
        let expected =
            crate::compositions::descent_mask_of(&u) & !crate::compositions::descent_mask_of(&v);
        let got = theta_adjacency_mask(&w, &th);
        if got != expected {
            return Err(Error::mismatch(
                "θ-adjacency of a biword",
                format!("{} at {}", got, alphabet.render(&w)),
                format!("{expected}"),
            ));
        }
    }
    let mut f = WordPoly::zero().with_max_len(n);
    for k in 1..=n {
        f = f.add(&alphabet.zipped_lambda(k).scale(&t_minus_one_pow(k - 1)));
    }
    let rhs = WordPoly::one()
        .with_max_len(n)
        .sub(&f)
        .invert()?
        .component(n);
    ensure_equal("double θ-Eulerian polynomial", &lhs, &rhs)?;
    Ok(lhs)
}

/// `Σ_{α, β ∈ S_n} t^{|Des(α) \ Des(β)|}` by enumeration.
pub fn desris_brute(n: usize) -> Result<MultiPoly> {
    let nf = crate::compositions::BRUTE_FORCE_CAP;
    if n > nf {
        return Err(Error::Bound {
            what: "permutation degree",
            value: n,
            cap: nf,
        });
    }
    let masks: Vec<u64> = crate::compositions::Permutation::all(n)
        .map(|p| p.descent_mask())
        .collect();
    let mut counts = vec![0i64; n.max(1)];
    for &a in &masks {
        for &b in &masks {
            counts[(a & !b).count_ones() as usize] += 1;
        }
    }
    Ok(counts
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(), |acc, (k, &c)| {
            acc + &MultiPoly::var_pow(Var::T, k as u16).scale_int(c)
        }))
}

/// The same polynomial from the exponential specialization `A = B = 𝔼` of
/// the double Eulerian series, times `(n!)²`.
pub fn desris_exponential(n: usize) -> Result<MultiPoly> {
    let tensor = crate::specialize::eulerian_tensor(n)?;
    let value = crate::specialize::spec_exponential_tensor(&tensor, Var::X, Var::Y);
    let nf = Rational::from(factorial(n));
    let c = value
        .coefficient_in(Var::X, n as u16)
        .coefficient_in(Var::Y, n as u16);
    Ok(c.scale(&(&nf * &nf)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: u16) -> MultiPoly {
        MultiPoly::var_pow(Var::T, e)
    }

    #[test]
    fn basis_examples() {
        let gt = Relation::gt(2);
        let l2 = theta_basis(&ThetaKind::Lambda, 2, &gt).unwrap();
        assert_eq!(l2, WordPoly::word(vec![1, 0]));
        let s2 = theta_basis(&ThetaKind::Complete, 2, &gt).unwrap();
        assert_eq!(
            s2,
            WordPoly::from_words([vec![0, 0], vec![0, 1], vec![1, 1]])
        );
        assert_eq!(
            theta_basis(&ThetaKind::Lambda, 0, &gt).unwrap(),
            WordPoly::one()
        );
        let bad = ThetaKind::Ribbon(Composition::new(&[2]).unwrap());
        assert!(matches!(
            theta_basis(&bad, 3, &gt),
            Err(Error::Degree { .. })
        ));
    }

    #[test]
    fn koszul_examples() {
        assert!(koszul_check(1, &Relation::eq(3)));
        assert!(koszul_check(2, &Relation::gt(2)));
    }

    #[test]
    fn eulerian_examples() {
        let gt = Relation::gt(2);
        let e1 = theta_eulerian(1, &gt).unwrap();
        assert_eq!(e1, WordPoly::from_words([vec![0], vec![1]]));
        let e2 = theta_eulerian(2, &gt).unwrap();
        let mut expected = WordPoly::from_words([vec![0, 0], vec![0, 1], vec![1, 1]]);
        expected.add_term(vec![1, 0], &t(1));
        assert_eq!(e2, expected);
    }

    #[test]
    fn partial_examples() {
        let w = WordPoly::word(vec![1, 0, 2]);
        assert_eq!(word_partial(&w, 2), WordPoly::word(vec![1, 0]));
        assert!(word_partial(&w, 1).is_zero());
        assert_eq!(d_operator(&w, &[2]), w);
    }

    #[test]
    fn ending_in_c() {
        let th = Relation::gt(3);
        for n in 1..=4 {
            ending_eulerian(n, &th, &[0, 2]).unwrap();
        }
    }

    #[test]
    fn maj_examples() {
        let gt = Relation::gt(2);
        assert_eq!(theta_maj(1, &gt, 12).unwrap().len(), 2);
        let m2 = theta_maj(2, &gt, 12).unwrap();
        let m3 = theta_maj(3, &gt, 12).unwrap();
        assert_eq!(
            m3.coeff(&[0, 1, 0]),
            MultiPoly::var_pow(Var::Q, 2).truncated(Var::Q, 12)
        );
        assert_eq!(
            m2.coeff(&[1, 0]),
            MultiPoly::var(Var::Q).truncated(Var::Q, 12)
        );
        assert!(m2.coeff(&[0, 1]).is_one());
    }

    #[test]
    fn increasing_product_gives_comaj() {
        let gt = Relation::gt(2);
        let c3 = theta_comaj(3, &gt, 12).unwrap();
        assert_eq!(
            c3.coeff(&[0, 1, 0]),
            MultiPoly::var(Var::Q).truncated(Var::Q, 12)
        );
        assert!(!c3.eq_within(&theta_maj(3, &gt, 12).unwrap()));
    }

    #[test]
    fn double_eulerian_examples() {
        let ab = BiAlphabet::new(2, 2).unwrap();
        let d1 = double_eulerian(1, &ab).unwrap();
        assert_eq!(d1.len(), 4);
        let d2 = double_eulerian(2, &ab).unwrap();
        let t1: Vec<String> = d2
            .terms()
            .filter(|(_, c)| c.degree_in(Var::T) == Some(1))
            .map(|(w, _)| ab.render(w))
            .collect();
        assert_eq!(t1, ["10/00", "10/01", "10/11"]);
    }

    #[test]
    fn desris_two_ways() {
        for n in 0..=4 {
            assert_eq!(
                desris_brute(n).unwrap(),
                desris_exponential(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn relation_json_round_trip() {
        let gt = Relation::gt(3);
        assert_eq!(Relation::from_json(&gt.to_json()).unwrap(), gt);
        let v: serde_json::Value = serde_json::from_str("[[0,1],[1,0]]").unwrap();
        assert!(Relation::from_json(&v).unwrap().related(0, 1));
        let v: serde_json::Value = serde_json::from_str("[[true],[false]]").unwrap();
        assert!(Relation::from_json(&v).is_err());
    }

    #[test]
    fn rendering() {
        let mut w = WordPoly::word(vec![1, 0]);
        w.add_term(vec![], &t(1));
        assert_eq!(w.to_string(), "t·ε + 10");
        assert_eq!(render_word(&[1, 12]), "1.12");
    }
}
