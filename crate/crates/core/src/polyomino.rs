//! Parallelogram polyominoes coded as biwords over the segment alphabet
//! `{a_ij : 1 <= i <= j}`, heaps of segments, and the area/width/height
//! generating function obtained from the θ-specialization with
//! `a_ij θ a_kl ⇔ i <= l`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{MultiPoly, Var};
use crate::theta::{
    d_operator, koszul_check, render_word, theta_basis, Relation, ThetaKind, Word, WordPoly,
};

pub type Segment = (u16, u16);

/// The letters `a_ij`, `1 <= i <= j <= max_j`, numbered in lexicographic
/// order of `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentAlphabet {
    max_j: u16,
    letters: Vec<Segment>,
}

impl SegmentAlphabet {
    pub fn new(max_j: u16) -> Result<Self> {
        let count = max_j as usize * (max_j as usize + 1) / 2;
        if count > crate::theta::MAX_LETTERS {
            return Err(Error::Bound {
                what: "segment alphabet size",
                value: count,
                cap: crate::theta::MAX_LETTERS,
            });
        }
        let letters = (1..=max_j)
            .flat_map(|i| (i..=max_j).map(move |j| (i, j)))
            .collect();
        Ok(SegmentAlphabet { max_j, letters })
    }

    pub fn max_j(&self) -> u16 {
        self.max_j
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn segment(&self, id: u8) -> Segment {
        self.letters[id as usize]
    }

    pub fn id(&self, s: Segment) -> Option<u8> {
        self.letters.iter().position(|&x| x == s).map(|p| p as u8)
    }

    /// `a_ij θ a_kl ⇔ i <= l`.
    pub fn relation(&self) -> Relation {
        Relation::from_fn(self.len(), |x, y| self.letters[x].0 <= self.letters[y].1)
            .expect("size checked at construction")
    }

    /// Ids of the letters `a_1j`.
    pub fn starting_at_one(&self) -> Vec<u8> {
        (0..self.len() as u8)
            .filter(|&x| self.segment(x).0 == 1)
            .collect()
    }

    pub fn segments(&self, w: &[u8]) -> Vec<Segment> {
        w.iter().map(|&x| self.segment(x)).collect()
    }

    /// `a_ij ↦ x y^{j-i} q^j`.
    pub fn weight(&self, id: u8) -> MultiPoly {
        let (i, j) = self.segment(id);
        let mut m = [0u16; 6];
        m[Var::X.index()] = 1;
        m[Var::Y.index()] = j - i;
        m[Var::Q.index()] = j;
        MultiPoly::term(crate::scalars::int(1), m)
    }

    /// Commutative image of a word series under [`SegmentAlphabet::weight`].
    pub fn specialize(&self, f: &WordPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (w, c) in f.terms() {
            let value = w.iter().fold(c.clone(), |acc, &x| &acc * &self.weight(x));
            acc += &value;
        }
        acc
    }
}

/// Column code `(i_1, j_1) ... (i_n, j_n)`: `j_k` is the height of column
/// `k` and `i_k` the number of rows it shares with column `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyominoCode {
    columns: Vec<Segment>,
}

impl PolyominoCode {
    pub fn new(columns: Vec<Segment>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Domain(
                "a polyomino has at least one column".to_string(),
            ));
        }
        for (k, &(i, j)) in columns.iter().enumerate() {
            if i < 1 || i > j {
                return Err(Error::Domain(format!(
                    "column {} has i = {i}, j = {j}; need 1 <= i <= j",
                    k + 1
                )));
            }
        }
        for (k, pair) in columns.windows(2).enumerate() {
            if pair[0].0 > pair[1].1 {
                return Err(Error::Domain(format!(
                    "i_{} = {} exceeds j_{} = {}",
                    k + 1,
                    pair[0].0,
                    k + 2,
                    pair[1].1
                )));
            }
        }
        let last = columns.last().expect("nonempty").0;
        if last != 1 {
            return Err(Error::Domain(format!("last column has i = {last}, need 1")));
        }
        Ok(PolyominoCode { columns })
    }

    /// Parses the two-row form `i_1...i_n/j_1...j_n` (digits, or
    /// dot-separated numbers).
    pub fn parse_biword(s: &str) -> Result<Self> {
        let (top, bottom) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("biword `{s}` needs the form top/bottom")))?;
        let row = |r: &str| -> Result<Vec<u16>> {
            let parts: Vec<&str> = if r.contains('.') {
                r.split('.').collect()
            } else {
                r.trim().split("").filter(|p| !p.is_empty()).collect()
            };
            parts
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<u16>()
                        .map_err(|_| Error::Parse(format!("bad biword entry `{p}`")))
                })
                .collect()
        };
        let (top, bottom) = (row(top)?, row(bottom)?);
        if top.len() != bottom.len() {
            return Err(Error::Parse("biword rows differ in length".to_string()));
        }
        Self::new(top.into_iter().zip(bottom).collect())
    }

    pub fn columns(&self) -> &[Segment] {
        &self.columns
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn area(&self) -> usize {
        self.columns.iter().map(|c| c.1 as usize).sum()
    }

    /// `Σ (j_k - i_k)`, the exponent of `y` under `a_ij ↦ x y^{j-i} q^j`.
    pub fn y_exponent(&self) -> usize {
        self.columns.iter().map(|c| (c.1 - c.0) as usize).sum()
    }

    /// Rows occupied by each column, bottom to top inclusive, with the first
    /// column starting at row 0.
    pub fn column_rows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.columns.len());
        let (i0, j0) = self.columns[0];
        let mut bottom = 0usize;
        let mut top = j0 as usize - 1;
        let mut overlap = i0 as usize;
        out.push((bottom, top));
        for &(i, j) in &self.columns[1..] {
            bottom = top + 1 - overlap;
            top = bottom + j as usize - 1;
            overlap = i as usize;
            out.push((bottom, top));
        }
        out
    }

    /// Cells `(column, row)`.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.column_rows()
            .iter()
            .enumerate()
            .flat_map(|(c, &(b, t))| (b..=t).map(move |r| (c, r)))
            .collect()
    }

    pub fn biword(&self) -> String {
        let top: Vec<u8> = self.columns.iter().map(|c| c.0 as u8).collect();
        let bottom: Vec<u8> = self.columns.iter().map(|c| c.1 as u8).collect();
        format!("{}/{}", render_word(&top), render_word(&bottom))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "biword": self.biword(),
            "width": self.width(),
            "area": self.area(),
            "cells": self.cells(),
        })
    }
}

impl fmt::Display for PolyominoCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.biword())
    }
}

/// A polyomino found by geometric enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyomino {
    pub code: PolyominoCode,
    pub cells: BTreeSet<(usize, usize)>,
    pub width: usize,
    pub height: usize,
    pub area: usize,
}

/// All parallelogram polyominoes with `width <= max_width` and
/// `area <= max_area`, built column by column: each column is a vertical
/// run of cells whose bottom and top are weakly above those of the previous
/// column and which shares at least one row with it.
pub fn enumerate_polyominoes(max_width: usize, max_area: usize) -> Vec<Polyomino> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<(usize, usize)>> = (1..=max_area).map(|h| vec![(0, h - 1)]).collect();
    stack.reverse();
    while let Some(cols) = stack.pop() {
        let area: usize = cols.iter().map(|(b, t)| t - b + 1).sum();
        out.push(from_columns(&cols, area));
        if cols.len() == max_width {
            continue;
        }
        let &(b0, t0) = cols.last().expect("nonempty");
        let mut children = Vec::new();
        for b in b0..=t0 {
            for t in t0.. {
                let h = t - b + 1;
                if area + h > max_area {
                    break;
                }
                let mut next = cols.clone();
                next.push((b, t));
                children.push(next);
            }
        }
        children.reverse();
        stack.extend(children);
    }
    out.sort_by(|a, b| (a.width, a.area, &a.code).cmp(&(b.width, b.area, &b.code)));
    out
}

fn from_columns(cols: &[(usize, usize)], area: usize) -> Polyomino {
    let cells: BTreeSet<(usize, usize)> = cols
        .iter()
        .enumerate()
        .flat_map(|(c, &(b, t))| (b..=t).map(move |r| (c, r)))
        .collect();
    let rows: BTreeSet<usize> = cells.iter().map(|&(_, r)| r).collect();
    let mut columns = Vec::with_capacity(cols.len());
    for (k, &(b, t)) in cols.iter().enumerate() {
        let j = (t - b + 1) as u16;
        let i = match cols.get(k + 1) {
            Some(&(b2, _)) => (t + 1 - b2) as u16,
            None => 1,
        };
        columns.push((i, j));
    }
    Polyomino {
        code: PolyominoCode::new(columns).expect("geometric columns give a valid code"),
        cells,
        width: cols.len(),
        height: rows.len(),
        area,
    }
}

/// `Σ x^{width} y^{height - offset} q^{area}` over the enumerated polyominoes.
pub fn geometric_series(polys: &[Polyomino], height_offset: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for p in polys {
        let mut m = [0u16; 6];
        m[Var::X.index()] = p.width as u16;
        m[Var::Y.index()] = (p.height - height_offset) as u16;
        m[Var::Q.index()] = p.area as u16;
        acc += &MultiPoly::term(crate::scalars::int(1), m);
    }
    acc
}

/// Truncation for the polyomino series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyominoWindow {
    pub max_width: u16,
    pub max_area: u16,
    pub max_j: u16,
}

impl PolyominoWindow {
    fn apply(&self, f: MultiPoly) -> MultiPoly {
        f.truncated(Var::X, self.max_width)
            .truncated(Var::Q, self.max_area)
            .truncated(Var::Y, self.max_area)
    }

    fn check(&self) -> Result<()> {
        if self.max_j < self.max_area {
            return Err(Error::Bound {
                what: "segment alphabet max_j below max_area",
                value: self.max_area as usize,
                cap: self.max_j as usize,
            });
        }
        Ok(())
    }
}

/// `F = Σ_{n>=1} (-1)^{n-1} Λ_n(A;θ̄)` over the segment alphabet: signed
/// strictly decreasing sequences of pairwise disjoint segments.
pub fn trivial_heap_generator(alphabet: &SegmentAlphabet) -> Result<WordPoly> {
    let bar = alphabet.relation().complement();
    let mut f = WordPoly::zero();
    for n in 1..=alphabet.max_j() as usize {
        let sign = MultiPoly::from_int(if n % 2 == 1 { 1 } else { -1 });
        f = f.add(&theta_basis(&ThetaKind::Lambda, n, &bar)?.scale(&sign));
    }
    Ok(f)
}

/// `Σ x^{width} y^{Σ(j-i)} q^{area}` from `(1 - F)^{-1} (F D)`, with
/// `D = Σ_j ∂_{a_1j} a_1j`, specialized and inverted commutatively.
pub fn series_via_bessel(window: &PolyominoWindow) -> Result<MultiPoly> {
    window.check()?;
    let alphabet = SegmentAlphabet::new(window.max_j)?;
    let f = trivial_heap_generator(&alphabet)?;
    let numerator = window.apply(alphabet.specialize(&d_operator(&f, &alphabet.starting_at_one())));
    let denominator = window.apply(MultiPoly::one() - alphabet.specialize(&f));
    let inv = window.apply(denominator).inverse()?;
    Ok(window.apply(numerator * &inv))
}

/// Width-`n` polyomino codes with letters in the alphabet: the words of
/// `Λ_n(A;θ)` ending in some `a_1j`.
pub fn polyomino_words(n: usize, alphabet: &SegmentAlphabet) -> Result<WordPoly> {
    let lambda = theta_basis(&ThetaKind::Lambda, n, &alphabet.relation())?;
    Ok(d_operator(&lambda, &alphabet.starting_at_one()))
}

/// `height - (y exponent)` on the width-one slice, where both are known in
/// closed form; errors if the slice does not fix a single offset.
pub fn height_offset(series: &MultiPoly, max_area: u16) -> Result<usize> {
    let width_one = series.coefficient_in(Var::X, 1);
    let mut offsets = BTreeSet::new();
    for h in 1..=max_area {
        let slice = width_one.coefficient_in(Var::Q, h);
        let ys: Vec<u16> = slice.terms().map(|(m, _)| m[Var::Y.index()]).collect();
        if ys.len() != 1 {
            return Err(Error::mismatch(
                "width-one slice",
                format!("{slice}"),
                "a single y power".to_string(),
            ));
        }
        offsets.insert(h as i64 - ys[0] as i64);
    }
    match offsets.into_iter().collect::<Vec<_>>()[..] {
        [o] if o >= 0 => Ok(o as usize),
        ref os => Err(Error::mismatch(
            "height offset",
            format!("{os:?}"),
            "one nonnegative offset".to_string(),
        )),
    }
}

/// A word in the heap monoid of segments.
pub type HeapWord = Vec<Segment>;

/// Segments commute when they do not overlap.
pub fn commute(a: Segment, b: Segment) -> bool {
    a.1 < b.0 || b.1 < a.0
}

/// Whether `i_k <= j_{k+1}` for every adjacent pair.
pub fn is_normal(w: &[Segment]) -> bool {
    w.windows(2).all(|p| p[0].0 <= p[1].1)
}

/// The commutation class of `w`, in lexicographic order.
pub fn heap_class(w: &[Segment]) -> Vec<HeapWord> {
    let start = w.to_vec();
    let mut seen: HashSet<HeapWord> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for k in 0..u.len().saturating_sub(1) {
            if commute(u[k], u[k + 1]) {
                let mut v = u.clone();
                v.swap(k, k + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    let mut out: Vec<HeapWord> = seen.into_iter().collect();
    out.sort();
    out
}

/// The unique member of the class with `i_k <= j_{k+1}` throughout.
pub fn heap_normal_form(w: &[Segment]) -> Result<HeapWord> {
    if let Some(s) = w.iter().find(|s| s.0 < 1 || s.0 > s.1) {
        return Err(Error::Domain(format!(
            "segment [{}, {}] is not an interval",
            s.0, s.1
        )));
    }
    let normal: Vec<HeapWord> = heap_class(w).into_iter().filter(|u| is_normal(u)).collect();
    match normal.len() {
        1 => Ok(normal.into_iter().next().expect("one element")),
        k => Err(Error::mismatch(
            "normal forms in a commutation class",
            format!("{k} for {}", render_heap(w)),
            "exactly 1".to_string(),
        )),
    }
}

pub fn render_heap(w: &[Segment]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.iter()
        .map(|(i, j)| format!("a{i},{j}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Counts for the heap bijection over all words of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapCensus {
    pub words: usize,
    pub classes: usize,
    pub normal_words: usize,
}

/// Partitions all words of length `n` over the segments with `j <= max_j`
/// into commutation classes and checks each has exactly one normal member.
pub fn heap_census(n: usize, max_j: u16) -> Result<HeapCensus> {
    let alphabet = SegmentAlphabet::new(max_j)?;
    let mut seen: HashSet<HeapWord> = HashSet::new();
    let mut census = HeapCensus {
        words: 0,
        classes: 0,
        normal_words: 0,
    };
    for w in crate::theta::all_words(alphabet.len(), n) {
        let w = alphabet.segments(&w);
        census.words += 1;
        if is_normal(&w) {
            census.normal_words += 1;
        }
        if seen.contains(&w) {
            continue;
        }
        heap_normal_form(&w)?;
        census.classes += 1;
        seen.extend(heap_class(&w));
    }
    Ok(census)
}

/// Pairwise disjoint segments listed in strictly decreasing order, with
/// `j <= max_j`, enumerated directly.
pub fn trivial_heaps(n: usize, max_j: u16) -> Vec<HeapWord> {
    fn go(n: usize, below: u16, acc: &mut HeapWord, out: &mut Vec<HeapWord>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for j in 1..below {
            for i in 1..=j {
                acc.push((i, j));
                go(n, i, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, max_j + 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Alternating convolution over the segment alphabet, and `Λ_n(A;θ̄)`
/// against the directly enumerated trivial heaps.
pub fn cartier_foata_check(n: usize, max_j: u16) -> Result<bool> {
    let alphabet = SegmentAlphabet::new(max_j)?;
    let th = alphabet.relation();
    if !koszul_check(n, &th) {
        return Ok(false);
    }
    let lambda_bar = theta_basis(&ThetaKind::Lambda, n, &th.complement())?;
    let mut from_words: Vec<HeapWord> = lambda_bar
        .terms()
        .map(|(w, _)| alphabet.segments(w))
        .collect();
    from_words.sort();
    let all_unit = lambda_bar.terms().all(|(_, c)| c.is_one());
    Ok(all_unit && from_words == trivial_heaps(n, max_j))
}

/// Converts a word of segment ids into a code, when it is one.
pub fn code_of_word(alphabet: &SegmentAlphabet, w: &Word) -> Result<PolyominoCode> {
    PolyominoCode::new(alphabet.segments(w))
}
