//! The identity checks behind `verify-all` and the acceptance suite.
//!
//! Every check is deterministic given [`VerifyConfig`]; randomness comes from
//! a ChaCha stream seeded by `seed` and the check number, so the outcome of a
//! check does not depend on which other checks run.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bessel::{
    alternating_diagonal, bessel_j, complete_ribbon_sum, contained_descent_sum,
    disjoint_descent_sum, gamma_meet, j_embed, ribbon_image, SecondOp, TensorElement,
};
use crate::compositions::{Composition, DescentOp, BRUTE_FORCE_CAP};
use crate::error::{Error, Result};
use crate::nsym::{Basis, NsymElement};
use crate::polyomino::{
    cartier_foata_check, enumerate_polyominoes, geometric_series, heap_census, height_offset,
    series_via_bessel, PolyominoWindow,
};
use crate::qsym::{InternalMode, QBasis, QsymElement};
use crate::scalars::MultiPoly;
use crate::specialize::{
    bessel_exponential, classical_bessel, csv_a, csv_c, fr_compare, inverse_j0, FrSeries,
    FrVariant, FrWindow,
};
use crate::theta::{
    desris_brute, desris_exponential, double_eulerian, ending_eulerian, koszul_check, theta_comaj,
    theta_eulerian, theta_maj, BiAlphabet, Relation,
};

/// Bounds and seed for the checks. Defaults reproduce the acceptance
/// criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Degree bound for the tensor identities and the permutation-pair counts.
    pub max_n: usize,
    pub bessel_order: u16,
    pub relations: usize,
    pub koszul_letters: usize,
    pub koszul_len: usize,
    pub eulerian_letters: usize,
    pub eulerian_len: usize,
    pub maj_letters: usize,
    pub maj_len: usize,
    pub maj_q_order: u16,
    pub double_letters: usize,
    pub double_len: usize,
    pub fr_n: usize,
    pub fr_window: FrWindow,
    pub poly_width: u16,
    pub poly_area: u16,
    pub heap_len: usize,
    pub heap_max_j: u16,
    pub cartier_len: usize,
    pub property_cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            max_n: 6,
            bessel_order: 12,
            relations: 50,
            koszul_letters: 4,
            koszul_len: 5,
            eulerian_letters: 3,
            eulerian_len: 5,
            maj_letters: 3,
            maj_len: 4,
            maj_q_order: 12,
            double_letters: 3,
            double_len: 4,
            fr_n: 4,
            fr_window: FrWindow::default(),
            poly_width: 4,
            poly_area: 10,
            heap_len: 5,
            heap_max_j: 4,
            cartier_len: 4,
            property_cases: 40,
        }
    }
}

impl VerifyConfig {
    /// Rejects bounds beyond the hard safety caps.
    pub fn validate(&self) -> Result<()> {
        let caps: [(&'static str, usize, usize); 5] = [
            ("max-n", self.max_n, BRUTE_FORCE_CAP),
            ("fr n", self.fr_n, 6),
            ("word length", self.koszul_len.max(self.eulerian_len), 7),
            ("heap length", self.heap_len, 6),
            (
                "alphabet size",
                self.koszul_letters.max(self.double_letters),
                6,
            ),
        ];
        for (what, value, cap) in caps {
            if value > cap {
                return Err(Error::Bound { what, value, cap });
            }
        }
        Ok(())
    }
}

/// Result of one check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type CheckFn = fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<(bool, String)>;

const CHECKS: [(u8, &str, CheckFn); 14] = [
    (1, "γ∧ is multiplicative", check_gamma_morphism),
    (2, "combinatorial inversion formula", check_inversion),
    (3, "ribbon images under j", check_ribbon_image),
    (4, "a_n: pairs with Des(σ) ⊆ Des(τ)", check_csv_a),
    (5, "c_n: pairs with β(n) = n", check_csv_c),
    (6, "classical Bessel specialization", check_classical_bessel),
    (7, "Carlitz-Koszul alternating convolution", check_koszul),
    (
        8,
        "θ-Eulerian series and words ending in C",
        check_theta_eulerian,
    ),
    (9, "θ-major index product formula", check_theta_maj),
    (10, "double θ-Eulerian polynomials", check_double_eulerian),
    (11, "five-parameter double Eulerian series", check_fr_series),
    (12, "parallelogram polyomino series", check_polyominoes),
    (13, "heaps of segments", check_heaps),
    (14, "structural property suites", check_structure),
];

/// Ids and titles of all checks, in report order.
pub fn check_list() -> Vec<(u8, &'static str)> {
    CHECKS.iter().map(|(id, title, _)| (*id, *title)).collect()
}

/// Runs a single check by number.
pub fn run_check(id: u8, config: &VerifyConfig) -> Result<CheckOutcome> {
    let (_, title, f) = CHECKS
        .iter()
        .find(|(i, _, _)| *i == id)
        .ok_or_else(|| Error::Domain(format!("no check numbered {id}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(u64::from(id)));
    let start = Instant::now();
    let (passed, detail) = match f(config, &mut rng) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Ok(CheckOutcome {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    })
}

/// Runs every check in order.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    config.validate()?;
    CHECKS
        .iter()
        .map(|(id, _, _)| run_check(*id, config))
        .collect()
}

/// Report format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

/// Renders outcomes without timings, so equal configurations give equal
/// bytes.
pub fn render_report(outcomes: &[CheckOutcome], format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Text => {
            for o in outcomes {
                let mark = if o.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "[{mark}] {:>2}. {}: {}", o.id, o.title, o.detail);
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let _ = writeln!(out, "{passed}/{} checks passed", outcomes.len());
        }
        ReportFormat::Json => {
            let items: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "id": o.id,
                        "title": o.title,
                        "passed": o.passed,
                        "detail": o.detail,
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(&items).expect("serializable");
            out.push('\n');
        }
        ReportFormat::Csv => {
            out.push_str("id,title,passed,detail\n");
            for o in outcomes {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    o.id,
                    csv_field(o.title),
                    o.passed,
                    csv_field(&o.detail)
                );
            }
        }
    }
    out
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn check_gamma_morphism(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut pairs = 0;
    for a in 1..cfg.max_n {
        for b in 1..=cfg.max_n - a {
            let f = NsymElement::complete(a);
            let g = NsymElement::complete(b);
            let lhs = gamma_meet(&f.multiply(&g));
            let rhs = gamma_meet(&f).multiply(&gamma_meet(&g));
            if !lhs.equals(&rhs) {
                return Ok((false, format!("fails for S_{a}·S_{b}")));
            }
            pairs += 1;
        }
    }
    Ok((
        true,
        format!("{pairs} pairs S_a·S_b, a + b <= {}", cfg.max_n),
    ))
}

fn check_inversion(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let plain = alternating_diagonal(Basis::L, cfg.max_n).invert()?;
    let twisted = alternating_diagonal(Basis::S, cfg.max_n).invert()?;
    let mut conjugate_fails = None;
    for n in 0..=cfg.max_n {
        let got = plain.element().bidegree_component(n, n);
        if !got.equals(&disjoint_descent_sum(n, false)) {
            return Ok((false, format!("plain formula fails at bidegree ({n},{n})")));
        }
        let got = twisted.element().bidegree_component(n, n);
        if !got.equals(&contained_descent_sum(n)) {
            return Ok((
                false,
                format!("Σ_{{Des H ⊆ Des K}} R_H⊗R_K fails at ({n},{n})"),
            ));
        }
        if conjugate_fails.is_none() && !got.equals(&disjoint_descent_sum(n, true)) {
            conjugate_fails = Some(n);
        }
    }
    let n = cfg.max_n;
    Ok(match conjugate_fails {
        None => (true, format!("plain and ω-twisted (conjugate K∼), bidegrees (n,n) for n <= {n}")),
        Some(m) => (
            false,
            format!(
                "plain formula holds for n <= {n}; ω-twisted with R_K∼ (K∼ conjugate) fails from n = {m}; \
                 the twisted inverse is Σ_{{Des H ∩ Des K = ∅}} R_H⊗R_K̄ (K̄ descent complement) for n <= {n}"
            ),
        ),
    })
}

fn check_ribbon_image(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut count = 0;
    for n in 0..=cfg.max_n {
        for k in Composition::all(n) {
            let j = j_embed(&NsymElement::ribbon(k));
            if !j.equals(&ribbon_image(&k)) {
                return Ok((false, format!("fails at K = {}", k.label())));
            }
            count += 1;
        }
    }
    let small = cfg.max_n.min(4);
    for n in 1..small {
        for i in Composition::all(n) {
            for k in Composition::all(small - n) {
                let (ri, rk) = (NsymElement::ribbon(i), NsymElement::ribbon(k));
                let lhs = j_embed(&ri.multiply(&rk));
                let rhs = j_embed(&ri).multiply(&j_embed(&rk));
                if !lhs.equals(&rhs) {
                    return Ok((
                        false,
                        format!("j not multiplicative on R{}·R{}", i.label(), k.label()),
                    ));
                }
            }
        }
    }
    Ok((
        true,
        format!(
            "{count} compositions K, n <= {}; j multiplicative in degree {small}",
            cfg.max_n
        ),
    ))
}

fn join_values(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn check_csv_a(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let values = (0..=cfg.max_n)
        .map(|n| csv_a(n, cfg.max_n))
        .collect::<Result<Vec<_>>>()?;
    let anchors =
        values.get(2) == Some(&BigInt::from(3)) && values.get(3) == Some(&BigInt::from(19));
    Ok((
        anchors,
        format!(
            "a_0..a_{} = {} (three methods agree)",
            cfg.max_n,
            join_values(&values)
        ),
    ))
}

fn check_csv_c(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let values = (1..=cfg.max_n)
        .map(|n| csv_c(n, cfg.max_n))
        .collect::<Result<Vec<_>>>()?;
    // c_2 = 1 and c_3 = 4 = 1 + 3 (β = 123 and β = 213)
    let anchors =
        values.get(1) == Some(&BigInt::from(1)) && values.get(2) == Some(&BigInt::from(4));
    let inv = inverse_j0(cfg.max_n)?;
    for n in 0..=cfg.max_n {
        let got = inv.element().bidegree_component(n, n);
        if !got.equals(&complete_ribbon_sum(n)) {
            return Ok((false, format!("J0^-1 differs from Σ S^I⊗R_I in degree {n}")));
        }
    }
    let product = inv.multiply(&bessel_j(-1, cfg.max_n));
    for n in 1..=cfg.max_n {
        let got = product.element().bidegree_component(n, n - 1);
        let want = complete_ribbon_sum(n).apply_second(SecondOp::Partial);
        if !got.equals(&want) {
            return Ok((
                false,
                format!("J0^-1·J-1 differs from Σ S^I⊗R_I∂ in degree {n}"),
            ));
        }
    }
    Ok((
        anchors,
        format!(
            "c_1..c_{} = {} (enumeration and ∂_B identity agree)",
            cfg.max_n,
            join_values(&values)
        ),
    ))
}

fn check_classical_bessel(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let order = cfg.bessel_order;
    for nu in 0..=2u32 {
        let classical = classical_bessel(nu, order);
        let sign = MultiPoly::from_int(if nu % 2 == 0 { 1 } else { -1 });
        if !bessel_exponential(i64::from(nu), order).eq_within(&(&classical * &sign)) {
            return Ok((
                false,
                format!("J_{nu}(xE, xE) differs from (-1)^{nu} J_{nu}(2x)"),
            ));
        }
        if !bessel_exponential(-i64::from(nu), order).eq_within(&classical) {
            return Ok((false, format!("J_-{nu}(xE, xE) differs from J_{nu}(2x)")));
        }
    }
    Ok((
        true,
        format!("ν = 0, 1, 2 through x^{order}: J_ν(xE, xE) = (-1)^ν J_ν(2x) = J_-ν(2x)"),
    ))
}

fn random_relation(rng: &mut ChaCha8Rng, max_letters: usize) -> Relation {
    let m = rng.gen_range(1..=max_letters);
    Relation::random(m, rng)
}

fn check_koszul(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    for r in 0..cfg.relations {
        let th = random_relation(rng, cfg.koszul_letters);
        for n in 1..=cfg.koszul_len {
            if !koszul_check(n, &th) {
                return Ok((
                    false,
                    format!("relation #{r} on {} letters, n = {n}", th.size()),
                ));
            }
        }
    }
    Ok((
        true,
        format!(
            "{} random relations, m <= {}, n <= {}",
            cfg.relations, cfg.koszul_letters, cfg.koszul_len
        ),
    ))
}

fn check_theta_eulerian(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let count = cfg.relations.min(10);
    for _ in 0..count {
        let th = random_relation(rng, cfg.eulerian_letters);
        let mut letters: Vec<u8> = (0..th.size() as u8).filter(|_| rng.gen_bool(0.5)).collect();
        if letters.is_empty() {
            letters.push(0);
        }
        for n in 1..=cfg.eulerian_len {
            theta_eulerian(n, &th)?;
            ending_eulerian(n, &th, &letters)?;
        }
    }
    Ok((
        true,
        format!(
            "{count} random relations, m <= {}, length <= {}",
            cfg.eulerian_letters, cfg.eulerian_len
        ),
    ))
}

fn check_theta_maj(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let count = cfg.relations.min(5);
    let mut relations = vec![Relation::gt(cfg.maj_letters)];
    relations.extend((0..count).map(|_| random_relation(rng, cfg.maj_letters)));
    for th in &relations {
        for n in 1..=cfg.maj_len {
            theta_maj(n, th, cfg.maj_q_order)?;
            theta_comaj(n, th, cfg.maj_q_order)?;
        }
    }
    Ok((
        true,
        format!(
            "'>' and {count} random relations, m <= {}, n <= {}, q-order {}; product over decreasing k gives θmaj, over increasing k gives θcomaj",
            cfg.maj_letters, cfg.maj_len, cfg.maj_q_order
        ),
    ))
}

fn check_double_eulerian(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let ab = BiAlphabet::new(cfg.double_letters, cfg.double_letters)?;
    for n in 1..=cfg.double_len {
        double_eulerian(n, &ab)?;
        if desris_brute(n)? != desris_exponential(n)? {
            return Ok((
                false,
                format!("exponential specialization differs at n = {n}"),
            ));
        }
    }
    Ok((
        true,
        format!(
            "{0}×{0} alphabet, n <= {1}; θAdj = Des(u) \\ Des(v) on every biword",
            cfg.double_letters, cfg.double_len
        ),
    ))
}

fn check_fr_series(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let w = &cfg.fr_window;
    for n in 0..=cfg.fr_n {
        if !fr_compare(FrSeries::First, FrVariant::Derived, n, w)?.agree {
            return Ok((false, format!("first series differs at n = {n}")));
        }
    }
    let mut verbatim_fails = Vec::new();
    for n in 1..=cfg.fr_n {
        if !fr_compare(FrSeries::Second, FrVariant::Derived, n, w)?.agree {
            return Ok((false, format!("β(n) = n series differs at n = {n}")));
        }
        if !fr_compare(FrSeries::Second, FrVariant::Verbatim, n, w)?.agree {
            verbatim_fails.push(n);
        }
    }
    Ok((
        true,
        format!(
            "n <= {}, i, j <= {}, {}, q, p <= {}, {}; β(n) = n series over (yp;p)_n (over (y;p)_n it differs for n in {verbatim_fails:?})",
            cfg.fr_n, w.max_i, w.max_j, w.q_order, w.p_order
        ),
    ))
}

fn check_polyominoes(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let window = PolyominoWindow {
        max_width: cfg.poly_width,
        max_area: cfg.poly_area,
        max_j: cfg.poly_area,
    };
    let series = series_via_bessel(&window)?;
    let offset = height_offset(&series, cfg.poly_area)?;
    let polys = enumerate_polyominoes(cfg.poly_width as usize, cfg.poly_area as usize);
    let geometric = geometric_series(&polys, offset);
    let agree = series.eq_within(&geometric);
    Ok((
        agree,
        format!(
            "{} polyominoes, width <= {}, area <= {}; y exponent = height - {offset}",
            polys.len(),
            cfg.poly_width,
            cfg.poly_area
        ),
    ))
}

fn check_heaps(cfg: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut classes = 0;
    for n in 1..=cfg.heap_len {
        for m in 1..=cfg.heap_max_j {
            let census = heap_census(n, m)?;
            if census.classes != census.normal_words {
                return Ok((
                    false,
                    format!("class count differs at n = {n}, max_j = {m}"),
                ));
            }
            classes += census.classes;
        }
    }
    for n in 1..=cfg.cartier_len {
        if !cartier_foata_check(n, cfg.heap_max_j)? {
            return Ok((false, format!("Cartier-Foata fails at n = {n}")));
        }
    }
    Ok((
        true,
        format!(
            "{classes} classes, length <= {}, max_j <= {}; Cartier-Foata n <= {}",
            cfg.heap_len, cfg.heap_max_j, cfg.cartier_len
        ),
    ))
}

/// A random composition of `n`.
pub fn random_composition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Composition {
    let mask = if n <= 1 {
        0
    } else {
        rng.gen_range(0..1u64 << (n - 1))
    };
    Composition::from_mask(n, mask).expect("mask fits")
}

/// A random element with small integer coefficients, degrees `<= max_deg`,
/// including a constant term with probability 1/2.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, basis: Basis, max_deg: usize) -> NsymElement {
    let mut f = NsymElement::zero(basis);
    if rng.gen_bool(0.5) {
        f = f.add(&NsymElement::scalar(
            basis,
            MultiPoly::from_int(rng.gen_range(-3..=3)),
        ));
    }
    for _ in 0..rng.gen_range(1..=4) {
        let n = rng.gen_range(1..=max_deg);
        let c = MultiPoly::from_int(rng.gen_range(-3..=3));
        f = f.add(&NsymElement::basis_element(basis, random_composition(rng, n)).scale(&c));
    }
    f
}

fn random_basis<R: Rng + ?Sized>(rng: &mut R) -> Basis {
    [Basis::S, Basis::L, Basis::R][rng.gen_range(0..3)]
}

fn check_structure(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let cases = cfg.property_cases;
    let deg = cfg.max_n.min(6);
    let fail = |what: String| Ok((false, what));

    // descent-set lattice, exhaustive for n <= 4
    for n in 0..=4 {
        let all: Vec<Composition> = Composition::all(n).collect();
        let top = Composition::column(n);
        let bottom = Composition::row(n);
        for a in &all {
            let meet = |x: &Composition, y: &Composition| x.descent_op(y, DescentOp::Meet).unwrap();
            let join = |x: &Composition, y: &Composition| x.descent_op(y, DescentOp::Join).unwrap();
            if meet(a, a) != *a || join(a, a) != *a || meet(a, &top) != *a || join(a, &bottom) != *a
            {
                return fail(format!("lattice identities fail at {}", a.label()));
            }
            if a.complement().complement() != *a || a.conjugate().conjugate() != *a {
                return fail(format!(
                    "complement or conjugate not involutive at {}",
                    a.label()
                ));
            }
            for b in &all {
                if meet(a, b) != meet(b, a) || join(a, b) != join(b, a) {
                    return fail("meet or join not commutative".to_string());
                }
                if meet(a, &join(a, b)) != *a || join(a, &meet(a, b)) != *a {
                    return fail("absorption fails".to_string());
                }
                for c in &all {
                    if meet(&meet(a, b), c) != meet(a, &meet(b, c))
                        || join(&join(a, b), c) != join(a, &join(b, c))
                    {
                        return fail("meet or join not associative".to_string());
                    }
                }
            }
        }
    }

    for _ in 0..cases {
        // conversions are mutually inverse and commute with products
        let from = random_basis(rng);
        let to = random_basis(rng);
        let f = random_element(rng, from, 7);
        if f.convert(to).convert(from) != f {
            return fail(format!("conversion {from}→{to}→{from} changes {f}"));
        }
        let g = random_element(rng, from, 3);
        let h = random_element(rng, from, 3);
        if !g
            .multiply(&h)
            .convert(to)
            .equals(&g.convert(to).multiply(&h.convert(to)))
        {
            return fail(format!(
                "convert does not commute with the product of {g} and {h}"
            ));
        }
        // ribbon rule against the complete basis
        let (ni, nj) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let i = random_composition(rng, ni);
        let j = random_composition(rng, nj);
        let (ri, rj) = (NsymElement::ribbon(i), NsymElement::ribbon(j));
        let via_s = ri.convert(Basis::S).multiply(&rj.convert(Basis::S));
        if !ri.multiply(&rj).equals(&via_s) {
            return fail(format!(
                "ribbon rule fails for R{}·R{}",
                i.label(),
                j.label()
            ));
        }
        // ∂ Leibniz rule and the two ways of computing ∂
        let (bf, bg) = (random_basis(rng), random_basis(rng));
        let f = random_element(rng, bf, deg.min(5));
        let g = random_element(rng, bg, deg.min(5));
        let lhs = f.multiply(&g).partial_right();
        let rhs = f
            .multiply(&g.partial_right())
            .add(&f.partial_right().scale(&g.constant_term()));
        if !lhs.equals(&rhs) {
            return fail(format!("Leibniz rule fails for F = {f}, G = {g}"));
        }
        if !f.partial_right().equals(&f.partial_right_ribbon()) {
            return fail(format!("∂ on ribbons disagrees for {f}"));
        }
        // ω
        if !f.omega().omega().equals(&f) {
            return fail(format!("ω is not an involution on {f}"));
        }
        if !f
            .multiply(&g)
            .omega()
            .equals(&g.omega().multiply(&f.omega()))
        {
            return fail(format!("ω is not an anti-automorphism on {f}, {g}"));
        }
        // internal products
        let n = rng.gen_range(1..=deg);
        let fs: Vec<QsymElement> = (0..3)
            .map(|_| QsymElement::fundamental(random_composition(rng, n)))
            .collect();
        for mode in [InternalMode::Meet, InternalMode::Join] {
            let p = |a: &QsymElement, b: &QsymElement| a.internal_product(b, mode);
            if !p(&fs[0], &fs[1]).equals(&p(&fs[1], &fs[0]))
                || !p(&p(&fs[0], &fs[1]), &fs[2]).equals(&p(&fs[0], &p(&fs[1], &fs[2])))
            {
                return fail(format!(
                    "internal product {mode:?} fails lattice laws in degree {n}"
                ));
            }
        }
        let unit_meet = QsymElement::fundamental(Composition::column(n));
        let unit_join = QsymElement::fundamental(Composition::row(n));
        if !fs[0]
            .internal_product(&unit_meet, InternalMode::Meet)
            .equals(&fs[0])
            || !fs[0]
                .internal_product(&unit_join, InternalMode::Join)
                .equals(&fs[0])
        {
            return fail(format!("internal units fail in degree {n}"));
        }
        let m = fs[0].convert(QBasis::M);
        if !m.convert(QBasis::F).equals(&fs[0]) {
            return fail("QSym conversion round trip fails".to_string());
        }
    }

    // ω(R_I) = R_{I~}, exhaustive
    for n in 0..=deg {
        for i in Composition::all(n) {
            if NsymElement::ribbon(i).omega() != NsymElement::ribbon(i.conjugate()) {
                return fail(format!(
                    "ω(R{}) is not R{}",
                    i.label(),
                    i.conjugate().label()
                ));
            }
        }
    }

    // duality of γ∧ and ∧ on basis triples, exhaustive
    let dual_deg = deg.min(5);
    for n in 0..=dual_deg {
        for f in Composition::all(n) {
            let gamma = gamma_meet(&NsymElement::ribbon(f));
            for g in Composition::all(n) {
                for h in Composition::all(n) {
                    let lhs = gamma.coeff(&g, &h);
                    let rhs = QsymElement::fundamental(g)
                        .internal_product(&QsymElement::fundamental(h), InternalMode::Meet)
                        .terms()
                        .coeff(&f);
                    if lhs != rhs {
                        return fail(format!(
                            "⟨γ∧ R{}, F{} ⊗ F{}⟩ differs from ⟨R{}, F{} ∧ F{}⟩",
                            f.label(),
                            g.label(),
                            h.label(),
                            f.label(),
                            g.label(),
                            h.label()
                        ));
                    }
                }
            }
        }
    }

    // γ∧ coassociativity on ribbons
    for n in 0..=dual_deg {
        for i in Composition::all(n) {
            if !gamma_coassociative(&i) {
                return fail(format!("γ∧ is not coassociative on R{}", i.label()));
            }
        }
    }

    Ok((
        true,
        format!(
            "lattice laws n <= 4; {cases} random cases for conversions, ribbon rule, ∂, ω, internal products; duality and coassociativity n <= {dual_deg}"
        ),
    ))
}

fn gamma_coassociative(i: &Composition) -> bool {
    use std::collections::BTreeMap;
    let gamma = gamma_meet(&NsymElement::ribbon(*i));
    let mut left: BTreeMap<(Composition, Composition, Composition), MultiPoly> = BTreeMap::new();
    let mut right = left.clone();
    let split = |t: &TensorElement| -> Vec<(Composition, Composition, MultiPoly)> {
        t.terms()
            .iter()
            .map(|((a, b), c)| (*a, *b, c.clone()))
            .collect()
    };
    for (h, k, c) in split(&gamma) {
        for (a, b, d) in split(&gamma_meet(&NsymElement::ribbon(h))) {
            *left.entry((a, b, k)).or_default() += &(&c * &d);
        }
        for (a, b, d) in split(&gamma_meet(&NsymElement::ribbon(k))) {
            *right.entry((h, a, b)).or_default() += &(&c * &d);
        }
    }
    left == right
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_list_is_complete() {
        let ids: Vec<u8> = check_list().iter().map(|c| c.0).collect();
        assert_eq!(ids, (1..=14).collect::<Vec<u8>>());
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(run_check(15, &VerifyConfig::default()).is_err());
    }

    #[test]
    fn caps_enforced() {
        let cfg = VerifyConfig {
            max_n: 9,
            ..VerifyConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::Bound { .. })));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a, b"), "\"a, b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
