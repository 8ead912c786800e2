//! Command implementations.

use clap::{Subcommand, ValueEnum};
use nbessel::bessel::{bessel_j, gamma_meet};
use nbessel::polyomino::{
    cartier_foata_check, enumerate_polyominoes, geometric_series, heap_census, heap_class,
    heap_normal_form, height_offset, render_heap, series_via_bessel, PolyominoWindow, Segment,
    SegmentAlphabet,
};
use nbessel::scalars::format_rational;
use nbessel::specialize::{bessel_exponential, classical_bessel, csv_a, csv_c, fr_compare};
use nbessel::theta::{
    double_eulerian, ending_eulerian, koszul_convolution, render_word, theta_basis, theta_comaj,
    theta_eulerian, theta_maj, ThetaKind,
};
use nbessel::verify::{check_list, render_report, run_check, VerifyConfig};
use nbessel::{
    Basis, BiAlphabet, Composition, Error, FrSeries, FrVariant, FrWindow, InternalMode, MultiPoly,
    NsymElement, PolyominoCode, QBasis, QsymElement, Relation, Result, Var,
};
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{
    nsym_json, nsym_table, poly_json, poly_table, qsym_json, qsym_table, tensor_json, tensor_table,
    words_json, words_table, Emitted, Table,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Meet,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThetaCommand {
    Lambda,
    Complete,
    Ribbon,
    Koszul,
    Eulerian,
    Ending,
    Maj,
    Comaj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Derived,
    Verbatim,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of basis elements, expanded in a basis.
    Expand {
        basis: Basis,
        #[arg(required = true)]
        factors: Vec<Composition>,
        #[arg(long)]
        to: Option<Basis>,
    },
    /// A single basis element in another basis.
    Convert {
        from: Basis,
        index: Composition,
        to: Basis,
    },
    /// F_H ∧ F_K or F_H ∨ F_K.
    InternalProduct {
        #[arg(value_enum)]
        mode: Mode,
        left: Composition,
        right: Composition,
        #[arg(long, default_value = "F")]
        basis: QBasis,
    },
    /// γ∧ of a basis element, in R ⊗ R.
    Gamma { basis: Basis, index: Composition },
    /// J_ν (or its inverse) up to B-degree --max-n.
    Bessel {
        #[arg(allow_hyphen_values = true)]
        nu: i64,
        #[arg(long)]
        inverse: bool,
    },
    /// Exponential specialization of J_ν against the classical series.
    Specialize {
        #[arg(allow_hyphen_values = true)]
        nu: i64,
        #[arg(long, default_value_t = 12)]
        order: u16,
    },
    /// Rows (n, a_n, c_n) for n <= --max-n.
    CsvTable,
    /// Word-algebra computations over a relation.
    Theta {
        #[arg(value_enum)]
        kind: ThetaCommand,
        /// gt, geq, eq, random, segment-overlap, bessel-product, or a JSON
        /// file holding a boolean matrix.
        #[arg(long, default_value = "gt")]
        relation: String,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 3)]
        length: usize,
        /// Composition for `ribbon`.
        #[arg(long)]
        composition: Option<Composition>,
        /// Final letters for `ending`.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        end: Vec<u8>,
    },
    /// Double θ-Eulerian polynomial over a product alphabet.
    DoubleEuler {
        #[arg(long, default_value_t = 2)]
        top: usize,
        #[arg(long, default_value_t = 2)]
        bottom: usize,
        #[arg(long, default_value_t = 3)]
        length: usize,
    },
    /// Coefficient of the five-parameter series, both sides.
    FrSeries {
        #[arg(long, value_enum, default_value = "first")]
        series: SeriesArg,
        #[arg(long, value_enum, default_value = "derived")]
        variant: VariantArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_i: u16,
        #[arg(long, default_value_t = 2)]
        max_j: u16,
    },
    /// Parallelogram polyomino series, or details of one code.
    Polyomino {
        #[arg(long, default_value_t = 4)]
        max_width: u16,
        #[arg(long, default_value_t = 10)]
        max_area: u16,
        /// A biword code such as 2122111/2323212.
        #[arg(long)]
        code: Option<String>,
    },
    /// Heap census, or the normal form of one word of segments.
    Heaps {
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        max_j: u16,
        /// Segments such as "1,2 2,3 1,1".
        #[arg(long)]
        word: Option<String>,
    },
    /// Runs the identity checks and reports pass or fail for each.
    VerifyAll {
        /// Run only these checks.
        #[arg(long)]
        check: Vec<u8>,
    },
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Emitted> {
    match command {
        Command::Expand { basis, factors, to } => {
            let mut f = NsymElement::one(*basis);
            for i in factors {
                f = f.multiply(&NsymElement::basis_element(*basis, *i));
            }
            Ok(nsym(&f.convert(to.unwrap_or(*basis))))
        }
        Command::Convert { from, index, to } => Ok(nsym(
            &NsymElement::basis_element(*from, *index).convert(*to),
        )),
        Command::InternalProduct {
            mode,
            left,
            right,
            basis,
        } => {
            if left.degree() != right.degree() {
                return Err(Error::Degree {
                    left: left.degree(),
                    right: right.degree(),
                });
            }
            let mode = match mode {
                Mode::Meet => InternalMode::Meet,
                Mode::Join => InternalMode::Join,
            };
            let p = QsymElement::fundamental(*left)
                .internal_product(&QsymElement::fundamental(*right), mode)
                .convert(*basis);
            Ok(Emitted::new(qsym_json(&p), qsym_table(&p)).with_text(p.to_string()))
        }
        Command::Gamma { basis, index } => {
            let g = gamma_meet(&NsymElement::basis_element(*basis, *index));
            let pairs: Vec<serde_json::Value> = g
                .terms()
                .iter()
                .map(|((h, k), c)| json!({ "H": h.to_string(), "K": k.to_string(), "coefficient": c.to_string() }))
                .collect();
            Ok(
                Emitted::new(serde_json::Value::Array(pairs), tensor_table(&g))
                    .with_text(g.to_string()),
            )
        }
        Command::Bessel { nu, inverse } => {
            let order = cfg.max_n.unwrap_or(4);
            let mut s = bessel_j(*nu, order);
            if *inverse {
                s = s.invert()?;
            }
            let t = s.element();
            Ok(Emitted::new(tensor_json(t), tensor_table(t)).with_text(t.to_string()))
        }
        Command::Specialize { nu, order } => specialize(*nu, *order),
        Command::CsvTable => csv_table(cfg.max_n.unwrap_or(6)),
        Command::Theta {
            kind,
            relation,
            letters,
            length,
            composition,
            end,
        } => theta(*kind, relation, *letters, *length, composition, end, cfg),
        Command::DoubleEuler {
            top,
            bottom,
            length,
        } => {
            let ab = BiAlphabet::new(*top, *bottom)?;
            let f = double_eulerian(*length, &ab)?;
            let render = |w: &[u8]| ab.render(w);
            Ok(Emitted::new(
                words_json(&f, &render),
                words_table(&f, &render),
            ))
        }
        Command::FrSeries {
            series,
            variant,
            n,
            max_i,
            max_j,
        } => {
            let window = FrWindow {
                max_i: *max_i,
                max_j: *max_j,
                q_order: cfg.q_order.unwrap_or(10),
                p_order: cfg.p_order.unwrap_or(10),
            };
            let (series, variant) = (
                match series {
                    SeriesArg::First => FrSeries::First,
                    SeriesArg::Second => FrSeries::Second,
                },
                match variant {
                    VariantArg::Derived => FrVariant::Derived,
                    VariantArg::Verbatim => FrVariant::Verbatim,
                },
            );
            let c = fr_compare(series, variant, *n, &window)?;
            let json = json!({
                "n": n,
                "agree": c.agree,
                "formula": poly_json(&c.formula),
                "statistic": poly_json(&c.statistic),
            });
            let mut table = Table::new(&["side", "monomial", "coefficient"]);
            for (side, f) in [("formula", &c.formula), ("statistic", &c.statistic)] {
                for row in poly_table(f).rows {
                    table.push(vec![side.to_string(), row[0].clone(), row[1].clone()]);
                }
            }
            let text = format!(
                "formula:   {}\nstatistic: {}\nagree: {}\n",
                c.formula, c.statistic, c.agree
            );
            Ok(Emitted::new(json, table).with_text(text).failed(!c.agree))
        }
        Command::Polyomino {
            max_width,
            max_area,
            code,
        } => match code {
            Some(code) => polyomino_code(code),
            None => polyomino_series(*max_width, *max_area),
        },
        Command::Heaps {
            length,
            max_j,
            word,
        } => match word {
            Some(w) => heap_word(w),
            None => heaps(*length, *max_j),
        },
        Command::VerifyAll { check } => verify_all(check, cfg),
    }
}

fn nsym(f: &NsymElement) -> Emitted {
    Emitted::new(nsym_json(f), nsym_table(f)).with_text(f.to_string())
}

fn specialize(nu: i64, order: u16) -> Result<Emitted> {
    let specialized = bessel_exponential(nu, order);
    let m = nu.unsigned_abs() as u32;
    // J_-m = (-1)^m J_m, and the specialization of J_ν is J_-ν(2x)
    let sign = if nu > 0 && m % 2 == 1 { -1 } else { 1 };
    let classical = classical_bessel(m, order);
    let expected = &classical * &MultiPoly::from_int(sign);
    let agree = specialized.eq_within(&expected);
    let mut table = Table::new(&["k", "specialized", "classical"]);
    let mut coeffs = Vec::new();
    for k in 0..=order {
        let a = format_rational(&specialized.coeff_of(&[(Var::X, k)]));
        let b = format_rational(&classical.coeff_of(&[(Var::X, k)]));
        coeffs.push(json!({ "k": k, "specialized": a, "classical": b }));
        table.push(vec![k.to_string(), a, b]);
    }
    let json = json!({
        "nu": nu,
        "order": order,
        "classical_sign": sign,
        "agree": agree,
        "coefficients": coeffs,
    });
    Ok(Emitted::new(json, table).failed(!agree))
}

fn csv_table(max_n: usize) -> Result<Emitted> {
    let mut table = Table::new(&["n", "a_n", "c_n"]);
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let a = csv_a(n, max_n)?;
        let c = if n == 0 { None } else { Some(csv_c(n, max_n)?) };
        rows.push(
            json!({ "n": n, "a_n": a.to_string(), "c_n": c.as_ref().map(|c| c.to_string()) }),
        );
        table.push(vec![
            n.to_string(),
            a.to_string(),
            c.map(|c| c.to_string()).unwrap_or_default(),
        ]);
    }
    Ok(Emitted::new(serde_json::Value::Array(rows), table))
}

enum Letters {
    Plain,
    Segments(SegmentAlphabet),
    Pairs(BiAlphabet),
}

impl Letters {
    fn render(&self, w: &[u8]) -> String {
        match self {
            Letters::Plain => render_word(w),
            Letters::Segments(a) => render_heap(&a.segments(w)),
            Letters::Pairs(ab) => ab.render(w),
        }
    }
}

fn relation(name: &str, letters: usize, seed: u64) -> Result<(Relation, Letters)> {
    Ok(match name {
        "gt" => (Relation::gt(letters), Letters::Plain),
        "geq" => (Relation::geq(letters), Letters::Plain),
        "eq" => (Relation::eq(letters), Letters::Plain),
        "random" => (Relation::seeded(letters, seed), Letters::Plain),
        "segment-overlap" => {
            let a = SegmentAlphabet::new(letters as u16)?;
            (a.relation(), Letters::Segments(a))
        }
        "bessel-product" => {
            let ab = BiAlphabet::new(letters, letters)?;
            (ab.relation(), Letters::Pairs(ab))
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Parse(format!("unknown relation {path:?} and no such file: {e}"))
            })?;
            let v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            (Relation::from_json(&v)?, Letters::Plain)
        }
    })
}

fn theta(
    kind: ThetaCommand,
    relation_name: &str,
    letters: usize,
    n: usize,
    composition: &Option<Composition>,
    end: &[u8],
    cfg: &RunConfig,
) -> Result<Emitted> {
    let (th, alphabet) = relation(relation_name, letters, cfg.seed)?;
    if let Some(&c) = end.iter().find(|&&c| c as usize >= th.size()) {
        return Err(Error::Domain(format!("letter {c} outside the alphabet")));
    }
    let q_order = cfg.q_order.unwrap_or(12);
    let f = match kind {
        ThetaCommand::Lambda => theta_basis(&ThetaKind::Lambda, n, &th)?,
        ThetaCommand::Complete => theta_basis(&ThetaKind::Complete, n, &th)?,
        ThetaCommand::Ribbon => {
            let i = composition.unwrap_or_else(|| Composition::row(n));
            theta_basis(&ThetaKind::Ribbon(i), i.degree(), &th)?
        }
        ThetaCommand::Koszul => koszul_convolution(n, &th),
        ThetaCommand::Eulerian => theta_eulerian(n, &th)?,
        ThetaCommand::Ending => ending_eulerian(n, &th, end)?,
        ThetaCommand::Maj => theta_maj(n, &th, q_order)?,
        ThetaCommand::Comaj => theta_comaj(n, &th, q_order)?,
    };
    let render = |w: &[u8]| alphabet.render(w);
    let failed = kind == ThetaCommand::Koszul && !f.is_zero();
    Ok(Emitted::new(words_json(&f, &render), words_table(&f, &render)).failed(failed))
}

fn polyomino_series(max_width: u16, max_area: u16) -> Result<Emitted> {
    let window = PolyominoWindow {
        max_width,
        max_area,
        max_j: max_area,
    };
    let series = series_via_bessel(&window)?;
    let offset = height_offset(&series, max_area)?;
    let polys = enumerate_polyominoes(max_width as usize, max_area as usize);
    let agree = series.eq_within(&geometric_series(&polys, offset));
    let json = json!({
        "max_width": max_width,
        "max_area": max_area,
        "polyominoes": polys.len(),
        "height_offset": offset,
        "agree": agree,
        "series": poly_json(&series),
    });
    Ok(Emitted::new(json, poly_table(&series)).failed(!agree))
}

fn polyomino_code(code: &str) -> Result<Emitted> {
    let p = PolyominoCode::parse_biword(code)?;
    let mut table = Table::new(&["column", "bottom", "top"]);
    for (k, (lo, hi)) in p.column_rows().iter().enumerate() {
        table.push(vec![(k + 1).to_string(), lo.to_string(), hi.to_string()]);
    }
    let text = format!(
        "{}\nwidth {}, area {}, y exponent {}\n{}",
        p.biword(),
        p.width(),
        p.area(),
        p.y_exponent(),
        table.to_text()
    );
    Ok(Emitted::new(p.to_json(), table).with_text(text))
}

fn parse_segments(s: &str) -> Result<Vec<Segment>> {
    s.split_whitespace()
        .map(|tok| {
            let (i, j) = tok
                .trim_start_matches('a')
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("segment {tok:?} is not i,j")))?;
            let parse = |x: &str| {
                x.parse::<u16>()
                    .map_err(|_| Error::Parse(format!("segment {tok:?} is not i,j")))
            };
            let (i, j) = (parse(i)?, parse(j)?);
            if i == 0 || i > j {
                return Err(Error::Domain(format!("segment {tok:?} needs 1 <= i <= j")));
            }
            Ok((i, j))
        })
        .collect()
}

fn heap_word(word: &str) -> Result<Emitted> {
    let w = parse_segments(word)?;
    let normal = heap_normal_form(&w)?;
    let class = heap_class(&w);
    let mut table = Table::new(&["word", "normal"]);
    for v in &class {
        table.push(vec![render_heap(v), (*v == normal).to_string()]);
    }
    let json = json!({
        "word": render_heap(&w),
        "normal_form": render_heap(&normal),
        "class_size": class.len(),
    });
    let text = format!(
        "normal form {} (class of {} words)\n",
        render_heap(&normal),
        class.len()
    );
    Ok(Emitted::new(json, table).with_text(text))
}

fn heaps(length: usize, max_j: u16) -> Result<Emitted> {
    let mut table = Table::new(&["n", "words", "classes", "normal_words", "cartier_foata"]);
    let mut rows = Vec::new();
    let mut failed = false;
    for n in 1..=length {
        let c = heap_census(n, max_j)?;
        let cf = cartier_foata_check(n, max_j)?;
        failed |= !cf || c.classes != c.normal_words;
        rows.push(json!({
            "n": n,
            "words": c.words,
            "classes": c.classes,
            "normal_words": c.normal_words,
            "cartier_foata": cf,
        }));
        table.push(vec![
            n.to_string(),
            c.words.to_string(),
            c.classes.to_string(),
            c.normal_words.to_string(),
            cf.to_string(),
        ]);
    }
    Ok(Emitted::new(json!({ "max_j": max_j, "rows": rows }), table).failed(failed))
}

fn verify_all(only: &[u8], cfg: &RunConfig) -> Result<Emitted> {
    let mut vc = VerifyConfig {
        seed: cfg.seed,
        ..VerifyConfig::default()
    };
    if let Some(n) = cfg.max_n {
        vc.max_n = n;
    }
    if let Some(q) = cfg.q_order {
        vc.maj_q_order = q;
        vc.fr_window.q_order = q;
    }
    if let Some(p) = cfg.p_order {
        vc.fr_window.p_order = p;
    }
    vc.validate()?;
    let ids: Vec<u8> = if only.is_empty() {
        check_list().into_iter().map(|(id, _)| id).collect()
    } else {
        only.to_vec()
    };
    let mut outcomes = Vec::new();
    for id in ids {
        let o = run_check(id, &vc)?;
        eprintln!("check {:>2}: {:.2?}", o.id, o.elapsed);
        outcomes.push(o);
    }
    let failed = outcomes.iter().any(|o| !o.passed);
    let mut table = Table::new(&["id", "title", "passed", "detail"]);
    for o in &outcomes {
        table.push(vec![
            o.id.to_string(),
            o.title.to_string(),
            o.passed.to_string(),
            o.detail.clone(),
        ]);
    }
    let json = serde_json::from_str(&render_report(&outcomes, nbessel::ReportFormat::Json))
        .expect("report is valid JSON");
    let text = render_report(&outcomes, nbessel::ReportFormat::Text);
    Ok(Emitted::new(json, table).with_text(text).failed(failed))
}
