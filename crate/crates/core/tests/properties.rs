use nbessel::bessel::{gamma_meet, j_embed};
use nbessel::compositions::ribbon_number;
use nbessel::polyomino::{heap_class, heap_normal_form, is_normal, Segment};
use nbessel::qsym::pairing;
use nbessel::scalars::{factorial, ratio};
use nbessel::specialize::{spec_chain, spec_q, ChainAlphabet};
use nbessel::theta::{koszul_check, theta_eulerian, word_partial};
use nbessel::{
    Basis, Composition, DescentOp, InternalMode, MultiPoly, NsymElement, NsymSeries, Permutation,
    QBasis, QsymElement, Relation, Var, WordPoly,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn composition(max_n: usize) -> impl Strategy<Value = Composition> {
    (0..=max_n).prop_flat_map(|n| {
        let masks = if n == 0 { 1u64 } else { 1u64 << (n - 1) };
        (Just(n), 0..masks).prop_map(|(n, m)| Composition::from_mask(n, m).unwrap())
    })
}

fn composition_of(n: usize) -> impl Strategy<Value = Composition> {
    let masks = if n == 0 { 1u64 } else { 1u64 << (n - 1) };
    (0..masks).prop_map(move |m| Composition::from_mask(n, m).unwrap())
}

fn basis() -> impl Strategy<Value = Basis> {
    prop_oneof![Just(Basis::S), Just(Basis::L), Just(Basis::R)]
}

fn element(b: Basis, max_deg: usize) -> impl Strategy<Value = NsymElement> {
    prop::collection::vec((composition(max_deg), -3i64..=3), 1..5).prop_map(move |terms| {
        terms.into_iter().fold(NsymElement::zero(b), |acc, (i, c)| {
            acc.add(&NsymElement::basis_element(b, i).scale(&MultiPoly::from_int(c)))
        })
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..=4, 1i64..=3, 0u16..3, 0u16..3), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(MultiPoly::zero(), |acc, (n, d, a, b)| {
                let mut m = [0u16; 6];
                m[Var::Q.index()] = a;
                m[Var::T.index()] = b;
                acc + MultiPoly::term(ratio(n, d), m)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(b.clone() + &c), &a * &b + &(&a * &c));
        prop_assert!((a.clone() - &a).is_zero());
    }

    #[test]
    fn geometric_inverse_in_window(a in poly(), order in 1u16..6) {
        let f = (MultiPoly::one() + &(&a * &MultiPoly::var(Var::Q))).truncated(Var::Q, order);
        let g = f.inverse().unwrap();
        prop_assert!((&f * &g).eq_within(&MultiPoly::one().truncated(Var::Q, order)));
    }

    #[test]
    fn composition_involutions(i in composition(8)) {
        prop_assert_eq!(i.complement().complement(), i);
        prop_assert_eq!(i.conjugate().conjugate(), i);
        prop_assert_eq!(i.conjugate(), i.complement().reverse());
        prop_assert_eq!(Composition::from_mask(i.degree(), i.descent_mask()).unwrap(), i);
        prop_assert_eq!(i.to_string().parse::<Composition>().unwrap(), i);
    }

    #[test]
    fn composition_lattice((a, b, c) in (1usize..=7).prop_flat_map(|n| (composition_of(n), composition_of(n), composition_of(n)))) {
        let meet = |x: &Composition, y: &Composition| x.descent_op(y, DescentOp::Meet).unwrap();
        let join = |x: &Composition, y: &Composition| x.descent_op(y, DescentOp::Join).unwrap();
        prop_assert_eq!(meet(&a, &b), meet(&b, &a));
        prop_assert_eq!(join(&a, &b), join(&b, &a));
        prop_assert_eq!(meet(&meet(&a, &b), &c), meet(&a, &meet(&b, &c)));
        prop_assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
        prop_assert_eq!(meet(&a, &join(&a, &b)), a);
        prop_assert_eq!(join(&a, &meet(&a, &b)), a);
        let n = a.degree();
        prop_assert_eq!(meet(&a, &Composition::column(n)), a);
        prop_assert_eq!(join(&a, &Composition::row(n)), a);
    }

    #[test]
    fn conversions_round_trip(from in basis(), to in basis(), f in basis().prop_flat_map(|b| element(b, 7))) {
        let f = f.convert(from);
        prop_assert_eq!(f.convert(to).convert(from), f);
    }

    #[test]
    fn conversion_is_multiplicative(b in basis(), to in basis(), f in element(Basis::S, 3), g in element(Basis::R, 3)) {
        let (f, g) = (f.convert(b), g.convert(b));
        prop_assert!(f.multiply(&g).convert(to).equals(&f.convert(to).multiply(&g.convert(to))));
    }

    #[test]
    fn product_associative(f in element(Basis::R, 3), g in element(Basis::R, 2), h in element(Basis::R, 2)) {
        prop_assert!(f.multiply(&g).multiply(&h).equals(&f.multiply(&g.multiply(&h))));
    }

    #[test]
    fn omega_anti_involution(f in basis().prop_flat_map(|b| element(b, 4)), g in element(Basis::L, 3)) {
        prop_assert!(f.omega().omega().equals(&f));
        prop_assert!(f.multiply(&g).omega().equals(&g.omega().multiply(&f.omega())));
    }

    #[test]
    fn omega_on_ribbons(i in composition(7)) {
        prop_assert_eq!(NsymElement::ribbon(i).omega(), NsymElement::ribbon(i.conjugate()));
    }

    #[test]
    fn leibniz(f in basis().prop_flat_map(|b| element(b, 5)), g in basis().prop_flat_map(|b| element(b, 5))) {
        let lhs = f.multiply(&g).partial_right();
        let rhs = f.multiply(&g.partial_right()).add(&f.partial_right().scale(&g.constant_term()));
        prop_assert!(lhs.equals(&rhs));
        prop_assert!(f.partial_right().equals(&f.partial_right_ribbon()));
    }

    #[test]
    fn partial_of_geometric_inverse(g in element(Basis::S, 4)) {
        let order = 5;
        let g = g.sub(&NsymElement::scalar(Basis::S, g.constant_term()));
        let one = NsymElement::one(Basis::S);
        let inv = NsymSeries::new(one.sub(&g), order).invert().unwrap();
        let lhs = inv.element().partial_right().truncate_degree(order - 1);
        let rhs = inv.element().multiply(&g.partial_right()).truncate_degree(order - 1);
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn gamma_and_j_multiplicative(f in element(Basis::S, 3), g in element(Basis::R, 3)) {
        prop_assert!(gamma_meet(&f.multiply(&g)).equals(&gamma_meet(&f).multiply(&gamma_meet(&g))));
        prop_assert!(j_embed(&f.multiply(&g)).equals(&j_embed(&f).multiply(&j_embed(&g))));
    }

    #[test]
    fn internal_products((a, b, c) in (1usize..=6).prop_flat_map(|n| (composition_of(n), composition_of(n), composition_of(n)))) {
        let f = |i: Composition| QsymElement::fundamental(i);
        for mode in [InternalMode::Meet, InternalMode::Join] {
            let p = |x: &QsymElement, y: &QsymElement| x.internal_product(y, mode);
            prop_assert!(p(&f(a), &f(b)).equals(&p(&f(b), &f(a))));
            prop_assert!(p(&p(&f(a), &f(b)), &f(c)).equals(&p(&f(a), &p(&f(b), &f(c)))));
        }
        let n = a.degree();
        prop_assert!(f(a).internal_product(&f(Composition::column(n)), InternalMode::Meet).equals(&f(a)));
        prop_assert!(f(a).internal_product(&f(Composition::row(n)), InternalMode::Join).equals(&f(a)));
    }

    #[test]
    fn dual_bases(i in composition(6), j in composition(6)) {
        let delta = if i == j { 1 } else { 0 };
        let r = pairing(&NsymElement::ribbon(i), &QsymElement::fundamental(j));
        prop_assert_eq!(r, MultiPoly::from_int(delta));
        let s = pairing(&NsymElement::basis_element(Basis::S, i), &QsymElement::monomial(j));
        prop_assert_eq!(s, MultiPoly::from_int(delta));
        let m = QsymElement::monomial(i);
        prop_assert!(m.convert(QBasis::F).convert(QBasis::M).equals(&m));
    }

    #[test]
    fn koszul_on_random_relations(m in 1usize..=3, seed in any::<u64>(), n in 1usize..=4) {
        let th = Relation::seeded(m, seed);
        prop_assert!(koszul_check(n, &th));
        prop_assert!(theta_eulerian(n, &th).is_ok());
        prop_assert_eq!(Relation::from_json(&th.to_json()).unwrap(), th);
    }

    #[test]
    fn heap_normal_forms(w in prop::collection::vec((1u16..=3, 0u16..3), 0..5)) {
        let w: Vec<Segment> = w.into_iter().map(|(i, len)| (i, (i + len).min(4))).collect();
        let normal = heap_normal_form(&w).unwrap();
        prop_assert!(is_normal(&normal));
        let class = heap_class(&w);
        prop_assert!(class.contains(&normal));
        for v in &class {
            prop_assert_eq!(&heap_normal_form(v).unwrap(), &normal);
        }
    }
}

fn word_series() -> impl Strategy<Value = WordPoly> {
    prop::collection::vec((prop::collection::vec(0u8..3, 1..4), -2i64..=2), 1..6).prop_map(
        |terms| {
            let mut f = WordPoly::zero().with_max_len(5);
            for (w, c) in terms {
                f.add_term(w, &MultiPoly::from_int(c));
            }
            f
        },
    )
}

// h_k(x_1..x_m) by the recursion h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j)
fn complete_on_chain(k: usize, alphabet: &ChainAlphabet) -> MultiPoly {
    let mut h = vec![MultiPoly::one(); 1];
    h.extend((1..=k).map(|_| MultiPoly::zero()));
    for j in 0..alphabet.len() {
        let x = alphabet.letter(j);
        for d in 1..=k {
            let add = &x * &h[d - 1];
            h[d] += &add;
        }
    }
    h[k].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn word_series_partial(f in word_series(), c in 0u8..3) {
        let inv = WordPoly::one().with_max_len(5).sub(&f).invert().unwrap();
        let lhs = word_partial(&inv, c);
        let rhs = inv.multiply(&word_partial(&f, c));
        for len in 0..=4 {
            prop_assert!(lhs.component(len).eq_within(&rhs.component(len)));
        }
    }

    #[test]
    fn chain_evaluation_is_path_independent(i in composition(5), m in 0usize..=3) {
        let chain = ChainAlphabet::new(m, Var::Q);
        let direct = i.parts().iter().fold(MultiPoly::one(), |acc, &k| &acc * &complete_on_chain(k, &chain));
        prop_assert_eq!(spec_chain(&NsymElement::basis_element(Basis::S, i), &chain), direct);
    }

    #[test]
    fn q_specialization_of_ribbons(i in composition(5)) {
        let order = 12;
        let n = i.degree();
        let q = MultiPoly::var(Var::Q);
        let poch = MultiPoly::pochhammer(&q, Var::Q, n).truncated(Var::Q, order);
        let mut expected = MultiPoly::zero();
        for sigma in Permutation::all(n) {
            if sigma.descent_composition() == i {
                let e = sigma.inverse().descent_composition().maj() as u16;
                expected += &MultiPoly::var_pow(Var::Q, e);
            }
        }
        let got = &spec_q(&NsymElement::ribbon(i), Var::Q, order) * &poch;
        prop_assert!(got.eq_within(&expected.truncated(Var::Q, order)));
    }
}

#[test]
fn ribbon_numbers_sum_to_factorial() {
    for n in 0..=8 {
        let total: BigInt = Composition::all(n).map(|i| ribbon_number(&i)).sum();
        assert_eq!(total, factorial(n));
    }
}

// q^{maj(I)} / (q;q)_n is the value of F_I, not of the commutative ribbon
// function; the two differ first at I = (1,2).
#[test]
fn ribbon_q_value_is_not_maj_of_composition() {
    let order = 12;
    let q = MultiPoly::var(Var::Q);
    let poch = MultiPoly::pochhammer(&q, Var::Q, 3).truncated(Var::Q, order);
    let r12 = &spec_q(
        &NsymElement::ribbon(Composition::new(&[1, 2]).unwrap()),
        Var::Q,
        order,
    ) * &poch;
    let r21 = &spec_q(
        &NsymElement::ribbon(Composition::new(&[2, 1]).unwrap()),
        Var::Q,
        order,
    ) * &poch;
    assert!(r12.eq_within(&r21));
    let qq = (MultiPoly::var(Var::Q) + MultiPoly::var_pow(Var::Q, 2)).truncated(Var::Q, order);
    assert!(r12.eq_within(&qq));
}
