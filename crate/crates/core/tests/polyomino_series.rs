use nbessel::polyomino::{
    enumerate_polyominoes, geometric_series, heap_census, height_offset, polyomino_words,
    series_via_bessel, PolyominoWindow, SegmentAlphabet,
};
use nbessel::scalars::Var;

#[test]
fn series_matches_geometric_enumeration() {
    let w = PolyominoWindow {
        max_width: 4,
        max_area: 10,
        max_j: 10,
    };
    let series = series_via_bessel(&w).unwrap();
    let offset = height_offset(&series, w.max_area).unwrap();
    assert_eq!(offset, 1);
    let polys = enumerate_polyominoes(4, 10);
    let geometric = geometric_series(&polys, offset);
    assert!(series.eq_within(&geometric));
}

#[test]
fn area_counts_all_widths() {
    // every polyomino of area <= 8 has width <= 8
    let w = PolyominoWindow {
        max_width: 8,
        max_area: 8,
        max_j: 8,
    };
    let series = series_via_bessel(&w).unwrap();
    let by_area: Vec<i64> = (1..=8)
        .map(|a| {
            let slice = series.coefficient_in(Var::Q, a);
            slice
                .terms()
                .map(|(_, c)| i64::try_from(c.to_integer()).unwrap())
                .sum()
        })
        .collect();
    let polys = enumerate_polyominoes(8, 8);
    let direct: Vec<i64> = (1..=8)
        .map(|a| polys.iter().filter(|p| p.area == a).count() as i64)
        .collect();
    assert_eq!(by_area, direct);
}

#[test]
fn codes_are_theta_words_ending_in_a1j() {
    let alphabet = SegmentAlphabet::new(4).unwrap();
    for n in 1..=3 {
        let words = polyomino_words(n, &alphabet).unwrap();
        let mut from_words: Vec<_> = words.terms().map(|(w, _)| alphabet.segments(w)).collect();
        from_words.sort();
        let mut geometric: Vec<_> = enumerate_polyominoes(n, 4 * n)
            .into_iter()
            .filter(|p| p.width == n && p.code.columns().iter().all(|c| c.1 <= 4))
            .map(|p| p.code.columns().to_vec())
            .collect();
        geometric.sort();
        assert_eq!(from_words, geometric, "width {n}");
    }
}

#[test]
fn heap_classes_have_one_normal_word() {
    for n in 1..=4 {
        for m in 1..=4 {
            let census = heap_census(n, m).unwrap();
            assert_eq!(census.classes, census.normal_words, "n = {n}, max_j = {m}");
        }
    }
}
