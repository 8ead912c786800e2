use nbessel::specialize::{fr_compare, FrSeries, FrVariant, FrWindow};

#[test]
fn first_series_matches_statistics() {
    let w = FrWindow::default();
    for n in 0..=4 {
        let cmp = fr_compare(FrSeries::First, FrVariant::Derived, n, &w).unwrap();
        assert!(cmp.agree, "n = {n}");
    }
}

#[test]
fn second_series_matches_with_shifted_denominator() {
    let w = FrWindow::default();
    for n in 1..=4 {
        let cmp = fr_compare(FrSeries::Second, FrVariant::Derived, n, &w).unwrap();
        assert!(cmp.agree, "n = {n}");
    }
}

#[test]
fn second_series_verbatim_denominator_disagrees() {
    let w = FrWindow::default();
    for n in 1..=4 {
        let cmp = fr_compare(FrSeries::Second, FrVariant::Verbatim, n, &w).unwrap();
        assert!(!cmp.agree, "n = {n}");
    }
}
