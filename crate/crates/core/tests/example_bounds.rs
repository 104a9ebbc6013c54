//! Bound values for the built-in example matrices.

use qc_distance::bounds::{
    bound_best, bound_poly, bound_poly_rowremoval, bound_weight, bound_weight_rowremoval,
    BoundInput, Distance, SearchOptions, Theorem,
};
use qc_distance::codeword::{build_rowremoved_codeword, verify};
use qc_distance::expansion::fixture;
use qc_distance::IndexSet;

fn unlimited() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn base_protographs_with_last_column_punctured_give_10() {
    for name in ["ar4ja-1/2", "ar4ja-2/3", "ar4ja-4/5"] {
        let f = fixture(name).unwrap();
        let a = f.matrix().weight_matrix();
        let r = bound_best(
            BoundInput::Weight(&a),
            &f.puncture_set(),
            None,
            &unlimited(),
        )
        .unwrap();
        assert_eq!(r.bound, Distance::Finite(10), "{name}");
        assert!(r.exhaustive);
        assert_eq!(r.terms_sum(), 10);
    }
}

#[test]
fn lifted_rate_half_matrix_bound_is_66() {
    let f = fixture("ar4ja-1/2-expanded").unwrap();
    let a = f.matrix().weight_matrix();
    let r = bound_weight(&a, &f.puncture_set(), &unlimited()).unwrap();
    assert_eq!(r.bound, Distance::Finite(66));
    assert!(r.exhaustive);
    assert_eq!(r.subsets_examined, 77_520);
    assert_eq!(r.subsets_total, 77_520);
    assert_eq!(r.terms_sum(), 66);
}

#[test]
fn row_removal_does_not_improve_the_lifted_matrix() {
    let f = fixture("ar4ja-1/2-expanded").unwrap();
    let a = f.matrix().weight_matrix();
    let r = bound_best(
        BoundInput::Weight(&a),
        &f.puncture_set(),
        None,
        &unlimited(),
    )
    .unwrap();
    assert_eq!(r.bound, Distance::Finite(66));
    assert!(r.exhaustive);
}

#[test]
fn budgeted_search_on_lifted_matrix_is_flagged() {
    let f = fixture("ar4ja-1/2-expanded").unwrap();
    let a = f.matrix().weight_matrix();
    let opts = SearchOptions {
        budget: Some(1000),
        workers: None,
    };
    let r = bound_best(BoundInput::Weight(&a), &f.puncture_set(), None, &opts).unwrap();
    assert!(!r.exhaustive);
    assert!(r.subsets_examined <= 1000);
    assert!(r.bound >= Distance::Finite(66));
    // the column-weight order reaches the exhaustive value well inside the budget
    assert_eq!(r.bound, Distance::Finite(66));
}

#[test]
fn weight_examples() {
    let a = fixture("rowremoval-weight-a")
        .unwrap()
        .matrix()
        .weight_matrix();
    let none = IndexSet::empty();
    assert_eq!(
        bound_weight(&a, &none, &unlimited()).unwrap().bound,
        Distance::Infinite
    );
    let r = bound_weight_rowremoval(&a, &none, 2, &unlimited()).unwrap();
    assert_eq!(r.bound, Distance::Finite(3));
    assert_eq!(r.theorem, Theorem::WeightRowRemoval);

    let b = fixture("rowremoval-weight-b")
        .unwrap()
        .matrix()
        .weight_matrix();
    assert_eq!(
        bound_weight(&b, &none, &unlimited()).unwrap().bound,
        Distance::Finite(30)
    );
    let r = bound_weight_rowremoval(&b, &none, 2, &unlimited()).unwrap();
    assert_eq!(r.bound, Distance::Finite(10));
}

#[test]
fn poly_example_witness_verifies() {
    let h = match fixture("rowremoval-poly").unwrap().matrix() {
        qc_distance::expansion::FixtureMatrix::Poly(h) => h,
        _ => unreachable!(),
    };
    let none = IndexSet::empty();
    let plain = bound_poly(&h, &none, &unlimited()).unwrap();
    let r = bound_poly_rowremoval(&h, &none, 2, &unlimited()).unwrap();
    assert!(r.bound <= plain.bound);
    assert_eq!(r.bound, Distance::Finite(2));
    let s = r.witness_s.clone().unwrap();
    let c = build_rowremoved_codeword(&h, &s, &r.witness_t, &none).unwrap();
    assert_eq!(c.hamming_weight() as u128, 2);
    assert!(verify(&h, &c).unwrap().is_codeword());
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let f = fixture("ar4ja-4/5").unwrap();
    let a = f.matrix().weight_matrix();
    let reports: Vec<_> = [1, 2, 5]
        .iter()
        .map(|&w| {
            let opts = SearchOptions {
                budget: None,
                workers: Some(w),
            };
            bound_best(BoundInput::Weight(&a), &f.puncture_set(), None, &opts).unwrap()
        })
        .collect();
    assert!(reports.windows(2).all(|w| w[0] == w[1]));
}
