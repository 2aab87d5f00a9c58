use whurwitz::feynman::{elliptic_qseries_pipeline, elliptic_types, refined_type_series};
use whurwitz::quasimod::{fit_quasimodular, profiled_weight_cap};
use whurwitz::{Error, Partition, WeightFunction};

#[test]
fn genus_two_series_are_quasimodular() {
    for w in [WeightFunction::Exp, WeightFunction::strictly_monotone(), WeightFunction::monotone()] {
        let (_, con) = elliptic_qseries_pipeline(&w, 2, &[], 12).unwrap();
        let fit = fit_quasimodular(&con, 6, 3).unwrap();
        assert!(fit.validated >= 3);
        for t in elliptic_types(2).unwrap() {
            let s = refined_type_series(&w, &t, 12).unwrap();
            let cap = t.weight_cap();
            let fit = fit_quasimodular(&s, cap, 3).unwrap_or_else(|e| panic!("{} {:?}: {e}", w.name(), t));
            assert!(fit.validated >= 3);
        }
    }
}

#[test]
fn profiled_series_fit_their_cap_and_no_less() {
    for (g, prof, dmax) in [(1, vec![2], 14), (1, vec![3], 18)] {
        let profiles = [Partition::new(prof).unwrap()];
        let cap = profiled_weight_cap(g, &profiles).unwrap();
        let (_, con) = elliptic_qseries_pipeline(&WeightFunction::monotone(), g, &profiles, dmax).unwrap();
        let fit = fit_quasimodular(&con, cap, 3).unwrap();
        assert!(fit.validated >= 3);
        assert!(matches!(fit_quasimodular(&con, cap - 2, 3), Err(Error::NoSolution(_))));
    }
}
