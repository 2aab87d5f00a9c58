use whurwitz::feynman::{elliptic_qseries_pipeline, feynman_qseries, types_qseries};
use whurwitz::WeightFunction;

#[test]
fn feynman_matches_shifted_symmetric() {
    for w in [WeightFunction::Exp, WeightFunction::strictly_monotone(), WeightFunction::monotone()] {
        let (_, con) = elliptic_qseries_pipeline(&w, 2, &[], 8).unwrap();
        assert_eq!(feynman_qseries(&w, 2, 8).unwrap(), con, "{}", w.name());
        assert_eq!(types_qseries(&w, 2, 8).unwrap(), con, "{}", w.name());
    }
}

#[test]
fn genus_three_low_degree() {
    for w in [WeightFunction::Exp, WeightFunction::monotone()] {
        let (_, con) = elliptic_qseries_pipeline(&w, 3, &[], 4).unwrap();
        assert_eq!(feynman_qseries(&w, 3, 4).unwrap(), con, "{}", w.name());
    }
}
