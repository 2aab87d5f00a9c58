use whurwitz::poly::{interpolate_chamber, wall_crossing_check, BalancedPoint};
use whurwitz::{Partition, WeightFunction};

#[test]
fn wall_crossing_genus_zero() {
    for w in [WeightFunction::Exp, WeightFunction::monotone(), WeightFunction::strictly_monotone()] {
        for lam in [vec![1, 1], vec![2]] {
            let lam = Partition::new(lam).unwrap();
            let c = wall_crossing_check(&w, &lam, &[0, 1], &[2, -2, 3, -3], 4).unwrap();
            for (p, l, r) in &c.points {
                println!("{} {lam} {:?} lhs={} rhs={}", w.name(), p.0, l, r);
            }
            assert!(c.holds(), "{} {lam}", w.name());
        }
    }
}

#[test]
fn genus_one_fit() {
    let t = std::time::Instant::now();
    let x0 = BalancedPoint::new(vec![1, 3, -2, -2]).unwrap();
    let fit = interpolate_chamber(&WeightFunction::monotone(), 4, &x0, None, 5).unwrap();
    println!("degree {:?} in {:?}", fit.polynomial.degree(), t.elapsed());
}

#[test]
fn wall_crossing_genus_one() {
    let w = WeightFunction::monotone();
    for lam in [vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1]] {
        let lam = Partition::new(lam).unwrap();
        let c = wall_crossing_check(&w, &lam, &[0, 1], &[2, -2, 3, -3], 3).unwrap();
        for (p, l, r) in &c.points {
            println!("{lam} {:?} lhs={} rhs={}", p.0, l, r);
        }
        assert!(c.holds(), "{lam}");
    }
}
