use num_traits::{One, Zero};
use proptest::prelude::*;
use whurwitz::characters::{character_q, contents_q, f2_eval, monomial_eval};
use whurwitz::exact::{factorial_q, int, pow, rat, Rational, TruncSeries, Var};
use whurwitz::oracles::char_double_disconnected;
use whurwitz::partition::partitions_of;
use whurwitz::tropical::{completed_cycles_double, enumerate_covers};
use whurwitz::{Partition, WeightFunction};

fn series_strategy(constant: i64) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec((-20i64..20, 1i64..9), 1..8).prop_map(move |v| {
        let mut c = vec![int(constant)];
        c.extend(v.into_iter().map(|(p, q)| rat(p, q)));
        TruncSeries::new(Var::Z, c)
    })
}

fn profile_pair(max: u32) -> impl Strategy<Value = (Partition, Partition, u32)> {
    (1..=max, 0u32..5).prop_flat_map(|(n, r)| {
        let all = partitions_of(n);
        let k = all.len();
        (0..k, 0..k).prop_map(move |(i, j)| {
            let (mu, nu) = (all[i].clone(), all[j].clone());
            let r = if (r as usize + mu.len() + nu.len()).is_multiple_of(2) { r } else { r + 1 };
            (mu, nu, r)
        })
    })
}

fn partition_strategy(max: u32) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #[test]
    fn exp_inverts_log(s in series_strategy(1)) {
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn inverse_is_two_sided(s in series_strategy(3)) {
        let one = TruncSeries::one(Var::Z, s.order());
        prop_assert_eq!(s.mul(&s.invert().unwrap()).unwrap(), one.clone());
        prop_assert_eq!(s.invert().unwrap().mul(&s).unwrap(), one);
    }

    #[test]
    fn monomials_are_symmetric(lam in partition_strategy(4), mut xs in prop::collection::vec(-5i64..6, 1..6)) {
        let a: Vec<Rational> = xs.iter().map(|&x| int(x)).collect();
        xs.reverse();
        xs.rotate_left(1);
        let b: Vec<Rational> = xs.iter().map(|&x| int(x)).collect();
        prop_assert_eq!(monomial_eval(&lam, &a), monomial_eval(&lam, &b));
    }

    #[test]
    fn double_numbers_are_symmetric((mu, nu, r) in profile_pair(5)) {
        for w in [WeightFunction::Exp, WeightFunction::monotone(), WeightFunction::strictly_monotone()] {
            prop_assert_eq!(
                char_double_disconnected(&w, &mu, &nu, r).unwrap(),
                char_double_disconnected(&w, &nu, &mu, r).unwrap()
            );
        }
    }

    #[test]
    fn covers_have_expected_genus((mu, nu, r) in profile_pair(4)) {
        let g = (r as i64 + 2 - (mu.len() + nu.len()) as i64) / 2;
        for c in enumerate_covers(&mu, &nu, r, false).unwrap() {
            prop_assert_eq!(c.genus(), g);
            prop_assert!(c.aut >= num_bigint::BigInt::one());
        }
    }
}

#[test]
fn character_orthogonality() {
    for d in 1..=6 {
        let ps = partitions_of(d);
        for a in &ps {
            for b in &ps {
                let s: Rational =
                    ps.iter().map(|m| character_q(a, m).unwrap() * character_q(b, m).unwrap() / m.z_order_q()).sum();
                assert_eq!(s, if a == b { int(1) } else { int(0) }, "{a} {b}");
            }
        }
    }
}

#[test]
fn f2_is_content_sum() {
    for n in 0..=10 {
        for lam in partitions_of(n) {
            let s: i64 = lam.contents().iter().sum();
            assert_eq!(f2_eval(&lam), int(s));
        }
    }
}

/// [z^k] (e^{z/2} - e^{-z/2}) sum over cells e^{z c}.
fn completed_cycle_eigenvalue(lam: &Partition, k: u32) -> Rational {
    let cont = contents_q(lam);
    let mut total = Rational::zero();
    for j in 0..k {
        let odd = k - j;
        if odd.is_multiple_of(2) {
            continue;
        }
        let varsigma = Rational::one() / (pow(&int(2), odd - 1) * factorial_q(odd));
        let moment: Rational = cont.iter().map(|c| pow(c, j)).sum();
        total += varsigma * moment / factorial_q(j);
    }
    total
}

fn completed_cycles_oracle(rcc: u32, mu: &Partition, nu: &Partition, s: u32) -> Rational {
    let mut total = Rational::zero();
    for lam in partitions_of(mu.size()) {
        let f = pow(&completed_cycle_eigenvalue(&lam, rcc + 1), s);
        total += character_q(&lam, mu).unwrap() * character_q(&lam, nu).unwrap() * f;
    }
    total / (mu.z_order_q() * nu.z_order_q())
}

#[test]
fn completed_cycles_match_character_sum() {
    for rcc in 1..=3 {
        for d in 1..=4 {
            for mu in partitions_of(d) {
                for nu in partitions_of(d) {
                    for s in 0..=2 {
                        if !((rcc * s) as usize + mu.len() + nu.len()).is_multiple_of(2) {
                            continue;
                        }
                        assert_eq!(
                            completed_cycles_double(rcc, &mu, &nu, s, false).unwrap(),
                            completed_cycles_oracle(rcc, &mu, &nu, s),
                            "rcc={rcc} {mu} {nu} s={s}"
                        );
                    }
                }
            }
        }
    }
}
