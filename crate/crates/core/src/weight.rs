//! Weight generating functions G(z) and their log coefficients.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, pow, rational_vec, special_series, Rational, Special, TruncSeries, Var};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WeightFunction {
    #[serde(rename = "product-G")]
    ProductG {
        #[serde(with = "rational_vec")]
        c: Vec<Rational>,
    },
    #[serde(rename = "product-Gtilde")]
    ProductGtilde {
        #[serde(with = "rational_vec")]
        c: Vec<Rational>,
    },
    #[serde(rename = "exp")]
    Exp,
    #[serde(rename = "completed-cycles")]
    CompletedCycles { r: u32 },
    #[serde(rename = "log-series")]
    LogSeries {
        #[serde(rename = "A", with = "rational_vec")]
        a: Vec<Rational>,
    },
}

impl WeightFunction {
    pub fn exp() -> Self {
        WeightFunction::Exp
    }

    /// Strictly monotone weight 1 + z.
    pub fn strictly_monotone() -> Self {
        WeightFunction::ProductG { c: vec![Rational::one()] }
    }

    /// Monotone weight 1/(1 - z).
    pub fn monotone() -> Self {
        WeightFunction::ProductGtilde { c: vec![Rational::one()] }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let w: WeightFunction =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("weight: {e}")))?;
        w.validate()?;
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weight serializes")
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WeightFunction::CompletedCycles { r: 0 } => {
                Err(Error::InvalidInput("completed cycles need r >= 1".into()))
            }
            WeightFunction::LogSeries { a } if a.first().is_some_and(|x| !x.is_zero()) => {
                Err(Error::UnsupportedConstantTerm)
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightFunction::ProductG { .. } => "product-G",
            WeightFunction::ProductGtilde { .. } => "product-Gtilde",
            WeightFunction::Exp => "exp",
            WeightFunction::CompletedCycles { .. } => "completed-cycles",
            WeightFunction::LogSeries { .. } => "log-series",
        }
    }

    /// A_0..A_K with log G(beta z) = sum A_k beta^k z^k.
    pub fn a_coefficients(&self, k_max: usize) -> Result<Vec<Rational>> {
        let mut a = vec![Rational::zero(); k_max + 1];
        match self {
            WeightFunction::ProductG { c } => {
                for (k, ak) in a.iter_mut().enumerate().skip(1) {
                    let p: Rational = c.iter().map(|x| pow(x, k as u32)).sum();
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    *ak = p * int(sign) / int(k as i64);
                }
            }
            WeightFunction::ProductGtilde { c } => {
                for (k, ak) in a.iter_mut().enumerate().skip(1) {
                    let p: Rational = c.iter().map(|x| pow(x, k as u32)).sum();
                    *ak = p / int(k as i64);
                }
            }
            WeightFunction::Exp => {
                if k_max >= 1 {
                    a[1] = Rational::one();
                }
            }
            WeightFunction::CompletedCycles { r } => {
                if r % 2 == 0 {
                    return Err(Error::UnsupportedConstantTerm);
                }
                let s = special_series(Special::S, Var::Z, *r as usize);
                for j in 0..=(*r as usize) / 2 {
                    let k = *r as usize - 2 * j;
                    if k <= k_max {
                        a[k] = s.coeffs()[2 * j].clone() / factorial_q(k as u32);
                    }
                }
            }
            WeightFunction::LogSeries { a: given } => {
                if given.first().is_some_and(|x| !x.is_zero()) {
                    return Err(Error::UnsupportedConstantTerm);
                }
                for (k, ak) in a.iter_mut().enumerate() {
                    if let Some(x) = given.get(k) {
                        *ak = x.clone();
                    }
                }
            }
        }
        Ok(a)
    }

    /// Taylor coefficients G_0..G_K of G(z).
    pub fn g_coefficients(&self, k_max: usize) -> Result<Vec<Rational>> {
        match self {
            WeightFunction::ProductG { c } => Ok(elementary(c, k_max)),
            WeightFunction::ProductGtilde { c } => Ok(complete(c, k_max)),
            WeightFunction::Exp => Ok((0..=k_max as u32).map(|n| factorial_q(n).recip()).collect()),
            WeightFunction::CompletedCycles { .. } | WeightFunction::LogSeries { .. } => {
                let a = self.a_coefficients(k_max)?;
                let g = TruncSeries::new(Var::Z, a).exp()?;
                Ok(g.coeffs().to_vec())
            }
        }
    }

    /// Product of G_{lambda_i}; only for kinds with e/h semantics.
    pub fn g_lambda_weight(&self, lambda: &Partition) -> Result<Rational> {
        match self {
            WeightFunction::ProductG { .. } | WeightFunction::ProductGtilde { .. } | WeightFunction::Exp => {
                let top = lambda.parts().first().copied().unwrap_or(0) as usize;
                let g = self.g_coefficients(top)?;
                Ok(lambda.parts().iter().map(|&p| g[p as usize].clone()).product())
            }
            _ => Err(Error::UnsupportedWeightKind(format!(
                "{} has no signature weights",
                self.name()
            ))),
        }
    }

    /// prod over cells of G(beta * content), truncated at beta^R.
    pub fn content_product_series(&self, lambda: &Partition, r_max: usize) -> Result<TruncSeries> {
        let g = self.g_coefficients(r_max)?;
        let mut acc = TruncSeries::one(Var::Beta, r_max);
        for c in lambda.contents() {
            if c == 0 {
                continue;
            }
            let cell = TruncSeries::new(Var::Beta, g.clone()).scale_variable(&int(c));
            acc = acc.mul(&cell)?;
        }
        if !g[0].is_one() {
            let n = lambda.contents().iter().filter(|&&c| c == 0).count() as u32;
            acc = acc.scale(&pow(&g[0], n));
        }
        Ok(acc)
    }
}

fn elementary(c: &[Rational], k_max: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); k_max + 1];
    e[0] = Rational::one();
    for x in c {
        for k in (1..=k_max).rev() {
            let prev = e[k - 1].clone();
            e[k] += prev * x;
        }
    }
    e
}

fn complete(c: &[Rational], k_max: usize) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); k_max + 1];
    h[0] = Rational::one();
    for x in c {
        for k in 1..=k_max {
            let prev = h[k - 1].clone();
            h[k] += prev * x;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn monotone_log_coefficients() {
        let a = WeightFunction::monotone().a_coefficients(4).unwrap();
        assert_eq!(a, vec![int(0), int(1), rat(1, 2), rat(1, 3), rat(1, 4)]);
        let a = WeightFunction::strictly_monotone().a_coefficients(4).unwrap();
        assert_eq!(a, vec![int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]);
    }

    #[test]
    fn completed_cycles_constant_term() {
        assert_eq!(
            WeightFunction::CompletedCycles { r: 2 }.a_coefficients(3),
            Err(Error::UnsupportedConstantTerm)
        );
        let a = WeightFunction::CompletedCycles { r: 3 }.a_coefficients(3).unwrap();
        assert_eq!(a, vec![int(0), rat(1, 24), int(0), rat(1, 6)]);
    }

    #[test]
    fn g_coefficients_agree_with_exp_of_log() {
        let c = vec![int(1), rat(1, 2), rat(-2, 3)];
        for w in [WeightFunction::ProductG { c: c.clone() }, WeightFunction::ProductGtilde { c }] {
            let a = w.a_coefficients(6).unwrap();
            let via_log = TruncSeries::new(Var::Z, a).exp().unwrap();
            assert_eq!(via_log.coeffs(), &w.g_coefficients(6).unwrap()[..]);
        }
    }

    #[test]
    fn json_round_trip() {
        for s in [
            r#"{"kind":"product-G","c":["1","1/2"]}"#,
            r#"{"kind":"product-Gtilde","c":["1"]}"#,
            r#"{"kind":"exp"}"#,
            r#"{"kind":"completed-cycles","r":2}"#,
            r#"{"kind":"log-series","A":["0","1","1/4"]}"#,
        ] {
            let w = WeightFunction::from_json(s).unwrap();
            assert_eq!(w.to_json(), s);
        }
        assert!(WeightFunction::from_json(r#"{"kind":"log-series","A":["1"]}"#).is_err());
    }

    #[test]
    fn signature_weights_refused_for_log_series() {
        let w = WeightFunction::LogSeries { a: vec![int(0), int(1)] };
        assert!(matches!(
            w.g_lambda_weight(&Partition::new(vec![1]).unwrap()),
            Err(Error::UnsupportedWeightKind(_))
        ));
    }
}
