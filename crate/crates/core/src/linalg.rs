//! Exact row reduction.

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Rows in echelon form, grown one row at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    /// Adds the row if it is independent of the ones already present.
    pub fn try_add(&mut self, v: &[Rational]) -> bool {
        let v = self.reduce(v.to_vec());
        let Some(p) = v.iter().take(self.cols).position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        let v: Vec<Rational> = v.into_iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Solves A x = b for square nonsingular A; `None` if singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    debug_assert!(m.iter().enumerate().all(|(i, r)| r[i].is_one()));
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]);
        assert!(solve(&[vec![int(1), int(2)], vec![int(2), int(4)]], &[int(1), int(2)]).is_none());
    }

    #[test]
    fn echelon_rank() {
        let mut e = Echelon::new(2);
        assert!(e.try_add(&[int(1), int(2)]));
        assert!(!e.try_add(&[int(2), int(4)]));
        assert!(e.try_add(&[int(0), int(1)]));
        assert!(e.is_full());
    }
}
