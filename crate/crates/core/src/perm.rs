//! Small permutations for brute-force counting.

use crate::partition::Partition;

/// Images of 0..n. Composition `a.compose(b)` applies `b` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// Multiplies by the transposition (a b) on the right.
    pub fn times_transposition(&self, a: usize, b: usize) -> Permutation {
        let mut p = self.0.clone();
        p.swap(a, b);
        Permutation(p)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = self.0[i] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(|c| c.len() as u32).collect())
    }

    /// Heap's algorithm over S_n.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut a: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Permutation(a.clone())];
        let mut c = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    a.swap(0, i);
                } else {
                    a.swap(c[i], i);
                }
                out.push(Permutation(a.clone()));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        out
    }

    pub fn of_class(p: &Partition) -> Vec<Permutation> {
        Self::all(p.size() as usize).into_iter().filter(|s| &s.cycle_type() == p).collect()
    }
}

/// Union-find over orbit labels, kept canonical so it can sit in a hash key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbits(pub Vec<u8>);

impl Orbits {
    pub fn discrete(n: usize) -> Self {
        Orbits((0..n as u8).collect())
    }

    pub fn of_permutation(p: &Permutation) -> Self {
        let mut o = Self::discrete(p.len());
        for c in p.cycles() {
            for w in c.windows(2) {
                o = o.join(w[0], w[1]);
            }
        }
        o
    }

    pub fn join(&self, a: usize, b: usize) -> Self {
        let (la, lb) = (self.0[a], self.0[b]);
        if la == lb {
            return self.clone();
        }
        let (keep, drop) = (la.min(lb), la.max(lb));
        Orbits(self.0.iter().map(|&l| if l == drop { keep } else { l }).collect())
    }

    pub fn join_all(&self, other: &Orbits) -> Self {
        let mut o = self.clone();
        for i in 0..other.0.len() {
            for j in i + 1..other.0.len() {
                if other.0[i] == other.0[j] {
                    o = o.join(i, j);
                }
            }
        }
        o
    }

    pub fn is_transitive(&self) -> bool {
        self.0.iter().all(|&l| l == self.0[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::of_class(&Partition::new(vec![2, 1, 1]).unwrap()).len(), 6);
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation(vec![1, 2, 0]);
        let b = Permutation::transposition(3, 0, 1);
        assert_eq!(a.compose(&b).0, vec![2, 1, 0]);
        assert_eq!(a.times_transposition(0, 1), a.compose(&b));
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
    }
}
