use std::fmt;

use crate::error::{invalid, Result};

/// A permutation of `[n]`, stored as its image sequence: `images[i]` is `iσ` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(invalid(format!("{images:?} is not a permutation of [{n}]")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based images, the form used in labels.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(invalid("permutation images are 1-based"));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The preimage of `j`.
    #[inline]
    pub fn apply_inverse(&self, j: usize) -> usize {
        self.images
            .iter()
            .position(|&x| x == j)
            .expect("permutation is a bijection")
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Position of this permutation in the lexicographic order of image sequences.
    pub fn lex_rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0;
        let mut used = vec![false; n];
        for (pos, &x) in self.images.iter().enumerate() {
            let smaller_unused = (0..x).filter(|&y| !used[y]).count();
            rank += smaller_unused * factorial(n - 1 - pos);
            used[x] = true;
        }
        rank
    }

    pub fn from_lex_rank(n: usize, mut rank: usize) -> Self {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for pos in 0..n {
            let f = factorial(n - 1 - pos);
            images.push(pool.remove(rank / f));
            rank %= f;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Every permutation of `[n]`, lexicographic in image sequence.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(factorial(n));
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_enumeration() {
        let perms = all_permutations(3);
        assert_eq!(perms.len(), 6);
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
        for (r, p) in perms.iter().enumerate() {
            assert_eq!(p.lex_rank(), r);
            assert_eq!(&Permutation::from_lex_rank(3, r), p);
            assert_eq!(p.inverse().inverse(), *p);
        }
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
    }

    #[test]
    fn validation_and_labels() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.to_string(), "[2,3,1]");
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply_inverse(0), 2);
    }
}
