//! Paths in `Q_n` written as a base vertex plus the sequence of flipped
//! digits, and the sign calculus for reordering those digits.
//!
//! Swapping two adjacent unequal flip indices negates the product of vertex
//! projections along the path; swapping equal indices does nothing. Sorting
//! the indices therefore yields a canonical word and a sign.

use std::fmt;

use crate::error::{invalid, Result};
use crate::hypercube::{check_dim, check_label, flip_unchecked};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    n: usize,
    base: usize,
    indices: Vec<usize>,
}

impl PathWord {
    pub fn new(n: usize, base: usize, indices: Vec<usize>) -> Result<Self> {
        check_dim(n)?;
        check_label(base, n)?;
        if let Some(&k) = indices.iter().find(|&&k| k >= n) {
            return Err(invalid(format!("flip index {k} is not below n = {n}")));
        }
        Ok(Self { n, base, indices })
    }

    pub fn trivial(n: usize, base: usize) -> Result<Self> {
        Self::new(n, base, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn endpoint(&self) -> usize {
        self.indices.iter().fold(self.base, |x, &k| flip_unchecked(x, k))
    }

    /// The `len() + 1` vertices visited, starting at the base.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.indices.len() + 1);
        let mut x = self.base;
        out.push(x);
        for &k in &self.indices {
            x = flip_unchecked(x, k);
            out.push(x);
        }
        out
    }

    /// Every flip index occurs an even number of times.
    pub fn is_loop(&self) -> bool {
        let mut counts = vec![0usize; self.n];
        for &k in &self.indices {
            counts[k] += 1;
        }
        counts.iter().all(|c| c % 2 == 0)
    }

    pub fn canonicalize(&self) -> SignedWord {
        let mut idx = self.indices.clone();
        let mut negative = false;
        // stable bubble sort; only unequal swaps flip the sign
        let len = idx.len();
        for pass in 0..len {
            let mut swapped = false;
            for i in 0..len.saturating_sub(1 + pass) {
                if idx[i] > idx[i + 1] {
                    idx.swap(i, i + 1);
                    negative = !negative;
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        SignedWord {
            sign: if negative { -1 } else { 1 },
            word: PathWord { n: self.n, base: self.base, indices: idx },
        }
    }

    pub fn concat(&self, other: &PathWord) -> Result<PathWord> {
        if self.n != other.n {
            return Err(invalid("cannot concatenate words of different dimension"));
        }
        if self.endpoint() != other.base {
            return Err(invalid(format!(
                "word ends at {} but the next starts at {}",
                self.endpoint(),
                other.base
            )));
        }
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        Ok(PathWord { n: self.n, base: self.base, indices })
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:0width$b};", self.base, width = self.n)?;
        for k in &self.indices {
            write!(f, " {k}")?;
        }
        write!(f, "]")
    }
}

/// `sign * word`, with `word` in canonical (nondecreasing) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub sign: i8,
    pub word: PathWord,
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { '-' } else { '+' };
        write!(f, "{s}{}", self.word)
    }
}

/// The two orders `μν` and `νμ` of two loops at the same base.
pub fn loop_commutator_word_pair(mu: &PathWord, nu: &PathWord) -> Result<(PathWord, PathWord)> {
    if !mu.is_loop() || !nu.is_loop() {
        return Err(invalid("commutator words need two loops"));
    }
    if mu.base != nu.base {
        return Err(invalid("loops must share their base vertex"));
    }
    Ok((mu.concat(nu)?, nu.concat(mu)?))
}
