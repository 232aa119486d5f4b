use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A square-free monomial in canonical form: diagonal factors `tau(i,j)`
/// stored as sorted pairs `i < j`, divisor factors `l(s,i)` sorted by
/// `(s, i)`, and point factors `o(i)` as a sorted index list. The three
/// supports are pairwise disjoint and no index repeats. The derived
/// ordering (pairs, then divisor factors, then point indices) is the
/// canonical basis order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pairs: Vec<(u32, u32)>,
    l_factors: Vec<(u32, u32)>,
    o_indices: Vec<u32>,
}

impl Monomial {
    pub fn new(
        pairs: impl IntoIterator<Item = (u32, u32)>,
        l_factors: impl IntoIterator<Item = (u32, u32)>,
        o_indices: impl IntoIterator<Item = u32>,
    ) -> Result<Self> {
        let mut pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        pairs.sort_unstable();
        let mut l_factors: Vec<(u32, u32)> = l_factors.into_iter().collect();
        l_factors.sort_unstable();
        let mut o_indices: Vec<u32> = o_indices.into_iter().collect();
        o_indices.sort_unstable();

        let mut seen = BTreeSet::new();
        let mut claim = |i: u32| -> Result<()> {
            if i == 0 {
                return Err(Error::IndexOutOfRange { index: 0, n: 0 });
            }
            if !seen.insert(i) {
                return Err(Error::InvalidMatching(format!("index {i} used twice")));
            }
            Ok(())
        };
        for &(i, j) in &pairs {
            if i == j {
                return Err(Error::DiagonalIndex(i));
            }
            claim(i)?;
            claim(j)?;
        }
        for &(s, i) in &l_factors {
            if s == 0 {
                return Err(Error::DivisorOutOfRange { label: 0, rho: 0 });
            }
            claim(i)?;
        }
        for &i in &o_indices {
            claim(i)?;
        }
        Ok(Monomial {
            pairs,
            l_factors,
            o_indices,
        })
    }

    pub fn one() -> Self {
        Monomial {
            pairs: Vec::new(),
            l_factors: Vec::new(),
            o_indices: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty() && self.l_factors.is_empty() && self.o_indices.is_empty()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn l_factors(&self) -> &[(u32, u32)] {
        &self.l_factors
    }

    pub fn o_indices(&self) -> &[u32] {
        &self.o_indices
    }

    pub fn codegree(&self) -> u32 {
        2 * self.pairs.len() as u32 + self.l_factors.len() as u32 + 2 * self.o_indices.len() as u32
    }

    /// Indices appearing in any factor, ascending.
    pub fn support(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self
            .pairs
            .iter()
            .flat_map(|&(i, j)| [i, j])
            .chain(self.l_factors.iter().map(|&(_, i)| i))
            .chain(self.o_indices.iter().copied())
            .collect();
        s.sort_unstable();
        s
    }

    pub fn max_index(&self) -> u32 {
        self.support().last().copied().unwrap_or(0)
    }

    pub fn max_label(&self) -> u32 {
        self.l_factors.iter().map(|&(s, _)| s).max().unwrap_or(0)
    }

    /// True if this is the unique monomial of top codegree `2n`.
    pub fn is_top(&self, n: u32) -> bool {
        self.pairs.is_empty()
            && self.l_factors.is_empty()
            && self.o_indices.len() as u32 == n
            && self.o_indices.iter().zip(1..=n).all(|(&a, b)| a == b)
    }

    /// The monomial with the same diagonal and divisor factors whose point
    /// factors fill the complement of the support in `1..=n`. Pairing a
    /// pure diagonal or divisor monomial against its complement dual picks
    /// out the top class.
    pub fn complement_dual(&self, n: u32) -> Result<Monomial> {
        let support: BTreeSet<u32> = self.support().into_iter().collect();
        if support.last().is_some_and(|&m| m > n) {
            return Err(Error::IndexOutOfRange {
                index: *support.last().unwrap(),
                n,
            });
        }
        let o: Vec<u32> = (1..=n).filter(|i| !support.contains(i)).collect();
        Monomial::new(self.pairs.clone(), self.l_factors.clone(), o)
    }

    /// Applies an index map, re-canonicalizing. Errors if the rewritten
    /// factors collide (the map was not injective on the support).
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<Monomial> {
        Monomial::new(
            self.pairs.iter().map(|&(i, j)| (f(i), f(j))),
            self.l_factors.iter().map(|&(s, i)| (s, f(i))),
            self.o_indices.iter().map(|&i| f(i)),
        )
    }
}

impl fmt::Display for Monomial {
    /// Parseable product form, e.g. `tau(1,2)*l(1,3)*o(4)`; the empty
    /// monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, "*")
            }
        };
        for &(i, j) in &self.pairs {
            sep(f)?;
            write!(f, "tau({i},{j})")?;
        }
        for &(s, i) in &self.l_factors {
            sep(f)?;
            write!(f, "l({s},{i})")?;
        }
        for &i in &self.o_indices {
            sep(f)?;
            write!(f, "o({i})")?;
        }
        Ok(())
    }
}
