use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::TauVector;
use crate::combinat::{enumerate_matchings, PerfectMatching};
use crate::linalg::QMatrix;
use crate::{Bounds, Error, Rational, Result};

/// Number of closed loops in the superposition of two perfect matchings
/// on the same ground set. Every vertex has one edge from each matching,
/// so the union is a disjoint set of alternating cycles; the count lies
/// in `1..=d/2` and equals `d/2` exactly when `a == b`.
pub fn loop_count(a: &PerfectMatching, b: &PerfectMatching) -> Result<u32> {
    if a.ground_set() != b.ground_set() {
        return Err(Error::GroundSetMismatch);
    }
    let partner = |m: &PerfectMatching| -> BTreeMap<u32, u32> {
        m.pairs()
            .iter()
            .flat_map(|&(i, j)| [(i, j), (j, i)])
            .collect()
    };
    let pa = partner(a);
    let pb = partner(b);
    let mut visited = BTreeSet::new();
    let mut count = 0;
    for &v in &a.ground_set() {
        if visited.contains(&v) {
            continue;
        }
        count += 1;
        let mut cur = v;
        loop {
            visited.insert(cur);
            let w = pa[&cur];
            visited.insert(w);
            cur = pb[&w];
            if cur == v {
                break;
            }
        }
    }
    Ok(count)
}

/// The pairing matrix on the matching basis of the pure diagonal slice.
/// Exponents are stored un-evaluated so one build serves every `x`;
/// the evaluated entry is `x^exponent`.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    d: u32,
    x: Rational,
    basis: Vec<PerfectMatching>,
    exponents: Vec<Vec<u32>>,
}

pub fn build_gram(d: u32, x: Rational, bounds: &Bounds) -> Result<GramMatrix> {
    let basis = enumerate_matchings(d)?;
    bounds.check_dim(basis.len(), "matching basis")?;
    let dim = basis.len();
    let mut exponents = vec![vec![0u32; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let e = loop_count(&basis[i], &basis[j])?;
            exponents[i][j] = e;
            exponents[j][i] = e;
        }
    }
    Ok(GramMatrix {
        d,
        x,
        basis,
        exponents,
    })
}

impl GramMatrix {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PerfectMatching] {
        &self.basis
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exponents[i][j]
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn evaluated(&self) -> QMatrix {
        QMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.x.pow(self.exponents[i][j] as i32)
        })
    }

    pub fn rank(&self) -> usize {
        self.evaluated().rank()
    }

    /// Matrix action in the matching basis.
    pub fn apply(&self, v: &TauVector) -> Result<TauVector> {
        if v.d() != self.d {
            return Err(Error::GroundSetMismatch);
        }
        let coords = v.coords(&self.basis)?;
        let image = self.evaluated().mul_vec(&coords)?;
        TauVector::from_coords(self.d, &self.basis, &image)
    }

    /// Returns `Some(c)` if `G v = c v` exactly, `None` otherwise.
    pub fn eigencheck(&self, v: &TauVector) -> Result<Option<Rational>> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let coords = v.coords(&self.basis)?;
        let image = self.evaluated().mul_vec(&coords)?;
        let k = coords
            .iter()
            .position(|q| !q.is_zero())
            .expect("nonzero vector");
        let c = &image[k] / &coords[k];
        let ok = coords.iter().zip(&image).all(|(a, b)| &(a * &c) == b);
        Ok(ok.then_some(c))
    }

    /// Exact basis of the null space; empty means the pairing slice is
    /// nondegenerate.
    pub fn kernel_basis(&self) -> Result<Vec<TauVector>> {
        self.evaluated()
            .right_kernel()
            .into_iter()
            .map(|row| TauVector::from_coords(self.d, &self.basis, &row))
            .collect()
    }
}
