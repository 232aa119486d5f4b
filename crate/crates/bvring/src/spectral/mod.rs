//! The pairing matrix on pure diagonal monomials, its Specht-module
//! eigenstructure, and the theorem-level verifiers.

mod gram;
mod kimura;
mod specht;
mod verify;

pub use gram::{build_gram, loop_count, GramMatrix};
pub use kimura::{kimura_ideal_slice, kimura_relation, kimura_tau_vector};
pub use specht::{phi, phi_polytabloid};
pub use verify::{
    verify_block_structure, verify_bv_relations, verify_delta_closure, verify_delta_closure_on,
    verify_eigen, verify_kernel_generated, verify_kimura_identity, verify_perfect_pairing,
    BlockStructureReport, DeltaClosureReport, DeltaClosureRow, EigenReport, EigenRow,
    KernelGenReport, KernelGenResult, KimuraIdentityReport, PairingSliceReport,
    PerfectPairingReport, RelationsReport,
};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combinat::{PerfectMatching, Permutation};
use crate::ring::{Monomial, RingElement, RingParams};
use crate::{Error, Rational, Result};

/// A rational combination of perfect matchings of `1..=d`: an element of
/// the pure diagonal slice of codegree `d` on `d` factors. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauVector {
    d: u32,
    terms: BTreeMap<PerfectMatching, Rational>,
}

impl TauVector {
    pub fn zero(d: u32) -> Result<Self> {
        if !d.is_multiple_of(2) {
            return Err(Error::OddGroundSet(d));
        }
        Ok(TauVector {
            d,
            terms: BTreeMap::new(),
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn add_term(&mut self, m: PerfectMatching, coef: Rational) -> Result<()> {
        if m.ground_set() != (1..=self.d).collect::<Vec<u32>>() {
            return Err(Error::GroundSetMismatch);
        }
        if coef.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PerfectMatching, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PerfectMatching) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> TauVector {
        let mut out = TauVector {
            d: self.d,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (m, q) in &self.terms {
            out.terms.insert(m.clone(), q * c);
        }
        out
    }

    pub fn checked_add(&self, other: &TauVector) -> Result<TauVector> {
        if self.d != other.d {
            return Err(Error::GroundSetMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    /// Entry-wise relabeling by a permutation of `1..=d`.
    pub fn act(&self, g: &Permutation) -> Result<TauVector> {
        if g.degree() != self.d {
            return Err(Error::GroundSetMismatch);
        }
        let mut out = TauVector::zero(self.d)?;
        for (m, c) in &self.terms {
            out.add_term(m.relabel(|i| g.apply(i))?, c.clone())?;
        }
        Ok(out)
    }

    /// Coordinates in a fixed matching basis. Every stored matching must
    /// occur in the basis.
    pub fn coords(&self, basis: &[PerfectMatching]) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in &self.terms {
            let Some(k) = basis.iter().position(|b| b == m) else {
                return Err(Error::InvalidMatching(format!("{m:?} not in basis")));
            };
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(d: u32, basis: &[PerfectMatching], coords: &[Rational]) -> Result<Self> {
        if basis.len() != coords.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coords.len(),
            });
        }
        let mut out = TauVector::zero(d)?;
        for (m, c) in basis.iter().zip(coords) {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    /// The same combination read as a ring element on `n = d` factors.
    pub fn to_ring_element(&self, params: &RingParams) -> Result<RingElement> {
        if params.n() != self.d {
            return Err(Error::GroundSetMismatch);
        }
        let mut out = RingElement::zero(params.clone());
        for (m, c) in &self.terms {
            let mon = Monomial::new(m.pairs().iter().copied(), [], [])?;
            out = out.checked_add(&RingElement::monomial(params, mon, c.clone())?)?;
        }
        Ok(out)
    }

    /// Inverse of [`TauVector::to_ring_element`]; the element must consist
    /// purely of full diagonal monomials.
    pub fn from_ring_element(e: &RingElement) -> Result<Self> {
        let terms = e.as_full_matchings().ok_or_else(|| {
            Error::InvalidMatching("element is not a combination of full matchings".into())
        })?;
        let mut out = TauVector::zero(e.params().n())?;
        for (m, c) in terms {
            out.add_term(m, c)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn pm(pairs: &[(u32, u32)]) -> PerfectMatching {
        PerfectMatching::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn term_bookkeeping() {
        let mut v = TauVector::zero(4).unwrap();
        v.add_term(pm(&[(1, 2), (3, 4)]), rat(2)).unwrap();
        v.add_term(pm(&[(1, 2), (3, 4)]), rat(-2)).unwrap();
        assert!(v.is_zero());
        v.add_term(pm(&[(1, 3), (2, 4)]), rat(1)).unwrap();
        assert_eq!(v.len(), 1);
        assert!(TauVector::zero(3).is_err());
        let mut w = TauVector::zero(4).unwrap();
        assert!(w.add_term(pm(&[(1, 2)]), rat(1)).is_err());
    }

    #[test]
    fn coords_round_trip() {
        let basis = crate::combinat::enumerate_matchings(4).unwrap();
        let mut v = TauVector::zero(4).unwrap();
        v.add_term(basis[1].clone(), rat(3)).unwrap();
        v.add_term(basis[2].clone(), rat(-1)).unwrap();
        let c = v.coords(&basis).unwrap();
        assert_eq!(c, vec![rat(0), rat(3), rat(-1)]);
        assert_eq!(TauVector::from_coords(4, &basis, &c).unwrap(), v);
    }

    #[test]
    fn ring_element_round_trip() {
        let params = RingParams::new(4, vec![], rat(1)).unwrap();
        let mut v = TauVector::zero(4).unwrap();
        v.add_term(pm(&[(1, 3), (2, 4)]), rat(1)).unwrap();
        v.add_term(pm(&[(1, 4), (2, 3)]), rat(-1)).unwrap();
        let e = v.to_ring_element(&params).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(TauVector::from_ring_element(&e).unwrap(), v);
    }

    #[test]
    fn action_relabels_matchings() {
        let mut v = TauVector::zero(4).unwrap();
        v.add_term(pm(&[(1, 2), (3, 4)]), rat(1)).unwrap();
        let g = Permutation::transposition(4, 2, 3);
        let w = v.act(&g).unwrap();
        assert_eq!(w.coefficient(&pm(&[(1, 3), (2, 4)])), rat(1));
    }
}
