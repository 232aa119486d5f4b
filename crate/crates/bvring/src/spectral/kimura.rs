use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive};

use super::TauVector;
use crate::combinat::{PerfectMatching, Permutation};
use crate::ring::{enumerate_monomials_on, Monomial, RingElement, RingParams};
use crate::{rat, Bounds, Error, Rational, Result};

fn factorial_checked(k: u32) -> Option<usize> {
    (1..=k as usize).try_fold(1usize, |acc, v| acc.checked_mul(v))
}

/// The finite-dimensionality relation on `d = 2(x+1)` points, as a
/// matching combination: the alternating sum over `g` in `S_{x+1}` of the
/// matchings pairing `i` with `x+1+g(i)`. It has `(x+1)!` terms, all with
/// coefficient `1` or `-1`.
pub fn kimura_tau_vector(x: u32, bounds: &Bounds) -> Result<TauVector> {
    if x == 0 {
        return Err(Error::NonIntegerRank("0".into()));
    }
    let k = x + 1;
    let terms =
        factorial_checked(k).ok_or_else(|| Error::ResourceExceeded(format!("({k})! overflows")))?;
    bounds.check_dim(terms, "alternating sum")?;
    let mut v = TauVector::zero(2 * k)?;
    for g in Permutation::all(k) {
        let pairs = (1..=k).map(|i| (i, k + g.apply(i)));
        v.add_term(PerfectMatching::new(pairs)?, rat(g.sign() as i64))?;
    }
    Ok(v)
}

/// The same relation as a homogeneous ring element of codegree `2(x+1)`
/// on `n = 2(x+1)` factors with no divisor classes and parameter `x`.
pub fn kimura_relation(x: u32, bounds: &Bounds) -> Result<RingElement> {
    let params = RingParams::new(2 * (x + 1), vec![], rat(x as i64))?;
    kimura_tau_vector(x, bounds)?.to_ring_element(&params)
}

/// Spanning set of the codegree-`m` part of the permutation-stable ideal
/// generated by the relation: every injective relabeling of
/// `kimura_relation(x)` into `1..=n`, multiplied by every canonical
/// monomial supported on the complementary indices, deduplicated up to
/// sign. Empty when `n` or `m` is below `2(x+1)`. Requires `p.x` to be a
/// positive integer.
pub fn kimura_ideal_slice(p: &RingParams, m: u32, bounds: &Bounds) -> Result<Vec<RingElement>> {
    if !p.x().is_integer() || !p.x().is_positive() {
        return Err(Error::NonIntegerRank(p.x().to_string()));
    }
    let x = p
        .x()
        .to_integer()
        .to_u32()
        .ok_or_else(|| Error::ResourceExceeded("x too large".into()))?;
    if m > p.top_codegree() {
        return Err(Error::CodegreeOutOfRange {
            m,
            max: p.top_codegree(),
        });
    }
    let k = 2 * (x + 1);
    let mut out = Vec::new();
    if p.n() < k || m < k {
        return Ok(out);
    }
    let rel = kimura_relation(x, bounds)?;
    let all: Vec<u32> = (1..=p.n()).collect();
    let mut seen = BTreeSet::new();
    for subset in all.iter().copied().combinations(k as usize) {
        let complement: Vec<u32> = all
            .iter()
            .copied()
            .filter(|i| !subset.contains(i))
            .collect();
        let monomials = enumerate_monomials_on(p, &complement, m - k)?;
        if monomials.is_empty() {
            continue;
        }
        for image in subset.iter().copied().permutations(k as usize) {
            let relabeled = rel.relabel_into(p, |i| image[(i - 1) as usize])?;
            for mon in &monomials {
                let factor = RingElement::monomial(p, mon.clone(), Rational::one())?;
                let e = relabeled.checked_mul(&factor)?;
                if e.is_zero() {
                    continue;
                }
                let (key, normalized) = sign_normal(e);
                if seen.insert(key) {
                    out.push(normalized);
                }
            }
        }
    }
    Ok(out)
}

/// Flips the overall sign so the coefficient of the smallest monomial is
/// positive; the key doubles as a canonical identity for deduplication.
fn sign_normal(e: RingElement) -> (Vec<(Monomial, Rational)>, RingElement) {
    let negate = e.terms().next().is_some_and(|(_, c)| c.is_negative());
    let normalized = if negate { -&e } else { e };
    let key = normalized
        .terms()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    (key, normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::row_span_rank;
    use crate::spectral::build_gram;

    fn pm(pairs: &[(u32, u32)]) -> PerfectMatching {
        PerfectMatching::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn relation_at_one() {
        let bounds = Bounds::default();
        let v = kimura_tau_vector(1, &bounds).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.coefficient(&pm(&[(1, 3), (2, 4)])), rat(1));
        assert_eq!(v.coefficient(&pm(&[(1, 4), (2, 3)])), rat(-1));
        assert!(kimura_tau_vector(0, &bounds).is_err());
    }

    #[test]
    fn relation_term_counts() {
        let bounds = Bounds::default();
        for x in [1u32, 2, 3] {
            let v = kimura_tau_vector(x, &bounds).unwrap();
            assert_eq!(v.len(), factorial_checked(x + 1).unwrap());
            let e = kimura_relation(x, &bounds).unwrap();
            assert_eq!(e.codegree(), Some(2 * (x + 1)));
        }
    }

    #[test]
    fn relation_lies_in_gram_kernel() {
        let bounds = Bounds::default();
        for x in [1u32, 2] {
            let g = build_gram(2 * (x + 1), rat(x as i64), &bounds).unwrap();
            let v = kimura_tau_vector(x, &bounds).unwrap();
            assert!(g.apply(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn slice_orbit_at_four_points() {
        let bounds = Bounds::default();
        let p = RingParams::new(4, vec![], rat(1)).unwrap();
        let slice = kimura_ideal_slice(&p, 4, &bounds).unwrap();
        assert_eq!(slice.len(), 3);
        let basis = crate::combinat::enumerate_matchings(4).unwrap();
        let rows: Vec<Vec<Rational>> = slice
            .iter()
            .map(|e| {
                TauVector::from_ring_element(e)
                    .unwrap()
                    .coords(&basis)
                    .unwrap()
            })
            .collect();
        assert_eq!(row_span_rank(&rows), 2);
    }

    #[test]
    fn slice_degenerate_cases() {
        let bounds = Bounds::default();
        let p = RingParams::new(3, vec![], rat(1)).unwrap();
        assert!(kimura_ideal_slice(&p, 4, &bounds).unwrap().is_empty());
        let p = RingParams::new(4, vec![], rat(1)).unwrap();
        assert!(kimura_ideal_slice(&p, 2, &bounds).unwrap().is_empty());
        let q = RingParams::new(4, vec![], crate::ratio(1, 2)).unwrap();
        assert!(kimura_ideal_slice(&q, 4, &bounds).is_err());
        let r = RingParams::new(4, vec![], rat(-1)).unwrap();
        assert!(kimura_ideal_slice(&r, 4, &bounds).is_err());
    }

    #[test]
    fn slice_with_spectators() {
        let bounds = Bounds::default();
        let p = RingParams::new(5, vec![], rat(1)).unwrap();
        let at_four = kimura_ideal_slice(&p, 4, &bounds).unwrap();
        // relabelings only: every element is pure diagonal on some 4 indices
        assert!(!at_four.is_empty());
        assert!(at_four
            .iter()
            .all(|e| e.terms().all(|(mon, _)| mon.o_indices().is_empty())));
        assert!(at_four
            .iter()
            .any(|e| e.terms().any(|(mon, _)| mon.support().contains(&5))));

        let at_six = kimura_ideal_slice(&p, 6, &bounds).unwrap();
        // complementary point factors appear at the higher codegree
        assert!(at_six
            .iter()
            .any(|e| e.terms().all(|(mon, _)| !mon.o_indices().is_empty())));
        for e in &at_six {
            assert_eq!(e.codegree(), Some(6));
        }
    }
}
