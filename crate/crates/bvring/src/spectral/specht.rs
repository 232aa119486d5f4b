use itertools::Itertools;
use num_traits::One;

use super::TauVector;
use crate::combinat::{matchings_of_set, polytabloid, Tabloid, TabloidVector, YoungTableau};
use crate::{Error, Rational, Result};

/// The Specht embedding on a single tabloid with even row sizes: the
/// product over rows of the sum over perfect matchings of each row,
/// expanded in the matching basis with all coefficients 1.
pub fn phi(t: &Tabloid) -> Result<TauVector> {
    for row in t.rows() {
        if row.len() % 2 != 0 {
            return Err(Error::OddRowSize(row.len() as u32));
        }
    }
    let d = t.size();
    let mut out = TauVector::zero(d)?;
    if t.rows().is_empty() {
        out.add_term(crate::combinat::PerfectMatching::empty(), Rational::one())?;
        return Ok(out);
    }
    let per_row: Vec<Vec<crate::combinat::PerfectMatching>> =
        t.rows().iter().map(|row| matchings_of_set(row)).collect();
    for choice in per_row.iter().multi_cartesian_product() {
        let pairs = choice.iter().flat_map(|m| m.pairs().iter().copied());
        let full = crate::combinat::PerfectMatching::new(pairs)?;
        out.add_term(full, Rational::one())?;
    }
    Ok(out)
}

fn phi_vector(d: u32, v: &TabloidVector) -> Result<TauVector> {
    let mut out = TauVector::zero(d)?;
    for (t, c) in v.iter() {
        out = out.checked_add(&phi(t)?.scale(c))?;
    }
    Ok(out)
}

/// The image of the polytabloid `E_T` under the Specht embedding: a
/// vector of the copy of the irreducible module for `T`'s shape inside
/// the matching basis.
pub fn phi_polytabloid(t: &YoungTableau) -> Result<TauVector> {
    for row in t.rows() {
        if row.len() % 2 != 0 {
            return Err(Error::OddRowSize(row.len() as u32));
        }
    }
    phi_vector(t.size(), &polytabloid(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{
        enumerate_standard_tableaux, hook_length_dim, PerfectMatching, Permutation,
    };
    use crate::rat;

    fn pm(pairs: &[(u32, u32)]) -> PerfectMatching {
        PerfectMatching::new(pairs.iter().copied()).unwrap()
    }

    fn tabloid(rows: &[&[u32]]) -> Tabloid {
        Tabloid::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn phi_on_pair_rows() {
        let v = phi(&tabloid(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.coefficient(&pm(&[(1, 2), (3, 4)])), rat(1));
    }

    #[test]
    fn phi_on_single_row() {
        let v = phi(&tabloid(&[&[1, 2, 3, 4]])).unwrap();
        assert_eq!(v.len(), 3);
        for (_, c) in v.iter() {
            assert_eq!(c, &rat(1));
        }
    }

    #[test]
    fn phi_rejects_odd_rows() {
        assert!(matches!(
            phi(&tabloid(&[&[1, 2, 3], &[4, 5], &[6]])),
            Err(Error::OddRowSize(3))
        ));
    }

    #[test]
    fn phi_is_equivariant() {
        let t = tabloid(&[&[1, 3], &[2, 4]]);
        let g = Permutation::transposition(4, 1, 2);
        let lhs = phi(&t.act(&g)).unwrap();
        let rhs = phi(&t).unwrap().act(&g).unwrap();
        assert_eq!(lhs, rhs);

        let u = tabloid(&[&[1, 2, 5, 6], &[3, 4]]);
        let h = Permutation::from_images(vec![3, 1, 6, 2, 4, 5]);
        assert_eq!(phi(&u.act(&h)).unwrap(), phi(&u).unwrap().act(&h).unwrap());
    }

    #[test]
    fn phi_polytabloid_two_by_two() {
        let t = YoungTableau::new(vec![vec![1, 3], vec![2, 4]]).unwrap();
        let v = phi_polytabloid(&t).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.coefficient(&pm(&[(1, 3), (2, 4)])), rat(2));
        assert_eq!(v.coefficient(&pm(&[(1, 4), (2, 3)])), rat(-2));
    }

    #[test]
    fn phi_polytabloid_single_row() {
        let t = YoungTableau::new(vec![vec![1, 2, 3, 4]]).unwrap();
        let v = phi_polytabloid(&t).unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn specht_images_have_full_rank() {
        // injectivity of the embedding, shape by shape
        use crate::combinat::enumerate_matchings;
        use crate::linalg::row_span_rank;
        for d in [4u32, 6] {
            let basis = enumerate_matchings(d).unwrap();
            for shape in crate::combinat::enumerate_even_partitions(d) {
                let rows: Vec<Vec<Rational>> = enumerate_standard_tableaux(&shape)
                    .iter()
                    .map(|t| phi_polytabloid(t).unwrap().coords(&basis).unwrap())
                    .collect();
                assert_eq!(
                    row_span_rank(&rows) as u64,
                    hook_length_dim(&shape),
                    "shape {:?}",
                    shape.parts()
                );
            }
        }
    }
}
