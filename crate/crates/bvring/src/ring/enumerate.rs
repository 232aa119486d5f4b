use super::{Monomial, RingParams};
use crate::{Error, Result};

/// All canonical monomials of codegree `m` supported on `1..=n`, in
/// canonical order. These form the monomial basis of the codegree-`m`
/// slice.
pub fn enumerate_monomials(params: &RingParams, m: u32) -> Result<Vec<Monomial>> {
    let indices: Vec<u32> = (1..=params.n()).collect();
    enumerate_monomials_on(params, &indices, m)
}

/// All canonical monomials of codegree `m` supported inside the given
/// strictly increasing index set.
pub fn enumerate_monomials_on(
    params: &RingParams,
    indices: &[u32],
    m: u32,
) -> Result<Vec<Monomial>> {
    if m > params.top_codegree() {
        return Err(Error::CodegreeOutOfRange {
            m,
            max: params.top_codegree(),
        });
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(
            "index set must be strictly increasing".into(),
        ));
    }
    if let Some(&last) = indices.last() {
        params.check_index(last)?;
    }
    if indices.first() == Some(&0) {
        return Err(Error::IndexOutOfRange {
            index: 0,
            n: params.n(),
        });
    }
    let mut out = Vec::new();
    let mut cur = Accum::default();
    rec(indices, m, params.rho(), &mut cur, &mut out);
    out.sort_unstable();
    Ok(out)
}

#[derive(Default)]
struct Accum {
    pairs: Vec<(u32, u32)>,
    ls: Vec<(u32, u32)>,
    os: Vec<u32>,
}

/// Decides the fate of the smallest remaining index: unused, a divisor
/// factor, a point factor, or paired into a diagonal with a later index.
/// Each monomial is produced exactly once.
fn rec(indices: &[u32], m: u32, rho: u32, cur: &mut Accum, out: &mut Vec<Monomial>) {
    if m == 0 {
        out.push(
            Monomial::new(cur.pairs.clone(), cur.ls.clone(), cur.os.clone())
                .expect("disjoint by construction"),
        );
        return;
    }
    let Some((&i, rest)) = indices.split_first() else {
        return;
    };
    rec(rest, m, rho, cur, out);
    for s in 1..=rho {
        cur.ls.push((s, i));
        rec(rest, m - 1, rho, cur, out);
        cur.ls.pop();
    }
    if m >= 2 {
        cur.os.push(i);
        rec(rest, m - 2, rho, cur, out);
        cur.os.pop();
        for (k, &j) in rest.iter().enumerate() {
            cur.pairs.push((i, j));
            let remaining: Vec<u32> = rest[..k].iter().chain(&rest[k + 1..]).copied().collect();
            rec(&remaining, m - 2, rho, cur, out);
            cur.pairs.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn params(n: u32, rho: usize) -> RingParams {
        RingParams::new(n, vec![rat(2); rho], rat(1)).unwrap()
    }

    #[test]
    fn codegree_two_on_two_factors() {
        let p = params(2, 1);
        let ms = enumerate_monomials(&p, 2).unwrap();
        let strings: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(strings, ["o(1)", "o(2)", "l(1,1)*l(1,2)", "tau(1,2)"]);
    }

    #[test]
    fn hand_counted_slices() {
        let p = params(2, 1);
        assert_eq!(enumerate_monomials(&p, 0).unwrap().len(), 1);
        assert_eq!(enumerate_monomials(&p, 1).unwrap().len(), 2);
        assert_eq!(enumerate_monomials(&p, 3).unwrap().len(), 2);
        assert_eq!(enumerate_monomials(&p, 4).unwrap().len(), 1);

        let q = params(2, 0);
        assert_eq!(enumerate_monomials(&q, 1).unwrap().len(), 0);
        assert_eq!(enumerate_monomials(&q, 2).unwrap().len(), 3);
        assert_eq!(enumerate_monomials(&q, 4).unwrap().len(), 1);

        let r = params(4, 0);
        assert_eq!(enumerate_monomials(&r, 4).unwrap().len(), 21);
    }

    #[test]
    fn all_results_have_requested_codegree() {
        let p = params(3, 2);
        for m in 0..=6 {
            for mon in enumerate_monomials(&p, m).unwrap() {
                assert_eq!(mon.codegree(), m);
            }
        }
    }

    #[test]
    fn subset_enumeration() {
        let p = params(4, 1);
        let ms = enumerate_monomials_on(&p, &[2, 4], 2).unwrap();
        let strings: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(strings, ["o(2)", "o(4)", "l(1,2)*l(1,4)", "tau(2,4)"]);
    }

    #[test]
    fn validation() {
        let p = params(2, 0);
        assert!(matches!(
            enumerate_monomials(&p, 5),
            Err(Error::CodegreeOutOfRange { m: 5, max: 4 })
        ));
        assert!(enumerate_monomials_on(&p, &[2, 1], 1).is_err());
        assert!(enumerate_monomials_on(&p, &[1, 3], 1).is_err());
    }

    #[test]
    fn duality_is_a_bijection_on_slices() {
        let p = params(3, 1);
        for m in 0..=6 {
            let slice = enumerate_monomials(&p, m).unwrap();
            let dual_slice = enumerate_monomials(&p, 6 - m).unwrap();
            for mon in &slice {
                let dual = mon.complement_dual(3).unwrap();
                assert!(dual_slice.contains(&dual));
                assert_eq!(dual.complement_dual(3).unwrap(), *mon);
            }
        }
    }
}
