use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{build_gram, kimura_ideal_slice, kimura_tau_vector, phi_polytabloid, TauVector};
use crate::combinat::{
    enumerate_even_partitions, enumerate_standard_tableaux, hook_length_dim, YoungTableau,
};
use crate::json::{serialize_opt_rational, serialize_rational, serialize_rationals};
use crate::linalg::{row_span_rank, QMatrix};
use crate::ring::{enumerate_monomials, Monomial, RingElement, RingParams};
use crate::{rat, Bounds, Error, Rational, Result};

#[derive(Debug, Clone, Serialize)]
pub struct RelationsReport {
    pub check: &'static str,
    pub n: u32,
    pub rho: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub x: Rational,
    pub cases: usize,
    pub failures: usize,
    pub pass: bool,
}

/// Checks the defining rewriting relations on every index pattern of the
/// given ring: square vanishing, divisor squares and orthogonality, the
/// diagonal square, and the triangle contraction.
pub fn verify_bv_relations(p: &RingParams) -> Result<RelationsReport> {
    let n = p.n();
    let mut cases = 0usize;
    let mut failures = 0usize;
    let mut check = |ok: bool| {
        cases += 1;
        if !ok {
            failures += 1;
        }
    };

    let o = |i| RingElement::gen_o(p, i);
    let l = |s, i| RingElement::gen_l(p, s, i);
    let tau = |i, j| RingElement::gen_tau(p, i, j);

    for i in 1..=n {
        check(o(i)?.checked_mul(&o(i)?)?.is_zero());
        for s in 1..=p.rho() {
            check(l(s, i)?.checked_mul(&o(i)?)?.is_zero());
            let sq = l(s, i)?.checked_mul(&l(s, i)?)?;
            check(sq == o(i)?.scale(p.degree(s)?));
            for t in (s + 1)..=p.rho() {
                check(l(s, i)?.checked_mul(&l(t, i)?)?.is_zero());
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let t = tau(i, j)?;
            check(t.checked_mul(&o(i)?)?.is_zero());
            check(t.checked_mul(&o(j)?)?.is_zero());
            for s in 1..=p.rho() {
                check(t.checked_mul(&l(s, i)?)?.is_zero());
                check(t.checked_mul(&l(s, j)?)?.is_zero());
            }
            let sq = t.checked_mul(&t)?;
            check(sq == o(i)?.checked_mul(&o(j)?)?.scale(p.x()));
        }
    }
    for i in 1..=n {
        let rest: Vec<u32> = (1..=n).filter(|&v| v != i).collect();
        for (a, &j) in rest.iter().enumerate() {
            for &k in &rest[(a + 1)..] {
                let lhs = tau(i, j)?.checked_mul(&tau(i, k)?)?;
                let rhs = tau(j, k)?.checked_mul(&o(i)?)?;
                check(lhs == rhs);
            }
        }
    }

    Ok(RelationsReport {
        check: "bv-relations",
        n,
        rho: p.rho(),
        x: p.x().clone(),
        cases,
        failures,
        pass: failures == 0,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaClosureRow {
    pub rho: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub x: Rational,
    #[serde(serialize_with = "serialize_rationals")]
    pub degrees: Vec<Rational>,
    pub cases: usize,
    pub failures: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaClosureReport {
    pub check: &'static str,
    pub n: u32,
    pub rows: Vec<DeltaClosureRow>,
    pub pass: bool,
}

/// Checks that the diagonal classes of one ring recover the original
/// intersection relations verbatim: absorption of points and divisors,
/// the square with coefficient exactly 24 (which pins `x + rho + 2` to
/// 24, i.e. `x = 22 - rho`), and the triangle identity.
pub fn verify_delta_closure_on(p: &RingParams) -> Result<DeltaClosureRow> {
    let n = p.n();
    let mut cases = 0usize;
    let mut failures = 0usize;
    let mut check = |ok: bool| {
        cases += 1;
        if !ok {
            failures += 1;
        }
    };

    let o = |i| RingElement::gen_o(p, i);
    let l = |s, i| RingElement::gen_l(p, s, i);
    let delta = |i, j| RingElement::gen_delta(p, i, j);

    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let d = delta(i, j)?;
            let oo = o(i)?.checked_mul(&o(j)?)?;
            check(d.checked_mul(&o(i)?)? == oo);
            for s in 1..=p.rho() {
                let rhs = l(s, i)?
                    .checked_mul(&o(j)?)?
                    .checked_add(&o(i)?.checked_mul(&l(s, j)?)?)?;
                check(d.checked_mul(&l(s, i)?)? == rhs);
            }
            check(d.checked_mul(&d)? == oo.scale(&rat(24)));
        }
    }
    for i in 1..=n {
        let rest: Vec<u32> = (1..=n).filter(|&v| v != i).collect();
        for (a, &j) in rest.iter().enumerate() {
            for &k in &rest[(a + 1)..] {
                let lhs = delta(i, j)?.checked_mul(&delta(i, k)?)?;
                let mut rhs = delta(i, j)?.checked_mul(&o(k)?)?;
                rhs = rhs.checked_add(&delta(i, k)?.checked_mul(&o(j)?)?)?;
                rhs = rhs.checked_add(&delta(j, k)?.checked_mul(&o(i)?)?)?;
                rhs = rhs.checked_sub(&o(i)?.checked_mul(&o(j)?)?)?;
                rhs = rhs.checked_sub(&o(i)?.checked_mul(&o(k)?)?)?;
                rhs = rhs.checked_sub(&o(j)?.checked_mul(&o(k)?)?)?;
                check(lhs == rhs);
            }
        }
    }

    Ok(DeltaClosureRow {
        rho: p.rho(),
        x: p.x().clone(),
        degrees: p.degrees().to_vec(),
        cases,
        failures,
        pass: failures == 0,
    })
}

/// Runs [`verify_delta_closure_on`] on three factors with Picard rank 0,
/// 1, and 2, each at `x = 22 - rho`.
pub fn verify_delta_closure() -> Result<DeltaClosureReport> {
    let n = 3;
    let mut rows = Vec::new();
    for degrees in [vec![], vec![rat(2)], vec![rat(2), rat(-4)]] {
        rows.push(verify_delta_closure_on(&RingParams::k3(n, degrees)?)?);
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(DeltaClosureReport {
        check: "delta-closure",
        n,
        rows,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockStructureReport {
    pub check: &'static str,
    pub n: u32,
    pub rho: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub x: Rational,
    pub pairs_checked: usize,
    pub violations: usize,
    pub pass: bool,
}

/// Checks the block structure of the intersection pairing: a monomial can
/// pair nonzero with another only when the diagonal supports agree, the
/// divisor factors agree, and the point sets are exact complements.
pub fn verify_block_structure(p: &RingParams, bounds: &Bounds) -> Result<BlockStructureReport> {
    let n = p.n();
    let mut pairs_checked = 0usize;
    let mut violations = 0usize;
    for m in 0..=p.top_codegree() {
        let basis = enumerate_monomials(p, m)?;
        let dual = enumerate_monomials(p, p.top_codegree() - m)?;
        bounds.check_dim(basis.len().max(dual.len()), "pairing slice")?;
        let elems: Vec<RingElement> = basis
            .iter()
            .map(|mon| RingElement::monomial(p, mon.clone(), rat(1)))
            .collect::<Result<_>>()?;
        let duals: Vec<RingElement> = dual
            .iter()
            .map(|mon| RingElement::monomial(p, mon.clone(), rat(1)))
            .collect::<Result<_>>()?;
        for (a, ea) in basis.iter().zip(&elems) {
            let tau_support = |mon: &Monomial| -> Vec<u32> {
                let mut v: Vec<u32> = mon.pairs().iter().flat_map(|&(i, j)| [i, j]).collect();
                v.sort_unstable();
                v
            };
            let complement: Vec<u32> = {
                let sup = a.support();
                (1..=n).filter(|i| !sup.contains(i)).collect()
            };
            for (b, eb) in dual.iter().zip(&duals) {
                pairs_checked += 1;
                if ea.pair(eb)?.is_zero() {
                    continue;
                }
                let same_block = tau_support(a) == tau_support(b)
                    && a.l_factors() == b.l_factors()
                    && b.o_indices() == complement.as_slice();
                if !same_block {
                    violations += 1;
                }
            }
        }
    }
    Ok(BlockStructureReport {
        check: "block-structure",
        n,
        rho: p.rho(),
        x: p.x().clone(),
        pairs_checked,
        violations,
        pass: violations == 0,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenRow {
    pub shape: Vec<u32>,
    pub dim: u64,
    pub tableaux: usize,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub eigenvalue: Option<Rational>,
    pub expected_zero: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub check: &'static str,
    pub d: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub x: Rational,
    pub rows: Vec<EigenRow>,
    pub kernel_dim: usize,
    pub predicted_kernel_dim: Option<u64>,
    pub pass: bool,
}

fn positive_integer(x: &Rational) -> Option<u32> {
    if x.is_integer() && x.is_positive() {
        x.to_integer().to_u32()
    } else {
        None
    }
}

/// Checks that every polytabloid image is an exact eigenvector of the
/// Gram matrix, with one eigenvalue per shape, and (for positive integer
/// `x`) that the eigenvalue vanishes exactly when the shape has more than
/// `x` rows, so the kernel dimension is the sum of the corresponding
/// irreducible dimensions.
pub fn verify_eigen(d: u32, x: &Rational, bounds: &Bounds) -> Result<EigenReport> {
    let gram = build_gram(d, x.clone(), bounds)?;
    let x_int = positive_integer(x);
    let mut rows = Vec::new();
    for shape in enumerate_even_partitions(d) {
        let dim = hook_length_dim(&shape);
        let tableaux = enumerate_standard_tableaux(&shape);
        let mut eigenvalue: Option<Rational> = None;
        let mut ok = true;
        for t in &tableaux {
            let v = phi_polytabloid(t)?;
            match gram.eigencheck(&v) {
                Ok(Some(c)) => match &eigenvalue {
                    None => eigenvalue = Some(c),
                    Some(e) => {
                        if *e != c {
                            ok = false;
                        }
                    }
                },
                Ok(None) | Err(Error::ZeroVector) => ok = false,
                Err(e) => return Err(e),
            }
        }
        if eigenvalue.is_none() {
            ok = false;
        }
        let expected_zero = x_int.map(|xv| shape.num_parts() > xv);
        if let (Some(expect), Some(c)) = (expected_zero, &eigenvalue) {
            if c.is_zero() != expect {
                ok = false;
            }
        }
        rows.push(EigenRow {
            shape: shape.parts().to_vec(),
            dim,
            tableaux: tableaux.len(),
            eigenvalue,
            expected_zero,
            pass: ok,
        });
    }
    let kernel_dim = gram.kernel_basis()?.len();
    let predicted_kernel_dim = x_int.map(|xv| {
        enumerate_even_partitions(d)
            .iter()
            .filter(|s| s.num_parts() > xv)
            .map(hook_length_dim)
            .sum::<u64>()
    });
    let mut pass = rows.iter().all(|r| r.pass);
    if let Some(predicted) = predicted_kernel_dim {
        if kernel_dim as u64 != predicted {
            pass = false;
        }
    }
    Ok(EigenReport {
        check: "eigen",
        d,
        x: x.clone(),
        rows,
        kernel_dim,
        predicted_kernel_dim,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelGenResult {
    pub kernel_dim: usize,
    pub slice_rank: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelGenReport {
    pub check: &'static str,
    pub d: u32,
    pub x: u32,
    pub predicted_dim: u64,
    pub slice_size: usize,
    pub result: KernelGenResult,
    pub pass: bool,
}

/// Checks that the Gram kernel on `d` points equals the span of the
/// degree-`d` slice of the ideal generated by the finite-dimensionality
/// relation, and that its dimension matches the representation-theoretic
/// prediction.
pub fn verify_kernel_generated(d: u32, x: u32, bounds: &Bounds) -> Result<KernelGenReport> {
    let gram = build_gram(d, rat(x as i64), bounds)?;
    let evaluated = gram.evaluated();
    let kernel = evaluated.right_kernel();
    let params = RingParams::new(d, vec![], rat(x as i64))?;
    let slice = kimura_ideal_slice(&params, d, bounds)?;
    let mut slice_rows = Vec::new();
    for e in &slice {
        if let Ok(v) = TauVector::from_ring_element(e) {
            slice_rows.push(v.coords(gram.basis())?);
        }
    }
    let kernel_dim = kernel.len();
    let slice_rank = row_span_rank(&slice_rows);
    let mut stacked = slice_rows.clone();
    stacked.extend(kernel.iter().cloned());
    let kernel_in_slice = row_span_rank(&stacked) == slice_rank;
    let slice_in_kernel = {
        let mut ok = true;
        for v in &slice_rows {
            if evaluated.mul_vec(v)?.iter().any(|c| !c.is_zero()) {
                ok = false;
            }
        }
        ok
    };
    let equal = kernel_in_slice && slice_in_kernel && kernel_dim == slice_rank;
    let predicted_dim = enumerate_even_partitions(d)
        .iter()
        .filter(|s| s.num_parts() > x)
        .map(hook_length_dim)
        .sum::<u64>();
    let pass = equal && kernel_dim as u64 == predicted_dim;
    Ok(KernelGenReport {
        check: "kernel-gen",
        d,
        x,
        predicted_dim,
        slice_size: slice_rows.len(),
        result: KernelGenResult {
            kernel_dim,
            slice_rank,
            equal,
        },
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KimuraIdentityReport {
    pub check: &'static str,
    pub x: u32,
    pub d: u32,
    pub terms: usize,
    pub factorial: u64,
    pub pass: bool,
}

/// Checks the closed form of the polytabloid image of the two-column
/// staircase tableau: it equals `(x+1)!` times the alternating-sum
/// relation, exactly.
pub fn verify_kimura_identity(x: u32, bounds: &Bounds) -> Result<KimuraIdentityReport> {
    let relation = kimura_tau_vector(x, bounds)?;
    let k = x + 1;
    let rows: Vec<Vec<u32>> = (1..=k).map(|i| vec![i, k + i]).collect();
    let tableau = YoungTableau::new(rows)?;
    let lhs = phi_polytabloid(&tableau)?;
    let factorial: u64 = (1..=k as u64).product();
    let rhs = relation.scale(&rat(factorial as i64));
    Ok(KimuraIdentityReport {
        check: "kimura-identity",
        x,
        d: 2 * k,
        terms: relation.len(),
        factorial,
        pass: lhs == rhs,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingSliceReport {
    pub m: u32,
    pub dim: usize,
    pub dual_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub slice_rank: usize,
    pub kernel_in_slice: bool,
    pub slice_in_kernel: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerfectPairingReport {
    pub check: &'static str,
    pub n: u32,
    pub rho: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub x: Rational,
    #[serde(serialize_with = "serialize_rationals")]
    pub degrees: Vec<Rational>,
    pub slices: Vec<PairingSliceReport>,
    pub pass: bool,
}

fn element_coords(
    e: &RingElement,
    index: &BTreeMap<Monomial, usize>,
    width: usize,
) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); width];
    for (mon, c) in e.terms() {
        let at = *index
            .get(mon)
            .ok_or_else(|| Error::InvalidParams("element leaves the enumerated slice".into()))?;
        v[at] = c.clone();
    }
    Ok(v)
}

/// Checks that in each codegree the kernel of the intersection pairing is
/// exactly the span of the ideal slice: kernel inside slice span, slice
/// inside kernel. With `m` given, checks that single codegree; otherwise
/// all of them.
pub fn verify_perfect_pairing(
    p: &RingParams,
    m: Option<u32>,
    bounds: &Bounds,
) -> Result<PerfectPairingReport> {
    let top = p.top_codegree();
    let ms: Vec<u32> = match m {
        Some(v) if v <= top => vec![v],
        Some(v) => return Err(Error::CodegreeOutOfRange { m: v, max: top }),
        None => (0..=top).collect(),
    };
    let mut slices = Vec::new();
    for m in ms {
        let basis = enumerate_monomials(p, m)?;
        let dual = enumerate_monomials(p, top - m)?;
        bounds.check_dim(basis.len().max(dual.len()), "pairing matrix")?;
        let elems: Vec<RingElement> = basis
            .iter()
            .map(|mon| RingElement::monomial(p, mon.clone(), rat(1)))
            .collect::<Result<_>>()?;
        let duals: Vec<RingElement> = dual
            .iter()
            .map(|mon| RingElement::monomial(p, mon.clone(), rat(1)))
            .collect::<Result<_>>()?;
        let mut rows = Vec::with_capacity(basis.len());
        for ea in &elems {
            let mut row = Vec::with_capacity(dual.len());
            for eb in &duals {
                row.push(ea.pair(eb)?);
            }
            rows.push(row);
        }
        let mat = if rows.is_empty() {
            QMatrix::zeros(0, dual.len())
        } else {
            QMatrix::from_rows(rows)?
        };
        let rank = mat.rank();
        let kernel = mat.left_kernel();
        let index: BTreeMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, mon)| (mon, i))
            .collect();
        let slice = kimura_ideal_slice(p, m, bounds)?;
        let mut slice_rows = Vec::with_capacity(slice.len());
        for e in &slice {
            slice_rows.push(element_coords(e, &index, basis.len())?);
        }
        let kernel_dim = kernel.len();
        let slice_rank = row_span_rank(&slice_rows);
        let mut stacked = slice_rows.clone();
        stacked.extend(kernel.iter().cloned());
        let kernel_in_slice = row_span_rank(&stacked) == slice_rank;
        let slice_in_kernel = {
            let mt = mat.transpose();
            let mut ok = true;
            for v in &slice_rows {
                if mt.mul_vec(v)?.iter().any(|c| !c.is_zero()) {
                    ok = false;
                }
            }
            ok
        };
        let pass = kernel_in_slice && slice_in_kernel;
        slices.push(PairingSliceReport {
            m,
            dim: basis.len(),
            dual_dim: dual.len(),
            rank,
            kernel_dim,
            slice_rank,
            kernel_in_slice,
            slice_in_kernel,
            pass,
        });
    }
    let pass = slices.iter().all(|s| s.pass);
    Ok(PerfectPairingReport {
        check: "perfect-pairing",
        n: p.n(),
        rho: p.rho(),
        x: p.x().clone(),
        degrees: p.degrees().to_vec(),
        slices,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn relations_pass_on_small_rings() {
        let p = RingParams::new(3, vec![rat(2), rat(-4)], rat(20)).unwrap();
        let r = verify_bv_relations(&p).unwrap();
        assert!(r.pass);
        assert_eq!(r.failures, 0);
        assert!(r.cases > 20);
        let q = RingParams::new(2, vec![], ratio(7, 3)).unwrap();
        assert!(verify_bv_relations(&q).unwrap().pass);
    }

    #[test]
    fn delta_closure_battery() {
        let r = verify_delta_closure().unwrap();
        assert!(r.pass);
        assert_eq!(r.rows.len(), 3);
        assert_eq!(r.rows[0].x, rat(22));
        assert_eq!(r.rows[2].x, rat(20));
    }

    #[test]
    fn block_structure_small() {
        let bounds = Bounds::default();
        for (n, degrees) in [(1, vec![]), (2, vec![]), (3, vec![rat(2)])] {
            let p = RingParams::new(n, degrees, rat(5)).unwrap();
            let r = verify_block_structure(&p, &bounds).unwrap();
            assert!(r.pass, "n={n}");
            assert_eq!(r.violations, 0);
        }
    }

    #[test]
    fn eigen_small() {
        let bounds = Bounds::default();
        let r = verify_eigen(4, &rat(1), &bounds).unwrap();
        assert!(r.pass);
        assert_eq!(r.kernel_dim, 2);
        assert_eq!(r.predicted_kernel_dim, Some(2));
        // shapes (4) and (2,2): the second carries the kernel at x=1
        assert_eq!(r.rows.len(), 2);
        let nonint = verify_eigen(4, &ratio(1, 2), &bounds).unwrap();
        assert!(nonint.predicted_kernel_dim.is_none());
        assert!(nonint.rows.iter().all(|row| row.expected_zero.is_none()));
    }

    #[test]
    fn kernel_generated_smallest() {
        let bounds = Bounds::default();
        let r = verify_kernel_generated(4, 1, &bounds).unwrap();
        assert!(r.pass);
        assert_eq!(r.predicted_dim, 2);
        assert_eq!(r.result.kernel_dim, 2);
        assert_eq!(r.result.slice_rank, 2);
        assert!(r.result.equal);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#"{"kernel_dim":2,"slice_rank":2,"equal":true}"#));
    }

    #[test]
    fn kimura_identity_smallest() {
        let bounds = Bounds::default();
        let r = verify_kimura_identity(1, &bounds).unwrap();
        assert!(r.pass);
        assert_eq!(r.terms, 2);
        assert_eq!(r.factorial, 2);
    }

    #[test]
    fn perfect_pairing_two_factors() {
        let bounds = Bounds::default();
        let p = RingParams::k3(2, vec![rat(2)]).unwrap();
        let r = verify_perfect_pairing(&p, None, &bounds).unwrap();
        assert!(r.pass);
        assert_eq!(r.slices.len(), 5);
        for s in &r.slices {
            assert_eq!(s.dim, s.dual_dim);
            assert_eq!(s.rank, s.dim);
            assert_eq!(s.kernel_dim, 0);
        }
    }

    #[test]
    fn perfect_pairing_single_codegree() {
        let bounds = Bounds::default();
        let p = RingParams::new(4, vec![], rat(1)).unwrap();
        let r = verify_perfect_pairing(&p, Some(4), &bounds).unwrap();
        assert!(r.pass);
        assert_eq!(r.slices.len(), 1);
        let s = &r.slices[0];
        assert_eq!(s.dim, 21);
        assert_eq!(s.kernel_dim, 2);
        assert_eq!(s.slice_rank, 2);
        assert!(s.kernel_in_slice && s.slice_in_kernel);
        assert!(verify_perfect_pairing(&p, Some(9), &bounds).is_err());
    }
}
