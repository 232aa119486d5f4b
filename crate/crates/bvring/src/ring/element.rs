use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, RingParams};
use crate::combinat::{PerfectMatching, Permutation};
use crate::{Error, Rational, Result};

/// A ring element: a finite rational combination of canonical monomials
/// over fixed [`RingParams`]. Zero coefficients are never stored, so
/// structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    params: RingParams,
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElement {
    pub fn zero(params: RingParams) -> Self {
        RingElement {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: RingParams) -> Self {
        let mut e = RingElement::zero(params);
        e.add_assign_term(Monomial::one(), Rational::one());
        e
    }

    /// A single scaled monomial, validated against the parameters.
    pub fn monomial(params: &RingParams, m: Monomial, coef: Rational) -> Result<Self> {
        if m.max_index() > params.n() {
            return Err(Error::IndexOutOfRange {
                index: m.max_index(),
                n: params.n(),
            });
        }
        if m.max_label() > params.rho() {
            return Err(Error::DivisorOutOfRange {
                label: m.max_label(),
                rho: params.rho(),
            });
        }
        let mut e = RingElement::zero(params.clone());
        e.add_assign_term(m, coef);
        Ok(e)
    }

    pub fn gen_o(params: &RingParams, i: u32) -> Result<Self> {
        params.check_index(i)?;
        RingElement::monomial(params, Monomial::new([], [], [i])?, Rational::one())
    }

    pub fn gen_l(params: &RingParams, s: u32, i: u32) -> Result<Self> {
        params.check_index(i)?;
        params.degree(s)?;
        RingElement::monomial(params, Monomial::new([], [(s, i)], [])?, Rational::one())
    }

    pub fn gen_tau(params: &RingParams, i: u32, j: u32) -> Result<Self> {
        params.check_index(i)?;
        params.check_index(j)?;
        if i == j {
            return Err(Error::DiagonalIndex(i));
        }
        RingElement::monomial(params, Monomial::new([(i, j)], [], [])?, Rational::one())
    }

    /// The diagonal class `delta(i,j) = tau(i,j) + o(i) + o(j) +
    /// sum_s l(s,i) l(s,j) / d_s`.
    pub fn gen_delta(params: &RingParams, i: u32, j: u32) -> Result<Self> {
        let mut e = RingElement::gen_tau(params, i, j)?;
        e.add_assign_term(Monomial::new([], [], [i])?, Rational::one());
        e.add_assign_term(Monomial::new([], [], [j])?, Rational::one());
        for s in 1..=params.rho() {
            let d = params.degree(s)?.clone();
            e.add_assign_term(Monomial::new([], [(s, i), (s, j)], [])?, d.recip());
        }
        Ok(e)
    }

    pub fn params(&self) -> &RingParams {
        &self.params
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_assign_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        let mut out = RingElement::zero(self.params.clone());
        if c.is_zero() {
            return out;
        }
        for (m, q) in &self.terms {
            out.terms.insert(m.clone(), q * c);
        }
        out
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Product in normal form. Each monomial pair multiplies through the
    /// rewriting system: vanishing index collisions first, then divisor
    /// squares `l(s,i)^2 = d_s o(i)`, then diagonal contractions
    /// `tau(i,j) tau(i,k) = tau(j,k) o(i)` and `tau(i,j)^2 = x o(i) o(j)`,
    /// always at the smallest doubled index.
    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = RingElement::zero(self.params.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, extra)) = mul_monomials(&self.params, ma, mb) {
                    out.add_assign_term(m, ca * cb * extra);
                }
            }
        }
        Ok(out)
    }

    /// Exponentiation by repeated multiplication; `k = 0` gives the unit.
    pub fn pow(&self, k: u32) -> RingElement {
        let mut out = RingElement::one(self.params.clone());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Common codegree of all terms, if homogeneous. Zero has no codegree.
    pub fn codegree(&self) -> Option<u32> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.codegree();
        iter.all(|m| m.codegree() == first).then_some(first)
    }

    /// Coefficient of the top monomial `o(1)...o(n)`.
    pub fn top_coefficient(&self) -> Rational {
        let top = Monomial::one()
            .complement_dual(self.params.n())
            .expect("empty support");
        self.coefficient(&top)
    }

    /// Intersection pairing: the top coefficient of the product. Both
    /// sides must be homogeneous of complementary codegrees.
    pub fn pair(&self, other: &RingElement) -> Result<Rational> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Rational::zero());
        }
        let lhs = self.codegree().ok_or(Error::NotHomogeneous)?;
        let rhs = other.codegree().ok_or(Error::NotHomogeneous)?;
        let total = self.params.top_codegree();
        if lhs + rhs != total {
            return Err(Error::PairingDegreeMismatch { lhs, rhs, total });
        }
        Ok(self.checked_mul(other)?.top_coefficient())
    }

    /// Relabels factor indices by a permutation of `1..=n`.
    pub fn apply_permutation(&self, g: &Permutation) -> Result<RingElement> {
        if g.degree() != self.params.n() {
            return Err(Error::GroundSetMismatch);
        }
        let mut out = RingElement::zero(self.params.clone());
        for (m, c) in &self.terms {
            out.add_assign_term(m.relabel(|i| g.apply(i))?, c.clone());
        }
        Ok(out)
    }

    /// Transfers the element into another ring along an index map, which
    /// must be injective on every monomial support and land in the target
    /// index range.
    pub fn relabel_into(&self, target: &RingParams, f: impl Fn(u32) -> u32) -> Result<RingElement> {
        let mut out = RingElement::zero(target.clone());
        for (m, c) in &self.terms {
            let r = m.relabel(&f)?;
            if r.max_index() > target.n() {
                return Err(Error::IndexOutOfRange {
                    index: r.max_index(),
                    n: target.n(),
                });
            }
            if r.max_label() > target.rho() {
                return Err(Error::DivisorOutOfRange {
                    label: r.max_label(),
                    rho: target.rho(),
                });
            }
            out.add_assign_term(r, c.clone());
        }
        Ok(out)
    }

    /// Reads the element as a combination of perfect matchings, if every
    /// term is a pure diagonal monomial covering all of `1..=n`.
    pub fn as_full_matchings(&self) -> Option<Vec<(PerfectMatching, Rational)>> {
        let n = self.params.n();
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            if !m.l_factors().is_empty() || !m.o_indices().is_empty() {
                return None;
            }
            if 2 * m.pairs().len() as u32 != n {
                return None;
            }
            let pm = PerfectMatching::new(m.pairs().iter().copied()).ok()?;
            out.push((pm, c.clone()));
        }
        Some(out)
    }
}

/// Reduces the concatenation of two canonical monomials to normal form.
/// Returns the canonical monomial and the accumulated scalar, or `None`
/// if the product vanishes.
fn mul_monomials(params: &RingParams, a: &Monomial, b: &Monomial) -> Option<(Monomial, Rational)> {
    let mut taus: Vec<(u32, u32)> = a.pairs().iter().chain(b.pairs()).copied().collect();
    let mut ls: Vec<(u32, u32)> = a.l_factors().iter().chain(b.l_factors()).copied().collect();
    let mut os: Vec<u32> = a.o_indices().iter().chain(b.o_indices()).copied().collect();
    let mut coef = Rational::one();

    // vanishing collisions and divisor squares, index by index
    let mut by_index: BTreeMap<u32, (u32, Vec<u32>, u32)> = BTreeMap::new();
    for &i in &os {
        by_index.entry(i).or_default().0 += 1;
    }
    for &(s, i) in &ls {
        by_index.entry(i).or_default().1.push(s);
    }
    for &(i, j) in &taus {
        by_index.entry(i).or_default().2 += 1;
        by_index.entry(j).or_default().2 += 1;
    }
    for (&i, (o_count, labels, tau_count)) in &by_index {
        let total = o_count + labels.len() as u32 + tau_count;
        debug_assert!(total <= 2, "canonical inputs carry each index at most once");
        if total < 2 {
            continue;
        }
        if *o_count > 0 {
            return None;
        }
        match (labels.len(), *tau_count) {
            (2, 0) => {
                if labels[0] != labels[1] {
                    return None;
                }
                coef *= params.degree(labels[0]).expect("validated label").clone();
                ls.retain(|&(_, k)| k != i);
                os.push(i);
            }
            (1, 1) => return None,
            (0, 2) => {}
            _ => unreachable!(),
        }
    }

    // contract doubled diagonal endpoints, smallest index first; each step
    // removes a diagonal factor, so this terminates
    loop {
        let mut count: BTreeMap<u32, u32> = BTreeMap::new();
        for &(i, j) in &taus {
            *count.entry(i).or_default() += 1;
            *count.entry(j).or_default() += 1;
        }
        let Some((&i, _)) = count.iter().find(|&(_, &c)| c >= 2) else {
            break;
        };
        let mut partners = Vec::with_capacity(2);
        taus.retain(|&(p, q)| {
            if p == i {
                partners.push(q);
                false
            } else if q == i {
                partners.push(p);
                false
            } else {
                true
            }
        });
        debug_assert_eq!(partners.len(), 2);
        partners.sort_unstable();
        let (j, k) = (partners[0], partners[1]);
        if j == k {
            coef *= params.x().clone();
            os.push(i);
            os.push(j);
        } else {
            taus.push((j, k));
            os.push(i);
        }
    }

    let m = Monomial::new(taus, ls, os).expect("reduction keeps supports disjoint");
    Some((m, coef))
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-Rational::one())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("parameter mismatch in +")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("parameter mismatch in -")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("parameter mismatch in *")
    }
}

impl fmt::Display for RingElement {
    /// Parseable sum form in canonical term order; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn params(n: u32) -> RingParams {
        RingParams::new(n, vec![rat(2), rat(-4)], rat(5)).unwrap()
    }

    fn o(p: &RingParams, i: u32) -> RingElement {
        RingElement::gen_o(p, i).unwrap()
    }

    fn l(p: &RingParams, s: u32, i: u32) -> RingElement {
        RingElement::gen_l(p, s, i).unwrap()
    }

    fn tau(p: &RingParams, i: u32, j: u32) -> RingElement {
        RingElement::gen_tau(p, i, j).unwrap()
    }

    #[test]
    fn point_class_annihilates() {
        let p = params(3);
        assert!((&o(&p, 1) * &o(&p, 1)).is_zero());
        assert!((&l(&p, 1, 1) * &o(&p, 1)).is_zero());
        assert!((&tau(&p, 1, 2) * &o(&p, 1)).is_zero());
        assert!((&tau(&p, 1, 2) * &o(&p, 2)).is_zero());
        assert!(!(&tau(&p, 1, 2) * &o(&p, 3)).is_zero());
    }

    #[test]
    fn divisor_squares_and_orthogonality() {
        let p = params(2);
        let sq = &l(&p, 1, 1) * &l(&p, 1, 1);
        assert_eq!(sq, o(&p, 1).scale(&rat(2)));
        let sq2 = &l(&p, 2, 1) * &l(&p, 2, 1);
        assert_eq!(sq2, o(&p, 1).scale(&rat(-4)));
        assert!((&l(&p, 1, 1) * &l(&p, 2, 1)).is_zero());
        assert!((&tau(&p, 1, 2) * &l(&p, 1, 1)).is_zero());
        let mixed = &l(&p, 1, 1) * &l(&p, 2, 2);
        assert_eq!(mixed.len(), 1);
    }

    #[test]
    fn diagonal_square_and_contraction() {
        let p = params(3);
        let sq = &tau(&p, 1, 2) * &tau(&p, 1, 2);
        assert_eq!(sq, (&o(&p, 1) * &o(&p, 2)).scale(&rat(5)));
        let c = &tau(&p, 1, 2) * &tau(&p, 1, 3);
        assert_eq!(c, &tau(&p, 2, 3) * &o(&p, 1));
    }

    #[test]
    fn triangle_reduces_associatively() {
        let p = params(3);
        let (t12, t23, t13) = (tau(&p, 1, 2), tau(&p, 2, 3), tau(&p, 1, 3));
        let left = &(&t12 * &t23) * &t13;
        let right = &t12 * &(&t23 * &t13);
        let expected = (&(&o(&p, 1) * &o(&p, 2)) * &o(&p, 3)).scale(&rat(5));
        assert_eq!(left, expected);
        assert_eq!(right, expected);
    }

    #[test]
    fn delta_square_top_coefficient() {
        // delta^2 = (x + rho + 2) o(i) o(j) for any parameters
        let p = params(2);
        let d = RingElement::gen_delta(&p, 1, 2).unwrap();
        let sq = &d * &d;
        assert_eq!(sq.top_coefficient(), rat(5 + 2 + 2));

        // the K3 normalization pins it to 24
        for degs in [vec![], vec![rat(2)], vec![rat(2), rat(-4)]] {
            let p = RingParams::k3(2, degs).unwrap();
            let d = RingElement::gen_delta(&p, 1, 2).unwrap();
            assert_eq!((&d * &d).top_coefficient(), rat(24));
        }
    }

    #[test]
    fn pairing_against_complement_dual() {
        let p = params(3);
        let t = tau(&p, 1, 2);
        let dual_mon = Monomial::new([(1, 2)], [], [3]).unwrap();
        let dual = RingElement::monomial(&p, dual_mon, Rational::one()).unwrap();
        assert_eq!(t.pair(&dual).unwrap(), rat(5));

        let p1 = params(1);
        let a = l(&p1, 1, 1);
        assert_eq!(a.pair(&a).unwrap(), rat(2));
        let b = l(&p1, 2, 1);
        assert_eq!(b.pair(&b).unwrap(), rat(-4));
        assert_eq!(a.pair(&b).unwrap(), rat(0));
    }

    #[test]
    fn pairing_errors() {
        let p = params(2);
        let t = tau(&p, 1, 2);
        // tau is self-dual in the middle codegree
        assert_eq!(t.pair(&t).unwrap(), rat(5));
        match t.pair(&l(&p, 1, 1)) {
            Err(Error::PairingDegreeMismatch {
                lhs: 2,
                rhs: 1,
                total: 4,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        let mixed = &t + &RingElement::one(p.clone());
        assert!(matches!(
            mixed.pair(&(&o(&p, 1) * &o(&p, 2))),
            Err(Error::NotHomogeneous)
        ));
        let q = params(3);
        assert!(matches!(t.pair(&tau(&q, 1, 2)), Err(Error::ParamsMismatch)));
    }

    #[test]
    fn scalar_coefficients_stay_exact() {
        let p = params(2);
        let e = tau(&p, 1, 2).scale(&ratio(3, 7));
        let f = e.scale(&ratio(7, 3));
        assert_eq!(f, tau(&p, 1, 2));
        assert!((&e - &e).is_zero());
    }

    #[test]
    fn permutation_action_is_multiplicative() {
        let p = params(4);
        let g = Permutation::from_images(vec![2, 3, 4, 1]);
        let a = &tau(&p, 1, 2) + &l(&p, 1, 3);
        let b = &tau(&p, 3, 4) - &o(&p, 1);
        let lhs = (&a * &b).apply_permutation(&g).unwrap();
        let rhs = &a.apply_permutation(&g).unwrap() * &b.apply_permutation(&g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generator_validation() {
        let p = params(2);
        assert!(RingElement::gen_o(&p, 3).is_err());
        assert!(RingElement::gen_l(&p, 3, 1).is_err());
        assert!(RingElement::gen_tau(&p, 1, 1).is_err());
        assert!(RingElement::gen_tau(&p, 0, 1).is_err());
        let m = Monomial::new([], [(3, 1)], []).unwrap();
        assert!(RingElement::monomial(&p, m, Rational::one()).is_err());
    }

    #[test]
    fn full_matching_extraction() {
        let p = RingParams::new(4, vec![], rat(1)).unwrap();
        let e = &(&tau(&p, 1, 2) * &tau(&p, 3, 4)) - &(&tau(&p, 1, 3) * &tau(&p, 2, 4));
        let ms = e.as_full_matchings().unwrap();
        assert_eq!(ms.len(), 2);
        assert!(e.codegree() == Some(4));
        let with_o = &o(&p, 1) * &o(&p, 2);
        assert!(with_o.as_full_matchings().is_none());
        let partial = tau(&p, 1, 2);
        assert!(partial.as_full_matchings().is_none());
    }

    #[test]
    fn pow_and_display() {
        let p = params(2);
        let d = RingElement::gen_delta(&p, 1, 2).unwrap();
        assert_eq!(d.pow(2), &d * &d);
        assert_eq!(d.pow(0), RingElement::one(p.clone()));
        let e = &tau(&p, 1, 2).scale(&ratio(-3, 2)) + &o(&p, 1);
        assert_eq!(e.to_string(), "o(1) - 3/2*tau(1,2)");
        assert_eq!(RingElement::zero(p).to_string(), "0");
    }
}
