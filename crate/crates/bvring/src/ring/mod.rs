//! The formal intersection ring attached to an `n`-fold product.
//!
//! Generators per factor index `i`: a point class `o(i)` of codegree 2,
//! divisor classes `l(s,i)` of codegree 1 for each label `s`, and diagonal
//! classes `tau(i,j)` of codegree 2. Products reduce to a canonical normal
//! form through a fixed rewriting system; see [`RingElement::checked_mul`].

mod element;
mod enumerate;
mod monomial;

pub use element::RingElement;
pub use enumerate::{enumerate_monomials, enumerate_monomials_on};
pub use monomial::Monomial;

use num_traits::Zero;

use crate::{rat, Error, Rational, Result};

/// Ambient parameters: the number of factors `n`, the self-intersection
/// numbers `d_s` of the divisor labels, and the diagonal parameter `x`
/// appearing in `tau(i,j)^2 = x * o(i) * o(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingParams {
    n: u32,
    degrees: Vec<Rational>,
    x: Rational,
}

impl RingParams {
    pub fn new(n: u32, degrees: Vec<Rational>, x: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if degrees.iter().any(|d| d.is_zero()) {
            return Err(Error::InvalidParams(
                "divisor self-intersections must be nonzero".into(),
            ));
        }
        Ok(RingParams { n, degrees, x })
    }

    /// Parameters modeled on a K3 surface of Picard rank `degrees.len()`:
    /// the diagonal parameter is fixed to `22 - rho` so that the square of
    /// the small diagonal class has top coefficient 24.
    pub fn k3(n: u32, degrees: Vec<Rational>) -> Result<Self> {
        let rho = degrees.len() as i64;
        RingParams::new(n, degrees, rat(22 - rho))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rho(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn degrees(&self) -> &[Rational] {
        &self.degrees
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    /// Self-intersection of label `s` (1-based).
    pub fn degree(&self, s: u32) -> Result<&Rational> {
        if s < 1 || s > self.rho() {
            return Err(Error::DivisorOutOfRange {
                label: s,
                rho: self.rho(),
            });
        }
        Ok(&self.degrees[(s - 1) as usize])
    }

    pub fn check_index(&self, i: u32) -> Result<()> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Top codegree of the ring, `2n`.
    pub fn top_codegree(&self) -> u32 {
        2 * self.n
    }
}
