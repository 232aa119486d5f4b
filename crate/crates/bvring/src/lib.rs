//! Exact computer algebra for the tautological subring `R(S^n)` of the Chow
//! ring of powers of a K3 surface.
//!
//! The ring is generated by point classes `o_i`, divisor classes `l^s_i` and
//! transcendental diagonal classes `tau_{i,j}`, subject to the Beauville-Voisin
//! relations. Everything is computed over exact rationals: multiplication by
//! term rewriting to a canonical square-free normal form, the top-degree
//! intersection pairing, the Hanlon-Wales Gram matrix on perfect matchings,
//! Specht-module eigenvectors, and exact kernel computations that verify the
//! Kimura finite-dimensionality relation generates the pairing kernel.

pub mod combinat;
pub mod expr;
pub mod json;
pub mod linalg;
pub mod ring;
pub mod spectral;

mod error;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for building a rational from a numerator/denominator pair.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Resource limits for matrix-building operations.
///
/// `max_dim` caps the side length of any matrix the crate will materialize:
/// a Gram matrix on `d` points needs `(d-1)!!` rows (so the default admits
/// `d <= 10`, i.e. 945 matchings), and a full pairing matrix needs
/// `|Mon^m(n)|` rows. Larger requests fail fast with
/// [`Error::ResourceExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_dim: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_dim: 5000 }
    }
}

impl Bounds {
    /// Default bounds, with the `BVRING_MAX_DIM` environment variable
    /// applied as an override when set to a positive integer.
    pub fn from_env() -> Self {
        let mut bounds = Bounds::default();
        if let Ok(raw) = std::env::var("BVRING_MAX_DIM") {
            if let Ok(max) = raw.trim().parse::<usize>() {
                if max > 0 {
                    bounds.max_dim = max;
                }
            }
        }
        bounds
    }

    pub fn check_dim(&self, dim: usize, what: &str) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::ResourceExceeded(format!(
                "{what} needs dimension {dim}, above the limit {} (raise with BVRING_MAX_DIM or --max-dim)",
                self.max_dim
            )));
        }
        Ok(())
    }
}
