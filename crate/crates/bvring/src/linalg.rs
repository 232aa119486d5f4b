//! Exact linear algebra over the rationals.
//!
//! Matrices are dense and row-major. Rank and kernels go through
//! fraction-free Bareiss elimination on an integer matrix obtained by
//! clearing denominators row by row, so no intermediate rounding ever
//! occurs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Row-by-row denominator clearing; preserves row space and right
    /// kernel.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let lcm = self
                    .row(i)
                    .iter()
                    .filter(|q| !q.is_zero())
                    .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                self.row(i)
                    .iter()
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        bareiss(&mut m, self.cols).len()
    }

    /// Basis of `{ v : A v = 0 }` as primitive integer vectors (coprime
    /// entries, first nonzero entry positive), one per free column in
    /// ascending column order.
    pub fn right_kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.integer_rows();
        let pivots = bareiss(&mut m, self.cols);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut kernel = Vec::new();
        for f in 0..self.cols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::one();
            for &(r, p) in pivots.iter().rev() {
                if p > f {
                    continue;
                }
                let mut s = Rational::zero();
                for j in (p + 1)..=f {
                    if !m[r][j].is_zero() && !x[j].is_zero() {
                        s += Rational::from_integer(m[r][j].clone()) * &x[j];
                    }
                }
                x[p] = -s / Rational::from_integer(m[r][p].clone());
            }
            kernel.push(normalize_primitive(x));
        }
        kernel
    }

    pub fn left_kernel(&self) -> Vec<Vec<Rational>> {
        self.transpose().right_kernel()
    }
}

/// Fraction-free elimination in place. Returns the pivot positions
/// `(row, col)` in order; the number of pivots is the rank.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division is exact");
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Scales a rational vector to coprime integers with positive leading
/// entry; the zero vector is returned unchanged.
fn normalize_primitive(v: Vec<Rational>) -> Vec<Rational> {
    let lcm_den = v
        .iter()
        .filter(|q| !q.is_zero())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| q.numer() * (&lcm_den / q.denom()))
        .collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc: BigInt, z| acc.gcd(z));
    if gcd.is_zero() {
        return v;
    }
    let negative = ints
        .iter()
        .find(|z| !z.is_zero())
        .is_some_and(|z| z.is_negative());
    let div = if negative { -gcd } else { gcd };
    ints.into_iter()
        .map(|z| Rational::from_integer(z / &div))
        .collect()
}

pub fn row_span_rank(rows: &[Vec<Rational>]) -> usize {
    QMatrix::from_rows(rows.to_vec())
        .expect("equal row lengths")
        .rank()
}

/// True if the two row families span the same subspace.
pub fn same_row_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    let stacked: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    let ra = row_span_rank(a);
    let rb = row_span_rank(b);
    ra == rb && row_span_rank(&stacked) == ra
}

pub fn in_row_span(v: &[Rational], rows: &[Vec<Rational>]) -> bool {
    let mut stacked = rows.to_vec();
    stacked.push(v.to_vec());
    row_span_rank(&stacked) == row_span_rank(rows)
}
