use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use super::{IntPartition, Permutation};
use crate::{Error, Rational, Result};

/// A Young tableau: a filling of the diagram of `shape` by the entries
/// `1..=d`, each used exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungTableau {
    rows: Vec<Vec<u32>>,
}

impl YoungTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = IntPartition::new(rows.iter().map(|r| r.len() as u32))
            .map_err(|_| Error::InvalidTableau("row lengths must form a partition".into()))?;
        let d = shape.sum();
        let mut seen = vec![false; d as usize];
        for &v in rows.iter().flatten() {
            if v < 1 || v > d {
                return Err(Error::InvalidTableau(format!(
                    "entry {v} out of range 1..={d}"
                )));
            }
            if seen[(v - 1) as usize] {
                return Err(Error::InvalidTableau(format!("entry {v} repeated")));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(YoungTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> IntPartition {
        IntPartition::new(self.rows.iter().map(|r| r.len() as u32)).expect("shape is validated")
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().map(|r| r.len() as u32).sum()
    }

    /// Rows and columns strictly increasing.
    pub fn is_standard(&self) -> bool {
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        for (r, row) in self.rows.iter().enumerate().skip(1) {
            for (c, &v) in row.iter().enumerate() {
                if self.rows[r - 1][c] >= v {
                    return false;
                }
            }
        }
        true
    }

    /// Entries of column `c`, top to bottom.
    pub fn column(&self, c: usize) -> Vec<u32> {
        self.rows
            .iter()
            .filter_map(|row| row.get(c).copied())
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        let width = self.rows.first().map_or(0, |r| r.len());
        (0..width).map(|c| self.column(c)).collect()
    }

    /// Entry-wise relabeling by a permutation of `{1..=d}`.
    pub fn relabel(&self, g: &Permutation) -> YoungTableau {
        YoungTableau {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|&v| g.apply(v)).collect())
                .collect(),
        }
    }

    /// Forgets the order inside each row.
    pub fn tabloid(&self) -> Tabloid {
        Tabloid::new(self.rows.clone()).expect("tableau rows form a tabloid")
    }
}

/// All standard Young tableaux of the given shape, by backtracking fill in
/// row-major order; output order is deterministic. Their number equals
/// `hook_length_dim(shape)`.
pub fn enumerate_standard_tableaux(shape: &IntPartition) -> Vec<YoungTableau> {
    let d = shape.sum();
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<u32>> = shape
        .parts()
        .iter()
        .map(|&len| vec![0; len as usize])
        .collect();
    let mut used = vec![false; d as usize];
    let mut out = Vec::new();
    fill_cells(&cells, 0, &mut rows, &mut used, &mut out);
    out
}

fn fill_cells(
    cells: &[(usize, usize)],
    k: usize,
    rows: &mut Vec<Vec<u32>>,
    used: &mut Vec<bool>,
    out: &mut Vec<YoungTableau>,
) {
    if k == cells.len() {
        out.push(YoungTableau { rows: rows.clone() });
        return;
    }
    let (r, c) = cells[k];
    let lower = {
        let left = if c > 0 { rows[r][c - 1] } else { 0 };
        let above = if r > 0 { rows[r - 1][c] } else { 0 };
        left.max(above)
    };
    for v in (lower + 1)..=(used.len() as u32) {
        if used[(v - 1) as usize] {
            continue;
        }
        used[(v - 1) as usize] = true;
        rows[r][c] = v;
        fill_cells(cells, k + 1, rows, used, out);
        rows[r][c] = 0;
        used[(v - 1) as usize] = false;
    }
}

/// A tabloid: row contents of a tableau with the order inside each row
/// forgotten. Rows stay in their positions; each is stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tabloid {
    rows: Vec<Vec<u32>>,
}

impl Tabloid {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut rows = rows;
        for row in &mut rows {
            row.sort_unstable();
        }
        // same global validity conditions as a tableau
        YoungTableau::new(rows.clone()).map_err(|_| {
            Error::InvalidTableau("tabloid rows must partition 1..=d with partition sizes".into())
        })?;
        Ok(Tabloid { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> IntPartition {
        IntPartition::new(self.rows.iter().map(|r| r.len() as u32)).expect("shape is validated")
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().map(|r| r.len() as u32).sum()
    }

    /// Entry-wise relabeling, re-sorted row by row.
    pub fn act(&self, g: &Permutation) -> Tabloid {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut mapped: Vec<u32> = row.iter().map(|&v| g.apply(v)).collect();
                mapped.sort_unstable();
                mapped
            })
            .collect();
        Tabloid { rows }
    }
}

/// A formal rational linear combination of tabloids. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TabloidVector {
    terms: BTreeMap<Tabloid, Rational>,
}

impl TabloidVector {
    pub fn zero() -> Self {
        TabloidVector::default()
    }

    pub fn add_term(&mut self, t: Tabloid, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(t);
        match entry {
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

    pub fn iter(&self) -> impl Iterator<Item = (&Tabloid, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Tabloid) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> TabloidVector {
        if c.is_zero() {
            return TabloidVector::zero();
        }
        TabloidVector {
            terms: self.terms.iter().map(|(t, q)| (t.clone(), q * c)).collect(),
        }
    }

    pub fn act(&self, g: &Permutation) -> TabloidVector {
        let mut out = TabloidVector::zero();
        for (t, q) in &self.terms {
            out.add_term(t.act(g), q.clone());
        }
        out
    }
}

/// The column stabilizer `Q_T` of a tableau: the direct product of the
/// symmetric groups on its columns.
#[derive(Debug, Clone)]
pub struct ColumnStabilizer {
    degree: u32,
    columns: Vec<Vec<u32>>,
}

impl ColumnStabilizer {
    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    pub fn order(&self) -> u64 {
        self.columns
            .iter()
            .map(|c| (1..=c.len() as u64).product::<u64>())
            .product()
    }

    /// Materializes every element together with its sign.
    pub fn elements(&self) -> Vec<(Permutation, i32)> {
        // per column: all rearrangements of its entries, with the parity of
        // the rearrangement relative to the column order
        let per_column: Vec<Vec<(Vec<u32>, i32)>> = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .copied()
                    .permutations(col.len())
                    .map(|images| {
                        let sign = arrangement_sign(col, &images);
                        (images, sign)
                    })
                    .collect()
            })
            .collect();
        per_column
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| {
                let mut images: Vec<u32> = (1..=self.degree).collect();
                let mut sign = 1;
                for (col, (arranged, s)) in self.columns.iter().zip(&choice) {
                    sign *= s;
                    for (&from, &to) in col.iter().zip(arranged) {
                        images[(from - 1) as usize] = to;
                    }
                }
                (Permutation::from_images(images), sign)
            })
            .collect()
    }
}

/// Columns of `T` as disjoint sets, with an element iterator over the
/// product of per-column symmetric groups.
pub fn column_stabilizer(t: &YoungTableau) -> ColumnStabilizer {
    ColumnStabilizer {
        degree: t.size(),
        columns: t.columns(),
    }
}

fn arrangement_sign(from: &[u32], to: &[u32]) -> i32 {
    // parity of the permutation sending from[k] to to[k]
    let mut inversions = 0;
    let pos = |v: u32| from.iter().position(|&x| x == v).unwrap();
    let mapped: Vec<usize> = to.iter().map(|&v| pos(v)).collect();
    for i in 0..mapped.len() {
        for j in (i + 1)..mapped.len() {
            if mapped[i] > mapped[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The polytabloid `E_T`: the signed sum of `{g(T)}` over the column
/// stabilizer of `T`. Nonzero for standard `T`.
pub fn polytabloid(t: &YoungTableau) -> TabloidVector {
    let mut out = TabloidVector::zero();
    for (g, sign) in column_stabilizer(t).elements() {
        out.add_term(t.relabel(&g).tabloid(), Rational::from_integer(sign.into()));
    }
    out
}
