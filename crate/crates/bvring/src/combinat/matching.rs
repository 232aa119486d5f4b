use crate::{Error, Result};

/// A perfect matching: a partition of an index set of even size into
/// unordered pairs. Pairs are stored as `(min, max)` and sorted, so equal
/// matchings compare equal and the derived order is the canonical one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    pairs: Vec<(u32, u32)>,
}

impl PerfectMatching {
    pub fn new(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut canon: Vec<(u32, u32)> = pairs
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        canon.sort_unstable();
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &canon {
            if a == b {
                return Err(Error::InvalidMatching(format!(
                    "pair ({a},{b}) is diagonal"
                )));
            }
            if !seen.insert(a) || !seen.insert(b) {
                return Err(Error::InvalidMatching(
                    "an index occurs in two pairs".into(),
                ));
            }
        }
        Ok(PerfectMatching { pairs: canon })
    }

    pub fn empty() -> Self {
        PerfectMatching { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Sorted list of matched indices; its length is even.
    pub fn ground_set(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        out.sort_unstable();
        out
    }

    /// Number of matched indices (`2 * pairs`).
    pub fn size(&self) -> u32 {
        2 * self.pairs.len() as u32
    }

    /// Applies an injective relabeling to every endpoint.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        PerfectMatching::new(self.pairs.iter().map(|&(a, b)| (f(a), f(b))))
    }
}

/// All perfect matchings of `{1, ..., d}` for even `d`, in lexicographic
/// order of their sorted pair lists; there are `(d-1)!!` of them.
pub fn enumerate_matchings(d: u32) -> Result<Vec<PerfectMatching>> {
    if !d.is_multiple_of(2) {
        return Err(Error::OddGroundSet(d));
    }
    let elems: Vec<u32> = (1..=d).collect();
    Ok(matchings_of_set(&elems))
}

/// All perfect matchings of an arbitrary set of distinct indices.
/// Empty when the set has odd size.
pub fn matchings_of_set(elems: &[u32]) -> Vec<PerfectMatching> {
    if !elems.len().is_multiple_of(2) {
        return Vec::new();
    }
    let mut sorted: Vec<u32> = elems.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(&sorted, &mut current, &mut out);
    out
}

fn fill(rest: &[u32], current: &mut Vec<(u32, u32)>, out: &mut Vec<PerfectMatching>) {
    if rest.is_empty() {
        out.push(PerfectMatching {
            pairs: current.clone(),
        });
        return;
    }
    let first = rest[0];
    for k in 1..rest.len() {
        let partner = rest[k];
        let mut next: Vec<u32> = rest[1..].to_vec();
        next.remove(k - 1);
        current.push((first, partner));
        fill(&next, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_factorial(d: u64) -> u64 {
        // (d-1)!! with the empty-product convention for d = 0
        let mut acc = 1u64;
        let mut m = d as i64 - 1;
        while m > 0 {
            acc *= m as u64;
            m -= 2;
        }
        acc
    }

    #[test]
    fn counts_match_double_factorial() {
        assert_eq!(enumerate_matchings(2).unwrap().len(), 1);
        assert_eq!(enumerate_matchings(4).unwrap().len(), 3);
        assert_eq!(enumerate_matchings(6).unwrap().len(), 15);
        for d in [0u32, 2, 4, 6, 8, 10] {
            assert_eq!(
                enumerate_matchings(d).unwrap().len() as u64,
                double_factorial(d as u64)
            );
        }
    }

    #[test]
    fn odd_size_is_an_error() {
        assert!(matches!(
            enumerate_matchings(3),
            Err(Error::OddGroundSet(3))
        ));
    }

    #[test]
    fn canonical_storage_and_order() {
        let m = PerfectMatching::new([(4, 3), (2, 1)]).unwrap();
        assert_eq!(m.pairs(), &[(1, 2), (3, 4)]);
        let all = enumerate_matchings(4).unwrap();
        assert_eq!(
            all,
            vec![
                PerfectMatching::new([(1, 2), (3, 4)]).unwrap(),
                PerfectMatching::new([(1, 3), (2, 4)]).unwrap(),
                PerfectMatching::new([(1, 4), (2, 3)]).unwrap(),
            ]
        );
    }

    #[test]
    fn overlapping_pairs_rejected() {
        assert!(PerfectMatching::new([(1, 2), (2, 3)]).is_err());
        assert!(PerfectMatching::new([(1, 1)]).is_err());
    }
}
