use crate::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPartition {
    parts: Vec<u32>,
}

impl IntPartition {
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Result<Self> {
        let parts: Vec<u32> = parts.into_iter().collect();
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        Ok(IntPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn num_parts(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Lengths of the columns of the Young diagram.
    pub fn conjugate(&self) -> IntPartition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        IntPartition { parts }
    }
}

/// All partitions of `d` into even parts, in decreasing lexicographic order.
/// Empty for odd `d`; the empty partition for `d = 0`.
pub fn enumerate_even_partitions(d: u32) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    even_parts(d, d, &mut current, &mut out);
    out
}

fn even_parts(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
    if remaining == 0 {
        out.push(IntPartition {
            parts: current.clone(),
        });
        return;
    }
    let mut part = max_part.min(remaining);
    if part % 2 == 1 {
        part -= 1;
    }
    while part >= 2 {
        current.push(part);
        even_parts(remaining - part, part, current, out);
        current.pop();
        part -= 2;
    }
}

/// `d! / (product of hook lengths)`: the number of standard Young tableaux
/// of the shape, which is also the dimension of its Specht module.
pub fn hook_length_dim(shape: &IntPartition) -> u64 {
    let d = shape.sum() as u128;
    let conj = shape.conjugate();
    let mut numer: u128 = 1;
    for k in 1..=d {
        numer *= k;
    }
    let mut hooks: u128 = 1;
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = conj.parts()[c as usize] - r as u32 - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    u64::try_from(numer / hooks).expect("hook-length dimension overflows u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_partitions_small() {
        let p4: Vec<Vec<u32>> = enumerate_even_partitions(4)
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(p4, vec![vec![4], vec![2, 2]]);
        let p6: Vec<Vec<u32>> = enumerate_even_partitions(6)
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(p6, vec![vec![6], vec![4, 2], vec![2, 2, 2]]);
        assert!(enumerate_even_partitions(3).is_empty());
        assert_eq!(enumerate_even_partitions(0).len(), 1);
    }

    #[test]
    fn hook_dimensions() {
        let dim =
            |parts: &[u32]| hook_length_dim(&IntPartition::new(parts.iter().copied()).unwrap());
        assert_eq!(dim(&[2, 2]), 2);
        assert_eq!(dim(&[4, 2]), 9);
        assert_eq!(dim(&[2, 2, 2]), 5);
        assert_eq!(dim(&[1]), 1);
        assert_eq!(dim(&[6]), 1);
    }

    #[test]
    fn conjugate_involution() {
        let p = IntPartition::new([4, 2, 2]).unwrap();
        assert_eq!(p.conjugate().parts(), &[3, 3, 1, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(IntPartition::new([2, 3]).is_err());
        assert!(IntPartition::new([2, 0]).is_err());
    }
}
