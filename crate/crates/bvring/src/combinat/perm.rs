use itertools::Itertools;

/// A permutation of `{1, ..., n}` in one-line notation: `images[i-1] = g(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from the images of `1..=n`.
    ///
    /// Panics unless `images` is a bijection of `{1, .., n}`.
    pub fn from_images(images: Vec<u32>) -> Self {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &v in &images {
            assert!(v >= 1 && v <= n, "image {v} out of range 1..={n}");
            assert!(!seen[(v - 1) as usize], "image {v} repeated");
            seen[(v - 1) as usize] = true;
        }
        Permutation { images }
    }

    /// The transposition `(a b)` inside `S_n`.
    pub fn transposition(n: u32, a: u32, b: u32) -> Self {
        assert!(a >= 1 && a <= n && b >= 1 && b <= n && a != b);
        let mut images: Vec<u32> = (1..=n).collect();
        images.swap((a - 1) as usize, (b - 1) as usize);
        Permutation { images }
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: (1..=self.degree())
                .map(|i| self.apply(other.apply(i)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// The signature homomorphism, `+1` or `-1`, via cycle parity.
    pub fn sign(&self) -> i32 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = (self.images[cur] - 1) as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: u32) -> impl Iterator<Item = Permutation> {
        (1..=n)
            .permutations(n as usize)
            .map(|images| Permutation { images })
    }
}
