//! Symmetric-group and Young-tableau combinatorics: permutations, perfect
//! matchings, partitions into even parts, standard tableaux, tabloids and
//! polytabloids.

mod matching;
mod partition;
mod perm;
mod tableau;

pub use matching::{enumerate_matchings, matchings_of_set, PerfectMatching};
pub use partition::{enumerate_even_partitions, hook_length_dim, IntPartition};
pub use perm::Permutation;
pub use tableau::{
    column_stabilizer, enumerate_standard_tableaux, polytabloid, ColumnStabilizer, Tabloid,
    TabloidVector, YoungTableau,
};
