//! Partial matchings between finite subsets of abelian groups.
//!
//! For `A, B ⊆ G` with `|A| = |B|` and `0 ∉ B`, a partial matching is an
//! injection `f` from part of `A` into `B` with `a + f(a) ∉ A`. This crate
//! computes the deficiency (least possible number of unmatched elements) by
//! augmenting paths, by a subset sweep and by a subgroup formula; finds and
//! checks obstruction witnesses; builds deficient pairs; and computes the
//! left and right partition numbers together with explicit partitions.

mod assign;
pub mod error;
pub mod group;
pub mod matching;
pub mod partition;
pub mod sample;
pub mod setalg;
pub mod structure;
pub mod transform;

pub use error::{Error, Result};
pub use group::{full_cosets_within, Element, GroupSpec, Order, Subgroup, SubgroupLimits};
pub use matching::{
    deficiency, deficiency_by_subsets, max_matching, partial_matching_with_defect, verify_matching,
    PartialMatching, SubsetProfile,
};
pub use partition::{
    lambda, lambda_lower_bound, partition_left, partition_right, rho, rho_by_pairs,
    rho_estimate_from_witness, verify_partition, AdmissiblePartition, PartitionNumber, Side,
};
pub use setalg::{chowla_defect, max_progression_length, Deltoid, GroupSet};
pub use structure::{
    construct_deficient_pair, existence_predicate, find_witness, verify_witness, ObstructionWitness,
};
pub use transform::{
    best_stabilizer_pair, deficiency_by_subgroups, e_transform_step, stabilize, StabilizerPair,
};
