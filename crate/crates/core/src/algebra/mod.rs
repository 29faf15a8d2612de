//! Partitions, integer matrices, normal forms and finitely generated abelian groups.

pub mod group;
pub mod matrix;
pub mod partition;
pub mod symfun;

pub use group::{cokernel, quotient_type, subgroup_type, FGAbGroup};
pub use matrix::{
    hermite_normal_form, kernel_lattice, smith_diagonal, smith_normal_form, Hermite, IntMatrix, LatticeBasis, Smith,
};
pub use partition::{partition_count, partitions_of, Partition};
