//! Exact combinatorial oracles and closed-form evaluators.

mod bounds;
mod finite_dim;
mod partitions;
mod qpoly;

pub use bounds::{
    delta_star_qbound, hs_ratio, xi_hs_closed_form, xi_hs_tail, xi_hs_truncated,
};
pub use finite_dim::{
    atom_kernel_dimension, atom_kernel_dimension_with_values, dim_distance_check,
    multiplicity_profiles, random_instances, AtomKernel, DimDistance, SubspaceSpec,
};
pub use partitions::{
    moment_oracle, moment_polynomial, pair_partitions, q_catalan, PairPartition, PairPartitions,
    DEFAULT_MATCHING_CAP,
};
pub use qpoly::QPolynomial;
