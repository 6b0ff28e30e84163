//! Matrix-algebra checks: the dimension of a left-invariant subspace equals
//! `n - dist(I, K)^2`, and the kernel of `D -> [X, D]` for a self-adjoint `X`
//! has normalized dimension `sum (m_i / k)^2`.
//!
//! ```bash
//! cargo run -p qfock --example finite_dim
//! ```

use qfock::combinatorics::{
    atom_kernel_dimension, dim_distance_check, multiplicity_profiles, random_instances,
};
use qfock::scalar::format_rational;

fn main() -> qfock::Result<()> {
    for (k, n, spec) in random_instances(6, 3, 3, 42) {
        let r = dim_distance_check(k, n, &spec)?;
        println!(
            "k = {k} n = {n}: dim {:.6}  n - dist^2 {:.6}  defect {:.1e}",
            r.dim,
            r.n_minus_dist_sq,
            r.defect()
        );
    }

    for m in multiplicity_profiles(4) {
        let a = atom_kernel_dimension(&m)?;
        println!(
            "multiplicities {:?}: kernel {} predicted {} computed {}",
            a.multiplicities,
            a.kernel_dim,
            format_rational(&a.predicted),
            format_rational(&a.computed)
        );
    }
    Ok(())
}
