use std::sync::Arc;

use proptest::prelude::*;

use qfock::combinatorics::{moment_oracle, q_catalan};
use qfock::conjugate::{fisher_bound, BoundInputs};
use qfock::linalg::SparseVec;
use qfock::ncalg::{deriv_eta, evaluate, parse, wick_inverse, wick_vector, EtaVector, NCPoly};
use qfock::operators::{adjoint_q, annihilation, creation, right_creation, right_multiplication};
use qfock::qfock::{
    gram_block_bruteforce, gram_block_recursive, q_inner, Caps, FockContext, FockParams, Word,
};
use qfock::scalar::{int, ratio, Rational};

fn q_strategy() -> impl Strategy<Value = Rational> {
    (1i64..=12).prop_flat_map(|den| (-(den - 1)..den).prop_map(move |p| ratio(p, den)))
}

fn coeff_strategy() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, d)| ratio(p, d))
}

fn poly_strategy(generators: usize, max_degree: usize) -> impl Strategy<Value = NCPoly> {
    let word = prop::collection::vec(1..=generators, 0..=max_degree);
    prop::collection::vec((word, coeff_strategy()), 0..5)
        .prop_map(|terms| NCPoly::from_terms(terms.into_iter().map(|(w, c)| (Word(w), c))))
}

fn vector_strategy(dim: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec((0..dim, coeff_strategy()), 0..8).prop_map(|entries| {
        let mut v = SparseVec::new();
        for (i, c) in entries {
            *v.entry(i).or_insert_with(|| int(0)) += c;
        }
        v.retain(|_, c| *c != int(0));
        v
    })
}

fn context(q: Rational, n: usize, depth: usize) -> Arc<FockContext> {
    FockContext::new(FockParams::new(q, n, depth).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gram_blocks_symmetric_and_match_oracle(q in q_strategy(), n in 1usize..=3, degree in 0usize..=3) {
        let params = FockParams::new(q, n, degree).unwrap();
        let cap = Caps::default().max_bruteforce_degree;
        let mut g = gram_block_bruteforce(&params, 0, cap).unwrap();
        for k in 1..=degree {
            g = gram_block_recursive(&params, k, &g).unwrap();
        }
        prop_assert!(g.is_symmetric());
        prop_assert_eq!(g, gram_block_bruteforce(&params, degree, cap).unwrap());
    }

    #[test]
    fn print_parse_round_trip(p in poly_strategy(3, 4)) {
        prop_assert_eq!(parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn wick_round_trip(q in q_strategy(), p in poly_strategy(2, 3)) {
        let ctx = context(q, 2, 3);
        let v = wick_vector(&p, &ctx);
        prop_assert_eq!(wick_inverse(&v, &ctx).unwrap(), p);
    }

    #[test]
    fn wick_vector_is_polynomial_on_vacuum(q in q_strategy(), p in poly_strategy(2, 3)) {
        let ctx = context(q, 2, 3);
        prop_assert_eq!(evaluate(&p, &ctx).unwrap().apply(&ctx.vacuum()), wick_vector(&p, &ctx));
    }

    #[test]
    fn derivation_is_leibniz(
        q in q_strategy(),
        a in poly_strategy(2, 2),
        b in poly_strategy(2, 2),
        j in 1usize..=2,
    ) {
        let ctx = context(q, 2, 4);
        let eta = EtaVector::unit(&ctx, j).unwrap();
        let lhs = deriv_eta(&a.mul(&b), &eta, &ctx).unwrap();
        let da_b = deriv_eta(&a, &eta, &ctx)
            .unwrap()
            .right_act(&right_multiplication(&b, &ctx).unwrap());
        let a_db = deriv_eta(&b, &eta, &ctx)
            .unwrap()
            .left_act(&evaluate(&a, &ctx).unwrap());
        prop_assert!(lhs == da_b.add(&a_db));
    }

    #[test]
    fn q_adjoint_is_adjoint(
        q in q_strategy(),
        i in 1usize..=2,
        which in 0usize..3,
        v in vector_strategy(15),
        w in vector_strategy(15),
    ) {
        let ctx = context(q, 2, 3);
        let a = match which {
            0 => creation(&ctx, i),
            1 => annihilation(&ctx, i),
            _ => right_creation(&ctx, i),
        }
        .unwrap();
        let a_dag = adjoint_q(&a).unwrap();
        prop_assert_eq!(
            q_inner(&ctx, &a.apply(&v), &w).unwrap(),
            q_inner(&ctx, &v, &a_dag.apply(&w)).unwrap()
        );
    }

    #[test]
    fn moments_invariant_under_reversal(q in q_strategy(), word in prop::collection::vec(1usize..=3, 0..=8)) {
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        prop_assert_eq!(moment_oracle(&word, &q).unwrap(), moment_oracle(&rev, &q).unwrap());
    }

    #[test]
    fn fisher_bound_decreases_in_epsilon(
        xi in prop::collection::vec(0i64..20, 1..4),
        dist in 1i64..20,
        e1 in 1i64..50,
        step in 1i64..50,
    ) {
        let inputs = |e: i64| BoundInputs {
            n: xi.len(),
            xi_norms_sq: xi.iter().map(|&x| ratio(x, 7)).collect(),
            dist_sq: ratio(dist, 11),
            epsilon: ratio(e, 10),
        };
        let lo = fisher_bound(&inputs(e1)).unwrap();
        let hi = fisher_bound(&inputs(e1 + step)).unwrap();
        prop_assert!(hi < lo);
    }
}

#[test]
fn catalan_coefficients_count_pairings() {
    let mut double_factorial = 1u64;
    for k in 1..=6usize {
        double_factorial *= 2 * k as u64 - 1;
        let poly = q_catalan(k).unwrap();
        assert_eq!(poly.sum_of_coeffs(), double_factorial.into());
    }
}
