use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use super::output::{float, rational, Header, Table};
use super::{Failure, PointReport, RunConfig, Suite};
use crate::combinatorics::{
    atom_kernel_dimension, delta_star_qbound, dim_distance_check, moment_oracle,
    moment_polynomial, multiplicity_profiles, q_catalan, random_instances, xi_hs_closed_form,
    xi_hs_tail, xi_hs_truncated, SubspaceSpec,
};
use crate::conjugate::{
    delta_star_lower, dual_system_eta, dual_system_vector, fisher_bound, pairing_defect,
    partial_conjugate, verify_dual_system, BoundInputs, RESIDUAL_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::linalg::{axpy, max_abs, SparseVec};
use crate::ncalg::{
    evaluate, monomials, parse_with_generators, wick_inverse, wick_vector, EtaVector, NCPoly,
    TensorVec,
};
use crate::operators::{
    annihilation, commutator, creation, hs_norm_sq, right_creation, right_semicircular,
    semicircular, vacuum_projection, vacuum_trace, xi_q, LinOp,
};
use crate::qfock::{check_positivity, gram_block_bruteforce, FockContext, FockParams, Word};
use crate::scalar::{int, serde_rational, to_f64, Rational};

fn header(p: &FockParams, cap: Option<usize>) -> Header {
    Header {
        q: Some(p.q.clone()),
        n: Some(p.n),
        depth: Some(p.depth),
        cap,
    }
}

fn failure(cmd: &'static str, t: &Table, check: String, detail: String) -> Failure {
    Failure {
        command: cmd,
        table: t.stem(),
        check,
        detail,
    }
}

fn context(p: &FockParams, cfg: &RunConfig) -> Result<Arc<FockContext>> {
    FockContext::with_caps(p.clone(), cfg.caps.clone())
}

fn poly_label(w: &Word) -> String {
    NCPoly::term(w.clone(), Rational::one()).to_string()
}

fn status(ok: bool) -> Value {
    json!(if ok { "pass" } else { "fail" })
}

/// Gram blocks, oracle agreement and positivity for one `(q, N)`.
pub fn cmd_gram(p: &FockParams, cfg: &RunConfig) -> Result<PointReport> {
    let ctx = context(p, cfg)?;
    let mut entries = Table::new("gram_entries", header(p, None), &["degree", "row", "col", "value"]);
    let mut blocks = Table::new(
        "gram_blocks",
        header(p, Some(ctx.caps().max_bruteforce_degree)),
        &[
            "degree",
            "size",
            "bruteforce_match",
            "min_eigenvalue",
            "max_eigenvalue",
            "status",
        ],
    );
    let mut failures = Vec::new();
    let pos = check_positivity(&ctx)?;
    for (n, b) in (0..=p.depth).zip(&pos.blocks) {
        let g = ctx.gram_block(n)?;
        let start = ctx.degree_range(n).start;
        for r in 0..g.rows() {
            for c in 0..g.cols() {
                entries.push(vec![
                    json!(n),
                    json!(ctx.word(start + r).to_string()),
                    json!(ctx.word(start + c).to_string()),
                    rational(&g[(r, c)]),
                ]);
            }
        }
        let brute = if n <= ctx.caps().max_bruteforce_degree {
            Some(gram_block_bruteforce(p, n, ctx.caps().max_bruteforce_degree)? == *g)
        } else {
            None
        };
        let positive = b.min_eigenvalue > 0.0;
        let ok = positive && brute != Some(false);
        if brute == Some(false) {
            failures.push(failure("gram", &blocks, format!("bruteforce degree {n}"), "recursive and brute-force blocks differ".into()));
        }
        if !positive {
            failures.push(failure(
                "gram",
                &blocks,
                format!("positivity degree {n}"),
                format!("min eigenvalue {}", b.min_eigenvalue),
            ));
        }
        blocks.push(vec![
            json!(n),
            json!(b.size),
            brute.map_or(Value::Null, Value::Bool),
            float(b.min_eigenvalue),
            float(b.max_eigenvalue),
            status(ok),
        ]);
    }
    Ok(PointReport {
        tables: vec![entries, blocks],
        failures,
    })
}

/// Residuals of the commutation relations between left and right
/// operators, split into the interior (exact) and the truncation edge.
pub fn cmd_commutators(p: &FockParams, cfg: &RunConfig) -> Result<PointReport> {
    let ctx = context(p, cfg)?;
    let d = p.depth;
    let xi = xi_q(&ctx);
    let zero = LinOp::zero(&ctx);
    let mut table = Table::new(
        "commutators",
        header(p, None),
        &["identity", "i", "j", "region", "degree_bound", "residual_max", "status"],
    );
    let mut failures = Vec::new();
    for i in 1..=p.n {
        for j in 1..=p.n {
            let r = right_creation(&ctx, j)?;
            let expected_xi = if i == j { &xi } else { &zero };
            let cases: [(&str, LinOp, usize); 3] = [
                ("[l_i, r_j]", commutator(&creation(&ctx, i)?, &r)?, d.saturating_sub(1)),
                (
                    "[l*_i, r_j] - d_ij Xi_q",
                    commutator(&annihilation(&ctx, i)?, &r)?.sub(expected_xi)?,
                    d,
                ),
                (
                    "[X_i, Y_j]",
                    commutator(&semicircular(&ctx, i)?, &right_semicircular(&ctx, j)?)?,
                    d.saturating_sub(1),
                ),
            ];
            for (name, residual, bound) in cases {
                let inner = residual.on_degrees_below(bound).max_abs();
                let ok = inner.is_zero();
                if !ok {
                    failures.push(failure(
                        "commutators",
                        &table,
                        format!("{name} i={i} j={j}"),
                        format!("interior residual {inner}"),
                    ));
                }
                table.push(vec![
                    json!(name),
                    json!(i),
                    json!(j),
                    json!("interior"),
                    json!(bound),
                    rational(&inner),
                    status(ok),
                ]);
                let edge = residual.restrict_degrees(|_, c| c >= bound).max_abs();
                table.push(vec![
                    json!(name),
                    json!(i),
                    json!(j),
                    json!("edge"),
                    json!(bound),
                    rational(&edge),
                    json!("edge"),
                ]);
            }
        }
    }
    Ok(PointReport {
        tables: vec![table],
        failures,
    })
}

/// `||P_0 - Xi_q||_HS^2` on the truncated space against the closed form.
pub fn cmd_xi(p: &FockParams, cfg: &RunConfig) -> Result<PointReport> {
    let ctx = context(p, cfg)?;
    let mut table = Table::new(
        "xi_hs",
        header(p, None),
        &[
            "truncated",
            "truncated_f64",
            "closed_form",
            "closed_form_f64",
            "gap",
            "tail_formula",
            "status",
        ],
    );
    let mut failures = Vec::new();
    let truncated = hs_norm_sq(&vacuum_projection(&ctx).sub(&xi_q(&ctx))?)?;
    let series_ok = truncated == xi_hs_truncated(&p.q, p.n, p.depth);
    if !series_ok {
        failures.push(failure(
            "xi",
            &table,
            "truncated sum".into(),
            "HS norm differs from the truncated geometric series".into(),
        ));
    }
    match xi_hs_closed_form(&p.q, p.n) {
        Ok(closed) => {
            let gap = &closed - &truncated;
            let tail = xi_hs_tail(&p.q, p.n, p.depth)?;
            let ok = series_ok && gap == tail;
            if gap != tail {
                failures.push(failure("xi", &table, "tail".into(), format!("gap {gap} vs tail {tail}")));
            }
            table.push(vec![
                rational(&truncated),
                float(to_f64(&truncated)),
                rational(&closed),
                float(to_f64(&closed)),
                rational(&gap),
                rational(&tail),
                status(ok),
            ]);
        }
        Err(Error::Divergent(_)) => table.push(vec![
            rational(&truncated),
            float(to_f64(&truncated)),
            json!("divergent"),
            Value::Null,
            Value::Null,
            Value::Null,
            json!(if series_ok { "divergent" } else { "fail" }),
        ]),
        Err(e) => return Err(e),
    }
    Ok(PointReport {
        tables: vec![table],
        failures,
    })
}

/// Oracle moments against `<Omega, w Omega>` from the operator matrices,
/// for every word up to `moments.max_length`.
pub fn cmd_moments(q: &Rational, cfg: &RunConfig) -> Result<PointReport> {
    let m = &cfg.moments;
    let params = FockParams::new(q.clone(), m.colors, m.max_length)?;
    let ctx = FockContext::with_caps(params.clone(), cfg.caps.clone())?;
    let mut table = Table::new(
        "moments",
        Header {
            q: Some(q.clone()),
            n: Some(m.colors),
            depth: Some(m.max_length),
            cap: None,
        },
        &["word", "length", "oracle", "trace", "polynomial", "status"],
    );
    let mut failures = Vec::new();
    for w in monomials(m.colors, m.max_length) {
        let oracle = moment_oracle(w.letters(), q)?;
        let poly = moment_polynomial(w.letters())?;
        let p = NCPoly::term(w.clone(), Rational::one());
        let trace = vacuum_trace(&evaluate(&p, &ctx)?);
        let ok = oracle == trace && poly.eval(q) == oracle;
        if !ok {
            failures.push(failure(
                "moments",
                &table,
                format!("word {}", poly_label(&w)),
                format!("oracle {oracle}, trace {trace}"),
            ));
        }
        table.push(vec![
            json!(poly_label(&w)),
            json!(w.degree()),
            rational(&oracle),
            rational(&trace),
            json!(poly.to_string()),
            status(ok),
        ]);
    }
    Ok(PointReport {
        tables: vec![table],
        failures,
    })
}

fn catalan(k: usize) -> BigInt {
    // C_k = binom(2k, k) / (k + 1)
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    c
}

fn double_factorial_odd(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

/// q-Catalan polynomials with their values at `q = 0` and `q = 1`.
pub fn catalan_table(cfg: &RunConfig) -> Result<PointReport> {
    let mut table = Table::new(
        "q_catalan",
        Header::default(),
        &["k", "polynomial", "at_q0", "at_q1", "catalan", "double_factorial", "status"],
    );
    let mut failures = Vec::new();
    for k in 1..=cfg.moments.catalan_max {
        let p = q_catalan(k)?;
        let at0 = p.coeff(0);
        let at1 = p.sum_of_coeffs();
        let (c, df) = (catalan(k), double_factorial_odd(k));
        let ok = at0 == c && at1 == df && p.coeffs().iter().all(|x| *x >= BigInt::zero());
        if !ok {
            failures.push(failure("moments", &table, format!("q-Catalan k={k}"), p.to_string()));
        }
        table.push(vec![
            json!(k),
            json!(p.to_string()),
            json!(at0.to_string()),
            json!(at1.to_string()),
            json!(c.to_string()),
            json!(df.to_string()),
            status(ok),
        ]);
    }
    Ok(PointReport {
        tables: vec![table],
        failures,
    })
}

/// `eta` given as elementary tensors of polynomials, one list per generator.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaFile {
    pub eta: Vec<Vec<EtaTerm>>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaTerm {
    pub left: String,
    pub right: String,
    #[serde(default = "one", with = "serde_rational")]
    pub coeff: Rational,
}

fn one() -> Rational {
    Rational::one()
}

impl EtaFile {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// `eta_i = sum c (left Omega) (x) (right Omega)`.
    pub fn to_eta(&self, ctx: &Arc<FockContext>) -> Result<EtaVector> {
        let n = ctx.generators();
        if self.eta.len() != n {
            return Err(Error::Config(format!(
                "eta has {} components, expected N = {n}",
                self.eta.len()
            )));
        }
        let mut parts = Vec::with_capacity(n);
        for terms in &self.eta {
            let mut t = TensorVec::zero(ctx);
            for term in terms {
                let left = parse_with_generators(&term.left, n)?;
                let right = parse_with_generators(&term.right, n)?;
                if left.degree().max(right.degree()) > ctx.depth() {
                    return Err(Error::Config(format!(
                        "eta term {} (x) {} exceeds depth {}",
                        term.left,
                        term.right,
                        ctx.depth()
                    )));
                }
                t.add_elementary(&term.coeff, &wick_vector(&left, ctx), &wick_vector(&right, ctx));
            }
            parts.push(t);
        }
        EtaVector::new(ctx, parts)
    }
}

fn max_diff(a: &SparseVec, b: &SparseVec) -> f64 {
    let mut d = a.clone();
    axpy(&mut d, &int(-1), b);
    to_f64(&max_abs(&d))
}

/// Dual-system verification with `D_j = r(e_j)`, the three routes to the
/// conjugate variable, and the bound evaluators.
pub fn cmd_conjugate(p: &FockParams, cfg: &RunConfig, eta_file: Option<&EtaFile>) -> Result<PointReport> {
    let ctx = context(p, cfg)?;
    let cap = cfg.conjugate.degree_cap.unwrap_or(p.depth.saturating_sub(2));
    if cap > p.depth {
        return Err(Error::Config(format!("degree_cap {cap} exceeds depth {}", p.depth)));
    }
    let h = header(p, Some(cap));
    let mut failures = Vec::new();

    let mut dual = Table::new(
        "dual_system",
        h.clone(),
        &[
            "j",
            "residual_max",
            "residual_max_f64",
            "residual_argmax_monomial",
            "tail_bound",
            "status",
        ],
    );
    for r in verify_dual_system(&ctx, cap)? {
        let ok = if r.residual_max.is_zero() {
            true
        } else if p.q.is_zero() {
            to_f64(&r.residual_max) <= RESIDUAL_TOLERANCE
        } else {
            r.tail_bound.as_ref().is_some_and(|t| r.residual_max <= *t)
        };
        if !ok {
            failures.push(failure(
                "conjugate",
                &dual,
                format!("pairing j={}", r.j),
                format!("defect {}", r.residual_max),
            ));
        }
        dual.push(vec![
            json!(r.j),
            rational(&r.residual_max),
            float(to_f64(&r.residual_max)),
            r.residual_argmax.as_ref().map_or(Value::Null, |w| json!(poly_label(w))),
            r.tail_bound.as_ref().map_or(json!("divergent"), rational),
            status(ok),
        ]);
    }

    let mut routes = Table::new(
        "conjugate_routes",
        h.clone(),
        &[
            "j",
            "lsq_vs_dual",
            "dual_vs_generator",
            "lsq_vs_generator",
            "lsq_residual",
            "zero_eta_defect",
            "status",
        ],
    );
    for j in 1..=p.n {
        let dual_vec = dual_system_vector(&ctx, j)?;
        let generator = wick_vector(&NCPoly::generator(j), &ctx);
        let sol = partial_conjugate(&dual_system_eta(&ctx, j)?, &ctx, cap)?;
        let (zero_defect, _) = pairing_defect(&dual_vec, &EtaVector::zero(&ctx), &ctx, cap)?;
        let diffs = [
            max_diff(&sol.xi, &dual_vec),
            max_diff(&dual_vec, &generator),
            max_diff(&sol.xi, &generator),
        ];
        let detector_ok = cap == 0 || !zero_defect.is_zero();
        let ok = sol.exists && detector_ok && diffs.iter().all(|&x| x <= RESIDUAL_TOLERANCE);
        if !ok {
            failures.push(failure(
                "conjugate",
                &routes,
                format!("routes j={j}"),
                format!("differences {diffs:?}, zero-eta defect {zero_defect}"),
            ));
        }
        routes.push(vec![
            json!(j),
            float(diffs[0]),
            float(diffs[1]),
            float(diffs[2]),
            rational(&sol.residual),
            rational(&zero_defect),
            status(ok),
        ]);
    }

    let mut bounds = Table::new(
        "bounds",
        h.clone(),
        &[
            "epsilon",
            "xi_norms_sq_sum",
            "dist_sq",
            "delta_star_lower",
            "fisher_bound",
            "closed_dist_sq",
            "closed_delta_star_lower",
            "delta_star_qbound",
            "status",
        ],
    );
    let closed = xi_hs_closed_form(&p.q, p.n).ok();
    let chain = closed.as_ref().map(|c| {
        let dist = c * int(p.n as i64);
        let lower = delta_star_lower(p.n, &dist);
        (dist, lower, delta_star_qbound(&p.q, p.n))
    });
    for eps in &cfg.conjugate.epsilon {
        let b = BoundInputs::from_dual_system(&ctx, eps.clone())?;
        let xi_sum = b.xi_norms_sq.iter().fold(Rational::zero(), |a, x| a + x);
        let lower = delta_star_lower(b.n, &b.dist_sq);
        let fisher = fisher_bound(&b)?;
        let mut row = vec![
            rational(eps),
            rational(&xi_sum),
            rational(&b.dist_sq),
            rational(&lower),
            float(fisher),
        ];
        match &chain {
            Some((dist, lower, Ok(qb))) => {
                let ok = lower == qb && b.dist_sq <= *dist;
                if !ok {
                    failures.push(failure(
                        "conjugate",
                        &bounds,
                        "bound chain".into(),
                        format!("{lower} vs {qb}"),
                    ));
                }
                row.extend([rational(dist), rational(lower), rational(qb), status(ok)]);
            }
            Some((_, _, Err(e))) => return Err(e.clone()),
            None => row.extend([json!("divergent"), Value::Null, Value::Null, json!("divergent")]),
        }
        bounds.push(row);
    }

    let mut tables = vec![dual, routes, bounds];
    if let Some(file) = eta_file {
        let mut t = Table::new(
            "explicit_eta",
            h,
            &[
                "residual",
                "residual_argmax_monomial",
                "exists",
                "condition_estimate",
                "xi_polynomial",
            ],
        );
        let sol = partial_conjugate(&file.to_eta(&ctx)?, &ctx, cap)?;
        if !sol.exists {
            failures.push(failure(
                "conjugate",
                &t,
                "explicit eta".into(),
                format!("residual {}", sol.residual),
            ));
        }
        t.push(vec![
            rational(&sol.residual),
            sol.residual_argmax.as_ref().map_or(Value::Null, |w| json!(poly_label(w))),
            json!(sol.exists),
            float(sol.condition_estimate),
            json!(wick_inverse(&sol.xi, &ctx)?.to_string()),
        ]);
        tables.push(t);
    }
    Ok(PointReport { tables, failures })
}

fn kind(spec: &SubspaceSpec) -> &'static str {
    match spec {
        SubspaceSpec::RowSpace { .. } => "row_space",
        SubspaceSpec::Projection { .. } => "projection",
        SubspaceSpec::Span { .. } => "span",
    }
}

/// Finite-dimensional dimension/distance instances and the atom-kernel
/// profiles.
pub fn cmd_validate(cfg: &RunConfig) -> Result<PointReport> {
    let v = &cfg.validate;
    let mut report = PointReport::default();
    if v.suites.contains(&Suite::DimDistance) {
        let mut t = Table::new(
            "dim_distance",
            Header::default(),
            &["id", "source", "k", "n", "kind", "dim", "n_minus_dist_sq", "defect", "status"],
        );
        let generated = random_instances(v.generated, v.k_max, v.n_max, v.seed)
            .into_iter()
            .map(|(k, n, s)| ("generated", k, n, s));
        let explicit = v
            .instances
            .iter()
            .map(|i| ("config", i.k, i.n, i.subspace.clone()));
        for (id, (source, k, n, spec)) in generated.chain(explicit).enumerate() {
            match dim_distance_check(k, n, &spec) {
                Ok(r) => {
                    let ok = r.defect() <= RESIDUAL_TOLERANCE;
                    if !ok {
                        report.failures.push(failure(
                            "validate",
                            &t,
                            format!("instance {id}"),
                            format!("dim {} vs n - dist^2 {}", r.dim, r.n_minus_dist_sq),
                        ));
                    }
                    t.push(vec![
                        json!(id),
                        json!(source),
                        json!(k),
                        json!(n),
                        json!(kind(&spec)),
                        float(r.dim),
                        float(r.n_minus_dist_sq),
                        float(r.defect()),
                        status(ok),
                    ]);
                }
                Err(e @ Error::Validation(_)) => {
                    report.failures.push(failure("validate", &t, format!("instance {id}"), e.to_string()));
                    t.push(vec![
                        json!(id),
                        json!(source),
                        json!(k),
                        json!(n),
                        json!(kind(&spec)),
                        Value::Null,
                        Value::Null,
                        Value::Null,
                        json!("invalid"),
                    ]);
                }
                Err(e) => return Err(e),
            }
        }
        report.tables.push(t);
    }
    if v.suites.contains(&Suite::AtomKernel) {
        let mut t = Table::new(
            "atom_kernel",
            Header::default(),
            &["k", "multiplicities", "kernel_dim", "predicted", "computed", "status"],
        );
        for k in 1..=v.atom_k_max {
            for m in multiplicity_profiles(k) {
                let a = atom_kernel_dimension(&m)?;
                let label = m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+");
                let ok = a.predicted == a.computed;
                if !ok {
                    report.failures.push(failure(
                        "validate",
                        &t,
                        format!("atoms {label}"),
                        format!("{} vs {}", a.predicted, a.computed),
                    ));
                }
                t.push(vec![
                    json!(k),
                    json!(label),
                    json!(a.kernel_dim),
                    rational(&a.predicted),
                    rational(&a.computed),
                    status(ok),
                ]);
            }
        }
        report.tables.push(t);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn cfg() -> RunConfig {
        RunConfig::from_str_with_ext("", false).unwrap()
    }

    fn params(q: Rational, n: usize, d: usize) -> FockParams {
        FockParams::new(q, n, d).unwrap()
    }

    #[test]
    fn gram_identity_at_zero() {
        let r = cmd_gram(&params(int(0), 2, 2), &cfg()).unwrap();
        assert!(r.failures.is_empty());
        let entries = &r.tables[0];
        for row in &entries.rows {
            let expect = if row[1] == row[2] { "1" } else { "0" };
            assert_eq!(row[3], json!(expect));
        }
        assert_eq!(r.tables[1].rows.len(), 3);
    }

    #[test]
    fn commutators_interior_and_edge() {
        let r = cmd_commutators(&params(ratio(1, 4), 2, 3), &cfg()).unwrap();
        assert!(r.failures.is_empty());
        let t = &r.tables[0];
        assert_eq!(t.rows.len(), 4 * 3 * 2);
        assert!(t.rows.iter().any(|row| row[3] == "edge" && row[5] != "0"));
    }

    #[test]
    fn xi_divergent_row() {
        let r = cmd_xi(&params(ratio(4, 5), 2, 3), &cfg()).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.tables[0].rows[0][2], json!("divergent"));
        let r = cmd_xi(&params(int(0), 2, 3), &cfg()).unwrap();
        assert_eq!(r.tables[0].rows[0][0], json!("0"));
    }

    #[test]
    fn moments_examples() {
        let mut c = cfg();
        c.moments.max_length = 4;
        let r = cmd_moments(&ratio(1, 3), &c).unwrap();
        assert!(r.failures.is_empty());
        let row = r.tables[0].rows.iter().find(|row| row[0] == "X1*X2*X1*X2").unwrap();
        assert_eq!(row[2], json!("1/3"));
        let odd = r.tables[0].rows.iter().find(|row| row[0] == "X1^3").unwrap();
        assert_eq!(odd[3], json!("0"));
        let cat = catalan_table(&c).unwrap();
        assert!(cat.failures.is_empty());
        assert_eq!(cat.tables[0].rows[1][1], json!("2 + q"));
    }

    #[test]
    fn conjugate_free_case() {
        let r = cmd_conjugate(&params(int(0), 2, 4), &cfg(), None).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert_eq!(r.tables.len(), 3);
    }

    #[test]
    fn explicit_eta() {
        let ctx_p = params(int(0), 1, 4);
        let file: EtaFile =
            serde_json::from_str(r#"{"eta": [[{"left": "1", "right": "1"}]]}"#).unwrap();
        let r = cmd_conjugate(&ctx_p, &cfg(), Some(&file)).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.tables[3].rows[0][4], json!("X1"));
        let bad: EtaFile = serde_json::from_str(r#"{"eta": []}"#).unwrap();
        assert!(cmd_conjugate(&ctx_p, &cfg(), Some(&bad)).is_err());
    }

    #[test]
    fn validate_suites() {
        let mut c = cfg();
        c.validate.atom_k_max = 3;
        let r = cmd_validate(&c).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.tables[0].rows.len(), 24);
        assert_eq!(r.tables[1].rows.len(), 1 + 2 + 4);
        c.validate.suites.clear();
        assert!(cmd_validate(&c).unwrap().tables.is_empty());
    }

    #[test]
    fn malformed_subspace_is_reported() {
        let mut c = cfg();
        c.validate.generated = 0;
        c.validate.suites = vec![Suite::DimDistance];
        c.validate.instances = vec![super::super::Instance {
            k: 2,
            n: 1,
            subspace: SubspaceSpec::RowSpace {
                vectors: vec![vec![1.0]],
            },
        }];
        let r = cmd_validate(&c).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.tables[0].rows[0][8], json!("invalid"));
    }
}
