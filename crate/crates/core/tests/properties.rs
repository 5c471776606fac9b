//! Property tests for the algebraic kernel: ring axioms, incidence
//! reduction, chart compatibility, and resultant laws.

use proptest::prelude::*;
use std::sync::Arc;

use webode::algebra::bihom::{bihom_vars, chart_vars, monomial_basis, BiHomPoly};
use webode::algebra::{reduce_mod_incidence, resultant, Field, MPoly, Monomial};

fn small_coeff() -> impl Strategy<Value = i64> {
    -6i64..=6
}

/// A sparse polynomial in the given ring with bounded exponents.
fn poly_strategy(
    field: Field,
    vars: Arc<Vec<String>>,
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = MPoly> {
    let nvars = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), small_coeff()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut acc = MPoly::zero(field, &vars);
        for (expo, c) in terms {
            if c != 0 {
                acc = acc.add(&MPoly::monomial(field, &vars, expo, field.from_i64(c)));
            }
        }
        acc
    })
}

/// A raw bihomogeneous polynomial of bidegree (m, n), possibly reducible
/// modulo the incidence relation.
fn raw_bihom_strategy(field: Field, m: u32, n: u32) -> impl Strategy<Value = MPoly> {
    let all_monomials: Vec<Vec<u32>> = {
        // every (m, n)-monomial, divisible by A0*X0 or not
        let mut out = Vec::new();
        for i0 in 0..=m {
            for i1 in 0..=(m - i0) {
                for j0 in 0..=n {
                    for j1 in 0..=(n - j0) {
                        out.push(vec![i0, i1, m - i0 - i1, j0, j1, n - j0 - j1]);
                    }
                }
            }
        }
        out
    };
    prop::collection::vec(small_coeff(), all_monomials.len()).prop_map(move |coeffs| {
        let bv = bihom_vars();
        let mut acc = MPoly::zero(field, &bv);
        for (e, c) in all_monomials.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&MPoly::monomial(field, &bv, e.clone(), field.from_i64(c)));
            }
        }
        acc
    })
}

fn univariate_strategy(field: Field, max_deg: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(small_coeff(), (max_deg + 1) as usize).prop_map(move |coeffs| {
        let v = webode::algebra::vars(&["x"]);
        let mut acc = MPoly::zero(field, &v);
        for (e, c) in coeffs.into_iter().enumerate() {
            if c != 0 {
                acc = acc.add(&MPoly::monomial(field, &v, vec![e as u32], field.from_i64(c)));
            }
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_over_q(
        f in poly_strategy(Field::Rational, chart_vars(), 3, 4),
        g in poly_strategy(Field::Rational, chart_vars(), 3, 4),
        h in poly_strategy(Field::Rational, chart_vars(), 3, 4),
    ) {
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn ring_axioms_over_f5(
        f in poly_strategy(Field::prime(5).unwrap(), chart_vars(), 3, 4),
        g in poly_strategy(Field::prime(5).unwrap(), chart_vars(), 3, 4),
        h in poly_strategy(Field::prime(5).unwrap(), chart_vars(), 3, 4),
    ) {
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn division_inverts_multiplication(
        f in poly_strategy(Field::Rational, chart_vars(), 2, 3),
        g in poly_strategy(Field::Rational, chart_vars(), 2, 3),
    ) {
        prop_assume!(!g.is_zero());
        let prod = f.mul(&g);
        prop_assert_eq!(prod.try_div(&g).unwrap(), f);
    }

    #[test]
    fn incidence_reduction_is_idempotent_and_multiplicative(
        f in raw_bihom_strategy(Field::Rational, 1, 2),
        g in raw_bihom_strategy(Field::Rational, 2, 1),
    ) {
        let rf = reduce_mod_incidence(&f).unwrap();
        prop_assert_eq!(reduce_mod_incidence(&rf).unwrap(), rf.clone());
        let rg = reduce_mod_incidence(&g).unwrap();
        let direct = reduce_mod_incidence(&f.mul(&g)).unwrap();
        let stepwise = reduce_mod_incidence(&rf.mul(&rg)).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn chart_commutes_with_reduction(f in raw_bihom_strategy(Field::Rational, 2, 2)) {
        prop_assume!(!f.is_zero());
        let reduced = BiHomPoly::new(f.clone()).unwrap();
        // chart of the raw polynomial: substitute directly
        let cv = chart_vars();
        let q = Field::Rational;
        let x = MPoly::var_idx(q, &cv, 0);
        let y = MPoly::var_idx(q, &cv, 1);
        let p = MPoly::var_idx(q, &cv, 2);
        let images = vec![
            MPoly::one(q, &cv),
            x.clone(),
            y.clone(),
            p.mul(&x).sub(&y),
            p.neg(),
            MPoly::one(q, &cv),
        ];
        let chart_raw = f.substitute_all(&images).unwrap();
        prop_assert_eq!(reduced.chart(), chart_raw);
    }

    #[test]
    fn resultant_multiplicativity(
        f in univariate_strategy(Field::Rational, 3),
        g in univariate_strategy(Field::Rational, 3),
        h in univariate_strategy(Field::Rational, 3),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        prop_assume!(f.degree_in(0).unwrap_or(0) >= 1);
        prop_assume!(g.degree_in(0).unwrap_or(0) + h.degree_in(0).unwrap_or(0) >= 1);
        let lhs = resultant(&f, &g.mul(&h), 0).unwrap();
        let rhs = resultant(&f, &g, 0)
            .and_then(|a| resultant(&f, &h, 0).map(|b| a.mul(&b)));
        prop_assert_eq!(lhs, rhs.unwrap());
    }

    #[test]
    fn resultant_swap_sign(
        f in univariate_strategy(Field::Rational, 3),
        g in univariate_strategy(Field::Rational, 3),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let df = f.degree_in(0).unwrap_or(0);
        let dg = g.degree_in(0).unwrap_or(0);
        prop_assume!(df >= 1 || dg >= 1);
        let fg = resultant(&f, &g, 0).unwrap();
        let gf = resultant(&g, &f, 0).unwrap();
        let expected = if (df * dg) % 2 == 1 { gf.neg() } else { gf };
        prop_assert_eq!(fg, expected);
    }
}

#[test]
fn monomial_basis_count_identities() {
    let binom = |n: i64, k: i64| -> i64 {
        if n < k || k < 0 {
            return 0;
        }
        let mut acc = 1i64;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    for m in 0..=6i64 {
        for n in 0..=6i64 {
            let count = monomial_basis(m, n).len() as i64;
            assert_eq!(count, (m + 1) * (n + 1) * (m + n + 2) / 2);
            assert_eq!(
                count,
                binom(m + 2, 2) * binom(n + 2, 2) - binom(m + 1, 2) * binom(n + 1, 2)
            );
        }
    }
}

#[test]
fn graded_lex_order_is_canonical() {
    // equality of polynomials is structural equality of the term maps
    let q = Field::Rational;
    let cv = chart_vars();
    let a = MPoly::monomial(q, &cv, vec![2, 0, 0], q.from_i64(1))
        .add(&MPoly::monomial(q, &cv, vec![0, 1, 0], q.from_i64(3)));
    let b = MPoly::monomial(q, &cv, vec![0, 1, 0], q.from_i64(3))
        .add(&MPoly::monomial(q, &cv, vec![2, 0, 0], q.from_i64(1)));
    assert_eq!(a, b);
    let m1 = Monomial(vec![1, 1, 0]);
    let m2 = Monomial(vec![0, 0, 3]);
    // degree dominates, then lexicographic comparison
    assert!(m1 < m2);
}
