//! Property tests over the public API. Each instance is generated from a
//! proptest-chosen seed so failures shrink to a reproducible seed.

use pfq_core::arith::{binomial_ext, field_inv, Field, PrimeField, Rationals};
use pfq_core::groebner::{buchberger, normal_form, GroebnerBasis, MonomialOrder};
use pfq_core::hilbert::{hilbert_function, random_forms};
use pfq_core::linalg::{coefficient_matrix, decompose_in_ideal, ExactMatrix};
use pfq_core::pfaffian::{f0, generic_skew_matrix, pfaffian_of_matrix, random_linear_skew_matrix};
use pfq_core::poly::{monomials_of_degree, Monomial, Polynomial, VarContext};
use pfq_core::sheafcoh::{bott_h, complex_cohomology, complex_euler, TwistedFreeComplex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 31991;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_skew(rng: &mut ChaCha8Rng, f: PrimeField, n: usize) -> ExactMatrix<PrimeField> {
    let mut m = ExactMatrix::zero(f, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(0..f.modulus());
            m.set(i, j, v);
            m.set(j, i, f.neg(&v));
        }
    }
    m
}

/// Determinant by cofactor expansion along the first row.
fn det_by_cofactors(m: &ExactMatrix<PrimeField>) -> u64 {
    let f = *m.field();
    fn rec(m: &ExactMatrix<PrimeField>, f: &PrimeField, rows: &[usize], cols: &[usize]) -> u64 {
        if rows.is_empty() {
            return 1;
        }
        let mut acc = 0;
        for (k, &c) in cols.iter().enumerate() {
            let a = *m.get(rows[0], c);
            if a == 0 {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = f.mul(&a, &rec(m, f, &rows[1..], &rest));
            acc = if k % 2 == 0 {
                f.add(&acc, &t)
            } else {
                f.sub(&acc, &t)
            };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.rows()).collect();
    rec(m, &f, &idx, &idx)
}

/// Random form of degree `d` with about `terms` terms.
fn sparse_form(
    rng: &mut ChaCha8Rng,
    f: PrimeField,
    n: usize,
    d: u32,
    terms: usize,
) -> Polynomial<PrimeField> {
    let basis = monomials_of_degree(n, d);
    Polynomial::from_terms(
        f,
        VarContext::indexed("x", n),
        (0..terms).map(|_| {
            (
                basis[rng.gen_range(0..basis.len())],
                rng.gen_range(1..f.modulus()),
            )
        }),
    )
}

fn remainder(f: &Polynomial<PrimeField>, gb: &GroebnerBasis) -> Polynomial<PrimeField> {
    normal_form(f, gb).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_an_involution(a in 1u64..P) {
        prop_assert_eq!(field_inv(field_inv(a, P).unwrap(), P).unwrap(), a);
    }

    #[test]
    fn pascal_identity(n in -20i64..=20, k in 1u32..=10) {
        prop_assert_eq!(binomial_ext(n, k), binomial_ext(n - 1, k) + binomial_ext(n - 1, k - 1));
    }

    #[test]
    fn negative_binomial_sign_rule(n in 1i64..=20, k in 0u32..=10) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(binomial_ext(-n, k), sign * binomial_ext(n + k as i64 - 1, k));
    }

    #[test]
    fn euler_relation_on_random_forms(seed in any::<u64>(), d in 1u32..5) {
        let mut r = rng(seed);
        let f = sparse_form(&mut r, gf(P), 4, d, 6);
        let ctx = f.context().clone();
        let lhs = f.gradient().iter().enumerate().fold(
            Polynomial::zero(gf(P), ctx),
            |acc, (v, g)| &acc + &g.mul_monomial(&Monomial::var(v)),
        );
        prop_assert_eq!(lhs, f.scale(&(d as u64)));
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = gf(P);
        let a = sparse_form(&mut r, f, 3, 2, 4);
        let b = sparse_form(&mut r, f, 3, 3, 4);
        let pt: Vec<u64> = (0..3).map(|_| r.gen_range(0..P)).collect();
        prop_assert_eq!(
            (&a * &b).evaluate(&pt).unwrap(),
            f.mul(&a.evaluate(&pt).unwrap(), &b.evaluate(&pt).unwrap())
        );
    }

    #[test]
    fn modular_rank_bounded_by_rational_rank(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let mut r = rng(seed);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-3..=3)).collect()).collect();
        let q = ExactMatrix::from_rows(
            Rationals,
            data.iter().map(|row| row.iter().map(|&v| Rationals.from_i64(v)).collect()).collect(),
        );
        let small = gf(3);
        let m = ExactMatrix::from_rows(
            small,
            data.iter().map(|row| row.iter().map(|&v| small.from_i64(v)).collect()).collect(),
        );
        prop_assert!(m.rank() <= q.rank());
        prop_assert_eq!(q.rank() + q.kernel_basis().len(), cols);
    }

    #[test]
    fn decomposition_of_ideal_members(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = gf(P);
        let ctx = VarContext::indexed("x", 4);
        let gens = random_forms(f, ctx.clone(), 2, 2, &mut r);
        let cof = random_forms(f, ctx.clone(), 1, 2, &mut r);
        let target = &(&gens[0] * &cof[0]) + &(&gens[1] * &cof[1]);
        let h = decompose_in_ideal(&target, &gens).unwrap().expect("member");
        let back = &(&gens[0] * &h[0]) + &(&gens[1] * &h[1]);
        prop_assert!((&target - &back).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pfaffian_squared_is_determinant(seed in any::<u64>(), half in 1usize..=4) {
        let mut r = rng(seed);
        let f = gf(P);
        let m = random_skew(&mut r, f, 2 * half);
        let pf = pfaffian_of_matrix(&m).unwrap();
        prop_assert_eq!(f.mul(&pf, &pf), det_by_cofactors(&m));
    }

    #[test]
    fn congruence_covariance(seed in any::<u64>(), half in 1usize..=3) {
        let mut r = rng(seed);
        let f = gf(P);
        let n = 2 * half;
        let m = random_skew(&mut r, f, n);
        let a = ExactMatrix::from_rows(
            f,
            (0..n).map(|_| (0..n).map(|_| r.gen_range(0..P)).collect()).collect(),
        );
        let congruent = a.transpose().mul(&m).unwrap().mul(&a).unwrap();
        prop_assert_eq!(
            pfaffian_of_matrix(&congruent).unwrap(),
            f.mul(&a.determinant().unwrap(), &pfaffian_of_matrix(&m).unwrap())
        );
    }

    #[test]
    fn row_expansion_on_symbolic_6x6(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_linear_skew_matrix(gf(P), VarContext::indexed("x", 3), 6, &mut r);
        let pf = m.pfaffian().unwrap();
        let mut expansion = Polynomial::zero(gf(P), m.context().clone());
        for j in 1..6 {
            let term = &m.entry(0, j) * &m.sub_pfaffian(0, j).unwrap();
            expansion = if j % 2 == 1 { &expansion + &term } else { &expansion - &term };
        }
        prop_assert_eq!(pf, expansion);
    }

    #[test]
    fn groebner_postconditions(seed in any::<u64>(), lex in any::<bool>()) {
        let mut r = rng(seed);
        let f = gf(P);
        let gens: Vec<_> = (0..3).map(|_| { let d = r.gen_range(1..=3); sparse_form(&mut r, f, 3, d, 3) }).collect();
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let gb = buchberger(&gens, order).unwrap();
        for g in &gens {
            prop_assert!(remainder(g, &gb).is_zero());
        }
        let basis = &gb.generators;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (la, ca) = order.leading_term(&basis[i]).unwrap();
                let (lb, cb) = order.leading_term(&basis[j]).unwrap();
                let l = la.lcm(&lb);
                let s = &basis[i].mul_monomial(&l.div(&la).unwrap()).scale(&f.inv(&ca).unwrap())
                    - &basis[j].mul_monomial(&l.div(&lb).unwrap()).scale(&f.inv(&cb).unwrap());
                prop_assert!(remainder(&s, &gb).is_zero());
            }
        }
        prop_assert_eq!(buchberger(&gens, order).unwrap().generators, gb.generators);
    }

    #[test]
    fn hilbert_function_matches_linear_algebra(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = gf(P);
        let n = 4;
        let gens: Vec<_> = (0..3).map(|_| { let d = r.gen_range(1..=3); sparse_form(&mut r, f, n, d, 3) }).collect();
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        for t in 0..=6u32 {
            let mut products = Vec::new();
            for g in gens.iter().filter(|g| !g.is_zero()) {
                let d = g.degree().unwrap();
                if d <= t {
                    products.extend(monomials_of_degree(n, t - d).iter().map(|m| g.mul_monomial(m)));
                }
            }
            let total = monomials_of_degree(n, t).len();
            let oracle = (total - coefficient_matrix(&f, n, t, &products).rank()) as u64;
            prop_assert_eq!(hilbert_function(&gens, t as u64).unwrap(), oracle);
        }
    }

    #[test]
    fn serre_duality(n in 1usize..=6, d in -12i64..=12, i in 0usize..=6) {
        prop_assume!(i <= n);
        prop_assert_eq!(bott_h(n, d, i), bott_h(n, -d - n as i64 - 1, n - i));
    }

    #[test]
    fn forced_columns_sum_to_euler(t in -20i64..=20) {
        for name in ["eacm", "rodland", "be-curve"] {
            let cx = TwistedFreeComplex::builtin(name).unwrap();
            let col = complex_cohomology(&cx, t);
            if let Some(sum) = col.alternating_sum() {
                prop_assert_eq!(sum, complex_euler(&cx, t));
            }
        }
    }
}

#[test]
fn euler_relation_on_f0() {
    let f = f0();
    let lhs = f.gradient().iter().enumerate().fold(
        Polynomial::zero(Rationals, f.context().clone()),
        |acc, (v, g)| &acc + &g.mul_monomial(&Monomial::var(v)),
    );
    assert_eq!(lhs, f.scale(&Rationals.from_i64(4)));
}

#[test]
fn last_row_pfaffians_avoid_last_column_variables() {
    let m = generic_skew_matrix(Rationals, 8);
    let names = m.context().names().to_vec();
    for r in 0..7 {
        let pf = m.sub_pfaffian(r, 7).unwrap();
        for v in pf.support() {
            assert!(!names[v].ends_with('7'), "Pf_{{{r}7}} uses {}", names[v]);
        }
    }
}
