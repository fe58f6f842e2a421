//! Quartic threefolds through a complete intersection of three quadrics:
//! `F = q1 q~1 + q2 q~2 + q3 q~3` with random cofactors.

use pfq_core::arith::{PrimeField, Rational, Rationals};
use pfq_core::groebner::{
    smoothness_certificate, GroebnerCache, SmoothnessCertificate, SmoothnessVerdict,
};
use pfq_core::hilbert::{curve_invariants, CurveInvariants};
use pfq_core::linalg::{decompose_in_ideal, quadratic_form_rank};
use pfq_core::poly::{monomials_of_degree, Monomial, Polynomial, VarContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

use crate::report::{Check, Verdict};
use crate::CliError;

/// Cofactor draws before giving up on a smooth quartic.
pub const CI_ATTEMPTS: usize = 10;
/// Integer coefficients of random quadrics lie in `-COEFF_BOUND..=COEFF_BOUND`.
pub const COEFF_BOUND: i64 = 5;
/// ChaCha stream used for cofactors, so that input quadrics drawn from the
/// same seed on stream 0 are independent of them.
const COFACTOR_STREAM: u64 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct CiAttempt {
    pub cofactors: Vec<String>,
    pub smoothness: Vec<SmoothnessCertificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    /// Cofactors found by exact linear algebra over Q (not the drawn ones).
    pub cofactors: Vec<String>,
    pub identity_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CiQuarticReport {
    pub quadrics: Vec<String>,
    pub curve_prime: u64,
    pub curve_invariants: CurveInvariants,
    pub attempts: Vec<CiAttempt>,
    /// The first quartic certified smooth at every prime.
    pub quartic: Option<String>,
    pub decomposition: Option<Decomposition>,
    /// Rank of `sum l_i l~_i` on the 15 Veronese coordinates.
    pub veronese_rank: Option<usize>,
}

impl CiQuarticReport {
    pub fn checks(&self) -> Vec<Check> {
        let mut checks = vec![Check::expect_eq(
            "curve invariants (dim, deg, p_a)",
            (
                self.curve_invariants.dim,
                self.curve_invariants.degree,
                self.curve_invariants.arithmetic_genus,
            ),
            (1, 8, 5),
        )];
        match &self.quartic {
            Some(_) => checks.push(Check::new(
                "smooth quartic",
                Verdict::Pass,
                format!("attempt {} of {CI_ATTEMPTS}", self.attempts.len()),
            )),
            None => checks.push(Check::new(
                "smooth quartic",
                Verdict::Inconclusive,
                format!("no smooth quartic in {CI_ATTEMPTS} cofactor draws"),
            )),
        }
        if let Some(d) = &self.decomposition {
            checks.push(Check::new(
                "decomposition identity",
                Verdict::from_bool(d.identity_verified),
                "F - sum q_i h_i = 0 over Q",
            ));
        }
        if let Some(r) = self.veronese_rank {
            checks.push(Check::expect_eq("veronese quadric rank", r, 6));
        }
        checks
    }
}

/// Quadric with integer coefficients drawn uniformly from the bound.
pub fn random_integer_form(
    ctx: &Arc<VarContext>,
    degree: u32,
    rng: &mut impl Rng,
) -> Polynomial<Rationals> {
    Polynomial::from_terms(
        Rationals,
        ctx.clone(),
        monomials_of_degree(ctx.len(), degree).into_iter().map(|m| {
            (
                m,
                Rational::from_integer(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND).into()),
            )
        }),
    )
}

/// Veronese coordinate names `z{i}{j}` for `x_i x_j`, `i <= j`, 1-based.
fn veronese_context(n: usize) -> (Arc<VarContext>, Vec<Monomial>) {
    let monos = monomials_of_degree(n, 2);
    let names = monos.iter().map(|m| {
        let vars: Vec<usize> = (0..n)
            .flat_map(|i| std::iter::repeat_n(i + 1, m.exponent(i) as usize))
            .collect();
        format!("z{}{}", vars[0], vars[1])
    });
    let ctx = VarContext::new(names.collect::<Vec<_>>()).expect("valid names");
    (ctx, monos)
}

/// The quadric as a linear form in Veronese coordinates.
fn veronese_linear(
    q: &Polynomial<Rationals>,
    ctx: &Arc<VarContext>,
    monos: &[Monomial],
) -> Polynomial<Rationals> {
    Polynomial::from_terms(
        Rationals,
        ctx.clone(),
        monos
            .iter()
            .enumerate()
            .map(|(k, m)| (Monomial::var(k), q.coefficient(m))),
    )
}

fn check_quadrics(quadrics: &[Polynomial<Rationals>]) -> Result<(), CliError> {
    if quadrics.len() != 3 {
        return Err(CliError::Usage(format!(
            "need 3 quadrics, got {}",
            quadrics.len()
        )));
    }
    let ctx = quadrics[0].context();
    if ctx.len() != 5 || quadrics.iter().any(|q| q.context() != ctx) {
        return Err(CliError::Usage(
            "quadrics must share a context of 5 variables".into(),
        ));
    }
    if quadrics.iter().any(|q| q.homogeneous_degree() != Some(2)) {
        return Err(CliError::Usage(
            "inputs must be nonzero quadratic forms".into(),
        ));
    }
    Ok(())
}

/// Draws cofactors from `seed` until `F` is certified smooth at every prime
/// in `primes`, then checks the decomposition, the curve invariants of the
/// quadrics (mod `primes[0]`) and the Veronese rank.
pub fn ci_quartic_pipeline(
    quadrics: &[Polynomial<Rationals>],
    seed: u64,
    primes: &[u64],
    cache: Option<&GroebnerCache>,
) -> Result<CiQuarticReport, CliError> {
    check_quadrics(quadrics)?;
    let first = *primes
        .first()
        .ok_or_else(|| CliError::Usage("no primes".into()))?;
    let field = PrimeField::new(first)?;
    let ctx = quadrics[0].context().clone();

    let reduced: Vec<_> = quadrics
        .iter()
        .map(|q| q.reduce(&field))
        .collect::<Result<_, _>>()?;
    let invariants = curve_invariants(&reduced, cache)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(COFACTOR_STREAM);
    let mut attempts = Vec::new();
    let mut found = None;
    for _ in 0..CI_ATTEMPTS {
        let cofactors: Vec<_> = (0..3)
            .map(|_| random_integer_form(&ctx, 2, &mut rng))
            .collect();
        let f = quadrics
            .iter()
            .zip(&cofactors)
            .fold(Polynomial::zero(Rationals, ctx.clone()), |acc, (q, c)| {
                &acc + &(q * c)
            });
        let mut smoothness = Vec::new();
        if f.homogeneous_degree() == Some(4) {
            for &p in primes {
                let cert = smoothness_certificate(&f, p, cache)?;
                let smooth = cert.verdict == SmoothnessVerdict::Smooth;
                smoothness.push(cert);
                if !smooth {
                    break;
                }
            }
        }
        let smooth = smoothness.len() == primes.len()
            && smoothness
                .iter()
                .all(|c| c.verdict == SmoothnessVerdict::Smooth);
        attempts.push(CiAttempt {
            cofactors: cofactors.iter().map(ToString::to_string).collect(),
            smoothness,
        });
        if smooth {
            found = Some((f, cofactors));
            break;
        }
    }

    let Some((f, cofactors)) = found else {
        return Ok(CiQuarticReport {
            quadrics: quadrics.iter().map(ToString::to_string).collect(),
            curve_prime: first,
            curve_invariants: invariants,
            attempts,
            quartic: None,
            decomposition: None,
            veronese_rank: None,
        });
    };

    let decomposition = decompose_in_ideal(&f, quadrics)?.map(|h| {
        let recombined = quadrics
            .iter()
            .zip(&h)
            .fold(Polynomial::zero(Rationals, ctx.clone()), |acc, (q, c)| {
                &acc + &(q * c)
            });
        Decomposition {
            identity_verified: (&f - &recombined).is_zero(),
            cofactors: h.iter().map(ToString::to_string).collect(),
        }
    });
    let decomposition = decomposition.unwrap_or(Decomposition {
        cofactors: Vec::new(),
        identity_verified: false,
    });

    let (vctx, monos) = veronese_context(ctx.len());
    let form = quadrics.iter().zip(&cofactors).fold(
        Polynomial::zero(Rationals, vctx.clone()),
        |acc, (q, c)| {
            &acc + &(&veronese_linear(q, &vctx, &monos) * &veronese_linear(c, &vctx, &monos))
        },
    );
    let rank = quadratic_form_rank(&form)?;

    Ok(CiQuarticReport {
        quadrics: quadrics.iter().map(ToString::to_string).collect(),
        curve_prime: first,
        curve_invariants: invariants,
        attempts,
        quartic: Some(f.to_string()),
        decomposition: Some(decomposition),
        veronese_rank: Some(rank),
    })
}
