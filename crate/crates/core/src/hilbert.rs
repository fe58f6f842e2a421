//! Hilbert functions and polynomials of homogeneous ideals over GF(p),
//! read off the leading-term ideal of a Gröbner basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{PrimeField, Rational};
use crate::groebner::{buchberger_cached, GroebnerCache, GroebnerError, MonomialOrder};
use crate::pfaffian::{generic_skew_matrix, random_linear_skew_matrix};
use crate::poly::{
    monomials_of_degree, parse_poly_in, Monomial, PolyError, Polynomial, VarContext,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("Hilbert polynomial {0} has degree at least 2: not a curve")]
    NotACurve(String),
    #[error("no zero-dimensional slice after {attempts} draws")]
    DegenerateSlicing { attempts: usize },
    #[error("ideal input: {0}")]
    Input(String),
}

/// Polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: i64) -> Rational {
        let t = Rational::from_integer(t.into());
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &t + c)
    }

    fn add_scaled(&mut self, other: &UniPoly, k: &Rational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * k;
        }
        *self = Self::from_coeffs(std::mem::take(&mut self.coeffs));
    }

    /// `C(t + a, k)` as a polynomial in `t`.
    pub fn binomial(a: i64, k: u32) -> Self {
        let mut c = vec![Rational::one()];
        let mut fact = Rational::one();
        for j in 0..k as i64 {
            // multiply by (t + a - j)
            let shift = Rational::from_integer((a - j).into());
            let mut next = vec![Rational::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i] += ci * &shift;
                next[i + 1] += ci;
            }
            c = next;
            fact *= Rational::from_integer((j + 1).into());
        }
        Self::from_coeffs(c.into_iter().map(|x| x / &fact).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let a = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Hilbert series `h(t) / (1 - t)^dim` of `R/I`, with `dim` the Krull
/// dimension and `h(1) != 0` (unless the quotient is zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub h_vector: Vec<i128>,
    pub krull_dim: usize,
}

type Numerator = Vec<i128>;

fn num_mul(a: &[i128], b: &[i128]) -> Numerator {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn num_add_shifted(a: &mut Numerator, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N` with `HS(R/I) = N(t) / (1 - t)^n` for the monomial ideal
/// `I`, by the recursion `N(I) = N(I + x) + t N(I : x)` on a pivot variable.
fn series_numerator(
    gens: Vec<Monomial>,
    nvars: usize,
    memo: &mut HashMap<Vec<Monomial>, Numerator>,
) -> Numerator {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let (pivot, &most) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("nvars > 0");
    if most <= 1 {
        // pairwise coprime: a regular sequence
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0i128; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            num_mul(&acc, &f)
        });
    }
    if let Some(n) = memo.get(&gens) {
        return n.clone();
    }
    let x = Monomial::var(pivot);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !x.divides(g)).copied().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.div(&x).unwrap_or(*g)).collect();
    let mut n = series_numerator(plus, nvars, memo);
    let c = series_numerator(colon, nvars, memo);
    num_add_shifted(&mut n, &c, 1);
    while n.len() > 1 && n.last() == Some(&0) {
        n.pop();
    }
    memo.insert(gens, n.clone());
    n
}

/// Hilbert series of `R / (leading monomials)` in `nvars` variables.
pub fn monomial_hilbert_series(leading: &[Monomial], nvars: usize) -> HilbertSeries {
    let mut memo = HashMap::new();
    let mut n = series_numerator(leading.to_vec(), nvars, &mut memo);
    let mut dim = nvars;
    // divide by (1 - t) while t = 1 is a root
    while dim > 0 && !n.is_empty() && n.iter().sum::<i128>() == 0 {
        let mut q = vec![0i128; n.len() - 1];
        let mut acc = 0;
        for (i, c) in n.iter().enumerate().take(n.len() - 1) {
            acc += c;
            q[i] = acc;
        }
        n = q;
        dim -= 1;
    }
    while n.last() == Some(&0) {
        n.pop();
    }
    if n.is_empty() {
        dim = 0;
    }
    HilbertSeries {
        h_vector: n,
        krull_dim: dim,
    }
}

impl HilbertSeries {
    pub fn value(&self, t: u64) -> i128 {
        if self.krull_dim == 0 {
            return self.h_vector.get(t as usize).copied().unwrap_or(0);
        }
        let k = self.krull_dim as u32 - 1;
        self.h_vector
            .iter()
            .enumerate()
            .take_while(|(i, _)| *i as u64 <= t)
            .map(|(i, h)| h * crate::arith::binomial_ext(t as i64 - i as i64 + k as i64, k))
            .sum()
    }

    pub fn polynomial(&self) -> UniPoly {
        if self.krull_dim == 0 {
            return UniPoly::zero();
        }
        let k = self.krull_dim as u32 - 1;
        let mut hp = UniPoly::zero();
        for (i, h) in self.h_vector.iter().enumerate() {
            let b = UniPoly::binomial(k as i64 - i as i64, k);
            hp.add_scaled(&b, &Rational::from_integer((*h).into()));
        }
        hp
    }

    /// HF agrees with HP from this degree on.
    pub fn polynomial_bound(&self) -> u64 {
        (self.h_vector.len() as i64 - self.krull_dim as i64).max(0) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HilbertData {
    /// `HF(R/I, t)` for `t` in `0..=tmax`.
    pub hf_table: Vec<u64>,
    #[serde(serialize_with = "ser_display")]
    pub hp: UniPoly,
    /// First `t` from which HF equals HP.
    pub stabilization_degree: u64,
    pub h_vector: Vec<i128>,
    /// Projective dimension of the zero scheme (`-1` when empty).
    pub projective_dim: i64,
    pub basis_size: usize,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn check_homogeneous(gens: &[Polynomial<PrimeField>]) -> Result<(), HilbertError> {
    if gens.iter().any(|g| !g.is_zero() && !g.is_homogeneous()) {
        return Err(GroebnerError::Inhomogeneous.into());
    }
    Ok(())
}

/// Hilbert series of `R/I` via a degrevlex Gröbner basis.
pub fn hilbert_series(
    gens: &[Polynomial<PrimeField>],
    cache: Option<&GroebnerCache>,
) -> Result<(HilbertSeries, usize), HilbertError> {
    check_homogeneous(gens)?;
    let nonzero: Vec<_> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let nvars = gens.first().ok_or(GroebnerError::NoGenerators)?.nvars();
    if nonzero.is_empty() {
        return Ok((monomial_hilbert_series(&[], nvars), 0));
    }
    let gb = buchberger_cached(&nonzero, MonomialOrder::DegRevLex, None, cache)?;
    Ok((
        monomial_hilbert_series(gb.leading_monomials(), nvars),
        gb.len(),
    ))
}

pub fn hilbert_function(gens: &[Polynomial<PrimeField>], t: u64) -> Result<u64, HilbertError> {
    let (hs, _) = hilbert_series(gens, None)?;
    Ok(hs.value(t) as u64)
}

pub fn hilbert_polynomial(gens: &[Polynomial<PrimeField>]) -> Result<UniPoly, HilbertError> {
    Ok(hilbert_series(gens, None)?.0.polynomial())
}

pub fn hilbert_data(
    gens: &[Polynomial<PrimeField>],
    tmax: u64,
    cache: Option<&GroebnerCache>,
) -> Result<HilbertData, HilbertError> {
    let (hs, basis_size) = hilbert_series(gens, cache)?;
    let hp = hs.polynomial();
    let bound = hs.polynomial_bound();
    let mut stab = bound;
    while stab > 0 && Rational::from_integer(hs.value(stab - 1).into()) == hp.eval(stab as i64 - 1)
    {
        stab -= 1;
    }
    Ok(HilbertData {
        hf_table: (0..=tmax).map(|t| hs.value(t) as u64).collect(),
        projective_dim: hp.degree().map_or(-1, |d| d as i64),
        hp,
        stabilization_degree: stab,
        h_vector: hs.h_vector,
        basis_size,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    /// Projective dimension; `-1` for the empty scheme.
    pub dim: i64,
    pub degree: i64,
    /// `(-1)^dim (HP(0) - 1)`, i.e. `1 - HP(0)` for curves.
    pub arithmetic_genus: i64,
}

pub fn invariants_from_hp(hp: &UniPoly) -> Result<CurveInvariants, HilbertError> {
    let to_i64 = |r: Rational| -> Result<i64, HilbertError> {
        if !r.is_integer() {
            return Err(HilbertError::Input(format!(
                "non-integral invariant in {hp}"
            )));
        }
        r.to_integer()
            .to_i64()
            .ok_or_else(|| HilbertError::Input("invariant out of range".into()))
    };
    match hp.degree() {
        None => Ok(CurveInvariants {
            dim: -1,
            degree: 0,
            arithmetic_genus: 0,
        }),
        Some(0) => {
            let c = to_i64(hp.coeff(0))?;
            Ok(CurveInvariants {
                dim: 0,
                degree: c,
                arithmetic_genus: c - 1,
            })
        }
        Some(1) => Ok(CurveInvariants {
            dim: 1,
            degree: to_i64(hp.coeff(1))?,
            arithmetic_genus: 1 - to_i64(hp.coeff(0))?,
        }),
        Some(_) => Err(HilbertError::NotACurve(hp.to_string())),
    }
}

pub fn curve_invariants(
    gens: &[Polynomial<PrimeField>],
    cache: Option<&GroebnerCache>,
) -> Result<CurveInvariants, HilbertError> {
    invariants_from_hp(&hilbert_series(gens, cache)?.0.polynomial())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceReport {
    pub degree: u64,
    pub scheme_dim: usize,
    pub ambient_vars: usize,
    pub sliced_vars: usize,
    /// Hilbert polynomial of each draw, in order; all but the last degenerate.
    pub attempts: Vec<String>,
}

pub const SLICE_RETRIES: usize = 10;

/// Degree of a projective scheme of dimension `scheme_dim` cut out by
/// `gens`: restrict to a random linear subspace of complementary dimension
/// (substituting `x = A y` for a random `N x (N - scheme_dim)` matrix `A`)
/// and read the constant Hilbert polynomial of the resulting points.
pub fn slice_degree(
    gens: &[Polynomial<PrimeField>],
    scheme_dim: usize,
    seed: u64,
    cache: Option<&GroebnerCache>,
) -> Result<SliceReport, HilbertError> {
    check_homogeneous(gens)?;
    let first = gens.first().ok_or(GroebnerError::NoGenerators)?;
    let field = *first.field();
    let n = first.nvars();
    if scheme_dim + 1 >= n {
        return Err(HilbertError::Input(format!(
            "dimension {scheme_dim} leaves no room in {n} variables"
        )));
    }
    let m = n - scheme_dim;
    let ctx = VarContext::indexed("y", m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = Vec::new();
    for _ in 0..SLICE_RETRIES {
        let images: Vec<Polynomial<PrimeField>> = (0..n)
            .map(|_| {
                Polynomial::from_terms(
                    field,
                    ctx.clone(),
                    (0..m).map(|k| (Monomial::var(k), rng.gen_range(0..field.modulus()))),
                )
            })
            .collect();
        let sliced: Vec<_> = gens
            .iter()
            .map(|g| g.substitute(&images))
            .collect::<Result<_, _>>()?;
        let hp = hilbert_series(&sliced, cache)?.0.polynomial();
        attempts.push(hp.to_string());
        if hp.degree() == Some(0) {
            let d = hp.coeff(0);
            if d.is_integer() && d.is_positive() {
                return Ok(SliceReport {
                    degree: d.to_integer().to_u64().expect("positive"),
                    scheme_dim,
                    ambient_vars: n,
                    sliced_vars: m,
                    attempts,
                });
            }
        }
    }
    Err(HilbertError::DegenerateSlicing {
        attempts: attempts.len(),
    })
}

/// Ideal file `{"vars": [...], "gens": ["poly", ...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

pub fn parse_ideal_json(
    text: &str,
    field: &PrimeField,
) -> Result<Vec<Polynomial<PrimeField>>, HilbertError> {
    let file: IdealFile =
        serde_json::from_str(text).map_err(|e| HilbertError::Input(e.to_string()))?;
    let ctx = VarContext::new(file.vars)?;
    if file.gens.is_empty() {
        return Err(HilbertError::Input("no generators".into()));
    }
    Ok(file
        .gens
        .iter()
        .map(|g| parse_poly_in(g, &ctx, field))
        .collect::<Result<_, _>>()?)
}

pub const BUILTIN_IDEALS: [&str; 4] = ["pfaffian7", "pfaffian7-generic", "grass27", "ci-quadrics"];

/// Built-in ideals:
/// - `pfaffian7`: the 7 cubic Pfaffians of a random 7x7 skew matrix of
///   linear forms in `x1..x5` (drawn from `seed`);
/// - `pfaffian7-generic`: the same for the generic 7x7 in 21 Plücker variables;
/// - `grass27`: the 35 quadratic 4x4 sub-Pfaffians of the generic 7x7;
/// - `ci-quadrics`: three random quadrics in `x1..x5`.
pub fn builtin_ideal(
    name: &str,
    field: PrimeField,
    seed: u64,
) -> Option<Vec<Polynomial<PrimeField>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "pfaffian7" => {
            let m = random_linear_skew_matrix(field, VarContext::indexed("x", 5), 7, &mut rng);
            Some(m.odd_pfaffian_family().expect("odd size"))
        }
        "pfaffian7-generic" => Some(
            generic_skew_matrix(field, 7)
                .odd_pfaffian_family()
                .expect("odd size"),
        ),
        "grass27" => Some(generic_skew_matrix(field, 7).quadric_sub_pfaffians()),
        "ci-quadrics" => Some(random_forms(
            field,
            VarContext::indexed("x", 5),
            2,
            3,
            &mut rng,
        )),
        _ => None,
    }
}

/// `count` forms of degree `d` with uniformly random coefficients.
pub fn random_forms(
    field: PrimeField,
    ctx: Arc<VarContext>,
    d: u32,
    count: usize,
    rng: &mut impl Rng,
) -> Vec<Polynomial<PrimeField>> {
    let basis = monomials_of_degree(ctx.len(), d);
    (0..count)
        .map(|_| {
            Polynomial::from_terms(
                field,
                ctx.clone(),
                basis
                    .iter()
                    .map(|m| (*m, rng.gen_range(0..field.modulus()))),
            )
        })
        .collect()
}
