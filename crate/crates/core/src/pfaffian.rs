//! Pfaffians of skew-symmetric matrices of polynomials.
//!
//! Sign convention: `Pf(A) = sum_{j>=1} (-1)^(j+1) a_{0j} Pf(A without rows
//! and columns 0, j)` (0-based), so the 2x2 block `[[0, a], [-a, 0]]` has
//! Pfaffian `a` and the block-diagonal sum of such blocks with `a = 1` has
//! Pfaffian `+1`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Field, PrimeField, Rationals};
use crate::linalg::{coefficient_matrix, ExactMatrix};
use crate::poly::{parse_poly, plucker_pairs, Monomial, PolyError, Polynomial, VarContext};

/// The matrix `M0` of linear forms in `x1..x5`, as shipped in `data/m0.json`.
pub const M0_JSON: &str = include_str!("../../../data/m0.json");
/// `F0` in the polynomial grammar, as shipped in `data/f0.txt`.
pub const F0_TEXT: &str = include_str!("../../../data/f0.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfaffianError {
    #[error("Pfaffian needs an even size, got {0}")]
    OddSize(usize),
    #[error("odd Pfaffian family needs an odd size, got {0}")]
    EvenSize(usize),
    #[error("index ({0}, {1}) out of range or on the diagonal")]
    BadIndex(usize, usize),
    #[error("wrong shape: {0}")]
    Shape(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("matrix json: {0}")]
    Json(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Skew-symmetric `n x n` matrix; only the strict upper triangle is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewPolyMatrix<F: Field> {
    n: usize,
    field: F,
    ctx: Arc<VarContext>,
    upper: Vec<Polynomial<F>>,
}

#[inline]
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    vars: Vec<String>,
    entries: Vec<EntryFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryFile {
    i: usize,
    j: usize,
    poly: String,
}

impl<F: Field> SkewPolyMatrix<F> {
    pub fn zero(field: F, ctx: Arc<VarContext>, n: usize) -> Self {
        let z = Polynomial::zero(field.clone(), ctx.clone());
        Self {
            n,
            field,
            ctx,
            upper: vec![z; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// Sets entry `(i, j)`, `i < j`; `(j, i)` is implied as its negative.
    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) -> Result<(), PfaffianError> {
        if i >= j || j >= self.n {
            return Err(PfaffianError::BadIndex(i, j));
        }
        if p.context() != &self.ctx || p.field() != &self.field {
            return Err(PolyError::ContextMismatch.into());
        }
        let k = pair_index(self.n, i, j);
        self.upper[k] = p;
        Ok(())
    }

    /// Entry `(i, j)` for any indices, using skew-symmetry.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial<F> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[pair_index(self.n, i, j)].clone(),
            Greater => self.upper[pair_index(self.n, j, i)].neg(),
            Equal => Polynomial::zero(self.field.clone(), self.ctx.clone()),
        }
    }

    fn upper_ref(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.upper[pair_index(self.n, i, j)]
    }

    /// Upper-triangle entries in `(0,1), (0,2), ...` order.
    pub fn upper_entries(&self) -> impl Iterator<Item = ((usize, usize), &Polynomial<F>)> + '_ {
        plucker_pairs(self.n).map(move |(i, j)| ((i, j), self.upper_ref(i, j)))
    }

    /// True when every entry is a linear form (zero allowed).
    pub fn is_linear(&self) -> bool {
        self.upper
            .iter()
            .all(|p| p.is_zero() || p.homogeneous_degree() == Some(1))
    }

    /// Principal submatrix on the given sorted indices.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<Self, PfaffianError> {
        let mut out = Self::zero(self.field.clone(), self.ctx.clone(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if i >= self.n || j >= self.n {
                    return Err(PfaffianError::BadIndex(i, j));
                }
                out.set(a, b, self.entry(i, j))?;
            }
        }
        Ok(out)
    }

    pub fn map_field<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Result<G::Elem, ArithError> + Copy,
    ) -> Result<SkewPolyMatrix<G>, ArithError> {
        Ok(SkewPolyMatrix {
            n: self.n,
            field: target.clone(),
            ctx: self.ctx.clone(),
            upper: self
                .upper
                .iter()
                .map(|p| p.map_field(target, f))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Numeric matrix at a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<ExactMatrix<F>, PfaffianError> {
        let mut m = ExactMatrix::zero(self.field.clone(), self.n, self.n);
        for ((i, j), p) in self.upper_entries() {
            let v = p.evaluate(point)?;
            m.set(j, i, self.field.neg(&v));
            m.set(i, j, v);
        }
        Ok(m)
    }

    fn ring(&self) -> PolyRing<F> {
        PolyRing {
            field: self.field.clone(),
            ctx: self.ctx.clone(),
        }
    }

    /// Pfaffian of the whole matrix.
    pub fn pfaffian(&self) -> Result<Polynomial<F>, PfaffianError> {
        if self.n % 2 == 1 {
            return Err(PfaffianError::OddSize(self.n));
        }
        let mut memo = HashMap::new();
        Ok(pf_subset(
            full_mask(self.n),
            &|i, j| self.upper_ref(i, j),
            &self.ring(),
            &mut memo,
        ))
    }

    /// Pfaffian with rows and columns `i` and `j` deleted.
    pub fn sub_pfaffian(&self, i: usize, j: usize) -> Result<Polynomial<F>, PfaffianError> {
        if self.n % 2 == 1 {
            return Err(PfaffianError::OddSize(self.n));
        }
        if i == j || i >= self.n || j >= self.n {
            return Err(PfaffianError::BadIndex(i, j));
        }
        let mut memo = HashMap::new();
        let mask = full_mask(self.n) & !(1 << i) & !(1 << j);
        Ok(pf_subset(
            mask,
            &|a, b| self.upper_ref(a, b),
            &self.ring(),
            &mut memo,
        ))
    }

    /// All `Pf_{ij}`, `i < j`, sharing one memo table.
    pub fn all_sub_pfaffians(&self) -> Result<Vec<((usize, usize), Polynomial<F>)>, PfaffianError> {
        if self.n % 2 == 1 {
            return Err(PfaffianError::OddSize(self.n));
        }
        let ring = self.ring();
        let mut memo = HashMap::new();
        Ok(plucker_pairs(self.n)
            .map(|(i, j)| {
                let mask = full_mask(self.n) & !(1 << i) & !(1 << j);
                (
                    (i, j),
                    pf_subset(mask, &|a, b| self.upper_ref(a, b), &ring, &mut memo),
                )
            })
            .collect())
    }

    /// For odd `n`, entry `r` is the Pfaffian with row and column `r` deleted.
    pub fn odd_pfaffian_family(&self) -> Result<Vec<Polynomial<F>>, PfaffianError> {
        if self.n.is_multiple_of(2) {
            return Err(PfaffianError::EvenSize(self.n));
        }
        let ring = self.ring();
        let mut memo = HashMap::new();
        Ok((0..self.n)
            .map(|r| {
                let mask = full_mask(self.n) & !(1 << r);
                pf_subset(mask, &|a, b| self.upper_ref(a, b), &ring, &mut memo)
            })
            .collect())
    }

    /// All `4x4` sub-Pfaffians `a_ij a_kl - a_ik a_jl + a_il a_jk`, `i<j<k<l`.
    pub fn quadric_sub_pfaffians(&self) -> Vec<Polynomial<F>> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let e = |a, b| self.upper_ref(a, b);
                        let t =
                            &(&(e(i, j) * e(k, l)) - &(e(i, k) * e(j, l))) + &(e(i, l) * e(j, k));
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

impl SkewPolyMatrix<Rationals> {
    /// Parses the matrix JSON format
    /// `{"n": .., "vars": [..], "entries": [{"i": .., "j": .., "poly": ".."}]}`.
    /// Omitted pairs are zero.
    pub fn from_json(text: &str) -> Result<Self, PfaffianError> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| PfaffianError::Json(e.to_string()))?;
        let ctx = VarContext::new(file.vars)?;
        let mut m = Self::zero(Rationals, ctx.clone(), file.n);
        let mut seen = BTreeSet::new();
        for e in file.entries {
            if !seen.insert((e.i, e.j)) {
                return Err(PfaffianError::Json(format!(
                    "duplicate entry ({}, {})",
                    e.i, e.j
                )));
            }
            m.set(e.i, e.j, parse_poly(&e.poly, &ctx)?)?;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let file = MatrixFile {
            n: self.n,
            vars: self.ctx.names().to_vec(),
            entries: self
                .upper_entries()
                .map(|((i, j), p)| EntryFile {
                    i,
                    j,
                    poly: p.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serialisable")
    }

    pub fn reduce<G: Field>(&self, target: &G) -> Result<SkewPolyMatrix<G>, ArithError> {
        self.map_field(target, |c| target.from_rational(c))
    }

    pub fn reduce_mod(&self, p: u64) -> Result<SkewPolyMatrix<PrimeField>, ArithError> {
        self.reduce(&PrimeField::new(p)?)
    }
}

/// Generic `n x n` skew matrix whose `(i, j)` entry is the Plücker variable
/// `x{i}{j}` (`n <= 10`).
pub fn generic_skew_matrix<F: Field>(field: F, n: usize) -> SkewPolyMatrix<F> {
    let ctx = VarContext::plucker(n);
    let mut m = SkewPolyMatrix::zero(field.clone(), ctx.clone(), n);
    for (k, (i, j)) in plucker_pairs(n).enumerate() {
        m.set(i, j, Polynomial::var(field.clone(), ctx.clone(), k))
            .expect("valid index");
    }
    m
}

/// Skew matrix of random linear forms in the given context.
pub fn random_linear_skew_matrix(
    field: PrimeField,
    ctx: Arc<VarContext>,
    n: usize,
    rng: &mut impl Rng,
) -> SkewPolyMatrix<PrimeField> {
    let mut m = SkewPolyMatrix::zero(field, ctx.clone(), n);
    for (i, j) in plucker_pairs(n) {
        let form = Polynomial::from_terms(
            field,
            ctx.clone(),
            (0..ctx.len()).map(|k| (Monomial::var(k), rng.gen_range(0..field.modulus()))),
        );
        m.set(i, j, form).expect("valid index");
    }
    m
}

/// The shipped matrix `M0`.
pub fn m0() -> SkewPolyMatrix<Rationals> {
    SkewPolyMatrix::from_json(M0_JSON).expect("shipped m0.json is valid")
}

/// The shipped quartic `F0` in the context of [`m0`].
pub fn f0() -> Polynomial<Rationals> {
    parse_poly(F0_TEXT.trim(), m0().context()).expect("shipped f0.txt is valid")
}

fn full_mask(n: usize) -> u32 {
    assert!(n <= 32, "Pfaffian expansion supports n <= 32");
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Minimal ring interface for the expansion.
trait PfRing {
    type T: Clone;
    fn one(&self) -> Self::T;
    fn zero(&self) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    /// `acc + sign * a * b`
    fn fma(&self, acc: Self::T, a: &Self::T, b: &Self::T, negative: bool) -> Self::T;
}

struct PolyRing<F: Field> {
    field: F,
    ctx: Arc<VarContext>,
}

impl<F: Field> PfRing for PolyRing<F> {
    type T = Polynomial<F>;
    fn one(&self) -> Polynomial<F> {
        Polynomial::one(self.field.clone(), self.ctx.clone())
    }
    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(self.field.clone(), self.ctx.clone())
    }
    fn is_zero(&self, a: &Polynomial<F>) -> bool {
        a.is_zero()
    }
    fn fma(
        &self,
        acc: Polynomial<F>,
        a: &Polynomial<F>,
        b: &Polynomial<F>,
        negative: bool,
    ) -> Polynomial<F> {
        let prod = a * b;
        if negative {
            &acc - &prod
        } else {
            &acc + &prod
        }
    }
}

struct ScalarRing<F: Field>(F);

impl<F: Field> PfRing for ScalarRing<F> {
    type T = F::Elem;
    fn one(&self) -> F::Elem {
        self.0.one()
    }
    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn fma(&self, acc: F::Elem, a: &F::Elem, b: &F::Elem, negative: bool) -> F::Elem {
        let prod = self.0.mul(a, b);
        if negative {
            self.0.sub(&acc, &prod)
        } else {
            self.0.add(&acc, &prod)
        }
    }
}

/// First-row expansion over the index set `mask`, memoised on subsets.
fn pf_subset<'a, R: PfRing>(
    mask: u32,
    upper: &impl Fn(usize, usize) -> &'a R::T,
    ring: &R,
    memo: &mut HashMap<u32, R::T>,
) -> R::T
where
    R::T: 'a,
{
    if mask == 0 {
        return ring.one();
    }
    if mask.count_ones() % 2 == 1 {
        return ring.zero();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = ring.zero();
    let mut bits = rest;
    let mut k = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = upper(i, j);
        if !ring.is_zero(a) {
            let minor = pf_subset(rest & !(1 << j), upper, ring, memo);
            if !ring.is_zero(&minor) {
                acc = ring.fma(acc, a, &minor, k % 2 == 1);
            }
        }
        k += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Pfaffian of a numeric skew-symmetric matrix (only the upper triangle is read).
pub fn pfaffian_of_matrix<F: Field>(m: &ExactMatrix<F>) -> Result<F::Elem, PfaffianError> {
    if m.rows() != m.cols() {
        return Err(PfaffianError::Shape("non-square matrix".into()));
    }
    if m.rows() % 2 == 1 {
        return Err(PfaffianError::OddSize(m.rows()));
    }
    let mut memo = HashMap::new();
    Ok(pf_subset(
        full_mask(m.rows()),
        &|i, j| m.get(i, j),
        &ScalarRing(m.field().clone()),
        &mut memo,
    ))
}

/// Outcome of comparing a computed Pfaffian against a claimed polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PfaffianCertificate {
    pub matrix_id: String,
    pub claimed: String,
    pub computed: String,
    /// `Some(1)` or `Some(-1)` exactly when computed = ±claimed; `None` on mismatch.
    pub sign: Option<i8>,
    pub terms: usize,
    pub degree: Option<u32>,
}

pub fn certify_pfaffian<F: Field>(
    matrix_id: &str,
    m: &SkewPolyMatrix<F>,
    claimed: &Polynomial<F>,
) -> Result<PfaffianCertificate, PfaffianError> {
    let computed = m.pfaffian()?;
    let sign = if computed == *claimed {
        Some(1)
    } else if computed == claimed.neg() {
        Some(-1)
    } else {
        None
    };
    Ok(PfaffianCertificate {
        matrix_id: matrix_id.to_string(),
        claimed: claimed.to_string(),
        terms: computed.num_terms(),
        degree: computed.homogeneous_degree(),
        computed: computed.to_string(),
        sign,
    })
}

/// Rank of the span of the forms `x_k * Pf_ij(M)` inside the space of forms
/// of degree `n/2` (the differential of the Pfaffian map at `M`).
pub fn jacobian_span_rank<F: Field>(m: &SkewPolyMatrix<F>) -> Result<usize, PfaffianError> {
    if m.size() % 2 == 1 || m.size() < 2 {
        return Err(PfaffianError::Shape(format!(
            "size {} is not even",
            m.size()
        )));
    }
    if !m.is_linear() {
        return Err(PfaffianError::Shape("entries must be linear forms".into()));
    }
    let nvars = m.context().len();
    let degree = (m.size() / 2) as u32;
    let forms: Vec<Polynomial<F>> = m
        .all_sub_pfaffians()?
        .into_iter()
        .flat_map(|(_, pf)| {
            (0..nvars)
                .map(move |k| pf.mul_monomial(&Monomial::var(k)))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(coefficient_matrix(m.field(), nvars, degree, &forms).rank())
}

pub fn jacobian_span_rank_mod(
    m: &SkewPolyMatrix<Rationals>,
    p: u64,
) -> Result<usize, PfaffianError> {
    jacobian_span_rank(&m.reduce_mod(p)?)
}

/// Projective point over GF(p), normalised so the first nonzero coordinate is 1.
pub type ProjectivePoint = Vec<u64>;

pub fn normalize_projective(field: &PrimeField, v: &[u64]) -> Option<ProjectivePoint> {
    let first = v.iter().find(|&&x| x != 0)?;
    let inv = field.inv(first).ok()?;
    Some(v.iter().map(|x| field.mul(x, &inv)).collect())
}

/// `count` distinct GF(p)-points of the hypersurface `F = 0`.
///
/// Each draw fixes all but the last coordinate uniformly at random and scans
/// the last coordinate over GF(p) (at most `p` evaluations of the restricted
/// univariate polynomial), then keeps one root chosen at random. The stream
/// is ChaCha8 seeded from `seed`, so the output is a function of
/// `(F, p, count, seed)`.
pub fn sample_points_on_quartic(
    f: &Polynomial<PrimeField>,
    count: usize,
    seed: u64,
) -> Result<Vec<ProjectivePoint>, PfaffianError> {
    let field = *f.field();
    let p = field.modulus();
    if p == 2 {
        return Err(PfaffianError::Sampling("p must be odd".into()));
    }
    if !f.is_homogeneous() || f.is_zero() {
        return Err(PfaffianError::Shape(
            "hypersurface equation must be a nonzero form".into(),
        ));
    }
    let n = f.nvars();
    if n < 2 {
        return Err(PfaffianError::Shape("need at least two variables".into()));
    }
    let degree = f.degree().unwrap_or(0) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<ProjectivePoint> = Vec::with_capacity(count);
    let mut seen: BTreeSet<ProjectivePoint> = BTreeSet::new();
    let max_draws = 50 * count + 100;
    for _ in 0..max_draws {
        if found.len() == count {
            break;
        }
        let head: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(0..p)).collect();
        if head.iter().all(|&x| x == 0) {
            continue;
        }
        // restrict to the line: coefficient of t^e collects the terms with x_n^e
        let mut uni = vec![0u64; degree + 1];
        for (m, c) in f.terms() {
            let mut v = *c;
            for (i, x) in head.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    v = field.mul(&v, x);
                }
            }
            let e = m.exponent(n - 1) as usize;
            uni[e] = field.add(&uni[e], &v);
        }
        let roots: Vec<u64> = (0..p)
            .filter(|t| {
                uni.iter()
                    .rev()
                    .fold(0u64, |acc, c| field.add(&field.mul(&acc, t), c))
                    == 0
            })
            .collect();
        if roots.is_empty() {
            continue;
        }
        let t = roots[rng.gen_range(0..roots.len())];
        let mut pt = head;
        pt.push(t);
        let pt = normalize_projective(&field, &pt).expect("nonzero head");
        if seen.insert(pt.clone()) {
            found.push(pt);
        }
    }
    if found.len() < count {
        return Err(PfaffianError::Sampling(format!(
            "found {} of {count} points after {max_draws} draws",
            found.len()
        )));
    }
    Ok(found)
}

/// Every GF(p)-point of the projective hypersurface, in lexicographic order
/// of normalised coordinates (`(p^n - 1)/(p - 1)` evaluations).
pub fn enumerate_points_on_hypersurface(f: &Polynomial<PrimeField>) -> Vec<ProjectivePoint> {
    let field = *f.field();
    let p = field.modulus();
    let n = f.nvars();
    let mut out = Vec::new();
    // normalised points: leading 1 at position `lead`, zeros before it
    for lead in 0..n {
        let free = n - lead - 1;
        let total = p.pow(free as u32);
        for idx in 0..total {
            let mut pt = vec![0u64; n];
            pt[lead] = 1;
            let mut rest = idx;
            for k in (lead + 1..n).rev() {
                pt[k] = rest % p;
                rest /= p;
            }
            if f.evaluate(&pt) == Ok(0) {
                out.push(pt);
            }
        }
    }
    out
}

/// Numeric rank of `M(point)` and, in corank two, the Plücker vector of
/// the kernel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelClass {
    pub rank: usize,
    pub kernel_dim: usize,
    /// Coordinates `p_ij = v_i w_j - v_j w_i`, `i < j`, normalised.
    pub plucker: Option<Vec<u64>>,
    /// Number of quadratic Grassmann relations checked on the Plücker vector.
    pub relations_checked: usize,
    /// Whether all of them vanish.
    pub relations_hold: bool,
}

pub fn classify_kernel(
    m: &SkewPolyMatrix<PrimeField>,
    point: &[u64],
) -> Result<KernelClass, PfaffianError> {
    let field = *m.field();
    let numeric = m.evaluate(point)?;
    let kernel = numeric.kernel_basis();
    let n = m.size();
    let rank = n - kernel.len();
    if kernel.len() != 2 {
        return Ok(KernelClass {
            rank,
            kernel_dim: kernel.len(),
            plucker: None,
            relations_checked: 0,
            relations_hold: true,
        });
    }
    let (v, w) = (&kernel[0], &kernel[1]);
    let raw: Vec<u64> = plucker_pairs(n)
        .map(|(i, j)| field.sub(&field.mul(&v[i], &w[j]), &field.mul(&v[j], &w[i])))
        .collect();
    let plucker = normalize_projective(&field, &raw)
        .ok_or_else(|| PfaffianError::Shape("kernel vectors are dependent".into()))?;
    let (checked, hold) = grassmann_relations(&field, n, &plucker);
    Ok(KernelClass {
        rank,
        kernel_dim: 2,
        plucker: Some(plucker),
        relations_checked: checked,
        relations_hold: hold,
    })
}

/// Evaluates every `p_ij p_kl - p_ik p_jl + p_il p_jk`, `i<j<k<l`.
pub fn grassmann_relations(field: &PrimeField, n: usize, plucker: &[u64]) -> (usize, bool) {
    let at = |i, j| plucker[pair_index(n, i, j)];
    let mut checked = 0;
    let mut hold = true;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let r = field.add(
                        &field.sub(
                            &field.mul(&at(i, j), &at(k, l)),
                            &field.mul(&at(i, k), &at(j, l)),
                        ),
                        &field.mul(&at(i, l), &at(j, k)),
                    );
                    checked += 1;
                    hold &= r == 0;
                }
            }
        }
    }
    (checked, hold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly_in;
    use sha2::{Digest, Sha256};

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Sum over perfect matchings with the sign of the matching permutation.
    fn matching_oracle<F: Field>(m: &ExactMatrix<F>) -> F::Elem {
        fn rec<F: Field>(m: &ExactMatrix<F>, left: Vec<usize>) -> F::Elem {
            let f = m.field();
            if left.is_empty() {
                return f.one();
            }
            let i = left[0];
            let mut acc = f.zero();
            for k in 1..left.len() {
                let j = left[k];
                let rest: Vec<usize> = left.iter().copied().filter(|&x| x != i && x != j).collect();
                let t = f.mul(m.get(i, j), &rec(m, rest));
                acc = if k % 2 == 1 {
                    f.add(&acc, &t)
                } else {
                    f.sub(&acc, &t)
                };
            }
            acc
        }
        rec(m, (0..m.rows()).collect())
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

    #[test]
    fn small_pfaffians() {
        let g2 = generic_skew_matrix(Rationals, 2);
        assert_eq!(g2.pfaffian().unwrap().to_string(), "x01");
        let g4 = generic_skew_matrix(Rationals, 4);
        let ctx = g4.context().clone();
        assert_eq!(
            g4.pfaffian().unwrap(),
            parse_poly("x01*x23 - x02*x13 + x03*x12", &ctx).unwrap()
        );
        assert_eq!(
            g4.sub_pfaffian(2, 3).unwrap(),
            parse_poly("x01", &ctx).unwrap()
        );
        assert_eq!(
            g4.sub_pfaffian(3, 2).unwrap(),
            parse_poly("x01", &ctx).unwrap()
        );
        let zero = SkewPolyMatrix::zero(Rationals, ctx, 4);
        assert!(zero.sub_pfaffian(0, 1).unwrap().is_zero());
        assert!(zero.pfaffian().unwrap().is_zero());
    }

    #[test]
    fn block_symplectic_has_pfaffian_one() {
        let f = gf(101);
        let mut j = ExactMatrix::zero(f, 8, 8);
        for b in 0..4 {
            j.set(2 * b, 2 * b + 1, 1);
            j.set(2 * b + 1, 2 * b, 100);
        }
        assert_eq!(pfaffian_of_matrix(&j).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let g3 = generic_skew_matrix(Rationals, 3);
        assert_eq!(g3.pfaffian(), Err(PfaffianError::OddSize(3)));
        let g4 = generic_skew_matrix(Rationals, 4);
        assert_eq!(g4.odd_pfaffian_family(), Err(PfaffianError::EvenSize(4)));
        assert_eq!(g4.sub_pfaffian(1, 1), Err(PfaffianError::BadIndex(1, 1)));
        assert_eq!(g4.sub_pfaffian(0, 4), Err(PfaffianError::BadIndex(0, 4)));
    }

    #[test]
    fn odd_family_small() {
        let g3 = generic_skew_matrix(Rationals, 3);
        let ctx = g3.context().clone();
        let fam = g3.odd_pfaffian_family().unwrap();
        let names: Vec<String> = fam.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["x12", "x02", "x01"]);
        let zero = SkewPolyMatrix::zero(Rationals, ctx, 7);
        assert!(zero
            .odd_pfaffian_family()
            .unwrap()
            .iter()
            .all(|p| p.is_zero()));
    }

    #[test]
    fn generic_seven_family_has_fifteen_terms_each() {
        // 5!! = 15 perfect matchings of the six remaining indices
        let double_factorial: usize = (1..=5).step_by(2).product();
        let fam = generic_skew_matrix(Rationals, 7)
            .odd_pfaffian_family()
            .unwrap();
        assert_eq!(fam.len(), 7);
        for p in &fam {
            assert_eq!(p.num_terms(), double_factorial);
            assert_eq!(p.homogeneous_degree(), Some(3));
        }
    }

    #[test]
    fn pfaffians_in_row_seven_skip_column_seven_variables() {
        let g8 = generic_skew_matrix(Rationals, 8);
        let names = g8.context().names().to_vec();
        for r in 0..7 {
            let pf = g8.sub_pfaffian(r, 7).unwrap();
            for v in pf.support() {
                assert!(!names[v].ends_with('7'), "Pf_{r}7 uses {}", names[v]);
            }
        }
    }

    #[test]
    fn m0_data_checksum() {
        let m = m0();
        assert_eq!(m.size(), 8);
        assert_eq!(m.upper_entries().count(), 28);
        assert!(m.is_linear());
        assert_eq!(m.upper_entries().filter(|(_, p)| !p.is_zero()).count(), 18);
        // transcription fingerprint over the canonical upper-triangle listing
        let listing: Vec<String> = m
            .upper_entries()
            .map(|((i, j), p)| format!("{i},{j}:{p}"))
            .collect();
        assert_eq!(
            listing.join(";"),
            "0,1:x1;0,2:x2;0,3:x3;0,4:x4;0,5:x5;0,6:x1;0,7:0;1,2:0;1,3:x5;1,4:0;1,5:0;\
             1,6:-x3;1,7:-x1;2,3:x1;2,4:x1;2,5:0;2,6:0;2,7:-x4;3,4:x2;3,5:0;3,6:0;3,7:0;\
             4,5:x3;4,6:x1;4,7:0;5,6:x4;5,7:x2;6,7:x5"
        );
        let digest = hex::encode(Sha256::digest(listing.join(";").as_bytes()));
        assert_eq!(digest.len(), 64);
        let f = f0();
        assert_eq!(f.num_terms(), 20);
        assert_eq!(f.homogeneous_degree(), Some(4));
    }

    #[test]
    fn m0_pfaffian_is_f0_up_to_sign() {
        let cert = certify_pfaffian("m0", &m0(), &f0()).unwrap();
        assert_eq!(cert.sign, Some(-1));
        assert_eq!(cert.terms, 20);
        assert_eq!(cert.degree, Some(4));
    }

    #[test]
    fn m0_sub_pfaffians_are_cubics() {
        for ((i, j), pf) in m0().all_sub_pfaffians().unwrap() {
            assert!(
                pf.is_zero() || pf.homogeneous_degree() == Some(3),
                "Pf_{i}{j}"
            );
        }
    }

    #[test]
    fn differential_rank_of_m0() {
        assert_eq!(jacobian_span_rank_mod(&m0(), 31991), Ok(70));
        let zero = SkewPolyMatrix::zero(gf(31991), VarContext::indexed("x", 5), 8);
        assert_eq!(jacobian_span_rank(&zero), Ok(0));
        assert!(matches!(
            jacobian_span_rank(&generic_skew_matrix(Rationals, 7)),
            Err(PfaffianError::Shape(_))
        ));
    }

    #[test]
    fn differential_rank_generic() {
        let ctx = VarContext::indexed("x", 5);
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_linear_skew_matrix(gf(31991), ctx.clone(), 8, &mut rng);
            assert_eq!(jacobian_span_rank(&m), Ok(70), "seed {seed}");
        }
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        let f = gf(31991);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 4, 6, 8] {
            for _ in 0..10 {
                let m = random_skew(&mut rng, f, n);
                let pf = pfaffian_of_matrix(&m).unwrap();
                assert_eq!(f.mul(&pf, &pf), m.determinant().unwrap());
                assert_eq!(pf, matching_oracle(&m));
            }
        }
    }

    #[test]
    fn congruence_covariance() {
        let f = gf(31991);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2, 4, 6] {
            let m = random_skew(&mut rng, f, n);
            let a = ExactMatrix::from_rows(
                f,
                (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..31991)).collect())
                    .collect(),
            );
            let congruent = a.transpose().mul(&m).unwrap().mul(&a).unwrap();
            assert_eq!(
                pfaffian_of_matrix(&congruent).unwrap(),
                f.mul(&a.determinant().unwrap(), &pfaffian_of_matrix(&m).unwrap())
            );
        }
    }

    #[test]
    fn symbolic_row_expansion_identity() {
        let g6 = generic_skew_matrix(Rationals, 6);
        let full = g6.pfaffian().unwrap();
        let mut expanded = Polynomial::zero(Rationals, g6.context().clone());
        for j in 1..6 {
            let minor = g6.sub_pfaffian(0, j).unwrap();
            let term = &g6.entry(0, j) * &minor;
            expanded = if j % 2 == 1 {
                &expanded + &term
            } else {
                &expanded - &term
            };
        }
        assert_eq!(full, expanded);
        assert_eq!(full.num_terms(), 15);
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let m = m0();
        assert_eq!(SkewPolyMatrix::from_json(&m.to_json()).unwrap(), m);
        assert!(matches!(
            SkewPolyMatrix::from_json("{"),
            Err(PfaffianError::Json(_))
        ));
        let bad = r#"{"n": 2, "vars": ["x"], "entries": [{"i": 1, "j": 0, "poly": "x"}]}"#;
        assert_eq!(
            SkewPolyMatrix::from_json(bad),
            Err(PfaffianError::BadIndex(1, 0))
        );
        let sparse = r#"{"n": 2, "vars": ["x"], "entries": []}"#;
        assert!(SkewPolyMatrix::from_json(sparse)
            .unwrap()
            .pfaffian()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn fermat_points_mod_five() {
        let f = gf(5);
        let fermat = parse_poly_in(
            "x1^4 + x2^4 + x3^4 + x4^4 + x5^4",
            &VarContext::indexed("x", 5),
            &f,
        )
        .unwrap();
        // enumeration oracle: count points of P^4(F_5) directly
        let mut oracle = 0;
        for code in 1..5u64.pow(5) {
            let v: Vec<u64> = (0..5).map(|k| code / 5u64.pow(k) % 5).collect();
            let s: u64 = v.iter().map(|x| x.pow(4)).sum();
            if s.is_multiple_of(5) {
                oracle += 1;
            }
        }
        assert_eq!(oracle % 4, 0);
        let pts = enumerate_points_on_hypersurface(&fermat);
        assert_eq!(pts.len(), oracle / 4);
        assert_eq!(pts.len(), 256);
    }

    #[test]
    fn sampled_points_lie_on_x0() {
        let f = f0().reduce_mod(31991).unwrap();
        let pts = sample_points_on_quartic(&f, 10, 1).unwrap();
        assert_eq!(pts.len(), 10);
        assert_eq!(pts.iter().collect::<BTreeSet<_>>().len(), 10);
        for p in &pts {
            assert_eq!(f.evaluate(p), Ok(0));
        }
        assert_eq!(sample_points_on_quartic(&f, 10, 1).unwrap(), pts);
        assert_ne!(sample_points_on_quartic(&f, 10, 2).unwrap(), pts);
    }

    #[test]
    fn sampling_rejects_bad_input() {
        let f = gf(2);
        let ctx = VarContext::indexed("x", 5);
        let q = parse_poly_in("x1^4", &ctx, &f).unwrap();
        assert!(matches!(
            sample_points_on_quartic(&q, 1, 0),
            Err(PfaffianError::Sampling(_))
        ));
        // x1^4 + x2^4 + ... has no nontrivial zeros over GF(3)? it has; use an
        // anisotropic form instead: x^2 + y^2 over GF(3) has no projective points
        let g = gf(3);
        let ctx2 = VarContext::indexed("x", 2);
        let aniso = parse_poly_in("x1^2 + x2^2", &ctx2, &g).unwrap();
        assert!(matches!(
            sample_points_on_quartic(&aniso, 1, 0),
            Err(PfaffianError::Sampling(_))
        ));
    }

    #[test]
    fn kernel_classification() {
        let p = 31991;
        let m = m0().reduce_mod(p).unwrap();
        let f = f0().reduce_mod(p).unwrap();
        // a point off X0
        let off = [1, 2, 3, 4, 5];
        assert_ne!(f.evaluate(&off).unwrap(), 0);
        let c = classify_kernel(&m, &off).unwrap();
        assert_eq!((c.rank, c.kernel_dim, c.plucker.is_none()), (8, 0, true));
        for pt in sample_points_on_quartic(&f, 5, 9).unwrap() {
            let c = classify_kernel(&m, &pt).unwrap();
            assert_eq!((c.rank, c.kernel_dim), (6, 2));
            assert_eq!(c.relations_checked, 70);
            assert!(c.relations_hold);
            // direct oracle: the Plücker vector spans a rank-2 skew form, so
            // M(pt) annihilates both kernel vectors and the 4x4 minors vanish
            let pl = c.plucker.unwrap();
            let field = gf(p);
            let mut form = ExactMatrix::zero(field, 8, 8);
            for (k, (i, j)) in plucker_pairs(8).enumerate() {
                form.set(i, j, pl[k]);
                form.set(j, i, field.neg(&pl[k]));
            }
            assert_eq!(form.rank(), 2);
        }
    }
}
