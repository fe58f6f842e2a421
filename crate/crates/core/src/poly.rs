//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`Polynomial`] lives in a [`VarContext`] (an ordered list of variable
//! names) and stores its terms in a map keyed by [`Monomial`], whose `Ord`
//! is degree-reverse-lexicographic. Iteration in reverse therefore yields
//! terms in the canonical print order and the leading term is the last key.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{ArithError, Field, PrimeField, Rational, Rationals};

/// Upper bound on the number of variables of a context.
pub const MAX_VARS: usize = 32;
/// Upper bound on a single exponent.
pub const MAX_EXPONENT: u32 = u8::MAX as u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable contexts differ")]
    ContextMismatch,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("point has {got} coordinates, context has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn parse_err(pos: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Dense exponent vector packed into a fixed array, with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub const fn one() -> Self {
        Self {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, PolyError> {
        if exps.len() > MAX_VARS {
            return Err(PolyError::InvalidContext(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                exps.len()
            )));
        }
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(PolyError::ExponentOverflow);
            }
            m.exps[i] = e as u8;
            m.deg += e as u16;
        }
        Ok(m)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> &[u8] {
        &self.exps[..nvars]
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Panics on exponent overflow (more than 255 in a single variable).
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        m.deg -= other.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// `Some(i)` if the monomial is `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u16 + e as u16;
        m.exps[i] = e as u8;
        m
    }

    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    pub fn cmp_degrevlex(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.exps[i] != other.exps[i] {
                    return other.exps[i].cmp(&self.exps[i]);
                }
            }
            Ordering::Equal
        })
    }

    fn write(&self, ctx: &VarContext, out: &mut String) {
        let mut first = true;
        for (i, name) in ctx.names.iter().enumerate() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(name);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if first {
            out.push('1');
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_degrevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "M{:?}", &self.exps[..last])
    }
}

/// All monomials of total degree `d` in `n` variables, in descending
/// degrevlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            out.push(cur.with_exponent(i, left));
            return;
        }
        for e in (0..=left).rev() {
            let saved = *cur;
            *cur = cur.with_exponent(i, e);
            rec(i + 1, n, left - e, cur, out);
            *cur = saved;
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, n, d, &mut Monomial::one(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Ordered, duplicate-free list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::InvalidContext(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(PolyError::InvalidContext(format!(
                    "bad variable name {n:?}"
                )));
            }
            if names[..i].contains(n) {
                return Err(PolyError::InvalidContext(format!("duplicate variable {n}")));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// `prefix1, ..., prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("valid indexed context")
    }

    /// Plücker coordinates `x{i}{j}`, `0 <= i < j < n`, for `n <= 10`.
    pub fn plucker(n: usize) -> Arc<Self> {
        assert!(n <= 10, "plucker context supports n <= 10");
        let names = plucker_pairs(n).map(|(i, j)| format!("x{i}{j}"));
        Self::new(names).expect("valid plucker context")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Pairs `(i, j)` with `0 <= i < j < n` in lexicographic order.
pub fn plucker_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Sparse polynomial over the field `F`.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    field: F,
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && *self.ctx == *other.ctx && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, ctx: Arc<VarContext>) -> Self {
        Self {
            field,
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, ctx: Arc<VarContext>, c: F::Elem) -> Self {
        Self::from_terms(field, ctx, [(Monomial::one(), c)])
    }

    pub fn one(field: F, ctx: Arc<VarContext>) -> Self {
        let one = field.one();
        Self::constant(field, ctx, one)
    }

    pub fn var(field: F, ctx: Arc<VarContext>, i: usize) -> Self {
        assert!(i < ctx.len(), "variable index out of range");
        let one = field.one();
        Self::from_terms(field, ctx, [(Monomial::var(i), one)])
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(field: F, ctx: Arc<VarContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = Self::zero(field, ctx);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        debug_assert!(
            m.exps[self.ctx.len()..].iter().all(|&e| e == 0),
            "monomial uses variables outside the context"
        );
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// `Some(d)` when every term has degree `d`. The zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mask = self
            .terms
            .keys()
            .fold(0u32, |acc, m| acc | m.support_mask());
        (0..self.nvars()).filter(|i| mask & (1 << i) != 0).collect()
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if *self.ctx == *other.ctx && self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = self.field.mul(ca, cb);
                acc.entry(m)
                    .and_modify(|v| *v = self.field.add(v, &c))
                    .or_insert(c);
            }
        }
        let field = &self.field;
        Ok(Self {
            field: self.field.clone(),
            ctx: self.ctx.clone(),
            terms: acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| self.field.neg(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.ctx.clone());
        }
        self.map_coeffs(|a| self.field.mul(a, c))
    }

    /// `self * m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            field: self.field.clone(),
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone(), self.ctx.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn map_coeffs(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Self {
            field: self.field.clone(),
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !self.field.is_zero(c))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn differentiate(&self, i: usize) -> Self {
        assert!(i < self.nvars(), "variable index out of range");
        let mut out = Self::zero(self.field.clone(), self.ctx.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let coeff = self.field.mul(c, &self.field.from_i64(e as i64));
            out.add_term(m.with_exponent(i, e - 1), &coeff);
        }
        out
    }

    pub fn differentiate_by_name(&self, name: &str) -> Result<Self, PolyError> {
        let i = self
            .ctx
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.differentiate(i))
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.differentiate(i)).collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `images[i]`; the images share a (possibly
    /// different) context.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars(),
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.ctx.clone();
        for im in images {
            if *im.ctx != *target || im.field != self.field {
                return Err(PolyError::ContextMismatch);
            }
        }
        let mut powers: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
        let mut out = Polynomial::zero(self.field.clone(), target.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.field.clone(), target.clone(), c.clone());
            for (i, image) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                let pw = powers.entry((i, e)).or_insert_with(|| image.pow(e));
                t = &t * &*pw;
            }
            for (tm, tc) in &t.terms {
                out.add_term(*tm, tc);
            }
        }
        Ok(out)
    }

    /// Moves the polynomial into a context with the same variable list
    /// (used after deserialising into a freshly built context).
    pub fn with_context(&self, ctx: Arc<VarContext>) -> Result<Self, PolyError> {
        if *ctx != *self.ctx {
            return Err(PolyError::ContextMismatch);
        }
        let mut p = self.clone();
        p.ctx = ctx;
        Ok(p)
    }

    /// Embeds into a larger context, sending variable `i` to `map[i]`.
    pub fn rename_into(&self, ctx: Arc<VarContext>, map: &[usize]) -> Self {
        let mut out = Self::zero(self.field.clone(), ctx);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one();
            for (i, &j) in map.iter().enumerate() {
                nm = nm.with_exponent(j, nm.exponent(j) + m.exponent(i));
            }
            out.add_term(nm, c);
        }
        out
    }

    /// Coefficient vector against the given monomial basis; `None` if some
    /// term lies outside it.
    pub fn coefficient_vector(
        &self,
        basis_index: &HashMap<Monomial, usize>,
    ) -> Option<Vec<F::Elem>> {
        let mut v = vec![self.field.zero(); basis_index.len()];
        for (m, c) in &self.terms {
            v[*basis_index.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Image under a ring map of coefficient fields.
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Result<G::Elem, ArithError>,
    ) -> Result<Polynomial<G>, ArithError> {
        let mut out = Polynomial::zero(target.clone(), self.ctx.clone());
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }
}

impl Polynomial<Rationals> {
    /// Image in another field (reduction modulo `p` for GF(p)).
    pub fn reduce<G: Field>(&self, target: &G) -> Result<Polynomial<G>, ArithError> {
        self.map_field(target, |c| target.from_rational(c))
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Polynomial<PrimeField>, ArithError> {
        self.reduce(&PrimeField::new(p)?)
    }

    /// Evaluation at a GF(p) point after reducing coefficients.
    pub fn evaluate_mod(&self, point: &[u64], p: u64) -> Result<u64, PolyError> {
        self.reduce_mod(p)?.evaluate(point)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Polynomial<PrimeField> {
    /// Symmetric lift of every coefficient to an integer.
    pub fn lift(&self) -> Polynomial<Rationals> {
        let mut out = Polynomial::zero(Rationals, self.ctx.clone());
        for (m, c) in &self.terms {
            out.add_term(
                *m,
                &Rational::from_integer(BigInt::from(self.field.lift(*c))),
            );
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Field> std::ops::$tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> std::ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Canonical form: descending degrevlex, signs folded into the joins.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = &self.field;
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if *m == Monomial::one() {
                out.push_str(&field.format(&abs));
            } else {
                if !field.is_one(&abs) {
                    out.push_str(&field.format(&abs));
                    out.push('*');
                }
                m.write(&self.ctx, &mut out);
            }
        }
        f.write_str(&out)
    }
}

/// Parses `text` into a polynomial with rational coefficients.
///
/// Grammar (whitespace between tokens is ignored):
/// `expr := ['+'|'-'] term (('+'|'-') term)*`,
/// `term := coeff | [coeff '*'] factor ('*' factor)*`,
/// `factor := var ['^' uint]`, `coeff := int ['/' uint]`.
pub fn parse_poly(text: &str, ctx: &Arc<VarContext>) -> Result<Polynomial<Rationals>, PolyError> {
    Parser::new(text, ctx).parse()
}

/// Parses and maps into `field`.
pub fn parse_poly_in<F: Field>(
    text: &str,
    ctx: &Arc<VarContext>,
    field: &F,
) -> Result<Polynomial<F>, PolyError> {
    Ok(parse_poly(text, ctx)?.reduce(field)?)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    ctx: &'a Arc<VarContext>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ctx: &'a Arc<VarContext>) -> Self {
        Self {
            chars: text.char_indices().collect(),
            pos: 0,
            len: text.len(),
            ctx,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn parse(mut self) -> Result<Polynomial<Rationals>, PolyError> {
        if self.peek().is_none() {
            return Err(parse_err(0, "empty input"));
        }
        let mut poly = Polynomial::zero(Rationals, self.ctx.clone());
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (m, mut c) = self.term()?;
            if sign < 0 {
                c = -c;
            }
            poly.add_term(m, &c);
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(other) => {
                    return Err(parse_err(
                        self.offset(),
                        format!("expected '+' or '-', found {other:?}"),
                    ))
                }
            }
            self.pos += 1;
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let mut coeff = Rational::from_integer(1.into());
        let mut mono = Monomial::one();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.coeff()?;
                if self.peek() != Some('*') {
                    return Ok((mono, coeff));
                }
                self.pos += 1;
            }
            Some(_) => {}
            None => return Err(parse_err(self.offset(), "expected a term")),
        }
        loop {
            let (i, e) = self.factor()?;
            let ne = mono.exponent(i) + e;
            if ne > MAX_EXPONENT {
                return Err(parse_err(self.offset(), "exponent too large"));
            }
            mono = mono.with_exponent(i, ne);
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.offset();
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some((start, s))
    }

    fn coeff(&mut self) -> Result<Rational, PolyError> {
        let (_, num) = self.digits().expect("caller checked a digit");
        let num: BigInt = num.parse().expect("digits parse");
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.offset();
            let (_, den) = self
                .digits()
                .ok_or_else(|| parse_err(at, "expected denominator"))?;
            let den: BigInt = den.parse().expect("digits parse");
            if den.is_zero() {
                return Err(parse_err(at, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn factor(&mut self) -> Result<(usize, u32), PolyError> {
        self.skip_ws();
        let start = self.offset();
        let mut name = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            let ok = if name.is_empty() {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            };
            if !ok {
                break;
            }
            name.push(c);
            self.pos += 1;
        }
        if name.is_empty() {
            return Err(parse_err(start, "expected a variable"));
        }
        let i = self
            .ctx
            .index_of(&name)
            .ok_or_else(|| parse_err(start, format!("unknown variable {name}")))?;
        if self.peek() != Some('^') {
            return Ok((i, 1));
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.offset()
        };
        let (_, e) = self
            .digits()
            .ok_or_else(|| parse_err(at, "malformed exponent"))?;
        let e: u32 = e
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| parse_err(at, "malformed exponent"))?;
        Ok((i, e))
    }
}
