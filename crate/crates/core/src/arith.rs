//! Exact scalar arithmetic: prime fields, rationals and the polynomial
//! extension of the binomial coefficient.
//!
//! Every coefficient domain used by the polynomial and matrix code implements
//! [`Field`]. Elements are plain values (`u64` residues, `BigRational`) and the
//! domain object carries whatever context the arithmetic needs (the modulus).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// First default working prime.
pub const DEFAULT_PRIME: u64 = 31991;
/// Second default working prime, used for two-prime confirmation.
pub const SECOND_PRIME: u64 = 104729;
/// The pair of primes certificates run against by default.
pub const DEFAULT_PRIMES: [u64; 2] = [DEFAULT_PRIME, SECOND_PRIME];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus {0}: not a prime")]
    InvalidModulus(u64),
    #[error("denominator {den} is not invertible modulo {p}")]
    NotInvertible { den: String, p: u64 },
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        (a * b) % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p` by the extended Euclidean algorithm.
pub fn field_inv(a: u64, p: u64) -> Result<u64, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::InvalidModulus(p));
    }
    inv_unchecked(a % p, p)
}

fn inv_unchecked(a: u64, p: u64) -> Result<u64, ArithError> {
    if a == 0 {
        return Err(ArithError::DivisionByZero);
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(t0.rem_euclid(p as i128) as u64)
}

/// `n (n-1) ... (n-k+1) / k!` for any integer `n`.
///
/// Agrees with the classical binomial coefficient for `n >= k >= 0`, vanishes
/// for `0 <= n < k` and satisfies `C(-n, k) = (-1)^k C(n+k-1, k)`.
///
/// Panics if the result does not fit in an `i128`; no workload here comes
/// anywhere close.
pub fn binomial_ext(n: i64, k: u32) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        // C(n, i+1) = C(n, i) * (n - i) / (i + 1), exact at every step
        acc = acc
            .checked_mul(n as i128 - i)
            .expect("binomial_ext overflow")
            / (i + 1);
    }
    acc
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial_ext((d + n - 1) as i64, (n - 1) as u32) as usize
}

/// A coefficient field. Implemented by [`Rationals`] and [`PrimeField`].
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes.
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem, ArithError>;
    /// Zero for the rationals, `p` for GF(p).
    fn characteristic(&self) -> u64;
    fn format(&self, a: &Self::Elem) -> String;
    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Rank of a dense row-major matrix. Overridden where a better
    /// elimination strategy exists for the domain.
    fn matrix_rank(&self, rows: usize, cols: usize, data: Vec<Self::Elem>) -> usize {
        gaussian_rank(self, rows, cols, data)
    }
}

/// Plain Gaussian elimination rank.
pub(crate) fn gaussian_rank<F: Field>(
    f: &F,
    rows: usize,
    cols: usize,
    mut data: Vec<F::Elem>,
) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !f.is_zero(&data[r * cols + col])) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                data.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = f.inv(&data[rank * cols + col]).expect("nonzero pivot");
        for r in rank + 1..rows {
            let lead = &data[r * cols + col];
            if f.is_zero(lead) {
                continue;
            }
            let factor = f.mul(lead, &inv);
            for c in col..cols {
                let v = f.sub(&data[r * cols + c], &f.mul(&factor, &data[rank * cols + c]));
                data[r * cols + c] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// The field of rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational, ArithError> {
        if a.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational, ArithError> {
        Ok(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &Rational) -> bool {
        a.is_negative()
    }

    fn matrix_rank(&self, rows: usize, cols: usize, data: Vec<Rational>) -> usize {
        // clear denominators row by row, then eliminate fraction-free
        let mut ints: Vec<BigInt> = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let row = &data[r * cols..(r + 1) * cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            ints.extend(row.iter().map(|q| q.numer() * (&lcm / q.denom())));
        }
        bareiss_rank(rows, cols, ints)
    }
}

/// Fraction-free (Bareiss) elimination rank of an integer matrix.
pub fn bareiss_rank(rows: usize, cols: usize, mut a: Vec<BigInt>) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                a.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let p = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + col].clone();
            for c in 0..cols {
                let v = (&p * &a[r * cols + c] - &lead * &a[rank * cols + c]) / &prev;
                a[r * cols + c] = v;
            }
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// GF(p) for a prime `p < 2^64`. Elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(ArithError::InvalidModulus(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i128 as i64) as u64
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("residue fits")
    }

    /// Symmetric lift of a residue to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        if s >= self.p as u128 {
            (s - self.p as u128) as u64
        } else {
            s as u64
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64, ArithError> {
        inv_unchecked(*a, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_rational(&self, q: &Rational) -> Result<u64, ArithError> {
        let den = self.reduce_bigint(q.denom());
        let inv = inv_unchecked(den, self.p).map_err(|_| ArithError::NotInvertible {
            den: q.denom().to_string(),
            p: self.p,
        })?;
        Ok(mul_mod(self.reduce_bigint(q.numer()), inv, self.p))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format(&self, a: &u64) -> String {
        self.lift(*a).to_string()
    }
    fn is_negative(&self, a: &u64) -> bool {
        self.lift(*a) < 0
    }
}
