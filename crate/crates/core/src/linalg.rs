//! Exact dense linear algebra over a [`Field`].

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::Field;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("input polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("expected a form of degree {expected}, got degree {got:?}")]
    WrongDegree { expected: u32, got: Option<u32> },
    #[error("generator degree {gen} exceeds target degree {target}")]
    DegreeTooLow { gen: u32, target: u32 },
    #[error("characteristic 2 is not supported for quadratic forms")]
    CharacteristicTwo,
    #[error("polynomials live in different rings")]
    ContextMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense row-major matrix with exact entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Self {
            field,
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Panics when the rows are ragged.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        Self {
            field,
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), &f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.field
            .matrix_rank(self.rows, self.cols, self.data.clone())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if p != rank {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, rank * m.cols + c);
                }
            }
            let inv = f.inv(m.get(rank, col)).expect("nonzero pivot");
            for c in col..m.cols {
                let v = f.mul(m.get(rank, c), &inv);
                m.set(rank, c, v);
            }
            for r in 0..m.rows {
                if r == rank || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(rank, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug = Self::zero(f.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<F::Elem, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !f.is_zero(&m[r * n + col])) else {
                return Ok(f.zero());
            };
            if p != col {
                for c in 0..n {
                    m.swap(p * n + c, col * n + c);
                }
                det = f.neg(&det);
            }
            let pivot = m[col * n + col].clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for r in col + 1..n {
                if f.is_zero(&m[r * n + col]) {
                    continue;
                }
                let factor = f.mul(&m[r * n + col], &inv);
                for c in col..n {
                    let v = f.sub(&m[r * n + c], &f.mul(&factor, &m[col * n + c]));
                    m[r * n + c] = v;
                }
            }
        }
        Ok(det)
    }

    /// Entries as printed strings, for report evidence.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| self.field.format(e)).collect())
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }
}

/// Coefficient matrix of forms of degree `d`: one row per form, one column
/// per degree-`d` monomial (descending degrevlex).
pub fn coefficient_matrix<F: Field>(
    field: &F,
    nvars: usize,
    d: u32,
    forms: &[Polynomial<F>],
) -> ExactMatrix<F> {
    let basis = monomials_of_degree(nvars, d);
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let rows = forms
        .iter()
        .map(|p| {
            p.coefficient_vector(&index)
                .expect("form of the expected degree")
        })
        .collect::<Vec<_>>();
    if rows.is_empty() {
        return ExactMatrix::zero(field.clone(), 0, basis.len());
    }
    ExactMatrix::from_rows(field.clone(), rows)
}

/// Writes `target = sum gens[i] * h[i]` with homogeneous cofactors `h[i]`
/// of degree `deg target - deg gens[i]`, or returns `None` when `target`
/// is not in the ideal's graded piece. The identity is re-checked by
/// polynomial arithmetic before returning.
pub fn decompose_in_ideal<F: Field>(
    target: &Polynomial<F>,
    gens: &[Polynomial<F>],
) -> Result<Option<Vec<Polynomial<F>>>, LinalgError> {
    let field = target.field().clone();
    let ctx = target.context().clone();
    let n = target.nvars();
    if gens
        .iter()
        .any(|g| g.context() != &ctx || g.field() != &field)
    {
        return Err(LinalgError::ContextMismatch);
    }
    if !target.is_homogeneous() || gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(LinalgError::Inhomogeneous);
    }
    if target.is_zero() {
        return Ok(Some(
            gens.iter()
                .map(|_| Polynomial::zero(field.clone(), ctx.clone()))
                .collect(),
        ));
    }
    let d = target.homogeneous_degree().expect("nonzero homogeneous");
    // unknowns: coefficients of each cofactor in its monomial basis
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let Some(dg) = g.homogeneous_degree() else {
            continue; // zero generator contributes nothing
        };
        if dg > d {
            return Err(LinalgError::DegreeTooLow { gen: dg, target: d });
        }
        for m in monomials_of_degree(n, d - dg) {
            columns.push((i, m));
        }
    }
    let row_basis = monomials_of_degree(n, d);
    let row_index: HashMap<Monomial, usize> =
        row_basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut a = ExactMatrix::zero(field.clone(), row_basis.len(), columns.len());
    for (col, (gi, m)) in columns.iter().enumerate() {
        for (gm, c) in gens[*gi].terms() {
            a.set(row_index[&gm.mul(m)], col, c.clone());
        }
    }
    let b = target
        .coefficient_vector(&row_index)
        .expect("target has degree d");
    let Some(x) = a.solve(&b)? else {
        return Ok(None);
    };
    let mut cofactors: Vec<Polynomial<F>> = gens
        .iter()
        .map(|_| Polynomial::zero(field.clone(), ctx.clone()))
        .collect();
    for ((gi, m), c) in columns.iter().zip(&x) {
        cofactors[*gi].add_term(*m, c);
    }
    let recombined = gens.iter().zip(&cofactors).fold(
        Polynomial::zero(field.clone(), ctx.clone()),
        |acc, (g, h)| &acc + &(g * h),
    );
    assert_eq!(
        &recombined, target,
        "linear solve produced a non-identity; elimination bug"
    );
    Ok(Some(cofactors))
}

/// Symmetric Gram matrix of a quadratic form: `G[i][i]` is the coefficient
/// of `x_i^2`, `G[i][j]` half the coefficient of `x_i x_j`.
pub fn gram_matrix<F: Field>(q: &Polynomial<F>) -> Result<ExactMatrix<F>, LinalgError> {
    let field = q.field().clone();
    if field.characteristic() == 2 {
        return Err(LinalgError::CharacteristicTwo);
    }
    if !q.is_zero() && q.homogeneous_degree() != Some(2) {
        return Err(LinalgError::WrongDegree {
            expected: 2,
            got: q.degree(),
        });
    }
    let n = q.nvars();
    let half = field.inv(&field.from_i64(2)).expect("char != 2");
    let mut g = ExactMatrix::zero(field.clone(), n, n);
    for (m, c) in q.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| m.exponent(i) > 0).collect();
        match vars.as_slice() {
            [i] => g.set(*i, *i, c.clone()),
            [i, j] => {
                let h = field.mul(c, &half);
                g.set(*i, *j, h.clone());
                g.set(*j, *i, h);
            }
            _ => unreachable!("degree-2 monomial"),
        }
    }
    Ok(g)
}

pub fn quadratic_form_rank<F: Field>(q: &Polynomial<F>) -> Result<usize, LinalgError> {
    Ok(gram_matrix(q)?.rank())
}
