//! Exact linear algebra over Q(q).
//!
//! Rank, right kernel, and linear solves for dense matrices of rational
//! functions.  Elimination is fraction-free (Bareiss) over the polynomial
//! ring: each row is first cleared of denominators and stripped of rational
//! content, then the two-term minor recurrence keeps every intermediate
//! entry a polynomial; conversion back to `RatFunc` happens only in the
//! back-substitution pass.  This avoids the gcd churn of naive fraction
//! arithmetic on every update.
//!
//! `rank_probabilistic` is an advisory fast path (evaluate q at rational
//! points, eliminate over Q); nothing downstream trusts it for acceptance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, RatFunc, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

struct Echelon {
    mat: Vec<Vec<UniPoly>>,
    /// (row, col) per pivot; pivot k sits in row k.
    pivots: Vec<(usize, usize)>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFunc>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dim(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dim("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        ExactMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    pub fn scale(&self, c: &RatFunc) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() * c.clone())
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = RatFunc::zero();
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc = acc + e.clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Fraction-free forward elimination with column pivoting.
    fn echelon(&self) -> Echelon {
        let mut m: Vec<Vec<UniPoly>> = (0..self.rows)
            .map(|i| {
                let mut l = UniPoly::one();
                for j in 0..self.cols {
                    l = poly_lcm(&l, self.get(i, j).den());
                }
                let row: Vec<UniPoly> = (0..self.cols)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.num() * &l.exact_div(e.den())
                    })
                    .collect();
                strip_row_content(row)
            })
            .collect();

        let mut pivots = Vec::new();
        let mut prev = UniPoly::one();
        let mut pr = 0usize;
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(p) = (pr..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(pr, p);
            for i in pr + 1..self.rows {
                if m[i][col].is_zero() && m[i][col + 1..].iter().all(|e| e.is_zero()) {
                    continue;
                }
                for j in col + 1..self.cols {
                    let t = &(&m[pr][col] * &m[i][j]) - &(&m[i][col] * &m[pr][j]);
                    m[i][j] = t.exact_div(&prev);
                }
                m[i][col] = UniPoly::zero();
            }
            prev = m[pr][col].clone();
            pivots.push((pr, col));
            pr += 1;
        }
        Echelon { mat: m, pivots }
    }

    /// Reduced echelon form over RatFunc plus the pivot columns.
    fn rref(&self) -> (Vec<Vec<RatFunc>>, Vec<usize>) {
        let ech = self.echelon();
        let mut m: Vec<Vec<RatFunc>> = ech
            .mat
            .into_iter()
            .map(|row| row.into_iter().map(RatFunc::from_poly).collect())
            .collect();
        let pivcols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        for (k, &c) in pivcols.iter().enumerate().rev() {
            let inv = m[k][c].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                m[k][j] = m[k][j].clone() * inv.clone();
            }
            for i in 0..k {
                let f = m[i][c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[k][j].clone();
                }
            }
        }
        (m, pivcols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space; every vector is re-checked against the
    /// original matrix before being returned.
    pub fn kernel_basis(&self) -> Vec<Vec<RatFunc>> {
        let (m, pivcols) = self.rref();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivcols.contains(&f) {
                continue;
            }
            let mut v = vec![RatFunc::zero(); self.cols];
            v[f] = RatFunc::one();
            for (k, &c) in pivcols.iter().enumerate() {
                v[c] = -m[k][f].clone();
            }
            assert!(
                self.mul_vec(&v).iter().all(|e| e.is_zero()),
                "kernel vector failed the m*v = 0 check"
            );
            basis.push(v);
        }
        basis
    }

    /// One solution of self * x = rhs (free variables set to zero), or None
    /// if the system is inconsistent.
    pub fn solve(&self, rhs: &[RatFunc]) -> Option<Vec<RatFunc>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = ExactMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let (m, pivcols) = aug.rref();
        if pivcols.contains(&self.cols) {
            return None;
        }
        let mut x = vec![RatFunc::zero(); self.cols];
        for (k, &c) in pivcols.iter().enumerate() {
            x[c] = m[k][self.cols].clone();
        }
        debug_assert!(self
            .mul_vec(&x)
            .iter()
            .zip(rhs)
            .all(|(a, b)| a == b));
        Some(x)
    }

    /// Advisory fast rank: evaluate q at the points 1, 2, ..., sample_count,
    /// skip points that hit a denominator pole, eliminate over Q, and take
    /// the maximum.  Always <= the exact rank; errors if every point is a
    /// pole.
    pub fn rank_probabilistic(&self, sample_count: usize) -> Result<usize> {
        if sample_count == 0 {
            return Err(Error::Param("sample_count must be >= 1".into()));
        }
        let mut best: Option<usize> = None;
        for k in 1..=sample_count {
            let x = BigRational::from_integer(BigInt::from(k as i64));
            let mut evaluated = Vec::with_capacity(self.entries.len());
            let mut pole = false;
            for e in &self.entries {
                match e.eval(&x) {
                    Some(v) => evaluated.push(v),
                    None => {
                        pole = true;
                        break;
                    }
                }
            }
            if pole {
                continue;
            }
            let r = rank_rational(self.rows, self.cols, evaluated);
            best = Some(best.map_or(r, |b| b.max(r)));
        }
        best.ok_or(Error::PoleSampling)
    }
}

fn poly_lcm(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    (a * b).exact_div(&a.gcd(b)).make_monic()
}

fn rat_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    BigRational::new(
        num_integer::gcd(a.numer().abs(), b.numer().abs()),
        num_integer::lcm(a.denom().clone(), b.denom().clone()),
    )
}

/// Divide a polynomial row by the gcd of all its rational coefficients.
fn strip_row_content(row: Vec<UniPoly>) -> Vec<UniPoly> {
    let mut c = BigRational::zero();
    for p in &row {
        if !p.is_zero() {
            c = rat_gcd(&c, &p.content());
        }
    }
    if c.is_zero() || c.is_one() {
        return row;
    }
    let inv = c.recip();
    row.into_iter().map(|p| p.scale(&inv)).collect()
}

fn rank_rational(rows: usize, cols: usize, mut m: Vec<BigRational>) -> usize {
    let at = |i: usize, j: usize| i * cols + j;
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[at(i, col)].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            m.swap(at(rank, j), at(p, j));
        }
        let inv = m[at(rank, col)].recip();
        for i in rank + 1..rows {
            if m[at(i, col)].is_zero() {
                continue;
            }
            let f = &m[at(i, col)] * &inv;
            for j in col..cols {
                let s = &m[at(rank, j)] * &f;
                m[at(i, j)] = &m[at(i, j)] - &s;
            }
        }
        rank += 1;
    }
    rank
}
