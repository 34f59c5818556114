//! Rectangular semistandard tableaux, the standard monomials they label,
//! and the torus weight bookkeeping used to locate extremal vectors.
//!
//! A tableau of shape r×k with entries in {1..n} is read column by column:
//! each column is a strictly increasing r-subset I, and the associated
//! standard monomial is the left-to-right product of the column minors
//! z^I (rows I against the fixed column block {1..r}).  The count of such
//! tableaux is the classical dimension
//!     dim(r,k,n) = Π_{i=1..r} Π_{j=1..n-r} (k+i+j-1)/(i+j-1),
//! and the standard monomials stay linearly independent at generic q,
//! which the tests check directly at small sizes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minors::{subsets_of_size, z_plus, IndexSet};
use crate::ncalg::NCPoly;
use crate::scalar::QScalar;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tableau {
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// Validates shape and the semistandard conditions: rows weakly
    /// increase left to right, columns strictly increase top to bottom,
    /// entries lie in {1..n}.
    pub fn new(rows: Vec<Vec<u8>>, n: u8) -> Result<Tableau> {
        let k = rows.first().map_or(0, |r| r.len());
        for row in &rows {
            if row.len() != k {
                return Err(Error::Dim(format!("ragged tableau rows: {:?}", rows)));
            }
            if row.iter().any(|&e| e == 0 || e > n) {
                return Err(Error::Dim(format!("tableau entry out of 1..{}: {:?}", n, rows)));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Dim(format!("row not weakly increasing: {:?}", rows)));
            }
        }
        for c in 0..k {
            for i in 1..rows.len() {
                if rows[i - 1][c] >= rows[i][c] {
                    return Err(Error::Dim(format!(
                        "column {} not strictly increasing: {:?}",
                        c + 1,
                        rows
                    )));
                }
            }
        }
        Ok(Tableau { rows })
    }

    fn from_columns(cols: &[IndexSet], r: usize) -> Tableau {
        let rows = (0..r)
            .map(|i| cols.iter().map(|c| c.elements()[i]).collect())
            .collect();
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, |r| r.len()))
    }

    pub fn columns(&self) -> Vec<IndexSet> {
        let (_, k) = self.shape();
        (0..k)
            .map(|c| IndexSet::from_slice(&self.rows.iter().map(|row| row[c]).collect::<Vec<_>>()))
            .collect()
    }

    /// Multiset of all entries, ascending.
    pub fn content(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.rows.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }
}

/// All r×k semistandard tableaux with entries in {1..n}.  Columns are
/// strictly increasing r-subsets, and adjacent columns compare entrywise.
pub fn enumerate_ssyt(r: u8, k: u8, n: u8) -> Vec<Tableau> {
    if r > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Tableau {
            rows: vec![Vec::new(); r as usize],
        }];
    }
    let columns = subsets_of_size(n, r as usize);
    let mut out = Vec::new();
    let mut stack: Vec<IndexSet> = Vec::new();
    fn entrywise_le(a: &IndexSet, b: &IndexSet) -> bool {
        a.elements().iter().zip(b.elements()).all(|(x, y)| x <= y)
    }
    fn rec(
        columns: &[IndexSet],
        k: u8,
        r: usize,
        stack: &mut Vec<IndexSet>,
        out: &mut Vec<Tableau>,
    ) {
        if stack.len() == k as usize {
            out.push(Tableau::from_columns(stack, r));
            return;
        }
        for c in columns {
            if stack.last().map_or(true, |prev| entrywise_le(prev, c)) {
                stack.push(c.clone());
                rec(columns, k, r, stack, out);
                stack.pop();
            }
        }
    }
    rec(&columns, k, r as usize, &mut stack, &mut out);
    out
}

/// Π_{i=1..r} Π_{j=1..n-r} (k+i+j-1)/(i+j-1).  Always an integer.
pub fn dim_formula(r: u8, k: u8, n: u8) -> u64 {
    let mut acc = BigRational::one();
    for i in 1..=(r as i64) {
        for j in 1..=((n - r) as i64) {
            acc *= BigRational::new(BigInt::from(k as i64 + i + j - 1), BigInt::from(i + j - 1));
        }
    }
    assert!(acc.is_integer());
    acc.to_integer().to_u64().expect("dimension fits in u64")
}

/// The product of column minors z^{I_1} z^{I_2} ... z^{I_k} for the
/// tableau's columns I_c.
pub fn standard_monomial<S: QScalar>(n: u8, t: &Tableau) -> Result<NCPoly<S>> {
    let (r, _) = t.shape();
    let mut acc = NCPoly::one(n);
    for col in t.columns() {
        acc = acc.mul(&z_plus::<S>(n, r as u8, &col)?);
    }
    Ok(acc)
}

/// Torus weight of a word from its row indices: an occurrence of the row
/// value a adds +1 at position a-1 and -1 at position a (positions 1..n-1,
/// out-of-range contributions dropped).
fn word_weight(n: u8, w: &[crate::ncalg::Gen]) -> Vec<i64> {
    let mut lam = vec![0i64; n as usize - 1];
    for g in w {
        let a = g.row as usize;
        if a >= 2 {
            lam[a - 2] += 1;
        }
        if a <= n as usize - 1 {
            lam[a - 1] -= 1;
        }
    }
    lam
}

/// Torus weight of a weight-homogeneous element; an error when two words
/// carry different weights.
pub fn k_weight<S: QScalar>(a: &NCPoly<S>) -> Result<Vec<i64>> {
    let n = a.n();
    let mut seen: Option<Vec<i64>> = None;
    for (w, _) in a.terms() {
        let lam = word_weight(n, w);
        match &seen {
            None => seen = Some(lam),
            Some(prev) => {
                if *prev != lam {
                    return Err(Error::Dim(format!(
                        "mixed weights {:?} and {:?}",
                        prev, lam
                    )));
                }
            }
        }
    }
    seen.ok_or_else(|| Error::Dim("weight of zero is undefined".into()))
}

/// Weight of a tableau's standard monomial, straight from its entries.
pub fn tableau_weight(n: u8, t: &Tableau) -> Vec<i64> {
    let mut lam = vec![0i64; n as usize - 1];
    for &a in t.rows.iter().flatten() {
        let a = a as usize;
        if a >= 2 {
            lam[a - 2] += 1;
        }
        if a <= n as usize - 1 {
            lam[a - 1] -= 1;
        }
    }
    lam
}

/// Whether w - base is a non-negative integer combination of the rows of
/// the Cartan matrix, i.e. base sits under w in the root order.
pub fn dominates(base: &[i64], w: &[i64]) -> bool {
    assert_eq!(base.len(), w.len());
    let m = base.len();
    if m == 0 {
        return true;
    }
    // solve A x = w - base for the A_{m} Cartan matrix
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let v: i64 = if i == j {
                        2
                    } else if i.abs_diff(j) == 1 {
                        -1
                    } else {
                        0
                    };
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    let mut rhs: Vec<BigRational> = (0..m)
        .map(|i| BigRational::from_integer(BigInt::from(w[i] - base[i])))
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&i| !a[i][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        rhs.swap(col, piv);
        let d = a[col][col].clone();
        for j in 0..m {
            a[col][j] /= d.clone();
        }
        rhs[col] /= d;
        for i in 0..m {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..m {
                    let v = a[col][j].clone() * f.clone();
                    a[i][j] -= v;
                }
                let v = rhs[col].clone() * f;
                rhs[i] -= v;
            }
        }
    }
    rhs.iter().all(|x| x.is_integer() && !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::coefficient_matrix;
    use crate::scalar::RatFunc;

    #[test]
    fn dim_formula_pinned() {
        assert_eq!(dim_formula(1, 0, 2), 1);
        assert_eq!(dim_formula(1, 1, 2), 2);
        assert_eq!(dim_formula(1, 2, 2), 3);
        assert_eq!(dim_formula(1, 4, 2), 5);
        assert_eq!(dim_formula(1, 2, 3), 6);
        assert_eq!(dim_formula(2, 1, 3), 3);
        assert_eq!(dim_formula(2, 1, 4), 6);
        assert_eq!(dim_formula(2, 2, 4), 20);
        assert_eq!(dim_formula(3, 1, 4), 4);
        assert_eq!(dim_formula(2, 0, 4), 1);
    }

    #[test]
    fn tableau_validation() {
        assert!(Tableau::new(vec![vec![1, 1], vec![2, 3]], 3).is_ok());
        // column must strictly increase
        assert!(Tableau::new(vec![vec![1, 1], vec![1, 3]], 3).is_err());
        // row must weakly increase
        assert!(Tableau::new(vec![vec![2, 1]], 3).is_err());
        // entries bounded by n
        assert!(Tableau::new(vec![vec![1, 4]], 3).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 2]], 3).is_err());
    }

    #[test]
    fn enumeration_matches_dim_formula() {
        for n in 2..=4u8 {
            for r in 1..n {
                for k in 0..=3u8 {
                    let tabs = enumerate_ssyt(r, k, n);
                    assert_eq!(
                        tabs.len() as u64,
                        dim_formula(r, k, n),
                        "count at r={} k={} n={}",
                        r,
                        k,
                        n
                    );
                    for t in &tabs {
                        assert!(Tableau::new(t.rows().to_vec(), n).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn standard_monomial_pinned() {
        let t = Tableau::new(vec![vec![1, 2]], 2).unwrap();
        let m = standard_monomial::<RatFunc>(2, &t).unwrap();
        let expected = NCPoly::<RatFunc>::gen(2, 1, 1)
            .unwrap()
            .mul(&NCPoly::gen(2, 2, 1).unwrap());
        assert_eq!(m, expected);
        // empty tableau gives the unit
        let t0 = enumerate_ssyt(2, 0, 3).pop().unwrap();
        assert!(standard_monomial::<RatFunc>(3, &t0).unwrap() == NCPoly::one(3));
    }

    #[test]
    fn weights_pinned_and_homogeneous() {
        let u11 = NCPoly::<RatFunc>::gen(2, 1, 1).unwrap();
        assert_eq!(k_weight(&u11).unwrap(), vec![-1]);
        let u21 = NCPoly::<RatFunc>::gen(2, 2, 1).unwrap();
        assert_eq!(k_weight(&u21).unwrap(), vec![1]);
        let mixed = u11.clone() + u21;
        assert!(k_weight(&mixed).is_err());
        // every standard monomial is weight homogeneous, with the weight
        // readable off the tableau
        for (n, r, k) in [(2u8, 1u8, 2u8), (3, 1, 2), (3, 2, 1), (4, 2, 1)] {
            for t in enumerate_ssyt(r, k, n) {
                let m = standard_monomial::<RatFunc>(n, &t).unwrap();
                assert_eq!(
                    k_weight(&m).unwrap(),
                    tableau_weight(n, &t),
                    "tableau {:?}",
                    t
                );
            }
        }
    }

    #[test]
    fn standard_monomials_are_independent() {
        for (n, r, k) in [
            (2u8, 1u8, 1u8),
            (2, 1, 2),
            (2, 1, 3),
            (3, 1, 1),
            (3, 1, 2),
            (3, 2, 1),
            (3, 2, 2),
            (4, 2, 1),
        ] {
            let monos: Vec<NCPoly<RatFunc>> = enumerate_ssyt(r, k, n)
                .iter()
                .map(|t| standard_monomial::<RatFunc>(n, t).unwrap())
                .collect();
            let refs: Vec<&NCPoly<RatFunc>> = monos.iter().collect();
            let m = coefficient_matrix(&refs);
            assert_eq!(
                m.rank(),
                monos.len(),
                "independence at n={} r={} k={}",
                n,
                r,
                k
            );
        }
    }

    #[test]
    fn base_tableau_is_extremal() {
        for (n, r, k) in [(2u8, 1u8, 2u8), (3, 1, 2), (3, 2, 2), (4, 2, 1)] {
            let tabs = enumerate_ssyt(r, k, n);
            let base = Tableau::new(
                (1..=r).map(|i| vec![i; k as usize]).collect(),
                n,
            )
            .unwrap();
            let base_w = tableau_weight(n, &base);
            let mut at_base = 0;
            for t in &tabs {
                let w = tableau_weight(n, t);
                assert!(
                    dominates(&base_w, &w),
                    "tableau {:?} not above base at n={} r={} k={}",
                    t,
                    n,
                    r,
                    k
                );
                if w == base_w {
                    at_base += 1;
                }
            }
            assert_eq!(at_base, 1, "base weight multiplicity at n={} r={} k={}", n, r, k);
        }
    }

    #[test]
    fn tableau_serde_round_trip() {
        let t = Tableau::new(vec![vec![1, 1], vec![2, 3]], 3).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[1,1],[2,3]]");
        let back: Tableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
