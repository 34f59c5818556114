//! Quantum minor determinants and index-set combinatorics.
//!
//! An `IndexSet` is a strictly increasing subset of {1..n}.  The minor
//! z^I_J is the signed sum over permutations with rows I and columns J; it
//! can be expanded along rows or columns and both expansions agree, which
//! the tests check against each other.  Index surgery I_{ij} replaces i by
//! j inside I; when the replacement is impossible the result is undefined
//! and every minor built from it is the zero polynomial, so sums over
//! surgered sets need no case analysis.

use std::fmt;

use crate::error::{Error, Result};
use crate::ncalg::{minor_sum, neg_q_pow, Gen, NCPoly, Word};
use crate::scalar::QScalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct IndexSet(Vec<u8>);

impl IndexSet {
    pub fn new(elements: Vec<u8>) -> Result<IndexSet> {
        let ok = !elements.contains(&0) && elements.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::BadIndexSet {
                set: format!("{:?}", elements),
                n: 0,
            });
        }
        Ok(IndexSet(elements))
    }

    pub fn from_slice(elements: &[u8]) -> IndexSet {
        IndexSet::new(elements.to_vec()).expect("strictly increasing 1-based indices")
    }

    /// The contiguous range {a, a+1, ..., b}; empty when a > b.
    pub fn range(a: u8, b: u8) -> IndexSet {
        IndexSet((a..=b).collect())
    }

    pub fn empty() -> IndexSet {
        IndexSet(Vec::new())
    }

    pub fn elements(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u8) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    /// Complement inside {1..n}.
    pub fn complement(&self, n: u8) -> IndexSet {
        IndexSet((1..=n).filter(|&x| !self.contains(x)).collect())
    }

    /// Set difference self minus other.
    pub fn minus(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| !other.contains(x)).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, "}}")
    }
}

/// ℓ(S,T) = #{(s,t) ∈ S×T with s > t}.
pub fn inversion_count(s: &IndexSet, t: &IndexSet) -> usize {
    s.elements()
        .iter()
        .map(|&a| t.elements().iter().filter(|&&b| a > b).count())
        .sum()
}

/// I_{ij} = (I minus {i}) plus {j}.  Defined when i = j (identity) or when
/// i ∈ I and j ∉ I; otherwise None, the distinguished value that turns any
/// dependent minor into zero.
pub fn index_surgery(i_set: &IndexSet, i: u8, j: u8) -> Option<IndexSet> {
    if i == j {
        return Some(i_set.clone());
    }
    if !i_set.contains(i) || i_set.contains(j) {
        return None;
    }
    let mut v: Vec<u8> = i_set.elements().iter().copied().filter(|&x| x != i).collect();
    v.push(j);
    v.sort_unstable();
    Some(IndexSet(v))
}

/// All k-element subsets of the given elements, in lexicographic order.
pub fn combinations(items: &[u8], k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(k);
    fn rec(items: &[u8], k: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<IndexSet>) {
        if cur.len() == k {
            out.push(IndexSet(cur.clone()));
            return;
        }
        for t in start..items.len() {
            cur.push(items[t]);
            rec(items, k, t + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// All size-k subsets of {1..n}.
pub fn subsets_of_size(n: u8, k: usize) -> Vec<IndexSet> {
    let all: Vec<u8> = (1..=n).collect();
    combinations(&all, k)
}

/// The quantum minor z^I_J (rows I, columns J), in column-expansion form:
/// z^I_J = Σ_σ (-q)^{ℓ(σ)} u[i_1, j_{σ(1)}] ⋯ u[i_k, j_{σ(k)}].
pub fn minor<S: QScalar>(n: u8, rows: &IndexSet, cols: &IndexSet) -> Result<NCPoly<S>> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len() as u8, cols.len() as u8));
    }
    if rows.elements().iter().chain(cols.elements()).any(|&x| x > n) {
        return Err(Error::BadIndexSet {
            set: format!("{} / {}", rows, cols),
            n,
        });
    }
    Ok(minor_sum(n, rows.elements(), cols.elements()))
}

/// Row-expansion form: rows permuted against fixed columns.  Must agree
/// with `minor`; kept separate as the independent route for that check.
pub fn minor_row_form<S: QScalar>(n: u8, rows: &IndexSet, cols: &IndexSet) -> Result<NCPoly<S>> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len() as u8, cols.len() as u8));
    }
    let k = rows.len();
    let mut out = NCPoly::zero(n);
    for (perm, inv) in crate::ncalg::permutations(k) {
        let w: Word = (0..k)
            .map(|t| Gen::new(rows.elements()[perm[t]], cols.elements()[t]))
            .collect();
        out = out + NCPoly::normal_form(n, &w, neg_q_pow::<S>(inv as i64));
    }
    Ok(out)
}

/// Minor with possibly-undefined index sets: undefined on either side gives
/// the zero polynomial (sizes permitting the question at all).
pub fn minor_or_zero<S: QScalar>(
    n: u8,
    rows: Option<&IndexSet>,
    cols: Option<&IndexSet>,
) -> Result<NCPoly<S>> {
    match (rows, cols) {
        (Some(i), Some(j)) => minor(n, i, j),
        _ => Ok(NCPoly::zero(n)),
    }
}

/// The Laplace expansion along a column block J1 ⊆ J:
/// (-q)^{ℓ(J1, J∖J1)} z^I_J = Σ_{I1 ⊆ I, |I1| = |J1|} (-q)^{ℓ(I1, I∖I1)} z^{I1}_{J1} z^{I∖I1}_{J∖J1}.
pub fn laplace_check(n: u8, rows: &IndexSet, cols: &IndexSet, j1: &IndexSet) -> Result<bool> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len() as u8, cols.len() as u8));
    }
    if j1.is_empty() || !j1.is_subset_of(cols) {
        return Err(Error::Param(format!("J1 = {} must be a nonempty subset of J = {}", j1, cols)));
    }
    let j2 = cols.minus(j1);
    let lhs = minor::<crate::scalar::RatFunc>(n, rows, cols)?
        .scale(&neg_q_pow(inversion_count(j1, &j2) as i64));
    let mut rhs = NCPoly::zero(n);
    for i1 in combinations(rows.elements(), j1.len()) {
        let i2 = rows.minus(&i1);
        let a = minor::<crate::scalar::RatFunc>(n, &i1, j1)?;
        let b = minor::<crate::scalar::RatFunc>(n, &i2, &j2)?;
        rhs = rhs + a.mul(&b).scale(&neg_q_pow(inversion_count(&i1, &i2) as i64));
    }
    Ok(lhs == rhs)
}

/// z^I := z^I_R with R = {1..r}: the degree +1 generators.
pub fn z_plus<S: QScalar>(n: u8, r: u8, rows: &IndexSet) -> Result<NCPoly<S>> {
    if rows.len() != r as usize {
        return Err(Error::SizeMismatch(rows.len() as u8, r));
    }
    minor(n, rows, &IndexSet::range(1, r))
}

/// z̄^J := z^J_{R^c}: the degree -1 generators.
pub fn z_bar<S: QScalar>(n: u8, r: u8, rows: &IndexSet) -> Result<NCPoly<S>> {
    if rows.len() != (n - r) as usize {
        return Err(Error::SizeMismatch(rows.len() as u8, n - r));
    }
    minor(n, rows, &IndexSet::range(r + 1, n))
}

/// z^{IJ} := z^I z̄^J: the degree-0 Grassmannian generators.
pub fn z_gr<S: QScalar>(n: u8, r: u8, i: &IndexSet, j: &IndexSet) -> Result<NCPoly<S>> {
    Ok(z_plus::<S>(n, r, i)?.mul(&z_bar::<S>(n, r, j)?))
}

/// The subscripted generators of the twisted ladders: z_I has columns I and
/// rows the top-justified block {1..|I|}.  For |I| = r this is z^R_I.
pub fn z_lower<S: QScalar>(n: u8, cols: &IndexSet) -> Result<NCPoly<S>> {
    minor(n, &IndexSet::range(1, cols.len() as u8), cols)
}

/// Antipode of a minor: S(z^I_J) = p · det^{-k} with p returned and
/// k = |I|.  Computed anti-multiplicatively from the generator cofactors,
/// with the central det^{-1} factors collected.
pub fn antipode_minor<S: QScalar>(
    n: u8,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<(NCPoly<S>, i64)> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len() as u8, cols.len() as u8));
    }
    let z = minor::<S>(n, rows, cols)?;
    let mut out = NCPoly::zero(n);
    for (w, c) in z.terms() {
        let mut p = NCPoly::constant(n, c.clone());
        for g in w.iter().rev() {
            let (cof, _) = crate::ncalg::antipode_gen::<S>(n, g.row, g.col)?;
            p = p.mul(&cof);
        }
        out = out + p;
    }
    Ok((out, rows.len() as i64))
}

/// Verifies S(z^J_I) ≡ (-q)^{ℓ(J,J^c) - ℓ(I,I^c)} z^{I^c}_{J^c} mod (det - 1),
/// complements in {1..n}.
pub fn star_minor_check(n: u8, rows: &IndexSet, cols: &IndexSet) -> Result<bool> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len() as u8, cols.len() as u8));
    }
    let (p, _k) = antipode_minor::<crate::scalar::RatFunc>(n, cols, rows)?;
    let e = inversion_count(cols, &cols.complement(n)) as i64
        - inversion_count(rows, &rows.complement(n)) as i64;
    let rhs = minor::<crate::scalar::RatFunc>(n, &rows.complement(n), &cols.complement(n))?
        .scale(&neg_q_pow(e));
    p.eq_mod_det1(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{qdet, TensorPoly};
    use crate::scalar::{Field, QScalar, RatFunc};
    use num_rational::BigRational;

    type P = NCPoly<RatFunc>;

    fn is(e: &[u8]) -> IndexSet {
        IndexSet::from_slice(e)
    }

    fn g(n: u8, i: u8, j: u8) -> P {
        NCPoly::gen(n, i, j).unwrap()
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![1, 3, 4]).is_ok());
        assert!(IndexSet::new(vec![3, 1]).is_err());
        assert!(IndexSet::new(vec![1, 1]).is_err());
        assert!(IndexSet::new(vec![0]).is_err());
        assert_eq!(is(&[2, 4]).complement(5), is(&[1, 3, 5]));
        assert_eq!(is(&[1, 3]).to_string(), "{1,3}");
    }

    #[test]
    fn inversion_count_examples() {
        assert_eq!(inversion_count(&is(&[1]), &is(&[2])), 0);
        assert_eq!(inversion_count(&is(&[2]), &is(&[1])), 1);
        assert_eq!(inversion_count(&is(&[2, 4]), &is(&[1, 3])), 3);
    }

    #[test]
    fn surgery_examples() {
        assert_eq!(index_surgery(&is(&[1, 2]), 2, 3), Some(is(&[1, 3])));
        assert_eq!(index_surgery(&is(&[1, 2]), 1, 1), Some(is(&[1, 2])));
        assert_eq!(index_surgery(&is(&[1, 2]), 3, 4), None);
        // replacement target already present: undefined
        assert_eq!(index_surgery(&is(&[1, 2]), 1, 2), None);
    }

    #[test]
    fn minor_small_cases() {
        assert_eq!(minor::<RatFunc>(2, &is(&[1]), &is(&[1])).unwrap(), g(2, 1, 1));
        assert_eq!(
            minor::<RatFunc>(2, &is(&[1, 2]), &is(&[1, 2])).unwrap(),
            qdet::<RatFunc>(2)
        );
        assert!(minor::<RatFunc>(2, &is(&[1]), &is(&[1, 2])).is_err());
        assert!(minor::<RatFunc>(2, &is(&[3]), &is(&[1])).is_err());
        assert!(minor_or_zero::<RatFunc>(2, None, Some(&is(&[1])))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn row_and_column_expansions_agree() {
        for n in 2..=4u8 {
            for k in 1..=n as usize {
                for rows in subsets_of_size(n, k) {
                    for cols in subsets_of_size(n, k) {
                        let a = minor::<RatFunc>(n, &rows, &cols).unwrap();
                        let b = minor_row_form::<RatFunc>(n, &rows, &cols).unwrap();
                        assert_eq!(a, b, "minor {} / {} at n={}", rows, cols, n);
                    }
                }
            }
        }
    }

    #[test]
    fn classical_limit_is_the_subdeterminant() {
        let rows = is(&[1, 3]);
        let cols = is(&[2, 3]);
        let m = minor::<BigRational>(3, &rows, &cols).unwrap();
        // classical 2x2 subdeterminant: u[1,2]u[3,3] - u[1,3]u[3,2]
        let expected = NCPoly::gen(3, 1, 2)
            .unwrap()
            .mul(&NCPoly::gen(3, 3, 3).unwrap())
            - NCPoly::gen(3, 1, 3)
                .unwrap()
                .mul(&NCPoly::gen(3, 3, 2).unwrap())
                .scale(&BigRational::from_i64(1));
        assert_eq!(m, expected);
    }

    #[test]
    fn minor_coproduct_formula() {
        // Δ(z^I_J) = Σ_K z^I_K ⊗ z^K_J
        for n in 2..=3u8 {
            for k in 1..=n as usize {
                for rows in subsets_of_size(n, k) {
                    for cols in subsets_of_size(n, k) {
                        let z = minor::<RatFunc>(n, &rows, &cols).unwrap();
                        let lhs = z.coproduct();
                        let pairs: Vec<(P, P)> = subsets_of_size(n, k)
                            .iter()
                            .map(|kk| {
                                (
                                    minor::<RatFunc>(n, &rows, kk).unwrap(),
                                    minor::<RatFunc>(n, kk, &cols).unwrap(),
                                )
                            })
                            .collect();
                        let rhs = TensorPoly::from_pairs(n, &pairs);
                        assert_eq!(lhs, rhs, "Eq for {} / {} n={}", rows, cols, n);
                    }
                }
            }
        }
    }

    #[test]
    fn laplace_reproduces_det_at_n2() {
        assert!(laplace_check(2, &is(&[1, 2]), &is(&[1, 2]), &is(&[1])).unwrap());
        // spelled out: det = u[1,1]u[2,2] - q u[2,1]u[1,2]
        let det = qdet::<RatFunc>(2);
        let spelled = g(2, 1, 1).mul(&g(2, 2, 2))
            - g(2, 2, 1).mul(&g(2, 1, 2)).scale(&RatFunc::q());
        assert_eq!(det, spelled);
    }

    #[test]
    fn laplace_degenerate_block() {
        assert!(laplace_check(3, &is(&[1, 3]), &is(&[2, 3]), &is(&[2, 3])).unwrap());
    }

    #[test]
    fn laplace_exhaustive_n3() {
        for n in 2..=3u8 {
            for k in 1..=n as usize {
                for rows in subsets_of_size(n, k) {
                    for cols in subsets_of_size(n, k) {
                        for j1len in 1..=k {
                            for j1 in combinations(cols.elements(), j1len) {
                                assert!(
                                    laplace_check(n, &rows, &cols, &j1).unwrap(),
                                    "laplace {} / {} block {} n={}",
                                    rows,
                                    cols,
                                    j1,
                                    n
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn laplace_bad_block_is_an_error() {
        assert!(laplace_check(2, &is(&[1, 2]), &is(&[1, 2]), &IndexSet::empty()).is_err());
        assert!(laplace_check(2, &is(&[1, 2]), &is(&[1, 2]), &is(&[2, 3])).is_err());
    }

    #[test]
    fn plucker_generators() {
        assert_eq!(z_plus::<RatFunc>(2, 1, &is(&[1])).unwrap(), g(2, 1, 1));
        assert_eq!(z_bar::<RatFunc>(2, 1, &is(&[2])).unwrap(), g(2, 2, 2));
        let zz = z_gr::<RatFunc>(2, 1, &is(&[1]), &is(&[2])).unwrap();
        assert_eq!(zz, g(2, 1, 1).mul(&g(2, 2, 2)));
        assert!(z_plus::<RatFunc>(3, 1, &is(&[1, 2])).is_err());
        // z_lower: top-justified rows
        assert_eq!(z_lower::<RatFunc>(2, &is(&[2])).unwrap(), g(2, 1, 2));
        assert_eq!(
            z_lower::<RatFunc>(3, &is(&[2, 3])).unwrap(),
            minor::<RatFunc>(3, &is(&[1, 2]), &is(&[2, 3])).unwrap()
        );
    }

    #[test]
    fn star_examples() {
        // S(u[1,1]) ≡ u[2,2]
        assert!(star_minor_check(2, &is(&[1]), &is(&[1])).unwrap());
        // I = {1}, J = {2}: S(z^{{2}}_{{1}}) ≡ (-q) u[2,1]
        let (p, k) = antipode_minor::<RatFunc>(2, &is(&[2]), &is(&[1])).unwrap();
        assert_eq!(k, 1);
        assert!(p
            .eq_mod_det1(&g(2, 2, 1).scale(&-RatFunc::q()))
            .unwrap());
        assert!(star_minor_check(2, &is(&[1]), &is(&[2])).unwrap());
    }

    #[test]
    fn star_sweep() {
        for n in 2..=3u8 {
            for k in 1..=n as usize {
                for rows in subsets_of_size(n, k) {
                    for cols in subsets_of_size(n, k) {
                        assert!(
                            star_minor_check(n, &rows, &cols).unwrap(),
                            "star {} / {} n={}",
                            rows,
                            cols,
                            n
                        );
                    }
                }
            }
        }
    }
}
