//! Section spaces of the line bundles over a quantized Grassmannian.
//!
//! The k-th bundle's sections live inside the coordinate ring as the span
//! of k-fold products of the row minors z^I (columns {1..r}) for k > 0, of
//! the complementary minors z-bar^J for k < 0, and the constants at k = 0.
//! The antiholomorphic differential kills every z-product on content
//! grounds, so its kernel there is the whole span; on the negative side it
//! acts injectively.  That asymmetry is the quantized Borel-Weil
//! statement, checked here by exact rank computations: the kernel
//! dimension on the positive side matches the Weyl-type product formula
//! and the semistandard tableau count, and on the negative side it is
//! zero.
//!
//! Two auxiliary exact checks round the picture out.  `ell_collapse`
//! verifies that the unit decomposes through each bundle: summing
//! antipodes of row minors against the minors themselves collapses to 1
//! modulo the determinant relation.  `flat_sections_dim` confirms the
//! calculus is connected on a product neighbourhood of the generators:
//! only the constants are killed by both differentials at once.

use crate::calculus::{dbar, del, form_coefficient_matrix, FormVector};
use crate::error::{Error, Result};
use crate::minors::{inversion_count, subsets_of_size, z_bar, z_gr, z_plus, IndexSet};
use crate::ncalg::{coefficient_matrix, qdet, NCPoly};
use crate::scalar::{QScalar, RatFunc};

/// (-q)^e over the rational function field, e of either sign.
fn signed_q_pow(e: i64) -> RatFunc {
    let p = RatFunc::q_pow(e);
    if e.rem_euclid(2) == 1 {
        -p
    } else {
        p
    }
}

/// Greedy maximal linearly independent subset, kept in candidate order.
pub fn greedy_independent(candidates: &[NCPoly<RatFunc>]) -> Vec<NCPoly<RatFunc>> {
    let mut basis: Vec<NCPoly<RatFunc>> = Vec::new();
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        let mut trial: Vec<&NCPoly<RatFunc>> = basis.iter().collect();
        trial.push(c);
        if coefficient_matrix(&trial).rank() == trial.len() {
            basis.push(c.clone());
        }
    }
    basis
}

fn check_grassmannian(n: u8, r: u8) -> Result<()> {
    if n < 2 || r == 0 || r >= n {
        return Err(Error::Param(format!(
            "need 1 <= r < n, got (n, r) = ({}, {})",
            n, r
        )));
    }
    Ok(())
}

/// All |k|-fold products of the generating minors of the k-th bundle, one
/// per multiset, factors in lexicographic order.
pub fn section_products(n: u8, r: u8, k: i64) -> Result<Vec<NCPoly<RatFunc>>> {
    check_grassmannian(n, r)?;
    if k == 0 {
        return Ok(vec![NCPoly::one(n)]);
    }
    let gens: Vec<NCPoly<RatFunc>> = if k > 0 {
        subsets_of_size(n, r as usize)
            .iter()
            .map(|s| z_plus(n, r, s))
            .collect::<Result<_>>()?
    } else {
        subsets_of_size(n, (n - r) as usize)
            .iter()
            .map(|s| z_bar(n, r, s))
            .collect::<Result<_>>()?
    };
    let steps = k.unsigned_abs() as usize;
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        gens: &[NCPoly<RatFunc>],
        steps: usize,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<NCPoly<RatFunc>>,
    ) {
        if stack.len() == steps {
            let mut p = NCPoly::one(gens[0].n());
            for &i in stack.iter() {
                p = p.mul(&gens[i]);
            }
            out.push(p);
            return;
        }
        for i in start..gens.len() {
            stack.push(i);
            rec(gens, steps, i, stack, out);
            stack.pop();
        }
    }
    rec(&gens, steps, 0, &mut stack, &mut out);
    Ok(out)
}

/// A basis of the k-th bundle's section space representatives.
pub fn bundle_span(n: u8, r: u8, k: i64) -> Result<Vec<NCPoly<RatFunc>>> {
    Ok(greedy_independent(&section_products(n, r, k)?))
}

/// Dimension of the antiholomorphic kernel on the k-th bundle.
pub fn h0(n: u8, r: u8, k: i64) -> Result<usize> {
    let span = bundle_span(n, r, k)?;
    crate::calculus::kernel_dim_in_span(&span, |g| dbar(r, g))
}

/// Dimension of the holomorphic kernel on the k-th bundle.
pub fn h0_opposite(n: u8, r: u8, k: i64) -> Result<usize> {
    let span = bundle_span(n, r, k)?;
    crate::calculus::kernel_dim_in_span(&span, |g| del(r, g))
}

/// Rank of the products of two copies of the first bundle's sections
/// inside the second bundle's span.
pub fn product_span_rank(n: u8, r: u8) -> Result<usize> {
    let first = bundle_span(n, r, 1)?;
    let mut products = Vec::new();
    for (i, a) in first.iter().enumerate() {
        for b in &first[i..] {
            products.push(a.mul(b));
        }
    }
    let polys: Vec<&NCPoly<RatFunc>> = products.iter().collect();
    Ok(coefficient_matrix(&polys).rank())
}

fn tuples(count: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; arity];
    loop {
        out.push(cur.clone());
        let mut pos = arity;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < count {
                break;
            }
            cur[pos] = 0;
        }
    }
}

/// The unit decomposition through the k-th bundle: summing the antipodes
/// of the generating minors against the minors themselves collapses to 1
/// modulo the determinant relation.  The antipodes enter through their
/// closed complementary-minor form.
pub fn ell_collapse(n: u8, r: u8, k: i64) -> Result<bool> {
    check_grassmannian(n, r)?;
    if k == 0 {
        return Ok(true);
    }
    let steps = k.unsigned_abs() as usize;
    let sets = if k > 0 {
        subsets_of_size(n, r as usize)
    } else {
        subsets_of_size(n, (n - r) as usize)
    };
    let mut total = NCPoly::zero(n);
    for tuple in tuples(sets.len(), steps) {
        let mut coeff = RatFunc::q_pow(0);
        let mut left = NCPoly::one(n);
        let mut right = NCPoly::one(n);
        // left legs in reverse tuple order, right legs forward
        for &t in tuple.iter().rev() {
            let set: &IndexSet = &sets[t];
            let comp = set.complement(n);
            let inv = inversion_count(set, &comp) as i64;
            if k > 0 {
                coeff = coeff * signed_q_pow(-inv);
                left = left.mul(&z_bar(n, r, &comp)?);
            } else {
                coeff = coeff * signed_q_pow(r as i64 * (n - r) as i64 - inv);
                left = left.mul(&z_plus(n, r, &comp)?);
            }
        }
        for &t in tuple.iter() {
            let set: &IndexSet = &sets[t];
            if k > 0 {
                right = right.mul(&z_plus(n, r, set)?);
            } else {
                right = right.mul(&z_bar(n, r, set)?);
            }
        }
        total = total + left.mul(&right).scale(&coeff);
    }
    total.eq_mod_det1(&NCPoly::one(n))
}

/// The bundle grading of the unit decomposition's legs: every left leg
/// shares one column multiset (|k| copies of the complementary block) and
/// every right leg the mirrored one.
pub fn ell_grading(n: u8, r: u8, k: i64) -> Result<bool> {
    check_grassmannian(n, r)?;
    if k == 0 {
        return Ok(true);
    }
    let steps = k.unsigned_abs() as usize;
    let sets = if k > 0 {
        subsets_of_size(n, r as usize)
    } else {
        subsets_of_size(n, (n - r) as usize)
    };
    for tuple in tuples(sets.len(), steps) {
        let mut left: NCPoly<RatFunc> = NCPoly::one(n);
        let mut right: NCPoly<RatFunc> = NCPoly::one(n);
        for &t in tuple.iter().rev() {
            let comp = sets[t].complement(n);
            left = left.mul(&if k > 0 {
                z_bar(n, r, &comp)?
            } else {
                z_plus(n, r, &comp)?
            });
        }
        for &t in tuple.iter() {
            right = right.mul(&if k > 0 {
                z_plus(n, r, &sets[t])?
            } else {
                z_bar(n, r, &sets[t])?
            });
        }
        let (lc, rc) = match (left.uniform_content(), right.uniform_content()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(false),
        };
        let block = |lo: u8, hi: u8| -> Vec<u8> {
            let mut v = Vec::new();
            for _ in 0..steps {
                v.extend(lo..=hi);
            }
            v.sort_unstable();
            v
        };
        let (want_l, want_r) = if k > 0 {
            (block(r + 1, n), block(1, r))
        } else {
            (block(1, r), block(r + 1, n))
        };
        if lc.cols != want_l || rc.cols != want_r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of a family in the quotient by (det - 1).  Per degree class mod n
/// the homogeneous components of every member are raised to one shared top
/// degree by multiplying with the central determinant; that aligning map
/// is linear and its kernel on the span is exactly the span's overlap with
/// the relation ideal, so the plain rank of the aligned family decides.
fn rank_mod_det1(n: u8, members: &[NCPoly<RatFunc>]) -> usize {
    let nn = n as usize;
    let det = qdet::<RatFunc>(n);
    let mut top: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let split: Vec<_> = members.iter().map(|m| m.degree_components()).collect();
    for comps in &split {
        for (&d, _) in comps {
            let e = top.entry(d % nn).or_insert(d);
            *e = (*e).max(d);
        }
    }
    let aligned: Vec<NCPoly<RatFunc>> = split
        .iter()
        .map(|comps| {
            let mut out = NCPoly::zero(n);
            for (&d, p) in comps {
                let mut shifted = p.clone();
                for _ in 0..(top[&(d % nn)] - d) / nn {
                    shifted = shifted.mul(&det);
                }
                out = out + shifted;
            }
            out
        })
        .collect();
    let refs: Vec<&NCPoly<RatFunc>> = aligned.iter().collect();
    coefficient_matrix(&refs).rank()
}

/// Dimension modulo the determinant relation of the joint kernel of both
/// differentials on the span of products of at most `max_deg` coordinate
/// generators z^I z-bar^J.
pub fn flat_sections_dim(n: u8, r: u8, max_deg: usize) -> Result<usize> {
    check_grassmannian(n, r)?;
    let mut gens = Vec::new();
    for i_set in subsets_of_size(n, r as usize) {
        for j_set in subsets_of_size(n, (n - r) as usize) {
            gens.push(z_gr::<RatFunc>(n, r, &i_set, &j_set)?);
        }
    }
    fn rec(
        gens: &[NCPoly<RatFunc>],
        left: usize,
        start: usize,
        stack: &NCPoly<RatFunc>,
        out: &mut Vec<NCPoly<RatFunc>>,
    ) {
        out.push(stack.clone());
        if left == 0 {
            return;
        }
        for i in start..gens.len() {
            rec(gens, left - 1, i, &stack.mul(&gens[i]), out);
        }
    }
    let mut candidates = Vec::new();
    rec(&gens, max_deg, 0, &NCPoly::one(n), &mut candidates);
    let basis = greedy_independent(&candidates);
    let mut forms: Vec<FormVector> = Vec::new();
    for b in &basis {
        let mut fv = dbar(r, b)?;
        for (&(i, j), comp) in del(r, b)?.iter() {
            fv.add(i, j, comp.clone());
        }
        forms.push(fv);
    }
    let refs: Vec<&FormVector> = forms.iter().collect();
    let kernel = form_coefficient_matrix(&refs).kernel_basis();
    let members: Vec<NCPoly<RatFunc>> = kernel
        .iter()
        .map(|v| {
            let mut p = NCPoly::zero(n);
            for (c, b) in v.iter().zip(&basis) {
                p = p + b.scale(c);
            }
            p
        })
        .collect();
    Ok(rank_mod_det1(n, &members))
}
