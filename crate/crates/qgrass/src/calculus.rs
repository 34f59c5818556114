//! First-order holomorphic calculus: the two halves of the exterior
//! derivative and the form-valued bookkeeping around them.
//!
//! Directions are indexed by matrix positions that cross the block
//! boundary set by r: positions in {1..r} x {r+1..n} (the upper block) or
//! {r+1..n} x {1..r} (the lower block).  The antiholomorphic half acts by
//!     dbar(a)_(i,j) = Σ a_(1) Q_ji(a_(2)),   (i,j) in the upper block,
//! and the holomorphic half mirrors it on the lower block.  Two routes
//! compute these: a word route that enumerates only the coproduct paths
//! whose Q-factor survives the content conservation law, and a closed form
//! on quantum minors that reads the single surviving term off the support
//! of Q.  The tests hold the routes against each other.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::minors::{index_surgery, minor, subsets_of_size, IndexSet};
use crate::ncalg::{Gen, NCPoly, Word};
use crate::rform::{killing_entry, killing_word_transfer, word_content_allows};
use crate::scalar::RatFunc;

/// A finitely supported vector of algebra elements indexed by matrix
/// positions.  Zero components are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct FormVector {
    n: u8,
    components: BTreeMap<(u8, u8), NCPoly<RatFunc>>,
}

impl FormVector {
    pub fn new(n: u8) -> FormVector {
        FormVector {
            n,
            components: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn add(&mut self, i: u8, j: u8, p: NCPoly<RatFunc>) {
        assert_eq!(p.n(), self.n);
        let entry = self.components.remove(&(i, j));
        let total = match entry {
            Some(old) => old + p,
            None => p,
        };
        if !total.is_zero() {
            self.components.insert((i, j), total);
        }
    }

    pub fn component(&self, i: u8, j: u8) -> Option<&NCPoly<RatFunc>> {
        self.components.get(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u8, u8), &NCPoly<RatFunc>)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// JSON object keyed "i,j" with stringified components.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for ((i, j), p) in &self.components {
            map.insert(format!("{},{}", i, j), serde_json::Value::String(p.to_string()));
        }
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for FormVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), p)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "({},{}): {}", i, j, p)?;
        }
        Ok(())
    }
}

/// Positions {1..r} x {r+1..n}, row-major.
pub fn upper_block(n: u8, r: u8) -> Vec<(u8, u8)> {
    (1..=r)
        .flat_map(|i| ((r + 1)..=n).map(move |j| (i, j)))
        .collect()
}

/// Positions {r+1..n} x {1..r}, row-major.
pub fn lower_block(n: u8, r: u8) -> Vec<(u8, u8)> {
    ((r + 1)..=n)
        .flat_map(|i| (1..=r).map(move |j| (i, j)))
        .collect()
}

fn check_block(n: u8, r: u8) -> Result<()> {
    if r == 0 || r >= n {
        return Err(Error::Param(format!("block size r = {} out of 1..{}", r, n)));
    }
    Ok(())
}

/// Distinct rearrangements of a multiset.
fn multiset_arrangements(mut items: Vec<u8>) -> Vec<Vec<u8>> {
    items.sort_unstable();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(items.len());
    fn rec(pool: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut last: Option<u8> = None;
        for idx in 0..pool.len() {
            if last == Some(pool[idx]) {
                continue;
            }
            last = Some(pool[idx]);
            let v = pool.remove(idx);
            cur.push(v);
            rec(pool, cur, out);
            cur.pop();
            pool.insert(idx, v);
        }
    }
    rec(&mut items, &mut cur, &mut out);
    out
}

/// Σ g_(1) Q_αβ(g_(2)) by the word route: for each word, g_(1) runs rows
/// against a path κ and g_(2) runs κ against columns, and only paths with
/// κ = cols(w) minus {α} plus {β} as multisets can carry a nonzero Q_αβ.
pub fn q_convolution(g: &NCPoly<RatFunc>, alpha: u8, beta: u8) -> NCPoly<RatFunc> {
    let n = g.n();
    let mut out = NCPoly::zero(n);
    for (w, c) in g.terms() {
        let mut target: Vec<u8> = w.iter().map(|x| x.col).collect();
        if alpha != beta {
            match target.iter().position(|&x| x == alpha) {
                Some(pos) => {
                    target.remove(pos);
                }
                None => continue,
            }
            target.push(beta);
        }
        for kappa in multiset_arrangements(target.clone()) {
            let w2: Word = kappa
                .iter()
                .zip(w.iter())
                .map(|(&k, x)| Gen::new(k, x.col))
                .collect();
            debug_assert!(word_content_allows(&w2, alpha, beta));
            let scalar = killing_word_transfer(n, &w2, 0)
                .get(alpha as usize - 1, beta as usize - 1)
                .clone();
            if scalar.is_zero() {
                continue;
            }
            let w1: Word = w
                .iter()
                .zip(kappa.iter())
                .map(|(x, &k)| Gen::new(x.row, k))
                .collect();
            out = out + NCPoly::normal_form(n, &w1, c.clone() * scalar);
        }
    }
    out
}

/// Components Σ a_(1) Q_ji(a_(2)) at the given positions (i,j).
fn convolution_form(g: &NCPoly<RatFunc>, directions: &[(u8, u8)]) -> FormVector {
    let mut fv = FormVector::new(g.n());
    for &(i, j) in directions {
        fv.add(i, j, q_convolution(g, j, i));
    }
    fv
}

/// The antiholomorphic half: components over the upper block.
pub fn dbar(r: u8, g: &NCPoly<RatFunc>) -> Result<FormVector> {
    check_block(g.n(), r)?;
    Ok(convolution_form(g, &upper_block(g.n(), r)))
}

/// The holomorphic half: components over the lower block.
pub fn del(r: u8, g: &NCPoly<RatFunc>) -> Result<FormVector> {
    check_block(g.n(), r)?;
    Ok(convolution_form(g, &lower_block(g.n(), r)))
}

/// A single component of the antiholomorphic half.
pub fn dbar_component(r: u8, g: &NCPoly<RatFunc>, i: u8, j: u8) -> Result<NCPoly<RatFunc>> {
    check_block(g.n(), r)?;
    if !(i <= r && j > r) {
        return Err(Error::Param(format!(
            "({},{}) is not an upper block position for r = {}",
            i, j, r
        )));
    }
    let fv = convolution_form(g, &[(i, j)]);
    Ok(fv
        .component(i, j)
        .cloned()
        .unwrap_or_else(|| NCPoly::zero(g.n())))
}

/// Closed form of dbar on a quantum minor: Q's support keeps a single
/// coproduct term per direction,
///     dbar(z^I_J)_(i,j) = z^I_K Q_ji(z^K_J) with K = J minus {j} plus {i},
/// and no term at all when the surgery is undefined.
pub fn dbar_minor_closed(
    n: u8,
    r: u8,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<FormVector> {
    check_block(n, r)?;
    minor_closed_form(n, rows, cols, &upper_block(n, r))
}

/// Closed form of del on a quantum minor, over the lower block.
pub fn del_minor_closed(n: u8, r: u8, rows: &IndexSet, cols: &IndexSet) -> Result<FormVector> {
    check_block(n, r)?;
    minor_closed_form(n, rows, cols, &lower_block(n, r))
}

fn minor_closed_form(
    n: u8,
    rows: &IndexSet,
    cols: &IndexSet,
    directions: &[(u8, u8)],
) -> Result<FormVector> {
    let mut fv = FormVector::new(n);
    for &(i, j) in directions {
        if let Some(k) = index_surgery(cols, j, i) {
            let scalar = killing_entry(&minor::<RatFunc>(n, &k, cols)?, j, i);
            if !scalar.is_zero() {
                fv.add(i, j, minor::<RatFunc>(n, rows, &k)?.scale(&scalar));
            }
        }
    }
    Ok(fv)
}

/// Q_ji(a) - ε(a) Q_ji(1), the coefficient of the direction (i,j) in the
/// first-order differential of a.  Off-diagonal only.
pub fn first_order_coord(g: &NCPoly<RatFunc>, i: u8, j: u8) -> Result<RatFunc> {
    if i == j {
        return Err(Error::Param(format!(
            "first-order coordinate needs i != j, got ({},{})",
            i, j
        )));
    }
    Ok(killing_entry(g, j, i))
}

/// Rank of the matrix [first_order_coord(z^I zbar^J, i, j)] with one row
/// per degree-0 coordinate and one column per off-block direction.  This
/// is the dimension of the span of first-order differentials of the
/// coordinates, expected to fill both blocks: 2 r (n-r).
pub fn first_order_rank(n: u8, r: u8) -> Result<usize> {
    check_block(n, r)?;
    let mut dirs = upper_block(n, r);
    dirs.extend(lower_block(n, r));
    let coords: Vec<NCPoly<RatFunc>> = {
        let mut v = Vec::new();
        for i_set in subsets_of_size(n, r as usize) {
            for j_set in subsets_of_size(n, (n - r) as usize) {
                v.push(crate::minors::z_gr::<RatFunc>(n, r, &i_set, &j_set)?);
            }
        }
        v
    };
    let m = ExactMatrix::from_fn(coords.len(), dirs.len(), |a, b| {
        let (i, j) = dirs[b];
        first_order_coord(&coords[a], i, j).expect("off-diagonal direction")
    });
    Ok(m.rank())
}

/// Stacks the components of several form vectors over a common monomial
/// basis: one row per (direction, word) pair, one column per form.
pub fn form_coefficient_matrix(forms: &[&FormVector]) -> ExactMatrix {
    let mut rows: Vec<((u8, u8), Word)> = Vec::new();
    for f in forms {
        for (&d, p) in f.iter() {
            for (w, _) in p.terms() {
                let key = (d, w.clone());
                if !rows.contains(&key) {
                    rows.push(key);
                }
            }
        }
    }
    rows.sort();
    ExactMatrix::from_fn(rows.len(), forms.len(), |i, j| {
        let (d, w) = &rows[i];
        forms[j]
            .component(d.0, d.1)
            .map(|p| p.coeff(w))
            .unwrap_or_else(RatFunc::zero)
    })
}

/// Dimension of the kernel of a form-valued operator restricted to the
/// span of the given (linearly independent) elements.
pub fn kernel_dim_in_span(
    basis: &[NCPoly<RatFunc>],
    op: impl Fn(&NCPoly<RatFunc>) -> Result<FormVector>,
) -> Result<usize> {
    let images: Vec<FormVector> = basis.iter().map(&op).collect::<Result<_>>()?;
    let refs: Vec<&FormVector> = images.iter().collect();
    let m = form_coefficient_matrix(&refs);
    Ok(m.kernel_basis().len())
}
