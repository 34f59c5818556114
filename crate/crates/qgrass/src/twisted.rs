//! Rung operators on the column subalgebras of a quantized Grassmannian.
//!
//! Fix the row block R = {1..r} and a column index j in the complementary
//! block whose mirror j' = n - j + 1 lands inside R.  The pair (j', j) is
//! then a crossing position, and three objects live over it:
//!
//!   * Z_j, the subalgebra generated by the top-justified minors z_I with
//!     I inside {j'..n} (nonempty, not all of {1..n});
//!   * T_j, the two-sided ideal of Z_j generated by the z_J whose index
//!     set meets the intermediate column range {r+1..j-1};
//!   * the rung operator d, the single (j', j) component of the
//!     antiholomorphic differential.
//!
//! d is not a derivation.  Expanding d(ab) through the coproduct and the
//! triangularity of the one-sided matrices gives an exact sum over an
//! intermediate column index,
//!
//! ```text
//! d(ab) = sum over beta of  rho_beta(a) . D_beta(b),
//! ```
//!
//! where rho_beta shifts one a-column from beta to j' (a convolution with
//! the matrix coefficient Q_{beta j'}) and D_beta shifts one b-column from
//! j to beta (a convolution against the one-sided matrices).  Column
//! multisets of Z_j limit beta to {j'..j}; the top term beta = j is
//! d(a) sigma(b) with sigma the scaling automorphism counting columns
//! equal to j or j', and the bottom term beta = j' is rho(a) d(b) with
//! rho = rho_{j'}.  The familiar twisted Leibniz rule
//!
//! ```text
//! d(ab) = d(a) sigma(b) + rho(a) d(b)      mod T_j
//! ```
//!
//! therefore holds exactly when no intermediate beta exists, which happens
//! at the bottom rung j = n - r + 1 (there j' = r), and holds mod T_j
//! there because every strictly intermediate beta then lies in the dead
//! range {r+1..j-1}.  At higher rungs the intermediate terms survive even
//! mod T_j: at (4, 2), rung 4, the pair a = z_{2}, b = z_{4} already has
//! defect (q - q^-1)^2 z_{1} z_{2}, which meets no dead column.
//!
//! Iterating a rung on a power of a single generator collapses to a scalar
//! times a power: d^a((z_J)^a) = C_a (z_K)^a mod T_j with K the index set
//! with the tooth j traded for j'.  `power_constant` solves for C_a
//! exactly, span by span, against the ideal; the scalars grow as quantum
//! factorials, C_a = [a]! q^e C_1^a up to sign, so the square of a rung
//! vanishes on the generators but on nothing larger.

use crate::calculus::{dbar_component, q_convolution};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::minors::{combinations, z_lower, IndexSet};
use crate::ncalg::{coefficient_matrix, ideal_membership_graded, ideal_span_for_content, NCPoly};
use crate::rform::{l_minus, l_plus};
use crate::scalar::{QScalar, RatFunc};
use num_traits::Zero;

/// sum p_(1) f(p_(2)) for a scalar functional f.
fn convolve_entry(
    p: &NCPoly<RatFunc>,
    f: impl Fn(&NCPoly<RatFunc>) -> RatFunc,
) -> NCPoly<RatFunc> {
    let mut out = NCPoly::zero(p.n());
    for (l, r) in p.coproduct().pairs() {
        let c = f(&r);
        if !c.is_zero() {
            out = out + l.scale(&c);
        }
    }
    out
}

/// One rung of the ladder: the data (n, r, j) with j' = n - j + 1 inside
/// the row block and j outside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistedAlgebra {
    n: u8,
    r: u8,
    j: u8,
}

impl TwistedAlgebra {
    pub fn new(n: u8, r: u8, j: u8) -> Result<Self> {
        if n < 2 || r == 0 || r >= n {
            return Err(Error::Param(format!(
                "need 1 <= r < n, got (n, r) = ({}, {})",
                n, r
            )));
        }
        // j must sit outside the row block and its mirror inside it
        if j <= r || j > n || n - j + 1 > r {
            return Err(Error::MissingRung { n, r, j });
        }
        Ok(TwistedAlgebra { n, r, j })
    }

    /// All rung indices available at (n, r), in increasing order.
    pub fn rungs(n: u8, r: u8) -> Vec<u8> {
        if n < 2 || r == 0 || r >= n {
            return Vec::new();
        }
        let lo = (r + 1).max(n - r + 1);
        (lo..=n).collect()
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn rung(&self) -> u8 {
        self.j
    }

    pub fn mirror(&self) -> u8 {
        self.n - self.j + 1
    }

    fn is_admissible(&self, set: &IndexSet) -> bool {
        !set.is_empty()
            && set.len() < self.n as usize
            && set.elements().iter().all(|&x| x >= self.mirror() && x <= self.n)
    }

    /// Index sets of the generators of Z_j: nonempty subsets of
    /// {j'..n}, excluding the full set {1..n}.
    pub fn admissible_sets(&self) -> Vec<IndexSet> {
        let teeth: Vec<u8> = (self.mirror()..=self.n).collect();
        let mut out = Vec::new();
        for k in 1..=teeth.len() {
            for s in combinations(&teeth, k) {
                if s.len() < self.n as usize {
                    out.push(s);
                }
            }
        }
        out
    }

    /// The generator z_I of Z_j at an admissible index set.
    pub fn generator(&self, set: &IndexSet) -> Result<NCPoly<RatFunc>> {
        if !self.is_admissible(set) {
            return Err(Error::BadIndexSet {
                set: set.to_string(),
                n: self.n,
            });
        }
        z_lower(self.n, set)
    }

    /// Index sets generating T_j: the admissible sets meeting {r+1..j-1}.
    pub fn t_ideal_sets(&self) -> Vec<IndexSet> {
        self.admissible_sets()
            .into_iter()
            .filter(|s| {
                s.elements()
                    .iter()
                    .any(|&x| x > self.r && x < self.j)
            })
            .collect()
    }

    pub fn t_ideal_gens(&self) -> Vec<NCPoly<RatFunc>> {
        self.t_ideal_sets()
            .iter()
            .map(|s| z_lower(self.n, s).expect("admissible set"))
            .collect()
    }

    /// The scaling automorphism: each monomial picks up one factor of q per
    /// column index equal to j or j'.  Well defined because the defining
    /// relations preserve column multisets.
    pub fn sigma(&self, a: &NCPoly<RatFunc>) -> NCPoly<RatFunc> {
        let mut out = NCPoly::zero(self.n);
        for (w, c) in a.terms() {
            let count = w
                .iter()
                .filter(|g| g.col == self.j || g.col == self.mirror())
                .count();
            out = out + NCPoly::normal_form(self.n, w, c.clone() * RatFunc::q_pow(count as i64));
        }
        out
    }

    /// The convolution twist rho(a) = sum a_(1) Q_{j'j'}(a_(2)).
    pub fn rho(&self, a: &NCPoly<RatFunc>) -> NCPoly<RatFunc> {
        q_convolution(a, self.mirror(), self.mirror())
    }

    /// The column shift rho_beta(a) = sum a_(1) Q_{beta j'}(a_(2)); moves
    /// one a-column from beta to j'.  beta = j recovers the rung itself
    /// and beta = j' the twist rho.
    pub fn column_shift(&self, beta: u8, a: &NCPoly<RatFunc>) -> NCPoly<RatFunc> {
        q_convolution(a, beta, self.mirror())
    }

    /// The partial rung D_beta(b) = sum b_(1) L+(b_(2))_{j beta}
    /// L-(b_(3))_{j'j'}; moves one b-column from j to beta.  On Z_j,
    /// beta = j recovers sigma and beta = j' the rung itself.
    pub fn partial_rung(&self, beta: u8, b: &NCPoly<RatFunc>) -> NCPoly<RatFunc> {
        let jp = self.mirror() as usize - 1;
        let inner = convolve_entry(b, |x| l_minus(x).get(jp, jp).clone());
        let (jj, bb) = (self.j as usize - 1, beta as usize - 1);
        convolve_entry(&inner, |x| l_plus(x).get(jj, bb).clone())
    }

    /// d(ab) expanded exactly over the intermediate column index.
    pub fn rung_expansion(&self, a: &NCPoly<RatFunc>, b: &NCPoly<RatFunc>) -> NCPoly<RatFunc> {
        let mut out = NCPoly::zero(self.n);
        for beta in 1..=self.j {
            let left = self.column_shift(beta, a);
            if left.is_zero() {
                continue;
            }
            out = out + left.mul(&self.partial_rung(beta, b));
        }
        out
    }

    /// The rung operator: the (j', j) component of the antiholomorphic
    /// differential.
    pub fn d(&self, a: &NCPoly<RatFunc>) -> Result<NCPoly<RatFunc>> {
        dbar_component(self.r, a, self.mirror(), self.j)
    }

    /// Membership in T_j, decided exactly.  Requires f homogeneous with
    /// content-uniform components, which every polynomial in the z_I is.
    pub fn in_t_ideal(&self, f: &NCPoly<RatFunc>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let gens = self.t_ideal_gens();
        if gens.is_empty() {
            return Ok(false);
        }
        let alphabet: Vec<NCPoly<RatFunc>> = self
            .admissible_sets()
            .iter()
            .map(|s| z_lower(self.n, s).expect("admissible set"))
            .collect();
        let deg = f
            .homogeneous_degree()
            .ok_or_else(|| Error::Param("ideal membership needs homogeneous input".into()))?;
        ideal_membership_graded(f, &gens, &alphabet, deg)
    }

    /// d(ab) - d(a) sigma(b) - rho(a) d(b); zero mod T_j on Z_j, and
    /// identically zero when T_j = 0.
    pub fn leibniz_defect(
        &self,
        a: &NCPoly<RatFunc>,
        b: &NCPoly<RatFunc>,
    ) -> Result<NCPoly<RatFunc>> {
        let lhs = self.d(&a.mul(b))?;
        let t1 = self.d(a)?.mul(&self.sigma(b));
        let t2 = self.rho(a).mul(&self.d(b)?);
        Ok(lhs - t1 - t2)
    }

    /// The scalar C_a with d^a((z_J)^a) = C_a (z_K)^a mod T_j, where
    /// K = J with the tooth j replaced by j'.  Needs j in J and j' not in
    /// J.  Solved exactly: the iterate is expressed in the span of
    /// (z_K)^a and the content slice of T_j, and the leading coefficient
    /// is returned.
    pub fn power_constant(&self, set: &IndexSet, a: u32) -> Result<RatFunc> {
        if a == 0 {
            return Err(Error::Param("power_constant needs a >= 1".into()));
        }
        if !self.is_admissible(set) || !set.contains(self.j) || set.contains(self.mirror()) {
            return Err(Error::BadIndexSet {
                set: set.to_string(),
                n: self.n,
            });
        }
        let mut swapped: Vec<u8> = set
            .elements()
            .iter()
            .map(|&x| if x == self.j { self.mirror() } else { x })
            .collect();
        swapped.sort_unstable();
        let target_set = IndexSet::new(swapped)?;
        let x = self.generator(set)?;
        let y = self.generator(&target_set)?;
        let mut f = x.pow(a);
        for _ in 0..a {
            f = self.d(&f)?;
        }
        let lead = y.pow(a);
        let content = lead
            .uniform_content()
            .ok_or_else(|| Error::Dim("power of a minor lost content uniformity".into()))?;
        let alphabet: Vec<NCPoly<RatFunc>> = self
            .admissible_sets()
            .iter()
            .map(|s| z_lower(self.n, s).expect("admissible set"))
            .collect();
        let mut cols: Vec<NCPoly<RatFunc>> = vec![lead];
        cols.extend(ideal_span_for_content(
            self.n,
            &self.t_ideal_gens(),
            &alphabet,
            &content,
        )?);
        let mut polys: Vec<&NCPoly<RatFunc>> = cols.iter().collect();
        polys.push(&f);
        let m = coefficient_matrix(&polys);
        let a_mat = ExactMatrix::from_fn(m.rows(), cols.len(), |i, jj| m.get(i, jj).clone());
        let rhs: Vec<RatFunc> = (0..m.rows()).map(|i| m.get(i, cols.len()).clone()).collect();
        let sol = a_mat
            .solve(&rhs)
            .ok_or_else(|| Error::Dim("iterated rung left the expected span".into()))?;
        Ok(sol[0].clone())
    }
}

/// The symmetric quantum integer (q^k - q^-k) / (q - q^-1).
pub fn q_int(k: u32) -> RatFunc {
    let mut acc = RatFunc::zero();
    let k = k as i64;
    let mut e = -(k - 1);
    while e <= k - 1 {
        acc = acc + RatFunc::q_pow(e);
        e += 2;
    }
    acc
}

/// The symmetric quantum factorial [a]! = [1][2]..[a].
pub fn q_factorial(a: u32) -> RatFunc {
    let mut acc = RatFunc::q_pow(0);
    for k in 1..=a {
        acc = acc * q_int(k);
    }
    acc
}

/// True when x = ±q^e for some integer e with |e| <= 64.
pub fn is_signed_q_power(x: &RatFunc) -> bool {
    if x.is_zero() {
        return false;
    }
    for e in -64i64..=64 {
        let p = RatFunc::q_pow(e);
        if *x == p || *x == -p {
            return true;
        }
    }
    false
}

/// One ladder step: the (j', j) component of the antiholomorphic
/// differential on representatives.  When the mirror index j' lands
/// outside the holomorphic block the component is absent and the step is
/// the zero map.
pub fn rung_step(r: u8, g: &NCPoly<RatFunc>, j: u8) -> Result<NCPoly<RatFunc>> {
    let n = g.n();
    if j <= r || j > n {
        return Err(Error::Param(format!(
            "rung {} out of range for ({}, {})",
            j, n, r
        )));
    }
    let jp = n - j + 1;
    if jp > r {
        return Ok(NCPoly::zero(n));
    }
    crate::calculus::dbar_component(r, g, jp, j)
}

fn witness_search(
    r: u8,
    g: &NCPoly<RatFunc>,
    pos: usize,
    remaining: u32,
    tuple: &mut Vec<u32>,
) -> Result<Option<Vec<u32>>> {
    let n = g.n();
    let arity = (n - r) as usize;
    if pos == arity {
        if remaining == 0 && !g.counit().is_zero() {
            return Ok(Some(tuple.clone()));
        }
        return Ok(None);
    }
    let j = r + 1 + pos as u8;
    let mut h = g.clone();
    for a in 0..=remaining {
        if a > 0 {
            h = rung_step(r, &h, j)?;
            if h.is_zero() {
                break;
            }
        }
        tuple.push(a);
        let found = witness_search(r, &h, pos + 1, remaining - a, tuple)?;
        tuple.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Searches exponent tuples (a_{r+1}, ..., a_n) of bounded total for one
/// whose rung steps, applied in increasing rung order, drive p to a
/// nonzero counit.  Tuples are tried by total and then lexicographically,
/// so the first hit has minimal total.  Constants are rejected: the
/// search certifies nonvanishing for elements the counit cannot see
/// directly.
pub fn ladder_witness(r: u8, p: &NCPoly<RatFunc>, budget: u32) -> Result<Option<Vec<u32>>> {
    let n = p.n();
    if r == 0 || r >= n {
        return Err(Error::Param(format!("need 1 <= r < n, got ({}, {})", n, r)));
    }
    if p.is_zero() || !p.counit().is_zero() {
        return Err(Error::Param(
            "witness search needs a nonzero element with vanishing counit".into(),
        ));
    }
    for total in 1..=budget {
        let mut tuple = Vec::new();
        if let Some(found) = witness_search(r, p, 0, total, &mut tuple)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Replays a witness tuple and reports, for each rung, whether the value
/// after that rung's steps sits outside the rung's vanishing ideal, so a
/// reader can follow where the coset survives.  Rungs whose mirror index
/// escapes the holomorphic block carry no ideal and report None.
pub fn ladder_witness_audit(
    r: u8,
    p: &NCPoly<RatFunc>,
    tuple: &[u32],
) -> Result<Vec<Option<bool>>> {
    let n = p.n();
    if tuple.len() != (n - r) as usize {
        return Err(Error::Param(format!(
            "tuple length {} does not match the {} rungs of ({}, {})",
            tuple.len(),
            n - r,
            n,
            r
        )));
    }
    let mut g = p.clone();
    let mut out = Vec::new();
    for (pos, &a) in tuple.iter().enumerate() {
        let j = r + 1 + pos as u8;
        for _ in 0..a {
            g = rung_step(r, &g, j)?;
        }
        if n - j + 1 <= r {
            let alg = TwistedAlgebra::new(n, r, j)?;
            out.push(Some(!alg.in_t_ideal(&g)?));
        } else {
            out.push(None);
        }
    }
    Ok(out)
}
