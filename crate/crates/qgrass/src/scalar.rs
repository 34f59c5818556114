//! Exact arithmetic in the field Q(q).
//!
//! `UniPoly` is a dense univariate polynomial over the rationals in the
//! formal variable q; `RatFunc` is a reduced quotient of two of them.  The
//! deformation parameter is never evaluated: everything downstream works
//! symbolically, so an identity that holds here holds for all q except the
//! finitely many poles that were cancelled away.
//!
//! The rest of the crate is generic over [`QScalar`], a field with a
//! distinguished invertible element q.  The two instances are `RatFunc`
//! (the generic q) and `BigRational` with q = 1 (the classical limit, used
//! as an independent cross-check lane).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field operations needed by the generic layers.  `inv` returns `None` on
/// zero so callers can surface division errors instead of panicking deep
/// inside a rewrite.
pub trait Field:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
}

/// A field with a distinguished invertible element q.
pub trait QScalar: Field {
    fn q() -> Self;

    fn q_inv() -> Self {
        Self::q().inv().expect("q is invertible")
    }

    fn q_pow(e: i64) -> Self {
        let base = if e >= 0 { Self::q() } else { Self::q_inv() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Classical limit: the same algebra with q specialized to 1.
impl QScalar for BigRational {
    fn q() -> Self {
        BigRational::one()
    }
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over Q, coefficients in ascending degree
/// order with no trailing zeros.  The zero polynomial is the empty vector,
/// so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(big(v))
    }

    /// Convenience constructor from integer coefficients, ascending.
    pub fn from_coeffs(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| big(c)).collect())
    }

    /// The variable itself.
    pub fn q() -> Self {
        Self::from_coeffs(&[0, 1])
    }

    pub fn monomial(c: BigRational, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); exp + 1];
        coeffs[exp] = c;
        UniPoly { coeffs }
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Positive rational c with self = c * (integer-primitive polynomial).
    /// Zero for the zero polynomial.
    pub fn content(&self) -> BigRational {
        if self.coeffs.is_empty() {
            return BigRational::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num_integer::gcd(num, c.numer().clone());
            den = num_integer::lcm(den, c.denom().clone());
        }
        BigRational::new(num, den)
    }

    /// Polynomial division over Q; panics on zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let dl = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] / &dl;
            for (k, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + k;
                rem[idx] = &rem[idx] - &(&f * dc);
            }
            quo[i - dd] = f;
        }
        (Self::new(quo), Self::new(rem))
    }

    /// Division known to be exact; panics if a remainder appears.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "exact_div left a remainder");
        q
    }

    /// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, other: &UniPoly) -> UniPoly {
        self + &(-other)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, other: UniPoly) -> UniPoly {
        &self + &other
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, other: UniPoly) -> UniPoly {
        &self - &other
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, other: UniPoly) -> UniPoly {
        &self * &other
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

/// Sparse text form, ascending: "c0 + c1*q + c2*q^2" with zero terms
/// skipped.  Rational coefficients with denominator != 1 are parenthesized,
/// "(1/2)*q", so a slash inside a polynomial can never be confused with the
/// slash separating a RatFunc's numerator and denominator.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let coeff_one = a.is_one();
            if e == 0 {
                write_rat(f, &a)?;
            } else {
                if !coeff_one {
                    write_rat(f, &a)?;
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "({}/{})", r.numer(), r.denom())
    }
}

impl FromStr for UniPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<UniPoly> {
        parse_poly(s)
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let body = if s.starts_with('(') && s.ends_with(')') {
        &s[1..s.len() - 1]
    } else {
        s
    };
    let bad = || Error::Parse(format!("bad rational: {:?}", s));
    match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = body.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// One summand of the sparse form: [coeff *] [q [^exp]].
fn parse_term(s: &str) -> Result<(BigRational, usize)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff_part, var_part) = match s.find('q') {
        None => (s, None),
        Some(i) => (&s[..i], Some(&s[i + 1..])),
    };
    let coeff = {
        let c = coeff_part.trim().trim_end_matches('*').trim();
        if c.is_empty() {
            BigRational::one()
        } else if c == "-" {
            -BigRational::one()
        } else {
            parse_rat(c)?
        }
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(e) => {
            let e = e.trim();
            let e = e
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("bad exponent in term {:?}", s)))?;
            e.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in term {:?}", s)))?
        }
    };
    Ok((coeff, exp))
}

fn parse_poly(s: &str) -> Result<UniPoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // Split on top-level + and - (parenthesized coefficients shield theirs).
    let mut terms: Vec<(BigRational, usize)> = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut negate = false;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parens: {:?}", s)))?;
            }
            b'+' | b'-' if depth == 0 && i > start => {
                let (c, e) = parse_term(&s[start..i])?;
                terms.push((if negate { -c } else { c }, e));
                negate = bytes[i] == b'-';
                start = i + 1;
            }
            b'-' if depth == 0 && i == start => {
                // unary minus on the first term
                negate = true;
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parens: {:?}", s)));
    }
    let (c, e) = parse_term(&s[start..])?;
    terms.push((if negate { -c } else { c }, e));

    let top = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); top + 1];
    for (c, e) in terms {
        coeffs[e] = &coeffs[e] + &c;
    }
    Ok(UniPoly::new(coeffs))
}

// ---------------------------------------------------------------------------
// RatFunc
// ---------------------------------------------------------------------------

/// Reduced rational function in q.
///
/// Canonical scaling: gcd(num, den) = 1 and the denominator is monic, which
/// pins the representation completely (so the numerator of q/2 is the
/// polynomial (1/2)*q and the denominator is 1).  Zero is 0/1.  Under these
/// invariants structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Canonicalizing constructor; errors on a zero denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        let l = den.leading().unwrap().clone();
        if !l.is_one() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: UniPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// None exactly at poles (after reduction).
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn checked_div(&self, other: &RatFunc) -> Option<RatFunc> {
        other.inv().map(|i| self.clone() * i)
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, other: RatFunc) -> RatFunc {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, other: RatFunc) -> RatFunc {
        self + (-other)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, other: RatFunc) -> RatFunc {
        // Cross-reduce first; keeps intermediate degrees down.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &other.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &other.den.exact_div(&g1);
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()).expect("nonzero"))
    }

    fn from_i64(v: i64) -> Self {
        RatFunc::from_poly(UniPoly::from_i64(v))
    }
}

impl QScalar for RatFunc {
    fn q() -> Self {
        RatFunc::from_poly(UniPoly::q())
    }

    fn q_pow(e: i64) -> Self {
        let p = UniPoly::monomial(BigRational::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            RatFunc::from_poly(p)
        } else {
            RatFunc {
                num: UniPoly::one(),
                den: p,
            }
        }
    }
}

/// "num" when the denominator is 1, otherwise "(num)/(den)".  The outer
/// parentheses are always present in the quotient case, so the splitting
/// slash is recognizable without precedence rules.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<RatFunc> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            // Candidate "(num)/(den)": locate the matching paren.
            let mut depth = 1usize;
            for (i, ch) in rest.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            let tail = rest[i + 1..].trim_start();
                            if let Some(den_part) = tail.strip_prefix('/') {
                                let den_part = den_part.trim();
                                let inner = den_part
                                    .strip_prefix('(')
                                    .and_then(|d| d.strip_suffix(')'))
                                    .ok_or_else(|| {
                                        Error::Parse(format!("bad denominator: {:?}", s))
                                    })?;
                                let num = parse_poly(&rest[..i])?;
                                let den = parse_poly(inner)?;
                                return RatFunc::new(num, den);
                            }
                            break;
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(RatFunc::from_poly(parse_poly(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs)
    }

    fn rf(cs: &[i64]) -> RatFunc {
        RatFunc::from_poly(qp(cs))
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (q^2 - 1) / (q - 1) = q + 1
        let f = RatFunc::new(qp(&[-1, 0, 1]), qp(&[-1, 1])).unwrap();
        assert_eq!(f, rf(&[1, 1]));
        assert!(f.is_polynomial());
    }

    #[test]
    fn normalize_zero_is_canonical() {
        let f = RatFunc::new(UniPoly::zero(), qp(&[0, 0, 0, 1])).unwrap();
        assert!(f.is_zero());
        assert_eq!(f, RatFunc::zero());
        assert!(f.den().is_one());
    }

    #[test]
    fn normalize_makes_denominator_monic() {
        // (2q) / 4: the monic-denominator scaling gives num = (1/2)q, den = 1.
        let f = RatFunc::new(qp(&[0, 2]), qp(&[4])).unwrap();
        assert!(f.den().is_one());
        assert_eq!(
            f.num(),
            &UniPoly::new(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())])
        );
        // A denominator that stays: (1) / (2q + 2) -> (1/2) / (q + 1).
        let g = RatFunc::new(qp(&[1]), qp(&[2, 2])).unwrap();
        assert!(g.den().is_monic());
        assert_eq!(g.den(), &qp(&[1, 1]));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert!(RatFunc::new(qp(&[1]), UniPoly::zero()).is_err());
    }

    #[test]
    fn poly_arithmetic() {
        let a = qp(&[1, -1]); // 1 - q
        let b = qp(&[1, 1]); // 1 + q
        assert_eq!(&a * &b, qp(&[1, 0, -1]));
        assert_eq!(&a + &b, qp(&[2]));
        assert_eq!(qp(&[0, 0, 1]).divrem(&qp(&[0, 1])), (qp(&[0, 1]), UniPoly::zero()));
        let (d, r) = qp(&[1, 0, 1]).divrem(&qp(&[1, 1]));
        assert_eq!(&(&d * &qp(&[1, 1])) + &r, qp(&[1, 0, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(q^2 - 1, q^2 - 2q + 1) = q - 1
        let g = qp(&[-1, 0, 1]).gcd(&qp(&[1, -2, 1]));
        assert_eq!(g, qp(&[-1, 1]));
        assert_eq!(qp(&[0, 3]).gcd(&UniPoly::zero()), qp(&[0, 1]));
    }

    #[test]
    fn content_strips_to_primitive() {
        let p = UniPoly::new(vec![BigRational::new(2.into(), 3.into()), big_r(4)]);
        let c = p.content();
        let prim = p.scale(&c.recip());
        assert_eq!(prim.content(), BigRational::one());
        assert_eq!(prim.scale(&c), p);
    }

    fn big_r(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn q_pow_laurent() {
        let f = RatFunc::q_pow(-2) * RatFunc::q_pow(5);
        assert_eq!(f, RatFunc::q_pow(3));
        assert_eq!(RatFunc::q_pow(0), RatFunc::one());
        assert_eq!(
            RatFunc::q() - RatFunc::q_inv(),
            RatFunc::new(qp(&[-1, 0, 1]), qp(&[0, 1])).unwrap()
        );
    }

    #[test]
    fn eval_after_reduction() {
        let f = RatFunc::new(qp(&[-1, 0, 1]), qp(&[-1, 1])).unwrap();
        assert_eq!(f.eval(&big_r(1)), Some(big_r(2)));
        let g = RatFunc::new(qp(&[1]), qp(&[-1, 1])).unwrap();
        assert_eq!(g.eval(&big_r(1)), None);
        assert_eq!(g.eval(&big_r(2)), Some(big_r(1)));
    }

    #[test]
    fn display_pinned() {
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(qp(&[1, 1]).to_string(), "1 + q");
        assert_eq!(qp(&[0, -1, 1]).to_string(), "-q + q^2");
        assert_eq!(qp(&[-1, 0, 3]).to_string(), "-1 + 3*q^2");
        let half_q = UniPoly::new(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
        assert_eq!(half_q.to_string(), "(1/2)*q");
        assert_eq!(rf(&[1, 1]).to_string(), "1 + q");
        let g = RatFunc::new(qp(&[1]), qp(&[1, 1])).unwrap();
        assert_eq!(g.to_string(), "(1)/(1 + q)");
        let h = RatFunc::new(qp(&[-1, 0, 1]), qp(&[0, 0, 0, 1])).unwrap();
        assert_eq!(h.to_string(), "(-1 + q^2)/(q^3)");
    }

    #[test]
    fn parse_round_trip_pinned() {
        for s in [
            "0",
            "1 + q",
            "-q + q^2",
            "(1/2)*q",
            "(1)/(1 + q)",
            "(-1 + q^2)/(q^3)",
            "q",
            "-3",
            "(2/3) + q^4",
        ] {
            let f: RatFunc = s.parse().unwrap();
            assert_eq!(f.to_string(), s, "round trip through {:?}", s);
        }
        // Tolerated non-canonical inputs normalize on the way in.
        let f: RatFunc = "(q^2 - 1)/(q - 1)".parse().unwrap();
        assert_eq!(f, rf(&[1, 1]));
        let g: RatFunc = "1/2".parse().unwrap();
        assert_eq!(g.to_string(), "(1/2)");
        assert_eq!(g, "(1/2)".parse().unwrap());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<RatFunc>().is_err());
        assert!("q^".parse::<RatFunc>().is_err());
        assert!("(1".parse::<RatFunc>().is_err());
        assert!("u[1,1]".parse::<RatFunc>().is_err());
    }

    #[test]
    fn classical_lane_q_is_one() {
        assert_eq!(<BigRational as QScalar>::q_pow(7), BigRational::one());
        let nu = <BigRational as QScalar>::q() - <BigRational as QScalar>::q_inv();
        assert!(nu.is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-3i64..=3, 0..5).prop_map(|cs| UniPoly::from_coeffs(&cs))
    }

    fn arb_rf() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            let assoc = (a.clone() * b.clone()) * c.clone() == a.clone() * (b.clone() * c.clone());
            prop_assert!(assoc);
            let distrib = a.clone() * (b.clone() + c.clone())
                == a.clone() * b.clone() + a.clone() * c.clone();
            prop_assert!(distrib);
            prop_assert!((a.clone() + b.clone()) + c.clone() == a.clone() + (b.clone() + c.clone()));
            prop_assert!(a.clone() + b.clone() == b.clone() + a.clone());
            prop_assert!((a.clone() - a.clone()).is_zero());
            if !a.is_zero() {
                prop_assert!(a.clone() * a.inv().unwrap() == RatFunc::one());
            }
        }

        #[test]
        fn display_parse_round_trip(a in arb_rf()) {
            let s = a.to_string();
            let back: RatFunc = s.parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn invariants_hold(a in arb_rf(), b in arb_rf()) {
            for f in [a.clone() + b.clone(), a.clone() * b.clone(), a.clone() - b.clone()] {
                prop_assert!(f.den().is_monic());
                prop_assert!(f.num().gcd(f.den()).is_one() || f.is_zero());
                if f.is_zero() {
                    prop_assert!(f.den().is_one());
                }
            }
        }
    }
}
