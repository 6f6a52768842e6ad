//! Exact scalar arithmetic over the coefficient ring.
//!
//! A scalar is a finite rational combination of integer powers of `q`.
//! Depending on [`QSpec`], `q` is either a formal Laurent parameter over the
//! rationals, or a primitive `n`-th root of unity, in which case scalars live
//! in the cyclotomic field `Q[q]/(Phi_n)`. The quotient by the cyclotomic
//! polynomial (rather than `q^n - 1`) gives a field, so `is_zero` is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// How the parameter `q` is interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QSpec {
    /// `q` is a formal Laurent parameter over the rationals.
    Formal,
    /// `q` is a primitive n-th root of unity, n >= 2.
    RootOfUnity(u32),
}

impl QSpec {
    pub fn root_of_unity(order: u32) -> Result<QSpec> {
        if order < 2 {
            return Err(Error::BadOrder(order));
        }
        Ok(QSpec::RootOfUnity(order))
    }

    /// Order of q as a group element, if finite.
    pub fn order(&self) -> Option<u32> {
        match self {
            QSpec::Formal => None,
            QSpec::RootOfUnity(n) => Some(*n),
        }
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Formal => write!(f, "formal"),
            QSpec::RootOfUnity(n) => write!(f, "root_of_unity({n})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over the rationals (little-endian coefficients).

type Poly = Vec<BigRational>;

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder; the divisor must be nonzero.
fn poly_div_rem(num: &Poly, den: &Poly) -> (Poly, Poly) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = num.clone();
    poly_trim(&mut rem);
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    let lead = den.last().unwrap().clone();
    while rem.len() >= den.len() && !rem.is_empty() {
        let deg = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        quot[deg] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = &rem[deg + i] - &c * dc;
            rem[deg + i] = v;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
fn poly_ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0: Poly = vec![BigRational::one()];
    let mut s1: Poly = Vec::new();
    let mut t0: Poly = Vec::new();
    let mut t1: Poly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_div_rem(&r0, &r1);
        let next_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let next_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = next_s;
        t0 = t1;
        t1 = next_t;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c *= &inv;
        }
    }
    (r0, s0, t0)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        let v = &out[i] - c;
        out[i] = v;
    }
    poly_trim(&mut out);
    out
}

/// The n-th cyclotomic polynomial: (x^n - 1) / prod_{d | n, d < n} Phi_d.
/// Little-endian rational coefficients.
pub fn cyclotomic(n: u32) -> Vec<BigRational> {
    assert!(n >= 1);
    let mut num: Poly = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = poly_div_rem(&num, &cyclotomic(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// Euler totient, via the degree of Phi_n.
pub fn euler_phi(n: u32) -> usize {
    cyclotomic(n).len() - 1
}

// ---------------------------------------------------------------------------

/// An exact element of the coefficient ring: a finite sum of rational
/// multiples of powers of q, canonically reduced per the [`QSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    qspec: QSpec,
    terms: BTreeMap<i64, BigRational>,
}

impl Scalar {
    pub fn zero(qspec: QSpec) -> Scalar {
        Scalar { qspec, terms: BTreeMap::new() }
    }

    pub fn one(qspec: QSpec) -> Scalar {
        Scalar::from_integer(1, qspec)
    }

    pub fn from_integer(v: i64, qspec: QSpec) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(v)), qspec)
    }

    pub fn from_rational(v: BigRational, qspec: QSpec) -> Scalar {
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert(0, v);
        }
        Scalar { qspec, terms }
    }

    /// The monomial q^e, reduced.
    pub fn q_power(e: i64, qspec: QSpec) -> Scalar {
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        let mut s = Scalar { qspec, terms };
        s.reduce();
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(
        iter: I,
        qspec: QSpec,
    ) -> Scalar {
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in iter {
            let entry = terms.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        let mut s = Scalar { qspec, terms };
        s.reduce();
        s
    }

    pub fn qspec(&self) -> QSpec {
        self.qspec
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Canonical reduction: drop zero coefficients; in the root-of-unity case
    /// fold exponents mod n and reduce modulo Phi_n so stored exponents lie
    /// in [0, phi(n)).
    fn reduce(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if let QSpec::RootOfUnity(n) = self.qspec {
            let n64 = n as i64;
            let mut dense = vec![BigRational::zero(); n as usize];
            for (e, c) in std::mem::take(&mut self.terms) {
                let idx = e.rem_euclid(n64) as usize;
                dense[idx] += c;
            }
            let phi = cyclotomic(n);
            let (_, rem) = poly_div_rem(&dense, &phi);
            for (i, c) in rem.into_iter().enumerate() {
                if !c.is_zero() {
                    self.terms.insert(i as i64, c);
                }
            }
        }
    }

    fn check_qspec(&self, other: &Scalar) -> Result<()> {
        if self.qspec != other.qspec {
            return Err(Error::QspecMismatch(self.qspec, other.qspec));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_qspec(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        let mut s = Scalar { qspec: self.qspec, terms };
        s.reduce();
        Ok(s)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_qspec(other)?;
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let entry = terms.entry(ea + eb).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        let mut s = Scalar { qspec: self.qspec, terms };
        s.reduce();
        Ok(s)
    }

    pub fn neg(&self) -> Scalar {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        Scalar { qspec: self.qspec, terms }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg())
    }

    /// Multiplicative inverse. In the cyclotomic case every nonzero scalar is
    /// invertible; in the formal case only single-term scalars c*q^e are.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero".into()));
        }
        match self.qspec {
            QSpec::Formal => {
                if self.terms.len() != 1 {
                    return Err(Error::NotInvertible(format!(
                        "formal Laurent scalar {self} has more than one term"
                    )));
                }
                let (e, c) = self.terms.iter().next().unwrap();
                let mut terms = BTreeMap::new();
                terms.insert(-e, c.recip());
                Ok(Scalar { qspec: self.qspec, terms })
            }
            QSpec::RootOfUnity(n) => {
                let deg = euler_phi(n);
                let mut dense = vec![BigRational::zero(); deg];
                for (e, c) in &self.terms {
                    dense[*e as usize] = c.clone();
                }
                let phi = cyclotomic(n);
                let (g, s, _) = poly_ext_gcd(&dense, &phi);
                if g.len() != 1 {
                    return Err(Error::NotInvertible(format!("{self}")));
                }
                // g is monic constant 1, so s * self == 1 mod Phi_n.
                Ok(Scalar::from_terms(
                    s.into_iter().enumerate().map(|(i, c)| (i as i64, c)),
                    self.qspec,
                ))
            }
        }
    }
}

impl std::ops::Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar qspec mismatch")
    }
}

impl std::ops::Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar qspec mismatch")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mag = c.abs();
            let sign_neg = c.is_negative();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let qpart = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if qpart.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{qpart}")?;
            } else {
                write!(f, "{mag}*{qpart}")?;
            }
        }
        Ok(())
    }
}
