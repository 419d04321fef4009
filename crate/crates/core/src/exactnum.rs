//! Exact rationals and the group ring `Q[t]/(t^n - 1)`.
//!
//! Roots of unity live in the group ring of `Z/n`; the value of an element at a
//! primitive n-th root is read off by reducing modulo the n-th cyclotomic
//! polynomial (see [`CycloElt::primitive_value`]).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rat = BigRational;
pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("not rational: {0}")]
    NotRational(String),
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rat::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Integer value if `r` is integral and fits in i64.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Element of `Q[t]/(t^n - 1)`; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElt {
    coeffs: Vec<Rat>,
}

impl CycloElt {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "order must be positive");
        CycloElt { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_coeffs(vec![Rat::zero(); n])
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[0] = c;
        e
    }

    /// `c * t^k`, with `k` read modulo n.
    pub fn monomial(n: usize, k: i64, c: Rat) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[k.rem_euclid(n as i64) as usize] = c;
        e
    }

    /// `t^k`, the stand-in for `eps^k`.
    pub fn root(n: usize, k: i64) -> Self {
        Self::monomial(n, k, Rat::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(ArithError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(Self::from_coeffs(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(Self::from_coeffs(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Cyclic convolution.
    pub fn cyc_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % n] += a * b;
                }
            }
        }
        Ok(Self::from_coeffs(out))
    }

    /// `self += c * a * b`, skipping zero coefficients.
    pub fn add_product(&mut self, a: &Self, b: &Self, c: &Rat) -> Result<(), ArithError> {
        self.fma(a, b, c, false)
    }

    /// `self += c * a * conj(b)`.
    pub fn add_conj_product(&mut self, a: &Self, b: &Self, c: &Rat) -> Result<(), ArithError> {
        self.fma(a, b, c, true)
    }

    fn fma(&mut self, a: &Self, b: &Self, c: &Rat, conj: bool) -> Result<(), ArithError> {
        self.check(a)?;
        self.check(b)?;
        let n = self.order();
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let xc = x * c;
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let k = if conj { (i + n - j) % n } else { (i + j) % n };
                self.coeffs[k] += &xc * y;
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `t -> t^{n-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.order();
        let mut out = vec![Rat::zero(); n];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[(n - k) % n] = a.clone();
        }
        Self::from_coeffs(out)
    }

    /// `t -> t^e` (a ring endomorphism of the group ring).
    pub fn power_map(&self, e: i64) -> Self {
        let n = self.order();
        let mut out = vec![Rat::zero(); n];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[(k as i64 * e).rem_euclid(n as i64) as usize] += a;
        }
        Self::from_coeffs(out)
    }

    /// The constant coefficient, provided every other coefficient is zero.
    /// This is the literal group-ring test; see [`Self::primitive_value`].
    pub fn expect_rational(&self) -> Result<Rat, ArithError> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(ArithError::NotRational(self.to_string()))
        }
    }

    /// Remainder modulo the n-th cyclotomic polynomial, i.e. the coordinates of
    /// the value at a primitive n-th root of unity in the power basis.
    pub fn reduce_primitive(&self) -> Vec<Rat> {
        let phi = cyclotomic(self.order());
        let d = phi.len() - 1;
        let mut r = self.coeffs.clone();
        for k in (d..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if c.is_zero() {
                continue;
            }
            // phi is monic: t^k = t^{k-d} * (t^d - phi)
            for (j, p) in phi[..d].iter().enumerate() {
                if !p.is_zero() {
                    r[k - d + j] -= &c * Rat::from_integer(p.clone());
                }
            }
        }
        r.truncate(d);
        r
    }

    /// Value at a primitive root for integer coefficients; `None` if not an
    /// integer or on overflow.
    pub fn primitive_value_int(coeffs: &[i64]) -> Option<i64> {
        let phi = cyclotomic(coeffs.len());
        let d = phi.len() - 1;
        let phi: Vec<(usize, i64)> = phi[..d].iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(j, p)| p.to_i64().map(|p| (j, p))).collect::<Option<_>>()?;
        let mut r = coeffs.to_vec();
        for k in (d..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if c == 0 {
                continue;
            }
            for &(j, p) in &phi {
                r[k - d + j] = r[k - d + j].checked_sub(c.checked_mul(p)?)?;
            }
        }
        r[1..d].iter().all(|&v| v == 0).then_some(r[0])
    }

    /// Value at a primitive root, which must be rational.
    pub fn primitive_value(&self) -> Result<Rat, ArithError> {
        let r = self.reduce_primitive();
        if r[1..].iter().all(Zero::is_zero) {
            Ok(r[0].clone())
        } else {
            Err(ArithError::NotRational(self.to_string()))
        }
    }

    /// Equality of values at a primitive root.
    pub fn value_eq(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.checked_sub(other).map(|d| d.reduce_primitive().iter().all(Zero::is_zero))
                == Ok(true)
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElt[n={}]({})", self.order(), self)
    }
}

// Operator forms panic on order mismatch; the checked_* methods do not.
impl Add for &CycloElt {
    type Output = CycloElt;
    fn add(self, rhs: Self) -> CycloElt {
        self.checked_add(rhs).expect("CycloElt order mismatch")
    }
}

impl Sub for &CycloElt {
    type Output = CycloElt;
    fn sub(self, rhs: Self) -> CycloElt {
        self.checked_sub(rhs).expect("CycloElt order mismatch")
    }
}

impl Mul for &CycloElt {
    type Output = CycloElt;
    fn mul(self, rhs: Self) -> CycloElt {
        self.cyc_mul(rhs).expect("CycloElt order mismatch")
    }
}

impl Neg for &CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        CycloElt::from_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }
}

fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic integer polynomial.
fn poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r = num.to_vec();
    let d = den.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - d];
    for k in (d..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        q[k - d] = c.clone();
        for (j, p) in den.iter().enumerate() {
            r[k - d + j] -= &c * p;
        }
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Coefficients (ascending) of the n-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        den = poly_mul_int(&den, &cyclotomic(d));
    }
    let p = Arc::new(poly_div_monic(&num, &den));
    cache.lock().unwrap().insert(n, p.clone());
    p
}
