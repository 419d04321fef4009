//! Polynomials over Q in x, y (and z), grlex Groebner bases, normal forms and
//! standard-monomial bases.
//!
//! The order is graded lexicographic with `z > x > y`; for two variables this
//! is the usual grlex with `x > y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{parse_rat, Rat};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("quotient is infinite dimensional (no pure power of {0} among leading terms)")]
    InfiniteDimensional(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

/// Exponent vector over (x, y, z).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        Mono([other.0[0] - self.0[0], other.0[1] - self.0[1], other.0[2] - self.0[2]])
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono([0, 1, 2].map(|i| self.0[i].max(other.0[i])))
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono([0, 1, 2].map(|i| self.0[i] + other.0[i]))
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        (0..3).all(|i| self.0[i] == 0 || other.0[i] == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |m: &Mono| (m.degree(), m.0[2], m.0[0], m.0[1]);
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    /// # Panics
    /// If `nvars` is not 1, 2 or 3.
    pub fn zero(nvars: usize) -> Self {
        assert!((1..=3).contains(&nvars), "1 to 3 variables supported");
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::term(nvars, [0, 0, 0], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::term(nvars, e, Rat::one())
    }

    /// # Panics
    /// If an exponent refers to a variable beyond `nvars`.
    pub fn term(nvars: usize, exps: [u32; 3], c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        assert!(exps[nvars..].iter().all(|&e| e == 0), "exponent beyond nvars");
        if !c.is_zero() {
            p.terms.insert(Mono(exps), c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.last_key_value()
    }

    pub fn leading_mono(&self) -> Option<Mono> {
        self.leading().map(|(m, _)| *m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Lowest total degree of a term (order of vanishing at the origin).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).min()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, a)| (*m, a * c)))
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(k, a)| (k.mul(m), a * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&(Rat::one() / c)),
            None => self.clone(),
        }
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = [0; 3];
                for i in 0..3 {
                    e[perm[i]] += m.0[i];
                }
                (Mono(e), c.clone())
            }),
        )
    }

    pub fn swap_xy(&self) -> Self {
        self.permute([1, 0, 2])
    }

    /// Substitutes `x_i -> x_i + shift[i]`.
    pub fn translate(&self, shift: &[Rat]) -> Self {
        let vars: Vec<Poly> = (0..self.nvars)
            .map(|i| &Poly::var(self.nvars, i) + &Poly::constant(self.nvars, shift[i].clone()))
            .collect();
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.nvars, c.clone());
            for (i, v) in vars.iter().enumerate() {
                t = &t * &v.pow(m.0[i]);
            }
            out = &out + &t;
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate().take(self.nvars) {
                for _ in 0..m.0[i] {
                    t *= p;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_var = 0`.
    pub fn restrict_zero(&self, var: usize) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().filter(|(m, _)| m.0[var] == 0).map(|(m, c)| (*m, c.clone())))
    }

    /// Coefficients (ascending) of a polynomial in the single variable `var`.
    ///
    /// # Panics
    /// If another variable occurs.
    pub fn univariate(&self, var: usize) -> Vec<Rat> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            assert!((0..3).all(|i| i == var || m.0[i] == 0), "not univariate in variable {var}");
            let d = m.0[var] as usize;
            if out.len() <= d {
                out.resize(d + 1, Rat::zero());
            }
            out[d] = c.clone();
        }
        out
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(a.to_string());
            }
            for (v, &e) in m.0.iter().enumerate().take(self.nvars) {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{e}", names[v])),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Parses the `c*x^a*y^b + ...` text format over the given variable names.
    pub fn parse_with(text: &str, names: &[&str]) -> Result<Self, PolyError> {
        let nvars = names.len();
        let err = || PolyError::Parse(text.to_string());
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err());
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut p = Self::zero(nvars);
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err());
            }
            let mut c = Rat::one();
            let mut e = [0u32; 3];
            for f in body.split('*') {
                let (base, exp) = match f.split_once('^') {
                    Some((b, x)) => (b, x.parse::<u32>().map_err(|_| err())?),
                    None => (f, 1),
                };
                if let Some(v) = names.iter().position(|n| *n == base) {
                    e[v] += exp;
                } else {
                    let r = parse_rat(base).ok_or_else(err)?;
                    for _ in 0..exp {
                        c *= &r;
                    }
                }
            }
            if neg {
                c = -c;
            }
            p.add_term(Mono(e), c);
        }
        Ok(p)
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Self, PolyError> {
        Self::parse_with(text, &VAR_NAMES[..nvars])
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&VAR_NAMES))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p.nvars = p.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p.nvars = p.nvars.max(rhs.nvars);
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c);
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars.max(rhs.nvars));
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                p.add_term(a.mul(b), c * d);
            }
        }
        p
    }
}

/// Remainder of `f` on division by `basis` (full reduction).
pub fn reduce(f: &Poly, basis: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut r = Poly::zero(f.nvars);
    while let Some((m, c)) = p.leading().map(|(m, c)| (*m, c.clone())) {
        match basis.iter().find(|g| g.leading_mono().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = lm.quotient_of(&m);
                p = &p - &g.mul_term(&q, &(&c / lc));
            }
            None => {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
    }
    r
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    &f.mul_term(&fm.quotient_of(&l), &(Rat::one() / fc)) - &g.mul_term(&gm.quotient_of(&l), &(Rat::one() / gc))
}

fn groebner(gens: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(Poly::monic).collect();
    if g.is_empty() {
        return g;
    }
    let mut pairs: Vec<(usize, usize)> =
        (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        if g[i].leading_mono().unwrap().coprime(&g[j].leading_mono().unwrap()) {
            continue;
        }
        let r = reduce(&s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimal basis
    let mut min: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lm = p.leading_mono().unwrap();
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.leading_mono().unwrap();
            j != i && lq.divides(&lm) && (lq != lm || j < i)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    // interreduce
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<Poly> = min.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lt = Poly::from_terms(min[i].nvars, [(min[i].leading_mono().unwrap(), Rat::one())]);
        let tail = &min[i] - &lt;
        out.push(&lt + &reduce(&tail, &others));
    }
    out.sort_by_key(|p| p.leading_mono().unwrap());
    out
}

/// Ideal with a lazily computed reduced Groebner basis.
#[derive(Debug)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Poly>,
    basis: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { nvars: self.nvars, gens: self.gens.clone(), basis }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.basis() == other.basis()
    }
}

impl Ideal {
    /// # Panics
    /// If `gens` is empty.
    pub fn new(gens: Vec<Poly>) -> Self {
        assert!(!gens.is_empty(), "an ideal needs generators");
        let nvars = gens.iter().map(Poly::nvars).max().unwrap();
        Ideal { nvars, gens, basis: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Groebner basis, sorted by leading monomial.
    pub fn basis(&self) -> &[Poly] {
        self.basis.get_or_init(|| groebner(&self.gens))
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        reduce(f, self.basis())
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn leading_monos(&self) -> Vec<Mono> {
        self.basis().iter().map(|p| p.leading_mono().unwrap()).collect()
    }

    pub fn staircase(&self) -> Result<Staircase, PolyError> {
        let lms = self.leading_monos();
        let mut bounds = [1u32; 3];
        for (v, bound) in bounds.iter_mut().enumerate().take(self.nvars) {
            *bound = lms
                .iter()
                .filter(|m| (0..3).all(|i| i == v || m.0[i] == 0))
                .map(|m| m.0[v])
                .min()
                .ok_or_else(|| PolyError::InfiniteDimensional(VAR_NAMES[v].into()))?;
        }
        let mut basis = Vec::new();
        for a in 0..bounds[0] {
            for b in 0..bounds[1] {
                for c in 0..bounds[2] {
                    let m = Mono([a, b, c]);
                    if !lms.iter().any(|l| l.divides(&m)) {
                        basis.push(m);
                    }
                }
            }
        }
        basis.sort();
        Ok(Staircase { nvars: self.nvars, basis })
    }
}

pub fn buchberger(gens: &[Poly]) -> Ideal {
    let i = Ideal::new(gens.to_vec());
    i.basis();
    i
}

pub fn normal_form(f: &Poly, i: &Ideal) -> Poly {
    i.normal_form(f)
}

pub fn staircase(i: &Ideal) -> Result<Staircase, PolyError> {
    i.staircase()
}

/// Standard monomials, ascending in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub nvars: usize,
    pub basis: Vec<Mono>,
}

impl Staircase {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }
}

/// `Q[x,y,...]/I` with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ideal: Ideal,
    pub staircase: Staircase,
}

impl Quotient {
    pub fn new(ideal: Ideal) -> Result<Self, PolyError> {
        let staircase = ideal.staircase()?;
        Ok(Quotient { ideal, staircase })
    }

    pub fn dim(&self) -> usize {
        self.staircase.dim()
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn basis_poly(&self, k: usize) -> Poly {
        Poly::from_terms(self.nvars(), [(self.staircase.basis[k], Rat::one())])
    }

    pub fn coords(&self, f: &Poly) -> Vec<Rat> {
        let r = self.ideal.normal_form(f);
        let mut v = vec![Rat::zero(); self.dim()];
        for (m, c) in r.terms() {
            let k = self.staircase.index_of(m).expect("normal form lies on the staircase");
            v[k] = c.clone();
        }
        v
    }

    /// Matrix of multiplication by `g` (columns are images of basis vectors).
    pub fn mul_matrix(&self, g: &Poly) -> Matrix<Rat> {
        let cols: Vec<Vec<Rat>> = (0..self.dim()).map(|k| self.coords(&(g * &self.basis_poly(k)))).collect();
        Matrix::from_cols(&cols, self.dim())
    }
}

/// Univariate helpers on ascending coefficient vectors.
pub mod upoly {
    use super::*;

    pub fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[Rat]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn derivative(p: &[Rat]) -> Vec<Rat> {
        trim(p.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from_integer((k as i64).into())).collect())
    }

    /// Quotient and remainder.
    pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let b = trim(b.to_vec());
        let db = degree(&b).expect("division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![Rat::zero(); r.len() - db];
        while let Some(dr) = degree(&r).filter(|d| *d >= db) {
            let c = &r[dr] / &b[db];
            for (j, bj) in b.iter().enumerate() {
                r[dr - db + j] -= &c * bj;
            }
            q[dr - db] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn monic(p: &[Rat]) -> Vec<Rat> {
        let p = trim(p.to_vec());
        match p.last() {
            Some(l) => {
                let l = l.clone();
                p.iter().map(|c| c / &l).collect()
            }
            None => p,
        }
    }

    pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b);
            a = b;
            b = r;
        }
        monic(&a)
    }

    /// Yun's square-free decomposition: `p = c * prod f_k^k`, returned as
    /// monic `(f_k, k)` with nonconstant `f_k`.
    pub fn squarefree(p: &[Rat]) -> Vec<(Vec<Rat>, u32)> {
        let p = trim(p.to_vec());
        if degree(&p).unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let dp = derivative(&p);
        let mut a = gcd(&p, &dp);
        let mut b = divrem(&p, &a).0;
        let mut c = divrem(&dp, &a).0;
        let mut d: Vec<Rat> = {
            let db = derivative(&b);
            let n = c.len().max(db.len());
            trim((0..n)
                .map(|i| c.get(i).cloned().unwrap_or_else(Rat::zero) - db.get(i).cloned().unwrap_or_else(Rat::zero))
                .collect())
        };
        let mut k = 1;
        while degree(&b).unwrap_or(0) > 0 {
            a = gcd(&b, &d);
            if degree(&a).unwrap_or(0) > 0 {
                out.push((monic(&a), k));
            }
            b = divrem(&b, &a).0;
            c = divrem(&d, &a).0;
            let db = derivative(&b);
            let n = c.len().max(db.len());
            d = trim((0..n)
                .map(|i| c.get(i).cloned().unwrap_or_else(Rat::zero) - db.get(i).cloned().unwrap_or_else(Rat::zero))
                .collect());
            k += 1;
        }
        out
    }

    fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
        use num_bigint::BigInt;
        let n = n.abs();
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                small.push(d.clone());
                let e = &n / &d;
                if e != d {
                    large.push(e);
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        small
    }

    /// Rational roots of a nonzero polynomial (without multiplicity), ascending.
    pub fn rational_roots(p: &[Rat]) -> Vec<Rat> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let p = trim(p.to_vec());
        let Some(_) = degree(&p) else { return Vec::new() };
        let mut roots = Vec::new();
        let low = p.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(Rat::zero());
        }
        let q: Vec<Rat> = p[low..].to_vec();
        if q.len() > 1 {
            let l = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = q.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
            for a in divisors(&ints[0]) {
                for b in divisors(ints.last().unwrap()) {
                    for s in [1, -1] {
                        let r = Rat::new(&a * s, b.clone());
                        let v = q.iter().rev().fold(Rat::zero(), |acc, c| acc * &r + c);
                        if v.is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(s: &str) -> Poly {
        Poly::parse(s, 2).unwrap()
    }

    #[test]
    fn order_and_printing() {
        let f = p("y^3 - x^2 + 2*x*y + 1/2");
        assert_eq!(f.to_string(), "y^3 - x^2 + 2*x*y + 1/2");
        assert_eq!(f.leading_mono(), Some(Mono([0, 3, 0])));
        assert_eq!(p("x*y + x^2 + y^2").to_string(), "x^2 + x*y + y^2");
        let g = Poly::parse("z*x + x^2", 3).unwrap();
        assert_eq!(g.to_string(), "x*z + x^2");
        assert_eq!(p("-3/2*x^2*y"), Poly::term(2, [2, 1, 0], rat(-3, 2)));
        assert!(Poly::parse("x^", 2).is_err());
        assert!(Poly::parse("w + 1", 2).is_err());
    }

    #[test]
    fn roundtrip_text() {
        for s in ["x^5 + y^5", "-x + 3/4*y^2 - 7", "x*y", "0"] {
            if s == "0" {
                continue;
            }
            let f = p(s);
            assert_eq!(p(&f.to_string()), f);
        }
    }

    #[test]
    fn small_bases() {
        let i = buchberger(&[p("x"), p("y")]);
        assert_eq!(i.basis(), &[p("y"), p("x")]);
        let j = buchberger(&[p("x - y"), p("y")]);
        assert_eq!(i, j);
        assert!(normal_form(&p("x^2"), &i).is_zero());
        let k = buchberger(&[p("x^2")]);
        assert_eq!(normal_form(&Poly::one(2), &k), Poly::one(2));
        assert!(matches!(staircase(&k), Err(PolyError::InfiniteDimensional(_))));
        assert_eq!(staircase(&i).unwrap().dim(), 1);
    }

    #[test]
    fn univariate_tools() {
        // (u + 1)^2 (u - 1/2) (u^2 + 1)
        let f = [int(-1), int(0), rat(-1, 2)];
        let g = upoly::trim(vec![int(1), int(2), int(1)]);
        let h = vec![rat(-1, 2), int(1)];
        let k = vec![int(1), int(0), int(1)];
        let mul = |a: &[Rat], b: &[Rat]| {
            let mut o = vec![Rat::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    o[i + j] += x * y;
                }
            }
            o
        };
        let prod = mul(&mul(&g, &h), &k);
        let sf = upoly::squarefree(&prod);
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[1], (vec![int(1), int(1)], 2));
        assert_eq!(upoly::rational_roots(&prod), vec![int(-1), rat(1, 2)]);
        assert!(upoly::rational_roots(&f).is_empty());
    }
}
