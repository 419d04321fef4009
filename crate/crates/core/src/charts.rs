//! Laurent-monomial charts over a fixed set of "atoms" (ambient polynomials
//! such as `x`, `y` or `xy`, `z`, `f1`, `f2`), with pullbacks, strict
//! transforms, axis intersections and gluing checks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{is_integer, to_i64, Rat};
use crate::linalg::Matrix;
use crate::polyring::{upoly, Mono, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("no integer solution expressing {0:?} in chart {1}")]
    NoIntegerSolution(Vec<i64>, String),
    #[error("polynomial not regular on chart {0}: negative exponent {1} on coordinate {2}")]
    NotInChart(String, i64, usize),
    #[error("curve {0} contains axis {1}")]
    CurveContainsAxis(String, usize),
    #[error("chart {0} has {1} atoms; pullback needs at most 3")]
    TooManyAtoms(String, usize),
}

/// The base functions chart coordinates are monomials in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atoms {
    pub names: Vec<String>,
    pub exprs: Vec<Poly>,
    /// Basis (rows) of the lattice of admissible exponent vectors.
    pub lattice: Vec<Vec<i64>>,
    /// Relations `atom^2 = sum c * atoms^e` among the atoms.
    pub rewrites: Vec<Rewrite>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub atom: usize,
    pub rhs: Vec<(Vec<i64>, Rat)>,
}

impl Atoms {
    pub fn new(names: &[&str], exprs: Vec<Poly>, lattice: Vec<Vec<i64>>) -> Arc<Self> {
        assert_eq!(names.len(), exprs.len());
        Arc::new(Atoms { names: names.iter().map(|s| s.to_string()).collect(), exprs, lattice, rewrites: vec![] })
    }

    /// Adds a relation after checking it on the ambient expressions.
    pub fn with_rewrite(mut self: Arc<Self>, rw: Rewrite) -> Arc<Self> {
        let nv = self.exprs[0].nvars();
        let mut rhs = Poly::zero(nv);
        for (e, c) in &rw.rhs {
            let (num, den) = self.fraction(e);
            assert!(den == Poly::one(nv), "relation right-hand sides must be polynomial");
            rhs = &rhs + &num.scale(c);
        }
        assert!(self.exprs[rw.atom].pow(2) == rhs, "relation does not hold");
        Arc::make_mut(&mut self).rewrites.push(rw);
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Numerator and denominator of a Laurent monomial in the atoms.
    pub fn fraction(&self, e: &[i64]) -> (Poly, Poly) {
        let nv = self.exprs[0].nvars();
        let (mut num, mut den) = (Poly::one(nv), Poly::one(nv));
        for (k, &c) in e.iter().enumerate() {
            if c > 0 {
                num = &num * &self.exprs[k].pow(c as u32);
            } else if c < 0 {
                den = &den * &self.exprs[k].pow((-c) as u32);
            }
        }
        (num, den)
    }

    pub fn monomial_name(&self, e: &[i64]) -> String {
        let part = |sign: i64| {
            let fs: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &c)| c * sign > 0)
                .map(|(k, &c)| {
                    let c = c.abs();
                    let nm = &self.names[k];
                    let nm = if nm.chars().filter(|ch| ch.is_alphabetic()).count() > 1 && c > 1 { format!("({nm})") } else { nm.clone() };
                    if c == 1 {
                        nm
                    } else {
                        format!("{nm}^{c}")
                    }
                })
                .collect();
            fs.join("*")
        };
        let (num, den) = (part(1), part(-1));
        match (num.is_empty(), den.is_empty()) {
            (true, true) => "1".into(),
            (false, true) => num,
            (true, false) => format!("1/({den})"),
            (false, false) => format!("{num}/({den})"),
        }
    }
}

/// Smooth affine chart `Spec C[c_1, .., c_r]` with each `c_k` a Laurent
/// monomial in the atoms.
#[derive(Debug, Clone)]
pub struct Chart {
    pub name: String,
    pub atoms: Arc<Atoms>,
    pub coords: Vec<Vec<i64>>,
    /// Divisor label of the axis `{c_k = 0}` when it is exceptional.
    pub axes: Vec<Option<String>>,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.coords == other.coords && self.atoms == other.atoms
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartJson {
    pub name: String,
    pub coords: Vec<String>,
    pub exponents: Vec<Vec<i64>>,
    pub axes: Vec<Option<String>>,
}

impl Chart {
    pub fn new(name: impl Into<String>, atoms: &Arc<Atoms>, coords: Vec<Vec<i64>>) -> Self {
        let axes = vec![None; coords.len()];
        Chart { name: name.into(), atoms: Arc::clone(atoms), coords, axes }
    }

    pub fn with_axis(mut self, k: usize, label: impl Into<String>) -> Self {
        self.axes[k] = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord_names(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.atoms.monomial_name(c)).collect()
    }

    pub fn to_json(&self) -> ChartJson {
        ChartJson {
            name: self.name.clone(),
            coords: self.coord_names(),
            exponents: self.coords.clone(),
            axes: self.axes.clone(),
        }
    }

    fn coord_matrix(&self) -> Matrix<Rat> {
        let k = self.atoms.len();
        Matrix::from_cols(
            &self.coords.iter().map(|c| c.iter().map(|&e| Rat::from_integer(e.into())).collect()).collect::<Vec<_>>(),
            k,
        )
    }

    /// Coordinates of the chart exponents in the atom lattice basis.
    pub fn lattice_coords(&self) -> Option<Vec<Vec<i64>>> {
        let k = self.atoms.len();
        let basis = Matrix::from_cols(
            &self
                .atoms
                .lattice
                .iter()
                .map(|r| r.iter().map(|&e| Rat::from_integer(e.into())).collect())
                .collect::<Vec<_>>(),
            k,
        );
        self.coords
            .iter()
            .map(|c| {
                let v: Vec<Rat> = c.iter().map(|&e| Rat::from_integer(e.into())).collect();
                let s = basis.solve(&v)?;
                s.iter().map(to_i64).collect()
            })
            .collect()
    }

    /// gcd of the maximal minors of the exponent matrix written in the
    /// lattice basis; 1 means the coordinates extend to a lattice basis.
    pub fn lattice_index(&self) -> Option<i64> {
        let rows = self.lattice_coords()?;
        let r = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        let mut g = 0i64;
        for cols in subsets(k, r) {
            let m = Matrix::from_rows(
                rows.iter().map(|row| cols.iter().map(|&c| Rat::from_integer(row[c].into())).collect()).collect(),
            );
            g = g.gcd(&to_i64(&m.det()).expect("integer minor"));
        }
        Some(g)
    }

    pub fn is_unimodular(&self) -> bool {
        self.lattice_index() == Some(1)
    }
}

fn subsets(k: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if k < r {
        return vec![];
    }
    let mut out = subsets(k - 1, r);
    for mut s in subsets(k - 1, r - 1) {
        s.push(k - 1);
        out.push(s);
    }
    out
}

/// Integer vector `alpha` with `prod c_k^alpha_k = prod atoms^m`.
pub fn express_monomial(c: &Chart, m: &[i64]) -> Result<Vec<i64>, ChartError> {
    let v: Vec<Rat> = m.iter().map(|&e| Rat::from_integer(e.into())).collect();
    let err = || ChartError::NoIntegerSolution(m.to_vec(), c.name.clone());
    let sol = c.coord_matrix().solve(&v).ok_or_else(err)?;
    if !sol.iter().all(is_integer) {
        return Err(err());
    }
    Ok(sol.iter().map(|r| to_i64(r).unwrap()).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pullback {
    /// Strict transform as a polynomial in the chart coordinates.
    pub strict: Poly,
    /// Vanishing order along each exceptional axis.
    pub orders: BTreeMap<String, u32>,
    /// Exponent of each coordinate that was factored out.
    pub factored: Vec<u32>,
}

/// Pulls back `f`, a polynomial in the atoms (variable `k` = atom `k`), and
/// factors out the exceptional axes.
pub fn pullback_orders(c: &Chart, f: &Poly) -> Result<Pullback, ChartError> {
    if c.atoms.len() > 3 || c.dim() > 3 {
        return Err(ChartError::TooManyAtoms(c.name.clone(), c.atoms.len()));
    }
    let mut terms = Vec::new();
    for (mono, coef) in f.terms() {
        let m: Vec<i64> = mono.0[..c.atoms.len()].iter().map(|&e| e as i64).collect();
        terms.push((express_monomial(c, &m)?, coef.clone()));
    }
    let r = c.dim();
    let mut factored = vec![0u32; r];
    let mut orders = BTreeMap::new();
    for k in 0..r {
        let low = terms.iter().map(|(a, _)| a[k]).min().unwrap_or(0);
        if let Some(label) = &c.axes[k] {
            if low > 0 {
                factored[k] = low as u32;
            }
            orders.insert(label.clone(), low.max(0) as u32);
        }
    }
    let mut strict = Poly::zero(r);
    for (a, coef) in terms {
        let mut e = [0u32; 3];
        for k in 0..r {
            let v = a[k] - factored[k] as i64;
            if v < 0 {
                return Err(ChartError::NotInChart(c.name.clone(), v, k));
            }
            e[k] = v as u32;
        }
        strict = &strict + &Poly::term(r, e, coef);
    }
    Ok(Pullback { strict, orders, factored })
}

/// Re-expands a pullback to the atoms-level polynomial it came from (as a
/// sum of Laurent monomials in the atoms, returned as exponent -> coeff).
pub fn reexpand(c: &Chart, pb: &Pullback) -> BTreeMap<Vec<i64>, Rat> {
    let mut out: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for (mono, coef) in pb.strict.terms() {
        let mut e = vec![0i64; c.atoms.len()];
        for k in 0..c.dim() {
            let p = mono.0[k] as i64 + pb.factored[k] as i64;
            for (t, ek) in e.iter_mut().enumerate() {
                *ek += p * c.coords[k][t];
            }
        }
        *out.entry(e).or_insert_with(Rat::zero) += coef;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalCurve {
    pub chart: Chart,
    pub label: String,
    pub equation: Poly,
}

impl fmt::Display for LocalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.chart.coord_names();
        let vars: Vec<&str> = ["u", "v", "w"][..self.chart.dim()].to_vec();
        write!(f, "{} on {}: {} = 0 (", self.label, self.chart.name, self.equation.fmt_with(&vars))?;
        for (i, (v, n)) in vars.iter().zip(&names).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v} = {n}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxisPoint {
    Rational(String),
    /// Monic irreducible factor of degree >= 2, ascending coefficients.
    Irreducible(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisIntersection {
    pub points: Vec<(AxisPoint, u32)>,
    pub total: u32,
}

impl AxisIntersection {
    pub fn multiplicity_at(&self, r: &Rat) -> u32 {
        let key = AxisPoint::Rational(r.to_string());
        self.points.iter().filter(|(p, _)| *p == key).map(|(_, m)| *m).sum()
    }
}

/// Intersection of a plane curve with the axis `{coord_axis = 0}` of a
/// two-dimensional chart, counted over the algebraic closure.
pub fn local_intersection(curve: &LocalCurve, axis: usize) -> Result<AxisIntersection, ChartError> {
    assert_eq!(curve.chart.dim(), 2, "axis intersections need a surface chart");
    let restricted = curve.equation.restrict_zero(axis);
    if restricted.is_zero() {
        return Err(ChartError::CurveContainsAxis(curve.label.clone(), axis));
    }
    let other = 1 - axis;
    Ok(root_profile(&restricted.univariate(other)))
}

/// Roots of a univariate polynomial with multiplicities.
pub fn root_profile(p: &[Rat]) -> AxisIntersection {
    let mut points = Vec::new();
    let mut total = 0;
    for (factor, mult) in upoly::squarefree(p) {
        let roots = upoly::rational_roots(&factor);
        let mut rest = factor.clone();
        for r in &roots {
            points.push((AxisPoint::Rational(r.to_string()), mult));
            total += mult;
            rest = upoly::divrem(&rest, &[-r.clone(), Rat::one()]).0;
        }
        // remaining part has no rational roots; split it no further
        if let Some(d) = upoly::degree(&rest).filter(|d| *d > 0) {
            points.push((AxisPoint::Irreducible(rest.iter().map(Rat::to_string).collect()), mult));
            total += mult * d as u32;
        }
    }
    AxisIntersection { points, total }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GlueKind {
    /// Same cone: coordinates permuted.
    Equal,
    /// Adjacent cones: coordinate `inverted` of the source is inverted.
    Facet { inverted: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub from: String,
    pub to: String,
    /// Row `k`: exponents of the source coordinates in target coordinate `k`.
    pub matrix: Vec<Vec<i64>>,
    pub kind: GlueKind,
}

fn classify(m: &[Vec<i64>]) -> Option<GlueKind> {
    let r = m.len();
    let unit = |row: &Vec<i64>| -> Option<usize> {
        let nz: Vec<usize> = (0..r).filter(|&j| row[j] != 0).collect();
        (nz.len() == 1 && row[nz[0]] == 1).then(|| nz[0])
    };
    let mut seen: Vec<usize> = m.iter().filter_map(unit).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() == r && m.iter().all(|row| unit(row).is_some()) {
        return Some(GlueKind::Equal);
    }
    for k in 0..r {
        let inv = m.iter().filter(|row| (0..r).all(|j| row[j] == if j == k { -1 } else { 0 })).count();
        if inv != 1 {
            continue;
        }
        let mut others: Vec<usize> = Vec::new();
        for row in m {
            if (0..r).all(|j| row[j] == if j == k { -1 } else { 0 }) {
                continue;
            }
            let nz: Vec<usize> = (0..r).filter(|&j| j != k && row[j] != 0).collect();
            if nz.len() != 1 || row[nz[0]] != 1 {
                return None;
            }
            others.push(nz[0]);
        }
        others.sort_unstable();
        others.dedup();
        if others.len() == r - 1 {
            return Some(GlueKind::Facet { inverted: k });
        }
    }
    None
}

/// Laurent-monomial transition from chart `a` to chart `b`, if one exists
/// with the shape of equal or facet-adjacent cones and the identity holds as
/// a polynomial identity in the ambient variables.
pub fn transition(a: &Chart, b: &Chart) -> Option<Transition> {
    if a.atoms != b.atoms || a.dim() != b.dim() {
        return None;
    }
    let m: Vec<Vec<i64>> = b.coords.iter().map(|c| express_monomial(a, c).ok()).collect::<Option<_>>()?;
    let det = Matrix::from_rows(m.iter().map(|r| r.iter().map(|&e| Rat::from_integer(e.into())).collect()).collect()).det();
    if det.abs() != Rat::one() {
        return None;
    }
    let kind = classify(&m)?;
    for (k, row) in m.iter().enumerate() {
        if !identity_holds(a, &b.coords[k], row) {
            return None;
        }
    }
    Some(Transition { from: a.name.clone(), to: b.name.clone(), matrix: m, kind })
}

/// Checks `atoms^target == prod_j (coord_j of a)^row_j` by cross-multiplying
/// numerators and denominators.
fn identity_holds(a: &Chart, target: &[i64], row: &[i64]) -> bool {
    let (ln, ld) = a.atoms.fraction(target);
    let nv = ln.nvars();
    let (mut rn, mut rd) = (Poly::one(nv), Poly::one(nv));
    for (j, &p) in row.iter().enumerate() {
        let (cn, cd) = a.atoms.fraction(&a.coords[j]);
        if p > 0 {
            rn = &rn * &cn.pow(p as u32);
            rd = &rd * &cd.pow(p as u32);
        } else if p < 0 {
            rn = &rn * &cd.pow((-p) as u32);
            rd = &rd * &cn.pow((-p) as u32);
        }
    }
    &ln * &rd == &rn * &ld
}

pub fn verify_gluing(a: &Chart, b: &Chart) -> bool {
    transition(a, b).is_some()
}

/// Tag of the compact curve glued along a facet transition: the inverted
/// coordinate, sign-normalized so its last nonzero entry is positive.
pub fn curve_tag(a: &Chart, t: &Transition) -> Option<Vec<i64>> {
    match t.kind {
        GlueKind::Facet { inverted } => Some(normalize_tag(a.coords[inverted].clone())),
        GlueKind::Equal => None,
    }
}

/// Writes the atom monomial `t` as a Laurent polynomial in the coordinates
/// of `c`, using the atom relations when `t` is not itself a coordinate
/// monomial.
pub fn laurent_expand(c: &Chart, t: &[i64]) -> Option<BTreeMap<Vec<i64>, Rat>> {
    fn go(c: &Chart, t: &[i64], depth: u32) -> Option<BTreeMap<Vec<i64>, Rat>> {
        if let Ok(a) = express_monomial(c, t) {
            return Some(BTreeMap::from([(a, Rat::one())]));
        }
        if depth == 0 {
            return None;
        }
        'rw: for rw in &c.atoms.rewrites {
            if t[rw.atom] < 2 {
                continue;
            }
            let mut out: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
            for (e, k) in &rw.rhs {
                let mut t2 = t.to_vec();
                t2[rw.atom] -= 2;
                for (x, y) in t2.iter_mut().zip(e) {
                    *x += y;
                }
                let Some(sub) = go(c, &t2, depth - 1) else { continue 'rw };
                for (a, v) in sub {
                    *out.entry(a).or_insert_with(Rat::zero) += v * k;
                }
            }
            out.retain(|_, v| !v.is_zero());
            return Some(out);
        }
        None
    }
    go(c, t, 6)
}

/// If `b` contains the inverse of coordinate `k` of `a`, every other
/// coordinate of `b` is regular on `a` away from `a_k = 0`, and stays finite
/// along the curve `{a_j = 0, j != k}` as `a_k -> infinity`, then that curve
/// closes up to a compact rational curve; returns `k`.
pub fn compact_curve(a: &Chart, b: &Chart) -> Option<usize> {
    if a.atoms != b.atoms || a.dim() != b.dim() {
        return None;
    }
    let r = a.dim();
    'k: for k in 0..r {
        let inv: Vec<i64> = a.coords[k].iter().map(|e| -e).collect();
        let Some(l) = b.coords.iter().position(|c| *c == inv) else { continue };
        for (l2, coord) in b.coords.iter().enumerate() {
            if l2 == l {
                continue;
            }
            let Some(expr) = laurent_expand(a, coord) else { continue 'k };
            for alpha in expr.keys() {
                if (0..r).any(|j| j != k && alpha[j] < 0) {
                    continue 'k;
                }
                if (0..r).all(|j| j == k || alpha[j] == 0) && alpha[k] > 0 {
                    continue 'k;
                }
            }
        }
        return Some(k);
    }
    None
}

/// Sign-normalized exponent of a curve coordinate (last nonzero entry positive).
pub fn normalize_tag(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().rev().find(|e| **e != 0).is_some_and(|e| *e < 0) {
        v.iter_mut().for_each(|e| *e = -*e);
    }
    v
}

#[derive(Debug, Clone)]
pub struct Atlas {
    pub name: String,
    pub charts: Vec<Chart>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtlasJson {
    pub name: String,
    pub atoms: Vec<String>,
    pub charts: Vec<ChartJson>,
    pub gluings: Vec<Transition>,
}

impl Atlas {
    pub fn chart(&self, name: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.name == name)
    }

    /// All pairs `(i, j)`, `i < j`, with a verified gluing.
    pub fn adjacency(&self) -> Vec<Transition> {
        let mut out = Vec::new();
        for i in 0..self.charts.len() {
            for j in i + 1..self.charts.len() {
                if let Some(t) = transition(&self.charts[i], &self.charts[j]) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.charts.len();
        if n == 0 {
            return true;
        }
        let idx = |s: &str| self.charts.iter().position(|c| c.name == s).unwrap();
        let edges: Vec<(usize, usize)> = self.adjacency().iter().map(|t| (idx(&t.from), idx(&t.to))).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &edges {
                for (p, q) in [(a, b), (b, a)] {
                    if p == v && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self) -> AtlasJson {
        AtlasJson {
            name: self.name.clone(),
            atoms: self.charts.first().map(|c| c.atoms.names.clone()).unwrap_or_default(),
            charts: self.charts.iter().map(Chart::to_json).collect(),
            gluings: self.adjacency(),
        }
    }
}

/// Monomial of `Poly` as an exponent vector of length `k`.
pub fn mono_vec(m: &Mono, k: usize) -> Vec<i64> {
    m.0[..k].iter().map(|&e| e as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn plane() -> Arc<Atoms> {
        Atoms::new(&["x", "y"], vec![Poly::var(2, 0), Poly::var(2, 1)], vec![vec![1, 0], vec![0, 1]])
    }

    #[test]
    fn identity_chart() {
        let c = Chart::new("A", &plane(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(express_monomial(&c, &[3, 5]).unwrap(), vec![3, 5]);
        assert!(verify_gluing(&c, &c));
        assert!(c.is_unimodular());
    }

    #[test]
    fn blowup_chart() {
        // u = x/y, v = y, exceptional v = 0
        let c = Chart::new("B", &plane(), vec![vec![1, -1], vec![0, 1]]).with_axis(1, "E");
        let f = Poly::parse("x^2 - y^3", 2).unwrap();
        let pb = pullback_orders(&c, &f).unwrap();
        assert_eq!(pb.orders["E"], 2);
        assert_eq!(pb.strict.fmt_with(&["u", "v"]), "u^2 - v");
        let curve = LocalCurve { chart: c.clone(), label: "C".into(), equation: pb.strict.clone() };
        let hit = local_intersection(&curve, 1).unwrap();
        assert_eq!(hit.total, 2);
        assert_eq!(hit.multiplicity_at(&int(0)), 2);
        let line = LocalCurve { chart: c, label: "L".into(), equation: Poly::parse("x - 1", 2).unwrap() };
        assert_eq!(local_intersection(&line, 1).unwrap().total, 1);
        let ax = LocalCurve { equation: Poly::parse("y", 2).unwrap(), ..line };
        assert!(matches!(local_intersection(&ax, 1), Err(ChartError::CurveContainsAxis(..))));
    }

    #[test]
    fn irreducible_factor_counts_degree() {
        let p = root_profile(&[int(1), int(1), int(1)]);
        assert_eq!(p.total, 2);
        assert!(matches!(p.points[0].0, AxisPoint::Irreducible(_)));
    }
}
