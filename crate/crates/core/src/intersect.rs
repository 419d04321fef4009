//! Intersection data of exceptional curves: the A_(n-1) chain on X_1, its
//! fold to Y_1, Castelnuovo contractions, point blow-ups, discrepancies and
//! maximality.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{int, rat, Rat};
use crate::hilb::{boundary_curves, strict_transform, x1_atlas};
use crate::linalg::Matrix;
use crate::polyring::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectError {
    #[error("curve {0} is not contractible: self-intersection {1}, K-degree {2}")]
    NotContractible(String, String, String),
    #[error("no curve named {0}")]
    NoSuchCurve(String),
    #[error("expected exactly one (-1)-curve, found {0}")]
    AmbiguousContraction(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    pub labels: Vec<String>,
    pub q: Vec<Vec<Rat>>,
    pub k_dot: Vec<Rat>,
    pub boundary_dot: Vec<BTreeMap<String, Rat>>,
    pub discrepancy: Vec<Rat>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveConfigJson {
    pub labels: Vec<String>,
    pub q: Vec<Vec<String>>,
    pub k_dot: Vec<String>,
    pub boundary_dot: Vec<BTreeMap<String, String>>,
    pub discrepancy: Vec<String>,
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

impl CurveConfig {
    pub fn empty() -> Self {
        CurveConfig { labels: vec![], q: vec![], k_dot: vec![], boundary_dot: vec![], discrepancy: vec![] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Result<usize, IntersectError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| IntersectError::NoSuchCurve(label.into()))
    }

    pub fn matrix(&self) -> Matrix<Rat> {
        Matrix::from_rows(self.q.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.q[i][j] == self.q[j][i]))
    }

    pub fn is_negative_definite(&self) -> bool {
        self.is_empty() || self.matrix().is_negative_definite()
    }

    /// `K.E + E^2 = -2` for every curve.
    pub fn adjunction_holds(&self) -> bool {
        (0..self.len()).all(|i| &self.k_dot[i] + &self.q[i][i] == int(-2))
    }

    /// Curves with `E^2 = -1` and `K.E = -1`.
    pub fn minus_one_curves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.q[i][i] == int(-1) && self.k_dot[i] == int(-1)).collect()
    }

    pub fn to_json(&self) -> CurveConfigJson {
        CurveConfigJson {
            labels: self.labels.clone(),
            q: self.q.iter().map(|r| strs(r)).collect(),
            k_dot: strs(&self.k_dot),
            boundary_dot: self
                .boundary_dot
                .iter()
                .map(|m| m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect())
                .collect(),
            discrepancy: strs(&self.discrepancy),
        }
    }

    /// Dual graph; vertices carry `(discrepancy, self-intersection)`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for i in 0..self.len() {
            let _ = writeln!(s, "  \"{}\" [label=\"{} ({}, {})\"];", self.labels[i], self.labels[i], self.discrepancy[i], self.q[i][i]);
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !self.q[i][j].is_zero() {
                    let _ = writeln!(s, "  \"{}\" -- \"{}\" [label=\"{}\"];", self.labels[i], self.labels[j], self.q[i][j]);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Reduced boundary `B = sum coeff_j B_j` plus its singular points, each a
/// list of `(component, multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    pub components: Vec<(String, Rat)>,
    pub singular_points: Vec<Vec<(String, u32)>>,
}

impl BoundaryData {
    pub fn coeff(&self, label: &str) -> Rat {
        self.components.iter().find(|(l, _)| l == label).map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Boundary of the quotient with mirror lines of weight 1/2; on the
    /// singular quotient all components pass through the origin.
    pub fn quotient(n: usize) -> Self {
        let half = rat(1, 2);
        if n.is_multiple_of(2) {
            BoundaryData {
                components: vec![("B1".into(), half.clone()), ("B2".into(), half)],
                singular_points: vec![vec![("B1".into(), 1), ("B2".into(), 1)]],
            }
        } else {
            BoundaryData { components: vec![("B3".into(), half)], singular_points: vec![vec![("B3".into(), 2)]] }
        }
    }

    /// Same components, smooth and disjoint on a resolution.
    pub fn resolved(n: usize) -> Self {
        BoundaryData { singular_points: vec![], ..Self::quotient(n) }
    }
}

pub fn an_chain(k: usize) -> CurveConfig {
    let mut q = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        q[i][i] = int(-2);
        if i + 1 < k {
            q[i][i + 1] = int(1);
            q[i + 1][i] = int(1);
        }
    }
    CurveConfig {
        labels: (1..=k).map(|i| format!("E~{i}")).collect(),
        q,
        k_dot: vec![Rat::zero(); k],
        boundary_dot: vec![BTreeMap::new(); k],
        discrepancy: vec![Rat::zero(); k],
    }
}

/// `p^* E_i` in the basis `E~_1 .. E~_(n-1)`.
pub fn pullback_vector(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n - 1];
    v[i - 1] += int(1);
    if n - i != i {
        v[n - i - 1] += int(1);
    }
    v
}

/// Intersection of the strict transform of `f` with `E~_i`, counting the
/// origin of `U_(i+1)` once.
pub fn upstairs_pairing(n: usize, f: &Poly, i: usize) -> u32 {
    let atlas = x1_atlas(n);
    let on = |chart: usize| strict_transform(n, atlas.chart(chart), "f", f).expect("invariant curve");
    let here = on(i);
    let mut total = here
        .meets
        .iter()
        .filter(|m| m.axis == format!("E~{i}"))
        .map(|m| m.hit.total)
        .sum::<u32>();
    let next = on(i + 1);
    total += next
        .meets
        .iter()
        .filter(|m| m.axis == format!("E~{i}"))
        .map(|m| m.hit.multiplicity_at(&Rat::zero()))
        .sum::<u32>();
    total
}

/// `D . E_i` on `Y_1` for the divisor whose pullback upstairs is `f = 0`:
/// half of `f . p^* E_i`.
pub fn downstairs_pairing(n: usize, f: &Poly, i: usize) -> Rat {
    let v = pullback_vector(n, i);
    let mut s = Rat::zero();
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            s += c * int(upstairs_pairing(n, f, k + 1) as i64);
        }
    }
    s * rat(1, 2)
}

/// `supp(B_j) . E_i` on `Y_1` from the boundary strict transforms.
pub fn boundary_pairings(n: usize) -> Vec<BTreeMap<String, Rat>> {
    let m = n / 2;
    let curves = boundary_curves(n);
    (1..=m)
        .map(|i| {
            curves
                .iter()
                .filter_map(|(l, f)| {
                    let d = downstairs_pairing(n, f, i);
                    (!d.is_zero()).then(|| (l.trim_end_matches('^').to_string(), d))
                })
                .collect()
        })
        .collect()
}

/// Folds the chain on `X_1` to `Y_1` via `E_a.E_b = (1/2) p^*E_a . p^*E_b`;
/// `K.E_i = -sum coeff_j B_j.E_i` from `K_X1 = p^*(K_Y1 + B/2)`.
pub fn z2_fold(c: &CurveConfig, n: usize) -> CurveConfig {
    assert_eq!(c.len(), n - 1, "fold expects the A_(n-1) chain");
    let m = n / 2;
    let qm = c.matrix();
    let vs: Vec<Vec<Rat>> = (1..=m).map(|i| pullback_vector(n, i)).collect();
    let half = rat(1, 2);
    let q: Vec<Vec<Rat>> = vs
        .iter()
        .map(|a| {
            let qa = qm.mul_vec(a);
            vs.iter().map(|b| qa.iter().zip(b).map(|(x, y)| x * y).sum::<Rat>() * &half).collect()
        })
        .collect();
    let boundary_dot = boundary_pairings(n);
    let bd = BoundaryData::resolved(n);
    let k_dot = boundary_dot
        .iter()
        .map(|m| -m.iter().map(|(l, v)| bd.coeff(l) * v).sum::<Rat>())
        .collect();
    CurveConfig {
        labels: (1..=m).map(|i| format!("E{i}")).collect(),
        q,
        k_dot,
        boundary_dot,
        discrepancy: vec![Rat::zero(); m],
    }
}

pub fn fold(n: usize) -> CurveConfig {
    z2_fold(&an_chain(n - 1), n)
}

/// Castelnuovo contraction of a `(-1)`-curve `C`: `X'_a = X_a + Q_aC X_C`
/// for the intersection matrix, `K` and boundary pairings.
pub fn blow_down(c: &CurveConfig, label: &str) -> Result<CurveConfig, IntersectError> {
    let ci = c.index(label)?;
    if c.q[ci][ci] != int(-1) || c.k_dot[ci] != int(-1) {
        return Err(IntersectError::NotContractible(label.into(), c.q[ci][ci].to_string(), c.k_dot[ci].to_string()));
    }
    let keep: Vec<usize> = (0..c.len()).filter(|&i| i != ci).collect();
    let q = keep
        .iter()
        .map(|&a| keep.iter().map(|&b| &c.q[a][b] + &c.q[a][ci] * &c.q[b][ci]).collect())
        .collect();
    let k_dot = keep.iter().map(|&a| &c.k_dot[a] + &c.q[a][ci] * &c.k_dot[ci]).collect();
    let boundary_dot = keep
        .iter()
        .map(|&a| {
            let mut m = c.boundary_dot[a].clone();
            for (l, v) in &c.boundary_dot[ci] {
                *m.entry(l.clone()).or_insert_with(Rat::zero) += &c.q[a][ci] * v;
            }
            m.retain(|_, v| !v.is_zero());
            m
        })
        .collect();
    Ok(CurveConfig {
        labels: keep.iter().map(|&a| c.labels[a].clone()).collect(),
        q,
        k_dot,
        boundary_dot,
        discrepancy: keep.iter().map(|&a| c.discrepancy[a].clone()).collect(),
    })
}

/// Contracts the unique `(-1)`-curve until nothing is left; the result
/// starts with the fold and ends with the empty configuration.
pub fn domination_chain(n: usize) -> Result<Vec<CurveConfig>, IntersectError> {
    let mut out = vec![fold(n)];
    while !out.last().unwrap().is_empty() {
        let cur = out.last().unwrap();
        let ones = cur.minus_one_curves();
        if ones.len() != 1 {
            return Err(IntersectError::AmbiguousContraction(ones.len()));
        }
        let next = blow_down(cur, &cur.labels[ones[0]].clone())?;
        out.push(next);
    }
    Ok(out)
}

/// Discrepancy of the exceptional curve of a point blow-up:
/// `1 + sum prior - sum coeff_j mult_j`.
pub fn blowup_discrepancy(boundary: &BoundaryData, mult: &[(String, u32)], prior: &[Rat]) -> Rat {
    let mut a = Rat::one() + prior.iter().sum::<Rat>();
    for (l, k) in mult {
        a -= boundary.coeff(l) * int(*k as i64);
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Center {
    /// General point of a curve.
    Curve(String),
    /// Intersection point of two curves.
    Node(String, String),
    /// General point of a boundary component.
    Boundary(String),
    /// Point where a boundary component meets a curve.
    BoundaryCurve(String, String),
    /// Singular point of the boundary, by index.
    BoundarySingular(usize),
}

impl Center {
    fn through(&self, c: &CurveConfig) -> Vec<usize> {
        let idx = |l: &String| c.index(l).ok();
        match self {
            Center::Curve(a) | Center::BoundaryCurve(_, a) => idx(a).into_iter().collect(),
            Center::Node(a, b) => idx(a).into_iter().chain(idx(b)).collect(),
            _ => vec![],
        }
    }

    fn boundary_mult(&self, b: &BoundaryData) -> Vec<(String, u32)> {
        match self {
            Center::Boundary(l) | Center::BoundaryCurve(l, _) => vec![(l.clone(), 1)],
            Center::BoundarySingular(k) => b.singular_points[*k].clone(),
            _ => vec![],
        }
    }
}

pub fn center_discrepancy(c: &CurveConfig, b: &BoundaryData, center: &Center) -> Rat {
    let prior: Vec<Rat> = center.through(c).iter().map(|&i| c.discrepancy[i].clone()).collect();
    blowup_discrepancy(b, &center.boundary_mult(b), &prior)
}

/// Blows up a point; the new curve `F` has `F^2 = -1`, `K.F = -1`.
pub fn blow_up(c: &CurveConfig, b: &BoundaryData, center: &Center, label: &str) -> CurveConfig {
    let through = center.through(c);
    let mult = center.boundary_mult(b);
    let mut out = c.clone();
    let k = c.len();
    for row in out.q.iter_mut() {
        row.push(Rat::zero());
    }
    out.q.push(vec![Rat::zero(); k + 1]);
    out.q[k][k] = int(-1);
    for &i in &through {
        out.q[i][i] -= int(1);
        out.q[i][k] = int(1);
        out.q[k][i] = int(1);
        out.k_dot[i] += int(1);
        for (l, m) in &mult {
            let e = out.boundary_dot[i].entry(l.clone()).or_insert_with(Rat::zero);
            *e -= int(*m as i64);
        }
        out.boundary_dot[i].retain(|_, v| !v.is_zero());
        for &j in &through {
            if j != i {
                out.q[i][j] -= int(1);
            }
        }
    }
    out.k_dot.push(int(-1));
    out.boundary_dot.push(mult.iter().map(|(l, m)| (l.clone(), int(*m as i64))).collect());
    out.discrepancy.push(center_discrepancy(c, b, center));
    out.labels.push(label.into());
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MaximalityCertificate {
    pub maximal: bool,
    /// Every discrepancy lies in `(-1, 0]`.
    pub discrepancies_ok: bool,
    pub candidates: Vec<(Center, String)>,
}

/// Candidate centres of a further blow-up and the discrepancy each yields.
pub fn candidate_centers(c: &CurveConfig, b: &BoundaryData) -> Vec<(Center, Rat)> {
    let mut cs = Vec::new();
    for l in &c.labels {
        cs.push(Center::Curve(l.clone()));
    }
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c.q[i][j].is_positive() {
                cs.push(Center::Node(c.labels[i].clone(), c.labels[j].clone()));
            }
        }
    }
    for (l, _) in &b.components {
        cs.push(Center::Boundary(l.clone()));
        for i in 0..c.len() {
            if c.boundary_dot[i].get(l).is_some_and(|v| v.is_positive()) {
                cs.push(Center::BoundaryCurve(l.clone(), c.labels[i].clone()));
            }
        }
    }
    for k in 0..b.singular_points.len() {
        cs.push(Center::BoundarySingular(k));
    }
    cs.into_iter().map(|x| {
        let a = center_discrepancy(c, b, &x);
        (x, a)
    }).collect()
}

pub fn is_maximal(c: &CurveConfig, b: &BoundaryData) -> MaximalityCertificate {
    let discrepancies_ok = c.discrepancy.iter().all(|a| *a > int(-1) && *a <= Rat::zero());
    let cands = candidate_centers(c, b);
    let maximal = discrepancies_ok && cands.iter().all(|(_, a)| a.is_positive());
    MaximalityCertificate {
        maximal,
        discrepancies_ok,
        candidates: cands.into_iter().map(|(x, a)| (x, a.to_string())).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_basics() {
        assert!(an_chain(0).is_empty());
        let c = an_chain(4);
        assert!(c.adjunction_holds() && c.is_negative_definite());
        assert_eq!(c.q[1][2], int(1));
    }

    #[test]
    fn contract_minus_two_fails() {
        let c = an_chain(2);
        assert!(matches!(blow_down(&c, "E~1"), Err(IntersectError::NotContractible(..))));
    }
}
