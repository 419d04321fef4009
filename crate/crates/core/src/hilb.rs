//! The atlases of Z_n-Hilb(C^2) and of the flop stages, cluster ideals
//! I_i(a:b), the Z_2 action and its fixed points, and strict transforms of
//! the boundary curves.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::charts::{
    compact_curve, local_intersection, normalize_tag, pullback_orders, transition, Atlas, AxisIntersection, AxisPoint, Chart, ChartError,
    LocalCurve, Pullback, Atoms, Rewrite,
};
use crate::exactnum::{int, parse_rat, Rat};
use crate::polyring::{Ideal, Poly};

/// Point `I_i(a:b)` of the exceptional curve `E~_i` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterPoint {
    pub i: usize,
    pub a: Rat,
    pub b: Rat,
}

impl ClusterPoint {
    pub fn new(i: usize, a: Rat, b: Rat) -> Option<Self> {
        let lead = if !a.is_zero() { a.clone() } else if !b.is_zero() { b.clone() } else { return None };
        Some(ClusterPoint { i, a: a / &lead, b: b / lead })
    }

    pub fn ints(i: usize, a: i64, b: i64) -> Self {
        Self::new(i, int(a), int(b)).expect("nonzero parameters")
    }

    /// Parses `I_2(1:-1)`, `I2(1:-1)` or `2:1:-1`.
    pub fn parse(s: &str) -> Option<Self> {
        let t = s.trim().trim_start_matches('I').trim_start_matches('_');
        let (i, rest) = match t.find('(') {
            Some(p) => (&t[..p], t[p + 1..].trim_end_matches(')')),
            None => t.split_once(':')?,
        };
        let (a, b) = rest.split_once(':')?;
        Self::new(i.trim().parse().ok()?, parse_rat(a.trim())?, parse_rat(b.trim())?)
    }
}

impl fmt::Display for ClusterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}({}:{})", self.i, self.a, self.b)
    }
}

impl Serialize for ClusterPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `<a x^i - b y^(n-i), x^(i+1), xy, y^(n+1-i)>`.
pub fn cluster_ideal(n: usize, p: &ClusterPoint) -> Ideal {
    assert!(p.i >= 1 && p.i < n, "cluster index {} out of range for n = {n}", p.i);
    let (i, n) = (p.i as u32, n as u32);
    Ideal::new(vec![
        &Poly::term(2, [i, 0, 0], p.a.clone()) - &Poly::term(2, [0, n - i, 0], p.b.clone()),
        Poly::term(2, [i + 1, 0, 0], Rat::one()),
        Poly::term(2, [1, 1, 0], Rat::one()),
        Poly::term(2, [0, n + 1 - i, 0], Rat::one()),
    ])
}

pub fn swap_ideal(i: &Ideal) -> Ideal {
    Ideal::new(i.generators().iter().map(Poly::swap_xy).collect())
}

/// Image under the reflection `x <-> y`.
pub fn z2_image(n: usize, p: &ClusterPoint) -> ClusterPoint {
    ClusterPoint::new(n - p.i, p.b.clone(), p.a.clone()).unwrap()
}

/// `z2_image` together with its ideal-level check.
pub fn z2_image_checked(n: usize, p: &ClusterPoint) -> (ClusterPoint, bool) {
    let q = z2_image(n, p);
    let ok = swap_ideal(&cluster_ideal(n, p)) == cluster_ideal(n, &q);
    (q, ok)
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPoint {
    pub point: ClusterPoint,
    /// Other labels of the same ideal.
    pub aliases: Vec<ClusterPoint>,
    /// Reduced Groebner basis shared by the ideal and its swap.
    pub certificate: Vec<String>,
}

fn candidates(n: usize) -> Vec<ClusterPoint> {
    let params = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)];
    (1..n).flat_map(|i| params.iter().map(move |&(a, b)| ClusterPoint::ints(i, a, b))).collect()
}

/// Z_2-fixed clusters, found by comparing reduced Groebner bases of each
/// candidate ideal and its swap.
pub fn fixed_points(n: usize) -> Vec<FixedPoint> {
    assert!(n >= 3);
    let mut out: Vec<(FixedPoint, Ideal)> = Vec::new();
    for p in candidates(n) {
        let ideal = cluster_ideal(n, &p);
        if swap_ideal(&ideal) != ideal {
            continue;
        }
        if let Some((fp, _)) = out.iter_mut().find(|(_, j)| *j == ideal) {
            fp.aliases.push(p);
            continue;
        }
        let certificate = ideal.basis().iter().map(|g| g.fmt_with(&["x", "y"])).collect();
        out.push((FixedPoint { point: p, aliases: vec![], certificate }, ideal));
    }
    out.into_iter().map(|(f, _)| f).collect()
}

/// Atoms `x, y`; invariant monomials `x^a y^b` have `a = b mod n`.
fn plane_atoms(n: usize) -> Arc<Atoms> {
    Atoms::new(&["x", "y"], vec![Poly::var(2, 0), Poly::var(2, 1)], vec![vec![1, 1], vec![0, n as i64]])
}

/// Exponents of `u`, `v` on `U_i`: `u = x^i / y^(n-i)`, `v = y^(n+1-i) / x^(i-1)`.
pub fn x1_chart(n: usize, i: usize) -> Chart {
    x1_chart_on(&plane_atoms(n), n, i)
}

fn x1_chart_on(atoms: &Arc<Atoms>, n: usize, i: usize) -> Chart {
    assert!(1 <= i && i <= n);
    let (n, ii) = (n as i64, i as i64);
    let mut c = Chart::new(format!("U{i}"), atoms, vec![vec![ii, ii - n], vec![1 - ii, n + 1 - ii]]);
    if i >= 2 {
        c = c.with_axis(0, format!("E~{}", i - 1));
    }
    if i < n as usize {
        c = c.with_axis(1, format!("E~{i}"));
    }
    c
}

/// Cluster at a point of an exceptional axis of `U_i`.
pub fn axis_cluster(n: usize, chart: usize, axis: usize, value: &Rat) -> Option<ClusterPoint> {
    match axis {
        1 if chart < n => ClusterPoint::new(chart, Rat::one(), value.clone()),
        0 if chart >= 2 => ClusterPoint::new(chart - 1, value.clone(), Rat::one()),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct HilbAtlas {
    pub n: usize,
    pub atlas: Atlas,
    /// `(label, projective tag)` for `E~_1 .. E~_(n-1)`.
    pub divisors: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbAtlasJson {
    pub n: usize,
    pub divisors: Vec<(String, String)>,
    pub atlas: crate::charts::AtlasJson,
}

impl HilbAtlas {
    pub fn chart(&self, i: usize) -> &Chart {
        &self.atlas.charts[i - 1]
    }

    pub fn to_json(&self) -> HilbAtlasJson {
        HilbAtlasJson { n: self.n, divisors: self.divisors.clone(), atlas: self.atlas.to_json() }
    }
}

pub fn x1_atlas(n: usize) -> HilbAtlas {
    let atoms = plane_atoms(n);
    let charts = (1..=n).map(|i| x1_chart_on(&atoms, n, i)).collect();
    let divisors = (1..n).map(|i| (format!("E~{i}"), format!("(x^{i} : y^{})", n - i))).collect();
    HilbAtlas { n, atlas: Atlas { name: format!("X1(n={n})"), charts }, divisors }
}

/// The boundary curves upstairs: `B1^ = (x^m + y^m)^2`, `B2^ = (x^m - y^m)^2`
/// for `n = 2m`, `B3^ = (x^n - y^n)^2` for odd `n`.
pub fn boundary_curves(n: usize) -> Vec<(String, Poly)> {
    let bin = |e: u32, s: i64| &Poly::term(2, [e, 0, 0], int(1)) + &Poly::term(2, [0, e, 0], int(s));
    if n.is_multiple_of(2) {
        let m = (n / 2) as u32;
        vec![("B1^".into(), bin(m, 1).pow(2)), ("B2^".into(), bin(m, -1).pow(2))]
    } else {
        vec![("B3^".into(), bin(n as u32, -1).pow(2))]
    }
}

#[derive(Debug, Clone)]
pub struct AxisMeeting {
    pub axis: String,
    pub hit: AxisIntersection,
    /// Clusters at the rational intersection points.
    pub clusters: Vec<ClusterPoint>,
}

#[derive(Debug, Clone)]
pub struct StrictTransform {
    pub curve: LocalCurve,
    pub pullback: Pullback,
    pub meets: Vec<AxisMeeting>,
    pub constant_term: Rat,
}

impl StrictTransform {
    /// Misses every exceptional axis and has constant term 1.
    pub fn has_constant_term_certificate(&self) -> bool {
        self.meets.is_empty() && self.constant_term.is_one()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StrictTransformJson {
    pub label: String,
    pub chart: String,
    pub strict: String,
    pub orders: Vec<(String, u32)>,
    pub meets: Vec<(String, AxisIntersection, Vec<ClusterPoint>)>,
    pub constant_term_one: bool,
}

impl StrictTransform {
    pub fn to_json(&self) -> StrictTransformJson {
        StrictTransformJson {
            label: self.curve.label.clone(),
            chart: self.curve.chart.name.clone(),
            strict: self.curve.equation.fmt_with(&["u", "v"]),
            orders: self.pullback.orders.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            meets: self.meets.iter().map(|m| (m.axis.clone(), m.hit.clone(), m.clusters.clone())).collect(),
            constant_term_one: self.has_constant_term_certificate(),
        }
    }
}

pub fn strict_transform(n: usize, chart: &Chart, label: &str, f: &Poly) -> Result<StrictTransform, ChartError> {
    let pullback = pullback_orders(chart, f)?;
    let curve = LocalCurve { chart: chart.clone(), label: label.to_string(), equation: pullback.strict.clone() };
    let idx: usize = chart.name[1..].parse().unwrap_or(0);
    let mut meets = Vec::new();
    for (k, ax) in chart.axes.iter().enumerate() {
        let Some(ax) = ax else { continue };
        let hit = local_intersection(&curve, k)?;
        if hit.total == 0 {
            continue;
        }
        let clusters = hit
            .points
            .iter()
            .filter_map(|(p, _)| match p {
                AxisPoint::Rational(r) => axis_cluster(n, idx, k, &parse_rat(r)?),
                AxisPoint::Irreducible(_) => None,
            })
            .collect();
        meets.push(AxisMeeting { axis: ax.clone(), hit, clusters });
    }
    let constant_term = pullback.strict.eval(&[Rat::zero(), Rat::zero()]);
    Ok(StrictTransform { curve, pullback, meets, constant_term })
}

/// Strict transforms of each boundary curve on each chart `U_i` of `X_1`.
pub fn boundary_strict_transforms(n: usize) -> Vec<StrictTransform> {
    let atlas = x1_atlas(n);
    let mut out = Vec::new();
    for (label, f) in boundary_curves(n) {
        for c in &atlas.atlas.charts {
            out.push(strict_transform(n, c, &label, &f).expect("boundary curves are invariant"));
        }
    }
    out
}

/// The invariant chart `Spec C[xy, f1/(xy)^m]` for odd `n` with its boundary
/// equation, plus the checks that it is consistent with `x^n - y^n` and with
/// the chart `U_(m+1)` (where `xy = uv` and `f1/(xy)^m = u + v`).
#[derive(Debug, Clone)]
pub struct InvariantChart {
    pub chart: Chart,
    pub boundary: Pullback,
    pub ambient_identity: bool,
    pub upstairs_identity: bool,
}

pub fn invariant_chart(n: usize) -> InvariantChart {
    assert!(n % 2 == 1);
    let m = (n / 2) as i64;
    let f1 = &Poly::term(2, [n as u32, 0, 0], int(1)) + &Poly::term(2, [0, n as u32, 0], int(1));
    let xy = Poly::term(2, [1, 1, 0], int(1));
    let atoms = Atoms::new(&["xy", "f1"], vec![xy.clone(), f1.clone()], vec![vec![1, 0], vec![0, 1]]);
    let chart = Chart::new("Inv", &atoms, vec![vec![1, 0], vec![-m, 1]]).with_axis(0, format!("E{m}"));
    // (x^n - y^n)^2 = f1^2 - 4 (xy)^n
    let b3 = boundary_curves(n).remove(0).1;
    let ambient_identity = b3 == &f1.pow(2) - &xy.pow(n as u32).scale(&int(4));
    let in_atoms = Poly::parse(&format!("y^2 - 4*x^{n}"), 2).unwrap();
    let boundary = pullback_orders(&chart, &in_atoms).unwrap();
    let up = x1_chart(n, m as usize + 1);
    let s = pullback_orders(&up, &xy).unwrap();
    let t = pullback_orders(&up, &f1).unwrap();
    let upstairs_identity = s.strict.is_one_poly()
        && s.factored == vec![1, 1]
        && t.strict == Poly::parse("x + y", 2).unwrap()
        && t.factored == vec![m as u32, m as u32];
    InvariantChart { chart, boundary, ambient_identity, upstairs_identity }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for Poly {
    fn is_one_poly(&self) -> bool {
        *self == Poly::one(self.nvars())
    }
}

// ---------------------------------------------------------------------------
// flop stages

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    U,
    /// `U'`
    Up,
    /// `U''`
    Upp,
    /// `V'`
    Vp,
    /// `V''`
    Vpp,
}

impl Family {
    fn label(self) -> (&'static str, &'static str) {
        match self {
            Family::U => ("U", ""),
            Family::Up => ("U", "'"),
            Family::Upp => ("U", "''"),
            Family::Vp => ("V", "'"),
            Family::Vpp => ("V", "''"),
        }
    }
}

pub fn chart_name(f: Family, k: usize) -> String {
    let (a, b) = f.label();
    format!("{a}{k}{b}")
}

/// Atoms `xy, z, f1, f2` with `f1 = x^e + y^e`, `f2 = x^e - y^e`,
/// `e = n` (odd) or `n/2` (even).
pub fn flop_atoms(n: usize) -> Arc<Atoms> {
    let e = if n.is_multiple_of(2) { n / 2 } else { n } as u32;
    let xe = Poly::term(3, [e, 0, 0], int(1));
    let ye = Poly::term(3, [0, e, 0], int(1));
    let lattice = if n % 2 == 1 {
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, -1], vec![0, 0, 1, 0], vec![0, 0, 0, 2]]
    } else {
        vec![vec![1, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 1, 1, 1]]
    };
    // f1^2 - f2^2 = 4 (xy)^e
    let xy_e = vec![e as i64, 0, 0, 0];
    Atoms::new(
        &["xy", "z", "f1", "f2"],
        vec![Poly::term(3, [1, 1, 0], int(1)), Poly::var(3, 2), &xe + &ye, &xe - &ye],
        lattice,
    )
    .with_rewrite(Rewrite { atom: 3, rhs: vec![(vec![0, 0, 2, 0], int(1)), (xy_e.clone(), int(-4))] })
    .with_rewrite(Rewrite { atom: 2, rhs: vec![(vec![0, 0, 0, 2], int(1)), (xy_e, int(4))] })
}

fn flop_coords(n: usize, f: Family, k: usize) -> Option<Vec<Vec<i64>>> {
    let m = (n / 2) as i64;
    let ki = k as i64;
    if k == 0 {
        return None;
    }
    let c = if n % 2 == 1 {
        match f {
            Family::Up if ki <= m + 1 => vec![vec![ki - 1, 1, 0, -1], vec![1 - ki, 0, 1, 0], vec![1, 0, 0, 0]],
            Family::U if ki <= m + 1 && ki >= 2 => {
                vec![vec![ki - 1, 1, 0, -1], vec![2 - ki, -1, 0, 1], vec![0, 1, 1, -1]]
            }
            Family::U if ki == m + 2 => vec![vec![0, 2, 0, 0], vec![-m, 0, 1, 0], vec![-m, -1, 0, 1]],
            Family::Upp if ki <= m => vec![vec![0, 1, 1, -1], vec![ki, 0, -1, 0], vec![1 - ki, 0, 1, 0]],
            _ => return None,
        }
    } else {
        match f {
            Family::U if ki <= m && ki >= 2 => {
                vec![vec![ki - 1, 1, -1, -1], vec![2 - ki, -1, 1, 1], vec![0, 1, 1, -1]]
            }
            Family::U if ki == m + 1 => vec![vec![0, 1, -1, 1], vec![1 - m, -1, 1, 1], vec![0, 1, 1, -1]],
            Family::Up if ki <= m => vec![vec![ki - 1, 1, -1, -1], vec![1 - ki, 0, 2, 0], vec![1, 0, 0, 0]],
            Family::Up if ki == m + 1 => vec![vec![0, 1, -1, 1], vec![0, 0, 2, -2], vec![1 - m, 0, 0, 2]],
            Family::Upp if ki < m => vec![vec![0, 1, 1, -1], vec![ki, 0, -2, 0], vec![1 - ki, 0, 2, 0]],
            Family::Upp if ki == m => vec![vec![0, 1, 1, -1], vec![0, 0, -2, 2], vec![1 - m, 0, 2, 0]],
            Family::Vp if ki <= m && ki >= 2 => {
                vec![vec![ki - 2, 2, 0, -2], vec![1, 0, 0, 0], vec![2 - ki, -1, 1, 1]]
            }
            Family::Vp if ki == m + 1 => vec![vec![m - 1, 2, 0, -2], vec![1 - m, 0, 0, 2], vec![1 - m, -1, 1, 1]],
            Family::Vp if ki == m + 2 => vec![vec![0, 2, 0, 0], vec![1 - m, 0, 0, 2], vec![0, -1, 1, -1]],
            Family::Vpp if ki <= m + 1 && ki >= 2 => {
                vec![vec![ki - 2, 2, 0, -2], vec![3 - ki, -2, 0, 2], vec![0, 1, 1, -1]]
            }
            Family::Vpp if ki == m + 2 => vec![vec![0, 2, 0, 0], vec![1 - m, -2, 0, 2], vec![0, 1, 1, -1]],
            Family::Vpp if ki == m + 3 => vec![vec![0, 2, 0, 0], vec![1 - m, 0, 2, 0], vec![0, -1, -1, 1]],
            _ => return None,
        }
    };
    Some(c)
}

pub fn flop_chart(n: usize, f: Family, k: usize) -> Option<Chart> {
    flop_chart_on(&flop_atoms(n), n, f, k)
}

fn flop_chart_on(atoms: &Arc<Atoms>, n: usize, f: Family, k: usize) -> Option<Chart> {
    Some(Chart::new(chart_name(f, k), atoms, flop_coords(n, f, k)?))
}

/// Stage `X_{0..i}` (odd `n`, `j = None`) or `X^{m..(m-j)}_{0..i}` (even
/// `n`; `j = None` means `j = -1`). `i = -1` is the stage with every curve
/// flopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub i: i64,
    pub j: Option<i64>,
}

pub fn stage_range(n: usize) -> Vec<Stage> {
    let m = (n / 2) as i64;
    let mut out = Vec::new();
    for i in -1..m {
        if n % 2 == 1 {
            out.push(Stage { i, j: None });
        } else {
            for j in -1..=(m - 2 - i) {
                out.push(Stage { i, j: Some(j) });
            }
        }
    }
    out
}

/// Chart list of a stage, in the order of the displayed union.
pub fn stage_charts(n: usize, s: Stage) -> Option<Vec<(Family, usize)>> {
    let m = (n / 2) as i64;
    if s.i < -1 || s.i > m - 1 {
        return None;
    }
    let mut out: Vec<(Family, usize)> = (1..=s.i + 1).map(|k| (Family::Upp, k as usize)).collect();
    out.push((Family::Up, (s.i + 2) as usize));
    if n % 2 == 1 {
        if s.j.is_some() {
            return None;
        }
        out.extend((s.i + 3..=m + 2).map(|k| (Family::U, k as usize)));
    } else {
        let j = s.j.unwrap_or(-1);
        if j < -1 || j > m - 2 - s.i {
            return None;
        }
        out.extend((s.i + 3..=m - j).map(|k| (Family::U, k as usize)));
        out.push((Family::Vp, (m - j + 1) as usize));
        out.extend((m - j + 2..=m + 3).map(|k| (Family::Vpp, k as usize)));
    }
    Some(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveTag {
    pub between: (String, String),
    /// Projective coordinates `(numerator : denominator)` of the curve.
    pub coords: String,
    pub exponent: Vec<i64>,
    /// Lies on the surface `z = 0`.
    pub surface: bool,
}

#[derive(Debug, Clone)]
pub struct FlopAtlas {
    pub n: usize,
    pub stage: Stage,
    pub atlas: Atlas,
    pub curves: Vec<CurveTag>,
    /// The curve flopped to reach the next stage down.
    pub floppable: Option<CurveTag>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlopAtlasJson {
    pub n: usize,
    pub stage: Stage,
    pub atlas: crate::charts::AtlasJson,
    pub curves: Vec<CurveTag>,
    pub floppable: Option<CurveTag>,
}

impl FlopAtlas {
    pub fn surface_curves(&self) -> usize {
        self.curves.iter().filter(|c| c.surface).count()
    }

    pub fn to_json(&self) -> FlopAtlasJson {
        FlopAtlasJson {
            n: self.n,
            stage: self.stage,
            atlas: self.atlas.to_json(),
            curves: self.curves.clone(),
            floppable: self.floppable.clone(),
        }
    }
}

fn ratio_name(atoms: &Atoms, e: &[i64]) -> String {
    let pos: Vec<i64> = e.iter().map(|&v| v.max(0)).collect();
    let neg: Vec<i64> = e.iter().map(|&v| (-v).max(0)).collect();
    format!("({} : {})", atoms.monomial_name(&pos), atoms.monomial_name(&neg))
}

pub fn build_flop_atlas(n: usize, stage: Stage) -> Option<FlopAtlas> {
    assert!(n >= 3);
    let atoms = flop_atoms(n);
    let list = stage_charts(n, stage)?;
    let charts: Vec<Chart> = list.iter().map(|&(f, k)| flop_chart_on(&atoms, n, f, k)).collect::<Option<_>>()?;
    let atlas = Atlas { name: format!("X(n={n}, i={}, j={:?})", stage.i, stage.j), charts };
    let mut seen = BTreeSet::new();
    let mut curves = Vec::new();
    for (x, a) in atlas.charts.iter().enumerate() {
        for b in &atlas.charts[x + 1..] {
            let Some(k) = compact_curve(a, b) else { continue };
            let tag = normalize_tag(a.coords[k].clone());
            if seen.insert(tag.clone()) {
                curves.push(CurveTag {
                    between: (a.name.clone(), b.name.clone()),
                    coords: ratio_name(&atoms, &tag),
                    surface: tag[1] == 0,
                    exponent: tag,
                });
            }
        }
    }
    let floppable = if stage.i >= 0 {
        let k = (stage.i + 1) as usize;
        let (a, b) = (chart_name(Family::Upp, k), chart_name(Family::Up, k + 1));
        curves.iter().find(|c| c.between == (a.clone(), b.clone())).cloned()
    } else {
        None
    };
    Some(FlopAtlas { n, stage, atlas, curves, floppable })
}

/// Transition between two named flop charts, if they glue.
pub fn flop_transition(n: usize, a: (Family, usize), b: (Family, usize)) -> Option<crate::charts::Transition> {
    transition(&flop_chart(n, a.0, a.1)?, &flop_chart(n, b.0, b.1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_point_canonical() {
        let p = ClusterPoint::new(2, int(-2), int(2)).unwrap();
        assert_eq!(p, ClusterPoint::ints(2, 1, -1));
        assert_eq!(ClusterPoint::parse("I_2(-1:1)"), Some(p.clone()));
        assert_eq!(ClusterPoint::parse("2:1:-1"), Some(p));
        assert!(ClusterPoint::new(1, int(0), int(0)).is_none());
    }

    #[test]
    fn odd_stage_sizes() {
        let a = build_flop_atlas(5, Stage { i: 1, j: None }).unwrap();
        assert_eq!(a.atlas.charts.len(), 4);
        assert_eq!(a.floppable.as_ref().unwrap().coords, "(f1 : (xy)^2)");
    }
}
