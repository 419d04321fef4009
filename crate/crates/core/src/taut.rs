//! Tautological bundle ledgers on `Y_1` and on the stack `[X_1/Z_2]`,
//! torsion classes, the `p_*` identities and the Fourier-Mukai table.
//!
//! Stack divisors are half the supports: `cB_i = (1/2) B_i`, `cD = D`,
//! `cD_i = D_i`. `L` is kept as a symbol with `2L = -(B1 + B2)` (even) or
//! `2L = -B3` (odd) applied when pairing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::charts::express_monomial;
use crate::constel::{socle_table, StratumRow};
use crate::exactnum::{int, rat, Rat};
use crate::hilb::{flop_chart, strict_transform, x1_atlas, ClusterPoint, Family};
use crate::intersect::{boundary_pairings, downstairs_pairing, fold, CurveConfig};
use crate::polyring::Poly;
use crate::repr::{char_table, induce, restrict, GroupSpec, Irr, RClass};

#[derive(Debug, Error, PartialEq)]
pub enum TautError {
    #[error("k = {0} outside 1..={1}")]
    KOutOfRange(usize, usize),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("fm table disagrees with the socle strata at {0}: {1}")]
    CrossCheckFailure(String, String),
}

/// Rational combination of the labels `E1.., B1, B2 | B3, D, D1.., L`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorClass {
    pub coeffs: BTreeMap<String, Rat>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn of(label: &str) -> Self {
        Self::zero().plus_term(label, Rat::one())
    }

    pub fn plus_term(mut self, label: &str, c: Rat) -> Self {
        let e = self.coeffs.entry(label.to_string()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(label);
        }
        self
    }

    pub fn plus(&self, other: &Self) -> Self {
        other.coeffs.iter().fold(self.clone(), |acc, (l, c)| acc.plus_term(l, c.clone()))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.coeffs.iter().fold(Self::zero(), |acc, (l, v)| acc.plus_term(l, v * c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, label: &str) -> Rat {
        self.coeffs.get(label).cloned().unwrap_or_default()
    }

    /// Replaces `L` by its defining relation.
    pub fn resolve_l(&self, n: usize) -> Self {
        let l = self.get("L");
        let mut out = self.clone();
        out.coeffs.remove("L");
        for b in boundary_labels(n) {
            out = out.plus_term(b, -&l * rat(1, 2));
        }
        out
    }
}

fn label_order(l: &str) -> (usize, usize) {
    let head = l.trim_end_matches(|c: char| c.is_ascii_digit());
    let idx = l[head.len()..].parse().unwrap_or(0);
    let rank = ["E", "B", "D", "L"].iter().position(|h| *h == head).unwrap_or(4);
    // D before D_i
    (rank, if head == "D" && idx > 0 { idx + 1 } else { idx })
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<(&String, &Rat)> = self.coeffs.iter().collect();
        items.sort_by_key(|(l, _)| label_order(l));
        for (k, (l, c)) in items.into_iter().enumerate() {
            let neg = *c < Rat::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{a} {l}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn boundary_labels(n: usize) -> Vec<&'static str> {
    if n.is_multiple_of(2) {
        vec!["B1", "B2"]
    } else {
        vec!["B3"]
    }
}

// ---------------------------------------------------------------------------
// Reference divisors

/// `g = f1` (odd) or `f1^2` (even): the invariant that `W_k` compares with
/// `(xy)^k`.
fn reference_invariant(n: usize) -> Poly {
    let bin = |e: u32| &Poly::term(2, [e, 0, 0], int(1)) + &Poly::term(2, [0, e, 0], int(1));
    if n % 2 == 1 {
        bin(n as u32)
    } else {
        bin((n / 2) as u32).pow(2)
    }
}

/// `W_k = g - (xy)^k` as a polynomial in `x, y`.
pub fn reference_curve(n: usize, k: usize) -> Poly {
    &reference_invariant(n) - &Poly::term(2, [k as u32, k as u32, 0], int(1))
}

/// Boundary curves of `Y` in the invariant coordinates `s = xy`, `t = g`.
pub fn boundary_in_invariants(n: usize) -> Vec<(String, Poly)> {
    let s_pow = |e: u32, c: i64| Poly::term(2, [e, 0, 0], int(c));
    let t = Poly::var(2, 1);
    if n % 2 == 1 {
        // f2^2 = f1^2 - 4 (xy)^n
        vec![("B3".into(), &t.pow(2) + &s_pow(n as u32, -4))]
    } else {
        let m = (n / 2) as u32;
        vec![("B1".into(), t.clone()), ("B2".into(), &t + &s_pow(m, -4))]
    }
}

/// Number of points of `W_k` on each boundary curve away from the origin,
/// with multiplicity: substitute `t = s^k` and count nonzero roots.
fn boundary_meets(n: usize, k: usize) -> BTreeMap<String, usize> {
    boundary_in_invariants(n)
        .into_iter()
        .map(|(l, b)| {
            let mut uni: BTreeMap<u32, Rat> = BTreeMap::new();
            for (mono, c) in b.terms() {
                let [a, e, _] = mono.0;
                *uni.entry(a + k as u32 * e).or_insert_with(Rat::zero) += c;
            }
            uni.retain(|_, c| !c.is_zero());
            let count = match (uni.keys().next(), uni.keys().last()) {
                (Some(lo), Some(hi)) => (hi - lo) as usize,
                _ => 0,
            };
            (l, count)
        })
        .collect()
}

/// Local equation of `W_k` on the chart `U_k''`, when both of its monomials
/// are regular there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartWitness {
    pub chart: String,
    pub strict: String,
    /// `(coordinate, value)` of the point on the exceptional axis.
    pub point: Vec<(String, String)>,
}

fn chart_witness(n: usize, k: usize) -> Option<ChartWitness> {
    let c = flop_chart(n, Family::Upp, k)?;
    let g = if n % 2 == 1 { vec![0, 0, 1, 0] } else { vec![0, 0, 2, 0] };
    let a = express_monomial(&c, &g).ok()?;
    let b = express_monomial(&c, &[k as i64, 0, 0, 0]).ok()?;
    let low: Vec<i64> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
    let a: Vec<i64> = a.iter().zip(&low).map(|(x, l)| x - l).collect();
    let b: Vec<i64> = b.iter().zip(&low).map(|(x, l)| x - l).collect();
    // transversal form `1 - u` with `u` a single coordinate
    if a.iter().any(|&e| e != 0) || b.iter().filter(|&&e| e != 0).count() != 1 || b.iter().any(|&e| e > 1) {
        return None;
    }
    let u = b.iter().position(|&e| e == 1)?;
    let names = c.coord_names();
    let axis = names.len() - 1;
    if u == axis {
        return None;
    }
    Some(ChartWitness {
        chart: c.name.clone(),
        strict: format!("1 - {}", names[u]),
        point: vec![(names[u].clone(), "1".into()), (names[axis].clone(), "0".into())],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefDivisorCertificate {
    pub n: usize,
    pub k: usize,
    pub equation: String,
    /// `D . E_i` for `i = 1..m`.
    #[serde(serialize_with = "ser_rats")]
    pub pairings: Vec<Rat>,
    pub transversal: bool,
    /// Clusters where the strict transform of `W_k` meets `E~`.
    pub exceptional_points: Vec<ClusterPoint>,
    /// Points on each boundary curve away from the origin.
    pub boundary_meets: BTreeMap<String, usize>,
    pub chart_witness: Option<ChartWitness>,
}

fn ser_rats<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Rat::to_string))
}

pub fn refdivisor_certify(n: usize, k: usize) -> Result<RefDivisorCertificate, TautError> {
    let m = n / 2;
    if k == 0 || k > m {
        return Err(TautError::KOutOfRange(k, m));
    }
    let f = reference_curve(n, k);
    let pairings: Vec<Rat> = (1..=m).map(|i| downstairs_pairing(n, &f, i)).collect();
    let transversal = pairings.iter().enumerate().all(|(i, p)| *p == if i + 1 == k { int(1) } else { int(0) });
    let atlas = x1_atlas(n);
    let mut pts = BTreeSet::new();
    for c in &atlas.atlas.charts {
        let st = strict_transform(n, c, "W", &f).expect("W_k is invariant");
        for mt in st.meets {
            pts.extend(mt.clusters.into_iter().map(|p| p.to_string()));
        }
    }
    Ok(RefDivisorCertificate {
        n,
        k,
        equation: f.fmt_with(&["x", "y"]),
        pairings,
        transversal,
        exceptional_points: pts.iter().filter_map(|s| ClusterPoint::parse(s)).collect(),
        boundary_meets: boundary_meets(n, k),
        chart_witness: chart_witness(n, k),
    })
}

/// Default choice of `D`: the transversal to `E_m`, the curve meeting the
/// boundary.
pub fn default_k(n: usize) -> usize {
    n / 2
}

// ---------------------------------------------------------------------------
// Pairing context

/// Intersection data on `Y_1` needed to pair divisor classes with `E_j`.
#[derive(Debug, Clone)]
pub struct TautContext {
    pub n: usize,
    pub k: usize,
    pub fold: CurveConfig,
    pub boundary: Vec<BTreeMap<String, Rat>>,
    /// `D_i . E_j`, certified from `W_i`.
    pub transversals: Vec<Vec<Rat>>,
}

impl TautContext {
    pub fn new(n: usize, k: usize) -> Result<Self, TautError> {
        let m = n / 2;
        if k == 0 || k > m {
            return Err(TautError::KOutOfRange(k, m));
        }
        let transversals = (1..=m).map(|i| refdivisor_certify(n, i).map(|c| c.pairings)).collect::<Result<_, _>>()?;
        Ok(TautContext { n, k, fold: fold(n), boundary: boundary_pairings(n), transversals })
    }

    pub fn m(&self) -> usize {
        self.n / 2
    }

    /// `label . E_j` for `j = 1..m`.
    pub fn pair_label(&self, label: &str, j: usize) -> Rat {
        let head = label.trim_end_matches(|c: char| c.is_ascii_digit());
        let idx: usize = label[head.len()..].parse().unwrap_or(0);
        match head {
            "E" => self.fold.q[idx - 1][j - 1].clone(),
            "B" => self.boundary[j - 1].get(label).cloned().unwrap_or_default(),
            "D" if idx == 0 => self.transversals[self.k - 1][j - 1].clone(),
            "D" => self.transversals[idx - 1][j - 1].clone(),
            "L" => boundary_labels(self.n).iter().map(|b| self.pair_label(b, j)).sum::<Rat>() * rat(-1, 2),
            _ => panic!("unknown divisor label {label}"),
        }
    }

    pub fn pair(&self, c: &DivisorClass, j: usize) -> Rat {
        c.coeffs.iter().map(|(l, v)| v * self.pair_label(l, j)).sum()
    }

    pub fn pairings(&self, c: &DivisorClass) -> Vec<Rat> {
        (1..=self.m()).map(|j| self.pair(c, j)).collect()
    }
}

/// `cC`, the class of `O_{X_1} (x) delta` on the stack: `cB3 - cD` (odd) or
/// `cB1 - cB2` (even).
pub fn torsion_class(n: usize) -> DivisorClass {
    let h = rat(1, 2);
    if n % 2 == 1 {
        DivisorClass::zero().plus_term("B3", h).plus_term("D", int(-1))
    } else {
        DivisorClass::zero().plus_term("B1", h.clone()).plus_term("B2", -h)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorsionVerdict {
    pub class: DivisorClass,
    #[serde(serialize_with = "ser_rats")]
    pub doubled_pairings: Vec<Rat>,
    pub torsion: bool,
}

/// Numerical shadow of `2 c ~ 0`: `2c` pairs to zero with every compact
/// curve `E_j`.
pub fn torsion_check(ctx: &TautContext, class: &DivisorClass) -> TorsionVerdict {
    let doubled = class.scale(&int(2));
    let doubled_pairings = ctx.pairings(&doubled);
    let torsion = doubled_pairings.iter().all(Zero::is_zero);
    TorsionVerdict { class: class.clone(), doubled_pairings, torsion }
}

// ---------------------------------------------------------------------------
// Ledgers

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Coarse,
    Stack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    LineBundle,
    Split,
    UniqueNontrivial,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub irr: Irr,
    pub rank: u64,
    pub c1: DivisorClass,
    /// Sub and quotient line bundles (or the single line bundle).
    pub pieces: Vec<DivisorClass>,
    pub extension: Extension,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TautLedger {
    pub n: usize,
    pub space: Space,
    pub relation: String,
    pub entries: Vec<LedgerEntry>,
}

impl TautLedger {
    pub fn entry(&self, r: Irr) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.irr == r)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("| {} n={} | description | c1 |\n|---|---|---|\n", match self.space {
            Space::Coarse => "R",
            Space::Stack => "R^",
        }, self.n);
        for e in &self.entries {
            s += &format!("| {} (rank {}) | {} | {} |\n", e.irr, e.rank, e.description, e.c1);
        }
        s
    }
}

fn line(r: Irr, c1: DivisorClass) -> LedgerEntry {
    let description = if c1.is_zero() { "O".into() } else { format!("O({c1})") };
    LedgerEntry { irr: r, rank: 1, pieces: vec![c1.clone()], c1, extension: Extension::LineBundle, description }
}

fn rank_two(r: Irr, quot: DivisorClass, ext: Extension) -> LedgerEntry {
    let description = match ext {
        Extension::Split => format!("O + O({quot})"),
        _ => format!("0 -> O -> R -> O({quot}) -> 0"),
    };
    LedgerEntry { irr: r, rank: 2, c1: quot.clone(), pieces: vec![DivisorClass::zero(), quot], extension: ext, description }
}

pub fn build_ledger(n: usize, space: Space) -> TautLedger {
    let m = n / 2;
    let even = n.is_multiple_of(2);
    let top = if even { m - 1 } else { m };
    let relation = if even { "2L = -(B1 + B2)" } else { "2L = -B3" }.to_string();
    let mut entries = vec![line(Irr::Rho0, DivisorClass::zero())];
    match space {
        Space::Coarse => {
            let l = DivisorClass::of("L");
            entries.push(line(Irr::Rho0P, l.clone()));
            for i in 1..=top {
                entries.push(rank_two(Irr::Rho(i), DivisorClass::of(&format!("D{i}")).plus(&l), Extension::Split));
            }
            if even {
                entries.push(line(Irr::Half(m), DivisorClass::of("B1").plus(&l)));
                entries.push(line(Irr::HalfP(m), DivisorClass::of("B2").plus(&l)));
            }
        }
        Space::Stack => {
            let c = torsion_class(n);
            entries.push(line(Irr::Rho0P, c.clone()));
            for i in 1..=top {
                entries.push(rank_two(Irr::Rho(i), DivisorClass::of(&format!("D{i}")).plus(&c), Extension::UniqueNontrivial));
            }
            if even {
                entries.push(line(Irr::Half(m), DivisorClass::zero().plus_term("B1", rat(1, 2))));
                entries.push(line(Irr::HalfP(m), DivisorClass::zero().plus_term("B2", rat(1, 2))));
            }
        }
    }
    TautLedger { n, space, relation, entries }
}

/// Structural checks: one entry per irreducible, ranks are degrees, `c1`
/// is additive over the pieces, rank-two entries split on `Y_1` and carry
/// the nontrivial extension on the stack.
pub fn check_ledger(l: &TautLedger) -> Result<(), TautError> {
    let irrs = Irr::dihedral_list(l.n);
    let names: Vec<Irr> = l.entries.iter().map(|e| e.irr).collect();
    if names != irrs {
        return Err(TautError::IdentityViolation(format!("entries {names:?}")));
    }
    for e in &l.entries {
        let bad = |what: &str| Err(TautError::IdentityViolation(format!("{}: {what}", e.irr)));
        if e.rank != e.irr.degree() {
            return bad("rank");
        }
        let sum = e.pieces.iter().fold(DivisorClass::zero(), |a, p| a.plus(p));
        if sum != e.c1 {
            return bad("c1 not additive");
        }
        let want = match (e.rank, l.space) {
            (1, _) => Extension::LineBundle,
            (_, Space::Coarse) => Extension::Split,
            (_, Space::Stack) => Extension::UniqueNontrivial,
        };
        if e.extension != want {
            return bad("extension type");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Pushforward identities

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityLine {
    pub lhs: String,
    pub induced: RClass,
    pub expected: RClass,
    pub holds: bool,
}

/// `Ind` of `eps_0`, of `eps_i + eps_(n-i)` and of `eps_(n/2)`, each compared
/// with the stated dihedral classes; restriction must undo the pairing.
pub fn pushforward_identities(n: usize) -> Result<Vec<IdentityLine>, TautError> {
    let cyc = char_table(GroupSpec::cyclic(n));
    let dih = char_table(GroupSpec::dihedral(n));
    let eps = |j: usize| cyc.irr(Irr::Eps(j % n)).clone();
    let dec = |c| dih.decompose(&c).map_err(|e| TautError::IdentityViolation(e.to_string()));
    let mut out = Vec::new();
    let mut push = |lhs: String, induced: RClass, expected: RClass| {
        let holds = induced == expected;
        out.push(IdentityLine { lhs, induced, expected, holds });
    };
    push("eps0".into(), dec(induce(&eps(0)))?, RClass::of(&[(Irr::Rho0, 1), (Irr::Rho0P, 1)]));
    for i in 1..n.div_ceil(2) {
        let pair = induce(&eps(i)).add(&induce(&eps(n - i)));
        push(format!("eps{i} + eps{}", n - i), dec(pair)?, RClass::of(&[(Irr::Rho(i), 2)]));
        let back = cyc.decompose(&restrict(dih.irr(Irr::Rho(i)))).map_err(|e| TautError::IdentityViolation(e.to_string()))?;
        if back != RClass::of(&[(Irr::Eps(i), 1), (Irr::Eps(n - i), 1)]) {
            return Err(TautError::IdentityViolation(format!("Res rho{i} = {back}")));
        }
    }
    if n.is_multiple_of(2) {
        let m = n / 2;
        push(format!("eps{m}"), dec(induce(&eps(m)))?, RClass::of(&[(Irr::Half(m), 1), (Irr::HalfP(m), 1)]));
    }
    if let Some(bad) = out.iter().find(|l| !l.holds) {
        return Err(TautError::IdentityViolation(format!("Ind({}) = {}", bad.lhs, bad.induced)));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Fourier-Mukai images

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    /// The fundamental cycle.
    Fundamental,
    Curve(usize),
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Fundamental => write!(f, "F"),
            Support::Curve(i) => write!(f, "E{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FmTwist {
    None,
    MinusBoundary(String),
    Torsion(DivisorClass),
}

impl fmt::Display for FmTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FmTwist::None => write!(f, "none"),
            FmTwist::MinusBoundary(b) => write!(f, "-{b}"),
            FmTwist::Torsion(c) => write!(f, "({c})"),
        }
    }
}

macro_rules! display_serialize {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }
    )*};
}
display_serialize!(Support, FmTwist);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FmEntry {
    pub irr: Irr,
    pub support: Support,
    pub twist: FmTwist,
    pub shift: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FmTable {
    pub n: usize,
    pub entries: Vec<FmEntry>,
}

impl FmTable {
    pub fn entry(&self, r: Irr) -> Option<&FmEntry> {
        self.entries.iter().find(|e| e.irr == r)
    }
}

/// Images `Phi(O_0 (x) rho^*)` on the stack.
pub fn fm_table(n: usize) -> FmTable {
    let m = n / 2;
    let e = |irr, support, twist, shift| FmEntry { irr, support, twist, shift };
    let mut entries = vec![
        e(Irr::Rho0, Support::Fundamental, FmTwist::None, 0),
        e(Irr::Rho0P, Support::Fundamental, FmTwist::Torsion(torsion_class(n)), 0),
    ];
    if n.is_multiple_of(2) {
        entries.extend((1..m).map(|j| e(Irr::Rho(j), Support::Curve(j), FmTwist::None, 1)));
        entries.push(e(Irr::Half(m), Support::Curve(m), FmTwist::MinusBoundary("B1".into()), 1));
        entries.push(e(Irr::HalfP(m), Support::Curve(m), FmTwist::MinusBoundary("B2".into()), 1));
    } else {
        entries.extend((1..m).map(|j| e(Irr::Rho(j), Support::Curve(j), FmTwist::None, 1)));
        entries.push(e(Irr::Rho(m), Support::Curve(m), FmTwist::MinusBoundary("B3".into()), 1));
    }
    FmTable { n, entries }
}

/// Checks each row of the table against the socle strata:
/// a curve support is the closure of the strata whose socle contains `rho`;
/// the fundamental cycle carries `rho` in the top of every exceptional
/// stratum and in no socle; for even `n` a `-B_a` twist means `rho` is
/// missing from the socle at `B_a` and present at the other fixed point.
pub fn fm_cross_check(table: &FmTable, rows: &[StratumRow]) -> Result<(), TautError> {
    let fail = |r: Irr, why: String| Err(TautError::CrossCheckFailure(r.to_string(), why));
    for e in &table.entries {
        let r = e.irr;
        let with: Vec<&StratumRow> = rows.iter().filter(|s| s.socle.contains(r)).collect();
        match &e.support {
            Support::Fundamental => {
                if let Some(s) = with.first() {
                    return fail(r, format!("in the socle at {}", s.stratum));
                }
                if let Some(s) = rows.iter().find(|s| s.exceptional && !s.top.contains(r)) {
                    return fail(r, format!("missing from the top at {}", s.stratum));
                }
            }
            Support::Curve(j) => {
                // generic strata: a single curve
                let generic: BTreeSet<usize> = with.iter().filter(|s| s.curves.len() == 1 && s.stratum.starts_with('E')).map(|s| s.curves[0]).collect();
                if generic != BTreeSet::from([*j]) {
                    return fail(r, format!("generic socle strata on {generic:?}"));
                }
                if let Some(s) = with.iter().find(|s| !s.curves.contains(j)) {
                    return fail(r, format!("socle at {} off E{j}", s.stratum));
                }
            }
        }
        if let FmTwist::MinusBoundary(b) = &e.twist {
            if table.n.is_multiple_of(2) {
                let at = |l: &str| rows.iter().find(|s| s.stratum == l).map(|s| s.socle.contains(r));
                let other = if b == "B1" { "B2" } else { "B1" };
                if at(b) != Some(false) || at(other) != Some(true) {
                    return fail(r, format!("twist -{b} against the socles at B1/B2"));
                }
            }
        }
    }
    Ok(())
}

/// `fm_table(n)` checked against `socle_table(n, alpha)`.
pub fn fm_table_checked(n: usize, alpha: &Rat) -> Result<FmTable, TautError> {
    let rows = socle_table(n, alpha).map_err(|e| TautError::CrossCheckFailure("socle table".into(), e.to_string()))?;
    let t = fm_table(n);
    fm_cross_check(&t, &rows)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_order() {
        let c = DivisorClass::zero().plus_term("L", int(1)).plus_term("D2", int(1)).plus_term("B3", rat(1, 2)).plus_term("D", int(-1));
        assert_eq!(c.to_string(), "1/2 B3 - D + D2 + L");
        assert_eq!(DivisorClass::of("L").resolve_l(4).to_string(), "-1/2 B1 - 1/2 B2");
    }
}
