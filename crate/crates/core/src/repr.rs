//! Characters of `Z/n` and of the dihedral group `D_2n = <sigma, tau>`.
//!
//! Class functions are vectors of [`CycloElt`] aligned with [`classes`].
//! Inner products are evaluated at a primitive n-th root of unity.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{int, is_integer, ArithError, CycloElt, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("characters belong to different groups")]
    GroupMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic,
    Dihedral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
}

impl GroupSpec {
    /// # Panics
    /// If `n < 2`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 2, "n must be at least 2");
        GroupSpec { kind: GroupKind::Cyclic, n }
    }

    /// # Panics
    /// If `n < 2`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 2, "n must be at least 2");
        GroupSpec { kind: GroupKind::Dihedral, n }
    }

    pub fn order(&self) -> usize {
        match self.kind {
            GroupKind::Cyclic => self.n,
            GroupKind::Dihedral => 2 * self.n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassLabel {
    Identity,
    /// `sigma^i`; for the dihedral group `0 < i <= n/2` represents `sigma^{+-i}`.
    SigmaPower(usize),
    /// Reflections `tau sigma^k` with `k = j mod 2` (even n) or all of them (odd n, j = 0).
    TauClass(usize),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Identity => write!(f, "1"),
            ClassLabel::SigmaPower(i) => write!(f, "sigma^{i}"),
            ClassLabel::TauClass(0) => write!(f, "tau"),
            ClassLabel::TauClass(j) => write!(f, "tau*sigma^{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConjClass {
    pub label: ClassLabel,
    pub size: usize,
}

/// Group element `tau^r sigma^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupElem {
    pub reflection: bool,
    pub k: usize,
}

pub fn classes(g: GroupSpec) -> Vec<ConjClass> {
    let n = g.n;
    let mut out = vec![ConjClass { label: ClassLabel::Identity, size: 1 }];
    match g.kind {
        GroupKind::Cyclic => {
            out.extend((1..n).map(|i| ConjClass { label: ClassLabel::SigmaPower(i), size: 1 }));
        }
        GroupKind::Dihedral => {
            for i in 1..=n / 2 {
                let size = if 2 * i == n { 1 } else { 2 };
                out.push(ConjClass { label: ClassLabel::SigmaPower(i), size });
            }
            if n % 2 == 1 {
                out.push(ConjClass { label: ClassLabel::TauClass(0), size: n });
            } else {
                out.push(ConjClass { label: ClassLabel::TauClass(0), size: n / 2 });
                out.push(ConjClass { label: ClassLabel::TauClass(1), size: n / 2 });
            }
        }
    }
    out
}

/// Index into [`classes`] of the class containing `e`.
pub fn class_index(g: GroupSpec, e: GroupElem) -> usize {
    let n = g.n;
    let k = e.k % n;
    match (g.kind, e.reflection) {
        (GroupKind::Cyclic, false) => k,
        (GroupKind::Cyclic, true) => panic!("reflection in a cyclic group"),
        (GroupKind::Dihedral, false) => k.min(n - k) % n,
        (GroupKind::Dihedral, true) => 1 + n / 2 + if n.is_multiple_of(2) { k % 2 } else { 0 },
    }
}

/// A representative element of each class.
pub fn class_representative(label: ClassLabel) -> GroupElem {
    match label {
        ClassLabel::Identity => GroupElem { reflection: false, k: 0 },
        ClassLabel::SigmaPower(i) => GroupElem { reflection: false, k: i },
        ClassLabel::TauClass(j) => GroupElem { reflection: true, k: j },
    }
}

/// Irreducible characters. `Half(h)`/`HalfP(h)` are the one-dimensional
/// characters with `h = n/2` for even n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Irr {
    Rho0,
    Rho0P,
    Rho(usize),
    Half(usize),
    HalfP(usize),
    Eps(usize),
}

impl Irr {
    pub fn degree(self) -> u64 {
        match self {
            Irr::Rho(_) => 2,
            _ => 1,
        }
    }

    /// Dihedral irreducibles in table order.
    pub fn dihedral_list(n: usize) -> Vec<Irr> {
        let mut out = vec![Irr::Rho0, Irr::Rho0P];
        out.extend((1..=(n - 1) / 2).map(Irr::Rho));
        if n.is_multiple_of(2) {
            out.push(Irr::Half(n / 2));
            out.push(Irr::HalfP(n / 2));
        }
        out
    }

    /// The 2-dim character `rho_j` for `0 < j < n`, j != n/2, folded into range.
    pub fn two_dim(n: usize, j: usize) -> Irr {
        let j = j % n;
        assert!(j != 0 && 2 * j != n, "rho_{j} is reducible for n = {n}");
        Irr::Rho(j.min(n - j))
    }

    /// Inverse of `Display` for the dihedral group of order 2n.
    pub fn parse(s: &str, n: usize) -> Option<Irr> {
        let s = s.trim();
        let (body, prime) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        if let Some(j) = body.strip_prefix("eps") {
            return if prime { None } else { j.parse().ok().map(Irr::Eps) };
        }
        let j: usize = body.strip_prefix("rho")?.parse().ok()?;
        Some(match (j, prime) {
            (0, false) => Irr::Rho0,
            (0, true) => Irr::Rho0P,
            (_, false) if 2 * j == n => Irr::Half(j),
            (_, true) if 2 * j == n => Irr::HalfP(j),
            (_, false) if 2 * j < n => Irr::Rho(j),
            _ => return None,
        })
    }
}

impl fmt::Display for Irr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irr::Rho0 => write!(f, "rho0"),
            Irr::Rho0P => write!(f, "rho0'"),
            Irr::Rho(j) | Irr::Half(j) => write!(f, "rho{j}"),
            Irr::HalfP(j) => write!(f, "rho{j}'"),
            Irr::Eps(j) => write!(f, "eps{j}"),
        }
    }
}

impl Serialize for Irr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Class function; `values[c]` is the value on `classes(group)[c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub group: GroupSpec,
    pub values: Vec<CycloElt>,
    pub name: Option<Irr>,
}

impl Character {
    pub fn new(group: GroupSpec, values: Vec<CycloElt>) -> Self {
        assert_eq!(values.len(), classes(group).len());
        Character { group, values, name: None }
    }

    pub fn zero(group: GroupSpec) -> Self {
        let k = classes(group).len();
        Self::new(group, vec![CycloElt::zero(group.n); k])
    }

    pub fn degree(&self) -> Rat {
        self.values[0].expect_rational().expect("degree is rational")
    }

    pub fn value(&self, e: GroupElem) -> &CycloElt {
        &self.values[class_index(self.group, e)]
    }

    fn zip(&self, other: &Self, f: impl Fn(&CycloElt, &CycloElt) -> CycloElt) -> Self {
        assert_eq!(self.group, other.group, "characters of different groups");
        Self::new(self.group, self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.group, self.values.iter().map(|a| a.scale(c)).collect())
    }

    /// Values agree at a primitive root of unity.
    pub fn value_eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.values.iter().zip(&other.values).all(|(a, b)| a.value_eq(b))
    }

    /// `g -> chi(g^e)`.
    pub fn power(&self, e: usize) -> Self {
        let cls = classes(self.group);
        let values = cls
            .iter()
            .map(|c| {
                let g = class_representative(c.label);
                let h = if g.reflection {
                    if e.is_multiple_of(2) {
                        GroupElem { reflection: false, k: 0 }
                    } else {
                        g
                    }
                } else {
                    GroupElem { reflection: false, k: (g.k * e) % self.group.n }
                };
                self.value(h).clone()
            })
            .collect();
        Self::new(self.group, values)
    }

    /// Determinant of a degree-2 character: `(chi(g)^2 - chi(g^2)) / 2`.
    pub fn det2(&self) -> Self {
        assert_eq!(self.degree(), int(2), "det2 needs a degree-2 character");
        self.tensor(self).sub(&self.power(2)).scale(&Rat::new(1.into(), 2.into()))
    }
}

/// Multiplicities of irreducibles in a genuine representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RClass {
    pub mult: BTreeMap<Irr, u64>,
}

impl RClass {
    pub fn of(items: &[(Irr, u64)]) -> Self {
        let mut c = RClass::default();
        for &(r, k) in items {
            c.add_irr(r, k);
        }
        c
    }

    pub fn add_irr(&mut self, r: Irr, k: u64) {
        if k > 0 {
            *self.mult.entry(r).or_insert(0) += k;
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut c = self.clone();
        for (&r, &k) in &other.mult {
            c.add_irr(r, k);
        }
        c
    }

    pub fn get(&self, r: Irr) -> u64 {
        self.mult.get(&r).copied().unwrap_or(0)
    }

    pub fn contains(&self, r: Irr) -> bool {
        self.get(r) > 0
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.mult.iter().map(|(r, k)| r.degree() * k).sum()
    }
}

impl fmt::Display for RClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .mult
            .iter()
            .map(|(r, k)| if *k == 1 { r.to_string() } else { format!("{k}{r}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for RClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub group: GroupSpec,
    pub classes: Vec<ConjClass>,
    pub chars: Vec<Character>,
}

pub fn char_table(g: GroupSpec) -> CharTable {
    let n = g.n;
    let cls = classes(g);
    let chars = match g.kind {
        GroupKind::Cyclic => (0..n)
            .map(|j| {
                let values = (0..n).map(|i| CycloElt::root(n, (i * j) as i64)).collect();
                Character { group: g, values, name: Some(Irr::Eps(j)) }
            })
            .collect(),
        GroupKind::Dihedral => Irr::dihedral_list(n)
            .into_iter()
            .map(|r| {
                let values = cls.iter().map(|c| dihedral_value(n, r, c.label)).collect();
                Character { group: g, values, name: Some(r) }
            })
            .collect(),
    };
    CharTable { group: g, classes: cls, chars }
}

fn dihedral_value(n: usize, r: Irr, c: ClassLabel) -> CycloElt {
    let sign = |neg: bool| CycloElt::constant(n, int(if neg { -1 } else { 1 }));
    match (r, c) {
        (Irr::Rho0, _) => CycloElt::one(n),
        (Irr::Rho0P, ClassLabel::TauClass(_)) => sign(true),
        (Irr::Rho0P, _) => CycloElt::one(n),
        (Irr::Rho(_), ClassLabel::Identity) => CycloElt::constant(n, int(2)),
        (Irr::Rho(j), ClassLabel::SigmaPower(i)) => {
            let e = (i * j) as i64;
            &CycloElt::root(n, e) + &CycloElt::root(n, -e)
        }
        (Irr::Rho(_), ClassLabel::TauClass(_)) => CycloElt::zero(n),
        (Irr::Half(_) | Irr::HalfP(_), ClassLabel::Identity) => CycloElt::one(n),
        (Irr::Half(_) | Irr::HalfP(_), ClassLabel::SigmaPower(i)) => sign(i % 2 == 1),
        (Irr::Half(_), ClassLabel::TauClass(k)) => sign(k % 2 == 1),
        (Irr::HalfP(_), ClassLabel::TauClass(k)) => sign(k % 2 == 0),
        (Irr::Eps(_), _) => panic!("eps is not a dihedral character"),
    }
}

impl CharTable {
    pub fn irr(&self, r: Irr) -> &Character {
        self.chars
            .iter()
            .find(|c| c.name == Some(r))
            .unwrap_or_else(|| panic!("{r} is not an irreducible of {:?}", self.group))
    }

    pub fn names(&self) -> Vec<Irr> {
        self.chars.iter().filter_map(|c| c.name).collect()
    }

    pub fn regular(&self) -> Character {
        let mut values = vec![CycloElt::zero(self.group.n); self.classes.len()];
        values[0] = CycloElt::constant(self.group.n, int(self.group.order() as i64));
        Character::new(self.group, values)
    }

    /// Exact value of `(1/|G|) sum |c| chi(c) conj(psi(c))`.
    pub fn inner_product_value(&self, chi: &Character, psi: &Character) -> Result<Rat, ReprError> {
        if chi.group != self.group || psi.group != self.group {
            return Err(ReprError::GroupMismatch);
        }
        let n = self.group.n;
        let mut acc = CycloElt::zero(n);
        for (c, (a, b)) in self.classes.iter().zip(chi.values.iter().zip(&psi.values)) {
            acc.add_conj_product(a, b, &int(c.size as i64))?;
        }
        let v = acc.primitive_value()?;
        Ok(v / int(self.group.order() as i64))
    }

    pub fn inner_product(&self, chi: &Character, psi: &Character) -> Result<u64, ReprError> {
        let v = self.inner_product_value(chi, psi)?;
        if is_integer(&v) && !v.is_negative() {
            Ok(v.to_integer().to_u64().expect("multiplicity fits in u64"))
        } else {
            Err(ReprError::NotACharacter(format!("inner product {v}")))
        }
    }

    pub fn decompose(&self, chi: &Character) -> Result<RClass, ReprError> {
        let mut out = RClass::default();
        let mut rebuilt = Character::zero(self.group);
        for irr in &self.chars {
            let k = self.inner_product(chi, irr).map_err(|e| match e {
                ReprError::NotACharacter(m) => {
                    ReprError::NotACharacter(format!("{m} against {}", irr.name.unwrap()))
                }
                e => e,
            })?;
            out.add_irr(irr.name.unwrap(), k);
            rebuilt = rebuilt.add(&irr.scale(&int(k as i64)));
        }
        if !rebuilt.value_eq(chi) {
            return Err(ReprError::NotACharacter("not in the span of the irreducibles".into()));
        }
        Ok(out)
    }

    pub fn compose(&self, c: &RClass) -> Character {
        c.mult.iter().fold(Character::zero(self.group), |acc, (r, k)| {
            acc.add(&self.irr(*r).scale(&int(*k as i64)))
        })
    }
}

/// Restriction from `D_2n` to the rotation subgroup.
pub fn restrict(chi: &Character) -> Character {
    assert_eq!(chi.group.kind, GroupKind::Dihedral);
    let g = GroupSpec::cyclic(chi.group.n);
    let values = (0..g.n).map(|k| chi.value(GroupElem { reflection: false, k }).clone()).collect();
    Character::new(g, values)
}

/// Induction from the rotation subgroup (index 2) to `D_2n`.
pub fn induce(eps: &Character) -> Character {
    assert_eq!(eps.group.kind, GroupKind::Cyclic);
    let n = eps.group.n;
    let g = GroupSpec::dihedral(n);
    let values = classes(g)
        .iter()
        .map(|c| match c.label {
            ClassLabel::TauClass(_) => CycloElt::zero(n),
            label => {
                // conjugates of sigma^k inside D_2n are sigma^{+-k}
                let k = class_representative(label).k;
                &eps.values[k % n] + &eps.values[(n - k) % n]
            }
        })
        .collect();
    Character::new(g, values)
}

#[derive(Clone, Debug, Serialize)]
pub struct Quiver {
    pub n: usize,
    pub vertices: Vec<Irr>,
    pub adjacency: Vec<Vec<u64>>,
    /// Loops present in the character computation; see `loop_note`.
    pub loops: Vec<Irr>,
}

impl Quiver {
    pub fn edges(&self) -> Vec<(Irr, Irr, u64)> {
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i..self.vertices.len() {
                if self.adjacency[i][j] > 0 {
                    out.push((self.vertices[i], self.vertices[j], self.adjacency[i][j]));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: Irr) -> usize {
        let i = self.vertices.iter().position(|&w| w == v).expect("vertex");
        (0..self.vertices.len()).filter(|&j| j != i && self.adjacency[i][j] > 0).count()
    }

    /// The drawn odd-n diagram ends in a plain vertex at `rho_m`; the
    /// characters give a loop there because `rho_{m+1} = rho_m`.
    pub fn loop_note(&self) -> Option<String> {
        (!self.loops.is_empty()).then(|| {
            let names: Vec<String> = self.loops.iter().map(Irr::to_string).collect();
            format!("loop at {} (not drawn in the usual odd-n diagram)", names.join(", "))
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("graph mckay_d{} {{\n", 2 * self.n);
        for v in &self.vertices {
            s += &format!("  \"{v}\";\n");
        }
        for (a, b, k) in self.edges() {
            s += &format!("  \"{a}\" -- \"{b}\" [label=\"{k}\"];\n");
        }
        s += "}\n";
        s
    }
}

pub fn mckay_quiver(n: usize) -> Quiver {
    assert!(n >= 3, "quiver needs n >= 3");
    let t = char_table(GroupSpec::dihedral(n));
    let nat = t.irr(Irr::Rho(1));
    let adjacency: Vec<Vec<u64>> = t
        .chars
        .iter()
        .map(|a| {
            let prod = nat.tensor(a);
            t.chars.iter().map(|b| t.inner_product(&prod, b).expect("genuine character")).collect()
        })
        .collect();
    let vertices = t.names();
    let loops = (0..vertices.len()).filter(|&i| adjacency[i][i] > 0).map(|i| vertices[i]).collect();
    Quiver { n, vertices, adjacency, loops }
}

/// Sum of squares of degrees equals the group order.
pub fn degree_square_sum(t: &CharTable) -> Rat {
    t.chars.iter().map(|c| c.degree() * c.degree()).fold(Rat::zero(), |a, b| a + b)
}

/// Row orthonormality and column orthogonality, checked exactly.
pub fn check_orthogonality(t: &CharTable) -> Result<(), String> {
    let n = t.group.n;
    let order = t.group.order() as i64;
    let sizes: Vec<i64> = t.classes.iter().map(|c| c.size as i64).collect();
    // integer coefficient vectors; falls back to exact rationals otherwise
    let ints: Option<Vec<Vec<Sparse>>> = t.chars.iter().map(|c| c.values.iter().map(sparse_int).collect()).collect();
    let value = |terms: &mut dyn FnMut(&mut Vec<i64>)| -> Result<Rat, String> {
        let mut acc = vec![0i64; n];
        terms(&mut acc);
        match CycloElt::primitive_value_int(&acc) {
            Some(v) => Ok(int(v)),
            None => CycloElt::from_coeffs(acc.into_iter().map(int).collect()).primitive_value().map_err(|e| e.to_string()),
        }
    };
    for (i, a) in t.chars.iter().enumerate() {
        for (j, b) in t.chars.iter().enumerate() {
            let v = match &ints {
                Some(iv) => {
                    value(&mut |acc| {
                        for c in 0..sizes.len() {
                            conj_fma(acc, &iv[i][c], &iv[j][c], sizes[c]);
                        }
                    })? / int(order)
                }
                None => t.inner_product_value(a, b).map_err(|e| e.to_string())?,
            };
            let want = if i == j { Rat::one() } else { Rat::zero() };
            if v != want {
                return Err(format!("<{}, {}> = {v}", a.name.unwrap(), b.name.unwrap()));
            }
        }
    }
    for (c, cc) in t.classes.iter().enumerate() {
        for (d, cd) in t.classes.iter().enumerate() {
            let v = match &ints {
                Some(iv) => value(&mut |acc| {
                    for chi in iv {
                        conj_fma(acc, &chi[c], &chi[d], 1);
                    }
                })?,
                None => {
                    let mut acc = CycloElt::zero(n);
                    for chi in &t.chars {
                        acc.add_conj_product(&chi.values[c], &chi.values[d], &Rat::one()).map_err(|e| e.to_string())?;
                    }
                    acc.primitive_value().map_err(|e| e.to_string())?
                }
            };
            let want = if c == d { int(order / sizes[c]) } else { Rat::zero() };
            if v != want {
                return Err(format!("columns {} and {}: {v}", cc.label, cd.label));
            }
        }
    }
    Ok(())
}

type Sparse = Vec<(usize, i64)>;

fn sparse_int(e: &CycloElt) -> Option<Sparse> {
    e.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| if is_integer(c) { c.to_integer().to_i64().map(|v| (k, v)) } else { None })
        .collect()
}

fn conj_fma(acc: &mut [i64], a: &[(usize, i64)], b: &[(usize, i64)], s: i64) {
    let n = acc.len();
    for &(i, x) in a {
        for &(j, y) in b {
            acc[(i + n - j) % n] += s * x * y;
        }
    }
}
