//! D_2n-constellations built from Z_n-clusters: action matrices, regularity,
//! top and socle, submodule closures and a finite-family theta check.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{int, rat, CycloElt, Rat};
use crate::hilb::{cluster_ideal, swap_ideal, ClusterPoint};
use crate::linalg::{Matrix, Span};
use crate::polyring::{Ideal, Poly, Quotient};
use crate::repr::{char_table, ClassLabel, Character, GroupSpec, Irr, RClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstelError {
    #[error("quotient has dimension {0}, expected {1}")]
    WrongDimension(usize, usize),
    #[error("ideal is not Z_n-homogeneous")]
    NotGraded,
    #[error("theta sums to {0} on the regular representation")]
    ThetaNotBalanced(String),
    #[error("theta is not generic: a proper dimension vector has theta = 0")]
    ThetaNotGeneric,
    #[error("expected {0} theta values, got {1}")]
    ThetaArity(usize, usize),
}

/// Z_2-twist of a fixed cluster: `tau` acts on the `delta_k` copy by
/// `(-1)^(k+1)` times the swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Twist {
    Delta0,
    Delta1,
}

impl Twist {
    fn sign(self) -> Rat {
        match self {
            Twist::Delta0 => int(-1),
            Twist::Delta1 => int(1),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Twist::Delta0 => "d0",
            Twist::Delta1 => "d1",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Constellation {
    pub n: usize,
    pub labels: Vec<String>,
    pub x: Matrix<Rat>,
    pub y: Matrix<Rat>,
    pub tau: Matrix<Rat>,
    pub weights: Vec<usize>,
    /// For fixed clusters: the twist and the basis indices of that summand.
    pub twist: Option<(Twist, Vec<usize>)>,
}

fn mono_weight(n: usize, e: [u32; 3]) -> usize {
    ((e[0] as i64 - e[1] as i64).rem_euclid(n as i64)) as usize
}

fn block_diag(a: &Matrix<Rat>, b: &Matrix<Rat>) -> Matrix<Rat> {
    let (p, q) = (a.rows(), b.rows());
    let mut rows = vec![vec![Rat::zero(); p + q]; p + q];
    for (i, r) in rows.iter_mut().enumerate().take(p) {
        r[..p].clone_from_slice(&a.row(i));
    }
    for i in 0..q {
        for j in 0..q {
            rows[p + i][p + j] = b.row(i)[j].clone();
        }
    }
    Matrix::from_rows(rows)
}

fn quotient(n: usize, ideal: Ideal) -> Result<Quotient, ConstelError> {
    let q = Quotient::new(ideal).map_err(|_| ConstelError::WrongDimension(usize::MAX, n))?;
    if q.dim() != n {
        return Err(ConstelError::WrongDimension(q.dim(), n));
    }
    for g in q.ideal.basis() {
        let ws: Vec<usize> = g.terms().map(|(m, _)| mono_weight(n, m.0)).collect();
        if ws.windows(2).any(|w| w[0] != w[1]) {
            return Err(ConstelError::NotGraded);
        }
    }
    Ok(q)
}

fn basis_monos(q: &Quotient) -> Vec<[u32; 3]> {
    (0..q.dim()).map(|k| q.basis_poly(k).leading_mono().unwrap().0).collect()
}

fn mono_label(e: [u32; 3]) -> String {
    Poly::term(2, e, Rat::one()).fmt_with(&["x", "y"])
}

/// Matrix of `f -> swap(f)` from `C[x,y]/a` to `C[x,y]/b`.
fn swap_matrix(a: &Quotient, b: &Quotient) -> Matrix<Rat> {
    let cols: Vec<Vec<Rat>> = (0..a.dim()).map(|k| b.coords(&a.basis_poly(k).swap_xy())).collect();
    Matrix::from_cols(&cols, b.dim())
}

impl Constellation {
    /// Constellation over the point of `Y` given by a Z_n-cluster ideal:
    /// `O_Z + O_(tau Z)` for a free `tau`-orbit, otherwise the two twists of
    /// `O_Z` with `twist` marking the stacky summand.
    pub fn from_ideal(n: usize, ideal: Ideal, twist: Twist) -> Result<Self, ConstelError> {
        let q1 = quotient(n, ideal.clone())?;
        let sw = swap_ideal(&ideal);
        let x1 = q1.mul_matrix(&Poly::var(2, 0));
        let y1 = q1.mul_matrix(&Poly::var(2, 1));
        let m1 = basis_monos(&q1);
        let w1: Vec<usize> = m1.iter().map(|e| mono_weight(n, *e)).collect();
        if sw == ideal {
            let s = swap_matrix(&q1, &q1);
            let mut labels = Vec::new();
            for t in [Twist::Delta0, Twist::Delta1] {
                labels.extend(m1.iter().map(|e| format!("{}*{}", mono_label(*e), t.tag())));
            }
            let tau = block_diag(&scale(&s, &Twist::Delta0.sign()), &scale(&s, &Twist::Delta1.sign()));
            let idx = match twist {
                Twist::Delta0 => (0..n).collect(),
                Twist::Delta1 => (n..2 * n).collect(),
            };
            return Ok(Constellation {
                n,
                labels,
                x: block_diag(&x1, &x1),
                y: block_diag(&y1, &y1),
                tau,
                weights: [w1.clone(), w1].concat(),
                twist: Some((twist, idx)),
            });
        }
        let q2 = quotient(n, sw)?;
        let m2 = basis_monos(&q2);
        let s12 = swap_matrix(&q1, &q2);
        let s21 = swap_matrix(&q2, &q1);
        let mut tau = vec![vec![Rat::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                tau[n + i][j] = s12.row(i)[j].clone();
                tau[i][n + j] = s21.row(i)[j].clone();
            }
        }
        let mut labels: Vec<String> = m1.iter().map(|e| format!("{}|Z", mono_label(*e))).collect();
        labels.extend(m2.iter().map(|e| format!("{}|tZ", mono_label(*e))));
        Ok(Constellation {
            n,
            labels,
            x: block_diag(&x1, &q2.mul_matrix(&Poly::var(2, 0))),
            y: block_diag(&y1, &q2.mul_matrix(&Poly::var(2, 1))),
            tau: Matrix::from_rows(tau),
            weights: [w1, m2.iter().map(|e| mono_weight(n, *e)).collect()].concat(),
            twist: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Structural checks: commuting actions, `tau^2 = 1`, `tau x tau = y`,
    /// and the weight grading.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n;
        let id = Matrix::identity(self.dim());
        let graded = |m: &Matrix<Rat>, shift: i64| {
            (0..self.dim()).all(|i| {
                (0..self.dim()).all(|j| {
                    m.row(i)[j].is_zero() || self.weights[i] as i64 == (self.weights[j] as i64 + shift).rem_euclid(n as i64)
                })
            })
        };
        let tau_graded = (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                self.tau.row(i)[j].is_zero() || (self.weights[i] + self.weights[j]).is_multiple_of(n)
            })
        });
        self.x.matmul(&self.y) == self.y.matmul(&self.x)
            && self.tau.matmul(&self.tau) == id
            && self.tau.matmul(&self.x).matmul(&self.tau) == self.y
            && graded(&self.x, 1)
            && graded(&self.y, n as i64 - 1)
            && tau_graded
    }

    pub fn character(&self) -> Character {
        graded_character(self, &ident_rows(self.dim()))
    }
}

fn scale(m: &Matrix<Rat>, c: &Rat) -> Matrix<Rat> {
    Matrix::from_rows((0..m.rows()).map(|i| m.row(i).iter().map(|v| v * c).collect()).collect())
}

trait RowsVec {
    fn rows_vec(&self) -> Vec<Vec<Rat>>;
}

impl RowsVec for Matrix<Rat> {
    fn rows_vec(&self) -> Vec<Vec<Rat>> {
        (0..self.rows()).map(|i| self.row(i)).collect()
    }
}

pub fn constellation_from_cluster(n: usize, p: &ClusterPoint, twist: Twist) -> Result<Constellation, ConstelError> {
    Constellation::from_ideal(n, cluster_ideal(n, p), twist)
}

/// `<xy - c, x^n - a, y^n - b>` with `ab = c^n`: a cluster away from the
/// exceptional locus.
pub fn free_cluster_ideal(n: usize, a: Rat, b: Rat, c: Rat) -> Ideal {
    let nn = n as u32;
    Ideal::new(vec![
        &Poly::term(2, [1, 1, 0], int(1)) - &Poly::constant(2, c),
        &Poly::term(2, [nn, 0, 0], int(1)) - &Poly::constant(2, a),
        &Poly::term(2, [0, nn, 0], int(1)) - &Poly::constant(2, b),
    ])
}

fn weight_part(f: &Constellation, v: &[Rat], w: usize) -> Vec<Rat> {
    v.iter().enumerate().map(|(i, c)| if f.weights[i] == w { c.clone() } else { Rat::zero() }).collect()
}

/// Character of a `tau`-stable, weight-graded subspace spanned by `basis`.
pub fn graded_character(f: &Constellation, basis: &[Vec<Rat>]) -> Character {
    let n = f.n;
    let g = GroupSpec::dihedral(n);
    let parts: Vec<Vec<Vec<Rat>>> = (0..n)
        .map(|w| {
            let mut s = Span::new(f.dim());
            for v in basis {
                s.insert(&weight_part(f, v, w));
            }
            s.basis()
        })
        .collect();
    let tau_trace = |w: usize| -> Rat {
        let b = &parts[w];
        if b.is_empty() {
            return Rat::zero();
        }
        let m = Matrix::from_cols(b, f.dim());
        b.iter()
            .enumerate()
            .map(|(k, v)| {
                let c = m.solve(&f.tau.mul_vec(v)).expect("subspace is tau-stable");
                c[k].clone()
            })
            .sum()
    };
    let values = crate::repr::classes(g)
        .iter()
        .map(|c| match c.label {
            ClassLabel::Identity => CycloElt::constant(n, int(basis_dim(&parts) as i64)),
            ClassLabel::SigmaPower(i) => (0..n).fold(CycloElt::zero(n), |acc, w| {
                &acc + &CycloElt::monomial(n, (i * w) as i64, int(parts[w].len() as i64))
            }),
            ClassLabel::TauClass(j) => (0..n)
                .filter(|w| (2 * w) % n == 0)
                .fold(CycloElt::zero(n), |acc, w| &acc + &CycloElt::monomial(n, (j * w) as i64, tau_trace(w))),
        })
        .collect();
    Character::new(g, values)
}

fn basis_dim(parts: &[Vec<Vec<Rat>>]) -> usize {
    parts.iter().map(Vec::len).sum()
}

pub fn class_of(f: &Constellation, basis: &[Vec<Rat>]) -> RClass {
    char_table(GroupSpec::dihedral(f.n))
        .decompose(&graded_character(f, basis))
        .expect("graded tau-stable subspaces carry genuine characters")
}

pub fn regular_check(f: &Constellation) -> bool {
    let t = char_table(GroupSpec::dihedral(f.n));
    f.dim() == 2 * f.n && graded_character(f, &ident_rows(f.dim())).value_eq(&t.regular())
}

fn ident_rows(d: usize) -> Vec<Vec<Rat>> {
    (0..d).map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

fn image_basis(f: &Constellation) -> Vec<Vec<Rat>> {
    let mut s = Span::new(f.dim());
    for m in [&f.x, &f.y] {
        for j in 0..f.dim() {
            s.insert(&m.col(j));
        }
    }
    s.basis()
}

/// `F / <x, y> F`.
pub fn top(f: &Constellation) -> RClass {
    let t = char_table(GroupSpec::dihedral(f.n));
    let whole = graded_character(f, &ident_rows(f.dim()));
    let img = graded_character(f, &image_basis(f));
    t.decompose(&whole.sub(&img)).expect("quotient character")
}

/// Joint kernel of `x` and `y` on the whole module.
pub fn socle_full(f: &Constellation) -> RClass {
    let stacked = Matrix::from_rows([f.x.rows_vec(), f.y.rows_vec()].concat());
    class_of(f, &stacked.kernel())
}

/// Socle; on a fixed cluster it is read on the twisted summand.
pub fn socle(f: &Constellation) -> RClass {
    let stacked = Matrix::from_rows([f.x.rows_vec(), f.y.rows_vec()].concat());
    let ker = stacked.kernel();
    match &f.twist {
        None => class_of(f, &ker),
        Some((_, idx)) => {
            let part: Vec<Vec<Rat>> = ker
                .into_iter()
                .filter(|v| v.iter().enumerate().all(|(i, c)| c.is_zero() || idx.contains(&i)))
                .collect();
            class_of(f, &part)
        }
    }
}

/// Smallest subspace containing `seeds` and closed under `x`, `y`, `tau`
/// and the weight projections.
pub fn submodule_closure(f: &Constellation, seeds: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, RClass) {
    let mut span = Span::new(f.dim());
    let mut queue: Vec<Vec<Rat>> = Vec::new();
    for v in seeds {
        for w in 0..f.n {
            let p = weight_part(f, v, w);
            if span.insert(&p) {
                queue.push(p);
            }
        }
    }
    while let Some(v) = queue.pop() {
        for m in [&f.x, &f.y, &f.tau] {
            let u = m.mul_vec(&v);
            // images of a weight vector are weight vectors
            if span.insert(&u) {
                queue.push(u);
            }
        }
    }
    let basis = span.basis();
    let cls = class_of(f, &basis);
    (basis, cls)
}

/// `theta : Irr -> Q` with `sum deg(rho) theta(rho) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityParam {
    pub n: usize,
    pub theta: BTreeMap<Irr, Rat>,
}

impl StabilityParam {
    pub fn new(n: usize, theta: BTreeMap<Irr, Rat>) -> Result<Self, ConstelError> {
        let s: Rat = Irr::dihedral_list(n).iter().map(|r| theta.get(r).cloned().unwrap_or_default() * int(r.degree() as i64)).sum();
        if !s.is_zero() {
            return Err(ConstelError::ThetaNotBalanced(s.to_string()));
        }
        Ok(StabilityParam { n, theta })
    }

    /// Values in table order.
    pub fn from_values(n: usize, vals: &[Rat]) -> Result<Self, ConstelError> {
        let irrs = Irr::dihedral_list(n);
        if irrs.len() != vals.len() {
            return Err(ConstelError::ThetaArity(irrs.len(), vals.len()));
        }
        Self::new(n, irrs.into_iter().zip(vals.iter().cloned()).collect())
    }

    pub fn generic(n: usize, theta: BTreeMap<Irr, Rat>) -> Result<Self, ConstelError> {
        let p = Self::new(n, theta)?;
        if !p.is_generic() {
            return Err(ConstelError::ThetaNotGeneric);
        }
        Ok(p)
    }

    pub fn eval(&self, c: &RClass) -> Rat {
        c.mult.iter().map(|(r, k)| self.theta.get(r).cloned().unwrap_or_default() * int(*k as i64)).sum()
    }

    /// No dimension vector `0 < d < dim C[G]` has `theta(d) = 0`.
    pub fn is_generic(&self) -> bool {
        // reachable (value, empty, full) triples
        let mut states: std::collections::BTreeSet<(Rat, bool, bool)> = [(Rat::zero(), true, true)].into();
        for r in Irr::dihedral_list(self.n) {
            let t = self.theta.get(&r).cloned().unwrap_or_default();
            let top = r.degree();
            let mut next = std::collections::BTreeSet::new();
            for (v, e, fl) in &states {
                for k in 0..=top {
                    next.insert((v + &t * int(k as i64), *e && k == 0, *fl && k == top));
                }
            }
            states = next;
        }
        !states.iter().any(|(v, e, fl)| v.is_zero() && !e && !fl)
    }
}

impl fmt::Display for StabilityParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = Irr::dihedral_list(self.n)
            .iter()
            .map(|r| format!("{r}={}", self.theta.get(r).cloned().unwrap_or_default()))
            .collect();
        write!(f, "{}", v.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NoViolationFound,
    DestabilizedBy { seeds: Vec<usize>, class: RClass, value: String },
}

/// Single basis vectors, and sums of two basis vectors of equal weight.
pub fn default_family(f: &Constellation) -> Vec<Vec<usize>> {
    let mut fam: Vec<Vec<usize>> = (0..f.dim()).map(|i| vec![i]).collect();
    for i in 0..f.dim() {
        for j in i + 1..f.dim() {
            if f.weights[i] == f.weights[j] {
                fam.push(vec![i, j]);
            }
        }
    }
    fam
}

/// Sound but incomplete: each family member is a vector (sum of the listed
/// basis vectors); its closure is tested when proper.
pub fn theta_check(f: &Constellation, theta: &StabilityParam, family: &[Vec<usize>]) -> Verdict {
    for seeds in family {
        let mut v = vec![Rat::zero(); f.dim()];
        for &i in seeds {
            v[i] += Rat::one();
        }
        let (basis, cls) = submodule_closure(f, &[v]);
        if basis.is_empty() || basis.len() == f.dim() {
            continue;
        }
        let val = theta.eval(&cls);
        if !val.is_positive() {
            return Verdict::DestabilizedBy { seeds: seeds.clone(), class: cls, value: val.to_string() };
        }
    }
    Verdict::NoViolationFound
}

// ---------------------------------------------------------------------------
// strata

#[derive(Debug, Clone, Serialize)]
pub struct StratumRow {
    pub stratum: String,
    pub witness: String,
    pub exceptional: bool,
    /// Curves `E_i` of `Y_1` containing the stratum.
    pub curves: Vec<usize>,
    pub socle: RClass,
    pub top: RClass,
    pub expected_socle: RClass,
    pub matches: bool,
    pub regular: bool,
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub stratum: String,
    pub label: String,
    pub exceptional: bool,
    pub curves: Vec<usize>,
    pub module: Constellation,
    pub expected_socle: RClass,
}

fn one(r: Irr) -> RClass {
    RClass::of(&[(r, 1)])
}

/// Witness constellations for every stratum, with the socle the
/// classification assigns to it. `alpha` is the generic chart parameter.
pub fn stratum_witnesses(n: usize, alpha: &Rat) -> Result<Vec<Witness>, ConstelError> {
    let m = n / 2;
    let even = n.is_multiple_of(2);
    let mut out = Vec::new();
    let mut push = |stratum: String, curves: Vec<usize>, p: ClusterPoint, twist: Twist, exp: RClass| -> Result<(), ConstelError> {
        out.push(Witness {
            stratum,
            label: format!("{p} {}", twist.tag()),
            exceptional: true,
            curves,
            module: constellation_from_cluster(n, &p, twist)?,
            expected_socle: exp,
        });
        Ok(())
    };
    let generic_top = if even { m - 1 } else { m };
    for i in 1..=generic_top {
        push(format!("E{i}"), vec![i], ClusterPoint::new(i, Rat::one(), alpha.clone()).unwrap(), Twist::Delta1, one(Irr::Rho(i)))?;
    }
    for i in 1..m {
        let exp = if even && i + 1 == m {
            RClass::of(&[(Irr::Rho(i), 1), (Irr::Half(m), 1), (Irr::HalfP(m), 1)])
        } else {
            RClass::of(&[(Irr::Rho(i), 1), (Irr::Rho(i + 1), 1)])
        };
        push(format!("E{i}^E{}", i + 1), vec![i, i + 1], ClusterPoint::ints(i, 0, 1), Twist::Delta1, exp)?;
    }
    if even {
        // the point (1 - alpha : 1 + alpha) of E~_m, off both fixed points
        let p = ClusterPoint::new(m, Rat::one() - alpha, Rat::one() + alpha).unwrap();
        push(format!("E{m}"), vec![m], p, Twist::Delta1, RClass::of(&[(Irr::Half(m), 1), (Irr::HalfP(m), 1)]))?;
        push("B1".into(), vec![m], ClusterPoint::ints(m, 1, -1), Twist::Delta1, one(Irr::HalfP(m)))?;
        push("B2".into(), vec![m], ClusterPoint::ints(m, 1, 1), Twist::Delta1, one(Irr::Half(m)))?;
    } else {
        push(format!("E{m}^B3"), vec![m], ClusterPoint::ints(m, 0, 1), Twist::Delta1, one(Irr::Rho(m)))?;
    }
    // away from the exceptional locus, off and on the boundary
    let c = Rat::one() + alpha;
    let a = c.clone() + Rat::one();
    let cn = (0..n).fold(Rat::one(), |acc, _| acc * &c);
    let b = &cn / &a;
    let off = [("Y-Exc".to_string(), free_cluster_ideal(n, a, b, c.clone()))];
    let on = if even {
        // on B1: (x^m + y^m)^2 = a + b + 2c^m = 0, so a = b = -s^n with c = s^2
        let s = Rat::one() + alpha;
        let sn = (0..n).fold(Rat::one(), |acc, _| acc * &s);
        vec![("B1-Exc".to_string(), free_cluster_ideal(n, -sn.clone(), -sn, &s * &s))]
    } else {
        // on B3: x^n = y^n, so a = b = s^n with c = s^2
        let s = Rat::one() + alpha;
        let sn = (0..n).fold(Rat::one(), |acc, _| acc * &s);
        vec![("B3-Exc".to_string(), free_cluster_ideal(n, sn.clone(), sn, &s * &s))]
    };
    for (s, ideal) in off.into_iter().chain(on) {
        out.push(Witness {
            stratum: s.clone(),
            label: s,
            exceptional: false,
            curves: Vec::new(),
            module: Constellation::from_ideal(n, ideal, Twist::Delta1)?,
            expected_socle: RClass::default(),
        });
    }
    Ok(out)
}

pub fn socle_table(n: usize, alpha: &Rat) -> Result<Vec<StratumRow>, ConstelError> {
    Ok(stratum_witnesses(n, alpha)?
        .into_iter()
        .map(|w| {
            let s = socle(&w.module);
            StratumRow {
                stratum: w.stratum,
                witness: w.label,
                exceptional: w.exceptional,
                curves: w.curves,
                matches: s == w.expected_socle,
                top: top(&w.module),
                regular: regular_check(&w.module),
                socle: s,
                expected_socle: w.expected_socle,
            }
        })
        .collect())
}

/// Default generic parameter for witnesses.
pub fn default_alpha() -> Rat {
    rat(1, 2)
}
