//! Groebner computations against a Macaulay-matrix oracle: the span of all
//! `m * g` with `deg(m * g) <= D` inside the polynomials of degree `<= D`.

use dmckay::exactnum::{int, rat, Rat};
use dmckay::hilb::{cluster_ideal, ClusterPoint};
use dmckay::linalg::Span;
use dmckay::polyring::{reduce, Ideal, Mono, Poly};
use num_traits::Zero;
use proptest::prelude::*;

fn monos(d: u32) -> Vec<(u32, u32)> {
    (0..=d).flat_map(|t| (0..=t).map(move |b| (t - b, b))).collect()
}

struct Macaulay {
    d: u32,
    idx: Vec<(u32, u32)>,
    span: Span<Rat>,
}

impl Macaulay {
    fn new(gens: &[Poly], d: u32) -> Self {
        let idx = monos(d);
        let mut span = Span::new(idx.len());
        for g in gens {
            let gd = g.total_degree().unwrap_or(0);
            for (a, b) in monos(d.saturating_sub(gd)) {
                let v = vec_of(&idx, &g.mul_term(&Mono([a, b, 0]), &int(1)));
                span.insert(&v);
            }
        }
        Macaulay { d, idx, span }
    }

    fn codim(&self) -> usize {
        self.idx.len() - self.span.dim()
    }

    fn contains(&self, f: &Poly) -> bool {
        assert!(f.total_degree().unwrap_or(0) <= self.d);
        self.span.contains(&vec_of(&self.idx, f))
    }
}

fn vec_of(idx: &[(u32, u32)], f: &Poly) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); idx.len()];
    for (m, c) in f.terms() {
        let k = idx.iter().position(|&(a, b)| m.0 == [a, b, 0]).expect("degree within bound");
        v[k] = c.clone();
    }
    v
}

/// Colength by the oracle: `codim` stabilizes once `D` is large.
fn oracle_colength(gens: &[Poly], d: u32) -> usize {
    let a = Macaulay::new(gens, d).codim();
    let b = Macaulay::new(gens, d + 2).codim();
    assert_eq!(a, b, "Macaulay codimension not yet stable at degree {d}");
    a
}

fn p(s: &str) -> Poly {
    Poly::parse(s, 2).unwrap()
}

#[test]
fn colength_of_cluster_ideals() {
    for n in 3..9usize {
        for i in 1..n {
            for (a, b) in [(1, 1), (2, -3), (0, 1), (1, 0), (5, 7)] {
                let Some(pt) = ClusterPoint::new(i, int(a), int(b)) else { continue };
                let id = cluster_ideal(n, &pt);
                let d = id.staircase().unwrap().dim();
                assert_eq!(d, n);
                assert_eq!(oracle_colength(id.generators(), 2 * n as u32 + 2), n, "n={n} {pt}");
            }
        }
    }
}

#[test]
fn basis_generates_the_same_ideal() {
    let gens = vec![p("x^3 - y^2"), p("x*y - 1"), p("y^3 - x")];
    let id = Ideal::new(gens.clone());
    let mac = Macaulay::new(&gens, 10);
    for g in id.basis() {
        assert!(mac.contains(g), "{g}");
    }
    let back = Macaulay::new(id.basis(), 10);
    for g in &gens {
        assert!(back.contains(g));
    }
    assert_eq!(id.staircase().unwrap().dim(), oracle_colength(&gens, 10));
}

#[test]
fn unit_ideal_and_examples() {
    let id = Ideal::new(vec![p("x - 1"), p("x")]);
    assert_eq!(id.basis().len(), 1);
    assert!(id.basis()[0].is_constant());
    // intersection of two points
    let id = Ideal::new(vec![p("x^2 - x"), p("y"), p("x*y")]);
    assert_eq!(id.staircase().unwrap().dim(), 2);
    assert_eq!(id.normal_form(&p("x^5 + y^2")), p("x"));
}

fn small_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(((0u32..4, 0u32..4), -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
        ts.into_iter().fold(Poly::zero(2), |acc, ((a, b), c, d)| &acc + &Poly::term(2, [a, b, 0], rat(c, d)))
    })
}

fn zero_dim_ideal() -> impl Strategy<Value = Vec<Poly>> {
    // x^a + lower, y^b + lower, plus an extra generator
    (2u32..4, 2u32..4, small_poly(), small_poly(), small_poly()).prop_map(|(a, b, f, g, h)| {
        let cut = |q: &Poly, var: usize, e: u32| Poly::from_terms(2, q.terms().filter(|(m, _)| m.0[var] < e).map(|(m, c)| (*m, c.clone())));
        vec![&Poly::term(2, [a, 0, 0], int(1)) + &cut(&f, 0, a).restrict_zero(1), &Poly::term(2, [0, b, 0], int(1)) + &cut(&g, 1, b).restrict_zero(0), h]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_roundtrip(f in small_poly()) {
        prop_assert_eq!(Poly::parse(&f.to_string(), 2).unwrap(), f);
    }

    #[test]
    fn ring_axioms(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn normal_forms(gens in zero_dim_ideal(), f in small_poly(), g in small_poly()) {
        let id = Ideal::new(gens.clone());
        let lms = id.leading_monos();
        let nf = id.normal_form(&f);
        // no term of a normal form is divisible by a leading monomial
        prop_assert!(nf.terms().all(|(m, _)| !lms.iter().any(|l| l.divides(m))));
        prop_assert_eq!(id.normal_form(&(&f + &g)), &nf + &id.normal_form(&g));
        prop_assert_eq!(reduce(&nf, id.basis()), nf.clone());
        // f - NF(f) lies in the ideal by the oracle
        let mac = Macaulay::new(&gens, 12);
        prop_assert!(mac.contains(&(&f - &nf)));
        if !id.basis()[0].is_constant() {
            prop_assert_eq!(id.staircase().unwrap().dim(), oracle_colength(&gens, 12));
        }
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert!(Ideal::new(rev) == id);
    }
}
