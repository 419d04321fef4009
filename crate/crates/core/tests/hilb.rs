use dmckay::charts::{verify_gluing, GlueKind};
use dmckay::exactnum::{int, rat, Rat};
use dmckay::hilb::*;
use dmckay::linalg::Span;
use dmckay::polyring::Poly;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Colength of the ideal generated by `gens` in C[x,y], by truncated linear
/// algebra: every monomial of degree > `d0` lies in the ideal for the ideals
/// used here, so the span of `g * monomial` up to degree `d` suffices.
fn colength_oracle(gens: &[Poly], d: u32) -> usize {
    let monos: Vec<(u32, u32)> = (0..=d).flat_map(|t| (0..=t).map(move |a| (a, t - a))).collect();
    let idx = |a: u32, b: u32| monos.iter().position(|&m| m == (a, b));
    let mut span = Span::new(monos.len());
    for g in gens {
        for &(a, b) in &monos {
            let mut v = vec![Rat::zero(); monos.len()];
            let mut ok = true;
            for (m, c) in g.terms() {
                match idx(m.0[0] + a, m.0[1] + b) {
                    Some(k) => v[k] += c,
                    None => ok = false,
                }
            }
            if ok {
                span.insert(&v);
            }
        }
    }
    monos.len() - span.dim()
}

fn gens(n: usize, p: &ClusterPoint) -> Vec<Poly> {
    let (i, n) = (p.i as u32, n as u32);
    vec![
        &Poly::term(2, [i, 0, 0], p.a.clone()) - &Poly::term(2, [0, n - i, 0], p.b.clone()),
        Poly::term(2, [i + 1, 0, 0], int(1)),
        Poly::term(2, [1, 1, 0], int(1)),
        Poly::term(2, [0, n + 1 - i, 0], int(1)),
    ]
}

#[test]
fn cluster_examples() {
    let i = cluster_ideal(4, &ClusterPoint::ints(2, 1, -1));
    let expected = dmckay::polyring::Ideal::new(vec![
        Poly::parse("x^3", 2).unwrap(),
        Poly::parse("y^3", 2).unwrap(),
        Poly::parse("x*y", 2).unwrap(),
        Poly::parse("x^2 + y^2", 2).unwrap(),
    ]);
    assert_eq!(i, expected);
    let j = cluster_ideal(5, &ClusterPoint::ints(2, 0, 1));
    let k = dmckay::polyring::Ideal::new(vec![
        Poly::parse("y^3", 2).unwrap(),
        Poly::parse("x^3", 2).unwrap(),
        Poly::parse("x*y", 2).unwrap(),
    ]);
    assert_eq!(j, k);
    assert_eq!(j.staircase().unwrap().dim(), 5);
    for n in 3..8 {
        let p = ClusterPoint::ints(1, 1, 0);
        assert_eq!(cluster_ideal(n, &p).staircase().unwrap().dim(), n);
        assert_eq!(colength_oracle(&gens(n, &p), n as u32 + 2), n);
    }
}

#[test]
fn colength_matches_oracle() {
    for n in 3..9 {
        for i in 1..n {
            for (a, b) in [(1, 0), (0, 1), (1, 1), (2, -3)] {
                let p = ClusterPoint::ints(i, a, b);
                let d = cluster_ideal(n, &p).staircase().unwrap().dim();
                assert_eq!(d, n);
                assert_eq!(colength_oracle(&gens(n, &p), n as u32 + 2), n, "{p}");
            }
        }
    }
}

#[test]
fn z2_examples() {
    assert_eq!(z2_image(4, &ClusterPoint::ints(2, 1, -1)), ClusterPoint::ints(2, 1, -1));
    assert_eq!(z2_image(5, &ClusterPoint::ints(1, 1, 3)), ClusterPoint::ints(4, 3, 1));
    let (q, ok) = z2_image_checked(5, &ClusterPoint::ints(2, 0, 1));
    assert_eq!(q, ClusterPoint::ints(3, 1, 0));
    assert!(ok);
    assert_eq!(cluster_ideal(5, &q), cluster_ideal(5, &ClusterPoint::ints(2, 0, 1)));
}

#[test]
fn fixed_point_examples() {
    let pts = |n| fixed_points(n).into_iter().map(|f| f.point).collect::<Vec<_>>();
    assert_eq!(pts(4), vec![ClusterPoint::ints(2, 1, 1), ClusterPoint::ints(2, 1, -1)]);
    assert_eq!(pts(5), vec![ClusterPoint::ints(2, 0, 1)]);
    assert_eq!(pts(3), vec![ClusterPoint::ints(1, 0, 1)]);
    let f5 = fixed_points(5);
    assert_eq!(f5[0].aliases, vec![ClusterPoint::ints(3, 1, 0)]);
}

/// A candidate is fixed iff `I + swap(I)` still has colength `n`.
#[test]
fn fixed_points_match_colength_oracle() {
    for n in 3..11 {
        let fixed: Vec<ClusterPoint> = fixed_points(n).into_iter().flat_map(|f| {
            let mut v = f.aliases;
            v.push(f.point);
            v
        }).collect();
        for i in 1..n {
            for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)] {
                let p = ClusterPoint::ints(i, a, b);
                let mut g = gens(n, &p);
                g.extend(gens(n, &p).iter().map(Poly::swap_xy));
                let is_fixed = colength_oracle(&g, n as u32 + 2) == n;
                assert_eq!(is_fixed, fixed.contains(&p), "n={n} {p}");
            }
        }
    }
}

#[test]
fn x1_atlas_glues_and_is_unimodular() {
    for n in 3..12 {
        let a = x1_atlas(n);
        assert_eq!(a.atlas.charts.len(), n);
        assert_eq!(a.divisors.len(), n - 1);
        for c in &a.atlas.charts {
            assert!(c.is_unimodular(), "{}", c.name);
        }
        for i in 1..n {
            assert!(verify_gluing(a.chart(i), a.chart(i + 1)));
        }
        assert!(a.atlas.is_connected());
    }
    let a = x1_atlas(3);
    assert!(!verify_gluing(a.chart(1), a.chart(3)));
    let t = dmckay::charts::transition(a.chart(1), a.chart(2)).unwrap();
    assert_eq!(t.matrix, vec![vec![2, 1], vec![-1, 0]]);
    assert_eq!(t.kind, GlueKind::Facet { inverted: 0 });
}

/// Axis points of `U_i` against the cluster ideals they name: on `v = 0`
/// the point `u = a` is `I_i(1:a)`, so `x^i - a y^(n-i)` must lie in it.
#[test]
fn axis_points_are_clusters() {
    let n = 6;
    for i in 1..n {
        let p = axis_cluster(n, i, 1, &int(3)).unwrap();
        assert_eq!(p, ClusterPoint::ints(i, 1, 3));
        if i >= 2 {
            assert_eq!(axis_cluster(n, i, 0, &int(3)).unwrap(), ClusterPoint::ints(i - 1, 3, 1));
        }
    }
    assert!(axis_cluster(n, 1, 0, &int(0)).is_none());
}

/// Strict transform oracle: write `B^` in (u, v) by solving the 2x2 system
/// for each term by hand, divide by the minimal powers.
fn strict_oracle(n: usize, i: usize, f: &Poly) -> Poly {
    let (n, i) = (n as i64, i as i64);
    // x^a y^b = u^alpha v^beta with n alpha = a(n+1-i) + b(i-1), n beta = a(n-i) + b i
    let terms: Vec<((i64, i64), Rat)> = f
        .terms()
        .map(|(m, c)| {
            let (a, b) = (m.0[0] as i64, m.0[1] as i64);
            let (al, be) = (a * (n + 1 - i) + b * (i - 1), a * (n - i) + b * i);
            assert!(al % n == 0 && be % n == 0);
            ((al / n, be / n), c.clone())
        })
        .collect();
    let mu = if i >= 2 { terms.iter().map(|t| t.0 .0).min().unwrap() } else { 0 };
    let mv = if i < n { terms.iter().map(|t| t.0 .1).min().unwrap() } else { 0 };
    let mut p = Poly::zero(2);
    for ((a, b), c) in terms {
        p = &p + &Poly::term(2, [(a - mu) as u32, (b - mv) as u32, 0], c);
    }
    p
}

#[test]
fn strict_transforms_match_oracle() {
    for n in 3..14 {
        for st in boundary_strict_transforms(n) {
            let i: usize = st.curve.chart.name[1..].parse().unwrap();
            let f = boundary_curves(n).into_iter().find(|(l, _)| *l == st.curve.label).unwrap().1;
            assert_eq!(st.curve.equation, strict_oracle(n, i, &f), "n={n} {}", st.curve.chart.name);
        }
    }
}

#[test]
fn strict_transform_examples() {
    for n in [4, 6, 8, 10] {
        let m = n / 2;
        let sts = boundary_strict_transforms(n);
        let get = |l: &str, i: usize| sts.iter().find(|s| s.curve.label == l && s.curve.chart.name == format!("U{i}")).unwrap();
        let b1 = get("B1^", m);
        assert_eq!(b1.curve.equation.fmt_with(&["u", "v"]), "u^2 + 2*u + 1");
        assert_eq!(b1.meets.len(), 1);
        assert_eq!(b1.meets[0].hit.multiplicity_at(&int(-1)), 2);
        assert_eq!(b1.meets[0].clusters, vec![ClusterPoint::ints(m, 1, -1)]);
        let b2 = get("B2^", m);
        assert_eq!(b2.curve.equation.fmt_with(&["u", "v"]), "u^2 - 2*u + 1");
        assert_eq!(b2.meets[0].clusters, vec![ClusterPoint::ints(m, 1, 1)]);
        for s in &sts {
            let i: usize = s.curve.chart.name[1..].parse().unwrap();
            let named = i == m || i == m + 1;
            assert_eq!(!s.meets.is_empty(), named, "n={n} {} {}", s.curve.label, s.curve.chart.name);
            if !named {
                assert!(s.has_constant_term_certificate());
            }
        }
    }
    for n in [3, 5, 7, 9, 11] {
        let m = n / 2;
        let sts = boundary_strict_transforms(n);
        for s in &sts {
            let i: usize = s.curve.chart.name[1..].parse().unwrap();
            assert_eq!(!s.meets.is_empty(), i == m + 1, "n={n} U{i}");
            if i != m + 1 {
                assert!(s.has_constant_term_certificate());
            } else {
                assert_eq!(s.curve.equation.fmt_with(&["u", "v"]), "u^2 - 2*u*v + v^2");
                for meet in &s.meets {
                    assert_eq!(meet.hit.total, 2);
                    assert_eq!(meet.hit.multiplicity_at(&Rat::zero()), 2);
                }
                let fp = ClusterPoint::ints(m, 0, 1);
                let up = ClusterPoint::ints(m + 1, 1, 0);
                let cl: Vec<_> = s.meets.iter().flat_map(|x| x.clusters.clone()).collect();
                assert!(cl.contains(&fp) && cl.contains(&up));
            }
        }
    }
}

#[test]
fn invariant_chart_identity() {
    for n in [3, 5, 7, 9] {
        let ic = invariant_chart(n);
        assert!(ic.ambient_identity && ic.upstairs_identity);
        assert_eq!(ic.boundary.strict.fmt_with(&["s", "u"]), "u^2 - 4*s");
        assert_eq!(ic.boundary.orders[&format!("E{}", n / 2)], (n - 1) as u32);
        let curve = dmckay::charts::LocalCurve { chart: ic.chart.clone(), label: "B3".into(), equation: ic.boundary.strict.clone() };
        let hit = dmckay::charts::local_intersection(&curve, 0).unwrap();
        assert_eq!(hit.multiplicity_at(&Rat::zero()), 2);
    }
}

#[test]
fn flop_charts_unimodular() {
    for n in 3..16 {
        for s in stage_range(n) {
            let a = build_flop_atlas(n, s).unwrap();
            for c in &a.atlas.charts {
                assert!(c.is_unimodular(), "n={n} {}", c.name);
            }
        }
    }
}

#[test]
fn flop_stage_lists() {
    let a = build_flop_atlas(7, Stage { i: 2, j: None }).unwrap();
    let names: Vec<_> = a.atlas.charts.iter().map(|c| c.name.clone()).collect();
    assert_eq!(names, ["U1''", "U2''", "U3''", "U4'", "U5"]);
    let c = flop_chart(5, Family::Up, 1).unwrap();
    assert_eq!(c.coord_names(), ["z/(f2)", "f1", "xy"]);
    // E_m flop swaps (U_m'', U_(m+1)') for (U_m', U_(m+1))
    for n in 3..16 {
        let m = n / 2;
        let top = build_flop_atlas(n, Stage { i: m as i64 - 1, j: None }).unwrap();
        let next = build_flop_atlas(n, Stage { i: m as i64 - 2, j: None }).unwrap();
        for nm in [chart_name(Family::Upp, m), chart_name(Family::Up, m + 1)] {
            assert!(top.atlas.chart(&nm).is_some() && next.atlas.chart(&nm).is_none());
        }
        for nm in [chart_name(Family::Up, m), chart_name(Family::U, m + 1)] {
            assert!(next.atlas.chart(&nm).is_some() && top.atlas.chart(&nm).is_none());
        }
    }
}

#[test]
fn displayed_gluing() {
    for n in 3..16 {
        let m = n / 2;
        let t = flop_transition(n, (Family::Upp, m), (Family::Up, m + 1)).unwrap();
        assert_eq!(t.kind, GlueKind::Facet { inverted: 1 });
        assert_eq!(t.matrix, vec![vec![1, 1, 0], vec![0, -1, 0], vec![0, 1, 1]]);
        let top = build_flop_atlas(n, Stage { i: m as i64 - 1, j: None }).unwrap();
        let want = if n % 2 == 1 { format!("(f1 : (xy)^{m})") } else { "(f2^2 : f1^2)".into() };
        let want = want.replace("(xy)^1)", "xy)");
        assert_eq!(top.floppable.unwrap().coords, want);
    }
    assert!(flop_transition(5, (Family::Upp, 1), (Family::Up, 3)).is_none());
}

#[test]
fn curve_counts_drop_by_one_per_flop() {
    for n in 3..16 {
        let m = (n / 2) as i64;
        for s in stage_range(n) {
            let a = build_flop_atlas(n, s).unwrap();
            assert_eq!(a.surface_curves() as i64, s.i + 1, "n={n} {s:?} {:?}", a.curves);
        }
        let _ = m;
    }
}

proptest! {
    #[test]
    fn random_clusters_have_colength_n(n in 3usize..21, i0 in 1usize..20, a in -50i64..50, b in -50i64..50, d in 1i64..9) {
        let i = 1 + i0 % (n - 1);
        prop_assume!(a != 0 || b != 0);
        let p = ClusterPoint::new(i, rat(a, d), int(b)).unwrap();
        prop_assert_eq!(cluster_ideal(n, &p).staircase().unwrap().dim(), n);
        let q = z2_image(n, &p);
        prop_assert_eq!(z2_image(n, &q), p.clone());
        let (_, ok) = z2_image_checked(n, &p);
        prop_assert!(ok);
    }
}

#[test]
fn one_is_one() {
    assert!(Rat::one() == int(1));
}
