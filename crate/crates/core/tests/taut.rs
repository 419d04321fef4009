use std::f64::consts::PI;

use dmckay::constel::{default_alpha, socle_table};
use dmckay::exactnum::{int, rat, Rat};
use dmckay::hilb::boundary_curves;
use dmckay::polyring::Poly;
use dmckay::repr::Irr;
use dmckay::taut::*;
use num_traits::Zero;
use proptest::prelude::*;

/// `f . E~_i` on `X_1` from the Newton polygon: `E~_i` has valuation
/// `(n - i) p + i q` on `x^p y^q`, and the face it selects has lattice
/// length `(p_max - p_min) / i` in the invariant lattice. Only valid when
/// the faces cut out by the rays cover the whole lower boundary (so the
/// curve misses every torus-fixed point); `None` otherwise.
fn newton_oracle(n: usize, f: &Poly) -> Option<Vec<Rat>> {
    let pts: Vec<(i64, i64)> = f.terms().map(|(m, _)| (m.0[0] as i64, m.0[1] as i64)).collect();
    let a = pts.iter().filter(|p| p.1 == 0).map(|p| p.0).min()?;
    pts.iter().find(|p| p.0 == 0)?;
    let mut widths = Vec::new();
    for i in 1..n {
        let val = |(p, q): (i64, i64)| (n - i) as i64 * p + i as i64 * q;
        let low = pts.iter().map(|&pt| val(pt)).min().unwrap();
        let face: Vec<i64> = pts.iter().filter(|&&pt| val(pt) == low).map(|pt| pt.0).collect();
        widths.push(face.iter().max().unwrap() - face.iter().min().unwrap());
    }
    (widths.iter().sum::<i64>() == a).then(|| widths.iter().enumerate().map(|(i, w)| rat(*w, i as i64 + 1)).collect())
}

fn downstairs_oracle(n: usize, f: &Poly) -> Option<Vec<Rat>> {
    let up = newton_oracle(n, f)?;
    Some((1..=n / 2).map(|j| {
        let mut s = up[j - 1].clone();
        if n - j != j {
            s += &up[n - j - 1];
        }
        s * rat(1, 2)
    }).collect())
}

#[test]
fn refdivisor_pairings_match_newton_oracle() {
    for n in 3..13 {
        let m = n / 2;
        for k in 1..=m {
            let c = refdivisor_certify(n, k).unwrap();
            let f = reference_curve(n, k);
            assert_eq!(Some(c.pairings.clone()), downstairs_oracle(n, &f), "n={n} k={k}");
            assert!(c.transversal, "n={n} k={k}");
        }
    }
}

#[test]
fn boundary_needs_charts() {
    // the boundary runs through the torus-fixed point E~_m ^ E~_(m+1), so the
    // Newton oracle declines and the chart computation gives the tangency
    let ctx = TautContext::new(7, 3).unwrap();
    let (_, f) = &boundary_curves(7)[0];
    assert_eq!(downstairs_oracle(7, f), None);
    assert_eq!(ctx.pair_label("B3", 3), int(2));
    assert_eq!(ctx.pair_label("B3", 1), int(0));
}

#[test]
fn refdivisor_examples() {
    let c = refdivisor_certify(5, 1).unwrap();
    assert_eq!(c.pairings, vec![int(1), int(0)]);
    let w = c.chart_witness.unwrap();
    assert_eq!(w.chart, "U1''");
    assert_eq!(w.strict, "1 - xy/(f1)");
    assert_eq!(w.point, vec![("xy/(f1)".to_string(), "1".to_string()), ("f1".to_string(), "0".to_string())]);
    let c = refdivisor_certify(3, 1).unwrap();
    assert_eq!(c.equation, "x^3 + y^3 - x*y");
    for n in [3, 5, 7, 9, 11] {
        let m = n / 2;
        let c = refdivisor_certify(n, m).unwrap();
        assert_eq!(c.boundary_meets["B3"], 1, "n={n}");
        assert!(c.chart_witness.is_some());
        for k in 1..m {
            assert_eq!(refdivisor_certify(n, k).unwrap().boundary_meets["B3"], n - 2 * k);
        }
    }
    for n in [4, 6, 8] {
        let m = n / 2;
        let c = refdivisor_certify(n, m).unwrap();
        assert!(c.boundary_meets.values().all(|&v| v == 0));
        assert!(c.chart_witness.is_none());
        assert!(refdivisor_certify(n, 1).unwrap().chart_witness.is_some());
    }
    assert_eq!(refdivisor_certify(5, 3), Err(TautError::KOutOfRange(3, 2)));
    assert_eq!(refdivisor_certify(5, 0), Err(TautError::KOutOfRange(0, 2)));
}

#[test]
fn boundary_in_invariants_matches_xy() {
    // s = xy, t = f1 (odd) or f1^2 (even)
    for n in 3..11 {
        let m = (n / 2) as u32;
        let bin = |e: u32| &Poly::term(2, [e, 0, 0], int(1)) + &Poly::term(2, [0, e, 0], int(1));
        let t = if n % 2 == 1 { bin(n as u32) } else { bin(m).pow(2) };
        let xy = Poly::term(2, [1, 1, 0], int(1));
        let sub = |b: &Poly| {
            b.terms().fold(Poly::zero(2), |acc, (mono, c)| {
                &acc + &(&xy.pow(mono.0[0]) * &t.pow(mono.0[1])).scale(c)
            })
        };
        let ups: Vec<Poly> = boundary_curves(n).into_iter().map(|(_, f)| f).collect();
        let downs = boundary_in_invariants(n);
        if n % 2 == 1 {
            assert_eq!(sub(&downs[0].1), ups[0]);
        } else {
            assert_eq!(sub(&downs[0].1), ups[0]);
            assert_eq!(sub(&downs[1].1), ups[1]);
        }
    }
}

#[test]
fn ledger_tables() {
    let show = |l: &TautLedger| l.entries.iter().map(|e| format!("{} {} {} {:?}", e.irr, e.rank, e.c1, e.extension)).collect::<Vec<_>>();
    assert_eq!(
        show(&build_ledger(5, Space::Stack)),
        [
            "rho0 1 0 LineBundle",
            "rho0' 1 1/2 B3 - D LineBundle",
            "rho1 2 1/2 B3 - D + D1 UniqueNontrivial",
            "rho2 2 1/2 B3 - D + D2 UniqueNontrivial",
        ]
    );
    assert_eq!(
        show(&build_ledger(6, Space::Stack)),
        [
            "rho0 1 0 LineBundle",
            "rho0' 1 1/2 B1 - 1/2 B2 LineBundle",
            "rho1 2 1/2 B1 - 1/2 B2 + D1 UniqueNontrivial",
            "rho2 2 1/2 B1 - 1/2 B2 + D2 UniqueNontrivial",
            "rho3 1 1/2 B1 LineBundle",
            "rho3' 1 1/2 B2 LineBundle",
        ]
    );
    assert_eq!(
        show(&build_ledger(4, Space::Coarse)),
        ["rho0 1 0 LineBundle", "rho0' 1 L LineBundle", "rho1 2 D1 + L Split", "rho2 1 B1 + L LineBundle", "rho2' 1 B2 + L LineBundle"]
    );
    assert_eq!(show(&build_ledger(3, Space::Coarse))[2], "rho1 2 D1 + L Split");
    let r = build_ledger(7, Space::Stack);
    assert_eq!(r.entry(Irr::Rho(2)).unwrap().description, "0 -> O -> R -> O(1/2 B3 - D + D2) -> 0");
    assert_eq!(build_ledger(7, Space::Coarse).entry(Irr::Rho(2)).unwrap().description, "O + O(D2 + L)");
    for n in 3..21 {
        for s in [Space::Coarse, Space::Stack] {
            check_ledger(&build_ledger(n, s)).unwrap();
        }
    }
}

#[test]
fn ledger_check_catches_edits() {
    let mut l = build_ledger(6, Space::Coarse);
    l.entries[2].extension = Extension::UniqueNontrivial;
    assert!(check_ledger(&l).is_err());
    let mut l = build_ledger(6, Space::Stack);
    l.entries[2].rank = 1;
    assert!(check_ledger(&l).is_err());
    let mut l = build_ledger(5, Space::Stack);
    l.entries[2].c1 = DivisorClass::of("D1");
    assert!(check_ledger(&l).is_err());
}

#[test]
fn torsion_classes() {
    for n in 3..21 {
        let m = n / 2;
        let ctx = TautContext::new(n, default_k(n)).unwrap();
        let t = torsion_check(&ctx, &torsion_class(n));
        assert!(t.torsion, "n={n} {:?}", t.doubled_pairings);
        for i in 1..=m {
            assert!(!torsion_check(&ctx, &DivisorClass::of(&format!("E{i}"))).torsion, "n={n} E{i}");
        }
        // 2L + B is zero, so L itself pairs like -(1/2) B
        assert!(torsion_check(&ctx, &DivisorClass::of("L").scale(&int(2)).plus(&boundary_labels(n).iter().fold(DivisorClass::zero(), |a, b| a.plus(&DivisorClass::of(b))))).torsion);
        // the stack rho0' class is the torsion class
        let l = build_ledger(n, Space::Stack);
        assert!(torsion_check(&ctx, &l.entry(Irr::Rho0P).unwrap().c1).torsion);
    }
}

#[test]
fn torsion_depends_on_k_for_odd_n() {
    for n in [5, 7, 9, 11] {
        let m = n / 2;
        for k in 1..m {
            let ctx = TautContext::new(n, k).unwrap();
            assert!(!torsion_check(&ctx, &torsion_class(n)).torsion, "n={n} k={k}");
        }
    }
    assert!(matches!(TautContext::new(6, 4), Err(TautError::KOutOfRange(4, 3))));
}

#[test]
fn pushforward_examples() {
    let four = pushforward_identities(4).unwrap();
    assert_eq!(four.len(), 3);
    assert!(four.iter().all(|l| l.holds));
    assert_eq!(four[2].lhs, "eps2");
    let five = pushforward_identities(5).unwrap();
    assert_eq!(five.iter().map(|l| l.lhs.as_str()).collect::<Vec<_>>(), ["eps0", "eps1 + eps4", "eps2 + eps3"]);
    for n in 3..21 {
        assert!(pushforward_identities(n).unwrap().iter().all(|l| l.holds));
    }
}

// brute-force Frobenius induction over D_2n, elements (r, k) = tau^r sigma^k
fn mul(n: usize, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    // sigma^k tau = tau sigma^-k
    let k = if b.0 == 1 { (n - a.1 % n) % n } else { a.1 };
    ((a.0 + b.0) % 2, (k + b.1) % n)
}

fn inv(n: usize, a: (usize, usize)) -> (usize, usize) {
    if a.0 == 1 { a } else { (0, (n - a.1) % n) }
}

/// Dihedral character at `tau^r sigma^k` by the cosine formulas.
fn chi(n: usize, r: Irr, x: (usize, usize)) -> f64 {
    let sgn = |b: bool| if b { -1.0 } else { 1.0 };
    match (r, x.0) {
        (Irr::Rho0, _) => 1.0,
        (Irr::Rho0P, t) => sgn(t == 1),
        (Irr::Rho(j), 0) => 2.0 * (2.0 * PI * (j * x.1) as f64 / n as f64).cos(),
        (Irr::Rho(_), _) => 0.0,
        (Irr::Half(_), _) => sgn(x.1 % 2 == 1),
        (Irr::HalfP(_), t) => sgn((x.1 + t) % 2 == 1),
        (Irr::Eps(_), _) => unreachable!(),
    }
}

#[test]
fn induction_oracle() {
    for n in 3..13 {
        let els: Vec<(usize, usize)> = (0..2).flat_map(|r| (0..n).map(move |k| (r, k))).collect();
        let got = pushforward_identities(n).unwrap();
        for j in 0..n {
            // Ind(eps_j)(x) = (1/n) sum over g with g x g^-1 in the rotations;
            // the imaginary parts cancel
            let ind = |x: (usize, usize)| -> f64 {
                let s: f64 = els
                    .iter()
                    .map(|&g| mul(n, mul(n, g, x), inv(n, g)))
                    .filter(|c| c.0 == 0)
                    .map(|c| (2.0 * PI * (j * c.1) as f64 / n as f64).cos())
                    .sum();
                s / n as f64
            };
            let mut mult = std::collections::BTreeMap::new();
            for r in Irr::dihedral_list(n) {
                let ip: f64 = els.iter().map(|&x| ind(x) * chi(n, r, x)).sum::<f64>() / (2 * n) as f64;
                let k = ip.round();
                assert!((ip - k).abs() < 1e-9);
                if k > 0.0 {
                    mult.insert(r, k as u64);
                }
            }
            let (line, factor) = if j == 0 {
                (&got[0], 1)
            } else if 2 * j == n {
                (got.last().unwrap(), 1)
            } else {
                (&got[j.min(n - j)], 2)
            };
            let want: std::collections::BTreeMap<Irr, u64> = line.induced.mult.iter().map(|(r, k)| (*r, k / factor)).collect();
            assert_eq!(mult, want, "n={n} eps{j}");
        }
    }
}

#[test]
fn fm_examples() {
    let t = fm_table(4);
    let row = |t: &FmTable, r| {
        let e = t.entry(r).unwrap();
        format!("{} {} {}", e.support, e.twist, e.shift)
    };
    assert_eq!(row(&t, Irr::Rho0), "F none 0");
    assert_eq!(row(&t, Irr::Rho0P), "F (1/2 B1 - 1/2 B2) 0");
    assert_eq!(row(&t, Irr::Rho(1)), "E1 none 1");
    assert_eq!(row(&t, Irr::Half(2)), "E2 -B1 1");
    assert_eq!(row(&t, Irr::HalfP(2)), "E2 -B2 1");
    let t = fm_table(7);
    assert_eq!(row(&t, Irr::Rho0P), "F (1/2 B3 - D) 0");
    assert_eq!(row(&t, Irr::Rho(2)), "E2 none 1");
    assert_eq!(row(&t, Irr::Rho(3)), "E3 -B3 1");
    assert_eq!(t.entries.len(), Irr::dihedral_list(7).len());
}

#[test]
fn fm_cross_checks() {
    for n in 3..21 {
        fm_table_checked(n, &default_alpha()).unwrap_or_else(|e| panic!("n={n}: {e}"));
    }
    // swapping the two boundary twists breaks the check
    let rows = socle_table(6, &default_alpha()).unwrap();
    let mut t = fm_table(6);
    let a = t.entries.iter().position(|e| e.irr == Irr::Half(3)).unwrap();
    let b = t.entries.iter().position(|e| e.irr == Irr::HalfP(3)).unwrap();
    let tw = t.entries[a].twist.clone();
    t.entries[a].twist = t.entries[b].twist.clone();
    t.entries[b].twist = tw;
    assert!(matches!(fm_cross_check(&t, &rows), Err(TautError::CrossCheckFailure(..))));
    let mut t = fm_table(6);
    t.entries[2].support = Support::Curve(2);
    assert!(matches!(fm_cross_check(&t, &rows), Err(TautError::CrossCheckFailure(..))));
    let mut t = fm_table(6);
    t.entries[0].support = Support::Curve(1);
    assert!(fm_cross_check(&t, &rows).is_err());
}

fn class_strategy(n: usize) -> impl Strategy<Value = DivisorClass> {
    let m = n / 2;
    let mut labels: Vec<String> = (1..=m).flat_map(|i| [format!("E{i}"), format!("D{i}")]).collect();
    labels.extend(boundary_labels(n).iter().map(|s| s.to_string()));
    labels.push("D".into());
    labels.push("L".into());
    proptest::collection::vec((0..labels.len(), -6i64..7, 1i64..4), 0..6).prop_map(move |v| {
        v.into_iter().fold(DivisorClass::zero(), |acc, (l, a, b)| acc.plus_term(&labels[l], rat(a, b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn pairing_is_linear_and_l_resolves(a in class_strategy(7), b in class_strategy(7), c in -5i64..6) {
        let ctx = TautContext::new(7, 3).unwrap();
        let lhs = ctx.pairings(&a.plus(&b.scale(&int(c))));
        let rhs: Vec<Rat> = ctx.pairings(&a).iter().zip(ctx.pairings(&b)).map(|(x, y)| x + y * int(c)).collect();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ctx.pairings(&a), ctx.pairings(&a.resolve_l(7)));
        prop_assert!(a.minus(&a).is_zero());
        let t = torsion_check(&ctx, &a);
        prop_assert_eq!(t.torsion, t.doubled_pairings.iter().all(Zero::is_zero));
    }
}
