use dmckay::exactnum::{int, rat, Rat};
use dmckay::intersect::*;
use dmckay::linalg::Matrix;
use num_traits::Zero;
use proptest::prelude::*;

/// Leading principal minors alternate in sign, starting negative.
fn negdef_oracle(q: &[Vec<Rat>]) -> bool {
    (1..=q.len()).all(|k| {
        let m = Matrix::from_rows(q[..k].iter().map(|r| r[..k].to_vec()).collect());
        let d = m.det();
        if k % 2 == 1 { d < Rat::zero() } else { d > Rat::zero() }
    })
}

/// Fold by hand: pair `Ẽ_i + Ẽ_(n-i)` against itself with the A_(n-1) form.
fn fold_oracle(n: usize) -> Vec<Vec<Rat>> {
    let m = n / 2;
    let dot = |a: usize, b: usize| -> i64 {
        if a == b {
            -2
        } else if a.abs_diff(b) == 1 {
            1
        } else {
            0
        }
    };
    let sup = |i: usize| if 2 * i == n { vec![i] } else { vec![i, n - i] };
    (1..=m)
        .map(|a| {
            (1..=m)
                .map(|b| {
                    let s: i64 = sup(a).iter().flat_map(|&x| sup(b).into_iter().map(move |y| dot(x, y))).sum();
                    rat(s, 2)
                })
                .collect()
        })
        .collect()
}

#[test]
fn fold_examples() {
    let f5 = fold(5);
    assert_eq!(f5.q, vec![vec![int(-2), int(1)], vec![int(1), int(-1)]]);
    let f4 = fold(4);
    assert_eq!(f4.q[0][0], int(-2));
    assert_eq!(f4.q[1][1], int(-1));
    let f3 = fold(3);
    assert_eq!(f3.q, vec![vec![int(-1)]]);
}

#[test]
fn fold_matches_oracle() {
    for n in 3..41 {
        let f = fold(n);
        assert_eq!(f.q, fold_oracle(n), "n={n}");
        let m = n / 2;
        for i in 0..m {
            let want = if i + 1 == m { -1 } else { -2 };
            assert_eq!(f.q[i][i], int(want));
            assert_eq!(f.k_dot[i], int(if i + 1 == m { -1 } else { 0 }));
            assert!(f.discrepancy[i].is_zero());
        }
        assert!(f.adjunction_holds() && f.is_symmetric());
        assert!(f.is_negative_definite() && negdef_oracle(&f.q));
    }
}

#[test]
fn boundary_pairings_from_charts() {
    for n in 3..16 {
        let m = n / 2;
        let bd = boundary_pairings(n);
        for (i, row) in bd.iter().enumerate() {
            if i + 1 < m {
                assert!(row.is_empty(), "n={n} E{} {row:?}", i + 1);
            } else if n % 2 == 1 {
                assert_eq!(row.len(), 1);
                assert_eq!(row["B3"], int(2));
            } else {
                assert_eq!(row.len(), 2);
                assert_eq!(row["B1"], int(1));
                assert_eq!(row["B2"], int(1));
            }
        }
    }
}

#[test]
fn blow_down_examples() {
    let c = blow_down(&fold(5), "E2").unwrap();
    assert_eq!(c.q, vec![vec![int(-1)]]);
    assert_eq!(c.k_dot, vec![int(-1)]);
    assert!(blow_down(&fold(3), "E1").unwrap().is_empty());
    assert!(matches!(blow_down(&fold(5), "E1"), Err(IntersectError::NotContractible(..))));
}

#[test]
fn chain_lengths() {
    for n in 3..41 {
        let m = n / 2;
        let ch = domination_chain(n).unwrap();
        assert_eq!(ch.len(), m + 1, "n={n}");
        assert!(ch.last().unwrap().is_empty());
        for c in &ch[..m] {
            assert_eq!(c.minus_one_curves().len(), 1);
            assert!(c.adjunction_holds());
            assert!(negdef_oracle(&c.q));
        }
    }
    assert_eq!(domination_chain(5).unwrap().len(), 3);
    assert_eq!(domination_chain(6).unwrap().len(), 4);
    assert_eq!(domination_chain(3).unwrap().len(), 2);
}

#[test]
fn discrepancy_examples() {
    let b = BoundaryData::resolved(5);
    assert_eq!(blowup_discrepancy(&b, &[("B3".into(), 1)], &[]), rat(1, 2));
    assert_eq!(blowup_discrepancy(&b, &[], &[]), int(1));
    assert_eq!(blowup_discrepancy(&b, &[("B3".into(), 2)], &[]), int(0));
    let e = BoundaryData::resolved(4);
    assert_eq!(blowup_discrepancy(&e, &[("B1".into(), 1), ("B2".into(), 1)], &[]), int(0));
}

#[test]
fn maximality() {
    for n in 3..21 {
        let f = fold(n);
        let cert = is_maximal(&f, &BoundaryData::resolved(n));
        assert!(cert.maximal, "n={n} {cert:?}");
        assert!(f.discrepancy.iter().all(Zero::is_zero));
        assert!(!is_maximal(&CurveConfig::empty(), &BoundaryData::quotient(n)).maximal);
        let lbl = if n % 2 == 0 { "B1" } else { "B3" };
        let more = blow_up(&f, &BoundaryData::resolved(n), &Center::Boundary(lbl.into()), "F");
        assert_eq!(more.discrepancy.last().unwrap(), &rat(1, 2));
        let c = is_maximal(&more, &BoundaryData::resolved(n));
        assert!(!c.maximal && !c.discrepancies_ok);
    }
}

#[test]
fn dot_output() {
    let d = fold(5).to_dot("Y1");
    assert!(d.contains("\"E2\" [label=\"E2 (0, -1)\"]"));
    assert!(d.contains("\"E1\" -- \"E2\" [label=\"1\"]"));
}

fn centers(n: usize) -> Vec<Center> {
    let m = n / 2;
    let lbl = if n.is_multiple_of(2) { "B1" } else { "B3" };
    let mut cs: Vec<Center> = (1..=m).map(|i| Center::Curve(format!("E{i}"))).collect();
    cs.extend((1..m).map(|i| Center::Node(format!("E{i}"), format!("E{}", i + 1))));
    cs.push(Center::Boundary(lbl.into()));
    cs.push(Center::BoundaryCurve(lbl.into(), format!("E{m}")));
    cs
}

proptest! {
    #[test]
    fn blow_up_then_down_is_identity(n in 3usize..30, pick in any::<usize>()) {
        let f = fold(n);
        let b = BoundaryData::resolved(n);
        let cs = centers(n);
        let up = blow_up(&f, &b, &cs[pick % cs.len()], "F");
        prop_assert!(up.adjunction_holds());
        prop_assert!(up.is_negative_definite());
        let down = blow_down(&up, "F").unwrap();
        prop_assert_eq!(down, f);
    }
}
