use fusionlab_core::exactnum::{Cyclotomic, Rational};
use fusionlab_core::virasoro::{KacLabel, MinimalModel};
use fusionlab_core::Error;
use num_integer::Integer;

fn coprime_pairs(amax: u32, bmax: u32) -> impl Iterator<Item = (u32, u32)> {
    (2..=amax).flat_map(move |a| {
        (2..=bmax)
            .filter(move |&b| a.gcd(&b) == 1)
            .map(move |b| (a, b))
    })
}

fn k(r: u32, s: u32) -> KacLabel {
    KacLabel::new(r, s)
}

#[test]
fn fusion_axioms_hold_for_all_small_models() {
    for (a, b) in coprime_pairs(9, 9) {
        let m = MinimalModel::new(a, b).unwrap();
        assert_eq!(m.labels().len() as u32, (a - 1) * (b - 1) / 2);
        let report = m.fusion_ring().unwrap().verify_axioms();
        assert!(report.passed(), "Vir({a},{b}): {report:?}");
    }
}

#[test]
fn ca_rings_pass_axioms() {
    let ring = MinimalModel::new(4, 5).unwrap().subcategory_ca().unwrap();
    assert!(ring.ring().verify_axioms().passed());
    let ly = MinimalModel::new(2, 5).unwrap().fusion_ring().unwrap();
    assert!(ly.verify_axioms().passed());
}

#[test]
fn fusion_with_fundamental() {
    for (a, b) in coprime_pairs(9, 9) {
        let m = MinimalModel::new(a, b).unwrap();
        for r in 2..a.saturating_sub(1) {
            let summands: Vec<KacLabel> = m
                .labels()
                .iter()
                .copied()
                .filter(|&z| m.fusion_coefficient(k(2, 1), k(r, 1), z).unwrap() > 0)
                .collect();
            let mut expected = vec![k(r - 1, 1).canonical(a, b), k(r + 1, 1).canonical(a, b)];
            expected.sort();
            assert_eq!(summands, expected, "Vir({a},{b}), r = {r}");
            for z in &expected {
                assert_eq!(m.fusion_coefficient(k(2, 1), k(r, 1), *z).unwrap(), 1);
            }
        }
    }
}

#[test]
fn sratio_is_independent_of_orbit_representative() {
    for (a, b) in coprime_pairs(7, 8) {
        let m = MinimalModel::new(a, b).unwrap();
        for &x in m.labels() {
            for &y in m.labels() {
                let base = m.sratio(x, y).unwrap();
                for (xx, yy) in [
                    (x.reflect(a, b), y),
                    (x, y.reflect(a, b)),
                    (x.reflect(a, b), y.reflect(a, b)),
                ] {
                    assert_eq!(m.sratio(xx, yy).unwrap(), base, "Vir({a},{b}) {x} {y}");
                }
            }
        }
    }
}

#[test]
fn weights_are_invariant_under_reflection() {
    for (a, b) in coprime_pairs(9, 9) {
        let m = MinimalModel::new(a, b).unwrap();
        for &x in m.labels() {
            assert_eq!(
                m.conformal_weight(x).unwrap(),
                m.conformal_weight(x.reflect(a, b)).unwrap()
            );
        }
    }
}

#[test]
fn hopf_symmetry_and_balancing() {
    for (a, b) in coprime_pairs(8, 9) {
        let d = MinimalModel::new(a, b).unwrap().modular_datum().unwrap();
        assert!(d.hopf_symmetric(), "Vir({a},{b})");
        assert!(d.balancing_holds(), "Vir({a},{b})");
        assert!(d.is_modular(), "full Vir({a},{b}) is modular");
    }
}

#[test]
fn twist_difference_law() {
    for (a, b) in coprime_pairs(9, 9) {
        let m = MinimalModel::new(a, b).unwrap();
        for r in 2..a.saturating_sub(1) {
            let lo = m.conformal_weight(k(r - 1, 1)).unwrap().fract_positive();
            let hi = m.conformal_weight(k(r + 1, 1)).unwrap().fract_positive();
            let expected = -Rational::new(i64::from(r * b), i64::from(a));
            assert!(
                (lo - hi).congruent_mod_one(&expected),
                "Vir({a},{b}), r = {r}"
            );
        }
    }
}

/// Summands of X ⊗ Y share a twist iff |S_{X,Y}| = |dim X · dim Y|; when they
/// share twist θ the balancing identity collapses to S·θ_X·θ_Y = θ·dim X·dim Y.
#[test]
fn scalar_twist_correspondence() {
    for (a, b) in coprime_pairs(7, 8) {
        let m = MinimalModel::new(a, b).unwrap();
        for d in [m.modular_datum().unwrap(), m.subcategory_ca().unwrap()] {
            for x in 0..d.rank() {
                for y in 0..d.rank() {
                    let shared = d.shares_twist(x, y);
                    assert_eq!(shared, d.hopf_modulus_matches(x, y), "Vir({a},{b}) {x} {y}");
                    if shared {
                        let k0 = d.ring().fuse(x, y).unwrap()[0].0;
                        let lhs = &(&d.hopf(x, y) * &d.twist(x)) * &d.twist(y);
                        let rhs = &(&d.twist(k0) * &d.qdim()[x]) * &d.qdim()[y];
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn ca_simple_current_row() {
    for (a, b) in coprime_pairs(8, 9) {
        let m = MinimalModel::new(a, b).unwrap();
        for r1 in 1..a {
            let value = m.sratio(k(a - 1, 1), k(r1, 1)).unwrap();
            let e = i64::from(a + b * r1 + 1);
            let expected = Cyclotomic::from_integer(if e % 2 == 0 { 1 } else { -1 });
            assert_eq!(value, expected, "Vir({a},{b}), r' = {r1}");
        }
    }
}

#[test]
fn ca_transparent_objects_follow_b_parity() {
    for (a, b) in coprime_pairs(8, 9).filter(|&(_, b)| b > 2) {
        let m = MinimalModel::new(a, b).unwrap();
        let d = m.subcategory_ca().unwrap();
        let transparent: Vec<KacLabel> = d
            .transparent_objects()
            .into_iter()
            .map(|i| d.labels()[i])
            .collect();
        if b % 2 == 0 {
            let mut expected = vec![k(1, 1), k(a - 1, 1).canonical(a, b)];
            expected.sort();
            assert_eq!(transparent, expected, "Vir({a},{b})");
            assert!(!d.is_modular());
        } else {
            assert_eq!(transparent, vec![k(1, 1)], "Vir({a},{b})");
            assert!(d.is_modular());
        }
    }
}

/// With b = 2 the modules M_{r,1} and M_{a-r,1} coincide, so C_a is all of
/// Vir(a, 2) and the simple current M_{a-1,1} is the unit.
#[test]
fn b_two_collapses_ca_onto_the_whole_model() {
    for a in [3u32, 5, 7] {
        let m = MinimalModel::new(a, 2).unwrap();
        assert_eq!(k(a - 1, 1).canonical(a, 2), k(1, 1));
        let ca = m.subcategory_ca().unwrap();
        assert_eq!(ca, m.modular_datum().unwrap());
        assert!(ca.is_modular());
    }
}

#[test]
fn lee_yang_transparent_set() {
    let d = MinimalModel::new(2, 5).unwrap().modular_datum().unwrap();
    assert_eq!(d.transparent_objects(), vec![0]);
    let f = d.qdim()[1].to_complex();
    assert!((f.re + 0.6180339887498949).abs() < 1e-12);
}

#[test]
fn nested_subrings_compose() {
    let m = MinimalModel::new(5, 7).unwrap();
    let ring = m.fusion_ring().unwrap();
    let ca: Vec<usize> = m
        .ca_labels()
        .iter()
        .map(|&l| m.index_of(l).unwrap())
        .collect();
    let once = ring.full_subring(&ca).unwrap();
    // the unit and the simple current M(4,1) close on their own
    let current = m.index_of(k(4, 1)).unwrap();
    let inner = vec![m.index_of(k(1, 1)).unwrap(), current];
    let direct = ring.full_subring(&inner).unwrap();
    let positions: Vec<usize> = inner
        .iter()
        .map(|i| {
            once.labels()
                .iter()
                .position(|l| *l == m.labels()[*i])
                .unwrap()
        })
        .collect();
    let twice = once.full_subring(&positions).unwrap();
    assert_eq!(twice, direct);
    assert_eq!(direct.rank(), 2);
}

#[test]
fn subset_without_closure_names_escaping_triple() {
    let m = MinimalModel::new(3, 4).unwrap();
    let ring = m.fusion_ring().unwrap();
    let err = ring
        .full_subring(&[m.index_of(k(1, 1)).unwrap(), m.index_of(k(1, 2)).unwrap()])
        .unwrap_err();
    assert_eq!(
        err,
        Error::NotClosed {
            left: "M(1,2)".into(),
            right: "M(1,2)".into(),
            escaped: "M(1,3)".into()
        }
    );
}
