use fusionlab_core::affine_sl2::{
    affine_category, affine_is_modular, cg_bound, simple_current_closed_form, simple_current_row,
    AdmissibleLevel, AffineLabel,
};
use fusionlab_core::exactnum::{Cyclotomic, Rational};
use fusionlab_core::virasoro::KacLabel;
use num_integer::Integer;

fn affine_pairs(amax: u32, bmax: u32) -> impl Iterator<Item = (u32, u32)> {
    (2..=amax).flat_map(move |a| {
        (1..=bmax)
            .filter(move |&b| a.gcd(&b) == 1)
            .map(move |b| (a, b))
    })
}

/// Multiplicity of L(c) in L(r) ⊗ L(r') from weight counting: the number of
/// weight-c vectors minus the number of weight-(c+2) vectors.
fn sl2_multiplicity(r: i64, r1: i64, c: i64) -> i64 {
    let weights = |n: i64| (0..=n).map(move |i| n - 2 * i);
    let count = |w: i64| {
        weights(r)
            .flat_map(|x| weights(r1).map(move |y| x + y))
            .filter(|&z| z == w)
            .count() as i64
    };
    count(c) - count(c + 2)
}

#[test]
fn cg_bound_matches_weight_counting() {
    for r in 0..8u32 {
        for r1 in 0..8u32 {
            for r2 in 0..16u32 {
                let oracle = sl2_multiplicity(r.into(), r1.into(), r2.into());
                assert_eq!(
                    i64::from(cg_bound(AffineLabel(r), AffineLabel(r1), AffineLabel(r2))),
                    oracle,
                    "({r}, {r1}, {r2})"
                );
            }
        }
    }
    assert_eq!(sl2_multiplicity(2, 2, 2), 1);
}

#[test]
fn affine_fusion_is_bounded_by_clebsch_gordan() {
    for (a, b) in affine_pairs(8, 9) {
        let d = affine_category(a, b).unwrap();
        let n = d.rank();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let bound = cg_bound(d.labels()[i], d.labels()[j], d.labels()[k]);
                    assert!(
                        d.ring().coefficient(i, j, k) <= bound,
                        "({a},{b}) {i} {j} {k}"
                    );
                }
            }
        }
    }
}

#[test]
fn fusion_depends_only_on_a() {
    for a in 2..=8u32 {
        let reference = affine_category(a, 1).unwrap();
        for b in (2..=9).filter(|b| a.gcd(b) == 1) {
            let d = affine_category(a, b).unwrap();
            assert_eq!(d.ring(), reference.ring(), "a = {a}, b = {b}");
        }
    }
}

#[test]
fn modularity_follows_b_parity() {
    for (a, b) in affine_pairs(8, 9) {
        assert_eq!(affine_is_modular(a, b).unwrap(), b % 2 == 1, "({a},{b})");
    }
}

#[test]
fn hopf_matrix_symmetry_balancing_and_axioms() {
    for (a, b) in affine_pairs(8, 9) {
        let d = affine_category(a, b).unwrap();
        assert!(d.ring().verify_axioms().passed());
        assert!(d.hopf_symmetric(), "({a},{b})");
        assert!(d.balancing_holds(), "({a},{b})");
    }
}

#[test]
fn simple_current_rows_match_closed_form() {
    for (a, b) in affine_pairs(8, 9) {
        let d = affine_category(a, b).unwrap();
        let row = simple_current_row(&d, b).unwrap();
        for (col, value) in row.iter().enumerate() {
            let expected = Cyclotomic::from_integer(simple_current_closed_form(b, col as u32));
            assert_eq!(*value, expected);
        }
        if b % 2 == 1 && a > 2 {
            assert_ne!(row[0], row[1], "b odd alternates");
        } else {
            assert!(row.iter().all(|x| *x == row[0]));
        }
    }
}

#[test]
fn weights_and_twists() {
    let level = AdmissibleLevel::new(3, 2).unwrap();
    assert_eq!(level.weight(1), Rational::new(1, 2));
    // level 1, b = 1: h(ω) = 3/(4·3) = 1/4
    assert_eq!(
        AdmissibleLevel::new(3, 1).unwrap().weight(1),
        Rational::new(1, 4)
    );
    // twist of L(rω) differs from that of M_{r+1,1} in Vir(a, a+b) by r̄/4
    for (a, b) in affine_pairs(8, 9) {
        let level = AdmissibleLevel::new(a, b).unwrap();
        let d = affine_category(a, b).unwrap();
        let vir = level.coset_model();
        for (i, l) in d.labels().iter().enumerate() {
            let vir_h = vir.conformal_weight(KacLabel::new(l.0 + 1, 1)).unwrap();
            let shift = Rational::new(i64::from(l.0 % 2), 4);
            assert!((&d.twist_exponents()[i] + &shift).congruent_mod_one(&vir_h));
        }
    }
}
