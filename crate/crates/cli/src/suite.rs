//! The invariant suite run by `verify`, and the parity grid run by `sweep`.

use fusionlab_core::affine_sl2::{cg_bound, simple_current_closed_form};
use fusionlab_core::extension::ring_hom_holds;
use fusionlab_core::{
    affine_category, CosetSetup, Cyclotomic, FusionRing, KacLabel, MinimalModel, ModularDatum,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Every check name, in report order.
pub const CHECKS: [&str; 21] = [
    "vir.axioms",
    "vir.verlinde",
    "vir.balancing",
    "vir.hopf_symmetry",
    "vir.modular",
    "vir.simple_current",
    "ca.axioms",
    "ca.verlinde",
    "ca.balancing",
    "ca.parity",
    "affine.axioms",
    "affine.verlinde",
    "affine.balancing",
    "affine.simple_current",
    "affine.cg_bound",
    "affine.parity",
    "extension.weight_congruence",
    "extension.twist_relation",
    "extension.ring_hom",
    "extension.locality",
    "extension.hopf_transport",
];

/// Coprime pairs with amin ≤ a ≤ amax, bmin ≤ b ≤ bmax.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairRange {
    pub amin: u32,
    pub amax: u32,
    pub bmin: u32,
    pub bmax: u32,
}

impl PairRange {
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in self.amin.max(2)..=self.amax {
            for b in self.bmin.max(1)..=self.bmax {
                if gcd(a, b) == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn gcd(mut x: u32, mut y: u32) -> u32 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub a: u32,
    pub b: u32,
    pub ok: bool,
    pub detail: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (a, b) = ({}, {})", self.name, self.a, self.b)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

struct Recorder {
    a: u32,
    b: u32,
    out: Vec<CheckOutcome>,
}

impl Recorder {
    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let detail = (!ok).then(detail);
        self.out.push(CheckOutcome {
            name,
            a: self.a,
            b: self.b,
            ok,
            detail,
        });
    }

    fn error(&mut self, names: &[&'static str], err: impl fmt::Display) {
        for &name in names {
            self.out.push(CheckOutcome {
                name,
                a: self.a,
                b: self.b,
                ok: false,
                detail: Some(err.to_string()),
            });
        }
    }
}

fn datum_checks<L: Clone + fmt::Display>(
    rec: &mut Recorder,
    prefix: &str,
    ring: &FusionRing<L>,
    datum: &ModularDatum<L>,
) {
    let report = ring.verify_axioms();
    rec.check(name(prefix, "axioms"), report.passed(), || {
        let f: Vec<String> = report
            .failures()
            .map(|c| format!("{} {:?}", c.axiom, c.counterexample))
            .collect();
        f.join(", ")
    });
    let verlinde = ring.verlinde_eigencheck(datum.sratio()).unwrap_or(false);
    rec.check(name(prefix, "verlinde"), verlinde, || {
        "fusion matrices not diagonalized by S-ratio columns".into()
    });
    let twists: Vec<Cyclotomic> = (0..datum.rank()).map(|x| datum.twist(x)).collect();
    let balancing = ring
        .balancing_check(&datum.hopf_matrix(), &twists, datum.qdim())
        .unwrap_or(false);
    rec.check(name(prefix, "balancing"), balancing, || {
        "balancing identity fails".into()
    });
}

fn name(prefix: &str, check: &str) -> &'static str {
    let full = format!("{prefix}.{check}");
    CHECKS
        .iter()
        .copied()
        .find(|c| *c == full)
        .expect("registered check name")
}

/// Every invariant for one pair. With `plant_defect` the affine fusion ring
/// gets one spurious multiplicity before the ring-level checks run.
pub fn run_pair(a: u32, b: u32, plant_defect: bool) -> Vec<CheckOutcome> {
    let mut rec = Recorder {
        a,
        b,
        out: Vec::new(),
    };
    let parity = b % 2 == 1;

    if b >= 2 {
        match MinimalModel::new(a, b).and_then(|m| Ok((m.modular_datum()?, m))) {
            Ok((full, m)) => {
                datum_checks(&mut rec, "vir", full.ring(), &full);
                rec.check("vir.hopf_symmetry", full.hopf_symmetric(), || {
                    "S not symmetric".into()
                });
                rec.check("vir.modular", full.is_modular(), || {
                    format!("transparent set {:?}", full.transparent_objects())
                });
                let bad = (1..a).find(|&r1| {
                    let e = i64::from(a) + i64::from(b) * i64::from(r1) + 1;
                    let expected = Cyclotomic::from_integer(if e % 2 == 0 { 1 } else { -1 });
                    m.sratio(KacLabel::new(a - 1, 1), KacLabel::new(r1, 1)).ok() != Some(expected)
                });
                rec.check("vir.simple_current", bad.is_none(), || {
                    format!("column r' = {}", bad.unwrap_or(0))
                });
                match m.subcategory_ca() {
                    Ok(ca) => {
                        datum_checks(&mut rec, "ca", ca.ring(), &ca);
                        let modular = ca.is_modular();
                        rec.check("ca.parity", modular == parity, || {
                            format!("C_a modular = {modular}, b odd = {parity}")
                        });
                    }
                    Err(e) => rec.error(
                        &["ca.axioms", "ca.verlinde", "ca.balancing", "ca.parity"],
                        e,
                    ),
                }
            }
            Err(e) => rec.error(&CHECKS[..10], e),
        }
    }

    let affine = match affine_category(a, b) {
        Ok(d) => d,
        Err(e) => {
            rec.error(&CHECKS[10..], e);
            return rec.out;
        }
    };
    let mut ring = affine.ring().clone();
    if plant_defect {
        let top = ring.rank() - 1;
        let unit = ring.unit();
        ring = ring.with_coefficient(top, top, unit, ring.coefficient(top, top, unit) + 1);
    }
    datum_checks(&mut rec, "affine", &ring, &affine);
    let top = affine.rank() - 1;
    let bad = (0..affine.rank()).find(|&c| {
        affine.sratio()[top][c] != Cyclotomic::from_integer(simple_current_closed_form(b, c as u32))
    });
    rec.check("affine.simple_current", bad.is_none(), || {
        format!("column {}", bad.unwrap_or(0))
    });
    let labels = affine.labels();
    let n = ring.rank();
    let over = (0..n * n * n)
        .map(|x| (x / (n * n), x / n % n, x % n))
        .find(|&(i, j, k)| ring.coefficient(i, j, k) > cg_bound(labels[i], labels[j], labels[k]));
    rec.check("affine.cg_bound", over.is_none(), || {
        format!(
            "N{:?} exceeds the Clebsch–Gordan bound",
            over.unwrap_or_default()
        )
    });
    let modular = affine.is_modular();
    rec.check("affine.parity", modular == parity, || {
        format!("affine modular = {modular}, b odd = {parity}")
    });

    match CosetSetup::new(a, b) {
        Ok(setup) => {
            match setup.verify_weight_congruence() {
                Ok(v) => rec.check("extension.weight_congruence", v.is_empty(), || {
                    format!("violations {v:?}")
                }),
                Err(e) => rec.error(&["extension.weight_congruence"], e),
            }
            match setup.verify_twist_relation() {
                Ok(ok) => rec.check("extension.twist_relation", ok, || {
                    "twist relation fails".into()
                }),
                Err(e) => rec.error(&["extension.twist_relation"], e),
            }
            let hom = ring_hom_holds(a, b, setup.ca_datum().ring(), &ring);
            rec.check("extension.ring_hom", hom, || {
                "induction is not a ring homomorphism".into()
            });
            let nonlocal: Vec<u32> = (1..a)
                .filter(|&r| !setup.check_locality(r).unwrap_or(false))
                .collect();
            rec.check("extension.locality", nonlocal.is_empty(), || {
                format!("non-local for r in {nonlocal:?}")
            });
            rec.check(
                "extension.hopf_transport",
                setup.hopf_transport_holds(),
                || "C_a and affine S-ratios disagree".into(),
            );
        }
        Err(e) => rec.error(&CHECKS[16..], e),
    }
    rec.out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// (check, passed, total) in [`CHECKS`] order.
    pub counts: Vec<(&'static str, usize, usize)>,
    pub pairs: usize,
    pub first_failure: Option<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn verify(range: PairRange, plant_defect: bool) -> VerifyReport {
    let pairs = range.pairs();
    let results: Vec<Vec<CheckOutcome>> = pairs
        .par_iter()
        .map(|&(a, b)| run_pair(a, b, plant_defect))
        .collect();
    let mut counts: Vec<(&'static str, usize, usize)> = CHECKS.iter().map(|&c| (c, 0, 0)).collect();
    let mut first_failure = None;
    for outcome in results.iter().flatten() {
        let slot = counts
            .iter_mut()
            .find(|c| c.0 == outcome.name)
            .expect("registered check");
        slot.2 += 1;
        if outcome.ok {
            slot.1 += 1;
        } else if first_failure.is_none() {
            first_failure = Some(outcome.clone());
        }
    }
    VerifyReport {
        counts,
        pairs: pairs.len(),
        first_failure,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCell {
    pub a: u32,
    pub b: u32,
    /// None when b = 1 (no minimal model).
    pub ca_modular: Option<bool>,
    pub affine_modular: bool,
    pub expected: bool,
}

impl SweepCell {
    pub fn matches(&self) -> bool {
        self.ca_modular.is_none_or(|v| v == self.expected) && self.affine_modular == self.expected
    }
}

pub fn sweep(range: PairRange) -> fusionlab_core::Result<Vec<SweepCell>> {
    range
        .pairs()
        .par_iter()
        .map(|&(a, b)| {
            let ca_modular = if b >= 2 {
                Some(MinimalModel::new(a, b)?.subcategory_ca()?.is_modular())
            } else {
                None
            };
            Ok(SweepCell {
                a,
                b,
                ca_modular,
                affine_modular: affine_category(a, b)?.is_modular(),
                expected: b % 2 == 1,
            })
        })
        .collect()
}
