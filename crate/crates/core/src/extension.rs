//! Label-level coset machinery for L(ℓ, 0) ⊗ L(1, 0) as an extension of
//! L(ℓ + 1, 0) ⊗ Vir(a, a + b): branching rules, induction of the C_a
//! modules, locality, and the weight congruences tying the three categories
//! together.

use std::collections::BTreeMap;

use crate::affine_sl2::{affine_datum, AdmissibleLevel, AffineLabel};
use crate::datum::ModularDatum;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::fusion_ring::FusionRing;
use crate::virasoro::{sign, KacLabel, MinimalModel};

/// Weight of `L(1, tω)` for t ∈ {0, 1}.
pub fn level_one_weight(t: u32) -> Rational {
    match t {
        0 => Rational::zero(),
        _ => Rational::new(1, 4),
    }
}

#[derive(Clone, Debug)]
pub struct CosetSetup {
    base: AdmissibleLevel,
    shifted: AdmissibleLevel,
    vir: MinimalModel,
    base_datum: ModularDatum<AffineLabel>,
    shifted_datum: ModularDatum<AffineLabel>,
    ca_datum: ModularDatum<KacLabel>,
}

/// (r, t) ↦ list of (s, M_{r+1,s+1}) with s + t + r even.
pub type BranchingTable = BTreeMap<(u32, u32), Vec<(u32, KacLabel)>>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CongruenceViolation {
    pub r: u32,
    pub t: u32,
    pub s: u32,
}

pub fn coset_setup(a: u32, b: u32) -> Result<CosetSetup> {
    CosetSetup::new(a, b)
}

impl CosetSetup {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        let base = AdmissibleLevel::new(a, b)?;
        let shifted = AdmissibleLevel::new(a + b, b)
            .map_err(|e| Error::Inconsistent(format!("shifted level: {e}")))?;
        if shifted.level() != &(base.level() + &Rational::one()) {
            return Err(Error::Inconsistent("shifted level is not ℓ + 1".into()));
        }
        let vir = base.coset_model();
        let base_datum = affine_datum(&base)?;
        let shifted_datum = affine_datum(&shifted)?;
        let ca_datum = vir.subcategory_ca_direct()?;
        Ok(CosetSetup {
            base,
            shifted,
            vir,
            base_datum,
            shifted_datum,
            ca_datum,
        })
    }

    pub fn a(&self) -> u32 {
        self.base.a()
    }

    pub fn b(&self) -> u32 {
        self.base.b()
    }

    pub fn base(&self) -> &AdmissibleLevel {
        &self.base
    }

    pub fn shifted(&self) -> &AdmissibleLevel {
        &self.shifted
    }

    pub fn vir(&self) -> &MinimalModel {
        &self.vir
    }

    pub fn base_datum(&self) -> &ModularDatum<AffineLabel> {
        &self.base_datum
    }

    pub fn shifted_datum(&self) -> &ModularDatum<AffineLabel> {
        &self.shifted_datum
    }

    /// C_a of Vir(a, a + b).
    pub fn ca_datum(&self) -> &ModularDatum<KacLabel> {
        &self.ca_datum
    }

    fn max_s(&self) -> u32 {
        self.a() + self.b() - 2
    }

    /// Summands of `L(ℓ, rω) ⊗ L(1, tω)` over L(ℓ + 1, 0) ⊗ Vir(a, a + b),
    /// each with multiplicity one. Kac labels are the grid labels
    /// `(r + 1, s + 1)` as they appear in the decomposition.
    pub fn branching(&self, r: u32, t: u32) -> Result<Vec<(u32, KacLabel)>> {
        if r + 2 > self.a() {
            return Err(Error::Range(format!(
                "r = {r} outside [0, {}]",
                self.a() - 2
            )));
        }
        if t > 1 {
            return Err(Error::Range(format!("t = {t} outside {{0, 1}}")));
        }
        Ok((0..=self.max_s())
            .filter(|s| (s + t + r).is_multiple_of(2))
            .map(|s| (s, KacLabel::new(r + 1, s + 1)))
            .collect())
    }

    pub fn branching_table(&self) -> BranchingTable {
        let mut table = BTreeMap::new();
        for r in 0..self.a() - 1 {
            for t in 0..2 {
                table.insert((r, t), self.branching(r, t).expect("in range"));
            }
        }
        table
    }

    fn check_kac_r(&self, r: u32) -> Result<()> {
        if (1..self.a()).contains(&r) {
            Ok(())
        } else {
            Err(Error::Range(format!(
                "r = {r} outside [1, {}]",
                self.a() - 1
            )))
        }
    }

    /// Image of L(ℓ + 1, 0) ⊗ M_{r,1}: the pair (L(ℓ, (r-1)ω), parity of r - 1),
    /// the parity selecting L(1, 0) or L(1, ω).
    pub fn induce(&self, r: u32) -> Result<(AffineLabel, u32)> {
        self.check_kac_r(r)?;
        Ok((AffineLabel(r - 1), (r - 1) % 2))
    }

    /// Conformal weights of the summands L(ℓ + 1, sω) ⊗ M_{r,s+1}, s even, of
    /// the induced object.
    pub fn induced_summand_weights(&self, r: u32) -> Result<Vec<Rational>> {
        self.check_kac_r(r)?;
        (0..=self.max_s())
            .step_by(2)
            .map(|s| {
                let h = self.vir.conformal_weight(KacLabel::new(r, s + 1))?;
                Ok(self.shifted.weight(s) + h)
            })
            .collect()
    }

    /// Whether the twist acts by one scalar on the induced object.
    pub fn check_locality(&self, r: u32) -> Result<bool> {
        Ok(shared_exponent(&self.induced_summand_weights(r)?).is_some())
    }

    /// h_base(rω) + h₁(tω) ≡ h_shifted(sω) + h^{vir}_{r+1,s+1} (mod 1) over
    /// the whole branching table.
    pub fn verify_weight_congruence(&self) -> Result<Vec<CongruenceViolation>> {
        let mut violations = Vec::new();
        for ((r, t), entries) in self.branching_table() {
            let lhs = self.base.weight(r) + level_one_weight(t);
            for (s, label) in entries {
                let rhs = self.shifted.weight(s) + self.vir.conformal_weight(label)?;
                if !lhs.congruent_mod_one(&rhs) {
                    violations.push(CongruenceViolation { r, t, s });
                }
            }
        }
        Ok(violations)
    }

    /// h^{vir}_{r,1} ≡ h_base((r - 1)ω) + ((r - 1) mod 2)/4 (mod 1) for all r.
    pub fn verify_twist_relation(&self) -> Result<bool> {
        for r in 1..self.a() {
            let vir_h = self.vir.conformal_weight(KacLabel::new(r, 1))?;
            let aff_h = self.base.weight(r - 1) + level_one_weight((r - 1) % 2);
            if !vir_h.congruent_mod_one(&aff_h) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Induction sends C_a fusion to affine fusion, with level-one parities
    /// adding mod 2.
    pub fn verify_ring_hom(&self) -> bool {
        ring_hom_holds(
            self.a(),
            self.b(),
            self.ca_datum.ring(),
            self.base_datum.ring(),
        )
    }

    /// sratio_vir(M_{r,1}, M_{r',1}) = (-1)^{(r-1)(r'-1)}·sratio_aff((r-1)ω, (r'-1)ω).
    pub fn hopf_transport_holds(&self) -> bool {
        let a = self.a();
        for r in 1..a {
            for r1 in 1..a {
                let (Ok(x), Ok(y)) = (self.ca_index(r), self.ca_index(r1)) else {
                    return false;
                };
                let vir = &self.ca_datum.sratio()[x][y];
                let aff = &self.base_datum.sratio()[(r - 1) as usize][(r1 - 1) as usize];
                let sgn = sign(i64::from(r - 1) * i64::from(r1 - 1));
                if *vir != aff.scale_int(sgn) {
                    return false;
                }
            }
        }
        true
    }

    /// Index of M_{r,1} in the C_a datum.
    pub fn ca_index(&self, r: u32) -> Result<usize> {
        self.check_kac_r(r)?;
        let label = KacLabel::new(r, 1).canonical(self.vir.a(), self.vir.b());
        self.ca_datum
            .labels()
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::Inconsistent(format!("{label} missing from C_a")))
    }
}

/// The common value mod 1 of a list of weights, if there is one.
pub fn shared_exponent(weights: &[Rational]) -> Option<Rational> {
    let first = weights.first()?.fract_positive();
    weights
        .iter()
        .all(|w| w.congruent_mod_one(&first))
        .then_some(first)
}

/// Ring-homomorphism check between C_a of Vir(a, a + b) and the affine ring at
/// level -2 + a/b, on labels and multiplicities.
pub fn ring_hom_holds(
    a: u32,
    b: u32,
    ca: &FusionRing<KacLabel>,
    affine: &FusionRing<AffineLabel>,
) -> bool {
    let vir_b = a + b;
    // recover r from the canonical form of M_{r,1}
    let kac_r = |l: &KacLabel| if l.s == 1 { l.r } else { a - l.r };
    let position = |r: u32| {
        let label = KacLabel::new(r, 1).canonical(a, vir_b);
        ca.labels().iter().position(|&l| l == label)
    };
    if ca.rank() != (a - 1) as usize || affine.rank() != (a - 1) as usize {
        return false;
    }
    for r in 1..a {
        for r1 in 1..a {
            let (Some(x), Some(y)) = (position(r), position(r1)) else {
                return false;
            };
            let mut induced: BTreeMap<(u32, u32), u32> = BTreeMap::new();
            for (k, mult) in ca.fuse(x, y).expect("valid") {
                let r2 = kac_r(ca.label(k));
                *induced.entry((r2 - 1, (r2 - 1) % 2)).or_default() += mult;
            }
            let parity = ((r - 1) + (r1 - 1)) % 2;
            let mut direct: BTreeMap<(u32, u32), u32> = BTreeMap::new();
            for (k, mult) in affine
                .fuse((r - 1) as usize, (r1 - 1) as usize)
                .expect("valid")
            {
                *direct.entry((affine.label(k).0, parity)).or_default() += mult;
            }
            if induced != direct {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(r: u32, s: u32) -> KacLabel {
        KacLabel::new(r, s)
    }

    #[test]
    fn setups() {
        let s = coset_setup(3, 1).unwrap();
        assert_eq!(s.shifted().level(), &Rational::from(2));
        assert_eq!((s.vir().a(), s.vir().b()), (3, 4));
        let s = coset_setup(2, 1).unwrap();
        assert_eq!(s.shifted().level(), &Rational::from(1));
        assert_eq!(s.vir().labels().len(), 1);
        let s = coset_setup(3, 2).unwrap();
        assert_eq!((s.shifted().a(), s.shifted().b()), (5, 2));
        assert_eq!((s.vir().a(), s.vir().b()), (3, 5));
        assert!(coset_setup(4, 2).is_err());
    }

    #[test]
    fn ising_branching() {
        let s = coset_setup(3, 1).unwrap();
        assert_eq!(s.branching(0, 0).unwrap(), vec![(0, k(1, 1)), (2, k(1, 3))]);
        assert_eq!(s.branching(0, 1).unwrap(), vec![(1, k(1, 2))]);
        assert!(s.branching(2, 0).is_err());
        assert!(s.branching(0, 2).is_err());
    }

    #[test]
    fn trivial_branching() {
        let s = coset_setup(2, 1).unwrap();
        assert_eq!(s.branching(0, 0).unwrap(), vec![(0, k(1, 1))]);
        assert_eq!(s.branching(0, 1).unwrap(), vec![(1, k(1, 2))]);
    }

    #[test]
    fn induction() {
        let s = coset_setup(5, 2).unwrap();
        assert_eq!(s.induce(1).unwrap(), (AffineLabel(0), 0));
        assert_eq!(s.induce(2).unwrap(), (AffineLabel(1), 1));
        assert_eq!(s.induce(4).unwrap(), (AffineLabel(3), 1));
        assert!(s.induce(0).is_err());
        assert!(s.induce(5).is_err());
    }

    #[test]
    fn ising_locality_exponent() {
        let s = coset_setup(3, 1).unwrap();
        let w = s.induced_summand_weights(2).unwrap();
        assert_eq!(shared_exponent(&w), Some(Rational::new(1, 2)));
        assert!(s.check_locality(2).unwrap());
    }

    #[test]
    fn perturbed_weight_is_not_local() {
        let s = coset_setup(4, 3).unwrap();
        let mut w = s.induced_summand_weights(2).unwrap();
        assert!(shared_exponent(&w).is_some());
        w[1] = &w[1] + &Rational::new(1, 3);
        assert!(shared_exponent(&w).is_none());
    }

    #[test]
    fn ising_congruences() {
        let s = coset_setup(3, 1).unwrap();
        assert!(s.verify_weight_congruence().unwrap().is_empty());
        assert!(s.verify_twist_relation().unwrap());
        assert!(s.verify_ring_hom());
        assert!(s.hopf_transport_holds());
    }

    #[test]
    fn perturbed_affine_ring_breaks_hom() {
        let s = coset_setup(4, 3).unwrap();
        let bad = s.base_datum().ring().with_coefficient(1, 1, 2, 0);
        assert!(!ring_hom_holds(4, 3, s.ca_datum().ring(), &bad));
    }
}
