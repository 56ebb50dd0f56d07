//! Modular data of the Virasoro minimal models Vir(a, b) and of the full
//! subcategory C_a generated by the modules `M_{r,1}`.

use std::fmt;

use num_integer::Integer;

pub use crate::datum::ModularDatum;
use crate::error::{Error, Result};
use crate::exactnum::{sin_pi, sin_pi_inverse, Cyclotomic, Rational};
use crate::fusion_ring::FusionRing;

/// A simple module `M_{r,s}`, stored as the lexicographically smaller member
/// of its orbit {(r, s), (a - r, b - s)}.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KacLabel {
    pub r: u32,
    pub s: u32,
}

impl KacLabel {
    pub const fn new(r: u32, s: u32) -> Self {
        KacLabel { r, s }
    }

    /// The other member of the orbit in the (a, b) Kac table.
    pub fn reflect(self, a: u32, b: u32) -> Self {
        KacLabel::new(a - self.r, b - self.s)
    }

    pub fn canonical(self, a: u32, b: u32) -> Self {
        self.min(self.reflect(a, b))
    }
}

impl fmt::Display for KacLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.r, self.s)
    }
}

/// Fusion coefficient `N^c_{t,t',t''}` of the sl₂-type truncated
/// Clebsch–Gordan rule at cutoff `c`.
pub fn truncated_cg(c: u32, t: u32, t1: u32, t2: u32) -> u32 {
    let (c, t, t1, t2) = (c as i64, t as i64, t1 as i64, t2 as i64);
    let lower = (t - t1).abs() + 1;
    let upper = (t + t1 - 1).min(2 * c - t - t1 - 1);
    u32::from(lower <= t2 && t2 <= upper && (t + t1 + t2) % 2 == 1)
}

/// (-1)^e as an integer.
pub(crate) fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn check_coprime(a: u32, b: u32) -> Result<()> {
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinimalModel {
    a: u32,
    b: u32,
    labels: Vec<KacLabel>,
}

impl MinimalModel {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::Range(format!(
                "Vir(a, b) needs a, b >= 2 (got {a}, {b})"
            )));
        }
        check_coprime(a, b)?;
        let mut labels: Vec<KacLabel> = (1..a)
            .flat_map(|r| (1..b).map(move |s| KacLabel::new(r, s).canonical(a, b)))
            .collect();
        labels.sort_unstable();
        labels.dedup();
        debug_assert_eq!(labels.len() as u32, (a - 1) * (b - 1) / 2);
        Ok(MinimalModel { a, b, labels })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Canonical labels in ascending order; `M(1,1)` comes first.
    pub fn labels(&self) -> &[KacLabel] {
        &self.labels
    }

    /// Central charge 1 - 6(a - b)²/(ab).
    pub fn central_charge(&self) -> Rational {
        let (a, b) = (i64::from(self.a), i64::from(self.b));
        Rational::one() - Rational::new(6 * (a - b) * (a - b), a * b)
    }

    pub fn check_label(&self, l: KacLabel) -> Result<()> {
        if (1..self.a).contains(&l.r) && (1..self.b).contains(&l.s) {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange(format!(
                "{l} in Vir({}, {})",
                self.a, self.b
            )))
        }
    }

    pub fn canonical(&self, l: KacLabel) -> Result<KacLabel> {
        self.check_label(l)?;
        Ok(l.canonical(self.a, self.b))
    }

    pub fn index_of(&self, l: KacLabel) -> Result<usize> {
        let c = self.canonical(l)?;
        Ok(self
            .labels
            .binary_search(&c)
            .expect("canonical labels are listed"))
    }

    /// h_{r,s} = ((rb - sa)² - (a - b)²) / (4ab).
    pub fn conformal_weight(&self, l: KacLabel) -> Result<Rational> {
        self.check_label(l)?;
        let (a, b) = (i64::from(self.a), i64::from(self.b));
        let (r, s) = (i64::from(l.r), i64::from(l.s));
        let x = r * b - s * a;
        Ok(Rational::new(x * x - (a - b) * (a - b), 4 * a * b))
    }

    /// Multiplicity of `l3` in `l1 ⊗ l2`, summed over both grid
    /// representatives of `l3`.
    pub fn fusion_coefficient(&self, l1: KacLabel, l2: KacLabel, l3: KacLabel) -> Result<u32> {
        for l in [l1, l2, l3] {
            self.check_label(l)?;
        }
        let term = |t: KacLabel| {
            truncated_cg(self.a, l1.r, l2.r, t.r) * truncated_cg(self.b, l1.s, l2.s, t.s)
        };
        let first = term(l3);
        let second = term(l3.reflect(self.a, self.b));
        if first > 0 && second > 0 {
            return Err(Error::Inconsistent(format!(
                "both orbit members of {l3} occur in {l1} x {l2}"
            )));
        }
        Ok(first + second)
    }

    /// Normalized Hopf link S_{X,Y}/S_{1,Y}, evaluated on the labels as given.
    pub fn sratio(&self, x: KacLabel, y: KacLabel) -> Result<Cyclotomic> {
        self.check_label(x)?;
        self.check_label(y)?;
        let (a, b) = (i64::from(self.a), i64::from(self.b));
        let (r, s) = (i64::from(x.r), i64::from(x.s));
        let (r1, s1) = (i64::from(y.r), i64::from(y.s));
        let (ua, ub) = (u64::from(self.a), u64::from(self.b));
        let numer = &sin_pi(b * r * r1, ua)? * &sin_pi(a * s * s1, ub)?;
        let denom_inv = &sin_pi_inverse(b * r1, ua)? * &sin_pi_inverse(a * s1, ub)?;
        Ok((&numer * &denom_inv).scale_int(sign((r + 1) * s1 + (s + 1) * r1)))
    }

    pub fn fusion_ring(&self) -> Result<FusionRing<KacLabel>> {
        let n = self.labels.len();
        let mut coeffs = Vec::with_capacity(n * n * n);
        for &x in &self.labels {
            for &y in &self.labels {
                for &z in &self.labels {
                    coeffs.push(self.fusion_coefficient(x, y, z)?);
                }
            }
        }
        // every M_{r,s} is self-dual
        FusionRing::new(self.labels.clone(), 0, (0..n).collect(), coeffs)
    }

    /// Full datum; the Verlinde eigen-property is checked before returning.
    pub fn modular_datum(&self) -> Result<ModularDatum<KacLabel>> {
        let ring = self.fusion_ring()?;
        let h = self
            .labels
            .iter()
            .map(|&l| self.conformal_weight(l))
            .collect::<Result<Vec<_>>>()?;
        let sratio = self
            .labels
            .iter()
            .map(|&x| {
                self.labels
                    .iter()
                    .map(|&y| self.sratio(x, y))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ModularDatum::new(ring, h, sratio)?.verified()
    }

    /// Canonical forms of `M_{r,1}`, 1 ≤ r ≤ a - 1, deduplicated and sorted.
    pub fn ca_labels(&self) -> Vec<KacLabel> {
        let mut out: Vec<KacLabel> = (1..self.a)
            .map(|r| KacLabel::new(r, 1).canonical(self.a, self.b))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The full subcategory C_a on the modules `M_{r,1}`.
    pub fn subcategory_ca(&self) -> Result<ModularDatum<KacLabel>> {
        self.modular_datum()?.restrict(&self.ca_indices())
    }

    /// Build C_a without constructing the full datum first.
    pub fn subcategory_ca_direct(&self) -> Result<ModularDatum<KacLabel>> {
        let full = self.fusion_ring()?;
        let ring = full.full_subring(&self.ca_indices())?;
        let labels = ring.labels().to_vec();
        let h = labels
            .iter()
            .map(|&l| self.conformal_weight(l))
            .collect::<Result<Vec<_>>>()?;
        let sratio = labels
            .iter()
            .map(|&x| labels.iter().map(|&y| self.sratio(x, y)).collect())
            .collect::<Result<Vec<_>>>()?;
        ModularDatum::new(ring, h, sratio)?.verified()
    }

    fn ca_indices(&self) -> Vec<usize> {
        self.ca_labels()
            .into_iter()
            .map(|l| self.index_of(l).expect("valid"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(r: u32, s: u32) -> KacLabel {
        KacLabel::new(r, s)
    }

    #[test]
    fn model_construction() {
        assert_eq!(
            MinimalModel::new(2, 5).unwrap().labels(),
            &[k(1, 1), k(1, 2)]
        );
        assert_eq!(MinimalModel::new(3, 4).unwrap().labels().len(), 3);
        assert_eq!(
            MinimalModel::new(2, 4),
            Err(Error::NotCoprime { a: 2, b: 4 })
        );
        assert!(matches!(MinimalModel::new(1, 3), Err(Error::Range(_))));
        assert_eq!(
            MinimalModel::new(3, 4).unwrap().central_charge(),
            Rational::new(1, 2)
        );
    }

    #[test]
    fn weights() {
        let ising = MinimalModel::new(3, 4).unwrap();
        assert_eq!(ising.conformal_weight(k(1, 1)).unwrap(), Rational::zero());
        assert_eq!(
            ising.conformal_weight(k(2, 1)).unwrap(),
            Rational::new(1, 2)
        );
        assert_eq!(
            ising.conformal_weight(k(1, 2)).unwrap(),
            Rational::new(1, 16)
        );
        let ly = MinimalModel::new(2, 5).unwrap();
        assert_eq!(ly.conformal_weight(k(1, 2)).unwrap(), Rational::new(-1, 5));
        assert!(ly.conformal_weight(k(2, 1)).is_err());
    }

    #[test]
    fn fusion_coefficients() {
        let ly = MinimalModel::new(2, 5).unwrap();
        assert_eq!(ly.fusion_coefficient(k(1, 2), k(1, 2), k(1, 2)).unwrap(), 1);
        assert_eq!(ly.fusion_coefficient(k(1, 2), k(1, 2), k(1, 1)).unwrap(), 1);
        let ising = MinimalModel::new(3, 4).unwrap();
        assert_eq!(
            ising.fusion_coefficient(k(2, 1), k(2, 1), k(1, 1)).unwrap(),
            1
        );
        assert_eq!(
            ising.fusion_coefficient(k(2, 1), k(2, 1), k(1, 2)).unwrap(),
            0
        );
        for &x in ising.labels() {
            assert_eq!(ising.fusion_coefficient(k(1, 1), x, x).unwrap(), 1);
        }
    }

    #[test]
    fn lee_yang_fusion() {
        let ring = MinimalModel::new(2, 5).unwrap().fusion_ring().unwrap();
        assert_eq!(ring.fuse(1, 1).unwrap(), vec![(0, 1), (1, 1)]);
        assert!(ring.verify_axioms().passed());
    }

    #[test]
    fn ising_fusion_subset_not_closed() {
        let m = MinimalModel::new(3, 4).unwrap();
        let ring = m.fusion_ring().unwrap();
        let subset = [m.index_of(k(1, 1)).unwrap(), m.index_of(k(1, 2)).unwrap()];
        assert!(matches!(
            ring.full_subring(&subset),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn lee_yang_quantum_dimension() {
        let ly = MinimalModel::new(2, 5).unwrap();
        let q = ly.sratio(k(1, 2), k(1, 1)).unwrap();
        let expected = -(&sin_pi(1, 5).unwrap() * &sin_pi(2, 5).unwrap().inverse().unwrap());
        assert_eq!(q, expected);
        let f = q.to_complex();
        assert!((f.re - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn unit_row_is_one() {
        let m = MinimalModel::new(4, 7).unwrap();
        for &y in m.labels() {
            assert_eq!(m.sratio(k(1, 1), y).unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn ising_datum() {
        let d = MinimalModel::new(3, 4).unwrap().modular_datum().unwrap();
        let mut h = d.weights().to_vec();
        h.sort();
        assert_eq!(
            h,
            vec![Rational::zero(), Rational::new(1, 16), Rational::new(1, 2)]
        );
        assert!(d.is_modular());
        assert!(d.balancing_holds());
    }

    #[test]
    fn trivial_and_lee_yang_datum() {
        let d = MinimalModel::new(2, 3).unwrap().modular_datum().unwrap();
        assert_eq!(d.rank(), 1);
        assert!(d.is_modular());
        let ly = MinimalModel::new(2, 5).unwrap().modular_datum().unwrap();
        assert_eq!(
            ly.twist_exponents(),
            &[Rational::zero(), Rational::new(4, 5)]
        );
        assert_eq!(ly.transparent_objects(), vec![0]);
    }

    #[test]
    fn ca_sizes_and_modularity() {
        let ising = MinimalModel::new(3, 4).unwrap().subcategory_ca().unwrap();
        assert_eq!(ising.rank(), 2);
        assert_eq!(
            ising.twist_exponents(),
            &[Rational::zero(), Rational::new(1, 2)]
        );
        assert!(!ising.is_modular());
        assert_eq!(ising.transparent_objects(), vec![0, 1]);
        assert_eq!(
            MinimalModel::new(2, 7)
                .unwrap()
                .subcategory_ca()
                .unwrap()
                .rank(),
            1
        );
        assert_eq!(
            MinimalModel::new(4, 5)
                .unwrap()
                .subcategory_ca()
                .unwrap()
                .rank(),
            3
        );
        assert!(MinimalModel::new(5, 3)
            .unwrap()
            .subcategory_ca()
            .unwrap()
            .is_modular());
    }

    #[test]
    fn direct_ca_agrees_with_restriction() {
        for (a, b) in [(3, 4), (5, 4), (4, 7), (7, 3)] {
            let m = MinimalModel::new(a, b).unwrap();
            assert_eq!(
                m.subcategory_ca().unwrap(),
                m.subcategory_ca_direct().unwrap()
            );
        }
    }

    #[test]
    fn perturbed_fusion_breaks_verlinde() {
        let m = MinimalModel::new(3, 4).unwrap();
        let d = m.modular_datum().unwrap();
        let bad = d.ring().with_coefficient(1, 1, 0, 2);
        assert!(!bad.verlinde_eigencheck(d.sratio()).unwrap());
    }
}
