//! The modular datum of a ribbon fusion category, expressed through normalized
//! Hopf-link ratios `S_{X,Y} / S_{1,Y}` only.

use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::{cyc_root, Cyclotomic, Rational};
use crate::fusion_ring::FusionRing;

/// Absolute tolerance for the float modulus comparison in the scalar-twist test.
pub const MODULUS_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ModularDatum<L> {
    ring: FusionRing<L>,
    h: Vec<Rational>,
    twist_exponent: Vec<Rational>,
    sratio: Vec<Vec<Cyclotomic>>,
    qdim: Vec<Cyclotomic>,
}

impl<L: Clone + fmt::Display> ModularDatum<L> {
    /// Assemble a datum from its fusion ring, conformal weights and normalized
    /// S-ratios. Twist exponents and quantum dimensions are derived. No
    /// Verlinde check is run here; see [`verified`](Self::verified).
    pub fn new(
        ring: FusionRing<L>,
        h: Vec<Rational>,
        sratio: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let n = ring.rank();
        if h.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.len(),
            });
        }
        if sratio.len() != n || sratio.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sratio.len(),
            });
        }
        // one common field keeps later products on the same-order fast path
        let order = sratio
            .iter()
            .flatten()
            .fold(1u64, |acc, x| acc.lcm(&x.order()));
        let sratio: Vec<Vec<Cyclotomic>> = sratio
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.lift_to(order)).collect())
            .collect::<Result<_>>()?;

        let unit = ring.unit();
        if let Some(y) = (0..n).find(|&y| sratio[unit][y] != Cyclotomic::one()) {
            return Err(Error::Inconsistent(format!(
                "unit row of the S-ratio matrix is {} at {}",
                sratio[unit][y],
                ring.label(y)
            )));
        }
        let qdim = (0..n).map(|x| sratio[x][unit].clone()).collect();
        let twist_exponent = h.iter().map(Rational::fract_positive).collect();
        Ok(ModularDatum {
            ring,
            h,
            twist_exponent,
            sratio,
            qdim,
        })
    }

    /// Fails with [`Error::Inconsistent`] unless the Verlinde eigen-property holds.
    pub fn verified(self) -> Result<Self> {
        if self.verlinde_holds() {
            Ok(self)
        } else {
            Err(Error::Inconsistent(
                "normalized S-columns are not characters of the fusion ring".into(),
            ))
        }
    }

    pub fn ring(&self) -> &FusionRing<L> {
        &self.ring
    }

    pub fn labels(&self) -> &[L] {
        self.ring.labels()
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn unit(&self) -> usize {
        self.ring.unit()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.h
    }

    pub fn twist_exponents(&self) -> &[Rational] {
        &self.twist_exponent
    }

    pub fn sratio(&self) -> &[Vec<Cyclotomic>] {
        &self.sratio
    }

    pub fn qdim(&self) -> &[Cyclotomic] {
        &self.qdim
    }

    /// θ_X = e^{2πi h_X} as an exact root of unity.
    pub fn twist(&self, x: usize) -> Cyclotomic {
        let e = &self.twist_exponent[x];
        let order = e.denominator().to_u64().expect("small denominator");
        let k = e.numerator().to_i64().expect("small numerator");
        cyc_root(order, k).expect("positive order")
    }

    /// Unnormalized Hopf-link invariant S_{X,Y} = sratio[X][Y]·dim(Y).
    pub fn hopf(&self, x: usize, y: usize) -> Cyclotomic {
        &self.sratio[x][y] * &self.qdim[y]
    }

    pub fn hopf_matrix(&self) -> Vec<Vec<Cyclotomic>> {
        let n = self.rank();
        (0..n)
            .map(|x| (0..n).map(|y| self.hopf(x, y)).collect())
            .collect()
    }

    pub fn verlinde_holds(&self) -> bool {
        self.ring
            .verlinde_eigencheck(&self.sratio)
            .expect("datum dimensions are consistent")
    }

    pub fn balancing_holds(&self) -> bool {
        let twists: Vec<Cyclotomic> = (0..self.rank()).map(|x| self.twist(x)).collect();
        self.ring
            .balancing_check(&self.hopf_matrix(), &twists, &self.qdim)
            .expect("datum dimensions are consistent")
    }

    /// sratio[X][Y]·dim(Y) = sratio[Y][X]·dim(X) for all X, Y.
    pub fn hopf_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|x| (x + 1..n).all(|y| self.hopf(x, y) == self.hopf(y, x)))
    }

    /// Simple X with S_{X,Y} = dim(X)·dim(Y) for every Y, i.e.
    /// sratio[X][Y] = dim(X) for every Y.
    pub fn transparent_objects(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&x| self.sratio[x].iter().all(|s| s == &self.qdim[x]))
            .collect()
    }

    /// The unit is the only transparent simple object.
    pub fn is_modular(&self) -> bool {
        self.transparent_objects() == [self.unit()]
    }

    /// Whether every summand of X ⊗ Y carries the same twist exponent.
    pub fn shares_twist(&self, x: usize, y: usize) -> bool {
        let summands = self.ring.fuse(x, y).expect("valid indices");
        summands
            .windows(2)
            .all(|w| self.twist_exponent[w[0].0] == self.twist_exponent[w[1].0])
    }

    /// |S_{X,Y}| = |dim(X)·dim(Y)| compared in floating point.
    pub fn hopf_modulus_matches(&self, x: usize, y: usize) -> bool {
        let s = self.hopf(x, y).to_complex().norm();
        let d = (&self.qdim[x] * &self.qdim[y]).to_complex().norm();
        (s - d).abs() < MODULUS_TOLERANCE
    }

    /// Restrict to a full subcategory on `subset`; ascending index order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        let ring = self.ring.full_subring(subset)?;
        let mut keep = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let h = keep.iter().map(|&i| self.h[i].clone()).collect();
        let sratio = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.sratio[i][j].clone()).collect())
            .collect();
        ModularDatum::new(ring, h, sratio)
    }
}
