//! Ordinary modules of affine sl₂ at admissible level ℓ = -2 + a/b.
//!
//! Fusion follows the truncated Clebsch–Gordan rule at cutoff `a`, weights come
//! from the Sugawara L₀ on the top space, and the normalized Hopf links are
//! transported from C_a ⊂ Vir(a, a + b) with a sign from the level-one factor.

use std::fmt;

use crate::datum::ModularDatum;
use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};
use crate::fusion_ring::FusionRing;
use crate::virasoro::{check_coprime, sign, truncated_cg, KacLabel, MinimalModel};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleLevel {
    a: u32,
    b: u32,
    level: Rational,
}

impl AdmissibleLevel {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < 2 || b < 1 {
            return Err(Error::Range(format!(
                "admissible level needs a >= 2, b >= 1 (got {a}, {b})"
            )));
        }
        check_coprime(a, b)?;
        let level = Rational::new(i64::from(a), i64::from(b)) - Rational::from(2);
        Ok(AdmissibleLevel { a, b, level })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    /// Number of ordinary simple modules, `L(ℓ, rω)` for 0 ≤ r ≤ a - 2.
    pub fn rank(&self) -> usize {
        (self.a - 1) as usize
    }

    pub fn labels(&self) -> Vec<AffineLabel> {
        (0..self.a - 1).map(AffineLabel).collect()
    }

    pub fn check_label(&self, l: AffineLabel) -> Result<()> {
        if l.0 + 2 <= self.a {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange(format!(
                "{l} at level {}",
                self.level
            )))
        }
    }

    /// Sugawara weight r(r + 2)/(4(ℓ + 2)) = r(r + 2)b/(4a).
    ///
    /// Defined for any r ≥ 0, not only the ordinary range.
    pub fn weight(&self, r: u32) -> Rational {
        let r = i64::from(r);
        Rational::new(r * (r + 2) * i64::from(self.b), 4 * i64::from(self.a))
    }

    /// The minimal model whose C_a carries the Hopf links of this level.
    pub fn coset_model(&self) -> MinimalModel {
        MinimalModel::new(self.a, self.a + self.b).expect("gcd(a, a + b) = gcd(a, b) = 1")
    }
}

/// `L(ℓ, rω)`, identified by r.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AffineLabel(pub u32);

impl AffineLabel {
    pub fn r(self) -> u32 {
        self.0
    }

    /// The Kac label `M_{r+1,1}` this module corresponds to.
    pub fn kac(self) -> KacLabel {
        KacLabel::new(self.0 + 1, 1)
    }
}

impl fmt::Display for AffineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "L(0)"),
            1 => write!(f, "L(w)"),
            r => write!(f, "L({r}w)"),
        }
    }
}

pub fn affine_fusion_ring(level: &AdmissibleLevel) -> FusionRing<AffineLabel> {
    let n = level.rank();
    let a = level.a();
    FusionRing::from_fn(level.labels(), 0, (0..n).collect(), |i, j, k| {
        truncated_cg(a, i as u32 + 1, j as u32 + 1, k as u32 + 1)
    })
    .expect("dimensions are consistent")
}

/// sratio(rω, r'ω) = (-1)^{rr'}·sratio_{Vir(a,a+b)}(M_{r+1,1}, M_{r'+1,1}).
pub fn affine_sratio(
    level: &AdmissibleLevel,
    x: AffineLabel,
    y: AffineLabel,
) -> Result<Cyclotomic> {
    level.check_label(x)?;
    level.check_label(y)?;
    let vir = level.coset_model();
    let s = vir.sratio(x.kac(), y.kac())?;
    Ok(s.scale_int(sign(i64::from(x.0) * i64::from(y.0))))
}

/// The modular datum of the ordinary modules at level -2 + a/b.
pub fn affine_category(a: u32, b: u32) -> Result<ModularDatum<AffineLabel>> {
    let level = AdmissibleLevel::new(a, b)?;
    affine_datum(&level)
}

pub fn affine_datum(level: &AdmissibleLevel) -> Result<ModularDatum<AffineLabel>> {
    let labels = level.labels();
    let ring = affine_fusion_ring(level);
    let h = labels.iter().map(|l| level.weight(l.0)).collect();
    let sratio = labels
        .iter()
        .map(|&x| labels.iter().map(|&y| affine_sratio(level, x, y)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    ModularDatum::new(ring, h, sratio)?.verified()
}

/// Closed form (-1)^{(r'+1)b+1} of the simple-current row at column r'.
pub fn simple_current_closed_form(b: u32, column: u32) -> i64 {
    sign((i64::from(column) + 1) * i64::from(b) + 1)
}

/// S-ratio row of the top label r = a - 2, checked against its closed form.
pub fn simple_current_row(datum: &ModularDatum<AffineLabel>, b: u32) -> Result<Vec<Cyclotomic>> {
    let top = datum.rank() - 1;
    let row = datum.sratio()[top].clone();
    for (col, value) in row.iter().enumerate() {
        let expected = Cyclotomic::from_integer(simple_current_closed_form(b, col as u32));
        if *value != expected {
            return Err(Error::Inconsistent(format!(
                "simple-current ratio at column {col} is {value}, expected {expected}"
            )));
        }
    }
    Ok(row)
}

pub fn affine_is_modular(a: u32, b: u32) -> Result<bool> {
    Ok(affine_category(a, b)?.is_modular())
}

/// dim Hom_{sl₂}(L(rω) ⊗ L(r'ω), L(r''ω)) by Clebsch–Gordan.
pub fn cg_bound(r: AffineLabel, r1: AffineLabel, r2: AffineLabel) -> u32 {
    let (r, r1, r2) = (r.0, r1.0, r2.0);
    u32::from(r.abs_diff(r1) <= r2 && r2 <= r + r1 && (r + r1 + r2) % 2 == 0)
}
