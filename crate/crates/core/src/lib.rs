//! Exact modular data for Virasoro minimal models, their subcategories
//! generated by the `M_{r,1}` modules, and ordinary modules of affine sl₂ at
//! admissible level, together with the coset and induction checks relating
//! them.

pub mod affine_sl2;
pub mod datum;
pub mod error;
pub mod exactnum;
pub mod extension;
pub mod fusion_ring;
pub mod virasoro;

pub use affine_sl2::{affine_category, affine_is_modular, cg_bound, AdmissibleLevel, AffineLabel};
pub use datum::ModularDatum;
pub use error::{Error, ParseError, Result};
pub use exactnum::{cos_pi, cyc_root, sin_pi, Cyclotomic, Rational};
pub use extension::{coset_setup, CosetSetup};
pub use fusion_ring::{Axiom, AxiomReport, FusionRing};
pub use virasoro::{KacLabel, MinimalModel};
