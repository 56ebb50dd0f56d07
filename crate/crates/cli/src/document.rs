use std::collections::BTreeMap;
use std::fmt;

use anyhow::{bail, Context};
use fusionlab_core::{AffineLabel, Cyclotomic, KacLabel, ModularDatum, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Virasoro,
    Ca,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub a: u32,
    pub b: u32,
}

/// `[r, s]` for Kac labels, `r` for affine labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelRecord {
    Kac([u32; 2]),
    Affine(u32),
}

pub trait ToLabelRecord {
    fn to_record(&self) -> LabelRecord;
}

impl ToLabelRecord for KacLabel {
    fn to_record(&self) -> LabelRecord {
        LabelRecord::Kac([self.r, self.s])
    }
}

impl ToLabelRecord for AffineLabel {
    fn to_record(&self) -> LabelRecord {
        LabelRecord::Affine(self.0)
    }
}

/// Exact coefficients `k -> "p/q"` of Σ c_k ζ_order^k plus an advisory float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclotomicRecord {
    pub order: u64,
    pub coeffs: BTreeMap<u32, String>,
    pub float: [f64; 2],
}

impl CyclotomicRecord {
    pub fn new(x: &Cyclotomic) -> Self {
        let coeffs = x
            .nonzero_terms()
            .into_iter()
            .map(|(k, c)| (k as u32, c.to_fraction_string()))
            .collect();
        let z = x.to_complex();
        CyclotomicRecord {
            order: x.order(),
            coeffs,
            float: [z.re, z.im],
        }
    }

    pub fn to_cyclotomic(&self) -> anyhow::Result<Cyclotomic> {
        let terms = self
            .coeffs
            .iter()
            .map(|(k, c)| Ok((i64::from(*k), parse_rational(c)?)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(Cyclotomic::from_terms(self.order, &terms)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub axioms: bool,
    pub verlinde: bool,
    pub modular: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularDataDocument {
    pub kind: Kind,
    pub parameters: Parameters,
    pub labels: Vec<LabelRecord>,
    pub h: Vec<String>,
    pub twist_exponents: Vec<String>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<u32>>>,
    pub sratio: Vec<Vec<CyclotomicRecord>>,
    pub qdim: Vec<CyclotomicRecord>,
    pub verdicts: Verdicts,
}

fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    if !s.contains('/') {
        bail!("rational {s:?} is not in p/q form");
    }
    s.parse().with_context(|| format!("bad rational {s:?}"))
}

impl ModularDataDocument {
    pub fn from_datum<L>(kind: Kind, a: u32, b: u32, datum: &ModularDatum<L>) -> Self
    where
        L: ToLabelRecord + Clone + fmt::Display,
    {
        let fractions = |v: &[Rational]| v.iter().map(Rational::to_fraction_string).collect();
        ModularDataDocument {
            kind,
            parameters: Parameters { a, b },
            labels: datum
                .labels()
                .iter()
                .map(ToLabelRecord::to_record)
                .collect(),
            h: fractions(datum.weights()),
            twist_exponents: fractions(datum.twist_exponents()),
            n: datum.ring().to_nested(),
            sratio: datum
                .sratio()
                .iter()
                .map(|row| row.iter().map(CyclotomicRecord::new).collect())
                .collect(),
            qdim: datum.qdim().iter().map(CyclotomicRecord::new).collect(),
            verdicts: Verdicts {
                axioms: datum.ring().verify_axioms().passed(),
                verlinde: datum.verlinde_holds(),
                modular: datum.is_modular(),
            },
        }
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn weights(&self) -> anyhow::Result<Vec<Rational>> {
        self.h.iter().map(|s| parse_rational(s)).collect()
    }

    pub fn twist_exponent_values(&self) -> anyhow::Result<Vec<Rational>> {
        self.twist_exponents
            .iter()
            .map(|s| parse_rational(s))
            .collect()
    }

    pub fn sratio_matrix(&self) -> anyhow::Result<Vec<Vec<Cyclotomic>>> {
        self.sratio
            .iter()
            .map(|row| row.iter().map(CyclotomicRecord::to_cyclotomic).collect())
            .collect()
    }

    pub fn qdim_values(&self) -> anyhow::Result<Vec<Cyclotomic>> {
        self.qdim
            .iter()
            .map(CyclotomicRecord::to_cyclotomic)
            .collect()
    }
}
