//! Fusion rings: label set, unit, duality and nonnegative structure constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;

/// A based ring with structure constants `N[i][j][k]` = multiplicity of
/// label `k` in `i ⊗ j`, stored densely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionRing<L> {
    labels: Vec<L>,
    unit: usize,
    dual: Vec<usize>,
    coeffs: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    UnitLaw,
    Commutativity,
    Associativity,
    Duality,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::UnitLaw => "unit law",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Duality => "duality",
        };
        f.write_str(name)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// First offending index tuple, if any.
    pub counterexample: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is checked")
    }
}

impl<L: Clone + fmt::Display> FusionRing<L> {
    /// `coeffs` is the flattened tensor, `coeffs[(i * rank + j) * rank + k]`.
    pub fn new(labels: Vec<L>, unit: usize, dual: Vec<usize>, coeffs: Vec<u32>) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::MalformedRing("empty label set".into()));
        }
        if unit >= rank {
            return Err(Error::MalformedRing(format!(
                "unit index {unit} >= rank {rank}"
            )));
        }
        if dual.len() != rank {
            return Err(Error::MalformedRing(format!(
                "dual has {} entries for {rank} labels",
                dual.len()
            )));
        }
        if let Some(&d) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::MalformedRing(format!(
                "dual index {d} >= rank {rank}"
            )));
        }
        if coeffs.len() != rank * rank * rank {
            return Err(Error::MalformedRing(format!(
                "tensor has {} entries, expected {}",
                coeffs.len(),
                rank * rank * rank
            )));
        }
        Ok(FusionRing {
            labels,
            unit,
            dual,
            coeffs,
        })
    }

    pub fn from_fn(
        labels: Vec<L>,
        unit: usize,
        dual: Vec<usize>,
        mut f: impl FnMut(usize, usize, usize) -> u32,
    ) -> Result<Self> {
        let rank = labels.len();
        let mut coeffs = Vec::with_capacity(rank * rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    coeffs.push(f(i, j, k));
                }
            }
        }
        Self::new(labels, unit, dual, coeffs)
    }

    /// Build from nested `N[i][j][k]` arrays.
    pub fn from_nested(
        labels: Vec<L>,
        unit: usize,
        dual: Vec<usize>,
        nested: &[Vec<Vec<u32>>],
    ) -> Result<Self> {
        let rank = labels.len();
        let mut coeffs = Vec::with_capacity(rank * rank * rank);
        if nested.len() != rank {
            return Err(Error::MalformedRing(format!(
                "tensor has {} rows for {rank} labels",
                nested.len()
            )));
        }
        for row in nested {
            if row.len() != rank || row.iter().any(|r| r.len() != rank) {
                return Err(Error::MalformedRing("ragged tensor".into()));
            }
            coeffs.extend(row.iter().flatten().copied());
        }
        Self::new(labels, unit, dual, coeffs)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> u32 {
        let n = self.rank();
        self.coeffs[(i * n + j) * n + k]
    }

    /// Copy with one structure constant replaced.
    pub fn with_coefficient(&self, i: usize, j: usize, k: usize, value: u32) -> Self {
        let n = self.rank();
        let mut out = self.clone();
        out.coeffs[(i * n + j) * n + k] = value;
        out
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.coefficient(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.rank(),
            })
        }
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.rank();
        let u = self.unit;
        let triples =
            || (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));

        let unit_law = triples()
            .find(|&(_, j, k)| {
                let expected = u32::from(j == k);
                self.coefficient(u, j, k) != expected || self.coefficient(j, u, k) != expected
            })
            .map(|(_, j, k)| vec![u, j, k]);

        let commutativity = triples()
            .find(|&(i, j, k)| self.coefficient(i, j, k) != self.coefficient(j, i, k))
            .map(|(i, j, k)| vec![i, j, k]);

        let duality = (0..n)
            .find(|&i| self.dual[self.dual[i]] != i)
            .map(|i| vec![i, self.dual[i]])
            .or_else(|| {
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| self.coefficient(i, j, u) != u32::from(j == self.dual[i]))
                    .map(|(i, j)| vec![i, j, u])
            });

        let mut associativity = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs: u64 = (0..n)
                            .map(|m| {
                                u64::from(self.coefficient(i, j, m))
                                    * u64::from(self.coefficient(m, k, l))
                            })
                            .sum();
                        let rhs: u64 = (0..n)
                            .map(|m| {
                                u64::from(self.coefficient(j, k, m))
                                    * u64::from(self.coefficient(i, m, l))
                            })
                            .sum();
                        if lhs != rhs {
                            associativity = Some(vec![i, j, k, l]);
                            break 'outer;
                        }
                    }
                }
            }
        }

        AxiomReport {
            checks: vec![
                AxiomCheck {
                    axiom: Axiom::UnitLaw,
                    counterexample: unit_law,
                },
                AxiomCheck {
                    axiom: Axiom::Commutativity,
                    counterexample: commutativity,
                },
                AxiomCheck {
                    axiom: Axiom::Associativity,
                    counterexample: associativity,
                },
                AxiomCheck {
                    axiom: Axiom::Duality,
                    counterexample: duality,
                },
            ],
        }
    }

    /// Nonzero summands of `i ⊗ j` with multiplicities, by ascending index.
    pub fn fuse(&self, i: usize, j: usize) -> Result<Vec<(usize, u32)>> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok((0..self.rank())
            .filter_map(|k| {
                let c = self.coefficient(i, j, k);
                (c > 0).then_some((k, c))
            })
            .collect())
    }

    /// Restriction to a subset closed under fusion and duality. Indices of the
    /// result follow the ascending order of `subset`.
    pub fn full_subring(&self, subset: &[usize]) -> Result<FusionRing<L>> {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &i in &keep {
            self.check_index(i)?;
        }
        if !keep.contains(&self.unit) {
            return Err(Error::MissingUnit);
        }
        let position = |x: usize| keep.binary_search(&x).ok();
        for &i in &keep {
            if position(self.dual[i]).is_none() {
                return Err(Error::NotClosedUnderDual(self.labels[i].to_string()));
            }
            for &j in &keep {
                for k in 0..self.rank() {
                    if self.coefficient(i, j, k) > 0 && position(k).is_none() {
                        return Err(Error::NotClosed {
                            left: self.labels[i].to_string(),
                            right: self.labels[j].to_string(),
                            escaped: self.labels[k].to_string(),
                        });
                    }
                }
            }
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let unit = position(self.unit).expect("unit kept");
        let dual = keep
            .iter()
            .map(|&i| position(self.dual[i]).expect("closed under dual"))
            .collect();
        FusionRing::from_fn(labels, unit, dual, |i, j, k| {
            self.coefficient(keep[i], keep[j], keep[k])
        })
    }

    fn check_square(&self, m: &[Vec<Cyclotomic>]) -> Result<()> {
        let n = self.rank();
        if m.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.len(),
            });
        }
        if let Some(row) = m.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Ok(())
    }

    /// Whether every column of `sratio` is a character of the ring:
    /// Σ_k N[i][j][k]·sratio[k][m] = sratio[i][m]·sratio[j][m], exactly.
    #[allow(clippy::needless_range_loop)]
    pub fn verlinde_eigencheck(&self, sratio: &[Vec<Cyclotomic>]) -> Result<bool> {
        self.check_square(sratio)?;
        let n = self.rank();
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let lhs: Cyclotomic = (0..n)
                        .filter(|&k| self.coefficient(i, j, k) > 0)
                        .map(|k| sratio[k][m].scale_int(i64::from(self.coefficient(i, j, k))))
                        .sum();
                    if lhs != &sratio[i][m] * &sratio[j][m] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Balancing identity for the unnormalized Hopf-link matrix:
    /// S[i][j]·θ_i·θ_j = Σ_k N[i][j][k]·θ_k·d_k.
    pub fn balancing_check(
        &self,
        hopf: &[Vec<Cyclotomic>],
        twists: &[Cyclotomic],
        qdim: &[Cyclotomic],
    ) -> Result<bool> {
        self.check_square(hopf)?;
        let n = self.rank();
        for v in [twists.len(), qdim.len()] {
            if v != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v,
                });
            }
        }
        let weighted: Vec<Cyclotomic> = twists.iter().zip(qdim).map(|(t, d)| t * d).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = &(&hopf[i][j] * &twists[i]) * &twists[j];
                let rhs: Cyclotomic = (0..n)
                    .filter(|&k| self.coefficient(i, j, k) > 0)
                    .map(|k| weighted[k].scale_int(i64::from(self.coefficient(i, j, k))))
                    .sum();
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
