//! Smoothness of `N(λ,α)` and its symplectic leaves.
//!
//! Leaves coincide with representation-type strata, so they are listed by
//! walking the `Σ_λ`-decompositions of `α`: parts with `p = 0` carry a unique
//! simple and contribute one fixed entry, while each part `β` with `p(β) > 0`
//! and multiplicity `m` branches over the partitions of `m`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{QuiverError, Result};
use crate::parameter::Parameter;
use crate::quiver::{DimVector, Quiver};
use crate::sigma::{Decomposition, Part, SigmaSolver};

/// A representation type `(k_1, β_1; …; k_r, β_r)`, sorted by `β` and then
/// by `k` descending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepType {
    entries: Vec<(u32, DimVector)>,
}

impl RepType {
    pub fn new(mut entries: Vec<(u32, DimVector)>) -> Self {
        entries.sort_by(|(ka, a), (kb, b)| a.cmp(b).then(kb.cmp(ka)));
        RepType { entries }
    }

    pub fn entries(&self) -> &[(u32, DimVector)] {
        &self.entries
    }

    pub fn total(&self) -> Option<DimVector> {
        let mut it = self.entries.iter();
        let (k, b) = it.next()?;
        let mut acc = *k as i64 * b;
        for (k, b) in it {
            acc = &acc + &(*k as i64 * b);
        }
        Some(acc)
    }
}

impl Serialize for RepType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (k, b)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{k},{b}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub rep_type: RepType,
    #[serde(rename = "dim")]
    pub dimension: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SingularityWitness {
    /// A decomposition other than the canonical one.
    SecondDecomposition { decomposition: Decomposition },
    /// A canonical part with `p > 0` occurring more than once.
    RepeatedPart {
        part: DimVector,
        p: i64,
        multiplicity: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Smoothness {
    pub smooth: bool,
    pub witness: Option<SingularityWitness>,
}

/// Partitions of `m` in reverse lexicographic order: `(m)`, `(m-1,1)`, …, `(1,…,1)`.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            go(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn require_decomposable(all: &[Decomposition], a: &DimVector) -> Result<()> {
    if all.is_empty() {
        return Err(QuiverError::NotRepresentable {
            alpha: a.to_string(),
        });
    }
    Ok(())
}

/// Smoothness verdict from an existing solver.
pub fn smoothness_with(solver: &mut SigmaSolver<'_>, a: &DimVector) -> Result<Smoothness> {
    let all = solver.decompositions(a)?;
    require_decomposable(&all, a)?;
    let canonical = solver.canonical_decomposition(a)?;
    if let Some(other) = all.iter().find(|d| **d != canonical) {
        return Ok(Smoothness {
            smooth: false,
            witness: Some(SingularityWitness::SecondDecomposition {
                decomposition: other.clone(),
            }),
        });
    }
    let q = solver.quiver();
    for Part {
        vector,
        multiplicity,
    } in &canonical.parts
    {
        let p = q.p_unchecked(vector.entries());
        if p > 0 && *multiplicity > 1 {
            return Ok(Smoothness {
                smooth: false,
                witness: Some(SingularityWitness::RepeatedPart {
                    part: vector.clone(),
                    p,
                    multiplicity: *multiplicity,
                }),
            });
        }
    }
    Ok(Smoothness {
        smooth: true,
        witness: None,
    })
}

/// Adds one representation type per tuple of partitions of the branching multiplicities.
fn product_of_partitions(
    branching: &[&Part],
    entries: Vec<(u32, DimVector)>,
    out: &mut BTreeSet<RepType>,
) {
    let Some((first, rest)) = branching.split_first() else {
        out.insert(RepType::new(entries));
        return;
    };
    for sigma in partitions(first.multiplicity) {
        let mut next = entries.clone();
        next.extend(sigma.into_iter().map(|k| (k, first.vector.clone())));
        product_of_partitions(rest, next, out);
    }
}

/// Leaves from an existing solver, sorted by dimension descending.
pub fn leaves_with(solver: &mut SigmaSolver<'_>, a: &DimVector) -> Result<Vec<Stratum>> {
    let all = solver.decompositions(a)?;
    require_decomposable(&all, a)?;
    let q = solver.quiver();
    let mut types = BTreeSet::new();
    for d in &all {
        let mut fixed = Vec::new();
        let mut branching = Vec::new();
        for part in &d.parts {
            if q.p_unchecked(part.vector.entries()) == 0 {
                fixed.push((part.multiplicity, part.vector.clone()));
            } else {
                branching.push(part);
            }
        }
        product_of_partitions(&branching, fixed, &mut types);
    }
    let mut out: Vec<Stratum> = types
        .into_iter()
        .map(|rep_type| {
            let dimension = 2 * rep_type
                .entries()
                .iter()
                .map(|(_, b)| q.p_unchecked(b.entries()))
                .sum::<i64>();
            Stratum {
                rep_type,
                dimension,
            }
        })
        .collect();
    out.sort_by(|x, y| {
        y.dimension
            .cmp(&x.dimension)
            .then_with(|| x.rep_type.cmp(&y.rep_type))
    });
    Ok(out)
}

/// `2|a|_λ`, cross-checked against the largest leaf.
pub fn variety_dimension_with(solver: &mut SigmaSolver<'_>, a: &DimVector) -> Result<i64> {
    let dim = 2 * solver.alpha_norm(a)?;
    let top = leaves_with(solver, a)?
        .first()
        .map(|s| s.dimension)
        .unwrap_or(0);
    if top != dim {
        return Err(QuiverError::Invariant(format!(
            "2|{a}|_λ = {dim} but the largest leaf has dimension {top}"
        )));
    }
    Ok(dim)
}

pub fn is_smooth(q: &Quiver, lam: &Parameter, a: &DimVector) -> Result<Smoothness> {
    smoothness_with(&mut SigmaSolver::new(q, lam, a)?, a)
}

pub fn leaves(q: &Quiver, lam: &Parameter, a: &DimVector) -> Result<Vec<Stratum>> {
    leaves_with(&mut SigmaSolver::new(q, lam, a)?, a)
}

pub fn variety_dimension(q: &Quiver, lam: &Parameter, a: &DimVector) -> Result<i64> {
    variety_dimension_with(&mut SigmaSolver::new(q, lam, a)?, a)
}

/// The leaf report emitted by the `leaves` command.
#[derive(Debug, Clone, Serialize)]
pub struct StrataReport {
    pub alpha: DimVector,
    pub lambda: Parameter,
    pub smooth: bool,
    pub variety_dim: i64,
    pub leaves: Vec<Stratum>,
    pub schema_version: u32,
}

pub fn strata_report(q: &Quiver, lam: &Parameter, a: &DimVector) -> Result<StrataReport> {
    strata_report_with(&mut SigmaSolver::new(q, lam, a)?, lam, a)
}

pub fn strata_report_with(
    solver: &mut SigmaSolver<'_>,
    lam: &Parameter,
    a: &DimVector,
) -> Result<StrataReport> {
    let verdict = smoothness_with(solver, a)?;
    let variety_dim = variety_dimension_with(solver, a)?;
    let leaves = leaves_with(solver, a)?;
    if verdict.smooth != (leaves.len() == 1) {
        return Err(QuiverError::Invariant(format!(
            "smoothness verdict {} disagrees with {} leaves",
            verdict.smooth,
            leaves.len()
        )));
    }
    Ok(StrataReport {
        alpha: a.clone(),
        lambda: lam.clone(),
        smooth: verdict.smooth,
        variety_dim,
        leaves,
        schema_version: 1,
    })
}
