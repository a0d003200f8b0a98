//! Explicit representations of a double quiver: the moment map, the canonical
//! symplectic form and the deformed preprojective relation.
//!
//! Matrices are indexed by arrows of `Q.double()`: arrow `k < |A|` is `a`,
//! arrow `k + |A|` is its partner `a*`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{format_rational, parse_rational};
use crate::error::{QuiverError, Result};
use crate::matrix::{Matrix, Scalar};
use crate::parameter::Parameter;
use crate::quiver::{DimVector, Quiver, QuiverSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Representation<T> {
    base: Quiver,
    doubled: Quiver,
    alpha: DimVector,
    matrices: Vec<Matrix<T>>,
}

impl<T: Scalar> Representation<T> {
    /// Builds a representation of `base.double()`. Matrix `k` must be
    /// `α_{h(k)} × α_{t(k)}`.
    pub fn new(base: &Quiver, alpha: DimVector, matrices: Vec<Matrix<T>>) -> Result<Self> {
        if alpha.len() != base.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: base.vertex_count(),
                found: alpha.len(),
            });
        }
        if !alpha.is_nonnegative() {
            return Err(QuiverError::Precondition(format!(
                "dimension vector must be nonnegative, got {alpha}"
            )));
        }
        let doubled = base.double();
        if matrices.len() != doubled.arrows().len() {
            return Err(QuiverError::Precondition(format!(
                "expected {} matrices, got {}",
                doubled.arrows().len(),
                matrices.len()
            )));
        }
        for (k, (arrow, m)) in doubled.arrows().iter().zip(&matrices).enumerate() {
            let expected = (alpha[arrow.head] as usize, alpha[arrow.tail] as usize);
            if m.shape() != expected {
                return Err(QuiverError::ShapeMismatch {
                    arrow: k,
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(Representation {
            base: base.clone(),
            doubled,
            alpha,
            matrices,
        })
    }

    pub fn zero(base: &Quiver, alpha: DimVector) -> Result<Self> {
        let doubled = base.double();
        let matrices = doubled
            .arrows()
            .iter()
            .map(|a| {
                Matrix::zeros(
                    alpha.entries().get(a.head).copied().unwrap_or(0).max(0) as usize,
                    alpha.entries().get(a.tail).copied().unwrap_or(0).max(0) as usize,
                )
            })
            .collect();
        Self::new(base, alpha, matrices)
    }

    /// The underlying (undoubled) quiver.
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    /// The double quiver the matrices live on.
    pub fn quiver(&self) -> &Quiver {
        &self.doubled
    }

    pub fn alpha(&self) -> &DimVector {
        &self.alpha
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    fn original_arrows(&self) -> usize {
        self.base.arrows().len()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.alpha != other.alpha {
            return Err(QuiverError::Precondition(
                "representations live on different quivers or dimension vectors".into(),
            ));
        }
        Ok(())
    }

    /// `μ_i = Σ_{h(a)=i} B_a B_{a*} - Σ_{t(a)=i} B_{a*} B_a`, over arrows of `Q`.
    pub fn moment_map(&self) -> Result<Vec<Matrix<T>>> {
        let mut mu: Vec<Matrix<T>> = self
            .alpha
            .entries()
            .iter()
            .map(|&d| Matrix::zeros(d as usize, d as usize))
            .collect();
        let m = self.original_arrows();
        for (k, arrow) in self.base.arrows().iter().enumerate() {
            let b = &self.matrices[k];
            let b_star = &self.matrices[k + m];
            mu[arrow.head] = mu[arrow.head].add(&b.mul(b_star)?)?;
            mu[arrow.tail] = mu[arrow.tail].sub(&b_star.mul(b)?)?;
        }
        let total = mu.iter().fold(T::zero(), |acc, x| acc + x.trace());
        if !total.is_zero() {
            return Err(QuiverError::Invariant(format!(
                "moment map has total trace {total:?}"
            )));
        }
        Ok(mu)
    }

    /// `ω(B, C) = Σ_a -tr(B_{a*} C_a) + tr(C_{a*} B_a)`.
    pub fn symplectic_form(&self, other: &Self) -> Result<T> {
        self.same_shape(other)?;
        let m = self.original_arrows();
        let mut total = T::zero();
        for k in 0..m {
            let first = self.matrices[k + m].mul(&other.matrices[k])?.trace();
            let second = other.matrices[k + m].mul(&self.matrices[k])?.trace();
            total = total - first + second;
        }
        Ok(total)
    }

    /// Base change `B_a ↦ g_{h(a)} B_a g_{t(a)}⁻¹`; `g_inv` must hold the inverses.
    pub fn act(&self, g: &[Matrix<T>], g_inv: &[Matrix<T>]) -> Result<Self> {
        let n = self.base.vertex_count();
        if g.len() != n || g_inv.len() != n {
            return Err(QuiverError::Precondition(format!(
                "base change needs {n} matrices"
            )));
        }
        for i in 0..n {
            let d = self.alpha[i] as usize;
            if g[i].mul(&g_inv[i])? != Matrix::identity(d) {
                return Err(QuiverError::Precondition(format!(
                    "base change at vertex {i} is not paired with its inverse"
                )));
            }
        }
        let matrices = self
            .doubled
            .arrows()
            .iter()
            .zip(&self.matrices)
            .map(|(a, b)| g[a.head].mul(b)?.mul(&g_inv[a.tail]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.base, self.alpha.clone(), matrices)
    }

    pub fn scale(&self, s: &T) -> Self {
        Representation {
            base: self.base.clone(),
            doubled: self.doubled.clone(),
            alpha: self.alpha.clone(),
            matrices: self.matrices.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.base, self.alpha.clone(), matrices)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PreprojectiveVerdict {
    Holds,
    LambdaDotAlphaNonzero { value: String },
    MomentMismatch { vertex: usize },
}

impl PreprojectiveVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PreprojectiveVerdict::Holds)
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            PreprojectiveVerdict::Holds => None,
            PreprojectiveVerdict::LambdaDotAlphaNonzero { .. } => {
                Some("lambda-dot-alpha nonzero".into())
            }
            PreprojectiveVerdict::MomentMismatch { vertex } => {
                Some(format!("moment map differs from lambda at vertex {vertex}"))
            }
        }
    }
}

/// Whether `μ(B)_i = λ_i · Id` at every vertex. `λ` must be rational.
pub fn check_preprojective(
    r: &Representation<BigRational>,
    lam: &Parameter,
) -> Result<PreprojectiveVerdict> {
    if lam.len() != r.base.vertex_count() {
        return Err(QuiverError::DimensionMismatch {
            expected: r.base.vertex_count(),
            found: lam.len(),
        });
    }
    let values = lam
        .entries()
        .iter()
        .map(|x| {
            x.to_rational().ok_or_else(|| {
                QuiverError::Precondition(format!("lambda entry {x} is not rational"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dot = lam.dot(&r.alpha)?;
    if !dot.is_zero() {
        return Ok(PreprojectiveVerdict::LambdaDotAlphaNonzero {
            value: dot.to_canonical_string(),
        });
    }
    let mu = r.moment_map()?;
    for (i, (m, value)) in mu.iter().zip(values).enumerate() {
        if *m != Matrix::scalar(m.rows(), value) {
            return Ok(PreprojectiveVerdict::MomentMismatch { vertex: i });
        }
    }
    Ok(PreprojectiveVerdict::Holds)
}

/// JSON form of a rational representation. Missing arrows are zero matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub quiver: QuiverSpec,
    pub alpha: Vec<i64>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

impl RepresentationFile {
    pub fn to_representation(&self) -> Result<Representation<BigRational>> {
        let base = Quiver::from_spec(&self.quiver)?;
        let alpha = DimVector::new(self.alpha.clone());
        let zero = Representation::<BigRational>::zero(&base, alpha.clone())?;
        let mut matrices = zero.matrices.clone();
        for (key, rows) in &self.matrices {
            let k: usize = key
                .trim()
                .parse()
                .ok()
                .filter(|&k| k < matrices.len())
                .ok_or_else(|| {
                    QuiverError::Precondition(format!(
                        "matrix key `{key}` is not an arrow index of the double quiver (0..{})",
                        matrices.len()
                    ))
                })?;
            let (h, t) = matrices[k].shape();
            let found = (rows.len(), rows.first().map_or(0, Vec::len));
            if rows.len() != h || rows.iter().any(|r| r.len() != t) {
                return Err(QuiverError::ShapeMismatch {
                    arrow: k,
                    expected: (h, t),
                    found,
                });
            }
            let parsed = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_rational(s).map_err(QuiverError::Precondition))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            matrices[k] = Matrix::from_rows(h, t, parsed)?;
        }
        Representation::new(&base, alpha, matrices)
    }

    pub fn from_representation(r: &Representation<BigRational>) -> Self {
        RepresentationFile {
            quiver: r.base.to_spec(),
            alpha: r.alpha.entries().to_vec(),
            matrices: r
                .matrices
                .iter()
                .enumerate()
                .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
                .map(|(k, m)| (k.to_string(), format_matrix(m)))
                .collect(),
        }
    }
}

pub fn format_matrix(m: &Matrix<BigRational>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}
