//! Exact root-system combinatorics for Marsden-Weinstein reductions of quiver
//! moment maps.
//!
//! Given a quiver `Q`, a parameter `λ` and a dimension vector `α`, the crate
//! decides membership in `Σ_λ`, computes `|α|_λ` and the canonical
//! decomposition, tests smoothness of `N(λ,α)` and lists its symplectic leaves
//! with their dimensions. The [`mckay`] module specializes this to framed
//! McKay quivers of finite subgroups of `SL(2,C)`, where `N(λ',ε_∞+nδ)`
//! models deformations of `(C²)ⁿ/(S_n ≀ Γ)`.
//!
//! All arithmetic is exact: integers for dimension vectors, cyclotomic
//! rationals for parameters and rationals for matrix entries.
//!
//! ```
//! use quiver_strata::{leaves, DimVector, Parameter, Quiver};
//!
//! // framed Ã1: ∞ → 0, 0 ⇉ 1
//! let q = Quiver::from_indices(3, &[(0, 1), (1, 2), (1, 2)]).unwrap();
//! let lam = Parameter::from_ints(&[0, 1, -1]);
//! let dims: Vec<i64> = leaves(&q, &lam, &DimVector::new(vec![1, 2, 2]))
//!     .unwrap()
//!     .iter()
//!     .map(|s| s.dimension)
//!     .collect();
//! assert_eq!(dims, vec![4, 2]);
//! ```

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod matrix;
pub mod mckay;
pub mod parameter;
pub mod quiver;
pub mod rep;
pub mod roots;
pub mod sigma;
pub mod strata;

pub use cyclotomic::CycNumber;
pub use error::{QuiverError, Result};
pub use matrix::Matrix;
pub use mckay::{
    cm_dim_vector, frame, gamma_data, lambda_of_c, lambda_prime, CParam, GammaData, GroupKind,
    McKayError,
};
pub use parameter::Parameter;
pub use quiver::{Arrow, DimVector, Quiver, QuiverSpec};
pub use rep::{check_preprojective, PreprojectiveVerdict, Representation, RepresentationFile};
pub use roots::{
    classify_root, in_fundamental_region, positive_roots_upto, r_lambda_positive, ClassifiedRoot,
    RootClass,
};
pub use sigma::{
    alpha_norm, canonical_decomposition, decompositions, in_sigma_lambda, sigma_lambda_upto,
    Decomposition, Part, SigmaSolver, SigmaVerdict,
};
pub use strata::{
    is_smooth, leaves, strata_report, variety_dimension, RepType, Smoothness, StrataReport, Stratum,
};
