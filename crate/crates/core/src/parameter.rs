//! Deformation parameters `λ ∈ Q(ζ_N)^I` and exact tests of `λ·β = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::cyclotomic::CycNumber;
use crate::error::{QuiverError, Result};
use crate::quiver::DimVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter(pub Vec<CycNumber>);

impl Parameter {
    pub fn new(entries: Vec<CycNumber>) -> Self {
        Parameter(entries)
    }

    pub fn zero(n: usize) -> Self {
        Parameter(vec![CycNumber::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Parameter(v.iter().map(|&x| CycNumber::from_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[CycNumber] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(CycNumber::is_zero)
    }

    /// `λ·a`.
    pub fn dot(&self, a: &DimVector) -> Result<CycNumber> {
        if a.len() != self.len() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.len(),
                found: a.len(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(a.entries())
            .filter(|(_, &k)| k != 0)
            .map(|(l, &k)| l.scale_int(k))
            .sum())
    }

    /// Parses a comma separated list of rationals or `[c0,…]@N` cyclotomics.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        split_top_level(s)
            .into_iter()
            .map(|t| t.parse::<CycNumber>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Parameter)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(CycNumber::to_canonical_string).collect()
    }
}

/// Splits on commas that are not inside `[...]`.
pub(crate) fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).collect()
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl Serialize for Parameter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// The equation `λ·β = 0` rewritten as an integer linear system `M β = 0`.
///
/// Each row is one coordinate of `λ` on the power basis of the common
/// cyclotomic field, cleared of denominators. Zero rows are dropped.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    width: usize,
    rows: Rows,
}

#[derive(Debug, Clone)]
enum Rows {
    Small(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

impl LinearConstraint {
    pub fn new(lam: &Parameter) -> Self {
        let width = lam.len();
        let order = lam.0.iter().fold(1u32, |acc, x| acc.lcm(&x.order()));
        let lifted: Vec<CycNumber> = lam.0.iter().map(|x| x.lift(order)).collect();
        let deg = lifted.first().map_or(0, |x| x.coeffs().len());
        let mut big_rows = Vec::new();
        for r in 0..deg {
            let col: Vec<_> = lifted.iter().map(|x| x.coeffs()[r].clone()).collect();
            if col.iter().all(Zero::is_zero) {
                continue;
            }
            let den = col
                .iter()
                .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
            let row: Vec<BigInt> = col
                .iter()
                .map(|q| (q * num_rational::BigRational::from_integer(den.clone())).to_integer())
                .collect();
            let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            big_rows.push(row.into_iter().map(|x| x / &g).collect::<Vec<_>>());
        }
        let small: Option<Vec<Vec<i64>>> = big_rows
            .iter()
            .map(|row| row.iter().map(|x| x.to_i64()).collect())
            .collect();
        let rows = match small {
            Some(rows) => Rows::Small(rows),
            None => Rows::Big(big_rows),
        };
        LinearConstraint { width, rows }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// True when every vector satisfies the constraint (`λ = 0`).
    pub fn is_trivial(&self) -> bool {
        match &self.rows {
            Rows::Small(r) => r.is_empty(),
            Rows::Big(r) => r.is_empty(),
        }
    }

    pub fn vanishes(&self, beta: &[i64]) -> bool {
        match &self.rows {
            Rows::Small(rows) => rows.iter().all(|row| {
                let mut acc: i128 = 0;
                for (c, &b) in row.iter().zip(beta) {
                    acc += *c as i128 * b as i128;
                }
                acc == 0
            }),
            Rows::Big(rows) => rows.iter().all(|row| {
                row.iter()
                    .zip(beta)
                    .map(|(c, &b)| c * BigInt::from(b))
                    .sum::<BigInt>()
                    .is_zero()
            }),
        }
    }

    /// The integer rows, when every coefficient fits in `i64`.
    pub(crate) fn small_rows(&self) -> Option<&[Vec<i64>]> {
        match &self.rows {
            Rows::Small(r) => Some(r),
            Rows::Big(_) => None,
        }
    }
}
