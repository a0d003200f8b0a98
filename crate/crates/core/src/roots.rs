//! Real and imaginary roots, the fundamental region, and bounded root enumeration.

use serde::Serialize;

use crate::error::{QuiverError, Result};
use crate::parameter::{LinearConstraint, Parameter};
use crate::quiver::{DimVector, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootClass {
    Real,
    Imaginary,
    NotRoot,
}

impl RootClass {
    pub fn is_root(self) -> bool {
        self != RootClass::NotRoot
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassifiedRoot {
    pub vector: DimVector,
    pub class: RootClass,
}

fn check_len(q: &Quiver, a: &DimVector) -> Result<()> {
    if a.len() != q.vertex_count() {
        return Err(QuiverError::DimensionMismatch {
            expected: q.vertex_count(),
            found: a.len(),
        });
    }
    Ok(())
}

/// Membership in the fundamental region: `a ≥ 0`, `a ≠ 0`, connected support
/// and `(a, e_i) ≤ 0` at every vertex.
pub fn in_fundamental_region(q: &Quiver, a: &DimVector) -> Result<bool> {
    check_len(q, a)?;
    Ok(in_f(q, a.entries()))
}

fn in_f(q: &Quiver, a: &[i64]) -> bool {
    a.iter().all(|&x| x >= 0)
        && a.iter().any(|&x| x != 0)
        && (0..a.len()).all(|i| q.pair_with_vertex(a, i) <= 0)
        && q.support_connected_unchecked(a)
}

/// Classifies a nonzero vector by descent: reflect at loopfree vertices with
/// `(a, e_i) > 0` until reaching a coordinate vector (real), the fundamental
/// region (imaginary), or leaving the positive cone (not a root).
pub fn classify_root(q: &Quiver, a: &DimVector) -> Result<RootClass> {
    check_len(q, a)?;
    if a.is_zero() {
        return Err(QuiverError::Precondition(
            "classify_root needs a nonzero vector".into(),
        ));
    }
    Ok(classify_entries(q, a.entries()))
}

pub(crate) fn classify_entries(q: &Quiver, a: &[i64]) -> RootClass {
    let mut v: Vec<i64> = if a.iter().all(|&x| x <= 0) {
        a.iter().map(|x| -x).collect()
    } else if a.iter().all(|&x| x >= 0) {
        a.to_vec()
    } else {
        return RootClass::NotRoot;
    };
    loop {
        if let Some(i) = DimVector::unit_index(&v) {
            if q.is_loopfree(i) {
                return RootClass::Real;
            }
        }
        // Each step strictly lowers the height, so this terminates.
        let step = (0..v.len()).find_map(|i| {
            if !q.is_loopfree(i) {
                return None;
            }
            let c = q.pair_with_vertex(&v, i);
            (c > 0).then_some((i, c))
        });
        match step {
            Some((i, c)) => {
                v[i] -= c;
                if v[i] < 0 {
                    return RootClass::NotRoot;
                }
            }
            None => {
                return if in_f(q, &v) {
                    RootClass::Imaginary
                } else {
                    RootClass::NotRoot
                };
            }
        }
    }
}

/// Visits every vector in the box `0 ≤ v ≤ bound` in lexicographic order.
fn for_each_in_box(bound: &[i64], mut f: impl FnMut(&[i64])) {
    if bound.iter().any(|&b| b < 0) {
        return;
    }
    let n = bound.len();
    let mut v = vec![0i64; n];
    loop {
        f(&v);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if v[k] < bound[k] {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
    }
}

fn check_bound(q: &Quiver, bound: &DimVector) -> Result<()> {
    check_len(q, bound)?;
    if !bound.is_nonnegative() {
        return Err(QuiverError::Precondition(format!(
            "enumeration bound must be nonnegative, got {bound}"
        )));
    }
    Ok(())
}

/// All positive roots `β ≤ bound`, classified, in lexicographic order.
pub fn positive_roots_upto(q: &Quiver, bound: &DimVector) -> Result<Vec<ClassifiedRoot>> {
    check_bound(q, bound)?;
    let mut out = Vec::new();
    for_each_in_box(bound.entries(), |v| {
        if v.iter().all(|&x| x == 0) {
            return;
        }
        let class = classify_entries(q, v);
        if class.is_root() {
            out.push(ClassifiedRoot {
                vector: DimVector::new(v.to_vec()),
                class,
            });
        }
    });
    Ok(out)
}

/// Positive roots `β ≤ bound` with `λ·β = 0`, sorted.
///
/// One coordinate is solved for from the constraint instead of being
/// enumerated, which shrinks the search box by that coordinate's range.
pub fn r_lambda_positive(q: &Quiver, lam: &Parameter, bound: &DimVector) -> Result<Vec<DimVector>> {
    check_bound(q, bound)?;
    if lam.len() != q.vertex_count() {
        return Err(QuiverError::DimensionMismatch {
            expected: q.vertex_count(),
            found: lam.len(),
        });
    }
    let constraint = LinearConstraint::new(lam);
    Ok(r_lambda_with(q, &constraint, bound))
}

pub(crate) fn r_lambda_with(
    q: &Quiver,
    constraint: &LinearConstraint,
    bound: &DimVector,
) -> Vec<DimVector> {
    if constraint.is_trivial() {
        return positive_roots_upto(q, bound)
            .expect("bound already validated")
            .into_iter()
            .map(|r| r.vector)
            .collect();
    }
    let b = bound.entries();
    let mut out = Vec::new();
    let mut accept = |v: &[i64]| {
        if v.iter().any(|&x| x != 0) && constraint.vanishes(v) && classify_entries(q, v).is_root() {
            out.push(DimVector::new(v.to_vec()));
        }
    };
    match pivot(constraint, b) {
        Some((row, j)) => {
            let mut reduced = b.to_vec();
            reduced[j] = 0;
            let coeff = row[j];
            for_each_in_box(&reduced, |v| {
                let s: i128 = row
                    .iter()
                    .zip(v)
                    .map(|(&c, &x)| c as i128 * x as i128)
                    .sum();
                if s % coeff as i128 != 0 {
                    return;
                }
                let x = -s / coeff as i128;
                if x < 0 || x > b[j] as i128 {
                    return;
                }
                let mut w = v.to_vec();
                w[j] = x as i64;
                accept(&w);
            });
        }
        None => for_each_in_box(b, |v| accept(v)),
    }
    out.sort();
    out
}

/// Picks the coordinate with the widest range that some constraint row can solve for.
fn pivot<'a>(constraint: &'a LinearConstraint, bound: &[i64]) -> Option<(&'a [i64], usize)> {
    let rows = constraint.small_rows()?;
    let mut best: Option<(&[i64], usize)> = None;
    for j in 0..bound.len() {
        if let Some(row) = rows.iter().find(|r| r[j] != 0) {
            if best.is_none_or(|(_, k)| bound[j] > bound[k]) {
                best = Some((row.as_slice(), j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Quiver {
        Quiver::from_indices(2, &[(0, 1), (0, 1)]).unwrap()
    }

    fn framed_a1() -> Quiver {
        Quiver::from_indices(3, &[(0, 1), (1, 2), (1, 2)]).unwrap()
    }

    fn v(x: &[i64]) -> DimVector {
        DimVector::new(x.to_vec())
    }

    #[test]
    fn fundamental_region_examples() {
        let q = a1();
        assert!(in_fundamental_region(&q, &v(&[1, 1])).unwrap());
        assert!(!in_fundamental_region(&q, &v(&[1, 0])).unwrap());
        assert!(!in_fundamental_region(&q, &v(&[2, 1])).unwrap());
        assert!(!in_fundamental_region(&q, &v(&[0, 0])).unwrap());
    }

    #[test]
    fn classify_examples() {
        let q = a1();
        assert_eq!(
            classify_root(&q, &v(&[1, 1])).unwrap(),
            RootClass::Imaginary
        );
        assert_eq!(classify_root(&q, &v(&[0, 1])).unwrap(), RootClass::Real);
        assert_eq!(classify_root(&q, &v(&[2, 1])).unwrap(), RootClass::Real);
        assert_eq!(classify_root(&q, &v(&[-2, -1])).unwrap(), RootClass::Real);
        assert_eq!(classify_root(&q, &v(&[1, -1])).unwrap(), RootClass::NotRoot);
        assert_eq!(classify_root(&q, &v(&[3, 1])).unwrap(), RootClass::NotRoot);
        assert!(classify_root(&q, &v(&[0, 0])).is_err());
    }

    #[test]
    fn disconnected_support_is_not_a_root() {
        let q = framed_a1();
        assert_eq!(
            classify_root(&q, &v(&[1, 0, 1])).unwrap(),
            RootClass::NotRoot
        );
    }

    #[test]
    fn jordan_quiver_roots_are_imaginary() {
        let q = Quiver::from_indices(1, &[(0, 0)]).unwrap();
        for n in 1..5 {
            assert_eq!(classify_root(&q, &v(&[n])).unwrap(), RootClass::Imaginary);
        }
    }

    #[test]
    fn enumeration_examples() {
        let q = a1();
        let roots: Vec<_> = positive_roots_upto(&q, &v(&[2, 2]))
            .unwrap()
            .into_iter()
            .map(|r| r.vector)
            .collect();
        assert_eq!(
            roots,
            vec![
                v(&[0, 1]),
                v(&[1, 0]),
                v(&[1, 1]),
                v(&[1, 2]),
                v(&[2, 1]),
                v(&[2, 2])
            ]
        );
        assert!(positive_roots_upto(&q, &v(&[0, 0])).unwrap().is_empty());
        let framed = positive_roots_upto(&framed_a1(), &v(&[1, 1, 1])).unwrap();
        assert!(framed.iter().any(|r| r.vector == v(&[1, 1, 1])));
    }

    #[test]
    fn r_lambda_examples() {
        let q = a1();
        let lam = Parameter::from_ints(&[1, -1]);
        assert_eq!(
            r_lambda_positive(&q, &lam, &v(&[2, 2])).unwrap(),
            vec![v(&[1, 1]), v(&[2, 2])]
        );
        let all: Vec<_> = positive_roots_upto(&q, &v(&[2, 2]))
            .unwrap()
            .into_iter()
            .map(|r| r.vector)
            .collect();
        assert_eq!(
            r_lambda_positive(&q, &Parameter::zero(2), &v(&[2, 2])).unwrap(),
            all
        );
        let framed = r_lambda_positive(
            &framed_a1(),
            &Parameter::from_ints(&[0, 1, -1]),
            &v(&[1, 2, 2]),
        )
        .unwrap();
        assert!(framed.contains(&v(&[1, 0, 0])));
        assert!(framed.contains(&v(&[0, 1, 1])));
    }

    #[test]
    fn negative_bound_is_rejected() {
        assert!(positive_roots_upto(&a1(), &v(&[-1, 2])).is_err());
    }
}
