//! Simple dimension vectors `Σ_λ`, decompositions into them, `|α|_λ` and the
//! canonical decomposition.
//!
//! Two different part pools are in play and are kept apart on purpose:
//!
//! * membership `α ∈ Σ_λ` compares `p(α)` against decompositions of `α` into
//!   positive roots in `R_λ⁺`;
//! * decompositions, `|α|_λ` and the canonical decomposition use parts drawn
//!   from `Σ_λ` itself.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{QuiverError, Result};
use crate::parameter::{LinearConstraint, Parameter};
use crate::quiver::{DimVector, Quiver};
use crate::roots::{classify_entries, r_lambda_with};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Part {
    pub vector: DimVector,
    pub multiplicity: u32,
}

/// A multiset of dimension vectors, sorted by vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn new(mut parts: Vec<Part>) -> Self {
        parts.sort();
        Decomposition { parts }
    }

    pub fn single(v: DimVector) -> Self {
        Decomposition {
            parts: vec![Part {
                vector: v,
                multiplicity: 1,
            }],
        }
    }

    pub fn total(&self) -> Option<DimVector> {
        let mut it = self.parts.iter();
        let first = it.next()?;
        let mut acc = first.multiplicity as i64 * &first.vector;
        for p in it {
            acc = &acc + &(p.multiplicity as i64 * &p.vector);
        }
        Some(acc)
    }

    /// `Σ m_t p(σ_t)`.
    pub fn p_sum(&self, q: &Quiver) -> i64 {
        self.parts
            .iter()
            .map(|p| p.multiplicity as i64 * q.p_unchecked(p.vector.entries()))
            .sum()
    }

    /// The parts listed with repetition.
    pub fn expanded(&self) -> Vec<DimVector> {
        self.parts
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.vector.clone(), p.multiplicity as usize))
            .collect()
    }

    pub fn part_count(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity as usize).sum()
    }

    /// Whether every part of `coarser` is a sum of a group of this
    /// decomposition's parts, the groups partitioning the parts.
    pub fn refines(&self, coarser: &Decomposition) -> bool {
        if self.total() != coarser.total() {
            return false;
        }
        let mut items = self.expanded();
        items.sort_by_key(|v| std::cmp::Reverse(v.height()));
        let mut targets: Vec<Vec<i64>> = coarser.expanded().into_iter().map(|v| v.0).collect();
        assign_items(&items, 0, &mut targets)
    }
}

fn assign_items(items: &[DimVector], k: usize, targets: &mut [Vec<i64>]) -> bool {
    if k == items.len() {
        return targets.iter().all(|t| t.iter().all(|&x| x == 0));
    }
    let item = items[k].entries();
    for t in 0..targets.len() {
        if !targets[t].iter().zip(item).all(|(r, x)| r >= x) {
            continue;
        }
        // targets with identical remainders are interchangeable
        if (0..t).any(|s| targets[s] == targets[t]) {
            continue;
        }
        for (r, x) in targets[t].iter_mut().zip(item) {
            *r -= x;
        }
        let ok = assign_items(items, k + 1, targets);
        for (r, x) in targets[t].iter_mut().zip(item) {
            *r += x;
        }
        if ok {
            return true;
        }
    }
    false
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if p.multiplicity == 1 {
                write!(f, "{}", p.vector)?;
            } else {
                write!(f, "{}·{}", p.multiplicity, p.vector)?;
            }
        }
        write!(f, "}}")
    }
}

/// Outcome of the `Σ_λ` membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SigmaVerdict {
    Member,
    /// `λ·α ≠ 0`.
    LambdaNonzero,
    NotRoot,
    /// A decomposition into at least two roots of `R_λ⁺` whose `p`-sum is not
    /// smaller than `p(α)`.
    Dominated {
        witness: Vec<DimVector>,
        p_alpha: i64,
        p_sum: i64,
    },
}

impl SigmaVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, SigmaVerdict::Member)
    }
}

type PartList = Vec<(usize, u32)>;

/// Shared state for all `Σ_λ` questions about vectors below a fixed bound.
pub struct SigmaSolver<'q> {
    q: &'q Quiver,
    bound: DimVector,
    constraint: LinearConstraint,
    r_lambda: Vec<DimVector>,
    /// Best `p`-sum of a decomposition into `R_λ⁺` roots (at least one part),
    /// with the index of one optimal part.
    root_best: HashMap<Vec<i64>, Option<(i64, usize)>>,
    sigma: Option<Vec<DimVector>>,
    sigma_best: HashMap<Vec<i64>, Option<i64>>,
    enumerated: HashMap<(Vec<i64>, usize), Rc<Vec<PartList>>>,
}

impl<'q> SigmaSolver<'q> {
    pub fn new(q: &'q Quiver, lam: &Parameter, bound: &DimVector) -> Result<Self> {
        let n = q.vertex_count();
        for len in [lam.len(), bound.len()] {
            if len != n {
                return Err(QuiverError::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        if !bound.is_nonnegative() {
            return Err(QuiverError::Precondition(format!(
                "bound must be nonnegative, got {bound}"
            )));
        }
        let constraint = LinearConstraint::new(lam);
        let r_lambda = r_lambda_with(q, &constraint, bound);
        Ok(SigmaSolver {
            q,
            bound: bound.clone(),
            constraint,
            r_lambda,
            root_best: HashMap::new(),
            sigma: None,
            sigma_best: HashMap::new(),
            enumerated: HashMap::new(),
        })
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.q
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    /// `R_λ⁺` below the bound.
    pub fn r_lambda(&self) -> &[DimVector] {
        &self.r_lambda
    }

    fn p(&self, v: &[i64]) -> i64 {
        self.q.p_unchecked(v)
    }

    fn root_best(&mut self, rem: &[i64]) -> Option<(i64, usize)> {
        if rem.iter().all(|&x| x == 0) {
            return Some((0, usize::MAX));
        }
        if let Some(&hit) = self.root_best.get(rem) {
            return hit;
        }
        let mut best: Option<(i64, usize)> = None;
        for idx in 0..self.r_lambda.len() {
            let part = &self.r_lambda[idx];
            if !part.entries().iter().zip(rem).all(|(a, b)| a <= b) {
                continue;
            }
            let rest: Vec<i64> = rem.iter().zip(part.entries()).map(|(a, b)| a - b).collect();
            let p_part = self.p(part.entries());
            if let Some((s, _)) = self.root_best(&rest) {
                if best.is_none_or(|(b, _)| p_part + s > b) {
                    best = Some((p_part + s, idx));
                }
            }
        }
        self.root_best.insert(rem.to_vec(), best);
        best
    }

    fn root_witness(&mut self, mut rem: Vec<i64>, first: usize) -> Vec<DimVector> {
        let mut parts = vec![self.r_lambda[first].clone()];
        for (r, x) in rem.iter_mut().zip(self.r_lambda[first].entries()) {
            *r -= x;
        }
        while rem.iter().any(|&x| x != 0) {
            let (_, idx) = self.root_best(&rem).expect("witness path is decomposable");
            let part = self.r_lambda[idx].clone();
            for (r, x) in rem.iter_mut().zip(part.entries()) {
                *r -= x;
            }
            parts.push(part);
        }
        parts.sort();
        parts
    }

    fn check_query(&self, a: &DimVector) -> Result<()> {
        if a.len() != self.q.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.q.vertex_count(),
                found: a.len(),
            });
        }
        if !a.is_positive() {
            return Err(QuiverError::Precondition(format!(
                "expected a positive dimension vector, got {a}"
            )));
        }
        if !a.le(&self.bound) {
            return Err(QuiverError::Precondition(format!(
                "{a} exceeds the enumeration bound {}",
                self.bound
            )));
        }
        Ok(())
    }

    /// Decides `a ∈ Σ_λ`, with a witness when it fails.
    pub fn membership(&mut self, a: &DimVector) -> Result<SigmaVerdict> {
        self.check_query(a)?;
        if !self.constraint.vanishes(a.entries()) {
            return Ok(SigmaVerdict::LambdaNonzero);
        }
        if !classify_entries(self.q, a.entries()).is_root() {
            return Ok(SigmaVerdict::NotRoot);
        }
        let p_alpha = self.p(a.entries());
        // best proper decomposition: a first part β ≠ a, then anything for the rest
        let mut best: Option<(i64, usize)> = None;
        for idx in 0..self.r_lambda.len() {
            let part = self.r_lambda[idx].clone();
            if &part == a || !part.le(a) {
                continue;
            }
            let rest = a - &part;
            if let Some((s, _)) = self.root_best(rest.entries()) {
                let total = self.p(part.entries()) + s;
                if best.is_none_or(|(b, _)| total > b) {
                    best = Some((total, idx));
                }
            }
        }
        match best {
            Some((p_sum, idx)) if p_sum >= p_alpha => Ok(SigmaVerdict::Dominated {
                witness: self.root_witness(a.0.clone(), idx),
                p_alpha,
                p_sum,
            }),
            _ => Ok(SigmaVerdict::Member),
        }
    }

    /// `Σ_λ` below the bound, sorted.
    pub fn sigma(&mut self) -> &[DimVector] {
        if self.sigma.is_none() {
            let candidates = self.r_lambda.clone();
            let mut members = Vec::new();
            for c in candidates {
                if self
                    .membership(&c)
                    .expect("candidate below bound")
                    .is_member()
                {
                    members.push(c);
                }
            }
            self.sigma = Some(members);
        }
        self.sigma.as_deref().unwrap()
    }

    fn sigma_best(&mut self, rem: &[i64]) -> Option<i64> {
        if rem.iter().all(|&x| x == 0) {
            return Some(0);
        }
        if let Some(&hit) = self.sigma_best.get(rem) {
            return hit;
        }
        let pool = self.sigma().to_vec();
        let mut best: Option<i64> = None;
        for part in &pool {
            if !part.entries().iter().zip(rem).all(|(a, b)| a <= b) {
                continue;
            }
            let rest: Vec<i64> = rem.iter().zip(part.entries()).map(|(a, b)| a - b).collect();
            if let Some(s) = self.sigma_best(&rest) {
                let total = self.p(part.entries()) + s;
                best = Some(best.map_or(total, |b| b.max(total)));
            }
        }
        self.sigma_best.insert(rem.to_vec(), best);
        best
    }

    /// `|a|_λ`: the largest `p`-sum over decompositions of `a` into `Σ_λ`.
    pub fn alpha_norm(&mut self, a: &DimVector) -> Result<i64> {
        self.check_query(a)?;
        self.sigma_best(a.entries())
            .ok_or_else(|| QuiverError::NotRepresentable {
                alpha: a.to_string(),
            })
    }

    fn enumerate(&mut self, rem: &[i64], min_idx: usize) -> Rc<Vec<PartList>> {
        let key = (rem.to_vec(), min_idx);
        if let Some(hit) = self.enumerated.get(&key) {
            return hit.clone();
        }
        let pool = self.sigma().to_vec();
        let mut out: Vec<PartList> = Vec::new();
        for (idx, part) in pool.iter().enumerate().skip(min_idx) {
            let mut rest = rem.to_vec();
            let mut mult = 0u32;
            loop {
                if !rest.iter().zip(part.entries()).all(|(r, x)| r >= x) {
                    break;
                }
                for (r, x) in rest.iter_mut().zip(part.entries()) {
                    *r -= x;
                }
                mult += 1;
                if rest.iter().all(|&x| x == 0) {
                    out.push(vec![(idx, mult)]);
                    break;
                }
                for tail in self.enumerate(&rest, idx + 1).iter() {
                    let mut list = Vec::with_capacity(tail.len() + 1);
                    list.push((idx, mult));
                    list.extend_from_slice(tail);
                    out.push(list);
                }
            }
        }
        let out = Rc::new(out);
        self.enumerated.insert(key, out.clone());
        out
    }

    /// Every multiset of `Σ_λ` elements summing to `a`, sorted.
    pub fn decompositions(&mut self, a: &DimVector) -> Result<Vec<Decomposition>> {
        self.check_query(a)?;
        let lists = self.enumerate(a.entries(), 0);
        let pool = self.sigma().to_vec();
        let mut out: Vec<Decomposition> = lists
            .iter()
            .map(|list| {
                Decomposition::new(
                    list.iter()
                        .map(|&(idx, m)| Part {
                            vector: pool[idx].clone(),
                            multiplicity: m,
                        })
                        .collect(),
                )
            })
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// The unique decomposition attaining `|a|_λ`.
    ///
    /// Uniqueness and the refinement property are checked against every other
    /// decomposition; a failure is reported as an error, never resolved by a tiebreak.
    pub fn canonical_decomposition(&mut self, a: &DimVector) -> Result<Decomposition> {
        let all = self.decompositions(a)?;
        if all.is_empty() {
            return Err(QuiverError::NotRepresentable {
                alpha: a.to_string(),
            });
        }
        let sums: Vec<i64> = all.iter().map(|d| d.p_sum(self.q)).collect();
        let max = *sums.iter().max().unwrap();
        let maximizers: Vec<&Decomposition> = all
            .iter()
            .zip(&sums)
            .filter(|(_, &s)| s == max)
            .map(|(d, _)| d)
            .collect();
        if maximizers.len() > 1 {
            let listed: Vec<String> = maximizers.iter().map(|d| d.to_string()).collect();
            return Err(QuiverError::UniquenessViolation(format!(
                "{} decompositions of {a} reach p-sum {max}: {}",
                maximizers.len(),
                listed.join(", ")
            )));
        }
        let canonical = maximizers[0].clone();
        if self.alpha_norm(a)? != max {
            return Err(QuiverError::Invariant(format!(
                "|{a}|_λ from the recursion disagrees with the enumerated maximum {max}"
            )));
        }
        for other in &all {
            if other != &canonical && !other.refines(&canonical) {
                return Err(QuiverError::RefinementViolation {
                    canonical: canonical.to_string(),
                    other: other.to_string(),
                });
            }
        }
        Ok(canonical)
    }
}

pub fn in_sigma_lambda(q: &Quiver, lam: &Parameter, a: &DimVector) -> Result<bool> {
    Ok(SigmaSolver::new(q, lam, a)?.membership(a)?.is_member())
}

pub fn sigma_lambda_upto(q: &Quiver, lam: &Parameter, bound: &DimVector) -> Result<Vec<DimVector>> {
    Ok(SigmaSolver::new(q, lam, bound)?.sigma().to_vec())
}

pub fn decompositions(q: &Quiver, lam: &Parameter, a: &DimVector) -> Result<Vec<Decomposition>> {
    SigmaSolver::new(q, lam, a)?.decompositions(a)
}

pub fn alpha_norm(q: &Quiver, lam: &Parameter, a: &DimVector) -> Result<i64> {
    SigmaSolver::new(q, lam, a)?.alpha_norm(a)
}

pub fn canonical_decomposition(
    q: &Quiver,
    lam: &Parameter,
    a: &DimVector,
) -> Result<Decomposition> {
    SigmaSolver::new(q, lam, a)?.canonical_decomposition(a)
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

    fn lam(x: &[(i64, i64)]) -> Parameter {
        Parameter::new(
            x.iter()
                .map(|&(n, d)| crate::cyclotomic::CycNumber::ratio(n, d))
                .collect(),
        )
    }

    fn part(x: &[i64], m: u32) -> Part {
        Part {
            vector: v(x),
            multiplicity: m,
        }
    }

    #[test]
    fn membership_examples() {
        assert!(in_sigma_lambda(&a1(), &Parameter::from_ints(&[1, -1]), &v(&[1, 1])).unwrap());
        assert!(in_sigma_lambda(&a1(), &Parameter::from_ints(&[0, 5]), &v(&[1, 0])).unwrap());
        let q = framed_a1();
        let l = Parameter::from_ints(&[0, 1, -1]);
        let mut solver = SigmaSolver::new(&q, &l, &v(&[1, 1, 1])).unwrap();
        match solver.membership(&v(&[1, 1, 1])).unwrap() {
            SigmaVerdict::Dominated {
                witness,
                p_alpha,
                p_sum,
            } => {
                assert_eq!(witness, vec![v(&[0, 1, 1]), v(&[1, 0, 0])]);
                assert_eq!((p_alpha, p_sum), (1, 1));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        assert_eq!(
            solver.membership(&v(&[0, 1, 0])).unwrap(),
            SigmaVerdict::LambdaNonzero
        );
        assert!(solver.membership(&v(&[0, 0, 0])).is_err());
    }

    #[test]
    fn sigma_lists() {
        assert_eq!(
            sigma_lambda_upto(
                &framed_a1(),
                &Parameter::from_ints(&[0, 1, -1]),
                &v(&[1, 2, 2])
            )
            .unwrap(),
            vec![v(&[0, 1, 1]), v(&[1, 0, 0])]
        );
        assert_eq!(
            sigma_lambda_upto(&a1(), &Parameter::from_ints(&[1, -1]), &v(&[2, 2])).unwrap(),
            vec![v(&[1, 1])]
        );
        assert!(
            sigma_lambda_upto(&a1(), &Parameter::from_ints(&[1, -1]), &v(&[0, 0]))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn decomposition_examples() {
        let q = framed_a1();
        let d = decompositions(&q, &Parameter::from_ints(&[0, 1, -1]), &v(&[1, 2, 2])).unwrap();
        assert_eq!(
            d,
            vec![Decomposition::new(vec![
                part(&[0, 1, 1], 2),
                part(&[1, 0, 0], 1)
            ])]
        );
        let generic = lam(&[(2, 1), (-1, 2), (-1, 2)]);
        let d = decompositions(&q, &generic, &v(&[1, 2, 2])).unwrap();
        assert_eq!(d, vec![Decomposition::single(v(&[1, 2, 2]))]);
        assert_eq!(
            decompositions(&a1(), &Parameter::from_ints(&[0, 3]), &v(&[1, 0])).unwrap(),
            vec![Decomposition::single(v(&[1, 0]))]
        );
    }

    #[test]
    fn norm_examples() {
        let q = framed_a1();
        assert_eq!(
            alpha_norm(&q, &Parameter::from_ints(&[0, 1, -1]), &v(&[1, 2, 2])).unwrap(),
            2
        );
        assert_eq!(
            alpha_norm(&a1(), &Parameter::from_ints(&[0, 1]), &v(&[1, 0])).unwrap(),
            0
        );
        // λ·α ≠ 0 leaves nothing to decompose into
        assert!(matches!(
            alpha_norm(&a1(), &Parameter::from_ints(&[1, 1]), &v(&[1, 1])),
            Err(QuiverError::NotRepresentable { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        let q = framed_a1();
        assert_eq!(
            canonical_decomposition(&q, &Parameter::from_ints(&[0, 1, -1]), &v(&[1, 2, 2]))
                .unwrap(),
            Decomposition::new(vec![part(&[1, 0, 0], 1), part(&[0, 1, 1], 2)])
        );
        assert_eq!(
            canonical_decomposition(&q, &lam(&[(2, 1), (-1, 2), (-1, 2)]), &v(&[1, 2, 2])).unwrap(),
            Decomposition::single(v(&[1, 2, 2]))
        );
        // λ = 0 on Ã1 at δ: Σ_0 = {e0, e1, δ} and δ is the maximizer
        assert_eq!(
            canonical_decomposition(&a1(), &Parameter::zero(2), &v(&[1, 1])).unwrap(),
            Decomposition::single(v(&[1, 1]))
        );
    }

    #[test]
    fn refinement_check() {
        let coarse = Decomposition::new(vec![part(&[1, 1], 1), part(&[1, 0], 1)]);
        let fine = Decomposition::new(vec![part(&[1, 0], 2), part(&[0, 1], 1)]);
        assert!(fine.refines(&coarse));
        let coarse2 = Decomposition::new(vec![part(&[2, 0], 1), part(&[0, 1], 1)]);
        let other = Decomposition::new(vec![part(&[1, 1], 1), part(&[1, 0], 1)]);
        assert!(!other.refines(&coarse2));
        assert!(coarse.refines(&coarse));
    }
}
