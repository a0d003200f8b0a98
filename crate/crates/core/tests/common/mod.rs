//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's form, root or decomposition code.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

/// A bare quiver: vertex count and arrow list.
#[derive(Debug, Clone)]
pub struct Bare {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Bare {
    pub fn new(n: usize, arrows: &[(usize, usize)]) -> Self {
        Bare {
            n,
            arrows: arrows.to_vec(),
        }
    }

    /// `∞ → 0, 0 ⇉ 1`.
    pub fn framed_a1() -> Self {
        Bare::new(3, &[(0, 1), (1, 2), (1, 2)])
    }

    /// `0 ⇉ 1`.
    pub fn a1() -> Self {
        Bare::new(2, &[(0, 1), (0, 1)])
    }

    /// `∞ → 0` and the triangle on `0, 1, 2`.
    pub fn framed_a2() -> Self {
        Bare::new(4, &[(0, 1), (1, 2), (2, 3), (1, 3)])
    }

    pub fn sym(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| 2 * x * y).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|&(t, h)| a[t] * b[h] + a[h] * b[t])
            .sum();
        diag - off
    }

    /// `p(a) = 1 - Σ a_i² + Σ_arrows a_t a_h`.
    pub fn p(&self, a: &[i64]) -> i64 {
        let sq: i64 = a.iter().map(|x| x * x).sum();
        let arr: i64 = self.arrows.iter().map(|&(t, h)| a[t] * a[h]).sum();
        1 - sq + arr
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.arrows.iter().any(|&(t, h)| t == i && h == i)
    }

    pub fn reflect(&self, i: usize, a: &[i64]) -> Vec<i64> {
        let mut e = vec![0; self.n];
        e[i] = 1;
        let c = self.sym(a, &e);
        let mut out = a.to_vec();
        out[i] -= c;
        out
    }

    pub fn connected_support(&self, a: &[i64]) -> bool {
        let support: Vec<usize> = (0..self.n).filter(|&i| a[i] != 0).collect();
        let Some(&start) = support.first() else {
            return false;
        };
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(t, h) in &self.arrows {
                for (x, y) in [(t, h), (h, t)] {
                    if x == v && a[y] != 0 && seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.len() == support.len()
    }

    pub fn in_fundamental(&self, a: &[i64]) -> bool {
        if a.iter().any(|&x| x < 0) || a.iter().all(|&x| x == 0) {
            return false;
        }
        let pairings_ok = (0..self.n).all(|i| {
            let mut e = vec![0; self.n];
            e[i] = 1;
            self.sym(a, &e) <= 0
        });
        pairings_ok && self.connected_support(a)
    }
}

/// Every vector `0 ≤ v ≤ bound`, lexicographic.
pub fn box_vectors(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleClass {
    Real,
    Imaginary,
}

/// Positive roots inside a box, found as the closure of the simple roots and
/// the fundamental region under simple reflections that stay in the box.
///
/// Complete because height-lowering descent from any positive root only ever
/// decreases one coordinate, so its whole path lies in the box.
pub fn root_closure(q: &Bare, bound: &[i64]) -> HashMap<Vec<i64>, OracleClass> {
    let inside = |v: &[i64]| v.iter().zip(bound).all(|(x, b)| *x >= 0 && x <= b);
    let mut found: HashMap<Vec<i64>, OracleClass> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..q.n {
        if q.has_loop(i) || bound[i] < 1 {
            continue;
        }
        let mut e = vec![0; q.n];
        e[i] = 1;
        found.insert(e.clone(), OracleClass::Real);
        queue.push_back(e);
    }
    for v in box_vectors(bound) {
        if q.in_fundamental(&v) {
            found.insert(v.clone(), OracleClass::Imaginary);
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        let class = found[&v];
        for i in 0..q.n {
            if q.has_loop(i) {
                continue;
            }
            let w = q.reflect(i, &v);
            if inside(&w) && !found.contains_key(&w) {
                found.insert(w.clone(), class);
                queue.push_back(w);
            }
        }
    }
    found
}

/// All multisets of `parts` (given as a list) summing to `target`, each as a
/// nondecreasing list of indices.
pub fn multisets_summing_to(parts: &[Vec<i64>], target: &[i64]) -> Vec<Vec<usize>> {
    fn go(
        parts: &[Vec<i64>],
        rest: &mut Vec<i64>,
        from: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.iter().all(|&x| x == 0) {
            out.push(current.clone());
            return;
        }
        for k in from..parts.len() {
            if parts[k].iter().zip(rest.iter()).all(|(p, r)| p <= r) {
                for (r, p) in rest.iter_mut().zip(&parts[k]) {
                    *r -= p;
                }
                current.push(k);
                go(parts, rest, k, current, out);
                current.pop();
                for (r, p) in rest.iter_mut().zip(&parts[k]) {
                    *r += p;
                }
            }
        }
    }
    let mut out = Vec::new();
    go(parts, &mut target.to_vec(), 0, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` as nonincreasing lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Whether the parts of `fine` can be grouped so that each group sums to one
/// part of `coarse`.
pub fn groups_into(fine: &[Vec<i64>], coarse: &[Vec<i64>]) -> bool {
    fn go(fine: &[Vec<i64>], k: usize, buckets: &mut [Vec<i64>]) -> bool {
        if k == fine.len() {
            return buckets.iter().all(|b| b.iter().all(|&x| x == 0));
        }
        for j in 0..buckets.len() {
            if fine[k].iter().zip(&buckets[j]).all(|(p, b)| p <= b) {
                if j > 0 && buckets[j] == buckets[j - 1] {
                    continue;
                }
                for (b, p) in buckets[j].iter_mut().zip(&fine[k]) {
                    *b -= p;
                }
                let ok = go(fine, k + 1, buckets);
                for (b, p) in buckets[j].iter_mut().zip(&fine[k]) {
                    *b += p;
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut buckets = coarse.to_vec();
    buckets.sort();
    go(fine, 0, &mut buckets)
}
