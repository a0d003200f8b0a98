//! Quivers, dimension vectors, the Ringel form and simple reflections.
//!
//! Vertices are addressed by dense indices `0..n` once a [`Quiver`] is built;
//! the user-facing names live in a side table and only matter for I/O.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{QuiverError, Result};

/// A directed edge `tail -> head`, stored by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

impl Arrow {
    pub fn new(tail: usize, head: usize) -> Self {
        Arrow { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn reversed(&self) -> Self {
        Arrow {
            tail: self.head,
            head: self.tail,
        }
    }
}

/// A finite quiver. Parallel arrows and loops are kept with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    arrows: Vec<Arrow>,
    loops: Vec<usize>,
    /// `sym[i][j] = (e_i, e_j)`.
    sym: Vec<Vec<i64>>,
}

/// JSON form: `{"vertices": ["∞","0","1"], "arrows": [["∞","0"],["0","1"]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

impl Quiver {
    /// Builds a quiver on vertices `0..n` with default names.
    pub fn from_indices(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::with_names(names, arrows)
    }

    /// Builds a quiver with explicit vertex names and index-based arrows.
    pub fn with_names(names: Vec<String>, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(name.clone()));
            }
        }
        let n = names.len();
        let mut list = Vec::with_capacity(arrows.len());
        for &(t, h) in arrows {
            if t >= n {
                return Err(QuiverError::VertexOutOfRange(t));
            }
            if h >= n {
                return Err(QuiverError::VertexOutOfRange(h));
            }
            list.push(Arrow::new(t, h));
        }
        Ok(Self::assemble(names, list))
    }

    /// Builds a quiver from its named JSON form.
    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, name) in spec.vertices.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
        };
        let arrows = spec
            .arrows
            .iter()
            .map(|(t, h)| Ok((lookup(t)?, lookup(h)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::with_names(spec.vertices.clone(), &arrows)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.names.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| (self.names[a.tail].clone(), self.names[a.head].clone()))
                .collect(),
        }
    }

    fn assemble(names: Vec<String>, arrows: Vec<Arrow>) -> Self {
        let n = names.len();
        let mut loops = vec![0; n];
        let mut sym = vec![vec![0i64; n]; n];
        for (i, row) in sym.iter_mut().enumerate() {
            row[i] = 2;
        }
        for a in &arrows {
            if a.is_loop() {
                loops[a.tail] += 1;
                sym[a.tail][a.tail] -= 2;
            } else {
                sym[a.tail][a.head] -= 1;
                sym[a.head][a.tail] -= 1;
            }
        }
        Quiver {
            names,
            arrows,
            loops,
            sym,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of loops at vertex `i`.
    pub fn loops_at(&self, i: usize) -> usize {
        self.loops[i]
    }

    pub fn is_loopfree(&self, i: usize) -> bool {
        self.loops[i] == 0
    }

    /// The symmetric matrix `(e_i, e_j)`.
    pub fn symmetric_matrix(&self) -> &[Vec<i64>] {
        &self.sym
    }

    /// The double quiver: arrow `k` of the original pairs with arrow `k + |A|`,
    /// which runs in the opposite direction.
    pub fn double(&self) -> Quiver {
        let mut arrows = self.arrows.clone();
        arrows.extend(self.arrows.iter().map(Arrow::reversed));
        Self::assemble(self.names.clone(), arrows)
    }

    /// A copy with the arrows at the given indices reversed.
    pub fn with_reversed(&self, which: &[usize]) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| if which.contains(&k) { a.reversed() } else { *a })
            .collect();
        Self::assemble(self.names.clone(), arrows)
    }

    /// Adds a new vertex named `name` in front of the existing ones (it becomes
    /// index 0) together with the given arrows, expressed in the new indexing.
    pub fn with_prepended_vertex(&self, name: &str, extra: &[(usize, usize)]) -> Result<Quiver> {
        let mut names = vec![name.to_string()];
        names.extend(self.names.iter().cloned());
        let mut arrows: Vec<(usize, usize)> = extra.to_vec();
        arrows.extend(self.arrows.iter().map(|a| (a.tail + 1, a.head + 1)));
        Self::with_names(names, &arrows)
    }

    fn check(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.vertex_count(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `<a,b> = sum_i a_i b_i - sum_arrows a_t b_h`.
    pub fn ringel_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|ar| a[ar.tail] * b[ar.head]).sum();
        Ok(diag - off)
    }

    /// `(a,b) = <a,b> + <b,a>`.
    pub fn sym_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sym_form_unchecked(&a.0, &b.0))
    }

    pub(crate) fn sym_form_unchecked(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut total = 0;
        for (i, row) in self.sym.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            let s: i64 = row.iter().zip(b).map(|(c, y)| c * y).sum();
            total += a[i] * s;
        }
        total
    }

    /// `(a, e_i)`.
    pub(crate) fn pair_with_vertex(&self, a: &[i64], i: usize) -> i64 {
        self.sym[i].iter().zip(a).map(|(c, x)| c * x).sum()
    }

    /// `p(a) = 1 - (a,a)/2`.
    pub fn p_value(&self, a: &DimVector) -> Result<i64> {
        self.check(a)?;
        Ok(self.p_unchecked(&a.0))
    }

    pub(crate) fn p_unchecked(&self, a: &[i64]) -> i64 {
        let q = self.sym_form_unchecked(a, a);
        // (a,a) = 2<a,a>, so this is always even.
        assert!(q % 2 == 0, "symmetric form returned an odd square");
        1 - q / 2
    }

    /// The simple reflection `s_i(a) = a - (a, e_i) e_i` at a loopfree vertex.
    pub fn reflect(&self, i: usize, a: &DimVector) -> Result<DimVector> {
        self.check(a)?;
        if i >= self.vertex_count() {
            return Err(QuiverError::VertexOutOfRange(i));
        }
        if !self.is_loopfree(i) {
            return Err(QuiverError::ReflectionUndefined(i));
        }
        let mut out = a.clone();
        out.0[i] -= self.pair_with_vertex(&a.0, i);
        Ok(out)
    }

    /// Whether the support of a nonnegative vector spans a connected subquiver.
    /// The zero vector has empty, hence disconnected, support.
    pub fn support_connected(&self, a: &DimVector) -> Result<bool> {
        self.check(a)?;
        if a.0.iter().any(|&x| x < 0) {
            return Err(QuiverError::Precondition(format!(
                "support_connected needs a nonnegative vector, got {a}"
            )));
        }
        Ok(self.support_connected_unchecked(&a.0))
    }

    pub(crate) fn support_connected_unchecked(&self, a: &[i64]) -> bool {
        let n = a.len();
        let Some(start) = (0..n).find(|&i| a[i] != 0) else {
            return false;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && a[w] != 0 && self.sym[v][w] != 0 && v != w {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..n).all(|i| a[i] == 0 || seen[i])
    }
}

/// An integer vector indexed by the vertices of a quiver.
///
/// Entries may be negative: reflections leave the positive cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The coordinate vector `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// `a > 0`: nonnegative and nonzero.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The vertex `i` if this is the coordinate vector `e_i`.
    pub fn as_unit(&self) -> Option<usize> {
        Self::unit_index(&self.0)
    }

    pub(crate) fn unit_index(v: &[i64]) -> Option<usize> {
        let mut found = None;
        for (i, &x) in v.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Parses `"1,2,2"`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| format!("bad vector entry `{}`: {e}", t.trim()))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DimVector)
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimVector {
    type Output = DimVector;
    fn neg(self) -> DimVector {
        DimVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DimVector> for i64 {
    type Output = DimVector;
    fn mul(self, rhs: &DimVector) -> DimVector {
        DimVector(rhs.0.iter().map(|a| self * a).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}
