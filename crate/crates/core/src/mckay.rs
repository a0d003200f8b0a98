//! Finite subgroups of SL(2,C), their McKay quivers, and the parameter maps
//! from symplectic reflection parameters `c = (c₁, c̲)` to quiver parameters.
//!
//! Character tables are embedded as data. Every table is checked on
//! construction (orthogonality, `Σ δ_i² = |Γ|`, McKay adjacency against the
//! embedded quiver, `δ` isotropic), so a transcription error fails loudly.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::CycNumber;
use crate::error::QuiverError;
use crate::parameter::Parameter;
use crate::quiver::{DimVector, Quiver};
use crate::roots::in_fundamental_region;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McKayError {
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("character table check failed for {group}: {detail}")]
    Table { group: String, detail: String },
    #[error("expected {expected} class parameters, got {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(l) => write!(f, "cyclic:{l}"),
            GroupKind::BinaryDihedral(l) => write!(f, "bindihedral:{l}"),
            GroupKind::BinaryTetrahedral => write!(f, "bintetra"),
            GroupKind::BinaryOctahedral => write!(f, "binocta"),
            GroupKind::BinaryIcosahedral => write!(f, "binicosa"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = McKayError;

    fn from_str(s: &str) -> Result<Self, McKayError> {
        let bad = || McKayError::Unsupported(s.to_string());
        let s = s.trim();
        match s {
            "bintetra" => return Ok(GroupKind::BinaryTetrahedral),
            "binocta" => return Ok(GroupKind::BinaryOctahedral),
            "binicosa" => return Ok(GroupKind::BinaryIcosahedral),
            _ => {}
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let l: u32 = arg.trim().parse().map_err(|_| bad())?;
        match name {
            "cyclic" => Ok(GroupKind::Cyclic(l)),
            "bindihedral" => Ok(GroupKind::BinaryDihedral(l)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub label: String,
    pub size: u64,
}

/// A finite subgroup `Γ ⊂ SL(2,C)` with its character table and McKay quiver.
///
/// Class 0 is the identity, irreducible 0 is the trivial representation and
/// is the extending vertex of the quiver.
#[derive(Debug, Clone)]
pub struct GammaData {
    pub kind: GroupKind,
    pub order: u64,
    /// Exponent of `Γ`; every character value lies in `Q(ζ_exponent)`.
    pub exponent: u32,
    pub classes: Vec<ConjugacyClass>,
    pub irreps: Vec<String>,
    /// `characters[i][c]` is the value of irreducible `i` on class `c`.
    pub characters: Vec<Vec<CycNumber>>,
    /// Character of the defining two-dimensional representation.
    pub natural: Vec<CycNumber>,
    pub quiver: Quiver,
    pub delta: DimVector,
}

struct RawTable {
    order: u64,
    exponent: u32,
    classes: Vec<(String, u64)>,
    irreps: Vec<String>,
    characters: Vec<Vec<CycNumber>>,
    natural: Vec<CycNumber>,
    arrows: Vec<(usize, usize)>,
}

fn labelled(list: &[(&str, u64)]) -> Vec<(String, u64)> {
    list.iter().map(|&(l, n)| (l.to_string(), n)).collect()
}

fn int(n: i64) -> CycNumber {
    CycNumber::from_int(n)
}

fn ints(v: &[i64]) -> Vec<CycNumber> {
    v.iter().map(|&x| int(x)).collect()
}

fn cyclic_table(l: u32) -> RawTable {
    let z = |k: i64| CycNumber::root_of_unity(l, k);
    let classes = (0..l).map(|j| (format!("g^{j}"), 1)).collect();
    let characters = (0..l as i64)
        .map(|k| (0..l as i64).map(|j| z(j * k)).collect())
        .collect();
    let natural = (0..l as i64).map(|j| &z(j) + &z(-j)).collect();
    let arrows = if l == 2 {
        vec![(0, 1), (0, 1)]
    } else {
        let mut a: Vec<_> = (0..l as usize - 1).map(|i| (i, i + 1)).collect();
        a.push((0, l as usize - 1));
        a
    };
    RawTable {
        order: l as u64,
        exponent: l,
        classes,
        irreps: (0..l).map(|k| format!("chi{k}")).collect(),
        characters,
        natural,
        arrows,
    }
}

/// The binary dihedral group of order `4l`, `<a, x | a^{2l} = 1, x² = a^l, x a x⁻¹ = a⁻¹>`.
fn binary_dihedral_table(l: u32) -> RawTable {
    let n = num_integer::lcm(2 * l, 4);
    let zeta = |k: i64| CycNumber::root_of_unity(n, k * (n / (2 * l)) as i64);
    let i = CycNumber::root_of_unity(n, (n / 4) as i64);
    let sign = |k: i64| int(if k % 2 == 0 { 1 } else { -1 });
    let s = if l.is_multiple_of(2) { int(1) } else { i };
    let li = l as i64;

    let mut classes = labelled(&[("1", 1), ("-1", 1)]);
    for j in 1..li {
        classes.push((format!("a^{j}"), 2));
    }
    classes.push(("x".into(), l as u64));
    classes.push(("xa".into(), l as u64));

    let one_dim = |a: i64, x: CycNumber| -> Vec<CycNumber> {
        // a ↦ a (±1), x ↦ x
        let pow = |k: i64| int(if a == 1 || k % 2 == 0 { 1 } else { -1 });
        let mut row = vec![int(1), pow(li)];
        row.extend((1..li).map(pow));
        row.push(x.clone());
        row.push(&x * &int(a));
        row
    };
    let mut characters = vec![
        one_dim(1, int(1)),
        one_dim(1, int(-1)),
        one_dim(-1, s.clone()),
        one_dim(-1, -&s),
    ];
    let mut irreps: Vec<String> = (0..4).map(|k| format!("chi{k}")).collect();
    for h in 1..li {
        let mut row = vec![int(2), sign(h).scale_int(2)];
        row.extend((1..li).map(|j| &zeta(h * j) + &zeta(-h * j)));
        row.push(int(0));
        row.push(int(0));
        characters.push(row);
        irreps.push(format!("rho{h}"));
    }
    let natural = characters[4].clone();
    let mut arrows = vec![(0, 4), (1, 4)];
    for h in 1..l as usize - 1 {
        arrows.push((3 + h, 4 + h));
    }
    let last = 4 + l as usize - 2;
    arrows.push((last, 2));
    arrows.push((last, 3));
    RawTable {
        order: 4 * l as u64,
        exponent: n,
        classes,
        irreps,
        characters,
        natural,
        arrows,
    }
}

fn binary_tetrahedral_table() -> RawTable {
    let w = CycNumber::root_of_unity(12, 4);
    let w2 = CycNumber::root_of_unity(12, 8);
    let (mw, mw2) = (-&w, -&w2);
    let characters = vec![
        ints(&[1, 1, 1, 1, 1, 1, 1]),
        vec![
            int(1),
            int(1),
            int(1),
            w.clone(),
            w2.clone(),
            w.clone(),
            w2.clone(),
        ],
        vec![
            int(1),
            int(1),
            int(1),
            w2.clone(),
            w.clone(),
            w2.clone(),
            w.clone(),
        ],
        ints(&[3, 3, -1, 0, 0, 0, 0]),
        ints(&[2, -2, 0, -1, -1, 1, 1]),
        vec![
            int(2),
            int(-2),
            int(0),
            mw.clone(),
            mw2.clone(),
            w.clone(),
            w2.clone(),
        ],
        vec![int(2), int(-2), int(0), mw2, mw, w2, w],
    ];
    RawTable {
        order: 24,
        exponent: 12,
        classes: labelled(&[
            ("1", 1),
            ("-1", 1),
            ("4A", 6),
            ("3A", 4),
            ("3B", 4),
            ("6A", 4),
            ("6B", 4),
        ]),
        irreps: ["1", "1'", "1''", "3", "2", "2'", "2''"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        natural: characters[4].clone(),
        characters,
        arrows: vec![(0, 4), (1, 5), (2, 6), (4, 3), (5, 3), (6, 3)],
    }
}

fn binary_octahedral_table() -> RawTable {
    let r2 = &CycNumber::root_of_unity(24, 3) + &CycNumber::root_of_unity(24, 21);
    let m2 = -&r2;
    let characters = vec![
        ints(&[1, 1, 1, 1, 1, 1, 1, 1]),
        ints(&[1, 1, 1, 1, 1, -1, -1, -1]),
        ints(&[2, 2, 2, -1, -1, 0, 0, 0]),
        ints(&[3, 3, -1, 0, 0, 1, 1, -1]),
        ints(&[3, 3, -1, 0, 0, -1, -1, 1]),
        vec![
            int(2),
            int(-2),
            int(0),
            int(-1),
            int(1),
            r2.clone(),
            m2.clone(),
            int(0),
        ],
        vec![int(2), int(-2), int(0), int(-1), int(1), m2, r2, int(0)],
        ints(&[4, -4, 0, 1, -1, 0, 0, 0]),
    ];
    RawTable {
        order: 48,
        exponent: 24,
        classes: labelled(&[
            ("1", 1),
            ("-1", 1),
            ("4A", 6),
            ("3A", 8),
            ("6A", 8),
            ("8A", 6),
            ("8B", 6),
            ("4B", 12),
        ]),
        irreps: ["1", "1'", "2'", "3", "3'", "2", "2''", "4"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        natural: characters[5].clone(),
        characters,
        arrows: vec![(0, 5), (5, 3), (3, 7), (4, 7), (6, 4), (1, 6), (2, 7)],
    }
}

fn binary_icosahedral_table() -> RawTable {
    let z5 = |k: i64| CycNumber::root_of_unity(60, 12 * k);
    // golden ratio φ = 1 + ζ5 + ζ5⁴ and its conjugate φ' = 1 - φ
    let phi = &(&int(1) + &z5(1)) + &z5(4);
    let psi = &int(1) - &phi;
    let (mphi, mpsi) = (-&phi, -&psi);
    let characters = vec![
        ints(&[1, 1, 1, 1, 1, 1, 1, 1, 1]),
        vec![
            int(2),
            int(-2),
            int(0),
            int(1),
            int(-1),
            phi.clone(),
            psi.clone(),
            mpsi.clone(),
            mphi.clone(),
        ],
        vec![
            int(3),
            int(3),
            int(-1),
            int(0),
            int(0),
            phi.clone(),
            psi.clone(),
            psi.clone(),
            phi.clone(),
        ],
        ints(&[4, -4, 0, -1, 1, 1, 1, -1, -1]),
        ints(&[5, 5, 1, -1, -1, 0, 0, 0, 0]),
        ints(&[6, -6, 0, 0, 0, -1, -1, 1, 1]),
        ints(&[4, 4, 0, 1, 1, -1, -1, -1, -1]),
        vec![
            int(2),
            int(-2),
            int(0),
            int(1),
            int(-1),
            psi.clone(),
            phi.clone(),
            mphi,
            mpsi,
        ],
        vec![
            int(3),
            int(3),
            int(-1),
            int(0),
            int(0),
            psi.clone(),
            phi.clone(),
            phi,
            psi,
        ],
    ];
    RawTable {
        order: 120,
        exponent: 60,
        classes: labelled(&[
            ("1", 1),
            ("-1", 1),
            ("4A", 30),
            ("6A", 20),
            ("3A", 20),
            ("10A", 12),
            ("10B", 12),
            ("5A", 12),
            ("5B", 12),
        ]),
        irreps: ["1", "2", "3", "4", "5", "6", "4'", "2'", "3'"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        natural: characters[1].clone(),
        characters,
        arrows: vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (6, 5),
            (7, 6),
            (8, 5),
        ],
    }
}

/// Builds and validates the McKay data for `kind`.
pub fn gamma_data(kind: GroupKind) -> Result<GammaData, McKayError> {
    let raw = match kind {
        GroupKind::Cyclic(l) if l >= 2 => cyclic_table(l),
        GroupKind::BinaryDihedral(l) if l >= 2 => binary_dihedral_table(l),
        GroupKind::BinaryTetrahedral => binary_tetrahedral_table(),
        GroupKind::BinaryOctahedral => binary_octahedral_table(),
        GroupKind::BinaryIcosahedral => binary_icosahedral_table(),
        GroupKind::Cyclic(_) => {
            return Err(McKayError::Unsupported(format!(
                "{kind}: the trivial group gives a quiver with a loop; need l >= 2"
            )))
        }
        GroupKind::BinaryDihedral(_) => {
            return Err(McKayError::Unsupported(format!("{kind}: need l >= 2")))
        }
    };
    let delta: Vec<i64> = raw
        .characters
        .iter()
        .map(|row| {
            row[0]
                .to_rational()
                .filter(BigRational::is_integer)
                .and_then(|q| q.to_integer().to_i64())
                .unwrap_or(-1)
        })
        .collect();
    let quiver = Quiver::from_indices(raw.irreps.len(), &raw.arrows)?;
    let data = GammaData {
        kind,
        order: raw.order,
        exponent: raw.exponent,
        classes: raw
            .classes
            .into_iter()
            .map(|(label, size)| ConjugacyClass { label, size })
            .collect(),
        irreps: raw.irreps,
        characters: raw.characters,
        natural: raw.natural,
        quiver,
        delta: DimVector::new(delta),
    };
    data.validate()?;
    Ok(data)
}

impl GammaData {
    fn fail(&self, detail: String) -> McKayError {
        McKayError::Table {
            group: self.kind.to_string(),
            detail,
        }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `(1/|Γ|) Σ_C |C| χ_L(C) χ_j(C) conj χ_i(C)`: multiplicity of `S_i` in `S_j ⊗ L`.
    pub fn tensor_multiplicity(&self, i: usize, j: usize) -> CycNumber {
        let total: CycNumber = self
            .classes
            .iter()
            .enumerate()
            .map(|(c, cls)| {
                (&(&self.natural[c] * &self.characters[j][c]) * &self.characters[i][c].conj())
                    .scale_int(cls.size as i64)
            })
            .sum();
        total.scale(&BigRational::new(1.into(), (self.order as i64).into()))
    }

    /// Runs every self-check on the embedded data.
    pub fn validate(&self) -> Result<(), McKayError> {
        let k = self.classes.len();
        if self.characters.len() != k || self.characters.iter().any(|r| r.len() != k) {
            return Err(self.fail("character table is not square".into()));
        }
        if self.natural.len() != k {
            return Err(self.fail("natural character has the wrong length".into()));
        }
        if self.classes.iter().map(|c| c.size).sum::<u64>() != self.order {
            return Err(self.fail("class sizes do not sum to |Γ|".into()));
        }
        if self.classes[0].size != 1 || self.characters[0].iter().any(|x| *x != int(1)) {
            return Err(self.fail("class 0 must be the identity and irrep 0 trivial".into()));
        }
        let order = int(self.order as i64);
        for i in 0..k {
            for j in 0..k {
                let s: CycNumber = (0..k)
                    .map(|c| {
                        (&self.characters[i][c] * &self.characters[j][c].conj())
                            .scale_int(self.classes[c].size as i64)
                    })
                    .sum();
                let expected = if i == j {
                    order.clone()
                } else {
                    CycNumber::zero()
                };
                if s != expected {
                    return Err(self.fail(format!(
                        "row orthogonality fails for irreps {i},{j}: got {s}"
                    )));
                }
            }
        }
        for c in 0..k {
            for d in 0..k {
                let s: CycNumber = (0..k)
                    .map(|i| &self.characters[i][c] * &self.characters[i][d].conj())
                    .sum();
                let expected = if c == d {
                    CycNumber::from_rational(BigRational::new(
                        (self.order as i64).into(),
                        (self.classes[c].size as i64).into(),
                    ))
                } else {
                    CycNumber::zero()
                };
                if s != expected {
                    return Err(self.fail(format!(
                        "column orthogonality fails for classes {c},{d}: got {s}"
                    )));
                }
            }
        }
        if self.delta.entries().iter().any(|&d| d < 1) || self.delta[0] != 1 {
            return Err(self.fail(format!("bad irreducible dimensions {}", self.delta)));
        }
        let squares: i64 = self.delta.entries().iter().map(|d| d * d).sum();
        if squares != self.order as i64 {
            return Err(self.fail(format!("Σ δ_i² = {squares} ≠ |Γ|")));
        }
        if self.natural[0] != int(2) || self.natural.iter().any(|x| *x != x.conj()) {
            return Err(self.fail("natural character is not a real 2-dimensional character".into()));
        }
        for i in 0..k {
            for j in 0..k {
                let m = self.tensor_multiplicity(i, j);
                let edges = self
                    .quiver
                    .arrows()
                    .iter()
                    .filter(|a| (a.tail, a.head) == (i, j) || (a.tail, a.head) == (j, i))
                    .count() as i64;
                let edges = if i == j { edges / 2 } else { edges };
                if m != int(edges) {
                    return Err(self.fail(format!(
                        "McKay multiplicity of S_{i} in S_{j}⊗L is {m}, quiver has {edges} edges"
                    )));
                }
            }
        }
        if !in_fundamental_region(&self.quiver, &self.delta)? {
            return Err(self.fail("δ is not in the fundamental region".into()));
        }
        for v in 0..k {
            if self.quiver.sym_form(&self.delta, &DimVector::unit(k, v))? != 0 {
                return Err(self.fail(format!("(δ, e_{v}) ≠ 0")));
            }
        }
        if !is_acyclic(&self.quiver) {
            return Err(self.fail("quiver orientation has a cycle".into()));
        }
        Ok(())
    }
}

fn is_acyclic(q: &Quiver) -> bool {
    let n = q.vertex_count();
    let mut indeg = vec![0usize; n];
    for a in q.arrows() {
        indeg[a.head] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for a in q.arrows().iter().filter(|a| a.tail == v) {
            indeg[a.head] -= 1;
            if indeg[a.head] == 0 {
                ready.push(a.head);
            }
        }
    }
    seen == n
}

/// Symplectic reflection parameters: `c₁` and one value per nontrivial class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CParam {
    pub c1: CycNumber,
    pub classes: Vec<CycNumber>,
}

impl CParam {
    pub fn new(c1: CycNumber, classes: Vec<CycNumber>) -> Self {
        CParam { c1, classes }
    }

    /// `[c₁, c_{C_1}, …]`, classes in the table's order (identity omitted).
    pub fn from_list(values: Vec<CycNumber>) -> Option<Self> {
        let mut it = values.into_iter();
        let c1 = it.next()?;
        Some(CParam {
            c1,
            classes: it.collect(),
        })
    }

    pub fn zero(g: &GammaData) -> Self {
        CParam {
            c1: CycNumber::zero(),
            classes: vec![CycNumber::zero(); g.class_count() - 1],
        }
    }
}

/// `λ(c)_k = -½ c₁ |Γ| [k = 0] + Σ_{C ≠ 1} |C| c_C χ_k(C)`.
pub fn lambda_of_c(g: &GammaData, c: &CParam) -> Result<Parameter, McKayError> {
    if c.classes.len() != g.class_count() - 1 {
        return Err(McKayError::ParameterCount {
            expected: g.class_count() - 1,
            found: c.classes.len(),
        });
    }
    let entries = (0..g.irreps.len())
        .map(|k| {
            let mut value: CycNumber = c
                .classes
                .iter()
                .enumerate()
                .filter(|(_, cc)| !cc.is_zero())
                .map(|(idx, cc)| {
                    let cls = idx + 1;
                    (cc * &g.characters[k][cls]).scale_int(g.classes[cls].size as i64)
                })
                .sum();
            if k == 0 {
                let shift =
                    c.c1.scale(&BigRational::new((g.order as i64).into(), 2.into()));
                value = &value - &shift;
            }
            value
        })
        .collect();
    Ok(Parameter::new(entries))
}

/// The framed quiver `Q'`: a new vertex `∞` (index 0) with one arrow `∞ → 0`.
#[derive(Debug, Clone)]
pub struct Framing {
    pub quiver: Quiver,
    delta: DimVector,
}

impl Framing {
    /// `ε_∞ + n δ`.
    pub fn dim_vector(&self, n: i64) -> DimVector {
        let mut v = vec![1];
        v.extend(self.delta.entries().iter().map(|d| n * d));
        DimVector::new(v)
    }
}

pub fn frame(g: &GammaData) -> Framing {
    let quiver = g
        .quiver
        .with_prepended_vertex("∞", &[(0, 1)])
        .expect("framing a valid quiver");
    Framing {
        quiver,
        delta: g.delta.clone(),
    }
}

pub fn cm_dim_vector(g: &GammaData, n: i64) -> DimVector {
    frame(g).dim_vector(n)
}

/// `λ' = (-λ·nδ, λ)` on the framed quiver.
pub fn lambda_prime(g: &GammaData, lam: &Parameter, n: i64) -> Result<Parameter, McKayError> {
    let dot = lam.dot(&g.delta)?;
    let mut entries = vec![-&dot.scale_int(n)];
    entries.extend(lam.entries().iter().cloned());
    let out = Parameter::new(entries);
    let check = out.dot(&cm_dim_vector(g, n))?;
    if !check.is_zero() {
        return Err(QuiverError::Invariant(format!("λ'·(ε_∞ + nδ) = {check}")).into());
    }
    Ok(out)
}

/// Convenience: the framed quiver, `λ'(c)` and `ε_∞ + nδ` in one go.
pub fn wreath_problem(
    g: &GammaData,
    c: &CParam,
    n: i64,
) -> Result<(Quiver, Parameter, DimVector), McKayError> {
    let lam = lambda_of_c(g, c)?;
    Ok((
        frame(g).quiver,
        lambda_prime(g, &lam, n)?,
        cm_dim_vector(g, n),
    ))
}

/// All groups with built-in tables, small parameters first.
pub fn supported_examples() -> Vec<GroupKind> {
    vec![
        GroupKind::Cyclic(2),
        GroupKind::Cyclic(3),
        GroupKind::Cyclic(4),
        GroupKind::Cyclic(5),
        GroupKind::Cyclic(6),
        GroupKind::BinaryDihedral(2),
        GroupKind::BinaryDihedral(3),
        GroupKind::BinaryDihedral(4),
        GroupKind::BinaryDihedral(5),
        GroupKind::BinaryTetrahedral,
        GroupKind::BinaryOctahedral,
        GroupKind::BinaryIcosahedral,
    ]
}
