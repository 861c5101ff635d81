//! Graded free modules, homogeneous elements, degree-0 matrices between free
//! modules, and finitely presented graded modules.
//!
//! # Shift convention
//!
//! `M[l]` is the module with `M[l]_q = M_{q-l}`. In particular the generator
//! of `R[l]` sits in degree `l`, and a [`GradedFreeModule`] with generator
//! degrees `(l_1, .., l_k)` is `R[l_1] ⊕ .. ⊕ R[l_k]`. This is the opposite
//! sign to the common `R(-l)` notation: the Koszul map `R[d]^r -> R` sends the
//! degree-`d` generators to the variables.

use crate::error::{Error, Result};
use crate::ring::{Polynomial, RingSpec};

/// Free module given by its generator degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedFreeModule {
    degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i64>) -> Self {
        GradedFreeModule { degrees }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn shifted(&self, l: i64) -> Self {
        Self::new(self.degrees.iter().map(|g| g + l).collect())
    }

    /// `Hom(F, R)`: generator degrees negated.
    pub fn dual(&self) -> Self {
        Self::new(self.degrees.iter().map(|g| -g).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.degrees.iter().chain(&other.degrees).copied().collect())
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }
}

/// Homogeneity status of a module element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(i64),
    Inhomogeneous,
}

/// Vector of polynomials indexed by the generators of an ambient free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub coords: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(coords: Vec<Polynomial>) -> Self {
        ModuleElement { coords }
    }

    pub fn zero(ring: &RingSpec, rank: usize) -> Self {
        ModuleElement { coords: vec![ring.zero(); rank] }
    }

    /// The `i`-th basis vector scaled by `p`.
    pub fn unit(ring: &RingSpec, rank: usize, i: usize, p: Polynomial) -> Self {
        let mut e = Self::zero(ring, rank);
        e.coords[i] = p;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinate `i` must be homogeneous of degree `q - g_i`.
    pub fn homogeneity(&self, ring: &RingSpec, ambient: &GradedFreeModule) -> Homogeneity {
        let mut found = None;
        for (p, g) in self.coords.iter().zip(ambient.degrees()) {
            if p.is_zero() {
                continue;
            }
            let Some(dp) = p.homogeneous_degree(ring.var_degree()) else {
                return Homogeneity::Inhomogeneous;
            };
            match found {
                None => found = Some(dp + g),
                Some(q) if q != dp + g => return Homogeneity::Inhomogeneous,
                _ => {}
            }
        }
        found.map_or(Homogeneity::Zero, Homogeneity::Degree)
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, p: &Polynomial) -> ModuleElement {
        ModuleElement::new(self.coords.iter().map(|a| a * p).collect())
    }
}

/// Matrix of a degree-0 map `source -> target`; rows are indexed by target
/// generators, columns by source generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    source: GradedFreeModule,
    target: GradedFreeModule,
    nvars: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    /// Build from rows; shapes are validated but homogeneity is not (see
    /// [`GradedMatrix::check_homogeneous`]).
    pub fn new(
        ring: &RingSpec,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() {
            return Err(Error::AmbientMismatch(format!(
                "matrix has {} rows but target has rank {}",
                entries.len(),
                target.rank()
            )));
        }
        for row in &entries {
            if row.len() != source.rank() {
                return Err(Error::AmbientMismatch(format!(
                    "matrix row has {} entries but source has rank {}",
                    row.len(),
                    source.rank()
                )));
            }
            if let Some(p) = row.iter().find(|p| p.nvars() != ring.r()) {
                return Err(Error::RingMismatch(format!(
                    "entry in {} variables, ring has {}",
                    p.nvars(),
                    ring.r()
                )));
            }
        }
        Ok(GradedMatrix { source, target, nvars: ring.r(), entries })
    }

    pub fn zero(ring: &RingSpec, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let entries = vec![vec![ring.zero(); source.rank()]; target.rank()];
        GradedMatrix { source, target, nvars: ring.r(), entries }
    }

    pub fn from_columns(
        ring: &RingSpec,
        source: GradedFreeModule,
        target: GradedFreeModule,
        columns: &[ModuleElement],
    ) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::AmbientMismatch(format!(
                "{} columns for a source of rank {}",
                columns.len(),
                source.rank()
            )));
        }
        let mut m = Self::zero(ring, source, target);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != m.target.rank() {
                return Err(Error::AmbientMismatch("column length differs from target rank".into()));
            }
            for (i, p) in col.coords.iter().enumerate() {
                m.entries[i][j] = p.clone();
            }
        }
        Ok(m)
    }

    /// Columns of homogeneous elements, with source degrees read off the
    /// columns. Zero columns are given degree `fallback`.
    pub fn from_homogeneous_columns(
        ring: &RingSpec,
        target: GradedFreeModule,
        columns: &[ModuleElement],
    ) -> Result<Self> {
        let mut degrees = Vec::with_capacity(columns.len());
        for c in columns {
            match c.homogeneity(ring, &target) {
                Homogeneity::Degree(q) => degrees.push(q),
                Homogeneity::Zero => {
                    return Err(Error::Inhomogeneous("zero column has no degree".into()))
                }
                Homogeneity::Inhomogeneous => {
                    return Err(Error::Inhomogeneous("column is not homogeneous".into()))
                }
            }
        }
        Self::from_columns(ring, GradedFreeModule::new(degrees), target, columns)
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> ModuleElement {
        ModuleElement::new(self.entries.iter().map(|row| row[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<ModuleElement> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// Entry `(i, j)` must be zero or homogeneous of degree
    /// `source(j) - target(i)`.
    pub fn check_homogeneous(&self, ring: &RingSpec) -> bool {
        self.first_inhomogeneous_entry(ring).is_none()
    }

    pub fn first_inhomogeneous_entry(&self, ring: &RingSpec) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let want = self.source.degree(j) - self.target.degree(i);
                if p.homogeneous_degree(ring.var_degree()) != Some(want) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn require_homogeneous(&self, ring: &RingSpec) -> Result<()> {
        match self.first_inhomogeneous_entry(ring) {
            None => Ok(()),
            Some((i, j)) => Err(Error::Inhomogeneous(format!(
                "entry ({i}, {j}) = {} should have degree {}",
                self.entries[i][j].display(ring),
                self.source.degree(j) - self.target.degree(i)
            ))),
        }
    }

    /// Dual map `target* -> source*`.
    pub fn transpose(&self) -> GradedMatrix {
        let entries = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        GradedMatrix {
            source: self.target.dual(),
            target: self.source.dual(),
            nvars: self.nvars,
            entries,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if other.target != self.source {
            return Err(Error::AmbientMismatch("composition of incompatible maps".into()));
        }
        let mut entries = vec![vec![Polynomial::zero(self.nvars); other.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.cols() {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                *slot = acc;
            }
        }
        Ok(GradedMatrix {
            source: other.source.clone(),
            target: self.target.clone(),
            nvars: self.nvars,
            entries,
        })
    }

    pub fn apply(&self, v: &ModuleElement) -> ModuleElement {
        debug_assert_eq!(v.len(), self.cols());
        let coords = (0..self.rows())
            .map(|i| {
                let mut acc = Polynomial::zero(self.nvars);
                for (a, b) in self.entries[i].iter().zip(&v.coords) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        ModuleElement::new(coords)
    }

    /// `[self | other]`, both with the same target.
    pub fn hstack(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.target != other.target {
            return Err(Error::AmbientMismatch("hstack of maps with different targets".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(GradedMatrix {
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            nvars: self.nvars,
            entries,
        })
    }

    /// Block-diagonal sum.
    pub fn block_diagonal(&self, other: &GradedMatrix) -> GradedMatrix {
        let mut entries = Vec::with_capacity(self.rows() + other.rows());
        for row in &self.entries {
            let mut r = row.clone();
            r.extend(std::iter::repeat_n(Polynomial::zero(self.nvars), other.cols()));
            entries.push(r);
        }
        for row in &other.entries {
            let mut r = vec![Polynomial::zero(self.nvars); self.cols()];
            r.extend(row.iter().cloned());
            entries.push(r);
        }
        GradedMatrix {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            nvars: self.nvars,
            entries,
        }
    }

    /// Keep the given rows (in order); the target shrinks accordingly.
    pub fn select_rows(&self, rows: &[usize]) -> GradedMatrix {
        GradedMatrix {
            source: self.source.clone(),
            target: GradedFreeModule::new(rows.iter().map(|&i| self.target.degree(i)).collect()),
            nvars: self.nvars,
            entries: rows.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Keep the given columns (in order); the source shrinks accordingly.
    pub fn select_columns(&self, cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            source: GradedFreeModule::new(cols.iter().map(|&j| self.source.degree(j)).collect()),
            target: self.target.clone(),
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
                .collect(),
        }
    }

    pub fn shifted(&self, l: i64) -> GradedMatrix {
        GradedMatrix {
            source: self.source.shifted(l),
            target: self.target.shifted(l),
            nvars: self.nvars,
            entries: self.entries.clone(),
        }
    }

    pub(crate) fn entries_mut(&mut self) -> &mut Vec<Vec<Polynomial>> {
        &mut self.entries
    }
}

/// `M = coker(relations: F1 -> F0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModulePresentation {
    ring: RingSpec,
    relations: GradedMatrix,
}

impl ModulePresentation {
    pub fn new(ring: RingSpec, relations: GradedMatrix) -> Result<Self> {
        if relations.nvars() != ring.r() {
            return Err(Error::RingMismatch("relation matrix over a different ring".into()));
        }
        relations.require_homogeneous(&ring)?;
        Ok(ModulePresentation { ring, relations })
    }

    /// Convenience constructor from generator degrees and relation columns.
    pub fn from_parts(
        ring: RingSpec,
        gens: Vec<i64>,
        rel_gens: Vec<i64>,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let rel = GradedMatrix::new(&ring, GradedFreeModule::new(rel_gens), GradedFreeModule::new(gens), rows)?;
        Self::new(ring, rel)
    }

    /// The zero module, in canonical form (no generators, no relations).
    pub fn zero(ring: &RingSpec) -> Self {
        let rel = GradedMatrix::zero(ring, GradedFreeModule::zero(), GradedFreeModule::zero());
        ModulePresentation { ring: ring.clone(), relations: rel }
    }

    /// Free module `R[l_1] ⊕ .. ⊕ R[l_k]`.
    pub fn free(ring: &RingSpec, degrees: Vec<i64>) -> Self {
        let rel = GradedMatrix::zero(ring, GradedFreeModule::zero(), GradedFreeModule::new(degrees));
        ModulePresentation { ring: ring.clone(), relations: rel }
    }

    /// `k[l] = R/m [l]`, concentrated in degree `l`.
    pub fn residue_field(ring: &RingSpec, l: i64) -> Self {
        let r = ring.r();
        let rows = vec![(0..r).map(|i| ring.var(i)).collect()];
        Self::from_parts(ring.clone(), vec![l], vec![l + ring.var_degree(); r], rows).expect("homogeneous")
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn generators(&self) -> &GradedFreeModule {
        self.relations.target()
    }

    pub fn relation_generators(&self) -> &GradedFreeModule {
        self.relations.source()
    }

    pub fn relations(&self) -> &GradedMatrix {
        &self.relations
    }

    /// True for the canonical zero presentation only; a presentation whose
    /// relations kill every generator is not detected here.
    pub fn is_trivially_zero(&self) -> bool {
        self.generators().rank() == 0
    }

    pub fn is_trivially_free(&self) -> bool {
        self.relations.is_zero()
    }

    /// `M[l]`: every generator and relation degree raised by `l`.
    pub fn shift(&self, l: i64) -> Self {
        ModulePresentation { ring: self.ring.clone(), relations: self.relations.shifted(l) }
    }

    /// Block-diagonal presentation of the direct sum.
    pub fn direct_sum(summands: &[ModulePresentation]) -> Result<Self> {
        let Some(first) = summands.first() else {
            return Err(Error::Inconsistent("direct sum of no summands needs a ring".into()));
        };
        let mut rel = first.relations.clone();
        for s in &summands[1..] {
            first.ring.check_same(&s.ring)?;
            rel = rel.block_diagonal(&s.relations);
        }
        Ok(ModulePresentation { ring: first.ring.clone(), relations: rel })
    }

    /// Direct sum that tolerates an empty list by returning the zero module.
    pub fn direct_sum_in(ring: &RingSpec, summands: &[ModulePresentation]) -> Result<Self> {
        if summands.is_empty() {
            Ok(Self::zero(ring))
        } else {
            Self::direct_sum(summands)
        }
    }

    /// `M^n`.
    pub fn power(&self, n: usize) -> Self {
        if n == 0 {
            return Self::zero(&self.ring);
        }
        Self::direct_sum(&vec![self.clone(); n]).expect("same ring")
    }
}
