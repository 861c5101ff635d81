//! Degreewise brute-force linear algebra, independent of the Gröbner
//! engine.
//!
//! In degree `q` a graded free module has the finite monomial basis
//! `{m e_i : deg e_i + d|m| = q}` and a graded matrix becomes a rational
//! matrix. Dimensions of cokernels, kernels and homology follow from exact
//! sparse ranks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modfree::{GradedFreeModule, GradedMatrix, ModuleElement, ModulePresentation};
use crate::par::Execution;
use crate::ring::{Monomial, Rational, RingSpec};

pub const WINDOW_ENV: &str = "SYZAL_ORACLE_WINDOW";

pub type SparseVec = BTreeMap<usize, Rational>;

/// Rank of a family of sparse vectors by incremental row echelon form.
pub fn sparse_rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut pivots: HashMap<usize, SparseVec> = HashMap::new();
    for mut v in vectors {
        while let Some((&col, c)) = v.iter().next() {
            match pivots.get(&col) {
                Some(p) => {
                    let c = c.clone();
                    for (k, x) in p {
                        let e = v.entry(*k).or_insert_with(Rational::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = c.recip();
                    if !inv.is_one() {
                        for x in v.values_mut() {
                            *x *= &inv;
                        }
                    }
                    pivots.insert(col, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Monomial basis of one graded piece of a free module.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl DegreePiece {
    pub fn new(ring: &RingSpec, module: &GradedFreeModule, q: i64) -> Self {
        let mut basis = Vec::new();
        for (i, &g) in module.degrees().iter().enumerate() {
            for m in monomials_in_degree(ring, q - g) {
                basis.push((i, m));
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        DegreePiece { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, Monomial)] {
        &self.basis
    }

    /// Coordinates of a homogeneous element of this degree.
    pub fn coordinates(&self, v: &ModuleElement) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, p) in v.coords.iter().enumerate() {
            for (m, c) in p.terms() {
                let k = self.index[&(i, m.clone())];
                out.insert(k, c.clone());
            }
        }
        out
    }
}

/// Monomials of ring degree `e` (empty unless `d | e` and `e >= 0`).
pub fn monomials_in_degree(ring: &RingSpec, e: i64) -> Vec<Monomial> {
    let d = ring.var_degree();
    if e < 0 || e % d != 0 {
        return Vec::new();
    }
    let n = (e / d) as u32;
    if ring.r() == 0 {
        return if n == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    ring.monomials_of_total(n)
}

/// Images of the degree-`q` basis of `a.source` under `a`.
fn image_vectors(ring: &RingSpec, a: &GradedMatrix, q: i64, target: &DegreePiece) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for (j, &h) in a.source().degrees().iter().enumerate() {
        let col = a.column(j);
        if col.is_zero() {
            continue;
        }
        for mu in monomials_in_degree(ring, q - h) {
            let mut v = SparseVec::new();
            for (i, p) in col.coords.iter().enumerate() {
                for (m, c) in p.terms() {
                    v.insert(target.index[&(i, m.mul(&mu))], c.clone());
                }
            }
            out.push(v);
        }
    }
    out
}

/// Rank of the degree-`q` component of `a`.
pub fn rank_in_degree(ring: &RingSpec, a: &GradedMatrix, q: i64) -> usize {
    let target = DegreePiece::new(ring, a.target(), q);
    sparse_rank(image_vectors(ring, a, q, &target))
}

/// Which comparisons an oracle run performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OracleCheck {
    Hilbert,
    Kernel,
    ExtDims,
}

impl std::str::FromStr for OracleCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hilbert" => Ok(OracleCheck::Hilbert),
            "kernel" => Ok(OracleCheck::Kernel),
            "ext-dims" | "ext" => Ok(OracleCheck::ExtDims),
            _ => Err(Error::Format(format!("unknown oracle check {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    low: i64,
    high: i64,
    pub checks: BTreeSet<OracleCheck>,
    pub execution: Execution,
}

impl OracleConfig {
    /// Window `[low, high]`; must be at least one variable degree wide.
    pub fn new(ring: &RingSpec, low: i64, high: i64) -> Result<Self> {
        if high < low || high - low < ring.var_degree() {
            return Err(Error::Format(format!(
                "oracle window [{low}, {high}] must have width at least {}",
                ring.var_degree()
            )));
        }
        Ok(OracleConfig {
            low,
            high,
            checks: [OracleCheck::Hilbert, OracleCheck::Kernel, OracleCheck::ExtDims].into(),
            execution: Execution::default(),
        })
    }

    /// Default window for `m`: from the lowest generator degree up by
    /// `max(3d, 2 * (highest relation degree - lowest generator degree))`.
    pub fn default_for(m: &ModulePresentation) -> Self {
        let (low, high) = default_window(m);
        Self::new(m.ring(), low, high).expect("default window is wide enough")
    }

    /// Default window, unless `SYZAL_ORACLE_WINDOW=low,high` overrides it.
    pub fn from_env(m: &ModulePresentation) -> Result<Self> {
        match std::env::var(WINDOW_ENV) {
            Ok(s) => {
                let (low, high) = parse_window(&s)?;
                Self::new(m.ring(), low, high)
            }
            Err(_) => Ok(Self::default_for(m)),
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.low, self.high)
    }

    pub fn degrees(&self) -> Vec<i64> {
        (self.low..=self.high).collect()
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

pub fn default_window(m: &ModulePresentation) -> (i64, i64) {
    let d = m.ring().var_degree();
    let Some(low) = m.generators().min_degree() else {
        return (0, 3 * d);
    };
    let top = m.relation_generators().max_degree().unwrap_or(low);
    (low, low + (3 * d).max(2 * (top - low)))
}

/// `"low,high"` (a colon also works as separator).
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Format(format!("oracle window must look like LOW,HIGH; got {s:?}"));
    let (a, b) = s.split_once([',', ':']).ok_or_else(bad)?;
    let low = a.trim().parse().map_err(|_| bad())?;
    let high = b.trim().parse().map_err(|_| bad())?;
    Ok((low, high))
}

/// `dim_k M_q` for every `q` in the window.
pub fn oracle_dims(m: &ModulePresentation, cfg: &OracleConfig) -> BTreeMap<i64, usize> {
    let ring = m.ring();
    let rows = cfg.execution.map(cfg.degrees(), |q| {
        let f0 = DegreePiece::new(ring, m.generators(), q);
        let rank = sparse_rank(image_vectors(ring, m.relations(), q, &f0));
        (q, f0.dim() - rank)
    });
    rows.into_iter().collect()
}

/// Homology dimensions of `P --a--> F --b--> Q` at `F`, degree by degree.
/// Either map may be absent (treated as zero).
pub fn homology_dims(
    ring: &RingSpec,
    middle: &GradedFreeModule,
    a: Option<&GradedMatrix>,
    b: Option<&GradedMatrix>,
    cfg: &OracleConfig,
) -> BTreeMap<i64, usize> {
    let rows = cfg.execution.map(cfg.degrees(), |q| {
        let f = DegreePiece::new(ring, middle, q).dim();
        let ra = a.map_or(0, |a| rank_in_degree(ring, a, q));
        let rb = b.map_or(0, |b| rank_in_degree(ring, b, q));
        (q, f - ra - rb)
    });
    rows.into_iter().collect()
}

/// Soundness and completeness of `gens` as generators of `ker(a)` in every
/// degree of the window. Returns a description of the first failure.
pub fn check_kernel(
    ring: &RingSpec,
    a: &GradedMatrix,
    gens: &[ModuleElement],
    cfg: &OracleConfig,
) -> std::result::Result<(), String> {
    for (k, v) in gens.iter().enumerate() {
        if !a.apply(v).is_zero() {
            return Err(format!("kernel generator {k} does not map to zero"));
        }
    }
    let source = a.source();
    let gen_degrees: Vec<Option<i64>> = gens
        .iter()
        .map(|v| match v.homogeneity(ring, source) {
            crate::modfree::Homogeneity::Degree(q) => Some(q),
            _ => None,
        })
        .collect();
    let results = cfg.execution.map(cfg.degrees(), |q| {
        let piece = DegreePiece::new(ring, source, q);
        let nullity = piece.dim() - rank_in_degree(ring, a, q);
        let mut span = Vec::new();
        for (v, g) in gens.iter().zip(&gen_degrees) {
            let Some(g) = g else { continue };
            for mu in monomials_in_degree(ring, q - g) {
                let p = crate::ring::Polynomial::monomial(mu, Rational::one());
                span.push(piece.coordinates(&v.scale(&p)));
            }
        }
        let got = sparse_rank(span);
        (q, got, nullity)
    });
    for (q, got, nullity) in results {
        if got != nullity {
            return Err(format!("degree {q}: generators span {got} dimensions, kernel has {nullity}"));
        }
    }
    Ok(())
}
