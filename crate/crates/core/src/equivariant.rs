//! Torus-equivariant fixtures as graded modules over `R = Q[t1..tr]`
//! (variables in degree 2), GKM graphs, and Atiyah–Bredon reports computed
//! as `H^j(AB) = Ext^j(H^T_*, R)`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner;
use crate::homalg::{self, HilbertSeries, ModuleFingerprint};
use crate::modfree::{GradedFreeModule, GradedMatrix, ModuleElement, ModulePresentation};
use crate::oracle;
use crate::par::Execution;
use crate::resolution::{koszul_syzygy, maximal_ideal};
use crate::ring::{Monomial, Polynomial, Rational, RingSpec};

fn check_rank(r: usize) -> Result<()> {
    if r < 1 {
        return Err(Error::OutOfRange { what: "torus rank", value: r as i64 });
    }
    Ok(())
}

/// `∏_{i ∉ I} t_i` for a subset given as a bitmask.
fn complement_product(ring: &RingSpec, mask: u32) -> Polynomial {
    let r = ring.r();
    let exps: Vec<u16> = (0..r).map(|i| u16::from(mask & (1 << i) == 0)).collect();
    Polynomial::monomial(Monomial::from_exponents(&exps), Rational::from_integer(1.into()))
}

/// The relation `V = Σ_I (-1)^{r-|I|} (∏_{i∉I} t_i) u_I`, the expansion of
/// `∏ (u_i - t_i)` under `u_i^2 = t_i u_i`. Coordinates are indexed by
/// bitmask.
pub fn toric_v(ring: &RingSpec) -> ModuleElement {
    let r = ring.r();
    let coords = (0u32..(1 << r))
        .map(|mask| {
            let p = complement_product(ring, mask);
            if (r - mask.count_ones() as usize).is_multiple_of(2) {
                p
            } else {
                -p
            }
        })
        .collect();
    ModuleElement::new(coords)
}

/// `H_T^*(X)` for the toric fixture: the free module on `u_I` (`I ⊆ [r]`,
/// degree `2|I|`, bitmask order) modulo `U = u_{[r]}` and `V`.
pub fn toric_ht(r: usize) -> Result<ModulePresentation> {
    check_rank(r)?;
    let ring = RingSpec::equivariant(r);
    let n = 1usize << r;
    let gens = GradedFreeModule::new((0..n as u32).map(|m| 2 * m.count_ones() as i64).collect());
    let u = ModuleElement::unit(&ring, n, n - 1, ring.one());
    let v = toric_v(&ring);
    let rel = GradedMatrix::from_homogeneous_columns(&ring, gens, &[u, v])?;
    ModulePresentation::new(ring, rel)
}

/// `H^T_*(X) = ⊕_{i=0}^{r-2} R[-2i]^{C(r,i)} ⊕ K_2[-2(r-2)] ⊕ k[1-2r]`.
pub fn toric_hht(r: usize) -> Result<ModulePresentation> {
    check_rank(r)?;
    let ring = RingSpec::equivariant(r);
    let mut parts = Vec::new();
    for i in 0..r.saturating_sub(1) {
        let c = num_integer::binomial(r, i);
        parts.push(ModulePresentation::free(&ring, vec![-2 * i as i64; c]));
    }
    parts.push(koszul_syzygy(&ring, 2)?.shift(-2 * (r as i64 - 2)));
    parts.push(ModulePresentation::residue_field(&ring, 1 - 2 * r as i64));
    ModulePresentation::direct_sum(&parts)
}

fn mutant_ring() -> RingSpec {
    RingSpec::equivariant(3)
}

/// `R ⊕ m[1] ⊕ R[6] ⊕ R[7]` over three variables.
pub fn mutant_ht() -> ModulePresentation {
    let ring = mutant_ring();
    ModulePresentation::direct_sum(&[
        ModulePresentation::free(&ring, vec![0]),
        maximal_ideal(&ring).shift(1),
        ModulePresentation::free(&ring, vec![6, 7]),
    ])
    .expect("same ring")
}

/// `R ⊕ R[-1] ⊕ m[-6] ⊕ R[-7]` over three variables.
pub fn mutant_hht() -> ModulePresentation {
    let ring = mutant_ring();
    ModulePresentation::direct_sum(&[
        ModulePresentation::free(&ring, vec![0, -1]),
        maximal_ideal(&ring).shift(-6),
        ModulePresentation::free(&ring, vec![-7]),
    ])
    .expect("same ring")
}

/// `(R', R'[-i])` with `R' = R / (t_{r-i+1}, .., t_r)`.
pub fn homogeneous_space(r: usize, i: usize) -> Result<(ModulePresentation, ModulePresentation)> {
    if i > r {
        return Err(Error::OutOfRange { what: "isotropy rank", value: i as i64 });
    }
    let ring = RingSpec::equivariant(r);
    let row: Vec<Polynomial> = (r - i..r).map(|k| ring.var(k)).collect();
    let ht = ModulePresentation::from_parts(ring.clone(), vec![0], vec![ring.var_degree(); i], vec![row])?;
    let hht = ht.shift(-(i as i64));
    Ok((ht, hht))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Polynomial,
}

/// Vertices (fixed points) and weighted edges (invariant 2-spheres).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    ring: RingSpec,
    vertices: Vec<String>,
    edges: Vec<GkmEdge>,
}

impl GkmGraph {
    pub fn new(ring: &RingSpec) -> Self {
        GkmGraph { ring: ring.clone(), vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GkmEdge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index(name).is_some() {
            return Err(Error::Format(format!("duplicate vertex {name:?}")));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    /// Adds an edge; the weight must be a nonzero linear form and is stored
    /// with its first nonzero coefficient positive.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: Polynomial) -> Result<()> {
        let n = self.vertices.len();
        if u >= n || v >= n {
            return Err(Error::Format(format!("edge ({u}, {v}) refers to a missing vertex")));
        }
        if u == v {
            return Err(Error::Format("GKM edges join distinct vertices".into()));
        }
        if weight.nvars() != self.ring.r() {
            return Err(Error::RingMismatch("edge weight over a different ring".into()));
        }
        if weight.is_zero() {
            return Err(Error::Inconsistent("zero edge weight".into()));
        }
        if weight.terms().any(|(m, _)| m.total() != 1) {
            return Err(Error::Inhomogeneous("edge weights must be linear forms".into()));
        }
        let first = (0..self.ring.r())
            .map(|i| weight.coefficient(&Monomial::var(self.ring.r(), i)))
            .find(|c| !c.is_zero())
            .expect("nonzero weight");
        let weight = if first.is_negative() { -weight } else { weight };
        self.edges.push(GkmEdge { u, v, weight });
        Ok(())
    }

    /// Moment graph of `(CP^1)^r`: vertices are bit strings, edges flip bit
    /// `i` with weight `t_{i+1}`.
    pub fn hypercube(r: usize) -> Self {
        let ring = RingSpec::equivariant(r);
        let mut g = GkmGraph::new(&ring);
        for mask in 0..(1usize << r) {
            let name: String = (0..r).map(|i| if mask & (1 << i) != 0 { '1' } else { '0' }).collect();
            let name = if r == 0 { "pt".to_string() } else { name };
            g.add_vertex(&name).expect("distinct names");
        }
        for mask in 0..(1usize << r) {
            for i in 0..r {
                if mask & (1 << i) == 0 {
                    g.add_edge(mask, mask | (1 << i), ring.var(i)).expect("valid edge");
                }
            }
        }
        g
    }

    /// Text format: `vertex <name>` and `edge <u> <v> <linear form>` lines;
    /// `#` starts a comment.
    pub fn parse(ring: &RingSpec, text: &str) -> Result<Self> {
        let mut g = GkmGraph::new(ring);
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let here = offset;
            offset += line.len();
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { offset: here, message };
            let mut parts = content.splitn(2, char::is_whitespace);
            let kw = parts.next().unwrap_or("");
            let rest = parts.next().unwrap_or("").trim();
            match kw {
                "vertex" => {
                    if rest.is_empty() || rest.contains(char::is_whitespace) {
                        return Err(err(format!("bad vertex line {content:?}")));
                    }
                    g.add_vertex(rest).map_err(|e| err(e.to_string()))?;
                }
                "edge" => {
                    let mut p = rest.splitn(3, char::is_whitespace);
                    let (Some(a), Some(b), Some(w)) = (p.next(), p.next(), p.next()) else {
                        return Err(err(format!("bad edge line {content:?}")));
                    };
                    let u = g.vertex_index(a).ok_or_else(|| err(format!("unknown vertex {a:?}")))?;
                    let v = g.vertex_index(b.trim()).ok_or_else(|| err(format!("unknown vertex {b:?}")))?;
                    let w = ring.parse(w).map_err(|e| err(e.to_string()))?;
                    g.add_edge(u, v, w).map_err(|e| err(e.to_string()))?;
                }
                _ => return Err(err(format!("unknown keyword {kw:?}"))),
            }
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                self.vertices[e.u],
                self.vertices[e.v],
                e.weight.display(&self.ring)
            ));
        }
        out
    }
}

/// `{(f_v) ∈ R^V : f_u ≡ f_v mod α_e for every edge}` as a presented module.
pub fn gkm_module(g: &GkmGraph) -> Result<ModulePresentation> {
    let ring = g.ring();
    let (nv, ne) = (g.vertices.len(), g.edges.len());
    let d = ring.var_degree();
    let mut rows = vec![vec![ring.zero(); nv + ne]; ne];
    for (k, e) in g.edges.iter().enumerate() {
        rows[k][e.u] = ring.one();
        rows[k][e.v] = -ring.one();
        rows[k][nv + k] = -e.weight.clone();
    }
    let mut source = vec![0; nv];
    source.extend(std::iter::repeat_n(d, ne));
    let phi = GradedMatrix::new(ring, GradedFreeModule::new(source), GradedFreeModule::new(vec![0; ne]), rows)?;
    let ker = groebner::kernel(ring, &phi)?;
    let f0 = GradedFreeModule::new(vec![0; nv]);
    let projected: Vec<ModuleElement> = ker.iter().map(|v| ModuleElement::new(v.coords[..nv].to_vec())).collect();
    let gens = groebner::minimal_generators(ring, &f0, &projected, &Default::default())?;
    let z = GradedMatrix::from_homogeneous_columns(ring, f0, &gens)?;
    let rel = groebner::kernel_matrix(ring, &z, Default::default())?;
    ModulePresentation::new(ring.clone(), rel)
}

/// Atiyah–Bredon cohomology `H^j(AB) = Ext^j(H^T_*, R)` for `j = 0..r`,
/// with Hilbert-level augmented positions when `H_T^*` is supplied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbReport {
    pub r: usize,
    /// `positions[j]` is the fingerprint of `H^j(AB)`.
    pub positions: Vec<ModuleFingerprint>,
    pub augmented: Option<Augmented>,
}

/// Augmented positions `-1` and `0` at Hilbert-series level.
///
/// Position `-1` is the kernel of `H_T^* -> H^0(AB)`, the torsion of
/// `H_T^*`; position `0` is the cokernel of that map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Augmented {
    pub minus_one: HilbertSeries,
    pub zero: HilbertSeries,
    pub syzygy_order: usize,
}

impl AbReport {
    /// Hilbert series at augmented position `i` (`-1 <= i <= r`); without
    /// `H_T^*` positions `-1` and `0` are unknown.
    pub fn augmented_series(&self, i: i64) -> Option<HilbertSeries> {
        match (i, &self.augmented) {
            (-1, Some(a)) => Some(a.minus_one.clone()),
            (0, Some(a)) => Some(a.zero.clone()),
            (-1 | 0, None) => None,
            (i, _) if i >= 1 && i as usize <= self.r => Some(self.positions[i as usize].hilbert.clone()),
            _ => None,
        }
    }

    /// Augmented positions with nonzero cohomology.
    pub fn nonzero_positions(&self) -> Option<Vec<i64>> {
        self.augmented.as_ref()?;
        Some((-1..=self.r as i64).filter(|&i| !self.augmented_series(i).unwrap().is_zero()).collect())
    }

    /// Largest `i` such that positions `-1..=i` all vanish (`-2` if `-1`
    /// does not, `r` if everything vanishes).
    pub fn exact_through(&self) -> Option<i64> {
        let nz = self.nonzero_positions()?;
        Some(nz.first().map_or(self.r as i64, |&first| first - 1))
    }

    /// Exactness predicted from the syzygy order of `H_T^*`: positions up
    /// to `order - 2` vanish, and everything vanishes for free modules.
    pub fn predicted_exact_through(&self) -> Option<i64> {
        let a = self.augmented.as_ref()?;
        Some(if a.syzygy_order < self.r { a.syzygy_order as i64 - 2 } else { self.r as i64 })
    }

    /// Nonzero positions are never confined to two adjacent slots.
    pub fn two_adjacent_ok(&self) -> Option<bool> {
        let nz = self.nonzero_positions()?;
        Some(match (nz.first(), nz.last()) {
            (Some(lo), Some(hi)) => hi - lo >= 2,
            _ => true,
        })
    }

    /// Failed coherence checks, empty when all hold.
    pub fn coherence_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let (Some(e), Some(p)) = (self.exact_through(), self.predicted_exact_through()) {
            if e != p {
                out.push(format!("exact through {e} but syzygy order predicts {p}"));
            }
        }
        if self.two_adjacent_ok() == Some(false) {
            out.push(format!(
                "nonzero positions {:?} fit in two adjacent slots",
                self.nonzero_positions().unwrap_or_default()
            ));
        }
        out
    }
}

/// Build the report; `ht` enables the augmented positions.
pub fn ab_report(hht: &ModulePresentation, ht: Option<&ModulePresentation>) -> Result<AbReport> {
    ab_report_with(hht, ht, Execution::default())
}

pub fn ab_report_with(hht: &ModulePresentation, ht: Option<&ModulePresentation>, exec: Execution) -> Result<AbReport> {
    let ring = hht.ring();
    let r = ring.r();
    let exts = homalg::ext_all_with(hht, exec)?;
    let positions = exec.map(exts.clone(), |e| homalg::fingerprint(&e)).into_iter().collect::<Result<Vec<_>>>()?;
    let augmented = match ht {
        None => None,
        Some(ht) => {
            ring.check_same(ht.ring())?;
            let syzygy_order = homalg::syzygy_order(ht)?;
            let torsion = homalg::torsion(ht)?;
            let minus_one = homalg::hilbert_series(&torsion)?;
            let image = homalg::hilbert_series(ht)?.sub(&minus_one);
            let zero = positions[0].hilbert.sub(&image);
            let (lo0, hi0) = oracle::default_window(&exts[0]);
            let (lo1, hi1) = oracle::default_window(ht);
            for q in lo0.min(lo1)..=hi0.max(hi1) {
                if zero.coefficient(q) < 0 {
                    return Err(Error::Inconsistent(format!(
                        "H_T^* does not embed in H^0(AB): negative dimension in degree {q}"
                    )));
                }
            }
            Some(Augmented { minus_one, zero, syzygy_order })
        }
    };
    Ok(AbReport { r, positions, augmented })
}

/// A pair of fixtures with a report specification.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub ht: ModulePresentation,
    pub hht: ModulePresentation,
    /// Whether `H_T^*` is free (equivariantly formal).
    pub free: bool,
}

/// Every built-in fixture used by the coherence checks.
pub fn fixtures() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for r in 1..=3 {
        out.push(Fixture { name: format!("toric r={r}"), ht: toric_ht(r)?, hht: toric_hht(r)?, free: false });
    }
    out.push(Fixture { name: "mutant".into(), ht: mutant_ht(), hht: mutant_hht(), free: false });
    for r in 2..=3 {
        for i in 0..=r {
            let (ht, hht) = homogeneous_space(r, i)?;
            out.push(Fixture { name: format!("homogeneous r={r} i={i}"), ht, hht, free: i == 0 });
        }
    }
    for r in 1..=3 {
        let ht = gkm_module(&GkmGraph::hypercube(r))?;
        let hht = ht.shift(-(2 * r as i64));
        out.push(Fixture { name: format!("(CP^1)^{r}"), ht, hht, free: true });
    }
    Ok(out)
}
