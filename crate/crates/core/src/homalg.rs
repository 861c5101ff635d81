//! Homological invariants of finitely presented graded modules: Hilbert
//! series, `Hom(M, R)`, `Ext^j(M, R)`, depth and dimension, torsion,
//! biduality and syzygy order, and the (Hilbert series, Betti table)
//! fingerprint used to compare modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{self, ModuleOrder};
use crate::modfree::{GradedFreeModule, GradedMatrix, ModuleElement, ModulePresentation};
use crate::par::Execution;
use crate::resolution::{self, BettiTable, FreeResolution};
use crate::ring::RingSpec;

/// `numerator(x) / (1 - x^d)^r` with a Laurent polynomial numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    numerator: BTreeMap<i64, i64>,
    denom_pow: usize,
    var_degree: u32,
}

impl HilbertSeries {
    pub fn zero(r: usize, d: u32) -> Self {
        HilbertSeries { numerator: BTreeMap::new(), denom_pow: r, var_degree: d }
    }

    pub fn from_numerator(r: usize, d: u32, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut hs = Self::zero(r, d);
        for (e, c) in terms {
            hs.add_term(e, c);
        }
        hs
    }

    /// Series of `R[l_1] ⊕ .. ⊕ R[l_k]`: numerator `Σ x^{l_i}`.
    pub fn of_free(ring: &RingSpec, f: &GradedFreeModule) -> Self {
        Self::from_numerator(ring.r(), ring.d(), f.degrees().iter().map(|&g| (g, 1)))
    }

    /// Series of `k[l]`: `x^l (1 - x^d)^r` over `(1 - x^d)^r`.
    pub fn of_residue_field(ring: &RingSpec, l: i64) -> Self {
        let (r, d) = (ring.r(), ring.var_degree());
        Self::from_numerator(
            r,
            ring.d(),
            (0..=r).map(|i| {
                let c = num_integer::binomial(r as i64, i as i64);
                (l + d * i as i64, if i % 2 == 0 { c } else { -c })
            }),
        )
    }

    fn add_term(&mut self, e: i64, c: i64) {
        let v = self.numerator.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.numerator.remove(&e);
        }
    }

    pub fn numerator(&self) -> &BTreeMap<i64, i64> {
        &self.numerator
    }

    pub fn denom_pow(&self) -> usize {
        self.denom_pow
    }

    pub fn var_degree(&self) -> u32 {
        self.var_degree
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            (self.denom_pow, self.var_degree),
            (other.denom_pow, other.var_degree),
            "Hilbert series over different rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (&e, &c) in &other.numerator {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(&e, &c)| (e, -c)).collect(),
            ..self.clone()
        }
    }

    /// Series of `M[l]`: multiply by `x^l`.
    pub fn shift(&self, l: i64) -> Self {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(&e, &c)| (e + l, c)).collect(),
            ..self.clone()
        }
    }

    /// Coefficient of `x^q` in the power series expansion.
    pub fn coefficient(&self, q: i64) -> i64 {
        let d = self.var_degree as i64;
        let r = self.denom_pow as i64;
        self.numerator
            .iter()
            .filter(|(&e, _)| e <= q && (q - e) % d == 0)
            .map(|(&e, &c)| {
                let n = (q - e) / d;
                let ways = if r == 0 {
                    i64::from(n == 0)
                } else {
                    num_integer::binomial(n + r - 1, r - 1)
                };
                c * ways
            })
            .sum()
    }

    pub fn coefficients(&self, low: i64, high: i64) -> BTreeMap<i64, i64> {
        (low..=high).map(|q| (q, self.coefficient(q))).collect()
    }

    /// Lowest degree with a nonzero coefficient in the numerator.
    pub fn min_exponent(&self) -> Option<i64> {
        self.numerator.keys().next().copied()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        for (k, (&e, &c)) in self.numerator.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    num.push('-');
                }
            } else {
                num.push_str(&format!(" {sign} "));
            }
            let a = c.abs();
            let x = match e {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{e}"),
            };
            match (a, x.is_empty()) {
                (_, true) => num.push_str(&a.to_string()),
                (1, false) => num.push_str(&x),
                _ => num.push_str(&format!("{a}{x}")),
            }
        }
        if num.is_empty() {
            num.push('0');
        }
        if self.denom_pow == 0 || self.is_zero() {
            return write!(f, "{num}");
        }
        let base = if self.var_degree == 1 { "1-x".to_string() } else { format!("1-x^{}", self.var_degree) };
        let den = if self.denom_pow == 1 { format!("({base})") } else { format!("({base})^{}", self.denom_pow) };
        if self.numerator.len() == 1 {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "({num})/{den}")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HilbertJson {
    numerator: Vec<[i64; 2]>,
    denom_pow: usize,
    var_degree: u32,
}

impl Serialize for HilbertSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HilbertJson {
            numerator: self.numerator.iter().map(|(&e, &c)| [e, c]).collect(),
            denom_pow: self.denom_pow,
            var_degree: self.var_degree,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HilbertSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = HilbertJson::deserialize(d)?;
        if j.var_degree == 0 {
            return Err(serde::de::Error::custom("var_degree must be positive"));
        }
        Ok(HilbertSeries::from_numerator(j.denom_pow, j.var_degree, j.numerator.into_iter().map(|[e, c]| (e, c))))
    }
}

/// Hilbert series plus minimal graded Betti table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleFingerprint {
    pub hilbert: HilbertSeries,
    pub betti: BettiTable,
}

impl ModuleFingerprint {
    pub fn is_zero(&self) -> bool {
        self.hilbert.is_zero()
    }

    pub fn shift(&self, l: i64) -> Self {
        ModuleFingerprint { hilbert: self.hilbert.shift(l), betti: self.betti.shifted(l) }
    }

    /// Short name when the fingerprint is that of `0`, a free module or
    /// `k[l]`.
    pub fn label(&self) -> Option<String> {
        if self.is_zero() && self.betti.is_empty() {
            return Some("0".into());
        }
        if self.betti.length() == Some(0) {
            let parts: Vec<String> = self
                .betti
                .entries()
                .map(|(_, j, b)| {
                    let base = if j == 0 { "R".to_string() } else { format!("R[{j}]") };
                    if b == 1 {
                        base
                    } else {
                        format!("{base}^{b}")
                    }
                })
                .collect();
            return Some(parts.join(" ⊕ "));
        }
        let r = self.hilbert.denom_pow;
        let d = self.hilbert.var_degree as i64;
        let l = self.hilbert.min_exponent()?;
        let koszul: Vec<(usize, i64, usize)> =
            (0..=r).map(|i| (i, l + d * i as i64, num_integer::binomial(r, i))).collect();
        let field = HilbertSeries::from_numerator(
            r,
            self.hilbert.var_degree,
            (0..=r).map(|i| {
                let c = num_integer::binomial(r as i64, i as i64);
                (l + d * i as i64, if i % 2 == 0 { c } else { -c })
            }),
        );
        if self.hilbert == field && self.betti.entries().collect::<Vec<_>>() == koszul {
            return Some(if l == 0 { "k".into() } else { format!("k[{l}]") });
        }
        None
    }
}

impl fmt::Display for ModuleFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label() {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "HS = {}, Betti {:?}", self.hilbert, self.betti.triples()),
        }
    }
}

fn max_len(m: &ModulePresentation) -> usize {
    m.ring().r()
}

/// Minimal resolution of length at most `r`.
pub fn minimal_resolution(m: &ModulePresentation) -> Result<FreeResolution> {
    resolution::resolve(m, max_len(m))
}

pub fn hilbert_series(m: &ModulePresentation) -> Result<HilbertSeries> {
    Ok(minimal_resolution(m)?.euler_characteristic())
}

pub fn fingerprint(m: &ModulePresentation) -> Result<ModuleFingerprint> {
    let res = minimal_resolution(m)?;
    Ok(ModuleFingerprint { hilbert: res.euler_characteristic(), betti: res.betti() })
}

pub fn projective_dimension(m: &ModulePresentation) -> Result<usize> {
    Ok(minimal_resolution(m)?.length())
}

/// Presentation with minimal generators and minimal relations.
pub fn minimal_presentation(m: &ModulePresentation) -> Result<ModulePresentation> {
    let ring = m.ring();
    let mut rel = m.relations().clone();
    'outer: loop {
        for b in 0..rel.cols() {
            for a in 0..rel.rows() {
                let e = rel.entry(a, b);
                if !e.is_zero() && e.homogeneous_degree(1) == Some(0) {
                    rel = cancel_generator(&rel, a, b);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let cols = groebner::minimal_generators(ring, rel.target(), &rel.columns(), &ModuleOrder::default())?;
    let rel = GradedMatrix::from_homogeneous_columns(ring, rel.target().clone(), &cols)?;
    ModulePresentation::new(ring.clone(), rel)
}

// Eliminate generator `a` using relation column `b` (unit in row `a`).
fn cancel_generator(rel: &GradedMatrix, a: usize, b: usize) -> GradedMatrix {
    let inv = rel.entry(a, b).constant_term().recip();
    let rows: Vec<usize> = (0..rel.rows()).filter(|&k| k != a).collect();
    let cols: Vec<usize> = (0..rel.cols()).filter(|&j| j != b).collect();
    let mut out = rel.select_rows(&rows).select_columns(&cols);
    let entries = out.entries_mut();
    for (ri, &k) in rows.iter().enumerate() {
        let kb = rel.entry(k, b);
        if kb.is_zero() {
            continue;
        }
        for (ci, &j) in cols.iter().enumerate() {
            let aj = rel.entry(a, j);
            if !aj.is_zero() {
                entries[ri][ci] = &entries[ri][ci] - &(kb * &aj.scale(&inv));
            }
        }
    }
    out
}

/// True iff the module is zero (no minimal generators).
pub fn is_zero_module(m: &ModulePresentation) -> Result<bool> {
    Ok(minimal_presentation(m)?.generators().rank() == 0)
}

/// `(im Z + im B) / im B` for maps `Z: P -> F`, `B: Q -> F`, presented on
/// the generators `P` and minimized.
pub fn subquotient(ring: &RingSpec, z: &GradedMatrix, b: &GradedMatrix) -> Result<ModulePresentation> {
    if z.target() != b.target() {
        return Err(Error::AmbientMismatch("subquotient maps have different targets".into()));
    }
    let p = z.cols();
    let both = z.hstack(b)?;
    let ker = groebner::kernel(ring, &both)?;
    let rels: Vec<ModuleElement> = ker
        .into_iter()
        .map(|v| ModuleElement::new(v.coords[..p].to_vec()))
        .filter(|v| !v.is_zero())
        .collect();
    let rel = GradedMatrix::from_homogeneous_columns(ring, z.source().clone(), &rels)?;
    minimal_presentation(&ModulePresentation::new(ring.clone(), rel)?)
}

/// `Hom(M, R)` together with the embedding of its generators into `F0*`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub presentation: ModulePresentation,
    /// `P -> F0*`, injective on `Hom(M, R)`.
    pub embedding: GradedMatrix,
}

pub fn dual_with_embedding(m: &ModulePresentation) -> Result<Dual> {
    let ring = m.ring();
    let at = m.relations().transpose();
    let z = groebner::kernel_matrix(ring, &at, Default::default())?;
    let rel = groebner::kernel_matrix(ring, &z, Default::default())?;
    Ok(Dual { presentation: ModulePresentation::new(ring.clone(), rel)?, embedding: z })
}

/// `Hom(M, R) = ker(A^T)`.
pub fn dual(m: &ModulePresentation) -> Result<ModulePresentation> {
    Ok(dual_with_embedding(m)?.presentation)
}

fn check_ext_index(m: &ModulePresentation, j: i64) -> Result<usize> {
    if j < 0 || j > m.ring().r() as i64 {
        return Err(Error::OutOfRange { what: "Ext index", value: j });
    }
    Ok(j as usize)
}

/// `Ext^j(M, R)` as the cohomology of the dual of the given resolution.
pub fn ext_from_resolution(res: &FreeResolution, j: usize) -> Result<ModulePresentation> {
    let ring = res.ring();
    if j > res.length() {
        return Ok(ModulePresentation::zero(ring));
    }
    let fj_dual = res.modules()[j].dual();
    let z = match res.map(j + 1) {
        Some(next) => groebner::kernel_matrix(ring, &next.transpose(), Default::default())?,
        None => identity(ring, &fj_dual),
    };
    let b = match res.map(j) {
        Some(prev) => prev.transpose(),
        None => GradedMatrix::zero(ring, GradedFreeModule::zero(), fj_dual),
    };
    subquotient(ring, &z, &b)
}

fn identity(ring: &RingSpec, f: &GradedFreeModule) -> GradedMatrix {
    let n = f.rank();
    let rows = (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    GradedMatrix::new(ring, f.clone(), f.clone(), rows).expect("identity is homogeneous")
}

/// `Ext^j(M, R)` for `0 <= j <= r`.
pub fn ext(m: &ModulePresentation, j: i64) -> Result<ModulePresentation> {
    let j = check_ext_index(m, j)?;
    ext_from_resolution(&minimal_resolution(m)?, j)
}

/// `Ext^j(M, R)` for all `0 <= j <= r`, sharing one resolution.
pub fn ext_all(m: &ModulePresentation) -> Result<Vec<ModulePresentation>> {
    ext_all_with(m, Execution::default())
}

pub fn ext_all_with(m: &ModulePresentation, exec: Execution) -> Result<Vec<ModulePresentation>> {
    let res = minimal_resolution(m)?;
    let js: Vec<usize> = (0..=m.ring().r()).collect();
    exec.map(js, |j| ext_from_resolution(&res, j)).into_iter().collect()
}

/// Indices `j` with `Ext^j(M, R) ≠ 0`.
pub fn nonzero_ext_indices(m: &ModulePresentation) -> Result<Vec<usize>> {
    let exts = ext_all(m)?;
    let mut out = Vec::new();
    for (j, e) in exts.iter().enumerate() {
        if e.generators().rank() > 0 {
            out.push(j);
        }
    }
    Ok(out)
}

/// `(depth, dim)` read off from the vanishing of `Ext^j(M, R)`.
pub fn depth_dim(m: &ModulePresentation) -> Result<(usize, usize)> {
    let r = m.ring().r();
    let nz = nonzero_ext_indices(m)?;
    match (nz.first(), nz.last()) {
        (Some(&lo), Some(&hi)) => Ok((r - hi, r - lo)),
        _ => Err(Error::ZeroModule),
    }
}

pub fn is_cohen_macaulay(m: &ModulePresentation) -> Result<bool> {
    let nz = nonzero_ext_indices(m)?;
    if nz.is_empty() {
        return Err(Error::ZeroModule);
    }
    Ok(nz.len() == 1)
}

/// The natural map `M -> M**`.
#[derive(Clone, Debug)]
pub struct Biduality {
    /// `F0 -> P*`, where `P` generates `M*`; its image lies in `M**`.
    pub map: GradedMatrix,
    /// Generators of `M**` inside `P*`.
    pub double_dual_embedding: GradedMatrix,
    pub double_dual: ModulePresentation,
    /// Kernel of the natural map, which is the torsion submodule.
    pub kernel: ModulePresentation,
    pub cokernel: ModulePresentation,
    pub is_injective: bool,
    pub is_isomorphism: bool,
}

pub fn biduality(m: &ModulePresentation) -> Result<Biduality> {
    let ring = m.ring();
    let d = dual_with_embedding(m)?;
    let map = d.embedding.transpose();
    let dd = dual_with_embedding(&d.presentation)?;
    let kernel = torsion_from(m, &map)?;
    let cokernel = subquotient(ring, &dd.embedding, &map)?;
    let is_injective = kernel.generators().rank() == 0;
    let is_isomorphism = is_injective && cokernel.generators().rank() == 0;
    Ok(Biduality {
        map,
        double_dual_embedding: dd.embedding,
        double_dual: dd.presentation,
        kernel,
        cokernel,
        is_injective,
        is_isomorphism,
    })
}

fn torsion_from(m: &ModulePresentation, map: &GradedMatrix) -> Result<ModulePresentation> {
    let ring = m.ring();
    let k = groebner::kernel_matrix(ring, map, Default::default())?;
    subquotient(ring, &k, m.relations())
}

/// Torsion submodule `T(M)`, the kernel of `M -> M**`.
pub fn torsion(m: &ModulePresentation) -> Result<ModulePresentation> {
    let d = dual_with_embedding(m)?;
    torsion_from(m, &d.embedding.transpose())
}

/// Largest `j <= r` such that `M` is a `j`-th syzygy.
///
/// `j >= 1` iff torsion-free, `j >= 2` iff reflexive, and beyond that
/// `Ext^i(M*, R) = 0` for `1 <= i <= j - 2`. The answer `r` is cross-checked
/// against freeness of the minimal resolution.
pub fn syzygy_order(m: &ModulePresentation) -> Result<usize> {
    let r = m.ring().r();
    let pd = projective_dimension(m)?;
    let order = syzygy_order_by_duality(m)?;
    if (order == r) != (pd == 0) {
        return Err(Error::RouteDisagreement(format!(
            "syzygy order {order} of {r} but projective dimension {pd}"
        )));
    }
    Ok(order)
}

fn syzygy_order_by_duality(m: &ModulePresentation) -> Result<usize> {
    let r = m.ring().r();
    if r == 0 || is_zero_module(m)? {
        return Ok(r);
    }
    let b = biduality(m)?;
    if !b.is_injective {
        return Ok(0);
    }
    if !b.is_isomorphism {
        return Ok(1);
    }
    let dual_res = minimal_resolution(&dual(m)?)?;
    for i in 1..r.saturating_sub(1) {
        if ext_from_resolution(&dual_res, i)?.generators().rank() > 0 {
            return Ok((i + 1).min(r));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, OracleConfig};
    use crate::resolution::{koszul_syzygy, maximal_ideal};

    fn ring(r: usize) -> RingSpec {
        RingSpec::new(r, 2).unwrap()
    }

    fn k(r: &RingSpec, l: i64) -> ModulePresentation {
        ModulePresentation::residue_field(r, l)
    }

    fn free(r: &RingSpec, degs: Vec<i64>) -> ModulePresentation {
        ModulePresentation::free(r, degs)
    }

    fn fp(m: &ModulePresentation) -> ModuleFingerprint {
        fingerprint(m).unwrap()
    }

    fn assert_series_match_oracle(m: &ModulePresentation) {
        let hs = hilbert_series(m).unwrap();
        let cfg = OracleConfig::default_for(m);
        for (q, n) in oracle::oracle_dims(m, &cfg) {
            assert_eq!(hs.coefficient(q), n as i64, "degree {q}");
        }
    }

    #[test]
    fn series_of_basic_modules() {
        let r = ring(2);
        assert_eq!(hilbert_series(&free(&r, vec![0])).unwrap().to_string(), "1/(1-x^2)^2");
        assert_eq!(hilbert_series(&k(&r, 0)).unwrap().coefficients(-2, 6).values().copied().collect::<Vec<_>>(), vec![0, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(hilbert_series(&k(&r, 0)).unwrap(), HilbertSeries::of_residue_field(&r, 0));
    }

    #[test]
    fn series_agree_with_oracle() {
        let r = ring(3);
        for m in [k(&r, 1), maximal_ideal(&r), koszul_syzygy(&r, 2).unwrap(), free(&r, vec![0, 3, -2])] {
            assert_series_match_oracle(&m);
        }
    }

    #[test]
    fn direct_sum_with_shifted_maximal_ideal() {
        // R ⊕ m[1] over three variables: 1/(1-x^2)^3 + x((1-x^2)^{-3} - 1)
        let r = ring(3);
        let m = ModulePresentation::direct_sum(&[free(&r, vec![0]), maximal_ideal(&r).shift(1)]).unwrap();
        assert_eq!(m.generators().degrees(), &[0, 3, 3, 3]);
        let cfg = OracleConfig::new(&r, 0, 12).unwrap();
        let free3 = HilbertSeries::of_free(&r, &GradedFreeModule::new(vec![0]));
        for (q, n) in oracle::oracle_dims(&m, &cfg) {
            let expected = free3.coefficient(q) + free3.coefficient(q - 1) - i64::from(q == 1);
            assert_eq!(n as i64, expected, "degree {q}");
        }
    }

    #[test]
    fn duals() {
        let r = ring(2);
        assert_eq!(fp(&dual(&free(&r, vec![3])).unwrap()), fp(&free(&r, vec![-3])));
        assert!(is_zero_module(&dual(&k(&r, 0)).unwrap()).unwrap());
        // dual(K_{r-1}) = K_2[d] and dual(K_1) = K_r[d] = R[d]
        assert!(is_zero_module(&dual(&koszul_syzygy(&ring(1), 0).unwrap()).unwrap()).unwrap());
        for rr in 2..=4 {
            let r = ring(rr);
            let km1 = koszul_syzygy(&r, rr as i64 - 1).unwrap();
            assert_eq!(fp(&dual(&km1).unwrap()), fp(&koszul_syzygy(&r, 2).unwrap().shift(2)), "r = {rr}");
            let k1 = koszul_syzygy(&r, 1).unwrap();
            assert_eq!(fp(&dual(&k1).unwrap()), fp(&free(&r, vec![2])), "r = {rr}");
        }
    }

    #[test]
    fn ext_of_free_and_field() {
        let r = ring(2);
        let e = ext_all(&free(&r, vec![0])).unwrap();
        assert_eq!(fp(&e[0]), fp(&free(&r, vec![0])));
        assert!(e[1..].iter().all(|m| m.generators().rank() == 0));
        let e = ext_all(&k(&r, 0)).unwrap();
        assert_eq!(fp(&e[2]), fp(&k(&r, -4)));
        assert!(ext(&k(&r, 0), 3).is_err());
        assert!(ext(&k(&r, 0), -1).is_err());
    }

    #[test]
    fn ext_dims_match_dual_complex_oracle() {
        let r = ring(2);
        let m = maximal_ideal(&r);
        let res = minimal_resolution(&m).unwrap();
        for j in 0..=2usize {
            let e = ext_from_resolution(&res, j).unwrap();
            let cfg = OracleConfig::new(&r, -10, 4).unwrap();
            let from_pres = oracle::oracle_dims(&e, &cfg);
            let middle = res.modules().get(j).map(|f| f.dual()).unwrap_or_default();
            let a = res.map(j).map(|m| m.transpose());
            let b = res.map(j + 1).map(|m| m.transpose());
            let from_complex = oracle::homology_dims(&r, &middle, a.as_ref(), b.as_ref(), &cfg);
            assert_eq!(from_pres, from_complex, "j = {j}");
        }
        assert_eq!(fp(&ext(&m, 1).unwrap()), fp(&k(&r, -4)));
    }

    #[test]
    fn depth_and_dimension() {
        let r = ring(3);
        assert_eq!(depth_dim(&free(&r, vec![0])).unwrap(), (3, 3));
        assert_eq!(depth_dim(&k(&r, 0)).unwrap(), (0, 0));
        assert_eq!(depth_dim(&ModulePresentation::zero(&r)), Err(Error::ZeroModule));
        assert!(is_cohen_macaulay(&k(&r, 0)).unwrap());
        assert!(!is_cohen_macaulay(&maximal_ideal(&r)).unwrap());
        assert_eq!(depth_dim(&maximal_ideal(&r)).unwrap(), (1, 3));
    }

    #[test]
    fn biduality_examples() {
        let r = ring(2);
        assert!(biduality(&free(&r, vec![0, 1])).unwrap().is_isomorphism);
        let b = biduality(&k(&r, 0)).unwrap();
        assert!(!b.is_injective);
        assert_eq!(fp(&b.kernel), fp(&k(&r, 0)));
        let b = biduality(&maximal_ideal(&r)).unwrap();
        assert!(b.is_injective && !b.is_isomorphism);
        assert_eq!(fp(&b.cokernel), fp(&k(&r, 0)));
        assert_eq!(fp(&b.double_dual), fp(&free(&r, vec![0])));
    }

    #[test]
    fn torsion_of_mixed_module() {
        let r = ring(2);
        let m = ModulePresentation::direct_sum(&[free(&r, vec![0]), k(&r, 3)]).unwrap();
        assert_eq!(fp(&torsion(&m).unwrap()), fp(&k(&r, 3)));
    }

    #[test]
    fn syzygy_orders() {
        let r = ring(3);
        assert_eq!(syzygy_order(&free(&r, vec![0, 0])).unwrap(), 3);
        assert_eq!(syzygy_order(&k(&r, 0)).unwrap(), 0);
        assert_eq!(syzygy_order(&maximal_ideal(&r)).unwrap(), 1);
        assert_eq!(syzygy_order(&koszul_syzygy(&r, 2).unwrap()).unwrap(), 2);
        assert_eq!(syzygy_order(&ModulePresentation::zero(&r)).unwrap(), 3);
    }

    #[test]
    fn labels() {
        let r = ring(2);
        assert_eq!(fp(&free(&r, vec![0, 2, 2])).label().unwrap(), "R ⊕ R[2]^2");
        assert_eq!(fp(&k(&r, -1)).label().unwrap(), "k[-1]");
        assert_eq!(fp(&ModulePresentation::zero(&r)).label().unwrap(), "0");
        assert_eq!(fp(&maximal_ideal(&r)).label(), None);
    }

    #[test]
    fn minimal_presentation_prunes() {
        let r = ring(2);
        let m = ModulePresentation::from_parts(
            r.clone(),
            vec![0, 2],
            vec![2, 2, 4],
            vec![
                vec![r.var(0), r.var(1), r.parse("t1*t2").unwrap()],
                vec![r.one(), r.zero(), r.zero()],
            ],
        )
        .unwrap();
        let p = minimal_presentation(&m).unwrap();
        assert_eq!(p.generators().degrees(), &[0]);
        assert_eq!(p.relation_generators().degrees(), &[2]);
    }

    #[test]
    fn series_display_and_json() {
        let r = ring(3);
        let hs = HilbertSeries::of_residue_field(&r, 0);
        assert_eq!(hs.to_string(), "(1 - 3x^2 + 3x^4 - x^6)/(1-x^2)^3");
        let s = serde_json::to_string(&hs).unwrap();
        assert_eq!(s, r#"{"numerator":[[0,1],[2,-3],[4,3],[6,-1]],"denom_pow":3,"var_degree":2}"#);
        assert_eq!(serde_json::from_str::<HilbertSeries>(&s).unwrap(), hs);
    }
}
