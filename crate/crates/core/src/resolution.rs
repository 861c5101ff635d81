//! Graded free resolutions, their minimization and Betti tables, and the
//! Koszul complex with its syzygy modules `K_j`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis, ModuleOrder};
use crate::homalg::HilbertSeries;
use crate::modfree::{GradedFreeModule, GradedMatrix, ModulePresentation};
use crate::oracle::{self, OracleConfig};
use crate::ring::{MonomialOrder, Polynomial, RingSpec};

/// Graded Betti numbers `β_{i,j}`: the number of degree-`j` generators of
/// `F_i` in a minimal resolution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_modules(modules: &[GradedFreeModule]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, f) in modules.iter().enumerate() {
            for &g in f.degrees() {
                *entries.entry((i, g)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, b)| b).sum()
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn shifted(&self, l: i64) -> Self {
        BettiTable { entries: self.entries.iter().map(|(&(i, j), &b)| ((i, j + l), b)).collect() }
    }

    /// Macaulay-style grid: column `i`, row `j - i`.
    pub fn to_text(&self) -> String {
        let Some(len) = self.length() else {
            return "total: 0\n".into();
        };
        let rows: Vec<i64> = {
            let mut v: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let cell = |s: String, w: usize| format!("{s:>w$}");
        let width = (0..=len)
            .map(|i| self.total(i).to_string().len().max(i.to_string().len()))
            .max()
            .unwrap_or(1);
        let label = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(1).max(6);
        let mut out = String::new();
        let _ = write!(out, "{}", " ".repeat(label));
        for i in 0..=len {
            let _ = write!(out, " {}", cell(i.to_string(), width));
        }
        out.push('\n');
        let _ = write!(out, "{}", cell("total:".into(), label));
        for i in 0..=len {
            let _ = write!(out, " {}", cell(self.total(i).to_string(), width));
        }
        out.push('\n');
        for row in rows {
            let _ = write!(out, "{}", cell(format!("{row}:"), label));
            for i in 0..=len {
                let b = self.get(i, row + i as i64);
                let s = if b == 0 { ".".to_string() } else { b.to_string() };
                let _ = write!(out, " {}", cell(s, width));
            }
            out.push('\n');
        }
        out
    }

    /// `(i, j, β)` triples.
    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.entries().map(|(i, j, b)| [i as i64, j, b as i64]).collect()
    }

    pub fn from_triples(triples: &[[i64; 3]]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for &[i, j, b] in triples {
            if i < 0 || b < 0 {
                return Err(Error::Format(format!("bad Betti triple ({i}, {j}, {b})")));
            }
            if b > 0 {
                *entries.entry((i as usize, j)).or_insert(0) += b as usize;
            }
        }
        Ok(BettiTable { entries })
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = Vec::<[i64; 3]>::deserialize(d)?;
        BettiTable::from_triples(&t).map_err(serde::de::Error::custom)
    }
}

/// `F_p -> .. -> F_1 -> F_0`, with `coker(δ_1)` the resolved module.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: RingSpec,
    module: ModulePresentation,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedMatrix>,
    minimal: bool,
    truncated: bool,
}

impl FreeResolution {
    fn from_maps(ring: &RingSpec, module: &ModulePresentation, f0: GradedFreeModule, maps: Vec<GradedMatrix>) -> Self {
        let mut modules = vec![f0];
        modules.extend(maps.iter().map(|m| m.source().clone()));
        FreeResolution { ring: ring.clone(), module: module.clone(), modules, maps, minimal: false, truncated: false }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    /// The module this resolves (augmentation target).
    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    /// `maps()[i - 1]` is `δ_i: F_i -> F_{i-1}`.
    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    /// `δ_i` for `1 <= i <= length`.
    pub fn map(&self, i: usize) -> Option<&GradedMatrix> {
        i.checked_sub(1).and_then(|k| self.maps.get(k))
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules)
    }

    /// `Σ (-1)^i HS(F_i)`.
    pub fn euler_characteristic(&self) -> HilbertSeries {
        let mut hs = HilbertSeries::zero(self.ring.r(), self.ring.d());
        for (i, f) in self.modules.iter().enumerate() {
            let term = HilbertSeries::of_free(&self.ring, f);
            hs = if i % 2 == 0 { hs.add(&term) } else { hs.sub(&term) };
        }
        hs
    }

    /// Homotopy-equivalent minimal resolution. A unit whose partner lies
    /// beyond a truncation cannot be cancelled, so minimize resolutions
    /// that are not truncated.
    pub fn minimize(&self) -> FreeResolution {
        let mut maps = self.maps.clone();
        let mut f0 = self.modules[0].clone();
        for i in 0..maps.len() {
            while let Some((a, b)) = find_unit(&maps[i]) {
                cancel(&mut maps, i, a, b);
            }
            if i == 0 {
                f0 = maps[0].target().clone();
            }
        }
        while maps.last().is_some_and(|m| m.is_zero()) {
            maps.pop();
        }
        let mut out = FreeResolution::from_maps(&self.ring, &self.module, f0, maps);
        out.minimal = true;
        out.truncated = self.truncated;
        out
    }

    /// Checks `δδ = 0`, homogeneity, minimality (when flagged), exactness
    /// at every `F_i` with `i >= 1`, and the Euler characteristic against
    /// degreewise dimensions of the module on the default oracle window.
    pub fn verify(&self) -> Result<()> {
        let fail = |s: String| Err(Error::Verification(s));
        for (k, m) in self.maps.iter().enumerate() {
            if !m.check_homogeneous(&self.ring) {
                return fail(format!("δ_{} is not homogeneous", k + 1));
            }
            if self.minimal && find_unit(m).is_some() {
                return fail(format!("δ_{} has a unit entry in a minimal resolution", k + 1));
            }
        }
        for k in 1..self.maps.len() {
            if !self.maps[k - 1].compose(&self.maps[k])?.is_zero() {
                return fail(format!("δ_{} ∘ δ_{} ≠ 0", k, k + 1));
            }
        }
        for k in 0..self.maps.len() {
            let ker = groebner::kernel(&self.ring, &self.maps[k])?;
            match self.maps.get(k + 1) {
                Some(next) => {
                    let gb = groebner::buchberger(&self.ring, next.target(), &next.columns(), &ModuleOrder::default())?;
                    for v in &ker {
                        if !gb.contains(v)? {
                            return fail(format!("not exact at F_{}", k + 1));
                        }
                    }
                }
                None if !self.truncated && !ker.is_empty() => {
                    return fail(format!("δ_{} is not injective", k + 1));
                }
                None => {}
            }
        }
        let cfg = OracleConfig::default_for(&self.module);
        let hs = self.euler_characteristic();
        for (q, dim) in oracle::oracle_dims(&self.module, &cfg) {
            if !self.truncated && hs.coefficient(q) != dim as i64 {
                return fail(format!("Euler characteristic disagrees with dim M_{q} = {dim}"));
            }
        }
        Ok(())
    }
}

// Markowitz choice: the unit whose row and column are sparsest, then the
// one with the smallest coefficient, to limit fill-in and coefficient growth.
fn find_unit(m: &GradedMatrix) -> Option<(usize, usize)> {
    let nz = |p: &Polynomial| !p.is_zero();
    let row_nnz: Vec<usize> = m.entries().iter().map(|row| row.iter().filter(|p| nz(p)).count()).collect();
    let col_nnz: Vec<usize> = (0..m.cols()).map(|b| (0..m.rows()).filter(|&a| nz(m.entry(a, b))).count()).collect();
    let mut best: Option<((usize, u64), (usize, usize))> = None;
    for (a, row) in m.entries().iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            if !nz(e) || e.homogeneous_degree(1) != Some(0) {
                continue;
            }
            let c = e.constant_term();
            let cost = ((row_nnz[a] - 1) * (col_nnz[b] - 1), c.numer().bits() + c.denom().bits());
            if best.as_ref().is_none_or(|(k, _)| cost < *k) {
                best = Some((cost, (a, b)));
            }
        }
    }
    best.map(|(_, ab)| ab)
}

/// Split off `R e_b --c--> R e_a` from the complex at `δ_{i+1} = maps[i]`.
fn cancel(maps: &mut [GradedMatrix], i: usize, a: usize, b: usize) {
    let m = &maps[i];
    let c = m.entry(a, b).constant_term();
    let inv = c.recip();
    let col_b: Vec<Polynomial> = (0..m.rows()).map(|k| m.entry(k, b).clone()).collect();
    let row_a: Vec<Polynomial> = (0..m.cols()).map(|j| m.entry(a, j).scale(&inv)).collect();
    let keep_rows: Vec<usize> = (0..m.rows()).filter(|&k| k != a).collect();
    let keep_cols: Vec<usize> = (0..m.cols()).filter(|&j| j != b).collect();
    let mut next = m.select_rows(&keep_rows).select_columns(&keep_cols);
    {
        let entries = next.entries_mut();
        for (ri, &k) in keep_rows.iter().enumerate() {
            if col_b[k].is_zero() {
                continue;
            }
            for (ci, &j) in keep_cols.iter().enumerate() {
                if row_a[j].is_zero() {
                    continue;
                }
                entries[ri][ci] = &entries[ri][ci] - &(&col_b[k] * &row_a[j]);
            }
        }
    }
    maps[i] = next;
    if i > 0 {
        let cols: Vec<usize> = (0..maps[i - 1].cols()).filter(|&j| j != a).collect();
        maps[i - 1] = maps[i - 1].select_columns(&cols);
    }
    if i + 1 < maps.len() {
        let rows: Vec<usize> = (0..maps[i + 1].rows()).filter(|&k| k != b).collect();
        maps[i + 1] = maps[i + 1].select_rows(&rows);
    }
}

/// How the raw (non-minimal) resolution is produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Iterate minimal generators of kernels.
    #[default]
    Kernels,
    /// Iterate Schreyer syzygies of Gröbner bases.
    SchreyerFrame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub strategy: Strategy,
    pub order: MonomialOrder,
    pub minimize: bool,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { strategy: Strategy::Kernels, order: MonomialOrder::GRevLex, minimize: true }
    }
}

/// Minimal free resolution of length at most `max_len`.
pub fn resolve(m: &ModulePresentation, max_len: usize) -> Result<FreeResolution> {
    resolve_with(m, max_len, ResolveOptions::default())
}

pub fn resolve_with(m: &ModulePresentation, max_len: usize, opts: ResolveOptions) -> Result<FreeResolution> {
    let ring = m.ring();
    // One level beyond max_len tells us whether the resolution is truncated.
    let limit = max_len + 1;
    let maps = match opts.strategy {
        Strategy::Kernels => kernel_maps(ring, m, limit, opts.order)?,
        Strategy::SchreyerFrame => schreyer_maps(ring, m, limit, opts.order)?,
    };
    let raw = FreeResolution::from_maps(ring, m, m.generators().clone(), maps);
    let mut res = if opts.minimize { raw.minimize() } else { raw };
    if res.maps.len() > max_len {
        res.maps.truncate(max_len);
        res.modules.truncate(max_len + 1);
        res.truncated = true;
    }
    Ok(res)
}

fn kernel_maps(ring: &RingSpec, m: &ModulePresentation, limit: usize, order: MonomialOrder) -> Result<Vec<GradedMatrix>> {
    let mut maps = vec![m.relations().clone()];
    while maps.len() < limit {
        let last = maps.last().unwrap();
        let ker = groebner::kernel_with(ring, last, order, true)?;
        if ker.is_empty() {
            break;
        }
        let next = GradedMatrix::from_homogeneous_columns(ring, last.source().clone(), &ker)?;
        maps.push(next);
    }
    Ok(maps)
}

fn schreyer_maps(ring: &RingSpec, m: &ModulePresentation, limit: usize, order: MonomialOrder) -> Result<Vec<GradedMatrix>> {
    let f0 = m.generators().clone();
    let opts = groebner::BuchbergerOptions { chain_criterion: true, reduce: true };
    let gb = groebner::buchberger_with(ring, &f0, &m.relations().columns(), &ModuleOrder::pot(order), opts)?.basis;
    if gb.is_empty() {
        return Ok(vec![GradedMatrix::zero(ring, GradedFreeModule::zero(), f0)]);
    }
    let mut maps = vec![gb.matrix()];
    let mut current = gb;
    while maps.len() < limit {
        let (mut syz, schreyer) = current.schreyer_syzygies()?;
        if syz.is_empty() {
            break;
        }
        sort_for_schreyer(&mut syz);
        let next = GroebnerBasis::from_trusted(ring, current.source_module(), schreyer, syz);
        maps.push(next.matrix());
        current = next;
    }
    Ok(maps)
}

// Within each leading position, lex-descending leading monomials; this
// bounds the length of the frame by the number of variables.
fn sort_for_schreyer(syz: &mut [groebner::Vector]) {
    syz.sort_by(|a, b| {
        let (pa, ma) = a.lead_key();
        let (pb, mb) = b.lead_key();
        pa.cmp(&pb).then_with(|| mb.cmp(ma))
    });
}

/// Subsets of `{0..r-1}` of size `i` as bitmasks, in colex order.
fn subsets(r: usize, i: usize) -> Vec<u32> {
    (0u32..(1u32 << r)).filter(|s| s.count_ones() as usize == i).collect()
}

/// `δ_i: R[di]^{C(r,i)} -> R[d(i-1)]^{C(r,i-1)}`,
/// `e_S ↦ Σ_{s ∈ S} (-1)^{pos(s, S)} t_s e_{S \ s}`.
pub fn koszul_map(ring: &RingSpec, i: usize) -> GradedMatrix {
    let r = ring.r();
    let d = ring.var_degree();
    let src = subsets(r, i);
    let tgt = subsets(r, i - 1);
    let index: BTreeMap<u32, usize> = tgt.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut rows = vec![vec![ring.zero(); src.len()]; tgt.len()];
    for (col, &s) in src.iter().enumerate() {
        let mut pos = 0;
        for v in 0..r {
            if s & (1 << v) == 0 {
                continue;
            }
            let t = index[&(s & !(1 << v))];
            rows[t][col] = if pos % 2 == 0 { ring.var(v) } else { -ring.var(v) };
            pos += 1;
        }
    }
    GradedMatrix::new(
        ring,
        GradedFreeModule::new(vec![d * i as i64; src.len()]),
        GradedFreeModule::new(vec![d * (i as i64 - 1); tgt.len()]),
        rows,
    )
    .expect("Koszul maps are homogeneous")
}

/// The Koszul resolution of `k`.
pub fn koszul_complex(ring: &RingSpec) -> FreeResolution {
    let maps: Vec<GradedMatrix> = (1..=ring.r()).map(|i| koszul_map(ring, i)).collect();
    let k = ModulePresentation::residue_field(ring, 0);
    let mut res = FreeResolution::from_maps(ring, &k, GradedFreeModule::new(vec![0]), maps);
    debug_assert_eq!(res.modules.iter().map(|f| f.rank()).sum::<usize>(), 1 << ring.r());
    res.minimal = true;
    res
}

/// `K_j = coker(δ_{j+1})[-dj]`, generated in degree 0, for `0 <= j <= r+1`.
pub fn koszul_syzygy(ring: &RingSpec, j: i64) -> Result<ModulePresentation> {
    let r = ring.r();
    if j < 0 || j > r as i64 + 1 {
        return Err(Error::OutOfRange { what: "Koszul index", value: j });
    }
    let j = j as usize;
    if j == r + 1 {
        return Ok(ModulePresentation::zero(ring));
    }
    let d = ring.var_degree();
    let rel = if j < r {
        koszul_map(ring, j + 1)
    } else {
        GradedMatrix::zero(ring, GradedFreeModule::zero(), GradedFreeModule::new(vec![d * r as i64]))
    };
    Ok(ModulePresentation::new(ring.clone(), rel)?.shift(-d * j as i64))
}

/// The maximal graded ideal `m = K_1[d]`, generated by the variables in
/// degree `d`.
pub fn maximal_ideal(ring: &RingSpec) -> ModulePresentation {
    koszul_syzygy(ring, 1).expect("in range").shift(ring.var_degree())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(r: usize) -> RingSpec {
        RingSpec::new(r, 2).unwrap()
    }

    fn binomials(r: usize) -> Vec<usize> {
        (0..=r).map(|i| num_integer::binomial(r, i)).collect()
    }

    fn totals(b: &BettiTable) -> Vec<usize> {
        (0..=b.length().unwrap_or(0)).map(|i| b.total(i)).collect()
    }

    #[test]
    fn free_module_resolves_in_length_zero() {
        let r = ring(2);
        let res = resolve(&ModulePresentation::free(&r, vec![0]), 2).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(res.modules()[0], GradedFreeModule::new(vec![0]));
        res.verify().unwrap();
    }

    #[test]
    fn residue_field_two_variables() {
        let r = ring(2);
        let res = resolve(&ModulePresentation::residue_field(&r, 0), 2).unwrap();
        let b = res.betti();
        assert_eq!((b.get(0, 0), b.get(1, 2), b.get(2, 4)), (1, 2, 1));
        assert_eq!(b.entries().count(), 3);
        res.verify().unwrap();
    }

    #[test]
    fn koszul_complex_shapes() {
        for r in 0..=4 {
            let rr = ring(r);
            let kc = koszul_complex(&rr);
            assert_eq!(kc.length(), r);
            assert_eq!(totals(&kc.betti()), binomials(r));
            for (i, f) in kc.modules().iter().enumerate() {
                assert!(f.degrees().iter().all(|&g| g == 2 * i as i64));
            }
            kc.verify().unwrap();
        }
    }

    #[test]
    fn koszul_first_map_for_one_variable() {
        let r = ring(1);
        let kc = koszul_complex(&r);
        assert_eq!(kc.maps()[0].entries(), &[vec![r.var(0)]]);
        assert_eq!(kc.modules()[1].degrees(), &[2]);
    }

    #[test]
    fn koszul_signs() {
        let r = ring(3);
        let d2 = koszul_map(&r, 2);
        // e_{12} -> t1 e_2 - t2 e_1 with subsets in colex order {1},{2},{3}
        assert_eq!(d2.column(0).coords, vec![-r.var(1), r.var(0), r.zero()]);
    }

    #[test]
    fn minimizing_cancels_unit_pivots() {
        let r = ring(2);
        // R ⊕ R[1] modulo the R[1] summand written with an identity relation
        let m = ModulePresentation::from_parts(r.clone(), vec![0, 1], vec![1], vec![vec![r.zero()], vec![r.one()]]).unwrap();
        let raw = resolve_with(&m, 2, ResolveOptions { minimize: false, ..Default::default() }).unwrap();
        assert_eq!(raw.modules()[0].rank(), 2);
        let min = raw.minimize();
        assert_eq!(min.length(), 0);
        assert_eq!(min.modules()[0], GradedFreeModule::new(vec![0]));
        min.verify().unwrap();
    }

    #[test]
    fn schreyer_frame_of_residue_field_minimizes_to_koszul() {
        let r = ring(3);
        let k = ModulePresentation::residue_field(&r, 0);
        let opts = ResolveOptions { strategy: Strategy::SchreyerFrame, minimize: false, ..Default::default() };
        let raw = resolve_with(&k, 3, opts).unwrap();
        assert!(!raw.is_truncated());
        raw.verify().unwrap();
        let min = raw.minimize();
        assert_eq!(totals(&min.betti()), vec![1, 3, 3, 1]);
        assert_eq!(min.betti(), koszul_complex(&r).betti());
    }

    #[test]
    fn truncation_is_flagged() {
        let r = ring(3);
        let k = ModulePresentation::residue_field(&r, 0);
        let res = resolve(&k, 1).unwrap();
        assert!(res.is_truncated());
        assert_eq!(res.length(), 1);
        assert!(!resolve(&k, 3).unwrap().is_truncated());
    }

    #[test]
    fn koszul_syzygy_ends() {
        let r = ring(2);
        let kr = koszul_syzygy(&r, 2).unwrap();
        assert_eq!(kr.generators().degrees(), &[0]);
        assert!(kr.is_trivially_free());
        assert!(koszul_syzygy(&r, 3).unwrap().is_trivially_zero());
        assert!(koszul_syzygy(&r, 4).is_err());
        assert!(koszul_syzygy(&r, -1).is_err());
        let k1 = koszul_syzygy(&r, 1).unwrap();
        assert_eq!(k1.generators().degrees(), &[0, 0]);
        let b = resolve(&k1, 2).unwrap().betti();
        assert_eq!((b.get(0, 0), b.get(1, 2)), (2, 1));
    }

    #[test]
    fn betti_text_layout() {
        let r = ring(2);
        let t = koszul_complex(&r).betti().to_text();
        assert_eq!(t, "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    1: . 2 .\n    2: . . 1\n");
    }

    #[test]
    fn betti_json_roundtrip() {
        let b = koszul_complex(&ring(3)).betti();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, "[[0,0,1],[1,2,3],[2,4,3],[3,6,1]]");
        let back: BettiTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn no_variables() {
        let r = RingSpec::new(0, 2).unwrap();
        let kc = koszul_complex(&r);
        assert_eq!(kc.length(), 0);
        let m = ModulePresentation::from_parts(r.clone(), vec![0, 0], vec![0], vec![vec![r.one()], vec![r.one()]]).unwrap();
        let res = resolve(&m, 0).unwrap();
        assert_eq!(res.modules()[0].rank(), 1);
        assert!(!res.is_truncated());
    }
}
