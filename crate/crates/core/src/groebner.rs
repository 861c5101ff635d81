//! Gröbner bases for homogeneous submodules of graded free modules.
//!
//! Elements are stored as sparse term lists sorted ascending in the active
//! module order, so the leading term is always the last one. Completion is
//! the homogeneous Buchberger algorithm with the normal strategy: S-pairs
//! and input generators are handled strictly degree by degree, which also
//! tells us which inputs are minimal generators of the submodule.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modfree::{GradedFreeModule, GradedMatrix, Homogeneity, ModuleElement};
use crate::ring::{Monomial, MonomialOrder, Polynomial, Rational, RingSpec};

/// Term order on a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Compare positions first (smaller generator index is larger), then
    /// monomials.
    PositionOverTerm(MonomialOrder),
    /// Order induced by a list of leading terms in another free module:
    /// `a e_i > b e_j` iff `a lt_i > b lt_j`, ties broken by `i < j`.
    Schreyer(Arc<SchreyerOrder>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreyerOrder {
    pub base: ModuleOrder,
    pub leads: Vec<(usize, Monomial)>,
}

impl Default for ModuleOrder {
    fn default() -> Self {
        ModuleOrder::PositionOverTerm(MonomialOrder::GRevLex)
    }
}

impl ModuleOrder {
    pub fn pot(order: MonomialOrder) -> Self {
        ModuleOrder::PositionOverTerm(order)
    }

    /// The monomial order at the bottom of any Schreyer tower.
    pub fn monomial_order(&self) -> MonomialOrder {
        match self {
            ModuleOrder::PositionOverTerm(o) => *o,
            ModuleOrder::Schreyer(s) => s.base.monomial_order(),
        }
    }

    pub fn cmp(&self, p1: usize, m1: &Monomial, p2: usize, m2: &Monomial) -> Ordering {
        match self {
            ModuleOrder::PositionOverTerm(o) => p2.cmp(&p1).then_with(|| o.cmp(m1, m2)),
            ModuleOrder::Schreyer(s) => {
                let (q1, l1) = &s.leads[p1];
                let (q2, l2) = &s.leads[p2];
                s.base.cmp(*q1, &m1.mul(l1), *q2, &m2.mul(l2)).then_with(|| p2.cmp(&p1))
            }
        }
    }

    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(a.pos, &a.mono, b.pos, &b.mono)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Sparse module vector, terms ascending in the module order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    fn from_element(elem: &ModuleElement, order: &ModuleOrder) -> Vector {
        let mut terms: Vec<Term> = elem
            .coords
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| Term { pos, mono: m.clone(), coeff: c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| order.cmp_terms(a, b));
        Vector { terms }
    }

    fn to_element(&self, nvars: usize, rank: usize) -> ModuleElement {
        let mut coords = vec![Polynomial::zero(nvars); rank];
        for t in &self.terms {
            coords[t.pos].add_term(t.mono.clone(), t.coeff.clone());
        }
        ModuleElement::new(coords)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lead_key(&self) -> (usize, &Monomial) {
        let l = self.terms.last().expect("nonzero vector");
        (l.pos, &l.mono)
    }

    fn lead(&self) -> Option<&Term> {
        self.terms.last()
    }

    fn is_single_position(&self) -> bool {
        match self.terms.last() {
            None => true,
            Some(l) => self.terms.iter().all(|t| t.pos == l.pos),
        }
    }

    fn make_monic(&mut self) {
        if let Some(l) = self.terms.last() {
            if !l.coeff.is_one() {
                let inv = l.coeff.recip();
                for t in &mut self.terms {
                    t.coeff = &t.coeff * &inv;
                }
            }
        }
    }

    /// `self - c * m * g` (monomial multiplication preserves the order).
    fn sub_scaled(&self, g: &Vector, m: &Monomial, c: &Rational, order: &ModuleOrder) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: -(&t.coeff * c) }).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp_terms(x, y) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = &x.coeff + &y.coeff;
                        if !s.is_zero() {
                            out.push(Term { pos: x.pos, mono: x.mono.clone(), coeff: s });
                        }
                    }
                },
            }
        }
        Vector { terms: out }
    }

    fn degree(&self, gen_degrees: &[i64], d: i64) -> Option<i64> {
        self.lead().map(|t| gen_degrees[t.pos] + d * t.mono.total() as i64)
    }
}

/// Record of one division step: `coeff * mono * g_index` was subtracted.
struct QuotientStep {
    index: usize,
    mono: Monomial,
    coeff: Rational,
}

/// Leading-term lookup by position.
#[derive(Clone, Debug, Default)]
struct LeadIndex {
    by_pos: BTreeMap<usize, Vec<usize>>,
}

impl LeadIndex {
    fn insert(&mut self, pos: usize, idx: usize) {
        self.by_pos.entry(pos).or_default().push(idx);
    }

    fn find_divisor(&self, elements: &[Vector], t: &Term) -> Option<usize> {
        self.by_pos.get(&t.pos)?.iter().copied().find(|&k| {
            let l = elements[k].lead().expect("basis elements are nonzero");
            l.mono.divides(&t.mono)
        })
    }
}

/// Reduce `f` by `elements`. With `full`, every term is reduced; otherwise
/// only leading terms are.
fn reduce(
    f: Vector,
    elements: &[Vector],
    index: &LeadIndex,
    order: &ModuleOrder,
    full: bool,
    mut steps: Option<&mut Vec<QuotientStep>>,
) -> Vector {
    let mut p = f;
    let mut irreducible: Vec<Term> = Vec::new();
    while let Some(lt) = p.terms.last() {
        match index.find_divisor(elements, lt) {
            Some(k) => {
                let g = &elements[k];
                let gl = g.lead().unwrap();
                let m = gl.mono.quotient_of(&lt.mono).unwrap();
                let c = &lt.coeff / &gl.coeff;
                if let Some(s) = steps.as_deref_mut() {
                    s.push(QuotientStep { index: k, mono: m.clone(), coeff: c.clone() });
                }
                p = p.sub_scaled(g, &m, &c, order);
            }
            None if full => irreducible.push(p.terms.pop().unwrap()),
            None => break,
        }
    }
    irreducible.reverse();
    p.terms.extend(irreducible);
    debug_assert!(p.terms.windows(2).all(|w| order.cmp_terms(&w[0], &w[1]) == Ordering::Less));
    p
}

/// Tuning switches for [`buchberger_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Skip pairs by Buchberger's chain criterion.
    pub chain_criterion: bool,
    /// Inter-reduce the final basis.
    pub reduce: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { chain_criterion: true, reduce: true }
    }
}

/// Gröbner basis of a homogeneous submodule of `ambient`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingSpec,
    ambient: GradedFreeModule,
    order: ModuleOrder,
    elements: Vec<Vector>,
    index: LeadIndex,
    reduced: bool,
    minimal: bool,
}

/// Result of a completion run.
#[derive(Clone, Debug)]
pub struct Completion {
    pub basis: GroebnerBasis,
    /// Indices of the input generators that form a minimal generating set
    /// (inputs that were not already in the submodule generated by inputs of
    /// lower degree and earlier inputs of the same degree).
    pub minimal_generators: Vec<usize>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.elements.iter().map(|v| v.to_element(self.ring.r(), self.ambient.rank())).collect()
    }

    /// Leading terms as `(position, monomial)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|v| {
            let l = v.lead().unwrap();
            (l.pos, l.mono.clone())
        }).collect()
    }

    /// Degrees of the basis elements.
    pub fn degrees(&self) -> Vec<i64> {
        self.elements
            .iter()
            .map(|v| v.degree(self.ambient.degrees(), self.ring.var_degree()).unwrap())
            .collect()
    }

    fn check_element(&self, f: &ModuleElement) -> Result<()> {
        if f.len() != self.ambient.rank() {
            return Err(Error::AmbientMismatch(format!(
                "element of length {} in a free module of rank {}",
                f.len(),
                self.ambient.rank()
            )));
        }
        if f.homogeneity(&self.ring, &self.ambient) == Homogeneity::Inhomogeneous {
            return Err(Error::Inhomogeneous("normal form of an inhomogeneous element".into()));
        }
        Ok(())
    }

    /// Fully reduced remainder of `f`.
    pub fn normal_form(&self, f: &ModuleElement) -> Result<ModuleElement> {
        self.check_element(f)?;
        let v = reduce(Vector::from_element(f, &self.order), &self.elements, &self.index, &self.order, true, None);
        Ok(v.to_element(self.ring.r(), self.ambient.rank()))
    }

    /// Division with remainder: `f = Σ q_k g_k + remainder`.
    pub fn divide(&self, f: &ModuleElement) -> Result<(Vec<Polynomial>, ModuleElement)> {
        self.check_element(f)?;
        let mut steps = Vec::new();
        let v = reduce(
            Vector::from_element(f, &self.order),
            &self.elements,
            &self.index,
            &self.order,
            true,
            Some(&mut steps),
        );
        Ok((self.collect_quotients(steps), v.to_element(self.ring.r(), self.ambient.rank())))
    }

    fn collect_quotients(&self, steps: Vec<QuotientStep>) -> Vec<Polynomial> {
        let mut q = vec![Polynomial::zero(self.ring.r()); self.elements.len()];
        for s in steps {
            q[s.index].add_term(s.mono, s.coeff);
        }
        q
    }

    pub fn contains(&self, f: &ModuleElement) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn s_pair(&self, i: usize, j: usize) -> Option<(Vector, Monomial, Monomial)> {
        let (gi, gj) = (&self.elements[i], &self.elements[j]);
        let (li, lj) = (gi.lead()?, gj.lead()?);
        if li.pos != lj.pos {
            return None;
        }
        let l = li.mono.lcm(&lj.mono);
        let mi = li.mono.quotient_of(&l).unwrap();
        let mj = lj.mono.quotient_of(&l).unwrap();
        let ci = li.coeff.recip();
        let cj = lj.coeff.recip();
        let zero = Vector::default();
        let s = zero.sub_scaled(gi, &mi, &-ci, &self.order).sub_scaled(gj, &mj, &cj, &self.order);
        Some((s, mi, mj))
    }

    /// Buchberger's certificate: every S-pair reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        for j in 0..self.elements.len() {
            for i in 0..j {
                if let Some((s, _, _)) = self.s_pair(i, j) {
                    let r = reduce(s, &self.elements, &self.index, &self.order, false, None);
                    if !r.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Reducedness: monic leads, and no lead divides any term (same
    /// position) of another element.
    pub fn verify_reduced(&self) -> bool {
        for (a, ga) in self.elements.iter().enumerate() {
            let la = ga.lead().unwrap();
            if !la.coeff.is_one() {
                return false;
            }
            for (b, gb) in self.elements.iter().enumerate() {
                if a != b && gb.terms.iter().any(|t| t.pos == la.pos && la.mono.divides(&t.mono)) {
                    return false;
                }
            }
        }
        true
    }

    /// Syzygy module of the basis elements by Schreyer's theorem: one
    /// syzygy per S-pair of elements with leading terms in the same
    /// position. Columns are homogeneous in the free module whose generator
    /// degrees are the basis degrees.
    pub fn syzygies(&self) -> Result<GradedMatrix> {
        let (cols, _) = self.schreyer_syzygies()?;
        let source = self.source_module();
        let elems: Vec<ModuleElement> =
            cols.iter().map(|v| v.to_element(self.ring.r(), self.elements.len())).collect();
        let degrees = cols
            .iter()
            .map(|v| v.degree(source.degrees(), self.ring.var_degree()).unwrap())
            .collect();
        GradedMatrix::from_columns(&self.ring, GradedFreeModule::new(degrees), source, &elems)
    }

    /// Free module with one generator per basis element, in its degree.
    pub fn source_module(&self) -> GradedFreeModule {
        GradedFreeModule::new(self.degrees())
    }

    /// The basis as a matrix `source_module -> ambient`.
    pub fn matrix(&self) -> GradedMatrix {
        GradedMatrix::from_columns(&self.ring, self.source_module(), self.ambient.clone(), &self.elements())
            .expect("shapes agree")
    }

    /// Schreyer syzygies as vectors in the Schreyer order, sorted so that
    /// iterating the construction terminates within `r` steps.
    pub(crate) fn schreyer_syzygies(&self) -> Result<(Vec<Vector>, ModuleOrder)> {
        let leads: Vec<(usize, Monomial)> = self.leading_terms();
        let schreyer = ModuleOrder::Schreyer(Arc::new(SchreyerOrder { base: self.order.clone(), leads }));
        let mut out = Vec::new();
        let n = self.elements.len();
        for i in 0..n {
            // The syzygy of (i, j) leads with (lcm / lead_i) e_i; keep the
            // pairs whose quotients minimally generate that monomial ideal.
            let pairs: Vec<(usize, Monomial)> = (i + 1..n)
                .filter_map(|j| {
                    let (li, lj) = (self.elements[i].lead()?, self.elements[j].lead()?);
                    (li.pos == lj.pos).then(|| (j, li.mono.quotient_of(&li.mono.lcm(&lj.mono)).unwrap()))
                })
                .collect();
            let kept = pairs.iter().filter(|(j, q)| {
                !pairs.iter().any(|(k, p)| k != j && p.divides(q) && (p != q || k < j))
            });
            for &(j, _) in kept {
                let Some((s, mi, mj)) = self.s_pair(i, j) else { continue };
                let mut steps = Vec::new();
                let rem = reduce(s, &self.elements, &self.index, &self.order, false, Some(&mut steps));
                if !rem.is_zero() {
                    return Err(Error::Verification("syzygies requested on a non-Gröbner basis".into()));
                }
                let mut coords = vec![Polynomial::zero(self.ring.r()); self.elements.len()];
                let ci = self.elements[i].lead().unwrap().coeff.recip();
                let cj = self.elements[j].lead().unwrap().coeff.recip();
                coords[i].add_term(mi, ci);
                coords[j].add_term(mj, -cj);
                for st in steps {
                    coords[st.index].add_term(st.mono, -st.coeff);
                }
                let v = Vector::from_element(&ModuleElement::new(coords), &schreyer);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
        Ok((out, schreyer))
    }

    /// Wrap vectors already known to form a Gröbner basis.
    pub(crate) fn from_trusted(
        ring: &RingSpec,
        ambient: GradedFreeModule,
        order: ModuleOrder,
        mut elements: Vec<Vector>,
    ) -> GroebnerBasis {
        let mut index = LeadIndex::default();
        for (k, v) in elements.iter_mut().enumerate() {
            v.make_monic();
            index.insert(v.lead().unwrap().pos, k);
        }
        GroebnerBasis { ring: ring.clone(), ambient, order, elements, index, reduced: false, minimal: false }
    }

    pub(crate) fn vectors(&self) -> &[Vector] {
        &self.elements
    }
}

/// Buchberger completion with default options.
pub fn buchberger(
    ring: &RingSpec,
    ambient: &GradedFreeModule,
    gens: &[ModuleElement],
    order: &ModuleOrder,
) -> Result<GroebnerBasis> {
    Ok(buchberger_with(ring, ambient, gens, order, BuchbergerOptions::default())?.basis)
}

/// Homogeneous Buchberger completion, normal selection strategy.
pub fn buchberger_with(
    ring: &RingSpec,
    ambient: &GradedFreeModule,
    gens: &[ModuleElement],
    order: &ModuleOrder,
    opts: BuchbergerOptions,
) -> Result<Completion> {
    let d = ring.var_degree();
    let mut inputs: Vec<(i64, usize, Vector)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if g.len() != ambient.rank() {
            return Err(Error::AmbientMismatch(format!(
                "generator {k} has length {}, ambient rank {}",
                g.len(),
                ambient.rank()
            )));
        }
        match g.homogeneity(ring, ambient) {
            Homogeneity::Zero => {}
            Homogeneity::Degree(q) => inputs.push((q, k, Vector::from_element(g, order))),
            Homogeneity::Inhomogeneous => {
                return Err(Error::Inhomogeneous(format!("generator {k} is not homogeneous")))
            }
        }
    }
    inputs.sort_by_key(|(q, k, _)| (*q, *k));

    let mut state = Completer {
        d,
        gen_degrees: ambient.degrees().to_vec(),
        order,
        opts,
        elements: Vec::new(),
        index: LeadIndex::default(),
        pairs: BTreeMap::new(),
        pending: HashSet::new(),
    };
    let mut minimal_generators = Vec::new();
    let mut inputs = inputs.into_iter().peekable();
    loop {
        let next_pair = state.pairs.keys().next().copied();
        let next_input = inputs.peek().map(|(q, _, _)| *q);
        let deg = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(batch) = state.pairs.remove(&deg) {
            for (i, j) in batch {
                state.process_pair(i, j);
            }
        }
        while inputs.peek().is_some_and(|(q, _, _)| *q == deg) {
            let (_, k, v) = inputs.next().unwrap();
            let h = reduce(v, &state.elements, &state.index, order, true, None);
            if !h.is_zero() {
                minimal_generators.push(k);
                state.insert(h);
            }
        }
    }

    let mut elements = state.elements;
    let mut reduced = false;
    let mut minimal = false;
    if opts.reduce {
        elements = interreduce(elements, order);
        reduced = true;
        minimal = true;
    }
    let mut index = LeadIndex::default();
    for (k, v) in elements.iter().enumerate() {
        index.insert(v.lead().unwrap().pos, k);
    }
    minimal_generators.sort_unstable();
    Ok(Completion {
        basis: GroebnerBasis {
            ring: ring.clone(),
            ambient: ambient.clone(),
            order: order.clone(),
            elements,
            index,
            reduced,
            minimal,
        },
        minimal_generators,
    })
}

struct Completer<'a> {
    d: i64,
    gen_degrees: Vec<i64>,
    order: &'a ModuleOrder,
    opts: BuchbergerOptions,
    elements: Vec<Vector>,
    index: LeadIndex,
    pairs: BTreeMap<i64, Vec<(usize, usize)>>,
    pending: HashSet<(usize, usize)>,
}

impl Completer<'_> {
    fn insert(&mut self, mut h: Vector) {
        h.make_monic();
        let j = self.elements.len();
        let hl = h.lead().unwrap().clone();
        let h_single = h.is_single_position();
        for (i, g) in self.elements.iter().enumerate() {
            let gl = g.lead().unwrap();
            if gl.pos != hl.pos {
                continue;
            }
            // The product criterion only holds for elements living in a
            // single coordinate.
            if h_single && g.is_single_position() && gl.mono.is_coprime(&hl.mono) {
                continue;
            }
            let lcm = gl.mono.lcm(&hl.mono);
            let deg = self.gen_degrees[hl.pos] + self.d * lcm.total() as i64;
            self.pairs.entry(deg).or_default().push((i, j));
            self.pending.insert((i, j));
        }
        self.index.insert(hl.pos, j);
        self.elements.push(h);
    }

    fn chain_redundant(&self, i: usize, j: usize) -> bool {
        let li = self.elements[i].lead().unwrap();
        let lj = self.elements[j].lead().unwrap();
        let lcm = li.mono.lcm(&lj.mono);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        self.index.by_pos.get(&li.pos).is_some_and(|cands| {
            cands.iter().any(|&k| {
                k != i
                    && k != j
                    && self.elements[k].lead().unwrap().mono.divides(&lcm)
                    && !self.pending.contains(&key(i, k))
                    && !self.pending.contains(&key(j, k))
            })
        })
    }

    fn process_pair(&mut self, i: usize, j: usize) {
        if self.opts.chain_criterion && self.chain_redundant(i, j) {
            self.pending.remove(&(i, j));
            return;
        }
        let (gi, gj) = (&self.elements[i], &self.elements[j]);
        let (li, lj) = (gi.lead().unwrap(), gj.lead().unwrap());
        let l = li.mono.lcm(&lj.mono);
        let mi = li.mono.quotient_of(&l).unwrap();
        let mj = lj.mono.quotient_of(&l).unwrap();
        let one = Rational::one();
        let s = Vector::default().sub_scaled(gi, &mi, &-one.clone(), self.order).sub_scaled(gj, &mj, &one, self.order);
        let h = reduce(s, &self.elements, &self.index, self.order, true, None);
        self.pending.remove(&(i, j));
        if !h.is_zero() {
            self.insert(h);
        }
    }
}

/// Drop elements with redundant leading terms, reduce tails, make monic.
fn interreduce(elements: Vec<Vector>, order: &ModuleOrder) -> Vec<Vector> {
    let leads: Vec<Term> = elements.iter().map(|v| v.lead().unwrap().clone()).collect();
    let keep: Vec<usize> = (0..elements.len())
        .filter(|&a| {
            !(0..elements.len()).any(|b| {
                b != a
                    && leads[b].pos == leads[a].pos
                    && leads[b].mono.divides(&leads[a].mono)
                    && (leads[b].mono != leads[a].mono || b < a)
            })
        })
        .collect();
    let mut kept: Vec<Vector> = keep.into_iter().map(|a| elements[a].clone()).collect();
    // Sort by leading term so the output is canonical.
    kept.sort_by(|a, b| order.cmp_terms(a.lead().unwrap(), b.lead().unwrap()));
    let mut out = Vec::with_capacity(kept.len());
    for a in 0..kept.len() {
        let others: Vec<Vector> = kept.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, v)| v.clone()).collect();
        let mut idx = LeadIndex::default();
        for (k, v) in others.iter().enumerate() {
            idx.insert(v.lead().unwrap().pos, k);
        }
        let mut v = kept[a].clone();
        let lead = v.terms.pop().unwrap();
        let mut tail = reduce(v, &others, &idx, order, true, None);
        tail.terms.push(lead);
        tail.make_monic();
        out.push(tail);
    }
    out
}

/// Minimal homogeneous generating subset of `gens` (zero elements dropped),
/// chosen greedily by degree.
pub fn minimal_generators(
    ring: &RingSpec,
    ambient: &GradedFreeModule,
    gens: &[ModuleElement],
    order: &ModuleOrder,
) -> Result<Vec<ModuleElement>> {
    let opts = BuchbergerOptions { chain_criterion: true, reduce: false };
    let c = buchberger_with(ring, ambient, gens, order, opts)?;
    Ok(c.minimal_generators.into_iter().map(|k| gens[k].clone()).collect())
}

/// Generators of `ker(A)` as a submodule of `A.source`, via an elimination
/// Gröbner basis of `{(A e_j, e_j)}` in `target ⊕ source`.
///
/// With `minimize`, the generators are pruned to a minimal generating set;
/// otherwise the full kernel part of the elimination basis is returned.
pub fn kernel_with(ring: &RingSpec, a: &GradedMatrix, order: MonomialOrder, minimize: bool) -> Result<Vec<ModuleElement>> {
    a.require_homogeneous(ring)?;
    let (n0, n1) = (a.rows(), a.cols());
    if n1 == 0 {
        return Ok(Vec::new());
    }
    let ambient = a.target().direct_sum(a.source());
    let gens: Vec<ModuleElement> = (0..n1)
        .map(|j| {
            let mut coords: Vec<Polynomial> = a.column(j).coords;
            coords.extend((0..n1).map(|k| if k == j { ring.one() } else { ring.zero() }));
            ModuleElement::new(coords)
        })
        .collect();
    let morder = ModuleOrder::pot(order);
    let opts = BuchbergerOptions { chain_criterion: true, reduce: false };
    let c = buchberger_with(ring, &ambient, &gens, &morder, opts)?;
    let kernel: Vec<ModuleElement> = c
        .basis
        .vectors()
        .iter()
        .filter(|v| v.lead().unwrap().pos >= n0)
        .map(|v| {
            let full = v.to_element(ring.r(), n0 + n1);
            debug_assert!(full.coords[..n0].iter().all(Polynomial::is_zero));
            ModuleElement::new(full.coords[n0..].to_vec())
        })
        .collect();
    if minimize {
        minimal_generators(ring, a.source(), &kernel, &ModuleOrder::pot(order))
    } else {
        Ok(kernel)
    }
}

/// Minimal homogeneous generators of `ker(A)`.
pub fn kernel(ring: &RingSpec, a: &GradedMatrix) -> Result<Vec<ModuleElement>> {
    kernel_with(ring, a, MonomialOrder::GRevLex, true)
}

/// `ker(A)` as the image of a matrix `K -> A.source`.
pub fn kernel_matrix(ring: &RingSpec, a: &GradedMatrix, order: MonomialOrder) -> Result<GradedMatrix> {
    let gens = kernel_with(ring, a, order, true)?;
    GradedMatrix::from_homogeneous_columns(ring, a.source().clone(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn ring(r: usize) -> RingSpec {
        RingSpec::new(r, 2).unwrap()
    }

    fn elem(r: &RingSpec, coords: &[&str]) -> ModuleElement {
        ModuleElement::new(coords.iter().map(|s| r.parse(s).unwrap()).collect())
    }

    #[test]
    fn membership_normal_forms() {
        let r = ring(1);
        let amb = GradedFreeModule::new(vec![0]);
        let g = buchberger(&r, &amb, &[elem(&r, &["t1"])], &ModuleOrder::default()).unwrap();
        assert!(g.normal_form(&elem(&r, &["t1"])).unwrap().is_zero());
        assert_eq!(g.normal_form(&elem(&r, &["1"])).unwrap(), elem(&r, &["1"]));
    }

    #[test]
    fn normal_form_rejects_bad_input() {
        let r = ring(2);
        let amb = GradedFreeModule::new(vec![0]);
        let g = buchberger(&r, &amb, &[elem(&r, &["t1"])], &ModuleOrder::default()).unwrap();
        assert!(matches!(g.normal_form(&elem(&r, &["t1", "t2"])), Err(Error::AmbientMismatch(_))));
        assert!(matches!(g.normal_form(&elem(&r, &["t1 + 1"])), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn monomial_ideal_basis() {
        let r = ring(2);
        let amb = GradedFreeModule::new(vec![0]);
        let g = buchberger(&r, &amb, &[elem(&r, &["t1"]), elem(&r, &["t2"])], &ModuleOrder::default()).unwrap();
        assert_eq!(g.elements(), vec![elem(&r, &["t2"]), elem(&r, &["t1"])]);
        assert!(g.verify_s_pairs() && g.verify_reduced());
    }

    #[test]
    fn single_koszul_column_is_its_own_basis() {
        let r = ring(2);
        let amb = GradedFreeModule::new(vec![2, 2]);
        let col = elem(&r, &["t2", "-t1"]);
        let g = buchberger(&r, &amb, std::slice::from_ref(&col), &ModuleOrder::default()).unwrap();
        assert_eq!(g.elements(), vec![col]);
    }

    #[test]
    fn inhomogeneous_generators_are_rejected() {
        let r = ring(2);
        let amb = GradedFreeModule::new(vec![0]);
        let res = buchberger(&r, &amb, &[elem(&r, &["t1 + t2^2"])], &ModuleOrder::default());
        assert!(matches!(res, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring(2);
        let amb = GradedFreeModule::new(vec![0]);
        let g = buchberger(&r, &amb, &[elem(&r, &["t1"]), elem(&r, &["t2"])], &ModuleOrder::default()).unwrap();
        let s = g.syzygies().unwrap();
        assert_eq!(s.cols(), 1);
        // basis order is (t2, t1): the syzygy is t1 e_0 - t2 e_1
        assert_eq!(s.column(0), elem(&r, &["t1", "-t2"]));
        assert!(g.matrix().compose(&s).unwrap().is_zero());
    }

    #[test]
    fn single_element_has_no_syzygies() {
        let r = ring(3);
        let amb = GradedFreeModule::new(vec![0, 0]);
        let g = buchberger(&r, &amb, &[elem(&r, &["t1^2", "t2*t3"])], &ModuleOrder::default()).unwrap();
        assert_eq!(g.syzygies().unwrap().cols(), 0);
    }

    #[test]
    fn kernel_of_a_row_of_variables() {
        let r = ring(2);
        let a = GradedMatrix::new(
            &r,
            GradedFreeModule::new(vec![2, 2]),
            GradedFreeModule::new(vec![0]),
            vec![vec![r.var(0), r.var(1)]],
        )
        .unwrap();
        let k = kernel(&r, &a).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(a.apply(v).is_zero());
        // unique up to scalar: (t2, -t1)
        let c = v.coords[0].coefficient(&Monomial::var(2, 1));
        assert_eq!(v.scale(&r.constant(c.recip())), elem(&r, &["t2", "-t1"]));
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let r = ring(2);
        let a = GradedMatrix::zero(&r, GradedFreeModule::new(vec![0, 3]), GradedFreeModule::new(vec![1]));
        let k = kernel(&r, &a).unwrap();
        assert_eq!(k, vec![elem(&r, &["1", "0"]), elem(&r, &["0", "1"])]);
    }

    #[test]
    fn chain_criterion_does_not_change_the_reduced_basis() {
        let r = ring(3);
        let amb = GradedFreeModule::new(vec![0]);
        let gens = [elem(&r, &["t1*t2 - t3^2"]), elem(&r, &["t1*t3 - t2^2"]), elem(&r, &["t2*t3 - t1^2"])];
        let with = buchberger_with(&r, &amb, &gens, &ModuleOrder::default(), BuchbergerOptions { chain_criterion: true, reduce: true }).unwrap();
        let without = buchberger_with(&r, &amb, &gens, &ModuleOrder::default(), BuchbergerOptions { chain_criterion: false, reduce: true }).unwrap();
        assert_eq!(with.basis.elements(), without.basis.elements());
        assert!(with.basis.verify_s_pairs());
    }

    #[test]
    fn minimal_generators_skip_redundant_inputs() {
        let r = ring(2);
        let amb = GradedFreeModule::new(vec![0]);
        let gens = [elem(&r, &["t1"]), elem(&r, &["t1*t2"]), elem(&r, &["t2"]), elem(&r, &["t1 + t2"])];
        let m = minimal_generators(&r, &amb, &gens, &ModuleOrder::default()).unwrap();
        assert_eq!(m, vec![elem(&r, &["t1"]), elem(&r, &["t2"])]);
    }

    #[test]
    fn division_reconstructs_input() {
        let r = ring(2);
        let amb = GradedFreeModule::new(vec![0, 2]);
        let gens = [elem(&r, &["t1", "1"]), elem(&r, &["t2^2", "t1"])];
        let g = buchberger(&r, &amb, &gens, &ModuleOrder::default()).unwrap();
        let f = elem(&r, &["t1^3 + t2^3", "t1*t2 + t2^2"]);
        let (q, rem) = g.divide(&f).unwrap();
        let mut acc = rem.clone();
        for (qk, gk) in q.iter().zip(g.elements()) {
            acc = acc.add(&gk.scale(qk));
        }
        assert_eq!(acc, f);
        let _ = rat(0);
    }

    #[test]
    fn field_coefficients_when_there_are_no_variables() {
        let r = RingSpec::new(0, 2).unwrap();
        let a = GradedMatrix::new(
            &r,
            GradedFreeModule::new(vec![0, 0, 0]),
            GradedFreeModule::new(vec![0, 0]),
            vec![
                vec![r.parse("1").unwrap(), r.parse("2").unwrap(), r.parse("3").unwrap()],
                vec![r.parse("2").unwrap(), r.parse("4").unwrap(), r.parse("6").unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(kernel(&r, &a).unwrap().len(), 2);
    }
}
