//! The graded polynomial ring `k[t1..tr]` over the rationals, with every
//! variable in degree `d`.
//!
//! Coefficients are exact big rationals. Polynomials are sparse maps from
//! exponent vectors to nonzero coefficients; no zero coefficient is ever
//! stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Number of variables, their common degree and display names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    r: usize,
    d: u32,
    names: Vec<String>,
}

impl RingSpec {
    /// `k[t1..tr]` with variables of degree `d`.
    pub fn new(r: usize, d: u32) -> Result<Self> {
        let names = (1..=r).map(|i| format!("t{i}")).collect();
        Self::with_names(r, d, names)
    }

    pub fn with_names(r: usize, d: u32, names: Vec<String>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidRing("variable degree must be at least 1".into()));
        }
        if names.len() != r {
            return Err(Error::InvalidRing(format!(
                "expected {r} variable names, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable name {n:?}")));
            }
        }
        Ok(RingSpec { r, d, names })
    }

    /// The ring used by every topological fixture: `H^*(BT)` with `deg t_i = 2`.
    pub fn equivariant(r: usize) -> Self {
        Self::new(r, 2).expect("valid ring")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn var_degree(&self) -> i64 {
        i64::from(self.d)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.r)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self.r, rat(1))
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(self.r, c)
    }

    /// The variable `t_{i+1}` (zero-based index).
    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(Monomial::var(self.r, i), rat(1))
    }

    /// Ring degree of a monomial: `d` times its total exponent.
    pub fn degree_of(&self, m: &Monomial) -> i64 {
        self.var_degree() * m.total() as i64
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self.r != other.r || self.d != other.d {
            return Err(Error::RingMismatch(format!(
                "k[{} vars, deg {}] vs k[{} vars, deg {}]",
                self.r, self.d, other.r, other.d
            )));
        }
        Ok(())
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse(self, s)
    }

    /// All monomials of total exponent `n`, in descending grevlex order.
    pub fn monomials_of_total(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.r];
        fill_monomials(&mut cur, 0, n, &mut out);
        out.sort_by(|a, b| MonomialOrder::GRevLex.cmp(b, a));
        out
    }
}

fn fill_monomials(cur: &mut Vec<u16>, at: usize, left: u32, out: &mut Vec<Monomial>) {
    if at == cur.len() {
        if left == 0 {
            out.push(Monomial(cur.iter().copied().collect()));
        }
        return;
    }
    if at + 1 == cur.len() {
        cur[at] = left as u16;
        out.push(Monomial(cur.iter().copied().collect()));
        cur[at] = 0;
        return;
    }
    for e in 0..=left {
        cur[at] = e as u16;
        fill_monomials(cur, at + 1, left - e, out);
    }
    cur[at] = 0;
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector.
///
/// The derived `Ord` is plain lexicographic on exponents and only serves as
/// a map key; term orders live in [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(SmallVec<[u16; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(exps.iter().copied().collect())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Degree-compatible term orders on monomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    GRevLex,
    /// Graded lexicographic.
    GLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        let by_degree = a.total().cmp(&b.total());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        match self {
            MonomialOrder::GLex => a.0.cmp(&b.0),
            MonomialOrder::GRevLex => {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        // smaller exponent in the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GRevLex => "grevlex",
            MonomialOrder::GLex => "grlex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::GRevLex),
            "grlex" | "glex" => Ok(MonomialOrder::GLex),
            other => Err(Error::Format(format!("unknown monomial order {other:?}"))),
        }
    }
}

/// Which binary operation [`Polynomial::apply`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    /// Ring degree shared by all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self, d: i64) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| d * m.total() as i64);
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Exact binary operation, refusing operands from different rings.
    pub fn apply(&self, other: &Polynomial, op: PolyOp) -> Result<Polynomial> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(match op {
            PolyOp::Add => self.add_impl(other, false),
            PolyOp::Sub => self.add_impl(other, true),
            PolyOp::Mul => self.mul_impl(other),
        })
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Divide by a monomial exactly; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut out = Polynomial::zero(self.nvars);
        for (k, c) in &self.terms {
            out.terms.insert(m.quotient_of(k)?, c.clone());
        }
        Some(out)
    }

    /// Render with the ring's variable names, terms in descending grevlex.
    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names: ring.names() }
    }

    pub fn parse(ring: &RingSpec, s: &str) -> Result<Polynomial> {
        Parser { ring, src: s.as_bytes(), pos: 0 }.polynomial()
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.apply(rhs, $op).expect("polynomials from the same ring")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, PolyOp::Add);
forward_op!(Sub, sub, PolyOp::Sub);
forward_op!(Mul, mul, PolyOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.sorted_terms(MonomialOrder::GRevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.names[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a RingSpec,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut out = self.ring.zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return self.err(format!("expected '+' or '-', found {:?}", c as char)),
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, c * rat(sign));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = rat(1);
        let mut mono = Monomial::one(self.ring.r());
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let mut value = Rational::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return self.err("zero denominator");
                        }
                        value /= Rational::from_integer(den);
                    }
                    coeff *= value;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let Some(idx) = self.ring.names().iter().position(|n| n == name) else {
                        self.pos = start;
                        return self.err(format!("unknown variable {name:?}"));
                    };
                    let mut e = 1u16;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let n = self.integer()?;
                        e = u16::try_from(&n).or_else(|_| self.err("exponent too large"))?;
                    }
                    mono = mono.mul(&{
                        let mut v = Monomial::one(self.ring.r());
                        v.0[idx] = e;
                        v
                    });
                }
                _ => return self.err("expected coefficient or variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            return Ok((mono, coeff));
        }
    }
}
