//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Variables are the entries `x_ij(k)` of the generic matrices, the free
//! entries `y_ij` (`i < j`) of the generic skew-symmetric matrix and the
//! entries `z_ij` of a second generic matrix. Terms live in a hash map keyed
//! by sparse exponent vectors; canonical ordering is applied only when a
//! polynomial is rendered or listed.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};
use smallvec::SmallVec;

use super::field::{add_mod, mul_mod, neg_mod, FieldSpec, Rational, Scalar};
use crate::error::{Error, Result};

/// Variable family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Y,
    Z,
}

/// A polynomial variable, packed as `family | k | i | j` so that the derived
/// order is the global variable order (family, k, i, j).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable(u16);

const IDX_MAX: usize = 31;
const K_MAX: usize = 15;

impl Variable {
    /// `x_ij(k)`, all indices 1-based.
    pub fn x(i: usize, j: usize, k: usize) -> Result<Variable> {
        if !(1..=IDX_MAX).contains(&i) || !(1..=IDX_MAX).contains(&j) || !(1..=K_MAX).contains(&k) {
            return Err(Error::InvalidVariable(format!("x[{i}][{j}]({k})")));
        }
        Ok(Variable(((k as u16) << 10) | ((i as u16) << 5) | j as u16))
    }

    /// `y_ij` for `i < j`.
    pub fn y(i: usize, j: usize) -> Result<Variable> {
        if i >= j || i == 0 || j > IDX_MAX {
            return Err(Error::InvalidVariable(format!("y[{i}][{j}]")));
        }
        Ok(Variable((1 << 14) | ((i as u16) << 5) | j as u16))
    }

    pub fn z(i: usize, j: usize) -> Result<Variable> {
        if !(1..=IDX_MAX).contains(&i) || !(1..=IDX_MAX).contains(&j) {
            return Err(Error::InvalidVariable(format!("z[{i}][{j}]")));
        }
        Ok(Variable((2 << 14) | ((i as u16) << 5) | j as u16))
    }

    pub fn family(self) -> Family {
        match self.0 >> 14 {
            0 => Family::X,
            1 => Family::Y,
            _ => Family::Z,
        }
    }

    pub fn i(self) -> usize {
        ((self.0 >> 5) & 31) as usize
    }

    pub fn j(self) -> usize {
        (self.0 & 31) as usize
    }

    /// Matrix index `k` for `X` variables.
    pub fn k(self) -> Option<usize> {
        match self.family() {
            Family::X => Some(((self.0 >> 10) & 15) as usize),
            _ => None,
        }
    }

    fn from_raw(raw: u16) -> Variable {
        Variable(raw)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family() {
            Family::X => write!(f, "x[{}][{}]({})", self.i(), self.j(), self.k().unwrap_or(0)),
            Family::Y => write!(f, "y[{}][{}]", self.i(), self.j()),
            Family::Z => write!(f, "z[{}][{}]", self.i(), self.j()),
        }
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A power product, stored as sorted `(variable << 16) | exponent` words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Variable) -> Monomial {
        Self::power(v, 1)
    }

    pub fn power(v: Variable, e: u32) -> Monomial {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push(((v.0 as u32) << 16) | e);
        }
        Monomial(m)
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Monomial {
        let mut acc = Monomial::one();
        for (v, e) in pairs {
            acc = acc.mul(&Monomial::power(v, e));
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.0.iter().map(|w| (Variable::from_raw((w >> 16) as u16), w & 0xffff))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|w| w & 0xffff).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.iter().find(|(u, _)| *u == v).map_or(0, |(_, e)| e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out: SmallVec<[u32; 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, vb) = (a[i] >> 16, b[j] >> 16);
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i] + (b[j] & 0xffff));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Total `X`-degree per matrix index `k = 1..=d`.
    pub fn x_multidegree(&self, d: usize) -> Vec<u32> {
        let mut out = vec![0; d];
        for (v, e) in self.iter() {
            if let Some(k) = v.k() {
                if k >= 1 && k <= d {
                    out[k - 1] += e;
                }
            }
        }
        out
    }

    /// Degree in the variables of one family.
    pub fn family_degree(&self, family: Family) -> u32 {
        self.iter().filter(|(v, _)| v.family() == family).map(|(_, e)| e).sum()
    }

    /// Graded lexicographic comparison.
    pub fn grlex_cmp(&self, o: &Monomial) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(o.0.iter()) {
                let (vx, vy) = (x >> 16, y >> 16);
                if vx != vy {
                    // the monomial containing the earlier variable is larger
                    return vy.cmp(&vx);
                }
                let (ex, ey) = (x & 0xffff, y & 0xffff);
                if ex != ey {
                    return ex.cmp(&ey);
                }
            }
            self.0.len().cmp(&o.0.len())
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type TermMap<C> = FxHashMap<Monomial, C>;

trait CoeffOps {
    type C: Clone + PartialEq;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add_assign(&self, acc: &mut Self::C, c: &Self::C);
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
}

struct QOps;
struct POps(u32);

impl CoeffOps for QOps {
    type C = Rational;
    fn is_zero(&self, c: &Rational) -> bool {
        c.is_zero()
    }
    fn add_assign(&self, acc: &mut Rational, c: &Rational) {
        *acc = acc.add(c);
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
}

impl CoeffOps for POps {
    type C = u32;
    fn is_zero(&self, c: &u32) -> bool {
        *c == 0
    }
    fn add_assign(&self, acc: &mut u32, c: &u32) {
        *acc = add_mod(*acc, *c, self.0);
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        mul_mod(*a, *b, self.0)
    }
    fn neg(&self, a: &u32) -> u32 {
        neg_mod(*a, self.0)
    }
}

fn add_maps<O: CoeffOps>(ops: &O, a: &TermMap<O::C>, b: &TermMap<O::C>, negate_b: bool) -> TermMap<O::C> {
    let mut out = a.clone();
    for (m, c) in b {
        let c = if negate_b { ops.neg(c) } else { c.clone() };
        match out.entry(m.clone()) {
            Entry::Occupied(mut e) => {
                ops.add_assign(e.get_mut(), &c);
                if ops.is_zero(e.get()) {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }
    out
}

fn mul_maps<O: CoeffOps>(ops: &O, a: &TermMap<O::C>, b: &TermMap<O::C>) -> TermMap<O::C> {
    let mut out: TermMap<O::C> = FxHashMap::default();
    out.reserve((a.len() * b.len()).min(1 << 20));
    mul_into(ops, &mut out, a, b);
    out
}

/// `out += a * b`, dropping cancelled terms.
fn mul_into<O: CoeffOps>(ops: &O, out: &mut TermMap<O::C>, a: &TermMap<O::C>, b: &TermMap<O::C>) {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    for (ma, ca) in a {
        for (mb, cb) in b {
            let c = ops.mul(ca, cb);
            match out.entry(ma.mul(mb)) {
                Entry::Occupied(mut e) => ops.add_assign(e.get_mut(), &c),
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
    }
    out.retain(|_, c| !ops.is_zero(c));
}

fn scale_map<O: CoeffOps>(ops: &O, a: &TermMap<O::C>, s: &O::C) -> TermMap<O::C> {
    if ops.is_zero(s) {
        return FxHashMap::default();
    }
    a.iter().map(|(m, c)| (m.clone(), ops.mul(c, s))).collect()
}

#[derive(Clone, PartialEq)]
enum Terms {
    Q(TermMap<Rational>),
    P(TermMap<u32>),
}

/// A sparse polynomial with exact coefficients. No stored coefficient is zero.
#[derive(Clone, PartialEq)]
pub struct Poly {
    field: FieldSpec,
    terms: Terms,
}

impl Eq for Poly {}

macro_rules! binary {
    ($self:expr, $other:expr, |$ops:ident, $a:ident, $b:ident| $body:expr) => {{
        if $self.field != $other.field {
            return Err(Error::FieldMismatch($self.field, $other.field));
        }
        let terms = match (&$self.terms, &$other.terms, $self.field) {
            (Terms::Q($a), Terms::Q($b), _) => {
                let $ops = QOps;
                Terms::Q($body)
            }
            (Terms::P($a), Terms::P($b), FieldSpec::Prime(p)) => {
                let $ops = POps(p);
                Terms::P($body)
            }
            _ => unreachable!("term storage always matches the field"),
        };
        Ok(Poly { field: $self.field, terms })
    }};
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Poly {
        let terms = match field {
            FieldSpec::Rationals => Terms::Q(FxHashMap::default()),
            FieldSpec::Prime(_) => Terms::P(FxHashMap::default()),
        };
        Poly { field, terms }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Self::constant(&Scalar::one(field))
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Poly {
        Self::constant(&Scalar::from_i64(field, v))
    }

    pub fn constant(c: &Scalar) -> Poly {
        Self::term(Monomial::one(), c)
    }

    pub fn var(field: FieldSpec, v: Variable) -> Poly {
        Self::term(Monomial::var(v), &Scalar::one(field))
    }

    /// The single term `c * m` (or zero).
    pub fn term(m: Monomial, c: &Scalar) -> Poly {
        let mut p = Poly::zero(c.field());
        if !c.is_zero() {
            match (&mut p.terms, c) {
                (Terms::Q(t), Scalar::Rational(r)) => {
                    t.insert(m, r.clone());
                }
                (Terms::P(t), Scalar::Residue { value, .. }) => {
                    t.insert(m, *value);
                }
                _ => unreachable!(),
            }
        }
        p
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Poly> {
        let mut acc = Poly::zero(field);
        for (m, c) in terms {
            acc = acc.checked_add(&Poly::term(m, &c))?;
        }
        Ok(acc)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    pub fn len(&self) -> usize {
        match &self.terms {
            Terms::Q(t) => t.len(),
            Terms::P(t) => t.len(),
        }
    }

    fn wrap(&self, c: &u32) -> Scalar {
        Scalar::Residue {
            value: *c,
            modulus: self.field.characteristic(),
        }
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> Vec<(Monomial, Scalar)> {
        let mut out: Vec<(Monomial, Scalar)> = match &self.terms {
            Terms::Q(t) => t.iter().map(|(m, c)| (m.clone(), Scalar::Rational(c.clone()))).collect(),
            Terms::P(t) => t.iter().map(|(m, c)| (m.clone(), self.wrap(c))).collect(),
        };
        out.sort_by(|a, b| b.0.grlex_cmp(&a.0));
        out
    }

    /// Terms in storage order (unsorted).
    pub fn unsorted_terms(&self) -> Vec<(Monomial, Scalar)> {
        match &self.terms {
            Terms::Q(t) => t.iter().map(|(m, c)| (m.clone(), Scalar::Rational(c.clone()))).collect(),
            Terms::P(t) => t.iter().map(|(m, c)| (m.clone(), self.wrap(c))).collect(),
        }
    }

    /// Unordered iteration over monomials.
    pub fn monomials(&self) -> Vec<&Monomial> {
        match &self.terms {
            Terms::Q(t) => t.keys().collect(),
            Terms::P(t) => t.keys().collect(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        match &self.terms {
            Terms::Q(t) => Scalar::Rational(t.get(m).cloned().unwrap_or(Rational::ZERO)),
            Terms::P(t) => self.wrap(t.get(m).unwrap_or(&0)),
        }
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.len() {
            0 => Some(Scalar::zero(self.field)),
            1 => {
                let one = Monomial::one();
                let c = self.coefficient(&one);
                (!c.is_zero()).then_some(c)
            }
            _ => None,
        }
    }

    pub fn checked_add(&self, o: &Poly) -> Result<Poly> {
        binary!(self, o, |ops, a, b| if a.len() >= b.len() {
            add_maps(&ops, a, b, false)
        } else {
            add_maps(&ops, b, a, false)
        })
    }

    pub fn checked_sub(&self, o: &Poly) -> Result<Poly> {
        binary!(self, o, |ops, a, b| add_maps(&ops, a, b, true))
    }

    pub fn checked_mul(&self, o: &Poly) -> Result<Poly> {
        binary!(self, o, |ops, a, b| mul_maps(&ops, a, b))
    }

    /// In-place `self += a * b`.
    pub fn add_product_assign(&mut self, a: &Poly, b: &Poly) -> Result<()> {
        if self.field != a.field || self.field != b.field {
            return Err(Error::FieldMismatch(self.field, if self.field != a.field { a.field } else { b.field }));
        }
        match (&mut self.terms, &a.terms, &b.terms, self.field) {
            (Terms::Q(o), Terms::Q(x), Terms::Q(y), _) => mul_into(&QOps, o, x, y),
            (Terms::P(o), Terms::P(x), Terms::P(y), FieldSpec::Prime(p)) => mul_into(&POps(p), o, x, y),
            _ => unreachable!(),
        }
        Ok(())
    }

    /// In-place `self += o`.
    pub fn add_assign(&mut self, o: &Poly) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field, o.field));
        }
        match (&mut self.terms, &o.terms, self.field) {
            (Terms::Q(a), Terms::Q(b), _) => accumulate(&QOps, a, b),
            (Terms::P(a), Terms::P(b), FieldSpec::Prime(p)) => accumulate(&POps(p), a, b),
            _ => unreachable!(),
        }
        Ok(())
    }

    pub fn scale(&self, s: &Scalar) -> Result<Poly> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field, s.field()));
        }
        let terms = match (&self.terms, s) {
            (Terms::Q(a), Scalar::Rational(r)) => Terms::Q(scale_map(&QOps, a, r)),
            (Terms::P(a), Scalar::Residue { value, modulus }) => Terms::P(scale_map(&POps(*modulus), a, value)),
            _ => unreachable!(),
        };
        Ok(Poly { field: self.field, terms })
    }

    pub fn neg(&self) -> Poly {
        let terms = match (&self.terms, self.field) {
            (Terms::Q(a), _) => Terms::Q(a.iter().map(|(m, c)| (m.clone(), c.neg())).collect()),
            (Terms::P(a), FieldSpec::Prime(p)) => Terms::P(a.iter().map(|(m, c)| (m.clone(), neg_mod(*c, p))).collect()),
            _ => unreachable!(),
        };
        Poly { field: self.field, terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.monomials().iter().map(|m| m.degree()).max()
    }

    /// Variables occurring in the polynomial, in the global order.
    pub fn variables(&self) -> Vec<Variable> {
        let mut set = FxHashSet::default();
        for m in self.monomials() {
            for (v, _) in m.iter() {
                set.insert(v);
            }
        }
        let mut out: Vec<Variable> = set.into_iter().collect();
        out.sort();
        out
    }

    /// The common `X`-multidegree of all terms, if the polynomial is
    /// multihomogeneous (`Some(vec![0; d])` for constants, `None` for zero).
    pub fn x_multidegree(&self, d: usize) -> Option<Vec<u32>> {
        let mut it = self.monomials().into_iter().map(|m| m.x_multidegree(d));
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    /// The multihomogeneous components, keyed by `X`-multidegree.
    pub fn x_components(&self, d: usize) -> Vec<(Vec<u32>, Poly)> {
        let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<(Monomial, Scalar)>> = Default::default();
        for (m, c) in self.terms() {
            groups.entry(m.x_multidegree(d)).or_default().push((m, c));
        }
        groups
            .into_iter()
            .map(|(k, ts)| (k, Poly::from_terms(self.field, ts).expect("same field")))
            .collect()
    }

    /// Image under the ring homomorphism sending each variable `v` to
    /// `assign(v)`. Every variable of `self` must be assigned, and all images
    /// must live in `self`'s field.
    pub fn substitute<'a, F>(&self, assign: F) -> Result<Poly>
    where
        F: Fn(Variable) -> Option<&'a Poly>,
    {
        let mut powers: FxHashMap<(Variable, u32), Poly> = FxHashMap::default();
        let mut acc = Poly::zero(self.field);
        for (m, c) in self.unsorted_terms() {
            let mut term = Poly::constant(&c);
            for (v, e) in m.iter() {
                let image = assign(v).ok_or(Error::Unassigned(v))?;
                if image.field != self.field {
                    return Err(Error::FieldMismatch(self.field, image.field));
                }
                let pw = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                term = term.checked_mul(pw)?;
                if term.is_zero() {
                    break;
                }
            }
            acc.add_assign(&term)?;
        }
        Ok(acc)
    }

    /// Like [`Poly::substitute`] but variables without an image are kept.
    pub fn substitute_partial<'a, F>(&self, assign: F) -> Result<Poly>
    where
        F: Fn(Variable) -> Option<&'a Poly>,
    {
        let keep: FxHashMap<Variable, Poly> = self
            .variables()
            .into_iter()
            .filter(|v| assign(*v).is_none())
            .map(|v| (v, Poly::var(self.field, v)))
            .collect();
        self.substitute(|v| assign(v).or_else(|| keep.get(&v)))
    }

    /// Reduces a rational polynomial modulo `p`; fails if a denominator
    /// vanishes mod `p`.
    pub fn reduce_mod(&self, field: FieldSpec) -> Result<Poly> {
        if self.field == field {
            return Ok(self.clone());
        }
        let Terms::Q(t) = &self.terms else {
            return Err(Error::FieldMismatch(self.field, field));
        };
        let mut out = Poly::zero(field);
        for (m, c) in t {
            out.add_assign(&Poly::term(m.clone(), &Scalar::from_rational(field, c)?))?;
        }
        Ok(out)
    }

    /// First term in canonical order, rendered; `None` for zero.
    pub fn leading_term_string(&self) -> Option<String> {
        self.terms().into_iter().next().map(|(m, c)| render_term(&m, &c, true))
    }
}

fn accumulate<O: CoeffOps>(ops: &O, a: &mut TermMap<O::C>, b: &TermMap<O::C>) {
    for (m, c) in b {
        match a.entry(m.clone()) {
            Entry::Occupied(mut e) => {
                ops.add_assign(e.get_mut(), c);
                if ops.is_zero(e.get()) {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }
}

fn render_term(m: &Monomial, c: &Scalar, first: bool) -> String {
    let negative = c.is_negative() && c.as_rational().is_some();
    let magnitude = if negative { c.neg() } else { c.clone() };
    let sign = match (first, negative) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    if m.is_one() {
        format!("{sign}{magnitude}")
    } else if magnitude.is_one() {
        format!("{sign}{m}")
    } else {
        format!("{sign}{magnitude}*{m}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().iter().enumerate() {
            write!(f, "{}", render_term(m, c, idx == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial operands from different fields")
            }
        }
    };
}
poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn x(i: usize, j: usize, k: usize, f: FieldSpec) -> Poly {
        Poly::var(f, Variable::x(i, j, k).unwrap())
    }

    #[test]
    fn difference_of_squares() {
        let a = x(1, 1, 1, q());
        let b = x(1, 2, 1, q());
        let lhs = &(&a + &b) * &(&a - &b);
        let rhs = &(&a * &a) - &(&b * &b);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x[1][1](1)^2 - x[1][2](1)^2");
    }

    #[test]
    fn characteristic_kills_coefficient() {
        let f = FieldSpec::prime(3).unwrap();
        let p = x(1, 1, 1, f).scale(&Scalar::from_i64(f, 3)).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn additive_inverse() {
        let p = &(&x(1, 1, 1, q()) * &x(2, 1, 2, q())) + &Poly::from_i64(q(), 5);
        let s = p.scale(&Scalar::from_i64(q(), -1)).unwrap();
        assert!((&p + &s).is_zero());
    }

    #[test]
    fn mixed_field_rejected() {
        let a = Poly::one(q());
        let b = Poly::one(FieldSpec::prime(7).unwrap());
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.checked_mul(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn substitution_of_skew_entry() {
        let y12 = Variable::y(1, 2).unwrap();
        let f = Poly::var(q(), y12);
        let image = &Poly::var(q(), Variable::z(1, 2).unwrap()) - &Poly::var(q(), Variable::z(2, 1).unwrap());
        let out = f.substitute(|v| (v == y12).then_some(&image)).unwrap();
        assert_eq!(out, image);
        assert_eq!(out.to_string(), "z[1][2] - z[2][1]");
    }

    #[test]
    fn substitution_identity_and_zero() {
        let v = Variable::x(1, 1, 1).unwrap();
        let f = x(1, 1, 1, q()).pow(2);
        let same = Poly::var(q(), v);
        assert_eq!(f.substitute(|u| (u == v).then_some(&same)).unwrap(), f);
        let zero = Poly::zero(q());
        assert!(f.substitute(|u| (u == v).then_some(&zero)).unwrap().is_zero());
    }

    #[test]
    fn substitution_requires_all_variables() {
        let f = &x(1, 1, 1, q()) + &x(1, 2, 1, q());
        let one = Poly::one(q());
        let v = Variable::x(1, 1, 1).unwrap();
        let err = f.substitute(|u| (u == v).then_some(&one)).unwrap_err();
        assert_eq!(err, Error::Unassigned(Variable::x(1, 2, 1).unwrap()));
    }

    #[test]
    fn variable_order_and_syntax() {
        let a = Variable::x(2, 1, 1).unwrap();
        let b = Variable::x(1, 1, 2).unwrap();
        let c = Variable::y(1, 2).unwrap();
        let d = Variable::z(1, 1).unwrap();
        assert!(a < b && b < c && c < d);
        assert_eq!(b.to_string(), "x[1][1](2)");
        assert_eq!(c.to_string(), "y[1][2]");
        assert!(Variable::y(2, 1).is_err());
        assert!(Variable::y(1, 1).is_err());
    }

    #[test]
    fn multidegree_per_term() {
        let p = &(&x(1, 1, 1, q()) * &x(1, 2, 2, q())) * &x(2, 2, 2, q());
        assert_eq!(p.x_multidegree(2), Some(vec![1, 2]));
        let mixed = &p + &x(1, 1, 1, q());
        assert_eq!(mixed.x_multidegree(2), None);
        assert_eq!(mixed.x_components(2).len(), 2);
    }

    #[test]
    fn grlex_rendering_is_deterministic() {
        let p = &(&x(2, 2, 1, q()) + &x(1, 1, 1, q()).pow(2)) + &Poly::from_i64(q(), -3);
        assert_eq!(p.to_string(), "x[1][1](1)^2 + x[2][2](1) - 3");
    }
}
