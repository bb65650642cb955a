//! The free commutative ring on symbols `sigma_t(w)`, `w` a primitive word
//! up to equivalence, graded by multidegree.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};
use crate::wordalg::Word;

/// `sigma_t(w)` with `t >= 1` and `w` canonical and primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaSymbol {
    arg: Word,
    t: u32,
}

impl SigmaSymbol {
    pub fn new(t: u32, w: &Word) -> Result<SigmaSymbol> {
        if t == 0 {
            return Err(Error::InvalidArgument("symbols need t >= 1".to_string()));
        }
        if w.is_unity() {
            return Err(Error::EmptyWord("sigma symbol"));
        }
        if !w.is_primitive() {
            return Err(Error::NotPrimitive(w.to_string()));
        }
        Ok(SigmaSymbol {
            arg: w.canonical_class(),
            t,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn arg(&self) -> &Word {
        &self.arg
    }

    pub fn mdeg(&self, d: usize) -> Vec<u32> {
        self.arg.mdeg(d).into_iter().map(|m| m * self.t).collect()
    }
}

impl fmt::Display for SigmaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}({})", self.t, self.arg)
    }
}

/// A product of symbol powers; the empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SigmaMonomial(BTreeMap<SigmaSymbol, u32>);

impl SigmaMonomial {
    pub fn one() -> SigmaMonomial {
        SigmaMonomial::default()
    }

    pub fn symbol(s: SigmaSymbol) -> SigmaMonomial {
        SigmaMonomial(BTreeMap::from([(s, 1)]))
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (SigmaSymbol, u32)>) -> SigmaMonomial {
        let mut m = SigmaMonomial::one();
        for (s, e) in factors {
            if e > 0 {
                *m.0.entry(s).or_insert(0) += e;
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&SigmaSymbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn mul(&self, o: &SigmaMonomial) -> SigmaMonomial {
        let mut m = self.clone();
        for (s, e) in &o.0 {
            *m.0.entry(s.clone()).or_insert(0) += e;
        }
        m
    }

    pub fn mdeg(&self, d: usize) -> Vec<u32> {
        let mut v = vec![0; d];
        for (s, e) in &self.0 {
            for (acc, m) in v.iter_mut().zip(s.mdeg(d)) {
                *acc += m * e;
            }
        }
        v
    }

    /// Total degree `sum t * |w|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(s, e)| s.t * s.arg.len() as u32 * e).sum()
    }
}

impl fmt::Display for SigmaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An element of the symbol ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPoly {
    field: FieldSpec,
    terms: BTreeMap<SigmaMonomial, Scalar>,
}

impl SigmaPoly {
    pub fn zero(field: FieldSpec) -> SigmaPoly {
        SigmaPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> SigmaPoly {
        SigmaPoly::monomial(SigmaMonomial::one(), Scalar::one(field))
    }

    pub fn monomial(m: SigmaMonomial, c: Scalar) -> SigmaPoly {
        let mut p = SigmaPoly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `sigma_t(w)`, the unity for `t = 0`.
    pub fn symbol(field: FieldSpec, t: u32, w: &Word) -> Result<SigmaPoly> {
        if t == 0 {
            return Ok(SigmaPoly::one(field));
        }
        Ok(SigmaPoly::monomial(SigmaMonomial::symbol(SigmaSymbol::new(t, w)?), Scalar::one(field)))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SigmaMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SigmaMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    fn check(&self, o: &SigmaPoly) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field, o.field));
        }
        Ok(())
    }

    pub fn add_term(&mut self, m: SigmaMonomial, c: &Scalar) -> Result<()> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        let v = match self.terms.get(&m) {
            Some(old) => old.checked_add(c)?,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &SigmaPoly) -> Result<SigmaPoly> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &SigmaPoly) -> Result<SigmaPoly> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &SigmaPoly) -> Result<SigmaPoly> {
        self.check(o)?;
        let mut out = SigmaPoly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &c1.checked_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<SigmaPoly> {
        self.check(&SigmaPoly::zero(c.field()))?;
        let mut out = SigmaPoly::zero(self.field);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &v.checked_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> SigmaPoly {
        SigmaPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    /// Terms of multidegree exactly `delta`.
    pub fn component(&self, delta: &[u32]) -> SigmaPoly {
        let d = delta.len();
        SigmaPoly {
            field: self.field,
            terms: self.terms.iter().filter(|(m, _)| m.mdeg(d) == delta).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Decomposition into homogeneous components.
    pub fn components(&self, d: usize) -> BTreeMap<Vec<u32>, SigmaPoly> {
        let mut out: BTreeMap<Vec<u32>, SigmaPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.mdeg(d)).or_insert_with(|| SigmaPoly::zero(self.field)).terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// The common multidegree, if homogeneous and nonzero.
    pub fn mdeg(&self, d: usize) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|m| m.mdeg(d));
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    /// Symbols occurring anywhere.
    pub fn symbols(&self) -> Vec<SigmaSymbol> {
        let mut v: Vec<SigmaSymbol> = self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! sigma_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&SigmaPoly> for &SigmaPoly {
            type Output = SigmaPoly;
            fn $method(self, rhs: &SigmaPoly) -> SigmaPoly {
                self.$checked(rhs).expect("operands over different fields")
            }
        }
    };
}
sigma_binop!(Add, add, checked_add);
sigma_binop!(Sub, sub, checked_sub);
sigma_binop!(Mul, mul, checked_mul);
