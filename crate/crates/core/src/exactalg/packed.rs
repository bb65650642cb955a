use std::collections::hash_map::Entry;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

use super::{FieldSpec, Monomial, Poly, Ring, Scalar, Variable};

/// Variables a packed monomial can hold.
pub const MAX_PACKED_VARS: usize = 32;

/// Largest exponent of a single variable in a packed monomial.
pub const MAX_PACKED_EXPONENT: u32 = 15;

const CARRY_BITS: u128 = 0x1111_1111_1111_1111_1111_1111_1111_1110;

/// Positions of at most [`MAX_PACKED_VARS`] variables.
#[derive(Debug, Clone)]
pub struct VarIndex {
    vars: Vec<Variable>,
    pos: FxHashMap<Variable, usize>,
}

impl VarIndex {
    pub fn new(vars: Vec<Variable>) -> Result<VarIndex> {
        if vars.len() > MAX_PACKED_VARS {
            return Err(Error::CapExceeded(format!("{} variables, packing holds {MAX_PACKED_VARS}", vars.len())));
        }
        let pos = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        Ok(VarIndex { vars, pos })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// A polynomial over GF(p) whose monomials are 4-bit exponent vectors in a
/// `u128`. Products whose exponents would exceed [`MAX_PACKED_EXPONENT`]
/// panic; callers bound the degree beforehand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedPoly {
    p: u32,
    terms: FxHashMap<u128, u32>,
}

fn modulus(field: FieldSpec) -> u32 {
    match field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => panic!("packed polynomials need a prime field"),
    }
}

impl PackedPoly {
    pub fn from_poly(f: &Poly, idx: &VarIndex) -> Result<PackedPoly> {
        let FieldSpec::Prime(p) = f.field() else {
            return Err(Error::SamplingOverRationals);
        };
        let mut terms = FxHashMap::default();
        for (m, c) in f.unsorted_terms() {
            let mut key = 0u128;
            for (v, e) in m.iter() {
                let i = *idx.pos.get(&v).ok_or(Error::InvalidVariable(format!("{v:?} not in the packing index")))?;
                if e > MAX_PACKED_EXPONENT {
                    return Err(Error::CapExceeded(format!("exponent {e} does not pack")));
                }
                key |= (e as u128) << (4 * i);
            }
            let Scalar::Residue { value, .. } = c else { unreachable!() };
            terms.insert(key, value);
        }
        Ok(PackedPoly { p, terms })
    }

    pub fn to_poly(&self, idx: &VarIndex) -> Poly {
        let field = FieldSpec::Prime(self.p);
        let terms = self.terms.iter().map(|(key, c)| {
            let m = Monomial::from_pairs(
                (0..idx.len())
                    .map(|i| (idx.vars[i], ((key >> (4 * i)) & 0xf) as u32))
                    .filter(|(_, e)| *e > 0),
            );
            (m, Scalar::Residue { value: *c, modulus: self.p })
        });
        Poly::from_terms(field, terms).expect("same field")
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    fn combine(&self, o: &PackedPoly, negate: bool) -> PackedPoly {
        let p = self.p;
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let c = if negate { (p - c) % p } else { *c };
            match terms.entry(*k) {
                Entry::Occupied(mut e) => {
                    let v = (*e.get() + c) % p;
                    if v == 0 {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        PackedPoly { p, terms }
    }
}

impl Ring for PackedPoly {
    fn zero(field: FieldSpec) -> Self {
        PackedPoly {
            p: modulus(field),
            terms: FxHashMap::default(),
        }
    }

    fn one(field: FieldSpec) -> Self {
        PackedPoly::from_scalar(&Scalar::one(field))
    }

    fn from_scalar(s: &Scalar) -> Self {
        let mut out = PackedPoly::zero(s.field());
        if let Scalar::Residue { value, .. } = s {
            if *value != 0 {
                out.terms.insert(0, *value);
            }
        }
        out
    }

    fn field(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = PackedPoly::zero(self.field());
        out.terms.reserve((self.terms.len() * o.terms.len()).min(1 << 20));
        out.add_product(self, o);
        out
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = self.p as u64;
        let (a, b) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka.checked_add(*kb).expect("packed exponent overflow");
                assert!((ka ^ kb ^ k) & CARRY_BITS == 0, "packed exponent overflow");
                let e = self.terms.entry(k).or_insert(0);
                *e = ((*e as u64 + *ca as u64 * *cb as u64) % p) as u32;
            }
        }
        self.terms.retain(|_, c| *c != 0);
    }

    fn neg(&self) -> Self {
        PackedPoly::zero(self.field()).sub(self)
    }
}
