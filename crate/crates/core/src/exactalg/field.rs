//! Coefficient fields: the rationals and prime fields of odd characteristic.

use std::fmt;
use std::str::FromStr;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    /// A prime field; `p` must be an odd prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn is_prime_field(self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Short tag used in reports and cache keys: `q` or `gf7`.
    pub fn tag(self) -> String {
        match self {
            FieldSpec::Rationals => "q".to_string(),
            FieldSpec::Prime(p) => format!("gf{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `Q`, `gf:7`, `gf7` and `GF(7)`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" || lower == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = lower
            .strip_prefix("gf")
            .map(|rest| rest.trim_start_matches(':').trim_start_matches('(').trim_end_matches(')'));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected `q` or `gf:<p>`".to_string(),
            }),
        }
    }
}

/// An exact rational number. Values that are integers fitting in `i64` use
/// the machine-word representation; everything else is an `RBig` in lowest
/// terms. The representation is canonical, so derived equality is value
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Int(i64),
    Big(RBig),
}

impl Rational {
    pub const ZERO: Rational = Rational::Int(0);
    pub const ONE: Rational = Rational::Int(1);

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(RBig::from_parts(IBig::from(num) * IBig::from(den.signum()), UBig::from(den.unsigned_abs()))))
    }

    fn from_big(r: RBig) -> Self {
        if *r.denominator() == UBig::ONE {
            if let Ok(v) = i64::try_from(r.numerator().clone()) {
                return Rational::Int(v);
            }
        }
        Rational::Big(r)
    }

    fn to_big(&self) -> RBig {
        match self {
            Rational::Int(v) => RBig::from(*v),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Int(0))
    }

    pub fn add(&self, o: &Rational) -> Rational {
        if let (Rational::Int(a), Rational::Int(b)) = (self, o) {
            if let Some(s) = a.checked_add(*b) {
                return Rational::Int(s);
            }
        }
        Self::from_big(self.to_big() + o.to_big())
    }

    pub fn mul(&self, o: &Rational) -> Rational {
        if let (Rational::Int(a), Rational::Int(b)) = (self, o) {
            if let Some(s) = a.checked_mul(*b) {
                return Rational::Int(s);
            }
        }
        Self::from_big(self.to_big() * o.to_big())
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Int(a) => match a.checked_neg() {
                Some(v) => Rational::Int(v),
                None => Self::from_big(-RBig::from(*a)),
            },
            Rational::Big(r) => Self::from_big(-r.clone()),
        }
    }

    pub fn inv(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(RBig::ONE / self.to_big()))
    }

    /// Residue modulo `p`, or `None` when the denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u32) -> Option<u32> {
        match self {
            Rational::Int(v) => Some(v.rem_euclid(p as i64) as u32),
            Rational::Big(r) => {
                let pb = IBig::from(p);
                let num = i64::try_from(r.numerator() % &pb).ok()?.rem_euclid(p as i64) as u32;
                let den = u32::try_from(IBig::from(r.denominator().clone()) % &pb).ok()?;
                if den == 0 {
                    return None;
                }
                Some(mul_mod(num, inv_mod(den, p)?, p))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Int(v) => write!(f, "{v}"),
            Rational::Big(r) if *r.denominator() == UBig::ONE => write!(f, "{}", r.numerator()),
            Rational::Big(r) => write!(f, "{}/{}", r.numerator(), r.denominator()),
        }
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        return None;
    }
    // Fermat: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    Some(acc as u32)
}

/// An element of a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rational(Rational::Int(v)),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// The image of `num/den`; fails when `den` vanishes in the field.
    pub fn from_ratio(field: FieldSpec, num: i64, den: i64) -> Result<Self> {
        let r = Rational::new(num, den)?;
        Self::from_rational(field, &r)
    }

    pub fn from_rational(field: FieldSpec, r: &Rational) -> Result<Self> {
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rational(r.clone())),
            FieldSpec::Prime(p) => r
                .reduce_mod(p)
                .map(|value| Scalar::Residue { value, modulus: p })
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => *r == Rational::ONE,
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, o: &Scalar) -> Result<()> {
        if self.field() == o.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), o.field()))
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.add(b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: add_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.mul(b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.neg()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: neg_mod(*value, *modulus),
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) => Ok(Scalar::Rational(a.inv()?)),
            Scalar::Residue { value, modulus } => inv_mod(*value, *modulus)
                .map(|value| Scalar::Residue { value, modulus: *modulus })
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Coefficient as a rational when the field is `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// True for "negative" values: negative rationals, and residues above p/2.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(Rational::Int(v)) => *v < 0,
            Scalar::Rational(Rational::Big(r)) => r.numerator() < &IBig::ZERO,
            Scalar::Residue { value, modulus } => *value > modulus / 2,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from different fields")
            }
        }
    };
}
scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
