//! Square matrices over a [`Ring`]: generic matrices, the skew form `J`,
//! ordinary and symplectic transposes.

mod charpoly;
mod sample;
mod skew;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use charpoly::{compound_matrix, sigma_coeffs, sigma_coeffs_upto, sigma_of_product, SigmaVector};
pub use sample::{sample_group_element, GroupSampler};
pub use skew::skew_congruence_witness;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Poly, Ring, Scalar, ScalarMatrix, Variable};

/// The classical groups acting by simultaneous conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Gl,
    O,
    Sp,
}

impl Group {
    /// How a transposed letter is realized; `None` for GL, where `a^T = a`.
    pub fn transpose_kind(self) -> Option<TransposeKind> {
        match self {
            Group::Gl => None,
            Group::O => Some(TransposeKind::Ordinary),
            Group::Sp => Some(TransposeKind::Symplectic),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Group::Gl => "gl",
            Group::O => "o",
            Group::Sp => "sp",
        }
    }

    /// Checks the size and characteristic restrictions of the group.
    pub fn validate(self, n: usize, field: FieldSpec) -> Result<()> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if self == Group::Sp && n % 2 == 1 {
            return Err(Error::OddSize(n));
        }
        if self != Group::Gl && field.characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        Ok(())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Gl => "GL",
            Group::O => "O",
            Group::Sp => "Sp",
        })
    }
}

impl std::str::FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Group::Gl),
            "o" => Ok(Group::O),
            "sp" => Ok(Group::Sp),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected gl, o or sp".to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransposeKind {
    Ordinary,
    Symplectic,
}

/// Which generic matrix to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFamily {
    /// `X_k = (x_ij(k))`.
    X(usize),
    /// Skew-symmetric with `y_ij` above the diagonal.
    Y,
    /// `Z = (z_ij)`.
    Z,
}

/// A dense `n x n` matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    n: usize,
    field: FieldSpec,
    entries: Vec<T>,
}

pub type MatPoly = Mat<Poly>;
pub type MatScalar = Mat<Scalar>;

impl<T: Ring> Mat<T> {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Mat {
            n,
            field,
            entries: vec![T::zero(field); n * n],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::scalar(&Scalar::one(field), n)
    }

    /// `c * E`.
    pub fn scalar(c: &Scalar, n: usize) -> Self {
        let mut m = Self::zero(c.field(), n);
        for i in 0..n {
            m.entries[i * n + i] = T::from_scalar(c);
        }
        m
    }

    /// Row-major entries.
    pub fn from_entries(field: FieldSpec, n: usize, entries: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(entries.len(), n * n));
        }
        if let Some(e) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field, e.field()));
        }
        Ok(Mat { n, field, entries })
    }

    pub fn from_fn(field: FieldSpec, n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let entries = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Mat { n, field, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::SizeMismatch(self.n, o.n));
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field, o.field));
        }
        Ok(())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.n;
        let mut out = Self::zero(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx].add_product(a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect();
        Ok(Mat { n: self.n, field: self.field, entries })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect();
        Ok(Mat { n: self.n, field: self.field, entries })
    }

    pub fn neg(&self) -> Self {
        Mat {
            n: self.n,
            field: self.field,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let c = T::from_scalar(c);
        Mat {
            n: self.n,
            field: self.field,
            entries: self.entries.iter().map(|e| e.mul(&c)).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(self.field), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.n, |i, j| self.get(j, i).clone())
    }

    /// `A* = -J A^T J`, computed through the signed permutation that `J` is.
    pub fn symplectic_transpose(&self) -> Result<Self> {
        let n = self.n;
        if n % 2 == 1 {
            return Err(Error::OddSize(n));
        }
        let h = n / 2;
        // row i of J holds its only nonzero entry s(i) in column c(i)
        let c = |i: usize| if i < h { i + h } else { i - h };
        let s_positive = |i: usize| i < h;
        Ok(Self::from_fn(self.field, n, |i, j| {
            let e = self.get(c(j), c(i));
            // -s(i) s(c(j))
            if s_positive(i) == s_positive(c(j)) {
                e.neg()
            } else {
                e.clone()
            }
        }))
    }

    pub fn transpose_as(&self, kind: TransposeKind) -> Result<Self> {
        match kind {
            TransposeKind::Ordinary => Ok(self.transpose()),
            TransposeKind::Symplectic => self.symplectic_transpose(),
        }
    }

    pub fn map<U: Ring>(&self, field: FieldSpec, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            n: self.n,
            field,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl MatPoly {
    /// Constant entries as scalars, or `NotConstant`.
    pub fn to_scalars(&self) -> Result<MatScalar> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.constant_value().ok_or(Error::NotConstant))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            n: self.n,
            field: self.field,
            entries,
        })
    }

    /// Entrywise substitution of polynomial variables.
    pub fn substitute<'a, F>(&self, assign: F) -> Result<MatPoly>
    where
        F: Fn(Variable) -> Option<&'a Poly> + Copy,
    {
        let entries = self.entries.iter().map(|e| e.substitute(assign)).collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            n: self.n,
            field: self.field,
            entries,
        })
    }
}

impl MatScalar {
    pub fn to_poly(&self) -> MatPoly {
        self.map(self.field, Poly::constant)
    }

    pub fn to_matrix(&self) -> ScalarMatrix {
        let n = self.n;
        ScalarMatrix::from_rows(self.field, (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect())
            .expect("square matrix")
    }

    pub fn from_matrix(m: &ScalarMatrix) -> Result<MatScalar> {
        if m.rows() != m.cols() {
            return Err(Error::SizeMismatch(m.rows(), m.cols()));
        }
        Ok(Self::from_fn(m.field(), m.rows(), |i, j| m.get(i, j).clone()))
    }

    pub fn inverse(&self) -> Result<MatScalar> {
        Self::from_matrix(&self.to_matrix().inverse()?)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! mat_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<T: Ring> std::ops::$tr<&Mat<T>> for &Mat<T> {
            type Output = Mat<T>;
            fn $method(self, rhs: &Mat<T>) -> Mat<T> {
                self.$checked(rhs).expect("matrix operands of different size or field")
            }
        }
    };
}
mat_binop!(Add, add, checked_add);
mat_binop!(Sub, sub, checked_sub);
mat_binop!(Mul, mul, checked_mul);

/// The generic matrix of a variable family.
pub fn generic_matrix(family: MatrixFamily, n: usize, field: FieldSpec) -> Result<MatPoly> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let e = match family {
                MatrixFamily::X(k) => Poly::var(field, Variable::x(i, j, k)?),
                MatrixFamily::Z => Poly::var(field, Variable::z(i, j)?),
                MatrixFamily::Y => match i.cmp(&j) {
                    std::cmp::Ordering::Less => Poly::var(field, Variable::y(i, j)?),
                    std::cmp::Ordering::Greater => Poly::var(field, Variable::y(j, i)?).neg(),
                    std::cmp::Ordering::Equal => Poly::zero(field),
                },
            };
            entries.push(e);
        }
    }
    Mat::from_entries(field, n, entries)
}

/// `J = [[0, E], [-E, 0]]`.
pub fn standard_j<T: Ring>(field: FieldSpec, n: usize) -> Result<Mat<T>> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    let h = n / 2;
    Ok(Mat::from_fn(field, n, |i, j| {
        if i < h && j == i + h {
            T::one(field)
        } else if i >= h && j + h == i {
            T::one(field).neg()
        } else {
            T::zero(field)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn skew_generic_matrix() {
        let y = generic_matrix(MatrixFamily::Y, 2, q()).unwrap();
        assert_eq!(y.to_string(), "[[0, y[1][2]], [-y[1][2], 0]]");
        let y1 = generic_matrix(MatrixFamily::Y, 1, q()).unwrap();
        assert_eq!(y1.to_string(), "[[0]]");
        assert_eq!(generic_matrix(MatrixFamily::Y, 0, q()), Err(Error::EmptyMatrix));
    }

    #[test]
    fn generic_x_matrix() {
        let x = generic_matrix(MatrixFamily::X(1), 2, q()).unwrap();
        assert_eq!(x.to_string(), "[[x[1][1](1), x[1][2](1)], [x[2][1](1), x[2][2](1)]]");
    }

    #[test]
    fn j_squares_to_minus_identity() {
        let j: MatScalar = standard_j(q(), 2).unwrap();
        assert_eq!(j.to_string(), "[[0, 1], [-1, 0]]");
        assert_eq!(&j * &j, MatScalar::identity(q(), 2).neg());
        let j4: MatScalar = standard_j(q(), 4).unwrap();
        assert_eq!(&j4 * &j4, MatScalar::identity(q(), 4).neg());
        assert_eq!(standard_j::<Scalar>(q(), 3).unwrap_err(), Error::OddSize(3));
    }

    #[test]
    fn symplectic_transpose_matches_definition() {
        for n in [2, 4, 6] {
            let a = generic_matrix(MatrixFamily::X(1), n, q()).unwrap();
            let j: MatPoly = standard_j(q(), n).unwrap();
            let direct = (&(&j * &a.transpose()) * &j).neg();
            assert_eq!(a.symplectic_transpose().unwrap(), direct);
        }
    }

    #[test]
    fn symplectic_transpose_is_adjugate_at_two() {
        let a = generic_matrix(MatrixFamily::X(1), 2, q()).unwrap();
        let s = a.symplectic_transpose().unwrap();
        assert_eq!(s.to_string(), "[[x[2][2](1), -x[1][2](1)], [-x[2][1](1), x[1][1](1)]]");
        assert!(generic_matrix(MatrixFamily::X(1), 3, q()).unwrap().symplectic_transpose().is_err());
    }
}
