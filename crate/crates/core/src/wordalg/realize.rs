use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};
use crate::matform::{generic_matrix, Group, MatPoly, MatrixFamily};

use super::{Letter, Word, WordSum};

/// Realizes words as products of the matrices `X_b` attached to letters:
/// `x_k -> X_k`, `x_k^T -> X_k` (GL), `X_k^T` (O) or `X_k*` (Sp).
#[derive(Debug, Clone)]
pub struct Realizer {
    group: Group,
    n: usize,
    field: FieldSpec,
    plain: Vec<MatPoly>,
    transposed: Vec<MatPoly>,
}

impl Realizer {
    /// Generic matrices `X_1, ..., X_d`.
    pub fn generic(group: Group, n: usize, d: usize, field: FieldSpec) -> Result<Realizer> {
        let mats = (1..=d).map(|k| generic_matrix(MatrixFamily::X(k), n, field)).collect::<Result<Vec<_>>>()?;
        Realizer::from_matrices(group, n, field, mats)
    }

    /// Arbitrary `n x n` matrices in place of `X_1, ..., X_d`.
    pub fn from_matrices(group: Group, n: usize, field: FieldSpec, mats: Vec<MatPoly>) -> Result<Realizer> {
        group.validate(n, field)?;
        for m in &mats {
            if m.n() != n {
                return Err(Error::SizeMismatch(m.n(), n));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
        }
        let transposed = mats
            .iter()
            .map(|m| match group.transpose_kind() {
                None => Ok(m.clone()),
                Some(kind) => m.transpose_as(kind),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Realizer {
            group,
            n,
            field,
            plain: mats,
            transposed,
        })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.plain.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn letter(&self, l: Letter) -> Result<&MatPoly> {
        let k = l.index();
        if k > self.d() {
            return Err(Error::LetterOutOfRange { index: k, max: self.d() });
        }
        Ok(if l.is_transposed() { &self.transposed[k - 1] } else { &self.plain[k - 1] })
    }

    /// `X_w`; the unity realizes to `E`.
    pub fn realize(&self, w: &Word) -> Result<MatPoly> {
        let mut it = w.letters().iter();
        let Some(first) = it.next() else {
            return Ok(MatPoly::identity(self.field, self.n));
        };
        let mut acc = self.letter(*first)?.clone();
        for l in it {
            acc = acc.checked_mul(self.letter(*l)?)?;
        }
        Ok(acc)
    }

    /// `sum c_i X_{w_i}`.
    pub fn realize_sum(&self, s: &WordSum) -> Result<MatPoly> {
        let mut acc = MatPoly::zero(self.field, self.n);
        for (w, c) in s.terms() {
            acc = acc.checked_add(&self.realize(w)?.scale(c))?;
        }
        Ok(acc)
    }

    /// `c E`.
    pub fn scalar(&self, c: &Scalar) -> MatPoly {
        MatPoly::scalar(c, self.n)
    }
}
