use crate::error::{Error, Result};
use crate::exactalg::Scalar;

use super::MatScalar;

/// A matrix `B` with `C = B J B^T` for a skew-symmetric constant `C`.
/// Rank-deficient `C` leaves the unused column pairs zero.
pub fn skew_congruence_witness(c: &MatScalar) -> Result<MatScalar> {
    let n = c.n();
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    for i in 0..n {
        for j in i..n {
            if !(c.get(i, j) + c.get(j, i)).is_zero() {
                return Err(Error::NotSkewSymmetric);
            }
        }
    }
    let field = c.field();
    let h = n / 2;
    let mut rest = c.clone();
    let mut b = MatScalar::zero(field, n);
    for k in 0..h {
        let Some((p, q)) = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .find(|&(p, q)| !rest.get(p, q).is_zero())
        else {
            break;
        };
        let cpq = rest.get(p, q).clone();
        let scale = cpq.inv()?.neg();
        let u: Vec<Scalar> = (0..n).map(|i| rest.get(i, q).clone()).collect();
        let w: Vec<Scalar> = (0..n).map(|i| rest.get(i, p) * &scale).collect();
        for i in 0..n {
            b.set(i, k, u[i].clone());
            b.set(i, k + h, w[i].clone());
        }
        for i in 0..n {
            for j in 0..n {
                let d = &(&u[i] * &w[j]) - &(&w[i] * &u[j]);
                let v = rest.get(i, j) - &d;
                rest.set(i, j, v);
            }
        }
    }
    debug_assert!(rest.is_zero());
    Ok(b)
}
