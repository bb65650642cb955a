//! Characteristic polynomial coefficients of a matrix, and their behaviour
//! under both transposes.
//!
//! cargo run --example charpoly

use spinv::exactalg::{FieldSpec, Scalar};
use spinv::matform::{generic_matrix, sigma_coeffs, Mat, MatrixFamily, TransposeKind};

fn main() -> spinv::Result<()> {
    let q = FieldSpec::Rationals;
    let a = Mat::from_entries(q, 4, [2, -1, 0, 4, 1, 3, -2, 5, 1, 0, 0, 7, -3, 2, 2, 1].map(|v| Scalar::from_i64(q, v)).to_vec())?;
    println!("A =\n{a}");
    let s = sigma_coeffs(&a);
    for t in 0..=4 {
        println!("sigma_{t}(A) = {}", s.sigma(t));
    }
    for kind in [TransposeKind::Ordinary, TransposeKind::Symplectic] {
        let at = a.transpose_as(kind)?;
        assert_eq!(sigma_coeffs(&at).into_vec(), s.clone().into_vec());
        println!("{kind:?} transpose =\n{at}");
    }

    // generic 2x2: the symplectic transpose is the adjugate
    let x = generic_matrix(MatrixFamily::X(1), 2, q)?;
    println!("X =\n{x}");
    println!("X* =\n{}", x.symplectic_transpose()?);
    let s = sigma_coeffs(&x);
    println!("sigma_1(X) = {}\nsigma_2(X) = {}", s.sigma(1), s.sigma(2));
    Ok(())
}
