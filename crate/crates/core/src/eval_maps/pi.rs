use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactalg::{FieldSpec, Poly, Scalar, Variable};
use crate::matform::{generic_matrix, Group, MatrixFamily};
use crate::quiver_rel::Quiver;
use crate::sigma_ring::{SigmaMonomial, SigmaPoly, SigmaSymbol};
use crate::wordalg::{Realizer, Word};

use super::{scalar_pow2, EvalContext, Evaluator};

/// Which matrix the letter `x(d+1)` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialArrow {
    /// Generic skew-symmetric `Y`.
    Y,
    /// Generic `Z`.
    Z,
}

/// `pi_{y,n}` or `pi_{z,n}`: `x1..xd` to generic `X_k`, `x(d+1)` to `Y` or
/// `Z`, transposes ordinary.
pub fn pi_evaluator(special: SpecialArrow, n: usize, d: usize, field: FieldSpec) -> Result<Evaluator> {
    let ctx = EvalContext::new(Group::O, n, d + 1, field)?;
    let mut mats = (1..=d).map(|k| generic_matrix(MatrixFamily::X(k), n, field)).collect::<Result<Vec<_>>>()?;
    mats.push(generic_matrix(
        match special {
            SpecialArrow::Y => MatrixFamily::Y,
            SpecialArrow::Z => MatrixFamily::Z,
        },
        n,
        field,
    )?);
    let r = Realizer::from_matrices(Group::O, n, field, mats)?;
    Ok(Evaluator::with_realizer(ctx, r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingReport {
    pub n: usize,
    pub d: usize,
    pub field: String,
    pub k: u32,
    pub f: String,
    pub terms: usize,
    /// `pi_z` of the same element at `Z - Z^T` equals `h`.
    pub routes_agree: bool,
    pub passed: bool,
}

/// `y_ij -> z_ij - z_ji`, then `z_ij -> Y_ij`; for `f` of `y`-degree `k`
/// the result is `2^k f`. Each `k <= kmax` is checked on `per_k` random
/// homogeneous elements built from closed paths of `Gy`.
pub fn scaling_check(
    n: usize,
    d: usize,
    field: FieldSpec,
    kmax: u32,
    per_k: usize,
    seed: u64,
) -> Result<Vec<ScalingReport>> {
    let gy = Quiver::gy(d)?;
    let mut bound = vec![2; d];
    bound.push(kmax.max(1));
    let symbols: Vec<(Word, u32)> = gy
        .enumerate_closed_paths(&bound, &bound)?
        .into_iter()
        .map(|w| {
            let yd = gy.mdeg(&w)[d];
            (w, yd)
        })
        .collect();
    let ev_y = pi_evaluator(SpecialArrow::Y, n, d, field)?;
    let skew = {
        let z = generic_matrix(MatrixFamily::Z, n, field)?;
        let mut mats = (1..=d).map(|k| generic_matrix(MatrixFamily::X(k), n, field)).collect::<Result<Vec<_>>>()?;
        mats.push(&z - &z.transpose());
        Evaluator::with_realizer(EvalContext::new(Group::O, n, d + 1, field)?, Realizer::from_matrices(Group::O, n, field, mats)?)
    };
    let y_to_z: Vec<(Variable, Poly)> = (1..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let zij = Poly::var(field, Variable::z(i, j)?);
            let zji = Poly::var(field, Variable::z(j, i)?);
            Ok((Variable::y(i, j)?, zij.checked_sub(&zji)?))
        })
        .collect::<Result<_>>()?;
    let ymat = generic_matrix(MatrixFamily::Y, n, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..=kmax {
        for _ in 0..per_k {
            let f = random_element(&mut rng, field, &symbols, n as u32, k)?;
            let pf = ev_y.phi(&f)?;
            let h = pf.substitute_partial(|v| y_to_z.iter().find(|(y, _)| *y == v).map(|(_, p)| p))?;
            let l = h.substitute_partial(|v| match v.family() {
                crate::exactalg::Family::Z => Some(ymat.get(v.i() - 1, v.j() - 1)),
                _ => None,
            })?;
            let expected = pf.scale(&scalar_pow2(field, k))?;
            let routes_agree = skew.phi(&f)? == h;
            out.push(ScalingReport {
                n,
                d,
                field: field.tag(),
                k,
                f: f.to_string(),
                terms: pf.len(),
                routes_agree,
                passed: routes_agree && l == expected,
            });
        }
    }
    Ok(out)
}

fn random_coeff(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    let hi = match field {
        FieldSpec::Rationals => 9,
        _ => (field.characteristic() as i64 - 1).min(9),
    };
    let v = rng.random_range(1..=hi);
    let s = Scalar::from_i64(field, v);
    if rng.random_bool(0.5) {
        s.neg()
    } else {
        s
    }
}

/// Up to three monomials, each of `y`-degree exactly `k`, in symbols
/// `sigma_t(w)` with `t <= n`.
fn random_element(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    symbols: &[(Word, u32)],
    n: u32,
    k: u32,
) -> Result<SigmaPoly> {
    let mut f = SigmaPoly::zero(field);
    let count = rng.random_range(1..=3);
    for _ in 0..count {
        let mut rem = k;
        let mut factors = Vec::new();
        while rem > 0 {
            let options: Vec<(usize, u32)> = symbols
                .iter()
                .enumerate()
                .flat_map(|(i, (_, yd))| (1..=n).filter(move |t| t * yd <= rem).map(move |t| (i, t)))
                .collect();
            let (i, t) = options[rng.random_range(0..options.len())];
            rem -= t * symbols[i].1;
            factors.push((SigmaSymbol::new(t, &symbols[i].0)?, 1));
        }
        f.add_term(SigmaMonomial::from_factors(factors), &random_coeff(rng, field))?;
    }
    if f.is_zero() {
        return random_element(rng, field, symbols, n, k);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_letter_transposes_to_minus() {
        let q = FieldSpec::Rationals;
        let ev = pi_evaluator(SpecialArrow::Y, 2, 1, q).unwrap();
        let y = ev.realizer().realize(&"x2".parse().unwrap()).unwrap();
        let yt = ev.realizer().realize(&"x2'".parse().unwrap()).unwrap();
        assert_eq!(yt, y.neg());
    }

    #[test]
    fn single_symbol_doubles() {
        let q = FieldSpec::Rationals;
        let reps = scaling_check(2, 2, q, 1, 2, 1).unwrap();
        assert!(reps.iter().all(|r| r.passed), "{reps:?}");
        assert!(reps.iter().any(|r| r.k == 1 && r.terms > 0));
    }

    #[test]
    fn small_prime_field() {
        assert!(FieldSpec::prime(2).is_err());
        assert!(scaling_check(2, 1, FieldSpec::prime(3).unwrap(), 2, 1, 0).unwrap().iter().all(|r| r.passed));
    }
}
