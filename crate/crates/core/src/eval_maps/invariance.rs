use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exactalg::{PackedPoly, Poly, Ring, VarIndex, Variable, MAX_PACKED_EXPONENT, MAX_PACKED_VARS};
use crate::matform::{generic_matrix, sigma_of_product, Group, GroupSampler, Mat, MatPoly, MatScalar, MatrixFamily};
use crate::wordalg::{Letter, Realizer, Word};

use super::{require_prime, EvalContext};

/// Generic matrices replaced by `g^{-1} X_k g`.
pub fn conjugated_realizer(ctx: &EvalContext, g: &MatScalar) -> Result<Realizer> {
    let gi = g.inverse()?.to_poly();
    let gp = g.to_poly();
    let mats = (1..=ctx.d)
        .map(|k| Ok(&(&gi * &generic_matrix(MatrixFamily::X(k), ctx.n, ctx.field)?) * &gp))
        .collect::<Result<Vec<MatPoly>>>()?;
    Realizer::from_matrices(ctx.group, ctx.n, ctx.field, mats)
}

/// `f(g^{-1} X_1 g, ..., g^{-1} X_d g)`.
pub fn act_on_poly(ctx: &EvalContext, f: &Poly, g: &MatScalar) -> Result<Poly> {
    let r = conjugated_realizer(ctx, g)?;
    let mats: Vec<&MatPoly> = (1..=ctx.d).map(|k| r.letter(Letter::x(k))).collect::<Result<_>>()?;
    f.substitute_partial(|v: Variable| match v.k() {
        Some(k) if (1..=ctx.d).contains(&k) => Some(mats[k - 1].get(v.i() - 1, v.j() - 1)),
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceViolation {
    pub word: String,
    pub t: usize,
    /// `None` when the word disagrees with its class representative.
    pub sample: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub group: Group,
    pub n: usize,
    pub d: usize,
    pub field: String,
    pub seed: u64,
    pub samples: usize,
    pub words: usize,
    pub classes: usize,
    pub checks: usize,
    pub violations: Vec<InvarianceViolation>,
    /// `x11(1)` moved by some sample, so the check can fail.
    pub control_moved: bool,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.control_moved
    }
}

/// Letter matrices indexed by `2 (k - 1) + transposed`.
fn letter_table<T: Ring>(r: &Realizer, conv: &impl Fn(&MatPoly) -> Result<Mat<T>>) -> Result<Vec<Mat<T>>> {
    let mut out = Vec::with_capacity(2 * r.d());
    for k in 1..=r.d() {
        out.push(conv(r.letter(Letter::x(k))?)?);
        out.push(conv(r.letter(Letter::xt(k))?)?);
    }
    Ok(out)
}

fn word_sigmas<T: Ring>(table: &[Mat<T>], w: &Word, n: usize) -> Vec<T> {
    let mats: Vec<&Mat<T>> =
        w.letters().iter().map(|l| &table[2 * (l.index() - 1) + l.is_transposed() as usize]).collect();
    (1..=n).map(|t| sigma_of_product(&mats, t)).collect()
}

fn compare<T: Ring>(
    words: &[Word],
    gl: bool,
    base: &Realizer,
    moved: &[Realizer],
    n: usize,
    conv: impl Fn(&MatPoly) -> Result<Mat<T>> + Sync,
) -> Result<(usize, Vec<InvarianceViolation>)> {
    let base = letter_table(base, &conv)?;
    let moved = moved.iter().map(|r| letter_table(r, &conv)).collect::<Result<Vec<_>>>()?;
    let mut classes: BTreeMap<Word, Vec<&Word>> = BTreeMap::new();
    for w in words {
        classes.entry(w.canonical_for(gl)).or_default().push(w);
    }
    let per_class: Vec<Vec<InvarianceViolation>> = classes
        .par_iter()
        .map(|(rep, members)| {
            let s0 = word_sigmas(&base, rep, n);
            let mut bad = Vec::new();
            for w in members {
                let sw = word_sigmas(&base, w, n);
                for t in 1..=n {
                    if sw[t - 1] != s0[t - 1] {
                        bad.push(InvarianceViolation {
                            word: w.to_string(),
                            t,
                            sample: None,
                        });
                    }
                }
            }
            for (i, table) in moved.iter().enumerate() {
                let s1 = word_sigmas(table, rep, n);
                for t in 1..=n {
                    if s0[t - 1] != s1[t - 1] {
                        bad.extend(members.iter().map(|w| InvarianceViolation {
                            word: w.to_string(),
                            t,
                            sample: Some(i),
                        }));
                    }
                }
            }
            bad
        })
        .collect();
    Ok((classes.len(), per_class.into_iter().flatten().collect()))
}

/// Compares `sigma_t(X_w)` with its value at conjugated matrices for every
/// word of length `<= max_len` and every `t <= n`. Each word is first
/// matched exactly against the least word of its class; classes are then
/// compared under every sample.
pub fn check_invariance(ctx: &EvalContext, max_len: usize, samples: usize, seed: u64) -> Result<InvarianceReport> {
    require_prime(ctx.field)?;
    let words = Word::all_up_to(ctx.d, max_len, ctx.group != Group::Gl);
    let base = Realizer::generic(ctx.group, ctx.n, ctx.d, ctx.field)?;
    let mut sampler = GroupSampler::new(ctx.field, seed)?;
    let gs = (0..samples).map(|_| sampler.sample(ctx.group, ctx.n)).collect::<Result<Vec<_>>>()?;
    let moved: Vec<Realizer> = gs.iter().map(|g| conjugated_realizer(ctx, g)).collect::<Result<_>>()?;
    let x11 = Poly::var(ctx.field, Variable::x(1, 1, 1)?);
    let mut control_moved = false;
    for g in &gs {
        if act_on_poly(ctx, &x11, g)? != x11 {
            control_moved = true;
            break;
        }
    }
    let vars: Vec<Variable> = (1..=ctx.d)
        .flat_map(|k| (1..=ctx.n).flat_map(move |i| (1..=ctx.n).map(move |j| Variable::x(i, j, k))))
        .collect::<Result<_>>()?;
    let packable = vars.len() <= MAX_PACKED_VARS && max_len * ctx.n <= MAX_PACKED_EXPONENT as usize;
    let (classes, violations) = if packable {
        let idx = VarIndex::new(vars)?;
        compare(&words, ctx.group == Group::Gl, &base, &moved, ctx.n, |m: &MatPoly| {
            let entries = m.entries().iter().map(|e| PackedPoly::from_poly(e, &idx)).collect::<Result<Vec<_>>>()?;
            Mat::from_entries(ctx.field, ctx.n, entries)
        })?
    } else {
        compare(&words, ctx.group == Group::Gl, &base, &moved, ctx.n, |m: &MatPoly| Ok(m.clone()))?
    };
    Ok(InvarianceReport {
        group: ctx.group,
        n: ctx.n,
        d: ctx.d,
        field: ctx.field.tag(),
        seed,
        samples,
        words: words.len(),
        classes,
        checks: classes * samples * ctx.n,
        violations,
        control_moved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldSpec;
    use crate::matform::{sample_group_element, sigma_coeffs};

    #[test]
    fn both_routes_agree() {
        let f = FieldSpec::prime(101).unwrap();
        let ctx = EvalContext::new(Group::Sp, 2, 2, f).unwrap();
        let g = sample_group_element(Group::Sp, 2, f, 3).unwrap();
        let w: Word = "x1 x2'".parse().unwrap();
        let base = Realizer::generic(ctx.group, 2, 2, f).unwrap();
        let s = sigma_coeffs(&base.realize(&w).unwrap()).sigma(2);
        let via_poly = act_on_poly(&ctx, &s, &g).unwrap();
        let via_mats = sigma_coeffs(&conjugated_realizer(&ctx, &g).unwrap().realize(&w).unwrap()).sigma(2);
        assert_eq!(via_poly, via_mats);
        assert_eq!(via_poly, s);
    }

    #[test]
    fn small_runs_pass() {
        let f = FieldSpec::prime(101).unwrap();
        for group in [Group::Gl, Group::O, Group::Sp] {
            let ctx = EvalContext::new(group, 2, 2, f).unwrap();
            let rep = check_invariance(&ctx, 2, 2, 7).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn non_invariant_detected() {
        let f = FieldSpec::prime(101).unwrap();
        let ctx = EvalContext::new(Group::Sp, 2, 1, f).unwrap();
        let g = sample_group_element(Group::Sp, 2, f, 1).unwrap();
        let e12 = Poly::var(f, Variable::x(1, 2, 1).unwrap());
        assert_ne!(act_on_poly(&ctx, &e12, &g).unwrap(), e12);
        assert!(check_invariance(&EvalContext::new(Group::Sp, 2, 1, FieldSpec::Rationals).unwrap(), 1, 1, 0).is_err());
    }
}
