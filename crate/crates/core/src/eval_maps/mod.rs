//! The evaluation maps `phi_n`, `pi_{y,n}`, `pi_{z,n}`, relation
//! evaluation, vanishing sweeps and invariance sampling.

mod invariance;
mod pi;
mod sweep;

use std::sync::Mutex;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Poly, Scalar, Variable};
use crate::matform::{sigma_coeffs_upto, sigma_of_product, Group, MatPoly};
use crate::quiver_rel::{substitute_path, RelationExpr, Triple};
use crate::sigma_ring::SigmaPoly;
use crate::wordalg::{Realizer, Word};

pub use invariance::{act_on_poly, check_invariance, conjugated_realizer, InvarianceReport};
pub use pi::{pi_evaluator, scaling_check, ScalingReport, SpecialArrow};
pub use sweep::{
    relation_kind_for, verify_relations, EvalMethod, RelationRecord, RelationReport, RelationSweep, SweepOutcome,
};

/// Group, size, number of matrices and field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EvalContext {
    pub group: Group,
    pub n: usize,
    pub d: usize,
    pub field: FieldSpec,
}

impl EvalContext {
    pub fn new(group: Group, n: usize, d: usize, field: FieldSpec) -> Result<EvalContext> {
        group.validate(n, field)?;
        Ok(EvalContext { group, n, d, field })
    }
}

type SigmaCache = Mutex<FxHashMap<(Word, usize), Poly>>;

/// Evaluates `sigma_t` of realized words, caching per equivalence class.
pub struct Evaluator {
    ctx: EvalContext,
    realizer: Realizer,
    cache: SigmaCache,
}

impl Evaluator {
    /// Generic matrices `X_1..X_d`.
    pub fn new(ctx: EvalContext) -> Result<Evaluator> {
        let realizer = Realizer::generic(ctx.group, ctx.n, ctx.d, ctx.field)?;
        Ok(Evaluator::with_realizer(ctx, realizer))
    }

    pub fn with_realizer(ctx: EvalContext, realizer: Realizer) -> Evaluator {
        Evaluator {
            ctx,
            realizer,
            cache: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn ctx(&self) -> &EvalContext {
        &self.ctx
    }

    pub fn realizer(&self) -> &Realizer {
        &self.realizer
    }

    fn key(&self, w: &Word) -> Word {
        w.canonical_for(self.realizer.group() == Group::Gl)
    }

    /// `sigma_t(X_w)`, zero for `t > n`.
    pub fn sigma_word(&self, t: usize, w: &Word) -> Result<Poly> {
        let field = self.ctx.field;
        if t == 0 {
            return Ok(Poly::one(field));
        }
        if t > self.ctx.n {
            return Ok(Poly::zero(field));
        }
        let key = (self.key(w), t);
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let mats = key.0.letters().iter().map(|l| self.realizer.letter(*l)).collect::<Result<Vec<_>>>()?;
        let v = sigma_path(&mats, t);
        self.cache.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    /// `phi_n` on the symbol ring.
    pub fn phi(&self, f: &SigmaPoly) -> Result<Poly> {
        let field = self.ctx.field;
        let mut out = Poly::zero(field);
        for (m, c) in f.terms() {
            let mut prod = Poly::constant(c);
            for (s, e) in m.factors() {
                let v = self.sigma_word(s.t() as usize, s.arg())?;
                prod = prod.checked_mul(&v.pow(e))?;
                if prod.is_zero() {
                    break;
                }
            }
            out.add_assign(&prod)?;
        }
        Ok(out)
    }

    /// `phi_n(e(a, b, c))` by direct evaluation of every term.
    pub fn eval_relation(&self, expr: &RelationExpr, triple: &Triple) -> Result<Poly> {
        let field = self.ctx.field;
        let n = self.ctx.n as u32;
        let mut out = Poly::zero(field);
        if let Some(words) = triple.as_words() {
            for term in &expr.terms {
                if term.factors.iter().any(|f| f.k > n) {
                    continue;
                }
                let mut prod = Poly::from_i64(field, term.sign as i64);
                for f in &term.factors {
                    let w = substitute_path(&f.path, words);
                    prod = prod.checked_mul(&self.sigma_word(f.k as usize, &w)?)?;
                    if prod.is_zero() {
                        break;
                    }
                }
                out.add_assign(&prod)?;
            }
            return Ok(out);
        }
        let arrows = arrow_matrices(triple, &self.realizer)?;
        let mut local: FxHashMap<(Word, u32), Poly> = FxHashMap::default();
        for term in &expr.terms {
            if term.factors.iter().any(|f| f.k > n) {
                continue;
            }
            let mut prod = Poly::from_i64(field, term.sign as i64);
            for f in &term.factors {
                let v = local.entry((f.path.clone(), f.k)).or_insert_with(|| {
                    let mats: Vec<&MatPoly> = f
                        .path
                        .letters()
                        .iter()
                        .map(|l| {
                            let (m, mt) = &arrows[l.index() - 1];
                            if l.is_transposed() { mt } else { m }
                        })
                        .collect();
                    sigma_path(&mats, f.k as usize)
                });
                prod = prod.checked_mul(v)?;
            }
            out.add_assign(&prod)?;
        }
        Ok(out)
    }
}

/// `sigma_t` of a product; Berkowitz on the product for `t <= 2`,
/// compound matrices above.
fn sigma_path(mats: &[&MatPoly], t: usize) -> Poly {
    if t <= 2 || mats.len() == 1 {
        let mut acc = mats[0].clone();
        for m in &mats[1..] {
            acc = &acc * *m;
        }
        sigma_coeffs_upto(&acc, t).sigma(t)
    } else {
        sigma_of_product(mats, t)
    }
}

/// `(X_s, X_s^*)` for the three slots of a triple.
fn arrow_matrices(triple: &Triple, realizer: &Realizer) -> Result<Vec<(MatPoly, MatPoly)>> {
    (0..3)
        .map(|i| Ok((realizer.realize_sum(triple.slot(i))?, realizer.realize_sum(&triple.slot(i).involute())?)))
        .collect()
}

/// `phi_n(e(x1, x2, x3))` with generic matrices; by the homomorphism
/// property every substitution is an image of this polynomial.
pub fn generic_relation(expr: &RelationExpr, group: Group, n: usize, field: FieldSpec) -> Result<Poly> {
    let ctx = EvalContext::new(group, n, 3, field)?;
    let ev = Evaluator::new(ctx)?;
    let w = |s: &str| s.parse::<Word>().expect("letter");
    ev.eval_relation(expr, &Triple::words(field, w("x1"), w("x2"), w("x3")))
}

/// Image of a generic relation polynomial under `X1 -> X_a`, `X2 -> X_b`,
/// `X3 -> X_c`, the targets realized by `realizer`.
pub fn substitute_generic(generic: &Poly, triple: &Triple, realizer: &Realizer) -> Result<Poly> {
    if generic.is_zero() {
        return Ok(generic.clone());
    }
    let mats: Vec<MatPoly> = (0..3).map(|i| realizer.realize_sum(triple.slot(i))).collect::<Result<_>>()?;
    let n = realizer.n();
    generic.substitute(|v: Variable| match v.k() {
        Some(k) if (1..=3).contains(&k) && v.i() <= n && v.j() <= n => Some(mats[k - 1].get(v.i() - 1, v.j() - 1)),
        _ => None,
    })
}

/// First term of a nonzero polynomial, for reports.
pub fn witness_term(p: &Poly) -> Option<String> {
    p.leading_term_string()
}

pub(crate) fn scalar_pow2(field: FieldSpec, k: u32) -> Scalar {
    Scalar::from_i64(field, 2).pow(k)
}

pub(crate) fn require_prime(field: FieldSpec) -> Result<()> {
    if field.is_prime_field() {
        Ok(())
    } else {
        Err(Error::SamplingOverRationals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rel::{build_rho_tr, build_sigma_tr};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn gf7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    #[test]
    fn phi_basics() {
        let q = FieldSpec::Rationals;
        let ev = Evaluator::new(EvalContext::new(Group::Gl, 2, 2, q).unwrap()).unwrap();
        let s3 = SigmaPoly::symbol(q, 3, &w("x1")).unwrap();
        assert!(ev.phi(&s3).unwrap().is_zero());
        let s1 = SigmaPoly::symbol(q, 1, &w("x1")).unwrap();
        assert_eq!(ev.phi(&s1).unwrap().to_string(), "x[1][1](1) + x[2][2](1)");
        let s12 = SigmaPoly::symbol(q, 1, &w("x2")).unwrap();
        assert_eq!(ev.phi(&(&s1 * &s12)).unwrap().len(), 4);
    }

    #[test]
    fn degree_two_symplectic_relation() {
        let e = build_rho_tr(1, 1).unwrap();
        for field in [FieldSpec::Rationals, gf7()] {
            let ev = Evaluator::new(EvalContext::new(Group::Sp, 2, 2, field).unwrap()).unwrap();
            let tr = Triple::words(field, w("x1"), w("x2"), Word::unity());
            assert!(ev.eval_relation(&e, &tr).unwrap().is_zero());
        }
    }

    #[test]
    fn orthogonal_one_by_one() {
        let e = build_sigma_tr(0, 1).unwrap();
        let ev = Evaluator::new(EvalContext::new(Group::O, 1, 3, gf7()).unwrap()).unwrap();
        let tr = Triple::words(gf7(), w("x1"), w("x2"), w("x3"));
        assert!(ev.eval_relation(&e, &tr).unwrap().is_zero());
    }

    #[test]
    fn negative_control() {
        let e = build_rho_tr(0, 1).unwrap();
        let ev = Evaluator::new(EvalContext::new(Group::Sp, 4, 3, gf7()).unwrap()).unwrap();
        let tr = Triple::words(gf7(), w("x1"), w("x2"), w("x3"));
        assert!(!ev.eval_relation(&e, &tr).unwrap().is_zero());
    }

    #[test]
    fn sums_match_generic_substitution() {
        let q = FieldSpec::Rationals;
        let e = build_rho_tr(0, 1).unwrap();
        let ctx = EvalContext::new(Group::Sp, 2, 2, q).unwrap();
        let ev = Evaluator::new(ctx).unwrap();
        let tr = Triple {
            a: crate::wordalg::WordSum::parse(q, "x1 + x2").unwrap(),
            b: crate::wordalg::WordSum::parse(q, "x1 x2 - 2*x2'").unwrap(),
            c: crate::wordalg::WordSum::parse(q, "1 + x1'").unwrap(),
        };
        let direct = ev.eval_relation(&e, &tr).unwrap();
        let generic = generic_relation(&e, Group::Sp, 2, q).unwrap();
        assert!(!generic.is_zero());
        assert_eq!(substitute_generic(&generic, &tr, ev.realizer()).unwrap(), direct);
    }
}
