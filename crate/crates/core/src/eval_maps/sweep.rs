use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::matform::Group;
use crate::quiver_rel::{build_relation, RelationExpr, RelationKind, Triple};
use crate::wordalg::Word;

use super::{generic_relation, substitute_generic, witness_term, EvalContext, Evaluator};

/// How each substituted relation is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethod {
    /// Realize every substituted path and take `sigma_k`.
    Direct,
    /// Substitute `X_a, X_b, X_c` into the generic relation polynomial.
    Generic,
    /// Direct for `n <= 2` or single-letter triples, generic otherwise.
    Auto,
}

impl std::str::FromStr for EvalMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<EvalMethod> {
        match s {
            "direct" => Ok(EvalMethod::Direct),
            "generic" => Ok(EvalMethod::Generic),
            "auto" => Ok(EvalMethod::Auto),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected direct, generic or auto".to_string(),
            }),
        }
    }
}

/// `sigma_{t,r}` for O, `rho_{t,r}` for Sp.
pub fn relation_kind_for(group: Group) -> Result<RelationKind> {
    match group {
        Group::O => Ok(RelationKind::Sigma),
        Group::Sp => Ok(RelationKind::Rho),
        Group::Gl => Err(Error::InvalidArgument(
            "GL relations are sigma_t(a) for t > n; check them with the kernel sweep".to_string(),
        )),
    }
}

#[derive(Debug, Clone)]
pub struct RelationSweep {
    pub ctx: EvalContext,
    pub max_word_len: usize,
    /// Relations with `n < t + 2r <= max_tr`.
    pub max_tr: u32,
    pub method: EvalMethod,
    /// Also evaluate `t + 2r <= n` at generic arguments, expecting nonzero.
    pub controls: bool,
    pub timing: bool,
}

impl RelationSweep {
    pub fn new(ctx: EvalContext) -> RelationSweep {
        RelationSweep {
            ctx,
            max_word_len: 2,
            max_tr: ctx.n as u32 + 2,
            method: EvalMethod::Auto,
            controls: false,
            timing: false,
        }
    }

    /// `(t, r)` with `n < t + 2r <= max_tr`, ordered by `t + 2r`, then `r`.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let n = self.ctx.n as u32;
        pairs_in(n + 1, self.max_tr)
    }

    /// `a, b` over words of length `1..=max_word_len`, `c` additionally the unity.
    pub fn triples(&self) -> Vec<[Word; 3]> {
        let words = Word::all_up_to(self.ctx.d, self.max_word_len, true);
        let mut cs = vec![Word::unity()];
        cs.extend(words.iter().cloned());
        let mut out = Vec::with_capacity(words.len() * words.len() * cs.len());
        for a in &words {
            for b in &words {
                for c in &cs {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        out
    }
}

fn pairs_in(lo: u32, hi: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for s in lo..=hi {
        for r in 0..=s / 2 {
            out.push((s - 2 * r, r));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    #[serde(rename = "type")]
    pub kind: RelationKind,
    pub t: u32,
    pub r: u32,
    pub a: String,
    pub b: String,
    pub c: String,
}

/// One JSON line of a relation sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationRecord {
    pub group: Group,
    pub n: usize,
    pub d: usize,
    pub field: String,
    pub relation: RelationReport,
    pub result: &'static str,
    pub expected: &'static str,
    pub method: EvalMethod,
    pub witness_term: Option<String>,
    pub millis: Option<u64>,
}

impl RelationRecord {
    pub fn passed(&self) -> bool {
        self.result == self.expected
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Vec<RelationRecord>,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.records.iter().all(RelationRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn to_json_lines(&self) -> String {
        self.records.iter().map(|r| serde_json::to_string(r).expect("serializable") + "\n").collect()
    }
}

/// Evaluates every relation of the sweep at every triple.
pub fn verify_relations(sweep: &RelationSweep) -> Result<SweepOutcome> {
    let ctx = sweep.ctx;
    let kind = relation_kind_for(ctx.group)?;
    let exprs: BTreeMap<(u32, u32), RelationExpr> =
        sweep.pairs().into_iter().map(|(t, r)| Ok(((t, r), build_relation(kind, t, r)?))).collect::<Result<_>>()?;
    let generic: BTreeMap<(u32, u32), Poly> = if sweep.method == EvalMethod::Direct {
        BTreeMap::new()
    } else {
        exprs
            .par_iter()
            .map(|(key, e)| Ok((*key, generic_relation(e, ctx.group, ctx.n, ctx.field)?)))
            .collect::<Result<_>>()?
    };
    let ev = Evaluator::new(ctx)?;
    let triples = sweep.triples();
    let tasks: Vec<((u32, u32), &[Word; 3])> =
        exprs.keys().flat_map(|key| triples.iter().map(move |tr| (*key, tr))).collect();
    let mut records: Vec<RelationRecord> = tasks
        .par_iter()
        .map(|(key, words)| {
            let start = Instant::now();
            let expr = &exprs[key];
            let triple = Triple::words(ctx.field, words[0].clone(), words[1].clone(), words[2].clone());
            let direct = match sweep.method {
                EvalMethod::Direct => true,
                EvalMethod::Generic => false,
                EvalMethod::Auto => ctx.n <= 2 || words.iter().all(|w| w.len() <= 1),
            };
            let value = if direct {
                ev.eval_relation(expr, &triple)?
            } else {
                substitute_generic(&generic[key], &triple, ev.realizer())?
            };
            Ok(record(sweep, expr, words, &value, "zero", direct, start))
        })
        .collect::<Result<_>>()?;
    if sweep.controls {
        let pairs = pairs_in(1, ctx.n as u32);
        let letters = ["x1", "x2", "x3"].map(|s| s.parse::<Word>().expect("letter"));
        for (t, r) in pairs {
            let start = Instant::now();
            let expr = build_relation(kind, t, r)?;
            let value = generic_relation(&expr, ctx.group, ctx.n, ctx.field)?;
            let mut rec = record(sweep, &expr, &letters, &value, "nonzero", true, start);
            rec.d = 3;
            records.push(rec);
        }
    }
    Ok(SweepOutcome { records })
}

fn record(
    sweep: &RelationSweep,
    expr: &RelationExpr,
    words: &[Word; 3],
    value: &Poly,
    expected: &'static str,
    direct: bool,
    start: Instant,
) -> RelationRecord {
    let ctx = sweep.ctx;
    RelationRecord {
        group: ctx.group,
        n: ctx.n,
        d: ctx.d,
        field: ctx.field.tag(),
        relation: RelationReport {
            kind: expr.kind,
            t: expr.t,
            r: expr.r,
            a: words[0].to_string(),
            b: words[1].to_string(),
            c: words[2].to_string(),
        },
        result: if value.is_zero() { "zero" } else { "nonzero" },
        expected,
        method: if direct { EvalMethod::Direct } else { EvalMethod::Generic },
        witness_term: witness_term(value),
        millis: sweep.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldSpec;

    #[test]
    fn pair_ranges() {
        let ctx = EvalContext::new(Group::Sp, 2, 2, FieldSpec::prime(7).unwrap()).unwrap();
        let s = RelationSweep::new(ctx);
        assert_eq!(s.pairs(), vec![(3, 0), (1, 1), (4, 0), (2, 1), (0, 2)]);
        assert_eq!(s.triples().len(), 20 * 20 * 21);
    }

    #[test]
    fn small_sweep_with_controls() {
        let ctx = EvalContext::new(Group::Sp, 2, 1, FieldSpec::prime(7).unwrap()).unwrap();
        let mut s = RelationSweep::new(ctx);
        s.max_word_len = 1;
        s.controls = true;
        let out = verify_relations(&s).unwrap();
        assert!(out.passed(), "{:?}", out.failures().next());
        assert_eq!(out.records.iter().filter(|r| r.expected == "nonzero").count(), 3);
        assert!(relation_kind_for(Group::Gl).is_err());
    }
}
