use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};
use crate::matform::MatPoly;
use crate::sigma_ring::{SigmaMonomial, SigmaPoly, SigmaSymbol};
use crate::wordalg::{Realizer, Word, WordSum};

use super::{Quiver, DEFAULT_PATH_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Sigma,
    Rho,
}

impl std::str::FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<RelationKind> {
        match s {
            "sigma" => Ok(RelationKind::Sigma),
            "rho" => Ok(RelationKind::Rho),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected sigma or rho".to_string(),
            }),
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Sigma => "sigma",
            RelationKind::Rho => "rho",
        })
    }
}

/// `sigma_k(path)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathFactor {
    pub k: u32,
    pub path: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationTerm {
    pub sign: i8,
    pub factors: Vec<PathFactor>,
}

/// `sigma_{t,r}(x, y, z)` or `rho_{t,r}(x, y, z)` as a signed sum of
/// products of `sigma_k` of closed paths in `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationExpr {
    #[serde(rename = "type")]
    pub kind: RelationKind,
    pub t: u32,
    pub r: u32,
    pub terms: Vec<RelationTerm>,
}

pub fn build_sigma_tr(t: u32, r: u32) -> Result<RelationExpr> {
    build_relation(RelationKind::Sigma, t, r)
}

pub fn build_rho_tr(t: u32, r: u32) -> Result<RelationExpr> {
    build_relation(RelationKind::Rho, t, r)
}

pub fn build_relation(kind: RelationKind, t: u32, r: u32) -> Result<RelationExpr> {
    if t == 0 && r == 0 {
        return Err(Error::InvalidArgument("t and r cannot both be 0".to_string()));
    }
    let target = [t, r, r];
    let q = Quiver::q();
    let paths = q.enumerate_closed_paths(&target, &DEFAULT_PATH_CAP)?;
    let degs: Vec<[u32; 3]> = paths.iter().map(|p| q.mdeg(p).try_into().expect("three slots")).collect();
    let mut terms = Vec::new();
    let mut acc = Vec::new();
    collect(&paths, &degs, 0, target, &mut acc, &mut terms);
    let terms = terms
        .into_iter()
        .map(|factors: Vec<PathFactor>| {
            let ksum: u32 = factors.iter().map(|f| f.k).sum();
            let xi = match kind {
                RelationKind::Sigma => {
                    t + factors
                        .iter()
                        .map(|f| {
                            let plain = f.path.letters().iter().filter(|l| l.index() > 1 && !l.is_transposed()).count() as u32;
                            f.k * (plain + 1)
                        })
                        .sum::<u32>()
                }
                RelationKind::Rho => t + ksum,
            };
            RelationTerm {
                sign: if xi % 2 == 0 { 1 } else { -1 },
                factors,
            }
        })
        .collect();
    Ok(RelationExpr { kind, t, r, terms })
}

fn collect(
    paths: &[Word],
    degs: &[[u32; 3]],
    i: usize,
    rem: [u32; 3],
    acc: &mut Vec<PathFactor>,
    out: &mut Vec<Vec<PathFactor>>,
) {
    if rem == [0, 0, 0] {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        return;
    }
    if i == paths.len() {
        return;
    }
    let m = degs[i];
    let mut k = 1;
    while (0..3).all(|s| k * m[s] <= rem[s]) {
        acc.push(PathFactor {
            k,
            path: paths[i].clone(),
        });
        collect(paths, degs, i + 1, [rem[0] - k * m[0], rem[1] - k * m[1], rem[2] - k * m[2]], acc, out);
        acc.pop();
        k += 1;
    }
    collect(paths, degs, i + 1, rem, acc, out);
}

impl RelationExpr {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The formal element of the symbol ring over the letters `x1, x2, x3`.
    pub fn to_sigma_poly(&self, field: FieldSpec) -> Result<SigmaPoly> {
        let mut out = SigmaPoly::zero(field);
        for term in &self.terms {
            let m = SigmaMonomial::from_factors(
                term.factors.iter().map(|f| SigmaSymbol::new(f.k, &f.path).map(|s| (s, 1))).collect::<Result<Vec<_>>>()?,
            );
            out.add_term(m, &Scalar::from_i64(field, term.sign as i64))?;
        }
        Ok(out)
    }

    /// Largest `k` attached to each distinct path.
    pub fn max_k(&self) -> u32 {
        self.terms.iter().flat_map(|t| t.factors.iter().map(|f| f.k)).max().unwrap_or(0)
    }
}

impl fmt::Display for RelationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            match (i, term.sign < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            for (j, fac) in term.factors.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "s{}({})", fac.k, fac.path)?;
            }
        }
        Ok(())
    }
}

/// Values substituted for `x`, `y`, `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub a: WordSum,
    pub b: WordSum,
    pub c: WordSum,
}

impl Triple {
    pub fn words(field: FieldSpec, a: Word, b: Word, c: Word) -> Triple {
        Triple {
            a: WordSum::word(field, a),
            b: WordSum::word(field, b),
            c: WordSum::word(field, c),
        }
    }

    pub fn as_words(&self) -> Option<[&Word; 3]> {
        Some([self.a.as_word()?, self.b.as_word()?, self.c.as_word()?])
    }

    pub fn slot(&self, i: usize) -> &WordSum {
        [&self.a, &self.b, &self.c][i]
    }
}

/// The word obtained from a path of `Q` by `x -> a`, `y -> b`, `z -> c`
/// (transposed arrows go to transposed words).
pub fn substitute_path(path: &Word, subs: [&Word; 3]) -> Word {
    let mut out = Word::unity();
    for l in path.letters() {
        let w = subs[l.index() - 1];
        out = out.concat(&if l.is_transposed() { w.involute() } else { w.clone() });
    }
    out
}

/// Every factor of every term realized as a matrix.
pub fn substitute_triple(
    expr: &RelationExpr,
    triple: &Triple,
    realizer: &Realizer,
) -> Result<Vec<(i8, Vec<(u32, MatPoly)>)>> {
    let mut arrow_mats = Vec::with_capacity(6);
    for i in 0..3 {
        let m = realizer.realize_sum(triple.slot(i))?;
        let mt = realizer.realize_sum(&triple.slot(i).involute())?;
        arrow_mats.push((m, mt));
    }
    let path_matrix = |p: &Word| -> Result<MatPoly> {
        let mut acc: Option<MatPoly> = None;
        for l in p.letters() {
            let (m, mt) = &arrow_mats[l.index() - 1];
            let f = if l.is_transposed() { mt } else { m };
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => a.checked_mul(f)?,
            });
        }
        acc.ok_or(Error::EmptyWord("path"))
    };
    expr.terms
        .iter()
        .map(|term| {
            let factors = term.factors.iter().map(|f| Ok((f.k, path_matrix(&f.path)?))).collect::<Result<Vec<_>>>()?;
            Ok((term.sign, factors))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matform::Group;

    #[test]
    fn sigma_small_cases() {
        assert_eq!(build_sigma_tr(1, 0).unwrap().to_string(), "s1(x1)");
        assert_eq!(build_sigma_tr(0, 1).unwrap().to_string(), "-s1(x2 x3) + s1(x2 x3')");
        assert!(build_sigma_tr(0, 0).is_err());
    }

    #[test]
    fn rho_small_cases() {
        assert_eq!(build_rho_tr(0, 1).unwrap().to_string(), "-s1(x2 x3) - s1(x2 x3')");
        assert_eq!(build_rho_tr(1, 0).unwrap().to_string(), "s1(x1)");
        assert_eq!(build_rho_tr(3, 0).unwrap().to_string(), "s3(x1)");
    }

    #[test]
    fn same_support_and_degrees() {
        for (t, r) in [(1, 1), (2, 1), (1, 2)] {
            let s = build_sigma_tr(t, r).unwrap();
            let p = build_rho_tr(t, r).unwrap();
            let strip = |e: &RelationExpr| e.terms.iter().map(|t| t.factors.clone()).collect::<Vec<_>>();
            assert_eq!(strip(&s), strip(&p));
            let q = Quiver::q();
            for term in &s.terms {
                let mut total = [0u32; 3];
                for f in &term.factors {
                    for (acc, m) in total.iter_mut().zip(q.mdeg(&f.path)) {
                        *acc += f.k * m;
                    }
                }
                assert_eq!(total, [t, r, r]);
            }
        }
    }

    #[test]
    fn path_substitution() {
        let p: Word = "x2 x3'".parse().unwrap();
        let a: Word = "x1".parse().unwrap();
        let b: Word = "x1 x2".parse().unwrap();
        let c: Word = "x2'".parse().unwrap();
        assert_eq!(substitute_path(&p, [&a, &b, &c]).to_string(), "x1 x2 x2");
        let unity = Word::unity();
        assert_eq!(substitute_path(&p, [&a, &b, &unity]).to_string(), "x1 x2");
    }

    #[test]
    fn triple_realization() {
        let q = FieldSpec::Rationals;
        let r = Realizer::generic(Group::O, 2, 3, q).unwrap();
        let e = build_sigma_tr(0, 1).unwrap();
        let tr = Triple::words(q, "x1".parse().unwrap(), "x2".parse().unwrap(), "x3".parse().unwrap());
        let subs = substitute_triple(&e, &tr, &r).unwrap();
        let x2 = r.realize(&"x2".parse().unwrap()).unwrap();
        let x3t = r.realize(&"x3'".parse().unwrap()).unwrap();
        assert_eq!(subs[1].1[0].1, &x2 * &x3t);
        let unit = Triple::words(q, "x1".parse().unwrap(), "x2".parse().unwrap(), Word::unity());
        assert_eq!(substitute_triple(&e, &unit, &r).unwrap()[0].1[0].1, x2);
        let sum = Triple {
            a: WordSum::parse(q, "x1 + x2").unwrap(),
            ..tr.clone()
        };
        let s1 = substitute_triple(&build_sigma_tr(1, 0).unwrap(), &sum, &r).unwrap();
        assert_eq!(s1[0].1[0].1, &r.realize(&"x1".parse().unwrap()).unwrap() + &x2);
    }
}
