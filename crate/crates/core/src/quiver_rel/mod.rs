//! The two-vertex quivers behind the relation elements, closed-path
//! enumeration up to equivalence, and the relations `sigma_{t,r}`,
//! `rho_{t,r}` with their substitutions.

mod relation;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::wordalg::{Letter, Word};

pub use relation::{
    build_relation, build_rho_tr, build_sigma_tr, substitute_path, substitute_triple, PathFactor, RelationExpr,
    RelationKind, RelationTerm, Triple,
};

/// Default multidegree cap for closed-path enumeration in `Q`.
pub const DEFAULT_PATH_CAP: [u32; 3] = [6, 4, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuiverKind {
    /// Loops `x` (vertex 1), `x^T` (vertex 2); `y, y^T: 2 -> 1`; `z, z^T: 1 -> 2`.
    Q,
    /// `x_k, x_k^T: 2 -> 1`; `y: 1 -> 2`.
    Gy,
    /// `x_k, x_k^T: 2 -> 1`; `z, z^T: 1 -> 2`.
    Gz,
}

/// An arrow labelled by a letter; `head` is the target vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub letter: Letter,
    pub head: u8,
    pub tail: u8,
}

/// In `Q` the letters are `x = x1`, `y = x2`, `z = x3`. In the other two
/// quivers `x1..xd` are the matrix letters and `x(d+1)` is `y` or `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    kind: QuiverKind,
    d: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn q() -> Quiver {
        let a = |letter, head, tail| Arrow { letter, head, tail };
        Quiver {
            kind: QuiverKind::Q,
            d: 1,
            arrows: vec![
                a(Letter::x(1), 1, 1),
                a(Letter::xt(1), 2, 2),
                a(Letter::x(2), 1, 2),
                a(Letter::xt(2), 1, 2),
                a(Letter::x(3), 2, 1),
                a(Letter::xt(3), 2, 1),
            ],
        }
    }

    pub fn gy(d: usize) -> Result<Quiver> {
        Quiver::two_vertex(QuiverKind::Gy, d)
    }

    pub fn gz(d: usize) -> Result<Quiver> {
        Quiver::two_vertex(QuiverKind::Gz, d)
    }

    fn two_vertex(kind: QuiverKind, d: usize) -> Result<Quiver> {
        let special = Letter::new(d + 1, false)?;
        let mut arrows = Vec::new();
        for k in 1..=d {
            for l in [Letter::x(k), Letter::xt(k)] {
                arrows.push(Arrow { letter: l, head: 1, tail: 2 });
            }
        }
        arrows.push(Arrow { letter: special, head: 2, tail: 1 });
        if kind == QuiverKind::Gz {
            arrows.push(Arrow { letter: special.involute(), head: 2, tail: 1 });
        }
        Ok(Quiver { kind, d, arrows })
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Number of multidegree slots: `(x, y, z)` for `Q`, `(x1..xd, y|z)` otherwise.
    pub fn slots(&self) -> usize {
        match self.kind {
            QuiverKind::Q => 3,
            _ => self.d + 1,
        }
    }

    pub fn arrow(&self, l: Letter) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.letter == l)
    }

    /// `(head, tail)` of a path, `None` if `w` is not a nonempty path.
    pub fn endpoints(&self, w: &Word) -> Option<(u8, u8)> {
        let mut it = w.letters().iter();
        let first = self.arrow(*it.next()?)?;
        let mut tail = first.tail;
        for l in it {
            let a = self.arrow(*l)?;
            if a.head != tail {
                return None;
            }
            tail = a.tail;
        }
        Some((first.head, tail))
    }

    pub fn is_path(&self, w: &Word) -> bool {
        self.endpoints(w).is_some()
    }

    pub fn is_closed(&self, w: &Word) -> bool {
        matches!(self.endpoints(w), Some((h, t)) if h == t)
    }

    pub fn mdeg(&self, w: &Word) -> Vec<u32> {
        w.mdeg(self.slots())
    }

    /// One representative per equivalence class of primitive closed paths
    /// with multidegree `<= bound`; the representative is the least path
    /// of its class. Sorted by word order.
    pub fn enumerate_closed_paths(&self, bound: &[u32], cap: &[u32]) -> Result<Vec<Word>> {
        if bound.len() != self.slots() || cap.len() != self.slots() {
            return Err(Error::InvalidArgument(format!("bound needs {} entries", self.slots())));
        }
        if bound.iter().zip(cap).any(|(b, c)| b > c) {
            return Err(Error::CapExceeded(format!("path bound {bound:?} exceeds cap {cap:?}")));
        }
        let mut classes: BTreeMap<Word, Word> = BTreeMap::new();
        let mut used = vec![0u32; bound.len()];
        let mut stack = Vec::new();
        self.dfs(bound, &mut used, &mut stack, &mut classes);
        let mut reps: Vec<Word> = classes.into_values().collect();
        reps.sort();
        Ok(reps)
    }

    fn dfs(&self, bound: &[u32], used: &mut Vec<u32>, stack: &mut Vec<Arrow>, classes: &mut BTreeMap<Word, Word>) {
        if let (Some(first), Some(last)) = (stack.first(), stack.last()) {
            if first.head == last.tail {
                let w = Word::from_letters(stack.iter().map(|a| a.letter));
                if w.is_primitive() {
                    let key = w.canonical_class();
                    match classes.get(&key) {
                        Some(rep) if *rep <= w => {}
                        _ => {
                            classes.insert(key, w);
                        }
                    }
                }
            }
        }
        for a in &self.arrows {
            if let Some(last) = stack.last() {
                if a.head != last.tail {
                    continue;
                }
            }
            let s = a.letter.index() - 1;
            if used[s] >= bound[s] {
                continue;
            }
            used[s] += 1;
            stack.push(*a);
            self.dfs(bound, used, stack, classes);
            stack.pop();
            used[s] -= 1;
        }
    }

    /// Paths `(a, b, c)` with `a: 1 -> 1`, `b` with head 1 and tail 2,
    /// `c` with head 2 and tail 1, of lengths `1..=max_len[i]`.
    pub fn admissible_triples(&self, max_len: [usize; 3]) -> Result<Vec<(Word, Word, Word)>> {
        if self.kind == QuiverKind::Q {
            return Err(Error::InvalidArgument("admissible triples live in the quivers Gy and Gz".to_string()));
        }
        let paths = |len: usize, head: u8, tail: u8| -> Vec<Word> {
            let mut out = Vec::new();
            let mut layer: Vec<Word> = vec![Word::unity()];
            for _ in 0..len {
                layer = layer
                    .iter()
                    .flat_map(|w| self.arrows.iter().map(move |a| w.concat(&Word::letter(a.letter))))
                    .filter(|w| self.is_path(w))
                    .collect();
                out.extend(layer.iter().filter(|w| self.endpoints(w) == Some((head, tail))).cloned());
            }
            out.sort();
            out
        };
        let a = paths(max_len[0], 1, 1);
        let b = paths(max_len[1], 1, 2);
        let c = paths(max_len[2], 2, 1);
        let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
        for x in &a {
            for y in &b {
                for z in &c {
                    out.push((x.clone(), y.clone(), z.clone()));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn canon_brute(q: &Quiver, bound: &[u32]) -> usize {
        // all closed letter sequences, then dedup by canonical form
        let letters: Vec<Letter> = q.arrows().iter().map(|a| a.letter).collect();
        let total: u32 = bound.iter().sum();
        let mut seen = std::collections::BTreeSet::new();
        let mut layer = vec![Word::unity()];
        for _ in 0..total {
            layer = layer.iter().flat_map(|w| letters.iter().map(move |l| w.concat(&Word::letter(*l)))).collect();
            for cand in &layer {
                let m = q.mdeg(cand);
                if q.is_closed(cand) && cand.is_primitive() && m.iter().zip(bound).all(|(a, b)| a <= b) {
                    seen.insert(cand.canonical_class());
                }
            }
        }
        seen.len()
    }

    #[test]
    fn small_enumerations() {
        let q = Quiver::q();
        assert_eq!(q.enumerate_closed_paths(&[1, 0, 0], &DEFAULT_PATH_CAP).unwrap(), vec![w("x1")]);
        assert_eq!(q.enumerate_closed_paths(&[0, 1, 1], &DEFAULT_PATH_CAP).unwrap(), vec![w("x2 x3"), w("x2 x3'")]);
        assert!(q.enumerate_closed_paths(&[0, 0, 0], &DEFAULT_PATH_CAP).unwrap().is_empty());
        assert!(matches!(q.enumerate_closed_paths(&[7, 0, 0], &DEFAULT_PATH_CAP), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let q = Quiver::q();
        for bound in [[2, 1, 1], [1, 2, 2], [3, 1, 1], [0, 2, 2]] {
            let reps = q.enumerate_closed_paths(&bound, &DEFAULT_PATH_CAP).unwrap();
            assert_eq!(reps.len(), canon_brute(&q, &bound), "{bound:?}");
            for r in &reps {
                assert!(q.is_closed(r));
            }
            let keys: std::collections::BTreeSet<Word> = reps.iter().map(|r| r.canonical_class()).collect();
            assert_eq!(keys.len(), reps.len());
        }
    }

    #[test]
    fn orientation() {
        let q = Quiver::q();
        assert_eq!(q.endpoints(&w("x2 x1' x3")), Some((1, 1)));
        assert!(!q.is_path(&w("x2 x1")));
        let gy = Quiver::gy(2).unwrap();
        assert_eq!(gy.endpoints(&w("x1 x3")), Some((1, 1)));
        assert!(gy.arrow(Letter::xt(3)).is_none());
        assert!(Quiver::gz(2).unwrap().arrow(Letter::xt(3)).is_some());
    }

    #[test]
    fn admissible_counts() {
        let gz = Quiver::gz(1).unwrap();
        assert!(gz.admissible_triples([1, 1, 1]).unwrap().is_empty());
        let t = gz.admissible_triples([2, 1, 1]).unwrap();
        // a in {x1 z, x1 z', x1' z, x1' z'}, b in {x1, x1'}, c in {z, z'}
        assert_eq!(t.len(), 4 * 2 * 2);
        let gy = Quiver::gy(1).unwrap();
        assert_eq!(gy.admissible_triples([2, 1, 1]).unwrap().len(), 2 * 2);
        assert!(Quiver::q().admissible_triples([1, 1, 1]).is_err());
    }
}
