//! Words in the letters `x_k`, `x_k^T`: involution, cyclic classes,
//! primitivity and realization as matrix products.

mod realize;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};

pub use realize::Realizer;

/// Largest letter index (the variable packing has four bits for `k`).
pub const MAX_LETTER: usize = 15;

/// `x_k` or `x_k^T`. Ordered `x1 < x1' < x2 < x2' < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    index: u8,
    transposed: bool,
}

impl Letter {
    pub fn new(index: usize, transposed: bool) -> Result<Letter> {
        if index == 0 || index > MAX_LETTER {
            return Err(Error::LetterOutOfRange { index, max: MAX_LETTER });
        }
        Ok(Letter {
            index: index as u8,
            transposed,
        })
    }

    pub fn x(index: usize) -> Letter {
        Letter::new(index, false).expect("letter index in range")
    }

    pub fn xt(index: usize) -> Letter {
        Letter::new(index, true).expect("letter index in range")
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_transposed(self) -> bool {
        self.transposed
    }

    pub fn involute(self) -> Letter {
        Letter {
            index: self.index,
            transposed: !self.transposed,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.index, if self.transposed { "'" } else { "" })
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Letter> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s.strip_prefix('x').ok_or_else(|| bad("letters look like x3 or x3'"))?;
        let (digits, transposed) = match body.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (body, false),
        };
        let index: usize = digits.parse().map_err(|_| bad("bad letter index"))?;
        Letter::new(index, transposed)
    }
}

/// An element of the free monoid; the empty word is the unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    pub fn unity() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    pub fn letter(l: Letter) -> Word {
        Word::from_letters([l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter index, 0 for the unity.
    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn pow(&self, m: usize) -> Word {
        let mut v = SmallVec::with_capacity(self.len() * m);
        for _ in 0..m {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// `(a_1 ... a_r)^T = a_r^T ... a_1^T`.
    pub fn involute(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.involute()).collect())
    }

    pub fn rotate(&self, i: usize) -> Word {
        let mut v = SmallVec::with_capacity(self.len());
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&self.0[..i]);
        Word(v)
    }

    /// The shortest `u` with `self = u^m`, and `m`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let l = self.len();
        for p in 1..l {
            if l.is_multiple_of(p) && (p..l).all(|i| self.0[i] == self.0[i - p]) {
                return (Word::from_letters(self.0[..p].iter().copied()), l / p);
            }
        }
        (self.clone(), 1)
    }

    /// Not a proper power; the unity is not primitive.
    pub fn is_primitive(&self) -> bool {
        !self.is_unity() && self.primitive_root().1 == 1
    }

    /// Least rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.len()).map(|i| self.rotate(i)).min().unwrap_or_default()
    }

    /// Least word among the rotations of `w` and of `w^T`.
    pub fn canonical_class(&self) -> Word {
        let a = self.min_rotation();
        let b = self.involute().min_rotation();
        a.min(b)
    }

    /// Canonical representative under the involution used by `group`;
    /// for GL transposition is trivial and only rotations are identified.
    pub fn canonical_for(&self, transpose_trivial: bool) -> Word {
        if transpose_trivial {
            Word(self.0.iter().map(|l| Letter::x(l.index())).collect()).min_rotation()
        } else {
            self.canonical_class()
        }
    }

    pub fn is_equivalent(&self, o: &Word) -> bool {
        self.canonical_class() == o.canonical_class()
    }

    /// Letter counts per index `1..=d`, transposes included.
    pub fn mdeg(&self, d: usize) -> Vec<u32> {
        let mut v = vec![0; d];
        for l in self.letters() {
            if l.index() <= d {
                v[l.index() - 1] += 1;
            }
        }
        v
    }

    /// All words of length `1..=max_len` in the letters with index `<= d`,
    /// shortest first; transposed letters only when `with_transposes`.
    pub fn all_up_to(d: usize, max_len: usize, with_transposes: bool) -> Vec<Word> {
        let mut alphabet = Vec::new();
        for k in 1..=d {
            alphabet.push(Letter::x(k));
            if with_transposes {
                alphabet.push(Letter::xt(k));
            }
        }
        let mut out = Vec::new();
        let mut layer = vec![Word::unity()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| alphabet.iter().map(move |l| w.concat(&Word::letter(*l))))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Word) -> std::cmp::Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Word) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unity() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::unity());
        }
        if s.is_empty() {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "empty word; write 1 for the unity".to_string(),
            });
        }
        s.split_whitespace().map(Letter::from_str).collect::<Result<_>>().map(Word)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite linear combination of words (the unity allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSum {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl WordSum {
    pub fn zero(field: FieldSpec) -> WordSum {
        WordSum {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(field: FieldSpec, w: Word) -> WordSum {
        let mut s = WordSum::zero(field);
        s.terms.insert(w, Scalar::one(field));
        s
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Scalar, Word)>) -> Result<WordSum> {
        let mut s = WordSum::zero(field);
        for (c, w) in terms {
            s.add_term(&c, w)?;
        }
        Ok(s)
    }

    pub fn add_term(&mut self, c: &Scalar, w: Word) -> Result<()> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        let v = match self.terms.get(&w) {
            Some(old) => old.checked_add(c)?,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, v);
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single word if this is `1 * w`.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn involute(&self) -> WordSum {
        WordSum {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.involute(), c.clone())).collect(),
        }
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().map(Word::max_index).max().unwrap_or(0)
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*{w}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for WordSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl WordSum {
    /// Parses `x1 x2 + 3*x2' - 1`-style sums; `+`/`-` between summands
    /// are separate tokens.
    pub fn parse(field: FieldSpec, s: &str) -> Result<WordSum> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut out = WordSum::zero(field);
        let mut chunks: Vec<(i64, Vec<&str>)> = vec![(1, Vec::new())];
        for (i, tok) in s.split_whitespace().enumerate() {
            match tok {
                "+" => chunks.push((1, Vec::new())),
                "-" => chunks.push((-1, Vec::new())),
                _ if i == 0 && tok.len() > 1 && tok.starts_with('-') => {
                    chunks[0] = (-1, vec![&tok[1..]]);
                }
                _ => chunks.last_mut().unwrap().1.push(tok),
            }
        }
        for (sign, toks) in chunks {
            let chunk = toks.join(" ");
            if chunk.is_empty() {
                return Err(bad("empty summand"));
            }
            let (coef, word) = match chunk.split_once('*') {
                Some((c, w)) => (c.trim().parse::<i64>().map_err(|_| bad("bad coefficient"))?, w.trim().to_string()),
                None => (1, chunk),
            };
            out.add_term(&Scalar::from_i64(field, sign * coef), word.parse()?)?;
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

    #[test]
    fn involution() {
        assert_eq!(w("x1 x2'").involute(), w("x2 x1'"));
        assert_eq!(w("x1").involute(), w("x1'"));
        assert_eq!(w("x1 x3' x2").involute().involute(), w("x1 x3' x2"));
    }

    #[test]
    fn primitivity() {
        assert!(!w("x1 x1").is_primitive());
        assert!(w("x1 x2 x1").is_primitive());
        assert!(!w("x1 x2 x1 x2").is_primitive());
        assert_eq!(w("x1 x2 x1 x2").primitive_root(), (w("x1 x2"), 2));
        assert!(!Word::unity().is_primitive());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(w("x2 x1").canonical_class(), w("x1 x2"));
        assert_eq!(w("x1'").canonical_class(), w("x1"));
        assert_eq!(w("x2 x3").canonical_class(), w("x2 x3"));
        assert_eq!(w("x3' x2'").canonical_class(), w("x2 x3"));
        assert_eq!(w("x2 x1").canonical_for(true), w("x1 x2"));
    }

    #[test]
    fn order_and_text() {
        assert!(w("x1'") < w("x2"));
        assert!(w("x3") < w("x1 x1"));
        assert_eq!(w("x1 x2' x3").to_string(), "x1 x2' x3");
        assert_eq!(Word::unity().to_string(), "1");
        assert_eq!(w("1"), Word::unity());
        assert!("x0".parse::<Word>().is_err());
        assert!("y1".parse::<Word>().is_err());
        assert_eq!(w("x1 x2 x2").mdeg(3), vec![1, 2, 0]);
    }

    #[test]
    fn enumeration() {
        assert_eq!(Word::all_up_to(2, 2, true).len(), 20);
        assert_eq!(Word::all_up_to(1, 3, false).len(), 3);
    }

    #[test]
    fn word_sums() {
        let q = FieldSpec::Rationals;
        let s = WordSum::parse(q, "x1 x2 - 3*x2' + 1").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "1 - 3*x2' + x1 x2");
        assert_eq!(WordSum::parse(q, &s.to_string()).unwrap(), s);
        assert_eq!(s.involute().to_string(), "1 - 3*x2 + x2' x1'");
        assert_eq!(WordSum::parse(q, "x1").unwrap().as_word(), Some(&w("x1")));
    }
}
