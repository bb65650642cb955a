//! Multigraded components of the kernel of `phi_n`, computed by exact
//! linear algebra and compared with the span of relation multiples.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHasher};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval_maps::{relation_kind_for, EvalContext, Evaluator};
use crate::exactalg::{FieldSpec, Monomial, Poly, Scalar, ScalarMatrix};
use crate::matform::Group;
use crate::quiver_rel::{build_relation, substitute_path, RelationExpr, Triple};
use crate::sigma_ring::{SigmaMonomial, SigmaPoly, SigmaSymbol};
use crate::wordalg::{Word, WordSum};

/// Largest total degree of a component.
pub const MAX_COMPONENT_DEGREE: u32 = 6;

/// Longest word substituted into a relation generator.
pub const MAX_SUBSTITUTION_LEN: usize = 2;

/// Generators with sum arguments tried per tier and component once the
/// word generators fall short of the kernel.
pub const MAX_ESCALATION: usize = 1500;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBasis {
    pub delta: Vec<u32>,
    pub basis: Vec<SigmaMonomial>,
    index: FxHashMap<SigmaMonomial, usize>,
}

impl ComponentBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, m: &SigmaMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous element of this component.
    pub fn coordinates(&self, f: &SigmaPoly) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(f.field()); self.len()];
        for (m, c) in f.terms() {
            let i = self
                .position(m)
                .ok_or_else(|| Error::InvalidArgument(format!("{m} is not of multidegree {:?}", self.delta)))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn element(&self, field: FieldSpec, v: &[Scalar]) -> Result<SigmaPoly> {
        let mut out = SigmaPoly::zero(field);
        for (m, c) in self.basis.iter().zip(v) {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    /// Stable hash of the basis listing.
    pub fn hash(&self) -> String {
        let mut h = FxHasher::default();
        for m in &self.basis {
            m.to_string().hash(&mut h);
        }
        format!("{:016x}", h.finish())
    }
}

fn total(delta: &[u32]) -> u32 {
    delta.iter().sum()
}

fn fits(m: &[u32], delta: &[u32]) -> bool {
    m.iter().zip(delta).all(|(a, b)| a <= b)
}

fn minus(delta: &[u32], m: &[u32]) -> Vec<u32> {
    delta.iter().zip(m).map(|(a, b)| a - b).collect()
}

fn check_cap(delta: &[u32]) -> Result<()> {
    if total(delta) > MAX_COMPONENT_DEGREE {
        return Err(Error::CapExceeded(format!(
            "component {delta:?} has degree {} > {MAX_COMPONENT_DEGREE}",
            total(delta)
        )));
    }
    Ok(())
}

/// Canonical primitive words of multidegree `<= delta`; transposed letters
/// only off `GL`.
fn symbol_words(delta: &[u32], group: Group) -> Vec<Word> {
    Word::all_up_to(delta.len(), total(delta) as usize, group != Group::Gl)
        .into_iter()
        .filter(|w| w.is_primitive() && w.canonical_class() == *w && fits(&w.mdeg(delta.len()), delta))
        .collect()
}

/// All monomials in the symbols `sigma_t(w)` of multidegree `delta`.
pub fn component_basis(delta: &[u32], group: Group) -> Result<ComponentBasis> {
    check_cap(delta)?;
    let d = delta.len();
    let mut symbols = Vec::new();
    for w in symbol_words(delta, group) {
        let m = w.mdeg(d);
        let mut t = 1;
        while fits(&m.iter().map(|x| x * t).collect::<Vec<_>>(), delta) {
            symbols.push((SigmaSymbol::new(t, &w)?, m.iter().map(|x| x * t).collect::<Vec<_>>()));
            t += 1;
        }
    }
    let mut basis = Vec::new();
    let mut acc = Vec::new();
    fill(&symbols, 0, delta.to_vec(), &mut acc, &mut basis);
    basis.sort();
    let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(ComponentBasis {
        delta: delta.to_vec(),
        basis,
        index,
    })
}

fn fill(
    symbols: &[(SigmaSymbol, Vec<u32>)],
    i: usize,
    rem: Vec<u32>,
    acc: &mut Vec<(SigmaSymbol, u32)>,
    out: &mut Vec<SigmaMonomial>,
) {
    if rem.iter().all(|&x| x == 0) {
        out.push(SigmaMonomial::from_factors(acc.iter().cloned()));
        return;
    }
    if i == symbols.len() {
        return;
    }
    let (s, m) = &symbols[i];
    let mut rest = rem.clone();
    let mut e = 0;
    loop {
        if e > 0 {
            acc.push((s.clone(), e));
        }
        fill(symbols, i + 1, rest.clone(), acc, out);
        if e > 0 {
            acc.pop();
        }
        if !fits(m, &rest) {
            break;
        }
        rest = minus(&rest, m);
        e += 1;
    }
}

/// Images of a basis as rows of a coefficient matrix.
fn image_matrix(ev: &Evaluator, basis: &ComponentBasis) -> Result<(ScalarMatrix, FxHashMap<Monomial, usize>)> {
    let field = ev.ctx().field;
    let images = basis
        .basis
        .iter()
        .map(|m| ev.phi(&SigmaPoly::monomial(m.clone(), Scalar::one(field))))
        .collect::<Result<Vec<_>>>()?;
    let mut cols: FxHashMap<Monomial, usize> = FxHashMap::default();
    for p in &images {
        for (m, _) in p.terms() {
            let next = cols.len();
            cols.entry(m).or_insert(next);
        }
    }
    let mut mat = ScalarMatrix::zeros(field, basis.len(), cols.len());
    for (i, p) in images.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(i, cols[&m], c);
        }
    }
    Ok((mat, cols))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelComponent {
    pub basis: ComponentBasis,
    pub image_rank: usize,
    pub kernel: Vec<SigmaPoly>,
}

impl KernelComponent {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }
}

fn left_kernel(field: FieldSpec, mat: &ScalarMatrix) -> Vec<Vec<Scalar>> {
    if mat.cols() == 0 {
        return (0..mat.rows())
            .map(|i| (0..mat.rows()).map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) }).collect())
            .collect();
    }
    mat.transpose().null_space()
}

/// The `delta` component of `ker phi_n`.
pub fn kernel_component(delta: &[u32], ctx: &EvalContext) -> Result<KernelComponent> {
    if delta.len() != ctx.d {
        return Err(Error::InvalidArgument(format!("multidegree {delta:?} does not have {} entries", ctx.d)));
    }
    let basis = component_basis(delta, ctx.group)?;
    let ev = Evaluator::new(*ctx)?;
    let (mat, _) = image_matrix(&ev, &basis)?;
    let kernel = left_kernel(ctx.field, &mat)
        .iter()
        .map(|v| basis.element(ctx.field, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelComponent {
        image_rank: mat.rank(),
        kernel,
        basis,
    })
}

/// Largest matrix size used to certify an expansion.
pub const MAX_CERTIFY_SIZE: usize = 5;

/// Relation generator of the ideal before multiplication by cofactors.
#[derive(Debug, Clone)]
struct Generator {
    label: String,
    /// Degrees of the components that can land in the target.
    degrees: (u32, u32),
    /// Multidegree when every argument is homogeneous.
    mdeg: Option<Vec<u32>>,
    kind: GenKind,
}

#[derive(Debug, Clone)]
enum GenKind {
    /// `sigma_t(a)` for `GL`.
    Power { t: u32, a: WordSum },
    /// A relation family evaluated at a triple.
    Relation { expr: Rc<RelationExpr>, triple: Triple },
}

impl Generator {
    /// Formal expansion when every substituted word is primitive.
    fn formal(&self, field: FieldSpec) -> Result<Option<SigmaPoly>> {
        match &self.kind {
            GenKind::Power { t, a } => match a.as_word() {
                Some(w) if w.is_primitive() => Ok(Some(SigmaPoly::symbol(field, *t, w)?)),
                _ => Ok(None),
            },
            GenKind::Relation { expr, triple } => {
                let Some(words) = triple.as_words() else {
                    return Ok(None);
                };
                let mut out = SigmaPoly::zero(field);
                for term in &expr.terms {
                    let mut factors = Vec::new();
                    for f in &term.factors {
                        let w = substitute_path(&f.path, words);
                        if !w.is_primitive() {
                            return Ok(None);
                        }
                        factors.push((SigmaSymbol::new(f.k, &w)?, 1));
                    }
                    out.add_term(SigmaMonomial::from_factors(factors), &Scalar::from_i64(field, term.sign as i64))?;
                }
                Ok(Some(out))
            }
        }
    }

    fn evaluate(&self, ev: &Evaluator) -> Result<Poly> {
        match &self.kind {
            GenKind::Power { t, a } => {
                if *t as usize > ev.ctx().n {
                    return Ok(Poly::zero(ev.ctx().field));
                }
                let m = ev.realizer().realize_sum(a)?;
                Ok(crate::matform::sigma_coeffs(&m).sigma(*t as usize))
            }
            GenKind::Relation { expr, triple } => ev.eval_relation(expr, triple),
        }
    }
}

/// Common multidegree of the words of a slot and the range of lengths.
fn slot_shape(s: &WordSum, d: usize) -> (Option<Vec<u32>>, u32, u32) {
    let mut mdeg = Some(vec![0; d]);
    let (mut lo, mut hi) = (u32::MAX, 0);
    for (i, (w, _)) in s.terms().enumerate() {
        let m = w.mdeg(d);
        lo = lo.min(w.len() as u32);
        hi = hi.max(w.len() as u32);
        if i == 0 {
            mdeg = Some(m);
        } else if mdeg.as_ref() != Some(&m) {
            mdeg = None;
        }
    }
    (mdeg, lo.min(hi), hi)
}

/// Multidegree (if homogeneous) and degree range of a product of slots.
fn combine(parts: &[(u32, &WordSum)], d: usize) -> (Option<Vec<u32>>, u32, u32) {
    let mut mdeg = Some(vec![0; d]);
    let (mut lo, mut hi) = (0, 0);
    for (k, s) in parts {
        let (m, l, h) = slot_shape(s, d);
        lo += k * l;
        hi += k * h;
        mdeg = match (mdeg, m) {
            (Some(a), Some(b)) => Some(a.iter().zip(&b).map(|(x, y)| x + k * y).collect()),
            _ => None,
        };
    }
    (mdeg, lo, hi)
}

/// Scalars separating the pieces of a sum of words with equal multidegree.
const LAMBDAS: [i64; 5] = [1, -1, 2, -2, 3];

/// `chosen[0] + c_1 chosen[1] + ...`, where `c_i` runs over [`LAMBDAS`] when
/// `chosen[i]` shares its multidegree with an earlier summand and is 1
/// otherwise.
fn scaled_sums(field: FieldSpec, d: usize, chosen: &[&Word]) -> Vec<WordSum> {
    let mut sums = vec![Vec::new()];
    for (i, w) in chosen.iter().enumerate() {
        let scaled = chosen[..i].iter().any(|u| u.mdeg(d) == w.mdeg(d));
        let coeffs: &[i64] = if scaled { &LAMBDAS } else { &[1] };
        sums = sums
            .into_iter()
            .flat_map(|s: Vec<(Scalar, Word)>| {
                coeffs.iter().map(move |&c| {
                    let mut s = s.clone();
                    s.push((Scalar::from_i64(field, c), (*w).clone()));
                    s
                })
            })
            .collect();
    }
    sums.into_iter()
        .map(|t| WordSum::from_terms(field, t).expect("same field"))
        .filter(|s| s.len() == chosen.len())
        .collect()
}

/// Substitution arguments by tier: single words of length `<=`
/// [`MAX_SUBSTITUTION_LEN`]; sums of two to four letters; sums of a
/// two-letter word and two letters, and sums `u + v` of distinct words.
fn arguments(field: FieldSpec, d: usize, group: Group) -> [Vec<WordSum>; 3] {
    let words = Word::all_up_to(d, MAX_SUBSTITUTION_LEN, group != Group::Gl);
    let letters: Vec<&Word> = words.iter().filter(|w| w.len() == 1).collect();
    let mut letter_sums = Vec::new();
    for mask in 1u32..(1 << letters.len()) {
        if (2..=4).contains(&mask.count_ones()) {
            let chosen: Vec<&Word> = (0..letters.len()).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect();
            letter_sums.extend(scaled_sums(field, d, &chosen));
        }
    }
    let mut mixed_sums = Vec::new();
    for u in words.iter().filter(|w| w.len() == 2) {
        for (i, v) in letters.iter().enumerate() {
            for w in &letters[i + 1..] {
                mixed_sums.extend(scaled_sums(field, d, &[u, v, w]));
            }
        }
    }
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if u.len() > 1 || v.len() > 1 {
                mixed_sums.extend(scaled_sums(field, d, &[u, v]));
            }
        }
    }
    [words.iter().map(|w| WordSum::word(field, w.clone())).collect(), letter_sums, mixed_sums]
}

/// Feeds the generators of `tier` to `visit` until it returns `false`. A
/// generator belongs to the highest tier among its arguments; the third
/// relation slot takes no sums involving longer words.
fn generators(delta: &[u32], ctx: &EvalContext, tier: usize, mut visit: impl FnMut(Generator) -> Result<bool>) -> Result<()> {
    let d = delta.len();
    let field = ctx.field;
    let deg = total(delta);
    let n = ctx.n as u32;
    let args = arguments(field, d, ctx.group);
    let admissible = |mdeg: &Option<Vec<u32>>, lo: u32| lo > 0 && lo <= deg && mdeg.as_ref().is_none_or(|m| fits(m, delta));
    if ctx.group == Group::Gl {
        for t in (n + 1)..=deg {
            for a in &args[tier] {
                let (mdeg, lo, hi) = combine(&[(t, a)], d);
                if admissible(&mdeg, lo)
                    && !visit(Generator {
                        label: format!("s{t}({a})"),
                        degrees: (lo, hi.min(deg)),
                        mdeg,
                        kind: GenKind::Power { t, a: a.clone() },
                    })?
                {
                    return Ok(());
                }
            }
        }
        return Ok(());
    }
    let kind = relation_kind_for(ctx.group)?;
    let unity = WordSum::word(field, Word::unity());
    let tagged = |upto: usize| -> Vec<(usize, &WordSum)> { (0..=upto).flat_map(|k| args[k].iter().map(move |a| (k, a))).collect() };
    let ab = tagged(tier);
    let mut cs = vec![(0, &unity)];
    cs.extend(tagged(tier.min(1)));
    let placeholder = [(0, &args[0][0])];
    for s in (n + 1)..=(2 * deg) {
        for r in 0..=s / 2 {
            let t = s - 2 * r;
            if t > deg || (t == 0 && r == 0) {
                continue;
            }
            let expr = Rc::new(build_relation(kind, t, r)?);
            let a_list: &[(usize, &WordSum)] = if t == 0 { &placeholder } else { &ab };
            let b_list: &[(usize, &WordSum)] = if r == 0 { &placeholder } else { &ab };
            let c_list: &[(usize, &WordSum)] = if r == 0 { &cs[..1] } else { &cs };
            for &(ka, a) in a_list {
                for &(kb, b) in b_list {
                    for &(kc, c) in c_list {
                        if ka.max(kb).max(kc) != tier {
                            continue;
                        }
                        let (mdeg, lo, hi) = combine(&[(t, a), (r, b), (r, c)], d);
                        if !admissible(&mdeg, lo) {
                            continue;
                        }
                        let more = visit(Generator {
                            label: format!("{kind}_{t},{r}({a}; {b}; {c})"),
                            degrees: (lo, hi.min(deg)),
                            mdeg,
                            kind: GenKind::Relation {
                                expr: Rc::clone(&expr),
                                triple: Triple {
                                    a: a.clone(),
                                    b: b.clone(),
                                    c: c.clone(),
                                },
                            },
                        })?;
                        if !more {
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Evaluation at the least size where the basis images are independent,
/// so every element of the component is determined by its image.
struct Certifier {
    basis: ComponentBasis,
    ev: Evaluator,
    cols: FxHashMap<Monomial, usize>,
    /// Rows = monomials of the image, columns = basis elements.
    mat: ScalarMatrix,
}

impl Certifier {
    fn new(delta: &[u32], ctx: &EvalContext) -> Result<Option<Certifier>> {
        let basis = component_basis(delta, ctx.group)?;
        let group = if ctx.group == Group::Gl { Group::Gl } else { Group::O };
        for big in 1..=MAX_CERTIFY_SIZE.min(total(delta) as usize + 1) {
            let ev = Evaluator::new(EvalContext::new(group, big, ctx.d, ctx.field)?)?;
            let (mat, cols) = image_matrix(&ev, &basis)?;
            if mat.rank() == basis.len() {
                return Ok(Some(Certifier {
                    basis,
                    ev,
                    cols,
                    mat: mat.transpose(),
                }));
            }
        }
        Ok(None)
    }

    /// The element of the component with the given image, if any.
    fn expand(&self, image: &Poly) -> Result<Option<SigmaPoly>> {
        let field = self.ev.ctx().field;
        let mut rhs = vec![Scalar::zero(field); self.mat.rows()];
        for (m, c) in image.terms() {
            match self.cols.get(&m) {
                Some(&i) => rhs[i] = c,
                None => return Ok(None),
            }
        }
        match self.mat.solve(&rhs) {
            Some(v) => Ok(Some(self.basis.element(field, &v)?)),
            None => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanComponent {
    pub group: Group,
    pub n: usize,
    pub d: usize,
    pub field: String,
    pub delta: Vec<u32>,
    pub basis: usize,
    pub basis_hash: String,
    pub kernel_dim: usize,
    pub span_dim: usize,
    /// Distinct expanded generator components used for the span.
    pub generators: usize,
    /// Expansions found by certification rather than formally.
    pub certified: usize,
    /// Generators checked only through their image under `phi_n`.
    pub evaluated_only: Vec<String>,
    /// Generators with sum arguments tried, at most [`MAX_ESCALATION`] per tier.
    pub escalated: usize,
    /// Generators or span vectors found outside the kernel.
    pub violations: Vec<String>,
}

impl SpanComponent {
    pub fn status(&self) -> &'static str {
        if !self.violations.is_empty() {
            "violation"
        } else if self.span_dim == self.kernel_dim {
            "equal"
        } else {
            "shortfall"
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.span_dim <= self.kernel_dim
    }
}

/// Multidegrees `m <= delta` with `|m| = degree`.
fn sub_degrees(delta: &[u32], degree: u32) -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    compositions(delta.len(), degree, &mut Vec::new(), &mut all);
    all.retain(|m| fits(m, delta));
    all
}

/// Ideal elements in the `delta` component: relation generators split into
/// homogeneous components of degree `<= |delta|`, times every cofactor
/// monomial. Word arguments come first; on a shortfall sums of letters,
/// then sums involving longer words, at most [`MAX_ESCALATION`] of each.
pub fn ideal_span_component(delta: &[u32], ctx: &EvalContext) -> Result<SpanComponent> {
    let field = ctx.field;
    let kernel = kernel_component(delta, ctx)?;
    let basis = &kernel.basis;
    let ev = Evaluator::new(*ctx)?;
    let (image, _) = image_matrix(&ev, basis)?;
    let mut span = Echelon::default();
    let mut seen = BTreeSet::new();
    let mut certified = 0;
    let mut evaluated_only = Vec::new();
    let mut violations = Vec::new();
    let mut certifiers: BTreeMap<Vec<u32>, Option<Certifier>> = BTreeMap::new();
    let mut cofactors: BTreeMap<Vec<u32>, ComponentBasis> = BTreeMap::new();
    let mut escalated = 0;
    for tier in 0..3 {
        if tier > 0 && span.rank() >= kernel.dim() {
            break;
        }
        let mut budget = MAX_ESCALATION;
        generators(delta, ctx, tier, |g| {
            if tier > 0 {
                if span.rank() >= kernel.dim() || budget == 0 {
                    return Ok(false);
                }
                budget -= 1;
                escalated += 1;
            }
            let mut parts = Vec::new();
            let mut complete = true;
            if let (Some(m), Some(e)) = (&g.mdeg, g.formal(field)?) {
                parts.push((m.clone(), e));
            } else {
                let targets = match &g.mdeg {
                    Some(m) => vec![m.clone()],
                    None => (g.degrees.0..=g.degrees.1).flat_map(|k| sub_degrees(delta, k)).collect(),
                };
                let mut images: BTreeMap<usize, Poly> = BTreeMap::new();
                for m in targets {
                    if !certifiers.contains_key(&m) {
                        certifiers.insert(m.clone(), Certifier::new(&m, ctx)?);
                    }
                    let Some(c) = &certifiers[&m] else {
                        complete = false;
                        continue;
                    };
                    let size = c.ev.ctx().n;
                    if let std::collections::btree_map::Entry::Vacant(e) = images.entry(size) {
                        e.insert(g.evaluate(&c.ev)?);
                    }
                    let piece = images[&size]
                        .x_components(ctx.d)
                        .into_iter()
                        .find(|(k, _)| *k == m)
                        .map(|(_, p)| p)
                        .unwrap_or_else(|| Poly::zero(field));
                    match c.expand(&piece)? {
                        Some(e) => {
                            certified += 1;
                            parts.push((m, e));
                        }
                        None => complete = false,
                    }
                }
            }
            if !complete {
                if !g.evaluate(&ev)?.is_zero() {
                    violations.push(g.label.clone());
                }
                evaluated_only.push(g.label.clone());
            }
            for (m, e) in parts {
                if e.is_zero() || !seen.insert(e.to_string()) {
                    continue;
                }
                let rest = minus(delta, &m);
                if !cofactors.contains_key(&rest) {
                    cofactors.insert(rest.clone(), component_basis(&rest, ctx.group)?);
                }
                for cm in &cofactors[&rest].basis {
                    let prod = e.checked_mul(&SigmaPoly::monomial(cm.clone(), Scalar::one(field)))?;
                    let v = basis.coordinates(&prod)?;
                    if span.insert(v.clone())? && !in_kernel(&image, &v)? {
                        violations.push(format!("{} * {cm}", g.label));
                    }
                }
            }
            Ok(true)
        })?;
    }
    Ok(SpanComponent {
        group: ctx.group,
        n: ctx.n,
        d: ctx.d,
        field: field.tag(),
        delta: delta.to_vec(),
        basis: basis.len(),
        basis_hash: basis.hash(),
        kernel_dim: kernel.dim(),
        span_dim: span.rank(),
        generators: seen.len(),
        certified,
        evaluated_only,
        escalated,
        violations,
    })
}


/// Rows kept in echelon form, pivots normalized to one.
#[derive(Debug, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, mut v: Vec<Scalar>) -> Result<bool> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.checked_sub(&c.checked_mul(y)?)?;
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].inv()?;
        for x in v.iter_mut() {
            *x = x.checked_mul(&inv)?;
        }
        self.rows.push((p, v));
        Ok(true)
    }
}

fn in_kernel(image: &ScalarMatrix, v: &[Scalar]) -> Result<bool> {
    if image.cols() == 0 {
        return Ok(true);
    }
    let row = ScalarMatrix::from_rows(image.field(), vec![v.to_vec()])?;
    let p = row.mul(image)?;
    Ok((0..p.cols()).all(|j| p.get(0, j).is_zero()))
}

/// Multidegrees with `1 <= |delta| <= maxdeg`, by degree then reverse
/// lexicographically.
pub fn multidegrees(d: usize, maxdeg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 1..=maxdeg {
        let mut layer = Vec::new();
        compositions(d, deg, &mut Vec::new(), &mut layer);
        out.extend(layer);
    }
    out
}

fn compositions(d: usize, rem: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if acc.len() + 1 == d {
        acc.push(rem);
        out.push(acc.clone());
        acc.pop();
        return;
    }
    for v in (0..=rem).rev() {
        acc.push(v);
        compositions(d, rem - v, acc, out);
        acc.pop();
    }
}

/// One JSON document per component, keyed by group, size, letters,
/// field and multidegree.
#[derive(Debug, Clone)]
pub struct KernelCache {
    dir: PathBuf,
}

impl KernelCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<KernelCache> {
        std::fs::create_dir_all(dir.as_ref())?;
        Ok(KernelCache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    fn path(&self, ctx: &EvalContext, delta: &[u32]) -> PathBuf {
        let delta: Vec<String> = delta.iter().map(|x| x.to_string()).collect();
        self.dir.join(format!(
            "{}-n{}-d{}-{}-{}.json",
            ctx.group.to_string().to_lowercase(),
            ctx.n,
            ctx.d,
            ctx.field.tag(),
            delta.join("_")
        ))
    }

    /// A cached component whose basis hash still matches.
    pub fn load(&self, ctx: &EvalContext, delta: &[u32]) -> Result<Option<SpanComponent>> {
        let Ok(text) = std::fs::read_to_string(self.path(ctx, delta)) else {
            return Ok(None);
        };
        let Ok(c) = serde_json::from_str::<SpanComponent>(&text) else {
            return Ok(None);
        };
        Ok((c.basis_hash == component_basis(delta, ctx.group)?.hash()).then_some(c))
    }

    pub fn store(&self, ctx: &EvalContext, c: &SpanComponent) -> Result<()> {
        let text = serde_json::to_string_pretty(c).expect("serializable");
        std::fs::write(self.path(ctx, &c.delta), text + "\n")?;
        Ok(())
    }
}

/// Every component up to `maxdeg`, reusing cached entries.
pub fn dimension_table(ctx: &EvalContext, maxdeg: u32, cache: Option<&KernelCache>) -> Result<Vec<SpanComponent>> {
    if maxdeg > MAX_COMPONENT_DEGREE {
        return Err(Error::CapExceeded(format!("maxdeg {maxdeg} > {MAX_COMPONENT_DEGREE}")));
    }
    let mut out = Vec::new();
    for delta in multidegrees(ctx.d, maxdeg) {
        if let Some(c) = cache.map(|c| c.load(ctx, &delta)).transpose()?.flatten() {
            out.push(c);
            continue;
        }
        let c = ideal_span_component(&delta, ctx)?;
        if let Some(cache) = cache {
            cache.store(ctx, &c)?;
        }
        out.push(c);
    }
    Ok(out)
}

/// Plain-text rendering of a dimension table.
pub fn format_table(rows: &[SpanComponent]) -> String {
    let mut s = format!("{:<12} {:>6} {:>7} {:>5}  {}\n", "delta", "basis", "kernel", "span", "status");
    for r in rows {
        let delta: Vec<String> = r.delta.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!(
            "{:<12} {:>6} {:>7} {:>5}  {}\n",
            format!("({})", delta.join(",")),
            r.basis,
            r.kernel_dim,
            r.span_dim,
            r.status()
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(b: &ComponentBasis) -> Vec<String> {
        b.basis.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        let b = component_basis(&[3], Group::Gl).unwrap();
        assert_eq!(b.len(), 3);
        let mut got = names(&b);
        got.sort();
        let mut want: Vec<String> = ["s1(x1)^3", "s1(x1)*s2(x1)", "s3(x1)"].iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(names(&component_basis(&[1], Group::Gl).unwrap()), vec!["s1(x1)"]);
        let one = component_basis(&[0, 0], Group::Sp).unwrap();
        assert_eq!(one.basis, vec![SigmaMonomial::one()]);
        assert!(component_basis(&[4, 3], Group::Sp).is_err());
    }

    #[test]
    fn gl2_components() {
        let ctx = EvalContext::new(Group::Gl, 2, 1, FieldSpec::prime(101).unwrap()).unwrap();
        assert_eq!(kernel_component(&[2], &ctx).unwrap().dim(), 0);
        let k3 = kernel_component(&[3], &ctx).unwrap();
        assert_eq!(k3.dim(), 1);
        assert_eq!(k3.kernel[0].to_string(), "s3(x1)");
        for deg in 1..=4 {
            let c = ideal_span_component(&[deg], &ctx).unwrap();
            assert_eq!(c.status(), "equal", "{c:?}");
        }
    }

    #[test]
    fn sp2_degree_two() {
        let ctx = EvalContext::new(Group::Sp, 2, 2, FieldSpec::prime(7).unwrap()).unwrap();
        let c = ideal_span_component(&[1, 1], &ctx).unwrap();
        assert_eq!((c.kernel_dim, c.span_dim, c.status()), (1, 1, "equal"));
        let c = ideal_span_component(&[1, 0], &ctx).unwrap();
        assert_eq!((c.kernel_dim, c.span_dim), (0, 0));
    }

    #[test]
    fn orthogonal_needs_letter_sums() {
        let ctx = EvalContext::new(Group::O, 3, 2, FieldSpec::prime(7).unwrap()).unwrap();
        let c = ideal_span_component(&[3, 1], &ctx).unwrap();
        assert_eq!((c.kernel_dim, c.span_dim, c.status()), (4, 4, "equal"));
        assert!(c.escalated > 0);
        let ctx = EvalContext::new(Group::O, 2, 2, FieldSpec::prime(7).unwrap()).unwrap();
        let c = ideal_span_component(&[2, 1], &ctx).unwrap();
        assert_eq!((c.kernel_dim, c.span_dim), (3, 3));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("kernel-cache-{}", std::process::id()));
        let cache = KernelCache::new(&dir).unwrap();
        let ctx = EvalContext::new(Group::Gl, 2, 1, FieldSpec::Rationals).unwrap();
        let first = dimension_table(&ctx, 3, Some(&cache)).unwrap();
        assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 3);
        assert_eq!(dimension_table(&ctx, 3, Some(&cache)).unwrap(), first);
        assert!(format_table(&first).contains("(3)"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn multidegree_listing() {
        assert_eq!(multidegrees(2, 2), vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
