//! The maps `Psi_n`, `mu_n`, `theta_n` between the symplectic invariants,
//! the skew algebra `I_n` and its `Z J Z^T` model `I'_n`, and checks of
//! the composite identities.

use std::collections::HashMap;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Poly, Scalar};
use crate::matform::{
    generic_matrix, sigma_of_product, skew_congruence_witness, standard_j, MatPoly, MatScalar, MatrixFamily,
};

/// One factor of a generator pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    X(usize),
    /// Ordinary transpose `X_k^T`.
    Xt(usize),
    /// Symplectic transpose `X_k^*`.
    Xs(usize),
    Y,
    Z,
    Zt,
    J,
    /// The block `Z J Z^T`.
    Zjz,
}

impl Factor {
    fn is_letter(self) -> bool {
        matches!(self, Factor::X(_) | Factor::Xt(_))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::X(k) => write!(f, "X{k}"),
            Factor::Xt(k) => write!(f, "X{k}^T"),
            Factor::Xs(k) => write!(f, "X{k}*"),
            Factor::Y => write!(f, "Y"),
            Factor::Z => write!(f, "Z"),
            Factor::Zt => write!(f, "Z^T"),
            Factor::J => write!(f, "J"),
            Factor::Zjz => write!(f, "ZJZ^T"),
        }
    }
}

impl std::str::FromStr for Factor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Factor> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        match s {
            "Y" => return Ok(Factor::Y),
            "Z" => return Ok(Factor::Z),
            "Z^T" => return Ok(Factor::Zt),
            "J" => return Ok(Factor::J),
            "ZJZ^T" => return Ok(Factor::Zjz),
            _ => {}
        }
        let rest = s.strip_prefix('X').ok_or_else(|| bad("unknown factor"))?;
        let (digits, ctor): (&str, fn(usize) -> Factor) = if let Some(d) = rest.strip_suffix("^T") {
            (d, Factor::Xt)
        } else if let Some(d) = rest.strip_suffix('*') {
            (d, Factor::Xs)
        } else {
            (rest, Factor::X)
        };
        let k: usize = digits.parse().map_err(|_| bad("bad matrix index"))?;
        if k == 0 {
            return Err(bad("matrix indices start at 1"));
        }
        Ok(ctor(k))
    }
}

/// Which algebra a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algebra {
    /// `sigma_t(w)`, `w` a word in `X_k, X_k^*`.
    Sp,
    /// `sigma_t(A_1 Y ... A_r Y)`.
    I,
    /// `sigma_t(A_1 ZJZ^T ... A_r ZJZ^T)`.
    IPrime,
}

/// `coeff * sigma_t(F_1 ... F_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorExpr {
    pub coeff: i64,
    pub t: u32,
    pub factors: Vec<Factor>,
}

impl GeneratorExpr {
    /// Consecutive `Z, J, Z^T` are merged into one block.
    pub fn new(coeff: i64, t: u32, factors: Vec<Factor>) -> GeneratorExpr {
        let mut out = Vec::with_capacity(factors.len());
        let mut i = 0;
        while i < factors.len() {
            if factors[i..].starts_with(&[Factor::Z, Factor::J, Factor::Zt]) {
                out.push(Factor::Zjz);
                i += 3;
            } else {
                out.push(factors[i]);
                i += 1;
            }
        }
        GeneratorExpr { coeff, t, factors: out }
    }

    pub fn classify(&self) -> Result<Algebra> {
        let f = &self.factors;
        let mismatch = || Error::PatternMismatch(self.to_string());
        if self.t == 0 || f.is_empty() {
            return Err(mismatch());
        }
        if f.iter().all(|x| matches!(x, Factor::X(_) | Factor::Xs(_))) {
            return Ok(Algebra::Sp);
        }
        if f.len() % 2 == 1 {
            return Err(mismatch());
        }
        let slot = f[1];
        let ok = f.chunks(2).all(|c| c[0].is_letter() && c[1] == slot);
        match (ok, slot) {
            (true, Factor::Y) => Ok(Algebra::I),
            (true, Factor::Zjz) => Ok(Algebra::IPrime),
            _ => Err(mismatch()),
        }
    }

    fn expect(&self, a: Algebra) -> Result<()> {
        if self.classify()? != a {
            return Err(Error::PatternMismatch(format!("{self} is not a generator of {a:?}")));
        }
        Ok(())
    }

    /// Exact value with generic `X_k`, skew `Y`, generic `Z`.
    pub fn evaluate(&self, n: usize, field: FieldSpec) -> Result<Poly> {
        let mut cache: HashMap<Factor, MatPoly> = HashMap::new();
        for f in &self.factors {
            if !cache.contains_key(f) {
                cache.insert(*f, factor_matrix(*f, n, field)?);
            }
        }
        let mats: Vec<&MatPoly> = self.factors.iter().map(|f| &cache[f]).collect();
        sigma_of_product(&mats, self.t as usize).scale(&Scalar::from_i64(field, self.coeff))
    }

    /// Value after `Z := z` and `Y := y` (each when given), substituted in
    /// the factor matrices.
    pub fn evaluate_at(&self, n: usize, field: FieldSpec, z: Option<&MatPoly>, y: Option<&MatPoly>) -> Result<Poly> {
        let mut cache: HashMap<Factor, MatPoly> = HashMap::new();
        for f in &self.factors {
            if cache.contains_key(f) {
                continue;
            }
            let m = match (f, z, y) {
                (Factor::Z, Some(z), _) => z.clone(),
                (Factor::Zt, Some(z), _) => z.transpose(),
                (Factor::Zjz, Some(z), _) => &(z * &standard_j(field, n)?) * &z.transpose(),
                (Factor::Y, _, Some(y)) => y.clone(),
                _ => factor_matrix(*f, n, field)?,
            };
            cache.insert(*f, m);
        }
        let mats: Vec<&MatPoly> = self.factors.iter().map(|f| &cache[f]).collect();
        sigma_of_product(&mats, self.t as usize).scale(&Scalar::from_i64(field, self.coeff))
    }

    fn with(&self, coeff: i64, factors: Vec<Factor>) -> GeneratorExpr {
        GeneratorExpr::new(coeff, self.t, factors)
    }

    fn sign(&self, count: usize) -> i64 {
        if (count * self.t as usize) % 2 == 1 {
            -self.coeff
        } else {
            self.coeff
        }
    }
}

impl fmt::Display for GeneratorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeff {
            1 => {}
            -1 => write!(f, "-")?,
            c => write!(f, "{c}*")?,
        }
        write!(f, "s{}(", self.t)?;
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for GeneratorExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<GeneratorExpr> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s0 = s.trim();
        let (coeff, rest) = if let Some(r) = s0.strip_prefix('-') {
            (-1, r)
        } else if let Some((c, r)) = s0.split_once('*').filter(|(c, _)| c.parse::<i64>().is_ok()) {
            (c.parse().expect("checked"), r)
        } else {
            (1, s0)
        };
        let rest = rest.strip_prefix('s').ok_or_else(|| bad("expected s<t>(...)"))?;
        let (t, body) = rest.split_once('(').ok_or_else(|| bad("missing '('"))?;
        let t: u32 = t.parse().map_err(|_| bad("bad t"))?;
        let body = body.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
        let factors = body.split_whitespace().map(str::parse).collect::<Result<Vec<Factor>>>()?;
        Ok(GeneratorExpr::new(coeff, t, factors))
    }
}

fn factor_matrix(f: Factor, n: usize, field: FieldSpec) -> Result<MatPoly> {
    Ok(match f {
        Factor::X(k) => generic_matrix(MatrixFamily::X(k), n, field)?,
        Factor::Xt(k) => generic_matrix(MatrixFamily::X(k), n, field)?.transpose(),
        Factor::Xs(k) => generic_matrix(MatrixFamily::X(k), n, field)?.symplectic_transpose()?,
        Factor::Y => generic_matrix(MatrixFamily::Y, n, field)?,
        Factor::Z => generic_matrix(MatrixFamily::Z, n, field)?,
        Factor::Zt => generic_matrix(MatrixFamily::Z, n, field)?.transpose(),
        Factor::J => standard_j(field, n)?,
        Factor::Zjz => {
            let z = generic_matrix(MatrixFamily::Z, n, field)?;
            &(&z * &standard_j(field, n)?) * &z.transpose()
        }
    })
}

/// `Psi_n(g)` by substituting `X_k -> X_k J`, `Y -> -J`.
pub fn psi(g: &GeneratorExpr, n: usize, field: FieldSpec) -> Result<Poly> {
    g.expect(Algebra::I)?;
    let j: MatPoly = standard_j(field, n)?;
    let mut mats = Vec::with_capacity(g.factors.len());
    for f in &g.factors {
        mats.push(match f {
            Factor::X(k) => &generic_matrix(MatrixFamily::X(*k), n, field)? * &j,
            Factor::Xt(k) => (&generic_matrix(MatrixFamily::X(*k), n, field)? * &j).transpose(),
            Factor::Y => j.neg(),
            _ => unreachable!("classified"),
        });
    }
    let refs: Vec<&MatPoly> = mats.iter().collect();
    sigma_of_product(&refs, g.t as usize).scale(&Scalar::from_i64(field, g.coeff))
}

/// `Psi_n` on the generator: `A Y -> X_k` or `X_k^T Y -> -X_k^*`.
pub fn psi_expr(g: &GeneratorExpr) -> Result<GeneratorExpr> {
    g.expect(Algebra::I)?;
    let letters: Vec<Factor> = g
        .factors
        .iter()
        .step_by(2)
        .map(|f| match f {
            Factor::Xt(k) => Factor::Xs(*k),
            x => *x,
        })
        .collect();
    let starred = letters.iter().filter(|f| matches!(f, Factor::Xs(_))).count();
    Ok(g.with(g.sign(starred), letters))
}

/// `mu_n`: `X_k -> Z^T X_k Z J`, rotated into `sigma_t(A_1 ZJZ^T ... A_r ZJZ^T)`.
pub fn mu(f: &GeneratorExpr) -> Result<GeneratorExpr> {
    f.expect(Algebra::Sp)?;
    let mut out = Vec::with_capacity(2 * f.factors.len());
    let mut starred = 0;
    for x in &f.factors {
        match x {
            Factor::X(k) => out.push(Factor::X(*k)),
            Factor::Xs(k) => {
                starred += 1;
                out.push(Factor::Xt(*k));
            }
            _ => unreachable!("classified"),
        }
        out.push(Factor::Zjz);
    }
    Ok(f.with(f.sign(starred), out))
}

/// `theta_n`: every `ZJZ^T` block becomes `Y`.
pub fn theta(g: &GeneratorExpr) -> Result<GeneratorExpr> {
    g.expect(Algebra::IPrime)?;
    let out = g.factors.iter().map(|f| if *f == Factor::Zjz { Factor::Y } else { *f }).collect();
    Ok(g.with(g.coeff, out))
}

/// Composite identity being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// `Psi o theta o mu` fixes the symplectic invariants.
    Eq2,
    /// `theta o mu o Psi` fixes `I_n`.
    Eq3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositeRecord {
    pub identity: Identity,
    pub generator: String,
    pub image: String,
    pub n: usize,
    pub d: usize,
    pub status: &'static str,
}

/// Letter sequences of length `1..=max_len` over `k <= d`.
fn letter_words(d: usize, max_len: usize, starred: bool) -> Vec<Vec<Factor>> {
    let alphabet: Vec<Factor> =
        (1..=d).flat_map(|k| [Factor::X(k), if starred { Factor::Xs(k) } else { Factor::Xt(k) }]).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Factor>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut v = w.clone();
                    v.push(*a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Symplectic generators `sigma_t(X_w)` with `|w| <= max_len`, `t <= n`.
pub fn sp_generators(n: usize, d: usize, max_len: usize) -> Vec<GeneratorExpr> {
    letter_words(d, max_len, true)
        .into_iter()
        .flat_map(|w| (1..=n as u32).map(move |t| GeneratorExpr::new(1, t, w.clone())))
        .collect()
}

/// Generators `sigma_t(A_1 Y ... A_r Y)` with `r <= max_len`, `t <= n`.
pub fn i_generators(n: usize, d: usize, max_len: usize) -> Vec<GeneratorExpr> {
    letter_words(d, max_len, false)
        .into_iter()
        .flat_map(|w| {
            let f: Vec<Factor> = w.iter().flat_map(|a| [*a, Factor::Y]).collect();
            (1..=n as u32).map(move |t| GeneratorExpr::new(1, t, f.clone()))
        })
        .collect()
}

/// Checks both composite identities on all generators up to `max_len`.
pub fn verify_composites(n: usize, d: usize, max_len: usize, field: FieldSpec) -> Result<Vec<CompositeRecord>> {
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    let record = |identity, g: &GeneratorExpr, image: &GeneratorExpr, ok: bool| CompositeRecord {
        identity,
        generator: g.to_string(),
        image: image.to_string(),
        n,
        d,
        status: if ok { "pass" } else { "fail" },
    };
    let eq2 = sp_generators(n, d, max_len).into_par_iter().map(|f| {
        let h = theta(&mu(&f)?)?;
        let ok = psi(&h, n, field)? == f.evaluate(n, field)?;
        Ok(record(Identity::Eq2, &f, &h, ok))
    });
    let eq3 = i_generators(n, d, max_len).into_par_iter().map(|g| {
        let s = psi_expr(&g)?;
        let h = theta(&mu(&s)?)?;
        let fixed = h == g || h.evaluate(n, field)? == g.evaluate(n, field)?;
        let ok = fixed && s.evaluate(n, field)? == psi(&g, n, field)?;
        Ok(record(Identity::Eq3, &g, &h, ok))
    });
    eq2.chain(eq3).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub n: usize,
    pub d: usize,
    pub generators: usize,
    pub pairs: usize,
    pub failures: Vec<(String, String)>,
}

/// Pairs of `I'_n` generators with equal values must have `theta`-images
/// with equal values.
pub fn theta_collisions(n: usize, d: usize, max_len: usize, field: FieldSpec) -> Result<CollisionReport> {
    let gens: Vec<GeneratorExpr> = sp_generators(n, d, max_len).iter().map(mu).collect::<Result<_>>()?;
    let gens: Vec<GeneratorExpr> = gens.into_iter().map(|g| GeneratorExpr::new(1, g.t, g.factors)).collect();
    let values: Vec<(String, Poly)> = gens
        .par_iter()
        .map(|g| Ok((g.evaluate(n, field)?.to_string(), theta(g)?.evaluate(n, field)?)))
        .collect::<Result<_>>()?;
    let mut buckets: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, (key, _)) in values.iter().enumerate() {
        buckets.entry(key.as_str()).or_default().push(i);
    }
    let mut pairs = 0;
    let mut failures = Vec::new();
    let mut keys: Vec<&&str> = buckets.keys().collect();
    keys.sort();
    for key in keys {
        let ids = &buckets[*key];
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                pairs += 1;
                if values[i].1 != values[j].1 {
                    failures.push((gens[i].to_string(), gens[j].to_string()));
                }
            }
        }
    }
    Ok(CollisionReport {
        n,
        d,
        generators: gens.len(),
        pairs,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub samples: usize,
    pub generators: usize,
    pub congruence_failures: usize,
    pub substitution_failures: usize,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.congruence_failures == 0 && self.substitution_failures == 0
    }
}

/// Random skew-symmetric matrix over a prime field.
pub fn random_skew(n: usize, field: FieldSpec, rng: &mut ChaCha8Rng) -> MatScalar {
    let p = field.characteristic() as i64;
    let mut c = MatScalar::zero(field, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = Scalar::from_i64(field, rng.random_range(0..p));
            c.set(j, i, v.neg());
            c.set(i, j, v);
        }
    }
    c
}

/// For random skew `C` with witness `B J B^T = C`: `Z := B` in each `I'_n`
/// generator equals `Y := C` in its `theta`-image.
pub fn check_skew_witness(
    n: usize,
    d: usize,
    max_len: usize,
    samples: usize,
    field: FieldSpec,
    seed: u64,
) -> Result<WitnessReport> {
    if !field.is_prime_field() {
        return Err(Error::SamplingOverRationals);
    }
    let gens: Vec<GeneratorExpr> = sp_generators(n, d, max_len).iter().map(mu).collect::<Result<_>>()?;
    let images: Vec<GeneratorExpr> = gens.iter().map(theta).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j: MatScalar = standard_j(field, n)?;
    let mut pairs = Vec::with_capacity(samples);
    let mut congruence_failures = 0;
    for _ in 0..samples {
        let c = random_skew(n, field, &mut rng);
        let b = skew_congruence_witness(&c)?;
        if &(&b * &j) * &b.transpose() != c {
            congruence_failures += 1;
            continue;
        }
        pairs.push((b.to_poly(), c.to_poly()));
    }
    let substitution_failures = pairs
        .par_iter()
        .map(|(bp, cp)| {
            let mut bad = 0;
            for (g, h) in gens.iter().zip(&images) {
                if g.evaluate_at(n, field, Some(bp), None)? != h.evaluate_at(n, field, None, Some(cp))? {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .sum();
    Ok(WitnessReport {
        n,
        samples,
        generators: gens.len(),
        congruence_failures,
        substitution_failures,
    })
}
