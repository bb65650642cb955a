use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};

use super::{standard_j, Group, MatScalar};

/// Seeded source of random group elements over a prime field.
pub struct GroupSampler {
    rng: ChaCha8Rng,
    field: FieldSpec,
}

impl GroupSampler {
    pub fn new(field: FieldSpec, seed: u64) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(Error::SamplingOverRationals);
        }
        Ok(GroupSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        })
    }

    fn scalar(&mut self) -> Scalar {
        let p = self.field.characteristic() as i64;
        Scalar::from_i64(self.field, self.rng.random_range(0..p))
    }

    fn nonzero(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar()).collect()
    }

    pub fn sample(&mut self, group: Group, n: usize) -> Result<MatScalar> {
        group.validate(n, self.field)?;
        let field = self.field;
        match group {
            Group::Gl => loop {
                let m = MatScalar::from_fn(field, n, |_, _| Scalar::zero(field));
                let mut m = m;
                for i in 0..n {
                    for j in 0..n {
                        let s = self.scalar();
                        m.set(i, j, s);
                    }
                }
                if m.to_matrix().rank() == n {
                    return Ok(m);
                }
            },
            Group::Sp => {
                let j: MatScalar = standard_j(field, n)?;
                let mut g = MatScalar::identity(field, n);
                for _ in 0..2 * n {
                    // E + c v v^T J
                    let v = self.vector(n);
                    let c = self.nonzero();
                    let vj: Vec<Scalar> = (0..n)
                        .map(|col| (0..n).fold(Scalar::zero(field), |acc, k| &acc + &(&v[k] * j.get(k, col))))
                        .collect();
                    let t = MatScalar::from_fn(field, n, |a, b| {
                        let e = &(&c * &v[a]) * &vj[b];
                        if a == b {
                            &e + &Scalar::one(field)
                        } else {
                            e
                        }
                    });
                    g = &g * &t;
                }
                Ok(g)
            }
            Group::O => {
                let mut g = MatScalar::identity(field, n);
                let two = Scalar::from_i64(field, 2);
                for _ in 0..2 * n + 1 {
                    let (v, norm) = loop {
                        let v = self.vector(n);
                        let norm = v.iter().fold(Scalar::zero(field), |acc, x| &acc + &(x * x));
                        if !norm.is_zero() {
                            break (v, norm);
                        }
                    };
                    let f = &two * &norm.inv()?;
                    let r = MatScalar::from_fn(field, n, |a, b| {
                        let e = (&f * &(&v[a] * &v[b])).neg();
                        if a == b {
                            &e + &Scalar::one(field)
                        } else {
                            e
                        }
                    });
                    g = &g * &r;
                }
                Ok(g)
            }
        }
    }
}

/// One group element from a fresh sampler.
pub fn sample_group_element(group: Group, n: usize, field: FieldSpec, seed: u64) -> Result<MatScalar> {
    GroupSampler::new(field, seed)?.sample(group, n)
}
