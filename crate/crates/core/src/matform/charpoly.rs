use crate::exactalg::Ring;

use super::Mat;

/// `[sigma_0, ..., sigma_n]` of a matrix, where
/// `det(lambda E - A) = sum_t (-1)^t lambda^(n-t) sigma_t(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaVector<T>(pub Vec<T>);

impl<T: Ring> SigmaVector<T> {
    /// `sigma_t`, zero for `t > n`.
    pub fn sigma(&self, t: usize) -> T {
        match self.0.get(t) {
            Some(v) => v.clone(),
            None => T::zero(self.0[0].field()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

/// Division-free Berkowitz algorithm.
pub fn sigma_coeffs<T: Ring>(a: &Mat<T>) -> SigmaVector<T> {
    sigma_coeffs_upto(a, a.n())
}

/// `[sigma_0, ..., sigma_m]` with `m = min(kmax, n)`; higher coefficients
/// are never formed.
pub fn sigma_coeffs_upto<T: Ring>(a: &Mat<T>, kmax: usize) -> SigmaVector<T> {
    let n = a.n();
    let m = kmax.min(n);
    let field = a.field();
    // coefficients of det(lambda E - A_r), leading first
    let mut vect = vec![T::one(field), a.get(0, 0).neg()];
    vect.truncate(m + 1);
    for r in 1..n {
        let len = (r + 2).min(m + 1);
        let row: Vec<T> = (0..r).map(|j| a.get(r, j).clone()).collect();
        let mut col: Vec<T> = (0..r).map(|i| a.get(i, r).clone()).collect();
        let mut q = Vec::with_capacity(len);
        q.push(T::one(field));
        q.push(a.get(r, r).neg());
        for k in 0..r.min(len.saturating_sub(2)) {
            q.push(dot(&row, &col, field).neg());
            if k + 1 < r && k + 3 < len {
                col = (0..r)
                    .map(|i| {
                        let mut acc = T::zero(field);
                        for j in 0..r {
                            let s = a.get(i, j);
                            if !s.is_zero() && !col[j].is_zero() {
                                acc.add_product(s, &col[j]);
                            }
                        }
                        acc
                    })
                    .collect();
            }
        }
        q.truncate(len);
        let next = (0..len)
            .map(|i| {
                let mut acc = T::zero(field);
                for j in 0..vect.len().min(i + 1) {
                    if !q[i - j].is_zero() && !vect[j].is_zero() {
                        acc.add_product(&q[i - j], &vect[j]);
                    }
                }
                acc
            })
            .collect();
        vect = next;
    }
    for (t, v) in vect.iter_mut().enumerate() {
        if t % 2 == 1 {
            *v = v.neg();
        }
    }
    SigmaVector(vect)
}

/// `t`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    rec(0, n, t, &mut cur, &mut out);
    out
}

/// The `t`-th compound matrix: all `t x t` minors, rows and columns
/// indexed by `t`-subsets in lexicographic order.
pub fn compound_matrix<T: Ring>(a: &Mat<T>, t: usize) -> Mat<T> {
    let field = a.field();
    let sets = subsets(a.n(), t);
    let mut entries = Vec::with_capacity(sets.len() * sets.len());
    for r in &sets {
        for c in &sets {
            let sub = Mat::from_fn(field, t, |i, j| a.get(r[i], c[j]).clone());
            entries.push(sigma_coeffs(&sub).sigma(t));
        }
    }
    Mat::from_entries(field, sets.len(), entries).expect("square")
}

/// `sigma_t(A_1 A_2 ... A_m)` as the trace of the product of `t`-th
/// compound matrices.
pub fn sigma_of_product<T: Ring>(factors: &[&Mat<T>], t: usize) -> T {
    let first = factors.first().expect("at least one factor");
    let field = first.field();
    if t == 0 {
        return T::one(field);
    }
    if t > first.n() {
        return T::zero(field);
    }
    if factors.len() == 1 {
        return sigma_coeffs_upto(first, t).sigma(t);
    }
    let mut acc = compound_matrix(first, t);
    for f in &factors[1..factors.len() - 1] {
        acc = acc.checked_mul(&compound_matrix(f, t)).expect("same size");
    }
    let last = compound_matrix(factors[factors.len() - 1], t);
    let m = acc.n();
    let mut out = T::zero(field);
    for i in 0..m {
        for j in 0..m {
            let (x, y) = (acc.get(i, j), last.get(j, i));
            if !x.is_zero() && !y.is_zero() {
                out.add_product(x, y);
            }
        }
    }
    out
}

fn dot<T: Ring>(a: &[T], b: &[T], field: crate::exactalg::FieldSpec) -> T {
    let mut acc = T::zero(field);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_product(x, y);
        }
    }
    acc
}
