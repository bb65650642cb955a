//! Acceptance criteria A1-A10, run in sequence so the wall-clock limits
//! measure one job at a time. Each criterion writes one PASS/FAIL line.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinv::eval_maps::{
    check_invariance, scaling_check, verify_relations, EvalContext, EvalMethod, Evaluator, RelationSweep,
};
use spinv::exactalg::{FieldSpec, Poly, Ring, Scalar};
use spinv::iso_maps::{check_skew_witness, verify_composites};
use spinv::kernel_lab::{dimension_table, kernel_component};
use spinv::matform::{generic_matrix, sigma_coeffs, Group, Mat, MatPoly, MatScalar, MatrixFamily, TransposeKind};
use spinv::quiver_rel::{build_rho_tr, Triple};
use spinv::wordalg::Word;

const A1_LIMIT: Duration = Duration::from_secs(10);
const A2_LIMIT: Duration = Duration::from_secs(5);
const A3_LIMIT: Duration = Duration::from_secs(120);
const A4_LIMIT: Duration = Duration::from_secs(15 * 60);
const A5_LIMIT: Duration = Duration::from_secs(15 * 60);
const A6_LIMIT: Duration = Duration::from_secs(30);
const A7_LIMIT: Duration = Duration::from_secs(5 * 60);
const A8_LIMIT: Duration = Duration::from_secs(10 * 60);
const A9_LIMIT: Duration = Duration::from_secs(60);
const A10_LIMIT: Duration = Duration::from_secs(15 * 60);

const SEED: u64 = 20;

fn gf7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}

fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

/// Runs a criterion under its time limit; `Ok` carries a detail string.
fn criterion(id: &str, title: &str, limit: Duration, f: impl FnOnce() -> Result<String, String>) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let took = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if took <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the limit")),
        Err(e) => (false, e),
    };
    report(&format!(
        "{id} {} {title}: {detail} [{:.2}s, limit {}s]",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs()
    ));
    ok
}

fn random_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Rationals => Scalar::from_ratio(field, rng.random_range(-9..=9), rng.random_range(1..=4)).unwrap(),
        _ => Scalar::from_i64(field, rng.random_range(0..field.characteristic() as i64)),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> MatScalar {
    let entries = (0..n * n).map(|_| random_scalar(rng, field)).collect();
    Mat::from_entries(field, n, entries).unwrap()
}

/// Determinant by Laplace expansion along the first row.
fn laplace(a: &[Vec<Scalar>], field: FieldSpec) -> Scalar {
    let n = a.len();
    if n == 0 {
        return Scalar::one(field);
    }
    let mut acc = Scalar::zero(field);
    for j in 0..n {
        let minor: Vec<Vec<Scalar>> =
            a[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = a[0][j].mul(&laplace(&minor, field));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// `sigma_t` as the sum of principal `t x t` minors.
fn principal_minor_sum(m: &MatScalar, t: usize) -> Scalar {
    let n = m.n();
    let field = m.field();
    let mut acc = Scalar::zero(field);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != t {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Scalar>> = idx.iter().map(|&i| idx.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
        acc = acc.add(&laplace(&sub, field));
    }
    acc
}

fn a1() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut count = 0;
    for field in [gf7(), FieldSpec::Rationals] {
        for n in 1..=4 {
            for _ in 0..100 {
                let m = random_matrix(&mut rng, field, n);
                let s = sigma_coeffs(&m);
                for t in 0..=n {
                    if s.sigma(t) != principal_minor_sum(&m, t) {
                        return Err(format!("sigma_{t} differs at n={n} over {}", field.tag()));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} matrices agree with cofactor expansion"))
}

fn transpose_laws<T: Ring + PartialEq + std::fmt::Debug>(a: &Mat<T>, b: &Mat<T>) -> Result<usize, String> {
    let mut checks = 0;
    for kind in [TransposeKind::Ordinary, TransposeKind::Symplectic] {
        let ad = a.transpose_as(kind).map_err(|e| e.to_string())?;
        let bd = b.transpose_as(kind).map_err(|e| e.to_string())?;
        let (sa, sad) = (sigma_coeffs(a), sigma_coeffs(&ad));
        for t in 0..=a.n() {
            if sa.sigma(t) != sad.sigma(t) {
                return Err(format!("sigma_{t} of the {kind:?} transpose differs"));
            }
        }
        let ab = a.checked_mul(b).unwrap().transpose_as(kind).unwrap();
        if ab != bd.checked_mul(&ad).unwrap() {
            return Err(format!("{kind:?}: (AB)^d != B^d A^d"));
        }
        if ad.transpose_as(kind).unwrap() != *a {
            return Err(format!("{kind:?}: (A^d)^d != A"));
        }
        checks += a.n() + 3;
    }
    Ok(checks)
}

fn a2() -> Result<String, String> {
    let q = FieldSpec::Rationals;
    let x1: MatPoly = generic_matrix(MatrixFamily::X(1), 2, q).unwrap();
    let x2: MatPoly = generic_matrix(MatrixFamily::X(2), 2, q).unwrap();
    let mut checks = transpose_laws(&x1, &x2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for field in [gf7(), q] {
        for _ in 0..10 {
            let a = random_matrix(&mut rng, field, 4);
            let b = random_matrix(&mut rng, field, 4);
            checks += transpose_laws(&a, &b)?;
        }
    }
    Ok(format!("{checks} exact identities, both transposes"))
}

fn a3() -> Result<String, String> {
    let mut parts = Vec::new();
    for (group, n) in [(Group::Sp, 2), (Group::Sp, 4), (Group::O, 3)] {
        let ctx = EvalContext::new(group, n, 2, gf7()).unwrap();
        let rep = check_invariance(&ctx, 3, 25, SEED).map_err(|e| e.to_string())?;
        if !rep.passed() {
            return Err(format!("{group}({n}): {} violations, control moved {}", rep.violations.len(), rep.control_moved));
        }
        parts.push(format!("{group}({n}) {} words/{} classes", rep.words, rep.classes));
    }
    Ok(format!("25 samples each, {}", parts.join(", ")))
}

fn sweep(group: Group, n: usize, field: FieldSpec) -> Result<(usize, String), String> {
    let ctx = EvalContext::new(group, n, 2, field).unwrap();
    let mut s = RelationSweep::new(ctx);
    s.method = EvalMethod::Auto;
    let out = verify_relations(&s).map_err(|e| e.to_string())?;
    if let Some(f) = out.failures().next() {
        return Err(format!("{group}({n}) over {}: {:?}", field.tag(), f.relation));
    }
    Ok((out.records.len(), out.to_json_lines()))
}

fn vanishing(group: Group, sizes: &[usize]) -> Result<String, String> {
    let mut parts = Vec::new();
    for &n in sizes {
        for field in [gf7(), FieldSpec::Rationals] {
            let (count, _) = sweep(group, n, field)?;
            parts.push(format!("{group}({n})/{} {count}", field.tag()));
        }
    }
    Ok(format!("all zero: {}", parts.join(", ")))
}

fn a6() -> Result<String, String> {
    let expr = build_rho_tr(1, 1).unwrap();
    let q = FieldSpec::Rationals;
    let triple = Triple::words(q, "x1".parse().unwrap(), "x2".parse().unwrap(), Word::unity());
    let at = |n: usize| -> Poly {
        let ev = Evaluator::new(EvalContext::new(Group::Sp, n, 2, q).unwrap()).unwrap();
        ev.eval_relation(&expr, &triple).unwrap()
    };
    let small = at(2);
    let large = at(6);
    if !small.is_zero() {
        return Err("nonzero at n=2".to_string());
    }
    if large.is_zero() {
        return Err("zero at N=6".to_string());
    }
    Ok(format!("zero at n=2, {} terms at N=6", large.len()))
}

fn a7() -> Result<String, String> {
    let mut records = 0;
    for n in [2, 4] {
        for d in [1, 2] {
            let recs = verify_composites(n, d, 3, gf7()).map_err(|e| e.to_string())?;
            if let Some(r) = recs.iter().find(|r| r.status != "pass") {
                return Err(format!("{:?} fails for {} at n={n}", r.identity, r.generator));
            }
            records += recs.len();
        }
    }
    let mut witnesses = 0;
    for n in [2, 4] {
        let w = check_skew_witness(n, 2, 2, 50, gf7(), SEED).map_err(|e| e.to_string())?;
        if !w.passed() {
            return Err(format!("witness at n={n}: {w:?}"));
        }
        witnesses += w.samples;
    }
    Ok(format!("{records} composite checks, {witnesses} congruence witnesses"))
}

fn a8() -> Result<String, String> {
    let gl = EvalContext::new(Group::Gl, 2, 1, gf7()).unwrap();
    let rows = dimension_table(&gl, 4, None).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = rows.iter().map(|r| r.kernel_dim).collect();
    if rows.iter().any(|r| r.status() != "equal") {
        return Err(format!("GL(2) table not equal: {rows:?}"));
    }
    if dims[..2] != [0, 0] || dims[2] != 1 {
        return Err(format!("GL(2) kernel dimensions {dims:?}"));
    }
    let k3 = kernel_component(&[3], &gl).map_err(|e| e.to_string())?;
    if k3.kernel.len() != 1 || k3.kernel[0].to_string() != "s3(x1)" {
        return Err(format!("GL(2) kernel at (3) is {:?}", k3.kernel));
    }
    let sp = EvalContext::new(Group::Sp, 2, 2, gf7()).unwrap();
    let rows = dimension_table(&sp, 3, None).map_err(|e| e.to_string())?;
    if let Some(r) = rows.iter().find(|r| !r.passed()) {
        return Err(format!("Sp(2) span not inside the kernel at {:?}: {:?}", r.delta, r.violations));
    }
    let equal = rows.iter().filter(|r| r.status() == "equal").count();
    Ok(format!("GL(2) kernel dims {dims:?} = span; Sp(2) span in kernel, equal at {equal}/{} components", rows.len()))
}

fn a9() -> Result<String, String> {
    let mut count = 0;
    for field in [gf7(), FieldSpec::Rationals] {
        let reps = scaling_check(2, 2, field, 3, 3, SEED).map_err(|e| e.to_string())?;
        if let Some(r) = reps.iter().find(|r| !r.passed) {
            return Err(format!("k={} f={} over {}", r.k, r.f, field.tag()));
        }
        count += reps.len();
    }
    Ok(format!("{count} sampled elements scale by 2^k"))
}

fn a10() -> Result<String, String> {
    let mut bytes = 0;
    for n in [2, 4] {
        let (_, first) = sweep(Group::Sp, n, gf7())?;
        let (_, second) = sweep(Group::Sp, n, gf7())?;
        if first != second {
            return Err(format!("Sp({n}) reports differ"));
        }
        bytes += first.len();
    }
    Ok(format!("two runs byte-identical ({bytes} bytes)"))
}

#[test]
fn acceptance() {
    let results = [
        criterion("A1", "sigma_t against cofactor expansion", A1_LIMIT, a1),
        criterion("A2", "transpose laws", A2_LIMIT, a2),
        criterion("A3", "generator invariance", A3_LIMIT, a3),
        criterion("A4", "symplectic relations vanish", A4_LIMIT, || vanishing(Group::Sp, &[2, 4])),
        criterion("A5", "orthogonal relations vanish", A5_LIMIT, || vanishing(Group::O, &[2, 3])),
        criterion("A6", "degree n/2+1 relation", A6_LIMIT, a6),
        criterion("A7", "composite identities and skew witness", A7_LIMIT, a7),
        criterion("A8", "kernel components", A8_LIMIT, a8),
        criterion("A9", "2^k scaling", A9_LIMIT, a9),
        criterion("A10", "deterministic reports", A10_LIMIT, a10),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
