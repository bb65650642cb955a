use proptest::prelude::*;

use spinv::eval_maps::{EvalContext, Evaluator};
use spinv::exactalg::{FieldSpec, Monomial, PackedPoly, Poly, Ring, Scalar, VarIndex, Variable};
use spinv::kernel_lab::{ideal_span_component, kernel_component};
use spinv::matform::{sample_group_element, sigma_coeffs, Group, Mat, MatScalar, TransposeKind};
use spinv::quiver_rel::{build_relation, Quiver, RelationKind};
use spinv::sigma_ring::{SigmaMonomial, SigmaPoly, SigmaSymbol};
use spinv::wordalg::{Letter, Realizer, Word};

fn gf7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}

fn vars() -> Vec<Variable> {
    (1..=2).flat_map(|i| (1..=2).map(move |j| Variable::x(i, j, 1).unwrap())).collect()
}

/// Up to four terms in the entries of a generic `2 x 2` matrix, small
/// exponents, coefficients `num / den`.
fn poly_q() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform4(0u32..3), -6i64..=6, 1i64..=3), 0..5).prop_map(|terms| {
        let q = FieldSpec::Rationals;
        let vs = vars();
        Poly::from_terms(
            q,
            terms.into_iter().map(|(e, num, den)| {
                let m = Monomial::from_pairs(vs.iter().copied().zip(e).filter(|(_, x)| *x > 0));
                (m, Scalar::from_ratio(q, num, den).unwrap())
            }),
        )
        .unwrap()
    })
}

fn word(max_len: usize, transposes: bool) -> impl Strategy<Value = Word> {
    prop::collection::vec((1usize..=2, any::<bool>()), 1..=max_len)
        .prop_map(move |ls| Word::from_letters(ls.into_iter().map(|(k, t)| Letter::new(k, t && transposes).unwrap())))
}

fn matrix(n: usize) -> impl Strategy<Value = MatScalar> {
    prop::collection::vec(0i64..7, n * n).prop_map(move |v| {
        let f = gf7();
        Mat::from_entries(f, n, v.into_iter().map(|x| Scalar::from_i64(f, x)).collect()).unwrap()
    })
}

fn sigma_poly(d: usize) -> impl Strategy<Value = SigmaPoly> {
    let symbol = (1u32..=2, word(2, true)).prop_filter_map("primitive", move |(t, w)| {
        let w = Word::from_letters(w.letters().iter().map(|l| Letter::new(l.index().min(d), l.is_transposed()).unwrap()));
        SigmaSymbol::new(t, &w).ok()
    });
    let monomial = prop::collection::vec((symbol, 1u32..=2), 0..3).prop_map(SigmaMonomial::from_factors);
    prop::collection::vec((monomial, -3i64..=3), 0..4).prop_map(|terms| {
        let f = gf7();
        let mut out = SigmaPoly::zero(f);
        for (m, c) in terms {
            out.add_term(m, &Scalar::from_i64(f, c)).unwrap();
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_axioms(a in poly_q(), b in poly_q(), c in poly_q()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly_q(), b in poly_q(), imgs in prop::collection::vec(poly_q(), 4)) {
        let vs = vars();
        let assign = |v: Variable| vs.iter().position(|w| *w == v).map(|i| &imgs[i]);
        let lhs = (&a * &b).substitute(assign).unwrap();
        let rhs = &a.substitute(assign).unwrap() * &b.substitute(assign).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_mod_p_commutes(a in poly_q(), b in poly_q()) {
        let f = FieldSpec::prime(11).unwrap();
        let (ra, rb) = (a.reduce_mod(f).unwrap(), b.reduce_mod(f).unwrap());
        prop_assert_eq!((&a * &b).reduce_mod(f).unwrap(), &ra * &rb);
        prop_assert_eq!((&a + &b).reduce_mod(f).unwrap(), &ra + &rb);
    }

    #[test]
    fn packed_products_match(a in poly_q(), b in poly_q()) {
        let f = gf7();
        let idx = VarIndex::new(vars()).unwrap();
        let (a, b) = (a.reduce_mod(f).unwrap(), b.reduce_mod(f).unwrap());
        let pa = PackedPoly::from_poly(&a, &idx).unwrap();
        let pb = PackedPoly::from_poly(&b, &idx).unwrap();
        prop_assert_eq!(pa.mul(&pb).to_poly(&idx), &a * &b);
        prop_assert_eq!(pa.sub(&pb).to_poly(&idx), &a - &b);
    }

    #[test]
    fn sigma_ignores_both_transposes(a in matrix(4)) {
        let s = sigma_coeffs(&a);
        for kind in [TransposeKind::Ordinary, TransposeKind::Symplectic] {
            prop_assert_eq!(sigma_coeffs(&a.transpose_as(kind).unwrap()).into_vec(), s.clone().into_vec());
        }
    }

    #[test]
    fn sigma_is_conjugation_invariant(a in matrix(3), seed in any::<u64>()) {
        let g = sample_group_element(Group::Gl, 3, gf7(), seed).unwrap();
        let conj = &(&g * &a) * &g.inverse().unwrap();
        prop_assert_eq!(sigma_coeffs(&conj).into_vec(), sigma_coeffs(&a).into_vec());
    }

    #[test]
    fn symplectic_transpose_gives_determinant(a in matrix(2)) {
        let prod = &a * &a.symplectic_transpose().unwrap();
        prop_assert_eq!(prod, Mat::scalar(&sigma_coeffs(&a).sigma(2), 2));
    }

    #[test]
    fn involution_reverses_products(u in word(3, true), v in word(3, true)) {
        prop_assert_eq!(u.concat(&v).involute(), v.involute().concat(&u.involute()));
        prop_assert_eq!(u.involute().involute(), u);
    }

    #[test]
    fn equivalent_words_share_sigma(w in word(4, true), shift in 0usize..4, flip in any::<bool>()) {
        let rot = w.rotate(shift % w.len());
        let v = if flip { rot.involute() } else { rot };
        prop_assert_eq!(v.canonical_class(), w.canonical_class());
        prop_assert_eq!(v.is_primitive(), w.canonical_class().is_primitive());
        for group in [Group::O, Group::Sp] {
            let r = Realizer::generic(group, 2, 2, gf7()).unwrap();
            prop_assert_eq!(
                sigma_coeffs(&r.realize(&v).unwrap()).into_vec(),
                sigma_coeffs(&r.realize(&w).unwrap()).into_vec()
            );
        }
        if w.is_primitive() {
            prop_assert_eq!(SigmaSymbol::new(2, &v).unwrap(), SigmaSymbol::new(2, &w).unwrap());
        }
    }

    #[test]
    fn grading_is_additive(f in sigma_poly(2), g in sigma_poly(2)) {
        let prod = &f * &g;
        for (m, _) in prod.terms() {
            let degs: Vec<u32> = m.mdeg(2);
            let found = f.terms().any(|(a, _)| g.terms().any(|(b, _)| {
                a.mul(b) == *m && a.mdeg(2).iter().zip(b.mdeg(2)).map(|(x, y)| x + y).collect::<Vec<_>>() == degs
            }));
            prop_assert!(found);
        }
    }

    #[test]
    fn phi_is_a_homomorphism(f in sigma_poly(2), g in sigma_poly(2)) {
        let ev = Evaluator::new(EvalContext::new(Group::Sp, 2, 2, gf7()).unwrap()).unwrap();
        prop_assert_eq!(ev.phi(&(&f * &g)).unwrap(), &ev.phi(&f).unwrap() * &ev.phi(&g).unwrap());
        prop_assert_eq!(ev.phi(&(&f + &g)).unwrap(), &ev.phi(&f).unwrap() + &ev.phi(&g).unwrap());
    }

    #[test]
    fn relation_terms_have_the_right_multidegree(t in 0u32..=3, r in 0u32..=2) {
        prop_assume!(t + r > 0);
        let q = Quiver::q();
        let sigma = build_relation(RelationKind::Sigma, t, r).unwrap();
        let rho = build_relation(RelationKind::Rho, t, r).unwrap();
        prop_assert_eq!(sigma.terms.len(), rho.terms.len());
        for (a, b) in sigma.terms.iter().zip(&rho.terms) {
            prop_assert_eq!(&a.factors, &b.factors);
            let mut total = [0u32; 3];
            for f in &a.factors {
                for (s, m) in q.mdeg(&f.path).iter().enumerate() {
                    total[s] += f.k * m;
                }
            }
            prop_assert_eq!(total, [t, r, r]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn gl_components_below_n_vanish(n in 2usize..=3, a in 0u32..=3, b in 0u32..=3) {
        prop_assume!(a + b > 0 && (a + b) as usize <= n);
        let ctx = EvalContext::new(Group::Gl, n, 2, gf7()).unwrap();
        prop_assert_eq!(kernel_component(&[a, b], &ctx).unwrap().dim(), 0);
    }

    #[test]
    fn span_stays_in_kernel(a in 0u32..=2, b in 0u32..=2) {
        prop_assume!(a + b > 0 && a + b <= 3);
        for group in [Group::Sp, Group::O] {
            let ctx = EvalContext::new(group, 2, 2, gf7()).unwrap();
            let c = ideal_span_component(&[a, b], &ctx).unwrap();
            prop_assert!(c.violations.is_empty(), "{:?}", c.violations);
            prop_assert!(c.span_dim <= c.kernel_dim);
        }
    }
}
