use hopf_forge::finalg::{apply_tensor, eigensplit_matrix, gram_psd, FinAlgebra, Functional, Matrix, MulEntry, Vector};
use hopf_forge::fixtures;
use hopf_forge::haar::ModularData;
use hopf_forge::mhopf::{attach_coproduct, Coalgebra, HasCoproduct, QGData};
use hopf_forge::presentations::{presets, Lin, SplitOrder, Word};
use hopf_forge::scalars::{Scalar, SpecPoints};
use proptest::prelude::*;

fn qg(name: &str) -> QGData {
    let s = fixtures::structure(name).unwrap();
    attach_coproduct(s.algebra, s.coproduct).unwrap().derive_counit_antipode().unwrap()
}

/// An invertible rational matrix: a permutation times a unit lower-triangular one.
fn change_of_basis(n: usize) -> impl Strategy<Value = Matrix> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(-2i64..=2, n * n)).prop_map(
        move |(perm, low)| {
            let mut l = Matrix::identity(n);
            for i in 0..n {
                for j in 0..i {
                    l.set(i, j, Scalar::from_int(low[i * n + j]));
                }
            }
            let mut p = Matrix::zeros(n, n);
            for (i, &j) in perm.iter().enumerate() {
                p.set(i, j, Scalar::one());
            }
            p.mul(&l)
        },
    )
}

/// The same algebra and coproduct written in the basis given by the columns of `p`.
fn rebased(q: &QGData, p: &Matrix) -> (Coalgebra, Matrix) {
    let n = q.dim();
    let pi = p.inverse().unwrap();
    let a = q.algebra();
    let cols = p.columns();
    let mut mul = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, value) in pi.apply(&a.mul(&cols[i], &cols[j])).into_iter().enumerate() {
                if !value.is_zero() {
                    mul.push(MulEntry { i, j, k, value });
                }
            }
        }
    }
    let star = a
        .star_matrix()
        .map(|_| Matrix::from_cols(n, &cols.iter().map(|c| pi.apply(&a.star_vec(c).unwrap())).collect::<Vec<_>>()));
    let labels = (0..n).map(|i| format!("b{i}")).collect();
    let alg = FinAlgebra::build(labels, &mul, Some(pi.apply(&q.one())), star).unwrap();
    let delta = Matrix::from_cols(n * n, &cols.iter().map(|c| apply_tensor(&pi, &pi, &q.delta(c))).collect::<Vec<_>>());
    (attach_coproduct(alg, delta).unwrap(), pi)
}

fn fixture_and_basis() -> impl Strategy<Value = (&'static str, Matrix)> {
    prop::sample::select(vec!["c_z2", "c_s3", "group_s3", "sweedler_h4"])
        .prop_flat_map(|name| (Just(name), change_of_basis(fixtures::structure(name).unwrap().algebra.dim())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn t_maps_and_hopf_structure_survive_a_change_of_basis((name, p) in fixture_and_basis()) {
        let q = qg(name);
        let (c, pi) = rebased(&q, &p);
        prop_assert!(c.check_tmaps().all_bijective());
        let r = c.derive_counit_antipode().unwrap();
        // S transforms by conjugation.
        prop_assert_eq!(r.antipode(), &pi.mul(q.antipode()).mul(&p));
    }

    #[test]
    fn gram_verdict_is_basis_independent((name, p) in fixture_and_basis()) {
        let q = qg(name);
        let md = ModularData::compute(&q).unwrap();
        let points = SpecPoints::default();
        let before = gram_psd(q.algebra(), &md.phi, &points).unwrap();
        let (c, _) = rebased(&q, &p);
        let phi = Functional(p.apply_left(md.phi.values()));
        let after = gram_psd(c.algebra(), &phi, &points).unwrap();
        prop_assert_eq!(before.verdict, after.verdict);
    }

    #[test]
    fn eigensplit_returns_exact_eigenvectors(p in change_of_basis(4), exps in prop::collection::vec(-2i64..=2, 4), signs in prop::collection::vec(prop::bool::ANY, 4)) {
        let d: Vec<Scalar> = exps.iter().zip(&signs).map(|(&k, &neg)| {
            let x = Scalar::s_pow(k);
            if neg { -&x } else { x }
        }).collect();
        let m = p.mul(&Matrix::diagonal(&d)).mul(&p.inverse().unwrap());
        let spaces = eigensplit_matrix(&m).unwrap();
        let total: usize = spaces.iter().map(|e| e.basis.len()).sum();
        prop_assert_eq!(total, 4);
        for e in &spaces {
            for v in &e.basis {
                let lv: Vector = v.iter().map(|x| x * &e.value).collect();
                prop_assert_eq!(m.apply(v), lv);
            }
        }
    }
}

fn word(gens: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..gens, 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_linear(w1 in word(4, 4), w2 in word(4, 4), c1 in -3i64..=3, c2 in -3i64..=3, which in prop::bool::ANY) {
        let h = if which { presets::uq_su2() } else { presets::suq2() };
        let p = &h.algebra;
        let (n1, n2) = (p.nf_word(&w1).unwrap(), p.nf_word(&w2).unwrap());
        prop_assert_eq!(p.normal_form(&n1).unwrap(), n1.clone());
        let (a, b) = (Scalar::from_int(c1), Scalar::from_int(c2));
        let x = Lin::monomial(w1).scale(&a).add(&Lin::monomial(w2).scale(&b));
        prop_assert_eq!(p.normal_form(&x).unwrap(), n1.scale(&a).add(&n2.scale(&b)));
    }

    #[test]
    fn diagonal_actions_commute_with_normal_form(w in word(4, 4)) {
        let points = SpecPoints::default();
        let b = presets::suq2();
        let u = presets::uq_su2();
        for (act, h) in [(presets::rho(&points).unwrap(), &b), (presets::theta(&points).unwrap(), &b), (presets::sigma_hat(&points).unwrap(), &u)] {
            let p = &h.algebra;
            let x = Lin::monomial(w.clone());
            prop_assert_eq!(p.normal_form(&act.apply(&x)).unwrap(), act.apply(&p.normal_form(&x).unwrap()));
        }
    }

    #[test]
    fn pairing_recursion_order_does_not_matter(x in word(4, 3), c in word(4, 3)) {
        // Raw words, not only normal ones.
        let mut p = presets::pairing(3);
        let a = p.pair_in_order(SplitOrder::LeftFirst, &x, &c).unwrap();
        let b = p.pair_in_order(SplitOrder::RightFirst, &x, &c).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn pairing_gram_ranks_are_pinned() {
    let mut p = presets::pairing(3);
    let got: Vec<(usize, usize, usize)> =
        (1..=3).map(|d| p.gram_rank(d).unwrap()).map(|g| (g.rows, g.cols, g.rank)).collect();
    assert_eq!(got, [(5, 5, 5), (14, 14, 14), (30, 30, 30)]);
}
