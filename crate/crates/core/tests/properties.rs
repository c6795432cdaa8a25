use std::sync::Arc;

use parsmash::algebra::{
    orthogonal_idempotent_basis, principal_generator, split_pair, Semilattice,
};
use parsmash::hochss::hochschild;
use parsmash::kpar::Kpar;
use parsmash::partial::check_partial_rep;
use parsmash::random::{rng, small_matrix, small_vector};
use parsmash::{
    Bimodule, Budget, Field, FiniteGroup, GroupKind, Matrix, PrimeField, Rationals, Subspace,
};
use proptest::prelude::*;

fn matrix_from<F: Field>(field: &F, rows: usize, cols: usize, seed: u64) -> Matrix<F> {
    small_matrix(field, rows, cols, &mut rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity_mod_p(rows in 1usize..7, cols in 1usize..7, p in prop::sample::select(vec![2u64, 3, 5, 7]), seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let m = matrix_from(&f, rows, cols, seed);
        prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.kernel().basis() {
            prop_assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let q = Rationals;
        let mut r = rng(seed);
        let m = small_matrix(&q, rows, cols, &mut r);
        let x = small_vector(&q, cols, &mut r);
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("consistent");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn canonical_subspaces(n in 1usize..6, k in 0usize..5, seed in any::<u64>()) {
        let q = Rationals;
        let mut r = rng(seed);
        let vs: Vec<_> = (0..k).map(|_| small_vector(&q, n, &mut r)).collect();
        let s = Subspace::from_spanning(&q, n, &vs);
        let mut rev = vs.clone();
        rev.reverse();
        let doubled: Vec<_> = vs.iter().zip(&rev).map(|(a, b)| parsmash::linalg::add_vectors(&q, a, b)).chain(vs.iter().cloned()).collect();
        prop_assert_eq!(&Subspace::from_spanning(&q, n, &doubled), &s);
        prop_assert_eq!(&Subspace::from_spanning(&q, n, s.basis()), &s);
        let ws: Vec<_> = (0..k).map(|_| small_vector(&q, n, &mut r)).collect();
        let t = Subspace::from_spanning(&q, n, &ws);
        prop_assert_eq!(s.sum(&t).dim() + s.intersection(&t).dim(), s.dim() + t.dim());
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn boolean_semilattice_idempotents(ground in 0usize..6, seed in any::<u64>(), gens in 1usize..4) {
        let q = Rationals;
        let s = Semilattice::boolean(ground).unwrap();
        let basis = orthogonal_idempotent_basis(&q, &s).unwrap();
        let alg = s.algebra(&q);
        let mut r = rng(seed);
        let rs: Vec<_> = (0..gens).map(|_| small_vector(&q, s.len(), &mut r)).collect();
        let u = principal_generator(&q, &s, &basis, &rs).u;
        prop_assert_eq!(alg.mul(&u, &u), u.clone());
        for x in &rs {
            prop_assert_eq!(&alg.mul(&u, x), x);
        }
        let ideal = alg.ideal_closure(&rs);
        prop_assert!(ideal.contains(&u));
    }

    #[test]
    fn kpar_words_agree(kind in prop::sample::select(vec![GroupKind::Cyclic(2), GroupKind::Cyclic(3), GroupKind::Cyclic(4)]), seed in any::<u64>()) {
        let f2 = PrimeField::new(2).unwrap();
        let g = Arc::new(FiniteGroup::standard(kind, 24).unwrap());
        let kp = Kpar::new(&f2, g, 1024).unwrap();
        let mut r = rng(seed);
        prop_assert!(kp.word_check(20, 6, &mut r).is_ok());
        prop_assert!(kp.epsilon_identities_check(20, 4, &mut r).is_ok());
    }

    #[test]
    fn hochschild_differential_squares_to_zero(p in prop::sample::select(vec![2u64, 3]), seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let a = Arc::new(parsmash::algebra::exterior_like(&f));
        let m = Bimodule::regular(a);
        let hc = hochschild(&m, 1, seed % 2 == 0, &Budget::default()).unwrap();
        prop_assert!(hc.complex.check_d_squared().is_ok());
        prop_assert_eq!(hc.dims()[0], 4);
    }
}

#[test]
fn conjugation_partial_representations() {
    let q = Rationals;
    for kind in [GroupKind::Cyclic(3), GroupKind::Symmetric(3)] {
        let g = Arc::new(FiniteGroup::standard(kind, 24).unwrap());
        let kp = Kpar::new(&q, g.clone(), 1024).unwrap();
        let pi: Vec<_> = g.elements().map(|x| kp.conj_rep(x).unwrap()).collect();
        check_partial_rep(&g, &pi).unwrap();
    }
}

#[test]
fn normalized_matches_unnormalized() {
    let q = Rationals;
    for a in [split_pair(&q), parsmash::algebra::dual_numbers(&q)] {
        let m = Bimodule::regular(Arc::new(a));
        let n = hochschild(&m, 2, true, &Budget::default()).unwrap().dims();
        let u = hochschild(&m, 2, false, &Budget::default()).unwrap().dims();
        assert_eq!(n, u);
    }
}
