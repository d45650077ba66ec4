//! Invariants as property tests. Lattices and symbols come from the seeded
//! generators in `random`, driven by proptest seeds.

use dyadic_lattice::bong::{good_bong, verify_bong};
use dyadic_lattice::classify::{isometric_beli, isometric_omeara};
use dyadic_lattice::field::Field;
use dyadic_lattice::invariants::{alpha_recursive, alpha_vector, bong_weight_orders};
use dyadic_lattice::random::{
    random_element, random_lattice, random_symbol, random_unimodular, random_unit, transform,
};
use dyadic_lattice::spaces::{lattice_space, represents, space_invariants, SpaceInvariants};
use dyadic_lattice::{is_inf, FieldElement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(e2: bool) -> Field {
    if e2 {
        Field::x2_plus_2()
    } else {
        Field::q2()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_symmetric_and_bimultiplicative(e2: bool, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let f = field(e2);
        let n = f.class_count();
        let (i, j, k) = (i % n, j % n, k % n);
        prop_assert_eq!(f.class_hilbert(i, j), f.class_hilbert(j, i));
        prop_assert_eq!(
            f.class_hilbert(i, f.class_mul(j, k)),
            f.class_hilbert(i, j) * f.class_hilbert(i, k)
        );
    }

    #[test]
    fn hilbert_nondegenerate(e2: bool, i in 1usize..64) {
        let f = field(e2);
        let i = i % f.class_count();
        prop_assume!(i != 0);
        prop_assert!((0..f.class_count()).any(|b| f.class_hilbert(i, b) == -1));
    }

    #[test]
    fn hilbert_of_large_defects_is_one(e2: bool, seed: u64) {
        let f = field(e2);
        let mut r = rng(seed);
        let (a, b) = (random_unit(&f, &mut r), random_unit(&f, &mut r));
        let (da, db) = (f.defect(&a).unwrap(), f.defect(&b).unwrap());
        if da.saturating_add(db) > 2 * f.e() as i64 {
            prop_assert_eq!(f.hilbert(&a, &b).unwrap(), 1);
        }
        // (a, −a) = 1
        prop_assert_eq!(f.hilbert(&a, &(-&a)).unwrap(), 1);
    }

    #[test]
    fn unit_invariants_see_only_the_residue(e2: bool, seed: u64) {
        // perturbing by 1 + π^{2e+1}t changes nothing
        let f = field(e2);
        let mut r = rng(seed);
        let a = random_unit(&f, &mut r);
        let t = random_element(&f, &mut r, 0);
        let one_plus = &FieldElement::one(&f) + &t.mul_pi_pow(2 * f.e() as i64 + 1);
        let b = &a * &one_plus;
        prop_assert_eq!(f.defect(&a).unwrap(), f.defect(&b).unwrap());
        prop_assert!(f.same_square_class(&a, &b).unwrap());
        let c = random_unit(&f, &mut r);
        prop_assert_eq!(f.hilbert(&a, &c).unwrap(), f.hilbert(&b, &c).unwrap());
    }

    #[test]
    fn defect_value_set_and_domination(e2: bool, seed: u64, va in -3i64..4, vb in -3i64..4) {
        let f = field(e2);
        let mut r = rng(seed);
        let a = random_element(&f, &mut r, va);
        let b = random_element(&f, &mut r, vb);
        let d = |x: &FieldElement| f.defect(x).unwrap();
        let e = f.e() as i64;
        for x in [d(&a), d(&b), d(&(&a * &b))] {
            prop_assert!(is_inf(x) || x == 0 || x == 2 * e || (x % 2 == 1 && x < 2 * e));
        }
        prop_assert!(d(&(&a * &b)) >= d(&a).min(d(&b)));
        prop_assert!(is_inf(d(&a.square())));
    }

    #[test]
    fn alpha_direct_equals_recursive(e2: bool, seed: u64, n in 1usize..9) {
        let f = field(e2);
        let s = random_symbol(&f, &mut rng(seed), n);
        prop_assert_eq!(alpha_vector(&s).unwrap(), alpha_recursive(&s).unwrap());
    }

    #[test]
    fn space_representation_laws(e2: bool, seed: u64) {
        use rand::Rng;
        let f = field(e2);
        let mut r = rng(seed);
        let mut classes = |m: usize| -> SpaceInvariants {
            let c: Vec<usize> = (0..m).map(|_| r.gen_range(0..f.class_count())).collect();
            SpaceInvariants::from_classes(&f, &c)
        };
        let u = classes(2);
        let v = classes(3);
        prop_assert!(represents(&u, &u));
        prop_assert!(represents(&u, &u.orthogonal_sum(&v)));
        let h = SpaceInvariants::hyperbolic(&f);
        // every space of dimension m embeds in m hyperbolic planes
        let hh = h.orthogonal_sum(&h).orthogonal_sum(&h);
        prop_assert!(represents(&v, &hh));
        // scaling twice by the same class is the identity
        let c = 5 % f.class_count();
        prop_assert_eq!(v.scaled(c).scaled(c), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn good_bong_is_good_and_verified(e2: bool, seed: u64, n in 1usize..6) {
        let f = field(e2);
        let l = random_lattice(&f, &mut rng(seed), n, -2, 6);
        let s = good_bong(&l).unwrap();
        s.check_good().unwrap();
        prop_assert!(verify_bong(&l, s.witness.as_ref().unwrap()).unwrap());
        // same space as the lattice
        let sp = space_invariants(&f, &s.a).unwrap();
        prop_assert_eq!(sp, lattice_space(&l).unwrap());
    }

    #[test]
    fn invariants_survive_basis_change(e2: bool, seed: u64, n in 1usize..5) {
        let f = field(e2);
        let mut r = rng(seed);
        let l = random_lattice(&f, &mut r, n, -2, 6);
        let k = transform(&l, &random_unimodular(&f, &mut r, n));
        let (s, t) = (good_bong(&l).unwrap(), good_bong(&k).unwrap());
        prop_assert_eq!(s.r(), t.r());
        prop_assert_eq!(alpha_vector(&s).unwrap(), alpha_vector(&t).unwrap());
        prop_assert_eq!(bong_weight_orders(&s).unwrap(), bong_weight_orders(&t).unwrap());
        prop_assert!(isometric_beli(&l, &k).unwrap().isometric);
        prop_assert!(isometric_omeara(&l, &k).unwrap().isometric);
    }

    #[test]
    fn scaling_by_unit_square_keeps_class(e2: bool, seed: u64, n in 1usize..5) {
        let f = field(e2);
        let mut r = rng(seed);
        let l = random_lattice(&f, &mut r, n, -2, 6);
        let c = random_unit(&f, &mut r).square();
        prop_assert!(isometric_beli(&l, &l.scaled(&c)).unwrap().isometric);
    }
}
