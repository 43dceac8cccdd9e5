use nilcoh::automorphism::{act_on_params, minor_matrix, pullback, Automorphism};
use nilcoh::{random, CocycleParams, GroupElement, IntegerMatrix, IrrationalBasis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn basis() -> IrrationalBasis {
    IrrationalBasis::new(["alpha"]).unwrap()
}

fn random_aut(rng: &mut ChaCha8Rng, n: usize) -> Automorphism {
    let s = random::matrix(rng, n, n * (n - 1) / 2, 3);
    Automorphism::new(random::unimodular(rng, n, 10), s).unwrap()
}

#[test]
fn apply_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for n in [2usize, 3] {
        let phi = random_aut(&mut rng, n);
        for _ in 0..200 {
            let r = random::element(&mut rng, n, 5);
            let s = random::element(&mut rng, n, 5);
            let lhs = phi.apply(&r.multiply(&s).unwrap()).unwrap();
            let rhs = phi
                .apply(&r)
                .unwrap()
                .multiply(&phi.apply(&s).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn compose_and_inverse_agree_with_apply() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    let n = 3;
    let phi = random_aut(&mut rng, n);
    let psi = random_aut(&mut rng, n);
    let both = phi.compose(&psi).unwrap();
    let round = phi.compose(&phi.inverse()).unwrap();
    for _ in 0..100 {
        let r = random::element(&mut rng, n, 5);
        assert_eq!(
            both.apply(&r).unwrap(),
            phi.apply(&psi.apply(&r).unwrap()).unwrap()
        );
        assert_eq!(round.apply(&r).unwrap(), r);
    }
}

#[test]
fn kernel_acts_trivially() {
    let mut rng = ChaCha8Rng::seed_from_u64(205);
    for n in [2usize, 3] {
        for _ in 0..10 {
            let p = random::mixed_params(&mut rng, n, &basis(), 12);
            let s = random::matrix(&mut rng, n, n * (n - 1) / 2, 4);
            let phi = Automorphism::new(IntegerMatrix::identity(n), s).unwrap();
            assert_eq!(pullback(&phi, &p).unwrap(), p);
        }
        let p = random::mixed_params(&mut rng, n, &basis(), 12);
        assert_eq!(
            pullback(&Automorphism::inner_from(&GroupElement::u(n, 0)), &p).unwrap(),
            p
        );
        assert_eq!(pullback(&Automorphism::identity(n), &p).unwrap(), p);
    }
}

#[test]
fn pullback_depends_only_on_a() {
    let mut rng = ChaCha8Rng::seed_from_u64(207);
    for n in [2usize, 3] {
        for _ in 0..10 {
            let a = random::unimodular(&mut rng, n, 10);
            let p = random::mixed_params(&mut rng, n, &basis(), 12);
            let m = n * (n - 1) / 2;
            let f = Automorphism::new(a.clone(), random::matrix(&mut rng, n, m, 4)).unwrap();
            let g = Automorphism::new(a.clone(), random::matrix(&mut rng, n, m, 4)).unwrap();
            let expect = act_on_params(&a, &p).unwrap();
            assert_eq!(pullback(&f, &p).unwrap(), expect);
            assert_eq!(pullback(&g, &p).unwrap(), expect);
        }
    }
}

#[test]
fn action_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(209);
    for n in [2usize, 3, 4] {
        for _ in 0..20 {
            let a = random::unimodular(&mut rng, n, 10);
            let b = random::unimodular(&mut rng, n, 10);
            let p: CocycleParams = random::mixed_params(&mut rng, n, &basis(), 12);
            let ab = a.mul(&b).unwrap();
            let lhs = act_on_params(&ab, &p).unwrap();
            let rhs = act_on_params(&a, &act_on_params(&b, &p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn minors_are_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(211);
    for n in [2usize, 3, 4, 5] {
        for _ in 0..20 {
            let a = random::matrix(&mut rng, n, n, 4);
            let b = random::matrix(&mut rng, n, n, 4);
            let lhs = minor_matrix(&a.mul(&b).unwrap()).unwrap();
            let rhs = minor_matrix(&a)
                .unwrap()
                .mul(&minor_matrix(&b).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        let a = random::unimodular(&mut rng, n, 12);
        if n == 2 {
            assert_eq!(minor_matrix(&a).unwrap()[(0, 0)], a.det().unwrap());
        }
    }
}
