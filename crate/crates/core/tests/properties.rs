mod common;

use brauer_count::analytic::{
    log_g, partial_euler_product, support_density, CharacterGroup, QuadCharacter,
};
use brauer_count::arith::{
    factor, hilbert_symbol, is_prime_u64, norm_form_value, ramified_places, NormFormSpec, Place,
    Rational,
};
use brauer_count::brauer::{evaluate_global_is_zero, is_norm_quadratic, is_norm_quadratic_int, SymbolClass};
use brauer_count::count::{landau_count, run_count, CountJob};
use brauer_count::heights::{enumerate, normalize, HeightSpec};
use brauer_count::model::{build_model, Family, FamilySpec, FiberOutcome};
use brauer_count::poly::Poly;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PLACES: [u64; 9] = [0, 2, 3, 5, 7, 11, 13, 97, 1009];
const DISCS: [i64; 8] = [-4, 8, -8, 5, -3, 12, 13, -7];

fn place(p: u64) -> Place {
    if p == 0 {
        Place::Infinity
    } else {
        Place::prime(p as u128).unwrap()
    }
}

fn nonzero(range: i64) -> impl Strategy<Value = i64> {
    (-range..=range).prop_filter("nonzero", |x| *x != 0)
}

fn rational(range: i64) -> impl Strategy<Value = Rational> {
    (nonzero(range), 1..=range).prop_map(|(n, d)| Rational::new(n as i128, d as i128))
}

fn hs(a: &Rational, b: &Rational, v: u64) -> i8 {
    hilbert_symbol(a, b, place(v)).unwrap()
}

fn squarefree_nonsquare() -> impl Strategy<Value = i64> {
    (-60i64..=60).prop_filter("squarefree, not 0 or 1", |&d| {
        d != 0 && d != 1 && common::squarefree(d) == d
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hilbert_symmetric(a in rational(500), b in rational(500), v in prop::sample::select(&PLACES[..])) {
        prop_assert_eq!(hs(&a, &b, v), hs(&b, &a, v));
    }

    #[test]
    fn hilbert_bilinear(a1 in rational(300), a2 in rational(300), b in rational(300), v in prop::sample::select(&PLACES[..])) {
        prop_assert_eq!(hs(&(a1 * a2), &b, v), hs(&a1, &b, v) * hs(&a2, &b, v));
    }

    #[test]
    fn hilbert_steinberg(a in rational(1000), v in prop::sample::select(&PLACES[..])) {
        prop_assert_eq!(hs(&a, &-a, v), 1);
        let one_minus = Rational::from_integer(1) - a;
        if one_minus != Rational::from_integer(0) {
            prop_assert_eq!(hs(&a, &one_minus, v), 1);
        }
    }

    #[test]
    fn hilbert_product_formula(a in rational(100_000), b in rational(100_000)) {
        let prod: i8 = ramified_places(&a, &b).unwrap().into_iter()
            .map(|v| hilbert_symbol(&a, &b, v).unwrap())
            .product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn quadratic_norm_form(d in squarefree_nonsquare(), t in rational(1000)) {
        let spec = NormFormSpec::new(Poly::from_i64(&[-d, 0, 1])).unwrap();
        let expected = Rational::from_integer(1) - Rational::from_integer(d as i128) * t * t;
        prop_assert_eq!(norm_form_value(&spec, &[t]).unwrap(), expected);
    }

    #[test]
    fn norm_form_matches_roots(
        f in prop::sample::select(vec![
            vec![-2i64, 0, 0, 1],
            vec![-1, -1, 0, 1],
            vec![-2, 0, 0, 0, 1],
            vec![1, 0, 0, 0, 1],
            vec![-1, -1, 0, 0, 0, 1],
        ]),
        t in prop::collection::vec(-20i64..=20, 4),
    ) {
        let spec = NormFormSpec::new(Poly::from_i64(&f)).unwrap();
        let t = &t[..spec.arity()];
        let exact = norm_form_value(&spec, &t.iter().map(|&x| Rational::from_integer(x as i128)).collect::<Vec<_>>()).unwrap();
        let exact = *exact.numer() as f64 / *exact.denom() as f64;
        let fl: Vec<f64> = f.iter().map(|&c| c as f64).collect();
        let tf: Vec<f64> = t.iter().map(|&c| c as f64).collect();
        let approx = common::norm_by_roots(&fl, &tf);
        prop_assert!((exact - approx).abs() <= 1e-6 * exact.abs().max(1.0), "{} vs {}", exact, approx);
    }

    #[test]
    fn factorization_round_trip(n in 1u64..1_000_000_000_000, sign in prop::bool::ANY) {
        let signed = if sign { -(n as i128) } else { n as i128 };
        let f = factor(signed).unwrap();
        prop_assert_eq!(f.value(), signed);
        let got: Vec<(u64, u32)> = f.factors().iter().map(|&(p, e)| (p as u64, e)).collect();
        prop_assert_eq!(got, common::trial_division(n));
    }

    #[test]
    fn normalize_scaling(x in prop::collection::vec(-1000i64..=1000, 2..=4), k in nonzero(50)) {
        prop_assume!(x.iter().any(|&c| c != 0));
        let scaled: Vec<i64> = x.iter().map(|c| c * k).collect();
        let p = normalize(&x).unwrap();
        prop_assert_eq!(&normalize(&scaled).unwrap(), &p);
        prop_assert_eq!(&normalize(p.coords()).unwrap(), &p);
        let g = p.coords().iter().fold(0, |g, c| common::gcd(g, c.unsigned_abs()));
        prop_assert_eq!(g, 1);
        prop_assert!(p.naive_height() <= x.iter().map(|c| c.unsigned_abs()).max().unwrap());
    }

    #[test]
    fn norm_test_agrees(m in nonzero(5000), d in squarefree_nonsquare()) {
        let rat = is_norm_quadratic(&Rational::from_integer(m as i128), d as i128).unwrap();
        prop_assert_eq!(is_norm_quadratic_int(m as i128, d), rat);
    }

    #[test]
    fn norm_test_matches_search(m in nonzero(60), d in squarefree_nonsquare()) {
        prop_assume!(d.abs() <= 30);
        prop_assert_eq!(is_norm_quadratic_int(m as i128, d), common::is_norm_brute(m, d));
    }

    #[test]
    fn norms_closed_under_products(m1 in nonzero(3000), m2 in nonzero(3000), d in squarefree_nonsquare()) {
        let n = |m: i64| is_norm_quadratic_int(m as i128, d);
        if n(m1) && n(m2) {
            prop_assert!(n(m1 * m2));
        }
        if n(m1) != n(m2) {
            prop_assert!(!n(m1 * m2));
        }
    }

    #[test]
    fn conic_delta_half_count(roots in prop::collection::btree_set(-6i64..=6, 1..=2), extra in prop::bool::ANY) {
        // product of distinct linear factors with even total degree
        let mut rs: Vec<i64> = roots.into_iter().collect();
        if rs.len() % 2 == 1 || extra {
            let next = (-6..=6).find(|r| !rs.contains(r)).unwrap();
            rs.push(next);
        }
        if rs.len() % 2 == 1 {
            let next = (-6..=6).find(|r| !rs.contains(r)).unwrap();
            rs.push(next);
        }
        let mut f0 = vec![1i64];
        for r in &rs {
            let mut g = vec![0i64; f0.len() + 1];
            for (i, &c) in f0.iter().enumerate() {
                g[i] -= r * c;
                g[i + 1] += c;
            }
            f0 = g;
        }
        let m = build_model(&FamilySpec::conic_bundle(&f0, &[1], &[1])).unwrap();
        prop_assert_eq!(m.delta, Rational::new(rs.len() as i128, 2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_indicator_is_character_average(mask in 1u8..=255, p in 3u64..100_000) {
        prop_assume!(common::trial_division(p).len() == 1 && common::trial_division(p)[0].1 == 1);
        let gens: Vec<i64> = DISCS.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &d)| d).take(3).collect();
        let r = CharacterGroup::generated_by(&gens).unwrap();
        prop_assume!(!r.is_ramified(p));
        let sum: i64 = r.members().iter().map(|c| c.eval(p) as i64).sum();
        prop_assert_eq!(r.zero_indicator(p) as i64 * r.order() as i64, sum);
    }

    #[test]
    fn landau_matches_brute(x in 1u64..=10_000) {
        let brute = common::two_squares_brute(x as usize).iter().filter(|&&b| b).count() as u64;
        prop_assert_eq!(landau_count(x).unwrap(), brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn counts_independent_of_workers(t in 20u128..=120, workers in 2usize..=6, d in prop::sample::select(vec![3i64, 5, -1, 7])) {
        let job = |workers| CountJob {
            family: FamilySpec::norm_form(&[-2, 0, 1], vec![FamilySpec::quadratic_twist(d)]),
            height: HeightSpec::Anticanonical { ambient_dim: 1 },
            checkpoints: vec![(t / 3).pow(2), (t / 2).pow(2), t * t],
            workers,
        };
        let one = run_count(&job(1)).unwrap();
        let many = run_count(&job(workers)).unwrap();
        prop_assert_eq!(&one, &many);
        for row in &one.rows {
            prop_assert!(row.n <= row.baseline);
        }
        for w in one.rows.windows(2) {
            prop_assert!(w[0].n <= w[1].n && w[0].baseline <= w[1].baseline);
        }
    }
}

#[test]
fn factor_random_u64() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100_000 {
        let n: u64 = rng.gen_range(2..u64::MAX);
        let f = factor(n as i128).unwrap();
        assert_eq!(f.value(), n as i128, "{n}");
        for &(p, _) in f.factors() {
            assert!(is_prime_u64(p as u64), "{p} in {n}");
        }
    }
}

#[test]
fn enumeration_monotone_and_bounded() {
    for n in 1..=2 {
        let mut prev = 0;
        for t in 1..=30u64 {
            let mut count = 0;
            enumerate(n, t, |x| {
                assert!(x.iter().all(|c| c.unsigned_abs() <= t));
                assert_eq!(normalize(x).unwrap().coords(), x);
                count += 1;
            });
            assert!(count > prev, "P^{n}, T = {t}");
            prev = count;
        }
    }
}

#[test]
fn projective_line_count() {
    let t = 10_000u64;
    let mut count = 0u64;
    enumerate(1, t, |_| count += 1);
    let expected = 12.0 / std::f64::consts::PI.powi(2) * (t * t) as f64;
    assert!((count as f64 - expected).abs() / expected < 0.05, "{count} vs {expected}");
}

#[test]
fn euler_product_increases_with_cutoff() {
    for gens in [vec![-4], vec![5], vec![-4, 8], vec![-3, 5]] {
        let r = CharacterGroup::generated_by(&gens).unwrap();
        for s in [1.05, 1.5, 2.0] {
            let mut prev = 0.0;
            for p in [10, 100, 1_000, 10_000, 100_000] {
                let v = partial_euler_product(&r, &QuadCharacter::Principal, s, p).unwrap();
                assert!(v >= prev, "{gens:?}, s = {s}, P = {p}");
                prev = v;
            }
        }
    }
}

#[test]
fn support_density_matches_group_order() {
    for gens in [vec![-4], vec![-3], vec![-4, 8], vec![-4, -3, 5]] {
        let r = CharacterGroup::generated_by(&gens).unwrap();
        let expected = 1.0 / r.order() as f64;
        let got = support_density(&r, 10_000_000);
        assert!((got - expected).abs() / expected < 0.02, "{gens:?}: {got} vs {expected}");
    }
}

#[test]
fn g_estimates_cauchy_trending() {
    let chis = [QuadCharacter::Principal, QuadCharacter::kronecker(-3).unwrap(), QuadCharacter::kronecker(5).unwrap()];
    for gens in [vec![-3], vec![-4, -3], vec![-3, 5]] {
        let r = CharacterGroup::generated_by(&gens).unwrap();
        for chi in &chis {
            for s in [1.1, 2.0] {
                let g: Vec<f64> = [10_000, 100_000, 1_000_000].iter().map(|&p| log_g(&r, chi, s, p).exp()).collect();
                assert!((g[2] - g[1]).abs() < (g[1] - g[0]).abs(), "{gens:?}, {chi}, s = {s}: {g:?}");
                assert!(g[2] > 0.0);
            }
        }
    }
}

#[test]
fn torus_symbol_matches_norm_search() {
    let class = SymbolClass::gm(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1_000 {
        let a: i64 = rng.gen_range(1..=100) * if rng.gen() { 1 } else { -1 };
        let b: i64 = rng.gen_range(1..=100);
        let t = Rational::new(a as i128, b as i128);
        let zero = evaluate_global_is_zero(&class, &[t]).unwrap();
        assert_eq!(zero, common::is_norm_brute(a * b, 3), "t = {t}");
    }
}

#[test]
fn fibre_test_matches_norm_search() {
    let family = Family::new(&FamilySpec::norm_form(&[-2, 0, 1], vec![FamilySpec::quadratic_twist(3)])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 1_000 {
        let x = [rng.gen_range(1..=60i64), rng.gen_range(-60..=60i64)];
        if common::gcd(x[0] as u64, x[1].unsigned_abs()) != 1 {
            continue;
        }
        let m = x[0] * x[0] - 2 * x[1] * x[1];
        let expected = common::is_norm_brute(m, 3);
        let got = family.evaluate(&x).unwrap();
        assert_eq!(got == FiberOutcome::Soluble, expected, "{x:?}, norm {m}");
        checked += 1;
    }
}
