use asnum::anumber::{a_number_fast, a_number_oracle, cartier_matrix_full, gamma, is_regular, p_rank, psi, psi_matrix, VElement};
use asnum::bounds::{
    l_ij, l_j, lower_bound, lower_bound_max_form, lower_bound_p3_closed_form, lower_bound_p5_5n1_closed_form,
    lower_bound_single, maximizing_j, tau, RamificationData, Rational,
};
use asnum::experiments::{distribution, sample_f, sample_rng};
use asnum::families::{family_candidates, FamilyStrategy};
use asnum::fppoly::{cartier_p1, normalize_artin_schreier, s_section, sc_project};
use asnum::linalg::{kernel_basis, mat_pow, rank_nullity};
use asnum::{BasicCurve, Differential1, FpMatrix, FpPoly};
use proptest::prelude::*;

const PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

fn prime_and_d(max_d: u64) -> impl Strategy<Value = (u32, u64)> {
    (prop::sample::select(PRIMES.to_vec()), 1..=max_d).prop_map(|(p, d)| (p, if d % p as u64 == 0 { d + 1 } else { d }))
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn floor_rat(x: Rational) -> i64 {
    x.numer().div_euclid(*x.denom())
}

// multiples of p in (τ, id], counted one at a time on numerators over p
fn brute_a_ij(p: u32, d: u64, i: u32, j: u32) -> u64 {
    let (p, d, i, j) = (p as i64, d as i64, i as i64, j as i64);
    // p·τ = p·i·d − (p−1)·d·j
    let tau_p = p * i * d - (p - 1) * d * j;
    let mut count = 0;
    let mut n = (tau_p.div_euclid(p * p) - 1) * p;
    while n <= i * d {
        if n * p > tau_p {
            count += 1;
        }
        n += p;
    }
    count
}

fn poly(p: u32, coeffs: &[u32]) -> FpPoly {
    FpPoly::from_coeffs(p, &coeffs.iter().map(|&c| c as i64).collect::<Vec<_>>())
}

fn random_curve(p: u32, d: u64, seed: u64) -> BasicCurve {
    let f = sample_f(p, d, &mut sample_rng(seed, 0)).unwrap();
    BasicCurve::new(p, &f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn l_ij_counts_multiples((p, d) in prime_and_d(200), i in 0u32..13, j in 0u32..13) {
        let (i, j) = (i % p, j % p);
        prop_assume!(j <= i && (i, j) != (0, 0));
        prop_assert_eq!(l_ij(p, d, i, j).unwrap(), brute_a_ij(p, d, i, j));
    }

    #[test]
    fn tau_has_denominator_dividing_p_squared((p, d) in prime_and_d(200), i in 0u32..13, j in 0u32..13) {
        let (i, j) = (i % p, j % p);
        prop_assume!(j <= i);
        let t = tau(p, d, i, j).unwrap();
        prop_assert_eq!((p as i64 * p as i64) % t.denom(), 0);
    }

    #[test]
    fn l_j_symmetric_and_peaked((p, d) in prime_and_d(200)) {
        let ls: Vec<u64> = (1..p).map(|j| l_j(p, d, j).unwrap()).collect();
        for j in 1..p {
            prop_assert_eq!(ls[j as usize - 1], ls[(p - j) as usize - 1]);
        }
        for j in p.div_ceil(2)..=p - 2 {
            prop_assert!(ls[j as usize - 1] >= ls[j as usize]);
        }
        let mid = maximizing_j(p);
        prop_assert_eq!(mid, (p - 1) / 2);
        prop_assert_eq!(*ls.iter().max().unwrap(), ls[mid as usize - 1]);
        prop_assert_eq!(lower_bound_single(p, d).unwrap(), ls[mid as usize - 1]);
    }

    #[test]
    fn additive_and_max_forms_agree(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]), ds in prop::collection::vec(1u64..150, 1..5)) {
        let ds: Vec<u64> = ds.into_iter().map(|d| if d % p as u64 == 0 { d + 1 } else { d }).collect();
        let data = RamificationData::new(p, ds.clone()).unwrap();
        let expected: u64 = ds.iter().map(|&d| lower_bound_single(p, d).unwrap()).sum();
        prop_assert_eq!(lower_bound(&data), expected);
        prop_assert_eq!(lower_bound_max_form(&data), expected);
    }

    #[test]
    fn hermite_identity(p in prop::sample::select(PRIMES.to_vec()), num in -5000i64..5000) {
        let q = p as i64;
        let x = Rational::new(num, q * q);
        let lhs = floor_rat(x * Rational::from_integer(q));
        let rhs: i64 = (0..q).map(|i| floor_rat(x + Rational::new(i, q))).sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartier_section_identities(p in prop::sample::select(PRIMES.to_vec()), coeffs in prop::collection::vec(0u32..13, 0..40), other in prop::collection::vec(0u32..13, 0..40), c in 0u32..13) {
        let w = Differential1(poly(p, &coeffs));
        let v = Differential1(poly(p, &other));
        prop_assert_eq!(cartier_p1(&s_section(&w)), w.clone());
        prop_assert_eq!(s_section(&cartier_p1(&w)), sc_project(&w));
        let sum = Differential1(w.h() + v.h());
        prop_assert_eq!(cartier_p1(&sum).0, cartier_p1(&w).h() + cartier_p1(&v).h());
        let c = c % p;
        prop_assert_eq!(cartier_p1(&Differential1(w.h().scale(c))).0, cartier_p1(&w).h().scale(c));
    }

    #[test]
    fn normalization_is_idempotent(p in prop::sample::select(PRIMES.to_vec()), coeffs in prop::collection::vec(0u32..13, 1..60)) {
        let f = poly(p, &coeffs);
        if let Ok(g) = normalize_artin_schreier(&f) {
            prop_assert!(g.coeff(0) == 0);
            prop_assert!(g.terms().all(|(e, _)| e % p as usize != 0));
            prop_assert_eq!(normalize_artin_schreier(&g).unwrap(), g);
        }
    }

    #[test]
    fn rank_properties(p in prop::sample::select(PRIMES.to_vec()), rows in 1usize..9, cols in 1usize..9, entries in prop::collection::vec(0i64..13, 81)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * 9..r * 9 + cols].to_vec()).collect();
        let m = FpMatrix::from_rows(p, &data).unwrap();
        let (rank, nullity) = rank_nullity(&m);
        prop_assert_eq!(rank + nullity, cols);
        prop_assert_eq!(m.transpose().rank(), rank);
        let kernel = kernel_basis(&m);
        prop_assert_eq!(kernel.len(), nullity);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        if !kernel.is_empty() {
            let k: Vec<Vec<i64>> = kernel.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
            prop_assert_eq!(FpMatrix::from_rows(p, &k).unwrap().rank(), nullity);
        }
    }

    #[test]
    fn ranks_of_powers_decrease(p in prop::sample::select(PRIMES.to_vec()), n in 1usize..7, entries in prop::collection::vec(0i64..13, 36)) {
        let data: Vec<Vec<i64>> = (0..n).map(|r| entries[r * 6..r * 6 + n].to_vec()).collect();
        let m = FpMatrix::from_rows(p, &data).unwrap();
        let mut last = n;
        for e in 0..=n as u64 + 1 {
            let rank = mat_pow(&m, e).unwrap().rank();
            prop_assert!(rank <= last);
            last = rank;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_is_linear(p in prop::sample::select(vec![3u32, 5, 7]), d in 2u64..25, seed in any::<u64>(), a in prop::collection::vec(0u32..7, 120), b in prop::collection::vec(0u32..7, 120)) {
        prop_assume!(d % p as u64 != 0);
        let curve = random_curve(p, d, seed);
        let dim = curve.dim_v();
        let a: Vec<u32> = a[..dim].iter().map(|x| x % p).collect();
        let b: Vec<u32> = b[..dim].iter().map(|x| x % p).collect();
        let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| (x + y) % p).collect();
        let ga = gamma(&curve, &VElement::from_basis_coords(&curve, &a).unwrap());
        let gb = gamma(&curve, &VElement::from_basis_coords(&curve, &b).unwrap());
        let gs = gamma(&curve, &VElement::from_basis_coords(&curve, &sum).unwrap());
        for t in 0..p as usize {
            prop_assert_eq!(gs.components()[t].h().clone(), ga.components()[t].h() + gb.components()[t].h());
        }
    }

    #[test]
    fn psi_vanishes_exactly_on_regular_images(p in prop::sample::select(vec![3u32, 5, 7]), d in 2u64..25, seed in any::<u64>(), coords in prop::collection::vec(0u32..7, 120)) {
        prop_assume!(d % p as u64 != 0);
        let curve = random_curve(p, d, seed);
        let m = psi_matrix(&curve);
        let kernel = kernel_basis(&m);
        let mut vectors = kernel.clone();
        vectors.push(coords[..curve.dim_v()].iter().map(|x| x % p).collect());
        for v in vectors {
            let elt = VElement::from_basis_coords(&curve, &v).unwrap();
            let zero = psi(&curve, &elt).iter().all(|&x| x == 0);
            prop_assert_eq!(zero, is_regular(&curve, &gamma(&curve, &elt)));
        }
    }

    #[test]
    fn invariant_under_artin_schreier_change(p in prop::sample::select(vec![3u32, 5, 7]), d in 2u64..30, seed in any::<u64>(), h in prop::collection::vec(0u32..7, 0..6)) {
        prop_assume!(d % p as u64 != 0);
        let curve = random_curve(p, d, seed);
        let max_h = ((d - 1) / p as u64) as usize;
        let h = poly(p, &h[..h.len().min(max_h + 1)]);
        let shifted = &(curve.f() + &h.pow(p)) - &h;
        let other = BasicCurve::new(p, &shifted).unwrap();
        prop_assert_eq!(other.d(), d);
        prop_assert_eq!(a_number_fast(&other), a_number_fast(&curve));
    }

    #[test]
    fn fast_matches_oracle(p in prop::sample::select(vec![3u32, 5, 7]), d in 1u64..=20, seed in any::<u64>()) {
        prop_assume!(d % p as u64 != 0);
        let curve = random_curve(p, d, seed);
        let a = a_number_fast(&curve);
        prop_assert_eq!(a, a_number_oracle(&curve));
        prop_assert_eq!(cartier_matrix_full(&curve).rows(), curve.genus());
        prop_assert_eq!(p_rank(&curve), 0);
        prop_assert!(curve.lower_bound() as usize <= a && a <= curve.genus());
    }
}

#[test]
fn ceiling_identity_for_d_one_mod_three() {
    for d in (1..=1000i64).filter(|d| d % 3 == 1) {
        let c = ceil_div(d, 3);
        assert_eq!(ceil_div(2 * d, 9) + ceil_div(c - 2, 3) + ceil_div(c - 1, 3), ceil_div(4 * d, 9), "d = {d}");
    }
}

#[test]
fn closed_forms_agree() {
    for d in (1..=1000u64).filter(|d| d % 3 != 0) {
        assert_eq!(lower_bound_p3_closed_form(d).unwrap(), lower_bound_single(3, d).unwrap(), "d = {d}");
    }
    for n in 1..=200u64 {
        assert_eq!(lower_bound_p5_5n1_closed_form(n).unwrap(), lower_bound_single(5, 5 * n + 1).unwrap(), "n = {n}");
    }
}

#[test]
fn curve_level_data() {
    for p in [2u32, 3, 5, 7, 11, 13] {
        for d in (1..=100u64).filter(|d| d % p as u64 != 0) {
            let c = BasicCurve::new(p, &FpPoly::monomial(p, 1, d as usize)).unwrap();
            let regular: i64 = c.n().iter().map(|&n| (n + 1).max(0)).sum();
            assert_eq!(regular as usize, c.genus(), "p = {p}, d = {d}");
            assert_eq!(c.regular_basis().len(), c.genus());
            assert_eq!(c.v_basis().len(), c.dim_v(), "p = {p}, d = {d}");
            let pi = p as i64;
            for i in 0..p as usize {
                let brute = (c.n()[i] + 1..=c.m()[i]).filter(|s| s.rem_euclid(pi) == pi - 1).count();
                assert_eq!(c.r()[i], brute);
                if let Some(s) = c.s_start()[i] {
                    assert_eq!(s.rem_euclid(pi), pi - 1);
                    assert!(c.n()[i] < s && s <= c.m()[i]);
                }
            }
            assert_eq!(c.dim_u(), c.r().iter().sum::<usize>());
            let m = psi_matrix(&c);
            assert_eq!((m.rows(), m.cols()), (c.dim_u(), c.dim_v()));
        }
    }
}

#[test]
fn family_polynomials_have_degree_d() {
    for p in [3u32, 5] {
        for d in (1..=300u64).filter(|d| d % p as u64 != 0) {
            for (f, strategy) in family_candidates(p, d).unwrap() {
                assert_eq!(f.degree(), Some(d as usize), "p = {p}, d = {d}, {strategy}");
                assert!(f.coeff(0) == 0 && f.terms().all(|(e, _)| e % p as usize != 0), "p = {p}, d = {d}, f = {f}");
                assert_eq!(f.leading_coeff(), 1);
                let terms = f.terms().count();
                match strategy {
                    FamilyStrategy::P3 | FamilyStrategy::P5Binomial | FamilyStrategy::SmallD => assert!(terms <= 2),
                    FamilyStrategy::P5Trinomial25 => assert_eq!(terms, 3),
                    // for small n two exponents can coincide, e.g. x^6 + 2x^4
                    FamilyStrategy::P5Mod5 => assert!((2..=3).contains(&terms)),
                }
            }
        }
    }
}

#[test]
fn distribution_ignores_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| distribution(5, 11, 400, 7).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.counts, four.counts);
    assert_eq!(one.counts.values().sum::<u64>(), 400);
    assert!(one.min_a().unwrap() as u64 >= one.lower_bound());
}
