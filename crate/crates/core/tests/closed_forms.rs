use invwalk::closedform::{
    iterated_upper_bound, semi_infinite_e, semi_infinite_p, theorem_lower_bound,
    theorem_upper_bound,
};
use invwalk::heatflow::{self, semi_infinite_profile};
use invwalk::numerics::{rat, Poly, Rational};

fn sublevel_sum(n: u32, t: u32, k_max: u32) -> Poly {
    (1..=k_max)
        .map(|k| semi_infinite_p(k, t).scale(&Rational::from(i64::from(n) + 1 - i64::from(k))))
        .sum()
}

#[test]
fn closed_form_matches_one_dimensional_dp() {
    for t in 0..=12usize {
        let profile = semi_infinite_profile(t, &Poly::x()).unwrap();
        for (k, p) in profile.iter().enumerate().skip(1) {
            assert_eq!(&semi_infinite_p(k as u32, t as u32), p, "k={k} t={t}");
        }
    }
}

#[test]
fn total_heat_is_weighted_sublevel_sum_while_front_fits() {
    for n in 1..=8 {
        for t in 0..=(n + 1).min(8) {
            assert_eq!(sublevel_sum(n, t, n), semi_infinite_e(n, t), "n={n} t={t}");
        }
    }
}

#[test]
fn total_heat_formula_is_the_continuation_in_n() {
    // past the front the formula keeps the (possibly non-positive)
    // weights n+1-k of sublevels that do not exist in the triangle
    for n in 1..=8 {
        for t in 0..=8 {
            assert_eq!(
                sublevel_sum(n, t, n.max(t)),
                semi_infinite_e(n, t),
                "n={n} t={t}"
            );
        }
    }
    assert_ne!(sublevel_sum(1, 3, 1), semi_infinite_e(1, 3));
}

#[test]
fn sandwich_when_theorem_premise_holds() {
    for n in 1..=8u32 {
        for t in 0..=n {
            let exact = heatflow::exact_e(n as usize, t as usize).unwrap();
            assert!(theorem_lower_bound(n, t) <= exact, "n={n} t={t}");
            assert!(exact <= theorem_upper_bound(n, t), "n={n} t={t}");
        }
    }
}

#[test]
fn sandwich_at_monotone_conductivity() {
    for n in 1..=8u32 {
        for t in 0..=8u32 {
            let finite = heatflow::symbolic_e(n as usize, t as usize).unwrap();
            for x in [rat(1, 4).unwrap(), rat(1, 10).unwrap(), rat(1, 7).unwrap()] {
                let e = finite.eval(&x);
                assert!(semi_infinite_e(n, t).eval(&x) <= e, "n={n} t={t} x={x}");
                assert!(
                    e <= iterated_upper_bound(n, t).eval(&x),
                    "n={n} t={t} x={x}"
                );
            }
        }
    }
}

#[test]
fn theorem_forms_equal_polynomial_forms_at_inverse_n() {
    for n in 1..=10u32 {
        let inv = Rational::recip_of(u64::from(n)).unwrap();
        for t in 0..=10u32 {
            assert_eq!(theorem_lower_bound(n, t), semi_infinite_e(n, t).eval(&inv));
            assert_eq!(
                theorem_upper_bound(n, t),
                iterated_upper_bound(n, t).eval(&inv)
            );
        }
    }
}

#[test]
fn bounds_tight_at_two_steps() {
    // the finite correction starts at x^2 with g_2 = 1
    let exact = heatflow::symbolic_e(4, 2).unwrap();
    assert_eq!(iterated_upper_bound(4, 2), exact);
    assert_eq!(&exact - &semi_infinite_e(4, 2), Poly::from_ints(&[0, 0, 2]));
}
