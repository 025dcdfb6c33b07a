//! Property-based cross-checks of the classical polynomial constructors.
//!
//! Both families are built by direct expansion of their coefficient
//! formulas; the classical three-term recurrences play no role in the
//! construction, which makes them a fully independent oracle here.  Random
//! rational parameters inside the orthogonality range (`> -1`) drive the
//! same code path the deformed systems use, and Sturm counts tie the exact
//! algebra back to independently known root locations.

use proptest::prelude::*;
use xell::classical::{jacobi_poly_in, laguerre_poly_in};
use xell::poly::VAR_X;
use xell::ring::{pochhammer_rat, rat, rat_int, Rational};
use xell::sturm::{sturm_count_roots, Bound};
use xell::Poly;

/// Random rational in `(-1, 8]` with denominator at most 6: inside the
/// classical parameter range, where no construction precondition (negative
/// integer parameters, vanishing recurrence prefactors) can trip.
fn classical_parameter() -> impl Strategy<Value = Rational> {
    (1_i64..=6, -5_i64..=48)
        .prop_filter_map("parameter must be > -1", |(den, num)| {
            (num > -den).then(|| rat(num, den))
        })
}

fn laguerre(n: i64, alpha: &Rational) -> Poly<Rational> {
    laguerre_poly_in(n, alpha, VAR_X).expect("degrees >= -1 are accepted")
}

fn jacobi(n: i64, alpha: &Rational, beta: &Rational) -> Poly<Rational> {
    jacobi_poly_in(n, alpha, beta, VAR_X).expect("parameters > -1 are never degenerate")
}

/// `n!` as an exact rational, via the rising factorial `(1)_n`.
fn factorial_rat(n: i64) -> Rational {
    pochhammer_rat(&rat_int(1), n as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laguerre_three_term_recurrence_holds(
        alpha in classical_parameter(),
        n in 1_i64..=9,
    ) {
        // (n+1) L_(n+1) = (2n + 1 + alpha - x) L_n - (n + alpha) L_(n-1).
        let lhs = laguerre(n + 1, &alpha).scale(&rat_int(n + 1));
        let mixing = Poly::new(VAR_X, vec![&rat_int(2 * n + 1) + &alpha, rat_int(-1)]);
        let rhs = &(&mixing * &laguerre(n, &alpha))
            - &laguerre(n - 1, &alpha).scale(&(&rat_int(n) + &alpha));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_three_term_recurrence_holds(
        alpha in classical_parameter(),
        beta in classical_parameter(),
        n in 1_i64..=8,
    ) {
        // 2(n+1)(n+a+b+1)(2n+a+b) P_(n+1)
        //   = (2n+a+b+1) [ (2n+a+b+2)(2n+a+b) x + a^2 - b^2 ] P_n
        //   - 2(n+a)(n+b)(2n+a+b+2) P_(n-1).
        // Every prefactor is strictly positive for a, b > -1 and n >= 1.
        let c = |k: i64| &rat_int(k) + &(&alpha + &beta);
        let lhs = jacobi(n + 1, &alpha, &beta)
            .scale(&(&(&rat_int(2 * (n + 1)) * &c(n + 1)) * &c(2 * n)));
        let mixing = Poly::new(
            VAR_X,
            vec![&(&alpha - &beta) * &(&alpha + &beta), &c(2 * n + 2) * &c(2 * n)],
        );
        let drop = jacobi(n - 1, &alpha, &beta).scale(
            &(&(&(&rat_int(2) * &(&rat_int(n) + &alpha)) * &(&rat_int(n) + &beta))
                * &c(2 * n + 2)),
        );
        let rhs = &(&mixing * &jacobi(n, &alpha, &beta)).scale(&c(2 * n + 1)) - &drop;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laguerre_degree_and_leading_coefficient(
        alpha in classical_parameter(),
        n in 0_i64..=9,
    ) {
        let p = laguerre(n, &alpha);
        prop_assert_eq!(p.degree(), Some(n as usize));
        let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let expected = &sign / &factorial_rat(n);
        prop_assert_eq!(p.leading().unwrap(), &expected);
    }

    #[test]
    fn jacobi_leading_coefficient_matches_the_closed_form(
        alpha in classical_parameter(),
        beta in classical_parameter(),
        n in 0_i64..=8,
    ) {
        // 2^(-n) (n + a + b + 1)_n / n!, nonzero throughout a, b > -1.
        let p = jacobi(n, &alpha, &beta);
        prop_assert_eq!(p.degree(), Some(n as usize));
        let rising = pochhammer_rat(&(&(&alpha + &beta) + &rat_int(n + 1)), n as usize);
        let expected = &(&rising / &factorial_rat(n)) / &rat_int(1_i64 << n);
        prop_assert_eq!(p.leading().unwrap(), &expected);
    }

    #[test]
    fn affine_substitution_commutes_with_evaluation(
        alpha in classical_parameter(),
        n in 0_i64..=7,
        scale_num in prop::sample::select(vec![-4_i64, -1, 1, 2, 3]),
        offset_num in -6_i64..=6,
        point_num in -5_i64..=5,
    ) {
        let scale = rat(scale_num, 3);
        let offset = rat(offset_num, 2);
        let point = rat(point_num, 2);
        let p = laguerre(n, &alpha);
        let image = p.substitute_affine(&scale, &offset);
        prop_assert_eq!(image.eval(&point), p.eval(&(&(&scale * &point) + &offset)));
    }

    #[test]
    fn laguerre_has_n_distinct_positive_roots(
        alpha in classical_parameter(),
        n in 0_i64..=8,
    ) {
        let count = sturm_count_roots(
            &laguerre(n, &alpha),
            &Bound::finite(rat_int(0)),
            &Bound::PosInf,
        )
        .expect("nonzero polynomial");
        prop_assert_eq!(count, n as usize);
    }

    #[test]
    fn jacobi_has_n_distinct_roots_inside_the_weight_interval(
        alpha in classical_parameter(),
        beta in classical_parameter(),
        n in 0_i64..=8,
    ) {
        let count = sturm_count_roots(
            &jacobi(n, &alpha, &beta),
            &Bound::finite(rat_int(-1)),
            &Bound::finite(rat_int(1)),
        )
        .expect("nonzero polynomial");
        prop_assert_eq!(count, n as usize);
    }

    #[test]
    fn jacobi_reflection_swaps_the_parameters(
        alpha in classical_parameter(),
        beta in classical_parameter(),
        n in 0_i64..=8,
    ) {
        let reflected = jacobi(n, &alpha, &beta).substitute_affine(&rat_int(-1), &rat_int(0));
        let swapped = jacobi(n, &beta, &alpha);
        let expected = if n % 2 == 0 { swapped } else { swapped.neg() };
        prop_assert_eq!(reflected, expected);
    }
}

/// Sixth-degree tie-in with trigonometry: the `(-1/2, -1/2)` member of
/// degree 6 is proportional to `cos(6 arccos x)`, whose roots sit at
/// `cos((2k - 1) pi / 12)` for `k = 1..=6`.  Counting them in sub-intervals
/// pins the Sturm machinery to independently known positions: exactly two
/// roots exceed `1/2 = cos(pi/3)` (`k = 1, 2`), three are positive, and all
/// six lie inside `(-1, 1)`.
#[test]
fn sturm_counts_match_the_cosine_root_positions() {
    let p = jacobi(6, &rat(-1, 2), &rat(-1, 2));
    let count = |lo: Bound, hi: Bound| sturm_count_roots(&p, &lo, &hi).unwrap();
    assert_eq!(count(Bound::NegInf, Bound::PosInf), 6);
    assert_eq!(
        count(Bound::finite(rat_int(-1)), Bound::finite(rat_int(1))),
        6
    );
    assert_eq!(count(Bound::finite(rat_int(0)), Bound::finite(rat_int(1))), 3);
    assert_eq!(
        count(Bound::finite(rat(1, 2)), Bound::finite(rat_int(1))),
        2
    );
}
