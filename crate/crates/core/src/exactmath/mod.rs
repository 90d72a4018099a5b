//! Exact rational arithmetic, polynomials and certified real-root tools.
//!
//! Nothing in here rounds. Floating point only appears in
//! [`rational::to_f64`], which is reserved for drawing.

pub mod integrate;
pub mod linalg;
pub mod multipoly;
pub mod poly;
pub mod rational;
pub mod sturm;

use thiserror::Error;

pub use integrate::{integrate_poly_power, integrate_weighted_monomial};
pub use linalg::{interpolate, solve_exact};
pub use multipoly::MultiPoly;
pub use poly::UniPoly;
pub use rational::{int, parse_rational, rat, rational_string, to_decimal, Rational};
pub use sturm::{is_positive_on_open, isolate_roots, sturm_count_roots, Certificate, RootInterval, SturmChain};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division is not exact, remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("integral has a logarithmic term (u^-1 from power {power}, index {index})")]
    LogarithmicTerm { power: i64, index: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("linear system is rank deficient (rank {rank} < {unknowns})")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("linear system is inconsistent at equation {row}")]
    Inconsistent { row: usize },
    #[error("cannot parse rational {0:?} (use p/q or an integer)")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    //! Ring-axiom and oracle checks shared by the submodules.
    use proptest::prelude::*;

    use super::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(small_rat(), 0..max_len).prop_map(UniPoly::new)
    }

    /// Brute-force count of distinct roots of `(t - r1)(t - r2)(t - r3)`
    /// restricted to an interval, straight from the known roots.
    fn brute_count(roots: &[Rational], lo: &Rational, hi: &Rational, open: bool) -> usize {
        let mut r = roots.to_vec();
        r.sort();
        r.dedup();
        r.iter()
            .filter(|t| if open { lo < *t && *t < hi } else { lo <= *t && *t <= hi })
            .count()
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(6), q in small_poly(6), t in small_rat()) {
            let prod = &p * &q;
            match (p.degree(), q.degree()) {
                (Some(a), Some(b)) => prop_assert_eq!(prod.degree(), Some(a + b)),
                _ => prop_assert!(prod.is_zero()),
            }
            prop_assert_eq!((&p + &q).eval(&t), p.eval(&t) + q.eval(&t));
            prop_assert_eq!(prod.eval(&t), p.eval(&t) * q.eval(&t));
        }

        #[test]
        fn exact_divide_roundtrip(q in small_poly(6), den in small_poly(5)) {
            prop_assume!(!den.is_zero());
            prop_assert_eq!((&q * &den).exact_divide(&den).unwrap(), q);
        }

        #[test]
        fn sturm_matches_brute_force(
            r in prop::collection::vec(small_rat(), 3),
            lead in (1i64..5),
            lo in small_rat(),
            len in (1i64..30, 1i64..4),
        ) {
            let hi = &lo + rat(len.0, len.1);
            let cubic = r.iter().fold(UniPoly::constant(int(lead)), |acc, root| {
                &acc * &UniPoly::linear(int(1), -root.clone())
            });
            let open = sturm_count_roots(&cubic, &lo, &hi, true).unwrap();
            let closed = sturm_count_roots(&cubic, &lo, &hi, false).unwrap();
            prop_assert_eq!(open, brute_count(&r, &lo, &hi, true));
            prop_assert_eq!(closed, brute_count(&r, &lo, &hi, false));
            let ends = usize::from(cubic.eval(&lo) == int(0)) + usize::from(cubic.eval(&hi) == int(0));
            prop_assert_eq!(open + ends, closed);
        }

        #[test]
        fn positivity_never_both_signs(p in small_poly(6)) {
            prop_assume!(!p.is_zero());
            let (lo, hi) = (int(-1), int(1));
            let pos = is_positive_on_open(&p, &lo, &hi).unwrap();
            let neg = is_positive_on_open(&-&p, &lo, &hi).unwrap();
            prop_assert!(!(pos && neg));
        }

        #[test]
        fn isolation_is_certified(r in prop::collection::vec(small_rat(), 1..5)) {
            let p = r.iter().fold(UniPoly::one(), |acc, root| &acc * &UniPoly::linear(int(1), -root.clone()));
            let (lo, hi) = (int(-4), int(4));
            let width = rat(1, 64);
            let iv = isolate_roots(&p, &lo, &hi, &width).unwrap();
            prop_assert_eq!(iv.len(), brute_count(&r, &lo, &hi, true));
            for w in iv.windows(2) {
                prop_assert!(w[0].hi <= w[1].lo);
            }
            for i in &iv {
                prop_assert!(i.width() <= width);
                prop_assert_eq!(sturm_count_roots(&p, &i.lo, &i.hi, true).unwrap(), 1);
                // every root here is rational, so the probe must find it
                prop_assert!(i.exact.is_some());
            }
        }

        #[test]
        fn moments_match_polynomial_antiderivative(
            r in 0usize..=4, q in 0i64..=4, c in (-11i64..=11).prop_map(|n| rat(n, 12)), x in small_rat()
        ) {
            let got = integrate_weighted_monomial(r, q, &c, &x).unwrap();
            let integrand = &(&UniPoly::monomial(int(1), r) * &UniPoly::linear(c.clone(), int(1)).pow(q as u32))
                * &UniPoly::linear(x.clone(), int(1));
            let anti = integrand.antiderivative();
            prop_assert_eq!(got, anti.eval(&int(1)) - anti.eval(&int(-1)));
        }
    }

    /// Composite Gauss–Legendre quadrature in f64: an oracle independent of
    /// the substitution route.
    fn quadrature(f: impl Fn(f64) -> f64) -> f64 {
        const NODES: [(f64, f64); 5] = [
            (0.0, 0.568_888_888_888_888_9),
            (-0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
            (0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
            (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
            (0.906_179_845_938_664, 0.236_926_885_056_189_08),
        ];
        let panels = 400;
        let h = 2.0 / panels as f64;
        (0..panels)
            .map(|k| {
                let a = -1.0 + k as f64 * h;
                NODES
                    .iter()
                    .map(|(t, w)| w * f(a + h * (t + 1.0) / 2.0))
                    .sum::<f64>()
                    * h
                    / 2.0
            })
            .sum()
    }

    #[test]
    fn negative_power_moment_matches_quadrature() {
        let (c, x) = (rat(2, 5), rat(1, 2));
        let exact = integrate_weighted_monomial(0, -6, &c, &x).unwrap();
        let numeric = quadrature(|t| (0.4 * t + 1.0).powi(-6) * (1.0 + 0.5 * t));
        let e = rational::to_f64(&exact);
        assert!((e - numeric).abs() < 1e-12 * numeric.abs(), "{e} vs {numeric}");
    }

    #[test]
    fn substitution_agrees_with_direct_branch_near_zero() {
        // for q < 0 and tiny c the substituted branch must approach the c = 0 value
        let x = rat(1, 3);
        for r in 0..=2 {
            let at_zero = integrate_weighted_monomial(r, -6, &int(0), &x).unwrap();
            let near = integrate_weighted_monomial(r, -6, &rat(1, 1_000_000), &x).unwrap();
            let diff = rational::to_f64(&(near - &at_zero));
            assert!(diff.abs() < 1e-4, "r = {r}: {diff}");
        }
    }

    #[test]
    fn isolates_quartic_factor_of_h() {
        let p = UniPoly::from_ints(&[190, 543, -350, -885, 540]);
        let iv = isolate_roots(&p, &int(-1), &int(0), &rat(1, 1_000_000)).unwrap();
        assert_eq!(iv.len(), 2);
        // high-precision bisection oracle in f64 on the quartic
        let f = |t: f64| 190.0 + 543.0 * t - 350.0 * t * t - 885.0 * t.powi(3) + 540.0 * t.powi(4);
        let bisect = |mut a: f64, mut b: f64| {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(a).signum() == f(m).signum() { a = m } else { b = m }
            }
            0.5 * (a + b)
        };
        let oracle = [bisect(-0.7, -0.5), bisect(-0.45, -0.3)];
        for (i, o) in iv.iter().zip(oracle) {
            let mid = rational::to_f64(&i.midpoint());
            assert!((mid - o).abs() < 5e-6, "{mid} vs {o}");
        }
        assert_eq!(format!("{:.3}", rational::to_f64(&iv[0].midpoint())), "-0.601");
        assert_eq!(format!("{:.3}", rational::to_f64(&iv[1].midpoint())), "-0.359");
    }

    #[test]
    fn isolates_h_of_quasiregular_example() {
        let p = &UniPoly::from_ints(&[-9, 10]) * &UniPoly::from_ints(&[190, 543, -350, -885, 540]);
        let iv = isolate_roots(&p, &int(-1), &int(1), &rat(1, 1000)).unwrap();
        assert_eq!(iv.len(), 3);
        assert_eq!(iv[2].exact, Some(rat(9, 10)));
        assert!(iv[..2].iter().all(|i| i.exact.is_none()));
    }
}
