//! The weighted-extremal boundary-value problem for admissible profiles.
//!
//! For a ray `f = c z + 1` the profile `F` solves
//!
//! ```text
//! (cz+1)^2 F'' - 2(p-1) c (cz+1) F' + p(p-1) c^2 F
//!     = (cz+1)^2 (2a(1+xz) + 2sx) - (A1 z + A2)(1+xz)
//! ```
//!
//! with `F(±1) = 0`, `F'(-1) = 2(1-x)` and `F'(1) = -2(1+x)`. Nothing is
//! returned unless all of these identities hold exactly.

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exactmath::linalg::det2;
use crate::exactmath::rational::pow_i;
use crate::exactmath::{
    int, integrate_poly_power, integrate_weighted_monomial, rat, solve_exact, ExactError, Rational, UniPoly,
};
use crate::joinsetup::ProductSetup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalProfile {
    pub c: Rational,
    pub f: UniPoly,
    pub a1: Rational,
    pub a2: Rational,
    pub p: u32,
}

impl ExtremalProfile {
    /// `F / (1 - z^2)`; its sign on `(-1, 1)` decides extremality.
    pub fn cofactor(&self) -> UniPoly {
        self.f
            .exact_divide(&UniPoly::from_ints(&[1, 0, -1]))
            .expect("profiles vanish at both endpoints")
    }

    /// The Killing potential `A1 z + A2`.
    pub fn killing(&self) -> UniPoly {
        UniPoly::linear(self.a1.clone(), self.a2.clone())
    }
}

pub(crate) fn check_ray(c: &Rational) -> Result<()> {
    if c.abs() >= Rational::one() {
        return Err(domain(format!("c must lie in (-1, 1), got {c}")));
    }
    Ok(())
}

pub fn alpha(setup: &ProductSetup, c: &Rational, r: usize, q: i64) -> Result<Rational> {
    check_ray(c)?;
    Ok(integrate_weighted_monomial(r, q, c, &setup.x)?)
}

pub fn beta(setup: &ProductSetup, c: &Rational, r: usize, q: i64) -> Result<Rational> {
    check_ray(c)?;
    let x = &setup.x;
    let moment = integrate_poly_power(&UniPoly::monomial(int(1), r), c, q, &int(-1), &int(1))?;
    let sign = if r.is_multiple_of(2) { int(1) } else { int(-1) };
    let boundary = sign * pow_i(&(int(1) - c), q)? * (int(1) - x) + pow_i(&(int(1) + c), q)? * (int(1) + x);
    Ok(&setup.a * alpha(setup, c, r, q)? + setup.sx() * moment + boundary)
}

/// Solves the 2x2 system fixing `A1`, `A2`.
pub fn solve_a(setup: &ProductSetup, c: &Rational) -> Result<(Rational, Rational)> {
    let p = i64::from(setup.p);
    let a0 = alpha(setup, c, 0, -(p + 1))?;
    let a1 = alpha(setup, c, 1, -(p + 1))?;
    let a2 = alpha(setup, c, 2, -(p + 1))?;
    let b0 = int(2) * beta(setup, c, 0, -(p - 1))?;
    let b1 = int(2) * beta(setup, c, 1, -(p - 1))?;
    let det = det2(&a1, &a0, &a2, &a1);
    if det.is_zero() {
        return Err(Error::SingularSystem { determinant: det });
    }
    let big_a1 = det2(&b0, &a0, &b1, &a1) / &det;
    let big_a2 = det2(&a1, &b0, &a2, &b1) / &det;
    Ok((big_a1, big_a2))
}

/// `2a(1+xz) + 2sx`, the part of the weighted scalar curvature that does not
/// involve `F`.
pub fn base_term(setup: &ProductSetup) -> UniPoly {
    let two_a = int(2) * &setup.a;
    UniPoly::linear(&two_a * &setup.x, two_a + int(2) * setup.sx())
}

/// `(cz+1)^2 F'' - 2(p-1)c(cz+1)F' + p(p-1)c^2 F`.
pub fn profile_operator(f: &UniPoly, c: &Rational, p: u32) -> UniPoly {
    let lin = UniPoly::linear(c.clone(), int(1));
    let p = i64::from(p);
    let d1 = f.derivative();
    let d2 = d1.derivative();
    &(&(&lin * &lin) * &d2) - &(&lin * &d1).scale(&(int(2 * (p - 1)) * c))
        + f.scale(&(int(p * (p - 1)) * c * c))
}

/// Right-hand side of the profile equation for given `A1`, `A2`.
pub fn profile_rhs(setup: &ProductSetup, c: &Rational, a1: &Rational, a2: &Rational) -> UniPoly {
    let lin = UniPoly::linear(c.clone(), int(1));
    let divisor = UniPoly::linear(setup.x.clone(), int(1));
    &(&(&lin * &lin) * &base_term(setup)) - &(&UniPoly::linear(a1.clone(), a2.clone()) * &divisor)
}

/// Solves for the profile of the ray `c` and verifies it exactly.
pub fn compute_profile(setup: &ProductSetup, c: &Rational) -> Result<ExtremalProfile> {
    check_ray(c)?;
    let (a1, a2) = solve_a(setup, c)?;
    let p = setup.p as usize;
    let rhs = profile_rhs(setup, c, &a1, &a2);
    let x = &setup.x;

    // unknowns f_0..f_p; the operator image of z^i is computed column by column
    let images: Vec<UniPoly> = (0..=p)
        .map(|i| profile_operator(&UniPoly::monomial(int(1), i), c, setup.p))
        .collect();
    let mut rows = Vec::with_capacity(p + 5);
    let mut values = Vec::with_capacity(p + 5);
    for m in 0..=p {
        rows.push(images.iter().map(|img| img.coeff(m)).collect());
        values.push(rhs.coeff(m));
    }
    let endpoint = |t: i64, deriv: bool| -> Vec<Rational> {
        (0..=p)
            .map(|i| {
                let i = i as i64;
                match (deriv, i) {
                    (false, _) => pow_i(&int(t), i).unwrap(),
                    (true, 0) => int(0),
                    (true, _) => int(i) * pow_i(&int(t), i - 1).unwrap(),
                }
            })
            .collect()
    };
    rows.push(endpoint(-1, false));
    values.push(int(0));
    rows.push(endpoint(1, false));
    values.push(int(0));
    rows.push(endpoint(-1, true));
    values.push(int(2) * (int(1) - x));
    rows.push(endpoint(1, true));
    values.push(int(-2) * (int(1) + x));

    let coeffs = solve_exact(&rows, &values).map_err(|e| match e {
        ExactError::Inconsistent { row } => {
            Error::InternalInconsistency(format!("profile conditions disagree at condition {row} for c = {c}"))
        }
        other => Error::InternalInconsistency(format!("profile system failed for c = {c}: {other}")),
    })?;
    let profile = ExtremalProfile {
        c: c.clone(),
        f: UniPoly::new(coeffs),
        a1,
        a2,
        p: setup.p,
    };
    verify_profile(setup, &profile)?;
    Ok(profile)
}

/// Points where the profile is compared with its integral representation.
const ORACLE_POINTS: [(i64, i64); 5] = [(-3, 4), (-1, 3), (0, 1), (2, 5), (1, 1)];

fn verify_profile(setup: &ProductSetup, prof: &ExtremalProfile) -> Result<()> {
    let fail = |what: &str| Err(Error::InternalInconsistency(format!("{what} fails for c = {}", prof.c)));
    let f = &prof.f;
    let x = &setup.x;
    let df = f.derivative();
    if !f.eval(&int(-1)).is_zero() || !f.eval(&int(1)).is_zero() {
        return fail("F(±1) = 0");
    }
    if df.eval(&int(-1)) != int(2) * (int(1) - x) || df.eval(&int(1)) != int(-2) * (int(1) + x) {
        return fail("F'(±1) = ∓2(1±x)");
    }
    let residual = &profile_operator(f, &prof.c, setup.p) - &profile_rhs(setup, &prof.c, &prof.a1, &prof.a2);
    if !residual.is_zero() {
        return fail("profile equation");
    }
    for (n, d) in ORACLE_POINTS {
        let z = rat(n, d);
        if integral_profile_at(setup, prof, &z)? != f.eval(&z) {
            return fail("integral representation");
        }
    }
    Ok(())
}

/// `F(z)` from the integral representation
/// `(cz+1)^(p-1) [2(1-x)(z+1)/(1-c)^(p-1) + ∫_{-1}^z Q(t)(z-t) dt]`.
pub fn integral_profile_at(setup: &ProductSetup, prof: &ExtremalProfile, z: &Rational) -> Result<Rational> {
    let c = &prof.c;
    let p = i64::from(setup.p);
    let rhs = profile_rhs(setup, c, &prof.a1, &prof.a2);
    let q = -(p + 1);
    let i0 = integrate_poly_power(&rhs, c, q, &int(-1), z)?;
    let i1 = integrate_poly_power(&(&UniPoly::var() * &rhs), c, q, &int(-1), z)?;
    let start = int(2) * (int(1) - &setup.x) * (z + int(1)) / pow_i(&(int(1) - c), p - 1)?;
    let lin = c * z + int(1);
    Ok(pow_i(&lin, p - 1)? * (start + z * i0 - i1))
}

/// `(divisor) * Scal_{f,p}` for `f = cz + 1`, a momentum profile `F`, and the
/// `F`-independent part `w` of `(divisor) * Scal`.
///
/// Uses `Δf = -c F' / divisor` and `|df|^2 = c^2 F / divisor`.
pub fn weighted_scal_numerator(w: &UniPoly, f: &UniPoly, c: &Rational, p: u32) -> UniPoly {
    let lin = UniPoly::linear(c.clone(), int(1));
    let p = i64::from(p);
    let curv = w - &f.derivative().derivative();
    &(&(&(&lin * &lin) * &curv) + &(&lin * &f.derivative()).scale(&(int(2 * (p - 1)) * c)))
        - &f.scale(&(int(p * (p - 1)) * c * c))
}

/// Rebuilds `Scal_{f,p}` from the product-metric formulas and returns it as
/// the affine polynomial `A1 z + A2`.
pub fn reconstruct_weighted_scal(profile: &ExtremalProfile, setup: &ProductSetup) -> Result<UniPoly> {
    let divisor = UniPoly::linear(setup.x.clone(), int(1));
    // (1+xz) Scal(g) = 2a(1+xz) + 2sx - F''
    let w = base_term(setup);
    let numerator = weighted_scal_numerator(&w, &profile.f, &profile.c, setup.p);
    let scal = numerator.exact_divide(&divisor)?;
    if scal.degree().is_some_and(|d| d > 1) {
        return Err(Error::InternalInconsistency(format!(
            "weighted scalar curvature is not affine: {scal}"
        )));
    }
    Ok(scal)
}

/// `Scal_{f,p} / f` is constant exactly when `A1 = c A2`.
pub fn csc_s_check(profile: &ExtremalProfile) -> bool {
    (&profile.a1 - &profile.c * &profile.a2).is_zero()
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::exactmath::{is_positive_on_open, rational::to_f64};
    use crate::joinsetup::make_setup;

    fn poly_from(num: &[i64], den: i64) -> UniPoly {
        UniPoly::from_ints(num).scale(&rat(1, den))
    }

    fn one_minus_z2() -> UniPoly {
        UniPoly::from_ints(&[1, 0, -1])
    }

    pub(crate) fn nocsc() -> ProductSetup {
        make_setup(1, rat(-43137, 1337), 101, 1, rat(1, 2)).unwrap()
    }

    pub(crate) fn endonpos() -> ProductSetup {
        make_setup(1, rat(-2675, 497), 2, 1, rat(1, 2)).unwrap()
    }

    pub(crate) fn resurrection() -> ProductSetup {
        make_setup(2, rat(125919069, 1574986) - rat(43137, 1337), 101, 1, rat(1, 2)).unwrap()
    }

    /// Composite Simpson rule on a smooth integrand; independent of the exact
    /// substitution route.
    fn simpson(f: impl Fn(f64) -> f64) -> f64 {
        let n = 20_000;
        let h = 2.0 / n as f64;
        let mut acc = f(-1.0) + f(1.0);
        for i in 1..n {
            let t = -1.0 + i as f64 * h;
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(t);
        }
        acc * h / 3.0
    }

    #[test]
    fn alpha_beta_simple_values() {
        let s = nocsc();
        assert_eq!(alpha(&s, &rat(1, 3), 0, 0).unwrap(), int(2));
        assert_eq!(alpha(&s, &int(0), 1, -6).unwrap(), rat(1, 3));
        let b = beta(&s, &int(0), 0, 0).unwrap();
        assert_eq!(b, int(2) * &s.a + int(2) * s.sx() + int(2));
        let b = beta(&s, &int(0), 1, 0).unwrap();
        assert_eq!(b, int(2) * &s.a * &s.x / int(3) + int(2) * &s.x);
    }

    #[test]
    fn alpha_beta_match_quadrature() {
        let s = nocsc();
        let al = to_f64(&alpha(&s, &rat(2, 5), 2, -6).unwrap());
        let num = simpson(|t| t * t * (0.4 * t + 1.0).powi(-6) * (1.0 + 0.5 * t));
        assert!((al - num).abs() < 1e-9 * num.abs(), "{al} vs {num}");

        let s = endonpos();
        let (a, sx) = (to_f64(&s.a), to_f64(&s.sx()));
        let be = to_f64(&beta(&s, &rat(1, 8), 0, -4).unwrap());
        let c = 0.125_f64;
        let num = simpson(|t| (a * (1.0 + 0.5 * t) + sx) * (c * t + 1.0).powi(-4))
            + (1.0 - c).powi(-4) * 0.5
            + (1.0 + c).powi(-4) * 1.5;
        assert!((be - num).abs() < 1e-9 * num.abs(), "{be} vs {num}");
    }

    #[test]
    fn golden_profile_nocsc() {
        let prof = compute_profile(&nocsc(), &rat(2, 5)).unwrap();
        let want = &(&one_minus_z2() * &UniPoly::from_ints(&[5, 2])) * &poly_from(&[-292, 191, 1820], 8022);
        assert_eq!(prof.f, want);
        assert!(csc_s_check(&prof));
        assert!(!is_positive_on_open(&prof.cofactor(), &int(-1), &int(1)).unwrap());
        assert!(!csc_s_check(&compute_profile(&nocsc(), &rat(1, 3)).unwrap()));
    }

    #[test]
    fn golden_profile_endonpos() {
        let prof = compute_profile(&endonpos(), &rat(1, 8)).unwrap();
        let want = &(&one_minus_z2() * &UniPoly::from_ints(&[8, 1])) * &poly_from(&[326, 142, 29], 2982);
        assert_eq!(prof.f, want);
        assert!(csc_s_check(&prof));
        assert!(is_positive_on_open(&prof.cofactor(), &int(-1), &int(1)).unwrap());
    }

    #[test]
    fn golden_profile_resurrection() {
        let s = resurrection();
        assert_eq!(s.p, 6);
        let prof = compute_profile(&s, &rat(3, 5)).unwrap();
        let want = &(&one_minus_z2() * &UniPoly::from_ints(&[5, 3]))
            * &poly_from(&[413335, 59909, -297891, -76401], 527744);
        assert_eq!(prof.f, want);
        assert!(csc_s_check(&prof));
        assert!(is_positive_on_open(&prof.cofactor(), &int(-1), &int(1)).unwrap());
    }

    #[test]
    fn moat_family_profile_at_c_equal_x() {
        for x in [rat(1, 3), rat(8, 10), rat(9, 10)] {
            let x2 = &x * &x;
            let a = int(3) * (&x2 * &x2 + int(7)) / ((int(1) - &x2) * (int(3) - &x2));
            let s = make_setup(2, a, 4, 2, x.clone()).unwrap();
            let prof = compute_profile(&s, &x).unwrap();
            let lin = UniPoly::linear(x.clone(), int(1));
            let quad = UniPoly::new(vec![
                int(3) + &x2,
                -(&x * (int(3) - &x2)),
                int(-2) * &x2,
            ]);
            let want = (&(&(&one_minus_z2() * &lin) * &lin) * &quad)
                .scale(&(int(1) / ((int(1) - &x2) * (int(3) - &x2))));
            assert_eq!(prof.f, want);
            assert!(csc_s_check(&prof));
        }
    }

    #[test]
    fn c_zero_is_classical_extremal() {
        // at c = 0 the equation is F'' = W - (A1 z + A2)(1+xz); solve it by
        // integrating twice and imposing the four endpoint conditions
        let s = endonpos();
        let prof = compute_profile(&s, &int(0)).unwrap();
        let w = &base_term(&s) - &(&UniPoly::linear(prof.a1.clone(), prof.a2.clone())
            * &UniPoly::linear(s.x.clone(), int(1)));
        let g = w.antiderivative().antiderivative();
        // F = g + u z + v with F(-1) = F(1) = 0
        let u = -(g.eval(&int(1)) - g.eval(&int(-1))) / int(2);
        let v = -(g.eval(&int(1)) + g.eval(&int(-1))) / int(2);
        let f = &g + &UniPoly::linear(u, v);
        assert_eq!(f, prof.f);
        // the remaining two conditions pin down A1, A2: solve them directly
        let basis = |a1: i64, a2: i64| {
            let w = &base_term(&s).scale(&int(i64::from(a1 == 0 && a2 == 0)))
                - &(&UniPoly::linear(int(a1), int(a2)) * &UniPoly::linear(s.x.clone(), int(1)));
            let g = w.antiderivative().antiderivative();
            let u = -(g.eval(&int(1)) - g.eval(&int(-1))) / int(2);
            let f = &g + &UniPoly::linear(u, int(0));
            let df = f.derivative();
            (df.eval(&int(-1)), df.eval(&int(1)))
        };
        let (c0m, c0p) = basis(0, 0);
        let (c1m, c1p) = basis(1, 0);
        let (c2m, c2p) = basis(0, 1);
        let x = &s.x;
        let rows = vec![vec![c1m, c2m], vec![c1p, c2p]];
        let rhs = vec![int(2) * (int(1) - x) - c0m, int(-2) * (int(1) + x) - c0p];
        let sol = solve_exact(&rows, &rhs).unwrap();
        assert_eq!((sol[0].clone(), sol[1].clone()), (prof.a1.clone(), prof.a2.clone()));
    }

    #[test]
    fn reconstructs_affine_scalar() {
        let s = nocsc();
        let prof = compute_profile(&s, &rat(2, 5)).unwrap();
        let scal = reconstruct_weighted_scal(&prof, &s).unwrap();
        assert_eq!(scal, prof.killing());
        assert_eq!(&prof.a1 / &prof.a2, rat(2, 5));
        let prof0 = compute_profile(&s, &int(0)).unwrap();
        assert_eq!(reconstruct_weighted_scal(&prof0, &s).unwrap(), prof0.killing());
    }

    #[test]
    fn quasiregular_profile_is_affine() {
        // x = 1/2, a = (5 - x^2)/(1 - x^2) = 19/3, s = -2/x = -4 (g2 = 3, k = 1)
        let s = make_setup(1, rat(19, 3), 3, 1, rat(1, 2)).unwrap();
        assert_eq!(s.s, int(-4));
        let want = (&(&one_minus_z2() * &UniPoly::linear(rat(-1, 2), int(1)))
            * &UniPoly::linear(rat(1, 2), int(1)).pow(2))
            .scale(&rat(4, 3));
        let prof = ExtremalProfile {
            c: rat(1, 2),
            f: want.clone(),
            a1: int(0),
            a2: int(0),
            p: 5,
        };
        let scal = reconstruct_weighted_scal(&prof, &s).unwrap();
        assert!(scal.degree().is_none_or(|d| d <= 1));
        let solved = compute_profile(&s, &rat(1, 2)).unwrap();
        assert_eq!(solved.f, want);
        assert_eq!(scal, solved.killing());
    }

    #[test]
    fn rejects_out_of_range_ray() {
        assert!(matches!(compute_profile(&nocsc(), &int(1)), Err(Error::Domain(_))));
        assert!(matches!(compute_profile(&nocsc(), &rat(-3, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn a2_vanishing_is_possible() {
        // The csc test A1 = c A2 degenerates when A2 = 0. Search a small grid
        // for such a ray and check that the profile machinery still holds there.
        let s = nocsc();
        let found = (-9..=9).map(|i| rat(i, 10)).filter_map(|c| {
            let (_, a2) = solve_a(&s, &c).ok()?;
            a2.is_zero().then_some(c)
        });
        for c in found {
            let prof = compute_profile(&s, &c).unwrap();
            assert_eq!(csc_s_check(&prof), prof.a1.is_zero());
        }
    }

    fn setup_strategy() -> impl Strategy<Value = (ProductSetup, Rational)> {
        (
            1u32..=3,
            (-60i64..60, 1i64..9),
            0u32..6,
            1u32..5,
            1i64..10,
            -9i64..=9,
        )
            .prop_map(|(d, (an, ad), g2, k, xn, cn)| {
                let s = make_setup(d, rat(an, ad), g2, k, rat(xn, 10)).unwrap();
                (s, rat(cn, 10))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn profile_identities_hold((s, c) in setup_strategy()) {
            let prof = compute_profile(&s, &c).unwrap();
            let f = &prof.f;
            prop_assert!(f.eval(&int(1)).is_zero() && f.eval(&int(-1)).is_zero());
            let df = f.derivative();
            prop_assert_eq!(df.eval(&int(-1)), int(2) * (int(1) - &s.x));
            prop_assert_eq!(df.eval(&int(1)), int(-2) * (int(1) + &s.x));
            let residual = &profile_operator(f, &c, s.p) - &profile_rhs(&s, &c, &prof.a1, &prof.a2);
            prop_assert!(residual.is_zero());
            let cof = prof.cofactor();
            prop_assert!(!cof.eval(&int(1)).is_zero() && !cof.eval(&int(-1)).is_zero());
            prop_assert_eq!(reconstruct_weighted_scal(&prof, &s).unwrap(), prof.killing());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn positive_for_sphere_base((k, an, ad, xn, cn) in (1u32..6, 1i64..80, 1i64..8, 1i64..20, -19i64..=19)) {
            // d = 1, g2 = 0 so s = 2/k > 0, and a > 0
            let s = make_setup(1, rat(an, ad), 0, k, rat(xn, 20)).unwrap();
            let prof = compute_profile(&s, &rat(cn, 20)).unwrap();
            prop_assert!(is_positive_on_open(&prof.cofactor(), &int(-1), &int(1)).unwrap());
        }
    }
}
