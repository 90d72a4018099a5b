//! Closed-form profiles on `Σ × CP^1` with weight `p = 4`, where the surface
//! factor has constant scalar curvature `k < 0`.

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exactmath::{int, Rational, UniPoly};
use crate::profile::{check_ray, weighted_scal_numerator};

use super::{twin_conditions, verified_partners, TwinReport};

pub const CP1_WEIGHT: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cp1Profile {
    pub k: Rational,
    pub c: Rational,
    pub h: UniPoly,
    pub a: Rational,
    pub b: Rational,
}

/// `k < 0` and `12 - (2 - k) c^2 > 0`, the range where `H > 0` on `(-1, 1)`.
pub fn cp1_admissible(k: &Rational, c: &Rational) -> bool {
    *k < Rational::zero() && int(12) - (int(2) - k) * c * c > Rational::zero()
}

pub fn cp1_profile(k: &Rational, c: &Rational) -> Result<Cp1Profile> {
    check_ray(c)?;
    if !cp1_admissible(k, c) {
        return Err(domain(format!("H is not positive for k = {k}, c = {c}")));
    }
    let c2 = c * c;
    let c4 = &c2 * &c2;
    let den = &c2 - int(3);
    let a = int(6) * c * (&c2 * k - k + int(4)) / &den;
    let b = int(3) * (&c4 * k - int(2) * &c4 + int(12) * &c2 - k - int(2)) / &den;
    let one_minus = UniPoly::from_ints(&[1, 0, -1]);
    let three = int(3) - &c2;
    let inner = &UniPoly::constant(int(4) * &three) + &one_minus.scale(&((k + int(2)) * &c2));
    let h = (&one_minus * &inner).scale(&(Rational::one() / (int(4) * &three)));

    let dh = h.derivative();
    let endpoints = h.eval(&int(-1)).is_zero()
        && h.eval(&int(1)).is_zero()
        && dh.eval(&int(-1)) == int(2)
        && dh.eval(&int(1)) == int(-2);
    let scal = weighted_scal_numerator(&UniPoly::constant(k.clone()), &h, c, CP1_WEIGHT);
    if !endpoints || scal != UniPoly::linear(a.clone(), b.clone()) {
        return Err(Error::InternalInconsistency(format!(
            "closed-form CP^1 profile fails its identities at k = {k}, c = {c}"
        )));
    }
    Ok(Cp1Profile {
        k: k.clone(),
        c: c.clone(),
        h,
        a,
        b,
    })
}

/// Rays sharing the profile of `c`: `-c` in general, every ray when `k = -2`.
pub fn cp1_twins(k: &Rational, c: &Rational) -> Result<TwinReport> {
    let base = cp1_profile(k, c)?;
    let w = UniPoly::constant(k.clone());
    let conds = twin_conditions(&w, &base.h, &UniPoly::one(), CP1_WEIGHT)?;
    let partners = verified_partners(
        &conds,
        c,
        &base.h,
        |t| cp1_admissible(k, t),
        |t| Ok(cp1_profile(k, t)?.h),
    )?;
    Ok(TwinReport {
        base_c: c.clone(),
        partners,
        shared_f: base.h,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::exactmath::{rat, solve_exact};
    use crate::twins::Partners;

    /// Degree-4 ansatz for `H` with unknown `A`, `B`, solved linearly.
    fn oracle(k: &Rational, c: &Rational) -> (UniPoly, Rational, Rational) {
        // unknowns h0..h4, A, B
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let lin = UniPoly::linear(c.clone(), int(1));
        let images: Vec<UniPoly> = (0..5)
            .map(|i| {
                let m = UniPoly::monomial(int(1), i);
                weighted_scal_numerator(&UniPoly::zero(), &m, c, CP1_WEIGHT)
            })
            .collect();
        let forcing = (&lin * &lin).scale(&-k.clone());
        for deg in 0..=4 {
            let mut row: Vec<Rational> = images.iter().map(|p| p.coeff(deg)).collect();
            row.push(if deg == 1 { int(-1) } else { int(0) });
            row.push(if deg == 0 { int(-1) } else { int(0) });
            rows.push(row);
            rhs.push(forcing.coeff(deg));
        }
        for (t, val, deriv) in [(-1i64, 0i64, false), (1, 0, false), (-1, 2, true), (1, -2, true)] {
            let t = int(t);
            let mut row: Vec<Rational> = (0..5usize)
                .map(|i| {
                    let m = UniPoly::monomial(int(1), i);
                    if deriv { m.derivative().eval(&t) } else { m.eval(&t) }
                })
                .collect();
            row.extend([int(0), int(0)]);
            rows.push(row);
            rhs.push(int(val));
        }
        let sol = solve_exact(&rows, &rhs).unwrap();
        (UniPoly::new(sol[..5].to_vec()), sol[5].clone(), sol[6].clone())
    }

    #[test]
    fn round_case() {
        let p = cp1_profile(&int(-2), &int(0)).unwrap();
        assert_eq!(p.h, UniPoly::from_ints(&[1, 0, -1]));
        assert!(p.a.is_zero());
        // constant f: Scal = k + 2
        assert_eq!(p.b, int(0));
        for c in [rat(-9, 10), rat(1, 3), rat(7, 8)] {
            assert_eq!(cp1_profile(&int(-2), &c).unwrap().h, UniPoly::from_ints(&[1, 0, -1]));
        }
    }

    #[test]
    fn matches_linear_solve() {
        for (k, c) in [(int(-4), rat(1, 2)), (rat(-7, 3), rat(-2, 5)), (int(-11), rat(9, 10))] {
            let p = cp1_profile(&k, &c).unwrap();
            assert_eq!(oracle(&k, &c), (p.h, p.a, p.b));
        }
    }

    #[test]
    fn admissibility() {
        assert!(cp1_profile(&int(1), &rat(1, 2)).is_err());
        assert!(cp1_profile(&int(-30), &rat(9, 10)).is_err());
        assert!(cp1_profile(&int(-30), &rat(1, 2)).is_ok());
        assert!(cp1_profile(&int(-4), &int(1)).is_err());
    }

    #[test]
    fn cscs_only_for_round_regular() {
        for (k, c) in [(int(-2), int(0)), (int(-4), int(0)), (int(-2), rat(1, 3)), (int(-5), rat(1, 4))] {
            let p = cp1_profile(&k, &c).unwrap();
            let csc = (&p.a - &c * &p.b).is_zero();
            let round = p.h == UniPoly::from_ints(&[1, 0, -1]);
            assert_eq!(csc, c.is_zero() && round, "k = {k}, c = {c}");
        }
    }

    #[test]
    fn twin_examples() {
        let r = cp1_twins(&int(-4), &rat(1, 3)).unwrap();
        assert_eq!(r.partners, Partners::Finite(vec![rat(-1, 3)]));
        let r = cp1_twins(&int(-2), &rat(1, 3)).unwrap();
        assert!(r.is_continuum());
        assert_eq!(r.partner_list().len(), super::super::CONTINUUM_SAMPLES);
        let r = cp1_twins(&int(-4), &int(0)).unwrap();
        assert_eq!(r.partners, Partners::Finite(vec![]));
    }

    fn admissible_pair() -> impl Strategy<Value = (Rational, Rational)> {
        (1i64..60, 1i64..4, -19i64..=19)
            .prop_map(|(kn, kd, cn)| (rat(-kn, kd), rat(cn, 20)))
            .prop_filter("positivity", |(k, c)| cp1_admissible(k, c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn identities_and_reflection((k, c) in admissible_pair()) {
            let p = cp1_profile(&k, &c).unwrap();
            let q = cp1_profile(&k, &-c.clone()).unwrap();
            prop_assert_eq!(&p.h, &q.h);
            prop_assert_eq!(oracle(&k, &c), (p.h.clone(), p.a.clone(), p.b.clone()));
        }

        #[test]
        fn distinct_rays_differ((k, c) in admissible_pair(), dn in -19i64..=19) {
            let d = rat(dn, 20);
            prop_assume!(k != int(-2) && d != c && d != -c.clone() && cp1_admissible(&k, &d));
            prop_assert_ne!(cp1_profile(&k, &c).unwrap().h, cp1_profile(&k, &d).unwrap().h);
        }

        #[test]
        fn twins_are_reflections((k, c) in admissible_pair()) {
            let r = cp1_twins(&k, &c).unwrap();
            if k == int(-2) {
                prop_assert!(r.is_continuum());
            } else if c.is_zero() {
                prop_assert_eq!(r.partners, Partners::Finite(vec![]));
            } else {
                prop_assert_eq!(r.partners, Partners::Finite(vec![-c]));
            }
        }
    }
}
