//! Exact definite integrals of `poly(t) * (c t + 1)^q`.

use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{int, pow_i, Rational};
use super::ExactError;

/// `∫_lo^hi poly(t) (c t + 1)^q dt`, exactly.
///
/// For `q >= 0` or `c = 0` the integrand is a polynomial. Otherwise the
/// substitution `u = c t + 1` turns it into a Laurent polynomial in `u`; a
/// nonzero `u^-1` term would produce a logarithm and is reported as
/// [`ExactError::LogarithmicTerm`].
pub fn integrate_poly_power(
    poly: &UniPoly,
    c: &Rational,
    q: i64,
    lo: &Rational,
    hi: &Rational,
) -> Result<Rational, ExactError> {
    let base = UniPoly::linear(c.clone(), Rational::one());
    if q < 0 && !c.is_zero() {
        // c t + 1 must stay positive on the whole range
        if !base.eval(lo).is_positive() || !base.eval(hi).is_positive() {
            return Err(ExactError::Domain(format!(
                "c t + 1 vanishes on [{lo}, {hi}] for c = {c}"
            )));
        }
        return integrate_substituted(poly, c, q, lo, hi);
    }
    let integrand = if q >= 0 {
        poly * &base.pow(q as u32)
    } else {
        poly.clone()
    };
    let anti = integrand.antiderivative();
    Ok(anti.eval(hi) - anti.eval(lo))
}

fn integrate_substituted(
    poly: &UniPoly,
    c: &Rational,
    q: i64,
    lo: &Rational,
    hi: &Rational,
) -> Result<Rational, ExactError> {
    // t = (u - 1)/c, dt = du/c
    let t_of_u = UniPoly::linear(c.recip(), -c.recip());
    let in_u = poly.compose(&t_of_u);
    let (u_lo, u_hi) = (c * lo + int(1), c * hi + int(1));
    let mut total = Rational::zero();
    for (j, coeff) in in_u.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let e = j as i64 + q + 1;
        if e == 0 {
            return Err(ExactError::LogarithmicTerm { power: q, index: j });
        }
        let prim = pow_i(&u_hi, e)? - pow_i(&u_lo, e)?;
        total += coeff * prim / int(e);
    }
    Ok(total / c)
}

/// `∫_{-1}^{1} t^r (c t + 1)^q (1 + x t) dt` for `|c| < 1`.
pub fn integrate_weighted_monomial(
    r: usize,
    q: i64,
    c: &Rational,
    x: &Rational,
) -> Result<Rational, ExactError> {
    if c.abs() >= Rational::one() {
        return Err(ExactError::Domain(format!("|c| must be < 1, got {c}")));
    }
    let poly = &UniPoly::monomial(Rational::one(), r) * &UniPoly::linear(x.clone(), Rational::one());
    integrate_poly_power(&poly, c, q, &int(-1), &int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn trivial_moments() {
        for (c, x) in [(rat(1, 3), rat(1, 2)), (rat(-7, 9), rat(3, 4))] {
            assert_eq!(integrate_weighted_monomial(0, 0, &c, &x).unwrap(), int(2));
            assert_eq!(
                integrate_weighted_monomial(1, 0, &c, &x).unwrap(),
                int(2) * &x / int(3)
            );
        }
    }

    #[test]
    fn c_zero_falls_back_to_polynomial() {
        let v = integrate_weighted_monomial(1, -6, &int(0), &rat(1, 2)).unwrap();
        assert_eq!(v, rat(1, 3));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            integrate_weighted_monomial(0, -6, &int(1), &rat(1, 2)),
            Err(ExactError::Domain(_))
        ));
        assert!(matches!(
            integrate_weighted_monomial(0, -1, &rat(1, 3), &rat(1, 2)),
            Err(ExactError::LogarithmicTerm { .. })
        ));
    }

    #[test]
    fn substitution_matches_closed_form() {
        // ∫_{-1}^{1} (ct+1)^-2 dt = 2/(1-c^2)
        let c = rat(2, 5);
        let v = integrate_poly_power(&UniPoly::one(), &c, -2, &int(-1), &int(1)).unwrap();
        assert_eq!(v, int(2) / (int(1) - &c * &c));
    }
}
