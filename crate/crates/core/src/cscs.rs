//! The cscS condition on a ray and the polynomial whose roots locate cscS
//! rays.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::rational::pow_i;
use crate::exactmath::{int, interpolate, isolate_roots, rat, Rational, RootInterval, UniPoly};
use crate::joinsetup::ProductSetup;
use crate::profile::{alpha, beta};

/// `α_{1,-p} β_{0,-(p-1)} - α_{0,-p} β_{1,-(p-1)}`; zero exactly on cscS
/// candidates.
pub fn csc_condition(setup: &ProductSetup, c: &Rational) -> Result<Rational> {
    let p = i64::from(setup.p);
    let a0 = alpha(setup, c, 0, -p)?;
    let a1 = alpha(setup, c, 1, -p)?;
    let b0 = beta(setup, c, 0, -(p - 1))?;
    let b1 = beta(setup, c, 1, -(p - 1))?;
    Ok(a1 * b0 - a0 * b1)
}

/// Closed-form numerator for weight 5: `csc_condition = 4 h(c) / (9 (1-c^2)^7)`.
pub fn h_poly_p5(setup: &ProductSetup) -> Result<UniPoly> {
    if setup.p != 5 {
        return Err(Error::WrongWeight { p: setup.p });
    }
    let (a, s, x) = (&setup.a, &setup.s, &setup.x);
    let sx = s * x;
    let x2 = x * x;
    Ok(UniPoly::new(vec![
        int(3) * x * (&sx - int(2)),
        int(21) - int(3) * a - int(3) * &sx + int(3) * &x2 + a * &x2,
        int(4) * x * (a - int(9) - &sx),
        int(4) * (a + &sx + int(6) * &x2 - a * &x2),
        x * (&sx - int(6) - int(4) * a),
        int(3) - a - &sx - int(3) * &x2 + int(3) * a * &x2,
    ]))
}

/// Power of `1 - c^2` that clears the denominators of the csc condition.
pub fn denominator_exponent(p: u32) -> u32 {
    2 * p - 3
}

/// The csc condition as a ratio `numerator / (1-c^2)^denominator_exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CscCondition {
    pub setup: ProductSetup,
    pub numerator: UniPoly,
    pub denominator_exponent: u32,
}

impl CscCondition {
    pub fn new(setup: &ProductSetup) -> Result<Self> {
        Ok(Self {
            setup: setup.clone(),
            numerator: condition_numerator(setup, None)?,
            denominator_exponent: denominator_exponent(setup.p),
        })
    }

    pub fn evaluate(&self, c: &Rational) -> Result<Rational> {
        csc_condition(&self.setup, c)
    }
}

fn cleared(setup: &ProductSetup, c: &Rational) -> Result<Rational> {
    let den = pow_i(&(int(1) - c * c), i64::from(denominator_exponent(setup.p)))?;
    Ok(csc_condition(setup, c)? * den)
}

/// Nodes `±i/(bound+3)`, alternating in sign, never 0 or ±1.
fn nodes(bound: usize, count: usize) -> Vec<Rational> {
    let den = bound as i64 + 3;
    (1..)
        .flat_map(|i| [rat(i, den), rat(-i, den)])
        .take(count)
        .collect()
}

/// `csc_condition(c) (1-c^2)^(2p-3)` as an exact polynomial, recovered by
/// interpolation at `degree_bound + 1` nodes and checked at 3 more. The bound
/// defaults to `2p` and is doubled on a failed check, up to `8p`.
pub fn condition_numerator(setup: &ProductSetup, degree_bound: Option<usize>) -> Result<UniPoly> {
    let p = setup.p as usize;
    let mut bound = degree_bound.unwrap_or(2 * p);
    let ceiling = (8 * p).max(bound);
    loop {
        let pts = nodes(bound, bound + 4);
        let vals: Vec<Rational> = pts
            .par_iter()
            .map(|c| cleared(setup, c))
            .collect::<Result<_>>()?;
        let poly = interpolate(&pts[..=bound], &vals[..=bound])?;
        if pts[bound + 1..]
            .iter()
            .zip(&vals[bound + 1..])
            .all(|(c, v)| poly.eval(c) == *v)
        {
            return Ok(poly);
        }
        if bound >= ceiling {
            return Err(Error::InterpolationMismatch { degree_bound: bound });
        }
        bound = (2 * bound).min(ceiling);
    }
}

/// Certified isolation of every root of the csc condition in `(-1, 1)`.
/// Rational roots come back with `exact` set.
pub fn csc_roots(setup: &ProductSetup, width: &Rational) -> Result<Vec<RootInterval>> {
    let n = condition_numerator(setup, None)?;
    if n.is_zero() {
        return Err(Error::Domain("csc condition vanishes identically".into()));
    }
    Ok(isolate_roots(&n, &int(-1), &int(1), width)?)
}
