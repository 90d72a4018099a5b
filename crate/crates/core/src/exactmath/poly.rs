use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::rational::{int, rational_string, Rational};
use super::ExactError;

/// Dense univariate polynomial over the rationals, coefficients indexed by
/// degree. The zero polynomial has no coefficients; otherwise the last stored
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `slope * t + intercept`.
    pub fn linear(slope: Rational, intercept: Rational) -> Self {
        Self::new(vec![intercept, slope])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / int(k as i64 + 1)),
        );
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Scales by a positive constant so the leading coefficient is `±1`.
    /// Signs of values are preserved.
    pub fn sign_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().abs().recip())
    }

    pub fn div_rem(&self, den: &UniPoly) -> Result<(UniPoly, UniPoly), ExactError> {
        let dd = den.degree().ok_or(ExactError::ZeroPolynomial)?;
        let lead = den.leading();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in den.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn exact_divide(&self, den: &UniPoly) -> Result<UniPoly, ExactError> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ExactError::InexactDivision {
                remainder: r.to_string(),
            })
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, each simple.
    pub fn squarefree_part(&self) -> Result<UniPoly, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        self.exact_divide(&g)
    }

    /// Rescales by a nonzero constant to coprime integer coefficients with a
    /// positive leading coefficient. Used when comparing polynomials up to a
    /// constant factor.
    pub fn primitive_integer(&self) -> UniPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return Self::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<_> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_negative() { -1 } else { 1 };
        Self::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c * sign / &g))
                .collect(),
        )
    }

    /// True when `self = k * other` for some nonzero rational `k`.
    pub fn proportional_to(&self, other: &UniPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.primitive_integer() == other.primitive_integer()
    }

    /// Render with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mag_s = rational_string(&mag);
            let body = match k {
                0 => mag_s,
                _ => {
                    let pw = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if mag.is_one() {
                        pw
                    } else if mag.denom().is_one() {
                        format!("{mag_s}*{pw}")
                    } else {
                        format!("({mag_s})*{pw}")
                    }
                }
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("z"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]", self.display_in("t"))
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rational_string))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly { (&self).$m(rhs) }
        }
        impl<'a> $tr<UniPoly> for &'a UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[-1, 0, 1]).eval(&int(1)), int(0));
        assert_eq!(p(&[-292, 191, 1820]).eval(&int(0)), int(-292));
        assert_eq!(p(&[-9, 10]).eval(&rat(9, 10)), int(0));
    }

    #[test]
    fn exact_division() {
        let q = p(&[1, 0, -1]).exact_divide(&p(&[1, -1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).exact_divide(&p(&[-1, 1])),
            Err(ExactError::InexactDivision { .. })
        ));
        assert!(matches!(
            p(&[1]).exact_divide(&UniPoly::zero()),
            Err(ExactError::ZeroPolynomial)
        ));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert_eq!(f.squarefree_part().unwrap(), &p(&[-1, 1]) * &p(&[2, 1]));
    }

    #[test]
    fn compose_and_calculus() {
        let f = p(&[0, 0, 1]);
        assert_eq!(f.compose(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(p(&[3, 2, 1]).derivative(), p(&[2, 2]));
        assert_eq!(p(&[2, 2]).antiderivative(), p(&[0, 2, 1]));
    }

    #[test]
    fn proportionality() {
        let a = p(&[2, 4, 6]);
        assert!(a.proportional_to(&p(&[-1, -2, -3]).scale(&rat(1, 7))));
        assert!(!a.proportional_to(&p(&[1, 2, 4])));
        assert_eq!(a.primitive_integer(), p(&[1, 2, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-292, 191, 1820]).to_string(), "1820*z^2 + 191*z - 292");
        assert_eq!(UniPoly::new(vec![rat(1, 2), int(-1)]).display_in("c"), "-c + 1/2");
    }
}
