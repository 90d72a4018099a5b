//! Geometric parameter bundles and join arithmetic.
//!
//! A [`ProductSetup`] describes the polarized product of a cscK manifold of
//! complex dimension `d` (scalar curvature `2a`) with an admissible ruled
//! surface over a genus `g2` curve. The base scalar curvature is always
//! stored as `a` with `Scal = 2a`, never as `2da`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{domain, Error, Result};
use crate::exactmath::{int, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSetup {
    pub d: u32,
    pub a: Rational,
    pub genus_g2: u32,
    pub degree_k: u32,
    pub s: Rational,
    pub x: Rational,
    pub p: u32,
}

/// Builds a setup with `s = 2(1 - g2)/k` and weight `p = d + 4`.
pub fn make_setup(d: u32, a: Rational, genus_g2: u32, degree_k: u32, x: Rational) -> Result<ProductSetup> {
    if d < 1 {
        return Err(domain(format!("d must be at least 1, got {d}")));
    }
    if degree_k < 1 {
        return Err(domain(format!("k must be at least 1, got {degree_k}")));
    }
    if !(x.is_positive() && x < Rational::one()) {
        return Err(domain(format!("x must lie in (0, 1), got {x}")));
    }
    let s = int(2) * (int(1) - int(i64::from(genus_g2))) / int(i64::from(degree_k));
    Ok(ProductSetup {
        d,
        a,
        genus_g2,
        degree_k,
        s,
        x,
        p: d + 4,
    })
}

impl ProductSetup {
    /// `s * x`, which appears in every boundary-value formula.
    pub fn sx(&self) -> Rational {
        &self.s * &self.x
    }
}

/// The join `M1 *_{l1,l2} M2` of two quasi-regular Sasaki manifolds of orders
/// `order1`, `order2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JoinSpec {
    pub l1: u64,
    pub l2: u64,
    pub order1: u64,
    pub order2: u64,
}

impl JoinSpec {
    pub fn new(l1: u64, l2: u64, order1: u64, order2: u64) -> Result<Self> {
        if l1 == 0 || l2 == 0 || order1 == 0 || order2 == 0 {
            return Err(domain("join data must be positive integers"));
        }
        if l1.gcd(&l2) != 1 {
            return Err(domain(format!("l1 = {l1} and l2 = {l2} are not coprime")));
        }
        Ok(Self { l1, l2, order1, order2 })
    }

    /// Regular join (both orders 1).
    pub fn regular(l1: u64, l2: u64) -> Result<Self> {
        Self::new(l1, l2, 1, 1)
    }
}

/// Smoothness of the join: `gcd(order1 * l2, order2 * l1) = 1`.
pub fn join_is_smooth(spec: &JoinSpec) -> bool {
    (spec.order1 * spec.l2).gcd(&(spec.order2 * spec.l1)) == 1
}

/// Dimension of the Sasaki cone of a join.
pub fn cone_dim(dim1: u32, dim2: u32) -> u32 {
    assert!(dim1 >= 1 && dim2 >= 1, "Sasaki cones have dimension at least 1");
    dim1 + dim2 - 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinVectors {
    /// Coefficients of `(xi_1, xi_2)` in the Reeb field of the join.
    pub reeb: (Rational, Rational),
    /// Coefficients of `(xi_1, xi_2)` in the generator of the quotient circle.
    pub lvec: (Rational, Rational),
    /// Coefficients of `(eta_1, eta_2)` in the contact form of the join.
    pub contact: (u64, u64),
}

pub fn join_vectors(l1: u64, l2: u64) -> Result<JoinVectors> {
    JoinSpec::regular(l1, l2)?;
    let h1 = rat(1, 2 * l1 as i64);
    let h2 = rat(1, 2 * l2 as i64);
    Ok(JoinVectors {
        reeb: (h1.clone(), h2.clone()),
        lvec: (h1, -h2),
        contact: (l1, l2),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationInput {
    pub class_coeffs: Vec<Rational>,
    /// Kähler-Einstein index (negative) together with the base dimension.
    pub ke_index: Option<(i64, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub scale: Rational,
    pub primitive: Vec<BigInt>,
    pub l: Option<(u64, u64)>,
}

/// Normalizes a rational class to a primitive integer vector. The sign of
/// `scale` follows the input so `primitive` is nonnegative.
pub fn primitive_polarization(input: &PolarizationInput) -> Result<Polarization> {
    let coeffs = &input.class_coeffs;
    if coeffs.iter().all(Zero::is_zero) {
        return Err(domain("class coefficients are all zero"));
    }
    if coeffs.iter().any(Signed::is_positive) && coeffs.iter().any(Signed::is_negative) {
        return Err(domain("class coefficients have mixed signs"));
    }
    let negative = coeffs.iter().any(Signed::is_negative);
    let den_lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer().abs())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let primitive: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
    let mut scale = Rational::new(g, den_lcm);
    if negative {
        scale = -scale;
    }
    let l = match input.ke_index {
        None => None,
        Some((index, d)) => Some(ke_join_weights(index, d)?),
    };
    Ok(Polarization { scale, primitive, l })
}

/// `(l1, l2) = (-I, d + 1) / gcd(d + 1, -I)` for a negative KE index `I`.
pub fn ke_join_weights(index: i64, d: u32) -> Result<(u64, u64)> {
    if index >= 0 {
        return Err(domain(format!("KE index must be negative, got {index}")));
    }
    if d < 1 {
        return Err(domain("base dimension must be at least 1"));
    }
    let minus_i = index.unsigned_abs();
    let dp1 = u64::from(d) + 1;
    let g = dp1.gcd(&minus_i);
    Ok((minus_i / g, dp1 / g))
}

/// A rational given in a config file either as `"p/q"` or as a bare integer.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalField {
    Text(String),
    Integer(i64),
}

impl RationalField {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalField::Text(s) => Ok(parse_rational(s)?),
            RationalField::Integer(n) => Ok(int(*n)),
        }
    }
}

/// On-disk setup description.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupConfig {
    pub d: u32,
    pub a: RationalField,
    pub g2: u32,
    pub k: u32,
    pub x: RationalField,
    pub l1: Option<u64>,
    pub l2: Option<u64>,
}

impl SetupConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| domain(format!("bad setup config: {e}")))
    }

    pub fn setup(&self) -> Result<ProductSetup> {
        make_setup(self.d, self.a.value()?, self.g2, self.k, self.x.value()?)
    }

    pub fn join(&self) -> Result<Option<JoinSpec>> {
        match (self.l1, self.l2) {
            (None, None) => Ok(None),
            (Some(l1), Some(l2)) => JoinSpec::regular(l1, l2).map(Some),
            _ => Err(Error::Domain("l1 and l2 must be given together".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn setups_from_examples() {
        let s = make_setup(1, rat(-43137, 1337), 101, 1, rat(1, 2)).unwrap();
        assert_eq!((s.s.clone(), s.p), (int(-200), 5));
        let s = make_setup(2, rat(4631, 177), 4, 2, rat(8, 10)).unwrap();
        assert_eq!((s.s.clone(), s.p), (int(-3), 6));
        let s = make_setup(1, int(1), 1, 5, rat(1, 2)).unwrap();
        assert_eq!((s.s.clone(), s.p), (int(0), 5));
        let s = make_setup(1, int(1), 0, 3, rat(1, 2)).unwrap();
        assert_eq!(s.s, rat(2, 3));
    }

    #[test]
    fn setup_ranges() {
        assert!(make_setup(0, int(1), 0, 1, rat(1, 2)).is_err());
        assert!(make_setup(1, int(1), 0, 0, rat(1, 2)).is_err());
        assert!(make_setup(1, int(1), 0, 1, int(1)).is_err());
        assert!(make_setup(1, int(1), 0, 1, int(0)).is_err());
    }

    #[test]
    fn smoothness_table() {
        assert!(join_is_smooth(&JoinSpec::new(1, 2, 2, 1).unwrap()));
        assert!(!join_is_smooth(&JoinSpec::new(2, 1, 2, 2).unwrap()));
        assert!(!join_is_smooth(&JoinSpec::new(3, 2, 3, 2).unwrap()));
        for (l1, l2) in [(1, 1), (2, 3), (5, 1), (7, 4)] {
            assert!(join_is_smooth(&JoinSpec::regular(l1, l2).unwrap()));
        }
        assert!(JoinSpec::regular(2, 4).is_err());
    }

    #[test]
    fn cone_dimensions() {
        assert_eq!(cone_dim(1, 2), 2);
        assert_eq!(cone_dim(1, 1), 1);
        assert_eq!(cone_dim(2, 3), 4);
    }

    #[test]
    fn vectors() {
        let v = join_vectors(1, 1).unwrap();
        assert_eq!(v.reeb, (rat(1, 2), rat(1, 2)));
        assert_eq!(v.lvec, (rat(1, 2), rat(-1, 2)));
        assert_eq!(v.contact, (1, 1));
        let v = join_vectors(2, 3).unwrap();
        assert_eq!(v.reeb, (rat(1, 4), rat(1, 6)));
        assert_eq!(v.lvec, (rat(1, 4), rat(-1, 6)));
        assert_eq!(join_vectors(5, 1).unwrap().reeb, (rat(1, 10), rat(1, 2)));
    }

    #[test]
    fn polarizations() {
        let p = primitive_polarization(&PolarizationInput {
            class_coeffs: vec![int(6), int(4)],
            ke_index: None,
        })
        .unwrap();
        assert_eq!(p.scale, int(2));
        assert_eq!(p.primitive, vec![BigInt::from(3), BigInt::from(2)]);
        // genus 2 curve: -I = 2(g - 1) = 2, d + 1 = 2
        assert_eq!(ke_join_weights(-2, 1).unwrap(), (1, 1));
        assert_eq!(ke_join_weights(-6, 2).unwrap(), (2, 1));
        assert!(primitive_polarization(&PolarizationInput {
            class_coeffs: vec![int(1), int(-1)],
            ke_index: None,
        })
        .is_err());
        assert!(primitive_polarization(&PolarizationInput {
            class_coeffs: vec![int(0), int(0)],
            ke_index: None,
        })
        .is_err());
    }

    #[test]
    fn config_round_trip() {
        let cfg = SetupConfig::from_json(r#"{"d":1,"a":"-43137/1337","g2":101,"k":1,"x":"1/2"}"#).unwrap();
        let s = cfg.setup().unwrap();
        assert_eq!(s.a, rat(-43137, 1337));
        assert_eq!(s.s, int(-200));
        assert!(cfg.join().unwrap().is_none());
        let cfg = SetupConfig::from_json(r#"{"d":2,"a":3,"g2":4,"k":2,"x":"9/10","l1":2,"l2":1}"#).unwrap();
        assert_eq!(cfg.setup().unwrap().a, int(3));
        assert_eq!(cfg.join().unwrap().unwrap().l1, 2);
        assert!(SetupConfig::from_json(r#"{"d":1,"a":"0.5","g2":1,"k":1,"x":"1/2"}"#)
            .unwrap()
            .setup()
            .is_err());
        assert!(SetupConfig::from_json(r#"{"d":1,"a":"1","g2":1,"k":1,"x":"1/2","y":3}"#).is_err());
    }

    proptest! {
        #[test]
        fn smoothness_symmetric(l1 in 1u64..40, l2 in 1u64..40, o1 in 1u64..12, o2 in 1u64..12) {
            prop_assume!(l1.gcd(&l2) == 1);
            let a = join_is_smooth(&JoinSpec::new(l1, l2, o1, o2).unwrap());
            let b = join_is_smooth(&JoinSpec::new(l2, l1, o2, o1).unwrap());
            prop_assert_eq!(a, b);
        }

        #[test]
        fn primitive_reconstructs(v in prop::collection::vec((0i64..50, 1i64..20), 1..5), neg in any::<bool>()) {
            prop_assume!(v.iter().any(|(n, _)| *n != 0));
            let sign = if neg { -1 } else { 1 };
            let coeffs: Vec<Rational> = v.iter().map(|(n, d)| rat(sign * n, *d)).collect();
            let p = primitive_polarization(&PolarizationInput { class_coeffs: coeffs.clone(), ke_index: None }).unwrap();
            let g = p.primitive.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            prop_assert!(g.is_one());
            let back: Vec<Rational> = p.primitive.iter().map(|k| &p.scale * Rational::from_integer(k.clone())).collect();
            prop_assert_eq!(back, coeffs);
        }

        #[test]
        fn divisible_index_gives_l2_one(d in 1u32..6, m in 1i64..30) {
            let index = -(i64::from(d) + 1) * m;
            prop_assert_eq!(ke_join_weights(index, d).unwrap().1, 1);
        }

        #[test]
        fn ke_weights_match_primitive_class(d in 1u32..6, minus_i in 1i64..60) {
            let via_class = primitive_polarization(&PolarizationInput {
                class_coeffs: vec![int(minus_i), int(i64::from(d) + 1)],
                ke_index: Some((-minus_i, d)),
            }).unwrap();
            let (l1, l2) = via_class.l.unwrap();
            prop_assert_eq!(via_class.primitive, vec![BigInt::from(l1), BigInt::from(l2)]);
        }
    }
}
