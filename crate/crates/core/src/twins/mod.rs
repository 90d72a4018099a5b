//! Weighted-extremal twins: distinct rays `c ≠ c'` sharing one momentum
//! profile.
//!
//! A profile `F` solves the weighted equation for the ray `c'` exactly when
//! `(1+c'z)^2 U + 2(p-1)c'(1+c'z)F' - p(p-1)c'^2 F`, with `U = w - F''`, is
//! the divisor times an affine polynomial. Expanding in `c'` turns every
//! coefficient of that requirement into a quadratic in `c'`, so the partners
//! of `c` are the roots of the gcd of these quadratics other than `c`.

pub mod cp1;
pub mod toric;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{int, rat, Rational, UniPoly};
use crate::joinsetup::ProductSetup;
use crate::profile::{base_term, compute_profile};

pub use cp1::{cp1_admissible, cp1_profile, cp1_twins, Cp1Profile};
pub use toric::{
    general_scal1, inverse_hessian, simplex_vertices, toric_csc_solutions, toric_weighted_scal, twin_weights,
    ToricCscSolutions, ToricPotential,
};

/// Number of sampled rays backing a continuum verdict.
pub const CONTINUUM_SAMPLES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partners {
    Finite(Vec<Rational>),
    /// Every ray is a partner; only the listed samples were verified.
    Continuum { samples: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinReport {
    pub base_c: Rational,
    pub partners: Partners,
    pub shared_f: UniPoly,
}

impl TwinReport {
    pub fn is_continuum(&self) -> bool {
        matches!(self.partners, Partners::Continuum { .. })
    }

    /// The finite partners, or the verified samples of a continuum.
    pub fn partner_list(&self) -> &[Rational] {
        match &self.partners {
            Partners::Finite(v) => v,
            Partners::Continuum { samples } => samples,
        }
    }
}

/// The coefficients `V0, V1, V2` of `V(c') = V0 + c' V1 + c'^2 V2`.
pub fn scal_expansion(w: &UniPoly, f: &UniPoly, p: u32) -> [UniPoly; 3] {
    let p = i64::from(p);
    let df = f.derivative();
    let u = w - &df.derivative();
    let z = UniPoly::var();
    let v1 = (&z * &u).scale(&int(2)) + df.scale(&int(2 * (p - 1)));
    let v2 = &(&(&z * &z) * &u) + &(&z * &df).scale(&int(2 * (p - 1))) - f.scale(&int(p * (p - 1)));
    [u, v1, v2]
}

/// Quadratics in `c'` that all vanish exactly when `V(c')` is `divisor`
/// times a polynomial of degree at most one. Identically zero conditions are
/// dropped, so an empty result means every `c'` works.
pub fn twin_conditions(w: &UniPoly, f: &UniPoly, divisor: &UniPoly, p: u32) -> Result<Vec<UniPoly>> {
    let parts = scal_expansion(w, f, p);
    let mut quotients = Vec::with_capacity(3);
    let mut remainders = Vec::with_capacity(3);
    for v in &parts {
        let (q, r) = v.div_rem(divisor)?;
        quotients.push(q);
        remainders.push(r);
    }
    let top = quotients.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let rtop = remainders.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let mut conds = Vec::new();
    for m in 2..=top {
        conds.push(UniPoly::new(quotients.iter().map(|q| q.coeff(m)).collect()));
    }
    for m in 0..=rtop {
        conds.push(UniPoly::new(remainders.iter().map(|r| r.coeff(m)).collect()));
    }
    conds.retain(|c| !c.is_zero());
    Ok(conds)
}

/// Candidate partners of `base` from the twin conditions, or `None` when the
/// conditions are void.
pub fn candidate_partners(conditions: &[UniPoly], base: &Rational) -> Result<Option<Vec<Rational>>> {
    let Some(first) = conditions.first() else {
        return Ok(None);
    };
    let g = conditions[1..].iter().fold(first.clone(), |acc, c| acc.gcd(c));
    if !g.eval(base).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "twin conditions do not vanish at their own ray {base}"
        )));
    }
    let rest = g.exact_divide(&UniPoly::linear(int(1), -base.clone()))?;
    let mut out = Vec::new();
    if rest.degree() == Some(1) {
        let r = -rest.coeff(0) / rest.coeff(1);
        let inside = -Rational::one() < r && r < Rational::one();
        if inside && &r != base {
            out.push(r);
        }
    }
    Ok(Some(out))
}

/// Sample rays for continuum verification, skipping `base`.
pub fn continuum_samples(base: &Rational, admissible: impl Fn(&Rational) -> bool) -> Vec<Rational> {
    let den = 2 * CONTINUUM_SAMPLES as i64 + 2;
    (1..den)
        .map(|i| int(-1) + rat(2 * i, den))
        .filter(|c| c != base && admissible(c))
        .take(CONTINUUM_SAMPLES)
        .collect()
}

fn verified_partners(
    conditions: &[UniPoly],
    base: &Rational,
    shared: &UniPoly,
    admissible: impl Fn(&Rational) -> bool + Sync,
    profile_at: impl Fn(&Rational) -> Result<UniPoly> + Sync,
) -> Result<Partners> {
    match candidate_partners(conditions, base)? {
        Some(cands) => {
            let checked = cands
                .par_iter()
                .filter(|c| admissible(c))
                .map(|c| Ok((c.clone(), profile_at(c)? == *shared)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Partners::Finite(checked.into_iter().filter(|(_, ok)| *ok).map(|(c, _)| c).collect()))
        }
        None => {
            let samples = continuum_samples(base, &admissible);
            let agree = samples
                .par_iter()
                .map(|c| Ok(profile_at(c)? == *shared))
                .collect::<Result<Vec<bool>>>()?;
            if agree.iter().all(|&ok| ok) && samples.len() == CONTINUUM_SAMPLES {
                Ok(Partners::Continuum { samples })
            } else {
                Err(Error::InternalInconsistency(format!(
                    "twin conditions vanish identically at {base} but sampled profiles differ"
                )))
            }
        }
    }
}

/// All rays `c' ∈ (-1, 1)` whose profile equals the profile at `c`.
pub fn find_profile_twins(setup: &ProductSetup, c: &Rational) -> Result<TwinReport> {
    let base = compute_profile(setup, c)?;
    let divisor = UniPoly::linear(setup.x.clone(), int(1));
    let conds = twin_conditions(&base_term(setup), &base.f, &divisor, setup.p)?;
    let partners = verified_partners(&conds, c, &base.f, |_| true, |t| Ok(compute_profile(setup, t)?.f))?;
    Ok(TwinReport {
        base_c: c.clone(),
        partners,
        shared_f: base.f,
    })
}
