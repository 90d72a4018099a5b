//! Toric computations on `N × CP^n` with `f` affine in the momentum
//! coordinates `x_1, …, x_n` of the Fubini–Study simplex.

use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::exactmath::linalg::rational_quadratic_roots;
use crate::exactmath::{int, rat, MultiPoly, Rational};

/// An affine `f(x) = Σ v_i x_i + λ`, positive on the closed simplex
/// `{x_i ≥ -1, Σ x_i ≤ 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricPotential {
    pub v: Vec<Rational>,
    pub lambda: Rational,
    pub n: usize,
}

impl ToricPotential {
    pub fn new(v: Vec<Rational>, lambda: Rational) -> Result<Self> {
        if v.is_empty() {
            return Err(domain("toric potential needs n ≥ 1"));
        }
        let n = v.len();
        if !positive_on_simplex(&v, &lambda) {
            return Err(domain("f is not positive on the closed simplex"));
        }
        Ok(Self { v, lambda, n })
    }

    /// `m = Σ v_i`.
    pub fn m(&self) -> Rational {
        self.v.iter().sum()
    }

    pub fn as_poly(&self) -> MultiPoly {
        MultiPoly::affine(&self.v, self.lambda.clone())
    }
}

/// Vertices of `{x_i ≥ -1, Σ x_i ≤ 1}`: all `-1`, and `x_j = n` with the
/// others `-1`.
pub fn simplex_vertices(n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![int(-1); n]];
    for j in 0..n {
        let mut v = vec![int(-1); n];
        v[j] = int(n as i64);
        out.push(v);
    }
    out
}

fn positive_on_simplex(v: &[Rational], lambda: &Rational) -> bool {
    simplex_vertices(v.len()).iter().all(|pt| {
        let val: Rational = v.iter().zip(pt).map(|(a, b)| a * b).sum::<Rational>() + lambda;
        val > Rational::zero()
    })
}

/// Affine forms `l_1 = 1 + x_1, …, l_n = 1 + x_n`.
fn facet_forms(n: usize) -> Vec<MultiPoly> {
    (0..n)
        .map(|i| {
            let mut coeffs = vec![int(0); n];
            coeffs[i] = int(1);
            MultiPoly::affine(&coeffs, int(1))
        })
        .collect()
}

/// `H_ij = 2 δ_ij l_i - 2 l_i l_j / (n+1)`, the inverse Hessian of the
/// Guillemin potential of `CP^n`.
pub fn inverse_hessian(n: usize) -> Vec<Vec<MultiPoly>> {
    let l = facet_forms(n);
    let k = rat(-2, n as i64 + 1);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let off = (&l[i] * &l[j]).scale(&k);
                    if i == j {
                        &off + &l[i].scale(&int(2))
                    } else {
                        off
                    }
                })
                .collect()
        })
        .collect()
}

/// `-Σ ∂_i ∂_j H_ij`.
pub fn fs_scalar(h: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = h.len();
    let mut total = MultiPoly::zero(n);
    for (i, row) in h.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            total = &total - &e.derivative(j).derivative(i);
        }
    }
    total
}

/// `Δf = -Σ ∂_i (H_ij ∂_j f)`.
pub fn laplacian(h: &[Vec<MultiPoly>], f: &MultiPoly) -> MultiPoly {
    let n = h.len();
    let mut total = MultiPoly::zero(n);
    for (i, row) in h.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            total = &total - &(e * &f.derivative(j)).derivative(i);
        }
    }
    total
}

/// `|df|^2 = Σ H_ij ∂_i f ∂_j f`.
pub fn grad_norm_sq(h: &[Vec<MultiPoly>], f: &MultiPoly) -> MultiPoly {
    let n = h.len();
    let mut total = MultiPoly::zero(n);
    for (i, row) in h.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            total = &total + &(&(e * &f.derivative(i)) * &f.derivative(j));
        }
    }
    total
}

fn weighted_scal(p: i64, scal1: &Rational, f: &MultiPoly) -> MultiPoly {
    let h = inverse_hessian(f.nvars());
    let scal = &fs_scalar(&h) + &MultiPoly::constant(f.nvars(), scal1.clone());
    let f2 = f * f;
    let lap = laplacian(&h, f);
    let grad = grad_norm_sq(&h, f);
    &(&(&f2 * &scal) - &(f * &lap).scale(&int(2 * (p - 1)))) - &grad.scale(&int(p * (p - 1)))
}

/// `Scal_{f,p} = f^2 Scal - 2(p-1) f Δf - p(p-1)|df|^2` for the product of a
/// cscK factor with scalar curvature `scal1` and Fubini–Study `CP^n`,
/// fully expanded in `x`.
pub fn toric_weighted_scal(p: i64, scal1: &Rational, pot: &ToricPotential) -> MultiPoly {
    weighted_scal(p, scal1, &pot.as_poly())
}

/// `2(2 - (p-n))((p-n) - 1)/(n+1)`, the `scal1` making `Scal_{f,p}` affine.
pub fn general_scal1(n: u32, p: i64) -> Rational {
    let m = p - i64::from(n);
    rat(2 * (2 - m) * (m - 1), i64::from(n) + 1)
}

/// `(n-d+1, d+n+2, -2d(d+1)/(n+1))`: two weights sharing one `scal1`.
pub fn twin_weights(d: u32, n: u32) -> (i64, i64, Rational) {
    let (d, n) = (i64::from(d), i64::from(n));
    let scal1 = rat(-2 * d * (d + 1), n + 1);
    (n - d + 1, d + n + 2, scal1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricCscSolutions {
    /// `v = 0`, always admissible.
    pub trivial: Rational,
    /// Nontrivial `v` with its simplex positivity verdict, ascending.
    pub candidates: Vec<(Rational, bool)>,
    pub any_admissible: bool,
}

/// Solutions of the cscS system in the normal form `v_1 = … = v_l = v`,
/// `v_{l+1} = … = v_n = 0`.
pub fn toric_csc_solutions(n: u32, lambda: &Rational, l: u32) -> Result<ToricCscSolutions> {
    if l < 1 || l >= n {
        return Err(domain(format!("need 1 ≤ l < n, got l = {l}, n = {n}")));
    }
    if *lambda <= Rational::zero() {
        return Err(domain("λ must be positive"));
    }
    let (nn, ll) = (int(i64::from(n)), int(i64::from(l)));
    let n1 = &nn + int(1);
    let a = &n1 * &ll - &ll * &ll;
    let b = lambda * (int(2) * &ll - &n1);
    let c = -(lambda * lambda);
    let roots = rational_quadratic_roots(&a, &b, &c)
        .ok_or_else(|| Error::InternalInconsistency("cscS quadratic has irrational roots".into()))?;
    let mut candidates = Vec::with_capacity(roots.len());
    for v in roots {
        let lhs = (&ll * &v - lambda) * (&ll * &v - lambda) - &n1 * &ll * &v * &v;
        if lhs != -(lambda * &n1 * &v) {
            return Err(Error::InternalInconsistency(format!("v = {v} does not solve the cscS system")));
        }
        let mut coeffs = vec![int(0); n as usize];
        coeffs[..l as usize].fill(v.clone());
        let ok = positive_on_simplex(&coeffs, lambda);
        candidates.push((v, ok));
    }
    let any_admissible = candidates.iter().any(|(_, ok)| *ok);
    Ok(ToricCscSolutions {
        trivial: Rational::zero(),
        candidates,
        any_admissible,
    })
}
