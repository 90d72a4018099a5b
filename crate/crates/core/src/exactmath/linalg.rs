//! Exact Gaussian elimination for small, possibly overdetermined systems.

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::{int, Rational};
use super::ExactError;

/// Solves `rows * v = rhs` exactly. The system may have more equations than
/// unknowns; it must have full column rank and be consistent.
pub fn solve_exact(rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, ExactError> {
    let n_eq = rows.len();
    assert_eq!(n_eq, rhs.len());
    let n = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n);
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..n_eq).find(|&i| !m[i][col].is_zero()) else {
            return Err(ExactError::RankDeficient { rank: pivot_row, unknowns: n });
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n_eq {
            if i == pivot_row || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..=n {
                let d = &factor * &m[pivot_row][j];
                m[i][j] -= d;
            }
        }
        pivot_row += 1;
    }
    // leftover rows are 0 = residual
    if let Some(i) = (n..n_eq).find(|&i| !m[i][n].is_zero()) {
        return Err(ExactError::Inconsistent { row: i });
    }
    Ok((0..n).map(|i| m[i][n].clone()).collect())
}

/// Determinant of a 2x2 matrix.
pub fn det2(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
    a * d - b * c
}

/// Interpolating polynomial through `(nodes[i], values[i])` via Newton
/// divided differences. Nodes must be distinct.
pub fn interpolate(nodes: &[Rational], values: &[Rational]) -> Result<UniPoly, ExactError> {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = &nodes[i] - &nodes[i - level];
            if den.is_zero() {
                return Err(ExactError::Domain("repeated interpolation node".into()));
            }
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    let mut poly = UniPoly::zero();
    for i in (0..n).rev() {
        poly = &(&poly * &UniPoly::linear(Rational::one(), -nodes[i].clone()))
            + &UniPoly::constant(dd[i].clone());
    }
    Ok(poly)
}

/// Rational roots of `a v^2 + b v + c` when the discriminant is a perfect
/// rational square; `None` otherwise. Degenerate (linear) input is handled.
pub fn rational_quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Option<Vec<Rational>> {
    if a.is_zero() {
        if b.is_zero() {
            return None;
        }
        return Some(vec![-c / b]);
    }
    let disc = b * b - int(4) * a * c;
    if disc < Rational::zero() {
        return Some(Vec::new());
    }
    let root = rational_sqrt(&disc)?;
    let two_a = int(2) * a;
    let mut out = vec![(-b - &root) / &two_a, (-b + &root) / &two_a];
    out.sort();
    out.dedup();
    Some(out)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}
