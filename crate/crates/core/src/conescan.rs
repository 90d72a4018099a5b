//! Classification of the rays `c ∈ (-1, 1)` of the Sasaki subcone.
//!
//! Each ray is classified exactly. Connectivity between neighbouring grid
//! points is sampled, not proven, and every component boundary is reported as
//! a bracket of the requested width.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cscs::{csc_condition, csc_roots};
use crate::error::{domain, Result};
use crate::exactmath::{int, is_positive_on_open, rat, Rational, RootInterval, UniPoly};
use crate::joinsetup::ProductSetup;
use crate::profile::{compute_profile, csc_s_check, ExtremalProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayClassification {
    pub c: Rational,
    /// `F > 0` on `(-1, 1)`.
    pub extremal: bool,
    /// `A1 z + A2` is a multiple of `cz + 1`.
    pub csc_s: bool,
    pub csc_value: Rational,
    pub profile: ExtremalProfile,
}

impl RayClassification {
    pub fn f(&self) -> &UniPoly {
        &self.profile.f
    }
}

pub fn classify_ray(setup: &ProductSetup, c: &Rational) -> Result<RayClassification> {
    let profile = compute_profile(setup, c)?;
    let extremal = is_positive_on_open(&profile.cofactor(), &int(-1), &int(1))?;
    Ok(RayClassification {
        c: c.clone(),
        extremal,
        csc_s: csc_s_check(&profile),
        csc_value: csc_condition(setup, c)?,
        profile,
    })
}

/// One end of a component: either an end of the whole cone or a bracket
/// `(lo, hi)` containing the change of classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Edge {
    ConeEnd(Rational),
    Bracket { lo: Rational, hi: Rational },
}

impl Edge {
    /// Largest value certainly on the left of the edge.
    pub fn lower(&self) -> &Rational {
        match self {
            Edge::ConeEnd(c) => c,
            Edge::Bracket { lo, .. } => lo,
        }
    }

    /// Smallest value certainly on the right of the edge.
    pub fn upper(&self) -> &Rational {
        match self {
            Edge::ConeEnd(c) => c,
            Edge::Bracket { hi, .. } => hi,
        }
    }
}

/// A maximal run of grid rays sharing one classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub extremal: bool,
    pub lo: Edge,
    pub hi: Edge,
    /// Grid rays inside the component; connectivity between them is sampled.
    pub samples: usize,
}

impl Component {
    /// True when `c` lies strictly between the inner ends of both edges.
    pub fn surely_contains(&self, c: &Rational) -> bool {
        self.lo.upper() <= c && c <= self.hi.lower()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CscStatus {
    Genuine,
    Spurious,
    /// The isolating interval straddles a change of extremality.
    Contested,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CscRay {
    pub root: RootInterval,
    pub status: CscStatus,
}

impl CscRay {
    pub fn genuine(&self) -> bool {
        self.status == CscStatus::Genuine
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeScanReport {
    pub setup: ProductSetup,
    pub boundary_width: Rational,
    pub grid: Vec<RayClassification>,
    pub extremal_intervals: Vec<Component>,
    pub moats: Vec<Component>,
    pub csc_rays: Vec<CscRay>,
    pub slope_map: Vec<(Rational, Rational)>,
}

impl ConeScanReport {
    /// All components in ascending order.
    pub fn components(&self) -> Vec<&Component> {
        let mut all: Vec<&Component> = self.extremal_intervals.iter().chain(&self.moats).collect();
        all.sort_by(|a, b| a.lo.lower().cmp(b.lo.lower()));
        all
    }
}

/// Slope `(1-c)/(1+c)` of the ray `c` in the `(w1, w2)` quadrant.
pub fn slope(c: &Rational) -> Result<Rational> {
    let den = int(1) + c;
    if den.is_zero() {
        return Err(domain("slope is undefined at c = -1"));
    }
    Ok((int(1) - c) / den)
}

pub fn grid_points(grid_n: usize) -> Vec<Rational> {
    let den = grid_n as i64 + 1;
    (1..=grid_n as i64).map(|i| int(-1) + rat(2 * i, den)).collect()
}

fn bisect_boundary(
    setup: &ProductSetup,
    mut a: Rational,
    mut b: Rational,
    left_extremal: bool,
    width: &Rational,
) -> Result<Edge> {
    while &b - &a > *width {
        let m = (&a + &b) / int(2);
        if classify_ray(setup, &m)?.extremal == left_extremal {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(Edge::Bracket { lo: a, hi: b })
}

fn probe_points(root: &RootInterval) -> Vec<Rational> {
    let inside = |t: &Rational| -&Rational::one() < *t && *t < Rational::one();
    let mut pts: Vec<Rational> = [root.lo.clone(), root.hi.clone()].into_iter().filter(inside).collect();
    if pts.is_empty() {
        pts.push(root.representative());
    }
    pts
}

/// Classifies `grid_n` evenly spaced rays, brackets every change of
/// extremality to `boundary_width`, and labels every cscS root.
pub fn scan(setup: &ProductSetup, grid_n: usize, boundary_width: &Rational) -> Result<ConeScanReport> {
    if grid_n < 8 {
        return Err(domain(format!("grid_n must be at least 8, got {grid_n}")));
    }
    if *boundary_width <= Rational::zero() {
        return Err(domain("boundary width must be positive"));
    }
    let grid: Vec<RayClassification> = grid_points(grid_n)
        .par_iter()
        .map(|c| classify_ray(setup, c))
        .collect::<Result<_>>()?;

    let changes: Vec<usize> = (1..grid.len()).filter(|&i| grid[i].extremal != grid[i - 1].extremal).collect();
    let edges: Vec<Edge> = changes
        .par_iter()
        .map(|&i| {
            bisect_boundary(
                setup,
                grid[i - 1].c.clone(),
                grid[i].c.clone(),
                grid[i - 1].extremal,
                boundary_width,
            )
        })
        .collect::<Result<_>>()?;

    let mut extremal_intervals = Vec::new();
    let mut moats = Vec::new();
    let mut lo = Edge::ConeEnd(int(-1));
    let mut start = 0;
    for (k, &i) in changes.iter().chain(std::iter::once(&grid.len())).enumerate() {
        let hi = edges.get(k).cloned().unwrap_or(Edge::ConeEnd(int(1)));
        let comp = Component {
            extremal: grid[start].extremal,
            lo: lo.clone(),
            hi: hi.clone(),
            samples: i - start,
        };
        if comp.extremal {
            extremal_intervals.push(comp);
        } else {
            moats.push(comp);
        }
        lo = hi;
        start = i;
    }

    let roots = csc_roots(setup, boundary_width)?;
    let csc_rays = roots
        .into_par_iter()
        .map(|root| {
            let status = match &root.exact {
                Some(r) => {
                    if classify_ray(setup, r)?.extremal {
                        CscStatus::Genuine
                    } else {
                        CscStatus::Spurious
                    }
                }
                None => {
                    let verdicts = probe_points(&root)
                        .iter()
                        .map(|t| classify_ray(setup, t).map(|r| r.extremal))
                        .collect::<Result<Vec<bool>>>()?;
                    if verdicts.iter().all(|&e| e) {
                        CscStatus::Genuine
                    } else if verdicts.iter().all(|&e| !e) {
                        CscStatus::Spurious
                    } else {
                        CscStatus::Contested
                    }
                }
            };
            Ok(CscRay { root, status })
        })
        .collect::<Result<Vec<_>>>()?;

    let slope_map = grid
        .iter()
        .map(|r| Ok((r.c.clone(), slope(&r.c)?)))
        .collect::<Result<_>>()?;

    Ok(ConeScanReport {
        setup: setup.clone(),
        boundary_width: boundary_width.clone(),
        grid,
        extremal_intervals,
        moats,
        csc_rays,
        slope_map,
    })
}
