//! The reproduction suite: every worked example rerun as an exact check.

use num_traits::Zero;
use rayon::prelude::*;

use crate::conescan::{classify_ray, scan, ConeScanReport, CscStatus};
use crate::cscs::{csc_condition, csc_roots, h_poly_p5};
use crate::exactmath::rational::to_f64;
use crate::exactmath::rational::pow_i;
use crate::exactmath::{int, rat, Rational, UniPoly};
use crate::joinsetup::{join_is_smooth, ke_join_weights, make_setup, JoinSpec, ProductSetup};
use crate::profile::compute_profile;
use crate::twins::{
    cp1_profile, cp1_twins, find_profile_twins, toric_csc_solutions, toric_weighted_scal, twin_weights, Partners,
    ToricPotential,
};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Probe(Vec<String>);

impl Probe {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }
}

fn poly(num: &[i64], den: i64) -> UniPoly {
    UniPoly::from_ints(num).scale(&rat(1, den))
}

fn one_minus_z2() -> UniPoly {
    UniPoly::from_ints(&[1, 0, -1])
}

pub fn nocsc_setup() -> ProductSetup {
    make_setup(1, rat(-43137, 1337), 101, 1, rat(1, 2)).expect("valid setup")
}

pub fn moat_setup(x: Rational) -> ProductSetup {
    let x2 = &x * &x;
    let a = int(3) * (&x2 * &x2 + int(7)) / ((int(1) - &x2) * (int(3) - &x2));
    make_setup(2, a, 4, 2, x).expect("valid setup")
}

fn near(r: &Rational, target: f64) -> bool {
    (to_f64(r) - target).abs() <= 5e-4
}

fn nocsc(p: &mut Probe) -> Result<()> {
    let s = nocsc_setup();
    let c = rat(2, 5);
    let prof = compute_profile(&s, &c)?;
    let want = &(&one_minus_z2() * &UniPoly::from_ints(&[5, 2])) * &poly(&[-292, 191, 1820], 8022);
    p.expect(prof.f == want, "profile at c = 2/5");
    p.expect(!classify_ray(&s, &c)?.extremal, "c = 2/5 is not extremal");
    p.expect(csc_condition(&s, &c)?.is_zero(), "csc condition vanishes at 2/5");
    let rep = scan(&s, 16, &rat(1, 256))?;
    p.expect(rep.extremal_intervals.is_empty(), "no extremal rays");
    let spurious = rep.csc_rays.len() == 1
        && rep.csc_rays[0].root.exact == Some(c)
        && rep.csc_rays[0].status == CscStatus::Spurious;
    p.expect(spurious, "single spurious csc root at 2/5");
    Ok(())
}

fn endonpos(p: &mut Probe) -> Result<()> {
    let s = make_setup(1, rat(-2675, 497), 2, 1, rat(1, 2))?;
    let r = classify_ray(&s, &rat(1, 8))?;
    let want = &(&one_minus_z2() * &UniPoly::from_ints(&[8, 1])) * &poly(&[326, 142, 29], 2982);
    p.expect(r.profile.f == want, "profile at c = 1/8");
    p.expect(r.extremal && r.csc_s, "c = 1/8 is a genuine cscS ray");
    Ok(())
}

fn resurrection(p: &mut Probe) -> Result<()> {
    let s = make_setup(2, rat(125919069, 1574986) - rat(43137, 1337), 101, 1, rat(1, 2))?;
    let r = classify_ray(&s, &rat(3, 5))?;
    let want = &(&one_minus_z2() * &UniPoly::from_ints(&[5, 3])) * &poly(&[413335, 59909, -297891, -76401], 527744);
    p.expect(s.p == 6, "weight p = 6");
    p.expect(r.profile.f == want, "profile at c = 3/5");
    p.expect(r.extremal && r.csc_s, "c = 3/5 is a genuine cscS ray");
    let fails = (-9..=9)
        .map(|i| classify_ray(&s, &rat(i, 10)).map(|r| !r.extremal))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    p.expect(fails >= 3, format!("only {fails} sampled rays fail positivity"));
    Ok(())
}

fn h_closed_form(p: &mut Probe) -> Result<()> {
    for (a, g2, k, x) in [(rat(7, 3), 3, 1, rat(1, 3)), (rat(-5, 2), 9, 4, rat(3, 4)), (int(11), 0, 2, rat(1, 9))] {
        let s = make_setup(1, a, g2, k, x.clone())?;
        let h = h_poly_p5(&s)?;
        for c in [rat(-4, 5), rat(-1, 7), rat(1, 2)] {
            let lhs = csc_condition(&s, &c)? * int(9) * pow_i(&(int(1) - &c * &c), 7)? / int(4);
            p.expect(lhs == h.eval(&c), format!("h at c = {c}"));
        }
        let (xm, xp) = (int(1) - &x, int(1) + &x);
        p.expect(h.eval(&int(-1)) == int(-24) * &xp * &xp, "h(-1)");
        p.expect(h.eval(&int(1)) == int(24) * &xm * &xm, "h(1)");
    }
    Ok(())
}

fn quasiregular(p: &mut Probe) -> Result<()> {
    let s = make_setup(1, rat(419, 19), 11, 9, rat(9, 10))?;
    p.expect(s.s == rat(-20, 9), "s = -20/9");
    let h = h_poly_p5(&s)?;
    let want = (&UniPoly::from_ints(&[-9, 10]) * &UniPoly::from_ints(&[190, 543, -350, -885, 540])).scale(&rat(3, 475));
    p.expect(h == want, "h factorization");
    let roots = csc_roots(&s, &rat(1, 10000))?;
    p.expect(roots.len() == 3, "three roots");
    if roots.len() == 3 {
        p.expect(near(&roots[0].midpoint(), -0.601), "root near -0.601");
        p.expect(near(&roots[1].midpoint(), -0.359), "root near -0.359");
        p.expect(roots[2].exact == Some(rat(9, 10)), "exact root 9/10");
        for r in &roots {
            p.expect(r.width() <= rat(1, 10000), "root width");
            p.expect(classify_ray(&s, &r.representative())?.extremal, "root ray extremal");
        }
    }
    p.expect(!classify_ray(&s, &int(0))?.extremal, "regular ray not extremal");
    Ok(())
}

fn moat_family(p: &mut Probe) -> Result<ConeScanReport> {
    for x in [rat(1, 3), rat(1, 2), rat(8, 10), rat(9, 10)] {
        let s = moat_setup(x.clone());
        p.expect(csc_condition(&s, &x)?.is_zero(), format!("csc condition at c = x = {x}"));
        let x2 = &x * &x;
        let lin = UniPoly::linear(x.clone(), int(1));
        let inner = UniPoly::new(vec![int(3) + &x2, -(&x * (int(3) - &x2)), int(-2) * &x2]);
        let want = (&(&one_minus_z2() * &(&lin * &lin)) * &inner)
            .scale(&(int(1) / ((int(1) - &x2) * (int(3) - &x2))));
        p.expect(compute_profile(&s, &x)?.f == want, format!("profile at c = x = {x}"));
    }
    let eight = scan(&moat_setup(rat(8, 10)), 33, &rat(1, 2048))?;
    p.expect(eight.grid.iter().all(|r| r.extremal), "x = 8/10 extremal on the grid");
    p.expect(eight.csc_rays.len() == 3 && eight.csc_rays.iter().all(|r| r.genuine()), "x = 8/10 three genuine");

    let rep = scan(&moat_setup(rat(9, 10)), 33, &rat(1, 2048))?;
    let rays = &rep.csc_rays;
    p.expect(rep.extremal_intervals.len() == 2 && rep.moats.len() == 1, "x = 9/10 two components and a moat");
    p.expect(rays.len() == 3, "x = 9/10 three roots");
    if rays.len() == 3 && rep.moats.len() == 1 {
        let m = &rep.moats[0];
        let (cl, cr) = (&m.lo, &m.hi);
        p.expect(near(&rays[0].root.midpoint(), -0.786), "root near -0.786");
        p.expect(near(&rays[1].root.midpoint(), -0.120), "root near -0.120");
        p.expect(rays[2].root.exact == Some(rat(9, 10)), "exact root 9/10");
        let statuses: Vec<CscStatus> = rays.iter().map(|r| r.status).collect();
        p.expect(
            statuses == [CscStatus::Genuine, CscStatus::Spurious, CscStatus::Genuine],
            "genuine, spurious, genuine",
        );
        p.expect(cl.upper() < &int(0) && &int(0) < cr.lower(), "c_l < 0 < c_r");
        p.expect(cl.upper() < &rays[1].root.lo && &rays[1].root.hi < cr.lower(), "c_2 inside the moat");
        p.expect(&rays[0].root.hi < cl.lower() && &rays[2].root.lo > cr.upper(), "c_1, c_3 outside the moat");
    }
    Ok(rep)
}

fn twin_pair(p: &mut Probe) -> Result<()> {
    let s = make_setup(1, rat(19, 3), 3, 1, rat(1, 2))?;
    let fwd = find_profile_twins(&s, &rat(1, 2))?;
    let back = find_profile_twins(&s, &rat(-5, 6))?;
    p.expect(fwd.partners == Partners::Finite(vec![rat(-5, 6)]), "partner of 1/2 is -5/6");
    p.expect(back.partners == Partners::Finite(vec![rat(1, 2)]), "partner of -5/6 is 1/2");
    p.expect(fwd.shared_f == back.shared_f, "shared profile");
    let none = find_profile_twins(&nocsc_setup(), &rat(2, 5))?;
    p.expect(none.partners == Partners::Finite(vec![]), "c = 2/5 has no twin");
    Ok(())
}

fn cp1(p: &mut Probe) -> Result<()> {
    for c in [int(0), rat(1, 3), rat(-7, 9)] {
        p.expect(cp1_profile(&int(-2), &c)?.h == one_minus_z2(), format!("H = 1 - z^2 at c = {c}"));
    }
    for (k, c) in [(int(-4), rat(1, 2)), (rat(-13, 2), rat(-2, 3)), (int(-20), rat(1, 5))] {
        let h = cp1_profile(&k, &c)?.h;
        p.expect(h == cp1_profile(&k, &-c.clone())?.h, "H symmetric in c");
    }
    p.expect(cp1_twins(&int(-4), &rat(1, 3))?.partners == Partners::Finite(vec![rat(-1, 3)]), "pair ±1/3");
    p.expect(cp1_twins(&int(-2), &rat(1, 3))?.is_continuum(), "continuum at k = -2");
    p.expect(cp1_twins(&int(-4), &int(0))?.partners == Partners::Finite(vec![]), "no twin at c = 0");
    Ok(())
}

fn toric(p: &mut Probe) -> Result<()> {
    for (d, n) in [(1u32, 1u32), (1, 2), (2, 2), (0, 3), (2, 3)] {
        let v: Vec<Rational> = (0..n).map(|i| rat(i64::from(i) + 1, 7)).collect();
        let pot = ToricPotential::new(v, int(3))?;
        let (lo, hi, scal1) = twin_weights(d, n);
        for w in [lo, hi] {
            p.expect(toric_weighted_scal(w, &scal1, &pot).is_affine(), format!("affine at (d, n, p) = ({d}, {n}, {w})"));
        }
        let bad = &scal1 + rat(1, 7);
        p.expect(!toric_weighted_scal(hi, &bad, &pot).is_affine(), "perturbed scal1 is not affine");
    }
    for n in 2..=4u32 {
        for lambda in [int(1), rat(3, 2)] {
            for l in 1..n {
                let sol = toric_csc_solutions(n, &lambda, l)?;
                let vs: Vec<Rational> = sol.candidates.iter().map(|(v, _)| v.clone()).collect();
                let mut want = vec![&lambda / int(i64::from(l)), -(&lambda / int(i64::from(n - l + 1)))];
                want.sort();
                p.expect(vs == want, format!("cscS candidates n = {n}, l = {l}"));
                p.expect(!sol.any_admissible, "no admissible nontrivial cscS");
            }
        }
    }
    Ok(())
}

fn joins(p: &mut Probe) -> Result<()> {
    for g in 2..=12i64 {
        p.expect(ke_join_weights(-2 * (g - 1), 1)?.1 == 1, format!("genus {g} curve gives l2 = 1"));
    }
    for (k1, k2) in [(1i64, 1i64), (2, 4), (3, 5)] {
        let index = -6 * num_integer::gcd(k1, k2);
        p.expect(ke_join_weights(index, 2)?.1 == 1, format!("genera (1+3*{k1}, 1+3*{k2}) give l2 = 1"));
    }
    p.expect(join_is_smooth(&JoinSpec::regular(2, 3)?), "regular join (2, 3) is smooth");
    p.expect(!join_is_smooth(&JoinSpec::new(3, 2, 3, 2)?), "orders (3, 2) with weights (3, 2) are not smooth");
    Ok(())
}

type CheckFn = fn(&mut Probe) -> Result<()>;

const CHECKS: [(&str, CheckFn); 9] = [
    ("nocsc profile and empty cone", nocsc),
    ("end-on positivity profile", endonpos),
    ("p = 6 profile", resurrection),
    ("closed form of h", h_closed_form),
    ("quasiregular csc roots", quasiregular),
    ("profile twins", twin_pair),
    ("CP^1 closed forms", cp1),
    ("toric twins and cscS triviality", toric),
    ("join arithmetic", joins),
];

/// Runs every check; the moat scan is returned for rendering.
pub fn run_checks() -> (Vec<Check>, Option<ConeScanReport>) {
    let mut checks: Vec<Check> = CHECKS
        .par_iter()
        .map(|(name, f)| {
            let mut probe = Probe(Vec::new());
            if let Err(e) = f(&mut probe) {
                probe.0.push(format!("error: {e}"));
            }
            Check { name, failures: probe.0 }
        })
        .collect();
    let mut probe = Probe(Vec::new());
    let report = match moat_family(&mut probe) {
        Ok(r) => Some(r),
        Err(e) => {
            probe.0.push(format!("error: {e}"));
            None
        }
    };
    checks.push(Check {
        name: "moat family",
        failures: probe.0,
    });
    (checks, report)
}
