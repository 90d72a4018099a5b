//! JSON, CSV and SVG renderings. Every number is emitted as an exact `p/q`
//! string next to a display-only decimal.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::conescan::{Component, ConeScanReport, CscStatus, Edge};
use crate::exactmath::rational::to_f64;
use crate::exactmath::{rational_string, to_decimal, Rational, RootInterval, UniPoly};
use crate::joinsetup::ProductSetup;
use crate::profile::ExtremalProfile;
use crate::twins::{Partners, TwinReport};

pub const SCHEMA: u32 = 1;
const DIGITS: usize = 12;

pub fn rational(r: &Rational) -> Value {
    json!({ "exact": rational_string(r), "decimal": to_decimal(r, DIGITS) })
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational).collect())
}

/// Coefficients in ascending degree plus a readable form in `var`.
pub fn poly(p: &UniPoly, var: &str) -> Value {
    json!({ "coeffs": rationals(p.coeffs()), "text": p.display_in(var) })
}

pub fn setup(s: &ProductSetup) -> Value {
    json!({
        "d": s.d,
        "a": rational(&s.a),
        "g2": s.genus_g2,
        "k": s.degree_k,
        "s": rational(&s.s),
        "x": rational(&s.x),
        "p": s.p,
    })
}

/// `F = scale * (1 - z^2) * primitive` with `primitive` integral.
pub fn factored_profile(prof: &ExtremalProfile) -> Value {
    let cof = prof.cofactor();
    let prim = cof.primitive_integer();
    let scale = cof.leading() / prim.leading();
    json!({
        "scale": rational(&scale),
        "primitive_cofactor": poly(&prim, "z"),
    })
}

pub fn root(r: &RootInterval) -> Value {
    json!({
        "lo": rational(&r.lo),
        "hi": rational(&r.hi),
        "exact": r.exact.as_ref().map(rational),
        "midpoint": rational(&r.midpoint()),
    })
}

fn edge(e: &Edge) -> Value {
    match e {
        Edge::ConeEnd(c) => json!({ "kind": "cone_end", "at": rational(c) }),
        Edge::Bracket { lo, hi } => json!({
            "kind": "bracket",
            "lo": rational(lo),
            "hi": rational(hi),
            "width": rational(&(hi - lo)),
        }),
    }
}

fn component(c: &Component) -> Value {
    json!({
        "lo": edge(&c.lo),
        "hi": edge(&c.hi),
        "grid_samples": c.samples,
        "connectivity": "sampled",
    })
}

fn status(s: CscStatus) -> &'static str {
    match s {
        CscStatus::Genuine => "genuine",
        CscStatus::Spurious => "spurious",
        CscStatus::Contested => "contested",
    }
}

pub fn scan(rep: &ConeScanReport) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "scan",
        "setup": setup(&rep.setup),
        "grid_n": rep.grid.len(),
        "boundary_width": rational(&rep.boundary_width),
        "rays": rep.grid.iter().map(|r| json!({
            "c": rational(&r.c),
            "extremal": r.extremal,
            "cscS": r.csc_s,
            "csc_condition": rational(&r.csc_value),
            "F": poly(r.f(), "z"),
        })).collect::<Vec<_>>(),
        "extremal_intervals": rep.extremal_intervals.iter().map(component).collect::<Vec<_>>(),
        "moats": rep.moats.iter().map(component).collect::<Vec<_>>(),
        "csc_rays": rep.csc_rays.iter().map(|r| json!({
            "root": root(&r.root),
            "status": status(r.status),
            "genuine": r.genuine(),
        })).collect::<Vec<_>>(),
        "slope_map": rep.slope_map.iter().map(|(c, s)| json!({
            "c": rational(c),
            "slope": rational(s),
        })).collect::<Vec<_>>(),
    })
}

pub fn twins(rep: &TwinReport, var: &str) -> Value {
    let partners = match &rep.partners {
        Partners::Finite(v) => json!({ "kind": "finite", "values": rationals(v) }),
        Partners::Continuum { samples } => json!({ "kind": "continuum", "verified_samples": rationals(samples) }),
    };
    json!({
        "base_c": rational(&rep.base_c),
        "partners": partners,
        "shared_F": poly(&rep.shared_f, var),
    })
}

/// One row per grid ray: `c_num,c_den,extremal,cscS,F_coeffs`.
pub fn scan_csv(rep: &ConeScanReport) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["c_num", "c_den", "extremal", "cscS", "F_coeffs"])?;
    for r in &rep.grid {
        let coeffs: Vec<String> = r.f().coeffs().iter().map(rational_string).collect();
        w.write_record([
            r.c.numer().to_string(),
            r.c.denom().to_string(),
            r.extremal.to_string(),
            r.csc_s.to_string(),
            coeffs.join(";"),
        ])?;
    }
    w.into_inner().map_err(|e| csv::Error::from(e.into_error()))
}

const SIZE: f64 = 480.0;
const ORIGIN: f64 = 50.0;
const RADIUS: f64 = 390.0;

/// Screen point at distance `r` along the ray `c`, whose direction in the
/// `(w1, w2)` quadrant is `(1 + c, 1 - c)`.
fn ray_point(c: f64, r: f64) -> (f64, f64) {
    let (u, v) = (1.0 + c, 1.0 - c);
    let norm = (u * u + v * v).sqrt();
    (ORIGIN + r * u / norm, SIZE - ORIGIN - r * v / norm)
}

fn line(out: &mut String, c: f64, r: f64, style: &str) {
    let (x, y) = ray_point(c, r);
    let (ox, oy) = (ORIGIN, SIZE - ORIGIN);
    let _ = writeln!(out, r#"  <line x1="{ox:.3}" y1="{oy:.3}" x2="{x:.3}" y2="{y:.3}" {style}/>"#);
}

fn wedge(out: &mut String, lo: f64, hi: f64) {
    let mut pts = vec![format!("{:.3},{:.3}", ORIGIN, SIZE - ORIGIN)];
    let steps = 48;
    for i in 0..=steps {
        let c = lo + (hi - lo) * f64::from(i) / f64::from(steps);
        let (x, y) = ray_point(c, RADIUS);
        pts.push(format!("{x:.3},{y:.3}"));
    }
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="#d9d9d9" stroke="none"/>"##,
        pts.join(" ")
    );
}

fn mid(e: &Edge) -> f64 {
    (to_f64(e.lower()) + to_f64(e.upper())) / 2.0
}

/// First-quadrant cone diagram: grid rays at slope `(1-c)/(1+c)`, moats
/// shaded, cscS rays drawn solid when genuine and dashed otherwise.
pub fn scan_svg(rep: &ConeScanReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for m in &rep.moats {
        wedge(&mut out, mid(&m.lo), mid(&m.hi));
    }
    for r in &rep.grid {
        let colour = if r.extremal { "#7fa7d9" } else { "#bbbbbb" };
        line(&mut out, to_f64(&r.c), RADIUS * 0.92, &format!(r#"stroke="{colour}" stroke-width="0.6""#));
    }
    let (ox, oy) = (ORIGIN, SIZE - ORIGIN);
    let _ = writeln!(
        out,
        r#"  <line x1="{ox}" y1="{oy}" x2="{}" y2="{oy}" stroke="black" stroke-width="1.2"/>"#,
        ORIGIN + RADIUS
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{ox}" y1="{oy}" x2="{ox}" y2="{}" stroke="black" stroke-width="1.2"/>"#,
        SIZE - ORIGIN - RADIUS
    );
    let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="14">w1</text>"#, ORIGIN + RADIUS + 6.0, oy + 5.0);
    let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="14">w2</text>"#, ox - 8.0, SIZE - ORIGIN - RADIUS - 8.0);
    for (i, ray) in rep.csc_rays.iter().enumerate() {
        let c = to_f64(&ray.root.representative());
        let style = match ray.status {
            CscStatus::Genuine => r##"stroke="#c0392b" stroke-width="2""##,
            CscStatus::Spurious => r##"stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6,4""##,
            CscStatus::Contested => r##"stroke="#e67e22" stroke-width="1.5" stroke-dasharray="2,3""##,
        };
        line(&mut out, c, RADIUS, style);
        let (x, y) = ray_point(c, RADIUS + 14.0);
        let _ = writeln!(out, r#"  <text x="{x:.3}" y="{y:.3}" font-size="13">c{}</text>"#, i + 1);
    }
    let legend_y = 24.0;
    for (i, ray) in rep.csc_rays.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="11">cscS ray determined by c{} = {} ({})</text>"#,
            SIZE - 250.0,
            legend_y + 14.0 * i as f64,
            i + 1,
            to_decimal(&ray.root.representative(), 3),
            status(ray.status)
        );
    }
    if !rep.moats.is_empty() {
        let _ = writeln!(
            out,
            r##"  <rect x="{:.3}" y="{:.3}" width="10" height="10" fill="#d9d9d9"/>"##,
            SIZE - 250.0,
            legend_y + 14.0 * rep.csc_rays.len() as f64 - 9.0
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="11">non-extremal moat</text>"#,
            SIZE - 236.0,
            legend_y + 14.0 * rep.csc_rays.len() as f64
        );
    }
    out.push_str("</svg>\n");
    out
}
