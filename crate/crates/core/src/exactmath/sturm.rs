//! Sturm chains and certified real-root isolation over the rationals.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::UniPoly;
use super::rational::{int, sign_of, simplest_between, Rational};
use super::ExactError;

/// How an isolating interval was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Sturm count on the open interval equals one.
    Exact,
    /// Opposite nonzero signs at the two endpoints.
    SignChange,
}

/// An open interval `(lo, hi)` holding exactly one root of the bracketed
/// polynomial. `exact` carries the root itself when it is rational and was
/// identified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub certificate: Certificate,
    pub exact: Option<Rational>,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// The exact root if known, else the midpoint.
    pub fn representative(&self) -> Rational {
        self.exact.clone().unwrap_or_else(|| self.midpoint())
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo < t && t < &self.hi
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...`, each member scaled by a positive
/// constant to keep coefficients small.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self, ExactError> {
        if p.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let mut chain = vec![p.sign_normalized()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.sign_normalized());
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push((-r).sign_normalized());
        }
        Ok(Self { chain })
    }

    pub fn poly(&self) -> &UniPoly {
        &self.chain[0]
    }

    /// Sign variations of the chain at `t`, zeros skipped.
    pub fn variations_at(&self, t: &Rational) -> usize {
        count_variations(self.chain.iter().map(|q| sign_of(&q.eval(t))))
    }

    /// Sign variations at minus infinity.
    pub fn variations_at_neg_inf(&self) -> usize {
        count_variations(self.chain.iter().map(|q| {
            let d = q.degree().unwrap_or(0);
            let s = sign_of(&q.leading());
            if d % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct roots in `(lo, hi)`.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        // V(lo) - V(hi) counts the half-open interval (lo, hi].
        let half_open = self.variations_at(lo) - self.variations_at(hi);
        half_open - usize::from(self.poly().eval(hi).is_zero())
    }

    /// Distinct roots in `[lo, hi]`.
    pub fn count_closed(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
            + usize::from(self.poly().eval(lo).is_zero())
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn check_interval(lo: &Rational, hi: &Rational) -> Result<(), ExactError> {
    if lo < hi {
        Ok(())
    } else {
        Err(ExactError::Domain(format!("empty interval ({lo}, {hi})")))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi)` or `[lo, hi]`.
pub fn sturm_count_roots(
    p: &UniPoly,
    lo: &Rational,
    hi: &Rational,
    open_interval: bool,
) -> Result<usize, ExactError> {
    check_interval(lo, hi)?;
    let chain = SturmChain::new(p)?;
    Ok(if open_interval {
        chain.count_open(lo, hi)
    } else {
        chain.count_closed(lo, hi)
    })
}

/// `p(t) > 0` for every `t` in `(lo, hi)`.
pub fn is_positive_on_open(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<bool, ExactError> {
    check_interval(lo, hi)?;
    let chain = SturmChain::new(p)?;
    if chain.count_open(lo, hi) > 0 {
        return Ok(false);
    }
    let mid = (lo + hi) / int(2);
    Ok(p.eval(&mid).is_positive())
}

/// Certified isolation of every real root of `p` in `(lo, hi)`, each interval
/// refined to width at most `width`. `p` is reduced to its squarefree part
/// first. Rational roots met during bisection, or recognised by a
/// smallest-denominator probe, are reported exactly.
pub fn isolate_roots(
    p: &UniPoly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<Vec<RootInterval>, ExactError> {
    check_interval(lo, hi)?;
    if !width.is_positive() {
        return Err(ExactError::Domain("isolation width must be positive".into()));
    }
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sf)?;
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match chain.count_open(&a, &b) {
            0 => {}
            1 => out.push(refine(&chain, a, b, width)),
            _ => {
                let m = (&a + &b) / int(2);
                if sf.eval(&m).is_zero() {
                    out.push(exact_root_interval(&chain, &a, &b, m.clone(), width));
                }
                // push right first so the left half is processed first
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    // an interval around an exact midpoint root can overlap its neighbours
    while let Some(i) = (1..out.len()).find(|&i| out[i - 1].hi > out[i].lo) {
        shrink(&chain, &mut out[i - 1]);
        shrink(&chain, &mut out[i]);
    }
    Ok(out)
}

/// Halves an isolating interval, keeping the root inside.
fn shrink(chain: &SturmChain, r: &mut RootInterval) {
    if let Some(x) = r.exact.clone() {
        let half = r.width() / int(4);
        r.lo = &x - &half;
        r.hi = &x + &half;
        return;
    }
    let m = r.midpoint();
    if chain.poly().eval(&m).is_zero() {
        let half = r.width() / int(4);
        r.lo = &m - &half;
        r.hi = &m + &half;
        r.exact = Some(m);
    } else if chain.count_open(&r.lo, &m) == 1 {
        r.hi = m;
    } else {
        r.lo = m;
    }
}

/// Extra halvings spent looking for a rational root once the requested width
/// is reached.
const EXACT_PROBE_DEPTH: usize = 48;

/// Shrinks `(a, b)`, known to hold exactly one root, to width `<= width`.
fn refine(chain: &SturmChain, mut a: Rational, mut b: Rational, width: &Rational) -> RootInterval {
    let p = chain.poly();
    let mut extra = 0;
    let mut reached: Option<(Rational, Rational)> = None;
    // with a single simple root inside, a nonzero endpoint sign is enough to
    // steer the bisection
    let mut sa = sign_of(&p.eval(&a));
    loop {
        // a rational root is the simplest rational of a narrow enough bracket
        let probe = simplest_between(&a, &b);
        if a < probe && probe < b && p.eval(&probe).is_zero() {
            return exact_root_interval(chain, &a, &b, probe, width);
        }
        if &(&b - &a) <= width {
            if reached.is_none() {
                reached = Some((a.clone(), b.clone()));
            }
            if extra == EXACT_PROBE_DEPTH {
                break;
            }
            extra += 1;
        }
        let m = (&a + &b) / int(2);
        if p.eval(&m).is_zero() {
            return exact_root_interval(chain, &a, &b, m, width);
        }
        let root_left = if sa != 0 {
            sign_of(&p.eval(&m)) != sa
        } else {
            chain.count_open(&a, &m) == 1
        };
        if root_left {
            b = m;
        } else {
            sa = sign_of(&p.eval(&m));
            a = m;
        }
    }
    // no rational root found: report the bracket at the requested width
    let (lo, hi) = reached.unwrap_or((a, b));
    RootInterval {
        lo,
        hi,
        certificate: Certificate::Exact,
        exact: None,
    }
}

/// Interval of width `<= width` strictly inside `(a, b)` around the exact root
/// `r`, containing no other root.
fn exact_root_interval(
    chain: &SturmChain,
    a: &Rational,
    b: &Rational,
    r: Rational,
    width: &Rational,
) -> RootInterval {
    let mut half = width.clone() / int(2);
    let min_gap = (r.clone() - a).min(b - r.clone());
    if half >= min_gap {
        half = min_gap / int(2);
    }
    loop {
        let lo = &r - &half;
        let hi = &r + &half;
        if chain.count_open(&lo, &hi) == 1 {
            return RootInterval {
                lo,
                hi,
                certificate: Certificate::Exact,
                exact: Some(r),
            };
        }
        half /= int(2);
    }
}

/// Bisection on a sign change of an arbitrary exact function, used where no
/// polynomial is available. `f(lo)` and `f(hi)` must be nonzero with
/// opposite signs.
pub fn bisect_sign_change<F, E>(
    mut f: F,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<RootInterval, E>
where
    F: FnMut(&Rational) -> Result<Rational, E>,
    E: From<ExactError>,
{
    check_interval(lo, hi)?;
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let sa = sign_of(&f(&a)?);
    let sb = sign_of(&f(&b)?);
    if sa == 0 || sb == 0 || sa == sb {
        return Err(ExactError::Domain("no sign change on bracket".into()).into());
    }
    while &b - &a > *width {
        let m = (&a + &b) / int(2);
        let sm = sign_of(&f(&m)?);
        if sm == 0 {
            let half = width / int(2);
            return Ok(RootInterval {
                lo: &m - &half,
                hi: &m + &half,
                certificate: Certificate::SignChange,
                exact: Some(m),
            });
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(RootInterval {
        lo: a,
        hi: b,
        certificate: Certificate::SignChange,
        exact: None,
    })
}

/// Rational roots of `p` in `(lo, hi)` recognised exactly after isolation.
pub fn rational_roots(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<Vec<Rational>, ExactError> {
    let tiny = Rational::one() / int(1 << 20);
    Ok(isolate_roots(p, lo, hi, &tiny)?
        .into_iter()
        .filter_map(|r| r.exact)
        .collect())
}
