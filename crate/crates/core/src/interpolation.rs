//! The optimal interpolation node for the Heinz means.
//!
//! `ell(tau) = 8 tau^3 - 12 tau^2 + 1` has a single root in `(0, 1/2)`.
//! Independently, the L1 error between `H_t(1, b)` and its quadratic
//! interpolator through `t = 0, tau, 1` is minimized over `tau` by
//! quadrature and golden-section search, landing on the same node for every
//! `b`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::scalar::{heinz_sum, interpolator_unchecked, PositivePair};

/// Smallest tolerance [`tau_star`] accepts.
pub const MIN_ROOT_TOL: f64 = 1e-15;
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
/// Search interval for the minimizer of the L1 error.
pub const SEARCH_LO: f64 = 0.01;
pub const SEARCH_HI: f64 = 0.49;
pub const GRID_POINTS: usize = 49;
pub const BRACKET_WIDTH: f64 = 1e-5;
/// Upper bound on accepted Simpson panels per integral.
pub const MAX_PANELS: usize = 1 << 20;

const MAX_DEPTH: u32 = 60;

/// `8 tau^3 - 12 tau^2 + 1` in Horner form.
pub fn cubic_ell(tau: f64) -> f64 {
    (8.0 * tau - 12.0) * tau * tau + 1.0
}

fn cubic_ell_prime(tau: f64) -> f64 {
    (24.0 * tau - 24.0) * tau
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauStar {
    pub tau: f64,
    /// `1 - tau`, where the error is minimized as well.
    pub mirror: f64,
    /// `|ell(tau)|`
    pub residual: f64,
    /// Final sign-change bracket.
    pub bracket: (f64, f64),
}

pub fn tau_star(tol: f64) -> Result<TauStar> {
    if !(tol >= MIN_ROOT_TOL) || !tol.is_finite() {
        return Err(domain(format!(
            "tolerance must be finite and >= {MIN_ROOT_TOL:e}, got {tol}"
        )));
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    let width = tol.min(1e-12);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cubic_ell(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut tau = 0.5 * (lo + hi);
    for _ in 0..2 {
        let next = tau - cubic_ell(tau) / cubic_ell_prime(tau);
        if next > lo && next < hi && cubic_ell(next).abs() <= cubic_ell(tau).abs() {
            tau = next;
        }
    }
    let residual = cubic_ell(tau).abs();
    if residual > tol {
        return Err(Error::Numerical(format!(
            "root residual {residual:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(TauStar {
        tau,
        mirror: 1.0 - tau,
        residual,
        bracket: (lo, hi),
    })
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Adaptive Simpson over `[lo, hi]` with Richardson correction. Each panel
/// gets a share of `tol` proportional to its length.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Quadrature> {
    adaptive_simpson_split(f, &[lo, hi], tol)
}

/// [`adaptive_simpson`] over consecutive intervals between `points`, so that
/// each point is a panel edge.
pub fn adaptive_simpson_split<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: f64,
) -> Result<Quadrature> {
    if !(tol > 0.0) {
        return Err(domain(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    if points.len() < 2 || points.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(domain(
            "split points must be nondecreasing and at least two",
        ));
    }
    let total = points[points.len() - 1] - points[0];
    let mut acc = Accumulator::default();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b == a {
            continue;
        }
        let share = tol * (b - a) / total;
        let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
        let whole = simpson(a, b, fa, fm, fb);
        refine(&f, a, b, fa, fm, fb, whole, share, 0, &mut acc);
    }
    let q = Quadrature {
        value: acc.value,
        error_estimate: acc.error,
        panels: acc.panels,
    };
    if !q.value.is_finite() {
        return Err(Error::Numerical(
            "integrand produced a non-finite value".into(),
        ));
    }
    if acc.exhausted || q.error_estimate > tol {
        return Err(Error::Quadrature {
            estimate: q.value,
            error_estimate: q.error_estimate,
            tolerance: tol,
        });
    }
    Ok(q)
}

#[derive(Default)]
struct Accumulator {
    value: f64,
    error: f64,
    panels: usize,
    exhausted: bool,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    acc: &mut Accumulator,
) {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    let settled = diff.abs() <= 15.0 * tol;
    if settled || depth >= MAX_DEPTH || acc.exhausted || acc.panels >= MAX_PANELS {
        if !settled {
            acc.exhausted = true;
        }
        acc.value += left + right + diff / 15.0;
        acc.error += diff.abs() / 15.0;
        acc.panels += 1;
        return;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, acc);
    refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, acc);
}

/// `G(tau) = int_0^{1/2} |H_t(1, b) - F_tau(t)| dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorFunctional {
    b: f64,
    quad_tol: f64,
}

impl ErrorFunctional {
    pub fn new(b: f64, quad_tol: f64) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() {
            return Err(domain(format!("b must be finite and positive, got {b}")));
        }
        if !(quad_tol > 0.0) {
            return Err(domain(format!(
                "quadrature tolerance must be positive, got {quad_tol}"
            )));
        }
        Ok(ErrorFunctional { b, quad_tol })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    /// `|H_t - F_tau(t)|`; the difference changes sign only at `t = tau`
    /// on `[0, 1/2]`.
    pub fn integrand(&self, tau: f64, t: f64) -> f64 {
        let h = 0.5 * heinz_sum(1.0, self.b, t);
        (h - interpolator_unchecked(1.0, self.b, tau, t)).abs()
    }

    pub fn eval(&self, tau: f64) -> Result<f64> {
        if !(tau > 0.0 && tau <= 0.5) {
            return Err(domain(format!("tau must lie in (0,1/2], got {tau}")));
        }
        if self.b == 1.0 {
            return Ok(0.0);
        }
        let q =
            adaptive_simpson_split(|t| self.integrand(tau, t), &[0.0, tau, 0.5], self.quad_tol)?;
        Ok(q.value.max(0.0))
    }
}

pub fn l1_error(b: f64, tau: f64, quad_tol: f64) -> Result<f64> {
    ErrorFunctional::new(b, quad_tol)?.eval(tau)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct L1Minimum {
    pub tau: f64,
    pub value: f64,
    /// The coarse `(tau, G(tau))` grid that seeded the search.
    pub grid: Vec<(f64, f64)>,
}

/// Golden-section search for the minimizer of `f` on `[lo, hi]` down to a
/// bracket of width `width`. Returns the final bracket.
pub fn golden_section<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    width: f64,
) -> Result<(f64, f64)> {
    if !(lo < hi) || !(width > 0.0) {
        return Err(domain(format!(
            "bad golden-section bracket [{lo}, {hi}] / {width}"
        )));
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > width {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok((a, b))
}

pub fn minimize_l1(b: f64, quad_tol: f64) -> Result<L1Minimum> {
    if b == 1.0 {
        return Err(domain(
            "b = 1 makes the error vanish identically; no minimizer",
        ));
    }
    let g = ErrorFunctional::new(b, quad_tol)?;
    let step = (SEARCH_HI - SEARCH_LO) / (GRID_POINTS - 1) as f64;
    let grid = (0..GRID_POINTS)
        .map(|i| {
            let tau = SEARCH_LO + step * i as f64;
            g.eval(tau).map(|v| (tau, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let best = grid
        .iter()
        .enumerate()
        .min_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let lo = grid[best.saturating_sub(1)].0;
    let hi = grid[(best + 1).min(GRID_POINTS - 1)].0;
    let (a, z) = golden_section(|tau| g.eval(tau), lo, hi, BRACKET_WIDTH)?;
    let tau = 0.5 * (a + z);
    Ok(L1Minimum {
        tau,
        value: g.eval(tau)?,
        grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tighter {
    Log,
    #[serde(rename = "KM")]
    KittanehManasrah,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReverseComparison {
    /// `Hsum_t + t(1-t)(b-a) log(b/a) - (a+b)`
    pub log_gap: f64,
    /// `sqrt(Hsum_t^2 + 2 max{t,1-t} (a-b)^2) - (a+b)`
    pub km_gap: f64,
    pub tighter: Tighter,
}

/// Slack of the two reverse Heinz inequalities on a common scale.
pub fn compare_reverses(p: &PositivePair, t: f64) -> Result<ReverseComparison> {
    if !(t > 0.0 && t < 1.0) {
        return Err(domain(format!("t must lie in (0,1), got {t}")));
    }
    let (a, b) = (p.a(), p.b());
    let hs = heinz_sum(a, b, t);
    let log_gap = hs + t * (1.0 - t) * (b - a) * (b / a).ln() - (a + b);
    let big_r = t.max(1.0 - t);
    let km_gap = (hs * hs + 2.0 * big_r * (a - b) * (a - b)).sqrt() - (a + b);
    // Gaps closer than rounding of the shared scale are a tie.
    let tie_tol = 1e-12 * (a + b);
    let tighter = if (log_gap - km_gap).abs() <= tie_tol {
        Tighter::Tie
    } else if log_gap < km_gap {
        Tighter::Log
    } else {
        Tighter::KittanehManasrah
    };
    Ok(ReverseComparison {
        log_gap,
        km_gap,
        tighter,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub comparison: ReverseComparison,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReverseWitnesses {
    pub log: Option<Witness>,
    pub km: Option<Witness>,
    pub points: usize,
}

/// Scans `a/b` log-uniformly over `[ratio_lo, ratio_hi]` (with `b = 1`)
/// against interior `t` values, recording the first point where each
/// reverse is strictly tighter.
pub fn find_reverse_witnesses(
    ratio_lo: f64,
    ratio_hi: f64,
    ratio_steps: usize,
    t_steps: usize,
) -> Result<ReverseWitnesses> {
    if !(ratio_lo > 0.0 && ratio_lo <= ratio_hi) || ratio_steps < 2 || t_steps < 1 {
        return Err(domain(
            "witness grid needs 0 < lo <= hi and at least 2x1 points",
        ));
    }
    let mut found = ReverseWitnesses {
        log: None,
        km: None,
        points: 0,
    };
    let (llo, lhi) = (ratio_lo.ln(), ratio_hi.ln());
    for i in 0..ratio_steps {
        let a = (llo + (lhi - llo) * i as f64 / (ratio_steps - 1) as f64).exp();
        let p = PositivePair::new(a, 1.0)?;
        for j in 1..=t_steps {
            let t = j as f64 / (t_steps + 1) as f64;
            let c = compare_reverses(&p, t)?;
            found.points += 1;
            let w = Witness {
                a,
                b: 1.0,
                t,
                comparison: c,
            };
            match c.tighter {
                Tighter::Log if found.log.is_none() => found.log = Some(w),
                Tighter::KittanehManasrah if found.km.is_none() => found.km = Some(w),
                _ => {}
            }
        }
        if found.log.is_some() && found.km.is_some() {
            break;
        }
    }
    Ok(found)
}
