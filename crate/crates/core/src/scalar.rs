//! Scalar Heinz/Heron mean algebra and the scalar inequality catalog.
//!
//! Every relation is evaluated in `(a, b)` form. The ratio form
//! `1 + c - (c^t + c^{1-t})` loses digits when `a ~ b`; the `(a, b)` form
//! keeps the cancellation confined to one subtraction of comparable terms.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::outcome::{Direction, ParamEcho, RelationId, RelationOutcome, DEFAULT_REL_TOL};

/// Width of the band around `r(tau)` and `R(tau)` that is classified as
/// [`Region::Boundary`].
pub const DEFAULT_BOUNDARY_MARGIN: f64 = 1e-3;

/// `f_ratio` and `mult_ratio` refuse parameters this close to the poles.
pub const POLE_EXCLUSION: f64 = 1e-6;

/// A pair of strictly positive reals with their ratio `c = a / b` cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivePair {
    a: f64,
    b: f64,
    c: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(domain(format!(
                "a and b must be finite and positive, got a={a}, b={b}"
            )));
        }
        Ok(PositivePair { a, b, c: a / b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn ratio(&self) -> f64 {
        self.c
    }

    pub fn swapped(&self) -> Self {
        PositivePair::new(self.b, self.a).expect("swap of a valid pair")
    }

    fn arith(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    fn geo(&self) -> f64 {
        (self.a * self.b).sqrt()
    }

    fn heinz_sum(&self, t: f64) -> f64 {
        heinz_sum(self.a, self.b, t)
    }
}

/// Position of `nu` relative to the band `[r(tau), R(tau)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Region {
    Outside,
    Inside,
    Boundary,
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::Outside => "OUTSIDE",
            Region::Inside => "INSIDE",
            Region::Boundary => "BOUNDARY",
        }
    }
}

/// `(nu, tau)` in the open unit square together with its region class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPair {
    nu: f64,
    tau: f64,
    r_tau: f64,
    big_r_tau: f64,
    region: Region,
    /// Region with the boundary margin set to zero; fixes the comparison
    /// direction when a boundary pair is evaluated on opt-in.
    #[serde(skip)]
    nearest: Region,
}

impl ParamPair {
    pub fn new(nu: f64, tau: f64) -> Result<Self> {
        Self::with_margin(nu, tau, DEFAULT_BOUNDARY_MARGIN)
    }

    pub fn with_margin(nu: f64, tau: f64, delta: f64) -> Result<Self> {
        if !(nu > 0.0 && nu < 1.0) || !(tau > 0.0 && tau < 1.0) {
            return Err(domain(format!(
                "nu and tau must lie in (0,1), got nu={nu}, tau={tau}"
            )));
        }
        if !(delta >= 0.0) {
            return Err(domain(format!("boundary margin must be >= 0, got {delta}")));
        }
        let r_tau = tau.min(1.0 - tau);
        let big_r_tau = 1.0 - r_tau;
        let region = if nu <= r_tau - delta || nu >= big_r_tau + delta {
            Region::Outside
        } else if nu >= r_tau + delta && nu <= big_r_tau - delta {
            Region::Inside
        } else {
            Region::Boundary
        };
        let nearest = if nu <= r_tau || nu >= big_r_tau {
            Region::Outside
        } else {
            Region::Inside
        };
        Ok(ParamPair {
            nu,
            tau,
            r_tau,
            big_r_tau,
            region,
            nearest,
        })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `min{tau, 1 - tau}`
    pub fn r_tau(&self) -> f64 {
        self.r_tau
    }

    /// `max{tau, 1 - tau}`
    pub fn big_r_tau(&self) -> f64 {
        self.big_r_tau
    }

    pub fn region(&self) -> Region {
        self.region
    }

    /// `nu(1-nu) / (tau(1-tau))`, the weight of every quadratic refining term.
    pub fn weight(&self) -> f64 {
        self.nu * (1.0 - self.nu) / (self.tau * (1.0 - self.tau))
    }

    /// Direction of the base comparison `(... at tau) <= (... at nu)` for
    /// this pair, or an error for boundary pairs without opt-in.
    pub(crate) fn resolve(&self, allow_boundary: bool, delta: f64) -> Result<Region> {
        match self.region {
            Region::Boundary if !allow_boundary => Err(Error::BoundaryRegion { delta }),
            Region::Boundary => Ok(self.nearest),
            r => Ok(r),
        }
    }

    pub(crate) fn echo(&self) -> ParamEcho {
        ParamEcho {
            t: None,
            nu: Some(self.nu),
            tau: Some(self.tau),
        }
    }
}

/// Heinz mean `H_t(a,b) = (a^t b^{1-t} + a^{1-t} b^t) / 2`.
pub fn heinz(p: &PositivePair, t: f64) -> Result<f64> {
    check_closed_unit(t, "t")?;
    Ok(0.5 * p.heinz_sum(t))
}

/// Heron mean `K_t(a,b) = (1-t) sqrt(ab) + t (a+b)/2`.
pub fn heron(p: &PositivePair, t: f64) -> Result<f64> {
    check_closed_unit(t, "t")?;
    Ok((1.0 - t) * p.geo() + t * p.arith())
}

/// Weighted arithmetic `(1-t)a + tb` and geometric `a^{1-t} b^t` means.
pub fn weighted_means(p: &PositivePair, t: f64) -> Result<(f64, f64)> {
    check_closed_unit(t, "t")?;
    let arith = (1.0 - t) * p.a + t * p.b;
    let geo = p.a.powf(1.0 - t) * p.b.powf(t);
    Ok((arith, geo))
}

/// `(1 + c - (c^t + c^{1-t})) / (t(1-t))`, decreasing on `(0, 1/2)` and
/// increasing on `(1/2, 1)`.
pub fn f_ratio(c: f64, t: f64) -> Result<f64> {
    check_ratio_args(c, t)?;
    Ok((1.0 + c - (c.powf(t) + c.powf(1.0 - t))) / (t * (1.0 - t)))
}

/// `((1 + c) / (c^t + c^{1-t}))^{1/(t(1-t))}`, increasing on `(0, 1/2)` and
/// decreasing on `(1/2, 1)`.
pub fn mult_ratio(c: f64, t: f64) -> Result<f64> {
    check_ratio_args(c, t)?;
    let base = (1.0 + c) / (c.powf(t) + c.powf(1.0 - t));
    Ok((base.ln() / (t * (1.0 - t))).exp())
}

/// The quadratic in `t` agreeing with `H_t(a,b)` at `t = 0, tau, 1`.
pub fn interpolator_f(p: &PositivePair, tau: f64, t: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(domain(format!("tau must lie in (0,1), got {tau}")));
    }
    check_closed_unit(t, "t")?;
    Ok(interpolator_unchecked(p.a, p.b, tau, t))
}

pub(crate) fn interpolator_unchecked(a: f64, b: f64, tau: f64, t: f64) -> f64 {
    let am = 0.5 * (a + b);
    let gap = 0.5 * (a + b - heinz_sum(a, b, tau));
    am - gap / (tau * (1.0 - tau)) * t * (1.0 - t)
}

/// `(1 - 2t)^2 = 1 - 4t(1-t)`; the Heron weight that dominates `H_t`.
pub fn alpha(t: f64) -> Result<f64> {
    check_closed_unit(t, "t")?;
    let d = 1.0 - 2.0 * t;
    Ok(d * d)
}

pub(crate) fn heinz_sum(a: f64, b: f64, t: f64) -> f64 {
    a.powf(t) * b.powf(1.0 - t) + a.powf(1.0 - t) * b.powf(t)
}

fn check_closed_unit(t: f64, name: &str) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in [0,1], got {t}")))
    }
}

fn check_ratio_args(c: f64, t: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(domain(format!("c must be finite and positive, got {c}")));
    }
    if !(POLE_EXCLUSION..=1.0 - POLE_EXCLUSION).contains(&t) {
        return Err(domain(format!(
            "t must lie in (0,1) at least {POLE_EXCLUSION:e} away from the poles, got {t}"
        )));
    }
    Ok(())
}

/// The scalar inequalities of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScalarRelationId {
    /// `(a∇b - H_tau)/(tau(1-tau))` vs `(a∇b - H_nu)/(nu(1-nu))`.
    CoreComparison,
    /// `Hsum_t + 4t(1-t)(sqrt a - sqrt b)^2 <= a + b`.
    QuadRefinement,
    /// `H_t <= K_{alpha(t)}`.
    HeronBound,
    /// Core comparison with squared means.
    Squared,
    /// `Hsum_t + t(1-t)(b-a) log(b/a) >= a + b`.
    LogReverse,
    /// `Hsum_t^2 + 2 max{t,1-t} (a-b)^2 >= (a+b)^2`.
    KittManReverse,
    /// `Hsum_t^2 + 2t(1-t)(b^2-a^2) log(b/a) >= (a+b)^2`.
    SquaredLog,
    /// `((a∇b)/H_nu)^{1/(nu(1-nu))}` vs `((a∇b)/H_tau)^{1/(tau(1-tau))}`.
    Multiplicative,
    /// `a + b <= ((a∇b)/(a#b))^{4t(1-t)} Hsum_t`.
    MultReverseHalf,
    /// `2 sqrt(ab) <= (a+b) (Hsum_nu/(a+b))^{1/(4nu(1-nu))} <= Hsum_nu`.
    GeometricRefinement,
}

impl ScalarRelationId {
    pub const ALL: [ScalarRelationId; 10] = [
        ScalarRelationId::CoreComparison,
        ScalarRelationId::QuadRefinement,
        ScalarRelationId::HeronBound,
        ScalarRelationId::Squared,
        ScalarRelationId::LogReverse,
        ScalarRelationId::KittManReverse,
        ScalarRelationId::SquaredLog,
        ScalarRelationId::Multiplicative,
        ScalarRelationId::MultReverseHalf,
        ScalarRelationId::GeometricRefinement,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScalarRelationId::CoreComparison => "CORE_COMPARISON",
            ScalarRelationId::QuadRefinement => "QUAD_REFINEMENT",
            ScalarRelationId::HeronBound => "HERON_BOUND",
            ScalarRelationId::Squared => "SQUARED",
            ScalarRelationId::LogReverse => "LOG_REVERSE",
            ScalarRelationId::KittManReverse => "KITT_MAN_REVERSE",
            ScalarRelationId::SquaredLog => "SQUARED_LOG",
            ScalarRelationId::Multiplicative => "MULTIPLICATIVE",
            ScalarRelationId::MultReverseHalf => "MULT_REVERSE_HALF",
            ScalarRelationId::GeometricRefinement => "GEOMETRIC_REFINEMENT",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(name))
    }

    /// Whether the relation compares two parameters `(nu, tau)`.
    pub fn takes_pair(&self) -> bool {
        matches!(
            self,
            ScalarRelationId::CoreComparison
                | ScalarRelationId::Squared
                | ScalarRelationId::Multiplicative
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarParams {
    Single(f64),
    Pair(ParamPair),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub allow_boundary: bool,
    pub boundary_margin: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            rel_tol: DEFAULT_REL_TOL,
            allow_boundary: false,
            boundary_margin: DEFAULT_BOUNDARY_MARGIN,
        }
    }
}

impl EvalOptions {
    pub fn with_tol(rel_tol: f64) -> Self {
        EvalOptions {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn allowing_boundary(mut self) -> Self {
        self.allow_boundary = true;
        self
    }

    pub fn with_margin(mut self, delta: f64) -> Self {
        self.boundary_margin = delta;
        self
    }
}

pub fn evaluate_scalar_relation(
    rel: ScalarRelationId,
    p: &PositivePair,
    params: ScalarParams,
    opts: &EvalOptions,
) -> Result<RelationOutcome> {
    let id = RelationId::Scalar(rel);
    let tol = opts.rel_tol;
    let (a, b) = (p.a, p.b);

    match (rel.takes_pair(), params) {
        (true, ScalarParams::Pair(pp)) => {
            let region = pp.resolve(opts.allow_boundary, opts.boundary_margin)?;
            let (nu, tau) = (pp.nu, pp.tau);
            let base = if region == Region::Outside {
                Direction::Le
            } else {
                Direction::Ge
            };
            let (lhs, rhs) = match rel {
                ScalarRelationId::CoreComparison => {
                    let gap = |s: f64| 0.5 * (a + b - p.heinz_sum(s)) / (s * (1.0 - s));
                    (gap(tau), gap(nu))
                }
                ScalarRelationId::Squared => {
                    // (a∇b)^2 - H^2 factored to keep the cancellation in one place.
                    let gap = |s: f64| {
                        let h = 0.5 * p.heinz_sum(s);
                        let d = 0.5 * (a + b - p.heinz_sum(s));
                        d * (p.arith() + h) / (s * (1.0 - s))
                    };
                    (gap(tau), gap(nu))
                }
                ScalarRelationId::Multiplicative => {
                    let pow = |s: f64| {
                        let ratio = p.arith() / (0.5 * p.heinz_sum(s));
                        (ratio.ln() / (s * (1.0 - s))).exp()
                    };
                    // The displayed form puts nu on the left.
                    (pow(nu), pow(tau))
                }
                _ => unreachable!(),
            };
            Ok(RelationOutcome::compare(id, lhs, rhs, base, tol)
                .with_region(Some(pp.region))
                .with_params(pp.echo()))
        }
        (false, ScalarParams::Single(t)) => {
            let open = rel == ScalarRelationId::GeometricRefinement;
            if open && !(t > 0.0 && t < 1.0) {
                return Err(domain(format!("nu must lie in (0,1), got {t}")));
            }
            check_closed_unit(t, "t")?;
            let hs = p.heinz_sum(t);
            let w = t * (1.0 - t);
            let out = match rel {
                ScalarRelationId::QuadRefinement => {
                    let d = a.sqrt() - b.sqrt();
                    RelationOutcome::compare(id, hs + 4.0 * w * d * d, a + b, Direction::Le, tol)
                }
                ScalarRelationId::HeronBound => {
                    let k = heron(p, alpha(t)?)?;
                    RelationOutcome::compare(id, 0.5 * hs, k, Direction::Le, tol)
                }
                ScalarRelationId::LogReverse => {
                    let rhs = hs + w * (b - a) * (b / a).ln();
                    RelationOutcome::compare(id, a + b, rhs, Direction::Le, tol)
                }
                ScalarRelationId::KittManReverse => {
                    let big_r = t.max(1.0 - t);
                    let rhs = hs * hs + 2.0 * big_r * (a - b) * (a - b);
                    RelationOutcome::compare(id, (a + b) * (a + b), rhs, Direction::Le, tol)
                }
                ScalarRelationId::SquaredLog => {
                    let rhs = hs * hs + 2.0 * w * (b * b - a * a) * (b / a).ln();
                    RelationOutcome::compare(id, (a + b) * (a + b), rhs, Direction::Le, tol)
                }
                ScalarRelationId::MultReverseHalf => {
                    let rhs = (p.arith() / p.geo()).powf(4.0 * w) * hs;
                    RelationOutcome::compare(id, a + b, rhs, Direction::Le, tol)
                }
                ScalarRelationId::GeometricRefinement => {
                    let mid = (a + b) * (hs / (a + b)).powf(1.0 / (4.0 * w));
                    RelationOutcome::chain(id, 2.0 * p.geo(), mid, hs, tol)
                }
                _ => unreachable!(),
            };
            Ok(out.with_params(ParamEcho {
                t: Some(t),
                nu: None,
                tau: None,
            }))
        }
        (true, ScalarParams::Single(_)) => Err(Error::Usage(format!(
            "{} compares two parameters; pass a ParamPair",
            rel.name()
        ))),
        (false, ScalarParams::Pair(_)) => Err(Error::Usage(format!(
            "{} takes a single parameter t",
            rel.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: f64, b: f64) -> PositivePair {
        PositivePair::new(a, b).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + y.abs())
    }

    #[test]
    fn rejects_nonpositive_pairs() {
        assert!(PositivePair::new(0.0, 1.0).is_err());
        assert!(PositivePair::new(1.0, -2.0).is_err());
        assert!(PositivePair::new(f64::NAN, 1.0).is_err());
        assert_eq!(pair(6.0, 3.0).ratio(), 2.0);
    }

    #[test]
    fn heinz_examples() {
        assert_eq!(heinz(&pair(1.0, 1.0), 0.3).unwrap(), 1.0);
        assert!(close(heinz(&pair(4.0, 1.0), 0.5).unwrap(), 2.0, 1e-15));
        assert!(close(
            heinz(&pair(4.0, 1.0), 0.25).unwrap(),
            2.121_320_343_559_643,
            1e-14
        ));
        assert!(heinz(&pair(4.0, 1.0), 1.5).is_err());
        assert!(heinz(&pair(4.0, 1.0), -0.1).is_err());
    }

    #[test]
    fn heron_examples() {
        let p = pair(4.0, 1.0);
        assert_eq!(heron(&p, 0.0).unwrap(), 2.0);
        assert_eq!(heron(&p, 1.0).unwrap(), 2.5);
        assert_eq!(heron(&p, 0.25).unwrap(), 2.125);
        assert!(heron(&p, 2.0).is_err());
    }

    #[test]
    fn weighted_means_examples() {
        let p = pair(4.0, 1.0);
        assert_eq!(weighted_means(&p, 0.0).unwrap(), (4.0, 4.0));
        assert_eq!(weighted_means(&p, 1.0).unwrap(), (1.0, 1.0));
        let (ar, ge) = weighted_means(&p, 0.5).unwrap();
        assert_eq!(ar, 2.5);
        assert!(close(ge, 2.0, 1e-15));
    }

    #[test]
    fn f_ratio_examples() {
        assert_eq!(f_ratio(1.0, 0.37).unwrap(), 0.0);
        assert!(close(f_ratio(4.0, 0.5).unwrap(), 4.0, 1e-14));
        // (5 - (4^{1/4} + 4^{3/4})) / 0.1875
        assert!(close(
            f_ratio(4.0, 0.25).unwrap(),
            4.039_249_668_697_143,
            1e-13
        ));
        assert!(f_ratio(4.0, 0.0).is_err());
        assert!(f_ratio(4.0, 1.0).is_err());
        assert!(f_ratio(4.0, 5e-7).is_err());
        assert!(f_ratio(0.0, 0.5).is_err());
        assert!(f_ratio(-1.0, 0.5).is_err());
    }

    #[test]
    fn mult_ratio_examples() {
        assert!(close(mult_ratio(1.0, 0.2).unwrap(), 1.0, 1e-15));
        assert!(close(mult_ratio(4.0, 0.5).unwrap(), 2.441_406_25, 1e-14));
        // (5 / (4^{1/4} + 4^{3/4}))^{16/3}
        assert!(close(
            mult_ratio(4.0, 0.25).unwrap(),
            2.401_301_411_692_58,
            1e-13
        ));
        assert!(mult_ratio(4.0, 1.0).is_err());
    }

    #[test]
    fn interpolator_examples() {
        let p = pair(4.0, 1.0);
        assert_eq!(interpolator_f(&p, 0.5, 0.0).unwrap(), 2.5);
        assert!(close(interpolator_f(&p, 0.5, 0.5).unwrap(), 2.0, 1e-15));
        assert!(close(interpolator_f(&p, 0.5, 0.25).unwrap(), 2.125, 1e-15));
        assert!(interpolator_f(&p, 0.0, 0.25).is_err());
        assert!(interpolator_f(&p, 1.0, 0.25).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(0.5).unwrap(), 0.0);
        assert_eq!(alpha(0.0).unwrap(), 1.0);
        assert_eq!(alpha(0.25).unwrap(), 0.25);
    }

    #[test]
    fn region_classification() {
        let pp = ParamPair::new(0.1, 0.3).unwrap();
        assert_eq!(pp.region(), Region::Outside);
        assert_eq!(pp.r_tau() + pp.big_r_tau(), 1.0);
        assert_eq!(ParamPair::new(0.5, 0.3).unwrap().region(), Region::Inside);
        assert_eq!(ParamPair::new(0.8, 0.3).unwrap().region(), Region::Outside);
        assert_eq!(
            ParamPair::new(0.3005, 0.3).unwrap().region(),
            Region::Boundary
        );
        assert_eq!(ParamPair::new(0.7, 0.3).unwrap().region(), Region::Boundary);
        assert_eq!(ParamPair::new(0.5, 0.5).unwrap().region(), Region::Boundary);
        assert!(ParamPair::new(0.0, 0.3).is_err());
        assert!(ParamPair::new(0.2, 1.0).is_err());
    }

    #[test]
    fn heron_bound_example() {
        let o = evaluate_scalar_relation(
            ScalarRelationId::HeronBound,
            &pair(4.0, 1.0),
            ScalarParams::Single(0.25),
            &EvalOptions::default(),
        )
        .unwrap();
        assert!(close(o.lhs, 2.121_320_3, 1e-7));
        assert!(close(o.rhs, 2.125, 1e-15));
        assert!(o.holds);
    }

    #[test]
    fn core_comparison_on_diagonal_needs_opt_in() {
        let pp = ParamPair::new(0.3, 0.3).unwrap();
        let p = pair(4.0, 1.0);
        let err = evaluate_scalar_relation(
            ScalarRelationId::CoreComparison,
            &p,
            ScalarParams::Pair(pp),
            &EvalOptions::default(),
        );
        assert!(matches!(err, Err(Error::BoundaryRegion { .. })));
        let o = evaluate_scalar_relation(
            ScalarRelationId::CoreComparison,
            &p,
            ScalarParams::Pair(pp),
            &EvalOptions::default().allowing_boundary(),
        )
        .unwrap();
        assert_eq!(o.margin, 0.0);
        assert!(o.holds);
        assert_eq!(o.region, Some(Region::Boundary));
    }

    #[test]
    fn log_reverse_example() {
        let e2 = std::f64::consts::E.powi(2);
        let o = evaluate_scalar_relation(
            ScalarRelationId::LogReverse,
            &pair(1.0, e2),
            ScalarParams::Single(0.5),
            &EvalOptions::default(),
        )
        .unwrap();
        assert!(close(o.lhs, 8.389_056_1, 1e-8));
        // 2e + (e^2 - 1)/2
        assert!(close(o.rhs, 8.631_091_7, 1e-8));
        assert!(o.holds);
    }

    #[test]
    fn kitt_man_equality_at_equal_arguments() {
        for t in [0.0, 0.2, 0.5, 0.9] {
            let o = evaluate_scalar_relation(
                ScalarRelationId::KittManReverse,
                &pair(2.5, 2.5),
                ScalarParams::Single(t),
                &EvalOptions::default(),
            )
            .unwrap();
            // Both sides are 25 up to rounding of the powers.
            assert!(o.margin.abs() < 1e-13 * 25.0);
            assert!(o.holds);
        }
    }

    #[test]
    fn squared_log_holds_in_proved_direction() {
        let o = evaluate_scalar_relation(
            ScalarRelationId::SquaredLog,
            &pair(1.0, std::f64::consts::E),
            ScalarParams::Single(0.5),
            &EvalOptions::default(),
        )
        .unwrap();
        assert!(o.holds);
        assert!(o.rhs > o.lhs);
    }

    #[test]
    fn arity_mismatch_is_a_usage_error() {
        let p = pair(2.0, 3.0);
        let pp = ParamPair::new(0.1, 0.3).unwrap();
        assert!(matches!(
            evaluate_scalar_relation(
                ScalarRelationId::CoreComparison,
                &p,
                ScalarParams::Single(0.2),
                &EvalOptions::default()
            ),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            evaluate_scalar_relation(
                ScalarRelationId::HeronBound,
                &p,
                ScalarParams::Pair(pp),
                &EvalOptions::default()
            ),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn inside_reverses_direction() {
        let p = pair(9.0, 1.0);
        let inside = ParamPair::new(0.45, 0.2).unwrap();
        let o = evaluate_scalar_relation(
            ScalarRelationId::CoreComparison,
            &p,
            ScalarParams::Pair(inside),
            &EvalOptions::default(),
        )
        .unwrap();
        assert_eq!(o.direction, Direction::Ge);
        assert!(o.holds && o.margin > 0.0);
    }

    #[test]
    fn names_round_trip() {
        for r in ScalarRelationId::ALL {
            assert_eq!(ScalarRelationId::from_name(r.name()), Some(r));
        }
    }
}
