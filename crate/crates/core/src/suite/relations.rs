//! The matrix inequality catalog and its evaluator.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linalg::{
    det_root, log_det, psd_margin, ui_norm, ComplexMatrix, HermitianMatrix, NormKind,
};
use crate::means::{bounds_from, heinz_sandwich, real_trace, GeometricPath, MeanTriple};
use crate::outcome::{Direction, ParamEcho, RelationId, RelationOutcome};
use crate::scalar::{EvalOptions, ParamPair, Region};

/// Relative tolerance of the matrix suite.
pub const MATRIX_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatrixRelationId {
    /// `||S_nu||^2 + k (||AX+XB||^2 - ||S_tau||^2)` vs `||AX+XB||^2`.
    HsSquaredRefinement,
    /// `||P - S_tau|| / (tau(1-tau))` vs `||P - S_nu|| / (nu(1-nu))`.
    HsDifference,
    /// `||AX+XB|| <= ((M+m)/(2 sqrt(mM)))^k ||S_nu||`.
    KantorovichReverse,
    /// `|||S_nu||| + k[(p+q) - (p^tau q^{1-tau} + p^{1-tau} q^tau)] <= p+q`.
    UiNormRefinement,
    /// `|||A^t X B^{1-t}||| <= |||AX|||^t |||XB|||^{1-t}`.
    MatrixHolder,
    /// `2 |||A^{1/2} X B^{1/2}||| <= |||AX+XB|||`.
    AmGmNorm,
    /// `2 |||A^{1/2} X B^{1/2}||| <= |||S_t||| <= |||AX+XB|||`.
    MatrixHeinz,
    /// `tr(A^t B^{1-t}) C^{R(t)} >= tr^t A tr^{1-t} B`.
    TraceReverseLemma,
    TraceRefinement,
    TraceReverse,
    /// Minkowski-type additive determinant refinement.
    DetRefinement,
    DetSquared,
    DetMultiplicative,
    /// `det(A+B) <= (det(A+B)/(2^n sqrt(det AB)))^{4nu(1-nu)} det(A#_nu B + A#_{1-nu} B)`.
    DetMultReverse,
    /// `sqrt(det AB) <= det((A#_nu B + A#_{1-nu} B)/2)`.
    DetGeometricLower,
    /// `(A∇B - H_tau)/(tau(1-tau))` vs `(A∇B - H_nu)/(nu(1-nu))` in Löwner order.
    LoewnerCore,
    /// `A#B <= H_t(A,B) <= A∇B`.
    LoewnerHeinzOrder,
    /// Löwner comparison of `A + B A^{-1} B - (A#_{2s} B + A#_{2-2s} B)`.
    LoewnerSquaredParam,
}

/// Shape of the parameters a relation is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    None,
    Single,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixParams {
    None,
    Single(f64),
    Pair(ParamPair),
}

impl MatrixRelationId {
    pub const ALL: [MatrixRelationId; 18] = [
        MatrixRelationId::HsSquaredRefinement,
        MatrixRelationId::HsDifference,
        MatrixRelationId::KantorovichReverse,
        MatrixRelationId::UiNormRefinement,
        MatrixRelationId::MatrixHolder,
        MatrixRelationId::AmGmNorm,
        MatrixRelationId::MatrixHeinz,
        MatrixRelationId::TraceReverseLemma,
        MatrixRelationId::TraceRefinement,
        MatrixRelationId::TraceReverse,
        MatrixRelationId::DetRefinement,
        MatrixRelationId::DetSquared,
        MatrixRelationId::DetMultiplicative,
        MatrixRelationId::DetMultReverse,
        MatrixRelationId::DetGeometricLower,
        MatrixRelationId::LoewnerCore,
        MatrixRelationId::LoewnerHeinzOrder,
        MatrixRelationId::LoewnerSquaredParam,
    ];

    pub fn name(&self) -> &'static str {
        use MatrixRelationId::*;
        match self {
            HsSquaredRefinement => "HS_SQUARED_REFINEMENT",
            HsDifference => "HS_DIFFERENCE",
            KantorovichReverse => "KANTOROVICH_REVERSE",
            UiNormRefinement => "UI_NORM_REFINEMENT",
            MatrixHolder => "MATRIX_HOLDER",
            AmGmNorm => "AM_GM_NORM",
            MatrixHeinz => "MATRIX_HEINZ",
            TraceReverseLemma => "TRACE_REVERSE_LEMMA",
            TraceRefinement => "TRACE_REFINEMENT",
            TraceReverse => "TRACE_REVERSE",
            DetRefinement => "DET_REFINEMENT",
            DetSquared => "DET_SQUARED",
            DetMultiplicative => "DET_MULTIPLICATIVE",
            DetMultReverse => "DET_MULT_REVERSE",
            DetGeometricLower => "DET_GEOMETRIC_LOWER",
            LoewnerCore => "LOEWNER_CORE",
            LoewnerHeinzOrder => "LOEWNER_HEINZ_ORDER",
            LoewnerSquaredParam => "LOEWNER_SQUARED_PARAM",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(name))
    }

    pub fn arity(&self) -> Arity {
        use MatrixRelationId::*;
        match self {
            AmGmNorm => Arity::None,
            MatrixHolder | MatrixHeinz | TraceReverseLemma | DetMultReverse | DetGeometricLower
            | LoewnerHeinzOrder => Arity::Single,
            _ => Arity::Pair,
        }
    }

    /// Regions a two-parameter relation is stated for; empty otherwise.
    pub fn regions(&self) -> &'static [Region] {
        use MatrixRelationId::*;
        const BOTH: &[Region] = &[Region::Outside, Region::Inside];
        const OUT: &[Region] = &[Region::Outside];
        const IN: &[Region] = &[Region::Inside];
        match self {
            HsSquaredRefinement | HsDifference | DetMultiplicative | LoewnerCore
            | LoewnerSquaredParam => BOTH,
            KantorovichReverse | UiNormRefinement | TraceRefinement | DetRefinement
            | DetSquared => OUT,
            TraceReverse => IN,
            _ => &[],
        }
    }

    /// Whether the relation is stated for an arbitrary unitarily invariant norm.
    pub fn takes_norm(&self) -> bool {
        use MatrixRelationId::*;
        matches!(
            self,
            UiNormRefinement | MatrixHolder | AmGmNorm | MatrixHeinz
        )
    }

    /// Whether the relation compares Hermitian matrices in Löwner order
    /// rather than real numbers.
    pub fn is_loewner(&self) -> bool {
        use MatrixRelationId::*;
        matches!(self, LoewnerCore | LoewnerHeinzOrder | LoewnerSquaredParam)
    }
}

pub fn evaluate_matrix_relation(
    rel: MatrixRelationId,
    triple: &MeanTriple,
    params: MatrixParams,
    norm: Option<NormKind>,
    opts: &EvalOptions,
) -> Result<RelationOutcome> {
    use MatrixRelationId::*;

    let norm = match (rel.takes_norm(), norm) {
        (true, Some(k)) => k,
        (true, None) => {
            return Err(Error::Usage(format!("{} requires a norm", rel.name())));
        }
        (false, _) => NormKind::HilbertSchmidt,
    };

    let id = RelationId::Matrix(rel);
    let tol = opts.rel_tol;

    match (rel.arity(), params) {
        (Arity::Pair, MatrixParams::Pair(pp)) => {
            let region = pp.resolve(opts.allow_boundary, opts.boundary_margin)?;
            if !rel.regions().contains(&region) {
                return Err(Error::Usage(format!(
                    "{} is not stated for the {} region",
                    rel.name(),
                    region.name()
                )));
            }
            let base = if region == Region::Outside {
                Direction::Le
            } else {
                Direction::Ge
            };
            let out = eval_pair(rel, triple, &pp, base, norm, tol, id)?;
            Ok(out.with_region(Some(pp.region())).with_params(pp.echo()))
        }
        (Arity::Single, MatrixParams::Single(t)) => {
            if !(0.0..=1.0).contains(&t) {
                return Err(domain(format!("t must lie in [0,1], got {t}")));
            }
            let out = eval_single(rel, triple, t, norm, tol, id)?;
            Ok(out.with_params(ParamEcho {
                t: Some(t),
                ..ParamEcho::default()
            }))
        }
        (Arity::None, MatrixParams::None) => {
            debug_assert_eq!(rel, AmGmNorm);
            let lhs = 2.0 * ui_norm(&triple.one_sided(0.5)?, norm)?;
            let rhs = ui_norm(&triple.endpoint_sum(), norm)?;
            Ok(RelationOutcome::compare(id, lhs, rhs, Direction::Le, tol))
        }
        (arity, _) => Err(Error::Usage(format!(
            "{} expects {:?} parameters",
            rel.name(),
            arity
        ))),
    }
}

fn eval_pair(
    rel: MatrixRelationId,
    triple: &MeanTriple,
    pp: &ParamPair,
    base: Direction,
    norm: NormKind,
    tol: f64,
    id: RelationId,
) -> Result<RelationOutcome> {
    use MatrixRelationId::*;

    let (nu, tau) = (pp.nu(), pp.tau());
    let k = pp.weight();
    let compare =
        |lhs: f64, rhs: f64, dir: Direction| RelationOutcome::compare(id, lhs, rhs, dir, tol);

    Ok(match rel {
        HsSquaredRefinement => {
            let p2 = triple.endpoint_sum().frobenius_norm().powi(2);
            let s_nu = heinz_sandwich(triple, nu)?.frobenius_norm().powi(2);
            let s_tau = heinz_sandwich(triple, tau)?.frobenius_norm().powi(2);
            compare(s_nu + k * (p2 - s_tau), p2, base)
        }
        HsDifference => {
            let p = triple.endpoint_sum();
            let gap = |s: f64| -> Result<f64> {
                Ok((&p - &heinz_sandwich(triple, s)?).frobenius_norm() / (s * (1.0 - s)))
            };
            compare(gap(tau)?, gap(nu)?, base)
        }
        KantorovichReverse => {
            require_pd(triple)?;
            let sb = bounds_from(triple.a_eigen(), triple.b_eigen())?;
            let lhs = triple.endpoint_sum().frobenius_norm();
            let rhs = sb.kantorovich_root().powf(k) * heinz_sandwich(triple, nu)?.frobenius_norm();
            compare(lhs, rhs, Direction::Le)
        }
        UiNormRefinement => {
            let (p, q) = end_norms(triple, norm)?;
            let s_nu = ui_norm(&heinz_sandwich(triple, nu)?, norm)?;
            let lhs = s_nu + k * ((p + q) - scalar_heinz_sum(p, q, tau));
            compare(lhs, p + q, Direction::Le)
        }
        TraceRefinement => {
            let tr = TraceTerms::new(triple)?;
            let lhs = tr.hsum(nu)? + k * (tr.sum - tr.c.powf(big_r(tau)) * tr.hsum(tau)?);
            compare(lhs, tr.sum, Direction::Le)
        }
        TraceReverse => {
            // The weight k multiplies the last bracket; without it the
            // inequality fails already for scalar multiples of I.
            let tr = TraceTerms::new(triple)?;
            let rhs = tr.c.powf(big_r(nu)) * tr.hsum(nu)? + k * (tr.sum - tr.hsum(tau)?);
            compare(tr.sum, rhs, Direction::Le)
        }
        DetRefinement | DetSquared => {
            let path = path_of(triple)?;
            let sum = triple.a().add(triple.b());
            let lhs = det_root(&sum)?;
            let first = det_root(&path.heinz_sum(nu)?)?;
            let second = det_root(&sum.sub(&path.heinz_sum(tau)?))?;
            if rel == DetRefinement {
                compare(lhs, first + k * second, Direction::Ge)
            } else {
                compare(
                    lhs * lhs,
                    first * first + k * k * second * second,
                    Direction::Ge,
                )
            }
        }
        DetMultiplicative => {
            let path = path_of(triple)?;
            let ld_sum = log_det(&triple.a().add(triple.b()))?;
            let pow = |s: f64| -> Result<f64> {
                Ok(((ld_sum - log_det(&path.heinz_sum(s)?)?) / (s * (1.0 - s))).exp())
            };
            compare(pow(nu)?, pow(tau)?, base)
        }
        LoewnerCore => {
            let path = path_of(triple)?;
            let am = triple.a().add(triple.b()).scale(0.5);
            let gap = |s: f64| -> Result<HermitianMatrix> {
                Ok(am.sub(&path.heinz(s)?).scale(1.0 / (s * (1.0 - s))))
            };
            loewner_compare(id, &gap(tau)?, &gap(nu)?, base, tol)?
        }
        LoewnerSquaredParam => {
            let path = path_of(triple)?;
            // B A^{-1} B = A^{1/2} (A^{-1/2} B A^{-1/2})^2 A^{1/2} = A #_2 B.
            let head = triple.a().add(&path.at(2.0)?);
            let gap = |s: f64| -> Result<HermitianMatrix> {
                let tail = path.at(2.0 * s)?.add(&path.at(2.0 - 2.0 * s)?);
                Ok(head.sub(&tail).scale(1.0 / (s * (1.0 - s))))
            };
            loewner_compare(id, &gap(tau)?, &gap(nu)?, base, tol)?
        }
        _ => unreachable!("{} is not a two-parameter relation", rel.name()),
    })
}

fn eval_single(
    rel: MatrixRelationId,
    triple: &MeanTriple,
    t: f64,
    norm: NormKind,
    tol: f64,
    id: RelationId,
) -> Result<RelationOutcome> {
    use MatrixRelationId::*;

    let compare =
        |lhs: f64, rhs: f64, dir: Direction| RelationOutcome::compare(id, lhs, rhs, dir, tol);
    let w = t * (1.0 - t);

    Ok(match rel {
        MatrixHolder => {
            let (p, q) = end_norms(triple, norm)?;
            let lhs = ui_norm(&triple.one_sided(t)?, norm)?;
            compare(lhs, p.powf(t) * q.powf(1.0 - t), Direction::Le)
        }
        MatrixHeinz => {
            let low = 2.0 * ui_norm(&triple.one_sided(0.5)?, norm)?;
            let mid = ui_norm(&heinz_sandwich(triple, t)?, norm)?;
            let high = ui_norm(&triple.endpoint_sum(), norm)?;
            RelationOutcome::chain(id, low, mid, high, tol)
        }
        TraceReverseLemma => {
            let tr = TraceTerms::new(triple)?;
            let lhs = tr.product(t)? * tr.c.powf(big_r(t));
            let rhs = tr.tr_a.powf(t) * tr.tr_b.powf(1.0 - t);
            compare(lhs, rhs, Direction::Ge)
        }
        DetMultReverse => {
            let path = path_of(triple)?;
            let n = triple.n() as f64;
            let ld_sum = log_det(&triple.a().add(triple.b()))?;
            let ld_a = log_det(triple.a())?;
            let ld_b = log_det(triple.b())?;
            let ld_h = log_det(&path.heinz_sum(t)?)?;
            let log_rhs =
                4.0 * w * (ld_sum - n * std::f64::consts::LN_2 - 0.5 * (ld_a + ld_b)) + ld_h;
            compare(ld_sum.exp(), log_rhs.exp(), Direction::Le)
        }
        DetGeometricLower => {
            let path = path_of(triple)?;
            let lhs = (0.5 * (log_det(triple.a())? + log_det(triple.b())?)).exp();
            let rhs = log_det(&path.heinz(t)?)?.exp();
            compare(lhs, rhs, Direction::Le)
        }
        LoewnerHeinzOrder => {
            let path = path_of(triple)?;
            let h = path.heinz(t)?;
            let lower = h.sub(&path.at(0.5)?);
            let upper = triple.a().add(triple.b()).scale(0.5).sub(&h);
            let margin = psd_margin(&lower)?.min(psd_margin(&upper)?);
            RelationOutcome::compare(id, margin, 0.0, Direction::Ge, tol)
        }
        _ => unreachable!("{} is not a single-parameter relation", rel.name()),
    })
}

/// `small <= large` in Löwner order, reported as the normalized smallest
/// eigenvalue of the difference against zero. `Direction::Ge` flips the
/// roles of the two sides.
fn loewner_compare(
    id: RelationId,
    left: &HermitianMatrix,
    right: &HermitianMatrix,
    dir: Direction,
    tol: f64,
) -> Result<RelationOutcome> {
    let diff = match dir {
        Direction::Le => right.sub(left),
        Direction::Ge => left.sub(right),
    };
    let margin = psd_margin(&diff)?;
    Ok(RelationOutcome::compare(
        id,
        margin,
        0.0,
        Direction::Ge,
        tol,
    ))
}

fn end_norms(triple: &MeanTriple, norm: NormKind) -> Result<(f64, f64)> {
    let p = ui_norm(&(triple.a().as_matrix() * triple.x()), norm)?;
    let q = ui_norm(&(triple.x() * triple.b().as_matrix()), norm)?;
    Ok((p, q))
}

fn scalar_heinz_sum(p: f64, q: f64, t: f64) -> f64 {
    p.powf(t) * q.powf(1.0 - t) + p.powf(1.0 - t) * q.powf(t)
}

fn big_r(t: f64) -> f64 {
    t.max(1.0 - t)
}

fn require_pd(triple: &MeanTriple) -> Result<()> {
    for e in [triple.a_eigen(), triple.b_eigen()] {
        if !(e.min_value() > 0.0) {
            return Err(Error::NotPositive {
                min_eigenvalue: e.min_value(),
            });
        }
    }
    Ok(())
}

fn path_of(triple: &MeanTriple) -> Result<GeometricPath> {
    require_pd(triple)?;
    GeometricPath::new(triple.a(), triple.b())
}

/// Traces shared by the trace theorems.
struct TraceTerms<'a> {
    triple: &'a MeanTriple,
    tr_a: f64,
    tr_b: f64,
    /// `tr(A+B)`
    sum: f64,
    /// `tr A tr B / tr^2(A^{1/2} B^{1/2})`
    c: f64,
}

impl<'a> TraceTerms<'a> {
    fn new(triple: &'a MeanTriple) -> Result<Self> {
        require_pd(triple)?;
        let tr_a = triple.a().trace();
        let tr_b = triple.b().trace();
        let mut terms = TraceTerms {
            triple,
            tr_a,
            tr_b,
            sum: tr_a + tr_b,
            c: 1.0,
        };
        let half = terms.product(0.5)?;
        terms.c = tr_a * tr_b / (half * half);
        Ok(terms)
    }

    /// `tr(A^t B^{1-t})`
    fn product(&self, t: f64) -> Result<f64> {
        let m = self.triple.a_pow(t)?.as_matrix() * self.triple.b_pow(1.0 - t)?.as_matrix();
        real_trace(&m)
    }

    /// `tr(A^t B^{1-t} + A^{1-t} B^t)`
    fn hsum(&self, t: f64) -> Result<f64> {
        Ok(self.product(t)? + self.product(1.0 - t)?)
    }
}

/// `||A^t X B^{1-t} + A^{1-t} X B^t||_2^2` through the spectral
/// decompositions `A = U diag(l) U*`, `B = V diag(m) V*`:
/// `sum_ij (l_i^t m_j^{1-t} + l_i^{1-t} m_j^t)^2 |y_ij|^2` with `Y = U* X V`.
pub fn hs_schur_oracle(triple: &MeanTriple, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("t must lie in [0,1], got {t}")));
    }
    let (ea, eb) = (triple.a_eigen(), triple.b_eigen());
    let y = &(&ea.vectors().adjoint() * triple.x()) * eb.vectors();
    let n = triple.n();
    let mut acc = 0.0;
    for i in 0..n {
        let l = ea.values()[i].max(0.0);
        for j in 0..n {
            let m = eb.values()[j].max(0.0);
            let w = l.powf(t) * m.powf(1.0 - t) + l.powf(1.0 - t) * m.powf(t);
            acc += w * w * y[(i, j)].norm_sqr();
        }
    }
    Ok(acc)
}

/// The two expressions of the `tau = 1/2` refining term that must agree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Specialization {
    /// The general refining term evaluated at `tau = 1/2`.
    pub general: f64,
    /// The closed form obtained by simplifying at `tau = 1/2`.
    pub closed_form: f64,
    /// Size of the operands both expressions subtract, `4nu(1-nu)` times
    /// `||AX+XB||^2` or `|||AX||| + |||XB|||`. Rounding in either
    /// expression is relative to this, not to the (possibly cancelled)
    /// result.
    pub scale: f64,
}

impl Specialization {
    pub fn relative_gap(&self) -> f64 {
        let scale = self
            .general
            .abs()
            .max(self.closed_form.abs())
            .max(self.scale);
        if scale == 0.0 {
            0.0
        } else {
            (self.general - self.closed_form).abs() / scale
        }
    }
}

/// `k (||AX+XB||^2 - ||S_{1/2}||^2)` at `tau = 1/2` against
/// `4 nu(1-nu) (||AX+XB||^2 - 4 ||A^{1/2} X B^{1/2}||^2)`.
pub fn hs_half_specialization(triple: &MeanTriple, nu: f64) -> Result<Specialization> {
    let pp = ParamPair::new(nu, 0.5)?;
    let p2 = triple.endpoint_sum().frobenius_norm().powi(2);
    let s_half = heinz_sandwich(triple, 0.5)?.frobenius_norm().powi(2);
    let g = triple.one_sided(0.5)?.frobenius_norm().powi(2);
    Ok(Specialization {
        general: pp.weight() * (p2 - s_half),
        closed_form: 4.0 * nu * (1.0 - nu) * (p2 - 4.0 * g),
        scale: 4.0 * nu * (1.0 - nu) * p2,
    })
}

/// `k [(p+q) - (p^{1/2} q^{1/2} + p^{1/2} q^{1/2})]` at `tau = 1/2` against
/// `4 nu(1-nu) (sqrt p - sqrt q)^2`, with `p = |||AX|||`, `q = |||XB|||`.
pub fn ui_half_specialization(
    triple: &MeanTriple,
    nu: f64,
    norm: NormKind,
) -> Result<Specialization> {
    let pp = ParamPair::new(nu, 0.5)?;
    let (p, q) = end_norms(triple, norm)?;
    let d = p.sqrt() - q.sqrt();
    Ok(Specialization {
        general: pp.weight() * ((p + q) - scalar_heinz_sum(p, q, 0.5)),
        closed_form: 4.0 * nu * (1.0 - nu) * d * d,
        scale: 4.0 * nu * (1.0 - nu) * (p + q),
    })
}

/// The two-dimensional instance refuting
/// `2|||A^{1/2} X B^{1/2}||| + (sqrt|||AX||| - sqrt|||XB|||)^2 <= |||AX+XB|||`.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub x: [[f64; 2]; 2],
    pub lhs: f64,
    pub rhs: f64,
    pub violated: bool,
}

pub fn counterexample() -> Result<Counterexample> {
    let a_diag = [1.0, 1.5];
    let b_diag = [1.0, 0.5];
    let triple = MeanTriple::new(
        HermitianMatrix::from_real_diag(&a_diag),
        HermitianMatrix::from_real_diag(&b_diag),
        ComplexMatrix::identity(2),
    )?;
    let norm = NormKind::Spectral;
    let (p, q) = end_norms(&triple, norm)?;
    let d = p.sqrt() - q.sqrt();
    let lhs = 2.0 * ui_norm(&triple.one_sided(0.5)?, norm)? + d * d;
    let rhs = ui_norm(&triple.endpoint_sum(), norm)?;
    Ok(Counterexample {
        a: a_diag,
        b: b_diag,
        x: [[1.0, 0.0], [0.0, 1.0]],
        lhs,
        rhs,
        violated: lhs > rhs,
    })
}
