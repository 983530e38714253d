//! Randomized verification of the scalar and matrix catalogs.

mod relations;
mod report;

pub use relations::{
    counterexample, evaluate_matrix_relation, hs_half_specialization, hs_schur_oracle,
    ui_half_specialization, Arity, Counterexample, MatrixParams, MatrixRelationId, Specialization,
    MATRIX_REL_TOL,
};
pub use report::{EntryReport, FailureRecord, Tolerances, TrialParams, VerificationReport};

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::linalg::{
    random_complex, random_pd_from, NormKind, SeededRng, DEFAULT_COND_CAP, MAX_RANDOM_DIM,
};
use crate::means::MeanTriple;
use crate::outcome::{RelationOutcome, DEFAULT_REL_TOL};
use crate::scalar::{
    evaluate_scalar_relation, EvalOptions, ParamPair, PositivePair, Region, ScalarParams,
    ScalarRelationId, DEFAULT_BOUNDARY_MARGIN,
};

use report::{EntryKey, Tally};

pub const DEFAULT_TRIALS: usize = 500;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_DIMS: (usize, usize) = (2, 6);
/// Range of the log-uniform scalar samples.
pub const SCALAR_RANGE: (f64, f64) = (1e-4, 1e4);

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub dims: (usize, usize),
    pub relations: Vec<MatrixRelationId>,
    pub norms: Vec<NormKind>,
    pub rel_tol: f64,
    pub cond_cap: f64,
    pub boundary_margin: f64,
}

impl Default for MatrixSuiteConfig {
    fn default() -> Self {
        MatrixSuiteConfig {
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            dims: DEFAULT_DIMS,
            relations: MatrixRelationId::ALL.to_vec(),
            norms: NormKind::REPRESENTATIVES.to_vec(),
            rel_tol: MATRIX_REL_TOL,
            cond_cap: DEFAULT_COND_CAP,
            boundary_margin: DEFAULT_BOUNDARY_MARGIN,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarSuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub relations: Vec<ScalarRelationId>,
    pub rel_tol: f64,
    pub boundary_margin: f64,
}

impl Default for ScalarSuiteConfig {
    fn default() -> Self {
        ScalarSuiteConfig {
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            relations: ScalarRelationId::ALL.to_vec(),
            rel_tol: DEFAULT_REL_TOL,
            boundary_margin: DEFAULT_BOUNDARY_MARGIN,
        }
    }
}

/// One randomly drawn matrix instance with its parameters.
#[derive(Debug, Clone)]
pub struct MatrixTrial {
    pub triple: MeanTriple,
    pub t: f64,
    pub outside: ParamPair,
    pub inside: ParamPair,
}

/// Draws trial `index` of a run: dimension, `A`, `B`, `X`, `t`, then one
/// pair in each region, always in that order.
pub fn draw_matrix_trial(
    seed: u64,
    index: usize,
    dims: (usize, usize),
    cond_cap: f64,
    delta: f64,
) -> Result<MatrixTrial> {
    let mut rng = SeededRng::for_trial(seed, index as u64);
    let n = rng.integer_in(dims.0, dims.1);
    let a = random_pd_from(&mut rng, n, cond_cap)?;
    let b = random_pd_from(&mut rng, n, cond_cap)?;
    let x = random_complex(&mut rng, n, n);
    let t = rng.uniform_in(delta, 1.0 - delta);
    let outside = draw_pair(&mut rng, Region::Outside, delta)?;
    let inside = draw_pair(&mut rng, Region::Inside, delta)?;
    Ok(MatrixTrial {
        triple: MeanTriple::new(a, b, x)?,
        t,
        outside,
        inside,
    })
}

/// Rejection-samples `(nu, tau)` away from `1/2` and the poles until the
/// pair falls in `want`.
fn draw_pair(rng: &mut SeededRng, want: Region, delta: f64) -> Result<ParamPair> {
    let side = |rng: &mut SeededRng| {
        let u = rng.uniform_in(delta, 0.5 - delta);
        if rng.uniform() < 0.5 {
            u
        } else {
            1.0 - u
        }
    };
    loop {
        let tau = side(rng);
        let nu = side(rng);
        let pp = ParamPair::with_margin(nu, tau, delta)?;
        if pp.region() == want {
            return Ok(pp);
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Job {
    key: usize,
    relation: MatrixRelationId,
    region: Option<Region>,
    norm: Option<NormKind>,
}

fn matrix_jobs(cfg: &MatrixSuiteConfig) -> (Vec<EntryKey>, Vec<Job>) {
    let mut keys = Vec::new();
    let mut jobs = Vec::new();
    for &rel in &cfg.relations {
        let regions: Vec<Option<Region>> = if rel.regions().is_empty() {
            vec![None]
        } else {
            rel.regions().iter().copied().map(Some).collect()
        };
        let norms: Vec<Option<NormKind>> = if rel.takes_norm() {
            cfg.norms.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for &region in &regions {
            for &norm in &norms {
                jobs.push(Job {
                    key: keys.len(),
                    relation: rel,
                    region,
                    norm,
                });
                keys.push(EntryKey {
                    relation: rel.name().to_string(),
                    region,
                    norm: norm.map(|k| k.label()),
                });
            }
        }
    }
    (keys, jobs)
}

fn validate_common(trials: usize, rel_tol: f64, delta: f64) -> Result<()> {
    if trials == 0 {
        return Err(domain("trials must be positive"));
    }
    if !(rel_tol >= 0.0) {
        return Err(domain(format!(
            "tolerance must be nonnegative, got {rel_tol}"
        )));
    }
    if !(delta > 0.0 && delta < 0.25) {
        return Err(domain(format!(
            "boundary margin must lie in (0, 1/4), got {delta}"
        )));
    }
    Ok(())
}

fn record(tally: &mut Tally, trial: usize, params: TrialParams, result: Result<RelationOutcome>) {
    match result {
        Ok(o) => tally.outcome(trial, params.with_echo(&o.params), &o),
        Err(e) => tally.error(trial, params, e.to_string()),
    }
}

pub fn run_matrix_suite(cfg: &MatrixSuiteConfig) -> Result<VerificationReport> {
    validate_common(cfg.trials, cfg.rel_tol, cfg.boundary_margin)?;
    let (lo, hi) = cfg.dims;
    if lo == 0 || lo > hi || hi > MAX_RANDOM_DIM {
        return Err(domain(format!(
            "dimensions must satisfy 1 <= lo <= hi <= {MAX_RANDOM_DIM}, got {lo}:{hi}"
        )));
    }
    if !(cfg.cond_cap > 1.0) {
        return Err(domain(format!(
            "condition cap must exceed 1, got {}",
            cfg.cond_cap
        )));
    }
    if cfg
        .norms
        .iter()
        .any(|k| matches!(k, NormKind::KyFan(j) if *j > lo))
    {
        return Err(domain(format!(
            "Ky Fan index exceeds the smallest dimension {lo}"
        )));
    }
    let (keys, jobs) = matrix_jobs(cfg);
    let opts = EvalOptions::with_tol(cfg.rel_tol).with_margin(cfg.boundary_margin);

    let per_trial: Vec<Vec<(usize, TrialParams, Result<RelationOutcome>)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let trial = draw_matrix_trial(cfg.seed, i, cfg.dims, cfg.cond_cap, cfg.boundary_margin);
            jobs.iter()
                .map(|job| {
                    let base = TrialParams::matrix(None);
                    let trial = match &trial {
                        Ok(t) => t,
                        Err(e) => return (job.key, base, Err(e.clone())),
                    };
                    let params = match (job.relation.arity(), job.region) {
                        (Arity::Pair, Some(Region::Outside)) => MatrixParams::Pair(trial.outside),
                        (Arity::Pair, _) => MatrixParams::Pair(trial.inside),
                        (Arity::Single, _) => MatrixParams::Single(trial.t),
                        (Arity::None, _) => MatrixParams::None,
                    };
                    let base = TrialParams::matrix(Some(trial.triple.n()));
                    let r = evaluate_matrix_relation(
                        job.relation,
                        &trial.triple,
                        params,
                        job.norm,
                        &opts,
                    );
                    (job.key, base, r)
                })
                .collect()
        })
        .collect();

    let mut tallies: Vec<Tally> = keys.into_iter().map(Tally::new).collect();
    for (i, results) in per_trial.into_iter().enumerate() {
        for (key, params, r) in results {
            record(&mut tallies[key], i, params, r);
        }
    }
    Ok(VerificationReport::new(
        "matrix",
        cfg.seed,
        cfg.trials,
        Some(cfg.dims),
        Tolerances {
            relative: cfg.rel_tol,
            boundary_margin: cfg.boundary_margin,
            cond_cap: Some(cfg.cond_cap),
        },
        tallies,
    ))
}

/// One random scalar draw: `a`, `b` log-uniform, `t` uniform away from the
/// poles, and one pair per region.
#[derive(Debug, Clone, Copy)]
pub struct ScalarTrial {
    pub pair: PositivePair,
    pub t: f64,
    pub outside: ParamPair,
    pub inside: ParamPair,
}

pub fn draw_scalar_trial(seed: u64, index: usize, delta: f64) -> Result<ScalarTrial> {
    let mut rng = SeededRng::for_trial(seed, index as u64);
    let (lo, hi) = SCALAR_RANGE;
    let a = rng.log_uniform_in(lo, hi);
    let b = rng.log_uniform_in(lo, hi);
    let t = rng.uniform_in(delta, 1.0 - delta);
    let outside = draw_pair(&mut rng, Region::Outside, delta)?;
    let inside = draw_pair(&mut rng, Region::Inside, delta)?;
    Ok(ScalarTrial {
        pair: PositivePair::new(a, b)?,
        t,
        outside,
        inside,
    })
}

pub fn run_scalar_suite(cfg: &ScalarSuiteConfig) -> Result<VerificationReport> {
    validate_common(cfg.trials, cfg.rel_tol, cfg.boundary_margin)?;
    let mut keys = Vec::new();
    let mut jobs = Vec::new();
    for &rel in &cfg.relations {
        let regions = if rel.takes_pair() {
            vec![Some(Region::Outside), Some(Region::Inside)]
        } else {
            vec![None]
        };
        for region in regions {
            jobs.push((keys.len(), rel, region));
            keys.push(EntryKey {
                relation: rel.name().to_string(),
                region,
                norm: None,
            });
        }
    }
    let opts = EvalOptions::with_tol(cfg.rel_tol).with_margin(cfg.boundary_margin);

    let per_trial: Vec<Vec<(usize, TrialParams, Result<RelationOutcome>)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let trial = draw_scalar_trial(cfg.seed, i, cfg.boundary_margin);
            jobs.iter()
                .map(|&(key, rel, region)| {
                    let trial = match &trial {
                        Ok(t) => t,
                        Err(e) => return (key, TrialParams::default(), Err(e.clone())),
                    };
                    let params = match region {
                        Some(Region::Outside) => ScalarParams::Pair(trial.outside),
                        Some(_) => ScalarParams::Pair(trial.inside),
                        None => ScalarParams::Single(trial.t),
                    };
                    let base = TrialParams::scalar(trial.pair.a(), trial.pair.b());
                    (
                        key,
                        base,
                        evaluate_scalar_relation(rel, &trial.pair, params, &opts),
                    )
                })
                .collect()
        })
        .collect();

    let mut tallies: Vec<Tally> = keys.into_iter().map(Tally::new).collect();
    for (i, results) in per_trial.into_iter().enumerate() {
        for (key, params, r) in results {
            record(&mut tallies[key], i, params, r);
        }
    }
    Ok(VerificationReport::new(
        "scalar",
        cfg.seed,
        cfg.trials,
        None,
        Tolerances {
            relative: cfg.rel_tol,
            boundary_margin: cfg.boundary_margin,
            cond_cap: None,
        },
        tallies,
    ))
}
