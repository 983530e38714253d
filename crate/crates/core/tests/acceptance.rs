//! Acceptance gate: every criterion at its stated tolerance and time
//! budget, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use heinz::interpolation::{cubic_ell, find_reverse_witnesses, minimize_l1, tau_star};
use heinz::linalg::{
    eigh, matrix_power, random_complex, random_pd_from, ui_norm, ComplexMatrix, HermitianMatrix,
    NormKind, SeededRng, DEFAULT_COND_CAP, DEFAULT_EIGH_TOL,
};
use heinz::means::{heinz_sandwich, MeanTriple};
use heinz::scalar::{EvalOptions, Region};
use heinz::suite::{
    counterexample, evaluate_matrix_relation, hs_half_specialization, hs_schur_oracle,
    run_matrix_suite, run_scalar_suite, ui_half_specialization, MatrixParams, MatrixRelationId,
    MatrixSuiteConfig, ScalarSuiteConfig, Specialization, MATRIX_REL_TOL,
};

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tau_star_reproduction() -> Check {
    let r = tau_star(1e-12).map_err(|e| e.to_string())?;
    ensure(cubic_ell(r.tau).abs() <= 1e-12, || {
        format!("|ell| = {:e}", r.residual)
    })?;
    ensure(r.tau > 0.0 && r.tau < 0.5, || {
        format!("root {} outside (0,1/2)", r.tau)
    })?;
    ensure(format!("{:.6}", r.tau) == "0.326352", || {
        format!("printed {:.6}", r.tau)
    })?;
    let out = Command::new(env!("CARGO_BIN_EXE_heinz"))
        .arg("tau-star")
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success() && text.contains("0.326352"), || {
        format!("cli printed {text:?}")
    })?;
    Ok(format!("tau = {:.12}, |ell| = {:.1e}", r.tau, r.residual))
}

fn argmin_independence() -> Check {
    let root = tau_star(1e-12).map_err(|e| e.to_string())?.tau;
    let mut worst: f64 = 0.0;
    for b in [0.1, 0.5, 2.0, 10.0, 100.0] {
        let m = minimize_l1(b, 1e-10).map_err(|e| format!("b = {b}: {e}"))?;
        let dev = (m.tau - root).abs();
        ensure(dev <= 2e-4, || {
            format!("b = {b}: argmin {} deviates by {dev:e}", m.tau)
        })?;
        worst = worst.max(dev);
    }
    Ok(format!("max deviation {worst:.2e}"))
}

fn counterexample_reproduction() -> Check {
    let c = counterexample().map_err(|e| e.to_string())?;
    ensure((c.lhs - 2.0505103).abs() <= 1e-7, || {
        format!("lhs = {}", c.lhs)
    })?;
    ensure(c.rhs == 2.0, || format!("rhs = {}", c.rhs))?;
    ensure(c.violated && c.lhs > c.rhs, || "not violated".into())?;
    Ok(format!("lhs = {:.7} > rhs = {}", c.lhs, c.rhs))
}

fn scalar_suite() -> Check {
    let cfg = ScalarSuiteConfig {
        trials: 100_000,
        ..ScalarSuiteConfig::default()
    };
    let r = run_scalar_suite(&cfg).map_err(|e| e.to_string())?;
    for e in &r.entries {
        ensure(e.evaluations == cfg.trials, || {
            format!("{} ran {} times", e.relation, e.evaluations)
        })?;
    }
    for name in ["CORE_COMPARISON", "SQUARED", "MULTIPLICATIVE"] {
        for region in [Region::Outside, Region::Inside] {
            ensure(
                r.entries
                    .iter()
                    .any(|e| e.relation == name && e.region == Some(region)),
                || format!("{name} missing {}", region.name()),
            )?;
        }
    }
    ensure(r.failures_total == 0, || {
        let bad: Vec<String> = r
            .entries
            .iter()
            .filter(|e| !e.failures.is_empty())
            .map(|e| format!("{} {:?}: {}", e.relation, e.region, e.failures.len()))
            .collect();
        format!("violations: {}", bad.join(", "))
    })?;
    Ok(format!("{} evaluations, 0 violations", r.evaluations))
}

fn matrix_suite() -> Check {
    let cfg = MatrixSuiteConfig::default();
    let r = run_matrix_suite(&cfg).map_err(|e| e.to_string())?;
    for rel in MatrixRelationId::ALL {
        ensure(r.entries.iter().any(|e| e.relation == rel.name()), || {
            format!("{} missing", rel.name())
        })?;
    }
    for rel in [
        MatrixRelationId::UiNormRefinement,
        MatrixRelationId::MatrixHolder,
        MatrixRelationId::AmGmNorm,
    ] {
        for k in NormKind::REPRESENTATIVES {
            ensure(
                r.entries.iter().any(|e| {
                    e.relation == rel.name() && e.norm.as_deref() == Some(k.label().as_str())
                }),
                || format!("{} missing norm {k}", rel.name()),
            )?;
        }
    }
    ensure(
        r.entries.iter().all(|e| e.evaluations == cfg.trials),
        || "uneven evaluation counts".into(),
    )?;
    ensure(r.failures_total == 0, || {
        let bad: Vec<String> = r
            .entries
            .iter()
            .filter(|e| !e.failures.is_empty())
            .map(|e| {
                let first = &e.failures[0];
                format!(
                    "{} {:?} {:?}: {} (trial {} margin {:?} error {:?})",
                    e.relation,
                    e.region,
                    e.norm,
                    e.failures.len(),
                    first.trial,
                    first.margin,
                    first.error
                )
            })
            .collect();
        format!("violations: {}", bad.join("; "))
    })?;
    Ok(format!(
        "{} evaluations over {} entries, 0 violations",
        r.evaluations,
        r.entries.len()
    ))
}

fn random_triple(rng: &mut SeededRng) -> MeanTriple {
    let n = rng.integer_in(2, 6);
    let a = random_pd_from(rng, n, DEFAULT_COND_CAP).unwrap();
    let b = random_pd_from(rng, n, DEFAULT_COND_CAP).unwrap();
    let x = random_complex(rng, n, n);
    MeanTriple::new(a, b, x).unwrap()
}

fn oracle_equivalence() -> Check {
    let mut rng = SeededRng::new(0x5eed);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let triple = random_triple(&mut rng);
        for t in [0.1, 0.25, 0.5, 0.9] {
            let oracle = hs_schur_oracle(&triple, t).map_err(|e| e.to_string())?;
            let direct = ui_norm(
                &heinz_sandwich(&triple, t).map_err(|e| e.to_string())?,
                NormKind::HilbertSchmidt,
            )
            .map_err(|e| e.to_string())?
            .powi(2);
            let rel = (oracle - direct).abs() / (1.0 + direct);
            ensure(rel <= 1e-9, || {
                format!("triple {i}, t = {t}: oracle {oracle} vs direct {direct}")
            })?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("max relative gap {worst:.1e}"))
}

fn specialization_identities() -> Check {
    let mut rng = SeededRng::new(0xface);
    let mut worst: f64 = 0.0;
    let mut check = |s: Specialization, what: &str| -> Result<(), String> {
        let rel = s.relative_gap();
        ensure(rel <= 1e-10, || {
            format!("{what}: {} vs {}", s.general, s.closed_form)
        })?;
        worst = worst.max(rel);
        Ok(())
    };
    for _ in 0..100 {
        let triple = random_triple(&mut rng);
        let nu = rng.uniform_in(0.01, 0.99);
        check(
            hs_half_specialization(&triple, nu).map_err(|e| e.to_string())?,
            "hilbert-schmidt",
        )?;
        for k in NormKind::REPRESENTATIVES {
            check(
                ui_half_specialization(&triple, nu, k).map_err(|e| e.to_string())?,
                &k.label(),
            )?;
        }
    }
    Ok(format!("max relative gap {worst:.1e}"))
}

fn reverse_comparison() -> Check {
    let small = find_reverse_witnesses(1.1, 3.0, 100, 49).map_err(|e| e.to_string())?;
    let large = find_reverse_witnesses(100.0, 1e4, 100, 49).map_err(|e| e.to_string())?;
    let log = small
        .log
        .ok_or("no witness where the log reverse is tighter")?;
    let km = large
        .km
        .ok_or("no witness where the Kittaneh-Manasrah reverse is tighter")?;
    Ok(format!(
        "log tighter at a/b = {:.4}, t = {:.2}; km tighter at a/b = {:.1}, t = {:.2}",
        log.a, log.t, km.a, km.t
    ))
}

fn random_hermitian(rng: &mut SeededRng, n: usize) -> HermitianMatrix {
    let g = random_complex(rng, n, n);
    let sum = &g + &g.adjoint();
    HermitianMatrix::new(sum.scale(0.5)).unwrap()
}

fn core_properties() -> Check {
    let mut rng = SeededRng::new(0xbeef);
    let rel = |x: f64, y: f64| (x - y).abs() / (1.0 + x.abs().max(y.abs()));
    for i in 0..200 {
        let n = rng.integer_in(2, 8);
        let h = random_hermitian(&mut rng, n);
        let e = eigh(&h, DEFAULT_EIGH_TOL).map_err(|e| e.to_string())?;
        let err = e.reconstruct().as_matrix().max_abs_diff(h.as_matrix()) * n as f64;
        let recon = (e.reconstruct().as_matrix() - h.as_matrix()).frobenius_norm();
        ensure(recon <= 1e-10 * (1.0 + h.frobenius_norm()), || {
            format!("instance {i}: reconstruction {recon:e} ({err:e})")
        })?;

        let x = random_complex(&mut rng, n, n);
        let y = random_complex(&mut rng, n, n);
        let c = rng.normal();
        let u = e.vectors();
        for k in NormKind::REPRESENTATIVES {
            let nx = ui_norm(&x, k).unwrap();
            let ny = ui_norm(&y, k).unwrap();
            ensure(nx >= 0.0, || format!("instance {i}: {k} negative"))?;
            ensure(
                rel(ui_norm(&x.scale(c), k).unwrap(), c.abs() * nx) <= 1e-10,
                || format!("instance {i}: {k} homogeneity"),
            )?;
            ensure(
                ui_norm(&(&x + &y), k).unwrap() <= (nx + ny) * (1.0 + 1e-12),
                || format!("instance {i}: {k} triangle"),
            )?;
            let rotated = &(u * &x) * &u.adjoint();
            ensure(rel(ui_norm(&rotated, k).unwrap(), nx) <= 1e-10, || {
                format!("instance {i}: {k} unitary invariance")
            })?;
        }

        let mut prng = SeededRng::for_trial(0xbeef, i);
        let a = random_pd_from(&mut prng, n, DEFAULT_COND_CAP).unwrap();
        let b = random_pd_from(&mut prng, n, DEFAULT_COND_CAP).unwrap();
        let (s, t) = (prng.uniform(), prng.uniform());
        let lhs =
            matrix_power(&a, s).unwrap().as_matrix() * matrix_power(&a, t).unwrap().as_matrix();
        let rhs = matrix_power(&a, s + t).unwrap();
        let gap = (&lhs - rhs.as_matrix()).frobenius_norm();
        ensure(gap <= 1e-10 * (1.0 + rhs.frobenius_norm()), || {
            format!("instance {i}: A^s A^t gap {gap:e}")
        })?;
        let half = matrix_power(&a, 0.5).unwrap();
        let sq = (&(half.as_matrix() * half.as_matrix()) - a.as_matrix()).frobenius_norm();
        ensure(sq <= 1e-10 * (1.0 + a.frobenius_norm()), || {
            format!("instance {i}: (A^1/2)^2 gap {sq:e}")
        })?;

        let triple = MeanTriple::new(a, b, ComplexMatrix::identity(n)).unwrap();
        let o = evaluate_matrix_relation(
            MatrixRelationId::LoewnerHeinzOrder,
            &triple,
            MatrixParams::Single(prng.uniform()),
            None,
            &EvalOptions::with_tol(MATRIX_REL_TOL),
        )
        .map_err(|e| e.to_string())?;
        ensure(o.holds, || {
            format!("instance {i}: Heinz order margin {}", o.lhs)
        })?;
    }
    Ok("200 instances: reconstruction, norm axioms, power laws, Heinz order".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "tau-star reproduction",
            budget: Some(Duration::from_secs(1)),
            run: tau_star_reproduction,
        },
        Criterion {
            id: 2,
            name: "argmin independence",
            budget: Some(Duration::from_secs(30)),
            run: argmin_independence,
        },
        Criterion {
            id: 3,
            name: "counterexample",
            budget: Some(Duration::from_millis(100)),
            run: counterexample_reproduction,
        },
        Criterion {
            id: 4,
            name: "scalar suite",
            budget: Some(Duration::from_secs(20)),
            run: scalar_suite,
        },
        Criterion {
            id: 5,
            name: "matrix suite",
            budget: Some(Duration::from_secs(60)),
            run: matrix_suite,
        },
        Criterion {
            id: 6,
            name: "oracle equivalence",
            budget: None,
            run: oracle_equivalence,
        },
        Criterion {
            id: 7,
            name: "specialization identities",
            budget: None,
            run: specialization_identities,
        },
        Criterion {
            id: 8,
            name: "reverse comparison",
            budget: Some(Duration::from_secs(5)),
            run: reverse_comparison,
        },
        Criterion {
            id: 9,
            name: "numerical-core properties",
            budget: None,
            run: core_properties,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS [{}] {}: {} ({:.2?})", c.id, c.name, detail, elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {}: {} ({:.2?})", c.id, c.name, why, elapsed);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
