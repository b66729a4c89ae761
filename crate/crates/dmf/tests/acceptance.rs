//! End-to-end acceptance gate: nine criteria, one pass/fail line each.

use std::process::Command;
use std::time::Instant;

use dmf::actions::{
    ActionKind, GroupElement, InvariantSeries, apply_group, elastica, scaling, twist,
};
use dmf::checks;
use dmf::ops::euler_operator;
use dmf::series::DiscreteCurve;
use dmf::smooth::{self, SmoothState};
use dmf::solvers::{
    self, ElasticaAnchor, ElasticaSeed, conservation_drift, elastica_conservation_records,
};

/// Runs one criterion body, prints its pass/fail line, and enforces the
/// runtime budget in seconds.
fn criterion(n: usize, name: &str, budget_s: f64, body: impl FnOnce() -> Result<(), String>) {
    let t0 = Instant::now();
    let outcome = body();
    let dt = t0.elapsed().as_secs_f64();
    match outcome {
        Ok(()) if dt <= budget_s => println!("criterion {n} ({name}): pass [{dt:.2}s]"),
        Ok(()) => {
            println!("criterion {n} ({name}): FAIL (runtime {dt:.2}s over budget {budget_s}s)");
            panic!("criterion {n} ({name}): runtime {dt:.2}s over budget {budget_s}s");
        }
        Err(msg) => {
            println!("criterion {n} ({name}): FAIL ({msg})");
            panic!("criterion {n} ({name}): {msg}");
        }
    }
}

fn ensure(cond: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

/// Stable fine-mesh elastica seed: order-one curvature gradient across the
/// seed chords, small chords. Digits must not be truncated; the conserved
/// vector hinges on a near-cancelling difference of Euler expressions.
fn stable_seed() -> ElasticaSeed {
    ElasticaSeed {
        l_prev: 0.002457502172472302,
        h_prev: -0.0002573603562279051,
        l0: 0.0019124001114030258,
        h0: -0.00020133285558474485,
    }
}

fn seed_flags(seed: &ElasticaSeed) -> Vec<String> {
    // The --flag=value form keeps clap from reading a negative exponent
    // value as a flag.
    vec![
        format!("--l-prev={:.17e}", seed.l_prev),
        format!("--h-prev={:.17e}", seed.h_prev),
        format!("--l0={:.17e}", seed.l0),
        format!("--h0={:.17e}", seed.h0),
    ]
}

fn run_cli(args: &[String]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_dmf"))
        .args(args)
        .output()
        .map_err(|e| format!("failed to spawn CLI: {e}"))
}

#[test]
fn criterion_1_adjoint_constructions_agree() {
    criterion(1, "adjoint equivalence", 1.0, || {
        for r in checks::adjoint_suite(42).map_err(|e| e.to_string())? {
            ensure(r.passed(), || {
                format!("{}: worst {:.3e} above {:.3e}", r.property, r.worst, r.tol)
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_2_frame_laws_hold() {
    criterion(2, "frame laws", 5.0, || {
        for r in checks::frames_suite(42).map_err(|e| e.to_string())? {
            ensure(r.passed(), || {
                format!("{}: worst {:.3e} above {:.3e}", r.property, r.worst, r.tol)
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_3_syzygy_decays_second_order() {
    criterion(3, "syzygy check", 5.0, || {
        for r in checks::syzygy_suite(42).map_err(|e| e.to_string())? {
            ensure(r.passed(), || {
                format!("{}: ratio deviation {:.3e} above {:.3e}", r.property, r.worst, r.tol)
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_4_scaling_end_to_end() {
    criterion(4, "scaling end-to-end", 2.0, || {
        let p = scaling::ScalingParams { k1: 2.0, k2: 1.0, k3: 0.5, k4: 1.0, k5: 0.0, k6: 0.25 };
        let e = |err: dmf::Error| err.to_string();

        // Closed-form invariants zero the invariantized equations.
        let inv_rows = (-6..=56)
            .map(|n| scaling::closed_form(&p, n).map(|pt| vec![pt.kappa, pt.eta]))
            .collect::<Result<Vec<_>, _>>()
            .map_err(e)?;
        let inv = InvariantSeries::new(ActionKind::Scaling, -6, inv_rows).map_err(e)?;
        for n in 0..=50 {
            let r = scaling::el_residual(&inv, n).map_err(e)?;
            ensure(r[0].abs() <= 1e-12 && r[1].abs() <= 1e-12, || {
                format!("invariantized residual {:?} at n = {n}", r)
            })?;
        }

        // Reconstructed original variables zero the difference Euler
        // operator of the original density.
        let curve = scaling::closed_form_curve(&p, -6, 56).map_err(e)?;
        let l = scaling::original_lagrangian();
        for n in 0..=50 {
            for comp in 0..2 {
                let r = euler_operator(&l, &curve, n, comp).map_err(e)?;
                ensure(r.abs() <= 1e-6, || {
                    format!("Euler operator {r:.3e} at n = {n}, comp {comp}")
                })?;
            }
        }

        // Conserved constants and the three first integrals stay flat.
        let records =
            solvers::conservation_records(ActionKind::Scaling, &curve, 0, 50).map_err(e)?;
        let drift = conservation_drift(&records);
        ensure(drift <= 1e-6, || format!("conserved-constant drift {drift:.3e}"))?;
        let first = scaling::first_integrals_original(&curve, &l, 0).map_err(e)?;
        for n in 0..=50 {
            let a = scaling::first_integrals_original(&curve, &l, n).map_err(e)?;
            for i in 0..3 {
                ensure((a[i] - first[i]).abs() <= 1e-6, || {
                    format!("integral {i} drifts by {:.3e} at n = {n}", a[i] - first[i])
                })?;
            }
        }

        // The ratio first integral.
        let c = p.constants();
        let want = c[1] / c[2].powi(3);
        for r in &records {
            let got = r.v[1] / r.v[2].powi(3);
            ensure((got - want).abs() <= 1e-10, || {
                format!("ratio integral off by {:.3e} at n = {}", got - want, r.n)
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_5_twist_end_to_end() {
    criterion(5, "twist end-to-end", 2.0, || {
        let p = twist::TwistParams { k1: 0.5, k2: 1.0, k3: 0.25, c1: 0.5, c2: 3.0, c3: 1.0 };
        let e = |err: dmf::Error| err.to_string();

        let lo = -8i64;
        let hi = 20i64;
        let inv_rows = (lo..=hi)
            .map(|n| twist::closed_form(&p, n).map(|pt| vec![pt.kappa, pt.mu, pt.nu]))
            .collect::<Result<Vec<_>, _>>()
            .map_err(e)?;
        let inv = InvariantSeries::new(ActionKind::Twist, lo, inv_rows).map_err(e)?;
        for n in -2..=12i64 {
            let r = twist::el_residual(&inv, n).map_err(e)?;
            ensure(r[0].abs() <= 1e-12 && r[1].abs() <= 1e-12, || {
                format!("residual {:?} at n = {n}", r)
            })?;
            // The two-periodic product identity, to rounding.
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let prod = inv.get(n, 1).map_err(e)? * inv.get(n + 1, 1).map_err(e)?;
            let want = 1.0 + p.k1 * sign;
            ensure((prod - want).abs() <= 1e-12 * want.abs().max(1.0), || {
                format!("product identity off by {:.3e} at n = {n}", prod - want)
            })?;
        }

        // Conserved constants recovered from the original variables.
        let base = twist::closed_form_curve(&p, lo, hi).map_err(e)?;
        for n in 0..=10i64 {
            let c = twist::constants_from_curve(&base, n).map_err(e)?;
            for (i, want) in [p.c1, p.c2, p.c3].iter().enumerate() {
                ensure((c[i] - want).abs() <= 1e-10, || {
                    format!("c{} off by {:.3e} at n = {n}", i + 1, c[i] - want)
                })?;
            }
        }

        // Divergence: the full density is strictly invariant, the core
        // density shifts by twice the boost.
        let rows = (base.start()..=base.end())
            .map(|n| {
                let pt = base.point(n).unwrap();
                vec![pt[0], pt[1], 0.1 * n as f64]
            })
            .collect();
        let curve = DiscreteCurve::from_rows(base.start(), rows).map_err(e)?;
        let core = twist::core_lagrangian();
        for (i, a1) in [0.7f64, -0.35, 1.2].iter().enumerate() {
            let g = GroupElement::Twist { a1: *a1, a2: 0.3 - 0.1 * i as f64, a3: -0.4 };
            let moved = apply_group(&g, &curve).map_err(e)?;
            for n in 0..=6i64 {
                let div = twist::divergence_check(&curve, &g, n).map_err(e)?;
                ensure(div <= 1e-12, || format!("full-density defect {div:.3e} at n = {n}"))?;
                let shift = core.eval(&moved.window(n, 0, 3).map_err(e)?)
                    - core.eval(&curve.window(n, 0, 3).map_err(e)?);
                ensure((shift.abs() - 2.0 * a1.abs()).abs() <= 1e-10, || {
                    format!("core-density shift {shift:.6e} vs 2|a1| at n = {n}")
                })?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_elastica_conservation() {
    criterion(6, "elastica conservation", 10.0, || {
        let e = |err: dmf::Error| err.to_string();
        let inv = solvers::elastica_invariants(&stable_seed(), 1000, 1e-12).map_err(e)?;
        let anchor = ElasticaAnchor { x0: 0.0, u0: 0.0, theta0: 0.0 };
        let records = elastica_conservation_records(&inv, &anchor).map_err(e)?;
        let drift = conservation_drift(&records);
        ensure(drift <= 1e-8, || format!("conserved-constant drift {drift:.3e}"))?;
        let planar0 = records[0].v[0].powi(2) + records[0].v[1].powi(2);
        for r in &records {
            let planar = r.v[0].powi(2) + r.v[1].powi(2);
            ensure((planar - planar0).abs() <= 1e-8, || {
                format!("planar norm drifts by {:.3e} at n = {}", planar - planar0, r.n)
            })?;
        }
        for n in 1..=inv.end() {
            let r = elastica::el_residual(&inv, n).map_err(e)?;
            ensure(r[0].abs() <= 1e-10 && r[1].abs() <= 1e-10, || {
                format!("residual {:?} at n = {n}", r)
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_7_smooth_reference() {
    criterion(7, "smooth reference", 5.0, || {
        let e = |err: dmf::Error| err.to_string();
        let (kappa, kappa_s) = (0.8f64, 0.25f64);
        let norm2 = kappa.powi(4) + 4.0 * kappa_s * kappa_s;
        let angle = 0.7f64;
        let c = [norm2.sqrt() * angle.cos(), norm2.sqrt() * angle.sin()];
        let state = SmoothState { s: 0.0, kappa, kappa_s, x: 0.3, u: -0.2 };

        let traj = smooth::rkf45_integrate(&state, c, 1.0, 50.0, 0.1, Some(1e-10)).map_err(e)?;
        for st in &traj.states {
            let fi = smooth::first_integral_residual(st, c);
            ensure(fi.abs() <= 1e-8, || format!("first-integral defect {fi:.3e} at s = {}", st.s))?;
            let d = smooth::smooth_rhs(st, c, 1.0).map_err(e)?;
            let speed = d[2] * d[2] + d[3] * d[3];
            ensure((speed - 1.0).abs() <= 1e-10, || {
                format!("unit-speed defect {:.3e} at s = {}", speed - 1.0, st.s)
            })?;
        }

        // Measured global order on uniform meshes.
        let reference = smooth::rkf45_integrate(&state, c, 1.0, 4.0, 0.05, Some(1e-13)).map_err(e)?;
        let want = *reference.states.last().unwrap();
        let endpoint_err = |h: f64| -> Result<f64, String> {
            let t = smooth::rkf45_integrate(&state, c, 1.0, 4.0, h, None).map_err(e)?;
            let got = *t.states.last().unwrap();
            Ok(((got.x - want.x).powi(2) + (got.u - want.u).powi(2)).sqrt()
                + (got.kappa - want.kappa).abs())
        };
        let e1 = endpoint_err(0.2)?;
        let e2 = endpoint_err(0.1)?;
        let e3 = endpoint_err(0.05)?;
        let p12 = (e1 / e2).log2();
        let p23 = (e2 / e3).log2();
        ensure((p12 - 4.0).abs() <= 0.3 || (p23 - 4.0).abs() <= 0.3, || {
            format!("measured orders {p12:.2}, {p23:.2} outside 4 +- 0.3")
        })?;
        Ok(())
    });
}

#[test]
fn criterion_8_refinement_shrinks_comparison_error() {
    criterion(8, "refinement under seed halving", 30.0, || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let out = dir.path().join("table.csv");
        let mut args: Vec<String> = vec!["elastica".into(), "converge".into()];
        args.extend(seed_flags(&stable_seed()));
        args.extend(["--steps".into(), "500".into(), "--out".into(), out.display().to_string()]);
        let output = run_cli(&args)?;
        ensure(output.status.code() == Some(0), || {
            format!(
                "converge exited with {:?}: {}",
                output.status.code(),
                String::from_utf8_lossy(&output.stderr)
            )
        })?;
        let table = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
        let errors: Vec<f64> = table
            .lines()
            .skip(1)
            .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        ensure(errors.len() == 3, || format!("expected 3 scales, got {}", errors.len()))?;
        ensure(errors[0] > errors[1] && errors[1] > errors[2], || {
            format!("errors not strictly decreasing: {errors:?}")
        })?;
        Ok(())
    });
}

#[test]
fn criterion_9_outputs_are_deterministic() {
    criterion(9, "byte-stable outputs", 5.0, || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let path = |name: &str| dir.path().join(name).display().to_string();

        let mut artifacts: Vec<(Vec<String>, Vec<String>)> = Vec::new();
        let scaling_run = |tag: &str| -> Vec<String> {
            vec![
                "solve-scaling".into(),
                "--k1".into(), "2".into(),
                "--k2".into(), "1".into(),
                "--k3".into(), "0".into(),
                "--n".into(), "0..20".into(),
                "--out".into(), path(&format!("s{tag}.csv")),
            ]
        };
        artifacts.push((scaling_run("a"), scaling_run("b")));
        let compare_run = |tag: &str| -> Vec<String> {
            let mut args: Vec<String> = vec!["elastica".into(), "compare".into()];
            args.extend(seed_flags(&stable_seed()));
            args.extend([
                "--steps".into(), "200".into(),
                "--out".into(), path(&format!("e{tag}.csv")),
                "--smooth-out".into(), path(&format!("m{tag}.csv")),
                "--summary".into(), path(&format!("j{tag}.json")),
            ]);
            args
        };
        artifacts.push((compare_run("a"), compare_run("b")));

        for (first, second) in artifacts {
            for args in [&first, &second] {
                let output = run_cli(args)?;
                ensure(output.status.code() == Some(0), || {
                    format!(
                        "{:?} exited with {:?}: {}",
                        args,
                        output.status.code(),
                        String::from_utf8_lossy(&output.stderr)
                    )
                })?;
            }
        }
        for pair in [("sa.csv", "sb.csv"), ("ea.csv", "eb.csv"), ("ma.csv", "mb.csv"), ("ja.json", "jb.json")] {
            let a = std::fs::read(dir.path().join(pair.0)).map_err(|e| e.to_string())?;
            let b = std::fs::read(dir.path().join(pair.1)).map_err(|e| e.to_string())?;
            ensure(!a.is_empty() && a == b, || format!("{} and {} differ", pair.0, pair.1))?;
        }
        Ok(())
    });
}
