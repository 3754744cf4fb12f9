//! Acceptance gate: each shipped claim is re-run here at its stated
//! tolerance and runtime budget, one printed verdict line per criterion.
//! Criteria 1-6 call the library suites in-process; criterion 7 drives the
//! installed binary end to end.

use std::process::Command;
use std::time::{Duration, Instant};

use curved_maxwell::geometry::SpaceKind;
use curved_maxwell::verify::{
    algebra_suite, flat_suite, geometry_suite, modes_suite, radial_suite, wigner_suite, GridSizes,
    ModeSelection, SuiteReport, Tolerances,
};

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn criterion(&mut self, idx: usize, desc: &str, budget: Duration, reports: &[SuiteReport]) {
        let elapsed: Duration = reports.iter().map(|r| r.elapsed).sum();
        let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
        let bad: Vec<String> = reports
            .iter()
            .flat_map(|r| r.failures())
            .map(|c| format!("{} (observed {:.3e})", c.name, c.observed))
            .collect();
        let in_budget = elapsed <= budget;
        let ok = bad.is_empty() && in_budget;
        println!(
            "criterion {idx} [{}] {desc}: {checks} checks in {:.2} s (budget {:.0} s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs_f64(),
        );
        if !bad.is_empty() {
            self.failures.push(format!("criterion {idx}: {bad:?}"));
        }
        if !in_budget {
            self.failures
                .push(format!("criterion {idx}: over budget, took {elapsed:?}"));
        }
    }
}

#[test]
fn acceptance() {
    let tol = Tolerances::default();
    let mut gate = Gate { failures: Vec::new() };

    gate.criterion(
        1,
        "alpha algebra, generators, cyclic conjugations, residual <= 1e-15",
        Duration::from_secs(1),
        &[algebra_suite(&tol)],
    );

    gate.criterion(
        2,
        "closed-form geometry vs finite-difference oracle, 120 random interior points, <= 1e-7",
        Duration::from_secs(5),
        &[geometry_suite(42, 120, &tol)],
    );

    gate.criterion(
        3,
        "wigner recurrences j <= 8 on a 50-point grid <= 1e-10; angular action vs FD <= 1e-6",
        Duration::from_secs(10),
        &[wigner_suite(&tol)],
    );

    let s3 = ModeSelection {
        kind: Some(SpaceKind::S3),
        ..ModeSelection::default()
    };
    gate.criterion(
        4,
        "closed model, all (j <= 4, n <= 3, |m| <= j): radial residuals <= 1e-8, operator <= 1e-6; \
         5% detune fails by >= 4 orders; endpoint regularity only when quantized",
        Duration::from_secs(30),
        &[radial_suite(&s3, &tol), modes_suite(&s3, &GridSizes::default(), &tol)],
    );

    let h3 = ModeSelection {
        kind: Some(SpaceKind::H3),
        ..ModeSelection::default()
    };
    gate.criterion(
        5,
        "open model, j <= 4, omega in {0.5, 1.3, 2.7}: closed form vs RK oracle <= 1e-6 on \
         chi in [0.05, 2], all residual suites, no quantization condition",
        Duration::from_secs(20),
        &[radial_suite(&h3, &tol), modes_suite(&h3, &GridSizes::default(), &tol)],
    );

    gate.criterion(
        6,
        "flat-space regrouping of the matrix residual reproduces the eight classical \
         residuals <= 1e-13 on three field families",
        Duration::from_secs(2),
        &[flat_suite(&tol)],
    );

    // Criterion 7: the binary end to end.
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_curved-maxwell"))
        .args(["verify", "all"])
        .output()
        .expect("spawn the verification binary");
    let elapsed = started.elapsed();
    let ok = out.status.success() && elapsed <= Duration::from_secs(90);
    println!(
        "criterion 7 [{}] `verify all` end to end: exit {:?} in {:.2} s (budget 90 s)",
        if ok { "PASS" } else { "FAIL" },
        out.status.code(),
        elapsed.as_secs_f64(),
    );
    if !ok {
        gate.failures.push(format!(
            "criterion 7: exit {:?} after {elapsed:?}; stdout tail: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
                .lines()
                .rev()
                .take(12)
                .collect::<Vec<_>>()
                .join(" | "),
        ));
    }

    assert!(
        gate.failures.is_empty(),
        "acceptance failures:\n{}",
        gate.failures.join("\n")
    );
}
