//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary so every criterion reports even when an earlier
//! one fails; the process exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multiform::calculus::{d_slot, delta, poincare_homotopy};
use multiform::charges::{
    bump_field, default_balance, flux_quantization, fracton_moments, refinement, DEFAULT_RESOLUTION,
    REFINEMENT_STEPS,
};
use multiform::complexes::{as_reduction, build_complex, cohomology, Truncation};
use multiform::duality::{build_duality_maps, DualityOptions};
use multiform::sample::{random_polynomial_form, random_trig_form};
use multiform::tensor::{irrep_dimension, project, young_projector, Coefficient, MultiForm, Shape};
use multiform::Error;

type Outcome = std::result::Result<String, String>;

fn random_signature(rng: &mut ChaCha8Rng, dim: usize, arity: usize, max_height: usize) -> Vec<usize> {
    let mut sig: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..=max_height.min(dim))).collect();
    sig.sort_unstable_by(|a, b| b.cmp(a));
    sig
}

fn binomial_row(dim: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for k in 0..dim {
        row.push(row[k] * (dim - k) / (k + 1));
    }
    row
}

/// GL(D) dimension from column heights by the hook-content formula.
fn hook_content(dim: usize, columns: &[usize]) -> usize {
    let height = columns.first().copied().unwrap_or(0);
    let rows: Vec<usize> = (0..height).map(|r| columns.iter().filter(|c| **c > r).count()).collect();
    let (mut num, mut den) = (1u128, 1u128);
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = columns[c] - r - 1;
            num *= (dim + c - r) as u128;
            den *= (arm + leg + 1) as u128;
        }
    }
    (num / den) as usize
}

fn check_nilpotency<C: Coefficient>(t: &MultiForm<C>) -> std::result::Result<(), String> {
    let n = t.shape().arity();
    for i in 0..n {
        let Some(di) = d_slot(t, i).map_err(|e| e.to_string())? else { continue };
        if let Some(dii) = d_slot(&di, i).map_err(|e| e.to_string())? {
            if !dii.is_zero() {
                return Err(format!("d_{i}∘d_{i} ≠ 0 on {}", t.shape().signature().len()));
            }
        }
        for j in (i + 1)..n {
            let dij = d_slot(&di, j).map_err(|e| e.to_string())?;
            let dji = match d_slot(t, j).map_err(|e| e.to_string())? {
                Some(dj) => d_slot(&dj, i).map_err(|e| e.to_string())?,
                None => None,
            };
            let same = match (&dij, &dji) {
                (Some(a), Some(b)) => a == b,
                (None, None) => true,
                (Some(a), None) | (None, Some(a)) => a.is_zero(),
            };
            if !same {
                return Err(format!("d_{i} and d_{j} do not commute on {:?}", t.shape().signature()));
            }
        }
    }
    let projected = project(t).map_err(|e| e.to_string())?;
    if let Some(once) = delta(&projected).map_err(|e| e.to_string())? {
        if let Some(twice) = delta(&once).map_err(|e| e.to_string())? {
            if !twice.is_zero() {
                return Err(format!("δ∘δ ≠ 0 on {:?}", t.shape().signature()));
            }
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for arity in 1..=3 {
        for dim in 2..=5 {
            for trial in 0..50 {
                let shape = Shape::new(dim, random_signature(&mut rng, dim, arity, dim - 1)).map_err(|e| e.to_string())?;
                if trial % 2 == 0 {
                    check_nilpotency(&random_polynomial_form(&shape, 3, 4, &mut rng))?;
                } else {
                    check_nilpotency(&random_trig_form(&shape, 1, 4, &mut rng))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} forms"))
}

fn young_signatures(dim: usize, max_boxes: usize) -> Vec<Vec<usize>> {
    fn extend(dim: usize, left: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for h in 1..=cap.min(left).min(dim) {
            prefix.push(h);
            extend(dim, left - h, h, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(dim, max_boxes, dim, &mut Vec::new(), &mut out);
    out
}

fn criterion_2() -> Outcome {
    let mut shapes = 0;
    for dim in 1..=5 {
        for sig in young_signatures(dim, 5) {
            let shape = Shape::new(dim, sig.clone()).map_err(|e| e.to_string())?;
            let p = young_projector(&shape).map_err(|e| e.to_string())?;
            if !p.is_idempotent() {
                return Err(format!("P² ≠ P for D={dim} {sig:?}"));
            }
            let expected = hook_content(dim, &sig);
            if p.rank() != expected {
                return Err(format!("rank {} ≠ {expected} for D={dim} {sig:?}", p.rank()));
            }
            if irrep_dimension(&shape).map_err(|e| e.to_string())? != expected {
                return Err(format!("irrep_dimension disagrees for D={dim} {sig:?}"));
            }
            shapes += 1;
        }
    }
    let pinned = [(vec![1, 1], 15), (vec![2, 1], 40)];
    for (sig, want) in pinned {
        let rank = young_projector(&Shape::new(5, sig.clone()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .rank();
        if rank != want {
            return Err(format!("D=5 {sig:?} has rank {rank}, expected {want}"));
        }
    }
    Ok(format!("{shapes} shapes"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        if attempts > 1000 {
            return Err(format!("only {done} nonzero closed inputs generated"));
        }
        let arity = rng.gen_range(1..=2);
        let dim = rng.gen_range(1..=4);
        let shape = Shape::new(dim, random_signature(&mut rng, dim, arity, dim - 1)).map_err(|e| e.to_string())?;
        let degree = rng.gen_range(1..=3);
        let s0 = project(&random_polynomial_form(&shape, degree, 3, &mut rng)).map_err(|e| e.to_string())?;
        let Some(t) = delta(&s0).map_err(|e| e.to_string())? else { continue };
        if t.is_zero() {
            continue;
        }
        let w = poincare_homotopy(&t).map_err(|e| format!("{:?}: {e}", t.shape().signature()))?;
        let back = delta(&w.potential).map_err(|e| e.to_string())?;
        if back.as_ref() != Some(&t) {
            return Err(format!("round trip failed on D={dim} {:?}", shape.signature()));
        }
        done += 1;
    }
    Ok(format!("{done} closed inputs"))
}

fn criterion_4() -> Outcome {
    let trunc = Truncation::torus(1);
    let mut failures = Vec::new();
    for dim in 2..=3 {
        let expected = binomial_row(dim);
        for (arity, aug) in [(1, vec![]), (2, vec![0]), (2, vec![1])] {
            let spec = build_complex(dim, arity, &aug).map_err(|e| e.to_string())?;
            let h = cohomology(&spec, &trunc).map_err(|e| e.to_string())?.h();
            if h != expected {
                failures.push(format!("D={dim} N={arity} aug {aug:?}: h={h:?}, expected {expected:?}"));
            }
        }
    }
    if failures.is_empty() {
        Ok("torus K=1 matches de Rham".into())
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for dim in 1..=4 {
        let caps: &[u32] = if dim <= 3 { &[4, 5] } else { &[4] };
        let mut complexes = vec![(1, vec![])];
        complexes.extend((0..=dim).map(|k| (2, vec![k])));
        for &cap in caps {
            for (arity, aug) in &complexes {
                let spec = build_complex(dim, *arity, aug).map_err(|e| e.to_string())?;
                let h = cohomology(&spec, &Truncation::boxed(cap)).map_err(|e| e.to_string())?.h();
                let spine_start = aug.iter().sum::<usize>();
                for (j, node) in spec.nodes.iter().enumerate().skip(spine_start) {
                    if node.signature().iter().all(|p| *p >= 1) {
                        checked += 1;
                        if h[j] != 0 {
                            failures.push(format!("D={dim} N={arity} aug {aug:?} cap {cap} position {j}: h={}", h[j]));
                        }
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} spine positions"))
    } else {
        Err(format!("{} of {checked} spine positions nonzero: {}", failures.len(), failures.join("; ")))
    }
}

fn criterion_6() -> Outcome {
    let opts = DualityOptions::default();
    let r = build_duality_maps(&Shape::new(5, vec![1, 1]).map_err(|e| e.to_string())?, &opts).map_err(|e| e.to_string())?;
    if r.duals != vec![vec![2, 1], vec![2, 2]] {
        return Err(format!("duals {:?}", r.duals));
    }
    if r.test_fields.fields != 20 {
        return Err(format!("{} test fields", r.test_fields.fields));
    }
    for m in &r.maps {
        if !m.invertible || m.residual_nonzero != 0 || m.triangular_residual_nonzero != 0 {
            return Err(format!("map {} fails invertibility or commutativity", m.index));
        }
    }
    let t = &r.test_fields;
    if !(t.eta_consistent && t.round_trip && t.transport_exact && t.charges_agree) {
        return Err(format!("test-field checks {t:?}"));
    }
    let s = build_duality_maps(&Shape::new(4, vec![1]).map_err(|e| e.to_string())?, &opts).map_err(|e| e.to_string())?;
    if s.duals != vec![vec![1]] || s.maps.len() != 1 {
        return Err(format!("D=4 {{1}} duals {:?}", s.duals));
    }
    let m = &s.maps[0];
    if !(m.invertible && m.restriction_unique && m.residual_nonzero == 0 && s.all_checks_pass()) {
        return Err("D=4 {1} map is not a unique invertible restriction".into());
    }
    Ok(format!(
        "D=5 η = {:?}, n = {}; D=4 η = {}",
        r.etas().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        r.on_shell_dimension,
        m.eta
    ))
}

fn run_cli(args: &[&str]) -> std::io::Result<std::process::Output> {
    Command::new(env!("CARGO_BIN_EXE_multiform")).args(args).output()
}

fn criterion_7() -> Outcome {
    let spec = build_complex(2, 1, &[]).map_err(|e| e.to_string())?;
    let trunc = Truncation::torus(1);
    match as_reduction(&spec, 0, &trunc, false) {
        Err(Error::Precondition(msg)) if msg.contains("H^{0}") => {}
        other => return Err(format!("zero mode not reported: {other:?}")),
    }
    let ok = as_reduction(&spec, 0, &trunc, true).map_err(|e| e.to_string())?;
    if !ok.bijection {
        return Err("nonzero modes do not give a bijection".into());
    }
    let out = run_cli(&["duality", "--dim", "5", "--signature", "2,2"]).map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    if out.status.code() != Some(3) || !stderr.contains("2 > 1") {
        return Err(format!("D=5 {{2,2}} exited {:?}: {stderr}", out.status.code()));
    }
    Ok("H^{0} named; D=5 {2,2} exit 3".into())
}

fn criterion_8() -> Outcome {
    let b = default_balance(4).map_err(|e| e.to_string())?;
    let tol = 1e-8 * b.delta_direct.abs().max(b.delta_news.abs()).max(1.0);
    if b.residual > tol {
        return Err(format!("residual {:e} > {tol:e}", b.residual));
    }
    let r = refinement(4, DEFAULT_RESOLUTION, &REFINEMENT_STEPS).map_err(|e| e.to_string())?;
    if !(r.observed_order >= 2.0) {
        return Err(format!("refinement slope {}", r.observed_order));
    }
    Ok(format!("residual {:e}, slope {:.2}", b.residual, r.observed_order))
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 2..=4 {
        for n in -10..=10i64 {
            let v = flux_quantization(n, k).map_err(|e| e.to_string())?;
            let err = (v - n as f64).abs();
            if err > 1e-8 {
                return Err(format!("n={n} k={k}: {v}"));
            }
            worst = worst.max(err);
        }
    }
    Ok(format!("max error {worst:e}"))
}

fn criterion_10() -> Outcome {
    let m = fracton_moments(&bump_field(64).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if m.boundary_warning {
        return Err("bump reaches the boundary".into());
    }
    let rel = m.relative();
    if rel > 1e-6 {
        return Err(format!("relative moment {rel:e}"));
    }
    Ok(format!("relative moment {rel:e}"))
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for name in ["first.json", "second.json"] {
        let path = dir.path().join(name);
        let out = run_cli(&["selftest", "--threads", "1", "--out", path.to_str().unwrap_or_default()])
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("selftest exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        reports.push(std::fs::read(Path::new(&path)).map_err(|e| e.to_string())?);
    }
    if reports[0] != reports[1] {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", reports[0].len()))
}

type Criterion = (usize, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "nilpotency and commutation", Duration::from_secs(60), criterion_1),
        (2, "Young projectors", Duration::from_secs(60), criterion_2),
        (3, "homotopy round trip", Duration::from_secs(120), criterion_3),
        (4, "torus cohomology equals de Rham", Duration::from_secs(120), criterion_4),
        (5, "box spine triviality", Duration::from_secs(60), criterion_5),
        (6, "duality maps", Duration::from_secs(120), criterion_6),
        (7, "precondition failures", Duration::MAX, criterion_7),
        (8, "memory balance", Duration::from_secs(30), criterion_8),
        (9, "flux quantization", Duration::from_secs(10), criterion_9),
        (10, "fracton moments", Duration::from_secs(30), criterion_10),
        (11, "selftest determinism", Duration::MAX, criterion_11),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || *f == n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.1?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
