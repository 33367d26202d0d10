//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use orbit_resolve::deformation::{central_element, common_levi_match};
use orbit_resolve::oracle::{
    build_algebra, centralizer_dimension, nilpotent_of_jordan_type, parabolic_from_flag,
};
use orbit_resolve::partitions::{all_partitions, dual_partition, enumerate_orbits, orbit_dimension};
use orbit_resolve::polarizations::{flag_types_a, isotropic_flag_types, split_in_d, QFilter, Verifier};
use orbit_resolve::report::{cmd_deform, RunConfig};
use orbit_resolve::{LieTypeRank, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tr(s: &str) -> LieTypeRank {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn partition_kernel() -> Outcome {
    let mut pairs = 0usize;
    for n in 1..=12 {
        let all = all_partitions(n);
        if n == 12 {
            ensure(all.len() >= 77, || format!("only {} partitions of 12", all.len()))?;
        }
        for a in &all {
            let da = dual_partition(a);
            ensure(da.total() == n, || format!("dual of {a} changes the total"))?;
            ensure(&dual_partition(&da) == a, || format!("dual is not an involution at {a}"))?;
            for b in &all {
                pairs += 1;
                if a.dominates(b) {
                    ensure(dual_partition(b).dominates(&da), || format!("antitonicity fails at {a} >= {b}"))?;
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, n <= 12"))
}

fn type_a_core() -> Outcome {
    let start = Instant::now();
    let mut orbits = 0;
    for name in ["A1", "A2", "A3", "A4", "A5"] {
        let t = tr(name);
        let v = Verifier::new(t, 1, 5).map_err(|e| e.to_string())?;
        for o in enumerate_orbits(t) {
            for f in flag_types_a(&o.partition) {
                ensure(v.richardson_of(&f) == Some(&o.partition), || {
                    format!("{name} {f}: Richardson {:?}, expected {}", v.richardson_of(&f), o.partition)
                })?;
            }
            let r = v.verify_theorem(&o).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Pass && r.levi_classes.len() == 1, || {
                format!("{name} {o}: {} with {} Levi classes", r.verdict, r.levi_classes.len())
            })?;
            orbits += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{orbits} orbits PASS in {:.2}s", elapsed.as_secs_f64()))
}

/// Runs every orbit of each rank; returns verdict tallies or the first FAIL.
fn sweep(names: &[&str]) -> Result<(usize, usize), String> {
    let (mut pass, mut none) = (0, 0);
    for &name in names {
        let v = Verifier::new(tr(name), 1, 5).map_err(|e| e.to_string())?;
        for o in enumerate_orbits(tr(name)) {
            let r = v.verify_theorem(&o).map_err(|e| e.to_string())?;
            match r.verdict {
                Verdict::Pass => pass += 1,
                Verdict::NoResolution => none += 1,
                other => return Err(format!("{name} {o}: {other}")),
            }
        }
    }
    Ok((pass, none))
}

fn injectivity(name: &str) -> Result<usize, String> {
    let t = tr(name);
    let v = Verifier::new(t, 1, 5).map_err(|e| e.to_string())?;
    let qs: Vec<usize> = match t.family() {
        orbit_resolve::Family::C => (0..=t.ambient_dim()).step_by(2).collect(),
        _ => v.q_values(),
    };
    for &q in &qs {
        let rep = v.spaltenstein_injectivity_check(q).map_err(|e| e.to_string())?;
        ensure(rep.injective, || format!("{name} q={q}: collisions {:?}", rep.collisions))?;
    }
    Ok(qs.len())
}

fn type_c_core() -> Outcome {
    let qs = injectivity("C2")? + injectivity("C3")?;
    let (pass, none) = sweep(&["C2", "C3"])?;
    Ok(format!("injective for {qs} values of q; {pass} PASS, {none} NO_RESOLUTION"))
}

fn types_b_d() -> Outcome {
    let qs = injectivity("B2")? + injectivity("B3")?;
    let (pass, none) = sweep(&["B2", "B3", "D2", "D3", "D4"])?;
    let (mut checked, mut pairs) = (0, 0);
    for name in ["D2", "D3", "D4"] {
        let t = tr(name);
        let alg = build_algebra(t);
        for f in isotropic_flag_types(t).map_err(|e| e.to_string())? {
            let k = f.len();
            let rule = k % 2 == 0 && f.blocks()[k / 2 - 1] >= 2;
            ensure(split_in_d(&f) == rule, || format!("{name} {f}: split rule disagrees"))?;
            checked += 1;
            if rule {
                // Both classes of a split pair are realized by the same
                // coordinate parabolic; they differ by an outer automorphism.
                let pd = parabolic_from_flag(&alg, &f).map_err(|e| e.to_string())?;
                let first = central_element(&alg, &pd).map_err(|e| e.to_string())?;
                let second = central_element(&alg, &pd).map_err(|e| e.to_string())?;
                ensure(common_levi_match(&first, &second), || format!("{name} {f}: split pair Levi mismatch"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pass} PASS, {none} NO_RESOLUTION; B injective for {qs} q; split rule on {checked} flag types; {pairs} split pairs"
    ))
}

fn degeneration_certificates() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D2", "D3", "D4"] {
        let mut config = RunConfig::new(tr(name));
        config.samples = 20;
        let rep = cmd_deform(&config).map_err(|e| e.to_string())?;
        let s = &rep.summary;
        let failures: Vec<String> = rep
            .deformations
            .iter()
            .flat_map(|r| r.failures.iter().map(move |f| format!("{} t={} {}", r.polarizations[0], f.t, f.check)))
            .collect();
        ensure(s.certificate_failures == 0 && s.levi_mismatches == 0 && s.inconclusive == 0, || {
            format!("{name}: {failures:?}")
        })?;
        total += s.certificates_checked;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} fiber certificates in {:.2}s", elapsed.as_secs_f64()))
}

fn oracle_consistency() -> Outcome {
    let (mut orbits, mut flags) = (0, 0);
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D2", "D3", "D4"] {
        let t = tr(name);
        let alg = build_algebra(t);
        let distinct: BTreeSet<_> = enumerate_orbits(t).into_iter().map(|o| o.partition).collect();
        for d in distinct {
            let x = nilpotent_of_jordan_type(&alg, d.parts()).ok_or_else(|| format!("{name} {d}: no representative"))?;
            let centralizer = centralizer_dimension(&alg, &x).map_err(|e| e.to_string())?;
            let dim = orbit_dimension(t, &d).map_err(|e| e.to_string())?;
            ensure(dim == alg.dim() - centralizer, || format!("{name} {d}: {dim} vs {}", alg.dim() - centralizer))?;
            orbits += 1;
        }
        let v = Verifier::new(t, 1, 5).map_err(|e| e.to_string())?;
        for e in v.entries() {
            let r = v.richardson_of(&e.flag_type).ok_or_else(|| format!("{name} {}: unsettled", e.flag_type))?;
            let dim = orbit_dimension(t, r).map_err(|e| e.to_string())?;
            ensure(2 * e.dim_pu == dim, || format!("{name} {}: 2*{} != {dim}", e.flag_type, e.dim_pu))?;
            flags += 1;
        }
    }
    Ok(format!("{orbits} orbits, {flags} flag types"))
}

fn determinism() -> Outcome {
    let run = || {
        Process::new(env!("CARGO_BIN_EXE_orbit-resolve"))
            .args(["verify", "C3", "--seed", "42"])
            .env_remove("ORBIT_RESOLVE_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || format!("exit {:?} / {:?}", a.status, b.status))?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "outputs differ".to_string())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn negative_control() -> Outcome {
    let t = tr("C2");
    let exact = Verifier::new(t, 1, 5).map_err(|e| e.to_string())?;
    let loose = exact.clone().with_filter(QFilter::OffByOne);
    let mut flipped = Vec::new();
    for o in enumerate_orbits(t) {
        let before = exact.verify_theorem(&o).map_err(|e| e.to_string())?.verdict;
        let after = loose.verify_theorem(&o).map_err(|e| e.to_string())?.verdict;
        if before == Verdict::Pass && after == Verdict::Fail {
            flipped.push(o.to_string());
        }
    }
    ensure(!flipped.is_empty(), || "no verdict flipped".to_string())?;
    Ok(format!("flipped {}", flipped.join(" ")))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("partition kernel", partition_kernel),
        ("type A theorem core", type_a_core),
        ("type C theorem core", type_c_core),
        ("types B and D", types_b_d),
        ("degeneration certificates", degeneration_certificates),
        ("oracle self-consistency", oracle_consistency),
        ("determinism", determinism),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
