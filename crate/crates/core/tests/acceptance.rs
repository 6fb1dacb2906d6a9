//! Acceptance criteria. Run with `cargo test --test acceptance`; each
//! criterion prints one PASS/FAIL line and any FAIL makes the run fail.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resurgence::engine::{
    conjecture_checks, denkert_estimate, dd_window, rho_hat, rho_int_search, Bracket, SchemeContext,
};
use resurgence::fatpoints::MonomialFatScheme;
use resurgence::fleet::{builtin_fleet, csv_string, read_fleet, run_fleet, FleetRow};
use resurgence::monomial::{in_power, ExponentVector, MonomialIdeal};
use resurgence::newton::{briancon_skoda_check, closure_of_power, np_contains, NewtonPolyhedron};
use resurgence::p2::{alpha_p2, build_ex3, line_noncontainment, Field};
use resurgence::rational::{frac, int};
use resurgence::vertices::verify_vertex_theorem;
use resurgence::{engine, par};

const BUDGET_EX4: Duration = Duration::from_secs(1);
const BUDGET_STAR: Duration = Duration::from_secs(30);
const BUDGET_DENKERT: Duration = Duration::from_secs(30);
const BUDGET_VERTICES: Duration = Duration::from_secs(120);
const BUDGET_EX3: Duration = Duration::from_secs(300);
const BUDGET_PROPERTIES: Duration = Duration::from_secs(300);
const BUDGET_DETERMINISM: Duration = Duration::from_secs(120);

const EPSILON: (i64, i64) = (1, 12);
const R_PROBE: u32 = 12;
const GRID_CAP: u32 = 8;
const T_CHECK: u32 = 3;
const BS_SAMPLES: usize = 50;
const BS_SEED: u64 = 20_240_601;
const ORACLE_DEGREE: u32 = 12;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ev(v: &[u32]) -> ExponentVector {
    ExponentVector::new(v.to_vec())
}

fn three_points() -> MonomialFatScheme {
    MonomialFatScheme::coordinate_points(2, &[(0, 1), (1, 1), (2, 1)]).unwrap()
}

fn ex4() -> Outcome {
    let cubes = MonomialIdeal::from_generators(3, vec![ev(&[3, 0, 0]), ev(&[0, 3, 0]), ev(&[0, 0, 3])]).map_err(err)?;
    let s = rho_int_search(&cubes, R_PROBE).map_err(err)?;
    ensure(s.value == Bracket::exact(int(2)), format!("rho_int = {}", s.value))?;
    let w = s.witness.ok_or("no witness")?;
    ensure((w.m, w.r) == (2, 1) && w.monomial == ev(&[2, 2, 2]), format!("witness {} at ({}, {})", w.monomial, w.m, w.r))?;
    Ok(format!("rho_int = 2, witness {} at (m, r) = (2, 1)", w.monomial))
}

fn star() -> Outcome {
    let z = three_points();
    let ideal = z.ideal().map_err(err)?;
    ensure(ideal.alpha().map_err(err)? == 2, "alpha")?;
    ensure(z.waldschmidt() == frac(3, 2), format!("waldschmidt {}", z.waldschmidt()))?;
    let rh = rho_hat(&z, GRID_CAP).map_err(err)?;
    ensure(rh.value == frac(4, 3) && rh.certified(), format!("rho_hat {} certified {}", rh.value, rh.certified()))?;
    let ri = rho_int_search(&ideal, R_PROBE).map_err(err)?;
    ensure(ri.value == Bracket::exact(int(1)) && ri.scope != "probe", format!("rho_int {} ({})", ri.value, ri.scope))?;
    let w = dd_window(&z, &rh, &frac(EPSILON.0, EPSILON.1)).map_err(err)?;
    ensure(w.rho == Bracket::half_open(frac(4, 3), frac(17, 12)), format!("window {}", w.rho))?;
    Ok(format!("alpha 2, waldschmidt 3/2, rho_hat 4/3 certified, rho_int 1 ({}), rho in {}", ri.scope, w.rho))
}

fn denkert() -> Outcome {
    let z = three_points();
    let eps = frac(EPSILON.0, EPSILON.1);
    let d1 = denkert_estimate(&z, 2, 1, &eps, T_CHECK).map_err(err)?;
    let d2 = denkert_estimate(&z, 2, 2, &eps, T_CHECK).map_err(err)?;
    ensure((d1.big_a, d1.big_b) == (4, 3), format!("s=1: (A, B) = ({}, {})", d1.big_a, d1.big_b))?;
    ensure((d2.big_a, d2.big_b) == (8, 6), format!("s=2: (A, B) = ({}, {})", d2.big_a, d2.big_b))?;
    let bound = frac(4, 3);
    ensure(d1.rho_hat_upper <= bound && d2.rho_hat_upper <= bound, "rho_hat upper bounds")?;
    ensure(d1.rho_lower == int(1) && d2.rho_lower == frac(8, 7), format!("lower bounds {} and {}", d1.rho_lower, d2.rho_lower))?;
    ensure(d2.rho_lower > d1.rho_lower, "bracket did not tighten")?;
    Ok("(A, B) = (4, 3) then (8, 6); rho >= 1 then 8/7; rho_hat <= 4/3".into())
}

fn vertices() -> Outcome {
    let mut parts = Vec::new();
    for (n, m_max) in [(2, 5), (3, 4), (4, 3)] {
        let r = verify_vertex_theorem(n, m_max).map_err(err)?;
        ensure(r.holds(), format!("N = {n} fails: {:?}", r.rows))?;
        let gens: usize = r.rows.iter().map(|row| row.generators).sum();
        parts.push(format!("N={n} m<={m_max} ({gens} generators)"));
    }
    Ok(parts.join(", "))
}

fn ex3() -> Outcome {
    let e = build_ex3(0, Field::default()).map_err(err)?;
    let z = &e.scheme;
    let alphas = [1, 2, 4].map(|m| alpha_p2(z, m));
    let alphas: Vec<u32> = alphas.into_iter().collect::<Result<_, _>>().map_err(err)?;
    ensure(alphas == [3, 5, 10], format!("alphas {alphas:?}"))?;
    let c = line_noncontainment(z, &e.line, 25, 20, 65).map_err(err)?;
    ensure(c.symbolic_order == 15, format!("order along L = {}", c.symbolic_order))?;
    ensure(c.power_order_bound == 18, format!("power bound {}", c.power_order_bound))?;
    ensure(c.certified, "not certified")?;
    Ok(format!(
        "{}: alpha(Z, 2Z, 4Z) = 3, 5, 10; order 15 < 18, I(25Z) not in I(Z)^20 (seed {})",
        c.field, e.seed
    ))
}

fn random_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=4);
    let gens = (0..k).map(|_| ExponentVector::new((0..n).map(|_| rng.gen_range(0..=3)).collect())).collect();
    MonomialIdeal::from_generators(n, gens).unwrap()
}

fn monomials_up_to(n: usize, d: u32) -> Vec<ExponentVector> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if cur.len() == n {
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

fn properties() -> Outcome {
    let fleet = builtin_fleet();
    let mut summary = Vec::new();

    // Briançon-Skoda on seeded random ideals.
    let mut rng = ChaCha8Rng::seed_from_u64(BS_SEED);
    let ideals: Vec<MonomialIdeal> = (0..BS_SAMPLES).map(|_| random_ideal(&mut rng)).collect();
    let mut bs = 0;
    for i in &ideals {
        for t in 1..=3 {
            ensure(briancon_skoda_check(i, t).map_err(err)?, format!("(a) Briançon-Skoda fails for {i}, t = {t}"))?;
            bs += 1;
        }
    }
    summary.push(format!("a:{bs}"));

    let mut b_count = 0;
    let mut c_count = 0;
    for (name, z) in &fleet {
        let ctx = SchemeContext::new(z, engine::Limits::default()).map_err(err)?;
        let big_n = z.big_height() as u32;
        for r in 1..=4 {
            let c = ctx.symbolic_in_power(big_n * r, r).map_err(err)?;
            ensure(c.holds(), format!("(b) {name}: I^({}) not in I^{r}", big_n * r))?;
            b_count += 1;
        }
        for m in 1..=4 {
            let cl = closure_of_power(&ctx.ideal, big_n + m - 1).map_err(err)?;
            let v = ctx.oracle.ideal_contained(&cl, m, 0).map_err(err)?;
            ensure(v.is_contained(), format!("(c) {name}: closure(I^{}) not in I^{m}", big_n + m - 1))?;
            c_count += 1;
        }
    }
    summary.push(format!("b:{b_count}"));
    summary.push(format!("c:{c_count}"));

    // Oracle equivalence on the fleet ideals in three variables.
    let mut d_count = 0u64;
    let monos = monomials_up_to(3, ORACLE_DEGREE);
    for (name, z) in fleet.iter().filter(|(_, z)| z.nvars() == 3) {
        let ideal = z.ideal().map_err(err)?;
        let np = NewtonPolyhedron::new(&ideal).map_err(err)?;
        let powers: Vec<MonomialIdeal> = (1..=4).map(|r| ideal.power(r)).collect::<Result<_, _>>().map_err(err)?;
        let mismatches: Vec<String> = par::map(&monos, |a| {
            let mut bad = Vec::new();
            for (k, p) in powers.iter().enumerate() {
                let r = k as u32 + 1;
                if in_power(a, &ideal, r, 0).unwrap() != p.contains_monomial(a).unwrap() {
                    bad.push(format!("{name}: in_power {a} r={r}"));
                }
            }
            if np_contains(&ideal, a).unwrap() != np.contains(a) {
                bad.push(format!("{name}: np_contains {a}"));
            }
            for t in 2..=3 {
                if np.contains_scaled_lp(a, t) != np.contains_scaled(a, t) {
                    bad.push(format!("{name}: scaled {a} t={t}"));
                }
            }
            bad
        })
        .into_iter()
        .flatten()
        .collect();
        ensure(mismatches.is_empty(), format!("(d) {:?}", &mismatches[..mismatches.len().min(5)]))?;
        d_count += monos.len() as u64;
    }
    summary.push(format!("d:{d_count}"));

    // Implication chain, bound consistency and conjectures, via the reports.
    let settings = engine::ReportSettings::default();
    let mut findings = Vec::new();
    for (name, z) in &fleet {
        let rep = engine::resurgence_report(z, name, &settings).map_err(err)?;
        let flag = |n: &str| rep.consistency_flags.iter().find(|f| f.name == n).map(|f| f.ok);
        ensure(flag("mt3_chain") == Some(true), format!("(e) {name}: implication chain inverted"))?;
        ensure(flag("rho_hat_below_h_forces_rho_below_h") != Some(false), format!("(e) {name}: ρ̂ < h but ρ not below h"))?;
        let conj = conjecture_checks(z, 4, 6).map_err(err)?;
        if !conj.all_passed() {
            for (label, check) in [("grifo", &conj.grifo), ("hahu", &conj.hahu), ("chudnovsky", &conj.chudnovsky), ("valuation_chudnovsky", &conj.valuation_chudnovsky)] {
                for inst in check.failures() {
                    let reverified = match &inst.witness {
                        Some(w) => w.verify(z, &z.ideal().map_err(err)?).map_err(err)?,
                        None => false,
                    };
                    ensure(reverified, format!("(f) {name}: {label} failure at {} does not re-verify", inst.label))?;
                    findings.push(format!("{name}/{label}/{}", inst.label));
                }
            }
        }
    }
    summary.push("e:ok".into());
    if findings.is_empty() {
        summary.push("f:all pass".into());
    } else {
        summary.push(format!("f:FINDINGS {findings:?}"));
    }
    Ok(summary.join(" "))
}

fn determinism() -> Outcome {
    let fleet_file = Path::new(env!("CARGO_MANIFEST_DIR")).join("fleet/acceptance.fleet");
    let entries = read_fleet(&fleet_file).map_err(err)?;
    let settings = engine::ReportSettings::default();
    let run = || {
        let results = run_fleet(&entries, &settings);
        let rows: Vec<FleetRow> = results.iter().map(|r| r.0.clone()).collect();
        let json: Vec<String> = results.iter().map(|r| serde_json::to_string(&r.1).unwrap()).collect();
        (csv_string(&rows).unwrap(), json.join("\n"), rows)
    };
    let (csv1, json1, rows) = run();
    let (csv2, json2, _) = run();
    let (csv3, json3, _) = par::with_threads(1, run);
    ensure(rows.len() == 6 && rows.iter().all(|r| r.error.is_empty()), "fleet rows missing or erroring")?;
    ensure(csv1 == csv2 && json1 == json2, "two runs differ")?;
    ensure(csv1 == csv3 && json1 == json3, "single-threaded run differs")?;
    Ok(format!("{} CSV bytes, {} JSON bytes identical across 3 runs", csv1.len(), json1.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 7] = [
        ("1 ex4 rho_int = 2", BUDGET_EX4, ex4),
        ("2 star configuration s=3 N=2", BUDGET_STAR, star),
        ("3 denkert convergence", BUDGET_DENKERT, denkert),
        ("4 vertex decomposition", BUDGET_VERTICES, vertices),
        ("5 ex3 char p", BUDGET_EX3, ex3),
        ("6 property suites", BUDGET_PROPERTIES, properties),
        ("7 determinism", BUDGET_DETERMINISM, determinism),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:.2?} > {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{took:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{took:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
