//! Acceptance run: one line per criterion; exits nonzero if any fails.
//! Every comparison is exact (rational or cyclotomic equality); the only
//! tolerances are the wall-clock budgets below.

mod common;

use common::{closure_oracle, config, mutants, suite};
use erskit::ambient::{AffineType, AmbientSpace, Vector, Q};
use erskit::base_system::{GClass, QebsConfig};
use erskit::presentation::{emit_sr, emit_sr_sharp, emit_tsr};
use erskit::quantum_torus::{compare_q_one, verify_q, QMode};
use erskit::roots::{self, check_ebs, classify_rank1, classify_rank2, generate, generate_pebs, RootWindow};
use erskit::unfold::{auto_height, build_handy, transport, verify_pi, Realization};
use num_traits::{One, Zero};
use std::collections::HashSet;
use std::time::{Duration, Instant};

/// Exact arithmetic throughout: no numeric tolerance is ever applied.
const EXACT: Q = Q::ZERO;

const BUDGET_RANK1: Duration = Duration::from_secs(1);
const BUDGET_RANK2: Duration = Duration::from_secs(10);
const BUDGET_EBS: Duration = Duration::from_secs(60);
const BUDGET_PI_PER_CONFIG: Duration = Duration::from_secs(300);
const BUDGET_QTORUS: Duration = Duration::from_secs(30);

const SUITE_MIN: usize = 12;
const MUTANTS_MIN: usize = 3;

fn w(m: i64, n: i64) -> RootWindow {
    RootWindow::new(m, n, 2).unwrap()
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let mut o = f();
    let dt = t.elapsed();
    if let Some(b) = budget {
        if dt > b {
            o.pass = false;
            o.detail = format!("{} (over the {:?} budget)", o.detail, b);
        }
    }
    (o, dt)
}

fn c1_rank1() -> Outcome {
    // (g(α), case, name, p(α) where tabulated)
    let table = [
        (GClass::Empty, "(i)", "A_1^(1)", None),
        (GClass::TwoZPlusOne, "(ii)", "A_2^(2)", None),
        (GClass::Z, "(iii)", "B^(1)(0,1)", None),
        (GClass::TwoZ, "(iv)", "C^(2)(2)", None),
        (GClass::FourZPlusTwo, "(v)", "A^(4)(0,2)", Some(0)),
        (GClass::FourZ, "(vi)", "A^(4)(0,2)", Some(1)),
    ];
    let base = QebsConfig::trivial("D3^(2)".parse().unwrap()).unwrap();
    let mut tags = HashSet::new();
    for (g, case, name, p) in table {
        // the 4Z classes need k(α_1) = 2k(α_0) for KG3
        let c = if matches!(g, GClass::FourZ | GClass::FourZPlusTwo) {
            base.with_k(vec![1, 2, 1]).unwrap().with_g(0, g)
        } else {
            base.with_g(0, g)
        };
        let r = match classify_rank1(&c, 0, w(6, 6)) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("g = {g}: {e}")),
        };
        if r.case != case || r.name.to_string() != name || p.is_some_and(|p| p != r.parity) || !r.ok() {
            return outcome(false, format!("g = {g}: got {} {} p={}", r.case, r.name, r.parity));
        }
        tags.insert(r.case);
    }
    outcome(tags.len() == 6, format!("{} distinct case tags", tags.len()))
}

fn c2_rank2() -> Outcome {
    let rows = [
        ("a2_1", 0, 1, "(i)", "s_a(-b*)", "A_2^(1)"),
        ("d3_2", 0, 1, "(ii)", "s_a(-b*)", "C_2^(1)"),
        ("g2_1", 2, 1, "(iii)", "s_b s_a(-b*)", "G_2^(1)"),
        ("d3_2_k2", 0, 1, "(iv)", "s_b(-a*)", "D_3^(2)"),
        ("g2_1_k3", 2, 1, "(v)", "s_a s_b(-a*)", "D_4^(3)"),
        ("d3_2_odd", 0, 1, "(vi)", "s_b(-a*)", "A_4^(2)"),
        ("d3_2_z", 0, 1, "(vii)", "s_b(-a*)", "B^(1)(0,2)"),
        ("d3_2_2z", 0, 1, "(viii)", "s_a(-b*)", "A^(2)(0,3)"),
        ("d3_2_k2_2z", 0, 1, "(ix)", "s_b(-a*)", "C^(2)(3)"),
        ("d3_2_k2_4z2", 0, 1, "(x)", "s_b(-a*)", "A^(4)(0,4)"),
        ("d3_2_k2_4z", 0, 1, "(xi)", "s_b(-a*)", "A^(4)(0,4)"),
    ];
    let mut tags = HashSet::new();
    for (file, a, b, case, word, name) in rows {
        let r = match classify_rank2(&config(file), a, b, w(6, 6)) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("{file}: {e}")),
        };
        if (r.case, r.gamma_word, r.name.to_string().as_str()) != (case, word, name) {
            return outcome(false, format!("{file}: got {} {} {}", r.case, r.gamma_word, r.name));
        }
        if !r.gamma_ok || !r.ok() {
            return outcome(false, format!("{file}: γ = {:?} not verified", r.gamma));
        }
        tags.insert(r.case);
    }
    outcome(tags.len() == 11, format!("{} distinct case tags, every γ in R_(α,β) ∩ (-a + Z_-Π)", tags.len()))
}

fn c3_ebs() -> Outcome {
    let suite = suite();
    let families: HashSet<_> = suite.iter().map(|(_, c)| c.space().affine_type().family()).collect();
    let minimal: HashSet<_> = AffineType::minimal_ranks().iter().map(|t| t.family()).collect();
    if suite.len() < SUITE_MIN || !minimal.is_subset(&families) {
        return outcome(false, format!("suite of {} misses families", suite.len()));
    }
    for (name, c) in &suite {
        let rep = check_ebs(&generate(c, w(6, 6)).unwrap());
        if !rep.pass {
            return outcome(false, format!("{name} fails"));
        }
    }
    let mutants = mutants();
    for (name, c) in &mutants {
        let rep = check_ebs(&generate_pebs(c, w(6, 6)).unwrap());
        if rep.pass || rep.witness().is_none() {
            return outcome(false, format!("mutant {name} not caught with a witness"));
        }
    }
    outcome(mutants.len() >= MUTANTS_MIN, format!("{} configs pass, {} mutants fail with witnesses", suite.len(), mutants.len()))
}

fn c4_handy() -> Outcome {
    let suite = suite();
    for (name, c) in &suite {
        let hd = match build_handy(c) {
            Ok(h) => h,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        if !hd.pass() || hd.len() as i64 != hd.k_vee.iter().sum::<i64>() {
            return outcome(false, format!("{name}: HD checks or |Ī| ≠ Σk∨"));
        }
    }
    outcome(true, format!("HD1-HD10 and |Ī| = Σk∨ on {} configs", suite.len()))
}

fn c5_pi() -> Outcome {
    let mut notes = Vec::new();
    for name in ["d3_2", "d3_2_odd", "d3_2_z"] {
        let t = Instant::now();
        let rep = match verify_pi(&config(name), None) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let dt = t.elapsed();
        let ok = rep.pass
            && rep.failures.is_empty()
            && rep.kappa_consistent
            && !rep.kappa.is_zero()
            && rep.pd3
            && rep.cartan_nonzero
            && dt <= BUDGET_PI_PER_CONFIG;
        if !ok {
            return outcome(false, format!("{name}: failures {:?}, κ {} ({:?})", rep.failures, rep.kappa, dt));
        }
        notes.push(format!("{name}: {} relations, H={}, κ={}", rep.relations, rep.height, rep.kappa));
    }
    outcome(true, notes.join("; "))
}

fn c6_qtorus() -> Outcome {
    let c = QebsConfig::trivial("A2^(1)".parse().unwrap()).unwrap();
    let rep = match verify_q(&c, QMode::Formal) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let identities = rep.identities.as_ref().is_some_and(|i| i.pass());
    let modified = ["SR6", "SR7"].iter().all(|t| rep.q_modified.iter().any(|l| l.starts_with(t)));
    let q_one = match compare_q_one(&c) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let pass = rep.pass && identities && modified && q_one.agree;
    outcome(
        pass,
        format!(
            "{} relations ({} q-modified), identities {}, q=1 agrees with unfold: {}",
            rep.relations,
            rep.q_modified.len(),
            if identities { "hold" } else { "fail" },
            q_one.agree
        ),
    )
}

fn c7_null_root() -> Outcome {
    for t in AffineType::minimal_ranks() {
        let s = AmbientSpace::new(t).unwrap();
        // δ from the marks, checked against the Cartan kernel independently
        let marks = s.marks();
        let kernel = s.cartan().iter().all(|row| row.iter().zip(marks).map(|(a, x)| a * x).sum::<i64>() == 0);
        let mut delta = Vector::zero(s.dim());
        for (i, &x) in marks.iter().enumerate() {
            delta = &delta + &s.alpha(i).scale(Q::from_integer(x));
        }
        if !kernel || s.pair(&delta, &delta) != Q::zero() || s.pair(&s.lambda_delta(), &delta) != Q::one() {
            return outcome(false, format!("{t}"));
        }
    }
    outcome(true, format!("{} families", AffineType::minimal_ranks().len()))
}

fn c8_transport() -> Outcome {
    let mut worst = 0;
    let mut total = 0;
    for (name, c) in suite() {
        let rep = match transport(&c, RootWindow::new(4, 4, 1).unwrap(), 1, None) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        if !rep.pass {
            return outcome(false, format!("{name}: unreached {:?}, failing {:?}", rep.unreached, rep.failures));
        }
        total += rep.targets;
        worst = worst.max(rep.height);
    }
    outcome(true, format!("{total} roots reached, nonzero and one-dimensional (max height {worst})"))
}

fn c9_twist() -> Outcome {
    let c = config("d3_2_k2_4z");
    match roots::twist_4z(&c, 0, w(6, 6)) {
        Ok(t) => outcome(t.bijective(), format!("{} roots mapped both ways", t.checked)),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c10_ears() -> Outcome {
    let base = config("d3_2");
    let cases = [
        (base.clone(), "B_2"),
        (config("d3_2_k2"), "B_2"),
        (config("d3_2_odd"), "BC_2"),
        (base.with_g(2, GClass::TwoZPlusOne), "BC_2"),
    ];
    let mut compared = 0;
    for (c, x) in cases {
        let d = match roots::ears_data(&c, w(6, 6)) {
            Ok(d) => d,
            Err(e) => return outcome(false, e.to_string()),
        };
        if d.x != x || !d.window_matches || d.e.parts.is_empty() != (x == "B_2") {
            return outcome(false, format!("expected {x}, got {}", d.x));
        }
        compared += d.compared;
    }
    outcome(true, format!("B_l / BC_l split holds, {compared} roots compared"))
}

fn c11_presentations() -> Outcome {
    let suite = suite();
    let mut sharper = Vec::new();
    for (name, c) in &suite {
        let sets = [emit_sr_sharp(c), emit_tsr(c)];
        let h = sets.iter().map(auto_height).max().unwrap();
        let real = Realization::new(c, h).unwrap();
        for set in &sets {
            match real.verify(set) {
                Ok(r) if r.pass => {}
                Ok(r) => return outcome(false, format!("{name} {}: {:?}", set.preset, r.failures)),
                Err(e) => return outcome(false, format!("{name}: {e}")),
            }
        }
        if sets[0].count("SR5'") < emit_sr(c).count("SR5") {
            sharper.push(name);
        }
    }
    outcome(!sharper.is_empty(), format!("SR5' and TSR vanish; SR5' < SR5 on {} of {} configs", sharper.len(), suite.len()))
}

fn c12_oracle() -> Outcome {
    let suite = suite();
    for (name, c) in &suite {
        let got: HashSet<Vec<i64>> = generate(c, RootWindow::new(4, 4, 2).unwrap()).unwrap().lattice_set().into_iter().collect();
        if got != closure_oracle(c, 4, 4, 6) {
            return outcome(false, name.clone());
        }
    }
    outcome(true, format!("{} configs, exact set equality", suite.len()))
}

fn main() {
    assert!(EXACT.is_zero());
    let criteria: [Criterion; 12] = [
        ("rank-one classification table", Some(BUDGET_RANK1), c1_rank1),
        ("rank-two classification table", Some(BUDGET_RANK2), c2_rank2),
        ("EBS check on the suite and mutants", Some(BUDGET_EBS), c3_ebs),
        ("handy datum soundness", None, c4_handy),
        ("loop realization of SR1-9", None, c5_pi),
        ("quantum torus realization", Some(BUDGET_QTORUS), c6_qtorus),
        ("null-root identities", None, c7_null_root),
        ("n-word root-space witnesses", None, c8_transport),
        ("4Z twist bijection", None, c9_twist),
        ("EARS data", None, c10_ears),
        ("SR5' and TSR soundness", None, c11_presentations),
        ("generation equals closure oracle", None, c12_oracle),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let (o, dt) = timed(budget, f);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {} [{:.1}s]", i + 1, o.detail, dt.as_secs_f64());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
