//! The nine acceptance criteria, one pass/fail line each.

use std::time::{Duration, Instant};

use verma::commands::{a2_expected, example_a2_text, Identity, GOLDEN_A2};
use verma_core::catalog::Catalog;
use verma_core::embed::choose_nu_from_socle;
use verma_core::field::rat;
use verma_core::grassmann::{PointCounter, DEFAULT_PRIMES};
use verma_core::oracles::brute_grass_compare;
use verma_core::root_datum::{DimVector, Graph, Weight};
use verma_core::verma::{DeltaSum, Engine, OperatorReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn catalog(kind: &str, cutoff: u32) -> Catalog {
    Catalog::build(&Graph::builtin(kind).unwrap(), cutoff).unwrap()
}

fn engine(cat: &Catalog) -> Engine<'_> {
    Engine::new(PointCounter::new(cat, &DEFAULT_PRIMES).unwrap())
}

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn all_pass(label: &str, reports: &[OperatorReport]) -> Result<usize, String> {
    match reports.iter().find(|r| !r.pass()) {
        Some(r) => Err(format!("{label}: {} at {} defect {} {:?}", r.relation, r.slice, r.defect, r.witnesses)),
        None => Ok(reports.len()),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{what} took {t:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let text = example_a2_text(&DEFAULT_PRIMES).map_err(|e| e.to_string())?;
    if text != GOLDEN_A2 {
        return Err("output differs from the golden file".into());
    }
    let cat = catalog("A2", 4);
    let eng = engine(&cat);
    let lambda = w(&[1, 1]);
    let expected: [Identity; 12] = [
        (1, "0", &[("s1", 1)]),
        (2, "0", &[("s2", 1)]),
        (1, "s2", &[("s1+s2", 1), ("q2", 1)]),
        (2, "s1", &[("s1+s2", 1), ("q1", 1)]),
        (1, "s1+s2", &[("q2+s1", 1)]),
        (1, "q2", &[("q2+s1", 1)]),
        (2, "q1", &[("q1+s2", 1)]),
        (2, "s1+s2", &[("q1+s2", 1)]),
        (1, "q1+q2", &[]),
        (2, "q1+q2", &[]),
        (2, "s1+s1", &[("q1+s1", 2), ("s1+s1+s2", 1)]),
        (1, "s1+s1", &[("s1+s1+s1", -1)]),
    ];
    for (i, src, terms) in expected {
        let x = cat.class_by_name(src).unwrap();
        let got = eng.f_star(i - 1, &lambda, &eng.delta(&x)).map_err(|e| e.to_string())?;
        let want = a2_expected(&cat, src, i, terms).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("F{i} d({src}) = {}, expected {}", got.display(&cat), want.display(&cat)));
        }
    }
    let d3 = eng.f_star(1, &lambda, &eng.delta(&cat.class_by_name("s1+s2").unwrap())).unwrap();
    if d3 != DeltaSum::delta(&cat, &cat.class_by_name("q1+s2").unwrap()) {
        return Err(format!("F2 d3 = {}", d3.display(&cat)));
    }
    if !text.contains("F2 d3 = dq: differs, engine gives d(q1+s2)") {
        return Err("the inconsistent published line is not reported".into());
    }
    within(start, Duration::from_secs(10), "example")?;
    Ok(format!("golden match, 12 identities, F2 d3 pinned to d7, {:?}", start.elapsed()))
}

fn projective_line() -> Outcome {
    let cat = catalog("A2", 4);
    let eng = engine(&cat);
    let pc = PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap();
    let x = cat.class_by_name("s1+s1").unwrap();
    let y = cat.class_by_name("q1+s1").unwrap();
    let nu = w(&[2, 0]);
    let g2 = eng.up(&x, &nu, 1).map_err(|e| e.to_string())?;
    if g2.strata != vec![(y, 2)] || g2.ambient != 2 {
        return Err(format!("G(x,2w1,2) has ambient {} strata {:?}", g2.ambient, g2.strata));
    }
    let g1 = eng.up(&x, &nu, 0).map_err(|e| e.to_string())?;
    if !g1.strata.is_empty() || g1.ambient != 0 {
        return Err(format!("G(x,2w1,1) is not empty: {:?}", g1.strata));
    }
    for i in 0..2 {
        let c = brute_grass_compare(&pc, &x, i, Some(&nu)).map_err(|e| e.to_string())?;
        if !c.pass {
            return Err(format!("enumeration disagrees at i={}: {:?}", i + 1, c.diff));
        }
    }
    Ok("P^1 with one stratum q1+s1 of chi 2; G(x,2w1,1) empty; enumeration agrees".into())
}

fn relation_suites() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let cases: [(&str, &[i64], u32); 5] =
        [("A2", &[1, 1], 6), ("A2", &[2, 0], 6), ("A2", &[-1, 0], 6), ("A2", &[0, 0], 6), ("A3", &[1, 0, 1], 5)];
    for (kind, lambda, cutoff) in cases {
        let cat = catalog(kind, cutoff);
        let eng = engine(&cat);
        let reports = eng.verify_relations(&w(lambda), cutoff).map_err(|e| e.to_string())?;
        for family in ["Serre E", "Serre F", "[E,F]", "[H,E]", "[H,F]"] {
            for side in ["dual", "primal"] {
                let name = format!("{side} {family}");
                if !reports.iter().any(|r| r.relation == name) {
                    return Err(format!("{kind} {lambda:?}: no `{name}` checks"));
                }
            }
        }
        for name in ["pairing E*/F", "pairing F*/E"] {
            if !reports.iter().any(|r| r.relation == name) {
                return Err(format!("{kind} {lambda:?}: no `{name}` checks"));
            }
        }
        total += all_pass(&format!("{kind} {lambda:?}"), &reports)?;
    }
    within(start, Duration::from_secs(300), "relation suites")?;
    Ok(format!("{total} slice reports with zero defect, {:?}", start.elapsed()))
}

fn characters() -> Outcome {
    let mut summary = Vec::new();
    for (kind, lambda, cutoff, total) in [("A2", w(&[1, 1]), 4, 8), ("A3", w(&[1, 0, 1]), 6, 15)] {
        let cat = catalog(kind, cutoff);
        let eng = engine(&cat);
        let rows = eng.character(&lambda, cutoff).map_err(|e| e.to_string())?;
        for r in &rows {
            if r.word_rank as u64 != r.verma_dim || r.delta_rank as u64 != r.verma_dim {
                return Err(format!(
                    "{kind} {}: word rank {}, delta rank {}, Kostant {}",
                    r.beta, r.word_rank, r.delta_rank, r.verma_dim
                ));
            }
            if r.l_dim.is_none() || r.l_dim != r.freudenthal {
                return Err(format!("{kind} {}: L dim {:?}, Freudenthal {:?}", r.beta, r.l_dim, r.freudenthal));
            }
        }
        let got: u64 = rows.iter().filter_map(|r| r.l_dim).sum();
        if got != total {
            return Err(format!("{kind} {lambda}: L total {got}, expected {total}"));
        }
        summary.push(format!("{kind} total {got}"));
    }
    Ok(format!("{}; ranks equal Kostant counts", summary.join(", ")))
}

fn nu_independence() -> Outcome {
    let cat = catalog("A2", 6);
    let eng = engine(&cat);
    let mut total = 0;
    for lambda in [w(&[1, 1]), w(&[2, 0]), w(&[-1, 0]), w(&[0, 0])] {
        let reports = eng.nu_independence_check(&lambda, 6).map_err(|e| e.to_string())?;
        total += all_pass(&format!("{lambda}"), &reports)?;
    }
    Ok(format!("{total} slice reports, F* on classes of height <= 5"))
}

fn phi_epsilon() -> Outcome {
    let mut total = 0;
    for (kind, lambda, cutoff) in [("A2", w(&[1, 1]), 6), ("A2", w(&[2, 1]), 5), ("A3", w(&[1, 0, 1]), 5)] {
        let cat = catalog(kind, cutoff);
        let eng = engine(&cat);
        let reports = eng.phi_epsilon_check(&lambda, cutoff).map_err(|e| e.to_string())?;
        total += all_pass(&format!("{kind} {lambda}"), &reports)?;
    }
    Ok(format!("{total} slice reports, laws hold"))
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0;
    for (kind, height) in [("A2", 5), ("A3", 4)] {
        let cat = catalog(kind, height + 1);
        let pc = PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap();
        let eng = engine(&cat);
        let n = cat.vertex_count();
        let rho = Weight(vec![1; n]);
        for beta in DimVector::all_up_to(n, height) {
            for x in cat.classes_at(&beta).unwrap() {
                let nu = choose_nu_from_socle(&cat.socle_of(&x), &rho);
                let phi = eng.phi(&x, &nu).map_err(|e| e.to_string())?;
                let eps = cat.head_of(&x);
                for i in 0..n {
                    let name = cat.class_name(&x);
                    let down = brute_grass_compare(&pc, &x, i, None).map_err(|e| e.to_string())?;
                    if !down.pass || down.engine.total_chi() != eps.0[i] as i64 {
                        return Err(format!("{kind} down {name} i={}: {:?}", i + 1, down.diff));
                    }
                    let up = brute_grass_compare(&pc, &x, i, Some(&nu)).map_err(|e| e.to_string())?;
                    if !up.pass || up.engine.total_chi() != phi[i] {
                        return Err(format!("{kind} up {name} i={}: {:?}", i + 1, up.diff));
                    }
                    compared += 2;
                }
            }
        }
    }
    Ok(format!("{compared} Grassmannians match enumeration; sums equal epsilon and phi"))
}

fn integrability() -> Outcome {
    let mut done = Vec::new();
    for (kind, lambda) in [("A2", w(&[1, 1])), ("A2", w(&[2, 0])), ("A2", w(&[0, 0])), ("A3", w(&[1, 0, 1]))] {
        let height = lambda.0.iter().map(|&l| l as u32 + 1).max().unwrap();
        let cat = catalog(kind, height.max(2));
        let eng = engine(&cat);
        all_pass(kind, &[eng.integrability_check(&lambda).map_err(|e| e.to_string())?])?;
        let zero = eng.delta(&cat.zero_class());
        for i in 0..cat.vertex_count() {
            if !eng.e_star(i, &zero).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("{kind}: e{} d(0) is not zero", i + 1));
            }
            let want = zero.scaled(rat(lambda.0[i] as i128));
            if eng.h_star(i, &lambda, &zero) != want {
                return Err(format!("{kind}: h{} d(0) is not {} d(0)", i + 1, lambda.0[i]));
            }
        }
        done.push(format!("{kind} {lambda}"));
    }
    Ok(format!("{}: F^(l+1) d(0) vanishes in L, E d(0) = 0, H eigenvalues", done.join(", ")))
}

fn intertwining() -> Outcome {
    let cat = catalog("A2", 6);
    let eng = engine(&cat);
    let reports = eng.intertwining_check(&w(&[1, 1]), 6).map_err(|e| e.to_string())?;
    let n = all_pass("A2", &reports)?;
    Ok(format!("{n} slice reports up to height 6"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("worked example", worked_example),
        ("projective line", projective_line),
        ("relation suites", relation_suites),
        ("characters", characters),
        ("nu-independence", nu_independence),
        ("phi-epsilon laws", phi_epsilon),
        ("oracle equivalence", oracle_equivalence),
        ("integrability", integrability),
        ("r_lambda intertwining", intertwining),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} {name}: pass ({msg})", k + 1),
            Err(msg) => {
                println!("criterion {} {name}: FAIL ({msg})", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
