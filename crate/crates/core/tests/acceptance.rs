use std::process::ExitCode;
use std::time::Instant;

use daha::verify::{run_criterion, suite_datums, CriterionReport, TITLES};
use daha::RootDatum;

fn run(id: u8) -> Vec<(CriterionReport, f64)> {
    let datums = suite_datums(id);
    std::thread::scope(|s| {
        let handles: Vec<_> = datums
            .iter()
            .map(|t| {
                s.spawn(move || {
                    let d: RootDatum = t.parse().expect("known root system");
                    let start = Instant::now();
                    let rep = run_criterion(id, &d);
                    (rep, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    })
}

fn main() -> ExitCode {
    let results: Vec<(u8, Vec<(CriterionReport, f64)>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=10u8).map(|id| (id, s.spawn(move || run(id)))).collect();
        handles.into_iter().map(|(id, h)| (id, h.join().expect("criterion thread"))).collect()
    });

    let mut failed = Vec::new();
    for (id, reps) in &results {
        for (rep, secs) in reps {
            eprint!("{rep}");
            eprintln!("    time {secs:.1}s");
        }
        let ok = reps.iter().all(|(r, _)| r.passed());
        let checks: usize = reps.iter().map(|(r, _)| r.checks.len()).sum();
        let datums: Vec<&str> = reps.iter().map(|(r, _)| r.datum.as_str()).collect();
        println!(
            "criterion {id:>2} {:<34} {} ({checks} checks; {})",
            TITLES[*id as usize - 1],
            if ok { "PASS" } else { "FAIL" },
            datums.join(" ")
        );
        if !ok {
            failed.push(*id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
