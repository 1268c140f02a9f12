use std::process::ExitCode;
use std::time::{Duration, Instant};

use hallcomb::cli::verify::{self, SEED};
use hallcomb::sl4net::Report;

/// Criteria whose literal statement does not hold; see the decisions ledger.
const KNOWN_FAILURES: &[u32] = &[10];

struct Verdict {
    pass: bool,
    detail: String,
}

fn plain(r: &Report) -> Verdict {
    let mut detail = format!("{} checked, {} failed", r.checked, r.failed);
    if let Some(f) = r.first_failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    Verdict {
        pass: r.failed == 0,
        detail,
    }
}

fn all(parts: &[(&str, &Report)]) -> Verdict {
    let pass = parts.iter().all(|(_, r)| r.failed == 0);
    let detail = parts
        .iter()
        .map(|(name, r)| format!("{name} {}/{}", r.checked - r.failed, r.checked))
        .collect::<Vec<_>>()
        .join(", ");
    let first = parts.iter().find_map(|(_, r)| r.first_failures.first());
    Verdict {
        pass,
        detail: match first {
            Some(f) => format!("{detail}; first: {f}"),
            None => detail,
        },
    }
}

fn sl4() -> Verdict {
    let dual = verify::sl4_dual_tetra(3).expect("dual tetra network");
    let octa = verify::sl4_octa(2).expect("octa network");
    let tetra = verify::sl4_tetra(2).expect("tetra network");
    let mut v = all(&[("dual tetra", &dual), ("octa", &octa), ("tetra", &tetra)]);
    v.pass &= octa.secondary_failed == 0;
    v.detail.push_str(&format!(
        "; octa closed form {} mismatches; dual tetra bare alpha product off by t^(a02 a13) at {} of {}",
        octa.secondary_failed, dual.secondary_failed, dual.checked
    ));
    v
}

fn double_puzzles() -> Verdict {
    let r = verify::double_puzzle(2, 2, 2).expect("double puzzle networks");
    Verdict {
        pass: r.failed == 0 && r.secondary_failed == 0,
        detail: format!(
            "L = R = h_rho^-1 sum c c and raw = reduced on {}/{}; L = h_rho sum c c fails on {}{}",
            r.checked - r.failed,
            r.checked,
            r.secondary_failed,
            r.secondary_failures
                .first()
                .map(|f| format!(" (e.g. {f})"))
                .unwrap_or_default()
        ),
    }
}

fn main() -> ExitCode {
    type Check = fn() -> Verdict;
    let criteria: [(u32, &str, u64, Check); 10] = [
        (1, "fugacity table", 1, || plain(&verify::appendix_a())),
        (2, "worked example", 5, || plain(&verify::main_example())),
        (3, "Pieri rule", 120, || plain(&verify::pieri(5))),
        (4, "oracle equivalence", 300, || {
            plain(&verify::oracle(3, 3, 200, SEED))
        }),
        (5, "associativity", 600, || {
            plain(&verify::assoc(3, 3, 500, SEED))
        }),
        (6, "t = 0 counts", 60, || plain(&verify::t_zero(3, 3))),
        (7, "cyclic invariance", 60, || plain(&verify::z3(3, 3))),
        (8, "D6, recurrence, 3phi1", 60, || plain(&verify::d6(4))),
        (9, "sl4 identities", 600, sl4),
        (10, "double puzzles", 120, double_puzzles),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let mut v = check();
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(limit) {
            v.pass = false;
            v.detail.push_str(&format!("; over the {limit} s budget"));
        }
        let tag = match (v.pass, KNOWN_FAILURES.contains(&id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {id:>2} {tag}: {name} [{:.2} s] {}",
            elapsed.as_secs_f64(),
            v.detail
        );
        if !v.pass && !KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
