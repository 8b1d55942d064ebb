//! Acceptance run: one line per criterion, exact equality throughout.
//! Exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use relserre::Status;
use relserre_cli::config::{Parabolics, Suite, SuiteConfig, DEFAULT_ROSTER};
use relserre_cli::report::{Entry, Report};
use relserre_cli::run;
use relserre_cli::suites::{RANDOM_ELEMENTS, RANDOM_WORD_PAIRS};

const SEED: u64 = 20_241_017;
const TIME_LIMIT: Duration = Duration::from_secs(300);

/// (name, rank, order) for the default roster, from the classification.
const ROSTER_FACTS: [(&str, u32, usize); 9] = [
    ("A1", 1, 2),
    ("A2", 2, 6),
    ("A3", 3, 24),
    ("A1xA1", 2, 4),
    ("B2", 2, 8),
    ("B3", 3, 48),
    ("G2", 2, 12),
    ("A4", 4, 120),
    ("D4", 4, 192),
];

struct Outcome {
    ok: bool,
    line: String,
}

fn select<'a>(r: &'a Report, suite: Suite, checks: &[&str]) -> Vec<&'a Entry> {
    r.entries
        .iter()
        .filter(|e| e.suite == suite && checks.contains(&e.check.as_str()))
        .collect()
}

fn failures(entries: &[&Entry]) -> usize {
    entries.iter().filter(|e| e.status == Status::Fail).count()
}

fn count(r: &Report, suite: Suite, check: &str) -> usize {
    select(r, suite, &[check]).len()
}

fn contexts() -> usize {
    ROSTER_FACTS.iter().map(|&(_, rank, _)| 1usize << rank).sum()
}

fn criterion_1(r: &Report, elapsed: Duration) -> Outcome {
    let entries = select(r, Suite::Serre, &["serre_duality"]);
    let expected: usize = ROSTER_FACTS
        .iter()
        .map(|&(_, rank, order)| (1usize << rank) * order)
        .sum();
    let systems: BTreeSet<&str> = entries.iter().map(|e| e.system.as_str()).collect();
    let fails = failures(&entries);
    let ok = fails == 0 && entries.len() == expected && systems.len() == ROSTER_FACTS.len() && elapsed < TIME_LIMIT;
    Outcome {
        ok,
        line: format!(
            "serre duality: {} of {} (system, I, w) cases, {} failures, {} contexts, full run {:.1}s (limit {}s)",
            entries.len() - fails,
            expected,
            fails,
            r.summary.contexts,
            elapsed.as_secs_f64(),
            TIME_LIMIT.as_secs()
        ),
    }
}

fn criterion_2(r: &Report) -> Outcome {
    let entries = select(r, Suite::Serre, &["leading_block_scenario"]);
    // A_{n-1} for n = 2..=5 has n leading blocks r = 1..=n.
    let expected: usize = (2..=5).sum();
    let fails = failures(&entries);
    let by_system: BTreeMap<&str, usize> = entries.iter().fold(BTreeMap::new(), |mut m, e| {
        *m.entry(e.system.as_str()).or_default() += 1;
        m
    });
    let shape_ok = by_system == BTreeMap::from([("A1", 2), ("A2", 3), ("A3", 4), ("A4", 5)]);
    Outcome {
        ok: fails == 0 && entries.len() == expected && shape_ok,
        line: format!(
            "leading-block scenario (type A, n <= 5, all r): {} of {} scenarios, {} failures",
            entries.len() - fails,
            expected,
            fails
        ),
    }
}

fn criterion_3(r: &Report) -> Outcome {
    let per_context = [
        "levi_downward_closed",
        "flipped_complement_downward_closed",
        "longest_length_additive",
        "shifted_lower_set_avoids_levi",
    ];
    let entries = select(
        r,
        Suite::Combinatorics,
        &[&per_context[..], &["longest_reverses_bruhat"]].concat(),
    );
    let expected = per_context.len() * contexts() + ROSTER_FACTS.len();
    let fails = failures(&entries);
    Outcome {
        ok: fails == 0 && entries.len() == expected,
        line: format!(
            "combinatorics: {} of {} checks, {} failures",
            entries.len() - fails,
            expected,
            fails
        ),
    }
}

fn criterion_4(r: &Report) -> Outcome {
    let checks = ["longest_times_costandard", "costandard_unitriangular", "braid_relation"];
    let entries = select(r, Suite::Hecke, &checks);
    let order_sum: usize = ROSTER_FACTS.iter().map(|&(_, _, o)| o).sum();
    let pairs = count(r, Suite::Hecke, "braid_relation");
    let expected_pairs: usize = ROSTER_FACTS
        .iter()
        .map(|&(_, rank, _)| (rank * rank.saturating_sub(1) / 2) as usize)
        .sum();
    let fails = failures(&entries);
    let counts_ok = count(r, Suite::Hecke, "longest_times_costandard") == order_sum
        && count(r, Suite::Hecke, "costandard_unitriangular") == order_sum
        && pairs == expected_pairs;
    Outcome {
        ok: fails == 0 && counts_ok,
        line: format!(
            "hecke: longest-times-costandard and unitriangularity on {} elements each, braid relations on {} rank-2 pairs, {} failures",
            order_sum, pairs, fails
        ),
    }
}

fn criterion_5(r: &Report) -> Outcome {
    let checks = [
        "group_laws",
        "normal_form_agrees_with_hecke",
        "full_twist_central",
        "full_twist_conjugation",
        "full_twist_costandard_factorization",
    ];
    let entries = select(r, Suite::Braid, &checks);
    let n = ROSTER_FACTS.len();
    let fails = failures(&entries);
    let counts_ok = count(r, Suite::Braid, "group_laws") == RANDOM_WORD_PAIRS * n
        && count(r, Suite::Braid, "normal_form_agrees_with_hecke") == RANDOM_WORD_PAIRS * n
        && count(r, Suite::Braid, "full_twist_central") == n
        && count(r, Suite::Braid, "full_twist_conjugation") == contexts()
        && count(r, Suite::Braid, "full_twist_costandard_factorization") == contexts();
    Outcome {
        ok: fails == 0 && counts_ok && RANDOM_WORD_PAIRS >= 100,
        line: format!(
            "braid: {} seeded word pairs per system, centrality, conjugation identities on {} contexts, {} failures",
            RANDOM_WORD_PAIRS,
            contexts(),
            fails
        ),
    }
}

fn criterion_6(r: &Report) -> Outcome {
    let checks = [
        "longest_times_costandard",
        "twist_kernel_support",
        "flipped_complement_spans",
        "restricted_full_twist",
        "cone_containment",
        "recollement",
    ];
    let entries = select(r, Suite::Serre, &checks);
    let fails = failures(&entries);
    let counts_ok = count(r, Suite::Serre, "recollement") == RANDOM_ELEMENTS * contexts()
        && count(r, Suite::Serre, "cone_containment") == contexts()
        && count(r, Suite::Serre, "restricted_full_twist") == contexts()
        && count(r, Suite::Serre, "flipped_complement_spans") == contexts();
    Outcome {
        ok: fails == 0 && counts_ok && RANDOM_ELEMENTS >= 50,
        line: format!(
            "kernel transport, restricted full twist, cone containment, recollement ({} random elements per context): {} checks, {} failures",
            RANDOM_ELEMENTS,
            entries.len(),
            fails
        ),
    }
}

fn criterion_7(first: &str, config: &SuiteConfig) -> Outcome {
    let again = run(config).expect("valid config").to_json();
    let serial = run(&SuiteConfig {
        jobs: 1,
        ..config.clone()
    })
    .expect("valid config")
    .to_json();
    let parallel = run(&SuiteConfig {
        jobs: 4,
        ..config.clone()
    })
    .expect("valid config")
    .to_json();
    let same = first == again && first == serial && first == parallel;
    Outcome {
        ok: same,
        line: format!(
            "determinism: repeated run, --jobs 1 and --jobs 4 reports byte-identical: {same} ({} bytes)",
            first.len()
        ),
    }
}

fn criterion_8(r: &Report) -> Outcome {
    let entries = select(r, Suite::Hecke, &["bruhat_length_additivity_probe"]);
    let systems: BTreeSet<&str> = entries.iter().map(|e| e.system.as_str()).collect();
    let all_info = entries.iter().all(|e| e.status == Status::Info);
    // A2: s2 < s1s2 in Bruhat order, yet x⁻¹y = s2s1s2 has length 3, not 1.
    let a2_listed = entries
        .iter()
        .any(|e| e.system == "A2" && e.detail.contains("([2], [1 2])"));
    let listed: usize = entries
        .iter()
        .map(|e| {
            e.case
                .split_whitespace()
                .next()
                .and_then(|n| n.parse::<usize>().ok())
                .unwrap_or(0)
        })
        .sum();
    let verbatim = entries.iter().all(|e| {
        let n: usize = e
            .case
            .split_whitespace()
            .next()
            .and_then(|n| n.parse().ok())
            .unwrap_or(usize::MAX);
        e.detail.matches("), (").count() + usize::from(n > 0) == n
    });
    Outcome {
        ok: systems.len() == ROSTER_FACTS.len() && all_info && a2_listed && verbatim && r.passed(),
        line: format!(
            "open-question probe: findings for {} systems, {} Bruhat pairs without length additivity listed, build unaffected",
            systems.len(),
            listed
        ),
    }
}

fn main() -> ExitCode {
    let config = SuiteConfig {
        systems: DEFAULT_ROSTER.iter().map(|s| s.to_string()).collect(),
        parabolics: Parabolics::All,
        suites: Suite::ALL.to_vec(),
        seed: SEED,
        ..SuiteConfig::default()
    };
    let start = Instant::now();
    let report = run(&config).expect("default roster builds");
    let elapsed = start.elapsed();
    let json = report.to_json();

    let outcomes = [
        criterion_1(&report, elapsed),
        criterion_2(&report),
        criterion_3(&report),
        criterion_4(&report),
        criterion_5(&report),
        criterion_6(&report),
        criterion_7(&json, &config),
        criterion_8(&report),
    ];
    println!();
    for (i, o) in outcomes.iter().enumerate() {
        println!(
            "criterion {} [{}] tolerance exact: {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.line
        );
    }
    println!();
    if outcomes.iter().all(|o| o.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
