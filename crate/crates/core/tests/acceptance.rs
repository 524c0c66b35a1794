//! Acceptance harness: one PASS/FAIL line per criterion. All comparisons are
//! exact integer equalities.

mod common;

use std::process::{Command, ExitCode};
use std::thread::available_parallelism;

use selfdual::codec::parse_row;
use selfdual::constructions::modified_four_circulant;
use selfdual::rings::Alphabet;
use selfdual::tables::{
    select_phi_u_variant, verify_table, KnownTable, TableReport, VerifyOptions, DEFAULT_PHI_U,
};
use selfdual::weightdist::{classify, Enumerator, Family};

struct Verdict {
    pass: bool,
    detail: String,
}

fn workers() -> usize {
    available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn tables(ids: &[KnownTable]) -> (bool, String, Vec<TableReport>) {
    let opts = VerifyOptions {
        workers: workers(),
        ..VerifyOptions::default()
    };
    let mut pass = true;
    let mut parts = Vec::new();
    let mut reports = Vec::new();
    for &t in ids {
        let report = verify_table(t, None, &opts).expect("built-in table");
        let ok = report.rows.iter().filter(|r| r.pass).count();
        parts.push(format!("table {t}: {ok}/{}", report.rows.len()));
        for r in report.rows.iter().filter(|r| !r.pass) {
            parts.push(format!("[{r}]"));
        }
        pass &= report.all_pass();
        reports.push(report);
    }
    (pass, parts.join(", "), reports)
}

fn criterion_1() -> Verdict {
    let (mut pass, mut detail, _) = tables(&[KnownTable::T1]);
    let rec = modified_four_circulant(
        &parse_row(Alphabet::F2, "0101110001100111").unwrap(),
        &parse_row(Alphabet::F2, "1011010101010100")
            .unwrap()
            .reversed(),
        Alphabet::F2.one(),
    )
    .unwrap();
    let profile = Enumerator::new(&rec.binary_generator())
        .unwrap()
        .full(workers());
    let h = &profile.histogram;
    let class = classify(&profile).unwrap();
    let full_ok = h[12] == 1312
        && h[14] == 23040
        && profile.total() == 1 << 32
        && (0..=64).all(|w| h[w] == h[64 - w])
        && profile.min_nonzero_weight() == Some(12)
        && class.family == Family::W64_2
        && class.beta == Some(0);
    pass &= full_ok;
    detail += &format!(
        "; full 2^32 run on B64,1: A12={} A14={} total={} -> {}",
        h[12],
        h[14],
        profile.total(),
        class
    );
    Verdict { pass, detail }
}

fn table_criterion(ids: &[KnownTable]) -> Verdict {
    let (pass, detail, _) = tables(ids);
    Verdict { pass, detail }
}

fn criterion_7() -> Verdict {
    let chosen = select_phi_u_variant();
    let (mut pass, mut detail, _) = tables(&[KnownTable::PhiUExample, KnownTable::T7]);
    pass &= chosen == Some(DEFAULT_PHI_U);
    detail += &format!("; R2->R1 map variant reproducing the example: {chosen:?}");
    Verdict { pass, detail }
}

fn criterion_8() -> Verdict {
    let start = std::time::Instant::now();
    let mut tallies: Vec<(common::Tally, usize)> = common::circulant_identities(0xacce, 500)
        .into_iter()
        .map(|t| (t, 500))
        .collect();
    tallies.push((common::gray_preserves_self_duality(0x9a7, 100), 100));
    let (oracle, shape) = common::engine_matches_naive(0x0ac1e, 60);
    tallies.push((oracle, 50));
    tallies.push((shape, 50));
    let pass = tallies.iter().all(|(t, min)| t.ok(*min));
    let detail = tallies
        .iter()
        .map(|(t, _)| format!("{} {}/{}", t.name, t.cases - t.failures, t.cases))
        .collect::<Vec<_>>()
        .join("; ");
    let secs = start.elapsed().as_secs_f64();
    Verdict {
        pass: pass && secs < 60.0,
        detail: format!("{detail}; {secs:.1}s"),
    }
}

fn criterion_9() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("search.json");
    std::fs::write(
        &config,
        r#"{"alphabet":"f2","construction":"modified","n":8,"lambda_pool":"all",
            "trials":3000,"seed":20240611,"workers":1}"#,
    )
    .unwrap();
    let run = |name: &str| {
        let store = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_selfdual"))
            .arg("search")
            .arg("--config")
            .arg(&config)
            .args(["--workers", "1", "--store"])
            .arg(&store)
            .env_remove("SELFDUAL_SEED")
            .env_remove("SELFDUAL_WORKERS")
            .output()
            .unwrap();
        (
            status.status.success(),
            std::fs::read(&store).unwrap_or_default(),
        )
    };
    let (ok1, a) = run("a.jsonl");
    let (ok2, b) = run("b.jsonl");
    let lines = a.iter().filter(|&&c| c == b'\n').count();
    Verdict {
        pass: ok1 && ok2 && !a.is_empty() && a == b,
        detail: format!(
            "two seeded single-worker runs, {lines} records, {} bytes each, identical={}",
            a.len(),
            a == b
        ),
    }
}

type Check = Box<dyn Fn() -> Verdict>;

fn main() -> ExitCode {
    let criteria: Vec<(&str, Check)> = vec![
        ("table 1 reproduction (F2, W64_2)", Box::new(criterion_1)),
        (
            "table 2 reproduction (R2, W64_2)",
            Box::new(|| table_criterion(&[KnownTable::T2])),
        ),
        (
            "table 3 reproduction (bordered F2, W64_1)",
            Box::new(|| table_criterion(&[KnownTable::T3])),
        ),
        (
            "R1 bordered example is Type II [64,32,12]",
            Box::new(|| table_criterion(&[KnownTable::BorderedExample])),
        ),
        (
            "tables 4-5 reproduction (extensions, W66_3)",
            Box::new(|| table_criterion(&[KnownTable::T4, KnownTable::T5])),
        ),
        (
            "table 6 reproduction (F2, W68_2 gamma=0)",
            Box::new(|| table_criterion(&[KnownTable::T6])),
        ),
        (
            "R1 extension example and table 7 (W68_2)",
            Box::new(criterion_7),
        ),
        ("property suites", Box::new(criterion_8)),
        ("search determinism", Box::new(criterion_9)),
    ];
    println!("acceptance: tolerance exact (integer equality) for every criterion");
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        all &= v.pass;
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
