//! Acceptance suite. Prints one line per criterion:
//! `PASS|FAIL  <name>  <detail>  [elapsed / limit]`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use korbit::degeneracy::{monomial_pattern, rank_profile};
use korbit::{
    closed_orbit_classes, compute_classes, gram_matrix, parameter_flag, permutations, rank_number,
    restrict_at_fixed_point, verify_closed_orbit_class, verify_table,
    verify_vanishing_outside_closure, ClassTable, Family, OrbitParameter, Polynomial, Ring,
    SymmetricPairConfig, WeakOrderGraph,
};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const FAMILIES: [Family; 4] = [Family::OOdd, Family::OEven, Family::SoEven, Family::Sp];
const PROPERTY_CASES: u32 = 500;

struct Outcome {
    pass: bool,
    detail: String,
    /// A failure that is documented as a misprint in the published tables.
    known: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            known: false,
        }
    }
}

struct Suite {
    failures: Vec<String>,
    known: Vec<String>,
}

impl Suite {
    fn run(&mut self, name: &str, limit: Option<Duration>, check: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = outcome.pass && in_time;
        let timing = match limit {
            Some(l) => format!("[{:.3} s / < {} s]", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("[{:.3} s]", elapsed.as_secs_f64()),
        };
        let mut detail = outcome.detail;
        if !in_time {
            detail.push_str("; over time limit");
        }
        println!(
            "{}  {name}  {detail}  {timing}",
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            if outcome.known && in_time {
                self.known.push(name.to_string());
            } else {
                self.failures.push(name.to_string());
            }
        }
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn golden(tables: &[(Family, usize, Vec<GoldenRow>)]) -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for (family, rank, rows) in tables {
        let (config, table) = table(*family, *rank);
        total += rows.len();
        if table.len() != rows.len() {
            bad.push(format!(
                "{config}: {} orbits, expected {}",
                table.len(),
                rows.len()
            ));
        }
        for (param, expected, computed) in mismatches(&config, &table, rows) {
            bad.push(format!(
                "{config} {param}: printed {expected}, computed {computed}"
            ));
        }
    }
    let matched = total - bad.len().min(total);
    let mut detail = format!("{matched}/{total} classes match exactly");
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join("; ")));
    }
    Outcome::new(bad.is_empty(), detail)
}

fn golden_o_odd_two() -> Outcome {
    let (config, table) = table(Family::OOdd, 2);
    let ring = Ring::for_config(&config);
    let rows = o_odd_2();
    let bad = mismatches(&config, &table, &rows);
    let only_misprint = bad.len() == 1 && bad[0].0 == O_ODD_2_MISPRINT;
    let mut outcome = golden(&[(Family::OOdd, 2, rows.clone())]);
    if only_misprint {
        let printed = Polynomial::parse(
            &rows
                .iter()
                .find(|r| r.parameter == O_ODD_2_MISPRINT)
                .unwrap()
                .class,
            ring,
        )
        .unwrap();
        let node = OrbitParameter::parse(O_ODD_2_MISPRINT, &config).unwrap();
        let computed = table.get(&node).unwrap();
        let parent = table
            .get(&OrbitParameter::parse("(1,3)(2,5)", &config).unwrap())
            .unwrap();
        let diff = &printed - computed;
        let printed_vanishes =
            verify_vanishing_outside_closure(&printed, node.involution(), &config)
                .unwrap()
                .passed();
        let documented = diff == Polynomial::parse("4x1x2x3", ring).unwrap()
            && parent.divided_difference(2).unwrap() == *computed
            && !printed_vanishes;
        if documented {
            outcome.known = true;
            outcome.detail.push_str(
                "; printed minus computed is 4x1x2x3, the computed row is d_2 of the (1,3)(2,5) row, \
                 and the printed row does not vanish outside its closure",
            );
        }
    }
    outcome
}

fn golden_so_even_two() -> Outcome {
    let mut outcome = golden(&[(Family::SoEven, 2, so_even_2())]);
    let config = config(Family::SoEven, 2);
    let mut bad_flags = Vec::new();
    for row in so_even_2() {
        let node = OrbitParameter::parse(row.parameter, &config).unwrap();
        let flag = parameter_flag(&node, &config).unwrap().to_string();
        if flag != row.flag.unwrap() {
            bad_flags.push(format!("{}: {flag}", row.parameter));
        }
    }
    outcome.detail.push_str(&format!(
        ", {}/13 representative flags match",
        13 - bad_flags.len()
    ));
    if !bad_flags.is_empty() {
        outcome.pass = false;
        outcome
            .detail
            .push_str(&format!("; {}", bad_flags.join("; ")));
    }
    outcome
}

fn localization() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for family in FAMILIES {
        for rank in 1..=3 {
            let config = config(family, rank);
            for datum in closed_orbit_classes(&config) {
                let report =
                    verify_closed_orbit_class(&datum.class, &config, datum.parameter.component());
                checked += report.len();
                if report.len() != permutations(config.ambient()).len() || !report.passed() {
                    bad.push(format!("{config} {}", datum.parameter));
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{checked} fixed-point restrictions over all closed orbits, n <= 3; {} failing formulas{}",
            bad.len(),
            if bad.is_empty() { String::new() } else { format!(": {}", bad.join(", ")) }
        ),
    )
}

fn all_tables() -> Vec<(SymmetricPairConfig, WeakOrderGraph, ClassTable)> {
    let mut out = Vec::new();
    for family in FAMILIES {
        for rank in 1..=3 {
            let config = config(family, rank);
            let (graph, table) = compute_classes(&config).unwrap();
            out.push((config, graph, table));
        }
    }
    out
}

fn vanishing() -> Outcome {
    let mut classes = 0;
    let mut points = 0;
    let mut bad = Vec::new();
    for family in FAMILIES {
        for rank in 1..=3 {
            let config = config(family, rank);
            if config.ambient() > 6 {
                continue;
            }
            let (_, table) = compute_classes(&config).unwrap();
            for (node, class) in table.iter() {
                let report =
                    verify_vanishing_outside_closure(class, node.involution(), &config).unwrap();
                classes += 1;
                points += report.len();
                if !report.passed() {
                    bad.push(format!("{config} {node}"));
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{classes} classes with N <= 6, {points} excluded fixed points, {} nonvanishing{}",
            bad.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!(": {}", bad.join(", "))
            }
        ),
    )
}

fn path_independence(tables: &[(SymmetricPairConfig, WeakOrderGraph, ClassTable)]) -> Outcome {
    // compute_classes fails on the first mismatch; the tables exist, so the
    // remaining check is that every incoming edge was compared
    let mut nodes = 0;
    let mut arrivals = 0;
    let mut bad = Vec::new();
    for (config, graph, table) in tables {
        for node in graph.nodes() {
            let incoming = graph.incoming(node).count();
            if incoming >= 2 {
                nodes += 1;
                arrivals += incoming;
            }
            if table.provenance(node).len() != incoming {
                bad.push(format!("{config} {node}"));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{nodes} multi-parent nodes, {arrivals} agreeing parent computations, 0 mismatches, n <= 3{}",
            if bad.is_empty() { String::new() } else { format!("; unchecked: {}", bad.join(", ")) }
        ),
    )
}

fn runner() -> TestRunner {
    let config = Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn property_suite() -> Outcome {
    use proptest::prelude::*;

    let single = (2usize..=6, 0usize..=3).prop_flat_map(|(nx, ny)| {
        let ring = Ring::new(nx, ny);
        (random_polynomial(ring), random_polynomial(ring), 1..nx)
    });
    let configs = prop_oneof![
        (1usize..=2).prop_map(|r| config(Family::OOdd, r)),
        (1usize..=3).prop_map(|r| config(Family::OEven, r)),
        (1usize..=3).prop_map(|r| config(Family::SoEven, r)),
        (1usize..=3).prop_map(|r| config(Family::Sp, r)),
    ];
    let restricted = configs.prop_flat_map(|config| {
        let ring = Ring::for_config(&config);
        let count = permutations(config.ambient()).len();
        (
            Just(config),
            random_polynomial(ring),
            random_polynomial(ring),
            0..count,
        )
    });

    let check = |result: bool, what: &str| {
        if result {
            Ok(())
        } else {
            Err(TestCaseError::fail(what.to_string()))
        }
    };
    let mut results = Vec::new();
    results.push((
        "d_i^2 = 0",
        runner()
            .run(&single, |(p, _, i)| {
                let d = p.divided_difference(i).unwrap();
                check(d.divided_difference(i).unwrap().is_zero(), "d_i^2 != 0")
            })
            .map_err(|e| e.to_string()),
    ));
    results.push((
        "braid",
        runner()
            .run(&single, |(p, _, i)| {
                if i + 1 >= p.ring().nx {
                    return Ok(());
                }
                let d = |q: &Polynomial, k: usize| q.divided_difference(k).unwrap();
                check(
                    d(&d(&d(&p, i), i + 1), i) == d(&d(&d(&p, i + 1), i), i + 1),
                    "braid relation",
                )
            })
            .map_err(|e| e.to_string()),
    ));
    results.push((
        "twisted Leibniz",
        runner()
            .run(&single, |(p, q, i)| {
                let lhs = (&p * &q).divided_difference(i).unwrap();
                let rhs = &(&p.divided_difference(i).unwrap() * &q)
                    + &(&p.swap_x(i).unwrap() * &q.divided_difference(i).unwrap());
                check(lhs == rhs, "Leibniz rule")
            })
            .map_err(|e| e.to_string()),
    ));
    results.push((
        "restriction homomorphism",
        runner()
            .run(&restricted, |(config, p, q, w)| {
                let w = &permutations(config.ambient())[w];
                let r = |f: &Polynomial| restrict_at_fixed_point(f, w, &config);
                check(
                    r(&(&p * &q)) == &r(&p) * &r(&q) && r(&(&p + &q)) == &r(&p) + &r(&q),
                    "restriction is not multiplicative",
                )
            })
            .map_err(|e| e.to_string()),
    ));
    let bad: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    let names: Vec<&str> = results.iter().map(|(n, _)| *n).collect();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} with {PROPERTY_CASES} deterministic cases each{}",
            names.join(", "),
            if bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.join("; "))
            }
        ),
    )
}

fn structural(tables: &[(SymmetricPairConfig, WeakOrderGraph, ClassTable)]) -> Outcome {
    let mut bad = Vec::new();
    let expected = [
        (Family::OOdd, 1, 4),
        (Family::OOdd, 2, 26),
        (Family::OEven, 2, 10),
        (Family::SoEven, 2, 13),
        (Family::Sp, 2, 3),
        (Family::Sp, 3, 15),
    ];
    for (family, rank, count) in expected {
        let (_, graph, _) = tables
            .iter()
            .find(|(c, _, _)| c.family == family && c.rank == rank)
            .unwrap();
        if graph.nodes().len() != count {
            bad.push(format!("{family} n={rank}: {} orbits", graph.nodes().len()));
        }
    }
    let mut sums = 0;
    for (config, graph, table) in tables {
        let tops = graph.tops();
        if tops.len() != 1 || !table.get(tops[0]).is_some_and(Polynomial::is_one) {
            bad.push(format!("{config}: top class"));
        }
        let report = verify_table(table, graph, config).unwrap();
        sums += report
            .checks
            .iter()
            .filter(|c| c.check == "sum-identity")
            .count();
        bad.extend(
            report
                .failures()
                .map(|f| format!("{config} {} {}", f.check, f.subject)),
        );
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "orbit counts 4/26/10/13/3/15, top class 1 in all 12 tables, {sums} component sums, n <= 3{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn representative_flags(tables: &[(SymmetricPairConfig, WeakOrderGraph, ClassTable)]) -> Outcome {
    let mut params = 0;
    let mut rectangles = 0;
    let mut bad = Vec::new();
    for (config, graph, _) in tables {
        for node in graph.nodes() {
            params += 1;
            let b = node.involution();
            let flag = parameter_flag(node, config).unwrap();
            if monomial_pattern(&gram_matrix(&flag, config)).as_ref() != Some(b) {
                bad.push(format!("{config} {node}: Gram pattern"));
            }
            let profile = rank_profile(&flag, config);
            let big = config.ambient();
            for i in 1..=big {
                for j in 1..=big {
                    rectangles += 1;
                    if profile[i][j] != rank_number(b, i, j).unwrap() {
                        bad.push(format!("{config} {node}: rank at ({i},{j})"));
                    }
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{params} parameters, {rectangles} rank equalities, n <= 3{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.join("; "))
            }
        ),
    )
}

fn main() -> ExitCode {
    let mut suite = Suite {
        failures: Vec::new(),
        known: Vec::new(),
    };
    suite.run("golden O_ODD n=1", secs(1), || {
        golden(&[(Family::OOdd, 1, o_odd_1())])
    });
    suite.run("golden O_ODD n=2", secs(5), golden_o_odd_two);
    suite.run("golden O_EVEN n=2", secs(1), || {
        golden(&[(Family::OEven, 2, o_even_2())])
    });
    suite.run("golden SO_EVEN n=2", secs(2), golden_so_even_two);
    suite.run("golden SP n=2,3", secs(2), || {
        golden(&[(Family::Sp, 2, sp_2()), (Family::Sp, 3, sp_3())])
    });
    suite.run("localization oracle", secs(60), localization);
    suite.run("vanishing suite", secs(60), vanishing);

    let start = Instant::now();
    let tables = all_tables();
    let built = start.elapsed();
    println!(
        "info  computed all 12 tables for n <= 3  [{:.3} s]",
        built.as_secs_f64()
    );
    suite.run("path independence", None, || path_independence(&tables));
    suite.run("property suite", None, property_suite);
    suite.run("structural", None, || structural(&tables));
    suite.run("representative flags", None, || {
        representative_flags(&tables)
    });

    if !suite.known.is_empty() {
        println!(
            "note  failing against known misprints in the published tables: {}",
            suite.known.join(", ")
        );
    }
    if suite.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {}", suite.failures.join(", "));
        ExitCode::FAILURE
    }
}
