#![allow(dead_code)]

use korbit::{
    compute_classes, ClassTable, Family, OrbitParameter, Polynomial, Rational, Ring,
    SymmetricPairConfig,
};
use proptest::prelude::*;

const E2_5: &str = "x1x2+x1x3+x1x4+x1x5+x2x3+x2x4+x2x5+x3x4+x3x5+x4x5";

#[derive(Clone)]
pub struct GoldenRow {
    pub parameter: &'static str,
    pub flag: Option<&'static str>,
    pub class: String,
}

fn rows(data: &[(&'static str, &str)]) -> Vec<GoldenRow> {
    data.iter()
        .map(|&(parameter, class)| GoldenRow {
            parameter,
            flag: None,
            class: class.to_string(),
        })
        .collect()
}

pub fn o_odd_1() -> Vec<GoldenRow> {
    rows(&[
        ("(1,3)", "-2(x1+x2)(x2+x3)"),
        ("(1,2)", "-2(x2+x3)"),
        ("(2,3)", "2(x1+x2)"),
        ("id", "1"),
    ])
}

/// Published `O(5)` row whose printed class is not the one obtained by
/// divided differences; it differs from the computed class by `4 x1 x2 x3`.
pub const O_ODD_2_MISPRINT: &str = "(1,2)(3,5)";

pub fn o_odd_2() -> Vec<GoldenRow> {
    let sym = format!("4(x1+x2)(x3+x4)(x3^2+x4^2+{E2_5})");
    let long = "-4(x2^2x3+x2x3^2-x2x4^2-x2x4x5-x3x4^2-x3x4x5-x4^3-x4^2x5\
                +(x1^2+x1x2)(x2+x3+x4+x5)+x1x3(x3+x4+x5))";
    rows(&[
        ("(1,5)(2,4)", "4(x1+x3)(x3+x5)(x2+x3)(x3+x4)(x1+x2)(x1+x4)"),
        ("(1,5)(3,4)", "-4(x1+x2)(x1+x3)(x1+x4)(x2+x3)(x2+x3+x4+x5)"),
        ("(1,4)(2,5)", "4(x1+x2)(x1+x3)(x2+x3)(x3+x4)(x3+x5)"),
        ("(1,5)(2,3)", "4(x1+x2)(x1+x3)(x1+x4)(x3+x4)(x2+x3+x4+x5)"),
        ("(2,5)(3,4)", "-4(x1+x2)(x1+x3)(x2+x3)(x3+x5)"),
        ("(1,4)(3,5)", "-4(x1+x2)(x1+x3)(x2+x3)(x2+x3+x4+x5)"),
        ("(1,5)", "-2(x1+x2)(x1+x3)(x1+x4)(x2+x3+x4+x5)"),
        ("(1,3)(2,5)", &sym),
        ("(1,4)(2,3)", "4(x1+x2)(x1+x3)(x1+x3+x4+x5)(x2+x3+x4+x5)"),
        ("(2,4)(3,5)", "4(x1+x2)(x1+x3)(x2+x3)"),
        ("(1,3)(4,5)", "-4(x1+x2)(x1+x2+x3+x4)(x2+x3+x4+x5)"),
        (
            "(2,5)",
            "-2(x1+x2)(x1x2+x1x3+x1x4+x1x5+x2x3+x2x4+x2x5+x3^2+x3x4+x3x5+x4^2+x4x5)",
        ),
        ("(1,4)", "-2(x1+x2)(x1+x3)(x2+x3+x4+x5)"),
        ("(1,2)(3,5)", long),
        ("(1,3)(2,4)", "4(x1+x2)(x1+x3+x4+x5)(x2+x3+x4+x5)"),
        ("(2,3)(4,5)", "4(x1+x2)(x1+x2+x3+x4)"),
        ("(1,3)", "-2(x1+x2)(x2+x3+x4+x5)"),
        ("(1,2)(4,5)", "-4(x1+x2+x3+x4)(x2+x3+x4+x5)"),
        ("(2,4)", "-2(x1+x2)(x4+x5)"),
        ("(3,5)", "-2(x4+x5)(x1+x2+x3+x4)"),
        ("(1,2)(3,4)", "4(x4+x5)(x2+x3+x4+x5)"),
        ("(2,3)", "2(x1+x2)"),
        ("(4,5)", "2(x1+x2+x3+x4)"),
        ("(1,2)", "-2(x2+x3+x4+x5)"),
        ("(3,4)", "-2(x4+x5)"),
        ("id", "1"),
    ])
}

pub fn o_even_2() -> Vec<GoldenRow> {
    rows(&[
        ("(1,4)(2,3)", "4x1x2(x1+x2)(x1+x3)"),
        ("(1,3)(2,4)", "4x1x2(x1+x2)"),
        ("(1,4)", "2x1(x1+x2)(x1+x3)"),
        ("(1,2)(3,4)", "4x1(x1+x2+x3)"),
        ("(1,3)", "2x1(x1+x2)"),
        ("(2,4)", "2(x1+x2)(x1+x2+x3)"),
        ("(1,2)", "2x1"),
        ("(3,4)", "2(x1+x2+x3)"),
        ("(2,3)", "2(x1+x2)"),
        ("id", "1"),
    ])
}

pub fn so_even_2() -> Vec<GoldenRow> {
    [
        ("+(1,4)(2,3)", "⟨e1,e2,e3,e4⟩", "2(x1x2+y1y2)(x1+x2)(x1+x3)"),
        ("-(1,4)(2,3)", "⟨e1,e3,e2,e4⟩", "2(x1x2-y1y2)(x1+x2)(x1+x3)"),
        ("+(1,3)(2,4)", "⟨e1,e2,e4,e3⟩", "2(x1x2+y1y2)(x1+x2)"),
        ("-(1,3)(2,4)", "⟨e1,e3,e4,e2⟩", "2(x1x2-y1y2)(x1+x2)"),
        ("(1,4)", "⟨e1,e2+e3,e2-e3,e4⟩", "2x1(x1+x2)(x1+x3)"),
        ("+(1,2)(3,4)", "⟨e1,e4,e2,e3⟩", "2(y1y2+x1^2+x1x2+x1x3)"),
        ("-(1,2)(3,4)", "⟨e1,e4,e3,e2⟩", "-2(y1y2-x1^2-x1x2-x1x3)"),
        ("(1,3)", "⟨e1,e2+e3,e4,e2-e3⟩", "2x1(x1+x2)"),
        ("(2,4)", "⟨e2+e3,e1,e2-e3,e4⟩", "2(x1+x2)(x1+x2+x3)"),
        ("(1,2)", "⟨e1,e4,e2+e3,e2-e3⟩", "2x1"),
        ("(3,4)", "⟨e2+e3,e2-e3,e1,e4⟩", "2(x1+x2+x3)"),
        ("(2,3)", "⟨e2+e3,e1,e4,e2-e3⟩", "2(x1+x2)"),
        ("id", "⟨e1+e4,e1-e4,e2+e3,e2-e3⟩", "1"),
    ]
    .into_iter()
    .map(|(parameter, flag, class)| GoldenRow {
        parameter,
        flag: Some(flag),
        class: class.to_string(),
    })
    .collect()
}

pub fn sp_2() -> Vec<GoldenRow> {
    rows(&[
        ("(1,4)(2,3)", "(x1+x2)(x1+x3)"),
        ("(1,3)(2,4)", "x1+x2"),
        ("(1,2)(3,4)", "1"),
    ])
}

pub fn sp_3() -> Vec<GoldenRow> {
    let sym = format!("(x1+x2)(x1^2+x2^2+{E2_5})");
    rows(&[
        (
            "(1,6)(2,5)(3,4)",
            "(x1+x2)(x1+x5)(x1+x3)(x1+x4)(x2+x3)(x2+x4)",
        ),
        ("(1,5)(2,6)(3,4)", "(x1+x2)(x1+x3)(x1+x4)(x2+x3)(x2+x4)"),
        ("(1,6)(2,4)(3,5)", "(x1+x2)(x1+x5)(x1+x3)(x1+x4)(x2+x3)"),
        ("(1,4)(2,6)(3,5)", "(x1+x2)(x1+x3)(x2+x3)(x1+x2+x4+x5)"),
        ("(1,5)(2,4)(3,6)", "(x1+x2)(x1+x3)(x1+x4)(x2+x3)"),
        ("(1,6)(2,3)(4,5)", "(x1+x2)(x1+x5)(x1+x3)(x1+x4)"),
        ("(1,4)(2,5)(3,6)", "(x1+x2)(x1+x3)(x2+x3)"),
        ("(1,3)(2,6)(4,5)", &sym),
        ("(1,5)(2,3)(4,6)", "(x1+x2)(x1+x3)(x1+x4)"),
        ("(1,2)(3,6)(4,5)", "(x1+x2+x3+x4)(x1+x2+x3+x5)"),
        ("(1,3)(2,5)(4,6)", "(x1+x2)(x1+x2+x3+x4)"),
        ("(1,4)(2,3)(5,6)", "(x1+x2)(x1+x3)"),
        ("(1,2)(3,5)(4,6)", "x1+x2+x3+x4"),
        ("(1,3)(2,4)(5,6)", "x1+x2"),
        ("(1,2)(3,4)(5,6)", "1"),
    ])
}

pub fn config(family: Family, rank: usize) -> SymmetricPairConfig {
    SymmetricPairConfig::new(family, rank).unwrap()
}

/// Rows of `golden` whose class differs from the computed one, as
/// `(parameter, expected, computed)`.
pub fn mismatches(
    config: &SymmetricPairConfig,
    table: &ClassTable,
    golden: &[GoldenRow],
) -> Vec<(String, String, String)> {
    let ring = Ring::for_config(config);
    let mut out = Vec::new();
    for row in golden {
        let node = OrbitParameter::parse(row.parameter, config).unwrap();
        let expected = Polynomial::parse(&row.class, ring).unwrap();
        let computed = table.get(&node).cloned();
        if computed.as_ref() != Some(&expected) {
            out.push((
                row.parameter.to_string(),
                expected.to_string(),
                computed.map_or("<missing>".to_string(), |p| p.to_string()),
            ));
        }
    }
    out
}

pub fn table(family: Family, rank: usize) -> (SymmetricPairConfig, ClassTable) {
    let config = config(family, rank);
    let (_, table) = compute_classes(&config).unwrap();
    (config, table)
}

/// Random polynomial in `ring` with at most six terms of degree at most six.
pub fn random_polynomial(ring: Ring) -> impl Strategy<Value = Polynomial> {
    let nvars = ring.nvars();
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..nvars, 0..=6)), 0..=6).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|(c, vars)| {
                let mut exps = vec![0u16; nvars];
                for v in vars {
                    exps[v] += 1;
                }
                (Rational::from_integer(c.into()), exps)
            });
            Polynomial::from_terms(ring, terms).unwrap()
        },
    )
}
