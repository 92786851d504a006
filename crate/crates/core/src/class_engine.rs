//! Classes of all orbit closures by divided differences along the weak
//! order, starting from the closed orbits.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_orbits::closed_orbit_classes;
use crate::combinatorics::{Family, SymmetricPairConfig};
use crate::error::{Error, Result};
use crate::localization::verify_vanishing_outside_closure;
use crate::polyring::{rational, Polynomial};
use crate::weak_order::{
    resolve_with_derivative, weak_order_step, Edge, OrbitParameter, StepOutcome, WeakOrderGraph,
};

/// Classes of every orbit closure, with the edges each was derived along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    config: SymmetricPairConfig,
    entries: BTreeMap<OrbitParameter, Polynomial>,
    provenance: BTreeMap<OrbitParameter, Vec<(OrbitParameter, usize)>>,
}

impl ClassTable {
    pub fn config(&self) -> &SymmetricPairConfig {
        &self.config
    }

    pub fn get(&self, node: &OrbitParameter) -> Option<&Polynomial> {
        self.entries.get(node)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrbitParameter, &Polynomial)> {
        self.entries.iter()
    }

    /// `(parent, root)` pairs the entry was computed from; empty for seeds.
    pub fn provenance(&self, node: &OrbitParameter) -> &[(OrbitParameter, usize)] {
        self.provenance.get(node).map_or(&[], Vec::as_slice)
    }

    /// Entries from the closed orbits up to the dense one: by decreasing
    /// codimension, then decreasing involution length, then parameter.
    pub fn rows(&self) -> Vec<(&OrbitParameter, &Polynomial)> {
        let mut rows: Vec<_> = self.entries.iter().collect();
        rows.sort_by_key(|(node, class)| {
            (
                Reverse(class.total_degree().unwrap_or(0)),
                Reverse(node.involution().length()),
                *node,
            )
        });
        rows
    }
}

struct Contribution {
    parent: OrbitParameter,
    root: usize,
    target: OrbitParameter,
    degree: u8,
    class: Polynomial,
}

fn children(
    node: &OrbitParameter,
    class: &Polynomial,
    config: &SymmetricPairConfig,
) -> Result<Vec<Contribution>> {
    let mut out = Vec::new();
    for i in 1..config.ambient() {
        let (target, degree) = match weak_order_step(node, i, config)? {
            StepOutcome::Same => continue,
            StepOutcome::Cover { target, degree } => (target, degree),
            StepOutcome::SplitCover { target } => (OrbitParameter::new_unchecked(target, None), 1),
        };
        let derivative = class.divided_difference(i)?;
        let target = if config.family == Family::SoEven && target.involution().is_fixed_point_free()
        {
            let sign = resolve_with_derivative(node, i, target.involution(), &derivative, config)?;
            OrbitParameter::new_unchecked(target.involution().clone(), Some(sign))
        } else {
            target
        };
        check_edge_length(node, &target, degree)?;
        let class = derivative.scale(&rational(degree as i64).recip());
        out.push(Contribution {
            parent: node.clone(),
            root: i,
            target,
            degree,
            class,
        });
    }
    Ok(out)
}

fn check_edge_length(source: &OrbitParameter, target: &OrbitParameter, degree: u8) -> Result<()> {
    let from = source.involution().length();
    let to = target.involution().length();
    // conjugation edges drop the length by two, multiplication edges by one
    let drop =
        if target.involution().fixed_points().len() == source.involution().fixed_points().len() {
            2
        } else {
            1
        };
    let expected_degree = if drop == 1 && !source.is_split() {
        2
    } else {
        1
    };
    if from != to + drop || degree != expected_degree {
        return Err(Error::Internal(format!(
            "edge {source} -> {target} of degree {degree} changes length {from} -> {to}"
        )));
    }
    Ok(())
}

fn check_entry(
    node: &OrbitParameter,
    class: &Polynomial,
    config: &SymmetricPairConfig,
) -> Result<()> {
    if !class.is_integral() {
        return Err(Error::NonIntegral(node.to_string()));
    }
    let n = config.rank;
    let allowed = |pattern: &Vec<u16>| {
        pattern.iter().all(|&e| e == 0)
            || (config.family == Family::SoEven
                && pattern.iter().all(|&e| e == 1)
                && pattern.len() == n)
    };
    if !class.y_patterns().iter().all(allowed) {
        return Err(Error::YDiscipline(format!("{node}: {class}")));
    }
    Ok(())
}

/// Computes the weak-order graph and the class of every orbit closure.
///
/// Nodes are processed by decreasing involution length, so all parents of
/// a node are finished before it; nodes of equal length are handled in
/// parallel. A node reached along several edges must receive the same
/// class along each of them.
pub fn compute_classes(config: &SymmetricPairConfig) -> Result<(WeakOrderGraph, ClassTable)> {
    let mut levels: BTreeMap<usize, BTreeSet<OrbitParameter>> = BTreeMap::new();
    let mut pending: BTreeMap<OrbitParameter, Vec<(OrbitParameter, usize, Polynomial)>> =
        BTreeMap::new();
    let mut entries = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    let mut edges = Vec::new();

    for seed in closed_orbit_classes(config) {
        levels
            .entry(seed.parameter.involution().length())
            .or_default()
            .insert(seed.parameter.clone());
        entries.insert(seed.parameter.clone(), seed.class);
        provenance.insert(seed.parameter, Vec::new());
    }

    while let Some((_, level)) = levels.pop_last() {
        let level: Vec<OrbitParameter> = level.into_iter().collect();
        for node in &level {
            if entries.contains_key(node) {
                continue;
            }
            let arrivals = pending
                .remove(node)
                .ok_or_else(|| Error::Internal(format!("{node} was reached without a parent")))?;
            let (first_parent, first_root, first) = &arrivals[0];
            for (parent, root, class) in &arrivals[1..] {
                if class != first {
                    return Err(Error::PathIndependence {
                        node: node.to_string(),
                        first: format!("s_{first_root} from {first_parent}: {first}"),
                        second: format!("s_{root} from {parent}: {class}"),
                    });
                }
            }
            check_entry(node, first, config)?;
            entries.insert(node.clone(), first.clone());
            provenance.insert(
                node.clone(),
                arrivals.iter().map(|(p, r, _)| (p.clone(), *r)).collect(),
            );
        }

        let batches = level
            .par_iter()
            .map(|node| children(node, &entries[node], config))
            .collect::<Result<Vec<_>>>()?;
        for contribution in batches.into_iter().flatten() {
            levels
                .entry(contribution.target.involution().length())
                .or_default()
                .insert(contribution.target.clone());
            edges.push(Edge {
                source: contribution.parent.clone(),
                target: contribution.target.clone(),
                root: contribution.root,
                degree: contribution.degree,
            });
            pending.entry(contribution.target).or_default().push((
                contribution.parent,
                contribution.root,
                contribution.class,
            ));
        }
    }

    let nodes = entries.keys().cloned().collect();
    let graph = WeakOrderGraph::new(*config, nodes, edges);
    let table = ClassTable {
        config: *config,
        entries,
        provenance,
    };
    Ok((graph, table))
}

/// One consistency check on a computed table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub check: String,
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub checks: Vec<TableCheck>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TableCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn push(&mut self, check: &str, subject: impl ToString, pass: bool, detail: impl Into<String>) {
        self.checks.push(TableCheck {
            check: check.to_string(),
            subject: subject.to_string(),
            pass,
            detail: detail.into(),
        });
    }
}

/// Runs the table-level checks: vanishing outside each closure (the
/// `O(2n)`-closure for split orbits), integrality, the dense orbit having
/// class 1, degrees along edges, and for `SoEven` agreement with the
/// `OEven` table.
pub fn verify_table(
    table: &ClassTable,
    graph: &WeakOrderGraph,
    config: &SymmetricPairConfig,
) -> Result<TableReport> {
    let mut report = TableReport::default();
    for (node, class) in table.rows() {
        let vanishing = verify_vanishing_outside_closure(class, node.involution(), config)?;
        let bad = vanishing.failures().count();
        report.push(
            "vanishing",
            node,
            bad == 0,
            format!("{} excluded fixed points, {bad} nonzero", vanishing.len()),
        );
        report.push("integrality", node, class.is_integral(), class.to_string());
    }
    let tops = graph.tops();
    let top_ok = tops.len() == 1 && table.get(tops[0]).is_some_and(Polynomial::is_one);
    let subject = tops
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    report.push("top", subject, top_ok, "dense orbit has class 1");
    for edge in graph.edges() {
        let (Some(s), Some(t)) = (table.get(&edge.source), table.get(&edge.target)) else {
            report.push(
                "degree",
                format!("{} -> {}", edge.source, edge.target),
                false,
                "missing class",
            );
            continue;
        };
        let ok = s
            .total_degree()
            .zip(t.total_degree())
            .is_some_and(|(a, b)| a == b + 1);
        report.push(
            "degree",
            format!("{} -> {}", edge.source, edge.target),
            ok,
            "",
        );
    }
    if config.family == Family::SoEven {
        let o_config = SymmetricPairConfig::new(Family::OEven, config.rank)?;
        let (_, o_table) = compute_classes(&o_config)?;
        for (node, class) in o_table.iter() {
            let b = node.involution().clone();
            if b.is_fixed_point_free() {
                let parts: Vec<_> = [crate::Component::Plus, crate::Component::Minus]
                    .into_iter()
                    .filter_map(|c| table.get(&OrbitParameter::new_unchecked(b.clone(), Some(c))))
                    .collect();
                let sum = parts
                    .iter()
                    .fold(Polynomial::zero(class.ring()), |acc, p| &acc + *p);
                report.push(
                    "sum-identity",
                    node,
                    parts.len() == 2 && &sum == class,
                    sum.to_string(),
                );
            } else {
                let own = table.get(node);
                report.push(
                    "unsplit-agreement",
                    node,
                    own == Some(class),
                    class.to_string(),
                );
            }
        }
    }
    Ok(report)
}
