//! Orbit parameters and the weak order on orbits.
//!
//! An edge `b ->_i b'` means `s_i · Q_b = Q_{b'}` with `Q_b` of codimension
//! one in `Q_{b'}`; its degree `d` is the degree of `P_i`-saturation map
//! restricted to `Q̄_b`, so that `[Q_{b'}] = (1/d) ∂_i [Q_b]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Component, Family, Permutation, SymmetricPairConfig};
use crate::degeneracy::representative_flag;
use crate::error::{Error, Result};
use crate::localization::{check_orbit_parameter, RestrictionMap};
use crate::polyring::{restrict_with, Polynomial};

/// An orbit: an involution plus, for split `SO(2n)` orbits, a component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitParameter {
    involution: Permutation,
    component: Option<Component>,
}

impl OrbitParameter {
    pub fn new(
        involution: Permutation,
        component: Option<Component>,
        config: &SymmetricPairConfig,
    ) -> Result<Self> {
        check_orbit_parameter(&involution, config)?;
        let split = config.family == Family::SoEven && involution.is_fixed_point_free();
        if split != component.is_some() {
            let reason = if split {
                format!("{} needs a component sign", involution.cycle_notation())
            } else {
                format!("{} takes no component sign", involution.cycle_notation())
            };
            return Err(Error::InvalidParameter {
                family: config.family.to_string(),
                reason,
            });
        }
        Ok(OrbitParameter {
            involution,
            component,
        })
    }

    pub(crate) fn new_unchecked(involution: Permutation, component: Option<Component>) -> Self {
        OrbitParameter {
            involution,
            component,
        }
    }

    /// Parses `"(1,3)(2,4)"`, `"3412"`, `"id"`, with an optional leading
    /// `+` or `-` selecting the component.
    pub fn parse(text: &str, config: &SymmetricPairConfig) -> Result<Self> {
        let text = text.trim();
        let (component, rest) = match text.chars().next() {
            Some('+') => (Some(Component::Plus), &text[1..]),
            Some('-') => (Some(Component::Minus), &text[1..]),
            _ => (None, text),
        };
        let involution = Permutation::parse(rest.trim(), config.ambient())?;
        Self::new(involution, component, config)
    }

    pub fn involution(&self) -> &Permutation {
        &self.involution
    }

    pub fn component(&self) -> Option<Component> {
        self.component
    }

    pub fn is_split(&self) -> bool {
        self.component.is_some()
    }
}

impl fmt::Display for OrbitParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.component {
            write!(f, "{c}")?;
        }
        f.write_str(&self.involution.cycle_notation())
    }
}

/// The effect of `s_i` on an involution under the orthogonal or symplectic
/// rules, ignoring components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionStep {
    Same,
    /// Black edge to `s_i b s_i`.
    Conjugate(Permutation),
    /// Blue edge to `s_i b`.
    Multiply(Permutation),
}

pub fn involution_step(b: &Permutation, i: usize, family: Family) -> InvolutionStep {
    // b is an involution, so l(s_i b) > l(b) iff b(i) < b(i+1)
    if b.apply(i) < b.apply(i + 1) {
        return InvolutionStep::Same;
    }
    let conjugate = b.conjugate_simple(i);
    if conjugate != *b {
        InvolutionStep::Conjugate(conjugate)
    } else if family == Family::Sp {
        InvolutionStep::Same
    } else {
        InvolutionStep::Multiply(b.left_mul_simple(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Same,
    Cover {
        target: OrbitParameter,
        degree: u8,
    },
    /// Split source and split target: the target component is decided by
    /// [`resolve_split_edge`].
    SplitCover {
        target: Permutation,
    },
}

/// `s_i · Q_b`, up to the choice of component for split targets.
pub fn weak_order_step(
    b: &OrbitParameter,
    i: usize,
    config: &SymmetricPairConfig,
) -> Result<StepOutcome> {
    let big = config.ambient();
    if i == 0 || i >= big {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: big - 1,
        });
    }
    let cover = |target: Permutation, degree: u8| StepOutcome::Cover {
        target: OrbitParameter::new_unchecked(target, None),
        degree,
    };
    let step = involution_step(&b.involution, i, config.family);
    Ok(match (step, b.is_split()) {
        (InvolutionStep::Same, _) => StepOutcome::Same,
        // both components are dense in the unsplit target; the map from
        // each of them is birational
        (InvolutionStep::Multiply(t), true) => cover(t, 1),
        (InvolutionStep::Conjugate(t), true) => StepOutcome::SplitCover { target: t },
        (InvolutionStep::Conjugate(t), false) => {
            if config.family == Family::SoEven && t.is_fixed_point_free() {
                return Err(Error::Internal(format!(
                    "unsplit {b} covered by split {}",
                    t.cycle_notation()
                )));
            }
            cover(t, 1)
        }
        (InvolutionStep::Multiply(t), false) => {
            if config.family == Family::SoEven && t.is_fixed_point_free() {
                return Err(Error::Internal(format!(
                    "unsplit {b} covered by split {}",
                    t.cycle_notation()
                )));
            }
            cover(t, 2)
        }
    })
}

/// The coordinate flag representing the component `sign` of the split
/// orbit `b`: the representative flag for `+`, and its image under the
/// element `s_n` of `O(2n) \ SO(2n)` for `-`.
pub fn component_representative(
    b: &Permutation,
    sign: Component,
    config: &SymmetricPairConfig,
) -> Result<Permutation> {
    if config.family != Family::SoEven || !b.is_fixed_point_free() {
        return Err(Error::InvalidParameter {
            family: config.family.to_string(),
            reason: format!("{} is not a split orbit", b.cycle_notation()),
        });
    }
    let flag = representative_flag(b, config)?;
    let w = flag.as_coordinate_flag().ok_or_else(|| {
        Error::Internal(format!("representative of {b} is not a coordinate flag"))
    })?;
    Ok(match sign {
        Component::Plus => w,
        Component::Minus => w.left_mul_simple(config.rank),
    })
}

/// Decides which component of the split orbit `s_i b s_i` is `s_i · Q_{b,±}`
/// by restricting `∂_i [Q_{b,±}]` to the representative of each candidate.
pub fn resolve_split_edge(
    source: &OrbitParameter,
    i: usize,
    config: &SymmetricPairConfig,
    class_of_source: &Polynomial,
) -> Result<Component> {
    let target = match weak_order_step(source, i, config)? {
        StepOutcome::SplitCover { target } => target,
        other => {
            return Err(Error::InvalidParameter {
                family: config.family.to_string(),
                reason: format!("s_{i} does not move {source} to a split orbit: {other:?}"),
            })
        }
    };
    let derivative = class_of_source.divided_difference(i)?;
    resolve_with_derivative(source, i, &target, &derivative, config)
}

pub(crate) fn resolve_with_derivative(
    source: &OrbitParameter,
    i: usize,
    target: &Permutation,
    derivative: &Polynomial,
    config: &SymmetricPairConfig,
) -> Result<Component> {
    let rho = RestrictionMap::for_config(config);
    let mut nonzero = Vec::new();
    for sign in [Component::Plus, Component::Minus] {
        let w = component_representative(target, sign, config)?;
        if !restrict_with(derivative, &w, &rho).is_zero() {
            nonzero.push(sign);
        }
    }
    match nonzero.as_slice() {
        [sign] => Ok(*sign),
        _ => Err(Error::AmbiguousSplitEdge {
            source_param: source.to_string(),
            root: i,
            detail: format!(
                "{} of the two representatives of {} see a nonzero restriction",
                nonzero.len(),
                target.cycle_notation()
            ),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub source: OrbitParameter,
    pub target: OrbitParameter,
    pub root: usize,
    pub degree: u8,
}

/// Orbits with the weak-order edges between them, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakOrderGraph {
    config: SymmetricPairConfig,
    nodes: Vec<OrbitParameter>,
    edges: Vec<Edge>,
}

impl WeakOrderGraph {
    pub(crate) fn new(
        config: SymmetricPairConfig,
        mut nodes: Vec<OrbitParameter>,
        mut edges: Vec<Edge>,
    ) -> Self {
        nodes.sort();
        nodes.dedup();
        edges.sort();
        WeakOrderGraph {
            config,
            nodes,
            edges,
        }
    }

    pub fn config(&self) -> &SymmetricPairConfig {
        &self.config
    }

    pub fn nodes(&self) -> &[OrbitParameter] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, node: &OrbitParameter) -> bool {
        self.nodes.binary_search(node).is_ok()
    }

    pub fn incoming<'a>(&'a self, node: &'a OrbitParameter) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| &e.target == node)
    }

    pub fn outgoing<'a>(&'a self, node: &'a OrbitParameter) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| &e.source == node)
    }

    /// Nodes without outgoing edges; the dense orbit alone in a valid graph.
    pub fn tops(&self) -> Vec<&OrbitParameter> {
        self.nodes
            .iter()
            .filter(|n| self.outgoing(n).next().is_none())
            .collect()
    }

    /// Nodes without incoming edges; the closed orbits in a valid graph.
    pub fn bottoms(&self) -> Vec<&OrbitParameter> {
        self.nodes
            .iter()
            .filter(|n| self.incoming(n).next().is_none())
            .collect()
    }

    /// Graphviz rendering; closed orbits at the bottom, blue edges for
    /// degree two.
    pub fn to_dot(&self) -> String {
        let mut out = format!(
            "digraph \"{} n={}\" {{\n  rankdir=BT;\n  node [shape=plaintext];\n",
            self.config.family, self.config.rank
        );
        for (k, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{k} [label=\"{node}\"];\n"));
        }
        let index = |p: &OrbitParameter| self.nodes.binary_search(p).unwrap();
        for e in &self.edges {
            let color = if e.degree == 2 { "blue" } else { "black" };
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\", color={color}];\n",
                index(&e.source),
                index(&e.target),
                e.root
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the weak-order graph. Resolving split edges needs the classes, so
/// this runs the full class computation.
pub fn generate_graph(config: &SymmetricPairConfig) -> Result<WeakOrderGraph> {
    crate::class_engine::compute_classes(config).map(|(graph, _)| graph)
}
