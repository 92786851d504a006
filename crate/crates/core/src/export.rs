//! Text, Markdown, LaTeX and JSON renderings of orbit lists, class tables
//! and weak-order graphs.

use serde_json::{json, Value};

use crate::class_engine::ClassTable;
use crate::combinatorics::{Family, SymmetricPairConfig};
use crate::degeneracy::{parameter_flag, FlagBasis};
use crate::error::Result;
use crate::render::{factor, Notation};
use crate::weak_order::{OrbitParameter, WeakOrderGraph};

pub const SCHEMA_VERSION: u32 = 1;

fn flag_latex(flag: &FlagBasis) -> String {
    let vectors: Vec<String> = flag
        .vectors()
        .iter()
        .map(|v| {
            let mut out = String::new();
            for (idx, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
                let sign = if c < 0 {
                    "-"
                } else if out.is_empty() {
                    ""
                } else {
                    "+"
                };
                let mag = if c.abs() == 1 {
                    String::new()
                } else {
                    c.abs().to_string()
                };
                out.push_str(&format!("{sign}{mag}e_{{{}}}", idx + 1));
            }
            out
        })
        .collect();
    format!("\\langle {} \\rangle", vectors.join(", "))
}

fn parameter_latex(p: &OrbitParameter) -> String {
    let text = p.to_string();
    if text.ends_with("id") {
        text.replace("id", "\\mathrm{id}")
    } else {
        text
    }
}

fn shows_flags(config: &SymmetricPairConfig) -> bool {
    config.family == Family::SoEven
}

fn header(config: &SymmetricPairConfig) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "family": config.family.name(),
        "n": config.rank,
        "ambient": config.ambient(),
    })
}

/// Orbit parameters with representative flags, closed orbits first.
pub fn orbits_json(table: &ClassTable) -> Result<Value> {
    let config = table.config();
    let mut rows = Vec::new();
    for (node, class) in table.rows() {
        let flag = parameter_flag(node, config)?;
        rows.push(json!({
            "parameter": node.to_string(),
            "involution": node.involution().word(),
            "component": node.component().map(|c| c.to_string()),
            "length": node.involution().length(),
            "codimension": class.total_degree().unwrap_or(0),
            "flag": flag.to_string(),
            "basis": flag.vectors(),
        }));
    }
    let mut out = header(config);
    out["orbits"] = Value::Array(rows);
    Ok(out)
}

pub fn orbits_text(table: &ClassTable, notation_markdown: bool) -> Result<String> {
    let config = table.config();
    let mut lines = Vec::new();
    let rows = table.rows();
    let width = rows
        .iter()
        .map(|(n, _)| n.to_string().chars().count())
        .max()
        .unwrap_or(0);
    if notation_markdown {
        lines.push("| orbit | codimension | representative flag |".to_string());
        lines.push("|---|---|---|".to_string());
    }
    for (node, class) in rows {
        let flag = parameter_flag(node, config)?;
        let codim = class.total_degree().unwrap_or(0);
        if notation_markdown {
            lines.push(format!("| {node} | {codim} | {flag} |"));
        } else {
            lines.push(format!("{:<width$}  {codim:>2}  {flag}", node.to_string()));
        }
    }
    Ok(lines.join("\n") + "\n")
}

pub fn orbits_latex(table: &ClassTable) -> Result<String> {
    let config = table.config();
    let mut out = String::from(
        "\\begin{tabular}{lll}\n\\hline\nOrbit & Codimension & Representative \\\\\n\\hline\n",
    );
    for (node, class) in table.rows() {
        let flag = parameter_flag(node, config)?;
        out.push_str(&format!(
            "${}$ & {} & ${}$ \\\\\n",
            parameter_latex(node),
            class.total_degree().unwrap_or(0),
            flag_latex(&flag)
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    Ok(out)
}

pub fn classes_json(table: &ClassTable) -> Result<Value> {
    let config = table.config();
    let mut rows = Vec::new();
    for (node, class) in table.rows() {
        let flag = parameter_flag(node, config)?;
        let provenance: Vec<Value> = table
            .provenance(node)
            .iter()
            .map(|(parent, root)| json!({"parent": parent.to_string(), "root": root}))
            .collect();
        rows.push(json!({
            "parameter": node.to_string(),
            "involution": node.involution().word(),
            "component": node.component().map(|c| c.to_string()),
            "flag": flag.to_string(),
            "class": factor(class).to_string(),
            "expanded": class.to_string(),
            "terms": class.to_records(),
            "provenance": provenance,
        }));
    }
    let mut out = header(config);
    out["classes"] = Value::Array(rows);
    Ok(out)
}

/// One line per orbit: parameter, then the factored class.
pub fn classes_text(table: &ClassTable) -> String {
    let rows = table.rows();
    let width = rows
        .iter()
        .map(|(n, _)| n.to_string().chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(node, class)| format!("{:<width$}  {}\n", node.to_string(), factor(class)))
        .collect()
}

pub fn classes_markdown(table: &ClassTable) -> Result<String> {
    let config = table.config();
    let mut out = String::new();
    if shows_flags(config) {
        out.push_str("| π | Representative | [Y_π] |\n|---|---|---|\n");
    } else {
        out.push_str("| π | [Y_π] |\n|---|---|\n");
    }
    for (node, class) in table.rows() {
        if shows_flags(config) {
            let flag = parameter_flag(node, config)?;
            out.push_str(&format!("| {node} | {flag} | {} |\n", factor(class)));
        } else {
            out.push_str(&format!("| {node} | {} |\n", factor(class)));
        }
    }
    Ok(out)
}

pub fn classes_latex(table: &ClassTable) -> Result<String> {
    let config = table.config();
    let flags = shows_flags(config);
    let mut out = String::new();
    if flags {
        out.push_str(
            "\\begin{tabular}{lll}\n\\hline\n$\\pi$ & Representative & $[Y_\\pi]$ \\\\\n\\hline\n",
        );
    } else {
        out.push_str("\\begin{tabular}{ll}\n\\hline\n$\\pi$ & $[Y_\\pi]$ \\\\\n\\hline\n");
    }
    for (node, class) in table.rows() {
        let formula = factor(class).render(Notation::Latex);
        if flags {
            let flag = parameter_flag(node, config)?;
            out.push_str(&format!(
                "${}$ & ${}$ & ${formula}$ \\\\\n",
                parameter_latex(node),
                flag_latex(&flag)
            ));
        } else {
            out.push_str(&format!("${}$ & ${formula}$ \\\\\n", parameter_latex(node)));
        }
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    Ok(out)
}

pub fn graph_json(graph: &WeakOrderGraph) -> Value {
    let nodes: Vec<String> = graph.nodes().iter().map(ToString::to_string).collect();
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .map(|e| {
            json!({
                "source": e.source.to_string(),
                "target": e.target.to_string(),
                "root": e.root,
                "degree": e.degree,
            })
        })
        .collect();
    let mut out = header(graph.config());
    out["nodes"] = json!(nodes);
    out["edges"] = Value::Array(edges);
    out
}

pub fn graph_text(graph: &WeakOrderGraph) -> String {
    graph
        .edges()
        .iter()
        .map(|e| {
            let colour = if e.degree == 2 { "blue" } else { "black" };
            format!("{} -{}-> {} ({colour})\n", e.source, e.root, e.target)
        })
        .collect()
}

pub fn graph_markdown(graph: &WeakOrderGraph) -> String {
    let mut out = String::from("| source | root | target | degree |\n|---|---|---|---|\n");
    for e in graph.edges() {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            e.source, e.root, e.target, e.degree
        ));
    }
    out
}

pub fn graph_latex(graph: &WeakOrderGraph) -> String {
    let mut out = String::from(
        "\\begin{tabular}{llll}\n\\hline\nSource & Root & Target & $d$ \\\\\n\\hline\n",
    );
    for e in graph.edges() {
        out.push_str(&format!(
            "${}$ & $\\alpha_{{{}}}$ & ${}$ & {} \\\\\n",
            parameter_latex(&e.source),
            e.root,
            parameter_latex(&e.target),
            e.degree
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}
