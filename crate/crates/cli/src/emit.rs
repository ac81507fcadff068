//! DOT and JSON renderers for a computed subgroup lattice.
//!
//! DOT nodes follow the `a-b` convention: node id `cA_nB` for member `B` of
//! class `A` (1-based), label `"A-B"`, with the `-B` part dropped for normal
//! classes. Normal classes draw as boxes, others as circles. When the member
//! count exceeds the lattice's member limit, a class-level quotient graph is
//! emitted instead, marked with `peripheries=2`.

use std::fmt::Write as _;

use serde::Serialize;
use sublat_core::latticeops::SubgroupLattice;

#[derive(Clone, Copy, Debug, Default)]
pub struct DotOptions {
    /// Group nodes of equal subgroup order on the same rank. Off by default;
    /// layering is a renderer concern.
    pub rank_by_order: bool,
}

/// Renders the lattice in the graphviz text format, one node per subgroup
/// and one directed edge per covering pair (lower → upper), in canonical
/// order.
pub fn emit_dot(lattice: &SubgroupLattice, options: &DotOptions) -> String {
    let mut out = String::from("digraph subgroups {\n");
    if lattice.expanded_mode() {
        for (ci, class) in lattice.classes().iter().enumerate() {
            let shape = if class.is_normal() { "box" } else { "circle" };
            for mi in 0..class.len() {
                let label = if class.is_normal() {
                    format!("{}", ci + 1)
                } else {
                    format!("{}-{}", ci + 1, mi + 1)
                };
                let _ = writeln!(
                    out,
                    "  c{}_n{} [label=\"{}\", shape={}];",
                    ci + 1,
                    mi + 1,
                    label,
                    shape
                );
            }
        }
        if options.rank_by_order {
            let mut orders: Vec<u64> =
                lattice.classes().iter().map(|c| c.order()).collect();
            orders.sort_unstable();
            orders.dedup();
            for order in orders {
                let mut line = String::from("  { rank=same;");
                for (ci, class) in lattice.classes().iter().enumerate() {
                    if class.order() == order {
                        for mi in 0..class.len() {
                            let _ = write!(line, " c{}_n{};", ci + 1, mi + 1);
                        }
                    }
                }
                line.push_str(" }\n");
                out.push_str(&line);
            }
        }
        for edge in lattice.edges() {
            let _ = writeln!(
                out,
                "  c{}_n{} -> c{}_n{};",
                edge.lower.0 + 1,
                edge.lower.1 + 1,
                edge.upper.0 + 1,
                edge.upper.1 + 1
            );
        }
    } else {
        // class-level quotient graph
        for (ci, class) in lattice.classes().iter().enumerate() {
            let shape = if class.is_normal() { "box" } else { "circle" };
            let label = if class.len() == 1 {
                format!("{}", ci + 1)
            } else {
                format!("{} ({})", ci + 1, class.len())
            };
            let _ = writeln!(
                out,
                "  c{} [label=\"{}\", shape={}, peripheries=2];",
                ci + 1,
                label,
                shape
            );
        }
        if options.rank_by_order {
            let mut orders: Vec<u64> =
                lattice.classes().iter().map(|c| c.order()).collect();
            orders.sort_unstable();
            orders.dedup();
            for order in orders {
                let mut line = String::from("  { rank=same;");
                for (ci, class) in lattice.classes().iter().enumerate() {
                    if class.order() == order {
                        let _ = write!(line, " c{};", ci + 1);
                    }
                }
                line.push_str(" }\n");
                out.push_str(&line);
            }
        }
        for (lo, up) in lattice.class_edges() {
            let _ = writeln!(out, "  c{} -> c{};", lo + 1, up + 1);
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonEngine {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct JsonInput {
    sha256: Option<String>,
    name: Option<String>,
    degree: usize,
    order: u64,
}

#[derive(Serialize)]
struct JsonClass {
    index: usize,
    order: u64,
    length: usize,
    normalizer_order: u64,
    normal: bool,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct JsonLattice {
    engine: JsonEngine,
    input: JsonInput,
    max_order: Option<u64>,
    complete: bool,
    edge_mode: &'static str,
    classes: Vec<JsonClass>,
    edges: Vec<Vec<usize>>,
}

/// Reproducibility metadata carried into the JSON document.
#[derive(Clone, Debug, Default)]
pub struct EmitMeta {
    pub input_sha256: Option<String>,
    pub group_name: Option<String>,
    pub max_order: Option<u64>,
}

/// Renders the lattice as a machine-readable JSON document with stable key
/// order. Edges are 1-based `[lower_class, lower_member, upper_class,
/// upper_member]` rows (or `[lower_class, upper_class]` in class mode).
pub fn emit_json(lattice: &SubgroupLattice, meta: &EmitMeta) -> String {
    let classes: Vec<JsonClass> = lattice
        .classes()
        .iter()
        .enumerate()
        .map(|(ci, class)| JsonClass {
            index: ci + 1,
            order: class.order(),
            length: class.len(),
            normalizer_order: class
                .normalizer()
                .order()
                .expect("normalizer order is cached"),
            normal: class.is_normal(),
            generators: class
                .representative()
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
        })
        .collect();
    let (edge_mode, edges) = if lattice.expanded_mode() {
        (
            "members",
            lattice
                .edges()
                .iter()
                .map(|e| {
                    vec![
                        e.lower.0 + 1,
                        e.lower.1 + 1,
                        e.upper.0 + 1,
                        e.upper.1 + 1,
                    ]
                })
                .collect(),
        )
    } else {
        (
            "classes",
            lattice
                .class_edges()
                .into_iter()
                .map(|(lo, up)| vec![lo + 1, up + 1])
                .collect(),
        )
    };
    let doc = JsonLattice {
        engine: JsonEngine {
            name: "sublat",
            version: env!("CARGO_PKG_VERSION"),
        },
        input: JsonInput {
            sha256: meta.input_sha256.clone(),
            name: meta.group_name.clone(),
            degree: lattice.group().degree(),
            order: lattice.group().order().expect("group order is cached"),
        },
        max_order: meta.max_order,
        complete: lattice.is_complete(),
        edge_mode,
        classes,
        edges,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable document");
    text.push('\n');
    text
}
