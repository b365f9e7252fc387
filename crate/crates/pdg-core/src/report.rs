//! JSON-friendly analysis report: one flat, loss-free summary of
//! everything the library computes for a single `(n, k)` pair. Big
//! integers are carried as decimal strings.

use serde::{Deserialize, Serialize};

use crate::numtheory::coprime_split;
use crate::structure::{facts, indegree_zero_in_level};
use crate::{aut, canon, spectral, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClass {
    pub order: u64,
    pub length: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentClass {
    pub cycle_length: u64,
    pub size: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub connected: bool,
    pub regular: bool,
    pub arc_transitive: bool,
    pub vertex_transitive: bool,
    pub generators_indegree_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyReport {
    /// Factored rendering, e.g. `x^21 * (x - 1) * (x^3 - 1)^2`.
    pub factored: String,
    pub lambda_power: u64,
    /// `(r, e)` pairs meaning `(x^r - 1)^e`.
    pub factors: Vec<(u64, u64)>,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutClassReport {
    pub cycle_length: u64,
    pub multiplicity: u64,
    /// Decimal string.
    pub component_order: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutSummary {
    /// `|Aut(T_1)|` as a decimal string.
    pub tree_aut_order: String,
    /// `|Aut(G(n,k))|` as a decimal string.
    pub total_order: String,
    pub structure: String,
    pub classes: Vec<AutClassReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: u64,
    pub k: u64,
    pub t: u64,
    pub w: u64,
    pub h0: u64,
    pub longest_cycle: u64,
    pub total_cycles: u64,
    pub cycle_classes: Vec<CycleClass>,
    pub cycles_by_length: Vec<(u64, u64)>,
    pub components: Vec<ComponentClass>,
    pub tree_levels: Vec<u64>,
    pub total_levels: Vec<u64>,
    pub indegree_zero: u64,
    /// Indegree-0 vertices per tree in levels `1..=h0-1` (empty when
    /// `h0 < 2`).
    pub indegree_zero_per_level: Vec<u64>,
    pub predicates: PredicateReport,
    pub char_poly: PolyReport,
    pub min_poly: PolyReport,
    pub automorphisms: AutSummary,
    pub certificate: String,
}

fn poly_report(p: &spectral::FactoredPoly) -> PolyReport {
    PolyReport {
        factored: p.to_string(),
        lambda_power: p.lambda_power,
        factors: p.cycle_factors.clone(),
        degree: p.degree(),
    }
}

/// Assemble the full closed-form report for `G(n, k)`.
pub fn analyze(n: u64, k: u64) -> Result<AnalysisReport> {
    let split = coprime_split(n, k)?;
    let facts = facts(n, k)?;
    let char_p = spectral::char_poly(n, k)?;
    let min_p = spectral::min_poly(n, k)?;
    let aut = aut::aut_order(n, k)?;
    let cert = canon::certificate(n, k)?;

    let components = facts
        .cycles
        .by_length
        .iter()
        .map(|&(r, m)| ComponentClass {
            cycle_length: r,
            size: r * split.w,
            count: m,
        })
        .collect();
    let indegree_zero_per_level = if facts.trees.h0 >= 2 {
        (1..facts.trees.h0)
            .map(|m| indegree_zero_in_level(n, k, m))
            .collect::<Result<Vec<u64>>>()?
    } else {
        Vec::new()
    };

    Ok(AnalysisReport {
        n: split.n,
        k: split.k,
        t: split.t,
        w: split.w,
        h0: facts.trees.h0,
        longest_cycle: facts.cycles.longest,
        total_cycles: facts.cycles.total_cycles,
        cycle_classes: facts
            .cycles
            .per_order
            .iter()
            .map(|c| CycleClass {
                order: c.order,
                length: c.length,
                count: c.count,
            })
            .collect(),
        cycles_by_length: facts.cycles.by_length.clone(),
        components,
        tree_levels: facts.trees.per_tree_levels.clone(),
        total_levels: facts.trees.total_levels.clone(),
        indegree_zero: facts.indegree_zero,
        indegree_zero_per_level,
        predicates: PredicateReport {
            connected: facts.predicates.connected,
            regular: facts.predicates.regular,
            arc_transitive: facts.predicates.arc_transitive,
            vertex_transitive: facts.predicates.vertex_transitive,
            generators_indegree_zero: facts.predicates.generators_indegree_zero,
        },
        char_poly: poly_report(&char_p),
        min_poly: poly_report(&min_p),
        automorphisms: AutSummary {
            tree_aut_order: aut.tree_aut_order.to_string(),
            total_order: aut.total_order.to_string(),
            structure: aut.structure.clone(),
            classes: aut
                .per_class
                .iter()
                .map(|c| AutClassReport {
                    cycle_length: c.cycle_length,
                    multiplicity: c.multiplicity,
                    component_order: c.component_order.to_string(),
                })
                .collect(),
        },
        certificate: cert.to_string(),
    })
}

/// Plain-text table of the report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let yn = |b: bool| if b { "yes" } else { "no" };
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("G({}, {})", r.n, r.k));
    push(
        &mut out,
        format!("  n = {}  k = {}  t = {}  w = {}", r.n, r.k, r.t, r.w),
    );
    push(
        &mut out,
        format!(
            "  connected: {}  regular: {}  vertex-transitive: {}  generators indegree 0: {}",
            yn(r.predicates.connected),
            yn(r.predicates.regular),
            yn(r.predicates.vertex_transitive),
            yn(r.predicates.generators_indegree_zero)
        ),
    );
    push(
        &mut out,
        format!("  indegree-0 vertices: {}", r.indegree_zero),
    );
    push(
        &mut out,
        format!(
            "  cycles: {} total, longest length {}",
            r.total_cycles, r.longest_cycle
        ),
    );
    for c in &r.cycle_classes {
        push(
            &mut out,
            format!(
                "    vertex order {:>4}: {} cycle(s) of length {}",
                c.order, c.count, c.length
            ),
        );
    }
    let comps: Vec<String> = r
        .components
        .iter()
        .map(|c| format!("{} x (cycle {}, size {})", c.count, c.cycle_length, c.size))
        .collect();
    push(&mut out, format!("  components: {}", comps.join(", ")));
    push(&mut out, format!("  tree height h0 = {}", r.h0));
    push(&mut out, format!("  tree levels:  {:?}", r.tree_levels));
    push(&mut out, format!("  graph levels: {:?}", r.total_levels));
    if !r.indegree_zero_per_level.is_empty() {
        push(
            &mut out,
            format!(
                "  indegree-0 per tree in levels 1..{}: {:?}",
                r.h0 - 1,
                r.indegree_zero_per_level
            ),
        );
    }
    push(
        &mut out,
        format!("  characteristic polynomial: {}", r.char_poly.factored),
    );
    push(
        &mut out,
        format!("  minimal polynomial:        {}", r.min_poly.factored),
    );
    push(
        &mut out,
        format!(
            "  |Aut| = {}  ({}, |Aut(T1)| = {})",
            r.automorphisms.total_order, r.automorphisms.structure, r.automorphisms.tree_aut_order
        ),
    );
    push(&mut out, format!("  certificate: {}", r.certificate));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g28_report() {
        let r = analyze(28, 2).unwrap();
        assert_eq!((r.t, r.w, r.h0), (7, 4, 2));
        assert_eq!(r.total_cycles, 3);
        assert_eq!(r.cycles_by_length, vec![(1, 1), (3, 2)]);
        assert_eq!(r.tree_levels, vec![1, 1, 2]);
        assert_eq!(r.indegree_zero, 14);
        assert_eq!(r.automorphisms.total_order, "2304");
        assert_eq!(
            r.components,
            vec![
                ComponentClass {
                    cycle_length: 1,
                    size: 4,
                    count: 1
                },
                ComponentClass {
                    cycle_length: 3,
                    size: 12,
                    count: 2
                },
            ]
        );
        let text = render_text(&r);
        assert!(text.contains("|Aut| = 2304"));
        assert!(text.contains("x^21 * (x - 1) * (x^3 - 1)^2"));
    }

    #[test]
    fn closing_example_report() {
        let r = analyze(10, 2).unwrap();
        assert_eq!(r.total_cycles, 2);
        assert_eq!(r.cycles_by_length, vec![(1, 1), (4, 1)]);
    }

    #[test]
    fn symmetric_group_case() {
        let r = analyze(5, 1).unwrap();
        assert_eq!(r.total_cycles, 5);
        assert_eq!(r.automorphisms.total_order, "120");
    }
}
