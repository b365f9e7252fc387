//! Automorphism group orders and orbit structure: canonical
//! rooted-tree codes, the product formula for tree automorphism
//! counts, the wreath-product assembly over components, the prime-k
//! recursion, and brute-force counters used as ground truth.
//!
//! Group elements are never materialized; only orders, orbit
//! invariants and structure strings are computed.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::digraph::{Decomposition, PowerDigraph};
use crate::numtheory::{self, big_factorial, big_pow, gcd, is_prime, BigCount};
use crate::structure::{cycle_structure, tree_profile};
use crate::{Error, Result};

/// Canonical parenthesis code of a rooted tree: a leaf is `()`, an
/// internal node wraps the sorted concatenation of its child codes.
/// Two rooted trees are isomorphic iff their codes are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCode(String);

impl TreeCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Vertices of the encoded tree (half the code length).
    pub fn vertex_count(&self) -> u64 {
        (self.0.len() / 2) as u64
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One isomorphism class of components in the wreath decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutClass {
    pub cycle_length: u64,
    pub multiplicity: u64,
    /// `|Aut(T_1)|^r * r` for a single component with cycle length `r`.
    pub component_order: BigCount,
}

/// Automorphism group order of `G(n, k)` with its wreath structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutReport {
    /// `|Aut(T_1)|`, identical for every tree of the graph.
    pub tree_aut_order: BigCount,
    pub per_class: Vec<AutClass>,
    /// `prod component_order^multiplicity * multiplicity!`.
    pub total_order: BigCount,
    /// Human-readable wreath expression.
    pub structure: String,
}

/// Per-vertex canonical code and automorphism order of the subtree
/// hanging at each vertex (for a cycle vertex: its tree, cycle edge
/// excluded).
#[derive(Debug, Clone)]
pub struct TreeData {
    pub code: Vec<String>,
    pub aut: Vec<BigCount>,
}

/// Bottom-up pass over all vertices, deepest level first. Children
/// codes are sorted lexicographically; the automorphism order of a
/// vertex multiplies the child orders and the factorial of each group
/// of equal child codes.
pub fn tree_data(g: &PowerDigraph, decomp: &Decomposition) -> TreeData {
    let n = g.n() as usize;
    let children = decomp.tree_children(g);
    let mut by_height: Vec<u64> = (0..n as u64).collect();
    by_height.sort_unstable_by_key(|&v| std::cmp::Reverse(decomp.height[v as usize]));

    let mut code: Vec<String> = vec![String::new(); n];
    let mut aut: Vec<BigCount> = vec![BigCount::one(); n];
    for &v in &by_height {
        let v = v as usize;
        let mut kid_codes: Vec<&str> = children[v]
            .iter()
            .map(|&c| code[c as usize].as_str())
            .collect();
        kid_codes.sort_unstable();
        let mut s = String::with_capacity(2 + kid_codes.iter().map(|c| c.len()).sum::<usize>());
        s.push('(');
        let mut run = 0u64;
        for (i, kc) in kid_codes.iter().enumerate() {
            s.push_str(kc);
            run += 1;
            if i + 1 == kid_codes.len() || kid_codes[i + 1] != *kc {
                if run > 1 {
                    aut[v] = &aut[v] * big_factorial(run);
                }
                run = 0;
            }
        }
        s.push(')');
        for &c in &children[v] {
            aut[v] = &aut[v] * &aut[c as usize];
        }
        code[v] = s;
    }
    TreeData { code, aut }
}

/// Canonical code of the tree hanging at a cycle vertex.
pub fn tree_code(g: &PowerDigraph, root: u64) -> Result<TreeCode> {
    let decomp = g.decompose();
    if !decomp.cycle_flag[root as usize] {
        return Err(Error::Domain(format!("{root} is not a cycle vertex")));
    }
    let data = tree_data(g, &decomp);
    Ok(TreeCode(data.code[root as usize].clone()))
}

/// `|Aut|` of the tree hanging at a cycle vertex.
pub fn tree_aut_order(g: &PowerDigraph, root: u64) -> Result<BigCount> {
    let decomp = g.decompose();
    if !decomp.cycle_flag[root as usize] {
        return Err(Error::Domain(format!("{root} is not a cycle vertex")));
    }
    let data = tree_data(g, &decomp);
    Ok(data.aut[root as usize].clone())
}

/// Assemble `|Aut(G(n, k))|` from the tree order and the cycle census:
/// each component with cycle length `r` contributes
/// `|Aut(T_1)|^r * r`, and `m` isomorphic components contribute the
/// `m`-th symmetric group on top.
pub fn aut_order(n: u64, k: u64) -> Result<AutReport> {
    let g = PowerDigraph::build(n, k)?;
    let decomp = g.decompose();
    let data = tree_data(&g, &decomp);
    // The tree code is the same at every cycle vertex; the identity's
    // tree stands in for all of them.
    for comp in &decomp.components {
        for &c in &comp.cycle_vertices {
            if data.code[c as usize] != data.code[0] {
                return Err(Error::Internal(format!(
                    "tree code differs between roots 0 and {c} for n={n} k={k}"
                )));
            }
        }
    }
    let tree_aut = data.aut[0].clone();
    let census = cycle_structure(n, k)?;
    let mut per_class = Vec::new();
    let mut total = BigCount::one();
    let mut parts = Vec::new();
    for &(r, m) in &census.by_length {
        let component_order = big_pow(&tree_aut, r) * BigCount::from(r);
        total *= big_pow(&component_order, m) * big_factorial(m);
        let base = format!("(Aut(T1) wr C{r})");
        parts.push(if m == 1 {
            base
        } else {
            format!("({base} wr S{m})")
        });
        per_class.push(AutClass {
            cycle_length: r,
            multiplicity: m,
            component_order,
        });
    }
    Ok(AutReport {
        tree_aut_order: tree_aut,
        per_class,
        total_order: total,
        structure: parts.join(" x "),
    })
}

/// `|Aut(T_1)|` for prime `k` dividing `n`, by the level recursion:
/// the subtree at the top level is a point, one level down each
/// subtree is `k` copies of the level above (`wr S_k`), and the root
/// carries `k - 1` copies.
pub fn prime_k_tree_aut_order(n: u64, k: u64) -> Result<BigCount> {
    let k = numtheory::normalize_exponent(n, k)?;
    if !is_prime(k) || gcd(n, k) != k {
        return Err(Error::Domain(format!(
            "prime-k recursion needs prime k dividing n, got n={n} k={k}"
        )));
    }
    let h0 = tree_profile(n, k)?.h0;
    debug_assert!(h0 >= 1);
    let mut level = BigCount::one();
    for _ in 1..h0 {
        level = big_pow(&level, k) * big_factorial(k);
    }
    Ok(big_pow(&level, k - 1) * big_factorial(k - 1))
}

/// How a brute-force automorphism count should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteMode {
    /// Test every one of the `n!` permutations. Default cap 8.
    Exhaustive,
    /// Extend partial maps consistent with the successor table,
    /// pruning on heights, indegrees and subtree codes. Default cap
    /// 60; runtime grows with the count itself.
    Backtracking,
}

pub const EXHAUSTIVE_CAP_DEFAULT: u64 = 8;
pub const BACKTRACKING_CAP_DEFAULT: u64 = 60;

/// Ground-truth `|Aut|`: the number of bijections commuting with the
/// successor map.
pub fn brute_aut_count(g: &PowerDigraph, mode: BruteMode, cap: u64) -> Result<BigCount> {
    match mode {
        BruteMode::Exhaustive => {
            let perms = exhaustive_automorphisms(g, cap)?;
            Ok(BigCount::from(perms.len()))
        }
        BruteMode::Backtracking => {
            if g.n() > cap {
                return Err(Error::CapExceeded(format!(
                    "backtracking counter capped at n={cap}, got n={}",
                    g.n()
                )));
            }
            let (count, _) = isomorphism_search(g, g, true);
            Ok(count)
        }
    }
}

/// Every automorphism, by filtering all `n!` permutations.
pub fn exhaustive_automorphisms(g: &PowerDigraph, cap: u64) -> Result<Vec<Vec<u64>>> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "exhaustive enumeration capped at n={cap}, got n={n}"
        )));
    }
    let mut out = Vec::new();
    let mut perm: Vec<u64> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        if (0..n).all(|a| p[g.succ(a) as usize] == g.succ(p[a as usize])) {
            out.push(p.to_vec());
        }
    });
    Ok(out)
}

fn permute(items: &mut [u64], start: usize, visit: &mut impl FnMut(&[u64])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Vertex signature constant on automorphism orbits: component cycle
/// length, height, canonical code of the subtree below the vertex,
/// and the sequence of hanging-tree codes read around the cycle
/// starting from the vertex's root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitInvariant {
    pub cycle_length: u64,
    pub height: u64,
    pub subtree_code: String,
    pub root_position_class: String,
}

/// Orbit invariant of a single vertex.
pub fn orbit_invariant(n: u64, k: u64, a: u64) -> Result<OrbitInvariant> {
    let g = PowerDigraph::build(n, k)?;
    if a >= n {
        return Err(Error::Domain(format!("vertex {a} out of range for n={n}")));
    }
    let decomp = g.decompose();
    let data = tree_data(&g, &decomp);
    Ok(orbit_invariants(&g, &decomp, &data).swap_remove(a as usize))
}

/// Orbit invariants for every vertex at once.
pub fn orbit_invariants(
    g: &PowerDigraph,
    decomp: &Decomposition,
    data: &TreeData,
) -> Vec<OrbitInvariant> {
    let n = g.n() as usize;
    // Rotation of hanging-tree codes starting at each cycle vertex.
    let mut rotation: HashMap<u64, String> = HashMap::new();
    for comp in &decomp.components {
        let cyc = &comp.cycle_vertices;
        for start in 0..cyc.len() {
            let mut s = String::new();
            for i in 0..cyc.len() {
                s.push_str(&data.code[cyc[(start + i) % cyc.len()] as usize]);
            }
            rotation.insert(cyc[start], s);
        }
    }
    (0..n)
        .map(|a| {
            let comp = &decomp.components[decomp.component_id[a]];
            OrbitInvariant {
                cycle_length: comp.cycle_length,
                height: decomp.height[a],
                subtree_code: data.code[a].clone(),
                root_position_class: rotation[&decomp.root[a]].clone(),
            }
        })
        .collect()
}

/// Backtracking search for successor-preserving bijections between two
/// graphs. With `count_all` it enumerates every one (the runtime is
/// proportional to the count); otherwise it stops at the first and
/// returns it.
pub fn isomorphism_search(
    g1: &PowerDigraph,
    g2: &PowerDigraph,
    count_all: bool,
) -> (BigCount, Option<Vec<u64>>) {
    if g1.n() != g2.n() {
        return (BigCount::from(0u32), None);
    }
    let n = g1.n() as usize;
    let mut interner: HashMap<(u64, u64, u64, String), u32> = HashMap::new();
    let s1 = SearchSide::build(g1, &mut interner);
    let s2 = SearchSide::build(g2, &mut interner);

    // A bijection preserves the per-vertex keys, so unequal key
    // multisets rule an isomorphism out immediately.
    let mut k1 = s1.key.clone();
    let mut k2 = s2.key.clone();
    k1.sort_unstable();
    k2.sort_unstable();
    if k1 != k2 {
        return (BigCount::from(0u32), None);
    }

    let mut state = SearchState {
        s1: &s1,
        s2: &s2,
        mapping: vec![usize::MAX; n],
        used: vec![false; n],
        count: 0u128,
        big_count: BigCount::from(0u32),
        witness: None,
        count_all,
    };
    state.assign_cycles(0);
    let total = state.big_count + BigCount::from(state.count);
    (
        total,
        state
            .witness
            .map(|w| w.into_iter().map(|v| v as u64).collect()),
    )
}

struct SearchSide {
    succ: Vec<usize>,
    key: Vec<u32>,
    cycles: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    tree_order: Vec<usize>,
    cycle_vertices: Vec<usize>,
}

impl SearchSide {
    fn build(g: &PowerDigraph, interner: &mut HashMap<(u64, u64, u64, String), u32>) -> SearchSide {
        let decomp = g.decompose();
        let data = tree_data(g, &decomp);
        let n = g.n() as usize;
        let indegrees = g.indegrees();
        let key = (0..n)
            .map(|a| {
                let comp = &decomp.components[decomp.component_id[a]];
                let sig = (
                    decomp.height[a],
                    indegrees[a],
                    comp.cycle_length,
                    data.code[a].clone(),
                );
                let next = interner.len() as u32;
                *interner.entry(sig).or_insert(next)
            })
            .collect();
        let cycles = decomp
            .components
            .iter()
            .map(|c| c.cycle_vertices.iter().map(|&v| v as usize).collect())
            .collect();
        let children = decomp
            .tree_children(g)
            .into_iter()
            .map(|list| list.into_iter().map(|v| v as usize).collect())
            .collect();
        let mut tree_order: Vec<usize> = (0..n).filter(|&a| !decomp.cycle_flag[a]).collect();
        tree_order.sort_unstable_by_key(|&a| (decomp.height[a], a));
        let cycle_vertices = (0..n).filter(|&a| decomp.cycle_flag[a]).collect();
        SearchSide {
            succ: g.succ_table().iter().map(|&v| v as usize).collect(),
            key,
            cycles,
            children,
            tree_order,
            cycle_vertices,
        }
    }
}

struct SearchState<'a> {
    s1: &'a SearchSide,
    s2: &'a SearchSide,
    mapping: Vec<usize>,
    used: Vec<bool>,
    count: u128,
    big_count: BigCount,
    witness: Option<Vec<usize>>,
    count_all: bool,
}

impl SearchState<'_> {
    fn done(&self) -> bool {
        !self.count_all && self.witness.is_some()
    }

    /// Map whole cycles one at a time: choosing the image of one cycle
    /// vertex forces the rest of its cycle around the successor chain.
    fn assign_cycles(&mut self, cycle_idx: usize) {
        if self.done() {
            return;
        }
        if cycle_idx == self.s1.cycles.len() {
            self.assign_tree(0);
            return;
        }
        let cycle: &[usize] = &self.s1.cycles[cycle_idx];
        let first = cycle[0];
        for &candidate in &self.s2.cycle_vertices {
            if self.used[candidate] || self.s2.key[candidate] != self.s1.key[first] {
                continue;
            }
            // Walk the cycle; keys include the cycle length, so the
            // image chain closes up automatically.
            let mut images = Vec::with_capacity(cycle.len());
            let mut u = candidate;
            let mut ok = true;
            for &v in cycle {
                if self.used[u] || self.s2.key[u] != self.s1.key[v] {
                    ok = false;
                    break;
                }
                images.push(u);
                u = self.s2.succ[u];
            }
            if !ok {
                continue;
            }
            for (&v, &u) in cycle.iter().zip(&images) {
                self.mapping[v] = u;
                self.used[u] = true;
            }
            self.assign_cycles(cycle_idx + 1);
            for (&v, &u) in cycle.iter().zip(&images) {
                self.mapping[v] = usize::MAX;
                self.used[u] = false;
            }
            if self.done() {
                return;
            }
        }
    }

    /// Tree vertices in ascending height: the parent is always mapped,
    /// so candidates are the unused like-keyed children of its image.
    fn assign_tree(&mut self, idx: usize) {
        if self.done() {
            return;
        }
        if idx == self.s1.tree_order.len() {
            self.count += 1;
            if self.count == u128::MAX {
                self.big_count += BigCount::from(self.count);
                self.count = 0;
            }
            if self.witness.is_none() {
                self.witness = Some(self.mapping.clone());
            }
            return;
        }
        let v = self.s1.tree_order[idx];
        let parent_image = self.mapping[self.s1.succ[v]];
        let candidates: &[usize] = &self.s2.children[parent_image];
        for &u in candidates {
            if self.used[u] || self.s2.key[u] != self.s1.key[v] {
                continue;
            }
            self.mapping[v] = u;
            self.used[u] = true;
            self.assign_tree(idx + 1);
            self.mapping[v] = usize::MAX;
            self.used[u] = false;
            if self.done() {
                return;
            }
        }
    }
}
