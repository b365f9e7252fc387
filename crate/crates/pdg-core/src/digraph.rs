//! The explicit functional digraph and the model-level brute-force
//! oracle: cycles, trees, heights, indegrees, and components computed
//! directly from the successor table with no closed-form theory.
//!
//! The abstract multiplicative group is realized additively: labels are
//! `0..n-1`, the identity is 0, `x^k` becomes `k*a mod n`, and the
//! order of a label is `n / gcd(n, a)`.

use crate::numtheory::{self, gcd};
use crate::{Error, Result};

/// The digraph on `0..n-1` with the single edge `a -> k*a mod n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerDigraph {
    n: u64,
    k: u64,
    succ: Vec<u64>,
}

/// One weakly connected component: a cycle plus the trees hanging on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Length of the unique cycle.
    pub cycle_length: u64,
    /// Total vertex count of the component.
    pub size: u64,
    /// Cycle vertices in successor order, starting at the representative.
    pub cycle_vertices: Vec<u64>,
    /// Smallest cycle vertex of the component.
    pub representative: u64,
}

/// Per-vertex cycle membership, heights, roots and components, found by
/// indegree peeling and reverse breadth-first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// True exactly for vertices lying on a cycle.
    pub cycle_flag: Vec<bool>,
    /// Steps to reach a cycle vertex; 0 on the cycle itself.
    pub height: Vec<u64>,
    /// The cycle vertex reached after `height` steps.
    pub root: Vec<u64>,
    /// Index into `components` per vertex.
    pub component_id: Vec<usize>,
    /// Components ordered by ascending representative.
    pub components: Vec<ComponentSummary>,
}

impl PowerDigraph {
    /// Build the successor table for `G(n, k)`. The exponent is
    /// normalized into `1..=n`.
    pub fn build(n: u64, k: u64) -> Result<PowerDigraph> {
        let k = numtheory::normalize_exponent(n, k)?;
        let succ = (0..n)
            .map(|a| (k as u128 * a as u128 % n as u128) as u64)
            .collect();
        Ok(PowerDigraph { n, k, succ })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The exponent, normalized into `1..=n`.
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn succ(&self, a: u64) -> u64 {
        self.succ[a as usize]
    }

    pub fn succ_table(&self) -> &[u64] {
        &self.succ
    }

    fn check_vertex(&self, a: u64) -> Result<()> {
        if a >= self.n {
            return Err(Error::Domain(format!(
                "vertex {a} out of range for n={}",
                self.n
            )));
        }
        Ok(())
    }

    /// Order of the group element labeled `a`: `n / gcd(n, a)`.
    pub fn vertex_order(&self, a: u64) -> Result<u64> {
        self.check_vertex(a)?;
        Ok(self.n / gcd(self.n, a))
    }

    /// All solutions of `k*x = a (mod n)`, by solving the linear
    /// congruence. Nonempty iff `gcd(n, k)` divides `a`, in which case
    /// there are exactly `gcd(n, k)` solutions.
    pub fn preimages(&self, a: u64) -> Result<Vec<u64>> {
        self.check_vertex(a)?;
        let (n, k) = (self.n, self.k);
        let d = gcd(k, n);
        if a % d != 0 {
            return Ok(Vec::new());
        }
        let n1 = n / d;
        let x0 = if n1 == 1 {
            0
        } else {
            let inv = mod_inverse(k / d % n1, n1);
            (a / d % n1) as u128 * inv as u128 % n1 as u128
        } as u64;
        let mut sols: Vec<u64> = (0..d).map(|i| x0 + i * n1).collect();
        sols.sort_unstable();
        Ok(sols)
    }

    /// Count vertices with no incoming edge, by scanning the table.
    pub fn indegree_zero_count(&self) -> u64 {
        self.indegrees().iter().filter(|&&d| d == 0).count() as u64
    }

    /// Indegree of every vertex.
    pub fn indegrees(&self) -> Vec<u64> {
        let mut indeg = vec![0u64; self.n as usize];
        for &b in &self.succ {
            indeg[b as usize] += 1;
        }
        indeg
    }

    /// Cycle/tree decomposition by indegree peeling: repeatedly strip
    /// indegree-0 vertices; survivors are exactly the cycle vertices.
    /// Heights come from a breadth-first pass along reversed edges.
    pub fn decompose(&self) -> Decomposition {
        let n = self.n as usize;
        let mut indeg = self.indegrees();
        let mut queue: Vec<usize> = (0..n).filter(|&a| indeg[a] == 0).collect();
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            let b = self.succ[a] as usize;
            indeg[b] -= 1;
            if indeg[b] == 0 {
                queue.push(b);
            }
        }
        let cycle_flag: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();

        // Tree edges reversed: children of v are its non-cycle preimages.
        let mut children: Vec<Vec<u64>> = vec![Vec::new(); n];
        for a in 0..n {
            if !cycle_flag[a] {
                children[self.succ[a] as usize].push(a as u64);
            }
        }

        let mut height = vec![0u64; n];
        let mut root = vec![0u64; n];
        let mut component_id = vec![usize::MAX; n];
        let mut components = Vec::new();

        for start in 0..n {
            if !cycle_flag[start] || component_id[start] != usize::MAX {
                continue;
            }
            // `start` is the smallest vertex of an unvisited cycle.
            let comp = components.len();
            let mut cycle_vertices = Vec::new();
            let mut v = start;
            loop {
                cycle_vertices.push(v as u64);
                component_id[v] = comp;
                root[v] = v as u64;
                v = self.succ[v] as usize;
                if v == start {
                    break;
                }
            }
            let mut size = 0u64;
            let mut bfs: Vec<u64> = cycle_vertices.clone();
            let mut head = 0;
            while head < bfs.len() {
                let v = bfs[head] as usize;
                head += 1;
                size += 1;
                for &c in &children[v] {
                    let c_us = c as usize;
                    height[c_us] = height[v] + 1;
                    root[c_us] = if cycle_flag[v] { v as u64 } else { root[v] };
                    component_id[c_us] = comp;
                    bfs.push(c);
                }
            }
            components.push(ComponentSummary {
                cycle_length: cycle_vertices.len() as u64,
                size,
                representative: start as u64,
                cycle_vertices,
            });
        }

        Decomposition {
            cycle_flag,
            height,
            root,
            component_id,
            components,
        }
    }
}

impl Decomposition {
    /// Children of `v` along reversed tree edges (cycle preimage of a
    /// cycle vertex excluded).
    pub fn tree_children(&self, g: &PowerDigraph) -> Vec<Vec<u64>> {
        let mut children: Vec<Vec<u64>> = vec![Vec::new(); g.n() as usize];
        for a in 0..g.n() {
            if !self.cycle_flag[a as usize] {
                children[g.succ(a) as usize].push(a);
            }
        }
        children
    }

    /// Cycle lengths grouped into a sorted `(length, count)` multiset.
    pub fn cycle_length_multiset(&self) -> Vec<(u64, u64)> {
        let mut lengths: Vec<u64> = self.components.iter().map(|c| c.cycle_length).collect();
        lengths.sort_unstable();
        let mut out: Vec<(u64, u64)> = Vec::new();
        for len in lengths {
            match out.last_mut() {
                Some((l, c)) if *l == len => *c += 1,
                _ => out.push((len, 1)),
            }
        }
        out
    }

    /// `|T^m|` for `m = 0..=max height`, over the whole graph.
    pub fn level_sizes(&self) -> Vec<u64> {
        let h_max = self.height.iter().copied().max().unwrap_or(0);
        let mut levels = vec![0u64; h_max as usize + 1];
        for &h in &self.height {
            levels[h as usize] += 1;
        }
        levels
    }

    /// Level sizes of the tree hanging at the cycle vertex `root`
    /// (index 0 counts the root itself).
    pub fn tree_level_sizes(&self, root: u64) -> Result<Vec<u64>> {
        if !self.cycle_flag[root as usize] {
            return Err(Error::Domain(format!("{root} is not a cycle vertex")));
        }
        let mut levels = Vec::new();
        for (a, &r) in self.root.iter().enumerate() {
            if r == root {
                let h = self.height[a] as usize;
                if levels.len() <= h {
                    levels.resize(h + 1, 0u64);
                }
                levels[h] += 1;
            }
        }
        Ok(levels)
    }
}

/// Brute-force cycle length multiset of `G(n, k)`.
pub fn brute_cycle_length_multiset(g: &PowerDigraph) -> Vec<(u64, u64)> {
    g.decompose().cycle_length_multiset()
}

/// Brute-force level sizes: whole-graph `|T^m|` and the tree at vertex 0.
pub fn brute_level_sizes(g: &PowerDigraph) -> (Vec<u64>, Vec<u64>) {
    let d = g.decompose();
    let total = d.level_sizes();
    let at_zero = d.tree_level_sizes(0).expect("0 is always a cycle vertex");
    (total, at_zero)
}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`, by extended Euclid.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "mod_inverse requires coprime arguments");
    old_s.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_basics() {
        let g = PowerDigraph::build(28, 2).unwrap();
        assert_eq!(g.succ(3), 6);
        assert_eq!(g.succ(14), 0);
        assert_eq!(g.succ(0), 0);
        let g = PowerDigraph::build(6, 6).unwrap();
        assert!((0..6).all(|a| g.succ(a) == 0));
        assert!(PowerDigraph::build(1, 1).is_err());
    }

    #[test]
    fn vertex_orders() {
        let g = PowerDigraph::build(28, 2).unwrap();
        assert_eq!(g.vertex_order(0).unwrap(), 1);
        assert_eq!(g.vertex_order(4).unwrap(), 7);
        assert_eq!(g.vertex_order(1).unwrap(), 28);
        assert!(g.vertex_order(28).is_err());
    }

    #[test]
    fn preimage_solver() {
        let g = PowerDigraph::build(28, 2).unwrap();
        assert_eq!(g.preimages(0).unwrap(), vec![0, 14]);
        assert_eq!(g.preimages(1).unwrap(), Vec::<u64>::new());
        let g = PowerDigraph::build(9, 1).unwrap();
        for a in 0..9 {
            assert_eq!(g.preimages(a).unwrap(), vec![a]);
        }
    }

    #[test]
    fn preimage_solver_matches_scan() {
        for n in 2..=60u64 {
            for k in 1..=n {
                let g = PowerDigraph::build(n, k).unwrap();
                for a in 0..n {
                    let scan: Vec<u64> = (0..n).filter(|&x| g.succ(x) == a).collect();
                    assert_eq!(g.preimages(a).unwrap(), scan, "n={n} k={k} a={a}");
                }
            }
        }
    }

    #[test]
    fn decompose_g28() {
        let g = PowerDigraph::build(28, 2).unwrap();
        let d = g.decompose();
        assert_eq!(d.components.len(), 3);
        let mut sizes: Vec<u64> = d.components.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 12, 12]);
        assert_eq!(d.cycle_length_multiset(), vec![(1, 1), (3, 2)]);
        assert_eq!(g.indegree_zero_count(), 14);
        assert_eq!(d.tree_level_sizes(0).unwrap(), vec![1, 1, 2]);
        assert_eq!(d.level_sizes(), vec![7, 7, 14]);
    }

    #[test]
    fn decompose_identity_map() {
        let g = PowerDigraph::build(9, 1).unwrap();
        let d = g.decompose();
        assert_eq!(d.components.len(), 9);
        assert_eq!(d.cycle_length_multiset(), vec![(1, 9)]);
        assert_eq!(g.indegree_zero_count(), 0);
        assert_eq!(d.level_sizes(), vec![9]);
    }

    #[test]
    fn decompose_connected_case() {
        // 8 divides 2^3, so G(8,2) is a single component.
        let g = PowerDigraph::build(8, 2).unwrap();
        let d = g.decompose();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].size, 8);
    }

    #[test]
    fn collapse_map_indegrees() {
        let g = PowerDigraph::build(6, 6).unwrap();
        assert_eq!(g.indegree_zero_count(), 5);
    }

    #[test]
    fn g40_tree_levels() {
        let g = PowerDigraph::build(40, 4).unwrap();
        let (_, at_zero) = brute_level_sizes(&g);
        assert_eq!(at_zero, vec![1, 3, 4]);
    }

    #[test]
    fn heights_step_down_along_edges() {
        for n in 2..=40u64 {
            for k in 1..=n {
                let g = PowerDigraph::build(n, k).unwrap();
                let d = g.decompose();
                for a in 0..n as usize {
                    let b = g.succ(a as u64) as usize;
                    assert_eq!(d.height[b], d.height[a].saturating_sub(1));
                    assert!(d.cycle_flag[d.root[a] as usize]);
                    assert_eq!(d.cycle_flag[a], d.height[a] == 0);
                }
            }
        }
    }
}
