//! Closed-form structure theory of `G(n, k)`: cycle counts, tree level
//! sizes, vertex heights, indegree counts and graph-class predicates,
//! all computed from `n` and `k` alone, without building the graph.

use crate::numtheory::{
    self, coprime_split, divisors, euler_phi, gcd, gcd_pow_minus_one, min_pow_divides, moebius,
    mult_order, pow_mod, CoprimeSplit,
};
use crate::{Error, Result};

/// Cycles of one vertex order: all cycles whose vertices have order `d`
/// share the length `ord_d k`, and there are `phi(d) / length` of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderClass {
    /// Common order of the cycle vertices; a divisor of `t`.
    pub order: u64,
    /// Cycle length `ord_d k`.
    pub length: u64,
    /// Number of cycles in this class.
    pub count: u64,
}

/// The complete cycle census of `G(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    /// One record per divisor of `t`, ascending by divisor.
    pub per_order: Vec<OrderClass>,
    /// Aggregation of `per_order` by length: sorted `(length, count)`.
    pub by_length: Vec<(u64, u64)>,
    /// Total number of cycles.
    pub total_cycles: u64,
    /// Longest cycle length, `ord_t k`.
    pub longest: u64,
}

/// Tree height and level sizes, shared by every tree of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeProfile {
    /// Common height of all trees: least `h` with `w | k^h`.
    pub h0: u64,
    /// `|T_c^m|` for `m = 0..=h0`; starts at 1, sums to `w`.
    pub per_tree_levels: Vec<u64>,
    /// `|T^m|` for `m = 0..=h0`; `t` times the per-tree sizes.
    pub total_levels: Vec<u64>,
    /// Vertices per tree, `w`.
    pub tree_size: u64,
}

/// Graph-class predicates decided by divisibility alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    /// One component, i.e. `t = 1`.
    pub connected: bool,
    /// Every vertex has indegree 1, i.e. `gcd(n, k) = 1`.
    pub regular: bool,
    /// Only loops, i.e. `n | k - 1`.
    pub arc_transitive: bool,
    /// Same criterion as arc transitivity.
    pub vertex_transitive: bool,
    /// Every generator has indegree 0, i.e. `gcd(n, k) != 1`.
    pub generators_indegree_zero: bool,
}

/// Everything the closed forms say about one `(n, k)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFacts {
    pub split: CoprimeSplit,
    pub cycles: CycleStructure,
    pub trees: TreeProfile,
    pub indegree_zero: u64,
    pub predicates: Predicates,
}

/// Cycle census over the divisors of `t`.
pub fn cycle_structure(n: u64, k: u64) -> Result<CycleStructure> {
    let split = coprime_split(n, k)?;
    let mut per_order = Vec::new();
    let mut total_cycles = 0u64;
    for d in divisors(split.t) {
        let length = mult_order(split.k, d)?;
        let phi = euler_phi(d)?;
        debug_assert_eq!(phi % length, 0);
        let count = phi / length;
        total_cycles += count;
        per_order.push(OrderClass {
            order: d,
            length,
            count,
        });
    }
    let mut by_length: Vec<(u64, u64)> = Vec::new();
    let mut sorted: Vec<(u64, u64)> = per_order.iter().map(|c| (c.length, c.count)).collect();
    sorted.sort_unstable();
    for (len, count) in sorted {
        match by_length.last_mut() {
            Some((l, c)) if *l == len => *c += count,
            _ => by_length.push((len, count)),
        }
    }
    let longest = mult_order(split.k, split.t)?;
    Ok(CycleStructure {
        per_order,
        by_length,
        total_cycles,
        longest,
    })
}

/// Number of cycles of exact length `r`, by Moebius inversion:
/// `(1/r) * sum over d | r of mu(d) * gcd(k^(r/d) - 1, n)`.
pub fn cycles_of_length(n: u64, k: u64, r: u64) -> Result<u64> {
    let k = numtheory::normalize_exponent(n, k)?;
    if r == 0 {
        return Err(Error::Domain("cycle length must be >= 1".into()));
    }
    let mut acc: i128 = 0;
    for d in divisors(r) {
        let mu = moebius(d)? as i128;
        if mu != 0 {
            acc += mu * gcd_pow_minus_one(k, r / d, n) as i128;
        }
    }
    if acc < 0 || acc % r as i128 != 0 {
        return Err(Error::Internal(format!(
            "moebius cycle count not divisible: n={n} k={k} r={r} sum={acc}"
        )));
    }
    Ok((acc / r as i128) as u64)
}

/// Tree height and level sizes from the gcd differences
/// `|T_c^m| = gcd(w, k^m) - gcd(w, k^(m-1))`.
pub fn tree_profile(n: u64, k: u64) -> Result<TreeProfile> {
    let split = coprime_split(n, k)?;
    let (t, w, k) = (split.t, split.w, split.k);
    let h0 = min_pow_divides(w, k).expect("every prime of w divides k");
    let mut per_tree_levels = vec![1u64];
    for m in 1..=h0 {
        let hi = gcd_at_power(w, k, m);
        let lo = gcd_at_power(w, k, m - 1);
        per_tree_levels.push(hi - lo);
    }
    let total_levels: Vec<u64> = per_tree_levels.iter().map(|&s| s * t).collect();
    debug_assert_eq!(per_tree_levels.iter().sum::<u64>(), w);
    debug_assert_eq!(total_levels.iter().sum::<u64>(), n);
    Ok(TreeProfile {
        h0,
        per_tree_levels,
        total_levels,
        tree_size: w,
    })
}

/// `gcd(m, k^e)` without forming `k^e`.
fn gcd_at_power(m: u64, k: u64, e: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    gcd(m, pow_mod(k, e, m))
}

/// Height of vertex `a`: split `ord(a)` with respect to `k` and take
/// the least `h` with the non-coprime part dividing `k^h`.
pub fn vertex_height(n: u64, k: u64, a: u64) -> Result<u64> {
    let (_, w_a) = vertex_order_split(n, k, a)?;
    Ok(min_pow_divides(w_a, numtheory::normalize_exponent(n, k)?)
        .expect("every prime of w_a divides k"))
}

/// Root order and level of vertex `a`: the cycle vertex reached from
/// `a` has order `t_a`, and `a` sits at level `h_a` of its tree.
pub fn level_membership(n: u64, k: u64, a: u64) -> Result<(u64, u64)> {
    let (t_a, w_a) = vertex_order_split(n, k, a)?;
    let m = min_pow_divides(w_a, numtheory::normalize_exponent(n, k)?)
        .expect("every prime of w_a divides k");
    Ok((t_a, m))
}

fn vertex_order_split(n: u64, k: u64, a: u64) -> Result<(u64, u64)> {
    let k = numtheory::normalize_exponent(n, k)?;
    if a >= n {
        return Err(Error::Domain(format!("vertex {a} out of range for n={n}")));
    }
    let ord = n / gcd(n, a);
    Ok(numtheory::split_parts(ord, k))
}

/// `(d-1)/d * n` vertices have indegree 0, where `d = gcd(n, k)`.
pub fn indegree_zero_count_formula(n: u64, k: u64) -> Result<u64> {
    let k = numtheory::normalize_exponent(n, k)?;
    let d = gcd(n, k);
    Ok((d - 1) * (n / d))
}

/// Indegree-0 vertices per tree in level `m`:
/// `|T_c^m| - |T_c^(m+1)| / gcd(k, n)`, for `1 <= m <= h0 - 1`.
pub fn indegree_zero_in_level(n: u64, k: u64, m: u64) -> Result<u64> {
    let profile = tree_profile(n, k)?;
    if profile.h0 < 2 || m == 0 || m > profile.h0 - 1 {
        return Err(Error::Domain(format!(
            "level {m} out of range 1..={} for n={n} k={k}",
            profile.h0.saturating_sub(1)
        )));
    }
    let k = numtheory::normalize_exponent(n, k)?;
    let d = gcd(n, k);
    let here = profile.per_tree_levels[m as usize];
    let above = profile.per_tree_levels[m as usize + 1];
    debug_assert_eq!(above % d, 0);
    Ok(here - above / d)
}

/// Connectivity, regularity, transitivity and the generator-indegree
/// criterion, each decided by a divisibility test.
pub fn predicates(n: u64, k: u64) -> Result<Predicates> {
    let split = coprime_split(n, k)?;
    let transitive = (split.k - 1) % n == 0;
    Ok(Predicates {
        connected: split.t == 1,
        regular: gcd(n, split.k) == 1,
        arc_transitive: transitive,
        vertex_transitive: transitive,
        generators_indegree_zero: gcd(n, split.k) != 1,
    })
}

/// Longest cycle length, `ord_t k`.
pub fn longest_cycle_length(n: u64, k: u64) -> Result<u64> {
    let split = coprime_split(n, k)?;
    mult_order(split.k, split.t)
}

/// In a cyclic group of order `m`, the number of elements of order `r1`
/// that are `(r1/r)`-th roots of any fixed element of order `r`:
/// `phi(r1) / phi(r)`, independent of the chosen element.
pub fn count_order_preimages(r: u64, r1: u64, m: u64) -> Result<u64> {
    if r == 0 || r1 == 0 || m == 0 || r1 % r != 0 || m % r1 != 0 {
        return Err(Error::Domain(format!(
            "need r | r1 | m, got r={r}, r1={r1}, m={m}"
        )));
    }
    let phi_r1 = euler_phi(r1)?;
    let phi_r = euler_phi(r)?;
    debug_assert_eq!(phi_r1 % phi_r, 0);
    Ok(phi_r1 / phi_r)
}

/// Assemble every closed form for one `(n, k)` pair.
pub fn facts(n: u64, k: u64) -> Result<GraphFacts> {
    Ok(GraphFacts {
        split: coprime_split(n, k)?,
        cycles: cycle_structure(n, k)?,
        trees: tree_profile(n, k)?,
        indegree_zero: indegree_zero_count_formula(n, k)?,
        predicates: predicates(n, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{brute_cycle_length_multiset, brute_level_sizes, PowerDigraph};

    #[test]
    fn cycle_census_examples() {
        let c = cycle_structure(28, 2).unwrap();
        assert_eq!(
            c.per_order,
            vec![
                OrderClass {
                    order: 1,
                    length: 1,
                    count: 1
                },
                OrderClass {
                    order: 7,
                    length: 3,
                    count: 2
                },
            ]
        );
        assert_eq!(c.by_length, vec![(1, 1), (3, 2)]);
        assert_eq!(c.total_cycles, 3);
        assert_eq!(c.longest, 3);

        let c = cycle_structure(10, 2).unwrap();
        assert_eq!(c.by_length, vec![(1, 1), (4, 1)]);
        assert_eq!(c.total_cycles, 2);

        let c = cycle_structure(12, 1).unwrap();
        assert_eq!(c.total_cycles, 12);
        for class in &c.per_order {
            assert_eq!(class.length, 1);
            assert_eq!(class.count, euler_phi(class.order).unwrap());
        }
    }

    #[test]
    fn moebius_cycle_counts() {
        assert_eq!(cycles_of_length(28, 2, 3).unwrap(), 2);
        assert_eq!(cycles_of_length(28, 2, 1).unwrap(), 1);
        assert_eq!(cycles_of_length(28, 2, 2).unwrap(), 0);
    }

    #[test]
    fn tree_profiles() {
        let p = tree_profile(28, 2).unwrap();
        assert_eq!(p.h0, 2);
        assert_eq!(p.per_tree_levels, vec![1, 1, 2]);
        assert_eq!(p.total_levels, vec![7, 7, 14]);

        let p = tree_profile(40, 4).unwrap();
        assert_eq!(p.h0, 2);
        assert_eq!(p.per_tree_levels, vec![1, 3, 4]);

        let p = tree_profile(9, 1).unwrap();
        assert_eq!(p.h0, 0);
        assert_eq!(p.per_tree_levels, vec![1]);
    }

    #[test]
    fn vertex_heights() {
        assert_eq!(vertex_height(28, 2, 0).unwrap(), 0);
        assert_eq!(vertex_height(28, 2, 1).unwrap(), 2);
        assert_eq!(vertex_height(40, 4, 5).unwrap(), 2);
    }

    #[test]
    fn level_membership_examples() {
        assert_eq!(level_membership(28, 2, 14).unwrap(), (1, 1));
        assert_eq!(level_membership(28, 2, 0).unwrap(), (1, 0));
        assert_eq!(level_membership(28, 2, 2).unwrap(), (7, 1));
    }

    #[test]
    fn indegree_formulas() {
        assert_eq!(indegree_zero_count_formula(28, 2).unwrap(), 14);
        assert_eq!(indegree_zero_count_formula(9, 1).unwrap(), 0);
        assert_eq!(indegree_zero_count_formula(6, 6).unwrap(), 5);

        assert_eq!(indegree_zero_in_level(28, 2, 1).unwrap(), 0);
        assert_eq!(indegree_zero_in_level(16, 2, 1).unwrap(), 0);
        assert_eq!(indegree_zero_in_level(40, 4, 1).unwrap(), 2);
        assert!(indegree_zero_in_level(28, 2, 2).is_err());
        assert!(indegree_zero_in_level(10, 2, 1).is_err());
    }

    #[test]
    fn predicate_examples() {
        assert!(predicates(8, 2).unwrap().connected);
        let p = predicates(28, 2).unwrap();
        assert!(!p.connected && !p.regular && p.generators_indegree_zero);
        let p = predicates(9, 1).unwrap();
        assert!(p.regular && p.arc_transitive && p.vertex_transitive);
        // k = 10 normalizes to 1 mod 9: transitive.
        assert!(predicates(9, 10).unwrap().vertex_transitive);
    }

    #[test]
    fn longest_cycle_examples() {
        assert_eq!(longest_cycle_length(28, 2).unwrap(), 3);
        assert_eq!(longest_cycle_length(10, 2).unwrap(), 4);
        assert_eq!(longest_cycle_length(9, 1).unwrap(), 1);
    }

    #[test]
    fn order_preimage_counts() {
        assert_eq!(count_order_preimages(2, 8, 8).unwrap(), 4);
        assert_eq!(count_order_preimages(6, 6, 12).unwrap(), 1);
        assert_eq!(count_order_preimages(1, 5, 10).unwrap(), 4);
        assert!(count_order_preimages(3, 5, 15).is_err());
    }

    #[test]
    fn census_matches_brute_force_small() {
        for n in 2..=60u64 {
            for k in 1..=n {
                let g = PowerDigraph::build(n, k).unwrap();
                let c = cycle_structure(n, k).unwrap();
                assert_eq!(
                    c.by_length,
                    brute_cycle_length_multiset(&g),
                    "census mismatch at n={n} k={k}"
                );
                let p = tree_profile(n, k).unwrap();
                let (total, at_zero) = brute_level_sizes(&g);
                assert_eq!(p.total_levels, total, "levels mismatch at n={n} k={k}");
                assert_eq!(
                    p.per_tree_levels, at_zero,
                    "tree levels mismatch at n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn lcm_identity_and_gcd_counterexample() {
        // ord_[d,r] k = [ord_d k, ord_r k] on divisors of t; the gcd
        // analogue fails at k=2 with d=11, r=15.
        let ell = |d: u64| mult_order(2, d).unwrap();
        assert_eq!(
            ell(numtheory::lcm(11, 15)),
            numtheory::lcm(ell(11), ell(15))
        );
        assert_eq!(ell(gcd(11, 15)), 1);
        assert_eq!(gcd(ell(11), ell(15)), 2);
        assert_ne!(ell(gcd(11, 15)), gcd(ell(11), ell(15)));
    }
}
