//! Deterministic theory-vs-oracle verification harness.
//!
//! Every closed form in the crate is swept against an independent
//! brute-force computation over exhaustive parameter ranges. The
//! report is byte-stable: cells are aggregated in parameter order no
//! matter how they were scheduled.

use std::collections::HashMap;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::aut::{
    self, brute_aut_count, exhaustive_automorphisms, orbit_invariants, prime_k_tree_aut_order,
    tree_data, BruteMode,
};
use crate::canon;
use crate::digraph::PowerDigraph;
use crate::numtheory::{
    big_factorial, big_pow, coprime_split, divisors, euler_phi, gcd, gcd_pow_minus_one, is_prime,
    lcm, min_pow_divides, moebius, mult_order, pow_mod, BigCount,
};
use crate::spectral::{
    canonical_matrix_with, char_poly, min_poly, oracle_char_poly, oracle_min_poly, FactoredPoly,
};
use crate::structure::{
    cycle_structure, cycles_of_length, indegree_zero_count_formula, indegree_zero_in_level,
    predicates, tree_profile, vertex_height,
};

/// Caps and switches of one verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Upper bound of the main `(n, k)` sweeps.
    pub max_n: u64,
    /// Cap for the Berkowitz characteristic polynomial sweep.
    pub max_matrix_n: u64,
    /// Cap for the minimal polynomial annihilation sweep.
    pub max_minpoly_n: u64,
    /// Cap for full `n!` automorphism enumeration.
    pub max_exhaustive_n: u64,
    /// Number of `(n, k)` pairs counted by backtracking.
    pub backtracking_samples: u64,
    /// Stop at the first failure instead of completing the sweep.
    pub fail_fast: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 300,
            max_matrix_n: 64,
            max_minpoly_n: 40,
            max_exhaustive_n: 8,
            backtracking_samples: 50,
            fail_fast: false,
        }
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    /// First few failure messages, in parameter order.
    pub samples: Vec<String>,
}

const SAMPLE_LIMIT: usize = 5;

/// Aggregated outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn cases(&self) -> u64 {
        self.suites.iter().map(|s| s.cases).sum()
    }

    pub fn failures(&self) -> u64 {
        self.suites.iter().map(|s| s.failures).sum()
    }

    pub fn is_success(&self) -> bool {
        self.failures() == 0
    }

    /// Stable plain-text rendering; identical runs render identically.
    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        out.push_str("power digraph verification\n");
        out.push_str(&format!(
            "config: max_n={} max_matrix_n={} max_minpoly_n={} max_exhaustive_n={} backtracking_samples={} fail_fast={}\n",
            c.max_n, c.max_matrix_n, c.max_minpoly_n, c.max_exhaustive_n, c.backtracking_samples, c.fail_fast
        ));
        for s in &self.suites {
            if s.failures == 0 {
                out.push_str(&format!("{}: ok ({} checks)\n", s.name, s.cases));
            } else {
                out.push_str(&format!(
                    "{}: FAIL ({} checks, {} failures)\n",
                    s.name, s.cases, s.failures
                ));
                for msg in &s.samples {
                    out.push_str(&format!("  - {msg}\n"));
                }
            }
        }
        out.push_str(&format!(
            "checks: {}, failures: {}\n",
            self.cases(),
            self.failures()
        ));
        out
    }
}

/// Per-cell tally of checks and failure messages.
#[derive(Debug, Default)]
struct Tally {
    cases: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally::default()
    }

    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !cond {
            self.failures.push(msg());
        }
    }
}

/// Run `cell` over `cells`, in parallel unless fail-fast is requested,
/// and aggregate in the original cell order.
fn run_suite<C, F>(cfg: &VerifyConfig, name: &'static str, cells: Vec<C>, cell: F) -> CheckResult
where
    C: Send + Sync,
    F: Fn(&C) -> Tally + Send + Sync,
{
    let tallies: Vec<Tally> = if cfg.fail_fast {
        let mut out = Vec::new();
        for c in &cells {
            let t = cell(c);
            let failed = !t.failures.is_empty();
            out.push(t);
            if failed {
                break;
            }
        }
        out
    } else {
        cells.par_iter().map(&cell).collect()
    };
    let mut result = CheckResult {
        name,
        cases: 0,
        failures: 0,
        samples: Vec::new(),
    };
    for t in tallies {
        result.cases += t.cases;
        result.failures += t.failures.len() as u64;
        for msg in t.failures {
            if result.samples.len() < SAMPLE_LIMIT {
                result.samples.push(format!("{name}: {msg}"));
            }
        }
    }
    result
}

fn nk_pairs(max_n: u64) -> Vec<(u64, u64)> {
    (2..=max_n)
        .flat_map(|n| (1..=n).map(move |k| (n, k)))
        .collect()
}

/// Run every suite under the given configuration.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let suites: Vec<fn(&VerifyConfig) -> CheckResult> = vec![
        totient_moebius_sums,
        coprime_split_maximality,
        min_pow_and_gcd_pow,
        digraph_invariants,
        indegree_formulas,
        cycle_census,
        moebius_cycle_counts,
        tree_levels,
        vertex_heights,
        tree_code_constancy,
        cycle_length_lattice,
        subgroup_unions,
        order_products,
        level_bounds,
        spectral_char,
        spectral_min,
        aut_exhaustive,
        aut_backtracking,
        aut_closed_forms,
        order_determines_orbit,
        order_preimage_counts,
        prime_iso_criterion_suite,
        iso_bijections,
    ];
    let mut report = VerifyReport {
        config: cfg.clone(),
        suites: Vec::new(),
    };
    for suite in suites {
        if cfg.fail_fast && !report.is_success() {
            break;
        }
        report.suites.push(suite(cfg));
    }
    report
}

pub fn totient_moebius_sums(cfg: &VerifyConfig) -> CheckResult {
    let cells: Vec<u64> = (1..=500).collect();
    run_suite(cfg, "totient-moebius-sums", cells, |&n| {
        let mut t = Tally::new();
        let phi_sum: u64 = divisors(n).iter().map(|&d| euler_phi(d).unwrap()).sum();
        t.check(phi_sum == n, || format!("n={n}: phi divisor sum {phi_sum}"));
        if n > 1 {
            let mu_sum: i32 = divisors(n).iter().map(|&d| moebius(d).unwrap()).sum();
            t.check(mu_sum == 0, || {
                format!("n={n}: moebius divisor sum {mu_sum}")
            });
        }
        t
    })
}

pub fn coprime_split_maximality(cfg: &VerifyConfig) -> CheckResult {
    run_suite(cfg, "coprime-split", nk_pairs(500), |&(n, k)| {
        let mut t = Tally::new();
        let s = coprime_split(n, k).unwrap();
        t.check(
            s.t * s.w == n && gcd(s.t, s.k) == 1 && gcd(s.t, s.w) == 1,
            || format!("n={n} k={k}: split invariants"),
        );
        let maximal = divisors(n).iter().all(|&d| gcd(d, s.k) != 1 || d <= s.t);
        t.check(maximal, || format!("n={n} k={k}: t={} not maximal", s.t));
        t
    })
}

pub fn min_pow_and_gcd_pow(cfg: &VerifyConfig) -> CheckResult {
    let mut cells: Vec<(u64, u64)> = Vec::new();
    for w in 1..=300 {
        for k in 2..=30 {
            cells.push((w, k));
        }
    }
    let mut result = run_suite(cfg, "min-pow-divides", cells, |&(w, k)| {
        let mut t = Tally::new();
        if let Ok(h) = min_pow_divides(w, k) {
            let kh = (0..h).fold(1u128, |acc, _| acc * k as u128);
            t.check(kh % w as u128 == 0, || {
                format!("w={w} k={k}: k^{h} not divisible")
            });
            if h > 0 {
                t.check((kh / k as u128) % w as u128 != 0, || {
                    format!("w={w} k={k}: h={h} not minimal")
                });
            }
        } else {
            // No power works: some prime of w must avoid k.
            let kh = (0..64u32).fold(1u128, |acc, _| (acc * k as u128) % w as u128);
            t.check(kh % w as u128 != 0, || {
                format!("w={w} k={k}: refusal wrong")
            });
        }
        t
    });
    if cfg.fail_fast && result.failures > 0 {
        return result;
    }
    let mut cells: Vec<(u64, u64, u64)> = Vec::new();
    for k in 1..=30 {
        for m in 1..=30 {
            for n in 1..=30 {
                cells.push((k, m, n));
            }
        }
    }
    let second = run_suite(cfg, "gcd-pow-minus-one", cells, |&(k, m, n)| {
        let mut t = Tally::new();
        let direct = {
            let mut p = num_bigint::BigUint::one();
            for _ in 0..m {
                p *= k;
            }
            let p = p - 1u32;
            num_integer::gcd(p, num_bigint::BigUint::from(n))
        };
        t.check(
            num_bigint::BigUint::from(gcd_pow_minus_one(k, m, n)) == direct,
            || format!("k={k} m={m} n={n}"),
        );
        t
    });
    result.name = "arithmetic-helpers";
    result.cases += second.cases;
    result.failures += second.failures;
    for s in second.samples {
        if result.samples.len() < SAMPLE_LIMIT {
            result.samples.push(s);
        }
    }
    result
}

pub fn digraph_invariants(cfg: &VerifyConfig) -> CheckResult {
    let scan_cap = cfg.max_n.min(100);
    run_suite(
        cfg,
        "digraph-invariants",
        nk_pairs(cfg.max_n),
        move |&(n, k)| {
            let mut t = Tally::new();
            let g = PowerDigraph::build(n, k).unwrap();
            let split = coprime_split(n, k).unwrap();
            let d = gcd(n, split.k);
            let decomp = g.decompose();
            let indeg = g.indegrees();

            t.check(g.succ_table().len() as u64 == n, || {
                format!("n={n} k={k}: edge count")
            });
            t.check(
                (0..n).all(|a| {
                    let i = indeg[a as usize];
                    (i == 0 || i == d) && ((i != 0) == (a % d == 0))
                }),
                || format!("n={n} k={k}: indegree criterion"),
            );
            t.check(
                (0..n).all(|a| {
                    decomp.cycle_flag[a as usize] == (split.t % g.vertex_order(a).unwrap() == 0)
                }),
                || format!("n={n} k={k}: cycle-vertex order criterion"),
            );
            t.check(
                decomp.components.iter().all(|c| {
                    let o = g.vertex_order(c.cycle_vertices[0]).unwrap();
                    c.cycle_vertices
                        .iter()
                        .all(|&v| g.vertex_order(v).unwrap() == o)
                }),
                || format!("n={n} k={k}: cycle vertices share order"),
            );
            t.check(
                (0..n as usize).all(|a| {
                    let b = g.succ(a as u64) as usize;
                    decomp.height[b] == decomp.height[a].saturating_sub(1)
                }),
                || format!("n={n} k={k}: heights along edges"),
            );
            let longest_brute = decomp
                .components
                .iter()
                .map(|c| c.cycle_length)
                .max()
                .unwrap();
            t.check(
                decomp.components.iter().all(|c| {
                    let has_generator = (0..n).any(|a| {
                        decomp.component_id[a as usize]
                            == decomp.component_id[c.representative as usize]
                            && gcd(n, a) == 1
                    });
                    !has_generator || c.cycle_length == longest_brute
                }),
                || format!("n={n} k={k}: generator component cycle length"),
            );
            let generators_indeg0 = (0..n)
                .filter(|&a| gcd(n, a) == 1)
                .all(|a| indeg[a as usize] == 0);
            t.check(generators_indeg0 == (d != 1), || {
                format!("n={n} k={k}: generator indegree criterion")
            });
            if d != 1 {
                let phi = euler_phi(n).unwrap();
                t.check(phi <= (d - 1) * (n / d), || {
                    format!("n={n} k={k}: phi bound")
                });
            }
            let preds = predicates(n, k).unwrap();
            t.check(
                preds.connected == (decomp.components.len() == 1)
                    && preds.regular == indeg.iter().all(|&i| i == 1)
                    && preds.vertex_transitive == (0..n).all(|a| g.succ(a) == a)
                    && preds.arc_transitive == preds.vertex_transitive,
                || format!("n={n} k={k}: predicates vs brute force"),
            );
            if n <= scan_cap {
                t.check(
                    (0..n).all(|a| {
                        let solved = g.preimages(a).unwrap();
                        let scan: Vec<u64> = (0..n).filter(|&x| g.succ(x) == a).collect();
                        solved == scan
                    }),
                    || format!("n={n} k={k}: preimage solver vs scan"),
                );
            }
            t
        },
    )
}

pub fn indegree_formulas(cfg: &VerifyConfig) -> CheckResult {
    run_suite(cfg, "indegree-formulas", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        t.check(
            indegree_zero_count_formula(n, k).unwrap() == g.indegree_zero_count(),
            || format!("n={n} k={k}: indegree-0 count"),
        );
        let profile = tree_profile(n, k).unwrap();
        if profile.h0 >= 2 {
            let decomp = g.decompose();
            let indeg = g.indegrees();
            for m in 1..profile.h0 {
                let brute = (0..n)
                    .filter(|&a| {
                        decomp.root[a as usize] == 0
                            && decomp.height[a as usize] == m
                            && indeg[a as usize] == 0
                    })
                    .count() as u64;
                t.check(indegree_zero_in_level(n, k, m).unwrap() == brute, || {
                    format!("n={n} k={k} m={m}: indegree-0 in level")
                });
            }
        }
        t
    })
}

pub fn cycle_census(cfg: &VerifyConfig) -> CheckResult {
    run_suite(cfg, "cycle-census", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let decomp = g.decompose();
        let census = cycle_structure(n, k).unwrap();
        let split = coprime_split(n, k).unwrap();

        t.check(census.by_length == decomp.cycle_length_multiset(), || {
            format!("n={n} k={k}: cycle multiset")
        });
        t.check(
            census.total_cycles == decomp.components.len() as u64,
            || format!("n={n} k={k}: total cycles"),
        );
        let longest_brute = decomp
            .components
            .iter()
            .map(|c| c.cycle_length)
            .max()
            .unwrap();
        t.check(census.longest == longest_brute, || {
            format!("n={n} k={k}: longest cycle")
        });
        t.check(
            census
                .per_order
                .iter()
                .map(|c| c.length * c.count)
                .sum::<u64>()
                == split.t,
            || format!("n={n} k={k}: cycle vertices sum to t"),
        );
        t.check(
            census
                .by_length
                .iter()
                .all(|&(r, _)| census.longest % r == 0),
            || format!("n={n} k={k}: lengths divide longest"),
        );
        // Group brute cycles by the order of their vertices.
        let mut brute_per_order: HashMap<u64, (u64, u64)> = HashMap::new();
        for comp in &decomp.components {
            let order = g.vertex_order(comp.cycle_vertices[0]).unwrap();
            let e = brute_per_order
                .entry(order)
                .or_insert((comp.cycle_length, 0));
            e.1 += 1;
        }
        t.check(
            census.per_order.iter().all(|c| {
                c.count == 0 || brute_per_order.get(&c.order).copied() == Some((c.length, c.count))
            }),
            || format!("n={n} k={k}: per-order census"),
        );
        t.check(
            decomp
                .components
                .iter()
                .all(|c| c.size == c.cycle_length * split.w),
            || format!("n={n} k={k}: component size is cycle length times w"),
        );
        t
    })
}

pub fn moebius_cycle_counts(cfg: &VerifyConfig) -> CheckResult {
    run_suite(
        cfg,
        "moebius-cycle-counts",
        nk_pairs(cfg.max_n),
        |&(n, k)| {
            let mut t = Tally::new();
            let g = PowerDigraph::build(n, k).unwrap();
            let brute: HashMap<u64, u64> =
                g.decompose().cycle_length_multiset().into_iter().collect();
            let longest = *brute.keys().max().unwrap();
            for r in 1..=longest {
                match cycles_of_length(n, k, r) {
                    Ok(count) => t.check(count == brute.get(&r).copied().unwrap_or(0), || {
                        format!("n={n} k={k} r={r}: cycle count")
                    }),
                    Err(e) => t.check(false, || format!("n={n} k={k} r={r}: {e}")),
                }
            }
            t
        },
    )
}

pub fn tree_levels(cfg: &VerifyConfig) -> CheckResult {
    run_suite(cfg, "tree-levels", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let decomp = g.decompose();
        let profile = tree_profile(n, k).unwrap();
        let split = coprime_split(n, k).unwrap();

        t.check(profile.total_levels == decomp.level_sizes(), || {
            format!("n={n} k={k}: total level sizes")
        });
        t.check(
            profile.per_tree_levels == decomp.tree_level_sizes(0).unwrap(),
            || format!("n={n} k={k}: per-tree level sizes"),
        );
        t.check(
            profile.h0 == decomp.height.iter().copied().max().unwrap(),
            || format!("n={n} k={k}: height"),
        );
        t.check(
            profile.per_tree_levels.iter().sum::<u64>() == split.w
                && profile.per_tree_levels[0] == 1,
            || format!("n={n} k={k}: tree size"),
        );
        t
    })
}

pub fn vertex_heights(cfg: &VerifyConfig) -> CheckResult {
    run_suite(cfg, "vertex-heights", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let decomp = g.decompose();
        t.check(
            (0..n).all(|a| vertex_height(n, k, a).unwrap() == decomp.height[a as usize]),
            || format!("n={n} k={k}: vertex heights"),
        );
        t.check(
            (0..n).all(|a| {
                let (d, m) = crate::structure::level_membership(n, k, a).unwrap();
                let root = decomp.root[a as usize];
                d == g.vertex_order(root).unwrap() && m == decomp.height[a as usize]
            }),
            || format!("n={n} k={k}: level membership"),
        );
        t
    })
}

pub fn tree_code_constancy(cfg: &VerifyConfig) -> CheckResult {
    run_suite(
        cfg,
        "tree-code-constancy",
        nk_pairs(cfg.max_n),
        |&(n, k)| {
            let mut t = Tally::new();
            let g = PowerDigraph::build(n, k).unwrap();
            let decomp = g.decompose();
            let data = tree_data(&g, &decomp);
            t.check(
                decomp
                    .components
                    .iter()
                    .flat_map(|c| c.cycle_vertices.iter())
                    .all(|&c| data.code[c as usize] == data.code[0]),
                || format!("n={n} k={k}: tree code differs between roots"),
            );
            t
        },
    )
}

pub fn cycle_length_lattice(cfg: &VerifyConfig) -> CheckResult {
    let mut result = run_suite(
        cfg,
        "cycle-length-lattice",
        nk_pairs(cfg.max_n),
        |&(n, k)| {
            let mut t = Tally::new();
            let split = coprime_split(n, k).unwrap();
            let divs = divisors(split.t);
            for (i, &d) in divs.iter().enumerate() {
                for &r in &divs[i..] {
                    let ell_lcm = mult_order(split.k, lcm(d, r)).unwrap();
                    let lcm_ell = lcm(
                        mult_order(split.k, d).unwrap(),
                        mult_order(split.k, r).unwrap(),
                    );
                    t.check(ell_lcm == lcm_ell, || {
                        format!("n={n} k={k} d={d} r={r}: lcm identity")
                    });
                }
            }
            t
        },
    );
    // Required negative witness: the gcd analogue fails for k=2 with
    // the divisor pair (11, 15) of t = 165.
    if cfg.max_n >= 165 && !(cfg.fail_fast && result.failures > 0) {
        let split = coprime_split(165, 2).unwrap();
        result.cases += 1;
        let witness_holds = split.t == 165
            && mult_order(2, gcd(11, 15)).unwrap() == 1
            && gcd(mult_order(2, 11).unwrap(), mult_order(2, 15).unwrap()) == 2;
        if !witness_holds {
            result.failures += 1;
            result
                .samples
                .push("cycle-length-lattice: gcd counterexample witness missing".into());
        }
    }
    result
}

pub fn subgroup_unions(cfg: &VerifyConfig) -> CheckResult {
    run_suite(cfg, "subgroup-unions", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let decomp = g.decompose();
        let split = coprime_split(n, k).unwrap();
        let h0 = tree_profile(n, k).unwrap().h0;
        let root_order: Vec<u64> = (0..n)
            .map(|a| g.vertex_order(decomp.root[a as usize]).unwrap())
            .collect();
        let ell_t = mult_order(split.k, split.t).unwrap();

        let check_union = |t: &mut Tally, d: u64, h: u64, label: &str| {
            // Vertices whose root order divides d and height is <= h
            // form the subgroup of elements with ord | k^h * d.
            let khd = (pow_mod(split.k, h, n) as u128 * d as u128 % n as u128) as u64;
            let expected_size = if khd == 0 { n } else { gcd(n, khd) };
            let mut size = 0u64;
            let ok = (0..n).all(|a| {
                let member = d % root_order[a as usize] == 0 && decomp.height[a as usize] <= h;
                let in_subgroup = (khd as u128 * a as u128 % n as u128) == 0;
                if member {
                    size += 1;
                }
                member == in_subgroup
            });
            t.check(ok && size == expected_size, || {
                format!("n={n} k={k} d={d} h={h}: {label}")
            });
        };

        for d in divisors(split.t) {
            for h in 0..=h0 {
                check_union(&mut t, d, h, "order union");
            }
        }
        // The variant selecting roots by cycle length: cycles of length
        // dividing l are exactly those of order dividing gcd(t, k^l - 1).
        let mut ls = divisors(ell_t);
        for extra in 1..=ell_t.min(6) {
            if !ls.contains(&extra) {
                ls.push(extra);
            }
        }
        ls.sort_unstable();
        for l in ls {
            let d = gcd_pow_minus_one(split.k, l, split.t);
            for h in 0..=h0 {
                check_union(&mut t, d, h, "cycle-length union");
            }
        }
        t
    })
}

pub fn order_products(cfg: &VerifyConfig) -> CheckResult {
    run_suite(cfg, "order-products", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let decomp = g.decompose();
        let split = coprime_split(n, k).unwrap();
        let cycle_vertices: Vec<u64> = (0..n).filter(|&a| decomp.cycle_flag[a as usize]).collect();
        let tree_at_identity: Vec<u64> = (0..n)
            .filter(|&a| decomp.root[a as usize] == 0 && !decomp.cycle_flag[a as usize])
            .collect();
        let ok = tree_at_identity.iter().all(|&a| {
            let h = decomp.height[a as usize];
            let kh = pow_mod(split.k, h, n);
            cycle_vertices.iter().all(|&c| {
                let b = (a + c) % n;
                let expected_root = (kh as u128 * c as u128 % n as u128) as u64;
                decomp.height[b as usize] == h
                    && decomp.root[b as usize] == expected_root
                    && g.vertex_order(b).unwrap()
                        == g.vertex_order(a).unwrap() * g.vertex_order(c).unwrap()
            })
        });
        t.check(ok, || format!("n={n} k={k}: order product"));
        t
    })
}

pub fn level_bounds(cfg: &VerifyConfig) -> CheckResult {
    let mut result = run_suite(cfg, "level-bounds", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let split = coprime_split(n, k).unwrap();
        if gcd(n, split.k) != 1 {
            let profile = tree_profile(n, k).unwrap();
            let top = *profile.total_levels.last().unwrap();
            t.check(2 * top >= n, || format!("n={n} k={k}: |T^h0| >= n/2"));
        }
        t
    });
    if cfg.fail_fast && result.failures > 0 {
        return result;
    }
    // The bound is tight at n = 2^m with k = 6.
    for n in [8u64, 16, 32] {
        if n > cfg.max_n {
            continue;
        }
        let profile = tree_profile(n, 6).unwrap();
        result.cases += 1;
        if 2 * *profile.total_levels.last().unwrap() != n {
            result.failures += 1;
            result
                .samples
                .push(format!("level-bounds: equality fails at n={n} k=6"));
        }
    }
    // Even-order groups never have a cycle longer than (n-2)/2; tight
    // at (10, 2). This sweep has its own fixed range.
    let even_cells: Vec<(u64, u64)> = (3..=250u64)
        .flat_map(|half| {
            let n = 2 * half;
            (1..=n).map(move |k| (n, k))
        })
        .collect();
    let even = run_suite(cfg, "even-longest-cycle", even_cells, |&(n, k)| {
        let mut t = Tally::new();
        let split = coprime_split(n, k).unwrap();
        let longest = mult_order(split.k, split.t).unwrap();
        t.check(longest <= (n - 2) / 2, || {
            format!("n={n} k={k}: longest cycle {longest}")
        });
        t
    });
    result.cases += even.cases;
    result.failures += even.failures;
    for s in even.samples {
        if result.samples.len() < SAMPLE_LIMIT {
            result.samples.push(s);
        }
    }
    result.cases += 1;
    if mult_order(2, coprime_split(10, 2).unwrap().t).unwrap() != (10 - 2) / 2 {
        result.failures += 1;
        result
            .samples
            .push("level-bounds: longest-cycle equality fails at (10, 2)".into());
    }
    result
}

pub fn spectral_char(cfg: &VerifyConfig) -> CheckResult {
    run_suite(
        cfg,
        "spectral-char",
        nk_pairs(cfg.max_matrix_n),
        |&(n, k)| {
            let mut t = Tally::new();
            let g = PowerDigraph::build(n, k).unwrap();
            let decomp = g.decompose();
            let m = canonical_matrix_with(&g, &decomp);
            let split = coprime_split(n, k).unwrap();
            let closed = char_poly(n, k).unwrap();
            t.check(closed.degree() == n, || format!("n={n} k={k}: degree"));
            t.check(closed.lambda_power == n - split.t, || {
                format!("n={n} k={k}: zero multiplicity")
            });
            let expanded = closed.expand();
            let oracle = oracle_char_poly(&m, cfg.max_matrix_n as usize).unwrap();
            t.check(expanded == oracle, || format!("n={n} k={k}: char poly"));
            // Row sums 1, column sums 0 or gcd(n, k).
            let d = gcd(n, split.k);
            let mut col_sums = vec![0u64; n as usize];
            for i in 0..n as usize {
                col_sums[m.row_target(i)] += 1;
            }
            t.check(col_sums.iter().all(|&c| c == 0 || c == d), || {
                format!("n={n} k={k}: column sums")
            });
            t
        },
    )
}

pub fn spectral_min(cfg: &VerifyConfig) -> CheckResult {
    run_suite(
        cfg,
        "spectral-min",
        nk_pairs(cfg.max_minpoly_n),
        |&(n, k)| {
            let mut t = Tally::new();
            let g = PowerDigraph::build(n, k).unwrap();
            let decomp = g.decompose();
            let m = canonical_matrix_with(&g, &decomp);
            let closed = min_poly(n, k).unwrap();
            let expanded = closed.expand();
            match oracle_min_poly(&m, cfg.max_minpoly_n as usize) {
                Ok(oracle) => t.check(expanded == oracle, || format!("n={n} k={k}: min poly")),
                Err(e) => t.check(false, || format!("n={n} k={k}: oracle failed: {e}")),
            }
            t.check(
                char_poly(n, k)
                    .unwrap()
                    .expand()
                    .div_exact(&expanded)
                    .is_some(),
                || format!("n={n} k={k}: min poly divides char poly"),
            );
            t.check(expanded.annihilates(&m), || {
                format!("n={n} k={k}: min poly does not annihilate")
            });
            if closed.lambda_power >= 1 {
                let reduced = FactoredPoly {
                    lambda_power: closed.lambda_power - 1,
                    cycle_factors: closed.cycle_factors.clone(),
                };
                t.check(!reduced.expand().annihilates(&m), || {
                    format!("n={n} k={k}: reduced lambda power annihilates")
                });
            }
            t
        },
    )
}

pub fn aut_exhaustive(cfg: &VerifyConfig) -> CheckResult {
    run_suite(
        cfg,
        "aut-exhaustive",
        nk_pairs(cfg.max_exhaustive_n),
        move |&(n, k)| {
            let mut t = Tally::new();
            let g = PowerDigraph::build(n, k).unwrap();
            let brute = brute_aut_count(&g, BruteMode::Exhaustive, cfg.max_exhaustive_n).unwrap();
            let formula = aut::aut_order(n, k).unwrap().total_order;
            t.check(formula == brute, || {
                format!("n={n} k={k}: wreath formula vs exhaustive count")
            });
            t
        },
    )
}

/// Deterministic sample of `(n, k)` pairs for the backtracking
/// counter. Pairs whose predicted group order would make enumeration
/// infeasible are skipped; (28, 2) is always included.
pub fn backtracking_sample(cfg: &VerifyConfig) -> Vec<(u64, u64)> {
    let budget = BigCount::from(200_000u32);
    let hi = cfg.max_n.min(aut::BACKTRACKING_CAP_DEFAULT);
    let mut pool: Vec<(u64, u64)> = Vec::new();
    for n in 2..=hi {
        for k in 1..=n {
            if aut::aut_order(n, k).unwrap().total_order <= budget {
                pool.push((n, k));
            }
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x7064_6772);
    pool.shuffle(&mut rng);
    let mut sample: Vec<(u64, u64)> = Vec::new();
    if hi >= 28 {
        sample.push((28, 2));
    }
    for pair in pool {
        if sample.len() >= cfg.backtracking_samples as usize {
            break;
        }
        if !sample.contains(&pair) {
            sample.push(pair);
        }
    }
    sample
}

pub fn aut_backtracking(cfg: &VerifyConfig) -> CheckResult {
    let cells = backtracking_sample(cfg);
    let mut result = run_suite(cfg, "aut-backtracking", cells, |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let brute =
            brute_aut_count(&g, BruteMode::Backtracking, aut::BACKTRACKING_CAP_DEFAULT).unwrap();
        let formula = aut::aut_order(n, k).unwrap().total_order;
        t.check(formula == brute, || {
            format!("n={n} k={k}: wreath formula vs backtracking count")
        });
        t
    });
    if cfg.max_n >= 28 {
        result.cases += 1;
        let g = PowerDigraph::build(28, 2).unwrap();
        let count = brute_aut_count(&g, BruteMode::Backtracking, 60).unwrap();
        if count != BigCount::from(2304u32) {
            result.failures += 1;
            result.samples.push(format!(
                "aut-backtracking: |Aut(G(28,2))| = {count}, want 2304"
            ));
        }
    }
    result
}

pub fn aut_closed_forms(cfg: &VerifyConfig) -> CheckResult {
    // Prime-k recursion against the generic tree count.
    let mut cells: Vec<(u64, u64)> = Vec::new();
    for k in [2u64, 3, 5] {
        for n in (2..=cfg.max_n).filter(|n| n % k == 0) {
            cells.push((n, k));
        }
    }
    let mut result = run_suite(cfg, "aut-prime-k-recursion", cells, |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let generic = aut::tree_aut_order(&g, 0).unwrap();
        let recursive = prime_k_tree_aut_order(n, k).unwrap();
        t.check(generic == recursive, || {
            format!("n={n} k={k}: prime-k recursion")
        });
        t
    });
    if cfg.fail_fast && result.failures > 0 {
        return result;
    }
    // Permutation case: trivial trees, cycles only.
    let coprime = run_suite(cfg, "aut-coprime", nk_pairs(cfg.max_n), |&(n, k)| {
        let mut t = Tally::new();
        let split = coprime_split(n, k).unwrap();
        if gcd(n, split.k) != 1 {
            return t;
        }
        let report = aut::aut_order(n, k).unwrap();
        t.check(report.tree_aut_order == BigCount::one(), || {
            format!("n={n} k={k}: coprime tree order")
        });
        let expected = cycle_structure(n, k)
            .unwrap()
            .by_length
            .iter()
            .fold(BigCount::one(), |acc, &(r, m)| {
                acc * big_pow(&BigCount::from(r), m) * big_factorial(m)
            });
        t.check(report.total_order == expected, || {
            format!("n={n} k={k}: coprime wreath order")
        });
        t
    });
    // k = 1 is the full symmetric group; k = n fixes only the identity.
    let special_cells: Vec<u64> = (2..=cfg.max_n).collect();
    let special = run_suite(cfg, "aut-special-k", special_cells, |&n| {
        let mut t = Tally::new();
        t.check(
            aut::aut_order(n, 1).unwrap().total_order == big_factorial(n),
            || format!("n={n}: k=1 gives n!"),
        );
        t.check(
            aut::aut_order(n, n).unwrap().total_order == big_factorial(n - 1),
            || format!("n={n}: k=n gives (n-1)!"),
        );
        t
    });
    result.name = "aut-closed-forms";
    for extra in [coprime, special] {
        result.cases += extra.cases;
        result.failures += extra.failures;
        for s in extra.samples {
            if result.samples.len() < SAMPLE_LIMIT {
                result.samples.push(s);
            }
        }
    }
    result
}

pub fn order_determines_orbit(cfg: &VerifyConfig) -> CheckResult {
    let max = cfg.max_n.min(200);
    let exhaustive_cap = cfg.max_exhaustive_n;
    run_suite(cfg, "order-determines-orbit", nk_pairs(max), move |&(n, k)| {
        let mut t = Tally::new();
        let g = PowerDigraph::build(n, k).unwrap();
        let decomp = g.decompose();
        let data = tree_data(&g, &decomp);
        let invariants = orbit_invariants(&g, &decomp, &data);
        // Equal vertex order forces an equal invariant.
        let mut by_order: HashMap<u64, &aut::OrbitInvariant> = HashMap::new();
        let ok = (0..n).all(|a| {
            let order = g.vertex_order(a).unwrap();
            match by_order.get(&order) {
                Some(inv) => **inv == invariants[a as usize],
                None => {
                    by_order.insert(order, &invariants[a as usize]);
                    true
                }
            }
        });
        t.check(ok, || format!("n={n} k={k}: order determines invariant"));
        if n <= exhaustive_cap {
            let perms = exhaustive_automorphisms(&g, exhaustive_cap).unwrap();
            // The invariant is constant on orbits.
            t.check(
                perms.iter().all(|p| {
                    (0..n).all(|a| invariants[a as usize] == invariants[p[a as usize] as usize])
                }),
                || format!("n={n} k={k}: invariant not orbit-constant"),
            );
            // ... and equal order really does mean same orbit.
            let mut orbit = vec![usize::MAX; n as usize];
            for a in 0..n as usize {
                if orbit[a] != usize::MAX {
                    continue;
                }
                let mut members = vec![a];
                let mut head = 0;
                orbit[a] = a;
                while head < members.len() {
                    let v = members[head];
                    head += 1;
                    for p in &perms {
                        let u = p[v] as usize;
                        if orbit[u] == usize::MAX {
                            orbit[u] = a;
                            members.push(u);
                        }
                    }
                }
            }
            let mut orbit_of_order: HashMap<u64, usize> = HashMap::new();
            let ok = (0..n as usize).all(|a| {
                let order = g.vertex_order(a as u64).unwrap();
                match orbit_of_order.get(&order) {
                    Some(&o) => o == orbit[a],
                    None => {
                        orbit_of_order.insert(order, orbit[a]);
                        true
                    }
                }
            });
            t.check(ok, || format!("n={n} k={k}: equal order, different orbit"));
        }
        t
    })
}

pub fn order_preimage_counts(cfg: &VerifyConfig) -> CheckResult {
    let cells: Vec<u64> = (1..=200).collect();
    run_suite(cfg, "order-preimage-counts", cells, |&m| {
        let mut t = Tally::new();
        let order = |x: u64| m / gcd(m, x);
        for r1 in divisors(m) {
            for r in divisors(r1) {
                let q = r1 / r;
                let expected = crate::structure::count_order_preimages(r, r1, m).unwrap();
                let ok = (0..m).filter(|&b| order(b) == r).all(|b| {
                    let count = (0..m)
                        .filter(|&a| {
                            order(a) == r1 && (q as u128 * a as u128) % m as u128 == b as u128
                        })
                        .count() as u64;
                    count == expected
                });
                t.check(ok, || format!("m={m} r={r} r1={r1}: preimage count"));
            }
        }
        t
    })
}

pub fn prime_iso_criterion_suite(cfg: &VerifyConfig) -> CheckResult {
    let cells: Vec<u64> = (2..=61).filter(|&n| is_prime(n)).collect();
    run_suite(cfg, "prime-iso-criterion", cells, |&n| {
        let mut t = Tally::new();
        let certs: Vec<_> = (0..=n)
            .map(|k| {
                if (2..n).contains(&k) {
                    Some(canon::certificate(n, k).unwrap())
                } else {
                    None
                }
            })
            .collect();
        for k1 in 2..n {
            for k2 in k1 + 1..n {
                let by_order = canon::prime_iso_criterion(n, k1, k2).unwrap();
                let by_cert = certs[k1 as usize] == certs[k2 as usize];
                t.check(by_order == by_cert, || {
                    format!("n={n} k1={k1} k2={k2}: criterion vs certificate")
                });
            }
        }
        t
    })
}

pub fn iso_bijections(cfg: &VerifyConfig) -> CheckResult {
    let cells: Vec<u64> = (2..=cfg.max_n.min(40)).collect();
    run_suite(cfg, "iso-bijections", cells, |&n| {
        let mut t = Tally::new();
        let graphs: Vec<PowerDigraph> = (1..=n)
            .map(|k| PowerDigraph::build(n, k).unwrap())
            .collect();
        let certs: Vec<_> = (1..=n).map(|k| canon::certificate(n, k).unwrap()).collect();
        for k1 in 1..=n as usize {
            for k2 in k1 + 1..=n as usize {
                let verdict = certs[k1 - 1] == certs[k2 - 1];
                let witness = canon::explicit_isomorphism(&graphs[k1 - 1], &graphs[k2 - 1]);
                match witness {
                    Some(w) => {
                        let valid = (0..n).all(|a| {
                            w[graphs[k1 - 1].succ(a) as usize] == graphs[k2 - 1].succ(w[a as usize])
                        });
                        t.check(verdict && valid, || {
                            format!("n={n} k1={k1} k2={k2}: witness vs certificate")
                        });
                    }
                    None => t.check(!verdict, || {
                        format!(
                            "n={n} k1={k1} k2={k2}: certificate claims isomorphic, no bijection"
                        )
                    }),
                }
            }
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean_and_deterministic() {
        let cfg = VerifyConfig {
            max_n: 24,
            max_matrix_n: 12,
            max_minpoly_n: 10,
            max_exhaustive_n: 6,
            backtracking_samples: 5,
            fail_fast: false,
        };
        let first = run(&cfg);
        assert!(first.is_success(), "{}", first.render());
        let second = run(&cfg);
        assert_eq!(first.render(), second.render());
        assert!(first
            .render()
            .ends_with(&format!("checks: {}, failures: 0\n", first.cases())));
    }

    #[test]
    fn harness_reports_failures() {
        // Feed the runner a deliberately wrong comparison and make sure
        // the failure is counted, sampled, and fails the run.
        let cfg = VerifyConfig::default();
        let suite = run_suite(&cfg, "sanity", vec![1u64, 2, 3], |&x| {
            let mut t = Tally::new();
            t.check(x * 2 == x + x, || "arithmetic broke".into());
            t.check(x < 3, || format!("x={x} not less than 3"));
            t
        });
        assert_eq!(suite.cases, 6);
        assert_eq!(suite.failures, 1);
        let report = VerifyReport {
            config: cfg,
            suites: vec![suite],
        };
        assert!(!report.is_success());
        assert!(report.render().contains("failures: 1"));
        assert!(report.render().contains("x=3 not less than 3"));
    }

    #[test]
    fn fail_fast_stops_early() {
        let cfg = VerifyConfig {
            fail_fast: true,
            ..VerifyConfig::default()
        };
        let suite = run_suite(&cfg, "sanity", (1u64..=100).collect(), |&x| {
            let mut t = Tally::new();
            t.check(x < 10, || format!("x={x}"));
            t
        });
        assert_eq!(suite.cases, 10);
        assert_eq!(suite.failures, 1);
    }

    #[test]
    fn sample_is_deterministic_and_includes_g28() {
        let cfg = VerifyConfig::default();
        let a = backtracking_sample(&cfg);
        let b = backtracking_sample(&cfg);
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert!(a.contains(&(28, 2)));
    }
}
