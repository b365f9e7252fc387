//! Isomorphism testing between power digraphs via canonical
//! certificates, plus the prime-order criterion.
//!
//! A component is a cycle of root-merged copies of the common tree, so
//! `(tree code of T_1, multiset of cycle lengths)` pins the whole graph
//! down up to isomorphism. The backtracking matcher exists to confirm
//! that empirically at small sizes.

use std::fmt;

use crate::aut::{isomorphism_search, tree_code, TreeCode};
use crate::digraph::PowerDigraph;
use crate::numtheory::{is_prime, mult_order};
use crate::structure::cycle_structure;
use crate::{Error, Result};

/// Complete isomorphism certificate: two power digraphs are isomorphic
/// iff their certificates are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalCert {
    pub vertex_count: u64,
    /// Canonical code of the tree hanging at the identity.
    pub tree_code: TreeCode,
    /// Sorted `(length, multiplicity)` pairs of the cycles.
    pub cycle_multiset: Vec<(u64, u64)>,
}

impl fmt::Display for CanonicalCert {
    /// Single-line canonical form `n|treecode|r1^m1,r2^m2,...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<String> = self
            .cycle_multiset
            .iter()
            .map(|&(r, m)| format!("{r}^{m}"))
            .collect();
        write!(
            f,
            "{}|{}|{}",
            self.vertex_count,
            self.tree_code,
            cycles.join(",")
        )
    }
}

/// Certificate of `G(n, k)`.
pub fn certificate(n: u64, k: u64) -> Result<CanonicalCert> {
    let g = PowerDigraph::build(n, k)?;
    let code = tree_code(&g, 0).expect("identity is always a cycle vertex");
    let census = cycle_structure(n, k)?;
    Ok(CanonicalCert {
        vertex_count: n,
        tree_code: code,
        cycle_multiset: census.by_length,
    })
}

/// Certificate equality; graphs on different vertex counts are never
/// isomorphic.
pub fn is_isomorphic(n1: u64, k1: u64, n2: u64, k2: u64) -> Result<bool> {
    if n1 != n2 {
        // Build both anyway so bad arguments surface as errors.
        certificate(n1, k1)?;
        certificate(n2, k2)?;
        return Ok(false);
    }
    Ok(certificate(n1, k1)? == certificate(n2, k2)?)
}

/// For prime `n` and `1 < k1 < k2 < n`: the graphs are isomorphic iff
/// `k1` and `k2` have the same multiplicative order modulo `n`. The
/// hypotheses are enforced, not extrapolated.
pub fn prime_iso_criterion(n: u64, k1: u64, k2: u64) -> Result<bool> {
    if !is_prime(n) {
        return Err(Error::Domain(format!("{n} is not prime")));
    }
    if !(1 < k1 && k1 < k2 && k2 < n) {
        return Err(Error::Domain(format!(
            "need 1 < k1 < k2 < n, got k1={k1}, k2={k2}, n={n}"
        )));
    }
    Ok(mult_order(k1, n)? == mult_order(k2, n)?)
}

/// Exhaustive-with-pruning search for an explicit vertex bijection
/// commuting with both successor maps; `None` when none exists.
pub fn explicit_isomorphism(g1: &PowerDigraph, g2: &PowerDigraph) -> Option<Vec<u64>> {
    let (_, witness) = isomorphism_search(g1, g2, false);
    witness
}
