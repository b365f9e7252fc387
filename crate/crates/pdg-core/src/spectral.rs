//! Exact characteristic and minimal polynomials of the adjacency
//! matrix, in factored closed form and as dense integer polynomials,
//! together with two independent matrix oracles: a division-free
//! Berkowitz characteristic polynomial and an annihilation search for
//! the minimal polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digraph::{Decomposition, PowerDigraph};
use crate::numtheory::{self, divisors, lcm};
use crate::structure::{cycle_structure, tree_profile};
use crate::{Error, Result};

/// `lambda^a * prod (lambda^r - 1)^e`, the closed factored form of the
/// characteristic and minimal polynomials of a power digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    /// Exponent of the `lambda` factor.
    pub lambda_power: u64,
    /// Sorted `(r, e)` pairs meaning `(lambda^r - 1)^e`.
    pub cycle_factors: Vec<(u64, u64)>,
}

/// Dense polynomial with exact integer coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

/// Eigenvalue of a power digraph: zero or a root of unity `e^(2*pi*i*j/r)`
/// described by the reduced pair `(r, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Eigenvalue {
    Zero,
    /// Primitive description: `gcd(index, order) = 1`, except the
    /// eigenvalue 1 which is `(order: 1, index: 0)`.
    RootOfUnity {
        order: u64,
        index: u64,
    },
}

/// 0/1 adjacency matrix of a functional digraph under an explicit
/// row/column ordering. Each row holds exactly one 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    /// `ordering[i]` is the vertex label placed at row/column `i`.
    ordering: Vec<u64>,
    /// `target[i]` is the column of the single 1 in row `i`.
    target: Vec<usize>,
}

impl AdjacencyMatrix {
    /// Matrix of `g` with rows/columns in natural label order.
    pub fn natural(g: &PowerDigraph) -> AdjacencyMatrix {
        let ordering: Vec<u64> = (0..g.n()).collect();
        let target = (0..g.n()).map(|a| g.succ(a) as usize).collect();
        AdjacencyMatrix { ordering, target }
    }

    /// Matrix from a raw successor table (rows in table order).
    pub fn from_successor_table(succ: Vec<usize>) -> AdjacencyMatrix {
        let n = succ.len();
        assert!(succ.iter().all(|&v| v < n));
        AdjacencyMatrix {
            ordering: (0..n as u64).collect(),
            target: succ,
        }
    }

    pub fn size(&self) -> usize {
        self.target.len()
    }

    pub fn ordering(&self) -> &[u64] {
        &self.ordering
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        u8::from(self.target[row] == col)
    }

    /// Column index of the single 1 in `row`.
    pub fn row_target(&self, row: usize) -> usize {
        self.target[row]
    }

    fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, &j) in self.target.iter().enumerate() {
            m[i][j] = BigInt::one();
        }
        m
    }
}

/// Matrix of `g` labeled component by component (ascending
/// representative), inside each component height by height: the cycle
/// in successor order first, then each level grouped by parent
/// position with siblings in ascending label order. This makes the
/// matrix block-diagonal by component and block-lower-triangular by
/// height inside each block.
pub fn canonical_matrix(g: &PowerDigraph) -> AdjacencyMatrix {
    let decomp = g.decompose();
    canonical_matrix_with(g, &decomp)
}

pub fn canonical_matrix_with(g: &PowerDigraph, decomp: &Decomposition) -> AdjacencyMatrix {
    let mut children = decomp.tree_children(g);
    for list in &mut children {
        list.sort_unstable();
    }
    let mut ordering: Vec<u64> = Vec::with_capacity(g.n() as usize);
    for comp in &decomp.components {
        let start = ordering.len();
        ordering.extend_from_slice(&comp.cycle_vertices);
        let mut level_start = start;
        while level_start < ordering.len() {
            let level_end = ordering.len();
            for idx in level_start..level_end {
                let v = ordering[idx];
                ordering.extend_from_slice(&children[v as usize]);
            }
            level_start = level_end;
        }
    }
    let mut position = vec![0usize; g.n() as usize];
    for (i, &v) in ordering.iter().enumerate() {
        position[v as usize] = i;
    }
    let target = ordering
        .iter()
        .map(|&v| position[g.succ(v) as usize])
        .collect();
    AdjacencyMatrix { ordering, target }
}

/// Characteristic polynomial in closed form:
/// `lambda^(sum m_i r_i (w-1)) * prod (lambda^(r_i) - 1)^(m_i)`.
pub fn char_poly(n: u64, k: u64) -> Result<FactoredPoly> {
    let split = numtheory::coprime_split(n, k)?;
    let cycles = cycle_structure(n, k)?;
    let lambda_power: u64 = cycles
        .by_length
        .iter()
        .map(|&(r, m)| m * r * (split.w - 1))
        .sum();
    debug_assert_eq!(lambda_power, n - split.t);
    Ok(FactoredPoly {
        lambda_power,
        cycle_factors: cycles.by_length.clone(),
    })
}

/// Minimal polynomial in closed form: `lambda^h0 * (lambda^l(t) - 1)`.
pub fn min_poly(n: u64, k: u64) -> Result<FactoredPoly> {
    let profile = tree_profile(n, k)?;
    let longest = cycle_structure(n, k)?.longest;
    Ok(FactoredPoly {
        lambda_power: profile.h0,
        cycle_factors: vec![(longest, 1)],
    })
}

impl FactoredPoly {
    pub fn degree(&self) -> u64 {
        self.lambda_power + self.cycle_factors.iter().map(|&(r, e)| r * e).sum::<u64>()
    }

    /// Exact integer expansion.
    pub fn expand(&self) -> DensePoly {
        let mut acc = DensePoly::monomial(self.lambda_power as usize);
        for &(r, e) in &self.cycle_factors {
            let base = DensePoly::x_pow_minus_one(r as usize);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
        }
        acc
    }

    /// Eigenvalues with multiplicities: 0 with multiplicity
    /// `lambda_power`, and for each factor the `r`-th roots of unity,
    /// reduced to primitive descriptions and aggregated.
    pub fn spectrum(&self) -> Vec<(Eigenvalue, u64)> {
        let mut mult: BTreeMap<Eigenvalue, u64> = BTreeMap::new();
        if self.lambda_power > 0 {
            mult.insert(Eigenvalue::Zero, self.lambda_power);
        }
        for &(r, e) in &self.cycle_factors {
            for j in 0..r {
                let g = numtheory::gcd(j, r);
                let ev = Eigenvalue::RootOfUnity {
                    order: r / g,
                    index: j / g,
                };
                *mult.entry(ev).or_insert(0) += e;
            }
        }
        mult.into_iter().collect()
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.lambda_power {
            0 => {}
            1 => parts.push("x".to_string()),
            a => parts.push(format!("x^{a}")),
        }
        for &(r, e) in &self.cycle_factors {
            let base = if r == 1 {
                "(x - 1)".to_string()
            } else {
                format!("(x^{r} - 1)")
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(" * "))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Zero => write!(f, "0"),
            Eigenvalue::RootOfUnity { order: 1, .. } => write!(f, "1"),
            Eigenvalue::RootOfUnity { order: 2, .. } => write!(f, "-1"),
            Eigenvalue::RootOfUnity { order, index } => {
                write!(f, "exp(2*pi*i*{index}/{order})")
            }
        }
    }
}

impl DensePoly {
    pub fn zero() -> DensePoly {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> DensePoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> DensePoly {
        DensePoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn monomial(deg: usize) -> DensePoly {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = BigInt::one();
        DensePoly { coeffs }
    }

    /// `x^r - 1`.
    pub fn x_pow_minus_one(r: usize) -> DensePoly {
        let mut coeffs = vec![BigInt::zero(); r + 1];
        coeffs[0] = -BigInt::one();
        coeffs[r] = BigInt::one();
        DensePoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients ascending by degree (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(out)
    }

    /// Exact division by a monic divisor; `None` when the divisor is
    /// not monic or the remainder is nonzero.
    pub fn div_exact(&self, divisor: &DensePoly) -> Option<DensePoly> {
        if divisor.is_zero() || !divisor.coeffs.last().unwrap().is_one() {
            return None;
        }
        if self.is_zero() {
            return Some(DensePoly::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.coeffs.len();
        let qn = rem.len() - dn + 1;
        let mut quot = vec![BigInt::zero(); qn];
        for qi in (0..qn).rev() {
            let c = rem[qi + dn - 1].clone();
            if c.is_zero() {
                continue;
            }
            quot[qi] = c.clone();
            for (di, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[qi + di] -= &c * d;
                }
            }
        }
        if rem.iter().all(Zero::is_zero) {
            Some(DensePoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Evaluate the polynomial at a square matrix, exactly.
    pub fn eval_on_matrix(&self, m: &AdjacencyMatrix) -> Vec<Vec<BigInt>> {
        let pows = PowerTable::new(m, self.degree());
        pows.eval(self)
    }

    /// True when substituting `m` yields the zero matrix.
    pub fn annihilates(&self, m: &AdjacencyMatrix) -> bool {
        matrix_is_zero(&self.eval_on_matrix(m))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            let sign_negative = c.sign() == num_bigint::Sign::Minus;
            if first {
                if sign_negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match (deg, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{deg}")?,
                (_, false) => write!(f, "{mag}*x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(lambda*I - A)` by the division-free
/// Berkowitz recurrence over exact integers.
pub fn oracle_char_poly(m: &AdjacencyMatrix, cap: usize) -> Result<DensePoly> {
    let n = m.size();
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "characteristic polynomial oracle capped at {cap}, matrix is {n}"
        )));
    }
    let a = m.to_dense();
    Ok(berkowitz(&a))
}

fn berkowitz(a: &[Vec<BigInt>]) -> DensePoly {
    let n = a.len();
    // Descending coefficients of the leading principal characteristic
    // polynomials, grown one row/column at a time.
    let mut p = vec![BigInt::one()];
    for m in 1..=n {
        // col0 = [1, -a[m-1][m-1], -s_0, ..., -s_{m-2}] where
        // s_j = R * M^j * C for the bordering row R and column C.
        let mut col0 = Vec::with_capacity(m + 1);
        col0.push(BigInt::one());
        col0.push(-a[m - 1][m - 1].clone());
        if m >= 2 {
            let mut v: Vec<BigInt> = (0..m - 1).map(|i| a[i][m - 1].clone()).collect();
            for j in 0..m - 1 {
                let mut s = BigInt::zero();
                for i in 0..m - 1 {
                    if !a[m - 1][i].is_zero() && !v[i].is_zero() {
                        s += &a[m - 1][i] * &v[i];
                    }
                }
                col0.push(-s);
                if j < m - 2 {
                    let mut next = vec![BigInt::zero(); m - 1];
                    for (row, slot) in next.iter_mut().enumerate() {
                        for i in 0..m - 1 {
                            if !a[row][i].is_zero() && !v[i].is_zero() {
                                *slot += &a[row][i] * &v[i];
                            }
                        }
                    }
                    v = next;
                }
            }
        }
        let mut next = vec![BigInt::zero(); m + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                if let Some(c) = col0.get(i - j) {
                    if !c.is_zero() && !pj.is_zero() {
                        *slot += c * pj;
                    }
                }
            }
        }
        p = next;
    }
    p.reverse();
    DensePoly::from_coeffs(p)
}

/// Minimal monic annihilating polynomial of a functional 0/1 matrix.
///
/// The matrix encodes a successor function, so its minimal polynomial
/// divides `lambda^a * prod (lambda^(r_i) - 1)^(m_i)` where the `r_i`
/// are the cycle lengths found by iterating the successor map. The
/// search scans candidates `lambda^h * (lambda^L - 1)` with `L`
/// ranging over divisors of `lcm(r_i)` in ascending total degree, and
/// then verifies minimality by checking that no maximal proper divisor
/// (dropping one `lambda` or one cyclotomic factor) annihilates.
pub fn oracle_min_poly(m: &AdjacencyMatrix, cap: usize) -> Result<DensePoly> {
    let n = m.size();
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "minimal polynomial oracle capped at {cap}, matrix is {n}"
        )));
    }
    let cycle_lcm = successor_cycle_lcm(&m.target);
    let ls: Vec<u64> = divisors(cycle_lcm);
    let pows = PowerTable::new(m, n);

    let mut found: Option<(usize, usize)> = None;
    'outer: for deg in 1..=n {
        for &l in &ls {
            let l = l as usize;
            if l > deg {
                break;
            }
            let h = deg - l;
            if pows.pow(h + l) == pows.pow(h) {
                found = Some((h, l));
                break 'outer;
            }
        }
    }
    let Some((h, l)) = found else {
        return Err(Error::Internal(
            "no candidate annihilates; matrix is not functional".into(),
        ));
    };

    // Minimality: no maximal proper divisor may annihilate.
    if h >= 1 && pows.pow(h - 1 + l) == pows.pow(h - 1) {
        return Err(Error::Internal("lambda exponent not minimal".into()));
    }
    let full = DensePoly::monomial(h).mul(&DensePoly::x_pow_minus_one(l));
    for d in divisors(l as u64) {
        let reduced = full
            .div_exact(&cyclotomic(d as usize))
            .expect("cyclotomic factors divide exactly");
        if matrix_is_zero(&pows.eval(&reduced)) {
            return Err(Error::Internal(format!(
                "candidate family incomplete: dropping the order-{d} cyclotomic still annihilates"
            )));
        }
    }
    Ok(full)
}

/// lcm of the cycle lengths of a successor table.
fn successor_cycle_lcm(succ: &[usize]) -> u64 {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for &b in succ {
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&a| indeg[a] == 0).collect();
    while let Some(a) = stack.pop() {
        let b = succ[a];
        indeg[b] -= 1;
        if indeg[b] == 0 {
            stack.push(b);
        }
    }
    let mut acc = 1u64;
    let mut seen = vec![false; n];
    for start in 0..n {
        if indeg[start] == 0 || seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut v = start;
        loop {
            seen[v] = true;
            len += 1;
            v = succ[v];
            if v == start {
                break;
            }
        }
        acc = lcm(acc, len);
    }
    acc
}

/// The cyclotomic polynomial of order `d`, by exact division of
/// `x^d - 1` by the lower-order cyclotomics.
pub fn cyclotomic(d: usize) -> DensePoly {
    assert!(d >= 1);
    let mut acc = DensePoly::x_pow_minus_one(d);
    for e in divisors(d as u64) {
        if (e as usize) < d {
            acc = acc
                .div_exact(&cyclotomic(e as usize))
                .expect("cyclotomic division is exact");
        }
    }
    acc
}

/// Powers `A^0..A^max` of a functional matrix, for exact polynomial
/// evaluation.
struct PowerTable {
    pows: Vec<Vec<Vec<BigInt>>>,
}

impl PowerTable {
    fn new(m: &AdjacencyMatrix, max: usize) -> PowerTable {
        let n = m.size();
        let mut pows = Vec::with_capacity(max + 1);
        let mut ident = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in ident.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        pows.push(ident);
        let a = m.to_dense();
        for j in 1..=max {
            pows.push(mat_mul(&pows[j - 1], &a));
        }
        PowerTable { pows }
    }

    fn pow(&self, e: usize) -> &Vec<Vec<BigInt>> {
        &self.pows[e]
    }

    fn eval(&self, p: &DensePoly) -> Vec<Vec<BigInt>> {
        let n = self.pows[0].len();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for (deg, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = self.pow(deg);
            for i in 0..n {
                for j in 0..n {
                    if !m[i][j].is_zero() {
                        out[i][j] += c * &m[i][j];
                    }
                }
            }
        }
        out
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..n {
                if !b[j][k].is_zero() {
                    out[i][k] += &a[i][j] * &b[j][k];
                }
            }
        }
    }
    out
}

fn matrix_is_zero(m: &[Vec<BigInt>]) -> bool {
    m.iter().all(|row| row.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_char_poly() {
        let p = char_poly(28, 2).unwrap();
        assert_eq!(p.lambda_power, 21);
        assert_eq!(p.cycle_factors, vec![(1, 1), (3, 2)]);
        assert_eq!(p.degree(), 28);
        assert_eq!(p.to_string(), "x^21 * (x - 1) * (x^3 - 1)^2");

        let p = char_poly(9, 1).unwrap();
        assert_eq!(p.lambda_power, 0);
        assert_eq!(p.cycle_factors, vec![(1, 9)]);
        assert_eq!(p.to_string(), "(x - 1)^9");

        let p = char_poly(6, 6).unwrap();
        assert_eq!(p.lambda_power, 5);
        assert_eq!(p.cycle_factors, vec![(1, 1)]);
    }

    #[test]
    fn closed_form_min_poly() {
        let p = min_poly(28, 2).unwrap();
        assert_eq!(p.lambda_power, 2);
        assert_eq!(p.cycle_factors, vec![(3, 1)]);
        assert_eq!(p.to_string(), "x^2 * (x^3 - 1)");
        assert_eq!(p.expand(), DensePoly::from_i64(&[0, 0, -1, 0, 0, 1]));

        let p = min_poly(9, 1).unwrap();
        assert_eq!(p.to_string(), "(x - 1)");

        let p = min_poly(6, 6).unwrap();
        assert_eq!(p.expand(), DensePoly::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn expansion_examples() {
        let p = FactoredPoly {
            lambda_power: 2,
            cycle_factors: vec![(3, 1)],
        };
        assert_eq!(p.expand(), DensePoly::from_i64(&[0, 0, -1, 0, 0, 1]));
        assert_eq!(p.expand().to_string(), "x^5 - x^2");
    }

    #[test]
    fn spectrum_examples() {
        let s = char_poly(28, 2).unwrap().spectrum();
        assert_eq!(
            s,
            vec![
                (Eigenvalue::Zero, 21),
                (Eigenvalue::RootOfUnity { order: 1, index: 0 }, 3),
                (Eigenvalue::RootOfUnity { order: 3, index: 1 }, 2),
                (Eigenvalue::RootOfUnity { order: 3, index: 2 }, 2),
            ]
        );
        let s = char_poly(9, 1).unwrap().spectrum();
        assert_eq!(
            s,
            vec![(Eigenvalue::RootOfUnity { order: 1, index: 0 }, 9)]
        );
    }

    #[test]
    fn canonical_ordering_blocks() {
        let g = PowerDigraph::build(28, 2).unwrap();
        let m = canonical_matrix(&g);
        // Identity component first: 0, its child 14, then leaves 7, 21.
        assert_eq!(&m.ordering()[0..4], &[0, 14, 7, 21]);
        assert_eq!(m.entry(0, 0), 1);
        // Second and third 12x12 blocks are byte-identical.
        let block = |offset: usize| -> Vec<Vec<u8>> {
            (0..12)
                .map(|i| (0..12).map(|j| m.entry(offset + i, offset + j)).collect())
                .collect()
        };
        assert_eq!(block(4), block(16));
        // Row sums are all 1.
        for i in 0..28 {
            let sum: u32 = (0..28).map(|j| m.entry(i, j) as u32).sum();
            assert_eq!(sum, 1);
        }
    }

    #[test]
    fn berkowitz_small_cases() {
        let ident = AdjacencyMatrix::from_successor_table(vec![0, 1, 2]);
        let p = oracle_char_poly(&ident, 64).unwrap();
        // (x-1)^3
        assert_eq!(p, DensePoly::from_i64(&[-1, 3, -3, 1]));

        let cycle3 = AdjacencyMatrix::from_successor_table(vec![1, 2, 0]);
        let p = oracle_char_poly(&cycle3, 64).unwrap();
        assert_eq!(p, DensePoly::from_i64(&[-1, 0, 0, 1]));

        assert!(matches!(
            oracle_char_poly(&ident, 2),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn berkowitz_matches_closed_form_g28() {
        let g = PowerDigraph::build(28, 2).unwrap();
        let m = canonical_matrix(&g);
        let oracle = oracle_char_poly(&m, 64).unwrap();
        assert_eq!(oracle, char_poly(28, 2).unwrap().expand());
    }

    #[test]
    fn min_poly_oracle_cases() {
        let ident = AdjacencyMatrix::from_successor_table(vec![0, 1]);
        assert_eq!(
            oracle_min_poly(&ident, 40).unwrap(),
            DensePoly::from_i64(&[-1, 1])
        );

        let g = PowerDigraph::build(6, 6).unwrap();
        let m = canonical_matrix(&g);
        assert_eq!(
            oracle_min_poly(&m, 40).unwrap(),
            DensePoly::from_i64(&[0, -1, 1])
        );

        let g = PowerDigraph::build(28, 2).unwrap();
        let m = canonical_matrix(&g);
        assert_eq!(
            oracle_min_poly(&m, 40).unwrap(),
            DensePoly::from_i64(&[0, 0, -1, 0, 0, 1])
        );
    }

    #[test]
    fn min_poly_oracle_rejects_mixed_cycle_forest() {
        // A swap plus a 3-cycle: the minimal polynomial is
        // (x+1)(x^3-1), which is not of the searched shape.
        let m = AdjacencyMatrix::from_successor_table(vec![1, 0, 3, 4, 2]);
        assert!(matches!(oracle_min_poly(&m, 40), Err(Error::Internal(_))));
    }

    #[test]
    fn annihilation_and_divisibility() {
        let g = PowerDigraph::build(28, 2).unwrap();
        let m = canonical_matrix(&g);
        let mp = min_poly(28, 2).unwrap();
        assert!(mp.expand().annihilates(&m));
        let reduced = FactoredPoly {
            lambda_power: 1,
            cycle_factors: vec![(3, 1)],
        };
        assert!(!reduced.expand().annihilates(&m));
        let cp = char_poly(28, 2).unwrap().expand();
        assert!(cp.div_exact(&mp.expand()).is_some());
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), DensePoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), DensePoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), DensePoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), DensePoly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn dense_poly_division() {
        let a = DensePoly::x_pow_minus_one(6);
        let b = DensePoly::x_pow_minus_one(3);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, DensePoly::from_i64(&[1, 0, 0, 1]));
        assert!(a.div_exact(&DensePoly::x_pow_minus_one(4)).is_none());
    }
}
