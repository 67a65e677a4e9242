//! The classical TI marginal problem.
//!
//! A distribution `P` over a window of `n` consecutive sites of an infinite
//! translation-invariant chain must satisfy the consistency condition that
//! its left and right (n−1)-site marginals coincide. That single linear
//! condition is also sufficient: any consistent window extends recursively
//! to arbitrarily long TI-consistent windows.
//!
//! The extreme points of the consistent set have a combinatorial shape:
//! uniform distributions over *irreducible domino loops* — cyclic tile
//! sequences overlapping in n−1 symbols that never revisit an (n−1)-tuple.
//! Equivalently, simple cycles of the de Bruijn graph whose nodes are
//! (n−1)-tuples and whose edges are n-tuples. This module enumerates them,
//! maps them to distributions, and decomposes any consistent distribution
//! into a convex combination of loop distributions.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default tolerance when checking TI consistency as a precondition.
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// Default cap on the number of de Bruijn edges (dⁿ) for enumeration.
pub const EDGE_CAP: usize = 1_000_000;

/// Cap on dense probability-table sizes produced by [`JointDistribution::extend`].
pub const TABLE_CAP: usize = 10_000_000;

/// Probability table over outcome strings of a finite window.
///
/// Entries are indexed big-endian: the first site is the most significant
/// base-`d` digit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    d: usize,
    n: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(d: usize, n: usize, probs: Vec<f64>) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidDistribution(
                "alphabet size and window must be positive".into(),
            ));
        }
        let len = d.checked_pow(n as u32).ok_or_else(|| {
            Error::InvalidDistribution(format!("table size d^n overflows for d={d}, n={n}"))
        })?;
        if probs.len() != len {
            return Err(Error::InvalidDistribution(format!(
                "expected {len} entries for d={d}, n={n}, got {}",
                probs.len()
            )));
        }
        if let Some(&bad) = probs.iter().find(|&&p| p < -1e-12 || !p.is_finite()) {
            return Err(Error::InvalidDistribution(format!(
                "negative or non-finite entry {bad}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Self { d, n, probs })
    }

    /// Unvalidated constructor for intermediate accumulation steps.
    pub(crate) fn raw(d: usize, n: usize, probs: Vec<f64>) -> Self {
        Self { d, n, probs }
    }

    pub fn uniform(d: usize, n: usize) -> Self {
        let len = d.pow(n as u32);
        Self {
            d,
            n,
            probs: vec![1.0 / len as f64; len],
        }
    }

    pub fn alphabet(&self) -> usize {
        self.d
    }

    pub fn window(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, outcome: &[usize]) -> f64 {
        self.probs[self.index_of(outcome)]
    }

    pub fn index_of(&self, outcome: &[usize]) -> usize {
        assert_eq!(outcome.len(), self.n);
        outcome.iter().fold(0, |acc, &x| {
            assert!(x < self.d);
            acc * self.d + x
        })
    }

    /// Marginal over sites 1..n−1 (drop the last site).
    pub fn left_marginal(&self) -> Vec<f64> {
        let m = self.probs.len() / self.d;
        let mut out = vec![0.0; m];
        for (i, chunk) in self.probs.chunks_exact(self.d).enumerate() {
            out[i] = chunk.iter().sum();
        }
        out
    }

    /// Marginal over sites 2..n (drop the first site).
    pub fn right_marginal(&self) -> Vec<f64> {
        let m = self.probs.len() / self.d;
        let mut out = vec![0.0; m];
        for (a, block) in self.probs.chunks_exact(m).enumerate() {
            let _ = a;
            for (j, &p) in block.iter().enumerate() {
                out[j] += p;
            }
        }
        out
    }

    /// Largest entrywise difference between the two (n−1)-site marginals.
    pub fn consistency_defect(&self) -> f64 {
        if self.n == 1 {
            return 0.0;
        }
        self.left_marginal()
            .iter()
            .zip(self.right_marginal())
            .fold(0.0f64, |m, (&l, r)| m.max((l - r).abs()))
    }

    /// Marginal on the (not necessarily adjacent) site pair `i < j`.
    pub fn pair_marginal(&self, i: usize, j: usize) -> Result<Self> {
        if i >= j || j >= self.n {
            return Err(Error::OutOfRange(format!(
                "pair ({i}, {j}) out of 0..{}",
                self.n
            )));
        }
        let d = self.d;
        let mut out = vec![0.0; d * d];
        let si = d.pow((self.n - 1 - i) as u32);
        let sj = d.pow((self.n - 1 - j) as u32);
        for (idx, &p) in self.probs.iter().enumerate() {
            let xi = (idx / si) % d;
            let xj = (idx / sj) % d;
            out[xi * d + xj] += p;
        }
        JointDistribution::new(d, 2, out)
    }

    /// Product composition: P(x)·Q(y) on the concatenated window.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "alphabets {} and {} differ",
                self.d, other.d
            )));
        }
        let mut probs = Vec::with_capacity(self.probs.len() * other.probs.len());
        for &a in &self.probs {
            for &b in &other.probs {
                probs.push(a * b);
            }
        }
        // Products of valid distributions can drift slightly below the 1e-12
        // sum tolerance; renormalize the rounding away.
        let sum: f64 = probs.iter().sum();
        if sum > 0.0 && (sum - 1.0).abs() > 1e-15 {
            for p in &mut probs {
                *p /= sum;
            }
        }
        JointDistribution::new(self.d, self.n + other.n, probs)
    }

    /// Marginal on a consecutive window of `len` sites starting at `start`
    /// (0-based).
    pub fn window_marginal(&self, start: usize, len: usize) -> Result<Self> {
        if start + len > self.n || len == 0 {
            return Err(Error::OutOfRange(format!(
                "window [{start}, {}) out of 0..{}",
                start + len,
                self.n
            )));
        }
        let suffix = self.n - start - len; // sites after the window
        let d = self.d;
        let size_win = d.pow(len as u32);
        let size_suf = d.pow(suffix as u32);
        let size_pre = d.pow(start as u32);
        let mut out = vec![0.0; size_win];
        for pre in 0..size_pre {
            for (w, slot) in out.iter_mut().enumerate() {
                let base = (pre * size_win + w) * size_suf;
                *slot += self.probs[base..base + size_suf].iter().sum::<f64>();
            }
        }
        JointDistribution::new(d, len, out)
    }
}

/// Left marginal equals right marginal entrywise within `tol`.
pub fn check_ti_consistency(p: &JointDistribution, tol: f64) -> bool {
    p.consistency_defect() <= tol
}

/// Recursive TI extension of a consistent window to `target_sites` sites.
///
/// Where the conditional is undefined (zero-probability context) the uniform
/// conditional is used, which keeps the output a valid distribution.
pub fn extend(p: &JointDistribution, target_sites: usize) -> Result<JointDistribution> {
    if !check_ti_consistency(p, CONSISTENCY_TOL) {
        return Err(Error::InconsistentMarginal(p.consistency_defect()));
    }
    if target_sites < p.n {
        return Err(Error::OutOfRange(format!(
            "target {target_sites} smaller than window {}",
            p.n
        )));
    }
    let d = p.d;
    let final_size = d
        .checked_pow(target_sites as u32)
        .filter(|&s| s <= TABLE_CAP)
        .ok_or(Error::CapExceeded {
            actual: target_sites,
            cap: TABLE_CAP,
        })?;
    let _ = final_size;

    // Conditional context: the last n−1 symbols.
    let ctx_size = d.pow((p.n - 1) as u32);
    let left = p.left_marginal();

    let mut cur = p.probs.clone();
    for _t in p.n..target_sites {
        let mut next = vec![0.0; cur.len() * d];
        for (idx, &q) in cur.iter().enumerate() {
            if q == 0.0 {
                continue;
            }
            let ctx = idx % ctx_size;
            let denom = left[ctx];
            for c in 0..d {
                let cond = if denom > 0.0 {
                    p.probs[ctx * d + c] / denom
                } else {
                    1.0 / d as f64
                };
                next[idx * d + c] = q * cond;
            }
        }
        cur = next;
    }
    // Renormalization guard: the construction preserves the sum exactly up to
    // rounding, but long extensions accumulate error.
    let sum: f64 = cur.iter().sum();
    if (sum - 1.0).abs() > 1e-13 {
        for v in &mut cur {
            *v /= sum;
        }
    }
    JointDistribution::new(d, target_sites, cur)
}

/// Cyclic sequence of n-symbol tiles overlapping in n−1 symbols, visiting no
/// (n−1)-tuple twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominoLoop {
    d: usize,
    n: usize,
    /// Encoded tiles (big-endian base-d n-tuples), canonical minimal rotation.
    tiles: Vec<usize>,
}

impl DominoLoop {
    /// Validates the chaining and irreducibility invariants.
    pub fn new(d: usize, n: usize, tiles: Vec<usize>) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::InvalidLoop("empty tile sequence".into()));
        }
        let max = d.pow(n as u32);
        if let Some(&t) = tiles.iter().find(|&&t| t >= max) {
            return Err(Error::InvalidLoop(format!("tile {t} out of range for d={d}, n={n}")));
        }
        if !is_irreducible_encoded(d, n, &tiles) {
            return Err(Error::InvalidLoop(
                "tiles do not form an irreducible domino loop".into(),
            ));
        }
        Ok(Self {
            d,
            n,
            tiles: canonical_rotation(tiles),
        })
    }

    pub fn alphabet(&self) -> usize {
        self.d
    }

    pub fn window(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Encoded tiles in canonical rotation.
    pub fn tiles(&self) -> &[usize] {
        &self.tiles
    }

    /// Decode tile `s` into its symbol vector.
    pub fn tile_symbols(&self, s: usize) -> Vec<usize> {
        decode(self.tiles[s], self.d, self.n)
    }
}

fn decode(mut value: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = value % d;
        value /= d;
    }
    out
}

/// Lexicographically minimal rotation of the tile sequence.
fn canonical_rotation(tiles: Vec<usize>) -> Vec<usize> {
    let m = tiles.len();
    let mut best = 0usize;
    for start in 1..m {
        for k in 0..m {
            let a = tiles[(start + k) % m];
            let b = tiles[(best + k) % m];
            if a < b {
                best = start;
                break;
            }
            if a > b {
                break;
            }
        }
    }
    (0..m).map(|k| tiles[(best + k) % m]).collect()
}

fn is_irreducible_encoded(d: usize, n: usize, tiles: &[usize]) -> bool {
    if tiles.is_empty() {
        return false;
    }
    if n == 1 {
        // Nodes are empty tuples; only single tiles avoid a node revisit.
        return tiles.len() == 1 && tiles[0] < d;
    }
    let node_size = d.pow((n - 1) as u32);
    let m = tiles.len();
    let mut seen = std::collections::HashSet::with_capacity(m);
    for s in 0..m {
        let src = tiles[s] / d;
        let dst = tiles[s] % node_size;
        let next_src = tiles[(s + 1) % m] / d;
        if dst != next_src {
            return false; // chaining broken
        }
        if !seen.insert(src) {
            return false; // node revisited
        }
    }
    true
}

/// True iff the symbol vectors form a closed domino chain visiting each
/// (n−1)-tuple node at most once.
pub fn is_irreducible_loop(d: usize, tiles: &[Vec<usize>]) -> bool {
    if tiles.is_empty() || tiles.iter().any(|t| t.is_empty() || t.iter().any(|&x| x >= d)) {
        return false;
    }
    let n = tiles[0].len();
    if tiles.iter().any(|t| t.len() != n) {
        return false;
    }
    let encoded: Vec<usize> = tiles
        .iter()
        .map(|t| t.iter().fold(0, |acc, &x| acc * d + x))
        .collect();
    is_irreducible_encoded(d, n, &encoded)
}

/// All irreducible domino loops up to cyclic rotation, i.e. all simple cycles
/// of the de Bruijn graph B(d, n−1).
pub fn enumerate_extreme_points(d: usize, n: usize) -> Result<Vec<DominoLoop>> {
    enumerate_extreme_points_with_cap(d, n, EDGE_CAP)
}

/// [`enumerate_extreme_points`] with an explicit cap on dⁿ.
pub fn enumerate_extreme_points_with_cap(d: usize, n: usize, cap: usize) -> Result<Vec<DominoLoop>> {
    if d == 0 || n == 0 {
        return Err(Error::OutOfRange("alphabet and window must be positive".into()));
    }
    let edges = d
        .checked_pow(n as u32)
        .ok_or(Error::CapExceeded { actual: usize::MAX, cap })?;
    if edges > cap {
        return Err(Error::CapExceeded { actual: edges, cap });
    }

    if n == 1 {
        return (0..d).map(|c| DominoLoop::new(d, 1, vec![c])).collect();
    }

    let node_count = d.pow((n - 1) as u32);
    let shift = d.pow((n - 2) as u32);
    let mut loops = Vec::new();

    // DFS rooted at each start node, visiting only nodes >= start; every
    // simple cycle is reported exactly once, at its minimal node.
    let mut on_path = vec![false; node_count];
    let mut path: Vec<usize> = Vec::new();
    // Iterative DFS: stack of (node, next symbol to try).
    for start in 0..node_count {
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        on_path[start] = true;
        path.clear();
        path.push(start);
        while let Some(&mut (node, ref mut c)) = stack.last_mut() {
            if *c == d {
                stack.pop();
                path.pop();
                on_path[node] = false;
                continue;
            }
            let sym = *c;
            *c += 1;
            let succ = (node % shift) * d + sym;
            if succ == start {
                // Tile k connects path[k] -> path[k+1] (cyclically); its low
                // digit is the successor node's last symbol.
                let m = path.len();
                let tiles: Vec<usize> = (0..m)
                    .map(|k| {
                        let u = path[k];
                        let w = if k + 1 < m { path[k + 1] } else { start };
                        u * d + (w % d)
                    })
                    .collect();
                loops.push(DominoLoop::new(d, n, tiles)?);
            } else if succ > start && !on_path[succ] {
                on_path[succ] = true;
                path.push(succ);
                stack.push((succ, 0));
            }
        }
    }

    loops.sort_by(|a, b| (a.len(), &a.tiles).cmp(&(b.len(), &b.tiles)));
    Ok(loops)
}

/// Uniform distribution over the loop's tiles.
pub fn loop_distribution(lp: &DominoLoop) -> JointDistribution {
    let len = lp.d.pow(lp.n as u32);
    let mut probs = vec![0.0; len];
    let w = 1.0 / lp.len() as f64;
    for &t in lp.tiles() {
        probs[t] += w;
    }
    JointDistribution::new(lp.d, lp.n, probs).expect("loop distributions are valid")
}

/// Convex decomposition into distinct loop distributions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopDecomposition {
    pub terms: Vec<(f64, DominoLoop)>,
}

impl LoopDecomposition {
    /// Σ weight · loop_distribution(loop).
    pub fn recombine(&self) -> Result<JointDistribution> {
        let (_, first) = self
            .terms
            .first()
            .ok_or_else(|| Error::InvalidLoop("empty decomposition".into()))?;
        let (d, n) = (first.alphabet(), first.window());
        let mut probs = vec![0.0; d.pow(n as u32)];
        for (w, lp) in &self.terms {
            let share = w / lp.len() as f64;
            for &t in lp.tiles() {
                probs[t] += share;
            }
        }
        JointDistribution::new(d, n, probs)
    }
}

/// Peel a TI-consistent distribution into loop distributions.
///
/// Each round extracts the loop found by walking in-support tiles from the
/// lexicographically smallest one (smallest successor symbol first) and
/// removes as much of its uniform distribution as the support allows, zeroing
/// at least one entry. Terminates after at most |support| rounds.
pub fn decompose(p: &JointDistribution) -> Result<LoopDecomposition> {
    if !check_ti_consistency(p, CONSISTENCY_TOL) {
        return Err(Error::InconsistentMarginal(p.consistency_defect()));
    }
    const SUPPORT_EPS: f64 = 1e-12;
    let d = p.d;
    let n = p.n;

    if n == 1 {
        let terms = p
            .probs
            .iter()
            .enumerate()
            .filter(|(_, &q)| q > SUPPORT_EPS)
            .map(|(c, &q)| Ok((q, DominoLoop::new(d, 1, vec![c])?)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(LoopDecomposition { terms });
    }

    let node_size = d.pow((n - 1) as usize as u32);
    let mut residual = p.probs.clone();
    let mut terms: Vec<(f64, DominoLoop)> = Vec::new();
    let support_budget = residual.iter().filter(|&&q| q > SUPPORT_EPS).count() + 1;

    for _round in 0..support_budget {
        let remaining: f64 = residual.iter().sum();
        if remaining <= 1e-10 {
            break;
        }
        if let Some(&bad) = residual.iter().find(|&&q| q < -1e-9) {
            return Err(Error::NegativeResidual(bad));
        }
        // Smallest in-support tile.
        let start_tile = match residual.iter().position(|&q| q > SUPPORT_EPS) {
            Some(t) => t,
            None => break,
        };

        // Walk: from each node pick the smallest in-support outgoing symbol
        // (fall back to the largest-mass edge if rounding emptied the row).
        let mut walk_tiles: Vec<usize> = vec![start_tile];
        let mut node_pos: std::collections::HashMap<usize, usize> = Default::default();
        node_pos.insert(start_tile / d, 0);
        let mut node = start_tile % node_size;
        let loop_tiles = loop {
            if let Some(&pos) = node_pos.get(&node) {
                break walk_tiles[pos..].to_vec();
            }
            let row = node * d;
            let next_sym = (0..d)
                .find(|&c| residual[row + c] > SUPPORT_EPS)
                .unwrap_or_else(|| {
                    (0..d)
                        .max_by(|&a, &b| {
                            residual[row + a].partial_cmp(&residual[row + b]).unwrap()
                        })
                        .unwrap()
                });
            node_pos.insert(node, walk_tiles.len());
            let tile = row + next_sym;
            walk_tiles.push(tile);
            node = tile % node_size;
        };

        let m = loop_tiles.len();
        let lambda = loop_tiles
            .iter()
            .map(|&t| residual[t])
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        if lambda <= 0.0 {
            // Walk was forced through a zero-mass edge; nothing peelable.
            break;
        }
        for &t in &loop_tiles {
            residual[t] = (residual[t] - lambda).max(0.0);
        }
        terms.push((m as f64 * lambda, DominoLoop::new(d, n, loop_tiles)?));
    }

    Ok(LoopDecomposition { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(d: usize, n: usize, entries: &[(usize, f64)]) -> JointDistribution {
        let mut probs = vec![0.0; d.pow(n as u32)];
        for &(i, p) in entries {
            probs[i] = p;
        }
        JointDistribution::new(d, n, probs).unwrap()
    }

    #[test]
    fn uniform_is_consistent() {
        let u = JointDistribution::uniform(2, 3);
        assert!(check_ti_consistency(&u, 1e-15));
    }

    #[test]
    fn product_of_different_marginals_is_inconsistent() {
        // p ⊗ q with p = (1,0), q = (0,1): P(01) = 1.
        let p = dist(2, 2, &[(1, 1.0)]);
        assert!(!check_ti_consistency(&p, 1e-10));
        assert!(extend(&p, 3).is_err());
        assert!(decompose(&p).is_err());
    }

    #[test]
    fn enumerate_d1() {
        for n in 1..5 {
            let loops = enumerate_extreme_points(1, n).unwrap();
            assert_eq!(loops.len(), 1);
            assert_eq!(loops[0].len(), 1);
        }
    }

    #[test]
    fn enumerate_d2_n2() {
        let loops = enumerate_extreme_points(2, 2).unwrap();
        // {(0,0)}, {(1,1)}, {(0,1),(1,0)}
        assert_eq!(loops.len(), 3);
        let tile_sets: Vec<Vec<usize>> = loops.iter().map(|l| l.tiles().to_vec()).collect();
        assert!(tile_sets.contains(&vec![0b00]));
        assert!(tile_sets.contains(&vec![0b11]));
        assert!(tile_sets.contains(&vec![0b01, 0b10]));
    }

    #[test]
    fn loop_lengths_bounded_by_node_count() {
        for (d, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
            for lp in enumerate_extreme_points(d, n).unwrap() {
                assert!(lp.len() <= d.pow((n - 1) as u32));
                assert!(lp.len() <= d.pow(n as u32));
            }
        }
    }

    #[test]
    fn loop_distributions_are_exactly_consistent() {
        for (d, n) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            for lp in enumerate_extreme_points(d, n).unwrap() {
                let q = loop_distribution(&lp);
                assert_eq!(q.consistency_defect(), 0.0, "loop {:?}", lp.tiles());
            }
        }
    }

    #[test]
    fn point_mass_loop_distribution() {
        let lp = DominoLoop::new(2, 3, vec![0b000]).unwrap();
        let q = loop_distribution(&lp);
        assert_eq!(q.probs()[0], 1.0);
    }

    #[test]
    fn two_cycle_loop_distribution() {
        let lp = DominoLoop::new(2, 2, vec![0b01, 0b10]).unwrap();
        let q = loop_distribution(&lp);
        assert_eq!(q.probs(), &[0.0, 0.5, 0.5, 0.0]);
    }

    #[test]
    fn irreducibility_checks() {
        assert!(is_irreducible_loop(2, &[vec![0, 0]]));
        assert!(!is_irreducible_loop(
            2,
            &[vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]]
        ));
        // Two node-disjoint cycles listed as one walk (d=3, n=2): chaining
        // breaks at the junction.
        assert!(!is_irreducible_loop(
            3,
            &[vec![0, 1], vec![1, 0], vec![2, 2]]
        ));
    }

    #[test]
    fn extend_uniform() {
        let u = JointDistribution::uniform(2, 2);
        let q = extend(&u, 4).unwrap();
        assert_eq!(q.window(), 4);
        for &p in q.probs() {
            assert!((p - 1.0 / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn extend_two_cycle() {
        // ½ on 01, ½ on 10 extended to 3 sites: uniform over {010, 101}.
        let lp = DominoLoop::new(2, 2, vec![0b01, 0b10]).unwrap();
        let q = extend(&loop_distribution(&lp), 3).unwrap();
        let expect = dist(2, 3, &[(0b010, 0.5), (0b101, 0.5)]);
        for (a, b) in q.probs().iter().zip(expect.probs()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn extend_marginals_reproduce_input() {
        // All consecutive n-windows of the extension equal P.
        let p = dist(2, 2, &[(0b00, 0.4), (0b01, 0.2), (0b10, 0.2), (0b11, 0.2)]);
        assert!(check_ti_consistency(&p, 1e-12));
        let s = p.window() + 2;
        let q = extend(&p, s).unwrap();
        for k in 0..=(s - p.window()) {
            let w = q.window_marginal(k, p.window()).unwrap();
            for (a, b) in w.probs().iter().zip(p.probs()) {
                assert!((a - b).abs() < 1e-10, "window at {k}");
            }
        }
    }

    #[test]
    fn decompose_single_loop_is_identity() {
        let lp = DominoLoop::new(2, 3, vec![0b010, 0b101]).unwrap();
        let dec = decompose(&loop_distribution(&lp)).unwrap();
        assert_eq!(dec.terms.len(), 1);
        assert!((dec.terms[0].0 - 1.0).abs() < 1e-12);
        assert_eq!(dec.terms[0].1, lp);
    }

    #[test]
    fn decompose_recombines_mixture() {
        let l1 = DominoLoop::new(2, 2, vec![0b00]).unwrap();
        let l2 = DominoLoop::new(2, 2, vec![0b01, 0b10]).unwrap();
        let mix: Vec<f64> = loop_distribution(&l1)
            .probs()
            .iter()
            .zip(loop_distribution(&l2).probs())
            .map(|(a, b)| 0.5 * a + 0.5 * b)
            .collect();
        let p = JointDistribution::new(2, 2, mix).unwrap();
        let dec = decompose(&p).unwrap();
        let back = dec.recombine().unwrap();
        for (a, b) in back.probs().iter().zip(p.probs()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn decompose_uniform_d2_n2() {
        let p = JointDistribution::uniform(2, 2);
        let dec = decompose(&p).unwrap();
        let total: f64 = dec.terms.iter().map(|(w, _)| w).sum();
        assert!((total - 1.0).abs() < 1e-10);
        let back = dec.recombine().unwrap();
        for (a, b) in back.probs().iter().zip(p.probs()) {
            assert!((a - b).abs() < 1e-9);
        }
        // only the three d=2, n=2 loops may appear
        assert!(dec.terms.len() <= 3);
    }

    #[test]
    fn canonical_rotation_is_minimal() {
        let a = DominoLoop::new(2, 2, vec![0b10, 0b01]).unwrap();
        let b = DominoLoop::new(2, 2, vec![0b01, 0b10]).unwrap();
        assert_eq!(a, b);
    }
}
