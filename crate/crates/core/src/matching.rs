//! Maximum weight bipartite matching.
//!
//! [`solve_hungarian`] runs the Hungarian method on exact weights: the
//! rational weights of an instance are scaled to a common denominator and
//! solved in integer arithmetic, so results carry no rounding. Matchings need
//! not saturate either side; pairs without positive weight are never used.
//!
//! [`solve_family`] handles a group of instances that differ from a base
//! instance by one deleted right vertex each. The base is solved once and
//! every member is repaired from the base optimum with a single augmenting
//! phase on the dual-feasible residual.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::weights::Rational;

/// Limit on `left_size + right_size` for [`solve_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingInstance {
    left: usize,
    right: usize,
    weights: BTreeMap<(usize, usize), Rational>,
    id: u64,
}

impl MatchingInstance {
    pub fn new(left: usize, right: usize) -> Self {
        MatchingInstance {
            left,
            right,
            weights: BTreeMap::new(),
            id: 0,
        }
    }

    pub fn with_id(mut self, id: u64) -> Self {
        self.id = id;
        self
    }

    /// Build from `(left, right, weight)` triples.
    pub fn from_pairs(left: usize, right: usize, pairs: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut inst = MatchingInstance::new(left, right);
        for &(l, r, w) in pairs {
            inst.set(l, r, w)?;
        }
        Ok(inst)
    }

    /// Set the weight of a pair. Non-positive weights remove the pair.
    pub fn set(&mut self, l: usize, r: usize, w: Rational) -> Result<()> {
        if l >= self.left {
            return Err(Error::IndexOutOfRange {
                index: l,
                bound: self.left,
            });
        }
        if r >= self.right {
            return Err(Error::IndexOutOfRange {
                index: r,
                bound: self.right,
            });
        }
        if w > Rational::zero() {
            self.weights.insert((l, r), w);
        } else {
            self.weights.remove(&(l, r));
        }
        Ok(())
    }

    pub fn weight(&self, l: usize, r: usize) -> Option<Rational> {
        self.weights.get(&(l, r)).copied()
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Number of vertices, `left_size + right_size`.
    pub fn vertex_count(&self) -> usize {
        self.left + self.right
    }

    /// Number of pairs with strictly positive weight.
    pub fn pair_count(&self) -> usize {
        self.weights.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), Rational)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    /// Copy of the instance with right vertex `r` removed. Right indices
    /// above `r` shift down by one.
    pub fn without_right(&self, r: usize) -> Result<Self> {
        if r >= self.right {
            return Err(Error::IndexOutOfRange {
                index: r,
                bound: self.right,
            });
        }
        let weights = self
            .weights
            .iter()
            .filter(|(&(_, b), _)| b != r)
            .map(|(&(a, b), &w)| ((a, if b > r { b - 1 } else { b }), w))
            .collect();
        Ok(MatchingInstance {
            left: self.left,
            right: self.right - 1,
            weights,
            id: self.id,
        })
    }

    fn transposed(&self) -> Self {
        MatchingInstance {
            left: self.right,
            right: self.left,
            weights: self.weights.iter().map(|(&(a, b), &w)| ((b, a), w)).collect(),
            id: self.id,
        }
    }

    /// Integer matrix `rows x cols` of scaled weights, and the scale.
    fn scaled(&self) -> (Vec<Vec<i128>>, i128) {
        let scale = self
            .weights
            .values()
            .fold(1i128, |acc, w| acc.lcm(&(*w.denom() as i128)));
        let mut m = vec![vec![0i128; self.right]; self.left];
        for (&(l, r), w) in &self.weights {
            m[l][r] = *w.numer() as i128 * (scale / *w.denom() as i128);
        }
        (m, scale)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSolution {
    /// Sorted `(left, right)` pairs.
    pub pairs: Vec<(usize, usize)>,
    pub weight: Rational,
}

impl MatchingSolution {
    fn from_pairs(inst: &MatchingInstance, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.retain(|&(l, r)| inst.weight(l, r).is_some());
        pairs.sort_unstable();
        let weight = pairs
            .iter()
            .fold(Rational::zero(), |acc, &(l, r)| acc + inst.weight(l, r).unwrap());
        MatchingSolution { pairs, weight }
    }
}

const INF: i128 = i128::MAX / 4;

/// Hungarian method state for minimising `-weight` with rows assigned to
/// distinct columns. Indices are 1-based; row/column 0 is the sentinel.
struct Hungarian {
    rows: usize,
    cols: usize,
    cost: Vec<Vec<i128>>,
    u: Vec<i128>,
    v: Vec<i128>,
    /// `owner[j]`: row assigned to column `j`, 0 if free.
    owner: Vec<usize>,
    way: Vec<usize>,
}

impl Hungarian {
    /// `weights` is `rows x real_cols`; `extra_cols` zero-cost columns are
    /// appended so that rows may stay unmatched.
    fn new(weights: &[Vec<i128>], real_cols: usize, extra_cols: usize) -> Self {
        let rows = weights.len();
        let cols = real_cols + extra_cols;
        let mut cost = vec![vec![0i128; cols + 1]; rows + 1];
        for (i, row) in weights.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                cost[i + 1][j + 1] = -w;
            }
        }
        Hungarian {
            rows,
            cols,
            cost,
            u: vec![0; rows + 1],
            v: vec![0; cols + 1],
            owner: vec![0; cols + 1],
            way: vec![0; cols + 1],
        }
    }

    fn solve(&mut self) {
        for i in 1..=self.rows {
            self.augment(i, None);
        }
    }

    /// One phase: assign row `i` along a shortest augmenting path, never
    /// touching column `removed`.
    fn augment(&mut self, i: usize, removed: Option<usize>) {
        let m = self.cols;
        self.owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; m + 1];
        let mut used = vec![false; m + 1];
        if let Some(r) = removed {
            used[r] = true;
        }
        loop {
            used[j0] = true;
            let i0 = self.owner[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = self.cost[i0][j] - self.u[i0] - self.v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    self.way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if Some(j) == removed {
                    continue;
                }
                if used[j] {
                    self.u[self.owner[j]] += delta;
                    self.v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if self.owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = self.way[j0];
            self.owner[j0] = self.owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    /// `(row, column)` pairs, 0-based, restricted to the first `real_cols` columns.
    fn assignment(&self, real_cols: usize) -> Vec<(usize, usize)> {
        (1..=real_cols)
            .filter(|&j| self.owner[j] != 0)
            .map(|j| (self.owner[j] - 1, j - 1))
            .collect()
    }
}

/// Maximum weight matching by the Hungarian method, `O(k^3)` for `k` vertices.
pub fn solve_hungarian(inst: &MatchingInstance) -> MatchingSolution {
    if inst.pair_count() == 0 {
        return MatchingSolution {
            pairs: Vec::new(),
            weight: Rational::zero(),
        };
    }
    if inst.left > inst.right {
        let sol = solve_hungarian(&inst.transposed());
        let pairs = sol.pairs.into_iter().map(|(a, b)| (b, a)).collect();
        return MatchingSolution::from_pairs(inst, pairs);
    }
    let (weights, _) = inst.scaled();
    let mut h = Hungarian::new(&weights, inst.right, 0);
    h.solve();
    MatchingSolution::from_pairs(inst, h.assignment(inst.right))
}

/// Optimal weights of the family `{ base minus right vertex d | d in deletions }`.
///
/// Returns `(d, weight)` in the order of `deletions`. Each reported weight
/// equals `solve_hungarian(&base.without_right(d)?).weight`.
pub fn solve_family(base: &MatchingInstance, deletions: &[usize]) -> Result<Vec<(usize, Rational)>> {
    Ok(solve_family_full(base, deletions)?.1)
}

/// Like [`solve_family`], also returning the optimum of the base instance.
pub fn solve_family_full(
    base: &MatchingInstance,
    deletions: &[usize],
) -> Result<(MatchingSolution, Vec<(usize, Rational)>)> {
    if let Some(&d) = deletions.iter().find(|&&d| d >= base.right) {
        return Err(Error::IndexOutOfRange {
            index: d,
            bound: base.right,
        });
    }
    let (weights, scale) = base.scaled();
    let mut h = Hungarian::new(&weights, base.right, base.left);
    h.solve();
    let base_pairs = h.assignment(base.right);
    let base_solution = MatchingSolution::from_pairs(base, base_pairs);
    let scale = Rational::from_integer(scale as i64);

    let mut out = Vec::with_capacity(deletions.len());
    for &d in deletions {
        let col = d + 1;
        let row = h.owner[col];
        if row == 0 || weights[row - 1][d] == 0 {
            out.push((d, base_solution.weight));
            continue;
        }
        let mut repaired = Hungarian {
            rows: h.rows,
            cols: h.cols,
            cost: Vec::new(),
            u: h.u.clone(),
            v: h.v.clone(),
            owner: h.owner.clone(),
            way: h.way.clone(),
        };
        repaired.owner[col] = 0;
        // share the cost matrix instead of copying it per deletion
        std::mem::swap(&mut repaired.cost, &mut h.cost);
        repaired.augment(row, Some(col));
        std::mem::swap(&mut repaired.cost, &mut h.cost);
        let total: i128 = repaired
            .assignment(base.right)
            .into_iter()
            .map(|(i, j)| weights[i][j])
            .sum();
        out.push((d, Rational::from_integer(total as i64) / scale));
    }
    Ok((base_solution, out))
}

/// Exhaustive maximum over all matchings; a reference for small instances.
pub fn solve_bruteforce(inst: &MatchingInstance) -> Result<MatchingSolution> {
    if inst.vertex_count() > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "matching instance",
            size: inst.vertex_count(),
            limit: BRUTEFORCE_LIMIT,
        });
    }
    if inst.right > inst.left {
        let sol = solve_bruteforce(&inst.transposed())?;
        let pairs = sol.pairs.into_iter().map(|(a, b)| (b, a)).collect();
        return Ok(MatchingSolution::from_pairs(inst, pairs));
    }
    // best[i][mask]: optimum over left vertices i.. with right vertices in mask taken
    let (l, r) = (inst.left, inst.right);
    let full = 1usize << r;
    let mut best = vec![vec![Rational::zero(); full]; l + 1];
    for i in (0..l).rev() {
        for mask in 0..full {
            let mut b = best[i + 1][mask];
            for j in 0..r {
                if mask >> j & 1 == 0 {
                    if let Some(w) = inst.weight(i, j) {
                        b = b.max(w + best[i + 1][mask | 1 << j]);
                    }
                }
            }
            best[i][mask] = b;
        }
    }
    let mut pairs = Vec::new();
    let mut mask = 0;
    for i in 0..l {
        if best[i][mask] == best[i + 1][mask] {
            continue;
        }
        let j = (0..r)
            .find(|&j| {
                mask >> j & 1 == 0
                    && inst
                        .weight(i, j)
                        .is_some_and(|w| w + best[i + 1][mask | 1 << j] == best[i][mask])
            })
            .expect("consistent table");
        pairs.push((i, j));
        mask |= 1 << j;
    }
    Ok(MatchingSolution::from_pairs(inst, pairs))
}
