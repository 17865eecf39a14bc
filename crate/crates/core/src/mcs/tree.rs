//! Maximum common subtrees.
//!
//! `G` is rooted once (at a center vertex); `H` is used with every root.
//! The rooted parts of `G^r` are the subtrees below each vertex `g`; the
//! parts of `H` rooted at `h` are `H^h` itself and, for every neighbor `u`,
//! `H^h` without the branch through `u`. For every part pair the best
//! common subtree mapping root to root is the root weight plus a maximum
//! weight matching between the children of both roots. When both roots have
//! at least two children (compound roots) the matching is delegated to the
//! selected solver; otherwise it is a single maximum.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::instrument::{Collector, SolverKind};
use crate::matching::{self, MatchingInstance};
use crate::weights::{Rational, WeightScheme};

use super::{Hosts, McsMode, McsResult};

/// Vertex of minimum eccentricity, smallest id on ties.
pub fn tree_center(t: &LabeledGraph) -> VertexId {
    let ecc = |s: VertexId| {
        let mut dist = vec![usize::MAX; t.order()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        let mut far = 0;
        while let Some(u) = queue.pop_front() {
            far = far.max(dist[u]);
            for &(w, _) in t.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        far
    };
    t.vertices().min_by_key(|&v| (ecc(v), v)).unwrap_or(0)
}

pub fn mcs_tree(g: &LabeledGraph, h: &LabeledGraph, w: &WeightScheme, solver: SolverKind) -> Result<McsResult> {
    mcs_tree_with(g, h, w, solver, &Collector::new())
}

/// [`mcs_tree`] recording every matching solve in `collector`.
pub fn mcs_tree_with(
    g: &LabeledGraph,
    h: &LabeledGraph,
    w: &WeightScheme,
    solver: SolverKind,
    collector: &Collector,
) -> Result<McsResult> {
    require_tree(g)?;
    mcs_tree_rooted(g, tree_center(g), h, w, solver, collector)
}

/// [`mcs_tree`] with an explicit root for `G`.
pub fn mcs_tree_rooted(
    g: &LabeledGraph,
    root: VertexId,
    h: &LabeledGraph,
    w: &WeightScheme,
    solver: SolverKind,
    collector: &Collector,
) -> Result<McsResult> {
    require_tree(g)?;
    require_tree(h)?;
    g.check_vertex(root)?;
    let hosts = Hosts::new(g, h, w)?;
    let dp = TreeDp::run(&hosts, root, solver, collector)?;
    Ok(dp.best())
}

fn require_tree(t: &LabeledGraph) -> Result<()> {
    if t.order() > 0 && !t.is_connected() {
        return Err(Error::Disconnected {
            graph: t.name().to_string(),
        });
    }
    if !t.is_tree() {
        return Err(Error::NotATree {
            graph: t.name().to_string(),
        });
    }
    Ok(())
}

struct TreeDp<'a> {
    hosts: &'a Hosts<'a>,
    /// Children of each `G` vertex under the chosen root, with the edge.
    children: Vec<Vec<(VertexId, EdgeId)>>,
    /// `offset[h]`: index of the full part `H^h`; `offset[h] + 1 + i` is
    /// `H^h` without the branch through its `i`-th neighbor.
    offset: Vec<usize>,
    /// `back[h][i]`: position of `h` among the neighbors of its `i`-th neighbor.
    back: Vec<Vec<usize>>,
    /// `value[g][part]`: best rooted common subtree, `None` if labels differ.
    value: Vec<Vec<Option<Rational>>>,
}

impl<'a> TreeDp<'a> {
    fn run(hosts: &'a Hosts<'a>, root: VertexId, solver: SolverKind, collector: &Collector) -> Result<Self> {
        let (g, h) = (hosts.g, hosts.h);
        let mut children = vec![Vec::new(); g.order()];
        let mut order = Vec::with_capacity(g.order());
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, parent)) = stack.pop() {
            order.push(v);
            for &(c, e) in g.neighbors(v) {
                if c != parent {
                    children[v].push((c, e));
                    stack.push((c, v));
                }
            }
        }
        let mut offset = Vec::with_capacity(h.order());
        let mut parts = 0;
        for v in h.vertices() {
            offset.push(parts);
            parts += 1 + h.degree(v);
        }
        let back = h
            .vertices()
            .map(|v| {
                h.neighbors(v)
                    .iter()
                    .map(|&(d, _)| h.neighbors(d).iter().position(|&(x, _)| x == v).unwrap())
                    .collect()
            })
            .collect();
        let mut dp = TreeDp {
            hosts,
            children,
            offset,
            back,
            value: vec![Vec::new(); g.order()],
        };
        for &gv in order.iter().rev() {
            let mut row = vec![None; parts];
            for hv in h.vertices() {
                dp.fill(gv, hv, &mut row, solver, collector)?;
            }
            dp.value[gv] = row;
        }
        Ok(dp)
    }

    /// Matching weight of child `ci` of `gv` against neighbor `nj` of `hv`.
    fn pair_weight(&self, gv: VertexId, ci: usize, hv: VertexId, nj: usize) -> Option<Rational> {
        let (c, eg) = self.children[gv][ci];
        let (d, eh) = self.hosts.h.neighbors(hv)[nj];
        if !self.hosts.edges_match(eg, eh) {
            return None;
        }
        let sub = self.value[c][self.offset[d] + 1 + self.back[hv][nj]]?;
        Some(self.hosts.gw.edge[eg] + sub).filter(|w| *w > Rational::zero())
    }

    fn instance(&self, gv: VertexId, hv: VertexId, allowed: &[usize], id: u64) -> MatchingInstance {
        let mut inst = MatchingInstance::new(self.children[gv].len(), allowed.len()).with_id(id);
        for ci in 0..self.children[gv].len() {
            for (slot, &nj) in allowed.iter().enumerate() {
                if let Some(w) = self.pair_weight(gv, ci, hv, nj) {
                    inst.set(ci, slot, w).expect("indices in range");
                }
            }
        }
        inst
    }

    /// Best pair among `allowed`, for roots where one side has one child.
    fn single_best(&self, gv: VertexId, hv: VertexId, allowed: &[usize]) -> Option<(usize, usize, Rational)> {
        let mut best: Option<(usize, usize, Rational)> = None;
        for ci in 0..self.children[gv].len() {
            for &nj in allowed {
                if let Some(w) = self.pair_weight(gv, ci, hv, nj) {
                    if best.is_none_or(|b| w > b.2) {
                        best = Some((ci, nj, w));
                    }
                }
            }
        }
        best
    }

    fn allowed(&self, hv: VertexId, excluded: Option<usize>) -> Vec<usize> {
        (0..self.hosts.h.degree(hv)).filter(|&i| Some(i) != excluded).collect()
    }

    fn fill(
        &self,
        gv: VertexId,
        hv: VertexId,
        row: &mut [Option<Rational>],
        solver: SolverKind,
        collector: &Collector,
    ) -> Result<()> {
        if !self.hosts.vertices_match(gv, hv) {
            return Ok(());
        }
        let root_weight = self.hosts.gw.vertex[gv];
        let deg = self.hosts.h.degree(hv);
        let kids = self.children[gv].len();
        let compound = |allowed: usize| kids >= 2 && allowed >= 2;
        let parts = row.len();
        let id = |slot: usize| (gv * parts + self.offset[hv] + slot) as u64;

        let mut grouped_done = false;
        if solver == SolverKind::Grouped && compound(deg) {
            let all = self.allowed(hv, None);
            let base = self.instance(gv, hv, &all, id(0));
            let deletions: Vec<usize> = (0..deg).filter(|_| compound(deg - 1)).collect();
            let (full, family) = collector.family(&base, &deletions)?;
            row[self.offset[hv]] = Some(root_weight + full.weight);
            for (d, wt) in family {
                row[self.offset[hv] + 1 + d] = Some(root_weight + wt);
            }
            grouped_done = true;
        }
        for slot in 0..=deg {
            let excluded = slot.checked_sub(1);
            let allowed = self.allowed(hv, excluded);
            if compound(allowed.len()) {
                if grouped_done {
                    continue;
                }
                let inst = self.instance(gv, hv, &allowed, id(slot));
                let sol = match solver {
                    SolverKind::PerInstance => collector.hungarian(&inst),
                    SolverKind::Grouped => matching::solve_hungarian(&inst),
                };
                row[self.offset[hv] + slot] = Some(root_weight + sol.weight);
            } else {
                let extra = self
                    .single_best(gv, hv, &allowed)
                    .map_or(Rational::zero(), |b| b.2);
                row[self.offset[hv] + slot] = Some(root_weight + extra);
            }
        }
        Ok(())
    }

    fn best(&self) -> McsResult {
        let (g, h) = (self.hosts.g, self.hosts.h);
        let mut best: Option<(Rational, VertexId, VertexId)> = None;
        for gv in g.vertices() {
            for hv in h.vertices() {
                if let Some(v) = self.value[gv][self.offset[hv]] {
                    if best.is_none_or(|b| v > b.0) {
                        best = Some((v, gv, hv));
                    }
                }
            }
        }
        let Some((weight, gv, hv)) = best else {
            return McsResult::empty(McsMode::Plain);
        };
        let mut vmap = Vec::new();
        let mut emap = Vec::new();
        self.rebuild(gv, hv, None, &mut vmap, &mut emap);
        McsResult::from_parts(weight, vmap, emap, McsMode::Plain)
    }

    fn rebuild(
        &self,
        gv: VertexId,
        hv: VertexId,
        excluded: Option<usize>,
        vmap: &mut Vec<(VertexId, VertexId)>,
        emap: &mut Vec<(EdgeId, EdgeId)>,
    ) {
        vmap.push((gv, hv));
        let allowed = self.allowed(hv, excluded);
        let chosen: Vec<(usize, usize)> = if self.children[gv].len() >= 2 && allowed.len() >= 2 {
            matching::solve_hungarian(&self.instance(gv, hv, &allowed, 0))
                .pairs
                .into_iter()
                .map(|(ci, slot)| (ci, allowed[slot]))
                .collect()
        } else {
            self.single_best(gv, hv, &allowed)
                .map(|(ci, nj, _)| vec![(ci, nj)])
                .unwrap_or_default()
        };
        for (ci, nj) in chosen {
            let (c, eg) = self.children[gv][ci];
            let (d, eh) = self.hosts.h.neighbors(hv)[nj];
            emap.push((eg, eh));
            self.rebuild(c, d, Some(self.back[hv][nj]), vmap, emap);
        }
    }
}
