//! Block-and-bridge preserving common subgraphs of outerplanar graphs.
//!
//! A vertex state is a vertex together with at most one excluded incidence
//! (a bridge or block at that vertex). The best common subgraph rooted at a
//! pair of states is the root weight plus a maximum weight matching between
//! the remaining incidences of both vertices. A bridge pairs with a bridge,
//! continuing at the far endpoints; a block pairs with a block through the
//! best anchored biconnected common subgraph of the two blocks, continuing
//! at every other mapped vertex. Block pairs are solved by enumeration, which
//! is why block sizes are bounded.

use std::collections::HashMap;

use num_traits::Zero;

use crate::bc::{decompose_bc, BcDecomposition, Incidence};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::instrument::{Collector, SolverKind};
use crate::matching::{self, MatchingInstance};
use crate::outerplanar::{is_outerplanar_with, DEFAULT_BLOCK_SIZE_LIMIT};
use crate::weights::{Rational, WeightScheme};

use super::{Hosts, McsMode, McsResult};

pub fn mcs_bbp(g: &LabeledGraph, h: &LabeledGraph, w: &WeightScheme, solver: SolverKind) -> Result<McsResult> {
    mcs_bbp_with(g, h, w, solver, &Collector::new())
}

/// [`mcs_bbp`] recording every matching solve in `collector`.
pub fn mcs_bbp_with(
    g: &LabeledGraph,
    h: &LabeledGraph,
    w: &WeightScheme,
    solver: SolverKind,
    collector: &Collector,
) -> Result<McsResult> {
    let bg = prepare(g)?;
    let bh = prepare(h)?;
    let hosts = Hosts::new(g, h, w)?;
    let mut dp = BbpDp::new(&hosts, bg, bh, solver, collector);
    let mut best: Option<(Rational, VertexId, VertexId)> = None;
    for gv in g.vertices() {
        for hv in h.vertices() {
            if let Some(v) = dp.value(gv, None, hv, None)? {
                if best.is_none_or(|b| v > b.0) {
                    best = Some((v, gv, hv));
                }
            }
        }
    }
    let Some((weight, gv, hv)) = best else {
        return Ok(McsResult::empty(McsMode::Bbp));
    };
    let mut vmap = Vec::new();
    let mut emap = Vec::new();
    dp.rebuild(gv, None, hv, None, &mut vmap, &mut emap)?;
    Ok(McsResult::from_parts(weight, vmap, emap, McsMode::Bbp))
}

fn prepare(g: &LabeledGraph) -> Result<BcDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected {
            graph: g.name().to_string(),
        });
    }
    let bc = decompose_bc(g);
    if !is_outerplanar_with(g, &bc, DEFAULT_BLOCK_SIZE_LIMIT)?.is_outerplanar() {
        return Err(Error::NotOuterplanar {
            graph: g.name().to_string(),
        });
    }
    Ok(bc)
}

/// Best anchored block map: weight, non-anchor vertex pairs, common edges.
type BlockMap = (Rational, Vec<(VertexId, VertexId)>, Vec<(EdgeId, EdgeId)>);

struct BbpDp<'a> {
    hosts: &'a Hosts<'a>,
    bg: BcDecomposition,
    bh: BcDecomposition,
    /// First state index of each vertex; state `off[v] + 1 + i` excludes
    /// incidence `i`.
    goff: Vec<usize>,
    hoff: Vec<usize>,
    h_states: usize,
    memo: Vec<Option<Option<Rational>>>,
    blocks: HashMap<(usize, VertexId, usize, VertexId), Option<BlockMap>>,
    solver: SolverKind,
    collector: &'a Collector,
}

fn offsets(bc: &BcDecomposition, order: usize) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(order);
    let mut total = 0;
    for v in 0..order {
        off.push(total);
        total += 1 + bc.incidences(v).len();
    }
    (off, total)
}

fn bridge_slot(bc: &BcDecomposition, v: VertexId, e: EdgeId) -> usize {
    bc.incidences(v)
        .iter()
        .position(|inc| matches!(inc, Incidence::Bridge { edge, .. } if *edge == e))
        .expect("bridge at both endpoints")
}

fn block_slot(bc: &BcDecomposition, v: VertexId, b: usize) -> usize {
    bc.incidences(v)
        .iter()
        .position(|inc| *inc == Incidence::Block(b))
        .expect("block vertex")
}

impl<'a> BbpDp<'a> {
    fn new(
        hosts: &'a Hosts<'a>,
        bg: BcDecomposition,
        bh: BcDecomposition,
        solver: SolverKind,
        collector: &'a Collector,
    ) -> Self {
        let (goff, g_states) = offsets(&bg, hosts.g.order());
        let (hoff, h_states) = offsets(&bh, hosts.h.order());
        BbpDp {
            hosts,
            bg,
            bh,
            goff,
            hoff,
            h_states,
            memo: vec![None; g_states * h_states],
            blocks: HashMap::new(),
            solver,
            collector,
        }
    }

    fn state(&self, gv: VertexId, xg: Option<usize>, hv: VertexId, xh: Option<usize>) -> usize {
        let gs = self.goff[gv] + xg.map_or(0, |i| i + 1);
        let hs = self.hoff[hv] + xh.map_or(0, |i| i + 1);
        gs * self.h_states + hs
    }

    fn allowed(bc: &BcDecomposition, v: VertexId, excluded: Option<usize>) -> Vec<usize> {
        (0..bc.incidences(v).len()).filter(|&i| Some(i) != excluded).collect()
    }

    fn value(&mut self, gv: VertexId, xg: Option<usize>, hv: VertexId, xh: Option<usize>) -> Result<Option<Rational>> {
        let idx = self.state(gv, xg, hv, xh);
        if let Some(v) = self.memo[idx] {
            return Ok(v);
        }
        if !self.hosts.vertices_match(gv, hv) {
            self.memo[idx] = Some(None);
            return Ok(None);
        }
        let root = self.hosts.gw.vertex[gv];
        let ag = Self::allowed(&self.bg, gv, xg);
        let ah = Self::allowed(&self.bh, hv, xh);
        let v = if ag.len() >= 2 && ah.len() >= 2 {
            match self.solver {
                SolverKind::Grouped => {
                    self.grouped(gv, xg, hv)?;
                    return Ok(self.memo[idx].expect("filled by the family solve"));
                }
                SolverKind::PerInstance => {
                    let inst = self.instance(gv, &ag, hv, &ah, idx as u64)?;
                    root + self.collector.hungarian(&inst).weight
                }
            }
        } else {
            root + self.single_best(gv, &ag, hv, &ah)?.map_or(Rational::zero(), |b| b.2)
        };
        self.memo[idx] = Some(Some(v));
        Ok(Some(v))
    }

    /// All states `(gv, xg)` against `hv` with any exclusion, in one family solve.
    fn grouped(&mut self, gv: VertexId, xg: Option<usize>, hv: VertexId) -> Result<()> {
        let ag = Self::allowed(&self.bg, gv, xg);
        let all = Self::allowed(&self.bh, hv, None);
        let base_idx = self.state(gv, xg, hv, None);
        let base = self.instance(gv, &ag, hv, &all, base_idx as u64)?;
        let deletions: Vec<usize> = all.iter().copied().filter(|_| all.len() > 2).collect();
        let (full, family) = self.collector.family(&base, &deletions)?;
        let root = self.hosts.gw.vertex[gv];
        self.memo[base_idx] = Some(Some(root + full.weight));
        for (d, w) in family {
            let idx = self.state(gv, xg, hv, Some(d));
            self.memo[idx] = Some(Some(root + w));
        }
        Ok(())
    }

    fn instance(
        &mut self,
        gv: VertexId,
        ag: &[usize],
        hv: VertexId,
        ah: &[usize],
        id: u64,
    ) -> Result<MatchingInstance> {
        let mut inst = MatchingInstance::new(ag.len(), ah.len()).with_id(id);
        for (r, &ig) in ag.iter().enumerate() {
            for (c, &ih) in ah.iter().enumerate() {
                if let Some(w) = self.pair_weight(gv, ig, hv, ih)? {
                    inst.set(r, c, w)?;
                }
            }
        }
        Ok(inst)
    }

    fn single_best(
        &mut self,
        gv: VertexId,
        ag: &[usize],
        hv: VertexId,
        ah: &[usize],
    ) -> Result<Option<(usize, usize, Rational)>> {
        let mut best: Option<(usize, usize, Rational)> = None;
        for &ig in ag {
            for &ih in ah {
                if let Some(w) = self.pair_weight(gv, ig, hv, ih)? {
                    if best.is_none_or(|b| w > b.2) {
                        best = Some((ig, ih, w));
                    }
                }
            }
        }
        Ok(best)
    }

    /// Weight of pairing incidence `ig` of `gv` with incidence `ih` of `hv`;
    /// `None` unless positive.
    fn pair_weight(&mut self, gv: VertexId, ig: usize, hv: VertexId, ih: usize) -> Result<Option<Rational>> {
        let w = match (self.bg.incidences(gv)[ig], self.bh.incidences(hv)[ih]) {
            (Incidence::Bridge { edge: eg, other: c }, Incidence::Bridge { edge: eh, other: d }) => {
                if !self.hosts.edges_match(eg, eh) {
                    return Ok(None);
                }
                let xc = bridge_slot(&self.bg, c, eg);
                let xd = bridge_slot(&self.bh, d, eh);
                self.value(c, Some(xc), d, Some(xd))?
                    .map(|v| self.hosts.gw.edge[eg] + v)
            }
            (Incidence::Block(x), Incidence::Block(y)) => self.block_value(x, gv, y, hv)?.map(|b| b.0),
            _ => None,
        };
        Ok(w.filter(|w| *w > Rational::zero()))
    }

    /// Best anchored map of block `x` (of `G`) into block `y` (of `H`) with
    /// `gv -> hv`, whose common edges form a biconnected graph.
    fn block_value(&mut self, x: usize, gv: VertexId, y: usize, hv: VertexId) -> Result<Option<&BlockMap>> {
        let key = (x, gv, y, hv);
        if !self.blocks.contains_key(&key) {
            let found = self.solve_block(x, gv, y, hv)?;
            self.blocks.insert(key, found);
        }
        Ok(self.blocks[&key].as_ref())
    }

    fn solve_block(&mut self, x: usize, gv: VertexId, y: usize, hv: VertexId) -> Result<Option<BlockMap>> {
        let xs = self.bg.blocks[x].vertices.clone();
        let ys = self.bh.blocks[y].vertices.clone();
        let (nx, ny) = (xs.len(), ys.len());
        let ia = xs.binary_search(&gv).expect("anchor in block");
        let ja = ys.binary_search(&hv).expect("anchor in block");
        // continuation value of every usable non-anchor pair
        let mut cont: Vec<Option<Rational>> = vec![None; nx * ny];
        for (i, &a) in xs.iter().enumerate() {
            for (j, &b) in ys.iter().enumerate() {
                if i != ia && j != ja {
                    let sa = block_slot(&self.bg, a, x);
                    let sb = block_slot(&self.bh, b, y);
                    cont[i * ny + j] = self.value(a, Some(sa), b, Some(sb))?;
                }
            }
        }
        let anchor = ia * ny + ja;
        cont[anchor] = Some(Rational::zero());
        let local = |vs: &[VertexId], v: VertexId| vs.binary_search(&v).ok();
        let (g, h) = (self.hosts.g, self.hosts.h);
        let mut links: Vec<Vec<(usize, EdgeId, EdgeId)>> = vec![Vec::new(); nx * ny];
        for p in 0..nx * ny {
            if cont[p].is_none() {
                continue;
            }
            let (a, b) = (xs[p / ny], ys[p % ny]);
            for &(c, eg) in g.neighbors(a) {
                let Some(ic) = local(&xs, c) else { continue };
                for &(d, eh) in h.neighbors(b) {
                    let Some(jd) = local(&ys, d) else { continue };
                    let q = ic * ny + jd;
                    if cont[q].is_some() && self.hosts.edges_match(eg, eh) {
                        links[p].push((q, eg, eh));
                    }
                }
            }
        }
        let mut search = BlockSearch {
            ny,
            cont: &cont,
            links: &links,
            edge_weight: &self.hosts.gw.edge,
            best: None,
        };
        let mut forbidden = Bits::default();
        forbidden.set(anchor);
        search.visit(&mut vec![anchor], &forbidden);
        Ok(search.best.map(|(w, pairs, edges)| {
            let vmap = pairs
                .into_iter()
                .filter(|&p| p != anchor)
                .map(|p| (xs[p / ny], ys[p % ny]))
                .collect();
            (w, vmap, edges)
        }))
    }

    fn rebuild(
        &mut self,
        gv: VertexId,
        xg: Option<usize>,
        hv: VertexId,
        xh: Option<usize>,
        vmap: &mut Vec<(VertexId, VertexId)>,
        emap: &mut Vec<(EdgeId, EdgeId)>,
    ) -> Result<()> {
        vmap.push((gv, hv));
        let ag = Self::allowed(&self.bg, gv, xg);
        let ah = Self::allowed(&self.bh, hv, xh);
        let chosen: Vec<(usize, usize)> = if ag.len() >= 2 && ah.len() >= 2 {
            let inst = self.instance(gv, &ag, hv, &ah, 0)?;
            matching::solve_hungarian(&inst)
                .pairs
                .into_iter()
                .map(|(r, c)| (ag[r], ah[c]))
                .collect()
        } else {
            self.single_best(gv, &ag, hv, &ah)?
                .map(|(ig, ih, _)| vec![(ig, ih)])
                .unwrap_or_default()
        };
        for (ig, ih) in chosen {
            match (self.bg.incidences(gv)[ig], self.bh.incidences(hv)[ih]) {
                (Incidence::Bridge { edge: eg, other: c }, Incidence::Bridge { edge: eh, other: d }) => {
                    emap.push((eg, eh));
                    let xc = bridge_slot(&self.bg, c, eg);
                    let xd = bridge_slot(&self.bh, d, eh);
                    self.rebuild(c, Some(xc), d, Some(xd), vmap, emap)?;
                }
                (Incidence::Block(x), Incidence::Block(y)) => {
                    let (_, pairs, edges) = self.block_value(x, gv, y, hv)?.expect("chosen pair has a map").clone();
                    emap.extend(edges);
                    for (a, b) in pairs {
                        let sa = block_slot(&self.bg, a, x);
                        let sb = block_slot(&self.bh, b, y);
                        self.rebuild(a, Some(sa), b, Some(sb), vmap, emap)?;
                    }
                }
                _ => unreachable!("only like incidences are paired"),
            }
        }
        Ok(())
    }
}

/// Bitset over at most 256 pair indices (blocks of up to 16 vertices).
#[derive(Clone, Copy, Default)]
struct Bits([u64; 4]);

impl Bits {
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

/// Weight, H image of each mapped G position, mapped edges.
type Candidate = (Rational, Vec<usize>, Vec<(EdgeId, EdgeId)>);

struct BlockSearch<'s> {
    ny: usize,
    cont: &'s [Option<Rational>],
    links: &'s [Vec<(usize, EdgeId, EdgeId)>],
    edge_weight: &'s [Rational],
    best: Option<Candidate>,
}

impl BlockSearch<'_> {
    /// Connected anchored maps, each once; see the oracle for the scheme.
    fn visit(&mut self, map: &mut Vec<usize>, forbidden: &Bits) {
        self.score(map);
        let mut used_g = 0u32;
        let mut used_h = 0u32;
        let mut seen = *forbidden;
        for &p in map.iter() {
            used_g |= 1 << (p / self.ny);
            used_h |= 1 << (p % self.ny);
            seen.set(p);
        }
        let mut candidates = Vec::new();
        for &p in map.iter() {
            for &(q, _, _) in &self.links[p] {
                if !seen.get(q) && used_g >> (q / self.ny) & 1 == 0 && used_h >> (q % self.ny) & 1 == 0 {
                    seen.set(q);
                    candidates.push(q);
                }
            }
        }
        candidates.sort_unstable();
        let mut local = *forbidden;
        for q in candidates {
            map.push(q);
            self.visit(map, &local);
            map.pop();
            local.set(q);
        }
    }

    fn score(&mut self, map: &[usize]) {
        if map.len() < 3 {
            return;
        }
        let pos = |q: usize| map.iter().position(|&p| p == q);
        let mut adj = vec![0u32; map.len()];
        let mut edges = Vec::new();
        let mut weight = Rational::zero();
        for (i, &p) in map.iter().enumerate() {
            weight += self.cont[p].expect("usable pair");
            for &(q, eg, eh) in &self.links[p] {
                if p < q {
                    if let Some(j) = pos(q) {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                        edges.push((eg, eh));
                        weight += self.edge_weight[eg];
                    }
                }
            }
        }
        if self.best.as_ref().is_some_and(|b| weight <= b.0) || !biconnected(&adj) {
            return;
        }
        self.best = Some((weight, map.to_vec(), edges));
    }
}

/// At least three vertices, connected, and no cut vertex.
fn biconnected(adj: &[u32]) -> bool {
    let n = adj.len();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let reach = |removed: Option<usize>| {
        let alive = removed.map_or(all, |r| all & !(1 << r));
        let start = alive.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = adj[v] & alive & !seen;
            seen |= next;
            frontier |= next;
        }
        seen == alive
    };
    n >= 3 && reach(None) && (0..n).all(|r| reach(Some(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::instrument::RecordKind;
    use crate::mcs::{check_bbp, mcs_oracle};

    fn bbp(g: &LabeledGraph, h: &LabeledGraph, solver: SolverKind) -> McsResult {
        let w = WeightScheme::default();
        let r = mcs_bbp(g, h, &w, solver).unwrap();
        r.validate(g, h, &w).unwrap();
        check_bbp(&r, g, h).unwrap();
        r
    }

    #[test]
    fn small_cycle_values() {
        let (t, k, c) = (named::triangle(), named::k4_minus_edge(), named::cycle(4));
        for s in [SolverKind::PerInstance, SolverKind::Grouped] {
            assert_eq!(bbp(&t, &k, s).weight, Rational::from_integer(6));
            assert_eq!(bbp(&k, &c, s).weight, Rational::from_integer(8));
            assert_eq!(bbp(&t, &c, s).weight, Rational::from_integer(1));
        }
    }

    #[test]
    fn figure_value() {
        let (g, h) = (named::figure_g(), named::figure_h());
        let r = bbp(&g, &h, SolverKind::PerInstance);
        assert_eq!(r.weight, Rational::from_integer(10));
        assert_eq!(bbp(&h, &g, SolverKind::Grouped).weight, Rational::from_integer(10));
    }

    #[test]
    fn agrees_with_the_oracle_on_cycles_with_pendants() {
        let w = WeightScheme::default();
        let mut graphs = vec![named::triangle(), named::k4_minus_edge(), named::cycle(4), named::cycle(5)];
        let mut lolly = named::cycle(4);
        let v = lolly.add_vertex("");
        lolly.add_edge(0, v, "").unwrap();
        graphs.push(lolly);
        for a in &graphs {
            for b in &graphs {
                let fast = bbp(a, b, SolverKind::PerInstance).weight;
                assert_eq!(fast, mcs_oracle(a, b, &w, McsMode::Bbp).unwrap().weight);
            }
        }
    }

    #[test]
    fn grouped_records_families() {
        // a vertex with three pendant triangles on both sides
        let mut g = LabeledGraph::new("flower");
        g.add_vertex("");
        for _ in 0..3 {
            let a = g.add_vertex("");
            let b = g.add_vertex("");
            g.add_edge(0, a, "").unwrap();
            g.add_edge(a, b, "").unwrap();
            g.add_edge(b, 0, "").unwrap();
        }
        let c = Collector::new();
        let r = mcs_bbp_with(&g, &g, &WeightScheme::default(), SolverKind::Grouped, &c).unwrap();
        assert_eq!(r.weight, Rational::from_integer(16));
        let log = c.log();
        assert!(log.count_kind(RecordKind::GroupedBase) >= 1);
        assert_eq!(log.count_kind(RecordKind::PerInstance), 0);
    }

    #[test]
    fn preconditions() {
        let w = WeightScheme::default();
        let k4 = named::complete(4);
        let t = named::triangle();
        assert!(matches!(
            mcs_bbp(&k4, &t, &w, SolverKind::PerInstance),
            Err(Error::NotOuterplanar { .. })
        ));
        let two = LabeledGraph::from_edges("two", 2, &[]).unwrap();
        assert!(matches!(
            mcs_bbp(&t, &two, &w, SolverKind::PerInstance),
            Err(Error::Disconnected { .. })
        ));
        let big = named::cycle(17);
        assert!(matches!(
            mcs_bbp(&big, &t, &w, SolverKind::PerInstance),
            Err(Error::BlockTooLarge { .. })
        ));
        let empty = LabeledGraph::new("empty");
        assert_eq!(mcs_bbp(&empty, &t, &w, SolverKind::PerInstance).unwrap().weight, Rational::zero());
    }

    #[test]
    fn biconnectivity() {
        assert!(biconnected(&[0b110, 0b101, 0b011]));
        assert!(!biconnected(&[0b10, 0b01]));
        // two triangles sharing vertex 0
        assert!(!biconnected(&[0b11110, 0b00101, 0b00011, 0b10001, 0b01001]));
    }
}
