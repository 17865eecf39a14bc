//! Exhaustive maximum common subgraph search for small graphs.
//!
//! Every connected, injective, label-preserving vertex map is enumerated
//! exactly once. A map is grown from an anchor pair by adding pairs joined to
//! it by a common edge; each set is produced under the first extension
//! candidate it contains, and earlier candidates are forbidden below it.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::weights::{Rational, WeightScheme};

use super::{check_bbp, Hosts, McsMode, McsResult};

/// Largest `|V(G)| + |V(H)|` accepted by [`mcs_oracle`].
pub const ORACLE_LIMIT: usize = 20;

pub fn mcs_oracle(g: &LabeledGraph, h: &LabeledGraph, w: &WeightScheme, mode: McsMode) -> Result<McsResult> {
    let size = g.order() + h.order();
    if size > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "oracle input",
            size,
            limit: ORACLE_LIMIT,
        });
    }
    let hosts = Hosts::new(g, h, w)?;
    if mode == McsMode::General {
        return Ok(general(&hosts));
    }
    let mut search = Search::new(&hosts, mode);
    let mut forbidden = 0u128;
    for p in 0..search.pairs.len() {
        if search.pairs[p].is_some() {
            let mut map = vec![p];
            search.visit(&mut map, forbidden);
            forbidden |= 1 << p;
        }
    }
    Ok(search.best.unwrap_or_else(|| McsResult::empty(mode)))
}

struct Search<'a> {
    hosts: &'a Hosts<'a>,
    mode: McsMode,
    /// Pair `a * |H| + b` is `Some((a, b))` when the labels agree.
    pairs: Vec<Option<(VertexId, VertexId)>>,
    /// Common edges `(pair, pair, e_g, e_h)` leaving each pair.
    links: Vec<Vec<(usize, EdgeId, EdgeId)>>,
    best: Option<McsResult>,
    visited: usize,
}

impl<'a> Search<'a> {
    fn new(hosts: &'a Hosts<'a>, mode: McsMode) -> Self {
        let (g, h) = (hosts.g, hosts.h);
        let nh = h.order();
        let pairs: Vec<_> = (0..g.order() * nh)
            .map(|p| {
                let (a, b) = (p / nh, p % nh);
                hosts.vertices_match(a, b).then_some((a, b))
            })
            .collect();
        let mut links = vec![Vec::new(); pairs.len()];
        for (p, pair) in pairs.iter().enumerate() {
            let Some((a, b)) = *pair else { continue };
            for &(c, eg) in g.neighbors(a) {
                for &(d, eh) in h.neighbors(b) {
                    let q = c * nh + d;
                    if pairs[q].is_some() && hosts.edges_match(eg, eh) {
                        links[p].push((q, eg, eh));
                    }
                }
            }
        }
        Search {
            hosts,
            mode,
            pairs,
            links,
            best: None,
            visited: 0,
        }
    }

    fn best_weight(&self) -> Option<Rational> {
        self.best.as_ref().map(|b| b.weight)
    }

    fn visit(&mut self, map: &mut Vec<usize>, forbidden: u128) {
        self.visited += 1;
        self.score(map);
        let used_g: u32 = map.iter().map(|&p| 1u32 << self.pairs[p].unwrap().0).fold(0, |x, y| x | y);
        let used_h: u32 = map.iter().map(|&p| 1u32 << self.pairs[p].unwrap().1).fold(0, |x, y| x | y);
        let mut candidates = Vec::new();
        let mut seen = forbidden;
        for &p in map.iter() {
            seen |= 1 << p;
        }
        for &p in map.iter() {
            for &(q, _, _) in &self.links[p] {
                let (c, d) = self.pairs[q].unwrap();
                if seen & (1 << q) == 0 && used_g & (1 << c) == 0 && used_h & (1 << d) == 0 {
                    seen |= 1 << q;
                    candidates.push(q);
                }
            }
        }
        candidates.sort_unstable();
        let mut local = forbidden;
        for q in candidates {
            map.push(q);
            self.visit(map, local);
            map.pop();
            local |= 1 << q;
        }
    }

    /// Common edges among the mapped vertices.
    fn common_edges(&self, map: &[usize]) -> Vec<(EdgeId, EdgeId)> {
        let mut inside = 0u128;
        for &p in map {
            inside |= 1 << p;
        }
        let mut out = Vec::new();
        for &p in map {
            for &(q, eg, eh) in &self.links[p] {
                if p < q && inside & (1 << q) != 0 {
                    out.push((eg, eh));
                }
            }
        }
        out
    }

    fn score(&mut self, map: &[usize]) {
        let gw = &self.hosts.gw;
        let vmap: Vec<_> = map.iter().map(|&p| self.pairs[p].unwrap()).collect();
        let base: Rational = vmap.iter().map(|&(a, _)| gw.vertex[a]).sum();
        let edges = self.common_edges(map);
        let bound = base + edges.iter().map(|&(eg, _)| gw.edge[eg]).sum::<Rational>();
        if self.best_weight().is_some_and(|b| bound <= b) {
            return;
        }
        match self.mode {
            McsMode::Plain => {
                self.best = Some(McsResult::from_parts(bound, vmap, edges, McsMode::Plain));
            }
            McsMode::General => unreachable!("general mode does not enumerate connected maps"),
            McsMode::Bbp => {
                let mut chosen = Vec::new();
                self.choose_edges(&vmap, &edges, 0, base, &mut chosen);
            }
        }
    }

    /// Branch over subsets of `edges[i..]`, including an edge before
    /// excluding it, keeping subsets that connect `vmap` and pass the BBP check.
    fn choose_edges(
        &mut self,
        vmap: &[(VertexId, VertexId)],
        edges: &[(EdgeId, EdgeId)],
        i: usize,
        current: Rational,
        chosen: &mut Vec<(EdgeId, EdgeId)>,
    ) {
        let gw = &self.hosts.gw;
        let remaining: Rational = edges[i..].iter().map(|&(eg, _)| gw.edge[eg]).sum();
        if self.best_weight().is_some_and(|b| current + remaining <= b) {
            return;
        }
        if chosen.len() + (edges.len() - i) + 1 < vmap.len() {
            return;
        }
        if i == edges.len() {
            let candidate = McsResult::from_parts(current, vmap.to_vec(), chosen.clone(), McsMode::Bbp);
            if candidate.common_graph(self.hosts.g).is_connected()
                && check_bbp(&candidate, self.hosts.g, self.hosts.h).is_ok()
            {
                self.best = Some(candidate);
            }
            return;
        }
        let ew = gw.edge[edges[i].0];
        chosen.push(edges[i]);
        self.choose_edges(vmap, edges, i + 1, current + ew, chosen);
        chosen.pop();
        self.choose_edges(vmap, edges, i + 1, current, chosen);
    }
}

/// Best injective label-preserving map, connected or not: every `G` vertex
/// is either mapped to a free `H` vertex or skipped, in id order, keeping all
/// common edges.
fn general(hosts: &Hosts) -> McsResult {
    let (g, h, gw) = (hosts.g, hosts.h, &hosts.gw);
    let n = g.order();
    // rest[i]: weight still obtainable from vertices >= i and their edges back
    let mut rest = vec![Rational::zero(); n + 1];
    for i in (0..n).rev() {
        let back: Rational = g.neighbors(i).iter().filter(|&&(j, _)| j < i).map(|&(_, e)| gw.edge[e]).sum();
        rest[i] = rest[i + 1] + gw.vertex[i] + back;
    }
    struct State<'s> {
        hosts: &'s Hosts<'s>,
        rest: Vec<Rational>,
        image: Vec<Option<VertexId>>,
        best: Option<(Rational, Vec<Option<VertexId>>)>,
    }
    fn descend(st: &mut State, i: usize, used: u32, current: Rational) {
        if st.best.as_ref().is_some_and(|b| current + st.rest[i] <= b.0) {
            return;
        }
        let (g, h) = (st.hosts.g, st.hosts.h);
        if i == g.order() {
            st.best = Some((current, st.image.clone()));
            return;
        }
        for y in h.vertices() {
            if used >> y & 1 == 1 || !st.hosts.vertices_match(i, y) {
                continue;
            }
            let mut gain = st.hosts.gw.vertex[i];
            for &(j, eg) in g.neighbors(i) {
                if j < i {
                    if let Some(eh) = st.image[j].and_then(|x| h.edge_between(x, y)) {
                        if st.hosts.edges_match(eg, eh) {
                            gain += st.hosts.gw.edge[eg];
                        }
                    }
                }
            }
            st.image[i] = Some(y);
            descend(st, i + 1, used | 1 << y, current + gain);
            st.image[i] = None;
        }
        descend(st, i + 1, used, current);
    }
    let mut st = State {
        hosts,
        rest,
        image: vec![None; n],
        best: None,
    };
    descend(&mut st, 0, 0, Rational::zero());
    let (weight, image) = st.best.expect("the empty map is always reached");
    let vmap: Vec<_> = image.iter().enumerate().filter_map(|(a, b)| b.map(|b| (a, b))).collect();
    let mut emap = Vec::new();
    for (eg, a, b) in g.edges() {
        if let (Some(x), Some(y)) = (image[a], image[b]) {
            if let Some(eh) = h.edge_between(x, y).filter(|&eh| hosts.edges_match(eg, eh)) {
                emap.push((eg, eh));
            }
        }
    }
    McsResult::from_parts(weight, vmap, emap, McsMode::General)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn oracle(g: &LabeledGraph, h: &LabeledGraph, mode: McsMode) -> i64 {
        let w = WeightScheme::default();
        let r = mcs_oracle(g, h, &w, mode).unwrap();
        r.validate(g, h, &w).unwrap();
        if mode == McsMode::Bbp {
            check_bbp(&r, g, h).unwrap();
        }
        assert!(r.weight.is_integer());
        r.weight.to_integer()
    }

    #[test]
    fn small_cycle_values() {
        let (t, k, c) = (named::triangle(), named::k4_minus_edge(), named::cycle(4));
        assert_eq!(oracle(&t, &k, McsMode::Bbp), 6);
        assert_eq!(oracle(&k, &c, McsMode::Bbp), 8);
        assert_eq!(oracle(&t, &c, McsMode::Bbp), 1);
        assert_eq!(oracle(&t, &c, McsMode::Plain), 5);
        assert_eq!(oracle(&k, &k, McsMode::Bbp), 9);
    }

    #[test]
    fn figure_values() {
        let (g, h) = (named::figure_g(), named::figure_h());
        assert_eq!(oracle(&g, &h, McsMode::Plain), 17);
        assert_eq!(oracle(&g, &h, McsMode::Bbp), 10);
    }

    #[test]
    fn enumeration_visits_each_map_once() {
        // triangle into itself: 9 single pairs, 3 * 3 * 2 edge maps, 3! full maps
        let t = named::triangle();
        let hosts = Hosts::new(&t, &t, &WeightScheme::default()).unwrap();
        let mut s = Search::new(&hosts, McsMode::Plain);
        let mut forbidden = 0u128;
        for p in 0..9 {
            s.visit(&mut vec![p], forbidden);
            forbidden |= 1 << p;
        }
        assert_eq!(s.visited, 9 + 18 + 6);
    }

    #[test]
    fn general_mode_allows_disconnected_subgraphs() {
        let c4 = named::cycle(4);
        let claw = LabeledGraph::from_edges("claw", 4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        // a path on three vertices plus an isolated vertex
        assert_eq!(oracle(&c4, &claw, McsMode::General), 6);
        assert_eq!(oracle(&c4, &claw, McsMode::Plain), 5);
        let (g, h) = (named::figure_g(), named::figure_h());
        assert_eq!(oracle(&g, &h, McsMode::General), 17);
    }

    #[test]
    fn rejects_large_inputs() {
        let c = named::cycle(11);
        assert!(matches!(
            mcs_oracle(&c, &c, &WeightScheme::default(), McsMode::Plain),
            Err(Error::TooLarge { .. })
        ));
    }
}
