//! Exact outerplanarity test for graphs with small blocks.
//!
//! A graph is outerplanar iff every block has a Hamiltonian cycle whose
//! remaining edges (chords) pairwise do not cross. Each block is searched
//! exhaustively, which is exact and fast for blocks up to
//! [`DEFAULT_BLOCK_SIZE_LIMIT`] vertices.

use crate::bc::{decompose_bc, BcDecomposition};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};

pub const DEFAULT_BLOCK_SIZE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outerplanarity {
    /// One cyclic vertex order per block, indexed like the decomposition's blocks.
    Outerplanar { cycles: Vec<Vec<VertexId>> },
    /// Index of the first block that has no outerplanar embedding.
    NotOuterplanar { block: usize },
}

impl Outerplanarity {
    pub fn is_outerplanar(&self) -> bool {
        matches!(self, Outerplanarity::Outerplanar { .. })
    }
}

pub fn is_outerplanar(g: &LabeledGraph) -> Result<Outerplanarity> {
    is_outerplanar_with(g, &decompose_bc(g), DEFAULT_BLOCK_SIZE_LIMIT)
}

pub fn is_outerplanar_with(g: &LabeledGraph, bc: &BcDecomposition, limit: usize) -> Result<Outerplanarity> {
    if let Some(b) = bc.blocks.iter().find(|b| b.vertices.len() > limit) {
        return Err(Error::BlockTooLarge {
            size: b.vertices.len(),
            limit,
        });
    }
    let mut cycles = Vec::with_capacity(bc.blocks.len());
    for (i, b) in bc.blocks.iter().enumerate() {
        let k = b.vertices.len();
        if b.edges.len() + 3 > 2 * k {
            return Ok(Outerplanarity::NotOuterplanar { block: i });
        }
        let local = |v: VertexId| b.vertices.binary_search(&v).expect("block vertex");
        let mut adj = vec![0u32; k];
        let edges: Vec<(usize, usize)> = b
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                (local(u), local(v))
            })
            .collect();
        for &(u, v) in &edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        match outer_cycle(&adj, &edges) {
            Some(order) => cycles.push(order.into_iter().map(|i| b.vertices[i]).collect()),
            None => return Ok(Outerplanarity::NotOuterplanar { block: i }),
        }
    }
    Ok(Outerplanarity::Outerplanar { cycles })
}

/// Search Hamiltonian cycles starting at local vertex 0 and return the first
/// one whose chords are pairwise non-crossing.
fn outer_cycle(adj: &[u32], edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let k = adj.len();
    let mut path = vec![0usize];
    let mut used = 1u32;
    fn extend(
        adj: &[u32],
        edges: &[(usize, usize)],
        path: &mut Vec<usize>,
        used: &mut u32,
    ) -> bool {
        let k = adj.len();
        let last = *path.last().unwrap();
        if path.len() == k {
            // fix orientation so each cycle is tried once
            return adj[last] & 1 == 1 && path[1] < last && chords_non_crossing(path, edges);
        }
        let mut cand = adj[last] & !*used;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(w);
            *used |= 1 << w;
            if extend(adj, edges, path, used) {
                return true;
            }
            path.pop();
            *used &= !(1 << w);
        }
        false
    }
    if k < 3 {
        return None;
    }
    extend(adj, edges, &mut path, &mut used).then_some(path)
}

fn chords_non_crossing(cycle: &[usize], edges: &[(usize, usize)]) -> bool {
    let k = cycle.len();
    let mut pos = vec![0; k];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let chords: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .filter(|&(a, b)| b - a != 1 && !(a == 0 && b == k - 1))
        .collect();
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;

    /// Independent oracle: a graph is outerplanar iff it has neither a K4 nor
    /// a K2,3 minor. Branch sets are enumerated by brute force.
    fn has_minor(g: &LabeledGraph, parts: usize, required: &[(usize, usize)]) -> bool {
        let n = g.order();
        let adj: Vec<u32> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &(w, _)| m | 1 << w))
            .collect();
        let connected = |mask: u32| {
            let start = mask.trailing_zeros();
            let mut seen = 1u32 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let next = adj[v] & mask & !seen;
                seen |= next;
                frontier |= next;
            }
            seen == mask
        };
        let touches = |a: u32, b: u32| {
            let mut m = a;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if adj[v] & b != 0 {
                    return true;
                }
            }
            false
        };
        let total = (parts + 1).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut sets = vec![0u32; parts];
            for v in 0..n {
                let a = c % (parts + 1);
                c /= parts + 1;
                if a > 0 {
                    sets[a - 1] |= 1 << v;
                }
            }
            if sets.iter().any(|&s| s == 0 || !connected(s)) {
                continue;
            }
            if required.iter().all(|&(a, b)| touches(sets[a], sets[b])) {
                return true;
            }
        }
        false
    }

    fn outerplanar_by_minors(g: &LabeledGraph) -> bool {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let k23 = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
        !has_minor(g, 4, &k4) && !has_minor(g, 5, &k23)
    }

    #[test]
    fn trees_are_outerplanar() {
        let t = LabeledGraph::from_edges("t", 5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(
            is_outerplanar(&t).unwrap(),
            Outerplanarity::Outerplanar { cycles: vec![] }
        );
    }

    #[test]
    fn k4_is_not_outerplanar() {
        assert_eq!(
            is_outerplanar(&named::complete(4)).unwrap(),
            Outerplanarity::NotOuterplanar { block: 0 }
        );
        // all three Hamiltonian cycles of K4 leave two crossing chords
        let edges: Vec<(usize, usize)> = named::complete(4).edges().map(|(_, u, v)| (u, v)).collect();
        for cycle in [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]] {
            assert!(!chords_non_crossing(&cycle, &edges));
        }
    }

    #[test]
    fn k4_minus_edge_and_k23() {
        match is_outerplanar(&named::k4_minus_edge()).unwrap() {
            Outerplanarity::Outerplanar { cycles } => {
                assert_eq!(cycles.len(), 1);
                assert_eq!(cycles[0].len(), 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        let k23 = LabeledGraph::from_edges("k23", 5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!is_outerplanar(&k23).unwrap().is_outerplanar());
        assert!(is_outerplanar(&named::figure_g()).unwrap().is_outerplanar());
        assert!(is_outerplanar(&named::figure_h()).unwrap().is_outerplanar());
    }

    #[test]
    fn block_limit() {
        let c = named::cycle(20);
        assert_eq!(
            is_outerplanar(&c),
            Err(Error::BlockTooLarge { size: 20, limit: 16 })
        );
        assert!(is_outerplanar_with(&c, &decompose_bc(&c), 20).unwrap().is_outerplanar());
    }

    #[test]
    fn minor_oracle_sanity() {
        assert!(!outerplanar_by_minors(&named::complete(4)));
        assert!(outerplanar_by_minors(&named::k4_minus_edge()));
        assert!(outerplanar_by_minors(&named::cycle(6)));
    }

    fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = LabeledGraph> {
        (1..=max_n)
            .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_m)))
            .prop_map(|(n, pairs)| {
                let mut g = LabeledGraph::from_edges("arb", n, &[]).unwrap();
                for (u, v) in pairs {
                    let _ = g.add_edge(u, v, "");
                }
                g
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn agrees_with_minor_oracle(g in arb_graph(8, 13)) {
            let fast = is_outerplanar(&g).unwrap().is_outerplanar();
            prop_assert_eq!(fast, outerplanar_by_minors(&g));
        }

        #[test]
        fn outerplanar_blocks_are_sparse(g in arb_graph(8, 13)) {
            if is_outerplanar(&g).unwrap().is_outerplanar() {
                for b in decompose_bc(&g).blocks {
                    prop_assert!(b.edges.len() + 3 <= 2 * b.vertices.len());
                }
            }
        }
    }
}
