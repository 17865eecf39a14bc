//! Rooted parts of trees.
//!
//! `parts` of a rooted tree `T^r` is the least set closed under:
//!
//! 1. `T^r` is a part;
//! 2. if the root `p` of a part `P^p` has exactly one edge `{p,v}`, then
//!    `(P - p)^v` is a part;
//! 3. if the root `p` of `P^p` has edges `{p,v_1},...,{p,v_k}` with `k >= 2`,
//!    then for each `i` the component of `P` without the other root edges
//!    that contains `p`, rooted at `p`, is a part.
//!
//! Parts are identified by `(vertex set, root)`. A part whose root has at
//! least two children is a compound-root part; the parts produced from it
//! by rule 3 are its elementary parts.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, RootedGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// The whole rooted host.
    Whole,
    /// Root removed from a part whose root had one edge.
    RootRemoved { from: usize },
    /// One branch of a part whose root had several edges.
    Branch { from: usize, edge: EdgeId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedPart {
    pub id: usize,
    pub root: VertexId,
    /// Sorted host vertex ids.
    pub vertices: Vec<VertexId>,
    /// Sorted host edge ids; the part is the subtree induced by `vertices`.
    pub edges: Vec<EdgeId>,
    pub derivation: Derivation,
}

impl RootedPart {
    fn new(host: &LabeledGraph, id: usize, root: VertexId, vertices: Vec<VertexId>, derivation: Derivation) -> Self {
        let set: BTreeSet<_> = vertices.iter().copied().collect();
        let mut edges: Vec<EdgeId> = host
            .edges()
            .filter(|&(_, u, v)| set.contains(&u) && set.contains(&v))
            .map(|(e, _, _)| e)
            .collect();
        edges.sort_unstable();
        RootedPart {
            id,
            root,
            vertices,
            edges,
            derivation,
        }
    }

    /// Neighbors of the root inside the part.
    pub fn root_children(&self, host: &LabeledGraph) -> Vec<(VertexId, EdgeId)> {
        host.neighbors(self.root)
            .iter()
            .copied()
            .filter(|&(w, _)| self.vertices.binary_search(&w).is_ok())
            .collect()
    }

    /// Convert into a standalone rooted graph with vertices renumbered in
    /// ascending host order.
    pub fn to_rooted_graph(&self, host: &LabeledGraph) -> RootedGraph {
        let mut g = LabeledGraph::new(format!("{}@{}", host.name(), self.root));
        for &v in &self.vertices {
            g.add_vertex(host.vertex_label(v));
        }
        let local = |v: VertexId| self.vertices.binary_search(&v).unwrap();
        for &e in &self.edges {
            let (u, v) = host.endpoints(e);
            g.add_edge(local(u), local(v), host.edge_label(e)).unwrap();
        }
        RootedGraph::new(g, local(self.root)).expect("parts are connected")
    }
}

impl fmt::Display for RootedPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "root={} vertices={{{}}}", self.root, vs.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct PartCatalog {
    host: LabeledGraph,
    parts: Vec<RootedPart>,
    elementary: Vec<Vec<usize>>,
    index: HashMap<(Vec<VertexId>, VertexId), usize>,
}

impl PartCatalog {
    fn empty(host: &LabeledGraph) -> Self {
        PartCatalog {
            host: host.clone(),
            parts: Vec::new(),
            elementary: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn host(&self) -> &LabeledGraph {
        &self.host
    }

    pub fn parts(&self) -> &[RootedPart] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, id: usize) -> &RootedPart {
        &self.parts[id]
    }

    pub fn find(&self, vertices: &[VertexId], root: VertexId) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.index.get(&(key, root)).copied()
    }

    /// Elementary parts of a compound-root part, one per root child; empty
    /// for other parts.
    pub fn elementary_parts(&self, id: usize) -> &[usize] {
        &self.elementary[id]
    }

    pub fn is_compound_root(&self, id: usize) -> bool {
        self.parts[id].root_children(&self.host).len() >= 2
    }

    /// Number of parts with root `v`.
    pub fn count_rooted_at(&self, v: VertexId) -> usize {
        self.parts.iter().filter(|p| p.root == v).count()
    }

    /// Insert a part unless an equal `(vertex set, root)` exists; returns its id.
    fn insert(&mut self, root: VertexId, mut vertices: Vec<VertexId>, derivation: Derivation) -> (usize, bool) {
        vertices.sort_unstable();
        let key = (vertices.clone(), root);
        if let Some(&id) = self.index.get(&key) {
            return (id, false);
        }
        let id = self.parts.len();
        self.parts.push(RootedPart::new(&self.host, id, root, vertices, derivation));
        self.elementary.push(Vec::new());
        self.index.insert(key, id);
        (id, true)
    }

    /// Close the catalog under rules 2 and 3, starting from `start`.
    fn close_from(&mut self, start: usize) {
        let mut queue = VecDeque::from([start]);
        while let Some(id) = queue.pop_front() {
            let part = self.parts[id].clone();
            let children = part.root_children(&self.host);
            if children.len() == 1 {
                let (v, _) = children[0];
                let rest: Vec<VertexId> = part.vertices.iter().copied().filter(|&x| x != part.root).collect();
                let (nid, fresh) = self.insert(v, rest, Derivation::RootRemoved { from: id });
                if fresh {
                    queue.push_back(nid);
                }
            } else if children.len() >= 2 {
                let mut elementary = Vec::with_capacity(children.len());
                for &(v, e) in &children {
                    let mut branch = component_without(&self.host, &part.vertices, part.root, v);
                    branch.push(part.root);
                    let (nid, fresh) = self.insert(part.root, branch, Derivation::Branch { from: id, edge: e });
                    elementary.push(nid);
                    if fresh {
                        queue.push_back(nid);
                    }
                }
                self.elementary[id] = elementary;
            }
        }
    }
}

/// Vertices reachable from `start` inside `within` without passing `blocked`.
fn component_without(host: &LabeledGraph, within: &[VertexId], blocked: VertexId, start: VertexId) -> Vec<VertexId> {
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &(w, _) in host.neighbors(u) {
            if w != blocked && within.binary_search(&w).is_ok() && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen
}

fn require_tree(g: &LabeledGraph) -> Result<()> {
    if g.is_tree() {
        Ok(())
    } else if g.order() > 0 && !g.is_connected() {
        Err(Error::Disconnected {
            graph: g.name().to_string(),
        })
    } else {
        Err(Error::NotATree {
            graph: g.name().to_string(),
        })
    }
}

/// Parts of a rooted tree.
pub fn parts(t: &RootedGraph) -> Result<PartCatalog> {
    require_tree(t.graph())?;
    let host = t.graph();
    let mut cat = PartCatalog::empty(host);
    let (id, _) = cat.insert(t.root(), host.vertices().collect(), Derivation::Whole);
    cat.close_from(id);
    Ok(cat)
}

/// Union of the parts over every choice of root.
pub fn parts_star(h: &LabeledGraph) -> Result<PartCatalog> {
    require_tree(h)?;
    let mut cat = PartCatalog::empty(h);
    for s in h.vertices() {
        let (id, fresh) = cat.insert(s, h.vertices().collect(), Derivation::Whole);
        if fresh {
            cat.close_from(id);
        }
    }
    Ok(cat)
}

/// Parts rooted at `center` that lack one branch: for each neighbor `v` of
/// `center`, the component of `H - v` containing `center`. On a star these
/// are the star minus one leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionFamily {
    pub center: VertexId,
    pub members: Vec<RootedPart>,
}

pub fn deletion_family(h: &LabeledGraph, center: VertexId) -> Result<DeletionFamily> {
    require_tree(h)?;
    h.check_vertex(center)?;
    let all: Vec<VertexId> = h.vertices().collect();
    let members = h
        .neighbors(center)
        .iter()
        .enumerate()
        .map(|(i, &(v, _))| {
            let mut vs = component_without(h, &all, v, center);
            vs.sort_unstable();
            RootedPart::new(h, i, center, vs, Derivation::Whole)
        })
        .collect();
    Ok(DeletionFamily { center, members })
}

/// Compound-root part pairs between `parts(G^r)` and `parts_star(H)`.
#[derive(Clone, Debug)]
pub struct CompoundPairs {
    pub g_parts: PartCatalog,
    pub h_parts: PartCatalog,
    /// `(g part id, h part id)`, both compound-root.
    pub pairs: Vec<(usize, usize)>,
}

pub fn compound_pairs(g: &RootedGraph, h: &LabeledGraph) -> Result<CompoundPairs> {
    let g_parts = parts(g)?;
    let h_parts = parts_star(h)?;
    let gc: Vec<usize> = (0..g_parts.len()).filter(|&i| g_parts.is_compound_root(i)).collect();
    let hc: Vec<usize> = (0..h_parts.len()).filter(|&i| h_parts.is_compound_root(i)).collect();
    let pairs = gc.iter().flat_map(|&a| hc.iter().map(move |&b| (a, b))).collect();
    Ok(CompoundPairs { g_parts, h_parts, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn star(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (1..=n).map(|v| (0, v)).collect();
        LabeledGraph::from_edges("star", n + 1, &edges).unwrap()
    }

    fn path3() -> LabeledGraph {
        // a=0, b=1, c=2
        LabeledGraph::from_edges("abc", 3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn keys(cat: &PartCatalog) -> BTreeSet<(Vec<VertexId>, VertexId)> {
        cat.parts().iter().map(|p| (p.vertices.clone(), p.root)).collect()
    }

    #[test]
    fn path_rooted_at_end() {
        let cat = parts(&RootedGraph::new(path3(), 0).unwrap()).unwrap();
        let expected: BTreeSet<_> = [(vec![0, 1, 2], 0), (vec![1, 2], 1), (vec![2], 2)].into();
        assert_eq!(keys(&cat), expected);
        assert_eq!(cat.get(1).derivation, Derivation::RootRemoved { from: 0 });
    }

    #[test]
    fn path_rooted_at_center() {
        let cat = parts(&RootedGraph::new(path3(), 1).unwrap()).unwrap();
        let expected: BTreeSet<_> =
            [(vec![0, 1, 2], 1), (vec![0, 1], 1), (vec![1, 2], 1), (vec![0], 0), (vec![2], 2)].into();
        assert_eq!(keys(&cat), expected);
        assert!(cat.is_compound_root(0));
        assert_eq!(cat.elementary_parts(0).len(), 2);
    }

    #[test]
    fn path_all_roots() {
        let cat = parts_star(&path3()).unwrap();
        let expected: BTreeSet<_> = [
            (vec![0, 1, 2], 0),
            (vec![0, 1, 2], 1),
            (vec![0, 1, 2], 2),
            (vec![0, 1], 1),
            (vec![1, 2], 1),
            (vec![0], 0),
            (vec![2], 2),
        ]
        .into();
        assert_eq!(keys(&cat), expected);
    }

    #[test]
    fn star_counts() {
        for n in 3..=64 {
            let h = star(n);
            let g_parts = parts(&RootedGraph::new(h.clone(), 0).unwrap()).unwrap();
            assert_eq!(g_parts.len(), 2 * n + 1);
            assert_eq!(parts_star(&h).unwrap().len(), 4 * n + 1);
            let fam = deletion_family(&h, 0).unwrap();
            assert_eq!(fam.members.len(), n);
            assert_eq!(g_parts.elementary_parts(0).len(), n);
        }
    }

    #[test]
    fn star_parts_star_contains_deletion_family() {
        let n = 6;
        let h = star(n);
        let cat = parts_star(&h).unwrap();
        for m in deletion_family(&h, 0).unwrap().members {
            let id = cat.find(&m.vertices, 0).expect("member of B_H is a part");
            assert!(cat.is_compound_root(id));
            assert_eq!(cat.elementary_parts(id).len(), n - 1);
        }
    }

    #[test]
    fn compound_pairs_on_stars() {
        let n = 7;
        let g = RootedGraph::new(star(n), 0).unwrap();
        let cp = compound_pairs(&g, &star(n)).unwrap();
        assert_eq!(cp.pairs.len(), n + 1);
        let fam = deletion_family(&star(n), 0).unwrap();
        for m in &fam.members {
            let hid = cp.h_parts.find(&m.vertices, 0).unwrap();
            assert!(cp.pairs.contains(&(0, hid)));
        }
        let full = cp.h_parts.find(&(0..=n).collect::<Vec<_>>(), 0).unwrap();
        assert!(cp.pairs.contains(&(0, full)));
    }

    #[test]
    fn compound_pairs_small_cases() {
        let edge = LabeledGraph::from_edges("e", 2, &[(0, 1)]).unwrap();
        let cp = compound_pairs(&RootedGraph::new(edge.clone(), 0).unwrap(), &edge).unwrap();
        assert!(cp.pairs.is_empty());

        let cp = compound_pairs(&RootedGraph::new(path3(), 1).unwrap(), &path3()).unwrap();
        assert_eq!(cp.pairs.len(), 1);
        let (a, b) = cp.pairs[0];
        assert_eq!(cp.g_parts.get(a).root, 1);
        assert_eq!(cp.h_parts.get(b).root, 1);
        assert_eq!(cp.h_parts.get(b).vertices, vec![0, 1, 2]);
    }

    #[test]
    fn non_trees_are_rejected() {
        assert!(matches!(parts_star(&named::triangle()), Err(Error::NotATree { .. })));
        let single = LabeledGraph::from_edges("one", 1, &[]).unwrap();
        assert_eq!(parts_star(&single).unwrap().len(), 1);
    }

    #[test]
    fn parts_are_bounded_and_connected() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..14);
            let mut g = LabeledGraph::from_edges("t", n, &[]).unwrap();
            for v in 1..n {
                g.add_edge(rng.gen_range(0..v), v, "").unwrap();
            }
            let root = rng.gen_range(0..n);
            let cat = parts(&RootedGraph::new(g.clone(), root).unwrap()).unwrap();
            assert!(cat.len() <= 2 * n);
            for p in cat.parts() {
                assert!(p.vertices.binary_search(&p.root).is_ok());
                assert_eq!(p.edges.len() + 1, p.vertices.len());
                assert!(p.to_rooted_graph(&g).graph().is_tree());
                if cat.is_compound_root(p.id) {
                    assert!(cat.elementary_parts(p.id).len() >= 2);
                }
            }
        }
    }
}
