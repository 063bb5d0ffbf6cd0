//! Terms of two-letter words read as graphs: each word `xy` is the edge
//! `{x, y}`. Bipartiteness is decided by breadth-first 2-coloring, which also
//! produces an odd cycle when the coloring fails.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::terms::{Term, Var, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("word `{0}` repeats a letter and is not a simple edge")]
    Loop(Word),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TermGraph {
    vertices: BTreeSet<Var>,
    edges: BTreeSet<(Var, Var)>,
}

impl TermGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_edge(&mut self, a: Var, b: Var) {
        self.vertices.insert(a.clone());
        self.vertices.insert(b.clone());
        if a <= b {
            self.edges.insert((a, b));
        } else {
            self.edges.insert((b, a));
        }
    }

    pub fn vertices(&self) -> &BTreeSet<Var> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(Var, Var)> {
        &self.edges
    }

    pub fn has_edge(&self, a: &Var, b: &Var) -> bool {
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        self.edges.contains(&key)
    }

    pub fn adjacency(&self) -> BTreeMap<&Var, BTreeSet<&Var>> {
        let mut adj: BTreeMap<&Var, BTreeSet<&Var>> = self.vertices.iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in &self.edges {
            adj.get_mut(a).expect("edge endpoints are vertices").insert(b);
            adj.get_mut(b).expect("edge endpoints are vertices").insert(a);
        }
        adj
    }

    /// Connected components, each as a sorted vertex set, ordered by least
    /// vertex.
    pub fn components(&self) -> Vec<BTreeSet<Var>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<&Var> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v.clone());
                for &w in &adj[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// The graph of the length-2 words of `a`. Other words are skipped; a
/// length-2 word with a repeated letter is an error.
pub fn term_graph(a: &Term) -> Result<TermGraph, GraphError> {
    let mut g = TermGraph::new();
    for w in a.words().iter().filter(|w| w.len() == 2) {
        let (x, y) = (&w.letters()[0], &w.letters()[1]);
        if x == y {
            return Err(GraphError::Loop(w.clone()));
        }
        g.add_edge(x.clone(), y.clone());
    }
    Ok(g)
}

/// Outcome of 2-coloring a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bipartiteness {
    /// A proper coloring; `false`/`true` are the two classes. Each component
    /// colors its least vertex `false`.
    Bipartite(BTreeMap<Var, bool>),
    /// A simple cycle `v0 v1 … v(k-1)` of odd length `k`; consecutive vertices
    /// and `v(k-1) v0` are adjacent.
    OddCycle(Vec<Var>),
}

impl Bipartiteness {
    pub fn odd_cycle(&self) -> Option<&[Var]> {
        match self {
            Bipartiteness::OddCycle(c) => Some(c),
            Bipartiteness::Bipartite(_) => None,
        }
    }

    pub fn coloring(&self) -> Option<&BTreeMap<Var, bool>> {
        match self {
            Bipartiteness::Bipartite(c) => Some(c),
            Bipartiteness::OddCycle(_) => None,
        }
    }
}

/// Breadth-first 2-coloring per component. When an edge joins two vertices
/// of the same color they sit at the same BFS depth, and the two tree paths
/// up to their lowest common ancestor close an odd cycle with that edge.
pub fn odd_cycle(g: &TermGraph) -> Bipartiteness {
    let adj = g.adjacency();
    let mut color: BTreeMap<&Var, bool> = BTreeMap::new();
    let mut parent: BTreeMap<&Var, &Var> = BTreeMap::new();
    for root in &g.vertices {
        if color.contains_key(root) {
            continue;
        }
        color.insert(root, false);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v];
            for &w in &adj[v] {
                match color.get(w) {
                    None => {
                        color.insert(w, !cv);
                        parent.insert(w, v);
                        queue.push_back(w);
                    }
                    Some(&cw) if cw == cv => return Bipartiteness::OddCycle(close_cycle(v, w, &parent)),
                    Some(_) => {}
                }
            }
        }
    }
    Bipartiteness::Bipartite(color.into_iter().map(|(v, c)| (v.clone(), c)).collect())
}

fn close_cycle<'a>(a: &'a Var, b: &'a Var, parent: &BTreeMap<&'a Var, &'a Var>) -> Vec<Var> {
    let path_to_root = |mut v: &'a Var| {
        let mut path = vec![v];
        while let Some(&p) = parent.get(v) {
            path.push(p);
            v = p;
        }
        path
    };
    let pa = path_to_root(a);
    let pb = path_to_root(b);
    let on_b: BTreeSet<&Var> = pb.iter().copied().collect();
    let lca_pos_a = pa
        .iter()
        .position(|v| on_b.contains(v))
        .expect("both paths reach the root");
    let lca = pa[lca_pos_a];
    let lca_pos_b = pb.iter().position(|&v| v == lca).expect("lca lies on both paths");
    // a .. lca, then lca's child on b's side .. b; the edge b-a closes it.
    let mut cycle: Vec<Var> = pa[..=lca_pos_a].iter().map(|&v| v.clone()).collect();
    cycle.extend(pb[..lca_pos_b].iter().rev().map(|&v| v.clone()));
    cycle
}

/// `cycle` is a closed walk of odd length along edges of `g` with no
/// repeated vertex.
pub fn is_odd_cycle(g: &TermGraph, cycle: &[Var]) -> bool {
    let k = cycle.len();
    let distinct: BTreeSet<&Var> = cycle.iter().collect();
    k % 2 == 1 && k >= 3 && distinct.len() == k && (0..k).all(|i| g.has_edge(&cycle[i], &cycle[(i + 1) % k]))
}

pub fn is_proper_coloring(g: &TermGraph, coloring: &BTreeMap<Var, bool>) -> bool {
    g.vertices.iter().all(|v| coloring.contains_key(v)) && g.edges.iter().all(|(a, b)| coloring[a] != coloring[b])
}
