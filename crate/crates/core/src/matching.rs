//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm) and the factor-criticality test built on it.

use std::collections::VecDeque;

use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, each stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    fn from_mates(mate: &[usize]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(u, &v)| v != NONE && u < v)
            .map(|(u, &v)| (u, v))
            .collect();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges are edges of `g` and pairwise disjoint.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.order()];
        for &(u, v) in &self.edges {
            if u >= g.order() || v >= g.order() || !g.has_edge(u, v) || used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }
}

/// Mate array of a maximum matching for the graph given by adjacency lists.
pub(crate) fn blossom(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![NONE; n];

    // greedy start
    for u in 0..n {
        if mate[u] == NONE {
            if let Some(&v) = adj[u].iter().find(|&&v| mate[v] == NONE) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }

    let mut search = Search::new(n);
    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some(end) = search.augmenting_path(adj, &mate, root) {
            let mut v = end;
            while v != NONE {
                let pv = search.parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }
    mate
}

struct Search {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Returns the free endpoint of an augmenting path from `root`; the path
    /// is recorded in `parent`.
    fn augmenting_path(&mut self, adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<usize> {
        let n = adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// A maximum-cardinality matching of `g`.
pub fn maximum_matching(g: &Graph) -> Matching {
    Matching::from_mates(&blossom(&g.adjacency_lists()))
}

/// The matching number ν(g).
pub fn matching_number(g: &Graph) -> usize {
    matching_number_adj(&g.adjacency_lists())
}

pub(crate) fn matching_number_adj(adj: &[Vec<usize>]) -> usize {
    blossom(adj).iter().filter(|&&m| m != NONE).count() / 2
}

/// Connected, odd order, and `g - v` has a perfect matching for every `v`.
pub fn is_factor_critical(g: &Graph) -> bool {
    g.order() % 2 == 1 && g.is_connected() && factor_critical_adj(&g.adjacency_lists())
}

/// Vertex-deletion half of the factor-critical test; connectivity and
/// parity are checked by the caller.
pub(crate) fn factor_critical_adj(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n == 1 {
        return true;
    }
    let target = (n - 1) / 2;
    let mut sub: Vec<Vec<usize>> = Vec::with_capacity(n - 1);
    (0..n).all(|v| {
        sub.clear();
        for (u, nbrs) in adj.iter().enumerate() {
            if u == v {
                continue;
            }
            sub.push(
                nbrs.iter()
                    .filter(|&&w| w != v)
                    .map(|&w| if w > v { w - 1 } else { w })
                    .collect(),
            );
        }
        matching_number_adj(&sub) == target
    })
}
