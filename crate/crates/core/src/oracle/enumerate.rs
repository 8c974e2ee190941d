//! Isomorph-free generation by canonical vertex augmentation.
//!
//! Level `k + 1` is built from level `k` by adding one vertex with a chosen
//! neighbour set. A child is kept only if the added vertex is equivalent,
//! under the child's automorphism group, to its canonical deletion vertex;
//! isomorphic children of one parent are merged by canonical code. Every
//! filter applied below is inherited by induced subgraphs, which is what
//! makes the scheme complete.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical, individualised, unit_partition};
use crate::graph::Graph;
use crate::matching::matching_number_adj;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProfileFilter {
    All,
    Regular(usize),
    AlmostRegular(usize),
}

/// Which graphs [`super::Oracle::enumerate`] yields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumFilter {
    pub n: usize,
    pub max_degree: usize,
    pub triangle_free: bool,
    pub connected: bool,
    pub profile: ProfileFilter,
    /// Optional bound on the matching number, used as a search-time prune.
    pub max_matching: Option<usize>,
}

impl EnumFilter {
    /// Triangle-free graphs on `n` vertices with maximum degree at most
    /// `max_degree`, connected or not.
    pub fn new(n: usize, max_degree: usize) -> Self {
        EnumFilter {
            n,
            max_degree,
            triangle_free: true,
            connected: false,
            profile: ProfileFilter::All,
            max_matching: None,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn with_triangles(mut self) -> Self {
        self.triangle_free = false;
        self
    }

    pub fn profile(mut self, p: ProfileFilter) -> Self {
        self.profile = p;
        self
    }

    pub fn max_matching(mut self, m: usize) -> Self {
        self.max_matching = Some(m);
        self
    }

    /// `Regular(d)` for even `d`, `AlmostRegular(d)` for odd `d`.
    pub fn near_regular(n: usize, d: usize) -> Self {
        let p = if d % 2 == 0 {
            ProfileFilter::Regular(d)
        } else {
            ProfileFilter::AlmostRegular(d)
        };
        EnumFilter::new(n, d).connected().profile(p)
    }
}

/// One generated graph in canonical form.
#[derive(Clone)]
struct Node {
    rows: Vec<u32>,
    /// Upper bound on the matching number.
    nu: u8,
}

fn degree(rows: &[u32], v: usize) -> usize {
    rows[v].count_ones() as usize
}

/// Degree room left for the `remaining` vertices still to be added.
fn profile_feasible(rows: &[u32], profile: ProfileFilter, remaining: usize) -> bool {
    let (d, slack) = match profile {
        ProfileFilter::All => return true,
        ProfileFilter::Regular(d) => (d, 0),
        ProfileFilter::AlmostRegular(d) => (d, 1),
    };
    let mut short = 0;
    let mut deficit = 0;
    for v in 0..rows.len() {
        let deg = degree(rows, v);
        let reach = deg + remaining;
        if reach + slack < d {
            return false;
        }
        if reach < d {
            short += 1;
        }
        deficit += d - deg.min(d);
    }
    short <= slack && deficit <= remaining * d + slack
}

fn profile_exact(rows: &[u32], profile: ProfileFilter) -> bool {
    let degs = (0..rows.len()).map(|v| degree(rows, v));
    match profile {
        ProfileFilter::All => true,
        ProfileFilter::Regular(d) => degs.into_iter().all(|x| x == d),
        ProfileFilter::AlmostRegular(d) => {
            let mut low = 0;
            for x in degs {
                if x + 1 == d {
                    low += 1;
                } else if x != d {
                    return false;
                }
            }
            low == 1
        }
    }
}

fn is_connected(rows: &[u32]) -> bool {
    let n = rows.len();
    if n == 0 {
        return false;
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            next |= rows[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

pub(crate) fn matching_number_rows(rows: &[u32]) -> usize {
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|&r| {
            let mut out = Vec::with_capacity(r.count_ones() as usize);
            let mut r = r;
            while r != 0 {
                out.push(r.trailing_zeros() as usize);
                r &= r - 1;
            }
            out
        })
        .collect();
    matching_number_adj(&adj)
}

/// Isomorphism-invariant vertex score; the canonical deletion vertex has
/// the largest score.
fn score(rows: &[u32], v: usize) -> u32 {
    let mut s = 0;
    let mut r = rows[v];
    while r != 0 {
        s += rows[r.trailing_zeros() as usize].count_ones();
        r &= r - 1;
    }
    (rows[v].count_ones() << 16) | s
}

/// Whether the last vertex of `rows` is accepted as the canonical
/// augmentation; on success returns the canonical code.
fn accept(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    let new = n - 1;
    let scores: Vec<u32> = (0..n).map(|v| score(rows, v)).collect();
    let top = *scores.iter().max().expect("non-empty");
    if scores[new] != top {
        return None;
    }
    let canon = canonical(rows, unit_partition(n));
    let c = canon
        .order
        .iter()
        .rev()
        .map(|&v| v as usize)
        .find(|&v| scores[v] == top)
        .expect("top score is attained");
    if c == new || canonical(rows, individualised(n, new)).code == canonical(rows, individualised(n, c)).code {
        Some(canon.code)
    } else {
        None
    }
}

/// Calls `f` on every admissible neighbour set of the next vertex.
fn neighbour_sets(rows: &[u32], filter: &EnumFilter, f: &mut impl FnMut(u32)) {
    fn go(
        rows: &[u32],
        filter: &EnumFilter,
        start: usize,
        set: u32,
        size: usize,
        f: &mut impl FnMut(u32),
    ) {
        f(set);
        if size == filter.max_degree {
            return;
        }
        for v in start..rows.len() {
            if degree(rows, v) >= filter.max_degree {
                continue;
            }
            if filter.triangle_free && rows[v] & set != 0 {
                continue;
            }
            go(rows, filter, v + 1, set | 1 << v, size + 1, f);
        }
    }
    go(rows, filter, 0, 0, 0, f);
}

fn children(parent: &Node, filter: &EnumFilter) -> Vec<Node> {
    let k = parent.rows.len();
    let remaining = filter.n - (k + 1);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    let mut rows = parent.rows.clone();
    rows.push(0);
    neighbour_sets(&parent.rows, filter, &mut |set| {
        for (v, row) in rows.iter_mut().enumerate().take(k) {
            *row = parent.rows[v] | (((set >> v) & 1) << k);
        }
        rows[k] = set;
        if !profile_feasible(&rows, filter.profile, remaining) {
            return;
        }
        // adding a vertex raises the matching number by at most one
        let nu = match filter.max_matching {
            Some(limit) if parent.nu as usize >= limit => {
                let nu = matching_number_rows(&rows);
                if nu > limit {
                    return;
                }
                nu as u8
            }
            _ => parent.nu + 1,
        };
        if let Some(code) = accept(&rows) {
            if seen.insert(code.clone()) {
                out.push(Node { rows: code, nu });
            }
        }
    });
    out
}

/// Canonical forms of every graph on `filter.n` vertices passing the
/// inherited filters (everything except connectivity and exact profile).
fn generate(filter: &EnumFilter) -> Vec<Node> {
    let mut level = vec![Node { rows: Vec::new(), nu: 0 }];
    for _ in 0..filter.n {
        let next: Vec<Vec<Node>> = level.par_iter().map(|p| children(p, filter)).collect();
        level = next.into_iter().flatten().collect();
    }
    level
}

/// Neighbour masks of the canonical representatives passing `filter`.
pub(crate) fn enumerate_rows(filter: &EnumFilter) -> Vec<Vec<u32>> {
    assert!(filter.n <= 32, "row representation holds at most 32 vertices");
    generate(filter)
        .into_iter()
        .map(|node| node.rows)
        .filter(|rows| !filter.connected || is_connected(rows))
        .filter(|rows| profile_exact(rows, filter.profile))
        .collect()
}

pub(crate) fn to_graph(rows: &[u32]) -> Graph {
    Graph::from_rows32(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::canon::relabelled;

    /// Every labelled graph on `n` vertices, deduplicated by the smallest
    /// relabelling over all `n!` permutations.
    fn naive_classes(n: usize, keep: impl Fn(&[u32]) -> bool) -> usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut perms: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (0..n as u8)
                        .filter(|x| !p.contains(x))
                        .map(|x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        let mut classes = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let mut rows = vec![0u32; n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    rows[u] |= 1 << v;
                    rows[v] |= 1 << u;
                }
            }
            if !keep(&rows) {
                continue;
            }
            let min = perms.iter().map(|p| relabelled(&rows, p)).min().unwrap();
            classes.insert(min);
        }
        classes.len()
    }

    fn count(filter: EnumFilter) -> usize {
        enumerate_rows(&filter).len()
    }

    #[test]
    fn all_graphs_counts() {
        // number of graphs on n vertices: 1, 2, 4, 11, 34, 156
        let expect = [1, 1, 2, 4, 11, 34, 156];
        for n in 0..=6 {
            assert_eq!(count(EnumFilter::new(n, n).with_triangles()), expect[n], "n={n}");
        }
    }

    #[test]
    fn matches_naive_generation() {
        for n in 1..=6 {
            for dmax in 1..=4usize {
                for tf in [true, false] {
                    for conn in [true, false] {
                        let mut f = EnumFilter::new(n, dmax);
                        f.triangle_free = tf;
                        f.connected = conn;
                        let naive = naive_classes(n, |rows| {
                            let g = to_graph(rows);
                            g.max_degree() <= dmax
                                && (!tf || g.is_triangle_free())
                                && (!conn || g.is_connected())
                        });
                        assert_eq!(count(f), naive, "n={n} dmax={dmax} tf={tf} conn={conn}");
                    }
                }
            }
        }
    }

    #[test]
    fn profiles_match_naive_generation() {
        for n in 2..=6 {
            for d in 1..=3 {
                for p in [ProfileFilter::Regular(d), ProfileFilter::AlmostRegular(d)] {
                    let f = EnumFilter::new(n, d).profile(p);
                    let naive = naive_classes(n, |rows| {
                        let g = to_graph(rows);
                        g.max_degree() <= d && g.is_triangle_free() && profile_exact(rows, p)
                    });
                    assert_eq!(count(f), naive, "n={n} {p:?}");
                }
            }
        }
    }

    #[test]
    fn matching_prune_matches_naive() {
        for n in 1..=6 {
            for m in 0..=2 {
                let f = EnumFilter::new(n, 3).max_matching(m);
                let naive = naive_classes(n, |rows| {
                    let g = to_graph(rows);
                    g.max_degree() <= 3 && g.is_triangle_free() && matching_number_rows(rows) <= m
                });
                assert_eq!(count(f), naive, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn paths_and_cycle_on_five() {
        let gs = enumerate_rows(&EnumFilter::new(5, 2).connected());
        assert_eq!(gs.len(), 2);
        let mut edges: Vec<usize> = gs.iter().map(|r| to_graph(r).edge_count()).collect();
        edges.sort();
        assert_eq!(edges, vec![4, 5]);
    }

    #[test]
    fn seven_vertex_graphs() {
        // 1044 graphs on 7 vertices
        assert_eq!(count(EnumFilter::new(7, 7).with_triangles()), 1044);
    }
}
