//! Canonical labelling by individualisation and refinement.
//!
//! Graphs have at most 32 vertices and are given as neighbour masks. The
//! canonical form is the smallest relabelled adjacency (compared row by row)
//! over the leaves of the search tree; subtrees equivalent under an
//! automorphism already discovered are skipped.

use std::cmp::Ordering;

/// Cells of an ordered partition, each a vertex mask.
pub(crate) type Partition = Vec<u32>;

pub(crate) fn unit_partition(n: usize) -> Partition {
    if n == 0 {
        Vec::new()
    } else {
        vec![full_mask(n)]
    }
}

/// `{v}` first, then everything else.
pub(crate) fn individualised(n: usize, v: usize) -> Partition {
    let rest = full_mask(n) & !(1 << v);
    if rest == 0 {
        vec![1 << v]
    } else {
        vec![1 << v, rest]
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn mix(h: u64, x: u64) -> u64 {
    let h = (h ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    h ^ (h >> 29)
}

/// Splits cells by neighbour counts into every cell until stable.
fn refine(rows: &[u32], cells: &mut Partition, scratch: &mut Vec<(u64, usize)>) {
    let n = rows.len();
    loop {
        let before = cells.len();
        if before == n {
            return;
        }
        let mut next: Partition = Vec::with_capacity(n);
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            scratch.clear();
            let mut m = cell;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let sig = cells
                    .iter()
                    .fold(0u64, |h, &c| mix(h, (rows[v] & c).count_ones() as u64));
                scratch.push((sig, v));
            }
            scratch.sort_unstable();
            let mut mask = 0u32;
            let mut last = scratch[0].0;
            for &(sig, v) in scratch.iter() {
                if sig != last {
                    next.push(mask);
                    mask = 0;
                    last = sig;
                }
                mask |= 1 << v;
            }
            next.push(mask);
        }
        *cells = next;
        if cells.len() == before {
            return;
        }
    }
}

/// Rows of the graph relabelled so that `order[i]` becomes vertex `i`.
pub(crate) fn relabelled(rows: &[u32], order: &[u8]) -> Vec<u32> {
    let mut pos = [0u8; 32];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u8;
    }
    order
        .iter()
        .map(|&v| {
            let mut r = rows[v as usize];
            let mut out = 0u32;
            while r != 0 {
                out |= 1 << pos[r.trailing_zeros() as usize];
                r &= r - 1;
            }
            out
        })
        .collect()
}

pub(crate) struct Canonical {
    /// `order[i]` is the vertex placed at position `i`.
    pub order: Vec<u8>,
    /// Rows of the canonical relabelling.
    pub code: Vec<u32>,
}

struct Search<'a> {
    rows: &'a [u32],
    best: Option<Canonical>,
    /// Automorphisms as images `g[v]`.
    generators: Vec<Vec<u8>>,
    scratch: Vec<(u64, usize)>,
}

impl Search<'_> {
    fn visit(&mut self, mut cells: Partition, path: &mut Vec<u8>) {
        refine(self.rows, &mut cells, &mut self.scratch);
        if cells.len() == self.rows.len() {
            self.leaf(&cells);
            return;
        }
        let target_idx = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("non-discrete partition has a large cell");
        let target = cells[target_idx];
        let mut explored: Vec<u8> = Vec::new();
        let mut m = target;
        while m != 0 {
            let w = m.trailing_zeros() as u8;
            m &= m - 1;
            if !explored.is_empty() && self.equivalent_to_explored(w, &explored, path) {
                continue;
            }
            explored.push(w);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target_idx]);
            child.push(1 << w);
            child.push(target & !(1 << w));
            child.extend_from_slice(&cells[target_idx + 1..]);
            path.push(w);
            self.visit(child, path);
            path.pop();
        }
    }

    fn leaf(&mut self, cells: &Partition) {
        let order: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let code = relabelled(self.rows, &order);
        match &self.best {
            None => self.best = Some(Canonical { order, code }),
            Some(best) => match code.cmp(&best.code) {
                Ordering::Less => self.best = Some(Canonical { order, code }),
                Ordering::Equal => {
                    let mut g = vec![0u8; order.len()];
                    for (&a, &b) in best.order.iter().zip(&order) {
                        g[a as usize] = b;
                    }
                    self.generators.push(g);
                }
                Ordering::Greater => {}
            },
        }
    }

    /// `w` lies in the orbit of an explored sibling under the known
    /// automorphisms that fix the current path pointwise.
    fn equivalent_to_explored(&self, w: u8, explored: &[u8], path: &[u8]) -> bool {
        let n = self.rows.len();
        let mut parent: Vec<u8> = (0..n as u8).collect();
        fn find(p: &mut [u8], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut any = false;
        for g in &self.generators {
            if path.iter().any(|&p| g[p as usize] != p) {
                continue;
            }
            any = true;
            for v in 0..n as u8 {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v as usize]));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == rw)
    }
}

/// Canonical form of the graph with the given initial ordered partition.
pub(crate) fn canonical(rows: &[u32], initial: Partition) -> Canonical {
    if rows.is_empty() {
        return Canonical { order: Vec::new(), code: Vec::new() };
    }
    let mut s = Search {
        rows,
        best: None,
        generators: Vec::new(),
        scratch: Vec::with_capacity(rows.len()),
    };
    s.visit(initial, &mut Vec::new());
    s.best.expect("search reaches at least one leaf")
}
