//! Membership of a graph in the class of triangle-free graphs with
//! `Δ ≤ d` and `ν ≤ m`.

use serde::Serialize;

use crate::graph::Graph;
use crate::matching::matching_number;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub d: u64,
    pub m: u64,
    pub vertices: usize,
    pub edges: u64,
    pub max_degree: usize,
    pub matching_number: usize,
    pub triangle_free: bool,
    pub degree_ok: bool,
    pub matching_ok: bool,
    /// `|E| ≤ (d + 1)·m`, the edge-colouring counting bound.
    pub counting_bound_ok: bool,
}

impl MembershipReport {
    pub fn passes(&self) -> bool {
        self.triangle_free && self.degree_ok && self.matching_ok && self.counting_bound_ok
    }

    /// Names of the failed checks, in report order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.triangle_free {
            out.push("triangle");
        }
        if !self.degree_ok {
            out.push("max-degree");
        }
        if !self.matching_ok {
            out.push("matching-number");
        }
        if !self.counting_bound_ok {
            out.push("counting-bound");
        }
        out
    }
}

pub fn verify_membership(g: &Graph, d: u64, m: u64) -> MembershipReport {
    let edges = g.edge_count() as u64;
    let max_degree = g.max_degree();
    let nu = matching_number(g);
    MembershipReport {
        d,
        m,
        vertices: g.order(),
        edges,
        max_degree,
        matching_number: nu,
        triangle_free: g.is_triangle_free(),
        degree_ok: max_degree as u64 <= d,
        matching_ok: nu as u64 <= m,
        counting_bound_ok: edges <= (d + 1) * m,
    }
}
