//! Exhaustive ground truth for small parameters.
//!
//! The oracle enumerates triangle-free graphs one isomorphism class at a
//! time and reads off extremal edge counts and `Z(d)` directly, without
//! using any of the closed forms.
//!
//! Vertex bound. A graph without isolated vertices, with `Δ ≤ d` and
//! `ν ≤ m`, has at most `2dm` vertices: the `2ν` matched vertices each have
//! at most `d − 1` unmatched neighbours, and unmatched vertices are only
//! adjacent to matched ones. Brute force up to `2dm` vertices is therefore
//! exhaustive.

mod canon;
mod enumerate;

use serde::{Serialize, Serializer};

pub use enumerate::{EnumFilter, ProfileFilter};

use crate::error::{Error, Result};
use crate::formulas::{self, ZdKind, ZdResolution};
use crate::graph::Graph;
use crate::io::graph6_encode;
use crate::knapsack::{solve_model2, UtilityTable};
use crate::matching::{factor_critical_adj, is_factor_critical};
use enumerate::{enumerate_rows, matching_number_rows, to_graph};

/// Default vertex budget for enumeration.
pub const DEFAULT_BUDGET: usize = 13;

/// Largest budget the row representation supports.
pub const HARD_CAP: usize = 32;

fn graph6_field<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&graph6_encode(g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub d: u64,
    pub m: u64,
    pub best_edges: u64,
    /// Serialised as graph6.
    #[serde(serialize_with = "graph6_field")]
    pub witness: Graph,
    pub vertex_bound_used: usize,
    /// The vertex bound covers every candidate.
    pub exhaustive: bool,
}

/// Upper bound on the vertex count of an isolated-vertex-free member of
/// the class `Δ ≤ d`, `ν ≤ m`.
pub fn vertex_bound(d: u64, m: u64) -> u64 {
    2 * d * m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    budget: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { budget: DEFAULT_BUDGET }
    }
}

impl Oracle {
    pub fn with_budget(budget: usize) -> Result<Self> {
        if budget > HARD_CAP {
            return Err(Error::BudgetExceeded { requested: budget, budget: HARD_CAP });
        }
        Ok(Oracle { budget })
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.budget {
            return Err(Error::BudgetExceeded { requested: n, budget: self.budget });
        }
        Ok(())
    }

    /// One representative per isomorphism class passing `filter`.
    pub fn enumerate(&self, filter: &EnumFilter) -> Result<Vec<Graph>> {
        self.check(filter.n)?;
        Ok(enumerate_rows(filter).iter().map(|r| to_graph(r)).collect())
    }

    /// Largest triangle-free graph with `Δ ≤ d`, `ν ≤ m` on at most
    /// `min(vertex_cap, 2dm)` vertices.
    pub fn brute_force_f(&self, d: u64, m: u64, vertex_cap: usize) -> Result<OracleRecord> {
        if d == 0 || m == 0 {
            return Err(Error::InvalidParameter("d and m must be positive".into()));
        }
        self.check(vertex_cap)?;
        let bound = vertex_bound(d, m);
        let n = (vertex_cap as u64).min(bound) as usize;
        // graphs with fewer vertices appear padded with isolated vertices
        let filter = EnumFilter::new(n, d as usize).max_matching(m as usize);
        let rows = enumerate_rows(&filter);
        let best = rows
            .iter()
            .max_by_key(|r| r.iter().map(|x| x.count_ones()).sum::<u32>())
            .expect("the edgeless graph is always present");
        let witness = to_graph(best).without_isolated();
        Ok(OracleRecord {
            d,
            m,
            best_edges: witness.edge_count() as u64,
            witness,
            vertex_bound_used: n,
            exhaustive: vertex_cap as u64 >= bound,
        })
    }

    /// Largest connected triangle-free graph on `2i + 1` vertices with
    /// `Δ ≤ d` and `ν = i`.
    pub fn brute_force_component_f(&self, d: u64, i: u64) -> Result<OracleRecord> {
        if d < 2 || i == 0 {
            return Err(Error::InvalidParameter(format!(
                "components need d >= 2 and i >= 1, got d = {d}, i = {i}"
            )));
        }
        let n = 2 * i as usize + 1;
        self.check(n)?;
        let filter = EnumFilter::new(n, d as usize).connected().max_matching(i as usize);
        let best = enumerate_rows(&filter)
            .into_iter()
            .filter(|r| matching_number_rows(r) == i as usize)
            .max_by_key(|r| r.iter().map(|x| x.count_ones()).sum::<u32>())
            .ok_or_else(|| {
                Error::SearchFailed(format!("no connected graph with d = {d}, nu = {i}"))
            })?;
        let witness = to_graph(&best);
        Ok(OracleRecord {
            d,
            m: i,
            best_edges: witness.edge_count() as u64,
            witness,
            vertex_bound_used: n,
            exhaustive: true,
        })
    }

    /// `d·m` plus the knapsack optimum over component surpluses measured by
    /// [`Oracle::brute_force_component_f`].
    pub fn oracle_f_via_components(&self, d: u64, m: u64) -> Result<u64> {
        if d < 2 || m < d {
            return Err(Error::InvalidParameter(format!(
                "need 2 <= d <= m, got d = {d}, m = {m}"
            )));
        }
        let top = formulas::resolve_zd(d, false)?.upper().min(m);
        let mut values = Vec::new();
        for i in d..=top {
            let rec = self.brute_force_component_f(d, i)?;
            values.push(rec.best_edges - d * i);
        }
        let table = UtilityTable::proven(d, values)?;
        Ok(d * m + solve_model2(d, m, &table)?.objective)
    }

    /// Witnesses for `Z(d) ≤ nu`: connected, (almost) `d`-regular,
    /// triangle-free, factor-critical graphs on `2nu + 1` vertices.
    fn near_regular_witnesses(&self, d: u64, nu: u64) -> Result<Vec<Vec<u32>>> {
        let n = 2 * nu as usize + 1;
        self.check(n)?;
        if n < d as usize + 1 {
            return Ok(Vec::new());
        }
        let filter = EnumFilter::near_regular(n, d as usize);
        Ok(enumerate_rows(&filter)
            .into_iter()
            .filter(|r| {
                let adj = to_graph(r).adjacency_lists();
                factor_critical_adj(&adj)
            })
            .collect())
    }

    /// First witness found at matching number `nu`, if any.
    pub fn find_near_regular(&self, d: u64, nu: u64) -> Result<Option<Graph>> {
        Ok(self.near_regular_witnesses(d, nu)?.first().map(|r| to_graph(r)))
    }

    /// Number of isomorphism classes of witnesses at matching number `nu`.
    pub fn count_witnesses(&self, d: u64, nu: u64) -> Result<usize> {
        if d < 2 || nu == 0 {
            return Err(Error::InvalidParameter("need d >= 2 and nu >= 1".into()));
        }
        Ok(self.near_regular_witnesses(d, nu)?.len())
    }

    /// Smallest `nu ≤ nu_max` admitting a witness, every smaller value
    /// refuted exhaustively.
    pub fn search_zd(&self, d: u64, nu_max: u64) -> Result<ZdResolution> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d = {d} must be at least 2")));
        }
        self.check(2 * nu_max as usize + 1)?;
        for nu in 1..=nu_max {
            if let Some(g) = self.near_regular_witnesses(d, nu)?.first() {
                debug_assert!(is_factor_critical(&to_graph(g)));
                return Ok(ZdResolution {
                    d,
                    kind: ZdKind::Exact { value: nu },
                    provenance: "exhaustive oracle search",
                });
            }
        }
        let hi = formulas::resolve_zd(d, false)?.upper().max(nu_max + 1);
        Ok(ZdResolution {
            d,
            kind: ZdKind::Interval { lo: nu_max + 1, hi },
            provenance: "exhaustive oracle search (refuted up to the bound)",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_examples() {
        let o = Oracle::with_budget(16).unwrap();
        let r = o.brute_force_f(2, 2, 10).unwrap();
        assert_eq!(r.best_edges, 5);
        assert!(r.exhaustive);
        assert_eq!(r.witness.order(), 5);
        assert_eq!(o.brute_force_f(1, 3, 8).unwrap().best_edges, 3);
        assert_eq!(o.brute_force_f(3, 2, 12).unwrap().best_edges, 6);
        assert!(!o.brute_force_f(3, 3, 12).unwrap().exhaustive);
    }

    #[test]
    fn components() {
        let o = Oracle::default();
        assert_eq!(o.brute_force_component_f(2, 2).unwrap().best_edges, 5);
        let r = o.brute_force_component_f(3, 3).unwrap();
        assert_eq!(r.best_edges, 10);
        assert!(is_factor_critical(&r.witness));
        assert_eq!(o.brute_force_component_f(4, 4).unwrap().best_edges, 17);
    }

    #[test]
    fn via_components() {
        let o = Oracle::default();
        assert_eq!(o.oracle_f_via_components(3, 4).unwrap(), 13);
        assert_eq!(o.oracle_f_via_components(2, 5).unwrap(), 12);
        assert_eq!(o.oracle_f_via_components(4, 4).unwrap(), 17);
    }

    #[test]
    fn small_zd() {
        let o = Oracle::default();
        assert_eq!(o.search_zd(2, 4).unwrap().exact(), Some(2));
        assert_eq!(o.search_zd(3, 5).unwrap().exact(), Some(3));
        assert_eq!(o.count_witnesses(2, 2).unwrap(), 1);
        assert_eq!(o.count_witnesses(4, 4).unwrap(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let o = Oracle::default();
        assert!(matches!(
            o.brute_force_f(3, 3, 18),
            Err(Error::BudgetExceeded { requested: 18, budget: 13 })
        ));
        assert!(Oracle::with_budget(33).is_err());
        assert!(o.search_zd(4, 7).is_err());
    }
}
