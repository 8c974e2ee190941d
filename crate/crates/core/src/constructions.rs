//! Witness families: stars, the general-case components, C5 blow-ups and
//! the extremal graphs assembled from them.
//!
//! Every family is checked against its postconditions when built; a
//! construction that fails its own check is reported as an error rather
//! than returned.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formulas::{self, Status};
use crate::graph::{disjoint_union, DegreeProfile, Graph};
use crate::io::graph6_encode;
use crate::matching::{is_factor_critical, matching_number, maximum_matching};
use crate::oracle::Oracle;
use crate::verify::verify_membership;

/// Edges deleted between part `i` and part `i + 1` (mod 5): every vertex
/// of part `i` loses `p` of them and every vertex of part `i + 1` loses `q`,
/// so `p·n_i = q·n_{i+1}`. Vertex `a` of part `i` loses its edges to
/// vertices `(a·p + t) mod n_{i+1}` for `t < p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Removal {
    pub p: usize,
    pub q: usize,
}

impl Removal {
    pub const NONE: Removal = Removal { p: 0, q: 0 };

    /// An `r`-regular removal between parts of equal size.
    pub fn regular(r: usize) -> Self {
        Removal { p: r, q: r }
    }
}

/// A blow-up of the 5-cycle with bipartite biregular removals between
/// consecutive parts and an optional explicit list of further deleted edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlowUpSpec {
    pub sizes: [usize; 5],
    pub removals: [Removal; 5],
    pub extra_removed: Vec<(usize, usize)>,
}

impl BlowUpSpec {
    pub fn plain(sizes: [usize; 5]) -> Self {
        BlowUpSpec {
            sizes,
            removals: [Removal::NONE; 5],
            extra_removed: Vec::new(),
        }
    }

    pub fn with_removal(mut self, i: usize, r: Removal) -> Self {
        self.removals[i] = r;
        self
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Degree of a vertex in part `i`, ignoring `extra_removed`.
    pub fn part_degree(&self, i: usize) -> usize {
        let prev = (i + 4) % 5;
        let next = (i + 1) % 5;
        self.sizes[prev] + self.sizes[next] - self.removals[prev].q - self.removals[i].p
    }

    fn offsets(&self) -> [usize; 6] {
        let mut o = [0; 6];
        for i in 0..5 {
            o[i + 1] = o[i] + self.sizes[i];
        }
        o
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..5 {
            let (a, b) = (self.sizes[i], self.sizes[(i + 1) % 5]);
            let Removal { p, q } = self.removals[i];
            if a == 0 {
                return Err(Error::InfeasibleBlowUp(format!("part {i} is empty")));
            }
            if p > b || q > a || p * a != q * b {
                return Err(Error::InfeasibleBlowUp(format!(
                    "no ({p}, {q})-biregular removal between parts of sizes {a} and {b}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for BlowUpSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sizes {:?}", self.sizes)?;
        for (i, r) in self.removals.iter().enumerate() {
            if r.p > 0 {
                write!(f, ", remove ({}, {}) between parts {i}-{}", r.p, r.q, (i + 1) % 5)?;
            }
        }
        if !self.extra_removed.is_empty() {
            write!(f, ", {} further edges removed", self.extra_removed.len())?;
        }
        Ok(())
    }
}

/// Parts are laid out consecutively in cycle order.
pub fn realize_blowup(spec: &BlowUpSpec) -> Result<Graph> {
    spec.validate()?;
    let off = spec.offsets();
    let mut g = Graph::empty(spec.order());
    for i in 0..5 {
        let j = (i + 1) % 5;
        let (a, b) = (spec.sizes[i], spec.sizes[j]);
        let p = spec.removals[i].p;
        for x in 0..a {
            let removed = |y: usize| (0..p).any(|t| (x * p + t) % b == y);
            for y in 0..b {
                if !removed(y) {
                    g.add_edge(off[i] + x, off[j] + y);
                }
            }
        }
    }
    for &(u, v) in &spec.extra_removed {
        if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
            return Err(Error::InfeasibleBlowUp(format!(
                "extra removed pair ({u}, {v}) is not an edge"
            )));
        }
        g.remove_edge(u, v);
    }
    Ok(g)
}

/// The star `K_{1,d}`, centre 0.
pub fn star(d: u64) -> Result<Graph> {
    if d == 0 {
        return Err(Error::InvalidParameter("a star needs d >= 1".into()));
    }
    Graph::from_edges(d as usize + 1, (1..=d as usize).map(|v| (0, v)))
}

/// `K_{d+1}` for even `d`; for odd `d`, `K_{d+1}` minus a perfect matching
/// plus a vertex joined to `d` of the others. `d = 1` gives `K_2`.
pub fn construct_general_component(d: u64) -> Result<Graph> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let d = d as usize;
    if d == 1 {
        return Ok(Graph::complete(2));
    }
    if d % 2 == 0 {
        return Ok(Graph::complete(d + 1));
    }
    let mut g = Graph::empty(d + 2);
    for u in 0..=d {
        for v in u + 1..=d {
            if !(u % 2 == 0 && v == u + 1) {
                g.add_edge(u, v);
            }
        }
    }
    for u in 0..d {
        g.add_edge(u, d + 1);
    }
    Ok(g)
}

/// Factor-critical triangle-free graph on `2d + 1` vertices with `Δ = d`
/// and `d² + 1` edges.
pub fn construct_ad(d: u64) -> Result<Graph> {
    if d < 2 {
        return Err(Error::InvalidParameter("A_d needs d >= 2".into()));
    }
    let d = d as usize;
    realize_blowup(&ad_spec(d))
}

pub fn ad_spec(d: usize) -> BlowUpSpec {
    BlowUpSpec::plain([1, 1, d / 2, d - 1, d.div_ceil(2)])
}

/// Matching number of the regular family: `⌊5d/4⌋` for even `d`,
/// `⌊5(d+1)/4⌋` for odd `d`.
pub fn bd_matching_number(d: u64) -> u64 {
    if d % 2 == 0 {
        5 * d / 4
    } else {
        5 * (d + 1) / 4
    }
}

/// The even-degree regular blow-up.
pub fn even_bd_spec(d: usize) -> BlowUpSpec {
    assert!(d >= 2 && d % 2 == 0);
    if d % 4 == 2 {
        BlowUpSpec::plain([d / 2; 5])
    } else {
        let k = d / 4;
        BlowUpSpec::plain([2 * k - 1, 2 * k, 2 * k + 1, 2 * k + 1, 2 * k])
            .with_removal(2, Removal::regular(1))
    }
}

fn near_regular_ok(g: &Graph, d: usize, nu: usize) -> bool {
    g.order() == 2 * nu + 1
        && g.is_triangle_free()
        && g.degree_profile().is_near_regular(d)
        && is_factor_critical(g)
}

/// From a `(d+1)`-regular graph of odd order, delete a path `a-b-c` and a
/// perfect matching of the other vertices; keep the first result that is
/// factor-critical.
fn lower_degree(g: &Graph) -> Option<Graph> {
    let n = g.order();
    for b in 0..n {
        let nb: Vec<usize> = g.neighbors(b).collect();
        for (ia, &a) in nb.iter().enumerate() {
            for &c in &nb[ia + 1..] {
                let keep: Vec<usize> = (0..n).filter(|&v| v != a && v != b && v != c).collect();
                let h = g.induced(&keep);
                let m = maximum_matching(&h);
                if 2 * m.len() != h.order() {
                    continue;
                }
                let mut k = g.clone();
                k.remove_edge(a, b);
                k.remove_edge(b, c);
                for &(x, y) in m.edges() {
                    k.remove_edge(keep[x], keep[y]);
                }
                if is_factor_critical(&k) {
                    return Some(k);
                }
            }
        }
    }
    None
}

fn cache() -> &'static Mutex<HashMap<(u64, u64), Option<Graph>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Option<Graph>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Triangle-free, factor-critical, (almost) `d`-regular with matching
/// number `⌊5d/4⌋` (even `d`) or `⌊5(d+1)/4⌋` (odd `d`) and
/// `d·ν + ⌊d/2⌋` edges.
pub fn construct_bd(d: u64) -> Result<Graph> {
    if d < 2 {
        return Err(Error::InvalidParameter("B_d needs d >= 2".into()));
    }
    let nu = bd_matching_number(d);
    if let Some(Some(g)) = cache().lock().expect("cache lock").get(&(d, nu)) {
        return Ok(g.clone());
    }
    let g = if d % 2 == 0 {
        realize_blowup(&even_bd_spec(d as usize))?
    } else {
        let parent = construct_bd(d + 1)?;
        lower_degree(&parent)
            .ok_or_else(|| Error::SearchFailed(format!("no odd-degree reduction for d = {d}")))?
    };
    if !near_regular_ok(&g, d as usize, nu as usize)
        || g.edge_count() as u64 != d * nu + d / 2
    {
        return Err(Error::SearchFailed(format!("B_{d} failed its postconditions")));
    }
    cache().lock().expect("cache lock").insert((d, nu), Some(g.clone()));
    Ok(g)
}

/// Blow-up specs on `2ν + 1` vertices whose part degrees make the graph
/// (almost) `d`-regular, in lexicographic order of sizes then removals.
pub fn blowup_candidates(d: usize, nu: usize) -> Vec<BlowUpSpec> {
    let total = 2 * nu + 1;
    let mut out = Vec::new();
    let mut sizes = [1usize; 5];
    fn compositions(i: usize, left: usize, sizes: &mut [usize; 5], f: &mut dyn FnMut(&[usize; 5])) {
        if i == 4 {
            if left >= 1 {
                sizes[4] = left;
                f(sizes);
            }
            return;
        }
        for s in 1..=left.saturating_sub(4 - i) {
            sizes[i] = s;
            compositions(i + 1, left - s, sizes, f);
        }
    }
    compositions(0, total, &mut sizes, &mut |sizes| {
        // which part (if any) holds the single vertex of degree d − 1
        let lows: Vec<Option<usize>> = if d % 2 == 0 {
            vec![None]
        } else {
            (0..5).filter(|&j| sizes[j] == 1).map(Some).collect()
        };
        for low in lows {
            let target = |i: usize| if Some(i) == low { d - 1 } else { d };
            let sum = |i: usize| sizes[(i + 4) % 5] + sizes[(i + 1) % 5];
            'p0: for p0 in 0..=sizes[1] {
                let mut rem = [Removal::NONE; 5];
                let mut p = p0;
                for i in 0..5 {
                    let (a, b) = (sizes[i], sizes[(i + 1) % 5]);
                    if p > b || (p * a) % b != 0 || p * a / b > a {
                        continue 'p0;
                    }
                    rem[i] = Removal { p, q: p * a / b };
                    if i < 4 {
                        // part i + 1 needs q_i + p_{i+1} = sum − target
                        let need = match sum(i + 1).checked_sub(target(i + 1)) {
                            Some(x) => x,
                            None => continue 'p0,
                        };
                        p = match need.checked_sub(rem[i].q) {
                            Some(x) => x,
                            None => continue 'p0,
                        };
                    }
                }
                if sum(0) < target(0) || rem[4].q + rem[0].p != sum(0) - target(0) {
                    continue;
                }
                out.push(BlowUpSpec {
                    sizes: *sizes,
                    removals: rem,
                    extra_removed: Vec::new(),
                });
            }
        }
    });
    out
}

/// First blow-up candidate that is factor-critical.
pub fn blowup_search(d: usize, nu: usize) -> Option<(BlowUpSpec, Graph)> {
    blowup_candidates(d, nu).into_iter().find_map(|spec| {
        let g = realize_blowup(&spec).ok()?;
        near_regular_ok(&g, d, nu).then_some((spec, g))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CdSearch {
    Found(Graph),
    /// `exhaustive` is true when every candidate graph was examined.
    NotFound { exhaustive: bool },
}

/// An (almost) `d`-regular, triangle-free, factor-critical graph with
/// matching number `nu_target`: blow-ups first, then (odd `d`) a reduction
/// of a `(d+1)`-regular blow-up, then exhaustive enumeration within the
/// oracle's budget.
pub fn find_cd_witness(d: u64, nu_target: u64, oracle: &Oracle) -> Result<CdSearch> {
    if d < 2 || nu_target == 0 {
        return Err(Error::InvalidParameter("need d >= 2 and nu_target >= 1".into()));
    }
    if let Some(hit) = cache().lock().expect("cache lock").get(&(d, nu_target)) {
        if let Some(g) = hit {
            return Ok(CdSearch::Found(g.clone()));
        }
    }
    let (du, nu) = (d as usize, nu_target as usize);
    let mut found = blowup_search(du, nu).map(|(_, g)| g);
    if found.is_none() && d % 2 == 1 {
        found = blowup_search(du + 1, nu)
            .and_then(|(_, g)| lower_degree(&g))
            .filter(|g| near_regular_ok(g, du, nu));
    }
    let result = match found {
        Some(g) => CdSearch::Found(g),
        None if 2 * nu + 1 <= oracle.budget() => match oracle.find_near_regular(d, nu_target)? {
            Some(g) => CdSearch::Found(g),
            None => CdSearch::NotFound { exhaustive: true },
        },
        None => CdSearch::NotFound { exhaustive: false },
    };
    if let CdSearch::Found(g) = &result {
        cache().lock().expect("cache lock").insert((d, nu_target), Some(g.clone()));
    }
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessStatus {
    ProvenOptimal,
    ConjecturedOptimal,
    LowerBound,
}

impl WitnessStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessStatus::ProvenOptimal => "ProvenOptimal",
            WitnessStatus::ConjecturedOptimal => "ConjecturedOptimal",
            WitnessStatus::LowerBound => "LowerBound",
        }
    }
}

impl fmt::Display for WitnessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub d: u64,
    pub m: u64,
    pub graph: Graph,
    pub claimed_edges: u64,
    pub status: WitnessStatus,
    pub case: String,
}

impl Serialize for WitnessReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WitnessReport", 6)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("edges", &self.claimed_edges)?;
        st.serialize_field("status", self.status.as_str())?;
        st.serialize_field("case", &self.case)?;
        st.serialize_field("graph6", &graph6_encode(&self.graph))?;
        st.end()
    }
}

fn certify(report: WitnessReport) -> Result<WitnessReport> {
    let check = verify_membership(&report.graph, report.d, report.m);
    if !check.degree_ok || !check.matching_ok || report.graph.edge_count() as u64 != report.claimed_edges {
        return Err(Error::SearchFailed(format!(
            "assembled witness for (d, m) = ({}, {}) failed: {:?}",
            report.d,
            report.m,
            check.failures()
        )));
    }
    Ok(report)
}

/// The component used `k` times in the triangle-free witness.
fn cd_component(d: u64, z: u64) -> Result<Graph> {
    if z == bd_matching_number(d) {
        return construct_bd(d);
    }
    match find_cd_witness(d, z, &Oracle::default())? {
        CdSearch::Found(g) => Ok(g),
        CdSearch::NotFound { .. } => Err(Error::SearchFailed(format!(
            "no (almost) {d}-regular factor-critical witness with matching number {z}"
        ))),
    }
}

/// `k` copies of the `Z(d)` component plus `A_d` (when `r ≥ d`) and stars,
/// where `m = k·Z(d) + r`. When `Z(d)` is only bounded, its proven upper
/// bound is used.
pub fn assemble_triangle_free_witness(
    d: u64,
    m: u64,
    assume_conjectures: bool,
) -> Result<WitnessReport> {
    let value = formulas::f_triangle(d, m, assume_conjectures)?;
    let mut parts: Vec<Graph> = Vec::new();
    if d == 1 {
        parts.extend((0..m).map(|_| Graph::complete(2)));
    } else {
        let z = formulas::resolve_zd(d, assume_conjectures)?.upper();
        let (k, r) = (m / z, m % z);
        if k > 0 {
            let c = cd_component(d, z)?;
            parts.extend((0..k).map(|_| c.clone()));
        }
        let stars = if r >= d {
            parts.push(construct_ad(d)?);
            r - d
        } else {
            r
        };
        let s = star(d)?;
        parts.extend((0..stars).map(|_| s.clone()));
    }
    let graph = disjoint_union(&parts);
    let edges = graph.edge_count() as u64;
    let status = match (value.value.exact() == Some(edges), value.status) {
        (true, Status::ProvenOptimal) => WitnessStatus::ProvenOptimal,
        (true, Status::ConjecturedOptimal) => WitnessStatus::ConjecturedOptimal,
        _ => WitnessStatus::LowerBound,
    };
    certify(WitnessReport {
        d,
        m,
        graph,
        claimed_edges: edges,
        status,
        case: value.case.as_str().to_string(),
    })
}

/// `q` copies of the general component plus `r` stars, `m = q·⌈d/2⌉ + r`;
/// triangles allowed.
pub fn assemble_general_witness(d: u64, m: u64) -> Result<WitnessReport> {
    let value = formulas::f_gen(d, m)?;
    let up = d.div_ceil(2);
    let (q, r) = (m / up, m % up);
    let comp = construct_general_component(d)?;
    let s = star(d)?;
    let mut parts: Vec<&Graph> = (0..q).map(|_| &comp).collect();
    parts.extend((0..r).map(|_| &s));
    let graph = disjoint_union(parts);
    let report = certify(WitnessReport {
        d,
        m,
        claimed_edges: graph.edge_count() as u64,
        graph,
        status: WitnessStatus::ProvenOptimal,
        case: "general".to_string(),
    })?;
    if value.value.exact() != Some(report.claimed_edges) {
        return Err(Error::SearchFailed(format!(
            "general witness for ({d}, {m}) has {} edges, expected {}",
            report.claimed_edges, value.value
        )));
    }
    Ok(report)
}

/// Degree profile name for reports.
pub fn profile_name(g: &Graph) -> String {
    match g.degree_profile() {
        DegreeProfile::Regular(d) => format!("{d}-regular"),
        DegreeProfile::AlmostRegular(d) => format!("almost {d}-regular"),
        DegreeProfile::Irregular => "irregular".to_string(),
    }
}

/// `ν` of a graph, exposed here for assembly checks.
pub fn nu(g: &Graph) -> u64 {
    matching_number(g) as u64
}
