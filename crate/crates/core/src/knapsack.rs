//! Component-multiplicity optimisation.
//!
//! An extremal graph splits into components whose matching numbers `i`
//! lie in `[d, Z(d)]`, plus stars. Choosing how many components of each
//! size to use is an unbounded knapsack with capacity `m`, item weights
//! `i` and item utilities `g△(d, i)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{self, in_proven_domain, EdgeValue, ExtremalValue, Status};

/// Utilities for the contiguous item range `d..=z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UtilityTable {
    d: u64,
    z: u64,
    values: Vec<u64>,
    statuses: Vec<Status>,
}

impl UtilityTable {
    /// `values[j]` is the utility of item `d + j`; the last item is `Z(d)`.
    pub fn new(d: u64, values: Vec<u64>, statuses: Vec<Status>) -> Result<Self> {
        if d < 2 || values.is_empty() || values.len() != statuses.len() {
            return Err(Error::InvalidParameter(
                "utility table needs d >= 2 and one status per utility".into(),
            ));
        }
        let z = d + values.len() as u64 - 1;
        Ok(UtilityTable { d, z, values, statuses })
    }

    /// All utilities treated as proven.
    pub fn proven(d: u64, values: Vec<u64>) -> Result<Self> {
        let statuses = vec![Status::ProvenOptimal; values.len()];
        Self::new(d, values, statuses)
    }

    /// `i − d + 1` below `z` and `⌊d/2⌋` at `z`.
    pub fn conjecture_one(d: u64, z: u64) -> Result<Self> {
        if z < d {
            return Err(Error::InvalidParameter(format!("z = {z} < d = {d}")));
        }
        let mut values: Vec<u64> = (d..z).map(|i| i - d + 1).collect();
        values.push(d / 2);
        let statuses = vec![Status::ConjecturedOptimal; values.len()];
        Self::new(d, values, statuses)
    }

    /// Utilities `g△(d, i)` from the closed forms for `i ∈ [d, Z(d)]`.
    pub fn from_formulas(d: u64, assume_conjectures: bool) -> Result<Self> {
        let zd = formulas::resolve_zd(d, assume_conjectures)?;
        let z = zd.value().ok_or(Error::UnresolvedZ {
            d,
            lo: zd.lower(),
            hi: zd.upper(),
        })?;
        let mut values = Vec::new();
        let mut statuses = Vec::new();
        for i in d..=z {
            let g = formulas::g_triangle(d, i, assume_conjectures)?;
            values.push(g.value);
            statuses.push(g.status);
        }
        Self::new(d, values, statuses)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn utility(&self, i: u64) -> Option<u64> {
        self.index(i).map(|j| self.values[j])
    }

    pub fn status(&self, i: u64) -> Option<Status> {
        self.index(i).map(|j| self.statuses[j])
    }

    pub fn all_proven(&self) -> bool {
        self.statuses.iter().all(|&s| s == Status::ProvenOptimal)
    }

    fn index(&self, i: u64) -> Option<usize> {
        (self.d..=self.z).contains(&i).then(|| (i - self.d) as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnapsackSolution {
    pub d: u64,
    pub z: u64,
    /// `counts[j]` is the multiplicity of item `d + j`.
    pub counts: Vec<u64>,
    pub objective: u64,
    pub capacity_used: u64,
}

impl KnapsackSolution {
    /// A solution given directly by its multiplicities (objective left at 0).
    pub fn from_counts(d: u64, z: u64, counts: Vec<u64>) -> Self {
        let capacity_used = counts.iter().zip(d..).map(|(&x, i)| x * i).sum();
        KnapsackSolution { d, z, counts, objective: 0, capacity_used }
    }

    pub fn count(&self, i: u64) -> u64 {
        if i < self.d {
            return 0;
        }
        self.counts.get((i - self.d) as usize).copied().unwrap_or(0)
    }

    /// Nonzero multiplicities as `(i, x_i)`.
    pub fn support(&self) -> Vec<(u64, u64)> {
        (self.d..).zip(&self.counts).filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect()
    }
}

/// DP cell ordering key: objective, then `x_Z`, then `x_d`.
type Key = (u64, u64, u64);

/// Maximises `Σ u(i)·x_i` subject to `Σ i·x_i ≤ m`. Among optima the one
/// with the most `Z(d)` items, then the most `d` items, is returned.
pub fn solve_model2(d: u64, m: u64, utilities: &UtilityTable) -> Result<KnapsackSolution> {
    if d != utilities.d {
        return Err(Error::InvalidParameter(format!(
            "utility table is for d = {}, not {d}",
            utilities.d
        )));
    }
    if m < d {
        return Err(Error::InvalidParameter(format!("capacity m = {m} is below d = {d}")));
    }
    if m > formulas::MAX_PARAMETER {
        return Err(Error::InvalidParameter(format!(
            "m = {m} exceeds {}",
            formulas::MAX_PARAMETER
        )));
    }
    let (z, cap) = (utilities.z, m as usize);
    let item_key = |i: u64| -> Key {
        let u = utilities.utility(i).expect("item in range");
        (u, (i == z) as u64, (i == d) as u64)
    };
    let add = |a: Key, b: Key| (a.0 + b.0, a.1 + b.1, a.2 + b.2);

    let mut best: Vec<Key> = vec![(0, 0, 0); cap + 1];
    // last item taken at each capacity; 0 means "carry from capacity − 1"
    let mut choice: Vec<u64> = vec![0; cap + 1];
    for c in 1..=cap {
        best[c] = best[c - 1];
        for i in d..=z.min(c as u64) {
            let cand = add(best[c - i as usize], item_key(i));
            if cand > best[c] {
                best[c] = cand;
                choice[c] = i;
            }
        }
    }

    let mut counts = vec![0u64; (z - d + 1) as usize];
    let mut c = cap;
    while c > 0 {
        match choice[c] {
            0 => c -= 1,
            i => {
                counts[(i - d) as usize] += 1;
                c -= i as usize;
            }
        }
    }
    let mut sol = KnapsackSolution::from_counts(d, z, counts);
    sol.objective = best[cap].0;
    Ok(sol)
}

/// `f△(d, m) = d·m + max Σ g△(d, i)·x_i` with utilities from the closed forms.
pub fn f_via_model1(d: u64, m: u64, assume_conjectures: bool) -> Result<ExtremalValue> {
    if d < 2 || m < d {
        return Err(Error::InvalidParameter(format!("need 2 <= d <= m, got d = {d}, m = {m}")));
    }
    let table = UtilityTable::from_formulas(d, assume_conjectures)?;
    let sol = solve_model2(d, m, &table)?;
    let used_proven = sol
        .support()
        .iter()
        .all(|&(i, _)| table.status(i) == Some(Status::ProvenOptimal));
    let status = if used_proven && (table.all_proven() || in_proven_domain(d, m)) {
        Status::ProvenOptimal
    } else if assume_conjectures {
        Status::ConjecturedOptimal
    } else {
        Status::Unknown
    };
    let reference = formulas::f_triangle(d, m, assume_conjectures)?;
    Ok(ExtremalValue {
        d,
        m,
        value: EdgeValue::Exact(d * m + sol.objective),
        status,
        case: reference.case,
        decomposition: None,
    })
}

/// At most one component with matching number below `Z(d)`.
pub fn check_optimum_structure(sol: &KnapsackSolution) -> bool {
    (sol.d..sol.z).map(|i| sol.count(i)).sum::<u64>() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Best objective by trying every multiplicity vector.
    fn brute(d: u64, m: u64, t: &UtilityTable) -> u64 {
        fn go(i: u64, left: u64, t: &UtilityTable) -> u64 {
            if i > t.z() {
                return 0;
            }
            (0..=left / i)
                .map(|x| x * t.utility(i).unwrap() + go(i + 1, left - x * i, t))
                .max()
                .unwrap()
        }
        go(d, m, t)
    }

    #[test]
    fn examples() {
        let t = UtilityTable::proven(4, vec![1, 2]).unwrap();
        let s = solve_model2(4, 9, &t).unwrap();
        assert_eq!((s.count(4), s.count(5), s.objective), (1, 1, 3));

        let t = UtilityTable::proven(2, vec![1]).unwrap();
        let s = solve_model2(2, 7, &t).unwrap();
        assert_eq!((s.count(2), s.objective), (3, 3));

        let t = UtilityTable::proven(5, vec![1, 2]).unwrap();
        assert!(solve_model2(5, 4, &t).is_err());
    }

    #[test]
    fn model1_examples() {
        let v = |d, m| f_via_model1(d, m, false).unwrap().value;
        assert_eq!(v(3, 8), EdgeValue::Exact(26));
        assert_eq!(v(6, 13), EdgeValue::Exact(82));
        assert_eq!(v(2, 2), EdgeValue::Exact(5));
        assert!(matches!(f_via_model1(9, 20, false), Err(Error::UnresolvedZ { .. })));
        assert_eq!(f_via_model1(9, 20, true).unwrap().status, Status::ConjecturedOptimal);
    }

    #[test]
    fn six_thirteen_uses_one_of_each() {
        let t = UtilityTable::from_formulas(6, false).unwrap();
        let s = solve_model2(6, 13, &t).unwrap();
        assert_eq!(s.support(), vec![(6, 1), (7, 1)]);
    }

    #[test]
    fn dp_matches_exhaustive() {
        for d in 2..=6 {
            let t = UtilityTable::from_formulas(d, false).unwrap();
            for m in d..=30 {
                let s = solve_model2(d, m, &t).unwrap();
                assert_eq!(s.objective, brute(d, m, &t), "d={d} m={m}");
                assert!(s.capacity_used <= m);
                let obj: u64 = s.support().iter().map(|&(i, x)| x * t.utility(i).unwrap()).sum();
                assert_eq!(obj, s.objective);
            }
        }
    }

    #[test]
    fn structure_examples() {
        assert!(check_optimum_structure(&KnapsackSolution::from_counts(5, 7, vec![1, 0, 2])));
        assert!(check_optimum_structure(&KnapsackSolution::from_counts(4, 5, vec![1, 1])));
        assert!(!check_optimum_structure(&KnapsackSolution::from_counts(9, 12, vec![2, 0, 0, 1])));
    }

    #[test]
    fn conjecture_one_tables_have_the_structure() {
        for d in 7..=13u64 {
            let z = formulas::resolve_zd(d, true).unwrap().value().unwrap();
            let t = UtilityTable::conjecture_one(d, z).unwrap();
            for m in d..=60 {
                let s = solve_model2(d, m, &t).unwrap();
                assert!(check_optimum_structure(&s), "d={d} m={m} {:?}", s.support());
            }
        }
    }
}
