//! Exhaustive enumeration of branch divisor configurations.
//!
//! A configuration is a multiset of components. The positive degrees against
//! `D` form a partition of `B_0 . D` into even parts; the number `l` of
//! degree-zero `(0,-4)` components is then forced by the adjunction budget
//! `K_W . B_0 = K_W . D - 2 K_W^2`, since every `(0,-4)` curve contributes 2.
//! A choice whose forced `l` is negative is recorded as a rejection trace
//! rather than silently dropped.

use crate::arith::{hodge_admissible, ArithError, CurveClass, CurveType};
use crate::profile::QuotientProfile;
use itertools::{EitherOrBoth, Itertools};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BranchError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("K_W^2 = {kw2} is not admissible for K_S^2 = {ks2}, k = {k}")]
    NotAdmissible { ks2: i64, k: i64, kw2: i64 },
    #[error("k = {k}: the bicanonical map is composed with the involution; the branch curve is not enumerated")]
    BicanonicalComposed { k: i64 },
    #[error("aggregate identity violated on an enumerated configuration: {0}")]
    Inconsistent(String),
}

/// A branch divisor configuration inside a fixed `(K_S^2, k, K_W^2)` cell.
/// Components are kept in canonical order (descending degree against `D`,
/// then descending self-intersection).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BranchConfig {
    components: Vec<CurveClass>,
    kw2: i64,
}

impl BranchConfig {
    pub fn new(mut components: Vec<CurveClass>, kw2: i64) -> Self {
        components.sort();
        BranchConfig { components, kw2 }
    }

    pub fn components(&self) -> &[CurveClass] {
        &self.components
    }

    pub fn kw2(&self) -> i64 {
        self.kw2
    }

    pub fn curve_types(&self) -> Vec<CurveType> {
        self.components.iter().map(|c| c.curve_type()).collect()
    }

    pub fn sum_ddeg(&self) -> i64 {
        self.components.iter().map(|c| c.ddeg()).sum()
    }

    pub fn sum_selfint(&self) -> i64 {
        self.components.iter().map(|c| c.selfint()).sum()
    }

    pub fn sum_kdeg(&self) -> i64 {
        self.components.iter().map(|c| c.kdeg()).sum()
    }
}

impl fmt::Display for BranchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "(empty)");
        }
        write!(
            f,
            "{}",
            self.components.iter().map(|c| c.to_string()).join("+")
        )
    }
}

// Canonical table order: compare the degree partitions first (descending,
// a longer partition wins ties on the common prefix), then the component
// sequences. Within one cell this groups configurations by partition case.
impl Ord for BranchConfig {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_ddeg = self
            .components
            .iter()
            .zip_longest(other.components.iter())
            .map(|pair| match pair {
                EitherOrBoth::Both(a, b) => b.ddeg().cmp(&a.ddeg()),
                EitherOrBoth::Left(_) => Ordering::Less,
                EitherOrBoth::Right(_) => Ordering::Greater,
            })
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        by_ddeg
            .then_with(|| self.components.cmp(&other.components))
            .then_with(|| other.kw2.cmp(&self.kw2))
    }
}

impl PartialOrd for BranchConfig {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A candidate component choice whose forced number of `(0,-4)` components
/// came out negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectionTrace {
    /// The chosen positive-degree components.
    pub components: Vec<CurveClass>,
    /// `K_W . B_0 = K_W . D - 2 K_W^2`.
    pub budget: i64,
    /// Adjunction degree already consumed by the chosen components.
    pub spent: i64,
    /// The forced count of `(0,-4)` components, negative.
    pub l: i64,
}

impl fmt::Display for RejectionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: K_W.B0 = {} = {} + 2l forces l = {}",
            self.components.iter().map(|c| c.to_string()).join("+"),
            self.budget,
            self.spent,
            self.l
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellEnumeration {
    pub configs: Vec<BranchConfig>,
    pub rejections: Vec<RejectionTrace>,
}

/// All classes that can appear as a component of degree `ddeg` against `D`
/// with `D^2 = dsq`, in canonical (descending self-intersection) order.
/// Degree zero leaves exactly the `(0,-4)` curve; otherwise the genus runs
/// through the parity-admissible values cut off by the index test.
pub fn component_candidates(ddeg: i64, dsq: i64) -> Result<Vec<CurveClass>, BranchError> {
    if ddeg < 0 || ddeg % 2 != 0 {
        return Err(ArithError::BadDegree(ddeg).into());
    }
    if ddeg == 0 {
        return Ok(vec![CurveClass::new(0, -4, 0)?]);
    }
    if dsq <= 0 {
        return Err(ArithError::NonpositiveDsq(dsq).into());
    }
    let mut out = Vec::new();
    for selfint in (-4 - ddeg..=ddeg * ddeg / dsq).rev() {
        if (selfint + ddeg).rem_euclid(4) != 0 {
            continue;
        }
        if !hodge_admissible(ddeg, selfint, dsq)? {
            continue;
        }
        out.push(CurveClass::branch_component(selfint, ddeg)?);
    }
    Ok(out)
}

// Partitions of `total` into even parts >= 2, non-increasing within a
// partition, listed in descending lexicographic order. total = 0 yields the
// empty partition.
fn even_partitions(total: i64, max_part: i64) -> Vec<Vec<i64>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut part = total.min(max_part);
    if part % 2 != 0 {
        part -= 1;
    }
    while part >= 2 {
        for rest in even_partitions(total - part, part) {
            let mut v = Vec::with_capacity(rest.len() + 1);
            v.push(part);
            v.extend(rest);
            out.push(v);
        }
        part -= 2;
    }
    out
}

// One candidate per part; inside a run of equal parts the candidate index is
// non-decreasing, so every multiset of choices appears exactly once.
fn choose_components(
    parts: &[i64],
    cands: &[Vec<CurveClass>],
    i: usize,
    min_idx: usize,
    chosen: &mut Vec<CurveClass>,
    out: &mut Vec<Vec<CurveClass>>,
) {
    if i == parts.len() {
        out.push(chosen.clone());
        return;
    }
    let start = if i > 0 && parts[i] == parts[i - 1] {
        min_idx
    } else {
        0
    };
    for (j, c) in cands[i].iter().enumerate().skip(start) {
        chosen.push(*c);
        choose_components(parts, cands, i + 1, j, chosen, out);
        chosen.pop();
    }
}

/// Enumerate a `(profile, K_W^2)` cell, keeping the budget rejections.
pub fn enumerate_cell(profile: &QuotientProfile, kw2: i64) -> Result<CellEnumeration, BranchError> {
    if profile.bicanonical_composed {
        return Err(BranchError::BicanonicalComposed { k: profile.k });
    }
    if !profile.admissible_kw2().contains(&kw2) {
        return Err(BranchError::NotAdmissible {
            ks2: profile.ks2,
            k: profile.k,
            kw2,
        });
    }

    let budget = profile.kwd - 2 * kw2;
    let expected_selfint = profile.b0d - 2 * budget;
    let minus_four = CurveClass::new(0, -4, 0)?;

    let mut configs = Vec::new();
    let mut rejections = Vec::new();
    for partition in even_partitions(profile.b0d, profile.b0d.max(0)) {
        let cands = partition
            .iter()
            .map(|&d| component_candidates(d, profile.dsq))
            .collect::<Result<Vec<_>, _>>()?;
        let mut chosen = Vec::new();
        let mut all = Vec::new();
        choose_components(&partition, &cands, 0, 0, &mut chosen, &mut all);
        for picked in all {
            let spent: i64 = picked.iter().map(|c| c.kdeg()).sum();
            let rem = budget - spent;
            if rem % 2 != 0 {
                return Err(BranchError::Inconsistent(format!(
                    "odd residual adjunction degree {rem} for {}",
                    picked.iter().map(|c| c.to_string()).join("+")
                )));
            }
            let l = rem / 2;
            if l < 0 {
                rejections.push(RejectionTrace {
                    components: picked,
                    budget,
                    spent,
                    l,
                });
                continue;
            }
            let mut components = picked;
            components.extend(std::iter::repeat_n(minus_four, l as usize));
            let config = BranchConfig::new(components, kw2);
            for (name, got, want) in [
                ("sum of degrees against D", config.sum_ddeg(), profile.b0d),
                ("sum of adjunction degrees", config.sum_kdeg(), budget),
                (
                    "sum of self-intersections",
                    config.sum_selfint(),
                    expected_selfint,
                ),
            ] {
                if got != want {
                    return Err(BranchError::Inconsistent(format!(
                        "{name} of {config} is {got}, expected {want}"
                    )));
                }
            }
            configs.push(config);
        }
    }
    configs.sort();
    let before = configs.len();
    configs.dedup();
    if configs.len() != before {
        return Err(BranchError::Inconsistent(
            "duplicate configurations generated".into(),
        ));
    }
    Ok(CellEnumeration {
        configs,
        rejections,
    })
}

/// The admissible-side output of [`enumerate_cell`]: deduplicated,
/// canonically sorted configurations of the cell.
pub fn enumerate_branch_configs(
    profile: &QuotientProfile,
    kw2: i64,
) -> Result<Vec<BranchConfig>, BranchError> {
    Ok(enumerate_cell(profile, kw2)?.configs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::quotient_profile;

    fn ct(pa: i64, selfint: i64) -> CurveType {
        CurveType::new(pa, selfint)
    }

    fn types(c: &BranchConfig) -> Vec<CurveType> {
        c.curve_types()
    }

    #[test]
    fn candidates_deg_ten() {
        let got: Vec<CurveType> = component_candidates(10, 14)
            .unwrap()
            .iter()
            .map(|c| c.curve_type())
            .collect();
        assert_eq!(
            got,
            vec![
                ct(5, 6),
                ct(4, 2),
                ct(3, -2),
                ct(2, -6),
                ct(1, -10),
                ct(0, -14)
            ]
        );
    }

    #[test]
    fn candidates_deg_zero_and_two() {
        let zero = component_candidates(0, 14).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].curve_type(), ct(0, -4));
        let two: Vec<CurveType> = component_candidates(2, 14)
            .unwrap()
            .iter()
            .map(|c| c.curve_type())
            .collect();
        assert_eq!(two, vec![ct(1, -2), ct(0, -6)]);
    }

    #[test]
    fn candidates_reject_odd_degree() {
        assert!(matches!(
            component_candidates(3, 14),
            Err(BranchError::Arith(ArithError::BadDegree(3)))
        ));
    }

    #[test]
    fn partition_order_matches_case_split() {
        assert_eq!(
            even_partitions(10, 10),
            vec![
                vec![10],
                vec![8, 2],
                vec![6, 4],
                vec![6, 2, 2],
                vec![4, 4, 2],
                vec![4, 2, 2, 2],
                vec![2, 2, 2, 2, 2],
            ]
        );
        assert_eq!(even_partitions(0, 0), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn cell_7_9_generates_eleven() {
        let p = quotient_profile(7, 9).unwrap();
        let cell = enumerate_cell(&p, -2).unwrap();
        assert_eq!(cell.configs.len(), 11);
        assert_eq!(
            types(&cell.configs[0]),
            vec![ct(5, 6), ct(0, -4), ct(0, -4)]
        );
        for c in &cell.configs {
            assert_eq!(c.sum_ddeg(), 10);
            assert_eq!(c.sum_kdeg(), 6);
            assert_eq!(c.sum_selfint(), -2);
        }
    }

    #[test]
    fn cell_7_9_rejects_with_budget_trace() {
        let p = quotient_profile(7, 9).unwrap();
        let cell = enumerate_cell(&p, -2).unwrap();
        let r = cell
            .rejections
            .iter()
            .find(|r| r.components.len() == 1 && r.components[0].curve_type() == ct(0, -14))
            .expect("the (0,-14) candidate must be rejected");
        assert_eq!((r.budget, r.spent, r.l), (6, 12, -3));
        assert_eq!(r.to_string(), "(0,-14): K_W.B0 = 6 = 12 + 2l forces l = -3");
    }

    #[test]
    fn small_cells_of_k2_seven() {
        let p5 = quotient_profile(7, 5).unwrap();
        let c5 = enumerate_branch_configs(&p5, 2).unwrap();
        assert_eq!(c5.len(), 1);
        assert_eq!(types(&c5[0]), vec![ct(1, -2)]);

        let p7 = quotient_profile(7, 7).unwrap();
        let c71 = enumerate_branch_configs(&p7, 1).unwrap();
        assert_eq!(c71.len(), 1);
        assert_eq!(types(&c71[0]), vec![ct(3, 2)]);

        let c70 = enumerate_branch_configs(&p7, 0).unwrap();
        let got: Vec<Vec<CurveType>> = c70.iter().map(types).collect();
        assert_eq!(
            got,
            vec![
                vec![ct(3, 2), ct(0, -4)],
                vec![ct(2, -2)],
                vec![ct(2, 0), ct(1, -2)],
            ]
        );
    }

    #[test]
    fn cell_errors() {
        let p = quotient_profile(7, 11).unwrap();
        assert!(matches!(
            enumerate_cell(&p, -4),
            Err(BranchError::BicanonicalComposed { k: 11 })
        ));
        let p9 = quotient_profile(7, 9).unwrap();
        assert!(matches!(
            enumerate_cell(&p9, 0),
            Err(BranchError::NotAdmissible {
                ks2: 7,
                k: 9,
                kw2: 0
            })
        ));
    }

    #[test]
    fn empty_branch_divisor_is_a_configuration() {
        let p = quotient_profile(2, 4).unwrap();
        let c1 = enumerate_branch_configs(&p, 1).unwrap();
        assert_eq!(c1.len(), 1);
        assert!(c1[0].components().is_empty());
        assert_eq!(c1[0].to_string(), "(empty)");
        let c0 = enumerate_branch_configs(&p, 0).unwrap();
        assert_eq!(c0.len(), 1);
        assert_eq!(types(&c0[0]), vec![ct(0, -4)]);
    }

    #[test]
    fn canonical_order_groups_by_partition() {
        let p = quotient_profile(7, 9).unwrap();
        let configs = enumerate_branch_configs(&p, -2).unwrap();
        let partitions: Vec<Vec<i64>> = configs
            .iter()
            .map(|c| {
                c.components()
                    .iter()
                    .map(|x| x.ddeg())
                    .filter(|d| *d > 0)
                    .collect()
            })
            .collect();
        let mut sorted = partitions.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(partitions, sorted);
    }
}
