//! Zero-sharing structure of the score quadratics.
//!
//! Detects double zeros and pairwise common zeros among the `g_i` with
//! exact algebra (discriminants and resultants), assembles the shared-root
//! groups, classifies the dataset into the enumerated structural cases,
//! and produces the common zeros of `f` and `g` with exact multiplicities.
//!
//! Root-group identity is always established through exact gcd factors,
//! never by comparing floating root values. A useful consequence: every
//! common zero of `f` and `g` arising from valid data is rational (shared
//! roots of two rational quadratics come from a linear rational gcd, and
//! double-zero locations are `−d/(2c)`).

use crate::model::Dataset;
use crate::poly::{Poly, PolyError};
use crate::rational::{to_f64, Rational};
use crate::roots::ComplexRoot;
use num::complex::Complex64;
use num::traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("g_{i} and g_{j} share both zeros; the data exclusion rules should forbid this")]
    NonSingletonPairVariety { i: usize, j: usize },
    #[error("common-zero bookkeeping disagrees with gcd(f, g): {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Exact double-zero test for one sample's `g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleZeroFlag {
    pub index: usize,
    pub is_double: bool,
    /// `−d/(2c)` when the discriminant vanishes.
    pub location: Option<Rational>,
}

/// Exact pairwise common-zero test for `(g_i, g_j)`, `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSharing {
    pub i: usize,
    pub j: usize,
    pub shared: bool,
    pub witness: Option<ComplexRoot>,
    /// The shared root as an exact rational (root of the linear gcd).
    pub witness_exact: Option<Rational>,
}

/// A maximal set of samples whose `g_i` all vanish at one exact root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedGroup {
    pub root: Rational,
    pub members: BTreeSet<usize>,
    pub has_double_member: bool,
}

impl SharedGroup {
    /// Multiplicity of the group root in `g`: one per member, plus one
    /// more for a double-zero member.
    pub fn mult_in_g(&self) -> usize {
        self.members.len() + usize::from(self.has_double_member)
    }

    /// Predicted multiplicity of the group root in `f`: 1 for an isolated
    /// double zero, `n₁` for a shared group anchored by a double zero,
    /// `n₁ − 1` for a shared group without one.
    pub fn mult_in_f(&self) -> usize {
        let n1 = self.members.len();
        if self.has_double_member {
            if n1 == 1 {
                1
            } else {
                n1
            }
        } else {
            n1.saturating_sub(1)
        }
    }
}

/// The structural case a dataset falls into, tried in order; `Mixed`
/// covers datasets combining mechanisms from several cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigCase {
    GenericDisjoint,
    SimpleDoublesOnly { n1: usize },
    AllPairsShareNoDouble,
    AllPairsShareOneDouble,
    RepeatedGroupsNoDouble { l: usize, m: usize },
    DoubleAnchoredGroups { l: usize, m: usize },
    N3Triangle,
    Mixed,
}

impl ConfigCase {
    pub fn label(&self) -> String {
        match self {
            ConfigCase::GenericDisjoint => "generic_disjoint".into(),
            ConfigCase::SimpleDoublesOnly { n1 } => format!("simple_doubles_only(n1={n1})"),
            ConfigCase::AllPairsShareNoDouble => "all_pairs_share_no_double".into(),
            ConfigCase::AllPairsShareOneDouble => "all_pairs_share_one_double".into(),
            ConfigCase::RepeatedGroupsNoDouble { l, m } => {
                format!("repeated_groups_no_double(l={l},m={m})")
            }
            ConfigCase::DoubleAnchoredGroups { l, m } => {
                format!("double_anchored_groups(l={l},m={m})")
            }
            ConfigCase::N3Triangle => "n3_triangle".into(),
            ConfigCase::Mixed => "mixed".into(),
        }
    }
}

/// The classified zero-sharing configuration of a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroConfiguration {
    pub n: usize,
    pub pairs: Vec<PairSharing>,
    pub doubles: Vec<DoubleZeroFlag>,
    pub groups: Vec<SharedGroup>,
    pub case: ConfigCase,
}

impl ZeroConfiguration {
    pub fn double_count(&self) -> usize {
        self.doubles.iter().filter(|d| d.is_double).count()
    }
}

/// A common zero of `f` and `g` with its exact multiplicities in each.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonZeroRecord {
    pub root: ComplexRoot,
    pub root_exact: Rational,
    pub mult_in_f: usize,
    pub mult_in_g: usize,
}

/// Exact discriminant test `d² − 4c = 0` for one sample.
pub fn detect_double(index: usize, s: &crate::model::SampleCoeffs) -> DoubleZeroFlag {
    if s.discriminant().is_zero() {
        let location = -&s.d / (Rational::from_integer(2.into()) * &s.c);
        DoubleZeroFlag { index, is_double: true, location: Some(location) }
    } else {
        DoubleZeroFlag { index, is_double: false, location: None }
    }
}

/// Exact resultant test for every unordered pair, with the shared root
/// recovered from the monic gcd factor.
pub fn pair_sharing(ds: &Dataset) -> Result<Vec<PairSharing>, VarietyError> {
    let cs = ds.coeffs();
    let mut out = Vec::new();
    for j in 1..cs.len() {
        for i in 0..j {
            let res = cs[i].g_i.resultant(&cs[j].g_i)?;
            if res.is_zero() {
                let shared = cs[i].g_i.gcd(&cs[j].g_i)?;
                match shared.degree() {
                    Some(1) => {
                        let root = -shared.coeff(0);
                        out.push(PairSharing {
                            i,
                            j,
                            shared: true,
                            witness: Some(ComplexRoot {
                                value: Complex64::new(to_f64(&root), 0.0),
                                multiplicity: 1,
                            }),
                            witness_exact: Some(root),
                        });
                    }
                    _ => return Err(VarietyError::NonSingletonPairVariety { i, j }),
                }
            } else {
                out.push(PairSharing { i, j, shared: false, witness: None, witness_exact: None });
            }
        }
    }
    Ok(out)
}

/// Classifies a dataset's zero-sharing configuration.
pub fn classify(ds: &Dataset) -> Result<ZeroConfiguration, VarietyError> {
    let n = ds.n();
    let doubles: Vec<DoubleZeroFlag> = ds
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, s)| detect_double(i, s))
        .collect();
    let pairs = pair_sharing(ds)?;

    let mut group_map: BTreeMap<Rational, BTreeSet<usize>> = BTreeMap::new();
    for p in pairs.iter().filter(|p| p.shared) {
        let root = p.witness_exact.clone().expect("shared pair carries a root");
        let set = group_map.entry(root).or_default();
        set.insert(p.i);
        set.insert(p.j);
    }
    for d in doubles.iter().filter(|d| d.is_double) {
        group_map
            .entry(d.location.clone().expect("double carries a location"))
            .or_default()
            .insert(d.index);
    }
    let groups: Vec<SharedGroup> = group_map
        .into_iter()
        .map(|(root, members)| {
            let has_double_member = doubles
                .iter()
                .any(|d| d.is_double && d.location.as_ref() == Some(&root) && members.contains(&d.index));
            SharedGroup { root, members, has_double_member }
        })
        .collect();

    let n1 = doubles.iter().filter(|d| d.is_double).count();
    let any_shared = pairs.iter().any(|p| p.shared);
    let all_pairs_share = n >= 2 && pairs.iter().all(|p| p.shared);

    let case = if groups.is_empty() {
        ConfigCase::GenericDisjoint
    } else if !any_shared {
        // only isolated double zeros
        ConfigCase::SimpleDoublesOnly { n1 }
    } else if all_pairs_share {
        classify_all_pairs(n, n1, &groups)
    } else if n1 == 0 {
        // groups arise only from shared pairs, so every group has ≥ 2 members
        ConfigCase::RepeatedGroupsNoDouble {
            l: groups.len(),
            m: groups.iter().map(|g| g.members.len()).sum(),
        }
    } else if groups.len() == n1
        && groups.iter().all(|g| g.has_double_member && g.members.len() >= 2)
    {
        ConfigCase::DoubleAnchoredGroups {
            l: n1,
            m: groups.iter().map(|g| g.members.len()).sum(),
        }
    } else {
        ConfigCase::Mixed
    };

    Ok(ZeroConfiguration { n, pairs, doubles, groups, case })
}

fn classify_all_pairs(n: usize, n1: usize, groups: &[SharedGroup]) -> ConfigCase {
    let global = groups.iter().any(|g| g.members.len() == n);
    match n1 {
        1 if global => ConfigCase::AllPairsShareOneDouble,
        0 => {
            if n >= 4 && global {
                ConfigCase::AllPairsShareNoDouble
            } else if n == 3 && !global && groups.len() == 3 {
                // triangle: every pair shares, triple intersection empty
                ConfigCase::N3Triangle
            } else if global {
                // n ∈ {2, 3} with one root common to all samples
                ConfigCase::RepeatedGroupsNoDouble {
                    l: 1,
                    m: groups.iter().map(|g| g.members.len()).max().unwrap_or(n),
                }
            } else {
                ConfigCase::Mixed
            }
        }
        _ => ConfigCase::Mixed,
    }
}

/// Common zeros of `f` and `g` with exact multiplicities, cross-checked
/// against `squarefree(gcd(f, g))`.
pub fn common_zeros_with_multiplicity(
    f: &Poly,
    g: &Poly,
    config: &ZeroConfiguration,
) -> Result<Vec<CommonZeroRecord>, VarietyError> {
    let h = f.gcd(g)?;
    if h.degree() == Some(0) {
        if !config.groups.is_empty() {
            return Err(VarietyError::InternalInconsistency(
                "groups found but gcd(f, g) is constant".into(),
            ));
        }
        return Ok(Vec::new());
    }
    let w = h.squarefree_part()?;
    if w.degree() != Some(config.groups.len()) {
        return Err(VarietyError::InternalInconsistency(format!(
            "squarefree(gcd(f, g)) has degree {:?} but {} group roots were identified",
            w.degree(),
            config.groups.len()
        )));
    }
    let mut records = Vec::new();
    for group in &config.groups {
        if !w.eval(&group.root).is_zero() {
            return Err(VarietyError::InternalInconsistency(format!(
                "group root {} is not a root of squarefree(gcd(f, g))",
                group.root
            )));
        }
        let lin = Poly::linear_from_root(&group.root);
        let mult_in_f = f.multiplicity_in(&lin)?;
        let mult_in_g = g.multiplicity_in(&lin)?;
        records.push(CommonZeroRecord {
            root: ComplexRoot {
                value: Complex64::new(to_f64(&group.root), 0.0),
                multiplicity: mult_in_g,
            },
            root_exact: group.root.clone(),
            mult_in_f,
            mult_in_g,
        });
    }
    Ok(records)
}
