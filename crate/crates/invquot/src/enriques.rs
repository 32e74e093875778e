//! Can the quotient be birational to an Enriques surface?
//!
//! Only the `k = 9` cell of `K_S^2 = 7` leaves the question open; there the
//! admitted configurations are pushed to the nodal Enriques model component
//! by component (`beta` is half the adjunction degree, so images land on a
//! numerically trivial canonical class) and matched against the encoded
//! exclusion cases. Whatever survives forces a nontrivial 2-torsion class
//! upstairs.

use crate::arith::{blowdown_pushforward, ArithError, CurveClass, CurveType};
use crate::branch::BranchConfig;
use crate::profile::QuotientProfile;
use crate::rules::{ExclusionRule, RuleKind, RuleSet};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnriquesError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("component {class} has odd adjunction degree; beta is undefined")]
    OddAdjunction { class: CurveClass },
}

/// Verdict on the existence of an Enriques-birational quotient for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EnriquesPossibility {
    Possible { kw2: i64, reason: String },
    Impossible { reason: String },
    Unknown { reason: String },
}

pub fn enriques_possible(profile: &QuotientProfile) -> EnriquesPossibility {
    if profile.numeric_only {
        return EnriquesPossibility::Unknown {
            reason: format!(
                "numeric-only mode: no Enriques case analysis encoded for K_S^2 = {}",
                profile.ks2
            ),
        };
    }
    match profile.k {
        9 => EnriquesPossibility::Possible {
            kw2: -2,
            reason: "kappa(W) <= 1 with K_W^2 = -2 leaves the Enriques case open; \
                     the branch filter decides it"
                .to_string(),
        },
        11 => EnriquesPossibility::Impossible {
            reason:
                "the bicanonical map is composed with the involution, forcing a rational quotient"
                    .to_string(),
        },
        _ => EnriquesPossibility::Impossible {
            reason: "the encoded case analysis gives kappa(W) >= 1".to_string(),
        },
    }
}

/// How one component fares under the pushforward to the Enriques model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentFate {
    pub class: CurveClass,
    /// Half the adjunction degree `K_W . Gamma`.
    pub beta: i64,
    pub image: CurveType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CandidateStatus {
    Survives,
    Excluded { case: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnriquesCandidate {
    pub config: BranchConfig,
    pub per_component: Vec<ComponentFate>,
    pub status: CandidateStatus,
    /// Survivors force a nontrivial 2-torsion class on the covering surface.
    pub torsion: bool,
    pub annotation: Option<String>,
}

fn annotation_for(config: &BranchConfig, fates: &[ComponentFate]) -> Option<String> {
    // the (3,0)+(1,-2) survivor has tight numerology worth surfacing
    let shorthand: Vec<(i64, i64)> = config
        .components()
        .iter()
        .map(|c| (c.pa(), c.selfint()))
        .collect();
    if shorthand == [(3, 0), (1, -2)] {
        let images: Vec<String> = fates.iter().map(|f| f.image.to_string()).collect();
        return Some(format!(
            "tight numerology: the {} image moves in a 5-dimensional system while \
             its contact with the {} image imposes six conditions; reported, not excluding",
            images[0], images[1]
        ));
    }
    None
}

/// Run the encoded Enriques exclusion cases over admitted `k = 9`
/// configurations. Component-shape rules are tried first (in registry
/// order), then the exact-pattern rules; the first hit attributes the case.
pub fn enriques_filter(configs: &[BranchConfig]) -> Result<Vec<EnriquesCandidate>, EnriquesError> {
    let set = RuleSet::builtin();
    let rules = set.enriques_rules();
    let shape_rules: Vec<&ExclusionRule> = rules
        .iter()
        .copied()
        .filter(|r| matches!(r.kind, RuleKind::ComponentShape { .. }))
        .collect();
    let pattern_rules: Vec<&ExclusionRule> = rules
        .iter()
        .copied()
        .filter(|r| matches!(r.kind, RuleKind::ConfigPattern { .. }))
        .collect();

    configs
        .iter()
        .map(|config| {
            let per_component = config
                .components()
                .iter()
                .map(|&class| {
                    let kdeg = class.kdeg();
                    if kdeg % 2 != 0 {
                        return Err(EnriquesError::OddAdjunction { class });
                    }
                    let beta = kdeg / 2;
                    let image = blowdown_pushforward(class.curve_type(), beta)?;
                    Ok(ComponentFate { class, beta, image })
                })
                .collect::<Result<Vec<_>, _>>()?;

            let hit = shape_rules
                .iter()
                .chain(pattern_rules.iter())
                .find(|r| r.applies_to(config, 7, 9));
            let status = match hit {
                Some(r) => CandidateStatus::Excluded { case: r.id.clone() },
                None => CandidateStatus::Survives,
            };
            let torsion = status == CandidateStatus::Survives;
            let annotation = if torsion {
                annotation_for(config, &per_component)
            } else {
                None
            };
            Ok(EnriquesCandidate {
                config: config.clone(),
                per_component,
                status,
                torsion,
                annotation,
            })
        })
        .collect()
}
