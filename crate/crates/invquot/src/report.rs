//! Report assembly and rendering.
//!
//! The builders walk the admissible `(k, K_W^2)` cells, run the enumerator
//! and the exclusion rules, and collect everything into plain serializable
//! structs. Renderers turn a report into one of three formats: `text`
//! (sectioned, with optional enumeration traces), `json` (stable field
//! order, schema under `docs/output-schema.json`), and `paper` (the compact
//! admitted table).

use crate::arith::ArithError;
use crate::branch::{enumerate_cell, BranchConfig, BranchError, RejectionTrace};
use crate::cover::{verify_cover_examples, CoverError, CoverRow};
use crate::enriques::{
    enriques_filter, enriques_possible, CandidateStatus, EnriquesCandidate, EnriquesError,
    EnriquesPossibility,
};
use crate::profile::{allowed_k, quotient_profile, AdmissibleModel, ProfileError, QuotientProfile};
use crate::rules::{
    apply_exclusions, ConfigOutcome, ConfigStatus, ExclusionRule, Provenance, RuleParseError,
    RuleSet, RuleStage,
};
use serde::Serialize;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Enriques(#[from] EnriquesError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    RuleParse(#[from] RuleParseError),
    #[error("k = {k} is not an allowed fixed-point count for K_S^2 = {ks2}; allowed: {allowed:?}")]
    KNotAllowed { ks2: i64, k: i64, allowed: Vec<i64> },
    #[error(
        "K_W^2 = {kw2} is not admissible in the selected cells for K_S^2 = {ks2}; \
         admissible: {admissible:?}"
    )]
    Kw2NotAdmissible {
        ks2: i64,
        kw2: i64,
        admissible: Vec<i64>,
    },
    #[error("no rule with id {0:?} in the registry")]
    UnknownRule(String),
}

impl Error {
    /// Bad request (flag values, rule files) as opposed to a violated
    /// invariant or a table mismatch.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Profile(_)
                | Error::RuleParse(_)
                | Error::KNotAllowed { .. }
                | Error::Kw2NotAdmissible { .. }
                | Error::UnknownRule(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Paper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub kw2: i64,
    pub outcomes: Vec<ConfigOutcome>,
    pub rejections: Vec<RejectionTrace>,
}

impl CellReport {
    pub fn generated(&self) -> usize {
        self.outcomes.len()
    }

    pub fn admitted(&self) -> Vec<&BranchConfig> {
        self.outcomes
            .iter()
            .filter(|o| o.status == ConfigStatus::Admitted)
            .map(|o| &o.config)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KSection {
    pub profile: QuotientProfile,
    /// One entry per enumerated `K_W^2`; empty when the bicanonical map is
    /// composed with the involution or nothing is admissible.
    pub cells: Vec<CellReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub report: String,
    pub schema_version: u32,
    pub ks2: i64,
    pub numeric_only: bool,
    /// How many configurations were excluded by geometric rules.
    pub geometric_exclusions: usize,
    pub sections: Vec<KSection>,
}

/// Run the full classification for one `K_S^2`, optionally restricted to a
/// single `k` or a single `K_W^2`.
pub fn classify(
    ks2: i64,
    only_k: Option<i64>,
    only_kw2: Option<i64>,
    rules: &RuleSet,
) -> Result<ClassificationReport, Error> {
    let allowed = allowed_k(ks2)?;
    if let Some(k) = only_k {
        if !allowed.contains(&k) {
            return Err(Error::KNotAllowed { ks2, k, allowed });
        }
    }
    let selected: Vec<i64> = allowed
        .into_iter()
        .filter(|&k| only_k.is_none_or(|v| v == k))
        .collect();

    if let Some(kw2) = only_kw2 {
        let mut admissible: Vec<i64> = Vec::new();
        for &k in &selected {
            admissible.extend(quotient_profile(ks2, k)?.admissible_kw2());
        }
        admissible.sort_unstable_by(|a, b| b.cmp(a));
        admissible.dedup();
        if !admissible.contains(&kw2) {
            return Err(Error::Kw2NotAdmissible {
                ks2,
                kw2,
                admissible,
            });
        }
    }

    let mut sections = Vec::new();
    let mut numeric_only = ks2 != 7;
    for &k in &selected {
        let profile = quotient_profile(ks2, k)?;
        numeric_only = profile.numeric_only;
        let keep = |kw2: i64| only_kw2.is_none_or(|v| v == kw2);
        if only_kw2.is_some() && !profile.admissible_kw2().iter().any(|&v| keep(v)) {
            continue;
        }
        let mut cells = Vec::new();
        if !profile.bicanonical_composed {
            for kw2 in profile.admissible_kw2() {
                if !keep(kw2) {
                    continue;
                }
                let enumeration = enumerate_cell(&profile, kw2)?;
                let outcomes = apply_exclusions(&enumeration.configs, rules.rules(), ks2, k);
                cells.push(CellReport {
                    kw2,
                    outcomes,
                    rejections: enumeration.rejections,
                });
            }
        }
        sections.push(KSection { profile, cells });
    }

    let geometric_exclusions = sections
        .iter()
        .flat_map(|s| &s.cells)
        .flat_map(|c| &c.outcomes)
        .filter(|o| o.status == ConfigStatus::Excluded)
        .filter(|o| {
            o.rule_id
                .as_deref()
                .and_then(|id| rules.find(id))
                .is_some_and(|r| r.provenance == Provenance::Geometric)
        })
        .count();

    Ok(ClassificationReport {
        report: "classification".to_string(),
        schema_version: SCHEMA_VERSION,
        ks2,
        numeric_only,
        geometric_exclusions,
        sections,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KAssessment {
    pub k: i64,
    pub possibility: EnriquesPossibility,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnriquesReport {
    pub report: String,
    pub schema_version: u32,
    pub ks2: i64,
    pub numeric_only: bool,
    pub assessments: Vec<KAssessment>,
    /// Candidate-by-candidate analysis of the open cells.
    pub candidates: Vec<EnriquesCandidate>,
    pub survivors: usize,
    /// True when survivors exist and every one forces 2-torsion.
    pub torsion_forced: bool,
}

pub fn enriques_report(ks2: i64) -> Result<EnriquesReport, Error> {
    let rules = RuleSet::builtin();
    let mut assessments = Vec::new();
    let mut candidates: Vec<EnriquesCandidate> = Vec::new();
    for k in allowed_k(ks2)? {
        let profile = quotient_profile(ks2, k)?;
        let possibility = enriques_possible(&profile);
        if let EnriquesPossibility::Possible { kw2, .. } = possibility {
            let enumeration = enumerate_cell(&profile, kw2)?;
            let admitted: Vec<BranchConfig> =
                apply_exclusions(&enumeration.configs, rules.rules(), ks2, k)
                    .into_iter()
                    .filter(|o| o.status == ConfigStatus::Admitted)
                    .map(|o| o.config)
                    .collect();
            candidates.extend(enriques_filter(&admitted)?);
        }
        assessments.push(KAssessment { k, possibility });
    }
    let survivors = candidates
        .iter()
        .filter(|c| matches!(c.status, CandidateStatus::Survives))
        .count();
    let torsion_forced = survivors > 0
        && candidates
            .iter()
            .filter(|c| matches!(c.status, CandidateStatus::Survives))
            .all(|c| c.torsion);
    Ok(EnriquesReport {
        report: "enriques".to_string(),
        schema_version: SCHEMA_VERSION,
        ks2,
        numeric_only: ks2 != 7,
        assessments,
        candidates,
        survivors,
        torsion_forced,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExamplesReport {
    pub report: String,
    pub schema_version: u32,
    pub rows: Vec<CoverRow>,
}

pub fn examples_report() -> Result<ExamplesReport, Error> {
    let cover = verify_cover_examples()?;
    Ok(ExamplesReport {
        report: "examples".to_string(),
        schema_version: SCHEMA_VERSION,
        rows: cover.rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RulesReport {
    pub report: String,
    pub schema_version: u32,
    pub rules: Vec<ExclusionRule>,
}

pub fn rules_report(
    set: &RuleSet,
    provenance: Option<Provenance>,
    id: Option<&str>,
) -> Result<RulesReport, Error> {
    if let Some(id) = id {
        if set.find(id).is_none() {
            return Err(Error::UnknownRule(id.to_string()));
        }
    }
    let rules = set
        .rules()
        .iter()
        .filter(|r| provenance.is_none_or(|p| r.provenance == p))
        .filter(|r| id.is_none_or(|v| r.id == v))
        .cloned()
        .collect();
    Ok(RulesReport {
        report: "rules".to_string(),
        schema_version: SCHEMA_VERSION,
        rules,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization is infallible");
    s.push('\n');
    s
}

// Aligned plain-text table. Numeric columns are right-aligned.
fn table(header: &[&str], rows: &[Vec<String>], right: &[bool]) -> String {
    let cols = header.len();
    let mut width = vec![0usize; cols];
    for (i, h) in header.iter().enumerate() {
        width[i] = h.len();
    }
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.len());
        }
    }
    let fmt_row = |cells: &[String]| -> String {
        let mut parts = Vec::with_capacity(cols);
        for (i, cell) in cells.iter().enumerate() {
            if right.get(i).copied().unwrap_or(false) {
                parts.push(format!("{:>w$}", cell, w = width[i]));
            } else {
                parts.push(format!("{:<w$}", cell, w = width[i]));
            }
        }
        let mut line = parts.join(" | ");
        while line.ends_with(' ') {
            line.pop();
        }
        line
    };
    let mut out = String::new();
    let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    out.push_str(&fmt_row(&header));
    out.push('\n');
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("-+-"));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row));
        out.push('\n');
    }
    out
}

fn models_by_kw2(profile: &QuotientProfile, kw2: i64) -> Vec<&AdmissibleModel> {
    profile.admissible.iter().filter(|m| m.kw2 == kw2).collect()
}

fn class_label(models: &[&AdmissibleModel]) -> String {
    models
        .iter()
        .map(|m| m.kodaira.to_string())
        .collect::<Vec<_>>()
        .join(" or ")
}

fn profile_header(p: &QuotientProfile) -> String {
    format!(
        "k = {}: K_W.D = {}, B0.D = {}, K_V^2 = {}, h0(2K_W + L) = {}, h0(2K_W + B0) = {}",
        p.k, p.kwd, p.b0d, p.kv2, p.h0, p.h0_b0
    )
}

const BICANONICAL_NOTE: &str =
    "bicanonical map composed with the involution; branch curve not enumerated";

pub fn render_classification(r: &ClassificationReport, format: Format, trace: bool) -> String {
    match format {
        Format::Json => json(r),
        Format::Text => classification_text(r, trace),
        Format::Paper => classification_paper(r),
    }
}

fn classification_text(r: &ClassificationReport, trace: bool) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "involution quotients for K_S^2 = {} (D^2 = {})",
        r.ks2,
        2 * r.ks2
    )
    .unwrap();
    if r.numeric_only {
        writeln!(out, "mode: numeric bounds only").unwrap();
    } else {
        writeln!(out, "mode: numeric bounds and encoded case analysis").unwrap();
    }
    let ks: Vec<String> = r.sections.iter().map(|s| s.profile.k.to_string()).collect();
    writeln!(out, "fixed-point counts k: {}", ks.join(", ")).unwrap();

    for section in &r.sections {
        let p = &section.profile;
        out.push('\n');
        writeln!(out, "{}", profile_header(p)).unwrap();
        if p.admissible.is_empty() {
            writeln!(out, "  no admissible K_W^2").unwrap();
            continue;
        }
        for kw2 in p.admissible_kw2() {
            let models = models_by_kw2(p, kw2);
            let cell = section.cells.iter().find(|c| c.kw2 == kw2);
            if cell.is_none() && !p.bicanonical_composed {
                // filtered out by a kw2 restriction
                continue;
            }
            writeln!(out, "  K_W^2 = {} ({})", kw2, class_label(&models)).unwrap();
            if trace {
                writeln!(
                    out,
                    "    constraints: {}",
                    models[0].constrained_by.join("; ")
                )
                .unwrap();
            }
            if p.bicanonical_composed {
                writeln!(out, "    {BICANONICAL_NOTE}").unwrap();
                continue;
            }
            let cell = cell.expect("enumerated cell present");
            writeln!(
                out,
                "    admitted {} of {} generated",
                cell.admitted().len(),
                cell.generated()
            )
            .unwrap();
            for o in &cell.outcomes {
                match (&o.status, &o.rule_id) {
                    (ConfigStatus::Admitted, _) => {
                        writeln!(out, "      {}", o.config).unwrap();
                    }
                    (ConfigStatus::Excluded, Some(id)) => {
                        writeln!(out, "      {}  [excluded by {}]", o.config, id).unwrap();
                    }
                    (ConfigStatus::Excluded, None) => {
                        writeln!(out, "      {}  [excluded]", o.config).unwrap();
                    }
                }
            }
            if trace && !cell.rejections.is_empty() {
                writeln!(out, "    rejected during enumeration:").unwrap();
                for t in &cell.rejections {
                    writeln!(out, "      {t}").unwrap();
                }
            }
        }
    }

    out.push('\n');
    writeln!(
        out,
        "geometric exclusions applied: {}",
        r.geometric_exclusions
    )
    .unwrap();
    out
}

fn classification_paper(r: &ClassificationReport) -> String {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for section in &r.sections {
        let p = &section.profile;
        for kw2 in p.admissible_kw2() {
            let class = class_label(&models_by_kw2(p, kw2));
            if p.bicanonical_composed {
                rows.push(vec![
                    p.k.to_string(),
                    kw2.to_string(),
                    "not enumerated (bicanonical)".to_string(),
                    class,
                ]);
                continue;
            }
            let Some(cell) = section.cells.iter().find(|c| c.kw2 == kw2) else {
                continue;
            };
            for config in cell.admitted() {
                rows.push(vec![
                    p.k.to_string(),
                    kw2.to_string(),
                    config.to_string(),
                    class.clone(),
                ]);
            }
        }
    }
    let mut out = String::new();
    writeln!(out, "admitted branch configurations for K_S^2 = {}", r.ks2).unwrap();
    out.push('\n');
    if rows.is_empty() {
        writeln!(out, "(no admissible cells)").unwrap();
    } else {
        out.push_str(&table(
            &["k", "K_W^2", "B0", "W"],
            &rows,
            &[true, true, false, false],
        ));
    }
    out
}

pub fn render_enriques(r: &EnriquesReport, format: Format) -> String {
    if format == Format::Json {
        return json(r);
    }
    let mut out = String::new();
    writeln!(out, "Enriques assessment for K_S^2 = {}", r.ks2).unwrap();
    out.push('\n');
    for a in &r.assessments {
        match &a.possibility {
            EnriquesPossibility::Possible { kw2, reason } => {
                writeln!(out, "k = {}: possible at K_W^2 = {} ({})", a.k, kw2, reason).unwrap();
            }
            EnriquesPossibility::Impossible { reason } => {
                writeln!(out, "k = {}: impossible ({})", a.k, reason).unwrap();
            }
            EnriquesPossibility::Unknown { reason } => {
                writeln!(out, "k = {}: unknown ({})", a.k, reason).unwrap();
            }
        }
    }
    out.push('\n');
    if r.candidates.is_empty() {
        writeln!(out, "no candidate analysis available").unwrap();
        return out;
    }
    writeln!(out, "branch candidates at the open cell:").unwrap();
    for c in &r.candidates {
        writeln!(out, "  {}", c.config).unwrap();
        let fates: Vec<String> = c
            .per_component
            .iter()
            .map(|f| format!("{} beta={} image {}", f.class, f.beta, f.image))
            .collect();
        writeln!(out, "    components: {}", fates.join("; ")).unwrap();
        match &c.status {
            CandidateStatus::Survives => {
                if c.torsion {
                    writeln!(
                        out,
                        "    survives (2-torsion forced on the covering surface)"
                    )
                    .unwrap();
                } else {
                    writeln!(out, "    survives").unwrap();
                }
            }
            CandidateStatus::Excluded { case } => {
                writeln!(out, "    excluded by case {case}").unwrap();
            }
        }
        if let Some(note) = &c.annotation {
            writeln!(out, "    note: {note}").unwrap();
        }
    }
    out.push('\n');
    if r.survivors > 0 && r.torsion_forced {
        writeln!(
            out,
            "survivors: {} of {}; every survivor forces 2-torsion on the covering surface",
            r.survivors,
            r.candidates.len()
        )
        .unwrap();
    } else {
        writeln!(out, "survivors: {} of {}", r.survivors, r.candidates.len()).unwrap();
    }
    out
}

pub fn render_examples(r: &ExamplesReport, format: Format) -> String {
    if format == Format::Json {
        return json(r);
    }
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            let b0 = row
                .b0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join("+");
            let check = match row.admitted_member {
                Some(true) => "in admitted table".to_string(),
                Some(false) => "NOT in admitted table".to_string(),
                None => "aggregate identities (cell not enumerated)".to_string(),
            };
            vec![
                row.name.clone(),
                row.k.to_string(),
                row.kw2.to_string(),
                b0,
                row.class.clone(),
                check,
            ]
        })
        .collect();
    let mut out = String::new();
    writeln!(out, "double-cover construction examples").unwrap();
    writeln!(
        out,
        "all rows recomputed and verified against the classification tables"
    )
    .unwrap();
    out.push('\n');
    out.push_str(&table(
        &["name", "k", "K_W^2", "B0", "W", "check"],
        &rows,
        &[false, true, true, false, false, false],
    ));
    out
}

pub fn render_rules(r: &RulesReport, format: Format) -> String {
    if format == Format::Json {
        return json(r);
    }
    let provenance_str = |p: Provenance| match p {
        Provenance::Numeric => "numeric",
        Provenance::Geometric => "geometric",
    };
    let stage_str = |s: RuleStage| match s {
        RuleStage::Enumeration => "enumeration",
        RuleStage::Classification => "classification",
        RuleStage::Enriques => "enriques",
    };
    let mut out = String::new();
    writeln!(out, "rule registry ({} rules)", r.rules.len()).unwrap();
    for rule in &r.rules {
        out.push('\n');
        writeln!(
            out,
            "{} ({}, {}; {})",
            rule.id,
            provenance_str(rule.provenance),
            stage_str(rule.stage),
            rule.scope
        )
        .unwrap();
        writeln!(out, "  {}", rule.kind.describe()).unwrap();
        if !rule.citation.is_empty() {
            writeln!(out, "  citation: {}", rule.citation).unwrap();
        }
        if !rule.note.is_empty() {
            writeln!(out, "  note: {}", rule.note).unwrap();
        }
    }
    out
}
