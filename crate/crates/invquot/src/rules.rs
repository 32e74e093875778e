//! Exclusion rules with provenance.
//!
//! NUMERIC rules are the integer filters already wired into the enumerator;
//! they are listed here read-only so the registry describes the whole
//! pipeline. GEOMETRIC rules are encoded conclusions (with citations), never
//! re-derived: they match specific configurations or component shapes and
//! knock them out of a table. Additional pattern rules can be loaded from a
//! line-oriented file, see [`parse_rules`] for the grammar.

use crate::arith::{ArithError, CurveClass, CurveType};
use crate::branch::BranchConfig;
use itertools::Itertools;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Numeric,
    Geometric,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Numeric => write!(f, "numeric"),
            Provenance::Geometric => write!(f, "geometric"),
        }
    }
}

/// Where in the pipeline a rule acts. Enumeration rules are descriptive
/// (the enumerator enforces them arithmetically); classification rules
/// prune enumerated tables; Enriques rules act inside the quotient filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleStage {
    Enumeration,
    Classification,
    Enriques,
}

/// Cell predicate: a `None` field matches any value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RuleScope {
    pub ks2: Option<i64>,
    pub k: Option<i64>,
    pub kw2: Option<i64>,
}

impl RuleScope {
    pub fn cell(ks2: i64, k: i64, kw2: i64) -> Self {
        RuleScope {
            ks2: Some(ks2),
            k: Some(k),
            kw2: Some(kw2),
        }
    }

    pub fn matches(&self, ks2: i64, k: i64, kw2: i64) -> bool {
        self.ks2.is_none_or(|v| v == ks2)
            && self.k.is_none_or(|v| v == k)
            && self.kw2.is_none_or(|v| v == kw2)
    }
}

impl fmt::Display for RuleScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(v) = self.ks2 {
            parts.push(format!("K_S^2={v}"));
        }
        if let Some(v) = self.k {
            parts.push(format!("k={v}"));
        }
        if let Some(v) = self.kw2 {
            parts.push(format!("K_W^2={v}"));
        }
        if parts.is_empty() {
            write!(f, "any cell")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleKind {
    /// Exact component multiset, kept canonically sorted.
    ConfigPattern { components: Vec<CurveClass> },
    /// Any single component with this genus and half-adjunction degree
    /// `beta` in the given range (`beta_max = None` means unbounded).
    ComponentShape {
        pa: i64,
        beta_min: i64,
        beta_max: Option<i64>,
    },
    /// Descriptive only; enforced arithmetically elsewhere, never matches.
    Aggregate,
}

impl RuleKind {
    pub fn pattern(types: &[(i64, i64)]) -> Result<Self, ArithError> {
        let mut components = types
            .iter()
            .map(|&(pa, selfint)| CurveClass::from_curve_type(CurveType::new(pa, selfint)))
            .collect::<Result<Vec<_>, _>>()?;
        components.sort();
        Ok(RuleKind::ConfigPattern { components })
    }

    pub fn describe(&self) -> String {
        match self {
            RuleKind::ConfigPattern { components } if components.is_empty() => {
                "pattern: (empty)".to_string()
            }
            RuleKind::ConfigPattern { components } => {
                format!(
                    "pattern: {}",
                    components.iter().map(|c| c.to_string()).join("+")
                )
            }
            RuleKind::ComponentShape {
                pa,
                beta_min,
                beta_max: Some(b),
            } if b == beta_min => {
                format!("component with pa = {pa}, beta = {beta_min}")
            }
            RuleKind::ComponentShape {
                pa,
                beta_min,
                beta_max: Some(b),
            } => {
                format!("component with pa = {pa}, {beta_min} <= beta <= {b}")
            }
            RuleKind::ComponentShape {
                pa,
                beta_min,
                beta_max: None,
            } => {
                format!("component with pa = {pa}, beta >= {beta_min}")
            }
            RuleKind::Aggregate => "aggregate constraint (enforced by the enumerator)".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionRule {
    pub id: String,
    pub provenance: Provenance,
    pub stage: RuleStage,
    pub scope: RuleScope,
    pub kind: RuleKind,
    pub citation: String,
    pub note: String,
}

impl ExclusionRule {
    /// Does this rule knock out `config` in the `(ks2, k)` cell?
    pub fn applies_to(&self, config: &BranchConfig, ks2: i64, k: i64) -> bool {
        if !self.scope.matches(ks2, k, config.kw2()) {
            return false;
        }
        match &self.kind {
            RuleKind::ConfigPattern { components } => config.components() == components.as_slice(),
            RuleKind::ComponentShape {
                pa,
                beta_min,
                beta_max,
            } => config.components().iter().any(|c| {
                let beta = c.kdeg() / 2;
                c.pa() == *pa && beta >= *beta_min && beta_max.is_none_or(|m| beta <= m)
            }),
            RuleKind::Aggregate => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigStatus {
    Admitted,
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigOutcome {
    pub config: BranchConfig,
    pub status: ConfigStatus,
    /// First matching rule in listing order; the admitted set itself does
    /// not depend on rule order.
    pub rule_id: Option<String>,
}

/// Mark every configuration admitted or excluded. Only classification-stage
/// rules act here; application is idempotent and the admitted set is
/// independent of the order of `rules`.
pub fn apply_exclusions(
    configs: &[BranchConfig],
    rules: &[ExclusionRule],
    ks2: i64,
    k: i64,
) -> Vec<ConfigOutcome> {
    configs
        .iter()
        .map(|config| {
            let hit = rules
                .iter()
                .find(|r| r.stage == RuleStage::Classification && r.applies_to(config, ks2, k));
            ConfigOutcome {
                config: config.clone(),
                status: if hit.is_some() {
                    ConfigStatus::Excluded
                } else {
                    ConfigStatus::Admitted
                },
                rule_id: hit.map(|r| r.id.clone()),
            }
        })
        .collect()
}

fn rule(
    id: &str,
    provenance: Provenance,
    stage: RuleStage,
    scope: RuleScope,
    kind: RuleKind,
    citation: &str,
    note: &str,
) -> ExclusionRule {
    ExclusionRule {
        id: id.to_string(),
        provenance,
        stage,
        scope,
        kind,
        citation: citation.to_string(),
        note: note.to_string(),
    }
}

/// The built-in registry. NUMERIC entries describe the enumerator's
/// arithmetic filters; GEOMETRIC entries encode the case-analysis
/// conclusions for `K_S^2 = 7` and the Enriques filter.
pub fn builtin_rules() -> Vec<ExclusionRule> {
    use Provenance::{Geometric, Numeric};
    use RuleStage::{Classification, Enriques, Enumeration};
    let any = RuleScope::default;
    vec![
        rule(
            "PA-NONNEG",
            Numeric,
            Enumeration,
            any(),
            RuleKind::Aggregate,
            "genus formula for the half-preimage of a branch component",
            "1 + (Gamma^2 + Gamma.D)/4 >= 0 for every component",
        ),
        rule(
            "PARITY-MOD4",
            Numeric,
            Enumeration,
            any(),
            RuleKind::Aggregate,
            "integrality of the half-preimage genus",
            "Gamma^2 + Gamma.D = 0 (mod 4) for every component",
        ),
        rule(
            "PARITY-EVEN-D",
            Numeric,
            Enumeration,
            any(),
            RuleKind::Aggregate,
            "Gamma.D equals twice a canonical degree on the double cover",
            "Gamma.D is even for every component",
        ),
        rule(
            "HODGE-INDEX",
            Numeric,
            Enumeration,
            any(),
            RuleKind::Aggregate,
            "algebraic index theorem next to the big and nef class D",
            "Gamma^2 D^2 <= (Gamma.D)^2, tested exactly over the integers",
        ),
        rule(
            "MINUS4-ZERO-D",
            Numeric,
            Enumeration,
            any(),
            RuleKind::Aggregate,
            "a branch component off the support of D",
            "Gamma.D = 0 forces Gamma = (0,-4)",
        ),
        rule(
            "BUDGET-L",
            Numeric,
            Enumeration,
            any(),
            RuleKind::Aggregate,
            "adjunction budget of the branch divisor",
            "K_W.B0 = K_W.D - 2 K_W^2 fixes the count of (0,-4) components; a negative count rejects the candidate",
        ),
        rule(
            "MQS-2.1.1",
            Geometric,
            Classification,
            RuleScope::cell(7, 9, -2),
            RuleKind::pattern(&[(5, 6), (0, -4), (0, -4)]).expect("builtin pattern"),
            "Miyaoka, Prop. 2.1.1: bound on disjoint negative configurations on a minimal surface of general type",
            "each (0,-4) component lies under a smooth rational curve upstairs; two of them overload the bound",
        ),
        rule(
            "LEMMA-K7",
            Geometric,
            Classification,
            RuleScope::cell(7, 7, 0),
            RuleKind::pattern(&[(3, 2), (0, -4)]).expect("builtin pattern"),
            "Miyaoka-type count for seven disjoint nodal curves next to a (-4)-curve",
            "neither a minimal properly elliptic quotient nor one with minimal model of K^2 = 1 has room for the extra (-4)-curve",
        ),
        rule(
            "E-a",
            Geometric,
            Enriques,
            RuleScope::cell(7, 9, -2),
            RuleKind::ComponentShape { pa: 0, beta_min: 1, beta_max: Some(1) },
            "an Enriques surface carries at most eight disjoint nodal curves",
            "a genus-zero component with beta = 1 lands on a ninth disjoint (-2)-curve of the Enriques model",
        ),
        rule(
            "E-b",
            Geometric,
            Enriques,
            RuleScope::cell(7, 9, -2),
            RuleKind::ComponentShape { pa: 0, beta_min: 2, beta_max: None },
            "Enriques surfaces with eight disjoint nodal curves are quotients of a product of elliptic curves (Mendes Lopes-Pardini)",
            "a genus-zero component with beta >= 2 would give a rational curve dominating an elliptic curve on that product",
        ),
        rule(
            "E-c",
            Geometric,
            Enriques,
            RuleScope::cell(7, 9, -2),
            RuleKind::ComponentShape { pa: 1, beta_min: 2, beta_max: None },
            "Enriques surfaces with eight disjoint nodal curves are quotients of a product of elliptic curves (Mendes Lopes-Pardini)",
            "a genus-one component with beta >= 2 would lift to a smooth curve on the product, but its image is singular",
        ),
        rule(
            "E-d",
            Geometric,
            Enriques,
            RuleScope::cell(7, 9, -2),
            RuleKind::pattern(&[(3, 2), (1, -2), (1, -2)]).expect("builtin pattern"),
            "elliptic pencils cut by half-fibers on the nodal Enriques model",
            "encoded pencil analysis: the images (3,4), (1,0), (1,0) do not coexist",
        ),
        rule(
            "E-e",
            Geometric,
            Enriques,
            RuleScope::cell(7, 9, -2),
            RuleKind::pattern(&[(2, 0), (2, 0), (1, -2)]).expect("builtin pattern"),
            "elliptic pencils cut by half-fibers on the nodal Enriques model",
            "encoded pencil analysis: the images (2,2), (2,2), (1,0) do not coexist",
        ),
        rule(
            "E-f",
            Geometric,
            Enriques,
            RuleScope::cell(7, 9, -2),
            RuleKind::pattern(&[(2, -2), (2, 0)]).expect("builtin pattern"),
            "elliptic pencils cut by half-fibers on the nodal Enriques model",
            "encoded pencil analysis: the images (4,6), (2,2) do not coexist",
        ),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: component {pair}: {source}")]
    BadComponent {
        line: usize,
        pair: String,
        source: ArithError,
    },
    #[error("duplicate rule id {0}")]
    DuplicateId(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> RuleParseError {
    RuleParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_pattern(s: &str, line: usize) -> Result<RuleKind, RuleParseError> {
    let t = s.trim();
    if t == "empty" {
        return Ok(RuleKind::ConfigPattern {
            components: Vec::new(),
        });
    }
    let mut components = Vec::new();
    for piece in t.split('+') {
        let p = piece.trim();
        let inner = p
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| syntax(line, format!("expected (pa,selfint), got {p:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| syntax(line, format!("expected (pa,selfint), got {p:?}")))?;
        let pa: i64 = a
            .trim()
            .parse()
            .map_err(|_| syntax(line, format!("bad integer {:?}", a.trim())))?;
        let selfint: i64 = b
            .trim()
            .parse()
            .map_err(|_| syntax(line, format!("bad integer {:?}", b.trim())))?;
        let c = CurveClass::from_curve_type(CurveType::new(pa, selfint)).map_err(|source| {
            RuleParseError::BadComponent {
                line,
                pair: p.to_string(),
                source,
            }
        })?;
        components.push(c);
    }
    components.sort();
    Ok(RuleKind::ConfigPattern { components })
}

fn parse_scope(s: &str, line: usize) -> Result<RuleScope, RuleParseError> {
    let mut scope = RuleScope::default();
    for token in s.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected key=value, got {token:?}")))?;
        let v: i64 = value
            .parse()
            .map_err(|_| syntax(line, format!("bad integer {value:?}")))?;
        match key {
            "ks2" => scope.ks2 = Some(v),
            "k" => scope.k = Some(v),
            "kw2" => scope.kw2 = Some(v),
            _ => return Err(syntax(line, format!("unknown scope key {key:?}"))),
        }
    }
    Ok(scope)
}

/// Parse the line-oriented rule file format:
///
/// ```text
/// # comment
/// rule MY-RULE
/// provenance geometric
/// scope ks2=7 k=9 kw2=-2
/// pattern (5,6)+(0,-4)+(0,-4)
/// citation where the exclusion is proved
/// note free-form remark
/// end
/// ```
///
/// `scope` and `note` are optional (an absent scope matches every cell);
/// `pattern` takes the exact component multiset, or the word `empty`.
/// Loaded rules act at the classification stage.
pub fn parse_rules(text: &str) -> Result<Vec<ExclusionRule>, RuleParseError> {
    struct Partial {
        line: usize,
        id: String,
        provenance: Option<Provenance>,
        scope: RuleScope,
        kind: Option<RuleKind>,
        citation: Option<String>,
        note: String,
    }
    let mut rules: Vec<ExclusionRule> = Vec::new();
    let mut cur: Option<Partial> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (word, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        match word {
            "rule" => {
                if cur.is_some() {
                    return Err(syntax(line, "rule block not closed with end"));
                }
                if rest.is_empty() {
                    return Err(syntax(line, "rule needs an id"));
                }
                cur = Some(Partial {
                    line,
                    id: rest.to_string(),
                    provenance: None,
                    scope: RuleScope::default(),
                    kind: None,
                    citation: None,
                    note: String::new(),
                });
            }
            "end" => {
                let p = cur
                    .take()
                    .ok_or_else(|| syntax(line, "end outside a rule block"))?;
                let provenance = p
                    .provenance
                    .ok_or_else(|| syntax(p.line, format!("rule {} has no provenance", p.id)))?;
                let kind = p
                    .kind
                    .ok_or_else(|| syntax(p.line, format!("rule {} has no pattern", p.id)))?;
                let citation = p
                    .citation
                    .ok_or_else(|| syntax(p.line, format!("rule {} has no citation", p.id)))?;
                if rules.iter().any(|r| r.id == p.id) {
                    return Err(RuleParseError::DuplicateId(p.id));
                }
                rules.push(ExclusionRule {
                    id: p.id,
                    provenance,
                    stage: RuleStage::Classification,
                    scope: p.scope,
                    kind,
                    citation,
                    note: p.note,
                });
            }
            _ => {
                let p = cur
                    .as_mut()
                    .ok_or_else(|| syntax(line, format!("expected a rule block, got {word:?}")))?;
                match word {
                    "provenance" => {
                        p.provenance = Some(match rest {
                            "numeric" => Provenance::Numeric,
                            "geometric" => Provenance::Geometric,
                            other => {
                                return Err(syntax(line, format!("unknown provenance {other:?}")))
                            }
                        })
                    }
                    "scope" => p.scope = parse_scope(rest, line)?,
                    "pattern" => p.kind = Some(parse_pattern(rest, line)?),
                    "citation" => p.citation = Some(rest.to_string()),
                    "note" => p.note = rest.to_string(),
                    other => return Err(syntax(line, format!("unknown directive {other:?}"))),
                }
            }
        }
    }
    if let Some(p) = cur {
        return Err(syntax(p.line, format!("rule {} not closed with end", p.id)));
    }
    Ok(rules)
}

/// The working rule collection: built-ins, optionally extended from a file.
#[derive(Debug, Clone)]
pub struct RuleSet {
    rules: Vec<ExclusionRule>,
}

impl RuleSet {
    pub fn builtin() -> Self {
        RuleSet {
            rules: builtin_rules(),
        }
    }

    /// Built-ins plus the rules of `text`; ids must stay unique.
    pub fn with_file(text: &str) -> Result<Self, RuleParseError> {
        let mut rules = builtin_rules();
        for r in parse_rules(text)? {
            if rules.iter().any(|b| b.id == r.id) {
                return Err(RuleParseError::DuplicateId(r.id));
            }
            rules.push(r);
        }
        Ok(RuleSet { rules })
    }

    pub fn rules(&self) -> &[ExclusionRule] {
        &self.rules
    }

    pub fn find(&self, id: &str) -> Option<&ExclusionRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn enriques_rules(&self) -> Vec<&ExclusionRule> {
        self.rules
            .iter()
            .filter(|r| r.stage == RuleStage::Enriques)
            .collect()
    }
}
