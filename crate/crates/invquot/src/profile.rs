//! Numerical profile of an involution quotient.
//!
//! For a minimal surface of general type `S` with `p_g = q = 0` and an
//! involution with `k` isolated fixed points, the quotient data
//! (degrees against the pushed-down canonical class `D`, the resolution
//! invariant `K_V^2`, the relevant `h^0`s) is determined by `(K_S^2, k)`
//! alone. The admissible values of `K_W^2` are pinned down by exact integer
//! bounds; for `K_S^2 = 7` the sharper encoded case analysis also fixes the
//! Kodaira class of `W`.

use serde::Serialize;
use std::fmt;

pub const KS2_MIN: i64 = 1;
pub const KS2_MAX: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("K_S^2 must lie in {KS2_MIN}..={KS2_MAX}, got {0}")]
    Ks2OutOfRange(i64),
    #[error("k = {k} is not compatible with K_S^2 = {ks2}: {reason}")]
    BadK {
        ks2: i64,
        k: i64,
        reason: &'static str,
    },
}

/// What is known about the quotient surface `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KodairaClass {
    Rational,
    EnriquesBirational,
    ProperlyElliptic {
        minimal: bool,
    },
    GeneralType {
        minimal: bool,
        minimal_model_k2: Option<i64>,
    },
    UnknownAtMost {
        kappa_bound: i64,
    },
}

impl KodairaClass {
    pub fn unknown_at_most(kappa_bound: i64) -> Self {
        assert!((-1..=2).contains(&kappa_bound), "kappa bound out of range");
        KodairaClass::UnknownAtMost { kappa_bound }
    }
}

impl fmt::Display for KodairaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaClass::Rational => write!(f, "rational"),
            KodairaClass::EnriquesBirational => write!(f, "birational to an Enriques surface"),
            KodairaClass::ProperlyElliptic { minimal: true } => {
                write!(f, "minimal properly elliptic")
            }
            KodairaClass::ProperlyElliptic { minimal: false } => write!(f, "properly elliptic"),
            KodairaClass::GeneralType { minimal: true, .. } => write!(f, "minimal of general type"),
            KodairaClass::GeneralType {
                minimal: false,
                minimal_model_k2: Some(m),
            } => {
                write!(f, "of general type, minimal model with K^2 = {m}")
            }
            KodairaClass::GeneralType {
                minimal: false,
                minimal_model_k2: None,
            } => {
                write!(f, "of general type, not minimal")
            }
            KodairaClass::UnknownAtMost { kappa_bound } => write!(f, "kappa(W) <= {kappa_bound}"),
        }
    }
}

/// One admissible value of `K_W^2` together with the class of `W` and the
/// induced splitting data `K_W . L = h^0 - K_W^2`, `L^2 = -2 - K_W . L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleModel {
    pub kw2: i64,
    pub kodaira: KodairaClass,
    pub kwl: i64,
    pub lsq: i64,
    pub constrained_by: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientProfile {
    pub ks2: i64,
    pub k: i64,
    /// `D^2 = 2 K_S^2` for the pushed-down canonical class.
    pub dsq: i64,
    /// `K_W . D = K_S^2 + 4 - k`.
    pub kwd: i64,
    /// `B_0 . D = 2k - 8`.
    pub b0d: i64,
    /// `K_V^2 = K_S^2 - k` on the blown-up double cover.
    pub kv2: i64,
    /// `h^0(2 K_W + L) = (K_S^2 + 4 - k) / 2`.
    pub h0: i64,
    /// `h^0(2 K_W + B_0) = K_S^2 + 1 - h0`, the invariant part of the
    /// bicanonical system.
    pub h0_b0: i64,
    /// True exactly when `k = K_S^2 + 4`: the bicanonical map factors
    /// through the involution and the branch curve is not enumerated.
    pub bicanonical_composed: bool,
    /// True away from `K_S^2 = 7`: only the integer bounds apply, no
    /// geometric case analysis.
    pub numeric_only: bool,
    pub admissible: Vec<AdmissibleModel>,
}

fn check_ks2(ks2: i64) -> Result<(), ProfileError> {
    if !(KS2_MIN..=KS2_MAX).contains(&ks2) {
        return Err(ProfileError::Ks2OutOfRange(ks2));
    }
    Ok(())
}

/// All values of `k` compatible with `K_S^2`: `k = K_S^2 + 4 - 2 h^0` with
/// `h^0 >= 0` and at least four isolated fixed points. Ascending.
pub fn allowed_k(ks2: i64) -> Result<Vec<i64>, ProfileError> {
    check_ks2(ks2)?;
    Ok((4..=ks2 + 4).filter(|k| (ks2 + 4 - k) % 2 == 0).collect())
}

/// The bicanonical map of `S` factors through the involution exactly when
/// `k = K_S^2 + 4`, i.e. `h^0(2 K_W + L) = 0`.
pub fn is_bicanonical_composed(ks2: i64, k: i64) -> bool {
    k == ks2 + 4
}

// Integer bounds on K_W^2, valid for every ks2. Returns the admissible kw2
// values in descending order, each with the instantiated bounds. The upper
// bound combines the index test with the count of disjoint nodal curves
// (k of them need room in the Picard lattice next to K_W and D:
// k <= rho(W) - 2 = 8 - K_W^2 since p_g = q = 0). At the boundary
// k = rho - 2 the cited structure result leaves only W rational with k even
// or W minimal with kappa >= 0, so a boundary cell with k odd and
// K_W^2 < 0 is out.
fn numeric_kw2_range(ks2: i64, k: i64) -> Vec<(i64, Vec<String>)> {
    let dsq = 2 * ks2;
    let kwd = ks2 + 4 - k;
    let kv2 = ks2 - k;
    let hi = (kwd * kwd / dsq).min(8 - k);
    let mut out = Vec::new();
    for kw2 in (kv2..=hi).rev() {
        let boundary = kw2 == 8 - k;
        if boundary && k % 2 == 1 && kw2 < 0 {
            continue;
        }
        let mut notes = vec![
            format!("K_W^2 >= K_S^2 - k = {kv2}"),
            format!("index: K_W^2 * {dsq} <= (K_W.D)^2 = {}", kwd * kwd),
            format!("nodal curves: k = {k} <= rho(W) - 2 = 8 - K_W^2"),
        ];
        if boundary {
            notes.push(
                "boundary k = rho(W) - 2: W rational with k even, or minimal with kappa >= 0"
                    .to_string(),
            );
        }
        out.push((kw2, notes));
    }
    out
}

// Encoded conclusions of the K_S^2 = 7 case analysis: the class of W for
// each admissible K_W^2. The kw2 values themselves agree with
// numeric_kw2_range (checked in tests); only the Kodaira information is
// sharper than the numeric bounds.
fn k7_kodaira(k: i64, kw2: i64) -> Vec<KodairaClass> {
    match (k, kw2) {
        (5, 2) | (7, 1) => vec![KodairaClass::GeneralType {
            minimal: true,
            minimal_model_k2: None,
        }],
        (7, 0) => vec![
            KodairaClass::ProperlyElliptic { minimal: true },
            KodairaClass::GeneralType {
                minimal: false,
                minimal_model_k2: Some(1),
            },
        ],
        (9, -2) => vec![KodairaClass::unknown_at_most(1)],
        (11, -4) => vec![KodairaClass::Rational],
        _ => unreachable!("no encoded case for k = {k}, K_W^2 = {kw2}"),
    }
}

pub fn quotient_profile(ks2: i64, k: i64) -> Result<QuotientProfile, ProfileError> {
    check_ks2(ks2)?;
    if k < 4 {
        return Err(ProfileError::BadK {
            ks2,
            k,
            reason: "fewer than four isolated fixed points",
        });
    }
    if (ks2 + 4 - k) % 2 != 0 {
        return Err(ProfileError::BadK {
            ks2,
            k,
            reason: "k must have the parity of K_S^2",
        });
    }
    if k > ks2 + 4 {
        return Err(ProfileError::BadK {
            ks2,
            k,
            reason: "h^0(2K_W + L) would be negative",
        });
    }

    let dsq = 2 * ks2;
    let kwd = ks2 + 4 - k;
    let b0d = 2 * k - 8;
    let kv2 = ks2 - k;
    let h0 = kwd / 2;
    let h0_b0 = ks2 + 1 - h0;
    let numeric_only = ks2 != 7;

    let admissible = numeric_kw2_range(ks2, k)
        .into_iter()
        .flat_map(|(kw2, notes)| {
            let classes = if numeric_only {
                vec![KodairaClass::unknown_at_most(2)]
            } else {
                k7_kodaira(k, kw2)
            };
            classes.into_iter().map(move |kodaira| {
                let mut constrained_by = notes.clone();
                if !numeric_only {
                    constrained_by.push("class of W: encoded K^2 = 7 case analysis".to_string());
                }
                AdmissibleModel {
                    kw2,
                    kodaira,
                    kwl: h0 - kw2,
                    lsq: -2 - (h0 - kw2),
                    constrained_by,
                }
            })
        })
        .collect();

    Ok(QuotientProfile {
        ks2,
        k,
        dsq,
        kwd,
        b0d,
        kv2,
        h0,
        h0_b0,
        bicanonical_composed: is_bicanonical_composed(ks2, k),
        numeric_only,
        admissible,
    })
}

impl QuotientProfile {
    /// Distinct admissible `K_W^2` values, descending (a value may carry
    /// several Kodaira alternatives but is enumerated once).
    pub fn admissible_kw2(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.admissible.iter().map(|m| m.kw2).collect();
        v.dedup();
        v
    }
}
