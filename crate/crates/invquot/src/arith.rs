//! Exact integer arithmetic for curve classes on the quotient surface.
//!
//! Everything is adjunction and index bookkeeping over `i64`. The numbers in
//! scope are tiny, but overflow must surface as an error, never wrap, so all
//! derived quantities go through checked operations.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("selfint {selfint} and ddeg {ddeg}: selfint + ddeg must be divisible by 4")]
    Parity { selfint: i64, ddeg: i64 },
    #[error("degree against D must be even and nonnegative, got {0}")]
    BadDegree(i64),
    #[error("branch intersection must be even and nonnegative, got {0}")]
    BadBranchMeet(i64),
    #[error("index test needs D^2 > 0, got {0}")]
    NonpositiveDsq(i64),
    #[error("arithmetic genus must be nonnegative, got {0}")]
    NegativeGenus(i64),
    #[error("a component of degree zero must be a (0,-4) curve, got ({pa},{selfint})")]
    DegreeZero { pa: i64, selfint: i64 },
    #[error("contraction multiplicity must be nonnegative, got {0}")]
    NegativeBeta(i64),
}

fn cadd(a: i64, b: i64, what: &'static str) -> Result<i64, ArithError> {
    a.checked_add(b).ok_or(ArithError::Overflow(what))
}

fn csub(a: i64, b: i64, what: &'static str) -> Result<i64, ArithError> {
    a.checked_sub(b).ok_or(ArithError::Overflow(what))
}

fn cmul(a: i64, b: i64, what: &'static str) -> Result<i64, ArithError> {
    a.checked_mul(b).ok_or(ArithError::Overflow(what))
}

/// A curve recorded by the `(p_a, self-intersection)` shorthand used in all
/// the classification tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CurveType {
    pub pa: i64,
    pub selfint: i64,
}

impl CurveType {
    pub fn new(pa: i64, selfint: i64) -> Self {
        CurveType { pa, selfint }
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pa, self.selfint)
    }
}

/// `K . Gamma = 2 p_a - 2 - Gamma^2` by adjunction.
pub fn adjunction_degree(pa: i64, selfint: i64) -> Result<i64, ArithError> {
    let two_pa = cmul(2, pa, "adjunction degree")?;
    csub(
        csub(two_pa, 2, "adjunction degree")?,
        selfint,
        "adjunction degree",
    )
}

/// Exact index test: a class with `Gamma . D = ddeg` next to `D` with
/// `D^2 = dsq > 0` must satisfy `Gamma^2 . D^2 <= (Gamma . D)^2`.
/// No rounding, no floats; equality is admissible here (parity may still
/// reject the class later).
pub fn hodge_admissible(ddeg: i64, selfint: i64, dsq: i64) -> Result<bool, ArithError> {
    if dsq <= 0 {
        return Err(ArithError::NonpositiveDsq(dsq));
    }
    if ddeg < 0 {
        return Err(ArithError::BadDegree(ddeg));
    }
    let lhs = cmul(selfint, dsq, "index test")?;
    let rhs = cmul(ddeg, ddeg, "index test")?;
    Ok(lhs <= rhs)
}

/// Genus of one half of the pulled-back branch component:
/// `1 + (selfint + ddeg) / 4`. The sum must be divisible by 4; an odd sum
/// means the class cannot appear in a branch divisor at all.
pub fn halfbranch_genus(selfint: i64, ddeg: i64) -> Result<i64, ArithError> {
    let s = cadd(selfint, ddeg, "halfbranch genus")?;
    if s.rem_euclid(4) != 0 {
        return Err(ArithError::Parity { selfint, ddeg });
    }
    cadd(1, s / 4, "halfbranch genus")
}

/// Invariants of the preimage of a curve under a double cover whose branch
/// divisor meets it transversally in `branch_meet` points (necessarily even
/// for an irreducible preimage): the self-intersection doubles and the genus
/// follows the ramified Hurwitz count
/// `2 pa' - 2 = 2 (2 pa - 2) + branch_meet`.
pub fn double_cover_pullback(
    base_pa: i64,
    base_selfint: i64,
    branch_meet: i64,
) -> Result<CurveType, ArithError> {
    if branch_meet < 0 || branch_meet % 2 != 0 {
        return Err(ArithError::BadBranchMeet(branch_meet));
    }
    let two_pa = cmul(2, base_pa, "double cover pullback")?;
    let pa = cadd(
        csub(two_pa, 1, "double cover pullback")?,
        branch_meet / 2,
        "double cover pullback",
    )?;
    let selfint = cmul(2, base_selfint, "double cover pullback")?;
    Ok(CurveType { pa, selfint })
}

/// Image of a curve class under the contraction onto the nodal model, with
/// `beta` half its adjunction degree on the source:
/// `pa' = pa + beta (beta - 1)`, `selfint' = selfint + 2 beta^2`.
/// The adjunction degree drops by exactly `2 beta`, so a class with
/// `K . Gamma = 2 beta` lands on a numerically trivial canonical class.
pub fn blowdown_pushforward(c: CurveType, beta: i64) -> Result<CurveType, ArithError> {
    if beta < 0 {
        return Err(ArithError::NegativeBeta(beta));
    }
    let pa = cadd(
        c.pa,
        cmul(beta, beta - 1, "pushforward genus")?,
        "pushforward genus",
    )?;
    let bsq = cmul(beta, beta, "pushforward selfint")?;
    let selfint = cadd(
        c.selfint,
        cmul(2, bsq, "pushforward selfint")?,
        "pushforward selfint",
    )?;
    Ok(CurveType { pa, selfint })
}

/// A component of the branch divisor: arithmetic genus, self-intersection,
/// and degree against the pulled-back class `D`.
///
/// Valid classes satisfy `pa >= 0`, `ddeg >= 0` even,
/// `selfint + ddeg = 0 (mod 4)`, and a degree-zero component is exactly a
/// `(0,-4)` curve. Construction also proves the adjunction degree and the
/// halfbranch genus computable, so the accessors below are total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CurveClass {
    pa: i64,
    selfint: i64,
    ddeg: i64,
}

impl CurveClass {
    pub fn new(pa: i64, selfint: i64, ddeg: i64) -> Result<Self, ArithError> {
        if pa < 0 {
            return Err(ArithError::NegativeGenus(pa));
        }
        if ddeg < 0 || ddeg % 2 != 0 {
            return Err(ArithError::BadDegree(ddeg));
        }
        if cadd(selfint, ddeg, "class parity")?.rem_euclid(4) != 0 {
            return Err(ArithError::Parity { selfint, ddeg });
        }
        if ddeg == 0 && (pa, selfint) != (0, -4) {
            return Err(ArithError::DegreeZero { pa, selfint });
        }
        adjunction_degree(pa, selfint)?;
        halfbranch_genus(selfint, ddeg)?;
        Ok(CurveClass { pa, selfint, ddeg })
    }

    /// Class with the genus forced by the smooth-branch identification.
    pub fn branch_component(selfint: i64, ddeg: i64) -> Result<Self, ArithError> {
        let pa = halfbranch_genus(selfint, ddeg)?;
        Self::new(pa, selfint, ddeg)
    }

    /// Recover the full class from the table shorthand; on branch components
    /// the degree is determined: `ddeg = 4 (pa - 1) - selfint`.
    pub fn from_curve_type(c: CurveType) -> Result<Self, ArithError> {
        let ddeg = csub(cmul(4, csub(c.pa, 1, "ddeg")?, "ddeg")?, c.selfint, "ddeg")?;
        Self::new(c.pa, c.selfint, ddeg)
    }

    pub fn pa(&self) -> i64 {
        self.pa
    }

    pub fn selfint(&self) -> i64 {
        self.selfint
    }

    pub fn ddeg(&self) -> i64 {
        self.ddeg
    }

    pub fn curve_type(&self) -> CurveType {
        CurveType {
            pa: self.pa,
            selfint: self.selfint,
        }
    }

    /// `K_W . Gamma`, always even and positive on enumerated components.
    pub fn kdeg(&self) -> i64 {
        2 * self.pa - 2 - self.selfint
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pa, self.selfint)
    }
}

// Canonical table order: descending ddeg, then descending selfint.
impl Ord for CurveClass {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .ddeg
            .cmp(&self.ddeg)
            .then(other.selfint.cmp(&self.selfint))
            .then(other.pa.cmp(&self.pa))
    }
}

impl PartialOrd for CurveClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
