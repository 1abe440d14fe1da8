//! Data model for orbifold surface configurations.
//!
//! Intersection numbers are supplied by the caller; nothing geometric is
//! inferred. Construction validates the shape of the data, so every
//! [`SmoothOrbifoldSurface`] handed to the calculators is consistent.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rational::{Multiplicity, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// `row` is `None` when the row count itself is wrong.
    #[error("dimension mismatch: expected {expected} entries, found {found}{}", row_suffix(.row))]
    DimensionMismatch {
        expected: usize,
        row: Option<usize>,
        found: usize,
    },
    #[error("intersection matrix is not symmetric at ({i}, {j}): {a} != {b}")]
    AsymmetricMatrix { i: usize, j: usize, a: i64, b: i64 },
    #[error("negative intersection number C{i}.C{j} = {value} between distinct components")]
    NegativeOffDiagonal { i: usize, j: usize, value: i64 },
}

fn row_suffix(row: &Option<usize>) -> String {
    match row {
        Some(r) => format!(" in intersection row {r}"),
        None => " intersection rows".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveComponent {
    pub label: String,
    pub genus: u32,
    pub multiplicity: Multiplicity,
}

impl CurveComponent {
    pub fn new(label: impl Into<String>, genus: u32, multiplicity: Multiplicity) -> Self {
        CurveComponent {
            label: label.into(),
            genus,
            multiplicity,
        }
    }

    /// `2g - 2`, minus the topological Euler characteristic.
    pub fn two_g_minus_two(&self) -> i64 {
        2 * i64::from(self.genus) - 2
    }

    /// Topological Euler characteristic `2 - 2g`.
    pub fn euler_char(&self) -> i64 {
        2 - 2 * i64::from(self.genus)
    }
}

/// Symmetric matrix of intersection numbers `Ci.Cj`; the diagonal holds the
/// self-intersections `Ci^2`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct IntersectionMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    /// Row-major entries. Shape and symmetry are checked when the matrix is
    /// attached to a surface.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        IntersectionMatrix { rows }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `(sum_i Ci)^2 = sum_{i,j} Ci.Cj`.
    pub fn total_square(&self) -> i64 {
        self.rows.iter().flatten().sum()
    }

    /// `sum_{i<j} Ci.Cj`.
    pub fn off_diagonal_upper_sum(&self) -> i64 {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .sum()
    }

    fn check(&self, components: usize) -> Result<(), ModelError> {
        let n = self.rows.len();
        if n != components {
            return Err(ModelError::DimensionMismatch {
                expected: components,
                row: None,
                found: n,
            });
        }
        for (row, entries) in self.rows.iter().enumerate() {
            if entries.len() != components {
                return Err(ModelError::DimensionMismatch {
                    expected: components,
                    row: Some(row),
                    found: entries.len(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (self.get(i, j), self.get(j, i));
                if a != b {
                    return Err(ModelError::AsymmetricMatrix { i, j, a, b });
                }
                if a < 0 {
                    return Err(ModelError::NegativeOffDiagonal { i, j, value: a });
                }
            }
        }
        Ok(())
    }
}

/// A smooth orbifold surface `(X, sum (1 - 1/mi) Ci)` described through the
/// logarithmic Chern numbers of `(X, sum Ci)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothOrbifoldSurface {
    log_c1_sq: Rational,
    log_c2: Rational,
    components: Vec<CurveComponent>,
    intersections: IntersectionMatrix,
}

impl SmoothOrbifoldSurface {
    pub fn new(
        log_c1_sq: Rational,
        log_c2: Rational,
        components: Vec<CurveComponent>,
        intersections: IntersectionMatrix,
    ) -> Result<Self, ModelError> {
        validate_surface(SmoothOrbifoldSurface {
            log_c1_sq,
            log_c2,
            components,
            intersections,
        })
    }

    pub fn log_c1_sq(&self) -> &Rational {
        &self.log_c1_sq
    }

    pub fn log_c2(&self) -> &Rational {
        &self.log_c2
    }

    pub fn components(&self) -> &[CurveComponent] {
        &self.components
    }

    pub fn intersections(&self) -> &IntersectionMatrix {
        &self.intersections
    }

    pub fn has_infinite_multiplicity(&self) -> bool {
        self.components.iter().any(|c| c.multiplicity.is_infinite())
    }
}

/// Checks the shape invariants and hands the surface back unchanged.
pub fn validate_surface(cfg: SmoothOrbifoldSurface) -> Result<SmoothOrbifoldSurface, ModelError> {
    cfg.intersections.check(cfg.components.len())?;
    Ok(cfg)
}

/// The same boundary data over an ambient surface given by its ordinary Chern
/// numbers `c1^2(X)`, `c2(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbientSurfaceData {
    c1_sq: Rational,
    c2: Rational,
    components: Vec<CurveComponent>,
    intersections: IntersectionMatrix,
}

impl AmbientSurfaceData {
    pub fn new(
        c1_sq: Rational,
        c2: Rational,
        components: Vec<CurveComponent>,
        intersections: IntersectionMatrix,
    ) -> Result<Self, ModelError> {
        intersections.check(components.len())?;
        Ok(AmbientSurfaceData {
            c1_sq,
            c2,
            components,
            intersections,
        })
    }

    pub fn c1_sq(&self) -> &Rational {
        &self.c1_sq
    }

    pub fn c2(&self) -> &Rational {
        &self.c2
    }

    pub fn components(&self) -> &[CurveComponent] {
        &self.components
    }

    pub fn intersections(&self) -> &IntersectionMatrix {
        &self.intersections
    }

    pub fn has_infinite_multiplicity(&self) -> bool {
        self.components.iter().any(|c| c.multiplicity.is_infinite())
    }

    /// `K_X . Ci` by adjunction: `2g - 2 - Ci^2`.
    pub fn canonical_dot(&self, i: usize) -> i64 {
        self.components[i].two_g_minus_two() - self.intersections.get(i, i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernNumbers {
    pub c1_sq: Rational,
    pub c2: Rational,
}

impl ChernNumbers {
    pub fn new(c1_sq: Rational, c2: Rational) -> Self {
        ChernNumbers { c1_sq, c2 }
    }

    /// `c1^2 - c2`.
    pub fn difference(&self) -> Rational {
        &self.c1_sq - &self.c2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremTag {
    TheoremA,
    RemarkForm,
    PlanePair,
    NodesCusps,
    NodalSurface,
    Nevanlinna,
    BogomolovStack,
    Jet2,
    Jet3,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 9] = [
        TheoremTag::TheoremA,
        TheoremTag::RemarkForm,
        TheoremTag::PlanePair,
        TheoremTag::NodesCusps,
        TheoremTag::NodalSurface,
        TheoremTag::Nevanlinna,
        TheoremTag::BogomolovStack,
        TheoremTag::Jet2,
        TheoremTag::Jet3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremTag::TheoremA => "TheoremA",
            TheoremTag::RemarkForm => "RemarkForm",
            TheoremTag::PlanePair => "PlanePair",
            TheoremTag::NodesCusps => "NodesCusps",
            TheoremTag::NodalSurface => "NodalSurface",
            TheoremTag::Nevanlinna => "Nevanlinna",
            TheoremTag::BogomolovStack => "BogomolovStack",
            TheoremTag::Jet2 => "Jet2",
            TheoremTag::Jet3 => "Jet3",
        }
    }

    /// Statement of the criterion the tag stands for.
    pub fn citation(&self) -> &'static str {
        match self {
            TheoremTag::TheoremA => {
                "Theorem A: log c1^2 - log c2 - sum_i (2g_i - 2 + sum_{j!=i} C_i.C_j)/m_i + sum_{i<=j} C_i.C_j/(m_i m_j) > 0 implies algebraic degeneracy of orbifold entire curves"
            }
            TheoremTag::RemarkForm => {
                "Theorem A, ambient form: d1^2 - d2 + 2 K_X.Delta + Delta^2 + chi(Delta) > 0"
            }
            TheoremTag::PlanePair => {
                "two smooth plane curves of degrees d1, d2 >= 4: deg(Delta)^2 - deg(Delta)(d+3) + d1 d2 (1 - 1/(m1 m2)) + 6 > 0"
            }
            TheoremTag::NodesCusps => {
                "Theorem B: plane curve of degree d with n nodes and c cusps: -d^2 - 15d + 75/2 + (1079/96)c + 6n > 0"
            }
            TheoremTag::NodalSurface => {
                "nodal surface of degree d in P^3 with l nodes: l > (8/3)(d^2 - 5d/2)"
            }
            TheoremTag::Nevanlinna => {
                "Nevanlinna: entire curves in P^1 ramified over a_i with multiplicity m_i are constant if sum (1 - 1/m_i) > 2"
            }
            TheoremTag::BogomolovStack => {
                "klt orbifold surface: c1^2 - c2 of the associated stack > 0"
            }
            TheoremTag::Jet2 => {
                "nodal surface, 2-jet differentials: 15l/2 + 2d^3 - 36d^2 + 82d > 0"
            }
            TheoremTag::Jet3 => {
                "Theorem C, nodal surface, 3-jet differentials: 147l/2 + 36d^3 - 484d^2 + 1066d > 0"
            }
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        TheoremTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str().to_ascii_lowercase() == key)
            .ok_or_else(|| format!("unknown criterion `{s}`"))
    }
}

/// Exact left-hand side of a criterion together with its strict-positivity
/// verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    theorem_tag: TheoremTag,
    lhs: Rational,
    holds: bool,
}

impl CriterionVerdict {
    pub fn new(theorem_tag: TheoremTag, lhs: Rational) -> Self {
        let holds = lhs.is_positive();
        CriterionVerdict {
            theorem_tag,
            lhs,
            holds,
        }
    }

    pub fn tag(&self) -> TheoremTag {
        self.theorem_tag
    }

    pub fn lhs(&self) -> &Rational {
        &self.lhs
    }

    pub fn holds(&self) -> bool {
        self.holds
    }
}
