//! Chern numbers of orbifold surfaces and of their associated stacks.
//!
//! `c1^2` of the stack comes from expanding `(K_X + Delta)^2`; `c2` comes from
//! the orbifold Gauss-Bonnet formula `int c_2 = sum chi(M_i) / m_i` over a
//! stratification by constant ramification order.

use serde::Serialize;
use thiserror::Error;

use crate::model::{AmbientSurfaceData, ChernNumbers, SmoothOrbifoldSurface};
use crate::rational::{q, Rational};

/// Largest multiplicity for which `(P^2, (1 - 1/m) C)` stays klt along cusps.
pub const MAX_KLT_MULTIPLICITY: i64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("empty stratification")]
    EmptyStratification,
    #[error("stratum {index} has non-positive order {order}")]
    NonPositiveOrder { index: usize, order: Rational },
    #[error("invalid multiplicity {0}: must be at least 2")]
    InvalidMultiplicity(i64),
    #[error("multiplicity {0} is outside the klt range 2..=5")]
    OutsideKltRange(i64),
    #[error("negative normalization genus {genus} for degree {degree} with {nodes} nodes and {cusps} cusps")]
    NegativeGenus {
        degree: i64,
        nodes: i64,
        cusps: i64,
        genus: i64,
    },
    #[error("invalid {name}: {value} (expected {expected})")]
    InvalidParameter {
        name: &'static str,
        value: i64,
        expected: &'static str,
    },
}

/// Log Chern numbers `(log c1^2, log c2)` of `(X, sum Ci)` from the Chern
/// numbers of `X`, assuming the `Ci` are smooth and cross normally.
pub fn log_chern_from_ambient(amb: &AmbientSurfaceData) -> (Rational, Rational) {
    let m = amb.intersections();
    let comps = amb.components();
    // (K + sum C)^2 = K^2 + 2 sum K.Ci + (sum C)^2
    let k_dot: i64 = (0..comps.len()).map(|i| amb.canonical_dot(i)).sum();
    let c1_sq = amb.c1_sq() + Rational::from(2 * k_dot + m.total_square());
    // chi(union Ci) = sum chi(Ci) - #(pairwise intersection points)
    let chi_union: i64 = comps.iter().map(|c| c.euler_char()).sum::<i64>() - m.off_diagonal_upper_sum();
    let c2 = amb.c2() - Rational::from(chi_union);
    (c1_sq, c2)
}

/// Re-expresses ambient data as a [`SmoothOrbifoldSurface`] over its log
/// Chern numbers.
pub fn log_surface_from_ambient(amb: &AmbientSurfaceData) -> SmoothOrbifoldSurface {
    let (c1_sq, c2) = log_chern_from_ambient(amb);
    SmoothOrbifoldSurface::new(c1_sq, c2, amb.components().to_vec(), amb.intersections().clone())
        .expect("ambient data was validated with the same components and matrix")
}

/// `sum_j (1/mj) sum_{i != j} Ci.Cj`.
fn weighted_crossings(s: &SmoothOrbifoldSurface) -> Rational {
    let m = s.intersections();
    let comps = s.components();
    let n = comps.len();
    (0..n)
        .map(|j| {
            let crossings: i64 = (0..n).filter(|&i| i != j).map(|i| m.get(i, j)).sum();
            comps[j].multiplicity.reciprocal() * Rational::from(crossings)
        })
        .sum()
}

/// `sum_i (1/mi)(2gi - 2)`.
fn weighted_genus_term(s: &SmoothOrbifoldSurface) -> Rational {
    s.components()
        .iter()
        .map(|c| c.multiplicity.reciprocal() * Rational::from(c.two_g_minus_two()))
        .sum()
}

/// `sum_{i<j} Ci.Cj / (mi mj)`.
fn mixed_pair_term(s: &SmoothOrbifoldSurface) -> Rational {
    let m = s.intersections();
    let comps = s.components();
    let n = comps.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = comps[i].multiplicity.reciprocal() * comps[j].multiplicity.reciprocal();
            acc += w * Rational::from(m.get(i, j));
        }
    }
    acc
}

/// `sum_i Ci^2 / mi^2`.
fn self_term(s: &SmoothOrbifoldSurface) -> Rational {
    let m = s.intersections();
    s.components()
        .iter()
        .enumerate()
        .map(|(i, c)| c.multiplicity.reciprocal().pow(2) * Rational::from(m.get(i, i)))
        .sum()
}

pub fn stack_c1_sq(s: &SmoothOrbifoldSurface) -> Rational {
    let two = Rational::from(2);
    s.log_c1_sq() - &two * weighted_genus_term(s) + self_term(s) + &two * mixed_pair_term(s)
        - two * weighted_crossings(s)
}

pub fn stack_c2(s: &SmoothOrbifoldSurface) -> Rational {
    s.log_c2() - weighted_genus_term(s) - weighted_crossings(s) + mixed_pair_term(s)
}

pub fn stack_chern(s: &SmoothOrbifoldSurface) -> ChernNumbers {
    ChernNumbers::new(stack_c1_sq(s), stack_c2(s))
}

/// A stratum of constant ramification order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub euler_char: i64,
    pub order: Rational,
}

impl Stratum {
    pub fn new(euler_char: i64, order: impl Into<Rational>) -> Self {
        Stratum {
            euler_char,
            order: order.into(),
        }
    }
}

pub fn gauss_bonnet(strata: &[Stratum]) -> Result<Rational, ChernError> {
    if strata.is_empty() {
        return Err(ChernError::EmptyStratification);
    }
    strata
        .iter()
        .enumerate()
        .map(|(index, s)| {
            if !s.order.is_positive() {
                return Err(ChernError::NonPositiveOrder {
                    index,
                    order: s.order.clone(),
                });
            }
            Ok(Rational::from(s.euler_char) / &s.order)
        })
        .sum()
}

/// Order of the local orbifold group at a node: `m^2`.
pub fn node_order(m: i64) -> Result<i64, ChernError> {
    if m < 2 {
        return Err(ChernError::InvalidMultiplicity(m));
    }
    Ok(m * m)
}

/// Order of the local orbifold group at a cusp: `(2/3)(1/m - 1/6)^-2`.
///
/// Only defined in the klt range `2 <= m <= 5`; the formula has a pole at 6.
pub fn cusp_order(m: i64) -> Result<Rational, ChernError> {
    if !(2..=MAX_KLT_MULTIPLICITY).contains(&m) {
        return Err(ChernError::OutsideKltRange(m));
    }
    let gap = q(1, m) - q(1, 6);
    Ok(q(2, 3) / gap.pow(2))
}

/// Genus and Euler characteristic of the normalization of a plane curve of
/// degree `d` with `n` nodes and `c` cusps.
pub fn normalization_genus(d: i64, n: i64, c: i64) -> Result<(i64, i64), ChernError> {
    let genus = (d - 1) * (d - 2) / 2 - n - c;
    if genus < 0 {
        return Err(ChernError::NegativeGenus {
            degree: d,
            nodes: n,
            cusps: c,
            genus,
        });
    }
    Ok((genus, 2 - 2 * genus))
}

/// Plane curve with only nodes and cusps, weighted by multiplicity `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlaneNodeCuspCurve {
    degree: i64,
    nodes: i64,
    cusps: i64,
    multiplicity: i64,
}

impl PlaneNodeCuspCurve {
    pub fn new(degree: i64, nodes: i64, cusps: i64, multiplicity: i64) -> Result<Self, ChernError> {
        if degree < 4 {
            return Err(ChernError::InvalidParameter {
                name: "degree",
                value: degree,
                expected: ">= 4",
            });
        }
        for (name, value) in [("nodes", nodes), ("cusps", cusps)] {
            if value < 0 {
                return Err(ChernError::InvalidParameter {
                    name,
                    value,
                    expected: ">= 0",
                });
            }
        }
        if !(2..=MAX_KLT_MULTIPLICITY).contains(&multiplicity) {
            return Err(ChernError::OutsideKltRange(multiplicity));
        }
        normalization_genus(degree, nodes, cusps)?;
        Ok(PlaneNodeCuspCurve {
            degree,
            nodes,
            cusps,
            multiplicity,
        })
    }

    /// Curve with the multiplicity fixed at 5.
    pub fn klt_default(degree: i64, nodes: i64, cusps: i64) -> Result<Self, ChernError> {
        Self::new(degree, nodes, cusps, MAX_KLT_MULTIPLICITY)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nodes(&self) -> i64 {
        self.nodes
    }

    pub fn cusps(&self) -> i64 {
        self.cusps
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    /// Strata of `P^2`: the complement of `C`, the smooth locus of `C`, the
    /// nodes and the cusps.
    pub fn strata(&self) -> Vec<Stratum> {
        let (_, chi_norm) =
            normalization_genus(self.degree, self.nodes, self.cusps).expect("validated at construction");
        let m = self.multiplicity;
        let chi_smooth_locus = chi_norm - 2 * self.nodes - self.cusps;
        let chi_curve = chi_smooth_locus + self.nodes + self.cusps;
        vec![
            Stratum::new(3 - chi_curve, 1),
            Stratum::new(chi_smooth_locus, m),
            Stratum::new(self.nodes, node_order(m).expect("m >= 2")),
            Stratum::new(self.cusps, cusp_order(m).expect("m in klt range")),
        ]
    }
}

pub fn plane_nc_curve_chern(cfg: &PlaneNodeCuspCurve) -> ChernNumbers {
    // (K_{P^2} + (1 - 1/m) C)^2 with K = -3H, C = dH
    let k_plus_delta =
        Rational::from(-3) + (Rational::one() - q(1, cfg.multiplicity)) * Rational::from(cfg.degree);
    let c2 = gauss_bonnet(&cfg.strata()).expect("nonempty strata with positive orders");
    ChernNumbers::new(k_plus_delta.pow(2), c2)
}

/// Nodal surface of degree `d` in `P^3` with `l` ordinary double points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodalSurface {
    degree: i64,
    nodes: i64,
}

impl NodalSurface {
    pub fn new(degree: i64, nodes: i64) -> Result<Self, ChernError> {
        if degree < 5 {
            return Err(ChernError::InvalidParameter {
                name: "degree",
                value: degree,
                expected: ">= 5 (general type)",
            });
        }
        if nodes < 0 {
            return Err(ChernError::InvalidParameter {
                name: "nodes",
                value: nodes,
                expected: ">= 0",
            });
        }
        Ok(NodalSurface { degree, nodes })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nodes(&self) -> i64 {
        self.nodes
    }

    /// `X \ Sing(X)` with trivial group, and the `l` nodes with group of
    /// order 2. The smooth locus has the Euler characteristic of the minimal
    /// resolution minus the `l` exceptional rational curves.
    pub fn strata(&self) -> Vec<Stratum> {
        let d = self.degree;
        let smooth_c2 = d * (d * d - 4 * d + 6);
        vec![
            Stratum::new(smooth_c2 - 2 * self.nodes, 1),
            Stratum::new(self.nodes, 2),
        ]
    }
}

pub fn nodal_surface_chern(cfg: &NodalSurface) -> ChernNumbers {
    let d = cfg.degree;
    let c1_sq = Rational::from(d * (d - 4) * (d - 4));
    let c2 = gauss_bonnet(&cfg.strata()).expect("nonempty strata with positive orders");
    ChernNumbers::new(c1_sq, c2)
}
