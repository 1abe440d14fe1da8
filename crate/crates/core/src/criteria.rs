//! Positivity criteria. Each evaluator returns the exact left-hand side and a
//! strict verdict (`lhs > 0`); a zero left-hand side always fails.

use serde::Serialize;
use thiserror::Error;

use crate::chern::{
    log_surface_from_ambient, nodal_surface_chern, plane_nc_curve_chern, ChernError, NodalSurface,
    PlaneNodeCuspCurve,
};
use crate::model::{
    AmbientSurfaceData, ChernNumbers, CriterionVerdict, CurveComponent, IntersectionMatrix,
    SmoothOrbifoldSurface, TheoremTag,
};
use crate::rational::{q, Multiplicity, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("unsupported jet order {0}: only 2 and 3 are available")]
    UnsupportedJetOrder(u32),
    #[error("empty multiplicity list")]
    EmptyMultiplicities,
    #[error("invalid {name}: {value} (expected {expected})")]
    InvalidParameter {
        name: &'static str,
        value: i64,
        expected: &'static str,
    },
    #[error(transparent)]
    Chern(#[from] ChernError),
}

/// Multiplicities `m_i` of the points `a_i` on `P^1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NevanlinnaConfig {
    multiplicities: Vec<Multiplicity>,
}

impl NevanlinnaConfig {
    pub fn new(multiplicities: Vec<Multiplicity>) -> Result<Self, CriteriaError> {
        if multiplicities.is_empty() {
            return Err(CriteriaError::EmptyMultiplicities);
        }
        Ok(NevanlinnaConfig { multiplicities })
    }

    pub fn multiplicities(&self) -> &[Multiplicity] {
        &self.multiplicities
    }
}

/// Two smooth plane curves of degrees `d1, d2 >= 4` crossing normally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlanePairConfig {
    d1: i64,
    d2: i64,
    m1: Multiplicity,
    m2: Multiplicity,
}

impl PlanePairConfig {
    pub fn new(d1: i64, d2: i64, m1: Multiplicity, m2: Multiplicity) -> Result<Self, CriteriaError> {
        for (name, value) in [("d1", d1), ("d2", d2)] {
            if value < 4 {
                return Err(CriteriaError::InvalidParameter {
                    name,
                    value,
                    expected: ">= 4",
                });
            }
        }
        Ok(PlanePairConfig { d1, d2, m1, m2 })
    }

    pub fn degrees(&self) -> (i64, i64) {
        (self.d1, self.d2)
    }

    pub fn multiplicities(&self) -> (Multiplicity, Multiplicity) {
        (self.m1, self.m2)
    }

    /// The configuration as boundary data on `P^2` (`c1^2 = 9`, `c2 = 3`).
    pub fn ambient(&self) -> AmbientSurfaceData {
        let genus = |d: i64| ((d - 1) * (d - 2) / 2) as u32;
        AmbientSurfaceData::new(
            9.into(),
            3.into(),
            vec![
                CurveComponent::new("C1", genus(self.d1), self.m1),
                CurveComponent::new("C2", genus(self.d2), self.m2),
            ],
            IntersectionMatrix::from_rows(vec![
                vec![self.d1 * self.d1, self.d1 * self.d2],
                vec![self.d1 * self.d2, self.d2 * self.d2],
            ]),
        )
        .expect("symmetric nonnegative 2x2 matrix")
    }

    pub fn surface(&self) -> SmoothOrbifoldSurface {
        log_surface_from_ambient(&self.ambient())
    }
}

/// Theorem A left-hand side for a smooth orbifold surface.
pub fn theorem_a_lhs(s: &SmoothOrbifoldSurface) -> CriterionVerdict {
    let comps = s.components();
    let m = s.intersections();
    let n = comps.len();
    let mut lhs = s.log_c1_sq() - s.log_c2();
    for (i, comp) in comps.iter().enumerate() {
        let crossings: i64 = (0..n).filter(|&j| j != i).map(|j| m.get(i, j)).sum();
        let bracket = comp.two_g_minus_two() + crossings;
        lhs -= comp.multiplicity.reciprocal() * Rational::from(bracket);
    }
    // sum over i <= j, diagonal included
    for i in 0..n {
        for j in i..n {
            let w = comps[i].multiplicity.reciprocal() * comps[j].multiplicity.reciprocal();
            lhs += w * Rational::from(m.get(i, j));
        }
    }
    CriterionVerdict::new(TheoremTag::TheoremA, lhs)
}

/// The same criterion written with the Chern numbers of the ambient surface:
/// `d1^2 - d2 + 2 K.Delta + Delta^2 + chi(Delta)`.
pub fn remark_form_lhs(amb: &AmbientSurfaceData) -> CriterionVerdict {
    let comps = amb.components();
    let m = amb.intersections();
    let n = comps.len();
    let coeff: Vec<Rational> = comps.iter().map(|c| c.multiplicity.coefficient()).collect();

    let k_delta: Rational = (0..n)
        .map(|i| &coeff[i] * Rational::from(amb.canonical_dot(i)))
        .sum();
    let mut delta_sq = Rational::zero();
    let mut chi_delta: Rational = (0..n)
        .map(|i| &coeff[i] * Rational::from(comps[i].euler_char()))
        .sum();
    for i in 0..n {
        for j in 0..n {
            let term = &coeff[i] * &coeff[j] * Rational::from(m.get(i, j));
            if j > i {
                chi_delta -= &term;
            }
            delta_sq += term;
        }
    }
    let lhs = amb.c1_sq() - amb.c2() + Rational::from(2) * k_delta + delta_sq + chi_delta;
    CriterionVerdict::new(TheoremTag::RemarkForm, lhs)
}

pub fn bogomolov_stack(ch: &ChernNumbers) -> CriterionVerdict {
    CriterionVerdict::new(TheoremTag::BogomolovStack, ch.difference())
}

/// `deg(Delta)^2 - deg(Delta)(d + 3) + d1 d2 (1 - 1/(m1 m2)) + 6` with
/// `deg(Delta) = (1 - 1/m1) d1 + (1 - 1/m2) d2`, `d = d1 + d2`.
pub fn plane_pair_lhs(cfg: &PlanePairConfig) -> CriterionVerdict {
    let (d1, d2) = (Rational::from(cfg.d1), Rational::from(cfg.d2));
    let deg_delta = cfg.m1.coefficient() * &d1 + cfg.m2.coefficient() * &d2;
    let d = Rational::from(cfg.d1 + cfg.d2);
    let inv_prod = cfg.m1.reciprocal() * cfg.m2.reciprocal();
    let lhs = deg_delta.pow(2) - &deg_delta * (d + Rational::from(3))
        + d1 * d2 * (Rational::one() - inv_prod)
        + Rational::from(6);
    CriterionVerdict::new(TheoremTag::PlanePair, lhs)
}

/// `-d^2 - 15d + 75/2 + (1079/96)c + 6n`, the multiplicity-5 criterion for a
/// plane curve with `n` nodes and `c` cusps.
pub fn nodes_cusps_lhs(d: i64, n: i64, c: i64) -> Result<CriterionVerdict, CriteriaError> {
    PlaneNodeCuspCurve::klt_default(d, n, c)?;
    let lhs =
        Rational::from(-d * d - 15 * d) + q(75, 2) + q(1079, 96) * Rational::from(c) + Rational::from(6 * n);
    Ok(CriterionVerdict::new(TheoremTag::NodesCusps, lhs))
}

/// `(3/2)(l - (8/3)(d^2 - 5d/2))`, which equals `c1^2 - c2` of the stack.
pub fn nodal_surface_lhs(d: i64, l: i64) -> Result<CriterionVerdict, CriteriaError> {
    NodalSurface::new(d, l)?;
    let dr = Rational::from(d);
    let threshold = q(8, 3) * (&dr * &dr - q(5, 2) * dr);
    let lhs = q(3, 2) * (Rational::from(l) - threshold);
    Ok(CriterionVerdict::new(TheoremTag::NodalSurface, lhs))
}

/// Smallest integer node count satisfying the strict nodal-surface criterion
/// in degree `d`.
pub fn nodal_surface_min_nodes(d: i64) -> Rational {
    let dr = Rational::from(d);
    let threshold = q(8, 3) * (&dr * &dr - q(5, 2) * dr);
    Rational::from(threshold.next_integer_above())
}

/// `sum (1 - 1/m_i) - 2`.
pub fn nevanlinna_excess(cfg: &NevanlinnaConfig) -> CriterionVerdict {
    let lhs = cfg
        .multiplicities
        .iter()
        .map(Multiplicity::coefficient)
        .sum::<Rational>()
        - Rational::from(2);
    CriterionVerdict::new(TheoremTag::Nevanlinna, lhs)
}

/// Linear form `alpha c1^2 + beta c2` governing the top-degree growth of the
/// Euler characteristic of order-`k` jet differentials, with the positive
/// normalization `chi ~ form * N^(2k+1) / normalization`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JetForm {
    pub order: u32,
    pub alpha: i64,
    pub beta: i64,
    pub normalization: u64,
}

pub const JET2_FORM: JetForm = JetForm {
    order: 2,
    alpha: 7,
    beta: -5,
    normalization: 1920,
};

pub const JET3_FORM: JetForm = JetForm {
    order: 3,
    alpha: 85,
    beta: -49,
    normalization: 6_531_840,
};

pub fn jet_form(k: u32) -> Result<JetForm, CriteriaError> {
    match k {
        2 => Ok(JET2_FORM),
        3 => Ok(JET3_FORM),
        other => Err(CriteriaError::UnsupportedJetOrder(other)),
    }
}

impl JetForm {
    pub fn tag(&self) -> TheoremTag {
        if self.order == 2 {
            TheoremTag::Jet2
        } else {
            TheoremTag::Jet3
        }
    }

    pub fn evaluate(&self, ch: &ChernNumbers) -> Rational {
        Rational::from(self.alpha) * &ch.c1_sq + Rational::from(self.beta) * &ch.c2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetVerdict {
    pub verdict: CriterionVerdict,
    /// Positive denominator of the leading term; the sign of the verdict does
    /// not depend on it.
    pub normalization: u64,
}

/// Leading Riemann-Roch coefficient for `k`-jet differentials on a nodal
/// surface of degree `d` with `l` nodes.
pub fn jet_h0_coefficient(k: u32, d: i64, l: i64) -> Result<JetVerdict, CriteriaError> {
    let form = jet_form(k)?;
    let surface = NodalSurface::new(d, l)?;
    let lhs = form.evaluate(&nodal_surface_chern(&surface));
    Ok(JetVerdict {
        verdict: CriterionVerdict::new(form.tag(), lhs),
        normalization: form.normalization,
    })
}

/// `N^3` coefficient of `chi(S^N Omega)` for the stack: `(c1^2 - c2) / 6`.
pub fn sym_chi_leading(ch: &ChernNumbers) -> Rational {
    ch.difference() / Rational::from(6)
}

/// Theorem B evaluated through the Chern numbers of the stack rather than
/// the closed form; equals `(4/25)` times [`nodes_cusps_lhs`].
pub fn nodes_cusps_via_stack(d: i64, n: i64, c: i64) -> Result<CriterionVerdict, CriteriaError> {
    let curve = PlaneNodeCuspCurve::klt_default(d, n, c)?;
    Ok(bogomolov_stack(&plane_nc_curve_chern(&curve)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{stack_c1_sq, stack_c2};

    fn fin(m: u64) -> Multiplicity {
        Multiplicity::finite(m).unwrap()
    }

    fn pair(m: Multiplicity) -> PlanePairConfig {
        PlanePairConfig::new(5, 5, m, m).unwrap()
    }

    #[test]
    fn two_quintics_theorem_a() {
        let v = theorem_a_lhs(&pair(fin(69)).surface());
        assert_eq!(v.lhs(), &q(6, 4761));
        assert!(v.holds());
        let v = theorem_a_lhs(&pair(fin(68)).surface());
        assert_eq!(v.lhs(), &q(-61, 4624));
        assert!(!v.holds());
    }

    #[test]
    fn theorem_a_without_boundary_is_log_difference() {
        let s = SmoothOrbifoldSurface::new(q(7, 2), 3.into(), vec![], IntersectionMatrix::empty()).unwrap();
        assert_eq!(theorem_a_lhs(&s).lhs(), &q(1, 2));
    }

    #[test]
    fn remark_form_examples() {
        let amb = AmbientSurfaceData::new(9.into(), 3.into(), vec![], IntersectionMatrix::empty()).unwrap();
        assert_eq!(remark_form_lhs(&amb).lhs(), &Rational::from(6));
        assert_eq!(remark_form_lhs(&pair(fin(69)).ambient()).lhs(), &q(6, 4761));
    }

    #[test]
    fn plane_pair_examples() {
        let v = plane_pair_lhs(&pair(fin(69)));
        assert_eq!((v.lhs().clone(), v.holds()), (q(6, 4761), true));
        let v = plane_pair_lhs(&pair(fin(68)));
        assert_eq!((v.lhs().clone(), v.holds()), (q(-61, 4624), false));
        let v = plane_pair_lhs(
            &PlanePairConfig::new(4, 7, Multiplicity::Infinite, Multiplicity::Infinite).unwrap(),
        );
        assert_eq!(v.lhs(), &Rational::from(-3 * 11 + 28 + 6));
        assert!(PlanePairConfig::new(3, 5, fin(2), fin(2)).is_err());
    }

    #[test]
    fn plane_pair_equals_theorem_a() {
        let mults: Vec<Multiplicity> = (2..=100).map(fin).chain([Multiplicity::Infinite]).collect();
        for d1 in 4..=10 {
            for d2 in 4..=10 {
                for m1 in mults.iter().step_by(7).chain([&Multiplicity::Infinite]) {
                    for m2 in mults.iter().step_by(11).chain([&Multiplicity::Infinite]) {
                        let cfg = PlanePairConfig::new(d1, d2, *m1, *m2).unwrap();
                        assert_eq!(
                            plane_pair_lhs(&cfg).lhs(),
                            theorem_a_lhs(&cfg.surface()).lhs(),
                            "d1={d1} d2={d2} m1={m1} m2={m2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bogomolov_examples() {
        let v = bogomolov_stack(&ChernNumbers::new(5.into(), q(17, 2)));
        assert_eq!((v.lhs().clone(), v.holds()), (q(-7, 2), false));
        let v = bogomolov_stack(&ChernNumbers::new(24.into(), q(45, 2)));
        assert_eq!((v.lhs().clone(), v.holds()), (q(3, 2), true));
        let v = bogomolov_stack(&ChernNumbers::new(q(5, 3), q(5, 3)));
        assert!(!v.holds());
    }

    #[test]
    fn nodes_cusps_examples() {
        let v = nodes_cusps_lhs(6, 0, 9).unwrap();
        assert_eq!((v.lhs().clone(), v.holds()), (q(405, 32), true));
        let v = nodes_cusps_lhs(4, 0, 0).unwrap();
        assert_eq!((v.lhs().clone(), v.holds()), (q(-77, 2), false));
        assert!(matches!(
            nodes_cusps_lhs(4, 4, 0),
            Err(CriteriaError::Chern(ChernError::NegativeGenus { .. }))
        ));
    }

    #[test]
    fn nodal_surface_examples() {
        let v = nodal_surface_lhs(5, 31).unwrap();
        assert_eq!((v.lhs().clone(), v.holds()), (q(-7, 2), false));
        let v = nodal_surface_lhs(6, 57).unwrap();
        assert_eq!((v.lhs().clone(), v.holds()), (q(3, 2), true));
        for d in 5..=20 {
            let v = nodal_surface_lhs(d, 0).unwrap();
            assert_eq!(v.lhs(), &Rational::from(d * (10 - 4 * d)));
            assert!(!v.holds());
        }
        assert_eq!(nodal_surface_min_nodes(5), Rational::from(34));
        assert_eq!(nodal_surface_min_nodes(6), Rational::from(57));
    }

    #[test]
    fn nevanlinna_examples() {
        let cfg = |ms: &[u64]| NevanlinnaConfig::new(ms.iter().copied().map(fin).collect()).unwrap();
        let v = nevanlinna_excess(&cfg(&[2, 3, 7]));
        assert_eq!((v.lhs().clone(), v.holds()), (q(1, 42), true));
        let v = nevanlinna_excess(&cfg(&[2, 3, 6]));
        assert_eq!((v.lhs().clone(), v.holds()), (Rational::zero(), false));
        let inf = NevanlinnaConfig::new(vec![Multiplicity::Infinite; 3]).unwrap();
        let v = nevanlinna_excess(&inf);
        assert_eq!((v.lhs().clone(), v.holds()), (Rational::one(), true));
        assert_eq!(
            NevanlinnaConfig::new(vec![]),
            Err(CriteriaError::EmptyMultiplicities)
        );
    }

    #[test]
    fn jet_examples() {
        let v = jet_h0_coefficient(2, 5, 31).unwrap();
        assert_eq!((v.verdict.lhs().clone(), v.verdict.holds()), (q(-15, 2), false));
        let v = jet_h0_coefficient(3, 5, 31).unwrap();
        assert_eq!((v.verdict.lhs().clone(), v.verdict.holds()), (q(17, 2), true));
        assert_eq!(v.verdict.tag(), TheoremTag::Jet3);
        let v = jet_h0_coefficient(2, 6, 57).unwrap();
        assert_eq!((v.verdict.lhs().clone(), v.verdict.holds()), (q(111, 2), true));
        assert_eq!(
            jet_h0_coefficient(4, 5, 31),
            Err(CriteriaError::UnsupportedJetOrder(4))
        );
        assert!(jet_h0_coefficient(2, 4, 0).is_err());
    }

    #[test]
    fn jet_matches_explicit_polynomials() {
        for d in 5..=12i64 {
            for l in (0..=200).step_by(13) {
                let two = jet_h0_coefficient(2, d, l).unwrap();
                let expected2 = q(15 * l, 2) + Rational::from(2 * d * d * d - 36 * d * d + 82 * d);
                assert_eq!(two.verdict.lhs(), &expected2);
                let three = jet_h0_coefficient(3, d, l).unwrap();
                let expected3 = q(147 * l, 2) + Rational::from(36 * d * d * d - 484 * d * d + 1066 * d);
                assert_eq!(three.verdict.lhs(), &expected3);
            }
        }
    }

    #[test]
    fn sym_chi_examples() {
        assert_eq!(
            sym_chi_leading(&ChernNumbers::new(9.into(), 3.into())),
            Rational::one()
        );
        assert_eq!(sym_chi_leading(&ChernNumbers::new(5.into(), q(17, 2))), q(-7, 12));
    }

    #[test]
    fn theorem_a_is_chern_difference_on_two_quintics() {
        let s = pair(fin(69)).surface();
        assert_eq!(stack_c1_sq(&s) - stack_c2(&s), q(6, 4761));
    }
}
