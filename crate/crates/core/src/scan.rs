//! One-parameter sweeps over the criteria.
//!
//! Sweeps are linear and in increasing order; no monotonicity of the
//! left-hand side is assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::chern::{nodal_surface_chern, NodalSurface};
use crate::criteria::{
    bogomolov_stack, jet_h0_coefficient, nodal_surface_lhs, nodes_cusps_lhs, nodes_cusps_via_stack,
    plane_pair_lhs, theorem_a_lhs, CriteriaError, PlanePairConfig,
};
use crate::model::{CriterionVerdict, TheoremTag};
use crate::rational::{Multiplicity, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    PlanePair,
    NodesCusps,
    NodalSurface,
    NodalJet,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::PlanePair => "plane-pair",
            Family::NodesCusps => "nodes-cusps",
            Family::NodalSurface => "nodal-surface",
            Family::NodalJet => "nodal-jet",
        }
    }

    /// Parameters the family needs, after `m` has been expanded to `m1, m2`.
    fn parameters(&self) -> &'static [&'static str] {
        match self {
            Family::PlanePair => &["d1", "d2", "m1", "m2"],
            Family::NodesCusps => &["d", "n", "c"],
            Family::NodalSurface => &["d", "l"],
            Family::NodalJet => &["k", "d", "l"],
        }
    }

    fn is_multiplicity(&self, name: &str) -> bool {
        matches!(self, Family::PlanePair) && matches!(name, "m" | "m1" | "m2")
    }

    fn accepts(&self, name: &str) -> bool {
        self.parameters().contains(&name) || (matches!(self, Family::PlanePair) && name == "m")
    }

    pub fn default_criterion(&self, fixed: &BTreeMap<String, ParamValue>) -> TheoremTag {
        match self {
            Family::PlanePair => TheoremTag::PlanePair,
            Family::NodesCusps => TheoremTag::NodesCusps,
            Family::NodalSurface => TheoremTag::NodalSurface,
            Family::NodalJet => match fixed.get("k") {
                Some(ParamValue::Int(2)) => TheoremTag::Jet2,
                _ => TheoremTag::Jet3,
            },
        }
    }

    fn allowed_criteria(&self) -> &'static [TheoremTag] {
        match self {
            Family::PlanePair => &[
                TheoremTag::PlanePair,
                TheoremTag::TheoremA,
                TheoremTag::RemarkForm,
            ],
            Family::NodesCusps => &[TheoremTag::NodesCusps, TheoremTag::BogomolovStack],
            Family::NodalSurface => &[TheoremTag::NodalSurface, TheoremTag::BogomolovStack],
            Family::NodalJet => &[TheoremTag::Jet2, TheoremTag::Jet3],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "plane-pair" => Ok(Family::PlanePair),
            "nodes-cusps" => Ok(Family::NodesCusps),
            "nodal-surface" => Ok(Family::NodalSurface),
            "nodal-jet" => Ok(Family::NodalJet),
            _ => Err(ScanError::UnknownFamily(s.to_string())),
        }
    }
}

/// An integer parameter value, or infinity for multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamValue {
    Int(i64),
    Infinity,
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Int(v) => serializer.serialize_i64(*v),
            ParamValue::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl FromStr for ParamValue {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity") {
            return Ok(ParamValue::Infinity);
        }
        t.parse()
            .map(ParamValue::Int)
            .map_err(|_| ScanError::InvalidValue(t.to_string()))
    }
}

/// Inclusive integer range, optionally followed by the value infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRange {
    pub name: String,
    pub start: i64,
    pub end: i64,
    pub include_infinity: bool,
}

impl SweepRange {
    pub fn new(name: impl Into<String>, start: i64, end: i64) -> Self {
        SweepRange {
            name: name.into(),
            start,
            end,
            include_infinity: false,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = ParamValue> + '_ {
        (self.start..=self.end)
            .map(ParamValue::Int)
            .chain(self.include_infinity.then_some(ParamValue::Infinity))
    }
}

/// Parses `name=a..b` or `name=a..b,inf`.
impl FromStr for SweepRange {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScanError::InvalidSweep(s.to_string());
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let (range, include_infinity) = match range.split_once(',') {
            Some((r, tail)) if matches!(tail.trim(), "inf" | "infinity") => (r, true),
            Some(_) => return Err(bad()),
            None => (range, false),
        };
        let (a, b) = range.split_once("..").ok_or_else(bad)?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let start: i64 = a.trim().parse().map_err(|_| bad())?;
        let end: i64 = b.trim().parse().map_err(|_| bad())?;
        Ok(SweepRange {
            name: name.trim().to_string(),
            start,
            end,
            include_infinity,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter value `{0}`")]
    InvalidValue(String),
    #[error("invalid sweep `{0}`: expected name=start..end or name=start..end,inf")]
    InvalidSweep(String),
    #[error("empty sweep range {start}..{end}")]
    EmptyRange { start: i64, end: i64 },
    #[error("family {family} has no parameter `{name}`")]
    UnknownParameter { family: Family, name: String },
    #[error("family {family} is missing parameter `{name}`")]
    MissingParameter { family: Family, name: &'static str },
    #[error("parameter `{0}` cannot be infinite")]
    InfiniteNotAllowed(String),
    #[error("criterion {criterion} does not apply to family {family}")]
    IncompatibleCriterion { family: Family, criterion: TheoremTag },
    #[error("evaluation failed at {name} = {value}: {source}")]
    Evaluation {
        name: String,
        value: ParamValue,
        source: CriteriaError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRequest {
    family: Family,
    fixed: BTreeMap<String, ParamValue>,
    swept: SweepRange,
    criterion: TheoremTag,
}

impl ScanRequest {
    /// Validates the request; `criterion` defaults to the family's own.
    pub fn new(
        family: Family,
        fixed: BTreeMap<String, ParamValue>,
        swept: SweepRange,
        criterion: Option<TheoremTag>,
    ) -> Result<Self, ScanError> {
        if swept.start > swept.end {
            return Err(ScanError::EmptyRange {
                start: swept.start,
                end: swept.end,
            });
        }
        for name in fixed.keys().chain([&swept.name]) {
            if !family.accepts(name) {
                return Err(ScanError::UnknownParameter {
                    family,
                    name: name.clone(),
                });
            }
        }
        for (name, value) in &fixed {
            if *value == ParamValue::Infinity && !family.is_multiplicity(name) {
                return Err(ScanError::InfiniteNotAllowed(name.clone()));
            }
        }
        if swept.include_infinity && !family.is_multiplicity(&swept.name) {
            return Err(ScanError::InfiniteNotAllowed(swept.name.clone()));
        }
        let criterion = criterion.unwrap_or_else(|| family.default_criterion(&fixed));
        if !family.allowed_criteria().contains(&criterion) {
            return Err(ScanError::IncompatibleCriterion { family, criterion });
        }
        let request = ScanRequest {
            family,
            fixed,
            swept,
            criterion,
        };
        let probe = request.assignment(ParamValue::Int(request.swept.start));
        for name in family.parameters() {
            if !probe.contains_key(*name) {
                return Err(ScanError::MissingParameter { family, name });
            }
        }
        Ok(request)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn swept(&self) -> &SweepRange {
        &self.swept
    }

    pub fn fixed(&self) -> &BTreeMap<String, ParamValue> {
        &self.fixed
    }

    pub fn criterion(&self) -> TheoremTag {
        self.criterion
    }

    fn assignment(&self, value: ParamValue) -> BTreeMap<String, ParamValue> {
        let mut params = self.fixed.clone();
        params.insert(self.swept.name.clone(), value);
        if let Some(m) = params.remove("m") {
            params.entry("m1".into()).or_insert(m);
            params.entry("m2".into()).or_insert(m);
        }
        params
    }

    /// Evaluates the criterion with the swept parameter set to `value`.
    pub fn evaluate(&self, value: ParamValue) -> Result<CriterionVerdict, ScanError> {
        let params = self.assignment(value);
        self.evaluate_params(&params)
            .map_err(|source| ScanError::Evaluation {
                name: self.swept.name.clone(),
                value,
                source,
            })
    }

    fn evaluate_params(&self, p: &BTreeMap<String, ParamValue>) -> Result<CriterionVerdict, CriteriaError> {
        let int = |name: &'static str| -> Result<i64, CriteriaError> {
            match p[name] {
                ParamValue::Int(v) => Ok(v),
                ParamValue::Infinity => Err(CriteriaError::InvalidParameter {
                    name,
                    value: i64::MAX,
                    expected: "a finite integer",
                }),
            }
        };
        let mult = |name: &'static str| -> Result<Multiplicity, CriteriaError> {
            match p[name] {
                ParamValue::Infinity => Ok(Multiplicity::Infinite),
                ParamValue::Int(v) if v >= 1 => Ok(Multiplicity::finite(v as u64).expect("v >= 1")),
                ParamValue::Int(v) => Err(CriteriaError::InvalidParameter {
                    name,
                    value: v,
                    expected: ">= 1",
                }),
            }
        };
        match self.family {
            Family::PlanePair => {
                let cfg = PlanePairConfig::new(int("d1")?, int("d2")?, mult("m1")?, mult("m2")?)?;
                Ok(match self.criterion {
                    TheoremTag::TheoremA => theorem_a_lhs(&cfg.surface()),
                    TheoremTag::RemarkForm => crate::criteria::remark_form_lhs(&cfg.ambient()),
                    _ => plane_pair_lhs(&cfg),
                })
            }
            Family::NodesCusps => {
                let (d, n, c) = (int("d")?, int("n")?, int("c")?);
                match self.criterion {
                    TheoremTag::BogomolovStack => nodes_cusps_via_stack(d, n, c),
                    _ => nodes_cusps_lhs(d, n, c),
                }
            }
            Family::NodalSurface => {
                let (d, l) = (int("d")?, int("l")?);
                match self.criterion {
                    TheoremTag::BogomolovStack => {
                        let surface = NodalSurface::new(d, l)?;
                        Ok(bogomolov_stack(&nodal_surface_chern(&surface)))
                    }
                    _ => nodal_surface_lhs(d, l),
                }
            }
            Family::NodalJet => {
                let k = int("k")?;
                let expected = if k == 2 {
                    TheoremTag::Jet2
                } else {
                    TheoremTag::Jet3
                };
                if !(2..=3).contains(&k) {
                    return Err(CriteriaError::UnsupportedJetOrder(
                        k.clamp(0, u32::MAX as i64) as u32
                    ));
                }
                if expected != self.criterion {
                    return Err(CriteriaError::InvalidParameter {
                        name: "k",
                        value: k,
                        expected: "the jet order of the requested criterion",
                    });
                }
                Ok(jet_h0_coefficient(k as u32, int("d")?, int("l")?)?.verdict)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub param: ParamValue,
    pub lhs: Rational,
    pub holds: bool,
}

/// Evaluates every swept value. Rows are computed in parallel and returned in
/// sweep order; the first failing value (in sweep order) is reported.
pub fn grid_scan(req: &ScanRequest) -> Result<Vec<ScanRow>, ScanError> {
    let values: Vec<ParamValue> = req.swept.values().collect();
    let results: Vec<Result<ScanRow, ScanError>> = values
        .par_iter()
        .map(|&v| {
            req.evaluate(v).map(|verdict| ScanRow {
                param: v,
                lhs: verdict.lhs().clone(),
                holds: verdict.holds(),
            })
        })
        .collect();
    results.into_iter().collect()
}

/// Smallest swept value whose verdict holds, or `None` if the range has none.
pub fn minimal_passing(req: &ScanRequest) -> Result<Option<ParamValue>, ScanError> {
    for value in req.swept.values() {
        if req.evaluate(value)?.holds() {
            return Ok(Some(value));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn fixed(pairs: &[(&str, i64)]) -> BTreeMap<String, ParamValue> {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), ParamValue::Int(v)))
            .collect()
    }

    fn request(family: Family, pairs: &[(&str, i64)], sweep: &str) -> ScanRequest {
        ScanRequest::new(family, fixed(pairs), sweep.parse().unwrap(), None).unwrap()
    }

    #[test]
    fn two_quintics_need_69() {
        let req = request(Family::PlanePair, &[("d1", 5), ("d2", 5)], "m=2..100");
        assert_eq!(minimal_passing(&req), Ok(Some(ParamValue::Int(69))));
    }

    #[test]
    fn quintic_nodal_surface_needs_34() {
        let req = request(Family::NodalSurface, &[("d", 5)], "l=0..200");
        assert_eq!(minimal_passing(&req), Ok(Some(ParamValue::Int(34))));
    }

    #[test]
    fn three_jets_on_quintic_need_31() {
        let req = request(Family::NodalJet, &[("k", 3), ("d", 5)], "l=0..100");
        assert_eq!(req.criterion(), TheoremTag::Jet3);
        assert_eq!(minimal_passing(&req), Ok(Some(ParamValue::Int(31))));
    }

    #[test]
    fn sextic_threshold() {
        let req = request(Family::NodalSurface, &[("d", 6)], "l=55..58");
        let rows = grid_scan(&req).unwrap();
        let holds: Vec<_> = rows.iter().map(|r| (r.param, r.holds)).collect();
        assert_eq!(
            holds,
            vec![
                (ParamValue::Int(55), false),
                (ParamValue::Int(56), false),
                (ParamValue::Int(57), true),
                (ParamValue::Int(58), true)
            ]
        );
        assert_eq!(rows[1].lhs, Rational::zero());
    }

    #[test]
    fn cuspidal_sextics() {
        let req = request(Family::NodesCusps, &[("d", 6), ("n", 0)], "c=0..9");
        let rows = grid_scan(&req).unwrap();
        for row in rows {
            let ParamValue::Int(c) = row.param else {
                unreachable!()
            };
            assert_eq!(row.holds, c >= 8, "c={c}");
        }
    }

    #[test]
    fn two_jets_insufficient_up_to_31() {
        let req = request(Family::NodalJet, &[("k", 2), ("d", 5)], "l=0..31");
        assert!(grid_scan(&req).unwrap().iter().all(|r| !r.holds));
        assert_eq!(minimal_passing(&req), Ok(None));
    }

    #[test]
    fn infinity_endpoint_for_multiplicities() {
        let req = request(
            Family::PlanePair,
            &[("d1", 4), ("d2", 7), ("m1", 3)],
            "m2=2..3,inf",
        );
        let rows = grid_scan(&req).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].param, ParamValue::Infinity);
        let cfg =
            PlanePairConfig::new(4, 7, Multiplicity::finite(3).unwrap(), Multiplicity::Infinite).unwrap();
        assert_eq!(rows[2].lhs, plane_pair_lhs(&cfg).lhs().clone());
        let err = ScanRequest::new(
            Family::NodalSurface,
            fixed(&[("d", 5)]),
            "l=0..3,inf".parse().unwrap(),
            None,
        );
        assert_eq!(err, Err(ScanError::InfiniteNotAllowed("l".into())));
    }

    #[test]
    fn theorem_a_criterion_agrees_with_plane_pair() {
        let a = request(Family::PlanePair, &[("d1", 5), ("d2", 6)], "m=2..40");
        let b = ScanRequest::new(
            Family::PlanePair,
            fixed(&[("d1", 5), ("d2", 6)]),
            "m=2..40".parse().unwrap(),
            Some(TheoremTag::TheoremA),
        )
        .unwrap();
        let ra: Vec<_> = grid_scan(&a).unwrap().into_iter().map(|r| r.lhs).collect();
        let rb: Vec<_> = grid_scan(&b).unwrap().into_iter().map(|r| r.lhs).collect();
        assert_eq!(ra, rb);
    }

    #[test]
    fn bogomolov_criterion_on_nodes_cusps() {
        let req = ScanRequest::new(
            Family::NodesCusps,
            fixed(&[("d", 6), ("n", 0)]),
            "c=0..9".parse().unwrap(),
            Some(TheoremTag::BogomolovStack),
        )
        .unwrap();
        let rows = grid_scan(&req).unwrap();
        assert_eq!(rows[9].lhs, q(4, 25) * q(405, 32));
    }

    #[test]
    fn request_validation() {
        let sweep: SweepRange = "l=5..3".parse().unwrap();
        assert_eq!(
            ScanRequest::new(Family::NodalSurface, fixed(&[("d", 5)]), sweep, None),
            Err(ScanError::EmptyRange { start: 5, end: 3 })
        );
        assert!(matches!(
            ScanRequest::new(Family::NodalSurface, fixed(&[]), "l=0..3".parse().unwrap(), None),
            Err(ScanError::MissingParameter { name: "d", .. })
        ));
        assert!(matches!(
            ScanRequest::new(
                Family::NodalSurface,
                fixed(&[("d", 5), ("x", 1)]),
                "l=0..3".parse().unwrap(),
                None
            ),
            Err(ScanError::UnknownParameter { .. })
        ));
        assert!(matches!(
            ScanRequest::new(
                Family::NodalSurface,
                fixed(&[("d", 5)]),
                "l=0..3".parse().unwrap(),
                Some(TheoremTag::Jet2)
            ),
            Err(ScanError::IncompatibleCriterion { .. })
        ));
        assert!("l=0..".parse::<SweepRange>().is_err());
        assert!("l0..3".parse::<SweepRange>().is_err());
        assert_eq!("m=2..=4".parse::<SweepRange>().unwrap().end, 4);
    }

    #[test]
    fn evaluation_errors_carry_the_parameter() {
        let req = request(Family::NodesCusps, &[("d", 4), ("n", 0)], "c=0..5");
        assert!(matches!(
            grid_scan(&req),
            Err(ScanError::Evaluation {
                value: ParamValue::Int(4),
                ..
            })
        ));
        assert!(matches!(
            minimal_passing(&req),
            Err(ScanError::Evaluation {
                value: ParamValue::Int(4),
                ..
            })
        ));
    }

    #[test]
    fn minimal_matches_first_holding_row() {
        let reqs = [
            request(Family::PlanePair, &[("d1", 4), ("d2", 9)], "m=1..60"),
            request(Family::NodalSurface, &[("d", 7)], "l=0..150"),
            request(Family::NodesCusps, &[("d", 7), ("c", 3)], "n=0..12"),
            request(Family::NodalJet, &[("k", 2), ("d", 8)], "l=0..50"),
        ];
        for req in reqs {
            let first = grid_scan(&req)
                .unwrap()
                .into_iter()
                .find(|r| r.holds)
                .map(|r| r.param);
            assert_eq!(minimal_passing(&req).unwrap(), first);
        }
    }
}
