//! TOML configuration files.
//!
//! ```toml
//! [surface]
//! ambient_c1_sq = 9        # or log_c1_sq / log_c2, as integers or "p/q"
//! ambient_c2 = 3
//!
//! [[component]]
//! label = "C1"
//! genus = 6
//! multiplicity = 69        # or "inf"
//!
//! [[component]]
//! genus = 6
//! multiplicity = 69
//!
//! [intersections]
//! matrix = [[25, 25], [25, 25]]
//! ```
//!
//! Family blocks `[plane_pair]`, `[nodes_cusps]`, `[nodal_surface]` and
//! `[nevanlinna]` may appear instead of, or next to, the surface data.

use std::ops::Range;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::chern::{log_surface_from_ambient, ChernError, NodalSurface, PlaneNodeCuspCurve};
use crate::criteria::{CriteriaError, NevanlinnaConfig, PlanePairConfig};
use crate::model::{
    AmbientSurfaceData, CurveComponent, IntersectionMatrix, ModelError, SmoothOrbifoldSurface,
};
use crate::rational::{Multiplicity, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("configuration contains no surface or family block")]
    Empty,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Chern(#[from] ChernError),
}

/// Surface data as written in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceInput {
    Log(SmoothOrbifoldSurface),
    Ambient(AmbientSurfaceData),
}

impl SurfaceInput {
    /// The orbifold surface, converting ambient data to log Chern numbers.
    pub fn surface(&self) -> SmoothOrbifoldSurface {
        match self {
            SurfaceInput::Log(s) => s.clone(),
            SurfaceInput::Ambient(a) => log_surface_from_ambient(a),
        }
    }

    pub fn has_infinite_multiplicity(&self) -> bool {
        match self {
            SurfaceInput::Log(s) => s.has_infinite_multiplicity(),
            SurfaceInput::Ambient(a) => a.has_infinite_multiplicity(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodesCuspsParams {
    pub d: i64,
    pub n: i64,
    pub c: i64,
}

/// A validated configuration file. At least one field is set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParsedConfig {
    pub surface: Option<SurfaceInput>,
    pub plane_pair: Option<PlanePairConfig>,
    pub nodes_cusps: Option<NodesCuspsParams>,
    pub nodal_surface: Option<NodalSurface>,
    pub nevanlinna: Option<NevanlinnaConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    surface: Option<Spanned<RawSurface>>,
    #[serde(default)]
    component: Vec<RawComponent>,
    intersections: Option<RawIntersections>,
    plane_pair: Option<RawPlanePair>,
    nodes_cusps: Option<NodesCuspsParams>,
    nodal_surface: Option<RawNodal>,
    nevanlinna: Option<RawNevanlinna>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    log_c1_sq: Option<Rational>,
    log_c2: Option<Rational>,
    ambient_c1_sq: Option<Rational>,
    ambient_c2: Option<Rational>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    label: Option<String>,
    genus: u32,
    multiplicity: Multiplicity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIntersections {
    matrix: Option<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlanePair {
    d1: i64,
    d2: i64,
    m1: Multiplicity,
    m2: Multiplicity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNodal {
    d: i64,
    l: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNevanlinna {
    multiplicities: Vec<Multiplicity>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn invalid(text: &str, span: Range<usize>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        line: line_col(text, span.start).0,
        message: message.into(),
    }
}

pub fn parse_config(text: &str) -> Result<ParsedConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        ConfigError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;

    let components: Vec<CurveComponent> = raw
        .component
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            CurveComponent::new(
                c.label.unwrap_or_else(|| format!("C{}", i + 1)),
                c.genus,
                c.multiplicity,
            )
        })
        .collect();

    let surface = match raw.surface {
        None if !components.is_empty() || raw.intersections.is_some() => {
            return Err(ConfigError::MissingField("surface"));
        }
        None => None,
        Some(spanned) => {
            let span = spanned.span();
            let s = spanned.into_inner();
            let matrix = match raw.intersections.and_then(|i| i.matrix) {
                Some(rows) => IntersectionMatrix::from_rows(rows),
                None if components.is_empty() => IntersectionMatrix::empty(),
                None => return Err(ConfigError::MissingField("intersections.matrix")),
            };
            Some(match (s.log_c1_sq, s.log_c2, s.ambient_c1_sq, s.ambient_c2) {
                (Some(c1), Some(c2), None, None) => {
                    SurfaceInput::Log(SmoothOrbifoldSurface::new(c1, c2, components, matrix)?)
                }
                (None, None, Some(c1), Some(c2)) => {
                    SurfaceInput::Ambient(AmbientSurfaceData::new(c1, c2, components, matrix)?)
                }
                _ => {
                    return Err(invalid(
                        text,
                        span,
                        "surface needs either log_c1_sq and log_c2, or ambient_c1_sq and ambient_c2",
                    ))
                }
            })
        }
    };

    let plane_pair = raw
        .plane_pair
        .map(|p| PlanePairConfig::new(p.d1, p.d2, p.m1, p.m2))
        .transpose()?;
    if let Some(p) = raw.nodes_cusps {
        PlaneNodeCuspCurve::klt_default(p.d, p.n, p.c)?;
    }
    let nodal_surface = raw
        .nodal_surface
        .map(|p| NodalSurface::new(p.d, p.l))
        .transpose()?;
    let nevanlinna = raw
        .nevanlinna
        .map(|p| NevanlinnaConfig::new(p.multiplicities))
        .transpose()?;

    let parsed = ParsedConfig {
        surface,
        plane_pair,
        nodes_cusps: raw.nodes_cusps,
        nodal_surface,
        nevanlinna,
    };
    if parsed == ParsedConfig::default() {
        return Err(ConfigError::Empty);
    }
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const TWO_QUINTICS: &str = r#"
[surface]
ambient_c1_sq = 9
ambient_c2 = 3

[[component]]
label = "C1"
genus = 6
multiplicity = 69

[[component]]
label = "C2"
genus = 6
multiplicity = 69

[intersections]
matrix = [[25, 25], [25, 25]]
"#;

    #[test]
    fn two_quintics_from_ambient() {
        let cfg = parse_config(TWO_QUINTICS).unwrap();
        let s = cfg.surface.unwrap().surface();
        assert_eq!(s.log_c1_sq(), &Rational::from(49));
        assert_eq!(s.log_c2(), &Rational::from(48));
        assert_eq!(s.components()[1].label, "C2");
    }

    #[test]
    fn rational_strings() {
        let text = r#"
[surface]
log_c1_sq = "75/2"
log_c2 = -3
"#;
        let s = parse_config(text).unwrap().surface.unwrap().surface();
        assert_eq!(s.log_c1_sq(), &q(75, 2));
        assert_eq!(s.log_c2(), &Rational::from(-3));
        assert!(s.components().is_empty());
    }

    #[test]
    fn missing_matrix_is_named() {
        let text = TWO_QUINTICS.replace("[intersections]\nmatrix = [[25, 25], [25, 25]]\n", "");
        let err = parse_config(&text).unwrap_err();
        assert_eq!(err, ConfigError::MissingField("intersections.matrix"));
        assert!(err.to_string().contains("intersections.matrix"));
    }

    #[test]
    fn infinite_multiplicity() {
        let text = TWO_QUINTICS.replace(
            "multiplicity = 69\n\n[[component]]",
            "multiplicity = \"inf\"\n\n[[component]]",
        );
        let cfg = parse_config(&text).unwrap();
        assert!(cfg.surface.unwrap().has_infinite_multiplicity());
    }

    #[test]
    fn syntax_errors_carry_line() {
        let text = "[surface]\nlog_c1_sq = \"1/2\"\nlog_c2 = = 3\n";
        match parse_config(text) {
            Err(ConfigError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let text = "[surface]\nlog_c1_sq = \"1/0\"\nlog_c2 = 3\n";
        assert!(matches!(
            parse_config(text),
            Err(ConfigError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn mixed_surface_forms_rejected() {
        let text = "\n[surface]\nlog_c1_sq = 1\nambient_c2 = 3\n";
        assert!(matches!(
            parse_config(text),
            Err(ConfigError::Invalid { line: 2, .. })
        ));
    }

    #[test]
    fn validation_is_delegated() {
        let text = TWO_QUINTICS.replace("[[25, 25], [25, 25]]", "[[25, 25], [24, 25]]");
        assert!(matches!(
            parse_config(&text),
            Err(ConfigError::Model(ModelError::AsymmetricMatrix { .. }))
        ));
        let text = "[nodes_cusps]\nd = 4\nn = 0\nc = 4\n";
        assert!(matches!(
            parse_config(text),
            Err(ConfigError::Chern(ChernError::NegativeGenus { .. }))
        ));
    }

    #[test]
    fn family_blocks() {
        let text = r#"
[plane_pair]
d1 = 5
d2 = 5
m1 = 69
m2 = "inf"

[nodes_cusps]
d = 6
n = 0
c = 8

[nodal_surface]
d = 5
l = 31

[nevanlinna]
multiplicities = [2, 3, 7]
"#;
        let cfg = parse_config(text).unwrap();
        assert!(cfg.surface.is_none());
        assert_eq!(cfg.plane_pair.unwrap().degrees(), (5, 5));
        assert_eq!(cfg.nodes_cusps, Some(NodesCuspsParams { d: 6, n: 0, c: 8 }));
        assert_eq!(cfg.nodal_surface.unwrap().nodes(), 31);
        assert_eq!(cfg.nevanlinna.unwrap().multiplicities().len(), 3);
    }

    #[test]
    fn empty_and_unknown() {
        assert_eq!(parse_config(""), Err(ConfigError::Empty));
        assert!(matches!(
            parse_config("[surfaces]\n"),
            Err(ConfigError::Parse { .. })
        ));
    }
}
