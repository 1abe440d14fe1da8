//! Symbolic Riemann-Roch oracle for Green-Griffiths jet bundles on surfaces.
//!
//! Euler characteristics are computed exactly as linear forms in `c1^2`,
//! `c2` and `chi(O)` through the splitting principle, then the asymptotic
//! leading coefficient is extracted by exact interpolation. None of this
//! reuses the closed forms hardcoded in [`crate::criteria`].

mod compositions;
mod generators;
mod leading;
mod riemann_roch;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::model::ChernNumbers;
use crate::rational::Rational;

pub use compositions::{compositions, Composition};
pub use generators::{count_orbifold_jet_generators, JetMonomial};
pub use leading::{
    fit_jet_quasi_polynomial, interpolate, leading_coefficient, leading_coefficient_with, QuasiPolynomialFit,
};
pub use riemann_roch::{chi_graded_term, chi_jet_exact, chi_jet_exact_sequential, power_sums, PowerSums};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("jet order {k} outside the supported range 1..={max}")]
    JetOrderOutOfRange { k: u32, max: u32 },
    #[error("residue class {residue} mod {period}: fitted polynomial disagrees with sample at N = {n}")]
    DegreeMismatch { residue: u64, period: u64, n: u64 },
    #[error("residue classes {first} and {other} mod {period} give different leading coefficients")]
    ClassDisagreement { first: u64, other: u64, period: u64 },
    #[error("leading coefficient has a nonzero chi(O) component {0}")]
    ChiOInLeadingTerm(Rational),
    #[error("generator enumeration requires finite multiplicities (component {0} is infinite)")]
    InfiniteMultiplicity(usize),
    #[error("generator enumeration requires at least one variable")]
    NoVariables,
}

impl OracleError {
    /// Failures of the oracle's own consistency checks, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            OracleError::DegreeMismatch { .. }
                | OracleError::ClassDisagreement { .. }
                | OracleError::ChiOInLeadingTerm(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_jet_order: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_jet_order: 4 }
    }
}

/// `alpha c1^2 + beta c2 + gamma chi(O)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CoeffForm {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl CoeffForm {
    pub fn new(alpha: impl Into<Rational>, beta: impl Into<Rational>, gamma: impl Into<Rational>) -> Self {
        CoeffForm {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn evaluate(&self, c1_sq: &Rational, c2: &Rational, chi_o: &Rational) -> Rational {
        &self.alpha * c1_sq + &self.beta * c2 + &self.gamma * chi_o
    }

    /// Evaluates a form without `chi(O)` part on a pair of Chern numbers.
    pub fn evaluate_chern(&self, ch: &ChernNumbers) -> Rational {
        self.evaluate(&ch.c1_sq, &ch.c2, &Rational::zero())
    }

    pub fn scale(&self, factor: &Rational) -> CoeffForm {
        CoeffForm {
            alpha: &self.alpha * factor,
            beta: &self.beta * factor,
            gamma: &self.gamma * factor,
        }
    }

    fn components(&self) -> [&Rational; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    /// Least common denominator of the three coefficients.
    pub fn common_denominator(&self) -> BigInt {
        self.components()
            .into_iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Renders every coefficient over [`Self::common_denominator`], e.g.
    /// `85/6531840*c1^2 - 49/6531840*c2`.
    pub fn to_common_denominator_string(&self) -> String {
        let den = self.common_denominator();
        let terms = self.components().map(|c| {
            let num = c * &Rational::from(den.clone());
            let magnitude = num.numer().abs();
            let text = if den.is_one() {
                magnitude.to_string()
            } else {
                format!("{magnitude}/{den}")
            };
            (num.is_zero(), num.is_negative(), text)
        });
        render_terms(terms)
    }
}

const TERM_NAMES: [&str; 3] = ["c1^2", "c2", "chi(O)"];

/// Joins `(is_zero, is_negative, magnitude)` terms into a signed sum.
fn render_terms(terms: [(bool, bool, String); 3]) -> String {
    let mut out = String::new();
    for ((zero, negative, magnitude), name) in terms.into_iter().zip(TERM_NAMES) {
        if zero {
            continue;
        }
        out.push_str(match (out.is_empty(), negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        out.push_str(&format!("{magnitude}*{name}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Add for CoeffForm {
    type Output = CoeffForm;
    fn add(self, rhs: CoeffForm) -> CoeffForm {
        CoeffForm {
            alpha: self.alpha + rhs.alpha,
            beta: self.beta + rhs.beta,
            gamma: self.gamma + rhs.gamma,
        }
    }
}

impl AddAssign<&CoeffForm> for CoeffForm {
    fn add_assign(&mut self, rhs: &CoeffForm) {
        self.alpha += &rhs.alpha;
        self.beta += &rhs.beta;
        self.gamma += &rhs.gamma;
    }
}

impl Sub for CoeffForm {
    type Output = CoeffForm;
    fn sub(self, rhs: CoeffForm) -> CoeffForm {
        CoeffForm {
            alpha: self.alpha - rhs.alpha,
            beta: self.beta - rhs.beta,
            gamma: self.gamma - rhs.gamma,
        }
    }
}

impl Mul<&Rational> for &CoeffForm {
    type Output = CoeffForm;
    fn mul(self, rhs: &Rational) -> CoeffForm {
        self.scale(rhs)
    }
}

impl std::iter::Sum for CoeffForm {
    fn sum<I: Iterator<Item = CoeffForm>>(iter: I) -> Self {
        iter.fold(CoeffForm::zero(), |acc, x| acc + x)
    }
}

/// Renders as `7/1920*c1^2 - 1/384*c2 + 3*chi(O)`, dropping zero terms.
impl fmt::Display for CoeffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.components().map(|c| {
            let magnitude = if c.is_negative() { -c } else { c.clone() };
            (c.is_zero(), c.is_negative(), magnitude.to_string())
        });
        f.write_str(&render_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn display() {
        assert_eq!(
            CoeffForm::new(q(85, 7776), q(-49, 7776), 0).to_string(),
            "85/7776*c1^2 - 49/7776*c2"
        );
        assert_eq!(CoeffForm::new(0, -1, 2).to_string(), "-1*c2 + 2*chi(O)");
        assert_eq!(CoeffForm::zero().to_string(), "0");
        let f = CoeffForm::new(q(7, 1920), q(-5, 1920), 0);
        assert_eq!(f.to_string(), "7/1920*c1^2 - 1/384*c2");
        assert_eq!(f.to_common_denominator_string(), "7/1920*c1^2 - 5/1920*c2");
        assert_eq!(
            CoeffForm::new(-2, 0, 3).to_common_denominator_string(),
            "-2*c1^2 + 3*chi(O)"
        );
    }

    #[test]
    fn evaluate() {
        let f = CoeffForm::new(1, -3, 3);
        assert_eq!(f.evaluate(&9.into(), &3.into(), &1.into()), Rational::from(3));
    }
}
