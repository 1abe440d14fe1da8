//! Leading asymptotic coefficient of `chi(E^GG_{k,N})` by exact interpolation.
//!
//! `N -> chi_jet_exact(k, N)` is a quasi-polynomial of degree `2k + 1` whose
//! period divides `lcm(1..=k)`. On every residue class we fit a polynomial
//! through `2k + 2` samples, check it against two further samples, and then
//! require every class to share the same top coefficient.

use num_integer::Integer;
use rayon::prelude::*;

use super::riemann_roch::chi_jet_exact;
use super::{CoeffForm, OracleConfig, OracleError};
use crate::rational::Rational;

const EXTRA_SAMPLES: u64 = 2;

/// Coefficients (constant term first) of the unique polynomial of degree
/// `< xs.len()` through the points `(xs[i], ys[i])`. The `xs` must be
/// pairwise distinct.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    // Newton divided differences, in place
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand sum dd[i] prod_{j<i} (x - xs[j]) by Horner from the top
    let mut coeffs = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Per-residue-class polynomial fits of `chi(E^GG_{k,N})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomialFit {
    pub jet_order: u32,
    pub period: u64,
    pub degree: usize,
    /// `classes[r][e]` is the coefficient of `N^e` for `N = r (mod period)`.
    pub classes: Vec<Vec<CoeffForm>>,
}

impl QuasiPolynomialFit {
    pub fn eval(&self, n: u64) -> CoeffForm {
        let coeffs = &self.classes[(n % self.period) as usize];
        let x = Rational::from(n);
        coeffs
            .iter()
            .rev()
            .fold(CoeffForm::zero(), |acc, c| acc.scale(&x) + c.clone())
    }

    pub fn leading(&self, residue: u64) -> &CoeffForm {
        &self.classes[residue as usize][self.degree]
    }
}

fn jet_period(k: u32) -> u64 {
    (1..=u64::from(k)).fold(1, |acc, j| acc.lcm(&j))
}

fn check_order(k: u32, cfg: &OracleConfig) -> Result<(), OracleError> {
    if k == 0 || k > cfg.max_jet_order {
        return Err(OracleError::JetOrderOutOfRange {
            k,
            max: cfg.max_jet_order,
        });
    }
    Ok(())
}

fn split(form: &CoeffForm) -> [Rational; 3] {
    [form.alpha.clone(), form.beta.clone(), form.gamma.clone()]
}

pub fn fit_jet_quasi_polynomial(k: u32, cfg: &OracleConfig) -> Result<QuasiPolynomialFit, OracleError> {
    check_order(k, cfg)?;
    let period = jet_period(k);
    let degree = 2 * k as usize + 1;
    let fit_points = degree as u64 + 1;

    let classes = (0..period)
        .into_par_iter()
        .map(|residue| {
            let ns: Vec<u64> = (0..fit_points + EXTRA_SAMPLES)
                .map(|t| residue + period * t)
                .collect();
            let values: Vec<CoeffForm> = ns.iter().map(|&n| chi_jet_exact(k, n)).collect();
            let xs: Vec<Rational> = ns[..fit_points as usize]
                .iter()
                .map(|&n| Rational::from(n))
                .collect();

            let mut per_component: Vec<Vec<Rational>> = Vec::with_capacity(3);
            for c in 0..3 {
                let ys: Vec<Rational> = values[..fit_points as usize]
                    .iter()
                    .map(|v| split(v)[c].clone())
                    .collect();
                per_component.push(interpolate(&xs, &ys));
            }
            for (&n, value) in ns.iter().zip(&values).skip(fit_points as usize) {
                let x = Rational::from(n);
                let expected = split(value);
                for c in 0..3 {
                    if eval_poly(&per_component[c], &x) != expected[c] {
                        return Err(OracleError::DegreeMismatch { residue, period, n });
                    }
                }
            }
            Ok((0..=degree)
                .map(|e| CoeffForm {
                    alpha: per_component[0][e].clone(),
                    beta: per_component[1][e].clone(),
                    gamma: per_component[2][e].clone(),
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(QuasiPolynomialFit {
        jet_order: k,
        period,
        degree,
        classes,
    })
}

/// Top coefficient of `chi(E^GG_{k,N})` in `N` and its degree `2k + 1`.
pub fn leading_coefficient(k: u32) -> Result<(CoeffForm, u32), OracleError> {
    leading_coefficient_with(k, &OracleConfig::default())
}

pub fn leading_coefficient_with(k: u32, cfg: &OracleConfig) -> Result<(CoeffForm, u32), OracleError> {
    let fit = fit_jet_quasi_polynomial(k, cfg)?;
    let top = fit.leading(0).clone();
    for residue in 1..fit.period {
        if fit.leading(residue) != &top {
            return Err(OracleError::ClassDisagreement {
                first: 0,
                other: residue,
                period: fit.period,
            });
        }
    }
    if !top.gamma.is_zero() {
        return Err(OracleError::ChiOInLeadingTerm(top.gamma));
    }
    Ok((top, fit.degree as u32))
}
