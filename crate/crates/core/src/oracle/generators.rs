use serde::Serialize;

use super::OracleError;
use crate::rational::Multiplicity;

/// Local generator `prod_{i,j} (d^j z_i)^{alpha_ij}` of weighted degree `N`,
/// divided by `z_i^{ceil_powers[i]}` along the orbifold divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetMonomial {
    /// `exponents[i][j - 1] = alpha_ij` for variable `i` and derivative order `j`.
    pub exponents: Vec<Vec<u64>>,
    /// `ceil((alpha_i1 + 2 alpha_i2 + ... + k alpha_ik) / m_i)`.
    pub ceil_powers: Vec<u64>,
}

impl JetMonomial {
    pub fn weight(&self) -> u64 {
        self.exponents
            .iter()
            .flat_map(|row| row.iter().enumerate().map(|(j, &a)| (j as u64 + 1) * a))
            .sum()
    }
}

/// Enumerates the local generators of the orbifold Green-Griffiths sheaf of
/// order `k` and weight `n` in `multiplicities.len()` variables. The count is
/// the rank of `E^GG_{k,n}`. Exponent matrices come in descending
/// lexicographic order of their row-major flattening.
pub fn count_orbifold_jet_generators(
    k: u32,
    n: u64,
    multiplicities: &[Multiplicity],
) -> Result<(u64, Vec<JetMonomial>), OracleError> {
    if k == 0 {
        return Err(OracleError::JetOrderOutOfRange {
            k,
            max: super::OracleConfig::default().max_jet_order,
        });
    }
    if multiplicities.is_empty() {
        return Err(OracleError::NoVariables);
    }
    let mults: Vec<u64> = multiplicities
        .iter()
        .enumerate()
        .map(|(i, m)| m.value().ok_or(OracleError::InfiniteMultiplicity(i)))
        .collect::<Result<_, _>>()?;
    let k = k as usize;
    let vars = mults.len();
    let mut flat = vec![0u64; vars * k];
    let mut out = Vec::new();
    enumerate(0, n, k, &mut flat, &mut |flat| {
        let exponents: Vec<Vec<u64>> = flat.chunks(k).map(<[u64]>::to_vec).collect();
        let ceil_powers = exponents
            .iter()
            .zip(&mults)
            .map(|(row, &m)| {
                let w: u64 = row.iter().enumerate().map(|(j, &a)| (j as u64 + 1) * a).sum();
                w.div_ceil(m)
            })
            .collect();
        out.push(JetMonomial {
            exponents,
            ceil_powers,
        });
    });
    Ok((out.len() as u64, out))
}

fn enumerate(pos: usize, remaining: u64, k: usize, flat: &mut [u64], emit: &mut impl FnMut(&[u64])) {
    if pos == flat.len() {
        if remaining == 0 {
            emit(flat);
        }
        return;
    }
    let weight = (pos % k) as u64 + 1;
    for a in (0..=remaining / weight).rev() {
        flat[pos] = a;
        enumerate(pos + 1, remaining - a * weight, k, flat, emit);
    }
    flat[pos] = 0;
}
