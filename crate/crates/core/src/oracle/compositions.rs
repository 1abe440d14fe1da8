use serde::Serialize;

/// Exponent vector `(l_1, ..., l_k)` of a graded piece
/// `S^{l_1} Omega (x) ... (x) S^{l_k} Omega`, of weight `sum j l_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(j, &l)| (j as u64 + 1) * l)
            .sum()
    }
}

/// All `(l_1, ..., l_k)` with `l_1 + 2 l_2 + ... + k l_k = n`, in descending
/// lexicographic order (largest `l_1` first).
pub fn compositions(k: u32, n: u64) -> Vec<Composition> {
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Composition::new(Vec::new()));
        }
        return out;
    }
    let mut current = vec![0u64; k as usize];
    fill(0, n, &mut current, &mut out);
    out
}

fn fill(pos: usize, remaining: u64, current: &mut [u64], out: &mut Vec<Composition>) {
    let k = current.len();
    let weight = pos as u64 + 1;
    if pos + 1 == k {
        if remaining.is_multiple_of(weight) {
            current[pos] = remaining / weight;
            out.push(Composition::new(current.to_vec()));
        }
        return;
    }
    for l in (0..=remaining / weight).rev() {
        current[pos] = l;
        fill(pos + 1, remaining - l * weight, current, out);
    }
}
