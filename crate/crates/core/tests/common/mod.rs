use orbichern::{AmbientSurfaceData, CurveComponent, IntersectionMatrix, Multiplicity, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x0b1c_4e12;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Ambient data with 1 to 4 components, genus in [0, 10], multiplicity in
/// [1, 100], self-intersections in [-5, 25] and crossings in [0, 25].
#[allow(clippy::needless_range_loop)]
pub fn random_ambient(rng: &mut impl Rng) -> AmbientSurfaceData {
    let n = rng.gen_range(1..=4);
    let components: Vec<CurveComponent> = (0..n)
        .map(|i| {
            let m = Multiplicity::finite(rng.gen_range(1..=100)).unwrap();
            CurveComponent::new(format!("C{}", i + 1), rng.gen_range(0..=10), m)
        })
        .collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                rng.gen_range(-5..=25)
            } else {
                rng.gen_range(0..=25)
            };
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    let c1_sq = Rational::new(rng.gen_range(-50..=50), rng.gen_range(1..=12));
    let c2 = Rational::new(rng.gen_range(-50..=150), rng.gen_range(1..=12));
    AmbientSurfaceData::new(c1_sq, c2, components, IntersectionMatrix::from_rows(rows)).unwrap()
}
