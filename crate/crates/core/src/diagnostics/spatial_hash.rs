use std::collections::HashMap;

use crate::Vec3;

/// Uniform grid bucketing of points for fixed-radius ball queries.
#[derive(Debug, Clone)]
pub struct SpatialHash {
    cell: f64,
    buckets: HashMap<[i64; 3], Vec<usize>>,
}

impl SpatialHash {
    /// Buckets `points` into cubes of side `cell` (> 0).
    pub fn new(points: &[Vec3], cell: f64) -> Self {
        assert!(cell > 0.0 && cell.is_finite(), "cell size must be positive");
        let mut buckets: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets.entry(Self::key(p, cell)).or_default().push(i);
        }
        Self { cell, buckets }
    }

    fn key(p: &Vec3, cell: f64) -> [i64; 3] {
        [
            (p.x / cell).floor() as i64,
            (p.y / cell).floor() as i64,
            (p.z / cell).floor() as i64,
        ]
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    /// Indices `i` with `|points[i] − x| < radius`, ascending.
    pub fn query(&self, points: &[Vec3], x: &Vec3, radius: f64) -> Vec<usize> {
        let reach = (radius / self.cell).ceil() as i64;
        let c = Self::key(x, self.cell);
        let mut out = Vec::new();
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                for dz in -reach..=reach {
                    if let Some(b) = self.buckets.get(&[c[0] + dx, c[1] + dy, c[2] + dz]) {
                        out.extend(
                            b.iter()
                                .copied()
                                .filter(|&i| (points[i] - x).norm() < radius),
                        );
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Vec3> = (0..2000)
            .map(|_| {
                Vec3::new(
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                )
            })
            .collect();
        for radius in [0.1, 0.37, 1.0] {
            let h = SpatialHash::new(&pts, radius);
            for q in pts.iter().take(50) {
                let brute: Vec<usize> = (0..pts.len())
                    .filter(|&i| (pts[i] - q).norm() < radius)
                    .collect();
                assert_eq!(h.query(&pts, q, radius), brute);
            }
        }
    }
}
