use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::geometry::GeometryCache;
use crate::{par, Error, Result, Vec3};

/// Radial C² bump `γ̃(x) = ψ((|x − x₀| − ρ_in)/(ρ_out − ρ_in))` with the
/// quintic smoothstep `ψ(s) = 1 − s³(10 − 15s + 6s²)`, clamped to `[0, 1]`.
///
/// `γ̃ ≡ 1` on `B_{ρ_in}(x₀)` and `γ̃ ≡ 0` outside `B_{ρ_out}(x₀)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffFunction {
    pub center: [f64; 3],
    pub rho_in: f64,
    pub rho_out: f64,
}

impl CutoffFunction {
    pub fn new(center: Vec3, rho_in: f64, rho_out: f64) -> Result<Self> {
        if !(rho_in >= 0.0) {
            return Err(Error::invalid(
                "rho_in",
                format!("must be non-negative, got {rho_in}"),
            ));
        }
        if !(rho_out > rho_in) || !rho_out.is_finite() {
            return Err(Error::invalid(
                "rho_out",
                format!("must exceed rho_in = {rho_in}, got {rho_out}"),
            ));
        }
        Ok(Self {
            center: [center.x, center.y, center.z],
            rho_in,
            rho_out,
        })
    }

    pub fn width(&self) -> f64 {
        self.rho_out - self.rho_in
    }

    pub fn psi(s: f64) -> f64 {
        let s = s.clamp(0.0, 1.0);
        1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
    }

    pub fn dpsi(s: f64) -> f64 {
        if !(0.0..=1.0).contains(&s) {
            return 0.0;
        }
        -30.0 * s * s * (1.0 - s) * (1.0 - s)
    }

    pub fn d2psi(s: f64) -> f64 {
        if !(0.0..=1.0).contains(&s) {
            return 0.0;
        }
        -60.0 * s * (1.0 - s) * (1.0 - 2.0 * s)
    }

    fn offset(&self, x: &Vec3) -> Vec3 {
        x - Vec3::from(self.center)
    }

    fn s(&self, r: f64) -> f64 {
        (r - self.rho_in) / self.width()
    }

    pub fn value(&self, x: &Vec3) -> f64 {
        Self::psi(self.s(self.offset(x).norm()))
    }

    pub fn gradient(&self, x: &Vec3) -> Vec3 {
        let d = self.offset(x);
        let r = d.norm();
        if r == 0.0 {
            return Vec3::zeros();
        }
        Self::dpsi(self.s(r)) / self.width() * d / r
    }

    /// `D²γ̃ = ψ''/w² r̂r̂ᵀ + ψ'/(w r)(I − r̂r̂ᵀ)`.
    pub fn hessian(&self, x: &Vec3) -> Matrix3<f64> {
        let d = self.offset(x);
        let r = d.norm();
        let w = self.width();
        let s = self.s(r);
        if r == 0.0 || !(0.0..=1.0).contains(&s) {
            return Matrix3::zeros();
        }
        let rr = (d / r) * (d / r).transpose();
        rr * (Self::d2psi(s) / (w * w)) + (Matrix3::identity() - rr) * (Self::dpsi(s) / (w * r))
    }

    /// `Λ = max(1, 15/(8w), 10/(√3 w²))`: the sups of `|ψ'|` and `|ψ''|` on
    /// `[0, 1]` are 15/8 and 10/√3. The tangential Hessian eigenvalue
    /// `|ψ'(s)|/(w r) ≤ 30s(1 − s)²/w²` never exceeds 40/(9w²), so it is
    /// covered by the radial bound.
    pub fn lambda(&self) -> f64 {
        let w = self.width();
        1f64.max(15.0 / (8.0 * w)).max(10.0 / (3f64.sqrt() * w * w))
    }
}

/// Integrand of [`weighted_integral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightedField {
    /// `|A|²`.
    A2,
    /// `‖f‖⁸ |ΔH + Q(A⁰)H|²`, the dissipation density of the inverse flow.
    GradW2,
}

fn field_values(cache: &GeometryCache, field: WeightedField) -> Vec<f64> {
    match field {
        WeightedField::A2 => cache.a2().to_vec(),
        WeightedField::GradW2 => cache
            .willmore_operator(true)
            .iter()
            .zip(&cache.f_norm)
            .map(|(w, n)| n.powi(8) * w.norm_squared())
            .collect(),
    }
}

/// `Σ_v field(v)·γ̃(f(v))ˢ·area(v)` for `s ≥ 4`. With `cutoff = None` the
/// weight is dropped, which gives bit-identical results to `γ̃ ≡ 1`.
pub fn weighted_integral(
    cache: &GeometryCache,
    cutoff: Option<&CutoffFunction>,
    s: f64,
    field: WeightedField,
) -> Result<f64> {
    if !(s >= 4.0) {
        return Err(Error::invalid(
            "s",
            format!("exponent must be at least 4, got {s}"),
        ));
    }
    let values = field_values(cache, field);
    let area = cache.areas();
    let terms = match cutoff {
        Some(c) => {
            let weights = par::map_slice(&cache.positions, |p| c.value(p).powf(s));
            values
                .iter()
                .zip(&weights)
                .zip(area)
                .map(|((q, g), a)| q * g * a)
                .collect::<Vec<_>>()
        }
        None => values.iter().zip(area).map(|(q, a)| q * a).collect(),
    };
    Ok(par::ordered_sum(terms))
}
