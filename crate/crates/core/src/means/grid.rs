use serde::{Deserialize, Serialize};

use crate::{LabError, Result};

/// Discretization parameters shared by every norm computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Resolution {
    /// Truncation degree of series built by the lab.
    pub degree: usize,
    /// Outermost radius ever sampled.
    pub r_max: f64,
    /// Radial samples per decade of `1 − r`.
    pub points_per_decade: usize,
    /// Gauss–Legendre panels per decade of `1 − r` for radial integrals.
    pub panels_per_decade: usize,
    /// Gauss–Legendre nodes per panel.
    pub gauss_order: usize,
    /// Circle nodes are `max(512, theta_multiplier · N)`.
    pub theta_multiplier: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            degree: 1024,
            r_max: 0.99,
            points_per_decade: 8,
            panels_per_decade: 4,
            gauss_order: 8,
            theta_multiplier: 4,
        }
    }
}

impl Resolution {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(LabError::InvalidArgument(m.to_string()));
        if self.degree == 0 {
            return bad("degree must be positive");
        }
        if !(self.r_max > 0.5 && self.r_max < 1.0) {
            return bad("r_max must lie in (0.5, 1)");
        }
        if self.points_per_decade < 2 || self.panels_per_decade == 0 || self.gauss_order == 0 {
            return bad("grid densities must be positive (points_per_decade ≥ 2)");
        }
        if self.theta_multiplier == 0 {
            return bad("theta_multiplier must be positive");
        }
        Ok(())
    }

    /// Every sampling grid with half the spacing; the series degree is kept.
    pub fn refined(&self) -> Self {
        Self {
            degree: self.degree,
            r_max: self.r_max,
            points_per_decade: self.points_per_decade * 2,
            panels_per_decade: self.panels_per_decade * 2,
            gauss_order: self.gauss_order,
            theta_multiplier: self.theta_multiplier * 2,
        }
    }

    /// Number of circle nodes for a degree-`n` series.
    pub fn theta_nodes(&self, n: usize) -> usize {
        (self.theta_multiplier * n).max(512).next_power_of_two()
    }

    pub fn delta_min(&self) -> f64 {
        1.0 - self.r_max
    }

    /// Decades spanned by `1 − r` between 1 and `1 − r_max`.
    pub fn decades(&self) -> f64 {
        -self.delta_min().log10()
    }

    /// Radii `0 = r_0 < r_1 < … < r_max`, geometric in `1 − r`.
    pub fn radial_grid(&self) -> Vec<f64> {
        self.radial_grid_up_to(self.r_max)
    }

    /// Same spacing, truncated at `r_top ≤ r_max` (which is always included).
    pub fn radial_grid_up_to(&self, r_top: f64) -> Vec<f64> {
        let d_min = 1.0 - r_top;
        let steps = ((-d_min.log10()) * self.points_per_decade as f64).ceil().max(1.0) as usize;
        let ratio = d_min.powf(1.0 / steps as f64);
        let mut out = Vec::with_capacity(steps + 1);
        let mut d = 1.0;
        out.push(0.0);
        for j in 1..=steps {
            d *= ratio;
            out.push(if j == steps { r_top } else { 1.0 - d });
        }
        out
    }

    pub fn describe(&self) -> String {
        format!(
            "N={} r_max={} ppd={} panels={}x{} theta={}",
            self.degree,
            self.r_max,
            self.points_per_decade,
            self.panels_per_decade,
            self.gauss_order,
            self.theta_nodes(self.degree)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_grid_is_geometric_and_ends_at_r_max() {
        let res = Resolution::default();
        let g = res.radial_grid();
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), res.r_max);
        assert_eq!(g.len(), 17);
        for w in g.windows(2) {
            assert!(w[1] > w[0]);
        }
        let ratio = (1.0 - g[5]) / (1.0 - g[4]);
        assert!((ratio - 10f64.powf(-1.0 / 8.0)).abs() < 1e-12);
    }

    #[test]
    fn refinement_halves_spacing() {
        let h = Resolution::default().refined();
        h.validate().unwrap();
        assert_eq!(h.degree, 1024);
        assert_eq!(h.radial_grid().len(), 33);
    }
}
