//! Autonomous complex ODE `w′ = F(w)` on the disk via Dormand–Prince 5(4).

use std::cell::Cell;

use num_complex::Complex64;
use ode_solvers::{Dopri5, OutputType, System, Vector2};

use crate::{LabError, Result};

/// Largest admissible step.
pub const MAX_STEP: f64 = 0.1;
/// Trajectories reaching `|w| ≥ 1 − ESCAPE_MARGIN` have left the disk.
pub const ESCAPE_MARGIN: f64 = 1e-6;

struct Field<'a, F: Fn(Complex64) -> Complex64> {
    f: &'a F,
    limit: f64,
    escaped: &'a Cell<Option<(f64, f64)>>,
}

impl<F: Fn(Complex64) -> Complex64> System<f64, Vector2<f64>> for Field<'_, F> {
    fn system(&self, _t: f64, y: &Vector2<f64>, dy: &mut Vector2<f64>) {
        let v = (self.f)(Complex64::new(y[0], y[1]));
        dy[0] = v.re;
        dy[1] = v.im;
    }

    fn solout(&mut self, t: f64, y: &Vector2<f64>, _dy: &Vector2<f64>) -> bool {
        let m = y[0].hypot(y[1]);
        if !(m < self.limit) {
            self.escaped.set(Some((t, m)));
            return true;
        }
        false
    }
}

/// Endpoint of a trajectory with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Trajectory {
    pub end: Complex64,
    /// `tol · (accepted steps + 1)`: a bound-style estimate of the global error.
    pub error: f64,
    pub steps: u32,
}

/// Integrates `w′ = F(w)`, `w(0) = z` up to time `t ≥ 0`.
///
/// `limit` is the modulus at which the trajectory is declared escaped.
pub fn integrate<F>(f: &F, z: Complex64, t: f64, tol: f64, limit: f64) -> Result<Trajectory>
where
    F: Fn(Complex64) -> Complex64,
{
    if t == 0.0 {
        return Ok(Trajectory { end: z, error: 0.0, steps: 0 });
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(LabError::InvalidArgument(format!("flow time must be ≥ 0, got {t}")));
    }
    let escaped = Cell::new(None);
    let field = Field { f, limit, escaped: &escaped };
    if !(z.norm() < limit) {
        return Err(LabError::FlowEscape { start: z, t: 0.0, modulus: z.norm() });
    }
    let y0 = Vector2::new(z.re, z.im);
    let mut solver = Dopri5::from_param(
        field,
        0.0,
        t,
        t,
        y0,
        tol,
        tol,
        0.9,
        0.04,
        0.2,
        10.0,
        MAX_STEP.min(t),
        0.0,
        100_000,
        1000,
        OutputType::Sparse,
    );
    let stats = solver
        .integrate()
        .map_err(|e| LabError::OdeFailure(format!("start {z}: {e}")))?;
    let (ts, ys) = solver.results().get();
    let t_end = *ts.last().unwrap();
    let y = ys.last().unwrap();
    let end = Complex64::new(y[0], y[1]);
    drop(solver);
    if let Some((te, m)) = escaped.get() {
        return Err(LabError::FlowEscape { start: z, t: te, modulus: m });
    }
    if (t_end - t).abs() > 1e-12 * t.max(1.0) {
        return Err(LabError::OdeFailure(format!("start {z}: stopped at t = {t_end}")));
    }
    Ok(Trajectory {
        end,
        error: tol * (1.0 + end.norm()) * (stats.accepted_steps as f64 + 1.0),
        steps: stats.accepted_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_decay_matches_exponential() {
        let f = |w: Complex64| -w;
        let z = Complex64::new(0.5, -0.3);
        let tr = integrate(&f, z, 2.0, 1e-10, 1.0 - ESCAPE_MARGIN).unwrap();
        assert!((tr.end - z * (-2.0f64).exp()).norm() < 1e-10);
    }

    #[test]
    fn outward_flow_escapes() {
        let f = |w: Complex64| w;
        let e = integrate(&f, Complex64::new(0.5, 0.0), 2.0, 1e-10, 1.0 - ESCAPE_MARGIN);
        assert!(matches!(e, Err(LabError::FlowEscape { .. })));
    }
}
