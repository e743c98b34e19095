//! Tanh-sinh quadrature backend for the per-filling improper integral
//! `int_0^inf w^{-s-1} prod (w+n_a)^{-r_a} dw` on the strip `-1 < Re(s) < 0`.
//!
//! The integral is split at `w = 1`; the upper half is mapped back to (0,1)
//! by `w -> 1/w`. Both halves then have at worst algebraic endpoint
//! singularities, which the double-exponential transform
//! `x = (1 + tanh((pi/2) sinh t))/2` handles by clustering nodes
//! geometrically toward the endpoints. This backend is deliberately
//! independent of the partial-fraction series path: it evaluates the raw
//! product integrand, so agreement between the two is a genuine cross-check.

use num_complex::Complex64;

use super::pfd::MultisetGrouping;
use super::ComplexPoint;
use crate::mzv::EvalError;

/// Node budget across refinement levels.
pub(crate) const QUAD_NODE_BUDGET: usize = 1 << 20;

// Wide enough that the transformed tail is negligible even for the slowest
// admissible endpoint singularity (decay rate |Re(s)| can approach 0.05);
// cosh((pi/2) sinh T_MAX)^2 still stays inside f64 range.
const T_MAX: f64 = 6.0;

/// Integrates a complex-valued function over (0,1) to absolute tolerance.
fn tanh_sinh_01<F: Fn(f64) -> Complex64>(f: &F, abs_tol: f64) -> Result<Complex64, EvalError> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    // x(t) via the logistic form, accurate near both endpoints.
    let node = |t: f64| -> (f64, f64) {
        let u = half_pi * t.sinh();
        let x = if u >= 0.0 {
            1.0 / (1.0 + (-2.0 * u).exp())
        } else {
            (2.0 * u).exp() / (1.0 + (2.0 * u).exp())
        };
        let ch = u.cosh();
        let weight = half_pi * t.cosh() / (2.0 * ch * ch);
        (x, weight)
    };
    let eval = |t: f64, acc: &mut Complex64, nodes: &mut usize| {
        let (x, w) = node(t);
        *nodes += 1;
        if x > 0.0 && x < 1.0 && w > 0.0 {
            let v = f(x);
            if v.re.is_finite() && v.im.is_finite() {
                *acc += w * v;
            }
        }
    };

    let mut nodes = 0usize;
    // Level 0: h = 1, integer abscissas.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut t = -T_MAX;
    while t <= T_MAX + 0.5 {
        eval(t, &mut sum, &mut nodes);
        t += 1.0;
    }
    let mut h = 1.0;
    let mut prev = sum * h;
    let mut best_err = f64::INFINITY;
    for level in 1..=24 {
        h *= 0.5;
        let mut odd = Complex64::new(0.0, 0.0);
        let steps = (T_MAX / h) as i64;
        let mut j = -steps;
        while j <= steps {
            if j.rem_euclid(2) != 0 {
                eval(j as f64 * h, &mut odd, &mut nodes);
            }
            j += 1;
        }
        let current = prev * 0.5 + odd * h;
        let err = (current - prev).norm();
        if level >= 3 && err <= abs_tol {
            return Ok(current);
        }
        best_err = err;
        prev = current;
        if nodes > QUAD_NODE_BUDGET {
            break;
        }
    }
    Err(EvalError::Convergence {
        tol: abs_tol,
        nodes,
        best: best_err,
    })
}

/// `-sin(pi s)/pi * int_0^inf w^{-s-1} prod_a (w + n_a)^{-r_a} dw`,
/// evaluated numerically on the strip `-1 < Re(s) < 0`.
pub fn filling_integral_quadrature(
    g: &MultisetGrouping,
    s: &ComplexPoint,
    abs_tol: f64,
) -> Result<Complex64, EvalError> {
    let sv = s.s();
    if !(sv.re > -1.0 && sv.re < 0.0) {
        return Err(EvalError::Domain(
            "quadrature backend requires -1 < Re(s) < 0".into(),
        ));
    }
    if abs_tol.is_nan() || abs_tol <= 0.0 {
        return Err(EvalError::Config(
            "quadrature tolerance must be positive".into(),
        ));
    }
    let groups = g.groups().to_vec();
    let total_mult = g.total_multiplicity() as f64;
    let pi = std::f64::consts::PI;
    let prefactor = -(Complex64::new(pi, 0.0) * sv).sin() / pi;
    // Budget the inner tolerance against the prefactor magnitude.
    let inner_tol = abs_tol / (2.0 * prefactor.norm().max(1.0));

    // Lower half: int_0^1 w^{-s-1} prod (w+n)^{-r} dw.
    let lower = |w: f64| -> Complex64 {
        let mut p = 1.0f64;
        for &(n, r) in &groups {
            p *= (w + n as f64).powi(-(r as i32));
        }
        ((-sv - 1.0) * w.ln()).exp() * p
    };
    // Upper half after w -> 1/v: int_0^1 v^{s-1+R} prod (1 + n v)^{-r} dv.
    let upper = |v: f64| -> Complex64 {
        let mut p = 1.0f64;
        for &(n, r) in &groups {
            p *= (1.0 + n as f64 * v).powi(-(r as i32));
        }
        ((sv - 1.0 + total_mult) * v.ln()).exp() * p
    };

    let i_lower = tanh_sinh_01(&lower, inner_tol)?;
    let i_upper = tanh_sinh_01(&upper, inner_tol)?;
    Ok(prefactor * (i_lower + i_upper))
}
