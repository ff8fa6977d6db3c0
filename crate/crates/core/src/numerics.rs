//! Shared one-dimensional numerics: sign-change bracketing, bisection with
//! secant acceleration, adaptive Simpson quadrature, and Richardson-extrapolated
//! finite differences.
//!
//! Function handles are plain `Fn(f64) -> f64`; a non-finite value at any
//! abscissa is reported as an evaluation error carrying that abscissa.

use crate::error::{Error, Result};

/// A sign-change interval: `lo < hi` and `f_lo * f_hi <= 0` (the degenerate
/// equality case marks an exact grid zero).
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

fn checked(f: &impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation {
            x,
            message: format!("function returned {v}"),
        })
    }
}

/// Every sign-change bracket of `f` on the uniform grid with `grid_n`
/// subintervals over `[lo, hi]`, in increasing order. An exact grid zero is
/// returned as a degenerate bracket one grid step wide centered on it.
pub fn bracket_roots(
    f: &impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid_n: usize,
) -> Result<Vec<Bracket>> {
    if !(lo < hi) {
        return Err(Error::Domain(format!("bad interval [{lo}, {hi}]")));
    }
    if grid_n < 2 {
        return Err(Error::Domain(format!("grid_n = {grid_n} must be >= 2")));
    }
    let h = (hi - lo) / grid_n as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = checked(f, lo)?;
    for j in 1..=grid_n {
        let x = if j == grid_n { hi } else { lo + j as f64 * h };
        let fx = checked(f, x)?;
        if f_prev == 0.0 {
            // Exact zero on the grid; report a one-step window around it.
            let a = (x_prev - h / 2.0).max(lo);
            let b = (x_prev + h / 2.0).min(hi);
            out.push(Bracket {
                lo: a,
                hi: b,
                f_lo: checked(f, a)?,
                f_hi: checked(f, b)?,
            });
        } else if f_prev * fx < 0.0 {
            out.push(Bracket {
                lo: x_prev,
                hi: x,
                f_lo: f_prev,
                f_hi: fx,
            });
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        let a = (hi - h / 2.0).max(lo);
        out.push(Bracket {
            lo: a,
            hi,
            f_lo: checked(f, a)?,
            f_hi: 0.0,
        });
    }
    Ok(out)
}

/// Refine a bracketed root until the bracket is narrower than `tol`.
///
/// Bisection guarantees progress; a secant step is taken instead whenever it
/// lands strictly inside the current bracket, and every other iteration
/// bisects regardless so steep functions cannot stall the secant.
pub fn refine_root(f: &impl Fn(f64) -> f64, bracket: &Bracket, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol = {tol} must be positive")));
    }
    let (mut lo, mut hi, mut f_lo, mut f_hi) =
        (bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(lo < hi) || f_lo * f_hi > 0.0 {
        return Err(Error::Domain(format!(
            "invalid bracket [{lo}, {hi}] with f = [{f_lo}, {f_hi}]"
        )));
    }
    let mut use_secant = true;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        let x = if use_secant {
            let s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if s.is_finite() && s > lo && s < hi {
                s
            } else {
                mid
            }
        } else {
            mid
        };
        use_secant = !use_secant;
        let fx = checked(f, x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if f_lo * fx < 0.0 {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Tolerance policy for [`integrate_1d`].
#[derive(Debug, Clone, Copy)]
pub struct QuadraturePolicy {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 40,
        }
    }
}

/// Adaptive composite Simpson quadrature of `f` over `[lo, hi]`, accurate to
/// `abs_tol` against its own refinement estimate.
pub fn integrate_1d(
    f: &impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    policy: &QuadraturePolicy,
) -> Result<f64> {
    if !(policy.abs_tol > 0.0) {
        return Err(Error::Domain(format!(
            "abs_tol = {} must be positive",
            policy.abs_tol
        )));
    }
    if lo == hi {
        return Ok(0.0);
    }
    if !(lo < hi) {
        return Err(Error::Domain(format!("bad interval [{lo}, {hi}]")));
    }
    let f_lo = checked(f, lo)?;
    let f_hi = checked(f, hi)?;
    let mid = 0.5 * (lo + hi);
    let f_mid = checked(f, mid)?;
    let whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    simpson_rec(
        f,
        lo,
        f_lo,
        mid,
        f_mid,
        hi,
        f_hi,
        whole,
        policy.abs_tol,
        policy.max_depth,
    )
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &impl Fn(f64) -> f64,
    lo: f64,
    f_lo: f64,
    mid: f64,
    f_mid: f64,
    hi: f64,
    f_hi: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let lm = 0.5 * (lo + mid);
    let rm = 0.5 * (mid + hi);
    let f_lm = checked(f, lm)?;
    let f_rm = checked(f, rm)?;
    let left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
    let right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rm + f_hi);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || lm <= lo || rm >= hi {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::DepthExceeded {
            lo,
            hi,
            estimate: left + right,
            error: delta.abs() / 15.0,
        });
    }
    let a = simpson_rec(f, lo, f_lo, lm, f_lm, mid, f_mid, left, tol / 2.0, depth - 1)?;
    let b = simpson_rec(f, mid, f_mid, rm, f_rm, hi, f_hi, right, tol / 2.0, depth - 1)?;
    Ok(a + b)
}

/// A finite-difference derivative together with its internal error estimate.
#[derive(Debug, Clone, Copy)]
pub struct FdEstimate {
    pub value: f64,
    pub error_estimate: f64,
}

/// Central difference of order 1 or 2 with Richardson extrapolation over the
/// steps `h0`, `h0/2`, `h0/4`.
pub fn fd_derivative(f: &impl Fn(f64) -> f64, x: f64, order: u32, h0: f64) -> FdEstimate {
    debug_assert!(order == 1 || order == 2, "order must be 1 or 2");
    let stencil = |h: f64| match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        _ => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    };
    let d1 = stencil(h0);
    let d2 = stencil(h0 / 2.0);
    let d4 = stencil(h0 / 4.0);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    let value = (16.0 * r2 - r1) / 15.0;
    FdEstimate {
        value,
        error_estimate: (r2 - r1).abs() + 8.0 * f64::EPSILON * (1.0 + value.abs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn brackets_simple_roots() {
        let b = bracket_roots(&|x: f64| x.cos(), 1.0, 2.0, 64).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].lo < PI / 2.0 && PI / 2.0 < b[0].hi);

        let b = bracket_roots(&|x: f64| x * x - 2.0, 0.0, 2.0, 64).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].lo < 2f64.sqrt() && 2f64.sqrt() < b[0].hi);

        let b = bracket_roots(&|x: f64| x.sin(), 0.1, 9.0, 256).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].lo < PI && PI < b[0].hi);
        assert!(b[1].lo < 2.0 * PI && 2.0 * PI < b[1].hi);
    }

    #[test]
    fn exact_grid_zero_becomes_degenerate_bracket() {
        // x = 0 lies exactly on the grid.
        let b = bracket_roots(&|x: f64| x, -1.0, 1.0, 2).unwrap();
        assert_eq!(b.len(), 1);
        let r = refine_root(&|x: f64| x, &b[0], 1e-12).unwrap();
        assert!(r.abs() <= 1e-12);
    }

    #[test]
    fn refine_known_roots() {
        let b = bracket_roots(&|x: f64| x.cos(), 1.0, 2.0, 64).unwrap();
        let r = refine_root(&|x: f64| x.cos(), &b[0], 1e-12).unwrap();
        assert_relative_eq!(r, PI / 2.0, epsilon = 1e-12);

        let b = Bracket {
            lo: 1.0,
            hi: 3.0,
            f_lo: -7.0,
            f_hi: 19.0,
        };
        let r = refine_root(&|x: f64| x * x * x - 8.0, &b, 1e-12).unwrap();
        assert_relative_eq!(r, 2.0, epsilon = 1e-11);

        // Positive root of sin(2a) - 2a/3.
        let f = |a: f64| (2.0 * a).sin() - 2.0 * a / 3.0;
        let b = bracket_roots(&f, 1.0, 1.3, 64).unwrap();
        let r = refine_root(&f, &b[0], 1e-10).unwrap();
        assert!((r - 1.13943).abs() < 1e-4, "root {r}");
    }

    #[test]
    fn quadrature_examples() {
        let pol = QuadraturePolicy::default();
        let v = integrate_1d(&|r: f64| r * r, 0.0, 1.0, &pol).unwrap();
        assert_relative_eq!(v, 1.0 / 3.0, epsilon = 1e-12);
        let v = integrate_1d(&|x: f64| x.sin(), 0.0, PI, &pol).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-10);
        let v = integrate_1d(&|r: f64| r * (-r * r).exp(), 0.0, 5.0, &pol).unwrap();
        assert_relative_eq!(v, (1.0 - (-25.0f64).exp()) / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn quadrature_depth_exceeded_reports_interval() {
        let step = |x: f64| if x < 0.5 { 0.0 } else { 1.0 };
        let pol = QuadraturePolicy {
            abs_tol: 1e-14,
            max_depth: 3,
        };
        match integrate_1d(&step, 0.0, 1.0, &pol) {
            Err(Error::DepthExceeded { lo, hi, .. }) => {
                assert!(lo <= 0.5 && 0.5 <= hi);
            }
            other => panic!("expected DepthExceeded, got {other:?}"),
        }
    }

    #[test]
    fn fd_examples_and_error_bound() {
        let e = fd_derivative(&|x: f64| x * x * x, 2.0, 1, 1e-2);
        assert!((e.value - 12.0).abs() <= e.error_estimate.max(1e-10));
        let e = fd_derivative(&|x: f64| x.sin(), 0.0, 2, 1e-2);
        assert!(e.value.abs() <= e.error_estimate.max(1e-10));
        let e = fd_derivative(&|x: f64| x.exp(), 1.0, 2, 1e-2);
        assert!((e.value - 1f64.exp()).abs() <= e.error_estimate.max(1e-9));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        // Simpson is exact on cubics regardless of panel layout.
        #[test]
        fn quadrature_exact_on_cubics(c0 in -5.0f64..5.0, c1 in -5.0f64..5.0,
                                      c2 in -5.0f64..5.0, c3 in -5.0f64..5.0,
                                      a in -2.0f64..0.0, w in 0.5f64..3.0) {
            let b = a + w;
            let f = |x: f64| c0 + c1 * x + c2 * x * x + c3 * x * x * x;
            let exact = |x: f64| c0 * x + c1 * x * x / 2.0 + c2 * x * x * x / 3.0
                + c3 * x * x * x * x / 4.0;
            let v = integrate_1d(&f, a, b, &QuadraturePolicy::default()).unwrap();
            proptest::prop_assert!((v - (exact(b) - exact(a))).abs() < 1e-9);
        }

        // refine_root is invariant (to tol) under grid refinement.
        #[test]
        fn root_invariant_under_grid_refinement(r in -0.9f64..0.9, n in 8usize..100) {
            let f = move |x: f64| (x - r) * (x * x + 1.0);
            let coarse = bracket_roots(&f, -1.0, 1.0, n).unwrap();
            let fine = bracket_roots(&f, -1.0, 1.0, 16 * n).unwrap();
            proptest::prop_assert!(!coarse.is_empty() && !fine.is_empty());
            let rc = refine_root(&f, &coarse[0], 1e-12).unwrap();
            let rf = refine_root(&f, &fine[0], 1e-12).unwrap();
            proptest::prop_assert!((rc - rf).abs() <= 1e-10);
        }
    }
}
