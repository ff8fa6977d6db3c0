//! Vibration of the free plate on the unit d-ball under tension `tau > 0`.
//!
//! Eigenfunctions separate as `R(r) Y_l(theta)` with radial part
//! `R(r) = j_l(a r) + gamma i_l(b r)`, where `b^2 - a^2 = tau` and the
//! eigenvalue is `omega = a^2 b^2`. The free boundary conditions at `r = 1`,
//!
//! ```text
//! M u = u_rr = 0
//! V u = tau u_r - (1/r^2) Delta_S (u_r - u/r) - (Delta u)_r = 0
//! ```
//!
//! reduce to the vanishing of the 2x2 determinant
//!
//! ```text
//! W_l(a) = a^2 j_l''(a) (-a^2 b i_l'(b) + k (b i_l'(b) - i_l(b)))
//!        - b^2 i_l''(b) (a b^2 j_l'(a) + k (a j_l'(a) - j_l(a)))
//! ```
//!
//! with `k = l(l+d-2)`. The first root of `W_1` on `(0, p_{1,1})` gives the
//! fundamental tone; it sits below the first roots of `W_0` and `W_2`.
//!
//! `W` is always evaluated normalized by `b^2 i_l''(b)`, which is positive, so
//! the sign and root set are unchanged while the exponentially large modified
//! terms cancel even at `b ~ 100`.

use crate::bessel::{first_deriv_zero, ultra_i, ultra_j, UltraIndex};
use crate::error::{Error, Result};
use crate::numerics::{bracket_roots, refine_root};
use std::f64::consts::PI;

/// Grid resolution for determinant scans. The determinants used here have at
/// most one relevant root per pi/2-length interval, so this oversamples.
const SCAN_GRID: usize = 4000;

/// Volume of the unit ball in `d` dimensions.
pub fn unit_ball_volume(d: u32) -> f64 {
    PI.powf(d as f64 / 2.0) / crate::bessel::gamma_half(d as i64 + 2)
}

/// Surface area of the unit sphere in `R^d`.
pub fn unit_sphere_area(d: u32) -> f64 {
    d as f64 * unit_ball_volume(d)
}

/// One solved eigenstate of the ball.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BallTone {
    pub d: u32,
    pub l: u32,
    pub tau: f64,
    /// Oscillatory wavenumber, the root of the boundary determinant.
    pub a: f64,
    /// Modified wavenumber `b = sqrt(a^2 + tau)`.
    pub b: f64,
    /// Eigenvalue `omega = a^2 (a^2 + tau)`.
    pub omega: f64,
    /// Mixing constant `gamma = -a^2 j_l''(a) / (b^2 i_l''(b))`.
    pub gamma: f64,
    /// Angular constant `k = l(l+d-2)`.
    pub k: f64,
    /// Bending-moment residual at r = 1; zero by construction of gamma.
    pub residual_m: f64,
    /// Third-order boundary residual at r = 1; tiny at a true root.
    pub residual_v: f64,
}

impl BallTone {
    /// Magnitude scale of the V boundary condition, used to express
    /// `residual_v` relative to its constituent terms.
    pub fn v_scale(&self) -> f64 {
        let idx = UltraIndex {
            d: self.d,
            l: self.l,
        };
        let jp = ultra_j(idx, 1, self.a).unwrap_or(f64::NAN);
        let ip = ultra_i(idx, 1, self.b).unwrap_or(f64::NAN);
        (self.tau * self.a * jp).abs()
            + (self.a.powi(3) * jp).abs()
            + self.gamma * ((self.tau * self.b * ip).abs() + (self.b.powi(3) * ip).abs())
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!(
            "tension tau = {tau} must be positive"
        )));
    }
    Ok(())
}

struct BoundaryRows {
    mj: f64,
    mi: f64,
    vj: f64,
    vi: f64,
}

fn boundary_rows(d: u32, l: u32, tau: f64, a: f64) -> Result<BoundaryRows> {
    let idx = UltraIndex::new(d, l)?;
    let b = (a * a + tau).sqrt();
    let k = idx.angular_constant();
    let j0 = ultra_j(idx, 0, a)?;
    let j1 = ultra_j(idx, 1, a)?;
    let j2 = ultra_j(idx, 2, a)?;
    let i0 = ultra_i(idx, 0, b)?;
    let i1 = ultra_i(idx, 1, b)?;
    let i2 = ultra_i(idx, 2, b)?;
    Ok(BoundaryRows {
        mj: a * a * j2,
        mi: b * b * i2,
        vj: a * b * b * j1 + k * (a * j1 - j0),
        vi: -a * a * b * i1 + k * (b * i1 - i0),
    })
}

/// Normalized boundary determinant `W_l(a) / (b^2 i_l''(b))`.
pub fn w_det(d: u32, l: u32, tau: f64, a: f64) -> Result<f64> {
    check_tau(tau)?;
    if !(a > 0.0) {
        return Err(Error::Domain(format!("wavenumber a = {a} must be > 0")));
    }
    let rows = boundary_rows(d, l, tau, a)?;
    Ok(rows.mj / rows.mi * rows.vi - rows.vj)
}

/// First positive zero of `j_1'` for dimension `d`.
pub fn p11(d: u32) -> Result<f64> {
    first_deriv_zero(UltraIndex::new(d, 1)?)
}

fn solve_tone(d: u32, l: u32, tau: f64, a: f64) -> Result<BallTone> {
    let idx = UltraIndex::new(d, l)?;
    let b2 = a * a + tau;
    let b = b2.sqrt();
    let j2 = ultra_j(idx, 2, a)?;
    let i2 = ultra_i(idx, 2, b)?;
    let gamma = -(a * a * j2) / (b2 * i2);
    let rows = boundary_rows(d, l, tau, a)?;
    Ok(BallTone {
        d,
        l,
        tau,
        a,
        b,
        omega: a * a * b2,
        gamma,
        k: idx.angular_constant(),
        residual_m: a * a * j2 + gamma * b2 * i2,
        residual_v: rows.vj + gamma * rows.vi,
    })
}

/// First root of `W_l` on `(0, cap)`, refined to 1e-12.
fn first_root(d: u32, l: u32, tau: f64, cap: f64) -> Result<Option<f64>> {
    let f = |a: f64| w_det(d, l, tau, a).unwrap_or(f64::NAN);
    let lo = cap / SCAN_GRID as f64;
    let brackets = bracket_roots(&f, lo, cap, SCAN_GRID)?;
    match brackets.first() {
        Some(b) => Ok(Some(refine_root(&f, b, 1e-12)?)),
        None => Ok(None),
    }
}

/// Fundamental tone of the unit ball: the first root of `W_1` on
/// `(0, p_{1,1})`, packaged with its eigenstate data.
///
/// The returned eigenvalue always satisfies `tau p_{1,1}^2 <= omega <=
/// tau (d+2)`; a violation (or a missing root) is a fatal diagnostic.
pub fn fundamental_tone(d: u32, tau: f64) -> Result<BallTone> {
    check_tau(tau)?;
    let p = p11(d)?;
    let a = first_root(d, 1, tau, p)?.ok_or_else(|| {
        Error::BracketNotFound(format!(
            "no root of W_1 on (0, {p}) for d = {d}, tau = {tau}"
        ))
    })?;
    let tone = solve_tone(d, 1, tau, a)?;
    let lo = tau * p * p;
    let hi = tau * (d as f64 + 2.0);
    if !(tone.omega >= lo * (1.0 - 1e-9) && tone.omega <= hi * (1.0 + 1e-9)) {
        return Err(Error::Domain(format!(
            "fundamental tone omega = {} outside [{lo}, {hi}] for d = {d}, tau = {tau}",
            tone.omega
        )));
    }
    Ok(tone)
}

/// Lowest eigenstate of angular order `l`, searched on `(0, 3 p_{1,1})`.
/// Absence of a root below the cap is a valid outcome for `l != 1`.
#[derive(Debug, Clone, Copy)]
pub enum OrderTone {
    Tone(BallTone),
    NoRootBelowCap { cap: f64 },
}

pub fn tone_for_order(d: u32, l: u32, tau: f64) -> Result<OrderTone> {
    check_tau(tau)?;
    let cap = 3.0 * p11(d)?;
    Ok(match first_root(d, l, tau, cap)? {
        Some(a) => OrderTone::Tone(solve_tone(d, l, tau, a)?),
        None => OrderTone::NoRootBelowCap { cap },
    })
}

/// Radial part of the fundamental mode, extended linearly past `r = 1`:
/// `rho(r) = j_1(a r) + gamma i_1(b r)` on `[0, 1]`, then
/// `rho(1) + (r-1) rho'(1)` beyond. `rho(0) = 0`, `rho' > 0`, and `rho''` is
/// nonpositive on `[0, 1]` and identically zero past 1.
#[derive(Debug, Clone, Copy)]
pub struct RadialProfile {
    pub d: u32,
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    r1: f64,
    r1_slope: f64,
    /// Odd-power series coefficients: `rho(r) = sum_m alphas[m] r^{2m+1}`.
    alphas: [f64; 9],
}

/// Below this radius the near-origin quantities switch to their series forms
/// (direct evaluation of `(rho - r rho')/r^2` loses digits to cancellation).
const R_SMALL: f64 = 1e-2;

impl RadialProfile {
    pub(crate) fn raw(d: u32, tau: f64, a: f64, b: f64, gamma: f64) -> Result<Self> {
        let idx = UltraIndex::new(d, 1)?;
        let r1 = ultra_j(idx, 0, a)? + gamma * ultra_i(idx, 0, b)?;
        let r1_slope = a * ultra_j(idx, 1, a)? + gamma * b * ultra_i(idx, 1, b)?;
        let mut alphas = [0.0; 9];
        // kappa_m = 2^{1-d/2} / (m! G(m + d/2 + 1) 2^{2m+1}); the j branch
        // alternates in sign, the i branch does not.
        let mut m_fact = 1.0;
        for (m, alpha) in alphas.iter_mut().enumerate() {
            if m > 0 {
                m_fact *= m as f64;
            }
            let kappa = 2f64.powf(1.0 - d as f64 / 2.0)
                / (m_fact
                    * crate::bessel::gamma_half(2 * m as i64 + d as i64 + 2)
                    * 2f64.powi(2 * m as i32 + 1));
            let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
            *alpha = kappa * (sign * a.powi(2 * m as i32 + 1) + gamma * b.powi(2 * m as i32 + 1));
        }
        Ok(Self {
            d,
            tau,
            a,
            b,
            gamma,
            r1,
            r1_slope,
            alphas,
        })
    }

    pub fn rho(&self, r: f64) -> f64 {
        if r <= 1.0 {
            let idx = UltraIndex { d: self.d, l: 1 };
            ultra_j(idx, 0, self.a * r).unwrap_or(f64::NAN)
                + self.gamma * ultra_i(idx, 0, self.b * r).unwrap_or(f64::NAN)
        } else {
            self.r1 + (r - 1.0) * self.r1_slope
        }
    }

    pub fn drho(&self, r: f64) -> f64 {
        if r <= 1.0 {
            let idx = UltraIndex { d: self.d, l: 1 };
            self.a * ultra_j(idx, 1, self.a * r).unwrap_or(f64::NAN)
                + self.gamma * self.b * ultra_i(idx, 1, self.b * r).unwrap_or(f64::NAN)
        } else {
            self.r1_slope
        }
    }

    pub fn ddrho(&self, r: f64) -> f64 {
        if r <= 1.0 {
            let idx = UltraIndex { d: self.d, l: 1 };
            self.a * self.a * ultra_j(idx, 2, self.a * r).unwrap_or(f64::NAN)
                + self.gamma * self.b * self.b * ultra_i(idx, 2, self.b * r).unwrap_or(f64::NAN)
        } else {
            0.0
        }
    }

    /// `rho(r) / r`, finite at the origin (limit `rho'(0)`).
    pub fn rho_over_r(&self, r: f64) -> f64 {
        if r > R_SMALL {
            self.rho(r) / r
        } else {
            let r2 = r * r;
            let mut sum = 0.0;
            for alpha in self.alphas.iter().rev() {
                sum = sum * r2 + alpha;
            }
            sum
        }
    }

    /// `(rho - r rho') / r^2`. Vanishes linearly at the origin and is the
    /// constant `rho(1) - rho'(1)` over `r^2` past 1.
    pub fn ring_deficit(&self, r: f64) -> f64 {
        if r > 1.0 {
            (self.r1 - self.r1_slope) / (r * r)
        } else if r > R_SMALL {
            (self.rho(r) - r * self.drho(r)) / (r * r)
        } else {
            // rho - r rho' = sum_m -2m alphas[m] r^{2m+1}.
            let r2 = r * r;
            let mut sum = 0.0;
            for m in (1..self.alphas.len()).rev() {
                sum = sum * r2 + -2.0 * m as f64 * self.alphas[m];
            }
            sum * r
        }
    }

    /// The same quantity rewritten through the three-term recurrences,
    /// `(a^2 (j_1 + j_3)(ar) + gamma b^2 (i_3 - i_1)(br)) / (d+2)`,
    /// valid on `(0, 1]`. Kept as an independent algebraic route.
    pub fn ring_deficit_recurrence_form(&self, r: f64) -> Result<f64> {
        let j1 = ultra_j(UltraIndex { d: self.d, l: 1 }, 0, self.a * r)?;
        let j3 = ultra_j(UltraIndex { d: self.d, l: 3 }, 0, self.a * r)?;
        let i1 = ultra_i(UltraIndex { d: self.d, l: 1 }, 0, self.b * r)?;
        let i3 = ultra_i(UltraIndex { d: self.d, l: 3 }, 0, self.b * r)?;
        Ok((self.a * self.a * (j1 + j3) + self.gamma * self.b * self.b * (i3 - i1))
            / (self.d as f64 + 2.0))
    }

    /// Limit of `rho'(r)` as `r -> 0`.
    pub fn slope_at_origin(&self) -> f64 {
        self.alphas[0]
    }

    pub fn boundary_value(&self) -> f64 {
        self.r1
    }

    pub fn boundary_slope(&self) -> f64 {
        self.r1_slope
    }
}

/// Trial-function radial profile of an `l = 1` fundamental tone.
pub fn radial_profile(tone: &BallTone) -> Result<RadialProfile> {
    if tone.l != 1 {
        return Err(Error::Domain(format!(
            "radial_profile needs an l = 1 tone, got l = {}",
            tone.l
        )));
    }
    RadialProfile::raw(tone.d, tone.tau, tone.a, tone.b, tone.gamma)
}

/// Recompute both boundary residuals of a tone directly from the series.
pub fn boundary_residuals(tone: &BallTone) -> Result<(f64, f64)> {
    let rows = boundary_rows(tone.d, tone.l, tone.tau, tone.a)?;
    Ok((
        rows.mj + tone.gamma * rows.mi,
        rows.vj + tone.gamma * rows.vi,
    ))
}

/// Fundamental tone of the ball of the given radius, through the scaling
/// identity `omega(tau, B_R) = R^{-4} omega(R^2 tau, B_1)`.
pub fn scaled_tone(d: u32, tau: f64, radius: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!("radius = {radius} must be > 0")));
    }
    Ok(fundamental_tone(d, radius * radius * tau)?.omega / radius.powi(4))
}

/// One row of the tone-versus-tension table.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CurveRow {
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    pub omega: f64,
    pub gamma: f64,
}

/// Table of fundamental tones over a sorted tension grid. Per-row failures
/// are collected rather than aborting the sweep.
#[derive(Debug, Default)]
pub struct CurveResult {
    pub rows: Vec<CurveRow>,
    pub errors: Vec<(f64, Error)>,
}

pub fn curve(d: u32, tau_grid: &[f64]) -> Result<CurveResult> {
    if tau_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("tau grid must be strictly ascending".into()));
    }
    let mut out = CurveResult::default();
    for &tau in tau_grid {
        match fundamental_tone(d, tau) {
            Ok(t) => out.rows.push(CurveRow {
                tau,
                a: t.a,
                b: t.b,
                omega: t.omega,
                gamma: t.gamma,
            }),
            Err(e) => out.errors.push((tau, e)),
        }
    }
    Ok(out)
}

/// Moment-of-inertia bound on the ball: with the first `d` nontrivial tones
/// equal to the d-fold `l = 1` tone, `tau |B| d / omega >= |B| d/(d+2)`,
/// equivalently `omega <= tau (d+2)`.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct InertiaCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn inertia_bound_check(d: u32, tau: f64) -> Result<InertiaCheck> {
    let tone = fundamental_tone(d, tau)?;
    let vol = unit_ball_volume(d);
    let lhs = tau * vol * d as f64 / tone.omega;
    let rhs = vol * d as f64 / (d as f64 + 2.0);
    Ok(InertiaCheck {
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

/// Hessian-to-mass quotient of the ball's free-membrane fundamental mode
/// `v(r) = j_1(p_{1,1} r)`:
///
/// ```text
/// C* = int_0^1 ((v'')^2 + 3(d-1)(v - r v')^2 / r^4) r^{d-1} dr
///      / int_0^1 v^2 r^{d-1} dr .
/// ```
///
/// Controls the distance of `omega/tau` above `p_{1,1}^2` at large tension:
/// `p^2 <= omega/tau <= p^2 + C*/tau`.
pub fn membrane_c_star(d: u32) -> Result<f64> {
    let p = p11(d)?;
    // tau = 0, gamma = 0 leaves exactly the Hessian part of the quotient.
    let v = RadialProfile::raw(d, 0.0, p, 1.0, 0.0)?;
    let dm1 = (d - 1) as f64;
    let pow = (d - 1) as i32;
    let policy = crate::numerics::QuadraturePolicy {
        abs_tol: 1e-11,
        max_depth: 40,
    };
    let num = crate::numerics::integrate_1d(
        &|r: f64| {
            let q = v.ring_deficit(r);
            (v.ddrho(r).powi(2) + 3.0 * dm1 * q * q) * r.powi(pow)
        },
        0.0,
        1.0,
        &policy,
    )?;
    let den = crate::numerics::integrate_1d(
        &|r: f64| v.rho(r).powi(2) * r.powi(pow),
        0.0,
        1.0,
        &policy,
    )?;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn determinant_signs_match_the_root_layout() {
        // W_1 negative near a = 0, positive at a = p_{1,1}.
        assert!(w_det(2, 1, 1.0, 1e-3).unwrap() < 0.0);
        let p = p11(2).unwrap();
        assert!(w_det(2, 1, 1.0, p).unwrap() > 0.0);
        // W_0 positive on (0, p_{1,1}).
        assert!(w_det(2, 0, 1.0, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn fundamental_tone_bounds_d2() {
        let p = p11(2).unwrap();
        let t = fundamental_tone(2, 1.0).unwrap();
        assert!(t.omega > p * p && t.omega < 4.0, "omega = {}", t.omega);
        assert!(t.a < p);
        assert!(t.gamma > 0.0);
        assert_relative_eq!(t.b * t.b - t.a * t.a, 1.0, max_relative = 1e-13);
        assert_relative_eq!(t.omega, t.a * t.a * t.b * t.b, max_relative = 1e-13);
    }

    #[test]
    fn fundamental_tone_bounds_d3_tau5() {
        let p = p11(3).unwrap();
        let t = fundamental_tone(3, 5.0).unwrap();
        assert!(t.omega > 5.0 * p * p && t.omega < 25.0);
    }

    #[test]
    fn rejects_nonpositive_tension() {
        assert!(fundamental_tone(2, 0.0).is_err());
        assert!(fundamental_tone(2, -1.0).is_err());
        assert!(w_det(2, 1, -0.5, 1.0).is_err());
    }

    #[test]
    fn huge_tension_approaches_membrane() {
        let p = p11(2).unwrap();
        let t = fundamental_tone(2, 1e4).unwrap();
        let c = membrane_c_star(2).unwrap();
        let ratio = t.omega / 1e4;
        assert!(ratio > p * p, "ratio {ratio} below p^2 {}", p * p);
        assert!(
            ratio <= p * p + c / 1e4,
            "ratio {ratio} above p^2 + C*/tau = {}",
            p * p + c / 1e4
        );
    }

    #[test]
    fn order_one_root_comes_first() {
        for (d, tau) in [(2u32, 1.0f64), (4, 2.0)] {
            let t1 = fundamental_tone(d, tau).unwrap();
            for l in [0u32, 2] {
                match tone_for_order(d, l, tau).unwrap() {
                    OrderTone::Tone(t) => {
                        assert!(
                            t1.omega < t.omega,
                            "d={d} tau={tau}: omega_1={} vs omega_{l}={}",
                            t1.omega,
                            t.omega
                        );
                    }
                    OrderTone::NoRootBelowCap { .. } => {}
                }
            }
        }
        // A radial root exists below the cap for d = 2, tau = 1.
        assert!(matches!(
            tone_for_order(2, 0, 1.0).unwrap(),
            OrderTone::Tone(_)
        ));
    }

    #[test]
    fn boundary_residuals_vanish_at_root_and_react_to_perturbation() {
        for (d, tau) in [(2u32, 1.0f64), (5, 0.5)] {
            let t = fundamental_tone(d, tau).unwrap();
            let (rm, rv) = boundary_residuals(&t).unwrap();
            let scale = t.v_scale();
            assert!(rm.abs() <= 1e-10 * scale.max(1.0));
            assert!(
                rv.abs() <= 1e-8 * scale,
                "d={d} tau={tau}: |rv| = {} vs scale {scale}",
                rv.abs()
            );

            let perturbed = solve_tone(d, 1, tau, t.a * 1.01).unwrap();
            assert!(perturbed.residual_v.abs() / perturbed.v_scale() > 1e-4);
        }
    }

    #[test]
    fn profile_concavity() {
        let t = fundamental_tone(2, 1.0).unwrap();
        let p = radial_profile(&t).unwrap();
        assert!(p.ddrho(1.0).abs() < 1e-10);
        assert!(p.ddrho(0.0).abs() < 1e-12);
        assert!(p.ddrho(0.5) < 0.0);
        assert_eq!(p.rho(0.0), 0.0);
        // Interior slope exceeds the boundary slope (rho'' < 0 inside).
        assert!(p.slope_at_origin() > p.boundary_slope());
    }

    #[test]
    fn ring_deficit_routes_agree() {
        let t = fundamental_tone(3, 2.0).unwrap();
        let p = radial_profile(&t).unwrap();
        for i in 1..=200 {
            let r = i as f64 / 200.0;
            let direct = p.ring_deficit(r);
            let rec = p.ring_deficit_recurrence_form(r).unwrap();
            assert!(
                (direct - rec).abs() <= 1e-10 * direct.abs().max(1e-8),
                "r = {r}: {direct} vs {rec}"
            );
        }
    }

    #[test]
    fn scaling_identity() {
        // s = 1 is the identity.
        let t = fundamental_tone(2, 3.0).unwrap();
        assert_relative_eq!(scaled_tone(2, 3.0, 1.0).unwrap(), t.omega);
        // radius 2: omega(4, B_2) = (1/16) omega(16, B_1).
        let lhs = scaled_tone(2, 4.0, 2.0).unwrap();
        let rhs = fundamental_tone(2, 16.0).unwrap().omega / 16.0;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
        // radius 1/2: omega(1, B_{1/2}) = 16 omega(1/4, B_1).
        let lhs = scaled_tone(3, 1.0, 0.5).unwrap();
        let rhs = 16.0 * fundamental_tone(3, 0.25).unwrap().omega;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
    }

    #[test]
    fn curve_is_increasing_and_concave() {
        let res = curve(2, &[1.0, 2.0, 3.0]).unwrap();
        assert!(res.errors.is_empty());
        let w: Vec<f64> = res.rows.iter().map(|r| r.omega).collect();
        assert!(w[0] < w[1] && w[1] < w[2]);
        let second = w[2] - 2.0 * w[1] + w[0];
        assert!(second <= 1e-9 * w[2], "second difference {second}");
        let p = p11(2).unwrap();
        for row in &res.rows {
            let ratio = row.omega / row.tau;
            assert!(ratio > p * p && ratio < 4.0);
        }
    }

    #[test]
    fn inertia_bound_holds() {
        for (d, tau) in [(2u32, 1.0f64), (3, 100.0), (2, 0.01)] {
            assert!(inertia_bound_check(d, tau).unwrap().holds);
        }
    }
}
