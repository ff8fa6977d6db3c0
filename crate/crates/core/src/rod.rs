//! Spectrum of the free rod on `[-1, 1]`: `u'''' - tau u'' = omega u` with
//! natural boundary conditions `u'' = 0` and `tau u' - u''' = 0` at both ends.
//!
//! Eigenfunctions split into odd and even families. The factorization of the
//! operator, and with it the shape of the eigenfunctions, depends on the sign
//! of `omega` relative to `-tau^2/4`:
//!
//! * positive eigenvalues (any `tau`, vibration): `sin/sinh` and `cos/cosh`
//!   combinations, `omega = a^2 b^2`, `b^2 - a^2 = tau`;
//! * `omega = 0`: the constant mode always; extra translation modes at
//!   `tau = 0` and at compressions with `sin sqrt|tau| = 0` or
//!   `cos sqrt|tau| = 0`;
//! * trigonometric regime (`-tau^2/4 < omega < 0`): pure trig combinations
//!   with `a^2 + b^2 = |tau|`;
//! * degenerate regime (`omega = -tau^2/4`): a single even mode at the one
//!   compression where `sin 2a - 2a/3 = 0` has a positive root;
//! * hyperbolic regime (`omega < -tau^2/4`): only a necessary condition is
//!   known, so candidates are reported as such and never asserted.
//!
//! Determinants in the positive regime are normalized by `cosh b`
//! (positive, so sign-preserving) to stay bounded at large `b`.

use crate::error::{Error, Result};
use crate::numerics::{bracket_roots, refine_root};
use std::f64::consts::PI;

const SCAN_GRID: usize = 4000;
/// Detection threshold for zero-mode degeneracies and the degenerate-regime
/// window on tau; two orders of magnitude above root-refinement error.
const DEGENERACY_TOL: f64 = 1e-9;
const DEGENERATE_TAU_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Regime {
    Positive,
    Zero,
    Trigonometric,
    Degenerate,
    HyperbolicCandidate,
}

impl Regime {
    /// Short tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::Positive => "positive",
            Regime::Zero => "zero",
            Regime::Trigonometric => "trig",
            Regime::Degenerate => "degenerate",
            Regime::HyperbolicCandidate => "hyperbolic_candidate",
        }
    }
}

/// Ratio of the two basis coefficients of a mode; `Free` when the boundary
/// conditions leave it (or the whole pair) unconstrained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffRatio {
    Value(f64),
    Free,
}

impl serde::Serialize for CoeffRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoeffRatio::Value(v) => s.serialize_f64(*v),
            CoeffRatio::Free => s.serialize_str("free"),
        }
    }
}

impl CoeffRatio {
    pub fn value(&self) -> Option<f64> {
        match self {
            CoeffRatio::Value(v) => Some(*v),
            CoeffRatio::Free => None,
        }
    }
}

/// One eigenstate (or flagged candidate) of the free rod.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RodMode {
    pub parity: Parity,
    pub regime: Regime,
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    pub omega: f64,
    /// `B/A` (odd) or `D/C` (even) in the positive regime; `A/B` / `C/D` in
    /// the trigonometric regime; `C/D` for the degenerate mode.
    pub coeff_ratio: CoeffRatio,
    /// Largest relative boundary-condition residual of the assembled mode.
    pub residual: f64,
}

impl RodMode {
    /// Evaluate the assembled eigenfunction at `x`, with the free coefficient
    /// normalized to 1.
    pub fn eval(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        match (self.regime, self.parity) {
            (Regime::Positive, Parity::Odd) => {
                let ratio = self.coeff_ratio.value().unwrap_or(0.0);
                (a * x).sin() + ratio * (b * x).sinh()
            }
            (Regime::Positive, Parity::Even) => {
                let ratio = self.coeff_ratio.value().unwrap_or(0.0);
                (a * x).cos() + ratio * (b * x).cosh()
            }
            (Regime::Trigonometric, Parity::Odd) => {
                let ratio = self.coeff_ratio.value().unwrap_or(0.0);
                ratio * (a * x).sin() + (b * x).sin()
            }
            (Regime::Trigonometric, Parity::Even) => {
                let ratio = self.coeff_ratio.value().unwrap_or(0.0);
                ratio * (a * x).cos() + (b * x).cos()
            }
            (Regime::Degenerate, _) => {
                let ratio = self.coeff_ratio.value().unwrap_or(0.0);
                ratio * (a * x).cos() + x * (a * x).sin()
            }
            (Regime::Zero, Parity::Odd) => {
                if self.a == 0.0 {
                    x
                } else {
                    (a * x).sin()
                }
            }
            (Regime::Zero, Parity::Even) => {
                if self.a == 0.0 {
                    1.0
                } else {
                    (a * x).cos()
                }
            }
            (Regime::HyperbolicCandidate, Parity::Odd) => {
                let ratio = self.coeff_ratio.value().unwrap_or(0.0);
                ratio * (a * x).cos() * (b * x).sinh() + (a * x).sin() * (b * x).cosh()
            }
            (Regime::HyperbolicCandidate, Parity::Even) => {
                let ratio = self.coeff_ratio.value().unwrap_or(0.0);
                ratio * (a * x).sin() * (b * x).sinh() + (a * x).cos() * (b * x).cosh()
            }
        }
    }
}

fn check_positive_domain(tau: f64, a: f64) -> Result<f64> {
    let b2 = a * a + tau;
    if !(b2 > 0.0) {
        return Err(Error::Domain(format!(
            "a^2 + tau = {b2} must be positive (a = {a}, tau = {tau})"
        )));
    }
    Ok(b2.sqrt())
}

/// Odd-mode determinant `W_o(a) = a^3 sin a cosh b - b^3 cos a sinh b`,
/// normalized by `cosh b`.
pub fn det_odd_pos(tau: f64, a: f64) -> Result<f64> {
    let b = check_positive_domain(tau, a)?;
    Ok(a.powi(3) * a.sin() - b.powi(3) * a.cos() * b.tanh())
}

/// Even-mode determinant `W_e(a) = a^3 cos a sinh b + b^3 sin a cosh b`,
/// normalized by `cosh b`.
pub fn det_even_pos(tau: f64, a: f64) -> Result<f64> {
    let b = check_positive_domain(tau, a)?;
    Ok(a.powi(3) * a.cos() * b.tanh() + b.powi(3) * a.sin())
}

/// Assemble a positive-regime mode at a determinant root.
fn positive_mode(tau: f64, a: f64, parity: Parity) -> Result<RodMode> {
    let b = check_positive_domain(tau, a)?;
    let (ratio, res_v, scale) = match parity {
        Parity::Odd => {
            // B/A from the moment condition; then the remaining V condition
            // a b^2 cos a = a^2 b B cosh b has residual
            // a b^2 cos a - a^4 sin a coth(b) / b.
            let ratio = a * a * a.sin() / (b * b * b.sinh());
            let t1 = a * b * b * a.cos();
            let t2 = a.powi(4) * a.sin() / (b.tanh() * b);
            (ratio, t1 - t2, t1.abs() + t2.abs())
        }
        Parity::Even => {
            let ratio = a * a * a.cos() / (b * b * b.cosh());
            let t1 = -a * b * b * a.sin();
            let t2 = a.powi(4) * a.cos() * b.tanh() / b;
            (ratio, t1 - t2, t1.abs() + t2.abs())
        }
    };
    Ok(RodMode {
        parity,
        regime: Regime::Positive,
        tau,
        a,
        b,
        omega: a * a * (a * a + tau),
        coeff_ratio: CoeffRatio::Value(ratio),
        residual: res_v.abs() / scale.max(f64::MIN_POSITIVE),
    })
}

fn scan_parity_roots(
    det: &impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid: usize,
) -> Result<Vec<f64>> {
    let mut roots = Vec::new();
    for b in bracket_roots(det, lo, hi, grid)? {
        roots.push(refine_root(det, &b, 1e-13)?);
    }
    Ok(roots)
}

/// Positive modes for any tension, lowest first. Used by [`positive_modes`]
/// and by the branch tracer for `tau <= 0`.
fn positive_modes_any(tau: f64, count: usize) -> Result<Vec<RodMode>> {
    let a_min = if tau < 0.0 { (-tau).sqrt() } else { 0.0 };
    let span = (count as f64 / 2.0 + 2.0) * PI;
    let hi = a_min + span;
    let grid = SCAN_GRID.max(span as usize * 512);
    let lo = a_min + span / (grid as f64 * 4.0);
    let odd = scan_parity_roots(&|a| det_odd_pos(tau, a).unwrap_or(f64::NAN), lo, hi, grid)?;
    let even = scan_parity_roots(&|a| det_even_pos(tau, a).unwrap_or(f64::NAN), lo, hi, grid)?;
    let mut modes: Vec<RodMode> = Vec::new();
    for a in odd {
        modes.push(positive_mode(tau, a, Parity::Odd)?);
    }
    for a in even {
        modes.push(positive_mode(tau, a, Parity::Even)?);
    }
    modes.sort_by(|x, y| x.omega.total_cmp(&y.omega));
    modes.truncate(count);
    Ok(modes)
}

/// First `count` positive eigenvalues across both parities, sorted ascending.
/// Parities alternate starting with an odd mode whose `a` lies in
/// `(0, pi/2)`.
pub fn positive_modes(tau: f64, count: usize) -> Result<Vec<RodMode>> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("tau = {tau} must be positive")));
    }
    if count < 1 {
        return Err(Error::Domain("count must be >= 1".into()));
    }
    positive_modes_any(tau, count)
}

/// How the zero eigenvalue degenerates at a given tension.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum ZeroDegeneracy {
    /// Only the constant mode (`tau > 0` and generic `tau < 0`).
    None,
    /// `tau = 0`: the odd linear mode `u = x`.
    OddLinear,
    /// `tau < 0` with `sin sqrt|tau| = 0`: the odd mode `sin(a x)`.
    OddSine { a: f64, residual: f64 },
    /// `tau < 0` with `cos sqrt|tau| = 0`: the even mode `cos(a x)`.
    EvenCosine { a: f64, residual: f64 },
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ZeroModeClassification {
    /// The constant eigenfunction, present for every `tau`.
    pub constant_mode: bool,
    pub degeneracy: ZeroDegeneracy,
}

/// Classify `omega = 0` at tension `tau`.
pub fn zero_mode_degeneracy(tau: f64) -> ZeroModeClassification {
    let degeneracy = if tau == 0.0 {
        ZeroDegeneracy::OddLinear
    } else if tau < 0.0 {
        let a = (-tau).sqrt();
        // Relative boundary residuals of the candidate extra mode: the moment
        // condition carries sin(a) or cos(a), the shear condition a factor
        // tau + a^2, tiny by construction of a.
        let res_v = (tau + a * a).abs() / tau.abs().max(1.0);
        if a.sin().abs() <= DEGENERACY_TOL {
            ZeroDegeneracy::OddSine {
                a,
                residual: a.sin().abs().max(res_v),
            }
        } else if a.cos().abs() <= DEGENERACY_TOL {
            ZeroDegeneracy::EvenCosine {
                a,
                residual: a.cos().abs().max(res_v),
            }
        } else {
            ZeroDegeneracy::None
        }
    } else {
        ZeroDegeneracy::None
    };
    ZeroModeClassification {
        constant_mode: true,
        degeneracy,
    }
}

/// Odd trigonometric-regime determinant `a^3 sin a cos b - b^3 sin b cos a`
/// with `b = sqrt(|tau| - a^2)`.
pub fn det_odd_trig(tau: f64, a: f64) -> Result<f64> {
    let b = trig_partner(tau, a)?;
    Ok(a.powi(3) * a.sin() * b.cos() - b.powi(3) * b.sin() * a.cos())
}

/// Even trigonometric-regime determinant `b^3 cos b sin a - a^3 cos a sin b`.
pub fn det_even_trig(tau: f64, a: f64) -> Result<f64> {
    let b = trig_partner(tau, a)?;
    Ok(b.powi(3) * b.cos() * a.sin() - a.powi(3) * a.cos() * b.sin())
}

fn trig_partner(tau: f64, a: f64) -> Result<f64> {
    if !(tau < 0.0) {
        return Err(Error::Domain(format!(
            "trigonometric regime needs tau < 0, got {tau}"
        )));
    }
    let b2 = -tau - a * a;
    if !(b2 >= 0.0) {
        return Err(Error::Domain(format!(
            "a = {a} exceeds sqrt(|tau|) for tau = {tau}"
        )));
    }
    Ok(b2.sqrt())
}

fn trig_mode(tau: f64, a: f64, parity: Parity) -> Result<RodMode> {
    let b = trig_partner(tau, a)?;
    // Primary ratio from the moment condition, falling back to the shear
    // condition when the primary denominator degenerates.
    let (ratio, res, scale) = match parity {
        Parity::Odd => {
            let primary_ok = a.sin().abs() > 1e-8;
            let ratio = if primary_ok {
                -(b * b * b.sin()) / (a * a * a.sin())
            } else {
                -(a * b.cos()) / (b * a.cos())
            };
            // Remaining boundary equation with B = 1.
            let (t1, t2) = if primary_ok {
                (-a * b * b * ratio * a.cos(), -a * a * b * b.cos())
            } else {
                (-a * a * ratio * a.sin(), -b * b * b.sin())
            };
            (ratio, t1 + t2, t1.abs() + t2.abs())
        }
        Parity::Even => {
            let primary_ok = a.cos().abs() > 1e-8;
            let ratio = if primary_ok {
                -(b * b * b.cos()) / (a * a * a.cos())
            } else {
                -(a * b.sin()) / (b * a.sin())
            };
            let (t1, t2) = if primary_ok {
                (a * b * b * ratio * a.sin(), a * a * b * b.sin())
            } else {
                (-a * a * ratio * a.cos(), -b * b * b.cos())
            };
            (ratio, t1 + t2, t1.abs() + t2.abs())
        }
    };
    Ok(RodMode {
        parity,
        regime: Regime::Trigonometric,
        tau,
        a,
        b,
        omega: -a * a * b * b,
        coeff_ratio: CoeffRatio::Value(ratio),
        residual: res.abs() / scale.max(f64::MIN_POSITIVE),
    })
}

/// Trigonometric-regime modes (`-tau^2/4 < omega < 0`), at most `count`,
/// sorted by increasing eigenvalue.
///
/// The search runs over `a` strictly inside `(0, sqrt(|tau|/2))` with
/// `b = sqrt(|tau| - a^2)` so that `a <= b`; both determinants are
/// antisymmetric under the swap `a <-> b`, so no roots are lost, and their
/// structural zero at `a = b` belongs to the degenerate regime, which is
/// handled by [`degenerate_mode`].
pub fn trig_modes(tau: f64, count: usize) -> Result<Vec<RodMode>> {
    if !(tau < 0.0) {
        return Err(Error::Domain(format!("tau = {tau} must be negative")));
    }
    let a_sym = (-tau / 2.0).sqrt();
    let lo = a_sym / (SCAN_GRID as f64 + 1.0);
    let hi = a_sym * (1.0 - 1.0 / (SCAN_GRID as f64 + 1.0));
    let mut modes = Vec::new();
    for a in scan_parity_roots(&|a| det_odd_trig(tau, a).unwrap_or(f64::NAN), lo, hi, SCAN_GRID)? {
        modes.push(trig_mode(tau, a, Parity::Odd)?);
    }
    for a in scan_parity_roots(
        &|a| det_even_trig(tau, a).unwrap_or(f64::NAN),
        lo,
        hi,
        SCAN_GRID,
    )? {
        modes.push(trig_mode(tau, a, Parity::Even)?);
    }
    modes.sort_by(|x, y| x.omega.total_cmp(&y.omega));
    modes.truncate(count);
    Ok(modes)
}

/// The unique point of the degenerate regime: `a` solves `sin 2a - 2a/3 = 0`
/// with `a > 0`, and the even mode `C cos(a x) + D x sin(a x)` exists at
/// `tau = -2a^2`.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DegeneratePoint {
    pub a: f64,
    pub tau: f64,
    pub omega: f64,
    pub c_over_d: f64,
}

pub fn degenerate_point() -> DegeneratePoint {
    let f = |a: f64| (2.0 * a).sin() - 2.0 * a / 3.0;
    // The positive root lies in (1, 1.3): sin 2a crosses 2a/3 from above.
    let brackets = bracket_roots(&f, 0.5, 1.4, 512).expect("finite function");
    let a = refine_root(&f, brackets.last().expect("root near 1.14"), 1e-13)
        .expect("valid bracket");
    DegeneratePoint {
        a,
        tau: -2.0 * a * a,
        omega: -a.powi(4),
        c_over_d: (2.0 * a.cos() - a * a.sin()) / (a * a.cos()),
    }
}

/// The even degenerate-regime mode, present only when `tau` sits within
/// `1e-6` of the unique degenerate tension.
pub fn degenerate_mode(tau: f64) -> Option<RodMode> {
    if !(tau < 0.0) {
        return None;
    }
    let point = degenerate_point();
    if (tau - point.tau).abs() > DEGENERATE_TAU_WINDOW {
        return None;
    }
    let a = point.a;
    // Boundary residual of the second (shear) condition with C/D inserted.
    let res = a.powi(3) * point.c_over_d * a.sin() + a * a * a.sin() - a.powi(3) * a.cos();
    let scale = (a.powi(3) * point.c_over_d * a.sin()).abs()
        + (a * a * a.sin()).abs()
        + (a.powi(3) * a.cos()).abs();
    Some(RodMode {
        parity: Parity::Even,
        regime: Regime::Degenerate,
        tau: point.tau,
        a,
        b: a,
        omega: point.omega,
        coeff_ratio: CoeffRatio::Value(point.c_over_d),
        residual: res.abs() / scale,
    })
}

/// Determinants of the odd and even hyperbolic-regime boundary systems at a
/// consistent parameter pair (`2(b^2 - a^2) = tau`), normalized by
/// `cosh^2 b`. `single_term_excluded` reports the impossibility of the
/// one-term ansatz: `tanh^2 b < 1 < 2 + 4 b^2/|tau|` always.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct HyperbolicResidual {
    pub det_odd: f64,
    pub det_even: f64,
    pub single_term_excluded: bool,
    /// `(2 + 4 b^2/|tau|) - tanh^2 b`, strictly positive.
    pub tanh_gap: f64,
}

pub fn hyperbolic_residual(tau: f64, a: f64, b: f64) -> Result<HyperbolicResidual> {
    if !(tau < 0.0) {
        return Err(Error::Domain(format!(
            "hyperbolic regime needs tau < 0, got {tau}"
        )));
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("need a, b > 0, got a={a}, b={b}")));
    }
    let rel = 2.0 * (b * b - a * a);
    if (rel - tau).abs() > 1e-12 * tau.abs().max(1.0) {
        return Err(Error::Domain(format!(
            "inconsistent pair: 2(b^2 - a^2) = {rel} but tau = {tau}"
        )));
    }
    Ok(HyperbolicResidual {
        det_odd: hyperbolic_det(tau, a, b, Parity::Odd),
        det_even: hyperbolic_det(tau, a, b, Parity::Even),
        single_term_excluded: b.tanh().powi(2) < 2.0 + 4.0 * b * b / tau.abs(),
        tanh_gap: 2.0 + 4.0 * b * b / tau.abs() - b.tanh().powi(2),
    })
}

/// 2x2 boundary determinant of one parity, rows scaled by `1/cosh b`.
fn hyperbolic_det(tau: f64, a: f64, b: f64, parity: Parity) -> f64 {
    let (sa, ca) = a.sin_cos();
    let th = b.tanh();
    match parity {
        Parity::Odd => {
            let p = tau * ca * th - 4.0 * a * b * sa;
            let q = tau * sa + 4.0 * a * b * ca * th;
            let r = a * ca + b * sa * th;
            let s = a * sa * th - b * ca;
            p * s - q * r
        }
        Parity::Even => {
            let p = tau * sa * th + 4.0 * a * b * ca;
            let q = tau * ca - 4.0 * a * b * sa * th;
            let r = a * sa - b * ca * th;
            let s = a * ca * th + b * sa;
            p * s - q * r
        }
    }
}

/// One row of the branch table.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BranchRow {
    pub tau: f64,
    pub omega: f64,
    pub parity: Parity,
    pub regime: Regime,
    pub a: f64,
    pub b: f64,
    pub coeff_ratio: CoeffRatio,
    pub residual: f64,
}

#[derive(Debug, Default)]
pub struct BranchTable {
    pub rows: Vec<BranchRow>,
    pub errors: Vec<(f64, Error)>,
}

fn mode_row(m: &RodMode) -> BranchRow {
    BranchRow {
        tau: m.tau,
        omega: m.omega,
        parity: m.parity,
        regime: m.regime,
        a: m.a,
        b: m.b,
        coeff_ratio: m.coeff_ratio,
        residual: m.residual,
    }
}

/// Hyperbolic-regime candidate rows for one compression: sign changes of the
/// odd/even boundary determinants along `b`, with `a^2 = b^2 + |tau|/2`.
/// Necessary-condition output only.
fn hyperbolic_candidates(tau: f64, max_modes: usize) -> Vec<BranchRow> {
    let b_cap = 4.0;
    let pair = |b: f64| ((b * b + tau.abs() / 2.0).sqrt(), b);
    let mut rows = Vec::new();
    for parity in [Parity::Odd, Parity::Even] {
        let f = |b: f64| {
            let (a, b) = pair(b);
            hyperbolic_det(tau, a, b, parity)
        };
        let brackets = match bracket_roots(&f, b_cap / 800.0, b_cap, 800) {
            Ok(b) => b,
            Err(_) => continue,
        };
        for br in brackets.iter().take(max_modes) {
            if let Ok(b) = refine_root(&f, br, 1e-11) {
                let (a, b) = pair(b);
                let ratio = match parity {
                    // From the slope row: A/B = -S/R (odd), C/D = -S/R (even).
                    Parity::Odd => {
                        let r = a * a.cos() + b * a.sin() * b.tanh();
                        let s = a * a.sin() * b.tanh() - b * a.cos();
                        -s / r
                    }
                    Parity::Even => {
                        let r = a * a.sin() - b * a.cos() * b.tanh();
                        let s = a * a.cos() * b.tanh() + b * a.sin();
                        -s / r
                    }
                };
                rows.push(BranchRow {
                    tau,
                    omega: -(a * a + b * b).powi(2),
                    parity,
                    regime: Regime::HyperbolicCandidate,
                    a,
                    b,
                    coeff_ratio: CoeffRatio::Value(ratio),
                    residual: f(b).abs(),
                });
            }
        }
    }
    rows
}

/// Trace every regime over a tension grid. Each grid point contributes its
/// positive modes, the zero-mode classification, trigonometric modes and
/// hyperbolic candidates where applicable; the degenerate point is inserted
/// at its exact tension when the range covers it. Rows are ordered by
/// `(tau, omega)`; per-tension failures are collected, not fatal.
pub fn branch_curves(lo: f64, hi: f64, n_tau: usize, max_modes: usize) -> Result<BranchTable> {
    if !(lo < hi) {
        return Err(Error::Domain(format!("bad range [{lo}, {hi}]")));
    }
    if n_tau < 2 {
        return Err(Error::Domain("n_tau must be >= 2".into()));
    }
    let mut table = BranchTable::default();
    let mut taus: Vec<f64> = (0..n_tau)
        .map(|i| lo + (hi - lo) * i as f64 / (n_tau - 1) as f64)
        .collect();
    let degen = degenerate_point();
    if lo <= degen.tau && degen.tau <= hi {
        taus.push(degen.tau);
        taus.sort_by(f64::total_cmp);
    }

    for &tau in &taus {
        let mut group: Vec<BranchRow> = Vec::new();
        match positive_modes_any(tau, max_modes) {
            Ok(modes) => group.extend(modes.iter().map(mode_row)),
            Err(e) => table.errors.push((tau, e)),
        }

        let zero = zero_mode_degeneracy(tau);
        group.push(BranchRow {
            tau,
            omega: 0.0,
            parity: Parity::Even,
            regime: Regime::Zero,
            a: 0.0,
            b: 0.0,
            coeff_ratio: CoeffRatio::Free,
            residual: 0.0,
        });
        match zero.degeneracy {
            ZeroDegeneracy::None => {}
            ZeroDegeneracy::OddLinear => group.push(BranchRow {
                tau,
                omega: 0.0,
                parity: Parity::Odd,
                regime: Regime::Zero,
                a: 0.0,
                b: 0.0,
                coeff_ratio: CoeffRatio::Free,
                residual: 0.0,
            }),
            ZeroDegeneracy::OddSine { a, residual } => group.push(BranchRow {
                tau,
                omega: 0.0,
                parity: Parity::Odd,
                regime: Regime::Zero,
                a,
                b: 0.0,
                coeff_ratio: CoeffRatio::Free,
                residual,
            }),
            ZeroDegeneracy::EvenCosine { a, residual } => group.push(BranchRow {
                tau,
                omega: 0.0,
                parity: Parity::Even,
                regime: Regime::Zero,
                a,
                b: 0.0,
                coeff_ratio: CoeffRatio::Free,
                residual,
            }),
        }

        if tau < 0.0 {
            match trig_modes(tau, max_modes) {
                Ok(modes) => group.extend(modes.iter().map(mode_row)),
                Err(e) => table.errors.push((tau, e)),
            }
            if let Some(m) = degenerate_mode(tau) {
                group.push(mode_row(&m));
            }
            group.extend(hyperbolic_candidates(tau, max_modes));
        }

        group.sort_by(|x, y| x.omega.total_cmp(&y.omega));
        table.rows.extend(group);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_signs() {
        assert!(det_odd_pos(1.0, 1e-3).unwrap() < 0.0);
        assert!(det_odd_pos(1.0, PI / 2.0).unwrap() > 0.0);
        assert!(det_even_pos(1.0, PI / 4.0).unwrap() > 0.0);
        assert!(det_even_pos(1.0, 9.0 * PI / 8.0).unwrap() < 0.0);
        assert!(det_odd_pos(-4.0, 1.0).is_err());
    }

    #[test]
    fn first_positive_mode_is_odd_in_first_half_window() {
        let modes = positive_modes(1.0, 1).unwrap();
        assert_eq!(modes[0].parity, Parity::Odd);
        assert!(modes[0].a > 0.0 && modes[0].a < PI / 2.0);
    }

    #[test]
    fn parities_alternate() {
        let modes = positive_modes(1.0, 4).unwrap();
        let parities: Vec<Parity> = modes.iter().map(|m| m.parity).collect();
        assert_eq!(
            parities,
            vec![Parity::Odd, Parity::Even, Parity::Odd, Parity::Even]
        );
        for w in modes.windows(2) {
            assert!(w[0].omega < w[1].omega);
        }
    }

    #[test]
    fn interlacing_windows_hold() {
        for tau in [0.5, 2.0, 10.0] {
            for k in 0..10 {
                let kf = k as f64;
                let odd = scan_parity_roots(
                    &|a| det_odd_pos(tau, a).unwrap_or(f64::NAN),
                    kf * PI + 1e-9,
                    kf * PI + PI / 2.0,
                    256,
                )
                .unwrap();
                assert_eq!(odd.len(), 1, "tau={tau} k={k} odd roots {odd:?}");
                let even = scan_parity_roots(
                    &|a| det_even_pos(tau, a).unwrap_or(f64::NAN),
                    kf * PI + PI / 2.0,
                    (kf + 1.0) * PI,
                    256,
                )
                .unwrap();
                assert_eq!(even.len(), 1, "tau={tau} k={k} even roots {even:?}");
            }
        }
    }

    #[test]
    fn positive_mode_residuals_are_tiny() {
        for tau in [1.0, 2.0, 10.0] {
            for m in positive_modes(tau, 6).unwrap() {
                assert!(
                    m.residual <= 1e-9,
                    "tau={tau} a={} residual={}",
                    m.a,
                    m.residual
                );
            }
        }
    }

    #[test]
    fn mode_parity_is_exact() {
        let modes = positive_modes(2.0, 4).unwrap();
        for m in &modes {
            for i in 1..=100 {
                let x = i as f64 / 100.0;
                let (u, v) = (m.eval(x), m.eval(-x));
                let expect = match m.parity {
                    Parity::Odd => -u,
                    Parity::Even => u,
                };
                assert!(
                    (v - expect).abs() <= 1e-13 * u.abs().max(1.0),
                    "parity violation at x={x}"
                );
            }
        }
    }

    #[test]
    fn zero_mode_classification() {
        assert_eq!(zero_mode_degeneracy(1.0).degeneracy, ZeroDegeneracy::None);
        assert_eq!(
            zero_mode_degeneracy(0.0).degeneracy,
            ZeroDegeneracy::OddLinear
        );
        match zero_mode_degeneracy(-PI * PI).degeneracy {
            ZeroDegeneracy::OddSine { a, residual } => {
                assert!((a - PI).abs() < 1e-12);
                assert!(residual <= 1e-9);
            }
            other => panic!("expected odd sine mode, got {other:?}"),
        }
        match zero_mode_degeneracy(-PI * PI / 4.0).degeneracy {
            ZeroDegeneracy::EvenCosine { a, residual } => {
                assert!((a - PI / 2.0).abs() < 1e-12);
                assert!(residual <= 1e-9);
            }
            other => panic!("expected even cosine mode, got {other:?}"),
        }
        assert_eq!(zero_mode_degeneracy(-1.0).degeneracy, ZeroDegeneracy::None);
    }

    #[test]
    fn degenerate_point_values() {
        let p = degenerate_point();
        assert!((p.a - 1.13943).abs() < 1e-4, "a = {}", p.a);
        assert!((p.tau + 2.5966).abs() < 1e-3, "tau = {}", p.tau);
        assert!((p.omega + 1.6856).abs() < 1e-3, "omega = {}", p.omega);
        assert!((p.c_over_d + 0.4174).abs() < 1e-3, "C/D = {}", p.c_over_d);

        assert!(degenerate_mode(p.tau).is_some());
        assert!(degenerate_mode(p.tau + 1e-5).is_none());
        assert!(degenerate_mode(-1.0).is_none());
    }

    #[test]
    fn trig_modes_have_small_residuals_and_canonical_ordering() {
        let modes = trig_modes(-PI * PI / 2.0, 8).unwrap();
        for m in &modes {
            assert!(m.a <= m.b + 1e-12);
            assert!(m.residual <= 1e-9, "residual {}", m.residual);
            assert!(m.omega > -m.tau * m.tau / 4.0 && m.omega < 0.0);
        }
        // Dense-scan count agrees with a finer rescan.
        let fine = trig_modes(-PI * PI / 2.0, 64).unwrap();
        assert!(fine.len() >= modes.len());
    }

    #[test]
    fn branch_crossings_at_predicted_compressions() {
        // a = pi/2, b = 3pi/2 at tau = -10 pi^2 / 4.
        let tau = -10.0 * PI * PI / 4.0;
        let modes = trig_modes(tau, 32).unwrap();
        let odd_near = modes
            .iter()
            .find(|m| m.parity == Parity::Odd && (m.a - PI / 2.0).abs() < 1e-6);
        let even_near = modes
            .iter()
            .find(|m| m.parity == Parity::Even && (m.a - PI / 2.0).abs() < 1e-6);
        let (o, e) = (odd_near.expect("odd root"), even_near.expect("even root"));
        assert!((o.omega - e.omega).abs() <= 1e-6 * o.omega.abs());

        // a = pi, b = 2pi at tau = -5 pi^2.
        let tau = -5.0 * PI * PI;
        let modes = trig_modes(tau, 32).unwrap();
        assert!(modes
            .iter()
            .any(|m| m.parity == Parity::Odd && (m.a - PI).abs() < 1e-6));
        assert!(modes
            .iter()
            .any(|m| m.parity == Parity::Even && (m.a - PI).abs() < 1e-6));
    }

    #[test]
    fn hyperbolic_exclusion_and_finiteness() {
        for tau in [-0.5f64, -5.0, -20.0] {
            for i in 1..=10 {
                let b = i as f64 / 2.0;
                let a = (b * b + tau.abs() / 2.0).sqrt();
                let h = hyperbolic_residual(tau, a, b).unwrap();
                assert!(h.single_term_excluded);
                assert!(h.tanh_gap > 1.0);
                assert!(h.det_odd.is_finite() && h.det_even.is_finite());
            }
        }
        // Inconsistent pair is rejected.
        assert!(hyperbolic_residual(-20.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn branch_table_examples() {
        let t = branch_curves(0.5, 10.0, 5, 4).unwrap();
        assert!(t.errors.is_empty());
        for tau_group in t.rows.chunk_by(|x, y| x.tau == y.tau) {
            let pos: Vec<_> = tau_group
                .iter()
                .filter(|r| r.regime == Regime::Positive)
                .collect();
            for w in pos.windows(2) {
                assert_ne!(w[0].parity, w[1].parity, "interlacing at tau {}", w[0].tau);
            }
            assert_eq!(pos[0].parity, Parity::Odd);
        }

        let t = branch_curves(-12.0, -8.0, 5, 3).unwrap();
        assert!(t.rows.iter().all(|r| r.a.is_finite() && r.b.is_finite()));
        assert!(!t.rows.iter().any(|r| r.regime == Regime::Degenerate));

        let t = branch_curves(-3.0, -2.0, 4, 3).unwrap();
        let degen: Vec<_> = t
            .rows
            .iter()
            .filter(|r| r.regime == Regime::Degenerate)
            .collect();
        assert_eq!(degen.len(), 1);
        assert!((degen[0].tau + 2.5966).abs() < 1e-3);
    }
}
