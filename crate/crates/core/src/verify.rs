//! One-shot verification suites.
//!
//! Each suite re-derives a family of inequalities or identities numerically
//! and reports a margin per check. Check entries name the statement they
//! exercise through a fixed set of lemma identifiers (see
//! [`REQUIRED_LEMMAS`] and [`ALLOWED_LEMMAS`]); the identifiers are stable
//! strings so CI can gate on individual facts.

use crate::ball::{
    self, fundamental_tone, inertia_bound_check, membrane_c_star, p11, radial_profile,
    scaled_tone, tone_for_order, OrderTone,
};
use crate::bessel::{
    recurrence_residuals, second_deriv_series_coeff, ultra_i, ultra_j, UltraIndex,
};
use crate::error::{Error, Result};
use crate::iso::{
    self, calculus_identity_check, domain_monotonicity, monotonicity_report,
    polynomial_lemma_check, quotient_bound, DirectionSampler, DomainSpec,
};
use crate::numerics::{bracket_roots, refine_root};
use crate::report::{CheckEntry, CheckStatus, VerificationReport};
use crate::rod::{
    self, degenerate_point, det_even_pos, det_odd_pos, positive_modes, trig_modes,
    zero_mode_degeneracy, Parity, ZeroDegeneracy,
};
use std::f64::consts::PI;
use std::time::Instant;

/// Lemma identifiers that must all be covered by a full run.
pub const REQUIRED_LEMMAS: &[&str] = &[
    "fact1",
    "fact2",
    "fact3",
    "fact4",
    "ijbounds",
    "propLS",
    "thm2-ordering",
    "wbounds",
    "scaling",
    "fefo",
    "negclass-degenerate",
    "zeroclass",
    "poly1",
    "poly2",
    "derivs",
    "ptwise",
    "mondenom",
    "monnum",
    "gppneg",
    "lemmaboundRC-equality",
    "monint",
    "inertiabound",
];

/// Every lemma identifier a check entry may carry.
pub const ALLOWED_LEMMAS: &[&str] = &[
    "ballBC",
    "wbounds",
    "wbounds2",
    "tau-concavity",
    "inertiabound",
    "recurrences",
    "propLS",
    "fact1",
    "fact1.5",
    "fact2",
    "fact3",
    "fact4",
    "ijbounds",
    "domination",
    "thm2-ordering",
    "scaling",
    "trialfcn",
    "gppneg",
    "lemmaboundRC-equality",
    "mondenom",
    "monnum",
    "poly1",
    "poly2",
    "monint",
    "posclass",
    "fefo",
    "zeroclass",
    "negclass-trig",
    "negclass-degenerate",
    "hyperbolic-exclusion",
    "branch-crossings",
    "derivs",
    "ptwise",
];

/// Suite selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    All,
    SpecialFunctions,
    BallSpectrum,
    RodSpectrum,
    Isoperimetric,
    /// The shared numerics have no lemma-level claims of their own.
    NumericsCore,
}

impl std::str::FromStr for Selection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "special_functions" => Ok(Self::SpecialFunctions),
            "ball_spectrum" => Ok(Self::BallSpectrum),
            "rod_spectrum" => Ok(Self::RodSpectrum),
            "isoperimetric" => Ok(Self::Isoperimetric),
            "numerics_core" => Ok(Self::NumericsCore),
            other => Err(Error::InvalidInput(format!(
                "unknown suite {other:?}; expected all | special_functions | ball_spectrum | rod_spectrum | isoperimetric | numerics_core"
            ))),
        }
    }
}

struct SuiteBuilder {
    entries: Vec<CheckEntry>,
}

impl SuiteBuilder {
    fn new() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    fn run(
        &mut self,
        check_id: &str,
        lemma: &str,
        f: impl FnOnce() -> Result<(CheckStatus, f64, f64, String)>,
    ) {
        let start = Instant::now();
        let (status, value, tolerance, detail) = match f() {
            Ok(t) => t,
            Err(e) => (CheckStatus::Fail, f64::NAN, 0.0, format!("error: {e}")),
        };
        self.entries.push(CheckEntry {
            check_id: check_id.to_string(),
            lemma: lemma.to_string(),
            status,
            value,
            tolerance,
            detail,
            runtime_ms: start.elapsed().as_millis(),
        });
    }
}

fn gate(pass: bool, value: f64, tolerance: f64, detail: String) -> (CheckStatus, f64, f64, String) {
    (
        if pass {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        value,
        tolerance,
        detail,
    )
}

// ---------------------------------------------------------------------------
// special_functions
// ---------------------------------------------------------------------------

fn sign_scan(
    d: u32,
    l: u32,
    m: u32,
    upper: f64,
    include_upper: bool,
    n: usize,
) -> Result<(f64, f64)> {
    // Returns (min, max) of j_l^(m) over n points of (0, upper).
    let idx = UltraIndex::new(d, l)?;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let steps = if include_upper { n } else { n + 1 };
    for i in 1..=n {
        let z = upper * i as f64 / steps as f64;
        let v = ultra_j(idx, m, z)?;
        min = min.min(v);
        max = max.max(v);
    }
    Ok((min, max))
}

const SIGN_SAMPLES: usize = 10_000;

fn suite_special_functions(b: &mut SuiteBuilder) {
    b.run("p11-value-d2", "propLS", || {
        let p = p11(2)?;
        Ok(gate(
            (p - 1.84118).abs() <= 1e-4,
            p,
            1e-4,
            "first zero of j_1' in d = 2 against 1.84118".into(),
        ))
    });

    b.run("p11-square-bracket", "propLS", || {
        let mut margin = f64::INFINITY;
        for d in 2..=10u32 {
            let p2 = p11(d)?.powi(2);
            margin = margin.min(p2 - d as f64).min(d as f64 + 2.0 - p2);
        }
        Ok(gate(
            margin > 0.0,
            margin,
            0.0,
            "min margin of d < p_{1,1}^2 < d+2 over d = 2..10".into(),
        ))
    });

    b.run("recurrence-consistency", "recurrences", || {
        let mut worst = 0.0f64;
        for d in [2u32, 3, 4, 5, 7, 10] {
            for l in [0u32, 1, 2, 3, 5] {
                for z in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
                    for c in recurrence_residuals(UltraIndex::new(d, l)?, z)? {
                        if c.applicable {
                            worst = worst.max(c.residual);
                        }
                    }
                }
            }
        }
        Ok(gate(
            worst <= 1e-11,
            worst,
            1e-11,
            "worst relative residual of the eight recurrences".into(),
        ))
    });

    b.run("fact1-order-positivity", "fact1", || {
        let mut min = f64::INFINITY;
        for d in 2..=10u32 {
            let p = p11(d)?;
            for l in 1..=5u32 {
                min = min.min(sign_scan(d, l, 0, p, true, SIGN_SAMPLES / 5)?.0);
            }
        }
        Ok(gate(
            min > 0.0,
            min,
            0.0,
            "min of j_l on (0, p_{1,1}], l = 1..5, d = 2..10".into(),
        ))
    });

    b.run("fact1.5-slope-positivity", "fact1.5", || {
        let mut min = f64::INFINITY;
        for d in 2..=10u32 {
            let p = p11(d)?;
            min = min.min(sign_scan(d, 1, 1, p, false, SIGN_SAMPLES)?.0);
        }
        Ok(gate(
            min > 0.0,
            min,
            0.0,
            "min of j_1' on the open interval (0, p_{1,1})".into(),
        ))
    });

    b.run("fact2-l2-slope-positivity", "fact2", || {
        let mut min = f64::INFINITY;
        for d in 2..=10u32 {
            let p = p11(d)?;
            min = min.min(sign_scan(d, 2, 1, p, true, SIGN_SAMPLES)?.0);
        }
        Ok(gate(min > 0.0, min, 0.0, "min of j_2' on (0, p_{1,1}]".into()))
    });

    b.run("fact3-concavity", "fact3", || {
        let mut max = f64::NEG_INFINITY;
        for d in 2..=10u32 {
            let p = p11(d)?;
            max = max.max(sign_scan(d, 1, 2, p, true, SIGN_SAMPLES)?.1);
        }
        Ok(gate(max < 0.0, max, 0.0, "max of j_1'' on (0, p_{1,1}]".into()))
    });

    b.run("fact4-fourth-derivative", "fact4", || {
        let mut min = f64::INFINITY;
        for d in 2..=10u32 {
            let p = p11(d)?;
            min = min.min(sign_scan(d, 1, 4, p, true, SIGN_SAMPLES)?.0);
        }
        Ok(gate(
            min > 0.0,
            min,
            0.0,
            "min of j_1'''' on (0, p_{1,1}]".into(),
        ))
    });

    b.run("ijbounds-taylor", "ijbounds", || {
        let mut margin = f64::INFINITY;
        for d in 2..=10u32 {
            let idx = UltraIndex::new(d, 1)?;
            let d1 = second_deriv_series_coeff(d, 1);
            let d2 = second_deriv_series_coeff(d, 2);
            let zj = (3.0 * (d as f64 + 2.0) / (d as f64 + 5.0)).sqrt();
            let zi = 3f64.sqrt();
            for i in 1..=2000 {
                let z = zj * i as f64 / 2000.0;
                margin = margin.min((-d1 * z + d2 * z.powi(3)) - ultra_j(idx, 2, z)?);
                let z = zi * i as f64 / 2000.0;
                margin = margin.min((d1 * z + 1.2 * d2 * z.powi(3)) - ultra_i(idx, 2, z)?);
            }
        }
        Ok(gate(
            margin >= 0.0,
            margin,
            0.0,
            "min slack of the cubic Taylor envelopes for j_1'' and i_1''".into(),
        ))
    });

    b.run("modified-dominates", "domination", || {
        let mut min = f64::INFINITY;
        for d in 2..=10u32 {
            for l in 0..=5u32 {
                let idx = UltraIndex::new(d, l)?;
                for m in 0..=4u32 {
                    for i in 1..=24 {
                        let z = 20.0 * i as f64 / 24.0;
                        min = min.min(ultra_i(idx, m, z)? - ultra_j(idx, m, z)?.abs());
                    }
                }
            }
        }
        Ok(gate(
            min > 0.0,
            min,
            0.0,
            "min of i_l^(m) - |j_l^(m)| over d, l, m and z in (0, 20]".into(),
        ))
    });
}

// ---------------------------------------------------------------------------
// ball_spectrum
// ---------------------------------------------------------------------------

const BALL_DIMS: [u32; 4] = [2, 3, 4, 5];
const BALL_TAUS: [f64; 4] = [0.1, 1.0, 10.0, 100.0];

/// Fundamental tone of the radius-R ball solved directly from the boundary
/// rows at `r = R`. This is the independent route used to validate the
/// scaling identity.
fn tone_on_radius(d: u32, tau: f64, radius: f64) -> Result<f64> {
    let idx = UltraIndex::new(d, 1)?;
    let k = idx.angular_constant();
    let det = |a: f64| -> f64 {
        let b = (a * a + tau).sqrt();
        let (ar, br) = (a * radius, b * radius);
        let eval = || -> Result<f64> {
            let j0 = ultra_j(idx, 0, ar)?;
            let j1 = ultra_j(idx, 1, ar)?;
            let j2 = ultra_j(idx, 2, ar)?;
            let i0 = ultra_i(idx, 0, br)?;
            let i1 = ultra_i(idx, 1, br)?;
            let i2 = ultra_i(idx, 2, br)?;
            let mj = a * a * j2;
            let mi = b * b * i2;
            let r2 = radius * radius;
            let vj = tau * a * j1 + k / r2 * (a * j1 - j0 / radius) + a.powi(3) * j1;
            let vi = tau * b * i1 + k / r2 * (b * i1 - i0 / radius) - b.powi(3) * i1;
            Ok(mj / mi * vi - vj)
        };
        eval().unwrap_or(f64::NAN)
    };
    let cap = p11(d)? / radius;
    let brackets = bracket_roots(&det, cap / 4000.0, cap, 4000)?;
    let first = brackets
        .first()
        .ok_or_else(|| Error::BracketNotFound(format!("no radius-{radius} root")))?;
    let a = refine_root(&det, first, 1e-12)?;
    Ok(a * a * (a * a + tau))
}

fn suite_ball(b: &mut SuiteBuilder) {
    b.run("tone-band", "wbounds", || {
        let mut margin = f64::INFINITY;
        for d in BALL_DIMS {
            let p2 = p11(d)?.powi(2);
            for tau in BALL_TAUS {
                let t = fundamental_tone(d, tau)?;
                margin = margin
                    .min((t.omega - tau * p2) / t.omega)
                    .min((tau * (d as f64 + 2.0) - t.omega) / t.omega);
            }
        }
        Ok(gate(
            margin > 0.0,
            margin,
            0.0,
            "min relative margin of tau p^2 <= omega <= tau (d+2)".into(),
        ))
    });

    b.run("angular-mode-first", "thm2-ordering", || {
        let mut margin = f64::INFINITY;
        for d in BALL_DIMS {
            for tau in BALL_TAUS {
                let t1 = fundamental_tone(d, tau)?;
                for l in [0u32, 2] {
                    if let OrderTone::Tone(t) = tone_for_order(d, l, tau)? {
                        margin = margin.min((t.omega - t1.omega) / t1.omega);
                    }
                }
            }
        }
        Ok(gate(
            margin > 0.0,
            margin,
            0.0,
            "min relative gap of the l = 0 and l = 2 roots above the l = 1 root".into(),
        ))
    });

    b.run("boundary-residuals", "ballBC", || {
        let mut worst = 0.0f64;
        for d in BALL_DIMS {
            for tau in BALL_TAUS {
                let t = fundamental_tone(d, tau)?;
                let (rm, rv) = ball::boundary_residuals(&t)?;
                let scale = t.v_scale();
                worst = worst.max(rv.abs() / scale).max(rm.abs() / scale.max(1.0));
            }
        }
        Ok(gate(
            worst <= 1e-8,
            worst,
            1e-8,
            "worst relative boundary residual at solved tones".into(),
        ))
    });

    b.run("scaling-identity", "scaling", || {
        let mut worst = 0.0f64;
        for d in [2u32, 3] {
            for s in [0.5, 2.0] {
                for tau in [1.0, 4.0] {
                    let via_scaling = scaled_tone(d, tau, s)?;
                    let direct = tone_on_radius(d, tau, s)?;
                    worst = worst.max((via_scaling - direct).abs() / via_scaling);
                }
            }
        }
        Ok(gate(
            worst <= 1e-8,
            worst,
            1e-8,
            "scaled unit-ball solve vs direct radius-R solve".into(),
        ))
    });

    b.run("membrane-limit-band", "wbounds2", || {
        let d = 2u32;
        let tau = 1e4;
        let p2 = p11(d)?.powi(2);
        let c_star = membrane_c_star(d)?;
        let ratio = fundamental_tone(d, tau)?.omega / tau;
        let above = ratio - p2;
        let pass = above > 0.0 && above <= c_star / tau;
        Ok(gate(
            pass,
            above,
            c_star / tau,
            format!("omega/tau - p^2 at tau = 1e4 with C* = {c_star:.6}"),
        ))
    });

    b.run("tone-ratio-decreasing", "tau-concavity", || {
        let mut prev = f64::INFINITY;
        let mut margin = f64::INFINITY;
        for tau in [0.1, 1.0, 10.0, 100.0, 1e4] {
            let ratio = fundamental_tone(2, tau)?.omega / tau;
            margin = margin.min(prev - ratio);
            prev = ratio;
        }
        Ok(gate(
            margin > 0.0,
            margin,
            0.0,
            "omega/tau strictly decreasing along the tension grid".into(),
        ))
    });

    b.run("curve-concavity", "tau-concavity", || {
        let res = ball::curve(2, &[1.0, 2.0, 3.0])?;
        if !res.errors.is_empty() {
            return Ok(gate(false, f64::NAN, 0.0, "curve rows failed".into()));
        }
        let w: Vec<f64> = res.rows.iter().map(|r| r.omega).collect();
        let increasing = w.windows(2).all(|p| p[0] < p[1]);
        let second = w[2] - 2.0 * w[1] + w[0];
        Ok(gate(
            increasing && second <= 1e-9 * w[2],
            second,
            1e-9 * w[2],
            "omega increasing with nonpositive second difference".into(),
        ))
    });

    b.run("inertia-bound", "inertiabound", || {
        let mut margin = f64::INFINITY;
        for d in [2u32, 3] {
            for tau in [0.01, 1.0, 100.0] {
                let c = inertia_bound_check(d, tau)?;
                margin = margin.min(c.lhs - c.rhs);
                if !c.holds {
                    return Ok(gate(false, c.lhs - c.rhs, 0.0, "bound violated".into()));
                }
            }
        }
        Ok(gate(
            margin >= 0.0,
            margin,
            0.0,
            "min of tau |B| d / omega - |B| d/(d+2)".into(),
        ))
    });
}

// ---------------------------------------------------------------------------
// rod_spectrum
// ---------------------------------------------------------------------------

fn count_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<usize> {
    Ok(bracket_roots(&f, lo, hi, 512)?.len())
}

fn suite_rod(b: &mut SuiteBuilder) {
    b.run("interlaced-windows", "fefo", || {
        let mut violations = 0usize;
        for tau in [0.5, 2.0, 10.0] {
            for k in 0..10 {
                let kf = k as f64;
                let odd = count_roots(
                    |a| det_odd_pos(tau, a).unwrap_or(f64::NAN),
                    kf * PI + 1e-9,
                    kf * PI + PI / 2.0,
                )?;
                let even = count_roots(
                    |a| det_even_pos(tau, a).unwrap_or(f64::NAN),
                    kf * PI + PI / 2.0,
                    (kf + 1.0) * PI,
                )?;
                // No strays between the windows.
                let stray_odd = count_roots(
                    |a| det_odd_pos(tau, a).unwrap_or(f64::NAN),
                    kf * PI + PI / 2.0,
                    (kf + 1.0) * PI,
                )?;
                let stray_even = count_roots(
                    |a| det_even_pos(tau, a).unwrap_or(f64::NAN),
                    kf * PI + 1e-9,
                    kf * PI + PI / 2.0,
                )?;
                if odd != 1 || even != 1 || stray_odd != 0 || stray_even != 0 {
                    violations += 1;
                }
            }
        }
        Ok(gate(
            violations == 0,
            violations as f64,
            0.0,
            "odd zeros in (k pi, k pi + pi/2), even zeros in (k pi + pi/2, (k+1) pi), k = 0..9".into(),
        ))
    });

    b.run("fundamental-mode-odd", "fefo", || {
        let mut margin = f64::INFINITY;
        for tau in [0.5, 2.0, 10.0] {
            let m = &positive_modes(tau, 1)?[0];
            if m.parity != Parity::Odd {
                return Ok(gate(false, m.a, 0.0, "first mode not odd".into()));
            }
            margin = margin.min(PI / 2.0 - m.a).min(m.a);
        }
        Ok(gate(
            margin > 0.0,
            margin,
            0.0,
            "first mode odd with a inside (0, pi/2)".into(),
        ))
    });

    b.run("vibration-residuals", "posclass", || {
        let mut worst = 0.0f64;
        for tau in [1.0, 2.0, 10.0] {
            for m in positive_modes(tau, 6)? {
                worst = worst.max(m.residual);
            }
        }
        Ok(gate(
            worst <= 1e-9,
            worst,
            1e-9,
            "worst relative boundary residual of vibration modes".into(),
        ))
    });

    b.run("degenerate-point", "negclass-degenerate", || {
        let p = degenerate_point();
        let pass = (p.a - 1.13943).abs() <= 1e-4
            && (p.tau + 2.5966).abs() <= 1e-3
            && (p.omega + 1.6856).abs() <= 1e-3
            && (p.c_over_d + 0.4174).abs() <= 1e-3;
        Ok(gate(
            pass,
            p.a,
            1e-4,
            format!(
                "a = {}, tau = {}, omega = {}, C/D = {}",
                p.a, p.tau, p.omega, p.c_over_d
            ),
        ))
    });

    b.run("zero-mode-degeneracies", "zeroclass", || {
        let mut worst = 0.0f64;
        for k in 1..=3u32 {
            let tau = -(k as f64 * PI).powi(2);
            match zero_mode_degeneracy(tau).degeneracy {
                ZeroDegeneracy::OddSine { residual, .. } => worst = worst.max(residual),
                other => {
                    return Ok(gate(
                        false,
                        f64::NAN,
                        1e-9,
                        format!("tau = {tau}: expected odd sine mode, got {other:?}"),
                    ))
                }
            }
            let tau = -((2 * k + 1) as f64 * PI / 2.0).powi(2);
            match zero_mode_degeneracy(tau).degeneracy {
                ZeroDegeneracy::EvenCosine { residual, .. } => worst = worst.max(residual),
                other => {
                    return Ok(gate(
                        false,
                        f64::NAN,
                        1e-9,
                        format!("tau = {tau}: expected even cosine mode, got {other:?}"),
                    ))
                }
            }
        }
        let clean = zero_mode_degeneracy(1.0).degeneracy == ZeroDegeneracy::None
            && zero_mode_degeneracy(-1.0).degeneracy == ZeroDegeneracy::None
            && zero_mode_degeneracy(0.0).degeneracy == ZeroDegeneracy::OddLinear;
        Ok(gate(
            clean && worst <= 1e-9,
            worst,
            1e-9,
            "translation-mode detection at the predicted compressions".into(),
        ))
    });

    b.run("branch-crossings", "branch-crossings", || {
        let mut worst = 0.0f64;
        for (tau, a_cross) in [(-10.0 * PI * PI / 4.0, PI / 2.0), (-5.0 * PI * PI, PI)] {
            let modes = trig_modes(tau, 64)?;
            let near = |parity| {
                modes
                    .iter()
                    .filter(|m| m.parity == parity)
                    .map(|m| (m.a - a_cross).abs())
                    .fold(f64::INFINITY, f64::min)
            };
            worst = worst.max(near(Parity::Odd)).max(near(Parity::Even));
        }
        Ok(gate(
            worst <= 1e-6,
            worst,
            1e-6,
            "shared odd/even roots at tau = -10 pi^2/4 and tau = -5 pi^2".into(),
        ))
    });

    b.run("compression-residuals", "negclass-trig", || {
        let mut worst = 0.0f64;
        for tau in [-PI * PI / 2.0, -12.0, -30.0] {
            for m in trig_modes(tau, 8)? {
                worst = worst.max(m.residual);
                if m.a > m.b + 1e-12 {
                    return Ok(gate(false, m.a - m.b, 0.0, "ordering a <= b violated".into()));
                }
            }
        }
        Ok(gate(
            worst <= 1e-9,
            worst,
            1e-9,
            "worst relative boundary residual of compression modes".into(),
        ))
    });

    b.run("hyperbolic-single-term-excluded", "hyperbolic-exclusion", || {
        let mut min_gap = f64::INFINITY;
        for tau in [-0.5f64, -2.0, -10.0, -25.0] {
            for i in 1..=50 {
                let b_par = 5.0 * i as f64 / 50.0;
                let a_par = (b_par * b_par + tau.abs() / 2.0).sqrt();
                let h = rod::hyperbolic_residual(tau, a_par, b_par)?;
                if !h.single_term_excluded {
                    return Ok(gate(false, h.tanh_gap, 0.0, "exclusion failed".into()));
                }
                min_gap = min_gap.min(h.tanh_gap);
            }
        }
        Ok(gate(
            min_gap > 0.0,
            min_gap,
            0.0,
            "min of (2 + 4 b^2/|tau|) - tanh^2 b over the grid".into(),
        ))
    });
}

// ---------------------------------------------------------------------------
// isoperimetric
// ---------------------------------------------------------------------------

const N_DIRS: usize = 1 << 14;

fn suite_iso(b: &mut SuiteBuilder, seed: u64) {
    b.run("ball-quotient-equality", "lemmaboundRC-equality", || {
        let mut worst = 0.0f64;
        for d in [2u32, 3] {
            let sampler = DirectionSampler::new(d, seed, N_DIRS)?;
            for tau in [1.0, 10.0] {
                let q = quotient_bound(&DomainSpec::ball(d, 1.0)?, tau, &sampler)?;
                let tol = (1e-6 * q.tone_ball).max(q.eps_mc);
                worst = worst.max(q.gap.abs() / tol.max(f64::MIN_POSITIVE));
            }
        }
        Ok(gate(
            worst <= 1.0,
            worst,
            1.0,
            "|Qhat(ball) - omega| over max(1e-6 omega, eps_mc), d = 2, 3".into(),
        ))
    });

    b.run("non-ball-strict", "monint", || {
        let sampler = DirectionSampler::new(2, seed, N_DIRS)?;
        let ellipse = DomainSpec::ellipsoid(2, vec![2f64.sqrt(), 1.0 / 2f64.sqrt()])?;
        let square = DomainSpec::cuboid(2, vec![1.0, 1.0])?;
        let mut min_excess = f64::INFINITY;
        let mut inconclusive = false;
        for spec in [&ellipse, &square] {
            for tau in [1.0, 10.0] {
                let q = quotient_bound(spec, tau, &sampler)?;
                if q.gap <= 3.0 * q.eps_mc {
                    inconclusive = true;
                }
                min_excess = min_excess.min(q.gap - 3.0 * q.eps_mc);
            }
        }
        if inconclusive {
            return Ok((
                CheckStatus::Inconclusive,
                min_excess,
                0.0,
                "gap within sampler noise; not a counterexample".into(),
            ));
        }
        Ok(gate(
            min_excess > 0.0,
            min_excess,
            0.0,
            "Qhat < omega with gap > 3 eps_mc for ellipse and square".into(),
        ))
    });

    b.run("rearrangement-directions", "monint", || {
        let sampler = DirectionSampler::new(2, seed, N_DIRS)?;
        let square = DomainSpec::cuboid(2, vec![1.0, 1.0])?;
        let m = domain_monotonicity(&square, 1.0, &sampler)?;
        let numerator_drop = m.int_n_ball - m.int_n_domain;
        let denominator_rise = m.int_rho2_domain - m.int_rho2_ball;
        Ok(gate(
            numerator_drop > 0.0 && denominator_rise > 0.0,
            numerator_drop.min(denominator_rise),
            0.0,
            "int N shrinks and int rho^2 grows replacing the square by the ball".into(),
        ))
    });

    b.run("centering-invariance", "trialfcn", || {
        let sampler = DirectionSampler::new(2, seed, N_DIRS / 4)?;
        let square = DomainSpec::cuboid(2, vec![1.0, 2.0])?;
        let q0 = quotient_bound(&square, 1.0, &sampler)?;
        let q1 = quotient_bound(&square.translated(&[0.7, -0.4])?, 1.0, &sampler)?;
        let drift = (q0.qhat - q1.qhat).abs() / q0.qhat;

        let tone = fundamental_tone(2, 1.0)?;
        let prof = radial_profile(&tone)?;
        let ball = DomainSpec::ball(2, 1.0)?.translated(&[0.3, 0.0])?;
        let v = iso::center_translate(&ball, &prof, &sampler)?;
        let off = ((v[0] - 0.3).powi(2) + v[1].powi(2)).sqrt();
        Ok(gate(
            drift <= 1e-6 && off <= 1e-6,
            drift.max(off),
            1e-6,
            "quotient invariant under pre-translation; shifted ball recenters".into(),
        ))
    });

    // Pointwise profile facts on both tension branches (tau <= 9/(d+5) and above).
    let mono_cases: [(u32, f64); 6] = [
        (2, 0.5),
        (2, 5.0),
        (3, 0.5),
        (3, 5.0),
        (5, 0.5),
        (5, 5.0),
    ];
    let reports: Vec<_> = mono_cases
        .iter()
        .filter_map(|&(d, tau)| {
            let prof = radial_profile(&fundamental_tone(d, tau).ok()?).ok()?;
            Some(((d, tau), monotonicity_report(&prof, 3.0, 2000)))
        })
        .collect();

    let item_margin = |name: &str, reports: &[((u32, f64), iso::MonotonicityReport)]| {
        let mut worst = f64::INFINITY;
        let mut all_pass = reports.len() == mono_cases.len();
        for (_, rep) in reports {
            for item in &rep.items {
                if item.name == name {
                    all_pass &= item.pass;
                    worst = worst.min(if name == "profile-concavity" {
                        -item.value
                    } else {
                        item.value
                    });
                }
            }
        }
        (all_pass, worst)
    };

    let (pass, margin) = item_margin("denominator-increasing", &reports);
    b.run("profile-square-increasing", "mondenom", move || {
        Ok(gate(
            pass && margin > 0.0,
            margin,
            0.0,
            "min of d(rho^2)/dr over d in {2,3,5}, tau in {0.5, 5}".into(),
        ))
    });

    let (pass, margin) = item_margin("numerator-partial-monotonicity", &reports);
    b.run("numerator-partial-monotonicity", "monnum", move || {
        Ok(gate(
            pass && margin > 0.0,
            margin,
            0.0,
            "min N inside the ball minus max N outside".into(),
        ))
    });

    let (pass, margin) = item_margin("inner-factor-positivity", &reports);
    b.run("inner-factor-positivity", "monnum", move || {
        Ok(gate(
            pass && margin > 0.0,
            margin,
            0.0,
            "min of 6 (rho - r rho')/r^2 + 3 rho'' + tau rho on (0, 1]".into(),
        ))
    });

    let (pass, margin) = item_margin("profile-concavity", &reports);
    b.run("profile-concavity", "gppneg", move || {
        Ok(gate(
            pass && margin > 0.0,
            margin,
            0.0,
            "-max of rho'' on (delta, 1 - delta)".into(),
        ))
    });

    b.run("ring-deficit-identity", "monnum", || {
        let mut worst = 0.0f64;
        for (d, tau) in [(2u32, 1.0f64), (3, 5.0)] {
            let prof = radial_profile(&fundamental_tone(d, tau)?)?;
            for i in 1..=400 {
                let r = i as f64 / 400.0;
                let direct = prof.ring_deficit(r);
                let via_recurrence = prof.ring_deficit_recurrence_form(r)?;
                worst = worst.max((direct - via_recurrence).abs() / direct.abs().max(1e-8));
            }
        }
        Ok(gate(
            worst <= 1e-10,
            worst,
            1e-10,
            "direct (rho - r rho')/r^2 vs three-term-recurrence rewrite".into(),
        ))
    });

    b.run("mixing-polynomial-general-d", "poly1", || {
        let rep = polynomial_lemma_check()?;
        let p_ok = ["p-nonnegative-d3-50", "g-at-7", "g-prime-at-5", "p3-critical-value"]
            .iter()
            .all(|n| rep.items.iter().any(|i| i.name == *n && i.pass));
        let min_p = rep
            .items
            .iter()
            .find(|i| i.name == "p-nonnegative-d3-50")
            .map(|i| i.value)
            .unwrap_or(f64::NAN);
        Ok(gate(
            p_ok,
            min_p,
            0.0,
            "P(x, d) >= 0 with exact spot values g(7) = 6876, g'(5) = 1875".into(),
        ))
    });

    b.run("mixing-polynomial-d2", "poly2", || {
        let rep = polynomial_lemma_check()?;
        let item = rep
            .items
            .iter()
            .find(|i| i.name == "q-positive")
            .ok_or_else(|| Error::InvalidInput("missing q-positive item".into()))?;
        Ok(gate(
            item.pass,
            item.value,
            0.0,
            "Q(x) > 0 on (0, 12/7] with a2 = p_{1,1}^2".into(),
        ))
    });

    let calc = calculus_identity_check(seed);
    let worst = calc.worst_sum_error;
    let exact = calc.pointwise_exact;
    b.run("derivative-sums", "derivs", move || {
        Ok(gate(
            worst <= 1e-6,
            worst,
            1e-6,
            "closed-form derivative sums vs finite differences, 20 samples".into(),
        ))
    });
    b.run("pointwise-hessian-identity", "ptwise", move || {
        Ok(gate(
            exact,
            if exact { 0.0 } else { 1.0 },
            0.0,
            "identity exact on random degree-4 polynomials".into(),
        ))
    });
}

/// Run the selected suites with a fixed seed.
pub fn run_suite(selection: Selection, seed: u64) -> VerificationReport {
    let mut b = SuiteBuilder::new();
    match selection {
        Selection::All => {
            suite_special_functions(&mut b);
            suite_ball(&mut b);
            suite_rod(&mut b);
            suite_iso(&mut b, seed);
        }
        Selection::SpecialFunctions => suite_special_functions(&mut b),
        Selection::BallSpectrum => suite_ball(&mut b),
        Selection::RodSpectrum => suite_rod(&mut b),
        Selection::Isoperimetric => suite_iso(&mut b, seed),
        Selection::NumericsCore => {}
    }
    VerificationReport::new(seed, b.entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn special_functions_suite_passes() {
        let rep = run_suite(Selection::SpecialFunctions, 0);
        assert!(rep.entries.len() >= 6);
        for e in &rep.entries {
            assert_eq!(e.status, CheckStatus::Pass, "{}: {}", e.check_id, e.detail);
        }
    }

    #[test]
    fn rod_suite_passes_and_carries_degenerate_value() {
        let rep = run_suite(Selection::RodSpectrum, 0);
        for e in &rep.entries {
            assert_eq!(e.status, CheckStatus::Pass, "{}: {}", e.check_id, e.detail);
        }
        let degen = rep
            .entries
            .iter()
            .find(|e| e.lemma == "negclass-degenerate")
            .unwrap();
        assert!((degen.value - 1.13943).abs() <= 1e-4);
    }

    #[test]
    fn manifest_covers_required_lemmas_once_per_check() {
        let rep = run_suite(Selection::All, 0);
        let allowed: HashSet<&str> = ALLOWED_LEMMAS.iter().copied().collect();
        let mut seen_ids = HashSet::new();
        for e in &rep.entries {
            assert!(
                allowed.contains(e.lemma.as_str()),
                "check {} maps to unknown lemma {}",
                e.check_id,
                e.lemma
            );
            assert!(seen_ids.insert(e.check_id.clone()), "duplicate {}", e.check_id);
        }
        let covered: HashSet<&str> = rep.entries.iter().map(|e| e.lemma.as_str()).collect();
        for required in REQUIRED_LEMMAS {
            assert!(covered.contains(required), "lemma {required} not covered");
        }
    }

    #[test]
    fn numerics_selection_has_no_lemma_entries() {
        let rep = run_suite(Selection::NumericsCore, 0);
        assert!(rep.entries.is_empty());
        assert!(rep.overall_pass);
    }

    #[test]
    fn selection_parses() {
        assert!("all".parse::<Selection>().is_ok());
        assert!("special_functions".parse::<Selection>().is_ok());
        assert!("bogus".parse::<Selection>().is_err());
    }
}
