//! Ultraspherical Bessel functions `j_l` and `i_l` for dimension `d >= 2`.
//!
//! With `s = (d-2)/2`, the functions are `j_l(z) = z^{-s} J_{s+l}(z)` and
//! `i_l(z) = z^{-s} I_{s+l}(z)`. They solve
//!
//! ```text
//! z^2 w'' + (d-1) z w' + (z^2 - l(l+d-2)) w = 0        (oscillatory)
//! z^2 w'' + (d-1) z w' - (z^2 + l(l+d-2)) w = 0        (modified)
//! ```
//!
//! and have the power series
//!
//! ```text
//! j_l(z) = sum_k (-1)^k 2^{1-d/2} / (k! G(k+d/2+l)) (z/2)^{2k+l}
//! i_l(z) = sum_k        2^{1-d/2} / (k! G(k+d/2+l)) (z/2)^{2k+l}
//! ```
//!
//! Note the `z^{-s}` factor is included: for `d = 3` the values differ from
//! the classical spherical-Bessel normalization by `sqrt(2/pi)`.
//!
//! Everything here is evaluated from those series. Derivatives (up to order
//! four) come from term-wise differentiation, never from the recurrence
//! relations, so the recurrences stay available as an independent check
//! (see [`recurrence_residuals`]). Gamma values at integer and half-integer
//! arguments are generated by upward recursion from `G(1) = 1` and
//! `G(1/2) = sqrt(pi)`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Dimension and angular order identifying one ultraspherical Bessel family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UltraIndex {
    pub d: u32,
    pub l: u32,
}

impl UltraIndex {
    pub fn new(d: u32, l: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("dimension d = {d} must be >= 2")));
        }
        Ok(Self { d, l })
    }

    /// The half-integer shift `s = (d-2)/2`.
    pub fn s(&self) -> f64 {
        (self.d as f64 - 2.0) / 2.0
    }

    /// The angular constant `k = l(l+d-2)`.
    pub fn angular_constant(&self) -> f64 {
        let l = self.l as f64;
        l * (l + self.d as f64 - 2.0)
    }
}

/// Truncation policy for the power series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesPolicy {
    /// Relative term-size threshold for truncation.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Largest supported argument. Keeps every intermediate term inside
    /// double range for the arguments the solvers produce.
    pub z_max: f64,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 400,
            z_max: 200.0,
        }
    }
}

impl SeriesPolicy {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-6) {
            return Err(Error::Domain(format!(
                "rel_tol = {} outside (0, 1e-6)",
                self.rel_tol
            )));
        }
        if self.max_terms < 50 {
            return Err(Error::Domain(format!(
                "max_terms = {} must be >= 50",
                self.max_terms
            )));
        }
        Ok(())
    }
}

/// Gamma at a positive integer or half-integer argument `two_x / 2`,
/// by upward recursion from `G(1) = 1` and `G(1/2) = sqrt(pi)`.
pub(crate) fn gamma_half(two_x: i64) -> f64 {
    debug_assert!(two_x >= 1, "gamma_half argument {two_x}/2 must be positive");
    if two_x % 2 == 0 {
        // G(n) = (n-1)!
        let n = two_x / 2;
        let mut g = 1.0;
        for i in 1..n {
            g *= i as f64;
        }
        g
    } else {
        // G(1/2 + m) = sqrt(pi) * prod_{j=0}^{m-1} (1/2 + j)
        let mut g = PI.sqrt();
        let mut num = 1i64; // runs over odd numerators 1, 3, 5, ...
        while num < two_x {
            g *= num as f64 / 2.0;
            num += 2;
        }
        g
    }
}

fn factorial(n: i64) -> f64 {
    let mut f = 1.0;
    for i in 2..=n {
        f *= i as f64;
    }
    f
}

/// Falling factorial n(n-1)...(n-m+1) as f64; zero when the product crosses 0.
fn falling(n: i64, m: u32) -> f64 {
    let mut p = 1.0;
    for j in 0..m as i64 {
        p *= (n - j) as f64;
    }
    p
}

/// Term-wise series evaluation of the m-th derivative of `j_l` (alternating
/// signs) or `i_l` (all positive). The order `l` may be -1 here; that case is
/// only reachable through the recurrence checks.
pub(crate) fn ultra_series(
    d: u32,
    l: i32,
    modified: bool,
    m: u32,
    z: f64,
    policy: &SeriesPolicy,
) -> Result<f64> {
    policy.validate()?;
    if d < 2 {
        return Err(Error::Domain(format!("dimension d = {d} must be >= 2")));
    }
    if m > 4 {
        return Err(Error::Domain(format!("derivative order {m} > 4")));
    }
    if !z.is_finite() || z < 0.0 {
        return Err(Error::Domain(format!("argument z = {z} must be >= 0")));
    }
    if z > policy.z_max {
        return Err(Error::Domain(format!(
            "argument z = {z} exceeds z_max = {}",
            policy.z_max
        )));
    }

    let lead = 2f64.powf(1.0 - d as f64 / 2.0);
    // Smallest k with a positive gamma argument k + d/2 + l. Terms before it
    // sit on gamma poles and vanish (only possible for l = -1 in d = 2).
    let k0 = {
        let num = 1 - d as i64 - 2 * l as i64;
        if num <= 0 {
            0
        } else {
            (num + 1) / 2
        }
    };

    if z == 0.0 {
        // Only the term with power 2k + l == m survives.
        let diff = m as i64 - l as i64;
        if diff < 0 || diff % 2 != 0 {
            return Ok(0.0);
        }
        let k = diff / 2;
        if k < k0 {
            return Ok(0.0);
        }
        let sign = if !modified && k % 2 == 1 { -1.0 } else { 1.0 };
        let coeff = lead / (factorial(k) * gamma_half(2 * k + d as i64 + 2 * l as i64));
        return Ok(sign * coeff * factorial(m as i64) / 2f64.powi(m as i32));
    }

    let half = z / 2.0;
    let ratio_z = half * half;
    // u_k = 2^{1-d/2} (z/2)^{2k+l} / (k! G(k+d/2+l)), maintained multiplicatively.
    let mut u = lead * half.powi((2 * k0 + l as i64) as i32)
        / (factorial(k0) * gamma_half(2 * k0 + d as i64 + 2 * l as i64));
    let mut sum = 0.0;
    let mut small_streak = 0;
    let guard = (z / 2.0).ceil() as i64;

    let mut k = k0;
    loop {
        let n = 2 * k + l as i64; // power of the k-th term
        let term = if m == 0 {
            u
        } else {
            u * falling(n, m) / z.powi(m as i32)
        };
        let signed = if !modified && k % 2 == 1 { -term } else { term };
        sum += signed;

        if term.abs() <= policy.rel_tol * sum.abs() && k >= guard {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }

        k += 1;
        if k - k0 >= policy.max_terms as i64 {
            return Err(Error::NonConvergence(format!(
                "series for (d={d}, l={l}, m={m}) at z={z} used {} terms",
                policy.max_terms
            )));
        }
        let denom = (k as f64) * ((2 * k + d as i64 + 2 * l as i64) as f64 / 2.0 - 1.0);
        u *= ratio_z / denom;
    }
}

/// `m`-th derivative of the ultraspherical Bessel function `j_l` at `z`,
/// under the default [`SeriesPolicy`].
pub fn ultra_j(idx: UltraIndex, m: u32, z: f64) -> Result<f64> {
    ultra_series(idx.d, idx.l as i32, false, m, z, &SeriesPolicy::default())
}

/// `m`-th derivative of the modified function `i_l` at `z`. All values and
/// derivatives are strictly positive for `z > 0`.
pub fn ultra_i(idx: UltraIndex, m: u32, z: f64) -> Result<f64> {
    ultra_series(idx.d, idx.l as i32, true, m, z, &SeriesPolicy::default())
}

/// As [`ultra_j`] with an explicit policy.
pub fn ultra_j_with(idx: UltraIndex, m: u32, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    ultra_series(idx.d, idx.l as i32, false, m, z, policy)
}

/// As [`ultra_i`] with an explicit policy.
pub fn ultra_i_with(idx: UltraIndex, m: u32, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    ultra_series(idx.d, idx.l as i32, true, m, z, policy)
}

/// First positive zero `p_{l,1}` of `j_l'`, to absolute tolerance `1e-12`.
///
/// Located by bracketing on a 2000-point grid over `(0, 2 sqrt(l(d+2l)))`
/// followed by bisection; the Lorch-Szego bounds put `p_{l,1}` well inside
/// that range. For `l = 1` the square satisfies `d < p_{1,1}^2 < d+2`.
pub fn first_deriv_zero(idx: UltraIndex) -> Result<f64> {
    if idx.l < 1 {
        return Err(Error::Domain(format!(
            "first_deriv_zero requires l >= 1, got l = {}",
            idx.l
        )));
    }
    let l = idx.l as f64;
    let hi = 2.0 * (l * (idx.d as f64 + 2.0 * l)).sqrt();
    let f = |z: f64| ultra_j(idx, 1, z).unwrap_or(f64::NAN);
    let brackets = crate::numerics::bracket_roots(&f, hi / 2000.0, hi, 2000)?;
    let first = brackets.first().ok_or_else(|| {
        Error::BracketNotFound(format!(
            "no sign change of j_l' for (d={}, l={}) on (0, {hi})",
            idx.d, idx.l
        ))
    })?;
    crate::numerics::refine_root(&f, first, 1e-12)
}

/// Outcome of checking one recurrence relation at a point.
#[derive(Debug, Clone, Copy)]
pub struct RecurrenceCheck {
    pub name: &'static str,
    /// False when the relation degenerates (zero left coefficient at
    /// `d = 2, l = 0`); such entries are reported but carry no residual.
    pub applicable: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / max(1, |lhs|)`.
    pub residual: f64,
}

/// Residuals of the eight first- and second-derivative recurrences at `z`,
/// with both sides evaluated through the series engine.
///
/// ```text
/// (j1)  (d-2+2l)/z j_l = j_{l-1} + j_{l+1}      (i1)  (d-2+2l)/z i_l = i_{l-1} - i_{l+1}
/// (j2)  j_l' = l/z j_l - j_{l+1}                (i2)  i_l' = l/z i_l + i_{l+1}
/// (j3)  j_l' = j_{l-1} - (l+d-2)/z j_l          (i3)  i_l' = i_{l-1} - (l+d-2)/z i_l
/// (j4)  j_l'' = ((l^2-l)/z^2 - 1) j_l + (d-1)/z j_{l+1}
/// (i4)  i_l'' = ((l^2-l)/z^2 + 1) i_l - (d-1)/z i_{l+1}
/// ```
pub fn recurrence_residuals(idx: UltraIndex, z: f64) -> Result<Vec<RecurrenceCheck>> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("recurrences need z > 0, got {z}")));
    }
    let policy = SeriesPolicy::default();
    let d = idx.d;
    let l = idx.l as i32;
    let df = d as f64;
    let lf = l as f64;

    let j = |ll: i32, m: u32| ultra_series(d, ll, false, m, z, &policy);
    let i = |ll: i32, m: u32| ultra_series(d, ll, true, m, z, &policy);

    let j_lm1 = j(l - 1, 0)?;
    let j_l = j(l, 0)?;
    let j_lp1 = j(l + 1, 0)?;
    let j_l_d1 = j(l, 1)?;
    let j_l_d2 = j(l, 2)?;
    let i_lm1 = i(l - 1, 0)?;
    let i_l = i(l, 0)?;
    let i_lp1 = i(l + 1, 0)?;
    let i_l_d1 = i(l, 1)?;
    let i_l_d2 = i(l, 2)?;

    let entry = |name, applicable, lhs: f64, rhs: f64| RecurrenceCheck {
        name,
        applicable,
        lhs,
        rhs,
        residual: if applicable {
            (lhs - rhs).abs() / lhs.abs().max(1.0)
        } else {
            0.0
        },
    };

    // (j1)/(i1) degenerate at d = 2, l = 0: the left coefficient is zero.
    let three_term_ok = !(d == 2 && l == 0);
    let c1 = (df - 2.0 + 2.0 * lf) / z;
    let c3 = (lf + df - 2.0) / z;

    Ok(vec![
        entry("j1", three_term_ok, c1 * j_l, j_lm1 + j_lp1),
        entry("j2", true, j_l_d1, lf / z * j_l - j_lp1),
        entry("j3", true, j_l_d1, j_lm1 - c3 * j_l),
        entry(
            "j4",
            true,
            j_l_d2,
            ((lf * lf - lf) / (z * z) - 1.0) * j_l + (df - 1.0) / z * j_lp1,
        ),
        entry("i1", three_term_ok, c1 * i_l, i_lm1 - i_lp1),
        entry("i2", true, i_l_d1, lf / z * i_l + i_lp1),
        entry("i3", true, i_l_d1, i_lm1 - c3 * i_l),
        entry(
            "i4",
            true,
            i_l_d2,
            ((lf * lf - lf) / (z * z) + 1.0) * i_l - (df - 1.0) / z * i_lp1,
        ),
    ])
}

/// Coefficient `d_k` of the series `i_1''(z) = sum_k d_k z^{2k-1}`
/// (and `j_1''(z) = sum_k (-1)^k d_k z^{2k-1}`).
pub fn second_deriv_series_coeff(d: u32, k: u32) -> f64 {
    let kf = k as f64;
    (2.0 * kf + 1.0) * 2f64.powf(1.0 - 2.0 * kf - d as f64 / 2.0)
        / (factorial(k as i64 - 1) * gamma_half(2 * (k as i64 + 1) + d as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_recursion_matches_known_values() {
        assert_eq!(gamma_half(2), 1.0); // G(1)
        assert_eq!(gamma_half(8), 6.0); // G(4) = 3!
        assert_relative_eq!(gamma_half(1), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half(3), PI.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(7), 15.0 / 8.0 * PI.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn leading_term_values_at_zero() {
        let idx = UltraIndex::new(2, 1).unwrap();
        assert_eq!(ultra_j(idx, 0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(ultra_j(idx, 1, 0.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_eq!(ultra_i(idx, 0, 0.0).unwrap(), 0.0);

        // i_0(0) in d = 3 is 2^{1-d/2} / G(d/2) = sqrt(2/pi).
        let idx30 = UltraIndex::new(3, 0).unwrap();
        assert_relative_eq!(
            ultra_i(idx30, 0, 0.0).unwrap(),
            (2.0 / PI).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn d2_reduces_to_classical_bessel() {
        let idx = UltraIndex::new(2, 1).unwrap();
        // J_1(1)
        assert_relative_eq!(
            ultra_j(idx, 0, 1.0).unwrap(),
            0.4400505857449335,
            max_relative = 1e-12
        );
        let idx0 = UltraIndex::new(2, 0).unwrap();
        // I_0(1)
        assert_relative_eq!(
            ultra_i(idx0, 0, 1.0).unwrap(),
            1.2660658777520084,
            max_relative = 1e-12
        );
    }

    #[test]
    fn first_deriv_zero_matches_lorch_szego_window() {
        for d in 2..=10 {
            let p = first_deriv_zero(UltraIndex::new(d, 1).unwrap()).unwrap();
            let p2 = p * p;
            assert!(
                (d as f64) < p2 && p2 < d as f64 + 2.0,
                "d = {d}: p^2 = {p2} outside (d, d+2)"
            );
        }
        let p = first_deriv_zero(UltraIndex::new(2, 1).unwrap()).unwrap();
        assert_relative_eq!(p, 1.8411837813406593, epsilon = 1e-10);
        let p3 = first_deriv_zero(UltraIndex::new(3, 1).unwrap()).unwrap();
        assert_relative_eq!(p3, 2.0815759778181, epsilon = 1e-9);
    }

    #[test]
    fn first_deriv_zero_requires_l_at_least_one() {
        assert!(matches!(
            first_deriv_zero(UltraIndex::new(3, 0).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn recurrences_hold_pointwise() {
        for (d, l, z) in [(2u32, 1u32, 1.0), (7, 3, 0.5), (4, 0, 2.0), (3, 2, 6.0)] {
            let checks = recurrence_residuals(UltraIndex::new(d, l).unwrap(), z).unwrap();
            for c in checks {
                assert!(
                    !c.applicable || c.residual <= 1e-11,
                    "(d={d}, l={l}, z={z}) {}: residual {}",
                    c.name,
                    c.residual
                );
            }
        }
    }

    #[test]
    fn degenerate_three_term_rule_is_flagged() {
        let checks = recurrence_residuals(UltraIndex::new(2, 0).unwrap(), 1e-8).unwrap();
        let j1 = checks.iter().find(|c| c.name == "j1").unwrap();
        let i1 = checks.iter().find(|c| c.name == "i1").unwrap();
        assert!(!j1.applicable && !i1.applicable);
        assert!(checks
            .iter()
            .filter(|c| c.applicable)
            .all(|c| c.residual <= 1e-11));
    }

    #[test]
    fn domain_errors() {
        let idx = UltraIndex::new(2, 1).unwrap();
        assert!(ultra_j(idx, 0, -1.0).is_err());
        assert!(ultra_j(idx, 0, 201.0).is_err());
        assert!(ultra_j(idx, 5, 1.0).is_err());
        assert!(UltraIndex::new(1, 0).is_err());
    }

    #[test]
    fn large_argument_modified_series_converges() {
        let idx = UltraIndex::new(2, 1).unwrap();
        let v = ultra_i(idx, 0, 200.0).unwrap();
        assert!(v.is_finite() && v > 1e80);
        // I_1(100) = 1.0683693903381625e42
        let v100 = ultra_i(idx, 0, 100.0).unwrap();
        assert_relative_eq!(v100, 1.0683693903381625e42, max_relative = 1e-11);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        // |j_l^(m)| <= i_l^(m), strictly for z > 0.
        #[test]
        fn domination(d in 2u32..=10, l in 0u32..=5, m in 0u32..=4,
                      z in 0.05f64..20.0) {
            let idx = UltraIndex { d, l };
            let j = ultra_j(idx, m, z).unwrap();
            let i = ultra_i(idx, m, z).unwrap();
            proptest::prop_assert!(j.abs() < i, "|j|={} i={} at d={d} l={l} m={m} z={z}", j.abs(), i);
        }
    }
}
