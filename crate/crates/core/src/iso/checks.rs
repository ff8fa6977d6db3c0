//! Sampled verification of the monotonicity, polynomial-positivity and
//! calculus-identity facts behind the quotient bound.

use super::poly::MultiPoly;
use super::n_of_rho;
use crate::ball::{p11, RadialProfile};
use crate::error::Result;
use crate::numerics::fd_derivative;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One named scalar check with its pass flag.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ReportItem {
    pub name: &'static str,
    /// The decisive margin or worst error of the check.
    pub value: f64,
    pub pass: bool,
}

/// Grid report on the four pointwise properties of a radial profile:
/// increasing `rho^2`, partial monotonicity of `N[rho]` across `r = 1`,
/// strict concavity of `rho` inside the ball, and positivity of the inner
/// factor `6 (rho - r rho')/r^2 + 3 rho'' + tau rho`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MonotonicityReport {
    pub items: Vec<ReportItem>,
    pub pass: bool,
}

pub fn monotonicity_report(prof: &RadialProfile, r_max: f64, n: usize) -> MonotonicityReport {
    assert!(r_max > 1.0 && n >= 100);
    let grid = |lo: f64, hi: f64| (0..=n).map(move |i| lo + (hi - lo) * i as f64 / n as f64);

    // (i) d(rho^2)/dr = 2 rho rho' > 0 on (0, r_max].
    let min_growth = grid(r_max / n as f64, r_max)
        .map(|r| 2.0 * prof.rho(r) * prof.drho(r))
        .fold(f64::INFINITY, f64::min);

    // (ii) min of N inside the ball exceeds its sup outside.
    let min_inside = grid(1.0 / n as f64, 1.0)
        .map(|r| n_of_rho(prof, r))
        .fold(f64::INFINITY, f64::min);
    let max_outside = grid(1.0 + (r_max - 1.0) / n as f64, r_max)
        .map(|r| n_of_rho(prof, r))
        .fold(f64::NEG_INFINITY, f64::max);
    let cross_margin = min_inside - max_outside;

    // (iii) rho'' < 0 strictly inside (away from its boundary zeros).
    let delta = 1e-3;
    let max_curvature = grid(delta, 1.0 - delta)
        .map(|r| prof.ddrho(r))
        .fold(f64::NEG_INFINITY, f64::max);

    // (iv) inner factor positivity on (0, 1].
    let min_inner = grid(1.0 / n as f64, 1.0)
        .map(|r| 6.0 * prof.ring_deficit(r) + 3.0 * prof.ddrho(r) + prof.tau * prof.rho(r))
        .fold(f64::INFINITY, f64::min);

    let items = vec![
        ReportItem {
            name: "denominator-increasing",
            value: min_growth,
            pass: min_growth > 0.0,
        },
        ReportItem {
            name: "numerator-partial-monotonicity",
            value: cross_margin,
            pass: cross_margin > 0.0,
        },
        ReportItem {
            name: "profile-concavity",
            value: max_curvature,
            pass: max_curvature < 0.0,
        },
        ReportItem {
            name: "inner-factor-positivity",
            value: min_inner,
            pass: min_inner > 0.0,
        },
    ];
    let pass = items.iter().all(|i| i.pass);
    MonotonicityReport { items, pass }
}

/// `P(x, d)`: the quartic-in-`d` polynomial whose nonnegativity on
/// `(0, 3(d+2)/(d+5))` settles the small-tension mixing bound for `d >= 3`.
pub fn poly_p(x: f64, d: f64) -> f64 {
    24.0 * d.powi(4) + 60.0 * d.powi(3) - 120.0 * d * d - 432.0 * d
        + x * (-40.0 * d.powi(3) - 119.0 * d * d - 6.0 * d + 432.0)
        + x * x * (43.0 * d * d + 113.0 * d + 54.0)
        + x * x * x * (-15.0 * d - 30.0)
}

/// Lower envelope `g(d) = 24 d^4 - 60 d^3 - 477 d^2 - 855 d - 810` of
/// `P(., d)` on `[0, 3]`.
pub fn poly_g(d: f64) -> f64 {
    24.0 * d.powi(4) - 60.0 * d.powi(3) - 477.0 * d * d - 855.0 * d - 810.0
}

pub fn poly_g_prime(d: f64) -> f64 {
    96.0 * d.powi(3) - 180.0 * d * d - 954.0 * d - 855.0
}

/// `Q(x)`: the two-dimensional analogue with `a2 = p_{1,1}^2` for `d = 2`,
/// positive on `(0, 12/7]`.
pub fn poly_q(x: f64, a2: f64) -> f64 {
    (1.0 - 3.0 * x / (2.0 * a2)) * (a2 - x) * (36.0 - 5.0 * x) * (12.0 + 4.0 * x)
        - (36.0 * a2 + (6.0 * a2 - 36.0) * x) * (12.0 - 7.0 * x)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PolynomialReport {
    pub items: Vec<ReportItem>,
    pub pass: bool,
}

/// Sampled positivity of `P` and `Q` plus the exact integer spot values of
/// the envelope `g` and the interior critical value of `P(., 3)`.
pub fn polynomial_lemma_check() -> Result<PolynomialReport> {
    let n = 10_000usize;

    // P(x, d) >= 0 on the open interval (0, 3(d+2)/(d+5)), d = 3..50.
    let mut min_p = f64::INFINITY;
    for d in 3..=50u32 {
        let df = d as f64;
        let hi = 3.0 * (df + 2.0) / (df + 5.0);
        for i in 1..n {
            min_p = min_p.min(poly_p(hi * i as f64 / n as f64, df));
        }
    }

    // Q(x) > 0 on (0, 12/7]; x = 0 is a root by construction.
    let a2 = {
        let p = p11(2)?;
        p * p
    };
    let mut min_q = f64::INFINITY;
    for i in 1..=n {
        min_q = min_q.min(poly_q(12.0 / 7.0 * i as f64 / n as f64, a2));
    }

    // Exact integer values (f64 arithmetic on small integers is exact).
    let g7 = poly_g(7.0);
    let gp5 = poly_g_prime(5.0);

    // Interior critical value of P_3 on [0, 15/8]:
    // P_3(x) = 1188 - 1737 x + 780 x^2 - 75 x^3.
    let (qa, qb, qc) = (-225.0f64, 1560.0f64, -1737.0f64);
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let c = (-qb + disc) / (2.0 * qa); // smaller root of the derivative
    let crit = poly_p(c, 3.0);

    let items = vec![
        ReportItem {
            name: "p-nonnegative-d3-50",
            value: min_p,
            pass: min_p >= 0.0,
        },
        ReportItem {
            name: "q-positive",
            value: min_q,
            pass: min_q > 0.0,
        },
        ReportItem {
            name: "g-at-7",
            value: g7,
            pass: g7 == 6876.0,
        },
        ReportItem {
            name: "g-prime-at-5",
            value: gp5,
            pass: gp5 == 1875.0,
        },
        ReportItem {
            name: "p3-critical-value",
            value: crit,
            pass: c > 0.0 && c < 15.0 / 8.0 && (crit - 79.0).abs() <= 0.05 * 79.0,
        },
    ];
    let pass = items.iter().all(|i| i.pass);
    Ok(PolynomialReport { items, pass })
}

/// A smooth radial test function: cubic polynomial times a Gaussian.
#[derive(Debug, Clone, Copy)]
struct SmoothRadial {
    c: [f64; 4],
    lambda: f64,
}

impl SmoothRadial {
    fn value(&self, r: f64) -> f64 {
        let p = self.c[0] + r * (self.c[1] + r * (self.c[2] + r * self.c[3]));
        p * (-self.lambda * r * r).exp()
    }

    fn first(&self, r: f64) -> f64 {
        let p = self.c[0] + r * (self.c[1] + r * (self.c[2] + r * self.c[3]));
        let dp = self.c[1] + r * (2.0 * self.c[2] + r * 3.0 * self.c[3]);
        (dp - 2.0 * self.lambda * r * p) * (-self.lambda * r * r).exp()
    }

    fn second(&self, r: f64) -> f64 {
        let p = self.c[0] + r * (self.c[1] + r * (self.c[2] + r * self.c[3]));
        let dp = self.c[1] + r * (2.0 * self.c[2] + r * 3.0 * self.c[3]);
        let ddp = 2.0 * self.c[2] + 6.0 * self.c[3] * r;
        let l = self.lambda;
        (ddp - 4.0 * l * r * dp + (4.0 * l * l * r * r - 2.0 * l) * p)
            * (-l * r * r).exp()
    }
}

fn fd_mixed_partial(f: &impl Fn(&[f64]) -> f64, x: &[f64], i: usize, j: usize, h0: f64) -> f64 {
    let stencil = |h: f64| {
        let mut p = x.to_vec();
        let mut eval = |si: f64, sj: f64| {
            p.copy_from_slice(x);
            p[i] += si * h;
            p[j] += sj * h;
            f(&p)
        };
        (eval(1.0, 1.0) - eval(1.0, -1.0) - eval(-1.0, 1.0) + eval(-1.0, -1.0)) / (4.0 * h * h)
    };
    let m1 = stencil(h0);
    let m2 = stencil(h0 / 2.0);
    let m4 = stencil(h0 / 4.0);
    let r1 = (4.0 * m2 - m1) / 3.0;
    let r2 = (4.0 * m4 - m2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CalculusReport {
    /// Worst relative error of the four derivative sums against their
    /// finite-difference evaluation over all sampled (profile, point) pairs.
    pub worst_sum_error: f64,
    /// Whether the pointwise Hessian identity vanished coefficient-exactly
    /// on every sampled polynomial.
    pub pointwise_exact: bool,
    pub items: Vec<ReportItem>,
    pub pass: bool,
}

/// Check the closed-form derivative sums of `u_k = x_k rho(r)/r`,
///
/// ```text
/// sum |u_k|^2      = rho^2
/// sum |D u_k|^2    = (d-1) rho^2/r^2 + (rho')^2
/// sum |D^2 u_k|^2  = (rho'')^2 + 3(d-1)(rho - r rho')^2 / r^4
/// sum (lap u_k)^2  = ((d-1)(rho - r rho')/r^2 - rho'')^2
/// ```
///
/// against Richardson-extrapolated finite differences at seeded random
/// profiles and points in d = 2 and 3, and verify the pointwise identity
/// `|D^2 u|^2 = (lap |Du|^2 - 2 D(lap u) . Du) / 2` coefficient-exactly on
/// random integer polynomials of degree <= 4.
pub fn calculus_identity_check(seed: u64) -> CalculusReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;

    for trial in 0..20 {
        let d = if trial % 2 == 0 { 2usize } else { 3 };
        let rho = SmoothRadial {
            c: [
                rng.gen_range(0.5..1.5),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-0.5..0.5),
            ],
            lambda: rng.gen_range(0.2..0.8),
        };
        // A point away from the origin where rho/r is smooth.
        let mut x = vec![0.0f64; d];
        loop {
            for xi in x.iter_mut() {
                *xi = rng.gen_range(-1.0..1.0);
            }
            let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
            if (0.4..1.2).contains(&r) {
                break;
            }
        }
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();

        let (v, dv, ddv) = (rho.value(r), rho.first(r), rho.second(r));
        let dm1 = (d - 1) as f64;
        let a = v - r * dv;
        let closed = [
            v * v,
            dm1 * v * v / (r * r) + dv * dv,
            ddv * ddv + 3.0 * dm1 * a * a / r.powi(4),
            (dm1 * a / (r * r) - ddv).powi(2),
        ];

        // Finite differences of each u_k.
        let h0 = 0.02;
        let mut sums = [0.0f64; 4];
        for k in 0..d {
            let u = |p: &[f64]| {
                let rr = p.iter().map(|c| c * c).sum::<f64>().sqrt();
                p[k] * rho.value(rr) / rr
            };
            sums[0] += u(&x) * u(&x);
            let mut lap = 0.0;
            for i in 0..d {
                let xi = x.clone();
                let line = |t: f64| {
                    let mut p = xi.clone();
                    p[i] = t;
                    u(&p)
                };
                let g = fd_derivative(&line, x[i], 1, h0).value;
                sums[1] += g * g;
                let h2 = fd_derivative(&line, x[i], 2, h0).value;
                sums[2] += h2 * h2;
                lap += h2;
                for j in (i + 1)..d {
                    let m = fd_mixed_partial(&u, &x, i, j, h0);
                    sums[2] += 2.0 * m * m;
                }
            }
            sums[3] += lap * lap;
        }

        for (fd, cf) in sums.iter().zip(&closed) {
            let scale = cf.abs().max(0.05 * closed.iter().map(|c| c.abs()).sum::<f64>());
            worst = worst.max((fd - cf).abs() / scale.max(1e-12));
        }
    }

    // Pointwise Hessian identity on integer polynomials, exact.
    let mut pointwise_exact = true;
    for trial in 0..10 {
        let d = if trial % 2 == 0 { 2usize } else { 3 };
        let u = random_int_poly(&mut rng, d, 4);

        let grad: Vec<MultiPoly> = (0..d).map(|i| u.deriv(i)).collect();
        let hess_sq = {
            let mut s = MultiPoly::zero(d);
            for i in 0..d {
                for j in 0..d {
                    let hij = grad[i].deriv(j);
                    s = s.add(&hij.mul(&hij));
                }
            }
            s
        };
        let grad_sq = grad.iter().fold(MultiPoly::zero(d), |acc, g| acc.add(&g.mul(g)));
        let lap = u.laplacian();
        let mut dlap_dot_du = MultiPoly::zero(d);
        for i in 0..d {
            dlap_dot_du = dlap_dot_du.add(&lap.deriv(i).mul(&grad[i]));
        }
        let rhs = grad_sq.laplacian().sub(&dlap_dot_du.scale(2.0)).scale(0.5);
        if !hess_sq.sub(&rhs).is_zero() {
            pointwise_exact = false;
        }
    }

    let items = vec![
        ReportItem {
            name: "derivative-sums-fd",
            value: worst,
            pass: worst <= 1e-6,
        },
        ReportItem {
            name: "pointwise-hessian-identity",
            value: if pointwise_exact { 0.0 } else { 1.0 },
            pass: pointwise_exact,
        },
    ];
    let pass = items.iter().all(|i| i.pass);
    CalculusReport {
        worst_sum_error: worst,
        pointwise_exact,
        items,
        pass,
    }
}

fn random_int_poly(rng: &mut ChaCha8Rng, d: usize, max_deg: u8) -> MultiPoly {
    let mut p = MultiPoly::zero(d);
    // All monomials of total degree <= max_deg with small integer coefficients.
    let mut exps: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for e in &exps {
            let used: u8 = e.iter().sum();
            for k in 0..=(max_deg - used) {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        exps = next;
    }
    for e in exps {
        let c = rng.gen_range(-3i32..=3) as f64;
        if c != 0.0 {
            let mut term = MultiPoly::constant(d, c);
            for (i, &p_i) in e.iter().enumerate() {
                for _ in 0..p_i {
                    term = term.mul(&MultiPoly::var(d, i));
                }
            }
            p = p.add(&term);
        }
    }
    p
}
