//! Zero location with certificates.
//!
//! Critical-line zeros of zeta come from sign changes of the Hardy
//! Z-function refined by bisection, certified against the N(T) counting
//! formula. Zeros of zeta' come from argument-principle winding counts over
//! recursively subdivided rectangles, refined by Newton and certified
//! against the winding count of the full search box.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::counting::n_of_t;
use crate::error::{Error, Result};
use crate::specfun::{hardy_z, zeta, zeta_prime, Accuracy};

/// A located critical-line zero 1/2 + i gamma with its certificates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaZero {
    pub gamma: f64,
    /// Final bisection interval length; <= 1e-9 on success.
    pub bracket_width: f64,
    /// |Z(gamma)| at the returned ordinate; <= 1e-7 on success.
    pub z_residual: f64,
}

/// A located zero of zeta' with its Newton residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaPrimeZero {
    pub beta_prime: f64,
    pub gamma_prime: f64,
    /// |zeta'(beta' + i gamma')|; <= 1e-8 on success.
    pub residual: f64,
}

/// An axis-aligned search rectangle in the s-plane.
#[derive(Debug, Clone, Copy)]
pub struct Rectangle {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rectangle {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        if !(sigma_lo < sigma_hi && t_lo < t_hi) {
            return Err(Error::Precondition(format!(
                "degenerate rectangle [{sigma_lo}, {sigma_hi}] x [{t_lo}, {t_hi}]"
            )));
        }
        Ok(Self {
            sigma_lo,
            sigma_hi,
            t_lo,
            t_hi,
        })
    }
}

/// Which function a contour or Newton operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuncId {
    Zeta,
    ZetaPrime,
}

fn eval(f: FuncId, s: Complex64, acc: Accuracy) -> Result<Complex64> {
    match f {
        FuncId::Zeta => Ok(zeta(s, acc)?.value),
        FuncId::ZetaPrime => Ok(zeta_prime(s, acc)?.value),
    }
}

/// Locate all critical-line zeros with ordinates in (t_lo, t_hi).
///
/// Completeness is certified by integer agreement with
/// N(t_hi) - N(t_lo) from the counting formula; on mismatch the scan grid
/// is refined x4 up to 3 times before giving up.
pub fn locate_critical_zeros(t_lo: f64, t_hi: f64, acc: Accuracy) -> Result<Vec<ZetaZero>> {
    if !(14.0 <= t_lo && t_lo < t_hi && t_hi <= 1e4) {
        return Err(Error::Precondition(format!(
            "locate_critical_zeros requires 14 <= t_lo < t_hi <= 1e4, got ({t_lo}, {t_hi})"
        )));
    }
    let expected = n_of_t(t_hi, acc)?.n - n_of_t(t_lo, acc)?.n;

    let mut step = 0.05;
    for _ in 0..4 {
        let zeros = scan_sign_changes(t_lo, t_hi, step, acc)?;
        if zeros.len() as i64 == expected {
            return Ok(zeros);
        }
        step /= 4.0;
    }
    let found = scan_sign_changes(t_lo, t_hi, step, acc)?.len();
    Err(Error::Completeness {
        expected,
        found,
        detail: format!("grid refined to step {step:e} on ({t_lo}, {t_hi})"),
    })
}

fn scan_sign_changes(t_lo: f64, t_hi: f64, step: f64, acc: Accuracy) -> Result<Vec<ZetaZero>> {
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let mut zeros = Vec::new();
    let mut prev_t = t_lo;
    let mut prev_z = hardy_z(prev_t, acc)?.value;
    for k in 1..=n {
        let t = t_lo + (t_hi - t_lo) * k as f64 / n as f64;
        let z = hardy_z(t, acc)?.value;
        if prev_z == 0.0 {
            // grid point exactly on a zero: treat as its own bracket
            zeros.push(ZetaZero {
                gamma: prev_t,
                bracket_width: 0.0,
                z_residual: 0.0,
            });
        } else if prev_z * z < 0.0 {
            zeros.push(bisect_z(prev_t, t, prev_z, acc)?);
        }
        prev_t = t;
        prev_z = z;
    }
    Ok(zeros)
}

fn bisect_z(mut lo: f64, mut hi: f64, z_lo: f64, acc: Accuracy) -> Result<ZetaZero> {
    let sign_lo = z_lo.signum();
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        let zm = hardy_z(mid, acc)?.value;
        if zm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if zm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma = 0.5 * (lo + hi);
    let z_residual = hardy_z(gamma, acc)?.value.abs();
    if z_residual > 1e-7 {
        return Err(Error::Accuracy {
            requested: acc.abs_tol(),
            detail: format!("|Z| = {z_residual:e} at refined ordinate {gamma}"),
        });
    }
    Ok(ZetaZero {
        gamma,
        bracket_width: hi - lo,
        z_residual,
    })
}

/// Exact winding number of `f` around the boundary of `rect`.
///
/// The contour is discretized and refined until every per-step argument
/// change is below pi/2 and the accumulated total is within 0.01 of a
/// multiple of 2 pi.
pub fn count_zeros_rectangle(f: FuncId, rect: Rectangle, acc: Accuracy) -> Result<i64> {
    let corners = [
        Complex64::new(rect.sigma_lo, rect.t_lo),
        Complex64::new(rect.sigma_hi, rect.t_lo),
        Complex64::new(rect.sigma_hi, rect.t_hi),
        Complex64::new(rect.sigma_lo, rect.t_hi),
        Complex64::new(rect.sigma_lo, rect.t_lo),
    ];
    let mut total = 0.0;
    for w in corners.windows(2) {
        total += winding_segment(f, w[0], w[1], acc, 0)?;
    }
    let turns = (total / (2.0 * PI)).round();
    if (total - 2.0 * PI * turns).abs() > 0.01 {
        return Err(Error::NonConvergentContour);
    }
    Ok(turns as i64)
}

fn winding_segment(
    f: FuncId,
    p0: Complex64,
    p1: Complex64,
    acc: Accuracy,
    depth: u32,
) -> Result<f64> {
    let len = (p1 - p0).norm();
    let n = ((len / 0.1).ceil() as usize).max(2);
    let mut total = 0.0;
    let mut prev_p = p0;
    let mut prev = checked_eval(f, p0, acc)?;
    for k in 1..=n {
        let p = p0 + (p1 - p0) * (k as f64 / n as f64);
        let cur = checked_eval(f, p, acc)?;
        let d = (cur / prev).arg();
        if d.abs() >= PI / 2.0 {
            if depth > 40 {
                return Err(Error::NonConvergentContour);
            }
            total += winding_segment(f, prev_p, p, acc, depth + 1)?;
        } else {
            total += d;
        }
        prev_p = p;
        prev = cur;
    }
    Ok(total)
}

fn checked_eval(f: FuncId, s: Complex64, acc: Accuracy) -> Result<Complex64> {
    let v = eval(f, s, acc)?;
    if v.norm() < 1e-6 {
        return Err(Error::ContourTooClose {
            min_modulus: v.norm(),
        });
    }
    Ok(v)
}

/// Newton refinement of a root of `f` from a certified seed.
///
/// The derivative is taken by central differences with step 1e-6. The
/// iterate must stay inside a 2x-inflated copy of `seed_box`.
pub fn refine_root_newton<F>(
    f: F,
    s0: Complex64,
    tol: f64,
    seed_box: Rectangle,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if tol < 1e-13 {
        return Err(Error::Precondition(format!("tol {tol:e} below 1e-13")));
    }
    let cx = 0.5 * (seed_box.sigma_lo + seed_box.sigma_hi);
    let cy = 0.5 * (seed_box.t_lo + seed_box.t_hi);
    let hw = seed_box.sigma_hi - seed_box.sigma_lo; // 2x inflation: half-width = full width
    let hh = seed_box.t_hi - seed_box.t_lo;

    let h = 1e-6;
    let mut s = s0;
    for _ in 0..50 {
        let fs = f(s)?;
        if fs.norm() <= tol {
            return Ok(s);
        }
        let d = (f(s + Complex64::new(h, 0.0))? - f(s - Complex64::new(h, 0.0))?) / (2.0 * h);
        if d.norm() < 1e-12 {
            return Err(Error::ZeroDerivative);
        }
        s -= fs / d;
        if (s.re - cx).abs() > hw || (s.im - cy).abs() > hh {
            return Err(Error::Divergence);
        }
    }
    let fs = f(s)?;
    if fs.norm() <= tol {
        Ok(s)
    } else {
        Err(Error::Divergence)
    }
}

/// Locate all zeros of zeta' in [1/2 - 1e-6, sigma_max] x [t_lo, t_hi].
///
/// Winding counts drive a recursive rectangle subdivision down to boxes of
/// side <= 0.25; each single-zero box seeds a Newton refinement. The final
/// list must match the winding count of the full box.
pub fn locate_zeta_prime_zeros(
    t_lo: f64,
    t_hi: f64,
    sigma_max: f64,
    acc: Accuracy,
) -> Result<Vec<ZetaPrimeZero>> {
    if !(14.0 <= t_lo && t_lo < t_hi && t_hi <= 1e4) {
        return Err(Error::Precondition(format!(
            "locate_zeta_prime_zeros requires 14 <= t_lo < t_hi <= 1e4, got ({t_lo}, {t_hi})"
        )));
    }
    if !(2.0..=6.0).contains(&sigma_max) {
        return Err(Error::Precondition(format!(
            "sigma_max {sigma_max} outside [2, 6]"
        )));
    }
    let sigma_lo = 0.5 - 1e-6;
    let full = count_zeros_rectangle(
        FuncId::ZetaPrime,
        Rectangle::new(sigma_lo, sigma_max, t_lo, t_hi)?,
        acc,
    )?;
    if full == 0 {
        return Ok(Vec::new());
    }

    let mut found: Vec<ZetaPrimeZero> = Vec::new();
    subdivide(sigma_lo, sigma_max, t_lo, t_hi, full, acc, &mut found)?;

    // dedupe refined roots closer than 1e-8, keeping the smaller residual
    found.sort_by(|a, b| {
        a.gamma_prime
            .total_cmp(&b.gamma_prime)
            .then(a.beta_prime.total_cmp(&b.beta_prime))
    });
    let mut dedup: Vec<ZetaPrimeZero> = Vec::new();
    for z in found {
        if let Some(last) = dedup.last_mut() {
            let dist = ((z.beta_prime - last.beta_prime).powi(2)
                + (z.gamma_prime - last.gamma_prime).powi(2))
            .sqrt();
            if dist < 1e-8 {
                if z.residual < last.residual {
                    *last = z;
                }
                continue;
            }
        }
        dedup.push(z);
    }

    if dedup.len() as i64 != full {
        return Err(Error::Completeness {
            expected: full,
            found: dedup.len(),
            detail: format!("zeta' zeros in [{sigma_lo}, {sigma_max}] x [{t_lo}, {t_hi}]"),
        });
    }
    for z in &dedup {
        if z.beta_prime < 0.5 - 1e-9 {
            return Err(Error::Precondition(format!(
                "Speiser violation: beta' = {} at gamma' = {}",
                z.beta_prime, z.gamma_prime
            )));
        }
    }
    Ok(dedup)
}

#[allow(clippy::too_many_arguments)]
fn subdivide(
    sigma_lo: f64,
    sigma_hi: f64,
    t_lo: f64,
    t_hi: f64,
    count: i64,
    acc: Accuracy,
    out: &mut Vec<ZetaPrimeZero>,
) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    let w = sigma_hi - sigma_lo;
    let h = t_hi - t_lo;
    if count == 1 && w <= 0.25 && h <= 0.25 {
        out.push(newton_in_box(sigma_lo, sigma_hi, t_lo, t_hi, acc)?);
        return Ok(());
    }
    if count > 1 && w <= 1e-3 && h <= 1e-3 {
        return Err(Error::MultiplicityUnsupported(count));
    }

    // split the longer side; nudge the cut if it lands on a zero
    let mut children = None;
    for nudge in [0.0, 0.037, -0.037, 0.083, -0.083, 0.131, 0.191] {
        let (a, b) = if w >= h {
            let cut = sigma_lo + w * (0.5 + nudge);
            (
                (sigma_lo, cut, t_lo, t_hi),
                (cut, sigma_hi, t_lo, t_hi),
            )
        } else {
            let cut = t_lo + h * (0.5 + nudge);
            (
                (sigma_lo, sigma_hi, t_lo, cut),
                (sigma_lo, sigma_hi, cut, t_hi),
            )
        };
        let ca = count_zeros_rectangle(FuncId::ZetaPrime, Rectangle::new(a.0, a.1, a.2, a.3)?, acc);
        let cb = count_zeros_rectangle(FuncId::ZetaPrime, Rectangle::new(b.0, b.1, b.2, b.3)?, acc);
        match (ca, cb) {
            (Ok(ca), Ok(cb)) if ca + cb == count => {
                children = Some((a, ca, b, cb));
                break;
            }
            (Err(Error::ContourTooClose { .. }), _)
            | (_, Err(Error::ContourTooClose { .. }))
            | (Err(Error::NonConvergentContour), _)
            | (_, Err(Error::NonConvergentContour)) => continue,
            (Ok(_), Ok(_)) => continue, // inconsistent split, try another cut
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    let Some((a, ca, b, cb)) = children else {
        return Err(Error::NonConvergentContour);
    };
    subdivide(a.0, a.1, a.2, a.3, ca, acc, out)?;
    subdivide(b.0, b.1, b.2, b.3, cb, acc, out)
}

fn newton_in_box(
    sigma_lo: f64,
    sigma_hi: f64,
    t_lo: f64,
    t_hi: f64,
    acc: Accuracy,
) -> Result<ZetaPrimeZero> {
    let f = |s: Complex64| -> Result<Complex64> { Ok(zeta_prime(s, acc)?.value) };
    let seed_box = Rectangle::new(sigma_lo, sigma_hi, t_lo, t_hi)?;
    let center = Complex64::new(0.5 * (sigma_lo + sigma_hi), 0.5 * (t_lo + t_hi));
    // a few jittered starts in case the center sits on a bad Newton basin
    let jitters = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.3 * (sigma_hi - sigma_lo), 0.0),
        Complex64::new(0.0, 0.3 * (t_hi - t_lo)),
        Complex64::new(-0.3 * (sigma_hi - sigma_lo), -0.3 * (t_hi - t_lo)),
    ];
    let mut last_err = Error::Divergence;
    for j in jitters {
        match refine_root_newton(f, center + j, 1e-9, seed_box) {
            Ok(s) => {
                let residual = f(s)?.norm();
                if residual > 1e-8 {
                    last_err = Error::Accuracy {
                        requested: acc.abs_tol(),
                        detail: format!("zeta' residual {residual:e}"),
                    };
                    continue;
                }
                return Ok(ZetaPrimeZero {
                    beta_prime: s.re,
                    gamma_prime: s.im,
                    residual,
                });
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}
