//! The zero-counting decomposition N(T) = L(T) + S(T) + E(T) and the
//! slow-variation checks on L + E.
//!
//! L is the smooth main term, S(T) = arg zeta(1/2 + iT) / pi computed by
//! continuous continuation along 2 -> 2 + iT -> 1/2 + iT, and E is the
//! Stirling-type error term recovered from the theta function via
//! L(T) + E(T) = theta(T)/pi + 1.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{riemann_siegel_theta, zeta, Accuracy};

/// The decomposition of the zero count at height T.
#[derive(Debug, Clone, Copy)]
pub struct CountingValues {
    pub t: f64,
    pub n: i64,
    pub l: f64,
    pub s: f64,
    pub e: f64,
    /// (L + S + E) - N; tiny when the argument tracking is consistent.
    pub consistency_residual: f64,
}

/// Smooth main term L(T) = T log T / (2 pi) - (1 + log 2 pi) T / (2 pi) + 7/8.
pub fn l_of_t(t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Precondition(format!("l_of_t requires T > 1, got {t}")));
    }
    Ok(t * t.ln() / (2.0 * PI) - (1.0 + (2.0 * PI).ln()) * t / (2.0 * PI) + 7.0 / 8.0)
}

/// E(T) recovered from theta: E = theta(T)/pi + 1 - L(T).
pub fn e_of_t(t: f64) -> Result<f64> {
    if !(t > 2.0) {
        return Err(Error::Precondition(format!("e_of_t requires T > 2, got {t}")));
    }
    let theta = riemann_siegel_theta(t)?;
    Ok(theta.value / PI + 1.0 - l_of_t(t)?)
}

/// S(T) = arg zeta(1/2 + iT) / pi by continuous continuation along the path
/// 2 -> 2 + iT -> 1/2 + iT.
///
/// Step control halves segments until consecutive evaluation points change
/// the argument by less than pi/2, so no branch jumps can be missed.
pub fn s_of_t(t: f64, acc: Accuracy) -> Result<f64> {
    if !(t >= 14.0) {
        return Err(Error::Precondition(format!("s_of_t requires T >= 14, got {t}")));
    }
    let f = |s: Complex64| -> Result<Complex64> {
        let z = zeta(s, acc)?;
        if z.value.norm() < 1e-10 {
            return Err(Error::PathThroughZero { t: s.im });
        }
        Ok(z.value)
    };

    // arg zeta(2) = 0: the Dirichlet series at s = 2 is real and positive.
    let start = Complex64::new(2.0, 0.0);
    let corner = Complex64::new(2.0, t);
    let end = Complex64::new(0.5, t);
    let mut total = 0.0;
    for (p0, p1) in [(start, corner), (corner, end)] {
        total += track_segment(&f, p0, p1, 0)?;
    }
    Ok(total / PI)
}

fn track_segment<F>(f: &F, p0: Complex64, p1: Complex64, depth: u32) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    // initial resolution ~ 1 point per 0.5 units of path length
    let len = (p1 - p0).norm();
    let n = ((len / 0.5).ceil() as usize).max(1);
    let mut total = 0.0;
    let mut prev = f(p0)?;
    for k in 1..=n {
        let p = p0 + (p1 - p0) * (k as f64 / n as f64);
        let cur = f(p)?;
        let d = (cur / prev).arg();
        if d.abs() >= PI / 2.0 {
            if depth > 48 {
                return Err(Error::NonConvergentContour);
            }
            let pp = p0 + (p1 - p0) * ((k - 1) as f64 / n as f64);
            let mid = (pp + p) / 2.0;
            total += track_segment(f, pp, mid, depth + 1)?;
            total += track_segment(f, mid, p, depth + 1)?;
        } else {
            total += d;
        }
        prev = cur;
    }
    Ok(total)
}

/// Full decomposition at height T, with N = round(L + S + E).
pub fn n_of_t(t: f64, acc: Accuracy) -> Result<CountingValues> {
    let l = l_of_t(t)?;
    let e = e_of_t(t)?;
    let s = s_of_t(t, acc)?;
    let sum = l + s + e;
    let n = sum.round() as i64;
    if n < 0 {
        return Err(Error::Precondition(format!(
            "negative zero count {n} at T = {t}"
        )));
    }
    Ok(CountingValues {
        t,
        n,
        l,
        s,
        e,
        consistency_residual: sum - n as f64,
    })
}

/// Forward-difference density of L + E against its main term:
/// ((L+E)(u+du) - (L+E)(u))/du - log(u)/(2 pi).
pub fn density_residual(u: f64, du: f64) -> Result<f64> {
    if !(u >= 20.0) || !(du > 0.0 && du <= 1.0) {
        return Err(Error::Precondition(format!(
            "density_residual requires u >= 20 and du in (0, 1], got u = {u}, du = {du}"
        )));
    }
    let le = |x: f64| -> Result<f64> { Ok(riemann_siegel_theta(x)?.value / PI + 1.0) };
    Ok((le(u + du)? - le(u)?) / du - u.ln() / (2.0 * PI))
}

/// |E(t2) - E(t1)| / (t2 - t1), the slow-variation ratio of E.
pub fn lipschitz_ratio(t1: f64, t2: f64) -> Result<f64> {
    if !(t1 > 2.0 && t2 > t1 && t2 < 2.0 * t1) {
        return Err(Error::Precondition(format!(
            "lipschitz_ratio requires 2 < t1 < t2 < 2 t1, got ({t1}, {t2})"
        )));
    }
    Ok((e_of_t(t2)? - e_of_t(t1)?).abs() / (t2 - t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::digamma;

    #[test]
    fn l_at_two_pi_is_minus_eighth() {
        // L(2 pi) = log(2 pi) - (1 + log 2 pi) + 7/8 = -1/8
        let v = l_of_t(2.0 * PI).unwrap();
        assert!((v + 0.125).abs() < 1e-14, "L(2 pi) = {v}");
    }

    #[test]
    fn l_monotone_above_two_pi() {
        for i in 0..50 {
            let t = 2.0 * PI + 0.5 + i as f64 * 20.0;
            // derivative log(t / 2 pi) / (2 pi) > 0
            assert!((t / (2.0 * PI)).ln() > 0.0);
            assert!(l_of_t(t + 1e-3).unwrap() > l_of_t(t).unwrap());
        }
    }

    #[test]
    fn e_plus_l_is_theta_identity() {
        let t = 500.0;
        let theta = riemann_siegel_theta(t).unwrap().value;
        let r = e_of_t(t).unwrap() + l_of_t(t).unwrap() - (theta / PI + 1.0);
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn e_is_small() {
        for i in 0..100 {
            let t = 100.0 + i as f64 * 9.0;
            let e = e_of_t(t).unwrap();
            assert!(e.abs() < 0.1, "E({t}) = {e}");
        }
    }

    #[test]
    fn s_below_first_zero_forced_by_identity() {
        // N(14.0) = 0, so S = -L - E there.
        let acc = Accuracy::default();
        let s = s_of_t(14.0, acc).unwrap();
        let forced = -l_of_t(14.0).unwrap() - e_of_t(14.0).unwrap();
        assert!((s - forced).abs() < 1e-8, "S = {s}, forced = {forced}");
    }

    #[test]
    fn n_of_t_small_heights() {
        let acc = Accuracy::default();
        assert_eq!(n_of_t(14.5, acc).unwrap().n, 1);
        assert_eq!(n_of_t(100.0, acc).unwrap().n, 29);
        assert_eq!(n_of_t(100.5, acc).unwrap().n, 29);
    }

    #[test]
    fn consistency_residual_small() {
        let acc = Accuracy::default();
        for i in 0..20 {
            let t = 20.3 + i as f64 * 7.13;
            let cv = n_of_t(t, acc).unwrap();
            assert!(
                cv.consistency_residual.abs() < 1e-8,
                "residual {} at T = {t}",
                cv.consistency_residual
            );
        }
    }

    #[test]
    fn density_residual_bounded() {
        assert!(density_residual(100.0, 0.1).unwrap().abs() <= 1.0);
        assert!(density_residual(1000.0, 0.01).unwrap().abs() <= 1.0);
    }

    #[test]
    fn density_limit_matches_digamma() {
        // d(L+E)/du = theta'(u)/pi = Re psi(1/4 + iu/2) / (2 pi) - log(pi)/(2 pi)
        let u = 200.0;
        let du = 1e-4;
        let fd = (riemann_siegel_theta(u + du).unwrap().value
            - riemann_siegel_theta(u - du).unwrap().value)
            / (2.0 * du * PI);
        let psi = digamma(Complex64::new(0.25, 0.5 * u)).unwrap().value.re;
        let analytic = psi / (2.0 * PI) - PI.ln() / (2.0 * PI);
        assert!((fd - analytic).abs() < 1e-6, "fd {fd} vs analytic {analytic}");
    }

    #[test]
    fn lipschitz_ratio_small() {
        let r = lipschitz_ratio(500.0, 501.0).unwrap();
        assert!(r <= 0.05, "ratio {r}");
        // continuity on a tiny interval
        let r = lipschitz_ratio(300.0, 300.0 + 1e-6).unwrap();
        assert!(r.is_finite());
    }

    #[test]
    fn preconditions_rejected() {
        assert!(l_of_t(0.5).is_err());
        assert!(s_of_t(2.0, Accuracy::default()).is_err());
        assert!(lipschitz_ratio(100.0, 250.0).is_err());
        assert!(density_residual(10.0, 0.1).is_err());
    }
}
