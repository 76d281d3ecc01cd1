//! The Poisson-kernel machinery behind the gap statistic: the kernel
//! h(t) = a / (a^2 + (t - c)^2) with a = beta' - 1/2 and c = gamma', its
//! closed-form integrals, the zero-sum identity, nearest-ordinate pairing,
//! the normalized gap ratios, and the explicit constants c0 ~ 0.463 and
//! 1/c0 ~ 2.16.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::zerofinder::{ZetaPrimeZero, ZetaZero};

/// Poisson kernel parameters (a, center) = (beta' - 1/2, gamma').
#[derive(Debug, Clone, Copy)]
pub struct PoissonKernel {
    a: f64,
    center: f64,
}

impl PoissonKernel {
    pub fn new(a: f64, center: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() || !center.is_finite() {
            return Err(Error::Precondition(format!(
                "PoissonKernel requires a > 0 finite, got a = {a}, center = {center}"
            )));
        }
        Ok(Self { a, center })
    }

    pub fn from_zero(zp: &ZetaPrimeZero) -> Result<Self> {
        Self::new(zp.beta_prime - 0.5, zp.gamma_prime)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Whether the kernel satisfies the hypothesis a <= 1/loglog(center)
    /// needed by the gap statistic.
    pub fn within_hypothesis(&self) -> bool {
        self.center > std::f64::consts::E.exp() && self.a <= (1.0 + 1e-12) / self.center.ln().ln()
    }
}

/// h(t) and h'(t).
pub fn kernel_eval(k: &PoissonKernel, t: f64) -> (f64, f64) {
    let u = t - k.center;
    let d = k.a * k.a + u * u;
    (k.a / d, -2.0 * u * k.a / (d * d))
}

/// The four closed-form kernel integrals.
#[derive(Debug, Clone, Copy)]
pub struct KernelClosedForms {
    /// Whole-line mass of h: pi.
    pub full_mass: f64,
    /// Central mass over [c/2, 3c/2]: 2 arctan(c / 2a).
    pub central_mass: f64,
    /// Total variation of h over the whole line: 2/a.
    pub total_variation: f64,
    /// Variation over the window |t - c| <= sqrt(a)/p: (2/a) / (1 + a p^2).
    pub window_variation: f64,
}

pub fn kernel_closed_forms(k: &PoissonKernel, p: f64) -> Result<KernelClosedForms> {
    if !(p > 0.0) {
        return Err(Error::Precondition(format!("p must be positive, got {p}")));
    }
    Ok(KernelClosedForms {
        full_mass: PI,
        central_mass: 2.0 * (k.center / (2.0 * k.a)).atan(),
        total_variation: 2.0 / k.a,
        window_variation: 2.0 / (k.a * (1.0 + k.a * p * p)),
    })
}

/// g(x) = -x/(1 + x^2) + arctan(1/x), the window integral as a function of
/// x = p sqrt(a). Strictly decreasing with g(0+) = pi/2 and g(inf) = 0.
pub fn window_integral_closed_form(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Precondition(format!("x must be positive, got {x}")));
    }
    Ok(-x / (1.0 + x * x) + (1.0 / x).atan())
}

/// Result of the zero-sum identity truncated at `tail_height`.
#[derive(Debug, Clone, Copy)]
pub struct Lemma1Sum {
    /// Sum of h over supplied ordinates and their reflections.
    pub sum: f64,
    /// Density-integral estimate of the mass beyond the truncation.
    pub tail_bound: f64,
    /// sum - log(gamma')/2; O(1) at desk scale.
    pub residual: f64,
}

/// Truncated evaluation of log(gamma')/2 = sum_gamma h(gamma) + O(1).
///
/// Negative ordinates enter through the gamma -> -gamma symmetry of the
/// supplied positive ordinates.
pub fn lemma1_sum(
    k: &PoissonKernel,
    zeros: &[ZetaZero],
    tail_height: f64,
) -> Result<Lemma1Sum> {
    if tail_height < 10.0 * k.center {
        return Err(Error::Precondition(format!(
            "tail_height {tail_height} below 10 * center = {}",
            10.0 * k.center
        )));
    }
    check_coverage(zeros, 14.0, tail_height)?;

    let mut sum = 0.0;
    for z in zeros {
        if z.gamma > tail_height {
            break;
        }
        sum += kernel_eval(k, z.gamma).0;
        sum += kernel_eval(k, -z.gamma).0;
    }

    // Truncation estimate: zero density log(t)/(2 pi) integrated against the
    // kernel tail beyond +-tail_height.
    let density = tail_height.ln() / (2.0 * PI);
    let tail_plus = PI / 2.0 - ((tail_height - k.center) / k.a).atan();
    let tail_minus = PI / 2.0 - ((tail_height + k.center) / k.a).atan();
    let tail_bound = density * (tail_plus + tail_minus);

    Ok(Lemma1Sum {
        sum,
        tail_bound,
        residual: sum - 0.5 * k.center.ln(),
    })
}

fn check_coverage(zeros: &[ZetaZero], lo: f64, hi: f64) -> Result<()> {
    if zeros.is_empty() {
        return Err(Error::IncompleteZeroList("empty zero list".into()));
    }
    if !zeros.windows(2).all(|w| w[0].gamma <= w[1].gamma) {
        return Err(Error::IncompleteZeroList("zero list not sorted".into()));
    }
    let first = zeros[0].gamma;
    let last = zeros[zeros.len() - 1].gamma;
    let avg_gap = 2.0 * PI / (hi.max(20.0) / (2.0 * PI)).ln();
    if first > lo.max(14.0) + 1.0 {
        return Err(Error::IncompleteZeroList(format!(
            "list starts at {first}, needs coverage from {lo}"
        )));
    }
    if last < hi - 3.0 * avg_gap {
        return Err(Error::IncompleteZeroList(format!(
            "list ends at {last}, needs coverage to {hi}"
        )));
    }
    Ok(())
}

/// A zeta' zero paired with its nearest zeta ordinate and the normalized
/// gap ratios.
#[derive(Debug, Clone, Copy)]
pub struct PairRecord {
    pub beta_prime: f64,
    pub gamma_prime: f64,
    pub gamma_c: f64,
    /// 1/2 under operational RH.
    pub beta_c: f64,
    pub delta: f64,
    /// delta / sqrt(a / loglog gamma').
    pub ratio_thm: f64,
    /// delta / sqrt(a).
    pub ratio_gy: f64,
    /// delta / (sqrt(a) (loglog gamma' / log gamma')^{1/4}).
    pub ratio_fgh: f64,
    pub tie_broken: bool,
}

impl PairRecord {
    pub fn a(&self) -> f64 {
        self.beta_prime - 0.5
    }

    pub fn degenerate(&self) -> bool {
        self.a() <= 1e-12
    }
}

/// Pair a zeta' zero with the nearest zeta ordinate in `zeros`.
///
/// Exact ties (difference below 1e-12) break toward the smaller ordinate.
/// For beta' <= 1/2 + 1e-12 the record is degenerate: gamma_c is still the
/// nearest ordinate but all ratios are zero.
pub fn pair_nearest(zp: &ZetaPrimeZero, zeros: &[ZetaZero]) -> Result<PairRecord> {
    if zeros.is_empty() {
        return Err(Error::InsufficientCoverage("empty zero list".into()));
    }
    let g = zp.gamma_prime;

    let mut best = zeros[0].gamma;
    let mut best_d = (g - best).abs();
    let mut tie_broken = false;
    for z in &zeros[1..] {
        let d = (g - z.gamma).abs();
        if d + 1e-12 < best_d {
            best = z.gamma;
            best_d = d;
            tie_broken = false;
        } else if (d - best_d).abs() < 1e-12 && z.gamma != best {
            // keep the smaller ordinate; list is ascending so `best` wins
            tie_broken = true;
        }
    }

    // the nearest zero must not sit within one average gap of the list edge
    let avg_gap = 2.0 * PI / (g.max(20.0) / (2.0 * PI)).ln();
    let lo = zeros[0].gamma;
    let hi = zeros[zeros.len() - 1].gamma;
    if (best - lo).abs() < avg_gap && lo > 14.2 || (hi - best).abs() < avg_gap {
        return Err(Error::InsufficientCoverage(format!(
            "nearest ordinate {best} within one average gap of list boundary [{lo}, {hi}]"
        )));
    }

    let a = zp.beta_prime - 0.5;
    let delta = best_d;
    let (ratio_thm, ratio_gy, ratio_fgh) = if a <= 1e-12 {
        (0.0, 0.0, 0.0)
    } else {
        let ll = g.ln().ln();
        (
            delta / (a / ll).sqrt(),
            delta / a.sqrt(),
            delta / (a.sqrt() * (ll / g.ln()).powf(0.25)),
        )
    };
    Ok(PairRecord {
        beta_prime: zp.beta_prime,
        gamma_prime: g,
        gamma_c: best,
        beta_c: 0.5,
        delta,
        ratio_thm,
        ratio_gy,
        ratio_fgh,
        tie_broken,
    })
}

/// The four normalized gap ratios for a nondegenerate pair.
#[derive(Debug, Clone, Copy)]
pub struct GapRatios {
    pub ratio_thm: f64,
    pub ratio_gy: f64,
    pub ratio_fgh: f64,
    /// delta * loglog gamma', the trivial-bound statistic.
    pub trivial_ratio: f64,
    /// Set when a > 1/loglog gamma', where the theorem does not apply.
    pub outside_hypothesis: bool,
}

pub fn normalized_gaps(pair: &PairRecord) -> Result<GapRatios> {
    let a = pair.a();
    if a <= 1e-12 {
        return Err(Error::Precondition(
            "normalized_gaps requires a nondegenerate pair (a > 0)".into(),
        ));
    }
    let ll = pair.gamma_prime.ln().ln();
    Ok(GapRatios {
        ratio_thm: pair.delta / (a / ll).sqrt(),
        ratio_gy: pair.delta / a.sqrt(),
        ratio_fgh: pair.delta / (a.sqrt() * (ll / pair.gamma_prime.ln()).powf(0.25)),
        trivial_ratio: pair.delta * ll,
        outside_hypothesis: a > (1.0 + 1e-12) / ll,
    })
}

/// Count zeta ordinates in the window
/// [gamma' - C sqrt(a/loglog gamma'), gamma' + C sqrt(a/loglog gamma')].
pub fn window_zero_count(zp: &ZetaPrimeZero, c: f64, zeros: &[ZetaZero]) -> Result<usize> {
    if !(c > 0.0) {
        return Err(Error::Precondition(format!("C must be positive, got {c}")));
    }
    let a = (zp.beta_prime - 0.5).max(0.0);
    let half = c * (a / zp.gamma_prime.ln().ln()).sqrt();
    let (lo, hi) = (zp.gamma_prime - half, zp.gamma_prime + half);
    if zeros.is_empty()
        || zeros[0].gamma > lo && zeros[0].gamma > 14.2
        || zeros[zeros.len() - 1].gamma < hi
    {
        return Err(Error::InsufficientCoverage(format!(
            "window [{lo}, {hi}] not covered by supplied zero list"
        )));
    }
    Ok(zeros
        .iter()
        .filter(|z| z.gamma >= lo && z.gamma <= hi)
        .count())
}

/// The solved constant of the contradiction argument.
#[derive(Debug, Clone, Copy)]
pub struct ConstantSolve {
    /// Positive root of arctan(1/x) - x - 4 pi A x^2 - eps = 0.
    pub c0: f64,
    /// 1/c0, the implied constant of the gap bound.
    pub implied_constant: f64,
    /// |arctan(1/c0) - c0 - 4 pi A c0^2 - eps| at the returned root.
    pub residual: f64,
    /// The S(T) bound constant used.
    pub a_param: f64,
}

/// Solve for the largest admissible c: the positive root of
/// arctan(1/x) - x - 4 pi A x^2 - eps = 0, by bracketed bisection.
pub fn solve_c0(a_param: f64, epsilon: f64) -> Result<ConstantSolve> {
    if !(a_param > 0.0) || epsilon < 0.0 {
        return Err(Error::Precondition(format!(
            "solve_c0 requires A > 0 and eps >= 0, got A = {a_param}, eps = {epsilon}"
        )));
    }
    let f = |x: f64| (1.0 / x).atan() - x - 4.0 * PI * a_param * x * x - epsilon;
    // f(0+) -> pi/2 - eps, strictly decreasing on (0, 2) past the root
    let lo0 = 1e-12;
    if f(lo0) <= 0.0 {
        return Err(Error::NoRoot(format!(
            "epsilon = {epsilon} exceeds the supremum pi/2 of the left side"
        )));
    }
    let (mut lo, mut hi) = (lo0, 2.0);
    if f(hi) >= 0.0 {
        return Err(Error::NoRoot("no sign change on (0, 2)".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    let c0 = 0.5 * (lo + hi);
    let residual = f(c0).abs();
    if residual > 1e-12 {
        return Err(Error::NoRoot(format!(
            "bisection stalled with residual {residual:e}"
        )));
    }
    Ok(ConstantSolve {
        c0,
        implied_constant: 1.0 / c0,
        residual,
        a_param,
    })
}

/// Both sides of the contradiction inequalities for given (c, a, loglog, A).
#[derive(Debug, Clone, Copy)]
pub struct ContradictionCheck {
    /// -p sqrt(a)/(1 + a p^2) + arctan(1/(p sqrt(a))) with p = c sqrt(loglog).
    pub lhs1: f64,
    /// lhs1 >= pi/3.
    pub ok1: bool,
    /// (2A/loglog) * 2 p^2/(1 + a p^2).
    pub lhs2: f64,
    /// lhs2 <= 1/6.
    pub ok2: bool,
    /// Sufficient lower bound -c + arctan(1/c) for lhs1 when a <= 1/loglog.
    pub sufficient_lhs1: f64,
    /// Sufficient upper bound 4 A c^2 for lhs2.
    pub sufficient_lhs2: f64,
}

pub fn contradiction_check(
    c: f64,
    a: f64,
    loglog_gamma: f64,
    a_param: f64,
) -> Result<ContradictionCheck> {
    if !(c > 0.0 && a > 0.0 && loglog_gamma > 0.0 && a_param > 0.0) {
        return Err(Error::Precondition(
            "contradiction_check requires positive c, a, loglog, A".into(),
        ));
    }
    let p = c * loglog_gamma.sqrt();
    let x = p * a.sqrt();
    let lhs1 = -x / (1.0 + a * p * p) + (1.0 / x).atan();
    let lhs2 = (2.0 * a_param / loglog_gamma) * 2.0 * p * p / (1.0 + a * p * p);
    Ok(ContradictionCheck {
        lhs1,
        ok1: lhs1 >= PI / 3.0,
        lhs2,
        ok2: lhs2 <= 1.0 / 6.0,
        sufficient_lhs1: -c + (1.0 / c).atan(),
        sufficient_lhs2: 4.0 * a_param * c * c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive_simpson;

    fn kernel(a: f64, center: f64) -> PoissonKernel {
        PoissonKernel::new(a, center).unwrap()
    }

    fn synthetic_zero(gamma: f64) -> ZetaZero {
        ZetaZero {
            gamma,
            bracket_width: 1e-10,
            z_residual: 0.0,
        }
    }

    #[test]
    fn kernel_peak_and_half_width() {
        let k = kernel(0.2, 100.0);
        let (h, hp) = kernel_eval(&k, 100.0);
        assert!((h - 5.0).abs() < 1e-14);
        assert_eq!(hp, 0.0);
        let (h, _) = kernel_eval(&k, 100.2);
        assert!((h - 2.5).abs() < 1e-13);
        let (h, _) = kernel_eval(&k, 99.8);
        assert!((h - 2.5).abs() < 1e-13);
    }

    #[test]
    fn kernel_symmetry() {
        let k = kernel(0.05, 42.0);
        let x = 0.37;
        let (hl, hpl) = kernel_eval(&k, 42.0 - x);
        let (hr, hpr) = kernel_eval(&k, 42.0 + x);
        assert!((hl - hr).abs() < 1e-15);
        assert!((hpl + hpr).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_spot_values() {
        let k = kernel(0.01, 300.0);
        let cf = kernel_closed_forms(&k, 1.0).unwrap();
        assert_eq!(cf.full_mass, PI);
        assert!((cf.total_variation - 200.0).abs() < 1e-10);
        // a p^2 = 1 at p = 10: window variation is half of total
        let cf = kernel_closed_forms(&k, 10.0).unwrap();
        assert!((cf.window_variation - 100.0).abs() < 1e-9);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let k = kernel(0.1, 50.0);
        let p = 2.0;
        let cf = kernel_closed_forms(&k, p).unwrap();
        let central = adaptive_simpson(&|t| kernel_eval(&k, t).0, 25.0, 75.0, 1e-13);
        assert!((central - cf.central_mass).abs() < 1e-10);
        let w = k.a().sqrt() / p;
        let var = adaptive_simpson(&|t| kernel_eval(&k, t).1.abs(), 50.0 - w, 50.0 + w, 1e-13);
        assert!((var - cf.window_variation).abs() < 1e-9, "{var} vs {}", cf.window_variation);
    }

    #[test]
    fn window_integral_values() {
        let g1 = window_integral_closed_form(1.0).unwrap();
        assert!((g1 - (PI / 4.0 - 0.5)).abs() < 1e-14);
        let g0 = window_integral_closed_form(1e-8).unwrap();
        assert!((g0 - PI / 2.0).abs() < 1e-7);
        // high-precision reference at the threshold point x = 0.463
        let gt = window_integral_closed_form(0.463).unwrap();
        assert!((gt - 0.7559163762649907).abs() < 1e-12, "g(0.463) = {gt}");
    }

    #[test]
    fn window_integral_decreasing() {
        let mut prev = window_integral_closed_form(0.01).unwrap();
        for i in 1..100 {
            let x = 0.01 + i as f64 * 0.1;
            let g = window_integral_closed_form(x).unwrap();
            assert!(g < prev);
            prev = g;
        }
    }

    #[test]
    fn window_integral_matches_quadrature() {
        // g(p sqrt a) = (1/2) int_0^{sqrt(a)/p} 4 a v^2/(a^2+v^2)^2 dv
        let (a, p) = (0.07f64, 1.7);
        let w = a.sqrt() / p;
        let q = adaptive_simpson(
            &|v| 4.0 * a * v * v / ((a * a + v * v) * (a * a + v * v)),
            0.0,
            w,
            1e-13,
        );
        let g = window_integral_closed_form(p * a.sqrt()).unwrap();
        assert!((0.5 * q - g).abs() < 1e-11, "{q} vs {g}");
    }

    #[test]
    fn lemma1_uniform_grid_approximates_pi_over_d() {
        // sum over a uniform grid of spacing d tends to the integral pi/d
        let d = 0.1;
        for a in [0.05, 1.0] {
            let k = kernel(a, 500.0);
            let zeros: Vec<ZetaZero> = (0..120000)
                .map(|i| synthetic_zero(14.0 + i as f64 * d))
                .collect();
            let mut sum = 0.0;
            for z in &zeros {
                sum += kernel_eval(&k, z.gamma).0 + kernel_eval(&k, -z.gamma).0;
            }
            let rel = (sum * d / PI - 1.0).abs();
            let bound = (2.0 * a / d).min(1.0).max(3.0 * (-2.0 * PI * a / d).exp() + 1e-4);
            assert!(rel <= bound, "a = {a}: rel err {rel} > {bound}");
        }
    }

    #[test]
    fn lemma1_requires_coverage() {
        let k = kernel(0.1, 30.0);
        let zeros: Vec<ZetaZero> = (0..10).map(|i| synthetic_zero(20.0 + i as f64)).collect();
        assert!(matches!(
            lemma1_sum(&k, &zeros, 300.0),
            Err(Error::IncompleteZeroList(_))
        ));
    }

    #[test]
    fn lemma1_tail_bound_small() {
        let k = kernel(0.3, 100.0);
        let zeros: Vec<ZetaZero> = (0..12000)
            .map(|i| synthetic_zero(14.0 + i as f64 * 0.0825))
            .collect();
        let r = lemma1_sum(&k, &zeros, 1000.0).unwrap();
        assert!(r.tail_bound <= 0.5, "tail {}", r.tail_bound);
    }

    #[test]
    fn pairing_minimizer_and_tie() {
        let zp = ZetaPrimeZero {
            beta_prime: 1.3,
            gamma_prime: 22.4,
            residual: 0.0,
        };
        let zeros = vec![synthetic_zero(14.1), synthetic_zero(20.0), synthetic_zero(25.0), synthetic_zero(30.0)];
        let pair = pair_nearest(&zp, &zeros).unwrap();
        assert_eq!(pair.gamma_c, 20.0);
        assert!(!pair.tie_broken);
        assert!((pair.delta - 2.4).abs() < 1e-12);

        let zeros = vec![synthetic_zero(14.1), synthetic_zero(20.0), synthetic_zero(24.8), synthetic_zero(30.0)];
        let pair = pair_nearest(&zp, &zeros).unwrap();
        assert_eq!(pair.gamma_c, 20.0);
        assert!(pair.tie_broken);
    }

    #[test]
    fn pairing_degenerate_beta() {
        let zp = ZetaPrimeZero {
            beta_prime: 0.5 + 1e-13,
            gamma_prime: 22.0,
            residual: 0.0,
        };
        let zeros = vec![synthetic_zero(14.1), synthetic_zero(21.0), synthetic_zero(23.5), synthetic_zero(28.0)];
        let pair = pair_nearest(&zp, &zeros).unwrap();
        assert!(pair.degenerate());
        assert_eq!(pair.ratio_thm, 0.0);
        assert_eq!(pair.ratio_gy, 0.0);
        assert_eq!(pair.ratio_fgh, 0.0);
    }

    #[test]
    fn gap_ratios_boundary_coincidence() {
        // at a = 1/loglog gamma', ratio_thm = delta * loglog = trivial_ratio
        let g = 100.0f64;
        let ll = g.ln().ln();
        let pair = PairRecord {
            beta_prime: 0.5 + 1.0 / ll,
            gamma_prime: g,
            gamma_c: g - 0.2,
            beta_c: 0.5,
            delta: 0.2,
            ratio_thm: 0.0,
            ratio_gy: 0.0,
            ratio_fgh: 0.0,
            tie_broken: false,
        };
        let r = normalized_gaps(&pair).unwrap();
        assert!((r.ratio_thm - r.trivial_ratio).abs() < 1e-12);
        assert!(!r.outside_hypothesis);
    }

    #[test]
    fn gap_ratios_zero_delta() {
        let pair = PairRecord {
            beta_prime: 1.0,
            gamma_prime: 100.0,
            gamma_c: 100.0,
            beta_c: 0.5,
            delta: 0.0,
            ratio_thm: 0.0,
            ratio_gy: 0.0,
            ratio_fgh: 0.0,
            tie_broken: false,
        };
        let r = normalized_gaps(&pair).unwrap();
        assert_eq!(r.ratio_thm, 0.0);
        assert_eq!(r.ratio_gy, 0.0);
        assert_eq!(r.ratio_fgh, 0.0);
        assert_eq!(r.trivial_ratio, 0.0);
    }

    #[test]
    fn window_count_empty_and_reaching() {
        let zp = ZetaPrimeZero {
            beta_prime: 2.0,
            gamma_prime: 50.13,
            residual: 0.0,
        };
        let zeros: Vec<ZetaZero> = (0..200).map(|i| synthetic_zero(14.0 + i as f64 * 0.5)).collect();
        // tiny window missing every ordinate
        let pair = pair_nearest(&zp, &zeros).unwrap();
        assert!(pair.delta > 0.0);
        assert_eq!(window_zero_count(&zp, 1e-9, &zeros).unwrap(), 0);
        // window reaching gamma_c by construction
        let c = pair.ratio_thm + 1e-9;
        assert!(window_zero_count(&zp, c, &zeros).unwrap() >= 1);
    }

    #[test]
    fn solve_c0_paper_constants() {
        let s = solve_c0(0.25, 0.0).unwrap();
        assert!((s.c0 - 0.46315302445222163).abs() < 1e-10, "c0 = {}", s.c0);
        assert!((s.implied_constant - 2.159113613006664).abs() < 1e-8);
        assert!(s.residual <= 1e-12);
    }

    #[test]
    fn solve_c0_monotone_in_a() {
        let half = solve_c0(0.5, 0.0).unwrap();
        let quarter = solve_c0(0.25, 0.0).unwrap();
        assert!(half.c0 < quarter.c0);
    }

    #[test]
    fn solve_c0_unique_root_on_interval() {
        // exactly one sign change on (0, 2)
        let f = |x: f64| (1.0 / x).atan() - x - PI * x * x;
        let mut changes = 0;
        let mut prev = f(1e-6);
        for i in 1..=2000 {
            let x = i as f64 * 1e-3;
            let v = f(x);
            if prev.signum() != v.signum() {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(changes, 1);
    }

    #[test]
    fn solve_c0_epsilon_too_large() {
        assert!(matches!(solve_c0(0.25, 2.0), Err(Error::NoRoot(_))));
    }

    #[test]
    fn contradiction_example() {
        let r = contradiction_check(0.2, 0.01, 3.0, 0.25).unwrap();
        assert!(r.ok1, "lhs1 = {}", r.lhs1);
        assert!(r.ok2, "lhs2 = {}", r.lhs2);
        // c = 0.5, A = 1/4: sufficient bound 4 A c^2 = 0.25 > 1/6
        let r = contradiction_check(0.5, 1e-9, 3.0, 0.25).unwrap();
        assert!(r.sufficient_lhs2 > 1.0 / 6.0);
    }

    #[test]
    fn contradiction_lhs1_decreasing_in_c() {
        let mut prev = f64::INFINITY;
        for i in 1..30 {
            let c = i as f64 * 0.05;
            let r = contradiction_check(c, 0.02, 3.0, 0.25).unwrap();
            assert!(r.lhs1 < prev, "lhs1 not decreasing at c = {c}");
            prev = r.lhs1;
        }
    }
}
