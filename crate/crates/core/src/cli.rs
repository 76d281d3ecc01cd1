//! Scan driver, verification suites and report generation behind the
//! command-line front end.
//!
//! The driver owns all parallelism: the scan range is split into disjoint
//! height windows which workers process independently; results are merged in
//! window order, so identical configs produce byte-identical outputs.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{density_residual, lipschitz_ratio, n_of_t};
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::specfun::{hardy_z, riemann_siegel_theta, zeta_prime, Accuracy};
use crate::theoremlab::{
    kernel_closed_forms, kernel_eval, lemma1_sum, pair_nearest, solve_c0,
    window_integral_closed_form, window_zero_count, PairRecord, PoissonKernel,
};
use crate::zerofinder::{
    locate_critical_zeros, locate_zeta_prime_zeros, ZetaPrimeZero, ZetaZero,
};

const WINDOW_LEN: f64 = 25.0;

/// Desk-scale surrogate bounds for the verification suites. The paper's
/// O(1) constants are unquantified; these are empirical and configurable.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerifyBounds {
    pub lemma1_residual_max: f64,
    pub lemma1_tail_max: f64,
    pub density_max: f64,
    pub lipschitz_max: f64,
    pub ratio_desk_max: f64,
    pub s_abs_max: f64,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        Self {
            lemma1_residual_max: 2.5,
            lemma1_tail_max: 0.5,
            density_max: 1.0,
            lipschitz_max: 0.2,
            ratio_desk_max: 5.0,
            s_abs_max: 2.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub sigma_max: f64,
    pub abs_tol: f64,
    pub threads: usize,
    pub seed: u64,
    pub output_format: OutputFormat,
    pub out_dir: PathBuf,
    pub verify_bounds: VerifyBounds,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            t_min: 14.0,
            t_max: 100.0,
            sigma_max: 4.0,
            abs_tol: 1e-12,
            threads: 1,
            seed: 42,
            output_format: OutputFormat::Csv,
            out_dir: PathBuf::from("out"),
            verify_bounds: VerifyBounds::default(),
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(14.0 <= self.t_min && self.t_min < self.t_max && self.t_max <= 1e4) {
            return Err(Error::Precondition(format!(
                "scan range requires 14 <= t_min < t_max <= 1e4, got ({}, {})",
                self.t_min, self.t_max
            )));
        }
        if !(1e-14..=1e-3).contains(&self.abs_tol) {
            return Err(Error::Precondition(format!(
                "abs_tol {:e} outside [1e-14, 1e-3]",
                self.abs_tol
            )));
        }
        if !(2.0..=6.0).contains(&self.sigma_max) {
            return Err(Error::Precondition(format!(
                "sigma_max {} outside [2, 6]",
                self.sigma_max
            )));
        }
        if self.threads == 0 {
            return Err(Error::Precondition("threads must be >= 1".into()));
        }
        Ok(())
    }

    /// Apply one `key=value` setting, as read from a config file. Command
    /// line flags reuse this, so flag values win by being applied last.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |k: &str, v: &str| Error::Precondition(format!("bad config value {k}={v}"));
        match key {
            "t_min" => self.t_min = value.parse().map_err(|_| bad(key, value))?,
            "t_max" => self.t_max = value.parse().map_err(|_| bad(key, value))?,
            "sigma_max" => self.sigma_max = value.parse().map_err(|_| bad(key, value))?,
            "abs_tol" | "tol" => self.abs_tol = value.parse().map_err(|_| bad(key, value))?,
            "threads" => self.threads = value.parse().map_err(|_| bad(key, value))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            "format" => {
                self.output_format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad(key, value)),
                }
            }
            "out" => self.out_dir = PathBuf::from(value),
            "lemma1_residual_max" => {
                self.verify_bounds.lemma1_residual_max =
                    value.parse().map_err(|_| bad(key, value))?
            }
            "lemma1_tail_max" => {
                self.verify_bounds.lemma1_tail_max = value.parse().map_err(|_| bad(key, value))?
            }
            "density_max" => {
                self.verify_bounds.density_max = value.parse().map_err(|_| bad(key, value))?
            }
            "lipschitz_max" => {
                self.verify_bounds.lipschitz_max = value.parse().map_err(|_| bad(key, value))?
            }
            "ratio_desk_max" => {
                self.verify_bounds.ratio_desk_max = value.parse().map_err(|_| bad(key, value))?
            }
            "s_abs_max" => {
                self.verify_bounds.s_abs_max = value.parse().map_err(|_| bad(key, value))?
            }
            _ => return Err(Error::Precondition(format!("unknown config key {key}"))),
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Precondition(format!("config line {} is not key=value", lineno + 1))
            })?;
            self.apply_kv(k.trim(), v.trim())?;
        }
        Ok(())
    }

    fn accuracy(&self) -> Result<Accuracy> {
        Accuracy::new(self.abs_tol)
    }

    /// The resolved configuration as `key=value` lines, echoed into the
    /// output directory for reproducibility.
    pub fn echo(&self) -> String {
        let b = &self.verify_bounds;
        format!(
            "t_min={}\nt_max={}\nsigma_max={}\nabs_tol={}\nthreads={}\nseed={}\nformat={}\nout={}\n\
             lemma1_residual_max={}\nlemma1_tail_max={}\ndensity_max={}\nlipschitz_max={}\n\
             ratio_desk_max={}\ns_abs_max={}\n",
            self.t_min,
            self.t_max,
            self.sigma_max,
            self.abs_tol,
            self.threads,
            self.seed,
            match self.output_format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            },
            self.out_dir.display(),
            b.lemma1_residual_max,
            b.lemma1_tail_max,
            b.density_max,
            b.lipschitz_max,
            b.ratio_desk_max,
            b.s_abs_max,
        )
    }
}

/// In-memory result of a scan, before or after serialization.
#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub zeros: Vec<ZetaZeroRow>,
    pub zeta_prime_zeros: Vec<ZetaPrimeRow>,
    pub pairs: Vec<PairRow>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZetaZeroRow {
    pub gamma: f64,
    pub bracket_width: f64,
    pub z_residual: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZetaPrimeRow {
    pub beta_prime: f64,
    pub gamma_prime: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairRow {
    pub beta_prime: f64,
    pub gamma_prime: f64,
    pub gamma_c: f64,
    pub beta_c: f64,
    pub delta: f64,
    pub ratio_thm: f64,
    pub ratio_gy: f64,
    pub ratio_fgh: f64,
    pub tie_broken: bool,
}

impl From<&PairRecord> for PairRow {
    fn from(p: &PairRecord) -> Self {
        Self {
            beta_prime: p.beta_prime,
            gamma_prime: p.gamma_prime,
            gamma_c: p.gamma_c,
            beta_c: p.beta_c,
            delta: p.delta,
            ratio_thm: p.ratio_thm,
            ratio_gy: p.ratio_gy,
            ratio_fgh: p.ratio_fgh,
            tie_broken: p.tie_broken,
        }
    }
}

/// Pick window boundaries whose heights keep both zeta (on the critical
/// line) and zeta' (across the sigma strip) comfortably away from zero, so
/// window counts add up exactly.
fn choose_boundaries(t_lo: f64, t_hi: f64, sigma_max: f64, acc: Accuracy) -> Result<Vec<f64>> {
    let n = ((t_hi - t_lo) / WINDOW_LEN).ceil().max(1.0) as usize;
    let mut bounds = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let target = t_lo + (t_hi - t_lo) * k as f64 / n as f64;
        // interior boundaries may be nudged; the ends are fixed by contract
        if k == 0 || k == n {
            bounds.push(target);
        } else {
            bounds.push(clear_boundary(target, sigma_max, acc)?);
        }
    }
    Ok(bounds)
}

fn clear_boundary(mut t: f64, sigma_max: f64, acc: Accuracy) -> Result<f64> {
    'outer: for _ in 0..60 {
        if hardy_z(t, acc)?.value.abs() < 1e-4 {
            t += 0.0137;
            continue;
        }
        let mut sigma = 0.5 - 1e-6;
        while sigma < sigma_max {
            // |zeta'| decays like log(2) 2^{-sigma} to the right, so the
            // clearance threshold has to shrink with sigma
            let threshold = 0.05 * 1.0f64.min(2.0f64.powf(1.0 - sigma));
            let v = zeta_prime(Complex64::new(sigma, t), acc)?.value.norm();
            if v < threshold {
                t += 0.0137;
                continue 'outer;
            }
            sigma += 0.05;
        }
        return Ok(t);
    }
    Err(Error::Precondition(format!(
        "could not clear window boundary near t = {t}"
    )))
}

/// Run the full scan pipeline in memory: critical zeros, zeta' zeros and
/// nearest-ordinate pairs over the configured range.
pub fn scan(cfg: &ScanConfig) -> Result<ScanResult> {
    cfg.validate()?;
    let acc = cfg.accuracy()?;

    // zeta zeros are needed slightly beyond the zeta' range for pairing
    let z_lo = (cfg.t_min - 6.0).max(14.0);
    let z_hi = (cfg.t_max + 6.0).min(1e4);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;

    let zeta_bounds = choose_boundaries(z_lo, z_hi, cfg.sigma_max, acc)?;
    let zp_bounds = choose_boundaries(cfg.t_min, cfg.t_max, cfg.sigma_max, acc)?;

    let (zeros, zp_zeros) = pool.install(|| -> Result<_> {
        let zeros: Vec<ZetaZero> = zeta_bounds
            .par_windows(2)
            .map(|w| locate_critical_zeros(w[0], w[1], acc))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let zp: Vec<ZetaPrimeZero> = zp_bounds
            .par_windows(2)
            .map(|w| locate_zeta_prime_zeros(w[0], w[1], cfg.sigma_max, acc))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok((zeros, zp))
    })?;

    let pairs: Vec<PairRow> = zp_zeros
        .iter()
        .map(|zp| pair_nearest(zp, &zeros).map(|p| PairRow::from(&p)))
        .collect::<Result<_>>()?;

    Ok(ScanResult {
        zeros: zeros
            .iter()
            .map(|z| ZetaZeroRow {
                gamma: z.gamma,
                bracket_width: z.bracket_width,
                z_residual: z.z_residual,
            })
            .collect(),
        zeta_prime_zeros: zp_zeros
            .iter()
            .map(|z| ZetaPrimeRow {
                beta_prime: z.beta_prime,
                gamma_prime: z.gamma_prime,
                residual: z.residual,
            })
            .collect(),
        pairs,
    })
}

/// Run a scan and write `zeros.csv`, `zeta_prime_zeros.csv`, `pairs.csv`
/// and `run_config.txt` into the output directory. Partial files are
/// removed on failure.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanResult> {
    let result = scan(cfg)?;
    fs::create_dir_all(&cfg.out_dir)?;
    let files = [
        "zeros.csv",
        "zeta_prime_zeros.csv",
        "pairs.csv",
        "scan.json",
        "run_config.txt",
    ];
    let write_all = || -> Result<()> {
        write_zeros_csv(&cfg.out_dir.join("zeros.csv"), &result.zeros)?;
        write_zp_csv(
            &cfg.out_dir.join("zeta_prime_zeros.csv"),
            &result.zeta_prime_zeros,
        )?;
        write_pairs_csv(&cfg.out_dir.join("pairs.csv"), &result.pairs)?;
        if cfg.output_format == OutputFormat::Json {
            let json = serde_json::to_string_pretty(&result)
                .map_err(|e| Error::DataFormat(e.to_string()))?;
            fs::write(cfg.out_dir.join("scan.json"), json + "\n")?;
        }
        fs::write(cfg.out_dir.join("run_config.txt"), cfg.echo())?;
        Ok(())
    };
    if let Err(e) = write_all() {
        for f in files {
            let _ = fs::remove_file(cfg.out_dir.join(f));
        }
        return Err(e);
    }
    Ok(result)
}

fn write_zeros_csv(path: &Path, rows: &[ZetaZeroRow]) -> Result<()> {
    let mut out = String::from("gamma,bracket_width,z_residual\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.gamma, r.bracket_width, r.z_residual));
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_zp_csv(path: &Path, rows: &[ZetaPrimeRow]) -> Result<()> {
    let mut out = String::from("beta_prime,gamma_prime,residual\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.beta_prime, r.gamma_prime, r.residual));
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_pairs_csv(path: &Path, rows: &[PairRow]) -> Result<()> {
    let mut out =
        String::from("beta_prime,gamma_prime,gamma_c,beta_c,delta,ratio_thm,ratio_gy,ratio_fgh,tie_broken\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.beta_prime,
            r.gamma_prime,
            r.gamma_c,
            r.beta_c,
            r.delta,
            r.ratio_thm,
            r.ratio_gy,
            r.ratio_fgh,
            r.tie_broken
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

/// One named check inside a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    fn le(name: &str, value: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            bound,
            pass: value <= bound,
        }
    }

    fn in_open_interval(name: &str, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            bound: hi,
            pass: lo < value && value < hi,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Kernels,
    Counting,
    Constants,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "lemma1" => Suite::Lemma1,
            "lemma2" => Suite::Lemma2,
            "lemma3" => Suite::Lemma3,
            "kernels" => Suite::Kernels,
            "counting" => Suite::Counting,
            "constants" => Suite::Constants,
            "all" => Suite::All,
            _ => return Err(Error::Precondition(format!("unknown suite {name}"))),
        })
    }

    fn name(&self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Kernels => "kernels",
            Suite::Counting => "counting",
            Suite::Constants => "constants",
            Suite::All => "all",
        }
    }
}

/// Run a verification suite and write `verify_<suite>.json` into the output
/// directory. The report is written even when checks fail.
pub fn run_verify(cfg: &ScanConfig, suite: Suite) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut checks = Vec::new();
    match suite {
        Suite::Constants => checks.extend(constants_checks()?),
        Suite::Kernels => checks.extend(kernel_checks(cfg.seed)?),
        Suite::Lemma1 => checks.extend(lemma1_checks(cfg)?),
        Suite::Lemma2 => checks.extend(lemma2_checks(cfg)?),
        Suite::Lemma3 => checks.extend(lemma3_checks(cfg)?),
        Suite::Counting => checks.extend(counting_checks(cfg)?),
        Suite::All => {
            checks.extend(constants_checks()?);
            checks.extend(kernel_checks(cfg.seed)?);
            checks.extend(lemma2_checks(cfg)?);
            checks.extend(lemma3_checks(cfg)?);
            checks.extend(counting_checks(cfg)?);
            checks.extend(lemma1_checks(cfg)?);
        }
    }
    let report = VerifyReport {
        suite: suite.name().to_string(),
        passed: checks.iter().all(|c| c.pass),
        checks,
    };
    fs::create_dir_all(&cfg.out_dir)?;
    let json =
        serde_json::to_string_pretty(&report).map_err(|e| Error::DataFormat(e.to_string()))?;
    fs::write(
        cfg.out_dir.join(format!("verify_{}.json", suite.name())),
        json + "\n",
    )?;
    Ok(report)
}

fn constants_checks() -> Result<Vec<Check>> {
    let s = solve_c0(0.25, 0.0)?;
    Ok(vec![
        Check::in_open_interval("c0_in_range", s.c0, 0.46, 0.47),
        Check::le("c0_residual", s.residual, 1e-12),
        Check::le(
            "implied_constant_vs_2.16",
            (s.implied_constant - 2.16).abs(),
            0.01,
        ),
    ])
}

fn kernel_checks(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_central = 0.0f64;
    let mut max_window_var = 0.0f64;
    let mut max_g = 0.0f64;
    let mut max_mass = 0.0f64;
    for _ in 0..100 {
        let a = rng.gen_range(1e-4..0.5);
        let center = rng.gen_range(20.0..1000.0);
        let p = rng.gen_range(0.1..10.0);
        let k = PoissonKernel::new(a, center)?;
        let cf = kernel_closed_forms(&k, p)?;

        let central = adaptive_simpson(&|t| kernel_eval(&k, t).0, 0.5 * center, 1.5 * center, 1e-12);
        max_central = max_central.max((central - cf.central_mass).abs());

        let w = a.sqrt() / p;
        let var =
            adaptive_simpson(&|t| kernel_eval(&k, t).1.abs(), center - w, center + w, 1e-12);
        max_window_var = max_window_var.max((var - cf.window_variation).abs() / (1.0 / a).max(1.0));

        let q = adaptive_simpson(
            &|v| 4.0 * a * v * v / ((a * a + v * v) * (a * a + v * v)),
            0.0,
            w,
            1e-13,
        );
        max_g = max_g.max((0.5 * q - window_integral_closed_form(p * a.sqrt())?).abs());

        max_mass = max_mass.max((cf.full_mass - std::f64::consts::PI).abs());
    }
    Ok(vec![
        Check::le("central_mass_vs_quadrature", max_central, 1e-10),
        Check::le("window_variation_vs_quadrature_rel", max_window_var, 1e-10),
        Check::le("window_integral_vs_quadrature", max_g, 1e-10),
        Check::le("full_mass_is_pi", max_mass, 1e-12),
    ])
}

fn lemma1_checks(cfg: &ScanConfig) -> Result<Vec<Check>> {
    let acc = cfg.accuracy()?;
    let t_lo = cfg.t_min.max(20.0);
    let t_hi = cfg.t_max;
    let zp_zeros = locate_zeta_prime_zeros(t_lo, t_hi, cfg.sigma_max, acc)?;
    if zp_zeros.is_empty() {
        return Ok(vec![Check::le("lemma1_no_zeros_in_range", 0.0, 0.0)]);
    }
    let tail = 10.0 * zp_zeros.last().unwrap().gamma_prime;
    let zeros = locate_critical_zeros(14.0, tail.min(1e4), acc)?;
    let mut max_residual = 0.0f64;
    let mut max_tail = 0.0f64;
    for zp in &zp_zeros {
        let a = zp.beta_prime - 0.5;
        if a <= 1e-12 {
            continue;
        }
        let k = PoissonKernel::from_zero(zp)?;
        let r = lemma1_sum(&k, &zeros, (10.0 * zp.gamma_prime).min(1e4))?;
        max_residual = max_residual.max(r.residual.abs());
        max_tail = max_tail.max(r.tail_bound);
    }
    Ok(vec![
        Check::le(
            "lemma1_max_abs_residual",
            max_residual,
            cfg.verify_bounds.lemma1_residual_max,
        ),
        Check::le("lemma1_max_tail_bound", max_tail, cfg.verify_bounds.lemma1_tail_max),
    ])
}

fn lemma2_checks(cfg: &ScanConfig) -> Result<Vec<Check>> {
    let mut max_res = 0.0f64;
    for i in 0..200 {
        let u = 20.0 + (2000.0 - 20.0) * i as f64 / 199.0;
        max_res = max_res.max(density_residual(u, 0.1)?.abs());
    }
    Ok(vec![Check::le(
        "density_residual_max",
        max_res,
        cfg.verify_bounds.density_max,
    )])
}

fn lemma3_checks(cfg: &ScanConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6c33);
    let mut max_ratio = 0.0f64;
    for _ in 0..500 {
        let t1 = rng.gen_range(100.0..2000.0);
        let t2 = t1 + rng.gen_range(1e-3..0.9 * t1);
        max_ratio = max_ratio.max(lipschitz_ratio(t1, t2)?);
    }
    Ok(vec![Check::le(
        "lipschitz_ratio_max",
        max_ratio,
        cfg.verify_bounds.lipschitz_max,
    )])
}

fn counting_checks(cfg: &ScanConfig) -> Result<Vec<Check>> {
    let acc = cfg.accuracy()?;
    let mut checks = Vec::new();

    // formula count vs bracketing count at the reference heights
    let zeros = locate_critical_zeros(14.0, 1000.0, acc)?;
    let mut max_dev = 0.0f64;
    for t in [50.0, 100.0, 250.0, 500.0, 1000.0] {
        let formula = n_of_t(t, acc)?.n;
        let bracketed = zeros.iter().take_while(|z| z.gamma <= t).count() as i64;
        max_dev = max_dev.max((formula - bracketed).abs() as f64);
    }
    checks.push(Check::le("formula_vs_bracket_count", max_dev, 0.0));

    // S statistics via the certified zero list: S(T) = N(T) - theta(T)/pi - 1
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5a5a);
    let mut sum_s = 0.0;
    let mut max_abs_s = 0.0f64;
    for _ in 0..2000 {
        let t = rng.gen_range(100.0..1000.0);
        let n = zeros.iter().take_while(|z| z.gamma <= t).count() as f64;
        let s = n - riemann_siegel_theta(t)?.value / std::f64::consts::PI - 1.0;
        sum_s += s;
        max_abs_s = max_abs_s.max(s.abs());
    }
    checks.push(Check::le("s_mean_abs", (sum_s / 2000.0).abs(), 0.05));
    checks.push(Check::le("s_max_abs", max_abs_s, cfg.verify_bounds.s_abs_max));
    Ok(checks)
}

/// Summary statistics over a finished scan directory.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pairs_count: usize,
    pub ratio_thm_max: f64,
    pub ratio_thm_mean: f64,
    pub ratio_gy_max: f64,
    pub ratio_gy_mean: f64,
    pub ratio_fgh_max: f64,
    pub ratio_fgh_mean: f64,
    pub fraction_within_hypothesis: f64,
    /// window_zero_count histograms keyed by C, then by count.
    pub window_histograms: BTreeMap<String, BTreeMap<usize, usize>>,
}

/// Read a scan directory, write `summary.json` and plot-ready `ratios.csv`.
pub fn run_report(scan_dir: &Path) -> Result<Summary> {
    let zeros = read_zeros_csv(&scan_dir.join("zeros.csv"))?;
    let pairs = read_pairs_csv(&scan_dir.join("pairs.csv"))?;

    let nondegenerate: Vec<&PairRow> = pairs.iter().filter(|p| p.beta_prime - 0.5 > 1e-12).collect();
    let stat = |f: fn(&PairRow) -> f64| -> (f64, f64) {
        if nondegenerate.is_empty() {
            (0.0, 0.0)
        } else {
            let vals: Vec<f64> = nondegenerate.iter().map(|p| f(p)).collect();
            (
                vals.iter().cloned().fold(0.0, f64::max),
                vals.iter().sum::<f64>() / vals.len() as f64,
            )
        }
    };
    let (thm_max, thm_mean) = stat(|p| p.ratio_thm);
    let (gy_max, gy_mean) = stat(|p| p.ratio_gy);
    let (fgh_max, fgh_mean) = stat(|p| p.ratio_fgh);

    let within = pairs
        .iter()
        .filter(|p| {
            let a = p.beta_prime - 0.5;
            a <= (1.0 + 1e-12) / p.gamma_prime.ln().ln()
        })
        .count();
    let fraction = if pairs.is_empty() {
        0.0
    } else {
        within as f64 / pairs.len() as f64
    };

    let mut histograms = BTreeMap::new();
    for c in [0.5, 1.0, 2.16] {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &nondegenerate {
            let zp = ZetaPrimeZero {
                beta_prime: p.beta_prime,
                gamma_prime: p.gamma_prime,
                residual: 0.0,
            };
            let n = window_zero_count(&zp, c, &zeros)?;
            *hist.entry(n).or_insert(0) += 1;
        }
        histograms.insert(format!("{c}"), hist);
    }

    let summary = Summary {
        pairs_count: pairs.len(),
        ratio_thm_max: thm_max,
        ratio_thm_mean: thm_mean,
        ratio_gy_max: gy_max,
        ratio_gy_mean: gy_mean,
        ratio_fgh_max: fgh_max,
        ratio_fgh_mean: fgh_mean,
        fraction_within_hypothesis: fraction,
        window_histograms: histograms,
    };

    let json =
        serde_json::to_string_pretty(&summary).map_err(|e| Error::DataFormat(e.to_string()))?;
    fs::write(scan_dir.join("summary.json"), json + "\n")?;

    let mut out = String::from("gamma_prime,a,delta,ratio_thm,ratio_gy,ratio_fgh\n");
    for p in &pairs {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.gamma_prime,
            p.beta_prime - 0.5,
            p.delta,
            p.ratio_thm,
            p.ratio_gy,
            p.ratio_fgh
        ));
    }
    let mut f = fs::File::create(scan_dir.join("ratios.csv"))?;
    f.write_all(out.as_bytes())?;
    Ok(summary)
}

fn read_zeros_csv(path: &Path) -> Result<Vec<ZetaZero>> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::DataFormat(format!("{} missing", path.display())),
        _ => Error::Io(e),
    })?;
    let mut lines = text.lines();
    if lines.next() != Some("gamma,bracket_width,z_residual") {
        return Err(Error::DataFormat(format!("bad header in {}", path.display())));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::DataFormat(format!(
                "row {} of {} has {} fields",
                i + 2,
                path.display(),
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::DataFormat(format!("bad number {s} in {}", path.display())))
        };
        rows.push(ZetaZero {
            gamma: parse(fields[0])?,
            bracket_width: parse(fields[1])?,
            z_residual: parse(fields[2])?,
        });
    }
    Ok(rows)
}

fn read_pairs_csv(path: &Path) -> Result<Vec<PairRow>> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::DataFormat(format!("{} missing", path.display())),
        _ => Error::Io(e),
    })?;
    let mut lines = text.lines();
    let header = "beta_prime,gamma_prime,gamma_c,beta_c,delta,ratio_thm,ratio_gy,ratio_fgh,tie_broken";
    if lines.next() != Some(header) {
        return Err(Error::DataFormat(format!("bad header in {}", path.display())));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::DataFormat(format!(
                "row {} of {} has {} fields",
                i + 2,
                path.display(),
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::DataFormat(format!("bad number {s} in {}", path.display())))
        };
        rows.push(PairRow {
            beta_prime: parse(fields[0])?,
            gamma_prime: parse(fields[1])?,
            gamma_c: parse(fields[2])?,
            beta_c: parse(fields[3])?,
            delta: parse(fields[4])?,
            ratio_thm: parse(fields[5])?,
            ratio_gy: parse(fields[6])?,
            ratio_fgh: parse(fields[7])?,
            tie_broken: match fields[8] {
                "true" => true,
                "false" => false,
                other => {
                    return Err(Error::DataFormat(format!(
                        "bad flag {other} in {}",
                        path.display()
                    )))
                }
            },
        });
    }
    Ok(rows)
}
