//! Coefficient laws, their samplers, and closed forms for the moments and
//! order statistics that feed the expected-value bounds.
//!
//! Randomness is counter based. A [`RandomStream`] names one trial of one
//! experiment by `(seed, trial)`; coefficient `k` of that trial reads from
//! its own ChaCha8 substream (stream id = trial, word offset = slot `k+1`).
//! Draws therefore do not depend on execution order or thread count.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

use crate::constants::EULER_GAMMA;
use crate::{BoundInputs, Error, Polynomial, Result};

/// `u32` words reserved per coefficient slot of a substream.
const WORDS_PER_SLOT: u128 = 64;

/// Identifies the random input of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomStream {
    seed: u64,
    trial: u64,
}

impl RandomStream {
    pub fn new(seed: u64, trial: u64) -> Self {
        Self { seed, trial }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trial(&self) -> u64 {
        self.trial
    }

    fn slot(&self, slot: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trial);
        rng.set_word_pos(u128::from(slot) * WORDS_PER_SLOT);
        rng
    }

    /// Substream for coefficient `k`.
    pub fn coefficient(&self, k: usize) -> ChaCha8Rng {
        self.slot(k as u64 + 1)
    }

    /// Substream for randomness shared by all coefficients of the trial.
    pub fn shared(&self) -> ChaCha8Rng {
        self.slot(0)
    }
}

/// Law of the coefficients `C_k`. Every variant has a uniform, independent
/// phase; they differ in the modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ensemble {
    /// Standard complex Gaussian: `P(|C| <= x) = 1 - e^{-x^2}`.
    Gaussian,
    /// `P(|C| <= x) = 1 - x^{1-alpha}` for `x >= 1`, `alpha > 1`.
    Pareto { alpha: f64 },
    /// Uniform on the unit circle.
    UnimodularUniform,
    /// Uniform on the disk `|z| <= k`.
    DiskUniform { k: f64 },
    /// `C_k = s A + G_k` with `A`, `G_k` independent standard complex
    /// Gaussians and `A` shared across `k`. Dependent for `s > 0`, with
    /// identically distributed moduli.
    Exchangeable { s: f64 },
}

/// Draws `(|C|^2 ~ Exp(1), uniform phase)`.
fn standard_gaussian(rng: &mut ChaCha8Rng) -> Complex<f64> {
    let u = 1.0 - rng.random::<f64>();
    let modulus = (-u.ln()).sqrt();
    Complex::from_polar(modulus, uniform_phase(rng))
}

fn uniform_phase(rng: &mut ChaCha8Rng) -> f64 {
    std::f64::consts::TAU * rng.random::<f64>()
}

impl Ensemble {
    pub fn pareto(alpha: f64) -> Result<Self> {
        if alpha > 1.0 && alpha.is_finite() {
            Ok(Ensemble::Pareto { alpha })
        } else {
            Err(Error::param("alpha", alpha, "Pareto ensemble needs alpha > 1"))
        }
    }

    pub fn disk(k: f64) -> Result<Self> {
        if k > 0.0 && k.is_finite() {
            Ok(Ensemble::DiskUniform { k })
        } else {
            Err(Error::param("K", k, "disk radius must be positive"))
        }
    }

    pub fn exchangeable(s: f64) -> Result<Self> {
        if s >= 0.0 && s.is_finite() {
            Ok(Ensemble::Exchangeable { s })
        } else {
            Err(Error::param("s", s, "shared weight must be >= 0"))
        }
    }

    /// Whether the coefficients are independent.
    pub fn is_iid(&self) -> bool {
        !matches!(self, Ensemble::Exchangeable { s } if *s > 0.0)
    }

    /// A moment order with finite `E|C|^t`: 2 except for Pareto, which
    /// uses `(alpha - 1) / 2`.
    pub fn default_moment_order(&self) -> f64 {
        match self {
            Ensemble::Pareto { alpha } => (alpha - 1.0) / 2.0,
            _ => 2.0,
        }
    }

    /// The `n + 1` coefficients of a degree-`n` polynomial.
    pub fn sample_polynomial(&self, n: usize, stream: &RandomStream) -> Result<Polynomial> {
        if n < 1 {
            return Err(Error::param("n", n as f64, "degree must be >= 1"));
        }
        let coeffs = match *self {
            Ensemble::Exchangeable { s } => {
                let a = standard_gaussian(&mut stream.shared()) * s;
                (0..=n)
                    .map(|k| a + standard_gaussian(&mut stream.coefficient(k)))
                    .collect()
            }
            _ => (0..=n)
                .map(|k| self.sample_iid(&mut stream.coefficient(k)))
                .collect(),
        };
        Ok(Polynomial::new(coeffs))
    }

    fn sample_iid(&self, rng: &mut ChaCha8Rng) -> Complex<f64> {
        match *self {
            Ensemble::Gaussian => standard_gaussian(rng),
            Ensemble::Pareto { alpha } => {
                let u: f64 = rng.random();
                let modulus = (1.0 - u).powf(-1.0 / (alpha - 1.0));
                Complex::from_polar(modulus, uniform_phase(rng))
            }
            Ensemble::UnimodularUniform => Complex::from_polar(1.0, uniform_phase(rng)),
            Ensemble::DiskUniform { k } => {
                let u: f64 = rng.random();
                Complex::from_polar(k * u.sqrt(), uniform_phase(rng))
            }
            Ensemble::Exchangeable { .. } => unreachable!("exchangeable draws are joint"),
        }
    }

    /// `P(|C_0| <= r)`.
    pub fn modulus_cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        match *self {
            Ensemble::Gaussian => -(-r * r).exp_m1(),
            Ensemble::Pareto { alpha } => {
                if r < 1.0 {
                    0.0
                } else {
                    1.0 - r.powf(1.0 - alpha)
                }
            }
            Ensemble::UnimodularUniform => {
                if r >= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Ensemble::DiskUniform { k } => (r / k).min(1.0).powi(2),
            Ensemble::Exchangeable { s } => -(-r * r / (1.0 + s * s)).exp_m1(),
        }
    }

    /// Density of `|C_0|`.
    pub fn modulus_density(&self, r: f64) -> Result<f64> {
        if r < 0.0 {
            return Ok(0.0);
        }
        Ok(match *self {
            Ensemble::Gaussian => 2.0 * r * (-r * r).exp(),
            Ensemble::Pareto { alpha } => {
                if r < 1.0 {
                    0.0
                } else {
                    (alpha - 1.0) * r.powf(-alpha)
                }
            }
            Ensemble::UnimodularUniform => {
                return Err(Error::Unsupported {
                    op: "modulus density",
                    ensemble: self.to_string(),
                })
            }
            Ensemble::DiskUniform { k } => {
                if r <= k {
                    2.0 * r / (k * k)
                } else {
                    0.0
                }
            }
            Ensemble::Exchangeable { s } => {
                let v = 1.0 + s * s;
                2.0 * r / v * (-r * r / v).exp()
            }
        })
    }

    /// Density of `Y_n = max_{k<=n} |C_k|`: `(n+1) rho(r) R(r)^n`.
    pub fn max_density(&self, n: usize, r: f64) -> Result<f64> {
        if n < 1 {
            return Err(Error::param("n", n as f64, "degree must be >= 1"));
        }
        if !self.is_iid() {
            return Err(Error::Unsupported {
                op: "max_density",
                ensemble: self.to_string(),
            });
        }
        let rho = self.modulus_density(r)?;
        if rho == 0.0 {
            return Ok(0.0);
        }
        Ok((n as f64 + 1.0) * rho * self.modulus_cdf(r).powi(n as i32))
    }

    /// `E|C_0|^t`; infinite for Pareto when `t >= alpha - 1`.
    pub fn moment_t(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::param("t", t, "moment order must be positive"));
        }
        Ok(match *self {
            Ensemble::Gaussian => gamma(t / 2.0 + 1.0),
            Ensemble::Pareto { alpha } => {
                if t < alpha - 1.0 {
                    (alpha - 1.0) / (alpha - 1.0 - t)
                } else {
                    f64::INFINITY
                }
            }
            Ensemble::UnimodularUniform => 1.0,
            Ensemble::DiskUniform { k } => 2.0 * k.powf(t) / (t + 2.0),
            // s A + G_0 is a complex Gaussian with E|.|^2 = 1 + s^2
            Ensemble::Exchangeable { s } => (1.0 + s * s).powf(t / 2.0) * gamma(t / 2.0 + 1.0),
        })
    }

    /// `E ln|C_0|`.
    pub fn expected_log_modulus(&self) -> f64 {
        match *self {
            Ensemble::Gaussian => -EULER_GAMMA / 2.0,
            Ensemble::Pareto { alpha } => 1.0 / (alpha - 1.0),
            Ensemble::UnimodularUniform => 0.0,
            Ensemble::DiskUniform { k } => k.ln() - 0.5,
            Ensemble::Exchangeable { s } => 0.5 * (1.0 + s * s).ln() - EULER_GAMMA / 2.0,
        }
    }

    /// `(1/t)(ln(n+1) + ln E|C|^t)`, an upper bound for `E ln Y_n`.
    pub fn expected_log_max_bound(&self, n: usize, t: f64) -> Result<f64> {
        let mu = self.moment_t(t)?;
        if !mu.is_finite() {
            return Err(Error::InfiniteMoment {
                ensemble: self.to_string(),
                t,
            });
        }
        Ok(((n as f64 + 1.0).ln() + mu.ln()) / t)
    }

    /// `E ln Y_n` in closed form, where one is known.
    pub fn exact_log_max(&self, n: usize) -> Option<f64> {
        match *self {
            Ensemble::Gaussian => Some(gaussian_log_max_exact(n)),
            Ensemble::Pareto { alpha } => pareto_log_max_exact(n, alpha).ok(),
            Ensemble::UnimodularUniform => Some(0.0),
            _ => None,
        }
    }

    /// `(E|C_0|, Std|C_0|)` for the exchangeable ensemble.
    pub fn noniid_moments(&self) -> Result<(f64, f64)> {
        match *self {
            Ensemble::Exchangeable { s } => {
                let v = 1.0 + s * s;
                let mu = v.sqrt() * std::f64::consts::PI.sqrt() / 2.0;
                let var = v * (1.0 - std::f64::consts::FRAC_PI_4);
                Ok((mu, var.sqrt()))
            }
            _ => Err(Error::Unsupported {
                op: "noniid_moments",
                ensemble: self.to_string(),
            }),
        }
    }

    /// Inputs for the expected-discrepancy bounds at degree `n`.
    pub fn bound_inputs(&self, n: usize, r: f64, t: f64) -> Result<BoundInputs<f64>> {
        let mu_t = self.moment_t(t)?;
        if !mu_t.is_finite() {
            return Err(Error::InfiniteMoment {
                ensemble: self.to_string(),
                t,
            });
        }
        let e_log = self.expected_log_modulus();
        let inputs = BoundInputs::iid(n, r, t, mu_t, e_log);
        Ok(match self.noniid_moments() {
            Ok((mu, sigma)) => inputs.with_abs_moments(mu, sigma),
            Err(_) => inputs,
        })
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ensemble::Gaussian => write!(f, "gaussian"),
            Ensemble::Pareto { alpha } => write!(f, "pareto:alpha={alpha}"),
            Ensemble::UnimodularUniform => write!(f, "unimodular"),
            Ensemble::DiskUniform { k } => write!(f, "disk:K={k}"),
            Ensemble::Exchangeable { s } => write!(f, "exchangeable:s={s}"),
        }
    }
}

impl FromStr for Ensemble {
    type Err = Error;

    /// `gaussian`, `pareto:alpha=<v>`, `unimodular`, `disk:K=<v>`,
    /// `exchangeable:s=<v>`.
    fn from_str(input: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            what: "ensemble",
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (name, arg) = match input.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (input.trim(), None),
        };
        let value = |key: &str| -> Result<f64> {
            let arg = arg.ok_or_else(|| bad(&format!("missing `{key}=<value>`")))?;
            let (k, v) = arg.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            if k.trim() != key {
                return Err(bad(&format!("expected parameter `{key}`")));
            }
            v.trim().parse::<f64>().map_err(|e| bad(&e.to_string()))
        };
        let no_arg = |e: Ensemble| -> Result<Ensemble> {
            match arg {
                None => Ok(e),
                Some(_) => Err(bad("takes no parameters")),
            }
        };
        match name {
            "gaussian" => no_arg(Ensemble::Gaussian),
            "unimodular" => no_arg(Ensemble::UnimodularUniform),
            "pareto" => Ensemble::pareto(value("alpha")?),
            "disk" => Ensemble::disk(value("K")?),
            "exchangeable" => Ensemble::exchangeable(value("s")?),
            _ => Err(bad("unknown ensemble")),
        }
    }
}

/// `H_n = sum_{k=1}^n 1/k`.
pub fn harmonic(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::param("n", n as f64, "harmonic number needs n >= 1"));
    }
    // smallest terms first
    Ok((1..=n).rev().map(|k| 1.0 / k as f64).sum())
}

/// `E ln Y_n = H_{n+1} / (alpha - 1)` for the Pareto ensemble.
pub fn pareto_log_max_exact(n: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::param("alpha", alpha, "Pareto ensemble needs alpha > 1"));
    }
    Ok(harmonic(n + 1)? / (alpha - 1.0))
}

/// Largest degree evaluated by the alternating binomial sum.
pub const GAUSSIAN_SERIES_MAX_N: usize = 25;

/// `E ln Y_n` for Gaussian coefficients: the alternating sum for
/// `n <= 25`, quadrature beyond.
pub fn gaussian_log_max_exact(n: usize) -> f64 {
    if n <= GAUSSIAN_SERIES_MAX_N {
        gaussian_log_max_series(n)
    } else {
        gaussian_log_max_quadrature(n)
    }
}

/// `-gamma/2 + (1/2) sum_{k=2}^{n+1} (-1)^k C(n+1, k) ln k`, accumulated
/// with Neumaier compensation. Cancellation makes this unusable much past
/// `n = 25` in double precision.
pub fn gaussian_log_max_series(n: usize) -> f64 {
    let m = n + 1;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut binom = m as f64; // C(m, 1)
    for k in 2..=m {
        binom = binom * (m - k + 1) as f64 / k as f64;
        let term = if k % 2 == 0 { 1.0 } else { -1.0 } * binom * (k as f64).ln();
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    -EULER_GAMMA / 2.0 + 0.5 * (sum + comp)
}

/// `2(n+1) int_0^inf x ln x e^{-x^2} (1 - e^{-x^2})^n dx` by composite
/// Simpson on `[0, sqrt(ln(n+1) + 45)]`, beyond which the integrand is
/// below double precision.
pub fn gaussian_log_max_quadrature(n: usize) -> f64 {
    const INTERVALS: usize = 20_000;
    let np1 = n as f64 + 1.0;
    let upper = (np1.ln() + 45.0).sqrt();
    let f = |x: f64| -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let x2 = x * x;
        // (1 - e^{-x^2})^n in log space
        let log_pow = if n == 0 {
            0.0
        } else {
            n as f64 * (-(-x2).exp_m1()).ln()
        };
        2.0 * np1 * x * x.ln() * (log_pow - x2).exp()
    };
    let h = upper / INTERVALS as f64;
    let mut acc = f(0.0) + f(upper);
    for i in 1..INTERVALS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    acc * h / 3.0
}
