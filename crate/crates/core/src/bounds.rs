//! Deterministic discrepancy bounds and the expected-value bounds built on
//! them.
//!
//! Per-polynomial bounds (`et_ganelius_bound`, `mignotte_annular_bound`,
//! `mplus_upper_from_lp`, `jensen_disk_bounds`) hold for every admissible
//! polynomial. The remaining functions bound expectations over a
//! coefficient law described by [`BoundInputs`].

use num_complex::Complex;

use crate::constants;
use crate::poly::{log_mahler_from_roots, CircleGrid, ComplexPolynomial};
use crate::{Error, Real, Result};

/// Ensemble summary fed to the expected-value bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs<T> {
    /// Degree.
    pub n: usize,
    /// Annulus parameter, `0 < r < 1`.
    pub r: T,
    /// Moment order.
    pub t: T,
    /// `E |C_0|^t`.
    pub mu_t: T,
    /// `E ln |C_0|`.
    pub e_log_c0: T,
    /// `E ln |C_n|`; equals `e_log_c0` for identically distributed moduli.
    pub e_log_cn: T,
    /// `E |C_k|` and `Std |C_k|`, common to all k (non-iid bound only).
    pub mu_abs: T,
    pub sigma_abs: T,
    /// Distance from a compact set to the unit circle (compact-set bound only).
    pub d: T,
}

impl<T: Real> BoundInputs<T> {
    /// Inputs for an iid law; the non-iid and distance fields are left at
    /// neutral values (`mu_abs = 1`, `sigma_abs = 0`, `d = 1`).
    pub fn iid(n: usize, r: T, t: T, mu_t: T, e_log_c0: T) -> Self {
        Self {
            n,
            r,
            t,
            mu_t,
            e_log_c0,
            e_log_cn: e_log_c0,
            mu_abs: T::one(),
            sigma_abs: T::zero(),
            d: T::one(),
        }
    }

    pub fn with_abs_moments(mut self, mu_abs: T, sigma_abs: T) -> Self {
        self.mu_abs = mu_abs;
        self.sigma_abs = sigma_abs;
        self
    }

    pub fn with_e_log_cn(mut self, e_log_cn: T) -> Self {
        self.e_log_cn = e_log_cn;
        self
    }

    pub fn with_distance(mut self, d: T) -> Self {
        self.d = d;
        self
    }

    pub fn with_degree(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::param("n", self.n as f64, "degree must be >= 1"));
        }
        check_r(self.r)?;
        if !(self.t > T::zero()) {
            return Err(param("t", self.t, "must be positive"));
        }
        if !(self.mu_t > T::zero()) || !self.mu_t.is_finite() {
            return Err(param("mu_t", self.mu_t, "must be positive and finite"));
        }
        if !self.e_log_c0.is_finite() || !self.e_log_cn.is_finite() {
            return Err(param("e_log", self.e_log_c0, "log-moments must be finite"));
        }
        Ok(())
    }

    fn n_real(&self) -> T {
        T::from_usize_lossy(self.n)
    }

    /// `sqrt(2 pi / k) + 2 / (1 - r)`.
    fn prefactor(&self) -> T {
        constants::ganelius_factor::<T>() + T::lit(2.0) / (T::one() - self.r)
    }
}

fn param<T: Real>(name: &'static str, v: T, reason: &'static str) -> Error {
    Error::param(name, v.to_f64().unwrap_or(f64::NAN), reason)
}

fn check_r<T: Real>(r: T) -> Result<()> {
    if r > T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(param("r", r, "must lie in (0, 1)"))
    }
}

fn checked_ln<T: Real>(x: T, context: &'static str) -> Result<T> {
    if x > T::zero() {
        Ok(x.ln())
    } else {
        Err(Error::Domain {
            context,
            value: x.to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn degree_of<T: Real>(p: &ComplexPolynomial<T>) -> Result<T> {
    if !p.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    if p.degree() < 1 {
        return Err(Error::param("n", 0.0, "degree must be >= 1"));
    }
    Ok(T::from_usize_lossy(p.degree()))
}

/// Catalan's constant.
pub fn catalan_constant<T: Real>() -> T {
    constants::catalan()
}

/// `sqrt(2 pi / k) * sqrt(ln(||P||_inf / sqrt|c_0 c_n|) / n)`, the bound on
/// the angular discrepancy of the roots in any sector.
pub fn et_ganelius_bound<T: Real>(p: &ComplexPolynomial<T>, grid: &CircleGrid) -> Result<T> {
    let n = degree_of(p)?;
    let sup = p.sup_norm(grid);
    let ratio = sup / (p.constant().norm() * p.leading().norm()).sqrt();
    // ||P||_inf >= ||P||_2 >= sqrt|c_0 c_n|; the grid mean of |P|^2 is exact,
    // so anything below 1 beyond rounding means a broken evaluation
    if !(ratio >= T::one() - T::lit(1e3) * T::epsilon()) {
        return Err(Error::Domain {
            context: "sup norm below sqrt|c_0 c_n|",
            value: ratio.to_f64().unwrap_or(f64::NAN),
        });
    }
    let log = checked_ln(ratio, "et_ganelius_bound")?.max(T::zero());
    Ok(constants::ganelius_factor::<T>() * (log / n).sqrt())
}

/// The annular-sector bound, split into its two terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MignotteBound<T> {
    /// `sqrt(2 pi / k) sqrt(m^+(Q) / n)` with `Q = P / sqrt|c_0 c_n|`.
    pub sector_term: T,
    /// `2 m(Q) / (n (1 - r))`.
    pub radial_term: T,
    /// `m(Q)` came out negative and was replaced by zero.
    pub floored: bool,
}

impl<T: Real> MignotteBound<T> {
    pub fn total(&self) -> T {
        self.sector_term + self.radial_term
    }
}

/// Bound on `|tau_n(A_r(alpha, beta)) - (beta - alpha)/2 pi|` with `m` and
/// `m^+` of the normalized polynomial from quadrature.
pub fn mignotte_annular_bound<T: Real>(
    p: &ComplexPolynomial<T>,
    r: T,
    grid: &CircleGrid,
) -> Result<MignotteBound<T>> {
    check_r(r)?;
    let q = p.normalize()?;
    let m = q.log_mahler(grid)?;
    mignotte_terms(p, &q, m, r, grid)
}

/// As [`mignotte_annular_bound`], but `m` is taken from the roots by
/// Jensen's formula; only `m^+` needs quadrature.
pub fn mignotte_annular_bound_with_roots<T: Real>(
    p: &ComplexPolynomial<T>,
    roots: &[Complex<T>],
    r: T,
    grid: &CircleGrid,
) -> Result<MignotteBound<T>> {
    check_r(r)?;
    let q = p.normalize()?;
    let m = log_mahler_from_roots(q.leading(), roots)?;
    mignotte_terms(p, &q, m, r, grid)
}

fn mignotte_terms<T: Real>(
    p: &ComplexPolynomial<T>,
    q: &ComplexPolynomial<T>,
    m: T,
    r: T,
    grid: &CircleGrid,
) -> Result<MignotteBound<T>> {
    let n = degree_of(p)?;
    let mplus = q.log_mahler_plus(grid)?;
    let floored = m < T::zero();
    let m = m.max(T::zero());
    Ok(MignotteBound {
        sector_term: constants::ganelius_factor::<T>() * (mplus / n).sqrt(),
        radial_term: T::lit(2.0) * m / (n * (T::one() - r)),
        floored,
    })
}

/// `ln ||P||_p + 1 / (e p)`, an upper bound for `m^+(P)` when
/// `||P||_p >= 1`. For `p = 2` the norm comes from the coefficients.
pub fn mplus_upper_from_lp<T: Real>(p: &ComplexPolynomial<T>, order: T, grid: &CircleGrid) -> Result<T> {
    let norm = if order == T::lit(2.0) {
        p.l2_norm()
    } else {
        p.lp_norm(order, grid)?
    };
    if !(norm >= T::one()) {
        return Err(Error::NormBelowOne {
            p: order.to_f64().unwrap_or(f64::NAN),
            norm: norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(norm.ln() + (T::E() * order).recip())
}

/// `((m - ln|c_0|) / (n(1-r)), (m - ln|c_n|) / (n(1-r)))`: bounds for
/// `tau_n(closed D_r)` and `tau_n(C \ D_{1/r})`, with `m` from quadrature.
pub fn jensen_disk_bounds<T: Real>(p: &ComplexPolynomial<T>, r: T, grid: &CircleGrid) -> Result<(T, T)> {
    check_r(r)?;
    degree_of(p)?;
    let m = p.log_mahler(grid)?;
    jensen_from_m(p, m, r)
}

pub fn jensen_disk_bounds_with_roots<T: Real>(
    p: &ComplexPolynomial<T>,
    roots: &[Complex<T>],
    r: T,
) -> Result<(T, T)> {
    check_r(r)?;
    degree_of(p)?;
    let m = log_mahler_from_roots(p.leading(), roots)?;
    jensen_from_m(p, m, r)
}

fn jensen_from_m<T: Real>(p: &ComplexPolynomial<T>, m: T, r: T) -> Result<(T, T)> {
    let n = degree_of(p)?;
    let denom = n * (T::one() - r);
    let inner = (m - checked_ln(p.constant().norm(), "ln|c_0|")?) / denom;
    let outer = (m - checked_ln(p.leading().norm(), "ln|c_n|")?) / denom;
    Ok((inner, outer))
}

/// Expected annular discrepancy bound for iid coefficients:
/// `(sqrt(2pi/k) + 2/(1-r)) sqrt(B / n)` with
/// `B = (t+2)/(2t) ln(n+1) + ln(mu_t)/t + 1/(2e) - E ln|C_0|`.
pub fn thm_main_bound<T: Real>(inputs: &BoundInputs<T>) -> Result<T> {
    inputs.validate()?;
    let two = T::lit(2.0);
    let t = inputs.t;
    let bracket = (t + two) / (two * t) * (inputs.n_real() + T::one()).ln()
        + checked_ln(inputs.mu_t, "ln mu_t")? / t
        + (two * T::E()).recip()
        - inputs.e_log_c0;
    if bracket < T::zero() {
        return Err(Error::Domain {
            context: "thm_main_bound bracket",
            value: bracket.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(inputs.prefactor() * (bracket / inputs.n_real()).sqrt())
}

/// Bound on the expected number of zeros in a compact set at distance `d`
/// from the unit circle:
/// `(d+1)/d ((t+2)/t ln(n+1) + (2/t) ln mu_t - 2 E ln|C_0|)`.
pub fn compact_set_bound<T: Real>(inputs: &BoundInputs<T>) -> Result<T> {
    inputs.validate()?;
    let d = inputs.d;
    if !(d > T::zero()) || !d.is_finite() {
        return Err(param("d", d, "must be positive"));
    }
    let two = T::lit(2.0);
    let t = inputs.t;
    let inner = (t + two) / t * (inputs.n_real() + T::one()).ln()
        + two / t * checked_ln(inputs.mu_t, "ln mu_t")?
        - two * inputs.e_log_c0;
    Ok((d + T::one()) / d * inner)
}

/// Leading term `2 arcsin(r/2) n / pi` of the expected zero count in a
/// disk of radius `r` centered on the unit circle.
pub fn disk_count_main_term<T: Real>(n: usize, r_disk: T) -> Result<T> {
    if !(r_disk > T::zero() && r_disk < T::lit(2.0)) {
        return Err(param("r_disk", r_disk, "must lie in (0, 2)"));
    }
    Ok(T::lit(2.0) * (r_disk / T::lit(2.0)).asin() / T::PI() * T::from_usize_lossy(n))
}

/// Expected annular discrepancy bound for coefficients whose moduli share
/// mean `mu` and standard deviation `sigma` but need not be independent:
/// `(sqrt(2pi/k) + 2/(1-r)) sqrt(B / n)` with
/// `B = ln(n+1)/2 + ln(mu + sigma sqrt n) + 1/(2e) - (E ln|C_0| + E ln|C_n|)/2`.
pub fn noniid_bound<T: Real>(inputs: &BoundInputs<T>) -> Result<T> {
    if inputs.n < 1 {
        return Err(Error::param("n", 0.0, "degree must be >= 1"));
    }
    check_r(inputs.r)?;
    if !(inputs.mu_abs >= T::zero()) || !inputs.mu_abs.is_finite() {
        return Err(param("mu_abs", inputs.mu_abs, "must be finite and >= 0"));
    }
    if !(inputs.sigma_abs >= T::zero()) || !inputs.sigma_abs.is_finite() {
        return Err(param("sigma_abs", inputs.sigma_abs, "must be finite and >= 0"));
    }
    let two = T::lit(2.0);
    let n = inputs.n_real();
    let bracket = (n + T::one()).ln() / two
        + checked_ln(
            inputs.mu_abs + inputs.sigma_abs * n.sqrt(),
            "ln(mu + sigma sqrt n)",
        )?
        + (two * T::E()).recip()
        - (inputs.e_log_c0 + inputs.e_log_cn) / two;
    if bracket < T::zero() {
        return Err(Error::Domain {
            context: "noniid_bound bracket",
            value: bracket.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(inputs.prefactor() * (bracket / n).sqrt())
}
