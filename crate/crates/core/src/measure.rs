//! Plane regions, the empirical root measure `tau_n`, and discrepancies
//! against normalized arc length.
//!
//! Angles follow `arg z` in `[0, 2 pi)` with `arg 0 = 0`. Sectors are
//! half-open in angle, `alpha <= arg z < beta`. A sector that wraps past
//! `2 pi` must be passed as two sectors.

use num_complex::Complex;

use crate::{Error, Real, Result, RootMultiset};

#[derive(Debug, Clone, PartialEq)]
pub enum Region<T> {
    /// `alpha <= arg z < beta`.
    Sector { alpha: T, beta: T },
    /// `r < |z| < 1/r` and `alpha <= arg z < beta`.
    AnnularSector { r: T, alpha: T, beta: T },
    /// `|z| <= r`.
    ClosedOriginDisk { r: T },
    /// `|z| <= r` or `|z| >= 1/r`.
    AnnulusComplement { r: T },
    /// `|z - w| < r` with `|w| = 1`.
    PointDisk { center: Complex<T>, r: T },
    /// Convex polygon with vertices `e^{i theta_j}`, boundary included.
    InscribedPolygon { angles: Vec<T> },
}

fn invalid<T: Real>(name: &'static str, v: T, reason: &'static str) -> Error {
    Error::param(name, v.to_f64().unwrap_or(f64::NAN), reason)
}

fn check_angles<T: Real>(alpha: T, beta: T) -> Result<()> {
    if !(alpha >= T::zero()) {
        return Err(invalid("alpha", alpha, "must satisfy 0 <= alpha"));
    }
    if !(beta > alpha) {
        return Err(invalid("beta", beta, "must satisfy beta > alpha"));
    }
    if !(beta <= T::TAU()) {
        return Err(invalid("beta", beta, "must satisfy beta <= 2 pi"));
    }
    Ok(())
}

fn check_unit_radius<T: Real>(r: T) -> Result<()> {
    if r > T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(invalid("r", r, "must lie in (0, 1)"))
    }
}

impl<T: Real> Region<T> {
    pub fn sector(alpha: T, beta: T) -> Result<Self> {
        check_angles(alpha, beta)?;
        Ok(Region::Sector { alpha, beta })
    }

    pub fn annular_sector(r: T, alpha: T, beta: T) -> Result<Self> {
        check_unit_radius(r)?;
        check_angles(alpha, beta)?;
        Ok(Region::AnnularSector { r, alpha, beta })
    }

    pub fn closed_origin_disk(r: T) -> Result<Self> {
        if r > T::zero() && r.is_finite() {
            Ok(Region::ClosedOriginDisk { r })
        } else {
            Err(invalid("r", r, "must be positive"))
        }
    }

    pub fn annulus_complement(r: T) -> Result<Self> {
        check_unit_radius(r)?;
        Ok(Region::AnnulusComplement { r })
    }

    /// Open disk of radius `r` centered at a point of the unit circle.
    pub fn point_disk(center: Complex<T>, r: T) -> Result<Self> {
        if (center.norm() - T::one()).abs() > T::epsilon().sqrt() {
            return Err(invalid(
                "|w|",
                center.norm(),
                "center must lie on the unit circle",
            ));
        }
        if !(r > T::zero() && r < T::lit(2.0)) {
            return Err(invalid("r", r, "must lie in (0, 2)"));
        }
        Ok(Region::PointDisk { center, r })
    }

    /// Polygon with vertices `e^{i theta_j}`; the angles must be strictly
    /// increasing, span less than a full turn, and number at least three.
    pub fn inscribed_polygon(angles: Vec<T>) -> Result<Self> {
        if angles.len() < 3 {
            return Err(invalid(
                "k",
                T::from_usize_lossy(angles.len()),
                "need at least 3 vertices",
            ));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(invalid("theta", T::nan(), "vertex angles must be finite"));
        }
        if angles.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid(
                "theta",
                T::zero(),
                "vertex angles must be strictly increasing",
            ));
        }
        let span = angles[angles.len() - 1] - angles[0];
        if !(span < T::TAU()) {
            return Err(invalid("theta", span, "vertex angles must span less than 2 pi"));
        }
        Ok(Region::InscribedPolygon { angles })
    }

    /// The regular inscribed square with vertices `1, i, -1, -i`.
    pub fn inscribed_square() -> Self {
        let h = T::FRAC_PI_2();
        Region::InscribedPolygon {
            angles: vec![T::zero(), h, h + h, h + h + h],
        }
    }

    pub fn contains(&self, z: Complex<T>) -> bool {
        match self {
            Region::Sector { alpha, beta } => in_angle(z, *alpha, *beta),
            Region::AnnularSector { r, alpha, beta } => {
                let m = z.norm();
                m > *r && m < r.recip() && in_angle(z, *alpha, *beta)
            }
            Region::ClosedOriginDisk { r } => z.norm() <= *r,
            Region::AnnulusComplement { r } => {
                let m = z.norm();
                m <= *r || m >= r.recip()
            }
            Region::PointDisk { center, r } => (z - center).norm() < *r,
            Region::InscribedPolygon { angles } => {
                let v: Vec<Complex<T>> = angles.iter().map(|&a| Complex::from_polar(T::one(), a)).collect();
                (0..v.len()).all(|j| {
                    let (a, b) = (v[j], v[(j + 1) % v.len()]);
                    let e = b - a;
                    let d = z - a;
                    e.re * d.im - e.im * d.re >= T::zero()
                })
            }
        }
    }
}

/// `arg z` in `[0, 2 pi)`, with `arg 0 = 0`.
pub fn arg_2pi<T: Real>(z: Complex<T>) -> T {
    let a = z.im.atan2(z.re);
    if a >= T::zero() {
        return a;
    }
    let w = a + T::TAU();
    // a tiny negative angle rounds up to exactly 2 pi
    if w >= T::TAU() {
        T::zero()
    } else {
        w
    }
}

fn in_angle<T: Real>(z: Complex<T>, alpha: T, beta: T) -> bool {
    let a = arg_2pi(z);
    a >= alpha && a < beta
}

/// Number of roots (with multiplicity) lying in `region`.
pub fn count<T: Real>(roots: &[Complex<T>], region: &Region<T>) -> usize {
    roots.iter().filter(|&&z| region.contains(z)).count()
}

/// `tau_n(region)`: fraction of the roots lying in `region`.
pub fn tau<T: Real>(roots: &RootMultiset<T>, region: &Region<T>) -> Result<T> {
    tau_of(roots.roots(), region)
}

pub fn tau_of<T: Real>(roots: &[Complex<T>], region: &Region<T>) -> Result<T> {
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    Ok(T::from_usize_lossy(count(roots, region)) / T::from_usize_lossy(roots.len()))
}

fn arc_fraction<T: Real>(alpha: T, beta: T) -> T {
    (beta - alpha) / T::TAU()
}

/// `|tau_n(S(alpha, beta)) - (beta - alpha) / 2 pi|`.
pub fn sector_discrepancy<T: Real>(roots: &[Complex<T>], alpha: T, beta: T) -> Result<T> {
    let s = Region::sector(alpha, beta)?;
    Ok((tau_of(roots, &s)? - arc_fraction(alpha, beta)).abs())
}

/// `|tau_n(A_r(alpha, beta)) - (beta - alpha) / 2 pi|`.
pub fn annular_discrepancy<T: Real>(roots: &[Complex<T>], r: T, alpha: T, beta: T) -> Result<T> {
    let a = Region::annular_sector(r, alpha, beta)?;
    Ok((tau_of(roots, &a)? - arc_fraction(alpha, beta)).abs())
}
