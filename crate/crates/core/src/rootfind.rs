//! All complex roots of a polynomial by Aberth-Ehrlich simultaneous
//! iteration, with a backward-error certificate per root.
//!
//! Zero roots (vanishing low-order coefficients) are split off exactly and
//! vanishing top coefficients are stripped before iterating. Points outside
//! the unit disk are evaluated through the reversed polynomial at `1/z`, so
//! high degrees never overflow.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::poly::ComplexPolynomial;
use crate::{Error, Real, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

const NEWTON_POLISH_STEPS: usize = 2;
const ANGLE_OFFSET: f64 = 0.4;

/// The roots `Z_1..Z_n` of a polynomial together with their relative
/// residuals `|P(z)| / sum |c_j| |z|^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset<T> {
    roots: Vec<Complex<T>>,
    residuals: Vec<T>,
    converged: bool,
    iterations: usize,
}

impl<T: Real> RootMultiset<T> {
    /// Wraps externally known roots, e.g. exact roots of unity. Residuals
    /// are zero and the set counts as converged.
    pub fn from_exact(roots: Vec<Complex<T>>) -> Self {
        let residuals = vec![T::zero(); roots.len()];
        Self {
            roots,
            residuals,
            converged: true,
            iterations: 0,
        }
    }

    pub fn roots(&self) -> &[Complex<T>] {
        &self.roots
    }

    pub fn residuals(&self) -> &[T] {
        &self.residuals
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// Aberth sweeps performed before the polish.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn worst_residual(&self) -> T {
        self.residuals.iter().copied().fold(T::zero(), T::max)
    }

    /// `M(P) = |c_n| prod max(1, |z_k|)`.
    pub fn mahler(&self, leading: Complex<T>) -> Result<T> {
        crate::poly::mahler_from_roots(leading, &self.roots)
    }

    pub fn log_mahler(&self, leading: Complex<T>) -> Result<T> {
        crate::poly::log_mahler_from_roots(leading, &self.roots)
    }
}

/// Finds every root of `p`.
///
/// A result with `converged == false` is still returned when `max_iter`
/// sweeps do not bring every relative residual under `tol`; the caller
/// decides what to do with it.
pub fn find_roots<T: Real>(p: &ComplexPolynomial<T>, tol: T, max_iter: usize) -> Result<RootMultiset<T>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(tol > T::zero()) {
        return Err(Error::param(
            "tol",
            tol.to_f64().unwrap_or(f64::NAN),
            "must be positive",
        ));
    }
    let c = p.coeffs();
    let top = c.iter().rposition(|x| !x.is_zero()).expect("non-zero polynomial");
    let low = c.iter().position(|x| !x.is_zero()).expect("non-zero polynomial");
    let reduced = &c[low..=top];

    let mut roots = vec![Complex::zero(); low];
    let mut residuals = vec![T::zero(); low];
    let mut iterations = 0;

    match reduced.len() - 1 {
        0 => {}
        1 => {
            let z = -reduced[0] / reduced[1];
            roots.push(z);
            residuals.push(newton_and_residual(reduced, z).1);
        }
        _ => {
            let (r, res, it) = aberth(reduced, tol, max_iter);
            roots.extend(r);
            residuals.extend(res);
            iterations = it;
        }
    }
    let converged = residuals.iter().all(|&r| r <= tol);
    Ok(RootMultiset {
        roots,
        residuals,
        converged,
        iterations,
    })
}

/// Starting points for the iteration on a polynomial with `c_0 c_n != 0`.
///
/// Radii come from the upper convex hull of `(k, ln |c_k|)`: an edge from
/// `i` to `j` places `j - i` points on the circle of radius
/// `(|c_i| / |c_j|)^(1/(j-i))`. Within a circle the angles are
/// `2 pi k / m + 2 pi i / n + 0.4`. Every radius is at most the Cauchy
/// bound `1 + max |c_k / c_n|`.
pub fn initial_guesses<T: Real>(p: &ComplexPolynomial<T>) -> Vec<Complex<T>> {
    guesses_for(p.coeffs())
}

fn guesses_for<T: Real>(c: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let pts: Vec<(usize, T)> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.norm().ln()))
        .collect();

    // upper hull, monotone chain over increasing k
    let mut hull: Vec<(usize, T)> = Vec::with_capacity(pts.len());
    for &q in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross =
                T::from_usize_lossy(b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * T::from_usize_lossy(q.0 - a.0);
            if cross >= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }

    let tau = T::TAU();
    let offset = T::lit(ANGLE_OFFSET);
    let nf = T::from_usize_lossy(n);
    let mut out = Vec::with_capacity(n);
    for edge in hull.windows(2) {
        let ((i, li), (j, lj)) = (edge[0], edge[1]);
        let m = j - i;
        let mf = T::from_usize_lossy(m);
        let radius = ((li - lj) / mf).exp();
        let base = tau * T::from_usize_lossy(i) / nf + offset;
        for k in 0..m {
            let theta = tau * T::from_usize_lossy(k) / mf + base;
            out.push(Complex::from_polar(radius, theta));
        }
    }
    out
}

/// Newton correction `P/P'` and the relative residual at `z`.
fn newton_and_residual<T: Real>(c: &[Complex<T>], z: Complex<T>) -> (Complex<T>, T) {
    let n = c.len() - 1;
    let r = z.norm();
    if r <= T::one() {
        let (mut p, mut dp) = (Complex::zero(), Complex::zero());
        let mut scale = T::zero();
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
            scale = scale * r + a.norm();
        }
        (p / dp, residual(p, scale))
    } else {
        // P(z) = z^n Q(w) with w = 1/z and Q the reversed polynomial.
        let w = z.inv();
        let rw = r.recip();
        let (mut q, mut dq) = (Complex::zero(), Complex::zero());
        let mut scale = T::zero();
        for &a in c.iter() {
            dq = dq * w + q;
            q = q * w + a;
            scale = scale * rw + a.norm();
        }
        // P'/P = w (n - w Q'/Q)
        let nf = Complex::new(T::from_usize_lossy(n), T::zero());
        let corr = q / (w * (nf * q - w * dq));
        (corr, residual(q, scale))
    }
}

fn residual<T: Real>(value: Complex<T>, scale: T) -> T {
    if scale.is_zero() {
        T::zero()
    } else {
        value.norm() / scale
    }
}

fn aberth<T: Real>(c: &[Complex<T>], tol: T, max_iter: usize) -> (Vec<Complex<T>>, Vec<T>, usize) {
    let n = c.len() - 1;
    let mut z = guesses_for(c);
    let mut res = vec![T::infinity(); n];
    let mut done = vec![false; n];
    let mut sweeps = 0;

    while sweeps < max_iter && !done.iter().all(|&d| d) {
        sweeps += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (corr, r) = newton_and_residual(c, z[i]);
            res[i] = r;
            if r <= tol {
                done[i] = true;
                continue;
            }
            let zi = z[i];
            let repulsion = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex::zero(), |acc: Complex<T>, (_, &zj)| acc + (zi - zj).inv());
            let step: Complex<T> = corr / (Complex::<T>::one() - corr * repulsion);
            let next: Complex<T> = zi - step;
            if next.re.is_finite() && next.im.is_finite() {
                z[i] = next;
            }
        }
    }

    polish(c, &mut z, &mut res);
    (z, res, sweeps)
}

/// Up to two Newton steps per root, each kept only if it lowers the
/// residual and moves less than half the distance to the nearest other root.
fn polish<T: Real>(c: &[Complex<T>], z: &mut [Complex<T>], res: &mut [T]) {
    let half = T::lit(0.5);
    for i in 0..z.len() {
        let (mut corr, mut r) = newton_and_residual(c, z[i]);
        for _ in 0..NEWTON_POLISH_STEPS {
            if r.is_zero() {
                break;
            }
            let zi = z[i];
            let nearest = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| (zi - w).norm())
                .fold(T::infinity(), T::min);
            let cand = zi - corr;
            if !(corr.norm() < half * nearest) || !cand.re.is_finite() || !cand.im.is_finite() {
                break;
            }
            let (c2, r2) = newton_and_residual(c, cand);
            if r2 <= r {
                z[i] = cand;
                corr = c2;
                r = r2;
            } else {
                break;
            }
        }
        res[i] = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type P = ComplexPolynomial<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    // distance between multisets by greedy matching; fine for well separated roots
    fn max_match_error(found: &[Complex<f64>], expected: &[Complex<f64>]) -> f64 {
        assert_eq!(found.len(), expected.len());
        let mut used = vec![false; expected.len()];
        let mut worst: f64 = 0.0;
        for z in found {
            let (j, d) = expected
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, e)| (j, (z - e).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            used[j] = true;
            worst = worst.max(d);
        }
        worst
    }

    fn z_pow_minus_one(n: usize) -> P {
        let mut co = vec![c(0.0, 0.0); n + 1];
        co[0] = c(-1.0, 0.0);
        co[n] = c(1.0, 0.0);
        P::new(co)
    }

    #[test]
    fn quadratic() {
        let r = find_roots(&P::from_real(&[-1.0, 0.0, 1.0]), 1e-12, 200).unwrap();
        assert!(r.converged());
        assert!(max_match_error(r.roots(), &[c(1.0, 0.0), c(-1.0, 0.0)]) < 1e-14);
    }

    #[test]
    fn roots_of_unity_128() {
        let r = find_roots(&z_pow_minus_one(128), 1e-12, 200).unwrap();
        assert!(r.converged());
        let exact: Vec<_> = (0..128)
            .map(|k| Complex::from_polar(1.0, 2.0 * PI * k as f64 / 128.0))
            .collect();
        assert!(max_match_error(r.roots(), &exact) <= 1e-10);
    }

    #[test]
    fn expanded_product() {
        // (z - 1/2)(z - 2)(z - i) = z^3 - (5/2 + i) z^2 + (1 + 5i/2) z - i
        let p = P::new(vec![c(0.0, -1.0), c(1.0, 2.5), c(-2.5, -1.0), c(1.0, 0.0)]);
        assert_eq!(
            p,
            P::from_roots(c(1.0, 0.0), &[c(0.5, 0.0), c(2.0, 0.0), c(0.0, 1.0)])
        );
        let r = find_roots(&p, 1e-12, 200).unwrap();
        assert!(r.converged());
        assert!(max_match_error(r.roots(), &[c(0.5, 0.0), c(2.0, 0.0), c(0.0, 1.0)]) <= 1e-10);
    }

    #[test]
    fn strips_and_extracts_zeros() {
        // 0 + 0 z + (-4) z^2 + 0 z^3 + 1 z^4 + 0 z^5 + 0 z^6
        let p = P::from_real(&[0.0, 0.0, -4.0, 0.0, 1.0, 0.0, 0.0]);
        let r = find_roots(&p, 1e-12, 200).unwrap();
        assert_eq!(r.len(), 6 - 2);
        assert!(r.converged());
        assert!(max_match_error(r.roots(), &[c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(-2.0, 0.0)]) < 1e-14);
        assert_eq!(&r.residuals()[..2], &[0.0, 0.0]);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            find_roots(&P::from_real(&[0.0, 0.0]), 1e-12, 10),
            Err(Error::ZeroPolynomial)
        );
        let r = find_roots(&P::from_real(&[3.0]), 1e-12, 10).unwrap();
        assert!(r.is_empty() && r.converged());
        let r = find_roots(&P::from_real(&[0.0, 0.0, 5.0]), 1e-12, 10).unwrap();
        assert_eq!(r.roots(), &[c(0.0, 0.0), c(0.0, 0.0)]);
        let r = find_roots(&P::from_real(&[2.0, 4.0]), 1e-12, 10).unwrap();
        assert_eq!(r.roots(), &[c(-0.5, 0.0)]);
    }

    #[test]
    fn non_convergence_is_reported() {
        let r = find_roots(&z_pow_minus_one(64), 1e-12, 1).unwrap();
        assert!(!r.converged());
        assert!(r.worst_residual() > 1e-12);
        assert_eq!(r.len(), 64);
    }

    #[test]
    fn guesses_small_monic() {
        let p = P::new(vec![
            c(0.3, -0.2),
            c(-1.0, 0.0),
            c(0.0, 0.9),
            c(0.5, 0.5),
            c(1.0, 0.0),
        ]);
        let g = initial_guesses(&p);
        assert_eq!(g.len(), 4);
        for z in &g {
            assert!(z.norm() <= 2.0);
        }
        for i in 0..4 {
            for j in 0..i {
                assert!((g[i] - g[j]).norm() > 1e-6);
            }
        }
    }

    #[test]
    fn guesses_within_cauchy_bound() {
        let p = P::from_real(&[100.0, 0.0, 1e-3, 7.0, 0.0, 0.0, 2.0]);
        let cauchy = 1.0 + 100.0 / 2.0;
        let g = initial_guesses(&p);
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|z| z.norm() <= cauchy));
    }

    #[test]
    fn guesses_distinct_large_degree() {
        for n in [1usize, 2, 3, 17, 1000, 10_000] {
            let g = initial_guesses(&z_pow_minus_one(n));
            assert_eq!(g.len(), n);
            let mut angles: Vec<f64> = g.iter().map(|z| z.arg().rem_euclid(2.0 * PI)).collect();
            angles.sort_by(f64::total_cmp);
            assert!(angles.windows(2).all(|w| w[1] > w[0]), "n={n}");
        }
    }

    #[test]
    fn quadratic_iteration_count() {
        let r = find_roots(&P::from_real(&[-1.0, 0.0, 1.0]), 1e-12, 200).unwrap();
        assert!(r.iterations() <= 25, "{}", r.iterations());
        // recorded value for this construction
        assert_eq!(r.iterations(), 4);
    }

    #[test]
    fn single_precision_solver() {
        let p = ComplexPolynomial::<f32>::from_real(&[-1.0, 0.0, 0.0, 1.0]);
        let r = find_roots(&p, 1e-5, 100).unwrap();
        assert!(r.converged());
        for z in r.roots() {
            assert!((z.powu(3) - Complex::new(1.0f32, 0.0)).norm() < 1e-5);
        }
    }
}
