//! Dense complex polynomials and their norms on the unit circle.
//!
//! Circle integrals (`L^p` norms, Mahler functionals) use the composite
//! trapezoid rule on a uniform angular grid. For a polynomial of degree `n`
//! the grid has at least `max(4096, 64(n+1))` nodes, rounded up to a power
//! of two; see [`CircleGrid::for_degree`]. Node values come from one
//! inverse FFT of the (aliased) coefficient vector.

use num_complex::Complex;
use num_traits::{One, Zero};
use rustfft::FftPlanner;

use crate::{Error, Real, Result};

/// Uniform grid `theta_j = 2 pi j / N` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleGrid {
    nodes: usize,
}

impl CircleGrid {
    pub const MIN_NODES: usize = 8;
    pub const BASE_NODES: usize = 4096;
    pub const NODES_PER_COEFF: usize = 64;

    pub fn new(nodes: usize) -> Result<Self> {
        if nodes < Self::MIN_NODES || !nodes.is_power_of_two() {
            return Err(Error::param(
                "node_count",
                nodes as f64,
                "must be a power of two >= 8",
            ));
        }
        Ok(Self { nodes })
    }

    /// The grid used for log-integrals of a degree-`degree` polynomial.
    pub fn for_degree(degree: usize) -> Self {
        let want = Self::BASE_NODES.max(Self::NODES_PER_COEFF * (degree + 1));
        Self {
            nodes: want.next_power_of_two(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn angle<T: Real>(&self, j: usize) -> T {
        T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(self.nodes)
    }

    pub fn node<T: Real>(&self, j: usize) -> Complex<T> {
        Complex::from_polar(T::one(), self.angle(j))
    }

    pub fn step<T: Real>(&self) -> T {
        T::TAU() / T::from_usize_lossy(self.nodes)
    }
}

/// `c_0 + c_1 z + ... + c_n z^n`, stored densely from the constant term up.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> ComplexPolynomial<T> {
    /// Builds a polynomial from `c_0..c_n`. The degree is `coeffs.len() - 1`
    /// even when trailing coefficients are zero; an empty list is the zero
    /// constant.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        if coeffs.is_empty() {
            return Self {
                coeffs: vec![Complex::zero()],
            };
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    /// Expands `leading * prod (z - root)`.
    pub fn from_roots(leading: Complex<T>, roots: &[Complex<T>]) -> Self {
        let mut c = vec![leading];
        for &r in roots {
            let mut next = vec![Complex::zero(); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self::new(c)
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Complex::zero(); n + 1];
        c[n] = Complex::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant(&self) -> Complex<T> {
        self.coeffs[0]
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs[self.degree()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `c_0 c_n != 0`: the hypothesis of every discrepancy bound.
    pub fn is_admissible(&self) -> bool {
        !self.constant().is_zero() && !self.leading().is_zero()
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    /// `sqrt(sum |c_k|^2)`, which equals the circle `L^2` norm by Parseval.
    pub fn l2_norm(&self) -> T {
        // scaled accumulation so huge or tiny coefficients do not overflow
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(T::zero(), T::max);
        if scale.is_zero() {
            return T::zero();
        }
        let s: T = self
            .coeffs
            .iter()
            .map(|c| (c / scale).norm_sqr())
            .fold(T::zero(), |a, b| a + b);
        scale * s.sqrt()
    }

    /// `|P(e^{i theta_j})|` at every grid node.
    pub fn moduli_on(&self, grid: &CircleGrid) -> Vec<T> {
        // P(w^j) = sum_k c_k w^(jk) with w = e^(2 pi i / N): an unnormalized
        // inverse DFT, with c_k folded onto k mod N
        let n = grid.node_count();
        let mut buf = vec![Complex::<T>::zero(); n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            buf[k % n] += c;
        }
        FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
        buf.into_iter().map(|v| v.norm()).collect()
    }

    fn circle_mean(&self, grid: &CircleGrid, f: impl Fn(T) -> T) -> T {
        // Neumaier summation: the grids reach 2^17 nodes
        let (sum, comp) =
            self.moduli_on(grid)
                .into_iter()
                .map(f)
                .fold((T::zero(), T::zero()), |(s, c), x| {
                    let t = s + x;
                    let c = if s.abs() >= x.abs() {
                        c + ((s - t) + x)
                    } else {
                        c + ((x - t) + s)
                    };
                    (t, c)
                });
        (sum + comp) / T::from_usize_lossy(grid.node_count())
    }

    /// `(mean over the circle of |P|^p)^(1/p)`.
    pub fn lp_norm(&self, p: T, grid: &CircleGrid) -> Result<T> {
        if !(p > T::zero()) || !p.is_finite() {
            return Err(Error::param(
                "p",
                p.to_f64().unwrap_or(f64::NAN),
                "must be positive and finite",
            ));
        }
        let mean = self.circle_mean(grid, |m| m.powf(p));
        Ok(mean.powf(p.recip()))
    }

    /// Largest `|P|` on the circle: best grid node, then a golden-section
    /// search over the two adjacent cells. Every evaluated value is attained,
    /// so the result never exceeds the true supremum.
    pub fn sup_norm(&self, grid: &CircleGrid) -> T {
        let moduli = self.moduli_on(grid);
        let (best_j, best) = moduli
            .iter()
            .copied()
            .enumerate()
            .fold((0, T::zero()), |acc, (j, m)| if m > acc.1 { (j, m) } else { acc });
        if self.degree() == 0 {
            return best;
        }
        let h = grid.step::<T>();
        let theta0 = grid.angle::<T>(best_j);
        let f = |theta: T| self.eval(Complex::from_polar(T::one(), theta)).norm();
        let refined = golden_max(f, theta0 - h, theta0 + h);
        best.max(refined)
    }

    fn check_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(())
        }
    }

    /// `m(P)`: circle mean of `ln |P|`. Nodes with `|P| < 1e-300` contribute
    /// `ln(1e-300)`.
    pub fn log_mahler(&self, grid: &CircleGrid) -> Result<T> {
        self.check_nonzero()?;
        let floor = T::log_floor();
        Ok(self.circle_mean(grid, |m| m.max(floor).ln()))
    }

    /// `m^+(P)`: circle mean of `max(ln |P|, 0)`.
    pub fn log_mahler_plus(&self, grid: &CircleGrid) -> Result<T> {
        self.check_nonzero()?;
        Ok(self.circle_mean(grid, |m| if m > T::one() { m.ln() } else { T::zero() }))
    }

    /// `P / sqrt(|c_0 c_n|)`.
    pub fn normalize(&self) -> Result<Self> {
        if !self.is_admissible() {
            return Err(Error::NotAdmissible);
        }
        let s = (self.constant().norm() * self.leading().norm()).sqrt();
        Ok(Self::new(self.coeffs.iter().map(|c| c / s).collect()))
    }

    /// `z^n conj(P(1 / conj z))`: coefficients reversed and conjugated.
    pub fn reciprocal(&self) -> Self {
        Self::new(self.coeffs.iter().rev().map(|c| c.conj()).collect())
    }
}

/// `|c_n| prod max(1, |z_k|)`, the Mahler measure by Jensen's formula.
pub fn mahler_from_roots<T: Real>(leading: Complex<T>, roots: &[Complex<T>]) -> Result<T> {
    log_mahler_from_roots(leading, roots).map(T::exp)
}

/// `ln |c_n| + sum ln^+ |z_k|`. Summed in log space so large degrees do
/// not overflow.
pub fn log_mahler_from_roots<T: Real>(leading: Complex<T>, roots: &[Complex<T>]) -> Result<T> {
    if leading.is_zero() {
        return Err(Error::param(
            "leading",
            0.0,
            "leading coefficient must be non-zero",
        ));
    }
    let plus = roots
        .iter()
        .map(|z| z.norm())
        .filter(|&r| r > T::one())
        .map(T::ln)
        .fold(T::zero(), |a, b| a + b);
    Ok(leading.norm().ln() + plus)
}

fn golden_max<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T) -> T {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f1.max(f2);
    for _ in 0..80 {
        if hi - lo <= T::epsilon() * (T::one() + lo.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
        best = best.max(f1).max(f2);
    }
    best
}
