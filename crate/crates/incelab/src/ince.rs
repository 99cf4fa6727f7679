//! Ince polynomials.
//!
//! The Ince equation
//!
//! ```text
//! y''(v) + ε sin(2v) y'(v) + (a − p ε cos(2v)) y(v) = 0
//! ```
//!
//! has, for integer order `p`, finitely many 2π-periodic polynomial solutions:
//! the even and odd Ince polynomials `C_p^m(v, ε)` and `S_p^m(v, ε)`. Inserting
//! a trigonometric series ansatz and collecting harmonics turns the equation
//! into a finite tridiagonal eigenproblem for the separation constant `a`, one
//! system per trigonometric class:
//!
//! * `p` even, even parity: `Σ_j A_j cos(2jv)`, dimension `p/2 + 1`
//! * `p` even, odd parity:  `Σ_j B_j sin(2jv)`, `j ≥ 1`, dimension `p/2`
//! * `p` odd, even parity:  `Σ_j A_j cos((2j+1)v)`, dimension `(p+1)/2`
//! * `p` odd, odd parity:   `Σ_j B_j sin((2j+1)v)`, dimension `(p+1)/2`
//!
//! The series terminate exactly (the generated harmonic of index `p + 2`
//! cancels identically), so there is no truncation error. Eigenvalues within a
//! class are sorted ascending and matched to the degree `m` through the ε = 0
//! limit, where the matrix is diagonal and the solution is the single harmonic
//! `cos(mv)` or `sin(mv)`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Parity of an Ince polynomial: `Even` selects `C_p^m`, `Odd` selects `S_p^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Trigonometric basis class of the series, fixed by the parities of `p` and
/// of the polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigClass {
    /// `p` even, even parity: `cos(2jv)`, `j = 0 ..= p/2`.
    EvenCosine,
    /// `p` even, odd parity: `sin(2jv)`, `j = 1 ..= p/2`.
    EvenSine,
    /// `p` odd, even parity: `cos((2j+1)v)`, `j = 0 ..= (p−1)/2`.
    OddCosine,
    /// `p` odd, odd parity: `sin((2j+1)v)`, `j = 0 ..= (p−1)/2`.
    OddSine,
}

/// Validated index triple (p, m, parity) of an Ince polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InceIndices {
    p: u32,
    m: u32,
    parity: Parity,
}

impl InceIndices {
    /// Checks `0 ≤ m ≤ p`, `p − m` even, and `m ≥ 1` for odd parity.
    pub fn new(p: u32, m: u32, parity: Parity) -> Result<Self> {
        let invalid = |reason| Error::InvalidIndices { p, m, parity, reason };
        if m > p {
            return Err(invalid("m exceeds p"));
        }
        if !(p - m).is_multiple_of(2) {
            return Err(invalid("p - m must be even"));
        }
        if parity == Parity::Odd && m == 0 {
            return Err(invalid("odd parity requires m >= 1"));
        }
        Ok(Self { p, m, parity })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn trig_class(&self) -> TrigClass {
        match (self.p.is_multiple_of(2), self.parity) {
            (true, Parity::Even) => TrigClass::EvenCosine,
            (true, Parity::Odd) => TrigClass::EvenSine,
            (false, Parity::Even) => TrigClass::OddCosine,
            (false, Parity::Odd) => TrigClass::OddSine,
        }
    }

    /// Dimension of the tridiagonal system for this class and order.
    fn class_dimension(&self) -> usize {
        let p = self.p as usize;
        match self.trig_class() {
            TrigClass::EvenCosine => p / 2 + 1,
            TrigClass::EvenSine => p / 2,
            TrigClass::OddCosine | TrigClass::OddSine => p.div_ceil(2),
        }
    }

    /// Position of the eigenvalue for degree `m` when the class spectrum is
    /// sorted ascending (the ε = 0 ordering by `m²`).
    fn rank(&self) -> usize {
        let m = self.m as usize;
        match self.trig_class() {
            TrigClass::EvenCosine => m / 2,
            TrigClass::EvenSine => m / 2 - 1,
            TrigClass::OddCosine | TrigClass::OddSine => (m - 1) / 2,
        }
    }
}

/// Harmonic index multiplying `v` in the `j`-th basis function of a class.
fn harmonic(class: TrigClass, j: usize) -> u32 {
    match class {
        TrigClass::EvenCosine => 2 * j as u32,
        TrigClass::EvenSine => 2 * (j as u32 + 1),
        TrigClass::OddCosine | TrigClass::OddSine => 2 * j as u32 + 1,
    }
}

/// One solved Ince polynomial: eigenvalue and real Fourier coefficients in the
/// parity-appropriate trigonometric basis.
///
/// Coefficients are stored with unit Euclidean norm and a fixed sign:
/// `C_p^m(0, ε) > 0` for even parity, `d/dv S_p^m(v, ε)|_{v=0} > 0` for odd
/// parity. The physical (L²) normalization of the full beam mode is applied by
/// the `modefield` layer.
#[derive(Debug, Clone)]
pub struct IncePolynomial {
    indices: InceIndices,
    ellipticity: f64,
    eigenvalue: f64,
    coefficients: Vec<f64>,
}

impl IncePolynomial {
    /// Solves the Ince equation for the polynomial selected by `indices` at
    /// ellipticity `epsilon`.
    ///
    /// At ε = 0 the system is diagonal and the exact single-harmonic solution
    /// is returned directly (eigenvalue `m²`, unit coefficient vector).
    pub fn solve(indices: InceIndices, epsilon: f64) -> Result<Self> {
        if epsilon < 0.0 {
            return Err(Error::NegativeEllipticity(epsilon));
        }
        let dim = indices.class_dimension();
        let rank = indices.rank();
        debug_assert!(rank < dim);

        if epsilon == 0.0 {
            let mut coefficients = vec![0.0; dim];
            coefficients[rank] = 1.0;
            return Ok(Self {
                indices,
                ellipticity: 0.0,
                eigenvalue: (indices.m as f64).powi(2),
                coefficients,
            });
        }

        let (diag, upper, lower) = tridiagonal_system(indices, epsilon);

        // The system is not symmetric, but upper[k]·lower[k] > 0, so a diagonal
        // similarity D M D⁻¹ makes it symmetric with the same (real, simple)
        // spectrum. Eigenvectors transform back as A_k = w_k / d_k.
        let mut scale = vec![1.0_f64; dim];
        for k in 0..dim - 1 {
            scale[k + 1] = scale[k] * (upper[k] / lower[k]).sqrt();
        }
        let mut sym = DMatrix::<f64>::zeros(dim, dim);
        for k in 0..dim {
            sym[(k, k)] = diag[k];
        }
        for k in 0..dim - 1 {
            let off = (upper[k] * lower[k]).sqrt();
            sym[(k, k + 1)] = off;
            sym[(k + 1, k)] = off;
        }

        let eig = sym.symmetric_eigen();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let pick = order[rank];

        let eigenvalue = eig.eigenvalues[pick];
        let mut coefficients: Vec<f64> = (0..dim)
            .map(|k| eig.eigenvectors[(k, pick)] / scale[k])
            .collect();

        let norm = coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
        for c in &mut coefficients {
            *c /= norm;
        }

        let class = indices.trig_class();
        let orientation: f64 = match indices.parity {
            // C_p^m(0) = Σ A_j
            Parity::Even => coefficients.iter().sum(),
            // S_p^m'(0) = Σ k_j B_j
            Parity::Odd => coefficients
                .iter()
                .enumerate()
                .map(|(j, b)| harmonic(class, j) as f64 * b)
                .sum(),
        };
        if orientation < 0.0 {
            for c in &mut coefficients {
                *c = -*c;
            }
        }

        Ok(Self {
            indices,
            ellipticity: epsilon,
            eigenvalue,
            coefficients,
        })
    }

    pub fn indices(&self) -> InceIndices {
        self.indices
    }

    pub fn ellipticity(&self) -> f64 {
        self.ellipticity
    }

    /// Separation constant `a` of the Ince equation.
    pub fn eigenvalue(&self) -> f64 {
        self.eigenvalue
    }

    /// Fourier coefficients in the class basis, unit Euclidean norm.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn trig_class(&self) -> TrigClass {
        self.indices.trig_class()
    }

    /// Largest harmonic index in the series (equals `p`, except the constant
    /// `C_0^0`).
    pub fn max_harmonic(&self) -> u32 {
        harmonic(self.trig_class(), self.coefficients.len() - 1)
    }

    /// Evaluates the trigonometric series at the angular coordinate `v`.
    /// 2π-periodic, total on finite inputs.
    pub fn eval_angular(&self, v: f64) -> f64 {
        let class = self.trig_class();
        let b = 2.0 * (2.0 * v).cos();
        // Three-term recurrence over harmonics k, k+2, ...; the seed pair is
        // (value at k0 - 2, value at k0) for the lowest harmonic k0.
        let (mut prev, mut cur) = match class {
            TrigClass::EvenCosine => ((2.0 * v).cos(), 1.0), // cos(-2v), cos(0)
            TrigClass::EvenSine => (0.0, (2.0 * v).sin()),   // sin(0), sin(2v)
            TrigClass::OddCosine => (v.cos(), v.cos()),      // cos(-v), cos(v)
            TrigClass::OddSine => (-v.sin(), v.sin()),       // sin(-v), sin(v)
        };
        let mut acc = 0.0;
        for (j, c) in self.coefficients.iter().enumerate() {
            if j > 0 {
                let next = b * cur - prev;
                prev = cur;
                cur = next;
            }
            acc += c * cur;
        }
        acc
    }

    /// Evaluates the series at the imaginary argument `iu`, i.e. the radial
    /// factor. Cosine harmonics become `cosh`, sine harmonics become `sinh`;
    /// the leading `i` of the odd-parity series is absorbed into the mode
    /// normalization so the returned value is real.
    pub fn eval_radial(&self, u: f64) -> Result<f64> {
        let k_max = self.max_harmonic();
        if k_max >= 1 && u * k_max as f64 > 709.0 {
            return Err(Error::Overflow(u));
        }
        let class = self.trig_class();
        let b = if self.coefficients.len() > 1 {
            2.0 * (2.0 * u).cosh()
        } else {
            0.0
        };
        let (mut prev, mut cur) = match class {
            TrigClass::EvenCosine => ((2.0 * u).cosh(), 1.0),
            TrigClass::EvenSine => (0.0, (2.0 * u).sinh()),
            TrigClass::OddCosine => (u.cosh(), u.cosh()),
            TrigClass::OddSine => (-u.sinh(), u.sinh()),
        };
        let mut acc = 0.0;
        for (j, c) in self.coefficients.iter().enumerate() {
            if j > 0 {
                let next = b * cur - prev;
                prev = cur;
                cur = next;
            }
            acc += c * cur;
        }
        Ok(acc)
    }

    /// First derivative of the angular series, termwise.
    pub fn eval_angular_deriv(&self, v: f64) -> f64 {
        let class = self.trig_class();
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let k = harmonic(class, j) as f64;
                match class {
                    TrigClass::EvenCosine | TrigClass::OddCosine => -c * k * (k * v).sin(),
                    TrigClass::EvenSine | TrigClass::OddSine => c * k * (k * v).cos(),
                }
            })
            .sum()
    }

    /// Max-norm residual of the Ince ODE over `samples` points of [0, 2π),
    /// with derivatives taken termwise. A solver-soundness diagnostic: exact
    /// solutions give residuals at rounding level.
    pub fn ode_residual(&self, samples: usize) -> f64 {
        assert!(samples >= 2, "need at least two sample points");
        let class = self.trig_class();
        let p = self.indices.p as f64;
        let eps = self.ellipticity;
        let a = self.eigenvalue;
        let mut worst = 0.0_f64;
        for i in 0..samples {
            let v = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
            let y = self.eval_angular(v);
            let dy = self.eval_angular_deriv(v);
            let d2y: f64 = self
                .coefficients
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let k = harmonic(class, j) as f64;
                    let basis = match class {
                        TrigClass::EvenCosine | TrigClass::OddCosine => (k * v).cos(),
                        TrigClass::EvenSine | TrigClass::OddSine => (k * v).sin(),
                    };
                    -c * k * k * basis
                })
                .sum();
            let residual = d2y + eps * (2.0 * v).sin() * dy + (a - p * eps * (2.0 * v).cos()) * y;
            worst = worst.max(residual.abs());
        }
        worst
    }

    /// Debug dump of the coefficient table as CSV (harmonic index, coefficient).
    pub fn write_coefficients_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "harmonic,coefficient")?;
        let class = self.trig_class();
        for (j, c) in self.coefficients.iter().enumerate() {
            writeln!(out, "{},{}", harmonic(class, j), c)?;
        }
        Ok(())
    }
}

/// Tridiagonal eigensystem `M A = a A` for one class, as (diag, upper, lower)
/// with `upper[k] = M[k][k+1]`, `lower[k] = M[k+1][k]`.
///
/// Derived by inserting the class ansatz into the Ince ODE and collecting
/// harmonics; the doubled corner entries come from `cos/sin` product terms
/// folding back onto the lowest harmonic.
fn tridiagonal_system(indices: InceIndices, eps: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let p = indices.p as f64;
    let dim = indices.class_dimension();
    let mut diag = vec![0.0; dim];
    let mut upper = vec![0.0; dim.saturating_sub(1)];
    let mut lower = vec![0.0; dim.saturating_sub(1)];

    match indices.trig_class() {
        TrigClass::EvenCosine => {
            // harmonics 2k, k = 0..=p/2
            for (k, d) in diag.iter_mut().enumerate() {
                *d = 4.0 * (k as f64) * (k as f64);
            }
            for k in 0..dim - 1 {
                upper[k] = eps * (p / 2.0 + k as f64 + 1.0);
                lower[k] = eps * (p / 2.0 - k as f64);
            }
            if dim > 1 {
                // row for cos(2v) picks up the constant-term coupling twice
                lower[0] *= 2.0;
            }
        }
        TrigClass::EvenSine => {
            // harmonics 2(j+1), j = 0..p/2-1
            for (j, d) in diag.iter_mut().enumerate() {
                let k = j as f64 + 1.0;
                *d = 4.0 * k * k;
            }
            for j in 0..dim.saturating_sub(1) {
                let k = j as f64 + 1.0;
                upper[j] = eps * (p / 2.0 + k + 1.0);
                lower[j] = eps * (p / 2.0 - k);
            }
        }
        TrigClass::OddCosine | TrigClass::OddSine => {
            // harmonics 2j+1, j = 0..=(p-1)/2
            for (j, d) in diag.iter_mut().enumerate() {
                let k = 2.0 * j as f64 + 1.0;
                *d = k * k;
            }
            // the cos(v)/sin(v) row couples to itself through the
            // folded harmonic cos(-v) = cos(v), sin(-v) = -sin(v)
            let corner = eps * (p + 1.0) / 2.0;
            if indices.trig_class() == TrigClass::OddCosine {
                diag[0] += corner;
            } else {
                diag[0] -= corner;
            }
            for j in 0..dim.saturating_sub(1) {
                upper[j] = eps / 2.0 * (p + 2.0 * j as f64 + 3.0);
                lower[j] = eps / 2.0 * (p - 2.0 * j as f64 - 1.0);
            }
        }
    }
    (diag, upper, lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn solve(p: u32, m: u32, parity: Parity, eps: f64) -> IncePolynomial {
        IncePolynomial::solve(InceIndices::new(p, m, parity).unwrap(), eps).unwrap()
    }

    /// Every admissible (p, m, parity) with p <= p_max.
    fn admissible(p_max: u32) -> Vec<InceIndices> {
        let mut out = Vec::new();
        for p in 0..=p_max {
            let m0 = p % 2;
            let mut m = m0;
            while m <= p {
                if let Ok(ix) = InceIndices::new(p, m, Parity::Even) {
                    out.push(ix);
                }
                if m >= 1 {
                    if let Ok(ix) = InceIndices::new(p, m, Parity::Odd) {
                        out.push(ix);
                    }
                }
                m += 2;
            }
        }
        out
    }

    #[test]
    fn index_validation() {
        assert!(InceIndices::new(2, 1, Parity::Even).is_err()); // p - m odd
        assert!(InceIndices::new(3, 5, Parity::Even).is_err()); // m > p
        assert!(InceIndices::new(4, 0, Parity::Odd).is_err()); // odd needs m >= 1
        assert!(InceIndices::new(4, 0, Parity::Even).is_ok());
        assert!(InceIndices::new(5, 3, Parity::Odd).is_ok());
    }

    #[test]
    fn negative_ellipticity_rejected() {
        let ix = InceIndices::new(2, 2, Parity::Even).unwrap();
        assert!(matches!(
            IncePolynomial::solve(ix, -0.5),
            Err(Error::NegativeEllipticity(_))
        ));
    }

    #[test]
    fn zero_ellipticity_single_harmonic() {
        // At eps = 0 the ODE is y'' + a y = 0: cos(3v) has a = 9 exactly.
        let poly = solve(3, 3, Parity::Even, 0.0);
        assert_eq!(poly.eigenvalue(), 9.0);
        assert_eq!(poly.coefficients(), &[0.0, 1.0]);
        // v = pi/6 -> cos(pi/2) = 0
        assert_abs_diff_eq!(
            poly.eval_angular(std::f64::consts::PI / 6.0),
            0.0,
            epsilon = 1e-15
        );
        // radial factor at u = 1 is cosh(3)
        assert_abs_diff_eq!(poly.eval_radial(1.0).unwrap(), 3.0_f64.cosh(), epsilon = 1e-12);
        // exact harmonic: the ODE residual sits at rounding level
        assert!(poly.ode_residual(64) < 1e-12);
    }

    #[test]
    fn known_small_systems() {
        // p = 1: 1x1 systems with a = 1 ± ε, solution cos v / sin v for all ε.
        let c11 = solve(1, 1, Parity::Even, 2.5);
        assert_abs_diff_eq!(c11.eigenvalue(), 1.0 + 2.5, epsilon = 1e-14);
        assert_eq!(c11.coefficients(), &[1.0]);
        let s11 = solve(1, 1, Parity::Odd, 2.5);
        assert_abs_diff_eq!(s11.eigenvalue(), 1.0 - 2.5, epsilon = 1e-14);

        // p = 2 even class: eigenvalues 2 ± 2 sqrt(1 + ε²).
        let eps = 1.7_f64;
        let root = 2.0 * (1.0 + eps * eps).sqrt();
        let c20 = solve(2, 0, Parity::Even, eps);
        let c22 = solve(2, 2, Parity::Even, eps);
        assert_abs_diff_eq!(c20.eigenvalue(), 2.0 - root, epsilon = 1e-12);
        assert_abs_diff_eq!(c22.eigenvalue(), 2.0 + root, epsilon = 1e-12);

        // p = 2 odd class is one-dimensional: S_2^2 = sin(2v), a = 4, any ε.
        let s22 = solve(2, 2, Parity::Odd, eps);
        assert_abs_diff_eq!(s22.eigenvalue(), 4.0, epsilon = 1e-14);
        assert_eq!(s22.coefficients(), &[1.0]);
    }

    #[test]
    fn ode_residual_is_small() {
        let poly = solve(5, 3, Parity::Even, 2.0);
        assert!(poly.ode_residual(100) < 1e-10);
        let poly = solve(8, 4, Parity::Even, 3.0);
        assert!(poly.ode_residual(100) < 1e-9);
    }

    #[test]
    fn ode_residual_all_admissible() {
        for ix in admissible(14) {
            for &eps in &[0.5, 1.0, 2.0, 3.0, 5.0] {
                let poly = IncePolynomial::solve(ix, eps).unwrap();
                let r = poly.ode_residual(100);
                assert!(
                    r < 1e-9,
                    "residual {r:e} for p={}, m={}, {:?}, eps={eps}",
                    ix.p(),
                    ix.m(),
                    ix.parity()
                );
            }
        }
    }

    #[test]
    fn perturbed_eigenvalue_breaks_residual() {
        let mut poly = solve(8, 4, Parity::Even, 3.0);
        poly.eigenvalue += 0.1;
        assert!(poly.ode_residual(100) > 1e-3);
    }

    #[test]
    fn eigenvalues_distinct_within_class() {
        for p in [6_u32, 9, 14] {
            for &eps in &[0.5, 2.0, 5.0] {
                for parity in [Parity::Even, Parity::Odd] {
                    let eigs: Vec<f64> = admissible(p)
                        .into_iter()
                        .filter(|ix| ix.p() == p && ix.parity() == parity)
                        .map(|ix| IncePolynomial::solve(ix, eps).unwrap().eigenvalue())
                        .collect();
                    for w in eigs.windows(2) {
                        assert!(w[1] > w[0] + 1e-9, "degenerate spectrum at p={p} eps={eps}");
                    }
                }
            }
        }
    }

    #[test]
    fn continuity_in_ellipticity() {
        for (p, m, parity) in [(5, 3, Parity::Even), (8, 4, Parity::Odd), (14, 6, Parity::Even)] {
            let a = solve(p, m, parity, 2.0);
            let b = solve(p, m, parity, 2.0 + 1e-6);
            for (ca, cb) in a.coefficients().iter().zip(b.coefficients()) {
                assert!((ca - cb).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn sign_conventions() {
        for ix in admissible(10) {
            for &eps in &[0.5, 2.0, 5.0] {
                let poly = IncePolynomial::solve(ix, eps).unwrap();
                match ix.parity() {
                    Parity::Even => assert!(poly.eval_angular(0.0) > 0.0),
                    Parity::Odd => {
                        assert_abs_diff_eq!(poly.eval_angular(0.0), 0.0, epsilon = 1e-14);
                        assert!(poly.eval_angular_deriv(0.0) > 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn angular_periodicity() {
        let poly = solve(7, 3, Parity::Odd, 1.3);
        for i in 0..20 {
            let v = -3.0 + 0.37 * i as f64;
            assert_abs_diff_eq!(
                poly.eval_angular(v),
                poly.eval_angular(v + 2.0 * std::f64::consts::PI),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn radial_matches_angular_at_origin() {
        // cosh(0) = cos(0) termwise; odd series vanish both ways.
        for ix in admissible(9) {
            let poly = IncePolynomial::solve(ix, 1.8).unwrap();
            match ix.parity() {
                Parity::Even => assert_abs_diff_eq!(
                    poly.eval_radial(0.0).unwrap(),
                    poly.eval_angular(0.0),
                    epsilon = 1e-13
                ),
                Parity::Odd => {
                    assert_abs_diff_eq!(poly.eval_radial(0.0).unwrap(), 0.0, epsilon = 1e-14)
                }
            }
        }
    }

    #[test]
    fn radial_series_matches_direct_summation() {
        // recurrence evaluation vs naive termwise cosh/sinh
        for ix in admissible(11) {
            let poly = IncePolynomial::solve(ix, 2.2).unwrap();
            let class = poly.trig_class();
            for &u in &[0.0, 0.3, 1.1, 2.4] {
                let direct: f64 = poly
                    .coefficients()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let k = super::harmonic(class, j) as f64;
                        match ix.parity() {
                            Parity::Even => c * (k * u).cosh(),
                            Parity::Odd => c * (k * u).sinh(),
                        }
                    })
                    .sum();
                let got = poly.eval_radial(u).unwrap();
                assert_abs_diff_eq!(got, direct, epsilon = 1e-9 * direct.abs().max(1.0));
            }
        }
    }

    #[test]
    fn radial_overflow_signaled() {
        let poly = solve(8, 4, Parity::Even, 1.0);
        assert!(matches!(poly.eval_radial(200.0), Err(Error::Overflow(_))));
        assert!(poly.eval_radial(5.0).is_ok());
    }

    #[test]
    fn coefficients_csv_dump() {
        let poly = solve(4, 2, Parity::Even, 1.0);
        let mut buf = Vec::new();
        poly.write_coefficients_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("harmonic,coefficient"));
        assert_eq!(text.lines().count(), 4); // header + harmonics 0, 2, 4
    }
}
