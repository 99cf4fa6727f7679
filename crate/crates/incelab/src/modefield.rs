//! Ince-Gauss and Laguerre-Gauss beam modes sampled on Cartesian grids.
//!
//! All fields are evaluated in the waist plane z = 0, with lengths in units of
//! the beam waist ω0. The even and odd modes are real products of a radial and
//! an angular Ince polynomial factor under a Gaussian envelope,
//!
//! ```text
//! IG^e = N_e · C_p^m(iu, ε) · C_p^m(v, ε) · exp(−r²/ω0²)
//! IG^o = N_o · S_p^m(iu, ε) · S_p^m(v, ε) · exp(−r²/ω0²)
//! ```
//!
//! and the helical modes are `IG± = (IG^e ± i·IG^o)/√2`. The normalization
//! constants are fixed numerically so each mode carries unit L² norm; with the
//! sign conventions of the `ince` module, `IG⁺` circulates counterclockwise
//! (total topological charge `+m`) and matches `LG` with `l = +m` as ε → 0.
//!
//! Propagation (Gouy phase, wavefront curvature) is out of scope: every
//! quantity in this crate is a basis projection invariant under common
//! propagation.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ince::{InceIndices, IncePolynomial, Parity};
use crate::numeric::compensated_sum;

/// Below this ellipticity the elliptic coordinate system degenerates
/// (f0 → 0) and modes are rendered through the analytic Laguerre-Gauss limit.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

/// Beam waist and elliptic coordinate system of a mode family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    waist: f64,
    ellipticity: f64,
    semifocal: f64,
}

impl BeamGeometry {
    /// The semifocal separation follows from the dimensionless ellipticity as
    /// `f0 = ω0 · sqrt(ε/2)`.
    pub fn new(waist: f64, ellipticity: f64) -> Result<Self> {
        if !waist.is_finite() || waist <= 0.0 {
            return Err(Error::ParameterRange {
                name: "waist",
                value: waist,
                range: "(0, inf)",
            });
        }
        if ellipticity < 0.0 {
            return Err(Error::NegativeEllipticity(ellipticity));
        }
        Ok(Self {
            waist,
            ellipticity,
            semifocal: waist * (ellipticity / 2.0).sqrt(),
        })
    }

    /// Unit-waist geometry (ω0 = 1).
    pub fn unit_waist(ellipticity: f64) -> Result<Self> {
        Self::new(1.0, ellipticity)
    }

    pub fn waist(&self) -> f64 {
        self.waist
    }

    pub fn ellipticity(&self) -> f64 {
        self.ellipticity
    }

    pub fn semifocal(&self) -> f64 {
        self.semifocal
    }
}

/// Inverse of the elliptic coordinate map
/// `x = f0 cosh(u) cos(v)`, `y = f0 sinh(u) sin(v)`.
///
/// Returns `(u, v)` on the branch `u ≥ 0`, `v ∈ [0, 2π)`. The confocal
/// ellipse through the point fixes `u` via the focal distances; `v` is then
/// recovered from `sin v = y/(f0 sinh u)`, `cos v = x/(f0 cosh u)` against
/// that stored `u`, which keeps the round trip at rounding accuracy even in
/// the far field near the axes, where an `acos` of the focal-distance
/// difference loses six digits.
pub fn elliptic_coords(x: f64, y: f64, f0: f64) -> Result<(f64, f64)> {
    if !f0.is_finite() || f0 <= 0.0 {
        return Err(Error::DegenerateFoci);
    }
    if y == 0.0 {
        // the axis splits into the interfocal segment (u = 0) and the two
        // hyperbola branches v = 0, v = π
        let t = x / f0;
        return Ok(if t.abs() <= 1.0 {
            (0.0, t.acos())
        } else if t > 0.0 {
            (t.acosh(), 0.0)
        } else {
            ((-t).acosh(), PI)
        });
    }
    // x + iy = f0 cosh(u + iv); the complex acosh (in its Kahan half-angle
    // form) stays accurate in both components near the segment, the foci and
    // the far-field axis alike
    let w = (Complex64::new(x, y) / f0).acosh();
    let u = w.re.max(0.0);
    let v = if w.im < 0.0 { w.im + 2.0 * PI } else { w.im };
    Ok((u, v))
}

/// Which member of the Ince-Gauss family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeKind {
    /// Real even mode `IG^e`.
    Even,
    /// Real odd mode `IG^o`.
    Odd,
    /// Helical `IG⁺ = (IG^e + i·IG^o)/√2`, total charge `+m`.
    Plus,
    /// Helical `IG⁻ = (IG^e − i·IG^o)/√2`, total charge `−m`.
    Minus,
    /// Bloch-sphere superposition
    /// `√a·e^{iφ}·IG⁺ + √(1−a)·e^{−iφ}·IG⁻` with `a ∈ [0,1]`, `φ ∈ [0,π)`.
    Bloch { a: f64, phi: f64 },
}

impl ModeKind {
    fn needs_even(&self) -> bool {
        !matches!(self, ModeKind::Odd)
    }

    fn needs_odd(&self) -> bool {
        !matches!(self, ModeKind::Even)
    }
}

/// Validated mode request: indices, ellipticity and kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    p: u32,
    m: u32,
    ellipticity: f64,
    kind: ModeKind,
}

impl ModeSpec {
    pub fn new(p: u32, m: u32, ellipticity: f64, kind: ModeKind) -> Result<Self> {
        if ellipticity < 0.0 {
            return Err(Error::NegativeEllipticity(ellipticity));
        }
        // helical and Bloch kinds need both constituents, hence m >= 1
        if kind.needs_even() {
            InceIndices::new(p, m, Parity::Even)?;
        }
        if kind.needs_odd() {
            InceIndices::new(p, m, Parity::Odd)?;
        }
        if let ModeKind::Bloch { a, phi } = kind {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::ParameterRange {
                    name: "a",
                    value: a,
                    range: "[0, 1]",
                });
            }
            if !(0.0..PI).contains(&phi) {
                return Err(Error::ParameterRange {
                    name: "phi",
                    value: phi,
                    range: "[0, pi)",
                });
            }
        }
        Ok(Self {
            p,
            m,
            ellipticity,
            kind,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ellipticity(&self) -> f64 {
        self.ellipticity
    }

    pub fn kind(&self) -> ModeKind {
        self.kind
    }
}

/// Square sampling lattice of N×N cell-centered points covering
/// [−L, L] × [−L, L]; symmetric under (x, y) → (−x, −y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    half_extent: f64,
    samples: usize,
}

impl SamplingGrid {
    pub fn new(half_extent: f64, samples: usize) -> Result<Self> {
        if !half_extent.is_finite() || half_extent <= 0.0 {
            return Err(Error::ParameterRange {
                name: "half_extent",
                value: half_extent,
                range: "(0, inf)",
            });
        }
        if samples < 2 {
            return Err(Error::ParameterRange {
                name: "samples",
                value: samples as f64,
                range: "[2, inf)",
            });
        }
        Ok(Self {
            half_extent,
            samples,
        })
    }

    /// Default grid for a mode of order `p`: half-extent `(sqrt(p) + 3)·ω0`
    /// at 512 samples per axis, which keeps the truncated Gaussian mass below
    /// 1e-6 for p ≤ 14.
    pub fn default_for_order(p: u32, waist: f64) -> Self {
        Self {
            half_extent: ((p as f64).sqrt() + 3.0) * waist,
            samples: 512,
        }
    }

    pub fn half_extent(&self) -> f64 {
        self.half_extent
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Lattice spacing Δ = 2L/N.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_extent / self.samples as f64
    }

    /// Area element Δx·Δy of one cell.
    pub fn cell_area(&self) -> f64 {
        let d = self.spacing();
        d * d
    }

    /// Coordinate of the i-th sample along either axis.
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.spacing() - self.half_extent
    }

    /// Grid with the same extent and doubled sample count.
    pub fn doubled(&self) -> Self {
        Self {
            half_extent: self.half_extent,
            samples: self.samples * 2,
        }
    }
}

/// A sampled complex amplitude field.
#[derive(Debug, Clone)]
pub struct ComplexField {
    grid: SamplingGrid,
    /// Row-major, index `iy * N + ix`.
    values: Vec<Complex64>,
    normalized: bool,
}

impl ComplexField {
    /// Wraps raw values; `values.len()` must equal N².
    pub fn from_values(grid: SamplingGrid, values: Vec<Complex64>) -> Result<Self> {
        let n = grid.samples();
        if values.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: values.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            normalized: false,
        })
    }

    pub fn grid(&self) -> SamplingGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[iy * self.grid.samples() + ix]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Discrete L² norm `sqrt(Σ |v|² Δx Δy)`.
    pub fn norm_l2(&self) -> f64 {
        let area = self.grid.cell_area();
        compensated_sum(self.values.iter().map(|v| v.norm_sqr() * area)).sqrt()
    }

    /// Rescales to unit discrete L² norm and sets the normalization flag.
    pub fn normalize(&mut self) {
        let n = self.norm_l2();
        if n > 0.0 {
            let s = 1.0 / n;
            for v in &mut self.values {
                *v *= s;
            }
        }
        self.normalized = true;
    }

    pub fn peak_amplitude(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Complex conjugate of every sample (flips all phase windings).
    pub fn conjugated(&self) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
            normalized: self.normalized,
        }
    }

    /// 8-bit binary PGM of the intensity |v|², scaled linearly to 0-255.
    /// Rows run from +y down to −y.
    pub fn write_intensity_pgm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.grid.samples();
        let peak = self
            .values
            .iter()
            .map(|v| v.norm_sqr())
            .fold(0.0, f64::max);
        write!(out, "P5\n{} {}\n255\n", n, n)?;
        let mut row = vec![0u8; n];
        for iy in (0..n).rev() {
            for (ix, px) in row.iter_mut().enumerate() {
                let i = self.value(ix, iy).norm_sqr();
                *px = if peak > 0.0 {
                    (i / peak * 255.0).round() as u8
                } else {
                    0
                };
            }
            out.write_all(&row)?;
        }
        Ok(())
    }

    /// 8-bit binary PGM of the phase, arg mapped linearly from [−π, π) to
    /// 0-255. Rows run from +y down to −y.
    pub fn write_phase_pgm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.grid.samples();
        write!(out, "P5\n{} {}\n255\n", n, n)?;
        let mut row = vec![0u8; n];
        for iy in (0..n).rev() {
            for (ix, px) in row.iter_mut().enumerate() {
                let mut theta = self.value(ix, iy).arg();
                if theta >= PI {
                    theta -= 2.0 * PI;
                }
                *px = ((theta + PI) / (2.0 * PI) * 255.0).round() as u8;
            }
            out.write_all(&row)?;
        }
        Ok(())
    }

    /// CSV dump `x,y,re,im`, one row per sample, y-major ascending.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,re,im")?;
        let n = self.grid.samples();
        for iy in 0..n {
            let y = self.grid.coord(iy);
            for ix in 0..n {
                let x = self.grid.coord(ix);
                let v = self.value(ix, iy);
                writeln!(out, "{},{},{},{}", x, y, v.re, v.im)?;
            }
        }
        Ok(())
    }
}

/// Analytic Laguerre-Gauss amplitude `LG_{n,l}` at the waist plane,
/// normalized to unit L² norm, with azimuthal phase `e^{+ilφ}`.
pub fn eval_lg_reference(n: u32, l: i32, waist: f64, x: f64, y: f64) -> Complex64 {
    let la = l.unsigned_abs();
    let r2 = (x * x + y * y) / (waist * waist);
    if r2 > 700.0 {
        return Complex64::ZERO;
    }
    let rho = 2.0 * r2;
    let norm = (2.0 * factorial(n) / (PI * factorial(n + la))).sqrt() / waist;
    let radial = norm * rho.powf(la as f64 / 2.0) * laguerre(n, la as f64, rho) * (-r2).exp();
    let phi = y.atan2(x);
    radial * Complex64::cis(l as f64 * phi)
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Generalized Laguerre polynomial L_n^α by the three-term recurrence.
fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

enum Profile {
    Elliptic {
        even: Option<IncePolynomial>,
        odd: Option<IncePolynomial>,
        /// L² normalization constants N_e, N_o of the raw products.
        norm_even: f64,
        norm_odd: f64,
    },
    /// ε below [`DEGENERACY_THRESHOLD`]: exact Laguerre-Gauss limit with
    /// n = (p−m)/2, |l| = m.
    Laguerre { n: u32, l: u32 },
}

/// A solved, L²-normalized mode evaluator.
///
/// Construction solves the Ince polynomials and fixes the normalization
/// constants once (by quadrature over the default grid for the mode order);
/// evaluation afterwards is pure and thread-safe.
pub struct Mode {
    spec: ModeSpec,
    geometry: BeamGeometry,
    profile: Profile,
}

impl Mode {
    pub fn new(spec: ModeSpec, geometry: BeamGeometry) -> Result<Self> {
        if spec.ellipticity != geometry.ellipticity() {
            return Err(Error::EllipticityMismatch {
                spec: spec.ellipticity,
                geometry: geometry.ellipticity(),
            });
        }

        if spec.ellipticity < DEGENERACY_THRESHOLD {
            return Ok(Self {
                spec,
                geometry,
                profile: Profile::Laguerre {
                    n: (spec.p - spec.m) / 2,
                    l: spec.m,
                },
            });
        }

        let even = if spec.kind.needs_even() {
            Some(IncePolynomial::solve(
                InceIndices::new(spec.p, spec.m, Parity::Even)?,
                spec.ellipticity,
            )?)
        } else {
            None
        };
        let odd = if spec.kind.needs_odd() {
            Some(IncePolynomial::solve(
                InceIndices::new(spec.p, spec.m, Parity::Odd)?,
                spec.ellipticity,
            )?)
        } else {
            None
        };

        let mut mode = Self {
            spec,
            geometry,
            profile: Profile::Elliptic {
                even,
                odd,
                norm_even: 1.0,
                norm_odd: 1.0,
            },
        };
        let (ne, no) = mode.compute_normalization();
        if let Profile::Elliptic {
            norm_even,
            norm_odd,
            ..
        } = &mut mode.profile
        {
            *norm_even = ne;
            *norm_odd = no;
        }
        Ok(mode)
    }

    pub fn spec(&self) -> ModeSpec {
        self.spec
    }

    pub fn geometry(&self) -> BeamGeometry {
        self.geometry
    }

    /// Raw (unnormalized) even/odd products at one point.
    fn raw_pair(&self, x: f64, y: f64) -> (f64, f64) {
        let w = self.geometry.waist();
        let r2 = (x * x + y * y) / (w * w);
        if r2 > 700.0 {
            // Gaussian envelope underflows; the mode value is zero to f64.
            return (0.0, 0.0);
        }
        let envelope = (-r2).exp();
        let (even, odd) = match &self.profile {
            Profile::Elliptic { even, odd, .. } => (even, odd),
            Profile::Laguerre { .. } => unreachable!("raw_pair is elliptic-only"),
        };
        let (u, v) = elliptic_coords(x, y, self.geometry.semifocal())
            .expect("semifocal > 0 on the elliptic profile");
        let eval = |poly: &IncePolynomial| {
            let radial = poly
                .eval_radial(u)
                .expect("radial series cannot overflow inside the Gaussian support");
            radial * poly.eval_angular(v) * envelope
        };
        (
            even.as_ref().map(&eval).unwrap_or(0.0),
            odd.as_ref().map(&eval).unwrap_or(0.0),
        )
    }

    /// Quadrature for the L² normalization constants over the default grid.
    fn compute_normalization(&self) -> (f64, f64) {
        let grid = SamplingGrid::default_for_order(self.spec.p, self.geometry.waist());
        let n = grid.samples();
        let sums: Vec<(f64, f64)> = (0..n)
            .into_par_iter()
            .map(|iy| {
                let y = grid.coord(iy);
                let mut se = 0.0;
                let mut so = 0.0;
                for ix in 0..n {
                    let x = grid.coord(ix);
                    let (e, o) = self.raw_pair(x, y);
                    se += e * e;
                    so += o * o;
                }
                (se, so)
            })
            .collect();
        let area = grid.cell_area();
        let ie = compensated_sum(sums.iter().map(|s| s.0)) * area;
        let io = compensated_sum(sums.iter().map(|s| s.1)) * area;
        (
            if ie > 0.0 { 1.0 / ie.sqrt() } else { 1.0 },
            if io > 0.0 { 1.0 / io.sqrt() } else { 1.0 },
        )
    }

    /// Complex amplitude of the mode at (x, y).
    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        match &self.profile {
            Profile::Laguerre { n, l } => {
                let w = self.geometry.waist();
                let lg = |sign: i32| eval_lg_reference(*n, sign * *l as i32, w, x, y);
                match self.spec.kind {
                    ModeKind::Plus => lg(1),
                    ModeKind::Minus => lg(-1),
                    ModeKind::Even => {
                        if *l == 0 {
                            lg(1)
                        } else {
                            (lg(1) + lg(-1)) * FRAC_1_SQRT_2
                        }
                    }
                    ModeKind::Odd => (lg(1) - lg(-1)) * Complex64::new(0.0, -FRAC_1_SQRT_2),
                    ModeKind::Bloch { a, phi } => {
                        lg(1) * Complex64::cis(phi) * a.sqrt()
                            + lg(-1) * Complex64::cis(-phi) * (1.0 - a).sqrt()
                    }
                }
            }
            Profile::Elliptic {
                norm_even,
                norm_odd,
                ..
            } => {
                let (raw_e, raw_o) = self.raw_pair(x, y);
                let e = norm_even * raw_e;
                let o = norm_odd * raw_o;
                match self.spec.kind {
                    ModeKind::Even => Complex64::new(e, 0.0),
                    ModeKind::Odd => Complex64::new(o, 0.0),
                    ModeKind::Plus => Complex64::new(e, o) * FRAC_1_SQRT_2,
                    ModeKind::Minus => Complex64::new(e, -o) * FRAC_1_SQRT_2,
                    ModeKind::Bloch { a, phi } => {
                        let plus = Complex64::new(e, o) * FRAC_1_SQRT_2;
                        let minus = Complex64::new(e, -o) * FRAC_1_SQRT_2;
                        plus * Complex64::cis(phi) * a.sqrt()
                            + minus * Complex64::cis(-phi) * (1.0 - a).sqrt()
                    }
                }
            }
        }
    }

    /// Samples the mode on `grid`. Rows are evaluated in parallel; the result
    /// does not depend on the partitioning. With `normalize` the discrete L²
    /// norm is rescaled to exactly 1.
    pub fn render(&self, grid: &SamplingGrid, normalize: bool) -> ComplexField {
        let n = grid.samples();
        let mut values = vec![Complex64::ZERO; n * n];
        values
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(iy, row)| {
                let y = grid.coord(iy);
                for (ix, slot) in row.iter_mut().enumerate() {
                    *slot = self.eval(grid.coord(ix), y);
                }
            });
        let mut field = ComplexField {
            grid: *grid,
            values,
            normalized: false,
        };
        if normalize {
            field.normalize();
        }
        field
    }
}

/// Renders the analytic `LG_{n,l}` reference on a grid.
pub fn render_lg(n: u32, l: i32, waist: f64, grid: &SamplingGrid, normalize: bool) -> ComplexField {
    let size = grid.samples();
    let mut values = vec![Complex64::ZERO; size * size];
    values
        .par_chunks_mut(size)
        .enumerate()
        .for_each(|(iy, row)| {
            let y = grid.coord(iy);
            for (ix, slot) in row.iter_mut().enumerate() {
                *slot = eval_lg_reference(n, l, waist, grid.coord(ix), y);
            }
        });
    let mut field = ComplexField {
        grid: *grid,
        values,
        normalized: false,
    };
    if normalize {
        field.normalize();
    }
    field
}
