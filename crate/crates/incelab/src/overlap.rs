//! Overlap integrals between sampled modes.
//!
//! The discrete L² inner product `Σ conj(A)·B·Δx·Δy` on a shared grid is a
//! midpoint quadrature; the integrands decay like `exp(−2r²/ω0²)`, so the
//! rule converges fast and the built-in error estimate is grid doubling
//! rather than a higher-order rule. `mode_overlap` doubles the sample count
//! until the overlap changes by less than [`OVERLAP_CONVERGENCE_TOL`].

use std::io::Write;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modefield::{BeamGeometry, ComplexField, Mode, ModeKind, ModeSpec, SamplingGrid};
use crate::numeric::compensated_complex_sum;

/// Overlap values are accepted as converged when grid doubling changes them
/// by less than this.
pub const OVERLAP_CONVERGENCE_TOL: f64 = 1e-4;

/// Discrete L² inner product `⟨A|B⟩ = Σ conj(A)·B·Δx·Δy`.
///
/// Conjugate-symmetric: `inner_product(B, A) = conj(inner_product(A, B))`.
pub fn inner_product(a: &ComplexField, b: &ComplexField) -> Result<Complex64> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    let area = a.grid().cell_area();
    let sum = compensated_complex_sum(
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| x.conj() * y),
    );
    Ok(sum * area)
}

/// `|⟨A|B⟩|²` of the two normalized rendered modes, grid-doubled until the
/// value is stable to [`OVERLAP_CONVERGENCE_TOL`].
///
/// The two specs may carry different ellipticities (that is the point of the
/// ellipticity scans); each gets its own coordinate system on the shared
/// waist. Errors with [`Error::NonConvergence`] when two doublings still move
/// the value by more than the tolerance.
pub fn mode_overlap(
    spec_a: &ModeSpec,
    spec_b: &ModeSpec,
    waist: f64,
    grid: &SamplingGrid,
) -> Result<f64> {
    let mode_a = Mode::new(*spec_a, BeamGeometry::new(waist, spec_a.ellipticity())?)?;
    let mode_b = Mode::new(*spec_b, BeamGeometry::new(waist, spec_b.ellipticity())?)?;
    let overlap_at = |g: &SamplingGrid| -> Result<f64> {
        let fa = mode_a.render(g, true);
        let fb = mode_b.render(g, true);
        Ok(inner_product(&fa, &fb)?.norm_sqr())
    };

    let mut g = *grid;
    let mut prev = overlap_at(&g)?;
    let mut last_change = f64::INFINITY;
    for _ in 0..2 {
        g = g.doubled();
        let cur = overlap_at(&g)?;
        last_change = (cur - prev).abs();
        if last_change < OVERLAP_CONVERGENCE_TOL {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        last_change,
        tolerance: OVERLAP_CONVERGENCE_TOL,
    })
}

/// Sampled `|⟨IG_{p,m,ε_ref}|IG_{p,m,ε}⟩|²` versus ε.
#[derive(Debug, Clone)]
pub struct OverlapCurve {
    reference: ModeSpec,
    epsilons: Vec<f64>,
    overlaps: Vec<f64>,
}

impl OverlapCurve {
    pub fn reference(&self) -> ModeSpec {
        self.reference
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub fn overlaps(&self) -> &[f64] {
        &self.overlaps
    }

    /// Sample index with the largest overlap.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.overlaps.iter().enumerate() {
            if *v > self.overlaps[best] {
                best = i;
            }
        }
        best
    }

    /// CSV dump `epsilon,overlap`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "epsilon,overlap")?;
        for (e, o) in self.epsilons.iter().zip(&self.overlaps) {
            writeln!(out, "{},{}", e, o)?;
        }
        Ok(())
    }
}

/// Scans `|⟨IG_{p,m,ε_ref}|IG_{p,m,ε}⟩|²` over `steps` evenly spaced ε in
/// `[eps_min, eps_max]` (inclusive; `steps = 1` samples `eps_min` alone).
///
/// Samples run in parallel; the reference renders are shared across samples.
#[allow(clippy::too_many_arguments)] // mirrors the scan's full parameter set
pub fn overlap_curve(
    p: u32,
    m: u32,
    kind: ModeKind,
    eps_ref: f64,
    eps_min: f64,
    eps_max: f64,
    steps: usize,
    waist: f64,
    grid: &SamplingGrid,
) -> Result<OverlapCurve> {
    if eps_min < 0.0 {
        return Err(Error::NegativeEllipticity(eps_min));
    }
    if steps == 0 {
        return Err(Error::ParameterRange {
            name: "steps",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    if eps_max < eps_min {
        return Err(Error::ParameterRange {
            name: "eps_max",
            value: eps_max,
            range: "[eps_min, inf)",
        });
    }
    let reference = ModeSpec::new(p, m, eps_ref, kind)?;
    let ref_mode = Mode::new(reference, BeamGeometry::new(waist, eps_ref)?)?;

    // Reference renders shared across the scan, materialized per grid level
    // on first use.
    let grids = [*grid, grid.doubled(), grid.doubled().doubled()];
    let ref_fields: [OnceLock<ComplexField>; 3] = Default::default();
    let ref_field = |level: usize| -> &ComplexField {
        ref_fields[level].get_or_init(|| ref_mode.render(&grids[level], true))
    };

    let epsilons: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                eps_min
            } else {
                eps_min + (eps_max - eps_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();

    let overlaps: Result<Vec<f64>> = epsilons
        .par_iter()
        .map(|&eps| {
            let spec = ModeSpec::new(p, m, eps, kind)?;
            let mode = Mode::new(spec, BeamGeometry::new(waist, eps)?)?;
            let mut prev = f64::NAN;
            let mut last_change = f64::INFINITY;
            for (level, grid) in grids.iter().enumerate() {
                let field = mode.render(grid, true);
                let cur = inner_product(ref_field(level), &field)?.norm_sqr();
                if level > 0 {
                    last_change = (cur - prev).abs();
                    if last_change < OVERLAP_CONVERGENCE_TOL {
                        return Ok(cur);
                    }
                }
                prev = cur;
            }
            Err(Error::NonConvergence {
                last_change,
                tolerance: OVERLAP_CONVERGENCE_TOL,
            })
        })
        .collect();

    Ok(OverlapCurve {
        reference,
        epsilons,
        overlaps: overlaps?,
    })
}

/// Hermitian matrix of inner products between normalized renders of `specs`,
/// which must all share one ellipticity (equal to the geometry's).
pub fn gram_matrix(
    specs: &[ModeSpec],
    geometry: &BeamGeometry,
    grid: &SamplingGrid,
) -> Result<DMatrix<Complex64>> {
    if let Some(first) = specs.first() {
        for s in specs {
            if s.ellipticity() != first.ellipticity() {
                return Err(Error::MixedEllipticity(first.ellipticity(), s.ellipticity()));
            }
        }
    }
    let fields: Result<Vec<ComplexField>> = specs
        .iter()
        .map(|s| Ok(Mode::new(*s, *geometry)?.render(grid, true)))
        .collect();
    let fields = fields?;
    let n = fields.len();
    let mut gram = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = inner_product(&fields[i], &fields[j])?;
            gram[(i, j)] = v;
            gram[(j, i)] = v.conj();
        }
    }
    Ok(gram)
}
