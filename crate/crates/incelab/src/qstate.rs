//! Finite-dimensional two-party quantum states and the entanglement
//! diagnostics used on the helical mode basis.
//!
//! The 2⊗2 layer covers coincidence fringes between equatorial Bloch
//! projectors, the entanglement witness
//! `W = ¼(1 − σx⊗σx − σy⊗σy + σz⊗σz)` (negative only on entangled states,
//! −0.5 on |ψ₊⟩) and the steering value
//! `S = ⟨σx⊗σx⟩² + ⟨σy⊗σy⟩² + ⟨σz⊗σz⟩²` (≤ 1 for all non-steerable states).
//!
//! The 3⊗3 layer evaluates the dimensionality correlation function
//!
//! ```text
//! f(ρ) = g(ρ^{01}) + g(ρ^{02}) + g(ρ^{12}),
//! g(ρ^{kl}) = Tr((σz⊗σz − σy⊗σy + σx⊗σx) ρ^{kl}),
//! ```
//!
//! where `ρ^{kl}` is the two-level subspace cut of the state, renormalized by
//! its weight `N_kl`. Separable states satisfy `f ≤ 3`, states of Schmidt
//! rank ≤ 2 satisfy `f ≤ 6`, and the overall maximum is 9; both bounds are
//! tight and are exercised by Monte-Carlo sampling.

use std::io::{BufRead, Write};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};

use crate::error::{Error, Result};

type CMatrix = DMatrix<Complex64>;
type CVector = DVector<Complex64>;

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = -1e-10;
/// Subspace weights below this make g undefined (division by N_kl).
const ZERO_WEIGHT_TOL: f64 = 1e-14;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus of a complex matrix.
fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn pauli(axis: usize) -> CMatrix {
    match axis {
        0 => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        1 => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        _ => CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    }
}

/// Two-party density matrix with validated invariants: Hermitian, unit trace,
/// positive semidefinite (up to numerical dust).
///
/// The computational basis of each factor is the helical pair
/// {|IG⁺⟩, |IG⁻⟩} for qubits, or the three-mode ladder |0±⟩, |1±⟩, |2±⟩ for
/// qutrits; the index of |a⟩⊗|b⟩ is `a·dimB + b`.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    rho: CMatrix,
}

impl BipartiteState {
    pub fn new(dim_a: usize, dim_b: usize, rho: CMatrix) -> Result<Self> {
        if dim_a < 2 || dim_b < 2 {
            return Err(Error::InvalidState("factor dimensions must be >= 2".into()));
        }
        let d = dim_a * dim_b;
        if rho.nrows() != d || rho.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: rho.nrows(),
            });
        }
        let herm = max_abs(&(&rho - rho.adjoint()));
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian: max |rho - rho^dag| = {herm:e}"
            )));
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace = {trace}, expected 1")));
        }
        let min_eig = rho
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |m, &e| m.min(e));
        if min_eig < PSD_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite: min eigenvalue = {min_eig:e}"
            )));
        }
        Ok(Self { dim_a, dim_b, rho })
    }

    /// `ρ = |ψ⟩⟨ψ|` from the amplitudes of a pure state (normalized here).
    pub fn from_pure(dim_a: usize, dim_b: usize, psi: &[Complex64]) -> Result<Self> {
        let d = dim_a * dim_b;
        if psi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: psi.len(),
            });
        }
        let norm2: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::NormViolation(norm2));
        }
        let mut rho = CMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                rho[(i, j)] = psi[i] * psi[j].conj() / norm2;
            }
        }
        Ok(Self { dim_a, dim_b, rho })
    }

    /// The Bell state `(|+−⟩ + |−+⟩)/√2` in the helical qubit basis.
    pub fn bell_psi_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_pure(2, 2, &[c(0., 0.), c(s, 0.), c(s, 0.), c(0., 0.)])
            .expect("psi_plus is a valid pure state")
    }

    /// Pure two-qutrit state `a|0₊0₋⟩ + b|1₊1₋⟩ + c|2₊2₋⟩`; amplitudes must
    /// already be normalized to 1e-10.
    pub fn max_entangled_qutrit(weights: [Complex64; 3]) -> Result<Self> {
        let norm2: f64 = weights.iter().map(|w| w.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-10 {
            return Err(Error::NormViolation(norm2));
        }
        let mut psi = vec![c(0., 0.); 9];
        for (k, w) in weights.iter().enumerate() {
            psi[k * 3 + k] = *w;
        }
        Self::from_pure(3, 3, &psi)
    }

    /// Equal-weight maximally entangled two-qutrit state.
    pub fn ideal_qutrit() -> Self {
        let a = c(1.0 / 3.0_f64.sqrt(), 0.0);
        Self::max_entangled_qutrit([a, a, a]).expect("equal weights are normalized")
    }

    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let d = dim_a * dim_b;
        let rho = CMatrix::from_diagonal_element(d, d, c(1.0 / d as f64, 0.0));
        Self { dim_a, dim_b, rho }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    /// Isotropic-noise mix `v·ρ + (1−v)·I/(dimA·dimB)`.
    pub fn werner_mix(&self, v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::ParameterRange {
                name: "v",
                value: v,
                range: "[0, 1]",
            });
        }
        let d = self.dim_a * self.dim_b;
        let mixed = &self.rho * c(v, 0.0)
            + CMatrix::from_diagonal_element(d, d, c((1.0 - v) / d as f64, 0.0));
        Ok(Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            rho: mixed,
        })
    }

    /// Writes the density-matrix CSV format: first line `dimA,dimB`, then one
    /// matrix row per line as flattened `re,im` pairs.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{},{}", self.dim_a, self.dim_b)?;
        let d = self.dim_a * self.dim_b;
        for i in 0..d {
            let row: Vec<String> = (0..d)
                .map(|j| format!("{},{}", self.rho[(i, j)].re, self.rho[(i, j)].im))
                .collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Reads the CSV format written by [`Self::write_csv`], validating the
    /// density-matrix invariants.
    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let bad = |msg: String| Error::StateFile(msg);
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("empty file".into()))?
            .map_err(Error::Io)?;
        let dims: Vec<&str> = header.trim().split(',').collect();
        if dims.len() != 2 {
            return Err(bad(format!("header must be 'dimA,dimB', got '{header}'")));
        }
        let dim_a: usize = dims[0]
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad dimA '{}'", dims[0])))?;
        let dim_b: usize = dims[1]
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad dimB '{}'", dims[1])))?;
        if !(2..=16).contains(&dim_a) || !(2..=16).contains(&dim_b) {
            return Err(bad(format!("unsupported dimensions {dim_a}x{dim_b}")));
        }
        let d = dim_a * dim_b;
        let mut rho = CMatrix::zeros(d, d);
        let mut row = 0usize;
        for line in lines {
            let line = line.map_err(Error::Io)?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if row >= d {
                return Err(bad(format!("more than {d} matrix rows")));
            }
            let entries: Vec<&str> = line.split(',').collect();
            if entries.len() != 2 * d {
                return Err(bad(format!(
                    "row {} has {} numbers, expected {}",
                    row + 1,
                    entries.len(),
                    2 * d
                )));
            }
            for j in 0..d {
                let re: f64 = entries[2 * j]
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad number '{}'", entries[2 * j])))?;
                let im: f64 = entries[2 * j + 1]
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad number '{}'", entries[2 * j + 1])))?;
                rho[(row, j)] = c(re, im);
            }
            row += 1;
        }
        if row != d {
            return Err(bad(format!("found {row} matrix rows, expected {d}")));
        }
        Self::new(dim_a, dim_b, rho).map_err(|e| bad(e.to_string()))
    }
}

/// Real expectation value `Tr(op·ρ)`; the operators used here are Hermitian,
/// so the imaginary part is rounding dust.
fn expectation(state: &BipartiteState, op: &CMatrix) -> f64 {
    let tr = (op * state.rho()).trace();
    debug_assert!(tr.im.abs() < 1e-10, "non-real expectation {tr}");
    tr.re
}

fn two_qubit_correlator(state: &BipartiteState, axis: usize) -> f64 {
    expectation(state, &pauli(axis).kronecker(&pauli(axis)))
}

/// Rank-1 projector onto the equatorial Bloch state
/// `(e^{iφ}|+⟩ + e^{−iφ}|−⟩)/√2`.
pub fn equatorial_projector(phi: f64) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = CVector::from_vec(vec![Complex64::cis(phi) * s, Complex64::cis(-phi) * s]);
    &ket * ket.adjoint()
}

/// Born-rule coincidence probability `Tr((projA ⊗ projB)·ρ)`, clamped of
/// negative numerical dust.
pub fn coincidence_probability(
    state: &BipartiteState,
    proj_a: &CMatrix,
    proj_b: &CMatrix,
) -> Result<f64> {
    if proj_a.nrows() != state.dim_a() || proj_a.ncols() != state.dim_a() {
        return Err(Error::DimensionMismatch {
            expected: state.dim_a(),
            got: proj_a.nrows(),
        });
    }
    if proj_b.nrows() != state.dim_b() || proj_b.ncols() != state.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: state.dim_b(),
            got: proj_b.nrows(),
        });
    }
    let p = expectation(state, &proj_a.kronecker(proj_b));
    debug_assert!(p > -1e-9, "probability {p} far below zero");
    Ok(p.max(0.0))
}

/// Coincidence fringe: the signal projector is held at `phi1` while the idler
/// scans `phi2` from `phi2_start` to `phi2_end` (inclusive) in steps of
/// `step`. For the ideal |ψ₊⟩ the fringe follows `cos²(φ₁−φ₂)/2`.
pub fn fringe_scan(
    state: &BipartiteState,
    phi1: f64,
    phi2_start: f64,
    phi2_end: f64,
    step: f64,
) -> Result<Vec<(f64, f64)>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::ParameterRange {
            name: "step",
            value: step,
            range: "(0, inf)",
        });
    }
    let proj_a = equatorial_projector(phi1);
    let count = ((phi2_end - phi2_start) / step + 1e-9).floor() as usize + 1;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let phi2 = phi2_start + i as f64 * step;
        let p = coincidence_probability(state, &proj_a, &equatorial_projector(phi2))?;
        out.push((phi2, p));
    }
    Ok(out)
}

/// Entanglement witness `⟨W⟩ = ¼(1 − ⟨σxσx⟩ − ⟨σyσy⟩ + ⟨σzσz⟩)`.
/// Non-negative on every separable 2⊗2 state; −0.5 on |ψ₊⟩.
pub fn witness_w(state: &BipartiteState) -> Result<f64> {
    require_two_qubits(state)?;
    let (xx, yy, zz) = (
        two_qubit_correlator(state, 0),
        two_qubit_correlator(state, 1),
        two_qubit_correlator(state, 2),
    );
    Ok(0.25 * (1.0 - xx - yy + zz))
}

/// Steering value `S = ⟨σxσx⟩² + ⟨σyσy⟩² + ⟨σzσz⟩²`; `S ≤ 1` for all
/// non-steerable states, 3 on |ψ₊⟩.
pub fn steering_s(state: &BipartiteState) -> Result<f64> {
    require_two_qubits(state)?;
    Ok((0..3)
        .map(|axis| two_qubit_correlator(state, axis).powi(2))
        .sum())
}

fn require_two_qubits(state: &BipartiteState) -> Result<()> {
    if state.dim_a() != 2 || state.dim_b() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: state.dim_a().max(state.dim_b()),
        });
    }
    Ok(())
}

/// Labels the physical modes |IG⁺_{p,m,ε}⟩, |IG⁻_{p,m,ε}⟩ serving as the
/// computational basis of one qubit factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitBasisLabel {
    p: u32,
    m: u32,
    ellipticity: f64,
}

impl QubitBasisLabel {
    /// The indices must admit a helical pair (both parities), hence m ≥ 1.
    pub fn new(p: u32, m: u32, ellipticity: f64) -> Result<Self> {
        crate::modefield::ModeSpec::new(p, m, ellipticity, crate::modefield::ModeKind::Plus)?;
        Ok(Self { p, m, ellipticity })
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

    /// Mode spec of the |+⟩ basis state.
    pub fn plus_spec(&self) -> crate::modefield::ModeSpec {
        crate::modefield::ModeSpec::new(
            self.p,
            self.m,
            self.ellipticity,
            crate::modefield::ModeKind::Plus,
        )
        .expect("validated at construction")
    }

    /// Mode spec of the |−⟩ basis state.
    pub fn minus_spec(&self) -> crate::modefield::ModeSpec {
        crate::modefield::ModeSpec::new(
            self.p,
            self.m,
            self.ellipticity,
            crate::modefield::ModeKind::Minus,
        )
        .expect("validated at construction")
    }

    /// Mode spec of the equatorial superposition at phase `phi` (the optical
    /// realization of [`equatorial_projector`]'s target state).
    pub fn equatorial_spec(&self, phi: f64) -> Result<crate::modefield::ModeSpec> {
        crate::modefield::ModeSpec::new(
            self.p,
            self.m,
            self.ellipticity,
            crate::modefield::ModeKind::Bloch { a: 0.5, phi },
        )
    }
}

/// Axis of a two-level Pauli measurement inside a subspace pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// The qutrit embedding of a two-level Pauli on the span of |k⟩ and |l⟩:
/// `σ_x^{kl} = |k⟩⟨l| + |l⟩⟨k|`, `σ_y^{kl} = i|k⟩⟨l| − i|l⟩⟨k|`,
/// `σ_z^{kl} = |k⟩⟨k| − |l⟩⟨l|`, zero on the third level.
pub fn embedded_pauli(axis: PauliAxis, k: usize, l: usize) -> Result<CMatrix> {
    if k > 2 || l > 2 || k == l {
        return Err(Error::ParameterRange {
            name: "subspace pair",
            value: (k * 10 + l) as f64,
            range: "distinct indices in {0,1,2}",
        });
    }
    let mut op = CMatrix::zeros(3, 3);
    match axis {
        PauliAxis::X => {
            op[(k, l)] = c(1., 0.);
            op[(l, k)] = c(1., 0.);
        }
        PauliAxis::Y => {
            op[(k, l)] = c(0., 1.);
            op[(l, k)] = c(0., -1.);
        }
        PauliAxis::Z => {
            op[(k, k)] = c(1., 0.);
            op[(l, l)] = c(-1., 0.);
        }
    }
    Ok(op)
}

/// Two-level cut of a two-qutrit state: the projected block on the mode pair
/// (k, l), renormalized, plus its weight `N_kl`.
#[derive(Debug, Clone)]
pub struct SubspaceReduction {
    pair: (usize, usize),
    rho: CMatrix,
    weight: f64,
}

impl SubspaceReduction {
    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    /// The normalized 4×4 state in the ordered basis
    /// {|k₊k₋⟩, |k₊l₋⟩, |l₊k₋⟩, |l₊l₋⟩}.
    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    /// Normalization weight `N_kl = Tr(PρP)`.
    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// Projects a 3⊗3 state onto the (k, l) two-level subspace of both parties
/// and renormalizes. Errors with [`Error::ZeroWeight`] when the subspace is
/// unpopulated (g is undefined there).
pub fn subspace_reduce(state: &BipartiteState, k: usize, l: usize) -> Result<SubspaceReduction> {
    if state.dim_a() != 3 || state.dim_b() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: state.dim_a().max(state.dim_b()),
        });
    }
    if k > 2 || l > 2 || k == l {
        return Err(Error::ParameterRange {
            name: "subspace pair",
            value: (k * 10 + l) as f64,
            range: "distinct indices in {0,1,2}",
        });
    }
    let (k, l) = (k.min(l), k.max(l));
    let basis = [3 * k + k, 3 * k + l, 3 * l + k, 3 * l + l];
    let mut cut = CMatrix::zeros(4, 4);
    for (i, &bi) in basis.iter().enumerate() {
        for (j, &bj) in basis.iter().enumerate() {
            cut[(i, j)] = state.rho()[(bi, bj)];
        }
    }
    let weight = cut.trace().re;
    if weight < ZERO_WEIGHT_TOL {
        return Err(Error::ZeroWeight { k, l, weight });
    }
    Ok(SubspaceReduction {
        pair: (k, l),
        rho: cut / c(weight, 0.0),
        weight,
    })
}

/// Subspace correlation
/// `g = Tr((σ₊z⊗σ₋z − σ₊y⊗σ₋y + σ₊x⊗σ₋x)·ρ^{kl})`, in [−3, 3];
/// at most 1 on subspaces of separable states, 3 on |φ⁺_{kl}⟩.
pub fn g_subspace(reduction: &SubspaceReduction) -> f64 {
    let op = pauli(2).kronecker(&pauli(2)) - pauli(1).kronecker(&pauli(1))
        + pauli(0).kronecker(&pauli(0));
    let tr = (op * &reduction.rho).trace();
    debug_assert!(tr.im.abs() < 1e-10);
    tr.re
}

/// Dimensionality correlation function
/// `f(ρ) = g(ρ^{01}) + g(ρ^{02}) + g(ρ^{12})`.
pub fn f_rho(state: &BipartiteState) -> Result<f64> {
    let mut total = 0.0;
    for (k, l) in [(0, 1), (0, 2), (1, 2)] {
        total += g_subspace(&subspace_reduce(state, k, l)?);
    }
    Ok(total)
}

/// Entanglement-dimensionality classes separated by the proved bounds
/// f = 3 (separable) and f = 6 (Schmidt rank ≤ 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionClass {
    SeparableCompatible,
    TwoDimEntangledCompatible,
    AtLeastThreeDimEntangled,
}

impl std::fmt::Display for DimensionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DimensionClass::SeparableCompatible => "separable-compatible",
            DimensionClass::TwoDimEntangledCompatible => "2d-entangled-compatible",
            DimensionClass::AtLeastThreeDimEntangled => "at-least-3d-entangled",
        };
        f.write_str(s)
    }
}

/// Classifies an f(ρ) value against the bounds (boundaries inclusive
/// downwards: f = 3 is still separable-compatible, f = 6 still 2d-compatible).
pub fn classify_dimension(f_value: f64) -> DimensionClass {
    if f_value <= 3.0 {
        DimensionClass::SeparableCompatible
    } else if f_value <= 6.0 {
        DimensionClass::TwoDimEntangledCompatible
    } else {
        DimensionClass::AtLeastThreeDimEntangled
    }
}

fn haar_ket(dim: usize, rng: &mut ChaCha12Rng) -> CVector {
    let mut v = CVector::zeros(dim);
    for i in 0..dim {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        v[i] = c(re, im);
    }
    let norm = v.norm();
    v / c(norm, 0.0)
}

/// Random 3⊗3 separable state: a Dirichlet-weighted mixture of Haar-random
/// product states. Deterministic per seed.
pub fn sample_separable(seed: u64) -> BipartiteState {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let terms = rng.random_range(1..=6);
    let mut weights: Vec<f64> = (0..terms).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut rho = CMatrix::zeros(9, 9);
    for &w in &weights {
        let a = haar_ket(3, &mut rng);
        let b = haar_ket(3, &mut rng);
        let ket = a.kronecker(&b);
        rho += (&ket * ket.adjoint()) * c(w, 0.0);
    }
    BipartiteState {
        dim_a: 3,
        dim_b: 3,
        rho,
    }
}

/// Random pure 3⊗3 state of Schmidt rank ≤ 2: a Haar-random state of a
/// 2⊗2 subspace spanned by random orthonormal pairs on each side.
/// Deterministic per seed.
pub fn sample_schmidt2(seed: u64) -> BipartiteState {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let pair = |rng: &mut ChaCha12Rng| -> (CVector, CVector) {
        let v1 = haar_ket(3, rng);
        let mut v2 = haar_ket(3, rng);
        let overlap = v1.dotc(&v2);
        v2 -= &v1 * overlap;
        let norm = v2.norm();
        (v1, v2 / c(norm, 0.0))
    };
    let (a1, a2) = pair(&mut rng);
    let (b1, b2) = pair(&mut rng);
    let amp: Vec<Complex64> = (0..4)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            c(re, im)
        })
        .collect();
    let mut psi = CVector::zeros(9);
    for (idx, (ai, bj)) in [(&a1, &b1), (&a1, &b2), (&a2, &b1), (&a2, &b2)]
        .iter()
        .enumerate()
    {
        psi += (*ai).kronecker(*bj) * amp[idx];
    }
    let amplitudes: Vec<Complex64> = psi.iter().copied().collect();
    BipartiteState::from_pure(3, 3, &amplitudes).expect("nonzero Gaussian amplitudes")
}

/// Replaces each expected count `λ = p·total_pairs` by a Poisson draw.
/// Deterministic per seed.
pub fn poisson_counts(probabilities: &[f64], total_pairs: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    probabilities
        .iter()
        .map(|&p| {
            let lambda = p * total_pairs as f64;
            if lambda <= 0.0 {
                0
            } else {
                Poisson::new(lambda).expect("positive lambda").sample(&mut rng) as u64
            }
        })
        .collect()
}
