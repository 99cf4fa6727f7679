//! C ABI wrapper around the `incelab` library.
//!
//! Modes and rendered fields live behind opaque handles created and destroyed
//! by this layer; every fallible call returns an [`IgStatus`] code and writes
//! its results through out-pointers. Density matrices cross the boundary as
//! row-major complex arrays with interleaved (re, im) doubles.
//!
//! The matching C header is generated into `include/incelab.h` by the build
//! script.

use std::ffi::{c_char, CStr};

use incelab::nalgebra::DMatrix;
use incelab::num_complex::Complex64;

use incelab::error::Error;
use incelab::modefield::{BeamGeometry, ComplexField, Mode, ModeKind, ModeSpec, SamplingGrid};
use incelab::overlap::inner_product;
use incelab::qstate::{
    classify_dimension, f_rho, steering_s, witness_w, BipartiteState, DimensionClass,
};
use incelab::vortex::{default_amp_threshold, find_singularities};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidIndices = 3,
    Overflow = 4,
    GridMismatch = 5,
    NonConvergence = 6,
    ZeroWeight = 7,
    BadState = 8,
    Io = 9,
}

/// Mode families selectable through the C API. `Bloch` uses the `bloch_a`
/// and `bloch_phi` arguments of `ig_mode_new`; the other kinds ignore them.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgModeKind {
    Even = 0,
    Odd = 1,
    Plus = 2,
    Minus = 3,
    Bloch = 4,
}

/// Opaque solved-mode handle.
pub struct IgMode {
    inner: Mode,
}

/// Opaque sampled-field handle.
pub struct IgField {
    inner: ComplexField,
}

fn status_of(err: &Error) -> IgStatus {
    match err {
        Error::InvalidIndices { .. } => IgStatus::InvalidIndices,
        Error::Overflow(_) => IgStatus::Overflow,
        Error::GridMismatch => IgStatus::GridMismatch,
        Error::NonConvergence { .. } => IgStatus::NonConvergence,
        Error::ZeroWeight { .. } => IgStatus::ZeroWeight,
        Error::InvalidState(_) | Error::StateFile(_) | Error::NormViolation(_) => {
            IgStatus::BadState
        }
        Error::Io(_) => IgStatus::Io,
        _ => IgStatus::InvalidArgument,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn ig_status_message(status: IgStatus) -> *const c_char {
    let msg: &CStr = match status {
        IgStatus::Ok => c"ok",
        IgStatus::NullPointer => c"null pointer argument",
        IgStatus::InvalidArgument => c"invalid argument",
        IgStatus::InvalidIndices => c"invalid Ince indices",
        IgStatus::Overflow => c"numeric overflow",
        IgStatus::GridMismatch => c"fields sampled on different grids",
        IgStatus::NonConvergence => c"grid doubling did not converge",
        IgStatus::ZeroWeight => c"unpopulated subspace",
        IgStatus::BadState => c"invalid density matrix",
        IgStatus::Io => c"i/o failure",
    };
    msg.as_ptr()
}

/// Creates a solved mode handle. `bloch_a`/`bloch_phi` (radians) are read
/// only when `kind` is `Bloch`. On success writes the handle to `out`.
///
/// # Safety
/// `out` must be a valid pointer. A returned handle must be released with
/// [`ig_mode_free`].
#[no_mangle]
pub unsafe extern "C" fn ig_mode_new(
    p: u32,
    m: u32,
    ellipticity: f64,
    kind: IgModeKind,
    bloch_a: f64,
    bloch_phi: f64,
    waist: f64,
    out: *mut *mut IgMode,
) -> IgStatus {
    if out.is_null() {
        return IgStatus::NullPointer;
    }
    let kind = match kind {
        IgModeKind::Even => ModeKind::Even,
        IgModeKind::Odd => ModeKind::Odd,
        IgModeKind::Plus => ModeKind::Plus,
        IgModeKind::Minus => ModeKind::Minus,
        IgModeKind::Bloch => ModeKind::Bloch {
            a: bloch_a,
            phi: bloch_phi,
        },
    };
    let built = ModeSpec::new(p, m, ellipticity, kind)
        .and_then(|spec| Ok((spec, BeamGeometry::new(waist, ellipticity)?)))
        .and_then(|(spec, geometry)| Mode::new(spec, geometry));
    match built {
        Ok(mode) => {
            unsafe { *out = Box::into_raw(Box::new(IgMode { inner: mode })) };
            IgStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a mode handle; a null pointer is a no-op.
///
/// # Safety
/// `mode` must be null or a pointer previously returned by [`ig_mode_new`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn ig_mode_free(mode: *mut IgMode) {
    if !mode.is_null() {
        drop(unsafe { Box::from_raw(mode) });
    }
}

/// Evaluates the mode amplitude at one point.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ig_mode_eval(
    mode: *const IgMode,
    x: f64,
    y: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> IgStatus {
    if mode.is_null() || out_re.is_null() || out_im.is_null() {
        return IgStatus::NullPointer;
    }
    let v = unsafe { &*mode }.inner.eval(x, y);
    unsafe {
        *out_re = v.re;
        *out_im = v.im;
    }
    IgStatus::Ok
}

/// Renders the mode on an N×N grid of half-extent `half_extent` (pass 0 or a
/// negative value for the order-adapted default, and 0 samples for the
/// default 512).
///
/// # Safety
/// `mode` and `out` must be valid pointers; the returned field must be
/// released with [`ig_field_free`].
#[no_mangle]
pub unsafe extern "C" fn ig_mode_render(
    mode: *const IgMode,
    half_extent: f64,
    samples: usize,
    normalize: bool,
    out: *mut *mut IgField,
) -> IgStatus {
    if mode.is_null() || out.is_null() {
        return IgStatus::NullPointer;
    }
    let mode = &unsafe { &*mode }.inner;
    let default = SamplingGrid::default_for_order(mode.spec().p(), mode.geometry().waist());
    let half_extent = if half_extent > 0.0 {
        half_extent
    } else {
        default.half_extent()
    };
    let samples = if samples >= 2 { samples } else { default.samples() };
    let grid = match SamplingGrid::new(half_extent, samples) {
        Ok(g) => g,
        Err(e) => return status_of(&e),
    };
    let field = mode.render(&grid, normalize);
    unsafe { *out = Box::into_raw(Box::new(IgField { inner: field })) };
    IgStatus::Ok
}

/// Releases a field handle; a null pointer is a no-op.
///
/// # Safety
/// `field` must be null or a pointer previously returned by this library
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn ig_field_free(field: *mut IgField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Samples per axis of a rendered field (0 on null input).
///
/// # Safety
/// `field` must be null or a valid field handle.
#[no_mangle]
pub unsafe extern "C" fn ig_field_samples(field: *const IgField) -> usize {
    if field.is_null() {
        return 0;
    }
    unsafe { &*field }.inner.grid().samples()
}

/// Grid half-extent of a rendered field (0 on null input).
///
/// # Safety
/// `field` must be null or a valid field handle.
#[no_mangle]
pub unsafe extern "C" fn ig_field_half_extent(field: *const IgField) -> f64 {
    if field.is_null() {
        return 0.0;
    }
    unsafe { &*field }.inner.grid().half_extent()
}

/// Copies the field amplitudes into `out` as row-major interleaved
/// (re, im) doubles; `len` must be exactly `2·N·N`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ig_field_copy_values(
    field: *const IgField,
    out: *mut f64,
    len: usize,
) -> IgStatus {
    if field.is_null() || out.is_null() {
        return IgStatus::NullPointer;
    }
    let values = unsafe { &*field }.inner.values();
    if len != 2 * values.len() {
        return IgStatus::InvalidArgument;
    }
    let out = unsafe { std::slice::from_raw_parts_mut(out, len) };
    for (i, v) in values.iter().enumerate() {
        out[2 * i] = v.re;
        out[2 * i + 1] = v.im;
    }
    IgStatus::Ok
}

/// Discrete L² inner product ⟨A|B⟩ of two fields on the same grid.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ig_field_inner_product(
    a: *const IgField,
    b: *const IgField,
    out_re: *mut f64,
    out_im: *mut f64,
) -> IgStatus {
    if a.is_null() || b.is_null() || out_re.is_null() || out_im.is_null() {
        return IgStatus::NullPointer;
    }
    match inner_product(&unsafe { &*a }.inner, &unsafe { &*b }.inner) {
        Ok(v) => {
            unsafe {
                *out_re = v.re;
                *out_im = v.im;
            }
            IgStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Locates phase singularities. Pass a negative `amp_threshold` for the
/// default (1e-3 of the peak amplitude). Writes up to `capacity` triples
/// (x, y, charge) into `out_xyq` (unless it is null) and always stores the
/// total count in `out_count`.
///
/// # Safety
/// `out_xyq` must be null or point to `3·capacity` writable doubles;
/// `out_count` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ig_field_find_singularities(
    field: *const IgField,
    amp_threshold: f64,
    out_xyq: *mut f64,
    capacity: usize,
    out_count: *mut usize,
) -> IgStatus {
    if field.is_null() || out_count.is_null() {
        return IgStatus::NullPointer;
    }
    let field = &unsafe { &*field }.inner;
    let threshold = if amp_threshold < 0.0 {
        default_amp_threshold(field)
    } else {
        amp_threshold
    };
    let scan = find_singularities(field, threshold);
    let found = scan.singularities();
    unsafe { *out_count = found.len() };
    if !out_xyq.is_null() {
        let n = found.len().min(capacity);
        let out = unsafe { std::slice::from_raw_parts_mut(out_xyq, 3 * n) };
        for (i, s) in found.iter().take(n).enumerate() {
            out[3 * i] = s.x;
            out[3 * i + 1] = s.y;
            out[3 * i + 2] = s.charge as f64;
        }
    }
    IgStatus::Ok
}

unsafe fn state_from_raw(
    dim_a: usize,
    dim_b: usize,
    rho: *const f64,
) -> Result<BipartiteState, IgStatus> {
    if rho.is_null() {
        return Err(IgStatus::NullPointer);
    }
    let d = dim_a * dim_b;
    let raw = unsafe { std::slice::from_raw_parts(rho, 2 * d * d) };
    let mut matrix = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let k = 2 * (i * d + j);
            matrix[(i, j)] = Complex64::new(raw[k], raw[k + 1]);
        }
    }
    BipartiteState::new(dim_a, dim_b, matrix).map_err(|e| status_of(&e))
}

/// Witness ⟨W⟩ and steering value S of a 2⊗2 density matrix passed as 16
/// row-major complex entries (32 interleaved doubles).
///
/// # Safety
/// `rho` must point to 32 readable doubles; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ig_witness_steering(
    rho: *const f64,
    out_w: *mut f64,
    out_s: *mut f64,
) -> IgStatus {
    if out_w.is_null() || out_s.is_null() {
        return IgStatus::NullPointer;
    }
    let state = match unsafe { state_from_raw(2, 2, rho) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    match (witness_w(&state), steering_s(&state)) {
        (Ok(w), Ok(s)) => {
            unsafe {
                *out_w = w;
                *out_s = s;
            }
            IgStatus::Ok
        }
        (Err(e), _) | (_, Err(e)) => status_of(&e),
    }
}

/// Dimensionality correlation f(ρ) of a 3⊗3 density matrix passed as 81
/// row-major complex entries (162 interleaved doubles).
///
/// # Safety
/// `rho` must point to 162 readable doubles; `out_f` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ig_f_rho(rho: *const f64, out_f: *mut f64) -> IgStatus {
    if out_f.is_null() {
        return IgStatus::NullPointer;
    }
    let state = match unsafe { state_from_raw(3, 3, rho) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    match f_rho(&state) {
        Ok(f) => {
            unsafe { *out_f = f };
            IgStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Classifies an f(ρ) value: 0 separable-compatible, 1 2d-entangled-
/// compatible, 2 at-least-3d-entangled.
#[no_mangle]
pub extern "C" fn ig_classify_dimension(f_value: f64) -> i32 {
    match classify_dimension(f_value) {
        DimensionClass::SeparableCompatible => 0,
        DimensionClass::TwoDimEntangledCompatible => 1,
        DimensionClass::AtLeastThreeDimEntangled => 2,
    }
}
