//! Phase singularity detection.
//!
//! Wrapped phase differences are accumulated around every 2×2 plaquette of
//! the sampled field; a winding of ±2π flags a unit vortex. Flagged plaquettes
//! within two cells of each other are merged: coincident vortices (an ε = 0
//! charge-m center) alias the single-plaquette winding, so a merged cluster is
//! re-counted by the phase winding around its padded bounding box, which sees
//! every step well below π. Positions are refined by intersecting the Re = 0
//! and Im = 0 bilinear contours inside the flagged plaquette.
//!
//! A candidate is only reported when the interpolated amplitude at its
//! position lies below the caller's threshold, which silences spurious
//! windings in bright, strongly phase-sloped regions.

use std::collections::VecDeque;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::modefield::ComplexField;

/// A located phase vortex with signed integer topological charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singularity {
    /// Position in the field's length units.
    pub x: f64,
    pub y: f64,
    /// Integer 2π-winding of the phase around the vortex.
    pub charge: i32,
}

/// Result of a singularity scan.
#[derive(Debug, Clone)]
pub struct VortexScan {
    singularities: Vec<Singularity>,
    undersampled_fraction: f64,
}

impl VortexScan {
    /// Detected singularities, sorted by distance from the origin.
    pub fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }

    /// Fraction of plaquettes containing a wrapped phase step above π/2.
    pub fn undersampled_fraction(&self) -> f64 {
        self.undersampled_fraction
    }

    /// Non-fatal warning: more than 5% of plaquettes are marginally sampled,
    /// so windings near π-steps may alias.
    pub fn resolution_warning(&self) -> bool {
        self.undersampled_fraction > 0.05
    }

    /// CSV dump `x,y,charge`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,charge")?;
        for s in &self.singularities {
            writeln!(out, "{},{},{}", s.x, s.y, s.charge)?;
        }
        Ok(())
    }
}

/// Default amplitude gate: 1e-3 of the peak amplitude. Plaquette candidates
/// brighter than this are never reported.
pub fn default_amp_threshold(field: &ComplexField) -> f64 {
    1e-3 * field.peak_amplitude()
}

/// Sum of the charges inside `x² + y² < radius²`.
pub fn net_charge(singularities: &[Singularity], radius: f64) -> i32 {
    assert!(radius > 0.0, "radius must be positive");
    singularities
        .iter()
        .filter(|s| s.x * s.x + s.y * s.y < radius * radius)
        .map(|s| s.charge)
        .sum()
}

fn wrap(d: f64) -> f64 {
    d - TAU * (d / TAU).round()
}

/// Locates phase singularities in `field` and assigns integer charges by
/// plaquette phase winding.
///
/// The caller must sample finely enough that phase steps between adjacent
/// samples stay below π away from vortices; the scan reports the fraction of
/// marginal plaquettes through [`VortexScan::undersampled_fraction`].
pub fn find_singularities(field: &ComplexField, amp_threshold: f64) -> VortexScan {
    let n = field.grid().samples();
    let theta: Vec<f64> = field.values().par_iter().map(|v| v.arg()).collect();
    let idx = |ix: usize, iy: usize| iy * n + ix;

    // plaquette windings
    let mut flags: Vec<(usize, usize, i32)> = Vec::new();
    let mut undersampled = 0usize;
    for iy in 0..n - 1 {
        for ix in 0..n - 1 {
            let t00 = theta[idx(ix, iy)];
            let t10 = theta[idx(ix + 1, iy)];
            let t11 = theta[idx(ix + 1, iy + 1)];
            let t01 = theta[idx(ix, iy + 1)];
            let d1 = wrap(t10 - t00);
            let d2 = wrap(t11 - t10);
            let d3 = wrap(t01 - t11);
            let d4 = wrap(t00 - t01);
            if d1.abs().max(d2.abs()).max(d3.abs()).max(d4.abs()) > FRAC_PI_2 {
                undersampled += 1;
            }
            let w = ((d1 + d2 + d3 + d4) / TAU).round() as i32;
            if w != 0 {
                flags.push((ix, iy, w));
            }
        }
    }
    let undersampled_fraction = undersampled as f64 / ((n - 1) * (n - 1)) as f64;

    let clusters = cluster_flags(&flags);

    let mut singularities: Vec<Singularity> = Vec::new();
    for cluster in &clusters {
        let charge = if cluster.len() == 1 {
            flags[cluster[0]].2
        } else {
            // re-count around the padded bounding box of the cluster
            let (mut i0, mut j0, mut i1, mut j1) = (usize::MAX, usize::MAX, 0usize, 0usize);
            for &k in cluster {
                let (ix, iy, _) = flags[k];
                i0 = i0.min(ix);
                j0 = j0.min(iy);
                i1 = i1.max(ix);
                j1 = j1.max(iy);
            }
            boundary_winding(
                &theta,
                n,
                i0.saturating_sub(1),
                j0.saturating_sub(1),
                (i1 + 1).min(n - 2),
                (j1 + 1).min(n - 2),
            )
        };
        if charge == 0 {
            continue;
        }

        // position: bilinear zero crossing in the dimmest cluster plaquette,
        // falling back to the centroid of the cluster's plaquette centers
        let mut members: Vec<usize> = cluster.clone();
        members.sort_by(|&a, &b| {
            min_corner_amp(field, flags[a].0, flags[a].1)
                .total_cmp(&min_corner_amp(field, flags[b].0, flags[b].1))
        });
        let mut position = None;
        for &k in &members {
            let (ix, iy, _) = flags[k];
            if let Some(p) = refine_in_plaquette(field, ix, iy) {
                position = Some(p);
                break;
            }
        }
        let (x, y) = position.unwrap_or_else(|| {
            let d = field.grid().spacing();
            let (mut cx, mut cy) = (0.0, 0.0);
            for &k in cluster {
                let (ix, iy, _) = flags[k];
                cx += field.grid().coord(ix) + 0.5 * d;
                cy += field.grid().coord(iy) + 0.5 * d;
            }
            (cx / cluster.len() as f64, cy / cluster.len() as f64)
        });

        // amplitude gate at the reported position
        if interp_amp(field, x, y) >= amp_threshold {
            continue;
        }
        singularities.push(Singularity { x, y, charge });
    }

    singularities.sort_by(|a, b| {
        (a.x * a.x + a.y * a.y)
            .total_cmp(&(b.x * b.x + b.y * b.y))
            .then(a.y.total_cmp(&b.y))
            .then(a.x.total_cmp(&b.x))
    });

    VortexScan {
        singularities,
        undersampled_fraction,
    }
}

/// Groups flagged plaquettes with Chebyshev distance ≤ 2 (index lists into
/// `flags`).
fn cluster_flags(flags: &[(usize, usize, i32)]) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; flags.len()];
    let mut clusters = Vec::new();
    for start in 0..flags.len() {
        if assigned[start] {
            continue;
        }
        let mut cluster = vec![start];
        assigned[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let (ax, ay, _) = flags[k];
            for (other, flag) in flags.iter().enumerate() {
                if assigned[other] {
                    continue;
                }
                let (bx, by, _) = *flag;
                if ax.abs_diff(bx) <= 2 && ay.abs_diff(by) <= 2 {
                    assigned[other] = true;
                    cluster.push(other);
                    queue.push_back(other);
                }
            }
        }
        clusters.push(cluster);
    }
    clusters
}

/// Phase winding along the counterclockwise node loop bounding plaquettes
/// [i0..=i1] × [j0..=j1].
fn boundary_winding(theta: &[f64], n: usize, i0: usize, j0: usize, i1: usize, j1: usize) -> i32 {
    let idx = |ix: usize, iy: usize| iy * n + ix;
    let mut loop_nodes: Vec<(usize, usize)> = Vec::new();
    for ix in i0..=i1 + 1 {
        loop_nodes.push((ix, j0));
    }
    for iy in j0 + 1..=j1 + 1 {
        loop_nodes.push((i1 + 1, iy));
    }
    for ix in (i0..=i1).rev() {
        loop_nodes.push((ix, j1 + 1));
    }
    for iy in (j0 + 1..=j1).rev() {
        loop_nodes.push((i0, iy));
    }
    let mut total = 0.0;
    for k in 0..loop_nodes.len() {
        let (ax, ay) = loop_nodes[k];
        let (bx, by) = loop_nodes[(k + 1) % loop_nodes.len()];
        total += wrap(theta[idx(bx, by)] - theta[idx(ax, ay)]);
    }
    (total / TAU).round() as i32
}

fn min_corner_amp(field: &ComplexField, ix: usize, iy: usize) -> f64 {
    let c = [
        field.value(ix, iy),
        field.value(ix + 1, iy),
        field.value(ix, iy + 1),
        field.value(ix + 1, iy + 1),
    ];
    c.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
}

/// Newton iteration on the bilinear interpolant for Re = Im = 0 inside the
/// plaquette; `None` when no crossing lies (essentially) inside.
fn refine_in_plaquette(field: &ComplexField, ix: usize, iy: usize) -> Option<(f64, f64)> {
    let f00 = field.value(ix, iy);
    let f10 = field.value(ix + 1, iy);
    let f01 = field.value(ix, iy + 1);
    let f11 = field.value(ix + 1, iy + 1);
    let scale = [f00, f10, f01, f11]
        .iter()
        .map(|v| v.norm())
        .fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return None;
    }
    let eval = |s: f64, t: f64| -> Complex64 {
        f00 * (1.0 - s) * (1.0 - t) + f10 * s * (1.0 - t) + f01 * (1.0 - s) * t + f11 * s * t
    };
    let (mut s, mut t) = (0.5, 0.5);
    for _ in 0..30 {
        let f = eval(s, t);
        if f.norm() < 1e-12 * scale {
            break;
        }
        let ds = (f10 - f00) * (1.0 - t) + (f11 - f01) * t;
        let dt = (f01 - f00) * (1.0 - s) + (f11 - f10) * s;
        let det = ds.re * dt.im - ds.im * dt.re;
        if det.abs() < 1e-300 {
            return None;
        }
        let step_s = (f.re * dt.im - f.im * dt.re) / det;
        let step_t = (f.im * ds.re - f.re * ds.im) / det;
        s -= step_s.clamp(-0.75, 0.75);
        t -= step_t.clamp(-0.75, 0.75);
        if !(-2.0..=3.0).contains(&s) || !(-2.0..=3.0).contains(&t) {
            return None;
        }
    }
    if !(-0.02..=1.02).contains(&s) || !(-0.02..=1.02).contains(&t) {
        return None;
    }
    if eval(s, t).norm() > 1e-6 * scale {
        return None;
    }
    let d = field.grid().spacing();
    Some((
        field.grid().coord(ix) + s * d,
        field.grid().coord(iy) + t * d,
    ))
}

/// Bilinearly interpolated amplitude at a world coordinate (clamped to the
/// grid).
fn interp_amp(field: &ComplexField, x: f64, y: f64) -> f64 {
    let g = field.grid();
    let n = g.samples();
    let d = g.spacing();
    let fx = ((x + g.half_extent()) / d - 0.5).clamp(0.0, (n - 2) as f64);
    let fy = ((y + g.half_extent()) / d - 0.5).clamp(0.0, (n - 2) as f64);
    let ix = fx.floor() as usize;
    let iy = fy.floor() as usize;
    let s = fx - ix as f64;
    let t = fy - iy as f64;
    let v = field.value(ix, iy) * (1.0 - s) * (1.0 - t)
        + field.value(ix + 1, iy) * s * (1.0 - t)
        + field.value(ix, iy + 1) * (1.0 - s) * t
        + field.value(ix + 1, iy + 1) * s * t;
    v.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modefield::{BeamGeometry, ComplexField, Mode, ModeKind, ModeSpec, SamplingGrid};

    fn render(p: u32, m: u32, eps: f64, kind: ModeKind) -> ComplexField {
        let spec = ModeSpec::new(p, m, eps, kind).unwrap();
        let mode = Mode::new(spec, BeamGeometry::unit_waist(eps).unwrap()).unwrap();
        let grid = SamplingGrid::default_for_order(p, 1.0);
        mode.render(&grid, true)
    }

    fn scan(field: &ComplexField) -> VortexScan {
        find_singularities(field, default_amp_threshold(field))
    }

    #[test]
    fn plane_wave_has_no_singularities() {
        let grid = SamplingGrid::new(2.0, 64).unwrap();
        let values = vec![Complex64::new(1.0, 0.0); 64 * 64];
        let field = ComplexField::from_values(grid, values).unwrap();
        let scan = find_singularities(&field, 1e-3);
        assert!(scan.singularities().is_empty());
        assert!(!scan.resolution_warning());
    }

    #[test]
    fn synthetic_offset_vortex() {
        let grid = SamplingGrid::new(2.0, 128).unwrap();
        let n = grid.samples();
        let (x0, y0) = (0.213, -0.147);
        let mut values = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                let z = Complex64::new(grid.coord(ix) - x0, grid.coord(iy) - y0);
                // taper so the amplitude gate scale is realistic
                let r2 = grid.coord(ix).powi(2) + grid.coord(iy).powi(2);
                values.push(z * (-r2).exp());
            }
        }
        let field = ComplexField::from_values(grid, values).unwrap();
        let scan = scan(&field);
        assert_eq!(scan.singularities().len(), 1);
        let s = scan.singularities()[0];
        assert_eq!(s.charge, 1);
        assert!((s.x - x0).abs() < 1e-3, "x = {}", s.x);
        assert!((s.y - y0).abs() < 1e-3, "y = {}", s.y);
    }

    #[test]
    fn central_triple_splitting() {
        // IG+_{5,3,2}: exactly three +1 vortices on a horizontal line inside
        // the unit-waist disk.
        let field = render(5, 3, 2.0, ModeKind::Plus);
        let scan = scan(&field);
        let central: Vec<_> = scan
            .singularities()
            .iter()
            .filter(|s| s.x * s.x + s.y * s.y < 1.0)
            .collect();
        assert_eq!(central.len(), 3, "central vortices: {central:?}");
        for s in &central {
            assert_eq!(s.charge, 1);
            assert!(s.y.abs() < 0.05, "off-axis: {s:?}");
        }
        assert_eq!(net_charge(scan.singularities(), 1.0), 3);
    }

    #[test]
    fn conjugate_mode_flips_charges() {
        let field = render(5, 3, 2.0, ModeKind::Minus);
        let scan = scan(&field);
        assert_eq!(net_charge(scan.singularities(), 1.0), -3);
    }

    #[test]
    fn conjugation_antisymmetry() {
        let field = render(5, 3, 2.0, ModeKind::Plus);
        let a = scan(&field);
        let b = scan(&field.conjugated());
        assert_eq!(a.singularities().len(), b.singularities().len());
        for (sa, sb) in a.singularities().iter().zip(b.singularities()) {
            assert!((sa.x - sb.x).abs() < 1e-9);
            assert!((sa.y - sb.y).abs() < 1e-9);
            assert_eq!(sa.charge, -sb.charge);
        }
    }

    #[test]
    fn outer_ring_pairs_at_high_ellipticity() {
        // IG+_{5,3,5}: beyond the central three (the nearest to the origin,
        // on the horizontal line) extra vortices appear, created in ± pairs,
        // so their net charge vanishes and the global net stays +3.
        let field = render(5, 3, 5.0, ModeKind::Plus);
        let scan = scan(&field);
        let all = scan.singularities();
        assert!(all.len() > 3, "expected extra singularities: {all:?}");
        for s in &all[..3] {
            assert_eq!(s.charge, 1);
            assert!(s.y.abs() < 0.05);
        }
        let extra = &all[3..];
        assert!(extra.iter().any(|s| s.charge > 0));
        assert!(extra.iter().any(|s| s.charge < 0));
        assert_eq!(extra.iter().map(|s| s.charge).sum::<i32>(), 0);
        assert_eq!(net_charge(all, field.grid().half_extent() * 2.0), 3);
    }

    #[test]
    fn coincident_charge_reported_once() {
        // at ε = 0 the LG limit carries a single charge-m vortex at the origin
        for (p, m, want) in [(2, 2, 2), (3, 3, 3)] {
            let field = render(p, m, 0.0, ModeKind::Plus);
            let scan = scan(&field);
            let central: Vec<_> = scan
                .singularities()
                .iter()
                .filter(|s| s.x * s.x + s.y * s.y < 0.25)
                .collect();
            assert_eq!(central.len(), 1, "p={p}: {:?}", scan.singularities());
            assert_eq!(central[0].charge, want);
            assert!(central[0].x.hypot(central[0].y) < 0.02);
        }
    }

    #[test]
    fn net_charge_of_empty_is_zero() {
        assert_eq!(net_charge(&[], 1.0), 0);
    }

    #[test]
    fn undersampled_field_warns() {
        // phase ramp of ~2.4 rad per sample: every plaquette is marginal
        let grid = SamplingGrid::new(2.0, 64).unwrap();
        let n = grid.samples();
        let mut values = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                let _ = iy;
                values.push(Complex64::cis(38.0 * grid.coord(ix)));
            }
        }
        let field = ComplexField::from_values(grid, values).unwrap();
        let scan = find_singularities(&field, 1e-3);
        assert!(scan.resolution_warning());
        assert!(scan.singularities().is_empty());
    }

    #[test]
    fn positions_stable_under_grid_refinement() {
        let spec = ModeSpec::new(5, 3, 2.0, ModeKind::Plus).unwrap();
        let mode = Mode::new(spec, BeamGeometry::unit_waist(2.0).unwrap()).unwrap();
        let coarse_grid = SamplingGrid::default_for_order(5, 1.0);
        let coarse = scan(&mode.render(&coarse_grid, true));
        let fine = scan(&mode.render(&coarse_grid.doubled(), true));
        let cell = coarse_grid.spacing();
        let central = |s: &VortexScan| -> Vec<Singularity> {
            let mut v: Vec<Singularity> = s
                .singularities()
                .iter()
                .copied()
                .filter(|s| s.x * s.x + s.y * s.y < 1.0)
                .collect();
            v.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            v
        };
        let a = central(&coarse);
        let b = central(&fine);
        assert_eq!(a.len(), b.len());
        for (sa, sb) in a.iter().zip(&b) {
            assert!((sa.x - sb.x).abs() < cell);
            assert!((sa.y - sb.y).abs() < cell);
        }
    }
}
