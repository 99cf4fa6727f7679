//! `incelab` command line: renders Ince-Gauss modes and their singularity
//! maps, scans ellipticity overlaps, and evaluates the two-photon
//! entanglement diagnostics. All tables are CSV with a header line; angles
//! are degrees at this boundary and radians inside the library.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 I/O failure,
//! 4 non-convergence, 5 malformed state file, 6 bound violation.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use incelab::error::Error;
use incelab::modefield::{BeamGeometry, Mode, ModeKind, ModeSpec, SamplingGrid};
use incelab::overlap::overlap_curve;
use incelab::qstate::{
    classify_dimension, f_rho, fringe_scan, g_subspace, poisson_counts, sample_schmidt2,
    sample_separable, steering_s, subspace_reduce, witness_w, BipartiteState,
};
use incelab::vortex::{default_amp_threshold, find_singularities};

const DEG: f64 = PI / 180.0;

#[derive(Parser)]
#[command(name = "incelab", version, about = "Ince-Gauss mode and entanglement toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Even,
    Odd,
    Plus,
    Minus,
    Bloch,
}

#[derive(Args)]
struct ModeArgs {
    /// Mode order p
    #[arg(long)]
    p: u32,
    /// Mode degree m
    #[arg(long)]
    m: u32,
    /// Ellipticity ε
    #[arg(long)]
    eps: f64,
    /// Mode kind
    #[arg(long, value_enum, default_value = "plus")]
    kind: KindArg,
    /// Bloch weight a in [0, 1] (kind = bloch only)
    #[arg(long)]
    a: Option<f64>,
    /// Bloch phase φ in degrees, [0, 180) (kind = bloch only)
    #[arg(long)]
    phi: Option<f64>,
}

#[derive(Args)]
struct GridArgs {
    /// Samples per axis (default 512)
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,
    /// Grid half-extent in waist units (default (sqrt(p)+3)·ω0)
    #[arg(long = "grid-l")]
    grid_l: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Render a mode to <out>_intensity.pgm, <out>_phase.pgm, <out>_field.csv
    Render {
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Output path prefix
        #[arg(long)]
        out: PathBuf,
    },
    /// Locate phase singularities; writes a CSV of (x, y, charge)
    Singularities {
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Ellipticity-overlap curve |⟨IG(eps_ref)|IG(eps)⟩|²; writes CSV
    Overlap {
        /// Mode order p
        #[arg(long)]
        p: u32,
        /// Mode degree m
        #[arg(long)]
        m: u32,
        /// Reference ellipticity
        #[arg(long = "eps-ref")]
        eps_ref: f64,
        /// Scan start
        #[arg(long = "eps-min")]
        eps_min: f64,
        /// Scan end
        #[arg(long = "eps-max")]
        eps_max: f64,
        /// Number of samples across the scan
        #[arg(long)]
        steps: usize,
        /// Mode kind
        #[arg(long, value_enum, default_value = "plus")]
        kind: KindArg,
        #[command(flatten)]
        grid: GridArgs,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Ideal two-photon coincidence fringes, one column per signal setting
    Fringes {
        /// Mode order p (labels the helical qubit pair)
        #[arg(long)]
        p: u32,
        /// Mode degree m
        #[arg(long)]
        m: u32,
        /// Ellipticity ε
        #[arg(long)]
        eps: f64,
        /// Signal settings in degrees, comma separated (e.g. 22.5,67.5)
        #[arg(long, value_delimiter = ',', required = true)]
        settings: Vec<f64>,
        /// Idler phase step in degrees
        #[arg(long)]
        step: f64,
        /// Total pair budget for Poisson counts (omit for ideal only)
        #[arg(long)]
        pairs: Option<u64>,
        /// RNG seed for the Poisson draws
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// 2-qubit entanglement witness W and steering value S
    Witness {
        /// Density-matrix CSV file (defaults to the ideal Bell state)
        #[arg(long = "state-file", conflicts_with = "ideal")]
        state_file: Option<PathBuf>,
        /// Use the ideal |ψ₊⟩ state
        #[arg(long)]
        ideal: bool,
        /// Isotropic-noise visibility v applied to the state
        #[arg(long)]
        werner: Option<f64>,
    },
    /// 3-dimensional correlation function f(ρ) with its g values and weights
    Dimwitness {
        /// Density-matrix CSV file (defaults to the ideal two-qutrit state)
        #[arg(long = "state-file", conflicts_with = "ideal")]
        state_file: Option<PathBuf>,
        /// Use the ideal maximally entangled two-qutrit state
        #[arg(long)]
        ideal: bool,
        /// Isotropic-noise visibility v applied to the state
        #[arg(long)]
        werner: Option<f64>,
    },
    /// Monte-Carlo check of the f(ρ) bounds on random states
    Boundscheck {
        /// Number of samples per family
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    if let Ok(v) = std::env::var("INCELAB_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 3,
        Error::NonConvergence { .. } => 4,
        Error::StateFile(_) => 5,
        _ => 2,
    }
}

fn mode_kind(args: &ModeArgs) -> Result<ModeKind, Error> {
    Ok(match args.kind {
        KindArg::Even => ModeKind::Even,
        KindArg::Odd => ModeKind::Odd,
        KindArg::Plus => ModeKind::Plus,
        KindArg::Minus => ModeKind::Minus,
        KindArg::Bloch => {
            let a = args.a.ok_or(Error::ParameterRange {
                name: "a",
                value: f64::NAN,
                range: "required for kind=bloch",
            })?;
            let phi_deg = args.phi.ok_or(Error::ParameterRange {
                name: "phi",
                value: f64::NAN,
                range: "required for kind=bloch",
            })?;
            ModeKind::Bloch {
                a,
                phi: phi_deg * DEG,
            }
        }
    })
}

fn sampling_grid(p: u32, grid: &GridArgs) -> Result<SamplingGrid, Error> {
    let default = SamplingGrid::default_for_order(p, 1.0);
    SamplingGrid::new(
        grid.grid_l.unwrap_or(default.half_extent()),
        grid.grid_n.unwrap_or(default.samples()),
    )
}

fn build_mode(args: &ModeArgs) -> Result<Mode, Error> {
    let kind = mode_kind(args)?;
    let spec = ModeSpec::new(args.p, args.m, args.eps, kind)?;
    Mode::new(spec, BeamGeometry::unit_waist(args.eps)?)
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Render { mode, grid, out } => {
            let m = build_mode(&mode)?;
            let g = sampling_grid(mode.p, &grid)?;
            let field = m.render(&g, true);
            let stem = out.to_string_lossy();
            let intensity = PathBuf::from(format!("{stem}_intensity.pgm"));
            let phase = PathBuf::from(format!("{stem}_phase.pgm"));
            let csv = PathBuf::from(format!("{stem}_field.csv"));
            field.write_intensity_pgm(create(&intensity)?)?;
            field.write_phase_pgm(create(&phase)?)?;
            field.write_csv(create(&csv)?)?;
            println!("wrote {}", intensity.display());
            println!("wrote {}", phase.display());
            println!("wrote {}", csv.display());
            Ok(0)
        }
        Command::Singularities { mode, grid, out } => {
            let m = build_mode(&mode)?;
            let g = sampling_grid(mode.p, &grid)?;
            let field = m.render(&g, true);
            let scan = find_singularities(&field, default_amp_threshold(&field));
            if scan.resolution_warning() {
                eprintln!(
                    "warning: {:.1}% of plaquettes have phase steps above pi/2; \
                     increase --grid-n",
                    100.0 * scan.undersampled_fraction()
                );
            }
            scan.write_csv(create(&out)?)?;
            println!(
                "wrote {} ({} singularities)",
                out.display(),
                scan.singularities().len()
            );
            Ok(0)
        }
        Command::Overlap {
            p,
            m,
            eps_ref,
            eps_min,
            eps_max,
            steps,
            kind,
            grid,
            out,
        } => {
            let kind = match kind {
                KindArg::Even => ModeKind::Even,
                KindArg::Odd => ModeKind::Odd,
                KindArg::Plus => ModeKind::Plus,
                KindArg::Minus => ModeKind::Minus,
                KindArg::Bloch => {
                    return Err(Error::ParameterRange {
                        name: "kind",
                        value: f64::NAN,
                        range: "even|odd|plus|minus for overlap scans",
                    })
                }
            };
            let g = sampling_grid(p, &grid)?;
            let curve = overlap_curve(p, m, kind, eps_ref, eps_min, eps_max, steps, 1.0, &g)?;
            curve.write_csv(create(&out)?)?;
            println!("wrote {} ({} samples)", out.display(), steps);
            Ok(0)
        }
        Command::Fringes {
            p,
            m,
            eps,
            settings,
            step,
            pairs,
            seed,
            out,
        } => {
            // the mode labels must denote a valid helical qubit pair
            ModeSpec::new(p, m, eps, ModeKind::Plus)?;
            if settings.is_empty() {
                return Err(Error::ParameterRange {
                    name: "settings",
                    value: 0.0,
                    range: "at least one setting",
                });
            }
            let state = BipartiteState::bell_psi_plus();
            let mut columns: Vec<Vec<(f64, f64)>> = Vec::new();
            for &s in &settings {
                columns.push(fringe_scan(&state, s * DEG, 0.0, 180.0 * DEG, step * DEG)?);
            }
            let rows = columns[0].len();
            let counts: Option<Vec<Vec<u64>>> = pairs.map(|total| {
                let flat: Vec<f64> = columns
                    .iter()
                    .flat_map(|col| col.iter().map(|(_, prob)| *prob))
                    .collect();
                let drawn = poisson_counts(&flat, total, seed);
                drawn.chunks(rows).map(|c| c.to_vec()).collect()
            });
            let mut w = create(&out)?;
            let mut header = String::from("phi2_deg");
            for &s in &settings {
                header.push_str(&format!(",prob_{s}"));
                if counts.is_some() {
                    header.push_str(&format!(",counts_{s}"));
                }
            }
            writeln!(w, "{header}")?;
            for row in 0..rows {
                let mut line = format!("{}", row as f64 * step);
                for (j, col) in columns.iter().enumerate() {
                    line.push_str(&format!(",{}", col[row].1));
                    if let Some(counts) = &counts {
                        line.push_str(&format!(",{}", counts[j][row]));
                    }
                }
                writeln!(w, "{line}")?;
            }
            println!(
                "wrote {} ({} rows x {} settings)",
                out.display(),
                rows,
                settings.len()
            );
            Ok(0)
        }
        Command::Witness {
            state_file,
            ideal: _,
            werner,
        } => {
            let mut state = match &state_file {
                Some(path) => BipartiteState::read_csv(BufReader::new(File::open(path)?))?,
                None => BipartiteState::bell_psi_plus(),
            };
            if let Some(v) = werner {
                state = state.werner_mix(v)?;
            }
            let w = witness_w(&state)?;
            let s = steering_s(&state)?;
            println!("W = {w:.6}");
            println!("S = {s:.6}");
            println!(
                "entanglement (W < 0): {}",
                if w < 0.0 { "detected" } else { "not detected" }
            );
            println!(
                "steering (S > 1): {}",
                if s > 1.0 { "detected" } else { "not detected" }
            );
            Ok(0)
        }
        Command::Dimwitness {
            state_file,
            ideal: _,
            werner,
        } => {
            let mut state = match &state_file {
                Some(path) => BipartiteState::read_csv(BufReader::new(File::open(path)?))?,
                None => BipartiteState::ideal_qutrit(),
            };
            if let Some(v) = werner {
                state = state.werner_mix(v)?;
            }
            let mut f = 0.0;
            for (k, l) in [(0, 1), (0, 2), (1, 2)] {
                let red = subspace_reduce(&state, k, l)?;
                let g = g_subspace(&red);
                println!("g(rho^{k}{l}) = {g:.6}   N_{k}{l} = {:.6}", red.weight());
                f += g;
            }
            println!("f(rho) = {f:.6}");
            println!("classification: {}", classify_dimension(f));
            Ok(0)
        }
        Command::Boundscheck { samples, seed } => {
            let mut violations = 0u64;
            let mut skipped = 0u64;
            let mut max_sep = f64::NEG_INFINITY;
            let mut max_s2 = f64::NEG_INFINITY;
            for i in 0..samples {
                match f_rho(&sample_separable(seed.wrapping_add(i))) {
                    Ok(f) => {
                        max_sep = max_sep.max(f);
                        if f > 3.0 + 1e-7 {
                            violations += 1;
                        }
                    }
                    Err(Error::ZeroWeight { .. }) => skipped += 1,
                    Err(e) => return Err(e),
                }
                match f_rho(&sample_schmidt2(seed.wrapping_add(i))) {
                    Ok(f) => {
                        max_s2 = max_s2.max(f);
                        if f > 6.0 + 1e-7 {
                            violations += 1;
                        }
                    }
                    Err(Error::ZeroWeight { .. }) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            println!("separable samples: {samples}, max f = {max_sep:.9} (bound 3)");
            println!("schmidt-rank-2 samples: {samples}, max f = {max_s2:.9} (bound 6)");
            println!("skipped (unpopulated subspace): {skipped}");
            println!("violations beyond 1e-7: {violations}");
            Ok(if violations > 0 { 6 } else { 0 })
        }
    }
}
