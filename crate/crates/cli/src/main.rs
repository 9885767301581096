//! Command-line surface for the stategeom library.
//!
//! Input states are JSON: either a density-matrix object
//! `{ "n": N, "entries": [[re, im], ...] }` (row-major) or a bare spectrum
//! array `[μ1, μ2, ...]`; commands that accept both detect the shape.
//! Numeric JSON output carries 12 significant digits, CSV carries 6.
//!
//! Exit codes: 0 success, 2 usage error, 3 invalid state, 4 I/O failure.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stategeom::{
    build_basis, casimirs_from_spectrum, casimirs_from_traces, chamber_representative, classify,
    coherence_distance, count_strata, decode, encode, entropy, entropy_surface,
    isentropic_contours, line_entropy_profile, partitions, random_density_matrix, special_points,
    spectrum_of, CasimirSet, CoherenceVector, DensityMatrix, Error, Spectrum, StratumInfo,
    Tolerances,
};

#[derive(Parser)]
#[command(
    name = "stategeom",
    version,
    about = "Geometry of N-level density states: bases, coherence vectors, strata, invariants, entropy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format where both make sense (tables and basis are JSON-only)
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Positivity / state-validity tolerance override
    #[arg(long = "tol-pos", global = true)]
    tol_pos: Option<f64>,

    /// Degeneracy clustering tolerance override
    #[arg(long = "tol-deg", global = true)]
    tol_deg: Option<f64>,

    /// Unit for entropy values in output (and for --level input)
    #[arg(long = "log-base", global = true, value_enum, default_value_t = LogBase::Nats)]
    log_base: LogBase,

    /// Seed for the sample subcommand
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum LogBase {
    Nats,
    Bits,
}

impl LogBase {
    fn convert_nats(self, eta: f64) -> f64 {
        match self {
            LogBase::Nats => eta,
            LogBase::Bits => eta / std::f64::consts::LN_2,
        }
    }

    fn to_nats(self, eta: f64) -> f64 {
        match self {
            LogBase::Nats => eta,
            LogBase::Bits => eta * std::f64::consts::LN_2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            LogBase::Nats => "nats",
            LogBase::Bits => "bits",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the orthonormal traceless basis for N levels as JSON
    Basis {
        #[arg(long)]
        n: usize,
    },
    /// Density-matrix JSON -> coherence-vector JSON
    Encode {
        /// Input file; stdin when omitted or "-"
        input: Option<PathBuf>,
    },
    /// Coherence-vector JSON -> density-matrix JSON (exit 3 outside the state body)
    Decode { input: Option<PathBuf> },
    /// Spectrum, stratum, invariants and entropy of a state
    Classify { input: Option<PathBuf> },
    /// Invariants I1..IN of a state or bare spectrum
    Casimirs { input: Option<PathBuf> },
    /// Entropy of a state or bare spectrum
    Entropy { input: Option<PathBuf> },
    /// Entropy samples over the three-level chamber grid
    Surface {
        #[arg(long)]
        res: usize,
    },
    /// Constant-entropy lines over the three-level chamber
    Contour {
        #[arg(long)]
        level: f64,
        #[arg(long)]
        res: usize,
    },
    /// Entropy along the segment between two spectra (inline JSON arrays)
    Profile {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Special points, pairwise distances and the stratum census for N levels
    Tables {
        #[arg(long)]
        n: usize,
    },
    /// Random density matrices (flat spectrum measure x Haar), seeded
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn state(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

fn map_core(err: Error) -> CliError {
    match err {
        Error::NotHermitian(_)
        | Error::TraceNotOne(_)
        | Error::NotPositive(_)
        | Error::NotUnitary(_)
        | Error::InvalidSpectrum(_)
        | Error::OutOfSimplex(_) => CliError::state(err.to_string()),
        _ => CliError::usage(err.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut tol = Tolerances::default();
    if let Some(pos) = cli.tol_pos {
        if !(pos.is_finite() && pos > 0.0) {
            return Err(CliError::usage("--tol-pos must be a positive number"));
        }
        tol.positivity = pos;
    }
    if let Some(deg) = cli.tol_deg {
        if !(deg.is_finite() && deg > 0.0) {
            return Err(CliError::usage("--tol-deg must be a positive number"));
        }
        tol.degeneracy = deg;
    }

    match &cli.command {
        Command::Basis { n } => cmd_basis(cli, *n),
        Command::Encode { input } => cmd_encode(cli, &tol, input.as_deref()),
        Command::Decode { input } => cmd_decode(cli, &tol, input.as_deref()),
        Command::Classify { input } => cmd_classify(cli, &tol, input.as_deref()),
        Command::Casimirs { input } => cmd_casimirs(cli, &tol, input.as_deref()),
        Command::Entropy { input } => cmd_entropy(cli, &tol, input.as_deref()),
        Command::Surface { res } => cmd_surface(cli, *res),
        Command::Contour { level, res } => cmd_contour(cli, *level, *res),
        Command::Profile { from, to, samples } => cmd_profile(cli, &tol, from, to, *samples),
        Command::Tables { n } => cmd_tables(cli, *n),
        Command::Sample { n, count } => cmd_sample(cli, *n, *count),
    }
}

// ---------------------------------------------------------------------------
// input / output plumbing

fn read_input(path: Option<&std::path::Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| CliError::io(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::io(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(format!("cannot write stdout: {e}"))),
    }
}

/// Round every float in a JSON tree to 12 significant digits; integers are
/// left untouched.
fn round_json(value: &mut Value) {
    match value {
        Value::Number(num) => {
            if num.is_f64() {
                if let Some(f) = num.as_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f, 12)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

fn round_sig(v: f64, sig: i32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let mag = v.abs().log10().floor() as i32;
    let factor = 10f64.powi(sig - 1 - mag);
    (v * factor).round() / factor
}

fn emit_json(cli: &Cli, value: Value) -> Result<(), CliError> {
    let mut value = value;
    round_json(&mut value);
    let text = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::io(format!("serialization failed: {e}")))?;
    emit(cli, &format!("{text}\n"))
}

fn to_value<T: serde::Serialize>(item: &T) -> Result<Value, CliError> {
    serde_json::to_value(item).map_err(|e| CliError::io(format!("serialization failed: {e}")))
}

enum StateInput {
    Matrix(DensityMatrix),
    Bare(Spectrum),
}

/// Accepts a density-matrix object or a bare spectrum array.
fn parse_state(text: &str, tol: &Tolerances) -> Result<StateInput, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid JSON: {e}")))?;
    if value.is_array() {
        let values: Vec<f64> = serde_json::from_value(value)
            .map_err(|e| CliError::usage(format!("invalid spectrum array: {e}")))?;
        let s = Spectrum::new(values, tol).map_err(map_core)?;
        Ok(StateInput::Bare(s))
    } else if value.is_object() && value.get("entries").is_some() {
        let rho = DensityMatrix::from_json_value(&value, tol).map_err(map_core)?;
        Ok(StateInput::Matrix(rho))
    } else {
        Err(CliError::usage(
            "expected a density-matrix object with \"entries\" or a bare spectrum array",
        ))
    }
}

// ---------------------------------------------------------------------------
// commands

fn cmd_basis(cli: &Cli, n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::usage(format!("--n must be at least 2, got {n}")));
    }
    let basis = build_basis(n).map_err(map_core)?;
    emit_json(cli, to_value(&basis)?)
}

fn cmd_encode(
    cli: &Cli,
    tol: &Tolerances,
    input: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let text = read_input(input)?;
    let rho = DensityMatrix::from_json(&text, tol).map_err(map_core)?;
    let basis = build_basis(rho.n_levels()).map_err(map_core)?;
    let vector = encode(&rho, &basis).map_err(map_core)?;
    emit_json(cli, to_value(&vector)?)
}

fn cmd_decode(
    cli: &Cli,
    tol: &Tolerances,
    input: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let text = read_input(input)?;
    let vector: CoherenceVector = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("invalid coherence-vector JSON: {e}")))?;
    let basis = build_basis(vector.n_levels()).map_err(map_core)?;
    let rho = decode(&vector, &basis, tol).map_err(map_core)?;
    emit_json(cli, to_value(&rho)?)
}

fn state_summary(
    tol: &Tolerances,
    input: Option<&std::path::Path>,
) -> Result<(usize, Spectrum, CasimirSet), CliError> {
    let text = read_input(input)?;
    match parse_state(&text, tol)? {
        StateInput::Matrix(rho) => {
            let spectrum = spectrum_of(&rho, tol);
            let casimirs = casimirs_from_traces(&rho);
            Ok((rho.n_levels(), spectrum, casimirs))
        }
        StateInput::Bare(s) => {
            let casimirs = casimirs_from_spectrum(&s);
            Ok((s.n_levels(), chamber_representative(&s), casimirs))
        }
    }
}

fn cmd_classify(
    cli: &Cli,
    tol: &Tolerances,
    input: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let (n, spectrum, casimirs) = state_summary(tol, input)?;
    let stratum: StratumInfo = classify(&spectrum, tol.degeneracy);
    let eta = cli.log_base.convert_nats(entropy(&spectrum));
    let report = json!({
        "n": n,
        "spectrum": spectrum.values(),
        "stratum": to_value(&stratum)?,
        "casimirs": to_value(&casimirs)?,
        "entropy": eta,
        "log_base": cli.log_base.name(),
    });
    emit_json(cli, report)
}

fn cmd_casimirs(
    cli: &Cli,
    tol: &Tolerances,
    input: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let (_, _, casimirs) = state_summary(tol, input)?;
    emit_json(cli, to_value(&casimirs)?)
}

fn cmd_entropy(
    cli: &Cli,
    tol: &Tolerances,
    input: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let (n, spectrum, _) = state_summary(tol, input)?;
    let eta = cli.log_base.convert_nats(entropy(&spectrum));
    emit_json(
        cli,
        json!({ "n": n, "eta": eta, "base": cli.log_base.name() }),
    )
}

fn cmd_surface(cli: &Cli, res: usize) -> Result<(), CliError> {
    let rows = entropy_surface(3, res).map_err(map_core)?;
    match cli.format {
        OutputFormat::Csv => {
            let mut text = String::from("x,y,z,eta\n");
            for row in &rows {
                let eta = cli.log_base.convert_nats(row.eta);
                text.push_str(&format!(
                    "{:.6},{:.6},{:.6},{:.6}\n",
                    row.x, row.y, row.z, eta
                ));
            }
            emit(cli, &text)
        }
        OutputFormat::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|row| json!([row.x, row.y, row.z, cli.log_base.convert_nats(row.eta)]))
                .collect();
            emit_json(cli, Value::Array(items))
        }
    }
}

fn cmd_contour(cli: &Cli, level: f64, res: usize) -> Result<(), CliError> {
    let level_nats = cli.log_base.to_nats(level);
    let contours = isentropic_contours(3, level_nats, res).map_err(map_core)?;

    let max_dev = cli.log_base.convert_nats(contours.max_level_deviation());
    if contours.polylines.is_empty() {
        eprintln!(
            "contour: level {level} {} is outside the attainable range; empty set",
            cli.log_base.name()
        );
    }
    eprintln!(
        "contour: {} points, max |eta - level| = {:.3e} {}",
        contours.point_count(),
        max_dev,
        cli.log_base.name()
    );

    match cli.format {
        OutputFormat::Csv => {
            let mut text = String::from("polyline,x,y,z\n");
            for (id, polyline) in contours.polylines.iter().enumerate() {
                for p in polyline {
                    text.push_str(&format!("{id},{:.6},{:.6},{:.6}\n", p[0], p[1], p[2]));
                }
            }
            emit(cli, &text)
        }
        OutputFormat::Json => emit_json(
            cli,
            json!({ "level": level, "polylines": contours.polylines }),
        ),
    }
}

fn cmd_profile(
    cli: &Cli,
    tol: &Tolerances,
    from: &str,
    to: &str,
    samples: usize,
) -> Result<(), CliError> {
    let parse = |text: &str| -> Result<Spectrum, CliError> {
        let values: Vec<f64> = serde_json::from_str(text)
            .map_err(|e| CliError::usage(format!("invalid spectrum array: {e}")))?;
        Spectrum::new(values, tol).map_err(map_core)
    };
    let s1 = parse(from)?;
    let s2 = parse(to)?;
    let profile = line_entropy_profile(&s1, &s2, samples).map_err(map_core)?;
    match cli.format {
        OutputFormat::Csv => {
            let mut text = String::from("t,eta\n");
            for (t, eta) in &profile {
                text.push_str(&format!(
                    "{:.6},{:.6}\n",
                    t,
                    cli.log_base.convert_nats(*eta)
                ));
            }
            emit(cli, &text)
        }
        OutputFormat::Json => {
            let items: Vec<Value> = profile
                .iter()
                .map(|(t, eta)| json!([t, cli.log_base.convert_nats(*eta)]))
                .collect();
            emit_json(cli, Value::Array(items))
        }
    }
}

fn cmd_tables(cli: &Cli, n: usize) -> Result<(), CliError> {
    if !(2..=8).contains(&n) {
        return Err(CliError::usage(format!("--n must lie in 2..=8, got {n}")));
    }
    let basis = build_basis(n).map_err(map_core)?;
    let points = special_points(n).map_err(map_core)?;

    let mut point_rows = Vec::new();
    for (name, spectrum) in &points {
        point_rows.push(json!({
            "name": name,
            "spectrum": spectrum.values(),
            "entropy": cli.log_base.convert_nats(entropy(spectrum)),
            "casimirs": to_value(&casimirs_from_spectrum(spectrum))?,
        }));
    }

    let mut distance_rows = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let length =
                coherence_distance(&points[i].1, &points[j].1, &basis).map_err(map_core)?;
            distance_rows.push(json!({
                "from": points[i].0,
                "to": points[j].0,
                "length": length,
            }));
        }
    }

    let mut strata: Vec<StratumInfo> = partitions(n)
        .into_iter()
        .map(|parts| StratumInfo::from_partition(n, parts))
        .collect();
    strata.sort_by(|a, b| (a.orbit_dim, &a.partition).cmp(&(b.orbit_dim, &b.partition)));
    let strata_rows: Vec<Value> = strata.iter().map(to_value).collect::<Result<_, _>>()?;

    let report = json!({
        "n": n,
        "log_base": cli.log_base.name(),
        "special_points": point_rows,
        "distances": distance_rows,
        "strata": strata_rows,
        "strata_count": count_strata(n),
    });
    emit_json(cli, report)
}

fn cmd_sample(cli: &Cli, n: usize, count: usize) -> Result<(), CliError> {
    if count == 0 {
        return Err(CliError::usage("--count must be at least 1"));
    }
    if count == 1 {
        let rho = random_density_matrix(n, cli.seed).map_err(map_core)?;
        return emit_json(cli, to_value(&rho)?);
    }
    let mut items = Vec::with_capacity(count);
    for i in 0..count {
        let rho = random_density_matrix(n, cli.seed.wrapping_add(i as u64)).map_err(map_core)?;
        items.push(to_value(&rho)?);
    }
    emit_json(cli, Value::Array(items))
}
