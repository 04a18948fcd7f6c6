//! The `persr` command line. Exit codes: 0 on success, 1 on domain or
//! input errors, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use persr_core::algebra::{
    alternating_sums, f_from_h, h_vector_from_betti, hf_from_persistent_table, hilbert_numerator, HochsterOptions,
    Layout,
};
use persr_core::classify::{EvalConfig, FeatureConfig, Sample};
use persr_core::facet::{facet_barcode, multiplicities};
use persr_core::filtration::vietoris_rips;
use persr_core::metrics::{bottleneck, hausdorff, ExtendedPoint};
use persr_core::{CriticalValues, Filtration, PrimeField, RipsConfig, Scale, SimplicialComplex};
use serde_json::{json, Value};

use crate::config::{parse_config, splice, FlagKind};
use crate::error::{Error, Result};
use crate::json::{
    read_json, round, to_json, BarcodeFile, BettiFile, ComplexFile, CriticalValuesFile, CurveFile, DiagramFile,
    EvaluationRecord, FacetBarcodeFile, FiltrationFile, HfFile, ResultsFile,
};
use crate::svg::{barcode_svg, diagram_svg, step_curve_svg, Bar, Series};
use crate::tables::{betti_csv, distance_csv, read_manifest};
use crate::xyz::read_xyz;
use crate::parallel;

#[derive(Debug, Parser)]
#[command(name = "persr", version, about = "Persistent Stanley–Reisner invariants of filtered complexes")]
pub struct Cli {
    /// `key = value` file supplying defaults for any flag
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Characteristic of the coefficient field
    #[arg(long, default_value_t = 2, value_parser = parse_modulus)]
    pub modulus: u32,
    /// Decimal digits kept in numeric output and Rips distances
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(0..=15))]
    pub precision: u32,
    /// Worker threads for parallel stages (default: all cores)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Write the result to FILE instead of standard output
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn field(&self) -> PrimeField {
        PrimeField::new(self.modulus).expect("validated by the parser")
    }

    fn digits(&self) -> Option<u32> {
        Some(self.precision)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Diameter,
    Radius,
}

/// Vietoris–Rips settings for XYZ inputs.
#[derive(Debug, Clone, Args)]
pub struct RipsArgs {
    /// Keep only these element symbols (comma separated)
    #[arg(long, value_delimiter = ',')]
    pub elements: Vec<String>,
    /// Largest simplex dimension
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    /// Omit simplices with diameter above twice this radius
    #[arg(long)]
    pub max_radius: Option<f64>,
    #[arg(long, value_enum, default_value_t = ScaleArg::Diameter)]
    pub scale: ScaleArg,
}

impl RipsArgs {
    fn config(&self, run: &RunConfig) -> RipsConfig {
        RipsConfig {
            max_dim: self.max_dim,
            max_radius: self.max_radius.unwrap_or(f64::INFINITY),
            elements: (!self.elements.is_empty()).then(|| self.elements.clone()),
            scale: match self.scale {
                ScaleArg::Diameter => Scale::Diameter,
                ScaleArg::Radius => Scale::Radius,
            },
            precision: run.digits(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    /// Rows `j - i`, columns `i`
    Macaulay2,
    /// Rows `j`, columns `i`
    Internal,
}

impl From<LayoutArg> for Layout {
    fn from(l: LayoutArg) -> Layout {
        match l {
            LayoutArg::Macaulay2 => Layout::Macaulay2,
            LayoutArg::Internal => Layout::InternalDegree,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = LayoutArg::Macaulay2)]
    pub layout: LayoutArg,
    /// Only enumerate vertex subsets of size at most J
    #[arg(long, value_name = "J")]
    pub max_j: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vietoris–Rips filtration of an XYZ file, as filtration JSON
    Rips {
        input: PathBuf,
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Graded Betti table of a face-list complex via Hochster's formula
    BettiTable {
        input: PathBuf,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Persistent graded Betti table between two filtration values
    PersistentBetti {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_prime: f64,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// h- and f-vectors, static or persistent, optionally as step curves
    HfVectors {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        t_prime: Option<f64>,
        /// Emit one h/f pair per critical value
        #[arg(long)]
        curve: bool,
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Facet persistence barcode
    FacetBarcode {
        input: PathBuf,
        /// Keep zero-length bars
        #[arg(long)]
        keep_empty_bars: bool,
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Stanley–Reisner critical values
    CriticalValues {
        input: PathBuf,
        /// Keep values in LO,HI
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<(f64, f64)>,
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Facet persistence diagram with multiplicities
    Diagram {
        input: PathBuf,
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Bottleneck distance between two diagrams or barcodes
    Bottleneck {
        first: PathBuf,
        second: PathBuf,
        /// Only use bars of this dimension
        #[arg(long, allow_negative_numbers = true)]
        dim: Option<i32>,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Hausdorff distance between two critical-value sets
    Hausdorff {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "0,7")]
        range: (f64, f64),
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// k-NN classification of the samples listed in an `id,label,path` manifest
    Classify {
        manifest: PathBuf,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// One evaluation per fraction (comma separated)
        #[arg(long, value_delimiter = ',', default_value = "0.2", value_parser = parse_fraction)]
        test_fraction: Vec<f64>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        repetitions: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resampling attempts when a split leaves a class without training samples
        #[arg(long, default_value_t = 100)]
        max_retries: usize,
        /// Critical values outside LO,HI are discarded
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "0,7")]
        range: (f64, f64),
        /// Also write the distance matrix as CSV
        #[arg(long, value_name = "FILE")]
        distances: Option<PathBuf>,
        #[command(flatten)]
        rips: RipsArgs,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Render barcode, diagram or curve JSON as SVG
    Plot {
        input: PathBuf,
        #[arg(long)]
        title: Option<String>,
        #[command(flatten)]
        run: RunConfig,
    },
}

fn parse_modulus(s: &str) -> std::result::Result<u32, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    PrimeField::new(p).map(|f| f.modulus()).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if !lo.is_finite() || hi.is_nan() || lo >= hi {
        return Err(format!("range {lo},{hi} is empty or degenerate"));
    }
    Ok((lo, hi))
}

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let f: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if f > 0.0 && f < 1.0 {
        Ok(f)
    } else {
        Err(format!("{f} is not in (0, 1)"))
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match apply_config(&args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Expands `--config FILE` into flags placed before the user's own.
fn apply_config(args: &[OsString]) -> Result<Vec<OsString>> {
    let mut path = None;
    let mut skip = vec![false; args.len()];
    for (i, a) in args.iter().enumerate().skip(1) {
        let a = a.to_string_lossy();
        if a == "--config" {
            path = args.get(i + 1).map(PathBuf::from);
            skip[i] = true;
            if i + 1 < args.len() {
                skip[i + 1] = true;
            }
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
            skip[i] = true;
        }
    }
    let Some(path) = path else {
        return Ok(args.to_vec());
    };
    let Some(sub) = (1..args.len()).find(|&i| !skip[i] && !args[i].to_string_lossy().starts_with('-')) else {
        return Ok(args.to_vec());
    };
    let cmd = Cli::command();
    let name = args[sub].to_string_lossy();
    let Some(subcommand) = cmd.find_subcommand(name.as_ref()) else {
        return Ok(args.to_vec());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let entries = parse_config(&text, &path)?;
    let lookup = |key: &str| {
        subcommand
            .get_arguments()
            .find(|a| a.get_long() == Some(key) && key != "config")
            .map(|a| {
                if a.get_action().takes_values() {
                    FlagKind::Value
                } else {
                    FlagKind::Switch
                }
            })
    };
    let known = |key: &str| {
        cmd.get_subcommands()
            .any(|s| s.get_arguments().any(|a| a.get_long() == Some(key)))
    };
    let mut given: Vec<String> = Vec::new();
    for (i, a) in args.iter().enumerate().skip(sub + 1) {
        if skip[i] {
            continue;
        }
        let a = a.to_string_lossy();
        if let Some(long) = a.strip_prefix("--") {
            given.push(long.split('=').next().unwrap_or_default().to_string());
        } else if let Some(short) = a.strip_prefix('-').and_then(|s| s.chars().next()) {
            if let Some(long) = subcommand
                .get_arguments()
                .find(|x| x.get_short() == Some(short))
                .and_then(|x| x.get_long())
            {
                given.push(long.to_string());
            }
        }
    }
    splice(args, sub, &entries, &path, lookup, known, |k| given.iter().any(|g| g == k))
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    let run = run_config(&command).clone();
    let output = match run.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| dispatch(command))?,
        None => dispatch(command)?,
    };
    match &run.output {
        Some(path) => std::fs::write(path, output).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(output.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn run_config(command: &Command) -> &RunConfig {
    match command {
        Command::Rips { run, .. }
        | Command::BettiTable { run, .. }
        | Command::PersistentBetti { run, .. }
        | Command::HfVectors { run, .. }
        | Command::FacetBarcode { run, .. }
        | Command::CriticalValues { run, .. }
        | Command::Diagram { run, .. }
        | Command::Bottleneck { run, .. }
        | Command::Hausdorff { run, .. }
        | Command::Classify { run, .. }
        | Command::Plot { run, .. } => run,
    }
}

fn is_xyz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("xyz"))
}

/// Filtration JSON, or the Vietoris–Rips filtration of an XYZ file.
fn load_filtration(path: &Path, rips: &RipsArgs, run: &RunConfig) -> Result<Filtration> {
    if is_xyz(path) {
        Ok(vietoris_rips(&read_xyz(path)?, &rips.config(run))?)
    } else {
        read_json::<FiltrationFile>(path)?.to_filtration()
    }
}

enum Input {
    Complex(SimplicialComplex),
    Filtration(Filtration),
}

fn load_input(path: &Path, rips: &RipsArgs, run: &RunConfig) -> Result<Input> {
    if is_xyz(path) {
        return load_filtration(path, rips, run).map(Input::Filtration);
    }
    let value: Value = read_json(path)?;
    if value.get("faces").is_some() {
        let file: ComplexFile = serde_json::from_value(value).map_err(|e| Error::parse(path, None, e.to_string()))?;
        Ok(Input::Complex(file.to_complex()?))
    } else if value.get("simplices").is_some() {
        let file: FiltrationFile =
            serde_json::from_value(value).map_err(|e| Error::parse(path, None, e.to_string()))?;
        Ok(Input::Filtration(file.to_filtration()?))
    } else {
        Err(Error::parse(path, None, "expected a face list (`faces`) or a filtration (`simplices`)"))
    }
}

fn table_output(file: BettiFile, grid: Vec<Vec<u64>>, args: &TableArgs) -> String {
    match args.format {
        Format::Json => to_json(&file),
        Format::Csv => crate::tables::grid_csv(&grid, args.layout.into()),
    }
}

fn dispatch(command: Command) -> Result<String> {
    match command {
        Command::Rips { input, rips, run } => {
            let f = vietoris_rips(&read_xyz(&input)?, &rips.config(&run))?;
            Ok(to_json(&FiltrationFile::from_filtration(&f, run.digits())))
        }
        Command::BettiTable { input, table, run } => {
            let complex = match load_input(&input, &RipsArgs::default(), &run)? {
                Input::Complex(c) => c,
                Input::Filtration(f) => f.complex().clone(),
            };
            let options = HochsterOptions { max_j: table.max_j };
            let betti = parallel::hochster_table(&complex, run.field(), options)?;
            Ok(match table.format {
                Format::Csv => betti_csv(&betti, table.layout.into()),
                Format::Json => to_json(&BettiFile::from_table(&betti)),
            })
        }
        Command::PersistentBetti {
            input,
            t,
            t_prime,
            table,
            rips,
            run,
        } => {
            let f = load_filtration(&input, &rips, &run)?;
            let options = HochsterOptions { max_j: table.max_j };
            let p = parallel::persistent_hochster_table(&f, t, t_prime, run.field(), options)?;
            let grid = p.table.grid(table.layout.into());
            Ok(table_output(BettiFile::from_persistent(&p, run.digits()), grid, &table))
        }
        Command::HfVectors {
            input,
            t,
            t_prime,
            curve,
            rips,
            run,
        } => hf_vectors(load_input(&input, &rips, &run)?, t, t_prime, curve, &run),
        Command::FacetBarcode {
            input,
            keep_empty_bars,
            rips,
            run,
        } => {
            let f = load_filtration(&input, &rips, &run)?;
            Ok(to_json(&FacetBarcodeFile::from_barcode(
                &facet_barcode(&f, keep_empty_bars),
                run.digits(),
            )))
        }
        Command::CriticalValues {
            input,
            range,
            rips,
            run,
        } => {
            let f = load_filtration(&input, &rips, &run)?;
            let mut values = f.critical_values(run.digits());
            if let Some((lo, hi)) = range {
                values = values.clipped(lo, hi);
            }
            Ok(to_json(&CriticalValuesFile::from_values(&values, run.digits())))
        }
        Command::Diagram { input, rips, run } => {
            let f = load_filtration(&input, &rips, &run)?;
            Ok(to_json(&DiagramFile::from_diagram(&multiplicities(&f), run.digits())))
        }
        Command::Bottleneck {
            first,
            second,
            dim,
            run,
        } => {
            let d = bottleneck(&load_points(&first, dim)?, &load_points(&second, dim)?);
            let d = d.is_finite().then(|| round(d, run.digits()));
            Ok(to_json(&json!({ "distance": d })))
        }
        Command::Hausdorff {
            first,
            second,
            range,
            rips,
            run,
        } => {
            let a = load_values(&first, range, &rips, &run)?;
            let b = load_values(&second, range, &rips, &run)?;
            let d = hausdorff(a.as_slice(), b.as_slice())?;
            Ok(to_json(&json!({ "distance": round(d, run.digits()) })))
        }
        Command::Classify {
            manifest,
            k,
            test_fraction,
            repetitions,
            seed,
            max_retries,
            range,
            distances,
            rips,
            run,
        } => {
            let entries = read_manifest(&manifest)?;
            let clouds = entries.iter().map(|e| read_xyz(&e.path)).collect::<Result<Vec<_>>>()?;
            let config = FeatureConfig {
                rips: rips.config(&run),
                range,
                precision: run.digits(),
            };
            let features = parallel::features(&clouds, &config)?;
            let samples = entries
                .iter()
                .zip(features)
                .map(|(e, f)| {
                    Sample::new(e.id.clone(), e.label.clone(), f).map_err(|err| {
                        Error::parse(&e.path, None, format!("sample {:?}: {err}", e.id))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let matrix = parallel::pairwise_distances(&samples)?;
            if let Some(path) = &distances {
                std::fs::write(path, distance_csv(&matrix, run.digits())).map_err(|e| Error::io(path, e))?;
            }
            let labels: Vec<String> = samples.iter().map(|s| s.label.clone()).collect();
            let ids: Vec<String> = samples.iter().map(|s| s.id.clone()).collect();
            let evaluations = test_fraction
                .iter()
                .map(|&f| {
                    let cfg = EvalConfig {
                        k,
                        test_fraction: f,
                        repetitions: repetitions as usize,
                        seed,
                        max_retries,
                    };
                    let e = parallel::evaluate(&matrix, &labels, &cfg)?;
                    Ok(EvaluationRecord::new(&e, &ids, k, seed, run.digits()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(to_json(&ResultsFile {
                samples: ids,
                evaluations,
            }))
        }
        Command::Plot { input, title, run: _ } => plot(&input, title),
    }
}

impl Default for RipsArgs {
    fn default() -> Self {
        RipsArgs {
            elements: Vec::new(),
            max_dim: 2,
            max_radius: None,
            scale: ScaleArg::Diameter,
        }
    }
}

fn hf_vectors(input: Input, t: Option<f64>, t_prime: Option<f64>, curve: bool, run: &RunConfig) -> Result<String> {
    let digits = run.digits();
    let f = match input {
        Input::Complex(c) => {
            if t.is_some() || t_prime.is_some() || curve {
                return Err(Error::Config("--t, --t-prime and --curve need a filtration input".into()));
            }
            return Ok(to_json(&static_hf(&c, run)?));
        }
        Input::Filtration(f) => f,
    };
    if curve {
        let alphas = f.critical_values(digits);
        let upper = t_prime.unwrap_or(f64::INFINITY);
        let pairs: Vec<(f64, f64)> = match t {
            // Fixed birth time, sweeping t'.
            Some(t) => std::iter::once(t)
                .chain(alphas.as_slice().iter().copied().filter(|&a| a > t))
                .filter(|&u| u <= upper)
                .map(|u| (t, u))
                .collect(),
            None => alphas.as_slice().iter().filter(|&&a| a <= upper).map(|&a| (a, a)).collect(),
        };
        let points = pairs
            .into_iter()
            .map(|(a, b)| persistent_hf(&f, a, b, run))
            .collect::<Result<Vec<_>>>()?;
        return Ok(to_json(&CurveFile { points }));
    }
    match (t, t_prime) {
        (None, None) => Ok(to_json(&static_hf(f.complex(), run)?)),
        (Some(a), b) => Ok(to_json(&persistent_hf(&f, a, b.unwrap_or(a), run)?)),
        (None, Some(_)) => Err(Error::Config("--t-prime needs --t".into())),
    }
}

fn static_hf(c: &SimplicialComplex, run: &RunConfig) -> Result<HfFile> {
    let table = parallel::hochster_table(c, run.field(), HochsterOptions::default())?;
    let (n, d) = (c.vertex_set().len(), c.krull_dim());
    let h = h_vector_from_betti(&table, n, d);
    let f = f_from_h(&h, d)?;
    let mut file = HfFile::new(&h, &f);
    file.hilbert_numerator = Some(hilbert_numerator(&table));
    Ok(file)
}

fn persistent_hf(f: &Filtration, t: f64, t_prime: f64, run: &RunConfig) -> Result<HfFile> {
    let table = parallel::persistent_hochster_table(f, t, t_prime, run.field(), HochsterOptions::default())?;
    let (h, fv) = hf_from_persistent_table(f, &table);
    let mut file = HfFile::new(&h, &fv);
    let mut q = alternating_sums(&table.table);
    while q.len() > 1 && q.last() == Some(&0) {
        q.pop();
    }
    file.hilbert_numerator = Some(q);
    file.t = Some(round(t, run.digits()));
    file.t_prime = Some(round(t_prime, run.digits()));
    Ok(file)
}

/// Diagram JSON, facet barcode JSON or barcode JSON as extended points.
fn load_points(path: &Path, dim: Option<i32>) -> Result<Vec<ExtendedPoint>> {
    let value: Value = read_json(path)?;
    let bad = |e: serde_json::Error| Error::parse(path, None, e.to_string());
    if value.get("points").is_some() {
        let d: DiagramFile = serde_json::from_value(value).map_err(bad)?;
        Ok(d.points
            .iter()
            .flat_map(|p| std::iter::repeat_n(ExtendedPoint::from_bar(p.birth, p.death), p.multiplicity as usize))
            .collect())
    } else if value.get("bars").is_some() {
        let b: FacetBarcodeFile = serde_json::from_value(value).map_err(bad)?;
        Ok(b.bars
            .iter()
            .filter(|r| dim.is_none_or(|d| r.dim as i32 == d))
            .map(|r| ExtendedPoint::from_bar(r.birth, r.death))
            .collect())
    } else if value.get("intervals").is_some() {
        let b: BarcodeFile = serde_json::from_value(value).map_err(bad)?;
        Ok(b.intervals
            .iter()
            .filter(|r| dim.is_none_or(|d| r.dim == d))
            .map(|r| ExtendedPoint::from_bar(r.birth, r.death))
            .collect())
    } else {
        Err(Error::parse(path, None, "expected `points`, `bars` or `intervals`"))
    }
}

/// Critical-value JSON, or features of an XYZ file.
fn load_values(path: &Path, range: (f64, f64), rips: &RipsArgs, run: &RunConfig) -> Result<CriticalValues> {
    if is_xyz(path) {
        let config = FeatureConfig {
            rips: rips.config(run),
            range,
            precision: run.digits(),
        };
        Ok(persr_core::classify::extract_features(&read_xyz(path)?, &config)?)
    } else {
        read_json::<CriticalValuesFile>(path)?.to_values()
    }
}

fn plot(path: &Path, title: Option<String>) -> Result<String> {
    let value: Value = read_json(path)?;
    let title = title.unwrap_or_else(|| path.file_stem().map_or(String::new(), |s| s.to_string_lossy().into_owned()));
    let bad = |e: serde_json::Error| Error::parse(path, None, e.to_string());
    if value.get("bars").is_some() {
        let b: FacetBarcodeFile = serde_json::from_value(value).map_err(bad)?;
        let bars: Vec<Bar> = b
            .bars
            .iter()
            .map(|r| Bar {
                dim: r.dim as i32,
                birth: r.birth,
                death: r.death,
            })
            .collect();
        Ok(barcode_svg(&bars, &title))
    } else if value.get("intervals").is_some() {
        let b: BarcodeFile = serde_json::from_value(value).map_err(bad)?;
        let bars: Vec<Bar> = b
            .intervals
            .iter()
            .map(|r| Bar {
                dim: r.dim,
                birth: r.birth,
                death: r.death,
            })
            .collect();
        Ok(barcode_svg(&bars, &title))
    } else if value.pointer("/points/0/h").is_some() {
        let c: CurveFile = serde_json::from_value(value).map_err(bad)?;
        Ok(step_curve_svg(&curve_series(&c), &title))
    } else if value.get("points").is_some() {
        let d: DiagramFile = serde_json::from_value(value).map_err(bad)?;
        let pts: Vec<(f64, Option<f64>, u64)> = d.points.iter().map(|p| (p.birth, p.death, p.multiplicity)).collect();
        Ok(diagram_svg(&pts, &title))
    } else {
        Err(Error::parse(path, None, "expected barcode, diagram or curve JSON"))
    }
}

/// Series `h_k` and `f_{k-1}` against `t'` (or `t`).
fn curve_series(c: &CurveFile) -> Vec<Series> {
    let x = |p: &HfFile| p.t_prime.or(p.t).unwrap_or(0.0);
    let width = |sel: fn(&HfFile) -> &Vec<i64>| c.points.iter().map(|p| sel(p).len()).max().unwrap_or(0);
    let mut out = Vec::new();
    for k in 0..width(|p| &p.h) {
        out.push(Series {
            name: format!("h{k}"),
            points: c.points.iter().map(|p| (x(p), *p.h.get(k).unwrap_or(&0) as f64)).collect(),
        });
    }
    for k in 0..width(|p| &p.f) {
        out.push(Series {
            name: format!("f{}", k as i64 - 1),
            points: c.points.iter().map(|p| (x(p), *p.f.get(k).unwrap_or(&0) as f64)).collect(),
        });
    }
    out
}
