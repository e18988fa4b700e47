//! `trispec`: segment validation, intermediate eigenvalues, position checks,
//! the final conclusion and figure data.
//!
//! Exit codes: 0 success, 1 failed or undecided check, 2 usage or configuration error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use trispec::mps::{bracket_around, golden_search_with};
use trispec::plot;
use trispec::prover::{
    certify_positions, intermediate_eigs, miranda_conclude, read_dir, validate_segment, Artifact, ArtifactKind, IntermediateRecord,
    PositionReport, ProverConfig, RunManifest, SideRef, Target, Timing, VerdictRecord,
};
use trispec::Error;

#[derive(Debug, Parser)]
#[command(name = "trispec", version, about = "Certified eigenvalue quotients of triangles")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Prover configuration (JSON); the built-in reference configuration if absent.
    #[arg(long, global = true, env = "TRISPEC_CONFIG")]
    config: Option<PathBuf>,
    /// Working precision in bits.
    #[arg(long, global = true, env = "TRISPEC_PRECISION_BITS")]
    precision_bits: Option<u32>,
    /// Seed of the interior collocation points.
    #[arg(long, global = true, env = "TRISPEC_SEED")]
    seed: Option<u64>,
    /// Worker threads for independent segment tasks.
    #[arg(long, global = true, env = "TRISPEC_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Output directory.
    #[arg(long, global = true, env = "TRISPEC_OUT", default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the sign of ξ − ξ̄ on sub-segments of one side.
    Valxi {
        /// Side as NAME:SIDE, e.g. A:+v21.
        #[arg(long, env = "TRISPEC_SIDE")]
        side: String,
        /// Number of sub-segments; the configuration's value if absent.
        #[arg(long, env = "TRISPEC_N")]
        n: Option<usize>,
        /// Sub-segment indices: a number, a range `a-b`, or a comma-separated list.
        #[arg(long, env = "TRISPEC_INDEX")]
        index: String,
    },
    /// Enclose λ2 and λ3 over a whole ξ41 side.
    Interm {
        #[arg(long, env = "TRISPEC_SIDE")]
        side: String,
    },
    /// Certify the spectral indices of the recorded enclosures on one side.
    Position {
        #[arg(long, env = "TRISPEC_SIDE")]
        side: String,
        /// Number of separated eigenvalues (2 or 4).
        #[arg(long, env = "TRISPEC_K")]
        k: usize,
    },
    /// Conclude from a directory of verdict and position records.
    Prove {
        /// Directory holding `verdicts/` and `positions/`; the output directory if absent.
        #[arg(long, env = "TRISPEC_FIXTURES")]
        fixtures: Option<PathBuf>,
    },
    /// Export non-rigorous figure data as CSV.
    PlotData {
        what: PlotKind,
        /// Parallelogram whose center is used.
        #[arg(long, default_value = "A")]
        parallelogram: String,
        /// Lattice points per axis.
        #[arg(long, default_value_t = 9)]
        lattice: usize,
        /// FEM mesh for level sets.
        #[arg(long, default_value_t = 16)]
        mesh: usize,
        /// Eigenvalue index for `eigfun`.
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlotKind {
    Levelsets,
    Grid,
    Eigfun,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let usage = error.chain().any(|e| {
            matches!(e.downcast_ref::<Error>(), Some(Error::Config(_) | Error::Precondition(_) | Error::Json(_)))
        });
        Failure { code: if usage { 2 } else { 1 }, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn usage(msg: String) -> Failure {
    Failure { code: 2, error: anyhow::anyhow!(msg) }
}

struct Run {
    config: ProverConfig,
    manifest: RunManifest,
    hash: String,
    out: PathBuf,
    jobs: usize,
    clock: Instant,
}

impl Run {
    fn new(g: &Global, command: &str, arguments: BTreeMap<String, String>) -> Result<Self, Failure> {
        let mut config = match &g.config {
            Some(p) => ProverConfig::load(p).with_context(|| format!("loading {}", p.display()))?,
            None => ProverConfig::reference(),
        };
        if let Some(bits) = g.precision_bits {
            config.precision_bits = bits;
        }
        if let Some(seed) = g.seed {
            config.seed = seed;
        }
        config.validate()?;
        if g.jobs == 0 {
            return Err(usage("--jobs must be positive".into()));
        }
        let manifest = RunManifest {
            command: command.into(),
            config_path: g.config.as_ref().map(|p| p.display().to_string()),
            config_sha256: trispec::prover::artifacts::canonical_digest(&config)?,
            arguments,
            seed: config.seed,
            precision_bits: config.precision_bits,
            out_dir: g.out.display().to_string(),
            version: env!("CARGO_PKG_VERSION").into(),
            timing: None,
        };
        let hash = manifest.hash()?;
        Ok(Run { config, manifest, hash, out: g.out.clone(), jobs: g.jobs, clock: Instant::now() })
    }

    fn side(&self, label: &str) -> Result<(SideRef, i8), Failure> {
        self.config.side(label).map_err(|e| usage(e.to_string()))
    }

    fn seal<T: serde::Serialize + serde::de::DeserializeOwned>(&self, kind: ArtifactKind, path: &Path, payload: T) -> Result<(), Failure> {
        Artifact::seal(kind, &self.hash, payload)?.write(path)?;
        eprintln!("wrote {}", path.display());
        Ok(())
    }

    fn finish(mut self) -> Result<(), Failure> {
        let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let elapsed = self.clock.elapsed().as_secs_f64();
        self.manifest.timing = Some(Timing { started_unix: started.saturating_sub(elapsed as u64), elapsed_secs: elapsed });
        let path = self.out.join("manifests").join(format!("{}.json", self.hash));
        fs::create_dir_all(path.parent().expect("manifest directory")).context("creating manifest directory")?;
        fs::write(&path, serde_json::to_string_pretty(&self.manifest).context("serializing manifest")? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

fn file_stem(label: &str) -> String {
    label.replace(':', "_")
}

fn parse_indices(text: &str, n: usize) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let bad = || usage(format!("malformed index {part:?}"));
        let (a, b): (usize, usize) = match part.split_once('-') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let i = part.trim().parse().map_err(|_| bad())?;
                (i, i)
            }
        };
        if a == 0 || b > n || a > b {
            return Err(usage(format!("index range {part:?} is outside 1..={n}")));
        }
        out.extend(a..=b);
    }
    Ok(out)
}

fn cmd_valxi(g: &Global, side: &str, n: Option<usize>, index: &str) -> Result<(), Failure> {
    let args = BTreeMap::from([("side".into(), side.into()), ("n".into(), format!("{n:?}")), ("index".into(), index.into())]);
    let run = Run::new(g, "valxi", args)?;
    let n = n.unwrap_or(run.config.n_sub);
    let indices = parse_indices(index, n)?;
    let tasks = indices.iter().map(|&i| run.config.task(side, n, i)).collect::<Result<Vec<_>, _>>().map_err(|e| usage(e.to_string()))?;
    let opts = run.config.certify_options();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(run.jobs).build().context("building worker pool")?;
    let results: Vec<_> = pool.install(|| {
        use rayon::prelude::*;
        tasks.par_iter().map(|t| (t, validate_segment(t, &opts))).collect()
    });
    let mut failed = Vec::new();
    for (task, result) in results {
        match result {
            Ok(v) => {
                let record = VerdictRecord::from_verdict(&v)?;
                let path = run.out.join("verdicts").join(format!("{}_{}of{}.json", file_stem(&task.side.label()), task.sub_index, task.n_sub));
                run.seal(ArtifactKind::Verdict, &path, record)?;
                println!(
                    "{}: ξ{} ∈ {}  sign {:+} (expected {:+})",
                    task.key(),
                    &task.target().label()[2..],
                    v.xi_enclosure,
                    v.certified_sign,
                    task.expected_sign
                );
                if !v.sign_ok {
                    failed.push(format!("{}: certified sign is opposite to the expected one", task.key()));
                }
            }
            Err(e) => failed.push(format!("{}: {e}", task.key())),
        }
    }
    run.finish()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: 1, error: anyhow::anyhow!("{}", failed.join("\n")) })
    }
}

fn cmd_interm(g: &Global, side: &str) -> Result<(), Failure> {
    let run = Run::new(g, "interm", BTreeMap::from([("side".into(), side.into())]))?;
    let (sref, _) = run.side(side)?;
    if sref.target() != Target::Xi41 {
        return Err(usage(format!("{side} is a ξ21 side; intermediate eigenvalues are only needed on ξ41 sides")));
    }
    let m = intermediate_eigs(&sref, &run.config.certify_options())?;
    for (i, e) in m.over_side.iter().enumerate() {
        println!("λ_{} ∈ {} on {}", i + 2, e, sref.label());
    }
    let path = run.out.join("intermediates").join(format!("{}.json", file_stem(&sref.label())));
    run.seal(ArtifactKind::Intermediates, &path, IntermediateRecord::new(&sref.spec.name, sref.side, &m))?;
    run.finish()
}

fn cmd_position(g: &Global, side: &str, k: usize) -> Result<(), Failure> {
    if k != 2 && k != 4 {
        return Err(usage(format!("k must be 2 or 4, got {k}")));
    }
    let run = Run::new(g, "position", BTreeMap::from([("side".into(), side.into()), ("k".into(), k.to_string())]))?;
    let (sref, _) = run.side(side)?;
    if sref.target().k() != k {
        return Err(usage(format!("{side} validates {}, which needs k = {}", sref.target().label(), sref.target().k())));
    }
    let verdict_dir = run.out.join("verdicts");
    let verdicts: Vec<Artifact<VerdictRecord>> =
        if verdict_dir.is_dir() { read_dir(&verdict_dir, ArtifactKind::Verdict)? } else { Vec::new() };
    let pairs = verdicts
        .iter()
        .filter(|a| a.payload.parallelogram == sref.spec.name && a.payload.side == sref.side)
        .map(|a| a.payload.claimed_pair())
        .collect::<Result<Vec<_>, _>>()?;
    if pairs.is_empty() {
        return Err(Failure { code: 1, error: anyhow::anyhow!("no verdicts for {side} in {}", verdict_dir.display()) });
    }
    let intermediates = if k == 4 {
        let path = run.out.join("intermediates").join(format!("{}.json", file_stem(&sref.label())));
        let rec = Artifact::<IntermediateRecord>::read(&path, ArtifactKind::Intermediates).with_context(|| format!("reading {}", path.display()))?;
        rec.payload.over_side()?
    } else {
        Vec::new()
    };
    let report = certify_positions(&sref, &pairs, &intermediates, run.config.fem_mesh)?;
    println!("{}: λ_{} ≥ {} on the side; {} sub-segments have certified indices", side, k + 1, report.side_lower.lo, report.checked.len());
    let path = run.out.join("positions").join(format!("{}.json", file_stem(&sref.label())));
    run.seal(ArtifactKind::Positions, &path, report)?;
    run.finish()
}

fn load_records<T: serde::Serialize + serde::de::DeserializeOwned>(dir: &Path, kind: ArtifactKind) -> Result<Vec<T>, Failure> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let records = read_dir::<T>(dir, kind).map_err(|e| Failure { code: 1, error: e.into() })?;
    Ok(records.into_iter().map(|a| a.payload).collect())
}

fn cmd_prove(g: &Global, fixtures: Option<&Path>) -> Result<(), Failure> {
    let dir = fixtures.unwrap_or(&g.out).to_path_buf();
    let run = Run::new(g, "prove", BTreeMap::from([("fixtures".into(), dir.display().to_string())]))?;
    let verdicts: Vec<VerdictRecord> = load_records(&dir.join("verdicts"), ArtifactKind::Verdict)?;
    let positions: Vec<PositionReport> = load_records(&dir.join("positions"), ArtifactKind::Positions)?;
    let cert = miranda_conclude(&run.config, &verdicts, &positions).map_err(|e| Failure { code: 1, error: e.into() })?;
    println!("{}", cert.statement);
    if cert.pairwise_non_similar {
        println!("the triangles found in different parallelograms are not similar");
    }
    run.seal(ArtifactKind::Certificate, &run.out.join("certificate.json"), cert)?;
    run.finish()
}

fn cmd_plot(g: &Global, what: PlotKind, name: &str, lattice: usize, mesh: usize, index: usize) -> Result<(), Failure> {
    let args = BTreeMap::from([
        ("what".into(), format!("{what:?}").to_lowercase()),
        ("parallelogram".into(), name.into()),
        ("lattice".into(), lattice.to_string()),
        ("mesh".into(), mesh.to_string()),
        ("index".into(), index.to_string()),
    ]);
    let run = Run::new(g, "plot-data", args)?;
    let spec = run.config.parallelogram(name).map_err(|e| usage(e.to_string()))?;
    let t = trispec::geometry::Triangle::new(spec.center.x.clone(), spec.center.y.clone())?;
    let dir = run.out.join("plot");
    fs::create_dir_all(&dir).context("creating plot directory")?;
    let path = dir.join(format!("{}_{}.csv", format!("{what:?}").to_lowercase(), name));
    let file = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    match what {
        PlotKind::Levelsets => {
            let b = spec.apex_box();
            let half = (1.5 * b.x.width_f64() / 2.0, 1.5 * b.y.width_f64() / 2.0);
            let rows = plot::level_set_rows(spec.center.mid_f64(), half, lattice, mesh)?;
            plot::write_level_sets(file, &rows)?;
        }
        PlotKind::Grid => {
            let opts = run.config.certify_options();
            plot::write_grid(file, &t, opts.grid_n, opts.shrink)?;
        }
        PlotKind::Eigfun => {
            let opts = run.config.certify_options();
            let est = trispec::fem::fem_estimates(&t, mesh, index.max(1) + 1)?;
            if index == 0 || index > est.len() {
                return Err(usage(format!("eigenvalue index {index} is out of range")));
            }
            let cand = golden_search_with(&t, bracket_around(est[index - 1], &est), opts.basis, &opts.search)?;
            plot::write_eigenfunction(file, &cand, &t, lattice)?;
        }
    }
    println!("{}", path.display());
    run.finish()
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Valxi { side, n, index } => cmd_valxi(g, side, *n, index),
        Command::Interm { side } => cmd_interm(g, side),
        Command::Position { side, k } => cmd_position(g, side, *k),
        Command::Prove { fixtures } => cmd_prove(g, fixtures.as_deref()),
        Command::PlotData { what, parallelogram, lattice, mesh, index } => cmd_plot(g, *what, parallelogram, *lattice, *mesh, *index),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
