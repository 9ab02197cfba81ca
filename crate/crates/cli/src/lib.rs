//! Command line front end: reads an arrangement, runs one stage of the
//! pipeline and prints a text or JSON report.

pub mod report;

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use toric_core::arrangement::{is_essential, parse_spec};
use toric_core::category::{check_acyclic, euler_characteristic, nerve_chains};
use toric_core::pi1::{abelianize, kill_generators, simplify_presentation};
use toric_core::salvetti::lifted_chain_orbits;
use toric_core::{ArrangementSpec, Error, HomologyGroup, Model, Space};

pub use report::{CheckItem, LayerEcho, OrbitEcho, Payload, Report, SpecEcho, WindowEcho};

#[derive(Parser, Debug)]
#[command(name = "toric-salvetti", version, about = "Cell structures, Salvetti complexes and fundamental groups of toric arrangement complements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Window [-K, K+1]^n for the periodic lift.
    #[arg(long, global = true, default_value_t = 1, value_name = "K")]
    pub window: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Highest nerve degree to compute.
    #[arg(long, global = true, value_name = "D")]
    pub max_dim: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Face,
    Salvetti,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and echo the arrangement.
    Validate { input: String },
    /// Census of the face category of the torus.
    Faces { input: String },
    /// The poset of layers.
    Layers { input: String },
    /// Censuses of the toric Salvetti category and thickness.
    Salvetti { input: String },
    /// Integral homology of a nerve.
    Homology {
        input: String,
        #[arg(long, value_enum, default_value_t = SpaceArg::Salvetti)]
        space: SpaceArg,
    },
    /// Presentation of the fundamental group of the complement.
    Pi1 {
        input: String,
        #[arg(long)]
        simplify: bool,
    },
    /// Run every invariant check.
    Check { input: String },
}

impl Command {
    fn input(&self) -> &str {
        match self {
            Command::Validate { input }
            | Command::Faces { input }
            | Command::Layers { input }
            | Command::Salvetti { input }
            | Command::Homology { input, .. }
            | Command::Pi1 { input, .. }
            | Command::Check { input } => input,
        }
    }
}

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Core(Error),
    Io(String),
    Violations(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::Io(format!("cannot read standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn chains(m: &Model, space: Space, max_dim: Option<usize>) -> Vec<usize> {
    let c = m.category(space);
    let top = max_dim.unwrap_or(c.max_grade_span());
    let mut counts = nerve_chains(c, top).counts();
    counts.resize(top + 1, 0);
    counts
}

fn check_item(name: &str, passed: bool, detail: String) -> CheckItem {
    CheckItem { name: name.into(), passed, detail }
}

fn checks(m: &Model) -> Result<Vec<CheckItem>, Error> {
    let n = m.dim();
    let mut out = Vec::new();
    for (label, space) in [("face category", Space::Face), ("Salvetti category", Space::Salvetti)] {
        let c = check_acyclic(m.category(space));
        out.push(check_item(&format!("{label} is acyclic"), c.ok(), c.diagnostics.join("; ")));
        let cc = m.chain_complex(space, None)?;
        out.push(check_item(&format!("{label}: boundary squares to zero"), cc.is_complex(), String::new()));
        let divisible = (0..=cc.top_dim()).all(|k| cc.boundary(k).map_or(true, |b| b.smith().divisibility_holds()));
        out.push(check_item(&format!("{label}: invariant factors divide"), divisible, String::new()));
    }
    let face_h = m.homology(Space::Face, None)?;
    let torus = (0..face_h.len()).all(|k| {
        let want = if k <= n { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) } else { 0 };
        face_h[k] == HomologyGroup { betti: want, torsion: vec![] }
    });
    let shown: Vec<String> = face_h.iter().map(|g| g.to_string()).collect();
    out.push(check_item("face nerve has the homology of the torus", torus, shown.join(", ")));

    let cw = m.salvetti_census();
    let c = m.salvetti().category();
    let chi = euler_characteristic(&nerve_chains(c, c.max_grade_span()));
    out.push(check_item(
        "cell and nerve Euler characteristics agree",
        cw.euler_characteristic == chi,
        format!("{} and {chi}", cw.euler_characteristic),
    ));
    let ours = chains(m, Space::Salvetti, Some(n));
    let lifted = lifted_chain_orbits(m.lifted(), n)?;
    out.push(check_item(
        "nerve chains match lifted chain orbits",
        ours == lifted,
        format!("{ours:?} and {lifted:?}"),
    ));

    let h = m.homology(Space::Salvetti, Some(1))?;
    let p = m.presentation()?;
    let ab = abelianize(&p);
    out.push(check_item("abelianized presentation equals H_1", ab == h[1], format!("{ab} and {}", h[1])));
    let killed = abelianize(&kill_generators(&p, |g| g.starts_with('g')));
    let lattice = HomologyGroup { betti: n, torsion: vec![] };
    out.push(check_item("killing meridians leaves Z^n", killed == lattice, killed.to_string()));
    Ok(out)
}

fn payload(cli: &Cli, m: &Model) -> Result<Payload, Failure> {
    Ok(match &cli.command {
        Command::Validate { .. } => Payload::Validate { essential: true, character_rank: m.spec().character_rank() },
        Command::Faces { .. } => {
            let fc = m.faces();
            Payload::Faces {
                census: m.face_census(),
                morphisms: fc.category().morphism_count(),
                euler_characteristic: fc.euler_characteristic(),
                thick: m.is_thick(),
                nerve_chains: chains(m, Space::Face, cli.max_dim),
                orbits: fc
                    .orbits()
                    .iter()
                    .map(|o| OrbitEcho { dim: o.dim, barycenter: o.barycenter.iter().map(|x| x.to_string()).collect() })
                    .collect(),
            }
        }
        Command::Layers { .. } => {
            let lp = m.layers()?;
            Payload::Layers {
                census: lp.census(),
                layers: lp
                    .layers
                    .iter()
                    .map(|l| LayerEcho {
                        dim: l.dim,
                        normals: l.normals.clone(),
                        offsets: l.offsets.iter().map(|x| x.to_string()).collect(),
                    })
                    .collect(),
                relations: lp.relations.clone(),
            }
        }
        Command::Salvetti { .. } => {
            let cw = m.salvetti_census();
            Payload::Salvetti {
                objects_by_codim: cw.by_codim,
                morphisms: m.salvetti().category().morphism_count(),
                euler_characteristic: cw.euler_characteristic,
                thick: m.is_thick(),
                poset: m.salvetti().is_poset(),
                nerve_chains: chains(m, Space::Salvetti, cli.max_dim),
            }
        }
        Command::Homology { space, .. } => {
            let (space, name) = match space {
                SpaceArg::Face => (Space::Face, "face"),
                SpaceArg::Salvetti => (Space::Salvetti, "salvetti"),
            };
            Payload::Homology { space: name.into(), groups: m.homology(space, cli.max_dim)? }
        }
        Command::Pi1 { simplify, .. } => {
            let p = m.presentation()?;
            let abelianization = abelianize(&p);
            let p = if *simplify { simplify_presentation(&p) } else { p };
            Payload::Pi1 { simplified: *simplify, generators: p.generators, relators: p.relators, abelianization }
        }
        Command::Check { .. } => {
            let checks = checks(m)?;
            Payload::Check { passed: checks.iter().all(|c| c.passed), checks }
        }
    })
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let text = read_input(cli.command.input(), stdin)?;
    let spec: ArrangementSpec = parse_spec(&text)?;
    if !is_essential(&spec) {
        return Err(Error::NotEssential { rank: spec.character_rank(), dim: spec.rank() }.into());
    }
    let m = Model::build(&spec, cli.window)?;
    let result = payload(cli, &m)?;
    let report = Report { arrangement: SpecEcho::of(&spec), window: WindowEcho::of(m.window(), cli.window), result };
    if let Payload::Check { passed: false, .. } = report.result {
        return Err(Failure::Violations(report));
    }
    Ok(report)
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let result = execute(&cli, stdin);
    let timing = format!("elapsed: {} ms\n", start.elapsed().as_millis());
    match result {
        Ok(report) => Outcome { code: 0, stdout: render(&report, cli.format), stderr: timing },
        Err(Failure::Violations(report)) => Outcome {
            code: 3,
            stdout: render(&report, cli.format),
            stderr: format!("error: invariant violations found\n{timing}"),
        },
        Err(Failure::Io(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Core(e)) => {
            let (code, hint) = match &e {
                Error::WindowTooSmall(_) => (2, format!("\nhint: rerun with --window {}", cli.window + 1)),
                Error::Internal(_) => (3, String::new()),
                _ => (1, String::new()),
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}{hint}\n") }
        }
    }
}
