//! Command-line front end.
//!
//! Exit codes: 0 success (and synchronizing for `analyze`), 3 a clean
//! non-synchronizing verdict, 1 any error.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use oscsync_core::analysis::{analyze, kernel_oracle, structure, NetworkSpec};
use oscsync_core::circuit::netlist_to_network;
use oscsync_core::simulate::{
    classify_trajectory, simulate, witness_initial_state, SimConfig, MIN_PERIODS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formats::{
    network_to_json, parse_netlist, parse_network, sig17, to_json, write_trajectory_csv,
};
use crate::report::{ReportJson, StructureJson};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NONSYNC: u8 = 3;

const DEFAULT_T_END: f64 = 2000.0;

#[derive(Parser, Debug)]
#[command(
    name = "oscsync",
    version,
    about = "Synchronization analysis for coupled harmonic oscillator networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide synchronization and print a JSON report (exit 0 sync, 3 not).
    Analyze {
        /// Network JSON file, or "-" for standard input.
        network: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Integrate the network and classify the trajectory.
    Simulate(SimulateArgs),
    /// Convert an LC-tank netlist into network JSON.
    Netlist {
        /// Netlist JSON file, or "-" for standard input.
        netlist: PathBuf,
    },
    /// Report graph connectivity, edge isolation and applicable tests.
    Structure {
        /// Network JSON file, or "-" for standard input.
        network: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct Overrides {
    /// Replace the node inertia m0.
    #[arg(long)]
    pub m0: Option<f64>,
    /// Replace the node stiffness k0.
    #[arg(long)]
    pub k0: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Network JSON file, or "-" for standard input.
    pub network: PathBuf,
    /// Initial positions, comma separated (default: seeded uniform in [-1, 1]).
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "witness"
    )]
    pub x0: Option<Vec<f64>>,
    /// Start on the kernel witness mode of a non-synchronizing network.
    #[arg(long)]
    pub witness: bool,
    /// Step size; shrunk automatically to keep dt·ω_max ≤ 0.05.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Horizon (default: 2000 or 40 uncoupled periods, whichever is longer).
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Write the trajectory CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the default random initial positions.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Record every n-th step.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    #[command(flatten)]
    pub overrides: Overrides,
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn execute(command: Command, stdin: &mut dyn Read, stdout: &mut dyn Write) -> anyhow::Result<u8> {
    match command {
        Command::Analyze { network, overrides } => {
            let net = load_network(&network, &overrides, stdin)?;
            let report = analyze(&net).context("analysis failed")?;
            stdout.write_all(to_json(&ReportJson::from(&report)).as_bytes())?;
            Ok(if report.synchronizes() {
                EXIT_OK
            } else {
                EXIT_NONSYNC
            })
        }
        Command::Simulate(args) => cmd_simulate(args, stdin, stdout),
        Command::Netlist { netlist } => {
            let text = read_input(&netlist, stdin)?;
            let (nl, q) = parse_netlist(&text)
                .with_context(|| format!("parsing netlist {}", describe(&netlist)))?;
            let net = netlist_to_network(&nl, q)?;
            stdout.write_all(network_to_json(&net).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Structure { network } => {
            let net = load_network(&network, &Overrides { m0: None, k0: None }, stdin)?;
            let s = structure(&net)?;
            stdout.write_all(to_json(&StructureJson::new(&s, net.q())).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_simulate(
    args: SimulateArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> anyhow::Result<u8> {
    let net = load_network(&args.network, &args.overrides, stdin)?;
    let q = net.q();
    let (x0, v0) = if args.witness {
        let w = kernel_oracle(&net)?
            .context("--witness: the network synchronizes, so it has no kernel witness")?;
        witness_initial_state(&w)
    } else if let Some(x0) = args.x0 {
        if x0.len() != q {
            bail!(
                "--x0 has {} entries but the network has q = {q} nodes",
                x0.len()
            );
        }
        (x0, vec![0.0; q])
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        (
            (0..q).map(|_| rng.random_range(-1.0..=1.0)).collect(),
            vec![0.0; q],
        )
    };
    let t_end = args
        .t_end
        .unwrap_or_else(|| DEFAULT_T_END.max(2.0 * MIN_PERIODS * 2.0 * PI / net.omega0()));
    let cfg = SimConfig::for_network(&net, args.dt, t_end, args.stride)?;
    let tr = simulate(&net, &x0, &v0, &cfg)?;
    if let Some(path) = &args.out {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(file);
        write_trajectory_csv(&tr, &mut w)?;
        w.flush()?;
    }
    let c = classify_trajectory(&tr)?;
    writeln!(stdout, "dt={}", sig17(cfg.dt()))?;
    writeln!(stdout, "samples={}", tr.len())?;
    writeln!(stdout, "w_early={}", sig17(c.w_early))?;
    writeln!(stdout, "w_late={}", sig17(c.w_late))?;
    writeln!(stdout, "classification={}", c.class)?;
    Ok(EXIT_OK)
}

fn describe(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "from standard input".to_string()
    } else {
        path.display().to_string()
    }
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> anyhow::Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin
            .read_to_string(&mut text)
            .context("reading standard input")?;
    } else {
        text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(text)
}

fn load_network(
    path: &Path,
    overrides: &Overrides,
    stdin: &mut dyn Read,
) -> anyhow::Result<NetworkSpec> {
    let text = read_input(path, stdin)?;
    let net =
        parse_network(&text).with_context(|| format!("parsing network {}", describe(path)))?;
    if overrides.m0.is_none() && overrides.k0.is_none() {
        return Ok(net);
    }
    let m0 = overrides.m0.unwrap_or(net.m0());
    let k0 = overrides.k0.unwrap_or(net.k0());
    Ok(net.with_parameters(m0, k0)?)
}
