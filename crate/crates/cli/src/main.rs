use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nanotrap::field::field_sample;
use nanotrap::io::{
    parse_scene_config, read_grid, render_slice, scene_hash, write_extrema_report, write_grid, write_tune_report, Axis,
    ReportMeta, DEFAULT_CLAMP,
};
use nanotrap::landscape::{find_local_extrema_with_shell, sample_grid_with, Execution, DEFAULT_SHELL_RADIUS};
use nanotrap::tuner::{self, optimize_currents, Sense, TuneProblem};
use nanotrap::{Error, PotentialMode, Result, Scene};

mod args;

#[derive(Parser)]
#[command(name = "trap", version, about = "Potentials of crossed-wire atom traps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Dc,
    Dressed,
}

impl From<ModeArg> for PotentialMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Dc => PotentialMode::Dc,
            ModeArg::Dressed => PotentialMode::Dressed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
    Z,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::X => Axis::X,
            AxisArg::Y => Axis::Y,
            AxisArg::Z => Axis::Z,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Min,
    Max,
}

#[derive(Subcommand)]
enum Command {
    /// Print the DC field and RF amplitude at a point (T).
    Field {
        #[arg(short = 'c', value_name = "SCENE")]
        scene: PathBuf,
        #[arg(short = 'p', value_name = "X,Y,Z", allow_hyphen_values = true)]
        point: String,
    },
    /// Sample a potential grid.
    Grid {
        #[arg(short = 'c', value_name = "SCENE")]
        scene: PathBuf,
        /// ox,oy,oz:sx,sy,sz:nx,ny,nz
        #[arg(short = 'g', value_name = "GRIDSPEC", allow_hyphen_values = true)]
        grid: String,
        #[arg(short = 'm', value_enum)]
        mode: ModeArg,
        #[arg(short = 'o', value_name = "FILE")]
        output: PathBuf,
        /// Sample on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Find local extrema of a sampled grid.
    Extrema {
        #[arg(short = 'i', value_name = "GRID")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SHELL_RADIUS)]
        shell: usize,
        #[arg(short = 'o', value_name = "REPORT")]
        output: PathBuf,
    },
    /// Render a grid slice as a PPM image.
    Render {
        #[arg(short = 'i', value_name = "GRID")]
        input: PathBuf,
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long)]
        index: usize,
        /// Upper clamp of the colour scale (J).
        #[arg(long, default_value_t = DEFAULT_CLAMP, allow_hyphen_values = true)]
        clamp: f64,
        #[arg(short = 'o', value_name = "IMAGE")]
        output: PathBuf,
    },
    /// Tune wire currents against the potential at target points.
    Tune {
        #[arg(short = 'c', value_name = "SCENE")]
        scene: PathBuf,
        /// File of `x,y,z` points, or `crossings` for the layer crossings.
        #[arg(long, value_name = "FILE")]
        targets: String,
        /// `wire:dc|rf:lo:hi`, repeatable or comma separated.
        #[arg(long, value_name = "SPEC", required = true, allow_hyphen_values = true)]
        free: Vec<String>,
        #[arg(long, value_enum, default_value = "min")]
        sense: SenseArg,
        #[arg(short = 'm', value_enum, default_value = "dressed")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = tuner::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = tuner::DEFAULT_MAX_EVALS)]
        max_evals: usize,
        #[arg(short = 'o', value_name = "RESULT")]
        output: PathBuf,
    },
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn load_scene(path: &Path) -> Result<Scene> {
    parse_scene_config(&read_text(path)?)
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Field { scene, point } => {
            let scene = load_scene(&scene)?;
            let p = args::point(&point)?;
            let f = field_sample(&scene, &p)?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "B_DC {:.16e} {:.16e} {:.16e}", f.b_dc.x, f.b_dc.y, f.b_dc.z)?;
            writeln!(out, "B_RF {:.16e} {:.16e} {:.16e}", f.b_rf.x, f.b_rf.y, f.b_rf.z)?;
        }
        Command::Grid {
            scene,
            grid,
            mode,
            output,
            sequential,
        } => {
            let scene = load_scene(&scene)?;
            let spec = args::gridspec(&grid)?;
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let g = sample_grid_with(&scene, &spec, mode.into(), exec)?;
            let mut buf = Vec::new();
            write_grid(&mut buf, &g, Some(&scene_hash(&scene)))?;
            fs::write(output, buf)?;
        }
        Command::Extrema { input, shell, output } => {
            let file = read_grid(&mut fs::File::open(input)?)?;
            let extrema = find_local_extrema_with_shell(&file.grid, shell);
            let meta = ReportMeta {
                scene_hash: file.scene_hash.as_deref(),
                spec: file.grid.spec(),
                mode: file.grid.mode(),
                shell_radius: shell,
            };
            fs::write(output, write_extrema_report(&extrema, &meta))?;
        }
        Command::Render {
            input,
            axis,
            index,
            clamp,
            output,
        } => {
            let file = read_grid(&mut fs::File::open(input)?)?;
            fs::write(output, render_slice(&file.grid, axis.into(), index, clamp)?)?;
        }
        Command::Tune {
            scene,
            targets,
            free,
            sense,
            mode,
            seed,
            tolerance,
            max_evals,
            output,
        } => {
            let scene = load_scene(&scene)?;
            let targets = if targets == "crossings" {
                tuner::cell_crossing_targets(&scene)
            } else {
                args::targets(&read_text(Path::new(&targets))?)?
            };
            let mut free_currents = Vec::new();
            for spec in &free {
                free_currents.extend(args::free_list(spec)?);
            }
            let mut problem = TuneProblem::new(scene, free_currents, targets, mode.into());
            problem.sense = match sense {
                SenseArg::Min => Sense::Minimize,
                SenseArg::Max => Sense::Maximize,
            };
            problem.seed = seed;
            problem.tolerance = tolerance;
            problem.max_evals = max_evals;
            let result = optimize_currents(&problem)?;
            fs::write(
                output,
                write_tune_report(&problem.free, &result, &scene_hash(&result.scene)),
            )?;
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) => 1,
        e if e.is_numerical() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trap: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
