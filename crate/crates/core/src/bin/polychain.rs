use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use polychain::mech::{compile_spec, run, CheckOptions, MechError, MechanismFile, PolytopeRecord};
use polychain::sdt::ConstraintRow;

#[derive(Parser)]
#[command(name = "polychain", version, about = "Worst-case tolerance analysis with displacement polytopes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the chain and check the functional requirement.
    Check {
        file: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write polytope records (JSON) for every edge, the functional spec and the result.
        #[arg(long)]
        export_dir: Option<PathBuf>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_parser = parse_point)]
        reduction_point: Option<[f64; 3]>,
        /// Append the elapsed time to the report.
        #[arg(long)]
        timing: bool,
        #[arg(long, env = "POLYCHAIN_EPS", hide_env_values = true, hide = true)]
        env_eps: Option<f64>,
    },
    /// Print one specification's rows and polytope as JSON.
    Compile {
        file: PathBuf,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_parser = parse_point)]
        reduction_point: Option<[f64; 3]>,
        #[arg(long, env = "POLYCHAIN_EPS", hide_env_values = true, hide = true)]
        env_eps: Option<f64>,
    },
    /// Convert a polytope record to an OFF mesh.
    Export {
        record: PathBuf,
        #[arg(long)]
        off: PathBuf,
        /// Bound free directions at +-C for display; without a value, 10x the largest extent.
        #[arg(long, num_args = 0..=1, default_missing_value = "auto")]
        cap: Option<String>,
    },
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}")))
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|v| format!("expected x,y,z, got {} values", v.len()))
}

fn io_err(path: &Path, e: std::io::Error) -> MechError {
    MechError::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), MechError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn options(eps: Option<f64>, env_eps: Option<f64>, point: Option<[f64; 3]>) -> CheckOptions {
    let mut o = CheckOptions {
        eps,
        reduction_point: point,
        ..CheckOptions::default()
    };
    if let Some(e) = env_eps {
        o.fallback_eps = e;
    }
    o
}

fn check(
    file: &Path,
    report_path: Option<&Path>,
    export_dir: Option<&Path>,
    opts: &CheckOptions,
) -> Result<i32, MechError> {
    let mech = MechanismFile::load(file)?;
    let (compiled, report) = run(&mech, opts)?;
    let text = report.to_string();
    // a closed pipe is not an error for a report
    let _ = std::io::stdout().write_all(text.as_bytes());
    if let Some(p) = report_path {
        write_file(p, &text)?;
    }
    if let Some(dir) = export_dir {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        for e in compiled.graph.edges() {
            let rec = PolytopeRecord::from_displacement(&e.polytope);
            write_file(&dir.join(format!("edge_{}.json", e.name)), &rec.to_json())?;
        }
        let rec = PolytopeRecord::from_displacement(&compiled.functional);
        write_file(&dir.join("functional.json"), &rec.to_json())?;
        if let Some(c) = &report.calculated {
            write_file(&dir.join("calculated.json"), &PolytopeRecord::from_displacement(c).to_json())?;
        }
    }
    Ok(report.exit_code())
}

#[derive(Serialize)]
struct SpecDump<'a> {
    spec: &'a str,
    from: String,
    to: String,
    rows: &'a [ConstraintRow],
    polytope: PolytopeRecord,
}

fn compile(file: &Path, name: &str, opts: &CheckOptions) -> Result<i32, MechError> {
    let mech = MechanismFile::load(file)?;
    let spec = mech
        .spec(name)
        .ok_or_else(|| MechError::Io(format!("no spec named '{name}'")))?;
    let compiled = polychain::mech::compile(&mech, opts)?;
    let c = compile_spec(&mech, spec, compiled.eps, compiled.point)?;
    let dump = SpecDump {
        spec: name,
        from: c.from.to_string(),
        to: c.to.to_string(),
        rows: &c.rows,
        polytope: PolytopeRecord::from_displacement(&c.polytope),
    };
    let text = serde_json::to_string_pretty(&dump).expect("dump serializes");
    let _ = writeln!(std::io::stdout(), "{text}");
    Ok(0)
}

fn export(record: &Path, off: &Path, cap: Option<&str>) -> Result<i32, MechError> {
    let text = fs::read_to_string(record).map_err(|e| io_err(record, e))?;
    let mut rec = PolytopeRecord::from_json(&text)?;
    if let Some(c) = cap {
        let c = match c {
            "auto" => None,
            s => Some(s.parse::<f64>().map_err(|e| MechError::Export(format!("bad cap '{s}': {e}")))?),
        };
        rec = rec.capped(c)?;
    }
    write_file(off, &rec.to_off()?)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Check {
            file,
            report,
            export_dir,
            eps,
            reduction_point,
            timing,
            env_eps,
        } => {
            let mut o = options(*eps, *env_eps, *reduction_point);
            o.timing = *timing;
            check(file, report.as_deref(), export_dir.as_deref(), &o)
        }
        Cmd::Compile {
            file,
            spec,
            eps,
            reduction_point,
            env_eps,
        } => compile(file, spec, &options(*eps, *env_eps, *reduction_point)),
        Cmd::Export { record, off, cap } => export(record, off, cap.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
