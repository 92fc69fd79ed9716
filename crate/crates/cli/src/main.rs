mod fuzz;
mod report;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use vcert_core::compose::{build_scheme, parse_scheme, predict};
use vcert_core::diagram::{parse_code, random_diagram, DiagramCode};
use vcert_core::invariants::zeta;
use vcert_core::minimality::{certify, CertificateKind, MinimalityCertificate, Side};

/// Zeta-polynomial bounds and minimality certificates for virtual crossing numbers.
#[derive(Parser)]
#[command(name = "vcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute zeta, the lower bound and both certificates for a diagram file.
    Analyze {
        file: PathBuf,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Exit 0 if the virtual crossing count is certified minimal, 2 if not.
    Certify { file: PathBuf },
    /// Build a diagram from a scheme file of special connected sums.
    Compose {
        scheme: PathBuf,
        /// Write the composed diagram here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a random proper diagram.
    Random {
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        components: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the degree bound, the top-coefficient identity, the determinant
    /// oracle and move invariance on random diagrams.
    Fuzz {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        /// Random moves applied per diagram for the invariance check.
        #[arg(long, default_value_t = 8)]
        walk: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_code(path: &Path) -> Result<DiagramCode> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_code(&text).with_context(|| format!("invalid diagram in {}", path.display()))
}

fn analyze(file: &Path, json: bool) -> Result<ExitCode> {
    let code = read_code(file)?;
    let z = zeta(&code);
    let certs = certify(&code)?;
    let report = report::build(&code, &z, &certs);
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report::text(&report));
    }
    Ok(ExitCode::SUCCESS)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::DegSide => "deg side",
        Side::MdegSide => "mdeg side",
    }
}

fn certificate_line(cert: &MinimalityCertificate) -> String {
    let via = match cert.kind {
        CertificateKind::MDiagram => "M-diagram",
        _ => "T-diagram",
    };
    let mut line = format!("MINIMAL k={} via {via} ({})", cert.k, side_name(cert.side));
    if let Some(d) = &cert.det_t {
        line.push_str(&format!(": det T = {d}"));
    }
    if let Some(p) = &cert.per_m {
        line.push_str(&format!(", per M = {p}"));
    }
    line
}

fn certify_cmd(file: &Path) -> Result<ExitCode> {
    let code = read_code(file)?;
    let certs = certify(&code)?;
    let best = certs
        .iter()
        .filter(|c| c.certifies())
        .min_by_key(|c| (c.kind != CertificateKind::MDiagram, c.side != Side::DegSide));
    if let Some(cert) = best {
        println!("{}", certificate_line(cert));
        return Ok(ExitCode::SUCCESS);
    }
    let reasons: Vec<String> =
        certs.iter().map(|c| format!("{}: {}", side_name(c.side), c.reasons.join(", "))).collect();
    println!("NOT CERTIFIED k={}: {}", certs[0].k, reasons.join("; "));
    Ok(ExitCode::from(2))
}

fn compose_cmd(scheme_path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let text = fs::read_to_string(scheme_path)
        .with_context(|| format!("cannot read {}", scheme_path.display()))?;
    let dir = scheme_path.parent().unwrap_or(Path::new("."));
    let parsed = parse_scheme(&text, dir)?;
    let mut bases = HashMap::new();
    for (name, path) in &parsed.files {
        bases.insert(name.clone(), read_code(path)?);
    }
    let built = build_scheme(&parsed.scheme, &bases)?;
    let prediction = predict(&parsed.scheme, &bases)?;
    let [deg, _] = certify(&built)?;

    let eb = deg.eps_beta.as_ref().map(|e| (e.epsilon, e.beta));
    let show = |v: Option<(i8, u32)>| v.map_or("-".to_string(), |(e, b)| format!("epsilon = {e}, beta = {b}"));
    let per_m = deg.per_m.as_ref().map_or("-".to_string(), |p| p.to_string());
    let det_t = deg.det_t.as_ref().map_or("-".to_string(), |d| d.to_string());
    eprintln!("predicted:  det T = {}, per M = {}, {}", prediction.det_t, prediction.per_m, show(prediction.eps_beta));
    eprintln!("recomputed: det T = {det_t}, per M = {per_m}, {}", show(eb));

    let serialized = format!("{}\n", built.serialize());
    match out {
        Some(path) => fs::write(path, serialized).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{serialized}"),
    }
    let per_m_matches = deg.per_m.as_ref().is_none_or(|p| *p == prediction.per_m);
    if deg.det_t.as_ref() != Some(&prediction.det_t) || !per_m_matches || eb != prediction.eps_beta {
        bail!("recomputed invariants differ from the prediction");
    }
    Ok(ExitCode::SUCCESS)
}

fn random_cmd(n: usize, k: usize, components: usize, seed: u64) -> Result<ExitCode> {
    let code = random_diagram(n, k, components, seed)?;
    println!("{}", code.serialize());
    Ok(ExitCode::SUCCESS)
}

fn fuzz_cmd(args: fuzz::FuzzArgs) -> Result<ExitCode> {
    let failures = fuzz::run(&args);
    for f in &failures {
        println!("FAIL {}:\n{}", f.check, f.code.serialize());
    }
    println!(
        "fuzz: {} diagrams (n <= {}, k <= {}, walk {}, seed {}), {} failures",
        args.count,
        args.n_max,
        args.k_max,
        args.walk,
        args.seed,
        failures.len()
    );
    Ok(if failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file, json } => analyze(&file, json),
        Command::Certify { file } => certify_cmd(&file),
        Command::Compose { scheme, out } => compose_cmd(&scheme, out.as_deref()),
        Command::Random { n, k, components, seed } => random_cmd(n, k, components, seed),
        Command::Fuzz { count, n_max, k_max, walk, seed } => {
            fuzz_cmd(fuzz::FuzzArgs { count, n_max, k_max, walk, seed })
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
