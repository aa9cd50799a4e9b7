use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qrg::catalog::{build_group, emit_table, parse_samples, render_jsonl, render_markdown, verify_suite, AnyGroup, Config, Output};
use qrg::conj::{verify_conjugacy_theorem, ConjOptions};
use qrg::quat::{quat_is_reflection, ReflectionInfo};
use qrg::soi::{soi_classify, soi_preserved_by, Mode};
use qrg::{Error, Rat};

#[derive(Parser)]
#[command(name = "qrg", version, about = "Rank-two quaternionic reflection groups")]
struct Cli {
    /// key = value file with defaults for the flags below
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    closure_cap: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a group and print its summary
    Build { descriptor: String },
    /// List the reflections of a group
    Reflections { descriptor: String },
    /// Systems of imprimitivity of a group
    Soi {
        #[arg(long)]
        group: String,
        #[arg(long)]
        samples: Option<String>,
        #[arg(long, default_value = "generators")]
        mode: Mode,
    },
    /// Check the witness chains of a conjugacy theorem
    Conj {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        r: Option<Rat>,
    },
    /// Regenerate a table
    Table {
        #[arg(long)]
        which: u8,
        #[arg(long)]
        max_m: Option<u32>,
        #[arg(long)]
        format: Option<Output>,
    },
    /// Run the whole verification suite
    Verify {
        #[arg(long)]
        max_m: Option<u32>,
        #[arg(long)]
        samples: Option<String>,
    },
}

#[derive(Serialize)]
struct ReflectionEntry {
    matrix: String,
    order: u32,
}

#[derive(Serialize)]
struct ReflectionList {
    descriptor: String,
    count: usize,
    reflections: Vec<ReflectionEntry>,
}

fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(v: &T) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serialisable")));
}

fn load_config(cli: &Cli) -> qrg::Result<Config> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if cfg.cache_dir.is_none() {
        cfg.cache_dir = std::env::var_os("QRG_CACHE_DIR").map(PathBuf::from);
    }
    if let Some(c) = cli.closure_cap {
        cfg.closure_cap = c;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> qrg::Result<bool> {
    let mut cfg = load_config(cli)?;
    match &cli.cmd {
        Cmd::Build { descriptor } => {
            let g = build_group(descriptor, cfg.closure_cap)?;
            match &g {
                AnyGroup::Ext(e) => print_json(&e.record()),
                _ => print_json(&g.record()?),
            }
        }
        Cmd::Reflections { descriptor } => {
            let g = build_group(descriptor, cfg.closure_cap)?;
            let mut reflections = Vec::new();
            for m in g.reflection_matrices()? {
                if let ReflectionInfo::Reflection { order, .. } = quat_is_reflection(&m)? {
                    reflections.push(ReflectionEntry { matrix: m.to_string(), order });
                }
            }
            print_json(&ReflectionList { descriptor: g.descriptor(), count: reflections.len(), reflections });
        }
        Cmd::Soi { group, samples, mode } => {
            if let Some(s) = samples {
                cfg.soi_samples = parse_samples(s)?;
            }
            let c = soi_classify(group)?;
            let g = build_group(group, cfg.closure_cap)?;
            let ok = c.instances(&cfg.soi_samples).iter().all(|f| match &g {
                AnyGroup::Gkh(x) => soi_preserved_by(x, &f.soi, *mode),
                AnyGroup::Ext(x) => soi_preserved_by(x, &f.soi, *mode),
                AnyGroup::St(_) => false,
            });
            print_json(&c.report());
            return Ok(ok);
        }
        Cmd::Conj { theorem, m, r } => {
            let rep = verify_conjugacy_theorem(theorem, &ConjOptions { m: *m, r: r.clone() })?;
            print_json(&rep);
            return Ok(rep.pass());
        }
        Cmd::Table { which, max_m, format } => {
            if let Some(m) = max_m {
                cfg.max_m = *m;
            }
            let entries = emit_table(*which, &cfg)?;
            match format.unwrap_or(cfg.output) {
                Output::Json => emit(&render_jsonl(&entries)),
                Output::Markdown => emit(&render_markdown(&entries)),
            }
        }
        Cmd::Verify { max_m, samples } => {
            if let Some(m) = max_m {
                cfg.max_m = *m;
            }
            if let Some(s) = samples {
                cfg.soi_samples = parse_samples(s)?;
            }
            let rep = verify_suite(&cfg)?;
            for c in &rep.checks {
                eprintln!("{:<10} {:<40} {}", c.section, c.name, c.status);
            }
            print_json(&rep);
            return Ok(rep.all_passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::InvalidDescriptor(_) | Error::Parse(_) | Error::InvalidParams(_))) => {
            eprintln!("qrg: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("qrg: {e}");
            ExitCode::from(1)
        }
    }
}
