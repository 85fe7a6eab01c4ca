//! Subcommand dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qweb::combinat::Composition;
use qweb::homspace::{enumerate_tstar, hom_basis, hom_dim_oracle, rank_of_family};
use qweb::psi::{eval_stacks, verify_pi_triangle};
use qweb::relcheck::{verify_templates, Template};
use qweb::schurq::verify_schur_relations;
use qweb::sergeev::SergeevElement;
use qweb::web::{merges_from_ones, splits_to_ones};
use thiserror::Error;

use crate::json::{BasisItemJson, BasisJson, MatrixJson};
use crate::script::{parse_webscript, render, ScriptError};

/// Exit code for a failed verification.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for usage, input and parse errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Script { path: String, source: ScriptError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Algebra(#[from] qweb::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qweb", version, about = "Type Q webs, supertabloids and Sergeev superalgebra computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Pair {
    /// Source composition, e.g. 2,1,2
    #[arg(long, value_parser = parse_comp)]
    pub lambda: Composition,
    /// Target composition, e.g. 1,3,1
    #[arg(long, value_parser = parse_comp)]
    pub mu: Composition,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count the tabloid basis of a hom-space
    Dim {
        #[command(flatten)]
        pair: Pair,
        /// Also solve the equivariance equations directly
        #[arg(long)]
        oracle: bool,
        /// Also compute the rank of the basis maps
        #[arg(long)]
        rank: bool,
    },
    /// Write the hom-space basis with words, scripts and matrices
    Basis {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        json: PathBuf,
    },
    /// Evaluate a web script as a module map
    Eval {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the web relations at every total thickness up to r
    VerifyWebs {
        #[arg(long)]
        r: usize,
        /// Restrict to one relation family
        #[arg(long)]
        template: Option<String>,
    },
    /// Check the Schur superalgebra presentation and the generator webs
    VerifySchur {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Multiply two words in the Sergeev superalgebra
    SergeevMul {
        left: String,
        right: String,
        /// Rank of the algebra; defaults to the smallest that fits
        #[arg(long)]
        r: Option<usize>,
    },
    /// Print a web script layer by layer
    Render { file: PathBuf },
}

fn parse_comp(s: &str) -> Result<Composition, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad part `{p}` in `{s}`")))
        .collect::<Result<Vec<_>, _>>()
        .map(Composition::new)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

/// Script for `θ_T`: explode `λ`, the Sergeev word, then merge to `μ`.
fn theta_script(lambda: &Composition, mu: &Composition, word: &str) -> qweb::Result<String> {
    let mut s = format!("object {lambda}\n");
    for l in splits_to_ones(lambda)?.layers() {
        s.push_str(&format!("{l}\n"));
    }
    if word != "1" {
        s.push_str(&format!("sergeev {word}\n"));
    }
    for l in merges_from_ones(mu)?.layers() {
        s.push_str(&format!("{l}\n"));
    }
    Ok(s)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Dim { pair, oracle, rank } => {
            let tstar = enumerate_tstar(&pair.lambda, &pair.mu)?;
            writeln!(out, "{}", tstar.len()).map_err(io)?;
            let mut ok = true;
            if rank {
                let basis = hom_basis(&pair.lambda, &pair.mu)?;
                let rk = rank_of_family(basis.items.iter().map(|it| &it.matrix));
                writeln!(out, "rank {rk}").map_err(io)?;
                ok &= rk == tstar.len();
            }
            if oracle {
                let (even, odd) = hom_dim_oracle(&pair.lambda, &pair.mu)?;
                writeln!(out, "basis {}, oracle ({even},{odd})", tstar.len()).map_err(io)?;
                ok &= even + odd == tstar.len();
            }
            if !ok {
                return Err(CliError::Failed("dimension checks disagree".into()));
            }
        }
        Command::Basis { pair, json } => {
            let basis = hom_basis(&pair.lambda, &pair.mu)?;
            let lam = pair.lambda.strip_zeros();
            let mu = pair.mu.strip_zeros();
            let items = basis
                .items
                .iter()
                .map(|it| {
                    let word = it.word.to_string();
                    Ok(BasisItemJson {
                        tabloid: it.tabloid.signed_rows(),
                        script: theta_script(&lam, &mu, &word)?,
                        word,
                        parity: it.parity().to_string(),
                        matrix: MatrixJson::from_matrix(&it.matrix),
                    })
                })
                .collect::<Result<Vec<_>, qweb::Error>>()?;
            let doc = BasisJson { lambda: pair.lambda.parts.clone(), mu: pair.mu.parts.clone(), size: items.len(), items };
            write_file(&json, &serde_json::to_string_pretty(&doc)?)?;
            writeln!(out, "wrote {} basis maps to {}", doc.size, json.display()).map_err(io)?;
        }
        Command::Eval { file, json } => {
            let text = read(&file)?;
            let script =
                parse_webscript(&text).map_err(|source| CliError::Script { path: file.display().to_string(), source })?;
            let m = eval_stacks(&script.domain, &script.codomain, &script.stacks())?;
            let doc = MatrixJson::from_matrix(&m);
            match json {
                Some(path) => {
                    write_file(&path, &serde_json::to_string_pretty(&doc)?)?;
                    writeln!(out, "({}) -> ({}): {} nonzero entries", script.domain, script.codomain, m.nnz())
                        .map_err(io)?;
                }
                None => writeln!(out, "{}", serde_json::to_string_pretty(&doc)?).map_err(io)?,
            }
        }
        Command::VerifyWebs { r, template } => {
            let templates: Vec<Template> = match template {
                None => Template::ALL.to_vec(),
                Some(id) => vec![Template::from_id(&id).ok_or_else(|| CliError::Usage(format!("unknown template `{id}`")))?],
            };
            let mut failed = 0;
            for rr in 1..=r {
                let rep = verify_templates(&templates, rr)?;
                for t in &rep.results {
                    writeln!(out, "r={rr} {:<28} {:>6} instances {:>4} failed", t.template.id(), t.instances, t.failures.len())
                        .map_err(io)?;
                    for f in &t.failures {
                        writeln!(out, "  FAIL {f}").map_err(io)?;
                    }
                    failed += t.failures.len();
                }
            }
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} relation instances failed")));
            }
        }
        Command::VerifySchur { n, r } => {
            let rep = verify_schur_relations(n, r)?;
            let tri = verify_pi_triangle(r)?;
            let mut failed = 0;
            for (name, report) in [("schur", &rep), ("webs", &tri)] {
                for (fam, count, bad) in report.summary() {
                    writeln!(out, "{name} {fam:<40} {count:>6} checks {bad:>4} failed").map_err(io)?;
                }
                for c in report.failures() {
                    writeln!(out, "  FAIL {}", c.name).map_err(io)?;
                }
                failed += report.failures().len();
            }
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} checks failed")));
            }
        }
        Command::SergeevMul { left, right, r } => {
            let need = SergeevElement::min_rank(&left).max(SergeevElement::min_rank(&right));
            let r = r.unwrap_or(need);
            if r < need {
                return Err(CliError::Usage(format!("the words need rank at least {need}")));
            }
            let a = SergeevElement::parse_word(&left, r)?;
            let b = SergeevElement::parse_word(&right, r)?;
            writeln!(out, "{}", a.multiply(&b)?).map_err(io)?;
        }
        Command::Render { file } => {
            let text = read(&file)?;
            let script =
                parse_webscript(&text).map_err(|source| CliError::Script { path: file.display().to_string(), source })?;
            write!(out, "{}", render(&script)).map_err(io)?;
        }
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the exit code. Output goes
/// to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
