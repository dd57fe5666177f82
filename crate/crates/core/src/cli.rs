//! Command-line interface.
//!
//! Exit codes: 0 yes or success, 1 no, 2 usage or input error, 3
//! verification failure.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::classify::{classify, TreeClass};
use crate::config::{configuration_to_grid, LinearConfiguration};
use crate::decision::{decide_tree, witness_is_valid, DecideOptions, Outcome};
use crate::degree4::DEFAULT_MAX_ORDER;
use crate::lattice::{apply_transforms, path_like_catalog, transformed_verticals};
use crate::tree::Tree;
use crate::verify::{oracle_check, parse_golden};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pathlike", version, about = "Decide and construct path-like trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the structural class of a tree and its parameterizations.
    Classify { file: PathBuf },
    /// Decide whether a tree is path-like.
    Decide {
        file: PathBuf,
        /// Write the linear configuration to this file on a yes answer.
        #[arg(long, value_name = "OUT")]
        witness: Option<PathBuf>,
        /// Print the certificate.
        #[arg(long)]
        explain: bool,
        /// Answer by lattice enumeration.
        #[arg(long)]
        oracle: bool,
        /// Apply the degree-4 rule only to trees with one degree-4 vertex.
        #[arg(long)]
        strict_paper: bool,
        /// Largest order answered by enumeration.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_ORDER)]
        oracle_cap: usize,
    },
    /// Print the grid embedding of a tree or witness as `v x y` lines.
    Embed {
        file: PathBuf,
        /// Draw the grid instead.
        #[arg(long)]
        ascii: bool,
    },
    /// List the path-like trees of one order.
    Enumerate {
        #[arg(long, value_name = "N")]
        order: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Compare every decision procedure with enumeration.
    OracleCheck {
        #[arg(long, value_name = "N")]
        max_order: usize,
        /// File of `order count` lines to compare against.
        #[arg(long, value_name = "FILE")]
        golden: Option<PathBuf>,
    },
    /// Draw the grid of a witness.
    Render { witness: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn read_tree(path: &Path) -> Result<Tree, Failure> {
    Tree::parse(&read_input(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn is_witness_text(text: &str) -> bool {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with("paths"))
}

fn parse_witness(path: &Path, text: &str) -> Result<LinearConfiguration, Failure> {
    LinearConfiguration::parse_witness(text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn grid_lines(w: &LinearConfiguration, ascii: bool) -> Result<String, Failure> {
    let g = configuration_to_grid(w).map_err(|e| Failure::usage(e.to_string()))?;
    if ascii {
        return Ok(g.embedding.render_ascii(&transformed_verticals(&g.composition, &g.choice)));
    }
    Ok(g.embedding.points().iter().enumerate().map(|(k, (x, y))| format!("{} {x} {y}\n", k + 1)).collect())
}

fn cmd_classify(file: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let t = read_tree(file)?;
    let class = classify(&t);
    let mut text = format!("{}\n", class.tag());
    let params: Vec<String> = match &class {
        TreeClass::CuttedH(ps) => ps.iter().map(ToString::to_string).collect(),
        TreeClass::TypeH(ps) => ps.iter().map(ToString::to_string).collect(),
        TreeClass::TypeHn(ps) => ps.iter().map(ToString::to_string).collect(),
        _ => Vec::new(),
    };
    for p in params {
        text.push_str(&format!("params={p}\n"));
    }
    write_out(out, &text)?;
    Ok(EXIT_YES)
}

fn cmd_decide(
    file: &Path,
    witness: Option<&Path>,
    explain: bool,
    opts: DecideOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let t = read_tree(file)?;
    let d = decide_tree(&t, opts).map_err(|e| Failure::usage(e.to_string()))?;
    let word = match d.outcome {
        Outcome::Yes => "yes",
        Outcome::No => "no",
        Outcome::Unsupported => "unsupported",
        Outcome::Unassembled => "unassembled",
    };
    let mut text = format!("{word}\n");
    if explain {
        text.push_str(&format!("route={}\n", d.route.name()));
        for line in &d.explain {
            text.push_str(line);
            text.push('\n');
        }
    }
    write_out(out, &text)?;
    match d.outcome {
        Outcome::Yes => {
            let w = d.witness.as_ref().expect("yes carries a witness");
            if !witness_is_valid(w, &t) {
                let _ = writeln!(err, "error: witness failed validation");
                return Ok(EXIT_VERIFY);
            }
            if let Some(path) = witness {
                fs::write(path, w.to_witness_text()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            Ok(EXIT_YES)
        }
        Outcome::No => Ok(EXIT_NO),
        Outcome::Unsupported => {
            let _ = writeln!(err, "error: not covered by the chain criterion; rerun with --oracle");
            Ok(EXIT_USAGE)
        }
        Outcome::Unassembled => {
            let _ = writeln!(err, "error: certificate found but no witness could be assembled");
            Ok(EXIT_VERIFY)
        }
    }
}

fn cmd_embed(file: &Path, ascii: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let text = read_input(file)?;
    let w = if is_witness_text(&text) {
        parse_witness(file, &text)?
    } else {
        let t = Tree::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
        let d = decide_tree(&t, DecideOptions::default()).map_err(|e| Failure::usage(e.to_string()))?;
        match d.witness {
            Some(w) => w,
            None => {
                let _ = writeln!(err, "tree is not path-like");
                return Ok(EXIT_NO);
            }
        }
    };
    write_out(out, &grid_lines(&w.normalized(), ascii)?)?;
    Ok(EXIT_YES)
}

fn cmd_enumerate(order: usize, count_only: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    if order == 0 {
        return Err(Failure::usage("--order must be positive"));
    }
    let catalog = path_like_catalog(order);
    if count_only {
        write_out(out, &format!("{}\n", catalog.len()))?;
        return Ok(EXIT_YES);
    }
    let blocks: Vec<String> = catalog
        .values()
        .map(|(c, tc)| apply_transforms(c, tc).expect("catalog entries are consistent").to_text())
        .collect();
    write_out(out, &blocks.join("\n"))?;
    Ok(EXIT_YES)
}

fn cmd_oracle_check(max_order: usize, golden: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    if max_order < 4 {
        return Err(Failure::usage("--max-order must be at least 4"));
    }
    let golden = match golden {
        Some(p) => Some(parse_golden(&read_input(p)?).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let mut report = oracle_check(max_order);
    if let Some(g) = golden {
        report.compare_golden(&g);
    }
    write_out(out, &report.render())?;
    Ok(if report.is_clean() { EXIT_YES } else { EXIT_VERIFY })
}

fn cmd_render(file: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = read_input(file)?;
    let w = parse_witness(file, &text)?;
    write_out(out, &grid_lines(&w.normalized(), true)?)?;
    Ok(EXIT_YES)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::usage(e.to_string()))
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_YES
                }
                _ => {
                    let msg = e.to_string();
                    let _ = writeln!(err, "{}", msg.lines().next().unwrap_or("error: invalid arguments"));
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Classify { file } => cmd_classify(&file, out),
        Command::Decide { file, witness, explain, oracle, strict_paper, oracle_cap } => {
            let opts = DecideOptions { oracle, strict: strict_paper, oracle_cap };
            cmd_decide(&file, witness.as_deref(), explain, opts, out, err)
        }
        Command::Embed { file, ascii } => cmd_embed(&file, ascii, out, err),
        Command::Enumerate { order, count_only } => cmd_enumerate(order, count_only, out),
        Command::OracleCheck { max_order, golden } => cmd_oracle_check(max_order, golden.as_deref(), out),
        Command::Render { witness } => cmd_render(&witness, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
