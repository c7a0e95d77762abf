use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qq_core::render::{bind_by_name, render_result};
use qq_core::{read_term, read_terms, tokenize, Error, Expansion, QuoterRegistry, SourcePos, Term};

/// Reads terms with quasi quotations and expands or renders them.
#[derive(Debug, Parser)]
#[command(name = "qq", version)]
struct Cli {
    command: Command,

    file: PathBuf,

    /// Comma separated quoter names to enable.
    #[arg(long, value_delimiter = ',', default_value = "html,javascript,sparql")]
    quoters: Vec<String>,

    /// Binds a clause variable for `render`, e.g. `Date='2013-06-20'`.
    #[arg(long = "bind", value_name = "NAME=TERM")]
    bindings: Vec<String>,

    /// Write output to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Read and expand every term; report errors only.
    Check,
    /// Print the tokens of the file.
    Tokens,
    /// Print every term after expansion.
    Expand,
    /// Render html and javascript quotations with the given bindings.
    Render,
}

const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// A failed run: the exit code and the lines to print on stderr.
struct Failure {
    code: u8,
    lines: Vec<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            lines: vec![format!("qq: {}", message.into())],
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            for line in failure.lines {
                eprintln!("{line}");
            }
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.command != Command::Render && !cli.bindings.is_empty() {
        return Err(Failure::usage("--bind is only allowed with render"));
    }
    let registry = QuoterRegistry::standard()
        .select(&cli.quoters)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let bindings = cli
        .bindings
        .iter()
        .map(|b| parse_binding(b))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    let path = cli.file.display().to_string();
    let text = fs::read_to_string(&cli.file).map_err(|e| Failure::usage(format!("{path}: {e}")))?;

    let output = match cli.command {
        Command::Tokens => tokens(&text, &path)?,
        Command::Check => {
            expand_all(&text, &path, &registry)?;
            String::new()
        }
        Command::Expand => expand_all(&text, &path, &registry)?
            .iter()
            .map(|e| e.term.to_clause_string() + "\n")
            .collect(),
        Command::Render => render(&expand_all(&text, &path, &registry)?, &bindings)?,
    };
    if output.is_empty() && cli.output.is_none() {
        return Ok(());
    }
    write_output(cli.output.as_ref(), &output).map_err(Failure::usage)
}

fn write_output(dest: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match dest {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

/// Parses `Name=TermText`.
fn parse_binding(arg: &str) -> Result<(String, Term), String> {
    let (name, value) = arg
        .split_once('=')
        .ok_or_else(|| format!("binding {arg:?} is not of the form Name=Term"))?;
    if name.is_empty() {
        return Err(format!("binding {arg:?} has no variable name"));
    }
    let mut source = value.trim_end().to_string();
    if !source.ends_with('.') || source.ends_with("..") {
        source.push_str(" .");
    }
    let read = read_term(&source, "--bind")
        .map_err(|e| format!("cannot parse binding for {name}: {e}"))?;
    if !read.term.vars().is_empty() {
        return Err(format!("binding for {name} must not contain variables"));
    }
    Ok((name.to_string(), read.term))
}

fn tokens(text: &str, path: &str) -> Result<String, Failure> {
    let tokens = tokenize(text, path).map_err(|e| diagnostics(vec![e.to_string()]))?;
    Ok(tokens
        .iter()
        .map(|t| {
            format!(
                "{}:{}\t{}\t{:?}\n",
                t.pos.line, t.pos.column, t.kind, t.lexeme
            )
        })
        .collect())
}

fn diagnostics(lines: Vec<String>) -> Failure {
    Failure {
        code: EXIT_ERROR,
        lines,
    }
}

/// Positions an error that carries no position of its own at `pos`.
fn located(err: &Error, pos: &SourcePos) -> String {
    match err.pos() {
        Some(_) => err.to_string(),
        None => format!("{pos}: {err}"),
    }
}

/// Reads and expands every term, reporting the first error of each.
fn expand_all(
    text: &str,
    path: &str,
    registry: &QuoterRegistry,
) -> Result<Vec<Expansion>, Failure> {
    let mut expansions = Vec::new();
    let mut errors = Vec::new();
    for read in read_terms(text, path) {
        let expanded = match read {
            Ok(r) => r.expand(registry).map_err(|e| located(&e, &r.pos)),
            Err(e) => Err(e.to_string()),
        };
        match expanded {
            Ok(e) => {
                for w in &e.warnings {
                    eprintln!("{w}");
                }
                expansions.push(e);
            }
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(expansions)
    } else {
        Err(diagnostics(errors))
    }
}

fn render(expansions: &[Expansion], bindings: &[(String, Term)]) -> Result<String, Failure> {
    let mut out = String::new();
    let mut errors = Vec::new();
    let mut rendered = 0;
    for e in expansions {
        let values = bind_by_name(e, bindings.iter().map(|(n, t)| (n.as_str(), t)));
        for result in &e.results {
            match render_result(result, &values) {
                Some(Ok(text)) => {
                    out.push_str(&text);
                    out.push('\n');
                    rendered += 1;
                }
                Some(Err(err)) => errors.push(located(&err, &result.pos)),
                None => {}
            }
        }
    }
    if !errors.is_empty() {
        return Err(diagnostics(errors));
    }
    if rendered == 0 {
        return Err(diagnostics(vec![
            "qq: no html or javascript quotation to render".into(),
        ]));
    }
    Ok(out)
}
