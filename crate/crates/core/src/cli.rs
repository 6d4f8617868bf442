//! The `cfgrank` command line.
//!
//! Exit codes: 0 success, 1 unreadable or syntactically broken grammar file,
//! 2 grammar fails validation, 3 malformed input (index, s-expression, flag,
//! unknown start symbol), 4 tree not generated by the grammar, 5 decode
//! budget exhausted.

use std::ffi::OsString;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::codec::{Codec, DecodeError, EncodeError};
use crate::grammar::{sexpr_to_tree, tree_to_sexpr, DerivationTree, Grammar, SexprError, ValidGrammar};
use crate::lz_codec::LzCodec;
use crate::numerics::Natural;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID_GRAMMAR: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_NOT_GENERATED: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "cfgrank", version, about = "Number the derivation trees of a context-free grammar")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a grammar can be enumerated
    Validate { grammar: PathBuf },
    /// Print the trees for a range of indices
    Enumerate {
        grammar: PathBuf,
        /// First index
        #[arg(long, default_value = "0")]
        from: String,
        /// Number of indices
        #[arg(long, default_value = "100")]
        count: String,
        /// Prefix each line with its index and a tab
        #[arg(long)]
        show_index: bool,
        #[command(flatten)]
        decode: DecodeOpts,
    },
    /// Print the tree for one index
    Decode {
        grammar: PathBuf,
        index: String,
        #[command(flatten)]
        decode: DecodeOpts,
    },
    /// Print the index of a tree given as an s-expression (`-` reads stdin)
    Encode { grammar: PathBuf, tree: String },
    /// Print indices where the LZ decoder and the plain decoder differ
    Diff {
        grammar: PathBuf,
        /// Compare indices 0 to COUNT-1
        #[arg(long, default_value = "100")]
        count: String,
        /// Nonterminal to decode from (default: the grammar's start symbol)
        #[arg(long)]
        start: Option<String>,
    },
}

#[derive(Debug, Args)]
struct DecodeOpts {
    #[arg(long, value_enum, default_value_t = Algorithm::A)]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = Format::Yield)]
    format: Format,
    /// Separator between terminals in yield output
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    sep: String,
    /// Nonterminal to decode from (default: the grammar's start symbol)
    #[arg(long)]
    start: Option<String>,
    /// Maximum rule expansions per tree; 0 means unlimited
    #[arg(long, default_value_t = crate::codec::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Yield,
    Sexp,
    Json,
}

/// A failure that ends the command with a specific exit code.
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Exit { code, message: message.into() }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit::new(EXIT_IO, format!("write failed: {e}"))
    }
}

impl From<DecodeError> for Exit {
    fn from(e: DecodeError) -> Self {
        match e {
            DecodeError::UnknownNonterminal(_) => Exit::new(EXIT_MALFORMED, e.to_string()),
            DecodeError::BudgetExceeded(_) => Exit::new(EXIT_BUDGET, e.to_string()),
        }
    }
}

/// Entry point for the binary: real stdio.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = run(args, &mut io::stdin(), &mut out, &mut err);
    match out.flush() {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => EXIT_IO,
        _ => code,
    }
}

/// Runs one command against the given streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, stdin, out) {
        Ok(code) => code,
        Err(Exit { code, message }) => {
            let _ = writeln!(err, "cfgrank: {message}");
            code
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Exit> {
    match command {
        Command::Validate { grammar } => cmd_validate(&grammar, out),
        Command::Enumerate { grammar, from, count, show_index, decode } => {
            let g = load_valid(&grammar)?;
            let from = parse_index(&from)?;
            let count = parse_index(&count)?;
            cmd_enumerate(&g, from, count, show_index, &decode, out)
        }
        Command::Decode { grammar, index, decode } => {
            let g = load_valid(&grammar)?;
            let n = parse_index(&index)?;
            let start = start_symbol(&g, decode.start.as_deref())?;
            let tree = decoder(&g, &decode).decode(&start, &n)?;
            writeln!(out, "{}", render(&tree, &decode))?;
            Ok(EXIT_OK)
        }
        Command::Encode { grammar, tree } => {
            let g = load_valid(&grammar)?;
            let text = if tree == "-" {
                let mut s = String::new();
                stdin.read_to_string(&mut s).map_err(|e| Exit::new(EXIT_IO, format!("cannot read stdin: {e}")))?;
                s
            } else {
                tree
            };
            cmd_encode(&g, &text, out)
        }
        Command::Diff { grammar, count, start } => {
            let g = load_valid(&grammar)?;
            let count = parse_index(&count)?;
            let start = start_symbol(&g, start.as_deref())?;
            let rows = LzCodec::new(&g).diff_report(&start, &count)?;
            for r in rows {
                writeln!(out, "{}\t{}\t{}", r.index, r.lz_yield, r.plain_yield)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn load(path: &Path) -> Result<Grammar, Exit> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Exit::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    Grammar::parse(&text).map_err(|e| Exit::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<ValidGrammar, Exit> {
    load(path)?.validate().map_err(|e| Exit::new(EXIT_INVALID_GRAMMAR, format!("{}: {e}", path.display())))
}

fn parse_index(s: &str) -> Result<Natural, Exit> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Exit::new(EXIT_MALFORMED, format!("`{s}` is not a non-negative decimal integer")));
    }
    Ok(s.parse().expect("all digits"))
}

fn start_symbol(g: &ValidGrammar, start: Option<&str>) -> Result<String, Exit> {
    match start {
        None => Ok(g.start_name().to_string()),
        Some(s) if g.id(s).is_some() => Ok(s.to_string()),
        Some(s) => Err(Exit::new(EXIT_MALFORMED, format!("`{s}` is not a nonterminal of the grammar"))),
    }
}

enum Decoder<'g> {
    Plain(Codec<'g>),
    Lz(LzCodec<'g>),
}

impl Decoder<'_> {
    fn decode(&self, v: &str, n: &Natural) -> Result<DerivationTree, DecodeError> {
        match self {
            Decoder::Plain(c) => c.decode(v, n),
            Decoder::Lz(c) => c.decode(v, n),
        }
    }
}

fn decoder<'g>(g: &'g ValidGrammar, opts: &DecodeOpts) -> Decoder<'g> {
    let budget = (opts.budget > 0).then_some(opts.budget);
    match opts.algorithm {
        Algorithm::A => Decoder::Plain(Codec::new(g).with_budget(budget)),
        Algorithm::B => Decoder::Lz(LzCodec::new(g).with_budget(budget)),
    }
}

fn render(t: &DerivationTree, opts: &DecodeOpts) -> String {
    match opts.format {
        Format::Yield => t.yield_string(&opts.sep),
        Format::Sexp => tree_to_sexpr(t),
        Format::Json => serde_json::to_string(t).expect("trees always serialize"),
    }
}

fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<i32, Exit> {
    let g = load(path)?;
    let report = g.report();
    for st in &report.statuses {
        let status = if !st.reachable {
            "unreachable (ignored)".to_string()
        } else if st.is_ok() {
            "ok".to_string()
        } else {
            report
                .violations
                .iter()
                .filter(|v| v.nonterminal == st.name)
                .map(|v| v.check.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        };
        writeln!(out, "{}: {status}", st.name)?;
    }
    if report.is_valid() {
        let n = report.statuses.iter().filter(|s| s.reachable).count();
        writeln!(out, "{n} nonterminals OK")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "{} violation(s)", report.violations.len())?;
        Ok(EXIT_INVALID_GRAMMAR)
    }
}

fn cmd_enumerate(
    g: &ValidGrammar,
    from: Natural,
    count: Natural,
    show_index: bool,
    opts: &DecodeOpts,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let start = start_symbol(g, opts.start.as_deref())?;
    let dec = decoder(g, opts);
    let end = &from + count;
    let mut i = from;
    while i < end {
        let t = dec.decode(&start, &i)?;
        let line = render(&t, opts);
        let written = if show_index { writeln!(out, "{i}\t{line}") } else { writeln!(out, "{line}") };
        if let Err(e) = written {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return Ok(EXIT_OK);
            }
            return Err(e.into());
        }
        i += 1u32;
    }
    Ok(EXIT_OK)
}

fn cmd_encode(g: &ValidGrammar, text: &str, out: &mut dyn Write) -> Result<i32, Exit> {
    let tree = sexpr_to_tree(g, text).map_err(|e| match e {
        SexprError::Syntax { .. } => Exit::new(EXIT_MALFORMED, e.to_string()),
        SexprError::Tree(_) => Exit::new(EXIT_NOT_GENERATED, e.to_string()),
    })?;
    let n = Codec::new(g).encode(&tree).map_err(|e| match e {
        EncodeError::Tree(_) => Exit::new(EXIT_NOT_GENERATED, e.to_string()),
        EncodeError::Stack(_) => Exit::new(EXIT_MALFORMED, e.to_string()),
    })?;
    writeln!(out, "{n}")?;
    Ok(EXIT_OK)
}
