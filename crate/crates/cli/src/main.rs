//! `profinite-kit`: batch frontend for the profinite toolkit.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

/// Version of the JSON envelope written by every command.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "profinite-kit",
    version,
    about = "Finite semigroups, regular languages and free-group automata"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Syntactic semigroup (monoid when the empty word is accepted) of a regular language.
    Syntactic {
        #[arg(long)]
        lang: String,
        /// Alphabet letters; defaults to the letters of the expression.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Membership of a semigroup in a registered pseudovariety.
    Member {
        /// Semigroup JSON file.
        #[arg(long)]
        table: String,
        #[arg(long)]
        pv: String,
    },
    /// Separation rank and distance of two words.
    Metric {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, default_value = "S")]
        pv: String,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Pro-group closure of a regular language, queried on words.
    Closure {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        alphabet: Option<String>,
        /// Group words to test (`'` marks an inverse, `~` is the empty word).
        #[arg(long = "word")]
        words: Vec<String>,
    },
    /// Whether a word can be separated from a language by a group language.
    Separate {
        #[arg(long)]
        word: String,
        #[arg(long)]
        lang: String,
        #[arg(long)]
        alphabet: Option<String>,
        /// Largest group order searched for a separating morphism (0 skips the search).
        #[arg(long, default_value_t = 6)]
        certificate_order: usize,
    },
    /// The group kernel of a finite monoid.
    Kernel {
        #[arg(long)]
        table: String,
        /// Adjoin a fresh identity before computing.
        #[arg(long)]
        adjoin_identity: bool,
        /// Also compute the kernel through closures and compare.
        #[arg(long)]
        check: bool,
    },
    /// Whether a subset of a monoid is pointlike with respect to groups.
    Pointlike {
        #[arg(long)]
        table: String,
        /// Comma-separated elements.
        #[arg(long)]
        subset: String,
    },
    /// Inevitability of the one-loop or two-vertex graph equations.
    Inevitable {
        #[arg(long)]
        table: String,
        #[arg(long, value_enum)]
        kind: commands::InevitableKind,
        /// Constraint on the loop variable `y` (loop) or on `x` (two-vertex).
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        y: Option<usize>,
        /// Comma-separated constraints on the remaining variables (two-vertex).
        #[arg(long)]
        others: Option<String>,
    },
    /// Monogenic profiles, or the value of a term under an assignment.
    Omega {
        #[arg(long)]
        table: String,
        #[arg(long)]
        element: Option<usize>,
        /// A term such as `(xy)^w x`; requires `--assign`.
        #[arg(long)]
        term: Option<String>,
        /// Assignment such as `x=1,y=0`.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Semigroups of a given order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        count_only: bool,
        /// All associative tables rather than one per isomorphism class.
        #[arg(long)]
        labelled: bool,
    },
    /// Entropy of the sofic shift given by the factorial core of a language.
    Entropy {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Primitivity of a substitution such as `a->ab; b->ba`.
    Primitive {
        #[arg(long)]
        subst: String,
        /// Also list the blocks of this length.
        #[arg(long)]
        blocks: Option<usize>,
    },
}

/// Payload of a successful command, in both output forms.
pub struct Outcome {
    pub data: Value,
    pub text: String,
    pub diagnostics: Vec<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
    diagnostics: Vec<String>,
}

fn threads() -> usize {
    std::env::var("PROFINITE_KIT_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Syntactic { .. } => "syntactic",
        Command::Member { .. } => "member",
        Command::Metric { .. } => "metric",
        Command::Closure { .. } => "closure",
        Command::Separate { .. } => "separate",
        Command::Kernel { .. } => "kernel",
        Command::Pointlike { .. } => "pointlike",
        Command::Inevitable { .. } => "inevitable",
        Command::Omega { .. } => "omega",
        Command::Enumerate { .. } => "enumerate",
        Command::Entropy { .. } => "entropy",
        Command::Primitive { .. } => "primitive",
    }
}

fn dispatch(c: Command) -> profinite::Result<Outcome> {
    use commands as c_;
    match c {
        Command::Syntactic { lang, alphabet } => c_::syntactic(&lang, alphabet.as_deref()),
        Command::Member { table, pv } => c_::member(&table, &pv),
        Command::Metric {
            u,
            v,
            pv,
            max_order,
        } => c_::metric(&u, &v, &pv, max_order),
        Command::Closure {
            lang,
            alphabet,
            words,
        } => c_::closure(&lang, alphabet.as_deref(), &words),
        Command::Separate {
            word,
            lang,
            alphabet,
            certificate_order,
        } => c_::separate(&word, &lang, alphabet.as_deref(), certificate_order),
        Command::Kernel {
            table,
            adjoin_identity,
            check,
        } => c_::kernel(&table, adjoin_identity, check),
        Command::Pointlike { table, subset } => c_::pointlike(&table, &subset),
        Command::Inevitable {
            table,
            kind,
            x,
            y,
            others,
        } => c_::inevitable(&table, kind, x, y, others.as_deref()),
        Command::Omega {
            table,
            element,
            term,
            assign,
        } => c_::omega(&table, element, term.as_deref(), assign.as_deref()),
        Command::Enumerate {
            order,
            count_only,
            labelled,
        } => c_::enumerate(order, count_only, labelled, threads()),
        Command::Entropy { lang, alphabet } => c_::entropy(&lang, alphabet.as_deref()),
        Command::Primitive { subst, blocks } => c_::primitive(&subst, blocks),
    }
}

fn error_value(e: &profinite::Error) -> Value {
    let mut v = json!({ "kind": e.kind(), "message": e.to_string() });
    if let profinite::Error::Syntax { offset, .. } = e {
        v["offset"] = json!(offset);
    }
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let result = dispatch(cli.command);
    let (envelope, text, code) = match result {
        Ok(outcome) => (
            Envelope {
                schema_version: SCHEMA_VERSION,
                command: name,
                status: "ok",
                data: Some(outcome.data),
                error: None,
                diagnostics: outcome.diagnostics.clone(),
            },
            {
                let mut t = outcome.text;
                for d in &outcome.diagnostics {
                    t.push_str(&format!("note: {d}\n"));
                }
                t
            },
            ExitCode::SUCCESS,
        ),
        Err(e) => (
            Envelope {
                schema_version: SCHEMA_VERSION,
                command: name,
                status: "error",
                data: None,
                error: Some(error_value(&e)),
                diagnostics: Vec::new(),
            },
            format!("error: {e}\n"),
            ExitCode::from(1),
        ),
    };
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&envelope).expect("payloads serialize")
        ),
        Format::Text => print!("{text}"),
    }
    code
}
