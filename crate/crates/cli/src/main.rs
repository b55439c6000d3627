use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratcalc_core::expr::{
    const_term, eval_expr, parse_expr, LetterAssignment, Localization, RatExpr,
};
use ratcalc_core::fock::{
    self, check_dyck_fixpoint, check_factorization, dyck_enumerate, enumerate_transporter,
    transfer_series, verify_transfer, DyckTag, WeightSystem,
};
use ratcalc_core::json;
use ratcalc_core::linrep::{self, LinRep, Side};
use ratcalc_core::semiring::{
    Boolean, CompletedPositive, Integer, MaxPlus, Natural, Rational, Semiring, SemiringKind,
};
use ratcalc_core::series::TruncatedSeries;
use ratcalc_core::words::Alphabet;
use ratcalc_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ratcalc", version, about = "Rational series over semirings")]
struct Cli {
    /// bool, nat, int, rat, maxplus or cpos
    #[arg(long, global = true, default_value = "rat")]
    semiring: String,

    /// Longest word shown or checked
    #[arg(long, global = true, default_value_t = 6)]
    maxlen: usize,

    /// Highest power of t for transfer series
    #[arg(long, global = true, default_value_t = 10)]
    order: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Comma-separated letters; inferred from the inputs when omitted
    #[arg(long, global = true)]
    alphabet: Option<String>,

    /// Constant terms of the letters, e.g. "a=0,b=1/2"; also fixes the
    /// letter assignment x ↦ Λ(x) + x
    #[arg(long, global = true, default_value = "")]
    lambda: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of an expression under a letter assignment
    Eval {
        #[arg(long)]
        expr: String,
        /// Only this word ("_" is the empty word)
        #[arg(long)]
        word: Option<String>,
        /// Letter assignment as JSON (inline or a path) instead of x ↦ Λ(x) + x
        #[arg(long)]
        theta: Option<String>,
    },
    /// Constant term of an expression
    Const {
        #[arg(long)]
        expr: String,
    },
    /// Expression to linear representation
    Compile {
        #[arg(long)]
        expr: String,
        /// Reduce after every node (rat only)
        #[arg(long)]
        minimal: bool,
    },
    /// Linear representation to expression
    Decompile {
        /// Representation JSON, a path to one, or an expression
        rep: String,
    },
    /// Minimal representation (rat only)
    Reduce { rep: String },
    /// Whether two inputs realize the same series (rat only)
    Equiv { left: String, right: String },
    /// Shift by a word on the left (prefix) or on the right (suffix)
    Shift {
        rep: String,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = SideArg::Prefix)]
        side: SideArg,
    },
    /// Hadamard, shuffle, infiltration or q-shuffle product
    Product {
        left: String,
        right: String,
        /// hadamard, shuffle, infiltration or q=<scalar>
        #[arg(long, default_value = "hadamard")]
        law: String,
    },
    /// Rank of the Hankel block up to --maxlen (rat only)
    Rank { rep: String },
    /// Fock-space transfer coefficients and Dyck codes
    Fock {
        #[command(subcommand)]
        command: FockCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Prefix,
    Suffix,
}

#[derive(Args)]
struct Levels {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    /// unit, boson, random:<seed> or a JSON weight system
    #[arg(long, default_value = "unit")]
    weights: String,
}

#[derive(Subcommand)]
enum FockCommand {
    /// T_{n→n+k} through continued fractions
    Transfer(Levels),
    /// Continued fractions against brute-force enumeration
    Verify(Levels),
    /// Members of a Dyck code, optionally with its equations checked
    Dyck {
        /// D, Dplus or Dminus
        #[arg(long, default_value = "Dplus")]
        family: String,
        /// Depth bound for Dminus
        #[arg(long)]
        depth: Option<usize>,
        /// Also check the self-reproducing equation
        #[arg(long)]
        check: bool,
    },
    /// The transporter set W_{n→m} at one length
    Words {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        len: usize,
    },
    /// Check the factorization of W_{n→n+k} up to --maxlen
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(r: ratcalc_core::Result<T>) -> Outcome<T> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

macro_rules! with_semiring {
    ($kind:expr, $k:ident => $body:expr) => {
        match $kind {
            SemiringKind::Boolean => {
                type $k = Boolean;
                $body
            }
            SemiringKind::Natural => {
                type $k = Natural;
                $body
            }
            SemiringKind::Integer => {
                type $k = Integer;
                $body
            }
            SemiringKind::Rational => {
                type $k = Rational;
                $body
            }
            SemiringKind::MaxPlus => {
                type $k = MaxPlus;
                $body
            }
            SemiringKind::CompletedPositive => {
                type $k = CompletedPositive;
                $body
            }
        }
    };
}

/// A command-line input: inline representation JSON, a path to a JSON
/// file, or an expression.
enum Source {
    Rep(Value),
    Expr(String),
}

fn source(text: &str) -> Outcome<Source> {
    let t = text.trim();
    if t.starts_with('{') {
        return Ok(Source::Rep(usage(
            serde_json::from_str(t).map_err(Error::from),
        )?));
    }
    let p = Path::new(t);
    if p.is_file() {
        let body = std::fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {t}: {e}")))?;
        return Ok(Source::Rep(usage(
            serde_json::from_str(&body).map_err(Error::from),
        )?));
    }
    Ok(Source::Expr(t.to_string()))
}

/// Letters mentioned in an expression: maximal runs are split into single
/// characters, scalar keywords skipped.
fn expr_letters(text: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_alphabetic() {
            let mut j = i;
            while j < chars.len() && chars[j].is_alphabetic() {
                j += 1;
            }
            let run: String = chars[i..j].iter().collect();
            if !matches!(run.as_str(), "inf" | "true" | "false") {
                for c in run.chars() {
                    out.push(c.to_string());
                }
            }
            i = j;
        } else {
            i += 1;
        }
    }
}

struct Context {
    kind: SemiringKind,
    format: Format,
    maxlen: usize,
    order: usize,
    alphabet: Option<String>,
    lambda: String,
}

impl Context {
    /// The alphabet given explicitly, carried by a representation, or
    /// inferred from the expressions and the `--lambda` keys.
    fn alphabet(&self, sources: &[&Source]) -> Outcome<Alphabet> {
        if let Some(a) = &self.alphabet {
            let names: Vec<String> = a.split(',').map(|s| s.trim().to_string()).collect();
            return usage(Alphabet::new(names));
        }
        for s in sources {
            if let Source::Rep(v) = s {
                return usage(json::alphabet_from_json(
                    v.get("alphabet").unwrap_or(&Value::Null),
                ));
            }
        }
        let mut names = vec![];
        for s in sources {
            if let Source::Expr(e) = s {
                expr_letters(e, &mut names);
            }
        }
        for part in self.lambda.split(',') {
            if let Some((name, _)) = part.split_once('=') {
                names.push(name.trim().to_string());
            }
        }
        names.sort();
        names.dedup();
        if names.is_empty() {
            names.push("a".to_string());
        }
        usage(Alphabet::new(names))
    }

    fn localization<K: Semiring>(&self, alphabet: &Alphabet) -> Outcome<Localization<K>> {
        usage(Localization::parse(alphabet.clone(), &self.lambda))
    }

    fn expr<K: Semiring>(&self, text: &str, alphabet: &Alphabet) -> Outcome<RatExpr<K>> {
        usage(parse_expr(text, alphabet))
    }

    fn rep<K: Semiring>(&self, s: &Source, alphabet: &Alphabet) -> Outcome<LinRep<K>> {
        match s {
            Source::Rep(v) => usage(json::rep_from_json(v)),
            Source::Expr(text) => {
                let e = self.expr::<K>(text, alphabet)?;
                Ok(linrep::expr_to_rep(&e, &self.localization(alphabet)?)?)
            }
        }
    }

    fn require_field(&self) -> Outcome<()> {
        if self.kind.is_field() {
            Ok(())
        } else {
            Err(Failure::Domain(Error::NotAField(self.kind.name())))
        }
    }
}

fn series_output<K: Semiring>(ctx: &Context, s: &TruncatedSeries<K>) -> String {
    match ctx.format {
        Format::Json => pretty(&json::series_to_json(s)),
        Format::Table => {
            let mut out = String::new();
            for (w, c) in s.support() {
                writeln!(out, "{}\t{}", s.alphabet().render(&w), c).unwrap();
            }
            out
        }
    }
}

fn rep_output<K: Semiring>(ctx: &Context, r: &LinRep<K>) -> String {
    match ctx.format {
        Format::Json => pretty(&json::rep_to_json(r)),
        Format::Table => {
            let row = |v: &[K]| {
                v.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join("\t")
            };
            let mut out = String::new();
            writeln!(out, "dim\t{}", r.dim()).unwrap();
            writeln!(out, "lambda\t{}", row(r.lambda())).unwrap();
            for (x, m) in r.mus().iter().enumerate() {
                writeln!(out, "mu({})", r.alphabet().name(x)).unwrap();
                for i in 0..m.rows() {
                    writeln!(out, "\t{}", row(m.row(i))).unwrap();
                }
            }
            writeln!(out, "gamma\t{}", row(r.gamma())).unwrap();
            out
        }
    }
}

fn value_output(ctx: &Context, key: &str, v: Value) -> String {
    match ctx.format {
        Format::Json => pretty(&json!({ key: v })),
        Format::Table => match v {
            Value::String(s) => format!("{s}\n"),
            other => format!("{other}\n"),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run_series<K: Semiring>(ctx: &Context, command: &Command) -> Outcome<String> {
    match command {
        Command::Eval { expr, word, theta } => {
            let src = Source::Expr(expr.clone());
            let alphabet = ctx.alphabet(&[&src])?;
            let e = ctx.expr::<K>(expr, &alphabet)?;
            let theta = match theta {
                Some(t) => match source(t)? {
                    Source::Rep(v) => Some(v),
                    Source::Expr(_) => return Err(Failure::Usage("--theta expects JSON".into())),
                },
                None => None,
            };
            let target = match &theta {
                Some(v) => usage(json::alphabet_from_json(
                    v.get("alphabet").unwrap_or(&Value::Null),
                ))?,
                None => alphabet.clone(),
            };
            let word = match word {
                Some(w) => Some(usage(target.parse_word(w))?),
                None => None,
            };
            let maxlen = word.as_ref().map_or(ctx.maxlen, |w| w.len());
            let assignment = match &theta {
                Some(v) => usage(json::assignment_from_json(v, &alphabet, maxlen))?,
                None => LetterAssignment::canonical(&ctx.localization(&alphabet)?, maxlen),
            };
            let s = eval_expr(&e, &assignment, maxlen)?;
            match word {
                Some(w) => Ok(value_output(
                    ctx,
                    "coeff",
                    json::scalar_to_json(s.coeff(&w)?),
                )),
                None => Ok(series_output(ctx, &s)),
            }
        }
        Command::Const { expr } => {
            let src = Source::Expr(expr.clone());
            let alphabet = ctx.alphabet(&[&src])?;
            let e = ctx.expr::<K>(expr, &alphabet)?;
            let c = const_term(&e, &ctx.localization(&alphabet)?)?;
            Ok(value_output(ctx, "const", json::scalar_to_json(&c)))
        }
        Command::Compile { expr, minimal } => {
            let src = Source::Expr(expr.clone());
            let alphabet = ctx.alphabet(&[&src])?;
            if *minimal {
                ctx.require_field()?;
                let e = ctx.expr::<Rational>(expr, &alphabet)?;
                let r = linrep::expr_to_min_rep(&e, &ctx.localization(&alphabet)?)?;
                return Ok(rep_output(ctx, &r));
            }
            Ok(rep_output(ctx, &ctx.rep::<K>(&src, &alphabet)?))
        }
        Command::Decompile { rep } => {
            let src = source(rep)?;
            let alphabet = ctx.alphabet(&[&src])?;
            let r = ctx.rep::<K>(&src, &alphabet)?;
            let e = linrep::rep_to_expr(&r)?;
            let text = e.display(r.alphabet()).to_string();
            Ok(value_output(ctx, "expr", Value::String(text)))
        }
        Command::Shift { rep, word, side } => {
            let src = source(rep)?;
            let alphabet = ctx.alphabet(&[&src])?;
            let r = ctx.rep::<K>(&src, &alphabet)?;
            let u = usage(r.alphabet().parse_word(word))?;
            let side = match side {
                SideArg::Prefix => Side::Prefix,
                SideArg::Suffix => Side::Suffix,
            };
            let shifted = r.shift(&u, side)?;
            Ok(match ctx.format {
                Format::Json => rep_output(ctx, &shifted),
                Format::Table => series_output(ctx, &shifted.to_series(ctx.maxlen)),
            })
        }
        Command::Product { left, right, law } => {
            let (a, b) = (source(left)?, source(right)?);
            let alphabet = ctx.alphabet(&[&a, &b])?;
            let (ra, rb) = (ctx.rep::<K>(&a, &alphabet)?, ctx.rep::<K>(&b, &alphabet)?);
            let r = match law.as_str() {
                "hadamard" => linrep::hadamard_rep(&ra, &rb)?,
                "shuffle" => linrep::qshuffle_rep(&ra, &rb, &K::zero())?,
                "infiltration" => linrep::qshuffle_rep(&ra, &rb, &K::one())?,
                other => match other.strip_prefix("q=") {
                    Some(q) => linrep::qshuffle_rep(&ra, &rb, &usage(K::parse(q))?)?,
                    None => return Err(Failure::Usage(format!("unknown law {other:?}"))),
                },
            };
            Ok(match ctx.format {
                Format::Json => rep_output(ctx, &r),
                Format::Table => series_output(ctx, &r.to_series(ctx.maxlen)),
            })
        }
        Command::Reduce { .. } | Command::Equiv { .. } | Command::Rank { .. } => {
            Err(Failure::Domain(Error::NotAField(ctx.kind.name())))
        }
        Command::Fock { .. } => unreachable!("dispatched separately"),
    }
}

fn run_field(ctx: &Context, command: &Command) -> Outcome<String> {
    match command {
        Command::Reduce { rep } => {
            let src = source(rep)?;
            let alphabet = ctx.alphabet(&[&src])?;
            let r = ctx.rep::<Rational>(&src, &alphabet)?;
            Ok(rep_output(ctx, &linrep::reduce_rep(&r)?))
        }
        Command::Equiv { left, right } => {
            let (a, b) = (source(left)?, source(right)?);
            let alphabet = ctx.alphabet(&[&a, &b])?;
            let (ra, rb) = (
                ctx.rep::<Rational>(&a, &alphabet)?,
                ctx.rep::<Rational>(&b, &alphabet)?,
            );
            Ok(value_output(
                ctx,
                "equivalent",
                json!(linrep::equiv(&ra, &rb)?),
            ))
        }
        Command::Rank { rep } => {
            let src = source(rep)?;
            let alphabet = ctx.alphabet(&[&src])?;
            let r = ctx.rep::<Rational>(&src, &alphabet)?;
            Ok(value_output(
                ctx,
                "rank",
                json!(linrep::hankel_rank(&r, ctx.maxlen)),
            ))
        }
        other => run_series::<Rational>(ctx, other),
    }
}

fn coefficients_output(ctx: &Context, t: &fock::TransferSeries) -> String {
    match ctx.format {
        Format::Json => pretty(&json::transfer_to_json(t)),
        Format::Table => {
            let mut out = String::new();
            for (i, c) in t.coeffs().iter().enumerate() {
                writeln!(out, "t^{i}\t{c}").unwrap();
            }
            out
        }
    }
}

fn words_output(ctx: &Context, words: Vec<String>) -> String {
    match ctx.format {
        Format::Json => pretty(&json!({ "words": words, "count": words.len() })),
        Format::Table => words.iter().map(|w| format!("{w}\n")).collect(),
    }
}

fn run_fock(ctx: &Context, command: &FockCommand) -> Outcome<String> {
    let weights = |text: &str| usage(WeightSystem::parse(text));
    match command {
        FockCommand::Transfer(l) => {
            let t = transfer_series(l.n, l.k, &weights(&l.weights)?, ctx.order)?;
            Ok(coefficients_output(ctx, &t))
        }
        FockCommand::Verify(l) => {
            let r = verify_transfer(l.n, l.k, &weights(&l.weights)?, ctx.order)?;
            let strs = |v: &[Rational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
            Ok(match ctx.format {
                Format::Json => pretty(&json!({
                    "ok": r.ok(),
                    "coefficients": strs(&r.computed),
                    "brute_force": strs(&r.brute_force),
                    "mismatches": r.mismatches,
                    "weights_nonzero": r.weights_nonzero,
                    "strict_support": r.strict_support,
                    "support_violations": r.support_violations,
                })),
                Format::Table => {
                    let mut out = String::new();
                    writeln!(out, "i\tcontinued fraction\tbrute force").unwrap();
                    for i in 0..r.computed.len() {
                        writeln!(out, "{i}\t{}\t{}", r.computed[i], r.brute_force[i]).unwrap();
                    }
                    if !r.strict_support.is_empty() {
                        writeln!(
                            out,
                            "support strictly inside W at lengths {:?}",
                            r.strict_support
                        )
                        .unwrap();
                    }
                    writeln!(out, "{}", if r.ok() { "ok" } else { "MISMATCH" }).unwrap();
                    out
                }
            })
        }
        FockCommand::Dyck {
            family,
            depth,
            check,
        } => {
            let mut tag: DyckTag = usage(family.parse())?;
            if let Some(d) = depth {
                tag = match tag {
                    DyckTag::Minus(_) => DyckTag::Minus(Some(*d)),
                    _ => return Err(Failure::Usage("--depth applies to Dminus".into())),
                };
            }
            let lang = dyck_enumerate(tag, ctx.maxlen);
            let words: Vec<String> = lang.words().map(|w| w.to_string()).collect();
            if *check {
                let holds = check_dyck_fixpoint(tag, ctx.maxlen);
                return Ok(match ctx.format {
                    Format::Json => pretty(&json!({ "words": words, "fixpoint": holds })),
                    Format::Table => format!("{}fixpoint\t{holds}\n", words_output(ctx, words)),
                });
            }
            Ok(words_output(ctx, words))
        }
        FockCommand::Words { n, m, len } => {
            let words = enumerate_transporter(*n, *m, *len)
                .iter()
                .map(|w| w.to_string())
                .collect();
            Ok(words_output(ctx, words))
        }
        FockCommand::Factor { n, k } => {
            let holds = check_factorization(*n, *k, ctx.maxlen)?;
            Ok(value_output(ctx, "holds", json!(holds)))
        }
    }
}

fn run(cli: Cli) -> Outcome<String> {
    let kind: SemiringKind = usage(cli.semiring.parse())?;
    let ctx = Context {
        kind,
        format: cli.format,
        maxlen: cli.maxlen,
        order: cli.order,
        alphabet: cli.alphabet,
        lambda: cli.lambda,
    };
    match &cli.command {
        Command::Fock { command } => run_fock(&ctx, command),
        other if kind.is_field() => run_field(&ctx, other),
        other => with_semiring!(kind, K => run_series::<K>(&ctx, other)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
