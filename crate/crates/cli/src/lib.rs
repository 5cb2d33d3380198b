//! Batch frontend for `jacobi-trees`.
//!
//! [`dispatch`] parses an argument vector, runs one command and returns the
//! complete output together with an exit code. Nothing is printed here; the
//! binary writes the buffers only after the command has finished, so a
//! failing command never leaves partial output on stdout.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use jacobi_trees::expr::{parse_decorated_sum, parse_sum};
use jacobi_trees::freelie::{
    expand_tree_sum, graft_sign_exponent, lyndon_words, normalized_words, omega_d, omega_d_annotated, omega_d_inverse,
    HallWord, LieWord,
};
use jacobi_trees::gropes::ForestEncoding;
use jacobi_trees::relations::{
    as_relations, decorated_relations, generalized_stu2_relations, ihx_relations, lie_relations, stu2_relations,
    DecoratedContext, RelationSet, TreeContext,
};
use jacobi_trees::towers::{
    conf_factors, e1_page, first_layer_group, layer_connectivity, layer_factors, FactorDescriptor, GroupShape,
};
use jacobi_trees::tree::enumerate_trees;
use jacobi_trees::{Error, GroupModel, Tree, TreeSum};
use num_bigint::BigInt;
use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exit code and the full contents of both output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn failure(exit_code: i32, stderr: String) -> Self {
        CommandResult { exit_code, stdout: String::new(), stderr }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "jtrees", version, about = "Exact computations with Lie trees, Jacobi trees and their tower data")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// JSON group model used for decorations, e.g. {"kind":"finite","table":..,"inverse":..}.
    #[arg(long, global = true, value_name = "FILE")]
    group: Option<PathBuf>,
    /// Use the cyclic group Z/m for decorations instead of a group file.
    #[arg(long, global = true, value_name = "M", conflicts_with = "group")]
    cyclic: Option<u32>,
    /// Word-length cap for Hall words and free-group decorations.
    #[arg(long = "max-word-len", visible_alias = "max-len", global = true, value_name = "L")]
    max_word_len: Option<usize>,
    /// Seed for `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ContextKind {
    Lie,
    At,
    Decorated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    As,
    Ihx,
    Lie,
    Stu2,
    At,
    Decorated,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank and torsion of Lie(n).
    #[command(after_help = "TSV columns: n, rank, torsion")]
    LieRank {
        #[arg(long)]
        n: u32,
    },
    /// Rank and torsion of the Jacobi-tree group A^T_n.
    #[command(after_help = "TSV columns: n, relations, rank, torsion")]
    AtRank {
        #[arg(long)]
        n: u32,
        /// Use STU relations between any two loop legs of any one-loop diagram.
        #[arg(long)]
        generalized: bool,
    },
    /// Rank and torsion of the decorated group Lie_π(n).
    #[command(after_help = "TSV columns: n, group_order, rank, torsion")]
    DecoratedRank {
        #[arg(long)]
        n: u32,
    },
    /// Coordinates of a sum in a quotient.
    #[command(after_help = "TSV columns: index, basis, coefficient")]
    Reduce {
        #[arg(long, value_enum, default_value = "lie")]
        context: ContextKind,
        /// Label count; inferred from the expression when omitted.
        #[arg(long)]
        n: Option<u32>,
        expr: String,
    },
    /// Whether two sums agree in a quotient.
    #[command(after_help = "TSV columns: equal")]
    Equal {
        #[arg(long, value_enum, default_value = "lie")]
        context: ContextKind,
        #[arg(long)]
        n: Option<u32>,
        left: String,
        right: String,
    },
    /// The signed tree-to-word map, or its inverse.
    #[command(after_help = "TSV columns: tree, d, sign, word, annotated")]
    Omega {
        #[arg(long)]
        d: u32,
        /// Read the argument as a Lie word and return the tree.
        #[arg(long)]
        inverse: bool,
        tree: String,
    },
    /// Lyndon words over k letters with their standard bracketing.
    #[command(after_help = "TSV columns: word, length, bracketing")]
    Hall {
        #[arg(long)]
        k: u32,
    },
    /// Lyndon words in which each of n letters appears.
    #[command(after_help = "TSV columns: word, length, bracketing")]
    Normalized {
        #[arg(long)]
        n: u32,
    },
    /// Factors of the layer F_{n+1}.
    #[command(after_help = "TSV columns: word, length, suspension_degree, loops, base_space")]
    Layers {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Connectivity of the layer F_{n+1}.
    #[command(after_help = "TSV columns: n, d, connectivity")]
    Connectivity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// First nontrivial homotopy group of the layer F_{n+1}.
    #[command(after_help = "TSV columns: n, d, degree, rank, torsion")]
    FirstGroup {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Classification of the E1 page.
    #[command(after_help = "TSV columns: n, t, status, group, word_len_bound, summands")]
    E1 {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        t_max: i64,
        #[arg(long)]
        d: u32,
    },
    /// Summands of the homotopy of configuration spaces.
    #[command(after_help = "TSV columns: alphabet, word, suspension_degree, shift")]
    Conf {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Underlying decorated trees of a grope forest file.
    #[command(after_help = "TSV columns: coefficient, tree (or index, basis, coefficient with --reduce)")]
    Ut {
        file: PathBuf,
        /// Reduce the sum in Lie_π(n) (or A^T_n for trivial decorations with `at`).
        #[arg(long, value_enum)]
        reduce: Option<ContextKind>,
    },
    /// STU² relations of A^T_n.
    #[command(after_help = "TSV columns: index, relation")]
    Stu2Dump {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        generalized: bool,
    },
    /// Relation vectors of a family.
    #[command(after_help = "TSV columns: index, relation")]
    RelationsDump {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "lie")]
        family: FamilyArg,
    },
    /// Randomized consistency checks.
    #[command(after_help = "TSV columns: check, cases, failures")]
    Selftest {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
}

/// Run one command. `args` excludes the program name.
pub fn dispatch<I, S>(args: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("jtrees".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult::ok(rendered),
                _ => CommandResult::failure(EXIT_USAGE, rendered),
            };
        }
    };
    match run(&cli) {
        Ok(out) => CommandResult::ok(out.render(cli.global.format)),
        Err(Failure::Usage(msg)) => CommandResult::failure(EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Domain(msg)) => CommandResult::failure(EXIT_DOMAIN, format!("error: {msg}\n")),
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A table rendered three ways. `json` and `text` default to the rows.
struct Output {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    json: Option<Value>,
    text: Option<String>,
}

impl Output {
    fn table(columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Self {
        Output { columns, rows, json: None, text: None }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    fn with_json(mut self, json: Value) -> Self {
        self.json = Some(json);
        self
    }

    fn records(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.clone())).collect();
                Value::Object(map)
            })
            .collect()
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let value = self.json.clone().unwrap_or_else(|| Value::Array(self.records()));
                format!("{value}\n")
            }
            Format::Tsv => {
                let mut out = self.columns.join("\t");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(cell).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
                out
            }
            Format::Text => match &self.text {
                Some(t) => t.clone(),
                None => {
                    let mut out = String::new();
                    for row in &self.rows {
                        let parts: Vec<String> =
                            self.columns.iter().zip(row).map(|(c, v)| format!("{c}={}", cell(v))).collect();
                        out.push_str(&parts.join(" "));
                        out.push('\n');
                    }
                    out
                }
            },
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn big(v: &BigInt) -> Value {
    // exact values may exceed i64, so numbers travel as JSON numbers only
    // when they fit
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn coordinates_text(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(BigInt::to_string).collect();
    format!("({})\n", parts.join(","))
}

fn labels(n: u32) -> Vec<u32> {
    (1..=n).collect()
}

fn positive(n: u32, name: &str) -> Outcome<u32> {
    if n == 0 {
        Err(Failure::Usage(format!("--{name} must be at least 1")))
    } else {
        Ok(n)
    }
}

fn group_model(g: &Global) -> Outcome<GroupModel> {
    if let Some(m) = g.cyclic {
        return Ok(GroupModel::cyclic(m)?);
    }
    match &g.group {
        None => Ok(GroupModel::Trivial),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
            Ok(GroupModel::from_json(&text)?)
        }
    }
}

fn max_len(g: &Global) -> Outcome<usize> {
    g.max_word_len.ok_or_else(|| Failure::Usage("this command needs --max-word-len".into()))
}

fn shape_row(shape: &GroupShape) -> (Value, Value) {
    (json!(shape.free_rank), bigs(&shape.torsion))
}

fn run(cli: &Cli) -> Outcome<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::LieRank { n } => {
            let n = positive(*n, "n")?;
            let ctx = TreeContext::lie(&labels(n))?;
            let shape = GroupShape { free_rank: ctx.free_rank(), torsion: ctx.torsion().to_vec() };
            let (rank, torsion) = shape_row(&shape);
            Ok(Output::table(vec!["n", "rank", "torsion"], vec![vec![json!(n), rank, torsion]])
                .with_text(format!("{shape}\n")))
        }
        Command::AtRank { n, generalized } => {
            let n = positive(*n, "n")?;
            let ctx = if *generalized { TreeContext::jacobi_generalized(n)? } else { TreeContext::jacobi(n)? };
            let shape = GroupShape { free_rank: ctx.free_rank(), torsion: ctx.torsion().to_vec() };
            let (rank, torsion) = shape_row(&shape);
            Ok(Output::table(
                vec!["n", "relations", "rank", "torsion"],
                vec![vec![json!(n), json!(ctx.relations().len()), rank, torsion]],
            )
            .with_text(format!("{shape}\n")))
        }
        Command::DecoratedRank { n } => {
            let n = positive(*n, "n")?;
            let model = group_model(g)?;
            let ctx = DecoratedContext::decorated(&labels(n), &model, g.max_word_len)?;
            let order = model.elements(g.max_word_len)?.len();
            let shape = GroupShape { free_rank: ctx.free_rank(), torsion: ctx.torsion().to_vec() };
            let (rank, torsion) = shape_row(&shape);
            Ok(Output::table(
                vec!["n", "group_order", "rank", "torsion"],
                vec![vec![json!(n), json!(order), rank, torsion]],
            )
            .with_text(format!("{shape}\n")))
        }
        Command::Reduce { context, n, expr } => reduce(g, *context, *n, expr),
        Command::Equal { context, n, left, right } => {
            let same = equal(g, *context, *n, left, right)?;
            Ok(Output::table(vec!["equal"], vec![vec![json!(same)]])
                .with_json(json!({ "equal": same }))
                .with_text(format!("{same}\n")))
        }
        Command::Omega { d, inverse, tree } => omega(*d, *inverse, tree),
        Command::Hall { k } => Ok(words(lyndon_words(*k, max_len(g)?))),
        Command::Normalized { n } => {
            let n = positive(*n, "n")?;
            Ok(words(normalized_words(&labels(n), max_len(g)?)?))
        }
        Command::Layers { n, d } => {
            let factors = layer_factors(*n, *d, max_len(g)?)?;
            let rows = factors
                .iter()
                .map(|f| {
                    vec![
                        json!(f.word.text()),
                        json!(f.word.len()),
                        json!(f.suspension_degree),
                        json!(f.loop_count),
                        json!(f.base_space()),
                    ]
                })
                .collect();
            Ok(Output::table(vec!["word", "length", "suspension_degree", "loops", "base_space"], rows))
        }
        Command::Connectivity { n, d } => {
            let c = layer_connectivity(*n, *d)?;
            Ok(Output::table(vec!["n", "d", "connectivity"], vec![vec![json!(n), json!(d), json!(c)]])
                .with_text(format!("{c}\n")))
        }
        Command::FirstGroup { n, d } => {
            let model = group_model(g)?;
            let (degree, shape) = first_layer_group(*n, *d, &model, g.max_word_len)?;
            let (rank, torsion) = shape_row(&shape);
            Ok(Output::table(
                vec!["n", "d", "degree", "rank", "torsion"],
                vec![vec![json!(n), json!(d), json!(degree), rank, torsion]],
            )
            .with_text(format!("degree={degree} {shape}\n")))
        }
        Command::E1 { n_max, t_max, d } => {
            let model = group_model(g)?;
            let page = e1_page(*n_max, *t_max, *d, &model, g.max_word_len)?;
            let rows = page
                .iter()
                .map(|e| {
                    vec![
                        json!(e.n),
                        json!(e.t),
                        json!(e.status.to_string()),
                        e.exact_group.as_ref().map_or(Value::Null, |s| json!(s.to_string())),
                        json!(e.word_len_bound),
                        factor_list(&e.summands),
                    ]
                })
                .collect();
            Ok(Output::table(vec!["n", "t", "status", "group", "word_len_bound", "summands"], rows))
        }
        Command::Conf { n, d } => {
            let c = conf_factors(*n, *d, max_len(g)?)?;
            let mut rows = Vec::new();
            for _ in 0..c.base_copies {
                rows.push(vec![Value::Null, json!("π_*M"), Value::Null, json!(0)]);
            }
            for (i, factors) in &c.word_factors {
                for f in factors {
                    rows.push(vec![
                        json!(i),
                        json!(f.word.text()),
                        json!(f.suspension_degree),
                        json!(c.homotopy_shift),
                    ]);
                }
            }
            Ok(Output::table(vec!["alphabet", "word", "suspension_degree", "shift"], rows))
        }
        Command::Ut { file, reduce: target } => ut(g, file, *target),
        Command::Stu2Dump { n, generalized } => {
            let n = positive(*n, "n")?;
            let rels = if *generalized { generalized_stu2_relations(n)? } else { stu2_relations(n)? };
            Ok(dump(&rels))
        }
        Command::RelationsDump { n, family } => {
            let n = positive(*n, "n")?;
            let l = labels(n);
            Ok(match family {
                FamilyArg::As => dump(&as_relations(&l)?),
                FamilyArg::Ihx => dump(&ihx_relations(&l)?),
                FamilyArg::Lie => dump(&lie_relations(&l)?),
                FamilyArg::Stu2 => dump(&stu2_relations(n)?),
                FamilyArg::At => dump(&TreeContext::jacobi(n)?.relations().clone()),
                FamilyArg::Decorated => dump(&decorated_relations(&l, &group_model(g)?, g.max_word_len)?),
            })
        }
        Command::Selftest { samples, n_max } => selftest(g.seed, *samples, *n_max),
    }
}

fn factor_list(factors: &[FactorDescriptor]) -> Value {
    Value::Array(factors.iter().map(|f| json!(f.to_string())).collect())
}

fn words(ws: Vec<HallWord>) -> Output {
    let rows = ws.iter().map(|w| vec![json!(w.text()), json!(w.len()), json!(w.bracketing().to_string())]).collect();
    Output::table(vec!["word", "length", "bracketing"], rows)
}

fn dump<K: Ord + Clone + std::fmt::Display>(rels: &RelationSet<K>) -> Output {
    let rows = rels.vectors.iter().enumerate().map(|(i, v)| vec![json!(i), json!(v.to_string())]).collect();
    Output::table(vec!["index", "relation"], rows).with_text(rels.export())
}

fn infer_n(n: Option<u32>, found: Option<std::collections::BTreeSet<u32>>) -> Outcome<u32> {
    match (n, found) {
        (Some(n), _) => positive(n, "n"),
        (None, Some(set)) => Ok(set.len() as u32),
        (None, None) => Err(Failure::Usage("cannot infer --n from the zero sum".into())),
    }
}

fn reduced(coords: Vec<BigInt>, basis: Option<Vec<String>>) -> Output {
    let rows = coords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let b = basis.as_ref().map_or(Value::Null, |b| json!(b[i]));
            vec![json!(i), b, big(c)]
        })
        .collect();
    let text = coordinates_text(&coords);
    let json = json!({ "coordinates": bigs(&coords), "basis": basis });
    Output::table(vec!["index", "basis", "coefficient"], rows).with_text(text).with_json(json)
}

fn basis_strings<K: std::fmt::Display>(b: Option<&[K]>) -> Option<Vec<String>> {
    b.map(|b| b.iter().map(ToString::to_string).collect())
}

fn tree_context(kind: ContextKind, n: u32) -> Outcome<TreeContext> {
    Ok(match kind {
        ContextKind::At => TreeContext::jacobi(n)?,
        _ => TreeContext::lie(&labels(n))?,
    })
}

fn reduce(g: &Global, kind: ContextKind, n: Option<u32>, expr: &str) -> Outcome<Output> {
    if kind == ContextKind::Decorated {
        let model = group_model(g)?;
        let s = parse_decorated_sum(expr, &model)?;
        let n = infer_n(n, s.label_set()?)?;
        let ctx = DecoratedContext::decorated(&labels(n), &model, g.max_word_len)?;
        return Ok(reduced(ctx.reduce(&s)?, basis_strings(ctx.basis_elements())));
    }
    let s = parse_sum(expr)?;
    let n = infer_n(n, s.label_set()?)?;
    let ctx = tree_context(kind, n)?;
    Ok(reduced(ctx.reduce(&s)?, basis_strings(ctx.basis_elements())))
}

fn equal(g: &Global, kind: ContextKind, n: Option<u32>, left: &str, right: &str) -> Outcome<bool> {
    if kind == ContextKind::Decorated {
        let model = group_model(g)?;
        let (a, b) = (parse_decorated_sum(left, &model)?, parse_decorated_sum(right, &model)?);
        let n = infer_n(n, a.checked_sub(&b)?.label_set()?.or(a.label_set()?).or(b.label_set()?))?;
        let ctx = DecoratedContext::decorated(&labels(n), &model, g.max_word_len)?;
        return Ok(ctx.equal(&a, &b)?);
    }
    let (a, b) = (parse_sum(left)?, parse_sum(right)?);
    let n = infer_n(n, a.label_set()?.or(b.label_set()?))?;
    Ok(tree_context(kind, n)?.equal(&a, &b)?)
}

fn single_tree(text: &str) -> Outcome<Tree> {
    let s = parse_sum(text)?;
    let single = match s.iter().next() {
        Some((t, c)) if s.len() == 1 && *c == BigInt::from(1) => Some(t.clone()),
        _ => None,
    };
    single.ok_or_else(|| Failure::Domain(format!("`{text}` is not a single tree")))
}

fn omega(d: u32, inverse: bool, text: &str) -> Outcome<Output> {
    let tree = single_tree(text)?;
    let columns = vec!["tree", "d", "sign", "word", "annotated"];
    if inverse {
        let word = LieWord::from(&tree);
        let (sign, back) = omega_d_inverse(&word, d)?;
        let row = vec![json!(back.to_string()), json!(d), json!(sign.to_int()), json!(word.to_string()), Value::Null];
        let s = if sign.to_int() < 0 { "-" } else { "+" };
        return Ok(Output::table(columns, vec![row]).with_text(format!("{s}{back}\n")));
    }
    let w = omega_d(&tree, d);
    let annotated = omega_d_annotated(&tree, d);
    let row = vec![
        json!(tree.to_string()),
        json!(d),
        json!(w.sign.to_int()),
        json!(w.word.to_string()),
        json!(annotated.to_string()),
    ];
    Ok(Output::table(columns, vec![row]).with_text(format!("{w}\n{annotated}\n")))
}

fn ut(g: &Global, file: &PathBuf, target: Option<ContextKind>) -> Outcome<Output> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Domain(format!("cannot read {}: {e}", file.display())))?;
    let forest = ForestEncoding::from_json(&text)?;
    let sum = forest.ut();
    let labels = labels(forest.n());
    match target {
        None => {
            let rows = sum.iter().map(|(t, c)| vec![big(c), json!(t.to_string())]).collect();
            Ok(Output::table(vec!["coefficient", "tree"], rows).with_text(format!("{sum}\n")))
        }
        Some(ContextKind::At) => {
            if !matches!(forest.model(), GroupModel::Trivial) {
                return Err(Failure::Domain("A^T_n takes undecorated forests".into()));
            }
            let plain: TreeSum = sum.map_keys(|t| t.tree().clone());
            let ctx = TreeContext::jacobi(forest.n())?;
            Ok(reduced(ctx.reduce(&plain)?, None))
        }
        Some(_) => {
            let ctx = DecoratedContext::decorated(&labels, forest.model(), g.max_word_len)?;
            Ok(reduced(ctx.reduce(&sum)?, basis_strings(ctx.basis_elements())))
        }
    }
}

fn random_sum(rng: &mut ChaCha8Rng, trees: &[Tree], terms: usize) -> TreeSum {
    let mut s = TreeSum::zero();
    for _ in 0..terms {
        let t = trees.choose(rng).expect("nonempty").clone();
        s.add_term(t, BigInt::from(rng.random_range(-3i64..=3)));
    }
    s
}

fn selftest(seed: u64, samples: usize, n_max: u32) -> Outcome<Output> {
    let n_max = positive(n_max, "n-max")?.min(5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut failures_total = 0;
    let mut record = |rows: &mut Vec<Vec<Value>>, name: String, cases: usize, failures: usize| {
        failures_total += failures;
        rows.push(vec![json!(name), json!(cases), json!(failures)]);
    };
    for n in 1..=n_max {
        let l = labels(n);
        let trees = enumerate_trees(&l)?;
        let ctx = TreeContext::lie(&l)?;
        let rels = &ctx.relations().vectors;
        let mut failures = 0;
        for i in 0..samples {
            let a = random_sum(&mut rng, &trees, 4);
            let mut b = random_sum(&mut rng, &trees, 4);
            if i % 2 == 0 && !rels.is_empty() {
                // b = a + random relations, equal by construction
                b = a.clone();
                for _ in 0..3 {
                    let r = rels.choose(&mut rng).expect("nonempty");
                    b = &b + &r.scale(&BigInt::from(rng.random_range(-2i64..=2)));
                }
            }
            let oracle = expand_tree_sum(&(&a - &b)).is_zero();
            if ctx.equal(&a, &b)? != oracle {
                failures += 1;
            }
        }
        record(&mut rows, format!("lie-equal-n{n}"), samples, failures);
    }
    let mut cases = 0;
    let mut failures = 0;
    for n in 2..=n_max.min(6) {
        for t in enumerate_trees(&labels(n))? {
            if let Tree::Graft(a, b) = &t {
                for d in 2..=5 {
                    cases += 1;
                    let total = graft_sign_exponent(&a.leaves(), &b.leaves(), d)
                        + graft_sign_exponent(&b.leaves(), &a.leaves(), d);
                    if total != (a.degree() * b.degree()) as u64 * (d as u64 - 2) {
                        failures += 1;
                    }
                }
            }
        }
    }
    record(&mut rows, "sign-identity".into(), cases, failures);
    let (mut cases, mut failures) = (0, 0);
    for n in 1..=n_max.min(4) {
        let ctx = TreeContext::jacobi(n)?;
        for v in &stu2_relations(n)?.vectors {
            cases += 1;
            if ctx.reduce(v)?.iter().any(|c| c != &BigInt::from(0)) {
                failures += 1;
            }
        }
    }
    record(&mut rows, "stu2-vanishes".into(), cases, failures);
    if failures_total > 0 {
        let mut msg = String::from("selftest failed:");
        for r in &rows {
            let _ = write!(msg, " {}={}", cell(&r[0]), cell(&r[2]));
        }
        return Err(Failure::Domain(msg));
    }
    Ok(Output::table(vec!["check", "cases", "failures"], rows))
}
