use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clo_core::algebra::{
    check_identity, gamma_table, gnl, green_data, validate_axioms, Elem, FiniteCircleAlgebra, IdentityTag, Outcome,
    PropertyReport,
};
use clo_core::constructions::{
    block_product_with, build_sn, builtin, direct_product, divides, generated_subalgebra_with, quotient,
    syntactic_quotient, BlockElem, BlockOptions, BlockShuffle, DivisionResult, SubalgebraOptions,
};
use clo_core::io::{format_algebra, load_algebra_with};
use clo_core::logic::{compile, fragment_of, mc_finite, mc_term_onevar, parse_formula, Assignment, Strategy};
use clo_core::terms::{
    directed_rank_of, eval_term, finite_witness, member, parse_term, rank_of, transduce, Direction, Morphism, Recognizer,
    Term,
};

const SUBSET_BUDGET: u64 = 1 << 16;

#[derive(Parser)]
#[command(name = "clo", version, about = "Finite circle-algebras over countable words")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct Source {
    /// Builtin algebra, `name` or `name:n`.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// An `.alg` file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Skip axiom validation when loading a file.
    #[arg(long)]
    no_validate: bool,
}

#[derive(Args)]
struct Hom {
    #[command(flatten)]
    source: Source,
    /// Letter images `letter=element`, repeatable or comma-separated.
    #[arg(long = "map", value_delimiter = ',', required = true)]
    map: Vec<String>,
    /// A term, or `@path` to read it from a file.
    #[arg(long)]
    term: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Omega,
    Omegastar,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShuffleArg {
    Contextual,
    Undefined,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a circle-algebra.
    Validate(Source),
    /// Identity checks, Green summary and gap-nesting level.
    Classify(Source),
    /// Green's R, L, H and J classes.
    Green(Source),
    /// Gap-nesting level.
    Gnl(Source),
    /// The rows γ0, γ1, … until they stabilize.
    Gamma(Source),
    /// Direct product of two algebras.
    Product {
        /// Builtin name or `.alg` path.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Block product, full or generated from `--gen m:f,…` (f row-major).
    Blockproduct {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, value_enum, default_value_t = ShuffleArg::Contextual)]
        shuffle: ShuffleArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Subalgebra generated by some elements.
    Subalg {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        #[arg(long)]
        no_shuffle_closure: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Quotient by class labels, or the syntactic quotient of a recognizer.
    Quotient {
        #[command(flatten)]
        source: Source,
        /// One class label per element, comma-separated.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["map", "accept"])]
        classes: Vec<usize>,
        /// Letter images for the syntactic quotient.
        #[arg(long, value_delimiter = ',')]
        map: Vec<String>,
        /// Accepting elements, comma-separated.
        #[arg(long, value_delimiter = ',')]
        accept: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Whether `--left` divides `--right`.
    Divides {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Print a builtin algebra, or list them.
    Builtin {
        spec: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// The subword quotient of level `n` over an alphabet.
    Sn {
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Value of a term under a morphism.
    Eval(Hom),
    /// Whether a recognizer accepts a term.
    Member {
        #[command(flatten)]
        hom: Hom,
        /// Accepting elements, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        accept: Vec<String>,
    },
    /// Rank (or directed rank) of the positions carrying some letters.
    Rank {
        #[arg(long)]
        term: String,
        #[arg(long, value_delimiter = ',', required = true)]
        letters: Vec<String>,
        #[arg(long, value_enum)]
        direction: Option<DirArg>,
    },
    /// A finite word with the same subwords of length at most `n`.
    Witness {
        #[arg(long)]
        term: String,
        #[arg(long)]
        n: usize,
    },
    /// Label every position with its prefix and suffix values.
    Transduce(Hom),
    /// Compile a sentence into a recognizer.
    Compile {
        /// A formula, or `@path` to read it from a file.
        formula: String,
        #[arg(long, value_parser = parse_strategy)]
        strategy: Strategy,
        #[arg(long, value_delimiter = ',')]
        alphabet: Vec<String>,
        /// Decide membership of this term instead of printing the recognizer.
        #[arg(long)]
        member: Option<String>,
        /// Write the target algebra here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Model-check a formula on a finite word or (one-variable) on a term.
    Mc {
        formula: String,
        /// Letters as characters, or separated by spaces.
        #[arg(long, conflicts_with = "term")]
        word: Option<String>,
        #[arg(long)]
        term: Option<String>,
        /// Positions of free variables, `x=0`.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
    },
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

/// A command result: text for each format and the exit code.
struct Report {
    tsv: String,
    json: Value,
    code: u8,
}

impl Report {
    fn new(tsv: impl Into<String>, json: Value) -> Self {
        Report {
            tsv: tsv.into(),
            json,
            code: 0,
        }
    }

    fn decision(tsv: impl Into<String>, json: Value, positive: bool) -> Self {
        Report {
            code: if positive { 0 } else { 1 },
            ..Report::new(tsv, json)
        }
    }
}

fn text_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)
            .with_context(|| format!("reading {path}"))?
            .trim()
            .to_string()),
        None => Ok(s.to_string()),
    }
}

fn load(source: &Source) -> Result<FiniteCircleAlgebra> {
    match (&source.builtin, &source.file) {
        (Some(spec), None) => Ok(builtin::builtin(spec)?),
        (None, Some(path)) => Ok(load_algebra_with(path, !source.no_validate)?),
        _ => bail!("give one of --builtin or --file"),
    }
}

/// A builtin name, or a path when a file of that name exists.
fn resolve(spec: &str) -> Result<FiniteCircleAlgebra> {
    if Path::new(spec).is_file() {
        Ok(load_algebra_with(spec, true)?)
    } else {
        Ok(builtin::builtin(spec)?)
    }
}

fn element(alg: &FiniteCircleAlgebra, name: &str) -> Result<Elem> {
    alg.element(name)
        .ok_or_else(|| anyhow!("`{name}` is not an element of {}", alg.name()))
}

fn morphism(alg: FiniteCircleAlgebra, pairs: &[String]) -> Result<Morphism> {
    let mut map = BTreeMap::new();
    for p in pairs {
        let (l, e) = p
            .split_once('=')
            .ok_or_else(|| anyhow!("expected letter=element, got `{p}`"))?;
        map.insert(l.trim().to_string(), element(&alg, e.trim())?);
    }
    Ok(Morphism::new(alg, map)?)
}

fn emit_algebra(alg: &FiniteCircleAlgebra, output: &Option<PathBuf>) -> Result<Report> {
    let text = format_algebra(alg, SUBSET_BUDGET)?;
    match output {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            let msg = format!("wrote\t{}\t{} elements\n", path.display(), alg.len());
            Ok(Report::new(msg, json!({"wrote": path.display().to_string(), "elements": alg.len()})))
        }
        None => {
            let value: Value = serde_json::from_str(&text)?;
            Ok(Report::new(text, value))
        }
    }
}

fn names(alg: &FiniteCircleAlgebra, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| alg.name_of(x).to_string()).collect()
}

fn report_json(alg: &FiniteCircleAlgebra, r: &PropertyReport) -> Value {
    let rows: Vec<Value> = r
        .results
        .iter()
        .map(|c| {
            let (status, detail) = match &c.outcome {
                Outcome::Pass => ("pass", Value::Null),
                Outcome::Fail(i) => ("fail", json!(i.describe(alg))),
                Outcome::Skipped(why) => ("skipped", json!(why)),
            };
            json!({"law": c.law, "status": status, "instances": c.instances, "undefined": c.undefined, "detail": detail})
        })
        .collect();
    json!({"subject": r.subject, "verdict": r.verdict(), "laws": rows})
}

fn verdict_word(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "unknown",
    }
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Validate(src) => {
            let alg = load(&src)?;
            let r = validate_axioms(&alg);
            Ok(Report::decision(r.render(&alg), report_json(&alg, &r), r.verdict() != Some(false)))
        }
        Command::Classify(src) => {
            let alg = load(&src)?;
            let level = gnl(&alg)?;
            let mut tsv = String::new();
            let mut ids = serde_json::Map::new();
            let mut tags = IdentityTag::BASIC.to_vec();
            tags.push(IdentityTag::GapInsensitive(level));
            for tag in tags {
                let v = check_identity(&alg, tag).verdict();
                tsv.push_str(&format!("identity\t{tag}\t{}\n", verdict_word(v)));
                ids.insert(tag.to_string(), json!(v));
            }
            let g = green_data(&alg);
            tsv.push_str(&format!("green\tj_trivial\t{}\n", g.is_j_trivial()));
            tsv.push_str(&format!("green\th_trivial\t{}\n", g.is_h_trivial()));
            tsv.push_str(&format!("green\tj_classes\t{}\n", g.j_classes.len()));
            tsv.push_str(&format!("green\tj_chain\t{}\n", g.j_classes_form_chain()));
            tsv.push_str(&format!("gnl\t{level}\n"));
            let json = json!({
                "algebra": alg.name(),
                "elements": alg.len(),
                "identities": ids,
                "green": {
                    "j_trivial": g.is_j_trivial(),
                    "h_trivial": g.is_h_trivial(),
                    "j_classes": g.j_classes.len(),
                    "j_chain": g.j_classes_form_chain(),
                },
                "gnl": level,
            });
            Ok(Report::new(tsv, json))
        }
        Command::Green(src) => {
            let alg = load(&src)?;
            let g = green_data(&alg);
            let mut tsv = String::new();
            let mut obj = serde_json::Map::new();
            for (rel, classes) in [("R", &g.r_classes), ("L", &g.l_classes), ("H", &g.h_classes), ("J", &g.j_classes)] {
                let named: Vec<Vec<String>> = classes.iter().map(|c| names(&alg, c)).collect();
                for c in &named {
                    tsv.push_str(&format!("{rel}\t{}\n", c.join(" ")));
                }
                obj.insert(rel.to_string(), json!(named));
            }
            Ok(Report::new(tsv, Value::Object(obj)))
        }
        Command::Gnl(src) => {
            let alg = load(&src)?;
            let n = gnl(&alg)?;
            Ok(Report::new(format!("{n}\n"), json!({"algebra": alg.name(), "gnl": n})))
        }
        Command::Gamma(src) => {
            let alg = load(&src)?;
            let rows = gamma_table(&alg)?;
            let mut tsv = String::from("element");
            for i in 0..rows.len() {
                tsv.push_str(&format!("\tgamma{i}"));
            }
            tsv.push('\n');
            for x in alg.elements() {
                tsv.push_str(alg.name_of(x));
                for row in &rows {
                    tsv.push('\t');
                    tsv.push_str(alg.name_of(row[x]));
                }
                tsv.push('\n');
            }
            let json_rows: Vec<Vec<String>> = rows.iter().map(|r| names(&alg, r)).collect();
            Ok(Report::new(tsv, json!({"elements": alg.names(), "rows": json_rows})))
        }
        Command::Product { left, right, output } => {
            let p = direct_product(&resolve(&left)?, &resolve(&right)?);
            emit_algebra(&p, &output)
        }
        Command::Blockproduct {
            left,
            right,
            gens,
            shuffle,
            output,
        } => {
            let (m, n) = (resolve(&left)?, resolve(&right)?);
            let opts = BlockOptions {
                shuffle: match shuffle {
                    ShuffleArg::Contextual => BlockShuffle::Contextual,
                    ShuffleArg::Undefined => BlockShuffle::Undefined,
                },
                ..BlockOptions::default()
            };
            let parsed = gens
                .iter()
                .map(|g| {
                    let (mm, f) = g
                        .split_once(':')
                        .ok_or_else(|| anyhow!("expected m:f1,f2,… got `{g}`"))?;
                    let f = f.split(',').map(|v| element(&n, v.trim())).collect::<Result<Vec<_>>>()?;
                    Ok(BlockElem {
                        m: element(&m, mm.trim())?,
                        f,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let bp = block_product_with(&m, &n, (!parsed.is_empty()).then_some(parsed.as_slice()), &opts)?;
            emit_algebra(&bp.algebra, &output)
        }
        Command::Subalg {
            source,
            gens,
            no_shuffle_closure,
            output,
        } => {
            let alg = load(&source)?;
            let gens = gens.iter().map(|g| element(&alg, g.trim())).collect::<Result<Vec<_>>>()?;
            let opts = SubalgebraOptions {
                shuffle_closure: !no_shuffle_closure,
                ..SubalgebraOptions::default()
            };
            let sub = generated_subalgebra_with(&alg, &gens, &opts)?;
            emit_algebra(&sub.algebra, &output)
        }
        Command::Quotient {
            source,
            classes,
            map,
            accept,
            output,
        } => {
            let alg = load(&source)?;
            if !classes.is_empty() {
                let q = quotient(&alg, &classes)?;
                return emit_algebra(&q.algebra, &output);
            }
            if map.is_empty() {
                bail!("give --classes, or --map with --accept");
            }
            let accepting = accept.iter().map(|a| element(&alg, a.trim())).collect::<Result<BTreeSet<_>>>()?;
            let r = Recognizer::new(morphism(alg, &map)?, accepting)?;
            let q = syntactic_quotient(&r)?;
            emit_algebra(&q.algebra, &output)
        }
        Command::Divides { left, right } => {
            let (a, b) = (resolve(&left)?, resolve(&right)?);
            match divides(&a, &b) {
                DivisionResult::Divides(w) => {
                    let mut tsv = String::from("divides\ttrue\n");
                    let mut pairs = Vec::new();
                    for (&s, &img) in w.subalgebra.iter().zip(&w.map) {
                        tsv.push_str(&format!("maps\t{}\t{}\n", b.name_of(s), a.name_of(img)));
                        pairs.push(json!([b.name_of(s), a.name_of(img)]));
                    }
                    Ok(Report::new(tsv, json!({"divides": true, "witness": pairs})))
                }
                DivisionResult::DoesNotDivide => Ok(Report::decision("divides\tfalse\n", json!({"divides": false}), false)),
                DivisionResult::Indeterminate(why) => bail!("indeterminate: {why}"),
            }
        }
        Command::Builtin { spec, list } => match (spec, list) {
            (_, true) | (None, false) => {
                let tsv: String = builtin::BUILTIN_NAMES.iter().map(|n| format!("{n}\n")).collect();
                Ok(Report::new(tsv, json!(builtin::BUILTIN_NAMES)))
            }
            (Some(spec), false) => emit_algebra(&builtin::builtin(&spec)?, &None),
        },
        Command::Sn { alphabet, n, output } => {
            let sq = build_sn(&alphabet, n)?;
            emit_algebra(&sq.algebra, &output)
        }
        Command::Eval(hom) => {
            let h = morphism(load(&hom.source)?, &hom.map)?;
            let t = parse_term(&text_arg(&hom.term)?)?;
            let v = h.target.name_of(eval_term(&t, &h)?).to_string();
            Ok(Report::new(format!("{v}\n"), json!({"value": v})))
        }
        Command::Member { hom, accept } => {
            let alg = load(&hom.source)?;
            let accepting = accept.iter().map(|a| element(&alg, a.trim())).collect::<Result<BTreeSet<_>>>()?;
            let r = Recognizer::new(morphism(alg, &hom.map)?, accepting)?;
            let t = parse_term(&text_arg(&hom.term)?)?;
            let ok = member(&t, &r)?;
            Ok(accept_report(ok))
        }
        Command::Rank {
            term,
            letters,
            direction,
        } => {
            let t = parse_term(&text_arg(&term)?)?;
            let set: BTreeSet<String> = letters.into_iter().collect();
            let r = match direction {
                None => rank_of(&t, &set),
                Some(d) => {
                    let dir = match d {
                        DirArg::Omega => Direction::Omega,
                        DirArg::Omegastar => Direction::OmegaStar,
                    };
                    directed_rank_of(&t, &set, dir)
                }
            };
            Ok(Report::new(format!("{r}\n"), json!({"rank": r.to_string()})))
        }
        Command::Witness { term, n } => {
            let t = parse_term(&text_arg(&term)?)?;
            let w = finite_witness(&t, n);
            let text = Term::word(&w).to_string();
            Ok(Report::new(format!("{text}\n"), json!({"witness": w})))
        }
        Command::Transduce(hom) => {
            let h = morphism(load(&hom.source)?, &hom.map)?;
            let t = parse_term(&text_arg(&hom.term)?)?;
            let out = transduce(&t, &h)?;
            let named = out.map_letters(&|c| {
                format!("({},{},{})", h.target.name_of(c.left), c.letter, h.target.name_of(c.right))
            });
            let text = named.to_string();
            Ok(Report::new(format!("{text}\n"), json!({"term": text})))
        }
        Command::Compile {
            formula,
            strategy,
            alphabet,
            member: term,
            output,
        } => {
            let phi = parse_formula(&text_arg(&formula)?)?;
            let r = compile(&phi, strategy, &alphabet)?;
            if let Some(path) = &output {
                emit_algebra(r.target(), &Some(path.clone()))?;
            }
            if let Some(t) = term {
                let t = parse_term(&text_arg(&t)?)?;
                return Ok(accept_report(member(&t, &r)?));
            }
            let alg = r.target();
            let mut tsv = format!(
                "strategy\t{strategy}\nfragment\t{}\ntarget\t{}\nelements\t{}\n",
                fragment_of(&phi),
                alg.name(),
                alg.len()
            );
            let mut letters = serde_json::Map::new();
            for (l, &e) in &r.morphism.letter_map {
                tsv.push_str(&format!("letter\t{l}\t{}\n", alg.name_of(e)));
                letters.insert(l.clone(), json!(alg.name_of(e)));
            }
            let acc: Vec<String> = r.accepting.iter().map(|&x| alg.name_of(x).to_string()).collect();
            tsv.push_str(&format!("accept\t{}\n", acc.join(" ")));
            let json = json!({
                "strategy": strategy.to_string(),
                "fragment": fragment_of(&phi).to_string(),
                "target": alg.name(),
                "elements": alg.len(),
                "letters": letters,
                "accept": acc,
            });
            Ok(Report::new(tsv, json))
        }
        Command::Mc {
            formula,
            word,
            term,
            assign,
        } => {
            let phi = parse_formula(&text_arg(&formula)?)?;
            let holds = match (word, term) {
                (Some(w), None) => {
                    let w = text_arg(&w)?;
                    let letters: Vec<String> = if w.contains(char::is_whitespace) {
                        w.split_whitespace().map(String::from).collect()
                    } else {
                        w.chars().map(String::from).collect()
                    };
                    let mut s = Assignment::new();
                    for a in &assign {
                        let (x, p) = a
                            .split_once('=')
                            .ok_or_else(|| anyhow!("expected var=position, got `{a}`"))?;
                        s.insert(x.trim().to_string(), p.trim().parse().context("position")?);
                    }
                    mc_finite(&letters, &phi, &s)?
                }
                (None, Some(t)) => mc_term_onevar(&parse_term(&text_arg(&t)?)?, &phi)?,
                _ => bail!("give one of --word or --term"),
            };
            Ok(Report::decision(format!("{holds}\n"), json!({"holds": holds}), holds))
        }
    }
}

fn accept_report(ok: bool) -> Report {
    let word = if ok { "accept" } else { "reject" };
    Report::decision(format!("{word}\n"), json!({"member": ok}), ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            let text = match format {
                Format::Tsv => r.tsv,
                Format::Json => serde_json::to_string_pretty(&r.json).expect("json values serialize") + "\n",
            };
            // A closed pipe is not worth a panic.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
