//! Command-line front end: reads matroid documents (JSON) and prints exact
//! invariants as text or structured JSON. Exit codes: 0 on success, 1 for
//! input problems, 2 when an internal cross-check fails.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matroid_invariants::{
    coalgebra, doc::MatroidDocument, ginv, nbc, os, tutte, Error, GInvariant, GMethod, Int,
    IntBiPoly, IntUniPoly, Matroid, Rat, RankSeq, RatExterior, Subset, SymbolVector,
};

#[derive(Parser)]
#[command(
    name = "matinv",
    version,
    about = "Exact matroid invariants from JSON matroid documents"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial in λ (two routes, cross-checked).
    Charpoly { file: String },
    /// Tutte polynomial in x and y.
    Tutte {
        file: String,
        /// checked cross-verifies all routes and prints once; all prints each.
        #[arg(long, value_enum, default_value_t = TutteMethodArg::Checked)]
        method: TutteMethodArg,
    },
    /// Catalog of subsets containing no broken circuit.
    Nbc {
        file: String,
        /// Group the sets by the flat they span instead of by size.
        #[arg(long)]
        by_flat: bool,
    },
    /// Hilbert series (in t) of the graded algebra on the nbc basis.
    OsHilbert { file: String },
    /// Dimensions of the graded algebra per spanned flat and per degree.
    OsDims { file: String },
    /// Normal form of a product of degree-one generators in the nbc basis.
    OsReduce {
        file: String,
        /// Generator indices in wedge order, e.g. "23" or "2,3".
        #[arg(long)]
        element: String,
    },
    /// Rank-sequence invariant: counts orderings by their rank sequences.
    GInvariant {
        file: String,
        #[arg(long, value_enum, default_value_t = GMethodArg::ChainDp)]
        method: GMethodArg,
        /// Use a paving closed form (the presentation is certified first).
        #[arg(long, value_enum, conflicts_with = "method")]
        closed_form: Option<ClosedFormArg>,
    },
    /// Tutte polynomial obtained by specializing the rank-sequence invariant.
    Specialize { file: String },
    /// Rank-sequence invariant of the dual, computed from the primal one.
    GDual { file: String },
    /// Coefficients of the invariant in the freedom-matroid basis.
    FreedomExpand { file: String },
    /// Tutte polynomial as a certified combination over freedom matroids.
    TutteFreedomBasis { file: String },
    /// Dimension of the span of all Tutte polynomials with given n and rank.
    SpanDim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Check that a combination of rank sequences specializes to zero.
    VerifySyzygy {
        /// Signed combination, e.g. "[1010100] - [1011000] - [1100100] + [1101000]".
        combination: String,
    },
    /// Count generic weightings (unique minimum basis) by value multiset.
    FInvariant {
        file: String,
        /// Largest weight value to enumerate.
        #[arg(long, default_value_t = 2)]
        max_value: u64,
    },
    /// Split into restriction-contraction pairs over all ground-set subsets.
    Comultiply { file: String },
    /// Check the corank-nullity convolution identity, symbolically and at
    /// sampled rational points.
    VerifyConvolution {
        file: String,
        /// Number of pseudorandom rational sample points.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Seed for the sample generator.
        #[arg(long, default_value_t = 24301)]
        seed: u64,
    },
    /// Check the chromatic-polynomial convolution identity for a graph.
    VerifyChromatic {
        file: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 3073)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TutteMethodArg {
    Checked,
    Subsets,
    DeletionContraction,
    Activities,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GMethodArg {
    ChainDp,
    Permutations,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosedFormArg {
    Paving,
    SparsePaving,
}

struct Output {
    text: String,
    json: Value,
}

struct Failure {
    message: String,
    internal: bool,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            internal: e.is_internal(),
            message: e.to_string(),
        }
    }
}

fn main() {
    // die quietly on a closed pipe, like other line-oriented tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            std::process::exit(1);
        }
    };
    match run(&cli.command) {
        Ok(out) => match cli.format {
            Format::Text => println!("{}", out.text),
            Format::Json => println!("{}", out.json),
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(if f.internal { 2 } else { 1 });
        }
    }
}

fn load_doc(path: &str) -> Result<MatroidDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        message: format!("cannot read {path}: {e}"),
        internal: false,
    })?;
    Ok(MatroidDocument::parse(&text)?)
}

fn load(path: &str) -> Result<Matroid, Failure> {
    Ok(load_doc(path)?.build()?)
}

fn join(items: impl IntoIterator<Item = String>, sep: &str) -> String {
    items.into_iter().collect::<Vec<_>>().join(sep)
}

fn set_json(s: Subset) -> Value {
    json!(s.elements().collect::<Vec<_>>())
}

fn uni_json(p: &IntUniPoly, var: &str) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(e, c)| json!({"degree": e[0], "coefficient": c.to_string()}))
        .collect();
    json!({"variable": var, "terms": terms, "text": p.to_text([var])})
}

fn bi_json(p: &IntBiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(e, c)| json!({"x": e[0], "y": e[1], "coefficient": c.to_string()}))
        .collect();
    json!({"variables": ["x", "y"], "terms": terms, "text": p.to_text(["x", "y"])})
}

fn g_json(g: &GInvariant) -> Value {
    let terms: Vec<Value> = g
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(s, c)| json!({"sequence": s.to_string(), "coefficient": c.to_string()}))
        .collect();
    json!({"terms": terms, "text": g.to_text()})
}

fn vector_json(v: &SymbolVector) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(s, c)| json!({"sequence": s.to_string(), "coefficient": c.to_string()}))
        .collect();
    json!({"terms": terms, "text": v.to_text()})
}

/// Elements from "23" (single digits) or "2,3" (comma separated).
fn parse_elements(text: &str) -> Result<Vec<usize>, Error> {
    let text = text.trim();
    let parts: Vec<usize> = if text.contains(',') {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad element {:?}", p.trim())))
            })
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidInput(format!("bad element {ch:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    if parts.is_empty() {
        return Err(Error::InvalidInput("empty element list".into()));
    }
    Ok(parts)
}

/// Signed rational combination of bracketed rank sequences.
fn parse_combination(text: &str) -> Result<SymbolVector, Error> {
    let malformed = |msg: &str| Error::InvalidInput(format!("{msg} in {text:?}"));
    let mut rest = text.trim();
    let mut terms: Vec<(RankSeq, Rat)> = Vec::new();
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(tail) = rest.strip_prefix('+') {
            rest = tail.trim_start();
        } else if let Some(tail) = rest.strip_prefix('-') {
            negative = true;
            rest = tail.trim_start();
        } else if !first {
            return Err(malformed("expected + or - between terms"));
        }
        let split = rest
            .find(|c: char| !(c.is_ascii_digit() || c == '/'))
            .unwrap_or(rest.len());
        let coeff: Rat = if split == 0 {
            Rat::from_integer(Int::from(1))
        } else {
            rest[..split]
                .parse()
                .map_err(|_| malformed("bad coefficient"))?
        };
        rest = rest[split..].trim_start();
        let tail = rest
            .strip_prefix('[')
            .ok_or_else(|| malformed("expected a [sequence]"))?;
        let close = tail.find(']').ok_or_else(|| malformed("unclosed ["))?;
        let seq = RankSeq::parse(tail[..close].trim())?;
        rest = tail[close + 1..].trim_start();
        terms.push((seq, if negative { -coeff } else { coeff }));
        first = false;
    }
    let (n, rank) = match terms.first() {
        Some((seq, _)) => (seq.n(), seq.ones()),
        None => return Err(malformed("empty combination")),
    };
    SymbolVector::from_terms(n, rank, terms)
}

/// Corank-1 flats of size at least the rank, certified by rebuilding the
/// matroid from them as a paving presentation.
fn certified_copoints(m: &Matroid) -> Result<Vec<Vec<usize>>, Failure> {
    let r = m.rank();
    let copoints: Vec<Vec<usize>> = m
        .flat_lattice()
        .flats
        .iter()
        .filter(|f| f.rank + 1 == r && f.set.len() >= r)
        .map(|f| f.set.elements().collect())
        .collect();
    let rebuilt = ginv::paving_matroid(m.n(), r, &copoints)?;
    if &rebuilt != m {
        return Err(Error::NotPaving("the matroid is not paving".into()).into());
    }
    Ok(copoints)
}

fn run(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Charpoly { file } => {
            let m = load(file)?;
            let chi = nbc::char_poly(&m)?;
            Ok(Output {
                text: chi.to_text(["λ"]),
                json: uni_json(&chi, "λ"),
            })
        }
        Command::Tutte { file, method } => {
            let m = load(file)?;
            if *method == TutteMethodArg::All {
                let a = tutte::tutte_via_subsets(&m);
                let b = tutte::tutte_via_deletion_contraction(&m);
                let c = tutte::tutte_via_activities(&m);
                if a != b || a != c {
                    return Err(Error::CrossCheckFailed(
                        "Tutte polynomial methods disagree".into(),
                    )
                    .into());
                }
                let line = a.to_text(["x", "y"]);
                return Ok(Output {
                    text: format!("{line}\n{line}\n{line}\nmethods agree"),
                    json: json!({
                        "methods": ["subsets", "deletion-contraction", "activities"],
                        "agree": true,
                        "polynomial": bi_json(&a),
                    }),
                });
            }
            let (name, t) = match method {
                TutteMethodArg::Checked => ("checked", tutte::tutte(&m)?),
                TutteMethodArg::Subsets => ("subsets", tutte::tutte_via_subsets(&m)),
                TutteMethodArg::DeletionContraction => (
                    "deletion-contraction",
                    tutte::tutte_via_deletion_contraction(&m),
                ),
                TutteMethodArg::Activities => ("activities", tutte::tutte_via_activities(&m)),
                TutteMethodArg::All => unreachable!(),
            };
            let mut json = bi_json(&t);
            json["method"] = json!(name);
            Ok(Output {
                text: t.to_text(["x", "y"]),
                json,
            })
        }
        Command::Nbc { file, by_flat } => {
            let m = load(file)?;
            let cat = nbc::nbc_catalog(&m)?;
            if *by_flat {
                let mut lines = Vec::new();
                let mut groups = Vec::new();
                for (flat, sets) in &cat.by_flat {
                    lines.push(format!(
                        "flat {}: {}",
                        flat.compact(),
                        join(sets.iter().map(|s| s.compact()), " ")
                    ));
                    groups.push(json!({
                        "flat": set_json(*flat),
                        "sets": sets.iter().map(|s| set_json(*s)).collect::<Vec<_>>(),
                    }));
                }
                Ok(Output {
                    text: lines.join("\n"),
                    json: json!({"by_flat": groups}),
                })
            } else {
                let mut lines = vec![format!(
                    "sizes: {}",
                    join(cat.counts_by_size.iter().map(|c| c.to_string()), " ")
                )];
                let mut by_size = Vec::new();
                for k in 0..cat.counts_by_size.len() {
                    let sets: Vec<Subset> =
                        cat.sets.iter().copied().filter(|s| s.len() == k).collect();
                    lines.push(format!(
                        "size {k}: {}",
                        join(sets.iter().map(|s| s.compact()), " ")
                    ));
                    by_size.push(json!(sets.iter().map(|s| set_json(*s)).collect::<Vec<_>>()));
                }
                Ok(Output {
                    text: lines.join("\n"),
                    json: json!({"sizes": cat.counts_by_size, "by_size": by_size}),
                })
            }
        }
        Command::OsHilbert { file } => {
            let m = load(file)?;
            let ctx = os::OsContext::new(&m)?;
            let h = os::hilbert_series(&ctx)?;
            Ok(Output {
                text: h.to_text(["t"]),
                json: uni_json(&h, "t"),
            })
        }
        Command::OsDims { file } => {
            let m = load(file)?;
            let ctx = os::OsContext::new(&m)?;
            let dims = os::os_dimensions(&ctx)?;
            let mut lines: Vec<String> = dims
                .by_flat
                .iter()
                .map(|(f, d)| format!("flat {}: {d}", f.compact()))
                .collect();
            lines.push(format!(
                "degrees: {}",
                join(dims.by_degree.iter().map(|d| d.to_string()), " ")
            ));
            let flats: Vec<Value> = dims
                .by_flat
                .iter()
                .map(|(f, d)| json!({"flat": set_json(*f), "dimension": d}))
                .collect();
            Ok(Output {
                text: lines.join("\n"),
                json: json!({"by_flat": flats, "by_degree": dims.by_degree}),
            })
        }
        Command::OsReduce { file, element } => {
            let m = load(file)?;
            let ctx = os::OsContext::new(&m)?;
            let elements = parse_elements(element)?;
            let mut product = RatExterior::monomial(Subset::EMPTY, Rat::from_integer(Int::from(1)));
            for &e in &elements {
                if e == 0 || e > m.n() {
                    return Err(Error::ElementOutOfRange { element: e, n: m.n() }.into());
                }
                product = product.wedge(&RatExterior::generator(e));
            }
            let reduced = ctx.reduce(&product);
            let mut entries: Vec<(Subset, Rat)> =
                reduced.terms().map(|(s, c)| (s, c.clone())).collect();
            entries.sort_by(|a, b| b.0.glex_cmp(a.0));
            let terms: Vec<Value> = entries
                .iter()
                .map(|(s, c)| json!({"monomial": set_json(*s), "coefficient": c.to_string()}))
                .collect();
            Ok(Output {
                text: reduced.to_text(),
                json: json!({"element": elements, "terms": terms, "text": reduced.to_text()}),
            })
        }
        Command::GInvariant {
            file,
            method,
            closed_form,
        } => {
            let m = load(file)?;
            let g = match closed_form {
                Some(ClosedFormArg::Paving) => {
                    let copoints = certified_copoints(&m)?;
                    ginv::paving_g_from_copoints(m.n(), m.rank(), &copoints)?
                }
                Some(ClosedFormArg::SparsePaving) => {
                    let copoints = certified_copoints(&m)?;
                    if copoints.iter().any(|c| c.len() != m.rank()) {
                        return Err(Error::NotPaving(
                            "a copoint exceeds the rank, so the matroid is not sparse paving"
                                .into(),
                        )
                        .into());
                    }
                    ginv::sparse_paving_g(m.n(), m.rank(), copoints.len())?
                }
                None => {
                    let method = match method {
                        GMethodArg::ChainDp => GMethod::ChainDp,
                        GMethodArg::Permutations => GMethod::Permutations,
                    };
                    ginv::g_invariant(&m, method)?
                }
            };
            Ok(Output {
                text: g.to_text(),
                json: g_json(&g),
            })
        }
        Command::Specialize { file } => {
            let m = load(file)?;
            let g = ginv::g_invariant(&m, GMethod::ChainDp)?;
            let t = ginv::specialize_to_tutte(&g)?;
            Ok(Output {
                text: t.to_text(["x", "y"]),
                json: bi_json(&t),
            })
        }
        Command::GDual { file } => {
            let m = load(file)?;
            let g = ginv::g_invariant(&m, GMethod::ChainDp)?;
            let dual = ginv::g_dual(&g);
            Ok(Output {
                text: dual.to_text(),
                json: g_json(&dual),
            })
        }
        Command::FreedomExpand { file } => {
            let m = load(file)?;
            let g = ginv::g_invariant(&m, GMethod::ChainDp)?;
            let basis = ginv::freedom_expansion(m.n(), m.rank())?;
            let mut v = SymbolVector::zero(m.n(), m.rank());
            for (s, c) in g.terms() {
                let expansion = basis.expansion.get(s).ok_or_else(|| {
                    Error::CrossCheckFailed(format!("no expansion for sequence {s}"))
                })?;
                v.add_scaled(expansion, &Rat::from(c.clone()));
            }
            Ok(Output {
                text: v.to_text(),
                json: vector_json(&v),
            })
        }
        Command::TutteFreedomBasis { file } => {
            let m = load(file)?;
            let v = ginv::tutte_in_freedom_basis(&m)?;
            let mut json = vector_json(&v);
            json["certified"] = json!(true);
            Ok(Output {
                text: v.to_text(),
                json,
            })
        }
        Command::SpanDim { n, r } => {
            let d = ginv::tutte_span_dimension(*n, *r)?;
            Ok(Output {
                text: d.to_string(),
                json: json!({"n": n, "r": r, "dimension": d}),
            })
        }
        Command::VerifySyzygy { combination } => {
            let v = parse_combination(combination)?;
            let holds = ginv::verify_syzygy(&v);
            Ok(Output {
                text: if holds { "syzygy holds" } else { "not a syzygy" }.into(),
                json: json!({"combination": vector_json(&v), "syzygy": holds}),
            })
        }
        Command::FInvariant { file, max_value } => {
            let m = load(file)?;
            let counts = ginv::f_invariant_truncated(&m, *max_value)?;
            let text = if counts.is_empty() {
                "none".to_string()
            } else {
                join(
                    counts.iter().map(|(values, count)| {
                        format!(
                            "{count} x {{{}}}",
                            join(values.iter().map(|v| v.to_string()), ",")
                        )
                    }),
                    "\n",
                )
            };
            let entries: Vec<Value> = counts
                .iter()
                .map(|(values, count)| json!({"values": values, "count": count.to_string()}))
                .collect();
            Ok(Output {
                text,
                json: json!({"max_value": max_value, "counts": entries}),
            })
        }
        Command::Comultiply { file } => {
            let m = load(file)?;
            let sum = coalgebra::comultiply(&m);
            let terms: Vec<Value> = sum
                .terms
                .iter()
                .map(|t| {
                    json!({
                        "multiplicity": t.multiplicity.to_string(),
                        "left": {"n": t.left.n(), "rank": t.left.rank()},
                        "right": {"n": t.right.n(), "rank": t.right.rank()},
                    })
                })
                .collect();
            Ok(Output {
                text: sum.to_text().trim_end().to_string(),
                json: json!({
                    "grouped": sum.grouped,
                    "total_multiplicity": sum.total_multiplicity().to_string(),
                    "terms": terms,
                }),
            })
        }
        Command::VerifyConvolution {
            file,
            samples,
            seed,
        } => {
            let m = load(file)?;
            let symbolic = match coalgebra::verify_r_convolution_symbolic(&m) {
                Ok(true) => "equal".to_string(),
                Ok(false) => {
                    return Err(Error::CrossCheckFailed(
                        "corank-nullity convolution identity failed symbolically".into(),
                    )
                    .into())
                }
                Err(Error::GuardExceeded { limit, actual, .. }) => {
                    format!("skipped ({actual} elements exceeds the {limit}-element guard)")
                }
                Err(e) => return Err(e.into()),
            };
            let points = coalgebra::convolution_samples(*seed, *samples);
            if !coalgebra::verify_r_convolution(&m, &points) {
                return Err(Error::CrossCheckFailed(
                    "corank-nullity convolution identity failed at a sample point".into(),
                )
                .into());
            }
            Ok(Output {
                text: format!(
                    "symbolic: {symbolic}\nnumeric ({samples} samples, seed {seed}): equal"
                ),
                json: json!({
                    "symbolic": symbolic,
                    "numeric": {"samples": samples, "seed": seed, "result": "equal"},
                }),
            })
        }
        Command::VerifyChromatic {
            file,
            samples,
            seed,
        } => {
            let doc = load_doc(file)?;
            let g = doc.graph_input()?.ok_or_else(|| {
                Failure::from(Error::Document(
                    "verify-chromatic needs a graph document".into(),
                ))
            })?;
            let symbolic = match coalgebra::verify_chromatic_convolution_symbolic(&g) {
                Ok(true) => "equal".to_string(),
                Ok(false) => {
                    return Err(Error::CrossCheckFailed(
                        "chromatic convolution identity failed symbolically".into(),
                    )
                    .into())
                }
                Err(Error::GuardExceeded { limit, actual, .. }) => {
                    format!("skipped ({actual} vertices exceeds the {limit}-vertex guard)")
                }
                Err(e) => return Err(e.into()),
            };
            let points = coalgebra::chromatic_samples(*seed, *samples);
            if !coalgebra::verify_chromatic_convolution(&g, &points)? {
                return Err(Error::CrossCheckFailed(
                    "chromatic convolution identity failed at a sample point".into(),
                )
                .into());
            }
            Ok(Output {
                text: format!(
                    "symbolic: {symbolic}\nnumeric ({samples} samples, seed {seed}): equal"
                ),
                json: json!({
                    "symbolic": symbolic,
                    "numeric": {"samples": samples, "seed": seed, "result": "equal"},
                }),
            })
        }
    }
}
