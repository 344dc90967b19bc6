//! Command-line front end: parse, compute, verify, and render.
//!
//! Elements are written either in word syntax (`x0 x1^-1`, commutators
//! `[u, v]`) or breakpoint syntax (`0->0,1/2->1/4,3/4->1/2,1->1`); the two
//! are auto-detected by the presence of `->`. Exit codes: 0 on success, 1 on
//! domain errors (the error name goes to stderr), 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt;
use std::io::Write;
use std::process::ExitCode;
use thompson_core::dyadic::Dyadic;
use thompson_core::laws::{
    britton_reduce, build_law, cyclic_member, parse_hnn_word, verify_law, BrittonOutcome,
    CyclicMembership, HnnEdge, LawSpec, VerifyBudget,
};
use thompson_core::marked::{
    convergence_probe, marked_distance, relation_set, render_abstract_word, Distance,
    EnumerationBudget, Marking,
};
use thompson_core::plf::{embed, DyadicInterval, PlHomeo};
use thompson_core::structure::{centralizer, conj_shift, defragment, support};
use thompson_core::words::{
    census, enumerate_elements, normalize, parse_word, plf_to_word, tree_pair,
};

#[derive(Parser)]
#[command(
    name = "thompson",
    version,
    about = "Exact toolkit for Thompson's group F: normal forms, supports, centralizers, \
             laws with constants, Britton reduction, and the marked-groups metric",
    after_help = "Element syntax: words like \"x0 x1^-1\" or \"[x0 x1^-1, x2]\", or \
                  breakpoints like \"0->0,1/2->1/4,3/4->1/2,1->1\" (auto-detected by \"->\"). \
                  Markings are ';'-separated elements. All arithmetic is exact."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Word,
    Breakpoints,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a word into the unique normal form
    Normalize { word: String },
    /// Evaluate an element at a dyadic point of [0,1]
    Eval {
        element: String,
        /// point to evaluate at, e.g. 1/2
        #[arg(long)]
        at: String,
    },
    /// Compose two elements: (f g)(t) = f(g(t))
    Compose {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value = "breakpoints")]
        format: Format,
    },
    /// Invert an element
    Invert {
        element: String,
        #[arg(long, value_enum, default_value = "breakpoints")]
        format: Format,
    },
    /// Convert a word to its breakpoint form
    ToPlf { word: String },
    /// Convert an element to its normal-form word
    ToWord {
        element: String,
        /// also print the reduced tree pair
        #[arg(long)]
        trees: bool,
    },
    /// Render an element as an SVG graph
    Plot {
        element: String,
        /// output file; stdout when omitted
        #[arg(long)]
        out: Option<String>,
    },
    /// Conjugate an element into a dyadic subinterval, identity outside
    Embed {
        element: String,
        /// target interval, e.g. 0,1/2
        #[arg(long)]
        interval: String,
        #[arg(long, value_enum, default_value = "breakpoints")]
        format: Format,
    },
    /// Report the support and dividing points of an element
    Support { element: String },
    /// Factor an element into disjointly supported fragments
    Defrag { element: String },
    /// Test whether two elements commute
    Commutes { f: String, g: String },
    /// Bounded search for a maximal root r with r^k = g
    MaxRoot {
        element: String,
        #[arg(long, default_value_t = 7)]
        leaf_bound: usize,
    },
    /// Decompose the centralizer of an element
    Centralizer {
        element: String,
        /// enumeration bound for the root search
        #[arg(long, default_value_t = 7)]
        leaf_bound: usize,
    },
    /// Certified index shift of conjugation on high generators
    ConjShift { element: String },
    /// Build the one-variable law from four disjoint intervals
    BuildLaw {
        /// eight dyadics p1,q1,p2,q2,p3,q3,p4,q4
        #[arg(long)]
        intervals: String,
        /// optional ';'-separated constants h1..h4 (default: x0 embedded)
        #[arg(long)]
        constants: Option<String>,
    },
    /// Verify the law over an exhaustive census plus random samples
    VerifyLaw {
        #[arg(long)]
        intervals: String,
        #[arg(long)]
        constants: Option<String>,
        /// exhaustive enumeration bound (leaves per tree)
        #[arg(long, default_value_t = 8)]
        exhaustive: usize,
        /// number of random samples
        #[arg(long, default_value_t = 1000)]
        random: usize,
        /// size of random samples (leaves per tree)
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Decide whether u lies in the cyclic subgroup generated by h
    CyclicMember { u: String, h: String },
    /// Britton reduction of a word with stable letter t over t h t^-1 = h'
    Britton {
        /// word over `t`, `t^-1` and `{...}` constants
        word: String,
        #[arg(long = "h")]
        h: String,
        #[arg(long = "h-prime")]
        h_prime: String,
    },
    /// All relations of a marking up to a radius
    Relations {
        /// ';'-separated elements
        marking: String,
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Symbolic distance between two markings
    Distance {
        m1: String,
        m2: String,
        #[arg(long)]
        rmax: u32,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Relation-set stabilization scan over a marking sequence
    Probe {
        /// const:<word> | xn | pow:<word>
        #[arg(long)]
        seq: String,
        /// inclusive range of indices, e.g. 1..8
        #[arg(long)]
        range: String,
        #[arg(long)]
        radius: u32,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Enumerate elements by reduced tree-pair size
    Enumerate {
        #[arg(long)]
        max_leaves: usize,
        /// print at most this many elements (census is always printed)
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
}

#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for CliError {}

type Out = Result<(), Box<dyn std::error::Error>>;

fn parse_element(text: &str) -> Result<PlHomeo, Box<dyn std::error::Error>> {
    if text.contains("->") {
        Ok(text.parse::<PlHomeo>()?)
    } else {
        Ok(parse_word(text)?.to_plf())
    }
}

fn parse_dyadic(text: &str) -> Result<Dyadic, Box<dyn std::error::Error>> {
    Ok(text.parse::<Dyadic>()?)
}

fn parse_interval(text: &str) -> Result<DyadicInterval, Box<dyn std::error::Error>> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| CliError(format!("expected lo,hi in {text:?}")))?;
    Ok(DyadicInterval::new(parse_dyadic(lo)?, parse_dyadic(hi)?)?)
}

fn parse_marking(text: &str) -> Result<Marking, Box<dyn std::error::Error>> {
    let gens: Result<Vec<PlHomeo>, _> = text.split(';').map(|s| parse_element(s.trim())).collect();
    Ok(Marking::new(gens?))
}

fn parse_law_spec(
    intervals: &str,
    constants: &Option<String>,
) -> Result<LawSpec, Box<dyn std::error::Error>> {
    let nums: Result<Vec<Dyadic>, _> = intervals.split(',').map(parse_dyadic).collect();
    let nums = nums?;
    if nums.len() != 8 {
        return Err(CliError("expected eight dyadics p1,q1,...,p4,q4".into()).into());
    }
    let mut ivs = Vec::new();
    for pair in nums.chunks(2) {
        ivs.push(DyadicInterval::new(pair[0].clone(), pair[1].clone())?);
    }
    let intervals: [DyadicInterval; 4] = ivs.try_into().expect("four chunks");
    match constants {
        None => Ok(LawSpec::with_embedded_generators(intervals)?),
        Some(text) => {
            let hs: Result<Vec<PlHomeo>, _> =
                text.split(';').map(|s| parse_element(s.trim())).collect();
            let hs: [PlHomeo; 4] = hs?
                .try_into()
                .map_err(|_| CliError("expected four ';'-separated constants".into()))?;
            Ok(LawSpec::new(intervals, hs)?)
        }
    }
}

fn render(f: &PlHomeo, format: Format) -> String {
    match format {
        Format::Breakpoints => f.to_string(),
        Format::Word => plf_to_word(f).to_string(),
    }
}

/// Markings (x0, x1, g_n) for the probe sequence specs.
fn parse_sequence(
    seq: &str,
    range: &str,
) -> Result<(Vec<Marking>, Vec<String>), Box<dyn std::error::Error>> {
    let (a, b) = range
        .split_once("..")
        .ok_or_else(|| CliError(format!("expected a..b in {range:?}")))?;
    let a: u32 = a
        .parse()
        .map_err(|_| CliError("range start must be an integer".into()))?;
    let b: u32 = b
        .parse()
        .map_err(|_| CliError("range end must be an integer".into()))?;
    if a > b {
        return Err(CliError("range start exceeds range end".into()).into());
    }
    let x0 = thompson_core::plf::generator(0);
    let x1 = thompson_core::plf::generator(1);
    let third = |n: u32| -> Result<PlHomeo, Box<dyn std::error::Error>> {
        if seq == "xn" {
            Ok(thompson_core::plf::generator(n))
        } else if let Some(word) = seq.strip_prefix("const:") {
            parse_element(word)
        } else if let Some(word) = seq.strip_prefix("pow:") {
            Ok(parse_element(word)?.pow(n as i64))
        } else {
            Err(CliError(format!("unknown sequence spec {seq:?}")).into())
        }
    };
    let mut markings = Vec::new();
    let mut labels = Vec::new();
    for n in a..=b {
        markings.push(Marking::new(vec![x0.clone(), x1.clone(), third(n)?]));
        labels.push(n.to_string());
    }
    Ok((markings, labels))
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Normalize { word } => {
            println!("{}", normalize(&parse_word(&word)?));
        }
        Command::Eval { element, at } => {
            let f = parse_element(&element)?;
            println!("{}", f.eval(&parse_dyadic(&at)?)?);
        }
        Command::Compose { f, g, format } => {
            let value = parse_element(&f)?.compose(&parse_element(&g)?);
            println!("{}", render(&value, format));
        }
        Command::Invert { element, format } => {
            println!("{}", render(&parse_element(&element)?.inverse(), format));
        }
        Command::ToPlf { word } => {
            println!("{}", parse_word(&word)?.to_plf());
        }
        Command::ToWord { element, trees } => {
            let f = parse_element(&element)?;
            println!("{}", plf_to_word(&f));
            if trees {
                let pair = tree_pair(&f);
                println!("domain: {}", pair.domain);
                println!("range:  {}", pair.range);
            }
        }
        Command::Plot { element, out } => {
            let svg = parse_element(&element)?.to_svg();
            match out {
                None => print!("{svg}"),
                Some(path) => {
                    let mut file = std::fs::File::create(&path)?;
                    file.write_all(svg.as_bytes())?;
                    println!("wrote {path}");
                }
            }
        }
        Command::Embed {
            element,
            interval,
            format,
        } => {
            let f = parse_element(&element)?;
            let iv = parse_interval(&interval)?;
            println!("{}", render(&embed(&f, &iv)?, format));
        }
        Command::Support { element } => {
            println!("{}", support(&parse_element(&element)?));
        }
        Command::Defrag { element } => {
            let d = defragment(&parse_element(&element)?)?;
            if d.fragments.is_empty() {
                println!("no fragments (identity)");
            }
            for (i, fr) in d.fragments.iter().enumerate() {
                println!("fragment {i}: {} {}", fr.interval, plf_to_word(&fr.piece));
            }
        }
        Command::Commutes { f, g } => {
            let answer =
                thompson_core::structure::commutes(&parse_element(&f)?, &parse_element(&g)?);
            println!("{answer}");
        }
        Command::MaxRoot {
            element,
            leaf_bound,
        } => match thompson_core::structure::max_root(&parse_element(&element)?, leaf_bound)? {
            thompson_core::structure::RootResult::Found { root, power } => {
                println!("root: {}", plf_to_word(&root));
                println!("power: {power}");
            }
            thompson_core::structure::RootResult::Unknown => println!("Unknown"),
        },
        Command::Centralizer {
            element,
            leaf_bound,
        } => {
            let g = parse_element(&element)?;
            if g.is_identity() {
                println!("centralizer(identity) = the whole group");
                return Ok(());
            }
            print!("{}", centralizer(&g, leaf_bound)?);
        }
        Command::ConjShift { element } => {
            println!("{}", conj_shift(&parse_element(&element)?));
        }
        Command::BuildLaw {
            intervals,
            constants,
        } => {
            let spec = parse_law_spec(&intervals, &constants)?;
            println!("{}", build_law(&spec));
        }
        Command::VerifyLaw {
            intervals,
            constants,
            exhaustive,
            random,
            size,
            seed,
            workers,
        } => {
            let spec = parse_law_spec(&intervals, &constants)?;
            let word = build_law(&spec);
            let budget = VerifyBudget {
                exhaustive_leaves: exhaustive,
                random_count: random,
                random_size: size,
                seed,
            };
            println!("law: {word}");
            println!("{}", verify_law(&word, Some(&spec), &budget, workers));
        }
        Command::CyclicMember { u, h } => {
            match cyclic_member(&parse_element(&u)?, &parse_element(&h)?)? {
                CyclicMembership::Power(d) => println!("{d}"),
                CyclicMembership::NotMember => println!("NotMember"),
            }
        }
        Command::Britton { word, h, h_prime } => {
            let word = parse_hnn_word(&word)?;
            let edge = HnnEdge {
                h: parse_element(&h)?,
                h_prime: parse_element(&h_prime)?,
            };
            match britton_reduce(&word, &edge)? {
                BrittonOutcome::TrivialInHnn => println!("TrivialInHnn"),
                BrittonOutcome::Reduced(w) => println!("Reduced: {w}"),
                BrittonOutcome::Irreducible(w) => println!("Irreducible: {w}"),
            }
        }
        Command::Relations {
            marking,
            radius,
            budget,
            workers,
        } => {
            let m = parse_marking(&marking)?;
            let set = relation_set(&m, radius, EnumerationBudget { max_words: budget }, workers)?;
            println!("radius: {radius}");
            println!("arity: {}", m.arity());
            println!("relations: {}", set.relations.len());
            for w in &set.relations {
                println!("{}", render_abstract_word(w));
            }
        }
        Command::Distance {
            m1,
            m2,
            rmax,
            budget,
            workers,
        } => {
            let d = marked_distance(
                &parse_marking(&m1)?,
                &parse_marking(&m2)?,
                rmax,
                EnumerationBudget { max_words: budget },
                workers,
            )?;
            println!("{d}");
            if let Distance::Exact { agreement } = d {
                println!("largest radius with equal relation sets: {agreement}");
            }
        }
        Command::Probe {
            seq,
            range,
            radius,
            budget,
            workers,
        } => {
            let (markings, labels) = parse_sequence(&seq, &range)?;
            let report = convergence_probe(
                &markings,
                radius,
                EnumerationBudget { max_words: budget },
                workers,
            )?;
            print!("{}", report.render(&labels));
        }
        Command::Enumerate { max_leaves, limit } => {
            println!(
                "elements with at most {max_leaves} leaves: {}",
                census(max_leaves)
            );
            for f in enumerate_elements(max_leaves).take(limit) {
                println!("{}", plf_to_word(&f));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}
