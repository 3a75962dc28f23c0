//! Command-line front end. [`run`] takes the argument list and output
//! streams explicitly so it can be driven in-process by tests.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::arf::{
    arf_closure, arf_violation, blowup, enumerate_arf, multiplicity_sequence, same_multiplicity_blowup,
};
use crate::betti::graded_betti_to;
use crate::complex::{squarefree_divisor_complex, ComplexJson};
use crate::error::Error;
use crate::homology::FieldSpec;
use crate::semigroup::NumericalSemigroup;
use crate::verify::{check_propositions, check_theorem, scan_unmatched_faces, sweep, Outcome, Verdict};
use crate::SCHEMA_VERSION;

/// Exit status for a completed run whose check failed.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed arguments or input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "arf-betti",
    version,
    about = "Graded Betti numbers of numerical semigroup rings and the Arf blowup shift check"
)]
pub struct CliConfig {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of the semigroup.
    Info { generators: String },
    /// Test the Arf property and print a violating triple if there is one.
    ArfCheck { generators: String },
    /// Smallest Arf semigroup containing the input.
    ArfClosure { generators: String },
    /// Blowup generated by n_1 and n_i - n_1.
    Blowup { generators: String },
    /// Faces of the squarefree divisor complex at degree S.
    Complex {
        generators: String,
        #[arg(allow_hyphen_values = true)]
        s: i64,
    },
    /// Graded Betti table.
    Betti {
        generators: String,
        /// "q" or "gf:p".
        #[arg(long, default_value = "q")]
        field: String,
        /// Scan degrees up to this value when it exceeds the automatic bound.
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Check the shift relation and the propositions for one semigroup.
    Verify {
        generators: String,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Run the check on every Arf semigroup with conductor at most BOUND.
    Sweep {
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List the Arf semigroups with conductor at most BOUND.
    Enumerate {
        #[arg(long)]
        bound: i64,
    },
}

/// What a subcommand produced: the text to print and whether its check
/// passed.
struct Output {
    body: String,
    ok: bool,
}

impl Output {
    fn pass(body: String) -> Self {
        Output { body, ok: true }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("JSON serialization of plain data")
}

fn parse_semigroup(text: &str) -> Result<NumericalSemigroup, Error> {
    text.parse()
}

fn parse_bound(bound: i64) -> Result<i64, Error> {
    if bound < 0 {
        Err(Error::InvalidArgument(format!("conductor bound must be nonnegative, got {bound}")))
    } else {
        Ok(bound)
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&config) {
        Ok(output) => {
            let _ = writeln!(out, "{}", output.body.trim_end_matches('\n'));
            if output.ok {
                0
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ClassificationGap { .. } => EXIT_FAILURE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn execute(config: &CliConfig) -> Result<Output, Error> {
    let json = config.json;
    match &config.command {
        Command::Info { generators } => info(&parse_semigroup(generators)?, json),
        Command::ArfCheck { generators } => arf_check(&parse_semigroup(generators)?, json),
        Command::ArfClosure { generators } => {
            let s = parse_semigroup(generators)?;
            let closure = arf_closure(&s);
            Ok(Output::pass(if json {
                to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "input": s.generators(),
                    "closure": closure.to_json(),
                }))
            } else {
                closure.to_string()
            }))
        }
        Command::Blowup { generators } => {
            let s = parse_semigroup(generators)?;
            let b = blowup(&s);
            let same = same_multiplicity_blowup(&s);
            Ok(Output::pass(if json {
                to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "input": s.generators(),
                    "blowup": b.to_json(),
                    "same_multiplicity": same,
                }))
            } else {
                format!("{b}\nsame multiplicity: {}", yes_no(same))
            }))
        }
        Command::Complex { generators, s } => {
            let sg = parse_semigroup(generators)?;
            let c = squarefree_divisor_complex(&sg, *s)?;
            let faces = c.face_lists();
            Ok(Output::pass(if json {
                to_json(&ComplexJson {
                    schema_version: SCHEMA_VERSION,
                    s: *s,
                    faces: faces.clone(),
                })
            } else {
                let dim = match c.dimension() {
                    None => "void".to_string(),
                    Some(d) => d.to_string(),
                };
                let listed: Vec<String> = faces.iter().map(|f| format!("[{}]", join(f, ","))).collect();
                format!("s = {s}\ndimension: {dim}\nfaces: {}", listed.join(" "))
            }))
        }
        Command::Betti {
            generators,
            field,
            degree,
        } => {
            let s = parse_semigroup(generators)?;
            let field: FieldSpec = field.parse()?;
            let table = graded_betti_to(&s, field, degree.unwrap_or(i64::MIN))?;
            Ok(Output::pass(if json {
                to_json(&table.to_json())
            } else {
                table.render_text()
            }))
        }
        Command::Verify { generators, field } => verify(&parse_semigroup(generators)?, field.parse()?, json),
        Command::Sweep { bound, field, jobs } => {
            let field: FieldSpec = field.parse()?;
            if *jobs == 0 {
                return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
            }
            let report = sweep(parse_bound(*bound)?, field, *jobs)?;
            let ok = report.all_passed();
            let body = if json {
                to_json(&report)
            } else {
                let mut text = format!(
                    "Arf semigroups with conductor <= {}: {}\nsame-multiplicity blowup: {}\nshift relation over {}: {} pass, {} fail (i = 0 excluded)\npropositions: {} semigroups checked, {} failures\nunmatched faces by type: {}\nclassification gaps: {}",
                    report.bound,
                    report.total,
                    report.eligible,
                    report.field,
                    report.passes,
                    report.failures.len(),
                    report.propositions_checked,
                    report.proposition_failures.len(),
                    join(&report.unmatched_faces, " "),
                    report.classification_gaps,
                );
                for f in &report.failures {
                    text.push_str(&format!("\nmismatch at <{}>: {} pair(s)", join(&f.generators, ","), f.mismatches.len()));
                }
                for f in &report.proposition_failures {
                    text.push_str(&format!(
                        "\nproposition {:?} fails at <{}>: {}",
                        f.proposition,
                        join(&f.generators, ","),
                        f.witness
                    ));
                }
                text.push_str(if ok { "\nverdict: PASS" } else { "\nverdict: FAIL" });
                text
            };
            Ok(Output { body, ok })
        }
        Command::Enumerate { bound } => {
            let bound = parse_bound(*bound)?;
            let mut all: Vec<NumericalSemigroup> = enumerate_arf(bound).collect();
            all.sort_by(|a, b| (a.conductor(), a.generators()).cmp(&(b.conductor(), b.generators())));
            Ok(Output::pass(if json {
                let list: Vec<_> = all.iter().map(NumericalSemigroup::to_json).collect();
                to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "bound": bound,
                    "count": all.len(),
                    "semigroups": list,
                }))
            } else {
                all.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            }))
        }
    }
}

fn info(s: &NumericalSemigroup, json: bool) -> Result<Output, Error> {
    let mut apery = s.min_elements_mod_multiplicity();
    apery.sort_unstable();
    let arf = arf_violation(s).is_none();
    let sequence = multiplicity_sequence(s).ok().map(|m| m.entries);
    Ok(Output::pass(if json {
        to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "generators": s.generators(),
            "conductor": s.conductor(),
            "gaps": s.gaps(),
            "multiplicity": s.multiplicity(),
            "embedding_dimension": s.embedding_dimension(),
            "frobenius": s.frobenius(),
            "genus": s.genus(),
            "apery": apery,
            "arf": arf,
            "multiplicity_sequence": sequence,
        }))
    } else {
        let mut text = format!(
            "generators: {}\nmultiplicity: {}\nembedding dimension: {}\nconductor: {}\nfrobenius: {}\ngenus: {}\ngaps: {}\napery set: {}\narf: {}",
            s,
            s.multiplicity(),
            s.embedding_dimension(),
            s.conductor(),
            s.frobenius(),
            s.genus(),
            join(&s.gaps(), ","),
            join(&apery, ","),
            yes_no(arf),
        );
        if let Some(seq) = sequence {
            text.push_str(&format!("\nmultiplicity sequence: {}", join(&seq, ",")));
        }
        text
    }))
}

fn arf_check(s: &NumericalSemigroup, json: bool) -> Result<Output, Error> {
    let witness = arf_violation(s);
    Ok(Output::pass(if json {
        to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "generators": s.generators(),
            "arf": witness.is_none(),
            "witness": witness.map(|w| json!({"s": w.s, "t": w.t, "u": w.u, "value": w.value()})),
        }))
    } else {
        match witness {
            None => "Arf".to_string(),
            Some(w) => format!("not Arf: witness s={} t={} u={} ({} ∉ S)", w.s, w.t, w.u, w.value()),
        }
    }))
}

fn verify(s: &NumericalSemigroup, field: FieldSpec, json: bool) -> Result<Output, Error> {
    let report = check_theorem(s, field)?;
    let propositions = check_propositions(s)?;
    let unmatched = scan_unmatched_faces(s)?;
    let proposition_failures = propositions.iter().filter(|p| p.failed()).count();
    let ok = report.verdict == Verdict::Pass && proposition_failures == 0;
    let body = if json {
        to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "theorem": report,
            "propositions": propositions,
            "unmatched_faces": unmatched,
            "verdict": if ok { "pass" } else { "fail" },
        }))
    } else {
        let n1 = s.multiplicity();
        let mut text = format!(
            "S = <{}>, blowup S' = <{}>, field {}\nshift relation: {} pair(s) compared for i >= 1, {} mismatch(es)\ni = 0 excluded: beta_0,0(S') = {}, beta_0,{}(S) = {}",
            s,
            join(&report.blowup, ","),
            field,
            report.checked.len(),
            report.mismatches.len(),
            report.i0_note.blowup_beta_0_0,
            n1,
            report.i0_note.shifted_beta_0_n1,
        );
        for m in &report.mismatches {
            text.push_str(&format!(
                "\n  mismatch i={} s={}: {} vs {}",
                m.i, m.s, m.blowup_dim, m.shifted_dim
            ));
        }
        for p in &propositions {
            let status = match &p.outcome {
                Outcome::Pass => "pass".to_string(),
                Outcome::Fail(w) => format!("FAIL ({w})"),
                Outcome::NotApplicable => "n/a".to_string(),
            };
            text.push_str(&format!("\n{:?}: {status}", p.proposition));
        }
        text.push_str(&format!(
            "\nunmatched faces by type: {} over {} (i, s) pair(s)",
            join(&unmatched.counts, " "),
            unmatched.pairs
        ));
        text.push_str(if ok { "\nverdict: PASS" } else { "\nverdict: FAIL" });
        text
    };
    Ok(Output { body, ok })
}
