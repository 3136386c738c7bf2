use std::fmt::Write;

use epiworks_core::deduction::{BadStep, TailCheck};
use epiworks_core::identities::{DegreeWitness, Verdict};
use epiworks_core::rewrite::RewriteTrace;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

/// Every report, as printed with `--json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: u32,
    #[serde(flatten)]
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Check(CheckReport),
    Pinv(PinvReport),
    Profile(ProfileReport),
    Degree(DegreeReport),
    Normalize(NormalizeReport),
    Factor(FactorReport),
    Classify(ClassifyReport),
    Transform(TransformReport),
    Deduce(DeduceReport),
    Catalog(CatalogReport),
    Enumerate(EnumerateReport),
    Error(ErrorReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchNote {
    pub element: String,
    pub declared: String,
    pub derived: String,
}

fn render_mismatches(out: &mut String, ms: &[MismatchNote]) {
    for m in ms {
        let _ = writeln!(
            out,
            "note: declared unary differs from pseudoinversion at {} (declared {}, derived {})",
            m.element, m.declared, m.derived
        );
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub identity: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub holds: bool,
    pub lines: Vec<CheckLine>,
    pub mismatches: Vec<MismatchNote>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinvLine {
    pub element: String,
    pub omega: String,
    pub pinv: String,
    pub index: usize,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinvReport {
    pub elements: Vec<PinvLine>,
    pub mismatches: Vec<MismatchNote>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub size: usize,
    pub group_elements: Vec<String>,
    pub index: usize,
    pub completely_regular: bool,
    pub nil: bool,
    pub zero: Option<String>,
    pub nilpotency_degree: Option<usize>,
    pub gr_right_ideal: bool,
    /// `(g, s)` with `g` a group element and `g s` not one.
    pub right_ideal_witness: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub max: usize,
    pub witness: Option<DegreeWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeReport {
    pub input: String,
    pub letter: String,
    pub p: usize,
    pub q: usize,
    pub normal_form: String,
    pub trace: RewriteTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub input: String,
    pub u_star: Option<String>,
    pub z: String,
    pub trace: RewriteTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedIdentity {
    pub identity: String,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub identities: Vec<ClassifiedIdentity>,
    pub variety: Verdict,
    pub equals_var_e: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    pub m: usize,
    pub n: usize,
    pub system: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCheck {
    /// Tables satisfying the axioms.
    pub models: usize,
    /// Tables that are not models of the axioms.
    pub skipped: usize,
    /// First model where the conclusion fails, with the assignment.
    pub counterexample: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeduceReport {
    pub valid: bool,
    pub steps: usize,
    pub delta_bound: usize,
    pub first_bad: Option<BadStep>,
    pub conclusion: Option<String>,
    pub tail: Option<TailCheck>,
    pub models: Option<ModelCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    /// `(name, table file)` pairs.
    pub tables: Vec<(String, String)>,
    /// Set when the tables were written to disk.
    pub written_to: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub order: usize,
    pub up_to_iso: bool,
    pub count: usize,
    pub written_to: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Report {
    /// The text form printed without `--json`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Check(r) => {
                render_mismatches(&mut out, &r.mismatches);
                if let [line] = r.lines.as_slice() {
                    match &line.witness {
                        None => out.push_str("holds\n"),
                        Some(w) => {
                            let _ = writeln!(out, "fails at {w}");
                        }
                    }
                } else {
                    for line in &r.lines {
                        match &line.witness {
                            None => {
                                let _ = writeln!(out, "{}: holds", line.identity);
                            }
                            Some(w) => {
                                let _ = writeln!(out, "{}: fails at {w}", line.identity);
                            }
                        }
                    }
                    out.push_str(if r.holds { "holds\n" } else { "fails\n" });
                }
            }
            Report::Pinv(r) => {
                render_mismatches(&mut out, &r.mismatches);
                for e in &r.elements {
                    let _ = writeln!(
                        out,
                        "{}: omega={} pinv={} index={} period={}",
                        e.element, e.omega, e.pinv, e.index, e.period
                    );
                }
            }
            Report::Profile(r) => {
                let _ = writeln!(out, "elements: {}", r.size);
                let _ = writeln!(out, "Gr S: {{{}}}", r.group_elements.join(", "));
                let _ = writeln!(out, "index: {}", r.index);
                let _ = writeln!(out, "completely regular: {}", yes_no(r.completely_regular));
                let _ = write!(out, "nil: {}", yes_no(r.nil));
                if let Some(d) = r.nilpotency_degree {
                    let _ = write!(out, " (nilpotent of degree {d})");
                }
                out.push('\n');
                if let Some(z) = &r.zero {
                    let _ = writeln!(out, "zero: {z}");
                }
                let _ = write!(out, "Gr S right ideal: {}", yes_no(r.gr_right_ideal));
                if let Some((g, s)) = &r.right_ideal_witness {
                    let _ = write!(out, " (witness {g} {s})");
                }
                out.push('\n');
            }
            Report::Degree(r) => match r.witness {
                Some(w) => {
                    let _ = writeln!(out, "n={} i={} j={}", w.n, w.i, w.j);
                }
                None => out.push_str("none\n"),
            },
            Report::Normalize(r) => {
                let _ = writeln!(out, "{}", r.normal_form);
                out.push_str(&r.trace.render());
            }
            Report::Factor(r) => {
                let _ = writeln!(out, "u*: {}", r.u_star.as_deref().unwrap_or("(empty)"));
                let _ = writeln!(out, "z: {}", r.z);
                out.push_str(&r.trace.render());
            }
            Report::Classify(r) => {
                for c in &r.identities {
                    let _ = writeln!(out, "{}: {}", c.identity, c.flags.join(", "));
                }
                let _ = writeln!(
                    out,
                    "variety: {}; equals varE: {}",
                    yes_no(r.variety.verdict),
                    yes_no(r.equals_var_e.verdict)
                );
            }
            Report::Transform(r) => {
                for id in &r.system {
                    let _ = writeln!(out, "{id}");
                }
            }
            Report::Deduce(r) => {
                match &r.first_bad {
                    None => out.push_str("valid\n"),
                    Some(b) => {
                        let _ = writeln!(out, "invalid at step {}: {}", b.step, b.reason);
                    }
                }
                if let Some(m) = &r.models {
                    match &m.counterexample {
                        None => {
                            let _ = write!(out, "conclusion holds in all {} models", m.models);
                        }
                        Some((model, at)) => {
                            let _ = write!(out, "conclusion fails in {model} at {at}");
                        }
                    }
                    if m.skipped > 0 {
                        let _ = write!(out, " ({} tables skipped: not models of the axioms)", m.skipped);
                    }
                    out.push('\n');
                }
            }
            Report::Catalog(r) => match &r.written_to {
                Some(dir) => {
                    for (name, _) in &r.tables {
                        let _ = writeln!(out, "wrote {dir}/{name}.tbl");
                    }
                }
                None => {
                    for (_, table) in &r.tables {
                        out.push_str(table);
                    }
                }
            },
            Report::Enumerate(r) => {
                let what = if r.up_to_iso { "isomorphism classes" } else { "labeled semigroups" };
                let _ = writeln!(out, "order {}: {} {what}", r.order, r.count);
                if let Some(dir) = &r.written_to {
                    let _ = writeln!(out, "wrote {} tables to {dir}", r.count);
                }
            }
            Report::Error(e) => {
                let _ = writeln!(out, "error: {}", e.message);
            }
        }
        out
    }
}

impl Envelope {
    pub fn new(report: Report) -> Envelope {
        Envelope { schema: SCHEMA, report }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
