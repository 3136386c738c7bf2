use std::fs;
use std::path::Path;

use epiworks_core::catalog::{
    enumerate_semigroups, enumerate_semigroups_order_four, make_named, standard_models, Named, Structure,
};
use epiworks_core::deduction::{check_tail_invariant, delta_basis, load_script, verify_deduction, AxiomMatching};
use epiworks_core::identities::{equals_var_e, find_degree_witness, is_variety_class, transform_mn};
use epiworks_core::model::{
    derive_epigroup, epigroup_profile, gr_right_ideal, nil_profile, render_table, satisfies, satisfies_system,
    CheckConfig, FiniteEpigroup, FiniteUnarySemigroup, ModelError, TableFile, UnaryAlgebra,
};
use epiworks_core::rewrite::{factor_tail, normalize_one_letter};
use epiworks_core::terms::{parse_identity_line, parse_word, Identity, IdentitySystem};

use crate::args::Command;
use crate::report::*;
use crate::CliError;

/// A report and the exit code it implies.
pub type Done = (Report, i32);

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(ModelError) -> CliError + '_ {
    move |e| match e {
        ModelError::ResourceGuard { .. } => CliError::Guard(e.to_string()),
        _ => CliError::Input(format!("{}: {e}", path.display())),
    }
}

/// A table file: its derived epigroup and, when the file declares a unary
/// operation, the unary semigroup it describes.
struct LoadedTable {
    epigroup: FiniteEpigroup,
    declared: Option<FiniteUnarySemigroup>,
    mismatches: Vec<MismatchNote>,
}

impl LoadedTable {
    fn load(path: &Path) -> Result<LoadedTable, CliError> {
        let file = TableFile::parse(&read(path)?).map_err(in_file(path))?;
        let Some(unary) = file.unary else {
            return Ok(LoadedTable { epigroup: FiniteEpigroup::new(file.table), declared: None, mismatches: vec![] });
        };
        let declared = FiniteUnarySemigroup::new(file.table, unary).map_err(in_file(path))?;
        let (epigroup, ms) = derive_epigroup(&declared);
        let name = |a: usize| epigroup.name(a).to_owned();
        let mismatches = ms
            .iter()
            .map(|m| MismatchNote { element: name(m.element), declared: name(m.declared), derived: name(m.derived) })
            .collect();
        Ok(LoadedTable { epigroup, declared: Some(declared), mismatches })
    }

    /// The structure identities are evaluated in: the declared unary
    /// operation if there is one, pseudoinversion otherwise.
    fn algebra(&self) -> &dyn UnaryAlgebra {
        match &self.declared {
            Some(d) => d,
            None => &self.epigroup,
        }
    }
}

fn identities_arg(arg: &str) -> Result<IdentitySystem, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return IdentitySystem::parse(&read(path)?).map_err(|e| CliError::Input(format!("{arg}: {e}")));
    }
    parse_identity_line(arg)
        .map(IdentitySystem::new)
        .map_err(|e| CliError::Input(format!("cannot parse identity `{arg}`: {e}")))
}

fn guard(e: ModelError) -> CliError {
    match e {
        ModelError::ResourceGuard { .. } => CliError::Guard(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn property(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

pub fn execute(command: &Command, config: &CheckConfig) -> Result<Done, CliError> {
    match command {
        Command::Check { table, identities } => check(table, identities, config),
        Command::Pinv { table } => pinv(table),
        Command::Profile { table } => profile(table),
        Command::Degree { table, max } => {
            let t = LoadedTable::load(table)?;
            let witness = find_degree_witness(&t.epigroup, *max, config).map_err(guard)?;
            Ok((Report::Degree(DegreeReport { max: *max, witness }), property(witness.is_some())))
        }
        Command::Normalize { word } => {
            let w = parse_word(word).map_err(|e| CliError::Input(format!("cannot parse `{word}`: {e}")))?;
            let (nf, trace) = normalize_one_letter(&w).map_err(|e| CliError::Input(e.to_string()))?;
            let report = NormalizeReport {
                input: w.to_string(),
                letter: nf.letter.to_string(),
                p: nf.p,
                q: nf.q,
                normal_form: nf.to_string(),
                trace,
            };
            Ok((Report::Normalize(report), 0))
        }
        Command::Factor { word } => {
            let w = parse_word(word).map_err(|e| CliError::Input(format!("cannot parse `{word}`: {e}")))?;
            let f = factor_tail(&w);
            let report = FactorReport {
                input: w.to_string(),
                u_star: f.u_star.as_ref().map(ToString::to_string),
                z: f.z.to_string(),
                trace: f.trace,
            };
            Ok((Report::Factor(report), 0))
        }
        Command::Classify { identity } => {
            let system = parse_identity_line(identity)
                .map(IdentitySystem::new)
                .map_err(|e| CliError::Input(format!("cannot parse identity `{identity}`: {e}")))?;
            let identities = system
                .iter()
                .map(|id| ClassifiedIdentity {
                    identity: id.to_string(),
                    flags: id.flags().names().into_iter().map(str::to_owned).collect(),
                })
                .collect();
            let report =
                ClassifyReport { identities, variety: is_variety_class(&system), equals_var_e: equals_var_e(&system) };
            Ok((Report::Classify(report), 0))
        }
        Command::Transform { system, m, n } => {
            let sigma = IdentitySystem::parse(&read(system)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", system.display())))?;
            let out = transform_mn(&sigma, *m, *n).iter().map(ToString::to_string).collect();
            Ok((Report::Transform(TransformReport { m: *m, n: *n, system: out }), 0))
        }
        Command::Deduce { script, delta_bound, check_models, strict } => {
            deduce(script, *delta_bound, check_models.as_deref(), *strict, config)
        }
        Command::Catalog { name, out } => catalog(name.as_deref(), out.as_deref()),
        Command::Enumerate { order, iso, out } => enumerate(*order, *iso, out.as_deref()),
    }
}

fn check(table: &Path, identities: &str, config: &CheckConfig) -> Result<Done, CliError> {
    let t = LoadedTable::load(table)?;
    let system = identities_arg(identities)?;
    let s = t.algebra();
    let mut lines = Vec::new();
    for id in system.iter() {
        let sat = satisfies(s, id, config).map_err(guard)?;
        lines.push(CheckLine {
            identity: id.to_string(),
            holds: sat.holds,
            witness: sat.witness.map(|w| w.render(s)),
        });
    }
    let holds = lines.iter().all(|l| l.holds);
    Ok((Report::Check(CheckReport { holds, lines, mismatches: t.mismatches }), property(holds)))
}

fn pinv(table: &Path) -> Result<Done, CliError> {
    let t = LoadedTable::load(table)?;
    let e = &t.epigroup;
    let elements = (0..e.size())
        .map(|x| {
            let c = e.cyclic(x);
            PinvLine {
                element: e.name(x).to_owned(),
                omega: e.name(c.omega).to_owned(),
                pinv: e.name(c.pseudoinverse).to_owned(),
                index: c.index,
                period: c.period,
            }
        })
        .collect();
    Ok((Report::Pinv(PinvReport { elements, mismatches: t.mismatches }), 0))
}

fn profile(table: &Path) -> Result<Done, CliError> {
    let t = LoadedTable::load(table)?;
    let e = &t.epigroup;
    let name = |a: usize| e.name(a).to_owned();
    let p = epigroup_profile(e);
    let nil = nil_profile(e);
    let ideal = gr_right_ideal(e);
    let report = ProfileReport {
        size: e.size(),
        group_elements: p.group_elements.iter().map(|&g| name(g)).collect(),
        index: p.index,
        completely_regular: p.is_completely_regular,
        nil: nil.is_nil,
        zero: nil.zero.map(name),
        nilpotency_degree: nil.nilpotency_degree,
        gr_right_ideal: ideal.holds,
        right_ideal_witness: ideal.witness.map(|(g, s)| (name(g), name(s))),
    };
    Ok((Report::Profile(report), 0))
}

fn deduce(
    script: &Path,
    delta_bound: Option<usize>,
    check_models: Option<&Path>,
    strict: bool,
    config: &CheckConfig,
) -> Result<Done, CliError> {
    let mut d = load_script(script).map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(b) = delta_bound {
        d.delta_bound = b;
    }
    let matching = if strict { AxiomMatching::Strict } else { AxiomMatching::UpToRenaming };
    let verdict = verify_deduction(&d, matching);
    let mut report = DeduceReport {
        valid: verdict.valid,
        steps: verdict.steps,
        delta_bound: verdict.delta_bound,
        first_bad: verdict.first_bad,
        conclusion: d.theorem().map(ToString::to_string),
        tail: None,
        models: None,
    };
    if !report.valid {
        return Ok((Report::Deduce(report), 1));
    }
    report.tail = Some(check_tail_invariant(&d.axioms, &d));
    if let Some(dir) = check_models {
        let conclusion = d.theorem().expect("valid deductions are nonempty").clone();
        let mut axioms = d.axioms.clone();
        axioms.identities.extend(delta_basis(d.delta_bound).identities);
        report.models = Some(cross_check(dir, &axioms, &conclusion, config)?);
    }
    let ok = report.models.as_ref().map_or(true, |m| m.counterexample.is_none());
    Ok((Report::Deduce(report), property(ok)))
}

fn table_files(dir: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tbl"))
        .collect();
    files.sort();
    Ok(files)
}

fn cross_check(
    dir: &Path,
    axioms: &IdentitySystem,
    conclusion: &Identity,
    config: &CheckConfig,
) -> Result<ModelCheck, CliError> {
    let mut check = ModelCheck { models: 0, skipped: 0, counterexample: None };
    for path in table_files(dir)? {
        let t = LoadedTable::load(&path)?;
        let s = t.algebra();
        if !satisfies_system(s, axioms, config).map_err(guard)?.holds {
            check.skipped += 1;
            continue;
        }
        check.models += 1;
        if check.counterexample.is_none() {
            if let Some(w) = satisfies(s, conclusion, config).map_err(guard)?.witness {
                let stem = path.file_stem().map(|x| x.to_string_lossy().into_owned()).unwrap_or_default();
                check.counterexample = Some((stem, w.render(s)));
            }
        }
    }
    Ok(check)
}

fn structure_file(s: &Structure) -> String {
    render_table(s.table(), s.declared_unary())
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))
}

fn write_tables(dir: &Path, tables: &[(String, String)]) -> Result<(), CliError> {
    create_dir(dir)?;
    for (name, text) in tables {
        let path = dir.join(format!("{name}.tbl"));
        fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn catalog(name: Option<&str>, out: Option<&Path>) -> Result<Done, CliError> {
    let tables: Vec<(String, String)> = match (name, out) {
        (Some(name), _) => {
            let named: Named = name.parse().map_err(|e: epiworks_core::catalog::CatalogError| CliError::Input(e.to_string()))?;
            let s = make_named(named).map_err(|e| CliError::Input(e.to_string()))?;
            vec![(named.to_string(), structure_file(&s))]
        }
        (None, Some(_)) => standard_models()
            .into_iter()
            .map(|(n, e)| (n.to_string(), render_table(e.table(), None)))
            .collect(),
        (None, None) => return Err(CliError::Input("catalog needs a structure name or --out <dir>".into())),
    };
    let written_to = match out {
        Some(dir) => {
            write_tables(dir, &tables)?;
            Some(dir.display().to_string())
        }
        None => None,
    };
    Ok((Report::Catalog(CatalogReport { tables, written_to }), 0))
}

fn enumerate(order: usize, iso: bool, out: Option<&Path>) -> Result<Done, CliError> {
    let all = if order == 4 {
        enumerate_semigroups_order_four(iso)
    } else {
        enumerate_semigroups(order, iso).map_err(|e| CliError::Input(e.to_string()))?
    };
    let written_to = match out {
        Some(dir) => {
            let tables: Vec<(String, String)> = all
                .iter()
                .enumerate()
                .map(|(i, e)| (format!("S{order}_{i}"), render_table(e.table(), None)))
                .collect();
            write_tables(dir, &tables)?;
            Some(dir.display().to_string())
        }
        None => None,
    };
    Ok((Report::Enumerate(EnumerateReport { order, up_to_iso: iso, count: all.len(), written_to }), 0))
}
