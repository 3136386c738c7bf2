use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{Deduction, Justification, Step};
use crate::terms::{parse_word, Identity, IdentitySystem, Letter, Word};

/// Header of a proof script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptHeader {
    /// Axiom file relative to the script, `None` for `axioms: none`.
    pub axioms: Option<String>,
    pub delta_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("script line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("axiom file {path}: {message}")]
    Axioms { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax { line, message: message.into() }
}

/// Parses a script:
///
/// ```text
/// axioms: sigma.txt
/// delta_bound: 2
/// 0. x = x x ; axiom
/// 1. x x = x x x x ; prod 0 0
/// ```
///
/// Blank lines and `#` comments are skipped. Steps are numbered from 0.
pub fn parse_script(text: &str) -> Result<(ScriptHeader, Vec<Step>), ScriptError> {
    let mut axioms: Option<Option<String>> = None;
    let mut bound: Option<usize> = None;
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("axioms:") {
            if axioms.is_some() || !steps.is_empty() {
                return Err(syntax(n, "misplaced `axioms:` header"));
            }
            let rest = rest.trim();
            axioms = Some((rest != "none").then(|| rest.to_owned()));
        } else if let Some(rest) = line.strip_prefix("delta_bound:") {
            if bound.is_some() || !steps.is_empty() {
                return Err(syntax(n, "misplaced `delta_bound:` header"));
            }
            bound = Some(rest.trim().parse().map_err(|_| syntax(n, "delta_bound must be an integer"))?);
        } else {
            steps.push(parse_step(line, steps.len()).map_err(|m| syntax(n, m))?);
        }
    }
    let header = ScriptHeader {
        axioms: axioms.ok_or_else(|| syntax(1, "missing `axioms:` header"))?,
        delta_bound: bound.ok_or_else(|| syntax(1, "missing `delta_bound:` header"))?,
    };
    Ok((header, steps))
}

fn parse_step(line: &str, expected: usize) -> Result<Step, String> {
    let (num, rest) = line.split_once('.').ok_or("expected `<n>. <identity> ; <rule>`")?;
    let num: usize = num.trim().parse().map_err(|_| format!("bad step number `{}`", num.trim()))?;
    if num != expected {
        return Err(format!("step numbered {num}, expected {expected}"));
    }
    let (eq, rule) = rest.rsplit_once(';').ok_or("missing `; <rule>`")?;
    let identity = Identity::parse(eq.trim()).map_err(|e| e.to_string())?;
    let justification = parse_rule(rule.trim())?;
    Ok(Step { identity, justification })
}

fn parse_rule(text: &str) -> Result<Justification, String> {
    let (name, args) = text.split_once(' ').unwrap_or((text, ""));
    let args = args.trim();
    let index = |s: &str| s.parse::<usize>().map_err(|_| format!("bad step index `{s}`"));
    let indices = |count: usize| -> Result<Vec<usize>, String> {
        let parts: Vec<&str> = args.split_whitespace().collect();
        if parts.len() != count {
            return Err(format!("`{name}` takes {count} step indices"));
        }
        parts.into_iter().map(index).collect()
    };
    use Justification::*;
    Ok(match name {
        "axiom" if args.is_empty() => Axiom,
        "refl" if args.is_empty() => Reflexive,
        "sym" => Symmetry(indices(1)?[0]),
        "bar" => BarOf(indices(1)?[0]),
        "trans" => {
            let v = indices(2)?;
            Transitivity(v[0], v[1])
        }
        "prod" => {
            let v = indices(2)?;
            ProductOf(v[0], v[1])
        }
        "subst" => {
            let (j, images) = args.split_once(' ').ok_or("`subst` needs a step index and images")?;
            SubstitutionOf(index(j)?, parse_images(images)?)
        }
        _ => return Err(format!("unknown rule `{text}`")),
    })
}

fn parse_images(text: &str) -> Result<BTreeMap<Letter, Word>, String> {
    let mut map = BTreeMap::new();
    for part in text.split(',') {
        let (l, img) = part.split_once(":=").ok_or_else(|| format!("expected `letter:=word`, got `{part}`"))?;
        let l = Letter::new(l.trim()).map_err(|e| e.to_string())?;
        let img = parse_word(img.trim()).map_err(|e| e.to_string())?;
        if map.insert(l.clone(), img).is_some() {
            return Err(format!("letter `{l}` substituted twice"));
        }
    }
    Ok(map)
}

pub fn render_script(header: &ScriptHeader, steps: &[Step]) -> String {
    let mut out = format!(
        "axioms: {}\ndelta_bound: {}\n",
        header.axioms.as_deref().unwrap_or("none"),
        header.delta_bound
    );
    for (i, s) in steps.iter().enumerate() {
        out.push_str(&format!("{i}. {} ; {}\n", s.identity, s.justification));
    }
    out
}

/// Reads a script and the axiom file it names.
pub fn load_script(path: &Path) -> Result<Deduction, ScriptError> {
    let read = |p: &Path| {
        std::fs::read_to_string(p)
            .map_err(|e| ScriptError::Io { path: p.display().to_string(), message: e.to_string() })
    };
    let (header, steps) = parse_script(&read(path)?)?;
    let axioms = match &header.axioms {
        None => IdentitySystem::default(),
        Some(rel) => {
            let full: PathBuf = path.parent().unwrap_or(Path::new(".")).join(rel);
            IdentitySystem::parse(&read(&full)?)
                .map_err(|e| ScriptError::Axioms { path: full.display().to_string(), message: e.to_string() })?
        }
    };
    Ok(Deduction { axioms, delta_bound: header.delta_bound, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::w;

    const SCRIPT: &str = "\
axioms: sigma.txt
delta_bound: 2
0. x = x x ; axiom
1. x x = x x x x ; prod 0 0
2. x = x x x x ; trans 0 1
3. y' = y' y' ; subst 0 x:=y'
4. x x x x = x ; sym 2
";

    #[test]
    fn round_trip() {
        let (h, steps) = parse_script(SCRIPT).unwrap();
        assert_eq!(h.axioms.as_deref(), Some("sigma.txt"));
        assert_eq!(h.delta_bound, 2);
        assert_eq!(steps[3].justification, Justification::SubstitutionOf(0, [(Letter::new("x").unwrap(), w("y'"))].into()));
        assert_eq!(render_script(&h, &steps), SCRIPT);
    }

    #[test]
    fn multi_image_substitution() {
        let text = "axioms: none\ndelta_bound: 3\n0. x y = y x ; subst 0 x:=y z,y:=x'\n";
        let (h, steps) = parse_script(text).unwrap();
        assert_eq!(h.axioms, None);
        assert_eq!(render_script(&h, &steps), text);
    }

    #[test]
    fn syntax_errors() {
        let bad = [
            "delta_bound: 2\n0. x = x ; refl\n",
            "axioms: none\ndelta_bound: 2\n1. x = x ; refl\n",
            "axioms: none\ndelta_bound: 2\n0. x = x ; reflexive\n",
            "axioms: none\ndelta_bound: 2\n0. x = x ; trans 0\n",
            "axioms: none\ndelta_bound: 2\n0. x = x\n",
            "axioms: none\ndelta_bound: 2\n0. x = x ; subst 0 x:=y,x:=z\n",
            "axioms: none\ndelta_bound: two\n",
        ];
        for text in bad {
            assert!(matches!(parse_script(text), Err(ScriptError::Syntax { .. })), "{text}");
        }
    }
}
