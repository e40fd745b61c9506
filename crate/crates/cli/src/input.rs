//! Algebra, module and kernel references: built-in fixture expressions, input
//! files, and files found in the fixture directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hochkit_core::algebra::{Algebra, SerreData};
use hochkit_core::fixtures::{builtin, fixture_with, Fixture, FixtureError};
use hochkit_core::linalg::{SparseMatrix, SparseVec};
use hochkit_core::modules::{Bimodule, ModuleRep};
use hochkit_core::mukai::{chern, MukaiClass};
use hochkit_core::scalars::{parse_scalar, parse_scalar_list, CycScalar, ScalarError};

use crate::CliError;

pub const FIXTURE_ENV: &str = "HOCHKIT_FIXTURES";

/// One `key args... = value` line of an input file.
#[derive(Debug)]
struct Entry {
    key: String,
    args: Vec<usize>,
    value: String,
    line: usize,
    /// 1-based column where `value` starts.
    column: usize,
}

fn parse_error(path: &Path, line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.display().to_string(), line, column, message: message.into() }
}

fn entries(path: &Path, text: &str) -> Result<Vec<Entry>, CliError> {
    let mut out = Vec::new();
    for (n, content) in text.lines().enumerate() {
        let line = n + 1;
        if content.trim().is_empty() || content.trim_start().starts_with('#') {
            continue;
        }
        let eq = content.find('=').ok_or_else(|| parse_error(path, line, 1, "expected `key = value`"))?;
        let mut words = content[..eq].split_whitespace();
        let key = words.next().ok_or_else(|| parse_error(path, line, 1, "missing key"))?.to_string();
        let mut args = Vec::new();
        for w in words {
            let col = content.find(w).unwrap_or(0) + 1;
            args.push(w.parse().map_err(|_| parse_error(path, line, col, format!("expected an index, found `{w}`")))?);
        }
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        out.push(Entry {
            key,
            args,
            value: after.trim().to_string(),
            line,
            column: eq + 2 + lead,
        });
    }
    Ok(out)
}

impl Entry {
    fn err(&self, path: &Path, offset: usize, message: impl Into<String>) -> CliError {
        parse_error(path, self.line, self.column + offset, message)
    }

    fn scalar_err(&self, path: &Path, offset: usize, e: ScalarError) -> CliError {
        match e {
            ScalarError::Parse { position, message } => self.err(path, offset + position, message),
            other => self.err(path, offset, other.to_string()),
        }
    }

    fn usize(&self, path: &Path) -> Result<usize, CliError> {
        self.value.parse().map_err(|_| self.err(path, 0, format!("expected a non-negative integer, found `{}`", self.value)))
    }

    fn list(&self, path: &Path) -> Result<Vec<CycScalar>, CliError> {
        parse_scalar_list(&self.value).map_err(|e| self.scalar_err(path, 0, e))
    }

    fn index(&self, path: &Path, count: usize) -> Result<Vec<usize>, CliError> {
        if self.args.len() != count {
            return Err(self.err(path, 0, format!("`{}` takes {count} index argument(s)", self.key)));
        }
        Ok(self.args.clone())
    }

    /// `[k:scalar, ...]`
    fn sparse(&self, path: &Path, dim: usize) -> Result<SparseVec, CliError> {
        let v = &self.value;
        let inner = v
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| self.err(path, 0, "expected `[k:scalar, ...]`"))?;
        let mut out: SparseVec = Vec::new();
        let mut offset = 1;
        for part in inner.split(',') {
            let here = offset;
            offset += part.len() + 1;
            if part.trim().is_empty() {
                continue;
            }
            let (k, s) = part.split_once(':').ok_or_else(|| self.err(path, here, "expected `index:scalar`"))?;
            let k: usize =
                k.trim().parse().map_err(|_| self.err(path, here, format!("bad index `{}`", k.trim())))?;
            if k >= dim {
                return Err(self.err(path, here, format!("index {k} out of range for dim {dim}")));
            }
            let c = parse_scalar(s).map_err(|e| self.scalar_err(path, here + part.find(':').unwrap_or(0) + 1, e))?;
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        for w in out.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(self.err(path, 0, format!("index {} repeated", w[0].0)));
            }
        }
        Ok(out)
    }

    /// `[[a, b], [c, d]]`, checked to be `dim × dim`.
    fn matrix(&self, path: &Path, dim: usize) -> Result<SparseMatrix, CliError> {
        let v = &self.value;
        let inner = v
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| self.err(path, 0, "expected `[[row], [row], ...]`"))?;
        let mut rows = Vec::new();
        let mut rest = inner;
        let mut offset = 1;
        loop {
            let skip = rest.len() - rest.trim_start_matches([' ', ',', '\t']).len();
            rest = &rest[skip..];
            offset += skip;
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('[') {
                return Err(self.err(path, offset, "expected `[` starting a row"));
            }
            let end = rest.find(']').ok_or_else(|| self.err(path, offset, "unterminated row"))?;
            let row = parse_scalar_list(&rest[..=end]).map_err(|e| self.scalar_err(path, offset, e))?;
            if row.len() != dim {
                return Err(self.err(path, offset, format!("row has {} entries, expected {dim}", row.len())));
            }
            rows.push(row);
            rest = &rest[end + 1..];
            offset += end + 1;
        }
        if rows.len() != dim {
            return Err(self.err(path, 0, format!("matrix has {} rows, expected {dim}", rows.len())));
        }
        if dim == 0 {
            return Ok(SparseMatrix::zeros(0, 0));
        }
        Ok(SparseMatrix::from_dense(&rows))
    }
}

/// A `dim × dim` matrix given on the command line.
pub fn matrix_arg(text: &str, dim: usize) -> Result<SparseMatrix, CliError> {
    let e = Entry { key: "matrix".into(), args: Vec::new(), value: text.trim().to_string(), line: 1, column: 1 };
    e.matrix(Path::new("<argument>"), dim)
}

fn require<'a>(path: &Path, es: &'a [Entry], key: &str) -> Result<&'a Entry, CliError> {
    es.iter().find(|e| e.key == key).ok_or_else(|| parse_error(path, 1, 1, format!("missing `{key}`")))
}

fn check_keys(path: &Path, es: &[Entry], allowed: &[&str]) -> Result<(), CliError> {
    match es.iter().find(|e| !allowed.contains(&e.key.as_str())) {
        Some(e) => Err(parse_error(path, e.line, 1, format!("unknown key `{}`", e.key))),
        None => Ok(()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// What an input file describes, judged by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecKind {
    Algebra,
    Module,
    Bimodule,
}

pub fn spec_kind(path: &Path) -> Result<SpecKind, CliError> {
    let text = read(path)?;
    let es = entries(path, &text)?;
    Ok(if es.iter().any(|e| e.key == "source" || e.key == "kernel") {
        SpecKind::Bimodule
    } else if es.iter().any(|e| e.key == "algebra") {
        SpecKind::Module
    } else {
        SpecKind::Algebra
    })
}

/// Splits `text` at top-level commas (outside parentheses).
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out
}

fn call<'a>(text: &'a str, name: &str) -> Option<&'a str> {
    text.trim().strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

pub struct Loader {
    dir: Option<PathBuf>,
    field_order: Option<u32>,
}

impl Loader {
    /// The fixture directory is `$HOCHKIT_FIXTURES` if set, else `./fixtures` when present.
    pub fn from_env(field_order: Option<u32>) -> Self {
        let dir = match std::env::var_os(FIXTURE_ENV) {
            Some(d) => Some(PathBuf::from(d)),
            None => Some(PathBuf::from("fixtures")).filter(|p| p.is_dir()),
        };
        Loader { dir, field_order }
    }

    fn in_dir(&self, name: &str, ext: &str) -> Option<PathBuf> {
        let p = self.dir.as_ref()?.join(format!("{name}.{ext}"));
        p.is_file().then_some(p)
    }

    /// A module or bimodule file in the fixture directory.
    pub fn named_file(&self, name: &str) -> Option<PathBuf> {
        self.in_dir(name, "mod").or_else(|| self.in_dir(name, "bimod"))
    }

    fn widen(&self, f: Fixture) -> Fixture {
        match self.field_order {
            Some(n) => f.with_field_order(n),
            None => f,
        }
    }

    /// A fixture expression, a `.alg` file in the fixture directory, or a path.
    pub fn algebra(&self, text: &str) -> Result<Fixture, CliError> {
        let path = Path::new(text);
        let f = if path.is_file() {
            self.algebra_file(path)?
        } else {
            let resolve = |atom: &str| -> Result<Fixture, FixtureError> {
                match self.in_dir(atom, "alg") {
                    Some(p) => self.algebra_file(&p).map_err(|e| FixtureError::Unknown(format!("{atom}: {e}"))),
                    None => builtin(atom),
                }
            };
            fixture_with(text, &resolve)?
        };
        Ok(self.widen(f))
    }

    fn algebra_file(&self, path: &Path) -> Result<Fixture, CliError> {
        let algebra = parse_algebra(path, &read(path)?)?;
        let name = path.file_stem().map_or_else(|| "file".into(), |s| s.to_string_lossy().into_owned());
        Ok(Fixture {
            name: name.clone(),
            algebra: Arc::new(algebra.with_name(name)),
            group: None,
            simples: Vec::new(),
            augmentation: None,
        })
    }

    /// A module over `f`: `regular`, `aug`, a bundled simple, sums such as
    /// `triv+2*std`, a `.mod` file in the fixture directory, or a path.
    pub fn module(&self, f: &Fixture, text: &str) -> Result<ModuleRep, CliError> {
        let path = Path::new(text);
        if path.is_file() {
            return self.module_file(path, Some(f));
        }
        if let Some(p) = self.in_dir(text, "mod") {
            return self.module_file(&p, Some(f));
        }
        let mut total: Option<ModuleRep> = None;
        for term in text.split('+') {
            let term = term.trim();
            let (count, name) = match term.split_once('*') {
                Some((k, n)) => (
                    k.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad multiplicity in `{term}`")))?,
                    n.trim(),
                ),
                None => (1, term),
            };
            let m = match name {
                "regular" => f.regular_module(),
                "aug" => f
                    .augmentation
                    .clone()
                    .ok_or_else(|| CliError::Usage(format!("{} has no augmentation module", f.name)))?,
                _ => f.simple(name).cloned().ok_or_else(|| {
                    let known: Vec<&str> = f.simples.iter().map(|s| s.name.as_str()).collect();
                    CliError::Usage(format!(
                        "unknown module `{name}` for {} (bundled: {}; also `regular`, `aug`, or a module file)",
                        f.name,
                        known.join(", ")
                    ))
                })?,
            };
            for _ in 0..count {
                total = Some(match total {
                    None => m.clone(),
                    Some(t) => t.direct_sum(&m)?,
                });
            }
        }
        total.ok_or_else(|| CliError::Usage("empty module expression".into()))
    }

    /// Parses a module file; when `over` is given, the file's algebra must match it.
    pub fn module_file(&self, path: &Path, over: Option<&Fixture>) -> Result<ModuleRep, CliError> {
        let text = read(path)?;
        let es = entries(path, &text)?;
        check_keys(path, &es, &["algebra", "dim", "action"])?;
        let alg_entry = require(path, &es, "algebra")?;
        let declared = self.relative_algebra(path, &alg_entry.value)?;
        let algebra = match over {
            Some(f) => {
                if !f.algebra.same_structure(&declared.algebra) {
                    return Err(alg_entry.err(path, 0, format!("module is over `{}`, expected `{}`", alg_entry.value, f.name)));
                }
                f.algebra.clone()
            }
            None => declared.algebra.clone(),
        };
        let dim = require(path, &es, "dim")?.usize(path)?;
        let mut actions: Vec<Option<SparseMatrix>> = vec![None; algebra.dim()];
        for e in es.iter().filter(|e| e.key == "action") {
            let i = e.index(path, 1)?[0];
            if i >= algebra.dim() {
                return Err(e.err(path, 0, format!("basis index {i} out of range for dim {}", algebra.dim())));
            }
            actions[i] = Some(e.matrix(path, dim)?);
        }
        let actions = actions
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| parse_error(path, 1, 1, format!("missing `action {i}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        ModuleRep::new(algebra, actions).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    fn relative_algebra(&self, file: &Path, reference: &str) -> Result<Fixture, CliError> {
        let rel = file.parent().map(|d| d.join(reference));
        match rel {
            Some(p) if p.is_file() => self.algebra(&p.to_string_lossy()),
            _ => self.algebra(reference),
        }
    }

    /// `alg#module`
    fn module_ref(&self, text: &str) -> Result<(Fixture, ModuleRep), CliError> {
        let (a, m) = text
            .rsplit_once('#')
            .ok_or_else(|| CliError::Usage(format!("expected `<algebra>#<module>`, found `{text}`")))?;
        let f = self.algebra(a.trim())?;
        let m = self.module(&f, m.trim())?;
        Ok((f, m))
    }

    /// A kernel A → B: `outer(A#V, B#W)` (W ⊗ V*), `regular(A)`, or a bimodule file.
    /// Returns the kernel with its source and target fixtures.
    pub fn kernel(&self, text: &str) -> Result<(Bimodule, Fixture, Fixture), CliError> {
        if let Some(inner) = call(text, "outer") {
            let parts = split_top(inner);
            if parts.len() != 2 {
                return Err(CliError::Usage("outer(...) takes two module references".into()));
            }
            let (fa, v) = self.module_ref(parts[0])?;
            let (fb, w) = self.module_ref(parts[1])?;
            return Ok((Bimodule::outer(&v, &w), fa, fb));
        }
        if let Some(inner) = call(text, "regular") {
            let f = self.algebra(inner.trim())?;
            return Ok((Bimodule::regular(f.algebra.clone()), f.clone(), f));
        }
        let path = Path::new(text);
        if path.is_file() {
            return self.bimodule_file(path);
        }
        if let Some(p) = self.in_dir(text, "bimod") {
            return self.bimodule_file(&p);
        }
        Err(CliError::Usage(format!("unknown kernel `{text}` (use outer(A#V, B#W), regular(A) or a bimodule file)")))
    }

    /// `source`, `target`, `dim` and `action i` over the basis of B ⊗ A^op
    /// (index b · dim A + a, acting as m ↦ b·m·a); or `kernel = outer(...)`.
    pub fn bimodule_file(&self, path: &Path) -> Result<(Bimodule, Fixture, Fixture), CliError> {
        let text = read(path)?;
        let es = entries(path, &text)?;
        check_keys(path, &es, &["kernel", "source", "target", "dim", "action"])?;
        if let Some(k) = es.iter().find(|e| e.key == "kernel") {
            return self.kernel(&k.value);
        }
        let src = self.relative_algebra(path, &require(path, &es, "source")?.value)?;
        let tgt = self.relative_algebra(path, &require(path, &es, "target")?.value)?;
        let dim = require(path, &es, "dim")?.usize(path)?;
        let (da, db) = (src.algebra.dim(), tgt.algebra.dim());
        let mut actions: Vec<Option<SparseMatrix>> = vec![None; da * db];
        for e in es.iter().filter(|e| e.key == "action") {
            let i = e.index(path, 1)?[0];
            if i >= da * db {
                return Err(e.err(path, 0, format!("index {i} out of range for the {}-dim tensor basis", da * db)));
            }
            actions[i] = Some(e.matrix(path, dim)?);
        }
        let actions = actions
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| parse_error(path, 1, 1, format!("missing `action {i}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let weighted = |terms: &mut dyn Iterator<Item = (usize, &CycScalar)>| {
            terms.fold(SparseMatrix::zeros(dim, dim), |acc, (k, c)| acc.axpy(c, &actions[k]))
        };
        let left = (0..db)
            .map(|b| weighted(&mut src.algebra.unit().iter().enumerate().map(|(a, c)| (b * da + a, c))))
            .collect();
        let right = (0..da)
            .map(|a| weighted(&mut tgt.algebra.unit().iter().enumerate().map(|(b, c)| (b * da + a, c))))
            .collect();
        let k = Bimodule::new(src.algebra.clone(), tgt.algebra.clone(), left, right)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        Ok((k, src, tgt))
    }

    /// A class in HH₀(A) = Z(A): `[coords]` or `ch(<module>)`.
    pub fn class(&self, f: &Fixture, text: &str) -> Result<MukaiClass, CliError> {
        if let Some(inner) = call(text, "ch") {
            return Ok(chern(&self.module(f, inner.trim())?)?);
        }
        let coords = parse_scalar_list(text).map_err(|e| CliError::Usage(format!("class `{text}`: {e}")))?;
        if coords.len() != f.algebra.dim() {
            return Err(CliError::Usage(format!("class has {} coordinates, {} has dim {}", coords.len(), f.name, f.algebra.dim())));
        }
        Ok(MukaiClass::new(f.algebra.clone(), coords)?)
    }
}

/// Algebra file: `dim`, `field_order`, `unit`, `mult i j`, optional `frobenius`
/// and `labels` (space-separated).
pub fn parse_algebra(path: &Path, text: &str) -> Result<Algebra, CliError> {
    let es = entries(path, text)?;
    check_keys(path, &es, &["name", "dim", "field_order", "unit", "mult", "frobenius", "labels"])?;
    let dim = require(path, &es, "dim")?.usize(path)?;
    if dim == 0 {
        return Err(require(path, &es, "dim")?.err(path, 0, "dim must be positive"));
    }
    let field_order = match es.iter().find(|e| e.key == "field_order") {
        Some(e) => e.usize(path)? as u32,
        None => 1,
    };
    let unit_entry = require(path, &es, "unit")?;
    let unit = unit_entry.list(path)?;
    if unit.len() != dim {
        return Err(unit_entry.err(path, 0, format!("unit has {} coordinates, expected {dim}", unit.len())));
    }
    let mut mult: Vec<Option<SparseVec>> = vec![None; dim * dim];
    for e in es.iter().filter(|e| e.key == "mult") {
        let ij = e.index(path, 2)?;
        if ij[0] >= dim || ij[1] >= dim {
            return Err(parse_error(path, e.line, 1, format!("basis index out of range for dim {dim}")));
        }
        if mult[ij[0] * dim + ij[1]].is_some() {
            return Err(parse_error(path, e.line, 1, format!("mult {} {} given twice", ij[0], ij[1])));
        }
        mult[ij[0] * dim + ij[1]] = Some(e.sparse(path, dim)?);
    }
    // omitted products are zero
    let mult = mult.into_iter().map(Option::unwrap_or_default).collect();
    let serre = match es.iter().find(|e| e.key == "frobenius") {
        Some(e) => {
            let l = e.list(path)?;
            if l.len() != dim {
                return Err(e.err(path, 0, format!("frobenius has {} coordinates, expected {dim}", l.len())));
            }
            Some(SerreData::symmetric(l))
        }
        None => None,
    };
    let labels = match es.iter().find(|e| e.key == "labels") {
        Some(e) => {
            let l: Vec<String> = e.value.split_whitespace().map(String::from).collect();
            if l.len() != dim {
                return Err(e.err(path, 0, format!("{} labels for dim {dim}", l.len())));
            }
            l
        }
        None => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    let name = es.iter().find(|e| e.key == "name").map_or("file", |e| e.value.as_str());
    Algebra::new(name, labels, mult, unit, serre, field_order)
        .map_err(|e| CliError::Validation(format!("{}: {e:?}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("t.alg")
    }

    #[test]
    fn dual_numbers_file() {
        let text = "dim = 2\nunit = [1, 0]\nmult 0 0 = [0:1]\nmult 0 1 = [1:1]\nmult 1 0 = [1:1]\n";
        let a = parse_algebra(p(), text).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.same_structure(&hochkit_core::algebra::truncated_poly(2).unwrap()));
    }

    #[test]
    fn errors_carry_line_and_column() {
        let text = "dim = 2\nunit = [1, 0]\nmult 0 0 = [0:z3^]\n";
        match parse_algebra(p(), text).unwrap_err() {
            CliError::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 14, "{column}");
            }
            e => panic!("{e}"),
        }
        let text = "dim = 3\nunit = [1, 0, 0]\nmult 0 0 = [0:1]\nmult 0 1 = [1:1]\nmult 1 0 = [1:1]\n\
                    mult 0 2 = [2:1]\nmult 2 0 = [2:1]\nmult 1 1 = [2:1]\nmult 2 1 = [1:1]\n";
        assert!(matches!(parse_algebra(p(), text).unwrap_err(), CliError::Validation(m) if m.contains("NotAssociative")));
        assert!(matches!(parse_algebra(p(), "dim 2\n").unwrap_err(), CliError::Parse { line: 1, .. }));
    }

    #[test]
    fn split_and_call() {
        assert_eq!(split_top("tensor(zn:2,zn:3)#chi0, s3#std"), vec!["tensor(zn:2,zn:3)#chi0", "s3#std"]);
        assert_eq!(call("outer(a, b)", "outer"), Some("a, b"));
        assert_eq!(call("regular(s3)", "outer"), None);
    }
}
