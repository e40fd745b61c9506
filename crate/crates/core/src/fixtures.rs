//! Built-in algebras with their simple modules: cyclic groups, S₃, D₄, Q₈, A₄,
//! matrix algebras, truncated polynomial rings and the combinators
//! `tensor(a,b)`, `op(a)`, `env(a)`.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{self, Algebra, AlgebraError, FiniteGroup};
use crate::linalg::SparseMatrix;
use crate::modules::{ModuleError, ModuleRep};
use crate::scalars::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("malformed fixture expression at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: ModuleRep,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub algebra: Arc<Algebra>,
    /// Present for group algebras.
    pub group: Option<FiniteGroup>,
    /// A complete list of simple modules up to isomorphism (one, for the non-semisimple fixtures).
    pub simples: Vec<NamedModule>,
    /// The trivial representation of a group, or the 1-dim module of a local algebra.
    pub augmentation: Option<ModuleRep>,
}

impl Fixture {
    pub fn simple(&self, name: &str) -> Option<&ModuleRep> {
        self.simples.iter().find(|s| s.name == name).map(|s| &s.module)
    }

    pub fn simple_modules(&self) -> Vec<ModuleRep> {
        self.simples.iter().map(|s| s.module.clone()).collect()
    }

    pub fn regular_module(&self) -> ModuleRep {
        ModuleRep::regular(self.algebra.clone())
    }

    /// Widens the declared coefficient field to contain ζ_n.
    pub fn with_field_order(&self, n: u32) -> Fixture {
        let algebra = Arc::new((*self.algebra).clone().with_field_order(n));
        let rebase = |m: &ModuleRep| m.rebase(algebra.clone()).expect("same structure constants");
        Fixture {
            name: self.name.clone(),
            group: self.group.clone(),
            simples: self
                .simples
                .iter()
                .map(|s| NamedModule { name: s.name.clone(), module: rebase(&s.module) })
                .collect(),
            augmentation: self.augmentation.as_ref().map(rebase),
            algebra,
        }
    }
}

/// The group fixtures used for character-theoretic checks.
pub const GROUP_FIXTURES: &[&str] = &["zn:2", "zn:3", "zn:4", "zn:5", "zn:6", "s3", "d4", "q8", "a4"];

fn m(rows: &[&[i64]]) -> SparseMatrix {
    SparseMatrix::from_ints(rows)
}

fn scalar(c: CycScalar) -> SparseMatrix {
    SparseMatrix::scalar(1, &c)
}

fn sign(x: i64) -> SparseMatrix {
    m(&[&[x]])
}

/// ρ(σ) e_i = e_{σ(i)} restricted to span{ e_i − e_last }.
fn reduced_permutation(p: &[usize]) -> SparseMatrix {
    let last = p.len() - 1;
    let mut triplets = Vec::new();
    for i in 0..last {
        if p[i] != last {
            triplets.push((p[i], i, CycScalar::one()));
        }
        if p[last] != last {
            triplets.push((p[last], i, CycScalar::from_int(-1)));
        }
    }
    SparseMatrix::from_triplets(last, last, triplets)
}

#[allow(clippy::ptr_arg)]
fn compose(p: &Vec<usize>, q: &Vec<usize>) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn group_fixture(
    name: &str,
    group: FiniteGroup,
    simples: Vec<(&str, Vec<SparseMatrix>)>,
) -> Result<Fixture, FixtureError> {
    let algebra = Arc::new(group.algebra().with_name(name));
    let mut named = Vec::new();
    for (label, images) in simples {
        let module = ModuleRep::new(algebra.clone(), group.extend_from_generators(&images))?;
        named.push(NamedModule { name: label.to_string(), module });
    }
    let augmentation = Some(named[0].module.clone());
    Ok(Fixture { name: name.to_string(), algebra, group: Some(group), simples: named, augmentation })
}

pub fn cyclic(n: usize) -> Result<Fixture, FixtureError> {
    if n == 0 {
        return Err(FixtureError::Unknown("zn:0".into()));
    }
    let name = format!("zn:{n}");
    let group = FiniteGroup::generate(name.clone(), 0usize, &[1 % n], &["r"], |a, b| (a + b) % n);
    let labels: Vec<String> = (0..n).map(|k| format!("chi{k}")).collect();
    let simples = (0..n)
        .map(|k| (labels[k].as_str(), vec![scalar(CycScalar::root_of_unity(n as u32, k as i64))]))
        .collect();
    group_fixture(&name, group, simples)
}

pub fn symmetric3() -> Result<Fixture, FixtureError> {
    let (s, r) = (vec![1, 0, 2], vec![1, 2, 0]);
    let group = FiniteGroup::generate("s3", vec![0, 1, 2], &[s.clone(), r.clone()], &["s", "r"], compose);
    group_fixture(
        "s3",
        group,
        vec![
            ("triv", vec![sign(1), sign(1)]),
            ("sign", vec![sign(-1), sign(1)]),
            ("std", vec![reduced_permutation(&s), reduced_permutation(&r)]),
        ],
    )
}

pub fn dihedral4() -> Result<Fixture, FixtureError> {
    let (r, s) = (vec![1, 2, 3, 0], vec![0, 3, 2, 1]);
    let group = FiniteGroup::generate("d4", vec![0, 1, 2, 3], &[r, s], &["r", "s"], compose);
    group_fixture(
        "d4",
        group,
        vec![
            ("triv", vec![sign(1), sign(1)]),
            ("chi_pm", vec![sign(1), sign(-1)]),
            ("chi_mp", vec![sign(-1), sign(1)]),
            ("chi_mm", vec![sign(-1), sign(-1)]),
            ("std", vec![m(&[&[0, -1], &[1, 0]]), m(&[&[1, 0], &[0, -1]])]),
        ],
    )
}

/// 2×2 matrices over Z[i], entries as (re, im).
type GaussMatrix = [[(i64, i64); 2]; 2];

fn gauss_mul(a: &GaussMatrix, b: &GaussMatrix) -> GaussMatrix {
    let mut out = [[(0, 0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            for k in 0..2 {
                let (x, y) = (a[i][k], b[k][j]);
                slot.0 += x.0 * y.0 - x.1 * y.1;
                slot.1 += x.0 * y.1 + x.1 * y.0;
            }
        }
    }
    out
}

pub fn quaternion8() -> Result<Fixture, FixtureError> {
    let one: GaussMatrix = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
    let qi: GaussMatrix = [[(0, 1), (0, 0)], [(0, 0), (0, -1)]];
    let qj: GaussMatrix = [[(0, 0), (1, 0)], [(-1, 0), (0, 0)]];
    let group = FiniteGroup::generate("q8", one, &[qi, qj], &["i", "j"], gauss_mul);
    let zeta = CycScalar::root_of_unity(4, 1);
    let two_dim_i =
        SparseMatrix::from_triplets(2, 2, vec![(0, 0, zeta.clone()), (1, 1, -zeta)]);
    group_fixture(
        "q8",
        group,
        vec![
            ("triv", vec![sign(1), sign(1)]),
            ("chi_pm", vec![sign(1), sign(-1)]),
            ("chi_mp", vec![sign(-1), sign(1)]),
            ("chi_mm", vec![sign(-1), sign(-1)]),
            ("std", vec![two_dim_i, m(&[&[0, 1], &[-1, 0]])]),
        ],
    )
}

pub fn alternating4() -> Result<Fixture, FixtureError> {
    let (a, b) = (vec![1, 0, 3, 2], vec![1, 2, 0, 3]);
    let group = FiniteGroup::generate("a4", vec![0, 1, 2, 3], &[a.clone(), b.clone()], &["a", "b"], compose);
    let w = |k| scalar(CycScalar::root_of_unity(3, k));
    group_fixture(
        "a4",
        group,
        vec![
            ("triv", vec![sign(1), sign(1)]),
            ("omega", vec![sign(1), w(1)]),
            ("omega2", vec![sign(1), w(2)]),
            ("std", vec![reduced_permutation(&a), reduced_permutation(&b)]),
        ],
    )
}

pub fn matrix(n: usize) -> Result<Fixture, FixtureError> {
    let algebra = Arc::new(algebra::matrix_algebra(n)?);
    // e_ij acts on column vectors by the matrix unit E_ij
    let action =
        (0..n * n).map(|k| SparseMatrix::from_triplets(n, n, vec![(k / n, k % n, CycScalar::one())])).collect();
    let col = ModuleRep::new(algebra.clone(), action)?;
    Ok(Fixture {
        name: format!("mat:{n}"),
        algebra,
        group: None,
        simples: vec![NamedModule { name: "col".into(), module: col }],
        augmentation: None,
    })
}

pub fn ground_field() -> Result<Fixture, FixtureError> {
    let algebra = Arc::new(algebra::field());
    let k = ModuleRep::new(algebra.clone(), vec![SparseMatrix::identity(1)])?;
    Ok(Fixture {
        name: "field".into(),
        algebra,
        group: None,
        simples: vec![NamedModule { name: "k".into(), module: k.clone() }],
        augmentation: Some(k),
    })
}

pub fn truncated(k: usize) -> Result<Fixture, FixtureError> {
    let algebra = Arc::new(algebra::truncated_poly(k)?);
    let mut action = vec![SparseMatrix::zeros(1, 1); k];
    action[0] = SparseMatrix::identity(1);
    let simple = ModuleRep::new(algebra.clone(), action)?;
    Ok(Fixture {
        name: algebra.name().to_string(),
        algebra,
        group: None,
        simples: vec![NamedModule { name: "k".into(), module: simple.clone() }],
        augmentation: Some(simple),
    })
}

/// Simples of A^op are the duals of simples of A.
pub fn opposite(f: &Fixture) -> Fixture {
    let algebra = Arc::new(algebra::opposite(&f.algebra));
    let dualize = |m: &ModuleRep| m.dual().rebase(algebra.clone()).expect("opposite structure");
    Fixture {
        name: format!("op({})", f.name),
        simples: f
            .simples
            .iter()
            .map(|s| NamedModule { name: format!("{}*", s.name), module: dualize(&s.module) })
            .collect(),
        augmentation: f.augmentation.as_ref().map(dualize),
        group: None,
        algebra,
    }
}

fn outer_module(algebra: &Arc<Algebra>, a: &ModuleRep, b: &ModuleRep) -> ModuleRep {
    let action = a.actions().iter().flat_map(|x| b.actions().iter().map(move |y| x.kron(y))).collect();
    ModuleRep::from_parts(algebra.clone(), action).expect("tensor shapes")
}

/// Simples of A ⊗ B are the outer products S ⊗ T (all simples here are absolutely simple).
pub fn tensor(f: &Fixture, g: &Fixture) -> Fixture {
    let algebra = Arc::new(algebra::tensor(&f.algebra, &g.algebra));
    let mut simples = Vec::new();
    for s in &f.simples {
        for t in &g.simples {
            simples.push(NamedModule {
                name: format!("{}⊗{}", s.name, t.name),
                module: outer_module(&algebra, &s.module, &t.module),
            });
        }
    }
    let augmentation = match (&f.augmentation, &g.augmentation) {
        (Some(a), Some(b)) => Some(outer_module(&algebra, a, b)),
        _ => None,
    };
    Fixture { name: format!("tensor({},{})", f.name, g.name), algebra, group: None, simples, augmentation }
}

pub fn enveloping(f: &Fixture) -> Fixture {
    let mut e = tensor(f, &opposite(f));
    let name = format!("env({})", f.name);
    e.algebra = Arc::new((*e.algebra).clone().with_name(name.clone()));
    e.simples = e
        .simples
        .into_iter()
        .map(|s| NamedModule { name: s.name, module: s.module.rebase(e.algebra.clone()).expect("same") })
        .collect();
    e.augmentation = e.augmentation.map(|a| a.rebase(e.algebra.clone()).expect("same"));
    e.name = name;
    e
}

fn atom(name: &str) -> Result<Fixture, FixtureError> {
    let numbered = |prefix: &str| -> Option<Result<usize, FixtureError>> {
        name.strip_prefix(prefix)
            .map(|rest| rest.parse::<usize>().map_err(|_| FixtureError::Unknown(name.to_string())))
    };
    if let Some(n) = numbered("zn:") {
        return cyclic(n?);
    }
    if let Some(n) = numbered("mat:") {
        return matrix(n?);
    }
    if let Some(k) = numbered("trunc:") {
        return truncated(k?);
    }
    match name {
        "s3" => symmetric3(),
        "d4" => dihedral4(),
        "q8" => quaternion8(),
        "a4" => alternating4(),
        "dual" => truncated(2),
        "field" => ground_field(),
        _ => Err(FixtureError::Unknown(name.to_string())),
    }
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, message: &str) -> FixtureError {
        FixtureError::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FixtureError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == ':' || c == '_')).unwrap_or(rest.len());
        self.pos += len;
        &self.text[start..start + len]
    }

    fn expr(&mut self, resolve: &dyn Fn(&str) -> Result<Fixture, FixtureError>) -> Result<Fixture, FixtureError> {
        let start = self.pos;
        let w = self.word();
        if w.is_empty() {
            return Err(self.err("expected a fixture name"));
        }
        match w {
            "tensor" => {
                self.expect('(')?;
                let a = self.expr(resolve)?;
                self.expect(',')?;
                let b = self.expr(resolve)?;
                self.expect(')')?;
                Ok(tensor(&a, &b))
            }
            "op" | "env" => {
                self.expect('(')?;
                let a = self.expr(resolve)?;
                self.expect(')')?;
                Ok(if w == "op" { opposite(&a) } else { enveloping(&a) })
            }
            _ => resolve(w).map_err(|e| match e {
                FixtureError::Unknown(_) => FixtureError::Parse { position: start, message: format!("unknown fixture `{w}`") },
                other => other,
            }),
        }
    }
}

/// Parses a fixture expression such as `tensor(mat:2,op(s3))`.
pub fn fixture(expr: &str) -> Result<Fixture, FixtureError> {
    fixture_with(expr, &atom)
}

/// As [`fixture`], with a custom resolver for atomic names.
pub fn fixture_with(expr: &str, resolve: &dyn Fn(&str) -> Result<Fixture, FixtureError>) -> Result<Fixture, FixtureError> {
    let mut p = ExprParser { text: expr, pos: 0 };
    let f = p.expr(resolve)?;
    p.skip_ws();
    if p.pos != expr.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

/// Resolves a built-in atomic name (no combinators).
pub fn builtin(name: &str) -> Result<Fixture, FixtureError> {
    atom(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_fixture_dims() {
        for (name, order, simples) in
            [("s3", 6, 3), ("d4", 8, 5), ("q8", 8, 5), ("a4", 12, 4), ("zn:5", 5, 5)]
        {
            let f = fixture(name).unwrap();
            assert_eq!(f.algebra.dim(), order, "{name}");
            assert_eq!(f.simples.len(), simples, "{name}");
            let sum: usize = f.simples.iter().map(|s| s.module.dim() * s.module.dim()).sum();
            assert_eq!(sum, order, "{name}: Σ dim² = |G|");
        }
    }

    #[test]
    fn combinators() {
        let f = fixture("tensor(zn:2, op(mat:2))").unwrap();
        assert_eq!(f.algebra.dim(), 8);
        for s in &f.simples {
            s.module.validate().unwrap();
        }
        let e = fixture("env(zn:2)").unwrap();
        assert_eq!(e.algebra.name(), "env(zn:2)");
        assert_eq!(e.simples.len(), 4);
        assert!(matches!(fixture("tensor(zn:2"), Err(FixtureError::Parse { .. })));
        assert!(matches!(fixture("nope"), Err(FixtureError::Parse { position: 0, .. })));
    }
}
