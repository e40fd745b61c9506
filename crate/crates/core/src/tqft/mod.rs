//! Closed-surface invariants of a finite group from pants and cap kernels.
//!
//! With A = K[G]: pants_split is K[G×G] as a kernel from A to A ⊗ A (left
//! action of G×G, right action of the diagonal), pants_merge is the same space
//! read backwards, and the caps are the trivial representation as a kernel
//! between the field and A in either direction.

mod word;

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{field, tensor, Algebra, FiniteGroup};
use crate::linalg::SparseMatrix;
use crate::modules::{convolve, Bimodule, ModuleError, ModuleRep};
use crate::scalars::Rational;

pub use word::{parse_word, CobordismWord, Generator, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TqftError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("arity mismatch at step {step}: needs {expected} circles, have {found}")]
    ArityMismatch { step: usize, expected: usize, found: usize },
    #[error("no augmentation module supplied")]
    MissingAugmentation,
    #[error("algebra `{0}` is not the group algebra of the supplied group")]
    NotAGroupAlgebra(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// The four generator kernels for a group algebra.
#[derive(Clone, Debug)]
pub struct GeneratorKernels {
    algebra: Arc<Algebra>,
    pub split: Bimodule,
    pub merge: Bimodule,
    pub cap_in: Bimodule,
    pub cap_out: Bimodule,
}

fn permutation(n: usize, f: impl Fn(usize) -> usize) -> SparseMatrix {
    SparseMatrix::from_triplets(n, n, (0..n).map(|x| (f(x), x, crate::scalars::CycScalar::one())))
}

pub fn generator_kernels(
    algebra: &Arc<Algebra>,
    group: &FiniteGroup,
    augmentation: Option<&ModuleRep>,
) -> Result<GeneratorKernels, TqftError> {
    let aug = augmentation.ok_or(TqftError::MissingAugmentation)?;
    let n = group.order();
    if algebra.dim() != n || !algebra.same_structure(&group.algebra()) {
        return Err(TqftError::NotAGroupAlgebra(algebra.name().to_string()));
    }
    let pair = Arc::new(tensor(algebra, algebra));
    let k = Arc::new(field());
    let nn = n * n;
    // coordinates (x, y) ↦ x·n + y
    let left_pair: Vec<SparseMatrix> = (0..nn)
        .map(|gh| {
            let (g, h) = (gh / n, gh % n);
            permutation(nn, |xy| group.mul(g, xy / n) * n + group.mul(h, xy % n))
        })
        .collect();
    let right_pair: Vec<SparseMatrix> = (0..nn)
        .map(|gh| {
            let (g, h) = (gh / n, gh % n);
            permutation(nn, |xy| group.mul(xy / n, g) * n + group.mul(xy % n, h))
        })
        .collect();
    let left_diag: Vec<SparseMatrix> =
        (0..n).map(|g| permutation(nn, |xy| group.mul(g, xy / n) * n + group.mul(g, xy % n))).collect();
    let right_diag: Vec<SparseMatrix> =
        (0..n).map(|g| permutation(nn, |xy| group.mul(xy / n, g) * n + group.mul(xy % n, g))).collect();
    let split = Bimodule::new(algebra.clone(), pair.clone(), left_pair, right_diag)?;
    let merge = Bimodule::new(pair, algebra.clone(), left_diag, right_pair)?;
    let id = SparseMatrix::identity(aug.dim());
    let cap_in = Bimodule::new(k.clone(), algebra.clone(), aug.actions().to_vec(), vec![id.clone()])?;
    let right = aug.actions().iter().map(SparseMatrix::transpose).collect();
    let cap_out = Bimodule::new(algebra.clone(), k, vec![id], right)?;
    Ok(GeneratorKernels { algebra: algebra.clone(), split, merge, cap_in, cap_out })
}

impl GeneratorKernels {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    fn kernel(&self, g: Generator) -> &Bimodule {
        match g {
            Generator::CapIn => &self.cap_in,
            Generator::CapOut => &self.cap_out,
            Generator::PantsSplit => &self.split,
            Generator::PantsMerge => &self.merge,
        }
    }
}

/// A^{⊗k}, with A^{⊗0} the field.
struct Powers {
    base: Arc<Algebra>,
    cache: Vec<Arc<Algebra>>,
}

impl Powers {
    fn new(base: Arc<Algebra>) -> Self {
        Powers { cache: vec![Arc::new(field()), base.clone()], base }
    }

    fn get(&mut self, k: usize) -> Arc<Algebra> {
        while self.cache.len() <= k {
            let next = Arc::new(tensor(self.cache.last().expect("nonempty"), &self.base));
            self.cache.push(next);
        }
        self.cache[k].clone()
    }

    /// The identity kernel on A^{⊗k}.
    fn identity(&mut self, k: usize) -> Bimodule {
        Bimodule::regular(self.get(k))
    }
}

/// I^{⊗before} ⊠ K ⊠ I^{⊗after} between the appropriate tensor powers.
fn padded(k: &Bimodule, step: Step, arity: usize, powers: &mut Powers) -> Result<Bimodule, TqftError> {
    let (input, output) = step.generator.arity();
    let before = step.position;
    let after = arity - step.position - input;
    let mut out = k.clone();
    if before > 0 {
        let src = powers.get(before + input);
        let tgt = powers.get(before + output);
        out = Bimodule::boxtimes_over(&powers.identity(before), &out, src, tgt)?;
    }
    if after > 0 {
        let src = powers.get(arity);
        let tgt = powers.get(arity - input + output);
        out = Bimodule::boxtimes_over(&out, &powers.identity(after), src, tgt)?;
    }
    let src = powers.get(arity);
    let tgt = powers.get(arity - input + output);
    Ok(out.rebase(src, tgt)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariant {
    pub algebra: String,
    pub word: String,
    pub genus: Option<usize>,
    pub dim: usize,
}

/// Convolves the generator kernels left to right; the result is a kernel
/// from the field to itself, i.e. a vector space.
pub fn evaluate(kernels: &GeneratorKernels, word: &CobordismWord) -> Result<SurfaceInvariant, TqftError> {
    let mut powers = Powers::new(kernels.algebra.clone());
    let mut arity = 0;
    let mut running: Option<Bimodule> = None;
    for step in word.steps() {
        let k = padded(kernels.kernel(step.generator), *step, arity, &mut powers)?;
        running = Some(match running {
            None => k,
            Some(r) => convolve(&r, &k)?,
        });
        let (input, output) = step.generator.arity();
        arity = arity - input + output;
    }
    let result = running.expect("words are nonempty");
    Ok(SurfaceInvariant {
        algebra: kernels.algebra.name().to_string(),
        word: word.to_string(),
        genus: word.declared_genus().or_else(|| word.euler_genus()),
        dim: result.dim(),
    })
}

/// |Hom(π₁Σ_g, G)| / |G|, counting tuples with Π [a_i, b_i] = e.
pub fn homomorphism_count_oracle(group: &FiniteGroup, genus: usize) -> Rational {
    let n = group.order();
    let mut by_value = vec![BigInt::from(0); n];
    for a in 0..n {
        for b in 0..n {
            by_value[group.commutator(a, b)] += 1;
        }
    }
    // distribution of the running product of commutators
    let mut dist = vec![BigInt::from(0); n];
    dist[group.identity()] = BigInt::from(1);
    for _ in 0..genus {
        let mut next = vec![BigInt::from(0); n];
        for (x, cx) in dist.iter().enumerate() {
            if *cx == BigInt::from(0) {
                continue;
            }
            for (y, cy) in by_value.iter().enumerate() {
                next[group.mul(x, y)] += cx * cy;
            }
        }
        dist = next;
    }
    Rational::new(dist[group.identity()].clone(), BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    fn kernels(name: &str) -> (GeneratorKernels, FiniteGroup) {
        let f = fixture(name).unwrap();
        let g = f.group.clone().unwrap();
        (generator_kernels(&f.algebra, &g, f.augmentation.as_ref()).unwrap(), g)
    }

    #[test]
    fn sphere_and_torus() {
        for (name, classes) in [("zn:2", 2), ("s3", 3)] {
            let (k, _) = kernels(name);
            assert_eq!(evaluate(&k, &parse_word("cap_in cap_out").unwrap()).unwrap().dim, 1);
            assert_eq!(evaluate(&k, &parse_word("genus:1").unwrap()).unwrap().dim, classes);
        }
    }

    #[test]
    fn alternative_words_agree() {
        let (k, _) = kernels("s3");
        let t = evaluate(&k, &parse_word("cap_in cap_in pants_merge pants_split pants_merge cap_out").unwrap());
        assert_eq!(t.unwrap().dim, 3);
        let a = evaluate(&k, &parse_word("genus:2").unwrap()).unwrap();
        let b = evaluate(&k, &parse_word("cap_in pants_split pants_split@1 pants_merge pants_merge cap_out").unwrap())
            .unwrap();
        assert_eq!(a.dim, b.dim);
        assert_eq!(b.genus, Some(2));
    }

    #[test]
    fn oracle_counts() {
        let (_, z2) = kernels("zn:2");
        assert_eq!(homomorphism_count_oracle(&z2, 0), Rational::new(1.into(), 2.into()));
        assert_eq!(homomorphism_count_oracle(&z2, 1), Rational::from_integer(2.into()));
        assert_eq!(homomorphism_count_oracle(&z2, 2), Rational::from_integer(8.into()));
        let (_, s3) = kernels("s3");
        // |Hom(Z², S₃)| = |G| · #classes
        assert_eq!(homomorphism_count_oracle(&s3, 1), Rational::from_integer(3.into()));
    }

    #[test]
    fn missing_augmentation() {
        let f = fixture("zn:2").unwrap();
        let g = f.group.clone().unwrap();
        assert_eq!(generator_kernels(&f.algebra, &g, None).unwrap_err(), TqftError::MissingAugmentation);
    }
}
