//! Check families shared by `hochkit verify` and the acceptance harness.
//! Each returns one record per instantiated identity.

use rand::Rng;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::fixtures::{fixture, Fixture, FixtureError};
use crate::hochschild::{hh_homology_dims, HochschildConfig, HochschildError};
use crate::linalg::SparseMatrix;
use crate::modules::{convolve, hom_space, Bimodule, ModuleError, ModuleRep};
use crate::mukai::{
    adjointness_check, cardy_check, chern, chern_commutes_check, functoriality_check, generalized_trace,
    hochschild_trace, hrr_check, morita_hh_check, morita_isometry_check, random_central, random_endomorphism,
    random_matrix, random_sum_of, serre_trace, split_triple, trace_triangle_check, MukaiClass, MukaiError,
    SplitShape, Transfer,
};
use crate::report::CheckRecord;
use crate::tqft::{evaluate, generator_kernels, homomorphism_count_oracle, parse_word, CobordismWord, TqftError};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Mukai(#[from] MukaiError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Tqft(#[from] TqftError),
    #[error("fixture `{0}` is not a group algebra")]
    NotAGroup(String),
}

pub type SuiteResult = Result<Vec<CheckRecord>, SuiteError>;

pub fn load_all(names: &[&str]) -> Result<Vec<Fixture>, SuiteError> {
    names.iter().map(|n| Ok(fixture(n)?)).collect()
}

/// ⟨ch V_i, ch V_j⟩ = dim Hom(V_i, V_j) on every ordered pair of bundled simples.
pub fn hrr_suite(fixtures: &[Fixture]) -> SuiteResult {
    let mut out = Vec::new();
    for f in fixtures {
        for a in &f.simples {
            for b in &f.simples {
                let mut r = hrr_check(&a.module, &b.module)?;
                r.inputs = format!("{}: {} vs {}", f.name, a.name, b.name);
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// The identity-endomorphism degeneration of Cardy on simples, plus `instances`
/// random (E, F, e, f) per fixture with E, F sums of at most three simples.
pub fn cardy_suite<R: Rng>(fixtures: &[Fixture], instances: usize, rng: &mut R) -> SuiteResult {
    let mut out = Vec::new();
    for f in fixtures {
        for a in &f.simples {
            for b in &f.simples {
                let id_a = SparseMatrix::identity(a.module.dim());
                let id_b = SparseMatrix::identity(b.module.dim());
                let mut r = cardy_check(&a.module, &b.module, &id_a, &id_b)?;
                let hrr = hrr_check(&a.module, &b.module)?;
                r.inputs = format!("{}: e = id_{}, f = id_{} (HRR value {})", f.name, a.name, b.name, hrr.lhs);
                r.pass = r.pass && r.lhs == hrr.lhs;
                out.push(r);
            }
        }
        let pool = f.simple_modules();
        for k in 0..instances {
            let big_e = random_sum_of(&pool, 3, rng)?;
            let big_f = random_sum_of(&pool, 3, rng)?;
            let e = random_endomorphism(&big_e, rng)?;
            let g = random_endomorphism(&big_f, rng)?;
            let mut r = cardy_check(&big_e, &big_f, &e, &g)?;
            r.inputs = format!("{} #{k}: {}", f.name, r.inputs);
            out.push(r);
        }
    }
    Ok(out)
}

/// Outer-tensor kernels between the given fixtures: for every ordered pair
/// (A, B), W ⊗ V* with V a sum of two simples of A and W a simple of B, plus
/// regular-by-regular kernels along a cycle of the fixtures.
pub fn kernel_library(fixtures: &[Fixture]) -> Result<Vec<(String, usize, usize, Bimodule)>, SuiteError> {
    let mut out = Vec::new();
    for (i, a) in fixtures.iter().enumerate() {
        for (j, b) in fixtures.iter().enumerate() {
            let first = &a.simples[0];
            let last = &a.simples[a.simples.len() - 1];
            let v = first.module.direct_sum(&last.module)?;
            let w = &b.simples[(i + j) % b.simples.len()];
            let label = format!("outer({}⊕{}, {}) : {} → {}", first.name, last.name, w.name, a.name, b.name);
            out.push((label, i, j, Bimodule::outer(&v, &w.module)));
        }
    }
    for i in 0..fixtures.len() {
        let j = (i + 1) % fixtures.len();
        let (a, b) = (&fixtures[i], &fixtures[j]);
        let label = format!("outer(reg, reg) : {} → {}", a.name, b.name);
        out.push((label, i, j, Bimodule::outer(&a.regular_module(), &b.regular_module())));
    }
    Ok(out)
}

/// Adjointness on every library kernel, with route agreement recorded per center basis element.
pub fn adjoint_suite(fixtures: &[Fixture]) -> SuiteResult {
    let mut out = Vec::new();
    for (label, i, j, k) in kernel_library(fixtures)? {
        let (src, tgt) = (fixtures[i].simple_modules(), fixtures[j].simple_modules());
        let t = Transfer::new(&k, &src)?;
        for (n, v) in MukaiClass::basis(k.source()).iter().enumerate() {
            out.push(CheckRecord::equal(
                "route A = route B",
                "Prop 3.1 adjoint transfer",
                format!("{label}: v = z{n}"),
                &t.route_a(v)?,
                &t.route_b(v)?,
            ));
        }
        for mut r in adjointness_check(&k, &src, &tgt)? {
            r.inputs = format!("{label}: {}", r.inputs);
            out.push(r);
        }
    }
    Ok(out)
}

/// (L∘K)_* = L_*∘K_* on composable library pairs, and Φ_* ch = ch Φ on
/// each simple and a random sum of simples.
pub fn functorial_suite<R: Rng>(fixtures: &[Fixture], rng: &mut R) -> SuiteResult {
    let library = kernel_library(fixtures)?;
    let mut out = Vec::new();
    for (l1, i, j, k1) in &library {
        for (l2, j2, _, k2) in &library {
            if j2 != j {
                continue;
            }
            let src = fixtures[*i].simple_modules();
            let mid = fixtures[*j].simple_modules();
            for mut r in functoriality_check(k1, k2, &src, &mid)? {
                r.inputs = format!("[{l2}] ∘ [{l1}]: {}", r.inputs);
                out.push(r);
            }
        }
    }
    for (label, i, _, k) in &library {
        let pool = fixtures[*i].simple_modules();
        let mut modules = pool.clone();
        modules.push(random_sum_of(&pool, 3, rng)?);
        for m in &modules {
            let mut r = chern_commutes_check(k, m, &pool)?;
            r.inputs = format!("{label}: {}", r.inputs);
            out.push(r);
        }
    }
    let conv = convolve(&library[0].3, &library[1].3)?;
    for mut r in adjointness_check(&conv, &fixtures[0].simple_modules(), &fixtures[1].simple_modules())? {
        r.inputs = format!("convolution [{}] ∘ [{}]: {}", library[1].0, library[0].0, r.inputs);
        out.push(r);
    }
    Ok(out)
}

/// A against M_n ⊗ A: isometry data for the semisimple names, HH dims for the rest.
pub fn morita_suite(
    isometry: &[Fixture],
    dims: &[Fixture],
    n: usize,
    maxdeg: usize,
    config: &HochschildConfig,
) -> SuiteResult {
    let mut out = Vec::new();
    for f in isometry {
        out.extend(morita_isometry_check(&f.algebra, &f.simple_modules(), n)?);
    }
    for f in dims {
        out.push(morita_hh_check(&f.algebra, n, maxdeg, config)?);
    }
    Ok(out)
}

fn random_hom<R: Rng>(m: &ModuleRep, n: &ModuleRep, rng: &mut R) -> Result<SparseMatrix, SuiteError> {
    let h = hom_space(m, n)?;
    let coeffs: Vec<_> = (0..h.dim()).map(|_| crate::scalars::CycScalar::from_int(rng.gen_range(-3..=3))).collect();
    Ok(h.combine(&coeffs))
}

/// `instances` random cases of each trace identity.
pub fn trace_suite<R: Rng>(fixtures: &[Fixture], instances: usize, rng: &mut R) -> SuiteResult {
    let mut out = Vec::new();
    for k in 0..instances {
        let f = &fixtures[k % fixtures.len()];
        let pool = f.simple_modules();
        let big_e = random_sum_of(&pool, 3, rng)?;
        let big_f = random_sum_of(&pool, 3, rng)?;
        let phi = random_hom(&big_e, &big_f, rng)?;
        let psi = random_hom(&big_f, &big_e, rng)?;
        out.push(CheckRecord::equal(
            "Tr(g∘f) = Tr(f∘g)",
            "Lem 2.3 trace cyclicity",
            format!("{} #{k}: dims {}, {}", f.name, big_e.dim(), big_f.dim()),
            &serre_trace(&big_e, &psi.matmul(&phi))?,
            &serre_trace(&big_f, &phi.matmul(&psi))?,
        ));
    }
    for k in 0..instances {
        let (fd, gd, gd2, ed) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let mu = random_matrix(gd * ed, fd * ed, rng);
        let nu = random_matrix(gd2, gd, rng);
        let lhs = generalized_trace(&nu.kron(&SparseMatrix::identity(ed)).matmul(&mu), fd, gd2, ed)?;
        let rhs = nu.matmul(&generalized_trace(&mu, fd, gd, ed)?);
        out.push(CheckRecord::new(
            "Tr_E((ν⊗1)∘μ) = ν∘Tr_E(μ)",
            "Lem 2.5 trace naturality",
            format!("#{k}: F={fd} G={gd} G'={gd2} E={ed}"),
            lhs.dump(),
            rhs.dump(),
            lhs == rhs,
        ));
    }
    for k in 0..instances {
        let shape = SplitShape {
            h_source: rng.gen_range(1..=2),
            h_target: rng.gen_range(1..=2),
            e_dim: rng.gen_range(1..=3),
            g_dim: rng.gen_range(1..=3),
        };
        let fd = shape.e_dim + shape.g_dim;
        let raw = random_matrix(shape.h_target * fd, shape.h_source * fd, rng);
        // keep H ⊗ E invariant: no entries from the E block into the G block
        let f = SparseMatrix::from_triplets(
            raw.rows(),
            raw.cols(),
            raw.triplets()
                .filter(|(r, c, _)| !(r % fd >= shape.e_dim && c % fd < shape.e_dim))
                .map(|(r, c, v)| (r, c, v.clone())),
        );
        let (e, g) = split_triple(&f, shape)?;
        let mut r = trace_triangle_check(&e, &f, &g, shape)?;
        r.inputs = format!("#{k}: {}", r.inputs);
        out.push(r);
    }
    Ok(out)
}

/// ch M against its defining trace property on a fresh random central element,
/// for every simple, the regular module and a random sum of simples.
pub fn chern_suite<R: Rng>(fixtures: &[Fixture], rng: &mut R) -> SuiteResult {
    let mut out = Vec::new();
    for f in fixtures {
        let pool = f.simple_modules();
        let mut modules: Vec<(String, ModuleRep)> =
            f.simples.iter().map(|s| (s.name.clone(), s.module.clone())).collect();
        modules.push(("regular".into(), f.regular_module()));
        modules.push(("random sum".into(), random_sum_of(&pool, 3, rng)?));
        for (name, m) in modules {
            let ch = chern(&m)?;
            let z = random_central(&f.algebra, rng);
            out.push(CheckRecord::equal(
                "Tr_A(z·ch M) = tr(z|M)",
                "Def 6.2 Chern character",
                format!("{}: {name}, z = {z}", f.name),
                &hochschild_trace(&f.algebra, z.mul(&ch)?.coords())?,
                &m.act(z.coords()).trace(),
            ));
        }
    }
    Ok(out)
}

/// The torus invariant of A = K[G], which should equal dim HH₀(A).
pub fn torus_hh0(a: &Algebra) -> Result<usize, SuiteError> {
    Ok(hh_homology_dims(a, 0)?.dims[0])
}

/// Sphere = 1 and torus = dim HH₀ for each group fixture.
pub fn tqft_suite(fixtures: &[Fixture]) -> SuiteResult {
    let mut out = Vec::new();
    for f in fixtures {
        let group = f.group.as_ref().ok_or_else(|| SuiteError::NotAGroup(f.name.clone()))?;
        let kernels = generator_kernels(&f.algebra, group, f.augmentation.as_ref())?;
        let sphere = evaluate(&kernels, &parse_word("cap_in cap_out")?)?;
        out.push(CheckRecord::equal("Z(S²) = 1", "App A TQFT", f.name.clone(), &sphere.dim, &1));
        let torus = evaluate(&kernels, &CobordismWord::genus(1))?;
        out.push(CheckRecord::equal(
            "Z(T²) = dim HH₀",
            "App A TQFT",
            format!("{}: {}", f.name, torus.word),
            &torus.dim,
            &torus_hh0(&f.algebra)?,
        ));
    }
    Ok(out)
}

/// One row of a genus table: the evaluated dimension next to |Hom(π₁Σ_g, G)|/|G|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusRow {
    pub algebra: String,
    pub genus: usize,
    pub dim: usize,
    pub oracle: String,
}

pub fn genus_rows(f: &Fixture, genera: &[usize]) -> Result<Vec<GenusRow>, SuiteError> {
    let group = f.group.as_ref().ok_or_else(|| SuiteError::NotAGroup(f.name.clone()))?;
    let kernels = generator_kernels(&f.algebra, group, f.augmentation.as_ref())?;
    genera
        .iter()
        .map(|&g| {
            Ok(GenusRow {
                algebra: f.name.clone(),
                genus: g,
                dim: evaluate(&kernels, &CobordismWord::genus(g))?.dim,
                oracle: homomorphism_count_oracle(group, g).to_string(),
            })
        })
        .collect()
}
