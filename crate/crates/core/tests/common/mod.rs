#![allow(dead_code)]

use gqt::quantum::{c, CMatrix, DensityState, Projector, Tolerance};
use num_complex::Complex64;
use rand::Rng;

pub fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn random_vector(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// `AA†` for a random complex `A`, so positive semidefinite with trace > 0.
pub fn random_density(rng: &mut impl Rng, d: usize) -> DensityState {
    let rows = (0..d).map(|_| random_vector(rng, d)).collect();
    let a = CMatrix::from_rows(rows).unwrap();
    DensityState::new(&a * &a.adjoint(), Tolerance::default()).unwrap()
}

/// A random orthonormal basis (Gram-Schmidt on random vectors).
pub fn random_basis(rng: &mut impl Rng, d: usize) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    while basis.len() < d {
        let mut v = random_vector(rng, d);
        for u in &basis {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// Projector onto the span of the selected basis vectors.
pub fn span_projector(basis: &[Vec<Complex64>], select: &[usize]) -> Projector {
    let d = basis[0].len();
    let m = select.iter().fold(CMatrix::zeros(d), |acc, &i| {
        &acc + &CMatrix::outer(&basis[i])
    });
    Projector::new(m, Tolerance::default()).unwrap()
}

/// A random projector of rank `1..d`.
pub fn random_projector(rng: &mut impl Rng, d: usize) -> Projector {
    let basis = random_basis(rng, d);
    let rank = rng.random_range(1..d);
    let select: Vec<usize> = (0..rank).collect();
    span_projector(&basis, &select)
}

/// Draws `n` (state, projector) pairs from `seed` and checks the induced
/// proposition laws on each. Returns the first failure.
pub fn check_sampled_projectors(n: usize, seed: u64) -> Result<(), String> {
    use gqt::quantum::{act_projector, expectation, make_quantum_proposition, states_equal};
    use gqt::Outcome;
    use rand::SeedableRng;

    let tol = Tolerance::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let same = |a: &Option<DensityState>, b: &Option<DensityState>| match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => states_equal(a, b, tol).unwrap(),
        _ => false,
    };
    for i in 0..n {
        let d = rng.random_range(2..=4);
        let z = random_density(&mut rng, d);
        let p = random_projector(&mut rng, d);
        let q = make_quantum_proposition(&p);
        let fail = |what: &str| Err(format!("sample {i} (d={d}): {what}"));

        let e = expectation(&z, p.matrix(), tol).map_err(|e| e.to_string())?;
        if !(-tol.value()..=1.0 + tol.value()).contains(&e) {
            return fail(&format!("expectation {e} outside [0, 1]"));
        }
        for (outcome, other) in [(Outcome::Yes, Outcome::No), (Outcome::No, Outcome::Yes)] {
            let image = q.apply(outcome, &z, tol).unwrap();
            if let Some(w) = &image {
                if !same(&q.apply(outcome, w, tol).unwrap(), &image) {
                    return fail("not idempotent");
                }
                if q.apply(other, w, tol).unwrap().is_some() {
                    return fail("not annihilating");
                }
            }
            for factor in [0.5, 2.0, 10.0] {
                if !same(&q.apply(outcome, &z.scaled(factor), tol).unwrap(), &image) {
                    return fail(&format!("not scale invariant at {factor}"));
                }
            }
        }
        let yes = act_projector(&z, &p, tol).unwrap();
        let no = act_projector(&z, &p.complement(), tol).unwrap();
        if yes.is_none() && no.is_none() {
            return fail("both outcomes impossible");
        }
        if let Some(w) = &yes {
            let back = act_projector(w, &p, tol).unwrap();
            if !same(&back, &yes) {
                return fail("yes-image is not a yes-eigenstate");
            }
        }
    }
    Ok(())
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn gqt(args: &[&str]) -> Run {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_gqt"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// QZX with `Xp.yes(z0)` redirected from `zp` to `zm`, which breaks
/// idempotence at `z0`.
pub fn broken_qzx(dir: &std::path::Path) -> String {
    let text = std::fs::read_to_string(fixture("qzx.json")).unwrap();
    let from = "\"yes\": {\n        \"z0\": \"zp\"";
    assert!(text.contains(from));
    let path = dir.join("broken.json");
    std::fs::write(
        &path,
        text.replacen(from, "\"yes\": {\n        \"z0\": \"zm\"", 1),
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

/// `(args, expected exit code)` rows covering success, law failures and
/// input errors. Paths are created under `dir`.
pub fn exit_code_matrix(dir: &std::path::Path) -> Vec<(Vec<String>, i32)> {
    let qzx = fixture("qzx.json");
    let bell = fixture("bell.json");
    let broken = broken_qzx(dir);
    let malformed = dir.join("malformed.json");
    std::fs::write(&malformed, "{\"states\": [").unwrap();
    let malformed = malformed.to_string_lossy().into_owned();
    let qdoc = fixture("qzx.quantum.json");
    let built = dir.join("built.json").to_string_lossy().into_owned();
    let rows: Vec<(Vec<&str>, i32)> = vec![
        (vec!["validate", &qzx], 0),
        (vec!["check", &qzx], 0),
        (vec!["report", &bell], 0),
        (vec!["eigen", &qzx, "--observable", "Z"], 0),
        (
            vec!["measure", &qzx, "--state", "zp", "--steps", "Z=0,X=+"],
            0,
        ),
        (
            vec!["entangle", &bell, "--global", "BELL", "--locals", "ZA,ZB"],
            0,
        ),
        (
            vec![
                "fuzz", "--states", "6", "--props", "3", "--obs", "2", "--seed", "1", "--count",
                "20",
            ],
            0,
        ),
        (vec!["quantum", "build", &qdoc, "-o", &built], 0),
        (vec!["validate", &broken], 1),
        (vec!["check", &broken], 1),
        (vec!["report", &broken], 1),
        (vec!["validate", &malformed], 2),
        (vec!["check", "/nonexistent/model.json"], 2),
        (vec!["eigen", &qzx, "--observable", "NOPE"], 2),
        (
            vec!["measure", &qzx, "--state", "nope", "--steps", "Z=0"],
            2,
        ),
        (vec!["measure", &qzx, "--state", "zp", "--steps", "Z=7"], 2),
        (vec!["entangle", &qzx, "--global", "Z", "--locals", "X"], 2),
        (
            vec![
                "fuzz", "--states", "0", "--props", "3", "--obs", "2", "--seed", "1", "--count",
                "5",
            ],
            2,
        ),
        (
            vec!["quantum", "build", &qdoc, "--cap", "2", "-o", &built],
            2,
        ),
        (vec!["frobnicate"], 2),
    ];
    rows.into_iter()
        .map(|(args, code)| (args.into_iter().map(String::from).collect(), code))
        .collect()
}
