//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILING` still run and print FAIL; they only stop
//! the target from failing the build. Set `ACCEPTANCE_STRICT=1` to make them fatal.

use std::f64::consts::{FRAC_PI_3, PI, SQRT_2};
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempocorr::linalg::{hermitian_eig, ComplexMatrix, C64};
use tempocorr::quasiprob::{
    born_quasi_three, born_quasi_three_from_pdm, born_quasi_two, disturbance_three, disturbance_two, lueders_three,
    lueders_two, nsit_condition_report, nsit_deviation_two, nsit_quantifier_three, nsit_quantifier_two,
    ProjectiveMeasurement, QuasiDistribution, ThreeStep,
};
use tempocorr::sampling::{random_channel, random_density_matrix, random_measurement, random_separable_pdm};
use tempocorr::witness::{chsh_max, lgi_full_class, lgi_k3};
use tempocorr::{Pdm, QuantumChannel};
use tempocorr_cli::config::ScenarioConfig;
use tempocorr_cli::selftest::{self, BUNDLED_SCENARIOS};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

/// Positive PDMs do not force NSIT; recorded in the project notes.
const KNOWN_FAILING: [usize; 1] = [9];

const Z: [f64; 3] = [0.0, 0.0, 1.0];

fn lib<T>(r: tempocorr::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| if k + 1 == count { stop } else { start + (stop - start) * k as f64 / (count - 1) as f64 })
        .collect()
}

fn mixed() -> ComplexMatrix {
    ComplexMatrix::identity(2).scale_real(0.5)
}

fn ket0() -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[1.0, 0.0])
}

fn real(dim: usize, rows: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_real(dim, rows).unwrap()
}

fn depolarizing(eta: f64) -> QuantumChannel {
    QuantumChannel::depolarizing(eta).unwrap()
}

fn mixed_identity_matrix() -> ComplexMatrix {
    real(4, &[0.5, 0., 0., 0., 0., 0., 0.5, 0., 0., 0.5, 0., 0., 0., 0., 0., 0.5])
}

fn mixed_depolarized_matrix(eta: f64) -> ComplexMatrix {
    let (d, o, c) = (0.5 - eta / 4.0, eta / 4.0, (1.0 - eta) / 2.0);
    real(4, &[d, 0., 0., 0., 0., o, c, 0., 0., c, o, 0., 0., 0., 0., d])
}

fn pure_depolarized_matrix(eta: f64) -> ComplexMatrix {
    let c = (1.0 - eta) / 2.0;
    real(4, &[1.0 - eta / 2.0, 0., 0., 0., 0., eta / 2.0, c, 0., 0., c, 0., 0., 0., 0., 0., 0.])
}

fn three_step_identity_matrix() -> ComplexMatrix {
    let mut m = vec![0.0; 64];
    m[0] = 0.5;
    m[63] = 0.5;
    for (i, j) in [(1, 2), (1, 4), (2, 4), (3, 5), (3, 6), (5, 6)] {
        m[i * 8 + j] = 0.25;
        m[j * 8 + i] = 0.25;
    }
    real(8, &m)
}

fn pure_negativity(eta: f64) -> f64 {
    let root = (4.0 + eta * (-8.0 + 5.0 * eta)).sqrt();
    let base = 4.0 + 6.0 * eta * eta;
    0.25 * ((base - 2.0 * eta * (4.0 + root)).sqrt() + (base - 2.0 * eta * (4.0 - root)).sqrt() - 2.0 * eta)
}

fn mixed_negativity(eta: f64) -> f64 {
    if eta < 2.0 / 3.0 {
        0.5 * (2.0 - 3.0 * eta)
    } else {
        0.0
    }
}

fn identity_chain() -> Pdm {
    let id = QuantumChannel::identity(2);
    Pdm::two_step(&mixed(), &id).unwrap().extend(&id).unwrap()
}

fn rabi_chain(omega_t: f64) -> Result<Pdm, String> {
    let u = lib(QuantumChannel::rabi(omega_t))?;
    lib(lib(Pdm::two_step(&mixed(), &u))?.extend(&u))
}

struct Random {
    rho: ComplexMatrix,
    e1: QuantumChannel,
    e2: QuantumChannel,
    m: [ProjectiveMeasurement; 3],
}

impl Random {
    fn new(dim: usize, rng: &mut ChaCha8Rng) -> Self {
        let (k1, k2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        Random {
            rho: random_density_matrix(dim, rng),
            e1: random_channel(dim, k1, rng),
            e2: random_channel(dim, k2, rng),
            m: [0; 3].map(|_| random_measurement(dim, rng)),
        }
    }

    fn three(&self) -> ThreeStep<'_> {
        ThreeStep { rho: &self.rho, e1: &self.e1, e2: &self.e2, m0: &self.m[0], m1: &self.m[1], m2: &self.m[2] }
    }
}

fn plus(a: &QuasiDistribution, b: &QuasiDistribution) -> Result<QuasiDistribution, String> {
    let neg = lib(QuasiDistribution::new(b.shape().to_vec(), b.values().iter().map(|v| -v).collect()))?;
    lib(a.sub(&neg))
}

fn criterion_1() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut compare = |name: &str, got: &Pdm, want: &ComplexMatrix| -> Result<(), String> {
        let dev = got.matrix().max_abs_diff(want);
        worst = worst.max(dev);
        count += 1;
        ensure(dev <= 1e-12, || format!("{name}: deviation {dev:.3e}"))
    };
    let r01 = lib(Pdm::two_step(&mixed(), &QuantumChannel::identity(2)))?;
    compare("mixed/identity", &r01, &mixed_identity_matrix())?;
    for eta in [0.0, 0.25, 0.5, 2.0 / 3.0, 1.0] {
        compare(
            &format!("mixed/depolarizing eta={eta}"),
            &lib(Pdm::two_step(&mixed(), &depolarizing(eta)))?,
            &mixed_depolarized_matrix(eta),
        )?;
        compare(
            &format!("pure/depolarizing eta={eta}"),
            &lib(Pdm::two_step(&ket0(), &depolarizing(eta)))?,
            &pure_depolarized_matrix(eta),
        )?;
    }
    compare("three-step identity", &lib(r01.extend(&QuantumChannel::identity(2)))?, &three_step_identity_matrix())?;
    let product = real(4, &[0.5, 0., 0., 0., 0., 0.5, 0., 0., 0., 0., 0., 0., 0., 0., 0., 0.]);
    compare("pure product", &lib(Pdm::two_step(&ket0(), &depolarizing(1.0)))?, &product)?;

    let summary = selftest::run(selftest::BUNDLED_GOLDEN).map_err(|e| e.to_string())?;
    let golden: Vec<_> = summary.checks.iter().filter(|c| c.name.starts_with("golden/")).collect();
    if let Some(bad) = golden.iter().find(|c| !c.passed()) {
        return Err(format!("bundled {} deviates by {:.3e}", bad.name, bad.max_deviation));
    }
    Ok(format!("{count} matrices plus {} bundled goldens, max deviation {worst:.1e}", golden.len()))
}

fn criterion_2() -> Verdict {
    let r = lib(Pdm::two_step(&mixed(), &QuantumChannel::identity(2)))?;
    let eig = lib(hermitian_eig(r.matrix()))?;
    for (got, want) in eig.eigenvalues().iter().zip([-0.5, 0.5, 0.5, 0.5]) {
        ensure((got - want).abs() <= 1e-10, || format!("eigenvalues {:?}", eig.eigenvalues()))?;
    }
    let h = 1.0 / SQRT_2;
    let c = |v: f64| C64::new(v, 0.0);
    let listed = [
        (-0.5, [c(0.0), c(h), c(-h), c(0.0)]),
        (0.5, [c(0.0), c(0.0), c(0.0), c(1.0)]),
        (0.5, [c(0.0), c(h), c(h), c(0.0)]),
        (0.5, [c(1.0), c(0.0), c(0.0), c(0.0)]),
    ];
    let mut worst: f64 = 0.0;
    for (lambda, v) in &listed {
        let rv = r.matrix().mul_vec(v);
        let residual = rv.iter().zip(v).map(|(a, b)| (a - b * lambda).norm()).fold(0.0, f64::max);
        worst = worst.max(residual);
    }
    ensure(worst <= 1e-10, || format!("listed eigenvector residual {worst:.3e}"))?;
    let overlap: C64 = eig.eigenvector(0).iter().zip(&listed[0].1).map(|(a, b)| a.conj() * b).sum();
    ensure((overlap.norm() - 1.0).abs() <= 1e-10, || format!("singlet overlap {}", overlap.norm()))?;
    Ok(format!("spectrum (-1/2, 1/2, 1/2, 1/2), eigenvector residual {worst:.1e}"))
}

fn criterion_3() -> Verdict {
    let mut worst: f64 = 0.0;
    for eta in grid(0.0, 1.0, 101) {
        let f40 = lib(lib(Pdm::two_step(&mixed(), &depolarizing(eta)))?.negativity())?;
        let fc3 = lib(lib(Pdm::two_step(&ket0(), &depolarizing(eta)))?.negativity())?;
        let (d40, dc3) = ((f40 - mixed_negativity(eta)).abs(), (fc3 - pure_negativity(eta)).abs());
        ensure(d40 <= 1e-9 && dc3 <= 1e-9, || format!("eta={eta}: mixed {f40} pure {fc3}"))?;
        worst = worst.max(d40).max(dc3);
    }
    let f42 = lib(identity_chain().negativity())?;
    ensure((f42 - 2.0).abs() <= 1e-10, || format!("three-step identity negativity {f42}"))?;
    Ok(format!("101-point grids max deviation {worst:.1e}, three-step f = {f42}"))
}

fn criterion_4() -> Verdict {
    let c38 = lib(chsh_max(&lib(Pdm::two_step(&mixed(), &QuantumChannel::identity(2)))?))?;
    ensure((c38 - 2.0 * SQRT_2).abs() <= 1e-9, || format!("mixed/identity chsh {c38}"))?;
    let threshold = 1.0 - SQRT_2 / 2.0;
    let mut worst: f64 = 0.0;
    let mut violating = 0;
    for eta in grid(0.0, 1.0, 101) {
        let want = 2.0 * SQRT_2 * (1.0 - eta);
        for rho in [mixed(), ket0()] {
            let got = lib(chsh_max(&lib(Pdm::two_step(&rho, &depolarizing(eta)))?))?;
            worst = worst.max((got - want).abs());
            ensure((got - want).abs() <= 1e-9, || format!("eta={eta}: chsh {got}, expected {want}"))?;
            ensure((got > 2.0 + 1e-9) == (eta < threshold), || format!("eta={eta}: violation flag wrong ({got})"))?;
            violating += usize::from(got > 2.0 + 1e-9);
        }
    }
    let at = lib(chsh_max(&lib(Pdm::two_step(&ket0(), &depolarizing(threshold)))?))?;
    ensure((at - 2.0).abs() <= 1e-9, || format!("chsh at threshold {at}"))?;
    Ok(format!("max deviation {worst:.1e}; {violating} violating grid PDMs, all below eta = {threshold:.6}"))
}

fn criterion_5() -> Verdict {
    let z = ProjectiveMeasurement::pauli_axis(tempocorr::quasiprob::Axis::Z);
    let mut worst: f64 = 0.0;
    let mut k3_peak = f64::NEG_INFINITY;
    for wt in grid(0.0, 2.0 * PI, 201) {
        let u = lib(QuantumChannel::rabi(wt))?;
        let rho = mixed();
        let st = ThreeStep { rho: &rho, e1: &u, e2: &u, m0: &z, m1: &z, m2: &z };
        let n = lib(nsit_quantifier_three(&st))?;
        let k3 = lib(lgi_k3(&rabi_chain(wt)?, &Z))?;
        let (dn, dk) = ((n - wt.sin().powi(2)).abs(), (k3 - (2.0 * wt.cos() - (2.0 * wt).cos())).abs());
        ensure(dn <= 1e-9 && dk <= 1e-9, || format!("omega_t={wt}: n012 {n} k3 {k3}"))?;
        worst = worst.max(dn).max(dk);
        k3_peak = k3_peak.max(k3);
    }
    let k3_max = lib(lgi_k3(&rabi_chain(FRAC_PI_3)?, &Z))?;
    ensure((k3_max - 1.5).abs() <= 1e-9 && k3_peak <= 1.5 + 1e-9, || format!("K3 peak {k3_max}, grid max {k3_peak}"))?;

    let levels = grid(0.0, 1.0, 5);
    let angles = grid(0.0, PI, 5);
    for &eta in &levels {
        for &t1 in &angles {
            for &t2 in &angles {
                let n = lib(nsit_quantifier_two(
                    &ket0(),
                    &depolarizing(eta),
                    &ProjectiveMeasurement::bloch(t1, 0.0),
                    &ProjectiveMeasurement::bloch(t2, 0.0),
                ))?;
                let want = ((1.0 - eta) * t1.sin() * (t2 - t1).sin()).abs();
                ensure((n - want).abs() <= 1e-9, || format!("eta={eta} t1={t1} t2={t2}: n01 {n}, expected {want}"))?;
                worst = worst.max((n - want).abs());
            }
        }
    }
    Ok(format!("N012, K3 on 201 points and N01 on 125 points, max deviation {worst:.1e}; K3(pi/3) = {k3_max:.12}"))
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for (dim, n) in [(2, 100), (4, 20)] {
        for k in 0..n {
            let s = Random::new(dim, &mut rng);
            let pdm = lib(lib(Pdm::two_step(&s.rho, &s.e1))?.extend(&s.e2))?;
            let nested = lib(born_quasi_three(&s.three()))?;
            let trace = lib(born_quasi_three_from_pdm(&pdm, &s.m[0], &s.m[1], &s.m[2]))?;
            let dev = nested.max_abs_diff(&trace);
            ensure(dev <= 1e-12, || format!("dim {dim} scenario {k}: deviation {dev:.3e}"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("100 qubit + 20 two-qubit scenarios, max deviation {worst:.1e}"))
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let dim = if k % 5 == 4 { 4 } else { 2 };
        let s = Random::new(dim, &mut rng);
        let pdm = lib(Pdm::two_step(&s.rho, &s.e1))?;
        let q2 = lib(born_quasi_two(&pdm, &s.m[0], &s.m[1]))?;
        let p2 = lib(lueders_two(&s.rho, &s.e1, &s.m[0], &s.m[1]))?;
        let d2 = lib(disturbance_two(&s.rho, &s.e1, &s.m[0], &s.m[1]))?;
        let two = q2.max_abs_diff(&plus(&p2, &d2)?);

        let st = s.three();
        let q3 = lib(born_quasi_three(&st))?;
        let p3 = lib(lueders_three(&st))?;
        let b = lib(disturbance_three(&st))?;
        let three = q3.max_abs_diff(&plus(&p3, &b.total)?);
        let [a, c, d, e] = b.subterms();
        let parts = b.total.max_abs_diff(&plus(&plus(a, c)?, &plus(d, e)?)?);
        let dev = two.max(three).max(parts);
        ensure(dev <= 1e-12, || format!("scenario {k}: two {two:.3e} three {three:.3e} subterms {parts:.3e}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("100 scenarios, max deviation {worst:.1e}"))
}

/// Kind 0 is generic; the others are structured so that NSIT can hold.
fn structured(kind: usize, rng: &mut ChaCha8Rng) -> Random {
    let mut s = Random::new(2, rng);
    match kind {
        1 => s.e1 = depolarizing(1.0),
        2 => {
            s.rho = mixed();
            s.e1 = QuantumChannel::identity(2);
            s.e2 = QuantumChannel::identity(2);
            s.m = [0; 3].map(|_| s.m[0].clone());
        }
        3 => {
            s.rho = mixed();
            s.e1 = depolarizing(rng.gen_range(0.0..1.0));
            s.e2 = depolarizing(rng.gen_range(0.0..1.0));
        }
        _ => {}
    }
    s
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cases: Vec<Random> = (0..50).map(|k| structured(k % 4, &mut rng)).collect();
    let mut named = 0;
    for (name, text) in BUNDLED_SCENARIOS {
        let sc = ScenarioConfig::from_json(text).and_then(|c| c.build()).map_err(|e| format!("{name}: {e}"))?;
        let m = |i: usize| sc.measurements[i.min(sc.steps() - 1)].clone();
        cases.push(Random {
            rho: sc.rho.clone(),
            e1: sc.channels[0].clone(),
            e2: sc.channels.get(1).cloned().unwrap_or_else(|| QuantumChannel::identity(2)),
            m: [m(0), m(1), m(2)],
        });
        named += 1;
    }
    let (mut two_holds, mut three_holds) = (0, 0);
    for (k, s) in cases.iter().enumerate() {
        let n01 = lib(nsit_quantifier_two(&s.rho, &s.e1, &s.m[0], &s.m[1]))?;
        let dev = lib(nsit_deviation_two(&s.rho, &s.e1, &s.m[0], &s.m[1]))?;
        ensure((n01 <= 1e-10) == (dev <= 1e-9), || format!("case {k}, two steps: N01 {n01:.3e}, deviation {dev:.3e}"))?;
        two_holds += usize::from(n01 <= 1e-10);

        let n012 = lib(nsit_quantifier_three(&s.three()))?;
        let report = lib(nsit_condition_report(&s.three()))?;
        ensure((n012 <= 1e-10) == report.all_satisfied(), || {
            format!("case {k}, three steps: N012 {n012:.3e}, worst condition {:.3e}", report.max_deviation())
        })?;
        three_holds += usize::from(n012 <= 1e-10);
    }
    Ok(format!(
        "{} cases ({named} bundled); NSIT holds in {two_holds} two-step and {three_holds} three-step cases, equivalence exact",
        cases.len()
    ))
}

/// Ten PSD PDMs from random states under strong depolarizing noise, scanned
/// over a 12-point polar-angle grid per measurement.
fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let angles = grid(0.0, PI, 12);
    let mut results = Vec::new();
    while results.len() < 10 {
        let three = results.len() >= 7;
        let rho = random_density_matrix(2, &mut rng);
        let e1 = depolarizing(rng.gen_range(0.7..1.0));
        let e2 = depolarizing(rng.gen_range(0.7..1.0));
        let mut pdm = lib(Pdm::two_step(&rho, &e1))?;
        if three {
            pdm = lib(pdm.extend(&e2))?;
        }
        if lib(pdm.min_eigenvalue())? < -1e-10 {
            continue;
        }
        let mut worst: f64 = 0.0;
        for &a in &angles {
            for &b in &angles {
                let (m0, m1) = (ProjectiveMeasurement::bloch(a, 0.0), ProjectiveMeasurement::bloch(b, 1.1));
                if three {
                    for &c in &angles {
                        let m2 = ProjectiveMeasurement::bloch(c, 2.2);
                        let st = ThreeStep { rho: &rho, e1: &e1, e2: &e2, m0: &m0, m1: &m1, m2: &m2 };
                        worst = worst.max(lib(nsit_quantifier_three(&st))?);
                    }
                } else {
                    worst = worst.max(lib(nsit_quantifier_two(&rho, &e1, &m0, &m1))?);
                }
            }
        }
        results.push(worst);
    }
    let bad = results.iter().filter(|&&n| n > 1e-9).count();
    let peak = results.iter().copied().fold(0.0, f64::max);
    let detail = format!("{bad} of 10 PSD PDMs exceed 1e-9, largest N = {peak:.6e}");
    if bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_10() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut peak = f64::NEG_INFINITY;
    for k in 0..200 {
        let pdm = random_separable_pdm(4, &mut rng);
        let c = lib(chsh_max(&pdm))?;
        ensure(c <= 2.0 + 1e-9, || format!("separable PDM {k}: chsh {c}"))?;
        peak = peak.max(c);
    }
    Ok(format!("200 separable PDMs, largest chsh_max {peak:.9}"))
}

fn criterion_11() -> Verdict {
    let mut violations = 0;
    for wt in grid(0.0, 2.0 * PI, 201) {
        let pdm = rabi_chain(wt)?;
        let f = lib(pdm.negativity())?;
        for v in lib(lgi_full_class(&pdm, &Z))? {
            if v.violated {
                violations += 1;
                ensure(f > 1e-10, || format!("omega_t={wt}: variant {} violated with f = {f}", v.variant.label()))?;
            }
        }
    }
    let start = rabi_chain(0.0)?;
    let (f, k3) = (lib(start.negativity())?, lib(lgi_k3(&start, &Z))?);
    ensure((f - 2.0).abs() <= 1e-10 && (k3 - 1.0).abs() <= 1e-12, || format!("omega_t=0: f {f}, K3 {k3}"))?;
    let any = lib(lgi_full_class(&start, &Z))?.iter().any(|v| v.violated);
    ensure(!any, || "omega_t=0 violates an LGI variant".into())?;
    Ok(format!("{violations} violations on the grid, all with negative PDM; omega_t=0 has f = 2, K3 = 1"))
}

fn cli_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn sweep_once(scenario: &str, sweep: &str, out: &Path) -> Result<Vec<u8>, String> {
    let dir = cli_dir().join("scenarios");
    let status = Command::new(env!("CARGO_BIN_EXE_tempocorr"))
        .arg("sweep")
        .arg(dir.join(scenario))
        .arg(dir.join("sweeps").join(sweep))
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || format!("sweep {sweep} exited with {status}"))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn columns(csv: &[u8]) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let text = std::str::from_utf8(csv).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty CSV")?.split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse::<f64>().map_err(|e| format!("{v}: {e}"))).collect())
        .collect::<Result<_, _>>()?;
    Ok((header, rows))
}

fn criterion_12() -> Verdict {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    type Expect = fn(&str, f64) -> f64;
    let curves: [(&str, &str, &str, Expect); 3] = [
        ("rabi_three_step.json", "rabi_omega_t.json", "rabi_omega_t.csv", |col, t| match col {
            "k3" => 2.0 * t.cos() - (2.0 * t).cos(),
            _ => t.sin().powi(2),
        }),
        ("pure_depolarizing.json", "pure_depolarizing_eta.json", "pure_depolarizing_eta.csv", |col, eta| match col {
            "chsh_max" => 2.0 * SQRT_2 * (1.0 - eta),
            "negativity" => pure_negativity(eta),
            _ => 1.0 - eta,
        }),
        ("maximally_mixed_depolarizing.json", "mixed_depolarizing_eta.json", "mixed_depolarizing_eta.csv", |_, eta| {
            mixed_negativity(eta)
        }),
    ];
    let mut worst: f64 = 0.0;
    let mut n_curves = 0;
    for (scenario, sweep, golden, expect) in curves {
        let first = sweep_once(scenario, sweep, &tmp.path().join(format!("a_{golden}")))?;
        let second = sweep_once(scenario, sweep, &tmp.path().join(format!("b_{golden}")))?;
        ensure(first == second, || format!("{sweep}: two runs differ"))?;
        let stored = std::fs::read(cli_dir().join("golden").join(golden)).map_err(|e| format!("{golden}: {e}"))?;
        ensure(first == stored, || format!("{sweep}: output differs from golden/{golden}"))?;
        let (header, rows) = columns(&first)?;
        for (c, name) in header.iter().enumerate().skip(1) {
            n_curves += 1;
            for row in &rows {
                let dev = (row[c] - expect(name, row[0])).abs();
                ensure(dev <= 1e-9, || format!("{golden} {name} at {}: {}", row[0], row[c]))?;
                worst = worst.max(dev);
            }
        }
    }
    Ok(format!("{n_curves} curves bit-identical to golden files, closed-form deviation {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("golden matrices", criterion_1),
        ("spectrum of the mixed/identity PDM", criterion_2),
        ("negativity closed forms", criterion_3),
        ("CHSH maxima and threshold", criterion_4),
        ("NSIT quantifiers and K3 curves", criterion_5),
        ("nested vs PDM-trace quasiprobability", criterion_6),
        ("Q = P + D and subterm sum", criterion_7),
        ("NSIT quantifier vs conditions", criterion_8),
        ("PSD PDMs and NSIT", criterion_9),
        ("separable PDMs and CHSH", criterion_10),
        ("LGI violation implies negativity", criterion_11),
        ("sweep CSVs", criterion_12),
    ];
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut fatal = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        let known = KNOWN_FAILING.contains(&n);
        match run() {
            Ok(detail) => {
                println!("criterion {n:>2} PASS {title}: {detail}");
                if known {
                    println!("             (listed as known failing; update KNOWN_FAILING)");
                    fatal.push(n);
                }
            }
            Err(detail) => {
                let note = if known { " [known failing]" } else { "" };
                println!("criterion {n:>2} FAIL {title}: {detail}{note}");
                if strict || !known {
                    fatal.push(n);
                }
            }
        }
    }
    if !fatal.is_empty() {
        eprintln!("acceptance: unexpected results for criteria {fatal:?}");
        std::process::exit(1);
    }
}
