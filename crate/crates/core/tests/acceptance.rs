//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is printed in order;
//! the process exits non-zero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{
    c, golden_n2, jet_fd, matrix_rel_error, metric_fd, random_g2_curve, random_symmetric,
    richardson,
};
use gnkernel::geometry::{
    pullback_residual, CurveSpec, CurveTarget, Grid, MetricEvaluator, ResidualMethod,
};
use gnkernel::kernel::{
    cross_validate, kernel_direct_eval_with, rationalize_kernel, JetEvaluator, KernelFormula,
    VerifyConfig,
};
use gnkernel::polyalg::{Precision, VariableArena};
use gnkernel::sampling::PolydiscSampler;
use gnkernel::symfun::{
    decompose_symmetric, expand_elementary, symmetrize_point, vandermonde, SymmetricBlock,
};
use gnkernel::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn(&mut Formulas) -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

struct Formulas {
    by_n: Vec<Option<KernelFormula>>,
    build_time: Vec<Duration>,
}

impl Formulas {
    fn get(&self, n: usize) -> &KernelFormula {
        self.by_n[n].as_ref().expect("formula built")
    }
}

fn c1_golden(_: &mut Formulas) -> Outcome {
    let t = Instant::now();
    let f = rationalize_kernel(2).unwrap();
    let elapsed = t.elapsed();
    let (h1, h2) = golden_n2();
    let exact = f.h1() == &h1 && f.h2() == &h2 && f.pi_power() == 2;
    let fast = elapsed < Duration::from_secs(1);
    outcome(
        exact && fast,
        format!("H1, H2 exact: {exact}; build {}", secs(elapsed)),
    )
}

fn c2_cross(fs: &mut Formulas) -> Outcome {
    let budgets = [(2, 5), (3, 60), (4, 600)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, budget) in budgets {
        let t = Instant::now();
        let f = rationalize_kernel(n).unwrap();
        fs.build_time[n] = t.elapsed();
        let cfg = VerifyConfig {
            n,
            seed: 2024,
            precision: Precision::Extended,
            ..Default::default()
        };
        let report = cross_validate(&f, &cfg).unwrap();
        let elapsed = t.elapsed();
        let ok = report.passed() && elapsed < Duration::from_secs(budget);
        pass &= ok;
        parts.push(format!(
            "n={n} max {:.2e} in {}",
            report.max_rel_error,
            secs(elapsed)
        ));
        fs.by_n[n] = Some(f);
    }
    outcome(pass, parts.join("; "))
}

fn c3_singular(fs: &mut Formulas) -> Outcome {
    let lambda = [c(0.3, 0.0), c(0.3, 0.0)];
    let singular = matches!(
        kernel_direct_eval_with(&lambda, &lambda, Precision::Extended),
        Err(Error::Singular(_))
    );
    let xi = symmetrize_point(&lambda).unwrap();
    let formula = fs.get(2).eval(&xi, &xi).unwrap();
    let values = [1e-2, 1e-3, 1e-4].map(|eps| {
        let l = [c(0.3, 0.0), c(0.3 + eps, 0.0)];
        kernel_direct_eval_with(&l, &l, Precision::Extended).unwrap()
    });
    let limit = richardson(values);
    let err = (formula - limit).norm() / formula.norm();
    outcome(
        singular && err <= 1e-6,
        format!(
            "direct singular: {singular}; formula {:.15} vs limit rel {err:.2e}",
            formula.re
        ),
    )
}

fn c4_round_trips(_: &mut Formulas) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut decomposed = 0;
    let mut divided = 0;
    for k in 0..200 {
        let n = 1 + k % 4;
        let arena = VariableArena::numbered("x", n);
        let p = random_symmetric(&mut rng, &arena, n, 8);
        let block = [SymmetricBlock::numbered((0..n).collect(), "e")];
        let q = decompose_symmetric(&p, &block).unwrap();
        if expand_elementary(&q, &block, &arena).unwrap() == p {
            decomposed += 1;
        }
        let v = vandermonde(&arena, &(0..n).collect::<Vec<_>>()).unwrap();
        let mut r = &p * &v;
        for i in 0..n {
            for j in i + 1..n {
                r = r.exact_div_linear(i, j).unwrap();
            }
        }
        if r == p {
            divided += 1;
        }
    }
    outcome(
        decomposed == 200 && divided == 200,
        format!("decompose {decomposed}/200; Vandermonde {divided}/200"),
    )
}

fn c5_structure(fs: &mut Formulas) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let f = fs.get(n);
        let coeff = f.is_coefficient_hermitian();
        let mut sampler = PolydiscSampler::new(55 + n as u64, n, 0.8, 0.0).unwrap();
        let mut herm = 0.0f64;
        let mut positive = true;
        for _ in 0..1000 {
            let xi = symmetrize_point(&sampler.sample().unwrap()).unwrap();
            let eta = symmetrize_point(&sampler.sample().unwrap()).unwrap();
            let a = f.eval(&xi, &eta).unwrap();
            let b = f.eval(&eta, &xi).unwrap();
            herm = herm.max((a - b.conj()).norm() / a.norm());
            let d = f.eval(&xi, &xi).unwrap();
            positive &= d.re > 0.0 && d.im.abs() <= 1e-12 * d.re;
        }
        pass &= coeff && positive && herm <= 1e-12;
        parts.push(format!(
            "n={n} hermitian {herm:.1e} diag>0 {positive} coeffs {coeff}"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn c6_metric(fs: &mut Formulas) -> Outcome {
    let disc = rationalize_kernel(1).unwrap();
    let m1 = MetricEvaluator::new(&disc).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut err1 = 0.0f64;
    for _ in 0..50 {
        let z = gnkernel::sampling::disc_point(&mut rng, 0.8);
        let g = m1.metric_at(&[z]).unwrap().get(0, 0);
        let exact = 2.0 / (1.0 - z.norm_sqr()).powi(2);
        err1 = err1.max((g - c(exact, 0.0)).norm() / exact);
    }
    let mut pass = err1 <= 1e-9;
    let mut parts = vec![format!("n=1 closed form {err1:.1e}")];
    for n in 2..=3 {
        let f = fs.get(n);
        let m = MetricEvaluator::new(f).unwrap();
        let mut sampler = PolydiscSampler::new(600 + n as u64, n, 0.8, 0.0).unwrap();
        let mut worst = 0.0f64;
        let mut pd = true;
        for _ in 0..200 {
            let xi = symmetrize_point(&sampler.sample().unwrap()).unwrap();
            let g = m.metric_at(&xi).unwrap();
            pd &= g.is_positive_definite();
            worst = worst.max(matrix_rel_error(&metric_fd(f, &xi, 2e-4), &g.rows()));
        }
        pass &= pd && worst <= 1e-6;
        parts.push(format!("n={n} fd {worst:.1e} pd {pd}"));
    }
    outcome(pass, parts.join("; "))
}

fn c7_jets(fs: &mut Formulas) -> Outcome {
    let f = fs.get(2);
    let jets = JetEvaluator::new(f);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst = [0.0f64; 2];
    for _ in 0..20 {
        let g = random_g2_curve(&mut rng);
        let z = gnkernel::sampling::disc_point(&mut rng, 0.3);
        for delta in 1..=2 {
            let sym = jets.jet(&g, z, delta).unwrap();
            let fd = jet_fd(f, &g, z, delta, 1e-3);
            worst[delta - 1] = worst[delta - 1].max((sym - fd).norm() / fd.norm());
        }
    }
    outcome(
        worst.iter().all(|&w| w <= 1e-6),
        format!("delta=1 {:.1e}; delta=2 {:.1e}", worst[0], worst[1]),
    )
}

fn c8_residual(fs: &mut Formulas) -> Outcome {
    let f = fs.get(2);
    let grid = Grid::new(0.4);
    let fc = CurveSpec::parse("0.2-0.1i", CurveTarget::Euclidean(1)).unwrap();
    let gc = CurveSpec::parse("0.3;0.01+0.02i", CurveTarget::Symmetrized(2)).unwrap();
    let constant = pullback_residual(&fc, &gc, f, &grid, ResidualMethod::Symbolic)
        .unwrap()
        .sup_norm();
    let fz = CurveSpec::parse("0,1", CurveTarget::Euclidean(1)).unwrap();
    let gz = CurveSpec::parse("0,1;0", CurveTarget::Symmetrized(2)).unwrap();
    let sym = pullback_residual(&fz, &gz, f, &grid, ResidualMethod::Symbolic)
        .unwrap()
        .sup_norm();
    let fd = pullback_residual(&fz, &gz, f, &grid, ResidualMethod::FiniteDifference)
        .unwrap()
        .sup_norm();
    outcome(
        constant <= 1e-12 && sym > 1e-3 && fd > 1e-3,
        format!("constant {constant:.1e}; F=(z), G=(z,0) sup {sym:.6} (fd {fd:.6})"),
    )
}

fn run_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gnkernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn c9_determinism(fs: &mut Formulas) -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut identical = true;
    for n in ["1", "2", "3"] {
        let paths: Vec<String> = (0..2)
            .map(|k| {
                dir.path()
                    .join(format!("k{n}_{k}.json"))
                    .to_string_lossy()
                    .into_owned()
            })
            .collect();
        for p in &paths {
            assert!(run_bin(&["formula", "--n", n, "--out", p]).status.success());
        }
        identical &= std::fs::read(&paths[0]).unwrap() == std::fs::read(&paths[1]).unwrap();
    }
    let rebuilt = rationalize_kernel(4).unwrap();
    identical &= rebuilt.to_json() == fs.get(4).to_json();
    let args = ["verify", "--n", "2", "--samples", "300", "--seed", "9"];
    let (a, b) = (run_bin(&args), run_bin(&args));
    let same_report =
        a.stdout == b.stdout && a.status.code() == b.status.code() && !a.stdout.is_empty();
    outcome(
        identical && same_report,
        format!("formula files identical: {identical}; verify reports identical: {same_report}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden n=2 formula", c1_golden),
        ("cross-representation n=2,3,4", c2_cross),
        ("singular locus limit", c3_singular),
        ("decomposition and Vandermonde round trips", c4_round_trips),
        ("kernel structure", c5_structure),
        ("metric", c6_metric),
        ("jets vs finite differences", c7_jets),
        ("pullback residuals", c8_residual),
        ("determinism", c9_determinism),
    ];
    let mut fs = Formulas {
        by_n: vec![None; 5],
        build_time: vec![Duration::ZERO; 5],
    };
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check(&mut fs);
        failed += usize::from(!o.pass);
        println!(
            "{} [{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    let builds: Vec<String> = (2..=4)
        .map(|n| format!("n={n} {}", secs(fs.build_time[n])))
        .collect();
    println!("pipeline build times: {}", builds.join(", "));
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
