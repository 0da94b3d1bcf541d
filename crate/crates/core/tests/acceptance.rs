//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one `PASS`/`FAIL` line each; exits nonzero if any fails.

use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use coherent_wavelets::congruence::{kerr_congruence, ray_velocity};
use coherent_wavelets::energetics::{complex_velocity, densities};
use coherent_wavelets::error::Error;
use coherent_wavelets::fields::{f_pm, pure_gauge_field, real_fields, Helicity};
use coherent_wavelets::geometry::{complex_distance, frame_triad, from_spheroidal, DisplacementConfig, Side, Spheroidal};
use coherent_wavelets::newman::{boundary_values, boundary_values_extrapolated, multipole_check, newman_energetics};
use coherent_wavelets::potential::{constraint_residuals, GaugeParams};
use coherent_wavelets::pulse::{quadrature_oracle, PulseSpec};
use coherent_wavelets::scalar::WaveletParams;
use coherent_wavelets::vector::{c, Point3, Vec3};
use coherent_wavelets::verify::suites::{run_suite, sample_point, SamplePlan, Suite};

type Outcome = std::result::Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn unit_disk() -> DisplacementConfig {
    DisplacementConfig::new(1.0, 1.0).unwrap()
}

fn tilted() -> DisplacementConfig {
    DisplacementConfig::with_axis(Vec3::new(0.3, -0.5, 0.8) * 1.7, 1.0).unwrap()
}

fn check(label: &str, got: f64, tol: f64) -> Outcome {
    if got <= tol {
        Ok(format!("{label} {got:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("{label} {got:.2e} > {tol:.0e}"))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let failed: Vec<String> = parts.iter().filter_map(|p| p.clone().err()).collect();
    let text: Vec<String> = parts.into_iter().map(|p| p.unwrap_or_else(|e| e)).collect();
    if failed.is_empty() {
        Ok(text.join("; "))
    } else {
        Err(text.join("; "))
    }
}

fn suite(s: Suite, plan: &SamplePlan) -> Outcome {
    let r = run_suite(s, plan);
    let label = format!("{} (n={})", r.suite, r.n);
    if r.pass {
        check(&label, r.max_residual, r.tol)
    } else {
        Err(format!("{label} {:.2e} > {:.0e} at {:?}", r.max_residual, r.tol, r.worst_point))
    }
}

fn with_pulse(n: usize, seed: u64, d: f64) -> SamplePlan {
    SamplePlan::with_params(n, seed, WaveletParams::new(unit_disk(), PulseSpec::gaussian(d).unwrap()))
}

/// Exterior point in `[−4a, 4a]³` at least `0.05a` from the disk plane
/// inside the rim.
fn exterior_point(r: &mut ChaCha8Rng, a: f64) -> Vec3 {
    loop {
        let v = Vec3::new(r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0)) * a;
        if v.z.abs() > 0.05 * a || v.x.hypot(v.y) > 1.05 * a {
            return v;
        }
    }
}

fn geometry() -> Outcome {
    let mut worst = [0.0f64; 3];
    for (k, cfg) in [unit_disk(), tilted()].iter().enumerate() {
        let a = cfg.a();
        let errs: Vec<[f64; 3]> = (0..5000u64)
            .into_par_iter()
            .map(|i| {
                let x = exterior_point(&mut rng(1, k as u64 * 10_000 + i), a);
                let cd = complex_distance(x, cfg, None).unwrap();
                let p = cfg.to_local(x);
                let r2 = p.norm_sqr();
                let zeta2 = c(r2 - a * a, -2.0 * a * p.z);
                let e_zeta = (cd.zeta * cd.zeta - zeta2).norm() / (r2 + a * a);
                let (xi2, eta2) = (cd.xi * cd.xi, cd.eta * cd.eta);
                let rho2 = (xi2 + a * a) * ((a - cd.eta) * (a + cd.eta)) / (a * a);
                let e_pair = ((rho2 - cd.rho * cd.rho).abs() / (r2 + a * a))
                    .max((cd.xi * cd.eta / a - p.z).abs() / (r2 + a * a).sqrt())
                    .max(((xi2 - eta2) - (r2 - a * a)).abs() / (r2 + a * a));
                let e_gram = match frame_triad(x, cfg, None) {
                    Ok(f) => {
                        let g = f.gram();
                        let mut m: f64 = 0.0;
                        for (i, row) in g.iter().enumerate() {
                            for (j, e) in row.iter().enumerate() {
                                let id = if i == j { 1.0 } else { 0.0 };
                                m = m.max((e - id).norm());
                            }
                        }
                        m
                    }
                    Err(Error::OnAxis(_)) => 0.0,
                    Err(e) => panic!("{e}"),
                };
                [e_zeta, e_pair, e_gram]
            })
            .collect();
        for e in errs {
            for j in 0..3 {
                worst[j] = worst[j].max(e[j]);
            }
        }
    }
    all(vec![
        check("zeta^2", worst[0], 1e-12),
        check("spheroidal pair", worst[1], 1e-12),
        check("gram", worst[2], 1e-12),
    ])
}

fn frame_suites() -> Outcome {
    let plan = SamplePlan::new(1000, 42);
    all(vec![suite(Suite::Theorem2, &plan), suite(Suite::FrameIdentities, &plan)])
}

fn w_constraints() -> Outcome {
    let plan = SamplePlan::new(100, 42);
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let mut r = rng(3, k);
        let mut cz = || c(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let gp = GaugeParams::new(cz(), cz(), cz());
        let m = (0..100u64)
            .into_par_iter()
            .map(|i| {
                let p = sample_point(&plan, i + 100 * k);
                constraint_residuals(p.x, &plan.wp.cfg, &gp, &plan.fd).map_or(f64::INFINITY, |r| r.max())
            })
            .reduce(|| 0.0, f64::max);
        worst = worst.max(m);
    }
    check("w residual (20 gauges x 100)", worst, plan.fd.tol)
}

fn wave_equations() -> Outcome {
    let mut parts = Vec::new();
    for d in [0.1, 0.3, 1.0] {
        let plan = with_pulse(1000, 42, d);
        for s in [Suite::ScalarWave, Suite::Lorenz, Suite::CurrentFree] {
            parts.push(suite(s, &plan).map(|t| format!("d={d} {t}")).map_err(|t| format!("d={d} {t}")));
        }
    }
    all(parts)
}

fn maxwell() -> Outcome {
    suite(Suite::MaxwellComplex, &SamplePlan::new(1000, 42))
}

fn nullity() -> Outcome {
    suite(Suite::Nullity, &SamplePlan::new(10_000, 42))
}

fn congruence() -> Outcome {
    let plan = SamplePlan::new(10_000, 42);
    let wp = &plan.wp;
    let d = wp.pulse.duration();
    let errs: Vec<[f64; 3]> = (0..plan.n as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_point(&plan, i);
            let h = p.helicity;
            let u = ray_velocity(p.x, &wp.cfg, h, None).unwrap();
            let k = kerr_congruence(p.x, &wp.cfg, h, None).unwrap();
            let null = GaugeParams::null(h, p.gp.kappa, p.gp.mu);
            let v_at = |t: f64| {
                let (fp, fm) = f_pm(p.x, t, wp, &null, None)?;
                let pair = real_fields(if h == Helicity::Plus { &fp } else { &fm }, h);
                densities(pair.e, pair.b).map(|s| s.v)
            };
            let Ok(v0) = v_at(p.t) else { return [0.0, f64::INFINITY, f64::INFINITY] };
            let drift = (1..5)
                .map(|j| v_at(p.t + d * (j as f64 - 2.5)).map_or(f64::INFINITY, |v| (v - v0).norm()))
                .fold(0.0, f64::max);
            [(u - k).norm(), (v0 - u).norm(), drift]
        })
        .collect();
    let w = |j: usize| errs.iter().map(|e| e[j]).fold(0.0, f64::max);
    all(vec![check("|u-k|", w(0), 1e-12), check("|v-u|", w(1), 1e-10), check("v drift over 5 times", w(2), 1e-10)])
}

fn complex_congruence() -> Outcome {
    let plan = SamplePlan::new(10_000, 42);
    let wp = &plan.wp;
    let a = wp.cfg.a();
    // Regular sample plus points hugging the axis, ρ ∈ [1.1e-3a, 1e-2a].
    let points: Vec<(Point3, f64, GaugeParams)> = (0..plan.n as u64)
        .map(|i| {
            let p = sample_point(&plan, i);
            (p.x, p.t, GaugeParams::null(p.helicity, p.gp.kappa, p.gp.mu))
        })
        .chain((0..1000u64).map(|i| {
            let mut r = rng(8, i);
            let rho = a * r.gen_range(1.1e-3..1e-2);
            let phi = r.gen_range(0.0..TAU);
            let z = a * r.gen_range(0.2..4.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
            let x = Vec3::new(rho * phi.cos(), rho * phi.sin(), z);
            let h = if r.gen_bool(0.5) { Helicity::Plus } else { Helicity::Minus };
            let gp = GaugeParams::null(h, c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)), c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
            let t = z.abs() + wp.pulse.duration() * r.gen_range(-3.0..3.0);
            (x, t, gp)
        }))
        .collect();
    let res: Vec<(f64, f64, bool)> = points
        .par_iter()
        .map(|(x, t, gp)| match complex_velocity(*x, *t, wp, gp, None) {
            Ok(cv) => ((cv.v_tilde.square() - 1.0).norm(), cv.twist.norm(), false),
            Err(Error::PulseNode(_)) => (0.0, f64::INFINITY, true),
            Err(e) => panic!("{e}"),
        })
        .collect();
    let unit = res.iter().map(|r| r.0).fold(0.0, f64::max);
    let twist = res.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let skipped = res.iter().filter(|r| r.2).count();
    let min_twist = if twist > 1e-6 {
        Ok(format!("min |twist| {twist:.2e} > 1e-6 ({skipped} pulse nodes skipped)"))
    } else {
        Err(format!("min |twist| {twist:.2e} <= 1e-6"))
    };
    all(vec![check("|v.v - 1|", unit, 1e-10), min_twist])
}

fn newman() -> Outcome {
    let cfg = unit_disk();
    let mut sources: f64 = 0.0;
    for rho in [0.0, 0.2, 0.4, 0.6, 0.8, 0.9] {
        let exact = boundary_values(rho, &cfg).unwrap().density;
        let fit = boundary_values_extrapolated(rho, &cfg).unwrap().density;
        sources = sources.max((fit.sigma - exact.sigma).abs() / exact.sigma.abs());
        if rho > 0.0 {
            sources = sources.max((fit.k - exact.k).norm() / exact.k.norm());
        }
    }
    let centre = newman_energetics(Vec3::ZERO, &cfg, Some(Side::Above)).unwrap().omega;
    // The rim is the focal circle itself; approach it along ξ = η.
    let delta = 1e-7;
    let near_rim = from_spheroidal(Spheroidal { xi: delta, eta: delta, phi: 0.4 }, &cfg).unwrap();
    let rim = newman_energetics(near_rim, &cfg, None).unwrap().omega;
    let far = multipole_check(50.0, &cfg).unwrap();
    let r20 = multipole_check(20.0, &cfg).unwrap();
    let r40 = multipole_check(40.0, &cfg).unwrap();
    let ratio = r20.residual_max / r40.residual_max;
    let decay = if (ratio / 16.0 - 1.0).abs() <= 0.1 {
        Ok(format!("dipole residual ratio 20a/40a {ratio:.3}"))
    } else {
        Err(format!("dipole residual ratio 20a/40a {ratio:.3} not within 10% of 16"))
    };
    all(vec![
        check("sigma, K extrapolation (rho <= 0.9a)", sources, 1e-8),
        check("|Omega(0)/Omega(a) - 2|", (centre / rim - 2.0).abs(), 1e-10),
        check("|flux/4pi - 1| at 50a", (far.flux_over_4pi - 1.0).abs(), 1e-6),
        decay,
    ])
}

fn pure_gauge() -> Outcome {
    let plan = SamplePlan::new(2000, 42);
    let wp = &plan.wp;
    let res: Vec<[f64; 3]> = (0..plan.n as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_point(&plan, i);
            let h = p.helicity;
            let pg = pure_gauge_field(p.x, p.t, wp, h, p.gp.mu, None).unwrap();
            let vanishing = pg.f.norm() / pg.scale;
            // Adding a pure-gauge potential leaves F̃± unchanged: with
            // gp_avg = (gp + pg)/2 the field is exactly half of F̃±(gp).
            let base = GaugeParams::null(h, p.gp.kappa, p.gp.mu);
            let pure = GaugeParams::pure_gauge(h, p.gp.mu * c(0.3, -1.1) + c(0.5, 0.2));
            let avg = GaugeParams::new(
                (base.kappa + pure.kappa) * 0.5,
                (base.lambda + pure.lambda) * 0.5,
                (base.mu + pure.mu) * 0.5,
            );
            let pick = |gp: &GaugeParams| {
                let (fp, fm) = f_pm(p.x, p.t, wp, gp, None).unwrap();
                if h == Helicity::Plus { fp } else { fm }
            };
            let f1 = pick(&base);
            let f2 = pick(&avg) * 2.0;
            let shift = (f2 - f1).norm() / f1.norm().max(pg.scale);
            [vanishing, shift, pg.potential.norm()]
        })
        .collect();
    let vanishing = res.iter().map(|r| r[0]).fold(0.0, f64::max);
    let shift = res.iter().map(|r| r[1]).fold(0.0, f64::max);
    let potential = res.iter().map(|r| r[2]).fold(f64::INFINITY, f64::min);
    let nonzero = if potential > 0.0 {
        Ok(format!("min |A| {potential:.2e} > 0"))
    } else {
        Err("potential vanished".to_string())
    };
    all(vec![check("|F|/scale", vanishing, 1e-12), nonzero, check("gauge shift", shift, 1e-12)])
}

fn pulse() -> Outcome {
    let mut parts = Vec::new();
    for d in [0.3, 1.0] {
        let p = PulseSpec::gaussian(d).unwrap();
        let errs: Vec<f64> = (0..400u64)
            .into_par_iter()
            .map(|i| {
                let mut r = rng(11, i);
                let (m, arg) = (10.0 * r.gen_range(0.0f64..1.0).sqrt(), r.gen_range(-PI..=0.0));
                let tau = Complex64::from_polar(m * d, arg);
                let fast = p.derivs(tau).unwrap();
                (0..3)
                    .map(|n| {
                        let oracle = quadrature_oracle(&p, tau, n).unwrap();
                        (fast[n] - oracle).norm() / oracle.norm()
                    })
                    .fold(0.0, f64::max)
            })
            .collect();
        parts.push(check(&format!("d={d} fast vs oracle (|tau|/d <= 10, Im tau <= 0)"), errs.into_iter().fold(0.0, f64::max), 1e-8));
        let real: f64 = (0..=2000)
            .map(|k| {
                let t = d * (-10.0 + 0.01 * k as f64);
                let g = p.analytic_signal(c(t, 0.0), 0).unwrap();
                (2.0 * g.re - p.g0(t)).abs() * d
            })
            .fold(0.0, f64::max);
        parts.push(check(&format!("d={d} 2Re g - g0"), real, 1e-10));
    }
    all(parts)
}

fn run_cwave(args: &[&str]) -> std::result::Result<std::process::Output, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cwave")).args(args).output().map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(out)
    } else {
        Err(format!("cwave {args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)))
    }
}

const SAMPLE_CONFIG: &str = r#"{
  "a": 1.0,
  "pulse": {"kind": "gaussian", "d": 0.3},
  "gauge": {"lambda": [0, -1], "kappa": [0.2, 0.1], "mu": [1, 0]},
  "time": 2.5,
  "grid": {"plane": "xz", "extent": [-3, 3, -3, 3], "nx": 121, "ny": 121},
  "quantities": ["f", "inertia", "energy", "velocity", "twist"],
  "image": {"quantity": "energy", "log": true}
}"#;

fn read(path: &Path) -> std::result::Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("config.json");
    std::fs::write(&cfg, SAMPLE_CONFIG).map_err(|e| e.to_string())?;
    let cfg = cfg.to_str().unwrap();
    let mut verify = Vec::new();
    let mut sample = Vec::new();
    for (k, threads) in ["1", "8", "8"].iter().enumerate() {
        verify.push(run_cwave(&["--threads", threads, "verify", "--all", "--seed", "42"])?.stdout);
        let out = dir.path().join(format!("run{k}"));
        run_cwave(&["--threads", threads, "sample", "--config", cfg, "--out", out.to_str().unwrap()])?;
        sample.push((read(&out.join("sample.csv"))?, read(&out.join("sample.ppm"))?));
    }
    let same_verify = verify.windows(2).all(|w| w[0] == w[1]);
    let same_sample = sample.windows(2).all(|w| w[0] == w[1]);
    match (same_verify, same_sample) {
        (true, true) => Ok(format!(
            "verify ({} bytes) and sample ({} + {} bytes) identical across 3 runs, threads 1 and 8",
            verify[0].len(),
            sample[0].0.len(),
            sample[0].1.len()
        )),
        _ => Err(format!("outputs differ: verify identical {same_verify}, sample identical {same_sample}")),
    }
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { name: "geometry identities", budget: s(1), run: geometry },
        Criterion { name: "frame derivative identities", budget: s(30), run: frame_suites },
        Criterion { name: "w constraints", budget: s(60), run: w_constraints },
        Criterion { name: "gauge and wave equations", budget: s(120), run: wave_equations },
        Criterion { name: "maxwell closure", budget: s(120), run: maxwell },
        Criterion { name: "nullity", budget: s(10), run: nullity },
        Criterion { name: "congruence equality", budget: s(10), run: congruence },
        Criterion { name: "complex congruence", budget: s(10), run: complex_congruence },
        Criterion { name: "newman statics", budget: s(60), run: newman },
        Criterion { name: "pure gauge", budget: s(10), run: pure_gauge },
        Criterion { name: "pulse", budget: s(10), run: pulse },
        Criterion { name: "cli determinism", budget: s(300), run: determinism },
    ];
    let mut failed = 0;
    for (k, cr) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (cr.run)();
        let took = start.elapsed();
        let over = took > cr.budget;
        let (tag, detail) = match &outcome {
            Ok(d) if !over => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; over time budget")),
            Err(d) => ("FAIL", d.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {:<28} {:>8.3}s / {:>3}s  {detail}", k + 1, cr.name, took.as_secs_f64(), cr.budget.as_secs());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
