use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use tpl::laws::{GammaSS, LmlParams, NbParams, TmlParams, TplParams, TpsParams};
use tpl::mlfun::{mittag_leffler, MlArgs};
use tpl::mvtpl::{fig2_scenario, mv_sample, write_samples_csv, MvTplParams};
use tpl::paths::{
    nb_path, ou_path, sato_compensators, sato_path, sato_path_with, tpl_levy_path, OuConfig, OuScheme, OuStart,
    Representation, SamplePath, SatoConfig, TimeGrid,
};
use tpl::samplers::{
    sample_gamma, sample_lml, sample_nb_increment, sample_positive_stable, sample_tml_with, sample_tpl, sample_tps,
    RngState, TmlMethod,
};
use tpl::verify::{run_suite, SuiteConfig};

use crate::{
    svg, usage, EvalArgs, EvalFn, Format, LawArgs, Preset, Process, RepArg, SampleArgs, SchemeArg, SimulateArgs,
    TmlMethodArg, VerifyArgs,
};

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn need(v: Option<f64>, flag: &str, what: &str) -> Result<f64> {
    v.ok_or_else(|| usage(format!("{what} needs --{flag}")))
}

impl LawArgs {
    fn tpl(&self, what: &str) -> Result<TplParams> {
        Ok(TplParams::new(
            need(self.gamma, "gamma", what)?,
            need(self.lambda, "lambda", what)?,
            need(self.delta, "delta", what)?,
            need(self.theta, "theta", what)?,
        )?)
    }

    fn tps(&self, what: &str) -> Result<TpsParams> {
        Ok(TpsParams::new(
            need(self.gamma, "gamma", what)?,
            need(self.lambda, "lambda", what)?,
            need(self.theta, "theta", what)?,
        )?)
    }

    fn lml(&self, what: &str) -> Result<LmlParams> {
        Ok(LmlParams::new(need(self.a, "a", what)?, need(self.c, "c", what)?, need(self.theta, "theta", what)?)?)
    }

    fn tml(&self, what: &str) -> Result<TmlParams> {
        Ok(TmlParams::new(need(self.a, "a", what)?, need(self.c, "c", what)?, need(self.theta, "theta", what)?)?)
    }

    fn nb(&self, what: &str) -> Result<NbParams> {
        Ok(NbParams::new(
            need(self.pi, "pi", what)?,
            need(self.kappa, "kappa", what)?,
            need(self.alpha, "alpha", what)?,
            need(self.mu, "mu", what)?,
        )?)
    }

    fn gamma_law(&self, what: &str) -> Result<GammaSS> {
        Ok(GammaSS::new(need(self.shape, "shape", what)?, need(self.rate, "rate", what)?)?)
    }
}

fn grid_of<T: Copy>(v: &[T], flag: &str, what: &str) -> Result<Vec<T>> {
    if v.is_empty() {
        return Err(usage(format!("{what} needs --{flag} (comma-separated list)")));
    }
    Ok(v.to_vec())
}

pub fn eval(a: &EvalArgs) -> Result<()> {
    let what = format!("eval {}", clap::ValueEnum::to_possible_value(&a.function).unwrap().get_name());
    let law = &a.law;
    let (label, rows): (&str, Vec<(String, f64)>) = match a.function {
        EvalFn::MittagLeffler => {
            let (order, b, c) = (need(law.a, "a", &what)?, law.b.unwrap_or(1.0), law.c.unwrap_or(1.0));
            let rows = grid_of(&a.z, "z", &what)?
                .into_iter()
                .map(|z| Ok((z.to_string(), mittag_leffler(MlArgs::new(order, b, c, z)?)?.value)))
                .collect::<Result<_>>()?;
            ("z", rows)
        }
        EvalFn::TplLaplace => {
            let p = law.tpl(&what)?;
            let p = p.with_delta(p.delta() * a.t)?;
            ("s", tabulate(&a.s, "s", &what, |s| p.laplace(s))?)
        }
        EvalFn::TplExponent => {
            let p = law.tpl(&what)?;
            ("s", tabulate(&a.s, "s", &what, |s| Ok(p.exponent(s)))?)
        }
        EvalFn::TplPdf => {
            let p = law.tpl(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.pdf(x))?)
        }
        EvalFn::TplLevyDensity => {
            let p = law.tpl(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.levy_density(x))?)
        }
        EvalFn::TplCumulant => {
            let p = law.tpl(&what)?;
            let rows = grid_of(&a.n, "n", &what)?
                .into_iter()
                .map(|n| Ok((n.to_string(), p.cumulant(n)?.value)))
                .collect::<Result<_>>()?;
            ("n", rows)
        }
        EvalFn::TpsLaplace => {
            let p = law.tps(&what)?;
            ("s", tabulate(&a.s, "s", &what, |s| p.laplace(s, a.t))?)
        }
        EvalFn::TpsPdf => {
            let p = law.tps(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.pdf(x))?)
        }
        EvalFn::TpsPotentialDensity => {
            let p = law.tps(&what)?;
            let q = need(a.q, "q", &what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.potential_density(q, x))?)
        }
        EvalFn::LmlPdf => {
            let p = law.lml(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.pdf(x))?)
        }
        EvalFn::LmlCdf => {
            let p = law.lml(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.cdf(x))?)
        }
        EvalFn::LmlLaplace => {
            let p = law.lml(&what)?;
            ("s", tabulate(&a.s, "s", &what, |s| p.laplace(s))?)
        }
        EvalFn::TmlPdf => {
            let p = law.tml(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.pdf(x))?)
        }
        EvalFn::TmlCdf => {
            let p = law.tml(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| p.cdf(x))?)
        }
        EvalFn::TmlLaplace => {
            let p = law.tml(&what)?;
            ("s", tabulate(&a.s, "s", &what, |s| p.laplace(s))?)
        }
        EvalFn::NbLaplace => {
            let p = law.nb(&what)?;
            ("s", tabulate(&a.s, "s", &what, |s| p.laplace(s))?)
        }
        EvalFn::GammaPdf => {
            let p = law.gamma_law(&what)?;
            ("x", tabulate(&a.x, "x", &what, |x| Ok(p.pdf(x)))?)
        }
    };
    let mut w = sink(a.out.as_deref())?;
    writeln!(w, "{label},value")?;
    for (arg, v) in rows {
        writeln!(w, "{arg},{}", num(v))?;
    }
    w.flush()?;
    Ok(())
}

fn tabulate(args: &[f64], flag: &str, what: &str, f: impl Fn(f64) -> tpl::Result<f64>) -> Result<Vec<(String, f64)>> {
    grid_of(args, flag, what)?.into_iter().map(|v| Ok((v.to_string(), f(v)?))).collect()
}

pub fn sample(a: &SampleArgs) -> Result<()> {
    let what = format!("sample {}", clap::ValueEnum::to_possible_value(&a.law).unwrap().get_name());
    let law = &a.law_args;
    let mut rng = RngState::new(a.seed, 0);
    type Draw = Box<dyn FnMut(&mut RngState) -> tpl::Result<f64>>;
    let mut draw: Draw = match a.law {
        crate::Law::Tpl => {
            let p = law.tpl(&what)?;
            let t = a.t;
            Box::new(move |r| sample_tpl(&p, t, r))
        }
        crate::Law::Tps => {
            let p = law.tps(&what)?;
            let t = a.t;
            Box::new(move |r| sample_tps(&p, t, r))
        }
        crate::Law::PositiveStable => {
            let (g, l) = (need(law.gamma, "gamma", &what)?, need(law.lambda, "lambda", &what)?);
            TpsParams::new(g, l, 0.0)?;
            Box::new(move |r| sample_positive_stable(g, l, r))
        }
        crate::Law::Lml => {
            let p = law.lml(&what)?;
            Box::new(move |r| Ok(sample_lml(&p, r)?.value))
        }
        crate::Law::Tml => {
            let p = law.tml(&what)?;
            let method = match a.method {
                TmlMethodArg::InverseCdf => TmlMethod::InverseCdf,
                TmlMethodArg::Mixture => TmlMethod::Mixture,
            };
            Box::new(move |r| sample_tml_with(&p, method, r))
        }
        crate::Law::Nb => {
            let p = law.nb(&what)?;
            let t = a.t;
            Box::new(move |r| sample_nb_increment(&p, t, r))
        }
        crate::Law::Gamma => {
            let p = law.gamma_law(&what)?;
            Box::new(move |r| Ok(sample_gamma(&p, r)))
        }
    };
    let mut values = Vec::with_capacity(a.n);
    for _ in 0..a.n {
        values.push(draw(&mut rng)?);
    }
    let mut w = sink(a.out.as_deref())?;
    writeln!(w, "x")?;
    for v in values {
        writeln!(w, "{}", num(v))?;
    }
    w.flush()?;
    Ok(())
}

fn write_paths(w: &mut dyn Write, names: &[String], paths: &[SamplePath]) -> io::Result<()> {
    writeln!(w, "t,{}", names.join(","))?;
    let grid = paths[0].grid().times();
    for (k, t) in grid.iter().enumerate() {
        let row: Vec<String> = paths.iter().map(|p| num(p.values()[k])).collect();
        writeln!(w, "{},{}", num(*t), row.join(","))?;
    }
    Ok(())
}

fn svg_path(a: &SimulateArgs) -> Result<Option<PathBuf>> {
    if a.format == Format::Csv {
        return Ok(None);
    }
    let Some(out) = &a.out else {
        return Err(usage("--format svg needs --out for the CSV; the chart goes next to it"));
    };
    if out.extension().is_some_and(|e| e == "svg") {
        return Err(usage("--out names the CSV file and must not end in .svg"));
    }
    Ok(Some(out.with_extension("svg")))
}

fn emit_paths(a: &SimulateArgs, title: &str, names: Vec<String>, paths: Vec<SamplePath>) -> Result<()> {
    let chart = svg_path(a)?;
    let mut w = sink(a.out.as_deref())?;
    write_paths(&mut w, &names, &paths)?;
    w.flush()?;
    if let Some(p) = chart {
        let series: Vec<(String, Vec<(f64, f64)>)> = names
            .into_iter()
            .zip(&paths)
            .map(|(n, path)| (n, path.grid().times().iter().copied().zip(path.values().iter().copied()).collect()))
            .collect();
        std::fs::write(&p, svg::lines(title, &series)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn grid(a: &SimulateArgs, t_max: f64, steps: usize) -> Result<TimeGrid> {
    let steps = a.steps.unwrap_or(steps);
    if steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    Ok(TimeGrid::uniform(a.t_max.unwrap_or(t_max), steps)?)
}

fn marginals(specs: &[String]) -> Result<Vec<(f64, f64, f64)>> {
    if specs.is_empty() {
        return Err(usage("simulate mv needs at least one --marginal gamma,lambda,theta"));
    }
    specs
        .iter()
        .map(|s| {
            let v: Vec<f64> = s
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| usage(format!("--marginal {s:?}: expected three numbers gamma,lambda,theta")))?;
            match v[..] {
                [g, l, th] => Ok((g, l, th)),
                _ => Err(usage(format!("--marginal {s:?}: expected three numbers gamma,lambda,theta"))),
            }
        })
        .collect()
}

pub fn simulate(a: &SimulateArgs) -> Result<()> {
    if a.paths == 0 {
        return Err(usage("--paths must be at least 1"));
    }
    let mut rng = RngState::new(a.seed, 0);
    let names: Vec<String> = (1..=a.paths).map(|i| format!("path{i}")).collect();
    if let Some(preset) = a.preset {
        return match preset {
            Preset::Fig1 => fig1(a),
            Preset::Fig2 => fig2(a, &mut rng),
        };
    }
    let what = format!("simulate {}", clap::ValueEnum::to_possible_value(&a.process.unwrap()).unwrap().get_name());
    match a.process.expect("clap requires a process or a preset") {
        Process::TplLevy => {
            let p = a.law.tpl(&what)?;
            let g = grid(a, 1.0, 100)?;
            let rep = match a.rep {
                RepArg::GammaTps => Representation::GammaTps,
                RepArg::CppLml => Representation::CppLml,
                RepArg::NbGamma => Representation::NbGamma,
            };
            let paths = (0..a.paths).map(|_| tpl_levy_path(&p, &g, rep, &mut rng)).collect::<tpl::Result<_>>()?;
            emit_paths(a, &p.to_string(), names, paths)
        }
        Process::Nb => {
            let p = a.law.nb(&what)?;
            let g = grid(a, 1.0, 100)?;
            let paths = (0..a.paths).map(|_| nb_path(&p, &g, &mut rng)).collect::<tpl::Result<_>>()?;
            emit_paths(a, "negative binomial process", names, paths)
        }
        Process::Ou => {
            let p = a.law.tpl(&what)?;
            let alpha = need(a.law.alpha, "alpha", &what)?;
            let start = a.x0.map_or(OuStart::Stationary, OuStart::Value);
            let cfg = OuConfig::new(p, alpha, start)?;
            let g = grid(a, 1.0, 1000)?;
            let scheme = scheme(a.scheme);
            let paths = (0..a.paths).map(|_| ou_path(&cfg, &g, scheme, &mut rng)).collect::<tpl::Result<_>>()?;
            emit_paths(a, &format!("OU, alpha={alpha}, {p}"), names, paths)
        }
        Process::Sato => {
            let p = a.law.tpl(&what)?;
            let cfg = SatoConfig::new(p, need(a.h, "h", &what)?, a.eps)?;
            let g = grid(a, 1.0, 100)?;
            let first = sato_path(&cfg, &g, &mut rng)?;
            eprintln!("truncation bound on E|X - X_eps|: {:e}", first.truncation_bound);
            let comps = sato_compensators(&cfg, &g)?;
            let mut paths = vec![first.path];
            for _ in 1..a.paths {
                paths.push(sato_path_with(&cfg, &g, &comps, &mut rng)?.path);
            }
            emit_paths(a, &format!("Sato, H={}, {p}", cfg.h()), names, paths)
        }
        Process::Mv => {
            let delta = need(a.law.delta, "delta", &what)?;
            let pi = need(a.law.pi, "pi", &what)?;
            let p = MvTplParams::new(&marginals(&a.marginal)?, delta, pi)?;
            let samples = mv_sample(&p, a.t, a.n, &mut rng)?;
            emit_samples(a, "multivariate TPL", p.dim(), &samples)
        }
    }
}

fn scheme(s: SchemeArg) -> OuScheme {
    match s {
        SchemeArg::Exact => OuScheme::Exact,
        SchemeArg::Euler => OuScheme::Euler,
    }
}

fn emit_samples(a: &SimulateArgs, title: &str, d: usize, samples: &[Vec<f64>]) -> Result<()> {
    let chart = svg_path(a)?;
    let mut w = sink(a.out.as_deref())?;
    write_samples_csv(samples, d, &mut w)?;
    w.flush()?;
    if let Some(p) = chart {
        let points: Vec<(f64, f64)> = samples.iter().map(|r| (r[0], r.get(1).copied().unwrap_or(0.0))).collect();
        std::fs::write(&p, svg::scatter(title, "x1", "x2", &points))
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

/// Both OU paths start from the same generator state, so they share their
/// random numbers cell by cell.
fn fig1(a: &SimulateArgs) -> Result<()> {
    let g = grid(a, 1.0, 1000)?;
    let alpha = a.law.alpha.unwrap_or(25.0);
    let mut paths = Vec::new();
    let mut names = Vec::new();
    for gamma in [0.7, 1.0] {
        let tpl = TplParams::new(gamma, 0.5, 20.0, 0.5)?;
        let cfg = OuConfig::new(tpl, alpha, OuStart::Stationary)?;
        paths.push(ou_path(&cfg, &g, scheme(a.scheme), &mut RngState::new(a.seed, 0))?);
        names.push(format!("gamma_{gamma}"));
    }
    emit_paths(a, &format!("Coupled OU paths, alpha={alpha}, delta=20, lambda=theta=0.5"), names, paths)
}

fn fig2(a: &SimulateArgs, rng: &mut RngState) -> Result<()> {
    let out = fig2_scenario(rng)?;
    eprintln!(
        "correlation {:.6}, zero frequency ({:.6}, {:.6}) against zero mass {:.6e}",
        out.correlation, out.zero_frequency[0], out.zero_frequency[1], out.zero_mass
    );
    emit_samples(a, "Bivariate TPL, gamma=-2.2, lambda=10, theta=0.5, delta=1, pi=0.01", 2, &out.samples)
}

pub fn verify(a: &VerifyArgs) -> Result<u8> {
    let base =
        if a.quick { SuiteConfig::quick(a.seed) } else { SuiteConfig { seed: a.seed, ..SuiteConfig::default() } };
    let cfg = SuiteConfig { n: a.n.unwrap_or(base.n), planted_defect: a.planted_defect, ..base };
    if cfg.n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let outcome = run_suite(&cfg)?;
    let mut w = sink(a.out.as_deref())?;
    writeln!(w, "name\tstatistic\ttarget\ttol\tn\tpass\tseed\tk")?;
    for line in outcome.lines() {
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    let failed = outcome.reports.iter().filter(|r| !r.pass).count();
    let accepted = outcome.controls.iter().filter(|r| r.pass).count();
    eprintln!(
        "{} checks, {failed} failed; {} controls, {accepted} wrongly accepted",
        outcome.reports.len(),
        outcome.controls.len()
    );
    Ok(outcome.exit_code() as u8)
}
