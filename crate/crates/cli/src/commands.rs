use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use qwalk_core::butterfly::{format_real, sweep_with_tolerance, symmetry_audit};
use qwalk_core::spectral::{
    build_cw_matrix, eigenpairs, principal_arg, Property, SymmetrySuite, Tolerances,
};
use qwalk_core::walk::{confinement_predict, default_spinor, Param, Walk};
use qwalk_core::{AlphaPQ, Distribution, StepOrder, WalkParams, WalkerState};
use rayon::prelude::*;

use crate::parse::{parse_param, parse_spinor};
use crate::plot::gnuplot_script;
use crate::{ButterflyArgs, Failure, OrderArg, SpectrumArgs, VerifyArgs, WalkArgs};

type CmdResult = Result<(), Failure>;

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::Io(format!("cannot write {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Computation(format!("thread pool: {e}")))
}

fn describe(p: &Param) -> String {
    match p {
        Param::Exact(f) => f.to_string(),
        Param::Approx(x) => format!("{x}"),
    }
}

fn complex(z: Complex64) -> String {
    format!("({},{})", z.re, z.im)
}

struct WalkRun {
    theta: Param,
    state: WalkerState,
    dist: Distribution,
    norm_dev: f64,
    support: String,
    prediction: String,
}

fn interval(iv: Option<(i64, i64)>, none: &str) -> String {
    match iv {
        Some((lo, hi)) => format!("[{lo},{hi}]"),
        None => none.to_string(),
    }
}

fn run_walk(
    alpha: Param,
    theta: Param,
    order: StepOrder,
    init: [Complex64; 2],
    steps: u64,
    eps: f64,
) -> Result<WalkRun, Failure> {
    let params = WalkParams::new(alpha, theta).with_order(order);
    let mut walk = Walk::new(params, WalkerState::at_origin(init));
    walk.advance_by(steps)?;
    let state = walk.into_state();
    let dist = state.distribution();
    let prediction = match (alpha, theta) {
        (Param::Exact(a), Param::Exact(t)) => {
            interval(confinement_predict(a, t, 0)?.interval(), "unbounded")
        }
        _ => "n/a".to_string(),
    };
    Ok(WalkRun {
        theta,
        norm_dev: (state.norm_sqr() - 1.0).abs(),
        support: interval(dist.support(eps), "empty"),
        state,
        dist,
        prediction,
    })
}

pub fn walk(args: &WalkArgs) -> CmdResult {
    if args.steps < 0 {
        return Err(Failure::Validation(format!(
            "steps must be nonnegative, got {}",
            args.steps
        )));
    }
    if !(args.support_eps > 0.0) {
        return Err(Failure::Validation("support-eps must be positive".into()));
    }
    let alpha = parse_param(&args.alpha).map_err(Failure::Validation)?;
    let thetas = args
        .theta
        .split(',')
        .map(parse_param)
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::Validation)?;
    let order = match args.ordering {
        OrderArg::Wc => StepOrder::WC,
        OrderArg::Cw => StepOrder::CW,
    };
    let init = match &args.init {
        Some(s) => {
            let spinor = parse_spinor(s).map_err(Failure::Validation)?;
            if let Some(dev) = spinor.renormalized_from {
                eprintln!("warning: initial spinor norm off by {dev:e}; renormalized");
            }
            spinor.value
        }
        None => default_spinor(),
    };

    let runs = thetas
        .par_iter()
        .map(|&theta| run_walk(alpha, theta, order, init, args.steps as u64, args.support_eps))
        .collect::<Result<Vec<_>, _>>()?;
    let mode = |theta: Param| {
        if WalkParams::new(alpha, theta).is_exact() {
            "exact"
        } else {
            "approximate"
        }
    };
    let multi = runs.len() > 1;
    let prefix = |run: &WalkRun| {
        if multi {
            format!("{},", describe(&run.theta))
        } else {
            String::new()
        }
    };

    let mut out = open_output(args.output.as_deref())?;
    writeln!(
        out,
        "# alpha={} ordering={:?} steps={}",
        describe(&alpha),
        order,
        args.steps
    )?;
    writeln!(out, "# initial={}{}", complex(init[0]), complex(init[1]))?;
    writeln!(out, "# support_eps={:e}", args.support_eps)?;
    for run in &runs {
        writeln!(
            out,
            "# theta={} mode={} norm_deviation={:e} support={} second_moment={} reflector_interval={}",
            describe(&run.theta),
            mode(run.theta),
            run.norm_dev,
            run.support,
            format_real(run.dist.moment(2)),
            run.prediction
        )?;
    }
    writeln!(out, "{}n,prob", if multi { "theta," } else { "" })?;
    for run in &runs {
        let pre = prefix(run);
        for (n, p) in run.dist.iter() {
            writeln!(out, "{pre}{n},{}", format_real(p))?;
        }
    }
    out.flush()?;

    if let Some(path) = &args.amplitudes {
        let mut amp = open_output(Some(path))?;
        writeln!(amp, "{}n,reL,imL,reR,imR", if multi { "theta," } else { "" })?;
        for run in &runs {
            let pre = prefix(run);
            for (n, v) in run.state.sites() {
                writeln!(
                    amp,
                    "{pre}{n},{},{},{},{}",
                    format_real(v[0].re),
                    format_real(v[0].im),
                    format_real(v[1].re),
                    format_real(v[1].im)
                )?;
            }
        }
        amp.flush()?;
    }

    for run in &runs {
        eprintln!(
            "summary: alpha={} theta={} mode={} steps={} norm_deviation={:e} support={} second_moment={:e} reflector_interval={}",
            describe(&alpha),
            describe(&run.theta),
            mode(run.theta),
            args.steps,
            run.norm_dev,
            run.support,
            run.dist.moment(2),
            run.prediction
        );
    }
    Ok(())
}

pub fn spectrum(args: &SpectrumArgs) -> CmdResult {
    let alpha = AlphaPQ::parse_literal(&args.alpha)?;
    let block = build_cw_matrix(alpha)?;
    let sys = eigenpairs(&block)?;
    let rec = &sys.record;
    if !(rec.max_residual() <= args.residual_tol) {
        return Err(Failure::Computation(format!(
            "alpha={alpha}: residual {:e} exceeds {:e}",
            rec.max_residual(),
            args.residual_tol
        )));
    }

    let mut out = open_output(args.output.as_deref())?;
    writeln!(out, "# alpha={alpha} P={} Q={} theta=0 ordering=CW", alpha.p(), alpha.q())?;
    writeln!(
        out,
        "# residual_tol={:e} max_residual={:e} max_modulus_deviation={:e} unitarity_deviation={:e} min_gap={:e}",
        args.residual_tol,
        rec.max_residual(),
        rec.max_modulus_deviation(),
        block.matrix().unitarity_deviation(),
        rec.min_gap
    )?;
    writeln!(out, "index,re,im,arg,residual")?;
    for (k, (z, r)) in rec.eigenvalues.iter().zip(&rec.residuals).enumerate() {
        writeln!(
            out,
            "{k},{},{},{},{}",
            format_real(z.re),
            format_real(z.im),
            format_real(principal_arg(*z)),
            format_real(*r)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn faulty_suite(tol: Tolerances, target: AlphaPQ) -> SymmetrySuite {
    SymmetrySuite::new(tol).with_builder(move |alpha| {
        let block = build_cw_matrix(alpha)?;
        if alpha != target {
            return Ok(block);
        }
        // rotate the phase of the left boundary entry
        let mut m = block.matrix().clone();
        let col = block
            .index_of(-alpha.q() + 1, qwalk_core::walk::Chirality::L)
            .expect("interior site");
        m[(0, col)] *= Complex64::from_polar(1.0, 0.3);
        Ok(block.with_matrix(m))
    })
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    if args.qmax < 1 {
        return Err(Failure::Validation(format!("qmax must be at least 1, got {}", args.qmax)));
    }
    let tol = Tolerances {
        residual: args.tol.residual_tol,
        multiset: args.tol.match_tol,
        gap: args.tol.gap_tol,
        unitarity: args.tol.unitarity_tol,
        similarity: args.tol.unitarity_tol,
    };
    let suite = match &args.inject_fault {
        Some(s) => faulty_suite(tol, AlphaPQ::parse_literal(s)?),
        None => SymmetrySuite::new(tol),
    };
    let alphas = qwalk_core::butterfly::enumerate_alphas(args.qmax);
    let report = thread_pool(args.threads)?.install(|| suite.run(&alphas))?;

    let mut out = io::stdout().lock();
    writeln!(
        out,
        "symmetry verification: {} fractions with Q <= {}, theta = 0",
        alphas.len(),
        args.qmax
    )?;
    writeln!(
        out,
        "tolerances: residual {:e}, match {:e}, gap {:e}, unitarity {:e}",
        tol.residual, tol.multiset, tol.gap, tol.unitarity
    )?;
    writeln!(out)?;
    for r in &report.reports {
        let show = args.verbose || !r.passed || r.property == Property::P6;
        if !show {
            continue;
        }
        if r.property == Property::P6 {
            let status = if r.passed { "pass" } else { "FAIL" };
            writeln!(
                out,
                "{status} P6: spectrum({}) = i * spectrum({}) (max distance {:.3e})",
                r.alpha.half_shifted(),
                r.alpha,
                r.worst
            )?;
        } else {
            writeln!(out, "{r}")?;
        }
    }
    writeln!(out)?;
    for s in report.summary() {
        writeln!(
            out,
            "{:<14} {:<42} {:>5}/{:<5} worst {:.3e}",
            s.property.to_string(),
            s.property.describe(),
            s.passed,
            s.checked,
            s.worst
        )?;
    }
    writeln!(out)?;
    writeln!(out, "property,checked,passed,worst")?;
    for s in report.summary() {
        writeln!(out, "{},{},{},{:e}", s.property, s.checked, s.passed, s.worst)?;
    }
    out.flush()?;

    if report.all_passed() {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .summary()
            .iter()
            .filter(|s| s.passed < s.checked)
            .map(|s| s.property.to_string())
            .collect();
        Err(Failure::Verification(format!("failed properties: {}", failed.join(", "))))
    }
}

pub fn butterfly(args: &ButterflyArgs) -> CmdResult {
    let ds = thread_pool(args.threads)?.install(|| sweep_with_tolerance(args.qmax, args.tolerance))?;
    let mut out = open_output(args.output.as_deref())?;
    ds.write_csv(&mut out)?;
    out.flush()?;

    if let Some(path) = &args.plot_script {
        let data = args
            .output
            .as_deref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "butterfly.csv".to_string());
        let image = Path::new(&data).with_extension("png").display().to_string();
        std::fs::write(path, gnuplot_script(&data, &image))
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
    }

    let audit = symmetry_audit(&ds, args.tolerance);
    eprintln!(
        "summary: fractions={} rows={} max_residual={:e} audit={}",
        ds.fraction_count,
        ds.rows.len(),
        ds.max_residual,
        if audit.all_passed() { "pass" } else { "FAIL" }
    );
    for r in audit.results.iter().filter(|r| !r.passed()) {
        eprintln!("audit {} failed for (P,Q) = {:?}", r.check, r.failures);
    }
    if audit.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification("dataset symmetry audit failed".into()))
    }
}
