//! Subcommand dispatch. Returns the process exit code: 0 pass, 1 when a
//! verification or sweep reports a failure (usage errors surface as `Err`
//! and exit 2 in `main`).

use std::fs;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use vilenkin_core::hardy::{
    atom_maximal_integral, build_counterexample, divergence_ratio, random_atom,
};
use vilenkin_core::kernels::{
    self, verify_dirichlet_block, verify_fejer_closed_form, verify_fejer_domination,
    verify_fejer_l1, verify_fejer_lower_bound, verify_partition, verify_shift_identity,
    KernelReport, Statement,
};
use vilenkin_core::means::maximal;
use vilenkin_core::transform::DEFAULT_TOLERANCE;
use vilenkin_core::{parse_radices, GroupSpec, Transform};

use crate::cli::{
    AtomTestArgs, Cli, Command, DivergenceArgs, KernelArgs, KernelKind, MaximalArgs, TransformArgs,
    VerifyArgs,
};
use crate::io;

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Transform(args) => run_transform(args),
        Command::Kernel(args) => run_kernel(args),
        Command::Verify(args) => run_verify(args),
        Command::Maximal(args) => run_maximal(args),
        Command::AtomTest(args) => run_atom_test(args),
        Command::Divergence(args) => run_divergence(args),
    }
}

fn spec_from(m: &str, resolution: usize) -> Result<Arc<GroupSpec>> {
    let radices = parse_radices(m)?;
    Ok(Arc::new(GroupSpec::new(&radices, resolution)?))
}

fn run_transform(args: TransformArgs) -> Result<u8> {
    let spec = spec_from(&args.m, args.resolution)?;
    let transform = Transform::new(spec.clone());
    if args.inverse {
        let spectrum = io::read_spectrum(&args.input, &spec)?;
        let function = transform.inverse(&spectrum);
        io::write_group_function(&args.output, &function)?;
        eprintln!("synthesized {} points on {spec}", spec.point_count());
    } else {
        let function = io::read_group_function(&args.input, &spec)?;
        let spectrum = transform.forward(&function);
        io::write_spectrum(&args.output, &spectrum)?;
        eprintln!("analyzed {} coefficients on {spec}", spec.point_count());
    }
    Ok(0)
}

fn run_kernel(args: KernelArgs) -> Result<u8> {
    let spec = spec_from(&args.m, args.resolution)?;
    let transform = Transform::new(spec.clone());
    let kernel = match args.kind {
        KernelKind::Dirichlet => kernels::dirichlet(&transform, args.n)?,
        KernelKind::Fejer => kernels::fejer(&transform, args.n)?,
    };
    io::write_group_function(&args.output, &kernel)?;
    eprintln!("wrote order-{} kernel on {spec}", args.n);
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<u8> {
    let statement = Statement::from_id(&args.statement).with_context(|| {
        format!(
            "unknown statement {:?}; expected eq3|eq4|eq5|lemma2|lemma3|lemma4|shift|partition",
            args.statement
        )
    })?;
    let need_resolution = || {
        args.resolution
            .context("--N is required for this statement")
    };
    let reports: Vec<KernelReport> = match statement {
        Statement::DirichletBlock => {
            let spec = spec_from(&args.m, need_resolution()?)?;
            vec![verify_dirichlet_block(&spec)]
        }
        Statement::FejerL1 => {
            let spec = spec_from(&args.m, need_resolution()?)?;
            let transform = Transform::new(spec.clone());
            let n_max = args.n_max.unwrap_or(spec.point_count());
            vec![verify_fejer_l1(&transform, n_max)?]
        }
        Statement::FejerDomination => {
            let spec = spec_from(&args.m, need_resolution()?)?;
            let transform = Transform::new(spec.clone());
            match args.n {
                Some(n) => vec![verify_fejer_domination(&transform, n)?],
                None => {
                    // Orders sampled from [M_1, M_N]; below M_1 the
                    // dominating sum degenerates to the zero kernel.
                    let samples = args.samples.unwrap_or(50);
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed.unwrap_or(2024));
                    (0..samples)
                        .map(|_| {
                            let n = rng.gen_range(spec.order(1)..=spec.point_count());
                            verify_fejer_domination(&transform, n)
                        })
                        .collect::<Result<_, _>>()?
                }
            }
        }
        Statement::FejerLowerBound => {
            let a = args.a.context("--A is required for lemma2")?;
            let resolution = args.resolution.unwrap_or(2 * a);
            let spec = spec_from(&args.m, resolution)?;
            let transform = Transform::new(spec.clone());
            vec![verify_fejer_lower_bound(&transform, a)?]
        }
        Statement::FejerClosedForm => {
            let spec = spec_from(&args.m, need_resolution()?)?;
            let transform = Transform::new(spec.clone());
            vec![verify_fejer_closed_form(&transform)?]
        }
        Statement::TailIntegral => {
            let depth = args
                .resolution
                .context("--N (inner coset depth) is required")?;
            let embed = args.embed.unwrap_or(depth + 2);
            let spec = spec_from(&args.m, embed)?;
            let transform = Transform::new(spec.clone());
            let n = args.n.unwrap_or(spec.order(depth));
            let pairs: Vec<(usize, usize)> = match (args.k, args.l) {
                (Some(k), Some(l)) => vec![(k, l)],
                (None, None) => (0..depth)
                    .flat_map(|k| ((k + 1)..=depth).map(move |l| (k, l)))
                    .collect(),
                _ => bail!("give both --k and --l, or neither for the full grid"),
            };
            pairs
                .into_iter()
                .map(|(k, l)| verify_tail(&transform, depth, n, k, l))
                .collect::<Result<_>>()?
        }
        Statement::DirichletShift => {
            let spec = spec_from(&args.m, need_resolution()?)?;
            let scales: Vec<usize> = match args.t {
                Some(t) => vec![t],
                None => {
                    let all: Vec<usize> = (1..).take_while(|t| 2 * t < spec.resolution()).collect();
                    if all.is_empty() {
                        bail!(
                            "resolution {} leaves no admissible shift scale",
                            spec.resolution()
                        );
                    }
                    all
                }
            };
            scales
                .into_iter()
                .map(|t| Ok(verify_shift_identity(&spec, t)?))
                .collect::<Result<_>>()?
        }
        Statement::CosetPartition => {
            let resolution = need_resolution()?;
            let spec = spec_from(&args.m, resolution)?;
            vec![verify_partition(&spec, resolution)?]
        }
    };

    for report in &reports {
        eprintln!("{}", report.summary());
    }
    let json = serde_json::to_string_pretty(&reports)?;
    println!("{json}");
    if let Some(path) = &args.output {
        fs::write(path, format!("{json}\n"))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn verify_tail(
    transform: &Transform,
    depth: usize,
    n: u64,
    k: usize,
    l: usize,
) -> Result<KernelReport> {
    Ok(kernels::verify_tail_integral(transform, depth, n, k, l)?)
}

fn run_maximal(args: MaximalArgs) -> Result<u8> {
    let spec = spec_from(&args.m, args.resolution)?;
    let transform = Transform::new(spec.clone());
    let function = io::read_group_function(&args.input, &spec)?;
    let weight = io::parse_weight(&args.weight)?;
    let n_max = args.n_max.unwrap_or(spec.point_count());
    let field = maximal(&transform, &function, &weight, n_max)?;
    io::write_maximal_field(&args.output, &field)?;
    eprintln!(
        "maximal field on {spec}: sup={:.6e} tail_bound={:.6e} n_max={}",
        field.sup(),
        field.tail_bound(),
        field.n_max()
    );
    Ok(0)
}

fn run_atom_test(args: AtomTestArgs) -> Result<u8> {
    let depth = args.resolution;
    let embed = args.embed.unwrap_or(depth + 2);
    if embed <= depth {
        bail!("embedding resolution {embed} must exceed the support depth {depth}");
    }
    let spec = spec_from(&args.m, embed)?;
    let transform = Transform::new(spec.clone());
    let weight = io::parse_weight(&args.weight)?;
    let rows: Vec<io::AtomRow> = (0..args.samples as u64)
        .into_par_iter()
        .map(|sample| {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            rng.set_stream(sample);
            let atom = random_atom(&transform, depth, 0.5, &mut rng)?;
            let bracket = atom_maximal_integral(&transform, &atom, &weight)?;
            Ok(io::AtomRow {
                sample,
                integral_lo: bracket.lo,
                integral_hi: bracket.hi,
            })
        })
        .collect::<Result<_>>()?;
    io::write_atom_table(&args.output, &rows)?;
    let max_hi = rows.iter().map(|r| r.integral_hi).fold(0.0, f64::max);
    let all_finite = rows
        .iter()
        .all(|r| r.integral_lo.is_finite() && r.integral_hi.is_finite());
    eprintln!(
        "{} atoms at depth {depth} embedded at {embed}: max integral bracket hi={max_hi:.6} ({})",
        rows.len(),
        if all_finite {
            "all finite"
        } else {
            "NON-FINITE VALUES"
        },
    );
    Ok(if all_finite { 0 } else { 1 })
}

fn run_divergence(args: DivergenceArgs) -> Result<u8> {
    let (start, end) = io::parse_index_range(&args.nk_range)?;
    let radices = parse_radices(&args.m)?;
    let weight = io::parse_weight(&args.weight)?;
    let reports: Vec<_> = (start..=end)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|index| {
            let resolution = 2 * index + 1;
            let spec = Arc::new(GroupSpec::new(&radices, resolution)?);
            let transform = Transform::new(spec.clone());
            let counterexample = build_counterexample(&transform, index)?;
            Ok(divergence_ratio(&transform, &counterexample, &weight)?)
        })
        .collect::<Result<_>>()?;
    io::write_divergence_table(&args.output, &reports)?;
    let mut ok = true;
    for r in &reports {
        let route_ok = r.route_deviation <= DEFAULT_TOLERANCE;
        ok &= route_ok && r.ratio.is_finite();
        eprintln!(
            "n_k={} q={} ratio={:.6} route_deviation={:.2e}{}",
            r.index,
            r.q,
            r.ratio,
            r.route_deviation,
            if route_ok { "" } else { " ROUTE MISMATCH" },
        );
    }
    Ok(if ok { 0 } else { 1 })
}
