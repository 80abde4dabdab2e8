use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use cover_growth::covers::{cover_betti, cyclic_quotient, parse_quotient_spec, rewrite};
use cover_growth::growth::{
    betti_of_cyclic_cover, classify, growth_table_with, knot_criterion, torsion_diagnostic, GrowthClassification,
    GrowthKind,
};
use cover_growth::laurent::LaurentPoly;
use cover_growth::library;
use cover_growth::linalg::{ModuleDecomposition, RingMatrix, SmithOptions};
use cover_growth::presentation::{alexander_complex, infinite_cyclic_homology_with, PresentationFile, ZMap};
use cover_growth::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command, CoverArgs};
use crate::report::{
    AnalyzeReport, ClassifyReport, CoverReport, Growth, GrowthReport, KnotReport, Matrices, Report, Row, Witness,
};

/// Largest `n` drawn for the seeded spot check of `classify --verify`.
const SPOT_CHECK_MAX_N: u64 = 12;

pub fn run(cli: &Cli) -> Result<Report> {
    let opts = match cli.max_degree {
        Some(cap) => SmithOptions::default().with_degree_cap(cap),
        None => SmithOptions::default(),
    };
    match &cli.command {
        Command::Analyze(input) => analyze(&load(&input.input)?, &input.input, cli.dump_matrices, &opts),
        Command::Growth { input, max_n, verify } => growth(&load(&input.input)?, &input.input, *max_n, *verify, &opts),
        Command::Classify { input, verify } => {
            let seed = verify.then(|| cli.seed());
            classify_cmd(&load(&input.input)?, &input.input, seed, &opts)
        }
        Command::Cover(args) => cover(args),
        Command::Knot { delta } => knot(delta),
    }
}

fn load(input: &str) -> Result<PresentationFile> {
    log::info!("loading {input}");
    library::load(input).with_context(|| format!("reading {input}"))
}

fn display_name(file: &PresentationFile, input: &str) -> String {
    file.name.clone().unwrap_or_else(|| input.to_string())
}

fn require_map(file: &PresentationFile) -> Result<&ZMap> {
    match &file.map {
        Some(m) => Ok(m),
        None => bail!("the presentation has no `map` line; a map to Z is required"),
    }
}

fn module_of(file: &PresentationFile, opts: &SmithOptions) -> Result<ModuleDecomposition> {
    Ok(infinite_cyclic_homology_with(&file.presentation, require_map(file)?, opts)?)
}

fn growth_summary(c: &GrowthClassification) -> (Growth, Vec<Witness>) {
    let growth = match c.kind {
        GrowthKind::Linear { rate } => Growth::Linear { rate },
        GrowthKind::Bounded { max, period } => Growth::Bounded { max, period },
    };
    let witnesses = c
        .witnesses
        .iter()
        .map(|w| Witness {
            factor: w.factor.to_string(),
            cyclotomic_orders: w.cyclotomic_orders.iter().copied().collect(),
        })
        .collect();
    (growth, witnesses)
}

fn strings(m: &RingMatrix<LaurentPoly>) -> Vec<Vec<String>> {
    m.map(|x| x.to_string())
}

fn analyze(file: &PresentationFile, input: &str, dump: bool, opts: &SmithOptions) -> Result<Report> {
    let p = &file.presentation;
    let psi = require_map(file)?;
    let ab = p.abelianization()?;
    let dec = module_of(file, opts)?;
    let flagged = file.is_closed_3manifold_beta1_2();
    let diag = torsion_diagnostic(&dec, flagged);
    let (growth, witnesses) = growth_summary(&classify(&dec));
    let map = p
        .generators()
        .iter()
        .zip(psi.values())
        .map(|(g, v)| format!("{g}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let matrices = if dump {
        let c = alexander_complex(p, psi)?;
        Some(Matrices {
            d1: strings(&c.d1),
            d2: strings(&c.d2),
        })
    } else {
        None
    };
    let mut warnings = file.warnings.clone();
    warnings.extend(diag.warning);
    Ok(Report::Analyze(AnalyzeReport {
        name: display_name(file, input),
        generators: p.generator_count(),
        relators: p.relator_count(),
        map,
        betti: ab.betti,
        torsion: ab.torsion.iter().map(|d| d.to_string()).collect(),
        abelianization: ab.to_string(),
        module: dec.to_string(),
        rank: dec.rank,
        torsion_factors: dec.torsion_factors.iter().map(|p| p.to_string()).collect(),
        n: diag.n,
        flagged,
        equivalence_holds: (dec.rank > 0) == (diag.n == 0),
        growth,
        witnesses,
        warnings,
        matrices,
    }))
}

fn growth(file: &PresentationFile, input: &str, max_n: u64, verify: bool, opts: &SmithOptions) -> Result<Report> {
    let psi = require_map(file)?;
    let dec = module_of(file, opts)?;
    let rows = growth_table_with(&file.presentation, psi, max_n, verify, opts)?
        .into_iter()
        .map(|r| Row {
            n: r.n,
            betti_formula: r.betti_formula,
            betti_oracle: r.betti_oracle,
        })
        .collect();
    Ok(Report::Growth(GrowthReport {
        name: display_name(file, input),
        module: dec.to_string(),
        verified: verify,
        rows,
        warnings: file.warnings.clone(),
    }))
}

/// `n = 1`, the period (or 2 for linear growth), and one seeded draw.
fn spot_check_ns(kind: &GrowthKind, seed: u64) -> BTreeSet<u64> {
    let characteristic = match kind {
        GrowthKind::Linear { .. } => 2,
        GrowthKind::Bounded { period, .. } => *period,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BTreeSet::from([1, characteristic, rng.gen_range(2..=SPOT_CHECK_MAX_N)])
}

fn classify_cmd(file: &PresentationFile, input: &str, seed: Option<u64>, opts: &SmithOptions) -> Result<Report> {
    let psi = require_map(file)?;
    let dec = module_of(file, opts)?;
    let c = classify(&dec);
    let mut checks = Vec::new();
    if let Some(seed) = seed {
        for n in spot_check_ns(&c.kind, seed) {
            let formula = betti_of_cyclic_cover(&dec, n)?;
            let oracle = cover_betti(&file.presentation, &cyclic_quotient(&psi.primitive(), n)?)?.betti as u64;
            if formula != oracle {
                return Err(Error::OracleMismatch {
                    n,
                    formula,
                    oracle,
                    details: format!("module: {dec}"),
                }
                .into());
            }
            checks.push(Row {
                n,
                betti_formula: formula,
                betti_oracle: Some(oracle),
            });
        }
    }
    let (growth, witnesses) = growth_summary(&c);
    Ok(Report::Classify(ClassifyReport {
        name: display_name(file, input),
        module: dec.to_string(),
        growth,
        witnesses,
        seed,
        checks,
        warnings: file.warnings.clone(),
    }))
}

fn cover(args: &CoverArgs) -> Result<Report> {
    let input = &args.input.input;
    let file = load(input)?;
    let p = &file.presentation;
    let (q, suffix) = match (&args.cyclic, &args.abelian) {
        (Some(n), _) => (cyclic_quotient(&require_map(&file)?.primitive(), *n)?, format!("c{n}")),
        (None, Some(spec)) => (parse_quotient_spec(spec, p)?, "ab".to_string()),
        (None, None) => bail!("one of --cyclic or --abelian is required"),
    };
    let r = rewrite(p, &q)?;
    let name = display_name(&file, input);
    let cover_name = format!("{}_{suffix}", name.trim_start_matches('@'));
    let text = r.presentation.to_file_string(Some(&cover_name), None, &[]);
    let ab = r.presentation.abelianization()?;
    let (presentation, output) = match &args.output {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            (None, Some(path.display().to_string()))
        }
        None => (Some(text), None),
    };
    Ok(Report::Cover(CoverReport {
        name,
        quotient: q.to_spec_string(p.generators()),
        order: q.order(),
        generators: r.presentation.generator_count(),
        relators: r.presentation.relator_count(),
        betti: ab.betti,
        abelianization: ab.to_string(),
        presentation,
        output,
    }))
}

fn knot(delta: &str) -> Result<Report> {
    let poly: LaurentPoly = delta.parse().with_context(|| format!("parsing Δ = {delta:?}"))?;
    let (canonical, _) = poly.canonicalize();
    let k = knot_criterion(&canonical)?;
    Ok(Report::Knot(KnotReport {
        delta: canonical.to_string(),
        grows: k.grows,
        witnesses: k.witnesses,
    }))
}
