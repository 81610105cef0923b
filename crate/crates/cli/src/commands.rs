// SPDX-License-Identifier: Apache-2.0

use std::fs;

use permlab::gmf::{self, MatrixFunctionValue};
use permlab::harness::{
    corpus, corpus_entry, expected_verdict, random_search, run_campaign, verify_corpus, CampaignSpec, CheckStatus,
    Checker, ConjectureReport, Target, Verdict,
};
use permlab::matrices::{eigenvalues, format_f64, MatrixJson, SampleKind, F17};
use permlab::schur_power::{
    bs40_matrix, isotypic_decomposition, pate_c_matrix, schur_power_spectrum, schur_power_top_eigenvalue,
    standard_block_spectrum, IsotypicDecomposition, MAX_ISOTYPIC_ORDER,
};
use permlab::{Error, Spectrum};
use serde::Serialize;

use crate::args::{Cli, Command, CorpusAction, Function, SearchArgs, SpectrumArgs, SpectrumKind, VerifyArgs};
use crate::input::{build_params, corpus_name, load_json, load_matrix, load_psd, parse_character, parse_partition};
use crate::output::{report_line, sig6, Emitter};
use crate::Failure;

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let checker = Checker::new(cli.tol);
    let mut out = Emitter::new(cli.output);
    let result = match &cli.command {
        Command::Compute { function } => compute(function, &mut out),
        Command::Verify(args) => verify(args, &checker, &mut out),
        Command::Search(args) => search(args, &checker, &mut out),
        Command::Corpus { action } => corpus_cmd(action, &mut out),
        Command::Spectrum(args) => spectrum(args, &mut out),
    };
    // Mismatches still print their reports.
    if result.is_ok() || matches!(result, Err(Failure::Mismatch)) {
        out.finish();
    }
    result
}

#[derive(Serialize)]
struct ValueRecord<'a> {
    function: &'a str,
    re: F17,
    im: F17,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

fn value_record<'a>(function: &'a str, v: &MatrixFunctionValue) -> ValueRecord<'a> {
    ValueRecord { function, re: F17(v.value().re), im: F17(v.value().im), exact: v.exact().map(ToString::to_string) }
}

fn compute(function: &Function, out: &mut Emitter) -> Result<(), Failure> {
    if let Function::LiebPoly { b, matrix } = function {
        let poly = gmf::lieb_polynomial(&load_json(matrix)?.to_hermitian()?, *b)?;
        let human: Vec<String> = match poly.exact_coefficients() {
            Some(e) => e.iter().map(ToString::to_string).collect(),
            None => poly.coefficients().iter().map(|&c| format_f64(c)).collect(),
        };
        #[derive(Serialize)]
        struct Poly {
            function: &'static str,
            b: usize,
            coefficients: serde_json::Value,
            imag_residual: F17,
        }
        let record =
            Poly { function: "lieb-poly", b: *b, coefficients: poly.to_json(), imag_residual: F17(poly.imag_residual()) };
        out.record(format!("[{}]", human.join(", ")), &record);
        return Ok(());
    }
    let (name, value) = match function {
        Function::Per { matrix } => ("per", gmf::permanent(&load_matrix(matrix)?)?),
        Function::Det { matrix } => ("det", gmf::determinant(&load_matrix(matrix)?)?),
        Function::H { matrix } => ("h", gmf::diag_product(&load_matrix(matrix)?)?),
        Function::Immanant { partition, matrix } => {
            let lambda = parse_partition(partition)?;
            ("immanant", gmf::immanant(&load_matrix(matrix)?, &lambda)?)
        }
        Function::Gmf { character, matrix } => {
            let m = load_matrix(matrix)?;
            let chi = parse_character(character, m.rows())?;
            ("gmf", gmf::gmf(&m, &chi)?)
        }
        Function::AlphaPer { alpha, matrix } => ("alpha-per", gmf::alpha_permanent(&load_matrix(matrix)?, *alpha)?),
        Function::LiebPoly { .. } => unreachable!("handled above"),
    };
    out.record(value.to_string(), &value_record(name, &value));
    Ok(())
}

fn verdict_name(v: Verdict) -> String {
    format!("{v:?}").to_lowercase()
}

fn verify(args: &VerifyArgs, checker: &Checker, out: &mut Emitter) -> Result<(), Failure> {
    if args.target == "corpus-all" {
        if !args.matrices.is_empty() {
            return Err(Failure::Parse("corpus-all takes no matrices".into()));
        }
        return verify_all(checker, out);
    }
    let target: Target = args.target.parse().map_err(|e: Error| Failure::Parse(e.to_string()))?;
    if args.matrices.is_empty() {
        return campaign(target, args, checker, out);
    }
    let mut mismatch = false;
    for source in &args.matrices {
        let a = load_psd(source)?;
        let params = build_params(&args.params, a.n())?;
        let report = target.check(&a, &params, checker)?;
        let expected = match corpus_name(source)? {
            Some(name) => expected_verdict(name, target.as_str()),
            None => matches!(target, Target::Theorem(_)).then_some(Verdict::Holds),
        };
        let mut line = report_line(source, &report);
        match expected {
            Some(v) if v == report.verdict => line.push_str(" (as expected)"),
            Some(v) => {
                mismatch = true;
                line.push_str(&format!(" MISMATCH: expected {}", verdict_name(v)));
            }
            None => {}
        }
        #[derive(Serialize)]
        struct Record<'a> {
            input: &'a str,
            #[serde(flatten)]
            report: &'a ConjectureReport,
            #[serde(skip_serializing_if = "Option::is_none")]
            expected: Option<Verdict>,
        }
        out.record(line, &Record { input: source, report: &report, expected });
    }
    if mismatch {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn verify_all(checker: &Checker, out: &mut Emitter) -> Result<(), Failure> {
    let results = verify_corpus(checker)?;
    let mut failed = 0;
    let mut flagged = 0;
    for r in &results {
        let mut lines = vec![format!("{}: {}", r.name, if r.passed() { "passed" } else { "FAILED" })];
        for c in &r.checks {
            let tag = match c.status {
                CheckStatus::Matched => "matched",
                CheckStatus::Mismatch => "MISMATCH",
                CheckStatus::Flagged => "FLAGGED",
            };
            lines.push(format!("  [{tag}] {}: {} (expected {})", c.quantity, c.observed, c.expected));
            flagged += usize::from(c.status == CheckStatus::Flagged);
        }
        failed += usize::from(!r.passed());
        out.record(lines.join("\n"), r);
    }
    let summary = if failed == 0 {
        format!("{} entries, all published values matched ({flagged} flagged)", results.len())
    } else {
        format!("{} entries, {failed} with mismatches", results.len())
    };
    out.note(summary);
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn campaign(target: Target, args: &VerifyArgs, checker: &Checker, out: &mut Emitter) -> Result<(), Failure> {
    let seed = args.seed.ok_or_else(|| Failure::Parse("a random campaign needs --seed".into()))?;
    let n = args.n.ok_or_else(|| Failure::Parse("a random campaign needs --n".into()))?;
    let mut spec = CampaignSpec::new(target, n, seed, args.trials).with_params(build_params(&args.params, n)?);
    if let Some(rank) = args.rank {
        spec = spec.with_rank(rank);
    }
    let summary = run_campaign(&spec, checker)?;
    if out.format() == crate::args::OutputFormat::JsonLines {
        for r in &summary.reports {
            out.record(String::new(), r);
        }
    }
    let worst = summary
        .worst()
        .map(|r| format!("; smallest margin {} at sample {}", sig6(r.margin), summary.worst_index.unwrap_or(0)))
        .unwrap_or_default();
    #[derive(Serialize)]
    struct Summary<'a> {
        #[serde(flatten)]
        summary: &'a permlab::harness::CampaignSummary,
        #[serde(skip_serializing_if = "Option::is_none")]
        worst: Option<&'a ConjectureReport>,
    }
    out.record(
        format!(
            "{target} n={n} seed={seed} trials={}: {} violations ({} holds, {} degenerate){worst}",
            summary.trials, summary.violated, summary.holds, summary.degenerate
        ),
        &Summary { summary: &summary, worst: summary.worst() },
    );
    if let Some((i, r)) = summary.first_violation() {
        out.note(report_line(&format!("sample {i}"), r));
    }
    if matches!(target, Target::Theorem(_)) && summary.violated > 0 {
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn search(args: &SearchArgs, checker: &Checker, out: &mut Emitter) -> Result<(), Failure> {
    let target: Target = args.target.parse().map_err(|e: Error| Failure::Parse(e.to_string()))?;
    if !matches!(target, Target::Conjecture(_)) {
        return Err(Failure::Precondition(Error::InvalidInput(format!("{target} is a theorem; search takes a conjecture"))));
    }
    let mut spec = CampaignSpec::new(target, args.n, args.seed, 0).with_params(build_params(&args.params, args.n)?);
    if let Some(rank) = args.rank {
        spec = spec.with_rank(rank);
    }
    if args.real {
        spec = spec.with_kind(SampleKind::RealPsd);
    }
    let outcome = random_search(&spec, args.budget, checker)?;
    #[derive(Serialize)]
    struct LogLine<'a> {
        sample: usize,
        #[serde(flatten)]
        report: &'a ConjectureReport,
    }
    let log: Vec<String> = outcome
        .improvements
        .iter()
        .map(|(i, r)| serde_json::to_string(&LogLine { sample: *i, report: r }).expect("serializable"))
        .collect();
    match &args.log {
        Some(path) => {
            let mut text = log.join("\n");
            text.push('\n');
            fs::write(path, text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
        }
        None => {
            for (i, r) in &outcome.improvements {
                out.record(report_line(&format!("sample {i} (new best)"), r), &LogLine { sample: *i, report: r });
            }
        }
    }
    #[derive(Serialize)]
    struct Summary<'a> {
        target: &'a str,
        evaluated: usize,
        violation_sample: Option<usize>,
        witness: Option<String>,
    }
    let mut summary =
        Summary { target: target.as_str(), evaluated: outcome.evaluated, violation_sample: None, witness: None };
    let line = match &outcome.violation {
        Some((i, r, a)) => {
            fs::write(&args.witness, MatrixJson::from_psd(a).to_json() + "\n")
                .map_err(|e| Failure::Parse(format!("{}: {e}", args.witness.display())))?;
            summary.violation_sample = Some(*i);
            summary.witness = Some(args.witness.display().to_string());
            format!("{}; witness written to {}", report_line(&format!("sample {i}"), r), args.witness.display())
        }
        None => format!("{target}: no violation in {} samples", outcome.evaluated),
    };
    out.record(line, &summary);
    Ok(())
}

fn corpus_cmd(action: &CorpusAction, out: &mut Emitter) -> Result<(), Failure> {
    match action {
        CorpusAction::List => {
            #[derive(Serialize)]
            struct Entry<'a> {
                name: &'a str,
                n: usize,
                description: &'a str,
                published: Vec<[&'a str; 2]>,
            }
            for e in corpus() {
                let n = e.matrix_json().n;
                let published = e.published.iter().map(|(q, v)| [*q, *v]).collect();
                out.record(
                    format!("{:<18} n={n:<3} {}", e.name, e.description),
                    &Entry { name: e.name, n, description: e.description, published },
                );
            }
        }
        CorpusAction::Show { name } => {
            let e = corpus_entry(name).ok_or_else(|| Failure::Parse(format!("unknown corpus entry '{name}'")))?;
            out.record(e.json().trim_end().to_string(), &e.matrix_json());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Cluster {
    value: F17,
    multiplicity: usize,
}

fn clusters(s: &Spectrum) -> Vec<Cluster> {
    s.clusters().map(|(value, multiplicity)| Cluster { value: F17(value), multiplicity }).collect()
}

fn spectrum(args: &SpectrumArgs, out: &mut Emitter) -> Result<(), Failure> {
    let a = load_psd(&args.matrix)?;
    let h = a.hermitian();
    let per = gmf::permanent(a.matrix())?.re();
    let mut isotypic: Option<IsotypicDecomposition> = None;
    let mut standard_block: Option<Vec<Cluster>> = None;
    let (label, spectrum, top) = match args.of {
        SpectrumKind::Pi if a.n() <= MAX_ISOTYPIC_ORDER => {
            isotypic = Some(isotypic_decomposition(h)?);
            let s = schur_power_spectrum(h, args.cluster_tol)?;
            let top = s.max();
            ("pi(A)".to_string(), Some(s), top)
        }
        SpectrumKind::Pi => {
            standard_block = Some(clusters(&standard_block_spectrum(h, args.cluster_tol)?));
            ("pi(A)".to_string(), None, Some(schur_power_top_eigenvalue(h)?))
        }
        SpectrumKind::Ck => {
            let k = args.k.ok_or_else(|| Failure::Parse("--of ck needs --k".into()))?;
            let s = eigenvalues(&pate_c_matrix(h, k)?, args.cluster_tol)?;
            let top = s.max();
            (format!("C_{k}(A)"), Some(s), top)
        }
        SpectrumKind::Bs40 => {
            let s = eigenvalues(&bs40_matrix(h)?, args.cluster_tol)?;
            let top = s.max();
            ("[a_ij per A(i|j)]".to_string(), Some(s), top)
        }
    };
    let mut lines = vec![format!("{label}: per A = {}, largest eigenvalue = {}", sig6(per), top.map_or("-".into(), sig6))];
    if let Some(s) = &spectrum {
        let parts: Vec<String> = s.clusters().map(|(v, m)| format!("{}^{m}", sig6(v))).collect();
        lines.push(format!("spectrum: {}", parts.join(" ")));
    }
    if let Some(d) = &isotypic {
        for b in &d.blocks {
            lines.push(format!(
                "  {:<14} dim {:<4} top {}{}",
                b.partition.to_string(),
                b.dimension,
                sig6(b.top()),
                if b.exceeds_per { "  > per A" } else { "" }
            ));
        }
    }
    if let Some(b) = &standard_block {
        let parts: Vec<String> = b.iter().map(|c| format!("{}^{}", sig6(c.value.0), c.multiplicity)).collect();
        lines.push(format!("(n-1,1) block (one copy per eigenvalue): {}", parts.join(" ")));
    }
    #[derive(Serialize)]
    struct Record {
        of: String,
        n: usize,
        #[serde(rename = "per_A")]
        per_a: F17,
        top: Option<F17>,
        #[serde(skip_serializing_if = "Option::is_none")]
        clusters: Option<Vec<Cluster>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        isotypic: Option<IsotypicDecomposition>,
        #[serde(skip_serializing_if = "Option::is_none")]
        standard_block: Option<Vec<Cluster>>,
    }
    let record = Record {
        of: label,
        n: a.n(),
        per_a: F17(per),
        top: top.map(F17),
        clusters: spectrum.as_ref().map(clusters),
        isotypic,
        standard_block,
    };
    out.record(lines.join("\n"), &record);
    Ok(())
}
