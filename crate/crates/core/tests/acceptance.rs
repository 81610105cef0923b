// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Prints one PASS/FAIL line per check, grouped by
//! criterion, and exits non-zero if any check fails. The n = 8 Lanczos run
//! on drury_Z is skipped unless `--include-ignored` (or `--ignored`) is passed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use permlab::gmf::{diag_product, gmf, lieb_polynomial, permanent};
use permlab::harness::{
    check_theorem, corpus_entry, run_campaign, verify_corpus, verify_order, CampaignSpec, CheckStatus, Checker, ConjectureId,
    Params, Target, TheoremId, Verdict,
};
use permlab::matrices::{sample_psd, SampleKind};
use permlab::perms::{partitions, SubgroupKind};
use permlab::schur_power::{
    bs40_matrix, isotypic_decomposition, schur_power_spectrum, schur_power_top_eigenvalue, standard_block_spectrum,
};
use permlab::{CMatrix, CharacterSpec, Complex64, HermitianMatrix, Partition, PsdMatrix};

#[derive(Default)]
struct Gate {
    /// `(criterion, checks, failures)` in first-seen order.
    tally: Vec<(String, usize, usize)>,
}

impl Gate {
    fn line(&mut self, criterion: &str, ok: bool, what: &str, detail: String) {
        if !self.tally.iter().any(|t| t.0 == criterion) {
            self.tally.push((criterion.to_string(), 0, 0));
        }
        let t = self.tally.iter_mut().find(|t| t.0 == criterion).expect("inserted");
        t.1 += 1;
        t.2 += usize::from(!ok);
        println!("{} [{criterion}] {what}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn entry(name: &str) -> PsdMatrix {
    corpus_entry(name).unwrap().psd().unwrap()
}

fn exact_string(m: &CMatrix) -> String {
    permanent(m).unwrap().exact().map(ToString::to_string).unwrap_or_else(|| "float".into())
}

fn criterion_1(g: &mut Gate) {
    let start = Instant::now();
    let w = exact_string(entry("shchesnovich_W").matrix());
    g.line("1", w == "814016640", "per A for shchesnovich_W, exact", w);
    let z = exact_string(entry("drury_Z").matrix());
    g.line("1", z == "2977257622144118400", "per A for drury_Z, exact", z);
    let h = exact_string(entry("tran_H").matrix());
    g.line("1", h == "504", "per H, exact", h);
    let x = entry("drury_X");
    let px = permanent(x.matrix()).unwrap().re();
    g.line("1", rel(px, 45.0) <= 1e-9, "per A for drury_X = 45 (rel 1e-9)", format!("{px:.17e}"));
    let hx = permanent(&x.matrix().hadamard(x.conj().matrix()).unwrap()).unwrap().re();
    g.line("1", rel(hx, 6185.0 / 128.0) <= 1e-9, "per(A o conj A) for drury_X = 6185/128 (rel 1e-9)", format!("{hx:.17e}"));
    let t = start.elapsed();
    g.line("1", t < Duration::from_secs(30), "runtime under 30 s", format!("{t:.2?}"));
}

fn criterion_2(g: &mut Gate) {
    let w = entry("shchesnovich_W");
    let per_w = permanent(w.matrix()).unwrap().re();
    let d = isotypic_decomposition(w.hermitian()).unwrap();
    let top = d.top();
    let published = 320.0 * (2185775.0 + 160600333345f64.sqrt());
    g.line("2", rel(top, published) <= 1e-6 && top > per_w, "top eigenvalue of pi(A) for W (rel 1e-6) exceeds per A", format!("{top:.10e} vs {published:.10e}, per {per_w:e}"));
    let owners = d.attribute(top);
    g.line("2", owners == vec![Partition::new(vec![3, 2]).unwrap()], "top eigenvalue of pi(A) for W lies in the (3,2) block", format!("{owners:?}"));

    let h = entry("tran_H");
    let spectrum = schur_power_spectrum(h.hermitian(), Some(1e-6 * 512.0)).unwrap();
    let got: Vec<(i64, usize)> = spectrum.clusters().map(|(v, k)| (v.round() as i64, k)).collect();
    let want = vec![(512, 5), (504, 1), (448, 5), (384, 4), (320, 4), (240, 4), (160, 4), (0, 93)];
    let close = spectrum.clusters().all(|(v, _)| (v - v.round()).abs() <= 1e-6 * 512.0);
    g.line("2", got == want && close, "spectrum of pi(H) as a multiset (cluster tol 1e-6*512)", format!("{got:?}"));

    let z = entry("drury_Z");
    let per_z = permanent(z.matrix()).unwrap().re();
    let top = permlab::matrices::eigenvalues(&bs40_matrix(z.hermitian()).unwrap(), None).unwrap().max().unwrap();
    let ratio = top / per_z;
    g.line("2", (1.016..=1.018).contains(&ratio), "top eigenvalue of [a_ij per A(i|j)] for Z in [1.016, 1.018] per A", format!("ratio {ratio:.6}"));
}

fn criterion_3(g: &mut Gate) {
    let m = entry("james_M");
    let chi = CharacterSpec::from_kind(&SubgroupKind::A4James).unwrap();
    let f = gmf(m.matrix(), &chi).unwrap().value();
    let p = permanent(m.matrix()).unwrap().re();
    g.line("3", rel(f.re, p) <= 1e-9 && f.im.abs() <= 1e-9 * p, "f_chi(M) = per M for the A4 character (rel 1e-9)", format!("{f} vs {p}"));

    let y3 = entry("grone_pierce_Y3");
    let s = exact_string(y3.matrix());
    g.line("3", s == "3/2", "per Y3 = 3/2 exactly", s);
    let r = check_theorem(TheoremId::GpCorSing, &y3, &Params::default(), &Checker::default()).unwrap();
    g.line("3", r.lhs == 1.5 && r.rhs == 1.5 && r.verdict == Verdict::Holds, "GP_COR_SING equality 3/2 = n/(n-1) on Y3", format!("{} vs {}", r.lhs, r.rhs));
    let id = PsdMatrix::from_gram(&CMatrix::identity(4));
    let r = check_theorem(TheoremId::GpCorMix, &id, &Params::default(), &Checker::default()).unwrap();
    g.line("3", r.margin == 0.0 && r.verdict == Verdict::Holds, "GP_COR_MIX equality on the identity", format!("{} vs {}", r.lhs, r.rhs));
}

/// Runs `per_n` samples of `id` for each order in `orders`; every report
/// must hold (or be degenerate).
fn campaign(g: &mut Gate, id: TheoremId, orders: &[usize], per_n: usize, params: Params) {
    let mut total = 0;
    let mut bad = 0;
    for &n in orders {
        let spec = CampaignSpec::new(Target::Theorem(id), n, 1000 + n as u64, per_n).with_params(params.clone());
        let s = run_campaign(&spec, &Checker::default()).unwrap();
        total += s.trials;
        bad += s.violated;
    }
    g.line("4", bad == 0, &format!("{id} on {total} samples, n in {orders:?}"), format!("{bad} violations"));
}

fn criterion_4(g: &mut Gate) {
    let start = Instant::now();
    campaign(g, TheoremId::ClassicalChain, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::Schur, &[2, 3, 4, 5], 50, Params::default());
    campaign(g, TheoremId::MerrisBound, &[2, 3, 4, 5], 50, Params::default());
    campaign(g, TheoremId::LiebPoly, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::LiebCy1, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::LiebCy2, &[2, 4, 6], 50, Params::default());
    campaign(g, TheoremId::MarcusSoules, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::GronePierce, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::GpCorHaa, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::GpCorMix, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::GpCorSing, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::PateRank2, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::FrenkelAlpha, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::ZhangBs38Const, &[2, 3, 4, 5, 6], 40, Params::default());
    campaign(g, TheoremId::HeyfronHooks, &[5], 200, Params::default());

    lieb_block_coefficient(g);
    lieb_equality_cases(g);
    conjecture_in_proved_range(g, ConjectureId::Pot, 3, 100, None);
    conjecture_in_proved_range(g, ConjectureId::Mar9, 4, 60, Some(2));
    conjecture_in_proved_range(g, ConjectureId::Mar9, 6, 40, Some(3));
    character_values_are_eigenvalues(g);
    order_witnesses(g);
    ryser_against_naive(g);

    let t = start.elapsed();
    g.line("4", t < Duration::from_secs(600), "property suites under 10 min", format!("{t:.2?}"));
}

fn lieb_block_coefficient(g: &mut Gate) {
    let mut worst: f64 = 0.0;
    let mut low: f64 = 0.0;
    for seed in 0..100 {
        let a = sample_psd(6, 6, 7000 + seed, SampleKind::Psd).unwrap();
        let p = lieb_polynomial(a.hermitian(), 3).unwrap();
        let m = a.matrix();
        let b = permanent(&m.select(&[0, 1, 2], &[0, 1, 2]).unwrap()).unwrap().re();
        let d = permanent(&m.select(&[3, 4, 5], &[3, 4, 5]).unwrap()).unwrap().re();
        let total = p.evaluate(1.0);
        worst = worst.max((p.coefficients()[3] - b * d).abs() / total).max(rel(total, permanent(m).unwrap().re()));
        low = low.min(p.coefficients().iter().copied().fold(f64::INFINITY, f64::min) / total);
    }
    g.line(
        "4",
        worst <= 1e-10 && low >= -1e-10,
        "Lieb polynomial, 100 samples n = 6, b = 3: coeff[b] = per B per D, P(1) = per A, coefficients >= -1e-10 P(1)",
        format!("max rel error {worst:.2e}, min coefficient/P(1) {low:.2e}"),
    );
}

fn lieb_equality_cases(g: &mut Gate) {
    let checker = Checker::default();
    let mut ok = true;
    for seed in 0..20 {
        let b = sample_psd(2, 2, seed, SampleKind::Psd).unwrap();
        let d = sample_psd(3, 3, seed + 50, SampleKind::Psd).unwrap();
        let params = Params { block: Some(2), ..Params::default() };
        let r = check_theorem(TheoremId::LiebCy1, &b.direct_sum(&d).unwrap(), &params, &checker).unwrap();
        ok &= r.verdict == Verdict::Holds && r.witness.as_ref().is_some_and(|w| w["equality_case"] == true);
        let w = sample_psd(4, 3, seed + 90, SampleKind::Psd).unwrap();
        let zero = PsdMatrix::from_gram(&CMatrix::zeros(1, 1)).direct_sum(&w).unwrap();
        let r = check_theorem(TheoremId::LiebCy1, &zero, &Params::default(), &checker).unwrap();
        ok &= r.verdict != Verdict::Violated && r.witness.as_ref().is_some_and(|w| w["equality_case"] == true);
    }
    g.line("4", ok, "Lieb equality with C = 0 and with a zero row, 20 samples each", format!("{ok}"));
}

fn conjecture_in_proved_range(g: &mut Gate, id: ConjectureId, n: usize, trials: usize, k: Option<usize>) {
    let params = Params { k, ..Params::default() };
    let spec = CampaignSpec::new(Target::Conjecture(id), n, 77, trials).with_params(params);
    let s = run_campaign(&spec, &Checker::default()).unwrap();
    g.line("4", s.violated == 0, &format!("{id} at n = {n}{}", k.map(|k| format!(", blocks of {k}")).unwrap_or_default()), format!("{}/{trials} hold", s.holds));
}

/// The literal claim: each f_chi(A) is within 1e-6 (relative) of an eigenvalue
/// of pi(A).
fn character_values_are_eigenvalues(g: &mut Gate) {
    let mut checked = 0;
    let mut misses = Vec::new();
    for n in 2..=5 {
        for seed in 0..20 {
            let a = sample_psd(n, n, 500 + 10 * n as u64 + seed, SampleKind::Psd).unwrap();
            let spectrum = schur_power_spectrum(a.hermitian(), None).unwrap();
            let mut kinds: Vec<SubgroupKind> = partitions(n).into_iter().map(SubgroupKind::FullSn).collect();
            kinds.push(SubgroupKind::Trivial(n));
            kinds.push(SubgroupKind::Young(vec![1, n - 1]));
            for kind in kinds {
                let f = gmf(a.matrix(), &CharacterSpec::from_kind(&kind).unwrap()).unwrap().re();
                let (nearest, _) = spectrum.nearest(f).unwrap();
                checked += 1;
                if rel(nearest, f) > 1e-6 {
                    misses.push(format!("{kind:?}"));
                }
            }
        }
    }
    misses.sort();
    misses.dedup();
    g.line(
        "4",
        misses.is_empty(),
        "f_chi(A) within 1e-6 of an eigenvalue of pi(A), n <= 5",
        if misses.is_empty() {
            format!("{checked} values")
        } else {
            format!("not an eigenvalue for {} kinds, e.g. {} (only per and det always are)", misses.len(), misses[0])
        },
    );
    let a = PsdMatrix::from_hermitian(HermitianMatrix::new(CMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap()).unwrap()).unwrap();
    let h = diag_product(a.matrix()).unwrap().re();
    let values = schur_power_spectrum(a.hermitian(), None).unwrap().values().to_vec();
    println!("     n = 2 witness: h([[2,1],[1,2]]) = {h}, spectrum of pi = {values:?}");
}

fn order_witnesses(g: &mut Gate) {
    let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
    let a = verify_order(&p(&[2, 2]), &p(&[3, 1]), 1, 20, 1e-9).unwrap();
    let b = verify_order(&p(&[3, 1]), &p(&[2, 2]), 1, 20, 1e-9).unwrap();
    let j22 = a.discriminators.iter().find(|d| d.blocks == p(&[2, 2])).unwrap();
    let j31 = b.discriminators.iter().find(|d| d.blocks == p(&[3, 1])).unwrap();
    let ok = j22.violated && j31.violated && (j22.f_lambda.as_str(), j22.f_mu.as_str()) == ("2", "4/3")
        && (j31.f_lambda.as_str(), j31.f_mu.as_str()) == ("2", "0");
    g.line("4", ok, "(2,2) and (3,1) incomparable: J2+J2 and J3+J1 witnesses", format!("J2+J2: {} vs {}, J3+J1: {} vs {}", j22.f_lambda, j22.f_mu, j31.f_lambda, j31.f_mu));
}

fn ryser_against_naive(g: &mut Gate) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut exact_ok = true;
    for trial in 0..50 {
        let n = 1 + trial % 8;
        if trial % 2 == 0 {
            let data = (0..n * n).map(|_| num_complex::Complex::new(rng.random_range(-9..=9), rng.random_range(-9..=9))).collect();
            let a = CMatrix::from_gaussian(n, n, data).unwrap();
            exact_ok &= permanent(&a).unwrap().exact() == permlab::gmf::permanent_naive(&a).unwrap().exact();
        } else {
            let data = (0..n * n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let a = CMatrix::from_vec_float(n, n, data).unwrap();
            let (x, y) = (permanent(&a).unwrap().value(), permlab::gmf::permanent_naive(&a).unwrap().value());
            worst = worst.max((x - y).norm() / x.norm().max(y.norm()).max(1.0));
        }
    }
    g.line("4", exact_ok && worst <= 1e-10, "Ryser = naive on 50 random complex matrices, n <= 8", format!("exact agree {exact_ok}, float max rel {worst:.2e}"));
}

fn criterion_5(g: &mut Gate, long: bool) {
    let checker = Checker::default();
    let results = verify_corpus(&checker).unwrap();
    let compound = results.iter().find(|r| r.name == "drury_compound_Y").unwrap();
    let bs38 = compound.checks.iter().find(|c| c.quantity.starts_with("BS38")).unwrap();
    g.line(
        "5",
        bs38.status != CheckStatus::Mismatch,
        "compound-of-16 BS38 with B = A (orientation unpublished; may flag)",
        format!("{:?}, observed {}", bs38.status, bs38.observed),
    );
    let z = entry("drury_Z");
    let per_z = permanent(z.matrix()).unwrap().re();
    let block = standard_block_spectrum(z.hermitian(), None).unwrap().max().unwrap();
    g.line(
        "5",
        block > per_z,
        "drury_Z: (7,1) block top via the 8x8 reduction exceeds per A; full 40320-dim isotypic attribution not computed",
        format!("{:.6}", block / per_z),
    );
    if long {
        let t = Instant::now();
        let top = schur_power_top_eigenvalue(z.hermitian()).unwrap();
        // The overall top lies in the (6,2) block, above the (7,1) one.
        g.line(
            "5",
            top > per_z && top >= block * (1.0 - 1e-9),
            "drury_Z: matrix-free top eigenvalue of pi(A) exceeds per A and the (7,1) block top",
            format!("{top:.10e} vs block {block:.10e}, per {per_z:.10e}, in {:.1?}", t.elapsed()),
        );
    } else {
        println!("SKIP [5] drury_Z n = 8 matrix-free run (pass --include-ignored)");
    }
    println!("NOTE [5] large-n partition-order theorems are not reproduced; order checks run for n <= 7 only");
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let long = args.iter().any(|a| a == "--include-ignored" || a == "--ignored");
    let mut g = Gate::default();
    criterion_1(&mut g);
    criterion_2(&mut g);
    criterion_3(&mut g);
    criterion_4(&mut g);
    criterion_5(&mut g, long);
    println!();
    for (criterion, checks, failures) in &g.tally {
        let verdict = if *failures == 0 { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {criterion}: {} of {checks} checks passed", checks - failures);
    }
    if g.tally.iter().all(|t| t.2 == 0) { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
