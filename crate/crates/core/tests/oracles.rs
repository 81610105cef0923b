// SPDX-License-Identifier: Apache-2.0

//! Kernels against independent brute-force computations.

use num_complex::Complex;
use permlab::gmf::{determinant, gmf, immanant, lieb_polynomial, permanent, permanent_naive, ClassSums};
use permlab::matrices::{sample_psd, SampleKind};
use permlab::perms::{all_permutations, character_table, partitions, SubgroupKind};
use permlab::schur_power::{schur_power_spectrum, schur_power_matvec, schur_power_matrix};
use permlab::{CMatrix, CharacterSpec, Complex64, Partition};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel_close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}

fn random_complex(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let data = (0..n * n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    CMatrix::from_vec_float(n, n, data).unwrap()
}

fn random_gaussian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let data = (0..n * n).map(|_| Complex::new(rng.random_range(-9..=9), rng.random_range(-9..=9))).collect();
    CMatrix::from_gaussian(n, n, data).unwrap()
}

/// Literal signed sum over `S_n`.
fn naive_det(a: &CMatrix) -> Complex64 {
    let n = a.rows();
    all_permutations(n)
        .unwrap()
        .iter()
        .map(|s| s.sign() as f64 * (0..n).map(|i| a.get(i, s.apply(i))).product::<Complex64>())
        .sum()
}

#[test]
fn ryser_matches_naive_on_fifty_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..50 {
        let n = 1 + trial % 8;
        if trial % 2 == 0 {
            let a = random_gaussian(n, &mut rng);
            let ryser = permanent(&a).unwrap();
            let naive = permanent_naive(&a).unwrap();
            assert_eq!(ryser.exact().unwrap(), naive.exact().unwrap(), "n = {n}");
        } else {
            let a = random_complex(n, &mut rng);
            let (r, s) = (permanent(&a).unwrap().value(), permanent_naive(&a).unwrap().value());
            assert!(rel_close(r, s, 1e-10), "n = {n}: {r} vs {s}");
        }
    }
}

#[test]
fn determinant_matches_signed_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=7 {
        let a = random_complex(n, &mut rng);
        assert!(rel_close(determinant(&a).unwrap().value(), naive_det(&a), 1e-10));
        let g = random_gaussian(n, &mut rng);
        let d = determinant(&g).unwrap();
        assert!(d.is_exact());
        assert!(rel_close(d.value(), naive_det(&g), 1e-12));
    }
}

#[test]
fn immanants_interpolate_between_det_and_per() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=6 {
        let a = random_complex(n, &mut rng);
        let per = immanant(&a, &Partition::row(n)).unwrap().value();
        let det = immanant(&a, &Partition::column(n)).unwrap().value();
        assert!(rel_close(per, permanent(&a).unwrap().value(), 1e-10));
        assert!(rel_close(det, determinant(&a).unwrap().value(), 1e-10));
    }
}

#[test]
fn immanant_matches_character_weighted_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let n = 5;
    let a = random_complex(n, &mut rng);
    let table = character_table(n).unwrap();
    let sums = ClassSums::new(&a).unwrap();
    for (row, lambda) in table.partitions.iter().enumerate() {
        let degree = table.degree(row) as f64;
        let direct: Complex64 = all_permutations(n)
            .unwrap()
            .iter()
            .map(|s| {
                let col = table.class_index(&s.cycle_type()).unwrap();
                table.values[row][col] as f64 * (0..n).map(|i| a.get(i, s.apply(i))).product::<Complex64>()
            })
            .sum::<Complex64>()
            / degree;
        assert!(rel_close(sums.immanant(lambda).unwrap().value(), direct, 1e-10), "{lambda}");
    }
}

#[test]
fn character_table_orthogonality() {
    for n in 1..=7 {
        let t = character_table(n).unwrap();
        let order: u128 = (1..=n as u128).product();
        for i in 0..t.partitions.len() {
            for j in 0..t.partitions.len() {
                let inner: i128 = (0..t.classes.len())
                    .map(|c| t.class_sizes[c] as i128 * t.values[i][c] as i128 * t.values[j][c] as i128)
                    .sum();
                assert_eq!(inner, if i == j { order as i128 } else { 0 }, "n = {n}");
            }
        }
        assert_eq!(t.partitions.len(), partitions(n).len());
    }
}

#[test]
fn schur_power_matvec_matches_dense_product() {
    let a = sample_psd(4, 4, 21, SampleKind::Psd).unwrap();
    let dense = schur_power_matrix(a.hermitian()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v: Vec<Complex64> = (0..24).map(|_| Complex64::new(rng.random(), rng.random())).collect();
    let fast = schur_power_matvec(a.hermitian(), &v).unwrap();
    let slow = dense.matrix().matvec(&v);
    for (x, y) in fast.iter().zip(&slow) {
        assert!(rel_close(*x, *y, 1e-12));
    }
}

fn character_kinds(n: usize) -> Vec<SubgroupKind> {
    let mut kinds: Vec<SubgroupKind> = partitions(n).into_iter().map(SubgroupKind::FullSn).collect();
    kinds.push(SubgroupKind::Trivial(n));
    kinds.push(SubgroupKind::Young(vec![1, n - 1]));
    if n >= 4 {
        kinds.push(SubgroupKind::Young(vec![2, n - 2]));
    }
    kinds
}

/// `x* π(A) x / x* x` with `x` the conjugated character, extended by zero
/// off the subgroup.
fn rayleigh_at_character(pi: &CMatrix, chi: &CharacterSpec) -> f64 {
    let perms = all_permutations(chi.n()).unwrap();
    let mut x = vec![Complex64::new(0.0, 0.0); perms.len()];
    for (g, v) in chi.elements().iter().zip(chi.values()) {
        x[g.lex_rank()] = v.conj();
    }
    let y = pi.matvec(&x);
    let num: Complex64 = x.iter().zip(&y).map(|(a, b)| a.conj() * b).sum();
    num.re / x.iter().map(|z| z.norm_sqr()).sum::<f64>()
}

#[test]
fn character_values_are_rayleigh_quotients_of_schur_power() {
    for n in 2..=5 {
        for seed in 0..3 {
            let a = sample_psd(n, n, 100 * n as u64 + seed, SampleKind::Psd).unwrap();
            let pi = schur_power_matrix(a.hermitian()).unwrap();
            let spectrum = pi.spectrum(None).unwrap();
            let (lo, hi) = (spectrum.min().unwrap(), spectrum.max().unwrap());
            for kind in character_kinds(n) {
                let chi = CharacterSpec::from_kind(&kind).unwrap();
                let f = gmf(a.matrix(), &chi).unwrap().re();
                let q = rayleigh_at_character(pi.matrix(), &chi);
                assert!((f - q).abs() <= 1e-10 * f.abs().max(1.0), "{kind:?}: {f} vs {q}");
                assert!(f >= lo - 1e-9 * hi && f <= hi * (1.0 + 1e-9), "{kind:?}");
            }
        }
    }
}

#[test]
fn permanent_and_determinant_are_schur_power_eigenvalues() {
    for n in 2..=5 {
        let a = sample_psd(n, n, 40 + n as u64, SampleKind::Psd).unwrap();
        let spectrum = schur_power_spectrum(a.hermitian(), None).unwrap();
        for value in [permanent(a.matrix()).unwrap().re(), determinant(a.matrix()).unwrap().re()] {
            let (nearest, _) = spectrum.nearest(value).unwrap();
            assert!((nearest - value).abs() <= 1e-9 * spectrum.max().unwrap());
        }
    }
}

/// For n = 2, π(A) = [[h, |a12|²], [|a12|², h]] with h = a11·a22, so the
/// trivial-group function is an eigenvalue only when a12 = 0.
#[test]
fn diagonal_product_is_not_an_eigenvalue_in_general() {
    let a = permlab::PsdMatrix::from_hermitian(
        permlab::HermitianMatrix::new(CMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap()).unwrap(),
    )
    .unwrap();
    let spectrum = schur_power_spectrum(a.hermitian(), None).unwrap();
    let values = spectrum.values().to_vec();
    assert_eq!(values.len(), 2);
    assert!(values.iter().any(|v| (v - 5.0).abs() < 1e-12) && values.iter().any(|v| (v - 3.0).abs() < 1e-12));
    let h = gmf(a.matrix(), &CharacterSpec::from_kind(&SubgroupKind::Trivial(2)).unwrap()).unwrap().re();
    assert_eq!(h, 4.0);
}

#[test]
fn lieb_extreme_coefficient_is_product_of_block_permanents() {
    for seed in 0..5 {
        let a = sample_psd(6, 6, seed, SampleKind::Psd).unwrap();
        let p = lieb_polynomial(a.hermitian(), 3).unwrap();
        let m = a.matrix();
        let (b, d) = (m.select(&[0, 1, 2], &[0, 1, 2]).unwrap(), m.select(&[3, 4, 5], &[3, 4, 5]).unwrap());
        let product = permanent(&b).unwrap().re() * permanent(&d).unwrap().re();
        let total = permanent(m).unwrap().re();
        assert!((p.coefficients()[3] - product).abs() <= 1e-10 * total);
        assert!((p.evaluate(1.0) - total).abs() <= 1e-10 * total);
    }
}

#[test]
fn lieb_coefficients_are_exact_on_integer_input() {
    let w = CMatrix::from_gaussian(3, 2, vec![Complex::new(1, 0), Complex::new(0, 1), Complex::new(2, 0), Complex::new(1, -1), Complex::new(0, 0), Complex::new(3, 0)])
        .unwrap();
    let a = permlab::PsdMatrix::from_gram(&w);
    let p = lieb_polynomial(a.hermitian(), 1).unwrap();
    let sum = p.exact_sum().unwrap();
    assert_eq!(sum.to_string(), permanent(a.matrix()).unwrap().exact().unwrap().to_string());
}

fn gaussian_matrix(max_n: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-5i64..=5, -5i64..=5), n * n)
            .prop_map(move |v| CMatrix::from_gaussian(n, n, v.into_iter().map(|(r, i)| Complex::new(r, i)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permanent_invariant_under_transpose_and_row_swap(a in gaussian_matrix(6), i in 0usize..6, j in 0usize..6) {
        let n = a.rows();
        let (i, j) = (i % n, j % n);
        let per = permanent(&a).unwrap().exact().unwrap().clone();
        let t = permanent(&a.transpose()).unwrap();
        prop_assert_eq!(t.exact().unwrap(), &per);
        let mut order: Vec<usize> = (0..n).collect();
        order.swap(i, j);
        let swapped = a.select(&order, &(0..n).collect::<Vec<_>>()).unwrap();
        let s = permanent(&swapped).unwrap();
        prop_assert_eq!(s.exact().unwrap(), &per);
    }

    #[test]
    fn exact_and_float_permanents_agree(a in gaussian_matrix(7)) {
        let exact = permanent(&a).unwrap().value();
        let float = CMatrix::from_vec_float(a.rows(), a.cols(), a.data().to_vec()).unwrap();
        prop_assert!(rel_close(exact, permanent(&float).unwrap().value(), 1e-10));
    }

    #[test]
    fn permanent_scales_by_row(a in gaussian_matrix(6), s in -4i64..=4) {
        let n = a.rows();
        let mut d = vec![Complex::new(1, 0); n];
        d[0] = Complex::new(s, 0);
        let diag = CMatrix::from_gaussian(n, n, (0..n * n).map(|k| if k % (n + 1) == 0 { d[k / n] } else { Complex::new(0, 0) }).collect()).unwrap();
        let scaled = diag.matmul(&a).unwrap();
        let lhs = permanent(&scaled).unwrap().value();
        let rhs = permanent(&a).unwrap().value() * s as f64;
        prop_assert!(rel_close(lhs, rhs, 1e-12));
    }
}
