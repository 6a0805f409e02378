//! Checks against independent computations: characteristic-polynomial roots,
//! dense matrix products, Heron's formula, finite perturbations and ensemble
//! statistics.

use std::f64::consts::PI;

use suprematrix::channel::{
    affine_map_from_unital, affine_map_from_unitary, apply_kraus, dephasing_channel,
    probability_coordinates_maps, AffineChannelMap, Channel, UnitalMixture, Unitary,
};
use suprematrix::entropy::{matrix_element_entropy_diagnostic, MatrixEntropyOutcome, Permutation};
use suprematrix::geometry::{malevich_area_sum, triangle_area, triangle_sides};
use suprematrix::matrix::{
    adjoint, c64, eigenvalues_2, eigenvalues_3, matmul, unitary_superoperator, vec,
    HermitianMatrix, HermitianMatrix2, HermitianMatrix3, Mat, C64,
};
use suprematrix::observable::{second_moment, QubitObservable};
use suprematrix::qubit::{qubit_density_from_probabilities, QubitProbabilities};
use suprematrix::qutrit::{
    qutrit_density_from_probabilities, qutrit_probabilities_from_density, QutritProbabilities,
};
use suprematrix::sampling::SeededGenerator;

fn random_hermitian<const N: usize>(g: &mut SeededGenerator) -> HermitianMatrix<N> {
    HermitianMatrix::hermitian_part(&g.ginibre::<N>())
}

/// Real roots of `l^3 + b l^2 + c l + d` (all real), from the trigonometric
/// solution polished by Newton steps on the polynomial itself.
fn cubic_roots(b: f64, c: f64, d: f64) -> [f64; 3] {
    let shift = -b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let mut roots = if p.abs() < 1e-300 {
        [shift - q.cbrt(); 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        [0, 1, 2].map(|k| shift + m * (theta - 2.0 * PI * k as f64 / 3.0).cos())
    };
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let f = ((*r + b) * *r + c) * *r + d;
            let df = (3.0 * *r + 2.0 * b) * *r + c;
            if df.abs() > 1e-12 {
                *r -= f / df;
            }
        }
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

#[test]
fn eigenvalues_3_match_characteristic_polynomial() {
    let mut g = SeededGenerator::new(11);
    for _ in 0..2000 {
        let h: HermitianMatrix3 = random_hermitian(&mut g);
        let c1 = h.principal_minor(0, 1) + h.principal_minor(0, 2) + h.principal_minor(1, 2);
        let roots = cubic_roots(-h.trace(), c1, -h.determinant());
        let (a, b, c) = eigenvalues_3(&h);
        for (x, y) in [a, b, c].iter().zip(roots) {
            assert!((x - y).abs() < 1e-10, "{:?} vs {roots:?}", (a, b, c));
        }
        assert!((a + b + c - h.trace()).abs() < 1e-10);
        assert!((a * b * c - h.determinant()).abs() < 1e-10);
    }
}

#[test]
fn eigenvalues_2_match_quadratic_formula_and_jacobi() {
    let mut g = SeededGenerator::new(12);
    for _ in 0..10_000 {
        let h: HermitianMatrix2 = random_hermitian(&mut g);
        let (t, det) = (h.trace(), h.determinant());
        let disc = (t * t - 4.0 * det).max(0.0).sqrt();
        let (a, b) = eigenvalues_2(&h);
        assert!((a - (t + disc) / 2.0).abs() < 1e-12);
        assert!((b - (t - disc) / 2.0).abs() < 1e-12);
        let jacobi = h.eigenvalues();
        assert!((a - jacobi[0]).abs() < 1e-12 && (b - jacobi[1]).abs() < 1e-12);
    }
}

#[test]
fn superoperator_matches_direct_conjugation() {
    let mut g = SeededGenerator::new(13);
    for _ in 0..1000 {
        let u = g.sample_unitary::<3>();
        let rho: HermitianMatrix3 = random_hermitian(&mut g);
        let lhs = unitary_superoperator(&u)
            .mul_vec(vec(&rho).as_slice())
            .unwrap();
        let direct = matmul(&matmul(&u, rho.entries()), &adjoint(&u));
        for j in 0..3 {
            for k in 0..3 {
                assert!((lhs[3 * j + k] - direct[j][k]).norm() < 1e-12);
            }
        }
    }
}

#[derive(serde::Deserialize)]
struct SecondMomentCase {
    a11: f64,
    a22: f64,
    a12: [f64; 2],
    p: [f64; 3],
    trace_rho_a2: f64,
    first_line: f64,
    second_line: f64,
}

#[derive(serde::Deserialize)]
struct SecondMomentFixture {
    cases: Vec<SecondMomentCase>,
}

/// The fixture holds `Tr(rho A^2)` from dense numpy products together with
/// both printed lines of the expansion. The first line carries
/// `-(1 - p3) Z2^2` where `+(1 - p3) Z2^2` is needed.
#[test]
fn second_moment_against_numpy_fixture() {
    let fixture: SecondMomentFixture =
        serde_json::from_str(include_str!("fixtures/second_moment_oracle.json")).unwrap();
    let mut first_line_failures = 0;
    for case in &fixture.cases {
        let a = QubitObservable::new(case.a11, case.a22, c64(case.a12[0], case.a12[1]));
        let p = QubitProbabilities::new(case.p[0], case.p[1], case.p[2]).unwrap();
        let value = second_moment(&a, &p);
        assert!((value - case.trace_rho_a2).abs() < 1e-12);
        assert!((case.second_line - case.trace_rho_a2).abs() < 1e-12);

        let gap = case.trace_rho_a2 - case.first_line;
        let expected_gap = 2.0 * (1.0 - case.p[2]) * case.a22 * case.a22;
        assert!((gap - expected_gap).abs() < 1e-12);
        if gap.abs() > 1e-9 {
            first_line_failures += 1;
        }
    }
    assert!(first_line_failures >= fixture.cases.len() - 1);
}

#[test]
fn triangle_area_matches_heron() {
    let mut g = SeededGenerator::new(14);
    for _ in 0..10_000 {
        let p = g.sample_ball_probabilities();
        let [a, b, c] = triangle_sides(&p).unwrap();
        let s = (a + b + c) / 2.0;
        let heron = (s * (s - a) * (s - b) * (s - c)).sqrt();
        let area = triangle_area([a, b, c])
            .value()
            .expect("ball triangles are proper");
        assert!((area - heron).abs() < 1e-12);
    }
}

/// `S = 3/2 + 3 |x|^2 + (x1 + x2 + x3)^2` with `x = p - 1/2`, so inside the
/// ball `S <= 3/2 + 3/4 + 3/4 = 3`.
#[test]
fn area_sum_quantum_maximum() {
    let mut g = SeededGenerator::new(15);
    let mut largest = 0.0_f64;
    for _ in 0..100_000 {
        largest = largest.max(malevich_area_sum(&g.sample_ball_probabilities()));
    }
    assert!(
        largest <= 3.0 + 1e-12 && largest > 2.9,
        "largest S = {largest}"
    );
    let x = 0.5 / 3.0_f64.sqrt();
    let corner = QubitProbabilities::new(0.5 + x, 0.5 + x, 0.5 + x).unwrap();
    assert!((malevich_area_sum(&corner) - 3.0).abs() < 1e-12);
    println!("largest S over 1e5 ball samples: {largest:.9}");
}

#[test]
fn ginibre_mean_is_maximally_mixed() {
    let mut g = SeededGenerator::new(16);
    let n = 10_000;
    let mut sum = HermitianMatrix3::from_real_diagonal([0.0; 3]);
    for _ in 0..n {
        sum = sum.add(&g.sample_density_matrix::<3>());
    }
    let mean = sum.scale(1.0 / n as f64);
    assert!(mean.distance(&HermitianMatrix3::maximally_mixed()) < 0.05);
}

#[test]
fn haar_entries_average_to_zero() {
    let mut g = SeededGenerator::new(17);
    let n = 10_000;
    let mut sum: Mat<3> = [[C64::new(0.0, 0.0); 3]; 3];
    for _ in 0..n {
        let u = g.sample_unitary::<3>();
        for j in 0..3 {
            for k in 0..3 {
                sum[j][k] += u[j][k];
            }
        }
    }
    for z in sum.iter().flatten() {
        assert!((z / n as f64).norm() < 0.05);
    }
}

/// Rebuilds `U` column by column from `Pi(channel(rho(Pi0 + e_j))) -
/// Pi(channel(rho(Pi0)))` computed in the matrix domain.
#[test]
fn affine_matrix_from_basis_perturbations() {
    let mut g = SeededGenerator::new(18);
    let coords = probability_coordinates_maps();
    let channels = [
        Channel::Unitary(g.sample_qutrit_unitary()),
        Channel::Kraus(g.sample_kraus_channel(3)),
        Channel::dephasing(),
    ];
    for ch in channels {
        let map = ch.affine_map().unwrap();
        let base = [0.5; 8];
        let image = |pi: &[f64; 8]| {
            let rho = suprematrix::matrix::unvec(&coords.to_vec9(pi)).unwrap();
            coords.from_vec9(&vec(&ch.apply_matrix(&rho)))
        };
        let origin = image(&base);
        for (j, value) in origin.iter().enumerate() {
            assert!((value - map.apply(&base)[j]).abs() < 1e-10);
        }
        for col in 0..8 {
            let mut shifted = base;
            shifted[col] += 1.0;
            let moved = image(&shifted);
            for row in 0..8 {
                assert!((moved[row] - origin[row] - map.matrix[row][col]).abs() < 1e-10);
            }
        }
    }
}

/// The offset depends on the unitary; a single shared offset does not exist.
#[test]
fn unitary_offsets_differ_between_channels() {
    let mut g = SeededGenerator::new(19);
    let identity = affine_map_from_unitary(&Unitary::identity()).unwrap();
    let mut largest_gap = 0.0_f64;
    for _ in 0..20 {
        let map = affine_map_from_unitary(&g.sample_qutrit_unitary()).unwrap();
        let gap = map
            .offset
            .iter()
            .zip(identity.offset)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        largest_gap = largest_gap.max(gap);
    }
    assert!(largest_gap > 0.1);
}

#[test]
fn unital_mixture_is_average_of_terms() {
    let swap = Unitary::swap_levels(1, 3);
    let mix = UnitalMixture::new(vec![(0.5, Unitary::identity()), (0.5, swap)]).unwrap();
    let map = affine_map_from_unital(&mix).unwrap();
    let swap_map = affine_map_from_unitary(&swap).unwrap();
    let mut g = SeededGenerator::new(20);
    for _ in 0..100 {
        let q = qutrit_probabilities_from_density(&g.sample_density_matrix::<3>()).unwrap();
        let pi = q.as_array();
        let expected: Vec<f64> = pi
            .iter()
            .zip(swap_map.apply(&pi))
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        for (a, b) in map.apply(&pi).iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }
    let direct = AffineChannelMap::from_superoperator(&mix.superoperator()).unwrap();
    assert!(direct.max_abs_diff(&map) < 1e-12);
}

#[test]
fn unital_purity_does_not_increase() {
    let mut g = SeededGenerator::new(21);
    for _ in 0..500 {
        let terms = (0..3)
            .map(|_| g.sample_qutrit_unitary())
            .collect::<Vec<_>>();
        let weights = [0.2, 0.3, 0.5];
        let mix = UnitalMixture::new(weights.into_iter().zip(terms).collect()).unwrap();
        let rho = g.sample_density_matrix::<3>();
        let out = mix.apply_matrix(&rho);
        assert!(out.trace_of_square() <= rho.trace_of_square() + 1e-12);
        let fixed = affine_map_from_unital(&mix)
            .unwrap()
            .apply(&QutritProbabilities::maximally_mixed().as_array());
        for (a, b) in fixed
            .iter()
            .zip(QutritProbabilities::maximally_mixed().as_array())
        {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn kraus_application_matches_affine_map() {
    let mut g = SeededGenerator::new(22);
    for _ in 0..300 {
        let count = 1 + (g.uniform() * 4.0) as usize;
        let ch = g.sample_kraus_channel(count);
        let q = qutrit_probabilities_from_density(&g.sample_density_matrix::<3>()).unwrap();
        let via_matrix = apply_kraus(&ch, &q).unwrap();
        assert!(via_matrix.input_psd && via_matrix.output_psd);
        let via_map = ch.affine_map().unwrap().apply(&q.as_array());
        for (a, b) in via_map.iter().zip(via_matrix.probabilities.as_array()) {
            assert!((a - b).abs() < 1e-10);
        }
    }
    let _ = dephasing_channel();
}

/// With `(rho12 + rho21 + 1)/2 = p1^(2)` and `(rho13 + rho31 + 1)/2 = p1^(1)`
/// the first term is `p1^(2) ln(p1^(2)/p1^(1))`; the second works out to
/// `-(1 - p2^(2)) ln((1 - p2^(2)) / p2^(1))`.
#[test]
fn matrix_element_diagnostic_in_probabilities() {
    let mut g = SeededGenerator::new(23);
    let mut negative = 0;
    for _ in 0..2000 {
        let rho = g.sample_density_matrix::<3>();
        let q = qutrit_probabilities_from_density(&rho).unwrap();
        let (p11, p21) = (q.get(1, 1), q.get(1, 2));
        let (p12, p22) = (q.get(2, 1), q.get(2, 2));
        match matrix_element_entropy_diagnostic(&rho, Permutation::IDENTITY).unwrap() {
            MatrixEntropyOutcome::Value { terms, value, .. } => {
                assert!((terms[0] - p12 * (p12 / p11).ln()).abs() < 1e-12);
                let second = -(1.0 - p22) * ((1.0 - p22) / p21).ln();
                assert!((terms[1] - second).abs() < 1e-12);
                if value < 0.0 {
                    negative += 1;
                }
            }
            other => panic!("{other:?}"),
        }
    }
    // Not a relative entropy: the printed form goes negative on real states.
    assert!(negative > 0);
    println!("matrix-element form negative on {negative}/2000 Ginibre states");
}

#[test]
fn qubit_density_is_reused_by_qutrit_blocks() {
    let q = QutritProbabilities::new([0.6, 0.7, 0.8, 0.55, 0.45, 0.7, 0.5, 0.6]).unwrap();
    let rho = qutrit_density_from_probabilities(&q);
    let blocks = suprematrix::qutrit::extract_artificial_qubits(&rho).unwrap();
    assert!(blocks[1].distance(&qubit_density_from_probabilities(&q.qubit(2))) < 1e-15);
    assert!(blocks[2].distance(&qubit_density_from_probabilities(&q.qubit(3))) < 1e-15);
    assert!(
        blocks[0]
            .transposed()
            .distance(&qubit_density_from_probabilities(&q.qubit(1)))
            < 1e-15
    );
}
