//! Acceptance gate: one test per numbered criterion, each printing a single
//! pass line. Every comparison is exact — the pinned tolerance is zero.

use std::path::Path;
use std::process::Command;

use spic_core::arveson::{degree_report, GradedModule};
use spic_core::cycles::{
    components_with_support, functoriality_check, local_cycle, pushforward_cycle,
    pushforward_target_ring, spectral_picture, weyl_test, Cycle, PrimeCandidate, SampleConfig,
};
use spic_core::defaults::DEFAULT_MAX_K;
use spic_core::fpmodule::{
    hs_function, hs_polynomial, hs_polynomial_local, multiplicity_serre, FPModule,
};
use spic_core::groebner::{eliminate, ideal_groebner, module_groebner, FreeElem, GroebnerBasis};
use spic_core::matrix::QMatrix;
use spic_core::poly::{Poly, RingSpec, TermOrder};
use spic_core::scalar::Scalar;
use spic_core::spectral::{
    chi_prime, fiber_homology, stalk_homology, svep_check, taylor_spectrum, OperatorModel,
    SpectrumDescription,
};

/// Allowed absolute deviation in every integer comparison below: none.
const EXACT_TOLERANCE: i64 = 0;

fn exact(got: i64, want: i64, what: &str) {
    assert!(
        (got - want).abs() <= EXACT_TOLERANCE,
        "{}: got {}, want {}",
        what,
        got,
        want
    );
}

fn ring(vars: &[&str]) -> RingSpec {
    RingSpec::new(vars.iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

fn p(r: &RingSpec, s: &str) -> Poly {
    Poly::parse(r, s).unwrap()
}

fn polys(r: &RingSpec, strs: &[&str]) -> Vec<Poly> {
    strs.iter().map(|s| p(r, s)).collect()
}

fn pt(coords: &[i64]) -> Vec<Scalar> {
    coords.iter().map(|&c| Scalar::from_int(c)).collect()
}

fn quotient(r: &RingSpec, gens: &[&str]) -> FPModule {
    FPModule::quotient_ring(r, &polys(r, gens)).unwrap()
}

fn module_model(r: &RingSpec, gens: &[&str]) -> OperatorModel {
    OperatorModel::module_tuple(quotient(r, gens))
}

fn prime(r: &RingSpec, gens: &[&str]) -> PrimeCandidate {
    PrimeCandidate::new(r, &polys(r, gens)).unwrap()
}

fn cycle_of(terms: Vec<(PrimeCandidate, i64)>) -> Cycle {
    let mut c = Cycle::empty();
    for (prime, coefficient) in terms {
        c.add(prime, coefficient);
    }
    c
}

/// The right-hand side of the local Euler-characteristic identity for a
/// single module stage: the Hilbert–Samuel multiplicity along the frame
/// ideal at the point, taken as zero when the local dimension falls below
/// the frame size.
fn frame_multiplicity(m: &FPModule, frame: &[usize], point: &[Scalar]) -> Scalar {
    let r = m.ring();
    let q: Vec<Poly> = frame
        .iter()
        .map(|&i| Poly::var(r, i).sub(&Poly::constant(r, point[i].clone())))
        .collect();
    let rec = hs_polynomial_local(m, &q, point, DEFAULT_MAX_K).unwrap();
    assert!(
        rec.degree <= frame.len() as i64,
        "growth of degree {} along a frame of size {}",
        rec.degree,
        frame.len()
    );
    if rec.degree < frame.len() as i64 {
        Scalar::zero()
    } else {
        rec.normalized_leading.clone()
    }
}

#[test]
fn criterion_01_local_euler_characteristic_equals_frame_multiplicity() {
    let r2 = ring(&["z1", "z2"]);

    // Cyclic models: (generators, point, frame, pinned value).
    let cases: &[(&[&str], &[i64], &[usize], i64)] = &[
        (&["z1"], &[0, 0], &[1], 1),
        (&["z1^2"], &[0, 0], &[1], 2),
        (&["z1*z2"], &[0, 1], &[1], 1),
        (&["z1 - z2^2"], &[0, 0], &[0], 2),
        (&["z1^2", "z1*z2"], &[0, 0], &[1], 1),
    ];
    for (gens, coords, frame, want) in cases {
        let m = quotient(&r2, gens);
        let model = OperatorModel::module_tuple(m.clone());
        let point = pt(coords);
        let chi = chi_prime(&model, &point, frame, DEFAULT_MAX_K).unwrap();
        let rhs = frame_multiplicity(&m, frame, &point);
        assert_eq!(
            Scalar::from_int(chi),
            rhs,
            "identity on R/({}) at {:?}",
            gens.join(", "),
            coords
        );
        exact(chi, *want, "pinned local Euler characteristic");
    }

    // A rank-two module: the free part carries the full-frame multiplicity,
    // the torsion line contributes nothing to a size-two frame.
    let rel = FreeElem::new(&r2, vec![Poly::zero(&r2), p(&r2, "z1")]).unwrap();
    let direct_sum = FPModule::new(&r2, 2, vec![rel]).unwrap();
    let model = OperatorModel::module_tuple(direct_sum.clone());
    let origin = pt(&[0, 0]);
    let chi = chi_prime(&model, &origin, &[0, 1], DEFAULT_MAX_K).unwrap();
    assert_eq!(
        Scalar::from_int(chi),
        frame_multiplicity(&direct_sum, &[0, 1], &origin)
    );
    exact(chi, 1, "rank-two model, full frame");

    // A frame larger than the local dimension: both sides vanish.
    let cross = quotient(&r2, &["z1*z2"]);
    let model = OperatorModel::module_tuple(cross.clone());
    let chi = chi_prime(&model, &origin, &[0, 1], DEFAULT_MAX_K).unwrap();
    assert_eq!(
        Scalar::from_int(chi),
        frame_multiplicity(&cross, &[0, 1], &origin)
    );
    exact(chi, 0, "oversized frame vanishes");

    println!("criterion 01 PASS - local Euler characteristic equals the frame multiplicity on six module models");
}

#[test]
fn criterion_02_alternating_koszul_lengths_agree_with_hilbert_samuel() {
    let r1 = ring(&["z1"]);
    let r2 = ring(&["z1", "z2"]);
    let r3 = ring(&["z1", "z2", "z3"]);

    let pairs: Vec<(FPModule, Vec<Poly>, i64)> = vec![
        (FPModule::free(&r2, 1), polys(&r2, &["z1", "z2"]), 1),
        (FPModule::free(&r2, 1), polys(&r2, &["z1^2", "z2"]), 2),
        (FPModule::free(&r2, 1), polys(&r2, &["z1^2", "z2^3"]), 6),
        (
            FPModule::free(&r2, 1),
            polys(&r2, &["z1 + z2", "z1 - z2"]),
            1,
        ),
        (
            FPModule::free(&r2, 1),
            polys(&r2, &["z1^2", "z1 + z2^3"]),
            6,
        ),
        (quotient(&r2, &["z1 - z2^2"]), polys(&r2, &["z1"]), 2),
        (quotient(&r2, &["z1*z2"]), polys(&r2, &["z1 - z2"]), 2),
        (quotient(&r2, &["z1^2"]), polys(&r2, &["z2"]), 2),
        (quotient(&r2, &["z1^2 - z2^3"]), polys(&r2, &["z1"]), 3),
        (
            FPModule::free(&r3, 1),
            polys(&r3, &["z1", "z2", "z3^2"]),
            2,
        ),
    ];
    assert!(pairs.len() >= 8);
    let _ = &r1;

    for (i, (m, q, want)) in pairs.iter().enumerate() {
        let serre = multiplicity_serre(m, q).unwrap();
        let hs = hs_polynomial(m, q, DEFAULT_MAX_K).unwrap();
        exact(serre.multiplicity, *want, &format!("pair {} value", i));
        assert_eq!(
            Scalar::from_int(serre.multiplicity),
            hs.normalized_leading,
            "pair {}: alternating Koszul lengths vs Hilbert–Samuel leading term",
            i
        );
        assert_eq!(hs.degree, m.module_dimension().unwrap(), "pair {} degree", i);
    }

    println!("criterion 02 PASS - alternating Koszul lengths match Hilbert-Samuel multiplicities on ten pairs");
}

#[test]
fn criterion_03_nilpotent_tuples_concentrate_their_stalk_in_degree_zero() {
    let r2 = ring(&["z1", "z2"]);
    let n2 = QMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
    let zero2 = QMatrix::zero(2, 2);
    let j3 = QMatrix::from_int_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    let j3sq = QMatrix::from_int_rows(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
    let e12 = QMatrix::from_int_rows(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
    let e13 = QMatrix::from_int_rows(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);

    let tuples: Vec<(Vec<QMatrix>, usize)> = vec![
        (vec![n2.clone(), zero2.clone()], 2),
        (vec![n2.clone(), n2.clone()], 2),
        (vec![j3.clone(), j3sq.clone()], 3),
        (vec![e12, e13], 3),
    ];

    for (ops, ambient) in tuples {
        let model = OperatorModel::matrix_tuple(r2.clone(), ops).unwrap();
        let stages = stalk_homology(&model, &pt(&[0, 0])).unwrap();
        exact(
            stages[0].vector_space_dim().unwrap() as i64,
            ambient as i64,
            "stalk dimension in degree zero",
        );
        for (j, stage) in stages.iter().enumerate().skip(1) {
            exact(
                stage.vector_space_dim().unwrap() as i64,
                0,
                &format!("stalk dimension in degree {}", j),
            );
        }
    }

    println!("criterion 03 PASS - nilpotent tuples have their whole stalk in degree zero, of ambient dimension");
}

#[test]
fn criterion_04_fiber_index_vanishes_on_grids() {
    let j3 = QMatrix::from_int_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    let j3sq = QMatrix::from_int_rows(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
    let j3sum = QMatrix::from_int_rows(&[vec![0, 1, 1], vec![0, 0, 1], vec![0, 0, 0]]);

    // One operator: a line of sample values.
    let single = vec![j3.clone()];
    let mut count = 0;
    for a in -10..10 {
        let fh = fiber_homology(&single, &pt(&[a])).unwrap();
        exact(fh.index, 0, "index of a single operator");
        count += 1;
    }
    assert!(count >= 20);

    // Two commuting operators: a 5 x 5 grid.
    let pair = vec![j3.clone(), j3sq.clone()];
    count = 0;
    for a in -2..=2 {
        for b in -2..=2 {
            let fh = fiber_homology(&pair, &pt(&[a, b])).unwrap();
            exact(fh.index, 0, "index of a commuting pair");
            count += 1;
        }
    }
    assert!(count >= 20);

    // Three commuting operators: a 3 x 3 x 3 grid.
    let triple = vec![j3, j3sq, j3sum];
    count = 0;
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                let fh = fiber_homology(&triple, &pt(&[a, b, c])).unwrap();
                exact(fh.index, 0, "index of a commuting triple");
                count += 1;
            }
        }
    }
    assert!(count >= 20);

    println!("criterion 04 PASS - fiber index vanishes at every grid point for tuples of length 1, 2, 3");
}

#[test]
fn criterion_05_pushforward_matches_local_fiber_sums() {
    let cfg = SampleConfig::default();
    let r1 = ring(&["z1"]);
    let r2 = ring(&["z1", "z2"]);
    let w = pushforward_target_ring(1);

    // Degree-2 map on a line: the pushed cycle doubles the target line.
    let axis = module_model(&r2, &["z1"]);
    let f = polys(&r2, &["z2^2"]);
    let rpt = functoriality_check(&axis, &f, &pt(&[0]), &[], &cfg).unwrap();
    assert!(rpt.matches, "degree-2 map on a line");
    let doubled_line = cycle_of(vec![(prime(&w, &[]), 2)]);
    assert_eq!(rpt.pushed_side, doubled_line);
    assert_eq!(rpt.local_side, doubled_line);
    let picture = spectral_picture(&axis, &[], &cfg).unwrap();
    let pushed = pushforward_cycle(&picture.cycle(), &f, &cfg).unwrap();
    assert_eq!(pushed.cycle, doubled_line);

    // Two simple preimage points merge into one target point of weight 2.
    let two_points = module_model(&r1, &["z1^2 - 1"]);
    let square = polys(&r1, &["z1^2"]);
    let rpt = functoriality_check(&two_points, &square, &pt(&[1]), &[], &cfg).unwrap();
    assert!(rpt.matches, "two preimages over one target point");
    exact(rpt.preimages.len() as i64, 2, "preimage count");
    let doubled_point = cycle_of(vec![(prime(&w, &["w - 1"]), 2)]);
    assert_eq!(rpt.pushed_side, doubled_point);
    assert_eq!(rpt.local_side, doubled_point);

    // A sum map on two crossing lines: each branch contributes once.
    let cross = module_model(&r2, &["z1*z2"]);
    let sum = polys(&r2, &["z1 + z2"]);
    let rpt = functoriality_check(&cross, &sum, &pt(&[1]), &[], &cfg).unwrap();
    assert!(rpt.matches, "sum map on crossing lines");
    exact(rpt.preimages.len() as i64, 2, "preimage count on the cross");
    assert_eq!(rpt.pushed_side, cycle_of(vec![(prime(&w, &[]), 2)]));

    println!("criterion 05 PASS - pushed global cycles equal preimage-local sums on three model/map pairs");
}

#[test]
fn criterion_06_hilbert_samuel_values_become_polynomial_of_the_right_degree() {
    let r2 = ring(&["z1", "z2"]);
    let origin = &["z1", "z2"];

    // Along the maximal ideal: degree equals module dimension and the
    // normalized leading coefficient is the multiplicity.
    let cases: Vec<(FPModule, i64)> = vec![
        (FPModule::free(&r2, 1), 1),
        (quotient(&r2, &["z1*z2"]), 2),
        (quotient(&r2, &["z1^2"]), 2),
        (quotient(&r2, &["z1 - z2^2"]), 1),
    ];
    for (m, want) in &cases {
        let rec = hs_polynomial(m, &polys(&r2, origin), DEFAULT_MAX_K).unwrap();
        assert_eq!(rec.degree, m.module_dimension().unwrap());
        assert_eq!(rec.normalized_leading, Scalar::from_int(*want));
        assert!(rec.normalized_leading.is_integer());
        assert!(!rec.normalized_leading.is_negative());
    }

    // Along the fiber ideal of the first coordinate on a smooth parabola:
    // the counted values are exactly 2k and the fit has degree one.
    let parabola = quotient(&r2, &["z1 - z2^2"]);
    let rec = hs_polynomial(&parabola, &polys(&r2, &["z1"]), DEFAULT_MAX_K).unwrap();
    assert_eq!(rec.degree, 1);
    assert_eq!(rec.normalized_leading, Scalar::from_int(2));
    for (k, v) in rec.values.iter().enumerate() {
        exact(*v as i64, 2 * k as i64, "parabola fiber-ideal value");
    }

    println!("criterion 06 PASS - Hilbert-Samuel values fit polynomials of degree = dimension with integer leading data");
}

#[test]
fn criterion_07_graded_rank_function_matches_hilbert_samuel_values() {
    let r2 = ring(&["z1", "z2"]);
    let homogeneous: Vec<FPModule> = vec![
        FPModule::free(&r2, 1),
        quotient(&r2, &["z1"]),
        quotient(&r2, &["z1*z2"]),
        quotient(&r2, &["z1^2"]),
        quotient(&r2, &["z1^2 - z2^2"]),
        FPModule::new(
            &r2,
            2,
            vec![FreeElem::new(&r2, vec![p(&r2, "z1"), p(&r2, "-z2")]).unwrap()],
        )
        .unwrap(),
    ];
    assert!(homogeneous.len() >= 4);
    let origin = polys(&r2, &["z1", "z2"]);

    for (i, m) in homogeneous.iter().enumerate() {
        let graded = GradedModule::new(m.clone()).unwrap();
        for k in 0..=10 {
            exact(
                graded.phi_kernel_dim(k) as i64,
                hs_function(m, &origin, k).unwrap() as i64,
                &format!("module {} at step {}", i, k),
            );
        }
        let report = degree_report(&graded, DEFAULT_MAX_K).unwrap();
        assert!(report.leading_terms_match, "module {} leading terms", i);
        assert!(report.degree_dominates_dimension, "module {} degree", i);
    }

    println!("criterion 07 PASS - graded rank counts equal Hilbert-Samuel values through step 10 on six modules");
}

fn weyl_spectrum_points(model: &OperatorModel, cfg: &SampleConfig) -> Vec<Vec<Scalar>> {
    let points: Vec<Vec<Scalar>> = match taylor_spectrum(model).unwrap() {
        SpectrumDescription::FinitePoints(pts) => pts.into_iter().map(|(p, _)| p).collect(),
        SpectrumDescription::Variety { .. } => panic!("finite spectrum expected"),
    };
    let mut kept: Vec<Vec<Scalar>> = Vec::new();
    for point in points {
        if weyl_test(model, &point, &[], cfg).unwrap().in_weyl_spectrum {
            kept.push(point);
        }
    }
    kept
}

fn point_set(points: &[Vec<Scalar>]) -> Vec<String> {
    let mut out: Vec<String> = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn criterion_08_removable_point_verdicts_are_consistent_and_push_forward() {
    let cfg = SampleConfig::default();
    let r2 = ring(&["z1", "z2"]);

    // Declared homology with equal stages: the indexes cancel, so points
    // of the carrier line are removable despite being on the spectrum.
    let line = quotient(&r2, &["z1"]);
    let cancel = OperatorModel::explicit(r2.clone(), vec![line.clone(), line.clone()]).unwrap();
    for coords in [[0, 1], [0, -3]] {
        let w = weyl_test(&cancel, &pt(&coords), &[], &cfg).unwrap();
        assert!(w.on_spectrum && w.is_weyl_point && !w.in_weyl_spectrum);
    }

    // Module models have the single-valued extension property, so no
    // spectrum point is removable.
    let svep_cases: Vec<(OperatorModel, Vec<i64>)> = vec![
        (module_model(&r2, &["z1*z2"]), vec![0, 1]),
        (module_model(&r2, &["z1 - z2^2"]), vec![1, 1]),
        (module_model(&r2, &["z1^2"]), vec![0, 2]),
        (module_model(&r2, &["z1"]), vec![0, 5]),
    ];
    for (model, coords) in svep_cases {
        assert!(svep_check(&model).unwrap());
        let w = weyl_test(&model, &pt(&coords), &[], &cfg).unwrap();
        assert!(w.on_spectrum && !w.is_weyl_point && w.in_weyl_spectrum);
    }

    // Isolated spectrum points of matrix tuples are never removable.
    let n2 = QMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
    let nilpotent =
        OperatorModel::matrix_tuple(r2.clone(), vec![n2, QMatrix::zero(2, 2)]).unwrap();
    let w = weyl_test(&nilpotent, &pt(&[0, 0]), &[], &cfg).unwrap();
    assert!(w.isolated && !w.is_weyl_point && w.in_weyl_spectrum);

    // Spectral mapping of the non-removable part: the image tuple's set is
    // contained in the image of the source set, with equality when the map
    // is injective.
    let a = QMatrix::from_int_rows(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 0]]);
    let b = QMatrix::from_int_rows(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 5]]);
    let t = OperatorModel::matrix_tuple(r2.clone(), vec![a.clone(), b.clone()]).unwrap();
    let source_points = weyl_spectrum_points(&t, &cfg);
    assert!(!source_points.is_empty());

    let check_map = |f: &[Poly], injective: bool| {
        let target = pushforward_target_ring(f.len());
        let images: Vec<QMatrix> = f
            .iter()
            .map(|fj| fj.eval_matrices(&[a.clone(), b.clone()]).unwrap())
            .collect();
        let ft = OperatorModel::matrix_tuple(target, images).unwrap();
        let image_points = weyl_spectrum_points(&ft, &cfg);
        let mapped: Vec<Vec<Scalar>> = source_points
            .iter()
            .map(|lam| f.iter().map(|fj| fj.eval(lam).unwrap()).collect())
            .collect();
        let image_set = point_set(&image_points);
        let mapped_set = point_set(&mapped);
        for mu in &image_set {
            assert!(mapped_set.contains(mu), "image point {} has no source", mu);
        }
        if injective {
            assert_eq!(image_set, mapped_set, "injective map must be exact");
        }
    };
    check_map(&polys(&r2, &["z1^2"]), false);
    check_map(&polys(&r2, &["z1 + 7*z2", "z2"]), true);

    // A collision case: distinct source points with one image.
    let a2 = QMatrix::from_int_rows(&[vec![2, 0, 0], vec![0, -2, 0], vec![0, 0, 3]]);
    let b2 = QMatrix::identity(3);
    let t2 = OperatorModel::matrix_tuple(r2.clone(), vec![a2.clone(), b2.clone()]).unwrap();
    let source2 = weyl_spectrum_points(&t2, &cfg);
    let f = polys(&r2, &["z1^2"]);
    let ft2 = OperatorModel::matrix_tuple(
        pushforward_target_ring(1),
        vec![f[0].eval_matrices(&[a2, b2]).unwrap()],
    )
    .unwrap();
    let image2 = point_set(&weyl_spectrum_points(&ft2, &cfg));
    let mapped2 = point_set(
        &source2
            .iter()
            .map(|lam| vec![f[0].eval(lam).unwrap()])
            .collect::<Vec<_>>(),
    );
    for mu in &image2 {
        assert!(mapped2.contains(mu));
    }

    println!("criterion 08 PASS - removable-point verdicts are consistent and push forward along polynomial maps");
}

fn certify_basis(gb: &GroebnerBasis, probes: &[FreeElem]) {
    let order = gb.order();
    let elems = gb.elems();

    // Every S-pair of basis elements reduces to zero.
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let (ci, mi, si) = elems[i].leading(order).unwrap();
            let (cj, mj, sj) = elems[j].leading(order).unwrap();
            if ci != cj {
                continue;
            }
            let lcm = mi.lcm(&mj);
            let s = elems[i]
                .mul_term(&mi.quotient_into(&lcm), &si.inv())
                .sub(&elems[j].mul_term(&mj.quotient_into(&lcm), &sj.inv()));
            assert!(gb.normal_form(&s).is_zero(), "S-pair {}:{} persists", i, j);
        }
    }

    // The normal form is idempotent on every probe.
    for v in probes {
        let once = gb.normal_form(v);
        assert_eq!(gb.normal_form(&once), once, "normal form not idempotent");
    }

    // Each basis element is literally the certified combination of inputs,
    // and each syzygy combination of the inputs is literally zero.
    let rank = gb.rank();
    let r = gb.ring();
    for (e, cert) in elems.iter().zip(gb.certificates()) {
        let mut acc = FreeElem::zero(r, rank);
        for (c, input) in cert.iter().zip(gb.inputs()) {
            acc = acc.add(&input.mul_poly(c));
        }
        assert_eq!(&acc, e, "certificate does not reproduce the element");
    }
    for syz in gb.syzygies() {
        let mut acc = FreeElem::zero(r, rank);
        for (c, input) in syz.iter().zip(gb.inputs()) {
            acc = acc.add(&input.mul_poly(c));
        }
        assert!(acc.is_zero(), "syzygy identity is nonzero");
    }
}

#[test]
fn criterion_09_every_basis_in_the_corpus_is_certified() {
    // (variables, generators, rational points on the zero locus)
    let corpus: &[(&[&str], &[&str], &[&[i64]])] = &[
        (&["z1", "z2"], &["z1*z2"], &[&[0, 3], &[4, 0]]),
        (&["z1", "z2"], &["z1^2"], &[&[0, 1], &[0, -2]]),
        (&["z1", "z2"], &["z1 - z2^2"], &[&[1, 1], &[4, -2]]),
        (&["z1", "z2"], &["z1^2 - z2^3"], &[&[1, 1], &[-8, 4]]),
        (&["z1", "z2"], &["z1^2 - z2^2"], &[&[2, 2], &[3, -3]]),
        (&["z1", "z2"], &["z1^2", "z1*z2"], &[&[0, 5]]),
        (&["z1", "z2"], &["z1 + z2", "z1 - z2"], &[&[0, 0]]),
        (&["z1"], &["z1^2 - 1"], &[&[1], &[-1]]),
        (
            &["z1", "z2", "z3"],
            &["z1 - z2*z3", "z2^2 - z3"],
            &[&[8, 2, 4], &[1, 1, 1]],
        ),
    ];

    for (vars, gens, samples) in corpus {
        let r = ring(vars);
        let ideal = polys(&r, gens);
        let gb = ideal_groebner(&r, &ideal, TermOrder::DegRevLex).unwrap();

        let mut everything = Poly::one(&r);
        for i in 0..r.num_vars() {
            everything = everything.add(&Poly::var(&r, i));
        }
        let cube = everything.mul(&everything).mul(&everything);
        let mut probes = vec![FreeElem::from_poly(cube)];
        for g in &ideal {
            probes.push(FreeElem::from_poly(g.mul(&everything)));
        }
        certify_basis(&gb, &probes);

        // Eliminating the first variable yields polynomials that vanish on
        // every sampled point of the zero locus.
        for q in eliminate(&r, &ideal, 1).unwrap() {
            assert!(q.terms().all(|(m, _)| !m.support().contains(&0)));
            for coords in *samples {
                assert!(
                    q.eval(&pt(coords)).unwrap().is_zero(),
                    "eliminated relation {} does not vanish at {:?}",
                    q,
                    coords
                );
            }
        }
    }

    // A submodule basis gets the same certification.
    let r2 = ring(&["z1", "z2"]);
    let inputs = vec![
        FreeElem::new(&r2, vec![p(&r2, "z1"), p(&r2, "z2")]).unwrap(),
        FreeElem::new(&r2, vec![Poly::zero(&r2), p(&r2, "z1^2")]).unwrap(),
    ];
    let gb = module_groebner(&r2, 2, &inputs, TermOrder::DegRevLex).unwrap();
    let probes = vec![
        FreeElem::new(&r2, vec![p(&r2, "z1^2 + z2"), p(&r2, "z1*z2 + 1")]).unwrap(),
        inputs[0].mul_poly(&p(&r2, "z2^2")),
    ];
    certify_basis(&gb, &probes);

    println!("criterion 09 PASS - S-pairs, normal forms, eliminations, and syzygies certified on the whole corpus");
}

#[test]
fn criterion_10_local_indexes_are_constant_along_components() {
    let cfg = SampleConfig::default();
    let r2 = ring(&["z1", "z2"]);

    struct Case {
        gens: &'static [&'static str],
        candidates: Vec<PrimeCandidate>,
        // (component generators, two sample points, expected index)
        components: Vec<(PrimeCandidate, [Vec<Scalar>; 2], i64)>,
    }

    let trusted_cusp =
        PrimeCandidate::trusted(&r2, &polys(&r2, &["z1^2 - z2^3"]), "irreducible cubic").unwrap();

    let cases = vec![
        Case {
            gens: &["z1*z2"],
            candidates: vec![],
            components: vec![
                (prime(&r2, &["z1"]), [pt(&[0, 1]), pt(&[0, -3])], 1),
                (prime(&r2, &["z2"]), [pt(&[1, 0]), pt(&[-2, 0])], 1),
            ],
        },
        Case {
            gens: &["z1^2 - z2^2"],
            candidates: vec![prime(&r2, &["z1 - z2"]), prime(&r2, &["z1 + z2"])],
            components: vec![
                (prime(&r2, &["z1 - z2"]), [pt(&[1, 1]), pt(&[2, 2])], 1),
                (prime(&r2, &["z1 + z2"]), [pt(&[1, -1]), pt(&[3, -3])], 1),
            ],
        },
        Case {
            gens: &["z1 - z2^2"],
            candidates: vec![],
            components: vec![(
                prime(&r2, &["z1 - z2^2"]),
                [pt(&[1, 1]), pt(&[4, -2])],
                1,
            )],
        },
        Case {
            gens: &["z1^2"],
            candidates: vec![],
            components: vec![(prime(&r2, &["z1"]), [pt(&[0, 1]), pt(&[0, -2])], 2)],
        },
        Case {
            gens: &["z1^2 - z2^3"],
            candidates: vec![trusted_cusp.clone()],
            components: vec![(trusted_cusp, [pt(&[1, 1]), pt(&[-8, 4])], 1)],
        },
        Case {
            gens: &["z1^2", "z1*z2"],
            candidates: vec![],
            components: vec![(prime(&r2, &["z1"]), [pt(&[0, 4]), pt(&[0, -1])], 1)],
        },
    ];

    for case in cases {
        let model = module_model(&r2, case.gens);
        let (_, comps) = components_with_support(&model, &case.candidates).unwrap();
        assert_eq!(comps.len(), case.components.len(), "component count");
        let picture = spectral_picture(&model, &case.candidates, &cfg).unwrap();
        for (comp, samples, want) in &case.components {
            assert!(comps.contains(comp), "missing component {}", comp);
            assert_ne!(samples[0], samples[1], "samples must be independent");
            for sample in samples {
                let (cycle, on) = local_cycle(&model, sample, &case.candidates, &cfg).unwrap();
                assert!(on, "sample must lie on the spectrum");
                let term = cycle
                    .terms
                    .iter()
                    .find(|t| &t.prime == comp)
                    .expect("component must appear in its own local cycle");
                exact(term.coefficient, *want, "local index at a sample");
            }
            let term = picture
                .terms
                .iter()
                .find(|t| &t.prime == comp)
                .expect("component must appear in the picture");
            exact(term.coefficient, *want, "engine-sampled coefficient");
        }
    }

    println!("criterion 10 PASS - local indexes agree at two independent samples of every corpus component");
}

fn run_golden(name: &str, json_name: &str) -> (i32, serde_json::Value) {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let json_path = std::env::temp_dir().join(format!("spic-{}-{}", std::process::id(), json_name));
    let out = Command::new(env!("CARGO_BIN_EXE_spic"))
        .arg(&fixture)
        .arg("--json")
        .arg(&json_path)
        .env("SPIC_SEED", "0")
        .output()
        .expect("binary must run");
    let code = out.status.code().expect("exit code");
    let text = std::fs::read_to_string(&json_path).expect("machine report must exist");
    let _ = std::fs::remove_file(&json_path);
    (code, serde_json::from_str(&text).expect("machine report must be JSON"))
}

#[test]
fn criterion_11_machine_reports_are_byte_identical_across_runs() {
    let fixtures = [
        "cross.spic",
        "nilpotent.spic",
        "parabola.spic",
        "cancel.spic",
        "cusp.spic",
        "tilted.spic",
    ];
    for name in fixtures {
        let (code_a, mut a) = run_golden(name, &format!("{}.a.json", name));
        let (code_b, mut b) = run_golden(name, &format!("{}.b.json", name));
        exact(code_a as i64, 0, "golden run must succeed");
        exact(code_b as i64, 0, "golden rerun must succeed");
        a["timing_ms"] = serde_json::json!(0);
        b["timing_ms"] = serde_json::json!(0);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
            "{}: reports differ outside the timing field",
            name
        );
    }

    println!("criterion 11 PASS - machine reports for the golden corpus are byte-identical apart from timing");
}
