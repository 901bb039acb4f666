//! Pinned end-to-end checks of the worked examples that the embedded
//! certificates rely on: the explicit rational and integer combinations,
//! the parallelepiped points behind the key witnesses, and the reduction
//! memberships used to collapse one highest weight onto another.

use satnorm::certs::{reduction_targets, Corpus};
use satnorm::linalg::{
    in_integer_span, lattice_points_in_box, solve_rational, ExactMatrix, ExactVector,
    LatticeBasis,
};
use satnorm::lp::ConeOutcome;
use satnorm::rat::{rat, Int, Rat};
use satnorm::roots::build_named;
use satnorm::saturation::{in_rational_cone, VectorSet};
use satnorm::weights::member;

fn ev(parts: &[i64]) -> ExactVector {
    ExactVector::from_ints(parts)
}

fn half(parts: &[i64]) -> ExactVector {
    ExactVector::new(parts.iter().map(|&n| Rat::new(Int::from(n), Int::from(2))).collect())
}

fn e8_vectors() -> Vec<ExactVector> {
    Corpus::embedded()
        .get("paper:e8:sec2")
        .unwrap()
        .vectors
        .clone()
}

#[test]
fn e8_rational_solve_gives_halves() {
    // Solving v0 over the first six vectors yields coefficients 1/2 each.
    let vs = e8_vectors();
    let a = ExactMatrix::from_columns(&vs[..6]).unwrap();
    let b = ev(&[1, 1, 0, 0, 0, 0, 0, 0]);
    let x = solve_rational(&a, &b).unwrap().unwrap();
    assert_eq!(x, ExactVector::new(vec![rat(1, 2); 6]));
}

#[test]
fn e8_integer_combination_is_v7_minus_v8() {
    let vs = e8_vectors();
    let v0 = ev(&[1, 1, 0, 0, 0, 0, 0, 0]);
    let z = in_integer_span(&vs, &v0).unwrap();
    let mut acc = ExactVector::zeros(8);
    for (c, v) in z.iter().zip(&vs) {
        acc = acc.add_scaled(&Rat::from_integer(c.clone()), v);
    }
    assert_eq!(acc, v0);
    // The difference representation exists: coefficients (0,..,0,1,-1) work.
    let mut direct = ExactVector::zeros(8);
    direct = direct.add_scaled(&Rat::from_integer(Int::from(1)), &vs[6]);
    direct = direct.add_scaled(&Rat::from_integer(Int::from(-1)), &vs[7]);
    assert_eq!(direct, v0);
}

#[test]
fn e8_cone_membership_forces_half_coefficients() {
    // The seventh coordinate pins the last two coefficients to zero, and the
    // remaining six generators are independent, so the nonnegative rational
    // representation is unique.
    let vs = e8_vectors();
    let set = VectorSet::new(8, vs).unwrap();
    let v0 = ev(&[1, 1, 0, 0, 0, 0, 0, 0]);
    match in_rational_cone(&set, &v0) {
        ConeOutcome::Member(q) => {
            let expected: Vec<Rat> = vec![
                rat(1, 2),
                rat(1, 2),
                rat(1, 2),
                rat(1, 2),
                rat(1, 2),
                rat(1, 2),
                rat(0, 1),
                rat(0, 1),
            ];
            assert_eq!(q, expected);
        }
        other => panic!("expected membership, got {other:?}"),
    }
}

#[test]
fn f4_box_of_standard_basis_catches_the_half_vector() {
    let f4 = build_named("F4").unwrap();
    let lat = LatticeBasis::from_rows(
        ExactMatrix::from_rows(f4.weight_lattice().rows().to_vec()).unwrap(),
    )
    .unwrap();
    let b = [
        ev(&[1, 0, 0, 0]),
        ev(&[0, 1, 0, 0]),
        ev(&[0, 0, 1, 0]),
        ev(&[0, 0, 0, 1]),
    ];
    let points = lattice_points_in_box(&b, &lat).unwrap();
    let got: Vec<ExactVector> = points.iter().map(|p| p.point.clone()).collect();
    assert_eq!(got, vec![ExactVector::zeros(4), half(&[1, 1, 1, 1])]);
}

#[test]
fn reduction_targets_e8_contains_highest_root() {
    let e8 = build_named("E8").unwrap();
    let lam = e8.weight(ev(&[2, 0, 0, 0, 0, 0, 0, 0])).unwrap();
    let targets = reduction_targets(&e8, &lam).unwrap();
    let lam_circ = ev(&[1, 1, 0, 0, 0, 0, 0, 0]);
    assert!(targets.iter().any(|t| t.vectors.contains(&lam_circ)));
}

#[test]
fn reduction_targets_e7_coset1_gives_lambda_star_then_template() {
    let e7 = build_named("E7").unwrap();
    let lam_star = ExactVector::new(vec![
        Rat::from_integer(Int::from(1)),
        Rat::from_integer(Int::from(0)),
        Rat::from_integer(Int::from(0)),
        Rat::from_integer(Int::from(0)),
        Rat::from_integer(Int::from(0)),
        Rat::from_integer(Int::from(0)),
        rat(1, 2),
        rat(1, 2),
    ]);
    let lam = e7.weight(lam_star.clone()).unwrap();
    let targets = reduction_targets(&e7, &lam).unwrap();
    assert_eq!(targets.len(), 2);
    assert!(targets[0].vectors.contains(&lam_star));
    assert_eq!(targets[1].vectors.len(), 12);
    for t in &targets {
        for proof in &t.proofs {
            assert!(proof.is_member);
        }
    }
}

#[test]
fn f4_pi4_lies_in_all_three_reduced_modules() {
    let f4 = build_named("F4").unwrap();
    let pi4 = f4.weight_from_fw_coords(&[0, 0, 0, 1]).unwrap();
    for fw in [[0i64, 0, 1, 0], [0, 1, 0, 0], [2, 0, 0, 0]] {
        let lam = f4.weight_from_fw_coords(&fw).unwrap();
        assert!(
            member(&f4, &lam, &pi4).unwrap().is_member,
            "pi4 must lie in M for fw {fw:?}"
        );
    }
}

#[test]
fn e6_midpoint_reductions() {
    let e6 = build_named("E6").unwrap();
    // The midpoint reached from pi3 (a cyclic-permutation image of pi6).
    let pi3 = e6.weight_from_fw_coords(&[0, 0, 1, 0, 0, 0]).unwrap();
    let midpoint = ExactVector::new(
        [1i64, 1, -2, 0, 0, 0, 2, -1, -1]
            .iter()
            .map(|&n| Rat::new(Int::from(n), Int::from(3)))
            .collect(),
    );
    let mid_w = e6.weight(midpoint).unwrap();
    assert!(member(&e6, &pi3, &mid_w).unwrap().is_member);

    // pi2 is reached from pi4.
    let pi4 = e6.weight_from_fw_coords(&[0, 0, 0, 1, 0, 0]).unwrap();
    let pi2 = e6.weight_from_fw_coords(&[0, 1, 0, 0, 0, 0]).unwrap();
    assert!(member(&e6, &pi4, &pi2).unwrap().is_member);
}

#[test]
fn g2_two_pi1_reaches_the_long_root() {
    let g2 = build_named("G2").unwrap();
    let two_pi1 = g2.weight_from_fw_coords(&[2, 0]).unwrap();
    for target in [ev(&[0, -2, 2]), ev(&[-2, 0, 2]), ev(&[-1, -1, 2])] {
        let w = g2.weight(target.clone()).unwrap();
        assert!(
            member(&g2, &two_pi1, &w).unwrap().is_member,
            "{target} must lie in M(2 pi1)"
        );
    }
}

#[test]
fn corpus_report_has_enough_entries() {
    let corpus = Corpus::embedded();
    let cfg = satnorm::certs::CorpusCheckConfig {
        lemma_samples: 1,
        random_per_coset: 1,
        grid_degree: 0,
        ..Default::default()
    };
    let report = satnorm::certs::verify_corpus(&corpus, &cfg);
    assert!(report.pass);
    let certs = report.entries.iter().filter(|e| e.kind == "certificate").count();
    let hered = report
        .entries
        .iter()
        .filter(|e| e.kind == "hereditary-normality")
        .count();
    assert_eq!(certs, 7);
    assert_eq!(hered, 2);
    assert!(report.entries.len() >= 9);
}

#[test]
fn non_dominant_highest_weights_reduce() {
    // A negative fundamental-weight coordinate is fine: the weight is
    // reduced to its dominant representative first.
    let g2 = build_named("G2").unwrap();
    let lam = g2.weight_from_fw_coords(&[-1, 0]).unwrap();
    let pi1 = g2.weight_from_fw_coords(&[1, 0]).unwrap();
    let mu = g2.weight(ev(&[1, -1, 0])).unwrap();
    let proof = member(&g2, &lam, &mu).unwrap();
    assert!(proof.is_member);
    assert_eq!(proof.lambda_dominant, pi1.coords);
}

#[test]
fn hull_oracle_works_on_small_e6_orbit() {
    use satnorm::weights::hull_member_oracle;
    let e6 = build_named("E6").unwrap();
    let pi1 = e6.weight_from_fw_coords(&[1, 0, 0, 0, 0, 0]).unwrap();
    assert_eq!(e6.weyl_orbit(&pi1.coords, 1000).unwrap().len(), 27);
    // Every enumerated member passes the hull oracle; a weight well outside
    // the polytope fails it.
    let ws = satnorm::weights::enumerate(&e6, &pi1, 1000).unwrap();
    for v in ws.members.iter().take(8) {
        let mu = e6.weight(v.clone()).unwrap();
        assert!(hull_member_oracle(&e6, &pi1, &mu, 1000).unwrap());
        assert!(member(&e6, &pi1, &mu).unwrap().is_member);
    }
    let far = e6.weight_from_fw_coords(&[3, 0, 0, 0, 0, 0]).unwrap();
    assert!(!hull_member_oracle(&e6, &pi1, &far, 1000).unwrap());
    assert!(!member(&e6, &pi1, &far).unwrap().is_member);
}

#[test]
fn certificate_verifies_against_larger_explicit_lambda() {
    use satnorm::certs::verify_certificate;
    let corpus = Corpus::embedded();
    let g2 = build_named("G2").unwrap();
    let cert = corpus.get("paper:g2:case6.2").unwrap();
    // M(pi1 + pi2) contains M(pi2), so the same certificate instantiates
    // inside the larger module.
    let lam = g2.weight_from_fw_coords(&[1, 1]).unwrap();
    let report = verify_certificate(&g2, cert, Some(&lam)).unwrap();
    assert!(report.pass);
    assert_eq!(report.lambda, lam.coords);
    // ... but not inside M(pi1), whose weights exclude the long roots: the
    // membership check must fail while the combinatorial checks still pass.
    let pi1 = g2.weight_from_fw_coords(&[1, 0]).unwrap();
    let report = verify_certificate(&g2, cert, Some(&pi1)).unwrap();
    assert!(!report.pass);
    let membership = report.checks.iter().find(|c| c.name == "membership").unwrap();
    assert!(!membership.pass);
    let refutation = report.checks.iter().find(|c| c.name == "refutation").unwrap();
    assert!(refutation.pass);
}
