//! Randomized invariant suites that cut across modules: reflection and
//! reduction invariants per root system, invariance of the saturation
//! decision under lattice symmetries, solver cross-checks, and the
//! exhaustive membership/enumeration agreement box.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use satnorm::linalg::{ExactMatrix, ExactVector};
use satnorm::rat::{Int, Rat};
use satnorm::roots::{build_named, reflect, LatticeClass, Realization};
use satnorm::saturation::{
    is_hereditarily_normal, is_saturated, nonneg_integer_solve, HereditaryOptions,
    SaturationOptions, SaturationStatus, VectorSet,
};
use satnorm::weights::{enumerate, member};

fn random_lattice_vector(rs: &Realization, rng: &mut ChaCha8Rng, range: i64) -> ExactVector {
    let mut v = ExactVector::zeros(rs.ambient_dim);
    for basis_vec in rs.weight_lattice().rows() {
        let c = rng.gen_range(-range..=range);
        v = v.add_scaled(&Rat::from_integer(Int::from(c)), basis_vec);
    }
    v
}

#[test]
fn reflections_preserve_lattice_and_coset() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for name in ["A2", "B2", "G2", "F4", "E6", "E7", "E8"] {
        let rs = build_named(name).unwrap();
        for _ in 0..100 {
            let v = random_lattice_vector(&rs, &mut rng, 3);
            let class = rs.lattice_test(&v);
            assert!(matches!(class, LatticeClass::Coset(_)), "{name}: {v} not in lattice");
            for alpha in rs.simple_roots() {
                let img = reflect(alpha, &v).unwrap();
                assert_eq!(rs.lattice_test(&img), class, "{name}: coset moved at {v}");
            }
        }
    }
}

#[test]
fn dominant_rep_preserves_coset_and_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for name in ["A2", "B2", "G2", "F4", "E6", "E7", "E8"] {
        let rs = build_named(name).unwrap();
        for _ in 0..50 {
            let v = random_lattice_vector(&rs, &mut rng, 3);
            let (dom, word) = rs.dominant_rep(&v);
            assert!(rs.is_dominant(&dom));
            assert_eq!(rs.lattice_test(&dom), rs.lattice_test(&v), "{name}");
            assert_eq!(dom.norm_sq(), v.norm_sq(), "{name}");
            assert_eq!(rs.apply_word(&v, &word), dom, "{name}: word does not replay");
        }
    }
}

#[test]
fn dominant_rep_is_unique_dominant_orbit_element() {
    for name in ["G2", "F4"] {
        let rs = build_named(name).unwrap();
        for root in rs.roots() {
            let (dom, _) = rs.dominant_rep(root);
            let orbit = rs.weyl_orbit(root, 100_000).unwrap();
            assert!(orbit.contains(&dom));
            let dominant_count = orbit.iter().filter(|w| rs.is_dominant(w)).count();
            assert_eq!(dominant_count, 1, "{name}: orbit of {root}");
        }
    }
}

#[test]
fn gram_matrix_matches_duality() {
    for name in ["A1", "A2", "B2", "C3", "D4", "G2", "F4", "E6", "E7", "E8"] {
        let rs = build_named(name).unwrap();
        let two = Rat::from_integer(Int::from(2));
        for (i, pi) in rs.fundamental_weights().iter().enumerate() {
            for (j, alpha) in rs.simple_roots().iter().enumerate() {
                let pairing = &two * &pi.dot(alpha) / alpha.norm_sq();
                let expected = if i == j { Rat::from_integer(Int::from(1)) } else { Rat::from_integer(Int::from(0)) };
                assert_eq!(pairing, expected, "{name}: pairing pi_{i} alpha_{j}");
            }
        }
        // Cartan integrality off the diagonal, 2 on it.
        for ai in rs.simple_roots() {
            for aj in rs.simple_roots() {
                let c = &two * &ai.dot(aj) / aj.norm_sq();
                assert!(c.denom() == &Int::from(1), "{name}: Cartan entry fractional");
            }
        }
    }
}

fn random_small_set(rng: &mut ChaCha8Rng) -> VectorSet {
    loop {
        let dim = rng.gen_range(2usize..=3);
        let count = rng.gen_range(2usize..=5);
        let vectors: Vec<ExactVector> = (0..count)
            .map(|_| {
                ExactVector::new(
                    (0..dim)
                        .map(|_| Rat::from_integer(Int::from(rng.gen_range(-2i64..=2))))
                        .collect(),
                )
            })
            .collect();
        if vectors.iter().any(|v| !v.is_zero()) {
            return VectorSet::new(dim, vectors).unwrap();
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, dim: usize) -> ExactMatrix {
    // Product of elementary shears and swaps.
    let mut m = ExactMatrix::identity(dim);
    for _ in 0..6 {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim);
        if i == j {
            j = (j + 1) % dim;
        }
        let c = rng.gen_range(-2i64..=2);
        let mut rows: Vec<ExactVector> = m.rows().to_vec();
        let scaled = rows[j].scale(&Rat::from_integer(Int::from(c)));
        rows[i] = &rows[i] + &scaled;
        if rng.gen_bool(0.3) {
            rows.swap(i, j);
        }
        m = ExactMatrix::from_rows(rows).unwrap();
    }
    m
}

#[test]
fn saturation_invariant_under_lattice_symmetries() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let opts = SaturationOptions::default();
    for _ in 0..30 {
        let set = random_small_set(&mut rng);
        let base = is_saturated(&set, &opts).unwrap().status;

        // Unimodular image.
        let u = random_unimodular(&mut rng, set.dim);
        let mapped: Vec<ExactVector> = set.vectors.iter().map(|v| u.mul_vec(v)).collect();
        let mapped_set = VectorSet::new(set.dim, mapped).unwrap();
        assert_eq!(
            is_saturated(&mapped_set, &opts).unwrap().status,
            base,
            "unimodular image changed the verdict"
        );

        // Permutation of the list.
        let mut perm = set.vectors.clone();
        perm.reverse();
        let perm_set = VectorSet::new(set.dim, perm).unwrap();
        assert_eq!(is_saturated(&perm_set, &opts).unwrap().status, base);

        // Global negation (the dual-module statement at the set level).
        let negated: Vec<ExactVector> = set.vectors.iter().map(|v| -v).collect();
        let neg_set = VectorSet::new(set.dim, negated).unwrap();
        assert_eq!(is_saturated(&neg_set, &opts).unwrap().status, base);
    }
}

#[test]
fn hereditary_normal_implies_subsets_saturated() {
    // The F4 short-root system is hereditarily normal; spot check 50 random
    // subsets through the saturation decision.
    let f4 = build_named("F4").unwrap();
    let pi1 = f4.weight_from_fw_coords(&[1, 0, 0, 0]).unwrap();
    let ws = enumerate(&f4, &pi1, 1000).unwrap();
    let all = ws.nonzero_members();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..50 {
        let size = rng.gen_range(1usize..=8);
        let mut chosen: Vec<ExactVector> = Vec::new();
        for _ in 0..size {
            chosen.push(all[rng.gen_range(0..all.len())].clone());
        }
        let set = VectorSet::new(4, chosen).unwrap();
        let verdict = is_saturated(&set, &SaturationOptions::default()).unwrap();
        assert_eq!(
            verdict.status,
            SaturationStatus::Saturated,
            "subset of a hereditarily normal set must be saturated"
        );
    }
}

#[test]
fn solver_agrees_with_exhaustive_bounded_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..120 {
        let dim = rng.gen_range(1usize..=3);
        let count = rng.gen_range(1usize..=4);
        let cols: Vec<Vec<i64>> = (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(-2i64..=2)).collect())
            .collect();
        let target: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3i64..=3)).collect();
        let a = ExactMatrix::from_columns(
            &cols.iter().map(|c| ExactVector::from_ints(c)).collect::<Vec<_>>(),
        )
        .unwrap();
        let b = ExactVector::from_ints(&target);
        let got = nonneg_integer_solve(&a, &b);

        // Exhaustive search with the l1-based cap (at least 1).
        let min_norm = cols
            .iter()
            .map(|c| c.iter().map(|e| e.abs()).sum::<i64>())
            .filter(|&n| n > 0)
            .min()
            .unwrap_or(1);
        let l1: i64 = target.iter().map(|e| e.abs()).sum();
        let cap = (l1 + min_norm - 1) / min_norm.max(1) + 1;
        let mut found: Option<Vec<i64>> = None;
        let mut stack = vec![Vec::<i64>::new()];
        'outer: while let Some(partial) = stack.pop() {
            if partial.len() == count {
                let mut acc = vec![0i64; dim];
                for (n, c) in partial.iter().zip(&cols) {
                    for (a, e) in acc.iter_mut().zip(c) {
                        *a += n * e;
                    }
                }
                if acc == target {
                    found = Some(partial);
                    break 'outer;
                }
                continue;
            }
            for v in (0..=cap).rev() {
                let mut next = partial.clone();
                next.push(v);
                stack.push(next);
            }
        }

        match (&got, &found) {
            (Some(n), _) => {
                // A claimed solution must reconstruct the target exactly.
                let mut acc = ExactVector::zeros(dim);
                for (c, col) in n.iter().zip(&cols) {
                    acc = acc
                        .add_scaled(&Rat::from_integer(c.clone()), &ExactVector::from_ints(col));
                }
                assert_eq!(acc, b, "solver produced a bad combination");
            }
            (None, Some(w)) => {
                panic!("solver said none, exhaustive search found {w:?} for {cols:?} -> {target:?}")
            }
            (None, None) => {}
        }
    }
}

#[test]
fn member_matches_enumeration_on_f4_box() {
    let f4 = build_named("F4").unwrap();
    for fw in [[1i64, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]] {
        let lam = f4.weight_from_fw_coords(&fw).unwrap();
        let ws = enumerate(&f4, &lam, 100_000).unwrap();
        // All integer points and all strictly half-integer points of the box.
        for mask in 0..2u32 {
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    for c in -2i64..=2 {
                        for d in -2i64..=2 {
                            let mut v: Vec<Rat> = [a, b, c, d]
                                .iter()
                                .map(|&x| Rat::from_integer(Int::from(x)))
                                .collect();
                            if mask == 1 {
                                let half = Rat::new(Int::from(1), Int::from(2));
                                for e in v.iter_mut() {
                                    *e += &half;
                                }
                            }
                            let vec = ExactVector::new(v);
                            let mu = f4.weight(vec.clone()).unwrap();
                            let got = member(&f4, &lam, &mu).unwrap().is_member;
                            assert_eq!(
                                got,
                                ws.contains(&vec),
                                "fw {fw:?}: mismatch at {vec}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn e8_and_e7_certificate_sets_match_module_searches() {
    // The G2 long-root module: hereditary search must find a violation whose
    // subset re-fails the saturation decision (cross-module consistency).
    let g2 = build_named("G2").unwrap();
    let pi2 = g2.weight_from_fw_coords(&[0, 1]).unwrap();
    let ws = enumerate(&g2, &pi2, 1000).unwrap();
    let set = VectorSet::new(3, ws.nonzero_members()).unwrap();
    let verdict = is_hereditarily_normal(&set, None, &HereditaryOptions::default()).unwrap();
    match verdict.status {
        satnorm::saturation::HereditaryStatus::NotNormal { subset_indices, witness } => {
            let sub = VectorSet::new(3, subset_indices.iter().map(|&i| set.vectors[i].clone()).collect()).unwrap();
            let sub_verdict = is_saturated(&sub, &SaturationOptions::default()).unwrap();
            assert_eq!(sub_verdict.status, SaturationStatus::NotSaturated);
            satnorm::saturation::verify_witness(&witness).unwrap();
        }
        _ => panic!("G2 long-root module must not be hereditarily normal"),
    }
}

#[test]
fn classify_witness_subsets_fail_saturation() {
    // Cross-module consistency: the certificate set of every not-normal
    // verdict must itself be rejected by the saturation decision.
    use satnorm::certs::{classify, ClassifyOptions, Evidence, NormalityStatus};
    for (name, fws) in [
        ("G2", vec![vec![0i64, 1], vec![2, 0], vec![1, 1]]),
        ("F4", vec![vec![0, 0, 0, 1], vec![0, 1, 0, 0], vec![2, 0, 0, 0]]),
        ("E6", vec![vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 0, 1]]),
    ] {
        let rs = build_named(name).unwrap();
        for fw in fws {
            let lam = rs.weight_from_fw_coords(&fw).unwrap();
            let verdict = classify(&rs, &lam, &ClassifyOptions::default()).unwrap();
            assert_eq!(verdict.status, NormalityStatus::NotNormal, "{name} {fw:?}");
            let cert = match &verdict.evidence {
                Evidence::Certificate { certificate, .. } => certificate.clone(),
                _ => panic!("not-normal verdicts carry certificates"),
            };
            let set = VectorSet::new(rs.ambient_dim, cert.vectors.clone()).unwrap();
            let sat = is_saturated(&set, &SaturationOptions::default()).unwrap();
            assert_eq!(
                sat.status,
                SaturationStatus::NotSaturated,
                "{name} {fw:?}: certificate set must fail saturation"
            );
        }
    }
}

#[test]
fn classify_is_well_defined_on_orbits() {
    use satnorm::certs::{classify, ClassifyOptions};
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for name in ["G2", "F4"] {
        let rs = build_named(name).unwrap();
        for _ in 0..5 {
            let fw: Vec<i64> = (0..rs.rank()).map(|_| rng.gen_range(0i64..=2)).collect();
            let lam = rs.weight_from_fw_coords(&fw).unwrap();
            let base = classify(&rs, &lam, &ClassifyOptions::default()).unwrap();
            // Random Weyl word.
            let mut moved = lam.coords.clone();
            for _ in 0..6 {
                let i = rng.gen_range(0..rs.rank());
                moved = reflect(&rs.simple_roots()[i], &moved).unwrap();
            }
            let moved_w = rs.weight(moved).unwrap();
            let again = classify(&rs, &moved_w, &ClassifyOptions::default()).unwrap();
            assert_eq!(base.status, again.status, "{name} {fw:?}");
            assert_eq!(base.lambda_dominant, again.lambda_dominant, "{name} {fw:?}");
        }
    }
}

#[test]
fn hereditary_agrees_with_powerset_of_saturation_checks() {
    // Independent route: hereditary normality is literally "every subset is
    // saturated", so the minimal-completion search must agree with running
    // the saturation decision over the whole powerset.
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let opts = SaturationOptions::default();
    let mut checked = 0usize;
    while checked < 40 {
        let dim = rng.gen_range(2usize..=3);
        let count = rng.gen_range(2usize..=6);
        let vectors: Vec<ExactVector> = (0..count)
            .map(|_| {
                ExactVector::new(
                    (0..dim)
                        .map(|_| Rat::from_integer(Int::from(rng.gen_range(-2i64..=2))))
                        .collect(),
                )
            })
            .collect();
        let set = match VectorSet::new(dim, vectors) {
            Ok(s) if !s.is_empty() => s,
            _ => continue,
        };
        let fast = is_hereditarily_normal(&set, None, &HereditaryOptions::default())
            .unwrap()
            .is_normal();
        let mut powerset_normal = true;
        'subsets: for mask in 1u32..(1 << set.len()) {
            let subset: Vec<ExactVector> = (0..set.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| set.vectors[i].clone())
                .collect();
            let sub = VectorSet::new(dim, subset).unwrap();
            if is_saturated(&sub, &opts).unwrap().status == SaturationStatus::NotSaturated {
                powerset_normal = false;
                break 'subsets;
            }
        }
        assert_eq!(
            fast, powerset_normal,
            "hereditary search disagrees with the powerset on {:?}",
            set.vectors
        );
        checked += 1;
    }
}
