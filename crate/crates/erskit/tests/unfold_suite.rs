mod common;

use erskit::cyclotomic::Cyclotomic;
use erskit::presentation::{emit_sr, emit_sr_sharp, emit_tsr, RootSym};
use erskit::unfold::{auto_height, build_handy, GradedAlgebra, LoopAlgebra, LoopElement, Realization};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn handy_datum_is_sound_for_the_suite() {
    for (name, cfg) in common::suite() {
        let hd = build_handy(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(hd.pass(), "{name}");
        assert_eq!(hd.checks.len(), 10, "{name}");
        assert_eq!(hd.len() as i64, hd.k_vee.iter().sum::<i64>(), "{name}");
        assert_eq!(hd.components, 1, "{name}");
    }
}

#[test]
fn every_presentation_vanishes_under_pi() {
    let mut sharper = false;
    for (name, cfg) in common::suite() {
        let sets = [emit_sr(&cfg), emit_sr_sharp(&cfg), emit_tsr(&cfg)];
        let h = sets.iter().map(auto_height).max().unwrap();
        let real = Realization::new(&cfg, h).unwrap();
        for set in &sets {
            let rep = real.verify(set).unwrap();
            assert!(rep.failures.is_empty(), "{name} {}: {:?}", set.preset, rep.failures);
            assert!(rep.pass, "{name} {}", set.preset);
        }
        sharper |= sets[1].count("SR5'") < sets[0].count("SR5");
    }
    assert!(sharper);
}

#[test]
fn generator_images_have_the_root_parity() {
    for (name, cfg) in common::suite() {
        let real = Realization::new(&cfg, auto_height(&emit_sr(&cfg))).unwrap();
        for sym in erskit::presentation::b_set(&cfg) {
            let img = real.root_image(&sym);
            assert_eq!(img.parities(&real.graded), vec![sym.parity(&cfg)], "{name} {}", sym.id());
        }
    }
}

#[test]
fn kappa_is_four_for_doubled_copies() {
    // k∨ ≡ 2 with 2Z+1 on α_0: each image is a sum of two √2-weighted copies
    let cfg = common::config("d3_2_odd");
    let real = Realization::new(&cfg, auto_height(&emit_sr(&cfg))).unwrap();
    assert_eq!(real.kappa(), erskit::ambient::Q::from_integer(4));
    assert!(real.kappa_ratios().len() >= 3);
}

fn sgn(p: u8, q: u8) -> Cyclotomic {
    Cyclotomic::from_int(if p & q == 1 { -1 } else { 1 })
}

/// All basis vectors X ⊗ t^m of 𝔊̄ up to |height| ≤ h, plus v and w.
fn basis(g: &GradedAlgebra, h: usize, powers: &[i64]) -> Vec<(LoopElement, u8, usize)> {
    let mut out = vec![
        (LoopElement::central_v(Cyclotomic::from_int(1)), 0, 0),
        (LoopElement::derivation_w(Cyclotomic::from_int(1)), 0, 0),
    ];
    for (id, s) in g.spaces().iter().enumerate() {
        if s.height > h {
            continue;
        }
        for b in 0..s.dim {
            for &m in powers {
                out.push((LoopElement::basis(g, id, b, m), s.parity, s.height));
            }
        }
    }
    out
}

/// Super antisymmetry, super Jacobi and invariance on every triple whose
/// heights sum to at most `h`.
fn check_triples(name: &str, h: usize) {
    let cfg = common::config(name);
    let g = GradedAlgebra::build(build_handy(&cfg).unwrap(), h).unwrap();
    let la = LoopAlgebra::new(&g);
    let b = basis(&g, h, &[-1, 0, 1]);
    let one = Cyclotomic::from_int(1);
    let mut triples = 0;
    for (x, px, hx) in &b {
        for (y, py, hy) in &b {
            if hx + hy > h {
                continue;
            }
            let xy = la.bracket(x, y).unwrap();
            let mut yx = la.bracket(y, x).unwrap();
            yx.add_scaled(sgn(*px, *py), &xy.clone());
            assert!(yx.is_zero(), "{name}: antisymmetry");
            for (z, _, hz) in &b {
                if hx + hy + hz > h {
                    continue;
                }
                triples += 1;
                // [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]]
                let lhs = la.bracket(x, &la.bracket(y, z).unwrap()).unwrap();
                let mut rhs = la.bracket(&xy, z).unwrap();
                rhs.add_scaled(sgn(*px, *py), &la.bracket(y, &la.bracket(x, z).unwrap()).unwrap());
                let mut diff = lhs;
                diff.add_scaled(-one, &rhs);
                assert!(diff.is_zero(), "{name}: Jacobi");
                assert_eq!(
                    la.form(&xy, z).unwrap(),
                    la.form(x, &la.bracket(y, z).unwrap()).unwrap(),
                    "{name}: invariance"
                );
            }
        }
    }
    assert!(triples > 1000, "{name}: {triples}");
}

#[test]
fn loop_algebra_identities_even() {
    check_triples("a2_1", 5);
}

#[test]
fn loop_algebra_identities_super() {
    check_triples("d3_2_odd", 4);
}

#[test]
fn loop_algebra_identities_z() {
    check_triples("d3_2_z", 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pi_of_a_bracket_of_generators_is_the_bracket_of_images(
        node in 0usize..3, other in 0usize..3, ostar in any::<bool>(), neg in any::<bool>()
    ) {
        // SR3 in disguise: [π h_α, π E_μ] = J(α, μ) π E_μ
        let cfg = common::config("d3_2_k2_4z");
        thread_local! {
            static REAL: Realization = {
                let cfg = common::config("d3_2_k2_4z");
                Realization::new(&cfg, auto_height(&emit_sr(&cfg))).unwrap()
            };
        }
        REAL.with(|real| {
            let space = cfg.space();
            let mu = RootSym::new(other, ostar, neg);
            let alpha = RootSym::plus(node).vector(&cfg);
            let h = real.cartan_image(node).unwrap();
            let j = space.pair(&alpha, &mu.vector(&cfg));
            let lhs = real.loop_algebra().bracket(&h, real.root_image(&mu)).unwrap();
            let rhs = real.root_image(&mu).scaled(Cyclotomic::from_q(j));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(!real.root_image(&mu).is_zero());
            Ok(())
        })?;
    }
}

#[test]
fn four_z_keeps_kappa_consistent() {
    for name in ["d3_2_k2_4z", "d3_2_k2_4z2"] {
        let cfg = common::config(name);
        let rep = erskit::unfold::verify_pi(&cfg, None).unwrap();
        assert!(rep.pass && rep.kappa_consistent && rep.pd3, "{name}");
        assert!(!rep.lambda_delta_literal, "{name}");
        assert!(!rep.kappa.is_zero());
    }
}
