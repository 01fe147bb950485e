use artinlab::coinvariants::{coinv_gr1n, gr1n_chain_triple};
use artinlab::deformation::{build_family, semicontinuity_experiment, verify_diagram_t, verify_diagram_zero};
use artinlab::extension::{
    convolve, tensor_triple, theorem_check, verify_free_extension, ExtensionTriple, RingMapSpec, TheoremOutcome,
};
use artinlab::fuzz::{random_free_extension, random_gorenstein, random_height_two};
use artinlab::jordan::{generic_jordan_type, hf_conjugate, lefschetz_certify, sample_rng, LefschetzMode, SampleMode};
use artinlab::{build_algebra, Dominance, Field, Polynomial};
use proptest::prelude::*;

fn q() -> Field {
    Field::Rationals
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tensor_triples_are_free(s1 in 0u64..1000, s2 in 0u64..1000) {
        let a = random_gorenstein(&mut sample_rng(s1, 1), q(), 2, 3).unwrap();
        let b = random_gorenstein(&mut sample_rng(s2, 2), q(), 2, 3).unwrap();
        let t = tensor_triple(&a, &b).unwrap();
        let r = verify_free_extension(&t).unwrap();
        prop_assert!(r.verdict, "{:?}", r.failures);
        prop_assert_eq!(t.c.hilbert().to_vec(), convolve(a.hilbert(), b.hilbert()));
    }

    #[test]
    fn dual_extensions_are_free(seed in 0u64..1000) {
        let inst = random_free_extension(&mut sample_rng(seed, 0), q(), 3, 3, 2).unwrap();
        let t = &inst.triple;
        prop_assert!(verify_free_extension(t).unwrap().verdict);
        prop_assert_eq!(t.c.hilbert().to_vec(), convolve(t.a.hilbert(), t.b.hilbert()));
    }

    #[test]
    fn free_extensions_dominate_tensor(seed in 0u64..1000) {
        let inst = random_free_extension(&mut sample_rng(seed, 7), q(), 3, 3, 2).unwrap();
        let r = theorem_check(&inst.triple, 5, seed).unwrap();
        prop_assert_ne!(r.outcome, TheoremOutcome::Falsified);
    }

    #[test]
    fn deformation_squares_commute(seed in 0u64..1000) {
        let inst = random_free_extension(&mut sample_rng(seed, 3), q(), 3, 3, 2).unwrap();
        let t = &inst.triple;
        let lb = if t.b.h(1) == 0 {
            t.b.zero()
        } else {
            generic_jordan_type(&t.b, SampleMode::LinearForms, 3, seed).unwrap().witness
        };
        let fam = build_family(t, &t.a.variable(0), &lb).unwrap();
        prop_assert!(verify_diagram_zero(&fam).holds);
        let ts: Vec<_> = [1, 2, -3].iter().map(|&x| q().from_i64(x)).collect();
        for x in &ts {
            prop_assert!(verify_diagram_t(&fam, x).unwrap().holds);
        }
        let semi = semicontinuity_experiment(&fam, &ts).unwrap();
        prop_assert!(!semi.falsified);
        prop_assert!(semi.entries.iter().all(|e| e.vs_l0 != Dominance::Less));
    }

    #[test]
    fn height_two_is_strong_lefschetz(seed in 0u64..1000) {
        let a = random_height_two(&mut sample_rng(seed, 0), q(), 5).unwrap();
        let g = generic_jordan_type(&a, SampleMode::LinearForms, 5, seed).unwrap();
        prop_assert_eq!(g.partition, hf_conjugate(a.hilbert()));
    }

    #[test]
    fn gorenstein_hilbert_is_symmetric(seed in 0u64..1000) {
        let a = random_gorenstein(&mut sample_rng(seed, 0), q(), 4, 4).unwrap();
        let h = a.hilbert();
        prop_assert!(h.iter().eq(h.iter().rev()));
    }

    #[test]
    fn small_gr1n_are_sl_and_free((r, n) in (1u32..=3, 1usize..=3).prop_filter("small", |&(r, n)| r.pow(n as u32) <= 9)) {
        let a = build_algebra(coinv_gr1n(r, n).unwrap()).unwrap();
        let fact: usize = (1..=n).product();
        prop_assert_eq!(a.dimension(), (r as usize).pow(n as u32) * fact);
        prop_assert!(lefschetz_certify(&a, LefschetzMode::Graded, 5, 0).unwrap().verdict);
        if n >= 2 {
            prop_assert!(verify_free_extension(&gr1n_chain_triple(r, n).unwrap()).unwrap().verdict);
        }
    }
}

#[test]
fn tampered_projection_is_rejected() {
    for seed in 0..10 {
        let inst = random_free_extension(&mut sample_rng(seed, 9), q(), 3, 3, 1).unwrap();
        let t = inst.triple;
        // send the extension variable to a fibre variable that is nonzero in B
        let Some(x) = (0..t.b.table().len()).find(|&i| !t.b.variable(i).is_zero()) else {
            continue;
        };
        let mut images = t.pi.images().to_vec();
        let last = images.len() - 1;
        images[last] = Polynomial::variable(t.b.table().clone(), q(), x);
        let pi = RingMapSpec::new(t.pi.source().clone(), t.pi.target().clone(), images).unwrap();
        let bad = ExtensionTriple::new(t.a, t.b, t.c, t.iota, pi).unwrap();
        assert!(!verify_free_extension(&bad).unwrap().verdict, "seed {seed}");
    }
}
