mod common;

use common::{brute_force_iso_count, permuted_copy, random_diagram, random_pair, DIAGRAM_SIG};
use daggereq::diagram::{find_isos, is_isomorphism, iso_count, Diagram};
use daggereq::signature::Signature;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sig() -> Signature {
    Signature::parse(DIAGRAM_SIG).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn count_matches_brute_force(seed in any::<u64>()) {
        let sig = sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = random_pair(&sig, &mut rng, 4, 8);
        prop_assert_eq!(iso_count(&n, &m), brute_force_iso_count(&n, &m));
    }

    #[test]
    fn count_is_symmetric_and_reflexive(seed in any::<u64>()) {
        let sig = sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = random_pair(&sig, &mut rng, 5, 10);
        prop_assert_eq!(iso_count(&n, &m), iso_count(&m, &n));
        prop_assert!(iso_count(&n, &n) >= 1);
    }

    #[test]
    fn enumerated_isos_are_valid_sorted_and_distinct(seed in any::<u64>()) {
        let sig = sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = random_pair(&sig, &mut rng, 5, 10);
        let isos = find_isos(&n, &m, None);
        prop_assert_eq!(isos.len() as u64, iso_count(&n, &m));
        for iso in &isos {
            prop_assert!(is_isomorphism(&n, &m, iso));
        }
        for w in isos.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        let first = find_isos(&n, &m, Some(1));
        prop_assert_eq!(first.first(), isos.first());
    }

    #[test]
    fn relabeling_preserves_automorphism_count(seed in any::<u64>()) {
        let sig = sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut n = random_diagram(&sig, &mut rng, 5, 10);
        if seed % 2 == 0 {
            n.add_trivial_cycles(sig.object("B").unwrap(), 2);
        }
        let m = permuted_copy(&n, &mut rng);
        prop_assert_eq!(iso_count(&n, &m), iso_count(&n, &n));
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let sig = sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut n = random_diagram(&sig, &mut rng, 5, 10);
        n.add_trivial_cycles(sig.object("A").unwrap(), (seed % 3) as usize);
        let text = n.display(&sig).to_string();
        let back = Diagram::parse(&text, &sig).unwrap();
        prop_assert_eq!(back, n);
    }

    #[test]
    fn mirror_is_an_involution(seed in any::<u64>()) {
        let sig = sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_diagram(&sig, &mut rng, 5, 10);
        let m = n.mirror(&sig);
        m.validate(&sig).unwrap();
        prop_assert!(iso_count(&n, &m.mirror(&sig)) >= 1);
    }
}

#[test]
fn distinct_labels_have_only_the_identity() {
    let sig = sig();
    let src = "\
box p : h
box q : k
box r : g
wire x : A from p.out1 to q.in1
wire y : A from q.out1 to r.in1
wire z : B from r.out1 to r.in2
wire v : A from r.out2 to p.in1
";
    let n = Diagram::parse(src, &sig).unwrap();
    assert_eq!(iso_count(&n, &n), 1);
    let isos = find_isos(&n, &n, None);
    assert_eq!(isos[0].boxes, vec![0, 1, 2]);
    assert_eq!(isos[0].wires, vec![0, 1, 2, 3]);
    assert!(Diagram::parse(&src.replace("r.in2", "r.in3"), &sig).is_err());
    assert!(Diagram::parse(&src.replace("r.in2", "r.in1"), &sig).is_err());
    assert!(Diagram::parse(&src.replace("wire v : A from r.out2 to p.in1\n", ""), &sig).is_err());
}

#[test]
fn unrelated_diagrams_are_not_isomorphic() {
    let sig = sig();
    let loop_h = Diagram::parse("box b1 : h\nwire w1 : A from b1.out1 to b1.in1\n", &sig).unwrap();
    let loop_k = Diagram::parse("box b1 : k\nwire w1 : A from b1.out1 to b1.in1\n", &sig).unwrap();
    assert_eq!(iso_count(&loop_h, &loop_k), 0);
    assert_eq!(iso_count(&loop_h, &loop_h), 1);
    let mut with_cycle = loop_h.clone();
    with_cycle.add_trivial_cycles(sig.object("A").unwrap(), 1);
    assert_eq!(iso_count(&loop_h, &with_cycle), 0);
}
