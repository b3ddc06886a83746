mod common;

use common::{TermGen, DIAGRAM_SIG, TERM_SIG};
use daggereq::diagram::{compile, iso_count};
use daggereq::signature::Signature;
use daggereq::term::{close_term, parse_term, type_check, Term};
use daggereq::{decide_equal, Verdict};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_term(sig: &Signature, seed: u64, depth: u32) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gen = TermGen { sig, rng: &mut rng };
    let dom = gen.random_sort(2);
    gen.gen(&dom, depth).0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let sig = Signature::parse(TERM_SIG).unwrap();
        let t = random_term(&sig, seed, 4);
        let text = t.display(&sig).to_string();
        let back = parse_term(&text, &sig).unwrap();
        prop_assert_eq!(back, t, "{}", text);
    }

    #[test]
    fn dagger_swaps_type(seed in any::<u64>()) {
        let sig = Signature::parse(TERM_SIG).unwrap();
        let t = random_term(&sig, seed, 3);
        let (dom, cod) = type_check(&t, &sig).unwrap();
        let (ddom, dcod) = type_check(&Term::dagger(t), &sig).unwrap();
        prop_assert_eq!((ddom, dcod), (cod, dom));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rebracketing_preserves_diagram(seed in any::<u64>(), compact in any::<bool>()) {
        let sig = Signature::parse(if compact { TERM_SIG } else { DIAGRAM_SIG }).unwrap();
        let t = random_term(&sig, seed, 3);
        let closure = close_term(&t, &sig).unwrap();
        let csig = &closure.signature;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut gen = TermGen { sig: csig, rng: &mut rng };
        let moved = gen.perturb(&closure.term);
        let tr = csig.int_translate();
        let a = compile(&closure.term, csig, &tr).unwrap();
        let b = compile(&moved, csig, &tr).unwrap();
        prop_assert!(iso_count(&a, &b) >= 1, "{} vs {}", closure.term.display(csig), moved.display(csig));
    }

    #[test]
    fn dagger_compiles_to_mirror(seed in any::<u64>()) {
        let sig = Signature::parse(TERM_SIG).unwrap();
        let t = random_term(&sig, seed, 3);
        let closure = close_term(&t, &sig).unwrap();
        let csig = &closure.signature;
        let tr = csig.int_translate();
        let d = compile(&closure.term, csig, &tr).unwrap();
        let dd = compile(&Term::dagger(closure.term.clone()), csig, &tr).unwrap();
        let mirror = d.mirror(&tr.signature);
        let labels = |x: &daggereq::Diagram| x.boxes.iter().map(|b| b.label).collect::<Vec<_>>();
        prop_assert_eq!(labels(&dd), labels(&mirror));
        prop_assert!(iso_count(&dd, &mirror) >= 1);
        prop_assert_eq!(dd.trivial_cycles, mirror.trivial_cycles);
    }
}

#[test]
fn trace_of_identity_is_a_trivial_cycle() {
    let sig = Signature::parse("object A\n").unwrap();
    let t = parse_term("tr[A](id[A])", &sig).unwrap();
    let d = compile(&t, &sig, &sig.int_translate()).unwrap();
    assert_eq!(d.box_count(), 0);
    assert_eq!(d.wire_count(), 0);
    assert_eq!(d.trivial_cycles.get(&sig.object("A").unwrap()), Some(&1));
}

#[test]
fn decide_equal_is_an_equivalence() {
    // Closed terms built from a small pool, so that equal pairs occur.
    let sig = Signature::parse(
        "object A\nmorphism h : A -> A\nmorphism k : A -> A\nmorphism s : I -> A\n",
    )
    .unwrap();
    let pool = [
        "tr[A](h ; k)",
        "tr[A](k ; h)",
        "tr[A](h) x tr[A](k)",
        "tr[A](k) x tr[A](h)",
        "s ; h ; dagger(s)",
        "s ; dagger(dagger(h)) ; id[A] ; dagger(s)",
        "s ; dagger(h) ; dagger(s)",
        "dagger(s ; h ; dagger(s))",
        "tr[A](id[A])",
        "tr[A](tr[A](sym[A, A] ; (h x k))) ; id[I]",
        "tr[A](h ; k) x tr[A](id[A])",
        "tr[A](tr[A](sym[A, A] ; (k x h)))",
        "id[I]",
    ];
    let terms: Vec<Term> = pool.iter().map(|s| parse_term(s, &sig).unwrap()).collect();
    let n = terms.len();
    let mut eq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            eq[i][j] = decide_equal(&terms[i], &terms[j], &sig).unwrap().verdict == Verdict::Equal;
        }
    }
    let mut classes = 0;
    for i in 0..n {
        assert!(eq[i][i], "{} not equal to itself", pool[i]);
        if (0..i).all(|j| !eq[i][j]) {
            classes += 1;
        }
        for j in 0..n {
            assert_eq!(eq[i][j], eq[j][i], "{} / {}", pool[i], pool[j]);
            for k in 0..n {
                if eq[i][j] && eq[j][k] {
                    assert!(eq[i][k], "{} / {} / {}", pool[i], pool[j], pool[k]);
                }
            }
        }
    }
    assert!(eq[0][1], "trace is cyclic");
    assert!(eq[2][3]);
    assert!(eq[4][5]);
    assert!(!eq[4][6]);
    assert!(eq[6][7], "dagger of a scalar conjugates the inner box");
    assert!(eq[0][9]);
    assert!(classes > 3 && classes < n);
}
