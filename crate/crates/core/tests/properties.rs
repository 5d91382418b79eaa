mod common;

use common::*;
use dejean::carpi::{carpi_params, MorphismTable};
use dejean::kernel::{
    generate_kernel_avoiding, in_kernel, is_kernel_repetition, kernel_periods,
    satisfies_length_bound, scan_kernel_repetitions,
};
use dejean::pansiot::{find_condition_i_factor, gamma, is_k_stabilizing, max_stabilized};
use dejean::perms::{compose, pansiot_generator, phi, prefix_table, Permutation};
use dejean::words::{
    exponent_of, has_factor_exceeding, max_exponent_factor, smallest_period, Rational,
};
use dejean::{BinaryWord, Word};
use proptest::prelude::*;

fn word_over(sigma: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1..=sigma, 1..=max_len)
}

fn bits(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..=1, 0..=max_len)
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

// ---- words ----

#[test]
fn smallest_period_matches_brute_force_exhaustively() {
    // Every word of length <= 10 over 3 letters.
    for len in 1..=10u32 {
        for code in 0..3usize.pow(len) {
            let w: Vec<u8> = (0..len).map(|i| (code / 3usize.pow(i) % 3) as u8).collect();
            assert_eq!(smallest_period(&w).unwrap(), brute_period(&w), "{w:?}");
        }
    }
}

#[test]
fn examples_from_brute_force() {
    assert_eq!(brute_period(b"abcab"), 3);
    assert_eq!(brute_max_exponent(b"0011"), (0, 2, 1));
    assert_eq!(brute_max_exponent(b"0110110"), (0, 7, 3));
    assert_eq!(brute_first_exceeding(b"0101", 27, 26), Some((0, 3, 2)));
    assert_eq!(brute_first_exceeding(b"010", 3, 2), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn exponent_bounds(w in word_over(3, 40)) {
        let e = exponent_of(&w).unwrap();
        prop_assert!(e >= Rational::from_integer(1));
        prop_assert!(e <= Rational::from_integer(w.len() as i64));
        let single_letter = w.iter().all(|&a| a == w[0]);
        prop_assert_eq!(e == Rational::from_integer(w.len() as i64), single_letter);
    }

    #[test]
    fn max_exponent_dominates_every_factor(w in word_over(3, 24)) {
        let (best, witness) = max_exponent_factor(&w).unwrap();
        prop_assert_eq!(witness.exponent, best);
        for s in 0..w.len() {
            for e in s + 1..=w.len() {
                prop_assert!(exponent_of(&w[s..e]).unwrap() <= best);
            }
        }
        let (s, l, q) = brute_max_exponent(&w);
        prop_assert_eq!((witness.start, witness.length, witness.period), (s, l, q));
    }

    #[test]
    fn exceeding_iff_max_above(w in word_over(2, 30), num in 1i64..12, den in 1i64..12) {
        prop_assume!(num >= den);
        let tau = Rational::new(num, den);
        let (best, _) = max_exponent_factor(&w).unwrap();
        let hit = has_factor_exceeding(&w, tau).unwrap();
        prop_assert_eq!(hit.is_none(), best <= tau);
        let brute = brute_first_exceeding(&w, tau.numerator(), tau.denominator());
        prop_assert_eq!(hit.map(|h| (h.start, h.length, h.period)), brute);
    }

    #[test]
    fn word_text_round_trip(w in word_over(9, 30)) {
        let word = Word::new(w, 9).unwrap();
        prop_assert_eq!(Word::parse(&word.to_string(), 9).unwrap(), word);
    }
}

// ---- perms ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn associativity(a in permutation(9), b in permutation(9), c in permutation(9)) {
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_laws(p in permutation(12)) {
        prop_assert!(compose(&p, &p.inverse()).unwrap().is_identity());
        prop_assert!(compose(&p.inverse(), &p).unwrap().is_identity());
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        let images = p.images();
        let composed = compose(&p, &p).unwrap().images();
        prop_assert_eq!(composed, compose_tables(&images, &images));
    }

    #[test]
    fn phi_is_a_morphism(u in bits(40), v in bits(40), n in 2usize..20) {
        let u = BinaryWord::new(u).unwrap();
        let v = BinaryWord::new(v).unwrap();
        let whole = phi(&u.concat(&v), n).unwrap();
        prop_assert_eq!(whole.clone(), compose(&phi(&u, n).unwrap(), &phi(&v, n).unwrap()).unwrap());
        prop_assert_eq!(whole.images(), phi_by_cycles(u.concat(&v).bits(), n));
    }

    #[test]
    fn factor_images_match_scratch(v in bits(64), n in 2usize..12) {
        let v = BinaryWord::new(v).unwrap();
        let t = prefix_table(&v, n).unwrap();
        prop_assert_eq!(t.rows(), v.len() + 1);
        for i in 0..=v.len() {
            for j in i..=v.len() {
                let direct = phi(&v.factor(i, j).unwrap(), n).unwrap();
                prop_assert_eq!(t.factor_image(i, j).unwrap(), direct);
            }
        }
    }
}

#[test]
fn generator_orders() {
    for n in 2..=40 {
        for (bit, order) in [(0u8, n - 1), (1u8, n)] {
            let g = pansiot_generator(n, bit).unwrap();
            let mut power = g.clone();
            for step in 1..order {
                assert!(!power.is_identity(), "n={n} bit={bit} step={step}");
                power = compose(&power, &g).unwrap();
            }
            assert!(power.is_identity(), "n={n} bit={bit}");
        }
    }
}

// ---- pansiot ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn gamma_shape(v in bits(300), n in 3usize..32) {
        let v = BinaryWord::new(v).unwrap();
        let g = gamma(&v, n).unwrap();
        prop_assert_eq!(g.len(), v.len());
        prop_assert!(g.letters().iter().all(|&a| (1..=n as u8).contains(&a)));
        prop_assert!(g.letters().windows(2).all(|p| p[0] != p[1]));
        // The i-th letter is carried to position 1 by phi of the i-th prefix.
        for (i, &a) in g.letters().iter().enumerate() {
            let table = phi_by_cycles(&v.bits()[..=i], n);
            prop_assert_eq!(apply(&table, a as usize), 1);
        }
    }

    #[test]
    fn stab_nesting(u in bits(60), n in 2usize..12) {
        let u = BinaryWord::new(u).unwrap();
        let top = max_stabilized(&phi(&u, n).unwrap());
        for k in 1..=n {
            let stab = is_k_stabilizing(&u, n, k).unwrap();
            prop_assert_eq!(stab, top >= k);
            if stab {
                for i in 1..k {
                    prop_assert!(is_k_stabilizing(&u, n, i).unwrap());
                }
            }
        }
    }
}

#[test]
fn gamma_at_two_letters_can_repeat() {
    // phi(0) is the identity when n = 2.
    let g = gamma(&BinaryWord::parse("00").unwrap(), 2).unwrap();
    assert_eq!(g.letters(), &[1, 1]);
}

#[test]
fn condition_i_brute_force_small() {
    // Compare against a from-scratch scan of every factor and every k.
    let n = 5;
    for code in 0..(1u32 << 12) {
        let v: Vec<u8> = (0..12).map(|i| ((code >> i) & 1) as u8).collect();
        let word = BinaryWord::new(v.clone()).unwrap();
        let mut expected = None;
        'outer: for s in 0..v.len() {
            for e in s + 1..=v.len() {
                let table = phi_by_cycles(&v[s..e], n);
                let fixed = (1..=n)
                    .take_while(|&x| table[x - 1] == x)
                    .count()
                    .min(n - 1);
                let len = e - s;
                if (1..=fixed).any(|k| len < k * (n - 1)) {
                    expected = Some((s, len, fixed));
                    break 'outer;
                }
            }
        }
        let got = find_condition_i_factor(&word, n)
            .unwrap()
            .map(|f| (f.start, f.length, f.k));
        assert_eq!(got, expected, "{word}");
    }
}

#[test]
fn single_f_images_have_no_short_stabilizers() {
    for n in 27..=29 {
        let table = MorphismTable::for_degree(n).unwrap();
        for image in table.images() {
            assert_eq!(find_condition_i_factor(image, n).unwrap(), None, "n={n}");
        }
    }
}

// ---- carpi ----

#[test]
fn morphism_structure_across_degrees() {
    for n in 9..=60 {
        let params = carpi_params(n).unwrap();
        let table = MorphismTable::new(params.clone());
        assert_eq!(table.images().len(), params.m);
        let y = params.y.bits();
        assert_eq!(y.len(), n - 1);
        assert_eq!(*y.last().unwrap(), 1);
        assert!(y.windows(2).all(|p| p[0] != p[1]));
        assert!(y.ends_with(params.x.bits()));
        assert_eq!(params.x.len(), n - 1 - 6 * params.m);
        let mut head = y.repeat(params.p);
        head.extend_from_slice(params.x.bits());
        for image in table.images() {
            assert_eq!(image.len(), (params.p + 1) * (n - 1));
            assert!(image.bits().starts_with(&head));
        }
    }
}

// ---- kernel ----

fn a4_word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    // Skewed letter weights make kernel repetitions common.
    prop_oneof![
        prop::collection::vec(1u8..=4, 1..=max_len),
        prop::collection::vec(prop_oneof![4 => Just(1u8), 1 => Just(2u8)], 1..=max_len),
        prop::collection::vec(1u8..=2, 1..=max_len),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn scanner_matches_brute_force(w in a4_word(28), n in 2usize..40) {
        let word = Word::new(w.clone(), 4).unwrap();
        let got: Vec<_> = scan_kernel_repetitions(&word, n, 4)
            .unwrap()
            .into_iter()
            .map(|k| (k.start, k.length, k.q))
            .collect();
        prop_assert_eq!(got, brute_kernel_scan(&w, n, 4));
    }

    #[test]
    fn kernel_closure(u in a4_word(30), v in a4_word(30)) {
        let u = Word::new(u, 4).unwrap();
        let v = Word::new(v, 4).unwrap();
        let mut uv = u.letters().to_vec();
        uv.extend_from_slice(v.letters());
        let uv = Word::new(uv, 4).unwrap();
        if in_kernel(&u, 4).unwrap() && in_kernel(&v, 4).unwrap() {
            prop_assert!(in_kernel(&uv, 4).unwrap());
        }
    }

    #[test]
    fn kernel_repetition_is_monotone_in_n(w in a4_word(24)) {
        let word = Word::new(w, 4).unwrap();
        for q in kernel_periods(&word, 4).unwrap() {
            let mut was = false;
            for n in 27..=33 {
                let now = satisfies_length_bound(n, word.len(), q);
                prop_assert!(!was || now, "q={} n={}", q, n);
                was = now;
            }
        }
        // Larger n flags at least as much.
        let small = is_kernel_repetition(&word, 27, 4).unwrap().is_some();
        let large = is_kernel_repetition(&word, 33, 4).unwrap().is_some();
        prop_assert!(!small || large);
    }

    #[test]
    fn fourth_powers_are_kernel_repetitions(prefix in a4_word(8), a in 1u8..=4, n in 2usize..60) {
        let mut w = prefix;
        w.extend([a; 4]);
        let word = Word::new(w, 4).unwrap();
        prop_assert!(!scan_kernel_repetitions(&word, n, 4).unwrap().is_empty());
    }
}

#[test]
fn generated_words_certify_themselves() {
    for seed in 0..8 {
        for n in 27..=32 {
            let w = generate_kernel_avoiding(4, n, 150, seed).unwrap();
            assert_eq!(w.len(), 150);
            assert!(
                scan_kernel_repetitions(&w, n, 4).unwrap().is_empty(),
                "seed={seed} n={n}"
            );
            assert_eq!(w, generate_kernel_avoiding(4, n, 150, seed).unwrap());
        }
    }
    let short = generate_kernel_avoiding(3, 30, 40, 1).unwrap();
    let brute = brute_kernel_scan(short.letters(), 30, 3);
    assert!(brute.is_empty());
}
