use num_bigint::BigInt;
use proptest::prelude::*;

use regclass::catalog::default_catalog;
use regclass::chartab::CharacterTable;
use regclass::gf::{Fe, Field};
use regclass::harness::{emit_report, parse_report, verify_lemma72, Config, Format};
use regclass::numtheory::{
    cyclotomic_u64, divisors, factorize, gcd, odd_partition_count, partition_count, split_p_part,
};
use regclass::perm::Perm;
use regclass::permgroup::{class_counts, p_part_split, ClassTable, PermGroup, DEFAULT_CAP};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=7).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=3).prop_map(move |g| PermGroup::new(n, g).unwrap())
    })
}

fn prime_power() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![
        2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256,
    ])
}

fn brute_partitions(n: u32, max: u32, odd: bool) -> u128 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n))
        .filter(|k| !odd || k % 2 == 1)
        .map(|k| brute_partitions(n - k, k, odd))
        .sum()
}

fn distinct_partitions(n: u32, max: u32) -> u128 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n))
        .map(|k| distinct_partitions(n - k, k - 1))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_equation_and_burnside(g in small_group()) {
        let t = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let n = t.group_order();
        prop_assert_eq!(n as u128, g.order());
        prop_assert_eq!(t.classes().iter().map(|c| c.size).sum::<u64>(), n);
        let elems = g.cayley_elements(n as usize + 1).unwrap();
        let mut fixed = 0;
        for c in t.classes() {
            prop_assert_eq!(n % c.size, 0);
            let cent = elems.iter().filter(|x| x.commutes_with(&c.rep)).count() as u64;
            prop_assert_eq!(c.size * cent, n);
            fixed += c.size * cent;
        }
        prop_assert_eq!(fixed, t.len() as u64 * n);
    }

    #[test]
    fn p_part_split_factors(g in (2usize..=12).prop_flat_map(perm)) {
        let m = g.order();
        for p in factorize(m.max(2)).primes() {
            let (a, b) = p_part_split(&g, p);
            let (mp, mq) = split_p_part(m, p);
            prop_assert_eq!(a.mul(&b), g.clone());
            prop_assert!(a.commutes_with(&b));
            prop_assert_eq!((a.order(), b.order()), (mp, mq));
        }
    }

    #[test]
    fn power_maps_compose(g in small_group(), a in 1i64..60, b in 1i64..60) {
        let t = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let e = t.exponent() as i64;
        prop_assume!(gcd(a as u64, e as u64) == 1 && gcd(b as u64, e as u64) == 1);
        let ma = t.power_class_map(a).unwrap();
        let mb = t.power_class_map(b).unwrap();
        let mab = t.power_class_map(a * b).unwrap();
        let composed: Vec<usize> = mb.iter().map(|&i| ma[i]).collect();
        prop_assert_eq!(composed, mab);
    }

    #[test]
    fn class_counts_within_bounds(g in small_group()) {
        let t = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        for p in factorize(t.group_order().max(2)).primes() {
            let c = class_counts(&t, p).unwrap();
            prop_assert!(c.k_p + c.k_p_prime <= c.k);
            prop_assert!(c.k_p_prime >= 1);
        }
    }

    #[test]
    fn character_table_size_and_degrees(g in small_group()) {
        let t = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let x = CharacterTable::compute(&t).unwrap();
        prop_assert_eq!(x.len(), t.len());
        prop_assert_eq!(x.degrees.iter().map(|&d| d * d).sum::<u64>(), t.group_order());
        prop_assert!(x.verify().is_ok());
    }

    #[test]
    fn field_axioms(q in prime_power(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::of_order(q).unwrap();
        let (a, b, c) = (Fe(a % q), Fe(b % q), Fe(c % q));
        prop_assert_eq!(f.mul(a, b), f.mul_poly(a, b));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if a != f.zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, q as u64 - 1), f.one());
        }
        let (_, k) = regclass::numtheory::prime_power(q as u64).unwrap();
        prop_assert_eq!(f.frobenius(a, k), a);
    }

    #[test]
    fn cyclotomic_product(n in 1u64..=40, q in 2u64..=16) {
        let prod: BigInt = divisors(n).into_iter().map(|d| cyclotomic_u64(d, q).unwrap()).product();
        prop_assert_eq!(prod, BigInt::from(q).pow(n as u32) - 1);
    }
}

#[test]
fn partition_counts_match_enumeration() {
    for n in 0..=30u32 {
        assert_eq!(
            partition_count(n as usize),
            brute_partitions(n, n, false),
            "p({n})"
        );
        assert_eq!(
            odd_partition_count(n as usize),
            brute_partitions(n, n, true),
            "p0({n})"
        );
        assert_eq!(
            odd_partition_count(n as usize),
            distinct_partitions(n, n),
            "Euler at {n}"
        );
    }
}

#[test]
fn class_tables_are_deterministic() {
    for e in default_catalog()
        .into_iter()
        .filter(|e| e.expected_order() <= 2000)
    {
        let g = e.build().unwrap().group;
        let a = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let b = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let key = |t: &ClassTable| {
            t.classes()
                .iter()
                .map(|c| (c.rep.clone(), c.size, c.order))
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b), "{e}");
    }
}

#[test]
fn report_round_trip() {
    let r = verify_lemma72(&Config::default());
    let bytes = emit_report(&r, Format::Json);
    let back = parse_report(&bytes).unwrap();
    assert_eq!(back, r);
    assert_eq!(emit_report(&back, Format::Json), bytes);
}
