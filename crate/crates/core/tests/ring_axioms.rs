//! Ring axioms on random triples for every coefficient ring.

use crislat_core::arith::{CappedResidue, ExtField, LocalRational, PrimeField, Ring};
use num_bigint::BigInt;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIPLES: usize = 10_000;

fn check<R: Ring>(name: &str, mut sample: impl FnMut() -> R) {
    for i in 0..TRIPLES {
        let (a, b, c) = (sample(), sample(), sample());
        let zero = a.zero_like();
        let one = a.one_like();
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)), "{name} #{i}: + assoc");
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)), "{name} #{i}: * assoc");
        assert_eq!(a.add(&b), b.add(&a), "{name} #{i}: + comm");
        assert_eq!(a.mul(&b), b.mul(&a), "{name} #{i}: * comm");
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)), "{name} #{i}: distrib");
        assert_eq!(a.add(&zero), a, "{name} #{i}: zero");
        assert_eq!(a.mul(&one), a, "{name} #{i}: one");
        assert!(a.add(&a.neg()).is_zero(), "{name} #{i}: neg");
        assert_eq!(a.sub(&b), a.add(&b.neg()), "{name} #{i}: sub");
    }
}

#[test]
fn prime_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = PrimeField::new(11).unwrap();
    check("F_11", || f.elem(rng.next_u64() % 11));
}

#[test]
fn extension_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = ExtField::new(5, 3).unwrap();
    let q = f.order();
    check("F_125", || f.element(rng.next_u64() % q));
    // every nonzero element is invertible
    for t in 1..q {
        let x = f.element(t);
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }
}

#[test]
fn local_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    check("Z_(5)", || {
        let num = (rng.next_u64() % 2001) as i64 - 1000;
        let mut den = (rng.next_u64() % 60 + 1) as i64;
        if den % 5 == 0 {
            den += 1;
        }
        LocalRational::new(BigInt::from(num), BigInt::from(den), 5).unwrap()
    });
}

#[test]
fn capped_residues() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = 11u64.pow(6);
    check("Z/11^6", || CappedResidue::new(rng.next_u64() % m, 11, 6).unwrap());
}

#[test]
fn integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    check("Z", || BigInt::from(rng.next_u64() as i64) * BigInt::from(rng.next_u32()));
}
