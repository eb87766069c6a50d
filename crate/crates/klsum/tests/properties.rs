//! Property tests for the algebraic invariants: ring axioms in Z[zeta_p],
//! the Galois action, stabilizer structure, and the congruence lift.

use num_bigint::BigInt;
use proptest::prelude::*;

use klsum::arith;
use klsum::cyclotomic::CycInt;

const PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13];

fn arb_coeffs(p: u64) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-1000i64..=1000, (p - 1) as usize).prop_map(move |cs| {
        CycInt::from_coeffs(p, cs.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn arb_pair() -> impl Strategy<Value = (CycInt, CycInt)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| (arb_coeffs(p), arb_coeffs(p)))
}

fn arb_triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    prop::sample::select(PRIMES.to_vec())
        .prop_flat_map(|p| (arb_coeffs(p), arb_coeffs(p), arb_coeffs(p)))
}

fn arb_with_unit() -> impl Strategy<Value = (CycInt, u64)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| (arb_coeffs(p), 1..p))
}

fn arb_with_two_units() -> impl Strategy<Value = (CycInt, u64, u64)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| (arb_coeffs(p), 1..p, 1..p))
}

proptest! {
    #[test]
    fn addition_commutes((x, y) in arb_pair()) {
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn multiplication_commutes((x, y) in arb_pair()) {
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn multiplication_associates((x, y, z) in arb_triple()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn multiplication_distributes((x, y, z) in arb_triple()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn additive_inverse(x in prop::sample::select(PRIMES.to_vec()).prop_flat_map(arb_coeffs)) {
        prop_assert!((&x + &(-&x)).is_zero());
        let one = CycInt::one(x.p()).unwrap();
        prop_assert_eq!(&x * &one, x);
    }

    #[test]
    fn galois_is_additive((x, y) in arb_pair(), seed in 0u64..1 << 16) {
        let i = 1 + seed % (x.p() - 1).max(1);
        let lhs = x.checked_add(&y).unwrap().galois(i).unwrap();
        let rhs = x.galois(i).unwrap().checked_add(&y.galois(i).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_is_multiplicative((x, y) in arb_pair(), seed in 0u64..1 << 16) {
        let i = 1 + seed % (x.p() - 1).max(1);
        let lhs = x.checked_mul(&y).unwrap().galois(i).unwrap();
        let rhs = x.galois(i).unwrap().checked_mul(&y.galois(i).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_composition_is_the_group_law((x, i, j) in arb_with_two_units()) {
        let composed = x.galois(j).unwrap().galois(i).unwrap();
        let direct = x.galois(i * j % x.p()).unwrap();
        prop_assert_eq!(composed, direct);
    }

    #[test]
    fn stabilizer_is_a_subgroup((x, _) in arb_with_unit()) {
        let p = x.p();
        let stab = x.stabilizer();
        prop_assert!(stab.contains(&1));
        prop_assert_eq!((p - 1) % stab.len() as u64, 0);
        for &a in &stab {
            for &b in &stab {
                prop_assert!(stab.binary_search(&(a * b % p)).is_ok());
            }
            // Inverses: a^{p-2} mod p stays inside.
            let inv = arith::mod_pow(a, p - 2, p);
            prop_assert!(stab.binary_search(&inv).is_ok());
        }
    }

    #[test]
    fn label_matches_fixing_orders((x, i) in arb_with_unit()) {
        let p = x.p();
        let d = x.field_label().d();
        // sigma_i fixes x exactly when the order of i divides d.
        let mut order = 1u64;
        let mut power = i % p;
        while power != 1 {
            power = power * i % p;
            order += 1;
        }
        let fixes = x.galois(i).unwrap() == x;
        prop_assert_eq!(fixes, d % order == 0);
    }

    #[test]
    fn rationality_is_the_full_stabilizer((x, _) in arb_with_unit()) {
        prop_assert_eq!(x.rational_value().is_some(), x.field_label().d() == x.p() - 1);
        prop_assert_eq!(x.field_label().is_rational(), x.rational_value().is_some());
    }

    #[test]
    fn embedding_respects_ring_ops((x, y) in arb_pair()) {
        // Advisory check only: the float embedding tracks + to 1e-9 on
        // coefficients bounded by 1000, and * to 1e-9 relative to the
        // product's magnitude (its coefficients grow to ~1e7, which eats
        // absolute precision).
        let (xr, xi) = x.complex_embed(15);
        let (yr, yi) = y.complex_embed(15);
        let (sr, si) = x.checked_add(&y).unwrap().complex_embed(15);
        prop_assert!((sr - (xr + yr)).abs() < 1e-9);
        prop_assert!((si - (xi + yi)).abs() < 1e-9);
        let (pr, pi) = x.checked_mul(&y).unwrap().complex_embed(15);
        let scale = 1.0 + (pr.abs() + pi.abs());
        prop_assert!((pr - (xr * yr - xi * yi)).abs() < 1e-9 * scale);
        prop_assert!((pi - (xr * yi + xi * yr)).abs() < 1e-9 * scale);
    }

    #[test]
    fn lift_from_random_divisor_pairs(n in 1u64..5000, sel in 0usize..64, y in 1u64..5000) {
        let divs = arith::divisors(n);
        let m = divs[sel % divs.len()];
        if arith::gcd(y % m.max(1), m) == 1 || m == 1 {
            let x = klsum::congruence::lift_unit(n, m, y).unwrap();
            prop_assert_eq!(arith::gcd(x % n.max(1), n), 1);
            prop_assert_eq!(x % m, y % m);
        }
    }
}
