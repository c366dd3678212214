//! Cusp labels, the diamond action and Gauss-sum laws.

use eisterms::characters::{enumerate_characters, primitive_characters, DirichletCharacter};
use eisterms::cusps::{classify_cusp, diamond_on_cusp, diamond_on_label, enumerate_cusps_q, Mat2};
use eisterms::intmath::{gcd, modulo};
use eisterms::CyclotomicNumber;
use proptest::prelude::*;

/// `T^y L^z T^x` with `T = [[1, 1], [0, 1]]` and `L = [[1, 0], [N, 1]]`, an element of `Gamma_1(N)`.
fn gamma1(n: i64, x: i64, y: i64, z: i64) -> Mat2 {
    let t = |s: i64| Mat2::from_ints(1, s, 0, 1);
    t(y).mul(&Mat2::from_ints(1, 0, n * z, 1)).mul(&t(x))
}

proptest! {
    #[test]
    fn labels_are_gamma1_invariant(n in 1u64..40, idx in 0usize..64, x in -3i64..3, y in -3i64..3, z in -3i64..3) {
        let cl = enumerate_cusps_q(n).unwrap();
        let c = &cl[idx % cl.len()];
        let g = gamma1(n as i64, x, y, z);
        prop_assert_eq!(classify_cusp(&g.mul(&c.rep), n).unwrap(), c.label);
        let t = Mat2::from_ints(1, y, 0, 1);
        prop_assert_eq!(classify_cusp(&c.rep.mul(&t), n).unwrap(), c.label);
        let neg = Mat2::from_ints(-1, 0, 0, -1);
        prop_assert_eq!(classify_cusp(&neg.mul(&c.rep), n).unwrap(), c.label);
    }

    #[test]
    fn diamond_action_is_a_group_action(n in 2u64..40, u in 1u64..200, v in 1u64..200, idx in 0usize..64) {
        prop_assume!(gcd(u, n) == 1 && gcd(v, n) == 1);
        let cl = enumerate_cusps_q(n).unwrap();
        let l = cl[idx % cl.len()].label;
        let uv = (u * v) % n;
        let uv = if uv == 0 { n } else { uv };
        prop_assert_eq!(diamond_on_label(n, uv, &l), diamond_on_label(n, u, &diamond_on_label(n, v, &l)));
        prop_assert_eq!(diamond_on_cusp(n, u, &l).unwrap().1, diamond_on_label(n, u, &l));
        prop_assert_eq!(diamond_on_label(n, 1, &l), l);
    }

    #[test]
    fn characters_are_multiplicative(n in 1u64..60, j in 0u64..64, x in -200i64..200, y in -200i64..200) {
        let chars = enumerate_characters(n, None);
        let chi = &chars[(j as usize) % chars.len()];
        prop_assert_eq!(chi.value(x * y), &chi.value(x) * &chi.value(y));
        prop_assert_eq!(chi.value(x), chi.value(x + n as i64));
        if gcd(modulo(x, n), n) != 1 {
            prop_assert!(chi.value(x).is_zero());
        }
    }
}

#[test]
fn gauss_sum_laws() {
    for f in 1..=30u64 {
        for chi in primitive_characters(f) {
            let t = chi.gauss_sum();
            // tau(chi) tau(chi-bar) = chi(-1) f
            let lhs = &t * &chi.inverse().gauss_sum();
            let rhs = CyclotomicNumber::from_integer(1, f as i64).scale_int(chi.parity_sign());
            assert_eq!(lhs, rhs, "{chi}");
            // Galois conjugate: tau(chi-bar) = chi(-1) conj(tau(chi)).
            assert_eq!(chi.inverse().gauss_sum(), t.conj().scale_int(chi.parity_sign()), "{chi}");
        }
    }
}

#[test]
fn gauss_sums_multiply_over_coprime_conductors() {
    for (f1, f2) in [(3u64, 4u64), (4, 5), (3, 5), (5, 8), (7, 3), (4, 9)] {
        for c1 in primitive_characters(f1) {
            for c2 in primitive_characters(f2) {
                let n = f1 * f2;
                let prod = c1.induce(n).unwrap().mul(&c2.induce(n).unwrap());
                assert!(prod.is_primitive());
                let rhs = &(&c1.value(f2 as i64) * &c2.value(f1 as i64)) * &(&c1.gauss_sum() * &c2.gauss_sum());
                assert_eq!(prod.gauss_sum(), rhs, "{c1} {c2}");
            }
        }
    }
}

#[test]
fn labels_parse_back() {
    for n in 1..=30u64 {
        for chi in enumerate_characters(n, None) {
            assert_eq!(DirichletCharacter::parse(&chi.name()).unwrap(), chi);
        }
    }
}

#[test]
fn trivial_labels_with_modulus() {
    assert_eq!(DirichletCharacter::parse("1_6").unwrap(), DirichletCharacter::trivial(6));
    assert!(DirichletCharacter::parse("1_0").is_err());
    assert!(DirichletCharacter::parse("chi8").is_err());
}
