//! Constant-term laws at all cusps and Hecke operators on q-expansions.

use eisterms::characters::DirichletCharacter;
use eisterms::constant_terms::constant_term;
use eisterms::cusps::{diamond_matrix, enumerate_cusps_q, Mat2};
use eisterms::eisenstein::{defining_basis, jordan_basis, BasisElement, EisensteinLabel};
use eisterms::exact_arith::rat;
use eisterms::hecke_ordinary::{nebentypus, operators_commute, t_eigenvalue, up_action, HeckeOp, UpAction};
use eisterms::intmath::{gcd, is_prime};
use eisterms::CyclotomicNumber;
use proptest::prelude::*;

fn basis_at(n: u64, k: u32, j: usize) -> Option<BasisElement> {
    let b = defining_basis(n, k).ok()?;
    (!b.is_empty()).then(|| b[j % b.len()].clone())
}

fn nebentypus_of(e: &BasisElement, n: u64) -> DirichletCharacter {
    match e {
        BasisElement::Series(l) => l.eta.induce(n).unwrap().mul(&l.psi.induce(n).unwrap()),
        BasisElement::Difference { .. } => DirichletCharacter::trivial(n),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `-1` acts by `(-1)^k`; scalars and translations on the right act trivially.
    #[test]
    fn borel_sign_law(n in 1u64..16, k in 1u32..5, j in 0usize..32, idx in 0usize..32, x in -4i64..4, u in 1i64..4) {
        let Some(e) = basis_at(n, k, j) else { return Ok(()) };
        let cl = enumerate_cusps_q(n).unwrap();
        let a = &cl[idx % cl.len()].rep;
        let base = constant_term(&e, a).unwrap();
        let neg = constant_term(&e, &a.mul(&Mat2::from_ints(-1, 0, 0, -1))).unwrap();
        prop_assert_eq!(&neg, &base.scale_int(if k % 2 == 0 { 1 } else { -1 }));
        let b = Mat2::new(rat(u, 1), rat(x, 1), rat(0, 1), rat(u, 1));
        let scaled = constant_term(&e, &a.mul(&b)).unwrap();
        prop_assert_eq!(scaled, base);
    }

    /// `f | gamma = (eta psi)(d) f` for `gamma in Gamma_0(N)`.
    #[test]
    fn nebentypus_at_every_cusp(n in 2u64..16, k in 1u32..5, j in 0usize..32, idx in 0usize..32, s in 1i64..30) {
        let Some(e) = basis_at(n, k, j) else { return Ok(()) };
        let ni = n as i64;
        let d = 1 + s;
        prop_assume!(gcd(d as u64, n) == 1);
        let (g, x, y) = eisterms::intmath::ext_gcd(d, ni);
        prop_assume!(g == 1);
        // x d + y N = 1: gamma = [[x, -y], [N, d]].
        let gamma = Mat2::from_ints(x, -y, ni, d);
        let cl = enumerate_cusps_q(n).unwrap();
        let a = &cl[idx % cl.len()].rep;
        let eps = nebentypus_of(&e, n).value(d);
        prop_assert_eq!(constant_term(&e, &gamma.mul(a)).unwrap(), &eps * &constant_term(&e, a).unwrap());
    }

    /// Weight one: `E_1(eta, psi) | t` and `E_1(psi, eta) | t` agree at every cusp.
    #[test]
    fn weight_one_symmetry(f1 in prop::sample::select(vec![1u64, 3, 4, 5, 7, 8]), f2 in prop::sample::select(vec![1u64, 3, 4, 5]), i in 0u64..8, j in 0u64..8, t in 1u64..4) {
        let p1 = eisterms::characters::primitive_characters(f1);
        let p2 = eisterms::characters::primitive_characters(f2);
        prop_assume!(!p1.is_empty() && !p2.is_empty());
        // The weight-one evaluator needs coprime moduli.
        prop_assume!(gcd(f1, f2) == 1);
        let (eta, psi) = (p1[(i as usize) % p1.len()].clone(), p2[(j as usize) % p2.len()].clone());
        let Ok(l) = EisensteinLabel::new(eta.clone(), psi.clone(), 1, t) else { return Ok(()) };
        prop_assume!(l.check(None).is_ok());
        let r = EisensteinLabel::new(psi, eta, 1, t).unwrap();
        let (a, b) = (BasisElement::Series(l.clone()), BasisElement::Series(r));
        for c in enumerate_cusps_q(l.level()).unwrap() {
            prop_assert_eq!(constant_term(&a, &c.rep).unwrap(), constant_term(&b, &c.rep).unwrap());
        }
    }
}

/// `c_A(f | S(m)) = c_{alpha_m A}(f)` where `f | S(m) = (eta psi)(m) f`.
#[test]
fn diamond_compatibility() {
    let mut checked = 0;
    for n in 3..=15u64 {
        let cl = enumerate_cusps_q(n).unwrap();
        for k in 1..=4u32 {
            for e in defining_basis(n, k).unwrap() {
                let eps = nebentypus_of(&e, n);
                for mu in (2..n).filter(|&m| gcd(m, n) == 1) {
                    let alpha = diamond_matrix(n, mu).unwrap();
                    for c in &cl {
                        let moved = constant_term(&e, &alpha.mul(&c.rep)).unwrap();
                        // alpha_mu = mu gamma and scalars act trivially.
                        let expected = &eps.value(mu as i64) * &constant_term(&e, &c.rep).unwrap();
                        assert_eq!(moved, expected, "{e} N={n} mu={mu} at {}", c.label);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn hecke_operators_commute() {
    for (n, k) in [(6u64, 2u32), (6, 3), (12, 2), (12, 3), (15, 2), (20, 4), (7, 1), (12, 1)] {
        let mut ops = Vec::new();
        for q in [2u64, 3, 5, 7, 11, 13] {
            ops.push(if n % q == 0 { HeckeOp::U(q) } else { HeckeOp::T(q) });
        }
        for m in [5u64, 7, 11, 13] {
            if gcd(m, n) == 1 {
                ops.push(HeckeOp::S(m));
            }
        }
        assert!(operators_commute(n, k, &ops).unwrap(), "N={n} k={k}");
    }
}

/// Eigenvalues read off the matrices match the action on q-expansions up to norm 100.
#[test]
fn hecke_eigenvalues_on_q_expansions() {
    const BOUND: u64 = 100;
    for (n, k) in [(6u64, 2u32), (6, 3), (12, 2), (9, 3), (20, 2), (8, 1), (15, 1)] {
        for l in jordan_basis(n, k).unwrap() {
            let s = l.series();
            let eps = nebentypus(&l);
            for q in [2u64, 3, 5, 7] {
                if n % q != 0 {
                    let lam = t_eigenvalue(&l, q);
                    let qk = CyclotomicNumber::from_integer(1, (q as i64).pow(k - 1));
                    for m in 1..=BOUND / q {
                        let mut lhs = s.coefficient(q * m);
                        if m % q == 0 {
                            lhs = &lhs + &(&(&eps.value(q as i64) * &qk) * &s.coefficient(m / q));
                        }
                        assert_eq!(lhs, &lam * &s.coefficient(m), "T_{q} on {l} at n={m}");
                    }
                } else if is_prime(q) {
                    if let UpAction::Eigen(a) = up_action(&l, q) {
                        for m in 1..=BOUND / q {
                            assert_eq!(s.coefficient(q * m), &a * &s.coefficient(m), "U_{q} on {l} at n={m}");
                        }
                    }
                }
            }
        }
    }
}
