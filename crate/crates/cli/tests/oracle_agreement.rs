//! Closed-form constant terms agree exactly with the lattice-sum oracle.

use eisterms::characters::enumerate_characters;
use eisterms::constant_terms::{constant_term, eval_raised, GaussMode};
use eisterms::cusps::enumerate_cusps_q;
use eisterms::eisenstein::{defining_basis, EisensteinLabel};
use eisterms_cli::oracle;

fn sl2(m: &eisterms::cusps::Mat2) -> oracle::Sl2 {
    let g = m.to_ints().expect("integral representative");
    [g[0][0], g[0][1], g[1][0], g[1][1]]
}

#[test]
fn defining_basis_matches_oracle() {
    let mut checked = 0;
    for n in 1..=12u64 {
        let cl = enumerate_cusps_q(n).unwrap();
        for k in 1..=4u32 {
            for e in defining_basis(n, k).unwrap() {
                for c in &cl {
                    let v = constant_term(&e, &c.rep).unwrap();
                    let o = oracle::element_at(&e, sl2(&c.rep)).unwrap();
                    assert_eq!(v, o, "{e} at {} (N={n})", c.label);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 500, "only {checked} pairs");
}

#[test]
fn level_raised_formula_matches_oracle() {
    let mut checked = 0;
    for k in 1..=3u32 {
        for am in 1..=6u64 {
            for bm in 1..=6u64 {
                for chi in enumerate_characters(am, None) {
                    for psi in enumerate_characters(bm, None) {
                        for m in [1u64, 2, 3] {
                            let Ok(label) = EisensteinLabel::new(chi.clone(), psi.clone(), k, m) else { continue };
                            if label.check(None).is_err() || label.is_nonholomorphic() {
                                continue;
                            }
                            let n = label.level();
                            for c in enumerate_cusps_q(n).unwrap() {
                                let Ok(v) = eval_raised(&chi, &psi, k, m, &c.rep, GaussMode::Full) else { continue };
                                let o = oracle::label_at(&label, sl2(&c.rep)).unwrap();
                                assert_eq!(v, o, "{label} at {} (N={n})", c.label);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 200, "only {checked} pairs");
}

#[test]
fn oracle_agrees_off_the_stored_representatives() {
    // Every SL_2(Z) matrix with small first column, not only the stored ones.
    let e = EisensteinLabel::new(
        eisterms::characters::DirichletCharacter::parse("chi4").unwrap(),
        eisterms::characters::DirichletCharacter::trivial(1),
        3,
        3,
    )
    .unwrap();
    let elt = eisterms::eisenstein::BasisElement::Series(e);
    for a in -6i64..=6 {
        for c in -6i64..=6 {
            let Some(g) = oracle::complete(a, c) else { continue };
            let m = eisterms::cusps::Mat2::from_ints(g[0], g[1], g[2], g[3]);
            assert_eq!(constant_term(&elt, &m).unwrap(), oracle::element_at(&elt, g).unwrap(), "a={a} c={c}");
        }
    }
}
