//! Real quadratic fields: stratum counts against explicit enumeration.

use eisterms::base_field::{BaseField, Ideal};
use eisterms::cusps::{cusp_count, enumerate_cusps_quadratic, strata};
use eisterms::Error;

#[test]
fn enumeration_matches_stratum_counts() {
    for d in [5i64, 8, 12, 13] {
        let field = BaseField::parse(&d.to_string()).unwrap();
        let BaseField::Quadratic(f) = field else { panic!("{d} is not quadratic") };
        for n in 1..=6u64 {
            let level = field.ideal_from_int(n);
            let Ideal::Quadratic(q) = level else { unreachable!() };
            let cl = enumerate_cusps_quadratic(f, &q).unwrap();
            assert_eq!(cl.len() as u64, cusp_count(&field, &level).unwrap(), "D={d} N={n}");
            let total: u64 = strata(&field, &level).unwrap().iter().map(|s| s.1).sum();
            assert_eq!(total, cl.len() as u64, "D={d} N={n}");
        }
    }
}

#[test]
fn class_number_two_is_refused_for_enumeration() {
    let field = BaseField::parse("40").unwrap();
    let BaseField::Quadratic(f) = field else { panic!() };
    let Ideal::Quadratic(q) = field.ideal_from_int(2) else { unreachable!() };
    assert!(matches!(enumerate_cusps_quadratic(f, &q), Err(Error::Unsupported(_))));
    assert!(cusp_count(&field, &field.ideal_from_int(2)).unwrap() > 0);
}
