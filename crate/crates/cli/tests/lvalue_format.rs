//! Round trips of the L-value table and cyclotomic JSON formats.

use eisterms::CyclotomicNumber;
use eisterms_cli::format::CycJson;
use eisterms_cli::lvalues::{parse_lvalues, write_lvalues};
use proptest::prelude::*;

fn cyc() -> impl Strategy<Value = CyclotomicNumber> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec((-50i64..50, 1i64..20), 0..6)).prop_map(
        |(order, parts)| {
            let coeffs: Vec<eisterms::Rational> =
                parts.into_iter().map(|(p, q)| eisterms::Rational::new(p.into(), q.into())).collect();
            CyclotomicNumber::from_poly(order, &coeffs)
        },
    )
}

proptest! {
    #[test]
    fn cyc_json_round_trip(x in cyc()) {
        let j = serde_json::to_string(&CycJson::from_cyc(&x)).unwrap();
        let back: CycJson = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back.to_cyc().unwrap(), x);
    }

    #[test]
    fn table_round_trip(values in prop::collection::vec((1i64..200, 1u32..6, cyc()), 0..8)) {
        let mut text = String::new();
        for (i, (d, k, v)) in values.iter().enumerate() {
            let j = serde_json::to_string(&CycJson::from_cyc(v)).unwrap();
            text.push_str(&format!("{d}\tchi{i}\t{k}\t{j}\n"));
        }
        let table = parse_lvalues(&text).unwrap();
        prop_assert_eq!(table.len(), values.len());
        let again = parse_lvalues(&write_lvalues(&table)).unwrap();
        prop_assert_eq!(write_lvalues(&again), write_lvalues(&table));
    }
}
