mod common;

use common::check_minimal_edge;
use maxmin_core::Rational;
use proptest::prelude::*;

#[test]
fn fixed_neighbourhoods_match_exhaustive_search() {
    let cases: Vec<(Vec<u64>, u32, u32, Rational)> = vec![
        (vec![5, 4, 3, 2, 1], 0b11111, 0, Rational::from_integer(7)),
        (vec![5, 4, 3, 2, 1], 0b11111, 0b00001, Rational::from_integer(7)),
        (vec![6, 6, 6], 0b111, 0, Rational::new(13, 2)),
        (vec![1; 12], 0xfff, 0b1010_1010_1010, Rational::from_integer(6)),
        (vec![1; 12], 0xfff, 0b1010_1010_1010, Rational::from_integer(7)),
        (vec![10, 1, 1, 1], 0b1110, 0, Rational::from_integer(2)),
        (vec![0, 3, 0, 4], 0b1111, 0, Rational::from_integer(7)),
        (vec![7], 0b1, 0, Rational::new(1, 3)),
        (vec![9, 8, 7, 6, 5, 4, 3, 2, 1, 1, 1, 1], 0xfff, 0, Rational::new(100, 3)),
    ];
    for (values, adj, forb, t) in cases {
        check_minimal_edge(&values, adj, forb, t).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn random_neighbourhoods_match_exhaustive_search(
        values in prop::collection::vec(0u64..20, 1..=12),
        adjacency in any::<u32>(),
        forbidden in any::<u32>(),
        num in 1i128..120,
        den in 1i128..4,
    ) {
        let keep = (1u32 << values.len()) - 1;
        let result = check_minimal_edge(&values, adjacency & keep, forbidden & keep & (forbidden >> 3), Rational::new(num, den));
        prop_assert!(result.is_ok(), "{}", result.unwrap_err());
    }
}
