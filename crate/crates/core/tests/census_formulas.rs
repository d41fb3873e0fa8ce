use gf2_roots::census::{
    closed_form_terms, ekhad_closed_form, ekhad_closed_form_in, recurrence_table, recurrence_table_in,
    stated_summand_range, summand_range_check, unified_closed_form, unified_closed_form_in,
};
use gf2_roots::{Count, RootFamily};
use num_traits::Zero;

// Totals 1..6 are brute-force counts (see rootsets_oracle.rs and the
// acceptance suite); 28800 is the closed form at n = 7.
const TOTALS: [u64; 7] = [1, 2, 6, 28, 192, 1952, 28800];

#[test]
fn frozen_totals() {
    let table = recurrence_table(RootFamily::CholeskyZero, 7).unwrap();
    let totals: Vec<Count> = table.totals();
    assert_eq!(totals, TOTALS.map(Count::from).to_vec());
    for (i, &t) in TOTALS.iter().enumerate() {
        assert_eq!(ekhad_closed_form(i + 1).unwrap(), Count::from(t));
        assert_eq!(unified_closed_form(i + 1).unwrap(), Count::from(t));
    }
}

#[test]
fn scalar_choices_agree() {
    let small = recurrence_table_in::<u64>(RootFamily::SqrtZero, 14).unwrap();
    let wide = recurrence_table_in::<u128>(RootFamily::SqrtZero, 14).unwrap();
    let big = recurrence_table(RootFamily::SqrtZero, 14).unwrap();
    for n in 1..=14 {
        for r in 0..=n {
            assert_eq!(u128::from(small.get(n, r)), wide.get(n, r));
            assert_eq!(Count::from(wide.get(n, r)), big.get(n, r));
        }
    }
    for n in 1..=14 {
        assert_eq!(ekhad_closed_form_in::<i128>(n).unwrap(), unified_closed_form_in::<i128>(n).unwrap());
    }
}

#[test]
fn closed_forms_agree_through_two_hundred() {
    for n in 1..=200 {
        assert_eq!(ekhad_closed_form(n).unwrap(), unified_closed_form(n).unwrap(), "n = {n}");
    }
}

#[test]
fn recurrence_matches_closed_form_through_eighty() {
    let table = recurrence_table(RootFamily::SqrtZero, 80).unwrap();
    for n in 1..=80 {
        assert_eq!(table.total(n), unified_closed_form(n).unwrap(), "n = {n}");
    }
    assert_eq!(table.first_unexpected_nonzero(), None);
}

#[test]
fn n_twenty_needs_big_integers() {
    let total = recurrence_table(RootFamily::SqrtZero, 20).unwrap().total(20);
    assert!(total.bits() > 90);
    assert_eq!(total, unified_closed_form(20).unwrap());
    assert!(recurrence_table_in::<u64>(RootFamily::SqrtZero, 20).is_err());
}

#[test]
fn summand_window_through_two_hundred() {
    for n in 1..=200 {
        summand_range_check(n).unwrap();
        // and the window itself is not vacuous: the sum over it is the total
        let (lo, hi) = stated_summand_range(n);
        let sum = closed_form_terms(n, lo..=hi)
            .unwrap()
            .into_iter()
            .fold(num_bigint::BigInt::zero(), |acc, t| acc + t.value);
        assert_eq!(sum.to_biguint().unwrap(), unified_closed_form(n).unwrap());
    }
}

#[test]
fn terms_can_be_negative() {
    let terms = closed_form_terms(6, -2..=2).unwrap();
    assert!(terms.iter().any(|t| t.value < num_bigint::BigInt::zero()));
}
