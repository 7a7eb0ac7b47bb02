//! Property tests: decode inverts encode everywhere, the stream format
//! round-trips arbitrary valid inputs deterministically, and cyclic shifts
//! compose.

use proptest::prelude::*;

use eucode::bitstream::{pack, unpack_bytes};
use eucode::codecs::{decode, encode};
use eucode::{Capacity, CodecParams, Codeword};

fn any_params() -> impl Strategy<Value = CodecParams> {
    prop_oneof![
        Just(CodecParams::classic_unary()),
        (1u16..=32).prop_map(CodecParams::spatial),
        (1u16..=32).prop_flat_map(|n| (Just(n), 1..=n)).prop_map(|(n, k)| CodecParams::spread(n, k)),
        (1u16..=32).prop_map(CodecParams::eu_ik),
        (2u16..=6)
            .prop_flat_map(|k| (k + 2..=k + 20, Just(k)))
            .prop_map(|(n, k)| CodecParams::eu_fk(n, k)),
    ]
}

fn value_range(params: &CodecParams) -> std::ops::RangeInclusive<u64> {
    match params.capacity().unwrap() {
        Capacity::Bounded(max) => 0..=max,
        Capacity::Unbounded => 0..=300,
    }
}

fn params_and_value() -> impl Strategy<Value = (CodecParams, u64)> {
    any_params().prop_flat_map(|params| {
        let range = value_range(&params);
        (Just(params), range)
    })
}

fn params_and_values() -> impl Strategy<Value = (CodecParams, Vec<u64>)> {
    any_params().prop_flat_map(|params| {
        let range = value_range(&params);
        (Just(params), proptest::collection::vec(range, 0..64))
    })
}

proptest! {
    #[test]
    fn decode_inverts_encode((params, value) in params_and_value()) {
        let word = encode(&params, value).unwrap();
        prop_assert_eq!(decode(&params, &word), Ok(value));
    }

    #[test]
    fn encode_is_injective((params, a) in params_and_value(), offset in 1u64..1000) {
        let range = value_range(&params);
        let b = a.checked_add(offset).filter(|b| range.contains(b));
        if let Some(b) = b {
            prop_assert_ne!(encode(&params, a).unwrap(), encode(&params, b).unwrap());
        }
    }

    #[test]
    fn stream_round_trips_and_is_deterministic((params, values) in params_and_values()) {
        let mut first = Vec::new();
        let written = pack(&params, &values, &mut first).unwrap();
        prop_assert_eq!(written as usize, first.len());
        let mut second = Vec::new();
        pack(&params, &values, &mut second).unwrap();
        prop_assert_eq!(&first, &second);
        let (got_params, got_values) = unpack_bytes(&first).unwrap();
        prop_assert_eq!(got_params, params);
        prop_assert_eq!(got_values, values);
    }

    #[test]
    fn cyclic_shifts_compose(bits in any::<u64>(), len in 1usize..=64, a in 0u64..200, b in 0u64..200) {
        let bits = if len == 64 { bits } else { bits & ((1u64 << len) - 1) };
        let word = Codeword::from_uint(bits, len);
        prop_assert_eq!(
            word.cyclic_shift_left(a).cyclic_shift_left(b),
            word.cyclic_shift_left(a + b)
        );
        prop_assert_eq!(word.cyclic_shift_left(0), word.clone());
        prop_assert_eq!(word.cyclic_shift_left(len as u64), word.clone());
        prop_assert_eq!(word.cyclic_shift_left(a).count_ones(), word.count_ones());
    }

    #[test]
    fn decode_agrees_with_table_membership(
        params in prop_oneof![
            (1u16..=10).prop_map(CodecParams::eu_ik),
            (2u16..=4).prop_flat_map(|k| (k + 2..=10, Just(k))).prop_map(|(n, k)| CodecParams::eu_fk(n, k)),
            (1u16..=10).prop_flat_map(|n| (Just(n), 1..=n)).prop_map(|(n, k)| CodecParams::spread(n, k)),
        ],
        bits in any::<u64>(),
    ) {
        let table = eucode::oracle::generate_table(&params).unwrap();
        let word = Codeword::from_uint(bits & ((1u64 << params.n) - 1), params.word_len());
        prop_assert_eq!(decode(&params, &word).ok(), table.lookup(&word));
    }
}
