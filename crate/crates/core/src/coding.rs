//! Pairing and coding helpers shared by the program enumeration and the
//! Baire-space name machinery.
//!
//! All decoders are total on arbitrary naturals, so any natural can be read
//! back as a list, an integer, or a dyadic without failure. Encoders are
//! exact inverses on canonical values.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::Dyadic;

/// Unbounded natural, the value and position space of Baire-space names.
pub type Nat = BigUint;

pub fn nat(v: u64) -> Nat {
    Nat::from(v)
}

/// Cantor pairing `<a, b> = (a+b)(a+b+1)/2 + b`.
pub fn pair(a: &Nat, b: &Nat) -> Nat {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

/// Inverse of [`pair`].
pub fn unpair(n: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8n+1) - 1)/2), the diagonal index.
    let w = ((n * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = n - t;
    let a = &w - &b;
    (a, b)
}

pub fn pair_u64(a: u64, b: u64) -> u64 {
    let s = a as u128 + b as u128;
    let v = s * (s + 1) / 2 + b as u128;
    u64::try_from(v).expect("pair_u64 overflow; use the BigUint pairing")
}

pub fn unpair_u64(n: u64) -> (u64, u64) {
    let (a, b) = unpair(&nat(n));
    (a.to_u64().unwrap(), b.to_u64().unwrap())
}

/// List coding: `[] -> 0`, `h:t -> <h, code(t)> + 1`.
pub fn encode_list(items: &[Nat]) -> Nat {
    let mut code = Nat::zero();
    for item in items.iter().rev() {
        code = pair(item, &code) + 1u32;
    }
    code
}

/// Inverse of [`encode_list`]; total because the tail code strictly
/// decreases.
pub fn decode_list(n: &Nat) -> Vec<Nat> {
    let mut items = Vec::new();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (head, tail) = unpair(&(rest - 1u32));
        items.push(head);
        rest = tail;
    }
    items
}

pub fn encode_list_u64(items: &[u64]) -> u64 {
    let nats: Vec<Nat> = items.iter().map(|&v| nat(v)).collect();
    encode_list(&nats)
        .to_u64()
        .expect("encode_list_u64 overflow; use the BigUint coding")
}

pub fn decode_list_u64(n: u64) -> Vec<u64> {
    decode_list(&nat(n))
        .into_iter()
        .map(|v| v.to_u64().unwrap())
        .collect()
}

/// ZigZag coding of signed integers: `0, -1, 1, -2, 2, ...`.
pub fn encode_int(i: &BigInt) -> Nat {
    if i.sign() == num_bigint::Sign::Minus {
        let m: BigUint = (-i).to_biguint().unwrap();
        m * 2u32 - 1u32
    } else {
        i.to_biguint().unwrap() * 2u32
    }
}

pub fn decode_int(n: &Nat) -> BigInt {
    if (n % 2u32).is_zero() {
        BigInt::from(n / 2u32)
    } else {
        -BigInt::from((n + 1u32) / 2u32)
    }
}

/// Dyadic coding: `0 -> 0`, otherwise `<zigzag(mantissa), zigzag(exponent)> + 1`.
pub fn encode_dyadic(d: &Dyadic) -> Nat {
    if d.is_zero() {
        return Nat::zero();
    }
    let m = encode_int(d.mantissa());
    let e = encode_int(&BigInt::from(d.exponent()));
    pair(&m, &e) + 1u32
}

/// Total decoder; the result is canonicalized. Exponents are clamped to
/// `±2^20` so a hostile code cannot demand astronomically wide shifts.
pub fn decode_dyadic(n: &Nat) -> Dyadic {
    if n.is_zero() {
        return Dyadic::zero();
    }
    let (m, e) = unpair(&(n - 1u32));
    let mantissa = decode_int(&m);
    let exponent = decode_int(&e)
        .to_i64()
        .unwrap_or(0)
        .clamp(-(1 << 20), 1 << 20);
    Dyadic::new(mantissa, exponent)
}

/// Binary-word coding by complete-tree node index: `eps -> 0`,
/// `w.b -> 2*code(w) + b + 1`.
pub fn encode_word(w: &[bool]) -> Nat {
    let mut code = Nat::zero();
    for &b in w {
        code = code * 2u32 + if b { 2u32 } else { 1u32 };
    }
    code
}

pub fn decode_word(n: &Nat) -> Vec<bool> {
    let mut bits = Vec::new();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let r = (&rest - 1u32) % 2u32;
        bits.push(r.is_one());
        rest = (rest - 1u32) / 2u32;
    }
    bits.reverse();
    bits
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_round_trip() {
        assert_eq!(unpair_u64(pair_u64(3, 5)), (3, 5));
        for n in 0..2000u64 {
            let (a, b) = unpair_u64(n);
            assert_eq!(pair_u64(a, b), n);
        }
    }

    #[test]
    fn pairing_injective_on_grid() {
        use std::collections::HashSet;
        let mut seen = HashSet::new();
        for a in 0..100u64 {
            for b in 0..100u64 {
                assert!(seen.insert(pair_u64(a, b)));
            }
        }
    }

    #[test]
    fn list_round_trip() {
        for items in [vec![], vec![0], vec![7, 0, 3], vec![1, 2, 3, 4, 5]] {
            assert_eq!(decode_list_u64(encode_list_u64(&items)), items);
        }
        // every natural decodes to something
        for n in 0..500u64 {
            let _ = decode_list_u64(n);
        }
    }

    #[test]
    fn int_round_trip() {
        for i in -50i64..50 {
            let b = BigInt::from(i);
            assert_eq!(decode_int(&encode_int(&b)), b);
        }
    }

    #[test]
    fn dyadic_round_trip() {
        for (m, e) in [(0i64, 0i64), (1, 0), (-5, -3), (7, 12), (-1, -40)] {
            let d = Dyadic::new(m, e);
            assert_eq!(decode_dyadic(&encode_dyadic(&d)), d);
        }
        for n in 0..300u64 {
            let _ = decode_dyadic(&nat(n));
        }
    }

    #[test]
    fn word_round_trip() {
        for n in 0..256u64 {
            let w = decode_word(&nat(n));
            assert_eq!(encode_word(&w), nat(n));
        }
        assert_eq!(encode_word(&[]), nat(0));
        assert_eq!(encode_word(&[false]), nat(1));
        assert_eq!(encode_word(&[true]), nat(2));
    }
}
