//! Baire-space names: total maps from naturals to naturals, with the coding
//! bridges that let reals, sequences, trees, and enclosure functions ride on
//! them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::ToPrimitive;

use crate::coding::{self, nat, Nat};
use crate::exact::{CReal, CRealSeq, Interval};
use crate::functions::CFunc;

/// A point of Baire space: a total, deterministic map position -> value.
/// Queries are memoized; names are cheap to clone and safe to share.
#[derive(Clone)]
pub struct Name {
    inner: Arc<NameInner>,
}

struct NameInner {
    at: Box<dyn Fn(&Nat) -> Nat + Send + Sync>,
    cache: Mutex<HashMap<Nat, Nat>>,
}

impl Name {
    pub fn from_fn(at: impl Fn(&Nat) -> Nat + Send + Sync + 'static) -> Name {
        Name {
            inner: Arc::new(NameInner {
                at: Box::new(at),
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn constant(value: Nat) -> Name {
        Name::from_fn(move |_| value.clone())
    }

    /// Finite prefix, default value beyond it.
    pub fn from_values(values: Vec<u64>, default: u64) -> Name {
        Name::from_fn(move |pos| {
            pos.to_usize()
                .and_then(|i| values.get(i).copied())
                .map(nat)
                .unwrap_or_else(|| nat(default))
        })
    }

    pub fn at(&self, pos: &Nat) -> Nat {
        if let Some(hit) = self.inner.cache.lock().unwrap().get(pos) {
            return hit.clone();
        }
        let v = (self.inner.at)(pos);
        self.inner
            .cache
            .lock()
            .unwrap()
            .entry(pos.clone())
            .or_insert_with(|| v.clone());
        v
    }

    pub fn at_u64(&self, pos: u64) -> Nat {
        self.at(&nat(pos))
    }

    /// Positionwise equality on an initial segment.
    pub fn agrees_with(&self, other: &Name, positions: u64) -> bool {
        (0..positions).all(|j| self.at_u64(j) == other.at_u64(j))
    }
}

/// Tupling of a countable family: position `<k, j>` carries the `k`-th
/// name's value at `j`.
pub fn seq_tupling(names: Arc<dyn Fn(u64) -> Name + Send + Sync>) -> Name {
    let cache: Mutex<HashMap<u64, Name>> = Mutex::new(HashMap::new());
    Name::from_fn(move |pos| {
        let (k, j) = coding::unpair(pos);
        let k = k.to_u64().expect("tupling index fits u64 at desk scale");
        let component = {
            let mut guard = cache.lock().unwrap();
            guard.entry(k).or_insert_with(|| names(k)).clone()
        };
        component.at(&j)
    })
}

/// Positionwise inverse of [`seq_tupling`].
pub fn seq_project(name: &Name, k: u64) -> Name {
    let name = name.clone();
    Name::from_fn(move |j| name.at(&coding::pair(&nat(k), j)))
}

pub fn tuple2(a: &Name, b: &Name) -> Name {
    let a = a.clone();
    let b = b.clone();
    seq_tupling(Arc::new(move |k| if k == 0 { a.clone() } else { b.clone() }))
}

/// Precision levels are capped: names answer arbitrarily deep queries, but
/// the realizers behind them only certify up to here.
pub const LEVEL_CAP: u32 = 1 << 16;

/// The precision level a name position encodes, capped at [`LEVEL_CAP`].
pub fn name_level(pos: &Nat) -> u32 {
    pos.to_u32().map(|p| p.min(LEVEL_CAP)).unwrap_or(LEVEL_CAP)
}

/// Real-number name: position `p` carries the coded level-`p` dyadic
/// approximation.
pub fn creal_to_name(x: &CReal) -> Name {
    let x = x.clone();
    Name::from_fn(move |pos| coding::encode_dyadic(&x.approx(name_level(pos))))
}

pub fn name_to_creal(name: &Name) -> CReal {
    let name = name.clone();
    CReal::from_fn(move |p| coding::decode_dyadic(&name.at(&nat(p as u64))))
}

/// Sequence-of-reals name: position `<n, p>` carries the coded level-`p`
/// approximation of the `n`-th term.
pub fn creal_seq_to_name(seq: &CRealSeq) -> Name {
    let seq = seq.clone();
    Name::from_fn(move |pos| {
        let (n, p) = coding::unpair(pos);
        let n = n.to_usize().expect("term index fits usize");
        coding::encode_dyadic(&seq(n).approx(name_level(&p)))
    })
}

pub fn name_to_creal_seq(name: &Name) -> CRealSeq {
    let name = name.clone();
    Arc::new(move |n| {
        let name = name.clone();
        CReal::from_fn(move |p| {
            coding::decode_dyadic(&name.at(&coding::pair(&nat(n as u64), &nat(p as u64))))
        })
    })
}

// Enclosure-function names use tagged positions:
//   <0, level>                     -> contraction exponent at `level`
//   <1, <<lo, hi>, level>>         -> coded enclosure of f over [lo, hi]
// with dyadic interval codes <encode_dyadic(lo), encode_dyadic(hi)>.
// The response table is fixed by the function at construction; queries are
// answered (and memoized) on demand.

fn encode_interval(i: &Interval) -> Nat {
    coding::pair(
        &coding::encode_dyadic(i.lo()),
        &coding::encode_dyadic(i.hi()),
    )
}

fn decode_interval(n: &Nat) -> Interval {
    let (lo, hi) = coding::unpair(n);
    let lo = coding::decode_dyadic(&lo);
    let hi = coding::decode_dyadic(&hi);
    if lo <= hi {
        Interval::new(lo, hi)
    } else {
        Interval::point(lo)
    }
}

pub fn cfunc_to_name(f: &CFunc) -> Name {
    let f = f.clone();
    Name::from_fn(move |pos| {
        let (tag, payload) = coding::unpair(pos);
        if tag == nat(0) {
            nat(f.contraction(name_level(&payload)) as u64)
        } else {
            let (icode, level) = coding::unpair(&payload);
            let query = decode_interval(&icode);
            encode_interval(&f.ext(&query, name_level(&level)))
        }
    })
}

pub fn name_to_cfunc(name: &Name) -> CFunc {
    let n1 = name.clone();
    let n2 = name.clone();
    CFunc::new(
        move |interval, level| {
            let pos = coding::pair(
                &nat(1),
                &coding::pair(&encode_interval(interval), &nat(level as u64)),
            );
            decode_interval(&n1.at(&pos))
        },
        move |level| {
            let pos = coding::pair(&nat(0), &nat(level as u64));
            n2.at(&pos).to_u32().unwrap_or(LEVEL_CAP).min(LEVEL_CAP)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Dyadic;
    use crate::functions::PLFunc;

    #[test]
    fn tupling_projection_round_trip() {
        let base: Vec<Name> = (0..8)
            .map(|k| Name::from_fn(move |pos| pos * 3u32 + nat(k)))
            .collect();
        let basec = base.clone();
        let tup = seq_tupling(Arc::new(move |k| basec[k as usize].clone()));
        for (k, original) in base.iter().enumerate() {
            let proj = seq_project(&tup, k as u64);
            assert!(proj.agrees_with(original, 64));
        }
    }

    #[test]
    fn creal_name_round_trip() {
        let x = CReal::from_dyadic(Dyadic::new(5, -3));
        let back = name_to_creal(&creal_to_name(&x));
        assert_eq!(back.approx(20), Dyadic::new(5, -3));
    }

    #[test]
    fn cfunc_name_round_trip() {
        let f = CFunc::from_plf(
            &PLFunc::from_parts(&[((0, 0), (-1, 0)), ((1, 0), (1, 0))]).unwrap(),
        );
        let g = name_to_cfunc(&cfunc_to_name(&f));
        let i = Interval::new(Dyadic::new(1, -2), Dyadic::new(1, -1));
        assert_eq!(f.ext(&i, 12), g.ext(&i, 12));
        assert_eq!(f.contraction(9), g.contraction(9));
    }

    #[test]
    fn names_memoize_but_stay_pure() {
        let n = Name::from_fn(|pos| pos * 7u32);
        let a = n.at(&nat(5));
        let b = n.at(&nat(5));
        assert_eq!(a, b);
        assert_eq!(a, nat(35));
    }
}
