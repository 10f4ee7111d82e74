//! Seeded instance corpora shared by the command line, the integration
//! tests, and the acceptance suite. Everything here is deterministic in the
//! seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{DyRatio, Dyadic};
use crate::functions::{CFunc, PLFunc};
use crate::reductions::DiagonalOperator;
use crate::weihrauch::{cfunc_to_name, Name};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn d(m: i64, e: i64) -> Dyadic {
    Dyadic::new(m, e)
}

/// Strictly increasing interior abscissas on a `2^-6` grid.
fn random_xs(rng: &mut ChaCha8Rng, interior: usize) -> Vec<Dyadic> {
    let mut picks = std::collections::BTreeSet::new();
    while picks.len() < interior {
        picks.insert(rng.gen_range(1..64i64));
    }
    let mut xs = vec![Dyadic::zero()];
    xs.extend(picks.into_iter().map(|m| d(m, -6)));
    xs.push(Dyadic::one());
    xs
}

fn random_value(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Dyadic {
    d(rng.gen_range(lo..=hi), -4)
}

/// A piecewise-linear function with a single sign crossing and a unique
/// zero: negative values up to a random cut, positive after.
pub fn crossing_plf(rng: &mut ChaCha8Rng) -> PLFunc {
    let interior = rng.gen_range(1..=4usize);
    let xs = random_xs(rng, interior);
    let cut = rng.gen_range(1..xs.len());
    let ys: Vec<Dyadic> = (0..xs.len())
        .map(|i| {
            if i < cut {
                random_value(rng, -32, -2)
            } else {
                random_value(rng, 2, 32)
            }
        })
        .collect();
    PLFunc::new(xs.into_iter().zip(ys).collect()).expect("generated breakpoints are valid")
}

/// The exact zero of a single-crossing function, by linear solve on the
/// sign-change segment. Independent of any root-finding code.
pub fn exact_zero_of_crossing(f: &PLFunc) -> DyRatio {
    let seg = f
        .breakpoints()
        .windows(2)
        .find(|w| w[0].1.signum() < 0 && w[1].1.signum() >= 0)
        .expect("crossing function has a sign-change segment");
    let (x0, y0) = &seg[0];
    let (x1, y1) = &seg[1];
    // y0 + (z - x0) (y1 - y0)/(x1 - x0) = 0
    let rise = y1 - y0;
    let num = &(x0 * &rise) - &(y0 * &(x1 - x0));
    DyRatio::new(num, rise)
}

/// A generic piecewise-linear function with random dyadic values; its
/// maximum over `[0,1]` is the exact breakpoint maximum.
pub fn random_plf(rng: &mut ChaCha8Rng) -> PLFunc {
    let interior = rng.gen_range(1..=5usize);
    let xs = random_xs(rng, interior);
    let ys: Vec<Dyadic> = (0..xs.len()).map(|_| random_value(rng, -40, 40)).collect();
    PLFunc::new(xs.into_iter().zip(ys).collect()).expect("generated breakpoints are valid")
}

pub fn exact_breakpoint_max(f: &PLFunc) -> Dyadic {
    f.breakpoints()
        .iter()
        .map(|(_, y)| y.clone())
        .max()
        .expect("nonempty breakpoints")
}

/// Shorthand: the enclosure name of a piecewise-linear function given by
/// `(mantissa, exponent)` parts.
pub fn name_of_parts(parts: &[((i64, i64), (i64, i64))]) -> Name {
    cfunc_to_name(&CFunc::from_plf(
        &PLFunc::from_parts(parts).expect("valid parts"),
    ))
}

/// Fixed demonstration instances with sign changes: a steep line, the
/// zero-at-a-third line that collides with the first trisection probe, a
/// shoulder profile, and seeded random crossings.
pub fn crossing_corpus(count: usize, seed: u64) -> Vec<PLFunc> {
    let mut out = vec![
        PLFunc::from_parts(&[((0, 0), (-1, 0)), ((1, 0), (1, 0))]).unwrap(),
        PLFunc::from_parts(&[((0, 0), (-1, 0)), ((1, 0), (2, 0))]).unwrap(),
        PLFunc::from_parts(&[
            ((0, 0), (-1, 0)),
            ((1, -2), (-1, 0)),
            ((3, -2), (1, 0)),
            ((1, 0), (1, 0)),
        ])
        .unwrap(),
    ];
    let mut rng = rng(seed);
    while out.len() < count {
        out.push(crossing_plf(&mut rng));
    }
    out.truncate(count);
    out
}

/// Mixed corpus for the maximum-vs-zero witnesses: crossings plus shapes
/// with plateaus and interior peaks.
pub fn max_zero_corpus(count: usize, seed: u64) -> Vec<Name> {
    let mut shapes = vec![
        name_of_parts(&[((0, 0), (-1, 0)), ((1, 0), (1, 0))]),
        name_of_parts(&[((0, 0), (0, 0)), ((1, -1), (1, 0)), ((1, 0), (0, 0))]),
        name_of_parts(&[((0, 0), (0, 0)), ((1, 0), (0, 0))]),
        name_of_parts(&[
            ((0, 0), (-1, 0)),
            ((1, -2), (1, -1)),
            ((3, -2), (1, -1)),
            ((1, 0), (-1, -1)),
        ]),
    ];
    let mut rng = rng(seed);
    while shapes.len() < count {
        let f = crossing_plf(&mut rng);
        shapes.push(cfunc_to_name(&CFunc::from_plf(&f)));
    }
    shapes.truncate(count);
    shapes
}

/// Diagonal operators whose minima stabilize within the prefix.
pub fn diagonal_corpus(count: usize, seed: u64) -> Vec<DiagonalOperator> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let len = rng.gen_range(1..=16usize);
            let prefix: Vec<Dyadic> = (0..len)
                .map(|_| Dyadic::two_pow(-rng.gen_range(0..=6i64)))
                .collect();
            let tail = Dyadic::two_pow(-rng.gen_range(0..=3i64));
            if i == 0 {
                DiagonalOperator::identity()
            } else {
                DiagonalOperator::new(prefix, tail)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn crossing_zero_solves_exactly() {
        // f(x) = 3x - 1: zero at 1/3
        let f = PLFunc::from_parts(&[((0, 0), (-1, 0)), ((1, 0), (2, 0))]).unwrap();
        let z = exact_zero_of_crossing(&f);
        let third = DyRatio::new(Dyadic::one(), Dyadic::from_int(3));
        assert_eq!(z.cmp(&third), Ordering::Equal);
    }

    #[test]
    fn corpora_are_deterministic() {
        let a = crossing_corpus(20, 7);
        let b = crossing_corpus(20, 7);
        assert_eq!(a.len(), 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn crossing_functions_cross() {
        let mut r = rng(11);
        for _ in 0..20 {
            let f = crossing_plf(&mut r);
            assert_eq!(f.breakpoints().first().unwrap().1.signum(), -1);
            assert_eq!(f.breakpoints().last().unwrap().1.signum(), 1);
            let _ = exact_zero_of_crossing(&f);
        }
    }
}
