//! The representation problem for `l2` functionals and its reduction to
//! monotone convergence.
//!
//! A functional instance is coded by its values on the dense unit-ball
//! enumeration plus an a-priori operator-norm bound header. The reduction
//! sends `f` to the monotone sequence `n -> max_{i<=n} |f(x_i)|`, whose
//! supremum is the operator norm; with the norm in hand the representing
//! vector is read off coordinatewise as `y_n = f(e_n)`.
//!
//! Solution coding (an `l2` point with computable norm): channel `0`
//! carries the squared norm as a real name, channel `n+1` carries the
//! coordinate `y_n`. Carrying the square keeps the coding free of square
//! roots; consumers that need tail bounds recover them as
//! `tail_N^2 = ||y||^2 - sum_{n<N} y_n^2`.

use num_traits::ToPrimitive;

use crate::coding::{decode_dyadic, encode_dyadic, nat, pair, unpair};
use crate::exact::Dyadic;
use crate::functions::{dense_unit_ball, unit_vector_index, Functional, BALL_UNITS};
use crate::weihrauch::{mct_problem, DomainVerdict, Name, Problem, ReductionWitness, Verdict};

use crate::weihrauch::name_level;

/// Coordinates carried by oracle answers and coordinate reads; instances in
/// the concrete class are supported within the enumeration's unit-vector
/// prefix.
pub const FRR_COORDS: usize = BALL_UNITS;

fn unit_index(n: usize) -> usize {
    unit_vector_index(n).expect("coordinate reads stay within the unit prefix")
}

/// Functional instance name: `<0, 0>` carries the coded norm bound,
/// `<1, <i, p>>` the coded level-`p` approximation of `f(x_i)`.
pub fn frr_instance(f: &Functional) -> Name {
    let f = f.clone();
    Name::from_fn(move |pos| {
        let (tag, payload) = unpair(pos);
        if tag == nat(0) {
            encode_dyadic(f.norm_bound())
        } else {
            let (i, p) = unpair(&payload);
            let i = i.to_usize().expect("ball index fits usize");
            encode_dyadic(&f.eval(&dense_unit_ball(i)).approx(name_level(&p)))
        }
    })
}

fn read_norm_bound(x: &Name) -> Dyadic {
    decode_dyadic(&x.at(&pair(&nat(0), &nat(0))))
}

fn read_value(x: &Name, ball_index: usize, level: u32) -> Dyadic {
    let pos = pair(
        &nat(1),
        &pair(&nat(ball_index as u64), &nat(level as u64)),
    );
    decode_dyadic(&x.at(&pos))
}

fn read_coord(x: &Name, n: usize, level: u32) -> Dyadic {
    read_value(x, unit_index(n), level)
}

/// Stage-truncated squared norm: `sum_{n <= stage} y_n^2` over the carried
/// coordinates, from approximations fine enough for a valid name.
fn stage_norm_sq(x: &Name, stage: u64, level: u32) -> Dyadic {
    let bound = read_norm_bound(x);
    let shift = (&(&bound + &bound) + &Dyadic::one())
        .ceil_log2()
        .unwrap_or(0)
        .max(0) as u32;
    let cap = (stage as usize + 1).min(FRR_COORDS);
    let mut acc = Dyadic::zero();
    for n in 0..cap {
        let q = read_coord(x, n, level + 5 + shift + n as u32);
        acc = &acc + &(&q * &q);
    }
    acc
}

/// The representation problem as a registered problem.
pub fn frr_problem() -> Problem {
    Problem::new(
        "frr",
        |x, _budget| {
            let bound = read_norm_bound(x);
            for i in 0..4 {
                let v = read_value(x, i, 8).abs();
                if v > &bound + &Dyadic::one() {
                    return DomainVerdict::Violated;
                }
            }
            DomainVerdict::Ok
        },
        |x, stage| {
            let x = x.clone();
            Name::from_fn(move |pos| {
                let (channel, p) = unpair(pos);
                let level = name_level(&p);
                if channel == nat(0) {
                    encode_dyadic(&stage_norm_sq(&x, stage, level))
                } else {
                    let n = (&channel - 1u32).to_usize().unwrap_or(usize::MAX);
                    if n < FRR_COORDS {
                        encode_dyadic(&read_coord(&x, n, level))
                    } else {
                        nat(0)
                    }
                }
            })
        },
        |x, z, level| {
            let eps2 = Dyadic::two_pow(-(level as i64) + 1);
            // coordinates must match the instance's unit-vector values
            let mut sum_sq = Dyadic::zero();
            for n in 0..FRR_COORDS.min(level as usize + 4) {
                let claimed = decode_dyadic(&z.at(&pair(&nat(n as u64 + 1), &nat(level as u64 + 2))));
                let truth = read_coord(x, n, level + 2);
                if (&claimed - &truth).abs() > eps2 {
                    return Verdict::Rejected;
                }
                sum_sq = &sum_sq + &(&truth * &truth);
            }
            // the squared-norm channel must carry at least the seen mass
            let nsq = decode_dyadic(&z.at(&pair(&nat(0), &nat(level as u64 + 2))));
            let slack = Dyadic::two_pow(-(level as i64) + 3);
            if nsq < &sum_sq - &slack {
                return Verdict::Rejected;
            }
            let bound = read_norm_bound(x);
            if nsq > &(&bound * &bound) + &slack {
                return Verdict::Rejected;
            }
            if (&nsq - &sum_sq).abs() <= slack {
                Verdict::Accepted
            } else {
                Verdict::Unknown
            }
        },
    )
}

/// Witness for `frr <= mct`.
///
/// The pre-processor emits a nondecreasing dyadic sequence supping to the
/// operator norm. Position `m` rereads one ball vector at one precision
/// (lowered by the approximation error so no term overshoots), dovetailing
/// vector indices against precision levels; even positions sweep the
/// enumeration prefix densely so norms attained there converge at rate
/// `2^-(m/64)`, odd positions cover the whole enumeration. The
/// post-processor squares the convergence answer into the norm channel and
/// copies the unit-vector values into the coordinate channels.
pub fn frr_le_mct_witness() -> ReductionWitness {
    ReductionWitness::new(
        "frr<=mct",
        |x| {
            let x = x.clone();
            let bound = read_norm_bound(&x);
            // running maxima extended on demand, so position n costs one read
            let prefix: std::sync::Mutex<Vec<Dyadic>> = std::sync::Mutex::new(Vec::new());
            Name::from_fn(move |pos| {
                let p = match pos.to_u64() {
                    Some(p) => p,
                    None => return nat(0),
                };
                if p == 0 {
                    return encode_dyadic(&bound);
                }
                let n = (p - 1) as usize;
                let mut guard = prefix.lock().unwrap();
                while guard.len() <= n {
                    let m = guard.len() as u64;
                    let r = m / 3;
                    let (i, k) = match m % 3 {
                        0 => (r % 16, r / 16), // deep sweep of the leading prefix
                        1 => (r % 64, r / 64), // shallow sweep of a wide prefix
                        _ => crate::coding::unpair_u64(r), // full coverage
                    };
                    let level = (k as u32 + 2).min(48);
                    let raw = &read_value(&x, i as usize, level).abs()
                        - &Dyadic::two_pow(-(level as i64));
                    let prev = guard.last().cloned().unwrap_or_else(Dyadic::zero);
                    guard.push(raw.max(prev).min(bound.clone()));
                }
                encode_dyadic(&guard[n])
            })
        },
        |x, mct_answer| {
            let x = x.clone();
            let norm = mct_answer.clone();
            let bound = read_norm_bound(&x);
            Name::from_fn(move |pos| {
                let (channel, p) = unpair(pos);
                let level = name_level(&p);
                if channel == nat(0) {
                    // square the norm at a level absorbing the growth
                    let shift = (&(&bound + &bound) + &Dyadic::one())
                        .ceil_log2()
                        .unwrap_or(0)
                        .max(0) as u32;
                    let q = decode_dyadic(&norm.at(&nat((level + 1 + shift) as u64)));
                    encode_dyadic(&(&q * &q).round_at(level as i64 + 1))
                } else {
                    let n = (&channel - 1u32).to_usize().unwrap_or(usize::MAX);
                    if n < FRR_COORDS {
                        encode_dyadic(&read_coord(&x, n, level))
                    } else {
                        nat(0)
                    }
                }
            })
        },
    )
}

/// Library-level recovery: runs the witness against the convergence oracle
/// and reads back the coordinates and the norm.
pub struct FrrRecovery {
    pub coords: Vec<Dyadic>,
    pub norm: Dyadic,
    pub norm_sq: Dyadic,
}

pub fn frr_recover(f: &Functional, stage: u64, level: u32) -> FrrRecovery {
    let witness = frr_le_mct_witness();
    let x = frr_instance(f);
    let mct_answer = mct_problem().oracle(&witness.pre(&x), stage);
    let solution = witness.post(&x, &mct_answer);
    let coords = (0..FRR_COORDS)
        .map(|n| decode_dyadic(&solution.at(&pair(&nat(n as u64 + 1), &nat(level as u64)))))
        .collect();
    FrrRecovery {
        coords,
        norm: decode_dyadic(&mct_answer.at(&nat(level as u64))),
        norm_sq: decode_dyadic(&solution.at(&pair(&nat(0), &nat(level as u64)))),
    }
}

/// Hook for tests and the command line: the coded `l2` point recovered from
/// a solution name.
pub fn solution_coords(solution: &Name, count: usize, level: u32) -> Vec<Dyadic> {
    (0..count)
        .map(|n| decode_dyadic(&solution.at(&pair(&nat(n as u64 + 1), &nat(level as u64)))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{functional_from_vec, EllTwoVec};
    use crate::weihrauch::reduce_check;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    fn assert_close(a: &Dyadic, b: &Dyadic, level: i64) {
        assert!((a - b).abs() <= Dyadic::two_pow(-level), "|{a} - {b}| > 2^-{level}");
    }

    #[test]
    fn recover_unit_vector_functional() {
        let f = functional_from_vec(&EllTwoVec::unit(0));
        let out = frr_recover(&f, 1000, 20);
        assert_close(&out.coords[0], &Dyadic::one(), 16);
        for n in 1..8 {
            assert_close(&out.coords[n], &Dyadic::zero(), 16);
        }
        assert_close(&out.norm, &Dyadic::one(), 16);
    }

    #[test]
    fn recover_zero_functional() {
        let f = functional_from_vec(&EllTwoVec::zero());
        let out = frr_recover(&f, 500, 20);
        for n in 0..8 {
            assert_close(&out.coords[n], &Dyadic::zero(), 16);
        }
        assert_close(&out.norm, &Dyadic::zero(), 16);
    }

    #[test]
    fn recover_scaled_unit_combination() {
        // y = (1/2)(1/2,1/2,1/2,1/2): norm exactly 1/2, unit in the prefix
        let unit = EllTwoVec::finite(vec![d(1, -1), d(1, -1), d(1, -1), d(1, -1)]);
        let y = unit.scale(&d(1, -1));
        let f = functional_from_vec(&y);
        let out = frr_recover(&f, 1000, 24);
        for n in 0..4 {
            assert_close(&out.coords[n], &d(1, -2), 16);
        }
        assert_close(&out.norm, &d(1, -1), 16);
        assert_close(&out.norm_sq, &d(1, -2), 16);
    }

    #[test]
    fn witness_passes_reduce_check() {
        let targets = [
            EllTwoVec::unit(0),
            EllTwoVec::unit(3),
            EllTwoVec::finite(vec![d(1, -1), d(1, -1), d(1, -1), d(1, -1)]).scale(&d(3, -2)),
            EllTwoVec::zero(),
        ];
        let instances: Vec<Name> = targets
            .iter()
            .map(|y| frr_instance(&functional_from_vec(y)))
            .collect();
        let report = reduce_check(
            &frr_problem(),
            &mct_problem(),
            &frr_le_mct_witness(),
            &instances,
            16,
            1000,
        );
        assert!(report.all_accepted(), "{report:?}");
    }
}
