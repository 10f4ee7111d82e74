//! Enumeration-to-characteristic-function reductions.
//!
//! `EC` turns an enumeration `g` of a set `A` (convention: `g(k) = 0` means
//! no report, `g(k) = n+1` reports `n`, no nonzero value twice) into the
//! characteristic function of `A`.
//!
//! Going through the functional-representation problem: the enumeration is
//! packed into the `l2` point `a` with `a_k = 2^-g(k)` on reported
//! positions, the represented functional is `<., a>`, and the squared norm
//! `||a||^2 = sum_{n in A} 2^-(2n+2)` carries the characteristic function
//! of `A` in its even binary positions. Membership of `n` is decided by a
//! threshold test at precision `2^-(2n+4)`: the even-position layout leaves
//! a gap of at least `2/3 * 2^-(2n+2)` between the digit-0 and digit-1
//! cases, so the rounding is decisive.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::coding::{decode_dyadic, encode_dyadic, nat, pair, unpair};
use crate::exact::Dyadic;
use crate::weihrauch::{DomainVerdict, Name, Problem, ReductionWitness, Verdict};

/// Report-scan horizon of the characteristic verifier.
const EC_VERIFY_SCAN: u64 = 4096;

/// Enumeration of an explicit finite set: element `a_k` reported at
/// position `k`, silence afterwards.
pub fn enumeration_of_set(elements: &[u64]) -> Name {
    let reports: Vec<u64> = elements.iter().map(|&n| n + 1).collect();
    Name::from_values(reports, 0)
}

/// Set elements reported within the first `scan` positions.
fn reported_set(g: &Name, scan: u64) -> std::collections::BTreeSet<crate::coding::Nat> {
    let mut out = std::collections::BTreeSet::new();
    for k in 0..scan {
        let v = g.at_u64(k);
        if v != nat(0) {
            out.insert(v - 1u32);
        }
    }
    out
}

/// The enumeration-to-characteristic-function problem.
pub fn ec_problem() -> Problem {
    Problem::new(
        "ec",
        |x, budget| {
            // nonzero reports must be pairwise distinct
            let mut seen = std::collections::HashSet::new();
            for k in 0..budget.min(EC_VERIFY_SCAN) {
                let v = x.at_u64(k);
                if v != nat(0) && !seen.insert(v) {
                    return DomainVerdict::Violated;
                }
            }
            DomainVerdict::Ok
        },
        |x, stage| {
            let members = reported_set(x, stage);
            Name::from_fn(move |pos| nat(members.contains(pos) as u64))
        },
        |x, z, level| {
            let members = reported_set(x, EC_VERIFY_SCAN);
            let mut pending = false;
            for n in 0..=level as u64 {
                let claimed = z.at_u64(n) == nat(1);
                let reported = members.contains(&nat(n));
                match (claimed, reported) {
                    (false, true) => return Verdict::Rejected,
                    (true, false) => pending = true, // may be reported later
                    _ => {}
                }
            }
            if pending {
                Verdict::Unknown
            } else {
                Verdict::Accepted
            }
        },
    )
}

/// `a_k = 2^-g(k)` on reported positions, 0 elsewhere. Unreported scan
/// positions at approximation level `k` contribute less than `2^-k`, so the
/// coded point is a valid `l2` name.
fn packed_coeff(g: &Name, k: usize) -> Dyadic {
    let v = g.at_u64(k as u64);
    if v == nat(0) {
        return Dyadic::zero();
    }
    match v.to_i64() {
        Some(e) => Dyadic::two_pow(-e),
        None => Dyadic::zero(), // astronomically small reports vanish at desk scale
    }
}

/// Witness for `ec <= frr`.
pub fn ec_via_frr_witness() -> ReductionWitness {
    ReductionWitness::new(
        "ec<=frr",
        |g| {
            let g = g.clone();
            Name::from_fn(move |pos| {
                let (tag, payload) = unpair(pos);
                if tag == nat(0) {
                    // ||a||^2 <= sum_{v>=1} 4^-v = 1/3, so 1 bounds the norm
                    encode_dyadic(&Dyadic::one())
                } else {
                    let (i, _p) = unpair(&payload);
                    let i = i.to_usize().expect("ball index fits usize");
                    // exact inner product of a finitely supported ball
                    // vector with the packed point
                    let x = crate::functions::dense_unit_ball(i);
                    let mut acc = Dyadic::zero();
                    let mut k = 0usize;
                    while !x.tail_sq(k).is_zero() {
                        acc = &acc + &(&x.coeff(k) * &packed_coeff(&g, k));
                        k += 1;
                        assert!(k <= 1 << 16, "ball vectors are finitely supported");
                    }
                    encode_dyadic(&acc)
                }
            })
        },
        |_g, y| {
            let y = y.clone();
            Name::from_fn(move |pos| {
                let n = match pos.to_i64() {
                    Some(n) => n,
                    None => return nat(0),
                };
                // digit of ||y||^2 at binary position 2n+2 via the decisive
                // threshold: floor(approx * 2^(2n+2) + 1/4) mod 2
                let level = (2 * n + 4) as u64;
                let nsq = decode_dyadic(&y.at(&pair(&nat(0), &nat(level))));
                let shifted = &nsq.mul_pow2(2 * n + 2) + &Dyadic::new(1, -2);
                let digit = shifted.floor_int() % BigInt::from(2);
                nat(u64::from(digit == BigInt::from(1)))
            })
        },
    )
}

/// Exact squared norm of the packed point for an explicit finite set:
/// `sum_{n in A} 2^-(2n+2)`.
pub fn packed_norm_sq(elements: &[u64]) -> Dyadic {
    elements.iter().fold(Dyadic::zero(), |acc, &n| {
        &acc + &Dyadic::two_pow(-(2 * n as i64 + 2))
    })
}

/// Witness pair between monotone convergence and `EC`.
///
/// `ec <= mct`: the enumeration is packed into the geometric sums
/// `y_t = sum 2^-n` over reported `n`, whose supremum's binary digits are
/// the characteristic function (decisive once the enumeration settles
/// within the oracle stage).
///
/// `mct <= ec`: the instance is translated into an enumeration of
/// `A = { <k, j> : some term exceeds (j+1) 2^-k }`, frontier-first so the
/// top pair of every column appears early, with a round-robin backfill
/// covering all of `A` eventually. The supremum is read back by walking the
/// column tops, one characteristic probe per level. Instances are shifted
/// by an integer to make every term nonnegative; the post-processor undoes
/// the shift.
pub fn mct_ec_bridge() -> (ReductionWitness, ReductionWitness) {
    let ec_le_mct = ReductionWitness::new(
        "ec<=mct",
        |g| {
            let g = g.clone();
            Name::from_fn(move |pos| {
                let p = match pos.to_u64() {
                    Some(p) => p,
                    None => return nat(0),
                };
                if p == 0 {
                    return encode_dyadic(&Dyadic::from_int(2));
                }
                let members = reported_set(&g, p - 1);
                let sum = members.iter().fold(Dyadic::zero(), |acc, n| {
                    // members beyond the i64 range vanish at any finite precision
                    match n.to_i64() {
                        Some(n) => &acc + &Dyadic::two_pow(-n),
                        None => acc,
                    }
                });
                encode_dyadic(&sum)
            })
        },
        |_g, mct_answer| {
            let sup = mct_answer.clone();
            Name::from_fn(move |pos| {
                let n = match pos.to_i64() {
                    Some(n) => n,
                    None => return nat(0),
                };
                let q = decode_dyadic(&sup.at(&nat(2 * n as u64 + 16)));
                // exact on settled answers: the oracle's value is the exact
                // dyadic partial sum, so the digit is read off directly
                let digit = q.mul_pow2(n).floor_int() % BigInt::from(2);
                nat(u64::from(digit == BigInt::from(1)))
            })
        },
    );

    let mct_le_ec = ReductionWitness::new(
        "mct<=ec",
        grid_enumeration,
        |x, chi| {
            let x = x.clone();
            let chi = chi.clone();
            Name::from_fn(move |pos| {
                let p = name_pos_u64(pos);
                let level = p + 2;
                let shift = nonneg_shift(&x);
                // walk the column tops: j ranges over a two-candidate window
                // per level, one probe each
                let bound = &decode_dyadic(&x.at_u64(0)) + &Dyadic::from_int(shift);
                let mut j: i64 = -1;
                let root_cap = bound.ceil_log2().unwrap_or(0).max(0);
                for cand in 0..=(1i64 << root_cap.min(8)) + 1 {
                    if chi_probe(&chi, 0, cand) {
                        j = j.max(cand);
                    }
                }
                for k in 1..=level {
                    j = if chi_probe(&chi, k, 2 * j + 2) {
                        2 * j + 2
                    } else {
                        2 * j + 1
                    };
                }
                // sup + shift lies in ((j+1) 2^-level, (j+2) 2^-level]
                let estimate = &Dyadic::new(2 * j + 3, -level - 1)
                    - &Dyadic::from_int(shift);
                encode_dyadic(&estimate)
            })
        },
    );
    (ec_le_mct, mct_le_ec)
}

fn name_pos_u64(pos: &crate::coding::Nat) -> i64 {
    pos.to_i64().unwrap_or(48).min(48)
}

/// Probe `<k, j> in A` through the characteristic name; out-of-range `j`
/// (including the virtual root `j = -1`) answers false.
fn chi_probe(chi: &Name, k: i64, j: i64) -> bool {
    if j < 0 {
        return false;
    }
    let pos = pair(&nat(k as u64), &nat(j as u64));
    chi.at(&pos) == nat(1)
}

/// Integer shift making every term of the instance nonnegative, read off
/// the first term.
fn nonneg_shift(x: &Name) -> i64 {
    let y0 = decode_dyadic(&x.at_u64(1));
    if y0.signum() >= 0 {
        0
    } else {
        (-y0.floor_int()).to_i64().unwrap_or(4)
    }
}

/// Terms the grid enumeration scans per round.
const GRID_ROUNDS: u64 = 1 << 9;
/// Fresh frontier pairs emitted per column per round.
const FRONTIER_WIDTH: i64 = 4;

/// Enumeration of `A = { <k, j> : some term exceeds (j+1) 2^-k }` for a
/// monotone instance (shifted nonnegative), frontier-first with backfill.
fn grid_enumeration(x: &Name) -> Name {
    let x = x.clone();
    let reports: std::sync::Mutex<(u64, Vec<crate::coding::Nat>, GridState)> =
        std::sync::Mutex::new((0, Vec::new(), GridState::default()));
    Name::from_fn(move |pos| {
        let want = match pos.to_u64() {
            Some(p) => p,
            None => return nat(0),
        };
        let mut guard = reports.lock().unwrap();
        let (round, emitted, state) = &mut *guard;
        while (emitted.len() as u64) <= want && *round < GRID_ROUNDS {
            *round += 1;
            step_grid_round(&x, *round, state, emitted);
        }
        emitted
            .get(want as usize)
            .cloned()
            .unwrap_or_else(|| nat(0))
    })
}

#[derive(Default)]
struct GridState {
    /// Per column `k`: highest `j` emitted so far (`None` = column untouched).
    top: Vec<Option<i64>>,
    /// Per column `k`: next backfill `j` below the initially emitted block.
    backfill: Vec<i64>,
}

fn step_grid_round(
    x: &Name,
    round: u64,
    state: &mut GridState,
    emitted: &mut Vec<crate::coding::Nat>,
) {
    let shift = nonneg_shift(x);
    let mut running = Dyadic::from_int(-(1 << 20));
    for n in 0..round {
        let t = decode_dyadic(&x.at_u64(n + 1));
        if t > running {
            running = t;
        }
    }
    let m = &running + &Dyadic::from_int(shift);
    let kcap = (round.min(48)) as i64;
    for k in 0..=kcap {
        if state.top.len() <= k as usize {
            state.top.push(None);
            state.backfill.push(-1);
        }
        let jstar = column_top(&m, k);
        if jstar < 0 {
            continue;
        }
        let already = state.top[k as usize].unwrap_or(-1);
        if jstar > already {
            // emit the new frontier block, highest first
            let low = if already >= 0 {
                already + 1
            } else {
                (jstar - FRONTIER_WIDTH + 1).max(0)
            };
            for j in (low..=jstar).rev() {
                emitted.push(pair(&nat(k as u64), &nat(j as u64)) + 1u32);
            }
            if already < 0 {
                state.backfill[k as usize] = low - 1;
            }
            state.top[k as usize] = Some(jstar);
        }
        // one backfill report per column per round
        let b = state.backfill[k as usize];
        if b >= 0 {
            emitted.push(pair(&nat(k as u64), &nat(b as u64)) + 1u32);
            state.backfill[k as usize] = b - 1;
        }
    }
}

/// Largest `j` with `(j+1) 2^-k < m`, or -1 when the column is empty.
fn column_top(m: &Dyadic, k: i64) -> i64 {
    if m.signum() <= 0 {
        return -1;
    }
    let scaled = m.mul_pow2(k);
    let floor = scaled.floor_int();
    let top = if scaled.exponent() >= 0 {
        // scaled is an integer: strict inequality drops one
        floor - 1
    } else {
        floor
    };
    (top - BigInt::from(1)).to_i64().unwrap_or(-1).max(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::frr_mct::frr_problem;
    use crate::weihrauch::{mct_instance, mct_problem, reduce_check};

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    #[test]
    fn worked_example_norm() {
        // A = {1, 3}: ||a||^2 = 2^-4 + 2^-8 = 17/256
        assert_eq!(packed_norm_sq(&[1, 3]), d(17, -8));
    }

    #[test]
    fn ec_problem_oracle_and_verifier() {
        let g = enumeration_of_set(&[2, 5]);
        let p = ec_problem();
        assert_eq!(p.domain_check(&g, 100), DomainVerdict::Ok);
        let chi = p.oracle(&g, 100);
        assert_eq!(chi.at_u64(2), nat(1));
        assert_eq!(chi.at_u64(5), nat(1));
        assert_eq!(chi.at_u64(3), nat(0));
        assert_eq!(p.verify(&g, &chi, 10), Verdict::Accepted);
        let wrong = Name::constant(nat(0));
        assert_eq!(p.verify(&g, &wrong, 10), Verdict::Rejected);
    }

    #[test]
    fn ec_domain_rejects_repeats() {
        let g = Name::from_values(vec![3, 0, 3], 0);
        assert_eq!(ec_problem().domain_check(&g, 100), DomainVerdict::Violated);
    }

    #[test]
    fn ec_via_frr_recovers_characteristic_functions() {
        let cases: Vec<Vec<u64>> = vec![vec![], vec![0], vec![1, 3], vec![0, 2, 7], vec![15]];
        let witness = ec_via_frr_witness();
        let frr = frr_problem();
        for a in cases {
            let g = enumeration_of_set(&a);
            let y = frr.oracle(&witness.pre(&g), 1000);
            let chi = witness.post(&g, &y);
            for n in 0..16u64 {
                let expected = a.contains(&n) as u64;
                assert_eq!(chi.at_u64(n), nat(expected), "A = {a:?}, n = {n}");
            }
        }
    }

    #[test]
    fn ec_via_frr_passes_reduce_check() {
        let instances: Vec<Name> = vec![
            enumeration_of_set(&[1, 3]),
            enumeration_of_set(&[]),
            enumeration_of_set(&[0]),
            enumeration_of_set(&[4, 9, 11]),
        ];
        let report = reduce_check(
            &ec_problem(),
            &frr_problem(),
            &ec_via_frr_witness(),
            &instances,
            15,
            1000,
        );
        assert!(report.all_accepted(), "{report:?}");
    }

    #[test]
    fn ec_le_mct_round_trip() {
        let (ec_le_mct, _) = mct_ec_bridge();
        let g = enumeration_of_set(&[1, 3]);
        let y = mct_problem().oracle(&ec_le_mct.pre(&g), 1000);
        // supremum of the packed sums is 1/2 + 1/8 = 5/8
        assert_eq!(decode_dyadic(&y.at_u64(30)), d(5, -3));
        let chi = ec_le_mct.post(&g, &y);
        for n in 0..10u64 {
            let expected = (n == 1 || n == 3) as u64;
            assert_eq!(chi.at_u64(n), nat(expected));
        }
    }

    #[test]
    fn mct_le_ec_reads_back_sup() {
        let (_, mct_le_ec) = mct_ec_bridge();
        for (terms, bound, sup) in [
            (
                Box::new(|_t: u64| d(1, -1)) as Box<dyn Fn(u64) -> Dyadic + Send + Sync>,
                d(1, 0),
                d(1, -1),
            ),
            (
                Box::new(|t: u64| &Dyadic::one() - &Dyadic::two_pow(-(t as i64 + 1))),
                d(1, 0),
                d(1, 0),
            ),
        ] {
            let x = mct_instance(terms, bound);
            let chi = ec_problem().oracle(&mct_le_ec.pre(&x), 400);
            let z = mct_le_ec.post(&x, &chi);
            let q = decode_dyadic(&z.at_u64(12));
            assert!(
                (&q - &sup).abs() <= Dyadic::two_pow(-10),
                "sup readback {q} vs {sup}"
            );
        }
    }

    #[test]
    fn mct_le_ec_handles_negative_terms() {
        let (_, mct_le_ec) = mct_ec_bridge();
        // terms -2^-t climb from -1 to sup 0
        let x = mct_instance(|t| -Dyadic::two_pow(-(t as i64)), d(1, 0));
        let chi = ec_problem().oracle(&mct_le_ec.pre(&x), 400);
        let z = mct_le_ec.post(&x, &chi);
        let q = decode_dyadic(&z.at_u64(10));
        assert!((&q - &Dyadic::zero()).abs() <= Dyadic::two_pow(-8), "got {q}");
    }
}
