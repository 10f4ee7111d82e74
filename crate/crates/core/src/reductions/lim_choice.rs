//! Witnesses connecting choice on the naturals with the limit map.
//!
//! `cn <= lim`: the staged guesses of the choice run form a converging
//! sequence of names whose limit is the stabilized answer.
//!
//! `lim <= par(cn)`: one choice instance per output position asks for a
//! stabilization index, excluding every approximation index witnessed wrong
//! at that position; the answer indexes into the approximations.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::coding::nat;
use crate::weihrauch::{cn_solve, seq_project, seq_tupling, Name, ReductionWitness};

/// Dovetail horizon for the wrong-index scan feeding each choice instance.
/// The scan is quadratic in the horizon, so this caps the detectable
/// stabilization index.
const STABILITY_SCAN: u64 = 128;

/// `(cn <= lim, lim <= par(cn))`.
pub fn lim_cnpar_witnesses() -> (ReductionWitness, ReductionWitness) {
    let cn_le_lim = ReductionWitness::new(
        "cn<=lim",
        |x| {
            let x = x.clone();
            seq_tupling(Arc::new(move |s| {
                Name::constant(nat(cn_solve(&x, s).answer))
            }))
        },
        |_x, lim_answer| Name::constant(lim_answer.at_u64(0)),
    );

    let lim_le_cnpar = ReductionWitness::new(
        "lim<=par(cn)",
        |x| {
            let x = x.clone();
            seq_tupling(Arc::new(move |i| wrong_index_stream(&x, i)))
        },
        |x, cn_answers| {
            let x = x.clone();
            let cn_answers = cn_answers.clone();
            Name::from_fn(move |pos| {
                let i = pos.to_u64().expect("output positions fit u64");
                let settle = seq_project(&cn_answers, i)
                    .at_u64(0)
                    .to_u64()
                    .unwrap_or(0);
                seq_project(&x, settle).at(pos)
            })
        },
    );
    (cn_le_lim, lim_le_cnpar)
}

/// Exclusion stream for output position `i`: reports every approximation
/// index `n` whose value at `i` is contradicted by a later approximation,
/// scanning the indices in dovetailed order.
fn wrong_index_stream(x: &Name, i: u64) -> Name {
    let x = x.clone();
    let reports: std::sync::Mutex<(u64, Vec<u64>, std::collections::HashSet<u64>)> =
        std::sync::Mutex::new((1, Vec::new(), std::collections::HashSet::new()));
    Name::from_fn(move |pos| {
        let want = match pos.to_u64() {
            Some(p) => p,
            None => return nat(0),
        };
        let mut guard = reports.lock().unwrap();
        let (scan, emitted, seen) = &mut *guard;
        while (emitted.len() as u64) <= want && *scan < STABILITY_SCAN {
            let later = seq_project(&x, *scan).at_u64(i);
            for n in 0..*scan {
                if seen.contains(&n) {
                    continue;
                }
                if seq_project(&x, n).at_u64(i) != later {
                    seen.insert(n);
                    emitted.push(n + 1);
                }
            }
            *scan += 1;
        }
        emitted
            .get(want as usize)
            .map(|&v| nat(v))
            .unwrap_or_else(|| nat(0))
    })
}
