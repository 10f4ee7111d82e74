//! A toy counter-machine universe.
//!
//! The interpreter is deliberately minimal (INC / DECJZ / HALT on unbounded
//! registers) but universal enough to supply honest computably enumerable
//! sets: the diagonal halting set `K` and the disjoint pair `(A, B)` of
//! machines halting with output 0 resp. 1. Both are exposed as monotone
//! stage enumerations, which is the only view the rest of the crate ever
//! takes of a c.e. set.
//!
//! Program text format, one instruction per line, 0-based line numbers as
//! jump labels:
//!
//! ```text
//! INC <register>
//! DECJZ <register> <label>
//! HALT <0|1>
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::coding::{decode_list_u64, encode_list_u64, pair_u64, unpair_u64};
use crate::MachineError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instr {
    Inc(u64),
    /// Decrement register, or jump to the label when it is zero.
    DecJz(u64, usize),
    Halt(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineProgram {
    instrs: Vec<Instr>,
}

impl MachineProgram {
    pub fn new(instrs: Vec<Instr>) -> Result<MachineProgram, MachineError> {
        if instrs.is_empty() {
            return Err(MachineError::EmptyProgram);
        }
        let len = instrs.len();
        for (index, instr) in instrs.iter().enumerate() {
            if let Instr::DecJz(_, target) = instr {
                if *target >= len {
                    return Err(MachineError::JumpOutOfBounds {
                        index,
                        target: *target,
                        len,
                    });
                }
            }
        }
        Ok(MachineProgram { instrs })
    }

    pub fn instructions(&self) -> &[Instr] {
        &self.instrs
    }

    /// Always at least 1; validated at construction.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    /// Index of this program in the fixed enumeration, i.e. the least `i`
    /// with `godel(i) == self` produced by the canonical instruction codes.
    pub fn godel_index(&self) -> u64 {
        let items: Vec<u64> = self
            .instrs
            .iter()
            .map(|instr| match instr {
                Instr::Inc(r) => 3 * r,
                Instr::DecJz(r, l) => 3 * pair_u64(*r, *l as u64) + 1,
                Instr::Halt(v) => 3 * (*v as u64) + 2,
            })
            .collect();
        encode_list_u64(&items)
    }
}

impl fmt::Display for MachineProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, instr) in self.instrs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match instr {
                Instr::Inc(r) => write!(f, "INC {r}")?,
                Instr::DecJz(r, l) => write!(f, "DECJZ {r} {l}")?,
                Instr::Halt(v) => write!(f, "HALT {v}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for MachineProgram {
    type Err = MachineError;

    fn from_str(s: &str) -> Result<MachineProgram, MachineError> {
        let mut instrs = Vec::new();
        for (line, raw) in s.lines().enumerate() {
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let bad = || MachineError::ParseInstruction {
                line,
                text: raw.to_string(),
            };
            let mut parts = text.split_whitespace();
            let op = parts.next().ok_or_else(bad)?;
            let instr = match op {
                "INC" => Instr::Inc(parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?),
                "DECJZ" => {
                    let r = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    let l = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    Instr::DecJz(r, l)
                }
                "HALT" => {
                    let v: u64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    if v > 1 {
                        return Err(MachineError::BadHaltValue(v));
                    }
                    Instr::Halt(v as u8)
                }
                _ => return Err(bad()),
            };
            if parts.next().is_some() {
                return Err(bad());
            }
            instrs.push(instr);
        }
        MachineProgram::new(instrs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Halted(u8),
    Running,
}

/// Runs `program` on `input` (placed in register 0) for at most `steps`
/// instructions. Deterministic; once a program halts with `v` at some
/// budget, every larger budget reports the same `Halted(v)`.
pub fn run_bounded(program: &MachineProgram, input: u64, steps: u64) -> RunOutcome {
    let mut regs: HashMap<u64, u64> = HashMap::new();
    if input > 0 {
        regs.insert(0, input);
    }
    let mut pc = 0usize;
    for _ in 0..steps {
        match program.instrs.get(pc) {
            None => return RunOutcome::Running, // fell off the end: stuck
            Some(Instr::Inc(r)) => {
                *regs.entry(*r).or_insert(0) += 1;
                pc += 1;
            }
            Some(Instr::DecJz(r, target)) => {
                let cell = regs.entry(*r).or_insert(0);
                if *cell == 0 {
                    pc = *target;
                } else {
                    *cell -= 1;
                    pc += 1;
                }
            }
            Some(Instr::Halt(v)) => return RunOutcome::Halted(*v),
        }
    }
    RunOutcome::Running
}

/// Fixed surjective enumeration of all valid programs.
///
/// The index decodes to a list of raw instruction codes; jump labels are
/// reduced modulo the program length, and the empty list maps to the
/// one-instruction program `HALT 0`. Every valid program is hit: its
/// canonical code round-trips through [`MachineProgram::godel_index`].
pub fn godel(i: u64) -> MachineProgram {
    let raw = decode_list_u64(i);
    if raw.is_empty() {
        return MachineProgram::new(vec![Instr::Halt(0)]).unwrap();
    }
    let len = raw.len();
    let instrs = raw
        .into_iter()
        .map(|code| match code % 3 {
            0 => Instr::Inc(code / 3),
            1 => {
                let (r, l) = unpair_u64(code / 3);
                Instr::DecJz(r, (l % len as u64) as usize)
            }
            _ => Instr::Halt(((code / 3) % 2) as u8),
        })
        .collect();
    MachineProgram::new(instrs).expect("decoded programs are valid by construction")
}

/// A c.e. set presented as a monotone stage enumeration with
/// `enum_at(t) ⊆ {0, ..., t}`.
#[derive(Clone)]
pub struct StageSet {
    inner: Arc<dyn Fn(u64) -> BTreeSet<u64> + Send + Sync>,
}

impl StageSet {
    pub fn from_fn(f: impl Fn(u64) -> BTreeSet<u64> + Send + Sync + 'static) -> StageSet {
        StageSet { inner: Arc::new(f) }
    }

    pub fn at(&self, stage: u64) -> BTreeSet<u64> {
        (self.inner)(stage)
    }

    pub fn empty() -> StageSet {
        StageSet::from_fn(|_| BTreeSet::new())
    }

    /// Builds a stage set from explicit `(stage, members)` events.
    ///
    /// Events accumulate, and an element `m` first listed at stage `t`
    /// becomes a member from stage `max(t, m)` on, which enforces both
    /// monotonicity and `enum_at(t) ⊆ {0..t}`.
    pub fn injected(events: &[(u64, Vec<u64>)]) -> StageSet {
        let mut entry: HashMap<u64, u64> = HashMap::new();
        for (stage, members) in events {
            for &m in members {
                let at = (*stage).max(m);
                entry
                    .entry(m)
                    .and_modify(|cur| *cur = (*cur).min(at))
                    .or_insert(at);
            }
        }
        let entry = Arc::new(entry);
        StageSet::from_fn(move |t| {
            entry
                .iter()
                .filter(|(_, &at)| at <= t)
                .map(|(&m, _)| m)
                .collect()
        })
    }

    /// First stage at which `element` is enumerated, searching up to
    /// `horizon`.
    pub fn entry_stage(&self, element: u64, horizon: u64) -> Option<u64> {
        (0..=horizon).find(|&t| self.at(t).contains(&element))
    }
}

/// Stage `t` of the diagonal halting set:
/// `K_t = { i <= t : godel(i) run on i halts within t steps }`.
pub fn halting_stage(t: u64) -> BTreeSet<u64> {
    (0..=t)
        .filter(|&i| matches!(run_bounded(&godel(i), i, t), RunOutcome::Halted(_)))
        .collect()
}

/// The halting set as a stage enumeration, memoized per stage.
pub fn halting_set() -> StageSet {
    let cache: Mutex<HashMap<u64, BTreeSet<u64>>> = Mutex::new(HashMap::new());
    StageSet::from_fn(move |t| {
        if let Some(hit) = cache.lock().unwrap().get(&t) {
            return hit.clone();
        }
        let v = halting_stage(t);
        cache.lock().unwrap().insert(t, v.clone());
        v
    })
}

/// Stage `t` of the computably inseparable pair:
/// `A_t` collects diagonal runs halting with output 0, `B_t` with output 1.
pub fn inseparable_stage(t: u64) -> (BTreeSet<u64>, BTreeSet<u64>) {
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for i in 0..=t {
        match run_bounded(&godel(i), i, t) {
            RunOutcome::Halted(0) => {
                a.insert(i);
            }
            RunOutcome::Halted(_) => {
                b.insert(i);
            }
            RunOutcome::Running => {}
        }
    }
    (a, b)
}

/// A disjoint pair of stage sets.
#[derive(Clone)]
pub struct StagePair {
    pub a: StageSet,
    pub b: StageSet,
}

impl StagePair {
    pub fn new(a: StageSet, b: StageSet) -> StagePair {
        StagePair { a, b }
    }

    pub fn injected(a_events: &[(u64, Vec<u64>)], b_events: &[(u64, Vec<u64>)]) -> StagePair {
        StagePair {
            a: StageSet::injected(a_events),
            b: StageSet::injected(b_events),
        }
    }

    /// The machine-derived pair, memoized per stage.
    pub fn from_machines() -> StagePair {
        let cache: Arc<Mutex<HashMap<u64, (BTreeSet<u64>, BTreeSet<u64>)>>> =
            Arc::new(Mutex::new(HashMap::new()));
        let lookup = move |t: u64| {
            if let Some(hit) = cache.lock().unwrap().get(&t) {
                return hit.clone();
            }
            let v = inseparable_stage(t);
            cache.lock().unwrap().insert(t, v.clone());
            v
        };
        let la = lookup.clone();
        StagePair {
            a: StageSet::from_fn(move |t| la(t).0),
            b: StageSet::from_fn(move |t| lookup(t).1),
        }
    }

    pub fn disjoint_at(&self, t: u64) -> bool {
        self.a.at(t).intersection(&self.b.at(t)).next().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halt_immediately() {
        let p = MachineProgram::new(vec![Instr::Halt(0)]).unwrap();
        assert_eq!(run_bounded(&p, 42, 1), RunOutcome::Halted(0));
        assert_eq!(run_bounded(&p, 42, 0), RunOutcome::Running);
    }

    #[test]
    fn two_instruction_infinite_loop() {
        // DECJZ on an always-zero register jumping to itself.
        let p = MachineProgram::new(vec![Instr::DecJz(1, 0), Instr::Halt(1)]).unwrap();
        assert_eq!(run_bounded(&p, 0, 10_000), RunOutcome::Running);
    }

    #[test]
    fn step_counting_by_hand() {
        // Three INCs then HALT 1: running at 2 steps, halted at 4.
        let p = MachineProgram::new(vec![
            Instr::Inc(0),
            Instr::Inc(0),
            Instr::Inc(0),
            Instr::Halt(1),
        ])
        .unwrap();
        assert_eq!(run_bounded(&p, 0, 2), RunOutcome::Running);
        assert_eq!(run_bounded(&p, 0, 4), RunOutcome::Halted(1));
    }

    #[test]
    fn halting_is_stable() {
        let p = MachineProgram::new(vec![Instr::Inc(2), Instr::Halt(1)]).unwrap();
        let mut halted_at = None;
        for s in 0..20 {
            if let RunOutcome::Halted(v) = run_bounded(&p, 3, s) {
                assert_eq!(v, 1);
                halted_at.get_or_insert(s);
            } else {
                assert!(halted_at.is_none(), "halted then un-halted at budget {s}");
            }
        }
        assert!(halted_at.is_some());
    }

    #[test]
    fn godel_base_case_and_totality() {
        assert_eq!(
            godel(0),
            MachineProgram::new(vec![Instr::Halt(0)]).unwrap()
        );
        for i in 0..100 {
            let p = godel(i);
            assert!(p.len() >= 1);
        }
    }

    #[test]
    fn godel_surjectivity_witness() {
        let target = MachineProgram::new(vec![
            Instr::Inc(0),
            Instr::DecJz(0, 2),
            Instr::Halt(1),
        ])
        .unwrap();
        let idx = target.godel_index();
        assert_eq!(godel(idx), target);
        // And the canonical index is found by exhaustive search too.
        let small = MachineProgram::new(vec![Instr::Halt(1)]).unwrap();
        let found = (0..100_000u64).find(|&i| godel(i) == small);
        assert_eq!(found, Some(small.godel_index()));
    }

    #[test]
    fn program_text_round_trip() {
        let text = "INC 0\nDECJZ 0 2\nHALT 1";
        let p: MachineProgram = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
        assert!("DECJZ 0 7".parse::<MachineProgram>().is_err());
        assert!("HALT 3".parse::<MachineProgram>().is_err());
        assert!("NOP".parse::<MachineProgram>().is_err());
        assert!("".parse::<MachineProgram>().is_err());
    }

    #[test]
    fn halting_stage_basics() {
        assert!(halting_stage(0).is_empty()); // zero budget never halts
        // An immediate-halt program self-halts from budget 1 on; its index
        // enters K at stage max(index, 1).
        let idx = MachineProgram::new(vec![Instr::Halt(0)]).unwrap().godel_index();
        assert_eq!(godel(idx), godel(0));
        for t in idx.max(1)..idx.max(1) + 10 {
            assert!(halting_stage(t).contains(&idx));
            assert!(halting_stage(t).contains(&0)); // godel(0) = HALT 0 too
        }
    }

    #[test]
    fn stage_monotonicity_and_disjointness() {
        let k = halting_set();
        let pair = StagePair::from_machines();
        let mut prev = BTreeSet::new();
        for t in 0..60 {
            let cur = k.at(t);
            assert!(prev.is_subset(&cur), "K not monotone at stage {t}");
            assert!(cur.iter().all(|&i| i <= t));
            assert!(pair.disjoint_at(t));
            prev = cur;
        }
    }

    #[test]
    fn injected_respects_invariants() {
        let s = StageSet::injected(&[(5, vec![1, 3]), (2, vec![7])]);
        assert!(s.at(4).is_empty());
        assert_eq!(s.at(5), BTreeSet::from([1, 3]));
        // element 7 listed at stage 2 is deferred to stage 7
        assert_eq!(s.at(7), BTreeSet::from([1, 3, 7]));
        for t in 0..20 {
            assert!(s.at(t).iter().all(|&m| m <= t));
        }
    }

    #[test]
    fn frozen_diagonal_fixtures() {
        // regression fixtures computed by the interpreter itself
        let k10: Vec<u64> = halting_stage(10).into_iter().collect();
        assert_eq!(k10, vec![0, 4, 8]);
        let (a50, b50) = inseparable_stage(50);
        assert_eq!(
            a50.into_iter().collect::<Vec<u64>>(),
            vec![0, 4, 8, 13, 15, 19, 20, 26, 33, 34, 37, 43, 45, 47]
        );
        assert_eq!(
            b50.into_iter().collect::<Vec<u64>>(),
            vec![16, 23, 31, 40, 50]
        );
    }

    #[test]
    fn determinism_byte_identical() {
        let a = format!("{:?}", inseparable_stage(40));
        let b = format!("{:?}", inseparable_stage(40));
        assert_eq!(a, b);
    }
}
