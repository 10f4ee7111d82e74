//! Kleene trees: prefix-closed binary-word predicates built from a
//! stage-enumerated disjoint pair, infinite as long as the pair stays
//! disjoint, and with every infinite path separating the pair.

use std::sync::Arc;

use crate::machines::StagePair;

/// A binary tree as a membership predicate on finite words.
#[derive(Clone)]
pub struct TreePredicate {
    member: Arc<dyn Fn(&[bool]) -> bool + Send + Sync>,
}

impl TreePredicate {
    pub fn from_fn(member: impl Fn(&[bool]) -> bool + Send + Sync + 'static) -> TreePredicate {
        TreePredicate {
            member: Arc::new(member),
        }
    }

    /// The full binary tree.
    pub fn full() -> TreePredicate {
        TreePredicate::from_fn(|_| true)
    }

    pub fn member(&self, word: &[bool]) -> bool {
        (self.member)(word)
    }

    /// All member words of the given length, by breadth-first extension.
    /// Only usable when the member count stays small.
    pub fn members_at_depth(&self, depth: usize, cap: usize) -> Vec<Vec<bool>> {
        let mut level: Vec<Vec<bool>> = vec![vec![]];
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &level {
                for b in [false, true] {
                    let mut ext = w.clone();
                    ext.push(b);
                    if self.member(&ext) {
                        next.push(ext);
                    }
                    if next.len() > cap {
                        return next;
                    }
                }
            }
            level = next;
            if level.is_empty() {
                return level;
            }
        }
        level
    }

    /// Leftmost member word of the given length, depth-first with a node
    /// budget; `None` when the budget runs out or the tree dies early.
    pub fn leftmost_member(&self, depth: usize, mut node_budget: usize) -> Option<Vec<bool>> {
        let mut word: Vec<bool> = Vec::new();
        // Depth-first: try 0 before 1, backtrack over exhausted suffixes.
        let mut choice: Vec<bool> = Vec::new(); // bit currently tried per level
        loop {
            if word.len() == depth {
                return Some(word);
            }
            if node_budget == 0 {
                return None;
            }
            node_budget -= 1;
            word.push(false);
            choice.push(false);
            if self.member(&word) {
                continue;
            }
            // backtrack to the deepest level still holding a 0
            loop {
                word.pop();
                match choice.pop() {
                    None => return None,
                    Some(false) => {
                        word.push(true);
                        choice.push(true);
                        if self.member(&word) {
                            break;
                        }
                    }
                    Some(true) => {}
                }
            }
        }
    }
}

/// The Kleene tree of a disjoint stage pair.
///
/// `member(w)` holds when, writing `t = |w|`, every `i < |w|` respects the
/// constraints at stage `t`: `i` enumerated into `A` forces `w_i = 1`, and
/// `i` enumerated into `B` forces `w_i = 0`. Because stages are monotone,
/// checking the single stage `t` is equivalent to checking every stage
/// `<= t` (see [`reference_member`], kept as an independent cross-check).
/// Prefix closure follows from monotonicity; any infinite path's bit
/// sequence separates the pair.
pub fn kleene_tree(pair: &StagePair) -> TreePredicate {
    let pair = pair.clone();
    TreePredicate::from_fn(move |word| {
        let t = word.len() as u64;
        let a = pair.a.at(t);
        let b = pair.b.at(t);
        word.iter().enumerate().all(|(i, &bit)| {
            let i = i as u64;
            (!a.contains(&i) || bit) && (!b.contains(&i) || !bit)
        })
    })
}

/// Redundant multi-stage variant of the Kleene membership test: requires the
/// constraints at every stage `t <= |w|`. Extensionally equal to
/// [`kleene_tree`]'s predicate; used as a second route in tests.
pub fn reference_member(pair: &StagePair, word: &[bool]) -> bool {
    (0..=word.len() as u64).all(|t| {
        let a = pair.a.at(t);
        let b = pair.b.at(t);
        word.iter().enumerate().all(|(i, &bit)| {
            let i = i as u64;
            (!a.contains(&i) || bit) && (!b.contains(&i) || !bit)
        })
    })
}

/// A member word of the given length, constructed directly from the forced
/// bits: 1 on `A`-constrained positions, 0 elsewhere.
pub fn forced_word(pair: &StagePair, len: usize) -> Vec<bool> {
    let a = pair.a.at(len as u64);
    (0..len as u64).map(|i| a.contains(&i)).collect()
}
