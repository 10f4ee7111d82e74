//! `l2` points and bounded linear functionals.
//!
//! A computable `l2` point is a coefficient stream together with explicit
//! tail bounds `tail_sq(n) >= sum_{k>=n} c_k^2`; the tail data is what makes
//! inner products and norms computable at known precision. Concrete
//! instances are finitely supported dyadic vectors, for which all tails are
//! exact.

use std::sync::{Arc, Mutex, OnceLock};

use crate::coding::{decode_dyadic, decode_list, nat};
use crate::exact::{CReal, Dyadic};

/// A point of `l2` with explicit square-tail bounds.
#[derive(Clone)]
pub struct EllTwoVec {
    coeff: Arc<dyn Fn(usize) -> Dyadic + Send + Sync>,
    tail_sq: Arc<dyn Fn(usize) -> Dyadic + Send + Sync>,
}

impl EllTwoVec {
    pub fn new(
        coeff: impl Fn(usize) -> Dyadic + Send + Sync + 'static,
        tail_sq: impl Fn(usize) -> Dyadic + Send + Sync + 'static,
    ) -> EllTwoVec {
        EllTwoVec {
            coeff: Arc::new(coeff),
            tail_sq: Arc::new(tail_sq),
        }
    }

    /// Finitely supported vector; every tail bound is the exact tail.
    pub fn finite(coeffs: Vec<Dyadic>) -> EllTwoVec {
        let mut suffix: Vec<Dyadic> = vec![Dyadic::zero(); coeffs.len() + 1];
        for k in (0..coeffs.len()).rev() {
            suffix[k] = &suffix[k + 1] + &(&coeffs[k] * &coeffs[k]);
        }
        let coeffs = Arc::new(coeffs);
        let suffix = Arc::new(suffix);
        let cs = coeffs.clone();
        EllTwoVec {
            coeff: Arc::new(move |k| cs.get(k).cloned().unwrap_or_else(Dyadic::zero)),
            tail_sq: Arc::new(move |n| {
                suffix.get(n).cloned().unwrap_or_else(Dyadic::zero)
            }),
        }
    }

    pub fn zero() -> EllTwoVec {
        EllTwoVec::finite(vec![])
    }

    /// Standard unit vector `e_n`.
    pub fn unit(n: usize) -> EllTwoVec {
        let mut coeffs = vec![Dyadic::zero(); n + 1];
        coeffs[n] = Dyadic::one();
        EllTwoVec::finite(coeffs)
    }

    pub fn coeff(&self, k: usize) -> Dyadic {
        (self.coeff)(k)
    }

    /// Upper bound on `sum_{k>=n} c_k^2`.
    pub fn tail_sq(&self, n: usize) -> Dyadic {
        (self.tail_sq)(n)
    }

    /// `||x||^2` as a name; exact partial sums plus the tail bound.
    pub fn norm_sq(&self) -> CReal {
        let v = self.clone();
        let bound = self.tail_sq(0);
        CReal::from_fn_bounded(
            move |p| {
                let cutoff = find_tail_cutoff(&v, p + 1);
                partial_norm_sq(&v, cutoff)
            },
            bound,
        )
    }

    pub fn scale(&self, c: &Dyadic) -> EllTwoVec {
        let v = self.clone();
        let w = self.clone();
        let c1 = c.clone();
        let c2 = &c.clone() * c;
        EllTwoVec::new(
            move |k| &v.coeff(k) * &c1,
            move |n| &w.tail_sq(n) * &c2,
        )
    }
}

fn partial_norm_sq(v: &EllTwoVec, cutoff: usize) -> Dyadic {
    let mut acc = Dyadic::zero();
    for k in 0..cutoff {
        let c = v.coeff(k);
        acc = &acc + &(&c * &c);
    }
    acc
}

/// Least power-of-two cutoff `N` with `tail_sq(N) <= 2^-level`.
fn find_tail_cutoff(v: &EllTwoVec, level: u32) -> usize {
    let eps = Dyadic::two_pow(-(level as i64));
    let mut n = 0usize;
    loop {
        if v.tail_sq(n) <= eps {
            return n;
        }
        n = if n == 0 { 1 } else { n * 2 };
        assert!(
            n <= 1 << 24,
            "tail bounds do not converge (invalid l2 point)"
        );
    }
}

/// `<x, y>` with Cauchy-Schwarz tail control.
pub fn inner_product(x: &EllTwoVec, y: &EllTwoVec) -> CReal {
    let x = x.clone();
    let y = y.clone();
    let bound = {
        // |<x,y>| <= ||x|| ||y||, and ||v||^2 = t gives ||v|| <= t + 1.
        let bx = &x.tail_sq(0) + &Dyadic::one();
        let by = &y.tail_sq(0) + &Dyadic::one();
        &bx * &by
    };
    CReal::from_fn_bounded(
        move |p| {
            // tails <= 2^-(2p+4) each bound the dropped sum by 2^-(p+2)
            let nx = find_tail_cutoff(&x, 2 * p + 4);
            let ny = find_tail_cutoff(&y, 2 * p + 4);
            let cutoff = nx.max(ny);
            let mut acc = Dyadic::zero();
            for k in 0..cutoff {
                acc = &acc + &(&x.coeff(k) * &y.coeff(k));
            }
            acc
        },
        bound,
    )
}

/// A bounded linear functional presented by its evaluation map and an
/// a-priori operator-norm bound.
#[derive(Clone)]
pub struct Functional {
    eval: Arc<dyn Fn(&EllTwoVec) -> CReal + Send + Sync>,
    norm_bound: Dyadic,
}

impl Functional {
    pub fn new(
        eval: impl Fn(&EllTwoVec) -> CReal + Send + Sync + 'static,
        norm_bound: Dyadic,
    ) -> Functional {
        Functional {
            eval: Arc::new(eval),
            norm_bound,
        }
    }

    pub fn eval(&self, x: &EllTwoVec) -> CReal {
        (self.eval)(x)
    }

    pub fn norm_bound(&self) -> &Dyadic {
        &self.norm_bound
    }
}

/// The representing functional `f_y = <., y>`.
pub fn functional_from_vec(y: &EllTwoVec) -> Functional {
    let yc = y.clone();
    let norm_bound = norm_upper_bound(y);
    Functional::new(move |x| inner_product(x, &yc), norm_bound)
}

/// Dyadic `B` with `||y|| <= B`, from the square tail at 0.
fn norm_upper_bound(y: &EllTwoVec) -> Dyadic {
    let t = y.tail_sq(0);
    if t.is_zero() {
        return Dyadic::zero();
    }
    let log = t.ceil_log2().expect("positive tail");
    // ||y||^2 <= 2^log, so ||y|| <= 2^ceil(log/2)
    Dyadic::two_pow(log.div_euclid(2) + (log.rem_euclid(2)))
}

/// Fixed enumeration of finitely supported dyadic vectors of norm `<= 1`.
///
/// The order starts with a structured prefix (zero, the first unit vectors,
/// and a few exactly-normalized dyadic combinations useful as test probes),
/// followed by a generic scan over list codes filtered by the exact norm
/// test, so every finitely supported dyadic vector in the closed unit ball
/// appears at some index.
pub fn dense_unit_ball(i: usize) -> EllTwoVec {
    let prefix = ball_prefix();
    if i < prefix.len() {
        return prefix[i].clone();
    }
    scan_survivor(i - prefix.len())
}

/// Unit vectors carried in the enumeration prefix.
pub const BALL_UNITS: usize = 32;
/// Where the unit-vector block starts inside the prefix (after the zero
/// vector, the normalized combinations, and their halved copies).
const UNIT_BLOCK_START: usize = 9;

/// Index of `e_n` in [`dense_unit_ball`] for `n < BALL_UNITS`.
pub fn unit_vector_index(n: usize) -> Option<usize> {
    if n < BALL_UNITS {
        debug_assert!(dense_unit_ball(UNIT_BLOCK_START + n).coeff(n) == Dyadic::one());
        Some(UNIT_BLOCK_START + n)
    } else {
        None
    }
}

fn ball_prefix() -> &'static Vec<EllTwoVec> {
    static PREFIX: OnceLock<Vec<EllTwoVec>> = OnceLock::new();
    PREFIX.get_or_init(|| {
        let d = |m: i64, e: i64| Dyadic::new(m, e);
        let mut out = vec![EllTwoVec::zero()];
        // exactly-normalized dyadic combinations first: functionals
        // represented by their scalings attain the operator norm at these
        // early indices, where the staged norm sweep probes deepest
        let combos: Vec<Vec<Dyadic>> = vec![
            vec![d(1, -1), d(1, -1), d(1, -1), d(1, -1)],
            vec![d(3, -2), d(1, -1), d(1, -2), d(1, -2), d(1, -2)],
            vec![d(1, -1), d(3, -2), d(1, -2), d(1, -2), d(1, -2)],
            vec![d(7, -3), d(3, -3), d(1, -2), d(1, -3), d(1, -3)],
        ];
        for c in combos {
            debug_assert!(EllTwoVec::finite(c.clone()).tail_sq(0) == Dyadic::one());
            out.push(EllTwoVec::finite(c));
        }
        // halved copies give interior probes
        for n in 0..4 {
            out.push(EllTwoVec::unit(n).scale(&d(1, -1)));
        }
        debug_assert_eq!(out.len(), UNIT_BLOCK_START);
        for n in 0..BALL_UNITS {
            out.push(EllTwoVec::unit(n));
        }
        out
    })
}

/// `index`-th survivor of the generic list-code scan, memoized globally.
fn scan_survivor(index: usize) -> EllTwoVec {
    static SURVIVORS: OnceLock<Mutex<(u64, Vec<Vec<Dyadic>>)>> = OnceLock::new();
    let cache = SURVIVORS.get_or_init(|| Mutex::new((0, Vec::new())));
    let mut guard = cache.lock().unwrap();
    while guard.1.len() <= index {
        let code = guard.0;
        guard.0 += 1;
        let coeffs: Vec<Dyadic> = decode_list(&nat(code))
            .iter()
            .map(decode_dyadic)
            .collect();
        let v = EllTwoVec::finite(coeffs.clone());
        if v.tail_sq(0) <= Dyadic::one() {
            guard.1.push(coeffs);
        }
    }
    EllTwoVec::finite(guard.1[index].clone())
}

/// Searches the enumeration for the first index whose vector agrees with
/// `target` on coordinates `0..=support`.
pub fn ball_index_of(target: &EllTwoVec, support: usize, horizon: usize) -> Option<usize> {
    (0..horizon).find(|&i| {
        let v = dense_unit_ball(i);
        (0..=support).all(|k| v.coeff(k) == target.coeff(k))
    })
}

/// Stage-truncated operator norm: `max_{i <= stage} |f(x_i)|` at the given
/// precision, over the dense unit-ball enumeration. Nondecreasing in the
/// stage up to `2^-level+1` and never exceeds `||f||` by more than `2^-level`.
pub fn functional_norm_stage(f: &Functional, stage: usize, level: u32) -> Dyadic {
    let mut best = Dyadic::zero();
    for i in 0..=stage {
        let v = f.eval(&dense_unit_ball(i)).abs().approx(level);
        if v > best {
            best = v;
        }
    }
    best
}
