//! Generic continuous functions on `[0,1]` presented by interval enclosures.
//!
//! A `CFunc` packages two total maps:
//!
//! - `ext(I, level)`: a sound enclosure of `f(I)` whose width converges as
//!   the input shrinks;
//! - `contraction(level)`: an exponent `m` such that input width `<= 2^-m`
//!   forces `width(ext) <= 2^-level` (the uniform continuity modulus in
//!   power-of-two form).
//!
//! Reductions and root/maximum searches are written against this interface
//! only, so they work for any representation that can honor the contract;
//! piecewise-linear functions are the concrete instance class.

use std::sync::Arc;

use crate::exact::{CReal, Dyadic, Interval};

use super::plf::PLFunc;

#[derive(Clone)]
pub struct CFunc {
    inner: Arc<CFuncInner>,
}

struct CFuncInner {
    ext: Box<dyn Fn(&Interval, u32) -> Interval + Send + Sync>,
    contraction: Box<dyn Fn(u32) -> u32 + Send + Sync>,
}

impl CFunc {
    pub fn new(
        ext: impl Fn(&Interval, u32) -> Interval + Send + Sync + 'static,
        contraction: impl Fn(u32) -> u32 + Send + Sync + 'static,
    ) -> CFunc {
        CFunc {
            inner: Arc::new(CFuncInner {
                ext: Box::new(ext),
                contraction: Box::new(contraction),
            }),
        }
    }

    /// Sound enclosure of `f(I)` for `I ⊆ [0,1]`.
    pub fn ext(&self, interval: &Interval, level: u32) -> Interval {
        (self.inner.ext)(interval, level)
    }

    /// Input-width exponent guaranteeing output width `<= 2^-level`.
    pub fn contraction(&self, level: u32) -> u32 {
        (self.inner.contraction)(level)
    }

    /// The modulus as a width: input width `<= modulus_width(level)` forces
    /// output width `<= 2^-level`.
    pub fn modulus_width(&self, level: u32) -> Dyadic {
        Dyadic::two_pow(-(self.contraction(level) as i64))
    }

    /// Enclosure of the single value `f(x)` for a dyadic `x` in `[0,1]`.
    pub fn at_point(&self, x: &Dyadic, level: u32) -> Interval {
        self.ext(&Interval::point(x.clone()), level)
    }

    pub fn from_plf(f: &PLFunc) -> CFunc {
        let sb = f.slope_bits();
        let f = f.clone();
        CFunc::new(
            move |interval, level| {
                let clamped = interval
                    .intersect(&Interval::unit())
                    .unwrap_or_else(|| Interval::point(Dyadic::zero()));
                let (min, max) = f.range_exact(&clamped);
                let grid = level as i64 + 2;
                Interval::new(min.floor_at(grid), max.ceil_at(grid))
            },
            move |level| level + 1 + sb,
        )
    }

    /// Evaluation through the enclosure: a valid name of `f(x)` for any
    /// name `x` of a point of `[0,1]` (values are clamped to the domain).
    pub fn eval(&self, x: &CReal) -> CReal {
        let f = self.clone();
        let x = x.clone();
        let global = self.ext(&Interval::unit(), 2);
        let bound = &global.lo().abs().max(global.hi().abs()) + &Dyadic::one();
        CReal::from_fn_bounded(
            move |n| {
                let m = f.contraction(n + 1);
                let q = x.approx(m + 1);
                let eps = Dyadic::two_pow(-(m as i64 + 1));
                let raw = Interval::new(&q - &eps, &q + &eps);
                let clamped = raw
                    .intersect(&Interval::unit())
                    .unwrap_or_else(|| Interval::point(q.max(Dyadic::zero()).min(Dyadic::one())));
                f.ext(&clamped, n + 1).midpoint().floor_at(n as i64 + 2)
            },
            bound,
        )
    }

    /// `-|f|`: the maxima of the result sit exactly on the zero set of `f`.
    pub fn neg_abs(&self) -> CFunc {
        let f = self.clone();
        let g = self.clone();
        CFunc::new(
            move |interval, level| f.ext(interval, level).abs().neg(),
            move |level| g.contraction(level),
        )
    }

    /// `f + c` for a real constant given by name.
    pub fn add_creal(&self, c: &CReal) -> CFunc {
        let f = self.clone();
        let g = self.clone();
        let c = c.clone();
        CFunc::new(
            move |interval, level| f.ext(interval, level + 1).add(&c.enclosure(level + 2)),
            move |level| g.contraction(level + 1),
        )
    }

    pub fn sub_creal(&self, c: &CReal) -> CFunc {
        self.add_creal(&c.neg())
    }
}
