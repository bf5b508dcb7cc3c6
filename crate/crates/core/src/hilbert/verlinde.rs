//! Trigonometric evaluation of the middle-degree dimension of `B_{s,t}`.
//!
//! The sum is evaluated in `f64` first. If the result is not within `1e-6`
//! of an integer it is recomputed in double-double arithmetic.

use crate::error::{invalid, Error, Result};

const TOLERANCE: f64 = 1e-6;

/// `dim (B_{s,t})_{s(t-1)/2}` from the trigonometric sum
/// `(1/t) sum_j (-1)^{sj} sin((2j+1) pi / 2t)^{-s}`.
///
/// For odd `s` with `t = 2` the sum cancels to zero, whereas the middle
/// degree `(s+1)/2` carries a single class; that case is answered by
/// [`decruz_closed_form`](super::decruz_closed_form).
pub fn verlinde_dim(s: u32, t: u32) -> Result<u64> {
    if s == 0 || t < 2 {
        return invalid(format!("verlinde_dim needs s >= 1 and t >= 2, got s={s} t={t}"));
    }
    if t == 2 && s % 2 == 1 {
        return Ok(super::decruz_closed_form(s));
    }
    if (u64::from(s) * u64::from(t - 1)) % 2 == 1 {
        return invalid(format!("s(t-1) must be even, got s={s} t={t}"));
    }
    let v = sum_f64(s, t);
    if let Some(k) = near_integer(v) {
        return Ok(k);
    }
    let v = sum_dd(s, t);
    near_integer(v.hi + v.lo).ok_or_else(|| {
        Error::Precision(format!(
            "trigonometric sum for s={s} t={t} evaluates to {} which is not integral",
            v.hi
        ))
    })
}

fn near_integer(v: f64) -> Option<u64> {
    let r = v.round();
    ((v - r).abs() <= TOLERANCE && r >= 0.0 && r < 2f64.powi(53)).then_some(r as u64)
}

// Reduced numerator k in sin(k pi / 2t) with k <= t.
fn reduced_multiple(j: u32, t: u32) -> u32 {
    (2 * j + 1).min(2 * t - 2 * j - 1)
}

fn sum_f64(s: u32, t: u32) -> f64 {
    // Neumaier compensated sum
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for j in 0..t {
        let k = reduced_multiple(j, t);
        let x = f64::from(k) * std::f64::consts::PI / f64::from(2 * t);
        let mut term = x.sin().powi(-(s as i32));
        if (u64::from(s) * u64::from(j)) % 2 == 1 {
            term = -term;
        }
        let next = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - next) + term;
        } else {
            comp += (term - next) + sum;
        }
        sum = next;
    }
    (sum + comp) / f64::from(t)
}

fn sum_dd(s: u32, t: u32) -> Dd {
    let mut acc = Dd::ZERO;
    for j in 0..t {
        let k = reduced_multiple(j, t);
        let x = Dd::PI.mul_f64(f64::from(k)).div(Dd::from(f64::from(2 * t)));
        let term = Dd::ONE.div(x.sin().powu(s));
        acc = if (u64::from(s) * u64::from(j)) % 2 == 1 {
            acc.sub(term)
        } else {
            acc.add(term)
        };
    }
    acc.div(Dd::from(f64::from(t)))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Dd {
        self.mul(Dd::from(b))
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from(q3))
    }

    fn powu(self, mut e: u32) -> Dd {
        let (mut base, mut acc) = (self, Dd::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Taylor series; intended for `0 <= x <= pi/2`.
    fn sin(self) -> Dd {
        let x2 = self.mul(self);
        let mut term = self;
        let mut acc = self;
        let mut k = 1.0f64;
        loop {
            term = term.mul(x2).div(Dd::from((k + 1.0) * (k + 2.0))).neg();
            k += 2.0;
            acc = acc.add(term);
            if term.hi.abs() < 1e-34 * acc.hi.abs() {
                break;
            }
        }
        acc
    }
}
