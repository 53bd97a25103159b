/// Outcome of a bracketed root search for `f(x) = target` with `f` increasing.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bisection {
    pub x: f64,
    pub value: f64,
    pub iterations: u32,
    pub converged: bool,
}

/// Bisection with geometric bracket expansion starting from `[-1, 1]`.
///
/// Every evaluation of `f` (expansion or bisection) counts against `cap`.
/// Stops once `|f(x) - target| <= tol`.
pub(crate) fn bisect_increasing(f: impl Fn(f64) -> f64, target: f64, tol: f64, cap: u32) -> Bisection {
    let mut lo = -1.0_f64;
    let mut hi = 1.0_f64;
    let mut iterations = 0u32;
    let done = |x: f64, value: f64, iterations: u32, converged: bool| Bisection {
        x,
        value,
        iterations,
        converged,
    };

    let mut f_lo = f(lo);
    while f_lo > target {
        iterations += 1;
        if (f_lo - target).abs() <= tol {
            return done(lo, f_lo, iterations, true);
        }
        if iterations >= cap {
            return done(lo, f_lo, iterations, false);
        }
        hi = lo;
        lo *= 2.0;
        f_lo = f(lo);
    }
    let mut f_hi = f(hi);
    while f_hi < target {
        iterations += 1;
        if (f_hi - target).abs() <= tol {
            return done(hi, f_hi, iterations, true);
        }
        if iterations >= cap {
            return done(hi, f_hi, iterations, false);
        }
        lo = hi;
        hi *= 2.0;
        f_hi = f(hi);
    }

    loop {
        let mid = 0.5 * (lo + hi);
        let value = f(mid);
        iterations += 1;
        if (value - target).abs() <= tol {
            return done(mid, value, iterations, true);
        }
        if iterations >= cap || mid <= lo || mid >= hi {
            return done(mid, value, iterations, false);
        }
        if value < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// `log(sum_i exp(a_i))` with the maximum shifted out.
pub(crate) fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    // Sum of all other terms relative to one maximal term; ln_1p keeps tiny
    // tails that ln(1 + x) would round away.
    let mut seen_max = false;
    let rest: f64 = terms
        .filter(|&t| {
            if t == max && !seen_max {
                seen_max = true;
                false
            } else {
                true
            }
        })
        .map(|t| (t - max).exp())
        .sum();
    max + rest.ln_1p()
}
