//! Krawtchouk polynomials and the additive character-sum oracle.
//!
//! Character sums are never evaluated numerically. For a vector `x` and a
//! weight `s`, the oracle counts `N_c = #{y : wt(y) = s, tr(x.y) = c}` for each
//! `c` in GF(p). Since the nontrivial p-th roots of unity sum to -1, the
//! character sum equals `N_0 - N_1` exactly once `N_c` is constant on `c != 0`.

use thiserror::Error;

use crate::field::{Elem, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrawtchoukError {
    #[error("invalid query: need 0 <= k <= n and 0 <= x <= n (k={k}, x={x}, n={n})")]
    Query { k: u64, x: u64, n: u64 },
    #[error("enumerating {count} vectors exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u64 },
    #[error("shell weight {s} exceeds vector length {n}")]
    Weight { s: usize, n: usize },
    #[error("coset counts {0:?} are not constant over nonzero traces")]
    UnbalancedCosets(Vec<u64>),
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// K_k(x; n, q) from the defining alternating sum.
pub fn kraw_eval(k: u64, x: u64, n: u64, q: u64) -> Result<i128, KrawtchoukError> {
    if k > n || x > n {
        return Err(KrawtchoukError::Query { k, x, n });
    }
    let q1 = (q - 1) as i128;
    let mut sum = 0i128;
    for j in 0..=k {
        let term = binomial(x, j) * binomial(n - x, k - j) * q1.pow((k - j) as u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Degree-2 Krawtchouk value from its closed quadratic form
/// `(q^2/2) a^2 - ((2(q-1)qs + q(2-q))/2) a + C(s,2)(q-1)^2`, evaluated as
/// twice the value over the integers and halved at the end.
pub fn kraw2_quadratic(a: u64, s: u64, q: u64) -> Result<i128, KrawtchoukError> {
    if a > s {
        return Err(KrawtchoukError::Query { k: 2, x: a, n: s });
    }
    let (a, s, q) = (a as i128, s as i128, q as i128);
    let twice = q * q * a * a - (2 * (q - 1) * q * s + q * (2 - q)) * a
        + s * (s - 1) * (q - 1) * (q - 1);
    debug_assert_eq!(twice % 2, 0);
    Ok(twice / 2)
}

/// Axis of symmetry of `a -> K_2(a; s, q)` as the exact fraction
/// `(2(q-1)s + 2 - q) / (2q)`, returned as (numerator, denominator).
pub fn kraw2_axis(s: u64, q: u64) -> (i128, i128) {
    let (s, q) = (s as i128, q as i128);
    (2 * (q - 1) * s + 2 - q, 2 * q)
}

/// Minimum of K_2(a; s, q) over integers `a` in `0..=s`, by direct scan.
/// Returns the smallest minimizing `a` and the minimum.
pub fn kraw2_integer_min(s: u64, q: u64) -> (u64, i128) {
    (0..=s)
        .map(|a| (a, kraw_eval(2, a, s, q).expect("a <= s")))
        .min_by_key(|&(a, v)| (v, a))
        .expect("range is nonempty")
}

/// Coset counts and the exact character-sum value for one shell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSum {
    /// `counts[c]` = number of weight-s vectors y with tr(x.y) = c.
    pub counts: Vec<u64>,
    pub value: i128,
}

/// Evaluates `sum over wt(y) = s of w_p^{tr(x.y)}` by enumerating the shell.
pub fn char_sum_oracle(
    field: &Field,
    x: &[Elem],
    s: usize,
    budget: u64,
) -> Result<CharSum, KrawtchoukError> {
    let n = x.len();
    if s > n {
        return Err(KrawtchoukError::Weight { s, n });
    }
    let q = field.q() as u128;
    let size = binomial(n as u64, s as u64) as u128 * (q - 1).pow(s as u32);
    if size > budget as u128 {
        return Err(KrawtchoukError::BudgetExceeded {
            count: size,
            budget,
        });
    }
    let mut counts = vec![0u64; field.p() as usize];
    let mut support = Vec::with_capacity(s);
    shell_walk(field, x, 0, s, &mut support, &mut |y_support| {
        // y_support holds (position, value) pairs; only they contribute.
        let dot = y_support
            .iter()
            .fold(Elem::ZERO, |acc, &(i, v)| field.add(acc, field.mul(x[i], v)));
        counts[field.trace_to_prime(dot) as usize] += 1;
    });
    let nonzero = &counts[1..];
    if nonzero.windows(2).any(|w| w[0] != w[1]) {
        return Err(KrawtchoukError::UnbalancedCosets(counts));
    }
    let value = counts[0] as i128 - counts[1] as i128;
    Ok(CharSum { counts, value })
}

fn shell_walk(
    field: &Field,
    x: &[Elem],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<(usize, Elem)>,
    visit: &mut impl FnMut(&[(usize, Elem)]),
) {
    if remaining == 0 {
        visit(chosen);
        return;
    }
    for i in start..=x.len() - remaining {
        for v in field.nonzero() {
            chosen.push((i, v));
            shell_walk(field, x, i + 1, remaining - 1, chosen, visit);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        for q in 2..6 {
            for n in 0..6 {
                for a in 0..=n {
                    assert_eq!(kraw_eval(0, a, n, q).unwrap(), 1);
                }
                if n >= 1 {
                    assert_eq!(kraw_eval(1, 0, n, q).unwrap(), (n * (q - 1)) as i128);
                }
            }
        }
        assert_eq!(kraw_eval(2, 1, 3, 2).unwrap(), -1);
        assert!(kraw_eval(4, 0, 3, 2).is_err());
    }

    #[test]
    fn quadratic_form_matches_definition() {
        for s in 2..=8u64 {
            for q in 2..=9u64 {
                assert_eq!(kraw2_quadratic(0, s, q).unwrap(), binomial(s, 2) * ((q - 1) as i128).pow(2));
                for a in 0..=s {
                    assert_eq!(kraw2_quadratic(a, s, q).unwrap(), kraw_eval(2, a, s, q).unwrap());
                }
            }
        }
        assert_eq!(kraw2_quadratic(1, 3, 2).unwrap(), -1);
    }

    #[test]
    fn oracle_small_cases() {
        let f2 = Field::with_order(2).unwrap();
        let x = [Elem(1), Elem(0), Elem(0)];
        let cs = char_sum_oracle(&f2, &x, 2, 1 << 20).unwrap();
        // y in {110, 101, 011}: traces 1, 1, 0.
        assert_eq!(cs.counts, vec![1, 2]);
        assert_eq!(cs.value, -1);

        let f4 = Field::with_order(4).unwrap();
        let zero = [Elem(0); 4];
        for s in 0..=4 {
            let cs = char_sum_oracle(&f4, &zero, s, 1 << 20).unwrap();
            assert_eq!(cs.value, binomial(4, s as u64) * 3i128.pow(s as u32));
        }
        assert!(matches!(
            char_sum_oracle(&f4, &zero, 4, 10),
            Err(KrawtchoukError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn axis_and_integer_minimum() {
        for q in 2..=9u64 {
            for s in 3..=10u64 {
                let (num, den) = kraw2_axis(s, q);
                // axis >= s/2 > 1
                assert!(2 * num >= s as i128 * den);
                assert!(num > den);
                let (a, v) = kraw2_integer_min(s, q);
                assert!(a >= 1);
                // integer minimizer sits next to the axis
                assert!(((a as i128) * den - num).abs() <= den);
                assert!((0..=s).all(|b| kraw_eval(2, b, s, q).unwrap() >= v));
            }
        }
    }
}
