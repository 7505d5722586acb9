//! Brute-force oracles shared by the integration tests. They only use the
//! field arithmetic from the library, never its analyzer.

#![allow(dead_code)]

use lrc_core::code::LinearCode;
use lrc_core::field::{Elem, Field};

/// All vectors of GF(q)^m in base-q order, first coordinate most significant.
pub fn all_messages(field: &Field, m: usize) -> Vec<Vec<Elem>> {
    let q = field.q() as u64;
    (0..q.pow(m as u32))
        .map(|mut v| {
            let mut x = vec![Elem::ZERO; m];
            for slot in x.iter_mut().rev() {
                *slot = Elem((v % q) as u32);
                v /= q;
            }
            x
        })
        .collect()
}

/// x G computed column by column.
pub fn codeword(code: &LinearCode, x: &[Elem]) -> Vec<Elem> {
    let f = code.field();
    (0..code.n())
        .map(|j| {
            code.rows()
                .iter()
                .zip(x)
                .fold(Elem::ZERO, |acc, (row, &xi)| f.add(acc, f.mul(xi, row[j])))
        })
        .collect()
}

/// Exact [n, k, d] by enumerating every message. k comes from the number of
/// messages mapped to zero, which is q^(m-k).
pub fn brute_params(code: &LinearCode) -> (usize, usize, usize) {
    let f = code.field();
    let m = code.m();
    let mut zeros = 0u64;
    let mut d = usize::MAX;
    for x in all_messages(f, m) {
        let w = codeword(code, &x).iter().filter(|c| !c.is_zero()).count();
        if w == 0 {
            zeros += 1;
        } else {
            d = d.min(w);
        }
    }
    let mut k = m;
    while zeros > 1 {
        zeros /= f.q() as u64;
        k -= 1;
    }
    (code.n(), k, if d == usize::MAX { 0 } else { d })
}

/// For each message, the bitmask of coordinates where its codeword vanishes
/// (n <= 64). Duplicates are removed; the all-zero codeword is dropped.
pub fn zero_masks(code: &LinearCode) -> Vec<u64> {
    assert!(code.n() <= 64);
    let full = if code.n() == 64 { u64::MAX } else { (1u64 << code.n()) - 1 };
    let mut masks: Vec<u64> = all_messages(code.field(), code.m())
        .iter()
        .map(|x| {
            codeword(code, x)
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_zero())
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .filter(|&z| z != full)
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

pub fn pow(q: u64, e: usize) -> i128 {
    (q as i128).pow(e as u32)
}
