//! The Nicolas–Serre code `[a,b] = t^{1 + 2g(a) + 4g(b)}` and the
//! multiplication laws for `t^{2q²}` and `t^{4q²}`.
//!
//! `g` reads the binary digits of its argument as base-4 digits, so encoding
//! interleaves the bits of `a` (even positions) and `b` (odd positions) of
//! `(n - 1) / 2`. Decoding is the inverse de-interleave.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2poly::MAX_EXPONENT;
use crate::report::{Counterexample, Location, VerificationReport};

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Code coordinates of an odd monomial.
///
/// The ordering is the code listing `[0,0], [1,0], [0,1], [2,0], [1,1], …`:
/// graded by `a + b`, ties broken by the smaller `b` coming first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodePair {
    pub a: u64,
    pub b: u64,
}

impl CodePair {
    pub const fn new(a: u64, b: u64) -> Self {
        CodePair { a, b }
    }

    pub fn encode(self) -> Result<u64> {
        encode(self)
    }

    pub fn decode(n: u64) -> Result<Self> {
        decode(n)
    }

    /// Strictly earlier in the code listing.
    pub fn precedes(self, other: CodePair) -> bool {
        self < other
    }

    fn key(self) -> (u64, u64) {
        (self.a + self.b, self.b)
    }
}

impl Ord for CodePair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for CodePair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CodePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | x << 16) & 0x0000_ffff_0000_ffff;
    x = (x | x << 8) & 0x00ff_00ff_00ff_00ff;
    x = (x | x << 4) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | x << 2) & 0x3333_3333_3333_3333;
    (x | x << 1) & EVEN_BITS
}

fn compact(x: u64) -> u64 {
    let mut x = x & EVEN_BITS;
    x = (x | x >> 1) & 0x3333_3333_3333_3333;
    x = (x | x >> 2) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | x >> 4) & 0x00ff_00ff_00ff_00ff;
    x = (x | x >> 8) & 0x0000_ffff_0000_ffff;
    (x | x >> 16) & 0x0000_0000_ffff_ffff
}

/// `g(2n) = 4g(n)`, `g(2n+1) = g(2n) + 1`.
pub fn g(n: u64) -> Result<u64> {
    let small = u32::try_from(n).map_err(|_| Error::Capacity(n))?;
    let v = spread(small);
    if v > MAX_EXPONENT {
        return Err(Error::Capacity(v));
    }
    Ok(v)
}

pub fn encode(p: CodePair) -> Result<u64> {
    let ga = g(p.a)?;
    let gb = g(p.b)?;
    // 2g(a) and 4g(b) occupy disjoint bits.
    let n = 1 + 2 * (ga | (2 * gb));
    if n > MAX_EXPONENT {
        return Err(Error::Capacity(n));
    }
    Ok(n)
}

pub fn decode(n: u64) -> Result<CodePair> {
    if n.is_multiple_of(2) {
        return Err(if n == 0 {
            Error::ZeroExponent
        } else {
            Error::EvenExponent(n)
        });
    }
    Ok(decode_odd(n))
}

pub(crate) fn decode_odd(n: u64) -> CodePair {
    debug_assert!(n % 2 == 1);
    let m = (n - 1) / 2;
    CodePair::new(compact(m), compact(m >> 1))
}

/// Strict precedence of `c_d` before `a_b`.
pub fn precedes(c_d: CodePair, a_b: CodePair) -> bool {
    c_d.precedes(a_b)
}

/// `S_{i,j}: [a,b] ↦ [2a+i, 2b+j]` with `i, j ∈ {0, q}`.
pub fn s_big(q: u64, i: u64, j: u64, p: CodePair) -> Result<CodePair> {
    if !q.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(q));
    }
    if (i != 0 && i != q) || (j != 0 && j != q) {
        return Err(Error::InvalidOperator {
            i: i as i64,
            j: j as i64,
        });
    }
    Ok(CodePair::new(2 * p.a + i, 2 * p.b + j))
}

/// Exhaustively checks the `t^{2q²}` / `t^{4q²}` laws on `0 ≤ a < a_max`,
/// `0 ≤ b < b_max` for each `q` in `q_set`:
///
/// * `t^{2q²}[a,b] = [a+q,b]` when `⌊a/q⌋` is even, strictly earlier when odd;
/// * `t^{4q²}[a,b] = [a,b+q]` when `⌊b/q⌋` is even, strictly earlier when odd;
/// * when `q` divides both `a` and `b`: `S_{0,0}, S_{q,0}, S_{0,q}, S_{q,q}`
///   send `t^n` to `t^{4n-3}` plus `0, 2q², 4q², 6q²`, and
///   `t^{4q²}∘S_{0,q} = S_{0,0}∘t^{2q²} = t^{2q²}∘S_{q,q}`,
///   `t^{4q²}∘S_{q,q} = S_{q,0}∘t^{2q²}` on `[a,b]`. Outside that case the
///   offsets are wrong for `q ≥ 2` (e.g. `S_{2,0}[1,0] = [4,0] = t^33`, not
///   `t^17`).
///
/// Grid order is `q` (as given), then `a`, then `b`.
pub fn verify_shift_laws(a_max: u64, b_max: u64, q_set: &[u64]) -> Result<VerificationReport> {
    if let Some(&q) = q_set.iter().find(|q| !q.is_power_of_two()) {
        return Err(Error::NotPowerOfTwo(q));
    }
    // Capacity of the largest operator image, checked once up front.
    let top = a_max.max(b_max);
    let q_top = q_set.iter().copied().max().unwrap_or(1);
    encode(CodePair::new(2 * top + q_top, 2 * top + q_top))?;

    let qs = q_set
        .iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut report =
        VerificationReport::new("shift-laws", format!("a<{a_max}, b<{b_max}, q in {{{qs}}}"));
    let per_q = (a_max * b_max) as usize;
    report.sweep(per_q * q_set.len(), |idx| {
        let q = q_set[idx / per_q];
        let rest = (idx % per_q) as u64;
        check_shift_point(rest / b_max, rest % b_max, q)
    });
    Ok(report)
}

fn check_shift_point(a: u64, b: u64, q: u64) -> Option<Counterexample> {
    let at = Location::Grid { a, b, q };
    let enc = |p: CodePair| encode(p).expect("capacity checked before sweep");
    let n = enc(CodePair::new(a, b));
    let two = 2 * q * q;
    let four = 4 * q * q;

    let laws = [
        (
            n + two,
            CodePair::new(a + q, b),
            (a / q).is_multiple_of(2),
            "t^(2q^2)",
        ),
        (
            n + four,
            CodePair::new(a, b + q),
            (b / q).is_multiple_of(2),
            "t^(4q^2)",
        ),
    ];
    for (m, target, even, op) in laws {
        let got = decode_odd(m);
        let fail = |clause: String| {
            Some(
                Counterexample::new(at, clause)
                    .polynomial(format!("t^{m}"))
                    .pairs(Some(got), Some(target)),
            )
        };
        if got > target {
            return fail(format!("{op}[a,b] later than target"));
        }
        if even && got != target {
            return fail(format!("{op}[a,b] != target with even quotient"));
        }
        if !even && got == target {
            return fail(format!("{op}[a,b] not strictly earlier with odd quotient"));
        }
    }

    if !a.is_multiple_of(q) || !b.is_multiple_of(q) {
        return None;
    }
    let p = CodePair::new(a, b);
    let s = |i, j| enc(s_big(q, i, j, p).expect("q validated"));
    let base = 4 * n - 3;
    let images = [
        (s(0, 0), base, "S_(0,0)"),
        (s(q, 0), base + two, "S_(q,0)"),
        (s(0, q), base + four, "S_(0,q)"),
        (s(q, q), base + 3 * two, "S_(q,q)"),
    ];
    for (got, want, op) in images {
        if got != want {
            return Some(
                Counterexample::new(at, format!("{op} t^n != t^(4n-3+shift)"))
                    .polynomial(format!("t^{got}")),
            );
        }
    }

    let shifted = decode_odd(n + two);
    let s00_after = enc(s_big(q, 0, 0, shifted).expect("q validated"));
    let s_q0_after = enc(s_big(q, q, 0, shifted).expect("q validated"));
    let first = s(0, q) + four;
    let third = s(q, q) + two;
    if first != s00_after || s00_after != third {
        return Some(
            Counterexample::new(at, "t^(4q^2)S_(0,q) = S_(0,0)t^(2q^2) = t^(2q^2)S_(q,q)")
                .polynomial(format!("t^{first}, t^{s00_after}, t^{third}")),
        );
    }
    let lhs = s(q, q) + four;
    if lhs != s_q0_after {
        return Some(
            Counterexample::new(at, "t^(4q^2)S_(q,q) = S_(q,0)t^(2q^2)")
                .polynomial(format!("t^{lhs}, t^{s_q0_after}")),
        );
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(a: u64, b: u64) -> CodePair {
        CodePair::new(a, b)
    }

    /// Straight from the functional equations.
    fn g_recursive(n: u64) -> u64 {
        match n {
            0 => 0,
            _ if n.is_multiple_of(2) => 4 * g_recursive(n / 2),
            _ => g_recursive(n - 1) + 1,
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(0).unwrap(), 0);
        assert_eq!(g(2).unwrap(), 4);
        assert_eq!(g(5).unwrap(), 17);
        for n in 0..5000 {
            assert_eq!(g(n).unwrap(), g_recursive(n), "n = {n}");
        }
    }

    #[test]
    fn g_capacity() {
        assert_eq!(g(1 << 20).unwrap(), 1 << 40);
        assert!(g((1 << 20) + 1).is_err());
        assert!(g(u64::MAX).is_err());
    }

    #[test]
    fn encode_decode_examples() {
        assert_eq!(encode(cp(0, 0)).unwrap(), 1);
        assert_eq!(encode(cp(1, 1)).unwrap(), 7);
        assert_eq!(encode(cp(2, 1)).unwrap(), 13);
        assert_eq!(decode(1).unwrap(), cp(0, 0));
        assert_eq!(decode(5).unwrap(), cp(0, 1));
        assert_eq!(decode(13).unwrap(), cp(2, 1));
        assert_eq!(decode(3).unwrap(), cp(1, 0));
        assert_eq!(decode(7).unwrap(), cp(1, 1));
        assert_eq!(decode(8), Err(Error::EvenExponent(8)));
        assert_eq!(decode(0), Err(Error::ZeroExponent));
    }

    #[test]
    fn decode_matches_brute_force_search() {
        let mut table = std::collections::HashMap::new();
        for a in 0..64 {
            for b in 0..64 {
                let n = 1 + 2 * g_recursive(a) + 4 * g_recursive(b);
                assert!(table.insert(n, cp(a, b)).is_none());
            }
        }
        for n in (1..2000u64).step_by(2) {
            if let Some(&p) = table.get(&n) {
                assert_eq!(decode(n).unwrap(), p);
            }
        }
    }

    #[test]
    fn listing_order() {
        let listing = [
            cp(0, 0),
            cp(1, 0),
            cp(0, 1),
            cp(2, 0),
            cp(1, 1),
            cp(0, 2),
            cp(3, 0),
            cp(2, 1),
            cp(1, 2),
            cp(0, 3),
        ];
        for w in listing.windows(2) {
            assert!(precedes(w[0], w[1]));
            assert!(!precedes(w[1], w[0]));
        }
        assert!(precedes(cp(1, 1), cp(0, 2)));
        assert!(!precedes(cp(0, 0), cp(0, 0)));
        assert!(precedes(cp(2, 0), cp(1, 1)));
    }

    #[test]
    fn s_big_examples() {
        assert_eq!(s_big(1, 1, 1, cp(0, 0)).unwrap(), cp(1, 1));
        assert_eq!(encode(cp(1, 1)).unwrap(), 7);
        assert_eq!(s_big(1, 0, 0, cp(1, 0)).unwrap(), cp(2, 0));
        assert_eq!(encode(cp(2, 0)).unwrap(), 9);
        assert_eq!(s_big(2, 2, 0, cp(1, 0)).unwrap(), cp(4, 0));
        // 2 does not divide a = 1, so the +2q^2 offset does not apply:
        // 4·3 - 3 + 8 = 17, but [4,0] = t^(1 + 2·16).
        assert_eq!(encode(cp(4, 0)).unwrap(), 33);
        assert_eq!(decode(17).unwrap(), cp(0, 2));
        // with 2 | a and 2 | b it does: [2,0] = t^9, S_(2,0)[2,0] = [6,0] = t^(33+8)
        assert_eq!(
            encode(s_big(2, 2, 0, cp(2, 0)).unwrap()).unwrap(),
            4 * 9 - 3 + 8
        );
        assert!(s_big(2, 1, 0, cp(0, 0)).is_err());
        assert_eq!(s_big(3, 0, 0, cp(0, 0)), Err(Error::NotPowerOfTwo(3)));
    }

    #[test]
    fn shift_law_examples() {
        // q=2, [1,0]: t^8 · t^3 = t^11 = [3,0]
        assert_eq!(decode(encode(cp(1, 0)).unwrap() + 8).unwrap(), cp(3, 0));
        assert_eq!(decode(11).unwrap(), cp(3, 0));
        // q=1, [1,0]: t^2 · t^3 = t^5 = [0,1], strictly before [2,0]
        assert_eq!(decode(5).unwrap(), cp(0, 1));
        assert!(precedes(cp(0, 1), cp(2, 0)));
    }

    #[test]
    fn shift_laws_small_sweep() {
        let r = verify_shift_laws(64, 64, &[1, 2, 4, 8]).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 64 * 64 * 4);
        assert_eq!(verify_shift_laws(4, 4, &[3]), Err(Error::NotPowerOfTwo(3)));
    }
}
