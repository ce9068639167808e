//! Slow reference implementations shared by the integration tests. Nothing
//! here calls into the windowed generator or the bit-packed code helpers.

#![allow(dead_code)]

use nscode_core::gf2poly::{oracle_equal, DensePoly};
use nscode_core::{Family, OddPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(a, b)` for odd `n`, one bit at a time.
pub fn slow_decode(n: u64) -> (u64, u64) {
    let mut m = (n - 1) / 2;
    let (mut a, mut b, mut bit) = (0, 0, 0);
    while m > 0 {
        a |= (m & 1) << bit;
        b |= ((m >> 1) & 1) << bit;
        m >>= 2;
        bit += 1;
    }
    (a, b)
}

fn earlier(x: (u64, u64), y: (u64, u64)) -> bool {
    (x.0 + x.1, x.1) < (y.0 + y.1, y.1)
}

/// Condition check straight from the definitions, on a plain exponent list.
pub fn slow_condition_holds(support: &[u64], n: u64, cond: &str) -> bool {
    let (a, b) = slow_decode(n);
    let pairs: Vec<_> = support.iter().map(|&e| slow_decode(e)).collect();
    let all_before = |p: (u64, u64)| pairs.iter().all(|&q| earlier(q, p));
    let exactly =
        |p: (u64, u64)| pairs.contains(&p) && pairs.iter().all(|&q| q == p || earlier(q, p));
    let small_a = || {
        b > 0
            && pairs
                .iter()
                .all(|&q| q == (0, b - 1) || earlier(q, (0, b - 1)))
    };
    match (cond, a) {
        ("1beta", _) => exactly((a, b)),
        ("1gamma", _) => all_before((a, b)),
        ("1alpha", 1..) => exactly((a - 1, b)),
        ("1delta", 1..) => all_before((a - 1, b)),
        _ if a == 0 && b == 0 => pairs.is_empty(),
        _ => small_a(),
    }
}

/// Every `A_n`, odd `n ≤ n_max`, from the full table rather than a window.
/// Entry `i` is `A_{2i+1}`.
pub fn table_terms(seeds: &[DensePoly], star_star: bool, r: usize, n_max: u64) -> Vec<DensePoly> {
    let count = n_max.div_ceil(2) as usize;
    let mut terms: Vec<DensePoly> = Vec::with_capacity(count);
    for i in 0..count {
        let p = if i < seeds.len() {
            seeds[i].clone()
        } else if star_star {
            // A_n = t^{16r} A_{n-16r} + t^{4r} A_{n-12r} + t^{2r} A_{n-14r}
            terms[i - 8 * r]
                .mul_tpow(16 * r as u64)
                .add(&terms[i - 6 * r].mul_tpow(4 * r as u64))
                .add(&terms[i - 7 * r].mul_tpow(2 * r as u64))
        } else {
            // A_n = t^{8r} A_{n-8r} + t^{2r} A_{n-6r}
            terms[i - 4 * r]
                .mul_tpow(8 * r as u64)
                .add(&terms[i - 3 * r].mul_tpow(2 * r as u64))
        };
        terms.push(p);
    }
    terms
}

pub fn family_table(family: Family, n_max: u64) -> Vec<DensePoly> {
    let spec = family.spec();
    let seeds: Vec<_> = spec
        .seeds()
        .map(|(_, p)| DensePoly::from_exponents(p.terms()))
        .collect();
    table_terms(&seeds, family == Family::Cor42, spec.r() as usize, n_max)
}

/// First base `n` at which `A_{n+16s} = t^{16s}A_n + t^{4s}A_{n+4s}` fails
/// for `s = r` or `s = 2r`.
pub fn first_doubling_failure(terms: &[DensePoly], r: usize) -> Option<u64> {
    (0..terms.len()).find_map(|i| {
        [r, 2 * r].into_iter().find_map(|s| {
            let lhs = terms.get(i + 8 * s)?;
            let rhs = terms[i]
                .mul_tpow(16 * s as u64)
                .add(&terms[i + 2 * s].mul_tpow(4 * s as u64));
            (lhs.support() != rhs.support()).then_some(2 * i as u64 + 1)
        })
    })
}

/// Random add / shift sequence run on both representations; `true` when
/// every intermediate value agrees.
pub fn op_sequence_agrees(seed: u64, max_deg: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_poly = |rng: &mut ChaCha8Rng, top: u64| {
        let count = rng.gen_range(0..16);
        (0..count)
            .map(|_| 2 * rng.gen_range(0..top / 2) + 1)
            .collect::<Vec<u64>>()
    };
    let start = random_poly(&mut rng, max_deg / 4);
    let mut fast = OddPoly::from_exponents(start.iter().copied()).unwrap();
    let mut naive = DensePoly::from_exponents(start);
    for _ in 0..rng.gen_range(1..40) {
        let deg = fast.degree().unwrap_or(0);
        if rng.gen_bool(0.5) && deg + 2 <= max_deg {
            let e = 2 * rng.gen_range(0..=(max_deg - deg) / 2);
            fast = fast.mul_tpow(e).unwrap();
            naive = naive.mul_tpow(e);
        } else {
            let other = random_poly(&mut rng, max_deg);
            fast = fast + OddPoly::from_exponents(other.iter().copied()).unwrap();
            naive = naive.add(&DensePoly::from_exponents(other));
        }
        if !oracle_equal(&fast, &naive) || fast.degree().is_some_and(|d| d > max_deg) {
            return false;
        }
    }
    true
}
