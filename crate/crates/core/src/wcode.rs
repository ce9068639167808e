//! The variant code in `w`: the linear bijection `φ: V → V'`, the pairs
//! `⟨a,b⟩ = φ[a,b]`, the operators `s_{i,j}`, and the polynomials `P_k`.
//!
//! `P_k` is built two independent ways: by `w^10`-substitution into the
//! α/β/γ/δ families, and from sixteen initial values through
//! `P_{k+80} = w^80 P_k + w^20 P_{k+20}`. Agreement of the two is itself
//! one of the sweeps.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::{is_w_exponent, OddPoly, WPoly};
use crate::nscode::{decode_odd, encode, CodePair};
use crate::recurrences::{collect_terms, Condition, Family};
use crate::report::{Counterexample, Location, VerificationReport};

/// `φ` on `t, t^3, t^5, t^9`.
const PHI_LOW: [(u64, u64); 4] = [(1, 1), (3, 3), (5, 7), (9, 9)];
/// `φ` on `t^7, t^11, t^13, t^15`.
const PHI_HIGH: [(u64, u64); 4] = [(7, 21), (11, 27), (13, 23), (15, 29)];

fn phi_base(v: u64) -> u64 {
    PHI_LOW
        .iter()
        .chain(&PHI_HIGH)
        .find(|(t, _)| *t == v)
        .map(|&(_, w)| w)
        .expect("v is odd and below 16")
}

/// Image of the single monomial `t^e`, `e` odd.
pub fn phi_exponent(e: u64) -> u64 {
    40 * (e / 16) + phi_base(e % 16)
}

pub fn phi(p: &OddPoly) -> WPoly {
    WPoly::from_exponents(p.terms().map(phi_exponent)).expect("phi lands in V'")
}

/// The odd `e` with `φ(t^e) = w^k`.
pub fn phi_inv(k: u64) -> Result<u64> {
    let rem = k % 40;
    PHI_LOW
        .iter()
        .chain(&PHI_HIGH)
        .find(|(_, w)| *w == rem)
        .map(|&(t, _)| 16 * (k / 40) + t)
        .ok_or(Error::InvalidResidue(k))
}

pub fn phi_inv_poly(p: &WPoly) -> OddPoly {
    OddPoly::from_exponents(
        p.terms()
            .map(|k| phi_inv(k).expect("WPoly holds valid exponents")),
    )
    .expect("preimage is odd")
}

/// `⟨a,b⟩`, ordered like [`CodePair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WCodePair(pub CodePair);

impl WCodePair {
    pub const fn new(a: u64, b: u64) -> Self {
        WCodePair(CodePair::new(a, b))
    }
}

impl fmt::Display for WCodePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.0.a, self.0.b)
    }
}

pub fn wencode(a: u64, b: u64) -> Result<u64> {
    Ok(phi_exponent(encode(CodePair::new(a, b))?))
}

pub fn wdecode(k: u64) -> Result<WCodePair> {
    Ok(WCodePair(decode_odd(phi_inv(k)?)))
}

fn wdecode_valid(k: u64) -> CodePair {
    decode_odd(phi_inv(k).expect("WPoly holds valid exponents"))
}

/// Latest `⟨a,b⟩` among the monomials of `p`.
pub fn w_dominant_pair(p: &WPoly) -> Option<WCodePair> {
    p.terms().map(wdecode_valid).max().map(WCodePair)
}

/// Membership in `V1` (exponents `≡ 1 mod 4`) and `V3` (`≡ 3 mod 4`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    /// The zero polynomial, which lies in both.
    Zero,
    V1,
    V3,
    Mixed,
}

impl Parity {
    pub fn in_v1(self) -> bool {
        matches!(self, Parity::Zero | Parity::V1)
    }

    pub fn in_v3(self) -> bool {
        matches!(self, Parity::Zero | Parity::V3)
    }
}

pub fn v_parity(p: &OddPoly) -> Parity {
    match p.residues_mod4() {
        (false, false) => Parity::Zero,
        (true, false) => Parity::V1,
        (false, true) => Parity::V3,
        (true, true) => Parity::Mixed,
    }
}

/// Admissible `(i, j)` for [`s_small`].
pub const S_INDICES: [(i64, i64); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (-1, 1)];

/// `s_{i,j}: [c,d] ↦ ⟨2c+i, 2d+j⟩`, extended linearly. `s_{-1,1}` is only
/// defined on `V3`, where every `c` is odd.
pub fn s_small(i: i64, j: i64, p: &OddPoly) -> Result<WPoly> {
    if !S_INDICES.contains(&(i, j)) {
        return Err(Error::InvalidOperator { i, j });
    }
    if i < 0 {
        if let Some(e) = p.terms().find(|e| e % 4 != 3) {
            return Err(Error::NotInV3(e));
        }
    }
    let exps = p
        .terms()
        .map(|e| {
            let CodePair { a: c, b: d } = decode_odd(e);
            let a = (2 * c as i64 + i) as u64;
            wencode(a, 2 * d + j as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    WPoly::from_exponents(exps)
}

/// Which families feed `P_k`, as `(family, c)` terms of `w^{-c} f_n(w^10)`.
fn pk_row(k: u64) -> Result<(u64, [(Family, u64); 2])> {
    if k == 0 || !is_w_exponent(k) {
        return Err(Error::InvalidResidue(k));
    }
    use Family::*;
    Ok(match k % 10 {
        1 => (k.div_ceil(10), [(Alpha, 3), (Delta, 7)]),
        3 => ((k + 7) / 10, [(Beta, 9), (Delta, 1)]),
        7 => ((k + 3) / 10, [(Alpha, 1), (Gamma, 9)]),
        9 => ((k + 1) / 10, [(Beta, 7), (Gamma, 3)]),
        _ => unreachable!("residue checked"),
    })
}

fn slot(k: u64) -> usize {
    let s = match k % 20 {
        1 => 0,
        3 => 1,
        7 => 2,
        _ => 3,
    };
    (4 * (k / 20) + s) as usize
}

fn slot_exponent(i: usize) -> u64 {
    20 * (i as u64 / 4) + [1, 3, 7, 9][i % 4]
}

/// `P_k` for every valid `k ≤ k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PkTable {
    polys: Vec<WPoly>,
}

impl PkTable {
    pub fn get(&self, k: u64) -> Option<&WPoly> {
        if k == 0 || !is_w_exponent(k) {
            return None;
        }
        self.polys.get(slot(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &WPoly)> {
        self.polys
            .iter()
            .enumerate()
            .map(|(i, p)| (slot_exponent(i), p))
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

fn valid_count(k_max: u64) -> usize {
    (0..).take_while(|&i| slot_exponent(i) <= k_max).count()
}

/// `P_k` from the families, regenerating them for this single `k`.
pub fn pk_from_families(k: u64) -> Result<WPoly> {
    let (n, row) = pk_row(k)?;
    let mut out = WPoly::zero();
    for (family, c) in row {
        let terms = collect_terms(&family.spec(), n)?;
        out += &terms[(n / 2) as usize].subst10_shift(c)?;
    }
    Ok(out)
}

/// `P_k` from the families for all valid `k ≤ k_max`, generating each family
/// once up to `n = (k_max + 9) / 10`.
pub fn pk_table_from_families(k_max: u64) -> Result<PkTable> {
    let n_top = k_max.div_ceil(10);
    let gen = |f: Family| collect_terms(&f.spec(), n_top);
    let fams = [
        gen(Family::Alpha)?,
        gen(Family::Beta)?,
        gen(Family::Gamma)?,
        gen(Family::Delta)?,
    ];
    let count = valid_count(k_max);
    let polys = (0..count)
        .map(|i| {
            let (n, row) = pk_row(slot_exponent(i))?;
            let mut out = WPoly::zero();
            for (family, c) in row {
                out += &fams[family as usize][(n / 2) as usize].subst10_shift(c)?;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PkTable { polys })
}

/// The sixteen initial values `P_k`, `k < 80`, as exponent lists.
pub const PK_SEEDS: [(u64, &[u64]); 16] = [
    (1, &[]),
    (3, &[1]),
    (7, &[]),
    (9, &[3]),
    (21, &[7]),
    (23, &[21]),
    (27, &[9]),
    (29, &[23]),
    (41, &[]),
    (43, &[41]),
    (47, &[21]),
    (49, &[43, 27]),
    (61, &[47, 23]),
    (63, &[61, 29, 21]),
    (67, &[49, 41]),
    (69, &[63, 47, 23]),
];

/// `P_k` for valid `k ≤ k_max` from [`PK_SEEDS`] and
/// `P_{k+80} = w^80 P_k + w^20 P_{k+20}`.
pub fn pk_from_recurrence(k_max: u64) -> Result<PkTable> {
    let count = valid_count(k_max);
    let mut polys: Vec<WPoly> = Vec::with_capacity(count);
    for i in 0..count {
        let p = if i < PK_SEEDS.len() {
            WPoly::from_exponents(PK_SEEDS[i].1.iter().copied())?
        } else {
            // k = slot_exponent(i); k - 80 sits 16 slots back, k - 60 twelve.
            polys[i - 16].mul_w20(4)? + polys[i - 12].mul_w20(1)?
        };
        polys.push(p);
    }
    Ok(PkTable { polys })
}

pub fn verify_pk_agreement(k_max: u64) -> Result<VerificationReport> {
    let from_families = pk_table_from_families(k_max)?;
    let from_recurrence = pk_from_recurrence(k_max)?;
    let mut report = VerificationReport::new("pk-agreement", format!("valid k <= {k_max}"));
    report.sweep(from_recurrence.len(), |i| {
        let (k, want) = (slot_exponent(i), &from_recurrence.polys[i]);
        let got = &from_families.polys[i];
        (got != want).then(|| {
            Counterexample::new(
                Location::K(k),
                format!("families give {got}, recurrence gives {want}"),
            )
            .polynomial(got)
        })
    });
    Ok(report)
}

/// For `w^k = ⟨a,b⟩`: if `a > 0`, `P_k = ⟨a-1,b⟩ +` earlier monomials; if
/// `a = 0`, `P_k` only has monomials at or before `⟨0,b-1⟩`; `P_1 = 0`.
pub fn verify_pk_dominance(k_max: u64) -> Result<VerificationReport> {
    let table = pk_from_recurrence(k_max)?;
    let mut report = VerificationReport::new("pk-dominance", format!("valid k <= {k_max}"));
    report.sweep(table.len(), |i| {
        let k = slot_exponent(i);
        let p = &table.polys[i];
        let rule = Condition::OneAlpha.rule(wdecode_valid(k));
        let dom = w_dominant_pair(p).map(|w| w.0);
        (!rule.holds(dom)).then(|| {
            Counterexample::new(Location::K(k), rule.describe())
                .polynomial(p)
                .pairs(dom, rule.bound())
        })
    });
    Ok(report)
}

/// `φ` on the four monomials attached to `n`, and their expected images.
fn phi_rows(n: u64) -> ([u64; 4], [u64; 4]) {
    if n % 4 == 1 {
        (
            [4 * n - 3, 4 * n - 1, 4 * n + 1, 4 * n + 5],
            [10 * n - 9, 10 * n - 7, 10 * n - 3, 10 * n - 1],
        )
    } else {
        (
            [4 * n - 5, 4 * n - 1, 4 * n + 1, 4 * n + 3],
            [10 * n - 9, 10 * n - 3, 10 * n - 7, 10 * n - 1],
        )
    }
}

/// `(i, j, c)` with `s_{i,j}(f) = w^{-c} f(w^10)` on `V1` resp. `V3`.
pub const SUBST_V1: [(i64, i64, u64); 4] = [(0, 0, 9), (1, 0, 7), (0, 1, 3), (2, 0, 1)];
pub const SUBST_V3: [(i64, i64, u64); 4] = [(-1, 1, 9), (1, 0, 3), (0, 1, 7), (1, 1, 1)];

/// For odd `n ≤ n_max`, in three passes:
///
/// 1. `φ` sends `t^{4n-3}, t^{4n-1}, t^{4n+1}, t^{4n+5}` to
///    `w^{10n-9}, w^{10n-7}, w^{10n-3}, w^{10n-1}` (`n ≡ 1 mod 4`) and
///    `t^{4n-5}, t^{4n-1}, t^{4n+1}, t^{4n+3}` to
///    `w^{10n-9}, w^{10n-3}, w^{10n-7}, w^{10n-1}` (`n ≡ 3 mod 4`);
/// 2. `s_{i,j}(t^n) = w^{-c}(t^n)(w^10)` per [`SUBST_V1`] / [`SUBST_V3`];
/// 3. β_n, δ_n ∈ V1 and α_n, γ_n ∈ V3 for `n ≡ 1 mod 4`, swapped for `n ≡ 3`.
pub fn verify_substitution_laws(n_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("substitution-laws", format!("odd n <= {n_max}"));
    let count = n_max.div_ceil(2) as usize;
    let n_of = |i: usize| 2 * i as u64 + 1;

    report.sweep(count, |i| {
        let n = n_of(i);
        let (ts, ws) = phi_rows(n);
        ts.iter().zip(ws).find_map(|(&t, w)| {
            let got = phi_exponent(t);
            (got != w).then(|| {
                Counterexample::new(
                    Location::N(n),
                    format!("phi(t^{t}) = w^{got}, expected w^{w}"),
                )
            })
        })
    });

    report.sweep(count, |i| {
        let n = n_of(i);
        let f = OddPoly::monomial(n).expect("odd");
        let table = if n % 4 == 1 { SUBST_V1 } else { SUBST_V3 };
        table.iter().find_map(|&(a, b, c)| {
            let lhs = s_small(a, b, &f);
            let rhs = f.subst10_shift(c);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => None,
                (l, r) => Some(
                    Counterexample::new(
                        Location::N(n),
                        format!("s_({a},{b}) t^{n} = {l:?} but w^-{c} f(w^10) = {r:?}"),
                    )
                    .polynomial(&f),
                ),
            }
        })
    });

    if report.passed() {
        let gen = |f: Family| collect_terms(&f.spec(), n_max);
        let fams = [
            gen(Family::Alpha)?,
            gen(Family::Beta)?,
            gen(Family::Gamma)?,
            gen(Family::Delta)?,
        ];
        report.sweep(count, |i| {
            let n = n_of(i);
            Family::STAR.iter().find_map(|&f| {
                let p = &fams[f as usize][i];
                let parity = v_parity(p);
                let want_v1 = matches!(f, Family::Beta | Family::Delta) == (n % 4 == 1);
                let ok = if want_v1 {
                    parity.in_v1()
                } else {
                    parity.in_v3()
                };
                (!ok).then(|| {
                    let space = if want_v1 { "V1" } else { "V3" };
                    Counterexample::new(Location::N(n), format!("{f}_n not in {space}"))
                        .polynomial(p)
                })
            })
        });
    }
    Ok(report)
}
