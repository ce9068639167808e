//! Polynomials over Z/2 with odd exponents (`V = t·Z/2[t²]`) and their images
//! in `V' ⊂ Z/2[w]`.
//!
//! [`OddPoly`] stores exponent `e` at bit `(e - 1) / 2`, so multiplying by an
//! even power `t^e` is a left shift by `e / 2`. [`WPoly`] only admits
//! exponents `k ≡ 1, 3, 7, 9 (mod 20)`; it packs four slots per block of 20,
//! which makes multiplication by `w^20` a shift by four bits.
//!
//! [`DensePoly`] is a deliberately naive coefficient vector kept around as an
//! oracle for the packed kernels.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Largest admissible `t`-exponent.
pub const MAX_EXPONENT: u64 = 1 << 40;

/// Largest admissible `w`-exponent (`10·MAX_EXPONENT` covers every `w^10`
/// substitution of a valid [`OddPoly`]).
pub const MAX_W_EXPONENT: u64 = 10 * MAX_EXPONENT;

/// Element of `t·Z/2[t²]`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct OddPoly {
    bits: Bits,
}

impl OddPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: u64) -> Result<Self> {
        let mut p = Self::zero();
        p.bits.toggle(odd_index(e)?);
        Ok(p)
    }

    /// Sums the monomials `t^e`; a repeated exponent cancels.
    pub fn from_exponents<I: IntoIterator<Item = u64>>(exps: I) -> Result<Self> {
        let mut p = Self::zero();
        for e in exps {
            p.bits.toggle(odd_index(e)?);
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        e % 2 == 1 && self.bits.get((e - 1) / 2)
    }

    pub fn degree(&self) -> Option<u64> {
        self.bits.highest().map(|i| 2 * i + 1)
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Exponents in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.ones().map(|i| 2 * i + 1)
    }

    pub fn support(&self) -> Vec<u64> {
        self.terms().collect()
    }

    /// Multiplication by `t^e` for even `e`.
    pub fn mul_tpow(&self, e: u64) -> Result<Self> {
        if e % 2 == 1 {
            return Err(Error::OddShift(e));
        }
        if let Some(d) = self.degree() {
            if d.checked_add(e).is_none_or(|s| s > MAX_EXPONENT) {
                return Err(Error::Capacity(d.saturating_add(e)));
            }
        }
        Ok(self.shifted(e))
    }

    /// Unchecked `t^e` multiplication for callers that already bounded the degree.
    pub(crate) fn shifted(&self, e: u64) -> Self {
        OddPoly {
            bits: self.bits.shl(e / 2),
        }
    }

    /// `self += src · t^e`, `e` even, degree already bounded by the caller.
    pub(crate) fn add_shifted(&mut self, src: &OddPoly, e: u64) {
        self.bits.xor_shl_assign(&src.bits, e / 2);
    }

    /// Presence of exponents `≡ 1 (mod 4)` and `≡ 3 (mod 4)` respectively.
    pub fn residues_mod4(&self) -> (bool, bool) {
        // e ≡ 1 (mod 4) sits at an even bit index.
        const EVEN: u64 = 0x5555_5555_5555_5555;
        self.bits
            .words()
            .iter()
            .fold((false, false), |(one, three), w| {
                (one || w & EVEN != 0, three || w & !EVEN != 0)
            })
    }

    /// `w^{-c}·p(w^10)`: sends `t^e` to `w^{10e - c}`, `c ∈ {1, 3, 7, 9}`.
    pub fn subst10_shift(&self, c: u64) -> Result<WPoly> {
        if ![1, 3, 7, 9].contains(&c) {
            return Err(Error::InvalidOffset(c));
        }
        WPoly::from_exponents(self.terms().map(|e| 10 * e - c))
    }

    pub(crate) fn words(&self) -> &[u64] {
        self.bits.words()
    }

    pub(crate) fn from_words(words: Vec<u64>) -> Result<Self> {
        let p = OddPoly {
            bits: Bits::from_words(words),
        };
        match p.degree() {
            Some(d) if d > MAX_EXPONENT => Err(Error::Capacity(d)),
            _ => Ok(p),
        }
    }
}

fn odd_index(e: u64) -> Result<u64> {
    if e.is_multiple_of(2) {
        return Err(if e == 0 {
            Error::ZeroExponent
        } else {
            Error::EvenExponent(e)
        });
    }
    if e > MAX_EXPONENT {
        return Err(Error::Capacity(e));
    }
    Ok((e - 1) / 2)
}

pub fn add(p: &OddPoly, q: &OddPoly) -> OddPoly {
    let mut out = p.clone();
    out += q;
    out
}

impl AddAssign<&OddPoly> for OddPoly {
    fn add_assign(&mut self, rhs: &OddPoly) {
        self.bits.xor_assign(&rhs.bits);
    }
}

impl Add<&OddPoly> for &OddPoly {
    type Output = OddPoly;
    fn add(self, rhs: &OddPoly) -> OddPoly {
        add(self, rhs)
    }
}

impl Add for OddPoly {
    type Output = OddPoly;
    fn add(mut self, rhs: OddPoly) -> OddPoly {
        self += &rhs;
        self
    }
}

impl fmt::Display for OddPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, 't', self.support())
    }
}

impl fmt::Debug for OddPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OddPoly({self})")
    }
}

impl FromStr for OddPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OddPoly::from_exponents(parse_terms(s, 't')?)
    }
}

/// Element of `V' ⊂ Z/2[w]`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WPoly {
    bits: Bits,
}

const W_SLOTS: [u64; 4] = [1, 3, 7, 9];

fn w_index(k: u64) -> Result<u64> {
    let slot = match k % 20 {
        1 => 0,
        3 => 1,
        7 => 2,
        9 => 3,
        _ => return Err(Error::InvalidResidue(k)),
    };
    if k > MAX_W_EXPONENT {
        return Err(Error::Capacity(k));
    }
    Ok(4 * (k / 20) + slot)
}

fn w_exponent(idx: u64) -> u64 {
    20 * (idx / 4) + W_SLOTS[(idx % 4) as usize]
}

/// Whether `w^k` lies in `V'`.
pub fn is_w_exponent(k: u64) -> bool {
    matches!(k % 20, 1 | 3 | 7 | 9)
}

impl WPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: u64) -> Result<Self> {
        Self::from_exponents([k])
    }

    /// Sums the monomials `w^k`; a repeated exponent cancels.
    pub fn from_exponents<I: IntoIterator<Item = u64>>(exps: I) -> Result<Self> {
        let mut p = Self::zero();
        for k in exps {
            p.bits.toggle(w_index(k)?);
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        w_index(k).is_ok_and(|i| self.bits.get(i))
    }

    pub fn degree(&self) -> Option<u64> {
        self.bits.highest().map(w_exponent)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.ones().map(w_exponent)
    }

    pub fn support(&self) -> Vec<u64> {
        self.terms().collect()
    }

    /// Multiplication by `w^{20·m}`.
    pub fn mul_w20(&self, m: u64) -> Result<Self> {
        if let Some(d) = self.degree() {
            if m.checked_mul(20)
                .and_then(|s| s.checked_add(d))
                .is_none_or(|s| s > MAX_W_EXPONENT)
            {
                return Err(Error::Capacity(d.saturating_add(m.saturating_mul(20))));
            }
        }
        Ok(WPoly {
            bits: self.bits.shl(4 * m),
        })
    }
}

impl AddAssign<&WPoly> for WPoly {
    fn add_assign(&mut self, rhs: &WPoly) {
        self.bits.xor_assign(&rhs.bits);
    }
}

impl Add<&WPoly> for &WPoly {
    type Output = WPoly;
    fn add(self, rhs: &WPoly) -> WPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for WPoly {
    type Output = WPoly;
    fn add(mut self, rhs: WPoly) -> WPoly {
        self += &rhs;
        self
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, 'w', self.support())
    }
}

impl fmt::Debug for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WPoly({self})")
    }
}

impl FromStr for WPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        WPoly::from_exponents(parse_terms(s, 'w')?)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, var: char, ascending: Vec<u64>) -> fmt::Result {
    if ascending.is_empty() {
        return f.write_str("0");
    }
    for (i, e) in ascending.iter().rev().enumerate() {
        if i > 0 {
            f.write_str("+")?;
        }
        write!(f, "{var}^{e}")?;
    }
    Ok(())
}

/// Parses `0` or `x^e(+x^e)*`; a bare `x` means `x^1`. Whitespace is ignored.
fn parse_terms(s: &str, var: char) -> Result<Vec<u64>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidSpec(format!("cannot parse polynomial `{}`", s.trim()));
    if compact == "0" {
        return Ok(Vec::new());
    }
    if compact.is_empty() {
        return Err(bad());
    }
    compact
        .split('+')
        .map(|term| {
            let rest = term.strip_prefix(var).ok_or_else(bad)?;
            if rest.is_empty() {
                return Ok(1);
            }
            let digits = rest.strip_prefix('^').ok_or_else(bad)?;
            let digits = digits
                .strip_prefix('{')
                .and_then(|d| d.strip_suffix('}'))
                .unwrap_or(digits);
            digits.parse::<u64>().map_err(|_| bad())
        })
        .collect()
}

/// Plain coefficient vector over Z/2, index = exponent. Slow on purpose.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<bool>,
}

impl DensePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_exponents<I: IntoIterator<Item = u64>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            let e = e as usize;
            if p.coeffs.len() <= e {
                p.coeffs.resize(e + 1, false);
            }
            p.coeffs[e] = !p.coeffs[e];
        }
        p
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(false);
                let b = other.coeffs.get(i).copied().unwrap_or(false);
                a != b
            })
            .collect();
        DensePoly { coeffs }
    }

    /// Multiplication by `t^e` for any `e`.
    pub fn mul_tpow(&self, e: u64) -> DensePoly {
        let mut coeffs = vec![false; e as usize];
        coeffs.extend_from_slice(&self.coeffs);
        DensePoly { coeffs }
    }

    pub fn support(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| i as u64)
            .collect()
    }
}

/// Whether the packed and dense representations hold the same polynomial.
pub fn oracle_equal(fast: &OddPoly, naive: &DensePoly) -> bool {
    fast.support() == naive.support()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(e: &[u64]) -> OddPoly {
        OddPoly::from_exponents(e.iter().copied()).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!(add(&p(&[3]), &p(&[3])).is_zero());
        assert_eq!(add(&p(&[1, 5]), &p(&[5, 9])), p(&[1, 9]));
        // alpha_7 + gamma_7 = t^5 + t^5
        assert!(add(&p(&[5]), &p(&[5])).is_zero());
    }

    #[test]
    fn mul_tpow_examples() {
        assert_eq!(p(&[3]).mul_tpow(8).unwrap(), p(&[11]));
        assert!(OddPoly::zero().mul_tpow(100).unwrap().is_zero());
        assert_eq!(p(&[1, 5]).mul_tpow(2).unwrap(), p(&[3, 7]));
        assert_eq!(p(&[1]).mul_tpow(3), Err(Error::OddShift(3)));
    }

    #[test]
    fn capacity_bound() {
        // Checked before any storage is allocated.
        assert_eq!(
            OddPoly::monomial(MAX_EXPONENT + 1),
            Err(Error::Capacity(MAX_EXPONENT + 1))
        );
        let t = OddPoly::monomial(1).unwrap();
        assert_eq!(
            t.mul_tpow(MAX_EXPONENT),
            Err(Error::Capacity(MAX_EXPONENT + 1))
        );
        assert!(t.mul_tpow(u64::MAX - 1).is_err());
        assert!(WPoly::monomial(MAX_W_EXPONENT + 1).is_err());
        assert_eq!(OddPoly::monomial(4), Err(Error::EvenExponent(4)));
        assert_eq!(OddPoly::monomial(0), Err(Error::ZeroExponent));
    }

    #[test]
    fn subst10_examples() {
        assert_eq!(p(&[3]).subst10_shift(9).unwrap().support(), vec![21]);
        assert!(OddPoly::zero().subst10_shift(3).unwrap().is_zero());
        assert_eq!(p(&[7, 3]).subst10_shift(9).unwrap().support(), vec![21, 61]);
        assert_eq!(p(&[3]).subst10_shift(5), Err(Error::InvalidOffset(5)));
    }

    #[test]
    fn support_list_examples() {
        assert!(OddPoly::zero().support().is_empty());
        assert_eq!(p(&[9, 1, 5]).support(), vec![1, 5, 9]);
        assert_eq!(p(&[7, 3]).support(), vec![3, 7]);
    }

    #[test]
    fn oracle_equal_examples() {
        assert!(oracle_equal(&OddPoly::zero(), &DensePoly::zero()));
        assert!(oracle_equal(&p(&[3]), &DensePoly::from_exponents([3])));
        assert!(!oracle_equal(&p(&[3]), &DensePoly::from_exponents([5])));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(OddPoly::zero().to_string(), "0");
        assert_eq!(p(&[1, 9]).to_string(), "t^9+t^1");
        let w = WPoly::from_exponents([21, 61, 29]).unwrap();
        assert_eq!(w.to_string(), "w^61+w^29+w^21");
        assert_eq!("t^9 + t".parse::<OddPoly>().unwrap(), p(&[1, 9]));
        assert_eq!("w^{61}+w^{29}+w^{21}".parse::<WPoly>().unwrap(), w);
        assert!("t^9+".parse::<OddPoly>().is_err());
        assert!("t^4".parse::<OddPoly>().is_err());
        assert!("".parse::<OddPoly>().is_err());
    }

    #[test]
    fn wpoly_residues() {
        assert_eq!(WPoly::monomial(5), Err(Error::InvalidResidue(5)));
        let w = WPoly::from_exponents([1, 3, 7, 9, 21, 29, 41]).unwrap();
        assert_eq!(w.support(), vec![1, 3, 7, 9, 21, 29, 41]);
        assert_eq!(
            w.mul_w20(4).unwrap().support(),
            vec![81, 83, 87, 89, 101, 109, 121]
        );
        assert!(w.contains(29) && !w.contains(23) && !w.contains(5));
    }

    #[test]
    fn residues_mod4() {
        assert_eq!(p(&[5, 9]).residues_mod4(), (true, false));
        assert_eq!(p(&[3, 131]).residues_mod4(), (false, true));
        assert_eq!(p(&[1, 3]).residues_mod4(), (true, true));
        assert_eq!(OddPoly::zero().residues_mod4(), (false, false));
    }
}
