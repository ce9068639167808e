//! Streaming generation of the recursions
//!
//! ```text
//! (*)   A_{n+8r}  = t^{8r}  A_n + t^{2r} A_{n+2r}
//! (**)  A_{n+16r} = t^{16r} A_n + t^{4r} A_{n+4r} + t^{2r} A_{n+2r}
//! ```
//!
//! over odd `n`, together with the dominance conditions on the code pairs of
//! the monomials in `A_n`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::{OddPoly, MAX_EXPONENT};
use crate::nscode::{decode, decode_odd, CodePair};
use crate::report::{Counterexample, Location, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `(*)`, seeds on odd `n < 8r`.
    Star,
    /// `(**)`, seeds on odd `n < 16r`.
    StarStar,
}

impl Kind {
    /// Seed window width in `n`: `8r` or `16r`.
    pub fn window(self, r: u64) -> u64 {
        match self {
            Kind::Star => 8 * r,
            Kind::StarStar => 16 * r,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Star => "star",
            Kind::StarStar => "starstar",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "star" | "*" => Ok(Kind::Star),
            "starstar" | "**" => Ok(Kind::StarStar),
            other => Err(Error::InvalidSpec(format!(
                "unknown recursion kind `{other}`"
            ))),
        }
    }
}

/// A recursion together with its seed window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    kind: Kind,
    r: u64,
    /// `seeds[i]` is `A_{2i+1}`.
    seeds: Vec<OddPoly>,
}

impl SequenceSpec {
    pub fn new(kind: Kind, r: u64, seeds: Vec<OddPoly>) -> Result<Self> {
        if !r.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(r));
        }
        let want = kind.window(r) / 2;
        if seeds.len() as u64 != want {
            return Err(Error::InvalidSpec(format!(
                "{kind} with r={r} needs {want} seeds (odd n < {}), got {}",
                kind.window(r),
                seeds.len()
            )));
        }
        Ok(SequenceSpec { kind, r, seeds })
    }

    /// All-zero seeds.
    pub fn zero(kind: Kind, r: u64) -> Result<Self> {
        let len = if r.is_power_of_two() {
            kind.window(r) / 2
        } else {
            0
        };
        Self::new(kind, r, vec![OddPoly::zero(); len as usize])
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn window(&self) -> u64 {
        self.kind.window(self.r)
    }

    pub fn seed(&self, n: u64) -> Option<&OddPoly> {
        if n.is_multiple_of(2) {
            return None;
        }
        self.seeds.get((n / 2) as usize)
    }

    pub fn seeds(&self) -> impl Iterator<Item = (u64, &OddPoly)> {
        self.seeds
            .iter()
            .enumerate()
            .map(|(i, p)| (2 * i as u64 + 1, p))
    }

    /// Replaces one seed, e.g. to inject a fault.
    pub fn with_seed(mut self, n: u64, poly: OddPoly) -> Result<Self> {
        if n.is_multiple_of(2) || n >= self.window() {
            return Err(Error::InvalidSpec(format!(
                "n={n} is not an odd index below {}",
                self.window()
            )));
        }
        self.seeds[(n / 2) as usize] = poly;
        Ok(self)
    }

    /// Seed file text accepted by [`parse_seed_file`].
    pub fn to_seed_file(&self) -> String {
        let mut out = format!("kind={} r={}\n", self.kind, self.r);
        for (n, p) in self.seeds() {
            out.push_str(&format!("{n}: {p}\n"));
        }
        out
    }
}

/// The seed families used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Cor42,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Alpha,
        Family::Beta,
        Family::Gamma,
        Family::Delta,
        Family::Cor42,
    ];

    pub const STAR: [Family; 4] = [Family::Alpha, Family::Beta, Family::Gamma, Family::Delta];

    pub fn name(self) -> &'static str {
        match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Gamma => "gamma",
            Family::Delta => "delta",
            Family::Cor42 => "cor42",
        }
    }

    /// The condition every member of the family satisfies.
    pub fn condition(self) -> Condition {
        match self {
            Family::Alpha | Family::Cor42 => Condition::OneAlpha,
            Family::Beta => Condition::OneBeta,
            Family::Gamma => Condition::OneGamma,
            Family::Delta => Condition::OneDelta,
        }
    }

    pub fn spec(self) -> SequenceSpec {
        let seeds: &[&[u64]] = match self {
            Family::Alpha => &[&[], &[1], &[], &[5]],
            Family::Beta => &[&[1], &[3], &[5], &[7, 3]],
            Family::Gamma => &[&[], &[], &[3], &[5]],
            Family::Delta => &[&[], &[], &[], &[3]],
            Family::Cor42 => &[&[], &[1], &[], &[5], &[3], &[9, 1], &[7], &[13, 5]],
        };
        let kind = if self == Family::Cor42 {
            Kind::StarStar
        } else {
            Kind::Star
        };
        let seeds = seeds
            .iter()
            .map(|e| OddPoly::from_exponents(e.iter().copied()).expect("valid seed"))
            .collect();
        SequenceSpec::new(kind, 1, seeds).expect("builtin spec is well formed")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

pub fn builtin_family(name: &str) -> Result<SequenceSpec> {
    name.parse::<Family>().map(Family::spec)
}

/// Dominance conditions on `A_n` where `t^n = [a,b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// `[a-1,b]` plus earlier monomials (for `a > 0`), else at most `[0,b-1]`.
    OneAlpha,
    /// `t^n` plus earlier monomials.
    OneBeta,
    /// Only monomials strictly before `t^n`.
    OneGamma,
    /// Only monomials strictly before `[a-1,b]` (for `a > 0`), else at most `[0,b-1]`.
    OneDelta,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::OneAlpha,
        Condition::OneBeta,
        Condition::OneGamma,
        Condition::OneDelta,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Condition::OneAlpha => "1alpha",
            Condition::OneBeta => "1beta",
            Condition::OneGamma => "1gamma",
            Condition::OneDelta => "1delta",
        }
    }

    /// What the condition demands of the dominant pair for `t^n = p`.
    pub fn rule(self, p: CodePair) -> Rule {
        let CodePair { a, b } = p;
        match self {
            Condition::OneGamma => Rule::Below(p),
            Condition::OneBeta => Rule::Exactly(p),
            Condition::OneAlpha | Condition::OneDelta if a > 0 => {
                let target = CodePair::new(a - 1, b);
                if self == Condition::OneAlpha {
                    Rule::Exactly(target)
                } else {
                    Rule::Below(target)
                }
            }
            _ if b > 0 => Rule::AtMost(CodePair::new(0, b - 1)),
            _ => Rule::Zero,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        let s = s.strip_prefix('1').unwrap_or(&s);
        match s {
            "alpha" | "a" => Ok(Condition::OneAlpha),
            "beta" | "b" => Ok(Condition::OneBeta),
            "gamma" | "c" => Ok(Condition::OneGamma),
            "delta" | "d" => Ok(Condition::OneDelta),
            _ => Err(Error::UnknownCondition(s.to_string())),
        }
    }
}

/// A constraint on the latest pair present in a polynomial. Because the code
/// order is total, every condition reduces to one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Every pair strictly earlier than the bound (zero allowed).
    Below(CodePair),
    /// Every pair equal to or earlier than the bound (zero allowed).
    AtMost(CodePair),
    /// The bound is present and everything else is earlier.
    Exactly(CodePair),
    /// Polynomial must vanish.
    Zero,
}

impl Rule {
    pub fn holds(self, dominant: Option<CodePair>) -> bool {
        match (self, dominant) {
            (Rule::Zero, d) => d.is_none(),
            (Rule::Exactly(p), d) => d == Some(p),
            (_, None) => true,
            (Rule::Below(p), Some(d)) => d < p,
            (Rule::AtMost(p), Some(d)) => d <= p,
        }
    }

    pub fn bound(self) -> Option<CodePair> {
        match self {
            Rule::Below(p) | Rule::AtMost(p) | Rule::Exactly(p) => Some(p),
            Rule::Zero => None,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Rule::Below(_) => "all terms strictly earlier than expected pair",
            Rule::AtMost(_) => "all terms equal to or earlier than expected pair",
            Rule::Exactly(_) => "expected pair present, all other terms earlier",
            Rule::Zero => "polynomial must be zero",
        }
    }
}

/// Latest code pair among the monomials of `p`.
pub fn dominant_pair(p: &OddPoly) -> Option<CodePair> {
    p.terms().map(decode_odd).max()
}

/// Outcome of checking one `A_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub rule: Rule,
    pub dominant: Option<CodePair>,
}

pub fn assess(poly: &OddPoly, n: u64, cond: Condition) -> Result<Verdict> {
    let rule = cond.rule(decode(n)?);
    let dominant = dominant_pair(poly);
    Ok(Verdict {
        ok: rule.holds(dominant),
        rule,
        dominant,
    })
}

/// Whether `A_n = poly` satisfies `cond`. Even `n` never does.
pub fn classify(poly: &OddPoly, n: u64, cond: Condition) -> bool {
    assess(poly, n, cond).is_ok_and(|v| v.ok)
}

/// Lazily yields `(n, A_n)` for odd `n ≤ n_max`, keeping only the last
/// `window / 2` terms.
#[derive(Debug, Clone)]
pub struct Generator {
    kind: Kind,
    r: u64,
    /// `A_{next-window} .. A_{next-2}` once past the seeds; the seeds before.
    window: VecDeque<OddPoly>,
    next: u64,
    n_max: u64,
}

pub fn generate(spec: &SequenceSpec, n_max: u64) -> Result<Generator> {
    let g = Generator {
        kind: spec.kind,
        r: spec.r,
        window: spec.seeds.iter().cloned().collect(),
        next: 1,
        n_max,
    };
    g.check_capacity()?;
    Ok(g)
}

impl Generator {
    /// Index of the next term to be produced.
    pub fn next_n(&self) -> u64 {
        self.next
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn set_limit(&mut self, n_max: u64) -> Result<()> {
        self.n_max = n_max;
        self.check_capacity()
    }

    fn window_start(&self) -> u64 {
        let w = self.kind.window(self.r);
        if self.next <= w {
            1
        } else {
            self.next - w
        }
    }

    /// `deg A_n - n` never exceeds its maximum over the current window, since
    /// each step shifts degree by at most the index step. That gives a bound
    /// on every degree the generator can reach.
    fn check_capacity(&self) -> Result<()> {
        let start = self.window_start();
        let excess = self
            .window
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                p.degree()
                    .map(|d| d as i128 - (start + 2 * i as u64) as i128)
            })
            .max()
            .unwrap_or(0)
            .max(0);
        let top = self.n_max as i128 + excess;
        if top > MAX_EXPONENT as i128 || self.n_max > MAX_EXPONENT {
            return Err(Error::Capacity(top.min(u64::MAX as i128) as u64));
        }
        Ok(())
    }

    fn step(&mut self) -> OddPoly {
        let r = self.r as usize;
        let w = &self.window;
        let mut out = OddPoly::zero();
        match self.kind {
            Kind::Star => {
                out.add_shifted(&w[0], 8 * self.r);
                out.add_shifted(&w[r], 2 * self.r);
            }
            Kind::StarStar => {
                out.add_shifted(&w[0], 16 * self.r);
                out.add_shifted(&w[2 * r], 4 * self.r);
                out.add_shifted(&w[r], 2 * self.r);
            }
        }
        out
    }

    /// Snapshot from which [`Generator::resume`] continues bit-identically.
    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            kind: self.kind,
            r: self.r,
            next_n: self.next,
            window: self.window.iter().cloned().collect(),
        }
    }

    pub fn resume(cp: Checkpoint, n_max: u64) -> Result<Self> {
        if !cp.r.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(cp.r));
        }
        if cp.window.len() as u64 != cp.kind.window(cp.r) / 2 || cp.next_n.is_multiple_of(2) {
            return Err(Error::Checkpoint("window does not match recursion".into()));
        }
        let g = Generator {
            kind: cp.kind,
            r: cp.r,
            window: cp.window.into(),
            next: cp.next_n,
            n_max,
        };
        g.check_capacity()?;
        Ok(g)
    }
}

impl Iterator for Generator {
    type Item = (u64, OddPoly);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next;
        if n > self.n_max {
            return None;
        }
        self.next += 2;
        let w = self.kind.window(self.r);
        if n < w {
            return Some((n, self.window[(n / 2) as usize].clone()));
        }
        let a_n = self.step();
        self.window.pop_front();
        self.window.push_back(a_n.clone());
        Some((n, a_n))
    }
}

/// All `A_n`, odd `n ≤ n_max`; entry `i` is `A_{2i+1}`.
pub fn collect_terms(spec: &SequenceSpec, n_max: u64) -> Result<Vec<OddPoly>> {
    Ok(generate(spec, n_max)?.map(|(_, p)| p).collect())
}

const CHUNK: usize = 2048;

/// Checks `cond` on every `A_n`, odd `n ≤ n_max`. Generation is sequential;
/// checking each block of terms runs in parallel when enabled.
pub fn verify_condition(
    spec: &SequenceSpec,
    cond: Condition,
    n_max: u64,
) -> Result<VerificationReport> {
    let gen = generate(spec, n_max)?;
    verify_condition_stream(gen, cond, "condition", |_| Ok(()))
}

/// Streaming form of [`verify_condition`]; `on_block` sees the generator after
/// every block, e.g. to persist a checkpoint.
pub fn verify_condition_stream<F>(
    mut gen: Generator,
    cond: Condition,
    label: &str,
    mut on_block: F,
) -> Result<VerificationReport>
where
    F: FnMut(&Generator) -> Result<()>,
{
    let mut report = VerificationReport::new(
        format!("{label} {cond}"),
        format!("odd n in [{}, {}]", gen.next, gen.n_max),
    );
    loop {
        let block: Vec<(u64, OddPoly)> = gen.by_ref().take(CHUNK).collect();
        if block.is_empty() {
            break;
        }
        report.sweep(block.len(), |i| {
            let (n, p) = &block[i];
            let v = assess(p, *n, cond).expect("generator yields odd n");
            (!v.ok).then(|| {
                Counterexample::new(Location::N(*n), v.rule.describe())
                    .polynomial(p)
                    .pairs(v.dominant, v.rule.bound())
            })
        });
        on_block(&gen)?;
        if !report.passed() {
            break;
        }
    }
    Ok(report)
}

/// Checks that a `(*)` sequence for `r` also satisfies `(*)` for `2r` and `4r`.
pub fn verify_doubling(spec: &SequenceSpec, n_max: u64) -> Result<VerificationReport> {
    if spec.kind != Kind::Star {
        return Err(Error::NotStar);
    }
    let terms = collect_terms(spec, n_max)?;
    check_doubling(&terms, spec.r)
}

/// Doubling check on an explicit term list (`terms[i] = A_{2i+1}`), in order
/// of `n`, testing `r → 2r` before `r → 4r` at each `n`.
pub fn check_doubling(terms: &[OddPoly], r: u64) -> Result<VerificationReport> {
    if !r.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(r));
    }
    let n_max = (2 * terms.len() as u64).saturating_sub(1);
    let mut report = VerificationReport::new(
        "doubling",
        format!("odd n <= {n_max}, r={r} -> {}, {}", 2 * r, 4 * r),
    );
    let r = r as usize;
    let identity = |i: usize, s: usize| -> Option<bool> {
        // A_{n+16s} = t^{16s} A_n + t^{4s} A_{n+4s} with s = r or 2r.
        let lhs = terms.get(i + 8 * s)?;
        let mut rhs = terms[i].mul_tpow(16 * s as u64).ok()?;
        rhs += &terms[i + 2 * s].mul_tpow(4 * s as u64).ok()?;
        Some(&rhs == lhs)
    };
    report.sweep(terms.len(), |i| {
        let n = 2 * i as u64 + 1;
        for (s, clause) in [(r, "r -> 2r"), (2 * r, "r -> 4r")] {
            if identity(i, s) == Some(false) {
                return Some(
                    Counterexample::new(Location::N(n), clause).polynomial(&terms[i + 8 * s]),
                );
            }
        }
        None
    });
    Ok(report)
}

/// Parses the seed-file format:
///
/// ```text
/// kind=star r=1
/// 1: 0
/// 3: t^1
/// 5: 0
/// 7: t^5
/// ```
///
/// Blank lines and `#` comments are skipped; whitespace is insignificant;
/// every odd `n` in the seed window must appear exactly once.
pub fn parse_seed_file(text: &str) -> Result<SequenceSpec> {
    let err = |line: usize, msg: String| Error::SeedFile { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing header".into()))?;
    let mut kind = None;
    let mut r = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(hline, format!("expected key=value, got `{field}`")))?;
        match key {
            "kind" => {
                kind = Some(
                    value
                        .parse::<Kind>()
                        .map_err(|e| err(hline, e.to_string()))?,
                )
            }
            "r" => {
                let v: u64 = value
                    .parse()
                    .map_err(|_| err(hline, format!("bad r `{value}`")))?;
                if !v.is_power_of_two() {
                    return Err(err(hline, format!("r={v} is not a power of two")));
                }
                r = Some(v);
            }
            _ => return Err(err(hline, format!("unknown header key `{key}`"))),
        }
    }
    let kind = kind.ok_or_else(|| err(hline, "header lacks kind=".into()))?;
    let r = r.ok_or_else(|| err(hline, "header lacks r=".into()))?;
    let window = kind.window(r);

    let mut seeds: Vec<Option<OddPoly>> = vec![None; (window / 2) as usize];
    for (ln, line) in lines {
        let (n, poly) = line
            .split_once(':')
            .ok_or_else(|| err(ln, "expected `n: polynomial`".into()))?;
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| err(ln, format!("bad index `{}`", n.trim())))?;
        if n.is_multiple_of(2) || n >= window {
            return Err(err(ln, format!("n={n} is not an odd index below {window}")));
        }
        let poly: OddPoly = poly.parse().map_err(|e: Error| err(ln, e.to_string()))?;
        let slot = &mut seeds[(n / 2) as usize];
        if slot.is_some() {
            return Err(err(ln, format!("duplicate n={n}")));
        }
        *slot = Some(poly);
    }
    let seeds = seeds
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| err(0, format!("missing seed for n={}", 2 * i + 1))))
        .collect::<Result<Vec<_>>>()?;
    SequenceSpec::new(kind, r, seeds)
}

const MAGIC: &[u8; 8] = b"NSCODECK";
const VERSION: u32 = 1;

/// Resumable generator state. Binary layout, little-endian:
/// magic `NSCODECK`, version `u32`, kind `u8` (0 star, 1 starstar), `r: u64`,
/// `next_n: u64`, window length `u32`, then per polynomial a word count
/// `u32` followed by that many `u64` words of the packed bit array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub kind: Kind,
    pub r: u64,
    pub next_n: u64,
    pub window: Vec<OddPoly>,
}

impl Checkpoint {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.push(match self.kind {
            Kind::Star => 0,
            Kind::StarStar => 1,
        });
        out.extend_from_slice(&self.r.to_le_bytes());
        out.extend_from_slice(&self.next_n.to_le_bytes());
        out.extend_from_slice(&(self.window.len() as u32).to_le_bytes());
        for p in &self.window {
            let words = p.words();
            out.extend_from_slice(&(words.len() as u32).to_le_bytes());
            for w in words {
                out.extend_from_slice(&w.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut rd = Reader(bytes);
        if rd.take(8)? != MAGIC {
            return Err(Error::Checkpoint("bad magic".into()));
        }
        let version = rd.u32()?;
        if version != VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let kind = match rd.take(1)?[0] {
            0 => Kind::Star,
            1 => Kind::StarStar,
            k => return Err(Error::Checkpoint(format!("bad kind byte {k}"))),
        };
        let r = rd.u64()?;
        let next_n = rd.u64()?;
        let len = rd.u32()?;
        let mut window = Vec::with_capacity(len.min(1 << 16) as usize);
        for _ in 0..len {
            let nw = rd.u32()?;
            let words = (0..nw).map(|_| rd.u64()).collect::<Result<Vec<_>>>()?;
            window.push(OddPoly::from_words(words)?);
        }
        if !rd.0.is_empty() {
            return Err(Error::Checkpoint("trailing bytes".into()));
        }
        Ok(Checkpoint {
            kind,
            r,
            next_n,
            window,
        })
    }
}

struct Reader<'a>(&'a [u8]);

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.0.len() < n {
            return Err(Error::Checkpoint("truncated".into()));
        }
        let (head, tail) = self.0.split_at(n);
        self.0 = tail;
        Ok(head)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(e: &[u64]) -> OddPoly {
        OddPoly::from_exponents(e.iter().copied()).unwrap()
    }

    fn cp(a: u64, b: u64) -> CodePair {
        CodePair::new(a, b)
    }

    #[test]
    fn builtin_seeds() {
        let alpha = builtin_family("alpha").unwrap();
        let seeds: Vec<_> = alpha.seeds().map(|(n, s)| (n, s.clone())).collect();
        assert_eq!(
            seeds,
            vec![(1, p(&[])), (3, p(&[1])), (5, p(&[])), (7, p(&[5]))]
        );
        assert_eq!(alpha.kind(), Kind::Star);

        let cor = builtin_family("cor42").unwrap();
        assert_eq!(cor.kind(), Kind::StarStar);
        assert_eq!(cor.seed(11), Some(&p(&[9, 1])));
        assert_eq!(cor.seed(15), Some(&p(&[13, 5])));

        let delta = builtin_family("delta").unwrap();
        assert_eq!(delta.seed(7), Some(&p(&[3])));
        assert!(delta.seed(1).unwrap().is_zero());

        assert_eq!(
            builtin_family("epsilon"),
            Err(Error::UnknownFamily("epsilon".into()))
        );
    }

    #[test]
    fn one_step_examples() {
        let alpha: Vec<_> = generate(&Family::Alpha.spec(), 9).unwrap().collect();
        assert_eq!(alpha.last().unwrap(), &(9, p(&[3])));

        let cor: Vec<_> = generate(&Family::Cor42.spec(), 17).unwrap().collect();
        assert_eq!(cor.last().unwrap(), &(17, p(&[3])));

        let zero = SequenceSpec::zero(Kind::Star, 2).unwrap();
        assert!(generate(&zero, 999).unwrap().all(|(_, a)| a.is_zero()));
    }

    /// Direct recursion over a full table, no sliding window.
    fn table_oracle(spec: &SequenceSpec, n_max: u64) -> Vec<OddPoly> {
        let r = spec.r();
        let mut t: Vec<OddPoly> = Vec::new();
        for n in (1..=n_max).step_by(2) {
            let at = |m: u64| t[(m / 2) as usize].clone();
            let v = if n < spec.window() {
                spec.seed(n).unwrap().clone()
            } else {
                match spec.kind() {
                    Kind::Star => {
                        let m = n - 8 * r;
                        at(m).mul_tpow(8 * r).unwrap() + at(m + 2 * r).mul_tpow(2 * r).unwrap()
                    }
                    Kind::StarStar => {
                        let m = n - 16 * r;
                        at(m).mul_tpow(16 * r).unwrap()
                            + at(m + 4 * r).mul_tpow(4 * r).unwrap()
                            + at(m + 2 * r).mul_tpow(2 * r).unwrap()
                    }
                }
            };
            t.push(v);
        }
        t
    }

    #[test]
    fn window_matches_full_table() {
        for f in Family::ALL {
            let spec = f.spec();
            assert_eq!(
                collect_terms(&spec, 801).unwrap(),
                table_oracle(&spec, 801),
                "{f}"
            );
        }
        let spec = SequenceSpec::new(
            Kind::Star,
            2,
            (0..8)
                .map(|i| if i % 3 == 0 { p(&[2 * i + 1]) } else { p(&[]) })
                .collect(),
        )
        .unwrap();
        assert_eq!(collect_terms(&spec, 601).unwrap(), table_oracle(&spec, 601));
    }

    #[test]
    fn classify_examples() {
        assert!(classify(&p(&[3]), 9, Condition::OneAlpha));
        assert!(classify(&p(&[]), 1, Condition::OneAlpha));
        assert!(!classify(&p(&[5]), 7, Condition::OneBeta));
        assert!(!classify(&p(&[3]), 8, Condition::OneGamma));
    }

    #[test]
    fn classify_edge_cases() {
        // t^1 = [0,0]: only zero passes the alpha/delta clauses.
        assert!(!classify(&p(&[1]), 1, Condition::OneAlpha));
        assert!(!classify(&p(&[1]), 1, Condition::OneDelta));
        assert!(classify(&p(&[]), 1, Condition::OneDelta));
        // zero: vacuous for gamma/delta, fails beta and the a>0 alpha branch.
        assert!(classify(&p(&[]), 9, Condition::OneGamma));
        assert!(classify(&p(&[]), 9, Condition::OneDelta));
        assert!(!classify(&p(&[]), 9, Condition::OneBeta));
        assert!(!classify(&p(&[]), 9, Condition::OneAlpha));
        // t^5 = [0,1]: at most [0,0] = t^1 allowed.
        assert!(classify(&p(&[1]), 5, Condition::OneAlpha));
        assert!(!classify(&p(&[3]), 5, Condition::OneAlpha));
        // beta needs t^n itself plus earlier terms only
        assert!(classify(&p(&[7, 3]), 7, Condition::OneBeta));
        assert!(classify(&p(&[7, 9]), 7, Condition::OneBeta));
        assert!(!classify(&p(&[7, 11]), 7, Condition::OneBeta));
    }

    #[test]
    fn dominant_pair_examples() {
        assert_eq!(dominant_pair(&p(&[])), None);
        assert_eq!(dominant_pair(&p(&[7, 3])), Some(cp(1, 1)));
        assert_eq!(dominant_pair(&p(&[9, 1])), Some(cp(2, 0)));
    }

    #[test]
    fn condition_failure_reports_first_n() {
        let r = verify_condition(&Family::Alpha.spec(), Condition::OneBeta, 64).unwrap();
        assert_eq!(r.failure.as_ref().unwrap().at, Location::N(1));
        assert_eq!(r.checked, 1);
    }

    #[test]
    fn doubling_rejects_star_star() {
        assert_eq!(
            verify_doubling(&Family::Cor42.spec(), 100),
            Err(Error::NotStar)
        );
        let zero = SequenceSpec::zero(Kind::Star, 1).unwrap();
        assert!(verify_doubling(&zero, 500).unwrap().passed());
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            SequenceSpec::new(Kind::Star, 3, vec![]),
            Err(Error::NotPowerOfTwo(3))
        );
        assert!(SequenceSpec::new(Kind::Star, 1, vec![p(&[]); 3]).is_err());
        assert!(Family::Alpha.spec().with_seed(8, p(&[])).is_err());
        assert!(Family::Alpha.spec().with_seed(9, p(&[])).is_err());
    }

    #[test]
    fn capacity_is_checked_up_front() {
        assert!(generate(&Family::Alpha.spec(), MAX_EXPONENT + 1).is_err());
        // deg A_n - n is at most 100 for this seed set
        let heavy = Family::Alpha.spec().with_seed(1, p(&[101])).unwrap();
        assert!(generate(&heavy, MAX_EXPONENT - 99).is_err());
        assert!(generate(&heavy, MAX_EXPONENT - 100).is_ok());
    }

    #[test]
    fn seed_file_round_trip_and_errors() {
        let spec = Family::Cor42.spec();
        assert_eq!(parse_seed_file(&spec.to_seed_file()).unwrap(), spec);

        let text = "# alpha\nkind=star   r=1\n1: 0\n3:t\n 5 : 0 \n7: t^5  # tail\n";
        assert_eq!(parse_seed_file(text).unwrap(), Family::Alpha.spec());

        let dup = "kind=star r=1\n1: 0\n1: 0\n3: 0\n5: 0\n7: 0\n";
        assert!(matches!(
            parse_seed_file(dup),
            Err(Error::SeedFile { line: 3, .. })
        ));
        let missing = "kind=star r=1\n1: 0\n3: 0\n5: 0\n";
        assert!(parse_seed_file(missing).is_err());
        let even = "kind=star r=1\n2: 0\n";
        assert!(parse_seed_file(even).is_err());
        let bad_r = "kind=star r=3\n";
        assert!(parse_seed_file(bad_r).is_err());
        let even_exp = "kind=star r=1\n1: t^2\n3: 0\n5: 0\n7: 0\n";
        assert!(parse_seed_file(even_exp).is_err());
        assert!(parse_seed_file("").is_err());
    }

    #[test]
    fn checkpoint_resume_is_bit_identical() {
        let spec = Family::Cor42.spec();
        let full: Vec<_> = generate(&spec, 999).unwrap().collect();
        for stop in [3usize, 8, 9, 200] {
            let mut g = generate(&spec, 999).unwrap();
            let head: Vec<_> = g.by_ref().take(stop).collect();
            let bytes = g.checkpoint().to_bytes();
            let cp = Checkpoint::from_bytes(&bytes).unwrap();
            let tail: Vec<_> = Generator::resume(cp, 999).unwrap().collect();
            let joined: Vec<_> = head.into_iter().chain(tail).collect();
            assert_eq!(joined, full, "stop = {stop}");
        }
    }

    #[test]
    fn checkpoint_rejects_garbage() {
        let bytes = generate(&Family::Alpha.spec(), 99)
            .unwrap()
            .checkpoint()
            .to_bytes();
        assert!(Checkpoint::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(Checkpoint::from_bytes(&bad).is_err());
        let mut v2 = bytes.clone();
        v2[8] = 2;
        assert!(Checkpoint::from_bytes(&v2).is_err());
        let mut extra = bytes;
        extra.push(0);
        assert!(Checkpoint::from_bytes(&extra).is_err());
    }
}
