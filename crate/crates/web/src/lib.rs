//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string so the same functions can be tested
//! natively. Errors come back as `{"error": "..."}`.

use nscode_core::nscode::{decode, encode};
use nscode_core::recurrences::{assess, dominant_pair, generate};
use nscode_core::wcode::{phi_exponent, phi_inv, pk_from_recurrence, w_dominant_pair, wdecode};
use nscode_core::{CodePair, Condition, Family, OddPoly};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; the CLI has no such cap.
pub const MAX_N: u32 = 4097;
pub const MAX_K: u32 = 20_000;

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v)
            .unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string()),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[derive(Serialize)]
struct CodePoint {
    n: u64,
    pair: CodePair,
    w: u64,
    /// Neighbours in the listing order, where they exist.
    before: Option<CodePair>,
    after: CodePair,
}

fn neighbours(p: CodePair) -> (Option<CodePair>, CodePair) {
    let CodePair { a, b } = p;
    let before = match (a, b) {
        (0, 0) => None,
        (_, 0) => Some(CodePair::new(0, a - 1)),
        _ => Some(CodePair::new(a + 1, b - 1)),
    };
    let after = if a == 0 {
        CodePair::new(b + 1, 0)
    } else {
        CodePair::new(a - 1, b + 1)
    };
    (before, after)
}

fn parse_point(input: &str) -> Result<CodePair, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let nums = |body: &str| -> Result<(u64, u64), String> {
        let (a, b) = body.split_once(',').ok_or("expected two coordinates")?;
        Ok((
            a.parse().map_err(|_| "bad coordinate")?,
            b.parse().map_err(|_| "bad coordinate")?,
        ))
    };
    if let Some(body) = s.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let (a, b) = nums(body)?;
        return Ok(CodePair::new(a, b));
    }
    if let Some(body) = s.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        let (a, b) = nums(body)?;
        return Ok(CodePair::new(a, b));
    }
    if let Some(k) = s.strip_prefix("w^") {
        let k: u64 = k.parse().map_err(|_| "bad exponent")?;
        return decode(phi_inv(k).map_err(|e| e.to_string())?).map_err(|e| e.to_string());
    }
    let n = s.strip_prefix("t^").unwrap_or(&s);
    let n: u64 = n.parse().map_err(|_| format!("cannot read {input:?}"))?;
    decode(n).map_err(|e| e.to_string())
}

/// Looks up one code point. Accepts `t^n`, a bare odd `n`, `w^k`, `[a,b]`
/// or `<a,b>`.
#[wasm_bindgen]
pub fn explore(input: &str) -> String {
    to_json(parse_point(input).and_then(|pair| {
        let n = encode(pair).map_err(|e| e.to_string())?;
        let (before, after) = neighbours(pair);
        Ok(CodePoint {
            n,
            pair,
            w: phi_exponent(n),
            before,
            after,
        })
    }))
}

#[derive(Serialize)]
struct FamilyRow {
    n: u64,
    pair: CodePair,
    ok: bool,
    dominant: Option<CodePair>,
    expected: Option<CodePair>,
    terms: Vec<CodePair>,
    poly: String,
}

/// `A_n` for odd `n ≤ n_max`, each with its monomials as code pairs and the
/// family's condition verdict.
#[wasm_bindgen]
pub fn family_rows(family: &str, n_max: u32) -> String {
    to_json(
        family
            .parse::<Family>()
            .map_err(|e| e.to_string())
            .and_then(|f| {
                let cond: Condition = f.condition();
                let g = generate(&f.spec(), n_max.min(MAX_N) as u64).map_err(|e| e.to_string())?;
                Ok(g.map(|(n, p)| family_row(n, &p, cond)).collect::<Vec<_>>())
            }),
    )
}

fn family_row(n: u64, p: &OddPoly, cond: Condition) -> FamilyRow {
    let v = assess(p, n, cond).expect("generator yields odd n");
    FamilyRow {
        n,
        pair: decode(n).expect("odd"),
        ok: v.ok,
        dominant: dominant_pair(p),
        expected: v.rule.bound(),
        terms: p.terms().map(|e| decode(e).expect("odd")).collect(),
        poly: p.to_string(),
    }
}

#[derive(Serialize)]
struct PkRow {
    k: u64,
    pair: CodePair,
    ok: bool,
    dominant: Option<CodePair>,
    terms: Vec<CodePair>,
    poly: String,
}

/// `P_k` for valid `k ≤ k_max` with the dominance verdict in the `⟨a,b⟩` code.
#[wasm_bindgen]
pub fn pk_rows(k_max: u32) -> String {
    to_json(
        pk_from_recurrence(k_max.min(MAX_K) as u64)
            .map_err(|e| e.to_string())
            .map(|table| {
                table
                    .iter()
                    .map(|(k, p)| {
                        let pair = wdecode(k).expect("valid k").0;
                        let dominant = w_dominant_pair(p).map(|w| w.0);
                        PkRow {
                            k,
                            pair,
                            ok: Condition::OneAlpha.rule(pair).holds(dominant),
                            dominant,
                            terms: p.terms().map(|e| wdecode(e).expect("valid").0).collect(),
                            poly: p.to_string(),
                        }
                    })
                    .collect::<Vec<_>>()
            }),
    )
}
