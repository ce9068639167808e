/* tslint:disable */
/* eslint-disable */

/**
 * Looks up one code point. Accepts `t^n`, a bare odd `n`, `w^k`, `[a,b]`
 * or `<a,b>`.
 */
export function explore(input: string): string;

/**
 * `A_n` for odd `n ≤ n_max`, each with its monomials as code pairs and the
 * family's condition verdict.
 */
export function family_rows(family: string, n_max: number): string;

/**
 * `P_k` for valid `k ≤ k_max` with the dominance verdict in the `⟨a,b⟩` code.
 */
export function pk_rows(k_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly explore: (a: number, b: number) => [number, number];
    readonly family_rows: (a: number, b: number, c: number) => [number, number];
    readonly pk_rows: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
