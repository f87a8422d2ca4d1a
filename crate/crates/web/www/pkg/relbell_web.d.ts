/* tslint:disable */
/* eslint-disable */

/**
 * CHSH statistic of `cos t |00> + sin t |11>` with observables at angles
 * `a1, a2` on the first document and `b1, b2` on the second.
 */
export function chsh(t: number, a1: number, a2: number, b1: number, b2: number): string;

/**
 * `[t, statistic]` pairs for `t` evenly spaced over `[0, pi/2]`.
 */
export function chsh_curve(a1: number, a2: number, b1: number, b2: number, samples: number): string;

/**
 * Judgment order effect for a document with amplitude `alpha_first` along
 * the first dimension and `alpha_second` along the second.
 *
 * Vectors are in the first dimension's coordinates.
 */
export function order_effect(alpha_first: number, alpha_second: number): string;

/**
 * Schmidt decomposition of `c00 |00> + c01 |01> + c10 |10> + c11 |11>`,
 * rescaled to unit norm first.
 */
export function schmidt(c00: number, c01: number, c10: number, c11: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly chsh: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly chsh_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly order_effect: (a: number, b: number) => [number, number];
    readonly schmidt: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
