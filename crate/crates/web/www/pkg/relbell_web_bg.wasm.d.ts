/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const chsh: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const chsh_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const order_effect: (a: number, b: number) => [number, number];
export const schmidt: (a: number, b: number, c: number, d: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
