/* tslint:disable */
/* eslint-disable */

/**
 * Train and held-out accuracy for every depth from 0 to `max_depth`.
 */
export function depth_curve(rows: number, planted_depth: number, noise: number, seed: number, max_depth: number): string;

/**
 * Fit pasted CSV text; `label_column` is a numeric score or a class column.
 */
export function fit_csv(csv: string, label_column: string, max_depth: number, seed: number): string;

/**
 * Generate planted-tree data, fit on 70% and report on the held-out 30%.
 */
export function fit_synthetic(rows: number, planted_depth: number, noise: number, max_depth: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly depth_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly fit_csv: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly fit_synthetic: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __externref_table_alloc: () => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
