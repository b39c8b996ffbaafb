/* tslint:disable */
/* eslint-disable */

/**
 * Central charge of `r,d,q,s` at `t`, as JSON.
 */
export function charge(profile: string, t: string): string;

/**
 * Descent data for `kind` = `mukai` (`r,d,q,s`) or `ku` (`a,b`).
 */
export function descent(kind: string, _class: string, t: string): string;

/**
 * Walls for `r,c,s` over a t-range such as `1:40` or `[1,inf)`.
 */
export function walls(vector: string, t_range: string, has_lines: boolean, has_conics: boolean, json: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly charge: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly descent: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly walls: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
