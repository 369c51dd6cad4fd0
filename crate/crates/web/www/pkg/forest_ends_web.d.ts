/* tslint:disable */
/* eslint-disable */

/**
 * Corridor fixture with doors and the hatched section between the
 * extreme door lines.
 */
export function corridor_figure(l: bigint, teeth: boolean, k: bigint, ell: bigint): string;

export function corridor_report(l: bigint, teeth: boolean, k: bigint, ell: bigint): string;

/**
 * Ends classes of the drainage network in the default window.
 */
export function drainage_counts(width: number, height: number, p_percent: bigint, seed: bigint): string;

/**
 * Drainage network with open probability `p_percent / 100`.
 */
export function drainage_figure(width: number, height: number, p_percent: bigint, seed: bigint): string;

/**
 * UST with its dual tree and the contour at distance `1/eps_den`.
 */
export function ust_figure(size: number, seed: bigint, eps_den: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly corridor_figure: (a: bigint, b: number, c: bigint, d: bigint) => [number, number, number, number];
    readonly corridor_report: (a: bigint, b: number, c: bigint, d: bigint) => [number, number, number, number];
    readonly drainage_counts: (a: number, b: number, c: bigint, d: bigint) => [number, number, number, number];
    readonly drainage_figure: (a: number, b: number, c: bigint, d: bigint) => [number, number, number, number];
    readonly ust_figure: (a: number, b: bigint, c: bigint) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
