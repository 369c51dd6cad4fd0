/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const corridor_figure: (a: bigint, b: number, c: bigint, d: bigint) => [number, number, number, number];
export const corridor_report: (a: bigint, b: number, c: bigint, d: bigint) => [number, number, number, number];
export const drainage_counts: (a: number, b: number, c: bigint, d: bigint) => [number, number, number, number];
export const drainage_figure: (a: number, b: number, c: bigint, d: bigint) => [number, number, number, number];
export const ust_figure: (a: number, b: bigint, c: bigint) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
