/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const brackets: (a: number, b: number, c: number, d: number) => [number, number];
export const cohomology: (a: number, b: number, c: number) => [number, number];
export const free_dims: (a: number, b: number, c: number) => [number, number];
export const motivic_dims: (a: number, b: number, c: number, d: number) => [number, number];
export const __wbindgen_export_0: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
