/* tslint:disable */
/* eslint-disable */
/**
 * Generators and graded dimensions of the free Lie algebra attached to a
 * field signature.
 */
export function motivic_dims(r1: number, r2: number, s: number, weight_bound: number): string;
/**
 * Dimensions of the free Lie algebra on generators of the given
 * comma-separated weights.
 */
export function free_dims(weights: string, weight_bound: number): string;
/**
 * Lie bracket and Ihara bracket of two elements of the free Lie algebra
 * on `x, y`, written as `coef [bracket] ; ...`.
 */
export function brackets(a: string, b: string): string;
/**
 * Cohomology of a presentation in the text file format.
 */
export function cohomology(presentation: string, max_degree: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
  readonly memory: WebAssembly.Memory;
  readonly brackets: (a: number, b: number, c: number, d: number) => [number, number];
  readonly cohomology: (a: number, b: number, c: number) => [number, number];
  readonly free_dims: (a: number, b: number, c: number) => [number, number];
  readonly motivic_dims: (a: number, b: number, c: number, d: number) => [number, number];
  readonly __wbindgen_export_0: WebAssembly.Table;
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
