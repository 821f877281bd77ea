/** Elicitation form state: which criteria are best/worst and the two
 * comparison vectors.
 *
 * This module enforces only input-shape rules (integer 1-9 clamping, the
 * locked self-comparison cells, the linked best-vs-worst cell, 2n-3 free
 * inputs); all judgment of the numbers happens server-side. Every payload
 * this state produces is structurally valid by construction.
 */

import type { SurveyPayload } from "./api.js";

export interface ElicitationState {
  n: number;
  best: number | null;
  worst: number | null;
  bo: number[];
  ow: number[];
}

export function initialState(n: number): ElicitationState {
  return {
    n,
    best: null,
    worst: null,
    bo: new Array(n).fill(1),
    ow: new Array(n).fill(1),
  };
}

/** Integers 1..9 only; fractional slider events round to nearest. */
export function clampScale(value: number): number {
  if (!Number.isFinite(value)) return 1;
  return Math.min(9, Math.max(1, Math.round(value)));
}

function relink(state: ElicitationState): ElicitationState {
  const { best, worst } = state;
  const bo = [...state.bo];
  const ow = [...state.ow];
  if (best !== null) bo[best] = 1;
  if (worst !== null) ow[worst] = 1;
  if (best !== null && worst !== null && best !== worst) {
    ow[best] = bo[worst]; // the shared best-vs-worst judgment
  }
  return { ...state, bo, ow };
}

export function chooseBest(state: ElicitationState,
                           index: number): ElicitationState {
  if (index < 0 || index >= state.n) return state;
  const worst = state.worst === index ? null : state.worst;
  return relink({ ...state, best: index, worst });
}

export function chooseWorst(state: ElicitationState,
                            index: number): ElicitationState {
  if (index < 0 || index >= state.n) return state;
  const best = state.best === index ? null : state.best;
  return relink({ ...state, best, worst: index });
}

export function setBestToOther(state: ElicitationState, index: number,
                               value: number): ElicitationState {
  if (index < 0 || index >= state.n) return state;
  if (index === state.best) return state; // locked at 1
  const bo = [...state.bo];
  bo[index] = clampScale(value);
  return relink({ ...state, bo });
}

export function setOtherToWorst(state: ElicitationState, index: number,
                                value: number): ElicitationState {
  if (index < 0 || index >= state.n) return state;
  if (index === state.worst) return state; // locked at 1
  if (index === state.best) {
    // linked cell: editing other-vs-worst for the best criterion is the
    // same judgment as best-vs-worst; route it through bo[worst]
    if (state.worst === null) return state;
    return setBestToOther(state, state.worst, value);
  }
  const ow = [...state.ow];
  ow[index] = clampScale(value);
  return relink({ ...state, ow });
}

export function isReady(state: ElicitationState): boolean {
  return state.best !== null && state.worst !== null
    && state.best !== state.worst;
}

/** Which inputs are editable: exactly 2n-3 once best and worst are set. */
export function enabledCells(state: ElicitationState):
    { bo: boolean[]; ow: boolean[] } {
  const bo = new Array(state.n).fill(false);
  const ow = new Array(state.n).fill(false);
  if (!isReady(state)) return { bo, ow };
  for (let j = 0; j < state.n; j += 1) {
    bo[j] = j !== state.best;            // n - 1 free
    ow[j] = j !== state.worst && j !== state.best; // n - 2 free (link)
  }
  return { bo, ow };
}

export function enabledCount(state: ElicitationState): number {
  const cells = enabledCells(state);
  return cells.bo.filter(Boolean).length + cells.ow.filter(Boolean).length;
}

export function toPayload(state: ElicitationState): SurveyPayload {
  if (!isReady(state)) {
    throw new Error("choose a best and a worst criterion first");
  }
  return {
    best: state.best as number,
    worst: state.worst as number,
    bo: [...state.bo],
    ow: [...state.ow],
  };
}

/** Format a 0..1 weight as a percentage with one decimal, e.g. "57.1%". */
export function formatWeightPercent(weight: number): string {
  return `${(weight * 100).toFixed(1)}%`;
}

export type ConsistencyLevel = "good" | "warn" | "bad";

/** Traffic-light guidance for the consistency badge (display only). */
export function consistencyLevel(ratio: number | null | undefined,
                                 inconsistent?: boolean): ConsistencyLevel {
  if (inconsistent || ratio === null || ratio === undefined) return "bad";
  if (ratio <= 0.1) return "good";
  if (ratio <= 0.25) return "warn";
  return "bad";
}
