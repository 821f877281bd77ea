/** DOM layer: renders the elicitation form, live weight bars, consistency
 * badge, ranking table and sensitivity controls, and wires every control
 * to the service API. */

import {
  ApiError,
  Criterion,
  DecisionApi,
  RankingEntry,
  SurveyFeedback,
  WeightsOut,
} from "./api.js";
import {
  ElicitationState,
  chooseBest,
  chooseWorst,
  consistencyLevel,
  enabledCells,
  enabledCount,
  formatWeightPercent,
  isReady,
  setBestToOther,
  setOtherToWorst,
  toPayload,
} from "./state.js";

export interface AppContext {
  api: DecisionApi;
  criteria: Criterion[];
  sessionId: string;
  respondent: string;
  state: ElicitationState;
  baseRanking: RankingEntry[] | null;
  sensitivityCriterion: string | null;
}

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function showError(id: string, message: string): void {
  const box = el(id);
  box.textContent = message;
  box.classList.add("visible");
}

export function clearError(id: string): void {
  const box = el(id);
  box.textContent = "";
  box.classList.remove("visible");
}

// --- criterion pickers ------------------------------------------------------

export function renderPickers(ctx: AppContext): void {
  for (const [pickId, kind] of [["best-pick", "best"],
                                ["worst-pick", "worst"]] as const) {
    const select = el<HTMLSelectElement>(pickId);
    clear(select);
    const blank = document.createElement("option");
    blank.value = "";
    blank.textContent = `choose ${kind}...`;
    select.appendChild(blank);
    ctx.criteria.forEach((criterion, index) => {
      const option = document.createElement("option");
      option.value = String(index);
      option.textContent = criterion.name;
      select.appendChild(option);
    });
    select.value = kind === "best"
      ? (ctx.state.best === null ? "" : String(ctx.state.best))
      : (ctx.state.worst === null ? "" : String(ctx.state.worst));
    select.onchange = () => {
      const index = select.value === "" ? -1 : Number(select.value);
      if (index < 0) return;
      ctx.state = kind === "best"
        ? chooseBest(ctx.state, index)
        : chooseWorst(ctx.state, index);
      renderPickers(ctx);
      renderSliders(ctx);
      void submitSurvey(ctx);
    };
  }
}

// --- comparison sliders ------------------------------------------------------

function sliderRow(ctx: AppContext, field: "bo" | "ow", index: number,
                   editable: boolean): HTMLElement {
  const row = document.createElement("div");
  row.className = "slider-row";
  const label = document.createElement("span");
  label.className = "slider-label";
  label.textContent = ctx.criteria[index].name;

  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "1";
  slider.max = "9";
  slider.step = "1";
  slider.id = `${field}-${index}`;
  slider.value = String(ctx.state[field][index]);
  slider.disabled = !editable;

  const value = document.createElement("span");
  value.className = "slider-value";
  value.id = `${field}-${index}-value`;
  value.textContent = slider.value;
  if (!editable) row.classList.add("locked");

  slider.oninput = () => {
    const parsed = Number(slider.value);
    ctx.state = field === "bo"
      ? setBestToOther(ctx.state, index, parsed)
      : setOtherToWorst(ctx.state, index, parsed);
    refreshSliderValues(ctx);
    void submitSurvey(ctx);
  };

  row.append(label, slider, value);
  return row;
}

export function renderSliders(ctx: AppContext): void {
  const boBox = el("bo-sliders");
  const owBox = el("ow-sliders");
  clear(boBox);
  clear(owBox);
  if (!isReady(ctx.state)) {
    el("slider-hint").textContent =
      "Pick the most and least important criterion to unlock the comparisons.";
    return;
  }
  const cells = enabledCells(ctx.state);
  el("slider-hint").textContent =
    `${enabledCount(ctx.state)} independent comparisons to set (1 = equal, ` +
    "9 = extremely more important).";
  ctx.criteria.forEach((_, index) => {
    boBox.appendChild(sliderRow(ctx, "bo", index, cells.bo[index]));
    owBox.appendChild(sliderRow(ctx, "ow", index, cells.ow[index]));
  });
}

export function refreshSliderValues(ctx: AppContext): void {
  (["bo", "ow"] as const).forEach((field) => {
    ctx.state[field].forEach((value, index) => {
      const slider = document.getElementById(
        `${field}-${index}`) as HTMLInputElement | null;
      const label = document.getElementById(`${field}-${index}-value`);
      if (slider) slider.value = String(value);
      if (label) label.textContent = String(value);
    });
  });
}

// --- live weights + consistency badge ---------------------------------------

export function renderWeights(ctx: AppContext,
                              weights: WeightsOut | null): void {
  const box = el("weight-bars");
  clear(box);
  if (!weights) return;
  weights.weights.forEach((weight, index) => {
    const row = document.createElement("div");
    row.className = "bar-row";
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = ctx.criteria[index].name;
    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = "bar-fill";
    fill.style.width = `${(weight * 100).toFixed(1)}%`;
    const value = document.createElement("span");
    value.className = "bar-value";
    value.id = `weight-${index}`;
    value.textContent = formatWeightPercent(weight);
    track.appendChild(fill);
    row.append(label, track, value);
    box.appendChild(row);
  });

  const badge = el("cr-badge");
  const level = consistencyLevel(weights.consistency_ratio,
                                 weights.inconsistent);
  badge.className = `badge ${level}`;
  badge.textContent = weights.inconsistent
    ? "CR: inconsistent"
    : `CR: ${(weights.consistency_ratio ?? 0).toFixed(3)}`;
}

export async function submitSurvey(ctx: AppContext): Promise<void> {
  if (!isReady(ctx.state)) return;
  clearError("survey-error");
  try {
    const feedback: SurveyFeedback = await ctx.api.putSurvey(
      ctx.sessionId, ctx.respondent, toPayload(ctx.state));
    renderWeights(ctx, feedback);
  } catch (error) {
    if (error instanceof ApiError) {
      const detail = error.violations
        .map((v) => v.field !== null && v.index !== null
          ? `${v.field}[${v.index}]: ${v.message}` : v.message)
        .join("; ");
      showError("survey-error", detail || error.message);
    } else {
      showError("survey-error", String(error));
    }
  }
}

// --- ranking table + sensitivity ---------------------------------------------

export function renderRanking(ctx: AppContext, entries: RankingEntry[],
                              highlightAgainstBase: boolean): void {
  const body = el("ranking-body");
  clear(body);
  const baseRanks = new Map<string, number>();
  if (highlightAgainstBase && ctx.baseRanking) {
    ctx.baseRanking.forEach((e) => baseRanks.set(e.alternative, e.rank));
  }
  [...entries].sort((a, b) => a.rank - b.rank).forEach((entry) => {
    const row = document.createElement("tr");
    const moved = highlightAgainstBase
      && baseRanks.size > 0
      && baseRanks.get(entry.alternative) !== entry.rank;
    if (moved) row.className = "moved";
    const cells = [
      entry.alternative,
      entry.s_plus.toFixed(4),
      entry.s_minus.toFixed(4),
      entry.score.toFixed(4),
      String(entry.rank) + (entry.tied ? " (tie)" : ""),
    ];
    cells.forEach((text) => {
      const td = document.createElement("td");
      td.textContent = text;
      row.appendChild(td);
    });
    body.appendChild(row);
  });
}

export function renderSensitivityControls(ctx: AppContext): void {
  const select = el<HTMLSelectElement>("sensitivity-criterion");
  clear(select);
  ctx.criteria.forEach((criterion) => {
    const option = document.createElement("option");
    option.value = criterion.id;
    option.textContent = criterion.name;
    select.appendChild(option);
  });
  if (ctx.sensitivityCriterion) select.value = ctx.sensitivityCriterion;
  select.onchange = () => {
    ctx.sensitivityCriterion = select.value;
    el<HTMLInputElement>("delta-slider").value = "0";
    el("delta-value").textContent = "0.00";
  };

  const slider = el<HTMLInputElement>("delta-slider");
  slider.oninput = () => {
    const delta = Number(slider.value);
    el("delta-value").textContent = delta.toFixed(2);
    void runSensitivity(ctx, select.value, delta);
  };

  el("delta-reset").onclick = () => {
    slider.value = "0";
    el("delta-value").textContent = "0.00";
    if (ctx.baseRanking) renderRanking(ctx, ctx.baseRanking, false);
    clearError("sensitivity-error");
  };
}

async function runSensitivity(ctx: AppContext, criterion: string,
                              delta: number): Promise<void> {
  clearError("sensitivity-error");
  try {
    const response = await ctx.api.sensitivity(ctx.sessionId, criterion,
                                               [delta]);
    renderRanking(ctx, response.entries[0].reranking, true);
    const note = el("flip-note");
    note.textContent = response.entries[0].flipped
      ? "Top alternative changed against the base run."
      : "";
  } catch (error) {
    showError("sensitivity-error",
              error instanceof ApiError ? error.message : String(error));
  }
}
