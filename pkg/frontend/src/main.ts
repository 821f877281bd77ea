/** Bootstrap: create a session for the bundled criteria, then hand the
 * page over to the form, ranking and sensitivity views. */

import { Criterion, DecisionApi, ApiError } from "./api.js";
import { initialState } from "./state.js";
import {
  AppContext,
  clearError,
  renderPickers,
  renderRanking,
  renderSensitivityControls,
  renderSliders,
  renderWeights,
  showError,
} from "./ui.js";

const VEHICLE_CRITERIA: Criterion[] = [
  { id: "cost_of_ownership", name: "Cost of Ownership", sense: "cost" },
  { id: "safety_comfort", name: "Safety & Comfort", sense: "benefit" },
  { id: "range", name: "Range", sense: "benefit" },
  { id: "network_effect", name: "Network Effect", sense: "benefit" },
  { id: "refuelling_infrastructure",
    name: "Re-fuelling Infrastructure & Convenience", sense: "benefit" },
  { id: "environmental_impact", name: "Environmental Impact",
    sense: "benefit" },
  { id: "policy_push", name: "Policy Push & Regulations", sense: "benefit" },
];

function qs<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

async function boot(): Promise<void> {
  const api = new DecisionApi("");
  const created = await api.createSession(VEHICLE_CRITERIA);
  const ctx: AppContext = {
    api,
    criteria: VEHICLE_CRITERIA,
    sessionId: created.session_id,
    respondent: "analyst",
    state: initialState(VEHICLE_CRITERIA.length),
    baseRanking: null,
    sensitivityCriterion: null,
  };
  qs("session-label").textContent =
    `session ${ctx.sessionId}: ${created.free_comparisons} comparisons to set`;

  renderPickers(ctx);
  renderSliders(ctx);
  renderWeights(ctx, null);
  renderSensitivityControls(ctx);

  qs<HTMLButtonElement>("matrix-load").onclick = async () => {
    clearError("matrix-error");
    try {
      const matrix = JSON.parse(
        qs<HTMLTextAreaElement>("matrix-input").value);
      const result = await ctx.api.putMatrix(ctx.sessionId, matrix);
      qs("matrix-status").textContent =
        `${result.alternatives} alternatives loaded (${result.stage} stage)`;
    } catch (error) {
      showError("matrix-error",
                error instanceof ApiError ? error.message : String(error));
    }
  };

  qs<HTMLButtonElement>("rank-button").onclick = async () => {
    clearError("rank-error");
    try {
      const weightsText = qs<HTMLInputElement>("rank-weights").value.trim();
      const weights = weightsText === ""
        ? undefined
        : weightsText.split(",").map(Number);
      const response = await ctx.api.rank(ctx.sessionId, weights);
      ctx.baseRanking = response.ranking;
      renderRanking(ctx, response.ranking, false);
      renderWeights(ctx, response.weights);
      qs("flip-note").textContent = "";
    } catch (error) {
      showError("rank-error",
                error instanceof ApiError ? error.message : String(error));
    }
  };
}

boot().catch((error) => {
  const banner = document.getElementById("boot-error");
  if (banner) {
    banner.textContent = `cannot reach the decision service: ${error}`;
    banner.classList.add("visible");
  }
});
