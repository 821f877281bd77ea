/** Full-loop integration against the real Python service: live weight
 * feedback through the form, slider round-trips updating the bars, and the
 * sensitivity slider's rank-flip threshold agreeing with a CLI bisection.
 *
 * Spawns `python -m bwmtopsis.cli serve` from the repository root; skipped
 * automatically when the interpreter or package is unavailable.
 */

import { execFileSync, spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { createConnection } from "node:net";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { DecisionApi } from "../src/api.js";
import { chooseBest, chooseWorst, initialState, setBestToOther,
         setOtherToWorst, toPayload } from "../src/state.js";
import { AppContext, renderPickers, renderSliders, renderWeights,
         submitSurvey } from "../src/ui.js";

const REPO = resolve(__dirname, "..", "..");
const PORT = 8893;
const BASE = `http://127.0.0.1:${PORT}`;

function pythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import bwmtopsis"],
                          { cwd: REPO });
  return probe.status === 0;
}

const enabled = pythonAvailable();
let server: ChildProcess | null = null;

function portOpen(port: number): Promise<boolean> {
  return new Promise((resolvePort) => {
    const socket = createConnection({ port, host: "127.0.0.1" });
    socket.once("connect", () => { socket.end(); resolvePort(true); });
    socket.once("error", () => resolvePort(false));
  });
}

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    if (await portOpen(PORT)) {
      const response = await fetch(`${BASE}/healthz`);
      if (response.ok) return;
    }
    await new Promise((resolveWait) => setTimeout(resolveWait, 200));
  }
  throw new Error("service did not come up");
}

describe.runIf(enabled)("live service loop", () => {
  beforeAll(async () => {
    server = spawn("python3", ["-m", "bwmtopsis.cli", "serve",
                               "--port", String(PORT)],
                   { cwd: REPO, stdio: "ignore" });
    await waitForService();
  });

  afterAll(() => {
    server?.kill();
  });

  it("consistent three-criterion survey shows 57.1/28.6/14.3 and CR 0",
     async () => {
    const api = new DecisionApi(BASE);
    const criteria = [
      { id: "price", name: "Price", sense: "cost" as const },
      { id: "quality", name: "Quality", sense: "benefit" as const },
      { id: "service", name: "Service", sense: "benefit" as const },
    ];
    const created = await api.createSession(criteria);
    expect(created.free_comparisons).toBe(3);

    document.body.innerHTML = pageFragment();
    const ctx: AppContext = {
      api, criteria, sessionId: created.session_id, respondent: "analyst",
      state: initialState(3), baseRanking: null, sensitivityCriterion: null,
    };
    ctx.state = chooseWorst(chooseBest(ctx.state, 0), 2);
    ctx.state = setBestToOther(ctx.state, 1, 2);
    ctx.state = setBestToOther(ctx.state, 2, 4);
    ctx.state = setOtherToWorst(ctx.state, 1, 2);
    renderPickers(ctx);
    renderSliders(ctx);
    await submitSurvey(ctx);

    const texts = [0, 1, 2].map((j) =>
      document.getElementById(`weight-${j}`)?.textContent);
    expect(texts).toEqual(["57.1%", "28.6%", "14.3%"]);
    expect(document.getElementById("cr-badge")?.textContent)
      .toBe("CR: 0.000");
    expect(document.getElementById("cr-badge")?.className)
      .toContain("good");
  });

  it("moving one slider round-trips to the service and updates the bars",
     async () => {
    const api = new DecisionApi(BASE);
    const criteria = [
      { id: "price", name: "Price", sense: "cost" as const },
      { id: "quality", name: "Quality", sense: "benefit" as const },
      { id: "service", name: "Service", sense: "benefit" as const },
    ];
    const created = await api.createSession(criteria);
    document.body.innerHTML = pageFragment();
    const ctx: AppContext = {
      api, criteria, sessionId: created.session_id, respondent: "analyst",
      state: initialState(3), baseRanking: null, sensitivityCriterion: null,
    };
    ctx.state = chooseWorst(chooseBest(ctx.state, 0), 2);
    ctx.state = setBestToOther(ctx.state, 1, 2);
    ctx.state = setBestToOther(ctx.state, 2, 4);
    ctx.state = setOtherToWorst(ctx.state, 1, 2);
    renderSliders(ctx);
    await submitSurvey(ctx);
    const before = document.getElementById("weight-1")?.textContent;

    // drag the quality-vs-worst slider from 2 to 8
    const slider = document.getElementById("ow-1") as HTMLInputElement;
    expect(slider).toBeTruthy();
    slider.value = "8";
    slider.dispatchEvent(new Event("input"));
    await new Promise((resolveWait) => setTimeout(resolveWait, 400));

    const after = document.getElementById("weight-1")?.textContent;
    expect(ctx.state.ow[1]).toBe(8);
    expect(after).not.toBe(before);

    // the displayed number is the service's answer for the edited survey
    const echo = await api.putSurvey(ctx.sessionId, "analyst",
                                     toPayload(ctx.state));
    expect(after).toBe(`${(echo.weights[1] * 100).toFixed(1)}%`);
  });

  it("sensitivity slider flip threshold matches the CLI bisection within " +
     "one slider step", async () => {
    const api = new DecisionApi(BASE);
    const criteriaText = readFileSync(
      join(REPO, "fixtures", "vehicle_choice", "criteria.json"), "utf-8");
    const criteria = JSON.parse(criteriaText);
    const weights = JSON.parse(readFileSync(
      join(REPO, "fixtures", "vehicle_choice", "weights_reference.json"),
      "utf-8")).weights as number[];

    const created = await api.createSession(criteria);
    const matrix = matrixFromCsv(readFileSync(
      join(REPO, "fixtures", "vehicle_choice", "weighted_matrix.csv"),
      "utf-8"));
    await api.putMatrix(created.session_id, matrix);
    await api.rank(created.session_id, weights);

    // UI side: walk the slider grid upward until the top flips
    const step = 0.01;
    const gridDeltas: number[] = [];
    for (let d = 0; d <= 0.5 + 1e-9; d += step) {
      gridDeltas.push(Number(d.toFixed(2)));
    }
    const scan = await api.sensitivity(created.session_id,
                                       "cost_of_ownership", gridDeltas);
    const uiFlip = scan.entries.find((entry) => entry.flipped);
    expect(uiFlip).toBeTruthy();

    // CLI side: persist the same run, then bisect with single-delta calls
    const work = mkdtempSync(join(tmpdir(), "bwmtopsis-ui-"));
    const config = {
      criteria: join(REPO, "fixtures", "vehicle_choice", "criteria.json"),
      matrix: join(REPO, "fixtures", "vehicle_choice", "weighted_matrix.csv"),
      stage: "weighted",
      weights: join(REPO, "fixtures", "vehicle_choice",
                    "weights_reference.json"),
      store: join(work, "runs"),
    };
    writeFileSync(join(work, "config.json"), JSON.stringify(config));
    const runDoc = execFileSync("python3", [
      "-m", "bwmtopsis.cli", "pipeline", "--config",
      join(work, "config.json"), "--format", "json"], { cwd: REPO });
    const runId = JSON.parse(runDoc.toString()).run_id;

    const flipsAt = (delta: number): boolean => {
      const out = execFileSync("python3", [
        "-m", "bwmtopsis.cli", "sensitivity", "--run", runId,
        "--criterion", "cost_of_ownership", "--deltas", String(delta),
        "--store", join(work, "runs"), "--format", "json"], { cwd: REPO });
      return JSON.parse(out.toString()).entries[0].flipped as boolean;
    };

    let lo = 0.0;   // no flip
    let hi = 0.5;   // flip (same upper bound as the slider)
    expect(flipsAt(hi)).toBe(true);
    for (let i = 0; i < 10; i += 1) {
      const mid = (lo + hi) / 2;
      if (flipsAt(mid)) hi = mid;
      else lo = mid;
    }
    const cliThreshold = hi;
    expect(Math.abs(uiFlip!.delta - cliThreshold)).toBeLessThanOrEqual(step);
  }, 180_000);
});

function pageFragment(): string {
  const html = readFileSync(join(REPO, "frontend", "index.html"), "utf-8");
  const start = html.indexOf("<header>");
  const end = html.indexOf("</main>") + "</main>".length;
  return html.slice(start, end);
}

function matrixFromCsv(text: string) {
  const lines = text.trim().split("\n");
  const ids = lines[0].split(",").slice(1);
  const alternatives: string[] = [];
  const values: number[][] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    alternatives.push(cells[0]);
    values.push(cells.slice(1).map(Number));
  }
  return { alternatives, criteria_ref: ids, stage: "weighted", values };
}
