/**
 * DOM wiring: one student at a time, refetch-on-submit, no local caching.
 */
import { ApiClient, EvaluationPayload } from "./api.js";
import { DAYS_PER_MONTH, INDICATOR_LABELS, INDICATORS, MONTHS, TERMS } from "./config.js";
import {
  buildPayload,
  canSubmit,
  chooseDate,
  chooseIndicator,
  chooseSlider,
  chooseTerm,
  FormState,
  initialForm,
  setNote,
} from "./form.js";
import { renderEmptyState, renderError, renderGauges, renderReportCard, renderTimeline } from "./views.js";

// same-origin by default; override with ?api=http://host:port when the
// static files are served from elsewhere
const api = new ApiClient(new URLSearchParams(location.search).get("api") ?? "");
let form: FormState = initialForm();
let student = "";
let lastPayload: EvaluationPayload | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function syncForm(): void {
  document.querySelectorAll<HTMLButtonElement>("[data-term]").forEach((b) => {
    b.classList.toggle("active", b.dataset.term === form.term);
  });
  document.querySelectorAll<HTMLButtonElement>("[data-ind]").forEach((b) => {
    b.classList.toggle("active", b.dataset.ind === form.indicator);
  });
  const slider = el<HTMLInputElement>("slider");
  const sliderOut = el<HTMLElement>("slider-value");
  sliderOut.textContent = form.sliderValue === null ? "—" : slider.value;
  el<HTMLButtonElement>("submit").disabled = !canSubmit(form);
}

async function refreshStudent(): Promise<void> {
  if (!student) return;
  const status = await api.getStatus(student);
  const view = el<HTMLElement>("student-view");
  const banner = el<HTMLElement>("view-banner");
  banner.innerHTML = "";
  if (!status.ok) {
    view.innerHTML = status.kind === "not_found" ? renderEmptyState(student) : "";
    if (status.kind !== "not_found") banner.innerHTML = renderError(status);
    return;
  }
  const timeline = await api.getTimeline(student);
  view.innerHTML =
    `<h3>Indicator standings</h3>` +
    renderGauges(status.doc) +
    `<h3>Report card</h3>` +
    renderReportCard(status.doc) +
    `<h3>School-year timeline</h3>` +
    (timeline.ok ? renderTimeline(timeline.doc.days) : renderError(timeline));
}

async function submit(payload: EvaluationPayload): Promise<void> {
  const banner = el<HTMLElement>("form-banner");
  banner.innerHTML = "";
  const res = await api.postEvaluation(student, payload);
  if (res.ok) {
    lastPayload = null;
    banner.innerHTML = `<div class="banner ok">Recorded (seq ${res.doc.seq}${
      res.doc.clamped ? ", value clamped to the grade range" : ""
    }).</div>`;
    await refreshStudent(); // gauges and timeline reflect the service, nothing local
    return;
  }
  if (res.kind === "network") {
    lastPayload = payload; // offer a retry; never update the view optimistically
  }
  banner.innerHTML = renderError(res);
}

function buildSkeleton(): void {
  const root = el<HTMLElement>("app");
  root.innerHTML = `
  <section class="panel">
    <h2>Student</h2>
    <div class="row">
      <input id="student" placeholder="student id" />
      <button id="load" type="button">Load</button>
    </div>
    <div id="view-banner"></div>
    <div id="student-view"></div>
  </section>
  <section class="panel">
    <h2>New evaluation</h2>
    <div class="row" id="indicators">
      ${INDICATORS.map(
        (i) =>
          `<button type="button" data-ind="${i}" title="${INDICATOR_LABELS[i]}">${i}</button>`,
      ).join("")}
    </div>
    <div class="row" id="terms">
      ${TERMS.map((t) => `<button type="button" data-term="${t}">${t}</button>`).join("")}
    </div>
    <div class="row">
      <label>fine-grained
        <input id="slider" type="range" min="10" max="20" step="0.1" value="15" />
        <span id="slider-value">—</span>
      </label>
    </div>
    <div class="row">
      <select id="month">${MONTHS.map((m) => `<option>${m}</option>`).join("")}</select>
      <input id="day" type="number" min="1" max="${DAYS_PER_MONTH}" value="1" />
      <input id="note" placeholder="note (optional)" />
    </div>
    <div class="row">
      <button id="submit" type="button" disabled>Submit evaluation</button>
    </div>
    <div id="form-banner"></div>
  </section>`;
}

function attachHandlers(): void {
  el<HTMLButtonElement>("load").addEventListener("click", () => {
    student = el<HTMLInputElement>("student").value.trim();
    void refreshStudent();
  });
  el<HTMLElement>("indicators").addEventListener("click", (ev) => {
    const ind = (ev.target as HTMLElement).dataset?.ind;
    if (ind) {
      form = chooseIndicator(form, ind as never);
      syncForm();
    }
  });
  el<HTMLElement>("terms").addEventListener("click", (ev) => {
    const term = (ev.target as HTMLElement).dataset?.term;
    if (term) {
      form = chooseTerm(form, term as never);
      syncForm();
    }
  });
  el<HTMLInputElement>("slider").addEventListener("input", (ev) => {
    form = chooseSlider(form, Number((ev.target as HTMLInputElement).value));
    syncForm();
  });
  el<HTMLSelectElement>("month").addEventListener("change", syncDate);
  el<HTMLInputElement>("day").addEventListener("change", syncDate);
  el<HTMLInputElement>("note").addEventListener("input", (ev) => {
    form = setNote(form, (ev.target as HTMLInputElement).value);
  });
  el<HTMLButtonElement>("submit").addEventListener("click", () => {
    if (!student) {
      el<HTMLElement>("form-banner").innerHTML =
        `<div class="banner error">Load a student first.</div>`;
      return;
    }
    void submit(buildPayload(form));
  });
  el<HTMLElement>("form-banner").addEventListener("click", (ev) => {
    if ((ev.target as HTMLElement).dataset?.action === "retry" && lastPayload) {
      void submit(lastPayload);
    }
  });
}

function syncDate(): void {
  const month = el<HTMLSelectElement>("month").value as never;
  const day = Number(el<HTMLInputElement>("day").value);
  try {
    form = chooseDate(form, month, day);
    el<HTMLElement>("form-banner").innerHTML = "";
  } catch (err) {
    el<HTMLElement>("form-banner").innerHTML =
      `<div class="banner error">${String(err)}</div>`;
  }
}

document.addEventListener("DOMContentLoaded", () => {
  buildSkeleton();
  attachHandlers();
  syncForm();
});
