/**
 * Pure view functions: documents in, HTML/SVG strings out.
 *
 * Values are rendered exactly as received (see format.ts); positioning on
 * the axis is the only geometry applied. Keeping these pure makes the
 * zero-inference contract snapshot-testable without a browser.
 */
import { ApiFailure, ReportDoc, StatusDoc, TimelineDay } from "./api.js";
import { axisPercent, INDICATOR_LABELS, INDICATORS, SCALE, TERMS } from "./config.js";
import { escapeHtml, formatMaybe, formatNumber } from "./format.js";

function termTicks(): string {
  return SCALE.centers
    .map(
      (c, i) =>
        `<span class="tick" style="left:${axisPercent(c)}%">${TERMS[i]}</span>`,
    )
    .join("");
}

export function renderGauges(status: StatusDoc): string {
  const rows = INDICATORS.map((ind) => {
    const value = status.indicators[ind] ?? null;
    const marker =
      value === null
        ? `<span class="marker empty">not yet assessed</span>`
        : `<span class="marker" style="left:${axisPercent(value)}%"></span>`;
    return `<div class="gauge-row" data-indicator="${ind}">
  <div class="gauge-head"><strong>${ind}</strong> ${escapeHtml(INDICATOR_LABELS[ind])}
    <span class="gauge-value" data-role="value">${formatMaybe(value)}</span></div>
  <div class="gauge-bar">${marker}${termTicks()}</div>
</div>`;
  });
  return `<div class="gauges">${rows.join("\n")}</div>`;
}

export function renderReportCard(doc: StatusDoc | ReportDoc): string {
  if (doc.final === null) {
    return `<div class="report-card empty">No evaluations recorded yet.</div>`;
  }
  return `<div class="report-card">
  <span class="final-term term-${doc.final.term}">${doc.final.term}</span>
  <span class="final-value" data-role="final-value">${formatNumber(doc.final.value)}</span>
  <span class="final-count">${doc.record_count} evaluations, last on day ${doc.final ? doc.last_update_day : ""}</span>
</div>`;
}

const CHART = { width: 640, height: 280, left: 46, right: 10, top: 14, bottom: 26 };

function chartX(day: number, lastDay: number): number {
  const span = CHART.width - CHART.left - CHART.right;
  const t = lastDay > 1 ? (day - 1) / (lastDay - 1) : 0;
  return CHART.left + t * span;
}

function chartY(value: number): number {
  const span = CHART.height - CHART.top - CHART.bottom;
  return CHART.top + (1 - axisPercent(value) / 100) * span;
}

function seriesPath(
  days: TimelineDay[],
  lastDay: number,
  pick: (d: TimelineDay) => number | null,
): string {
  const pts = days
    .filter((d) => pick(d) !== null)
    .map((d) => `${chartX(d.day, lastDay).toFixed(1)},${chartY(pick(d) as number).toFixed(1)}`);
  return pts.join(" ");
}

export function renderTimeline(days: TimelineDay[]): string {
  if (days.length === 0) {
    return `<div class="timeline empty">No days to show.</div>`;
  }
  const lastDay = days[days.length - 1]!.day;
  const grid = SCALE.centers
    .map((c, i) => {
      const y = chartY(c).toFixed(1);
      return (
        `<line class="grid" x1="${CHART.left}" y1="${y}" x2="${CHART.width - CHART.right}" y2="${y}"/>` +
        `<text class="grid-label" x="6" y="${y}">${TERMS[i]}</text>`
      );
    })
    .join("");
  const indicatorSeries = INDICATORS.map((ind) => {
    const path = seriesPath(days, lastDay, (d) => d.status[ind] ?? null);
    return path === ""
      ? ""
      : `<polyline class="series series-${ind}" fill="none" points="${path}"/>`;
  }).join("");
  const combinedPts = days.filter((d) => d.final !== null);
  const combined = seriesPath(days, lastDay, (d) => d.final);
  const markers = combinedPts
    .map(
      (d) =>
        `<circle class="pt" data-day="${d.day}" r="1.6" cx="${chartX(d.day, lastDay).toFixed(1)}" cy="${chartY(d.final as number).toFixed(1)}"/>`,
    )
    .join("");
  return `<svg class="timeline" viewBox="0 0 ${CHART.width} ${CHART.height}" role="img">
${grid}
${indicatorSeries}
<polyline class="series combined" fill="none" points="${combined}"/>
${markers}
</svg>`;
}

export function renderEmptyState(student: string): string {
  return `<div class="empty-state">No records for <strong>${escapeHtml(student)}</strong> yet.
Submit the first evaluation to start the record.</div>`;
}

export function renderError(failure: ApiFailure): string {
  if (failure.kind === "conflict") {
    return `<div class="banner conflict">Out of order: ${escapeHtml(failure.message)}
<span class="hint">Records must not go back in time; corrections are new records on a later
or equal day.</span></div>`;
  }
  if (failure.kind === "network") {
    return `<div class="banner network">${escapeHtml(failure.message)}
<button type="button" data-action="retry">Retry</button></div>`;
  }
  return `<div class="banner error">${escapeHtml(failure.message)}</div>`;
}
