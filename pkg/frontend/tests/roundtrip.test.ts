/**
 * Zero-inference contract: every number shown to the teacher is the byte
 * sequence the service sent. Fixtures are literal response bodies captured
 * from the real service, so these are true wire-to-screen comparisons.
 */
import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, test } from "vitest";

import type { PostResultDoc, TimelineDoc } from "../src/api.js";
import { renderGauges, renderReportCard, renderTimeline } from "../src/views.js";

const raw = (name: string) => readFileSync(join(__dirname, "fixtures", name), "utf-8");

function wireToken(body: string, pattern: RegExp): string {
  const m = body.match(pattern);
  if (!m || !m[1]) throw new Error(`fixture does not match ${pattern}`);
  return m[1];
}

describe("first evaluation of a fresh student (A, day 1, term G)", () => {
  const body = raw("post_first_g.json");
  const doc = JSON.parse(body) as PostResultDoc;

  test("gauge shows exactly the wire bytes of the indicator status", () => {
    const wire = wireToken(body, /"A":([0-9][^,}]*)/);
    expect(renderGauges(doc)).toContain(`>${wire}<`);
  });

  test("report card shows exactly the wire bytes of the final value", () => {
    const wire = wireToken(body, /"final":\{"value":([0-9][^,}]*)/);
    const html = renderReportCard(doc);
    expect(html).toContain(`>${wire}<`);
    expect(html).toContain(`>${doc.final!.term}<`);
  });
});

describe("clamped numeric entry", () => {
  const body = raw("post_clamped.json");
  const doc = JSON.parse(body) as PostResultDoc;

  test("an integral wire float (20.0) is rendered with its trailing .0", () => {
    const wire = wireToken(body, /"B":([0-9][^,}]*)/);
    expect(wire).toBe("20.0");
    expect(renderGauges(doc)).toContain(`>${wire}<`);
  });

  test("the clamp flag arrives with the document", () => {
    expect(doc.clamped).toBe(true);
    expect(doc.applied_value).toBe(20);
  });
});

describe("simulated 150-day school year", () => {
  const body = raw("timeline_150.json");
  const doc = JSON.parse(body) as TimelineDoc;

  test("the timeline chart renders all 150 days", () => {
    expect(doc.days).toHaveLength(150);
    const html = renderTimeline(doc.days);
    expect(html.match(/class="pt"/g)).toHaveLength(150);
    expect(html).toContain('data-day="150"');
  });

  test("no day is invented or dropped", () => {
    const rendered = renderTimeline(doc.days);
    const days = [...rendered.matchAll(/data-day="(\d+)"/g)].map((m) => Number(m[1]));
    expect(days).toEqual(doc.days.map((d) => d.day));
  });
});
