/**
 * Rendering of values received from the service.
 *
 * The client performs no arithmetic on grades. `formatNumber` reproduces the
 * service's own JSON float spelling (shortest round-trip digits, integral
 * floats with a trailing `.0`), so what the teacher reads is byte-identical
 * to what the wire carried.
 */

export function formatNumber(value: number): string {
  if (Number.isInteger(value)) {
    return `${value}.0`;
  }
  return String(value);
}

export function formatMaybe(value: number | null | undefined): string {
  return value === null || value === undefined ? "—" : formatNumber(value);
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
