/**
 * State of the evaluation entry form.
 *
 * The teacher picks an indicator, a value (one of the four term buttons OR
 * the fine-grained slider, never both), a date inside the modeled months,
 * and may attach a note. Terms are posted as labels; the service maps them
 * to grades, so this module never touches grade arithmetic.
 */
import { DAYS_PER_MONTH, Indicator, Month, MONTHS, Term } from "./config.js";
import { EvaluationPayload } from "./api.js";

export interface FormState {
  indicator: Indicator | null;
  term: Term | null;
  sliderValue: number | null;
  month: Month;
  dayOfMonth: number;
  note: string;
}

export function initialForm(): FormState {
  return {
    indicator: null,
    term: null,
    sliderValue: null,
    month: MONTHS[0],
    dayOfMonth: 1,
    note: "",
  };
}

export function chooseIndicator(state: FormState, indicator: Indicator): FormState {
  return { ...state, indicator };
}

/** Picking a term clears the slider: one value source per submission. */
export function chooseTerm(state: FormState, term: Term): FormState {
  return { ...state, term, sliderValue: null };
}

/** Moving the slider clears the term buttons. */
export function chooseSlider(state: FormState, value: number): FormState {
  return { ...state, sliderValue: value, term: null };
}

export function chooseDate(state: FormState, month: Month, dayOfMonth: number): FormState {
  if (!MONTHS.includes(month)) {
    throw new Error(`month must be one of ${MONTHS.join(", ")}`);
  }
  if (!Number.isInteger(dayOfMonth) || dayOfMonth < 1 || dayOfMonth > DAYS_PER_MONTH) {
    throw new Error(`day of month must be 1..${DAYS_PER_MONTH}`);
  }
  return { ...state, month, dayOfMonth };
}

export function setNote(state: FormState, note: string): FormState {
  return { ...state, note };
}

/** Submit stays disabled until both an indicator and a value are chosen. */
export function canSubmit(state: FormState): boolean {
  return state.indicator !== null && (state.term !== null || state.sliderValue !== null);
}

export function buildPayload(state: FormState): EvaluationPayload {
  if (!canSubmit(state) || state.indicator === null) {
    throw new Error("form is incomplete");
  }
  const value = state.term !== null ? state.term : (state.sliderValue as number);
  const payload: EvaluationPayload = {
    indicator: state.indicator,
    value,
    month: state.month,
    day_of_month: state.dayOfMonth,
  };
  if (state.note.trim() !== "") {
    payload.note = state.note.trim();
  }
  return payload;
}
