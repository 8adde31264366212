/**
 * Slider definitions. Every slider bound must be a value the service
 * accepts; the test suite enforces that and the documented defaults.
 */

export interface SliderDef {
  param: string;
  label: string;
  min: number;
  max: number;
  step: number;
  integer: boolean;
  default: number;
}

export const SLIDERS: SliderDef[] = [
  { param: "sigma", label: "horizontal shrink σ", min: 0.9, max: 1.0, step: 0.005, integer: false, default: 0.98 },
  { param: "tau", label: "vertical shrink τ", min: 0.9, max: 1.0, step: 0.005, integer: false, default: 1.0 },
  { param: "gauge", label: "gauge [st/inch]", min: 5, max: 25, step: 1, integer: false, default: 14 },
  { param: "bed", label: "bed distance [mm]", min: 1, max: 6, step: 0.25, integer: false, default: 3.0 },
  { param: "v", label: "course height [mm]", min: 1, max: 5, step: 0.25, integer: false, default: 2.5 },
  { param: "m", label: "horizontal floats m", min: 1, max: 8, step: 1, integer: true, default: 2 },
  { param: "n", label: "vertical floats n (0 = none)", min: 0, max: 8, step: 1, integer: true, default: 0 },
  { param: "shift", label: "wale shift s", min: 0, max: 3, step: 1, integer: true, default: 0 },
  { param: "wales", label: "wales", min: 2, max: 32, step: 1, integer: true, default: 8 },
  { param: "courses", label: "courses", min: 1, max: 32, step: 1, integer: true, default: 6 },
];

/**
 * Mirror of the service's per-parameter validation: returns null when the
 * value is accepted, else the reason it would be rejected with a 422.
 */
export function serviceRejectionReason(param: string, value: number): string | null {
  switch (param) {
    case "sigma":
    case "tau":
      return value > 0 && value <= 1 ? null : "must be in (0, 1]";
    case "gauge":
    case "bed":
    case "v":
      return value > 0 ? null : "must be > 0";
    case "m":
      return Number.isInteger(value) && value >= 1 ? null : "must be an integer >= 1";
    case "n":
      // n = 0 means "no vertical family" in the UI and is simply omitted
      return Number.isInteger(value) && value >= 0 ? null : "must be an integer >= 0";
    case "shift":
      return Number.isInteger(value) && value >= 0 ? null : "must be an integer >= 0";
    case "wales":
      return Number.isInteger(value) && value >= 2 ? null : "must be an integer >= 2";
    case "courses":
      return Number.isInteger(value) && value >= 1 ? null : "must be an integer >= 1";
    default:
      return "unknown parameter";
  }
}
