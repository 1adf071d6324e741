// The canonical figure bundles.  Each kind fixes how many CSVs it takes,
// which table shape they must have, and the role of each file in order.
import type { TableKind } from "./csv.js";

export interface Role {
  label: string;
  color: string;
  dash?: string;
}

export interface FigureSpec {
  table: TableKind;
  title: string;
  xColumn: string;
  yColumn: string;
  xLabel: string;
  yLabel: string;
  roles: Role[];
  rule?: number;
}

const BLUE = "#1f77b4";
const ORANGE = "#ff7f0e";
const GREEN = "#2ca02c";
const RED = "#d62728";
const GRAY = "#7f7f7f";

export const FIGURES: Record<string, FigureSpec> = {
  fig1a: {
    table: "trajectory",
    title: "Steering by repeated dephasing: heating, cooling, freezing",
    xColumn: "t_ms",
    yColumn: "pol_ratio",
    xLabel: "t [ms]",
    yLabel: "polarization gain",
    roles: [
      { label: "free evolution", color: GRAY, dash: "4,3" },
      { label: "heating, tau = 0.2 ms", color: RED },
      { label: "cooling, tau = 1 ms", color: BLUE },
      { label: "frozen after 8 steps", color: GREEN },
    ],
  },
  fig1b: {
    table: "sweep",
    title: "Final gain vs measurement interval, 20 measurements",
    xColumn: "tau_ms",
    yColumn: "pol_ratio",
    xLabel: "tau [ms]",
    yLabel: "polarization gain at n tau",
    roles: [{ label: "sweep", color: BLUE }],
    rule: 1,
  },
  fig2a: {
    table: "trajectory",
    title: "Measured transfer at 900 Hz detuning",
    xColumn: "t_ms",
    yColumn: "pol_ratio",
    xLabel: "t [ms]",
    yLabel: "transfer fraction",
    roles: [
      { label: "free evolution", color: GRAY, dash: "4,3" },
      { label: "tau = 346 us", color: ORANGE },
      { label: "tau = 692 us", color: BLUE },
      { label: "frozen after 45 steps", color: GREEN },
    ],
  },
  fig2b: {
    table: "trajectory",
    title: "Matched frequencies: full exchange and its freeze",
    xColumn: "t_ms",
    yColumn: "pol_ratio",
    xLabel: "t [ms]",
    yLabel: "transfer fraction",
    roles: [
      { label: "free evolution", color: GRAY, dash: "4,3" },
      { label: "frozen after 8 steps", color: GREEN },
    ],
  },
};

export const FIGURE_KINDS = Object.keys(FIGURES);
