export { column, CsvError, parseTable, SWEEP_HEADER, TRAJECTORY_HEADER } from "./csv.js";
export type { Table, TableKind } from "./csv.js";
export { FIGURE_KINDS, FIGURES } from "./figures.js";
export type { FigureSpec, Role } from "./figures.js";
export { renderFigure } from "./render.js";
export type { NamedCsv } from "./render.js";
export { renderScene } from "./svg.js";
export type { Scene, Series } from "./svg.js";
