import { column, CsvError, parseTable } from "./csv.js";
import { FIGURE_KINDS, FIGURES } from "./figures.js";
import { renderScene, type Series } from "./svg.js";

export interface NamedCsv {
  name: string;
  text: string;
}

/** Render one figure kind from its CSV bundle, in role order. */
export function renderFigure(kind: string, inputs: NamedCsv[]): string {
  const spec = FIGURES[kind];
  if (spec === undefined) {
    throw new CsvError(
      `unknown figure kind "${kind}" (expected one of ${FIGURE_KINDS.join(", ")})`,
    );
  }
  if (inputs.length !== spec.roles.length) {
    const order = spec.roles.map((r) => r.label).join("; ");
    throw new CsvError(
      `${kind} takes ${spec.roles.length} input CSVs in order (${order}), got ${inputs.length}`,
    );
  }
  const series: Series[] = inputs.map((input, i) => {
    const role = spec.roles[i]!;
    const table = parseTable(input.text, spec.table, input.name);
    return {
      label: role.label,
      color: role.color,
      dash: role.dash,
      x: column(table, spec.xColumn),
      y: column(table, spec.yColumn),
    };
  });
  return renderScene({
    title: spec.title,
    xLabel: spec.xLabel,
    yLabel: spec.yLabel,
    series,
    rule: spec.rule,
  });
}
