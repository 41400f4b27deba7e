/** Minimal CSV reader for pdlab sweep output.
 *
 * The producer never emits quoted fields except possibly in the trailing
 * `error` column; values elsewhere contain no commas, so a split-based
 * parser with a quote fast-path is sufficient and keeps this dependency-free.
 */

export interface CsvTable {
  columns: string[];
  rows: string[][];
}

function splitLine(line: string): string[] {
  if (!line.includes('"')) return line.split(",");
  const cells: string[] = [];
  let cur = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"' && line[i + 1] === '"') {
        cur += '"';
        i++;
      } else if (ch === '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      cells.push(cur);
      cur = "";
    } else {
      cur += ch;
    }
  }
  cells.push(cur);
  return cells;
}

export function parseCsv(text: string): CsvTable {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length === 0) throw new Error("empty CSV");
  const columns = splitLine(lines[0]);
  const rows = lines.slice(1).map(splitLine);
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new Error(
        `ragged CSV row: expected ${columns.length} cells, got ${row.length}`,
      );
    }
  }
  return { columns, rows };
}

export function columnIndex(table: CsvTable, name: string, source: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(
      `column '${name}' not found in ${source} (columns: ${table.columns.join(", ")})`,
    );
  }
  return idx;
}
