import * as fs from "fs";
import Papa from "papaparse";

export type Row = Record<string, string>;

export interface Table {
    columns: string[];
    rows: Row[];
}

/** Parse a harness result CSV (RFC 4180, quoted target names included). */
export function parseCsv(text: string): Table {
    const parsed = Papa.parse<Row>(text.trim(), {
        header: true,
        skipEmptyLines: true,
        delimiter: ",",
    });
    if (parsed.errors.length > 0) {
        const first = parsed.errors[0];
        throw new Error(`CSV parse error at row ${first.row}: ${first.message}`);
    }
    const columns = parsed.meta.fields ?? [];
    return { columns, rows: parsed.data };
}

export function loadCsv(path: string): Table {
    if (!fs.existsSync(path)) {
        throw new Error(`input CSV not found: ${path}`);
    }
    return parseCsv(fs.readFileSync(path, "utf-8"));
}

/** Fail loudly, naming every column a figure needs but the CSV lacks. */
export function requireColumns(table: Table, needed: string[]): void {
    const missing = needed.filter(c => !table.columns.includes(c));
    if (missing.length > 0) {
        throw new Error(`missing required column(s): ${missing.join(", ")}`);
    }
}

export function num(row: Row, column: string): number {
    const raw = row[column];
    const value = Number(raw);
    if (raw === undefined || raw === "" || Number.isNaN(value)) {
        return NaN;
    }
    return value;
}
