import { Row, Table, num, requireColumns } from "./csv";
import {
    HEIGHT,
    MARGIN,
    PALETTE,
    SvgDoc,
    WIDTH,
    bandPath,
    drawAxes,
    drawLegend,
    fmt,
    linearScale,
    polylinePath,
} from "./svg";

const TAIL_COLUMNS = ["f_0_1", "f_1_2", "f_2_3", "f_3_inf"];
const TAIL_LABELS = ["0-1 sigma", "1-2 sigma", "2-3 sigma", ">3 sigma"];

/** What a figure reads from a results table. */
export interface FigureSpec {
    xColumn?: string;
    yColumns: string[];
    bandColumns: string[];
    groupByColumns: string[];
}

export const METRIC_VS_DEFF_SPEC: FigureSpec = {
    xColumn: "d_eff_realized_mean",
    yColumns: ["tau_dec"],
    bandColumns: ["tau_dec_se"],
    groupByColumns: ["kind", "d", "m"],
};

export const TAILS_SPEC: FigureSpec = {
    yColumns: TAIL_COLUMNS,
    bandColumns: [],
    groupByColumns: [],
};

export const SLICE_COMPARISON_SPEC: FigureSpec = {
    yColumns: ["eval_count_mean", "N", "M", "d_mean", "tau_dec"],
    bandColumns: [],
    groupByColumns: [],
};

function requireSpec(table: Table, spec: FigureSpec): void {
    const needed = [
        ...(spec.xColumn ? [spec.xColumn] : []),
        ...spec.yColumns,
        ...spec.bandColumns,
    ];
    requireColumns(table, needed);
}

function topologyKey(row: Row): string {
    const kind = row["kind"] ?? "?";
    if (row["d"] && row["m"]) {
        return `${kind} ${row["d"]}d m=${row["m"]}`;
    }
    return kind;
}

function groupBy(rows: Row[], key: (row: Row) => string): Map<string, Row[]> {
    const out = new Map<string, Row[]>();
    for (const row of rows) {
        const k = key(row);
        const bucket = out.get(k);
        if (bucket) bucket.push(row);
        else out.set(k, [row]);
    }
    return out;
}

function extent(values: number[], padFraction = 0.08): [number, number] {
    const finite = values.filter(Number.isFinite);
    if (finite.length === 0) return [0, 1];
    let lo = Math.min(...finite);
    let hi = Math.max(...finite);
    if (lo === hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const pad = (hi - lo) * padFraction;
    return [lo - pad, hi + pad];
}

/**
 * Decay time against realized effective dimension, one series per grid
 * topology, with 3-sigma standard-error bands.
 */
export function plotMetricVsDeff(table: Table): string {
    requireSpec(table, METRIC_VS_DEFF_SPEC);
    const groups = groupBy(table.rows, topologyKey);
    const xsAll: number[] = [];
    const ysAll: number[] = [];
    for (const row of table.rows) {
        const se = Number.isFinite(num(row, "tau_dec_se")) ? num(row, "tau_dec_se") : 0;
        xsAll.push(num(row, "d_eff_realized_mean"));
        ysAll.push(num(row, "tau_dec") - 3 * se, num(row, "tau_dec") + 3 * se);
    }
    const xs = linearScale(extent(xsAll), [MARGIN.left, WIDTH - MARGIN.right]);
    const ys = linearScale(extent(ysAll), [HEIGHT - MARGIN.bottom, MARGIN.top]);

    const doc = new SvgDoc();
    drawAxes(doc, xs, ys, {
        x: "effective dimension (realized)",
        y: "decay time tau_dec",
        title: "Mixing rate vs effective dimension",
    });
    const legend: Array<{ label: string; color: string }> = [];
    let colorIndex = 0;
    for (const [label, rows] of groups) {
        const color = PALETTE[colorIndex % PALETTE.length];
        colorIndex += 1;
        legend.push({ label, color });
        const sorted = [...rows].sort(
            (a, b) => num(a, "d_eff_realized_mean") - num(b, "d_eff_realized_mean"),
        );
        const pts: Array<[number, number]> = [];
        const upper: Array<[number, number]> = [];
        const lower: Array<[number, number]> = [];
        for (const row of sorted) {
            const x = xs(num(row, "d_eff_realized_mean"));
            const tau = num(row, "tau_dec");
            const se = Number.isFinite(num(row, "tau_dec_se")) ? num(row, "tau_dec_se") : 0;
            pts.push([x, ys(tau)]);
            upper.push([x, ys(tau + 3 * se)]);
            lower.push([x, ys(tau - 3 * se)]);
        }
        if (pts.length > 1) {
            doc.add(`<path d="${bandPath(upper, lower)}" fill="${color}" fill-opacity="0.18" stroke="none"/>`);
            doc.add(`<path d="${polylinePath(pts)}" fill="none" stroke="${color}" stroke-width="2"/>`);
        } else if (pts.length === 1) {
            // single point still gets its band, drawn as a vertical bar
            doc.add(`<line x1="${fmt(upper[0][0])}" y1="${fmt(upper[0][1])}" ` +
                `x2="${fmt(lower[0][0])}" y2="${fmt(lower[0][1])}" stroke="${color}" stroke-width="6" stroke-opacity="0.3"/>`);
        }
        for (const [px, py] of pts) {
            doc.add(`<circle cx="${fmt(px)}" cy="${fmt(py)}" r="3.5" fill="${color}"/>`);
        }
    }
    drawLegend(doc, legend);
    return doc.render();
}

/** Signed tail-shell discrepancies as grouped bars, one cluster per row. */
export function plotTails(table: Table): string {
    requireSpec(table, TAILS_SPEC);
    const rows = table.rows;
    const values = rows.flatMap(r => TAIL_COLUMNS.map(c => num(r, c)));
    const [lo, hi] = extent([...values, 0], 0.15);
    const ys = linearScale([lo, hi], [HEIGHT - MARGIN.bottom, MARGIN.top]);
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const clusterWidth = (x1 - x0) / Math.max(1, rows.length);
    const barWidth = (clusterWidth * 0.8) / TAIL_COLUMNS.length;

    const doc = new SvgDoc();
    const xsDummy = linearScale([0, Math.max(1, rows.length)], [x0, x1]);
    drawAxes(doc, xsDummy, ys, {
        x: "sweep point",
        y: "f_region = (inferred - true) / total",
        title: "Tail-shell statistics",
    });
    doc.add(`<line x1="${fmt(x0)}" y1="${fmt(ys(0))}" x2="${fmt(x1)}" y2="${fmt(ys(0))}" ` +
        `stroke="black" stroke-width="1" stroke-dasharray="4 3"/>`);
    rows.forEach((row, i) => {
        const base = x0 + i * clusterWidth + clusterWidth * 0.1;
        TAIL_COLUMNS.forEach((col, j) => {
            const v = num(row, col);
            const top = Math.min(ys(0), ys(v));
            const h = Math.abs(ys(v) - ys(0));
            doc.add(`<rect x="${fmt(base + j * barWidth)}" y="${fmt(top)}" ` +
                `width="${fmt(barWidth * 0.92)}" height="${fmt(h)}" fill="${PALETTE[j]}"/>`);
        });
        const label = row["d_eff_config"] !== undefined ? `d_eff=${row["d_eff_config"]}` : `#${i}`;
        doc.text(base + clusterWidth * 0.4, HEIGHT - MARGIN.bottom + 32, label,
            'text-anchor="middle" font-size="10"');
    });
    drawLegend(doc, TAIL_LABELS.map((label, j) => ({ label, color: PALETTE[j] })));
    return doc.render();
}

/**
 * Slice baseline against the coupled sampler: target queries per recorded
 * coordinate plus accuracy and mixing columns, side by side.
 */
export function plotSliceComparison(coupled: Table, slice: Table): string {
    requireSpec(coupled, SLICE_COMPARISON_SPEC);
    requireSpec(slice, SLICE_COMPARISON_SPEC);
    if (coupled.rows.length === 0 || slice.rows.length === 0) {
        throw new Error("slice comparison needs at least one row in each CSV");
    }
    const a = coupled.rows[0];
    const b = slice.rows[0];
    const coords = (row: Row) => {
        const dims = row["target"]?.includes("banana") ? 2 : guessDim(row);
        return num(row, "N") * num(row, "M") * dims;
    };
    const metrics = [
        { label: "queries / coordinate", a: num(a, "eval_count_mean") / coords(a), b: num(b, "eval_count_mean") / coords(b) },
        { label: "d_mean", a: num(a, "d_mean"), b: num(b, "d_mean") },
        { label: "tau_dec", a: num(a, "tau_dec"), b: num(b, "tau_dec") },
    ];

    const doc = new SvgDoc();
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const panel = (x1 - x0) / metrics.length;
    doc.text((x0 + x1) / 2, 22, "Coupled sampler vs slice-within-Gibbs",
        'text-anchor="middle" font-size="15" font-weight="bold"');
    metrics.forEach((metric, i) => {
        const hiVal = Math.max(metric.a, metric.b, 1e-12);
        const ys = linearScale([0, hiVal * 1.15], [y0, MARGIN.top + 30]);
        const base = x0 + i * panel;
        const w = panel * 0.28;
        const bars: Array<{ v: number; color: string; label: string }> = [
            { v: metric.a, color: PALETTE[0], label: "coupled" },
            { v: metric.b, color: PALETTE[1], label: "slice" },
        ];
        bars.forEach((bar, j) => {
            const bx = base + panel * 0.15 + j * (w + 8);
            doc.add(`<rect x="${fmt(bx)}" y="${fmt(ys(bar.v))}" width="${fmt(w)}" ` +
                `height="${fmt(y0 - ys(bar.v))}" fill="${bar.color}"/>`);
            doc.text(bx + w / 2, ys(bar.v) - 5, Number(bar.v.toPrecision(3)).toString(),
                'text-anchor="middle" font-size="10"');
        });
        doc.text(base + panel / 2, y0 + 20, metric.label, 'text-anchor="middle"');
    });
    doc.add(`<path d="M${fmt(x0)},${fmt(y0)} L${fmt(x1)},${fmt(y0)}" stroke="black" fill="none"/>`);
    const ratio = metrics[0].b / metrics[0].a;
    doc.text((x0 + x1) / 2, y0 + 42,
        `slice makes ${Number(ratio.toPrecision(3))}x the target queries per recorded sample`,
        'text-anchor="middle" font-size="12"');
    drawLegend(doc, [
        { label: "coupled", color: PALETTE[0] },
        { label: "slice", color: PALETTE[1] },
    ]);
    return doc.render();
}

function guessDim(row: Row): number {
    // target specs carry the dimension as their first argument, except the
    // fixed 2-D banana and landscape(seed,K,stdmu,stdsig,D)
    const target = row["target"] ?? "";
    const match = target.match(/^(\w+)\(([^)]*)\)/);
    if (!match) return 2;
    const args = match[2].split(",").map(s => Number(s.trim()));
    if (match[1] === "landscape") return args[4] ?? 2;
    return Number.isFinite(args[0]) ? args[0] : 2;
}
