/**
 * Minimal deterministic SVG building blocks.
 *
 * Everything renders through fixed-precision number formatting and carries
 * no timestamps or randomness, so identical inputs give identical bytes.
 */

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { top: 40, right: 170, bottom: 56, left: 72 };

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function fmt(x: number): string {
    if (!Number.isFinite(x)) return "0";
    const s = x.toFixed(2);
    return s === "-0.00" ? "0.00" : s;
}

export interface Scale {
    (value: number): number;
    domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const span = d1 - d0 || 1;
    const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
    scale.domain = domain;
    return scale;
}

/** Round tick positions covering the domain, at most `count` of them. */
export function ticks(domain: [number, number], count = 6): number[] {
    const [lo, hi] = domain;
    const span = hi - lo || 1;
    const step0 = span / Math.max(1, count);
    const mag = Math.pow(10, Math.floor(Math.log10(step0)));
    const candidates = [1, 2, 2.5, 5, 10].map(m => m * mag);
    const step = candidates.find(s => span / s <= count) ?? candidates[candidates.length - 1];
    const start = Math.ceil(lo / step) * step;
    const out: number[] = [];
    for (let v = start; v <= hi + 1e-9; v += step) {
        out.push(Math.abs(v) < step * 1e-6 ? 0 : v);
    }
    return out;
}

export function tickLabel(v: number): string {
    if (v === 0) return "0";
    const abs = Math.abs(v);
    if (abs >= 1000 || abs < 0.01) return v.toExponential(1);
    return String(Number(v.toPrecision(4)));
}

export function escapeXml(s: string): string {
    return s
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

export function polylinePath(points: Array<[number, number]>): string {
    return points
        .map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(x)},${fmt(y)}`)
        .join(" ");
}

/** Closed band: upper edge left to right, lower edge back. */
export function bandPath(
    upper: Array<[number, number]>,
    lower: Array<[number, number]>,
): string {
    const fwd = polylinePath(upper);
    const back = [...lower]
        .reverse()
        .map(([x, y]) => `L${fmt(x)},${fmt(y)}`)
        .join(" ");
    return `${fwd} ${back} Z`;
}

export class SvgDoc {
    private parts: string[] = [];

    constructor(readonly width = WIDTH, readonly height = HEIGHT) {
        this.parts.push(
            `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
            `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
            `<rect width="${width}" height="${height}" fill="white"/>`,
        );
    }

    add(fragment: string): void {
        this.parts.push(fragment);
    }

    text(x: number, y: number, content: string, attrs = ""): void {
        this.add(`<text x="${fmt(x)}" y="${fmt(y)}" font-size="12" ${attrs}>` +
            `${escapeXml(content)}</text>`);
    }

    render(): string {
        return this.parts.join("\n") + "\n</svg>\n";
    }
}

export interface AxisLabels {
    x: string;
    y: string;
    title: string;
}

/** Axes, tick marks, grid lines and labels for one cartesian panel. */
export function drawAxes(doc: SvgDoc, xs: Scale, ys: Scale, labels: AxisLabels): void {
    const x0 = MARGIN.left;
    const x1 = doc.width - MARGIN.right;
    const y0 = doc.height - MARGIN.bottom;
    const y1 = MARGIN.top;
    doc.add(`<path d="M${fmt(x0)},${fmt(y1)} L${fmt(x0)},${fmt(y0)} L${fmt(x1)},${fmt(y0)}" ` +
        `fill="none" stroke="black" stroke-width="1"/>`);
    for (const t of ticks(xs.domain)) {
        const px = xs(t);
        doc.add(`<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y0 + 5)}" stroke="black"/>`);
        doc.add(`<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y1)}" stroke="#dddddd" stroke-width="0.5"/>`);
        doc.text(px, y0 + 18, tickLabel(t), 'text-anchor="middle"');
    }
    for (const t of ticks(ys.domain)) {
        const py = ys(t);
        doc.add(`<line x1="${fmt(x0 - 5)}" y1="${fmt(py)}" x2="${fmt(x0)}" y2="${fmt(py)}" stroke="black"/>`);
        doc.add(`<line x1="${fmt(x0)}" y1="${fmt(py)}" x2="${fmt(x1)}" y2="${fmt(py)}" stroke="#dddddd" stroke-width="0.5"/>`);
        doc.text(x0 - 8, py + 4, tickLabel(t), 'text-anchor="end"');
    }
    doc.text((x0 + x1) / 2, doc.height - 12, labels.x, 'text-anchor="middle" font-size="14"');
    doc.add(`<text x="18" y="${fmt((y0 + y1) / 2)}" font-size="14" text-anchor="middle" ` +
        `transform="rotate(-90 18 ${fmt((y0 + y1) / 2)})">${escapeXml(labels.y)}</text>`);
    doc.text((x0 + x1) / 2, 22, labels.title, 'text-anchor="middle" font-size="15" font-weight="bold"');
}

export function drawLegend(doc: SvgDoc, entries: Array<{ label: string; color: string }>): void {
    const x = doc.width - MARGIN.right + 14;
    let y = MARGIN.top + 8;
    for (const { label, color } of entries) {
        doc.add(`<rect x="${fmt(x)}" y="${fmt(y - 9)}" width="14" height="9" fill="${color}"/>`);
        doc.text(x + 20, y, label);
        y += 18;
    }
}
