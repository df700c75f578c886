#!/usr/bin/env node
import * as fs from "fs";
import * as path from "path";

import { loadCsv } from "./csv";
import { plotMetricVsDeff, plotSliceComparison, plotTails } from "./figures";

const USAGE = `usage: plot <figure-name> --in <csv> [--in2 <csv>] --out <file>

figures:
  metric-vs-deff     decay time vs effective dimension, grouped by topology,
                     with 3-sigma error bands (needs d_eff_realized_mean,
                     tau_dec, tau_dec_se)
  tails              tail-shell discrepancy bars (needs f_0_1..f_3_inf)
  slice-comparison   coupled sampler vs slice baseline (--in coupled CSV,
                     --in2 slice CSV)

output is a deterministic SVG image; rerunning on the same inputs gives
identical bytes.`;

interface Args {
    figure: string;
    input: string;
    input2?: string;
    out: string;
}

function parseArgs(argv: string[]): Args {
    const positional: string[] = [];
    const flags: Record<string, string> = {};
    for (let i = 0; i < argv.length; i++) {
        const arg = argv[i];
        if (arg.startsWith("--")) {
            const value = argv[i + 1];
            if (value === undefined) throw new Error(`flag ${arg} needs a value`);
            flags[arg.slice(2)] = value;
            i += 1;
        } else {
            positional.push(arg);
        }
    }
    if (positional[0] === "plot") positional.shift();
    const figure = positional[0];
    if (!figure) throw new Error(USAGE);
    if (!flags["in"]) throw new Error("missing --in <csv>");
    if (!flags["out"]) throw new Error("missing --out <file>");
    return { figure, input: flags["in"], input2: flags["in2"], out: flags["out"] };
}

export function render(args: Args): string {
    switch (args.figure) {
        case "metric-vs-deff":
            return plotMetricVsDeff(loadCsv(args.input));
        case "tails":
            return plotTails(loadCsv(args.input));
        case "slice-comparison": {
            if (!args.input2) {
                throw new Error("slice-comparison needs --in <coupled csv> and --in2 <slice csv>");
            }
            return plotSliceComparison(loadCsv(args.input), loadCsv(args.input2));
        }
        default:
            throw new Error(`unknown figure ${args.figure}\n\n${USAGE}`);
    }
}

export function main(argv: string[]): number {
    let args: Args;
    try {
        args = parseArgs(argv);
    } catch (err) {
        console.error((err as Error).message);
        return 2;
    }
    try {
        const svg = render(args);
        fs.writeFileSync(args.out, svg, "utf-8");
        const ext = path.extname(args.out).toLowerCase();
        if (ext !== ".svg") {
            console.error(`note: output is SVG markup regardless of the ${ext || "missing"} extension`);
        }
        console.log(`wrote ${args.out}`);
        return 0;
    } catch (err) {
        console.error((err as Error).message);
        return 1;
    }
}

if (require.main === module) {
    process.exit(main(process.argv.slice(2)));
}
