import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { main } from "../src/cli";

const FIXTURE = path.join(__dirname, "..", "testdata", "fig2_tau_vs_deff.csv");

function tmpFile(name: string): string {
    return path.join(fs.mkdtempSync(path.join(os.tmpdir(), "plots-")), name);
}

describe("plot command", () => {
    it("renders the criterion-4 CSV and reruns byte-identically", () => {
        const out1 = tmpFile("fig2-a.svg");
        const out2 = tmpFile("fig2-b.svg");
        expect(main(["plot", "metric-vs-deff", "--in", FIXTURE, "--out", out1])).toBe(0);
        expect(main(["plot", "metric-vs-deff", "--in", FIXTURE, "--out", out2])).toBe(0);
        const a = fs.readFileSync(out1);
        const b = fs.readFileSync(out2);
        expect(a.equals(b)).toBe(true);
        expect(a.toString()).toContain("<svg");
    });

    it("renders the tails figure from the same CSV", () => {
        const out = tmpFile("tails.svg");
        expect(main(["plot", "tails", "--in", FIXTURE, "--out", out])).toBe(0);
        expect(fs.existsSync(out)).toBe(true);
    });

    it("slice comparison wants two inputs", () => {
        const out = tmpFile("cmp.svg");
        expect(main(["plot", "slice-comparison", "--in", FIXTURE, "--out", out])).toBe(1);
    });

    it("rejects unknown figures", () => {
        expect(main(["plot", "spiral", "--in", FIXTURE, "--out", tmpFile("x.svg")])).toBe(1);
    });

    it("rejects missing flags", () => {
        expect(main(["plot", "tails"])).toBe(2);
    });

    it("reports missing input files", () => {
        expect(main(["plot", "tails", "--in", "/no/such.csv", "--out", tmpFile("x.svg")])).toBe(1);
    });
});
