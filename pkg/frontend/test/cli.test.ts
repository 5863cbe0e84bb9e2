import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const CLI = fileURLToPath(new URL("../dist/cli.js", import.meta.url));

function fixturePath(name: string): string {
  return fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));
}

function run(...args: string[]) {
  return spawnSync(process.execPath, [CLI, ...args], { encoding: "utf-8" });
}

function tempOut(name: string): string {
  return join(mkdtempSync(join(tmpdir(), "rdplots-")), name);
}

describe("render command", () => {
  it("writes a regret figure and reports the path", () => {
    const out = tempOut("regret.svg");
    const result = run(
      "render", "--kind", "regret", "--in", fixturePath("regret_two_agents.csv"), "--out", out,
    );
    expect(result.status).toBe(0);
    expect(result.stdout).toBe(`wrote ${out}\n`);
    expect(readFileSync(out, "utf-8")).toBe(
      readFileSync(fixturePath("golden/regret_two_agents.svg"), "utf-8"),
    );
  });

  it("produces byte-identical output across invocations", () => {
    const first = tempOut("a.svg");
    const second = tempOut("b.svg");
    const csv = fixturePath("rd_compare.csv");
    expect(run("render", "--kind", "rd", "--in", csv, "--out", first).status).toBe(0);
    expect(run("render", "--kind", "rd", "--in", csv, "--out", second).status).toBe(0);
    expect(readFileSync(first)).toEqual(readFileSync(second));
  });

  it("never modifies the input CSV", () => {
    const csv = fixturePath("regret_two_agents.csv");
    const before = readFileSync(csv);
    run("render", "--kind", "regret", "--in", csv, "--out", tempOut("c.svg"));
    expect(readFileSync(csv)).toEqual(before);
  });

  it("warns but succeeds on a header-only input", () => {
    const out = tempOut("empty.svg");
    const result = run(
      "render", "--kind", "regret", "--in", fixturePath("regret_header_only.csv"), "--out", out,
    );
    expect(result.status).toBe(0);
    expect(result.stderr).toContain("no data rows");
    expect(readFileSync(out, "utf-8")).toContain("</svg>");
  });

  it("fails with the missing column named", () => {
    const result = run(
      "render",
      "--kind", "regret",
      "--in", fixturePath("regret_missing_column.csv"),
      "--out", tempOut("d.svg"),
    );
    expect(result.status).toBe(2);
    expect(result.stderr).toContain("missing column 'cum_regret'");
  });

  it("refuses png output with a clear message", () => {
    const result = run(
      "render", "--kind", "rd", "--in", fixturePath("rd_compare.csv"), "--out", tempOut("x.png"),
    );
    expect(result.status).toBe(2);
    expect(result.stderr).toContain("png output is not supported");
  });

  it("rejects unknown kinds and missing flags", () => {
    expect(run("render", "--kind", "pie").status).toBe(2);
    expect(run().status).toBe(2);
  });

  it("fails cleanly when the input file does not exist", () => {
    const result = run(
      "render", "--kind", "rd", "--in", "/nonexistent.csv", "--out", tempOut("e.svg"),
    );
    expect(result.status).toBe(2);
    expect(result.stderr).toContain("error:");
  });
});
