import { execFile } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

/** Small world so scripted episodes stay quick. */
export const FAST_CONFIG = {
  width: 16,
  height: 8,
  max_steps: 30,
  dungeon: { room_num_x: 2, room_num_y: 1 },
};

/** Deterministic 32-bit PRNG so tests sample the same actions every run. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomAction(next: () => number, numActions: number): number {
  return Math.floor(next() * numActions);
}

export function freshTmpDir(prefix: string): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

export interface CliResult {
  code: number;
  stdout: string;
  stderr: string;
}

/** Run a roguebench CLI subcommand and capture its outcome. */
export function runCli(args: string[]): Promise<CliResult> {
  const python = process.env.ROGUEBENCH_PYTHON ?? "python3";
  return new Promise((resolve) => {
    execFile(
      python,
      ["-m", "roguebench", ...args],
      (error, stdout, stderr) => {
        const code =
          error === null
            ? 0
            : typeof error.code === "number"
              ? error.code
              : 1;
        resolve({ code, stdout, stderr });
      },
    );
  });
}
