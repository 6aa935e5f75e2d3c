import { createHash } from "node:crypto";

/**
 * Builds episode logs in the environment's replay format, verifiable with
 * `roguebench replay <file>`.
 *
 * A log is JSON lines: a header, one record per step, and a trailing
 * checksum over every preceding byte:
 *
 *   {"v":1,"rng":"splitmix64/1","config":{...},"seed":7,"reset_index":0}
 *   {"t":0,"action_key":"l","reward":0,"done":false}
 *   ...
 *   {"checksum":"<sha256 hex>"}
 *
 * The verifier re-executes the episode and checks every reward and done
 * flag, then the checksum, so a log is only accepted if it describes a run
 * the environment actually produces.
 */
export class TrajectoryRecorder {
  private readonly lines: string[];
  private steps = 0;
  private finished = false;

  constructor(
    config: Record<string, unknown>,
    seed: number,
    options: { resetIndex?: number; rng?: string } = {},
  ) {
    const header = {
      v: 1,
      rng: options.rng ?? "splitmix64/1",
      config,
      seed,
      reset_index: options.resetIndex ?? 0,
    };
    this.lines = [JSON.stringify(header)];
  }

  /** Append one step; steps must arrive in order, starting at t = 0. */
  record(t: number, actionKey: string, reward: number, done: boolean): void {
    if (this.finished) {
      throw new Error("trajectory is finished; no more steps can be recorded");
    }
    if (t !== this.steps) {
      throw new Error(`expected step ${this.steps}, got ${t}`);
    }
    this.lines.push(
      JSON.stringify({ t, action_key: actionKey, reward, done }),
    );
    this.steps += 1;
  }

  get stepCount(): number {
    return this.steps;
  }

  /** Seal the log and return its full text, trailing newline included. */
  finish(): string {
    this.finished = true;
    const body = this.lines.join("\n") + "\n";
    const checksum = createHash("sha256")
      .update(Buffer.from(body, "utf8"))
      .digest("hex");
    return body + JSON.stringify({ checksum }) + "\n";
  }
}
