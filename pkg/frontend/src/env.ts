import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { createInterface, type Interface } from "node:readline";

import {
  ErrorResponse,
  HelloBanner,
  RenderResponse,
  ResetResponse,
  ServiceError,
  ServiceResponse,
  StepResponse,
  WantField,
} from "./protocol.js";

export interface LaunchOptions {
  /** Environment configuration, forwarded as --config-json. */
  config?: Record<string, unknown>;
  /**
   * Command that starts the service. Defaults to
   * `python3 -m roguebench serve`; the interpreter can also be overridden
   * with the ROGUEBENCH_PYTHON environment variable.
   */
  command?: string[];
  /** Observation fields returned when a call does not specify its own. */
  want?: WantField[];
}

function defaultCommand(): string[] {
  const python = process.env.ROGUEBENCH_PYTHON ?? "python3";
  return [python, "-m", "roguebench", "serve"];
}

interface Pending {
  resolve: (response: ServiceResponse) => void;
  reject: (error: Error) => void;
}

/**
 * Seed-deterministic roguelike environment, driven over a subprocess pipe.
 *
 * One instance owns one service process and one episode stream:
 *
 *   const env = await RogueEnv.launch();
 *   const { obs } = await env.reset(42);
 *   const step = await env.step("l");   // or env.step(4): same action
 *   await env.close();
 */
export class RogueEnv {
  private readonly proc: ChildProcessWithoutNullStreams;
  private readonly lines: Interface;
  private readonly pending: Pending[] = [];
  private readonly wantDefault?: WantField[];
  private stderrTail = "";
  private closed = false;

  /** Startup banner: versions, shapes, and the action table. */
  readonly banner: HelloBanner;

  private constructor(
    proc: ChildProcessWithoutNullStreams,
    lines: Interface,
    banner: HelloBanner,
    wantDefault?: WantField[],
  ) {
    this.proc = proc;
    this.lines = lines;
    this.banner = banner;
    this.wantDefault = wantDefault;

    lines.on("line", (line) => this.onLine(line));
    proc.stderr.on("data", (chunk: Buffer) => {
      this.stderrTail = (this.stderrTail + chunk.toString()).slice(-4000);
    });
    proc.on("close", () => this.failPending());
  }

  static launch(options: LaunchOptions = {}): Promise<RogueEnv> {
    const command = [...(options.command ?? defaultCommand())];
    if (options.config !== undefined) {
      command.push("--config-json", JSON.stringify(options.config));
    }
    const [file, ...args] = command;
    if (file === undefined) {
      return Promise.reject(new Error("launch command is empty"));
    }
    const proc = spawn(file, args, { stdio: ["pipe", "pipe", "pipe"] });
    const lines = createInterface({ input: proc.stdout });

    return new Promise((resolve, reject) => {
      let stderr = "";
      let settled = false;
      proc.stderr.on("data", (chunk: Buffer) => {
        stderr += chunk.toString();
      });
      proc.on("error", (error) => {
        if (!settled) {
          settled = true;
          reject(new Error(`failed to start service: ${error.message}`));
        }
      });
      proc.on("close", (code) => {
        if (!settled) {
          settled = true;
          reject(
            new Error(
              `service exited with code ${code} before its banner: ${stderr.trim()}`,
            ),
          );
        }
      });
      lines.once("line", (line) => {
        if (settled) return;
        settled = true;
        let banner: HelloBanner;
        try {
          banner = JSON.parse(line) as HelloBanner;
        } catch {
          reject(new Error(`service banner is not JSON: ${line}`));
          return;
        }
        if (!banner.ok) {
          reject(new Error(`service refused to start: ${line}`));
          return;
        }
        resolve(new RogueEnv(proc, lines, banner, options.want));
      });
    });
  }

  get protocol(): number {
    return this.banner.protocol;
  }

  get width(): number {
    return this.banner.width;
  }

  get height(): number {
    return this.banner.height;
  }

  get maxSteps(): number {
    return this.banner.max_steps;
  }

  /** Action keys in index order; its length is the action-space size. */
  get actionKeys(): string {
    return this.banner.action_keys;
  }

  get numActions(): number {
    return this.banner.action_keys.length;
  }

  get symbols(): string[] {
    return this.banner.symbols;
  }

  /** RNG stream format tag, recorded into replay logs. */
  get rng(): string {
    return this.banner.rng;
  }

  private onLine(line: string): void {
    const waiter = this.pending.shift();
    if (waiter === undefined) {
      return; // unsolicited output; nothing to pair it with
    }
    let response: ServiceResponse;
    try {
      response = JSON.parse(line) as ServiceResponse;
    } catch {
      waiter.reject(new Error(`service sent a non-JSON line: ${line}`));
      return;
    }
    if (response.ok === false) {
      const failure = response as ErrorResponse;
      waiter.reject(new ServiceError(failure.kind, failure.error));
      return;
    }
    waiter.resolve(response);
  }

  private failPending(): void {
    const reason = new Error(
      `service terminated unexpectedly: ${this.stderrTail.trim() || "no stderr"}`,
    );
    while (this.pending.length > 0) {
      this.pending.shift()?.reject(reason);
    }
  }

  private request(body: Record<string, unknown>): Promise<ServiceResponse> {
    if (this.closed) {
      return Promise.reject(new Error("the service session is closed"));
    }
    return new Promise((resolve, reject) => {
      this.pending.push({ resolve, reject });
      this.proc.stdin.write(JSON.stringify(body) + "\n");
    });
  }

  private withWant(
    body: Record<string, unknown>,
    want?: WantField[],
  ): Record<string, unknown> {
    const fields = want ?? this.wantDefault;
    return fields === undefined ? body : { ...body, want: fields };
  }

  /** Start an episode. Same seed, same world — always. */
  async reset(seed?: number, want?: WantField[]): Promise<ResetResponse> {
    const body = this.withWant({ cmd: "reset" }, want);
    if (seed !== undefined) {
      body.seed = seed;
    }
    return (await this.request(body)) as ResetResponse;
  }

  /** Advance one turn; `action` is an index (0..10) or its key character. */
  async step(
    action: number | string,
    want?: WantField[],
  ): Promise<StepResponse> {
    const body = this.withWant({ cmd: "step", action }, want);
    return (await this.request(body)) as StepResponse;
  }

  /** Re-observe the current state without consuming a turn. */
  async render(want?: WantField[]): Promise<RenderResponse> {
    return (await this.request(this.withWant({ cmd: "render" }, want))) as RenderResponse;
  }

  /** End the session and wait for the process to exit. */
  async close(): Promise<void> {
    if (this.closed) {
      return;
    }
    this.closed = true;
    const exited = new Promise<void>((resolve) => {
      this.proc.once("close", () => resolve());
    });
    try {
      this.pending.push({
        resolve: () => undefined,
        reject: () => undefined,
      });
      this.proc.stdin.write(JSON.stringify({ cmd: "close" }) + "\n");
      this.proc.stdin.end();
    } catch {
      this.proc.kill();
    }
    await exited;
  }

  /** Kill the process without the goodbye handshake. */
  dispose(): void {
    this.closed = true;
    this.proc.kill();
  }
}

export { ServiceError } from "./protocol.js";
