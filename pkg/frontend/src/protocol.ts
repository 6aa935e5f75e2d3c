/** Wire types for the roguebench JSON-lines service.
 *
 * The service prints one banner object on startup, then answers exactly one
 * response line per request line. Requests are `{"cmd": ...}` objects;
 * failures come back as `{"ok": false, "kind": ..., "error": ...}` and the
 * session stays alive.
 */

export interface HelloBanner {
  ok: true;
  protocol: number;
  version: string;
  rng: string;
  width: number;
  height: number;
  max_steps: number;
  action_keys: string;
  symbols: string[];
}

export type WantField = "chars" | "status" | "channels";

export interface Status {
  depth: number;
  gold_collected: number;
  step_count: number;
  player_cell: string;
  hp?: number;
}

export interface ObsPayload {
  /** ASCII rows, one string per map row. */
  chars?: string[];
  status?: Status;
  /** One-hot uint8 planes, indexed [symbol][row][column]. */
  channels?: number[][][];
}

export interface StepInfo {
  depth: number;
  step_count: number;
  gold_collected: number;
  action_taken: string;
  hp?: number;
}

export interface ResetResponse {
  ok: true;
  seed: number;
  reset_index: number;
  obs: ObsPayload;
}

export interface StepResponse {
  ok: true;
  t: number;
  reward: number;
  done: boolean;
  info: StepInfo;
  obs: ObsPayload;
}

export interface RenderResponse {
  ok: true;
  obs: ObsPayload;
}

export interface ByeResponse {
  ok: true;
  bye: true;
}

export interface ErrorResponse {
  ok: false;
  kind: string;
  error: string;
}

export type ServiceResponse =
  | ResetResponse
  | StepResponse
  | RenderResponse
  | ByeResponse
  | ErrorResponse;

/** An error response surfaced as a throwable, keeping the service's kind. */
export class ServiceError extends Error {
  readonly kind: string;

  constructor(kind: string, message: string) {
    super(message);
    this.name = "ServiceError";
    this.kind = kind;
  }
}
