export { RogueEnv, type LaunchOptions } from "./env.js";
export { TrajectoryRecorder } from "./replay.js";
export {
  ServiceError,
  type ErrorResponse,
  type HelloBanner,
  type ObsPayload,
  type RenderResponse,
  type ResetResponse,
  type ServiceResponse,
  type Status,
  type StepInfo,
  type StepResponse,
  type WantField,
} from "./protocol.js";
