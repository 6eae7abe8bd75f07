// Wire types mirroring the session service's JSON exactly.
// The client renders only what it receives; no dialog logic lives here.

export interface Link {
  value: string;
  label: string;
}

export interface Solicitation {
  slot: string;
  prompt: string;
  offered: Link[];
}

export interface OutOfTurn {
  slots: string[];
  hint: string | null;
}

export interface Crumb {
  slot: string;
  value: string;
  label: string;
  source: "user" | "auto";
}

export interface Notification {
  kind: string;
  slot?: string;
  value?: string;
  values?: string[];
  phrase?: string;
  reason?: string;
  fragments?: string[];
}

export interface PendingConfirmation {
  slot: string;
  value: string;
  prompt: string;
}

export interface ResultRecord {
  id: string;
  name: string;
  attrs: Record<string, string>;
}

export interface RenderModel {
  status: "in_progress" | "complete";
  solicitation: Solicitation | null;
  out_of_turn: OutOfTurn;
  breadcrumb: Crumb[];
  notifications: Notification[];
  pending_confirmation: PendingConfirmation | null;
  results: ResultRecord[] | null;
}

export interface HelpSlot {
  slot: string;
  prompt: string;
  values: string[];
}

export interface HelpPayload {
  reserved: string[];
  slots: HelpSlot[];
}

export interface ApplyReport {
  accepted: { phrase: string; slot: string; value: string }[];
  rejected: { phrase: string; reason: string }[];
  ignored: string[];
  motivators: Record<string, unknown>;
  delta: { status: string; solicitation: string | null };
  help: HelpPayload | null;
}

export interface DatasetPair {
  dataset: string;
  spec: string;
}

// Everything the page knows: the last model and report, plus transient input.
export interface UiState {
  model: RenderModel | null;
  lastReport: ApplyReport | null;
  lastHelp: HelpPayload | null;
  pairs: DatasetPair[];
  error: string | null;
}
