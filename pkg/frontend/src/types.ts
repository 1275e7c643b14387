/** Wire types for the engine's newline-delimited JSON session protocol. */

export type ZoneKind =
  | "pill"
  | "x_title"
  | "y_title"
  | "x_scale"
  | "y_scale"
  | "legend_title"
  | "legend_item"
  | "mark"
  | "canvas"
  | "modifier"
  | "panel";

export interface Zone {
  kind: ZoneKind;
  name: string | null;
  index: number | null;
}

export type Device = "touch" | "pen" | "pen_eraser";

export interface PointerEventMsg {
  contact: number;
  device: Device;
  phase: "down" | "move" | "up";
  x: number;
  y: number;
  zone: Zone;
  t: number;
  data: number | number[] | null;
}

export interface ClientPointerMsg {
  type: "pointer";
  t: number;
  event: PointerEventMsg;
}

export interface ClientTranscriptMsg {
  type: "transcript";
  t: number;
  text: string;
  alternatives?: string[];
}

export interface ClientWriteMsg {
  type: "write";
  t: number;
  texts: string[];
}

export interface ClientStateRequestMsg {
  type: "state_request";
  t: number;
}

export type ClientMsg =
  | ClientPointerMsg
  | ClientTranscriptMsg
  | ClientWriteMsg
  | ClientStateRequestMsg;

export interface MarkModel {
  id: string;
  rows: number[];
  channels: Record<string, any>;
  selected: boolean;
}

export interface AxisModel {
  id: string;
  attribute: string | null;
  kind: string;
  domain: (number | string)[];
  descending: boolean;
}

export type ChartType =
  | "bar"
  | "grouped_bar"
  | "stacked_bar"
  | "histogram"
  | "line"
  | "scatter"
  | "parallel_coordinates";

export interface ViewModel {
  chart_type: ChartType | null;
  marks: MarkModel[];
  axes: AxisModel[];
  legend: (string | number)[];
  legend_attribute: string | null;
  visible_count: number;
}

export interface Snapshot {
  spec: {
    x: string | null;
    y: string[];
    color: string | null;
    sort: { by: string; direction: string; axis: string } | null;
    filters: Record<string, any>[];
    [k: string]: any;
  };
  selection: { ids: number[]; provenance: string[] };
  viewport: Record<string, number[]>;
  revision: number;
  view: ViewModel;
  dataset_hash: string;
}

export interface FeedbackMsg {
  type: "feedback";
  message: { kind: "success" | "void" | "error"; text: string; code: string };
  request: {
    kind: string;
    target: Record<string, any>;
    params: Record<string, any>;
    provenance: string[];
    pattern: string | null;
  };
}

export interface SnapshotMsg {
  type: "snapshot";
  state: Snapshot;
}

export interface AffordancesMsg {
  type: "affordances";
  hints: {
    highlighted_pills: string[];
    disabled_pills: [string, string][];
    ink_pad_visible: boolean;
    microphone_active: boolean;
  };
}

export interface SuggestionsMsg {
  type: "suggestions";
  attributes: [string, number][];
}

export interface DetailMsg {
  type: "detail";
  payload: Record<string, any>;
}

export interface ErrorMsg {
  type: "error";
  code: string;
  text: string;
}

export type ServerMsg =
  | FeedbackMsg
  | SnapshotMsg
  | AffordancesMsg
  | SuggestionsMsg
  | DetailMsg
  | ErrorMsg;
