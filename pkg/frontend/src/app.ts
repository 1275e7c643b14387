/** Browser wiring: paints the scene graph, forwards pointer events, and
 * runs push-to-talk against the platform speech recognizer. */

import { SessionClient } from "./client";
import * as L from "./layout";
import { PointerDriver, RawPointerEvent } from "./pointer";
import { Scene, render } from "./scene";
import { PushToTalk, Recognizer, typedTranscript } from "./speech";
import { AffordancesMsg, ServerMsg, Snapshot } from "./types";

const MAX_DRAWN_MARKS = 5000; // beyond this, sample and show a banner

function fillRect(ctx: CanvasRenderingContext2D, r: L.Rect, style: string) {
  ctx.fillStyle = style;
  ctx.fillRect(r.x, r.y, r.w, r.h);
}

export class App {
  private scene: Scene;
  private driver = new PointerDriver();
  private pills: string[] = [];
  private feedback = "";
  private hints: AffordancesMsg["hints"] | null = null;
  private ptt: PushToTalk;
  private t0 = performance.now();

  constructor(
    private ctx: CanvasRenderingContext2D,
    private client: SessionClient,
    recognizer: Recognizer,
  ) {
    this.scene = render(emptySnapshot(), []);
    this.ptt = new PushToTalk(recognizer, (m) => client.send(m), () => this.now());
  }

  private now(): number {
    return performance.now() - this.t0;
  }

  onServerMessage(msg: ServerMsg): void {
    if (msg.type === "snapshot") {
      this.scene = render(msg.state, this.pills);
    } else if (msg.type === "feedback") {
      this.feedback = msg.message.text;
    } else if (msg.type === "affordances") {
      this.hints = msg.hints;
      void this.ptt.onAffordances(msg);
    }
    this.paint();
  }

  setPills(names: string[]): void {
    this.pills = names;
  }

  onPointer(ev: RawPointerEvent): void {
    const msg = this.driver.translate(
      { ...ev, timeStamp: this.now() },
      this.scene,
    );
    if (msg) this.client.send(msg);
  }

  submitTyped(text: string): void {
    this.client.send(typedTranscript(text, this.now()));
  }

  submitInk(candidates: string[]): void {
    this.client.send({ type: "write", t: this.now(), texts: candidates });
  }

  paint(): void {
    const ctx = this.ctx;
    ctx.clearRect(0, 0, L.WIDTH, L.HEIGHT);
    fillRect(ctx, L.PANEL, "#f4f4f4");
    fillRect(ctx, L.MODIFIER, this.ptt.recording ? "#d33" : "#ddd");
    fillRect(ctx, L.COMMAND_ROW, this.ptt.recording ? "#fdd" : "#fff");
    ctx.fillStyle = "#222";
    ctx.font = "14px sans-serif";
    ctx.fillText(this.feedback, L.COMMAND_ROW.x + 12, L.COMMAND_ROW.y + 36);

    this.pills.forEach((name, i) => {
      const r = L.pillRect(i);
      const disabled = this.hints?.disabled_pills.some(([n]) => n === name);
      const hot = this.hints?.highlighted_pills.includes(name);
      fillRect(ctx, r, disabled ? "#eee" : hot ? "#ffd27f" : "#dde6f0");
      ctx.fillStyle = disabled ? "#999" : "#222";
      ctx.fillText(name, r.x + 8, r.y + 23);
    });

    const shapes =
      this.scene.shapes.length > MAX_DRAWN_MARKS
        ? this.scene.shapes.filter(
            (_, i) => i % Math.ceil(this.scene.shapes.length / MAX_DRAWN_MARKS) === 0,
          )
        : this.scene.shapes;
    if (shapes.length < this.scene.shapes.length) {
      ctx.fillStyle = "#a00";
      ctx.fillText("sampled rendering", L.CANVAS.x + 8, L.CANVAS.y + 16);
    }
    for (const s of shapes) {
      ctx.globalAlpha = s.faded ? 0.25 : 1.0;
      ctx.fillStyle = s.selected ? "#e07b39" : "#4878a8";
      ctx.strokeStyle = ctx.fillStyle;
      if (s.kind === "polyline" && s.points) {
        ctx.beginPath();
        s.points.forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
        ctx.stroke();
      } else if (s.kind === "point") {
        ctx.beginPath();
        ctx.arc(s.bounds.x + s.bounds.w / 2, s.bounds.y + s.bounds.h / 2, 4, 0, 7);
        ctx.fill();
      } else {
        ctx.fillRect(s.bounds.x, s.bounds.y, s.bounds.w, s.bounds.h);
      }
    }
    ctx.globalAlpha = 1.0;

    this.scene.legendItems.forEach((name, i) => {
      const r = L.legendItemRect(i);
      fillRect(ctx, r, "#eef2f6");
      ctx.fillStyle = "#222";
      ctx.fillText(name, r.x + 6, r.y + 17);
    });
    this.scene.filterChips.forEach((label, i) => {
      ctx.fillStyle = "#555";
      ctx.fillText(`[${label}]`, L.CHIP_ROW.x + 8 + i * 180, L.CHIP_ROW.y + 24);
    });
  }
}

function emptySnapshot(): Snapshot {
  return {
    spec: { x: null, y: [], color: null, sort: null, filters: [] },
    selection: { ids: [], provenance: [] },
    viewport: {},
    revision: 0,
    view: {
      chart_type: null,
      marks: [],
      axes: [],
      legend: [],
      legend_attribute: null,
      visible_count: 0,
    },
    dataset_hash: "",
  };
}

/** Web Speech API adapter; callers fall back to typed input when the
 * platform offers no recognizer. */
export function platformRecognizer(): Recognizer | null {
  const Ctor =
    (globalThis as any).SpeechRecognition ??
    (globalThis as any).webkitSpeechRecognition;
  if (!Ctor) return null;
  let rec: any = null;
  let pending: string[] = [];
  return {
    start() {
      pending = [];
      rec = new Ctor();
      rec.maxAlternatives = 4;
      rec.onresult = (ev: any) => {
        pending = Array.from(ev.results[0]).map((a: any) => a.transcript);
      };
      rec.start();
    },
    stop() {
      return new Promise<string[]>((resolve) => {
        if (!rec) return resolve([]);
        rec.onend = () => resolve(pending);
        rec.stop();
      });
    },
  };
}
