/** Translate platform pointer events into protocol pointer messages.
 * The driver is stateless beyond a contact-id map; all semantics live in
 * the engine. */

import { hitTest } from "./hittest";
import { Scene } from "./scene";
import { ClientPointerMsg, Device } from "./types";

export interface RawPointerEvent {
  type: "pointerdown" | "pointermove" | "pointerup";
  pointerId: number;
  pointerType: "touch" | "pen" | "mouse";
  x: number;
  y: number;
  /** hardware eraser flag (buttons bit 5) or the barrel eraser toggle */
  eraser?: boolean;
  timeStamp: number;
}

const PHASES = {
  pointerdown: "down",
  pointermove: "move",
  pointerup: "up",
} as const;

export class PointerDriver {
  private contacts = new Map<number, number>();
  private nextContact = 1;
  private eraserToggle = false;

  /** barrel-button fallback for pens without a hardware eraser */
  setEraserToggle(on: boolean): void {
    this.eraserToggle = on;
  }

  private device(ev: RawPointerEvent): Device {
    if (ev.pointerType === "pen") {
      return ev.eraser || this.eraserToggle ? "pen_eraser" : "pen";
    }
    return "touch"; // mouse behaves as touch for desktop debugging
  }

  private contactId(ev: RawPointerEvent): number {
    if (ev.type === "pointerdown" || !this.contacts.has(ev.pointerId)) {
      this.contacts.set(ev.pointerId, this.nextContact++);
    }
    const id = this.contacts.get(ev.pointerId)!;
    if (ev.type === "pointerup") this.contacts.delete(ev.pointerId);
    return id;
  }

  /** Map one raw event against the current scene. Returns the protocol
   * message to send, or null for events between contacts. */
  translate(ev: RawPointerEvent, scene: Scene): ClientPointerMsg | null {
    if (ev.type === "pointermove" && !this.contacts.has(ev.pointerId)) {
      return null; // hover without contact carries no protocol meaning
    }
    const hit = hitTest(scene, ev.x, ev.y);
    return {
      type: "pointer",
      t: ev.timeStamp,
      event: {
        contact: this.contactId(ev),
        device: this.device(ev),
        phase: PHASES[ev.type],
        x: ev.x,
        y: ev.y,
        zone: hit.zone,
        t: ev.timeStamp,
        data: hit.data,
      },
    };
  }
}
