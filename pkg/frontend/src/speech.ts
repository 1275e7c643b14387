/** Push-to-talk controller. Recording is bracketed strictly by the
 * engine's affordance signal (microphone_active), never by local state:
 * the engine decides when speech is being collected. */

import { AffordancesMsg, ClientTranscriptMsg } from "./types";

export interface Recognizer {
  start(): void;
  /** stop capture and resolve with ranked transcripts (best first);
   * resolve with [] on silence or recognition failure */
  stop(): Promise<string[]>;
}

export class PushToTalk {
  private active = false;

  constructor(
    private recognizer: Recognizer,
    private send: (msg: ClientTranscriptMsg) => void,
    private now: () => number = () => Date.now(),
  ) {}

  get recording(): boolean {
    return this.active;
  }

  async onAffordances(msg: AffordancesMsg): Promise<void> {
    const wanted = msg.hints.microphone_active;
    if (wanted === this.active) return;
    this.active = wanted;
    if (wanted) {
      this.recognizer.start();
      return;
    }
    let results: string[];
    try {
      results = await this.recognizer.stop();
    } catch {
      results = []; // recognition failure: the engine answers Void
    }
    const [text = "", ...alternatives] = results;
    const msg_: ClientTranscriptMsg = { type: "transcript", t: this.now(), text };
    if (alternatives.length) msg_.alternatives = alternatives;
    this.send(msg_);
  }
}

/** Typed fallback: an input box submission produces the same message
 * shape as recognized speech. */
export function typedTranscript(text: string, t: number): ClientTranscriptMsg {
  return { type: "transcript", t, text };
}
