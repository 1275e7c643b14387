/** Newline-delimited JSON session client. Messages are applied strictly
 * in arrival order; the UI holds no analysis state beyond the latest
 * snapshot. */

import { ClientMsg, ServerMsg, Snapshot } from "./types";

export interface SocketLike {
  send(data: string): void;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
}

export interface SessionHandlers {
  onSnapshot?(snapshot: Snapshot): void;
  onMessage?(msg: ServerMsg): void;
  onProtocolError?(raw: string): void;
}

export class SessionClient {
  snapshot: Snapshot | null = null;

  constructor(private socket: SocketLike, private handlers: SessionHandlers = {}) {
    socket.onmessage = (ev) => this.receive(ev.data);
  }

  send(msg: ClientMsg): void {
    this.socket.send(JSON.stringify(msg));
  }

  private receive(raw: string): void {
    for (const line of raw.split("\n")) {
      if (!line.trim()) continue;
      let msg: ServerMsg;
      try {
        msg = JSON.parse(line);
      } catch {
        this.handlers.onProtocolError?.(line);
        continue;
      }
      if (msg.type === "snapshot") {
        this.snapshot = msg.state;
        this.handlers.onSnapshot?.(msg.state);
      }
      this.handlers.onMessage?.(msg);
    }
  }
}
