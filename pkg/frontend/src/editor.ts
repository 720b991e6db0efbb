// Code pane: a textarea whose rows are decorated with block outlines and a
// diagnostic gutter. Overlays derive purely from the latest server state.

import type { Diagnostic, EditRange, LayoutRow, SessionState } from "./api.js";

export const LINE_HEIGHT_PX = 22;
export const INDENT_PX = 16;

export interface EditDelta {
  range: EditRange;
  replacement: string;
}

/** Minimal line/col delta between two texts (common prefix/suffix trim). */
export function textDelta(oldText: string, newText: string): EditDelta | null {
  if (oldText === newText) {
    return null;
  }
  let prefix = 0;
  const maxPrefix = Math.min(oldText.length, newText.length);
  while (prefix < maxPrefix && oldText[prefix] === newText[prefix]) {
    prefix += 1;
  }
  let suffix = 0;
  while (
    suffix < Math.min(oldText.length, newText.length) - prefix &&
    oldText[oldText.length - 1 - suffix] === newText[newText.length - 1 - suffix]
  ) {
    suffix += 1;
  }
  const start = offsetToPosition(oldText, prefix);
  const end = offsetToPosition(oldText, oldText.length - suffix);
  return {
    range: {
      start_line: start.line,
      start_col: start.col,
      end_line: end.line,
      end_col: end.col,
    },
    replacement: newText.slice(prefix, newText.length - suffix),
  };
}

export function offsetToPosition(text: string, offset: number): { line: number; col: number } {
  let line = 0;
  let lineStart = 0;
  for (let i = 0; i < offset; i += 1) {
    if (text[i] === "\n") {
      line += 1;
      lineStart = i + 1;
    }
  }
  return { line, col: offset - lineStart };
}

export class CodePane {
  readonly textarea: HTMLTextAreaElement;
  readonly overlays: HTMLElement;
  readonly gutter: HTMLElement;
  private lastSyncedText = "";
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;
  private readonly onDelta: (delta: EditDelta) => void;

  constructor(
    root: HTMLElement,
    onDelta: (delta: EditDelta) => void,
    debounceMs = 150,
  ) {
    this.onDelta = onDelta;
    this.debounceMs = debounceMs;
    root.classList.add("code-pane");
    this.gutter = document.createElement("div");
    this.gutter.id = "gutter";
    this.overlays = document.createElement("div");
    this.overlays.id = "overlays";
    this.textarea = document.createElement("textarea");
    this.textarea.id = "editor-text";
    this.textarea.spellcheck = false;
    const scroller = document.createElement("div");
    scroller.className = "editor-scroller";
    scroller.append(this.overlays, this.textarea);
    root.append(this.gutter, scroller);
    this.textarea.addEventListener("input", () => this.scheduleSync());
  }

  /** Map a pointer y-position (client coordinates) to a drop target line. */
  lineFromClientY(clientY: number): number {
    const rect = this.textarea.getBoundingClientRect();
    const y = clientY - rect.top + this.textarea.scrollTop;
    const lineCount = this.contentLineCount();
    const line = Math.floor(y / LINE_HEIGHT_PX);
    return Math.max(0, Math.min(lineCount, line));
  }

  contentLineCount(): number {
    const value = this.textarea.value;
    if (value === "") {
      return 0;
    }
    const lines = value.split("\n");
    if (lines[lines.length - 1] === "") {
      lines.pop();
    }
    return lines.length;
  }

  private scheduleSync() {
    if (this.debounceTimerActive()) {
      clearTimeout(this.debounceTimer!);
    }
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      this.flushEdit();
    }, this.debounceMs);
  }

  private debounceTimerActive(): boolean {
    return this.debounceTimer !== null;
  }

  flushEdit() {
    const delta = textDelta(this.lastSyncedText, this.textarea.value);
    if (delta !== null) {
      this.onDelta(delta);
    }
  }

  /** Render the authoritative server state into the pane. */
  applyState(state: SessionState, categories: Record<string, string>) {
    this.lastSyncedText = state.text;
    if (this.textarea.value !== state.text) {
      this.textarea.value = state.text;
    }
    this.renderOverlays(state.layout, state.block_types, state.stale, categories);
    this.renderGutter(state.diagnostics);
  }

  private renderOverlays(
    rows: LayoutRow[],
    blockTypes: Record<string, string>,
    stale: boolean,
    categories: Record<string, string>,
  ) {
    this.overlays.classList.toggle("stale", stale);
    this.overlays.replaceChildren();
    for (const row of rows) {
      const el = document.createElement("div");
      el.className = "overlay-row";
      el.dataset.row = String(row.row);
      el.dataset.depth = String(row.depth);
      const firstBlock = row.block_ids[0];
      if (firstBlock !== undefined) {
        const type = blockTypes[String(firstBlock)] ?? "func-call";
        el.dataset.blockType = type;
        el.classList.add(`cat-${categories[type] ?? "functions"}`);
      }
      if (row.leading_blank) {
        el.classList.add("spaced");
      }
      el.style.top = `${row.row * LINE_HEIGHT_PX}px`;
      el.style.height = `${LINE_HEIGHT_PX}px`;
      el.style.marginLeft = `${row.depth * INDENT_PX}px`;
      this.overlays.append(el);
    }
  }

  private renderGutter(diagnostics: Diagnostic[]) {
    this.gutter.replaceChildren();
    for (const diag of diagnostics) {
      const mark = document.createElement("div");
      mark.className = "gutter-mark";
      mark.dataset.code = diag.code;
      mark.dataset.line = String(diag.line);
      mark.title = `${diag.code}: ${diag.message}`;
      mark.textContent = "!";
      mark.style.top = `${(diag.line - 1) * LINE_HEIGHT_PX}px`;
      this.gutter.append(mark);
    }
  }
}
