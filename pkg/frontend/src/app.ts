// Application wiring: one session per page, at most one in-flight mutation,
// optimistic revisions with a single refetch-and-retry on conflict, no
// conversion animations anywhere.

import {
  ApiClient,
  RevisionConflictError,
  type RunResult,
  type SessionState,
} from "./api.js";
import { CodePane, type EditDelta, textDelta } from "./editor.js";
import { DRAG_MIME, PalettePane } from "./palette.js";
import { drawTrace, type Ctx2D, type DrawnSegment } from "./turtle.js";

export class App {
  readonly client: ApiClient;
  readonly palette: PalettePane;
  readonly editor: CodePane;
  state: SessionState | null = null;
  lastRun: RunResult | null = null;
  drawnSegments: DrawnSegment[] = [];
  private categories: Record<string, string> = {};
  private queue: Promise<void> = Promise.resolve();
  readonly canvas: HTMLCanvasElement;
  readonly outputList: HTMLElement;
  readonly errorBanner: HTMLElement;
  readonly runButton: HTMLButtonElement;
  private readonly ctx: Ctx2D | null;

  constructor(root: HTMLElement, client: ApiClient, debounceMs = 150) {
    this.client = client;
    const paletteRoot = document.createElement("aside");
    const editorRoot = document.createElement("main");
    const runPane = document.createElement("section");
    runPane.id = "run-pane";
    root.append(paletteRoot, editorRoot, runPane);

    this.palette = new PalettePane(paletteRoot);
    this.editor = new CodePane(editorRoot, (delta) => this.submitEdit(delta), debounceMs);

    this.runButton = document.createElement("button");
    this.runButton.id = "run-button";
    this.runButton.textContent = "Run";
    this.runButton.addEventListener("click", () => {
      void this.handleRun();
    });
    this.errorBanner = document.createElement("div");
    this.errorBanner.id = "error-banner";
    this.errorBanner.hidden = true;
    this.canvas = document.createElement("canvas");
    this.canvas.id = "canvas";
    this.canvas.width = 480;
    this.canvas.height = 480;
    this.outputList = document.createElement("ul");
    this.outputList.id = "output";
    runPane.append(this.runButton, this.errorBanner, this.canvas, this.outputList);
    this.ctx = this.canvas.getContext("2d");

    this.wireDragAndDrop(editorRoot);
  }

  private wireDragAndDrop(editorRoot: HTMLElement) {
    editorRoot.addEventListener("dragover", (event) => event.preventDefault());
    editorRoot.addEventListener("drop", (event) => {
      event.preventDefault();
      const paletteId = event.dataTransfer?.getData(DRAG_MIME);
      if (!paletteId) {
        return;
      }
      const line = this.editor.lineFromClientY(event.clientY);
      void this.handleDrop(paletteId, line);
    });
  }

  async init(): Promise<void> {
    this.palette.render(await this.client.palette());
    this.categories = this.palette.categories();
    const created = await this.client.createSession("");
    this.applyState(created.state);
  }

  applyState(state: SessionState) {
    this.state = state;
    this.editor.applyState(state, this.categories);
  }

  /** Serialize mutations: at most one request in flight, others queue. */
  private enqueue(op: () => Promise<void>): Promise<void> {
    this.queue = this.queue.then(op, op);
    return this.queue;
  }

  /** Resolves when every queued mutation has settled. */
  idle(): Promise<void> {
    return this.queue;
  }

  handleDrop(paletteId: string, line: number): Promise<void> {
    return this.enqueue(async () => {
      if (!this.state) {
        return;
      }
      try {
        this.applyState(
          await this.client.drop(this.state.id, paletteId, line, this.state.revision),
        );
      } catch (err) {
        if (!(err instanceof RevisionConflictError) || !this.state) {
          throw err;
        }
        // conflict: refetch the snapshot and retry once against it
        this.applyState(await this.client.getSession(this.state.id));
        this.applyState(
          await this.client.drop(this.state.id, paletteId, line, this.state.revision),
        );
      }
    });
  }

  private submitEdit(delta: EditDelta): Promise<void> {
    return this.enqueue(async () => {
      if (!this.state) {
        return;
      }
      try {
        this.applyState(
          await this.client.edit(this.state.id, delta.range, delta.replacement, this.state.revision),
        );
      } catch (err) {
        if (!(err instanceof RevisionConflictError) || !this.state) {
          throw err;
        }
        const refreshed = await this.client.getSession(this.state.id);
        this.state = refreshed;
        // recompute the delta against the refreshed text and retry once
        const retry = textDelta(refreshed.text, this.editor.textarea.value);
        if (retry === null) {
          this.applyState(refreshed);
          return;
        }
        this.applyState(
          await this.client.edit(refreshed.id, retry.range, retry.replacement, refreshed.revision),
        );
      }
    });
  }

  async handleRun(): Promise<RunResult | null> {
    if (!this.state) {
      return null;
    }
    const result = await this.client.run(this.state.id);
    this.lastRun = result;
    this.renderRun(result);
    return result;
  }

  private renderRun(result: RunResult) {
    this.outputList.replaceChildren();
    if (result.error) {
      this.errorBanner.hidden = false;
      this.errorBanner.textContent = `line ${result.error.line}: ${result.error.code}: ${result.error.message}`;
      this.errorBanner.dataset.line = String(result.error.line);
      this.drawnSegments = drawTrace(this.ctx, this.canvas.width, this.canvas.height, []);
      return;
    }
    this.errorBanner.hidden = true;
    this.errorBanner.textContent = "";
    const trace = result.trace!;
    this.drawnSegments = drawTrace(
      this.ctx,
      this.canvas.width,
      this.canvas.height,
      trace.segments,
    );
    for (const line of trace.output) {
      const item = document.createElement("li");
      item.textContent = line;
      this.outputList.append(item);
    }
  }
}
