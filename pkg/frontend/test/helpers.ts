export interface FakeDataTransfer {
  setData(key: string, value: string): void;
  getData(key: string): string;
}

/** Simulate a palette drag-and-drop with plain DOM events (jsdom-safe). */
export function dragAndDrop(root: HTMLElement, paletteId: string, clientY = 5) {
  const item = root.querySelector<HTMLElement>(`[data-palette-id="${paletteId}"]`);
  if (!item) {
    throw new Error(`no palette item ${paletteId}`);
  }
  const store: Record<string, string> = {};
  const dataTransfer: FakeDataTransfer = {
    setData: (key, value) => {
      store[key] = value;
    },
    getData: (key) => store[key] ?? "",
  };
  const start = new Event("dragstart", { bubbles: true }) as Event & {
    dataTransfer: FakeDataTransfer;
  };
  start.dataTransfer = dataTransfer;
  item.dispatchEvent(start);
  const drop = new Event("drop", { bubbles: true, cancelable: true }) as Event & {
    dataTransfer: FakeDataTransfer;
    clientY: number;
  };
  drop.dataTransfer = dataTransfer;
  drop.clientY = clientY;
  const editorRoot = root.querySelector("main");
  if (!editorRoot) {
    throw new Error("editor pane not mounted");
  }
  editorRoot.dispatchEvent(drop);
}
