// Palette pane: one draggable entry per server-provided block template.
// The list mirrors GET /palette exactly; nothing is defined client-side.

import type { PaletteEntry } from "./api.js";

export const DRAG_MIME = "application/x-palette-id";

export class PalettePane {
  readonly root: HTMLElement;
  private entries: PaletteEntry[] = [];

  constructor(root: HTMLElement) {
    this.root = root;
    this.root.id = "palette";
  }

  /** type -> category lookup used to color editor overlays. */
  categories(): Record<string, string> {
    const map: Record<string, string> = {};
    for (const entry of this.entries) {
      map[entry.id] = entry.category;
    }
    return map;
  }

  render(entries: PaletteEntry[]) {
    this.entries = entries;
    this.root.replaceChildren();
    const byCategory = new Map<string, PaletteEntry[]>();
    for (const entry of entries) {
      const group = byCategory.get(entry.category) ?? [];
      group.push(entry);
      byCategory.set(entry.category, group);
    }
    for (const [category, group] of byCategory) {
      const section = document.createElement("section");
      section.className = "palette-group";
      const heading = document.createElement("h3");
      heading.textContent = category;
      section.append(heading);
      for (const entry of group) {
        const item = document.createElement("div");
        item.className = `palette-item cat-${entry.category}`;
        item.dataset.paletteId = entry.id;
        item.draggable = true;
        item.textContent = entry.label;
        item.title = entry.template;
        item.addEventListener("dragstart", (event) => {
          event.dataTransfer?.setData(DRAG_MIME, entry.id);
        });
        section.append(item);
      }
      this.root.append(section);
    }
  }
}
