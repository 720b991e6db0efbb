// Turtle canvas renderer. World coordinates have the origin at the center
// with +y pointing up; the view is scaled to fit the drawing. The 2D context
// is injectable so tests can record draw calls without a real canvas.

import type { TraceSegment } from "./api.js";

export interface Ctx2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
}

export interface DrawnSegment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
}

interface View {
  scale: number;
  offsetX: number;
  offsetY: number;
}

function fitView(segments: TraceSegment[], width: number, height: number, margin: number): View {
  let minX = 0;
  let maxX = 0;
  let minY = 0;
  let maxY = 0;
  for (const seg of segments) {
    for (const [x, y] of [seg.from, seg.to]) {
      minX = Math.min(minX, x);
      maxX = Math.max(maxX, x);
      minY = Math.min(minY, y);
      maxY = Math.max(maxY, y);
    }
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY, 1);
  const centerX = (minX + maxX) / 2;
  const centerY = (minY + maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - centerX * scale,
    offsetY: height / 2 + centerY * scale,
  };
}

/** Draw segments in order; returns what was drawn in canvas coordinates. */
export function drawTrace(
  ctx: Ctx2D | null,
  width: number,
  height: number,
  segments: TraceSegment[],
): DrawnSegment[] {
  const view = fitView(segments, width, height, 20);
  const toCanvas = (x: number, y: number): [number, number] => [
    view.offsetX + x * view.scale,
    view.offsetY - y * view.scale,
  ];
  ctx?.clearRect(0, 0, width, height);
  const drawn: DrawnSegment[] = [];
  for (const seg of segments) {
    const [x1, y1] = toCanvas(seg.from[0], seg.from[1]);
    const [x2, y2] = toCanvas(seg.to[0], seg.to[1]);
    if (ctx) {
      ctx.strokeStyle = seg.color;
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
      ctx.stroke();
    }
    drawn.push({ x1, y1, x2, y2, color: seg.color });
  }
  return drawn;
}
