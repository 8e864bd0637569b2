/**
 * Canvas renderer + pointer interactions for the topology editor.
 *
 * Node positions are presentation-only (a fixed circle layout) and are never
 * exported; all graph mutations go through the TopologyModel.
 */

import { TopologyModel } from "../topology.js";

export interface Point {
  x: number;
  y: number;
}

export function circleLayout(n: number, width: number, height: number): Point[] {
  const cx = width / 2;
  const cy = height / 2;
  const r = Math.min(width, height) / 2 - 30;
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    pts.push({ x: cx + r * Math.cos(a), y: cy + r * Math.sin(a) });
  }
  return pts;
}

export function nodeAt(pts: Point[], x: number, y: number, radius = 16): number {
  for (let i = 0; i < pts.length; i++) {
    const dx = pts[i].x - x;
    const dy = pts[i].y - y;
    if (dx * dx + dy * dy <= radius * radius) return i;
  }
  return -1;
}

export class CanvasEditor {
  private dragFrom = -1;
  private hover = -1;
  private readonly positions: Point[];

  constructor(
    private readonly canvas: HTMLCanvasElement,
    readonly model: TopologyModel,
    private readonly onChange: () => void,
  ) {
    this.positions = circleLayout(model.nodes, canvas.width, canvas.height);
    canvas.addEventListener("pointerdown", (e) => this.pointerDown(e));
    canvas.addEventListener("pointermove", (e) => this.pointerMove(e));
    canvas.addEventListener("pointerup", (e) => this.pointerUp(e));
    this.draw();
  }

  private local(e: PointerEvent): Point {
    const rect = this.canvas.getBoundingClientRect();
    return { x: e.clientX - rect.left, y: e.clientY - rect.top };
  }

  private pointerDown(e: PointerEvent): void {
    const p = this.local(e);
    this.dragFrom = nodeAt(this.positions, p.x, p.y);
  }

  private pointerMove(e: PointerEvent): void {
    const p = this.local(e);
    this.hover = nodeAt(this.positions, p.x, p.y);
    this.draw(p);
  }

  private pointerUp(e: PointerEvent): void {
    const p = this.local(e);
    const target = nodeAt(this.positions, p.x, p.y);
    // a drag between two distinct nodes toggles that edge; self-drags no-op
    if (this.dragFrom >= 0 && target >= 0 && target !== this.dragFrom) {
      this.model.toggleEdge(this.dragFrom, target);
      this.onChange();
    }
    this.dragFrom = -1;
    this.draw();
  }

  draw(cursor?: Point): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);

    ctx.strokeStyle = "#4a7";
    ctx.lineWidth = 2;
    for (const [a, b] of this.model.edgeList()) {
      ctx.beginPath();
      ctx.moveTo(this.positions[a].x, this.positions[a].y);
      ctx.lineTo(this.positions[b].x, this.positions[b].y);
      ctx.stroke();
    }

    if (this.dragFrom >= 0 && cursor) {
      ctx.strokeStyle = "#bbb";
      ctx.setLineDash([4, 4]);
      ctx.beginPath();
      ctx.moveTo(this.positions[this.dragFrom].x, this.positions[this.dragFrom].y);
      ctx.lineTo(cursor.x, cursor.y);
      ctx.stroke();
      ctx.setLineDash([]);
    }

    for (let i = 0; i < this.positions.length; i++) {
      const p = this.positions[i];
      ctx.beginPath();
      ctx.arc(p.x, p.y, 14, 0, 2 * Math.PI);
      ctx.fillStyle = i === this.hover ? "#dbeafe" : "#f1f5f9";
      ctx.fill();
      ctx.strokeStyle = "#334155";
      ctx.lineWidth = 1.5;
      ctx.stroke();
      ctx.fillStyle = "#0f172a";
      ctx.font = "12px sans-serif";
      ctx.textAlign = "center";
      ctx.textBaseline = "middle";
      ctx.fillText(String(i), p.x, p.y);
    }
  }
}
