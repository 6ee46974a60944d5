import { Viewport } from "./geometry.js";
import { ViewState } from "./state.js";
import { Vec2 } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Categorical fill colors assigned to labels in first-seen order. */
export const PALETTE = [
  "#4269d0",
  "#efb118",
  "#ff725c",
  "#6cc5b0",
  "#3ca951",
  "#ff8ab7",
  "#a463f2",
  "#97bbf5",
  "#9c6b4e",
  "#9498a0",
];
export const NEUTRAL_COLOR = "#8a8f98";
/** Ring stroke colors by plot membership order (demo mode). */
export const RING_COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"];

export const DOT_RADIUS = 5;
const RING_GAP = 3;
/** Pointer travel below this many px counts as a click, not a drag. */
export const CLICK_SLOP_PX = 3;

export interface PlotCallbacks {
  onDocClick?(docId: string): void;
  onCanvasClick?(): void;
  /** Fired when a drag ends; screen holds the release position. */
  onDragEnd?(docId: string, screen: Vec2): void;
}

interface DocNodes {
  group: SVGGElement;
  dot: SVGCircleElement;
  rings: SVGCircleElement[];
}

/**
 * SVG scatterplot of the session layout. Nodes are created once per doc and
 * updated in place, so animation frames only touch attributes.
 */
export class ScatterPlot {
  private readonly nodes = new Map<string, DocNodes>();
  private readonly labelColors = new Map<string, string>();
  private memberships = new Map<string, string[]>();
  private drag: { docId: string; start: Vec2; last: Vec2; moved: boolean } | null = null;

  constructor(
    private readonly svg: SVGSVGElement,
    readonly viewport: Viewport,
    private readonly callbacks: PlotCallbacks = {},
  ) {
    svg.setAttribute("viewBox", `0 0 ${viewport.width} ${viewport.height}`);
    this.wireEvents();
  }

  /** Enable demo rings: doc id to the plot names it belongs to. */
  setMemberships(memberships: Map<string, string[]>): void {
    this.memberships = memberships;
    for (const [id, nodes] of this.nodes) this.rebuildRings(id, nodes);
  }

  colorFor(label: string | null): string {
    if (label === null) return NEUTRAL_COLOR;
    let color = this.labelColors.get(label);
    if (!color) {
      color = PALETTE[this.labelColors.size % PALETTE.length];
      this.labelColors.set(label, color);
    }
    return color;
  }

  /**
   * Draw every document. `override` positions (model coordinates, in server
   * order) win over state positions; animation frames pass them per tick.
   */
  render(state: ViewState, override?: Vec2[]): void {
    state.order.forEach((id, i) => {
      const doc = state.docs.get(id)!;
      let nodes = this.nodes.get(id);
      if (!nodes) {
        nodes = this.createNodes(id);
        this.nodes.set(id, nodes);
      }
      const model = override ? override[i] : doc.position;
      const screen = this.viewport.toScreen(model);
      nodes.dot.setAttribute("cx", String(screen.x));
      nodes.dot.setAttribute("cy", String(screen.y));
      nodes.dot.setAttribute("fill", this.colorFor(doc.label));
      nodes.rings.forEach((ring) => {
        ring.setAttribute("cx", String(screen.x));
        ring.setAttribute("cy", String(screen.y));
      });
      const classes = ["doc"];
      if (doc.pinned) classes.push("pinned");
      if (doc.selected) classes.push("selected");
      nodes.group.setAttribute("class", classes.join(" "));
    });
  }

  screenPosition(docId: string): Vec2 {
    const nodes = this.nodes.get(docId);
    if (!nodes) throw new Error(`doc not rendered: ${docId}`);
    return {
      x: Number(nodes.dot.getAttribute("cx")),
      y: Number(nodes.dot.getAttribute("cy")),
    };
  }

  // Drag state machine, also reachable directly for tests and for hosts
  // without pointer events. Travel under CLICK_SLOP_PX is a click.
  beginDrag(docId: string, screen: Vec2): void {
    this.drag = { docId, start: screen, last: screen, moved: false };
  }

  moveDrag(screen: Vec2): void {
    if (!this.drag) return;
    this.drag.last = screen;
    if (
      Math.abs(screen.x - this.drag.start.x) > CLICK_SLOP_PX ||
      Math.abs(screen.y - this.drag.start.y) > CLICK_SLOP_PX
    ) {
      this.drag.moved = true;
    }
    if (this.drag.moved) {
      const nodes = this.nodes.get(this.drag.docId);
      if (nodes) {
        nodes.dot.setAttribute("cx", String(screen.x));
        nodes.dot.setAttribute("cy", String(screen.y));
      }
    }
  }

  endDrag(screen: Vec2): void {
    if (!this.drag) return;
    const { docId, moved } = this.drag;
    this.drag = null;
    if (moved) this.callbacks.onDragEnd?.(docId, screen);
    else this.callbacks.onDocClick?.(docId);
  }

  cancelDrag(): void {
    this.drag = null;
  }

  private createNodes(docId: string): DocNodes {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "doc");
    group.dataset.docId = docId;
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("r", String(DOT_RADIUS));
    dot.setAttribute("class", "dot");
    group.appendChild(dot);
    this.svg.appendChild(group);
    const nodes: DocNodes = { group, dot, rings: [] };
    this.rebuildRings(docId, nodes);
    return nodes;
  }

  private rebuildRings(docId: string, nodes: DocNodes): void {
    for (const ring of nodes.rings) ring.remove();
    nodes.rings = [];
    const plots = this.memberships.get(docId) ?? [];
    plots.forEach((plot, i) => {
      const ring = document.createElementNS(SVG_NS, "circle");
      ring.setAttribute("r", String(DOT_RADIUS + RING_GAP * (i + 1)));
      ring.setAttribute("fill", "none");
      ring.setAttribute("stroke", RING_COLORS[i % RING_COLORS.length]);
      ring.setAttribute("stroke-width", "1.5");
      ring.setAttribute("class", "ring");
      ring.dataset.plot = plot;
      nodes.group.insertBefore(ring, nodes.dot);
      nodes.rings.push(ring);
    });
  }

  private wireEvents(): void {
    const downEvent = typeof PointerEvent === "function" ? "pointerdown" : "mousedown";
    const moveEvent = typeof PointerEvent === "function" ? "pointermove" : "mousemove";
    const upEvent = typeof PointerEvent === "function" ? "pointerup" : "mouseup";

    this.svg.addEventListener(downEvent, (event) => {
      const target = event.target as Element | null;
      const group = target?.closest?.("g.doc") as SVGGElement | null;
      const screen = this.eventScreen(event as MouseEvent);
      if (group?.dataset.docId) {
        event.preventDefault();
        this.beginDrag(group.dataset.docId, screen);
      }
    });
    this.svg.addEventListener(moveEvent, (event) => {
      this.moveDrag(this.eventScreen(event as MouseEvent));
    });
    this.svg.addEventListener(upEvent, (event) => {
      if (this.drag) {
        this.endDrag(this.eventScreen(event as MouseEvent));
      } else {
        const target = event.target as Element | null;
        if (!target?.closest?.("g.doc")) this.callbacks.onCanvasClick?.();
      }
    });
  }

  private eventScreen(event: MouseEvent): Vec2 {
    const rect = this.svg.getBoundingClientRect();
    // map from client px to viewBox units so zoomed pages stay accurate
    const sx = rect.width > 0 ? this.viewport.width / rect.width : 1;
    const sy = rect.height > 0 ? this.viewport.height / rect.height : 1;
    return { x: (event.clientX - rect.left) * sx, y: (event.clientY - rect.top) * sy };
  }
}
