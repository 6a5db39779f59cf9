// Circular tag-cloud overlay. The geometry is the server's layout verbatim
// (optionally scaled uniformly for display); this module never recomputes
// weights or positions. Bin transitions re-point the same text elements so
// CSS transitions animate movement, with diff categories applied as classes:
// tag-promoted (blue), tag-demoted (red), tag-enter (phosphor), tag-exit.

import type { CloudResponse, SparkResponse } from "./types";

export const SVG_NS = "http://www.w3.org/2000/svg";

interface TagGeom {
  x: number;
  y: number;
  w: number;
  h: number;
  font: number;
}

export class CloudView {
  readonly group: SVGGElement;
  siteLat = 0;
  siteLon = 0;
  phrases: string[] = [];
  private circle: SVGCircleElement;
  private tags = new Map<string, SVGTextElement>();
  private sparks = new Map<string, SVGPolylineElement>();
  private geom = new Map<string, TagGeom>();
  private sparkData = new Map<string, SparkResponse>();
  private sparklinesOn = false;

  constructor(doc: Document, private displayRadius: number) {
    this.group = doc.createElementNS(SVG_NS, "g") as SVGGElement;
    this.group.setAttribute("class", "cloud");
    this.circle = doc.createElementNS(SVG_NS, "circle") as SVGCircleElement;
    this.circle.setAttribute("class", "cloud-canvas");
    this.group.appendChild(this.circle);
  }

  private scaleFor(cloud: CloudResponse): number {
    const native = cloud.layout?.radius ?? 0;
    if (this.displayRadius > 0 && native > 0) return this.displayRadius / native;
    return 1;
  }

  /** First render: geometry pass-through, no transition classes. */
  render(cloud: CloudResponse): void {
    this.siteLat = cloud.lat;
    this.siteLon = cloud.lon;
    this.applyLayout(cloud, null);
  }

  /** Bin change: move/retint existing tags per the server diff. */
  update(cloud: CloudResponse, animationMs: number): void {
    this.applyLayout(cloud, cloud.diff ?? null, animationMs);
  }

  private applyLayout(
    cloud: CloudResponse,
    diff: CloudResponse["diff"] | null,
    animationMs = 0,
  ): void {
    const layout = cloud.layout;
    if (!layout) return;
    const s = this.scaleFor(cloud);
    const doc = this.group.ownerDocument!;
    this.circle.setAttribute("r", String(layout.radius * s));
    this.phrases = cloud.phrases.slice();
    this.geom.clear();

    const next = new Set(layout.placed);
    for (const [phrase, el] of [...this.tags]) {
      if (!next.has(phrase)) {
        el.setAttribute("class", "tag tag-exit");
        this.tags.delete(phrase);
        this.removeSpark(phrase);
        if (animationMs > 0) {
          setTimeout(() => el.remove(), animationMs);
        } else {
          el.remove();
        }
      }
    }

    const category = new Map<string, string>();
    if (diff) {
      for (const p of diff.promoted) category.set(p, "tag-promoted");
      for (const p of diff.demoted) category.set(p, "tag-demoted");
      for (const p of diff.steady) category.set(p, "tag-steady");
      for (const p of diff.enter) category.set(p, "tag-enter");
    }

    layout.placed.forEach((phrase, i) => {
      const x = layout.x[i] * s;
      const y = layout.y[i] * s;
      const font = layout.font[i] * s;
      this.geom.set(phrase, { x, y, w: layout.w[i] * s, h: layout.h[i] * s, font });
      let el = this.tags.get(phrase);
      if (!el) {
        el = doc.createElementNS(SVG_NS, "text") as SVGTextElement;
        el.textContent = phrase;
        el.setAttribute("data-phrase", phrase);
        el.setAttribute("text-anchor", "middle");
        el.setAttribute("dominant-baseline", "central");
        this.group.appendChild(el);
        this.tags.set(phrase, el);
        el.setAttribute("class", diff ? "tag tag-enter" : "tag");
      } else {
        el.setAttribute("class", `tag ${category.get(phrase) ?? ""}`.trim());
      }
      el.setAttribute("transform", `translate(${x},${y})`);
      el.setAttribute("font-size", String(font));
    });

    if (this.sparklinesOn) this.drawSparklines();
  }

  tagElement(phrase: string): SVGTextElement | undefined {
    return this.tags.get(phrase);
  }

  setSparkData(series: SparkResponse[]): void {
    this.sparkData.clear();
    for (const s of series) this.sparkData.set(s.phrase, s);
  }

  toggleSparklines(on: boolean): void {
    this.sparklinesOn = on;
    if (on) {
      this.drawSparklines();
    } else {
      for (const phrase of [...this.sparks.keys()]) this.removeSpark(phrase);
    }
  }

  private drawSparklines(): void {
    const doc = this.group.ownerDocument!;
    for (const [phrase, box] of this.geom) {
      const series = this.sparkData.get(phrase);
      if (!series || series.values.length === 0) continue;
      let el = this.sparks.get(phrase);
      if (!el) {
        el = doc.createElementNS(SVG_NS, "polyline") as SVGPolylineElement;
        el.setAttribute("class", "tag-spark");
        el.setAttribute("data-phrase", phrase);
        this.group.appendChild(el);
        this.sparks.set(phrase, el);
      }
      const n = Math.max(series.values.length, 2);
      const values = series.values.length === 1 ? [series.values[0], series.values[0]] : series.values;
      const x0 = box.x - box.w / 2;
      const y1 = box.y + box.h / 2;
      const step = box.w / (n - 1);
      const points = values
        .map((v, i) => `${(x0 + i * step).toFixed(2)},${(y1 - v * box.h).toFixed(2)}`)
        .join(" ");
      el.setAttribute("points", points);
    }
  }

  private removeSpark(phrase: string): void {
    this.sparks.get(phrase)?.remove();
    this.sparks.delete(phrase);
  }
}
