import type { MaskLayer, OverviewScene } from "./scene.js";
import type { TimelinePayload } from "./types.js";

// Geometry constants; free parameters, nothing downstream depends on them.
export const CELL = 22;
export const CELL_PAD = 2;
export const LABEL_W = 64;
export const HEADER_H = 18;
export const DETAIL_CELL = 12;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

interface ColumnLayout {
  transition: number;
  x: number;
  width: number;
}

export function layoutColumns(scene: OverviewScene): ColumnLayout[] {
  const out: ColumnLayout[] = [];
  let x = LABEL_W;
  for (const col of scene.columns) {
    // an unfolded column widens to fit its detail matrices side by side
    const detailW = col.details.length * (scene.nodeOrder.length * DETAIL_CELL + CELL_PAD);
    const width = CELL + detailW;
    out.push({ transition: col.transition, x, width });
    x += width + CELL_PAD;
  }
  return out;
}

export function renderScene(scene: OverviewScene, mask: MaskLayer | null): string {
  const cols = layoutColumns(scene);
  const colX = new Map(cols.map((c) => [c.transition, c.x]));
  const rowY = (r: number) => HEADER_H + r * (CELL + CELL_PAD);
  const height = HEADER_H + scene.nodeOrder.length * (CELL + CELL_PAD) + CELL;
  const width = cols.length ? cols[cols.length - 1].x + cols[cols.length - 1].width + CELL : LABEL_W;

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}">`);

  scene.nodeOrder.forEach((node, r) => {
    parts.push(
      `<text class="row-label" x="${LABEL_W - 6}" y="${rowY(r) + CELL / 2}" text-anchor="end">${esc(node)}</text>`
    );
  });

  for (const [c, col] of scene.columns.entries()) {
    const x = cols[c].x;
    parts.push(`<text class="col-label" x="${x + CELL / 2}" y="${HEADER_H - 5}" text-anchor="middle">t${col.transition}</text>`);
    col.glyphs.forEach((g, r) => {
      const y = rowY(r);
      const mid = y + CELL / 2;
      const up = (g.upperFraction * CELL) / 2;
      const down = (g.lowerFraction * CELL) / 2;
      parts.push(`<g class="cell" data-node="${esc(g.node)}" data-t="${g.transition}">`);
      parts.push(`<rect class="cell-bg" x="${x}" y="${y}" width="${CELL}" height="${CELL}" fill="${g.color}"/>`);
      if (!g.empty) {
        if (up > 0)
          parts.push(`<rect class="bar-up" x="${x + 4}" y="${mid - up}" width="${CELL - 8}" height="${up}"/>`);
        if (down > 0)
          parts.push(`<rect class="bar-down" x="${x + 4}" y="${mid}" width="${CELL - 8}" height="${down}"/>`);
      }
      parts.push("</g>");
    });

    col.details.forEach((d, i) => {
      const ox = x + CELL + CELL_PAD + i * (scene.nodeOrder.length * DETAIL_CELL + CELL_PAD);
      parts.push(`<g class="detail detail-${d.kind}" data-t="${d.timeIndex}">`);
      d.cells.forEach((row, ri) =>
        row.forEach((cell, ci) => {
          parts.push(
            `<rect class="detail-cell" x="${ox + ci * DETAIL_CELL}" y="${rowY(ri)}" ` +
              `width="${DETAIL_CELL}" height="${DETAIL_CELL}" fill="${cell.color}"/>`
          );
        })
      );
      parts.push("</g>");
    });
  }

  if (mask) {
    parts.push(`<g class="mask-layer">`);
    const rowIdx = new Map(scene.nodeOrder.map((n, i) => [n, i]));
    for (const r of mask.rects) {
      const x = colX.get(r.column);
      const ri = rowIdx.get(r.node);
      if (x === undefined || ri === undefined) continue;
      parts.push(
        `<rect class="mask-rect" rx="5" ry="5" x="${x - 1}" y="${rowY(ri) - 1}" ` +
          `width="${CELL + 2}" height="${CELL + 2}" fill="none" stroke="${r.color}" stroke-width="2"/>`
      );
    }
    for (const c of mask.connectors) {
      if (c.kind === "vertical") {
        const x = colX.get(c.column);
        if (x === undefined || c.nodes.length < 2) continue;
        const ys = c.nodes.map((n) => rowY(rowIdx.get(n) ?? 0) + CELL / 2);
        parts.push(
          `<path class="mask-connector vertical" d="M${x + CELL / 2},${Math.min(...ys)} L${x + CELL / 2},${Math.max(...ys)}" ` +
            `stroke="${c.color}" fill="none"/>`
        );
      } else {
        const x1 = colX.get(c.fromColumn);
        const x2 = colX.get(c.toColumn);
        const ri = rowIdx.get(c.node);
        if (x1 === undefined || x2 === undefined || ri === undefined) continue;
        const y = rowY(ri) + CELL / 2;
        parts.push(
          `<path class="mask-connector horizontal" d="M${x1 + CELL},${y} L${x2},${y}" ` +
            `stroke="${c.toColor}" fill="none" data-from="${c.fromColor}"/>`
        );
      }
    }
    parts.push("</g>");
  }

  parts.push("</svg>");
  return parts.join("");
}

export function renderTimeline(
  points: TimelinePayload,
  width = 640,
  height = 80
): string {
  if (!points.length) return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"></svg>`;
  const maxIntensity = Math.max(...points.map((p) => p.intensity), 1e-9);
  const maxOffset = Math.max(...points.map((p) => Math.abs(p.offset)), 1e-9);
  const step = width / points.length;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}">`);
  for (const p of points) {
    const h = (p.intensity / maxIntensity) * (height - 20);
    parts.push(
      `<rect class="intensity-bar" data-t="${p.t}" x="${p.t * step + 1}" y="${height - h}" ` +
        `width="${Math.max(1, step - 2)}" height="${h}"/>`
    );
  }
  const line = points
    .map((p) => `${p.t * step + step / 2},${height / 2 - (p.offset / maxOffset) * (height / 2 - 10)}`)
    .join(" L");
  parts.push(`<path class="offset-line" d="M${line}" fill="none"/>`);
  parts.push("</svg>");
  return parts.join("");
}
