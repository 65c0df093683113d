import { ApiClient } from "./api.js";
import { Explorer } from "./controller.js";
import { renderScene, renderTimeline } from "./render.js";
import { ALPHA_DETENTS } from "./state.js";

// Browser entry point. Everything interesting lives in the pure modules;
// this file only wires DOM events to the Explorer and repaints.

const api = new ApiClient("");
const app = new Explorer(api);

const $ = (sel: string) => document.querySelector(sel) as HTMLElement;

function repaint() {
  if (app.scene) {
    $("#matrix").innerHTML = renderScene(app.scene, app.maskLayer());
  }
  if (app.timeline) {
    $("#timeline").innerHTML = renderTimeline(app.timeline);
  }
  const range = app.state.brushedRange;
  $("#range-label").textContent = range
    ? `transitions ${range[0]}..${range[1]}`
    : "full range";
  $("#alpha-label").textContent = `alpha ${app.state.alpha.toFixed(2)}`;
}

async function boot() {
  const datasets = await api.listDatasets();
  const select = $("#dataset") as HTMLSelectElement;
  select.innerHTML = datasets
    .map((d) => `<option value="${d.id}">${d.name} (${d.nodeCount}x${d.timesliceCount})</option>`)
    .join("");
  select.onchange = async () => {
    await app.load(select.value);
    repaint();
  };
  if (datasets.length) {
    await app.load(datasets[0].id);
    repaint();
  }

  const alpha = $("#alpha") as HTMLInputElement;
  alpha.onchange = async () => {
    await app.changeAlpha(parseFloat(alpha.value));
    alpha.value = String(app.state.alpha); // show the detent snap
    repaint();
  };
  for (const d of ALPHA_DETENTS) {
    const b = document.createElement("button");
    b.textContent = String(d);
    b.onclick = async () => {
      alpha.value = String(d);
      await app.changeAlpha(d);
      repaint();
    };
    $("#alpha-detents").appendChild(b);
  }

  const maskToggle = $("#mask-enabled") as HTMLInputElement;
  maskToggle.onchange = () => {
    app.toggleMask(maskToggle.checked);
    repaint();
  };
  const threshold = $("#threshold") as HTMLInputElement;
  threshold.onchange = async () => {
    await app.changeMaskConfig({ threshold: parseFloat(threshold.value) });
    repaint();
  };
  const gap = $("#gap") as HTMLInputElement;
  gap.onchange = async () => {
    await app.changeMaskConfig({ gapLimit: parseInt(gap.value, 10) });
    repaint();
  };
  const criterion = $("#criterion") as HTMLSelectElement;
  criterion.onchange = async () => {
    await app.changeMaskConfig({ criterion: criterion.value as any });
    repaint();
  };

  // drag across the timeline strip to brush; drags in either direction work
  let dragStart: number | null = null;
  const timeline = $("#timeline");
  const slotAt = (ev: PointerEvent) => {
    if (!app.timeline) return 0;
    const rect = timeline.getBoundingClientRect();
    const frac = (ev.clientX - rect.left) / rect.width;
    return Math.round(frac * (app.timeline.length - 1));
  };
  timeline.onpointerdown = (ev) => {
    dragStart = slotAt(ev);
  };
  timeline.onpointerup = async (ev) => {
    if (dragStart === null) return;
    const end = slotAt(ev);
    if (Math.abs(end - dragStart) < 1) {
      await app.resetBrush();
    } else {
      await app.brush(Math.max(1, dragStart), Math.max(1, end));
    }
    dragStart = null;
    repaint();
  };

  // double-click a column: unfold; with shift: the raw-weight matrix;
  // alt-double-click folds both kinds again
  $("#matrix").ondblclick = async (ev) => {
    const target = (ev.target as Element).closest("[data-t]");
    if (!target) return;
    const t = parseInt(target.getAttribute("data-t") ?? "", 10);
    if (Number.isNaN(t)) return;
    const kind = ev.shiftKey ? "original" : "difference";
    if (ev.altKey) {
      app.fold(t, "difference");
      app.fold(t, "original");
    } else {
      await app.unfold(t, kind);
    }
    repaint();
  };
}

boot().catch((err) => {
  $("#matrix").textContent = `failed to start: ${err}`;
});
