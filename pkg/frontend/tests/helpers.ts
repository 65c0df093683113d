import type { FetchLike } from "../src/api.js";

import datasets from "../fixtures/datasets.json";
import detailDifference from "../fixtures/detail_2_difference.json";
import detailOriginal from "../fixtures/detail_2_original.json";
import handle from "../fixtures/handle.json";
import maskDefault from "../fixtures/mask_default.json";
import maskStrict from "../fixtures/mask_strict.json";
import overviewAlpha0 from "../fixtures/overview_alpha0.json";
import overviewAlpha1 from "../fixtures/overview_alpha1.json";
import overviewFull from "../fixtures/overview_full.json";
import overviewSub from "../fixtures/overview_sub.json";
import timeline from "../fixtures/timeline.json";

export const fixtures = {
  datasets,
  handle,
  overviewFull,
  overviewSub,
  overviewAlpha0,
  overviewAlpha1,
  detailDifference,
  detailOriginal,
  maskDefault,
  maskStrict,
  timeline,
};

export const DATASET_ID: string = (handle as any).id;

function params(url: string): URLSearchParams {
  const q = url.indexOf("?");
  return new URLSearchParams(q < 0 ? "" : url.slice(q + 1));
}

// Routes URLs to recorded payloads the way the live service would.
export function routeFixture(url: string): unknown {
  const p = params(url);
  if (url.startsWith(`/api/datasets/${DATASET_ID}/overview`)) {
    if (p.get("alpha") === "0") return overviewAlpha0;
    if (p.get("alpha") === "1") return overviewAlpha1;
    if (p.get("from") === "2" && p.get("to") === "4") return overviewSub;
    return overviewFull;
  }
  if (url.startsWith(`/api/datasets/${DATASET_ID}/detail/2`)) {
    return p.get("kind") === "original" ? detailOriginal : detailDifference;
  }
  if (url.startsWith(`/api/datasets/${DATASET_ID}/mask`)) {
    return p.get("threshold") === "99" ? maskStrict : maskDefault;
  }
  if (url.startsWith(`/api/datasets/${DATASET_ID}/timeline`)) return timeline;
  if (url === "/api/datasets") return datasets;
  throw new Error(`no fixture for ${url}`);
}

export interface FakeFetch {
  fetch: FetchLike;
  calls: string[];
}

export function immediateFetch(): FakeFetch {
  const calls: string[] = [];
  const fetch: FetchLike = async (url) => {
    calls.push(url);
    const payload = structuredClone(routeFixture(url));
    return { ok: true, status: 200, json: async () => payload };
  };
  return { fetch, calls };
}

export interface GatedFetch extends FakeFetch {
  pending: () => string[];
  release: (match: string) => void;
  releaseAll: () => void;
}

// Responses wait until the test releases them, so resolution order is
// fully scripted.
export function gatedFetch(): GatedFetch {
  const calls: string[] = [];
  const waiting: Array<{ url: string; resolve: () => void }> = [];
  const fetch: FetchLike = (url) => {
    calls.push(url);
    return new Promise((resolveOuter) => {
      waiting.push({
        url,
        resolve: () => {
          const payload = structuredClone(routeFixture(url));
          resolveOuter({ ok: true, status: 200, json: async () => payload });
        },
      });
    });
  };
  return {
    fetch,
    calls,
    pending: () => waiting.map((w) => w.url),
    release: (match) => {
      const i = waiting.findIndex((w) => w.url.includes(match));
      if (i < 0) throw new Error(`nothing pending matches ${match}`);
      const [w] = waiting.splice(i, 1);
      w.resolve();
    },
    releaseAll: () => {
      while (waiting.length) waiting.shift()!.resolve();
    },
  };
}
