/**
 * Search-driven exploration view.
 *
 * One in-flight search at a time; responses superseded by a newer submit are
 * discarded. The guess banner repeats the service's landmark verbatim — the
 * UI performs no selection logic of its own.
 */

import { fetchSpectrum } from "./api";
import { renderChart } from "./chart";
import { formatCount } from "./format";
import type { SpectrumResponse, YearEntry } from "./types";

export interface ViewState {
  rawQuery: string;
  mode: "pcs" | "rpys";
  loading: boolean;
  response: SpectrumResponse | null;
  errorText: string | null;
}

export interface AppOptions {
  baseUrl?: string;
  fixture?: string;
  openUrl?: (url: string) => void;
  pollMs?: number;
}

export interface App {
  state: ViewState;
  submit(rawQuery: string, mode: "pcs" | "rpys"): Promise<void>;
  dismissError(): void;
  root: HTMLElement;
}

export function createApp(root: HTMLElement, options: AppOptions = {}): App {
  const baseUrl = options.baseUrl ?? "";
  const openUrl = options.openUrl ?? ((url: string) => window.open(url, "_blank"));

  root.innerHTML = `
    <header class="masthead">
      <h1>Patent citation spectrum</h1>
      <p class="lede">Search US patent titles and abstracts, then trace the cited prior
      patents by grant year to surface the field's landmark patent.</p>
    </header>
    <form class="search" autocomplete="off">
      <input name="q" type="text" placeholder='keywords and "quoted phrases", comma-separated' />
      <select name="mode">
        <option value="pcs" selected>normalized (pcs)</option>
        <option value="rpys">detrended only (rpys)</option>
      </select>
      <button type="submit">Search</button>
    </form>
    <div class="banner error" hidden>
      <span class="error-text"></span>
      <button type="button" class="dismiss" aria-label="dismiss">&times;</button>
    </div>
    <section class="summary" hidden>
      <div class="stat"><span class="stat-value" id="stat-citing"></span>
        <span class="stat-label">granted US patents matched</span></div>
      <div class="stat"><span class="stat-value" id="stat-unique"></span>
        <span class="stat-label">unique patents referenced</span></div>
    </section>
    <div class="banner guess" hidden></div>
    <div class="chart-host" hidden></div>
    <footer class="provenance" hidden></footer>
  `;

  const form = root.querySelector("form.search") as HTMLFormElement;
  const input = form.querySelector("input[name=q]") as HTMLInputElement;
  const modeSelect = form.querySelector("select[name=mode]") as HTMLSelectElement;
  const errorBanner = root.querySelector(".banner.error") as HTMLElement;
  const errorText = errorBanner.querySelector(".error-text") as HTMLElement;
  const dismissButton = errorBanner.querySelector(".dismiss") as HTMLButtonElement;
  const summary = root.querySelector(".summary") as HTMLElement;
  const statCiting = root.querySelector("#stat-citing") as HTMLElement;
  const statUnique = root.querySelector("#stat-unique") as HTMLElement;
  const guessBanner = root.querySelector(".banner.guess") as HTMLElement;
  const chartHost = root.querySelector(".chart-host") as HTMLElement;
  const provenance = root.querySelector("footer.provenance") as HTMLElement;

  const state: ViewState = {
    rawQuery: "",
    mode: "pcs",
    loading: false,
    response: null,
    errorText: null,
  };

  let requestSeq = 0;

  function renderError(): void {
    errorBanner.hidden = state.errorText === null;
    errorText.textContent = state.errorText ?? "";
  }

  function renderResponse(): void {
    const response = state.response;
    if (response === null) return; // keep whatever was on screen
    summary.hidden = false;
    statCiting.textContent = formatCount(response.citing_count);
    statUnique.textContent = formatCount(response.unique_cited_count);

    guessBanner.hidden = false;
    if (response.landmark) {
      const { patent_id, document_url } = response.landmark;
      guessBanner.innerHTML =
        `Our guess: the foundational patent for this search is ` +
        `<a href="${document_url}" target="_blank" rel="noopener">US${patent_id}</a>.`;
    } else {
      guessBanner.textContent =
        "No year stands out positively for this search, so no landmark patent is named.";
    }

    chartHost.hidden = false;
    renderChart(chartHost, response, response.mode, {
      openYear(entry: YearEntry) {
        if (entry.document_url) openUrl(entry.document_url);
      },
    });

    provenance.hidden = false;
    provenance.textContent =
      `source: ${response.source} · data snapshot: ${response.api_snapshot_date} · ` +
      `query: ${response.query}`;
  }

  async function submit(rawQuery: string, mode: "pcs" | "rpys"): Promise<void> {
    const seq = ++requestSeq;
    state.rawQuery = rawQuery;
    state.mode = mode;
    state.loading = true;
    root.classList.add("loading");
    try {
      const response = await fetchSpectrum(baseUrl, rawQuery, mode, options.fixture, options.pollMs);
      if (seq !== requestSeq) return; // superseded by a newer search
      state.response = response;
      state.errorText = null;
    } catch (error) {
      if (seq !== requestSeq) return;
      state.errorText = error instanceof Error ? error.message : String(error);
    } finally {
      if (seq === requestSeq) {
        state.loading = false;
        root.classList.remove("loading");
        renderError();
        renderResponse();
      }
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submit(input.value, modeSelect.value as "pcs" | "rpys");
  });
  dismissButton.addEventListener("click", () => {
    state.errorText = null;
    renderError();
  });

  return { state, submit, dismissError: () => dismissButton.click(), root };
}
