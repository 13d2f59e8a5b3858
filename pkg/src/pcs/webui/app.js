"use strict";
(() => {
  // src/api.ts
  var ApiError = class extends Error {
    constructor(status, message) {
      super(message);
      this.status = status;
    }
  };
  function isSpectrum(body) {
    return typeof body === "object" && body !== null && Array.isArray(body.years);
  }
  async function parseBody(response) {
    try {
      return await response.json();
    } catch {
      throw new ApiError(response.status, `unexpected response (${response.status})`);
    }
  }
  async function settle(response, baseUrl, pollMs) {
    const body = await parseBody(response);
    if (response.status === 202) {
      const ticket = body;
      return pollJob(baseUrl, ticket.status_url, pollMs);
    }
    if ((response.ok || response.status === 422) && isSpectrum(body)) {
      return body;
    }
    const detail = body.error?.message;
    throw new ApiError(response.status, detail ?? `request failed (${response.status})`);
  }
  async function pollJob(baseUrl, statusUrl, pollMs) {
    for (; ; ) {
      await new Promise((resolve) => setTimeout(resolve, pollMs));
      const response = await fetch(baseUrl + statusUrl);
      const body = await parseBody(response);
      if (response.ok && body.status === "running") continue;
      if ((response.ok || response.status === 422) && isSpectrum(body)) return body;
      const detail = body.error?.message;
      throw new ApiError(response.status, detail ?? `job failed (${response.status})`);
    }
  }
  async function fetchSpectrum(baseUrl, query, mode, fixture, pollMs = 750) {
    const params = new URLSearchParams({ q: query, mode });
    if (fixture) params.set("fixture", fixture);
    const response = await fetch(`${baseUrl}/api/spectrum?${params.toString()}`);
    return settle(response, baseUrl, pollMs);
  }

  // src/format.ts
  function formatCount(value) {
    return value.toLocaleString("en-US");
  }
  function formatScore(value) {
    if (value === 0) return "0";
    const formatted = value.toPrecision(3);
    const asNumber = Number(formatted);
    if (Math.abs(asNumber) >= 1e-3 && Math.abs(asNumber) < 1e6) {
      return String(asNumber);
    }
    return formatted;
  }

  // src/chart.ts
  var SVG_NS = "http://www.w3.org/2000/svg";
  function activeScore(entry, mode) {
    return mode === "rpys" ? entry.f_value : entry.pcs_value;
  }
  function niceTicks(min, max, count = 4) {
    if (max === min) return [min];
    const span = max - min;
    const rawStep = span / count;
    const magnitude = 10 ** Math.floor(Math.log10(rawStep));
    const residual = rawStep / magnitude;
    const step = (residual >= 5 ? 10 : residual >= 2 ? 5 : residual >= 1 ? 2 : 1) * magnitude;
    const start = Math.ceil(min / step) * step;
    const ticks = [];
    for (let tick = start; tick <= max + 1e-9; tick += step) {
      ticks.push(Number(tick.toPrecision(12)));
    }
    return ticks;
  }
  function computeLayout(entries, mode, width = 900, height = 360) {
    const margin = { top: 16, right: 64, bottom: 40, left: 64 };
    const plotWidth = width - margin.left - margin.right;
    const plotHeight = height - margin.top - margin.bottom;
    const n = Math.max(entries.length, 1);
    const slot = plotWidth / n;
    const barWidth = Math.max(1, slot * 0.7);
    const maxCount = Math.max(1, ...entries.map((e) => e.c_total));
    const scores = entries.map((e) => activeScore(e, mode));
    const scoreMax = Math.max(0, ...scores);
    const scoreMin = Math.min(0, ...scores);
    const scoreSpan = scoreMax - scoreMin || 1;
    return {
      width,
      height,
      margin,
      plotWidth,
      plotHeight,
      barX: (index) => margin.left + index * slot + (slot - barWidth) / 2,
      barWidth,
      yLeft: (count) => margin.top + plotHeight * (1 - count / maxCount),
      yRight: (score) => margin.top + plotHeight * (1 - (score - scoreMin) / scoreSpan),
      leftTicks: niceTicks(0, maxCount),
      rightTicks: niceTicks(scoreMin, scoreMax),
      scoreMin,
      scoreMax
    };
  }
  function smoothPath(points) {
    if (points.length === 0) return "";
    if (points.length === 1) return `M${points[0].x},${points[0].y}`;
    const path = [`M${points[0].x},${points[0].y}`];
    for (let i = 0; i < points.length - 1; i++) {
      const p0 = points[Math.max(0, i - 1)];
      const p1 = points[i];
      const p2 = points[i + 1];
      const p3 = points[Math.min(points.length - 1, i + 2)];
      const c1x = p1.x + (p2.x - p0.x) / 6;
      const c1y = p1.y + (p2.y - p0.y) / 6;
      const c2x = p2.x - (p3.x - p1.x) / 6;
      const c2y = p2.y - (p3.y - p1.y) / 6;
      path.push(`C${c1x},${c1y} ${c2x},${c2y} ${p2.x},${p2.y}`);
    }
    return path.join(" ");
  }
  function el(name, attrs = {}) {
    const node = document.createElementNS(SVG_NS, name);
    for (const [key, value] of Object.entries(attrs)) {
      node.setAttribute(key, String(value));
    }
    return node;
  }
  function renderChart(container, response, mode, handlers) {
    container.replaceChildren();
    const entries = response.years;
    const layout = computeLayout(entries, mode);
    const svg = el("svg", {
      viewBox: `0 0 ${layout.width} ${layout.height}`,
      role: "img",
      class: "spectrum-chart"
    });
    const axisY = layout.margin.top + layout.plotHeight;
    svg.append(
      el("line", {
        x1: layout.margin.left,
        y1: axisY,
        x2: layout.margin.left + layout.plotWidth,
        y2: axisY,
        class: "axis"
      })
    );
    for (const tick of layout.leftTicks) {
      const y = layout.yLeft(tick);
      const label = el("text", { x: layout.margin.left - 8, y: y + 4, class: "tick tick-left" });
      label.textContent = formatCount(tick);
      svg.append(label);
    }
    for (const tick of layout.rightTicks) {
      const y = layout.yRight(tick);
      const label = el("text", {
        x: layout.margin.left + layout.plotWidth + 8,
        y: y + 4,
        class: "tick tick-right"
      });
      label.textContent = formatScore(tick);
      svg.append(label);
    }
    const tooltip = document.createElement("div");
    tooltip.className = "chart-tooltip";
    tooltip.hidden = true;
    const labelEvery = Math.max(1, Math.ceil(entries.length / 14));
    entries.forEach((entry, index) => {
      const score = activeScore(entry, mode);
      const x = layout.barX(index);
      const bar = el("rect", {
        x,
        width: layout.barWidth,
        y: layout.yLeft(entry.c_total),
        height: Math.max(0, axisY - layout.yLeft(entry.c_total)),
        class: "bar"
      });
      svg.append(bar);
      if (index % labelEvery === 0) {
        const label = el("text", {
          x: x + layout.barWidth / 2,
          y: axisY + 16,
          class: "tick tick-x"
        });
        label.textContent = String(entry.year);
        svg.append(label);
      }
      const hit = el("rect", {
        x: layout.barX(index) - 1,
        y: layout.margin.top,
        width: layout.barWidth + 2,
        height: layout.plotHeight,
        class: entry.document_url ? "hit clickable" : "hit",
        "data-year": entry.year,
        "data-c-total": entry.c_total,
        "data-score": score
      });
      hit.addEventListener("mouseenter", () => {
        tooltip.textContent = `${entry.year} \u2014 citations: ${formatCount(entry.c_total)}, score: ${formatScore(score)}`;
        tooltip.hidden = false;
      });
      hit.addEventListener("mouseleave", () => {
        tooltip.hidden = true;
      });
      hit.addEventListener("click", () => {
        if (entry.document_url) handlers.openYear(entry);
      });
      svg.append(hit);
    });
    const linePoints = entries.map((entry, index) => ({
      x: layout.barX(index) + layout.barWidth / 2,
      y: layout.yRight(activeScore(entry, mode))
    }));
    svg.append(el("path", { d: smoothPath(linePoints), class: "score-line" }));
    container.append(svg, tooltip);
  }

  // src/app.ts
  function createApp(root2, options = {}) {
    const baseUrl = options.baseUrl ?? "";
    const openUrl = options.openUrl ?? ((url) => window.open(url, "_blank"));
    root2.innerHTML = `
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
    const form = root2.querySelector("form.search");
    const input = form.querySelector("input[name=q]");
    const modeSelect = form.querySelector("select[name=mode]");
    const errorBanner = root2.querySelector(".banner.error");
    const errorText = errorBanner.querySelector(".error-text");
    const dismissButton = errorBanner.querySelector(".dismiss");
    const summary = root2.querySelector(".summary");
    const statCiting = root2.querySelector("#stat-citing");
    const statUnique = root2.querySelector("#stat-unique");
    const guessBanner = root2.querySelector(".banner.guess");
    const chartHost = root2.querySelector(".chart-host");
    const provenance = root2.querySelector("footer.provenance");
    const state = {
      rawQuery: "",
      mode: "pcs",
      loading: false,
      response: null,
      errorText: null
    };
    let requestSeq = 0;
    function renderError() {
      errorBanner.hidden = state.errorText === null;
      errorText.textContent = state.errorText ?? "";
    }
    function renderResponse() {
      const response = state.response;
      if (response === null) return;
      summary.hidden = false;
      statCiting.textContent = formatCount(response.citing_count);
      statUnique.textContent = formatCount(response.unique_cited_count);
      guessBanner.hidden = false;
      if (response.landmark) {
        const { patent_id, document_url } = response.landmark;
        guessBanner.innerHTML = `Our guess: the foundational patent for this search is <a href="${document_url}" target="_blank" rel="noopener">US${patent_id}</a>.`;
      } else {
        guessBanner.textContent = "No year stands out positively for this search, so no landmark patent is named.";
      }
      chartHost.hidden = false;
      renderChart(chartHost, response, response.mode, {
        openYear(entry) {
          if (entry.document_url) openUrl(entry.document_url);
        }
      });
      provenance.hidden = false;
      provenance.textContent = `source: ${response.source} \xB7 data snapshot: ${response.api_snapshot_date} \xB7 query: ${response.query}`;
    }
    async function submit(rawQuery, mode) {
      const seq = ++requestSeq;
      state.rawQuery = rawQuery;
      state.mode = mode;
      state.loading = true;
      root2.classList.add("loading");
      try {
        const response = await fetchSpectrum(baseUrl, rawQuery, mode, options.fixture, options.pollMs);
        if (seq !== requestSeq) return;
        state.response = response;
        state.errorText = null;
      } catch (error) {
        if (seq !== requestSeq) return;
        state.errorText = error instanceof Error ? error.message : String(error);
      } finally {
        if (seq === requestSeq) {
          state.loading = false;
          root2.classList.remove("loading");
          renderError();
          renderResponse();
        }
      }
    }
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void submit(input.value, modeSelect.value);
    });
    dismissButton.addEventListener("click", () => {
      state.errorText = null;
      renderError();
    });
    return { state, submit, dismissError: () => dismissButton.click(), root: root2 };
  }

  // src/main.ts
  var root = document.getElementById("app");
  if (root) {
    const params = new URLSearchParams(window.location.search);
    const fixture = params.get("fixture") ?? void 0;
    const app = createApp(root, { fixture });
    const preset = params.get("q");
    if (preset) {
      const input = root.querySelector("input[name=q]");
      input.value = preset;
      void app.submit(preset, params.get("mode") ?? "pcs");
    }
  }
})();
