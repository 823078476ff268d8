import init, { bounds, findMono, reduce } from "./pkg/multiramsey_demo.js";

const PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function circle(n, size) {
  const r = size / 2 - 24;
  return Array.from({ length: n }, (_, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    return [size / 2 + r * Math.cos(a), size / 2 + r * Math.sin(a)];
  });
}

function line(ctx, p, q, color, width) {
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.beginPath();
  ctx.moveTo(p[0], p[1]);
  ctx.lineTo(q[0], q[1]);
  ctx.stroke();
}

function dot(ctx, p, color, label) {
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(p[0], p[1], 5, 0, 2 * Math.PI);
  ctx.fill();
  if (label !== undefined) {
    ctx.fillStyle = "#222";
    ctx.fillText(String(label), p[0] + 7, p[1] - 7);
  }
}

function fail(el, e) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "err";
  p.textContent = String(e.message ?? e);
  el.appendChild(p);
}

function runBounds() {
  const out = $("b-out");
  try {
    const v = JSON.parse(bounds(num("b-m"), num("b-k")));
    const rows = [
      ["bipartite target", v.bipartite.log2, `d=${v.bipartite.d}, t=${v.bipartite.t}`],
      ["bipartite closed form", v.bipartite.closed_form_log2, ""],
    ];
    if (v.general) {
      rows.push(["general target", v.general.theorem_log2, `d=${v.general.d}, l=${v.general.l}`]);
      rows.push(["general, simplified", v.general.corollary_log2, ""]);
    }
    rows.push(["trivial", v.trivial_log2, "k^(kv), v = 2m"]);
    out.innerHTML = "<table><tr><th>bound</th><th>log2 N</th><th>parameters</th></tr>" +
      rows.map(([a, b, c]) => `<tr><td>${a}</td><td>${b.toFixed(2)}</td><td>${c}</td></tr>`).join("") +
      "</table>";
  } catch (e) {
    fail(out, e);
  }
}

function runFind() {
  const summary = $("f-summary");
  const canvas = $("f-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  try {
    const v = JSON.parse(findMono(num("f-n"), num("f-k"), $("f-target").value, num("f-seed"), $("f-general").checked));
    const pos = circle(v.n, canvas.width);
    const res = v.result;
    ctx.globalAlpha = 0.15;
    for (const [a, b, c] of v.colors) line(ctx, pos[a], pos[b], PALETTE[c % PALETTE.length], 1);
    ctx.globalAlpha = 1;
    const last = res.trace ? res.trace.sets[res.trace.sets.length - 1].members : [];
    for (let i = 0; i < v.n; i++) dot(ctx, pos[i], last.includes(i) ? "#000" : "#aaa", i);
    let text;
    if (res.status === "found") {
      const col = PALETTE[res.color % PALETTE.length];
      for (const [a, b] of v.target.edges) line(ctx, pos[res.embedding[a]], pos[res.embedding[b]], col, 4);
      for (const x of res.embedding) dot(ctx, pos[x], col);
      text = `Found a copy in color ${res.color} (${res.provenance}): ${res.embedding.join(", ")}.`;
    } else {
      text = `Not found: ${res.reason}. A copy ${v.copy_exists ? "does" : "does not"} exist.`;
    }
    if (res.trace) {
      const steps = res.trace.kinds.map((kd, i) => `${kd[0]}${res.trace.colors[i]}`).join(" ");
      text += ` Steps: ${steps || "none"}. Audit ${v.audit && v.audit.violations.length === 0 ? "passed" : "failed"}.`;
    }
    summary.textContent = text;
  } catch (e) {
    fail(summary, e);
  }
}

function runReduce() {
  const summary = $("r-summary");
  const canvas = $("r-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  try {
    const v = JSON.parse(reduce($("r-target").value, num("r-d")));
    const pos = circle(v.graph.n, canvas.width);
    const kept = new Set(v.reduction.residual_edges.map(([a, b]) => `${a},${b}`));
    for (const [a, b] of v.graph.edges) {
      const live = kept.has(`${a},${b}`);
      line(ctx, pos[a], pos[b], live ? "#1f77b4" : "#ddd", live ? 2 : 1);
    }
    const gone = new Set(v.reduction.u);
    for (let i = 0; i < v.graph.n; i++) dot(ctx, pos[i], gone.has(i) ? "#d62728" : "#222", i);
    summary.textContent = `Deleted ${v.reduction.u.length} vertices [${v.reduction.u.join(", ")}] ` +
      `at max degrees [${v.reduction.trace.join(", ")}]; ${v.reduction.residual_edges.length} edges remain.`;
  } catch (e) {
    fail(summary, e);
  }
}

await init();
$("b-run").addEventListener("click", runBounds);
$("f-run").addEventListener("click", runFind);
$("r-run").addEventListener("click", runReduce);
runBounds();
runFind();
runReduce();
