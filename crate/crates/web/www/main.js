import init, { diagram, vector, closure } from "./pkg/sopq_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let current = null;

function status(msg, error = false) {
  $("status").textContent = msg;
  $("status").className = error ? "error" : "";
}

function el(tag, attrs = {}, text) {
  const e = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

// Projects onto the f1, f2 coefficients; points sharing a projection are merged.
function project(points, q) {
  const merged = new Map();
  for (const pt of points) {
    const x = q >= 1 ? pt.coeffs[0] : 0;
    const y = q >= 2 ? pt.coeffs[1] : 0;
    const key = `${x},${y}`;
    const m = merged.get(key) ?? { x, y, multiplicity: 0, forms: [] };
    m.multiplicity += pt.multiplicity;
    m.forms.push(pt);
    merged.set(key, m);
  }
  return [...merged.values()];
}

function draw(svgId, kind, points, q) {
  const svg = $(svgId);
  svg.replaceChildren(
    el("line", { class: "axis", x1: -3, y1: 0, x2: 3, y2: 0 }),
    el("line", { class: "axis", x1: 0, y1: -3, x2: 0, y2: 3 }),
  );
  for (const m of project(points, q)) {
    const c = el("circle", {
      cx: m.x, cy: -m.y, r: 0.12 + 0.03 * Math.min(m.multiplicity, 8),
      class: m.x === 0 && m.y === 0 ? "zero" : "",
    });
    c.append(el("title", {}, m.forms.map((f) => `${f.label}: ${f.multiplicity}`).join("\n")));
    c.addEventListener("click", () => {
      svg.querySelectorAll("circle").forEach((n) => n.classList.remove("selected"));
      c.classList.add("selected");
      chooseVector(kind, m.forms);
    });
    svg.append(c, el("text", { x: m.x + 0.2, y: -m.y - 0.2 }, String(m.multiplicity)));
  }
}

function chooseVector(kind, forms) {
  const box = $("vector-controls");
  const form = document.createElement("select");
  for (const f of forms) form.append(new Option(`${kind} ${f.label} (mult ${f.multiplicity})`, f.coeffs.join(",")));
  const index = document.createElement("input");
  Object.assign(index, { type: "number", min: 1, value: 1 });
  const show = () => {
    const f = forms.find((x) => x.coeffs.join(",") === form.value);
    index.max = f.multiplicity;
    showVector(kind, form.value, Number(index.value));
  };
  form.onchange = () => { index.value = 1; show(); };
  index.onchange = show;
  box.replaceChildren(form, " index ", index);
  show();
}

function matrixTable(rows, p) {
  const t = document.createElement("table");
  t.className = "matrix";
  rows.forEach((row, r) => {
    const tr = t.insertRow();
    if (r === p - 1) tr.className = "split-row";
    row.forEach((v, c) => {
      const td = tr.insertCell();
      td.textContent = v;
      if (v === "0") td.classList.add("zero");
      if (c === p - 1) td.classList.add("split-col");
    });
  });
  return t;
}

function showVector(kind, form, index) {
  const out = $("vector");
  try {
    const v = JSON.parse(vector(current.p, current.q, kind, form, index));
    const head = document.createElement("p");
    head.textContent = `${v.label}: eigen-identity ${v.eigen_identity ? "holds" : "FAILS"}`;
    out.replaceChildren(head, matrixTable(v.rows, current.p));
  } catch (e) {
    out.replaceChildren(Object.assign(document.createElement("p"), { className: "error", textContent: e.message }));
  }
}

function runClosure() {
  const out = $("closure");
  try {
    const t = JSON.parse(closure(current.p, current.q, Number($("seed").value)));
    const lines = [document.createElement("p")];
    lines[0].textContent = `${t.seed_label}: reached ${t.final_dim} of ${t.target_dim} in ${t.steps.length} steps`;
    const dims = [1, ...t.steps.map((s) => s.dim)];
    dims.forEach((d, k) => {
      const bar = document.createElement("div");
      bar.className = "bar";
      bar.style.width = `${(100 * d) / t.target_dim}%`;
      bar.title = k === 0 ? "seed" : `ad(${t.steps[k - 1].applied}) on vector ${t.steps[k - 1].to}: dim ${d}`;
      lines.push(bar);
    });
    out.replaceChildren(...lines);
  } catch (e) {
    out.replaceChildren(Object.assign(document.createElement("p"), { className: "error", textContent: e.message }));
  }
}

function compute(ev) {
  ev?.preventDefault();
  const p = Number($("p").value), q = Number($("q").value);
  try {
    const d = JSON.parse(diagram(p, q));
    current = d.signature;
    const { p: pn, q: qn } = current;
    draw("roots", "root", d.roots, qn);
    draw("weights", "weight", d.weights, qn);
    $("roots-cap").textContent = `roots of so(${pn},${qn}): total ${d.dim_so}`;
    $("weights-cap").textContent = `weights of s: total ${d.dim_s}`;
    $("seed").replaceChildren(...d.seeds.map((s, k) => new Option(s, k + 1)));
    $("vector-controls").replaceChildren();
    $("vector").replaceChildren();
    $("closure").replaceChildren();
    status(`(${pn},${qn})${d.signature.swapped ? " (p, q swapped)" : ""}: tables ${d.verified ? "verified" : "NOT verified"}` +
      (qn > 2 ? "; projected onto f1, f2" : ""));
  } catch (e) {
    status(e.message, true);
  }
}

await init();
$("sig").addEventListener("submit", compute);
$("run-closure").addEventListener("click", runClosure);
compute();
