import init, { analyze, cross_section, export_obj, default_params } from "./pkg/girth_web.js";

const SLIDERS = ["chest_radius", "waist_radius", "hip_radius", "waist_y"];
const BANDS = { chest: "#f4d9d0", waist: "#d6e6f5", pelvis: "#dcefd6" };

let params = {};
let last = null;
let sectionY = null;

const $ = (id) => document.getElementById(id);

function currentParams() {
  const p = { ...params };
  for (const id of SLIDERS) p[id] = Number($(id).value);
  return JSON.stringify(p);
}

function showValues() {
  for (const id of SLIDERS) $(id + "_out").textContent = Number($(id).value).toFixed(3);
  $("step_out").textContent = $("step").value;
  $("knn_out").textContent = $("knn").value;
}

function update() {
  showValues();
  $("error").textContent = "";
  try {
    last = JSON.parse(analyze(currentParams(), Number($("step").value) / 1000, Number($("knn").value)));
  } catch (e) {
    last = null;
    $("error").textContent = String(e);
    clear($("signature"));
    return;
  }
  renderTable(last);
  drawSignature(last);
  drawSection(sectionY ?? last.measurements.waist_y);
}

function renderTable(r) {
  const m = r.measurements;
  const rows = ["chest", "waist", "pelvis"].map((k) => {
    const d = r.designed ? r.designed[k].perimeter.toFixed(4) : "";
    return `<tr><td>${k}</td><td>${m[k].toFixed(4)}</td><td>${d}</td><td>${m[k + "_y"].toFixed(3)}</td></tr>`;
  });
  $("results").innerHTML = rows.join("");
  $("stats").textContent =
    `${r.vertices} vertices, ${r.triangles} triangles, ${r.offsets.length} slices; ` +
    `axilla at y = ${r.axilla[1].toFixed(3)}`;
}

function clear(canvas) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  return ctx;
}

// Plot frame: y up the canvas, boundary length to the right.
function frame(r, canvas) {
  const pad = 40;
  const ys = r.offsets;
  const yMin = ys[ys.length - 1], yMax = ys[0];
  const lMax = Math.max(...r.lengths) * 1.05 || 1;
  return {
    x: (l) => pad + (l / lMax) * (canvas.width - 2 * pad),
    y: (y) => canvas.height - pad - ((y - yMin) / (yMax - yMin)) * (canvas.height - 2 * pad),
    yInv: (py) => yMin + ((canvas.height - pad - py) / (canvas.height - 2 * pad)) * (yMax - yMin),
    pad, lMax, yMin, yMax,
  };
}

function drawSignature(r) {
  const canvas = $("signature");
  const ctx = clear(canvas);
  const f = frame(r, canvas);
  for (const [name, [lo, hi]] of Object.entries(r.regions)) {
    ctx.fillStyle = BANDS[name];
    ctx.fillRect(f.pad, f.y(hi), canvas.width - 2 * f.pad, f.y(lo) - f.y(hi));
    ctx.fillStyle = "#555";
    ctx.fillText(name, canvas.width - f.pad - 40, f.y(hi) + 12);
  }
  ctx.strokeStyle = "#999";
  ctx.strokeRect(f.pad, f.pad, canvas.width - 2 * f.pad, canvas.height - 2 * f.pad);
  ctx.fillStyle = "#555";
  ctx.fillText(`${f.yMax.toFixed(2)} m`, 2, f.y(f.yMax) + 4);
  ctx.fillText(`${f.yMin.toFixed(2)} m`, 2, f.y(f.yMin) + 4);
  ctx.fillText(`${f.lMax.toFixed(2)} m`, canvas.width - f.pad - 20, canvas.height - f.pad + 16);

  ctx.strokeStyle = "#1f4e8c";
  ctx.beginPath();
  r.offsets.forEach((y, i) => {
    const px = f.x(r.lengths[i]), py = f.y(y);
    i ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
  });
  ctx.stroke();

  const m = r.measurements;
  ctx.fillStyle = "#c0392b";
  for (const k of ["chest", "waist", "pelvis"]) {
    ctx.beginPath();
    ctx.arc(f.x(m[k]), f.y(m[k + "_y"]), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
  if (sectionY !== null) {
    ctx.strokeStyle = "#333";
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(f.pad, f.y(sectionY));
    ctx.lineTo(canvas.width - f.pad, f.y(sectionY));
    ctx.stroke();
    ctx.setLineDash([]);
  }
}

function drawSection(y) {
  const canvas = $("section");
  const ctx = clear(canvas);
  let s;
  try {
    s = JSON.parse(cross_section(currentParams(), y));
  } catch (e) {
    $("error").textContent = String(e);
    return;
  }
  $("section_y").textContent = `y = ${y.toFixed(3)} m`;
  $("section_len").textContent = `${s.segments.length} segments, boundary length ${s.length.toFixed(4)} m`;
  const extent = 0.9;
  const scale = canvas.width / (2 * extent);
  const px = (x) => canvas.width / 2 + x * scale;
  const pz = (z) => canvas.height / 2 - z * scale;
  ctx.strokeStyle = "#ddd";
  ctx.beginPath();
  ctx.moveTo(0, canvas.height / 2); ctx.lineTo(canvas.width, canvas.height / 2);
  ctx.moveTo(canvas.width / 2, 0); ctx.lineTo(canvas.width / 2, canvas.height);
  ctx.stroke();
  ctx.strokeStyle = "#1f4e8c";
  ctx.lineWidth = 2;
  ctx.beginPath();
  for (const [x0, z0, x1, z1] of s.segments) {
    ctx.moveTo(px(x0), pz(z0));
    ctx.lineTo(px(x1), pz(z1));
  }
  ctx.stroke();
  ctx.lineWidth = 1;
}

$("signature").addEventListener("click", (ev) => {
  if (!last) return;
  const canvas = $("signature");
  const rect = canvas.getBoundingClientRect();
  const py = (ev.clientY - rect.top) * (canvas.height / rect.height);
  const f = frame(last, canvas);
  sectionY = Math.min(f.yMax, Math.max(f.yMin, f.yInv(py)));
  drawSignature(last);
  drawSection(sectionY);
});

$("download").addEventListener("click", () => {
  const blob = new Blob([export_obj(currentParams())], { type: "text/plain" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "body.obj";
  a.click();
  URL.revokeObjectURL(a.href);
});

await init();
params = JSON.parse(default_params());
for (const id of SLIDERS) {
  $(id).value = params[id];
  $(id).addEventListener("input", update);
}
for (const id of ["step", "knn"]) $(id).addEventListener("input", update);
update();
