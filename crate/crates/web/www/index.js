import init, { order_effect, chsh, chsh_curve, schmidt } from "./pkg/relbell_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);
const fmt = (x, d = 4) => (x === null || x === undefined ? "n/a" : x.toFixed(d));

function show(el, text, bad) {
  el.textContent = text;
  el.classList.toggle("bad", !!bad);
}

function arrow(ctx, cx, cy, r, v, color, label) {
  const x = cx + r * v[0];
  const y = cy - r * v[1];
  ctx.strokeStyle = ctx.fillStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.lineTo(x, y);
  ctx.stroke();
  ctx.fillText(label, x + 4, y - 4);
}

function drawOrder() {
  const a = num("oe-a");
  const b = num("oe-b");
  $("oe-a-v").textContent = a.toFixed(4);
  $("oe-b-v").textContent = b.toFixed(4);
  const r = JSON.parse(order_effect(a, b));
  const out = $("oe-out");
  if (r.error) return show(out, r.error, true);

  const c = $("oe-canvas");
  const ctx = c.getContext("2d");
  const cx = c.width / 2, cy = c.height / 2, rad = c.width * 0.4;
  ctx.clearRect(0, 0, c.width, c.height);
  ctx.strokeStyle = "#ddd";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.arc(cx, cy, rad, 0, 2 * Math.PI);
  ctx.moveTo(cx - rad, cy); ctx.lineTo(cx + rad, cy);
  ctx.moveTo(cx, cy - rad); ctx.lineTo(cx, cy + rad);
  ctx.stroke();
  ctx.font = "13px sans-serif";
  arrow(ctx, cx, cy, rad, r.first, "#1565c0", "first");
  arrow(ctx, cx, cy, rad, r.second, "#2e7d32", "second");
  arrow(ctx, cx, cy, rad, r.state, "#c62828", "d");

  show(out,
    `P(first, then second) = ${fmt(r.forward)}\n` +
    `P(second, then first) = ${fmt(r.reverse)}\n` +
    `ratio                 = ${fmt(r.ratio, 3)}`);
}

function drawChsh() {
  const t = num("ch-t");
  const angles = ["ch-a1", "ch-a2", "ch-b1", "ch-b2"].map(num);
  $("ch-t-v").textContent = t.toFixed(3);
  const out = $("ch-out");
  if (angles.some(Number.isNaN)) return show(out, "angles must be numbers", true);
  const r = JSON.parse(chsh(t, ...angles));
  const curve = JSON.parse(chsh_curve(...angles, 181));

  const c = $("ch-canvas");
  const ctx = c.getContext("2d");
  const w = c.width, h = c.height, pad = 30;
  const sx = (x) => pad + (w - 2 * pad) * x / (Math.PI / 2);
  const sy = (y) => h - pad - (h - 2 * pad) * y / 3;
  ctx.clearRect(0, 0, w, h);
  ctx.font = "12px sans-serif";
  for (const [level, color, label] of [[2, "#888", "2"], [2 * Math.SQRT2, "#c62828", "2√2"]]) {
    ctx.strokeStyle = ctx.fillStyle = color;
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(pad, sy(level)); ctx.lineTo(w - pad, sy(level));
    ctx.stroke();
    ctx.fillText(label, 2, sy(level) + 4);
  }
  ctx.setLineDash([]);
  ctx.strokeStyle = "#1565c0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  curve.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
  ctx.stroke();
  ctx.fillStyle = "#c62828";
  ctx.beginPath();
  ctx.arc(sx(t), sy(r.statistic), 4, 0, 2 * Math.PI);
  ctx.fill();
  ctx.fillStyle = "#222";
  ctx.fillText("t", w - pad + 6, h - pad + 4);

  const terms = r.terms.map((x) => `  ${x.sign > 0 ? "+" : "-"} ${x.label} = ${fmt(x.value)}`).join("\n");
  show(out,
    `|S| = ${fmt(r.statistic, 6)}  ${r.violated ? "exceeds the classical bound" : "within the classical bound"}\n` +
    `${terms}\nSchmidt coefficients (${fmt(r.singular_values[0])}, ${fmt(r.singular_values[1])})`);
}

function drawSchmidt() {
  const cs = [0, 1, 2, 3].map((i) => num(`sc-${i}`));
  const out = $("sc-out");
  const r = JSON.parse(schmidt(...cs));
  const c = $("sc-canvas");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  if (r.error) return show(out, r.error, true);
  ctx.font = "13px sans-serif";
  r.singular_values.forEach((s, i) => {
    const y = 20 + i * 50;
    ctx.fillStyle = "#1565c0";
    ctx.fillRect(40, y, (c.width - 60) * s, 30);
    ctx.fillStyle = "#222";
    ctx.fillText(`s${i + 1}`, 10, y + 20);
  });
  show(out,
    `normalized  (${r.coefficients.map((x) => fmt(x)).join(", ")})\n` +
    `singular values (${fmt(r.singular_values[0], 6)}, ${fmt(r.singular_values[1], 6)})\n` +
    `rank ${r.rank}: ${r.separable ? "product state" : "entangled"}`);
}

await init();
for (const id of ["oe-a", "oe-b"]) $(id).addEventListener("input", drawOrder);
for (const id of ["ch-t", "ch-a1", "ch-a2", "ch-b1", "ch-b2"]) $(id).addEventListener("input", drawChsh);
for (const i of [0, 1, 2, 3]) $(`sc-${i}`).addEventListener("input", drawSchmidt);
drawOrder();
drawChsh();
drawSchmidt();
