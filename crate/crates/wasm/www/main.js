import init, { menu_report, excess_curve, werner_curve } from "./pkg/qclaim_wasm.js";

const PAYOUTS = new Float64Array([
  1, 2, 1, 1,  1, 1, 1, 1,  2, 1, 1, 1,
  1, 1, 1, 3,  1, 1, 2, 1,  1, 1, 1, 1,
  3, 1, 1, 1,  1, 2, 1, 1,  1, 1, 2, 2,
]);

function plot(canvas, series, { xmin, xmax, ymin, ymax, zero }) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  const sx = (x) => pad + ((x - xmin) / (xmax - xmin)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - ymin) / (ymax - ymin)) * (h - 2 * pad);
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.fillText(String(ymax.toFixed(2)), 2, pad + 4);
  ctx.fillText(String(ymin.toFixed(2)), 2, h - pad);
  ctx.fillText(String(xmin), pad, h - pad + 14);
  ctx.fillText(String(xmax), w - pad - 8, h - pad + 14);
  if (zero) {
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(sx(xmin), sy(0));
    ctx.lineTo(sx(xmax), sy(0));
    ctx.stroke();
    ctx.setLineDash([]);
  }
  series.forEach(({ points, color, label }, k) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    points.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    ctx.stroke();
    ctx.fillStyle = color;
    ctx.fillText(label, w - pad - 180, pad + 16 + 14 * k);
  });
}

function renderMenu() {
  const amps = new Float64Array([0, 1, 2, 3].map((i) => Number(document.getElementById(`a${i}`).value)));
  const power = Number(document.getElementById("utility").value);
  const out = document.getElementById("menu");
  let report;
  try {
    report = JSON.parse(menu_report(amps, PAYOUTS, power));
  } catch (e) {
    out.innerHTML = `<p class="err">${e}</p>`;
    return;
  }
  const rows = report.probabilities
    .map((probs, r) => {
      const cls = r === report.chosen_index ? ' class="chosen"' : "";
      const cells = probs.map((p) => `<td>${p.toFixed(4)}</td>`).join("");
      const pays = Array.from(PAYOUTS.slice(4 * r, 4 * r + 4)).join(" / ");
      return `<tr${cls}><td>${r}</td><td>${pays}</td>${cells}<td>${report.scores[r].toFixed(6)}</td></tr>`;
    })
    .join("");
  out.innerHTML = `<table><tr><th>contract</th><th>payouts</th><th colspan="4">outcome probabilities</th><th>score</th></tr>${rows}</table>`;
}

function renderExcess() {
  const q0 = Number(document.getElementById("q0").value);
  document.getElementById("q0v").textContent = q0.toFixed(2);
  const flat = excess_curve(q0, 200);
  const factor = [];
  const bound = [];
  for (let i = 0; i < flat.length; i += 3) {
    factor.push([flat[i], flat[i + 1]]);
    bound.push([flat[i], flat[i + 2]]);
  }
  const ymax = Math.min(6, Math.max(...factor.map((p) => p[1])));
  plot(document.getElementById("excess"), [
    { points: factor.filter((p) => p[1] <= ymax), color: "#1f77b4", label: "excess factor" },
    { points: bound.filter((p) => p[1] <= ymax), color: "#d62728", label: "1 + KL(p||q)" },
  ], { xmin: 0, xmax: 1, ymin: 1, ymax });
}

function renderWerner() {
  const flat = werner_curve(101);
  const cov = [];
  const minEig = [];
  for (let i = 0; i < flat.length; i += 4) {
    cov.push([flat[i], flat[i + 1]]);
    minEig.push([flat[i], flat[i + 2]]);
  }
  plot(document.getElementById("werner"), [
    { points: cov, color: "#2ca02c", label: "cov(Z, Z)" },
    { points: minEig, color: "#9467bd", label: "min eig of partial transpose" },
  ], { xmin: 0, xmax: 1, ymin: -0.6, ymax: 1.05, zero: true });
}

await init();
for (const id of ["a0", "a1", "a2", "a3", "utility"]) document.getElementById(id).addEventListener("input", renderMenu);
document.getElementById("q0").addEventListener("input", renderExcess);
renderMenu();
renderExcess();
renderWerner();
