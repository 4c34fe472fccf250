import init, { fringeCurves, rotatedPair, sternGerlach } from "./pkg/spinfringe_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);
const fmt = (x) => (x >= 0 ? " " : "") + x.toFixed(4);

function showValues() {
  for (const input of document.querySelectorAll("input[type=range]")) {
    const out = input.parentElement.querySelector("output");
    if (out) out.textContent = input.value;
  }
}

function drawFringe() {
  const samples = 800;
  const curves = fringeCurves(
    num("slits"), num("sep"), num("lambda"), num("thmax"), samples,
    $("conv").value === "full", $("trans").value === "v", $("detect").checked,
    $("sg").checked ? num("sgaxis") : NaN,
  );
  const theta = curves.subarray(0, samples);
  const model = curves.subarray(samples, 2 * samples);
  const oracle = curves.subarray(2 * samples);

  const cv = $("fringe");
  const ctx = cv.getContext("2d");
  const pad = 30;
  const x = (t) => pad + ((t - theta[0]) / (theta[samples - 1] - theta[0])) * (cv.width - 2 * pad);
  const y = (v) => cv.height - pad - v * (cv.height - 2 * pad);
  ctx.clearRect(0, 0, cv.width, cv.height);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, cv.width - 2 * pad, cv.height - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.fillText("I/I₀ = 1", 2, pad + 4);
  ctx.fillText(`θ = ${theta[0].toFixed(2)}`, pad, cv.height - 8);
  ctx.fillText(`${theta[samples - 1].toFixed(2)}`, cv.width - pad - 20, cv.height - 8);

  const line = (data, color, dash) => {
    ctx.beginPath();
    ctx.setLineDash(dash);
    ctx.strokeStyle = color;
    data.forEach((v, k) => (k ? ctx.lineTo(x(theta[k]), y(v)) : ctx.moveTo(x(theta[k]), y(v))));
    ctx.stroke();
    ctx.setLineDash([]);
  };
  line(oracle, "#2471a3", [5, 4]);
  line(model, "#c0392b", []);

  let hi = -Infinity, lo = Infinity, diff = 0;
  model.forEach((v, k) => {
    hi = Math.max(hi, v);
    lo = Math.min(lo, v);
    diff = Math.max(diff, Math.abs(v - oracle[k]));
  });
  const vis = hi + lo > 0 ? (hi - lo) / (hi + lo) : 0;
  $("fringe-stats").textContent = `visibility ${vis.toFixed(3)} · max |model − classical| ${diff.toExponential(2)}`;
}

function drawPair() {
  const [pp, pm, mp, mm, cu, cv] = rotatedPair(num("alpha"), num("beta"));
  const amps = [["|++⟩", pp], ["|+−⟩", pm], ["|−+⟩", mp], ["|−−⟩", mm], ["c_u", cu], ["c_v", cv]];
  const canvas = $("pair");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const mid = canvas.height / 2, w = canvas.width / amps.length;
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(0, mid);
  ctx.lineTo(canvas.width, mid);
  ctx.stroke();
  amps.forEach(([name, v], k) => {
    ctx.fillStyle = k < 4 ? "#7d3c98" : "#117a65";
    ctx.fillRect(k * w + w * 0.25, mid, w * 0.5, -v * (mid - 20));
    ctx.fillStyle = "#333";
    ctx.fillText(name, k * w + w * 0.4, canvas.height - 4);
  });
  const d = num("beta") - num("alpha");
  $("pair-text").textContent =
    `amplitudes  ${[pp, pm, mp, mm].map(fmt).join("  ")}\n` +
    `u/v coords  c_u = ${fmt(cu)}  c_v = ${fmt(cv)}   (β − α = ${d.toFixed(3)})\n` +
    `P(u registers) = ${(cu * cu).toFixed(4)}   P(v registers) = ${(cv * cv).toFixed(4)}`;
}

function drawMeasurement() {
  const out = sternGerlach(num("phi"), num("axis"));
  const [tu, tv] = out;
  let text = `screen transmission after the stage: u ${tu.toFixed(4)}, v ${tv.toFixed(4)}\n` +
    `without the stage:                  u ${(Math.cos(num("phi")) ** 2).toFixed(4)}\n\n`;
  for (let k = 2; k < out.length; k += 5) {
    const [w, ...amps] = out.subarray(k, k + 5);
    text += `outcome weight ${w.toFixed(4)}  state ${Array.from(amps).map(fmt).join("  ")}\n`;
  }
  $("sg-text").textContent = text;
}

function update() {
  showValues();
  try {
    drawFringe();
    drawPair();
    drawMeasurement();
    $("error").textContent = "";
  } catch (e) {
    $("error").textContent = String(e.message || e);
  }
}

await init();
for (const el of document.querySelectorAll("input, select")) el.addEventListener("input", update);
update();
