import init, { recurrenceSwap, coherence, entropies } from "./pkg/oscnet_wasm.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

const OPS = {
  swap: {
    labels: ["P_R", "P_S"],
    run: (v) => recurrenceSwap(v.lambda, v.gamma, v.alpha, v.weak, v.tmax, v.samples),
  },
  coherence: {
    labels: ["joint", "mode 1", "mode 2", "isolated"],
    run: (v) => coherence(v.lambda, v.gamma1, v.gamma2, v.alpha, v.tmax, v.samples),
  },
  entropy: {
    labels: ["S12", "S1", "S2", "S1 + S2 - S12"],
    run: (v) => entropies(v.lambda, v.gamma, v.alpha, v.tmax, v.samples),
  },
};

let current = "swap";

function values(fieldset) {
  const v = {};
  for (const input of fieldset.querySelectorAll("input")) {
    v[input.name] = input.type === "checkbox" ? input.checked : Number(input.value);
  }
  return v;
}

function draw(data, labels) {
  const canvas = document.getElementById("plot");
  const ctx = canvas.getContext("2d");
  const stride = labels.length + 1;
  const rows = data.length / stride;
  const pad = 70;
  const w = canvas.width - 2 * pad;
  const h = canvas.height - 2 * pad;
  const xmax = data[(rows - 1) * stride];
  let ymin = 0;
  let ymax = 1;
  for (let k = 0; k < rows; k++) {
    for (let c = 1; c < stride; c++) {
      ymin = Math.min(ymin, data[k * stride + c]);
      ymax = Math.max(ymax, data[k * stride + c]);
    }
  }
  const x = (t) => pad + (w * t) / xmax;
  const y = (v) => pad + h - (h * (v - ymin)) / (ymax - ymin);

  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#888";
  ctx.lineWidth = 2;
  ctx.strokeRect(pad, pad, w, h);
  ctx.fillStyle = "#444";
  ctx.font = "26px system-ui";
  for (let i = 0; i <= 5; i++) {
    const t = (xmax * i) / 5;
    ctx.fillText(t.toFixed(1), x(t) - 20, pad + h + 34);
    const v = ymin + ((ymax - ymin) * i) / 5;
    ctx.fillText(v.toFixed(2), 4, y(v) + 8);
  }
  ctx.fillText("lambda t", pad + w / 2 - 50, canvas.height - 8);

  ctx.lineWidth = 3;
  for (let c = 1; c < stride; c++) {
    ctx.strokeStyle = COLORS[c - 1];
    ctx.beginPath();
    for (let k = 0; k < rows; k++) {
      const px = x(data[k * stride]);
      const py = y(data[k * stride + c]);
      k === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
    }
    ctx.stroke();
  }
  document.getElementById("legend").innerHTML = labels
    .map((l, i) => `<span style="color:${COLORS[i]}">&#9644; ${l}</span>`)
    .join("");
}

function update() {
  const error = document.getElementById("error");
  const op = OPS[current];
  try {
    const data = op.run(values(document.getElementById(current)));
    error.textContent = "";
    draw(data, op.labels);
  } catch (e) {
    error.textContent = e.message ?? String(e);
  }
}

await init();
for (const button of document.querySelectorAll("nav button")) {
  button.addEventListener("click", () => {
    current = button.dataset.op;
    for (const b of document.querySelectorAll("nav button")) b.classList.toggle("active", b === button);
    for (const f of document.querySelectorAll("fieldset")) f.classList.toggle("active", f.id === current);
    update();
  });
}
for (const input of document.querySelectorAll("fieldset input")) input.addEventListener("input", update);
update();
