// Built with: wasm-bindgen --target web --out-dir www/pkg nscode_web.wasm
import init, { explore, family_rows, pk_rows } from "./pkg/nscode_web.js";

const $ = (id) => document.getElementById(id);

// Draws the (a,b) quadrant with a at the bottom-left, b going up.
function drawGrid(canvas, span, cells) {
  const ctx = canvas.getContext("2d");
  const size = canvas.width / span;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#eee";
  for (let i = 0; i <= span; i++) {
    ctx.beginPath();
    ctx.moveTo(i * size, 0); ctx.lineTo(i * size, canvas.height);
    ctx.moveTo(0, i * size); ctx.lineTo(canvas.width, i * size);
    ctx.stroke();
  }
  for (const c of cells) {
    if (!c.pair || c.pair.a >= span || c.pair.b >= span) continue;
    const x = c.pair.a * size;
    const y = canvas.height - (c.pair.b + 1) * size;
    if (c.fill) {
      ctx.fillStyle = c.fill;
      ctx.fillRect(x + 1, y + 1, size - 2, size - 2);
    }
    if (c.stroke) {
      ctx.strokeStyle = c.stroke;
      ctx.lineWidth = 2;
      ctx.strokeRect(x + 1, y + 1, size - 2, size - 2);
      ctx.lineWidth = 1;
    }
  }
}

function spanFor(pairs) {
  let m = 4;
  for (const p of pairs) if (p) m = Math.max(m, p.a + 1, p.b + 1);
  return Math.min(64, m);
}

const fmt = (p) => (p ? `[${p.a},${p.b}]` : "-");

function showPoint() {
  const v = JSON.parse(explore($("point").value));
  if (v.error) {
    $("point-out").textContent = v.error;
    return;
  }
  $("point-out").textContent =
    `t^${v.n} = ${fmt(v.pair)}\nw^${v.w} = <${v.pair.a},${v.pair.b}>\n` +
    `previous ${fmt(v.before)}, next ${fmt(v.after)}`;
  const cells = [
    { pair: v.before, fill: "#ddd" },
    { pair: v.after, fill: "#ddd" },
    { pair: v.pair, fill: "#d33" },
  ];
  drawGrid($("point-grid"), spanFor([v.pair, v.after]), cells);
}

function rowCells(row) {
  const cells = row.terms.map((p) => ({ pair: p, fill: "#8ad" }));
  cells.push({ pair: row.dominant, fill: "#d33" });
  cells.push({ pair: row.expected, stroke: "#080" });
  cells.push({ pair: row.pair, stroke: "#000" });
  return cells;
}

function fillList(list, rows, label, grid) {
  list.replaceChildren();
  for (const row of rows) {
    const div = document.createElement("div");
    div.textContent = `${label(row)}  ${row.ok ? "ok  " : "FAIL"}  ${row.poly}`;
    if (!row.ok) div.className = "fail";
    div.onclick = () => {
      const cells = rowCells(row);
      drawGrid(grid, spanFor([row.pair, ...row.terms]), cells);
    };
    list.appendChild(div);
  }
  if (rows.length) list.lastChild.onclick();
}

function showFamily() {
  const fam = $("family").value;
  const rows = JSON.parse(family_rows(fam, Number($("family-n").value)));
  if (rows.error) {
    $("family-summary").textContent = rows.error;
    return;
  }
  const bad = rows.filter((r) => !r.ok).length;
  $("family-summary").textContent = `${rows.length} terms, ${bad} violating the condition`;
  fillList($("family-list"), rows, (r) => `n=${r.n} ${fmt(r.pair)}`, $("family-grid"));
}

function showPk() {
  const rows = JSON.parse(pk_rows(Number($("pk-k").value)));
  if (rows.error) {
    $("pk-summary").textContent = rows.error;
    return;
  }
  const bad = rows.filter((r) => !r.ok).length;
  $("pk-summary").textContent = `${rows.length} values of k, ${bad} failing dominance`;
  // Reuse the family layout: the bound for <a,b> is <a-1,b>, or at most <0,b-1>.
  const shaped = rows.map((r) => ({
    ...r,
    expected: r.pair.a > 0 ? { a: r.pair.a - 1, b: r.pair.b } : r.pair.b > 0 ? { a: 0, b: r.pair.b - 1 } : null,
  }));
  fillList($("pk-list"), shaped, (r) => `k=${r.k} <${r.pair.a},${r.pair.b}>`, $("pk-grid"));
}

await init();
$("point-go").onclick = showPoint;
$("point").onkeydown = (e) => e.key === "Enter" && showPoint();
$("family-go").onclick = showFamily;
$("pk-go").onclick = showPk;
showPoint();
showFamily();
showPk();
