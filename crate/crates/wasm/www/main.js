import init, { stats_table, ladder_step, inner_product } from "./pkg/qspace_wasm.js";

const $ = (id) => document.getElementById(id);

function showError(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err.message ?? err);
  target.appendChild(p);
}

function table(rows) {
  const t = document.createElement("table");
  for (const row of rows) {
    const tr = document.createElement("tr");
    for (const cell of row) {
      const td = document.createElement("td");
      td.textContent = cell;
      tr.appendChild(td);
    }
    t.appendChild(tr);
  }
  return t;
}

function runStats() {
  const out = $("stats-table");
  try {
    const view = JSON.parse(stats_table($("stats-kind").value, +$("stats-particles").value, +$("stats-levels").value));
    $("stats-summary").textContent =
      `${view.count} microstates` + (view.probability ? `, each with probability ${view.probability}` : "");
    out.innerHTML = "";
    out.appendChild(table(view.rows.map((r) => [r.label])));
  } catch (err) {
    $("stats-summary").textContent = "";
    showError(out, err);
  }
}

let ladderState = "";

function ladder(op) {
  try {
    const view = JSON.parse(
      ladder_step($("ladder-kind").value, ladderState, op, +$("ladder-level").value, +$("ladder-levels").value),
    );
    ladderState = JSON.stringify(view.state);
    $("ladder-state").textContent = view.display || "0";
    $("ladder-norm").textContent = `norm ${view.norm.toFixed(6)}` + (view.null_norm ? " (null norm)" : "");
  } catch (err) {
    showError($("ladder-norm"), err);
  }
}

function resetLadder() {
  ladderState = "";
  $("ladder-state").textContent = "|)";
  $("ladder-norm").textContent = "norm 1";
}

function runInner() {
  const out = $("inner-delta");
  try {
    const view = JSON.parse(inner_product($("inner-kind").value, $("inner-left").value, $("inner-right").value));
    out.innerHTML = "";
    if (view.delta.length) {
      out.appendChild(table(view.delta));
    }
    $("inner-result").textContent =
      `inner product ${view.value[0]}` + ` (sorted kets: ${view.basis_value}, by full expansion: ${view.oracle})`;
  } catch (err) {
    $("inner-result").textContent = "";
    showError(out, err);
  }
}

await init();
$("stats-run").addEventListener("click", runStats);
$("ladder-create").addEventListener("click", () => ladder("create"));
$("ladder-annihilate").addEventListener("click", () => ladder("annihilate"));
$("ladder-reset").addEventListener("click", resetLadder);
$("ladder-kind").addEventListener("change", resetLadder);
$("inner-run").addEventListener("click", runInner);
runStats();
runInner();
