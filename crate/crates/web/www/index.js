import init, { motivic_dims, brackets, cohomology } from "./pkg/gradedlie_web.js";

const $ = (id) => document.getElementById(id);

function show(id, json, format) {
  const out = $(id);
  const r = JSON.parse(json);
  out.classList.toggle("error", !r.ok);
  out.textContent = r.ok ? format(r) : "error: " + r.error;
}

function table(rows) {
  return rows.map((e) => `${String(e.weight).padStart(6)}  ${e.dim}`).join("\n");
}

function runMotivic() {
  const n = (id) => Number($(id).value);
  show("out-motivic", motivic_dims(n("r1"), n("r2"), n("s"), n("bound")), (r) => {
    const gens = r.generators.map((g) => `${g.label}@${g.weight}`).join(" ") || "none";
    return `${r.signature}\ngenerators: ${gens}\nweight  dim\n${table(r.dims)}`;
  });
}

function runBrackets() {
  show("out-brackets", brackets($("f").value, $("g").value), (r) =>
    `[f, g] = ${r.lie}\n{f, g} = ${r.ihara}\nweight ${r.ihara_weight ?? "-"}`);
}

function runCohomology() {
  show("out-cohomology", cohomology($("pres").value, Number($("maxdeg").value)), (r) =>
    r.h.map((h) => `H^${h.degree}: ` + (h.nonzero.map((e) => `${e.weight}:${e.dim}`).join(" ") || "0")).join("\n"));
}

await init();
$("run-motivic").onclick = runMotivic;
$("run-brackets").onclick = runBrackets;
$("run-cohomology").onclick = runCohomology;
runMotivic();
