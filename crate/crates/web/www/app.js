import init, { orbit_census, hecke_fiber, groebner } from "./pkg/tamelang_web.js";

const $ = (id) => document.getElementById(id);

function table(head, rows) {
  const t = document.createElement("table");
  t.innerHTML = "<tr>" + head.map((h) => `<th>${h}</th>`).join("") + "</tr>";
  for (const r of rows) {
    const tr = t.insertRow();
    for (const c of r) tr.insertCell().textContent = c;
  }
  return t;
}

function show(out, f) {
  out.replaceChildren();
  try {
    f(out);
  } catch (e) {
    out.innerHTML = `<span class="error">${e.message ?? e}</span>`;
  }
}

function bind(id, handler) {
  $(id).addEventListener("submit", (ev) => {
    ev.preventDefault();
    const data = Object.fromEntries(new FormData(ev.target));
    show($(id + "-out"), (out) => handler(data, out));
  });
}

await init();

bind("census", ({ q, d }, out) => {
  const r = JSON.parse(orbit_census(Number(q), Number(d)));
  out.append(table(["orbit", "size", "#Aut"], r.orbits.map((o) => [o.label, o.size, o.aut])));
  out.append(`\n${r.orbits.length} orbits, ${r.total} line triples, #Aut(E) = ${r.aut_bundle}, mass ${r.mass}`);
});

bind("hecke", ({ label, x, q }, out) => {
  const r = JSON.parse(hecke_fiber(label, Number(x), Number(q)));
  out.append(`representative lines at 0, 1, ∞: ${r.representative.join(" ")}\n`);
  out.append(table(["target orbit", "lines ℓ_x"], r.fiber.map((e) => [e.label, e.count])));
  out.append("\nAtkin–Lehner: " + r.atkin_lehner.map((a) => `AL_${a.at} → ${a.label}`).join(", "));
});

bind("gb", ({ vars, gens, probe }, out) => {
  const r = JSON.parse(groebner(vars, gens, probe));
  out.append(`reduced basis (grevlex):\n  ${r.basis.join("\n  ")}\nKrull dimension ${r.krull_dim}`);
  if (r.member !== undefined) {
    out.append(`\nnormal form of probe: ${r.normal_form}\nmember: ${r.member}, in radical: ${r.radical_member}`);
  }
});

for (const id of ["census", "hecke", "gb"]) $(id).requestSubmit();
