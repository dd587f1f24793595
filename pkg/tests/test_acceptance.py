"""Acceptance suite: the ten exit criteria, one test each.

Every test prints an `ACCEPTANCE <k> (<name>): PASS|FAIL` line (visible with
pytest -s) and asserts the criterion at its stated tolerance.
"""

from __future__ import annotations

import json
import random
import time
from statistics import median

from graphnorms import (
    Decoration,
    certificate_from_json,
    complete,
    concentration_scan,
    constant_kernel,
    convexity_witness,
    cycle,
    decorated_density,
    density,
    density_bruteforce,
    dirac_d1,
    dirac_d2,
    dirac_d3,
    dirac_d4,
    disjoint_union,
    half_square_kernel,
    lp_embedding_check,
    path,
    sample_block_random,
    smoothness_witness,
    star,
    validate_certificate,
)
from conftest import graph_text, random_graph, random_kernel
from graphnorms.cli import main as cli_main


def _report(number: int, name: str, ok: bool, detail: str = "") -> None:
    print(f"ACCEPTANCE {number} ({name}): {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    assert ok, f"criterion {number} ({name}) failed: {detail}"


# ---------------------------------------------------------------------------
# 1. Oracle equivalence
# ---------------------------------------------------------------------------

def test_criterion_1_oracle_equivalence():
    rng = random.Random(2024)
    start = time.monotonic()
    worst = 0.0
    for _ in range(200):
        g = random_graph(rng, max_vertices=6)
        w = random_kernel(rng, max_parts=4, signed=True)
        fast = density(g, w)
        slow = density_bruteforce(g, w)
        rel = abs(fast - slow) / max(1.0, abs(slow))
        worst = max(worst, rel)
    elapsed = time.monotonic() - start
    ok = worst <= 1e-10 and elapsed < 10.0
    _report(1, "oracle equivalence", ok, f"worst rel err {worst:.2e}, {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 2. Exact identities
# ---------------------------------------------------------------------------

def test_criterion_2_exact_identities():
    graphs = {"K2": path(2), "K12": star(2), "C4": cycle(4), "C6": cycle(6)}
    u = half_square_kernel()
    half_square_exact = all(density(g, u) == 2.0 ** -g.vertex_count for g in graphs.values())
    constant_exact = all(density(g, constant_kernel(0.5)) == 0.5**g.edge_count for g in graphs.values())

    rng = random.Random(7)
    mult_ok = True
    for _ in range(30):
        g1 = random_graph(rng, max_vertices=5)
        g2 = random_graph(rng, max_vertices=5)
        w = random_kernel(rng, max_parts=3)
        whole = density(disjoint_union(g1, g2), w)
        split = density(g1, w) * density(g2, w)
        if abs(whole - split) > 1e-12 * max(1.0, abs(split)):
            mult_ok = False
            break
    ok = half_square_exact and constant_exact and mult_ok
    _report(2, "exact identities", ok,
            f"half-square {half_square_exact}, constant {constant_exact}, multiplicativity {mult_ok}")


# ---------------------------------------------------------------------------
# 3. Sequence-space embedding
# ---------------------------------------------------------------------------

def test_criterion_3_lp_embedding():
    rng = random.Random(99)
    worst = 0.0
    best_contrast = 0.0
    for g in (cycle(4), star(2)):
        for _ in range(20):
            depth = rng.randint(1, 10)
            a = tuple(rng.uniform(-1.5, 1.5) for _ in range(depth))
            report = lp_embedding_check(g, a, rel_tol=1e-10)
            worst = max(worst, report.rel_error)
            if report.contrast_sum > 1e-12:
                best_contrast = max(best_contrast, report.contrast_ratio)
    ok = worst <= 1e-10 and best_contrast >= 1.5
    _report(3, "sequence-space embedding", ok,
            f"worst rel err {worst:.2e}, best disconnected contrast {best_contrast:.2f}x")


# ---------------------------------------------------------------------------
# 4. Factorization over copies
# ---------------------------------------------------------------------------

def test_criterion_4_factorization():
    c4 = cycle(4)
    h = disjoint_union(c4, c4)
    rng = random.Random(4)
    ok = True
    worst = 0.0
    for _ in range(50):
        kernels = {}
        for e in h.sorted_edges:
            kernels[e] = sample_block_random(3, dirac_d2(), rng.randint(0, 10**9))
        d = Decoration(h, kernels)
        w1 = Decoration(c4, {e: kernels[e] for e in c4.sorted_edges})
        w2 = Decoration(c4, {(u, v): kernels[(u + 4, v + 4)] for u, v in c4.sorted_edges})
        whole = decorated_density(d)
        split = decorated_density(w1) * decorated_density(w2)
        rel = abs(whole - split) / max(1.0, abs(split))
        worst = max(worst, rel)
        if rel > 1e-12:
            ok = False
    _report(4, "factorization over copies", ok, f"worst rel err {worst:.2e}")


# ---------------------------------------------------------------------------
# 5. Refutation certificates
# ---------------------------------------------------------------------------

def test_criterion_5_refutations(tmp_path, capsys):
    c4, c6, k12, k3 = cycle(4), cycle(6), star(2), complete(3)

    def check(g, budget, seed=0):
        p = tmp_path / f"g{g.vertex_count}_{g.edge_count}.txt"
        p.write_text(graph_text(g))
        code = cli_main(["check", str(p), "--budget", str(budget), "--seed", str(seed)])
        out = capsys.readouterr().out
        return code, json.loads(out)

    code_a, verdict_a = check(disjoint_union(c4, c6), budget=50)
    cert_a = next(c for c in verdict_a["certificates"] if c["kind"] == "edge-count-mismatch")
    exact = cert_a["lhs"] == 2.0**10 and cert_a["rhs"] == 2.0**8
    ok_a = code_a == 3 and exact

    code_b, verdict_b = check(disjoint_union(c4, k12), budget=50)
    ok_b = code_b == 3 and any(c["kind"] == "avg-degree-violation" for c in verdict_b["certificates"])

    code_c, verdict_c = check(k3, budget=10_000, seed=0)
    holder = [c for c in verdict_c["certificates"] if c["kind"] == "holder-violation"]
    ok_c = code_c == 3 and bool(holder)
    if holder:
        cert = certificate_from_json(holder[0])
        valid, detail = validate_certificate(cert, margin=1e-6)
        ok_c = ok_c and valid

    ok = ok_a and ok_b and ok_c
    _report(5, "refutation certificates", ok,
            f"mixed cycles exact 2^10>2^8 {ok_a}, degree mismatch {ok_b}, triangle search {ok_c}")


# ---------------------------------------------------------------------------
# 6. No false refutations for known norming graphs
# ---------------------------------------------------------------------------

def test_criterion_6_known_norming_consistent(tmp_path, capsys):
    known = {
        "K2": path(2),
        "K12": star(2),
        "C4": cycle(4),
        "C6": cycle(6),
        "2xK12": disjoint_union(star(2), star(2)),
    }
    failures = []
    for name, g in known.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(graph_text(g))
        for seed in range(5):
            code = cli_main(["check", str(p), "--budget", "1000", "--seed", str(seed)])
            out = capsys.readouterr().out
            verdict = json.loads(out)
            if code != 0 or verdict["overall"] != "consistent-with-weakly-norming":
                failures.append((name, seed))
    _report(6, "known norming graphs stay consistent", not failures, f"failures: {failures}")


# ---------------------------------------------------------------------------
# 7. Convexity witnesses at desk scale
# ---------------------------------------------------------------------------

def test_criterion_7_convexity():
    c4 = cycle(4)
    start = time.monotonic()
    medians = {}
    seps = {}
    for n in (16, 32, 64, 128):
        ests = [convexity_witness(c4, 0.5, n, seed) for seed in range(20)]
        medians[n] = median(e.value for e in ests)
        seps[n] = median(e.separation for e in ests)
    elapsed = time.monotonic() - start
    far_apart = seps[128] >= 0.8
    small_deficiency = medians[128] <= 0.1
    decreasing = medians[16] > medians[32] > medians[64] > medians[128]
    ok = far_apart and small_deficiency and decreasing and elapsed < 60.0
    _report(
        7,
        "convexity witness trend",
        ok,
        f"sep@128 {seps[128]:.3f}, deficiency medians "
        f"{[round(medians[n], 4) for n in (16, 32, 64, 128)]}, {elapsed:.1f}s",
    )


# ---------------------------------------------------------------------------
# 8. Smoothness witnesses at desk scale
# ---------------------------------------------------------------------------

def test_criterion_8_smoothness():
    c4 = cycle(4)
    details = []
    ok = True
    for eps in (0.25, 0.5, 0.75):
        vals = [smoothness_witness(c4, eps, 128, seed).value for seed in range(20)]
        med = median(vals)
        close = abs(med - eps / 2.0) <= 0.1
        obstructed = med / eps >= 0.3
        ok = ok and close and obstructed
        details.append(f"eps={eps}: median {med:.4f} (target {eps / 2:.3f}, ratio {med / eps:.2f})")
    _report(8, "smoothness witness levels", ok, "; ".join(details))


# ---------------------------------------------------------------------------
# 9. Concentration of block-random densities
# ---------------------------------------------------------------------------

def test_criterion_9_concentration():
    c4 = cycle(4)
    mixtures = {
        "D1": dirac_d1(),
        "D2": dirac_d2(),
        "D3(0.5)": dirac_d3(0.5),
        "D4(0.5)": dirac_d4(0.5),
    }
    ok = True
    details = []
    for name, d in mixtures.items():
        rec = concentration_scan(c4, d, (16, 32, 64, 128), trials=20, seed=0, tolerance=0.02)
        ok = ok and rec.passed
        details.append(f"{name}: {[round(r['median_dev'], 4) for r in rec.rows]}")
    _report(9, "block-random concentration", ok, "; ".join(details))


# ---------------------------------------------------------------------------
# 10. Determinism
# ---------------------------------------------------------------------------

def test_criterion_10_determinism(tmp_path, capsys):
    c4 = cycle(4)
    mixed = disjoint_union(c4, cycle(6))
    gpath = tmp_path / "mixed.txt"
    gpath.write_text(graph_text(mixed))
    c4path = tmp_path / "c4.txt"
    c4path.write_text(graph_text(c4))
    kpath = tmp_path / "kernel.json"
    kpath.write_text(json.dumps({"measures": [0.5, 0.5], "values": [[1.0, 0.0], [0.0, 0.0]]}))
    cert_path = tmp_path / "cert.json"

    commands = [
        ["density", str(c4path), str(kpath)],
        ["check", str(gpath), "--budget", "50", "--seed", "1", "--certificate-out", str(cert_path)],
        ["moduli", str(c4path), "--kind", "convexity", "--eps-grid", "0.5", "--n-grid", "16,32", "--seeds", "0,1"],
        ["moduli", str(c4path), "--kind", "smoothness", "--eps-grid", "0.25,0.5", "--n-grid", "16", "--seeds", "0"],
        ["validate", str(cert_path)],
    ]
    ok = True
    for argv in commands:
        code1 = cli_main(argv)
        first = capsys.readouterr().out
        code2 = cli_main(argv)
        second = capsys.readouterr().out
        if code1 != code2 or first != second:
            ok = False
            break
    _report(10, "byte-identical reruns", ok)
