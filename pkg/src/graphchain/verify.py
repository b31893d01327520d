"""Randomized property suites comparing the algorithms with the oracles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import oracle
from .chaining import (
    ASYMMETRIC,
    GRAPH_SYMMETRIC,
    chain_dag_asymmetric,
    chain_dag_symmetric,
    chain_is_valid,
    chain_string_symmetric,
    coverage,
    lcs_graph,
)
from .cover import build_cover
from .graph import LabeledDag, reachability
from .mems import StringMem, find_node_mems, find_string_mems

SUITES = ("mems", "cover", "chain", "lcs", "properties")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    examples: list = field(default_factory=list)

    def check(self, ok: bool, detail=None) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.examples) < 5:
                self.examples.append(detail)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed}/{self.passed + self.failed}"


# -- generators -----------------------------------------------------------------------


def random_string(rng: random.Random, length: int, alphabet: str) -> str:
    return "".join(rng.choice(alphabet) for _ in range(length))


def random_dag(
    rng: random.Random,
    max_nodes: int = 10,
    max_edges: int = 15,
    max_label: int = 4,
    alphabet: str = "ACGT",
    min_nodes: int = 1,
) -> LabeledDag:
    n = rng.randint(min_nodes, max_nodes)
    labels = [random_string(rng, rng.randint(1, max_label), alphabet) for _ in range(n)]
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    edges = [(perm[a], perm[b]) for a, b in pairs[: rng.randint(0, min(max_edges, len(pairs)))]]
    return LabeledDag.from_edges(labels, edges)


def random_exact_anchors(rng: random.Random, q: str, t: str, count: int) -> list[StringMem]:
    """Exact matches that need not be maximal; duplicates and overlaps allowed."""
    hits = [(a, b) for a in range(len(q)) for b in range(len(t)) if q[a] == t[b]]
    out = []
    for _ in range(count):
        if not hits:
            break
        a, b = rng.choice(hits)
        k = 1
        while a + k < len(q) and b + k < len(t) and q[a + k] == t[b + k] and rng.random() < 0.7:
            k += 1
        out.append(StringMem(a + 1, b + 1, k))
    if out and rng.random() < 0.3:
        out.append(rng.choice(out))
    return out


def _alphabet(rng: random.Random) -> str:
    return rng.choice(("AC", "ACGT"))


# -- suites ---------------------------------------------------------------------------


def suite_mems(rng: random.Random, cases: int = 1000) -> SuiteResult:
    res = SuiteResult("node MEMs vs diagonal scan")
    for _ in range(cases):
        sigma = _alphabet(rng)
        dag = random_dag(rng, max_nodes=15, max_edges=20, max_label=8, alphabet=sigma)
        while dag.total_length > 60:
            dag = random_dag(rng, max_nodes=15, max_edges=20, max_label=8, alphabet=sigma)
        q = random_string(rng, rng.randint(1, 30), sigma)
        got = set(find_node_mems(dag, q))
        expected = set(oracle.brute_node_mems(dag, q))
        res.check(got == expected, (dag.labels, q))
    return res


def suite_string_mems(rng: random.Random, cases: int = 1000) -> SuiteResult:
    res = SuiteResult("string MEMs vs diagonal scan")
    for _ in range(cases):
        sigma = _alphabet(rng)
        q = random_string(rng, rng.randint(1, 30), sigma)
        t = random_string(rng, rng.randint(1, 30), sigma)
        res.check(find_string_mems(q, t) == oracle.brute_string_mems(q, t), (q, t))
    return res


def suite_cover(rng: random.Random, cases: int = 200) -> SuiteResult:
    res = SuiteResult("path cover minimality and forward links")
    for _ in range(cases):
        dag = random_dag(rng, max_nodes=8, max_edges=14)
        cover = build_cover(dag)
        valid = set().union(*map(set, cover.paths)) == set(dag.nodes) and all(dag.is_path(p) for p in cover.paths)
        minimal = cover.k == oracle.width_bruteforce(dag)
        expected = oracle.forward_links_bruteforce(dag, cover.paths)
        links = all(set(cover.forward[v]) == expected[v] for v in dag.nodes)
        res.check(valid and minimal and links, (dag.labels, dag.edges, cover.paths))
    return res


def _dag_anchor_instance(rng: random.Random, max_anchors: int):
    sigma = _alphabet(rng)
    dag = random_dag(rng, max_nodes=6, max_edges=8, max_label=4, alphabet=sigma)
    q = random_string(rng, rng.randint(1, 10), sigma)
    anchors = find_node_mems(dag, q)
    if len(anchors) > max_anchors:
        anchors = rng.sample(anchors, max_anchors)
    return dag, q, anchors


def suite_chain(rng: random.Random, cases: int = 300, max_anchors: int = 10) -> dict[str, SuiteResult]:
    """Each algorithm against exhaustive search under its own order and objective."""
    out = {
        "string": SuiteResult("string-symmetric chaining vs exhaustive"),
        "asym": SuiteResult("DAG asymmetric chaining vs exhaustive"),
        "sym": SuiteResult("DAG symmetric chaining vs exhaustive"),
    }
    for _ in range(cases):
        sigma = _alphabet(rng)
        q = random_string(rng, rng.randint(1, 10), sigma)
        t = random_string(rng, rng.randint(1, 10), sigma)
        mems = find_string_mems(q, t)
        if len(mems) > max_anchors:
            mems = rng.sample(mems, max_anchors)
        r = chain_string_symmetric(mems)
        ok = (
            r.coverage == oracle.best_chain_bruteforce(mems, oracle.STRING)
            and coverage(r.anchors) == r.coverage
            and chain_is_valid(None, r.anchors, "string-symmetric")
        )
        out["string"].check(ok, (q, t, mems))

        dag, q, anchors = _dag_anchor_instance(rng, max_anchors)
        cover = build_cover(dag)
        reach = reachability(dag)
        for key, fn, mode, omode in (
            ("asym", chain_dag_asymmetric, ASYMMETRIC, oracle.ASYM),
            ("sym", chain_dag_symmetric, GRAPH_SYMMETRIC, oracle.SYM),
        ):
            r = fn(dag, cover, anchors, len(q))
            ok = r.coverage == oracle.best_chain_bruteforce(anchors, omode, dag) and chain_is_valid(
                dag, r.anchors, mode, reach
            )
            out[key].check(ok, (dag.labels, dag.edges, q, anchors))
    return out


def suite_string_lcs(rng: random.Random, cases: int = 1000, max_len: int = 30) -> SuiteResult:
    res = SuiteResult("string chaining over all MEMs equals LCS")
    for _ in range(cases):
        sigma = _alphabet(rng)
        q = random_string(rng, rng.randint(1, max_len), sigma)
        t = random_string(rng, rng.randint(1, max_len), sigma)
        got = chain_string_symmetric(find_string_mems(q, t), query=q)
        expected = oracle.lcs_dp(q, t)
        res.check(got.coverage == expected == len(got.induced), (q, t, got.coverage, expected))
    return res


def suite_graph_lcs(rng: random.Random, cases: int = 500) -> SuiteResult:
    res = SuiteResult("graph LCS equals best source-to-sink path LCS")
    for _ in range(cases):
        sigma = _alphabet(rng)
        dag = random_dag(rng, max_nodes=10, max_edges=15, max_label=4, alphabet=sigma)
        q = random_string(rng, rng.randint(1, 15), sigma)
        got, _ = lcs_graph(dag, q)
        expected = oracle.graph_lcs_bruteforce(dag, q)
        res.check(got == expected, (dag.labels, dag.edges, q, got, expected))
    return res


def suite_perfect_chains(rng: random.Random, cases: int = 500, max_span: int = 4) -> SuiteResult:
    res = SuiteResult("graph MEMs decompose into perfect chains; |A| <= ||M||")
    for _ in range(cases):
        sigma = _alphabet(rng)
        dag = random_dag(rng, max_nodes=6, max_edges=8, max_label=3, alphabet=sigma)
        q = random_string(rng, rng.randint(1, 8), sigma)
        report = oracle.check_perfect_chain_decomposition(dag, q, find_node_mems(dag, q), max_span)
        res.check(report.ok, (dag.labels, dag.edges, q, report.failures[:2]))
    return res


def suite_anchor_lcs(rng: random.Random, cases: int = 300) -> SuiteResult:
    res = SuiteResult("chaining arbitrary exact anchors equals anchor-restricted LCS")
    for _ in range(cases):
        sigma = _alphabet(rng)
        q = random_string(rng, rng.randint(1, 15), sigma)
        t = random_string(rng, rng.randint(1, 15), sigma)
        anchors = random_exact_anchors(rng, q, t, rng.randint(0, 10))
        got = chain_string_symmetric(anchors).coverage
        res.check(got == oracle.anchor_restricted_lcs(q, t, anchors), (q, t, anchors))
    return res


def run_suite(name: str, seed: int = 0, scale: float = 1.0) -> list[SuiteResult]:
    rng = random.Random(seed)

    def n(x):
        return max(1, int(x * scale))

    if name == "mems":
        return [suite_string_mems(rng, n(1000)), suite_mems(rng, n(1000))]
    if name == "cover":
        return [suite_cover(rng, n(200))]
    if name == "chain":
        return list(suite_chain(rng, n(300)).values())
    if name == "lcs":
        return [suite_string_lcs(rng, n(1000)), suite_graph_lcs(rng, n(500))]
    if name == "properties":
        return [suite_perfect_chains(rng, n(500)), suite_anchor_lcs(rng, n(300))]
    raise ValueError(f"unknown suite {name!r}")


__all__ = ["SUITES", "SuiteResult", "random_dag", "random_exact_anchors", "random_string", "run_suite"]
