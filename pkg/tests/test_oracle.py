import pytest

from graphchain import oracle
from graphchain.graph import LabeledDag
from graphchain.mems import NodeMem, StringMem, find_node_mems

TWO = LabeledDag.from_edges(["AC", "GT"], [(1, 2)])


def test_lcs_dp():
    assert oracle.lcs_dp("ACGT", "AGCT") == 3
    assert oracle.lcs_dp("AGCT", "ACGT") == 3
    assert oracle.lcs_dp("GATTACA", "GATTACA") == 7
    assert oracle.lcs_dp("A", "C") == 0


def test_graph_lcs_bruteforce():
    assert oracle.graph_lcs_bruteforce(TWO, "AGT") == 3
    single = LabeledDag.from_edges(["ACGTT"], [])
    assert oracle.graph_lcs_bruteforce(single, "CTTA") == oracle.lcs_dp("CTTA", "ACGTT")


def test_path_limit():
    # 20 diamonds in series: 2^20 source-to-sink paths
    labels, edges = ["A"], []
    top = 1
    for _ in range(20):
        a, b, c = len(labels) + 1, len(labels) + 2, len(labels) + 3
        labels += ["C", "G", "T"]
        edges += [(top, a), (top, b), (a, c), (b, c)]
        top = c
    dag = LabeledDag.from_edges(labels, edges)
    with pytest.raises(oracle.OracleLimitError):
        oracle.graph_lcs_bruteforce(dag, "ACGT")


def test_graph_mems_cross_nodes():
    mems = oracle.enumerate_graph_mems(TWO, "CGT")
    assert oracle.GraphMem(1, 3, 2, (1, 2), 2) in mems
    assert oracle.enumerate_graph_mems(TWO, "NN") == []


def test_graph_mem_with_ambiguous_left_extension():
    # in-neighbours end in G and T, so a match at the start of node 3 preceded
    # by G in the query is still maximal
    dag = LabeledDag.from_edges(["CCG", "CCT", "ACGTA", "AT"], [(1, 3), (2, 3), (3, 4)])
    q = "CCGACGTAC"
    mems = oracle.enumerate_graph_mems(dag, q)
    assert oracle.GraphMem(4, 8, 1, (3,), 5) in mems
    # the longer match through node 1 is a MEM as well
    assert oracle.GraphMem(1, 8, 1, (1, 3), 5) in mems


def test_split_and_concatenate():
    gm = oracle.GraphMem(1, 3, 2, (1, 2), 2)
    pieces = oracle.split_at_nodes(TWO, gm)
    assert pieces == [NodeMem(1, 1, 1, 2, 2), NodeMem(2, 3, 2, 1, 2)]
    assert oracle.concatenable(TWO, *pieces)
    report = oracle.check_perfect_chain_decomposition(TWO, "CGT", find_node_mems(TWO, "CGT"))
    assert report.ok


def test_single_node_graph_mem_is_one_piece():
    dag = LabeledDag.from_edges(["ACG"], [])
    gm = oracle.GraphMem(1, 2, 2, (1,), 3)
    assert oracle.split_at_nodes(dag, gm) == [NodeMem(1, 2, 1, 2, 3)]


def test_missing_piece_is_reported():
    report = oracle.check_perfect_chain_decomposition(TWO, "CGT", [])
    assert not report.ok
    assert report.failures


def test_best_chain_small():
    assert oracle.best_chain_bruteforce([], oracle.STRING) == 0
    assert oracle.best_chain_bruteforce([StringMem(1, 1, 4)], oracle.STRING) == 4
    assert oracle.best_chain_bruteforce([NodeMem(2, 3, 2, 1, 2)], oracle.SYM, TWO) == 2
    anchors = find_node_mems(TWO, "AGT")
    assert oracle.best_chain_bruteforce(anchors, oracle.ASYM, TWO) == 3


def test_best_chain_limit():
    with pytest.raises(oracle.OracleLimitError):
        oracle.best_chain_bruteforce([StringMem(1, 1, 1)] * 13, oracle.STRING)


def test_anchor_restricted_lcs():
    assert oracle.anchor_restricted_lcs("ACGT", "ACGT", []) == 0
    assert oracle.anchor_restricted_lcs("ACGT", "ACGT", [StringMem(2, 2, 2)]) == 2
    # an all-MEM anchor set recovers the plain LCS
    from graphchain.mems import find_string_mems

    assert oracle.anchor_restricted_lcs("ACGT", "AGCT", find_string_mems("ACGT", "AGCT")) == 3


def test_width_and_links():
    diamond = LabeledDag.from_edges(["A"] * 4, [(1, 2), (1, 3), (2, 4), (3, 4)])
    assert oracle.width_bruteforce(diamond) == 2
    links = oracle.forward_links_bruteforce(diamond, [[1, 2, 4], [3]])
    assert links[1] == {(2, 0), (3, 0)}
    assert links[4] == set()
