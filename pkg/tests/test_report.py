from earcomb.combinat import dominance_pairs
from earcomb.report import dominance_table, flag_rows, g_vector, h_rows, report_inequalities


def test_hexagon_rows():
    lines = report_inequalities({"h_vector": [1, 4, 1]})
    assert lines[0] == "h_0≤h_1: 1≤4 ✓"
    assert lines[1] == "h_0≤h_2: 1≤1 ✓"
    assert lines[2] == "g=(1, 3) M-vector ✓"


def test_failing_rows_are_marked():
    rows = h_rows([1, 0, 2])
    assert rows[0]["ok"] is False
    assert report_inequalities({"h_vector": [1, 0, 2]})[0].endswith("✗")


def test_row_index_range():
    # only i < d/2 contributes
    assert [r["check"] for r in h_rows([1, 2, 2, 1])] == ["h_0≤h_1", "h_0≤h_3", "h_1≤h_2", "h_1≤h_2"]
    assert g_vector([1, 2, 2, 1]) == [1, 1]


def test_dominance_table_d4():
    rows = dominance_table(4)
    assert "{1} ◁ {1,3}" in rows
    assert len(rows) == len(dominance_pairs(4))


def test_flag_rows_use_dominating_pairs():
    flag = {T: 1 for pair in dominance_pairs(4) for T in pair}
    rows = flag_rows(flag, 4)
    assert rows and all(r["ok"] for r in rows)
