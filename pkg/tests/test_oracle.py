import pytest
from hypothesis import given
from hypothesis import strategies as st

from mutatree import oracle
from mutatree.models import MutationModel as M
from mutatree.oracle import MutConfig, OrderedTree, count_row, enumerate_configs, gen_binary_trees, gen_trees
from mutatree.seqio import CountRow, closed_form_rows
from mutatree.treealg import catalan


def test_text_form():
    path = OrderedTree.parse("(((())))")
    assert path.edges == 3
    star = OrderedTree.parse("(()()())")
    assert star.edges == 3 and star.degree == 3
    assert OrderedTree.parse("()").vertices == 1
    for bad in ("(()", "())", "()()", "(x)", ""):
        with pytest.raises(ValueError):
            OrderedTree.parse(bad)


@pytest.mark.parametrize("n", range(8))
def test_gen_trees_counts_and_order(n):
    trees = gen_trees(n)
    texts = [t.to_parens() for t in trees]
    assert len(trees) == catalan(n)
    assert len(set(texts)) == len(texts)
    assert texts == sorted(texts)
    assert all(t.edges == n for t in trees)
    assert all(OrderedTree.parse(s) == t for s, t in zip(texts, trees))


def test_gen_trees_examples():
    assert len(gen_trees(3)) == 5
    assert gen_trees(0) == [OrderedTree()]
    assert len(gen_trees(10)) == 16796


def test_size_limits():
    with pytest.raises(oracle.SizeLimit):
        gen_trees(13)
    with pytest.raises(oracle.SizeLimit):
        gen_binary_trees(13)
    with pytest.raises(oracle.SizeLimit):
        list(enumerate_configs(M.ENT, 9))
    with pytest.raises(oracle.SizeLimit):
        oracle.ent_count_row_product(12)


def test_binary_trees():
    assert len(gen_binary_trees(2)) == 2
    assert len(gen_binary_trees(3)) == 5
    for k in range(7):
        trees = gen_binary_trees(k)
        assert len(trees) == catalan(k)
        for t in trees:
            assert t.vertices == 2 * k + 1
            assert all(len(c) in (0, 2) for c in t.layout.children)


@given(st.integers(min_value=0, max_value=7), st.data())
def test_parse_print_roundtrip(n, data):
    t = data.draw(st.sampled_from(gen_trees(n)))
    assert OrderedTree.parse(t.to_parens()) == t
    lay = t.layout
    assert sum(lay.size[c] for c in lay.children[0]) == n


def test_figure_counts():
    assert len(list(enumerate_configs(M.SHORT_LIVED, 3))) == 6
    assert count_row(M.TOGGLE, 2) == CountRow(2, 10, 30, 16)
    assert len(list(enumerate_configs(M.ENT, 2))) == 12
    assert count_row(M.TOGGLE_H1, 3) == CountRow(3, 14, 56, 21)
    assert count_row(M.RIGHT_PATH_STAR, 3) == CountRow(3, 10, 40, 25)


def test_count_row_examples():
    assert count_row(M.RIGHT_PATH, 0) == CountRow(0, 1, 1, 1)
    # two trees with 2 internal vertices, 5 mutator positions each
    assert count_row(M.BINARY_COMPLETE, 2) == CountRow(2, 10, 50, 22)


@pytest.mark.parametrize("model", list(M))
@pytest.mark.parametrize("n", range(6))
def test_configs_are_admissible(model, n):
    seen = set()
    for cfg in enumerate_configs(model, n):
        lay = cfg.tree.layout
        key = str(cfg)
        assert key not in seen
        seen.add(key)
        m = cfg.mutator
        assert 0 <= m < cfg.tree.vertices
        assert m in cfg.new_type
        assert len(cfg.new_type) <= cfg.tree.vertices
        assert all(v in lay.subtree(m) for v in cfg.new_type)
        deg = len(lay.children[m])
        if model in (M.SHORT_LIVED, M.RIGHT_BRANCH, M.RIGHT_PATH_STAR):
            assert deg >= 1
        if model is M.SHORT_LIVED:
            assert not lay.children[lay.children[m][-1]]
            assert len(cfg.new_type) == 2
        if model is M.TOGGLE_H1:
            assert lay.depth[m] == 1
        if model in (M.TOGGLE, M.TOGGLE_H1):
            assert 0 <= cfg.split <= deg
        if model is M.ENT:
            assert all(lay.parent[v] in cfg.new_type for v in cfg.new_type if v != m)
        if model is M.BINARY_COMPLETE:
            assert all(len(c) in (0, 2) for c in lay.children)


@pytest.mark.parametrize("n", range(7))
def test_toggle_splits_per_vertex(n):
    configs = list(enumerate_configs(M.TOGGLE, n))
    expected = sum(len(kids) + 1 for t in gen_trees(n) for kids in t.layout.children)
    assert len(configs) == expected


@pytest.mark.parametrize("n", range(7))
def test_right_path_new_type_is_chain(n):
    for cfg in enumerate_configs(M.RIGHT_PATH, n):
        lay = cfg.tree.layout
        length = 0
        v = cfg.mutator
        while lay.children[v]:
            v = lay.children[v][-1]
            length += 1
        assert len(cfg.new_type) == 1 + length


def test_ent_colourings_include_all_down_closed_sets():
    # root with two leaf children: mutator at the root has 4 colourings
    t = OrderedTree.parse("(()())")
    sets = {cfg.new_type for cfg in enumerate_configs(M.ENT, 2) if cfg.tree == t and cfg.mutator == 0}
    assert sets == {frozenset({0}), frozenset({0, 1}), frozenset({0, 2}), frozenset({0, 1, 2})}


@pytest.mark.parametrize("n", range(9))
def test_ent_paths_agree(n):
    assert oracle.ent_count_row_product(n) == count_row(M.ENT, n)


@pytest.mark.parametrize("model", list(M))
def test_oracle_matches_closed_forms_small(model):
    for n in range(7):
        assert count_row(model, n) == closed_form_rows(model, n)[n]


def test_partitioned_count_matches_serial():
    assert count_row(M.TOGGLE, 7, workers=3) == count_row(M.TOGGLE, 7)


def test_mutconfig_text():
    t = OrderedTree.parse("(()())")
    cfg = MutConfig(t, 0, frozenset({0, 2}), split=1)
    assert str(cfg) == "(()()) m=0 s=1"
    ent = MutConfig(t, 0, frozenset({0, 2}), ent=True)
    assert str(ent) == "(()()) m=0 N={0,2}"
    back = MutConfig.parse(str(ent))
    assert back.new_type == ent.new_type and back.mutator == 0 and back.tree == t
    assert MutConfig.parse("(()()) m=0 s=1").split == 1


def test_leaf_pairs():
    assert [oracle.leaf_pairs(n) for n in range(4)] == [1, 1, 3, 10]
