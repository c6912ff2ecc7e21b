import numpy as np
import pytest

import morphfit


def test_constraints_and_rules():
    attract, repel = morphfit.build_constraints(["like", "likes", "liked", "dislike"], "en")
    assert ("like", "likes") in attract
    assert ("like", "dislike") in repel
    assert ("dislike", "likes") in repel
    assert "looking" in morphfit.inflections("en", "look")
    assert "unlock" in morphfit.antonym_candidates("en", "lock")


def test_fit_moves_constrained_rows_only():
    rng = np.random.default_rng(1)
    words = ["a", "b", "c", "d", "e"]
    vectors = rng.normal(size=(5, 4))
    store = morphfit.VectorStore(words, vectors / np.linalg.norm(vectors, axis=1, keepdims=True))
    result = morphfit.fit(store, [("a", "b"), ("b", "a")], [("c", "d"), ("d", "c")])
    assert len(result.costs) == 10
    assert result.store.cosine("a", "b") > store.cosine("a", "b")
    assert result.store.cosine("c", "d") < store.cosine("c", "d")
    np.testing.assert_array_equal(result.store.vector("e"), store.vector("e"))


def test_morph_fix_and_evaluation():
    store = morphfit.VectorStore(["look", "looks", "table"], np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]))
    fixed = morphfit.morph_fix(store, [("look", "looks")], {"look": 500, "looks": 80})
    np.testing.assert_array_equal(fixed.vector("looks"), store.vector("look"))
    assert morphfit.spearman([1, 2, 3], [3, 2, 1]) == -1.0
    rho, covered, total = morphfit.evaluate(
        fixed, [("look", "looks", 9.0), ("look", "table", 5.0), ("looks", "table", 4.0), ("x", "y", 1.0)]
    )
    assert (covered, total) == (3, 4)
    assert -1.0 <= rho <= 1.0
    assert morphfit.neighbors(store, "look", 1)[0][0] == "table"


def test_round_trip_and_errors(tmp_path):
    store = morphfit.VectorStore.parse("a 3 4\nb 0 2\n")
    np.testing.assert_allclose(store.vector("a"), [0.6, 0.8])
    path = tmp_path / "v.txt"
    store.save(path)
    again = morphfit.VectorStore.load(path, normalize=False)
    np.testing.assert_array_equal(again.vectors, store.vectors)
    with pytest.raises(morphfit.InputError):
        morphfit.VectorStore.load(tmp_path / "missing.txt")
    with pytest.raises(morphfit.MorphfitError):
        morphfit.spearman([1, 1], [1, 2])
