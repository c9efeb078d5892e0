import json
import random
from fractions import Fraction

import pytest

from slowcf.errors import BadEndpoints, GapOrOverlap, NotUnimodular, OutOfRange, UnknownName, WrongBranch
from slowcf.exact import Mobius, QuadraticSurd, random_surd
from slowcf.scfa import Scfa, builtin, load_scfa, random_scfa, validate_partition

F = Fraction
BUILTINS = ["farey", "backwards", "even", "odd", "fN:2", "fN:3", "fN:4", "fN:7"]


def test_validate_examples():
    assert len(validate_partition([(0, F(1, 2)), (F(1, 2), 1)])) == 2
    assert len(validate_partition([(0, F(1, 3)), (F(1, 3), F(1, 2)), (F(1, 2), 1)])) == 3
    with pytest.raises(NotUnimodular) as exc:
        validate_partition([(0, F(1, 3)), (F(1, 3), 1)])
    assert exc.value.index == 2


def test_validate_errors():
    with pytest.raises(GapOrOverlap) as exc:
        validate_partition([("0/1", "1/2"), ("1/2", "1/1"), ("1/2", "1/1")])
    assert exc.value.index == 3
    with pytest.raises(BadEndpoints):
        validate_partition([("0/1", "1/2")])
    with pytest.raises(BadEndpoints):
        validate_partition([("1/2", "1/1")])
    # unreduced endpoints are rejected even though 2/4 = 1/2
    with pytest.raises(NotUnimodular):
        validate_partition([("0/1", "2/4"), ("1/2", "1/1")])


def test_branch_matrix_examples():
    assert builtin("farey").branch(2) == Mobius(0, 1, 1, 1)
    assert builtin("backwards").branch(2) == Mobius(0, 1, -1, 2)
    assert builtin("backwards").branch(1) == Mobius(1, 0, 1, 1)


def test_builtin_examples():
    assert builtin("fN:2") == builtin("farey")
    assert builtin("fN(2)") == builtin("farey")
    assert builtin("even").signs == (1, -1, 1)
    assert builtin("odd").signs == (1, 1, -1)
    f4 = builtin("fN:4")
    assert f4.n == 4 and f4.signs == (1, -1, -1, -1)
    assert (f4.partition[-1].lo, f4.partition[-1].hi) == (F(1, 2), 1)
    assert [iv.hi for iv in f4.partition] == [F(1, 4), F(1, 3), F(1, 2), 1]
    with pytest.raises(UnknownName):
        builtin("gauss")
    with pytest.raises(UnknownName):
        builtin("fN:1")


def test_locate_examples():
    r = builtin("farey")
    assert r.locate(F(1, 3)) == {1}
    assert r.locate(F(1, 2)) == {1, 2}
    assert builtin("fN:3").locate(QuadraticSurd(-1, 1, 1, 2)) == {2}
    assert r.locate(0) == {1} and r.locate(1) == {2}
    with pytest.raises(OutOfRange):
        r.locate(F(3, 2))


def test_forward_step_examples():
    r = builtin("farey")
    assert r.forward_step(QuadraticSurd(-1, 1, 1, 2), 1) == QuadraticSurd(0, 1, 2, 2)
    assert r.forward_step(F(0), 1) == 0
    assert builtin("backwards").forward_step(F(1), 2) == 1
    with pytest.raises(WrongBranch):
        r.forward_step(F(1, 3), 2)


def _all_scfas():
    rng = random.Random(11)
    return [builtin(n) for n in BUILTINS] + [random_scfa(rng) for _ in range(100)]


def test_branch_endpoints_and_det():
    for s in _all_scfas():
        for i, (iv, eps) in enumerate(zip(s.partition, s.signs), start=1):
            h = s.branch(i)
            assert h.det == eps
            ends = (h.apply(F(0)), h.apply(F(1)))
            assert ends == ((iv.lo, iv.hi) if eps == 1 else (iv.hi, iv.lo))


def test_random_scfa_bounds():
    rng = random.Random(3)
    for _ in range(100):
        s = random_scfa(rng)
        assert 2 <= s.n <= 8
        assert all(iv.hi.denominator <= 50 for iv in s.partition)


def test_forward_step_inverts_branch():
    rng = random.Random(5)
    for s in _all_scfas()[:20]:
        for _ in range(100):
            y = random_surd(rng)
            i = rng.randint(1, s.n)
            assert s.forward_step(s.branch(i).apply(y), i) == y


def test_locate_sizes():
    rng = random.Random(9)
    for s in _all_scfas()[:30]:
        for cut in s.cut_points:
            assert len(s.locate(cut)) == 2
        for _ in range(50):
            x = F(rng.randint(0, 997), 997)
            assert len(s.locate(x)) == (2 if x in s.cut_points else 1)


def test_load_spec_file(tmp_path):
    path = tmp_path / "mine.json"
    path.write_text(json.dumps({"partition": [["0/1", "1/2"], ["1/2", "1/1"]], "signs": [1, -1]}))
    s = load_scfa(str(path))
    assert s == builtin("farey")
    assert s.name == "mine"
    assert load_scfa("even") == builtin("even")
    assert Scfa.from_raw(s.to_json()["partition"], s.to_json()["signs"]) == s
