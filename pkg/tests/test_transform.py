import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cbr.alphabet import entropy, enumerated, product, symbolic, uniform
from cbr.transform import (
    Aggregator,
    Channel,
    CostRecord,
    DeclaredHuman,
    Grouping,
    Quantizer,
    Transform,
    compose,
    identity_grouping,
    mutual_information,
    pushforward,
)
from conftest import make_grouping, random_grouping, random_pmf
from oracles import entropy_oracle, mi_oracle, pushforward_oracle

COST = CostRecord("time", 1.0, "s")

U8 = uniform("u8", [str(i) for i in range(8)])
GROUP_422 = make_grouping(
    {"0": "a", "1": "a", "2": "a", "3": "a", "4": "b", "5": "b", "6": "c", "7": "c"}
)


class TestCostRecord:
    def test_zero_cost_rejected(self):
        with pytest.raises(ValueError):
            CostRecord("time", 0.0, "s")

    def test_mixed_units_do_not_add(self):
        with pytest.raises(ValueError, match="incommensurable costs"):
            CostRecord("time", 1.0, "s") + CostRecord("time", 1.0, "min")


class TestPushforward:
    def test_grouping_sizes_422(self):
        out = pushforward(GROUP_422, U8)
        assert out.model.pmf.probs == pytest.approx({"a": 0.5, "b": 0.25, "c": 0.25})
        expect = pushforward_oracle(GROUP_422.kind.mapping, U8.model.pmf.probs)
        assert out.model.pmf.probs == pytest.approx(expect)

    def test_identity_grouping(self):
        t = identity_grouping(U8, "id", COST)
        out = pushforward(t, U8)
        assert out.model.pmf.probs == pytest.approx(U8.model.pmf.probs)

    def test_aggregator_symbolic_bookkeeping(self):
        point = symbolic("point32", 32.0)
        series = product(point, 720)
        t = Transform("agg", Aggregator(12, "mean"), COST, "M")
        out = pushforward(t, series)
        assert out.model.count == 60
        assert entropy(out) == pytest.approx(1920.0)

    def test_aggregator_window_must_divide(self):
        series = product(symbolic("p", 32.0), 720)
        t = Transform("agg", Aggregator(7), COST, "M")
        with pytest.raises(ValueError, match="window"):
            pushforward(t, series)

    def test_aggregator_rejects_enumerated(self):
        t = Transform("agg", Aggregator(2), COST, "M")
        with pytest.raises(ValueError, match="mode mismatch"):
            pushforward(t, U8)

    def test_unmapped_letter_rejected(self):
        t = make_grouping({"0": "a"})
        with pytest.raises(ValueError, match="partial mapping"):
            pushforward(t, U8)

    def test_channel_marginal(self):
        bsc = Transform(
            "bsc",
            Channel(("0", "1"), ("0", "1"), ((0.75, 0.25), (0.25, 0.75))),
            COST,
            "M",
        )
        out = pushforward(bsc, enumerated("in", {"0": 0.9, "1": 0.1}))
        assert out.model.pmf["0"] == pytest.approx(0.9 * 0.75 + 0.1 * 0.25)

    def test_quantizer_enumerated_bins(self):
        a = enumerated("vals", {"0.5": 0.25, "1.5": 0.25, "2.5": 0.25, "4.0": 0.25})
        t = Transform("q", Quantizer(2, (0.0, 2.0, 4.0)), COST, "M")
        out = pushforward(t, a)
        assert out.model.pmf.probs == pytest.approx({"bin0": 0.5, "bin1": 0.5})

    def test_quantizer_last_bin_closed(self):
        a = enumerated("vals", {"4.0": 1.0})
        t = Transform("q", Quantizer(2, (0.0, 2.0, 4.0)), COST, "M")
        assert pushforward(t, a).model.pmf["bin1"] == pytest.approx(1.0)

    def test_quantizer_symbolic_clamps_bits(self):
        series = product(symbolic("point32", 32.0), 60)
        t = Transform("plot", Quantizer(128), COST, "V")
        out = pushforward(t, series)
        assert entropy(out) == pytest.approx(60 * 7.0)

    def test_conserves_probability(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 64))
            pmf = random_pmf(rng, n)
            a = enumerated("a", pmf)
            t = make_grouping(random_grouping(rng, pmf, int(rng.integers(1, n + 1))))
            out = pushforward(t, a)
            assert sum(out.model.pmf.probs.values()) == pytest.approx(1.0, abs=1e-9)


class TestMutualInformation:
    def test_deterministic_equals_output_entropy(self):
        out = pushforward(GROUP_422, U8)
        assert mutual_information(GROUP_422, U8) == pytest.approx(entropy(out), abs=1e-9)

    def test_bsc_quarter(self):
        bsc = Transform(
            "bsc",
            Channel(("0", "1"), ("0", "1"), ((0.75, 0.25), (0.25, 0.75))),
            COST,
            "M",
        )
        u2 = uniform("u2", ["0", "1"])
        expect = 1.0 - entropy_oracle([0.25, 0.75])
        assert mutual_information(bsc, u2) == pytest.approx(expect, abs=1e-9)
        joint = [[0.5 * 0.75, 0.5 * 0.25], [0.5 * 0.25, 0.5 * 0.75]]
        assert mutual_information(bsc, u2) == pytest.approx(mi_oracle(joint), abs=1e-12)

    def test_identical_rows_zero(self):
        c = Transform(
            "noise", Channel(("0", "1"), ("a", "b"), ((0.3, 0.7), (0.3, 0.7))), COST, "M"
        )
        assert mutual_information(c, uniform("u2", ["0", "1"])) == pytest.approx(0.0, abs=1e-12)

    def test_symbolic_input_rejected(self):
        t = make_grouping({"x": "y"})
        with pytest.raises(ValueError, match="requires enumerated model"):
            mutual_information(t, symbolic("s", 3.0))

    def test_bounds_and_symmetry(self, rng):
        from cbr import _kernels

        for _ in range(20):
            n, m = int(rng.integers(2, 10)), int(rng.integers(2, 10))
            mat = rng.random((n, m))
            mat /= mat.sum(axis=1, keepdims=True)
            c = Transform(
                "c",
                Channel(
                    tuple(f"x{i}" for i in range(n)),
                    tuple(f"y{j}" for j in range(m)),
                    tuple(tuple(row) for row in mat),
                ),
                COST,
                "M",
            )
            pmf = random_pmf(rng, n)
            a = enumerated("a", pmf)
            mi = mutual_information(c, a)
            out = pushforward(c, a)
            assert -1e-9 <= mi <= min(entropy(a), entropy(out)) + 1e-9
            joint = np.array([pmf[f"x{i}"] for i in range(n)])[:, None] * mat
            assert mi == pytest.approx(_kernels.mi_bits(joint.T), abs=1e-9)


class TestCompose:
    def test_identity_law(self):
        t = GROUP_422
        ident = identity_grouping(U8, "id", COST)
        composed = compose(ident, t)
        assert pushforward(composed, U8).model.pmf.probs == pytest.approx(
            pushforward(t, U8).model.pmf.probs
        )

    def test_two_step_grouping(self):
        g1 = make_grouping({str(i): f"m{i // 2}" for i in range(8)}, name="g1")
        g2 = make_grouping({f"m{i}": f"f{i // 2}" for i in range(4)}, name="g2")
        out = pushforward(compose(g1, g2), U8)
        assert out.model.pmf.probs == pytest.approx({"f0": 0.5, "f1": 0.5})

    def test_cost_additivity(self):
        c = compose(GROUP_422, make_grouping({"a": "z", "b": "z", "c": "z"}, cost=2.5))
        assert c.cost.amount == pytest.approx(3.5)

    def test_unit_mismatch_rejected(self):
        t2 = Transform(
            "t2", Grouping({"a": "z", "b": "z", "c": "z"}), CostRecord("energy", 1.0, "J"), "M"
        )
        with pytest.raises(ValueError, match="incommensurable costs"):
            compose(GROUP_422, t2)

    def test_associativity_on_pushforward(self, rng):
        for _ in range(10):
            pmf = random_pmf(rng, 12)
            a = enumerated("a", pmf)
            m1 = random_grouping(rng, pmf, 6)
            m2 = {f"g{i}": f"h{i // 2}" for i in range(6)}
            m3 = {f"h{i}": f"k{i // 2}" for i in range(3)}
            t1, t2, t3 = make_grouping(m1, "t1"), make_grouping(m2, "t2"), make_grouping(m3, "t3")
            left = pushforward(compose(compose(t1, t2), t3), a)
            right = pushforward(compose(t1, compose(t2, t3)), a)
            for k in left.model.pmf:
                assert left.model.pmf[k] == pytest.approx(right.model.pmf[k], abs=1e-9)


class TestDataProcessingInequality:
    def test_deterministic_chains_never_gain_entropy(self, rng):
        for _ in range(100):
            n = int(rng.integers(4, 64))
            a = enumerated("a", random_pmf(rng, n))
            h_prev = entropy(a)
            for step in range(3):
                ids = a.letter_ids()
                t = make_grouping(random_grouping(rng, ids, max(1, len(ids) // 2)))
                a = pushforward(t, a)
                h = entropy(a)
                assert h <= h_prev + 1e-9
                h_prev = h

    def test_declared_human_step_may_gain_entropy(self):
        richer = uniform("richer", [str(i) for i in range(32)])
        t = Transform("human", DeclaredHuman(richer, 0.0), COST, "H")
        out = pushforward(t, uniform("u4", "abcd"))
        assert entropy(out) > entropy(uniform("u4", "abcd"))
