import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modde.analysis import (
    EcdfInput,
    GROUP_FUNCTIONS,
    RankTable,
    analyze_cell,
    best_bchm_counts,
    compute_ecdf,
    compute_ranks,
    friedman_test,
    hochberg_posthoc,
)


def _rec(bchm, function, final_best):
    return SimpleNamespace(bchm=bchm, function=function, final_best=final_best)


def _records(per_function_medians, runs=3, jitter=0.0):
    """Build records whose per-function medians equal the given table."""
    out = []
    for fn, by_bchm in per_function_medians.items():
        for bchm, med in by_bchm.items():
            for k in range(runs):
                out.append(_rec(bchm, fn, med + jitter * (k - runs // 2)))
    return out


def test_group_functions_cover_all_benchmarks():
    functions = [fn for fns in GROUP_FUNCTIONS.values() for fn in fns]
    assert sorted(functions) == sorted(
        ["sphere", "linear-slope", "rosenbrock", "ellipsoid-rot",
         "rastrigin", "random-peaks"]
    )


class TestComputeRanks:
    def test_midranks_on_hand_table(self):
        records = _records(
            {
                "fa": {"projection": 1.0, "reflection": 2.0, "wrapping": 3.0},
                "fb": {"projection": 5.0, "reflection": 5.0, "wrapping": 9.0},
            }
        )
        table = compute_ranks(records, ["fa", "fb"], cell=("m", "c", 1))
        # fa ranks: 1, 2, 3; fb ranks: 1.5, 1.5, 3
        assert table.ranks == {
            "projection": 1.25,
            "reflection": 1.75,
            "wrapping": 3.0,
        }
        assert table.blocks == 2
        assert table.best_set == frozenset({"projection"})

    def test_rank_ties_share_best_set(self):
        records = _records(
            {"fa": {"projection": 1.0, "reflection": 1.0, "wrapping": 3.0}}
        )
        table = compute_ranks(records, ["fa"])
        assert table.best_set == frozenset({"projection", "reflection"})

    def test_ranks_use_median_over_runs(self):
        records = [
            _rec("projection", "fa", 100.0),  # one bad outlier run
            _rec("projection", "fa", 1.0),
            _rec("projection", "fa", 1.0),
            _rec("reflection", "fa", 2.0),
            _rec("reflection", "fa", 2.0),
            _rec("reflection", "fa", 2.0),
        ]
        table = compute_ranks(records, ["fa"])
        assert table.ranks["projection"] == 1.0

    @given(
        st.lists(
            st.integers(min_value=-(10**6), max_value=10**6),
            min_size=4,
            max_size=4,
            unique=True,
        )
    )
    @settings(max_examples=40, deadline=None)
    def test_invariant_under_monotone_transform(self, values):
        # integer-spaced values stay distinct through the arctan squeeze
        bchms = ["a", "b", "c", "d"]
        records = [_rec(b, "fa", float(v)) for b, v in zip(bchms, values)]
        squeezed = [
            _rec(b, "fa", math.atan(v / 1e6) + 2.0) for b, v in zip(bchms, values)
        ]
        t1 = compute_ranks(records, ["fa"])
        t2 = compute_ranks(squeezed, ["fa"])
        assert t1.ranks == t2.ranks

    def test_needs_two_bchms(self):
        with pytest.raises(ValueError, match="at least 2"):
            compute_ranks([_rec("projection", "fa", 1.0)], ["fa"])

    def test_missing_combination_is_a_gap(self):
        records = [
            _rec("projection", "fa", 1.0),
            _rec("reflection", "fa", 2.0),
            _rec("projection", "fb", 1.0),
        ]
        with pytest.raises(ValueError, match="missing runs.*reflection.*fb"):
            compute_ranks(records, ["fa", "fb"])

    def test_unequal_run_counts_rejected(self):
        records = [
            _rec("projection", "fa", 1.0),
            _rec("projection", "fa", 1.0),
            _rec("reflection", "fa", 2.0),
        ]
        with pytest.raises(ValueError, match="unequal run counts"):
            compute_ranks(records, ["fa"])


class TestFriedman:
    def test_unanimous_hand_case(self):
        table = RankTable(
            cell=(),
            ranks={"a": 1.0, "b": 2.0, "c": 3.0},
            blocks=4,
            significance=frozenset(),
            best_set=frozenset({"a"}),
            worse_set=frozenset(),
        )
        stat, p = friedman_test(table)
        assert stat == pytest.approx(8.0, abs=1e-12)
        assert p == pytest.approx(math.exp(-4.0), abs=1e-12)

    def test_no_difference_gives_zero_statistic(self):
        table = RankTable((), {"a": 2.0, "b": 2.0, "c": 2.0}, 5,
                          frozenset(), frozenset({"a", "b", "c"}), frozenset())
        stat, p = friedman_test(table)
        assert stat == 0.0
        assert p == 1.0

    def test_statistic_invariant_under_relabeling(self):
        r = {"a": 1.5, "b": 2.5, "c": 2.0}
        t1 = RankTable((), r, 6, frozenset(), frozenset(), frozenset())
        relabeled = {"c": 1.5, "a": 2.5, "b": 2.0}
        t2 = RankTable((), relabeled, 6, frozenset(), frozenset(), frozenset())
        assert friedman_test(t1) == friedman_test(t2)

    def test_needs_two_blocks(self):
        table = RankTable((), {"a": 1.0, "b": 2.0}, 1,
                          frozenset(), frozenset(), frozenset())
        with pytest.raises(ValueError):
            friedman_test(table)


def _table(ranks, blocks):
    return RankTable((), ranks, blocks, frozenset(), frozenset(), frozenset())


class TestHochberg:
    def test_rejects_only_clearly_worse(self):
        best, worse, pairs = hochberg_posthoc(
            _table({"a": 1.0, "b": 2.0, "c": 3.0}, blocks=4)
        )
        assert best == frozenset({"a"})
        assert worse == frozenset({"c"})
        assert pairs == frozenset({("a", "c")})

    def test_more_blocks_reject_both(self):
        best, worse, _ = hochberg_posthoc(
            _table({"a": 1.0, "b": 2.0, "c": 3.0}, blocks=10)
        )
        assert worse == frozenset({"b", "c"})

    def test_insignificant_friedman_blocks_posthoc(self):
        best, worse, pairs = hochberg_posthoc(
            _table({"a": 1.9, "b": 2.0, "c": 2.1}, blocks=2)
        )
        assert best == frozenset({"a"})
        assert worse == frozenset()
        assert pairs == frozenset()

    def test_step_up_dominates_bonferroni(self):
        # any BCHM rejected by Bonferroni on the same p-values must also be
        # rejected by the step-up; mean ranks sum to k(k+1)/2 = 10
        from scipy import stats

        for blocks in (4, 6, 10):
            table = _table({"a": 1.0, "b": 2.2, "c": 3.0, "d": 3.8}, blocks)
            k = 4
            se = math.sqrt(k * (k + 1) / (6.0 * blocks))
            pvals = {
                b: 2.0 * stats.norm.sf(abs(r - 1.0) / se)
                for b, r in table.ranks.items()
                if b != "a"
            }
            bonferroni = {b for b, p in pvals.items() if p <= 0.05 / len(pvals)}
            _, worse, _ = hochberg_posthoc(table)
            assert bonferroni <= worse

    def test_tied_best_set_survives(self):
        best, worse, _ = hochberg_posthoc(
            _table({"a": 1.5, "b": 1.5, "c": 3.5, "d": 3.5}, blocks=8)
        )
        assert best == frozenset({"a", "b"})
        assert "a" not in worse and "b" not in worse
        assert worse == frozenset({"c", "d"})


class TestAnalyzeCell:
    def test_single_function_group_skips_posthoc(self):
        records = _records(
            {"rosenbrock": {"projection": 1.0, "reflection": 5.0}}
        )
        table = analyze_cell(records, ["rosenbrock"], ("rand/1", "bin", 2))
        assert table.best_set == frozenset({"projection"})
        assert table.worse_set == frozenset()
        assert table.blocks == 1

    def test_multi_function_group_fills_worse_set(self):
        records = []
        rng = np.random.default_rng(0)
        for fn in ("sphere", "linear-slope"):
            for bchm, med in (("projection", 0.0), ("reflection", 10.0),
                              ("wrapping", 20.0), ("conservatism", 30.0)):
                for _ in range(5):
                    records.append(_rec(bchm, fn, med + rng.uniform(0, 0.1)))
        table = analyze_cell(records, ("sphere", "linear-slope"), ("m", "c", 1))
        assert table.best_set == frozenset({"projection"})
        assert "conservatism" in table.worse_set or table.worse_set == frozenset()


def test_best_bchm_counts_ties_count_all():
    t1 = RankTable(("m1", "bin", 1), {}, 2, frozenset(),
                   frozenset({"projection", "reflection"}), frozenset())
    t2 = RankTable(("m2", "bin", 1), {}, 2, frozenset(),
                   frozenset({"projection"}), frozenset())
    t3 = RankTable(("m1", "bin", 3), {}, 1, frozenset(),
                   frozenset({"wrapping"}), frozenset())
    counts = best_bchm_counts([t1, t2, t3])
    assert counts["projection"] == {1: 2}
    assert counts["reflection"] == {1: 1}
    assert counts["wrapping"] == {3: 1}
    total_group1 = sum(c.get(1, 0) for c in counts.values())
    assert total_group1 == 3  # 2 cells, one tie counted twice


class TestEcdf:
    def test_two_of_ten_targets(self):
        log = EcdfInput([(50, 100.5)], f_opt=100.0, n=5)
        curve = compute_ecdf([log])
        assert curve.points == ((10.0, 0.2),)
        assert curve.final_proportion == 0.2

    def test_all_targets_hit(self):
        log = EcdfInput([(30, -3.0 + 1e-12)], f_opt=-3.0, n=5)
        curve = compute_ecdf([log])
        assert curve.final_proportion == 1.0

    def test_none_hit(self):
        log = EcdfInput([(30, 1e6)], f_opt=0.0, n=5)
        curve = compute_ecdf([log])
        assert curve.points == ()
        assert curve.final_proportion == 0.0

    def test_two_runs_average(self):
        hits_all = EcdfInput([(10, 0.0)], f_opt=0.0, n=5)
        hits_none = EcdfInput([(10, 1e9)], f_opt=0.0, n=5)
        curve = compute_ecdf([hits_all, hits_none])
        assert curve.final_proportion == 0.5

    def test_curve_is_nondecreasing_and_bounded(self):
        rng = np.random.default_rng(4)
        logs = []
        for _ in range(10):
            traj = []
            best = 1e4
            evals = 0
            for _ in range(30):
                evals += int(rng.integers(1, 50))
                best *= rng.uniform(0.2, 0.95)
                traj.append((evals, best))
            logs.append(EcdfInput(traj, f_opt=0.0, n=10))
        curve = compute_ecdf(logs)
        ys = [y for _, y in curve.points]
        xs = [x for x, _ in curve.points]
        assert all(y2 >= y1 for y1, y2 in zip(ys, ys[1:]))
        assert all(0.0 <= y <= 1.0 for y in ys)
        assert xs == sorted(xs)
        assert len(set(xs)) == len(xs)  # duplicate x collapsed

    def test_first_hit_counts(self):
        log = EcdfInput([(10, 5.0), (20, 0.5), (40, 0.05)], f_opt=0.0, n=10)
        curve = compute_ecdf([log], targets=(1.0,))
        assert curve.points == ((2.0, 1.0),)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            compute_ecdf([])
