"""Tests for the main UniRatio facade."""

import pytest

from uniratio import (
    ClassificationUnstableError,
    FamilyParams,
    GridInstabilityError,
    InvalidSpecError,
    NormalizationMismatchError,
    UniRatio,
)
from uniratio.exceptions import exit_code_for
from uniratio.runner import JobRunner
from uniratio.settings import Settings, threads_from_env


class TestClientInit:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("UNIRATIO_THREADS", raising=False)
        client = UniRatio()
        assert client.settings == Settings(threads=0, tolerance=1e-7, points=1_000_000)
        client.close()

    def test_threads_from_env(self, monkeypatch):
        monkeypatch.setenv("UNIRATIO_THREADS", "3")
        with UniRatio() as client:
            assert client.settings.threads == 3

    def test_explicit_threads_win(self, monkeypatch):
        monkeypatch.setenv("UNIRATIO_THREADS", "3")
        with UniRatio(threads=0) as client:
            assert client.settings.threads == 0

    def test_invalid_tolerance_raises(self):
        with pytest.raises(InvalidSpecError, match="tolerance"):
            UniRatio(threads=0, tolerance=0.5)

    def test_invalid_points_raises(self):
        with pytest.raises(InvalidSpecError, match="points"):
            UniRatio(threads=0, points=0)

    def test_negative_threads_raises(self):
        with pytest.raises(InvalidSpecError, match="threads"):
            UniRatio(threads=-1)

    def test_context_manager(self):
        with UniRatio(threads=2) as client:
            assert client._runner.threads == 2

    def test_repr(self):
        client = UniRatio(threads=0, points=1000)
        assert repr(client) == "UniRatio(threads=0, tolerance=1e-07, points=1000)"

    def test_all_services_initialized(self, client):
        assert client.solver is not None
        assert client.oracle is not None
        assert client.families is not None


class TestThreadsFromEnv:
    def test_unset(self):
        assert threads_from_env({}) == 0

    def test_empty(self):
        assert threads_from_env({"UNIRATIO_THREADS": " "}) == 0

    def test_value(self):
        assert threads_from_env({"UNIRATIO_THREADS": "4"}) == 4

    def test_not_an_integer(self):
        with pytest.raises(InvalidSpecError, match="integer"):
            threads_from_env({"UNIRATIO_THREADS": "many"})

    def test_negative(self):
        with pytest.raises(InvalidSpecError, match="nonnegative"):
            threads_from_env({"UNIRATIO_THREADS": "-2"})


class TestJobRunner:
    def test_serial_map(self):
        runner = JobRunner(threads=0)
        assert runner.map(lambda x: x * x, [3, 1, 2]) == [9, 1, 4]

    def test_threaded_map_keeps_order(self):
        runner = JobRunner(threads=4)
        try:
            assert runner.map(lambda x: x + 1, range(20)) == list(range(1, 21))
        finally:
            runner.close()

    def test_run_propagates_errors(self):
        def fail():
            raise InvalidSpecError("bad input")

        with pytest.raises(InvalidSpecError, match="bad input"):
            JobRunner().run("failing job", fail)


class TestServices:
    def test_limit_ratio_with_mahler(self, client, h2_spec):
        result = client.solver.limit_ratio(h2_spec, mahler=True)
        assert result.lc == pytest.approx(0.1608612465103325, abs=1e-12)
        assert result.mahler == pytest.approx(1.2857348642919863, abs=1e-6)

    def test_riemann_uses_default_points(self, h2_spec):
        with UniRatio(threads=0, points=7) as client:
            result = client.solver.limit_ratio(h2_spec, method="riemann")
        assert result.lc == pytest.approx(2 / 7)

    def test_crossings(self, client, h2_spec):
        assert len(client.solver.crossings(h2_spec, validate=True)) == 1

    def test_oracle_census(self, client):
        poly = client.oracle.expand(client.families.spec({"k": 0, "l": 2, "a": [0], "b": [-1, -1, 1]}), 10)
        census = client.oracle.census(poly)
        assert (census.inside, census.outside) == (1, 1)
        assert client.oracle.kind(poly) == "salem"

    def test_threaded_convergence_matches_serial(self, client, h2_spec):
        serial = client.oracle.convergence(h2_spec, [10, 20, 30])
        with UniRatio(threads=3) as threaded:
            parallel = threaded.oracle.convergence(h2_spec, [10, 20, 30])
        assert parallel == serial

    def test_family_source(self, client):
        params = client.families.params({"family": "P", "a": 2, "b": 3})
        assert params == FamilyParams("P", a=2, b=3)
        result = client.solver.limit_ratio(client.families.source(params))
        assert result.lc == pytest.approx(0.1328095098966884, abs=1e-8)

    def test_hbounds_rows(self, client):
        rows = client.families.hbounds([2, 3, 4])
        assert [row.m for row in rows] == [2, 3, 4]
        assert all(row.inside for row in rows)


class TestExceptions:
    def test_grid_instability_message(self):
        exc = GridInstabilityError(signchange=8, modulus=6)
        assert exc.message == "sign-change count 8 != modulus count 6"
        assert (exc.signchange, exc.modulus) == (8, 6)
        assert exit_code_for(exc) == 3

    def test_diagnostics_default_to_empty(self):
        assert ClassificationUnstableError("ambiguous").moduli == []
        assert NormalizationMismatchError("off by a factor").fitted_constant is None
        assert GridInstabilityError().message == ""

    def test_exit_codes(self):
        assert exit_code_for(InvalidSpecError("bad")) == 1
        assert exit_code_for(ClassificationUnstableError("ambiguous", moduli=(1.0000005,))) == 3
        assert exit_code_for(RuntimeError("boom")) == 1
