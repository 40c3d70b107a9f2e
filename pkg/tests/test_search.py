import itertools
import json
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperalg.algebra import OMEGA_TABLE, QUATERNION_TABLE, MultiplicationTable, SignedBasis
from hyperalg.search import (
    PREDICATES,
    SYMMETRIES,
    SearchConfig,
    apply_symmetry,
    canonicalize,
    count_candidates,
    enumerate_codes,
    enumerate_tables,
    predicate_suite,
    search,
)


def count(it) -> int:
    counter = itertools.count()
    deque(zip(it, counter), maxlen=0)
    return next(counter)


unital_codes = st.lists(st.integers(0, 7), min_size=9, max_size=9).map(
    lambda free: MultiplicationTable.from_codes(
        [0, 2, 4, 6, 2, *free[0:3], 4, *free[3:6], 6, *free[6:9]]
    ).codes()
)


def relabel_jk(table: MultiplicationTable) -> MultiplicationTable:
    """Oracle: swap the names j and k in every position and entry."""
    swap = {0: 0, 1: 1, 2: 3, 3: 2}
    entries = [[None] * 4 for _ in range(4)]
    for a in range(4):
        for b in range(4):
            s, c = table.entries[a][b]
            entries[swap[a]][swap[b]] = (s, swap[c])
    return MultiplicationTable(tuple(map(tuple, entries)))


class TestEnumeration:
    @pytest.mark.parametrize("commutative, i2, expected", [
        (True, True, 8 ** 5),
        (True, False, 8 ** 6),
        (False, True, 8 ** 8),
        (False, False, 8 ** 9),
    ])
    def test_closed_form(self, commutative, i2, expected):
        cfg = SearchConfig(require_commutative=commutative, require_i_squared_minus_one=i2)
        assert count_candidates(cfg) == expected

    def test_stream_length_small_levels(self):
        assert count(enumerate_codes(SearchConfig())) == 32_768
        assert count(enumerate_codes(SearchConfig(require_i_squared_minus_one=False))) == 262_144

    def test_tables_valid_and_distinct(self):
        tables = list(enumerate_tables(SearchConfig()))
        assert len(tables) == len({t.codes() for t in tables}) == 32_768
        for t in tables[::97]:
            assert t.entries[1][1] == (-1, 0)
            assert all(t.entries[a][b] == t.entries[b][a] for a in range(4) for b in range(4))

    def test_lexicographic_order(self):
        codes = list(enumerate_codes(SearchConfig()))
        free = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
        keys = [tuple(c[4 * a + b] for a, b in free) for c in codes]
        assert keys == sorted(keys)
        assert keys[0] == (0,) * 5

    def test_ranges_partition_stream(self):
        cfg = SearchConfig(require_i_squared_minus_one=False)
        whole = list(enumerate_codes(cfg))
        parts = []
        for lo in range(0, len(whole), 50_000):
            parts.extend(enumerate_codes(cfg, lo, lo + 50_000))
        assert parts == whole

    def test_unital_prefix_and_tail(self):
        # full 8**9 walk is under --runslow; here check both ends of the index range
        cfg = SearchConfig(require_commutative=False, require_i_squared_minus_one=False)
        head = list(enumerate_codes(cfg, 0, 3))
        tail = list(enumerate_codes(cfg, 8 ** 9 - 2, None))
        assert [c[5] for c in head] == [0, 0, 0] and [c[15] for c in head] == [0, 1, 2]
        assert len(tail) == 2 and all(c[4 * a + b] == 7 for c in tail for a in (1, 2, 3) for b in (1, 2, 3)
                                     if (a, b) != (3, 3))

    def test_contradictory_config_is_empty(self):
        cfg = SearchConfig(fixed_entries={(1, 1): "1"})
        assert count_candidates(cfg) == 0
        assert list(enumerate_codes(cfg)) == []
        res = search(cfg)
        assert res.total_candidates == 0 and res.survivors == []

    def test_commutativity_conflict_is_empty(self):
        cfg = SearchConfig(fixed_entries={(1, 2): "k", (2, 1): "j"})
        assert count_candidates(cfg) == 0

    @pytest.mark.slow
    @pytest.mark.parametrize("commutative, i2, expected", [(False, True, 8 ** 8), (False, False, 8 ** 9)])
    def test_stream_length_large_levels(self, commutative, i2, expected):
        cfg = SearchConfig(require_commutative=commutative, require_i_squared_minus_one=i2)
        assert count(enumerate_codes(cfg)) == expected

    def test_bad_config(self):
        with pytest.raises(ValueError):
            SearchConfig(predicates=frozenset())
        with pytest.raises(ValueError):
            SearchConfig(worker_count=0)
        with pytest.raises(ValueError):
            SearchConfig(predicates={"P_nope"})


class TestPredicates:
    def test_omega_passes_all(self):
        rep = predicate_suite(OMEGA_TABLE)
        assert rep.passed and all(rep.results[p] for p in PREDICATES)
        from hyperalg.algebra import J, K
        assert (rep.phi_structure.unity, rep.phi_structure.imaginary) == (K, J)

    def test_quaternion(self):
        rep = predicate_suite(QUATERNION_TABLE)
        assert rep.results["P_assoc"] is True
        assert rep.results["P_phi_closed"] is False
        assert not rep.passed

    def test_i_squared_plus_one_fails_psi(self):
        rows = OMEGA_TABLE.to_strings()
        rows[1][1] = "1"
        rep = predicate_suite(MultiplicationTable.from_strings(rows))
        assert rep.results["P_psi"] is False
        assert rep.witnesses["P_psi"] == ("i", "i", "1")

    def test_fail_fast_order(self):
        rep = predicate_suite(QUATERNION_TABLE, fail_fast=True)
        assert rep.first_failure == "P_phi_closed"
        assert rep.results["P_assoc"] is None

    def test_witnesses_reverify(self):
        for codes in itertools.islice(enumerate_codes(SearchConfig()), 0, 32_768, 211):
            table = MultiplicationTable.from_codes(codes)
            rep = predicate_suite(table)
            if "P_assoc" in rep.witnesses:
                a, b, c = ("1ijk".index(n) for n in rep.witnesses["P_assoc"])
                s1, ab = table.entries[a][b]
                s2, bc = table.entries[b][c]
                lhs = (s1 * table.entries[ab][c].sign, table.entries[ab][c].basis)
                rhs = (s2 * table.entries[a][bc].sign, table.entries[a][bc].basis)
                assert lhs != rhs
            if "P_phi_closed" in rep.witnesses:
                a, b, prod = rep.witnesses["P_phi_closed"]
                assert SignedBasis.parse(prod).basis in (0, 1)

    @given(unital_codes, st.sampled_from(SYMMETRIES))
    @settings(max_examples=200)
    def test_symmetry_invariance(self, codes, sym):
        t = MultiplicationTable.from_codes(codes)
        g = MultiplicationTable.from_codes(apply_symmetry(codes, *sym))
        assert predicate_suite(g).results == predicate_suite(t).results


class TestCanonicalize:
    def test_idempotent(self):
        for t in (OMEGA_TABLE, QUATERNION_TABLE):
            c = canonicalize(t)
            assert canonicalize(c) == c

    @given(unital_codes)
    def test_idempotent_random(self, codes):
        c = canonicalize(MultiplicationTable.from_codes(codes))
        assert canonicalize(c) == c

    def test_relabeling(self):
        relabeled = relabel_jk(OMEGA_TABLE)
        assert relabeled != OMEGA_TABLE
        assert canonicalize(relabeled).codes() == canonicalize(OMEGA_TABLE).codes()

    def test_omega_vs_quaternion(self):
        assert canonicalize(OMEGA_TABLE).codes() != canonicalize(QUATERNION_TABLE).codes()

    def test_symmetry_group_size(self):
        assert len(SYMMETRIES) == 16
        assert len({apply_symmetry(QUATERNION_TABLE.codes(), *s) for s in SYMMETRIES}) > 1


@pytest.fixture(scope="module")
def full():
    return search(SearchConfig(worker_count=1))


class TestSearch:
    def test_omega_survives(self, full):
        canon = canonicalize(OMEGA_TABLE).codes()
        assert canon in [t.codes() for t, _ in full.canonical]
        assert OMEGA_TABLE.codes() in [t.codes() for t in full.survivors]

    def test_census_accounts_for_every_candidate(self, full):
        assert sum(full.census.values()) == full.total_candidates == 32_768
        assert full.census["passed"] == len(full.survivors)

    def test_monotonicity(self, full):
        assoc_only = search(SearchConfig(predicates={"P_assoc"}))
        assert len(assoc_only.survivors) > len(full.survivors)
        assert {t.codes() for t in full.survivors} <= {t.codes() for t in assoc_only.survivors}
        chain = []
        for n in range(1, len(PREDICATES) + 1):
            chain.append({t.codes() for t in search(SearchConfig(predicates=PREDICATES[:n])).survivors})
        assert all(b <= a for a, b in zip(chain, chain[1:]))

    def test_file_soundness(self, tmp_path):
        out = tmp_path / "census.json"
        search(SearchConfig(output_path=str(out)))
        data = json.loads(out.read_text())
        assert data["total_candidates"] == 32_768
        for entry in data["survivors"]:
            t = MultiplicationTable.from_strings(entry["table"])
            assert predicate_suite(t).passed
            assert canonicalize(t).to_strings() == entry["canonical"]
        assert "wall_time_seconds" in data

    def test_deterministic_across_workers(self, tmp_path):
        files = []
        for workers in (1, 2, 3):
            out = tmp_path / f"w{workers}.json"
            search(SearchConfig(worker_count=workers, output_path=str(out)))
            data = json.loads(out.read_text())
            data.pop("wall_time_seconds")
            files.append(json.dumps(data, sort_keys=True).encode())
        assert files[0] == files[1] == files[2]

    def test_env_workers(self, monkeypatch):
        monkeypatch.setenv("OMEGA_WORKERS", "3")
        assert SearchConfig().worker_count == 3
