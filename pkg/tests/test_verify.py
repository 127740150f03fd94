import json

import numpy as np
import pytest

from nilalg import GF, catalog
from nilalg.errors import UnsupportedField
from nilalg.isomorph import BasisChange, find_isomorphism
from nilalg.normal_form import NormalForm, read_normal_form
from nilalg.verify import _filter_chunk, _exact_filter_chunk, forced_dim5, verify_dim5, verify_theorem_b


def test_all_zero_tuple_fails_the_hypotheses(gf3_report):
    # a1 = ... = a10 = 0 leaves x4, x5 central, so dim Z = 4
    assert gf3_report.class_of(0) is None


@pytest.mark.parametrize("name", ["L1", "L2", "L3", "L4"])
def test_catalog_tuples_are_their_own_class(gf3_report, name):
    idx = read_normal_form(catalog(name, GF(3))).index()
    assert gf3_report.class_of(idx) == name


def test_counts_add_up(gf3_report):
    r = gf3_report
    assert r.field == "GF(3)"
    assert sum(r.class_sizes.values()) == r.surviving
    assert len(r.representatives) == r.class_count == len(r.class_sizes)
    assert r.filter_mismatches == 0
    assert r.orbit_count >= r.class_count
    json.dumps(r.to_dict(), default=str)


def test_class_labels_agree_with_direct_search(gf3_report):
    # an independent route: search from sampled tuples to the class representative
    F = GF(3)
    rng = np.random.default_rng(5)
    picks = rng.choice(gf3_report._survivors, size=12, replace=False)
    for idx in picks:
        label = gf3_report.class_of(int(idx))
        L = NormalForm.from_index(F, int(idx)).algebra()
        if label.startswith("anomaly:"):
            rep = next(a for a in gf3_report.anomalies if a["representative"] == label)
            target = NormalForm.from_index(F, rep["index"]).algebra()
        else:
            target = catalog(label, F)
        assert isinstance(find_isomorphism(L, target), BasisChange), (idx, label)


def test_anomaly_records_are_complete(gf3_report):
    for a in gf3_report.anomalies:
        assert a["class_size"] == gf3_report.class_sizes[a["representative"]]
        assert gf3_report.class_of(a["index"]) == a["representative"]
        assert set(a["against_catalog"]) == {"L1", "L2", "L3", "L4"}


def test_batch_filter_matches_exact_filter_on_a_chunk():
    p, lo, hi = 3, 20000, 20600
    batch, mismatches = _filter_chunk((p, lo, hi))
    assert mismatches == 0
    assert list(batch) == list(_exact_filter_chunk((p, lo, hi)))


def test_characteristic_two_is_rejected():
    with pytest.raises(UnsupportedField):
        verify_theorem_b(2)


def test_forced_dim5_shape():
    L = forced_dim5(GF(5))
    assert L.dim == 5 and len(L.table) == 3


def test_dim5_report():
    r = verify_dim5(3, round_trips=10, seed=1)
    assert r.ok and r.round_trips_found == 10
    assert len(r.witness) == 5
    assert r.to_dict()["ok"]


def test_enumeration_is_independent_of_parallelism(gf3_report):
    r = verify_theorem_b(3, jobs=2, exact_filter="off")
    assert r.class_sizes == gf3_report.class_sizes
    assert r.representatives == gf3_report.representatives
    assert (r.surviving, r.orbit_count) == (gf3_report.surviving, gf3_report.orbit_count)
    assert [a["index"] for a in r.anomalies] == [a["index"] for a in gf3_report.anomalies]
