# Copyright 2026 The cqwiretap Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import pathlib

import numpy as np
import pytest

import cqwiretap as cq

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def random_density(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def test_entropy_of_maximally_mixed_qubit():
    assert cq.entropy(np.eye(2, dtype=complex) / 2) == pytest.approx(1.0, abs=1e-12)


def test_renyi_two_of_pure_against_mixed():
    rho = np.diag([1.0, 0.0]).astype(complex)
    sigma = np.eye(2, dtype=complex) / 2
    assert cq.renyi_relative_entropy(2.0, rho, sigma) == pytest.approx(1.0, abs=1e-12)
    assert cq.relative_entropy(rho, sigma) == pytest.approx(1.0, abs=1e-12)


def test_holevo_forms_agree():
    rng = np.random.default_rng(1)
    states = [random_density(rng, 3) for _ in range(4)]
    p = rng.dirichlet(np.ones(4)).tolist()
    a = cq.holevo(p, states)
    assert cq.holevo_relent(p, states) == pytest.approx(a, abs=1e-9)
    assert cq.holevo_avgrelent(p, states) == pytest.approx(a, abs=1e-9)


def test_incidence_section_is_biregular():
    spec = json.loads((DATA / "incidence_section.json").read_text())
    rep = cq.verify_bri(spec["table"], spec["M"])
    assert rep["ok"]
    assert (rep["d_s"], rep["d_x"]) == (4, 3)


def test_parity_table_is_rejected():
    rep = cq.verify_bri([[0, 1]], [0])
    assert not rep["ok"]


def test_section_matrix_is_doubly_stochastic():
    table = [[0, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 1]]
    p, lam = cq.section_matrix(table, [0, 1], 0)
    assert np.allclose(p.sum(axis=0), 1.0)
    assert np.allclose(p, p.T)
    eig = np.sort(np.abs(np.linalg.eigvalsh(p)))
    assert lam == pytest.approx(eig[-2], abs=1e-12)


def test_bound_chain_holds_on_toy():
    table = [[0, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 1]]
    rng = np.random.default_rng(2)
    states = [random_density(rng, 2) for _ in range(4)]
    reports = cq.certify_chain(table, [0, 1], states, [0.3, 0.7])
    assert len(reports) == 5
    assert all(r["holds"] for r in reports)


def test_capacity_with_identical_channels_is_zero():
    states = [np.diag([0.7, 0.3]).astype(complex), np.diag([0.3, 0.7]).astype(complex)]
    assert cq.capacity_single_letter(states, states)["value"] == 0.0


def test_capacity_noiseless_against_bsc():
    w = [np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)]
    v = [np.diag([0.7, 0.3]).astype(complex), np.diag([0.3, 0.7]).astype(complex)]
    h = -0.7 * math.log2(0.7) - 0.3 * math.log2(0.3)
    assert cq.capacity_single_letter(w, v)["value"] == pytest.approx(h, abs=1e-6)


def test_exhaustive_construction():
    found = cq.construct_exhaustive(4, 4, 2, 1.0 - 1e-9)
    assert found is not None
    table, regular = found
    assert cq.verify_bri(table, regular)["ok"]
    assert cq.max_lambda2(table, regular) < 1.0


def test_seeded_construction_is_gated():
    try:
        table, regular = cq.construct_seeded(2, 8)
    except cq.ConstructionUnverifiedError:
        return
    assert cq.max_lambda2(table, regular) <= 0.5 + 1e-12


def test_typicality_exact_reports():
    r = cq.typicality(np.diag([0.75, 0.25]).astype(complex), 8, 0.4)
    assert all(b["holds"] for b in r["exact"])


def test_invalid_state_raises():
    with pytest.raises(cq.InvalidStateError):
        cq.entropy(np.eye(2, dtype=complex))
    with pytest.raises(cq.Error):
        cq.entropy(np.eye(2, dtype=complex))
