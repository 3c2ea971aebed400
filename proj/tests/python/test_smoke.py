# Copyright (c) 2026 The ibetrust Authors.
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

import math
import os
from pathlib import Path

import pytest

import ibetrust

DATA = Path(os.environ.get("IBETRUST_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def toy():
    return ibetrust.setup("toy", seed=7)


@pytest.fixture(scope="module")
def demo():
    return ibetrust.setup("demo", seed=7)


def test_version():
    assert ibetrust.__version__


def test_profiles(toy, demo):
    assert int(toy.p, 16) == 227
    assert int(toy.q, 16) == 19
    assert demo.point_bytes == 64
    with pytest.raises(ValueError):
        ibetrust.setup("huge")


def test_roundtrip(demo):
    key = ibetrust.extract(demo, "node-001")
    ct = ibetrust.encrypt(demo, "node-001", b"hello sensor", seed=3)
    assert ibetrust.decrypt(demo, key, ct) == b"hello sensor"
    other = ibetrust.extract(demo, "node-002")
    assert ibetrust.decrypt(demo, other, ct) is None
    tampered = bytearray(ct)
    tampered[-1] ^= 1
    assert ibetrust.decrypt(demo, key, bytes(tampered)) is None
    assert ibetrust.decrypt(demo, key, b"short") is None


def test_bilinearity(toy, demo):
    for a, b in [(2, 3), (5, 17), (11, 13)]:
        assert ibetrust.verify_bilinearity(toy, a, b)
        assert ibetrust.verify_bilinearity(demo, a, b)


def test_key_exchange(demo):
    initiator, responder = ibetrust.key_exchange(demo, "node-001", "node-002", seed=4)
    assert initiator == responder
    assert len(initiator) == 16


def test_secure_boot():
    import hashlib

    images = [b"bl1" * 40, b"bl2" * 40, b"bl3" * 40]
    digest = hashlib.sha256(images[1]).hexdigest()
    assert ibetrust.measure(images[1]) == digest
    assert ibetrust.trust_value(digest) == digest[24:32]
    ok = ibetrust.boot(images, images)
    assert ok == {"ok": True, "trust_value": digest[24:32]}
    bad = ibetrust.boot(images, [images[0], images[1], b"evil"])
    assert bad == {"ok": False, "failed_level": 3}


def test_energy():
    assert math.isclose(ibetrust.joules(0.072, 0.23), 0.01656)
    assert math.isclose(ibetrust.e_comm(319, 480), 319 * 1.83e-6 + 480 * 1.98e-6)
    assert math.isclose(ibetrust.e_total(1, 1, 160, 0, 0), 0.072 * 0.059 + 0.072 * 0.23 + 160 * 22.5e-6)
    assert round(ibetrust.paper_airtime(400), 2) == 479.25
    with pytest.raises(ValueError):
        ibetrust.joules(-1, 1)


def test_fragment():
    frames = ibetrust.fragment(bytes(400))
    assert len(frames) == 4
    assert sum(len(f) for f in frames) == 484
    assert all(len(f) <= 127 for f in frames)


def test_run_scenario():
    result = ibetrust.run_scenario(str(DATA / "scenarios" / "replay.json"))
    assert result["attacks"]
    assert all(a["verdict"] == "blocked" for a in result["attacks"])
    again = ibetrust.run_scenario(str(DATA / "scenarios" / "replay.json"))
    assert again["report"] == result["report"]
    assert again["log"] == result["log"]
    with pytest.raises(ValueError):
        ibetrust.run_scenario(str(DATA / "scenarios" / "nope.json"))
