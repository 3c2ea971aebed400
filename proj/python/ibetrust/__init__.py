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

"""IBE-Trust sensor network simulator: identity-based encryption, secure boot,
one-pass key exchange, and energy accounting."""

from ._core import (
    Params,
    PrivateKey,
    __version__,
    boot,
    decrypt,
    e_comm,
    e_total,
    encrypt,
    extract,
    fragment,
    joules,
    key_exchange,
    measure,
    paper_airtime,
    run_scenario,
    setup,
    trust_value,
    verify_bilinearity,
)

__all__ = [
    "Params",
    "PrivateKey",
    "boot",
    "decrypt",
    "e_comm",
    "e_total",
    "encrypt",
    "extract",
    "fragment",
    "joules",
    "key_exchange",
    "measure",
    "paper_airtime",
    "run_scenario",
    "setup",
    "trust_value",
    "verify_bilinearity",
]
