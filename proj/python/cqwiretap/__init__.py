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

"""Python access to the cqwiretap core.

Operators are complex numpy arrays; channels are lists of density
matrices indexed by input symbol; BRI functions are seed-by-input tables
of output indices together with the list of regular outputs.
"""

from ._core import (
    ConstructionUnverifiedError,
    DimensionError,
    DomainError,
    Error,
    InvalidStateError,
    PreconditionError,
    ResourceError,
    ValidationError,
    adversarial_leakage,
    capacity_single_letter,
    certify_chain,
    construct_exhaustive,
    construct_seeded,
    entropy,
    holevo,
    holevo_avgrelent,
    holevo_relent,
    max_lambda2,
    relative_entropy,
    renyi_relative_entropy,
    section_matrix,
    typicality,
    verify_bri,
)

__all__ = [
    "ConstructionUnverifiedError",
    "DimensionError",
    "DomainError",
    "Error",
    "InvalidStateError",
    "PreconditionError",
    "ResourceError",
    "ValidationError",
    "adversarial_leakage",
    "capacity_single_letter",
    "certify_chain",
    "construct_exhaustive",
    "construct_seeded",
    "entropy",
    "holevo",
    "holevo_avgrelent",
    "holevo_relent",
    "max_lambda2",
    "relative_entropy",
    "renyi_relative_entropy",
    "section_matrix",
    "typicality",
    "verify_bri",
]
