# Copyright 2026 The h2res Authors.
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
"""Resilience-oriented scheduling of hydrogen systems in radial feeders."""

from ._h2res import (
    BuildError,
    CaseResult,
    InfeasibleError,
    Study,
    SuiteReport,
    TopologyError,
    back_solved_total_load,
    case_labels,
    cli,
    compute_resilience_index,
    emit_reports,
    run_case,
    run_suite,
    verify_reports,
)

__all__ = [
    "BuildError",
    "CaseResult",
    "InfeasibleError",
    "Study",
    "SuiteReport",
    "TopologyError",
    "back_solved_total_load",
    "case_labels",
    "cli",
    "compute_resilience_index",
    "emit_reports",
    "run_case",
    "run_suite",
    "verify_reports",
]
