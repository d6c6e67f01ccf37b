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
"""Solves an MPS file with HiGHS and prints the objective on one line."""

import sys

import highspy


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: highs_solve.py MODEL.mps", file=sys.stderr)
        return 2
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 1e-9)
    h.setOptionValue("time_limit", 600.0)
    if h.readModel(sys.argv[1]) != highspy.HighsStatus.kOk:
        print("cannot read " + sys.argv[1], file=sys.stderr)
        return 3
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print("status " + h.modelStatusToString(status), file=sys.stderr)
        return 1
    print(repr(h.getInfo().objective_function_value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
