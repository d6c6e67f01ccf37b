// Copyright 2026 The h2res Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef H2RES_MPS_WRITER_H_
#define H2RES_MPS_WRITER_H_

#include <string>

#include "h2res/milp_model.h"

namespace h2res {

// Fixed-column MPS text for the model. Rows are named R0000001... in tag
// order and columns C0000001... in variable order; comment lines map each
// name back to its tag. Output depends only on the model.
std::string export_interchange(const MilpModel& model, const std::string& name = "H2RES");

// Shortest decimal form that fits the 12-character MPS number field.
std::string mps_number(double value);

}  // namespace h2res

#endif  // H2RES_MPS_WRITER_H_
