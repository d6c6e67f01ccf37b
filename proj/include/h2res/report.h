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


#ifndef H2RES_REPORT_H_
#define H2RES_REPORT_H_

#include <string>
#include <vector>

#include "h2res/scenario.h"

namespace h2res {

struct ReportInput {
  std::vector<CaseResult> results;
  std::vector<std::string> notes;
};

// Writes dispatch_case<k>.csv per result plus summary.json, ri_table.csv,
// ri_bar.svg, moh.svg, h2_power.svg and avg_voltage.svg. Files are staged and
// moved into out_dir only after every file was written. Returns the file names.
std::vector<std::string> emit_reports(const ReportInput& input, const std::string& out_dir);

std::string dispatch_csv(const CaseResult& result);
std::string summary_json(const ReportInput& input);

// Recomputes every summary number from the dispatch CSVs. Returns one message
// per mismatch larger than tol; empty means the directory is consistent.
std::vector<std::string> verify_reports(const std::string& out_dir, double tol = 1e-9);

}  // namespace h2res

#endif  // H2RES_REPORT_H_
