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

#ifndef H2RES_ERROR_H_
#define H2RES_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace h2res {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Broken preconditions of a pure function (e.g. a DG producing while off).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised while assembling a model; `tag` names the offending constraint,
// variable or asset.
class BuildError : public std::runtime_error {
 public:
  BuildError(std::string tag, const std::string& what)
      : std::runtime_error(tag + ": " + what), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::string> tags)
      : std::runtime_error(what), tags_(std::move(tags)) {}
  const std::vector<std::string>& binding_tags() const { return tags_; }

 private:
  std::vector<std::string> tags_;
};

}  // namespace h2res

#endif  // H2RES_ERROR_H_
