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

#include "h2res/basis_factor.h"

#include <klu.h>

#include <cmath>

namespace h2res {

namespace {
constexpr double kPivotFloor = 1e-11;
constexpr double kEtaDrop = 1e-14;
}  // namespace

struct BasisFactor::Klu {
  klu_common common;
  klu_symbolic* symbolic = nullptr;
  klu_numeric* numeric = nullptr;
  std::vector<int> ap, ai;
  std::vector<double> ax;
};

BasisFactor::BasisFactor(const LpData& lp)
    : lp_(lp), m_(lp.num_rows), n_(lp.num_cols), klu_(std::make_unique<Klu>()) {
  klu_defaults(&klu_->common);
  klu_->common.halt_if_singular = 0;
  row_to_kernel_.assign(m_, -1);
  logical_pos_.assign(m_, -1);
}

BasisFactor::~BasisFactor() { release(); }

void BasisFactor::release() {
  if (klu_->numeric) klu_free_numeric(&klu_->numeric, &klu_->common);
  if (klu_->symbolic) klu_free_symbolic(&klu_->symbolic, &klu_->common);
  klu_->numeric = nullptr;
  klu_->symbolic = nullptr;
}

bool BasisFactor::factor(std::vector<int>& head, std::vector<int>& evicted) {
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<int> bad_cols, bad_rows;
    if (factor_kernel(head, bad_cols, bad_rows)) return true;
    if (bad_cols.empty()) return false;
    for (size_t k = 0; k < bad_cols.size(); ++k) {
      const int pos = kernel_pos_[bad_cols[k]];
      evicted.push_back(head[pos]);
      head[pos] = n_ + kernel_rows_[bad_rows[k]];
    }
  }
  return false;
}

bool BasisFactor::factor_kernel(const std::vector<int>& head,
                                std::vector<int>& bad_cols,
                                std::vector<int>& bad_rows) {
  release();
  etas_.clear();
  kernel_cols_.clear();
  kernel_pos_.clear();
  kernel_rows_.clear();
  std::fill(row_to_kernel_.begin(), row_to_kernel_.end(), -1);
  std::fill(logical_pos_.begin(), logical_pos_.end(), -1);
  for (int p = 0; p < m_; ++p) {
    const int v = head[p];
    if (v >= n_) {
      logical_pos_[v - n_] = p;
    } else {
      kernel_cols_.push_back(v);
      kernel_pos_.push_back(p);
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (logical_pos_[i] < 0) {
      row_to_kernel_[i] = static_cast<int>(kernel_rows_.size());
      kernel_rows_.push_back(i);
    }
  }
  const int nk = static_cast<int>(kernel_cols_.size());
  if (static_cast<int>(kernel_rows_.size()) != nk) return false;
  work_.assign(std::max(nk, 1), 0.0);
  if (nk == 0) return true;

  Klu& k = *klu_;
  k.ap.assign(nk + 1, 0);
  k.ai.clear();
  k.ax.clear();
  const SparseMatrix& a = lp_.by_col;
  for (int c = 0; c < nk; ++c) {
    const int j = kernel_cols_[c];
    for (int e = a.start[j]; e < a.start[j + 1]; ++e) {
      const int r = row_to_kernel_[a.index[e]];
      if (r >= 0) {
        k.ai.push_back(r);
        k.ax.push_back(a.value[e]);
      }
    }
    k.ap[c + 1] = static_cast<int>(k.ai.size());
  }
  if (k.ai.empty()) {
    // Every kernel column is empty on its rows: pair them up directly.
    for (int c = 0; c < nk; ++c) {
      bad_cols.push_back(c);
      bad_rows.push_back(c);
    }
    return false;
  }
  k.symbolic = klu_analyze(nk, k.ap.data(), k.ai.data(), &k.common);
  if (!k.symbolic) return false;
  k.numeric = klu_factor(k.ap.data(), k.ai.data(), k.ax.data(), k.symbolic, &k.common);
  if (!k.numeric) return false;
  const double* udiag = static_cast<const double*>(k.numeric->Udiag);
  const int* q = k.symbolic->Q;
  const int* p = k.numeric->Pnum;
  for (int s = 0; s < nk; ++s) {
    if (!(std::abs(udiag[s]) > kPivotFloor)) {
      bad_cols.push_back(q[s]);
      bad_rows.push_back(p[s]);
    }
  }
  if (!bad_cols.empty()) {
    release();
    return false;
  }
  return true;
}

void BasisFactor::ftran(std::vector<double>& b) const {
  const int nk = kernel_size();
  std::vector<double> out(m_, 0.0);
  if (nk > 0) {
    for (int k = 0; k < nk; ++k) work_[k] = b[kernel_rows_[k]];
    klu_solve(klu_->symbolic, klu_->numeric, nk, 1, work_.data(), &klu_->common);
    for (int k = 0; k < nk; ++k) out[kernel_pos_[k]] = work_[k];
  }
  for (int i = 0; i < m_; ++i) {
    if (logical_pos_[i] >= 0) out[logical_pos_[i]] = -b[i];
  }
  const SparseMatrix& a = lp_.by_col;
  for (int k = 0; k < nk; ++k) {
    const double xk = work_[k];
    if (xk == 0.0) continue;
    const int j = kernel_cols_[k];
    for (int e = a.start[j]; e < a.start[j + 1]; ++e) {
      const int lp = logical_pos_[a.index[e]];
      if (lp >= 0) out[lp] += a.value[e] * xk;
    }
  }
  for (const Eta& eta : etas_) {
    const double z = out[eta.pos] / eta.pivot;
    if (z != 0.0) {
      for (size_t t = 0; t < eta.index.size(); ++t) out[eta.index[t]] -= eta.value[t] * z;
    }
    out[eta.pos] = z;
  }
  b.swap(out);
}

void BasisFactor::btran(std::vector<double>& c) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = c[it->pos];
    for (size_t t = 0; t < it->index.size(); ++t) s -= it->value[t] * c[it->index[t]];
    c[it->pos] = s / it->pivot;
  }
  std::vector<double> out(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    if (logical_pos_[i] >= 0) out[i] = -c[logical_pos_[i]];
  }
  const int nk = kernel_size();
  if (nk == 0) {
    c.swap(out);
    return;
  }
  const SparseMatrix& a = lp_.by_col;
  for (int k = 0; k < nk; ++k) {
    double s = c[kernel_pos_[k]];
    const int j = kernel_cols_[k];
    for (int e = a.start[j]; e < a.start[j + 1]; ++e) {
      const int i = a.index[e];
      if (logical_pos_[i] >= 0) s -= a.value[e] * out[i];
    }
    work_[k] = s;
  }
  klu_tsolve(klu_->symbolic, klu_->numeric, nk, 1, work_.data(), &klu_->common);
  for (int k = 0; k < nk; ++k) out[kernel_rows_[k]] = work_[k];
  c.swap(out);
}

void BasisFactor::update(int r, const std::vector<double>& alpha) {
  Eta eta;
  eta.pos = r;
  eta.pivot = alpha[r];
  for (int i = 0; i < m_; ++i) {
    if (i != r && std::abs(alpha[i]) > kEtaDrop) {
      eta.index.push_back(i);
      eta.value.push_back(alpha[i]);
    }
  }
  etas_.push_back(std::move(eta));
}

}  // namespace h2res
