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


#include "h2res/report.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <system_error>

#include <json.hpp>

#include "h2res/error.h"
#include "h2res/io.h"

namespace h2res {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kWidth = 800, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;

struct Curve {
  std::string label;
  std::vector<double> y;
  bool dashed = false;
};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_open(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"{0:.0f}\" height=\"{1:.0f}\" fill=\"white\"/>\n"
      "<text x=\"{2:.2f}\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">{3}</text>\n",
      kWidth, kHeight, (kLeft + kWidth - kRight) / 2, esc(title));
}

std::string tick(double v) {
  if (std::abs(v) < 1e-12) return "0";
  return fmt::format("{:.4g}", v);
}

// Axes with five y ticks; returns the frame markup.
std::string axes(double y0, double y1, int x_count, const std::string& xlabel,
                 const std::string& ylabel) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  std::string s = fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"#333\"/>\n",
      kLeft, kTop, pw, ph);
  for (int k = 0; k <= 4; ++k) {
    const double v = y0 + (y1 - y0) * k / 4.0;
    const double y = kTop + ph - ph * k / 4.0;
    s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#ddd\"/>\n",
                     kLeft, y, kLeft + pw, y);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6,
                     y + 4, tick(v));
  }
  if (x_count > 1) {
    const int step = std::max(1, (x_count + 7) / 8);
    for (int i = 0; i < x_count; i += step) {
      const double x = kLeft + pw * i / (x_count - 1);
      s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x,
                       kTop + ph + 16, i + 1);
    }
  }
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                   kLeft + pw / 2, kHeight - 12, esc(xlabel));
  s += fmt::format(
      "<text x=\"16\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">{}</text>\n",
      kTop + ph / 2, kTop + ph / 2, esc(ylabel));
  return s;
}

std::pair<double, double> y_range(const std::vector<Curve>& curves,
                                  const std::vector<double>& hlines) {
  double lo = kInf, hi = -kInf;
  for (const Curve& c : curves)
    for (double v : c.y) lo = std::min(lo, v), hi = std::max(hi, v);
  for (double v : hlines) lo = std::min(lo, v), hi = std::max(hi, v);
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string line_chart(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<Curve>& curves,
                       const std::vector<double>& hlines = {},
                       const std::string& empty_note = "") {
  std::string s = svg_open(title);
  size_t count = 0;
  for (const Curve& c : curves) count = std::max(count, c.y.size());
  const auto [y0, y1] = y_range(curves, hlines);
  s += axes(y0, y1, static_cast<int>(count), xlabel, ylabel);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](size_t i) { return count > 1 ? kLeft + pw * i / (count - 1) : kLeft + pw / 2; };
  auto py = [&](double v) { return kTop + ph - ph * (v - y0) / (y1 - y0); };
  for (double h : hlines) {
    s += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#555\" "
        "stroke-dasharray=\"6 4\"/>\n",
        kLeft, py(h), kLeft + pw, py(h));
  }
  for (size_t k = 0; k < curves.size(); ++k) {
    const Curve& c = curves[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string pts;
    for (size_t i = 0; i < c.y.size(); ++i) {
      pts += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(i), py(c.y[i]));
    }
    s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n",
                     color, c.dashed ? " stroke-dasharray=\"4 3\"" : "", pts);
    const double ly = kTop + 14 + 18 * k;
    s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                     "stroke-width=\"2\"/>\n",
                     kWidth - kRight + 12, ly, kWidth - kRight + 32, ly, color);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kWidth - kRight + 38, ly + 4,
                     esc(c.label));
  }
  if (curves.empty() && !empty_note.empty()) {
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + pw / 2, kTop + ph / 2, esc(empty_note));
  }
  return s + "</svg>\n";
}

std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::string& ylabel) {
  std::string s = svg_open(title);
  const double y0 = 0.0;
  double y1 = 100.0;
  for (double v : values) y1 = std::max(y1, v);
  s += axes(y0, y1, 0, "case", ylabel);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double slot = pw / std::max<size_t>(values.size(), 1);
  for (size_t k = 0; k < values.size(); ++k) {
    const double h = ph * (values[k] - y0) / (y1 - y0);
    const double x = kLeft + slot * k + slot * 0.15;
    s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                     x, kTop + ph - h, slot * 0.7, h, kPalette[k % std::size(kPalette)]);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.2f}</text>\n",
                     x + slot * 0.35, kTop + ph - h - 4, values[k]);
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     x + slot * 0.35, kTop + ph + 16, esc(labels[k]));
  }
  return s + "</svg>\n";
}

const CaseResult* hydrogen_case(const std::vector<CaseResult>& results) {
  for (const CaseResult& r : results) {
    if (r.spec.storage == StorageKind::kHydrogen) return &r;
  }
  return nullptr;
}

std::vector<Curve> columns_with_prefix(const CaseResult& r, const std::string& prefix,
                                       const std::string& label, double sign = 1.0) {
  std::vector<Curve> out;
  for (const Series& s : r.dispatch) {
    if (s.name.rfind(prefix + "[", 0) != 0) continue;
    Curve c;
    c.label = label + " " + s.name.substr(prefix.size());
    c.y = s.values;
    for (double& v : c.y) v *= sign;
    out.push_back(std::move(c));
  }
  return out;
}

std::string ri_table(const std::vector<CaseResult>& results) {
  std::string s =
      "case,label,method,status,ens_mwh,total_load_mwh,ri_percent,published_ens_mwh,"
      "published_ri_percent\n";
  for (const CaseResult& r : results) {
    std::string pub_e, pub_r;
    for (const PublishedCase& p : published_results()) {
      if (p.id == r.spec.id) pub_e = format_double(p.ens_mwh), pub_r = format_double(p.ri_percent);
    }
    s += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.spec.id, r.spec.label(), r.method,
                     to_string(r.status), format_double(r.ens), format_double(r.total_load),
                     format_double(r.resilience_index), pub_e, pub_r);
  }
  return s;
}

std::string case_file(int id) { return fmt::format("dispatch_case{}.csv", id); }

}  // namespace

std::string dispatch_csv(const CaseResult& result) {
  std::string s;
  for (size_t k = 0; k < result.dispatch.size(); ++k) {
    s += (k ? "," : "") + result.dispatch[k].name;
  }
  s += "\n";
  for (int t = 0; t < result.horizon; ++t) {
    for (size_t k = 0; k < result.dispatch.size(); ++k) {
      s += (k ? "," : "") + format_double(result.dispatch[k].values[t]);
    }
    s += "\n";
  }
  return s;
}

std::string summary_json(const ReportInput& input) {
  ordered_json doc;
  doc["cases"] = ordered_json::array();
  for (const CaseResult& r : input.results) {
    ordered_json c;
    c["id"] = r.spec.id;
    c["label"] = r.spec.label();
    c["dispatch"] = case_file(r.spec.id);
    c["method"] = r.method;
    c["status"] = to_string(r.status);
    c["objective"] = r.objective;
    c["bound"] = r.bound;
    c["gap"] = r.gap;
    c["horizon"] = r.horizon;
    c["dt"] = r.dt;
    c["voll"] = r.voll;
    c["event_start"] = r.event_start;
    c["event_end"] = r.event_end;
    c["ens"] = r.ens;
    c["ens_pre_event"] = r.ens_pre_event;
    c["ens_event"] = r.ens_event;
    c["ens_post_event"] = r.ens_post_event;
    c["total_load"] = r.total_load;
    c["resilience_index"] = r.resilience_index;
    ordered_json costs;
    for (const auto& [name, v] : r.cost_breakdown) costs[name] = v;
    c["costs"] = costs;
    c["per_node_shed"] = r.per_node_shed;
    c["nodes"] = r.stats.nodes;
    c["lp_iterations"] = r.stats.lp_iterations;
    doc["cases"].push_back(c);
  }
  doc["notes"] = input.notes;
  return doc.dump(2) + "\n";
}

std::vector<std::string> emit_reports(const ReportInput& input, const std::string& out_dir) {
  if (input.results.empty()) throw InvalidArgument("no results to report");
  std::map<std::string, std::string> files;
  for (const CaseResult& r : input.results) files[case_file(r.spec.id)] = dispatch_csv(r);
  files["summary.json"] = summary_json(input);
  files["ri_table.csv"] = ri_table(input.results);

  std::vector<std::string> labels;
  std::vector<double> ri;
  for (const CaseResult& r : input.results) {
    labels.push_back(fmt::format("{}: {}", r.spec.id, r.spec.label()));
    ri.push_back(r.resilience_index);
  }
  files["ri_bar.svg"] = bar_chart("Resilience index by case", labels, ri, "RI (%)");

  const CaseResult* h2 = hydrogen_case(input.results);
  const std::string none = "no hydrogen case in this run";
  files["moh.svg"] = line_chart("Mass of hydrogen in storage", "hour", "kg",
                                h2 ? columns_with_prefix(*h2, "MOH", "tank") : std::vector<Curve>{},
                                {}, none);
  std::vector<Curve> power;
  if (h2) {
    power = columns_with_prefix(*h2, "P_EL", "electrolyzer", -1.0);
    for (Curve& c : columns_with_prefix(*h2, "P_FC", "fuel cell")) {
      c.dashed = true;
      power.push_back(std::move(c));
    }
  }
  files["h2_power.svg"] = line_chart("Hydrogen system power (consumed < 0 < generated)", "hour",
                                     "MW", power, {}, none);
  std::vector<Curve> volts;
  for (const CaseResult& r : input.results) {
    if (const Series* v = r.find("V_avg")) volts.push_back({fmt::format("case {}", r.spec.id), v->values});
  }
  files["avg_voltage.svg"] = line_chart("Average voltage", "hour", "pu", volts, {0.95, 1.05});

  const fs::path out(out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  const fs::path stage = out / ".staging";
  fs::remove_all(stage, ec);
  fs::create_directory(stage, ec);
  if (ec) throw IoError("cannot write to " + out_dir + ": " + ec.message());
  std::vector<std::string> names;
  try {
    for (const auto& [name, text] : files) {
      write_text_file((stage / name).string(), text);
      names.push_back(name);
    }
    for (const std::string& name : names) {
      fs::rename(stage / name, out / name, ec);
      if (ec) throw IoError("cannot move " + name + " into " + out_dir + ": " + ec.message());
    }
  } catch (...) {
    fs::remove_all(stage, ec);
    throw;
  }
  fs::remove_all(stage, ec);
  return names;
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>* get(const std::string& name) const {
    for (size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return &columns[k];
    }
    return nullptr;
  }
};

Table load_table(const std::string& path) {
  const CsvTable csv = read_csv(path);
  Table t;
  t.header = csv.header;
  t.columns.assign(csv.header.size(), {});
  for (const auto& row : csv.rows) {
    for (size_t k = 0; k < row.size() && k < t.columns.size(); ++k) {
      t.columns[k].push_back(parse_double(row[k], path));
    }
  }
  return t;
}

}  // namespace

std::vector<std::string> verify_reports(const std::string& out_dir, double tol) {
  const fs::path out(out_dir);
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_text_file((out / "summary.json").string()));
  } catch (const ordered_json::exception& e) {
    throw IoError("summary.json: " + std::string(e.what()));
  }
  std::vector<std::string> issues;
  auto check = [&](int id, const std::string& what, double reported, double recomputed) {
    if (!(std::abs(reported - recomputed) <= tol * std::max(1.0, std::abs(recomputed)))) {
      issues.push_back(fmt::format("case {}: {} reported {} recomputed {}", id, what,
                                   format_double(reported), format_double(recomputed)));
    }
  };
  for (const auto& c : doc.at("cases")) {
    const int id = c.at("id").get<int>();
    const Table t = load_table((out / c.at("dispatch").get<std::string>()).string());
    const double dt = c.at("dt").get<double>();
    const double voll = c.at("voll").get<double>();
    const int start = c.at("event_start").get<int>();
    const int end = c.at("event_end").get<int>();
    const std::vector<double>* hour = t.get("hour");
    const std::vector<double>* load = t.get("load_p");
    const std::vector<double>* price = t.get("price");
    const std::vector<double>* pst = t.get("P_ST[0]");
    if (!hour || !load || !price) {
      issues.push_back(fmt::format("case {}: dispatch file lacks hour/load_p/price", id));
      continue;
    }
    const size_t T = hour->size();
    std::vector<double> shed(T, 0.0);
    std::vector<double> node_shed;
    for (size_t k = 0; k < t.header.size(); ++k) {
      const std::string& h = t.header[k];
      if (h.rfind("P_Shd[", 0) != 0) continue;
      const int node = std::stoi(h.substr(6));
      if (node >= static_cast<int>(node_shed.size())) node_shed.resize(node + 1, 0.0);
      for (size_t i = 0; i < T; ++i) {
        shed[i] += t.columns[k][i];
        node_shed[node] += t.columns[k][i] * dt;
      }
    }
    double ens = 0, pre = 0, during = 0, post = 0, total = 0, grid = 0, shed_cost = 0;
    for (size_t i = 0; i < T; ++i) {
      const double e = shed[i] * dt;
      const int h = static_cast<int>((*hour)[i]);
      ens += e;
      total += (*load)[i] * dt;
      if (start == 0 || h < start) {
        pre += e;
      } else if (h <= end) {
        during += e;
      } else {
        post += e;
      }
      if (pst) grid += (*price)[i] * (*pst)[i] * dt;
      shed_cost += voll * shed[i] * dt;
    }
    check(id, "ens", c.at("ens").get<double>(), ens);
    check(id, "ens_pre_event", c.at("ens_pre_event").get<double>(), pre);
    check(id, "ens_event", c.at("ens_event").get<double>(), during);
    check(id, "ens_post_event", c.at("ens_post_event").get<double>(), post);
    check(id, "total_load", c.at("total_load").get<double>(), total);
    if (total > 0.0) {
      check(id, "resilience_index", c.at("resilience_index").get<double>(),
            (total - std::min(ens, total)) / total * 100.0);
    }
    const auto& costs = c.at("costs");
    check(id, "costs.grid", costs.at("grid").get<double>(), grid);
    check(id, "costs.shed", costs.at("shed").get<double>(), shed_cost);
    double objective = 0.0;
    for (const auto& [name, value] : costs.items()) {
      const std::vector<double>* col = t.get("cost_" + name);
      if (!col) {
        issues.push_back(fmt::format("case {}: dispatch file lacks cost_{}", id, name));
        continue;
      }
      double sum = 0.0;
      for (double v : *col) sum += v;
      check(id, "costs." + name, value.get<double>(), sum);
      objective += sum;
    }
    check(id, "objective", c.at("objective").get<double>(), objective);
    const auto reported_nodes = c.at("per_node_shed").get<std::vector<double>>();
    node_shed.resize(std::max(node_shed.size(), reported_nodes.size()), 0.0);
    for (size_t n = 0; n < reported_nodes.size(); ++n) {
      check(id, fmt::format("per_node_shed[{}]", n), reported_nodes[n], node_shed[n]);
    }
  }
  return issues;
}

}  // namespace h2res
