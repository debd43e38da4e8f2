#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gaugeprob/cli/prob_json.hpp"
#include "gaugeprob/quadrature.hpp"
#include "gaugeprob/stochastic.hpp"

namespace gaugeprob::cli {

inline constexpr const char* kReportSchema = "gaugeprob.report/1";

// Fixed-column table behind the CSV format. Reals use 17 significant digits.
struct Table {
  using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const {
    std::string out;
    append_row(out, columns);
    for (const auto& row : rows) {
      std::vector<std::string> cells;
      for (const auto& c : row) cells.push_back(format(c));
      append_row(out, cells);
    }
    return out;
  }

  static std::string format(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c));
      return buf;
    }
    if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return "";
  }

 private:
  static void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const auto& s = cells[i];
      if (s.find_first_of(",\"\n") == std::string::npos) {
        out += s;
        continue;
      }
      out += '"';
      for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  }
};

// Non-finite reals become null.
inline OrderedJson real(double v) { return std::isfinite(v) ? OrderedJson(v) : OrderedJson(); }

inline OrderedJson real(const std::optional<double>& v) {
  return v ? real(*v) : OrderedJson();
}

inline OrderedJson quadrature_to_json(const QuadratureResult& q) {
  OrderedJson j;
  j["value"] = real(q.value);
  j["refinement_levels"] = q.refinement_levels;
  j["final_mesh_bound"] = real(q.final_mesh_bound);
  j["converged"] = q.converged;
  OrderedJson trace = OrderedJson::array();
  for (const auto& r : q.trace)
    trace.push_back({{"level", r.level},
                     {"pieces", r.pieces},
                     {"mesh_bound", real(r.mesh)},
                     {"sum", real(r.sum)}});
  j["trace"] = std::move(trace);
  return j;
}

inline OrderedJson certificate_to_json(const std::vector<CertificateRow>& rows) {
  OrderedJson out = OrderedJson::array();
  for (const auto& r : rows)
    out.push_back({{"division", r.division},
                   {"level", r.level},
                   {"eps", real(r.eps)},
                   {"eta", real(r.eta)},
                   {"achieved_tail", real(r.achieved_tail)},
                   {"mesh_bound", real(r.mesh_bound)}});
  return out;
}

inline OrderedJson stochastic_to_json(const StochasticIntegralResult& r) {
  OrderedJson j;
  j["method"] = to_string(r.method);
  j["converged"] = r.converged;
  j["verified"] = r.verified;
  j["refinement_levels"] = r.refinement_levels;
  j["verification_level"] = r.verification_level;
  j["final_mesh_bound"] = real(r.final_mesh_bound);
  j["final_pieces"] = r.final_division ? r.final_division->size() : 0;
  j["expectation"] = real(expectation(r.integral));
  j["space"] = space_to_json(*r.integral.space());
  j["integral"] = variable_to_json(r.integral);
  j["certificate"] = certificate_to_json(r.certificate);
  if (!r.term_results.empty()) {
    OrderedJson terms = OrderedJson::array();
    for (const auto& q : r.term_results) {
      OrderedJson t = quadrature_to_json(q);
      t.erase("trace");
      terms.push_back(std::move(t));
    }
    j["term_results"] = std::move(terms);
  }
  return j;
}

inline Table integral_table(const RandomVariable& integral) {
  Table t{{"outcome", "label", "weight", "integral"}, {}};
  const auto& space = *integral.space();
  for (std::size_t w = 0; w < integral.size(); ++w)
    t.rows.push_back({static_cast<std::int64_t>(w), space.labels()[w], space.weight(w),
                      integral[w]});
  return t;
}

}  // namespace gaugeprob::cli
