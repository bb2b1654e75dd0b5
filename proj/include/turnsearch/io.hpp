#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "turnsearch/certificate.hpp"
#include "turnsearch/errors.hpp"
#include "turnsearch/game_sim.hpp"
#include "turnsearch/linear_program.hpp"
#include "turnsearch/numeric.hpp"
#include "turnsearch/strategy.hpp"

namespace turnsearch::io {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Float scalars serialize as JSON numbers, rationals as "p/q" strings.
template <class T>
ordered_json scalar_json(const T& v) {
  if constexpr (is_rational_v<T>) {
    return v.get_str();
  } else {
    return static_cast<double>(v);
  }
}

template <class T>
T scalar_from_json(const json& j) {
  if (j.is_number()) {
    if constexpr (is_rational_v<T>) {
      if (j.is_number_integer()) return Rational(j.get<long>());
      return num::from_double<T>(j.get<double>());
    } else {
      return j.get<double>();
    }
  }
  if (j.is_string()) return num::parse_scalar<T>(j.get<std::string>());
  throw InputError("expected a number or numeric string in LP document");
}

/// {sense, objective[], rows[{coeffs[], rhs}], var_count}
template <class T>
ordered_json lp_to_json(const LinearProgram<T>& lp) {
  ordered_json doc;
  doc["sense"] = "minimize";
  ordered_json obj = ordered_json::array();
  for (const auto& v : lp.objective) obj.push_back(scalar_json(v));
  doc["objective"] = obj;
  ordered_json rows = ordered_json::array();
  for (const auto& row : lp.rows) {
    ordered_json r;
    ordered_json coeffs = ordered_json::array();
    for (const auto& v : row.coeffs) coeffs.push_back(scalar_json(v));
    r["coeffs"] = coeffs;
    r["rhs"] = scalar_json(row.rhs);
    rows.push_back(r);
  }
  doc["rows"] = rows;
  doc["var_count"] = lp.var_count;
  return doc;
}

template <class T>
LinearProgram<T> lp_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("LP document must be a JSON object");
  if (doc.contains("sense") && doc.at("sense") != "minimize") {
    throw InputError("only sense \"minimize\" is supported");
  }
  if (!doc.contains("objective") || !doc.contains("rows")) {
    throw InputError("LP document needs \"objective\" and \"rows\"");
  }
  const json& objective = doc.at("objective");
  std::size_t vars = doc.contains("var_count") ? doc.at("var_count").get<std::size_t>() : objective.size();
  LinearProgram<T> lp(vars);
  lp.objective.clear();
  for (const auto& v : objective) lp.objective.push_back(scalar_from_json<T>(v));
  for (const auto& row : doc.at("rows")) {
    if (!row.contains("coeffs") || !row.contains("rhs")) throw InputError("each row needs \"coeffs\" and \"rhs\"");
    if (row.contains("relation") && row.at("relation") != "<=") {
      throw InputError("only \"<=\" rows are supported");
    }
    std::vector<T> coeffs;
    for (const auto& v : row.at("coeffs")) coeffs.push_back(scalar_from_json<T>(v));
    lp.add_row(std::move(coeffs), scalar_from_json<T>(row.at("rhs")));
  }
  lp.validate();
  return lp;
}

template <class T>
ordered_json solution_to_json(const LpSolution<T>& sol) {
  ordered_json doc;
  doc["status"] = to_string(sol.status);
  if (sol.optimal()) {
    doc["objective"] = scalar_json(sol.objective);
    ordered_json primal = ordered_json::array();
    for (const auto& v : sol.primal) primal.push_back(scalar_json(v));
    doc["primal"] = primal;
    ordered_json dual = ordered_json::array();
    for (const auto& v : sol.dual) dual.push_back(scalar_json(v));
    doc["dual"] = dual;
  } else {
    doc["primal"] = ordered_json::array();
    doc["dual"] = ordered_json::array();
  }
  doc["pivots"] = sol.pivots;
  return doc;
}

template <class T>
ordered_json certificate_to_json(const OptimalityCertificate<T>& cert, std::size_t dual_prefix = 10) {
  ordered_json doc;
  doc["verdict"] = cert.certified() ? "certified" : "failed";
  if (!cert.certified()) doc["reason"] = cert.reason;
  doc["primal_objective"] = scalar_json(cert.primal_objective);
  doc["dual_objective"] = scalar_json(cert.dual_objective);
  doc["mass_residual"] = scalar_json(cert.mass_residual);
  doc["constraints_checked"] = cert.constraint_residuals.size();
  doc["columns_checked"] = cert.dual_column_residuals.size();
  ordered_json prefix = ordered_json::array();
  for (std::size_t j = 0; j < cert.dual_values.size() && j < dual_prefix; ++j) {
    prefix.push_back(scalar_json(cert.dual_values[j]));
  }
  doc["dual_prefix"] = prefix;
  if (cert.envelope) {
    const auto& e = *cert.envelope;
    doc["envelope"] = {{"ratio", scalar_json(e.ratio)},
                       {"constant", num::to_double(e.constant)},
                       {"tail_mass", num::to_double(e.tail_mass)},
                       {"mass_bound", num::to_double(e.mass_bound)},
                       {"tail_weighted", num::to_double(e.tail_weighted)},
                       {"weighted_bound", num::to_double(e.weighted_bound)}};
  }
  ordered_json checks = ordered_json::array();
  for (const auto& c : cert.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}});
  doc["checks"] = checks;
  return doc;
}

template <class T>
ordered_json outcome_to_json(const GameOutcome<T>& o) {
  ordered_json doc;
  doc["found"] = o.found;
  doc["travel"] = num::to_double(o.travel);
  doc["turns"] = o.turns;
  doc["turn_cost_total"] = num::to_double(o.turn_cost_total);
  doc["total_cost"] = num::to_double(o.total_cost);
  doc["opt"] = num::to_double(o.opt);
  if (o.excursion_found) {
    doc["excursion_found"] = *o.excursion_found;
  } else {
    doc["excursion_found"] = nullptr;
  }
  if constexpr (is_rational_v<T>) doc["total_cost_exact"] = o.total_cost.get_str();
  return doc;
}

template <class T>
ordered_json audit_to_json(const GuaranteeAudit<T>& audit, const T& d, int m) {
  ordered_json doc;
  doc["c"] = num::to_double(audit.ratio_coefficient);
  doc["B"] = num::to_double(audit.additive);
  doc["d"] = num::to_double(d);
  doc["m"] = m;
  doc["epsilon"] = num::to_double(audit.epsilon);
  doc["worst_slack"] = num::to_double(audit.worst_slack);
  doc["argmax"] = {{"ray", audit.argmax.ray}, {"distance", num::to_double(audit.argmax.distance)}};
  ordered_json probes = ordered_json::array();
  for (const auto& p : audit.probes) {
    probes.push_back({{"kind", to_string(p.kind)},
                      {"tip", p.tip},
                      {"ray", p.hider.ray},
                      {"distance", num::to_double(p.hider.distance)},
                      {"total_cost", num::to_double(p.outcome.total_cost)},
                      {"turns", p.outcome.turns},
                      {"slack", num::to_double(p.slack)}});
  }
  doc["probes"] = probes;
  return doc;
}

template <class T>
void write_audit_csv(std::ostream& os, const GuaranteeAudit<T>& audit) {
  os << "kind,tip,ray,distance,total_cost,turns,slack\n";
  for (const auto& p : audit.probes) {
    os << to_string(p.kind) << ',' << p.tip << ',' << p.hider.ray << ','
       << num::format_double(num::to_double(p.hider.distance)) << ','
       << num::format_double(num::to_double(p.outcome.total_cost)) << ',' << p.outcome.turns << ','
       << num::format_double(num::to_double(p.slack)) << '\n';
  }
}

/// One step length per line; blank lines and lines starting with '#' are skipped.
template <class T>
std::vector<T> read_strategy_steps(std::istream& is) {
  std::vector<T> steps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    try {
      steps.push_back(num::parse_scalar<T>(std::string_view(line).substr(first, last - first + 1)));
    } catch (const InputError& e) {
      throw InputError("strategy file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return steps;
}

}  // namespace turnsearch::io
