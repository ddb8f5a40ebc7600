#pragma once

// JSON and CSV serialisation of states, decompositions, verdicts and reports.
//
// State file: {"dims":[d1,...], "matrix":[[[re,im], ...], ...]} (row-major).
// Verdict:    {"criterion", "value", "bound", "verdict", "params":{...}}.
// Report CSV: criterion,alpha,beta,m,normalization,threshold,value,bound,verdict

#include "hwsep/analysis.hpp"
#include "hwsep/bloch.hpp"
#include "hwsep/criteria.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

namespace hwsep::io {

using nlohmann::json;

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json state_to_json(const DensityMatrix& rho) {
  return {{"dims", rho.dims()}, {"matrix", matrix_to_json(rho.matrix())}};
}

/// Parses and validates a state document. Schema or state violations raise
/// ContractError.
inline DensityMatrix state_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
    throw ContractError("state file: expected object with \"dims\" and \"matrix\"");
  }
  Dims dims;
  try {
    for (const auto& d : doc.at("dims")) {
      const auto v = d.get<long long>();
      if (v <= 0) throw ContractError("state file: dims must be positive");
      dims.push_back(static_cast<std::size_t>(v));
    }
  } catch (const json::exception& e) {
    throw ContractError(std::string("state file: bad dims: ") + e.what());
  }
  const auto& rows = doc.at("matrix");
  if (!rows.is_array()) throw ContractError("state file: matrix must be an array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  try {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw ContractError("state file: matrix must be square");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto& e = row[static_cast<std::size_t>(j)];
        if (!e.is_array() || e.size() != 2) {
          throw ContractError("state file: entries must be [re, im] pairs");
        }
        m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw ContractError(std::string("state file: bad matrix entry: ") + e.what());
  }
  return DensityMatrix(std::move(m), std::move(dims));
}

inline DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open state file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ContractError(std::string("state file is not valid JSON: ") + e.what());
  }
  return state_from_json(doc);
}

inline void save_state(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write state file: " + path);
  out << state_to_json(rho).dump() << '\n';
}

inline json bloch_to_json(const BlochDecomposition& dec) {
  return {{"dims", {dec.d1, dec.d2}},
          {"normalization", to_string(dec.normalization)},
          {"r", vector_to_json(dec.r.coeffs)},
          {"s", vector_to_json(dec.s.coeffs)},
          {"T", matrix_to_json(dec.T)}};
}

inline json bloch_to_json(const BlochVector& r) {
  return {{"dims", {r.dim}},
          {"normalization", to_string(r.normalization)},
          {"r", vector_to_json(r.coeffs)}};
}

inline json params_to_json(const CriterionParams& p) {
  json out = json::object();
  if (p.alpha) out["alpha"] = *p.alpha;
  if (p.beta) out["beta"] = *p.beta;
  if (!p.alphas.empty()) out["alphas"] = p.alphas;
  if (p.m) out["m"] = *p.m;
  out["normalization"] = to_string(p.normalization);
  if (!p.partition.empty()) {
    // one-based on the wire
    json side = json::array();
    for (auto k : p.partition) side.push_back(k + 1);
    out["partition"] = std::move(side);
  }
  return out;
}

inline json verdict_to_json(const CriterionVerdict& v) {
  return {{"criterion", v.criterion},
          {"value", v.value},
          {"bound", v.bound},
          {"verdict", to_string(v.verdict)},
          {"params", params_to_json(v.params)}};
}

inline json spec_to_json(const CriterionSpec& s) {
  json out = {{"criterion", to_string(s.kind)}};
  switch (s.kind) {
    case CriterionKind::hw:
      out["normalization"] = to_string(s.normalization);
      [[fallthrough]];
    case CriterionKind::isc:
      out["alpha"] = s.alpha;
      out["beta"] = s.beta;
      out["m"] = s.m;
      break;
    case CriterionKind::thm2:
      out["alphas"] = s.alphas;
      out["m"] = s.m;
      break;
    default:
      break;
  }
  return out;
}

inline json threshold_to_json(const ThresholdResult& t) {
  json out = spec_to_json(t.spec);
  out["family"] = t.family;
  out["threshold"] = t.threshold ? json(*t.threshold) : json(nullptr);
  out["interval"] = t.interval;
  out["evaluations"] = t.evaluations;
  out["sign_changes"] = t.sign_changes;
  out["non_monotone"] = t.non_monotone;
  if (t.at_threshold) out["at_threshold"] = verdict_to_json(*t.at_threshold);
  return out;
}

inline json report_to_json(const ComparisonReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    if (row.threshold) {
      rows.push_back(threshold_to_json(*row.threshold));
    } else if (row.verdict) {
      rows.push_back(verdict_to_json(*row.verdict));
    }
  }
  return {{"subject", r.subject}, {"rows", std::move(rows)}};
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

inline constexpr std::string_view csv_header =
    "criterion,alpha,beta,m,normalization,threshold,value,bound,verdict";

namespace detail {

inline std::string csv_row(const CriterionSpec& spec, const std::string& threshold,
                           const CriterionVerdict* v) {
  const bool has_ab = spec.kind == CriterionKind::hw || spec.kind == CriterionKind::isc;
  std::string m_field;
  if (spec.kind == CriterionKind::vb) {
    m_field = "0";
  } else if (spec.kind == CriterionKind::lb) {
    m_field = "1";
  } else if (spec.kind != CriterionKind::ppt) {
    m_field = std::to_string(spec.m);
  }
  std::string norm = spec.kind == CriterionKind::hw ? std::string(to_string(spec.normalization))
                     : spec.kind == CriterionKind::ppt || spec.kind == CriterionKind::thm2
                         ? std::string()
                         : std::string("rescaled");
  std::ostringstream os;
  os << to_string(spec.kind) << ','
     << (has_ab ? format_double(spec.alpha) : spec.kind == CriterionKind::lb ? "1" : "") << ','
     << (has_ab ? format_double(spec.beta) : spec.kind == CriterionKind::lb ? "1" : "") << ','
     << m_field << ',' << norm << ',' << threshold << ','
     << (v ? format_double(v->value) : "") << ',' << (v ? format_double(v->bound) : "") << ','
     << (v ? to_string(v->verdict) : "");
  return os.str();
}

}  // namespace detail

inline std::string report_to_csv(const ComparisonReport& r) {
  std::ostringstream os;
  os << csv_header << '\n';
  for (const auto& row : r.rows) {
    if (row.threshold) {
      const auto& t = *row.threshold;
      const auto* at = t.at_threshold ? &*t.at_threshold : nullptr;
      os << detail::csv_row(row.spec, t.threshold ? format_double(*t.threshold) : "NONE", at)
         << '\n';
    } else if (row.verdict) {
      os << detail::csv_row(row.spec, "", &*row.verdict) << '\n';
    }
  }
  return os.str();
}

}  // namespace hwsep::io
