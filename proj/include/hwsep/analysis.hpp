#pragma once

// Threshold scans over one-parameter families, parameter grid search and
// multi-criterion comparison.

#include "hwsep/criteria.hpp"
#include "hwsep/states.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hwsep {

enum class CriterionKind { hw, isc, vb, lb, ppt, thm2 };

inline std::string_view to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::hw: return "hw";
    case CriterionKind::isc: return "isc";
    case CriterionKind::vb: return "vb";
    case CriterionKind::lb: return "lb";
    case CriterionKind::ppt: return "ppt";
    case CriterionKind::thm2: return "thm2";
  }
  return "?";
}

inline std::optional<CriterionKind> parse_criterion(std::string_view name) {
  for (auto k : {CriterionKind::hw, CriterionKind::isc, CriterionKind::vb,
                 CriterionKind::lb, CriterionKind::ppt, CriterionKind::thm2}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

/// A criterion together with the parameters it is evaluated at. Fields a
/// criterion does not use are ignored (vb, lb and ppt take none).
struct CriterionSpec {
  CriterionKind kind = CriterionKind::hw;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t m = 1;
  Normalization normalization = Normalization::standard;
  std::vector<double> alphas;  // thm2
};

/// Single verdict for `spec`. For thm2 this is the bipartition with the
/// largest excess.
inline CriterionVerdict evaluate(const CriterionSpec& spec, const DensityMatrix& rho) {
  switch (spec.kind) {
    case CriterionKind::hw:
      return check_theorem1(rho, spec.alpha, spec.beta, spec.m, spec.normalization);
    case CriterionKind::isc:
      return check_isc(rho, spec.alpha, spec.beta, spec.m);
    case CriterionKind::vb:
      return check_vb(rho);
    case CriterionKind::lb:
      return check_lb(rho);
    case CriterionKind::ppt:
      return check_ppt(rho);
    case CriterionKind::thm2: {
      auto alphas = spec.alphas;
      if (alphas.empty()) alphas.assign(rho.parties(), spec.alpha);
      auto all = check_theorem2(rho, alphas, spec.m);
      return *std::max_element(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.excess() < b.excess();
      });
    }
  }
  throw ContractError("evaluate: unknown criterion");
}

struct ThresholdResult {
  CriterionSpec spec;
  std::string family;
  std::optional<double> threshold;  // smallest x certified entangled
  double interval = 0.0;            // width of the final bracket
  std::size_t evaluations = 0;
  std::size_t sign_changes = 0;     // on the coarse grid
  bool non_monotone = false;
  std::optional<CriterionVerdict> at_threshold;
};

/// Coarse uniform scan of [0, 1] followed by bisection on the first
/// inconclusive -> entangled transition. More than one transition on the
/// grid marks the result non-monotone.
inline ThresholdResult scan_threshold(const StateFamily& family, const CriterionSpec& spec,
                                      std::size_t grid_points = 256, double tol = 1e-6) {
  if (grid_points < 16) throw ContractError("scan_threshold: grid_points must be >= 16");
  if (!(tol >= 1e-8)) throw ContractError("scan_threshold: tol must be >= 1e-8");

  ThresholdResult out;
  out.spec = spec;
  out.family = family.name;
  auto detects = [&](double x) {
    ++out.evaluations;
    return evaluate(spec, family(x)).entangled();
  };

  const double step = 1.0 / static_cast<double>(grid_points - 1);
  std::vector<bool> hits(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    hits[i] = detects(static_cast<double>(i) * step);
  }
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < grid_points; ++i) {
    if (i > 0 && hits[i] != hits[i - 1]) ++out.sign_changes;
    if (hits[i] && !first) first = i;
  }
  out.non_monotone = out.sign_changes > 1;
  if (!first) return out;
  if (*first == 0) {
    out.threshold = 0.0;
    out.at_threshold = evaluate(spec, family(0.0));
    return out;
  }

  double lo = static_cast<double>(*first - 1) * step;
  double hi = *first == grid_points - 1 ? 1.0 : static_cast<double>(*first) * step;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (detects(mid) ? hi : lo) = mid;
  }
  out.threshold = hi;
  out.interval = hi - lo;
  out.at_threshold = evaluate(spec, family(hi));
  return out;
}

struct ParamOptimum {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t m = 0;
  double value = 0.0;
  double bound = 0.0;
  std::size_t evaluations = 0;

  double excess() const { return value - bound; }
};

/// Exhaustive search for the (alpha, beta, m) maximising value - bound of the
/// S-matrix criterion. Ties go to smaller m, then smaller alpha, then beta.
inline ParamOptimum optimize_params(const DensityMatrix& rho, std::vector<double> alpha_grid,
                                    std::vector<double> beta_grid,
                                    std::vector<std::size_t> m_range,
                                    Normalization norm = Normalization::standard) {
  if (alpha_grid.empty() || beta_grid.empty() || m_range.empty()) {
    throw ContractError("optimize_params: grids must be nonempty");
  }
  std::sort(alpha_grid.begin(), alpha_grid.end());
  std::sort(beta_grid.begin(), beta_grid.end());
  std::sort(m_range.begin(), m_range.end());
  const auto dec = decompose_bipartite(rho, norm);

  std::optional<ParamOptimum> best;
  std::size_t count = 0;
  for (auto m : m_range) {
    for (double a : alpha_grid) {
      for (double b : beta_grid) {
        ParamOptimum cand{a, b, m, trace_norm(build_S(dec, a, b, m).matrix),
                          theorem1_bound(dec.d1, dec.d2, a, b, m, norm), 0};
        ++count;
        if (!best || cand.excess() > best->excess()) best = cand;
      }
    }
  }
  best->evaluations = count;
  return *best;
}

/// Uniform grid lo, lo + h, ..., hi with `points` entries.
inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return out;
}

struct ComparisonRow {
  CriterionSpec spec;
  std::optional<ThresholdResult> threshold;  // family comparisons
  std::optional<CriterionVerdict> verdict;   // single-state comparisons
};

struct ComparisonReport {
  std::string subject;
  std::vector<ComparisonRow> rows;
};

inline ComparisonReport compare(const StateFamily& family,
                                const std::vector<CriterionSpec>& criteria,
                                std::size_t grid_points = 256, double tol = 1e-6) {
  if (criteria.empty()) throw ContractError("compare: criteria list is empty");
  ComparisonReport report{family.name, {}};
  for (const auto& c : criteria) {
    report.rows.push_back({c, scan_threshold(family, c, grid_points, tol), std::nullopt});
  }
  return report;
}

inline ComparisonReport compare(const DensityMatrix& rho, std::string subject,
                                const std::vector<CriterionSpec>& criteria) {
  if (criteria.empty()) throw ContractError("compare: criteria list is empty");
  ComparisonReport report{std::move(subject), {}};
  for (const auto& c : criteria) {
    report.rows.push_back({c, std::nullopt, evaluate(c, rho)});
  }
  return report;
}

}  // namespace hwsep
