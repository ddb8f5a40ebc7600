#pragma once

// Command-line front end. run() is the whole program; tools/hwsep.cpp only
// forwards argv to it.
//
// Exit codes: 0 success, 2 usage error, 3 validation error, 4 numerical failure.

#include "hwsep/analysis.hpp"
#include "hwsep/hw_basis.hpp"
#include "hwsep/io.hpp"
#include "hwsep/states.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace hwsep::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_validation = 3;
inline constexpr int exit_numerical = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "p/q" or a decimal literal.
inline double parse_rational(const std::string& text) {
  auto parse = [&](std::string_view s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(std::string(s), &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: " + text);
    }
    if (used != s.size()) throw UsageError("not a number: " + text);
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse(text);
  const double den = parse(std::string_view(text).substr(slash + 1));
  if (den == 0.0) throw UsageError("zero denominator: " + text);
  return parse(std::string_view(text).substr(0, slash)) / den;
}

struct Options {
  std::string format = "json";
  std::size_t dim = 0;
  std::vector<std::size_t> dims;
  bool rescaled = false;
  double alpha = 0.5;
  std::optional<double> beta;
  std::optional<std::string> beta_sq;
  std::vector<double> alphas;
  std::size_t m = 1;
  std::string criterion;
  std::string criteria = "hw,isc,vb,lb,ppt";
  std::string state_path;
  std::string family;
  std::string name;
  double b = 0.9;
  std::optional<double> x;
  std::size_t n = 3;
  std::size_t terms = 5;
  std::size_t grid = 256;
  double tol = 1e-6;
  double range = 1.5;
  std::size_t m_max = 3;
  std::uint64_t seed = 1;
  std::vector<std::size_t> partition;
  std::string out_path;
};

namespace detail {

inline Normalization normalization_of(const Options& o) {
  return o.rescaled ? Normalization::rescaled : Normalization::standard;
}

inline double beta_of(const Options& o) {
  if (o.beta_sq) {
    const double sq = parse_rational(*o.beta_sq);
    if (sq < 0.0) throw UsageError("--beta-sq must be nonnegative");
    return std::sqrt(sq);
  }
  return o.beta.value_or(std::sqrt(2.0 / 11.0));
}

inline CriterionSpec spec_of(const Options& o, const std::string& name) {
  auto kind = parse_criterion(name);
  if (!kind) throw UsageError("unknown criterion: " + name);
  CriterionSpec spec;
  spec.kind = *kind;
  spec.alpha = o.alpha;
  spec.beta = beta_of(o);
  spec.m = o.m;
  spec.normalization = normalization_of(o);
  spec.alphas = o.alphas;
  return spec;
}

inline std::vector<std::size_t> zero_based(const std::vector<std::size_t>& parties) {
  std::vector<std::size_t> out;
  for (auto p : parties) {
    if (p == 0) throw UsageError("--partition uses one-based party numbers");
    out.push_back(p - 1);
  }
  return out;
}

inline StateFamily family_of(const Options& o) {
  if (o.family.empty()) throw UsageError("--family is required");
  if (o.family != "horodecki-mix") throw UsageError("unknown family: " + o.family);
  return horodecki_mix_family(o.b);
}

inline DensityMatrix named_state(const Options& o) {
  const auto& nm = o.name;
  Rng rng(o.seed);
  auto need_dims = [&]() -> Dims {
    if (o.dims.empty()) throw UsageError("--dims is required for state " + nm);
    return Dims(o.dims.begin(), o.dims.end());
  };
  if (nm == "horodecki") return horodecki_2x4(o.b);
  if (nm == "xi") return xi_state();
  if (nm == "horodecki-mix") {
    if (!o.x) throw UsageError("--x is required for horodecki-mix");
    return horodecki_mix_family(o.b)(*o.x);
  }
  if (nm == "bell") return bell_state();
  if (nm == "ghz") return ghz(o.n);
  if (nm == "maximally-mixed") return maximally_mixed(need_dims());
  if (nm == "random-pure") return random_pure(need_dims(), rng);
  if (nm == "random-density") return random_density(need_dims(), rng);
  if (nm == "random-separable") return random_separable(need_dims(), o.terms, rng).second;
  throw UsageError("unknown state name: " + nm);
}

inline DensityMatrix input_state(const Options& o) {
  if (!o.state_path.empty()) return io::load_state(o.state_path);
  if (!o.name.empty()) return named_state(o);
  if (!o.family.empty()) {
    if (!o.x) throw UsageError("--x is required with --family");
    return family_of(o)(*o.x);
  }
  throw UsageError("an input state is required (--state, --name or --family with --x)");
}

inline void emit_verdicts(std::ostream& out, const Options& o,
                          const std::vector<CriterionVerdict>& verdicts, bool as_list) {
  if (o.format == "csv") {
    out << "criterion,partition,value,bound,verdict\n";
    for (const auto& v : verdicts) {
      std::string side;
      for (auto k : v.params.partition) {
        if (!side.empty()) side += ' ';
        side += std::to_string(k + 1);
      }
      out << v.criterion << ',' << side << ',' << io::format_double(v.value) << ','
          << io::format_double(v.bound) << ',' << to_string(v.verdict) << '\n';
    }
    return;
  }
  if (as_list) {
    io::json arr = io::json::array();
    for (const auto& v : verdicts) arr.push_back(io::verdict_to_json(v));
    out << io::json{{"not_fully_separable", any_entangled(verdicts)}, {"partitions", arr}}.dump(2)
        << '\n';
  } else {
    out << io::verdict_to_json(verdicts.front()).dump(2) << '\n';
  }
}

inline std::vector<CriterionVerdict> run_thm2(const DensityMatrix& rho, const Options& o) {
  auto alphas = o.alphas;
  if (alphas.empty()) alphas.assign(rho.parties(), o.alpha);
  std::vector<std::vector<std::size_t>> parts;
  if (!o.partition.empty()) parts.push_back(zero_based(o.partition));
  return check_theorem2(rho, alphas, o.m, parts);
}

inline void require_json(const Options& o, const char* cmd) {
  if (o.format != "json") throw UsageError(std::string(cmd) + " only supports --format json");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hwsep: Heisenberg-Weyl Bloch representation and trace-norm separability tests"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "alpha (weight of r)")->check(CLI::NonNegativeNumber);
    sub->add_option("--beta", o.beta, "beta (weight of s)")->check(CLI::NonNegativeNumber);
    sub->add_option("--beta-sq", o.beta_sq, "beta^2 as a rational, e.g. 2/11");
    sub->add_option("--m", o.m, "number of padding rows/columns");
    sub->add_option("--alphas", o.alphas, "per-party alphas for thm2")->delimiter(',');
    sub->add_flag("--rescaled", o.rescaled, "use the sqrt(2/d)-rescaled basis");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--state", o.state_path, "state JSON file");
    sub->add_option("--name", o.name, "named state (see `state`)");
    sub->add_option("--family", o.family, "state family")->check(CLI::IsMember({"horodecki-mix"}));
    sub->add_option("--b", o.b, "Horodecki parameter b in (0,1)");
    sub->add_option("--x", o.x, "mixing weight x in [0,1]");
    sub->add_option("--dims", o.dims, "subsystem dimensions, comma separated")->delimiter(',');
    sub->add_option("--seed", o.seed, "seed for random states");
    sub->add_option("--n", o.n, "qubit count for ghz");
    sub->add_option("--terms", o.terms, "ensemble size for random-separable");
  };

  auto* basis_cmd = app.add_subcommand("basis", "dump the HW observable basis");
  basis_cmd->add_option("--dim", o.dim, "dimension d >= 2")->required();
  basis_cmd->add_flag("--rescaled", o.rescaled, "use the sqrt(2/d)-rescaled basis");

  auto* state_cmd = app.add_subcommand("state", "emit a named state as JSON");
  state_cmd->add_option("--name", o.name,
                        "horodecki | xi | horodecki-mix | bell | ghz | maximally-mixed | "
                        "random-pure | random-density | random-separable")
      ->required();
  state_cmd->add_option("--b", o.b, "Horodecki parameter b in (0,1)");
  state_cmd->add_option("--x", o.x, "mixing weight for horodecki-mix");
  state_cmd->add_option("--n", o.n, "qubit count for ghz");
  state_cmd->add_option("--dims", o.dims, "subsystem dimensions")->delimiter(',');
  state_cmd->add_option("--terms", o.terms, "ensemble size for random-separable");
  state_cmd->add_option("--seed", o.seed, "seed for random states");
  state_cmd->add_option("--out", o.out_path, "write to file instead of stdout");

  auto* decompose_cmd = app.add_subcommand("decompose", "Bloch coefficients r, s, T");
  add_input(decompose_cmd);
  decompose_cmd->add_flag("--rescaled", o.rescaled, "use the sqrt(2/d)-rescaled basis");

  auto* check_cmd = app.add_subcommand("check", "evaluate one criterion on a state");
  add_input(check_cmd);
  add_params(check_cmd);
  check_cmd->add_option("--criterion", o.criterion, "hw | isc | vb | lb | ppt | thm2")
      ->required()
      ->check(CLI::IsMember({"hw", "isc", "vb", "lb", "ppt", "thm2"}));
  check_cmd->add_option("--partition", o.partition, "one-based parties on one side (thm2)")
      ->delimiter(',');

  auto* tensor_cmd = app.add_subcommand("tensor-check", "multipartite matricization criterion");
  add_input(tensor_cmd);
  add_params(tensor_cmd);
  tensor_cmd->add_option("--partition", o.partition, "one-based parties on one side")
      ->delimiter(',');

  auto* scan_cmd = app.add_subcommand("scan", "detection threshold over a state family");
  add_input(scan_cmd);
  add_params(scan_cmd);
  scan_cmd->add_option("--criterion", o.criterion, "hw | isc | vb | lb | ppt | thm2")
      ->required()
      ->check(CLI::IsMember({"hw", "isc", "vb", "lb", "ppt", "thm2"}));
  scan_cmd->add_option("--grid", o.grid, "coarse grid points (>= 16)");
  scan_cmd->add_option("--tol", o.tol, "bisection tolerance (>= 1e-8)");

  auto* optimize_cmd = app.add_subcommand("optimize", "grid search over (alpha, beta, m)");
  add_input(optimize_cmd);
  optimize_cmd->add_flag("--rescaled", o.rescaled, "use the sqrt(2/d)-rescaled basis");
  optimize_cmd->add_option("--grid", o.grid, "points per axis on [0, range]");
  optimize_cmd->add_option("--range", o.range, "upper end of the alpha and beta grids");
  optimize_cmd->add_option("--m-max", o.m_max, "largest m tried (m runs from 1)");

  auto* compare_cmd = app.add_subcommand("compare", "run several criteria side by side");
  add_input(compare_cmd);
  add_params(compare_cmd);
  compare_cmd->add_option("--criteria", o.criteria, "comma separated criterion names");
  compare_cmd->add_option("--grid", o.grid, "coarse grid points for family scans");
  compare_cmd->add_option("--tol", o.tol, "bisection tolerance");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("hwsep");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return exit_ok;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  try {
    if (*basis_cmd) {
      const auto b = basis(o.dim, detail::normalization_of(o));
      io::json elems = io::json::array();
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto [l, m] = HWObservableBasis::label_of(b.dim, i);
        elems.push_back({{"l", l}, {"m", m}, {"matrix", io::matrix_to_json(b[i])}});
      }
      out << io::json{{"dim", b.dim},
                      {"normalization", to_string(b.normalization)},
                      {"elements", elems}}
                 .dump(2)
          << '\n';
    } else if (*state_cmd) {
      const auto rho = detail::named_state(o);
      if (o.out_path.empty()) {
        out << io::state_to_json(rho).dump() << '\n';
      } else {
        io::save_state(rho, o.out_path);
      }
    } else if (*decompose_cmd) {
      detail::require_json(o, "decompose");
      const auto rho = detail::input_state(o);
      const auto norm = detail::normalization_of(o);
      if (rho.parties() == 1) {
        out << io::bloch_to_json(decompose_single(rho, norm)).dump(2) << '\n';
      } else if (rho.parties() == 2) {
        out << io::bloch_to_json(decompose_bipartite(rho, norm)).dump(2) << '\n';
      } else {
        throw ContractError("decompose: use tensor-check for more than two parties");
      }
    } else if (*check_cmd) {
      const auto rho = detail::input_state(o);
      if (o.criterion == "thm2") {
        detail::emit_verdicts(out, o, detail::run_thm2(rho, o), true);
      } else {
        detail::emit_verdicts(out, o, {evaluate(detail::spec_of(o, o.criterion), rho)}, false);
      }
    } else if (*tensor_cmd) {
      const auto rho = detail::input_state(o);
      detail::emit_verdicts(out, o, detail::run_thm2(rho, o), true);
    } else if (*scan_cmd) {
      const auto family = detail::family_of(o);
      const auto spec = detail::spec_of(o, o.criterion);
      const auto result = scan_threshold(family, spec, o.grid, o.tol);
      if (o.format == "csv") {
        out << io::report_to_csv({family.name, {{spec, result, std::nullopt}}});
      } else {
        auto doc = io::threshold_to_json(result);
        doc["b"] = o.b;
        out << doc.dump(2) << '\n';
      }
    } else if (*optimize_cmd) {
      detail::require_json(o, "optimize");
      const auto rho = detail::input_state(o);
      if (o.grid < 1) throw UsageError("--grid must be positive");
      std::vector<std::size_t> ms;
      for (std::size_t m = 1; m <= o.m_max; ++m) ms.push_back(m);
      const auto grid = linspace(0.0, o.range, o.grid);
      const auto best = optimize_params(rho, grid, grid, ms, detail::normalization_of(o));
      out << io::json{{"alpha", best.alpha},
                      {"beta", best.beta},
                      {"m", best.m},
                      {"normalization", to_string(detail::normalization_of(o))},
                      {"value", best.value},
                      {"bound", best.bound},
                      {"excess", best.excess()},
                      {"evaluations", best.evaluations}}
                 .dump(2)
          << '\n';
    } else if (*compare_cmd) {
      std::vector<CriterionSpec> specs;
      std::string_view list = o.criteria;
      while (!list.empty()) {
        const auto comma = list.find(',');
        specs.push_back(detail::spec_of(o, std::string(list.substr(0, comma))));
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
      }
      ComparisonReport report;
      if (!o.family.empty() && !o.x) {
        report = compare(detail::family_of(o), specs, o.grid, o.tol);
      } else {
        report = compare(detail::input_state(o), "state", specs);
      }
      if (o.format == "csv") {
        out << io::report_to_csv(report);
      } else {
        out << io::report_to_json(report).dump(2) << '\n';
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ContractError& e) {
    err << "validation error: " << e.what() << '\n';
    return exit_validation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return exit_numerical;
  }
  return exit_ok;
}

}  // namespace hwsep::cli
