#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vanet/analytic.hpp"
#include "vanet/config.hpp"
#include "vanet/connectivity.hpp"
#include "vanet/csv.hpp"
#include "vanet/presets.hpp"
#include "vanet/selftest.hpp"

namespace py = pybind11;
using namespace vanet;

namespace {

using Rows = std::vector<std::vector<int>>;

RangePolicy policy_from(const py::dict& d) {
  return parse_range_policy(nlohmann::json::parse(py::str(py::module_::import("json").attr("dumps")(d))
                                                      .cast<std::string>()));
}

Direction direction_from(const std::string& s) {
  if (s == "full") return Direction::full;
  if (s == "upward") return Direction::upward;
  if (s == "downward") return Direction::downward;
  if (s == "symmetrized") return Direction::symmetrized;
  throw py::value_error("unknown direction '" + s + "'");
}

Method method_from(const std::string& s) {
  auto m = parse_method(s);
  if (!m) throw py::value_error("unknown method '" + s + "'");
  return *m;
}

std::vector<std::vector<double>> to_lists(const SquareMatrix<double>& m) {
  std::vector<std::vector<double>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

SquareMatrix<double> from_lists(const std::vector<std::vector<double>>& rows) {
  SquareMatrix<double> m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw py::value_error("matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Laplacian laplacian_from(const std::vector<std::vector<double>>& rows) { return Laplacian(from_lists(rows)); }

ExperimentSpec spec_from(const py::dict& cfg) {
  const std::string text = py::str(py::module_::import("json").attr("dumps")(cfg)).cast<std::string>();
  return parse_config(nlohmann::json::parse(text)).spec;
}

py::dict estimate_to_dict(const ConnectivityEstimate& e) {
  py::dict d;
  d["density_per_km"] = e.density_per_km;
  d["method"] = std::string(to_string(e.method));
  d["range_policy"] = e.range_policy;
  d["p_hat"] = e.p_hat;
  d["stderr"] = e.std_error;
  d["connected_count"] = e.connected_count;
  d["trials"] = e.trials;
  d["master_seed"] = e.master_seed;
  return d;
}

std::vector<py::dict> table_to_dicts(const std::vector<ConnectivityEstimate>& t) {
  std::vector<py::dict> out;
  for (const auto& e : t) out.push_back(estimate_to_dict(e));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Connectivity probability of one-dimensional highway VANETs";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("vehicle_count", &vehicle_count, py::arg("density_per_m"), py::arg("segment_length_m"));

  m.def(
      "sample_headways",
      [](double density_per_m, double segment_length_m, std::uint64_t seed) {
        Rng rng(seed);
        return sample_headways(TrafficScenario(density_per_m, segment_length_m), rng).gaps;
      },
      py::arg("density_per_m"), py::arg("segment_length_m"), py::arg("seed"));

  m.def(
      "spacing_matrix", [](std::vector<double> gaps) { return to_lists(spacing_matrix(HeadwayVector{std::move(gaps)})); },
      py::arg("gaps"));

  m.def(
      "assign_ranges",
      [](const py::dict& policy, std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return assign_ranges(policy_from(policy), n, rng).ranges;
      },
      py::arg("policy"), py::arg("n"), py::arg("seed"),
      "policy: {'type': 'fixed'|'two_tier'|'uniform', ...} as in the JSON config schema");

  m.def(
      "power_proxy", [](std::vector<double> ranges, double alpha) { return power_proxy({std::move(ranges)}, alpha); },
      py::arg("ranges"), py::arg("path_loss_exponent"));

  m.def(
      "build_adjacency",
      [](const std::vector<std::vector<double>>& spacing, std::vector<double> ranges) {
        return build_adjacency(from_lists(spacing), {std::move(ranges)}).to_rows();
      },
      py::arg("spacing"), py::arg("ranges"));

  m.def(
      "project",
      [](const Rows& a, const std::string& direction) {
        return project(Adjacency::from_rows(a), direction_from(direction)).to_rows();
      },
      py::arg("adjacency"), py::arg("direction"));

  m.def(
      "symmetrize",
      [](const Rows& a) {
        // Plain row input carries no direction tag; accept any triangular or symmetric pattern.
        const Adjacency in = Adjacency::from_rows(a, Direction::upward);
        return symmetrize(in).to_rows();
      },
      py::arg("adjacency"));

  m.def(
      "laplacian", [](const Rows& a) { return to_lists(laplacian(Adjacency::from_rows(a)).matrix()); },
      py::arg("adjacency"));

  m.def(
      "eigenvalues",
      [](const std::vector<std::vector<double>>& l) { return eigenvalues_symmetric(laplacian_from(l)).eigenvalues; },
      py::arg("laplacian"));

  m.def(
      "component_count",
      [](const std::vector<std::vector<double>>& l) { return component_count(eigenvalues_symmetric(laplacian_from(l))).q; },
      py::arg("laplacian"));

  m.def(
      "is_connected_laplacian",
      [](const std::vector<std::vector<double>>& l, std::optional<double> tol) {
        const Laplacian lap = laplacian_from(l);
        return is_connected_laplacian(lap, tol.value_or(default_zero_tolerance(lap.size())));
      },
      py::arg("laplacian"), py::arg("tol") = py::none());

  m.def(
      "bool_power_reach", [](const Rows& a, std::size_t k) { return bool_power_reach(Adjacency::from_rows(a), k).to_rows(); },
      py::arg("adjacency"), py::arg("k"));

  m.def(
      "is_connected_exponent",
      [](const Rows& a, bool relaxed) { return is_connected_exponent(Adjacency::from_rows(a), relaxed); },
      py::arg("adjacency"), py::arg("relaxed") = false);

  m.def(
      "oracle_components", [](const Rows& a) { return oracle_components(Adjacency::from_rows(a)).q; },
      py::arg("adjacency"));

  m.def(
      "oracle_reachable",
      [](const Rows& a, std::size_t src, std::size_t dst) { return oracle_reachable(Adjacency::from_rows(a), src, dst); },
      py::arg("adjacency"), py::arg("src"), py::arg("dst"));

  m.def(
      "consecutive_chain", [](const Rows& a) { return consecutive_chain(Adjacency::from_rows(a)); },
      py::arg("adjacency"));

  m.def(
      "analytic_pc",
      [](double density_per_m, double range_m, std::size_t n) { return analytic_pc({density_per_m, range_m, n}); },
      py::arg("density_per_m"), py::arg("range_m"), py::arg("n"));

  m.def(
      "analytic_pc_chain_mixed",
      [](double density_per_m, std::size_t n, const py::dict& policy) {
        return analytic_pc_chain_mixed(density_per_m, n, policy_from(policy));
      },
      py::arg("density_per_m"), py::arg("n"), py::arg("policy"));

  m.def("min_range_for_target", &min_range_for_target, py::arg("density_per_m"), py::arg("n"),
        py::arg("target_pc"));

  m.def(
      "run_trial",
      [](const py::dict& cfg, std::size_t grid_index, std::size_t trial_index) {
        const VerdictRecord rec = run_trial(spec_from(cfg), grid_index, trial_index);
        py::dict out;
        for (const auto& v : rec.verdicts) out[py::str(std::string(to_string(v.method)))] = v.connected;
        out["digest"] = rec.digest;
        return out;
      },
      py::arg("config"), py::arg("grid_index"), py::arg("trial_index"));

  m.def(
      "sweep",
      [](const py::dict& cfg, unsigned workers) {
        const ExperimentSpec spec = spec_from(cfg);
        std::vector<ConnectivityEstimate> t;
        {
          py::gil_scoped_release release;
          t = sweep(spec, workers);
        }
        return table_to_dicts(t);
      },
      py::arg("config"), py::arg("workers") = 0,
      "config: dict following the JSON run-config schema. Returns one dict per (density, method).");

  m.def(
      "compare_methods",
      [](const py::dict& cfg, unsigned workers) {
        const ExperimentSpec spec = spec_from(cfg);
        AgreementReport r;
        {
          py::gil_scoped_release release;
          r = compare_methods(spec, workers);
        }
        std::vector<py::dict> pairs;
        for (const auto& p : r.pairs) {
          py::dict d;
          d["density_per_km"] = p.density_per_km;
          d["method_a"] = std::string(to_string(p.method_a));
          d["method_b"] = std::string(to_string(p.method_b));
          d["disagreements"] = p.disagreements;
          d["trials"] = p.trials;
          pairs.push_back(d);
        }
        py::dict out;
        out["pairs"] = pairs;
        out["reachable_not_chain"] = r.reachable_not_chain;
        return out;
      },
      py::arg("config"), py::arg("workers") = 0);

  m.def(
      "run_figure_preset",
      [](const std::string& name, std::optional<std::size_t> trials, std::uint64_t seed,
         std::optional<std::vector<double>> densities, unsigned workers) {
        PresetOptions o;
        o.trials = trials;
        o.master_seed = seed;
        o.densities_per_km = std::move(densities);
        std::vector<ConnectivityEstimate> t;
        {
          py::gil_scoped_release release;
          t = run_figure_preset(name, o, workers);
        }
        return table_to_dicts(t);
      },
      py::arg("name"), py::arg("trials") = py::none(), py::arg("seed") = 1, py::arg("densities") = py::none(),
      py::arg("workers") = 0);

  m.def("selftest", [] {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : run_selftest()) out.emplace_back(r.name, r.passed, r.detail);
    return out;
  });
}
