#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "recourse/capacity.hpp"
#include "recourse/matching.hpp"
#include "recourse/penalized.hpp"
#include "recourse/recourse_cost.hpp"
#include "recourse/weights.hpp"

namespace py = pybind11;
using namespace recourse;

namespace {

using Rows = std::vector<std::vector<double>>;

py::list assignment_list(const Matching& m) {
  py::list out;
  for (const auto& a : m.assignment()) {
    if (a) {
      out.append(*a);
    } else {
      out.append(py::none());
    }
  }
  return out;
}

py::dict report_dict(const WelfareReport& r) {
  py::dict d;
  d["individual_welfare"] = r.individual_welfare;
  d["social_welfare"] = r.social_welfare;
  d["welfare_gap"] = r.welfare_gap;
  d["penalty"] = r.penalty;
  d["objective"] = r.objective;
  d["pct_of_individual"] = r.pct_of_individual();
  d["matched_count"] = r.matched_count;
  d["capacities"] = r.capacity_used.values();
  d["capacity_delta"] = r.capacity_delta;
  d["assignment"] = assignment_list(r.matching);
  return d;
}

PenaltyConfig make_penalty(const std::vector<double>& betas, const std::vector<int>& initial) {
  std::vector<double> b = betas;
  if (b.size() == 1) b.assign(initial.size(), b.front());
  return PenaltyConfig(std::move(b), CapacityVector(initial));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Capacitated many-to-many recourse matching";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_OverflowError);

  m.def("to_weights", [](const Rows& costs, double gamma) {
    const auto w = to_weights(CostMatrix::from_rows(costs), gamma);
    Rows out(w.n_seekers(), std::vector<double>(w.n_providers()));
    for (std::size_t i = 0; i < w.n_seekers(); ++i)
      for (std::size_t j = 0; j < w.n_providers(); ++j) out[i][j] = w(i, j);
    return out;
  }, py::arg("costs"), py::arg("gamma"));

  m.def("individual_welfare", [](const Rows& w) { return individual_welfare(WeightMatrix::from_rows(w)); },
        py::arg("weights"));

  m.def("solve_matching", [](const Rows& w, const std::vector<int>& k) {
    return report_dict(solve_matching(WeightMatrix::from_rows(w), CapacityVector(k)).second);
  }, py::arg("weights"), py::arg("capacities"),
     "Maximum-weight matching under fixed provider capacities.");

  m.def("brute_force_matching", [](const Rows& w, const std::vector<int>& k) {
    auto [matching, welfare] = brute_force_matching(WeightMatrix::from_rows(w), CapacityVector(k));
    return py::make_tuple(assignment_list(matching), welfare);
  }, py::arg("weights"), py::arg("capacities"));

  m.def("optimal_capacity", [](const Rows& w, long long total) {
    return optimal_capacity(WeightMatrix::from_rows(w), total).values();
  }, py::arg("weights"), py::arg("total_capacity"));

  m.def("welfare_curve", [](const Rows& w, long long max_total) {
    py::list out;
    for (const auto& p : welfare_curve(WeightMatrix::from_rows(w), max_total)) {
      out.append(py::make_tuple(p.total_capacity, p.capacity.values(), p.welfare));
    }
    return out;
  }, py::arg("weights"), py::arg("max_total"));

  m.def("enumerate_capacities", [](std::size_t providers, long long total) {
    std::vector<std::vector<int>> out;
    for (const auto& k : enumerate_capacities(providers, total)) out.push_back(k.values());
    return out;
  }, py::arg("providers"), py::arg("total_capacity"));

  m.def("solve_penalized", [](const Rows& w, const std::vector<double>& betas, const std::vector<int>& initial,
                              std::optional<long long> total) {
    const auto p = make_penalty(betas, initial);
    return report_dict(solve_penalized(WeightMatrix::from_rows(w), p, total.value_or(p.initial_capacities.total())).report);
  }, py::arg("weights"), py::arg("betas"), py::arg("initial_capacities"), py::arg("total_capacity") = py::none(),
     "Exact penalized capacity redistribution by composition enumeration.");

  m.def("local_search_penalized", [](const Rows& w, const std::vector<double>& betas,
                                     const std::vector<int>& initial, const std::vector<int>& start) {
    const CapacityVector s(start);
    return report_dict(
        local_search_penalized(WeightMatrix::from_rows(w), make_penalty(betas, initial), s.total(), s).report);
  }, py::arg("weights"), py::arg("betas"), py::arg("initial_capacities"), py::arg("start"));

  m.def("min_cost_action", [](const std::vector<double>& x, const std::vector<double>& weights, double bias,
                              const std::string& norm, std::vector<double> lower, std::vector<double> upper,
                              std::vector<bool> mutable_features) -> py::object {
    ActionConstraints a{std::move(lower), std::move(upper), std::move(mutable_features)};
    const auto act = min_cost_action(x, LinearProvider(weights, bias), a, parse_norm(norm));
    if (!act) return py::none();
    return py::make_tuple(act->delta, act->cost);
  }, py::arg("x"), py::arg("weights"), py::arg("bias"), py::arg("norm") = "linf",
     py::arg("lower") = std::vector<double>{}, py::arg("upper") = std::vector<double>{},
     py::arg("mutable") = std::vector<bool>{},
     "Cheapest label-flipping action for a linear provider, or None when unreachable.");
}
