#include "eigenbond/config.hpp"
#include "eigenbond/models.hpp"
#include "eigenbond/oracle.hpp"
#include "eigenbond/pricer.hpp"
#include "eigenbond/reproduce.hpp"
#include "eigenbond/subordinators.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace eigenbond;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Eigenfunction-expansion pricing of callable and putable bonds";

    py::enum_<ModelKind>(m, "ModelKind")
        .value("CIR", ModelKind::CIR)
        .value("Vasicek", ModelKind::Vasicek)
        .value("ThreeHalves", ModelKind::ThreeHalves);

    py::class_<DiffusionModel>(m, "DiffusionModel")
        .def(py::init<ModelKind, double, double, double>(), py::arg("kind"), py::arg("kappa"), py::arg("theta"),
             py::arg("sigma"))
        .def_static("cir", &DiffusionModel::cir, py::arg("kappa"), py::arg("theta"), py::arg("sigma"))
        .def_static("vasicek", &DiffusionModel::vasicek, py::arg("kappa"), py::arg("theta"), py::arg("sigma"))
        .def_static("three_halves", &DiffusionModel::three_halves, py::arg("kappa"), py::arg("theta"), py::arg("sigma"))
        .def_property_readonly("kind", &DiffusionModel::kind)
        .def_property_readonly("kappa", &DiffusionModel::kappa)
        .def_property_readonly("theta", &DiffusionModel::theta)
        .def_property_readonly("sigma", &DiffusionModel::sigma)
        .def("__repr__", [](const DiffusionModel& d) {
            return "DiffusionModel(" + std::string(to_string(d.kind())) + ", kappa=" + std::to_string(d.kappa())
                   + ", theta=" + std::to_string(d.theta()) + ", sigma=" + std::to_string(d.sigma()) + ")";
        });

    py::class_<SubordinatorSpec>(m, "Subordinator")
        .def_static("none", &SubordinatorSpec::none)
        .def_static("inverse_gaussian", &SubordinatorSpec::inverse_gaussian, py::arg("drift"), py::arg("mu"),
                    py::arg("nu"))
        .def_static("gamma", &SubordinatorSpec::gamma, py::arg("drift"), py::arg("C"), py::arg("eta"))
        .def_static("tempered_stable", &SubordinatorSpec::tempered_stable, py::arg("drift"), py::arg("C"),
                    py::arg("p"), py::arg("eta"))
        .def_property_readonly("family", [](const SubordinatorSpec& s) { return std::string(to_string(s.family)); })
        .def_readonly("drift", &SubordinatorSpec::drift);

    py::class_<BondSchedule>(m, "BondSchedule")
        .def(py::init<>())
        .def_static("swiss1987", &BondSchedule::swiss1987, py::arg("with_put") = false)
        .def_readwrite("coupon", &BondSchedule::coupon)
        .def_readwrite("coupon_times", &BondSchedule::coupon_times)
        .def_readwrite("protection_index", &BondSchedule::protection_index)
        .def_readwrite("call_prices", &BondSchedule::call_prices)
        .def_readwrite("put_prices", &BondSchedule::put_prices)
        .def_readwrite("notice_delta", &BondSchedule::notice_delta)
        .def("validate", &BondSchedule::validate);

    py::class_<DecisionRecord>(m, "DecisionRecord")
        .def_readonly("index", &DecisionRecord::index)
        .def_readonly("time", &DecisionRecord::time)
        .def_readonly("call_state", &DecisionRecord::call_state)
        .def_readonly("put_state", &DecisionRecord::put_state)
        .def_readonly("call_rate", &DecisionRecord::call_rate)
        .def_readonly("put_rate", &DecisionRecord::put_rate)
        .def_readonly("mean_terms", &DecisionRecord::mean_terms)
        .def_readonly("max_terms", &DecisionRecord::max_terms);

    py::class_<PricingResult>(m, "PricingResult")
        .def_readonly("states", &PricingResult::states)
        .def_readonly("values", &PricingResult::values)
        .def_readonly("initial_terms", &PricingResult::initial_terms)
        .def_readonly("decisions", &PricingResult::decisions)
        .def_readonly("eps", &PricingResult::eps);

    m.def("price_bond",
          [](const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
             const std::vector<double>& states, double eps) {
              py::gil_scoped_release release;
              return price_bond(model, sub, schedule, states, eps);
          },
          py::arg("model"), py::arg("subordinator"), py::arg("schedule"), py::arg("states"), py::arg("eps") = 1e-7);
    m.def("zero_coupon_price",
          [](const DiffusionModel& model, const SubordinatorSpec& sub, double t, double x, double eps) {
              TruncationRule rule;
              rule.eps = eps;
              const SeriesSum s = zero_coupon_price(model, sub, t, x, rule);
              return py::make_tuple(s.value, s.n);
          },
          py::arg("model"), py::arg("subordinator"), py::arg("t"), py::arg("x"), py::arg("eps") = 1e-7);
    m.def("closed_form_bond", &closed_form_bond, py::arg("model"), py::arg("t"), py::arg("x"));
    m.def("straight_bond_price",
          [](const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule, double x) {
              return straight_bond_price(model, sub, schedule, x);
          },
          py::arg("model"), py::arg("subordinator"), py::arg("schedule"), py::arg("x"));
    m.def("state_for_rate", &state_for_rate, py::arg("model"), py::arg("subordinator"), py::arg("rate"));
    m.def("short_rate_map", &short_rate_map, py::arg("model"), py::arg("subordinator"), py::arg("x"));
    m.def("laplace_exponent", &laplace_exponent, py::arg("subordinator"), py::arg("lam"));
    m.def("eigenvalue", &eigenvalue, py::arg("model"), py::arg("n"));
    m.def("eigenfunctions", &eigenfunctions, py::arg("model"), py::arg("n_max"), py::arg("x"));

    m.def("quadrature_dp_price", &oracle::quadrature_dp_price, py::arg("model"), py::arg("subordinator"),
          py::arg("schedule"), py::arg("x0"), py::arg("grid_size") = 800, py::arg("n_density") = 120);
    m.def("mc_zero_coupon",
          [](const DiffusionModel& model, const SubordinatorSpec& sub, double t, double x0, int paths,
             int steps_per_year, std::uint64_t seed, int threads) {
              py::gil_scoped_release release;
              const auto e = oracle::mc_zero_coupon(model, sub, t, x0, paths, steps_per_year, seed, threads);
              return std::make_pair(e.mean, e.standard_error);
          },
          py::arg("model"), py::arg("subordinator"), py::arg("t"), py::arg("x0"), py::arg("paths"),
          py::arg("steps_per_year") = 250, py::arg("seed") = 1, py::arg("threads") = 1);

    m.def("benchmark_model", &benchmark_model, py::arg("kind"));
    m.def("benchmark_case",
          [](const std::string& key) {
              const BenchmarkCase& cs = benchmark_case(key);
              return py::make_tuple(cs.model(), cs.subordinator);
          },
          py::arg("key"));
    m.def("reproduce_table",
          [](const std::string& table, double eps) {
              ReproduceOptions opt;
              opt.eps = eps;
              opt.timing_repetitions = 1;
              const TableReport rep = [&] {
                  py::gil_scoped_release release;
                  return reproduce_table(table_id_from_string(table), opt);
              }();
              py::dict out;
              out["columns"] = rep.table.columns;
              out["rows"] = rep.table.rows;
              out["max_abs_diff"] = rep.max_abs_diff;
              out["absent_mismatches"] = rep.absent_mismatches;
              return out;
          },
          py::arg("table"), py::arg("eps") = 1e-7);
}
