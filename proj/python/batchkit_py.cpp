#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "batchkit/bounds.hpp"
#include "batchkit/code_file.hpp"
#include "batchkit/constructions.hpp"
#include "batchkit/sim.hpp"

namespace py = pybind11;
using namespace batchkit;

namespace {

py::int_ to_py(const BigInt& v) { return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10)); }

Vector to_vector(const PrimeField& f, std::vector<Elem> e) { return Vector(f, std::move(e)); }

std::vector<Elem> to_list(const Vector& v) { return {v.entries().begin(), v.entries().end()}; }

std::vector<std::vector<Elem>> rows_of(const Matrix& a) {
    std::vector<std::vector<Elem>> out;
    for (std::size_t r = 0; r < a.rows(); ++r) out.emplace_back(a.row(r).begin(), a.row(r).end());
    return out;
}

VerifyOptions verify_options(std::uint64_t cap, std::optional<std::size_t> max_support) {
    VerifyOptions o;
    o.multiset_cap = cap;
    o.plan.max_support = max_support;
    return o;
}

py::dict report_dict(const BoundReport& r) {
    py::dict d;
    d["M"] = r.M;
    d["n"] = r.n;
    d["m"] = r.m;
    py::list finite, asym;
    for (const auto& b : r.finite) {
        py::dict e;
        e["name"] = b.name;
        e["capacity"] = to_py(b.capacity);
        e["demand"] = to_py(b.demand);
        e["slack"] = to_py(b.slack());
        e["outcome"] = to_string(b.outcome);
        finite.append(e);
    }
    for (const auto& b : r.asymptotic) {
        py::dict e;
        e["name"] = b.name;
        e["rate"] = b.rate;
        e["cap"] = b.cap ? py::object(py::float_(*b.cap)) : py::none();
        e["outcome"] = to_string(b.outcome);
        asym.append(e);
    }
    d["finite"] = finite;
    d["asymptotic"] = asym;
    d["finite_satisfied"] = r.finite_satisfied();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Linear batch codes over prime fields";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<GuardError>(m, "GuardError", PyExc_ValueError);
    py::register_exception<PlanError>(m, "PlanError", PyExc_ValueError);

    py::class_<PrimeField>(m, "PrimeField")
        .def(py::init<std::uint32_t>(), py::arg("q"))
        .def_property_readonly("q", &PrimeField::q)
        .def("add", &PrimeField::add)
        .def("sub", &PrimeField::sub)
        .def("mul", &PrimeField::mul)
        .def("neg", &PrimeField::neg)
        .def("inv", &PrimeField::inv)
        .def(py::self == py::self)
        .def("__repr__", [](const PrimeField& f) { return "PrimeField(" + std::to_string(f.q()) + ")"; });

    py::class_<Matrix>(m, "Matrix")
        .def(py::init([](std::vector<std::vector<Elem>> rows, std::uint32_t q) {
                 return Matrix::from_rows(PrimeField(q), rows);
             }),
             py::arg("rows"), py::arg("q") = 2)
        .def_property_readonly("field", &Matrix::field)
        .def_property_readonly("rows", &Matrix::rows)
        .def_property_readonly("cols", &Matrix::cols)
        .def("at", &Matrix::at)
        .def("tolist", &rows_of)
        .def(py::self == py::self);

    m.def("rank", &rank);
    m.def("row_weights", &row_weights);
    m.def("min_distance", &min_distance);

    py::class_<LinearBatchCode>(m, "LinearBatchCode")
        .def(py::init([](const Matrix& g, std::optional<std::vector<Bucket>> buckets, std::size_t t) {
                 if (!buckets) return LinearBatchCode::with_singleton_buckets(g);
                 return LinearBatchCode(g, *buckets, t);
             }),
             py::arg("generator"), py::arg("buckets") = py::none(), py::arg("t") = 1)
        .def_property_readonly("generator", &LinearBatchCode::generator)
        .def_property_readonly("field", &LinearBatchCode::field)
        .def_property_readonly("n", &LinearBatchCode::n)
        .def_property_readonly("length", &LinearBatchCode::length)
        .def_property_readonly("bucket_count", &LinearBatchCode::bucket_count)
        .def_property_readonly("budget", &LinearBatchCode::budget)
        .def_property_readonly("buckets", &LinearBatchCode::buckets)
        .def_property_readonly("rate", &LinearBatchCode::rate)
        .def_property_readonly("claimed_m", &LinearBatchCode::claimed_m)
        .def("is_simple", &LinearBatchCode::is_simple)
        .def(py::self == py::self)
        .def("__repr__", [](const LinearBatchCode& c) {
            return "LinearBatchCode(n=" + std::to_string(c.n()) + ", N=" + std::to_string(c.length()) +
                   ", M=" + std::to_string(c.bucket_count()) + ", t=" + std::to_string(c.budget()) + ")";
        });

    py::class_<RecoverySet>(m, "RecoverySet")
        .def_property_readonly("item", &RecoverySet::item)
        .def_property_readonly("support", &RecoverySet::support)
        .def_property_readonly("coeffs", &RecoverySet::coeffs);

    py::class_<QueryPlan>(m, "QueryPlan")
        .def_property_readonly("request", [](const QueryPlan& p) { return p.request.indices(); })
        .def_readonly("sets", &QueryPlan::sets)
        .def("validate", &QueryPlan::validate)
        .def("bucket_loads", &QueryPlan::bucket_loads);

    py::enum_<PlanStatus>(m, "PlanStatus")
        .value("feasible", PlanStatus::feasible)
        .value("infeasible", PlanStatus::infeasible)
        .value("infeasible_under_cap", PlanStatus::infeasible_under_cap);

    py::class_<PlanResult>(m, "PlanResult")
        .def_readonly("status", &PlanResult::status)
        .def_readonly("plan", &PlanResult::plan)
        .def("__bool__", [](const PlanResult& r) { return static_cast<bool>(r); });

    py::class_<Planner>(m, "Planner")
        .def(py::init([](const LinearBatchCode& c, std::optional<std::size_t> max_support) {
                 return Planner(c, PlanOptions{max_support});
             }),
             py::arg("code"), py::arg("max_support") = py::none())
        .def("recovery_sets", &Planner::recovery_sets, py::return_value_policy::copy)
        .def("plan", [](Planner& p, std::vector<std::size_t> r) { return p.plan(BatchRequest(std::move(r))); });

    m.def(
        "plan_request",
        [](const LinearBatchCode& c, std::vector<std::size_t> r, std::optional<std::size_t> max_support) {
            return plan_request(c, BatchRequest(std::move(r)), PlanOptions{max_support});
        },
        py::arg("code"), py::arg("request"), py::arg("max_support") = py::none());
    m.def("enumerate_recovery_sets", &enumerate_recovery_sets, py::arg("code"), py::arg("item"),
          py::arg("max_size"));
    m.def("encode", [](const LinearBatchCode& c, std::vector<Elem> x) {
        return to_list(encode(c, to_vector(c.field(), std::move(x))));
    });
    m.def("decode", [](const LinearBatchCode& c, const QueryPlan& p, std::vector<Elem> y) {
        std::vector<std::pair<std::size_t, Elem>> out;
        for (const auto& r : decode(c, p, to_vector(c.field(), std::move(y)))) out.emplace_back(r.item, r.value);
        return out;
    });

    py::enum_<BatchVerdict>(m, "BatchVerdict")
        .value("holds", BatchVerdict::holds)
        .value("fails", BatchVerdict::fails)
        .value("fails_under_cap", BatchVerdict::fails_under_cap);

    py::class_<VerifyResult>(m, "VerifyResult")
        .def_readonly("verdict", &VerifyResult::verdict)
        .def_property_readonly("witness",
                               [](const VerifyResult& r) -> std::optional<std::vector<std::size_t>> {
                                   if (!r.witness) return std::nullopt;
                                   return r.witness->indices();
                               })
        .def_readonly("checked", &VerifyResult::checked)
        .def("holds", &VerifyResult::holds);

    m.def(
        "verify_batch",
        [](const LinearBatchCode& c, std::size_t mm, std::uint64_t cap, std::optional<std::size_t> max_support) {
            return verify_batch(c, mm, verify_options(cap, max_support));
        },
        py::arg("code"), py::arg("m"), py::arg("cap") = default_verify_cap, py::arg("max_support") = py::none());
    m.def(
        "certify_max_m",
        [](const LinearBatchCode& c, std::uint64_t cap) { return certify_max_m(c, verify_options(cap, std::nullopt)); },
        py::arg("code"), py::arg("cap") = default_verify_cap);
    m.def("batch_ceiling", &batch_ceiling);
    m.def("multiset_count", &multiset_count);

    m.def("subcube_code", [](std::size_t n, std::size_t t, std::uint32_t q) { return subcube_code(n, t, PrimeField(q)); },
          py::arg("n"), py::arg("t"), py::arg("q") = 2);
    m.def("concat_codes", &concat_codes);
    m.def("direct_sum", &direct_sum);
    m.def(
        "extend_one",
        [](const LinearBatchCode& c, std::optional<std::vector<Elem>> bottom_left) {
            if (!bottom_left) return extend_one(c);
            return extend_one(c, to_vector(c.field(), *bottom_left));
        },
        py::arg("code"), py::arg("bottom_left") = py::none());
    m.def("compose", &compose, py::arg("outer"), py::arg("inner"));

    m.def("binary_entropy", &binary_entropy);
    m.def("check_bounds", [](std::size_t M, std::size_t n, std::size_t mm) { return report_dict(check_bounds(M, n, mm)); },
          py::arg("M"), py::arg("n"), py::arg("m"));
    m.def("max_m_by_finite_bounds", &max_m_by_finite_bounds, py::arg("M"), py::arg("n"));

    m.def(
        "simulate",
        [](const LinearBatchCode& c, std::vector<Elem> x, std::vector<std::size_t> r) -> py::object {
            const auto res = simulate(c, to_vector(c.field(), std::move(x)), BatchRequest(std::move(r)));
            if (!res.transcript) return py::none();
            const auto& tr = *res.transcript;
            py::dict d;
            d["request"] = tr.request.indices();
            d["per_server_queries"] = tr.per_server_queries;
            d["per_server_load"] = tr.per_server_load;
            std::vector<std::pair<std::size_t, Elem>> rec;
            for (const auto& v : tr.reconstructed) rec.emplace_back(v.item, v.value);
            d["reconstructed"] = rec;
            d["wall_steps"] = tr.wall_steps;
            return d;
        },
        py::arg("code"), py::arg("x"), py::arg("request"));
    m.def(
        "workload_stats",
        [](const LinearBatchCode& c, std::size_t mm, std::size_t trials, std::uint64_t seed) {
            const auto s = workload_stats(c, mm, trials, seed);
            py::dict d;
            d["request_count"] = s.request_count;
            d["feasible_count"] = s.feasible_count;
            d["max_load"] = s.max_load;
            d["total_reads"] = s.total_reads;
            d["load_histogram"] = s.load_histogram;
            d["seed"] = s.seed;
            return d;
        },
        py::arg("code"), py::arg("m"), py::arg("trials"), py::arg("seed"));

    m.def("parse_code_file", [](const std::string& text) { return parse_code_file(text); });
    m.def("serialize_code_file", &serialize_code_file);
    m.def("load_code_file", &load_code_file);
}
