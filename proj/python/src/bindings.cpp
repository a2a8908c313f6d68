#include "lpsplit/geometry.hpp"
#include "lpsplit/io.hpp"
#include "lpsplit/problems.hpp"
#include "lpsplit/resolvent.hpp"
#include "lpsplit/solvers.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lpsplit;
using nlohmann::json;

namespace {

PieceFamily family_from(const std::string& name)
{
    if (name == "box") return PieceFamily::Box;
    if (name == "mixed") return PieceFamily::Mixed;
    throw std::invalid_argument("family must be 'box' or 'mixed'");
}

py::dict report_dict(const SolveReport& r)
{
    std::vector<int> n;
    std::vector<double> lambda, residual, phi, alpha;
    for (const IterationRecord& rec : r.trace) {
        n.push_back(rec.n);
        lambda.push_back(rec.lambda);
        residual.push_back(rec.residual);
        phi.push_back(rec.lyapunov_to_solution.value_or(std::nan("")));
        alpha.push_back(rec.alpha.value_or(std::nan("")));
    }
    py::dict trace;
    trace["n"] = n;
    trace["lambda"] = lambda;
    trace["residual"] = residual;
    trace["phi_to_solution"] = phi;
    trace["alpha"] = alpha;

    py::dict d;
    d["status"] = to_string(r.status);
    d["iterations"] = r.iterations;
    d["final_point"] = r.final_point.coords();
    d["resolvent_calls"] = r.resolvent_calls;
    d["descent_violations"] = r.descent_violations;
    d["trace"] = trace;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Tseng forward-backward splitting in l_p spaces, 1 < p <= 2.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DescentViolation>(m, "DescentViolation", PyExc_RuntimeError);

    py::class_<LpSpace>(m, "LpSpace")
        .def(py::init<Index, double>(), py::arg("n"), py::arg("p"))
        .def_property_readonly("n", &LpSpace::dim)
        .def_property_readonly("p", &LpSpace::p)
        .def_property_readonly("q", &LpSpace::q)
        .def_property_readonly("mu", &LpSpace::mu)
        .def_property_readonly("kappa", &LpSpace::kappa)
        .def("norm", [](const LpSpace& s, const Eigen::VectorXd& x) { return s.norm(PrimalVector(x)); })
        .def("dual_norm", [](const LpSpace& s, const Eigen::VectorXd& x) { return s.dual_norm(DualVector(x)); })
        .def("duality_map",
             [](const LpSpace& s, const Eigen::VectorXd& x) { return s.duality_map(PrimalVector(x)).coords(); })
        .def("inverse_duality_map",
             [](const LpSpace& s, const Eigen::VectorXd& x) { return s.inverse_duality_map(DualVector(x)).coords(); })
        .def("lyapunov",
             [](const LpSpace& s, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
                 return s.lyapunov(PrimalVector(x), PrimalVector(y));
             })
        .def("v_functional",
             [](const LpSpace& s, const Eigen::VectorXd& x, const Eigen::VectorXd& xs) {
                 return s.v_functional(PrimalVector(x), DualVector(xs));
             })
        .def("step_size_cap", &LpSpace::step_size_cap, py::arg("lipschitz"))
        .def("theta_cap", &LpSpace::theta_cap)
        .def("__repr__", [](const LpSpace& s) {
            return "LpSpace(n=" + std::to_string(s.dim()) + ", p=" + format_double(s.p()) + ")";
        });

    py::class_<ProblemInstance>(m, "Problem")
        .def_property_readonly("space", [](const ProblemInstance& pr) { return pr.space; })
        .def_property_readonly("matrix", [](const ProblemInstance& pr) { return pr.a.matrix(); })
        .def_property_readonly("offset", [](const ProblemInstance& pr) { return pr.a.offset(); })
        .def_property_readonly("lipschitz", [](const ProblemInstance& pr) { return pr.a.lipschitz_bound(); })
        .def_property_readonly("unique", [](const ProblemInstance& pr) { return pr.solution_unique; })
        .def_property_readonly("solution",
                               [](const ProblemInstance& pr) -> std::optional<Eigen::VectorXd> {
                                   if (!pr.known_solution) return std::nullopt;
                                   return pr.known_solution->coords();
                               })
        .def("apply", [](const ProblemInstance& pr, const Eigen::VectorXd& x) { return pr.a(PrimalVector(x)).coords(); })
        .def("inclusion_check", [](const ProblemInstance& pr, const Eigen::VectorXd& x) {
            return brute_force_inclusion_check(pr, PrimalVector(x));
        });

    py::class_<CompositeMinProblem>(m, "CompositeProblem")
        .def_readonly("m", &CompositeMinProblem::m)
        .def_readonly("b", &CompositeMinProblem::b)
        .def("objective", &CompositeMinProblem::objective)
        .def("oracle", [](const CompositeMinProblem& cm) {
            const OracleSolution sol = coordinate_descent_oracle(cm);
            return py::make_tuple(sol.point.coords(), sol.objective_value);
        })
        .def("to_inclusion", [](const CompositeMinProblem& cm, double p) {
            return composite_to_inclusion(cm, LpSpace(cm.m.cols(), p));
        }, py::arg("p") = 2.0);

    m.def("gen_strongly_monotone",
          [](std::uint64_t seed, Index n, double p, double gamma, const std::string& family) {
              return gen_strongly_monotone(seed, n, p, gamma, family_from(family));
          },
          py::arg("seed"), py::arg("n"), py::arg("p"), py::arg("gamma") = 1.0, py::arg("family") = "box");
    m.def("gen_skew_vi", &gen_skew_vi, py::arg("seed"), py::arg("n"), py::arg("p"), py::arg("skew_weight"),
          py::arg("lo") = -1.0, py::arg("hi") = 1.0);
    m.def("gen_lasso_like", &gen_lasso_like, py::arg("seed"), py::arg("m"), py::arg("n"), py::arg("alpha"));

    m.def("_resolve",
          [](const LpSpace& s, const std::string& pieces, double lambda, const Eigen::VectorXd& z) {
              const SeparableConvex b = parse_pieces(json::parse(pieces), s.dim());
              const ResolventResult r = resolve(s, b, lambda, PrimalVector(z));
              return py::make_tuple(r.y.coords(), r.residual_norm);
          });

    m.def("_solve", [](const ProblemInstance& pr, const std::string& solver, const Eigen::VectorXd& start) {
        const SolverConfig cfg = parse_solver(json::parse(solver), pr.space, pr.a.lipschitz_bound());
        SolveReport r;
        {
            py::gil_scoped_release release;
            r = solve(pr, cfg, PrimalVector(start));
        }
        return report_dict(r);
    });

    m.def("_solve_config", [](const std::string& doc) {
        const RunConfig rc = parse_run_config(json::parse(doc));
        py::list out;
        for (const SolverConfig& cfg : rc.solvers) {
            SolveReport r;
            {
                py::gil_scoped_release release;
                r = solve(rc.problem, cfg, rc.start);
            }
            out.append(report_dict(r));
        }
        return out;
    });

    m.def("verify_constants",
          [](Index n, double p, int samples, std::uint64_t seed) {
              py::list out;
              for (const ConstantCheck& c : verify_constants(LpSpace(n, p), samples, seed)) {
                  py::dict d;
                  d["name"] = c.name;
                  d["max_violation"] = c.max_violation;
                  d["tolerance"] = c.tolerance;
                  d["pass"] = c.pass;
                  out.append(d);
              }
              return out;
          },
          py::arg("n"), py::arg("p"), py::arg("samples") = 1000, py::arg("seed") = 1);
}
