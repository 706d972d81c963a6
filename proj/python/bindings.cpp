#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "cvxcyclic/constructions.hpp"
#include "cvxcyclic/convex_poly.hpp"
#include "cvxcyclic/criteria.hpp"
#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/experiment.hpp"
#include "cvxcyclic/hull.hpp"
#include "cvxcyclic/json_util.hpp"
#include "cvxcyclic/linear_operator.hpp"
#include "cvxcyclic/presets.hpp"

namespace py = pybind11;
using namespace cvxcyclic;

namespace {

using PyVec = std::vector<Complex>;

Vector to_vector(const PyVec& v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

PyVec from_vector(const Vector& v) {
    return PyVec(v.data(), v.data() + v.size());
}

std::vector<PyVec> from_rows(const std::vector<Vector>& rows) {
    std::vector<PyVec> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(from_vector(r));
    return out;
}

std::vector<Vector> to_rows(const std::vector<PyVec>& rows) {
    std::vector<Vector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(to_vector(r));
    return out;
}

LinearOperator operator_from_json(const std::string& spec_json) {
    return build_operator(OperatorSpec::parse(spec_json));
}

ScalarField field_from_string(const std::string& field) {
    if (field == "complex") return ScalarField::Complex;
    if (field == "real") return ScalarField::Real;
    throw ConfigError("field must be \"complex\" or \"real\"");
}

py::dict classifier_report_to_py(const ClassifierReport& report) {
    py::list reasons;
    for (const auto& r : report.reasons)
        reasons.append(py::make_tuple(r.criterion, r.detail));
    py::dict out;
    out["verdict"] = to_string(report.verdict);
    out["reasons"] = reasons;
    out["caveats"] = report.caveat_flags;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "orbit hulls, convex polynomials, and convex-cyclicity criteria";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "ToolkitError");
    py::register_exception<OracleMiss>(m, "OracleMissError");
    py::register_exception<NumericalOverflow>(m, "OverflowGuardError");

    py::class_<LinearOperator>(m, "Operator")
        .def_static("from_spec", &operator_from_json, py::arg("spec_json"),
                    "materialize an operator from its JSON spec")
        .def_property_readonly("dim", &LinearOperator::dim)
        .def("spec_json", [](const LinearOperator& T) { return T.spec().to_json().dump(); })
        .def("matrix",
             [](const LinearOperator& T) {
                 std::vector<PyVec> rows(T.dim());
                 for (int i = 0; i < T.dim(); ++i) {
                     rows[i].resize(T.dim());
                     for (int j = 0; j < T.dim(); ++j) rows[i][j] = T.matrix()(i, j);
                 }
                 return rows;
             })
        .def("apply",
             [](const LinearOperator& T, const PyVec& v) { return from_vector(T.apply(to_vector(v))); })
        .def("__repr__", [](const LinearOperator& T) {
            return "<Operator " + T.spec().kind() + " dim=" + std::to_string(T.dim()) + ">";
        });

    m.def("operator_norm", &operator_norm);
    m.def("adjoint_point_spectrum", &adjoint_point_spectrum);
    m.def("range_density_defect", &range_density_defect, py::arg("T"),
          py::arg("rank_tol") = 1e-12);

    py::class_<ConvexPolynomial>(m, "ConvexPolynomial")
        .def_property_readonly("coeffs", &ConvexPolynomial::coeffs)
        .def("eval", &ConvexPolynomial::eval)
        .def("apply",
             [](const ConvexPolynomial& p, const LinearOperator& T, const PyVec& x) {
                 return from_vector(p.apply(T, to_vector(x)));
             })
        .def("__repr__", [](const ConvexPolynomial& p) {
            return "<ConvexPolynomial degree=" + std::to_string(p.degree()) + ">";
        });

    m.def("make_convex", &make_convex);
    m.def("cesaro_mean", &cesaro_mean);
    m.def("pkc", &pkc);
    m.def("poly_power", &poly_power);
    m.def("substitute_monomial", &substitute_monomial);
    m.def("parse_convex_polynomial", &parse_convex_polynomial);
    m.def("pkc_identity_residual",
          [](const LinearOperator& T, const PyVec& x, double c, int k) {
              return pkc_identity_residual(T, to_vector(x), c, k);
          });

    m.def("compute_orbit", [](const LinearOperator& T, const PyVec& x, int N) {
        return from_rows(compute_orbit(T, to_vector(x), N).rows);
    });

    m.def(
        "best_convex_approximation",
        [](const LinearOperator& T, const PyVec& x, const PyVec& y, int N, double tol,
           int max_iter) {
            const OrbitTable orbit = compute_orbit(T, to_vector(x), N);
            const HullApproximation approx =
                best_convex_approximation(orbit, to_vector(y), tol, max_iter);
            py::dict out;
            out["coefficients"] = approx.coefficients;
            out["distance"] = approx.distance;
            out["gap"] = approx.gap;
            out["iterations"] = approx.iterations;
            return out;
        },
        py::arg("T"), py::arg("x"), py::arg("y"), py::arg("N") = 64, py::arg("tol") = 1e-6,
        py::arg("max_iter") = 10'000);

    m.def(
        "simplex_least_squares",
        [](const std::vector<PyVec>& points, const PyVec& y, double tol, int max_iter) {
            const HullApproximation approx =
                simplex_least_squares(to_rows(points), to_vector(y), tol, max_iter);
            py::dict out;
            out["coefficients"] = approx.coefficients;
            out["distance"] = approx.distance;
            out["gap"] = approx.gap;
            out["iterations"] = approx.iterations;
            return out;
        },
        py::arg("points"), py::arg("y"), py::arg("tol") = 1e-8, py::arg("max_iter") = 10'000);

    m.def("brute_force_simplex_oracle",
          [](const std::vector<PyVec>& points, const PyVec& y, int grid) {
              return brute_force_simplex_oracle(to_rows(points), to_vector(y), grid);
          });

    m.def(
        "density_probe",
        [](const LinearOperator& T, const PyVec& x, const std::vector<PyVec>& targets, int N,
           double tol) {
            const auto result = density_probe(T, to_vector(x), to_rows(targets), N, tol);
            return py::make_tuple(result.score, result.residuals);
        },
        py::arg("T"), py::arg("x"), py::arg("targets"), py::arg("N") = 64,
        py::arg("tol") = 1e-3);

    m.def(
        "hahn_banach_probe",
        [](const LinearOperator& T, const PyVec& x, const PyVec& f, int N) {
            const ProbeTrace trace = hahn_banach_probe(T, to_vector(x), to_vector(f), N);
            py::dict out;
            out["values"] = trace.values;
            out["running_max"] = trace.running_max;
            out["classification"] = to_string(trace.classification);
            return out;
        },
        py::arg("T"), py::arg("x"), py::arg("f"), py::arg("N") = 100);

    m.def(
        "diagonal_classifier",
        [](const std::vector<Complex>& eigs, const std::string& field) {
            return classifier_report_to_py(diagonal_classifier(eigs, field_from_string(field)));
        },
        py::arg("eigs"), py::arg("field") = "complex");

    m.def("set_S_membership", &set_S_membership);

    m.def("necessary_conditions_report", [](const LinearOperator& T) {
        const auto report = necessary_conditions_report(T);
        py::dict out;
        out["norm_gt_one"] = report.norm_gt_one;
        out["dense_range"] = report.dense_range;
        out["adjoint_spectrum_ok"] = report.adjoint_spectrum_ok;
        out["norm"] = report.norm;
        out["range_defect"] = report.range_defect;
        out["adjoint_spectrum"] = report.adjoint_spectrum;
        return out;
    });

    m.def("m_isometry_defect", [](const LinearOperator& T, const PyVec& x, int m, double p) {
        return m_isometry_defect(T, to_vector(x), m, p);
    });

    m.def(
        "is_m_isometry",
        [](const LinearOperator& T, int m, double p, int samples, double tol,
           std::uint64_t seed) {
            const auto report = is_m_isometry(T, m, p, samples, tol, seed);
            py::dict out;
            out["m"] = report.m;
            out["p_exponent"] = report.p_exponent;
            out["defects"] = report.defects;
            out["is_m_isometry"] = report.is_m_isometry;
            return out;
        },
        py::arg("T"), py::arg("m"), py::arg("p") = 2.0, py::arg("samples") = 64,
        py::arg("tol") = 1e-9, py::arg("seed") = kDefaultSeed);

    m.def(
        "misometry_seminorm_estimate",
        [](const LinearOperator& T, const PyVec& x, int m, double p, int N) {
            const auto est = misometry_seminorm_estimate(T, to_vector(x), m, p, N);
            return py::make_tuple(est.estimate, est.diverged, est.spread);
        },
        py::arg("T"), py::arg("x"), py::arg("m"), py::arg("p") = 2.0, py::arg("N") = 50);

    m.def("conjugate_confinement_witness",
          [](const std::vector<Complex>& eigs, const PyVec& x) -> std::optional<PyVec> {
              const auto witness = conjugate_confinement_witness(eigs, to_vector(x));
              if (!witness) return std::nullopt;
              return from_vector(*witness);
          });

    m.def(
        "classify_operator",
        [](const LinearOperator& T, const std::string& field, int max_m, double p, int samples,
           double tol, std::uint64_t seed, std::optional<PyVec> seed_vector) {
            ClassifyOptions options;
            options.field = field_from_string(field);
            options.max_m = max_m;
            options.p_exp = p;
            options.samples = samples;
            options.tol = tol;
            options.seed = seed;
            std::optional<Vector> sv;
            if (seed_vector) sv = to_vector(*seed_vector);
            const auto result = classify_operator(T, options, sv);
            py::dict out = classifier_report_to_py(result.report);
            out["eigenvalues"] = result.eigenvalues;
            out["witness"] =
                result.witness ? py::cast(from_vector(*result.witness)) : py::none();
            return out;
        },
        py::arg("T"), py::arg("field") = "complex", py::arg("max_m") = 3, py::arg("p") = 2.0,
        py::arg("samples") = 64, py::arg("tol") = 1e-9, py::arg("seed") = kDefaultSeed,
        py::arg("seed_vector") = std::nullopt);

    m.def(
        "family_probe",
        [](const LinearOperator& T, const PyVec& x, const PyVec& y, const std::string& kind,
           int max_k, double c, int n_terms) {
            FamilySpec fam;
            if (kind == "cesaro")
                fam.kind = FamilySpec::Kind::Cesaro;
            else if (kind == "pkc")
                fam.kind = FamilySpec::Kind::Pkc;
            else if (kind == "monomial_average")
                fam.kind = FamilySpec::Kind::MonomialAverage;
            else
                throw ConfigError("family kind must be cesaro, pkc, or monomial_average");
            fam.c = c;
            fam.n_terms = n_terms;
            const auto result = family_probe(T, to_vector(x), to_vector(y), fam, max_k);
            py::dict out;
            out["best_k"] = result.best_k;
            out["distance"] = result.distance;
            out["exponents"] = result.exponents;
            return out;
        },
        py::arg("T"), py::arg("x"), py::arg("y"), py::arg("kind"), py::arg("max_k") = 64,
        py::arg("c") = 2.0, py::arg("n_terms") = 4);

    m.def(
        "direct_sum_pm",
        [](const LinearOperator& T, const std::string& sign) {
            if (sign != "+" && sign != "-") throw ConfigError("sign must be '+' or '-'");
            return direct_sum_pm(T, sign == "+" ? BlockSign::Plus : BlockSign::Minus);
        },
        py::arg("T"), py::arg("sign") = "-");

    m.def("scale_operator", &scale_operator);

    auto greedy_to_py = [](const EpsilonGreedyResult& result) {
        py::dict out;
        out["exponents"] = result.exponents;
        out["coeffs"] = result.polynomial.coeffs();
        out["achieved_error"] = result.achieved_error;
        out["bound"] = result.bound;
        out["steps"] = result.steps;
        out["N"] = result.big_n;
        out["zero_branch"] = result.zero_branch;
        return out;
    };

    m.def(
        "epsilon_greedy_approximation",
        [greedy_to_py](const LinearOperator& T, const PyVec& x, const PyVec& y, double eps,
                       long horizon, double delta) {
            return greedy_to_py(
                epsilon_greedy_approximation(T, to_vector(x), to_vector(y), eps, horizon, delta));
        },
        py::arg("T"), py::arg("x"), py::arg("y"), py::arg("eps") = 0.5,
        py::arg("horizon") = 256, py::arg("delta") = 0.01);

    m.def(
        "epsilon_greedy_mock",
        [greedy_to_py](const PyVec& y, double eps, double delta, std::uint64_t seed) {
            return greedy_to_py(
                epsilon_greedy_with_oracle(to_vector(y), eps, delta, mock_exponent_oracle(seed)));
        },
        py::arg("y"), py::arg("eps") = 0.5, py::arg("delta") = 0.01,
        py::arg("seed") = kDefaultSeed);

    m.def(
        "disk_touching_polynomial",
        [](Complex z0, int max_n) {
            const auto result = disk_touching_polynomial(z0, max_n);
            py::dict out;
            out["n"] = result.n;
            out["a"] = result.a;
            out["coeffs"] = result.polynomial.coeffs();
            return out;
        },
        py::arg("z0"), py::arg("max_n") = 512);

    m.def("preset_names", &preset_names);
    m.def("resolve_preset", [](const std::string& name) {
        const Preset preset = resolve_preset(name);
        py::dict out;
        out["name"] = preset.name;
        out["citation"] = preset.citation;
        out["description"] = preset.description;
        out["spec_json"] = preset.spec.to_json().dump();
        out["default_seed"] = from_vector(preset.default_seed);
        return out;
    });

    m.def("run_experiment_json", [](const std::string& config_json) {
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        const Report report = run_experiment(ExperimentConfig::from_json(parsed));
        return report.to_json().dump();
    });
}
