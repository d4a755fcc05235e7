#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wignerlab/harness.hpp"

namespace py = pybind11;
using namespace wignerlab;

namespace {

HermitianMatrix matrix_from_array(const py::array& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) {
        throw py::value_error("expected a square 2D array");
    }
    const py::array_t<std::complex<double>> a =
        py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>(arr);
    const std::size_t n = static_cast<std::size_t>(a.shape(0));
    std::vector<std::complex<double>> entries(a.data(), a.data() + n * n);
    return HermitianMatrix(n, std::move(entries));
}

py::array_t<std::complex<double>> matrix_to_array(const HermitianMatrix& H) {
    const std::size_t n = H.size();
    py::array_t<std::complex<double>> out({n, n});
    std::copy(H.entries().begin(), H.entries().end(), out.mutable_data());
    return out;
}

py::array_t<double> vector_to_array(const std::vector<double>& v) {
    py::array_t<double> out(v.size());
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

EntryDistribution distribution_from_name(const std::string& kind, double param) {
    if (kind == "real-gaussian") return EntryDistribution::real_gaussian(param);
    if (kind == "complex-gaussian") return EntryDistribution::complex_gaussian_unit();
    if (kind == "rademacher") return EntryDistribution::rademacher();
    if (kind == "centered-bernoulli") return EntryDistribution::centered_bernoulli(param);
    throw py::value_error("unknown distribution kind: " + kind);
}

QuadratureOptions quad_options(double tol, int max_panels) {
    QuadratureOptions opts;
    opts.abs_tol = tol;
    opts.max_panels = max_panels;
    return opts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral measures of Wigner matrices: potentials, distances, "
              "exact combinatorial oracles and Monte Carlo experiments";

    py::register_exception<QuadratureAccuracyError>(m, "QuadratureAccuracyError");
    py::register_exception<IterationLimitError>(m, "IterationLimitError");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<AtomicMeasure>(m, "AtomicMeasure")
        .def(py::init<std::vector<double>>(), py::arg("atoms"))
        .def_property_readonly("atoms",
                               [](const AtomicMeasure& mu) { return vector_to_array(mu.atoms()); })
        .def("__len__", &AtomicMeasure::size)
        .def("cdf", &AtomicMeasure::cdf)
        .def("to_text", &AtomicMeasure::to_text)
        .def_static("from_text", &AtomicMeasure::from_text);

    py::class_<HermitianMatrix>(m, "HermitianMatrix")
        .def(py::init(&matrix_from_array), py::arg("array"))
        .def_property_readonly("n", &HermitianMatrix::size)
        .def("to_numpy", &matrix_to_array)
        .def("is_real", &HermitianMatrix::is_real)
        .def("trace", &HermitianMatrix::trace)
        .def("to_json", &HermitianMatrix::to_json)
        .def_static("from_json", &HermitianMatrix::from_json);

    // semicircle law and potentials
    m.def("sc_density", &sc_density, py::arg("x"));
    m.def("sc_cdf", &sc_cdf, py::arg("x"));
    m.def("sc_quantile", &sc_quantile, py::arg("p"));
    m.def("sc_quantile_atoms", &sc_quantile_atoms, py::arg("n"));
    m.def("fs_density", [](std::complex<double> z) { return fs_density(z); }, py::arg("z"));
    m.def("inverse_joukowski", [](std::complex<double> z) { return inverse_joukowski(z); },
          py::arg("z"));
    m.def("sc_potential", [](std::complex<double> z) { return sc_potential(z); }, py::arg("z"));
    m.def("log_potential",
          [](const AtomicMeasure& mu, std::complex<double> z) { return log_potential(mu, z); },
          py::arg("mu"), py::arg("z"));

    // distances
    m.def(
        "dist_potential",
        [](const AtomicMeasure& mu, py::object other, double tol, int max_panels) {
            const QuadratureOptions opts = quad_options(tol, max_panels);
            if (other.is_none()) return dist_potential(mu, SemicircleLaw{}, opts);
            return dist_potential(mu, other.cast<AtomicMeasure>(), opts);
        },
        py::arg("mu"), py::arg("other") = py::none(), py::arg("tol") = 1e-6,
        py::arg("max_panels") = 80000,
        "L1 distance of logarithmic potentials on the sphere; other=None means "
        "the semicircle law");
    m.def(
        "w1_distance",
        [](const AtomicMeasure& mu, py::object other) {
            if (other.is_none()) return w1_distance(mu, SemicircleLaw{});
            return w1_distance(mu, other.cast<AtomicMeasure>());
        },
        py::arg("mu"), py::arg("other") = py::none());
    m.def(
        "interval_discrepancy",
        [](const AtomicMeasure& mu, py::object other) {
            if (other.is_none()) return interval_discrepancy(mu, SemicircleLaw{});
            return interval_discrepancy(mu, other.cast<AtomicMeasure>());
        },
        py::arg("mu"), py::arg("other") = py::none());
    m.def(
        "potential_gap",
        [](const AtomicMeasure& mu, py::object grid) {
            if (grid.is_none()) return potential_gap(mu, chebyshev_grid());
            return potential_gap(mu, grid.cast<std::vector<double>>());
        },
        py::arg("mu"), py::arg("grid") = py::none());
    m.def("chebyshev_grid", &chebyshev_grid, py::arg("count") = 4096);
    m.def("mass_outside", &mass_outside, py::arg("mu"), py::arg("lo"), py::arg("hi"));

    // spectra
    m.def(
        "eigenvalues",
        [](const py::array& arr) {
            return vector_to_array(eigenvalues(matrix_from_array(arr)).eigenvalues);
        },
        py::arg("matrix"));
    m.def(
        "tridiagonalize",
        [](const py::array& arr) {
            auto [d, e] = tridiagonalize(matrix_from_array(arr));
            return py::make_tuple(vector_to_array(d), vector_to_array(e));
        },
        py::arg("matrix"));
    m.def(
        "esd", [](const py::array& arr) { return esd(matrix_from_array(arr)); },
        py::arg("matrix"));
    m.def(
        "log_abs_charpoly",
        [](const py::array& arr, std::complex<double> z) {
            return log_abs_charpoly(matrix_from_array(arr), z);
        },
        py::arg("matrix"), py::arg("z"));
    m.def(
        "charpoly_coeffs_small",
        [](const py::array& arr) {
            return vector_to_array(charpoly_coeffs_small(matrix_from_array(arr)));
        },
        py::arg("matrix"));

    // ensembles
    m.def(
        "sample_wigner",
        [](std::size_t n, const std::string& offdiag, double offdiag_param,
           const std::string& diag, double diag_param, std::uint64_t master,
           std::uint64_t index) {
            const WignerSpec spec(n, distribution_from_name(offdiag, offdiag_param),
                                  distribution_from_name(diag, diag_param));
            return matrix_to_array(sample_wigner(spec, derive_seed(master, index)));
        },
        py::arg("n"), py::arg("offdiag") = "real-gaussian", py::arg("offdiag_param") = 1.0,
        py::arg("diag") = "real-gaussian", py::arg("diag_param") = 0.0, py::arg("master") = 1,
        py::arg("index") = 0);
    m.def(
        "scale_to_w",
        [](const py::array& arr) { return matrix_to_array(scale_to_w(matrix_from_array(arr))); },
        py::arg("matrix"));
    m.def(
        "sample_er_adjacency",
        [](std::size_t n, double p, std::uint64_t master, std::uint64_t index) {
            return matrix_to_array(sample_er_adjacency(n, p, derive_seed(master, index)));
        },
        py::arg("n"), py::arg("p"), py::arg("master") = 1, py::arg("index") = 0);
    m.def(
        "er_normalize",
        [](const py::array& arr, double p) {
            return matrix_to_array(er_normalize(matrix_from_array(arr), p));
        },
        py::arg("matrix"), py::arg("p"));
    m.def(
        "er_center",
        [](const py::array& arr, double p) {
            return matrix_to_array(er_center(matrix_from_array(arr), p));
        },
        py::arg("matrix"), py::arg("p"));
    m.def(
        "moments_of",
        [](const std::string& kind, double param) {
            const Moments mm = moments_of(distribution_from_name(kind, param));
            return py::make_tuple(mm.mean, mm.variance, mm.second_moment_complex,
                                  mm.abs_fourth_moment);
        },
        py::arg("kind"), py::arg("param") = 1.0);
    m.def(
        "enumerate_symmetric_rademacher",
        [](std::size_t n, bool zero_diagonal) {
            py::list out;
            for_each_symmetric_rademacher(
                n, zero_diagonal, [&](const HermitianMatrix& M) { out.append(matrix_to_array(M)); });
            return out;
        },
        py::arg("n"), py::arg("zero_diagonal") = true);

    // oracles
    m.def("hermite", &hermite, py::arg("n"), py::arg("z"));
    m.def("hermite_log_abs", &hermite_log_abs, py::arg("n"), py::arg("z"));
    m.def("hermite_bound_ratio", &hermite_bound_ratio, py::arg("n"), py::arg("z"));
    m.def("expected_charpoly_zero_diag", &expected_charpoly_zero_diag, py::arg("n"), py::arg("z"));
    m.def(
        "stirling_cycle_count",
        [](int n, int l) { return static_cast<std::uint64_t>(stirling_cycle_count(n, l)); },
        py::arg("n"), py::arg("l"));
    m.def(
        "cycle_bound_check",
        [](int n, int l) {
            const CycleBoundCheck c = cycle_bound_check(n, l);
            py::dict out;
            out["count"] = uint128_to_string(c.count);
            out["count_scaled"] = uint128_to_string(c.count_scaled);
            out["bound_scaled"] = uint128_to_string(c.bound_scaled);
            out["bound_value"] = c.bound_value;
            out["holds"] = c.holds;
            return out;
        },
        py::arg("n"), py::arg("l"));
    m.def(
        "partial_sum_R",
        [](const std::string& kind, int n, double z, double off_abs4) {
            MomentModel model = MomentModel::rademacher();
            model.off_abs4 = off_abs4;
            return partial_sum_R(rsum_kind_from_string(kind), n, z, model);
        },
        py::arg("kind"), py::arg("n"), py::arg("z"), py::arg("off_abs4") = 1.0);
    m.def("r0_inclusion_exclusion", &r0_inclusion_exclusion, py::arg("n"), py::arg("z"));
    m.def(
        "exhaustive_expected_charpoly",
        [](std::size_t n, std::complex<double> z) {
            return exhaustive_expectation(
                n, [&](const HermitianMatrix& M) { return det_shifted(M, z); }, true);
        },
        py::arg("n"), py::arg("z"));
    m.def(
        "markov_ratio",
        [](const PolynomialR& q, const std::vector<std::complex<double>>& grid) {
            std::vector<ComplexPoint> g(grid.begin(), grid.end());
            return markov_ratio(q, g);
        },
        py::arg("coeffs"), py::arg("grid"));
    m.def(
        "net_sup_ratio",
        [](const PolynomialR& q, const std::vector<std::complex<double>>& grid,
           const std::vector<double>& log_weights, const std::vector<std::size_t>& net) {
            std::vector<ComplexPoint> g(grid.begin(), grid.end());
            return net_sup_ratio(q, g, log_weights, net);
        },
        py::arg("coeffs"), py::arg("grid"), py::arg("log_weights"), py::arg("net"));

    // experiments
    m.def("run_oracle_suite", [] {
        const OracleReport report = run_oracle_suite();
        return py::make_tuple(report.all_pass, to_json(report));
    });
    m.def(
        "run_wigner_experiment",
        [](std::vector<std::size_t> n_list, int samples, std::uint64_t seed,
           const std::string& ensemble, double quad_tol) {
            ExperimentConfig cfg;
            cfg.n_list = std::move(n_list);
            cfg.sample_count = samples;
            cfg.master_seed = seed;
            apply_config_entries(cfg, {{"ensemble", ensemble}});
            cfg.quad_tol = quad_tol;
            return to_json(run_semicircle_experiment(cfg));
        },
        py::arg("n_list"), py::arg("samples"), py::arg("seed") = 1,
        py::arg("ensemble") = "real-gaussian", py::arg("quad_tol") = 1e-4);
}
