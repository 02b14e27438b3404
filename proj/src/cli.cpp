#include "sympl/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "sympl/errors.hpp"
#include "sympl/matrix_market.hpp"
#include "sympl/pencil.hpp"
#include "sympl/report.hpp"
#include "sympl/symplectic.hpp"
#include "sympl/trace_min.hpp"
#include "sympl/williamson.hpp"

namespace sympl::cli {

namespace {

using report::Json;
using report::RunReport;

struct Options {
    std::string input;
    double tol = kDefaultTol;
    std::size_t k = 1;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    bool emit_matrices = false;
    std::string emit_dir = ".";
    bool human = false;
    unsigned threads = 1;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--input", o.input, "MatrixMarket file holding a symmetric 2n x 2n matrix")
        ->required();
    sub->add_option("--tol", o.tol, "relative tolerance")->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_flag("--human", o.human, "aligned text instead of JSON");
}

Json kernel_json(const KernelReport& k) {
    Json j;
    j["dim"] = k.dim;
    j["classification"] = std::string(to_string(k.classification));
    j["basis"] = report::matrix_to_json(k.basis);
    j["kernel_residual"] = k.kernel_residual;
    j["gram_min_singular"] = k.gram_min_singular;
    j["gram_max_singular"] = k.gram_max_singular;
    j["symplectic_basis"] =
        k.symplectic_basis ? report::matrix_to_json(*k.symplectic_basis) : Json(nullptr);
    return j;
}

void run_spectrum(const DenseMatrix& a, const Options& o, RunReport& rep) {
    const auto w = williamson(a, o.tol);
    rep.outputs["d"] = w.d;
    rep.outputs["m"] = w.m;
}

void run_diagonalize(const DenseMatrix& a, const Options& o, RunReport& rep) {
    const auto w = williamson(a, o.tol);
    const auto pairs = verify_eigenpairs(a, w.s, w.d, o.tol);
    const double norm = frobenius_norm(a);
    const double snorm = frobenius_norm(w.s);
    auto& out = rep.outputs;
    out["d"] = w.d;
    out["m"] = w.m;
    out["zero_matrix"] = w.zero_matrix;
    out["S"] = report::matrix_to_json(w.s);
    out["residual_diag"] = w.residual_diag;
    out["residual_sympl"] = w.residual_sympl;
    out["diag_ok"] = w.residual_diag <= o.tol * (1.0 + norm);
    out["sympl_ok"] = w.residual_sympl <= o.tol * (1.0 + snorm * snorm);
    out["eigenpair_max_residual"] = pairs.max_residual;
    out["eigenpairs_ok"] = pairs.pass;
    if (o.emit_matrices) {
        const std::filesystem::path dir(o.emit_dir);
        const std::string stem = std::filesystem::path(o.input).stem().string();
        const auto s_path = dir / (stem + ".S.mtx");
        const auto d_path = dir / (stem + ".D.mtx");
        io::write_matrix(s_path, w.s, "symplectic diagonalizer S");
        io::write_matrix(d_path, DenseMatrix::diagonal(w.d), "symplectic eigenvalues D");
        out["emitted"] = {{"S", s_path.string()}, {"D", d_path.string()}};
    }
}

void run_check_kernel(const DenseMatrix& a, const Options& o, RunReport& rep) {
    const auto k = kernel_report(a, o.tol);
    rep.outputs = kernel_json(k);
    if (k.classification == KernelClass::Isotropic)
        throw Error(ErrorCode::IsotropicKernel,
                    "kernel is isotropic; the matrix has no Williamson diagonal form");
    if (k.classification == KernelClass::MixedDegenerate)
        throw Error(ErrorCode::MixedDegenerateKernel,
                    "kernel is neither symplectic nor isotropic; no Williamson diagonal form");
}

void run_pencil(const DenseMatrix& a, const Options& o, RunReport& rep) {
    const Pencil p = build_pencil(a, o.tol);
    const PencilSpectrum spec = pencil_eigenvalues(p, o.tol);
    const MultiplicityCheck mult = check_multiplicities(spec, o.tol);
    auto& out = rep.outputs;
    out["values"] = spec.values;
    out["sign_symmetric"] = mult.sign_symmetric;
    out["symmetry_error"] = mult.symmetry_error;
    out["even_multiplicity"] = mult.even_multiplicity;
    Json clusters = Json::array();
    for (const auto& c : mult.positive_clusters)
        clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
    out["nonnegative_clusters"] = clusters;
    const auto halved = halved_positive_part(spec);
    out["halved_nonnegative"] = halved;

    // Cross-check against the Williamson route when the form exists.
    try {
        const auto d = symplectic_spectrum(a, o.tol);
        double dev = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) dev = std::max(dev, std::abs(d[i] - halved[i]));
        out["symplectic_spectrum"] = d;
        out["max_deviation"] = dev;
    } catch (const Error& e) {
        if (!is_mathematical_rejection(e.code())) throw;
        out["symplectic_spectrum"] = nullptr;
        out["max_deviation"] = nullptr;
    }
    out["multiplicity_two_ok"] = mult.sign_symmetric && mult.even_multiplicity;
}

void run_tracemin(const DenseMatrix& a, const Options& o, RunReport& rep) {
    const auto r = verify_trace_theorem(a, o.k, o.samples, o.seed, o.tol, o.threads);
    auto& out = rep.outputs;
    out["k"] = r.k;
    out["bound"] = r.bound;
    out["minimizer_value"] = r.minimizer_value;
    out["minimizer_feasibility_residual"] = r.minimizer_feasibility_residual;
    out["num_samples"] = r.samples.size();
    out["violations"] = r.violations;
    out["min_sample"] = r.min_sample;
    double sum = 0.0, hi = r.minimizer_value;
    for (double v : r.samples) {
        sum += v;
        hi = std::max(hi, v);
    }
    out["max_sample"] = r.samples.empty() ? r.minimizer_value : hi;
    out["mean_sample"] = r.samples.empty() ? r.minimizer_value : sum / r.samples.size();
    out["max_feasibility_residual"] = r.max_feasibility_residual;
    out["spectrum"] = r.spectrum;
    const bool attained = std::abs(r.minimizer_value - r.bound) <= o.tol * (1.0 + r.bound);
    out["attained"] = attained;
    if (o.emit_matrices) {
        const std::filesystem::path dir(o.emit_dir);
        const auto x_path = dir / (std::filesystem::path(o.input).stem().string() + ".X.mtx");
        io::write_matrix(x_path, minimizer(a, o.k, o.tol), "trace minimizer X");
        out["emitted"] = {{"X", x_path.string()}};
    }
    if (r.violations > 0)
        throw Error(ErrorCode::TraceBoundViolated, "trace bound violated by " +
                                                   std::to_string(r.violations) + " samples");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Symplectic eigenvalues and Williamson diagonal forms of spsd matrices", "sympl"};
    app.require_subcommand(1);

    auto* spectrum = app.add_subcommand("spectrum", "symplectic eigenvalues");
    auto* diagonalize = app.add_subcommand("diagonalize", "Williamson diagonal form with residuals");
    auto* check_kernel = app.add_subcommand("check-kernel", "classify the kernel");
    auto* pencil = app.add_subcommand("pencil", "eigenvalues of the doubled matrix pencil");
    auto* tracemin = app.add_subcommand("tracemin-verify", "randomized trace minimization check");
    for (auto* sub : {spectrum, diagonalize, check_kernel, pencil, tracemin}) add_common(sub, o);
    for (auto* sub : {diagonalize, tracemin}) {
        sub->add_flag("--emit-matrices", o.emit_matrices, "write result matrices as MatrixMarket");
        sub->add_option("--emit-dir", o.emit_dir, "directory for --emit-matrices")
            ->capture_default_str();
    }
    tracemin->add_option("--k", o.k, "number of symplectic eigenvalues")->capture_default_str()
        ->check(CLI::PositiveNumber);
    tracemin->add_option("--samples", o.samples, "random feasible points")->capture_default_str();
    tracemin->add_option("--seed", o.seed, "sampler seed")->capture_default_str();
    tracemin->add_option("--threads", o.threads, "sampling threads")->capture_default_str()
        ->check(CLI::PositiveNumber);

    RunReport rep;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        rep.command = args.empty() ? "" : args.front();
        rep.status = "error";
        rep.exit_code = kExitUsage;
        rep.error_code = "Usage";
        rep.error_message = e.what();
        err << "sympl: " << e.what() << '\n';
        out << report::render_json(rep);
        return kExitUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    rep.command = sub->get_name();
    rep.tol = o.tol;
    rep.seed = o.seed;
    rep.input_file = std::filesystem::path(o.input).filename().string();

    const auto start = std::chrono::steady_clock::now();
    try {
        const DenseMatrix a = io::parse_matrix(o.input);
        rep.dimension = a.rows();
        if (!a.is_square())
            throw Error(ErrorCode::NotSquare, "input is " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + ", expected square");
        if (a.rows() == 0 || a.rows() % 2 != 0)
            throw Error(ErrorCode::OddDimensions,
                        "input dimension " + std::to_string(a.rows()) + " is not even");
        rep.symmetry_residual = symmetry_residual(a);

        if (sub == spectrum) run_spectrum(a, o, rep);
        else if (sub == diagonalize) run_diagonalize(a, o, rep);
        else if (sub == check_kernel) run_check_kernel(a, o, rep);
        else if (sub == pencil) run_pencil(a, o, rep);
        else run_tracemin(a, o, rep);
    } catch (const Error& e) {
        const bool math = is_mathematical_rejection(e.code());
        rep.status = math ? "rejected" : "error";
        rep.exit_code = math ? kExitRejected : kExitUsage;
        rep.error_code = std::string(to_string(e.code()));
        rep.error_message = e.what();
        err << "sympl: " << to_string(e.code()) << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        rep.status = "error";
        rep.exit_code = kExitUsage;
        rep.error_code = "InternalError";
        rep.error_message = e.what();
        err << "sympl: " << e.what() << '\n';
    }
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    out << (o.human ? report::render_human(rep) : report::render_json(rep));
    return rep.exit_code;
}

}  // namespace sympl::cli
