// Copyright 2026 The quasispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "commands.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "matrix_io.h"
#include "quasispec/filter.h"
#include "quasispec/oracle.h"
#include "quasispec/quasirandom.h"

namespace quasispec::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

uint64_t resolve_seed(const std::optional<uint64_t> &flag) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("QUASISPEC_SEED")) {
        std::string_view s(env);
        uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            throw InputError("QUASISPEC_SEED is not a non-negative integer: \"" + std::string(s) + "\"");
        }
        return v;
    }
    return 0;
}

void emit(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << content;
    } else {
        write_text_file(path, content);
    }
}

json vector_json(const Vector &v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back({v(i).real(), v(i).imag()});
    }
    return arr;
}

const char *mode_name(AsdMode m) { return m == AsdMode::kEmpirical ? "empirical" : "theoretical"; }
const char *band_name(BandMode m) { return m == BandMode::kProofConstants ? "proof" : "nominal"; }

const char *reason_name(Rejection::Reason r) {
    switch (r) {
        case Rejection::Reason::kDegenerate:
            return "degenerate";
        case Rejection::Reason::kResidual:
            return "residual";
        case Rejection::Reason::kComplexQuotient:
            return "complex_quotient";
    }
    return "unknown";
}

json params_json(const AsdParams &p, uint64_t copies) {
    return {{"n", p.n},
            {"delta", p.delta},
            {"B", p.B},
            {"delta_prime", p.delta_prime},
            {"delta_prime_eff", p.delta_prime_eff},
            {"alpha", p.alpha},
            {"M", p.M},
            {"T", p.T},
            {"copies", copies},
            {"sigma", p.sigma},
            {"mode", mode_name(p.mode)}};
}

json stats_json(const CopyStats &s) {
    return {{"copies", s.copies},
            {"accepted", s.accepted},
            {"rejected_degenerate", s.rejected_degenerate},
            {"rejected_residual", s.rejected_residual},
            {"rejected_complex_quotient", s.rejected_quotient},
            {"accept_rate", s.accept_rate()},
            {"m_min", s.m_min},
            {"m_max", s.m_max},
            {"m_mean", s.m_mean},
            {"m_histogram", s.m_histogram}};
}

std::vector<double> parse_double_list(const std::string &text, const std::string &flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw InputError(flag + ": \"" + item + "\" is not a number");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<uint64_t> parse_uint_list(const std::string &text, const std::string &flag) {
    std::vector<uint64_t> out;
    for (double v : parse_double_list(text, flag)) {
        if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18) {
            throw InputError(flag + ": " + format_double(v) + " is not a non-negative integer");
        }
        out.push_back(static_cast<uint64_t>(v));
    }
    return out;
}

// ---- asd ----

struct AsdArgs {
    std::string input;
    double delta = 0.0;
    std::optional<uint64_t> seed;
    std::string mode = "empirical";
    std::string bands = "proof";
    std::optional<double> B;
    std::optional<uint64_t> copies;
    std::string out;
    unsigned threads = 0;
};

BandMode parse_bands(const std::string &s) {
    return s == "nominal" ? BandMode::kNominal : BandMode::kProofConstants;
}

inline constexpr uint64_t kSeparationDraws = 10'000;

// P(m separates k) over m ~ U{1..M} for each eigenvalue of the perturbed
// matrix. Diagnostic only: the filter itself never looks at the bands.
json separation_json(const HermitianMatrix &perturbed, const AsdParams &params, BandMode mode, uint64_t seed) {
    const Bands bands = make_bands(params.n, params.alpha, mode);
    const std::vector<double> lams = jacobi_eigh(perturbed).values;
    json probs = json::array();
    double lowest = 1.0;
    for (size_t k = 0; k < lams.size(); ++k) {
        const double p = separation_probability(lams, k, params.M, bands, kSeparationDraws, RngSeed{seed, 2 + k});
        lowest = std::min(lowest, p);
        probs.push_back(p);
    }
    return {{"bands", band_name(mode)},
            {"r_in", bands.r_in},
            {"r_out", bands.r_out},
            {"draws", std::min(kSeparationDraws, params.M)},
            {"min_probability", lowest},
            {"probability_by_eigenvalue", std::move(probs)}};
}

int cmd_asd(const AsdArgs &args, std::ostream &out, std::ostream &err) {
    const auto start = Clock::now();
    const MatrixFile file = read_matrix_file(args.input);
    const uint64_t seed = resolve_seed(args.seed);
    const RescaledMatrix work = rescale_to_range(file.matrix);
    const AsdMode mode = args.mode == "theoretical" ? AsdMode::kTheoretical : AsdMode::kEmpirical;
    const AsdParams params = compute_asd_params(file.matrix.size(), args.delta, args.B, mode);

    AsdOptions options;
    options.threads = args.threads;
    options.copies = args.copies;
    options.transform = work.transform;
    const AsdResult result = asd_run(work.matrix, RngSeed{seed, 0}, params, options);

    std::optional<AsdVerification> check;
    if (result.complete) {
        check = verify_asd(work.matrix, result.database, args.delta);
    }
    const char *status = !result.complete ? "incomplete" : (check->ok ? "verified" : "unverified");

    // Entries are ascending in the working coordinates; the transform has
    // positive scale so the order carries over.
    json values = json::array();
    json vectors = json::array();
    for (const EigenEstimate &e : result.database.entries) {
        values.push_back(work.transform.invert(e.lambda_hat));
        vectors.push_back(vector_json(e.w.vector()));
    }
    json report;
    report["params"] = params_json(params, options.copies.value_or(params.T));
    report["seed"] = seed;
    report["transform"] = {{"scale", work.transform.scale}, {"shift", work.transform.shift}};
    report["copy_stats"] = stats_json(result.stats);
    report["deviations"] = {{"delta_prime_clamped", params.clamped},
                            {"B_defaulted", !args.B.has_value()},
                            {"mode", mode_name(mode)}};
    report["separation"] = separation_json(result.perturbed, params, parse_bands(args.bands), seed);
    if (check) {
        report["verification"] = {{"ok", check->ok},
                                  {"residual_max", check->residual_max},
                                  {"reconstruction_error", check->reconstruction_error},
                                  {"coordinates", "working"}};
    }
    json doc;
    doc["status"] = status;
    doc["n"] = file.matrix.size();
    doc["entries"] = result.database.entries.size();
    doc["eigenvalues"] = std::move(values);
    doc["eigenvectors"] = std::move(vectors);
    doc["report"] = std::move(report);
    emit(args.out, doc.dump(1) + "\n", out);

    std::ostream &log = (args.out.empty() || args.out == "-") ? err : out;
    log << "asd: " << status << ", " << result.database.entries.size() << "/" << file.matrix.size()
        << " eigenpairs from " << result.stats.copies << " copies (accept rate "
        << format_double(result.stats.accept_rate()) << ")";
    if (check) {
        log << ", residual_max " << format_double(check->residual_max) << ", reconstruction "
            << format_double(check->reconstruction_error);
    }
    log << ", " << static_cast<int64_t>(elapsed_ms(start)) << " ms\n";
    return result.complete && check->ok ? kExitOk : kExitIncomplete;
}

// ---- filter ----

struct FilterArgs {
    std::string input;
    uint64_t m = 0;
    double delta = 1e-4;
    std::optional<uint64_t> seed;
    std::string out;
};

int cmd_filter(const FilterArgs &args, std::ostream &out, std::ostream &err) {
    if (args.m < 1) {
        throw InputError("--m must be >= 1");
    }
    const MatrixFile file = read_matrix_file(args.input);
    const uint64_t seed = resolve_seed(args.seed);
    const FilterParams params = compute_filter_params(file.matrix.size(), args.m, args.delta);
    const FilterOutcome outcome = filter_run(file.matrix, args.m, args.delta, RngSeed{seed, 0});

    json doc;
    doc["m"] = args.m;
    doc["delta"] = args.delta;
    doc["p"] = params.p;
    doc["zeta"] = params.zeta;
    doc["seed"] = seed;
    doc["threshold"] = acceptance_threshold(params.n, args.delta);
    if (const auto *est = std::get_if<EigenEstimate>(&outcome)) {
        doc["accepted"] = true;
        doc["lambda_hat"] = est->lambda_hat;
        doc["residual"] = est->residual;
        doc["vector"] = vector_json(est->w.vector());
    } else {
        const auto &rej = std::get<Rejection>(outcome);
        doc["accepted"] = false;
        doc["reason"] = reason_name(rej.reason);
        doc["residual"] = rej.residual;
    }
    emit(args.out, doc.dump(1) + "\n", out);
    if (!accepted(outcome)) {
        err << "filter: rejected (" << reason_name(std::get<Rejection>(outcome).reason) << ")\n";
        return kExitIncomplete;
    }
    return kExitOk;
}

// ---- sweep-m ----

struct SweepArgs {
    std::string input;
    double delta = 1e-4;
    std::string m_values;
    std::string m_range;
    std::string m_powers;
    uint64_t trials = 20;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> copies;
    std::string csv;
    unsigned threads = 0;
    bool no_timing = false;
};

std::vector<uint64_t> sweep_values(const SweepArgs &args, size_t n) {
    const int given = !args.m_values.empty() + !args.m_range.empty() + !args.m_powers.empty();
    if (given != 1) {
        throw InputError("sweep-m needs exactly one of --m-values, --m-range, --m-powers");
    }
    std::vector<uint64_t> ms;
    if (!args.m_values.empty()) {
        ms = parse_uint_list(args.m_values, "--m-values");
    } else if (!args.m_powers.empty()) {
        for (uint64_t k : parse_uint_list(args.m_powers, "--m-powers")) {
            double v = std::pow(static_cast<double>(n), static_cast<double>(k));
            if (v > 1e15) {
                throw InputError("--m-powers: n^" + std::to_string(k) + " is too large");
            }
            ms.push_back(static_cast<uint64_t>(std::llround(v)));
        }
    } else {
        std::string range = args.m_range;
        std::replace(range.begin(), range.end(), ':', ',');
        std::vector<uint64_t> r = parse_uint_list(range, "--m-range");
        if (r.size() != 3 || r[0] < 1 || r[1] < r[0] || r[2] < 1) {
            throw InputError("--m-range must be LO:HI:COUNT with 1 <= LO <= HI and COUNT >= 1");
        }
        for (uint64_t i = 0; i < r[2]; ++i) {
            double t = r[2] == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(r[2] - 1);
            auto v = static_cast<uint64_t>(
                std::llround(std::exp((1.0 - t) * std::log(static_cast<double>(r[0])) +
                                      t * std::log(static_cast<double>(r[1])))));
            if (ms.empty() || ms.back() != v) {
                ms.push_back(v);
            }
        }
    }
    if (ms.empty()) {
        throw InputError("sweep-m: the list of M values is empty");
    }
    for (uint64_t m : ms) {
        if (m < 1) {
            throw InputError("sweep-m: every M must be >= 1");
        }
    }
    return ms;
}

int cmd_sweep(const SweepArgs &args, std::ostream &out, std::ostream &err) {
    if (args.trials < 1) {
        throw InputError("--trials must be >= 1");
    }
    const MatrixFile file = read_matrix_file(args.input);
    const size_t n = file.matrix.size();
    const std::vector<uint64_t> ms = sweep_values(args, n);
    const uint64_t seed = resolve_seed(args.seed);
    const RescaledMatrix work = rescale_to_range(file.matrix);
    AsdParams params = compute_asd_params(n, args.delta);
    AsdOptions options;
    options.threads = args.threads;
    options.copies = args.copies.value_or(default_sweep_copies(n));

    std::ostringstream csv;
    csv << "M,n,trials,collection_probability,accept_rate,wall_time_ms\n";
    for (size_t row = 0; row < ms.size(); ++row) {
        const auto start = Clock::now();
        params.M = ms[row];
        double collected = 0.0;
        double accept = 0.0;
        for (uint64_t t = 0; t < args.trials; ++t) {
            const AsdResult r = asd_run(work.matrix, substream(RngSeed{seed, row}, t), params, options);
            collected += collection_fraction(r.perturbed, r.accepted, args.delta);
            accept += r.stats.accept_rate();
        }
        const double trials = static_cast<double>(args.trials);
        const int64_t wall = args.no_timing ? 0 : static_cast<int64_t>(elapsed_ms(start));
        csv << ms[row] << ',' << n << ',' << args.trials << ',' << format_double(collected / trials) << ','
            << format_double(accept / trials) << ',' << wall << '\n';
        err << "sweep-m: M=" << ms[row] << " done\n";
    }
    emit(args.csv, csv.str(), out);
    return kExitOk;
}

// ---- discrepancy ----

struct DiscrepancyArgs {
    std::string seed_values;
    std::string matrix;
    double sigma = 0.0;
    std::optional<uint64_t> seed;
    uint64_t M = 0;
    std::string dims;
    std::optional<uint32_t> k;
    std::string out;
};

int cmd_discrepancy(const DiscrepancyArgs &args, std::ostream &out, std::ostream &) {
    if (args.seed_values.empty() == args.matrix.empty()) {
        throw InputError("discrepancy needs exactly one of --seed-values, --matrix");
    }
    if (args.M < 1) {
        throw InputError("--M must be >= 1");
    }
    if (args.k && *args.k == 0) {
        throw InputError("--k must be >= 1");
    }
    std::vector<double> seeds;
    json source;
    if (!args.matrix.empty()) {
        HermitianMatrix a = read_matrix_file(args.matrix).matrix;
        if (args.sigma > 0.0) {
            a = perturb(a, args.sigma, RngSeed{resolve_seed(args.seed), 0});
        }
        seeds = jacobi_eigh(a).values;
        source = {{"matrix", args.matrix}, {"sigma", args.sigma}};
    } else {
        seeds = parse_double_list(args.seed_values, "--seed-values");
        source = {{"seed_values", seeds}};
    }

    std::vector<size_t> coords;
    if (args.dims.empty()) {
        coords.resize(seeds.size());
        std::iota(coords.begin(), coords.end(), size_t{0});
    } else {
        for (uint64_t d : parse_uint_list(args.dims, "--dims")) {
            if (d < 1 || d > seeds.size()) {
                throw InputError("--dims: coordinate " + std::to_string(d) + " outside 1.." +
                                 std::to_string(seeds.size()));
            }
            coords.push_back(static_cast<size_t>(d - 1));
        }
    }
    if (coords.size() > 2) {
        throw InputError("discrepancy supports one or two coordinates; select them with --dims");
    }
    const ResidualSequence seq = residual_sequence(seeds, args.M).select(coords);

    DiscrepancyReport rep;
    const char *method = nullptr;
    if (coords.size() == 1 && !args.k) {
        rep = star_discrepancy_1d(seq);
        method = "exact_star";
    } else {
        try {
            rep = box_discrepancy(seq, args.k.value_or(kDefaultGridResolution));
        } catch (const std::invalid_argument &e) {
            throw InputError(e.what());
        }
        method = "grid_box";
    }
    json dims = json::array();
    for (size_t c : coords) {
        dims.push_back(c + 1);
    }
    json doc = {{"method", method},     {"estimate", rep.estimate},   {"upper_error", rep.upper_error},
                {"resolution", rep.resolution}, {"dimension", rep.dimension}, {"length", rep.length},
                {"dims", dims},         {"source", source}};
    emit(args.out, doc.dump(1) + "\n", out);
    return kExitOk;
}

// ---- gen ----

struct GenArgs {
    size_t n = 0;
    std::string kind = "gue";
    std::optional<uint64_t> seed;
    std::string out;
};

int cmd_gen(const GenArgs &args, std::ostream &out, std::ostream &) {
    if (args.n < 1) {
        throw InputError("--n must be >= 1");
    }
    const uint64_t seed = resolve_seed(args.seed);
    const auto n = static_cast<Eigen::Index>(args.n);
    std::vector<double> spread(args.n);
    for (size_t i = 0; i < args.n; ++i) {
        spread[i] = 0.05 + 0.8 * (static_cast<double>(i) + 0.5) / static_cast<double>(args.n);
    }
    MatrixFile file;
    file.seed = seed;
    if (args.kind == "gue") {
        file.matrix = gue_sample(args.n, RngSeed{seed, 0});
        file.description = "GUE sample";
    } else if (args.kind == "diagonal") {
        file.matrix = HermitianMatrix::diagonal(spread);
        file.description = "evenly spaced diagonal in [0.05, 0.85]";
    } else if (args.kind == "separated") {
        const Matrix v = haar_unitary(args.n, RngSeed{seed, 0}).matrix();
        const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(spread.data(), n);
        Matrix a = v * lam.cast<Complex>().asDiagonal() * v.adjoint();
        a = (0.5 * (a + a.adjoint())).eval();
        for (Eigen::Index i = 0; i < n; ++i) {
            a(i, i) = Complex(a(i, i).real(), 0.0);
        }
        file.matrix = HermitianMatrix::from_matrix(a);
        file.description = "Haar rotation of an evenly spaced spectrum in [0.05, 0.85]";
    } else {
        throw InputError("--kind must be one of gue, diagonal, separated");
    }
    emit(args.out, format_matrix(file), out);
    return kExitOk;
}

// ---- calibrate-gap ----

struct CalibrateArgs {
    std::string input;
    double delta = 1e-3;
    uint64_t samples = 100;
    std::optional<uint64_t> seed;
    std::string out;
};

int cmd_calibrate(const CalibrateArgs &args, std::ostream &out, std::ostream &) {
    if (args.samples < 1) {
        throw InputError("--samples must be >= 1");
    }
    const MatrixFile file = read_matrix_file(args.input);
    const uint64_t seed = resolve_seed(args.seed);
    const RescaledMatrix work = rescale_to_range(file.matrix);
    const AsdParams params = compute_asd_params(file.matrix.size(), args.delta);
    std::vector<double> gaps;
    gaps.reserve(args.samples);
    for (uint64_t s = 0; s < args.samples; ++s) {
        gaps.push_back(min_gap(perturb(work.matrix, params.sigma, substream(RngSeed{seed, 0}, s))));
    }
    std::sort(gaps.begin(), gaps.end());
    auto quantile = [&](double q) {
        return gaps[static_cast<size_t>(std::floor(q * static_cast<double>(gaps.size() - 1)))];
    };
    const double unperturbed = min_gap(work.matrix);
    json doc = {{"samples", args.samples},
                {"sigma", params.sigma},
                {"seed", seed},
                {"min_gap_unperturbed", std::isfinite(unperturbed) ? json(unperturbed) : json(nullptr)},
                {"min_gap_min", std::isfinite(gaps.front()) ? json(gaps.front()) : json(nullptr)},
                {"min_gap_q05", std::isfinite(quantile(0.05)) ? json(quantile(0.05)) : json(nullptr)},
                {"min_gap_median", std::isfinite(quantile(0.5)) ? json(quantile(0.5)) : json(nullptr)},
                {"suggested_B", std::isfinite(quantile(0.05)) ? json(std::min(args.delta, quantile(0.05)))
                                                              : json(args.delta)},
                {"coordinates", "working"}};
    emit(args.out, doc.dump(1) + "\n", out);
    return kExitOk;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

uint64_t default_sweep_copies(size_t n) {
    const double nn = static_cast<double>(n);
    return std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(50.0 * nn * std::log(nn))));
}

double collection_fraction(const HermitianMatrix &perturbed, const std::vector<EigenEstimate> &accepted,
                           double tolerance) {
    std::vector<double> lams;
    lams.reserve(accepted.size());
    for (const EigenEstimate &e : accepted) {
        lams.push_back(e.lambda_hat);
    }
    std::sort(lams.begin(), lams.end());
    const std::vector<double> truth = jacobi_eigh(perturbed).values;
    size_t hit = 0;
    for (double l : truth) {
        auto it = std::lower_bound(lams.begin(), lams.end(), l - tolerance);
        hit += (it != lams.end() && *it <= l + tolerance) ? 1 : 0;
    }
    return static_cast<double>(hit) / static_cast<double>(truth.size());
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"quasispec: spectral decomposition by quasi-random eigenvalue filtering"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    AsdArgs asd;
    auto *asd_cmd = app.add_subcommand("asd", "Approximate spectral decomposition of a Hermitian matrix file");
    asd_cmd->add_option("input", asd.input, "Matrix file (JSON or plain text)")->required();
    asd_cmd->add_option("--delta", asd.delta, "Target accuracy, 0 < delta <= 1/n")->required();
    asd_cmd->add_option("--seed", asd.seed, "Master seed (default: $QUASISPEC_SEED, else 0)");
    asd_cmd->add_option("--mode", asd.mode, "M schedule")->check(CLI::IsMember({"empirical", "theoretical"}));
    asd_cmd->add_option("--bands", asd.bands, "Band widths for the separation diagnostic in the report")->check(CLI::IsMember({"proof", "nominal"}));
    asd_cmd->add_option("--B", asd.B, "Separation parameter; B = min(delta, B)");
    asd_cmd->add_option("--copies", asd.copies, "Override the copy count T")->check(CLI::PositiveNumber);
    asd_cmd->add_option("--out", asd.out, "Output file (default stdout)");
    asd_cmd->add_option("--threads", asd.threads, "Worker threads (0 = all cores)");

    FilterArgs filt;
    auto *filter_cmd = app.add_subcommand("filter", "Run one eigenvector filter");
    filter_cmd->add_option("input", filt.input, "Matrix file")->required();
    filter_cmd->add_option("--m", filt.m, "Multiplier m >= 1")->required();
    filter_cmd->add_option("--delta", filt.delta, "Accuracy, 0 < delta < 1/e (default 1e-4)");
    filter_cmd->add_option("--seed", filt.seed, "Seed for the start vector");
    filter_cmd->add_option("--out", filt.out, "Output file (default stdout)");

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand(
        "sweep-m",
        "Collection probability against M. CSV columns: M,n,trials,collection_probability,accept_rate,wall_time_ms");
    sweep_cmd->add_option("input", sweep.input, "Matrix file")->required();
    sweep_cmd->add_option("--delta", sweep.delta, "Target accuracy (default 1e-4)");
    sweep_cmd->add_option("--m-values", sweep.m_values, "Comma-separated M values");
    sweep_cmd->add_option("--m-range", sweep.m_range, "Geometric range LO:HI:COUNT");
    sweep_cmd->add_option("--m-powers", sweep.m_powers, "Comma-separated k, M = n^k");
    sweep_cmd->add_option("--trials", sweep.trials, "Runs per M (default 20)");
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
    sweep_cmd->add_option("--copies", sweep.copies, "Copies per run (default ceil(50 n ln n))")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--csv", sweep.csv, "CSV output file (default stdout)");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");
    sweep_cmd->add_flag("--no-timing", sweep.no_timing, "Write 0 in wall_time_ms");

    DiscrepancyArgs disc;
    auto *disc_cmd = app.add_subcommand("discrepancy", "Discrepancy of the residual sequence {m lambda}");
    disc_cmd->add_option("--seed-values", disc.seed_values, "Comma-separated lambda values");
    disc_cmd->add_option("--matrix", disc.matrix, "Use the eigenvalues of this matrix file");
    disc_cmd->add_option("--sigma", disc.sigma, "GUE perturbation applied to --matrix first");
    disc_cmd->add_option("--seed", disc.seed, "Seed for --sigma");
    disc_cmd->add_option("--M", disc.M, "Sequence length")->required();
    disc_cmd->add_option("--dims", disc.dims, "1-based coordinates, e.g. \"1,2\"");
    disc_cmd->add_option("--k", disc.k, "Grid resolution; without it a single coordinate is computed exactly");
    disc_cmd->add_option("--out", disc.out, "Output file (default stdout)");

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "Write a test matrix");
    gen_cmd->add_option("--n", gen.n, "Dimension")->required();
    gen_cmd->add_option("--kind", gen.kind, "gue, diagonal or separated");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

    CalibrateArgs cal;
    auto *cal_cmd = app.add_subcommand("calibrate-gap", "Minimum eigenvalue gap statistics after perturbation");
    cal_cmd->add_option("input", cal.input, "Matrix file")->required();
    cal_cmd->add_option("--delta", cal.delta, "Accuracy that sets the perturbation scale (default 1e-3)");
    cal_cmd->add_option("--samples", cal.samples, "Perturbations to draw (default 100)");
    cal_cmd->add_option("--seed", cal.seed, "Seed");
    cal_cmd->add_option("--out", cal.out, "Output file (default stdout)");

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (asd_cmd->parsed()) {
            return cmd_asd(asd, out, err);
        }
        if (filter_cmd->parsed()) {
            return cmd_filter(filt, out, err);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep, out, err);
        }
        if (disc_cmd->parsed()) {
            return cmd_discrepancy(disc, out, err);
        }
        if (gen_cmd->parsed()) {
            return cmd_gen(gen, out, err);
        }
        if (cal_cmd->parsed()) {
            return cmd_calibrate(cal, out, err);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace quasispec::cli
