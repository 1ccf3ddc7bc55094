#include "cyclic/analytic.hpp"
#include "cyclic/claims.hpp"
#include "cyclic/polygon.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Writes to the --out path when given, else to stdout.
int with_output(const std::optional<std::string>& path,
                const std::function<int(std::ostream&)>& body) {
    if (!path)
        return body(std::cout);
    std::ofstream out(*path);
    if (!out) {
        std::cerr << "error: cannot open '" << *path << "' for writing\n";
        return 2;
    }
    return body(out);
}

int cmd_sample(int ngon, std::uint64_t n, std::uint64_t seed,
               const std::optional<std::string>& out_path) {
    return with_output(out_path, [&](std::ostream& out) {
        std::ostringstream header;
        for (int k = 1; k <= ngon; ++k)
            header << (k == 1 ? "" : ",") << "theta_" << k;
        for (int k = 1; k <= ngon; ++k)
            header << ",s_" << k;
        for (int k = 1; k <= ngon; ++k)
            header << ",alpha_" << k;
        if (ngon == 4)
            header << ",d_1,d_2,omega";
        header << ",perimeter,area";
        out << header.str() << "\n";

        cyclic::core::RngStream rng(seed, 0);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto ca = cyclic::core::sample_central_angles(ngon, rng);
            const auto m = cyclic::core::measure(ca);
            std::ostringstream row;
            for (int k = 0; k < ngon; ++k)
                row << (k == 0 ? "" : ",") << fmt(ca.theta[k]);
            for (int k = 0; k < ngon; ++k)
                row << "," << fmt(m.sides[k]);
            for (int k = 0; k < ngon; ++k)
                row << "," << fmt(m.angles[k]);
            if (ngon == 4)
                row << "," << fmt(m.d1) << "," << fmt(m.d2) << "," << fmt(m.omega);
            row << "," << fmt(m.perimeter) << "," << fmt(m.area);
            out << row.str() << "\n";
        }
        return 0;
    });
}

int cmd_density(const std::string& name, int grid,
                const std::optional<std::string>& out_path) {
    const cyclic::analytic::AnalyticDensity* d = cyclic::analytic::find_density(name);
    if (!d) {
        std::cerr << "error: unknown density '" << name << "'\n";
        return 2;
    }
    if (grid < 2) {
        std::cerr << "error: --grid must be at least 2\n";
        return 2;
    }
    return with_output(out_path, [&](std::ostream& out) {
        const int dim = d->dim;
        static const char* axis_names[3] = {"x", "y", "z"};
        for (int a = 0; a < dim; ++a)
            out << (a == 0 ? "" : ",") << axis_names[a];
        out << ",pdf";
        if (dim == 1 && d->cdf)
            out << ",cdf";
        out << "\n";

        std::vector<int> idx(dim, 0);
        std::vector<double> pt(dim);
        const auto total = static_cast<long long>(std::pow(grid, dim));
        for (long long flat = 0; flat < total; ++flat) {
            long long rem = flat;
            for (int a = dim - 1; a >= 0; --a) {
                idx[a] = static_cast<int>(rem % grid);
                rem /= grid;
            }
            for (int a = 0; a < dim; ++a) {
                const double lo = d->domain[a].first;
                pt[a] = lo + (d->grid_hi[a] - lo) * idx[a] / (grid - 1);
            }
            for (int a = 0; a < dim; ++a)
                out << (a == 0 ? "" : ",") << fmt(pt[a]);
            out << "," << fmt(d->pdf(pt));
            if (dim == 1 && d->cdf)
                out << "," << fmt(d->cdf(pt[0]));
            out << "\n";
        }
        return 0;
    });
}

int cmd_moments(const std::string& format, const std::optional<std::string>& out_path) {
    return with_output(out_path, [&](std::ostream& out) {
        const auto& reg = cyclic::analytic::moment_registry();
        if (format == "csv") {
            out << "id,expression,value,paper_location,conjecture\n";
            for (const auto& m : reg)
                out << m.id << ",\"" << m.expression << "\"," << fmt(m.value) << ",\""
                    << m.location << "\"," << (m.conjecture ? "true" : "false") << "\n";
        } else {
            out << "[\n";
            for (std::size_t i = 0; i < reg.size(); ++i) {
                const auto& m = reg[i];
                out << "  {\"id\": \"" << m.id << "\", \"expression\": \"" << m.expression
                    << "\", \"value\": " << fmt(m.value) << ", \"paper_location\": \""
                    << m.location << "\", \"conjecture\": "
                    << (m.conjecture ? "true" : "false") << "}"
                    << (i + 1 < reg.size() ? "," : "") << "\n";
            }
            out << "]\n";
        }
        return 0;
    });
}

std::vector<cyclic::claims::ClaimResult>
run_selected(const std::vector<std::string>& ids,
             std::optional<std::uint64_t> n_override, std::uint64_t seed,
             int workers, bool timings) {
    namespace cl = cyclic::claims;
    if (ids.empty())
        return cl::run_all(n_override, seed, workers, timings);
    std::vector<cl::ClaimResult> out;
    for (const auto& id : ids) {
        const cl::Claim& info = cl::claim_info(id); // throws on unknown id
        const std::uint64_t n = n_override.value_or(info.default_samples);
        try {
            out.push_back(cl::run_claim(id, n, seed, workers, timings));
        } catch (const cl::InsufficientSamplesError& e) {
            // mirror run_all: record the failure instead of aborting the report
            cl::ClaimResult r;
            r.claim_id = info.id;
            r.description = info.description;
            r.paper_location = info.paper_location;
            r.kind = info.kind;
            r.conjecture = info.conjecture;
            r.n_samples = n;
            r.seed = seed;
            r.workers = workers;
            r.pass = false;
            r.error = e.what();
            out.push_back(std::move(r));
        }
    }
    return out;
}

int cmd_verify(const std::vector<std::string>& ids,
               std::optional<std::uint64_t> n_override, std::uint64_t seed,
               int workers, bool timings,
               const std::optional<std::string>& out_path) {
    namespace cl = cyclic::claims;
    std::vector<cl::ClaimResult> results;
    try {
        results = run_selected(ids, n_override, seed, workers, timings);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const int write_rc = with_output(out_path, [&](std::ostream& out) {
        out << cl::report_json(results) << "\n";
        return 0;
    });
    if (write_rc != 0)
        return write_rc;
    return cl::all_required_pass(results) ? 0 : 1;
}

int cmd_report(const std::vector<std::string>& ids,
               std::optional<std::uint64_t> n_override, std::uint64_t seed,
               int workers, bool timings,
               const std::optional<std::string>& out_path) {
    namespace cl = cyclic::claims;
    std::vector<cl::ClaimResult> results;
    try {
        results = run_selected(ids, n_override, seed, workers, timings);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const int write_rc = with_output(out_path, [&](std::ostream& out) {
        for (const auto& r : results) {
            out << (r.pass ? "[PASS] " : "[FAIL] ") << r.claim_id << " ("
                << cl::kind_name(r.kind) << (r.conjecture ? ", conjecture" : "")
                << ")";
            if (!r.error.empty()) {
                out << " error: " << r.error << "\n";
                continue;
            }
            out << " analytic=" << fmt(r.analytic);
            if (std::isfinite(r.estimate))
                out << " estimate=" << fmt(r.estimate);
            if (std::isfinite(r.stderr_value))
                out << " stderr=" << fmt(r.stderr_value);
            out << " statistic=" << fmt(r.statistic) << " n=" << r.n_samples << "\n";
        }
        return 0;
    });
    if (write_rc != 0)
        return write_rc;
    return cl::all_required_pass(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling, densities, moments and claim verification for uniform "
                 "random cyclic polygons on the unit circle"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "Emit sampled polygons as CSV");
    int ngon = 4;
    std::uint64_t sample_n = 1;
    std::uint64_t sample_seed = 0;
    std::optional<std::string> sample_out;
    sample->add_option("--ngon", ngon, "Polygon order (3..6)")->check(CLI::Range(3, 6));
    sample->add_option("--n", sample_n, "Number of rows")->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_seed, "Master RNG seed");
    sample->add_option("--out", sample_out, "Output path (default stdout)");

    // density
    auto* density = app.add_subcommand("density", "Tabulate an analytic density");
    std::string density_name;
    int grid = 512;
    std::optional<std::string> density_out;
    density->add_option("--density", density_name, "Density name")->required();
    density->add_option("--grid", grid, "Grid points per axis");
    density->add_option("--out", density_out, "Output path (default stdout)");

    // moments
    auto* moments = app.add_subcommand("moments", "List the closed-form moment registry");
    std::string moments_format = "json";
    std::optional<std::string> moments_out;
    moments->add_option("--format", moments_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    moments->add_option("--out", moments_out, "Output path (default stdout)");

    // verify / report share options
    std::vector<std::string> claim_ids;
    std::optional<std::uint64_t> verify_n;
    std::uint64_t verify_seed = 0;
    int workers = 1;
    bool timings = false;
    std::optional<std::string> verify_out;
    auto add_verify_opts = [&](CLI::App* cmd) {
        cmd->add_option("--claims", claim_ids,
                        "Claim ids to run (default: all)")
            ->delimiter(',');
        cmd->add_option("--n", verify_n, "Sample-count override (default: per claim)");
        cmd->add_option("--seed", verify_seed, "Master RNG seed");
        cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
        cmd->add_flag("--timings", timings,
                      "Record wall-clock times (breaks byte-reproducibility)");
        cmd->add_option("--out", verify_out, "Output path (default stdout)");
    };
    auto* verify = app.add_subcommand("verify", "Run claims and emit a JSON report");
    add_verify_opts(verify);
    auto* report = app.add_subcommand("report", "Run claims and print a summary");
    add_verify_opts(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (sample->parsed())
        return cmd_sample(ngon, sample_n, sample_seed, sample_out);
    if (density->parsed())
        return cmd_density(density_name, grid, density_out);
    if (moments->parsed())
        return cmd_moments(moments_format, moments_out);
    if (verify->parsed())
        return cmd_verify(claim_ids, verify_n, verify_seed, workers, timings, verify_out);
    if (report->parsed())
        return cmd_report(claim_ids, verify_n, verify_seed, workers, timings, verify_out);
    return 2;
}
