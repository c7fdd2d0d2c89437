// siegel-norms: closed-form and Monte-Carlo evaluation of the kernel
// integral identities and projection-norm bounds on the Siegel upper
// half-space.  See README.md for the command overview.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "siegel/commands.hpp"
#include "siegel/version.hpp"

namespace {

bool parse_double_list(const std::string& text, std::vector<double>& out) {
    out.clear();
    std::string cur;
    auto flush = [&]() {
        if (cur.empty())
            return true;
        char* end = nullptr;
        double v = std::strtod(cur.c_str(), &end);
        if (end == cur.c_str() || *end != '\0')
            return false;
        out.push_back(v);
        cur.clear();
        return true;
    };
    for (char ch : text) {
        if (ch == ',') {
            if (!flush())
                return false;
        } else {
            cur += ch;
        }
    }
    return flush();
}

// "start:stop:points[:linear|log]" (log means log-spaced in 1/p) or a
// comma-separated list of values.
bool parse_p_grid(const std::string& text, std::vector<double>& out) {
    if (text.find(':') == std::string::npos)
        return parse_double_list(text, out);
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3 || parts.size() > 4)
        return false;
    double start = std::atof(parts[0].c_str());
    double stop = std::atof(parts[1].c_str());
    int points = std::atoi(parts[2].c_str());
    bool log_spacing = parts.size() == 4 ? parts[3] == "log" : false;
    if (parts.size() == 4 && parts[3] != "log" && parts[3] != "linear")
        return false;
    if (points < 1 || !(start > 1.0) || !(stop > start))
        return false;
    out.clear();
    if (points == 1) {
        out.push_back(start);
        return true;
    }
    for (int i = 0; i < points; ++i) {
        double f = static_cast<double>(i) / (points - 1);
        if (log_spacing) {
            double u = std::exp(std::log(1.0 / start) + f * (std::log(1.0 / stop) - std::log(1.0 / start)));
            out.push_back(1.0 / u);
        } else {
            out.push_back(start + f * (stop - start));
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"siegel-norms: kernel integral identities and projection norm "
                 "bounds on the Siegel upper half-space"};
    app.set_version_flag("--version", std::string("siegel-norms v") + siegel::kVersion);
    app.set_config("--config", "", "flat key=value config file; flags override file values");

    siegel::cli::RunConfig config;
    std::string p_grid_text, n_text, t_grid_text, eps_grid_text, columns_text;
    double alpha_value = 0.0;

    app.add_option("--command", config.command,
                   "one of: verify, norms, estimate, scan, plot")
        ->required();
    app.add_option("--n", n_text, "comma list of dimensions (default 0,1,2)");
    auto* alpha_opt = app.add_option("--alpha", alpha_value, "T_alpha weight exponent");
    app.add_option("--p", config.p, "exponent for the estimate command (default 2)");
    app.add_option("--p-grid", p_grid_text,
                   "start:stop:points[:linear|log] or comma list; log spaces 1/p");
    app.add_option("--samples", config.samples, "Monte-Carlo samples per estimate (>= 1000)");
    auto* seed_opt = app.add_option("--seed", config.seed, "RNG seed (default 0x5EED)");
    seed_opt->envname("SIEGEL_NORMS_SEED");
    app.add_option("--workers", config.workers,
                   "worker threads; never changes results, only wall time");
    app.add_option("--tolerance", config.tolerance, "verify: residual floor (default 1e-2)");
    app.add_option("--out", config.out_path, "output path (default: stdout)");
    app.add_option("--case", config.case_filter, "verify: restrict to one identity tag");
    app.add_option("--family", config.family, "estimate: talpha (default) or bergman");
    app.add_option("--t-grid", t_grid_text, "estimate: comma list of t values");
    app.add_option("--eps-grid", eps_grid_text, "estimate: comma list of epsilon values");
    app.add_option("--in", config.in_path, "plot: input CSV path");
    app.add_option("--x", config.x_column, "plot: abscissa column (default: first)");
    app.add_option("--columns", columns_text, "plot: comma list of series columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*alpha_opt)
        config.alpha = alpha_value;
    if (!n_text.empty()) {
        std::vector<double> vals;
        if (!parse_double_list(n_text, vals)) {
            std::fprintf(stderr, "invalid --n list: %s\n", n_text.c_str());
            return 2;
        }
        config.n_list.clear();
        for (double v : vals) {
            if (v < 0 || v != static_cast<int>(v)) {
                std::fprintf(stderr, "--n entries must be nonnegative integers\n");
                return 2;
            }
            config.n_list.push_back(static_cast<int>(v));
        }
    }
    if (!p_grid_text.empty() && !parse_p_grid(p_grid_text, config.p_grid)) {
        std::fprintf(stderr, "invalid --p-grid: %s\n", p_grid_text.c_str());
        return 2;
    }
    if (!t_grid_text.empty() && !parse_double_list(t_grid_text, config.t_grid)) {
        std::fprintf(stderr, "invalid --t-grid: %s\n", t_grid_text.c_str());
        return 2;
    }
    if (!eps_grid_text.empty() && !parse_double_list(eps_grid_text, config.eps_grid)) {
        std::fprintf(stderr, "invalid --eps-grid: %s\n", eps_grid_text.c_str());
        return 2;
    }
    if (!columns_text.empty()) {
        std::string cur;
        for (char ch : columns_text) {
            if (ch == ',') {
                config.columns.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        config.columns.push_back(cur);
    }
    if (config.workers < 1) {
        std::fprintf(stderr, "--workers must be positive\n");
        return 2;
    }
    if (config.command == "plot" && config.in_path.empty()) {
        std::fprintf(stderr, "plot requires --in <csv>\n");
        return 2;
    }

    siegel::cli::CommandResult result;
    try {
        result = siegel::cli::run(config);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    if (!result.message.empty())
        std::fprintf(stderr, "%s\n", result.message.c_str());
    if (result.exit_code == 2)
        return 2;

    if (config.out_path.empty()) {
        std::fputs(result.output.c_str(), stdout);
    } else {
        std::ofstream out(config.out_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "cannot open output path %s\n", config.out_path.c_str());
            return 2;
        }
        out << result.output;
    }
    return result.exit_code;
}
