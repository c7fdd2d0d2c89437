#include "siegel/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "siegel/csv.hpp"
#include "siegel/norms.hpp"
#include "siegel/svg.hpp"
#include "siegel/version.hpp"

namespace siegel::cli {

namespace {

using io::format_double;
using io::format_optional;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

std::string format_complex(std::complex<double> v) {
    if (std::abs(v.imag()) <= 1e-9 * std::max(1.0, std::abs(v.real())))
        return format_double(v.real());
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", v.real(), v.imag());
    return buf;
}

io::CsvTable make_table(const RunConfig& config, std::vector<std::string> header) {
    io::CsvTable t;
    t.metadata.push_back(std::string("siegel-norms v") + kVersion);
    char buf[160];
    std::snprintf(buf, sizeof buf, "seed=0x%llX samples=%zu",
                  static_cast<unsigned long long>(config.seed), config.samples);
    t.metadata.push_back(buf);
    t.metadata.push_back("args: " + canonical_args(config));
    t.header = std::move(header);
    return t;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += format_double(v[i]);
    }
    return s;
}

}  // namespace

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    const int points = 13;
    const double lo = std::log(1.0 / 8.0), hi = std::log(7.0 / 8.0);
    for (int i = 0; i < points; ++i) {
        double u = std::exp(lo + (hi - lo) * i / (points - 1));
        grid.push_back(1.0 / u);
    }
    return grid;
}

std::string canonical_args(const RunConfig& config) {
    std::string s = "--command " + config.command;
    if (config.command == "verify" || config.command == "norms" || config.command == "scan") {
        s += " --n ";
        for (std::size_t i = 0; i < config.n_list.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(config.n_list[i]);
        }
    }
    if (config.alpha)
        s += " --alpha " + format_double(*config.alpha);
    if (config.command == "estimate") {
        s += " --p " + format_double(config.p) + " --family " + config.family;
        if (!config.t_grid.empty())
            s += " --t-grid " + join_doubles(config.t_grid);
        if (!config.eps_grid.empty())
            s += " --eps-grid " + join_doubles(config.eps_grid);
    }
    if (config.command == "norms" || config.command == "scan")
        s += " --p-grid " + join_doubles(config.p_grid.empty() ? default_p_grid() : config.p_grid);
    if (config.command != "norms" && config.command != "plot") {
        char buf[96];
        std::snprintf(buf, sizeof buf, " --samples %zu --seed 0x%llX", config.samples,
                      static_cast<unsigned long long>(config.seed));
        s += buf;
    }
    if (!config.case_filter.empty())
        s += " --case " + config.case_filter;
    return s;
}

CommandResult run_verify(const RunConfig& config) {
    CommandResult result;
    if (config.samples < 1000) {
        result.exit_code = 2;
        result.message = "verify: --samples must be at least 1000";
        return result;
    }
    std::vector<norms::IdentityTag> tags;
    if (config.case_filter.empty()) {
        tags = norms::all_identity_tags();
    } else if (auto tag = norms::identity_tag_from(config.case_filter)) {
        tags.push_back(*tag);
    } else {
        result.exit_code = 2;
        result.message = "verify: unknown --case " + config.case_filter;
        return result;
    }

    io::CsvTable table = make_table(
        config, {"case", "n", "params", "closed", "mc_value", "mc_stderr", "residual", "pass"});
    bool all_pass = true;
    for (norms::IdentityTag tag : tags) {
        for (int n : config.n_list) {
            if (!norms::tag_supports_dimension(tag, n))
                continue;
            for (int draw = 0; draw < 3; ++draw) {
                auto c = norms::IdentityCase::random(tag, n, config.seed, draw);
                std::uint64_t run_seed =
                    mix_seed(config.seed, (static_cast<std::uint64_t>(tag) * 64 + n) * 16 + draw);
                auto rep = norms::verify_identity(c, config.samples, run_seed, config.workers);
                bool pass = rep.pass(config.tolerance);
                all_pass = all_pass && pass;
                table.rows.push_back({norms::to_string(tag), std::to_string(n), c.params_text(),
                                      format_complex(rep.closed),
                                      format_complex(rep.estimate.value),
                                      format_double(rep.combined_stderr),
                                      format_double(rep.residual), pass ? "1" : "0"});
            }
        }
    }
    result.output = table.to_string();
    result.exit_code = all_pass ? 0 : 1;
    if (!all_pass)
        result.message = "verify: at least one residual exceeded its tolerance";
    return result;
}

CommandResult run_norms(const RunConfig& config) {
    CommandResult result;
    std::vector<double> grid = config.p_grid.empty() ? default_p_grid() : config.p_grid;
    for (double p : grid) {
        if (!(p > 1.0) || !std::isfinite(p)) {
            result.exit_code = 2;
            result.message = "norms: p grid must lie strictly inside (1, infinity)";
            return result;
        }
    }
    io::CsvTable table = make_table(
        config, {"n", "p", "alpha", "lower", "upper", "exact", "conjectured", "source"});
    for (const auto& row : norms::norm_table(config.n_list, config.alpha, grid)) {
        table.rows.push_back({std::to_string(row.n), format_double(row.p),
                              format_optional(row.alpha), format_optional(row.lower),
                              format_optional(row.upper), format_optional(row.exact),
                              format_optional(row.conjectured), norms::to_string(row.source)});
    }
    result.output = table.to_string();
    return result;
}

CommandResult run_estimate(const RunConfig& config) {
    CommandResult result;
    if (config.samples < 1000) {
        result.exit_code = 2;
        result.message = "estimate: --samples must be at least 1000";
        return result;
    }
    const int n = config.n_list.empty() ? 0 : config.n_list.front();
    const double p = config.p;
    io::CsvTable table = make_table(
        config, {"t_or_eps", "estimate", "stderr", "exact_or_target", "gap"});
    bool ok = true;

    if (config.family == "talpha") {
        const double alpha = config.alpha.value_or(0.0);
        if (!(p > 1.0) || !(p * (1.0 + alpha) > 1.0)) {
            result.exit_code = 2;
            result.message =
                "estimate: the exact norm requires 1 < p and p(1+alpha) > 1; got p=" +
                format_double(p) + " alpha=" + format_double(alpha);
            return result;
        }
        kernels::TAlphaParams params(n, alpha, p);
        const double exact = norms::t_alpha_norm_exact(n, alpha, p);
        const auto which = kernels::dispatch_case(params);
        const double e = which == kernels::TestCase::CaseI ? p : params.q;
        const double t_lo =
            which == kernels::TestCase::CaseI ? 0.0 : std::max(0.0, -alpha);
        std::vector<double> grid = config.t_grid;
        if (grid.empty())
            for (double f : {0.5, 0.25, 0.1, 0.02})
                grid.push_back(t_lo + (1.0 / e - t_lo) * (1.0 - f));
        for (double t : grid) {
            auto est = norms::rayleigh_lower_T(params, t, config.samples,
                                               mix_seed(config.seed, std::llround(t * 1e9)),
                                               config.workers);
            double gap = exact - est.value.real();
            if (est.value.real() > exact + 3.0 * est.std_error)
                ok = false;
            table.rows.push_back({format_double(t), format_double(est.value.real()),
                                  format_double(est.std_error), format_double(exact),
                                  format_double(gap)});
        }
    } else if (config.family == "bergman") {
        if (!(p > 2.0)) {
            result.exit_code = 2;
            result.message = "estimate: the bergman family requires p > 2 (kappa > 0); "
                             "for 1 < p < 2 run the dual exponent q = p/(p-1)";
            return result;
        }
        const double kappa = (n + 2.0) * (0.5 - 1.0 / p);
        const double target = norms::bergman_bounds(n, p).lower;
        std::vector<double> grid = config.eps_grid;
        if (grid.empty())
            for (double f : {0.5, 0.25, 0.1, 0.02})
                grid.push_back(f * kappa);
        for (double eps : grid) {
            kernels::BergmanTestParams params(n, p, eps);
            auto rep = norms::rayleigh_lower_bergman(
                params, config.samples, mix_seed(config.seed, std::llround(eps * 1e9)),
                config.workers);
            double gap = target - rep.net_lower;
            if (rep.net_lower > target + 3.0 * rep.ratio_h.std_error)
                ok = false;
            table.rows.push_back({format_double(eps), format_double(rep.net_lower),
                                  format_double(rep.ratio_h.std_error), format_double(target),
                                  format_double(gap)});
        }
    } else {
        result.exit_code = 2;
        result.message = "estimate: unknown --family " + config.family;
        return result;
    }

    result.output = table.to_string();
    result.exit_code = ok ? 0 : 1;
    if (!ok)
        result.message = "estimate: an estimate exceeded its target by more than 3 stderr";
    return result;
}

CommandResult run_scan(const RunConfig& config) {
    CommandResult result;
    std::vector<double> grid = config.p_grid.empty() ? default_p_grid() : config.p_grid;
    io::CsvTable table = make_table(
        config, {"n", "p", "szego_conjectured", "bergman_conjectured", "bergman_upper",
                 "rayleigh_lower", "rayleigh_stderr", "sandwich_ok"});
    bool ok = true;
    for (int n : config.n_list) {
        for (double p : grid) {
            if (!(p > 1.0) || !std::isfinite(p)) {
                result.exit_code = 2;
                result.message = "scan: p grid must lie strictly inside (1, infinity)";
                return result;
            }
            auto bb = norms::bergman_bounds(n, p);
            // The section-5 family needs p > 2; otherwise scan the dual
            // exponent, whose bounds coincide.
            double p_eff = p >= 2.0 ? p : p / (p - 1.0);
            double ray = 0.0, ray_se = 0.0;
            if (p_eff > 2.0) {
                double kappa = (n + 2.0) * (0.5 - 1.0 / p_eff);
                kernels::BergmanTestParams params(n, p_eff, 0.02 * kappa);
                auto rep = norms::rayleigh_lower_bergman(
                    params, config.samples, mix_seed(config.seed, n * 1024 + std::llround(p * 64)),
                    config.workers);
                ray = rep.net_lower;
                ray_se = rep.ratio_h.std_error;
            } else {
                ray = bb.lower;  // p = 2 exactly: projection, norm 1
            }
            bool sandwich = bb.lower <= bb.upper + 1e-12 && ray <= bb.upper + 3.0 * ray_se;
            ok = ok && sandwich;
            table.rows.push_back({std::to_string(n), format_double(p),
                                  format_double(norms::szego_conjectured(n, p)),
                                  format_double(bb.lower), format_double(bb.upper),
                                  format_double(ray), format_double(ray_se),
                                  sandwich ? "1" : "0"});
        }
    }
    result.output = table.to_string();
    result.exit_code = ok ? 0 : 1;
    return result;
}

CommandResult run_plot(const RunConfig& config) {
    CommandResult result;
    std::ifstream in(config.in_path);
    if (!in) {
        result.exit_code = 2;
        result.message = "plot: cannot open input CSV " + config.in_path;
        return result;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    io::NumericCsv csv;
    try {
        csv = io::parse_numeric_csv(buffer.str());
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.message = std::string("plot: ") + e.what();
        return result;
    }
    if (csv.rows.empty()) {
        result.exit_code = 2;
        result.message = "plot: no data rows";
        return result;
    }

    auto column_index = [&csv](const std::string& name) -> int {
        for (std::size_t i = 0; i < csv.header.size(); ++i)
            if (csv.header[i] == name)
                return static_cast<int>(i);
        return -1;
    };
    int xcol = 0;
    if (!config.x_column.empty()) {
        xcol = column_index(config.x_column);
        if (xcol < 0) {
            result.exit_code = 2;
            result.message = "plot: no column named " + config.x_column;
            return result;
        }
    }

    std::vector<int> ycols;
    if (!config.columns.empty()) {
        for (const auto& name : config.columns) {
            int idx = column_index(name);
            if (idx < 0) {
                result.exit_code = 2;
                result.message = "plot: no column named " + name;
                return result;
            }
            ycols.push_back(idx);
        }
    } else {
        for (std::size_t i = 0; i < csv.header.size(); ++i) {
            if (static_cast<int>(i) == xcol)
                continue;
            bool numeric = false;
            for (const auto& row : csv.rows)
                if (std::isfinite(row[i]))
                    numeric = true;
            if (numeric)
                ycols.push_back(static_cast<int>(i));
        }
    }
    if (ycols.empty()) {
        result.exit_code = 2;
        result.message = "plot: no numeric columns to plot";
        return result;
    }

    std::vector<double> x;
    for (const auto& row : csv.rows)
        x.push_back(row[xcol]);
    std::vector<io::Series> series;
    for (int idx : ycols) {
        io::Series s;
        s.name = csv.header[idx];
        for (const auto& row : csv.rows)
            s.values.push_back(row[idx]);
        series.push_back(std::move(s));
    }
    try {
        result.output = io::line_plot(x, series, csv.header[xcol]);
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.message = std::string("plot: ") + e.what();
    }
    return result;
}

CommandResult run(const RunConfig& config) {
    if (config.command == "verify")
        return run_verify(config);
    if (config.command == "norms")
        return run_norms(config);
    if (config.command == "estimate")
        return run_estimate(config);
    if (config.command == "scan")
        return run_scan(config);
    if (config.command == "plot")
        return run_plot(config);
    CommandResult result;
    result.exit_code = 2;
    result.message = "unknown command: " + config.command +
                     " (expected verify, norms, estimate, scan or plot)";
    return result;
}

}  // namespace siegel::cli
