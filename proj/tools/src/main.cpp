#include "pf/error.hpp"
#include "pfcli/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Poincaré-inequality toolkit for differential forms"};
    std::string command, config_path, cover, form, domain, out, xi_grid;
    double p = 0, q = 0, tol = 0;
    int r = 0, n = 0, m = 0, quad_order = 0, grid_points = 0, count = 0;
    std::uint64_t seed = 0;
    std::vector<double> eps;

    std::string names;
    for (const auto& c : pfcli::commands())
        names += (names.empty() ? "" : ", ") + c;
    auto* o_command = app.add_option("command", command, "one of: " + names + " (or \"command\" in --config)");
    app.add_option("--config", config_path, "JSON config file (flags override its keys)");
    auto* o_cover = app.add_option("--cover", cover, "cover JSON file or inline object");
    auto* o_form = app.add_option("--form", form, "form JSON file or inline object");
    auto* o_domain = app.add_option("--domain", domain, "domain JSON file or inline object");
    auto* o_p = app.add_option("--p", p, "exponent p");
    auto* o_q = app.add_option("--q", q, "exponent q");
    auto* o_r = app.add_option("--r", r, "form degree");
    auto* o_n = app.add_option("--n", n, "dimension");
    auto* o_m = app.add_option("--m", m, "subdivision level (default: all)");
    auto* o_quad = app.add_option("--quad-order", quad_order, "Gauss order per axis");
    auto* o_tol = app.add_option("--tol", tol, "verification tolerance");
    auto* o_out = app.add_option("--out", out, "report path (default: stdout)");
    auto* o_seed = app.add_option("--seed", seed, "seed for randomized checks");
    auto* o_grid = app.add_option("--emit-xi-grid", xi_grid, "CSV path for ξ sampled on a grid");
    auto* o_gp = app.add_option("--grid-points", grid_points, "grid size for --emit-xi-grid");
    auto* o_count = app.add_option("--count", count, "number of random cases");
    auto* o_eps = app.add_option("--eps", eps, "inner radii for lp-scan (space or comma separated)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        pf::InvalidArgument err(e.what());
        std::cerr << pfcli::error_json(err) << "\n";
        return pfcli::kConfigError;
    }

    try {
        pfcli::RunConfig cfg;
        if (!config_path.empty()) {
            auto base = std::filesystem::path(config_path).parent_path().string();
            cfg = pfcli::config_from_json(pf::read_json_file(config_path), base);
        }
        if (*o_command)
            cfg.command = command;
        if (cfg.command.empty())
            throw pf::InvalidArgument("a command is required");
        if (*o_cover)
            cfg.cover = pfcli::load_json_arg(cover);
        if (*o_form)
            cfg.form = pfcli::load_json_arg(form);
        if (*o_domain)
            cfg.domain = pfcli::load_json_arg(domain);
        if (*o_p)
            cfg.p = p;
        if (*o_q)
            cfg.q = q;
        if (*o_r)
            cfg.r = r;
        if (*o_n)
            cfg.n = n;
        if (*o_m)
            cfg.m = m;
        if (*o_quad)
            cfg.quad.order = quad_order;
        if (*o_tol)
            cfg.tol = tol;
        if (*o_out)
            cfg.out = out;
        if (*o_seed)
            cfg.seed = seed;
        if (*o_grid)
            cfg.emit_xi_grid = xi_grid;
        if (*o_gp)
            cfg.grid_points = grid_points;
        if (*o_count)
            cfg.count = count;
        if (*o_eps)
            cfg.eps = eps;

        auto result = pfcli::execute(cfg);
        pfcli::emit_report(result, cfg.out);
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << pfcli::error_json(e) << "\n";
        return pfcli::exit_code_for(e);
    }
}
