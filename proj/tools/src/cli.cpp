#include "pfcli/cli.hpp"

#include "pf/constants.hpp"
#include "pf/error.hpp"
#include "pf/random_forms.hpp"
#include "pfcli/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>

namespace pfcli {

namespace {

constexpr const char* kSchema = "pf.report/v1";

std::string resolve(const std::string& path, const std::string& base_dir)
{
    if (base_dir.empty() || std::filesystem::path(path).is_absolute())
        return path;
    return (std::filesystem::path(base_dir) / path).string();
}

Json arg_or_object(const Json& v, const std::string& base_dir)
{
    if (v.is_string())
        return load_json_arg(v.get<std::string>(), base_dir);
    if (!v.is_object())
        throw pf::InvalidArgument("expected a path or a JSON object");
    return v;
}

pf::ConvexDomain domain_from_json(const Json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "box")
        return pf::ConvexDomain::box(j.at("lo").get<std::vector<double>>(), j.at("hi").get<std::vector<double>>());
    if (kind == "unit-box")
        return pf::ConvexDomain::unit_box(j.at("dim").get<int>());
    if (kind == "simplex")
        return pf::ConvexDomain::simplex(j.at("vertices").get<std::vector<std::vector<double>>>());
    throw pf::InvalidArgument("unknown domain kind '" + kind + "'");
}

Json domain_to_json(const pf::ConvexDomain& d)
{
    Json j = {{"kind", d.describe()}, {"volume", d.volume()}, {"diameter", d.diameter()}};
    return j;
}

pf::ConvexDomain config_domain(const RunConfig& c, int dim)
{
    if (c.domain)
        return domain_from_json(*c.domain);
    return pf::ConvexDomain::unit_box(dim);
}

pf::Form require_form(const RunConfig& c)
{
    if (!c.form)
        throw pf::InvalidArgument("command '" + c.command + "' needs --form");
    return pf::form_from_json(*c.form);
}

std::shared_ptr<const pf::CoverContext> require_cover(const RunConfig& c)
{
    if (!c.cover)
        throw pf::InvalidArgument("command '" + c.command + "' needs --cover");
    return pf::make_context(pf::cover_from_json(*c.cover));
}

pf::GlobalizeOptions globalize_options(const RunConfig& c)
{
    pf::GlobalizeOptions o;
    o.p = c.p;
    o.q = c.q;
    o.quad = c.quad;
    if (c.tol)
        o.residual_tol = *c.tol;
    return o;
}

std::string sibling(const std::string& out, const std::string& suffix)
{
    if (out.empty())
        return "";
    std::filesystem::path p(out);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

Json base_report(const RunConfig& c)
{
    return {{"schema", kSchema}, {"command", c.command}};
}

// ---------------------------------------------------------------------------

RunResult run_constant(const RunConfig& c)
{
    auto pair = pf::admissible_exponents(c.p, c.q, c.n);
    if (pair.kind == pf::ExponentCase::Inadmissible)
        throw pf::InvalidArgument("inadmissible exponents: " + pair.violated);
    RunResult res;
    Json j = base_report(c);
    double C = pf::poincare_constant_C(c.p, c.q, c.r, c.n);
    j["status"] = "ok";
    j["p"] = c.p;
    j["q"] = c.q;
    j["r"] = c.r;
    j["n"] = c.n;
    j["case"] = pf::to_string(pair.kind);
    j["C"] = C;
    std::vector<double> row{c.p, c.q, static_cast<double>(c.r), static_cast<double>(c.n),
                            pair.kind == pf::ExponentCase::I ? 1.0 : 2.0, C};
    std::vector<std::string> header{"p", "q", "r", "n", "case", "C"};
    if (c.domain) {
        auto d = domain_from_json(*c.domain);
        if (d.dim() != c.n)
            throw pf::DimensionMismatch("domain dimension differs from --n");
        double cd = pf::theorem_constant_c(c.p, c.q, c.r, d);
        j["c"] = cd;
        j["domain"] = domain_to_json(d);
        row.push_back(cd);
        header.push_back("c");
    }
    res.report = j;
    if (!c.out.empty())
        res.artifacts.push_back({sibling(c.out, ".csv"), pf::csv_table(header, {row})});
    return res;
}

RunResult run_homotopy_check(const RunConfig& c)
{
    const double tol = c.tol.value_or(1e-9);
    std::vector<std::pair<pf::Form, pf::ConvexDomain>> cases;
    if (c.form) {
        auto f = require_form(c);
        cases.emplace_back(f, config_domain(c, f.dim()));
    } else {
        std::mt19937_64 rng(c.seed);
        for (int k = 0; k < c.count; ++k) {
            int n = 2 + k % 2;
            int r = 1 + (k / 2) % 2;
            int deg = k % 4;
            cases.emplace_back(pf::random_polynomial_form(n, r, deg, rng), pf::ConvexDomain::unit_box(n));
        }
    }
    std::mt19937_64 rng(c.seed ^ 0x9e3779b97f4a7c15ULL);
    Json rows = Json::array();
    double worst = 0.0;
    for (const auto& [omega, dom] : cases) {
        if (omega.degree() < 1)
            throw pf::InvalidArgument("the homotopy identity needs a form of degree at least 1");
        // y: a seeded point of the domain.
        auto ys = dom.probes(1, rng());
        pf::Form K = pf::homotopy_operator(dom, ys, omega);
        pf::Form Kd = omega.degree() < omega.dim() ? pf::homotopy_operator(dom, ys, omega.d())
                                                   : pf::Form::zero(omega.dim(), omega.degree());
        pf::Form lhs = K.d() + Kd;
        auto pts = dom.probes(64, pf::kProbeSeed);
        double res = pf::max_abs_difference(lhs, omega, pts);
        worst = std::max(worst, res);
        rows.push_back({{"dim", omega.dim()}, {"degree", omega.degree()}, {"y", ys}, {"residual", res}});
    }
    RunResult out;
    Json j = base_report(c);
    j["cases"] = rows;
    j["max_residual"] = worst;
    j["tolerance"] = tol;
    j["status"] = worst <= tol ? "ok" : "failed";
    out.report = j;
    out.exit_code = worst <= tol ? kOk : kVerificationFailure;
    return out;
}

RunResult run_local_primitive(const RunConfig& c)
{
    auto omega = require_form(c);
    auto dom = config_domain(c, omega.dim());
    auto lp = pf::local_primitive(dom, omega, c.p, c.q, c.quad);
    const double tol = c.tol.value_or(1e-8);
    RunResult out;
    Json j = base_report(c);
    j["certificate"] = to_json(lp.cert);
    j["domain"] = domain_to_json(dom);
    bool ok = lp.cert.bound_holds && lp.cert.primitive_residual <= tol;
    j["status"] = ok ? "ok" : "failed";
    out.report = j;
    out.exit_code = ok ? kOk : kVerificationFailure;
    return out;
}

RunResult run_cech(const RunConfig& c)
{
    auto ctx = require_cover(c);
    RunResult out;
    Json j = base_report(c);
    j["status"] = "ok";
    j["pieces"] = ctx->cover.size();
    j["geometry"] = pf::geometry_to_json(ctx->cover.geometry());
    j["coverage_holes"] = ctx->cover.coverage_holes();
    int top = ctx->cover.dim();
    while (top > 0 && !ctx->nerve.knows_length(top + 2))
        --top;
    j["nerve"] = nerve_to_json(ctx->nerve, top);
    out.report = j;
    return out;
}

RunResult run_glue_check(const RunConfig& c)
{
    auto ctx = require_cover(c);
    const double tol = c.tol.value_or(1e-9);
    const int probes = 200;
    auto pou = pf::partition_of_unity(ctx->cover);
    std::mt19937_64 rng(c.seed);
    Json rows = Json::array();
    double worst_dd = 0.0, worst_glue = 0.0, worst_ratio = 0.0;
    const int n = ctx->cover.dim();
    for (int degree = 0; degree <= std::min(n, 1); ++degree) {
        for (int s = 1; ctx->nerve.knows_length(s + 2) && s <= ctx->nerve.levels(); ++s) {
            auto alpha = pf::random_element(ctx, degree, s, 2, rng);
            auto beta = pf::cech_delta(alpha);
            double dd = pf::bicomplex_max_abs(pf::cech_delta(beta), probes, pf::kProbeSeed);
            auto glued = pf::glue(beta, pou);
            double gl = pf::bicomplex_max_abs(pf::cech_delta(glued) - beta, probes, pf::kProbeSeed);
            double scale = std::max(1.0, pf::bicomplex_max_abs(beta, probes, pf::kProbeSeed));
            worst_dd = std::max(worst_dd, dd / scale);
            worst_glue = std::max(worst_glue, gl / scale);
            auto norms = pf::glue_report(glued, beta, pou, c.p, c.quad);
            worst_ratio = std::max(worst_ratio, norms.ratio);
            rows.push_back({{"degree", degree},
                            {"cech", s},
                            {"delta_delta", dd / scale},
                            {"glue_residual", gl / scale},
                            {"beta_max", scale},
                            {"norm_alpha", norms.norm_alpha},
                            {"norm_beta", norms.norm_beta},
                            {"ratio", norms.ratio}});
        }
    }
    RunResult out;
    Json j = base_report(c);
    j["probes_per_tuple"] = probes;
    j["cases"] = rows;
    j["max_delta_delta"] = worst_dd;
    j["max_glue_residual"] = worst_glue;
    j["max_norm_ratio"] = worst_ratio;
    j["p"] = c.p;
    j["c_pou"] = pou.c_pou();
    j["tolerance"] = tol;
    bool ok = worst_dd <= tol && worst_glue <= tol;
    j["status"] = ok ? "ok" : "failed";
    out.report = j;
    out.exit_code = ok ? kOk : kVerificationFailure;
    return out;
}

RunResult run_primitive(const RunConfig& c)
{
    auto omega = require_form(c);
    auto ctx = require_cover(c);
    auto opts = globalize_options(c);
    auto res = pf::global_primitive(omega, ctx, opts);
    RunResult out;
    Json j = base_report(c);
    j.update(to_json(res.report));
    j["p"] = c.p;
    j["q"] = c.q;
    out.report = j;
    if (res.report.status == "obstructed") {
        out.exit_code = kObstruction;
        return out;
    }
    if (!(res.report.residual <= opts.residual_tol))
        out.exit_code = kVerificationFailure;
    if (!c.emit_xi_grid.empty() && res.xi) {
        const auto& geom = ctx->cover.geometry();
        auto pts = pf::geometry_probe_grid(geom, c.grid_points);
        const int dim = geom.dim();
        std::vector<std::string> header;
        for (int a = 0; a < dim; ++a)
            header.push_back("x" + std::to_string(a));
        for (int k = 0; k < res.xi->size(); ++k)
            header.push_back("c" + std::to_string(k));
        std::vector<std::vector<double>> rows;
        for (size_t at = 0; at + dim <= pts.size(); at += dim) {
            std::vector<double> x(pts.begin() + at, pts.begin() + at + dim);
            auto v = res.xi->values(x);
            x.insert(x.end(), v.begin(), v.end());
            rows.push_back(std::move(x));
        }
        out.artifacts.push_back({c.emit_xi_grid, pf::csv_table(header, rows)});
    }
    return out;
}

RunResult run_int_pairing(const RunConfig& c)
{
    auto omega = require_form(c);
    auto ctx = require_cover(c);
    auto opts = globalize_options(c);
    auto cascade = pf::xi_cascade(omega, ctx, opts);
    auto cocycle = pf::int_cocycle(cascade, opts);
    const int r = omega.degree();
    auto basis = ctx->nerve.homology_basis(r);
    auto pairings = pf::pair_with_cycles(ctx->nerve, r, cocycle.values, basis);
    Json tuples = Json::array();
    for (const auto& t : cocycle.tuples)
        tuples.push_back(t);
    Json pj = Json::array();
    double worst = 0.0;
    for (const auto& p : pairings) {
        pj.push_back(to_json(p));
        worst = std::max(worst, std::abs(p.value));
    }
    RunResult out;
    Json j = base_report(c);
    j["status"] = "ok";
    j["r"] = r;
    j["sign"] = cocycle.sign;
    j["sign_unshifted"] = pf::int_sign_unshifted(r);
    j["tuples"] = tuples;
    j["values"] = cocycle.values;
    j["spread"] = cocycle.spread;
    j["pairings"] = pj;
    j["max_abs_pairing"] = worst;
    out.report = j;
    return out;
}

RunResult run_subdivision_check(const RunConfig& c)
{
    const int r = c.r;
    if (r < 1 || r > 4)
        throw pf::InvalidArgument("subdivision-check supports 1 <= r <= 4");
    auto sigma = pf::ParentSimplex::standard(r);
    pf::Form omega;
    if (c.form) {
        omega = require_form(c);
    } else if (r == 2) {
        omega = pf::Form::basis(2, {0, 1});
    } else {
        std::mt19937_64 rng(c.seed);
        omega = pf::random_exact_form(r, r, 2, rng);
    }
    if (omega.dim() != r || omega.degree() != r)
        throw pf::DimensionMismatch("the form must be a top-degree form on R^r");
    const double tol = c.tol.value_or(1e-7);
    auto cascade = pf::star_cascade(omega, sigma);
    Json formulas = Json::array();
    double worst = 0.0;
    for (int m = 0; m < r; ++m) {
        if (c.m && *c.m != m)
            continue;
        auto rep = pf::formula_identity_check(omega, sigma, m, cascade);
        worst = std::max(worst, rep.gap);
        formulas.push_back(to_json(rep));
    }
    Json bij = Json::array();
    Json bdry = Json::array();
    bool comb_ok = true;
    for (int rr = 1; rr <= 4; ++rr) {
        auto rep = pf::boundary_representation(pf::ParentSimplex::standard(rr));
        bdry.push_back({{"r", rr}, {"factor", rep.factor}, {"equals_standard", rep.equals_standard}});
        for (int t = 0; t < rr; ++t) {
            auto f = pf::check_f_correspondence(rr, t);
            auto h = pf::check_h_correspondence(rr, t);
            comb_ok = comb_ok && f.bijective && f.signs_ok && f.sets_ok && h.bijective && h.signs_ok;
            bij.push_back({{"f", to_json(f)}, {"h", to_json(h)}});
        }
    }
    RunResult out;
    Json j = base_report(c);
    j["r"] = r;
    j["form"] = pf::form_to_json(omega);
    j["formula"] = formulas;
    j["max_gap"] = worst;
    j["tolerance"] = tol;
    j["bijections"] = bij;
    j["boundary_representation"] = bdry;
    bool ok = worst <= tol && comb_ok;
    j["status"] = ok ? "ok" : "failed";
    out.report = j;
    out.exit_code = ok ? kOk : kVerificationFailure;
    return out;
}

RunResult run_lp_scan(const RunConfig& c)
{
    auto scan = pf::lp_divergence_scan(c.p, c.eps);
    auto omega = pf::angle_form();
    Json periods = Json::array();
    double worst_period = 0.0;
    for (double radius : {0.1, 0.5, 0.9}) {
        double v = pf::circle_period(omega, radius);
        worst_period = std::max(worst_period, std::abs(v - 2.0 * std::numbers::pi));
        periods.push_back({{"radius", radius}, {"period", v}});
    }
    const double tol = c.tol.value_or(0.05);
    bool ok = worst_period <= 1e-9;
    if (scan.regime == "divergent-power")
        ok = ok && std::abs(scan.slope - scan.expected_slope) <= tol;
    RunResult out;
    Json j = base_report(c);
    j.update(to_json(scan));
    j["periods"] = periods;
    j["max_period_error"] = worst_period;
    j["closedness"] = pf::angle_form_closedness(omega);
    j["slope_tolerance"] = tol;
    j["status"] = ok ? "ok" : "failed";
    out.report = j;
    out.exit_code = ok ? kOk : kVerificationFailure;
    if (!c.out.empty()) {
        std::vector<std::vector<double>> rows;
        double fitted = scan.regime == "divergent-log" ? scan.log_rate : scan.slope;
        for (const auto& r : scan.rows)
            rows.push_back({r.epsilon, r.integral, r.log_epsilon, r.log_integral, fitted});
        out.artifacts.push_back(
            {sibling(c.out, ".csv"),
             pf::csv_table({"epsilon", "integral", "log_epsilon", "log_integral", "fitted_slope"}, rows)});
    }
    return out;
}

} // namespace

Json load_json_arg(const std::string& value, const std::string& base_dir)
{
    auto first = value.find_first_not_of(" \t\n");
    if (first != std::string::npos && value[first] == '{') {
        try {
            return Json::parse(value);
        } catch (const Json::parse_error& e) {
            throw pf::InvalidArgument(std::string("inline JSON does not parse: ") + e.what());
        }
    }
    return pf::read_json_file(resolve(value, base_dir));
}

RunConfig config_from_json(const Json& j, const std::string& base_dir)
{
    if (!j.is_object())
        throw pf::InvalidArgument("config must be a JSON object");
    static const std::vector<std::string> known = {
        "command", "cover", "form", "domain", "p", "q", "r", "n", "m", "quad", "tol",
        "out", "seed", "emit_xi_grid", "grid_points", "count", "eps"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw pf::InvalidArgument("unknown config key '" + it.key() + "'");
    RunConfig c;
    try {
        c.command = j.value("command", std::string());
        if (j.contains("cover"))
            c.cover = arg_or_object(j["cover"], base_dir);
        if (j.contains("form"))
            c.form = arg_or_object(j["form"], base_dir);
        if (j.contains("domain"))
            c.domain = arg_or_object(j["domain"], base_dir);
        c.p = j.value("p", c.p);
        c.q = j.value("q", c.q);
        c.r = j.value("r", c.r);
        c.n = j.value("n", c.n);
        if (j.contains("m"))
            c.m = j["m"].get<int>();
        if (j.contains("quad"))
            c.quad = pf::quad_from_json(j["quad"]);
        if (j.contains("tol"))
            c.tol = j["tol"].get<double>();
        c.out = j.value("out", c.out);
        c.seed = j.value("seed", c.seed);
        c.emit_xi_grid = j.value("emit_xi_grid", c.emit_xi_grid);
        c.grid_points = j.value("grid_points", c.grid_points);
        c.count = j.value("count", c.count);
        if (j.contains("eps"))
            c.eps = j["eps"].get<std::vector<double>>();
    } catch (const Json::exception& e) {
        throw pf::InvalidArgument(std::string("malformed config: ") + e.what());
    }
    return c;
}

void validate(const RunConfig& c)
{
    const auto& names = commands();
    if (std::find(names.begin(), names.end(), c.command) == names.end())
        throw pf::InvalidArgument("unknown command '" + c.command + "'");
    if (!(c.p >= 1.0) || !(c.q >= 1.0))
        throw pf::InvalidArgument("exponents must satisfy p, q >= 1");
    if (c.n < 1 || c.n > pf::kMaxDim)
        throw pf::InvalidArgument("--n out of range");
    if (c.command == "constant" && (c.r < 0 || c.r > c.n))
        throw pf::InvalidArgument("--r must lie in 0..n");
    if (c.tol && !(*c.tol > 0.0))
        throw pf::InvalidArgument("--tol must be positive");
    if (c.count < 1 || c.grid_points < 1)
        throw pf::InvalidArgument("counts must be positive");
    for (double e : c.eps)
        if (!(e > 0.0 && e < 1.0))
            throw pf::InvalidArgument("--eps values must lie in (0,1)");
}

RunResult execute(const RunConfig& config)
{
    validate(config);
    const std::string& cmd = config.command;
    try {
        if (cmd == "constant")
            return run_constant(config);
        if (cmd == "homotopy-check")
            return run_homotopy_check(config);
        if (cmd == "local-primitive")
            return run_local_primitive(config);
        if (cmd == "cech")
            return run_cech(config);
        if (cmd == "glue-check")
            return run_glue_check(config);
        if (cmd == "primitive")
            return run_primitive(config);
        if (cmd == "int-pairing")
            return run_int_pairing(config);
        if (cmd == "subdivision-check")
            return run_subdivision_check(config);
        return run_lp_scan(config);
    } catch (const Json::exception& e) {
        throw pf::InvalidArgument(std::string("malformed input: ") + e.what());
    }
}

void emit_report(const RunResult& result, const std::string& path)
{
    std::string text = pf::canonical_dump(result.report);
    if (path.empty())
        std::cout << text;
    else
        pf::write_text_file(path, text);
    for (const auto& a : result.artifacts)
        if (!a.path.empty())
            pf::write_text_file(a.path, a.contents);
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const pf::VerificationFailure*>(&e))
        return kVerificationFailure;
    return kConfigError;
}

std::string error_json(const std::exception& e)
{
    Json err = {{"message", e.what()}};
    if (const auto* pe = dynamic_cast<const pf::Error*>(&e))
        err["kind"] = pe->kind();
    else
        err["kind"] = "internal";
    if (const auto* vf = dynamic_cast<const pf::VerificationFailure*>(&e))
        err["residual"] = vf->residual();
    Json j = {{"error", err}, {"exit_code", exit_code_for(e)}};
    return j.dump();
}

} // namespace pfcli
