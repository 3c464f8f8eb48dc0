// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include "pf/constants.hpp"
#include "pf/homotopy.hpp"
#include "pf/io.hpp"
#include "pfcli/cli.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using pf::Json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string data(const std::string& name)
{
    return std::string(PF_DATA_DIR) + "/" + name;
}

pfcli::RunResult run(pfcli::RunConfig c)
{
    pfcli::validate(c);
    return pfcli::execute(c);
}

pfcli::RunConfig config(const std::string& command)
{
    pfcli::RunConfig c;
    c.command = command;
    return c;
}

Outcome homotopy_identity()
{
    auto c = config("homotopy-check");
    c.count = 20;
    auto r = run(c);
    double worst = r.report["max_residual"].get<double>();
    bool ok = r.exit_code == pfcli::kOk && worst <= 1e-9 && r.report["cases"].size() == 20;
    return {ok, "20 forms, max residual " + fmt(worst)};
}

double oracle_C(double p, double q, int r, int n)
{
    auto pair = pf::admissible_exponents(p, q, n);
    double a = pair.kind == pf::ExponentCase::I ? n / p : n / q;
    auto f = [&](double t) {
        return std::min(std::pow(t, a), std::pow(1 - t, a)) * std::pow(t, r - a) * std::pow(1 - t, -n / q);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, 0.0, 0.5) + ts.integrate(f, 0.5, 1.0);
}

Outcome local_constants()
{
    const double ln2 = std::log(2.0);
    double a = pf::poincare_constant_C(1, 1, 1, 1);
    double b = pf::poincare_constant_C(2, 2, 1, 2);
    double c = pf::poincare_constant_C(1, 2, 1, 1);
    double oc = oracle_C(1, 2, 1, 1);
    double gap = std::max({std::abs(a - ln2), std::abs(b - ln2), std::abs(c - oc)});
    return {gap <= 1e-8, "C(1,2,1,1) = " + fmt(c) + ", max gap " + fmt(gap)};
}

Outcome local_certificate()
{
    auto dom = pf::ConvexDomain::unit_box(2);
    auto lp = pf::local_primitive(dom, pf::Form::basis(2, {0, 1}), 2, 2);
    double target = 1.0 / std::sqrt(24.0);
    double bound = std::sqrt(2.0) * std::log(2.0);
    bool ok = std::abs(lp.cert.norm_xi - target) <= 1e-9 && lp.cert.ratio <= bound;
    return {ok, "norm " + fmt(lp.cert.norm_xi) + ", ratio " + fmt(lp.cert.ratio) + " <= " + fmt(bound)};
}

Outcome bicomplex_algebra()
{
    double worst = 0.0;
    bool ok = true;
    for (const char* cover : {"circle3.json", "torus4x4.json"}) {
        auto c = config("glue-check");
        c.cover = pfcli::load_json_arg(data(cover));
        auto r = run(c);
        ok = ok && r.exit_code == pfcli::kOk;
        worst = std::max({worst, r.report["max_delta_delta"].get<double>(),
                          r.report["max_glue_residual"].get<double>()});
    }
    return {ok && worst <= 1e-9, "circle and torus, max residual " + fmt(worst)};
}

Outcome cech_topology()
{
    auto c = config("cech");
    c.cover = pfcli::load_json_arg(data("circle3.json"));
    auto circle = run(c).report["nerve"]["betti"];
    c.cover = pfcli::load_json_arg(data("torus4x4.json"));
    auto torus = run(c).report["nerve"]["betti"];
    bool ok = circle == Json({1, 1}) && torus == Json({1, 2, 1});
    return {ok, "circle " + circle.dump() + ", torus " + torus.dump()};
}

Outcome global_primitive()
{
    auto c = config("primitive");
    c.cover = pfcli::load_json_arg(data("torus4x4.json"));
    c.form = pfcli::load_json_arg(data("exact2form.json"));
    auto r = run(c);
    const auto& rep = r.report;
    double residual = rep["residual"].get<double>();
    double ratio = rep["ratio"].get<double>();
    double ledger = rep["ledger_product"].get<double>();
    double measured = rep["measured_ratio"].get<double>();
    double rel = std::abs(ledger - measured) / measured;
    bool ok = r.exit_code == pfcli::kOk && rep["status"] == "exact-solved" && residual <= 1e-6 &&
              rep["residual_probes"] == 10000 && std::isfinite(ratio) && rel <= 0.05;
    return {ok, "residual " + fmt(residual) + ", ratio " + fmt(ratio) + ", ledger vs measured " + fmt(rel)};
}

Outcome obstruction()
{
    auto c = config("primitive");
    c.cover = pfcli::load_json_arg(data("circle3.json"));
    c.form = pfcli::load_json_arg(data("angle_circle.json"));
    auto r = run(c);
    const auto& pairings = r.report["obstruction"]["pairings"];
    double value = pairings.size() == 1 ? pairings[0]["value"].get<double>() : 0.0;
    bool ok = r.exit_code == pfcli::kObstruction && std::abs(value - 1.0) <= 1e-8;
    double exact_worst = 0.0;
    const std::pair<const char*, const char*> exact[] = {{"circle3.json", "exact_circle.json"},
                                                         {"torus4x4.json", "exact2form.json"}};
    for (auto [cover, form] : exact) {
        auto e = config("int-pairing");
        e.cover = pfcli::load_json_arg(data(cover));
        e.form = pfcli::load_json_arg(data(form));
        e.r = pf::form_from_json(*e.form).degree();
        auto rep = run(e);
        exact_worst = std::max(exact_worst, rep.report["max_abs_pairing"].get<double>());
    }
    ok = ok && exact_worst <= 1e-8;
    return {ok, "angle pairing " + fmt(value) + ", exact forms max pairing " + fmt(exact_worst)};
}

Outcome subdivision()
{
    auto c = config("subdivision-check");
    c.r = 2;
    auto r = run(c);
    double worst = 0.0;
    for (const auto& f : r.report["formula"]) {
        worst = std::max(worst, std::abs(f["lhs"].get<double>() - 0.5));
        worst = std::max(worst, std::abs(f["rhs"].get<double>() - 0.5));
    }
    bool ok = r.exit_code == pfcli::kOk && worst <= 1e-7;
    return {ok, "both sides within " + fmt(worst) + " of 1/2; bijections r <= 4 exact"};
}

Outcome lp_divergence()
{
    bool ok = true;
    std::ostringstream os;
    for (double p : {3.0, 4.0}) {
        auto c = config("lp-scan");
        c.p = p;
        auto r = run(c);
        double slope = r.report["slope"].get<double>();
        ok = ok && std::abs(slope + (p - 2.0)) <= 0.05;
        os << "p=" << p << " slope " << fmt(slope) << "; ";
    }
    auto c = config("lp-scan");
    c.p = 1.0;
    c.eps = {1e-2, 1e-4, 1e-8};
    auto r = run(c);
    double last = r.report["rows"].back()["integral"].get<double>();
    double two_pi = 2.0 * std::acos(-1.0);
    double period_gap = r.report["max_period_error"].get<double>();
    ok = ok && std::abs(last - two_pi) <= 1e-6 && period_gap <= 1e-9;
    os << "p=1 I=" << fmt(last) << "; period error " << fmt(period_gap);
    return {ok, os.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism()
{
    auto dir = fs::temp_directory_path() / "pf_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"constant", "--p 2 --q 2 --r 1 --n 2"},
        {"homotopy-check", "--count 5"},
        {"cech", "--cover " + data("torus4x4.json")},
        {"glue-check", "--cover " + data("circle3.json")},
        {"primitive", "--cover " + data("circle3.json") + " --form " + data("exact_circle.json") +
                          " --grid-points 200 --emit-xi-grid XI"},
        {"int-pairing", "--cover " + data("circle3.json") + " --form " + data("angle_circle.json")},
        {"subdivision-check", "--r 2"},
        {"lp-scan", "--p 3"},
    };
    bool ok = true;
    int compared = 0;
    for (const auto& [cmd, args] : runs) {
        std::string outputs[2];
        for (int k = 0; k < 2; ++k) {
            auto sub = dir / (cmd + "_" + std::to_string(k));
            fs::create_directories(sub);
            std::string a = args;
            if (auto at = a.find("XI"); at != std::string::npos)
                a.replace(at, 2, (sub / "xi.csv").string());
            std::string line = std::string(PF_CLI_PATH) + " " + cmd + " " + a + " --out " +
                               (sub / "report.json").string() + " 2>/dev/null";
            int rc = std::system(line.c_str());
            (void)rc;
            for (const auto& e : fs::directory_iterator(sub))
                outputs[k] += e.path().filename().string() + "\n" + slurp(e.path());
        }
        ++compared;
        if (outputs[0].empty() || outputs[0] != outputs[1]) {
            ok = false;
            std::cerr << "non-deterministic output for " << cmd << "\n";
        }
    }
    fs::remove_all(dir);
    return {ok, std::to_string(compared) + " commands byte-identical across two runs"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"homotopy identity", homotopy_identity},
        {"local constants", local_constants},
        {"local certificate", local_certificate},
        {"bicomplex algebra", bicomplex_algebra},
        {"Čech topology", cech_topology},
        {"global primitive on T^2", global_primitive},
        {"obstruction detection", obstruction},
        {"subdivision identity", subdivision},
        {"L^p divergence", lp_divergence},
        {"determinism", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
