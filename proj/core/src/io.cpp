#include "pf/io.hpp"

#include "pf/error.hpp"
#include "pf/multi_index.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pf {

namespace {

void dump_rec(const Json& j, int digits, int indent, std::string& out)
{
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        // nlohmann::json keeps object keys in a std::map, so iteration is sorted.
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad_in + Json(it.key()).dump() + ": ";
            dump_rec(it.value(), digits, indent + 1, out);
        }
        out += "\n" + pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        bool scalar_only = true;
        for (const auto& e : j)
            scalar_only = scalar_only && !e.is_structured();
        if (scalar_only) {
            out += "[";
            for (size_t k = 0; k < j.size(); ++k) {
                if (k)
                    out += ", ";
                dump_rec(j[k], digits, indent + 1, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (size_t k = 0; k < j.size(); ++k) {
            if (k)
                out += ",\n";
            out += pad_in;
            dump_rec(j[k], digits, indent + 1, out);
        }
        out += "\n" + pad + "]";
        return;
    }
    case Json::value_t::number_float: {
        double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            return;
        }
        if (v == 0.0)
            v = 0.0; // fold -0
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*e", digits, v);
        out += buf;
        return;
    }
    default:
        out += j.dump();
    }
}

Json field_to_json(const ScalarField& f)
{
    Json out;
    if (const auto* p = f.polynomial()) {
        out["kind"] = "polynomial";
        Json terms = Json::array();
        for (const auto& [e, c] : p->terms())
            terms.push_back({{"exponents", e}, {"coeff", c}});
        out["terms"] = terms;
        return out;
    }
    if (const auto* t = f.trig()) {
        out["kind"] = "trig";
        Json terms = Json::array();
        for (const auto& [key, c] : t->terms())
            terms.push_back({{"freq", key.freq},
                             {"phase", key.phase == TrigPolynomial::Phase::Cos ? "cos" : "sin"},
                             {"coeff", c}});
        out["terms"] = terms;
        return out;
    }
    throw UnsupportedOperation("only polynomial and trig coefficients can be serialized");
}

ScalarField field_from_json(const Json& j, int dim)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "polynomial") {
        Polynomial p(dim);
        for (const auto& t : j.at("terms")) {
            auto e = t.at("exponents").get<std::vector<int>>();
            if (static_cast<int>(e.size()) != dim)
                throw InvalidArgument("polynomial exponent vector has the wrong length");
            for (int a : e)
                if (a < 0)
                    throw InvalidArgument("negative exponent");
            p.add_term(t.at("coeff").get<double>(), e);
        }
        return p;
    }
    if (kind == "trig") {
        TrigPolynomial tp(dim);
        for (const auto& t : j.at("terms")) {
            auto k = t.at("freq").get<std::vector<int>>();
            if (static_cast<int>(k.size()) != dim)
                throw InvalidArgument("trig frequency vector has the wrong length");
            const std::string ph = t.at("phase").get<std::string>();
            if (ph != "cos" && ph != "sin")
                throw InvalidArgument("trig phase must be cos or sin");
            tp.add_term(t.at("coeff").get<double>(), k,
                        ph == "cos" ? TrigPolynomial::Phase::Cos : TrigPolynomial::Phase::Sin);
        }
        return tp;
    }
    throw InvalidArgument("unknown coefficient kind '" + kind + "'");
}

std::vector<double> doubles(const Json& j) { return j.get<std::vector<double>>(); }

} // namespace

std::string canonical_dump(const Json& j, int digits)
{
    std::string out;
    dump_rec(j, digits, 0, out);
    out += "\n";
    return out;
}

Json form_to_json(const Form& form)
{
    const auto* terms = form.terms();
    Json j;
    j["dim"] = form.dim();
    j["degree"] = form.degree();
    Json arr = Json::array();
    if (!form.is_zero()) {
        if (!terms)
            throw UnsupportedOperation("form '" + form.label() + "' has no symbolic coefficients");
        const auto& table = IndexTable::get(form.dim(), form.degree());
        for (int rank = 0; rank < table.size(); ++rank) {
            const auto& f = (*terms)[rank];
            if (f.is_zero())
                continue;
            arr.push_back({{"index", table.indices(rank)}, {"field", field_to_json(f)}});
        }
    }
    j["terms"] = arr;
    return j;
}

Form form_from_json(const Json& j)
{
    const int dim = j.at("dim").get<int>();
    const int degree = j.at("degree").get<int>();
    if (dim < 1 || dim > kMaxDim)
        throw InvalidArgument("form dimension out of range");
    if (degree < 0 || degree > dim)
        throw InvalidArgument("form degree out of range");
    std::vector<std::pair<std::vector<int>, ScalarField>> terms;
    for (const auto& t : j.at("terms")) {
        auto idx = t.at("index").get<std::vector<int>>();
        if (static_cast<int>(idx.size()) != degree)
            throw InvalidArgument("term index length differs from the form degree");
        for (int a : idx)
            if (a < 0 || a >= dim)
                throw InvalidArgument("term index out of range (indices are 0-based)");
        terms.emplace_back(std::move(idx), field_from_json(t.at("field"), dim));
    }
    return Form::from_terms(dim, degree, terms);
}

Json geometry_to_json(const Geometry& g)
{
    Json j;
    j["kind"] = to_string(g.kind());
    j["dim"] = g.dim();
    switch (g.kind()) {
    case Geometry::Kind::Box:
        j["lo"] = g.lo();
        j["hi"] = g.hi();
        break;
    case Geometry::Kind::Simplex:
        j["vertices"] = g.vertices();
        break;
    default:
        break;
    }
    return j;
}

Geometry geometry_from_json(const Json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "torus")
        return Geometry::torus(j.at("dim").get<int>());
    if (kind == "box")
        return Geometry::box(doubles(j.at("lo")), doubles(j.at("hi")));
    if (kind == "simplex")
        return Geometry::simplex(j.at("vertices").get<std::vector<std::vector<double>>>());
    if (kind == "punctured-disk")
        return Geometry::punctured_disk();
    throw InvalidArgument("unknown geometry kind '" + kind + "'");
}

std::string rational_to_string(const Rational& q)
{
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1)
        os << "/" << denominator(q);
    return os.str();
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_number())
        return to_rational(j.get<double>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos)
                return Rational(std::stoll(s));
            long long num = std::stoll(s.substr(0, slash));
            long long den = std::stoll(s.substr(slash + 1));
            if (den == 0)
                throw InvalidArgument("zero denominator in '" + s + "'");
            return Rational(num, den);
        } catch (const std::logic_error&) {
            throw InvalidArgument("malformed rational '" + s + "'");
        }
    }
    throw InvalidArgument("expected a number or a \"p/q\" string");
}

Json cover_to_json(const Cover& cover)
{
    Json j;
    j["geometry"] = geometry_to_json(cover.geometry());
    if (cover.is_star()) {
        j["kind"] = "star";
        return j;
    }
    j["kind"] = "boxes";
    j["overlap"] = cover.overlap();
    Json pieces = Json::array();
    for (int i = 0; i < cover.size(); ++i) {
        Json lo = Json::array(), hi = Json::array();
        for (const auto& q : cover.lo_exact(i))
            lo.push_back(rational_to_string(q));
        for (const auto& q : cover.hi_exact(i))
            hi.push_back(rational_to_string(q));
        pieces.push_back({{"kind", "box"},
                          {"data",
                           {{"lo", lo},
                            {"hi", hi},
                            {"core_lo", cover.core(i).lo()},
                            {"core_hi", cover.core(i).hi()}}}});
    }
    j["pieces"] = pieces;
    return j;
}

Cover cover_from_json(const Json& j)
{
    Geometry geom = geometry_from_json(j.at("geometry"));
    const std::string kind = j.value("kind", std::string("boxes"));
    if (kind == "star")
        return Cover::star(geom);
    if (kind != "boxes")
        throw InvalidArgument("unknown cover kind '" + kind + "'");
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        return build_box_cover(geom, g.at("cells").get<int>(), g.at("overlap").get<double>());
    }
    std::vector<std::vector<Rational>> lo, hi;
    std::vector<std::pair<std::vector<double>, std::vector<double>>> cores;
    bool have_cores = true;
    for (const auto& p : j.at("pieces")) {
        if (p.value("kind", std::string("box")) != "box")
            throw InvalidArgument("only box pieces can be read from a file");
        const auto& d = p.at("data");
        std::vector<Rational> l, h;
        for (const auto& v : d.at("lo"))
            l.push_back(rational_from_json(v));
        for (const auto& v : d.at("hi"))
            h.push_back(rational_from_json(v));
        lo.push_back(std::move(l));
        hi.push_back(std::move(h));
        if (d.contains("core_lo") && d.contains("core_hi"))
            cores.emplace_back(doubles(d.at("core_lo")), doubles(d.at("core_hi")));
        else
            have_cores = false;
    }
    const double overlap = j.at("overlap").get<double>();
    if (have_cores)
        return Cover::from_boxes(geom, lo, hi, overlap, cores);
    return Cover::from_boxes(geom, lo, hi, overlap);
}

Json quad_to_json(const QuadratureSpec& q)
{
    return {{"rule", q.rule}, {"order", q.order}, {"adaptive_tol", q.adaptive_tol}, {"panels", q.panels}};
}

QuadratureSpec quad_from_json(const Json& j)
{
    QuadratureSpec q;
    q.rule = j.value("rule", q.rule);
    q.order = j.value("order", q.order);
    q.adaptive_tol = j.value("adaptive_tol", q.adaptive_tol);
    q.panels = j.value("panels", q.panels);
    if (q.rule != "auto" && q.rule != "gauss" && q.rule != "grundmann-moller")
        throw InvalidArgument("unknown quadrature rule '" + q.rule + "'");
    if (q.order < 1 || q.panels < 1)
        throw InvalidArgument("quadrature order and panels must be positive");
    return q;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw InvalidArgument("write to '" + path + "' failed");
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    std::string out;
    for (size_t k = 0; k < header.size(); ++k)
        out += (k ? "," : "") + header[k];
    out += "\n";
    char buf[64];
    for (const auto& row : rows) {
        for (size_t k = 0; k < row.size(); ++k) {
            double v = row[k] == 0.0 ? 0.0 : row[k];
            if (std::isfinite(v))
                std::snprintf(buf, sizeof buf, "%.12e", v);
            else
                std::snprintf(buf, sizeof buf, "nan");
            out += (k ? "," : "");
            out += buf;
        }
        out += "\n";
    }
    return out;
}

} // namespace pf
