#include "pfcli/report.hpp"

namespace pfcli {

Json tuple_json(const pf::Tuple& t) { return Json(t); }

Json to_json(const pf::LocalCert& c)
{
    return {{"p", c.p},
            {"q", c.q},
            {"norm_xi", c.norm_xi},
            {"norm_omega", c.norm_omega},
            {"ratio", c.ratio},
            {"bound", c.bound},
            {"closed_residual", c.closed_residual},
            {"primitive_residual", c.primitive_residual},
            {"bound_holds", c.bound_holds}};
}

Json to_json(const pf::GlueReport& g)
{
    return {{"norm_alpha", g.norm_alpha},   {"norm_beta", g.norm_beta},
            {"norm_dalpha", g.norm_dalpha}, {"norm_dbeta", g.norm_dbeta},
            {"ratio", g.ratio},             {"derivative_ratio", g.derivative_ratio},
            {"c_pou", g.c_pou}};
}

Json to_json(const pf::CyclePairing& c)
{
    Json tuples = Json::array();
    for (const auto& t : c.tuples)
        tuples.push_back(t);
    return {{"tuples", tuples}, {"coefficients", c.coefficients}, {"value", c.value}};
}

Json to_json(const pf::GlobalizationReport& r)
{
    Json j;
    j["status"] = r.status;
    j["r"] = r.r;
    j["residual"] = r.residual;
    j["residual_probes"] = r.residual_probes;
    j["norms"] = {{"xi", r.norm_xi}, {"omega", r.norm_omega}, {"c", r.c_norm}};
    j["ratio"] = r.ratio;
    j["measured_ratio"] = r.measured_ratio;
    j["ledger_product"] = r.ledger_product;
    Json ledger = Json::array();
    for (const auto& f : r.ledger)
        ledger.push_back({{"name", f.name}, {"value", f.value}});
    j["ledger"] = ledger;
    Json cascade = Json::array();
    for (const auto& l : r.cascade)
        cascade.push_back({{"s", l.s},
                           {"form_degree", l.form_degree},
                           {"norm", l.norm},
                           {"ratio", l.ratio},
                           {"identity_residual", l.identity_residual}});
    j["cascade"] = cascade;
    Json descent = Json::array();
    for (const auto& d : r.descent)
        descent.push_back({{"level", d.level},
                           {"norm_input", d.norm_input},
                           {"norm_x", d.norm_x},
                           {"norm_dx", d.norm_dx},
                           {"glue", to_json(d.glue)}});
    j["descent"] = descent;
    j["constants"] = {{"C", r.C_local},
                      {"c", r.max_piece_constant},
                      {"c_pou", r.c_pou},
                      {"max_volume_ratio", r.max_volume_ratio},
                      {"c_residual", r.c_residual},
                      {"cover_pieces", r.cover_pieces},
                      {"multiplicity", r.multiplicity}};
    j["int_values"] = r.int_values;
    if (r.status == "obstructed") {
        Json pairings = Json::array();
        for (const auto& p : r.pairings)
            pairings.push_back(to_json(p));
        j["obstruction"] = {{"pairings", pairings}};
    }
    return j;
}

Json to_json(const pf::FormulaReport& f)
{
    Json terms = Json::array();
    for (const auto& t : f.terms) {
        Json e = {{"part", t.part}, {"J", t.J}, {"t", t.t}, {"value", t.value}};
        if (!t.K.empty())
            e["K"] = t.K;
        terms.push_back(e);
    }
    return {{"m", f.m},
            {"r", f.r},
            {"lhs", f.lhs},
            {"rhs", f.rhs},
            {"gap", f.gap},
            {"delta_xi", f.delta_xi},
            {"period_gap_unshifted", f.period_gap_unshifted},
            {"period_gap", f.period_gap},
            {"per_term", terms}};
}

Json to_json(const pf::BijectionCheck& b)
{
    return {{"r", b.r},
            {"t", b.t},
            {"domain_size", b.domain_size},
            {"codomain_size", b.codomain_size},
            {"bijective", b.bijective},
            {"signs_ok", b.signs_ok},
            {"sets_ok", b.sets_ok}};
}

Json to_json(const pf::LpScan& s)
{
    Json rows = Json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"epsilon", r.epsilon},
                        {"integral", r.integral},
                        {"log_epsilon", r.log_epsilon},
                        {"log_integral", r.log_integral}});
    Json j = {{"p", s.p}, {"regime", s.regime}, {"rows", rows}, {"expected_slope", s.expected_slope}};
    if (s.regime == "divergent-log") {
        j["log_rate"] = s.log_rate;
    } else {
        j["slope"] = s.slope;
        j["tail_slope"] = s.tail_slope;
    }
    return j;
}

Json nerve_to_json(const pf::NerveComplex& nerve, int top)
{
    Json levels = Json::array();
    for (int j = 0; j < nerve.levels(); ++j) {
        Json tuples = Json::array();
        for (const auto& t : nerve.simplices(j))
            tuples.push_back(t);
        levels.push_back({{"j", j}, {"count", nerve.count(j)}, {"tuples", tuples}});
    }
    Json boundaries = Json::array();
    for (int j = 1; j < nerve.levels(); ++j) {
        Json coo = Json::array();
        for (const auto& e : nerve.boundary(j))
            coo.push_back({e.row, e.col, e.value});
        boundaries.push_back({{"j", j},
                              {"rows", nerve.count(j - 1)},
                              {"cols", nerve.count(j)},
                              {"rank", nerve.boundary_rank(j)},
                              {"entries", coo}});
    }
    return {{"levels", levels},
            {"truncated", nerve.truncated()},
            {"boundaries", boundaries},
            {"betti", nerve.betti_numbers(top)}};
}

} // namespace pfcli
