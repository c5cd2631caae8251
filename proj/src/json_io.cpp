#include "chsh/json_io.hpp"

#include <functional>

namespace chsh {

namespace {

const char* kPairKeys[4] = {"11", "12", "21", "22"};

json pair_map(const std::function<json(int)>& value) {
    json out = json::object();
    for (int g = 0; g < 4; ++g) out[kPairKeys[g]] = value(g);
    return out;
}

} // namespace

json scalar_to_json(const Scalar& s) { return s.as_double(); }

Scalar scalar_from_json(const json& j, const std::string& context) {
    if (j.is_number()) return Scalar(j.get<double>());
    if (j.is_string()) return parse_exact_or_fail(j.get<std::string>());
    fail(ErrorCode::ParseError, context + ": expected a number or a 'p/q'/decimal string");
}

json family_to_json(const CondTableFamily& family) {
    json out;
    out["tables"] = pair_map([&](int g) {
        const CondTable& t = family.tables[g];
        return json{{"pp", scalar_to_json(t.pp)},
                    {"pm", scalar_to_json(t.pm)},
                    {"mp", scalar_to_json(t.mp)},
                    {"mm", scalar_to_json(t.mm)}};
    });
    out["gate_probs"] = pair_map([&](int g) { return scalar_to_json(family.gate_probs[g]); });
    return out;
}

CondTableFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("tables") || !j["tables"].is_object())
        fail(ErrorCode::ParseError, "family JSON must be an object with a 'tables' object");

    CondTableFamily family;
    const json& tables = j["tables"];
    for (int g = 0; g < 4; ++g) {
        const char* key = kPairKeys[g];
        if (!tables.contains(key)) fail(ErrorCode::ParseError, std::string("missing table '") + key + "'");
        const json& t = tables[key];
        for (const char* field : {"pp", "pm", "mp", "mm"})
            if (!t.contains(field))
                fail(ErrorCode::ParseError,
                     std::string("table '") + key + "' is missing entry '" + field + "'");
        std::string ctx = std::string("table ") + key;
        family.tables[g] = CondTable{scalar_from_json(t["pp"], ctx), scalar_from_json(t["pm"], ctx),
                                     scalar_from_json(t["mp"], ctx), scalar_from_json(t["mm"], ctx)};
    }
    if (j.contains("gate_probs")) {
        const json& gates = j["gate_probs"];
        for (int g = 0; g < 4; ++g) {
            const char* key = kPairKeys[g];
            if (!gates.contains(key))
                fail(ErrorCode::ParseError, std::string("gate_probs is missing pair '") + key + "'");
            family.gate_probs[g] = scalar_from_json(gates[key], std::string("gate ") + key);
        }
    }
    family.validate();
    return family;
}

json chsh_report_to_json(const ChshReport& report) {
    json out;
    out["correlations"] = pair_map([&](int g) { return scalar_to_json(report.terms[g]); });
    out["s"] = scalar_to_json(report.s);
    out["abs_s"] = report.abs_s();
    json bounds = json::array();
    for (const BoundVerdict& b : report.bounds)
        bounds.push_back(json{{"bound", b.bound}, {"satisfied", b.satisfied}});
    out["bounds"] = bounds;
    return out;
}

json marginal_consistency_to_json(const MarginalConsistencyReport& report) {
    json out{{"consistent", report.consistent}, {"max_discrepancy", report.max_discrepancy}};
    if (!report.consistent) out["worst"] = report.worst;
    return out;
}

json unifying_space_to_json(const UnifyingSpace& us) {
    json out;
    json atoms = json::array();
    for (const auto& t : us.tuples) atoms.push_back(json{t[0], t[1], t[2], t[3]});
    out["atoms"] = atoms;
    json weights = json::array();
    for (std::size_t k = 0; k < us.space.size(); ++k) weights.push_back(scalar_to_json(us.space.weight(k)));
    out["weights"] = weights;
    json rvs;
    auto rv_values = [](const RandomVariable& rv) {
        json vals = json::array();
        for (std::size_t k = 0; k < rv.size(); ++k) vals.push_back(scalar_to_json(rv.value(k)));
        return vals;
    };
    rvs["a1"] = rv_values(us.a1);
    rvs["a2"] = rv_values(us.a2);
    rvs["b1"] = rv_values(us.b1);
    rvs["b2"] = rv_values(us.b2);
    rvs["eta"] = rv_values(us.eta);
    out["rvs"] = rvs;
    return out;
}

json pi_report_to_json(const PiReport& report) {
    json pairs = pair_map([&](int g) {
        const PiPairReport& p = report.pairs[g];
        return json{{"conditional_expectation", scalar_to_json(p.cond_exp)},
                    {"scaled_correlation", scalar_to_json(p.scaled_corr)},
                    {"table_correlation", scalar_to_json(p.table_corr)},
                    {"residual", p.residual}};
    });
    return json{{"pairs", pairs}, {"max_residual", report.max_residual}, {"holds", report.holds()}};
}

json two_valued_report_to_json(const TwoValuedSpace& tvs) {
    json out;
    out["params"] = json{{"x", scalar_to_json(tvs.params.x)},
                         {"y", scalar_to_json(tvs.params.y)},
                         {"x_exact", tvs.params.x.exact() ? json(tvs.params.x.str()) : json()},
                         {"y_exact", tvs.params.y.exact() ? json(tvs.params.y.str()) : json()}};

    json rows = json::array();
    const auto& table = two_valued_rows();
    for (std::size_t k = 0; k < 16; ++k) {
        rows.push_back(json{{"a1", table[k].a1},
                            {"a2", table[k].a2},
                            {"b1", table[k].b1},
                            {"b2", table[k].b2},
                            {"eta", table[k].eta},
                            {"weight", scalar_to_json(tvs.space.weight(k))}});
    }
    out["rows"] = rows;

    ChshReport unconditional = chsh_value(tvs.space, tvs.a1, tvs.a2, tvs.b1, tvs.b2);
    out["unconditional_chsh"] = chsh_report_to_json(unconditional);

    std::array<Scalar, 4> cond = conditional_correlations(tvs);
    out["conditional_correlations"] = pair_map([&](int g) { return scalar_to_json(cond[g]); });
    out["conditional_chsh"] = chsh_report_to_json(make_chsh_report(cond, {4.0, 8.0}));

    NonSignallingReport ns = verify_non_signalling(tvs);
    json checks = json::array();
    for (const auto& c : ns.checks)
        checks.push_back(json{{"check", c.description},
                              {"probability", scalar_to_json(c.probability)},
                              {"deviation", c.deviation}});
    out["non_signalling"] =
        json{{"holds", ns.holds}, {"max_deviation", ns.max_deviation}, {"checks", checks}};

    RemarkReport remark = check_remark(tvs);
    out["remark"] = json{
        {"equality_holds", remark.equality_holds},
        {"conditional", pair_map([&](int g) { return scalar_to_json(remark.conditional[g]); })},
        {"unconditional", pair_map([&](int g) { return scalar_to_json(remark.unconditional[g]); })},
        {"residuals", pair_map([&](int g) { return remark.residuals[g]; })},
    };

    // The boundary weights x=1/8, y=0 (or the mirror) are sometimes quoted
    // unnormalized as x=1, y=0; same distribution after rescaling by 1/8.
    if (tvs.params.x.is_zero() || tvs.params.y.is_zero())
        out["notes"] = json::array({"conditional CHSH sum at its algebraic extreme; these weights are the "
                                    "normalized form of the unnormalized pair (1, 0)"});
    return out;
}

json estimate_to_json(const McEstimate& est) {
    json out;
    out["trials"] = est.trials;
    out["pairs"] = pair_map([&](int g) {
        const PairEstimate& p = est.pairs[g];
        json pair{{"count", p.count},
                  {"gate_frequency", static_cast<double>(p.count) / static_cast<double>(est.trials)},
                  {"sum_products", p.sum_products},
                  {"full_correlation", p.full},
                  {"full_se", p.full_se}};
        pair["conditional_correlation"] = p.cond ? json(*p.cond) : json();
        pair["conditional_se"] = p.cond_se ? json(*p.cond_se) : json();
        return pair;
    });
    return out;
}

json mc_chsh_to_json(const McChshReport& report) {
    return json{{"full", chsh_report_to_json(report.full)},
                {"conditional", chsh_report_to_json(report.conditional)}};
}

json feasibility_to_json(const Feasibility& f) {
    json out;
    out["feasible"] = f.feasible;
    if (f.witness) {
        json w = json::array();
        for (const Scalar& s : f.witness->weights) w.push_back(scalar_to_json(s));
        out["witness"] = w;
    } else {
        out["witness"] = json();
    }
    if (f.certificate) {
        const InfeasibilityCertificate& c = *f.certificate;
        json cert;
        switch (c.kind) {
            case InfeasibilityCertificate::Kind::MarginalInconsistency:
                cert["kind"] = "marginal_inconsistency";
                cert["violation"] = c.violation;
                break;
            case InfeasibilityCertificate::Kind::ChshViolation:
                cert["kind"] = "chsh_violation";
                cert["sign_pattern"] = json{c.sign_pattern[0], c.sign_pattern[1], c.sign_pattern[2],
                                            c.sign_pattern[3]};
                cert["violation"] = c.violation;
                break;
            case InfeasibilityCertificate::Kind::LpDual:
                cert["kind"] = "lp_dual";
                cert["dual"] = c.dual;
                break;
        }
        cert["message"] = c.message;
        out["certificate"] = cert;
    } else {
        out["certificate"] = json();
    }
    return out;
}

json remark_gap_to_json(const RemarkGapReport& report) {
    return json{{"feasibility", feasibility_to_json(report.feasibility)},
                {"gap_present", report.gap_present},
                {"interpretation", report.interpretation}};
}

} // namespace chsh
