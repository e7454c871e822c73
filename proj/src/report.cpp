#include "nashcert/report.hpp"

#include "nashcert/version.hpp"

namespace nashcert {

Json json_rat(const Rat& r) { return rat_str(r); }

Json json_coords(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const Rat& r : v) a.push_back(json_rat(r));
    return a;
}

static Json json_coords4(const std::array<Rat, kNumVars>& v) {
    Json a = Json::array();
    for (const Rat& r : v) a.push_back(json_rat(r));
    return a;
}

Json report_envelope(const std::string& command, Json input_echo, Json result,
                     std::vector<std::string> warnings) {
    Json r;
    r["tool"] = kToolName;
    r["version"] = kToolVersion;
    r["command"] = command;
    r["input"] = std::move(input_echo);
    r["result"] = std::move(result);
    r["warnings"] = warnings;
    return r;
}

Json lattice_point_json(const LatticePoint& p) {
    Json j;
    j["coords"] = json_coords(p.coords);
    j["level"] = json_rat(p.level);
    return j;
}

Json terminality_json(const TerminalityResult& t) {
    Json j;
    j["terminal"] = t.terminal;
    if (t.witness) j["witness"] = lattice_point_json(*t.witness);
    return j;
}

Json nash_result_json(const NashResult& r) {
    Json j;
    Json vals = Json::array();
    for (const NashValuation& v : r.valuations) {
        Json e = lattice_point_json(v.point);
        e["discrepancy"] = json_rat(v.discrepancy);
        vals.push_back(std::move(e));
    }
    j["valuations"] = std::move(vals);
    j["cone_terminal"] = r.cone_terminal;
    j["complete"] = r.complete;
    j["checked_level"] = json_rat(r.checked_level);
    j["box_extent"] = r.box_extent;
    if (!r.undominated.empty()) {
        Json u = Json::array();
        for (const LatticePoint& p : r.undominated) u.push_back(lattice_point_json(p));
        j["undominated"] = std::move(u);
    }
    return j;
}

Json chart_json(const ChartModel& ch) {
    Json j;
    j["chart"] = ch.index;
    j["quotient_action"] = ch.quotient.str();
    j["quotient_index"] = ch.quotient_index;
    j["strict_phi"] = ch.strict_phi.str();
    j["wt_phi"] = json_rat(ch.wt_phi);
    j["empty_chart"] = ch.empty_chart;
    return j;
}

Json singular_report_json(const SingularPointReport& rep) {
    Json j;
    j["chart"] = rep.chart_index;
    Json pts = Json::array();
    for (const auto& p : rep.points) pts.push_back(json_coords4(p));
    j["points"] = std::move(pts);
    Json certs = Json::array();
    for (const auto& c : rep.certificates) {
        Json e;
        e["description"] = c.description();
        e["verified"] = c.fully_verified;
        certs.push_back(std::move(e));
    }
    j["certificates"] = std::move(certs);
    j["requires_elimination"] = rep.requires_elimination;
    j["notes"] = rep.notes;
    return j;
}

Json quotient_scan_json(const QuotientPointScan& q) {
    Json j;
    j["origin_singular"] = q.origin_singular;
    j["origin_index"] = q.origin_index;
    Json pts = Json::array();
    for (const auto& p : q.extra_points) {
        Json e;
        e["coords"] = json_coords4(p.coords);
        e["index"] = p.index;
        pts.push_back(std::move(e));
    }
    j["extra_points"] = std::move(pts);
    j["requires_elimination"] = q.requires_elimination;
    j["notes"] = q.notes;
    return j;
}

Json certificate_json(const NashCertificate& cert) {
    Json j;
    j["input"] = cert.input;
    j["type"] = mori_type_name(cert.type);
    j["case"] = cert.form_case == CAx2Case::case1 ? 1 : 2;
    if (cert.sign) j["sign"] = *cert.sign == Case2Sign::plus ? "+" : "-";
    j["tau0"] = cert.tau0_value;
    j["weight"] = cert.weight.str();
    j["discrepancy"] = json_rat(cert.discrepancy);
    j["working_equation"] = cert.working_phi.str();

    Json charts = Json::array();
    for (const ChartSummary& cs : cert.charts) {
        Json e;
        e["model"] = chart_json(cs.model);
        e["jacobian"] = singular_report_json(cs.jacobian);
        e["quotient"] = quotient_scan_json(cs.quotient);
        e["vacuous"] = cs.vacuous;
        charts.push_back(std::move(e));
    }
    j["charts"] = std::move(charts);

    Json entries = Json::array();
    for (const PointEntry& p : cert.entries) {
        Json e;
        e["chart"] = p.chart_index;
        switch (p.kind) {
            case PointEntry::Kind::quotient_point: e["kind"] = "quotient"; break;
            case PointEntry::Kind::jacobian_point: e["kind"] = "jacobian"; break;
            case PointEntry::Kind::algebraic_certificate: e["kind"] = "certificate"; break;
        }
        e["point"] = p.point;
        if (p.quotient_index > 1) e["quotient_index"] = p.quotient_index;
        e["h"] = p.h.str();
        e["val_E_h"] = json_rat(p.val_E_h);
        e["strict_transform_vanishes"] = p.strict_vanishes;
        if (p.conclusion) {
            Json c;
            c["lower_bound"] = json_rat(p.conclusion->lower_bound);
            c["strict"] = p.conclusion->strict;
            c["chain"] = p.conclusion->inequality_chain;
            c["conclusion"] =
                "val_F(h) > val_E(h) for every divisor F centered at the point";
            e["non_domination"] = std::move(c);
        }
        e["ok"] = p.ok;
        entries.push_back(std::move(e));
    }
    j["points"] = std::move(entries);
    j["warnings"] = cert.warnings;
    j["obstructions"] = cert.obstructions;
    j["verdict"] = cert.verified() ? "verified" : "incomplete";
    return j;
}

std::string render_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace nashcert
