#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nashcert/checks.hpp"
#include "nashcert/dsl.hpp"
#include "nashcert/error.hpp"
#include "nashcert/report.hpp"
#include "nashcert/version.hpp"

using namespace nashcert;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NashError(ErrorKind::parse, "cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_report(const std::string& path, const Json& report) {
    if (path.empty()) return;
    std::string text = render_report(report);
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NashError(ErrorKind::semantic, "cannot write report file: " + path);
    out << text;
}

long long default_box_bound() {
    if (const char* env = std::getenv("NASHCERT_BOX_BOUND")) {
        try {
            long long v = std::stoll(env);
            if (v >= 1) return v;
        } catch (...) {
        }
        throw NashError(ErrorKind::semantic,
                        "NASHCERT_BOX_BOUND must be a positive integer");
    }
    return 1;
}

Rat parse_rat_arg(const std::string& s, const char* what) {
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
    } catch (const NashError&) {
        throw;
    } catch (...) {
        throw NashError(ErrorKind::parse, std::string("cannot parse ") + what + ": " + s);
    }
}

SingularityFile load_singularity(const std::string& path) {
    return parse_singularity(read_file(path), path);
}

WeightSigma resolve_weight(const SingularityFile& file, const std::string& weight_arg) {
    if (!weight_arg.empty()) return parse_weight(weight_arg);
    if (file.weight) return *file.weight;
    throw NashError(ErrorKind::semantic,
                    "no weight given: pass --weight or add a weight clause to the file");
}

int run_toric_analyze(const std::string& lattice_s, const std::string& cone_s,
                      const std::string& json_path) {
    QuotientLattice L = parse_lattice(lattice_s);
    SimplicialCone cone(L, parse_cone_generators(cone_s, L.rank()));
    DualVector dual = gorenstein_dual(cone);
    TerminalityResult term = is_terminal(cone);

    std::cout << "lattice:    " << L.str() << "\n";
    std::cout << "dual m_tau: (";
    for (size_t i = 0; i < dual.size(); ++i) std::cout << (i ? "," : "") << rat_str(dual[i]);
    std::cout << ")\n";
    std::cout << "terminal:   " << (term.terminal ? "yes" : "no") << "\n";
    Json result;
    result["lattice"] = L.str();
    result["dual"] = json_coords(dual);
    result["terminality"] = terminality_json(term);
    if (!term.terminal) {
        std::cout << "witness:    level " << rat_str(term.witness->level) << " point (";
        for (size_t i = 0; i < term.witness->coords.size(); ++i)
            std::cout << (i ? "," : "") << rat_str(term.witness->coords[i]);
        std::cout << ")\n";
    } else {
        std::vector<LatticePoint> low = low_discrepancy_divisors(cone);
        std::cout << "low-discrepancy divisors (level <= 2, all minimal):\n";
        Json tbl = Json::array();
        for (const LatticePoint& p : low) {
            std::cout << "  (";
            for (size_t i = 0; i < p.coords.size(); ++i)
                std::cout << (i ? "," : "") << rat_str(p.coords[i]);
            std::cout << ")  level " << rat_str(p.level) << "  discrepancy "
                      << rat_str(p.level - 1) << "\n";
            Json e = lattice_point_json(p);
            e["discrepancy"] = json_rat(p.level - 1);
            tbl.push_back(std::move(e));
        }
        if (low.empty()) std::cout << "  (none)\n";
        result["low_discrepancy_divisors"] = std::move(tbl);
    }
    Json input;
    input["lattice"] = lattice_s;
    input["cone"] = cone_s;
    write_report(json_path, report_envelope("toric analyze", input, result, {}));
    return 0;
}

int run_toric_nash(const std::string& lattice_s, const std::string& cone_s,
                   const std::string& bound_s, long long box_min,
                   const std::string& json_path) {
    QuotientLattice L = parse_lattice(lattice_s);
    SimplicialCone cone(L, parse_cone_generators(cone_s, L.rank()));
    Rat bound = parse_rat_arg(bound_s, "--bound");
    if (bound <= 0) throw NashError(ErrorKind::semantic, "--bound must be positive");
    NashResult r = nash_valuations(cone, bound, box_min);

    if (!r.cone_terminal)
        std::cout << "warning: cone is not terminal; listing minimal elements anyway\n";
    std::cout << "Nash valuations (minimal elements of S_sigma, level <= " << rat_str(bound)
              << "):\n";
    for (const NashValuation& v : r.valuations) {
        std::cout << "  (";
        for (size_t i = 0; i < v.point.coords.size(); ++i)
            std::cout << (i ? "," : "") << rat_str(v.point.coords[i]);
        std::cout << ")  level " << rat_str(v.point.level) << "  discrepancy "
                  << rat_str(v.discrepancy) << "\n";
    }
    if (r.valuations.empty()) std::cout << "  (none)\n";
    std::cout << (r.complete ? "complete: verified up to box " : "INCOMPLETE beyond box ")
              << r.box_extent << "\n";

    Json input;
    input["lattice"] = lattice_s;
    input["cone"] = cone_s;
    input["bound"] = bound_s;
    std::vector<std::string> warnings;
    if (!r.cone_terminal) warnings.push_back("cone is not terminal");
    write_report(json_path, report_envelope("toric nash", input, nash_result_json(r), warnings));
    return r.complete ? 0 : NashError::exit_code(ErrorKind::incomplete);
}

int run_blowup_chart(const std::string& path, const std::string& weight_arg, int only_chart,
                     const std::string& json_path) {
    SingularityFile file = load_singularity(path);
    Hyperquotient hq = to_hyperquotient(file);
    WeightSigma sigma = resolve_weight(file, weight_arg);
    if (!admissible_weight(hq.action, sigma))
        throw NashError(ErrorKind::semantic, "weight " + sigma.str() +
                                                 " is not admissible for " + hq.action.str());
    Rat disc = discrepancy_of_weight(hq, sigma);
    std::cout << "weight:      " << sigma.str() << "\n";
    std::cout << "wt_sigma:    " << rat_str(wt_sigma(hq.phi, sigma)) << "\n";
    std::cout << "discrepancy: " << rat_str(disc) << "\n";
    Json charts = Json::array();
    for (int i = 1; i <= 4; ++i) {
        if (only_chart != 0 && only_chart != i) continue;
        ChartModel ch = chart(hq, sigma, i);
        std::cout << "chart U" << i << ": quotient " << ch.quotient.str() << " (index "
                  << ch.quotient_index << ")\n";
        std::cout << "  strict transform: " << ch.strict_phi.str() << "\n";
        if (ch.empty_chart) std::cout << "  (unit: the chart misses the strict transform)\n";
        charts.push_back(chart_json(ch));
    }
    Json result;
    result["weight"] = sigma.str();
    result["wt_phi"] = json_rat(wt_sigma(hq.phi, sigma));
    result["discrepancy"] = json_rat(disc);
    result["charts"] = std::move(charts);
    Json input;
    input["file"] = path;
    input["singularity"] = print_singularity(file);
    write_report(json_path, report_envelope("blowup chart", input, result, {}));
    return 0;
}

int run_blowup_valuation(const std::string& path, const std::string& weight_arg,
                         const std::string& h_arg, const std::string& json_path) {
    SingularityFile file = load_singularity(path);
    Hyperquotient hq = to_hyperquotient(file);
    WeightSigma sigma = resolve_weight(file, weight_arg);
    if (!admissible_weight(hq.action, sigma))
        throw NashError(ErrorKind::semantic, "weight " + sigma.str() +
                                                 " is not admissible for " + hq.action.str());
    SparsePoly h = parse_polynomial(h_arg);
    if (!is_semiinvariant(h, hq.action))
        semiinvariant_class(h, hq.action);  // raises the detailed error
    Rat v = val_E(h, sigma);
    std::cout << "h:        " << h.str() << "\n";
    std::cout << "val_E(h): " << rat_str(v) << "\n";
    Json result;
    result["h"] = h.str();
    result["val_E"] = json_rat(v);
    Json charts = Json::array();
    for (int i = 1; i <= 4; ++i) {
        StrictTransform st = strict_transform_factorization(h, sigma, i);
        std::cout << "chart U" << i << ": pull-back = " << kVarNames[i - 1] << "^"
                  << rat_str(st.k) << " * (" << st.g.str() << ")\n";
        Json e;
        e["chart"] = i;
        e["k"] = json_rat(st.k);
        e["g"] = st.g.str();
        charts.push_back(std::move(e));
    }
    result["factorizations"] = std::move(charts);
    Json input;
    input["file"] = path;
    input["weight"] = sigma.str();
    input["h"] = h_arg;
    write_report(json_path, report_envelope("blowup valuation", input, result, {}));
    return 0;
}

int run_cax2_certify(const std::string& path, const std::string& sign_s,
                     const std::string& json_path) {
    SingularityFile file = load_singularity(path);
    Hyperquotient hq = to_hyperquotient(file);
    Case2Sign sign;
    if (sign_s == "+")
        sign = Case2Sign::plus;
    else if (sign_s == "-")
        sign = Case2Sign::minus;
    else
        throw NashError(ErrorKind::semantic, "--sign must be '+' or '-'");
    NashCertificate cert = certify_nash(hq, sign);

    std::cout << "type:        " << mori_type_name(cert.type) << " (case "
              << (cert.form_case == CAx2Case::case1 ? 1 : 2) << ", tau0 = "
              << cert.tau0_value << ")\n";
    std::cout << "weight:      " << cert.weight.str() << "\n";
    std::cout << "discrepancy: " << rat_str(cert.discrepancy) << "\n";
    for (const ChartSummary& cs : cert.charts) {
        std::cout << "chart U" << cs.model.index << ": ";
        if (cs.vacuous) {
            std::cout << "no singular points on E\n";
            continue;
        }
        std::cout << cs.jacobian.points.size() << " rational point(s), "
                  << cs.jacobian.certificates.size() << " certificate(s)"
                  << (cs.quotient.origin_singular
                          ? ", quotient point of index " +
                                std::to_string(cs.quotient.origin_index)
                          : "")
                  << "\n";
    }
    for (const PointEntry& e : cert.entries) {
        std::cout << "  U" << e.chart_index << " " << e.point << ": h = " << e.h.str()
                  << ", val_E(h) = " << rat_str(e.val_E_h) << ", strict transform "
                  << (e.strict_vanishes ? "vanishes" : "DOES NOT vanish") << " -> "
                  << (e.ok ? "ok" : "FAILED") << "\n";
    }
    for (const std::string& w : cert.warnings) std::cout << "warning: " << w << "\n";
    for (const std::string& o : cert.obstructions) std::cout << "obstruction: " << o << "\n";
    std::cout << "verdict: " << (cert.verified() ? "verified" : "incomplete") << "\n";

    Json input;
    input["file"] = path;
    input["singularity"] = print_singularity(file);
    write_report(json_path,
                 report_envelope("cax2 certify", input, certificate_json(cert), cert.warnings));
    return cert.verified() ? 0 : NashError::exit_code(ErrorKind::incomplete);
}

int run_check_paper(const std::string& json_path) {
    std::vector<CheckRow> rows = run_reference_checks();
    size_t idw = 0;
    for (const CheckRow& r : rows) idw = std::max(idw, r.id.size());
    Json tbl = Json::array();
    for (const CheckRow& r : rows) {
        const char* status = r.status == CheckRow::Status::pass ? "PASS"
                             : r.status == CheckRow::Status::warn_expected
                                 ? "WARN-EXPECTED"
                                 : "FAIL";
        std::cout << status << std::string(15 - std::string(status).size(), ' ')
                  << r.id << std::string(idw + 2 - r.id.size(), ' ') << r.description << "\n";
        if (!r.detail.empty()) std::cout << std::string(15, ' ') << "-> " << r.detail << "\n";
        Json e;
        e["id"] = r.id;
        e["description"] = r.description;
        e["status"] = status;
        e["detail"] = r.detail;
        tbl.push_back(std::move(e));
    }
    bool ok = all_checks_pass(rows);
    std::cout << (ok ? "all reference checks passed" : "REFERENCE CHECK FAILURES") << "\n";
    Json result;
    result["rows"] = std::move(tbl);
    result["pass"] = ok;
    write_report(json_path, report_envelope("check paper", Json::object(), result, {}));
    return ok ? 0 : NashError::exit_code(ErrorKind::verification);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 " - exact certificates for terminal 3-fold singularities"};
    app.set_help_flag("--help", "print help");
    app.set_help_all_flag("--help-all", "print help for all subcommands");
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string lattice_s, cone_s, bound_s = "3", json_path;
    long long box_min = 0;
    std::string file_path, weight_arg, h_arg, sign_s = "+";
    int only_chart = 0;

    auto* toric = app.add_subcommand("toric", "lattice and cone computations");
    toric->require_subcommand(1);
    auto* analyze = toric->add_subcommand("analyze",
                                          "terminality, dual vector, discrepancy table");
    analyze->add_option("lattice", lattice_s, "lattice 1/m(a1,...,an)")->required();
    analyze->add_option("cone", cone_s, "'std' or generators '(..);(..);..'")->required();
    analyze->add_option("--json", json_path, "write a JSON report to FILE ('-' for stdout)");

    auto* nash = toric->add_subcommand("nash", "Nash valuations with levels");
    nash->add_option("lattice", lattice_s, "lattice 1/m(a1,...,an)")->required();
    nash->add_option("cone", cone_s, "'std' or generators '(..);(..);..'")->required();
    nash->add_option("--bound", bound_s, "level bound (rational, default 3)");
    nash->add_option("--box", box_min, "minimum enumeration box extent");
    nash->add_option("--json", json_path, "write a JSON report to FILE");

    auto* blowup_cmd = app.add_subcommand("blowup", "weighted blow-up charts");
    blowup_cmd->require_subcommand(1);
    auto* chart_cmd = blowup_cmd->add_subcommand("chart", "chart models and quotient actions");
    chart_cmd->add_option("file", file_path, "singularity file (.sing)")->required();
    chart_cmd->add_option("--weight", weight_arg, "weight 1/m(a,b,c,d)");
    chart_cmd->add_option("--chart", only_chart, "show a single chart (1..4)");
    chart_cmd->add_option("--json", json_path, "write a JSON report to FILE");

    auto* val_cmd = blowup_cmd->add_subcommand("valuation", "val_E and chart factorizations");
    val_cmd->add_option("file", file_path, "singularity file (.sing)")->required();
    val_cmd->add_option("--weight", weight_arg, "weight 1/m(a,b,c,d)");
    val_cmd->add_option("--h", h_arg, "polynomial to evaluate")->required();
    val_cmd->add_option("--json", json_path, "write a JSON report to FILE");

    auto* cax2_cmd = app.add_subcommand("cax2", "cAx/2 certificates");
    cax2_cmd->require_subcommand(1);
    auto* certify = cax2_cmd->add_subcommand("certify", "produce a Nash certificate");
    certify->add_option("file", file_path, "singularity file (.sing)")->required();
    certify->add_option("--sign", sign_s, "case-2 branch: '+' or '-' (default '+')");
    certify->add_option("--json", json_path, "write a JSON report to FILE");

    auto* check_cmd = app.add_subcommand("check", "built-in verification suites");
    check_cmd->require_subcommand(1);
    auto* paper_cmd =
        check_cmd->add_subcommand("paper", "reproduce the published reference computations");
    paper_cmd->add_option("--json", json_path, "write a JSON report to FILE");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : NashError::exit_code(ErrorKind::parse);
    }

    try {
        if (analyze->parsed()) return run_toric_analyze(lattice_s, cone_s, json_path);
        if (nash->parsed()) {
            long long box = box_min > 0 ? box_min : default_box_bound();
            return run_toric_nash(lattice_s, cone_s, bound_s, box, json_path);
        }
        if (chart_cmd->parsed())
            return run_blowup_chart(file_path, weight_arg, only_chart, json_path);
        if (val_cmd->parsed())
            return run_blowup_valuation(file_path, weight_arg, h_arg, json_path);
        if (certify->parsed()) return run_cax2_certify(file_path, sign_s, json_path);
        if (paper_cmd->parsed()) return run_check_paper(json_path);
    } catch (const NashError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return NashError::exit_code(ErrorKind::internal);
    }
    return 0;
}
