#ifndef NASHCERT_REPORT_HPP
#define NASHCERT_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "nashcert/blowup.hpp"
#include "nashcert/cax2.hpp"
#include "nashcert/lattice.hpp"

namespace nashcert {

// Reports are deterministic byte-for-byte for identical inputs and version:
// insertion-ordered keys, rationals as "p/q" strings, no timestamps.
using Json = nlohmann::ordered_json;

Json json_rat(const Rat& r);
Json json_coords(const std::vector<Rat>& v);

Json report_envelope(const std::string& command, Json input_echo, Json result,
                     std::vector<std::string> warnings);

Json lattice_point_json(const LatticePoint& p);
Json terminality_json(const TerminalityResult& t);
Json nash_result_json(const NashResult& r);
Json chart_json(const ChartModel& ch);
Json singular_report_json(const SingularPointReport& rep);
Json quotient_scan_json(const QuotientPointScan& q);
Json certificate_json(const NashCertificate& cert);

std::string render_report(const Json& report);

}  // namespace nashcert

#endif
