#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumploci/exact_scalars.hpp"

namespace jumploci {

inline constexpr const char* tool_version = "1.0.0";

struct AnalysisConfig {
    std::string command;  // analyze ng certify orbit dims weights finite-cover cover higgs
    std::string input;    // presentation JSON (or torus model JSON for higgs)
    int degree = 1;
    long multiplicity = 1;
    long K = 6;
    long genus = 2;
    int N = 2;
    std::string variant = "B";
    bool numeric_fallback = false;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
    std::size_t n = 1;
    std::string relations;  // "1,-2;0,1"
    std::string moduli;     // "4,2"
    std::string angles;     // "0,1/2"
    std::string torsion;    // "1/3"
    std::string output;

    nlohmann::json to_json() const;
};

std::vector<Rational> parse_rational_list(const std::string& text, const std::string& what);
std::vector<std::vector<long>> parse_integer_rows(const std::string& text, const std::string& what);

/// The result block of a report. Throws ParseError, DomainError, Refusal.
nlohmann::json run_command(const AnalysisConfig& c);

/// Full report: version, config echo and result; keys sorted.
std::string render_report(const AnalysisConfig& c, const nlohmann::json& result);

/// One or two lines for a terminal; printed when the report goes to a file.
std::string summarize(const AnalysisConfig& c, const nlohmann::json& result);

/// Runs the command and writes the report. Exit code 0 on success, 1 on
/// parse or input errors, 2 on refusals.
int run(const AnalysisConfig& c, std::ostream& out, std::ostream& err);

}  // namespace jumploci
