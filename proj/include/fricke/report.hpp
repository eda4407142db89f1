#pragma once

// JSON and CSV renderings of everything the command line prints. Reals are
// written as decimal strings ('.' separator, 20 significant digits) so that
// output does not depend on the locale or on double rounding.

#include "fricke/arc.hpp"
#include "fricke/basis.hpp"
#include "fricke/bounds.hpp"
#include "fricke/contour.hpp"
#include "fricke/qseries.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fricke::report {

enum class Format { Json, Csv };

// "json" or "csv"; throws std::invalid_argument otherwise.
Format parse_format(const std::string& name);

std::string real_text(const Real& x, int digits = 20);

// RFC 4180: CRLF line ends, fields quoted only when they contain a comma,
// quote or line break, embedded quotes doubled.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& fields);
    const std::string& str() const { return out_; }

    static std::string field(const std::string& s);

private:
    std::size_t width_;
    std::string out_;
};

nlohmann::json series_json(const std::string& name, int weight, const LaurentSeries& s);
std::string series_csv(const LaurentSeries& s);

nlohmann::json basis_json(const basis::BasisForm& b, bool emit_poly);
std::string basis_csv(const basis::BasisForm& b, bool emit_poly);

// `at_zeros` holds the arc sample at each located zero, in order.
nlohmann::json zeros_json(const arc::ArcZeroReport& rep, const std::vector<arc::ArcSample>& at_zeros);
std::string zeros_csv(const std::vector<arc::ArcSample>& at_zeros);

nlohmann::json identity_json(const contour::IdentityReport& rep);
std::string identity_csv(const contour::IdentityReport& rep);

nlohmann::json bounds_json(const std::vector<bounds::BoundReport>& reports);
std::string bounds_csv(const std::vector<bounds::BoundReport>& reports);

}  // namespace fricke::report
