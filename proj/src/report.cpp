#include "fricke/report.hpp"

#include <stdexcept>

namespace fricke::report {

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + name + "' (expected json or csv)");
}

std::string real_text(const Real& x, int digits) { return x.to_string(digits); }

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

std::string CsvWriter::field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw std::logic_error("CsvWriter: row width differs from header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ += ',';
        out_ += field(fields[i]);
    }
    out_ += "\r\n";
}

nlohmann::json series_json(const std::string& name, int weight, const LaurentSeries& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int n = s.valuation(); n <= s.trunc_order(); ++n) coeffs.push_back(s[n].get_str());
    return {{"form", name},
            {"weight", weight},
            {"valuation", s.true_valuation()},
            {"first_exponent", s.valuation()},
            {"order", s.trunc_order()},
            {"integral", s.is_integral()},
            {"coefficients", std::move(coeffs)}};
}

std::string series_csv(const LaurentSeries& s) {
    CsvWriter w({"n", "coefficient"});
    for (int n = s.valuation(); n <= s.trunc_order(); ++n) w.row({std::to_string(n), s[n].get_str()});
    return w.str();
}

nlohmann::json basis_json(const basis::BasisForm& b, bool emit_poly) {
    nlohmann::json j = basis::to_json(b);
    if (!emit_poly) j.erase("poly");
    j["degree"] = b.degree();
    j["ell"] = b.decomp.ell;
    j["r"] = b.decomp.r;
    j["eps"] = b.decomp.eps;
    return j;
}

std::string basis_csv(const basis::BasisForm& b, bool emit_poly) {
    CsvWriter w({"kind", "index", "coefficient"});
    if (emit_poly) {
        for (std::size_t i = 0; i < b.poly.size(); ++i) w.row({"poly", std::to_string(i), b.poly[i].get_str()});
    }
    for (int n = b.series.valuation(); n <= b.series.trunc_order(); ++n) {
        w.row({"series", std::to_string(n), b.series[n].get_str()});
    }
    return w.str();
}

nlohmann::json zeros_json(const arc::ArcZeroReport& rep, const std::vector<arc::ArcSample>& at_zeros) {
    nlohmann::json zeros = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.zeros.size(); ++i) {
        nlohmann::json z = {{"theta", rep.zeros[i].theta}, {"in_tail", rep.zeros[i].in_tail}};
        if (i < at_zeros.size()) {
            z["h"] = real_text(at_zeros[i].h_value);
            z["alpha"] = real_text(at_zeros[i].alpha);
            z["two_cos_alpha"] = real_text(at_zeros[i].two_cos_alpha);
            z["residual"] = real_text(at_zeros[i].imag_residual, 6);
        }
        zeros.push_back(std::move(z));
    }
    return {{"k", rep.k},
            {"m", rep.m},
            {"zeros", std::move(zeros)},
            {"count", rep.zeros.size()},
            {"expected_count", rep.expected_count},
            {"s", rep.s},
            {"t", rep.t},
            {"corner_left_value", rep.corner_left_value},
            {"corner_right_value", rep.corner_right_value},
            {"corner_left_small", rep.corner_left_small},
            {"corner_right_small", rep.corner_right_small},
            {"grid_points", rep.grid_points},
            {"precision_bits", rep.precision_bits},
            {"tolerance", rep.tolerance},
            {"max_imag_residual_log2", rep.max_imag_residual_log2},
            {"rescan_recommended", rep.rescan_recommended},
            {"pass", rep.pass}};
}

std::string zeros_csv(const std::vector<arc::ArcSample>& at_zeros) {
    CsvWriter w({"theta", "h", "alpha", "two_cos_alpha", "residual"});
    for (const auto& s : at_zeros) {
        w.row({real_text(s.theta), real_text(s.h_value), real_text(s.alpha), real_text(s.two_cos_alpha),
               real_text(s.imag_residual, 6)});
    }
    return w.str();
}

namespace {

nlohmann::json complex_json(const Complex& z) { return {{"re", real_text(z.re)}, {"im", real_text(z.im)}}; }

const char* regime_name(contour::Regime r) { return r == contour::Regime::Low ? "low" : "high"; }

}  // namespace

nlohmann::json identity_json(const contour::IdentityReport& rep) {
    return {{"k", rep.k},
            {"m", rep.m},
            {"theta", rep.theta},
            {"regime", regime_name(rep.regime)},
            {"lhs", real_text(rep.lhs)},
            {"rhs", real_text(rep.rhs)},
            {"rhs_imag", real_text(rep.rhs_imag, 6)},
            {"residual", real_text(rep.residual, 6)},
            {"nodes", rep.nodes},
            {"quadrature_change", real_text(rep.quadrature_change, 6)},
            {"parts",
             {{"integral", complex_json(rep.integral)},
              {"residues", complex_json(rep.residues)},
              {"B", real_text(rep.B)},
              {"C", real_text(rep.C)}}}};
}

std::string identity_csv(const contour::IdentityReport& rep) {
    CsvWriter w({"k", "m", "theta", "regime", "lhs", "rhs", "residual", "integral", "residues", "B", "C", "nodes"});
    w.row({std::to_string(rep.k), std::to_string(rep.m), real_text(Real(rep.theta), 17), regime_name(rep.regime),
           real_text(rep.lhs), real_text(rep.rhs), real_text(rep.residual, 6), real_text(rep.integral.re),
           real_text(rep.residues.re), real_text(rep.B), real_text(rep.C), std::to_string(rep.nodes)});
    return w.str();
}

nlohmann::json bounds_json(const std::vector<bounds::BoundReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back({{"name", r.name},
                       {"printed_value", r.printed_value},
                       {"relation", bounds::to_string(r.relation)},
                       {"bound_value", real_text(r.bound_value)},
                       {"computed_extremum", real_text(r.computed_extremum)},
                       {"margin", real_text(r.margin, 10)},
                       {"grid",
                        {{"points", r.grid.points},
                         {"spacing", r.grid.spacing},
                         {"precision_bits", r.grid.precision_bits}}},
                       {"status", bounds::to_string(r.status)},
                       {"reproduced", r.reproduced},
                       {"note", r.note}});
    }
    return {{"reports", std::move(arr)}, {"all_pass", bounds::all_pass(reports)}};
}

std::string bounds_csv(const std::vector<bounds::BoundReport>& reports) {
    CsvWriter w({"name", "printed_value", "relation", "bound_value", "computed_extremum", "margin", "grid_points",
                 "grid_spacing", "precision_bits", "status", "reproduced", "note"});
    for (const auto& r : reports) {
        w.row({r.name, r.printed_value, bounds::to_string(r.relation), real_text(r.bound_value),
               real_text(r.computed_extremum), real_text(r.margin, 10), std::to_string(r.grid.points),
               real_text(Real(r.grid.spacing), 10), std::to_string(r.grid.precision_bits),
               bounds::to_string(r.status), r.reproduced ? "true" : "false", r.note});
    }
    return w.str();
}

}  // namespace fricke::report
