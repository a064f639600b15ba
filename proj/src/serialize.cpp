#include "branchlab/serialize.hpp"

#include <sstream>

namespace branchlab {

namespace {

std::string csv_cell(const Json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    if (v.is_array() || v.is_object()) {
        std::string s = v.dump();
        return csv_cell(Json(s));
    }
    return v.dump();
}

void flatten(const Json& v, const std::string& prefix, std::ostringstream& out) {
    if (v.is_object()) {
        for (const auto& [key, item] : v.items()) flatten(item, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    out << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Rational& q) { return q.get_str(); }

Json to_json(const RationalPoly& p) {
    Json coeffs = Json::array();
    for (const Rational& c : p.coeffs()) coeffs.push_back(to_json(c));
    return {{"variable", to_string(p.variable())},
            {"degree", p.degree()},
            {"coefficients", coeffs},
            {"text", p.to_string()}};
}

Json to_json(const EvalReport& r) {
    return {{"value", to_json(r.value)},
            {"residual", r.residual},
            {"ek_residual", r.ek_residual},
            {"method", to_string(r.method)},
            {"steps", r.steps}};
}

Json to_json(const SeriesFrame& f) {
    return {{"k", f.k},
            {"x", to_json(f.x)},
            {"variant", to_string(f.variant)},
            {"K", to_json(f.K)},
            {"M", to_json(f.M)},
            {"k_eq", f.k_eq}};
}

Json to_json(const SeriesResult& r) {
    return {{"value", to_json(r.value)},
            {"terms_used", r.terms_used},
            {"last_term_magnitude", r.last_term_magnitude},
            {"converged_flag", r.converged_flag},
            {"margin", r.margin},
            {"tail_estimate", r.tail_estimate}};
}

Json to_json(const SumReport& r) {
    Json trend = Json::array();
    for (const auto& [K, err] : r.err_trend) trend.push_back({{"K", K}, {"abs_err", err}});
    Json j{{"id", to_string(r.id)},
           {"x", to_json(r.x)},
           {"t", to_json(r.t)},
           {"K", r.K},
           {"partial", to_json(r.partial)},
           {"closed_form", to_json(r.closed_form)},
           {"abs_err", r.abs_err},
           {"rel_err", r.rel_err},
           {"err_trend", trend},
           {"accelerated", r.accelerated},
           {"asymmetric", r.asymmetric},
           {"informational", r.informational}};
    if (r.cross_relation_err) j["cross_relation_err"] = *r.cross_relation_err;
    return j;
}

Json to_json(const IntegralDetail& d) {
    auto quad = [](const QuadResult& q) {
        return Json{{"value", to_json(q.value)},
                    {"error_estimate", q.error_estimate},
                    {"level", q.level},
                    {"evaluations", q.evaluations}};
    };
    return {{"case", to_string(d.setup.which)},
            {"P", d.setup.P},
            {"K", to_json(d.setup.K)},
            {"N", to_json(d.N)},
            {"D", to_json(d.D)},
            {"numerator_integral", quad(d.numerator_integral)},
            {"denominator_integral", quad(d.denominator_integral)}};
}

Json to_json(const JensenReport& r) {
    return {{"K", r.K},
            {"x", r.x},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"residual", r.residual},
            {"integral", r.integral.value},
            {"integral_error_estimate", r.integral.error_estimate},
            {"points", r.integral.points},
            {"contour_clearance", r.integral.clearance}};
}

Json to_json(const RootReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.roots.size(); ++i) rows.push_back({{"index", i + 1}, {"root", r.roots[i]}});
    return {{"n", r.n},
            {"roots", rows},
            {"zero_root", r.zero_root},
            {"isolation_certified", r.isolation_certified},
            {"expected", r.expected},
            {"residual_max", r.residual_max},
            {"grid_points", r.grid_points}};
}

Json to_json(const FitReport& f) {
    Json rows = Json::array();
    for (const auto& [n, est] : f.estimates) {
        Json row{{"n", n}, {"estimate", est}, {"extrapolated", nullptr}};
        for (const auto& [m, ext] : f.extrapolation_table)
            if (m == n) row["extrapolated"] = ext;
        rows.push_back(row);
    }
    return {{"k", f.k},
            {"n_lo", f.n_lo},
            {"n_hi", f.n_hi},
            {"step", f.step},
            {"table", rows},
            {"c0_estimate", f.c0_estimate},
            {"extrapolation_error", f.extrapolation_error},
            {"failures", f.failures}};
}

Json to_json(const JthRootRow& row) {
    return {{"j", row.j}, {"root", row.root}, {"predicted", row.predicted}, {"gap", row.gap}};
}

Json to_json(const PolyVerifyReport& r) {
    Json j{{"id", to_string(r.id)}, {"n_min", r.n_min}, {"n_max", r.n_max}, {"passed", r.passed()}};
    j["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
    return j;
}

std::string to_csv(const Json& result, std::string_view rows_key) {
    std::ostringstream out;
    const std::string key(rows_key);
    if (!key.empty() && result.contains(key) && result[key].is_array()) {
        const Json& rows = result[key];
        if (rows.empty()) return "";
        bool first = true;
        for (const auto& [name, v] : rows[0].items()) {
            out << (first ? "" : ",") << name;
            first = false;
        }
        out << "\n";
        for (const Json& row : rows) {
            first = true;
            for (const auto& [name, v] : rows[0].items()) {
                out << (first ? "" : ",") << (row.contains(name) ? csv_cell(row[name]) : "");
                first = false;
            }
            out << "\n";
        }
        return out.str();
    }
    out << "key,value\n";
    for (const auto& [name, v] : result.items()) out << name << "," << csv_cell(v) << "\n";
    return out.str();
}

std::string to_text(const Json& doc) {
    std::ostringstream out;
    flatten(doc, "", out);
    return out.str();
}

}  // namespace branchlab
