#include "lambertheta/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace lambertheta {

namespace {

using Json = nlohmann::ordered_json;

std::string number(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s) { return Json(s).dump(); }

std::string scalar_pair(Scalar v) { return "[" + number(v.real()) + "," + number(v.imag()) + "]"; }

std::string eval_json(const std::optional<EvalResult>& r) {
    if (!r) return "null";
    return "{\"value\":" + scalar_pair(r->value) + ",\"terms\":" + std::to_string(r->terms_used) +
           ",\"tail\":" + number(r->tail_estimate) + ",\"converged\":" + (r->converged ? "true" : "false") + "}";
}

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, "malformed report JSON: " + what);
}

double read_number(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        malformed("number string '" + s + "'");
    }
    if (!j.is_number()) malformed("expected a number");
    return j.get<double>();
}

Scalar read_scalar(const Json& j) {
    if (!j.is_array() || j.size() != 2) malformed("expected [re, im]");
    return {read_number(j[0]), read_number(j[1])};
}

std::optional<EvalResult> read_eval(const Json& j) {
    if (j.is_null()) return std::nullopt;
    EvalResult r;
    r.value = read_scalar(j.at("value"));
    r.terms_used = j.at("terms").get<std::int64_t>();
    r.tail_estimate = read_number(j.at("tail"));
    r.converged = j.at("converged").get<bool>();
    return r;
}

IdentityReport read_report(const Json& j) {
    IdentityReport r;
    r.family = j.at("family").get<std::string>();
    r.spec = j.at("spec").get<std::string>();
    r.form = j.at("form").get<std::string>();
    for (const auto& [name, value] : j.at("params").items()) r.params.emplace_back(name, read_scalar(value));
    r.lhs = read_eval(j.at("lhs"));
    r.rhs = read_eval(j.at("rhs"));
    r.abs_gap = read_number(j.at("abs_gap"));
    r.rel_gap = read_number(j.at("rel_gap"));
    r.tol = read_number(j.at("tol"));
    const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
    if (!verdict) malformed("unknown verdict");
    r.verdict = *verdict;
    r.reason = j.at("reason").get<std::string>();
    for (const auto& f : j.at("flags")) r.flags.push_back(f.get<std::string>());
    return r;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string short_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string report_to_json(const IdentityReport& r) {
    std::string out = "{\"family\":" + quoted(r.family) + ",\"spec\":" + quoted(r.spec) +
                      ",\"form\":" + quoted(r.form) + ",\"params\":{";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (i) out += ",";
        out += quoted(r.params[i].first) + ":" + scalar_pair(r.params[i].second);
    }
    out += "},\"lhs\":" + eval_json(r.lhs) + ",\"rhs\":" + eval_json(r.rhs);
    out += ",\"abs_gap\":" + number(r.abs_gap) + ",\"rel_gap\":" + number(r.rel_gap) + ",\"tol\":" + number(r.tol);
    out += ",\"verdict\":" + quoted(to_string(r.verdict)) + ",\"reason\":" + quoted(r.reason) + ",\"flags\":[";
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
        if (i) out += ",";
        out += quoted(r.flags[i]);
    }
    return out + "]}";
}

std::string reports_to_json(const std::vector<IdentityReport>& reports) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out += report_to_json(reports[i]);
        out += i + 1 < reports.size() ? ",\n" : "\n";
    }
    return out + "]\n";
}

std::vector<IdentityReport> reports_from_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        malformed(e.what());
    }
    std::vector<IdentityReport> out;
    try {
        if (doc.is_array()) {
            for (const auto& j : doc) out.push_back(read_report(j));
        } else {
            out.push_back(read_report(doc));
        }
    } catch (const Json::exception& e) {
        malformed(e.what());
    }
    return out;
}

std::string reports_to_csv(const std::vector<IdentityReport>& reports) {
    std::ostringstream os;
    os << "family,spec,form,params,lhs_re,lhs_im,lhs_terms,lhs_tail,lhs_converged,"
          "rhs_re,rhs_im,rhs_terms,rhs_tail,rhs_converged,abs_gap,rel_gap,tol,verdict,reason,flags\n";
    auto side = [&](const std::optional<EvalResult>& e) {
        if (!e) {
            os << ",,,,,";
            return;
        }
        os << number(e->value.real()) << ',' << number(e->value.imag()) << ',' << e->terms_used << ','
           << number(e->tail_estimate) << ',' << (e->converged ? "true" : "false") << ',';
    };
    for (const auto& r : reports) {
        std::string params;
        for (std::size_t i = 0; i < r.params.size(); ++i) {
            if (i) params += ';';
            params += r.params[i].first + "=" + format_scalar(r.params[i].second);
        }
        std::string flags;
        for (std::size_t i = 0; i < r.flags.size(); ++i) {
            if (i) flags += ';';
            flags += r.flags[i];
        }
        os << csv_field(r.family) << ',' << csv_field(r.spec) << ',' << csv_field(r.form) << ',' << csv_field(params)
           << ',';
        side(r.lhs);
        side(r.rhs);
        os << number(r.abs_gap) << ',' << number(r.rel_gap) << ',' << number(r.tol) << ',' << to_string(r.verdict)
           << ',' << csv_field(r.reason) << ',' << csv_field(flags) << '\n';
    }
    return os.str();
}

std::string report_to_text(const IdentityReport& r) {
    std::string out = std::string(to_string(r.verdict)) + "  " + r.family + "  " + r.spec;
    if (!r.form.empty()) out += " / " + r.form;
    out += "  (";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (i) out += ", ";
        out += r.params[i].first + "=" + format_scalar(r.params[i].second);
    }
    out += ")";
    if (r.lhs) out += "  lhs=" + format_scalar(r.lhs->value);
    if (r.rhs) out += "  rhs=" + format_scalar(r.rhs->value);
    if (!std::isnan(r.rel_gap)) out += "  rel_gap=" + short_number(r.rel_gap);
    if (!r.reason.empty()) out += "  [" + r.reason + "]";
    for (const auto& f : r.flags) out += "  {" + f + "}";
    return out;
}

}  // namespace lambertheta
