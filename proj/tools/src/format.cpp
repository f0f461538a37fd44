#include <algorithm>
#include <cmath>
#include <sstream>

#include "cli_internal.hpp"

namespace mhk::cli {

namespace {

double parse_real(const std::string& text, const std::string& whole) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw DomainError("cannot parse number '" + whole + "'");
    }
    if (pos != text.size())
        throw DomainError("cannot parse number '" + whole + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

Complex parse_complex(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty())
        throw DomainError("empty complex number");
    if (text.back() != 'i')
        return {parse_real(text, raw), 0.0};
    const std::string body = text.substr(0, text.size() - 1);
    // split at the last sign that is not leading and not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return parse_real(t, raw);
    };
    if (split == std::string::npos)
        return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, split), raw), imag_part(body.substr(split))};
}

CVector parse_point(const std::string& text, int n) {
    CVector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(parse_complex(item));
    if (static_cast<int>(v.size()) > n)
        throw DimensionMismatch("point '" + text + "' has more than n = " + std::to_string(n) +
                                " coordinates");
    v.resize(n, Complex(0.0, 0.0));
    return v;
}

Json to_json(Complex z) {
    Json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

Json to_json(const CVector& v) {
    Json j = Json::array();
    for (const auto& c : v)
        j.push_back(to_json(c));
    return j;
}

Json report_json(const OracleReport& rep) {
    Json j;
    j["identity"] = rep.identity_name;
    j["lhs"] = to_json(rep.lhs);
    j["rhs"] = to_json(rep.rhs);
    j["abs_error"] = rep.abs_error;
    j["rel_error"] = rep.rel_error;
    Json b = Json::object();
    for (const auto& [k, v] : rep.budget)
        b[k] = v;
    j["budget"] = b;
    if (rep.seed)
        j["seed"] = *rep.seed;
    else
        j["seed"] = nullptr;
    return j;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "." + std::to_string(i), out);
    } else if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.find_first_of(",\"\n") != std::string::npos) {
            std::string q = "\"";
            for (char c : s)
                q += c == '"' ? std::string("\"\"") : std::string(1, c);
            s = q + "\"";
        }
        out.emplace_back(prefix, s);
    } else if (j.is_null()) {
        out.emplace_back(prefix, "");
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

}  // namespace

// Columns are the union of flattened keys in order of first appearance.
std::string to_csv(const Json& records) {
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    std::vector<std::string> columns;
    for (const auto& r : records) {
        rows.emplace_back();
        flatten(r, "", rows.back());
        for (const auto& [k, v] : rows.back())
            if (std::find(columns.begin(), columns.end(), k) == columns.end())
                columns.push_back(k);
    }
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c)
                os << ",";
            for (const auto& [k, v] : row)
                if (k == columns[c]) {
                    os << v;
                    break;
                }
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace mhk::cli
