#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "efron_dual/common.hpp"
#include "efron_dual/montecarlo.hpp"

namespace efron_dual::report {

// ordered_json keeps insertion order, which pins the field order of the
// schema and makes serialize -> parse -> serialize byte-identical.
using json = nlohmann::ordered_json;

inline json to_json(const mc::MomentEstimate& e) {
    return json{{"mean", e.mean}, {"stderr", e.std_error}, {"reps", e.replications}};
}

inline json to_json(const mc::IdentityReport& r) {
    return json{
        {"identity", r.identity},
        {"body", r.body},
        {"parameters", json{{"n", r.n}, {"k", r.k}, {"m", r.m}, {"j", r.j}}},
        {"lhs", to_json(r.lhs)},
        {"rhs", to_json(r.rhs)},
        {"z_score", r.z_score},
        {"tolerance_sigma", r.tolerance_sigma},
        {"pass", r.pass},
        {"master_seed", r.master_seed},
        {"artifact_version", artifact_version},
    };
}

inline mc::MomentEstimate estimate_from_json(const json& j) {
    mc::MomentEstimate e;
    e.mean = j.at("mean").get<double>();
    e.std_error = j.at("stderr").get<double>();
    e.replications = j.at("reps").get<std::size_t>();
    return e;
}

inline mc::IdentityReport report_from_json(const json& j) {
    mc::IdentityReport r;
    r.identity = j.at("identity").get<std::string>();
    r.body = j.at("body").get<std::string>();
    const auto& p = j.at("parameters");
    r.n = p.at("n").get<long>();
    r.k = p.at("k").get<long>();
    r.m = p.at("m").get<long>();
    r.j = p.at("j").get<long>();
    r.lhs = estimate_from_json(j.at("lhs"));
    r.rhs = estimate_from_json(j.at("rhs"));
    r.z_score = j.at("z_score").get<double>();
    r.tolerance_sigma = j.at("tolerance_sigma").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    return r;
}

inline std::string serialize(const mc::IdentityReport& r) {
    return to_json(r).dump(2) + "\n";
}

inline constexpr const char* csv_header =
    "identity,body,n,k,m,j,lhs_mean,lhs_stderr,lhs_reps,rhs_mean,rhs_stderr,"
    "rhs_reps,z_score,tolerance_sigma,pass,master_seed,artifact_version";

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Splits one CSV record, honoring double-quoted fields.
inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::string csv_row(const mc::IdentityReport& r) {
    // reuse the JSON double formatting (shortest round-trip form)
    auto num = [](double x) { return json(x).dump(); };
    std::ostringstream out;
    out << csv_quote(r.identity) << ',' << csv_quote(r.body) << ',' << r.n << ','
        << r.k << ',' << r.m << ',' << r.j << ',' << num(r.lhs.mean) << ','
        << num(r.lhs.std_error) << ',' << r.lhs.replications << ','
        << num(r.rhs.mean) << ',' << num(r.rhs.std_error) << ','
        << r.rhs.replications << ',' << num(r.z_score) << ','
        << num(r.tolerance_sigma) << ',' << (r.pass ? "true" : "false") << ','
        << r.master_seed << ',' << artifact_version;
    return out.str();
}

inline mc::IdentityReport report_from_csv_row(const std::string& line) {
    const auto f = csv_split(line);
    if (f.size() != 17)
        throw std::runtime_error("csv report row: expected 17 fields");
    mc::IdentityReport r;
    r.identity = f[0];
    r.body = f[1];
    r.n = std::stol(f[2]);
    r.k = std::stol(f[3]);
    r.m = std::stol(f[4]);
    r.j = std::stol(f[5]);
    r.lhs.mean = std::stod(f[6]);
    r.lhs.std_error = std::stod(f[7]);
    r.lhs.replications = std::stoull(f[8]);
    r.rhs.mean = std::stod(f[9]);
    r.rhs.std_error = std::stod(f[10]);
    r.rhs.replications = std::stoull(f[11]);
    r.z_score = std::stod(f[12]);
    r.tolerance_sigma = std::stod(f[13]);
    if (f[14] != "true" && f[14] != "false")
        throw std::runtime_error("csv report row: bad pass field");
    r.pass = f[14] == "true";
    r.master_seed = std::stoull(f[15]);
    return r;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Merge previously emitted report files (JSON object, JSON array, or CSV)
/// into one document with stable field order.
inline std::vector<mc::IdentityReport> load_reports(
    const std::vector<std::string>& paths) {
    std::vector<mc::IdentityReport> out;
    for (const auto& path : paths) {
        const std::string text = read_file(path);
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos &&
            (text[first] == '{' || text[first] == '[')) {
            const json doc = json::parse(text);
            if (doc.is_array())
                for (const auto& item : doc) out.push_back(report_from_json(item));
            else
                out.push_back(report_from_json(doc));
            continue;
        }
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != csv_header)
            throw std::runtime_error(path + ": neither JSON nor a report CSV");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            out.push_back(report_from_csv_row(line));
        }
    }
    return out;
}

inline std::string merge_to_json(const std::vector<mc::IdentityReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

inline std::string merge_to_csv(const std::vector<mc::IdentityReport>& reports) {
    std::ostringstream out;
    out << csv_header << '\n';
    for (const auto& r : reports) out << csv_row(r) << '\n';
    return out.str();
}

} // namespace efron_dual::report
