#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "efron_dual/common.hpp"
#include "efron_dual/duality.hpp"
#include "efron_dual/exact.hpp"

namespace efron_dual::oracle {

/// E[(range of n i.i.d. uniforms on a unit interval)^k], exact. The range
/// follows a Beta(n-1, 2) law, so the k-th moment is
/// prod_{i=0}^{k-1} (n-1+i)/(n+1+i); a single point has zero range. The
/// closed form is cross-checked against brute-force numerical integration
/// in the test suite before anything relies on it.
inline BigRat interval_volume_moment(long n, long k) {
    if (n < 1 || k < 1)
        throw ContractViolation("interval_volume_moment: need n, k >= 1");
    if (n == 1) return BigRat(0);
    BigRat m(1);
    for (long i = 0; i < k; ++i) m *= rat(n - 1 + i, n + 1 + i);
    return m;
}

/// Vertex count of a 1-D hull is deterministic: 1 point for m = 1, the two
/// endpoints for m >= 2 (ties have probability zero).
inline duality::DiscreteLaw interval_vertex_law(long m) {
    if (m < 1) throw ContractViolation("interval_vertex_law: need m >= 1");
    return duality::DiscreteLaw::point_mass(m == 1 ? 1 : 2);
}

/// Exact expectation of f under a finitely supported law.
inline BigRat brute_force_expectation(
    const duality::DiscreteLaw& law,
    const std::function<BigRat(long)>& f) {
    law.validate();
    return law.expectation(f);
}

/// Exact Eq. (4) chain for interval bodies:
///   E(N_{n+k})_(k) / (n+k)_(k) == sum_j (-1)^j C(k,j) E V^j_{n+k-j} / volK^j
/// with the left side from the deterministic vertex law and the right side
/// from the Beta-moment closed form (the j = 0 term is 1).
inline bool interval_eq4_exact(long n, long k) {
    const auto law = interval_vertex_law(n + k);
    const BigRat lhs = duality::factorial_moment_ratio(law, n + k, k);
    BigRat rhs(0);
    for (long j = 0; j <= k; ++j) {
        const BigRat mom =
            j == 0 ? BigRat(1) : interval_volume_moment(n + k - j, j);
        const BigRat term = BigRat(binomial(k, j)) * mom;
        rhs += (j % 2 == 0) ? term : -term;
    }
    return lhs == rhs;
}

enum class Provenance { closed_form, brute_force, high_rep_simulation };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed-form";
        case Provenance::brute_force: return "brute-force";
        case Provenance::high_rep_simulation: return "high-rep-simulation";
    }
    return "?";
}

inline Provenance provenance_from_string(const std::string& s) {
    if (s == "closed-form") return Provenance::closed_form;
    if (s == "brute-force") return Provenance::brute_force;
    if (s == "high-rep-simulation") return Provenance::high_rep_simulation;
    throw std::out_of_range("unknown provenance: " + s);
}

/// One registered ground-truth constant. Values with simulation provenance
/// must never be used as exact-mode comparands.
struct OracleValue {
    std::string label;
    std::string value_text; // decimal, or "p/q" for exact entries
    double value = 0.0;
    Provenance provenance = Provenance::brute_force;
    std::string detail;
};

inline double parse_value_text(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigRat q(text);
        q.canonicalize();
        return q.get_d();
    }
    return std::stod(text);
}

/// Registry of independently computed reference constants, persisted as a
/// versioned tab-separated text file: key, value, provenance, detail.
class Registry {
public:
    static Registry load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("registry: cannot open " + path);
        Registry reg;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') continue;
            std::istringstream row(line);
            std::string key, value, prov, detail;
            if (!std::getline(row, key, '\t') || !std::getline(row, value, '\t') ||
                !std::getline(row, prov, '\t'))
                throw std::runtime_error("registry: malformed line: " + line);
            std::getline(row, detail);
            OracleValue v;
            v.label = key;
            v.value_text = value;
            v.value = parse_value_text(value);
            v.provenance = provenance_from_string(prov);
            v.detail = detail;
            reg.entries_[key] = std::move(v);
        }
        return reg;
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("registry: cannot write " + path);
        out << "# oracle registry v1\n";
        out << "# key\tvalue\tprovenance\tdetail\n";
        for (const auto& [key, v] : entries_)
            out << key << '\t' << v.value_text << '\t' << to_string(v.provenance)
                << '\t' << v.detail << '\n';
    }

    void put(OracleValue v) { entries_[v.label] = std::move(v); }

    /// Lookup by "body:quantity"; throws std::out_of_range on unknown keys.
    const OracleValue& planar_reference(const std::string& body_label,
                                        const std::string& quantity_label) const {
        const std::string key = body_label + ":" + quantity_label;
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw std::out_of_range("registry: unknown key " + key);
        return it->second;
    }

    const std::map<std::string, OracleValue>& entries() const { return entries_; }

private:
    std::map<std::string, OracleValue> entries_;
};

} // namespace efron_dual::oracle
