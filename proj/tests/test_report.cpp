#include <catch2/catch_amalgamated.hpp>

#include "efron_dual/report.hpp"

using namespace efron_dual;
using namespace efron_dual::report;

namespace {

mc::IdentityReport sample_report() {
    mc::IdentityReport r;
    r.identity = "factorial-eq3";
    r.body = "interval";
    r.n = 3;
    r.k = 2;
    r.lhs = {0.2999417, 0.00032, 1000000, 7, "EV^2_3/volK^2"};
    r.rhs = {0.3, 0.0, 1000000, 7, ""};
    r.z_score = 0.182;
    r.tolerance_sigma = 4.0;
    r.pass = true;
    r.master_seed = 7;
    return r;
}

} // namespace

TEST_CASE("report JSON schema has the pinned fields in order", "[report]") {
    const json j = to_json(sample_report());
    const std::vector<std::string> keys = {
        "identity", "body",   "parameters",      "lhs",
        "rhs",      "z_score", "tolerance_sigma", "pass",
        "master_seed", "artifact_version"};
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        REQUIRE(i < keys.size());
        CHECK(it.key() == keys[i]);
    }
    CHECK(j["parameters"]["n"] == 3);
    CHECK(j["lhs"]["reps"] == 1000000);
    CHECK(j["artifact_version"] == std::string(artifact_version));
}

TEST_CASE("serialize -> parse -> serialize is byte-identical", "[report]") {
    const std::string once = serialize(sample_report());
    const auto parsed = report_from_json(json::parse(once));
    const std::string twice = serialize(parsed);
    CHECK(once == twice);

    // merge path round-trips too
    const std::string arr = merge_to_json({sample_report(), sample_report()});
    const json doc = json::parse(arr);
    std::vector<mc::IdentityReport> back;
    for (const auto& item : doc) back.push_back(report_from_json(item));
    CHECK(merge_to_json(back) == arr);
}

TEST_CASE("seeds above 2^53 survive the JSON round trip", "[report]") {
    auto r = sample_report();
    r.master_seed = 0xFFFFFFFFFFFFFFF5ull;
    const auto back = report_from_json(json::parse(serialize(r)));
    CHECK(back.master_seed == r.master_seed);
}

TEST_CASE("CSV has one row per report under the pinned header", "[report]") {
    const auto csv = merge_to_csv({sample_report()});
    const auto nl = csv.find('\n');
    CHECK(csv.substr(0, nl) == csv_header);
    CHECK(csv.find("factorial-eq3,interval,3,2,0,0,") != std::string::npos);
    CHECK(csv.find(",true,7,") != std::string::npos);
}

TEST_CASE("empty merge yields an empty document", "[report]") {
    CHECK(merge_to_json({}) == "[]\n");
    CHECK(merge_to_csv({}) == std::string(csv_header) + "\n");
}
