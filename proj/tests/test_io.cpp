// Copyright 2026 The cqwiretap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "cqwiretap/errors.hpp"
#include "cqwiretap/io.hpp"
#include "cqwiretap/random_instances.hpp"
#include "toys.hpp"

using namespace cqw;

TEST_CASE("channel round trip", "[io]") {
    Rng rng(71);
    const CqChannel v = random_channel(rng, 3, 2);
    const CqChannel back = channel_from_json(channel_to_json(v));
    REQUIRE(back.size() == 3);
    for (std::size_t x = 0; x < 3; ++x) {
        CHECK(back.alphabet()[x] == v.alphabet()[x]);
        CHECK((back.output(x).matrix() - v.output(x).matrix()).norm() == 0.0);
    }
}

TEST_CASE("channel parsing errors", "[io]") {
    const Json real = Json::parse(R"({"alphabet": ["a"], "dim": 2,
        "outputs": {"a": [[0.5, 0], [0, 0.5]]}})");
    CHECK(channel_from_json(real).dim() == 2);
    const Json missing = Json::parse(R"({"alphabet": ["a", "b"], "dim": 2,
        "outputs": {"a": [[1, 0], [0, 0]]}})");
    CHECK_THROWS_AS(channel_from_json(missing), ParseError);
    const Json ragged = Json::parse(R"({"alphabet": ["a"], "dim": 2,
        "outputs": {"a": [[1, 0], [0]]}})");
    CHECK_THROWS_AS(channel_from_json(ragged), ParseError);
    const Json invalid = Json::parse(R"({"alphabet": ["a"], "dim": 2,
        "outputs": {"a": [[1, 0], [0, 1]]}})");
    CHECK_THROWS_AS(channel_from_json(invalid), InvalidStateError);
    const Json wrong_dim = Json::parse(R"({"alphabet": ["a"], "dim": 3,
        "outputs": {"a": [[1, 0], [0, 0]]}})");
    CHECK_THROWS_AS(channel_from_json(wrong_dim), ValidationError);
    CHECK_THROWS_AS(channel_from_json(Json::parse("[1, 2]")), ParseError);
}

TEST_CASE("BRI tables nested and flat", "[io]") {
    const Json nested = Json::parse(R"({"S": 2, "X": 4, "M": [0, 1],
        "table": [[0, 1, 0, 1], [1, 0, 1, 0]]})");
    const Json flat = Json::parse(R"({"S": 2, "X": 4, "M": [0, 1],
        "table": [0, 1, 0, 1, 1, 0, 1, 0]})");
    const BriSpec a = bri_from_json(nested);
    const BriSpec b = bri_from_json(flat);
    CHECK(a.table.values == b.table.values);
    CHECK(a.table.num_outputs == 2);
    const BriSpec c = bri_from_json(bri_to_json(a.table, a.regularity));
    CHECK(c.table.values == a.table.values);
    CHECK(c.regularity == a.regularity);
    const Json bad = Json::parse(R"({"S": 2, "X": 4, "M": [0],
        "table": [0, 1, 0]})");
    CHECK_THROWS_AS(bri_from_json(bad), ValidationError);
}

TEST_CASE("codes round trip", "[io]") {
    const auto t = toys::perfect_code(2, 2, 3);
    const auto back = std::get<TransmissionCode>(code_from_json(code_to_json(t)));
    CHECK(back.codewords == t.codewords);
    CHECK(back.decoders.size() == 3);

    const auto cr = toys::xor_cr_code(0.1);
    const auto cb = std::get<CommonRandomnessCode>(code_from_json(code_to_json(cr)));
    REQUIRE(cb.num_seeds() == 2);
    CHECK(cb.per_seed[1].encoder.row(0)[0].index == 1);
    CHECK((cb.per_seed[1].decoders[0].matrix() - cr.per_seed[1].decoders[0].matrix())
              .norm() == 0.0);

    Json unknown = code_to_json(t);
    unknown["type"] = "mystery";
    CHECK_THROWS_AS(code_from_json(unknown), ParseError);
}

TEST_CASE("report formats", "[io]") {
    const std::vector<BoundReport> rs{make_report("a", 0.1, 0.2),
                                      make_report("b", 1.0, kInfinity)};
    const std::string csv = reports_to_csv(rs);
    CHECK(csv.rfind("name,lhs,rhs,slack,holds\n", 0) == 0);
    CHECK(csv.find("b,1,inf,inf,true") != std::string::npos);
    const Json j = reports_to_json(rs);
    CHECK(j[1]["rhs"] == "inf");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK_THROWS_AS(distribution_from_json(Json::parse("[0.5, 0.6]")),
                    ValidationError);
    CHECK_THROWS_AS(load_json("/nonexistent/file.json"), ParseError);
}
