#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "coarsedim/io.hpp"
#include "support/support.hpp"

using namespace coarsedim;
using namespace coarsedim::testing;

TEST_SUITE("io") {

TEST_CASE("space round trip") {
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_space(rng, uniform_int(rng, 1, 8));
        const auto back = space_from_json(Json::parse(space_to_json(s).dump()));
        CHECK(back == s);
        CHECK(back.labels() == s.labels());
    }
}

TEST_CASE("coordinate input is expanded") {
    const Json j = Json::parse(R"({"labels": ["a", "b", "c"], "coords": [[0, 0], [3, 4], [0, 1]], "metric": "l2"})");
    const auto s = space_from_json(j);
    CHECK(s(0, 1) == 5.0);
    CHECK(s.label(2) == "c");
    const auto linf = space_from_json(Json::parse(R"({"coords": [[0, 0], [3, 4]], "metric": "linf"})"));
    CHECK(linf(0, 1) == 4.0);
    const auto snow = space_from_json(Json::parse(R"({"coords": [[0], [4]], "metric": "linf", "snowflake": 0.5})"));
    CHECK(snow(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("malformed input is a parse error") {
    auto code = [](const char* text) {
        try {
            space_from_json(Json::parse(text));
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code(R"([1, 2])") == ErrorCode::ParseError);
    CHECK(code(R"({"labels": ["a"]})") == ErrorCode::ParseError);
    CHECK(code(R"({"matrix": "no"})") == ErrorCode::ParseError);
    CHECK(code(R"({"coords": [[0]], "metric": "l7"})") == ErrorCode::ParseError);
    CHECK(code(R"({"matrix": [[0, 1], [2, 0]]})") == ErrorCode::NonSymmetric);
    CHECK_THROWS_AS(cover_from_json(Json::parse(R"({"s": 1})")), Error);
    CHECK_THROWS_AS(extension_from_json(Json::parse(R"({"epsilon": 0.1, "cross": [[0, 1], [1]]})")), Error);
    CHECK_THROWS_AS(read_json_file("/nonexistent/space.json"), Error);
}

TEST_CASE("certificate and witness round trip") {
    ColoredCover cover;
    cover.s = 2.0;
    cover.c = 0.25;
    cover.classes = {{{0, 1}, {3}}, {{2}}};
    const ColoredCover back = cover_from_json(Json::parse(cover_to_json(cover).dump()));
    CHECK(back.classes == cover.classes);
    CHECK(back.s == cover.s);
    CHECK(back.c == cover.c);

    DistanceExtension ext;
    ext.epsilon = 0.125;
    ext.rows = 2;
    ext.cols = 3;
    ext.cross = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    const DistanceExtension e2 = extension_from_json(Json::parse(extension_to_json(ext).dump()));
    CHECK(e2.epsilon == ext.epsilon);
    CHECK(e2.rows == 2);
    CHECK(e2.cols == 3);
    CHECK(e2.cross == ext.cross);
}

TEST_CASE("files") {
    const std::string file = "io_test_space.json";
    const auto s = testing::path(5);
    write_text_file(file, space_to_json(s).dump(2));
    CHECK(load_space(file) == s);
    std::remove(file.c_str());
}

}  // TEST_SUITE
