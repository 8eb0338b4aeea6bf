#include "ppri/error.hpp"
#include "ppri/json_io.hpp"

#include <doctest.h>

using namespace ppri;
using json_io::Json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InternalError;
}

} // namespace

TEST_CASE("rational readers") {
    CHECK(json_io::rational_from(Json("3/6")) == make_rational(1, 2));
    CHECK(json_io::rational_from(Json(-4)) == -4);
    CHECK(json_io::rational_from(Json("1.25")) == make_rational(5, 4));
    CHECK(json_io::rational_from(Json(0.5)) == make_rational(1, 2));
    CHECK(kind_of([] { json_io::rational_from(Json("x")); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { json_io::rational_from(Json::object()); }) == ErrorKind::ParseError);
    CHECK(json_io::vector_from(Json::parse(R"(["1/2", 3])")) == std::vector<Rational>{make_rational(1, 2), 3});
}

TEST_CASE("matrix round trip") {
    const auto m = json_io::matrix_from(Json::parse(R"([["1/2", 0], [3, "-1"]])"));
    CHECK(m(0, 0) == make_rational(1, 2));
    CHECK(m(1, 1) == -1);
    CHECK(json_io::to_json(m).dump() == R"([["1/2","0"],["3","-1"]])");
    CHECK(json_io::matrix_from(json_io::to_json(m)) == m);
    CHECK(kind_of([] { json_io::matrix_from(Json::parse("[[1, 2], [3]]")); }) == ErrorKind::NonSquareMatrix);
    CHECK(kind_of([] { json_io::matrix_from(Json::parse("5")); }) == ErrorKind::ParseError);
}

TEST_CASE("padic and laurent writers") {
    const PAdic a = padic_from_rational(make_rational(1, 4), Prime(3), 4);
    CHECK(json_io::to_json(a).dump() == R"({"digits":[1,2,0,2],"precision":4,"prime":3,"valuation":0})");
    CHECK(json_io::to_json(PAdic::zero(Prime(5)))["valuation"] == "inf");
    const auto l = json_io::laurent_from(Json::parse(R"({"support":{"-1":"1","1":"1/2"}})"));
    CHECK(json_io::to_json(l).dump() == R"({"support":{"-1":"1","1":"1/2"}})");
    CHECK(kind_of([] { json_io::laurent_from(Json::parse(R"({"support":{"a":"1"}})")); }) == ErrorKind::ParseError);
}

TEST_CASE("series reader") {
    const auto s = json_io::series_from(Json::parse(R"({"kind":"finite","scalar":"rational","terms":["1","1/2"]})"));
    CHECK(s[1] == make_rational(1, 2));
    CHECK(s[5] == 0);
    CHECK(kind_of([] { json_io::series_from(Json::parse(R"({"kind":"lazy"})")); }) == ErrorKind::ParseError);
}

TEST_CASE("region reader") {
    const auto box = json_io::region_from(Json::parse(R"({"type":"box","halfwidths":["11/10","11/10"]})"));
    CHECK(box.dim == 2);
    CHECK(box.volume_lb == make_rational(484, 100));
    const std::vector<double> inside{1.0, 0.0}, outside{1.2, 0.0};
    CHECK(box.contains(inside));
    CHECK(!box.contains(outside));
    const auto ell = json_io::region_from(Json::parse(R"({"type":"ellipsoid","matrix":[[1,0],[0,1]]})"));
    CHECK(ell.contains(std::vector<double>{0.5, 0.5}));
    const auto ball = json_io::region_from(Json::parse(R"({"type":"named","name":"ball","dim":2,"radius":"6/5"})"));
    CHECK(ball.contains(inside));
    CHECK(kind_of([] { json_io::region_from(Json::parse(R"({"type":"torus"})")); }) == ErrorKind::ParseError);
}
