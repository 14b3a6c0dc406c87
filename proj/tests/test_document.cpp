#include <catch2/catch_amalgamated.hpp>

#include "cdc/fixtures.hpp"
#include "cdc/json_io.hpp"

using namespace cdc;

TEST_CASE("documents round-trip through serialisation") {
    for (const Complex& c : {globe(2), path(3), cube(2), simplex(2), whisk(), pw3()}) {
        Json j = to_json(c);
        Document doc = parse_document(j);
        REQUIRE(doc.complex.size() == c.size());
        auto iso = find_isomorphism(doc.complex, c);
        REQUIRE(iso.has_value());
        // names are preserved exactly, not just up to isomorphism
        for (int i = 0; i < doc.complex.size(); ++i)
            CHECK(c.name((*iso)[static_cast<std::size_t>(i)]) == doc.complex.name(i));
        // serialisation is a fixpoint
        CHECK(to_json(doc.complex) == j);
    }
}

TEST_CASE("subsets round-trip and must be closed") {
    Complex o2 = globe(2);
    Json j = to_json(o2, o2.below(o2.require("1-")));
    Document doc = parse_document(j);
    REQUIRE(doc.subset.has_value());
    CHECK(doc.subset->count() == 3);

    Json bad = j;
    bad["subset"] = Json::array({"1-"});
    CHECK_THROWS_AS(parse_document(bad), error);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_document(std::string("[]")), error);
    Json j;
    j["elements"] = Json::array({{{"id", "a"}, {"dim", 0}}, {{"id", "b"}, {"dim", 1}}});
    j["covers"] = Json::array({{{"upper", "b"}, {"lower", "a"}, {"sign", "?"}}});
    CHECK_THROWS_AS(parse_document(j), error);
    j["covers"][0]["sign"] = "+";
    CHECK_NOTHROW(parse_document(j));
}

TEST_CASE("DOT export lists every element and cover") {
    Complex o2 = globe(2);
    std::string dot = to_dot(o2);
    CHECK(dot.find("digraph") != std::string::npos);
    for (int i = 0; i < o2.size(); ++i)
        CHECK(dot.find("\"" + o2.name(i) + "\"") != std::string::npos);
    CHECK(dot.find("\"2\" -> \"1-\" [label=\"-\"]") != std::string::npos);
    CHECK(dot.find("\"2\" -> \"1+\" [label=\"+\"]") != std::string::npos);
    std::size_t arrows = 0;
    for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1))
        ++arrows;
    CHECK(arrows == 6);
}

TEST_CASE("merger trees serialise with sorted id lists") {
    Complex p2 = path(2);
    Context ctx(p2);
    REQUIRE(ctx.certify(p2.full_set()));
    Json j = to_json(p2, ctx.merger_tree(p2.full_set()));
    REQUIRE(j.contains("children"));
    CHECK(j["node"].size() == 5);
    std::vector<std::string> ids = j["node"].get<std::vector<std::string>>();
    CHECK(std::is_sorted(ids.begin(), ids.end()));
}
