#include "asw/model.hpp"
#include "asw/output.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace asw;

namespace {

Document sample_document()
{
    Document doc;
    doc.command = "demo";
    RecordTable t{"level", {"index", "energy", "kind", "ok"}, {}};
    t.add({std::int64_t{0}, -3.7338478123456789, std::string("Generic"), true});
    t.add({std::int64_t{1}, 1.0 / 3.0, std::string("Zero,Energy"), false});
    doc.tables.push_back(t);
    RecordTable u{"note", {"value"}, {}};
    u.add({std::nan("")});
    doc.tables.push_back(u);
    return doc;
}

}  // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-3.7338478123456789) == "-3.73384781235");
    CHECK(format_number(12.0) == "12");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-15) == "1e-15");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("CSV layout")
{
    std::ostringstream out;
    write_csv(sample_document(), out);
    CHECK(out.str() ==
          "record,index,energy,kind,ok\n"
          "level,0,-3.73384781235,Generic,true\n"
          "level,1,0.333333333333,\"Zero,Energy\",false\n"
          "\n"
          "record,value\n"
          "note,nan\n");
}

TEST_CASE("JSON layout and agreement with CSV")
{
    std::ostringstream out;
    write_json(sample_document(), out);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "demo");
    REQUIRE(j["level"].size() == 2);
    CHECK(j["level"][0]["index"] == 0);
    CHECK(j["level"][1]["kind"] == "Zero,Energy");
    CHECK(j["level"][0]["ok"] == true);
    CHECK(j["note"][0]["value"].is_null());
    const double e = j["level"][0]["energy"];
    CHECK(format_number(e) == "-3.73384781235");
    CHECK(e == std::strtod("-3.73384781235", nullptr));
}

TEST_CASE("row width is checked")
{
    RecordTable t{"x", {"a", "b"}, {}};
    CHECK_THROWS_AS(t.add({1.0}), DomainError);
}
