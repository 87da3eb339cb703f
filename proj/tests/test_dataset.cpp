#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "dayshift/dates.hpp"
#include "dayshift/rng.hpp"
#include "dayshift/schema.hpp"
#include "dayshift/table.hpp"
#include "dayshift/util.hpp"
#include "support/testutil.hpp"

using namespace dayshift;

TEST_CASE("dates parse, format and do day arithmetic") {
  Date d = Date::parse("2015-03-01");
  CHECK(d.iso() == "2015-03-01");
  CHECK(d.is_sunday());
  CHECK((d + 6).is_saturday());
  CHECK((d + 91).iso() == "2015-05-31");
  CHECK((d + 91) - d == 91);
  CHECK(d.iso_week() == 9);
  CHECK((d + 1).iso_week() == 10);
  CHECK_THROWS_AS(Date::parse("2015-3-1"), DataError);
  CHECK_THROWS_AS(Date::parse("2015-02-30"), DataError);
}

TEST_CASE("schema files parse and validate") {
  testutil::TempDir tmp("schema");
  write_text_file(tmp.file("ok.schema"),
                  "# comment\n"
                  "amount,continuous\n"
                  "merchant,categorical,5\n"
                  "chip,binary\n");
  FeatureSchema schema = FeatureSchema::load(tmp.file("ok.schema"));
  REQUIRE(schema.size() == 3);
  CHECK(schema.at(1).level_count() == 5);
  CHECK(schema.at(2).level_count() == 2);
  CHECK(schema.index_of("chip") == 2);
  CHECK(schema.index_of("nope") == -1);

  schema.save(tmp.file("copy.schema"));
  CHECK(FeatureSchema::load(tmp.file("copy.schema")) == schema);

  write_text_file(tmp.file("bad1.schema"), "amount,continuous\namount,binary\n");
  CHECK_THROWS_AS(FeatureSchema::load(tmp.file("bad1.schema")), DataError);
  write_text_file(tmp.file("bad2.schema"), "m,categorical,1\n");
  CHECK_THROWS_AS(FeatureSchema::load(tmp.file("bad2.schema")), DataError);
  write_text_file(tmp.file("bad3.schema"), "m,categorical\n");
  CHECK_THROWS_AS(FeatureSchema::load(tmp.file("bad3.schema")), DataError);
}

namespace {

void write_dataset(const testutil::TempDir& tmp, const std::string& csv) {
  write_text_file(tmp.file("data.schema"),
                  "amount,continuous\n"
                  "merchant,categorical,5\n");
  write_text_file(tmp.file("data.csv"), csv);
}

}  // namespace

TEST_CASE("load_csv accepts a minimal well-formed dataset") {
  testutil::TempDir tmp("load");
  write_dataset(tmp,
                "date,label,amount,merchant\n"
                "2015-03-01,0,10.5,1\n"
                "2015-03-02,1,3.25,4\n"
                "2015-03-03,0,7,0\n");
  TransactionTable table = load_csv(tmp.file("data.csv"), tmp.file("data.schema"));
  CHECK(table.n_days() == 3);
  CHECK(table.n_rows() == 3);
  CHECK(table.day_of_row(0) == 0);
  CHECK(table.day_of_row(2) == 2);
  CHECK(table.date_of_day(2).iso() == "2015-03-03");
  CHECK(table.label(1) == 1);
}

TEST_CASE("load_csv rejects malformed inputs with located errors") {
  testutil::TempDir tmp("loadbad");

  SECTION("out-of-range categorical value names row and feature") {
    write_dataset(tmp,
                  "date,label,amount,merchant\n"
                  "2015-03-01,0,10.5,1\n"
                  "2015-03-01,0,2.0,7\n");
    CHECK_THROWS_WITH(load_csv(tmp.file("data.csv"), tmp.file("data.schema")),
                      Catch::Matchers::ContainsSubstring("data.csv:3") &&
                          Catch::Matchers::ContainsSubstring("merchant"));
  }

  SECTION("date gap") {
    write_dataset(tmp,
                  "date,label,amount,merchant\n"
                  "2015-03-01,0,10.5,1\n"
                  "2015-03-03,0,2.0,3\n");
    CHECK_THROWS_WITH(load_csv(tmp.file("data.csv"), tmp.file("data.schema")),
                      Catch::Matchers::ContainsSubstring("non-consecutive dates"));
  }

  SECTION("header mismatch") {
    write_dataset(tmp, "date,label,amount,shop\n2015-03-01,0,1.0,1\n");
    CHECK_THROWS_WITH(load_csv(tmp.file("data.csv"), tmp.file("data.schema")),
                      Catch::Matchers::ContainsSubstring("header"));
  }

  SECTION("non-finite continuous value") {
    write_dataset(tmp, "date,label,amount,merchant\n2015-03-01,0,inf,1\n");
    CHECK_THROWS_WITH(load_csv(tmp.file("data.csv"), tmp.file("data.schema")),
                      Catch::Matchers::ContainsSubstring("non-finite"));
  }

  SECTION("bad label") {
    write_dataset(tmp, "date,label,amount,merchant\n2015-03-01,2,1.0,1\n");
    CHECK_THROWS_AS(load_csv(tmp.file("data.csv"), tmp.file("data.schema")), DataError);
  }

  SECTION("missing file") {
    write_dataset(tmp, "date,label,amount,merchant\n2015-03-01,0,1.0,1\n");
    CHECK_THROWS_AS(load_csv(tmp.file("absent.csv"), tmp.file("data.schema")), DataError);
  }
}

TEST_CASE("table construction enforces the data model") {
  FeatureSchema schema({{"x", FeatureKind::kContinuous, 0}, {"b", FeatureKind::kBinary, 0}});
  const Date start = Date::from_ymd(2015, 3, 1);

  CHECK_THROWS_AS(TransactionTable(schema, {start, start + 2}, {0, 1}, {1.0, 0.0, 2.0, 1.0}, {0, 0}),
                  DataError);  // gap in dates
  CHECK_THROWS_AS(TransactionTable(schema, {start, start + 1}, {0, 0}, {1.0, 0.0, 2.0, 1.0}, {0, 0}),
                  DataError);  // day 1 empty
  CHECK_THROWS_AS(TransactionTable(schema, {start}, {0}, {1.0, 2.0}, {0}), DataError);  // binary out of range
  TransactionTable ok(schema, {start}, {0, 0}, {1.0, 1.0, 2.0, 0.0}, {0, 1});
  CHECK(ok.n_rows() == 2);
}

TEST_CASE("slice_by_day partitions rows in day order") {
  FeatureSchema schema({{"x", FeatureKind::kContinuous, 0}});
  const Date start = Date::from_ymd(2015, 3, 1);
  TransactionTable table(schema, {start, start + 1}, {0, 0, 1}, {1.0, 2.0, 3.0}, {0, 0, 0});
  auto slices = slice_by_day(table);
  REQUIRE(slices.size() == 2);
  CHECK(slices[0].row_ids == std::vector<int>{0, 1});
  CHECK(slices[1].row_ids == std::vector<int>{2});
}

TEST_CASE("csv round trip reproduces the table exactly", "[property]") {
  testutil::TempDir tmp("roundtrip");
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FeatureSpec> specs{{"v", FeatureKind::kContinuous, 0}};
    if (trial % 2 == 0) specs.push_back({"c", FeatureKind::kCategorical, 3 + static_cast<int>(rng.below(5))});
    if (trial % 3 == 0) specs.push_back({"b", FeatureKind::kBinary, 0});
    FeatureSchema schema(specs);

    const int n_days = 1 + static_cast<int>(rng.below(4));
    std::vector<Date> dates;
    std::vector<int> day_index;
    std::vector<double> values;
    std::vector<std::uint8_t> labels;
    for (int d = 0; d < n_days; ++d) {
      dates.push_back(Date::from_ymd(2015, 3, 1) + d);
      const int rows = 1 + static_cast<int>(rng.below(6));
      for (int r = 0; r < rows; ++r) {
        day_index.push_back(d);
        for (const auto& f : schema.features()) {
          if (f.kind == FeatureKind::kContinuous) {
            values.push_back(rng.normal() * 12345.6789);
          } else {
            values.push_back(static_cast<double>(rng.below(static_cast<std::uint64_t>(f.level_count()))));
          }
        }
        labels.push_back(static_cast<std::uint8_t>(rng.below(2)));
      }
    }
    TransactionTable table(schema, dates, day_index, values, labels);

    save_csv(table, tmp.file("t.csv"));
    schema.save(tmp.file("t.schema"));
    TransactionTable back = load_csv(tmp.file("t.csv"), tmp.file("t.schema"));
    REQUIRE(back == table);

    auto slices = slice_by_day(table);
    std::size_t total = 0;
    for (const auto& s : slices) total += s.row_ids.size();
    CHECK(total == table.n_rows());
  }
}
