#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wsmf/config.hpp"
#include "wsmf/error.hpp"
#include "wsmf/io.hpp"
#include "wsmf/report.hpp"

using namespace wsmf;

namespace {

std::filesystem::path tmp_dir() {
  const std::filesystem::path dir = std::filesystem::path(WSMF_TEST_TMP) / "io";
  std::filesystem::create_directories(dir);
  return dir;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

std::string raw_bytes(std::uint32_t channels, std::uint64_t samples, const std::vector<double>& payload) {
  std::string s = "WSMF";
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((channels >> (8 * i)) & 0xff));
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((samples >> (8 * i)) & 0xff));
  for (double v : payload) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
  return s;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("CSV with a header row") {
    std::istringstream in("left,right\n1,2\n3.5,-4e-3\n\n");
    const auto s = read_csv(in);
    REQUIRE(s.size() == 2);
    CHECK(s[0].label == "left");
    CHECK(s[1].label == "right");
    CHECK(s[0].samples == std::vector<double>{1.0, 3.5});
    CHECK(s[1].samples == std::vector<double>{2.0, -4e-3});
  }

  TEST_CASE("CSV without a header and channel selection") {
    std::istringstream in("1,2,3\n4,5,6\n");
    const auto s = read_csv(in, {2, 0});
    REQUIRE(s.size() == 2);
    CHECK(s[0].label == "ch2");
    CHECK(s[0].samples == std::vector<double>{3.0, 6.0});
    CHECK(s[1].samples == std::vector<double>{1.0, 4.0});
    std::istringstream again("1,2,3\n");
    CHECK(code_of([&] { read_csv(again, {3}); }) == Errc::ChannelOutOfRange);
  }

  TEST_CASE("CSV errors name the offending cell") {
    std::istringstream nan_in("a,b\n1,2\n3,NaN\n");
    try {
      read_csv(nan_in);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ParseError);
      CHECK(e.message() == "row 3, column 2: 'NaN' is not a finite number");
    }
    std::istringstream ragged("1,2\n3\n");
    CHECK(code_of([&] { read_csv(ragged); }) == Errc::LengthMismatch);
    std::istringstream words("1,2\nx,y\n");
    CHECK(code_of([&] { read_csv(words); }) == Errc::ParseError);
  }

  TEST_CASE("RAW layout is bit-exact") {
    const std::vector<Signal> signals = {{{1.0, -2.0, 0.5}, "a"}, {{3.0, 4.0, 1e300}, "b"}};
    std::ostringstream out;
    write_raw(out, signals);
    const std::string expected = raw_bytes(2, 3, {1.0, -2.0, 0.5, 3.0, 4.0, 1e300});
    CHECK(out.str() == expected);
    std::istringstream in(expected);
    const auto back = read_raw(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].samples == signals[0].samples);
    CHECK(back[1].samples == signals[1].samples);
    CHECK(back[1].label == "ch1");
    std::istringstream second(expected);
    CHECK(read_raw(second, {1})[0].samples == signals[1].samples);
  }

  TEST_CASE("RAW errors") {
    std::istringstream bad_magic("WSMX" + std::string(12, '\0'));
    CHECK(code_of([&] { read_raw(bad_magic); }) == Errc::ParseError);
    std::istringstream short_payload(raw_bytes(1, 4, {1.0, 2.0}));
    CHECK(code_of([&] { read_raw(short_payload); }) == Errc::LengthMismatch);
    std::istringstream trailing(raw_bytes(1, 1, {1.0}) + "x");
    CHECK(code_of([&] { read_raw(trailing); }) == Errc::LengthMismatch);
    std::istringstream nonfinite(raw_bytes(1, 2, {1.0, INFINITY}));
    CHECK(code_of([&] { read_raw(nonfinite); }) == Errc::ParseError);
    std::istringstream truncated("WSMF");
    CHECK(code_of([&] { read_raw(truncated); }) == Errc::ParseError);
  }

  TEST_CASE("files round trip in both formats") {
    const std::vector<Signal> signals = {{{0.1, 0.2, 1.0 / 3.0, -7.25}, "x"}, {{1e-20, 2.0, 3.0, 4.0}, "y"}};
    for (const char* ext : {".csv", ".raw"}) {
      const auto path = (tmp_dir() / (std::string("roundtrip") + ext)).string();
      write_signals(path, InputFormat::Auto, signals);
      const auto back = ingest(path);
      REQUIRE(back.size() == 2);
      for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < 4; ++i) CHECK(back[c].samples[i] == signals[c].samples[i]);
      }
      if (std::string(ext) == ".csv") CHECK(back[0].label == "x");
    }
    CHECK(code_of([] { ingest("/nonexistent/file.csv"); }) == Errc::IoError);
    CHECK(parse_input_format("raw") == InputFormat::Raw);
    CHECK(code_of([] { parse_input_format("wav"); }) == Errc::ConfigError);
  }

  TEST_CASE("JSON numbers survive a round trip") {
    Json doc;
    doc["values"] = json_array({0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, NAN, -INFINITY});
    doc["name"] = "x";
    const auto text = dump_json(doc);
    CHECK(text.back() == '\n');
    const auto back = Json::parse(text);
    const auto& v = back["values"];
    CHECK(std::abs(v[0].get<double>() - 0.1) <= 1e-12 * 0.1);
    CHECK(v[1].get<double>() == 1.0 / 3.0);
    CHECK(v[2].get<double>() == -2.5e-300);
    CHECK(v[4].is_null());
    CHECK(v[5].is_null());
    CHECK(dump_json(back) == text);
  }

  TEST_CASE("TSV tables") {
    const Table t{"spectrum.tsv", {"h", "d"}, {{0.5, 1.0}, {0.75, -INFINITY}}};
    const auto text = format_tsv(t);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "h\td");
    std::getline(in, line);
    CHECK(line.rfind("0.5\t1", 0) == 0);
    std::getline(in, line);
    CHECK(line.find("-inf") != std::string::npos);

    const auto dir = tmp_dir() / "tables";
    std::filesystem::remove_all(dir);
    Document doc;
    doc.json["a"] = 1;
    doc.tables.push_back(t);
    const auto json_path = (tmp_dir() / "doc.json").string();
    emit_document(doc, json_path, dir.string());
    CHECK(std::filesystem::exists(dir / "spectrum.tsv"));
    std::ifstream j(json_path);
    CHECK(Json::parse(j)["a"] == 1);
  }

  TEST_CASE("config files") {
    std::istringstream in(
        "# comment\n"
        "top = 1\n"
        "[analysis]\n"
        "q_min = -4   ; trailing comment\n"
        "threads=2\n"
        "[formalism]\n"
        "kind = theta_omega\n"
        "flag = yes\n"
        "list = 1, 2.5,3\n");
    const auto c = Config::parse(in);
    CHECK(c.get_int("top", 0) == 1);
    CHECK(c.get_double("analysis.q_min", 0.0) == -4.0);
    CHECK(c.get_int("analysis.threads", 0) == 2);
    CHECK(c.get_string("formalism.kind", "") == "theta_omega");
    CHECK(c.get_bool("formalism.flag", false));
    CHECK(c.get_doubles("formalism.list") == std::vector<double>{1.0, 2.5, 3.0});
    CHECK(c.get_double("missing", 7.5) == 7.5);
    CHECK_FALSE(c.has("missing"));

    Config over;
    over.set("top", "2");
    Config merged = c;
    merged.merge(over);
    CHECK(merged.get_int("top", 0) == 2);

    std::istringstream bad("[open\n");
    CHECK(code_of([&] { Config::parse(bad); }) == Errc::ConfigError);
    std::istringstream no_eq("lonely\n");
    CHECK(code_of([&] { Config::parse(no_eq); }) == Errc::ConfigError);
    Config typed;
    typed.set("x", "abc");
    CHECK(code_of([&] { typed.get_double("x", 0.0); }) == Errc::ConfigError);
    CHECK(code_of([&] { typed.get_bool("x", false); }) == Errc::ConfigError);
    CHECK(code_of([] { Config::load("/nonexistent.ini"); }) == Errc::IoError);
  }
}
