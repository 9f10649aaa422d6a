#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "sarve/dataset_io.hpp"
#include "sarve/generator.hpp"

using namespace sarve;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("sarve_io_" + name); }

std::string header() { return "sarve-dataset v1\n"; }

}  // namespace

TEST_CASE("hand-written fixture parses to the expected value") {
  const ParticipantId ann("ann"), bob("bob"), cy("cy");
  ConferenceInstance want;
  want.thresholds = {0.5, 0.5, 0.5, 720, 3};
  want.roster = {ann, bob, cy};
  want.presenters = {bob};
  want.sessions.push_back({SessionId("s1"), bob, Location("hall-a"), {60, 90}, {Tag("e-learning"), Tag("mooc")}});
  want.ratings.set(ann, Tag("e-learning"), 5);
  want.ratings.set(ann, Tag("mooc"), 3);
  want.ratings.set(bob, Tag("e-learning"), 4);
  want.ratings.set(bob, Tag("mooc"), 2);
  want.ratings.set(cy, Tag("mooc"), 1);
  want.contacts.set(ann, bob, {6, 70});
  want.availabilities[ann] = {ann, {{Location("hall-a"), {0, 720}}, {Location("hall-b"), {60, 120}}}};
  want.availabilities[cy] = {cy, {}};

  const auto got = load(fs::path(SARVE_TEST_DATA_DIR) / "fixtures" / "tiny.sarve");
  CHECK(got == want);
}

TEST_CASE("round trip through text and through files") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    const auto conf = generate(cfg);
    CHECK(parse_dataset(to_dataset_text(conf)) == conf);
  }
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto conf = oracle::random_instance(seed);
    const auto path = temp_file("rt.sarve");
    save(conf, path);
    CHECK(load(path) == conf);
    fs::remove(path);
  }
}

TEST_CASE("rating 7 is rejected with the offending record") {
  const std::string text = header() + "[roster]\nann\n[ratings]\nann\tmooc\t4\nann\txml\t7\n";
  try {
    parse_dataset(text, "bad.sarve");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    const std::string msg = e.what();
    CHECK(msg.find("bad.sarve:6") != std::string::npos);
    CHECK(msg.find("ann") != std::string::npos);
    CHECK(msg.find("xml") != std::string::npos);
    CHECK(msg.find('7') != std::string::npos);
  }
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_dataset(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("not a dataset\n") == 1);
  CHECK(line_of("sarve-dataset v2\n") == 1);
  CHECK(line_of(header() + "[roster]\nann\n[bogus]\n") == 4);
  CHECK(line_of(header() + "ann\n") == 2);
  CHECK(line_of(header() + "[thresholds]\ngamma\tabc\n") == 3);
  CHECK(line_of(header() + "[thresholds]\ngamma\t1\ngamma\t1\n") == 4);
  CHECK(line_of(header() + "[sessions]\ns1\tbob\thall\t10\n") == 3);
  CHECK(line_of(header() + "[ratings]\nann\tmooc\t4.5\n") == 3);
  CHECK(line_of(header() + "[ratings]\nann\tmooc\t4\nann\tMOOC\t3\n") == 4);
  CHECK(line_of(header() + "[contacts]\nann\tann\t1\t1\n") == 3);
  CHECK(line_of(header() + "[contacts]\nann\tbob\t1\t1\nbob\tann\t2\t2\n") == 4);
  CHECK(line_of(header() + "[roster]\n[roster]\n") == 3);
  CHECK(line_of(header() + "# comment\r\n\r\n[roster]\r\nann\r\n") == -1);
}

TEST_CASE("parse checks fields, validate checks references") {
  // the session presenter is unknown: parses, but does not validate
  const std::string text = header() + "[roster]\nann\n[sessions]\ns1\tghost\thall-a\t0\t30\t\n";
  const auto conf = parse_dataset(text);
  CHECK(validate(conf).size() == 1);
  const auto path = temp_file("ref.sarve");
  {
    std::ofstream(path) << text;
  }
  CHECK_NOTHROW(read_dataset(path));
  CHECK_THROWS_AS(load(path), ValidationError);
  fs::remove(path);
  CHECK_THROWS_AS(load(temp_file("missing.sarve")), IoError);
}

TEST_CASE("dataset id is stable and content-sensitive") {
  GeneratorConfig cfg;
  const auto a = generate(cfg);
  CHECK(dataset_id(a).size() == 16);
  CHECK(dataset_id(a) == dataset_id(generate(cfg)));
  auto b = a;
  b.thresholds.top_n = 6;
  CHECK(dataset_id(a) != dataset_id(b));
}

TEST_CASE("csv export") {
  const auto conf = load(fs::path(SARVE_TEST_DATA_DIR) / "fixtures" / "tiny.sarve");
  CHECK(ratings_csv(conf) ==
        "participant,tag,rating\nann,e-learning,5\nann,mooc,3\nbob,e-learning,4\nbob,mooc,2\ncy,mooc,1\n");
  CHECK(contacts_csv(conf) == "participant_a,participant_b,frequency,duration,tie_strength\nann,bob,6,70,0.583333\n");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("plain") == "plain");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.5) == "-0.5");
}
