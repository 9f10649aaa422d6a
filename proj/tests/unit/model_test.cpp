#include <doctest.h>

#include <random>

#include "sarve/model.hpp"

using namespace sarve;

namespace {

ConferenceInstance three_people() {
  ConferenceInstance c;
  c.roster = {ParticipantId("ann"), ParticipantId("bob"), ParticipantId("cy")};
  c.presenters = {ParticipantId("bob")};
  c.sessions.push_back({SessionId("s1"), ParticipantId("bob"), Location("Hall-A"), {60, 90}, {Tag("e-learning")}});
  c.ratings.set(ParticipantId("ann"), Tag("e-learning"), 4);
  c.contacts.set(ParticipantId("ann"), ParticipantId("bob"), {2, 30});
  c.availabilities[ParticipantId("ann")] = {ParticipantId("ann"), {{Location("hall-a"), {0, 720}}}};
  return c;
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("normalize_keyword trims and lowercases, and is idempotent") {
  CHECK(normalize_keyword("  E-Learning\t") == "e-learning");
  CHECK(Tag(" MOOC ") == Tag("mooc"));
  CHECK(Location("Hall-A") == Location("hall-a "));

  std::mt19937 rng(7);
  const std::string alphabet = " \tAbZz-_9\n";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 12);
    for (int k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    const auto once = normalize_keyword(s);
    CHECK(normalize_keyword(once) == once);
  }
}

TEST_CASE("TimeSlot containment") {
  const TimeSlot day{0, 720};
  CHECK(day.contains({60, 90}));
  CHECK(day.contains(day));
  CHECK_FALSE(TimeSlot{70, 720}.contains({60, 90}));
  CHECK_FALSE(TimeSlot{0, 89}.contains({60, 90}));
}

TEST_CASE("contact log is symmetric") {
  ContactLog log;
  log.set(ParticipantId("zed"), ParticipantId("amy"), {3, 40});
  REQUIRE(log.get(ParticipantId("amy"), ParticipantId("zed")));
  CHECK(*log.get(ParticipantId("amy"), ParticipantId("zed")) == *log.get(ParticipantId("zed"), ParticipantId("amy")));
  CHECK(log.size() == 1);
  CHECK(log.entries().begin()->first.first == ParticipantId("amy"));
  log.erase_participant(ParticipantId("zed"));
  CHECK(log.empty());
}

TEST_CASE("validate accepts a well-formed instance") { CHECK(validate(three_people()).empty()); }

TEST_CASE("validate reports each broken invariant") {
  SUBCASE("rating above five") {
    auto c = three_people();
    c.ratings.set(ParticipantId("ann"), Tag("mooc"), 6);
    const auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(mentions(v, "rating out of range"));
  }
  SUBCASE("rating below one") {
    auto c = three_people();
    c.ratings.set(ParticipantId("bob"), Tag("mooc"), 0);
    CHECK(mentions(validate(c), "rating out of range"));
  }
  SUBCASE("presenter outside roster") {
    auto c = three_people();
    c.presenters.insert(ParticipantId("dan"));
    c.sessions.push_back({SessionId("s2"), ParticipantId("dan"), Location("hall-b"), {0, 30}, {}});
    const auto v = validate(c);
    CHECK(v.size() == 1);
    CHECK(mentions(v, "'dan'"));
  }
  SUBCASE("session presenter not registered") {
    auto c = three_people();
    c.sessions.push_back({SessionId("s2"), ParticipantId("cy"), Location("hall-b"), {0, 30}, {}});
    CHECK(validate(c).size() == 1);
  }
  SUBCASE("duplicate session id") {
    auto c = three_people();
    c.sessions.push_back(c.sessions.front());
    CHECK(mentions(validate(c), "duplicated"));
  }
  SUBCASE("slot outside the frame or empty") {
    auto c = three_people();
    c.sessions.front().slot = {700, 730};
    c.availabilities[ParticipantId("ann")].slots.push_back({Location("hall-b"), {50, 50}});
    CHECK(validate(c).size() == 2);
  }
  SUBCASE("contacts") {
    auto c = three_people();
    c.contacts.set(ParticipantId("bob"), ParticipantId("cy"), {0, 15});
    c.contacts.set(ParticipantId("ann"), ParticipantId("cy"), {-1, -1});
    c.contacts.set(ParticipantId("ann"), ParticipantId("eve"), {1, 1});
    CHECK(validate(c).size() == 3);
  }
  SUBCASE("availability for a stranger") {
    auto c = three_people();
    c.availabilities[ParticipantId("eve")] = {ParticipantId("eve"), {}};
    CHECK(validate(c).size() == 1);
  }
  SUBCASE("thresholds") {
    auto c = three_people();
    c.thresholds.gamma = 1.01;
    c.thresholds.beta = -0.1;
    c.thresholds.top_n = 0;
    CHECK(validate(c).size() == 3);
  }
  SUBCASE("NaN thresholds are rejected") {
    auto c = three_people();
    c.thresholds.delta = std::nan("");
    CHECK(validate(c).size() == 1);
  }
}

TEST_CASE("validate never throws and require_valid carries the violations") {
  ConferenceInstance c;
  c.roster = {ParticipantId("")};
  c.thresholds.frame_T = 0;
  c.sessions.push_back({SessionId(""), ParticipantId("ghost"), Location(""), {5, 1}, {Tag("")}});
  std::vector<std::string> v;
  CHECK_NOTHROW(v = validate(c));
  CHECK(v.size() >= 5);
  try {
    require_valid(c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations() == v);
  }
}
