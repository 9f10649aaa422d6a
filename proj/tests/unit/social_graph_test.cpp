#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sarve/social_graph.hpp"

using namespace sarve;

TEST_CASE("tie strength worked values") {
  CHECK(std::abs(tie_strength(6, 70, 720) - 420.0 / 720.0) < 1e-9);
  CHECK(std::abs(tie_strength(6, 70, 720) - 0.58333333333) < 1e-9);
  // (80 * 7) / 720 is 0.777..., which reads as 0.8 only after rounding.
  CHECK(std::abs(tie_strength(7, 80, 720) - 0.7777777777777778) < 1e-9);
  CHECK(tie_strength(0, 0, 720) == 0.0);
}

TEST_CASE("tie strength from the log") {
  ContactLog log;
  const ParticipantId a("a"), b("b"), c("c");
  log.set(a, b, {6, 70});
  CHECK(tie_strength(log, a, b, 720) == tie_strength(log, b, a, 720));
  CHECK(tie_strength(log, a, c, 720) == 0.0);
  CHECK_THROWS_AS(tie_strength(log, a, a, 720), Error);
  CHECK_THROWS_AS(tie_strength(log, a, b, 0), Error);
  CHECK_THROWS_AS(tie_strength(-1, 3, 720), Error);
}

TEST_CASE("tie strength scales linearly in frequency and duration, inversely in T") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const int f = 1 + rng() % 7, d = 1 + rng() % 80, T = 60 + rng() % 1000, k = 1 + rng() % 5;
    const double base = tie_strength(f, d, T);
    CHECK(tie_strength(k * f, d, T) == doctest::Approx(k * base).epsilon(1e-12));
    CHECK(tie_strength(f, k * d, T) == doctest::Approx(k * base).epsilon(1e-12));
    CHECK(tie_strength(f, d, k * T) == doctest::Approx(base / k).epsilon(1e-12));
  }
}

TEST_CASE("passes_beta") {
  Thresholds t;
  t.beta = 0.5;
  CHECK(passes_beta(tie_strength(6, 70, 720), t));
  CHECK_FALSE(passes_beta(0.49, t));
  t.beta = 0.0;
  CHECK(passes_beta(0.0, t));
}

TEST_CASE("degree centrality") {
  ConferenceInstance conf;
  for (int i = 0; i < 8; ++i) conf.roster.insert(ParticipantId("m" + std::to_string(i)));
  const ParticipantId hub("m0");

  SUBCASE("complete star") {
    for (const auto& p : conf.roster) {
      if (p != hub) conf.contacts.set(hub, p, {1, 5});
    }
    const auto c = degree_centrality(conf, hub);
    CHECK(c.raw == 7);
    CHECK(c.normalized == 1.0);
    CHECK(degree_centrality(conf, ParticipantId("m3")).raw == 1);
  }
  SUBCASE("isolated") { CHECK(degree_centrality(conf, hub) == DegreeCentrality{0, 0.0}); }
  SUBCASE("fixed contact set, hand count") {
    // m0-m1, m0-m5, m2-m0, m3-m4, m5-m6
    conf.contacts.set(ParticipantId("m0"), ParticipantId("m1"), {2, 10});
    conf.contacts.set(ParticipantId("m5"), ParticipantId("m0"), {1, 3});
    conf.contacts.set(ParticipantId("m2"), ParticipantId("m0"), {7, 80});
    conf.contacts.set(ParticipantId("m3"), ParticipantId("m4"), {1, 1});
    conf.contacts.set(ParticipantId("m5"), ParticipantId("m6"), {4, 20});
    CHECK(degree_centrality(conf, hub).raw == 3);
    CHECK(degree_centrality(conf, ParticipantId("m5")).raw == 2);
    CHECK(degree_centrality(conf, ParticipantId("m7")).raw == 0);
    CHECK(degree_centrality(conf, hub).normalized == 3.0 / 7.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(degree_centrality(conf, ParticipantId("nobody")), NotFound);
    ConferenceInstance one;
    one.roster = {hub};
    CHECK_THROWS_AS(degree_centrality(one, hub), Error);
  }
}

TEST_CASE("passes_delta") {
  Thresholds t;
  t.delta = 0.5;
  CHECK(passes_delta({6, 1.0}, t));
  CHECK(passes_delta({3, 3.0 / 6.0}, t));
  t.delta = 0.1;
  CHECK_FALSE(passes_delta({0, 0.0}, t));
}

TEST_CASE("degree centralities agree with the per-node count and the handshake sum") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto conf = oracle::random_instance(seed);
    if (conf.roster.size() < 2) continue;
    const auto all = degree_centralities(conf);
    long long sum = 0;
    for (const auto& p : conf.roster) {
      const auto c = degree_centrality(conf, p);
      CHECK(all.at(p) == c);
      CHECK(c.raw == oracle::centrality_raw(conf, p));
      CHECK(c.raw <= static_cast<int>(conf.roster.size()) - 1);
      CHECK(c.normalized >= 0.0);
      CHECK(c.normalized <= 1.0);
      sum += c.raw;
    }
    CHECK(sum == 2 * static_cast<long long>(conf.contacts.size()));
  }
}
