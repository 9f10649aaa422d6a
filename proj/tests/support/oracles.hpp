// Reference implementations used only by tests. They are written from the
// formulas directly and share no code with the engine beyond the data types.
#ifndef SARVE_TESTS_ORACLES_HPP
#define SARVE_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sarve/evaluation.hpp"
#include "sarve/model.hpp"
#include "sarve/recommender.hpp"

namespace oracle {

using sarve::ConferenceInstance;
using sarve::ParticipantId;

// Co-rated rating vectors of c and d, by scanning every entry of the matrix.
inline std::pair<std::vector<int>, std::vector<int>> co_rated(const sarve::RatingMatrix& m, const ParticipantId& c,
                                                              const ParticipantId& d) {
  std::vector<int> x, y;
  for (const auto& [key, rating] : m.entries()) {
    if (key.first != c) continue;
    for (const auto& [key2, rating2] : m.entries()) {
      if (key2.first == d && key2.second == key.second) {
        x.push_back(rating);
        y.push_back(rating2);
      }
    }
  }
  return {x, y};
}

// Textbook mean-centered Pearson in floating point.
inline std::optional<double> pearson_direct(const std::vector<int>& x, const std::vector<int>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    dx += (x[i] - mx) * (x[i] - mx);
    dy += (y[i] - my) * (y[i] - my);
  }
  if (dx == 0 || dy == 0) return std::nullopt;
  return num / std::sqrt(dx * dy);
}

// Same formula with every deviation scaled by n so it stays in integers;
// exact at +-1 and at zero variance, which the gate comparisons need.
inline std::optional<double> pearson_exact(const std::vector<int>& x, const std::vector<int>& y) {
  const long long n = static_cast<long long>(x.size());
  if (n < 2) return std::nullopt;
  long long sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  long long num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long long a = n * x[i] - sx;
    const long long b = n * y[i] - sy;
    num += a * b;
    dx += a * a;
    dy += b * b;
  }
  if (dx == 0 || dy == 0) return std::nullopt;
  double r = static_cast<double>(num) / std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
  return r > 1 ? 1.0 : (r < -1 ? -1.0 : r);
}

inline double tie(const ConferenceInstance& conf, const ParticipantId& a, const ParticipantId& b) {
  for (const auto& [key, c] : conf.contacts.entries()) {
    if ((key.first == a && key.second == b) || (key.first == b && key.second == a)) {
      return static_cast<double>(c.frequency * c.duration) / static_cast<double>(conf.thresholds.frame_T);
    }
  }
  return 0.0;
}

inline int centrality_raw(const ConferenceInstance& conf, const ParticipantId& p) {
  int n = 0;
  for (const auto& [key, c] : conf.contacts.entries()) {
    if ((key.first == p || key.second == p) && c.frequency >= 1) ++n;
  }
  return n;
}

inline bool slot_matches(const sarve::Session& s, const ConferenceInstance& conf, const ParticipantId& i) {
  auto it = conf.availabilities.find(i);
  if (it == conf.availabilities.end()) return false;
  for (const auto& slot : it->second.slots) {
    if (slot.location.venue == s.location.venue && slot.time.start <= s.slot.start && s.slot.end <= slot.time.end) {
      return true;
    }
  }
  return false;
}

using Triple = std::tuple<std::string, std::string, int>;  // participant, session, channel

// Evaluates the four gate predicates for every (participant, session) pair.
inline std::set<Triple> recommend(const ConferenceInstance& conf, bool strict = false) {
  std::set<Triple> out;
  const auto& th = conf.thresholds;
  const double n_minus_1 = static_cast<double>(conf.roster.size()) - 1;
  for (const auto& i : conf.roster) {
    for (const auto& s : conf.sessions) {
      const auto& j = s.presenter;
      if (j == i) continue;
      if (!slot_matches(s, conf, i)) continue;
      auto [x, y] = co_rated(conf.ratings, i, j);
      const auto r = pearson_exact(x, y);
      const bool gamma_ok = r && *r >= th.gamma;
      const bool beta_ok = tie(conf, i, j) >= th.beta;
      const bool delta_ok = conf.roster.size() >= 2 && centrality_raw(conf, j) / n_minus_1 >= th.delta;
      if (gamma_ok) out.insert({i.value, s.id.value, 0});
      if ((beta_ok || delta_ok) && (!strict || gamma_ok)) out.insert({i.value, s.id.value, 1});
    }
  }
  return out;
}

inline std::set<Triple> triples(const sarve::RecommendationSet& set) {
  std::set<Triple> out;
  for (const auto& [p, lists] : set.lists()) {
    for (auto c : sarve::kChannels) {
      for (const auto& r : lists.of(c)) out.insert({r.participant.value, r.session.value, static_cast<int>(c)});
    }
  }
  return out;
}

inline std::set<std::pair<std::string, std::string>> channel_pairs(const sarve::RecommendationSet& set,
                                                                  sarve::Channel c) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [p, lists] : set.lists()) {
    for (const auto& r : lists.of(c)) out.insert({r.participant.value, r.session.value});
  }
  return out;
}

inline sarve::ConfusionCounts confusion(const sarve::RecommendationSet& recs, const sarve::RelevanceLabels& labels,
                                        sarve::Channel c) {
  const auto retrieved = channel_pairs(recs, c);
  sarve::ConfusionCounts out;
  for (const auto& [key, relevant] : labels) {
    const bool got = retrieved.count({key.participant.value, key.session.value}) != 0;
    if (got && relevant) ++out.e;
    if (got && !relevant) ++out.f;
    if (!got && relevant) ++out.g;
    if (!got && !relevant) ++out.h;
  }
  return out;
}

struct RandomSpec {
  int max_participants = 20;
  int max_sessions = 10;
  int vocabulary = 5;
  int frame_T = 720;
};

// Small random instances with a narrow tag vocabulary and coarse time grid,
// so that exact +-1 correlations, tied scores and slot-boundary containment
// all occur often.
inline ConferenceInstance random_instance(std::uint64_t seed, const RandomSpec& spec = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };

  ConferenceInstance conf;
  const int n = pick(2, spec.max_participants);
  std::vector<ParticipantId> people;
  for (int k = 0; k < n; ++k) {
    people.emplace_back("u" + std::to_string(k));
    conf.roster.insert(people.back());
  }
  const int n_presenters = pick(1, std::min(n, 6));
  for (int k = 0; k < n_presenters; ++k) conf.presenters.insert(people[pick(0, n - 1)]);
  std::vector<ParticipantId> presenters(conf.presenters.begin(), conf.presenters.end());

  const std::vector<std::string> rooms = {"hall-a", "hall-b", "room-1"};
  const int cell = spec.frame_T / 12;
  const int n_sessions = pick(1, spec.max_sessions);
  for (int k = 0; k < n_sessions; ++k) {
    sarve::Session s;
    s.id = sarve::SessionId("s" + std::to_string(k));
    s.presenter = presenters[pick(0, static_cast<int>(presenters.size()) - 1)];
    s.location = sarve::Location(rooms[pick(0, 2)]);
    const int a = pick(0, 10);
    const int b = pick(a + 1, std::min(a + 3, 12));
    s.slot = {a * cell, b * cell};
    const int n_tags = pick(1, 3);
    for (int t = 0; t < n_tags; ++t) s.topic_tags.insert(sarve::Tag("t" + std::to_string(pick(0, spec.vocabulary - 1))));
    conf.sessions.push_back(s);
  }

  const double density = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
  for (const auto& p : people) {
    for (int t = 0; t < spec.vocabulary; ++t) {
      if (coin(density)) conf.ratings.set(p, sarve::Tag("t" + std::to_string(t)), pick(1, 5));
    }
  }

  const double contact_p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!coin(contact_p)) continue;
      const int f = pick(1, 7);
      conf.contacts.set(people[a], people[b], {f, pick(1, 80)});
    }
  }

  for (const auto& p : people) {
    sarve::AvailabilityContext ctx{p, {}};
    const int windows = pick(0, 3);
    for (int w = 0; w < windows; ++w) {
      const int a = pick(0, 11);
      const int b = pick(a + 1, 12);
      ctx.slots.push_back({sarve::Location(rooms[pick(0, 2)]), {a * cell, b * cell}});
    }
    if (coin(0.9)) conf.availabilities[p] = ctx;
  }

  static const double gammas[] = {-1.0, -0.5, 0.0, 0.5, 0.8, 1.0};
  static const double betas[] = {0.0, 0.1, 0.25, 0.5, 0.7};
  static const double deltas[] = {0.0, 0.2, 0.5, 1.0};
  conf.thresholds.frame_T = spec.frame_T;
  conf.thresholds.gamma = gammas[pick(0, 5)];
  conf.thresholds.beta = betas[pick(0, 4)];
  conf.thresholds.delta = deltas[pick(0, 3)];
  conf.thresholds.top_n = pick(1, 6);
  return conf;
}

}  // namespace oracle

#endif  // SARVE_TESTS_ORACLES_HPP
