#include "sarve/social_graph.hpp"

#include <fmt/format.h>

namespace sarve {

double tie_strength(int frequency, int duration, int frame_T) {
  if (frame_T <= 0) throw Error(fmt::format("tie strength: frame length {} must be positive", frame_T));
  if (frequency < 0 || duration < 0) throw Error("tie strength: frequency and duration must be non-negative");
  return static_cast<double>(static_cast<long long>(frequency) * duration) / frame_T;
}

double tie_strength(const ContactLog& contacts, const ParticipantId& a, const ParticipantId& b, int frame_T) {
  if (a == b) throw Error(fmt::format("tie strength: participant '{}' paired with itself", a.value));
  if (frame_T <= 0) throw Error(fmt::format("tie strength: frame length {} must be positive", frame_T));
  auto c = contacts.get(a, b);
  if (!c) return 0.0;
  return tie_strength(c->frequency, c->duration, frame_T);
}

bool passes_beta(double tie, const Thresholds& t) { return tie >= t.beta; }

namespace {

DegreeCentrality make_centrality(int raw, std::size_t roster_size) {
  return {raw, static_cast<double>(raw) / static_cast<double>(roster_size - 1)};
}

}  // namespace

DegreeCentrality degree_centrality(const ConferenceInstance& conf, const ParticipantId& p) {
  if (conf.roster.size() < 2) throw Error("degree centrality needs a roster of at least two participants");
  if (!conf.in_roster(p)) throw NotFound(fmt::format("participant '{}' is not in the roster", p.value));
  int raw = 0;
  for (const auto& [key, c] : conf.contacts.entries()) {
    if (c.frequency < 1) continue;
    const auto& [a, b] = key;
    if (a == b) continue;
    if ((a == p && conf.in_roster(b)) || (b == p && conf.in_roster(a))) ++raw;
  }
  return make_centrality(raw, conf.roster.size());
}

std::map<ParticipantId, DegreeCentrality> degree_centralities(const ConferenceInstance& conf) {
  if (conf.roster.size() < 2) throw Error("degree centrality needs a roster of at least two participants");
  std::map<ParticipantId, int> raw;
  for (const auto& p : conf.roster) raw[p] = 0;
  for (const auto& [key, c] : conf.contacts.entries()) {
    const auto& [a, b] = key;
    if (c.frequency < 1 || a == b || !conf.in_roster(a) || !conf.in_roster(b)) continue;
    ++raw[a];
    ++raw[b];
  }
  std::map<ParticipantId, DegreeCentrality> out;
  for (const auto& [p, r] : raw) out.emplace(p, make_centrality(r, conf.roster.size()));
  return out;
}

bool passes_delta(const DegreeCentrality& c, const Thresholds& t) { return c.normalized >= t.delta; }

}  // namespace sarve
