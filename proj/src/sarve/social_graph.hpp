#ifndef SARVE_SOCIAL_GRAPH_HPP
#define SARVE_SOCIAL_GRAPH_HPP

#include <map>

#include "sarve/model.hpp"

namespace sarve {

/// lambda * d / T. Throws Error on frame_T <= 0 or negative inputs.
double tie_strength(int frequency, int duration, int frame_T);

/// Tie strength of a pair from the contact log; 0 when the pair never met.
double tie_strength(const ContactLog& contacts, const ParticipantId& a, const ParticipantId& b, int frame_T);

bool passes_beta(double tie, const Thresholds& t);

struct DegreeCentrality {
  int raw = 0;
  double normalized = 0.0;

  bool operator==(const DegreeCentrality&) const = default;
};

/// Number of distinct other roster members p has met at least once, and that
/// count over N - 1.
DegreeCentrality degree_centrality(const ConferenceInstance& conf, const ParticipantId& p);

/// Centrality of every roster member in one pass over the contact log.
std::map<ParticipantId, DegreeCentrality> degree_centralities(const ConferenceInstance& conf);

bool passes_delta(const DegreeCentrality& c, const Thresholds& t);

}  // namespace sarve

#endif  // SARVE_SOCIAL_GRAPH_HPP
