#include "sarve/recommender.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "sarve/similarity.hpp"

namespace sarve {

std::string_view to_string(Channel c) {
  return c == Channel::SocialContext ? "social_context" : "social_relations";
}

std::optional<Channel> parse_channel(std::string_view s) {
  std::string n = normalize_keyword(s);
  std::replace(n.begin(), n.end(), '-', '_');
  if (n == "social_context" || n == "context") return Channel::SocialContext;
  if (n == "social_relations" || n == "relations") return Channel::SocialRelations;
  return std::nullopt;
}

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::SocialNetwork: return "A1";
    case RelationKind::Comment: return "A2";
    case RelationKind::ItemContent: return "A3";
    case RelationKind::TagPost: return "A4";
  }
  return "?";
}

std::span<const Recommendation> RecommendationSet::ranked(const ParticipantId& p, Channel c) const {
  auto it = lists_.find(p);
  if (it == lists_.end()) return {};
  return it->second.of(c);
}

std::span<const Recommendation> RecommendationSet::top(const ParticipantId& p, Channel c) const {
  auto all = ranked(p, c);
  return all.first(std::min<std::size_t>(all.size(), static_cast<std::size_t>(std::max(top_n_, 0))));
}

bool RecommendationSet::contains(const ParticipantId& p, const SessionId& s, Channel c) const {
  auto all = ranked(p, c);
  return std::any_of(all.begin(), all.end(), [&](const Recommendation& r) { return r.session == s; });
}

std::size_t RecommendationSet::count(Channel c) const {
  std::size_t n = 0;
  for (const auto& [p, lists] : lists_) n += lists.of(c).size();
  return n;
}

std::optional<Slot> context_match(const Session& session, const AvailabilityContext& avail) {
  for (const auto& slot : avail.slots) {
    if (slot.location == session.location && slot.time.contains(session.slot)) return slot;
  }
  return std::nullopt;
}

std::optional<Slot> context_match(const Session& session, const AvailabilityContext* avail) {
  if (avail == nullptr) return std::nullopt;
  return context_match(session, *avail);
}

namespace {

void rank(std::vector<Recommendation>& list) {
  std::sort(list.begin(), list.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.session < b.session;
  });
}

ParticipantRecommendations recommend_one(const ConferenceInstance& conf, const ParticipantId& i,
                                         const std::map<ParticipantId, DegreeCentrality>& centrality,
                                         const EngineOptions& opt) {
  const Thresholds& th = conf.thresholds;
  const AvailabilityContext* avail = conf.availability_of(i);
  ParticipantRecommendations out;

  for (const auto& session : conf.sessions) {
    const ParticipantId& j = session.presenter;
    if (j == i) continue;

    // Post-filter first: without a matching slot neither channel can emit.
    auto slot = context_match(session, avail);
    if (!slot) continue;

    const SimilarityScore sim = pearson(conf.ratings, i, j);
    const bool gamma_ok = passes_gamma(sim, th);

    if (opt.social_context && gamma_ok) {
      Recommendation rec{i, session.id, j, Channel::SocialContext, *sim, {}};
      rec.explanation.relation_kinds = {RelationKind::Comment, RelationKind::ItemContent, RelationKind::TagPost};
      rec.explanation.gate_values.pearson = *sim;
      rec.explanation.matched_slot = *slot;
      out.social_context.push_back(std::move(rec));
    }

    if (opt.social_relations) {
      const double tie = tie_strength(conf.contacts, i, j, th.frame_T);
      const DegreeCentrality& cent = centrality.at(j);
      const bool beta_ok = opt.use_tie && passes_beta(tie, th);
      const bool delta_ok = opt.use_centrality && passes_delta(cent, th);
      if ((beta_ok || delta_ok) && (!opt.strict || gamma_ok)) {
        Recommendation rec{i, session.id, j, Channel::SocialRelations, 0.0, {}};
        auto& ex = rec.explanation;
        ex.relation_kinds = {RelationKind::SocialNetwork, RelationKind::Comment};
        if (beta_ok) {
          ex.gate_values.tie_strength = tie;
          rec.score = tie;
        }
        if (delta_ok) {
          ex.gate_values.degree_centrality = cent.normalized;
          rec.score = beta_ok ? std::max(tie, cent.normalized) : cent.normalized;
        }
        if (opt.strict) {
          ex.gate_values.pearson = *sim;
          ex.relation_kinds.insert(RelationKind::ItemContent);
          ex.relation_kinds.insert(RelationKind::TagPost);
        }
        ex.matched_slot = *slot;
        out.social_relations.push_back(std::move(rec));
      }
    }
  }

  rank(out.social_context);
  rank(out.social_relations);
  return out;
}

std::map<ParticipantId, DegreeCentrality> centralities_or_empty(const ConferenceInstance& conf) {
  // A single-member roster has no other presenters to recommend.
  if (conf.roster.size() < 2) return {};
  return degree_centralities(conf);
}

}  // namespace

ParticipantRecommendations recommend_for(const ConferenceInstance& conf, const ParticipantId& participant,
                                         const EngineOptions& options) {
  require_valid(conf);
  if (!conf.in_roster(participant)) {
    throw NotFound(fmt::format("participant '{}' is not in the roster", participant.value));
  }
  return recommend_one(conf, participant, centralities_or_empty(conf), options);
}

RecommendationSet recommend(const ConferenceInstance& conf, const EngineOptions& options) {
  require_valid(conf);
  const auto centrality = centralities_or_empty(conf);
  std::map<ParticipantId, ParticipantRecommendations> lists;
  for (const auto& i : conf.roster) lists.emplace(i, recommend_one(conf, i, centrality, options));
  return RecommendationSet(std::move(lists), conf.thresholds.top_n);
}

}  // namespace sarve
