#ifndef SARVE_RECOMMENDER_HPP
#define SARVE_RECOMMENDER_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "sarve/model.hpp"
#include "sarve/social_graph.hpp"

namespace sarve {

enum class Channel { SocialContext, SocialRelations };

inline constexpr Channel kChannels[] = {Channel::SocialContext, Channel::SocialRelations};

/// "social_context" / "social_relations".
std::string_view to_string(Channel c);

/// Accepts the canonical names plus "context"/"relations" and dashed forms.
std::optional<Channel> parse_channel(std::string_view s);

// Relation kinds of the user/tag/item bipartite model.
enum class RelationKind {
  SocialNetwork,  // A1, user-user
  Comment,        // A2, user-comment-item
  ItemContent,    // A3, item-content feature
  TagPost,        // A4, user-tag-item
};

std::string_view to_string(RelationKind k);  // "A1".."A4"

struct GateValues {
  std::optional<double> pearson;
  std::optional<double> tie_strength;
  std::optional<double> degree_centrality;  // normalized

  bool operator==(const GateValues&) const = default;
};

struct Explanation {
  std::set<RelationKind> relation_kinds;
  GateValues gate_values;  // only the gates that admitted the recommendation
  Slot matched_slot;

  bool operator==(const Explanation&) const = default;
};

struct Recommendation {
  ParticipantId participant;
  SessionId session;
  ParticipantId presenter;
  Channel channel = Channel::SocialContext;
  double score = 0.0;
  Explanation explanation;

  bool operator==(const Recommendation&) const = default;
};

struct ParticipantRecommendations {
  std::vector<Recommendation> social_context;
  std::vector<Recommendation> social_relations;

  const std::vector<Recommendation>& of(Channel c) const {
    return c == Channel::SocialContext ? social_context : social_relations;
  }
  std::vector<Recommendation>& of(Channel c) {
    return c == Channel::SocialContext ? social_context : social_relations;
  }

  bool operator==(const ParticipantRecommendations&) const = default;
};

/// Every admitted recommendation, per participant and channel, ranked by score
/// descending then session id ascending. top() gives the top-N view.
class RecommendationSet {
 public:
  RecommendationSet() = default;
  RecommendationSet(std::map<ParticipantId, ParticipantRecommendations> lists, int top_n)
      : lists_(std::move(lists)), top_n_(top_n) {}

  const std::map<ParticipantId, ParticipantRecommendations>& lists() const { return lists_; }
  int top_n() const { return top_n_; }

  /// Full ranked list; empty for unknown participants.
  std::span<const Recommendation> ranked(const ParticipantId& p, Channel c) const;

  /// First top_n entries of ranked().
  std::span<const Recommendation> top(const ParticipantId& p, Channel c) const;

  bool contains(const ParticipantId& p, const SessionId& s, Channel c) const;
  std::size_t count(Channel c) const;

  bool operator==(const RecommendationSet&) const = default;

 private:
  std::map<ParticipantId, ParticipantRecommendations> lists_;
  int top_n_ = 0;
};

struct EngineOptions {
  bool social_context = true;
  bool social_relations = true;
  // Ablation switches for the social-relations disjunction.
  bool use_tie = true;
  bool use_centrality = true;
  // Conjunctive reading: social relations additionally needs the Pearson gate.
  bool strict = false;

  bool operator==(const EngineOptions&) const = default;
};

/// First availability slot, in list order, at the session's venue whose window
/// contains the session.
std::optional<Slot> context_match(const Session& session, const AvailabilityContext* avail);
std::optional<Slot> context_match(const Session& session, const AvailabilityContext& avail);

/// Recommendations for one participant. Depends only on that participant's
/// data plus presenter-side data, so participants can be processed on
/// separate nodes. Throws ValidationError / NotFound.
ParticipantRecommendations recommend_for(const ConferenceInstance& conf, const ParticipantId& participant,
                                         const EngineOptions& options = {});

/// Recommendations for the whole roster; union of recommend_for over it.
RecommendationSet recommend(const ConferenceInstance& conf, const EngineOptions& options = {});

inline const Explanation& explain(const Recommendation& rec) { return rec.explanation; }

}  // namespace sarve

#endif  // SARVE_RECOMMENDER_HPP
