#ifndef SARVE_RENDER_HPP
#define SARVE_RENDER_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "sarve/model.hpp"
#include "sarve/recommender.hpp"
#include "sarve/social_graph.hpp"

namespace sarve {

nlohmann::json to_json(const Session& s);
nlohmann::json to_json(const Thresholds& t);
nlohmann::json to_json(const Recommendation& rec, const ConferenceInstance& conf);

/// {"participant", "thresholds", "strict", "channels": {name: {"total", "recommendations"}}}.
/// Each list is cut to thresholds.top_n; `only` restricts to one channel.
nlohmann::json recommendations_json(const ConferenceInstance& conf, const ParticipantId& participant,
                                    const ParticipantRecommendations& recs, const EngineOptions& options,
                                    std::optional<Channel> only = std::nullopt);

std::string render_recommendations(const ConferenceInstance& conf, const ParticipantId& participant,
                                   const ParticipantRecommendations& recs, std::optional<Channel> only = std::nullopt);

}  // namespace sarve

#endif  // SARVE_RENDER_HPP
