#include "sarve/render.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "sarve/dataset_io.hpp"

namespace sarve {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::size_t cut(std::size_t size, int top_n) { return std::min(size, static_cast<std::size_t>(std::max(top_n, 0))); }

}  // namespace

json to_json(const Session& s) {
  json tags = json::array();
  for (const auto& t : s.topic_tags) tags.push_back(t.keyword);
  return {{"session_id", s.id.value},     {"presenter", s.presenter.value}, {"location", s.location.venue},
          {"start", s.slot.start},        {"end", s.slot.end},              {"tags", std::move(tags)}};
}

json to_json(const Thresholds& t) {
  return {{"gamma", t.gamma}, {"beta", t.beta}, {"delta", t.delta}, {"frame_T", t.frame_T}, {"top_n", t.top_n}};
}

json to_json(const Recommendation& rec, const ConferenceInstance& conf) {
  json kinds = json::array();
  for (auto k : rec.explanation.relation_kinds) kinds.push_back(std::string(to_string(k)));
  const auto& gates = rec.explanation.gate_values;
  const auto& slot = rec.explanation.matched_slot;
  json out = {
      {"participant", rec.participant.value},
      {"session_id", rec.session.value},
      {"presenter", rec.presenter.value},
      {"channel", std::string(to_string(rec.channel))},
      {"score", rec.score},
      {"explanation",
       {{"relation_kinds", std::move(kinds)},
        {"gate_values",
         {{"pearson", optional_number(gates.pearson)},
          {"tie_strength", optional_number(gates.tie_strength)},
          {"degree_centrality", optional_number(gates.degree_centrality)}}},
        {"matched_slot", {{"location", slot.location.venue}, {"start", slot.time.start}, {"end", slot.time.end}}}}},
  };
  if (const Session* s = conf.find_session(rec.session)) out["session"] = to_json(*s);
  return out;
}

json recommendations_json(const ConferenceInstance& conf, const ParticipantId& participant,
                          const ParticipantRecommendations& recs, const EngineOptions& options,
                          std::optional<Channel> only) {
  json channels = json::object();
  for (Channel c : kChannels) {
    if (only && *only != c) continue;
    const auto& list = recs.of(c);
    json items = json::array();
    const auto n = cut(list.size(), conf.thresholds.top_n);
    for (std::size_t k = 0; k < n; ++k) items.push_back(to_json(list[k], conf));
    channels[std::string(to_string(c))] = {{"total", list.size()}, {"recommendations", std::move(items)}};
  }
  return {{"participant", participant.value},
          {"thresholds", to_json(conf.thresholds)},
          {"strict", options.strict},
          {"channels", std::move(channels)}};
}

std::string render_recommendations(const ConferenceInstance& conf, const ParticipantId& participant,
                                   const ParticipantRecommendations& recs, std::optional<Channel> only) {
  const auto& th = conf.thresholds;
  std::string out = fmt::format("participant {}  gamma={} beta={} delta={} top_n={}\n", participant.value,
                                format_double(th.gamma), format_double(th.beta), format_double(th.delta), th.top_n);
  for (Channel c : kChannels) {
    if (only && *only != c) continue;
    const auto& list = recs.of(c);
    const auto n = cut(list.size(), th.top_n);
    out += fmt::format("\n{} recommendations ({} of {})\n",
                       c == Channel::SocialContext ? "Social context" : "Social relations", n, list.size());
    if (n == 0) out += "  (none)\n";
    for (std::size_t k = 0; k < n; ++k) {
      const auto& r = list[k];
      const Session* s = conf.find_session(r.session);
      out += fmt::format("  {}. {}  presenter {}", k + 1, r.session.value, r.presenter.value);
      if (s) out += fmt::format("  {} {}-{}", s->location.venue, s->slot.start, s->slot.end);
      out += fmt::format("  score {:.6f}\n", r.score);

      const auto& g = r.explanation.gate_values;
      std::string gates;
      if (g.pearson) gates += fmt::format(" pearson={:.6f}", *g.pearson);
      if (g.tie_strength) gates += fmt::format(" tie={:.6f}", *g.tie_strength);
      if (g.degree_centrality) gates += fmt::format(" centrality={:.6f}", *g.degree_centrality);
      std::string kinds;
      for (auto kind : r.explanation.relation_kinds) kinds += fmt::format(" {}", to_string(kind));
      const auto& m = r.explanation.matched_slot;
      out += fmt::format("     gates:{}  relations:{}  matched slot {} {}-{}\n", gates, kinds, m.location.venue,
                         m.time.start, m.time.end);
    }
  }
  return out;
}

}  // namespace sarve
