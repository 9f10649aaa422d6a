#include "sarve/generator.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "sarve/random.hpp"

namespace sarve {

namespace {

constexpr std::array<const char*, 16> kKeywords = {
    "e-learning",        "mobile-learning",    "social-networks",  "recommender-systems",
    "learning-analytics", "collaborative-learning", "semantic-web", "game-based-learning",
    "ontologies",        "adaptive-systems",   "data-mining",      "personalization",
    "context-awareness", "mooc",               "assessment",       "virtual-worlds",
};

std::string padded_id(char prefix, int index, int count) {
  const int width = static_cast<int>(fmt::formatted_size("{}", count));
  return fmt::format("{}{:0{}}", prefix, index, width);
}

std::string tag_name(int i) {
  if (i < static_cast<int>(kKeywords.size())) return kKeywords[static_cast<std::size_t>(i)];
  return fmt::format("topic-{:02}", i);
}

std::string location_name(int i) {
  if (i < 26) return fmt::format("hall-{}", static_cast<char>('a' + i));
  return fmt::format("room-{:02}", i);
}

}  // namespace

std::vector<std::string> validate_config(const GeneratorConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.n_participants < 2) out.push_back("n_participants must be >= 2");
  if (cfg.n_presenters < 1 || cfg.n_presenters > cfg.n_participants) {
    out.push_back("n_presenters must be in [1, n_participants]");
  }
  if (cfg.n_sessions < 1) out.push_back("n_sessions must be >= 1");
  if (cfg.tag_vocabulary < 1) out.push_back("tag_vocabulary must be >= 1");
  if (!(cfg.rating_density > 0.0 && cfg.rating_density <= 1.0)) out.push_back("rating_density must be in (0, 1]");
  if (cfg.max_contact_duration < 0) out.push_back("max_contact_duration must be >= 0");
  if (cfg.max_contact_frequency < 0) out.push_back("max_contact_frequency must be >= 0");
  if (cfg.frame_T <= 0) out.push_back("frame_T must be > 0");
  if (cfg.n_locations < 1) out.push_back("n_locations must be >= 1");
  if (!(cfg.availability_coverage > 0.0 && cfg.availability_coverage <= 1.0)) {
    out.push_back("availability_coverage must be in (0, 1]");
  }
  if (!(cfg.contact_density >= 0.0 && cfg.contact_density <= 1.0)) out.push_back("contact_density must be in [0, 1]");
  if (cfg.session_length < 1) out.push_back("session_length must be >= 1");
  if (cfg.frame_T > 0 && cfg.session_length >= 1 && cfg.n_locations >= 1 && cfg.n_sessions >= 1) {
    const long long cells = static_cast<long long>(cfg.frame_T / cfg.session_length) * cfg.n_locations;
    if (cfg.n_sessions > cells) {
      out.push_back(fmt::format("{} sessions of {} minutes do not fit in {} locations over {} minutes",
                                cfg.n_sessions, cfg.session_length, cfg.n_locations, cfg.frame_T));
    }
  }
  Thresholds th{cfg.gamma, cfg.beta, cfg.delta, cfg.frame_T, cfg.top_n};
  for (auto& v : validate_thresholds(th)) out.push_back(std::move(v));
  return out;
}

ConferenceInstance generate(const GeneratorConfig& cfg) {
  if (auto v = validate_config(cfg); !v.empty()) {
    std::string msg = "invalid generator config";
    for (const auto& s : v) msg += "; " + s;
    throw Error(msg);
  }

  Rng rng(cfg.seed);
  ConferenceInstance conf;
  conf.thresholds = Thresholds{cfg.gamma, cfg.beta, cfg.delta, cfg.frame_T, cfg.top_n};

  std::vector<ParticipantId> people;
  for (int i = 1; i <= cfg.n_participants; ++i) people.emplace_back(padded_id('p', i, cfg.n_participants));
  conf.roster.insert(people.begin(), people.end());

  std::vector<ParticipantId> drawn = people;
  rng.shuffle(drawn);
  std::vector<ParticipantId> presenters(drawn.begin(), drawn.begin() + cfg.n_presenters);
  std::sort(presenters.begin(), presenters.end());
  conf.presenters.insert(presenters.begin(), presenters.end());

  std::vector<Tag> vocab;
  for (int i = 0; i < cfg.tag_vocabulary; ++i) vocab.emplace_back(tag_name(i));

  // Sessions occupy distinct (location, cell) pairs of a fixed grid, so no
  // two sessions overlap at the same venue.
  const int cells_per_location = cfg.frame_T / cfg.session_length;
  std::vector<int> cells(static_cast<std::size_t>(cells_per_location * cfg.n_locations));
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
  rng.shuffle(cells);
  for (int k = 0; k < cfg.n_sessions; ++k) {
    const int cell = cells[static_cast<std::size_t>(k)];
    Session s;
    s.id = SessionId(padded_id('s', k + 1, cfg.n_sessions));
    s.presenter = k < cfg.n_presenters
                      ? presenters[static_cast<std::size_t>(k)]
                      : presenters[rng.below(static_cast<std::uint64_t>(cfg.n_presenters))];
    s.location = Location(location_name(cell / cells_per_location));
    const int start = (cell % cells_per_location) * cfg.session_length;
    s.slot = TimeSlot{start, start + cfg.session_length};
    const int n_tags = rng.uniform(1, std::min(3, cfg.tag_vocabulary));
    while (static_cast<int>(s.topic_tags.size()) < n_tags) {
      s.topic_tags.insert(vocab[rng.below(vocab.size())]);
    }
    conf.sessions.push_back(std::move(s));
  }

  const int min_ratings = std::min(2, cfg.tag_vocabulary);
  for (const auto& p : people) {
    int rated = 0;
    for (const auto& t : vocab) {
      if (rng.bernoulli(cfg.rating_density)) {
        conf.ratings.set(p, t, rng.uniform(kMinRating, kMaxRating));
        ++rated;
      }
    }
    // Every participant keeps at least two ratings so that train/test splits
    // are always possible.
    while (rated < min_ratings) {
      const Tag& t = vocab[rng.below(vocab.size())];
      if (!conf.ratings.get(p, t)) {
        conf.ratings.set(p, t, rng.uniform(kMinRating, kMaxRating));
        ++rated;
      }
    }
  }

  // A pair meets only when both its frequency and duration draws are
  // positive, which keeps frequency and duration zero together.
  for (std::size_t a = 0; a < people.size(); ++a) {
    for (std::size_t b = a + 1; b < people.size(); ++b) {
      if (!rng.bernoulli(cfg.contact_density)) continue;
      const int freq = rng.uniform(0, cfg.max_contact_frequency);
      const int dur = rng.uniform(0, cfg.max_contact_duration);
      if (freq > 0 && dur > 0) conf.contacts.set(people[a], people[b], Contact{freq, dur});
    }
  }

  for (const auto& p : people) {
    AvailabilityContext ctx{p, {}};
    for (int l = 0; l < cfg.n_locations; ++l) {
      if (!rng.bernoulli(cfg.availability_coverage)) continue;
      int a = rng.uniform(0, cells_per_location);
      int b = rng.uniform(0, cells_per_location - 1);
      if (b >= a) ++b;
      if (a > b) std::swap(a, b);
      ctx.slots.push_back(Slot{Location(location_name(l)),
                               TimeSlot{a * cfg.session_length, b * cfg.session_length}});
    }
    conf.availabilities.emplace(p, std::move(ctx));
  }

  require_valid(conf);
  return conf;
}

}  // namespace sarve
